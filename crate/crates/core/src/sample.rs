//! Seeded random germs for identity suites and property harnesses.
//!
//! Everything here is deterministic given the seed (ChaCha8), so test
//! failures and CLI runs reproduce exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::congruence::CongruenceGerm;
use crate::jet::{Component, SlotKind, UmbilicNormalForm};
use crate::rational::{rat_int, Rational};
use crate::series::Series2;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer-valued rational in `[-max_abs, max_abs]`.
pub fn random_coeff(rng: &mut impl Rng, max_abs: i64) -> Rational {
    rat_int(rng.gen_range(-max_abs..=max_abs))
}

/// Nonzero integer-valued rational in `[-max_abs, max_abs]`.
pub fn random_nonzero_coeff(rng: &mut impl Rng, max_abs: i64) -> Rational {
    loop {
        let v = rng.gen_range(-max_abs..=max_abs);
        if v != 0 {
            return rat_int(v);
        }
    }
}

/// Germ with every derivative coefficient of order 1..=cap drawn uniformly
/// from the integers in `[-max_abs, max_abs]` (constant terms stay zero).
pub fn random_germ(rng: &mut impl Rng, cap: usize, max_abs: i64) -> CongruenceGerm {
    let mut xi1 = Series2::zero(cap);
    let mut xi2 = Series2::zero(cap);
    for d in 1..=cap {
        for k in 0..=d {
            xi1.set_derivative_coeff(d - k, k, random_coeff(rng, max_abs));
            xi2.set_derivative_coeff(d - k, k, random_coeff(rng, max_abs));
        }
    }
    CongruenceGerm::new(xi1, xi2).expect("equal caps")
}

/// Normal form with random nonzero `p11` and `q02 = -m * p11` for the given
/// `m`, and every free slot of order `<= max_order + 1` drawn randomly.
pub fn random_normal_form(
    rng: &mut impl Rng,
    m: &Rational,
    max_order: usize,
    max_abs: i64,
) -> UmbilicNormalForm {
    let p11 = random_nonzero_coeff(rng, max_abs);
    let q02 = -(m * &p11);
    let mut normal = UmbilicNormalForm::new(p11, q02).expect("nonzero 2-jet");
    for comp in [Component::Xi1, Component::Xi2] {
        for d in 2..=max_order + 1 {
            for k in 0..=d {
                let j = d - k;
                if normal.slot_kind(comp, j, k) == SlotKind::Free {
                    normal
                        .set_free(comp, j, k, random_coeff(rng, max_abs))
                        .expect("free slot");
                }
            }
        }
    }
    normal
}
