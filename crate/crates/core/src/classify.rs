//! Umbilic non-degeneracy and discriminant singularity classification.
//!
//! Non-degeneracy is decided through the six 2x2 determinants `Omega_i`,
//! `J_i` of second derivatives of `xi` at the origin: the umbilic is
//! non-degenerate iff `Omega_i != 0` and `J_i != 0` for some common `i`.
//!
//! The discriminant germ is classified along the `A_m` ladder: `A_1^±` by
//! the Hessian, then (after an exact shear putting the Hessian kernel on
//! the x-axis) `A_2` iff `g30 != 0`, `A_3` iff `T3 = g40 g02 - 3 g21^2 != 0`,
//! `A_4` iff `T4 = g50 g02^2 - 10 g31 g21 g02 + 15 g12 g21^2 != 0`, and
//! finally an `A_infinity`-up-to-cap verdict from the vanishing of the pure
//! `x` ladder `g_k0` and the mixed ladder `g_k1`. All zero tests are exact
//! rational comparisons; there are no tolerances on this path.

use std::fmt;

use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::congruence::{ridge_invariants, CongruenceError, CongruenceGerm};
use crate::rational::Rational;
use crate::series::Series2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("origin is not umbilical for this germ")]
    NotUmbilic,
    #[error("delta is not singular at the origin: value {value}, gradient ({gx}, {gy})")]
    NotSingular {
        value: Rational,
        gx: Rational,
        gy: Rational,
    },
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// The six determinants of second derivatives at the origin, and the
/// verdict: non-degenerate iff some index has both `Omega_i` and `J_i`
/// nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct NondegeneracyReport {
    pub omega: [Rational; 3],
    pub jay: [Rational; 3],
    pub nondegenerate: bool,
    /// First index (0-based) witnessing non-degeneracy, when any.
    pub witness_index: Option<usize>,
}

pub fn nondegeneracy(germ: &CongruenceGerm) -> Result<NondegeneracyReport, ClassifyError> {
    if !germ.is_umbilic_origin() {
        return Err(ClassifyError::NotUmbilic);
    }
    let det = |a: &Rational, b: &Rational, c: &Rational, d: &Rational| a * d - b * c;
    let (p20, p11, p02) = (germ.p(2, 0), germ.p(1, 1), germ.p(0, 2));
    let (q20, q11, q02) = (germ.q(2, 0), germ.q(1, 1), germ.q(0, 2));
    let omega = [
        det(&p20, &p11, &q20, &q11),
        det(&p11, &p02, &q11, &q02),
        det(&p20, &p02, &q20, &q02),
    ];
    let jay = [
        det(&(&p20 - &q11), &(&p11 - &q02), &q20, &q11),
        det(&(&p20 - &q11), &(&p11 - &q02), &p11, &p02),
        det(&p11, &p02, &q20, &q11),
    ];
    let witness_index = (0..3).find(|&i| !omega[i].is_zero() && !jay[i].is_zero());
    Ok(NondegeneracyReport {
        omega,
        jay,
        nondegenerate: witness_index.is_some(),
        witness_index,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularityKind {
    A1Plus,
    A1Minus,
    A2,
    A3,
    A4,
    /// All tested ladders vanish up to the recorded cap; the tool never
    /// claims an infinite statement from finite data.
    AInfinityToCap(usize),
    Unresolved,
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityKind::A1Plus => write!(f, "A1_plus"),
            SingularityKind::A1Minus => write!(f, "A1_minus"),
            SingularityKind::A2 => write!(f, "A2"),
            SingularityKind::A3 => write!(f, "A3"),
            SingularityKind::A4 => write!(f, "A4"),
            SingularityKind::AInfinityToCap(cap) => write!(f, "A_infinity_to_cap({cap})"),
            SingularityKind::Unresolved => write!(f, "unresolved"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularityVerdict {
    pub kind: SingularityKind,
    /// Every named rational the verdict cites.
    pub witnesses: Vec<(String, Rational)>,
    /// Direction vector of the Hessian kernel when the 2-jet has rank 1
    /// (not normalized: exact integer ratio, unit only projectively).
    pub kernel_direction: Option<(Rational, Rational)>,
    /// Set if the delta 2-jet vanished entirely.
    pub diagnostic: Option<String>,
}

/// Classify the singularity of a discriminant germ at the origin.
///
/// `cap_for_ainf` bounds the vanishing ladder checked for the
/// `A_infinity`-up-to-cap verdict; it is clamped to the series cap.
pub fn classify_discriminant(
    delta: &Series2,
    cap_for_ainf: usize,
) -> Result<SingularityVerdict, ClassifyError> {
    let value = delta.coeff(0, 0);
    let gx = delta.derivative_coeff(1, 0);
    let gy = delta.derivative_coeff(0, 1);
    if !value.is_zero() || !gx.is_zero() || !gy.is_zero() {
        return Err(ClassifyError::NotSingular { value, gx, gy });
    }
    let g20 = delta.derivative_coeff(2, 0);
    let g11 = delta.derivative_coeff(1, 1);
    let g02 = delta.derivative_coeff(0, 2);
    let hess_det = &g20 * &g02 - &g11 * &g11;

    if !hess_det.is_zero() {
        let kind = if hess_det.is_positive() {
            SingularityKind::A1Plus
        } else {
            SingularityKind::A1Minus
        };
        return Ok(SingularityVerdict {
            kind,
            witnesses: vec![
                ("g20".into(), g20),
                ("g11".into(), g11),
                ("g02".into(), g02),
                ("hess_det".into(), hess_det),
            ],
            kernel_direction: None,
            diagnostic: None,
        });
    }

    if g20.is_zero() && g11.is_zero() && g02.is_zero() {
        return Ok(SingularityVerdict {
            kind: SingularityKind::Unresolved,
            witnesses: vec![],
            kernel_direction: None,
            diagnostic: Some("rank-0 2-jet: the quadratic part of delta vanishes".into()),
        });
    }

    // Rank 1: align the Hessian kernel with the x-axis by an exact linear
    // substitution. With g02 != 0 the form is g02/2 (y + (g11/g02) x)^2 and
    // the kernel is (g02, -g11); substitute x -> x, y -> y - (g11/g02) x.
    // With g02 = 0 (then g11 = 0, g20 != 0) swap the axes.
    let (aligned, kernel) = if !g02.is_zero() {
        let tshear = -&g11 / &g02;
        let cap = delta.cap();
        let px = Series2::var_x(cap);
        let mut py = Series2::var_y(cap);
        py.set_coeff(1, 0, tshear);
        let aligned = delta
            .subst(&px, &py)
            .map_err(CongruenceError::from)?;
        (aligned, (g02.clone(), -&g11))
    } else {
        let cap = delta.cap();
        let aligned = delta
            .subst(&Series2::var_y(cap), &Series2::var_x(cap))
            .map_err(CongruenceError::from)?;
        (aligned, (Rational::zero(), Rational::one()))
    };

    let g02a = aligned.derivative_coeff(0, 2);
    debug_assert!(aligned.derivative_coeff(2, 0).is_zero());
    debug_assert!(aligned.derivative_coeff(1, 1).is_zero());

    let mut witnesses: Vec<(String, Rational)> = vec![("g02".into(), g02a.clone())];

    if aligned.cap() >= 3 {
        let g30 = aligned.derivative_coeff(3, 0);
        if !g30.is_zero() {
            witnesses.push(("g30".into(), g30));
            return Ok(SingularityVerdict {
                kind: SingularityKind::A2,
                witnesses,
                kernel_direction: Some(kernel),
                diagnostic: None,
            });
        }
        witnesses.push(("g30".into(), g30));
    }
    if aligned.cap() >= 4 {
        let g40 = aligned.derivative_coeff(4, 0);
        let g21 = aligned.derivative_coeff(2, 1);
        let t3 = &g40 * &g02a - crate::rational::rat_int(3) * &g21 * &g21;
        witnesses.push(("T3".into(), t3.clone()));
        if !t3.is_zero() {
            return Ok(SingularityVerdict {
                kind: SingularityKind::A3,
                witnesses,
                kernel_direction: Some(kernel),
                diagnostic: None,
            });
        }
    }
    if aligned.cap() >= 5 {
        let g50 = aligned.derivative_coeff(5, 0);
        let g31 = aligned.derivative_coeff(3, 1);
        let g21 = aligned.derivative_coeff(2, 1);
        let g12 = aligned.derivative_coeff(1, 2);
        let t4 = &g50 * &g02a * &g02a - crate::rational::rat_int(10) * &g31 * &g21 * &g02a
            + crate::rational::rat_int(15) * &g12 * &g21 * &g21;
        witnesses.push(("T4".into(), t4.clone()));
        if !t4.is_zero() {
            return Ok(SingularityVerdict {
                kind: SingularityKind::A4,
                witnesses,
                kernel_direction: Some(kernel),
                diagnostic: None,
            });
        }
    }

    // The pure-x ladder g_k0 (3 <= k <= cap) and the mixed ladder g_k1
    // (2 <= k <= cap-1) must all vanish for the finite-data A_infinity
    // verdict.
    let ladder_cap = cap_for_ainf.min(aligned.cap());
    let mut blocked: Option<String> = None;
    for k in 3..=ladder_cap {
        let v = aligned.derivative_coeff(k, 0);
        if !v.is_zero() {
            blocked = Some(format!("g{k}0 = {v}"));
            break;
        }
    }
    if blocked.is_none() {
        for k in 2..ladder_cap {
            let v = aligned.derivative_coeff(k, 1);
            if !v.is_zero() {
                blocked = Some(format!("g{k}1 = {v}"));
                break;
            }
        }
    }
    match blocked {
        None => Ok(SingularityVerdict {
            kind: SingularityKind::AInfinityToCap(ladder_cap),
            witnesses,
            kernel_direction: Some(kernel),
            diagnostic: None,
        }),
        Some(msg) => Ok(SingularityVerdict {
            kind: SingularityKind::Unresolved,
            witnesses,
            kernel_direction: Some(kernel),
            diagnostic: Some(format!("A2-A4 tests vanish but the ladder does not: {msg}")),
        }),
    }
}

/// Outcome of the ridge-witness search.
#[derive(Debug, Clone, PartialEq)]
pub enum RidgeWitness {
    /// Lexicographically-first `(j, k)` with `R_jk(0,0) != 0`; a nonzero
    /// witness certifies the umbilic is a limit of regular points.
    Found {
        j: usize,
        k: usize,
        value: Rational,
    },
    NotFound {
        searched_through: usize,
    },
}

/// Search the derivatives of the ridge product `R = A^2 delta - B^2` at the
/// origin in lexicographic `(j, k)` order up to total order `max_order`.
pub fn ridge_limit_witness(
    germ: &CongruenceGerm,
    max_order: usize,
) -> Result<RidgeWitness, ClassifyError> {
    let r = ridge_invariants(germ)?.r;
    let bound = max_order.min(r.cap());
    for j in 0..=bound {
        for k in 0..=bound - j {
            let value = r.derivative_coeff(j, k);
            if !value.is_zero() {
                return Ok(RidgeWitness::Found { j, k, value });
            }
        }
    }
    Ok(RidgeWitness::NotFound {
        searched_through: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::monomial_family;
    use crate::rational::{rat, rat_int};

    fn germ_from_derivs(
        cap: usize,
        p: &[(usize, usize, i64)],
        q: &[(usize, usize, i64)],
    ) -> CongruenceGerm {
        let mut xi1 = Series2::zero(cap);
        let mut xi2 = Series2::zero(cap);
        for &(j, k, v) in p {
            xi1.set_derivative_coeff(j, k, rat_int(v));
        }
        for &(j, k, v) in q {
            xi2.set_derivative_coeff(j, k, rat_int(v));
        }
        CongruenceGerm::new(xi1, xi2).unwrap()
    }

    fn series(cap: usize, terms: &[(usize, usize, i64, i64)]) -> Series2 {
        let mut s = Series2::zero(cap);
        for &(j, k, n, d) in terms {
            s.set_coeff(j, k, rat(n, d));
        }
        s
    }

    #[test]
    fn nondegeneracy_m1_germ() {
        // xi1 = xy, xi2 = x^2 - y^2/2: Omega_3 = 0, Omega_1 = -2, J_1 = -4
        let g = germ_from_derivs(4, &[(1, 1, 1)], &[(2, 0, 2), (0, 2, -1)]);
        let rep = nondegeneracy(&g).unwrap();
        assert_eq!(rep.omega[2], rat_int(0));
        assert_eq!(rep.omega[0], rat_int(-2));
        assert_eq!(rep.jay[0], rat_int(-4));
        assert!(rep.nondegenerate);
        assert_eq!(rep.witness_index, Some(0));
    }

    #[test]
    fn nondegeneracy_zero_and_m2() {
        let z = germ_from_derivs(3, &[], &[]);
        let rep = nondegeneracy(&z).unwrap();
        assert!(!rep.nondegenerate);
        assert!(rep.omega.iter().all(|w| w.is_zero()));

        // xi1 = xy, xi2 = -y^2 + x^3
        let g = germ_from_derivs(4, &[(1, 1, 1)], &[(0, 2, -2), (3, 0, 6)]);
        let rep = nondegeneracy(&g).unwrap();
        // Omega_2 = det [[1, 0], [0, -2]] = -2; J_2 = det [[1, 3], [1, 0]] = -3
        assert_eq!(rep.omega[1], rat_int(-2));
        assert_eq!(rep.jay[1], rat_int(-3));
        assert!(rep.nondegenerate);

        let non_umb = germ_from_derivs(3, &[(0, 1, 1)], &[]);
        assert_eq!(nondegeneracy(&non_umb), Err(ClassifyError::NotUmbilic));
    }

    #[test]
    fn classify_a1_both_signs() {
        let d = series(4, &[(2, 0, 8, 1), (0, 2, 4, 1)]);
        assert_eq!(
            classify_discriminant(&d, 4).unwrap().kind,
            SingularityKind::A1Plus
        );
        let d = series(4, &[(2, 0, -8, 1), (0, 2, 4, 1)]);
        assert_eq!(
            classify_discriminant(&d, 4).unwrap().kind,
            SingularityKind::A1Minus
        );
    }

    #[test]
    fn classify_a2_a3_a4() {
        // 9y^2 + 12x^3: g30 = 72
        let d = series(5, &[(0, 2, 9, 1), (3, 0, 12, 1)]);
        let v = classify_discriminant(&d, 5).unwrap();
        assert_eq!(v.kind, SingularityKind::A2);
        assert!(v
            .witnesses
            .iter()
            .any(|(n, w)| n == "g30" && *w == rat_int(72)));

        // 16y^2 + 16x^4: T3 = 384*32 = 12288
        let d = series(5, &[(0, 2, 16, 1), (4, 0, 16, 1)]);
        let v = classify_discriminant(&d, 5).unwrap();
        assert_eq!(v.kind, SingularityKind::A3);
        assert!(v
            .witnesses
            .iter()
            .any(|(n, w)| n == "T3" && *w == rat_int(12288)));

        // 25y^2 + 20x^5: T4 = g50 g02^2 != 0
        let d = series(6, &[(0, 2, 25, 1), (5, 0, 20, 1)]);
        assert_eq!(
            classify_discriminant(&d, 6).unwrap().kind,
            SingularityKind::A4
        );
    }

    #[test]
    fn classify_a_infinity_and_unresolved() {
        // (7/2)^2 y^2 at cap 8
        let d = series(8, &[(0, 2, 49, 4)]);
        let v = classify_discriminant(&d, 8).unwrap();
        assert_eq!(v.kind, SingularityKind::AInfinityToCap(8));

        // y^2 + x^6: A5, beyond the ladder -> unresolved with diagnostic
        let d = series(7, &[(0, 2, 1, 1), (6, 0, 1, 1)]);
        let v = classify_discriminant(&d, 7).unwrap();
        assert_eq!(v.kind, SingularityKind::Unresolved);
        assert!(v.diagnostic.unwrap().contains("g60"));

        // rank-0 2-jet
        let d = series(5, &[(3, 0, 1, 1)]);
        let v = classify_discriminant(&d, 5).unwrap();
        assert_eq!(v.kind, SingularityKind::Unresolved);
        assert!(v.diagnostic.unwrap().contains("rank-0"));

        // non-singular input
        let d = series(3, &[(1, 0, 1, 1)]);
        assert!(matches!(
            classify_discriminant(&d, 3),
            Err(ClassifyError::NotSingular { .. })
        ));
    }

    #[test]
    fn classify_with_cross_term_shear() {
        // delta = (y + 2x)^2 + x^3: rank-1 Hessian with kernel off-axis;
        // after the shear the cubic term survives -> A2.
        let y_plus_2x = series(5, &[(0, 1, 1, 1), (1, 0, 2, 1)]);
        let sq = y_plus_2x.mul(&y_plus_2x).unwrap();
        let d = &sq + &series(5, &[(3, 0, 1, 1)]);
        let v = classify_discriminant(&d, 5).unwrap();
        assert_eq!(v.kind, SingularityKind::A2);
        assert_eq!(v.kernel_direction, Some((rat_int(2), rat_int(-4))));
    }

    #[test]
    fn classify_monomial_family_ladder() {
        let kinds = [
            SingularityKind::A1Plus,
            SingularityKind::A2,
            SingularityKind::A3,
            SingularityKind::A4,
        ];
        for (m, expect) in (1..=4i64).zip(kinds) {
            let g = monomial_family(&rat_int(m), &rat_int(1), 8).unwrap();
            let d = crate::congruence::discriminant(&g);
            assert_eq!(classify_discriminant(&d, 8).unwrap().kind, expect, "m = {m}");
        }
        for m in [rat(3, 2), rat(5, 2), rat(7, 2)] {
            let g = monomial_family(&m, &rat_int(0), 9).unwrap();
            let d = crate::congruence::discriminant(&g);
            assert_eq!(
                classify_discriminant(&d, 8).unwrap().kind,
                SingularityKind::AInfinityToCap(8),
                "m = {m}"
            );
        }
    }

    #[test]
    fn ridge_witness_m1_m2() {
        // m=1 (p11=1, q20=2): R22 = -768 at lex-first (2,2)
        let g = germ_from_derivs(9, &[(1, 1, 1)], &[(2, 0, 2), (0, 2, -1)]);
        let w = ridge_limit_witness(&g, 6).unwrap();
        assert_eq!(
            w,
            RidgeWitness::Found {
                j: 2,
                k: 2,
                value: rat_int(-768)
            }
        );

        // m=2 (p11=1, q30=6): R42 = -124416
        let g = germ_from_derivs(9, &[(1, 1, 1)], &[(0, 2, -2), (3, 0, 6)]);
        let w = ridge_limit_witness(&g, 6).unwrap();
        assert_eq!(
            w,
            RidgeWitness::Found {
                j: 4,
                k: 2,
                value: rat_int(-124416)
            }
        );

        // zero germ: nothing found
        let z = germ_from_derivs(6, &[], &[]);
        assert_eq!(
            ridge_limit_witness(&z, 3).unwrap(),
            RidgeWitness::NotFound {
                searched_through: 3
            }
        );
    }
}
