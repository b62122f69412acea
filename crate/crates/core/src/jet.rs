//! Jet space at a non-degenerate umbilical point.
//!
//! After a rational linear normalization (`p02 = p20 = q11 = 0`,
//! `p11 != 0`, `q02 != 0`) the W-congruence condition decomposes into the
//! scalar equations `W_{n-k,k}(0,0) = 0`, one per derivative slot. Each
//! equation determines exactly one Taylor coefficient of order `n + 1` from
//! lower data:
//!
//! - `m != 1`, `n - k != m`: the unknown is `q_{n+1-k,k}`;
//! - `m` a natural number `> 1`, `n - k = m`, `k >= 1`: the unknown is
//!   `p_{m+2,k-1}`;
//! - `m = 1`: all `p` and all `q_{2,k}` are free; slot `(n,n)` determines
//!   `q_{1,n}`, slot `(n,n-1)` determines `q_{0,n+1}` (through the `q20`
//!   coupling), and slots `k <= n-2` determine `q_{n+1-k,k}`.
//!
//! The one exception is the slot `(m, 0)` for natural `m`: no new
//! coefficient enters there, and the residual `W_{m0}(0,0)` is reported
//! instead of solved (it is conjectured to vanish identically, and does in
//! every verified case).
//!
//! Every equation is solved by linear probing: the unknown enters the
//! derivative affinely, so two exact evaluations recover slope and
//! intercept. A zero slope with zero intercept is recorded as an extra free
//! slot; a zero slope with nonzero intercept is an inconsistency.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::congruence::{w_series, CongruenceError, CongruenceGerm};
use crate::rational::{rat_int, Rational};
use crate::roots::rational_roots;
use crate::series::Series2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    Xi1,
    Xi2,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Xi1 => write!(f, "p"),
            Component::Xi2 => write!(f, "q"),
        }
    }
}

/// A derivative-coefficient slot `p_{jk}` or `q_{jk}`.
pub type Slot = (Component, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    BothFormsDefinite,
    BothFormsDegenerate,
    NoRationalEigendirection,
    NoAdmissiblePair,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::BothFormsDefinite => write!(f, "both 2-jet forms are definite"),
            Obstruction::BothFormsDegenerate => write!(f, "both 2-jet forms are degenerate"),
            Obstruction::NoRationalEigendirection => {
                write!(f, "no rational eigendirection of the 2-jet (irrational asymptotic direction)")
            }
            Obstruction::NoAdmissiblePair => {
                write!(f, "no rational direction pair satisfies the normalization conditions")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("origin is not umbilical: p01={p01}, q10={q10}, p10={p10}, q01={q01}")]
    NotUmbilic {
        p01: Rational,
        q10: Rational,
        p10: Rational,
        q01: Rational,
    },
    #[error("normalization impossible: {0}")]
    NormalizationImpossible(Obstruction),
    #[error("{0} must be nonzero in an umbilic normal form")]
    ZeroParameter(&'static str),
    #[error("slot {0}{1}{2} is not free for this normal form")]
    NotAFreeSlot(Component, usize, usize),
    #[error("inconsistent jet equation at (n,k) = ({0},{1}): zero slope, nonzero value")]
    InconsistentEquation(usize, usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("family precondition violated: {0}")]
    FamilyPrecondition(String),
    #[error("germ lies outside the p_n0 = 0 class or breaks the induction hypotheses: {0}")]
    ClassViolation(String),
    #[error("cap {cap} insufficient, need at least {need}")]
    InsufficientCap { cap: usize, need: usize },
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// Classification of a derivative slot for a given normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotKind {
    /// Pinned by the normal form itself (2-jet and linear data).
    Fixed,
    /// Chosen freely; input to the solver.
    Free,
    /// Determined by the jet equation at `(n, k)`.
    Dependent { eq: (usize, usize) },
    /// The `(m, 0)` residual slot: nothing to solve, value reported.
    Conjecture,
}

/// Normalized 2-jet data of a non-degenerate umbilic plus the coefficient
/// ledger around it. `m = -q02 / p11`.
#[derive(Debug, Clone, PartialEq)]
pub struct UmbilicNormalForm {
    pub p11: Rational,
    pub q02: Rational,
    /// Plane change (columns) that carried the input germ to normal form;
    /// identity when built directly.
    pub linear_change: [[Rational; 2]; 2],
    pub free: BTreeMap<Slot, Rational>,
    pub dependent: BTreeMap<Slot, Rational>,
}

impl UmbilicNormalForm {
    pub fn new(p11: Rational, q02: Rational) -> Result<Self, JetError> {
        if p11.is_zero() {
            return Err(JetError::ZeroParameter("p11"));
        }
        if q02.is_zero() {
            return Err(JetError::ZeroParameter("q02"));
        }
        Ok(UmbilicNormalForm {
            p11,
            q02,
            linear_change: [
                [Rational::one(), Rational::zero()],
                [Rational::zero(), Rational::one()],
            ],
            free: BTreeMap::new(),
            dependent: BTreeMap::new(),
        })
    }

    /// Normal form with `p11 = 1`, `q02 = -m`.
    pub fn with_m(m: &Rational) -> Result<Self, JetError> {
        UmbilicNormalForm::new(Rational::one(), -m)
    }

    pub fn m(&self) -> Rational {
        -&self.q02 / &self.p11
    }

    fn m_is_one(&self) -> bool {
        self.m().is_one()
    }

    /// Natural-number value of `m`, when it is one.
    pub fn m_natural(&self) -> Option<usize> {
        let m = self.m();
        if m.is_integer() && m.is_positive() {
            m.to_integer().to_usize()
        } else {
            None
        }
    }

    /// Ledger classification of a derivative slot.
    pub fn slot_kind(&self, comp: Component, j: usize, k: usize) -> SlotKind {
        let order = j + k;
        if order <= 1 {
            // p10 = q01 (radial, irrelevant), p01 = q10 = 0 at an umbilic.
            return SlotKind::Fixed;
        }
        if order == 2 {
            match (comp, j, k) {
                (Component::Xi1, 1, 1) | (Component::Xi2, 0, 2) => return SlotKind::Fixed,
                (Component::Xi1, _, _) => return SlotKind::Fixed, // p20 = p02 = 0
                (Component::Xi2, 1, 1) => {
                    // q11 = 0 in the normal form, re-derived by equation (1,1)
                    return SlotKind::Dependent { eq: (1, 1) };
                }
                (Component::Xi2, 2, 0) => {
                    return if self.m_is_one() {
                        SlotKind::Free
                    } else {
                        SlotKind::Dependent { eq: (1, 0) }
                    };
                }
                _ => unreachable!(),
            }
        }
        let m_nat = self.m_natural();
        match comp {
            Component::Xi1 => {
                if let Some(m) = m_nat {
                    if m > 1 && j == m + 2 {
                        return SlotKind::Dependent { eq: (m + k + 1, k + 1) };
                    }
                }
                SlotKind::Free
            }
            Component::Xi2 => {
                if self.m_is_one() {
                    match j {
                        2 => SlotKind::Free,
                        0 => SlotKind::Dependent { eq: (k - 1, k - 2) },
                        1 => SlotKind::Dependent { eq: (k, k) },
                        _ => SlotKind::Dependent { eq: (j + k - 1, k) },
                    }
                } else {
                    if j == 0 {
                        return SlotKind::Free; // q_{0,k}, k >= 3
                    }
                    if m_nat == Some(j.wrapping_sub(1)) && k == 0 && m_nat.is_some() {
                        // q_{m+1,0} is free; its would-be equation (m,0) is
                        // the conjecture slot.
                        return SlotKind::Free;
                    }
                    if Some(j) == m_nat.map(|m| m + 1) {
                        return SlotKind::Free; // q_{m+1,k}
                    }
                    SlotKind::Dependent { eq: (j + k - 1, k) }
                }
            }
        }
    }

    /// Record a free coefficient. Rejects slots the ledger does not list as
    /// free.
    pub fn set_free(
        &mut self,
        comp: Component,
        j: usize,
        k: usize,
        value: Rational,
    ) -> Result<(), JetError> {
        if self.slot_kind(comp, j, k) != SlotKind::Free {
            return Err(JetError::NotAFreeSlot(comp, j, k));
        }
        self.free.insert((comp, j, k), value);
        Ok(())
    }

    /// Germ carrying the 2-jet and the free coefficients, dependent slots
    /// zeroed, at the given cap.
    fn seed_germ(&self, cap: usize) -> Result<CongruenceGerm, JetError> {
        let mut xi1 = Series2::zero(cap);
        let mut xi2 = Series2::zero(cap);
        xi1.set_derivative_coeff(1, 1, self.p11.clone());
        xi2.set_derivative_coeff(0, 2, self.q02.clone());
        for (&(comp, j, k), v) in &self.free {
            if j + k > cap {
                return Err(JetError::InsufficientCap { cap, need: j + k });
            }
            match comp {
                Component::Xi1 => xi1.set_derivative_coeff(j, k, v.clone()),
                Component::Xi2 => xi2.set_derivative_coeff(j, k, v.clone()),
            }
        }
        Ok(CongruenceGerm::new(xi1, xi2)?)
    }
}

/// One solved jet equation: slot `(n,k)` determined `unknown` with the
/// recorded affine slope.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedEquation {
    pub eq: (usize, usize),
    pub unknown: Slot,
    pub value: Rational,
    pub slope: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JetSolveReport {
    pub order_reached: usize,
    pub equations_used: Vec<SolvedEquation>,
    /// Equations with zero slope and zero value: the slot stays free.
    pub extra_free: Vec<(usize, usize)>,
    /// Exact value of `W_{m0}(0,0)` once all other order-m equations hold;
    /// present only for natural `m <= order_reached`.
    pub wm0_residual: Option<Rational>,
}

#[derive(Debug, Clone)]
pub struct JetSolution {
    /// Polynomial germ at cap `order + 3`; coefficients above order
    /// `order + 1` are zero.
    pub germ: CongruenceGerm,
    /// The input normal form with `dependent` filled.
    pub normal: UmbilicNormalForm,
    pub report: JetSolveReport,
}

/// Exact derivative `W_{a,b}(0,0)` of the Weingarten polynomial of
/// `(xi1, xi2)`, using only germ data of order `<= a + b + 2`.
fn w_deriv_at_origin(xi1: &Series2, xi2: &Series2, a: usize, b: usize) -> Result<Rational, JetError> {
    let need = a + b + 3;
    let g = if xi1.cap() >= need {
        CongruenceGerm::new(xi1.truncate(need), xi2.truncate(need))?
    } else {
        CongruenceGerm::new(xi1.extended(need), xi2.extended(need))?
    };
    Ok(w_series(&g)?.derivative_coeff(a, b))
}

/// Solve the jet equations `W_{n-k,k}(0,0) = 0` for all `n <= target_order`
/// (the `(m,0)` slot excepted), filling every dependent coefficient.
pub fn solve_jet(
    normal: &UmbilicNormalForm,
    target_order: usize,
) -> Result<JetSolution, JetError> {
    if target_order < 1 {
        return Err(JetError::NotApplicable(
            "target order must be at least 1".into(),
        ));
    }
    // Free coefficients beyond order target_order + 1 cannot influence the
    // solved range but are kept in the germ up to the working cap.
    let cap = target_order + 3;
    for (&(comp, j, k), _) in &normal.free {
        if normal.slot_kind(comp, j, k) != SlotKind::Free {
            return Err(JetError::NotAFreeSlot(comp, j, k));
        }
        if j + k > cap {
            return Err(JetError::InsufficientCap { cap, need: j + k });
        }
    }
    let germ = normal.seed_germ(cap)?;
    let mut xi1 = germ.xi1().clone();
    let mut xi2 = germ.xi2().clone();
    let m_nat = normal.m_natural();
    let m_is_one = normal.m_is_one();

    let mut report = JetSolveReport {
        order_reached: target_order,
        equations_used: Vec::new(),
        extra_free: Vec::new(),
        wm0_residual: None,
    };
    let mut solved = normal.clone();

    for n in 1..=target_order {
        // Slots of order n in dependency-safe order. For m = 1 the equation
        // at (n,k) couples to the unknown of (n,k+2), so k runs downward;
        // otherwise the p-slot (n, n-m) is independent of the rest of its
        // order and goes first, the q-slots ascending after it.
        let mut slots: Vec<(usize, usize)> = Vec::new();
        if m_is_one {
            for k in (0..=n).rev() {
                slots.push((n, k));
            }
        } else {
            if let Some(m) = m_nat {
                if m > 1 && n > m {
                    slots.push((n, n - m));
                }
            }
            for k in 0..=n {
                if m_nat.is_some_and(|m| m > 1 && n > m && k == n - m) {
                    continue;
                }
                slots.push((n, k));
            }
        }

        for (n, k) in slots {
            // conjecture slot (m, 0): defer to the residual report
            if m_nat == Some(n) && k == 0 {
                continue;
            }
            let unknown: Slot = if m_is_one {
                if k == n {
                    (Component::Xi2, 1, n)
                } else if k == n - 1 {
                    (Component::Xi2, 0, n + 1)
                } else {
                    (Component::Xi2, n + 1 - k, k)
                }
            } else if m_nat.is_some_and(|m| m > 1 && n >= m + 1 && k == n - m) {
                (Component::Xi1, m_nat.unwrap() + 2, k - 1)
            } else {
                (Component::Xi2, n + 1 - k, k)
            };
            let (comp, uj, uk) = unknown;
            let series = match comp {
                Component::Xi1 => &mut xi1,
                Component::Xi2 => &mut xi2,
            };
            series.set_derivative_coeff(uj, uk, Rational::zero());
            let e0 = w_deriv_at_origin(&xi1, &xi2, n - k, k)?;
            match comp {
                Component::Xi1 => xi1.set_derivative_coeff(uj, uk, Rational::one()),
                Component::Xi2 => xi2.set_derivative_coeff(uj, uk, Rational::one()),
            }
            let e1 = w_deriv_at_origin(&xi1, &xi2, n - k, k)?;
            let slope = &e1 - &e0;
            if slope.is_zero() {
                match comp {
                    Component::Xi1 => xi1.set_derivative_coeff(uj, uk, Rational::zero()),
                    Component::Xi2 => xi2.set_derivative_coeff(uj, uk, Rational::zero()),
                }
                if e0.is_zero() {
                    report.extra_free.push((n, k));
                    continue;
                }
                return Err(JetError::InconsistentEquation(n, k));
            }
            let value = -&e0 / &slope;
            match comp {
                Component::Xi1 => xi1.set_derivative_coeff(uj, uk, value.clone()),
                Component::Xi2 => xi2.set_derivative_coeff(uj, uk, value.clone()),
            }
            solved.dependent.insert(unknown, value.clone());
            report.equations_used.push(SolvedEquation {
                eq: (n, k),
                unknown,
                value,
                slope,
            });
        }

        if m_nat == Some(n) {
            report.wm0_residual = Some(w_deriv_at_origin(&xi1, &xi2, n, 0)?);
        }
    }

    Ok(JetSolution {
        germ: CongruenceGerm::new(xi1, xi2)?,
        normal: solved,
        report,
    })
}

/// Exact value of `W_{m0}(0,0)` for a germ whose jet equations of order
/// `< m` and order-m equations with `k >= 1` are already imposed. The
/// conjecture predicts zero; this never assumes it.
pub fn check_wm0(normal: &UmbilicNormalForm, germ: &CongruenceGerm) -> Result<Rational, JetError> {
    let m = normal
        .m_natural()
        .ok_or_else(|| JetError::NotApplicable(format!("m = {} is not a natural number", normal.m())))?;
    if germ.cap() < m + 1 {
        return Err(JetError::InsufficientCap {
            cap: germ.cap(),
            need: m + 1,
        });
    }
    w_deriv_at_origin(germ.xi1(), germ.xi2(), m, 0)
}

/// The monomial W-congruence family `xi1 = xy`,
/// `xi2 = -(m/2) y^2 + C x^{m+1}` (the `x^{m+1}` term only for natural `m`).
/// Satisfies `W = 0` identically.
pub fn monomial_family(m: &Rational, c: &Rational, cap: usize) -> Result<CongruenceGerm, JetError> {
    if m.is_zero() {
        return Err(JetError::FamilyPrecondition("m must be nonzero".into()));
    }
    let m_nat = if m.is_integer() && m.is_positive() {
        m.to_integer().to_usize()
    } else {
        None
    };
    if !c.is_zero() && m_nat.is_none() {
        return Err(JetError::FamilyPrecondition(
            "C must be 0 when m is not a natural number (no analytic x^{m+1} term exists)".into(),
        ));
    }
    if cap < 2 {
        return Err(JetError::InsufficientCap { cap, need: 2 });
    }
    if let Some(mn) = m_nat {
        if !c.is_zero() && cap < mn + 1 {
            return Err(JetError::InsufficientCap { cap, need: mn + 1 });
        }
    }
    let xi1 = Series2::monomial(cap, 1, 1, Rational::one());
    let mut xi2 = Series2::zero(cap);
    xi2.set_coeff(0, 2, -m / rat_int(2));
    if let Some(mn) = m_nat {
        if !c.is_zero() {
            xi2.set_coeff(mn + 1, 0, c.clone());
        }
    }
    Ok(CongruenceGerm::new(xi1, xi2)?)
}

/// Residuals of the four displayed identities of the `p_n0 = 0` example
/// class at induction order `n`; all are zero on class members.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleClassReport {
    pub order: usize,
    pub m: Rational,
    /// `W_n0(0,0) - 2 p11 (q02 + n p11) q_{n+1,0}`
    pub wn0_residual: Rational,
    /// `W_{n-1,1}(0,0) - 2 p11 (q02 + (n-1) p11) q_{n,1}`; requires
    /// `q_{n+1,0} = 0`, otherwise absent.
    pub wn1_residual: Option<Rational>,
    /// `delta_{n+1,0}(0,0) - 4 (n+1) p11 q_{n+1,0}`
    pub delta_next_residual: Rational,
    /// `delta_{n,1}(0,0) - 2 (q02 + (2n-1) p11) q_{n,1}`
    pub delta_n1_residual: Rational,
}

/// Evaluate the example-class identities at order `n` on a germ of the
/// class `p_{j0} = 0` satisfying the induction hypotheses
/// `q_{k,0} = q_{k-1,1} = 0` for `k <= n`.
pub fn example_class_checks(
    germ: &CongruenceGerm,
    n: usize,
) -> Result<ExampleClassReport, JetError> {
    if n < 2 {
        return Err(JetError::NotApplicable("class checks need n >= 2".into()));
    }
    if germ.cap() < n + 3 {
        return Err(JetError::InsufficientCap {
            cap: germ.cap(),
            need: n + 3,
        });
    }
    let p11 = germ.p(1, 1);
    let q02 = germ.q(0, 2);
    if p11.is_zero() || q02.is_zero() {
        return Err(JetError::ClassViolation(
            "normal form requires p11 != 0 and q02 != 0".into(),
        ));
    }
    let mut offending = Vec::new();
    for j in 0..=germ.cap() {
        if !germ.p(j, 0).is_zero() {
            offending.push(format!("p{j}0 = {}", germ.p(j, 0)));
        }
    }
    for slot in [(2usize, 0usize), (0, 2), (1, 1)] {
        if slot != (1, 1) && !germ.p(slot.0, slot.1).is_zero() {
            offending.push(format!("p{}{} = {}", slot.0, slot.1, germ.p(slot.0, slot.1)));
        }
    }
    if !germ.q(1, 1).is_zero() {
        offending.push(format!("q11 = {}", germ.q(1, 1)));
    }
    for k in 2..=n {
        if !germ.q(k, 0).is_zero() {
            offending.push(format!("q{k}0 = {}", germ.q(k, 0)));
        }
        if !germ.q(k - 1, 1).is_zero() {
            offending.push(format!("q{}1 = {}", k - 1, germ.q(k - 1, 1)));
        }
    }
    if !offending.is_empty() {
        return Err(JetError::ClassViolation(offending.join(", ")));
    }

    let m = -&q02 / &p11;
    let q_next = germ.q(n + 1, 0);
    let q_n1 = germ.q(n, 1);
    let two = rat_int(2);

    let wn0 = w_deriv_at_origin(germ.xi1(), germ.xi2(), n, 0)?;
    let wn0_residual = &wn0 - &(&two * &p11 * (&q02 + rat_int(n as i64) * &p11) * &q_next);

    let wn1_residual = if q_next.is_zero() {
        let wn1 = w_deriv_at_origin(germ.xi1(), germ.xi2(), n - 1, 1)?;
        Some(&wn1 - &(&two * &p11 * (&q02 + rat_int(n as i64 - 1) * &p11) * &q_n1))
    } else {
        None
    };

    let delta = crate::congruence::discriminant(germ);
    let delta_next = delta.derivative_coeff(n + 1, 0);
    let delta_next_residual =
        &delta_next - &(rat_int(4 * (n as i64 + 1)) * &p11 * &q_next);
    let delta_n1 = delta.derivative_coeff(n, 1);
    // 2 (2n - m - 1) p11 = 2 (q02 + (2n-1) p11) since q02 = -m p11
    let delta_n1_residual =
        &delta_n1 - &(&two * (&q02 + rat_int(2 * n as i64 - 1) * &p11) * &q_n1);

    Ok(ExampleClassReport {
        order: n,
        m,
        wn0_residual,
        wn1_residual,
        delta_next_residual,
        delta_n1_residual,
    })
}

// --- normalization ---------------------------------------------------------

/// Quadratic vector field of the 2-jet: `V(v) = (Q1(v), Q2(v))` where `Qi`
/// is the quadratic part of `xi_i`.
struct TwoJet {
    // derivative coefficients (p20, p11, p02), (q20, q11, q02)
    p: [Rational; 3],
    q: [Rational; 3],
}

impl TwoJet {
    fn of(germ: &CongruenceGerm) -> TwoJet {
        TwoJet {
            p: [germ.p(2, 0), germ.p(1, 1), germ.p(0, 2)],
            q: [germ.q(2, 0), germ.q(1, 1), germ.q(0, 2)],
        }
    }

    fn eval_form(f: &[Rational; 3], v: &(Rational, Rational)) -> Rational {
        let half = Rational::new(1.into(), 2.into());
        &half * &f[0] * &v.0 * &v.0 + &f[1] * &v.0 * &v.1 + &half * &f[2] * &v.1 * &v.1
    }

    fn v(&self, dir: &(Rational, Rational)) -> (Rational, Rational) {
        (Self::eval_form(&self.p, dir), Self::eval_form(&self.q, dir))
    }

    /// Symmetric bilinear form with `B(v,v) = V(v)`.
    fn bilinear(&self, u: &(Rational, Rational), w: &(Rational, Rational)) -> (Rational, Rational) {
        let sum = (&u.0 + &w.0, &u.1 + &w.1);
        let vs = self.v(&sum);
        let vu = self.v(u);
        let vw = self.v(w);
        let half = Rational::new(1.into(), 2.into());
        (
            &half * (&vs.0 - &vu.0 - &vw.0),
            &half * (&vs.1 - &vu.1 - &vw.1),
        )
    }

    /// Indefiniteness discriminant `beta^2 - alpha*gamma` of a form.
    fn disc(f: &[Rational; 3]) -> Rational {
        &f[1] * &f[1] - &f[0] * &f[2]
    }
}

fn cross(u: &(Rational, Rational), w: &(Rational, Rational)) -> Rational {
    &u.0 * &w.1 - &u.1 * &w.0
}

fn is_zero_vec(v: &(Rational, Rational)) -> bool {
    v.0.is_zero() && v.1.is_zero()
}

/// Rational direction candidates `(x, y)` annihilating the homogeneous
/// polynomial with ascending coefficients `h[i] x^{d-i} y^i`; finite slopes
/// first (sorted), then the vertical direction when it is a root.
fn homogeneous_rational_directions(h: &[Rational]) -> Vec<(Rational, Rational)> {
    // restrict to x = 1: polynomial in t = y/x with coefficients h
    let mut dirs: Vec<(Rational, Rational)> = rational_roots(h)
        .into_iter()
        .map(|t| (Rational::one(), t))
        .collect();
    if h.last().is_some_and(|c| c.is_zero()) {
        dirs.push((Rational::zero(), Rational::one()));
    }
    dirs
}

/// Normalize an umbilic germ by a rational linear change of the plane
/// (with `xi` transformed as a vector field): find directions `m1`, `m2`
/// with `V(m2) || m2`, `V(m1) || m2` and `B(m1, m2) || m1`; the matrix
/// `M = [m1 | m2]` then conjugates the germ to `p02 = p20 = q11 = 0`,
/// `p11 != 0`, `q02 != 0`.
pub fn normalize_umbilic(
    germ: &CongruenceGerm,
) -> Result<(CongruenceGerm, UmbilicNormalForm), JetError> {
    let (p01, q10, p10, q01) = (germ.p(0, 1), germ.q(1, 0), germ.p(1, 0), germ.q(0, 1));
    if !p01.is_zero() || !q10.is_zero() || p10 != q01 {
        return Err(JetError::NotUmbilic { p01, q10, p10, q01 });
    }

    // Fast path: already in normal form.
    if germ.p(2, 0).is_zero()
        && germ.p(0, 2).is_zero()
        && germ.q(1, 1).is_zero()
        && !germ.p(1, 1).is_zero()
        && !germ.q(0, 2).is_zero()
    {
        let normal = normal_form_from_germ(germ, identity_change());
        return Ok((germ.clone(), normal));
    }

    let jet = TwoJet::of(germ);
    let disc_p = TwoJet::disc(&jet.p);
    let disc_q = TwoJet::disc(&jet.q);
    if disc_p.is_negative() && disc_q.is_negative() {
        return Err(JetError::NormalizationImpossible(
            Obstruction::BothFormsDefinite,
        ));
    }
    if disc_p.is_zero() && disc_q.is_zero() {
        return Err(JetError::NormalizationImpossible(
            Obstruction::BothFormsDegenerate,
        ));
    }

    // Eigendirections of V: rational roots of C(v) = det[v, V(v)],
    // the cubic x Q2 - y Q1.
    let half = Rational::new(1.into(), 2.into());
    let cubic = [
        &half * &jet.q[0],                  // x^3
        &jet.q[1] - &(&half * &jet.p[0]),   // x^2 y
        &(&half * &jet.q[2]) - &jet.p[1],   // x y^2
        -&half * &jet.p[2],                 // y^3
    ];
    let eigen_dirs = homogeneous_rational_directions(&cubic);
    if eigen_dirs.is_empty() {
        return Err(JetError::NormalizationImpossible(
            Obstruction::NoRationalEigendirection,
        ));
    }

    for m2 in &eigen_dirs {
        let v2 = jet.v(m2);
        if is_zero_vec(&v2) {
            continue; // q02 would vanish
        }
        // directions m1 with V(m1) || m2: roots of the quadratic form
        // m2.y * Q1(v) - m2.x * Q2(v)
        let quad = [
            &half * (&m2.1 * &jet.p[0] - &m2.0 * &jet.q[0]),
            &m2.1 * &jet.p[1] - &m2.0 * &jet.q[1],
            &half * (&m2.1 * &jet.p[2] - &m2.0 * &jet.q[2]),
        ];
        for m1 in homogeneous_rational_directions(&[
            quad[0].clone(),
            quad[1].clone(),
            quad[2].clone(),
        ]) {
            if cross(&m1, m2).is_zero() {
                continue;
            }
            let b = jet.bilinear(&m1, m2);
            if is_zero_vec(&b) || !cross(&b, &m1).is_zero() {
                continue; // p11 would vanish / q11 would survive
            }
            let change = [
                [m1.0.clone(), m2.0.clone()],
                [m1.1.clone(), m2.1.clone()],
            ];
            let transformed = apply_linear_change(germ, &change)?;
            // Exact re-verification of the three zero conditions.
            if transformed.p(2, 0).is_zero()
                && transformed.p(0, 2).is_zero()
                && transformed.q(1, 1).is_zero()
                && !transformed.p(1, 1).is_zero()
                && !transformed.q(0, 2).is_zero()
            {
                let normal = normal_form_from_germ(&transformed, change);
                return Ok((transformed, normal));
            }
        }
    }
    Err(JetError::NormalizationImpossible(
        Obstruction::NoAdmissiblePair,
    ))
}

fn identity_change() -> [[Rational; 2]; 2] {
    [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ]
}

/// Conjugate the germ by the plane change with matrix `M` (columns):
/// `xi_new(w) = M^{-1} xi(M w)`.
pub fn apply_linear_change(
    germ: &CongruenceGerm,
    m: &[[Rational; 2]; 2],
) -> Result<CongruenceGerm, JetError> {
    let cap = germ.cap();
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(JetError::NotApplicable("singular linear change".into()));
    }
    let mut px = Series2::zero(cap);
    px.set_coeff(1, 0, m[0][0].clone());
    px.set_coeff(0, 1, m[0][1].clone());
    let mut py = Series2::zero(cap);
    py.set_coeff(1, 0, m[1][0].clone());
    py.set_coeff(0, 1, m[1][1].clone());
    let xi1_m = germ.xi1().subst(&px, &py).map_err(CongruenceError::from)?;
    let xi2_m = germ.xi2().subst(&px, &py).map_err(CongruenceError::from)?;
    // M^{-1} = (1/det) [[m11, -m01], [-m10, m00]]
    let inv = [
        [&m[1][1] / &det, -&m[0][1] / &det],
        [-&m[1][0] / &det, &m[0][0] / &det],
    ];
    let xi1 = &xi1_m.scale(&inv[0][0]) + &xi2_m.scale(&inv[0][1]);
    let xi2 = &xi1_m.scale(&inv[1][0]) + &xi2_m.scale(&inv[1][1]);
    Ok(CongruenceGerm::new(xi1, xi2)?)
}

/// Float fallback for germs whose normalization needs an irrational
/// direction: run the same eigendirection search in floats (relative
/// tolerance `tol`) and return `m = -q02/p11` of the numeric normal form.
pub fn m_parameter_numeric(germ: &CongruenceGerm, tol: f64) -> Option<f64> {
    use crate::rational::to_f64;
    use crate::roots::{cubic_real_roots, quadratic_real_roots};

    let p = [
        to_f64(&germ.p(2, 0)),
        to_f64(&germ.p(1, 1)),
        to_f64(&germ.p(0, 2)),
    ];
    let q = [
        to_f64(&germ.q(2, 0)),
        to_f64(&germ.q(1, 1)),
        to_f64(&germ.q(0, 2)),
    ];
    let scale = p
        .iter()
        .chain(q.iter())
        .fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return None;
    }
    let form = |f: &[f64; 3], v: [f64; 2]| 0.5 * f[0] * v[0] * v[0] + f[1] * v[0] * v[1] + 0.5 * f[2] * v[1] * v[1];
    let vf = |v: [f64; 2]| [form(&p, v), form(&q, v)];
    let bilinear = |u: [f64; 2], w: [f64; 2]| {
        let s = vf([u[0] + w[0], u[1] + w[1]]);
        let a = vf(u);
        let b = vf(w);
        [0.5 * (s[0] - a[0] - b[0]), 0.5 * (s[1] - a[1] - b[1])]
    };
    let cross = |u: [f64; 2], w: [f64; 2]| u[0] * w[1] - u[1] * w[0];

    // eigendirections: roots of x Q2 - y Q1 restricted to (1, t), plus (0,1)
    let cubic = [
        0.5 * q[0],
        q[1] - 0.5 * p[0],
        0.5 * q[2] - p[1],
        -0.5 * p[2],
    ];
    let mut dirs: Vec<[f64; 2]> = cubic_real_roots(cubic[0], cubic[1], cubic[2], cubic[3])
        .into_iter()
        .map(|t| {
            let n = (1.0 + t * t).sqrt();
            [1.0 / n, t / n]
        })
        .collect();
    if cubic[3].abs() <= tol * scale {
        dirs.push([0.0, 1.0]);
    }
    for m2 in dirs {
        let v2 = vf(m2);
        let sigma = v2[0] * m2[0] + v2[1] * m2[1];
        if (v2[0] * v2[0] + v2[1] * v2[1]).sqrt() <= tol * scale
            || cross(v2, m2).abs() > tol * scale * 10.0
        {
            continue;
        }
        // m1 with V(m1) || m2: roots of m2.y Q1 - m2.x Q2 on (1, s), plus (0,1)
        let quad = [
            0.5 * (m2[1] * p[0] - m2[0] * q[0]),
            m2[1] * p[1] - m2[0] * q[1],
            0.5 * (m2[1] * p[2] - m2[0] * q[2]),
        ];
        let mut m1s: Vec<[f64; 2]> = quadratic_real_roots(quad[0], quad[1], quad[2])
            .into_iter()
            .map(|s| {
                let n = (1.0 + s * s).sqrt();
                [1.0 / n, s / n]
            })
            .collect();
        if quad[2].abs() <= tol * scale {
            m1s.push([0.0, 1.0]);
        }
        for m1 in m1s {
            if cross(m1, m2).abs() <= tol {
                continue;
            }
            let b = bilinear(m1, m2);
            let rho = b[0] * m1[0] + b[1] * m1[1];
            if (b[0] * b[0] + b[1] * b[1]).sqrt() <= tol * scale
                || cross(b, m1).abs() > tol * scale * 10.0
                || rho.abs() <= tol * scale
            {
                continue;
            }
            // p11 = 2 rho, q02 = 2 sigma in the numeric normal form
            return Some(-sigma / rho);
        }
    }
    None
}

/// Extract the normal-form ledger from an already-normalized germ.
fn normal_form_from_germ(
    germ: &CongruenceGerm,
    change: [[Rational; 2]; 2],
) -> UmbilicNormalForm {
    let mut normal = UmbilicNormalForm {
        p11: germ.p(1, 1),
        q02: germ.q(0, 2),
        linear_change: change,
        free: BTreeMap::new(),
        dependent: BTreeMap::new(),
    };
    for comp in [Component::Xi1, Component::Xi2] {
        for d in 2..=germ.cap() {
            for k in 0..=d {
                let j = d - k;
                let value = match comp {
                    Component::Xi1 => germ.p(j, k),
                    Component::Xi2 => germ.q(j, k),
                };
                if value.is_zero() {
                    continue;
                }
                match normal.slot_kind(comp, j, k) {
                    SlotKind::Free => {
                        normal.free.insert((comp, j, k), value);
                    }
                    SlotKind::Dependent { .. } => {
                        normal.dependent.insert((comp, j, k), value);
                    }
                    _ => {}
                }
            }
        }
    }
    normal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::discriminant;
    use crate::rational::rat;

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

    #[test]
    fn normalize_identity_on_normal_form() {
        // xi1 = xy, xi2 = -y^2: identity change, p11 = 1, q02 = -2, m = 2
        let g = germ_from_derivs(4, &[(1, 1, 1)], &[(0, 2, -2)]);
        let (ng, normal) = normalize_umbilic(&g).unwrap();
        assert_eq!(ng, g);
        assert_eq!(normal.p11, rat_int(1));
        assert_eq!(normal.q02, rat_int(-2));
        assert_eq!(normal.m(), rat_int(2));
        assert_eq!(normal.linear_change, identity_change());
    }

    #[test]
    fn normalize_forty_five_degree_germ() {
        // xi1 = (x^2 - y^2)/2, xi2 = -xy: asymptotic directions of Q1 at
        // +-45 degrees; a rational conjugation (the swap) reaches the normal
        // form with m = 1.
        let g = germ_from_derivs(4, &[(2, 0, 1), (0, 2, -1)], &[(1, 1, -1)]);
        let (ng, normal) = normalize_umbilic(&g).unwrap();
        assert!(ng.p(2, 0).is_zero() && ng.p(0, 2).is_zero() && ng.q(1, 1).is_zero());
        assert!(!normal.p11.is_zero() && !normal.q02.is_zero());
        assert_eq!(normal.m(), rat_int(1));
        // the recorded change reproduces the transformed germ
        let re = apply_linear_change(&g, &normal.linear_change).unwrap();
        assert_eq!(re, ng);
    }

    #[test]
    fn normalize_rejects_definite_pair() {
        // Q1 = (x^2 + y^2)/2, Q2 = x^2 + y^2: both definite
        let g = germ_from_derivs(3, &[(2, 0, 1), (0, 2, 1)], &[(2, 0, 2), (0, 2, 2)]);
        assert_eq!(
            normalize_umbilic(&g),
            Err(JetError::NormalizationImpossible(
                Obstruction::BothFormsDefinite
            ))
        );
    }

    #[test]
    fn normalize_rejects_non_umbilic() {
        let g = germ_from_derivs(3, &[(0, 1, 1)], &[]);
        assert!(matches!(
            normalize_umbilic(&g),
            Err(JetError::NotUmbilic { .. })
        ));
    }

    #[test]
    fn slot_ledger_m3() {
        let normal = UmbilicNormalForm::with_m(&rat_int(3)).unwrap();
        // q_{4,k} free, q_{j,k} j not in {0,4} dependent, p_{5,k} dependent
        assert_eq!(normal.slot_kind(Component::Xi2, 4, 0), SlotKind::Free);
        assert_eq!(normal.slot_kind(Component::Xi2, 4, 2), SlotKind::Free);
        assert_eq!(normal.slot_kind(Component::Xi2, 0, 3), SlotKind::Free);
        assert_eq!(
            normal.slot_kind(Component::Xi2, 3, 0),
            SlotKind::Dependent { eq: (2, 0) }
        );
        assert_eq!(
            normal.slot_kind(Component::Xi2, 2, 1),
            SlotKind::Dependent { eq: (2, 1) }
        );
        assert_eq!(
            normal.slot_kind(Component::Xi1, 5, 0),
            SlotKind::Dependent { eq: (4, 1) }
        );
        assert_eq!(normal.slot_kind(Component::Xi1, 4, 1), SlotKind::Free);
        assert!(matches!(
            normal.slot_kind(Component::Xi2, 2, 0),
            SlotKind::Dependent { eq: (1, 0) }
        ));
    }

    #[test]
    fn slot_ledger_m1() {
        let normal = UmbilicNormalForm::with_m(&rat_int(1)).unwrap();
        assert_eq!(normal.slot_kind(Component::Xi2, 2, 0), SlotKind::Free);
        assert_eq!(normal.slot_kind(Component::Xi2, 2, 5), SlotKind::Free);
        assert_eq!(normal.slot_kind(Component::Xi1, 7, 2), SlotKind::Free);
        assert_eq!(
            normal.slot_kind(Component::Xi2, 3, 1),
            SlotKind::Dependent { eq: (3, 1) }
        );
        assert_eq!(
            normal.slot_kind(Component::Xi2, 0, 3),
            SlotKind::Dependent { eq: (2, 1) }
        );
        assert_eq!(
            normal.slot_kind(Component::Xi2, 1, 4),
            SlotKind::Dependent { eq: (4, 4) }
        );
    }

    #[test]
    fn solve_jet_m3_relations() {
        // q21 = -3 p30 and q12 = -4 p21
        let mut normal = UmbilicNormalForm::with_m(&rat_int(3)).unwrap();
        normal
            .set_free(Component::Xi1, 3, 0, rat(5, 2))
            .unwrap();
        normal.set_free(Component::Xi1, 2, 1, rat(-7, 3)).unwrap();
        let sol = solve_jet(&normal, 2).unwrap();
        assert_eq!(sol.germ.q(2, 1), rat(-15, 2));
        assert_eq!(sol.germ.q(1, 2), rat(28, 3));
        assert_eq!(
            sol.normal.dependent.get(&(Component::Xi2, 2, 1)),
            Some(&rat(-15, 2))
        );
    }

    #[test]
    fn solve_jet_m4_spec_values() {
        // p11=1, p30=3, p21=0, p40=1, order 3:
        // q30 = 0, q40 = -54, q21 = -10, q12 = 0, q31 = -5
        let mut normal = UmbilicNormalForm::with_m(&rat_int(4)).unwrap();
        normal.set_free(Component::Xi1, 3, 0, rat_int(3)).unwrap();
        normal.set_free(Component::Xi1, 2, 1, rat_int(0)).unwrap();
        normal.set_free(Component::Xi1, 4, 0, rat_int(1)).unwrap();
        let sol = solve_jet(&normal, 3).unwrap();
        assert!(sol.germ.q(3, 0).is_zero());
        assert_eq!(sol.germ.q(4, 0), rat_int(-54));
        assert_eq!(sol.germ.q(2, 1), rat_int(-10));
        assert!(sol.germ.q(1, 2).is_zero());
        assert_eq!(sol.germ.q(3, 1), rat_int(-5));
    }

    #[test]
    fn solve_jet_m2_reproduces_monomial_family() {
        let mut normal = UmbilicNormalForm::new(rat_int(1), rat_int(-2)).unwrap();
        normal.set_free(Component::Xi2, 3, 0, rat_int(6)).unwrap();
        let sol = solve_jet(&normal, 3).unwrap();
        let family = monomial_family(&rat_int(2), &rat_int(1), 3).unwrap();
        assert_eq!(sol.germ.truncated(3), family);
        assert!(w_series(&sol.germ).unwrap().is_zero());
        assert_eq!(sol.report.wm0_residual, Some(rat_int(0)));
    }

    #[test]
    fn solve_jet_soundness_random_m() {
        // every imposed slot has exactly zero residual afterwards
        let mut normal = UmbilicNormalForm::new(rat(2, 3), rat(5, 2)).unwrap(); // m = -15/4
        normal.set_free(Component::Xi1, 3, 0, rat_int(1)).unwrap();
        normal.set_free(Component::Xi1, 2, 1, rat(1, 2)).unwrap();
        normal.set_free(Component::Xi1, 0, 3, rat_int(-2)).unwrap();
        normal.set_free(Component::Xi2, 0, 3, rat_int(3)).unwrap();
        let target = 4;
        let sol = solve_jet(&normal, target).unwrap();
        for n in 1..=target {
            for k in 0..=n {
                let w = w_deriv_at_origin(sol.germ.xi1(), sol.germ.xi2(), n - k, k).unwrap();
                assert!(w.is_zero(), "W_({},{}) = {w}", n - k, k);
            }
        }
        assert!(w_series(&sol.germ).unwrap().is_zero());
    }

    #[test]
    fn solve_jet_m1_branch() {
        // m = 1 with q20 != 0: the descending ledger fills q_{1,n} and
        // q_{0,n+1}; the output is a W-congruence to the solved order.
        let mut normal = UmbilicNormalForm::new(rat_int(1), rat_int(-1)).unwrap();
        normal.set_free(Component::Xi2, 2, 0, rat_int(2)).unwrap();
        normal.set_free(Component::Xi1, 3, 0, rat_int(1)).unwrap();
        normal.set_free(Component::Xi2, 2, 1, rat_int(-1)).unwrap();
        let sol = solve_jet(&normal, 3).unwrap();
        assert!(w_series(&sol.germ).unwrap().is_zero());
        assert_eq!(sol.report.wm0_residual, Some(rat_int(0)));
        // W10 = 2 q20 p11^2 (1 - m) = 0 automatically; slot (1,0) is the
        // conjecture slot, so q20 survived untouched.
        assert_eq!(sol.germ.q(2, 0), rat_int(2));
    }

    #[test]
    fn set_free_rejects_dependent_slot() {
        let mut normal = UmbilicNormalForm::with_m(&rat_int(3)).unwrap();
        assert_eq!(
            normal.set_free(Component::Xi2, 2, 1, rat_int(1)),
            Err(JetError::NotAFreeSlot(Component::Xi2, 2, 1))
        );
        assert_eq!(
            normal.set_free(Component::Xi1, 5, 0, rat_int(1)),
            Err(JetError::NotAFreeSlot(Component::Xi1, 5, 0))
        );
    }

    #[test]
    fn check_wm0_zero_for_small_m() {
        for m in 1..=3i64 {
            let mut normal = UmbilicNormalForm::with_m(&rat_int(m)).unwrap();
            normal.set_free(Component::Xi1, 3, 0, rat_int(2)).unwrap();
            if m == 1 {
                normal.set_free(Component::Xi2, 2, 0, rat_int(3)).unwrap();
            }
            let sol = solve_jet(&normal, m as usize).unwrap();
            let res = check_wm0(&normal, &sol.germ).unwrap();
            assert!(res.is_zero(), "m = {m}: W_m0 = {res}");
        }
        let normal = UmbilicNormalForm::with_m(&rat(5, 2)).unwrap();
        let family = monomial_family(&rat(5, 2), &rat_int(0), 5).unwrap();
        assert!(matches!(
            check_wm0(&normal, &family),
            Err(JetError::NotApplicable(_))
        ));
    }

    #[test]
    fn monomial_family_examples() {
        // m = 2, C = 1: xi2 = -y^2 + x^3, delta = 9y^2 + 12x^3
        let g = monomial_family(&rat_int(2), &rat_int(1), 5).unwrap();
        assert_eq!(g.q(0, 2), rat_int(-2));
        assert_eq!(g.q(3, 0), rat_int(6));
        assert!(w_series(&g).unwrap().is_zero());
        let d = discriminant(&g);
        assert_eq!(d.coeff(0, 2), rat_int(9));
        assert_eq!(d.coeff(3, 0), rat_int(12));

        // m = 4, C = 1: delta = 25y^2 + 20x^5
        let g4 = monomial_family(&rat_int(4), &rat_int(1), 6).unwrap();
        let d4 = discriminant(&g4);
        assert_eq!(d4.coeff(0, 2), rat_int(25));
        assert_eq!(d4.coeff(5, 0), rat_int(20));

        // m = 5/2, C = 0: delta = (7/2)^2 y^2
        let gh = monomial_family(&rat(5, 2), &rat_int(0), 8).unwrap();
        let dh = discriminant(&gh);
        assert_eq!(dh.coeff(0, 2), rat(49, 4));
        assert_eq!(dh.iter_nonzero().count(), 1);

        // errors
        assert!(matches!(
            monomial_family(&rat(5, 2), &rat_int(1), 8),
            Err(JetError::FamilyPrecondition(_))
        ));
        assert!(matches!(
            monomial_family(&rat_int(4), &rat_int(1), 4),
            Err(JetError::InsufficientCap { .. })
        ));
    }

    #[test]
    fn example_class_monomial_m3() {
        // monomial family m=3, C=1, cap 6, n=3: q40 = 24 and
        // W_30 = 2 p11 (q02 + 3 p11) q40 = 0 via q02 + 3 p11 = 0.
        let g = monomial_family(&rat_int(3), &rat_int(1), 6).unwrap();
        assert_eq!(g.q(4, 0), rat_int(24));
        let rep = example_class_checks(&g, 3).unwrap();
        assert!(rep.wn0_residual.is_zero());
        assert!(rep.delta_next_residual.is_zero());
        assert!(rep.delta_n1_residual.is_zero());
        assert!(rep.wn1_residual.is_none()); // q40 != 0
    }

    #[test]
    fn example_class_monomial_m2_delta30() {
        // monomial family m=2, C=1, cap 5, n=2: delta_30 = 4*3*p11*q30 = 72
        let g = monomial_family(&rat_int(2), &rat_int(1), 5).unwrap();
        let d = discriminant(&g);
        assert_eq!(d.derivative_coeff(3, 0), rat_int(72));
        let rep = example_class_checks(&g, 2).unwrap();
        assert!(rep.wn0_residual.is_zero());
        assert!(rep.delta_next_residual.is_zero());
        assert!(rep.delta_n1_residual.is_zero());
    }

    #[test]
    fn example_class_trivial_when_top_slots_vanish() {
        // q_{n+1,0} = q_{n,1} = 0: all four residuals trivially zero
        let g = monomial_family(&rat(7, 3), &rat_int(0), 7).unwrap();
        let rep = example_class_checks(&g, 3).unwrap();
        assert!(rep.wn0_residual.is_zero());
        assert_eq!(rep.wn1_residual, Some(rat_int(0)));
        assert!(rep.delta_next_residual.is_zero());
        assert!(rep.delta_n1_residual.is_zero());
    }

    #[test]
    fn example_class_rejects_outside_class() {
        let g = germ_from_derivs(6, &[(1, 1, 1), (3, 0, 2)], &[(0, 2, -2)]);
        assert!(matches!(
            example_class_checks(&g, 2),
            Err(JetError::ClassViolation(_))
        ));
    }

    #[test]
    fn numeric_m_on_rotated_germ() {
        // a germ whose eigen-search is exact gives the exact m numerically
        let g = germ_from_derivs(4, &[(1, 1, 2)], &[(0, 2, -3)]);
        let m = m_parameter_numeric(&g, 1e-9).unwrap();
        assert!((m - 1.5).abs() < 1e-9, "{m}");

        // irrational asymptotic directions: exact path refuses, float works.
        // Conjugate the m=2 normal form by M = [[1, 1], [-1, 1]] (rotation by
        // 45 degrees up to scale), landing outside the rational search space
        // for this germ's eigen cubic is not guaranteed, so just check the
        // float answer agrees with the known m.
        let base = germ_from_derivs(5, &[(1, 1, 1)], &[(0, 2, -2), (3, 0, 6)]);
        let m = [
            [rat_int(1), rat_int(1)],
            [rat_int(-1), rat_int(1)],
        ];
        let rotated = apply_linear_change(&base, &m).unwrap();
        let mf = m_parameter_numeric(&rotated, 1e-9).unwrap();
        assert!((mf - 2.0).abs() < 1e-7, "{mf}");
    }

    #[test]
    fn linear_probe_affineness() {
        // perturbing a solved unknown by +1 changes W_{n-k,k} by the slope
        let mut normal = UmbilicNormalForm::with_m(&rat_int(3)).unwrap();
        normal.set_free(Component::Xi1, 3, 0, rat_int(2)).unwrap();
        let sol = solve_jet(&normal, 3).unwrap();
        for eq in &sol.report.equations_used {
            let (comp, j, k) = eq.unknown;
            let mut xi1 = sol.germ.xi1().clone();
            let mut xi2 = sol.germ.xi2().clone();
            let bumped = match comp {
                Component::Xi1 => {
                    let v = xi1.derivative_coeff(j, k) + Rational::one();
                    xi1.set_derivative_coeff(j, k, v);
                    w_deriv_at_origin(&xi1, &xi2, eq.eq.0 - eq.eq.1, eq.eq.1).unwrap()
                }
                Component::Xi2 => {
                    let v = xi2.derivative_coeff(j, k) + Rational::one();
                    xi2.set_derivative_coeff(j, k, v);
                    w_deriv_at_origin(&xi1, &xi2, eq.eq.0 - eq.eq.1, eq.eq.1).unwrap()
                }
            };
            assert_eq!(bumped, eq.slope, "slot {:?}", eq.unknown);
        }
    }
}
