//! Truncated bivariate power series over the rationals.
//!
//! A [`Series2`] stores every monomial coefficient `c[j][k]` with
//! `j + k <= cap` in a dense triangular table (zeros are stored explicitly),
//! representing `sum c_jk x^j y^k`. Arithmetic is exact; truncation is the
//! only approximation, and the cap tracks how far the result is trustworthy.
//!
//! Two coefficient conventions coexist:
//! - *monomial* coefficients `c_jk`, the stored form (cheapest to multiply);
//! - *derivative* coefficients `g_jk = j! k! c_jk`, the value of
//!   `d^{j+k} f / dx^j dy^k` at the origin. All jet-level bookkeeping and
//!   all file I/O use derivative coefficients.
//!
//! Binary operations require equal caps; mixing caps silently would hide
//! truncation bugs, so callers that genuinely want a lower common order must
//! truncate first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::{One, Zero};
use thiserror::Error;

use crate::rational::{factorial, to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series cap mismatch: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("division by a series with zero constant term")]
    NonUnitDivisor,
    #[error("substitution component `{0}` has a nonzero constant term")]
    NonzeroConstantTerm(&'static str),
    #[error("map inversion requires zero constant terms and identity linear part")]
    NonIdentityLinearPart,
}

/// Truncated bivariate power series `sum_{j+k<=cap} c_jk x^j y^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series2 {
    cap: usize,
    /// Degree-major triangular table: entry `(j,k)` lives at
    /// `d(d+1)/2 + k` where `d = j + k`.
    coeffs: Vec<Rational>,
}

#[inline]
fn tri_index(j: usize, k: usize) -> usize {
    let d = j + k;
    d * (d + 1) / 2 + k
}

#[inline]
fn tri_len(cap: usize) -> usize {
    (cap + 1) * (cap + 2) / 2
}

impl Series2 {
    pub fn zero(cap: usize) -> Self {
        Series2 {
            cap,
            coeffs: vec![Rational::zero(); tri_len(cap)],
        }
    }

    pub fn constant(cap: usize, value: Rational) -> Self {
        let mut s = Series2::zero(cap);
        s.coeffs[0] = value;
        s
    }

    /// The monomial `coeff * x^j y^k`. Panics when `j + k > cap`.
    pub fn monomial(cap: usize, j: usize, k: usize, coeff: Rational) -> Self {
        assert!(j + k <= cap, "monomial degree {} exceeds cap {}", j + k, cap);
        let mut s = Series2::zero(cap);
        s.coeffs[tri_index(j, k)] = coeff;
        s
    }

    /// The coordinate series `x` (requires `cap >= 1`).
    pub fn var_x(cap: usize) -> Self {
        Series2::monomial(cap, 1, 0, Rational::one())
    }

    /// The coordinate series `y` (requires `cap >= 1`).
    pub fn var_y(cap: usize) -> Self {
        Series2::monomial(cap, 0, 1, Rational::one())
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Monomial coefficient `c_jk`; zero outside the cap.
    pub fn coeff(&self, j: usize, k: usize) -> Rational {
        if j + k > self.cap {
            Rational::zero()
        } else {
            self.coeffs[tri_index(j, k)].clone()
        }
    }

    /// Set the monomial coefficient `c_jk`. Panics when `j + k > cap`.
    pub fn set_coeff(&mut self, j: usize, k: usize, value: Rational) {
        assert!(j + k <= self.cap, "degree {} exceeds cap {}", j + k, self.cap);
        self.coeffs[tri_index(j, k)] = value;
    }

    /// Derivative coefficient `g_jk = j! k! c_jk`, the exact value of the
    /// mixed partial at the origin.
    pub fn derivative_coeff(&self, j: usize, k: usize) -> Rational {
        let fac = Rational::from_integer(&factorial(j) * &factorial(k));
        self.coeff(j, k) * fac
    }

    /// Set by derivative coefficient: stores `value / (j! k!)`.
    pub fn set_derivative_coeff(&mut self, j: usize, k: usize, value: Rational) {
        let fac = Rational::from_integer(&factorial(j) * &factorial(k));
        self.set_coeff(j, k, value / fac);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero entries as `(j, k, monomial coefficient)`, degree-major order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let cap = self.cap;
        (0..=cap)
            .flat_map(move |d| (0..=d).map(move |k| (d - k, k)))
            .filter_map(move |(j, k)| {
                let c = &self.coeffs[tri_index(j, k)];
                (!c.is_zero()).then_some((j, k, c))
            })
    }

    /// Copy truncated to `new_cap` (must not exceed the current cap).
    pub fn truncate(&self, new_cap: usize) -> Series2 {
        assert!(new_cap <= self.cap, "truncate cannot raise the cap");
        let mut out = Series2::zero(new_cap);
        out.coeffs
            .clone_from_slice(&self.coeffs[..tri_len(new_cap)]);
        out
    }

    /// Copy with the cap raised to `new_cap`, padding with zeros.
    ///
    /// This is only meaningful when the series is known to be a polynomial
    /// (every coefficient beyond the old cap exactly zero), as for solver
    /// output and the hand-built germs; for a genuinely truncated series it
    /// would fabricate knowledge.
    pub fn extended(&self, new_cap: usize) -> Series2 {
        assert!(new_cap >= self.cap, "extended cannot lower the cap");
        let mut out = Series2::zero(new_cap);
        out.coeffs[..self.coeffs.len()].clone_from_slice(&self.coeffs);
        out
    }

    fn check_cap(&self, rhs: &Series2) -> Result<usize, SeriesError> {
        if self.cap != rhs.cap {
            Err(SeriesError::CapMismatch(self.cap, rhs.cap))
        } else {
            Ok(self.cap)
        }
    }

    pub fn add(&self, rhs: &Series2) -> Result<Series2, SeriesError> {
        self.check_cap(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Series2) -> Result<Series2, SeriesError> {
        self.check_cap(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn negate(&self) -> Series2 {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = -std::mem::take(a);
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Series2 {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= factor;
        }
        out
    }

    /// Product truncated to the shared cap. Caps must match.
    pub fn mul(&self, rhs: &Series2) -> Result<Series2, SeriesError> {
        let cap = self.check_cap(rhs)?;
        let mut out = Series2::zero(cap);
        for d1 in 0..=cap {
            for k1 in 0..=d1 {
                let c1 = &self.coeffs[d1 * (d1 + 1) / 2 + k1];
                if c1.is_zero() {
                    continue;
                }
                let j1 = d1 - k1;
                for d2 in 0..=cap - d1 {
                    for k2 in 0..=d2 {
                        let c2 = &rhs.coeffs[d2 * (d2 + 1) / 2 + k2];
                        if c2.is_zero() {
                            continue;
                        }
                        let j2 = d2 - k2;
                        out.coeffs[tri_index(j1 + j2, k1 + k2)] += c1 * c2;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `d^{jx+ky} f / dx^jx dy^ky`, cap reduced by `jx + ky` (floored at 0).
    pub fn diff(&self, jx: usize, ky: usize) -> Series2 {
        let order = jx + ky;
        let new_cap = self.cap.saturating_sub(order);
        let mut out = Series2::zero(new_cap);
        for d in 0..=new_cap {
            for k in 0..=d {
                let j = d - k;
                // d/dx^jx d/dy^ky of x^{j+jx} y^{k+ky} = (j+jx)!/j! (k+ky)!/k! x^j y^k
                let mut fac = BigInt::one();
                for t in j + 1..=j + jx {
                    fac *= BigInt::from(t);
                }
                for t in k + 1..=k + ky {
                    fac *= BigInt::from(t);
                }
                out.coeffs[tri_index(j, k)] =
                    &self.coeffs[tri_index(j + jx, k + ky)] * Rational::from_integer(fac);
            }
        }
        out
    }

    /// Quotient `q` with `q * g = f` up to the cap. Requires `g(0,0) != 0`.
    pub fn div(&self, g: &Series2) -> Result<Series2, SeriesError> {
        let cap = self.check_cap(g)?;
        let g00 = g.coeffs[0].clone();
        if g00.is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let mut q = Series2::zero(cap);
        for d in 0..=cap {
            for k in 0..=d {
                let j = d - k;
                // q_jk = (f_jk - sum_{(j1,k1) < (j,k)} q_{j1,k1} g_{j-j1,k-k1}) / g00
                let mut acc = self.coeffs[tri_index(j, k)].clone();
                for j1 in 0..=j {
                    for k1 in 0..=k {
                        if j1 == j && k1 == k {
                            continue;
                        }
                        let qc = &q.coeffs[tri_index(j1, k1)];
                        if qc.is_zero() {
                            continue;
                        }
                        acc -= qc * &g.coeffs[tri_index(j - j1, k - k1)];
                    }
                }
                q.coeffs[tri_index(j, k)] = acc / &g00;
            }
        }
        Ok(q)
    }

    /// Composition `f(px(u,v), py(u,v))` truncated at the cap.
    ///
    /// Both substituted components must have zero constant term, or the
    /// truncation order of the result would be violated.
    pub fn subst(&self, px: &Series2, py: &Series2) -> Result<Series2, SeriesError> {
        let cap = self.check_cap(px)?;
        px.check_cap(py)?;
        if !px.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("px"));
        }
        if !py.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("py"));
        }
        // Powers of px and py; px^j has valuation >= j so terms with
        // j + k > cap vanish identically after truncation.
        let mut x_pows: Vec<Series2> = Vec::with_capacity(cap + 1);
        let mut y_pows: Vec<Series2> = Vec::with_capacity(cap + 1);
        x_pows.push(Series2::constant(cap, Rational::one()));
        y_pows.push(Series2::constant(cap, Rational::one()));
        for j in 1..=cap {
            x_pows.push(x_pows[j - 1].mul(px)?);
            y_pows.push(y_pows[j - 1].mul(py)?);
        }
        let mut out = Series2::zero(cap);
        for d in 0..=cap {
            for k in 0..=d {
                let j = d - k;
                let c = &self.coeffs[tri_index(j, k)];
                if c.is_zero() {
                    continue;
                }
                let term = x_pows[j].mul(&y_pows[k])?;
                out = out.add(&term.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Evaluate as a float polynomial (plotting layer only).
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        let mut xp = vec![1.0; self.cap + 1];
        let mut yp = vec![1.0; self.cap + 1];
        for i in 1..=self.cap {
            xp[i] = xp[i - 1] * x;
            yp[i] = yp[i - 1] * y;
        }
        for d in 0..=self.cap {
            for k in 0..=d {
                let c = &self.coeffs[tri_index(d - k, k)];
                if !c.is_zero() {
                    acc += to_f64(c) * xp[d - k] * yp[k];
                }
            }
        }
        acc
    }

    /// Float coefficient table for hot evaluation loops.
    pub fn to_poly_f64(&self) -> PolyF64 {
        PolyF64 {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(to_f64).collect(),
        }
    }
}

/// Compositional inverse of a plane map with identity linear part.
///
/// Given `F = (fx, fy)` with zero constant terms and linear part the
/// identity, returns `G` with `F(G(u,v)) = (u,v)` up to the cap. The result
/// is verified by composing back; the fixed-point iteration gains one exact
/// order per round.
pub fn invert_map(fx: &Series2, fy: &Series2) -> Result<(Series2, Series2), SeriesError> {
    let cap = if fx.cap() != fy.cap() {
        return Err(SeriesError::CapMismatch(fx.cap(), fy.cap()));
    } else {
        fx.cap()
    };
    let one = Rational::one();
    let id_ok = fx.coeff(0, 0).is_zero()
        && fy.coeff(0, 0).is_zero()
        && fx.coeff(1, 0) == one
        && fx.coeff(0, 1).is_zero()
        && fy.coeff(1, 0).is_zero()
        && fy.coeff(0, 1) == one;
    if cap >= 1 && !id_ok {
        return Err(SeriesError::NonIdentityLinearPart);
    }
    let x = Series2::var_x(cap.max(1)).truncate(cap);
    let y = Series2::var_y(cap.max(1)).truncate(cap);
    if cap == 0 {
        return Ok((Series2::zero(0), Series2::zero(0)));
    }
    // F = id + N with N of valuation >= 2; iterate G <- id - N(G).
    let nx = fx.sub(&x)?;
    let ny = fy.sub(&y)?;
    let mut gx = x.clone();
    let mut gy = y.clone();
    for _ in 0..cap {
        gx = x.sub(&nx.subst(&gx, &gy)?)?;
        gy = y.sub(&ny.subst(&gx, &gy)?)?;
    }
    debug_assert!(fx.subst(&gx, &gy)? == x && fy.subst(&gx, &gy)? == y);
    Ok((gx, gy))
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, k, c) in self.iter_nonzero() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match (j, k) {
                (0, 0) => write!(f, "{c}")?,
                _ => {
                    if c.is_one() {
                        // bare monomial
                    } else {
                        write!(f, "{c}*")?;
                    }
                    match j {
                        0 => {}
                        1 => write!(f, "x")?,
                        _ => write!(f, "x^{j}")?,
                    }
                    if j > 0 && k > 0 {
                        write!(f, "*")?;
                    }
                    match k {
                        0 => {}
                        1 => write!(f, "y")?,
                        _ => write!(f, "y^{k}")?,
                    }
                    if j == 0 && k == 0 {
                        unreachable!()
                    }
                    if c.is_one() && j == 0 && k == 0 {
                        write!(f, "1")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series2[cap={}]({})", self.cap, self)
    }
}

/// Dense float copy of a series for repeated evaluation.
#[derive(Clone, Debug)]
pub struct PolyF64 {
    cap: usize,
    coeffs: Vec<f64>,
}

impl PolyF64 {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        let mut xp = 1.0;
        for j in 0..=self.cap {
            let mut term = 0.0;
            let mut yp = 1.0;
            for k in 0..=self.cap - j {
                term += self.coeffs[tri_index(j, k)] * yp;
                yp *= y;
            }
            acc += term * xp;
            xp *= x;
        }
        acc
    }
}

// Panicking operator sugar for internal formula code where caps are equal by
// construction. Contract surfaces use the fallible methods above.

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        Series2::add(self, rhs).expect("series cap mismatch in +")
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        Series2::sub(self, rhs).expect("series cap mismatch in -")
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        Series2::mul(self, rhs).expect("series cap mismatch in *")
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn poly(cap: usize, terms: &[(usize, usize, i64, i64)]) -> Series2 {
        let mut s = Series2::zero(cap);
        for &(j, k, n, d) in terms {
            s.set_coeff(j, k, rat(n, d));
        }
        s
    }

    #[test]
    fn mul_monomials() {
        // (x)(y) at cap 2 -> xy
        let x = Series2::var_x(2);
        let y = Series2::var_y(2);
        assert_eq!(x.mul(&y).unwrap(), poly(2, &[(1, 1, 1, 1)]));
    }

    #[test]
    fn mul_truncates() {
        // (1 + x)(1 - x) at cap 1 -> 1 (the x^2 term is cut)
        let a = poly(1, &[(0, 0, 1, 1), (1, 0, 1, 1)]);
        let b = poly(1, &[(0, 0, 1, 1), (1, 0, -1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(1, &[(0, 0, 1, 1)]));
    }

    #[test]
    fn mul_hand_expansion() {
        // (xy)(x^2 - y^2/2) at cap 4 -> x^3 y - x y^3 / 2, checked against a
        // naive double loop over derivative coefficients.
        let f = poly(4, &[(1, 1, 1, 1)]);
        let g = poly(4, &[(2, 0, 1, 1), (0, 2, -1, 2)]);
        let p = f.mul(&g).unwrap();
        assert_eq!(p, poly(4, &[(3, 1, 1, 1), (1, 3, -1, 2)]));

        // independent oracle: convolve coefficient tables directly
        let mut oracle = Series2::zero(4);
        for (j1, k1, c1) in f.iter_nonzero() {
            for (j2, k2, c2) in g.iter_nonzero() {
                if j1 + j2 + k1 + k2 <= 4 {
                    let prev = oracle.coeff(j1 + j2, k1 + k2);
                    oracle.set_coeff(j1 + j2, k1 + k2, prev + c1 * c2);
                }
            }
        }
        assert_eq!(p, oracle);
    }

    #[test]
    fn mul_cap_mismatch_is_error() {
        let a = Series2::zero(2);
        let b = Series2::zero(3);
        assert_eq!(a.mul(&b), Err(SeriesError::CapMismatch(2, 3)));
    }

    #[test]
    fn diff_basics() {
        let f = poly(2, &[(1, 1, 1, 1)]);
        assert_eq!(f.diff(1, 0), poly(1, &[(0, 1, 1, 1)]));

        // x^3 at cap 3 differentiated thrice -> 3! = 6
        let c = poly(3, &[(3, 0, 1, 1)]);
        assert_eq!(c.diff(3, 0), Series2::constant(0, rat_int(6)));

        // -(3/2) y^2 + x^4, d^2/dy^2 -> -3
        let g = poly(4, &[(0, 2, -3, 2), (4, 0, 1, 1)]);
        let gyy = g.diff(0, 2);
        assert_eq!(gyy.coeff(0, 0), rat_int(-3));
        assert_eq!(gyy.cap(), 2);
        assert!(gyy.coeff(2, 0).is_zero());
    }

    #[test]
    fn derivative_coeff_convention() {
        // g_jk = j! k! c_jk
        let f = poly(4, &[(2, 1, 5, 3)]);
        assert_eq!(f.derivative_coeff(2, 1), rat(10, 3));
        let mut g = Series2::zero(4);
        g.set_derivative_coeff(2, 1, rat(10, 3));
        assert_eq!(f, g);
    }

    #[test]
    fn div_identity_and_geometric() {
        let x = Series2::var_x(3);
        let one = Series2::constant(3, rat_int(1));
        assert_eq!(x.div(&one).unwrap(), x);

        // 1 / (1 - x) at cap 3 = 1 + x + x^2 + x^3
        let g = poly(3, &[(0, 0, 1, 1), (1, 0, -1, 1)]);
        let q = one.div(&g).unwrap();
        assert_eq!(
            q,
            poly(3, &[(0, 0, 1, 1), (1, 0, 1, 1), (2, 0, 1, 1), (3, 0, 1, 1)])
        );
    }

    #[test]
    fn div_multiply_back() {
        // (x^2 + xy) / (2 + y) at cap 2 = x^2/2 + xy/2 after truncation
        let f = poly(2, &[(2, 0, 1, 1), (1, 1, 1, 1)]);
        let g = poly(2, &[(0, 0, 2, 1), (0, 1, 1, 1)]);
        let q = f.div(&g).unwrap();
        assert_eq!(q, poly(2, &[(2, 0, 1, 2), (1, 1, 1, 2)]));
        assert_eq!(q.mul(&g).unwrap(), f);
    }

    #[test]
    fn div_by_non_unit_is_error() {
        let f = Series2::var_x(2);
        assert_eq!(f.div(&f), Err(SeriesError::NonUnitDivisor));
    }

    #[test]
    fn subst_blow_up_charts() {
        // f = xy under (u, uv) -> u^2 v
        let f = poly(3, &[(1, 1, 1, 1)]);
        let u = Series2::var_x(3);
        let uv = poly(3, &[(1, 1, 1, 1)]);
        assert_eq!(f.subst(&u, &uv).unwrap(), poly(3, &[(2, 1, 1, 1)]));

        // f = x under (u^2, u^3 v) -> u^2
        let x = Series2::var_x(4);
        let u2 = poly(4, &[(2, 0, 1, 1)]);
        let u3v = poly(4, &[(3, 1, 1, 1)]);
        assert_eq!(x.subst(&u2, &u3v).unwrap(), poly(4, &[(2, 0, 1, 1)]));
    }

    #[test]
    fn subst_hand_expansion() {
        // f = x^2 + y under (u + v, v) -> u^2 + 2uv + v^2 + v
        let f = poly(2, &[(2, 0, 1, 1), (0, 1, 1, 1)]);
        let px = poly(2, &[(1, 0, 1, 1), (0, 1, 1, 1)]);
        let py = Series2::var_y(2);
        assert_eq!(
            f.subst(&px, &py).unwrap(),
            poly(2, &[(2, 0, 1, 1), (1, 1, 2, 1), (0, 2, 1, 1), (0, 1, 1, 1)])
        );
    }

    #[test]
    fn subst_rejects_constant_term() {
        let f = Series2::var_x(2);
        let bad = Series2::constant(2, rat_int(1));
        let y = Series2::var_y(2);
        assert_eq!(
            f.subst(&bad, &y),
            Err(SeriesError::NonzeroConstantTerm("px"))
        );
    }

    #[test]
    fn invert_identity_and_shear() {
        let x = Series2::var_x(2);
        let y = Series2::var_y(2);
        let (gx, gy) = invert_map(&x, &y).unwrap();
        assert_eq!((gx, gy), (x.clone(), y.clone()));

        // F = (x + y^2, y) -> G = (x - y^2, y)
        let fx = poly(2, &[(1, 0, 1, 1), (0, 2, 1, 1)]);
        let (gx, gy) = invert_map(&fx, &y).unwrap();
        assert_eq!(gx, poly(2, &[(1, 0, 1, 1), (0, 2, -1, 1)]));
        assert_eq!(gy, y);
    }

    #[test]
    fn invert_composes_to_identity() {
        // F = (x + x^3, y + x^2 y) at cap 3
        let fx = poly(3, &[(1, 0, 1, 1), (3, 0, 1, 1)]);
        let fy = poly(3, &[(0, 1, 1, 1), (2, 1, 1, 1)]);
        let (gx, gy) = invert_map(&fx, &fy).unwrap();
        assert_eq!(fx.subst(&gx, &gy).unwrap(), Series2::var_x(3));
        assert_eq!(fy.subst(&gx, &gy).unwrap(), Series2::var_y(3));
    }

    #[test]
    fn invert_rejects_general_linear_part() {
        let fx = poly(2, &[(0, 1, 1, 1)]); // x component is y: linear part is a swap
        let fy = poly(2, &[(1, 0, 1, 1)]);
        assert_eq!(
            invert_map(&fx, &fy),
            Err(SeriesError::NonIdentityLinearPart)
        );
    }

    #[test]
    fn display_is_readable() {
        let f = poly(3, &[(0, 0, 2, 1), (1, 1, -1, 2), (3, 0, 1, 1)]);
        assert_eq!(f.to_string(), "2 + -1/2*x*y + x^3");
        assert_eq!(Series2::zero(2).to_string(), "0");
    }
}
