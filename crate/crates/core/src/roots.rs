//! Exact rational roots and float real roots of low-degree polynomials.
//!
//! Rational roots are found exactly: linear and quadratic cases by formula
//! (square roots tested for exactness), the cubic case by numerically
//! locating candidates, rationalizing them through continued-fraction
//! convergents and verifying `p(candidate) == 0` exactly before deflating.
//! A rational root whose denominator exceeds the convergent bound is treated
//! as irrational; callers surface that as a diagnostic rather than an
//! answer.

use num::traits::Zero;

use crate::rational::{rat_int, rational_sqrt, to_f64, Rational};

/// Exact value of `p` at `x`, coefficients ascending.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn eval_poly_f64(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All rational roots of `p` (ascending coefficients), without multiplicity,
/// sorted. Supports degree <= 3 after stripping leading zeros.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut cs: Vec<Rational> = coeffs.to_vec();
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    let mut roots = Vec::new();
    if cs.len() <= 1 {
        // zero or constant polynomial: no isolated roots reported
        return roots;
    }
    // factor out x^v
    let mut work = cs;
    if work[0].is_zero() {
        roots.push(Rational::zero());
        while work[0].is_zero() && work.len() > 1 {
            work.remove(0);
        }
    }
    match work.len() - 1 {
        0 => {}
        1 => roots.push(-&work[0] / &work[1]),
        2 => roots.extend(quadratic_rational_roots(&work[0], &work[1], &work[2])),
        3 => {
            if let Some(r) = cubic_one_rational_root(&work) {
                roots.push(r.clone());
                // deflate: work / (x - r)
                let c3 = work[3].clone();
                let c2 = &work[2] + &c3 * &r;
                let c1 = &work[1] + &c2 * &r;
                roots.extend(quadratic_rational_roots(&c1, &c2, &c3));
            }
        }
        _ => {
            // Higher degrees are not needed by the callers in this crate.
            debug_assert!(false, "rational_roots: degree > 3 unsupported");
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Rational roots of `c0 + c1 x + c2 x^2` with `c2 != 0`.
fn quadratic_rational_roots(c0: &Rational, c1: &Rational, c2: &Rational) -> Vec<Rational> {
    let disc = c1 * c1 - rat_int(4) * c2 * c0;
    match rational_sqrt(&disc) {
        None => vec![],
        Some(s) => {
            let two_a = rat_int(2) * c2;
            let r1 = (-c1 + &s) / &two_a;
            let r2 = (-c1 - &s) / &two_a;
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
    }
}

/// One exactly-verified rational root of a cubic, if a candidate with
/// modest denominator exists.
fn cubic_one_rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let f: Vec<f64> = coeffs.iter().map(to_f64).collect();
    for x in cubic_real_roots(f[0], f[1], f[2], f[3]) {
        for cand in rational_candidates(x) {
            if eval_poly(coeffs, &cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Continued-fraction convergents of `x` with denominator <= 10^12, nearest
/// first, plus the rounded integer.
pub fn rational_candidates(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let round = x.round();
    if round.abs() < 1e15 {
        out.push(rat_int(round as i64));
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let cand = Rational::new(p1.into(), q1.into());
        if !out.contains(&cand) {
            out.push(cand);
        }
        if frac.abs() < 1e-14 || q1 > 1_000_000_000_000 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    // nearest-to-x first so exact verification usually succeeds immediately
    out.sort_by(|a, b| {
        let da = (to_f64(a) - x).abs();
        let db = (to_f64(b) - x).abs();
        da.partial_cmp(&db).unwrap()
    });
    out.truncate(12);
    out
}

/// Real roots of `c0 + c1 x + c2 x^2 + c3 x^3` in floats, ascending.
/// Degenerate leading coefficients fall through to the lower degree.
pub fn cubic_real_roots(c0: f64, c1: f64, c2: f64, c3: f64) -> Vec<f64> {
    let scale = c0.abs().max(c1.abs()).max(c2.abs()).max(c3.abs());
    if scale == 0.0 {
        return vec![];
    }
    let eps = 1e-14 * scale;
    if c3.abs() <= eps {
        return quadratic_real_roots(c0, c1, c2);
    }
    // depressed cubic t^3 + p t + q with x = t - c2/(3 c3)
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let mut roots = if disc > 1e-18 {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        vec![u + v + shift]
    } else if p.abs() < 1e-12 && q.abs() < 1e-12 {
        vec![shift]
    } else {
        // three real roots (trigonometric form)
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
            .collect()
    };
    // polish with a couple of Newton steps
    let cs = [c0, c1, c2, c3];
    let ds = [c1, 2.0 * c2, 3.0 * c3];
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let f = eval_poly_f64(&cs, *r);
            let d = eval_poly_f64(&ds, *r);
            if d.abs() > 1e-300 {
                *r -= f / d;
            }
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-9 * (1.0 + x.abs()));
    roots
}

/// Real roots of `c0 + c1 x + c2 x^2` in floats, ascending.
pub fn quadratic_real_roots(c0: f64, c1: f64, c2: f64) -> Vec<f64> {
    let scale = c0.abs().max(c1.abs()).max(c2.abs());
    if scale == 0.0 {
        return vec![];
    }
    if c2.abs() <= 1e-14 * scale {
        if c1.abs() <= 1e-14 * scale {
            return vec![];
        }
        return vec![-c0 / c1];
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    let q = -0.5 * (c1 + c1.signum() * s);
    let mut roots = if q == 0.0 {
        vec![0.0, -c1 / c2]
    } else {
        vec![q / c2, c0 / q]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * (1.0 + x.abs()));
    roots
}

/// Real roots of an ascending-coefficient polynomial of degree <= 3 after
/// trimming.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut cs = coeffs.to_vec();
    let scale = cs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    while cs.last().is_some_and(|c| c.abs() <= 1e-13 * scale.max(1e-300)) {
        cs.pop();
    }
    match cs.len() {
        0 | 1 => vec![],
        2 => vec![-cs[0] / cs[1]],
        3 => quadratic_real_roots(cs[0], cs[1], cs[2]),
        4 => cubic_real_roots(cs[0], cs[1], cs[2], cs[3]),
        _ => {
            debug_assert!(false, "real_roots: degree > 3 unsupported");
            vec![]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn quadratic_exact() {
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let roots = rational_roots(&[rat(-3, 1), rat(5, 1), rat(2, 1)]);
        assert_eq!(roots, vec![rat(-3, 1), rat(1, 2)]);
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&[rat(-2, 1), rat(0, 1), rat(1, 1)]).is_empty());
    }

    #[test]
    fn cubic_exact() {
        // (x - 1/3)(x + 2)(x - 5) = x^3 - 10/3 x^2 - 9 x + 10/3
        let roots = rational_roots(&[rat(10, 3), rat(-9, 1), rat(-10, 3), rat(1, 1)]);
        assert_eq!(roots, vec![rat(-2, 1), rat(1, 3), rat(5, 1)]);
    }

    #[test]
    fn cubic_with_zero_root() {
        // x(x^2 - 9) = x^3 - 9x
        let roots = rational_roots(&[rat(0, 1), rat(-9, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(roots, vec![rat(-3, 1), rat(0, 1), rat(3, 1)]);
    }

    #[test]
    fn cubic_irrational_roots_rejected() {
        // x^3 - 2: only an irrational real root
        let roots = rational_roots(&[rat(-2, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(roots.is_empty());
    }

    #[test]
    fn float_cubic_three_roots() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let roots = cubic_real_roots(-6.0, 11.0, -6.0, 1.0);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - e).abs() < 1e-9, "{r} vs {e}");
        }
    }

    #[test]
    fn float_quadratic_no_real() {
        assert!(quadratic_real_roots(1.0, 0.0, 1.0).is_empty());
        let roots = quadratic_real_roots(-2.0, 0.0, 3.0);
        assert_eq!(roots.len(), 2);
        assert!((roots[1] - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }
}
