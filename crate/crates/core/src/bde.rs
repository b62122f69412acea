//! The binary differential equation of principal lines, its blow-ups, and
//! figure generation.
//!
//! The eigen-direction condition of the shape operator gives the quadratic
//! direction equation
//!
//! ```text
//! P dy^2 + Q dx dy + Rc dx^2 = 0,
//! P = xi1_y,  Q = xi1_x - xi2_y,  Rc = -xi2_x,
//! ```
//!
//! whose discriminant `Q^2 - 4 P Rc` equals the congruence discriminant
//! `delta` exactly; the identity is verified on construction. Off the
//! discriminant curve the equation defines two transverse direction fields;
//! this module integrates them with a fixed-step fourth-order scheme and
//! resolves the umbilic by the quadratic and cuspidal blow-ups, typing the
//! singular points on the exceptional line by the Jacobian of the factored
//! field.
//!
//! Everything up to the pullbacks is exact; root finding, Jacobians and the
//! integrator run in floats.

use std::fmt;

use num::traits::Zero;
use thiserror::Error;

use crate::congruence::{discriminant, CongruenceError, CongruenceGerm};
use crate::rational::{to_f64, Rational};
use crate::roots::real_roots;
use crate::series::{PolyF64, Series2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BdeError {
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("BDE discriminant does not reproduce delta (sign-convention bug)")]
    InternalConsistency,
    #[error("chart {chart} does not apply: {detail}")]
    ChartCaseMismatch { chart: BlowUpChart, detail: String },
    #[error("degenerate direction field (all BDE coefficients vanish)")]
    DegenerateField,
    #[error("invalid parameter: {0}")]
    BadParameter(&'static str),
    #[error("germ cap {cap} too small for this chart; need at least {need}")]
    InsufficientOrder { cap: usize, need: usize },
}

/// Principal-line BDE coefficients, each at germ cap - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalBde {
    pub p: Series2,
    pub q: Series2,
    pub rc: Series2,
}

/// Build the BDE from a germ and verify `Q^2 - 4 P Rc = delta` exactly.
pub fn principal_bde(germ: &CongruenceGerm) -> Result<PrincipalBde, BdeError> {
    let p = germ.xi1().diff(0, 1);
    let q = &germ.xi1().diff(1, 0) - &germ.xi2().diff(0, 1);
    let rc = germ.xi2().diff(1, 0).negate();
    let four = Series2::constant(p.cap(), crate::rational::rat_int(4));
    let disc = &(&q * &q) - &(&four * &(&p * &rc));
    if disc != discriminant(germ) {
        return Err(BdeError::InternalConsistency);
    }
    Ok(PrincipalBde { p, q, rc })
}

impl PrincipalBde {
    pub fn cap(&self) -> usize {
        self.p.cap()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.rc.is_zero()
    }

    /// Float tables for the integration loop.
    pub fn numeric(&self) -> BdeNumeric {
        BdeNumeric {
            p: self.p.to_poly_f64(),
            q: self.q.to_poly_f64(),
            rc: self.rc.to_poly_f64(),
        }
    }
}

/// Float evaluation of the BDE coefficients.
#[derive(Clone, Debug)]
pub struct BdeNumeric {
    p: PolyF64,
    q: PolyF64,
    rc: PolyF64,
}

/// The two principal directions at a point, as unit vectors, or a
/// degenerate marker near (or beyond) the discriminant curve.
#[derive(Debug, Clone, PartialEq)]
pub enum SlopePair {
    Two([f64; 2], [f64; 2]),
    Degenerate,
}

impl BdeNumeric {
    pub fn delta(&self, x: f64, y: f64) -> f64 {
        let q = self.q.eval(x, y);
        q * q - 4.0 * self.p.eval(x, y) * self.rc.eval(x, y)
    }

    /// Directions solving `P s^2 + Q s + Rc = 0` for `s = dy/dx`, with the
    /// inverted chart `Rc t^2 + Q t + P = 0`, `t = dx/dy`, when `P` is the
    /// smaller coefficient. Degenerate when the discriminant drops below
    /// `tol`.
    pub fn directions(&self, point: [f64; 2], tol: f64) -> SlopePair {
        let p = self.p.eval(point[0], point[1]);
        let q = self.q.eval(point[0], point[1]);
        let rc = self.rc.eval(point[0], point[1]);
        let disc = q * q - 4.0 * p * rc;
        if disc < tol {
            return SlopePair::Degenerate;
        }
        let s = disc.sqrt();
        let unit = |dx: f64, dy: f64| -> [f64; 2] {
            let n = (dx * dx + dy * dy).sqrt();
            [dx / n, dy / n]
        };
        if p.abs() >= rc.abs() && p != 0.0 {
            // stable quadratic roots in the slope chart
            let w = -0.5 * (q + q.signum() * s);
            let (s1, s2) = if w == 0.0 {
                (0.0, 0.0)
            } else {
                (w / p, rc / w)
            };
            SlopePair::Two(unit(1.0, s1), unit(1.0, s2))
        } else if rc != 0.0 {
            let w = -0.5 * (q + q.signum() * s);
            let (t1, t2) = if w == 0.0 {
                (0.0, 0.0)
            } else {
                (w / rc, p / w)
            };
            SlopePair::Two(unit(t1, 1.0), unit(t2, 1.0))
        } else if q != 0.0 {
            // P = Rc = 0: directions dx = 0 and dy = 0
            SlopePair::Two(unit(1.0, 0.0), unit(0.0, 1.0))
        } else {
            SlopePair::Degenerate
        }
    }
}

/// Convenience form of [`BdeNumeric::directions`].
pub fn slope_pair(bde: &PrincipalBde, point: [f64; 2], tol: f64) -> SlopePair {
    bde.numeric().directions(point, tol)
}

// --- blow-up analysis -------------------------------------------------------

/// The four blow-up substitutions used near the umbilic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowUpChart {
    /// `(x, y) = (u, uv)`, exceptional line `u = 0` (Morse case).
    H,
    /// `(x, y) = (uv, v)`, exceptional line `v = 0` (behavior along the x-axis).
    H1,
    /// `(x, y) = (u^2, u^3 v)`, cusp side `x > 0`.
    Hp,
    /// `(x, y) = (-u^2, u^3 v)`, cusp side `x < 0`.
    Hn,
}

impl fmt::Display for BlowUpChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowUpChart::H => write!(f, "H"),
            BlowUpChart::H1 => write!(f, "H1"),
            BlowUpChart::Hp => write!(f, "Hp"),
            BlowUpChart::Hn => write!(f, "Hn"),
        }
    }
}

impl BlowUpChart {
    /// Substitution pair at the given cap.
    fn map(&self, cap: usize) -> (Series2, Series2) {
        let one = Rational::from_integer(1.into());
        match self {
            BlowUpChart::H => (
                Series2::monomial(cap, 1, 0, one.clone()),
                Series2::monomial(cap, 1, 1, one),
            ),
            BlowUpChart::H1 => (
                Series2::monomial(cap, 1, 1, one.clone()),
                Series2::monomial(cap, 0, 1, one),
            ),
            BlowUpChart::Hp => (
                Series2::monomial(cap, 2, 0, one.clone()),
                Series2::monomial(cap, 3, 1, one),
            ),
            BlowUpChart::Hn => (
                Series2::monomial(cap, 2, 0, -one.clone()),
                Series2::monomial(cap, 3, 1, one),
            ),
        }
    }

    fn divisor_is_u(&self) -> bool {
        !matches!(self, BlowUpChart::H1)
    }
}

/// Type of a singular point of the factored blow-up field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularPointKind {
    Saddle,
    Node,
    Focus,
    Degenerate,
}

impl fmt::Display for SingularPointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularPointKind::Saddle => write!(f, "saddle"),
            SingularPointKind::Node => write!(f, "node"),
            SingularPointKind::Focus => write!(f, "focus"),
            SingularPointKind::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// A singular point on the exceptional line of a blow-up chart.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowUpPoint {
    /// Coordinate along the exceptional line: `v` for the u-charts
    /// (H, Hp, Hn), `u` for H1.
    pub v0: f64,
    pub jacobian_det: f64,
    pub trace: f64,
    pub kind: SingularPointKind,
}

/// Pull the BDE back through a plane substitution: with
/// `dx = x_u du + x_v dv`, `dy = y_u du + y_v dv`, the coefficients of
/// `dv^2`, `du dv`, `du^2` are returned in that order.
fn pull_back(
    bde: &PrincipalBde,
    px: &Series2,
    py: &Series2,
) -> Result<(Series2, Series2, Series2), BdeError> {
    let cap = px.cap();
    let p = bde
        .p
        .extended(cap)
        .subst(px, py)
        .map_err(CongruenceError::from)?;
    let q = bde
        .q
        .extended(cap)
        .subst(px, py)
        .map_err(CongruenceError::from)?;
    let rc = bde
        .rc
        .extended(cap)
        .subst(px, py)
        .map_err(CongruenceError::from)?;
    let xu = px.diff(1, 0).extended(cap);
    let xv = px.diff(0, 1).extended(cap);
    let yu = py.diff(1, 0).extended(cap);
    let yv = py.diff(0, 1).extended(cap);
    let two = Series2::constant(cap, crate::rational::rat_int(2));
    let pv = &(&(&p * &yv) * &yv) + &(&(&(&q * &xv) * &yv) + &(&(&rc * &xv) * &xv));
    let quv = &(&(&two * &(&(&p * &yu) * &yv)) + &(&q * &(&(&xu * &yv) + &(&xv * &yu))))
        + &(&two * &(&(&rc * &xu) * &xv));
    let ru = &(&(&p * &yu) * &yu) + &(&(&(&q * &xu) * &yu) + &(&(&rc * &xu) * &xu));
    Ok((pv, quv, ru))
}

/// Divide by `x^e` (when `axis_x`) or `y^e`, or report non-divisibility.
fn shift_down(s: &Series2, e: usize, axis_x: bool) -> Option<Series2> {
    if e == 0 {
        return Some(s.clone());
    }
    let cap = s.cap();
    if e > cap {
        return s.is_zero().then(|| Series2::zero(0));
    }
    let mut out = Series2::zero(cap - e);
    for (j, k, c) in s.iter_nonzero() {
        let (jj, kk) = if axis_x {
            if j < e {
                return None;
            }
            (j - e, k)
        } else {
            if k < e {
                return None;
            }
            (j, k - e)
        };
        out.set_coeff(jj, kk, c.clone());
    }
    Some(out)
}

fn valuation(s: &Series2, axis_x: bool) -> Option<usize> {
    s.iter_nonzero()
        .map(|(j, k, _)| if axis_x { j } else { k })
        .min()
}

/// First-order data of the germ's normalized 2-jet, read off the BDE:
/// `p11 = P_x(0)`, `m = Q_y(0)/P_x(0) - 1`, `q20 = -Rc_x(0)`.
struct BdeJet {
    m: Rational,
    q20: Rational,
}

fn bde_jet(bde: &PrincipalBde) -> Result<BdeJet, BdeError> {
    let nonzero_const = !bde.p.coeff(0, 0).is_zero()
        || !bde.q.coeff(0, 0).is_zero()
        || !bde.rc.coeff(0, 0).is_zero();
    if nonzero_const {
        return Err(BdeError::BadParameter(
            "blow-up analysis requires an umbilic at the origin",
        ));
    }
    let p11 = bde.p.derivative_coeff(1, 0);
    let p02 = bde.p.derivative_coeff(0, 1);
    let q_x = bde.q.derivative_coeff(1, 0); // p20 - q11
    let q_y = bde.q.derivative_coeff(0, 1); // p11 - q02
    let rc_y = bde.rc.derivative_coeff(0, 1); // -q11
    if p11.is_zero() || !p02.is_zero() || !q_x.is_zero() || !rc_y.is_zero() {
        return Err(BdeError::BadParameter(
            "blow-up analysis requires the normalized 2-jet (p20 = p02 = q11 = 0, p11 != 0)",
        ));
    }
    let m = &q_y / &p11 - Rational::from_integer(1.into());
    let q20 = -bde.rc.derivative_coeff(1, 0);
    Ok(BdeJet { m, q20 })
}

/// Blow the BDE up through a chart, factor out the exceptional divisor,
/// and type the singular points of the first-order field on the
/// exceptional line.
///
/// For the u-charts the factored field is `X = (Qr, -Rr)`; its singular
/// points are `(0, v0)` with `Rr(0, v0) = 0`. For H1 the roles of the
/// coefficients swap: `X = (Pr, -Qr)` with singular points `(u0, 0)`.
pub fn blow_up_analysis(
    bde: &PrincipalBde,
    chart: BlowUpChart,
) -> Result<Vec<BlowUpPoint>, BdeError> {
    let jet = bde_jet(bde)?;
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let m_ok = match chart {
        BlowUpChart::H => jet.m == one,
        BlowUpChart::H1 => jet.m == one || jet.m == two,
        BlowUpChart::Hp | BlowUpChart::Hn => jet.m == two && jet.q20.is_zero(),
    };
    if !m_ok {
        return Err(BdeError::ChartCaseMismatch {
            chart,
            detail: format!(
                "m = {} (chart H expects m = 1; Hp/Hn expect m = 2 with q20 = 0; H1 accepts both)",
                jet.m
            ),
        });
    }
    let need = match chart {
        BlowUpChart::H | BlowUpChart::H1 => 3,
        BlowUpChart::Hp | BlowUpChart::Hn => 4,
    };
    if bde.cap() < need {
        return Err(BdeError::InsufficientOrder {
            cap: bde.cap() + 1,
            need: need + 1,
        });
    }

    // Work at a cap wide enough to hold the u^6..u^7 structure of the
    // cuspidal charts; the rows used below involve only BDE degrees <= 4,
    // so zero-padding beyond the germ cap is exact for them.
    let work_cap = (2 * need + 2).max(bde.cap());
    let (px, py) = chart.map(work_cap);
    let (pv, quv, ru) = pull_back(bde, &px, &py)?;
    let axis_x = chart.divisor_is_u();
    let vals: Vec<usize> = [&pv, &quv, &ru]
        .iter()
        .filter_map(|s| valuation(s, axis_x))
        .collect();
    if vals.is_empty() {
        return Err(BdeError::DegenerateField);
    }
    let strip = *vals.iter().min().unwrap();
    let pv = shift_down(&pv, strip, axis_x).expect("common divisor power");
    let quv = shift_down(&quv, strip, axis_x).expect("common divisor power");
    let ru = shift_down(&ru, strip, axis_x).expect("common divisor power");

    // Factored first-order field and its singular points on the divisor.
    let (comp_a, comp_b) = if axis_x {
        (quv, ru) // X = (Q~, -R~), roots of R~(0, v)
    } else {
        (pv, quv) // X = (P~, -Q~), roots of P~(u, 0)
    };
    let line_poly: Vec<f64> = (0..=comp_b.cap().min(6))
        .map(|i| {
            let c = if axis_x {
                comp_b.coeff(0, i)
            } else {
                comp_b.coeff(i, 0)
            };
            to_f64(&c)
        })
        .collect();
    let roots = if axis_x {
        real_roots(&line_poly)
    } else {
        // H1: roots of P~(u, 0); P~ sits in comp_a
        let pa: Vec<f64> = (0..=comp_a.cap().min(6))
            .map(|i| to_f64(&comp_a.coeff(i, 0)))
            .collect();
        real_roots(&pa)
    };

    let a_u = comp_a.diff(1, 0);
    let a_v = comp_a.diff(0, 1);
    let b_u = comp_b.diff(1, 0);
    let b_v = comp_b.diff(0, 1);
    let mut out = Vec::new();
    for r in roots {
        let (pu, pvv) = if axis_x { (0.0, r) } else { (r, 0.0) };
        // X = (A, -B): DX = [[A_u, A_v], [-B_u, -B_v]]
        let j11 = a_u.eval_f64(pu, pvv);
        let j12 = a_v.eval_f64(pu, pvv);
        let j21 = -b_u.eval_f64(pu, pvv);
        let j22 = -b_v.eval_f64(pu, pvv);
        let det = j11 * j22 - j12 * j21;
        let trace = j11 + j22;
        let scale = j11.abs().max(j12.abs()).max(j21.abs()).max(j22.abs());
        let tol = 1e-9 * (1.0 + scale * scale);
        let kind = if det < -tol {
            SingularPointKind::Saddle
        } else if det > tol {
            if trace * trace >= 4.0 * det {
                SingularPointKind::Node
            } else {
                SingularPointKind::Focus
            }
        } else {
            SingularPointKind::Degenerate
        };
        out.push(BlowUpPoint {
            v0: r,
            jacobian_det: det,
            trace,
            kind,
        });
    }
    Ok(out)
}

// --- configuration integration ---------------------------------------------

/// A traced principal line with its field-branch tag (1 or 2).
#[derive(Debug, Clone, PartialEq)]
pub struct FlowPolyline {
    pub branch: u8,
    pub points: Vec<[f64; 2]>,
}

/// Figure data for the principal-line configuration near the umbilic.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowFigure {
    pub window: f64,
    pub step: f64,
    pub polylines: Vec<FlowPolyline>,
    /// Chained zero-level segments of delta (may be empty, e.g. for an
    /// isolated Morse point with definite 2-jet).
    pub discriminant: Vec<Vec<[f64; 2]>>,
    pub umbilic: [f64; 2],
    /// A trajectory hit the step-count limit: the window is under-resolved
    /// at this step size.
    pub under_resolved: bool,
}

/// Canonical representative of a direction mod pi: upper half plane,
/// positive x on the boundary.
fn canonical(d: [f64; 2]) -> [f64; 2] {
    if d[1] < 0.0 || (d[1] == 0.0 && d[0] < 0.0) {
        [-d[0], -d[1]]
    } else {
        d
    }
}

/// Integrate both principal direction fields from a deterministic seed grid
/// on the window boundary plus a ring around the umbilic.
///
/// Trajectories stop at the window edge, at the step-count limit, or when
/// `delta` falls under `step^2` (the slope pair merges at rate
/// `sqrt(delta)`, so this keeps the angular continuation well defined).
pub fn integrate_configuration(
    bde: &PrincipalBde,
    window: f64,
    step: f64,
    seeds: usize,
) -> Result<FlowFigure, BdeError> {
    if !(window > 0.0) {
        return Err(BdeError::BadParameter("window must be positive"));
    }
    if !(step > 0.0) {
        return Err(BdeError::BadParameter("step must be positive"));
    }
    if seeds == 0 {
        return Err(BdeError::BadParameter("need at least one seed per side"));
    }
    if bde.is_zero() {
        return Err(BdeError::DegenerateField);
    }
    let num = bde.numeric();
    let tol = step * step;
    let max_steps = (8.0 * window / step).ceil() as usize + 16;

    let mut seed_points: Vec<[f64; 2]> = Vec::new();
    for i in 0..seeds {
        let t = -window + 2.0 * window * (i as f64 + 0.5) / seeds as f64;
        seed_points.push([t, -window]);
        seed_points.push([t, window]);
        seed_points.push([-window, t]);
        seed_points.push([window, t]);
    }
    let ring = window * 0.15;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for d in [
        [1.0, 0.0],
        [s, s],
        [0.0, 1.0],
        [-s, s],
        [-1.0, 0.0],
        [-s, -s],
        [0.0, -1.0],
        [s, -s],
    ] {
        seed_points.push([ring * d[0], ring * d[1]]);
    }

    let inside = |p: [f64; 2]| p[0].abs() <= window && p[1].abs() <= window;
    // direction at a point, aligned with `prev`
    let dir_at = |p: [f64; 2], prev: [f64; 2]| -> Option<[f64; 2]> {
        match num.directions(p, tol) {
            SlopePair::Degenerate => None,
            SlopePair::Two(d1, d2) => {
                let dot1 = d1[0] * prev[0] + d1[1] * prev[1];
                let dot2 = d2[0] * prev[0] + d2[1] * prev[1];
                let d = if dot1.abs() >= dot2.abs() { d1 } else { d2 };
                let dot = d[0] * prev[0] + d[1] * prev[1];
                Some(if dot < 0.0 { [-d[0], -d[1]] } else { d })
            }
        }
    };

    let mut under_resolved = false;
    let mut trace = |start: [f64; 2], dir0: [f64; 2]| -> Vec<[f64; 2]> {
        let mut pts = vec![start];
        let mut p = start;
        let mut prev = dir0;
        for i in 0..=max_steps {
            if i == max_steps {
                under_resolved = true;
                break;
            }
            let Some(k1) = dir_at(p, prev) else { break };
            let h = step;
            let mid1 = [p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]];
            let Some(k2) = dir_at(mid1, k1) else { break };
            let mid2 = [p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]];
            let Some(k3) = dir_at(mid2, k2) else { break };
            let end = [p[0] + h * k3[0], p[1] + h * k3[1]];
            let Some(k4) = dir_at(end, k3) else { break };
            let next = [
                p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ];
            if !inside(next) {
                break;
            }
            pts.push(next);
            prev = [next[0] - p[0], next[1] - p[1]];
            let n = (prev[0] * prev[0] + prev[1] * prev[1]).sqrt();
            if n == 0.0 {
                break;
            }
            prev = [prev[0] / n, prev[1] / n];
            p = next;
            if num.delta(p[0], p[1]) < tol {
                break;
            }
        }
        pts
    };

    let mut polylines = Vec::new();
    for seed in seed_points {
        let SlopePair::Two(d1, d2) = num.directions(seed, tol) else {
            continue;
        };
        let mut dirs = [canonical(d1), canonical(d2)];
        // angle-ascending order in [0, pi): descending x for unit vectors
        if dirs[0][0] < dirs[1][0] {
            dirs.swap(0, 1);
        }
        for (branch, d) in dirs.into_iter().enumerate() {
            let fwd = trace(seed, d);
            let bwd = trace(seed, [-d[0], -d[1]]);
            let mut points: Vec<[f64; 2]> = bwd.into_iter().skip(1).rev().collect();
            points.extend(fwd);
            if points.len() >= 2 {
                polylines.push(FlowPolyline {
                    branch: branch as u8 + 1,
                    points,
                });
            }
        }
    }

    let discriminant = marching_squares_zero(&num, window);

    Ok(FlowFigure {
        window,
        step,
        polylines,
        discriminant,
        umbilic: [0.0, 0.0],
        under_resolved,
    })
}

/// Zero-level curve of delta on a fixed 128x128 cell grid, chained into
/// polylines through shared cell edges.
fn marching_squares_zero(num: &BdeNumeric, window: f64) -> Vec<Vec<[f64; 2]>> {
    const N: usize = 128;
    let coord = |i: usize| -window + 2.0 * window * i as f64 / N as f64;
    let mut values = vec![0.0f64; (N + 1) * (N + 1)];
    for iy in 0..=N {
        for ix in 0..=N {
            values[iy * (N + 1) + ix] = num.delta(coord(ix), coord(iy));
        }
    }
    // an edge id: horizontal edges (ix, iy, 0), vertical edges (ix, iy, 1)
    type EdgeId = (usize, usize, u8);
    let interp = |a: f64, b: f64| -> f64 {
        let d = a - b;
        if d.abs() < 1e-300 {
            0.5
        } else {
            (a / d).clamp(0.0, 1.0)
        }
    };
    let edge_point = |id: EdgeId| -> [f64; 2] {
        let (ix, iy, axis) = id;
        let a = values[iy * (N + 1) + ix];
        if axis == 0 {
            let b = values[iy * (N + 1) + ix + 1];
            let t = interp(a, b);
            [coord(ix) + t * (coord(ix + 1) - coord(ix)), coord(iy)]
        } else {
            let b = values[(iy + 1) * (N + 1) + ix];
            let t = interp(a, b);
            [coord(ix), coord(iy) + t * (coord(iy + 1) - coord(iy))]
        }
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for iy in 0..N {
        for ix in 0..N {
            // zeros count as positive so an isolated zero node (the
            // umbilic itself on the grid) does not fabricate a curve
            let v00 = values[iy * (N + 1) + ix] >= 0.0;
            let v10 = values[iy * (N + 1) + ix + 1] >= 0.0;
            let v01 = values[(iy + 1) * (N + 1) + ix] >= 0.0;
            let v11 = values[(iy + 1) * (N + 1) + ix + 1] >= 0.0;
            let bottom: EdgeId = (ix, iy, 0);
            let top: EdgeId = (ix, iy + 1, 0);
            let left: EdgeId = (ix, iy, 1);
            let right: EdgeId = (ix + 1, iy, 1);
            let mut crossing: Vec<EdgeId> = Vec::new();
            if v00 != v10 {
                crossing.push(bottom);
            }
            if v01 != v11 {
                crossing.push(top);
            }
            if v00 != v01 {
                crossing.push(left);
            }
            if v10 != v11 {
                crossing.push(right);
            }
            match crossing.len() {
                2 => segments.push((crossing[0], crossing[1])),
                4 => {
                    // saddle cell: pair bottom-left and top-right
                    segments.push((bottom, left));
                    segments.push((top, right));
                }
                _ => {}
            }
        }
    }

    // chain segments by shared edges
    use std::collections::HashMap;
    let mut adj: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        adj.entry(*a).or_default().push(i);
        adj.entry(*b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut chains = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a0, b0) = segments[start];
        let mut chain = vec![a0, b0];
        // extend forward from the tail
        loop {
            let tail = *chain.last().unwrap();
            let Some(next) = adj
                .get(&tail)
                .and_then(|v| v.iter().find(|&&i| !used[i]))
                .copied()
            else {
                break;
            };
            used[next] = true;
            let (a, b) = segments[next];
            chain.push(if a == tail { b } else { a });
        }
        // extend backward from the head
        loop {
            let head = chain[0];
            let Some(next) = adj
                .get(&head)
                .and_then(|v| v.iter().find(|&&i| !used[i]))
                .copied()
            else {
                break;
            };
            used[next] = true;
            let (a, b) = segments[next];
            chain.insert(0, if a == head { b } else { a });
        }
        chains.push(chain.into_iter().map(edge_point).collect());
    }
    chains
}

// --- figure export ----------------------------------------------------------

impl FlowFigure {
    /// CSV rows `branch,traj_id,x,y`; discriminant rows carry the branch
    /// tag `disc` and trajectory id 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("branch,traj_id,x,y\n");
        for (id, pl) in self.polylines.iter().enumerate() {
            for p in &pl.points {
                out.push_str(&format!("{},{},{:.6},{:.6}\n", pl.branch, id, p[0], p[1]));
            }
        }
        for seg in &self.discriminant {
            for p in seg {
                out.push_str(&format!("disc,0,{:.6},{:.6}\n", p[0], p[1]));
            }
        }
        out
    }

    /// Standalone SVG: one path per polyline, branch 1 solid, branch 2
    /// dashed, the discriminant in a distinct stroke, viewBox equal to the
    /// window. Deterministic up to the version comment line.
    pub fn to_svg(&self) -> String {
        let w = self.window;
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
            -w,
            -w,
            2.0 * w,
            2.0 * w
        ));
        out.push_str(&format!("<!-- wcong plot v{} -->\n", env!("CARGO_PKG_VERSION")));
        out.push_str("<g transform=\"scale(1,-1)\">\n");
        let path_d = |pts: &[[f64; 2]]| -> String {
            let mut d = String::new();
            for (i, p) in pts.iter().enumerate() {
                d.push_str(if i == 0 { "M" } else { " L" });
                d.push_str(&format!("{:.6} {:.6}", p[0], p[1]));
            }
            d
        };
        let lw = w / 150.0;
        for pl in &self.polylines {
            let style = if pl.branch == 1 {
                format!("fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"{lw:.6}\"")
            } else {
                format!(
                    "fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"{lw:.6}\" stroke-dasharray=\"{:.6} {:.6}\"",
                    w / 60.0,
                    w / 120.0
                )
            };
            out.push_str(&format!("<path d=\"{}\" {}/>\n", path_d(&pl.points), style));
        }
        for seg in &self.discriminant {
            out.push_str(&format!(
                "<path d=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"{:.6}\"/>\n",
                path_d(seg),
                w / 100.0
            ));
        }
        out.push_str(&format!(
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"#d62728\"/>\n",
            self.umbilic[0],
            self.umbilic[1],
            w / 100.0
        ));
        out.push_str("</g>\n</svg>\n");
        out
    }
}
