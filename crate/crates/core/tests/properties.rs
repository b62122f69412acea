//! Property suites: exact ring axioms for the series kernel and the exact
//! geometric identities of the congruence layer, on randomized inputs.

use num::traits::Zero;
use proptest::prelude::*;

use wcong_core::congruence::{
    discriminant, hw_identity_residual, normal_congruence_from_graph, shape_coefficients,
    w_series, CongruenceGerm, GraphGerm,
};
use wcong_core::rational::{rat_int, Rational};
use wcong_core::series::{invert_map, Series2};

fn series_strategy(cap: usize, max_abs: i64) -> impl Strategy<Value = Series2> {
    let len = (cap + 1) * (cap + 2) / 2;
    proptest::collection::vec(-max_abs..=max_abs, len).prop_map(move |cs| {
        let mut s = Series2::zero(cap);
        let mut i = 0;
        for d in 0..=cap {
            for k in 0..=d {
                s.set_coeff(d - k, k, rat_int(cs[i]));
                i += 1;
            }
        }
        s
    })
}

/// Series with zero constant term (valid substitution component).
fn pointed_series(cap: usize, max_abs: i64) -> impl Strategy<Value = Series2> {
    series_strategy(cap, max_abs).prop_map(|mut s| {
        s.set_coeff(0, 0, Rational::from_integer(0.into()));
        s
    })
}

fn germ_strategy(cap: usize, max_abs: i64) -> impl Strategy<Value = CongruenceGerm> {
    (pointed_series(cap, max_abs), pointed_series(cap, max_abs))
        .prop_map(|(a, b)| CongruenceGerm::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(
        f in series_strategy(6, 9),
        g in series_strategy(6, 9),
        h in series_strategy(6, 9),
    ) {
        // associativity and distributivity, exactly
        let fg_h = f.mul(&g).unwrap().mul(&h).unwrap();
        let f_gh = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(fg_h, f_gh);
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let fg = f.mul(&g).unwrap();
        let gf = g.mul(&f).unwrap();
        prop_assert_eq!(fg, gf);
    }

    #[test]
    fn division_round_trip(
        f in series_strategy(5, 9),
        g in series_strategy(5, 9),
        unit in 1i64..9,
    ) {
        let mut g = g;
        g.set_coeff(0, 0, rat_int(unit)); // force a unit
        let q = f.div(&g).unwrap();
        prop_assert_eq!(q.mul(&g).unwrap(), f);
    }

    #[test]
    fn substitution_chain_rule(
        f in series_strategy(5, 6),
        px in pointed_series(5, 4),
        py in pointed_series(5, 4),
    ) {
        // d/du f(px, py) = f_x(px, py) (px)_u + f_y(px, py) (py)_u at cap-1
        let lhs = f.subst(&px, &py).unwrap().diff(1, 0);
        let t = f.cap() - 1;
        let fx = f.diff(1, 0).subst(&px.truncate(t), &py.truncate(t)).unwrap();
        let fy = f.diff(0, 1).subst(&px.truncate(t), &py.truncate(t)).unwrap();
        let rhs = fx.mul(&px.diff(1, 0)).unwrap()
            .add(&fy.mul(&py.diff(1, 0)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inversion_round_trip(
        nx in pointed_series(4, 4),
        ny in pointed_series(4, 4),
    ) {
        // F = id + (nonlinear part of nx, ny): strip linear terms
        let strip = |mut s: Series2| {
            s.set_coeff(1, 0, rat_int(0));
            s.set_coeff(0, 1, rat_int(0));
            s
        };
        let cap = nx.cap();
        let fx = Series2::var_x(cap).add(&strip(nx)).unwrap();
        let fy = Series2::var_y(cap).add(&strip(ny)).unwrap();
        let (gx, gy) = invert_map(&fx, &fy).unwrap();
        prop_assert_eq!(fx.subst(&gx, &gy).unwrap(), Series2::var_x(cap));
        prop_assert_eq!(fy.subst(&gx, &gy).unwrap(), Series2::var_y(cap));
        // and the other composition order
        prop_assert_eq!(gx.subst(&fx, &fy).unwrap(), Series2::var_x(cap));
        prop_assert_eq!(gy.subst(&fx, &fy).unwrap(), Series2::var_y(cap));
    }

    #[test]
    fn hw_identity_random_germs(germ in germ_strategy(6, 5)) {
        prop_assert!(hw_identity_residual(&germ).unwrap().is_zero());
    }

    #[test]
    fn w_factorization_b_c_zero(
        ax in proptest::collection::vec(-6i64..=6, 4),
        dy in proptest::collection::vec(-6i64..=6, 4),
    ) {
        // xi1 = xi1(x), xi2 = xi2(y) gives b = c = 0 and
        // W = (d - a) a_x d_y exactly.
        let cap = 6;
        let mut xi1 = Series2::zero(cap);
        let mut xi2 = Series2::zero(cap);
        for (i, v) in ax.iter().enumerate() {
            xi1.set_coeff(i + 1, 0, rat_int(*v));
        }
        for (i, v) in dy.iter().enumerate() {
            xi2.set_coeff(0, i + 1, rat_int(*v));
        }
        let germ = CongruenceGerm::new(xi1, xi2).unwrap();
        let w = w_series(&germ).unwrap();
        let t = w.cap();
        let s = shape_coefficients(&germ);
        let axs = germ.xi1().diff(2, 0).negate().truncate(t);
        let dys = germ.xi2().diff(0, 2).negate().truncate(t);
        let d_minus_a = s.d.truncate(t).sub(&s.a.truncate(t)).unwrap();
        let expect = d_minus_a.mul(&axs).unwrap().mul(&dys).unwrap();
        prop_assert_eq!(w, expect);
    }

    #[test]
    fn bde_discriminant_is_delta(germ in germ_strategy(5, 6)) {
        let p = germ.xi1().diff(0, 1);
        let q = germ.xi1().diff(1, 0).sub(&germ.xi2().diff(0, 1)).unwrap();
        let rc = germ.xi2().diff(1, 0).negate();
        let four = Series2::constant(p.cap(), rat_int(4));
        let disc = q.mul(&q).unwrap()
            .sub(&four.mul(&p.mul(&rc).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(disc, discriminant(&germ));
    }

    #[test]
    fn normal_congruence_w_condition(
        g30 in -6i64..=6, g21 in -6i64..=6, g12 in -6i64..=6, g03 in -6i64..=6,
        g20 in 1i64..=6, gap in 1i64..=6,
        force_relation in proptest::bool::ANY,
    ) {
        // W(0,0) = 0 iff g30 g03 - g21 g12 = 0 for a cubic graph with
        // g20 != g02; half the cases are forced onto the relation locus.
        let g02 = g20 + gap;
        let (g30, g03, g21, g12) = if force_relation {
            // pick a point on the locus: g30 g03 = g21 g12
            (g21 * g12, 1, g21, g12)
        } else {
            (g30, g03, g21, g12)
        };
        let mut g = Series2::zero(5);
        g.set_derivative_coeff(2, 0, rat_int(g20));
        g.set_derivative_coeff(0, 2, rat_int(g02));
        g.set_derivative_coeff(3, 0, rat_int(g30));
        g.set_derivative_coeff(2, 1, rat_int(g21));
        g.set_derivative_coeff(1, 2, rat_int(g12));
        g.set_derivative_coeff(0, 3, rat_int(g03));
        let germ = normal_congruence_from_graph(&GraphGerm::new(g).unwrap()).unwrap();
        let w0 = w_series(&germ).unwrap().coeff(0, 0);
        let relation = rat_int(g30) * rat_int(g03) - rat_int(g21) * rat_int(g12);
        prop_assert_eq!(w0.is_zero(), relation.is_zero());
    }
}
