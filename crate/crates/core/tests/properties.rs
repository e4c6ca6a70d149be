use std::cmp::Ordering;

use proptest::prelude::*;

use kstab_core::ratpoly::quadrature::gauss_kronrod;
use kstab_core::ratpoly::{
    exp_moment, find_root_decreasing, int, rat, to_f64, Interval, PiecewisePoly, Poly, Rational,
};
use kstab_core::series::{builtin_series, BoundaryDivisor};
use kstab_core::verdict::{li_p1, Level};
use kstab_core::weights::soliton_phi;

fn rational(range: i64, denom: i64) -> impl Strategy<Value = Rational> {
    (-range * denom..=range * denom, 1..=denom).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(5, 7), 1..=max_degree + 1).prop_map(Poly::new)
}

fn piecewise() -> impl Strategy<Value = PiecewisePoly> {
    (
        rational(3, 4),
        prop::collection::vec((1i64..=8, poly(4)), 1..=4),
    )
        .prop_map(|(start, parts)| {
            let mut lo = start;
            let segments = parts
                .into_iter()
                .map(|(w, p)| {
                    let hi = &lo + rat(w, 4);
                    let seg = (lo.clone(), hi.clone(), p);
                    lo = hi;
                    seg
                })
                .collect();
            PiecewisePoly::from_segments(segments).unwrap()
        })
}

fn boundary() -> impl Strategy<Value = BoundaryDivisor> {
    prop::collection::vec((0i64..12, 2i64..=12), 0..=5)
        .prop_map(|cs| {
            BoundaryDivisor::new(
                cs.into_iter()
                    .enumerate()
                    .map(|(i, (n, d))| (format!("q{i}"), rat(n % d, d))),
            )
        })
        .prop_filter("log Fano", |b| b.total() < int(2))
}

fn quad(f: &PiecewisePoly, weight: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut magnitude = 0.0;
    for (a, b, p) in f.segments() {
        let p = p.to_float();
        let (a, b) = (to_f64(a), to_f64(b));
        value += gauss_kronrod(|x| p.eval(x) * weight(x), a, b, 0.0, 1e-13).value;
        magnitude += gauss_kronrod(|x| (p.eval(x) * weight(x)).abs(), a, b, 0.0, 1e-8).value;
    }
    (value, magnitude)
}

proptest! {
    #[test]
    fn exact_moments_match_quadrature(f in piecewise(), k in 0usize..=3) {
        let exact = to_f64(&f.moment(k, &f.domain()).unwrap());
        let (approx, magnitude) = quad(&f, |x| x.powi(k as i32));
        prop_assert!((exact - approx).abs() <= 1e-10 * magnitude.max(1e-300));
    }

    #[test]
    fn exp_moments_match_quadrature(f in piecewise(), eta in -4.0f64..4.0) {
        let closed = exp_moment(&f, eta, &f.domain()).unwrap();
        let (approx, magnitude) = quad(&f, |x| (-eta * x).exp());
        prop_assert!((closed - approx).abs() <= 1e-10 * magnitude.max(1e-300));
    }

    #[test]
    fn integration_is_linear(f in piecewise(), a in rational(4, 5), b in rational(4, 5)) {
        let g = f.map_pieces(|p| p.derivative());
        let dom = f.domain();
        let combo = f.scale(&a).add(&g.scale(&b)).unwrap();
        prop_assert_eq!(
            combo.integrate(&dom).unwrap(),
            &a * f.integrate(&dom).unwrap() + &b * g.integrate(&dom).unwrap()
        );
    }

    #[test]
    fn subintervals_add_up(f in piecewise(), t in 0i64..=16) {
        let dom = f.domain();
        let mid = dom.lo() + (dom.hi() - dom.lo()) * rat(t, 16);
        let left = Interval::new(dom.lo().clone(), mid.clone()).unwrap();
        let right = Interval::new(mid, dom.hi().clone()).unwrap();
        prop_assert_eq!(
            f.integrate(&dom).unwrap(),
            f.integrate(&left).unwrap() + f.integrate(&right).unwrap()
        );
    }

    #[test]
    fn root_stays_in_bracket(r in -3.0f64..3.0, s in 0.01f64..50.0, cube in any::<bool>()) {
        let phi = move |x: f64| if cube { -s * (x - r).powi(3) } else { s * (r - x) };
        let out = find_root_decreasing(phi, (-4.0, 4.0), 1e-12).unwrap();
        prop_assert!((-4.0..=4.0).contains(&out.x));
        prop_assert!(out.value.abs() <= 1e-12 || (out.x - r).abs() <= 1e-6);
    }

    #[test]
    fn phi_is_decreasing(idx in 0usize..4, eta in -2.0f64..2.0, step in 1e-3f64..0.5) {
        let name = ["MM2.28", "MM3.14", "MM2.23a0", "MM2.23b"][idx];
        let phi = soliton_phi(&builtin_series(name).unwrap());
        prop_assert!(phi(eta).unwrap() > phi(eta + step).unwrap());
    }

    #[test]
    fn li_ignores_order_and_labels(b in boundary(), seed in any::<u64>()) {
        let mut other = b.clone();
        let n = other.points.len();
        if n > 1 {
            other.points.rotate_left((seed as usize) % n);
        }
        for (i, p) in other.points.iter_mut().enumerate() {
            p.label = format!("relabeled-{i}");
        }
        prop_assert_eq!(li_p1(&b).unwrap().level, li_p1(&other).unwrap().level);
    }

    #[test]
    fn raising_the_heaviest_point_never_helps(b in boundary(), bump in 1i64..6) {
        prop_assume!(!b.points.is_empty());
        let before = li_p1(&b).unwrap().level;
        let mut raised = b.clone();
        let heaviest = raised
            .points
            .iter_mut()
            .max_by(|x, y| x.coeff.cmp(&y.coeff))
            .unwrap();
        heaviest.coeff = &heaviest.coeff + (int(1) - &heaviest.coeff) * rat(bump, 12);
        prop_assume!(raised.total() < int(2));
        let after = li_p1(&raised).unwrap().level;
        prop_assert_ne!(after.cmp_strength(before), Ordering::Greater);
    }

    #[test]
    fn li_agrees_with_delta(b in boundary()) {
        prop_assume!(!b.points.is_empty());
        let level = li_p1(&b).unwrap().level;
        let gap = b.points.iter().map(|p| int(1) - &p.coeff).min().unwrap();
        let delta = int(2) * gap / (int(2) - b.total());
        prop_assert_eq!(level == Level::KStable, delta > int(1));
        prop_assert_eq!(level.is_semistable(), delta >= int(1));
    }
}
