use lelongkit::lelong::{lelong_degree_y, moving_invariance};
use lelongkit::monomial::ExponentVector;
use lelongkit::newton::{branch_set, polygon_at_infinity};
use lelongkit::noether::{fiber_points, growth_constant};
use lelongkit::poly::{var_names, MultiPoly};
use lelongkit::resultant::{discriminant_y, resultant_bivariate};
use lelongkit::roots;
use lelongkit::scalar::{int, rat, to_f64, Gaussian, Rational};
use lelongkit::univariate::UniPoly;
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

/// `y^deg + Σ c x^j y^k + constant` with `j + k ≤ deg`, `k < deg`.
fn monic_curve(deg: u32, terms: &[(u32, u32, i64)], constant: i64) -> MultiPoly {
    let vars = var_names(&["x", "y"]);
    let mut t = vec![(ExponentVector::new(vec![0, deg]), int(1)), (ExponentVector::new(vec![0, 0]), int(constant))];
    for &(j, k, c) in terms {
        if j + k <= deg && k < deg && j + k > 0 {
            t.push((ExponentVector::new(vec![j, k]), int(c)));
        }
    }
    MultiPoly::from_terms(&vars, t)
}

fn arb_curve(max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    (1..=max_deg, prop::collection::vec((0u32..=max_deg, 0u32..max_deg, -4i64..=4), 0..7), 1i64..4)
        .prop_map(|(d, t, c)| monic_curve(d, &t, c))
}

/// Monic in `y` of the given degree, with arbitrary lower `y`-coefficients
/// and `y ∤ P`.
fn arb_monic_any(max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    let base = (0u32..5, prop_oneof![-5i64..=-1, 1i64..=5]);
    (1..=max_deg, base, prop::collection::vec((0u32..5, 0u32..5, -5i64..=5), 0..8)).prop_map(|(d, (j0, c0), terms)| {
        let vars = var_names(&["x", "y"]);
        let mut t = vec![(ExponentVector::new(vec![0, d]), int(1)), (ExponentVector::new(vec![j0, 0]), int(c0))];
        t.extend(terms.into_iter().filter(|&(j, k, _)| k < d && (j, k) != (j0, 0)).map(|(j, k, c)| (ExponentVector::new(vec![j, k]), int(c))));
        MultiPoly::from_terms(&vars, t)
    })
}

fn fiber_over(p: &MultiPoly, x0: &Rational) -> UniPoly {
    p.partial_eval(0, x0).to_univariate(1).unwrap()
}

fn fiber_coeffs(p: &MultiPoly, x: Complex64) -> Vec<Complex64> {
    p.coefficients_in(1).iter().map(|c| c.eval_complex(&[x, Complex64::new(0.0, 0.0)])).collect()
}

/// `|q(x, y)|` over the sum of the moduli of its terms.
fn relative_value(q: &MultiPoly, x: Complex64, y: Complex64) -> f64 {
    let scale: f64 = q
        .terms()
        .map(|(e, c)| to_f64(c).abs() * x.norm().powi(e.get(0) as i32) * y.norm().powi(e.get(1) as i32))
        .sum();
    q.eval_complex(&[x, y]).norm() / scale.max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn polygon_widths_sum_to_y_degree(p in arb_monic_any(6)) {
        let (_, poly) = polygon_at_infinity(&p).unwrap();
        let total: u32 = poly.lower_segments.iter().map(|s| s.lattice_width).sum();
        prop_assert_eq!(total, p.degree_in(1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn growth_bound_on_fiber_points(curve in arb_curve(4), seed in any::<u64>()) {
        let a = to_f64(&growth_constant(std::slice::from_ref(&curve), 1).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        let mut draws = 0;
        while checked < 200 {
            draws += 1;
            prop_assert!(draws < 10_000, "no regular fiber found");
            let q = rng.gen_range(1i64..=16);
            let x0 = Gaussian::new(rat(rng.gen_range(-1000..=1000), q), rat(rng.gen_range(-1000..=1000), q));
            let Ok(ys) = fiber_points(&curve, &x0) else { continue };
            let xn = Complex64::new(to_f64(&x0.re), to_f64(&x0.im)).norm();
            for y in ys {
                let bound = a * (1.0 + xn);
                prop_assert!(y.norm() <= bound + 1e-9 * bound, "|y| = {} > A(1+|x|) = {}", y.norm(), bound);
                checked += 1;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn lelong_degree_of_y_survives_moving(curve in arb_curve(4), ts in prop::collection::vec((-9i64..=9, 1i64..=7), 5)) {
        let ts: Vec<Rational> = ts.into_iter().map(|(a, b)| rat(a, b)).collect();
        let r = moving_invariance(&MultiPoly::var(curve.vars(), 1), &curve, &ts).unwrap();
        prop_assert!(r.all_equal, "{:?}", r.samples);
        prop_assert_eq!(r.base.as_rational(), lelong_degree_y(&curve).unwrap().closed_form);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn resultant_vanishes_iff_common_fiber_root(p in arb_monic_any(3), q in arb_monic_any(2), x0s in prop::collection::vec(-6i64..=6, 4)) {
        let res = resultant_bivariate(&p, &q, 1).unwrap();
        for x0 in x0s {
            let x0 = int(x0);
            let common = !fiber_over(&p, &x0).gcd(&fiber_over(&q, &x0)).is_constant();
            prop_assert_eq!(res.eval(&x0).is_zero(), common);
        }
        if res.is_zero() {
            return Ok(());
        }
        let sq = res.squarefree();
        if sq.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        // common roots over branch points of p are multiple and lose half the digits
        prop_assume!(sq.gcd(&discriminant_y(&p).unwrap()).is_constant());
        for x in roots::roots(&sq).unwrap() {
            let ys = roots::aberth(&fiber_coeffs(&p, x)).unwrap();
            let best = ys.iter().map(|&y| relative_value(&q, x, y)).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-8, "residual {} at x = {}", best, x);
        }
    }
}

#[test]
fn branch_totals_match_on_examples() {
    let vars = var_names(&["x", "y"]);
    for s in ["y^4+x*y^3+x*y^2+x^2*y+x^2+1", "y^3-x^2*y+x+1", "y^2-x"] {
        let p = lelongkit::parse::parse_poly(s, &vars).unwrap();
        assert_eq!(branch_set(&p).unwrap().total, p.degree_in(1).unwrap());
    }
}
