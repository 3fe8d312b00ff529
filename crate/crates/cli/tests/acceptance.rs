//! End-to-end acceptance checks. Runs without the test harness and prints one
//! line per criterion.

mod common;

use std::cmp::Ordering;
use std::process::Command;
use std::time::{Duration, Instant};

use lelongkit::bezout::{affine_bezout, count_solutions, projective_bezout};
use lelongkit::groebner::{buchberger_with_budget, divide};
use lelongkit::lelong::{classify_balayage, lelong_degree, lelong_degree_y, moving_invariance, BranchClass, Caveat, Exponent, LelongValue};
use lelongkit::monomial::{ExponentVector, MonomialOrder, OrderKind};
use lelongkit::newton::{branch_set, polygon_at_infinity};
use lelongkit::noether::{check_noether, find_noether, fiber_points, growth_constant, mass_check, FailureReason, SearchConfig};
use lelongkit::parse::parse_poly;
use lelongkit::poly::{var_names, MultiPoly};
use lelongkit::resultant::{discriminant_y, resultant_bivariate};
use lelongkit::roots;
use lelongkit::scalar::{int, rat, to_f64, Gaussian, Rational};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const EX62: &str = common::QUARTIC;

fn xy() -> Vec<String> {
    var_names(&["x", "y"])
}

fn p(s: &str) -> MultiPoly {
    parse_poly(s, &xy()).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact_value(v: &LelongValue) -> Option<Rational> {
    match v {
        LelongValue::Exact { value } => Some(value.clone()),
        _ => None,
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}"))?;
    Ok(format!("{out}; {took:.2?}"))
}

fn criterion_1() -> Check {
    timed(Duration::from_secs(1), || {
        let curve = p(EX62);
        let (pt, poly) = polygon_at_infinity(&curve).map_err(|e| e.to_string())?;
        let want = parse_poly("t^4+t^3+s*t^2+s*t+s^2+s^4", &var_names(&["s", "t"])).unwrap();
        ensure(pt == want, format!("P~ = {pt}"))?;
        ensure(poly.lower_segments.len() == 3, "segment count")?;
        let set = branch_set(&curve).map_err(|e| e.to_string())?;
        let gw: Vec<(Rational, u32)> = set.entries.iter().map(|e| (e.gamma.clone(), e.width)).collect();
        ensure(gw == vec![(int(0), 1), (rat(1, 2), 2), (int(1), 1)], format!("(gamma, width) = {gw:?}"))?;
        let mut found: Vec<Complex64> = Vec::new();
        for (_, r) in set.branches() {
            for _ in 0..r.multiplicity {
                found.push(r.value);
            }
        }
        let i = Complex64::new(0.0, 1.0);
        let mut want_roots = vec![Complex64::new(-1.0, 0.0), -i, i, Complex64::new(-1.0, 0.0)];
        roots::sort_roots(&mut found);
        roots::sort_roots(&mut want_roots);
        ensure(found.len() == 4 && found.iter().zip(&want_roots).all(|(a, b)| (a - b).norm() < 1e-12), format!("roots {found:?}"))?;
        let r = lelong_degree_y(&curve).map_err(|e| e.to_string())?;
        let half = rat(1, 2);
        ensure(exact_value(&r.value) == Some(half.clone()), "value not exactly 1/2")?;
        ensure(r.closed_form == Some(half.clone()), "closed form")?;
        ensure(r.branch_average == Some(half), "branch average")?;
        Ok("P~, 3 segments, (0,1),(1/2,2),(1,1), roots -1,±i,-1, deg_L(y) = 1/2 by d/deg and by branches".into())
    })
}

fn criterion_2() -> Check {
    let r = lelong_degree_y(&p("y^3-x^2*y+x+1")).map_err(|e| e.to_string())?;
    let mut e: Vec<Rational> = Vec::new();
    for b in &r.per_branch {
        match &b.growth_exponent_of_p {
            Exponent::Exact { value } => e.extend(std::iter::repeat(value.clone()).take(b.width as usize)),
            other => return Err(format!("inexact exponent {other:?}")),
        }
    }
    e.sort();
    ensure(e == vec![int(-1), int(1), int(1)], format!("exponents {e:?}"))?;
    let third = rat(1, 3);
    ensure(r.branch_average == Some(third.clone()) && r.closed_form == Some(third.clone()), "averages")?;
    ensure(exact_value(&r.value) == Some(third), "value")?;
    ensure(r.caveats.contains(&Caveat::NegativeBranchPresent), "missing negative_branch_present")?;
    Ok("exponents {1,1,-1}, average 1/3 = d/deg, negative_branch_present".into())
}

fn random_x_poly(rng: &mut ChaCha8Rng, deg: u32) -> String {
    let mut s = String::from("0");
    for j in 0..=deg {
        let mut c: i64 = rng.gen_range(-5..=5);
        if j == deg && c == 0 {
            c = if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        s.push_str(&format!(" + ({c})*x^{j}"));
    }
    s
}

fn criterion_3() -> Check {
    let curve = p("y^2-x");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_7);
    for n in 0..100 {
        let (d1, d2) = (rng.gen_range(0..=6u32), rng.gen_range(0..=6u32));
        let q = p(&format!("({}) + y*({})", random_x_poly(&mut rng, d1), random_x_poly(&mut rng, d2)));
        let want = std::cmp::max(int(d1 as i64), int(d2 as i64) + rat(1, 2));
        let r = lelong_degree(&q, &curve).map_err(|e| format!("case {n}: {e}"))?;
        ensure(exact_value(&r.value) == Some(want.clone()), format!("case {n}: {q} gave {}", r.value.display()))?;
        ensure(r.branch_average == Some(want.clone()), format!("case {n}: branch average {:?}", r.branch_average))?;
        ensure(r.norm_value == Some(want), format!("case {n}: norm"))?;
    }
    Ok("100 seeded (p1, p2): max{deg p1, deg p2 + 1/2} exactly, by value and branch average".into())
}

fn criterion_4() -> Check {
    let (curve, q) = (p("x^2-y^2-1"), p("x-y"));
    let r = lelong_degree(&q, &curve).map_err(|e| e.to_string())?;
    ensure(r.value.as_rational() == Some(int(0)), format!("value {}", r.value.display()))?;
    ensure(r.norm_value == Some(int(0)), "norm route")?;
    let bal = classify_balayage(&q, &curve).map_err(|e| e.to_string())?;
    ensure(!bal.safe, "verdict safe")?;
    let zero = bal.branches.iter().filter(|b| b.class == BranchClass::TendsToZero).count();
    ensure(zero == 1, format!("{zero} branches tend to zero"))?;
    Ok("deg_L(x-y) = 0, unsafe with one tends_to_zero branch".into())
}

fn criterion_5() -> Check {
    timed(Duration::from_secs(1), || {
        let (a, b) = (p(EX62), p("y-1"));
        let proj = projective_bezout(&a, &b).map_err(|e| e.to_string())?;
        ensure(proj.total == 4, "projective total")?;
        ensure(proj.infinity_points.len() == 1, "infinity points")?;
        ensure(proj.infinity_points[0].point == "[0:1:0]" && proj.infinity_points[0].multiplicity == Some(2), "[0:1:0]x2")?;
        let r = affine_bezout(&a, &b, &SearchConfig { seed: 1, ..Default::default() }).map_err(|e| e.to_string())?;
        let degrees = |i: usize| -> Vec<Option<Rational>> { r.routes[i].factors.iter().map(|f| exact_value(&f.degree)).collect() };
        ensure(degrees(0) == vec![Some(int(1)), Some(int(2))], format!("route V(p2) factors {:?}", degrees(0)))?;
        ensure(degrees(1) == vec![Some(int(4)), Some(rat(1, 2))], format!("route V(p1) factors {:?}", degrees(1)))?;
        for route in &r.routes {
            ensure(route.bound.as_ref().and_then(exact_value) == Some(int(2)), format!("route {} bound", route.curve))?;
        }
        ensure(r.oracle_count == Some(2), "oracle")?;
        ensure(r.consistency, "inconsistent")?;
        Ok("projective 4 with [0:1:0]x2, bounds 1·2 = 2 and 4·(1/2) = 2, oracle 2".into())
    })
}

fn criterion_6() -> Check {
    let z = var_names(&["z1", "z2"]);
    let g = parse_poly("z1*z2-1", &z).unwrap();
    let r = check_noether(std::slice::from_ref(&g), 1).map_err(|e| e.to_string())?;
    ensure(!r.verdict, "z1*z2-1 accepted as-is")?;
    let found = find_noether(std::slice::from_ref(&g), &SearchConfig { seed: 7, ..Default::default() }).map_err(|e| e.to_string())?;
    ensure(found.verdict, "no presentation found")?;
    let l = &found.linear_map;
    let b1b2 = &l[0][1] * &l[1][1];
    ensure(b1b2 != int(0), "b1*b2 = 0")?;
    let lead = found.g_list[0].coeff(&ExponentVector::new(vec![0, 2]));
    ensure(lead == int(1), "not monic after normalization")?;
    let cusp = parse_poly("z2^3-z1^2", &z).unwrap();
    let r = check_noether(std::slice::from_ref(&cusp), 1).map_err(|e| e.to_string())?;
    ensure(r.verdict, "z2^3-z1^2 rejected over z1")?;
    let swapped = parse_poly("z2^3-z1^2", &var_names(&["z2", "z1"])).unwrap();
    let r = check_noether(std::slice::from_ref(&swapped), 1).map_err(|e| e.to_string())?;
    ensure(!r.verdict && r.failure_reason == Some(FailureReason::DegreeConditionViolated), format!("swapped: {:?}", r.failure_reason))?;
    Ok(format!("z1z2-1 rejected, accepted after seeded map with b1b2 = {b1b2}; z2^3-z1^2 passes, swapped gives degree_condition_violated"))
}

fn criterion_7() -> Check {
    let r = mass_check(&p(EX62), 50, 11).map_err(|e| e.to_string())?;
    ensure(r.degree == 4, "deg(V)")?;
    ensure(r.samples.len() >= 50, "samples")?;
    ensure(r.samples.iter().all(|s| s.count == 4) && r.constant && r.consistent, "fiber counts")?;
    ensure(r.mass == "4·(2π)^1", format!("mass {}", r.mass))?;
    Ok(format!("deg(V) = 4, {} samples all with 4 points, mass {}", r.samples.len(), r.mass))
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[String], max_deg: u32, terms: usize) -> MultiPoly {
    let t = (0..terms).map(|_| {
        let e: Vec<u32> = (0..vars.len()).map(|_| rng.gen_range(0..=max_deg)).collect();
        (ExponentVector::new(e), int(rng.gen_range(-5..=5)))
    });
    MultiPoly::from_terms(vars, t)
}

/// `y^d` plus lower terms, with `y ∤ P` and `j + k ≤ d` so the curve is
/// Noether-presented.
fn random_curve(rng: &mut ChaCha8Rng, max_deg: u32) -> MultiPoly {
    let d = rng.gen_range(1..=max_deg);
    let mut t = vec![(ExponentVector::new(vec![0, d]), int(1)), (ExponentVector::new(vec![0, 0]), int(rng.gen_range(1..=3)))];
    for _ in 0..rng.gen_range(0..6) {
        let k = rng.gen_range(0..d);
        let j = rng.gen_range(0..=d - k);
        if j + k > 0 {
            t.push((ExponentVector::new(vec![j, k]), int(rng.gen_range(-4..=4))));
        }
    }
    MultiPoly::from_terms(&xy(), t)
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> MonomialOrder {
    let kind = if rng.gen_bool(0.5) { OrderKind::Grevlex } else { OrderKind::GradedLex };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    MonomialOrder::with_precedence(kind, perm).unwrap()
}

fn suite_order_axioms(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..500 {
        let o = random_order(rng, 3);
        let ev = |rng: &mut ChaCha8Rng| ExponentVector::new((0..3).map(|_| rng.gen_range(0..5)).collect());
        let (a, b, c) = (ev(rng), ev(rng), ev(rng));
        let ab = o.cmp(&a, &b);
        ensure(ab == o.cmp(&b, &a).reverse() && (ab == Ordering::Equal) == (a == b), "totality")?;
        if ab != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
            ensure(o.cmp(&a, &c) != Ordering::Greater, "transitivity")?;
        }
        ensure(o.cmp(&a.mul(&c), &b.mul(&c)) == ab, "compatibility")?;
        ensure(o.cmp(&ExponentVector::zero(3), &a) != Ordering::Greater, "1 minimal")?;
    }
    Ok(())
}

fn suite_division(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let vars = xy();
    let mut done = 0;
    while done < 500 {
        let o = random_order(rng, 2);
        let f = random_poly(rng, &vars, 5, 8);
        let divs: Vec<MultiPoly> = (0..2).map(|_| random_poly(rng, &vars, 3, 4)).filter(|d| !d.is_zero()).collect();
        if divs.is_empty() {
            continue;
        }
        let (q, r) = divide(&f, &divs, &o).map_err(|e| e.to_string())?;
        let sum = q.iter().zip(&divs).fold(r.clone(), |acc, (qj, dj)| &acc + &(qj * dj));
        ensure(sum == f, "p != Σ q_j f_j + r")?;
        let lts: Vec<ExponentVector> = divs.iter().map(|d| d.leading_term(&o).unwrap().0).collect();
        ensure(r.terms().all(|(e, _)| !lts.iter().any(|lt| lt.divides(e))), "remainder term divisible by a leading term")?;
        done += 1;
    }
    Ok(())
}

fn suite_buchberger(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let vars = xy();
    for _ in 0..40 {
        let o = random_order(rng, 2);
        let gens: Vec<MultiPoly> = (0..2).map(|_| random_poly(rng, &vars, 2, 3)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let Ok(gb) = buchberger_with_budget(&gens, &o, 2000) else { continue };
        ensure(gb.satisfies_buchberger_criterion(), "basis")?;
        let red = gb.reduce_basis();
        ensure(red.satisfies_buchberger_criterion(), "reduced basis")?;
        for g in &gens {
            ensure(red.normal_form(g).map_err(|e| e.to_string())?.is_zero(), "generator not in ideal")?;
        }
    }
    Ok(())
}

fn suite_widths(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let vars = xy();
    for _ in 0..500 {
        let d = rng.gen_range(1..=6u32);
        let mut t = vec![(ExponentVector::new(vec![0, d]), int(1))];
        let j0 = rng.gen_range(0..5);
        t.push((ExponentVector::new(vec![j0, 0]), int(if rng.gen_bool(0.5) { 1 } else { -2 })));
        for _ in 0..rng.gen_range(0..8) {
            let (j, k) = (rng.gen_range(0..5), rng.gen_range(0..d));
            if (j, k) != (j0, 0) {
                t.push((ExponentVector::new(vec![j, k]), int(rng.gen_range(-5..=5))));
            }
        }
        let poly = MultiPoly::from_terms(&vars, t);
        let (_, np) = polygon_at_infinity(&poly).map_err(|e| e.to_string())?;
        let total: u32 = np.lower_segments.iter().map(|s| s.lattice_width).sum();
        ensure(total == d, format!("{poly}: widths {total} != {d}"))?;
    }
    Ok(())
}

fn suite_growth(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..20 {
        let curve = random_curve(rng, 4);
        let a = to_f64(&growth_constant(std::slice::from_ref(&curve), 1).map_err(|e| e.to_string())?);
        let (mut checked, mut draws) = (0, 0);
        while checked < 200 {
            draws += 1;
            ensure(draws < 10_000, "no regular fibers")?;
            let q = rng.gen_range(1i64..=16);
            let x0 = Gaussian::new(rat(rng.gen_range(-1000..=1000), q), rat(rng.gen_range(-1000..=1000), q));
            let Ok(ys) = fiber_points(&curve, &x0) else { continue };
            let xn = Complex64::new(to_f64(&x0.re), to_f64(&x0.im)).norm();
            for y in ys {
                let bound = a * (1.0 + xn);
                ensure(y.norm() <= bound * (1.0 + 1e-9), format!("{curve}: |y| = {} > {bound}", y.norm()))?;
                checked += 1;
            }
        }
    }
    Ok(())
}

fn suite_oracle_bound(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut done = 0;
    let mut draws = 0;
    while done < 200 {
        draws += 1;
        ensure(draws < 2000, "too many non-finite systems")?;
        let (p1, p2) = (random_curve(rng, 3), random_curve(rng, 2));
        if count_solutions(&p1, &p2).is_err() {
            continue;
        }
        let r = affine_bezout(&p1, &p2, &SearchConfig { seed: draws, ..Default::default() }).map_err(|e| e.to_string())?;
        let bound = r.affine_bound.as_ref().and_then(LelongValue::as_rational).ok_or(format!("{p1}, {p2}: no bound"))?;
        let count = r.oracle_count.ok_or("no oracle count")?;
        ensure(int(count as i64) <= bound, format!("{p1}, {p2}: {count} > {bound}"))?;
        done += 1;
    }
    Ok(())
}

fn suite_moving(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..50 {
        let curve = random_curve(rng, 4);
        let ts: Vec<Rational> = (0..5).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
        let r = moving_invariance(&MultiPoly::var(&xy(), 1), &curve, &ts).map_err(|e| e.to_string())?;
        ensure(r.all_equal, format!("{curve}: {:?}", r.samples))?;
    }
    Ok(())
}

fn relative_value(q: &MultiPoly, x: Complex64, y: Complex64) -> f64 {
    let scale: f64 = q
        .terms()
        .map(|(e, c)| to_f64(c).abs() * x.norm().powi(e.get(0) as i32) * y.norm().powi(e.get(1) as i32))
        .sum();
    q.eval_complex(&[x, y]).norm() / scale.max(f64::MIN_POSITIVE)
}

fn suite_resultant(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut numeric = 0;
    for _ in 0..200 {
        let (a, b) = (random_curve(rng, 3), random_curve(rng, 2));
        let res = resultant_bivariate(&a, &b, 1).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            let x0 = int(rng.gen_range(-6..=6));
            let fa = a.partial_eval(0, &x0).to_univariate(1).unwrap();
            let fb = b.partial_eval(0, &x0).to_univariate(1).unwrap();
            ensure((res.eval(&x0) == int(0)) == !fa.gcd(&fb).is_constant(), format!("{a}, {b} at x = {x0}"))?;
        }
        if res.is_zero() || res.is_constant() {
            continue;
        }
        let sq = res.squarefree();
        if !sq.gcd(&discriminant_y(&a).unwrap()).is_constant() {
            continue;
        }
        for x in roots::roots(&sq).map_err(|e| e.to_string())? {
            let coeffs: Vec<Complex64> = a.coefficients_in(1).iter().map(|c| c.eval_complex(&[x, Complex64::new(0.0, 0.0)])).collect();
            let ys = roots::aberth(&coeffs).map_err(|e| e.to_string())?;
            let best = ys.iter().map(|&y| relative_value(&b, x, y)).fold(f64::INFINITY, f64::min);
            ensure(best < 1e-8, format!("{a}, {b}: residual {best} at x = {x}"))?;
            numeric += 1;
        }
    }
    ensure(numeric > 0, "no numeric samples")
}

fn criterion_8() -> Check {
    let suites: [(&str, fn(&mut ChaCha8Rng) -> Result<(), String>); 8] = [
        ("order axioms", suite_order_axioms),
        ("division identity x500", suite_division),
        ("buchberger postcondition", suite_buchberger),
        ("polygon widths x500", suite_widths),
        ("growth bound 200 pts/curve", suite_growth),
        ("oracle <= bound x200", suite_oracle_bound),
        ("moving invariance 50x5", suite_moving),
        ("resultant vanishing", suite_resultant),
    ];
    let mut names = Vec::new();
    for (i, (name, suite)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xac_ce97 + i as u64);
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        names.push(*name);
    }
    Ok(names.join(", "))
}

fn criterion_9() -> Check {
    let bin = env!("CARGO_BIN_EXE_lelongkit");
    let mut n = 0;
    for (name, args) in common::cases() {
        for (suffix, args) in [("txt", args.clone()), ("json", common::json_args(&args))] {
            let run = || Command::new(bin).env_remove("LELONGKIT_CI").args(&args).output().map_err(|e| e.to_string());
            let (a, b) = (run()?, run()?);
            ensure(a.status.success(), format!("{name}.{suffix} failed"))?;
            ensure(a.stdout == b.stdout, format!("{name}.{suffix}: runs differ"))?;
            let golden = std::fs::read(common::golden_dir().join(format!("{name}.{suffix}"))).map_err(|e| format!("{name}.{suffix}: {e}"))?;
            ensure(golden == a.stdout, format!("{name}.{suffix} differs from golden"))?;
            n += 1;
        }
    }
    Ok(format!("{n} golden outputs byte-identical across two runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("polygon and deg_L(y) of the quartic", criterion_1),
        ("signed average with a negative branch", criterion_2),
        ("parabola family", criterion_3),
        ("hyperbola cancellation and balayage", criterion_4),
        ("Bezout routes for the quartic and y = 1", criterion_5),
        ("Noether examples", criterion_6),
        ("mass and fiber count", criterion_7),
        ("property suites", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: pass  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
