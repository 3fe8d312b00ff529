//! Noether presentations: structural check, seeded search, the explicit
//! growth constant, and fiber counting over the covering projection.
//!
//! Coordinates are split as `x = (z_0, ..., z_{m-1})` and
//! `y = (z_m, ..., z_{N-1})`. A presentation is a list `g_0, ..., g_{N-m-1}`
//! where `g_j` is monic in `y_j` of degree `d_j`, involves only `x` and
//! `y_0..y_j`, and has total degree `d_j`.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::NoetherError;
use crate::groebner::{self, by_degree, DEFAULT_PAIR_BUDGET};
use crate::linalg::{self, Matrix};
use crate::monomial::{MonomialOrder, OrderKind};
use crate::poly::{MultiPoly, Poly};
use crate::resultant::{discriminant_y, resultant_of};
use crate::roots;
use crate::scalar::{ceil_root, int, Field, Gaussian, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NotMonicInY,
    DegreeConditionViolated,
    WrongGeneratorCount,
    /// `g_j` involves some `y_k` with `k > j`.
    DependsOnLaterY,
}

impl FailureReason {
    pub fn name(self) -> &'static str {
        match self {
            FailureReason::NotMonicInY => "not_monic_in_y",
            FailureReason::DegreeConditionViolated => "degree_condition_violated",
            FailureReason::WrongGeneratorCount => "wrong_generator_count",
            FailureReason::DependsOnLaterY => "depends_on_later_y",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoetherReport {
    /// `L` with the presentation living in coordinates `w`, `z = L w`.
    pub linear_map: Matrix,
    pub split_m: usize,
    /// Generators, rescaled to be monic when the check passes.
    pub g_list: Vec<MultiPoly>,
    pub d_list: Vec<u32>,
    pub verdict: bool,
    pub growth_a: Option<Rational>,
    pub failure_reason: Option<FailureReason>,
    /// Index of the first offending generator.
    pub failing_index: Option<usize>,
    /// Irreducibility of the input is never verified.
    pub irreducibility_assumed: bool,
    /// Number of linear maps tried by [`find_noether`]; 1 for a plain check.
    pub attempts: usize,
    /// Number of sheets of the projection to `x`. For a checked list this is
    /// `d_1 ⋯ d_{N-m}`; [`find_noether`] counts the generic fiber of the input
    /// ideal instead, which is smaller when `V` is not cut out by the `g_j`.
    pub degree: Option<u64>,
}

fn failed(n: usize, m: usize, g_list: &[MultiPoly], reason: FailureReason, index: Option<usize>) -> NoetherReport {
    NoetherReport {
        linear_map: linalg::identity(n),
        split_m: m,
        g_list: g_list.to_vec(),
        d_list: Vec::new(),
        verdict: false,
        growth_a: None,
        failure_reason: Some(reason),
        failing_index: index,
        irreducibility_assumed: true,
        attempts: 1,
        degree: None,
    }
}

/// Checks the structural conditions of a Noether presentation. `split_m = 0`
/// is accepted (a finite set of points); otherwise `1 ≤ m < N`.
pub fn check_noether(g_list: &[MultiPoly], split_m: usize) -> Result<NoetherReport, NoetherError> {
    let n = g_list.first().map_or(split_m + 1, |g| g.arity());
    if split_m >= n {
        return Err(NoetherError::MalformedSplit { m: split_m, arity: n });
    }
    for g in g_list {
        if g.arity() != n {
            return Err(NoetherError::Poly(crate::error::PolyError::ArityMismatch { expected: n, found: g.arity() }));
        }
    }
    if g_list.len() != n - split_m {
        return Ok(failed(n, split_m, g_list, FailureReason::WrongGeneratorCount, None));
    }
    let mut monic = Vec::with_capacity(g_list.len());
    let mut d_list = Vec::with_capacity(g_list.len());
    for (j, g) in g_list.iter().enumerate() {
        let yj = split_m + j;
        if (yj + 1..n).any(|k| g.depends_on(k)) {
            return Ok(failed(n, split_m, g_list, FailureReason::DependsOnLaterY, Some(j)));
        }
        let d = g.degree_in(yj).unwrap_or(0);
        let lead = g.coefficients_in(yj).pop().unwrap_or_else(|| MultiPoly::zero(g.vars()));
        let lc = match lead.constant_value() {
            Some(c) if d > 0 && !c.is_zero() => c,
            _ => return Ok(failed(n, split_m, g_list, FailureReason::NotMonicInY, Some(j))),
        };
        if g.degree().finite() != Some(d) {
            return Ok(failed(n, split_m, g_list, FailureReason::DegreeConditionViolated, Some(j)));
        }
        monic.push(g.scale(&(Rational::one() / lc)));
        d_list.push(d);
    }
    let growth_a = Some(growth_of(&monic, split_m));
    let degree = Some(d_list.iter().map(|&d| d as u64).product());
    Ok(NoetherReport {
        linear_map: linalg::identity(n),
        split_m,
        g_list: monic,
        d_list,
        verdict: true,
        growth_a,
        failure_reason: None,
        failing_index: None,
        irreducibility_assumed: true,
        attempts: 1,
        degree,
    })
}

/// Per-level constant `2 · max_k C_k^{1/(d-k)}`, rounded up to a multiple of
/// 1/1024, where `C_k` is the coefficient sum of the `y^k` coefficient.
pub fn level_constant(g: &MultiPoly, yvar: usize) -> Rational {
    let coeffs = g.coefficients_in(yvar);
    let d = coeffs.len().saturating_sub(1) as u32;
    let mut best = Rational::zero();
    for (k, c) in coeffs.iter().enumerate().take(d as usize) {
        let ck: Rational = c.terms().map(|(_, a)| a.abs()).fold(Rational::zero(), |s, a| s + a);
        let r = ceil_root(&ck, d - k as u32);
        if r > best {
            best = r;
        }
    }
    best * int(2)
}

fn growth_of(monic: &[MultiPoly], m: usize) -> Rational {
    let mut a = Rational::zero();
    for (j, g) in monic.iter().enumerate() {
        let aj = level_constant(g, m + j);
        a = if j == 0 { aj } else { &aj * (Rational::one() + &a) + &a };
    }
    a
}

/// Explicit `A` with `‖y‖ ≤ A(1 + ‖x‖)` on `V` (max norms), assembled level
/// by level as `A ← A_j (1 + A) + A`.
pub fn growth_constant(g_list: &[MultiPoly], split_m: usize) -> Result<Rational, NoetherError> {
    let r = check_noether(g_list, split_m)?;
    match r.failure_reason {
        Some(f) => Err(NoetherError::NotNoether(f)),
        None => Ok(r.growth_a.unwrap()),
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    /// Maximum number of linear maps tried over the whole recursion.
    pub attempts: usize,
    pub pair_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, attempts: 64, pair_budget: DEFAULT_PAIR_BUDGET }
    }
}

struct Search {
    rng: ChaCha8Rng,
    attempts: usize,
    max_attempts: usize,
    pair_budget: usize,
    last: Option<FailureReason>,
}

impl Search {
    fn random_matrix(&mut self, n: usize) -> Matrix {
        loop {
            let m: Matrix = (0..n).map(|_| (0..n).map(|_| int(self.rng.gen_range(-9..=9))).collect()).collect();
            if !linalg::determinant(&m).is_zero() {
                return m;
            }
        }
    }

    fn bump(&mut self) -> Result<(), NoetherError> {
        self.attempts += 1;
        if self.attempts > self.max_attempts {
            Err(NoetherError::BudgetExhausted { attempts: self.max_attempts, last: self.last })
        } else {
            Ok(())
        }
    }

    /// Returns `(L, m, g_list)` for the ideal generated by `gens` in `n`
    /// variables, following the elimination recursion.
    fn level(&mut self, gens: &[MultiPoly], vars: &[String]) -> Result<(Matrix, usize, Vec<MultiPoly>), NoetherError> {
        let n = vars.len();
        let nonzero: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Ok((linalg::identity(n), n, Vec::new()));
        }
        if nonzero.iter().any(|g| g.is_constant()) {
            return Err(NoetherError::Inconsistent);
        }
        let order = MonomialOrder::new(OrderKind::Grevlex, n);
        let gb = groebner::buchberger_with_budget(&nonzero, &order, self.pair_budget)?.reduce_basis();
        if gb.is_unit_ideal() {
            return Err(NoetherError::Inconsistent);
        }
        let f = gb
            .generators
            .iter()
            .min_by(|a, b| by_degree(a, b, &order))
            .cloned()
            .ok_or(NoetherError::NoGenerators)?;
        let fhat = f.leading_form();
        let last = n - 1;
        let mut first = true;
        loop {
            self.bump()?;
            let l = if first { linalg::identity(n) } else { self.random_matrix(n) };
            first = false;
            let col: Vec<Rational> = l.iter().map(|row| row[last].clone()).collect();
            let lead = fhat.eval(&col);
            if lead.is_zero() {
                self.last = Some(FailureReason::NotMonicInY);
                continue;
            }
            let ft = f.subst_linear_unchecked(&l).scale(&(Rational::one() / &lead));
            let transformed: Vec<MultiPoly> = gb.generators.iter().map(|g| g.subst_linear_unchecked(&l)).collect();
            let (l0, m, g0) = if n == 1 {
                (Vec::new(), 0, Vec::new())
            } else {
                let j0 = groebner::eliminate(&transformed, &[last], self.pair_budget)?;
                let sub_vars = &vars[..last];
                let j0: Vec<MultiPoly> = j0.iter().map(|g| g.drop_var(last).unwrap().with_vars(sub_vars)).collect();
                self.level(&j0, sub_vars)?
            };
            let big = linalg::extend_identity(&l0);
            let total = linalg::mat_mul(&l, &big);
            let mut g_list: Vec<MultiPoly> = g0.iter().map(|g| g.push_var(&vars[last]).with_vars(vars)).collect();
            g_list.push(ft.subst_linear_unchecked(&big));
            let report = check_noether(&g_list, m)?;
            if report.verdict {
                return Ok((total, m, report.g_list));
            }
            self.last = report.failure_reason;
        }
    }
}

/// Searches for a linear change of coordinates giving a Noether presentation,
/// trying the identity first at every level and then seeded random integer
/// matrices with entries in [-9, 9].
pub fn find_noether(generators: &[MultiPoly], config: &SearchConfig) -> Result<NoetherReport, NoetherError> {
    let vars = generators.first().ok_or(NoetherError::NoGenerators)?.vars().to_vec();
    for g in generators {
        g.check_compatible(&generators[0])?;
    }
    if generators.iter().all(|g| g.is_zero() || g.is_constant()) {
        return if generators.iter().any(|g| !g.is_zero()) {
            Err(NoetherError::Inconsistent)
        } else {
            Err(NoetherError::NoGenerators)
        };
    }
    let mut search = Search {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        attempts: 0,
        max_attempts: config.attempts,
        pair_budget: config.pair_budget,
        last: None,
    };
    let (l, m, g_list) = search.level(generators, &vars)?;
    if m == vars.len() {
        return Err(NoetherError::NoGenerators);
    }
    let mut report = check_noether(&g_list, m)?;
    if g_list.len() > 1 {
        let ideal: Vec<MultiPoly> = generators.iter().map(|g| g.subst_linear_unchecked(&l)).collect();
        report.degree = Some(covering_degree(&ideal, m, config)?);
    }
    report.linear_map = l;
    report.attempts = search.attempts;
    Ok(report)
}

/// Generic fiber length of the projection to the first `m` coordinates: the
/// minimum over three seeded integer slices `x = a` of
/// `dim C[y] / (I + ⟨x - a⟩)`. Assumes the projection is finite.
pub fn covering_degree(ideal: &[MultiPoly], m: usize, config: &SearchConfig) -> Result<u64, NoetherError> {
    let n = ideal.first().ok_or(NoetherError::NoGenerators)?.arity();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let order = MonomialOrder::new(OrderKind::Grevlex, n);
    let slices = if m == 0 { 1 } else { 3 };
    let mut best: Option<u64> = None;
    for _ in 0..slices {
        let point: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(-50..=50))).collect();
        let sliced: Vec<MultiPoly> = ideal
            .iter()
            .map(|g| point.iter().enumerate().fold(g.clone(), |acc, (i, a)| acc.partial_eval(i, a)))
            .collect();
        let gb = groebner::buchberger_with_budget(&sliced, &order, config.pair_budget)?.reduce_basis();
        if gb.is_unit_ideal() {
            continue;
        }
        let lts = gb.leading_exponents();
        let mut bounds = Vec::with_capacity(n - m);
        for v in m..n {
            let pure = lts
                .iter()
                .filter(|e| e.total_degree() == e.get(v))
                .map(|e| e.get(v))
                .min()
                .ok_or(NoetherError::NotNoether(FailureReason::NotMonicInY))?;
            bounds.push(pure);
        }
        let mut count = 0u64;
        let mut exps = vec![0u32; n];
        loop {
            let e = crate::monomial::ExponentVector::new(exps.clone());
            if !lts.iter().any(|lt| lt.divides(&e)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n - m {
                    best = Some(best.map_or(count, |b: u64| b.min(count)));
                    break;
                }
                exps[m + k] += 1;
                if exps[m + k] < bounds[k] {
                    break;
                }
                exps[m + k] = 0;
                k += 1;
            }
            if k == n - m {
                break;
            }
        }
    }
    best.ok_or(NoetherError::Inconsistent)
}

/// `deg(V)` for a Noether-presented list: the product of the `y`-degrees.
pub fn deg_of_v(g_list: &[MultiPoly], split_m: usize) -> Result<u64, NoetherError> {
    let r = check_noether(g_list, split_m)?;
    match r.failure_reason {
        Some(f) => Err(NoetherError::NotNoether(f)),
        None => Ok(r.degree.unwrap()),
    }
}

fn plane_curve(p: &MultiPoly) -> Result<MultiPoly, NoetherError> {
    if p.arity() != 2 {
        return Err(NoetherError::NotPlaneCurve);
    }
    let r = check_noether(std::slice::from_ref(p), 1)?;
    match r.failure_reason {
        Some(f) => Err(NoetherError::NotNoether(f)),
        None => Ok(r.g_list.into_iter().next().unwrap()),
    }
}

fn fiber_coeffs(p: &MultiPoly, x0: &Gaussian) -> Vec<Gaussian> {
    let g: Poly<Gaussian> = p.map_coeffs(|c| Gaussian::real(c.clone()));
    g.partial_eval(0, x0)
        .coefficients_in(1)
        .iter()
        .map(|c| c.constant_value().unwrap())
        .collect()
}

/// Numeric points of the fiber over a regular `x0`.
pub fn fiber_points(p: &MultiPoly, x0: &Gaussian) -> Result<Vec<Complex64>, NoetherError> {
    let p = plane_curve(p)?;
    let fiber = fiber_coeffs(&p, x0);
    // P is monic in y, so disc(x0) vanishes exactly when Res_y(P(x0, y), P_y(x0, y)) does
    let derivative: Vec<Gaussian> = fiber
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * Gaussian::real(int(k as i64)))
        .collect();
    if fiber.len() > 2 && resultant_of(&fiber, &derivative, &Gaussian::zero()).is_zero() {
        return Err(NoetherError::BranchLocus);
    }
    Ok(roots::certified_roots(&fiber)?)
}

/// Number of distinct fiber points over `x0`; errors on the branch locus.
pub fn fiber_count(p: &MultiPoly, x0: &Gaussian) -> Result<usize, NoetherError> {
    let pts = fiber_points(p, x0)?;
    Ok(roots::count_clusters(&pts, 1e-9))
}

/// Gaussian rational `r·((1-t²) + 2t i)/(1+t²)`, exactly of modulus `r`.
pub fn circle_point(t: &Rational, radius: &Rational) -> Gaussian {
    let one = Rational::one();
    let den = &one + t * t;
    Gaussian::new(radius * (&one - t * t) / &den, radius * (int(2) * t) / den)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberSample {
    /// Parameter of the circle point.
    pub t: String,
    pub x0: (f64, f64),
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassReport {
    pub degree: u64,
    pub m: usize,
    pub samples: Vec<FiberSample>,
    /// Samples rejected because they landed on the branch locus.
    pub rejected: usize,
    pub constant: bool,
    pub consistent: bool,
    /// Implied mass `deg(V)·(2π)^m`.
    pub mass: String,
}

/// Draws `count` regular points with `|x0| = radius`, resampling points on
/// the branch locus up to ten times `count` draws in total.
pub fn regular_samples(p: &MultiPoly, count: usize, radius: &Rational, seed: u64) -> Result<Vec<(Rational, Gaussian)>, NoetherError> {
    let p = plane_curve(p)?;
    let disc = discriminant_y(&p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 10 * count.max(1);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let t = Rational::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=997).into());
        let x0 = circle_point(&t, radius);
        if !disc.eval_gaussian(&x0).is_zero() {
            out.push((t, x0));
        }
    }
    if out.len() < count {
        return Err(NoetherError::SampleBudget(budget));
    }
    Ok(out)
}

/// Sheet-count check of the covering: the fiber over every sampled regular
/// point on the unit circle has `deg(V)` points.
pub fn mass_check(p: &MultiPoly, samples: usize, seed: u64) -> Result<MassReport, NoetherError> {
    let curve = plane_curve(p)?;
    let degree = curve.degree_in(1).unwrap() as u64;
    let disc = discriminant_y(&curve)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut rejected = 0;
    let budget = 10 * samples.max(1);
    while out.len() < samples {
        if out.len() + rejected >= budget {
            return Err(NoetherError::SampleBudget(budget));
        }
        let t = Rational::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=997).into());
        let x0 = circle_point(&t, &Rational::one());
        if disc.eval_gaussian(&x0).is_zero() {
            rejected += 1;
            continue;
        }
        let pts = roots::certified_roots(&fiber_coeffs(&curve, &x0))?;
        let c = x0.to_complex();
        out.push(FiberSample {
            t: crate::scalar::format_rational(&t),
            x0: (c.re, c.im),
            count: roots::count_clusters(&pts, 1e-9),
        });
    }
    let constant = out.windows(2).all(|w| w[0].count == w[1].count);
    let consistent = out.iter().all(|s| s.count as u64 == degree);
    Ok(MassReport { degree, m: 1, samples: out, rejected, constant, consistent, mass: format_mass(&int(degree as i64), 1) })
}

/// Symbolic `r·(2π)^m`.
pub fn format_mass(r: &Rational, m: usize) -> String {
    format!("{}·(2π)^{}", crate::scalar::format_rational(r), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::var_names;
    use crate::scalar::rat;

    fn xy() -> Vec<String> {
        var_names(&["x", "y"])
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn hyperbola_is_not_presented() {
        let r = check_noether(&[p("x*y - 1")], 1).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failure_reason, Some(FailureReason::NotMonicInY));
    }

    #[test]
    fn cusp_one_way_only() {
        let r = check_noether(&[p("y^3 - x^2")], 1).unwrap();
        assert!(r.verdict);
        assert_eq!(r.d_list, vec![3]);
        let r = check_noether(&[p("y^2 - x^3")], 1).unwrap();
        assert_eq!(r.failure_reason, Some(FailureReason::DegreeConditionViolated));
    }

    #[test]
    fn structural_failures() {
        assert_eq!(check_noether(&[p("y"), p("x")], 1).unwrap().failure_reason, Some(FailureReason::WrongGeneratorCount));
        assert!(matches!(check_noether(&[p("y")], 2), Err(NoetherError::MalformedSplit { .. })));
        let v = var_names(&["x", "y1", "y2"]);
        let g = vec![parse_poly("y1^2 - y2", &v).unwrap(), parse_poly("y2 - x", &v).unwrap()];
        assert_eq!(check_noether(&g, 1).unwrap().failure_reason, Some(FailureReason::DependsOnLaterY));
        let r = check_noether(&[p("3*y^2 - x")], 1).unwrap();
        assert_eq!(r.g_list[0], p("y^2 - 1/3*x"));
    }

    #[test]
    fn growth_constants() {
        assert_eq!(growth_constant(&[p("y^2 - x")], 1).unwrap(), int(2));
        assert_eq!(growth_constant(&[p("y - 5")], 1).unwrap(), int(10));
        let v = var_names(&["x", "y1", "y2"]);
        let g = vec![parse_poly("y1 - 2*x", &v).unwrap(), parse_poly("y2^2 - y1", &v).unwrap()];
        // A1 = 4, A2 = 2: 2·(1 + 4) + 4 = 14
        assert_eq!(growth_constant(&g, 1).unwrap(), int(14));
    }

    #[test]
    fn search_hyperbola() {
        let r = find_noether(&[p("x*y - 1")], &SearchConfig { seed: 7, ..Default::default() }).unwrap();
        assert!(r.verdict);
        assert!(r.attempts > 1);
        let l = &r.linear_map;
        assert!(!(&l[0][1] * &l[1][1]).is_zero());
        let expect = p(&format!(
            "{b1}*{b2}*y^2 + ({a1}*{b2} + {a2}*{b1})*x*y + {a1}*{a2}*x^2 - 1",
            a1 = l[0][0], b1 = l[0][1], a2 = l[1][0], b2 = l[1][1]
        ));
        assert_eq!(r.g_list[0], expect.scale(&(Rational::one() / (&l[0][1] * &l[1][1]))));
    }

    #[test]
    fn identity_is_tried_first() {
        let r = find_noether(&[p("y^3 - x^2")], &SearchConfig::default()).unwrap();
        assert_eq!(r.attempts, 1);
        assert_eq!(r.linear_map, linalg::identity(2));
    }

    #[test]
    fn space_curve_and_points() {
        let v = var_names(&["x", "y", "z"]);
        let g = vec![parse_poly("y - x^2", &v).unwrap(), parse_poly("z - x^3", &v).unwrap()];
        let r = find_noether(&g, &SearchConfig { seed: 3, ..Default::default() }).unwrap();
        assert!(r.verdict);
        assert_eq!(r.split_m, 1);
        assert_eq!(r.degree, Some(3));
        let pts = find_noether(&[p("x^2 - 1"), p("y - x")], &SearchConfig::default()).unwrap();
        assert_eq!((pts.split_m, pts.degree), (0, Some(2)));
        assert!(matches!(find_noether(&[p("x"), p("x - 1")], &SearchConfig::default()), Err(NoetherError::Inconsistent)));
    }

    #[test]
    fn fibers() {
        let curve = p("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1");
        let x0 = circle_point(&rat(1, 3), &Rational::one());
        assert_eq!(fiber_count(&curve, &x0).unwrap(), 4);
        assert_eq!(fiber_count(&p("y - 3"), &x0).unwrap(), 1);
        assert_eq!(fiber_count(&p("y^2 - x"), &Gaussian::real(int(2))).unwrap(), 2);
        assert_eq!(fiber_count(&p("y^2 - x"), &Gaussian::zero()), Err(NoetherError::BranchLocus));
        let m = mass_check(&curve, 50, 1).unwrap();
        assert!(m.constant && m.consistent);
        assert_eq!(m.mass, "4·(2π)^1");
    }
}
