//! Intersection counts for two plane curves: the affine Bézout bound as a
//! product of Lelong degrees, the projective total with points at infinity,
//! and an exact resultant-based count of the affine solutions.
//!
//! Solutions are counted after a shear `x = u + λy` chosen so that both
//! polynomials have constant leading coefficient in `y`. The roots of the
//! squarefree part of `Res_y` are then split exactly by the degree of the
//! fiber gcd, read off from the principal subresultant coefficients, and the
//! distinct roots of each fiber gcd are counted the same way against its
//! `y`-derivative.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{BezoutError, LelongError};
use crate::lelong::{self, ser_rational, Caveat, LelongValue, Method};
use crate::linalg::{identity, Matrix};
use crate::monomial::ExponentVector;
use crate::newton::rational_root;
use crate::noether::{find_noether, SearchConfig};
use crate::poly::MultiPoly;
use crate::resultant::{resultant_bivariate, resultant_of, subresultant_of};
use crate::roots::{self, certified_roots, format_complex, vanishes_at_root};
use crate::scalar::{format_rational, int, Rational};
use crate::univariate::UniPoly;

/// Local shears `v = w - μt` tried at infinity.
const LOCAL_SHEARS: [i64; 8] = [1, 2, -1, 3, -2, 5, -3, 7];
const POINT_DIGITS: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct SolutionPoint {
    pub x: String,
    pub y: String,
    #[serde(skip)]
    pub value: (Complex64, Complex64),
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionCount {
    /// Distinct affine solutions.
    pub distinct: u64,
    /// Degree of the (sheared) resultant: solutions counted with multiplicity.
    pub multiplicity_total: u64,
    /// Every fiber of the projection to `u` meets the curves in one point.
    pub simple_fibers: bool,
    pub shear: i64,
    /// `Res_y(p1, p2)` in the original coordinates.
    pub resultant: String,
    pub points: Vec<SolutionPoint>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinityPoint {
    /// `[t:x:y]` with `t = 0` the line at infinity.
    pub point: String,
    pub multiplicity: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveReport {
    pub total: u64,
    pub infinity_points: Vec<InfinityPoint>,
    /// `total − Σ` multiplicities at infinity, when all are known.
    pub affine_count: Option<u64>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeRule {
    AmbientDegree,
    LelongOnCurve,
    UserSupplied,
}

#[derive(Clone, Debug, Serialize)]
pub struct Factor {
    pub level: usize,
    pub polynomial: String,
    pub degree: LelongValue,
    pub rule: DegreeRule,
}

#[derive(Clone, Debug, Serialize)]
pub struct Route {
    /// Id of the polynomial whose curve carries the Lelong degree.
    pub curve: String,
    pub factors: Vec<Factor>,
    pub bound: Option<LelongValue>,
    /// Coordinates `z = L w` in which the curve was presented.
    pub linear_map: Vec<Vec<String>>,
    pub method: Option<Method>,
    pub lelong_caveats: Vec<Caveat>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BezoutReport {
    pub affine_bound: Option<LelongValue>,
    pub factors: Vec<Factor>,
    pub routes: Vec<Route>,
    pub projective_total: u64,
    pub infinity_points: Vec<InfinityPoint>,
    pub oracle_count: Option<u64>,
    pub multiplicity_total: Option<u64>,
    pub consistency: bool,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LevelRule {
    AmbientDegree,
    LelongOnCurve,
    UserSupplied(Rational),
}

#[derive(Clone, Debug)]
pub struct ChainLevel {
    pub poly: MultiPoly,
    pub rule: LevelRule,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    #[serde(serialize_with = "ser_rational")]
    pub product: Rational,
    pub factors: Vec<Factor>,
}

fn plane_pair(p1: &MultiPoly, p2: &MultiPoly) -> Result<(u32, u32), BezoutError> {
    if p1.arity() != 2 || p1.check_compatible(p2).is_err() {
        return Err(BezoutError::NotPlane);
    }
    let d1 = p1.degree().finite().ok_or(BezoutError::ConstantInput)?;
    let d2 = p2.degree().finite().ok_or(BezoutError::ConstantInput)?;
    if d1 < 1 || d2 < 1 {
        return Err(BezoutError::ConstantInput);
    }
    Ok((d1, d2))
}

/// `f(λ, 1)` for the leading form `f` of `p`: the leading `y`-coefficient
/// after `x = u + λy`.
fn leading_at(p: &MultiPoly, lambda: &Rational) -> Rational {
    let d = p.degree().finite().unwrap_or(0);
    p.terms()
        .filter(|(e, _)| e.total_degree() == d)
        .fold(Rational::zero(), |acc, (e, c)| acc + c * pow(lambda, e.get(0)))
}

fn pow(r: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

/// Roots of `base` split by the degree `k` of `gcd(p(x*, ·), q(x*, ·))`.
/// Leading coefficients of `p` and `q` must not vanish on the roots of `base`.
struct Part {
    base: UniPoly,
    k: usize,
    gcd: Vec<UniPoly>,
}

fn gcd_degree_parts(p: &[UniPoly], q: &[UniPoly], base: &UniPoly) -> Vec<Part> {
    let zero = UniPoly::zero();
    let m = p.len() - 1;
    let n = q.len() - 1;
    let mut remaining = base.monic();
    let mut parts = Vec::new();
    for k in 0..m.min(n) {
        if remaining.is_constant() {
            return parts;
        }
        let s = if k == 0 { vec![resultant_of(p, q, &zero)] } else { subresultant_of(p, q, k, &zero) };
        let g = remaining.gcd(&s[k]).monic();
        let part = remaining.exact_div(&g).expect("gcd divides");
        if !part.is_constant() {
            parts.push(Part { base: part.monic(), k, gcd: s });
        }
        remaining = g;
    }
    if !remaining.is_constant() {
        let smaller = if n <= m { q } else { p };
        parts.push(Part { base: remaining, k: m.min(n), gcd: smaller.to_vec() });
    }
    parts
}

fn y_derivative(s: &[UniPoly]) -> Vec<UniPoly> {
    s.iter().enumerate().skip(1).map(|(j, c)| c.scale(&int(j as i64))).collect()
}

fn eval_fiber(s: &[UniPoly], x: Complex64) -> Vec<Complex64> {
    s.iter().map(|c| c.eval_complex(x)).collect()
}

/// Quotient of ascending complex coefficient lists (exact division assumed).
fn complex_div(num: &[Complex64], den: &[Complex64]) -> Vec<Complex64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![Complex64::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn] / den[dn];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    quot
}

fn linear_shear(lambda: i64) -> Matrix {
    vec![vec![Rational::one(), int(lambda)], vec![Rational::zero(), Rational::one()]]
}

/// Exact count of the distinct affine solutions of `p1 = p2 = 0`.
pub fn count_solutions(p1: &MultiPoly, p2: &MultiPoly) -> Result<SolutionCount, BezoutError> {
    plane_pair(p1, p2)?;
    let original = resultant_bivariate(p1, p2, 1)?;
    // λ = 0, 1, -1, 2, -2, ...; the leading forms have finitely many roots.
    let lambda = (0i64..)
        .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
        .find(|&l| !leading_at(p1, &int(l)).is_zero() && !leading_at(p2, &int(l)).is_zero())
        .expect("nonzero forms");
    let shear = linear_shear(lambda);
    let a = p1.subst_linear(&shear)?.to_bivariate(1, 0)?;
    let b = p2.subst_linear(&shear)?.to_bivariate(1, 0)?;
    let r = resultant_of(&a, &b, &UniPoly::zero());
    if r.is_zero() {
        return Err(BezoutError::NonFiniteIntersection);
    }
    let mut distinct = 0u64;
    let mut simple = true;
    let mut points = Vec::new();
    let mut push = |x: Complex64, fiber: Vec<Complex64>| -> Result<(), BezoutError> {
        for y in roots::aberth(&fiber)? {
            let value = (x + y * lambda as f64, y);
            points.push(SolutionPoint {
                x: format_complex(value.0, POINT_DIGITS),
                y: format_complex(value.1, POINT_DIGITS),
                value,
            });
        }
        Ok(())
    };
    for part in gcd_degree_parts(&a, &b, &r.squarefree()) {
        if part.k == 1 {
            distinct += part.base.degree().unwrap_or(0) as u64;
            for x in certified_roots(part.base.coeffs())? {
                push(x, eval_fiber(&part.gcd, x))?;
            }
            continue;
        }
        simple = false;
        // Distinct roots of the fiber gcd: its degree minus that of its
        // gcd with the derivative.
        for inner in gcd_degree_parts(&part.gcd, &y_derivative(&part.gcd), &part.base) {
            distinct += inner.base.degree().unwrap_or(0) as u64 * (part.k - inner.k) as u64;
            for x in certified_roots(inner.base.coeffs())? {
                let fiber = eval_fiber(&part.gcd, x);
                let reduced = if inner.k == 0 { fiber } else { complex_div(&fiber, &eval_fiber(&inner.gcd, x)) };
                push(x, reduced)?;
            }
        }
    }
    points.sort_by(|p, q| {
        let key = |z: &(Complex64, Complex64)| {
            [z.0.re, z.0.im, z.1.re, z.1.im].map(|v| (v * 1e8).round())
        };
        key(&p.value).partial_cmp(&key(&q.value)).unwrap()
    });
    let multiplicity_total = r.degree().unwrap_or(0) as u64;
    let mut caveats = Vec::new();
    if !simple {
        caveats.push("fibers_not_simple".to_string());
    }
    if multiplicity_total != distinct {
        caveats.push("multiple_solutions".to_string());
    }
    Ok(SolutionCount {
        distinct,
        multiplicity_total,
        simple_fibers: simple,
        shear: lambda,
        resultant: original.format_with("x"),
        points,
        caveats,
    })
}

/// `P(t, v)` in the chart `x = 1` (`v = y/x`) or `y = 1` (`v = x/y`).
fn chart(p: &MultiPoly, x_chart: bool) -> MultiPoly {
    let d = p.degree().finite().unwrap_or(0);
    let vars = vec!["t".to_string(), "v".to_string()];
    MultiPoly::from_terms(
        &vars,
        p.terms().map(|(e, c)| {
            let v = if x_chart { e.get(1) } else { e.get(0) };
            (ExponentVector::new(vec![d - e.total_degree(), v]), c.clone())
        }),
    )
}

struct Direction {
    point: String,
    x_chart: bool,
    factor: UniPoly,
    value: Complex64,
    exact: Option<Rational>,
}

/// Common zeros of the leading forms on the line at infinity.
fn infinity_directions(p1: &MultiPoly, p2: &MultiPoly) -> Result<Vec<Direction>, BezoutError> {
    let f1 = chart(p1, true).partial_eval(0, &Rational::zero()).to_univariate(1)?;
    let f2 = chart(p2, true).partial_eval(0, &Rational::zero()).to_univariate(1)?;
    let h = f1.gcd(&f2).squarefree();
    let mut out = Vec::new();
    for z in roots::roots(&h)? {
        let (factor, exact, point) = match rational_root(&h, z) {
            Some(r) => (UniPoly::linear_root(r.clone()), Some(r.clone()), format!("[0:1:{}]", format_rational(&r))),
            None => (h.clone(), None, format!("[0:1:{}]", format_complex(z, 6))),
        };
        out.push(Direction { point, x_chart: true, factor, value: z, exact });
    }
    let top = |p: &MultiPoly| chart(p, false).partial_eval(0, &Rational::zero()).to_univariate(1);
    if top(p1)?.eval(&Rational::zero()).is_zero() && top(p2)?.eval(&Rational::zero()).is_zero() {
        out.push(Direction {
            point: "[0:0:1]".to_string(),
            x_chart: false,
            factor: UniPoly::x(),
            value: Complex64::zero(),
            exact: Some(Rational::zero()),
        });
    }
    Ok(out)
}

/// `R(w) = Res_t(F1, F2)` after `v = w − μt`, or `None` when neither
/// polynomial keeps a constant leading coefficient in `t`.
fn local_resultant(p1: &MultiPoly, p2: &MultiPoly, x_chart: bool, mu: i64) -> Result<Option<UniPoly>, BezoutError> {
    let shear = vec![vec![Rational::one(), Rational::zero()], vec![int(-mu), Rational::one()]];
    let f1 = chart(p1, x_chart).subst_linear(&shear)?;
    let f2 = chart(p2, x_chart).subst_linear(&shear)?;
    let constant_lead = |f: &MultiPoly| f.coefficients_in(0).last().is_some_and(|c| c.is_constant());
    if !constant_lead(&f1) && !constant_lead(&f2) {
        return Ok(None);
    }
    let r = resultant_bivariate(&f1, &f2, 0)?;
    Ok((!r.is_zero()).then_some(r))
}

fn order_at(r: &UniPoly, dir: &Direction) -> Result<u32, BezoutError> {
    for (f, j) in r.squarefree_decomposition() {
        if vanishes_at_root(&f, &dir.factor, dir.value, dir.exact.as_ref())? {
            return Ok(j);
        }
    }
    Ok(0)
}

fn projective_with(p1: &MultiPoly, p2: &MultiPoly, affine: Option<u64>) -> Result<ProjectiveReport, BezoutError> {
    let (d1, d2) = plane_pair(p1, p2)?;
    let total = d1 as u64 * d2 as u64;
    let dirs = infinity_directions(p1, p2)?;
    let mut caveats = Vec::new();
    let mut mults: Option<Vec<u32>> = None;
    match affine {
        None => caveats.push("common_component".to_string()),
        Some(affine) => {
            'mu: for &mu in &LOCAL_SHEARS {
                let mut found = Vec::with_capacity(dirs.len());
                for dir in &dirs {
                    let Some(r) = local_resultant(p1, p2, dir.x_chart, mu)? else { continue 'mu };
                    found.push(order_at(&r, dir)?);
                }
                if found.iter().map(|&m| m as u64).sum::<u64>() + affine == total {
                    mults = Some(found);
                    break;
                }
            }
            if mults.is_none() {
                caveats.push("multiplicity_at_infinity_unresolved".to_string());
            }
        }
    }
    let infinity_points = dirs
        .iter()
        .enumerate()
        .map(|(i, d)| InfinityPoint { point: d.point.clone(), multiplicity: mults.as_ref().map(|m| m[i]) })
        .collect();
    let affine_count = mults.map(|m| total - m.iter().map(|&k| k as u64).sum::<u64>());
    Ok(ProjectiveReport { total, infinity_points, affine_count, caveats })
}

/// Bézout total `deg p1 · deg p2` and the common points at infinity with
/// their intersection multiplicities.
pub fn projective_bezout(p1: &MultiPoly, p2: &MultiPoly) -> Result<ProjectiveReport, BezoutError> {
    let affine = match count_solutions(p1, p2) {
        Ok(c) => Some(c.multiplicity_total),
        Err(BezoutError::NonFiniteIntersection) => None,
        Err(e) => return Err(e),
    };
    projective_with(p1, p2, affine)
}

/// Candidate presentations `z = L w` for `p`: the identity and small
/// shears first, then a randomized search.
fn presentations(p: &MultiPoly, config: &SearchConfig) -> Vec<Matrix> {
    let mut out = vec![identity(2)];
    for k in [1, -1, 2] {
        out.push(linear_shear(k));
        out.push(vec![vec![Rational::one(), Rational::zero()], vec![int(k), Rational::one()]]);
    }
    if let Ok(r) = find_noether(std::slice::from_ref(p), config) {
        if r.verdict && !out.contains(&r.linear_map) {
            out.push(r.linear_map);
        }
    }
    out
}

/// Lelong degree of `other` on `V(curve)` in the first presentation where
/// it can be computed.
fn lelong_on(curve: &MultiPoly, other: &MultiPoly, config: &SearchConfig) -> Result<(lelong::LelongReport, Matrix), BezoutError> {
    let mut last: Option<LelongError> = None;
    for l in presentations(curve, config) {
        let c = curve.subst_linear(&l)?;
        let o = other.subst_linear(&l)?;
        match lelong::lelong_degree(&o, &c) {
            Ok(r) => return Ok((r, l)),
            Err(LelongError::VanishesOnCurve) => return Err(BezoutError::NonFiniteIntersection),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one presentation").into())
}

fn scale_value(v: &LelongValue, d: u32) -> LelongValue {
    let r = int(d as i64);
    match v {
        LelongValue::Exact { value } => LelongValue::Exact { value: value * &r },
        LelongValue::Numeric { value, error, identified } => LelongValue::Numeric {
            value: value * d as f64,
            error: error * d as f64,
            identified: identified.as_ref().map(|i| i * &r),
        },
        LelongValue::Bracket { lower, upper } => LelongValue::Bracket { lower: lower * &r, upper: upper * &r },
    }
}

fn exact(value: Rational) -> LelongValue {
    LelongValue::Exact { value }
}

fn format_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(format_rational).collect()).collect()
}

fn route(curve_id: &str, curve: &MultiPoly, other_id: &str, other: &MultiPoly, config: &SearchConfig) -> Route {
    let d = curve.degree().finite().unwrap_or(0);
    let mut factors = vec![Factor {
        level: 1,
        polynomial: curve_id.to_string(),
        degree: exact(int(d as i64)),
        rule: DegreeRule::AmbientDegree,
    }];
    match lelong_on(curve, other, config) {
        Ok((report, l)) => {
            let bound = scale_value(&report.value, d);
            factors.push(Factor {
                level: 2,
                polynomial: other_id.to_string(),
                degree: report.value.clone(),
                rule: DegreeRule::LelongOnCurve,
            });
            Route {
                curve: curve_id.to_string(),
                factors,
                bound: Some(bound),
                linear_map: format_matrix(&l),
                method: Some(report.method),
                lelong_caveats: report.caveats,
                error: None,
            }
        }
        Err(e) => Route {
            curve: curve_id.to_string(),
            factors,
            bound: None,
            linear_map: Vec::new(),
            method: None,
            lelong_caveats: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Affine Bézout bound along both chains `V(p2) ⊃ V(p1, p2)` and
/// `V(p1) ⊃ V(p1, p2)`, with the projective count and the exact oracle.
pub fn affine_bezout(p1: &MultiPoly, p2: &MultiPoly, config: &SearchConfig) -> Result<BezoutReport, BezoutError> {
    plane_pair(p1, p2)?;
    let mut caveats = Vec::new();
    let oracle = match count_solutions(p1, p2) {
        Ok(c) => Some(c),
        Err(BezoutError::NonFiniteIntersection) => {
            caveats.push("non_finite_intersection".to_string());
            None
        }
        Err(e) => return Err(e),
    };
    let routes = vec![route("p2", p2, "p1", p1, config), route("p1", p1, "p2", p2, config)];
    let exact_routes: Vec<(Rational, &Route)> = routes
        .iter()
        .filter_map(|r| r.bound.as_ref().and_then(|b| b.as_rational()).map(|v| (v, r)))
        .collect();
    let chosen = exact_routes.iter().min_by(|a, b| a.0.cmp(&b.0));
    let routes_agree = exact_routes.windows(2).all(|w| w[0].0 == w[1].0);
    if !routes_agree {
        caveats.push("routes_disagree".to_string());
    }
    let (affine_bound, factors) = match chosen {
        Some((v, r)) => (Some(exact(v.clone())), r.factors.clone()),
        None => match routes.iter().find(|r| r.bound.is_some()) {
            Some(r) => {
                caveats.push("bound_bracketed".to_string());
                (r.bound.clone(), r.factors.clone())
            }
            None => (None, Vec::new()),
        },
    };
    let projective = projective_with(p1, p2, oracle.as_ref().map(|c| c.multiplicity_total))?;
    caveats.extend(projective.caveats.iter().cloned());
    if let Some(c) = &oracle {
        caveats.extend(c.caveats.iter().cloned());
    }
    let consistency = match (&oracle, chosen) {
        (Some(c), Some((bound, _))) => {
            let sound = *bound >= int(c.distinct as i64);
            let conserved = projective.affine_count == Some(c.multiplicity_total);
            let simple_match = c.multiplicity_total != c.distinct || projective.affine_count == Some(c.distinct);
            sound && conserved && simple_match && routes_agree
        }
        _ => false,
    };
    Ok(BezoutReport {
        affine_bound,
        factors,
        routes,
        projective_total: projective.total,
        infinity_points: projective.infinity_points,
        oracle_count: oracle.as_ref().map(|c| c.distinct),
        multiplicity_total: oracle.as_ref().map(|c| c.multiplicity_total),
        consistency,
        caveats,
    })
}

/// Product of the per-level degrees of a chain `V_1 ⊃ V_2 ⊃ …`. Level 1 is
/// a hypersurface in ambient space; for plane chains the second level is
/// the Lelong degree on the first curve, computed here; otherwise levels
/// beyond the first must be supplied.
pub fn chain_product(levels: &[ChainLevel], config: &SearchConfig) -> Result<ChainReport, BezoutError> {
    let mut product = Rational::one();
    let mut factors = Vec::with_capacity(levels.len());
    let Some(first) = levels.first() else {
        return Ok(ChainReport { product, factors });
    };
    let n = first.poly.arity();
    if levels.len() > n {
        return Err(BezoutError::InvalidLevel {
            level: n + 1,
            message: format!("a chain in {n} variables has at most {n} levels"),
        });
    }
    for (i, level) in levels.iter().enumerate() {
        let index = i + 1;
        if level.poly.check_compatible(&first.poly).is_err() {
            return Err(BezoutError::InvalidLevel { level: index, message: "variables differ from level 1".to_string() });
        }
        let (degree, rule) = match &level.rule {
            LevelRule::UserSupplied(r) => (r.clone(), DegreeRule::UserSupplied),
            LevelRule::AmbientDegree if index == 1 => {
                let d = level.poly.degree().finite().filter(|&d| d >= 1).ok_or(BezoutError::ConstantInput)?;
                (int(d as i64), DegreeRule::AmbientDegree)
            }
            LevelRule::AmbientDegree => {
                return Err(BezoutError::InvalidLevel {
                    level: index,
                    message: "the ambient degree applies to level 1 only".to_string(),
                })
            }
            LevelRule::LelongOnCurve if index == 1 => {
                return Err(BezoutError::InvalidLevel { level: 1, message: "level 1 has no curve below it".to_string() })
            }
            LevelRule::LelongOnCurve if n > 2 => return Err(BezoutError::MissingUserDegree { level: index }),
            LevelRule::LelongOnCurve => {
                let (report, _) = lelong_on(&first.poly, &level.poly, config)?;
                let value = report.value.as_rational().ok_or_else(|| BezoutError::InvalidLevel {
                    level: index,
                    message: format!("Lelong degree only bracketed: {}", report.value.display()),
                })?;
                (value, DegreeRule::LelongOnCurve)
            }
        };
        product *= &degree;
        factors.push(Factor { level: index, polynomial: format!("p{index}"), degree: exact(degree), rule });
    }
    Ok(ChainReport { product, factors })
}
