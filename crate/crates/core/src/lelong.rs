//! Lelong degrees of polynomials on Noether-presented plane curves.
//!
//! Along a branch `y ≈ c x^γ` a polynomial `q` grows like `x^e` with
//! `e = max (a + bγ)` over its monomials `x^a y^b`, unless the terms
//! attaining the maximum cancel at `c`. The Lelong degree is the branch
//! average `Σ e / deg(P)`, negative exponents included with their sign.
//! Since `P` is monic in `y`, `Res_y(P, q) = ± Π q(x, y_i(x))` and its
//! degree in `x` is `Σ e`; this gives an exact cross-check that does not
//! depend on the branch expansions.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{LelongError, NewtonError};
use crate::groebner;
use crate::monomial::{MonomialOrder, OrderKind};
use crate::newton::{self, series::BranchSeries, BranchEntry, BranchSet, CoeffRoot};
use crate::noether::{self, format_mass};
use crate::poly::MultiPoly;
use crate::resultant::resultant_bivariate;
use crate::roots;
use crate::scalar::{format_rational, to_f64, Rational};
use crate::univariate::UniPoly;

/// Depths tried, in turn, when a leading term cancels.
const EXTENSION_DEPTHS: [usize; 3] = [4, 8, 16];
const SERIES_DIGITS: usize = 20;
/// Relative size below which a numeric series coefficient counts as zero.
const CANCEL_TOL: f64 = 1e-8;
pub const IDENTIFY_TOL: f64 = 1e-6;

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub(crate) fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormDOverDeg,
    BranchAverage,
    XPolynomialRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Caveat {
    /// A branch with negative exponent enters the average with its sign.
    NegativeBranchPresent,
    /// A leading term cancelled and the exponent came from a series expansion.
    CancellationHandledNumerically,
    /// Cancellation persisted through the deepest expansion tried.
    CancellationUnresolved,
    /// Two routes that should agree did not.
    RoutesDisagree,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LelongValue {
    Exact {
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
    },
    /// Exponents located numerically, then matched to small-denominator
    /// rationals within `error`.
    Numeric {
        value: f64,
        error: f64,
        #[serde(serialize_with = "ser_opt_rational")]
        identified: Option<Rational>,
    },
    Bracket {
        #[serde(serialize_with = "ser_rational")]
        lower: Rational,
        #[serde(serialize_with = "ser_rational")]
        upper: Rational,
    },
}

impl LelongValue {
    /// Exact or identified value.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            LelongValue::Exact { value } => Some(value.clone()),
            LelongValue::Numeric { identified, .. } => identified.clone(),
            LelongValue::Bracket { .. } => None,
        }
    }

    pub fn display(&self) -> String {
        match self {
            LelongValue::Exact { value } => format_rational(value),
            LelongValue::Numeric { value, error, identified } => match identified {
                Some(r) => format!("{} (numeric, ±{error:e})", format_rational(r)),
                None => format!("{value} ±{error:e}"),
            },
            LelongValue::Bracket { lower, upper } => format!("[{}, {}]", format_rational(lower), format_rational(upper)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exponent {
    Exact {
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
    },
    Bracket {
        #[serde(serialize_with = "ser_rational")]
        lower: Rational,
        #[serde(serialize_with = "ser_rational")]
        upper: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchGrowth {
    pub segment_index: usize,
    pub root_index: usize,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational,
    /// Branches counted with multiplicity.
    pub width: u32,
    /// Leading coefficient `c` of `y`.
    pub coefficient: String,
    pub growth_exponent_of_p: Exponent,
    /// Terms of maximal weight cancelled at `c`.
    pub cancelled: bool,
    /// Leading coefficient of `q` along the branch, when known.
    #[serde(skip)]
    pub leading_value: Option<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LelongReport {
    pub value: LelongValue,
    pub method: Method,
    pub per_branch: Vec<BranchGrowth>,
    pub caveats: Vec<Caveat>,
    /// `d / deg(P)` (only for `q = y`).
    #[serde(serialize_with = "ser_opt_rational")]
    pub closed_form: Option<Rational>,
    /// `Σ width · e / deg(P)` when every exponent is exact.
    #[serde(serialize_with = "ser_opt_rational")]
    pub branch_average: Option<Rational>,
    /// `deg_x Res_y(P, q) / deg(P)`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub norm_value: Option<Rational>,
    pub normal_form: String,
    pub curve_degree: u32,
    /// `deg_L · deg(V) · (2π)`, the implied Monge–Ampère mass.
    pub mass: String,
}

fn plane(p: &MultiPoly) -> Result<(), LelongError> {
    if p.arity() != 2 {
        return Err(LelongError::NotPlane);
    }
    Ok(())
}

/// Noether check in `(x, y)`; returns `P` scaled monic and its degree.
fn noether_curve(p: &MultiPoly) -> Result<(MultiPoly, u32), LelongError> {
    plane(p)?;
    let report = noether::check_noether(std::slice::from_ref(p), 1)?;
    if !report.verdict {
        return Err(LelongError::NotNoether(report.failure_reason.expect("failed check has a reason")));
    }
    let monic = report.g_list[0].clone();
    let deg = report.d_list[0];
    if !monic.terms().any(|(e, _)| e.get(1) == 0) {
        return Err(LelongError::ReducibilitySuspected);
    }
    Ok((monic, deg))
}

/// Order with `y^{deg P}` leading, so normal forms have `deg_y < deg P`.
pub fn curve_order() -> MonomialOrder {
    MonomialOrder::with_precedence(OrderKind::GradedLex, vec![1, 0]).expect("valid precedence")
}

/// Normal form of `q` modulo `⟨P⟩`.
pub fn normal_form(q: &MultiPoly, p: &MultiPoly) -> Result<MultiPoly, LelongError> {
    q.check_compatible(p).map_err(|_| LelongError::NotPlane)?;
    Ok(groebner::reduce(q, std::slice::from_ref(p), &curve_order())?)
}

fn weight(a: u32, b: u32, gamma: &Rational) -> Rational {
    Rational::from_integer(a.into()) + gamma * Rational::from_integer(b.into())
}

/// `(E, L)`: maximal weight and the polynomial in `c` collecting the terms
/// that attain it.
fn leading_part(q: &MultiPoly, gamma: &Rational) -> (Rational, UniPoly) {
    let e = q.terms().map(|(m, _)| weight(m.get(0), m.get(1), gamma)).max().expect("nonzero");
    let deg = q.degree_in(1).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in q.terms() {
        if weight(m.get(0), m.get(1), gamma) == e {
            coeffs[m.get(1) as usize] += c;
        }
    }
    (e, UniPoly::new(coeffs))
}

fn vanishes_at(l: &UniPoly, root: &CoeffRoot) -> Result<bool, LelongError> {
    Ok(roots::vanishes_at_root(l, &root.factor, root.value, root.exact.as_ref())?)
}

/// Leading exponent of `q(x, y(x))` along a numeric branch expansion, or
/// the exponent below which it must lie when nothing nonzero is seen.
fn exponent_along(q: &MultiPoly, series: &BranchSeries, gamma: &Rational) -> Result<(Rational, Complex64), Rational> {
    let qr = series.ramification as i64;
    let qq = Rational::from_integer(qr.into());
    let index = |e: &Rational| ((gamma - e) * &qq).to_integer().to_usize().unwrap();
    let last = series.terms.iter().map(|t| index(&t.exponent)).max().unwrap_or(0);
    let (e, _) = leading_part(q, gamma);
    let offset = |a: u32, b: u32| ((&e - weight(a, b, gamma)) * &qq).to_integer().to_usize().unwrap();
    // A terminating expansion determines q(x, y(x)) completely.
    let n = if series.exact {
        q.terms().map(|(m, _)| offset(m.get(0), m.get(1)) + m.get(1) as usize * last).max().unwrap_or(0) + 1
    } else {
        last + 1
    };
    let mut y = vec![Complex64::zero(); n];
    for t in &series.terms {
        y[index(&t.exponent)] = t.coefficient;
    }
    let deg = q.degree_in(1).unwrap_or(0) as usize;
    let mut powers = vec![{
        let mut one = vec![Complex64::zero(); n];
        one[0] = Complex64::new(1.0, 0.0);
        one
    }];
    for b in 0..deg {
        let mut next = vec![Complex64::zero(); n];
        for (i, u) in powers[b].iter().enumerate() {
            for (j, v) in y.iter().enumerate().take(n - i) {
                next[i + j] += u * v;
            }
        }
        powers.push(next);
    }
    let mut out = vec![Complex64::zero(); n];
    let mut scale = 0.0;
    for (m, c) in q.terms() {
        let off = offset(m.get(0), m.get(1));
        let c = to_f64(c);
        if off == 0 {
            scale += c.abs() * y[0].norm().powi(m.get(1) as i32);
        }
        for k in off..n {
            out[k] += powers[m.get(1) as usize][k - off] * c;
        }
    }
    let scale = if scale > 0.0 { scale } else { 1.0 };
    for (k, v) in out.iter().enumerate() {
        if v.norm() > CANCEL_TOL * scale {
            return Ok((&e - Rational::new((k as i64).into(), qr.into()), *v));
        }
    }
    Err(&e - Rational::new((n as i64).into(), qr.into()))
}

struct Resolved {
    parts: Vec<(Exponent, u32, Option<Complex64>)>,
}

/// Exponents along the branch family of `root` after cancellation.
fn resolve_cancellation(
    curve: &MultiPoly,
    q: &MultiPoly,
    entry: &BranchEntry,
    root_index: usize,
) -> Result<Resolved, LelongError> {
    let root = &entry.coeff_roots[root_index];
    let mut last_upper: Option<Rational> = None;
    for &depth in &EXTENSION_DEPTHS {
        let report = match newton::extend_series(curve, entry.segment_index, root_index, depth, SERIES_DIGITS) {
            Ok(r) => r,
            Err(NewtonError::PrecisionExhausted(_)) => continue,
            Err(NewtonError::DegenerateBranch) => break,
            Err(e) => return Err(e.into()),
        };
        if report.series.len() as u32 != root.multiplicity && root.multiplicity > 1 {
            break;
        }
        let weight_each = if report.series.len() == 1 { root.multiplicity } else { 1 };
        let mut parts = Vec::new();
        let mut pending = false;
        for s in &report.series {
            match exponent_along(q, s, &entry.gamma) {
                Ok((e, v)) => parts.push((Exponent::Exact { value: e }, weight_each, Some(v))),
                Err(_) if s.exact => return Err(LelongError::VanishesOnCurve),
                Err(upper) => {
                    pending = true;
                    last_upper = Some(upper);
                }
            }
        }
        if !pending {
            return Ok(Resolved { parts });
        }
    }
    // The lower end is filled in from the norm by `tighten`.
    let (e, _) = leading_part(q, &entry.gamma);
    let upper = last_upper.unwrap_or(e);
    Ok(Resolved { parts: vec![(Exponent::Bracket { lower: upper.clone(), upper }, root.multiplicity, None)] })
}

fn growth_table(curve: &MultiPoly, q: &MultiPoly, bs: &BranchSet) -> Result<(Vec<BranchGrowth>, bool), LelongError> {
    let mut out = Vec::new();
    let mut numeric = false;
    for entry in &bs.entries {
        for (ri, root) in entry.coeff_roots.iter().enumerate() {
            let (e, l) = leading_part(q, &entry.gamma);
            let base = BranchGrowth {
                segment_index: entry.segment_index,
                root_index: ri,
                gamma: entry.gamma.clone(),
                width: root.multiplicity,
                coefficient: root.display(),
                growth_exponent_of_p: Exponent::Exact { value: e.clone() },
                cancelled: false,
                leading_value: Some(l.eval_complex(root.value)),
            };
            if !vanishes_at(&l, root)? {
                out.push(base);
                continue;
            }
            numeric = true;
            for (exp, width, value) in resolve_cancellation(curve, q, entry, ri)?.parts {
                out.push(BranchGrowth {
                    width,
                    growth_exponent_of_p: exp,
                    cancelled: true,
                    leading_value: value,
                    ..base.clone()
                });
            }
        }
    }
    Ok((out, numeric))
}

/// `deg_x Res_y(P, q) / deg(P)`; `None` if the resultant vanishes.
pub fn norm_value(q: &MultiPoly, curve: &MultiPoly) -> Result<Option<Rational>, LelongError> {
    let deg = curve.degree_in(1).unwrap_or(0);
    if q.degree_in(1).unwrap_or(0) == 0 {
        let d = q.degree().finite();
        return Ok(d.map(|d| Rational::from_integer((d * deg).into()) / Rational::from_integer(deg.into())));
    }
    let r = resultant_bivariate(curve, q, 1).map_err(|_| LelongError::NotPlane)?;
    Ok(r.degree().map(|d| Rational::new((d as i64).into(), (deg as i64).into())))
}

fn assemble(
    per_branch: Vec<BranchGrowth>,
    deg: u32,
    numeric: bool,
) -> (LelongValue, Option<Rational>, Vec<Caveat>) {
    let mut caveats = Vec::new();
    let degq = Rational::from_integer(deg.into());
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    let mut bracketed = false;
    for b in &per_branch {
        let w = Rational::from_integer(b.width.into());
        match &b.growth_exponent_of_p {
            Exponent::Exact { value } => {
                lo += &w * value;
                hi += &w * value;
                if value.is_negative() && !caveats.contains(&Caveat::NegativeBranchPresent) {
                    caveats.push(Caveat::NegativeBranchPresent);
                }
            }
            Exponent::Bracket { lower, upper } => {
                bracketed = true;
                lo += &w * lower;
                hi += &w * upper;
            }
        }
    }
    if numeric {
        caveats.push(Caveat::CancellationHandledNumerically);
    }
    if bracketed {
        caveats.push(Caveat::CancellationUnresolved);
        return (LelongValue::Bracket { lower: lo / &degq, upper: hi / &degq }, None, caveats);
    }
    let avg = lo / &degq;
    let value = if numeric {
        LelongValue::Numeric { value: to_f64(&avg), error: IDENTIFY_TOL, identified: Some(avg.clone()) }
    } else {
        LelongValue::Exact { value: avg.clone() }
    };
    (value, Some(avg), caveats)
}

/// Tightens unresolved brackets using the exact norm: an unresolved
/// exponent is at least the norm total minus the other branches' upper ends.
fn tighten(per_branch: &mut [BranchGrowth], norm_total: &Rational) {
    let uppers: Vec<Rational> = per_branch
        .iter()
        .map(|b| {
            let w = Rational::from_integer(b.width.into());
            match &b.growth_exponent_of_p {
                Exponent::Exact { value } => &w * value,
                Exponent::Bracket { upper, .. } => &w * upper,
            }
        })
        .collect();
    let total_upper: Rational = uppers.iter().fold(Rational::zero(), |a, b| a + b);
    for (i, b) in per_branch.iter_mut().enumerate() {
        let w = Rational::from_integer(b.width.into());
        if let Exponent::Bracket { lower, upper } = &mut b.growth_exponent_of_p {
            let others = &total_upper - &uppers[i];
            *lower = ((norm_total - others) / &w).min(upper.clone());
        }
    }
}

/// Lelong degree of `q` on `V(P)`.
pub fn lelong_degree(q: &MultiPoly, p: &MultiPoly) -> Result<LelongReport, LelongError> {
    let (curve, deg) = noether_curve(p)?;
    let nf = normal_form(q, &curve)?;
    if nf.is_zero() {
        return Err(LelongError::VanishesOnCurve);
    }
    // A vanishing norm means q shares a component with P.
    let norm = norm_value(&nf, &curve)?.ok_or(LelongError::VanishesOnCurve)?;
    let bs = newton::branch_set(&curve)?;
    let (mut per_branch, numeric) = growth_table(&curve, &nf, &bs)?;
    tighten(&mut per_branch, &(&norm * Rational::from_integer(deg.into())));
    let norm = Some(norm);
    let (mut value, average, mut caveats) = assemble(per_branch.clone(), deg, numeric);
    let mut method = Method::BranchAverage;
    if !nf.depends_on(1) {
        let d = Rational::from_integer(nf.degree().finite().unwrap().into());
        if average.as_ref() != Some(&d) {
            caveats.push(Caveat::RoutesDisagree);
        }
        value = LelongValue::Exact { value: d };
        method = Method::XPolynomialRule;
    }
    if let (Some(n), Some(v)) = (&norm, value.as_rational()) {
        if *n != v && !caveats.contains(&Caveat::RoutesDisagree) {
            caveats.push(Caveat::RoutesDisagree);
        }
    }
    let mass = value
        .as_rational()
        .map(|r| format_mass(&(r * Rational::from_integer(deg.into())), 1))
        .unwrap_or_else(|| "unresolved".to_string());
    Ok(LelongReport {
        value,
        method,
        per_branch,
        caveats,
        closed_form: None,
        branch_average: average,
        norm_value: norm,
        normal_form: nf.to_string(),
        curve_degree: deg,
        mass,
    })
}

/// Lelong degree of `y`: `d / deg(P)` with `d` the top pure power of `x`,
/// checked against the branch average.
pub fn lelong_degree_y(p: &MultiPoly) -> Result<LelongReport, LelongError> {
    let (curve, deg) = noether_curve(p)?;
    let d = curve.terms().filter(|(e, _)| e.get(1) == 0).map(|(e, _)| e.get(0)).max().expect("checked");
    let closed = Rational::new((d as i64).into(), (deg as i64).into());
    let y = MultiPoly::var(curve.vars(), 1);
    let mut report = lelong_degree(&y, &curve)?;
    if report.branch_average.as_ref() != Some(&closed) && !report.caveats.contains(&Caveat::RoutesDisagree) {
        report.caveats.push(Caveat::RoutesDisagree);
    }
    report.closed_form = Some(closed.clone());
    report.value = LelongValue::Exact { value: closed.clone() };
    report.method = Method::ClosedFormDOverDeg;
    report.mass = format_mass(&(closed * Rational::from_integer(deg.into())), 1);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchClass {
    BoundedBelow,
    TendsToZero,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchLimit {
    pub segment_index: usize,
    pub root_index: usize,
    pub width: u32,
    pub exponent: Exponent,
    pub class: BranchClass,
    /// Limit of `q` along a zero-exponent branch.
    pub limit: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalayageReport {
    pub branches: Vec<BranchLimit>,
    /// Replacing `log|q|` by `log⁺|q|` is justified.
    pub safe: bool,
}

/// Classifies each branch by the behaviour of `q` at infinity.
pub fn classify_balayage(q: &MultiPoly, p: &MultiPoly) -> Result<BalayageReport, LelongError> {
    let report = lelong_degree(q, p)?;
    let mut branches = Vec::new();
    for b in &report.per_branch {
        let (class, limit) = match &b.growth_exponent_of_p {
            Exponent::Exact { value } if value.is_positive() => (BranchClass::Unbounded, None),
            Exponent::Exact { value } if value.is_zero() => {
                let v = b.leading_value.unwrap_or_default();
                let class = if v.norm() > CANCEL_TOL { BranchClass::BoundedBelow } else { BranchClass::TendsToZero };
                (class, Some(roots::format_complex(v, 6)))
            }
            Exponent::Exact { .. } => (BranchClass::TendsToZero, None),
            Exponent::Bracket { upper, .. } if !upper.is_negative() => (BranchClass::Unbounded, None),
            Exponent::Bracket { .. } => (BranchClass::TendsToZero, None),
        };
        branches.push(BranchLimit {
            segment_index: b.segment_index,
            root_index: b.root_index,
            width: b.width,
            exponent: b.growth_exponent_of_p.clone(),
            class,
            limit,
        });
    }
    let safe = branches.iter().all(|b| b.class != BranchClass::TendsToZero);
    Ok(BalayageReport { branches, safe })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MovingSample {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    /// `None` when `deg_L(q)` is undefined on `V(P - t)`.
    pub value: Option<LelongValue>,
    pub error: Option<String>,
    pub equal: bool,
    /// Polygon combinatorics differ from `t = 0`, or `V(P - t)` is degenerate.
    pub non_generic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MovingReport {
    pub base: LelongValue,
    pub samples: Vec<MovingSample>,
    pub all_equal: bool,
}

/// Compares `deg_L(q)` on `V(P)` and on `V(P - t)` for each `t`.
pub fn moving_invariance(q: &MultiPoly, p: &MultiPoly, t_values: &[Rational]) -> Result<MovingReport, LelongError> {
    let base = lelong_degree(q, p)?;
    let base_shape = newton::leading_exponents(p)?;
    let mut samples = Vec::new();
    for t in t_values {
        let pt = p - &MultiPoly::constant(p.vars(), t.clone());
        let shape = newton::leading_exponents(&pt)?;
        let (value, error) = match lelong_degree(q, &pt) {
            Ok(r) => (Some(r.value), None),
            Err(e @ (LelongError::VanishesOnCurve | LelongError::ReducibilitySuspected)) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        let equal = match (value.as_ref().and_then(LelongValue::as_rational), base.value.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        };
        let non_generic = shape != base_shape || value.is_none();
        samples.push(MovingSample { t: t.clone(), value, error, equal, non_generic });
    }
    let all_equal = samples.iter().filter(|s| !s.non_generic).all(|s| s.equal);
    Ok(MovingReport { base: base.value, samples, all_equal })
}

/// Largest branch exponent of `q`: the least `d` with
/// `log|q| ≤ d log⁺|z| + A` on `V`.
pub fn max_exponent(report: &LelongReport) -> Option<Rational> {
    report
        .per_branch
        .iter()
        .map(|b| match &b.growth_exponent_of_p {
            Exponent::Exact { value } => Some(value.clone()),
            Exponent::Bracket { .. } => None,
        })
        .collect::<Option<Vec<_>>>()?
        .into_iter()
        .max()
}
