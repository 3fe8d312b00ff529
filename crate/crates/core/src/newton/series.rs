//! Puiseux expansions at infinity along a branch, by the implicit function
//! theorem on the twisted polynomial.
//!
//! For a segment with `γ₁ = p/q` put `s = σ^q`, `t = σ^p w`. Then
//! `P̃(σ^q, σ^p w) = σ^{qh} F(σ, w)` with `F(0, w)` the edge polynomial, and a
//! simple root `c` of it lifts to a power series `w(σ)`. Back in the affine
//! chart `y = Σ w_k x^{γ - k/q}`.
//!
//! A double (or higher) root gets one refinement step: the polygon of
//! `F(σ, c + v)` is built and each of its simple roots is lifted the same way.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{branch_set_unchecked, hull, BranchEntry, CoeffRoot};
use crate::error::NewtonError;
use crate::poly::MultiPoly;
use crate::roots;
use crate::scalar::{format_rational, Field, Gaussian, Rational};
use crate::univariate::UniPoly;

/// Largest accepted `precision` in decimal digits.
pub const MAX_PRECISION: usize = 1000;
const MAX_ORDER: usize = 240;
/// Relative residuals are measured at `s = 1e-3`, i.e. `x = 1e3`.
pub const RESIDUAL_X: f64 = 1e3;

/// Sparse `Σ c σ^i w^a`, keyed by `(i, a)`.
type Bi = BTreeMap<(i64, u32), Gaussian>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PuiseuxTerm {
    /// Exponent of `x`.
    #[serde(serialize_with = "ser_rational")]
    pub exponent: Rational,
    #[serde(skip)]
    pub coefficient: Complex64,
    /// Coefficient rounded to the requested number of digits.
    #[serde(rename = "coefficient")]
    pub text: String,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchSeries {
    /// Nonzero terms by decreasing exponent.
    pub terms: Vec<PuiseuxTerm>,
    /// The listed terms sum to an exact solution.
    pub exact: bool,
    /// `y` is a series in `x^{-1/ramification}`.
    pub ramification: u32,
    /// Relative residual of `P` at `x = 1e3` for each prefix of `terms`.
    pub residuals: Vec<f64>,
}

impl BranchSeries {
    pub fn eval(&self, x: f64, len: usize) -> Complex64 {
        self.terms
            .iter()
            .take(len)
            .map(|t| t.coefficient * x.powf(crate::scalar::to_f64(&t.exponent)))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesReport {
    pub segment_index: usize,
    pub root_index: usize,
    pub multiplicity: u32,
    /// The leading root needed one refinement step.
    pub refined: bool,
    /// One entry for a simple root; one per sub-branch after refinement.
    pub series: Vec<BranchSeries>,
}

/// Relative residual `|P(x, y)| / Σ |a_jk| |x|^j |y|^k`.
pub fn relative_residual(p: &MultiPoly, x: f64, y: Complex64) -> f64 {
    let xc = Complex64::new(x, 0.0);
    let value = p.eval_complex(&[xc, y]);
    let scale: f64 = p
        .terms()
        .map(|(e, c)| crate::scalar::to_f64(c).abs() * x.abs().powi(e.get(0) as i32) * y.norm().powi(e.get(1) as i32))
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

fn add_to(m: &mut Bi, key: (i64, u32), c: Gaussian) {
    let e = m.entry(key).or_insert_with(Gaussian::zero);
    *e = e.clone() + c;
    if e.is_zero() {
        m.remove(&key);
    }
}

/// `G(τ^q, τ^p u) / τ^{min}`.
fn twist(g: &Bi, p: i64, q: i64) -> Bi {
    let lo = g.keys().map(|&(i, a)| q * i + p * a as i64).min().unwrap_or(0);
    g.iter().map(|(&(i, a), c)| ((q * i + p * a as i64 - lo, a), c.clone())).collect()
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// `G(σ, c + v)`.
fn shift(g: &Bi, c: &Gaussian) -> Bi {
    let mut out = Bi::new();
    for (&(i, a), coeff) in g {
        let mut cp = Gaussian::one();
        for k in (0..=a).rev() {
            let b = Gaussian::real(Rational::from_integer(binomial(a, k)));
            add_to(&mut out, (i, k), coeff.clone() * b * cp.clone());
            cp = cp * c.clone();
        }
    }
    out
}

/// `G(0, w)` as an exact univariate polynomial.
fn edge_of(g: &Bi) -> Option<UniPoly> {
    let deg = g.keys().filter(|k| k.0 == 0).map(|k| k.1).max()?;
    let mut coeffs = vec![Rational::zero(); deg as usize + 1];
    for (&(i, a), c) in g {
        if i == 0 {
            coeffs[a as usize] = c.as_rational()?;
        }
    }
    Some(UniPoly::new(coeffs))
}

fn mul_trunc(a: &[Gaussian], b: &[Gaussian], n: usize) -> Vec<Gaussian> {
    let mut out = vec![Gaussian::zero(); n.min(a.len() + b.len() - 1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= out.len() {
                break;
            }
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `F(σ, W)` truncated below `σ^n`.
fn eval_series(f: &Bi, w: &[Gaussian], n: usize) -> Vec<Gaussian> {
    let deg = f.keys().map(|k| k.1).max().unwrap_or(0);
    let mut powers = vec![vec![Gaussian::one()]];
    for _ in 0..deg {
        let next = mul_trunc(powers.last().unwrap(), w, n);
        powers.push(next);
    }
    let mut out = vec![Gaussian::zero(); n];
    for (&(i, a), c) in f {
        let i = i as usize;
        for (k, x) in powers[a as usize].iter().enumerate() {
            if i + k < n {
                out[i + k] = out[i + k].clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

fn vanishes(f: &Bi, w: &[Gaussian]) -> bool {
    let deg = f.keys().map(|k| k.1).max().unwrap_or(0) as usize;
    let top = f.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let n = top + deg * w.len() + 1;
    eval_series(f, w, n).iter().all(|c| c.is_zero())
}

/// Root `c` of `f` to `bits` binary digits, starting from `z`.
fn sharpen(f: &UniPoly, z: Complex64, bits: u32) -> Gaussian {
    let df = f.derivative();
    let mut g = Gaussian::from_complex(z);
    for _ in 0..12 {
        let d = df.eval_gaussian(&g);
        if d.is_zero() {
            break;
        }
        let next = (g.clone() - f.eval_gaussian(&g) / d).round_to_bits(bits);
        if next == g {
            break;
        }
        g = next;
    }
    g
}

struct Lifted {
    coeffs: Vec<Gaussian>,
    exact: bool,
}

/// Power series `w(σ)` with `F(σ, w) = 0`, `w(0) = c`, `c` a simple root of
/// `F(0, ·)`, computed until `needed` coefficients after the first exceed
/// `zero_tol` in size. Exact when `bits` is `None`.
fn lift(f: &Bi, c: Gaussian, bits: Option<u32>, needed: usize, zero_tol: f64, order: usize) -> Result<Lifted, NewtonError> {
    let fw = f
        .iter()
        .filter(|(k, _)| k.0 == 0 && k.1 > 0)
        .fold(Gaussian::zero(), |acc, (&(_, a), coeff)| {
            let mut cp = Gaussian::one();
            for _ in 1..a {
                cp = cp * c.clone();
            }
            acc + coeff.clone() * Gaussian::real(Rational::from_integer(a.into())) * cp
        });
    if fw.is_zero() {
        return Err(NewtonError::DegenerateBranch);
    }
    let bound = c.to_complex().norm().max(1.0);
    let mut w = vec![c];
    let mut found = 0;
    let mut check = true;
    for k in 1..order {
        if found >= needed {
            break;
        }
        // A terminating series must pass through a zero coefficient first.
        if bits.is_none() && check && vanishes(f, &w) {
            return Ok(Lifted { coeffs: w, exact: true });
        }
        let fk = eval_series(f, &w, k + 1).pop().unwrap();
        let mut wk = -(fk / fw.clone());
        if let Some(b) = bits {
            wk = wk.round_to_bits(b);
        }
        check = wk.is_zero();
        if !wk.is_zero() && wk.to_complex().norm() > zero_tol * bound {
            found += 1;
        }
        w.push(wk);
    }
    let exact = bits.is_none() && vanishes(f, &w);
    Ok(Lifted { coeffs: w, exact })
}

fn decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * Rational::from_integer(scale);
    let n = scaled.round().to_integer();
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    if digits > 0 {
        while s.len() <= digits {
            s.insert(0, '0');
        }
        s.insert(s.len() - digits, '.');
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg && s != "0" {
        s.insert(0, '-');
    }
    s
}

fn gaussian_text(g: &Gaussian, digits: usize) -> String {
    let (re, im) = (decimal(&g.re, digits), decimal(&g.im, digits));
    if im == "0" {
        re
    } else if re == "0" {
        format!("{im}i")
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// Collects `y = τ^{e0} Σ W_k τ^k`, `τ = x^{-1/q}`, into nonzero terms.
fn collect(w: &[Gaussian], e0: i64, q: i64, depth: usize, zero_tol: f64, digits: usize) -> Vec<PuiseuxTerm> {
    let bound = w.first().map(|c| c.to_complex().norm()).unwrap_or(1.0).max(1.0);
    w.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero() && c.to_complex().norm() > zero_tol * bound)
        .take(depth)
        .map(|(k, c)| PuiseuxTerm {
            exponent: Rational::new((-(e0 + k as i64)).into(), q.into()),
            coefficient: c.to_complex(),
            text: gaussian_text(c, digits),
        })
        .collect()
}

struct Ctx<'a> {
    p: &'a MultiPoly,
    depth: usize,
    digits: usize,
    bits: u32,
    order: usize,
}

impl Ctx<'_> {
    fn zero_tol(&self, bits: Option<u32>) -> f64 {
        if bits.is_none() {
            0.0
        } else {
            10f64.powi(-(self.digits.min(300) as i32))
        }
    }

    fn finish(&self, w: &[Gaussian], e0: i64, q: i64, exact: bool) -> Result<BranchSeries, NewtonError> {
        let zero_tol = if exact { 0.0 } else { 10f64.powi(-(self.digits.min(300) as i32)) };
        let terms = collect(w, e0, q, self.depth, zero_tol, self.digits);
        let complete = exact && terms.len() == w.iter().filter(|c| !c.is_zero()).count();
        if terms.len() < self.depth && !complete {
            return Err(NewtonError::PrecisionExhausted(self.depth));
        }
        let mut series = BranchSeries { terms, exact: complete, ramification: q as u32, residuals: Vec::new() };
        series.residuals = (1..=series.terms.len())
            .map(|n| {
                if complete && n == series.terms.len() {
                    0.0
                } else {
                    relative_residual(self.p, RESIDUAL_X, series.eval(RESIDUAL_X, n))
                }
            })
            .collect();
        Ok(series)
    }

    /// Starting value for a root of the exact factor `f`.
    fn start(&self, root: &CoeffRoot) -> (Gaussian, Option<u32>) {
        match &root.exact {
            Some(r) => (Gaussian::real(r.clone()), None),
            None => (sharpen(&root.factor, root.value, self.bits), Some(self.bits)),
        }
    }
}

fn slope_parts(gamma1: &Rational) -> (i64, i64) {
    (gamma1.numer().to_i64().unwrap(), gamma1.denom().to_i64().unwrap())
}

fn pt_terms(p: &MultiPoly) -> Result<Bi, NewtonError> {
    let pt = super::transform(p)?;
    Ok(pt.terms().map(|(e, c)| ((e.get(0) as i64, e.get(1)), Gaussian::real(c.clone()))).collect())
}

/// Expands the branch `(segment_index, root_index)` of `branch_set(p)` to
/// `depth` nonzero terms, coefficients to `precision` decimal digits.
pub fn extend_series(
    p: &MultiPoly,
    segment_index: usize,
    root_index: usize,
    depth: usize,
    precision: usize,
) -> Result<SeriesReport, NewtonError> {
    if depth == 0 || precision == 0 || precision > MAX_PRECISION {
        return Err(NewtonError::PrecisionExhausted(depth));
    }
    let bs = branch_set_unchecked(p)?;
    let entry: &BranchEntry = bs.entries.get(segment_index).ok_or(NewtonError::NoSuchBranch)?;
    let root = entry.coeff_roots.get(root_index).ok_or(NewtonError::NoSuchBranch)?;
    let (pn, q) = slope_parts(&entry.gamma1);
    let ctx = Ctx {
        p,
        depth,
        digits: precision,
        bits: (precision as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64,
        order: MAX_ORDER,
    };
    let f = twist(&pt_terms(p)?, pn, q);
    let e0 = pn - q;
    let mut report =
        SeriesReport { segment_index, root_index, multiplicity: root.multiplicity, refined: false, series: Vec::new() };
    if root.multiplicity == 1 {
        let (c, bits) = ctx.start(root);
        let lifted = lift(&f, c, bits, depth - 1, ctx.zero_tol(bits), ctx.order)?;
        report.series.push(ctx.finish(&lifted.coeffs, e0, q, lifted.exact)?);
        return Ok(report);
    }
    // One refinement level, only over an exact leading coefficient.
    let c = match &root.exact {
        Some(r) => Gaussian::real(r.clone()),
        None => return Err(NewtonError::DegenerateBranch),
    };
    report.refined = true;
    let g = shift(&f, &c);
    let zero_branches = g.keys().map(|k| k.1).min().unwrap_or(0);
    for _ in 0..zero_branches {
        report.series.push(ctx.finish(&[c.clone()], e0, q, true)?);
    }
    let support: Vec<hull::Point> = g.keys().map(|&(i, a)| (a as i64, i)).collect();
    let lower = hull::lower_hull(&support);
    for win in lower.windows(2) {
        let (l, r) = (win[0], win[1]);
        if r.0 > root.multiplicity as i64 || r.1 >= l.1 {
            continue;
        }
        let gamma = Rational::new((l.1 - r.1).into(), (r.0 - l.0).into());
        let (p2, q2) = slope_parts(&gamma);
        let h = twist(&g, p2, q2);
        let edge = edge_of(&h).ok_or(NewtonError::DegenerateBranch)?.strip_low();
        for (factor, mult) in edge.squarefree_decomposition() {
            if mult > 1 {
                return Err(NewtonError::DegenerateBranch);
            }
            let mut zs = roots::roots(&factor)?;
            roots::sort_roots(&mut zs);
            for z in zs {
                let sub = CoeffRoot { factor: factor.clone(), multiplicity: 1, value: z, exact: super::rational_root(&factor, z) };
                let (c2, bits) = ctx.start(&sub);
                let lifted = lift(&h, c2, bits, depth.saturating_sub(2), ctx.zero_tol(bits), ctx.order)?;
                // w = c + τ^{p2} u(τ) with σ = τ^{q2}.
                let mut w = vec![Gaussian::zero(); p2 as usize + lifted.coeffs.len()];
                w[0] = c.clone();
                for (k, u) in lifted.coeffs.iter().enumerate() {
                    w[p2 as usize + k] = w[p2 as usize + k].clone() + u.clone();
                }
                report.series.push(ctx.finish(&w, e0 * q2, q * q2, lifted.exact)?);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::var_names;
    use crate::scalar::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &var_names(&["x", "y"])).unwrap()
    }

    #[test]
    fn square_root_branch_is_exact() {
        for root in 0..2 {
            let r = extend_series(&p("y^2 - x"), 0, root, 3, 12).unwrap();
            let s = &r.series[0];
            assert!(s.exact);
            assert_eq!(s.terms.len(), 1);
            assert_eq!(s.terms[0].exponent, rat(1, 2));
            assert_eq!(s.residuals, vec![0.0]);
        }
    }

    #[test]
    fn constant_branch_of_the_quartic() {
        let q = p("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1");
        let r = extend_series(&q, 0, 0, 4, 15).unwrap();
        let s = &r.series[0];
        assert_eq!(s.terms[0].exponent, int(0));
        assert_eq!(s.terms[0].text, "-1");
        assert_eq!(s.ramification, 1);
        assert!(s.terms[1].exponent < int(0));
        for w in s.residuals.windows(2) {
            assert!(w[1] < w[0], "{:?}", s.residuals);
        }
    }

    #[test]
    fn half_integer_branches() {
        let q = p("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1");
        for root in 0..2 {
            let r = extend_series(&q, 1, root, 3, 20).unwrap();
            let s = &r.series[0];
            assert_eq!(s.terms[0].exponent, rat(1, 2));
            assert!((s.terms[0].coefficient.norm() - 1.0).abs() < 1e-15);
            assert!(s.residuals.last().unwrap() < &s.residuals[0]);
        }
    }

    #[test]
    fn terminating_rational_branch() {
        // branches y = x + 1 and y = -x
        let r = extend_series(&p("(y - x - 1)*(y + x)"), 0, 1, 3, 10).unwrap();
        let s = &r.series[0];
        assert!(s.exact);
        let texts: Vec<_> = s.terms.iter().map(|t| (t.exponent.clone(), t.text.clone())).collect();
        assert_eq!(texts, vec![(int(1), "1".to_string()), (int(0), "1".to_string())]);
    }

    #[test]
    fn double_root_is_refined_once() {
        // (y - x)^2 = x: leading c = 1 twice, then y = x ± x^{1/2}
        let r = extend_series(&p("(y - x)^2 - x"), 0, 0, 2, 12).unwrap();
        assert!(r.refined);
        assert_eq!(r.series.len(), 2);
        for s in &r.series {
            assert!(s.exact);
            assert_eq!(s.terms[1].exponent, rat(1, 2));
        }
        // the refined edge polynomial is (u^2 - 1)^2
        let err = extend_series(&p("((y - x)^2 - x)^2 + y"), 0, 0, 2, 12).unwrap_err();
        assert_eq!(err, NewtonError::DegenerateBranch);
    }

    #[test]
    fn bad_requests() {
        assert_eq!(extend_series(&p("y^2 - x"), 5, 0, 1, 10), Err(NewtonError::NoSuchBranch));
        assert_eq!(extend_series(&p("y^2 - x"), 0, 0, 1, 0), Err(NewtonError::PrecisionExhausted(1)));
    }

    #[test]
    fn random_monic_cubics_have_small_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vars = var_names(&["x", "y"]);
        for _ in 0..12 {
            let mut terms = vec![(vec![0u32, 3u32], 1i64), (vec![0, 0], rng.gen_range(1..=5))];
            for j in 0..=3u32 {
                for k in 0..3u32 {
                    if j + k <= 3 && j + k > 0 && rng.gen_bool(0.6) {
                        terms.push((vec![j, k], rng.gen_range(-5..=5)));
                    }
                }
            }
            let poly = MultiPoly::from_terms(
                &vars,
                terms.into_iter().map(|(e, c)| (crate::monomial::ExponentVector::new(e), int(c))),
            );
            let bs = super::super::branch_set(&poly).unwrap();
            for (si, e) in bs.entries.iter().enumerate() {
                for (ri, root) in e.coeff_roots.iter().enumerate() {
                    if root.multiplicity > 1 {
                        continue;
                    }
                    let r = extend_series(&poly, si, ri, 4, 15).unwrap();
                    let s = &r.series[0];
                    let y = s.eval(1e6, s.terms.len());
                    assert!(relative_residual(&poly, 1e6, y) < 1e-5, "{poly}: {:?}", s.terms);
                }
            }
        }
    }
}
