//! Newton polygons at infinity of plane curves and their branch data.
//!
//! For `P(x, y)` of total degree `D`, the transform `P̃(s, t)` replaces each
//! term `x^j y^k` by `s^{D-j-k} t^k`; this is `P` in the chart
//! `(s, t) = (1/x, y/x)` up to the factor `s^D`. Support points are written
//! `(a, b)` = (t-exponent, s-exponent). A lower segment of slope `-γ₁` yields
//! branches `t ≈ c s^{γ₁}`, i.e. `y ≈ c x^{1-γ₁}`.

pub mod hull;
pub mod plot;
pub mod series;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::NewtonError;
use crate::monomial::ExponentVector;
use crate::poly::MultiPoly;
use crate::roots;
use crate::scalar::{format_rational, to_f64, Rational};
use crate::univariate::UniPoly;

pub use series::{extend_series, PuiseuxTerm, SeriesReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub left: (u32, u32),
    pub right: (u32, u32),
    /// `db/da`; strictly increasing along the lower hull.
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
    /// Primitive direction vector from left to right.
    pub direction: (i64, i64),
    /// Horizontal extent `right.a - left.a`.
    pub lattice_width: u32,
    /// Support points on the segment, left to right.
    pub points: Vec<(u32, u32)>,
}

impl Segment {
    /// `γ₁ = -slope`.
    pub fn gamma1(&self) -> Rational {
        -self.slope.clone()
    }

    /// Growth exponent of `y` in `x` along the segment's branches.
    pub fn gamma(&self) -> Rational {
        Rational::one() - self.gamma1()
    }

    /// `min (b + γ₁ a)` over the support, attained on the segment.
    pub fn height(&self) -> Rational {
        Rational::from_integer(self.left.1.into()) + self.gamma1() * Rational::from_integer(self.left.0.into())
    }
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Support of `P̃`, sorted.
    pub support: Vec<(u32, u32)>,
    /// Full convex hull, counter-clockwise from the leftmost-lowest vertex.
    pub hull: Vec<(u32, u32)>,
    pub lower_segments: Vec<Segment>,
}

fn check_plane(p: &MultiPoly) -> Result<(), NewtonError> {
    if p.arity() != 2 || p.is_zero() {
        Err(NewtonError::NotBivariate)
    } else {
        Ok(())
    }
}

/// `P̃` in variables `(s, t)`.
pub fn transform(p: &MultiPoly) -> Result<MultiPoly, NewtonError> {
    check_plane(p)?;
    let d = p.degree().finite().unwrap();
    let vars = vec!["s".to_string(), "t".to_string()];
    Ok(MultiPoly::from_terms(
        &vars,
        p.terms().map(|(e, c)| {
            let (j, k) = (e.get(0), e.get(1));
            (ExponentVector::new(vec![d - j - k, k]), c.clone())
        }),
    ))
}

/// Newton polygon of a polynomial in `(s, t)`.
pub fn polygon_of(pt: &MultiPoly) -> NewtonPolygon {
    let mut support: Vec<(u32, u32)> = pt.terms().map(|(e, _)| (e.get(1), e.get(0))).collect();
    support.sort_unstable();
    let pts: Vec<hull::Point> = support.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
    let lower = hull::lower_hull(&pts);
    let full = hull::convex_hull(&pts);
    let mut lower_segments = Vec::new();
    for w in lower.windows(2) {
        let (l, r) = (w[0], w[1]);
        let (da, db) = (r.0 - l.0, r.1 - l.1);
        let g = da.gcd(&db).abs();
        let slope = Rational::new(db.into(), da.into());
        let on: Vec<(u32, u32)> = support
            .iter()
            .copied()
            .filter(|&(a, b)| {
                let (a, b) = (a as i64, b as i64);
                a >= l.0 && a <= r.0 && (a - l.0) * db == (b - l.1) * da
            })
            .collect();
        lower_segments.push(Segment {
            left: (l.0 as u32, l.1 as u32),
            right: (r.0 as u32, r.1 as u32),
            slope,
            direction: (da / g, db / g),
            lattice_width: da as u32,
            points: on,
        });
    }
    NewtonPolygon {
        support,
        hull: full.into_iter().map(|(a, b)| (a as u32, b as u32)).collect(),
        lower_segments,
    }
}

pub fn polygon_at_infinity(p: &MultiPoly) -> Result<(MultiPoly, NewtonPolygon), NewtonError> {
    let pt = transform(p)?;
    let poly = polygon_of(&pt);
    Ok((pt, poly))
}

pub fn lower_segments(poly: &NewtonPolygon) -> &[Segment] {
    &poly.lower_segments
}

/// `(gamma, width)` per lower segment, left to right.
pub fn leading_exponents(p: &MultiPoly) -> Result<Vec<(Rational, u32)>, NewtonError> {
    let (_, poly) = polygon_at_infinity(p)?;
    Ok(poly.lower_segments.iter().map(|s| (s.gamma(), s.lattice_width)).collect())
}

/// Edge polynomial `E(c) = Σ coeff · c^a` over the support points on the
/// segment (the common power of `s` divided out).
pub fn edge_polynomial(pt: &MultiPoly, poly: &NewtonPolygon, segment: &Segment) -> Result<UniPoly, NewtonError> {
    if !poly.lower_segments.contains(segment) {
        return Err(NewtonError::SegmentNotOnPolygon);
    }
    let mut coeffs = vec![Rational::zero(); segment.right.0 as usize + 1];
    for &(a, b) in &segment.points {
        coeffs[a as usize] = pt.coeff(&ExponentVector::new(vec![b, a]));
    }
    Ok(UniPoly::new(coeffs))
}

/// One leading coefficient `c` of a branch family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffRoot {
    /// Monic squarefree factor of the reduced edge polynomial vanishing at `c`.
    #[serde(serialize_with = "ser_unipoly_c")]
    pub factor: UniPoly,
    pub multiplicity: u32,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// Exact value when the factor is linear.
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<Rational>,
}

fn ser_unipoly_c<S: serde::Serializer>(u: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&u.format_with("c"))
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&roots::format_complex(*z, 9))
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rational(r)),
        None => s.serialize_none(),
    }
}

impl CoeffRoot {
    pub fn display(&self) -> String {
        match &self.exact {
            Some(r) => format_rational(r),
            None => roots::format_complex(self.value, 6),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchEntry {
    pub segment_index: usize,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub gamma1: Rational,
    pub width: u32,
    /// Full edge polynomial.
    #[serde(serialize_with = "ser_unipoly_c")]
    pub edge_poly: UniPoly,
    /// Edge polynomial with the power of `c` divided out; its degree is
    /// the width and its roots are the nonzero leading coefficients.
    #[serde(serialize_with = "ser_unipoly_c")]
    pub reduced_edge_poly: UniPoly,
    /// Roots ordered by multiplicity, then numerically.
    pub coeff_roots: Vec<CoeffRoot>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchSet {
    pub entries: Vec<BranchEntry>,
    pub total: u32,
    /// Some gamma exceeds 1, which rules out a Noether presentation.
    pub gamma_exceeds_one: bool,
}

impl BranchSet {
    /// Each root with its family: `(entry, root)` in report order.
    pub fn branches(&self) -> impl Iterator<Item = (&BranchEntry, &CoeffRoot)> {
        self.entries.iter().flat_map(|e| e.coeff_roots.iter().map(move |r| (e, r)))
    }

    /// `Σ width · gamma`.
    pub fn weighted_gamma_sum(&self) -> Rational {
        self.entries
            .iter()
            .map(|e| &e.gamma * Rational::from_integer(e.width.into()))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Exact rational value of a numeric root of `f`, if it has one.
pub(crate) fn rational_root(f: &UniPoly, z: Complex64) -> Option<Rational> {
    if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
        return None;
    }
    let prim = f.primitive();
    let lead = prim.leading_coeff().numer().magnitude().clone();
    let lead = lead.to_u64().filter(|&l| l <= 100_000)?;
    (1..=lead).filter(|q| lead % q == 0).find_map(|q| {
        let r = Rational::from_f64(z.re * q as f64)?.round() / Rational::from_integer((q as i64).into());
        let close = (to_f64(&r) - z.re).abs() <= 1e-6 * (1.0 + z.norm());
        (close && f.eval(&r).is_zero()).then_some(r)
    })
}

fn coeff_roots_of(reduced: &UniPoly) -> Result<Vec<CoeffRoot>, NewtonError> {
    let mut out = Vec::new();
    for (factor, mult) in reduced.squarefree_decomposition() {
        for z in roots::roots(&factor)? {
            match rational_root(&factor, z) {
                Some(r) => out.push(CoeffRoot {
                    factor: UniPoly::linear_root(r.clone()),
                    multiplicity: mult,
                    value: Complex64::new(to_f64(&r), 0.0),
                    exact: Some(r),
                }),
                None => out.push(CoeffRoot { factor: factor.clone(), multiplicity: mult, value: z, exact: None }),
            }
        }
    }
    out.sort_by(|a, b| {
        a.multiplicity.cmp(&b.multiplicity).then_with(|| {
            let mut v = [a.value, b.value];
            roots::sort_roots(&mut v);
            if v[0] == a.value && a.value != b.value {
                std::cmp::Ordering::Less
            } else if a.value == b.value {
                std::cmp::Ordering::Equal
            } else {
                std::cmp::Ordering::Greater
            }
        })
    });
    Ok(out)
}

/// Branch data from every lower segment, without the width check.
pub fn branch_set_unchecked(p: &MultiPoly) -> Result<BranchSet, NewtonError> {
    let (pt, poly) = polygon_at_infinity(p)?;
    let mut entries = Vec::new();
    for (i, seg) in poly.lower_segments.iter().enumerate() {
        let edge = edge_polynomial(&pt, &poly, seg)?;
        let reduced = edge.strip_low();
        let coeff_roots = coeff_roots_of(&reduced)?;
        entries.push(BranchEntry {
            segment_index: i,
            gamma: seg.gamma(),
            gamma1: seg.gamma1(),
            width: seg.lattice_width,
            edge_poly: edge,
            reduced_edge_poly: reduced,
            coeff_roots,
        });
    }
    let total = entries.iter().map(|e| e.width).sum();
    let gamma_exceeds_one = entries.iter().any(|e| e.gamma > Rational::one());
    Ok(BranchSet { entries, total, gamma_exceeds_one })
}

/// Branch set, checked against `deg_y(P)`.
pub fn branch_set(p: &MultiPoly) -> Result<BranchSet, NewtonError> {
    let bs = branch_set_unchecked(p)?;
    let expected = p.degree_in(1).unwrap_or(0);
    if bs.total != expected {
        return Err(NewtonError::WidthMismatch { total: bs.total, expected });
    }
    Ok(bs)
}
