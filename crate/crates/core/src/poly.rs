//! Sparse multivariate polynomials over an exact field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order is
//! deterministic; canonical (monomial-order) iteration is available through
//! [`Poly::sorted_terms`]. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::PolyError;
use crate::linalg;
use crate::monomial::{Degree, ExponentVector, MonomialOrder};
use crate::scalar::{Field, Rational};
use crate::univariate::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C: Field = Rational> {
    vars: Vec<String>,
    terms: BTreeMap<ExponentVector, C>,
}

/// Polynomial with rational coefficients, the default everywhere.
pub type MultiPoly = Poly<Rational>;

impl<C: Field> Poly<C> {
    pub fn zero(vars: &[String]) -> Self {
        Poly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(ExponentVector::zero(vars.len()), c);
        p
    }

    pub fn var(vars: &[String], index: usize) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(ExponentVector::unit(vars.len(), index), C::one());
        p
    }

    pub fn monomial(vars: &[String], exps: ExponentVector, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (ExponentVector, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.arity(), vars.len(), "exponent vector arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Same terms, renamed variables (arity must match).
    pub fn with_vars(mut self, vars: &[String]) -> Self {
        assert_eq!(vars.len(), self.arity());
        self.vars = vars.to_vec();
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_constant())
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, e: &ExponentVector) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity() == other.arity() {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            })
        }
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.total_degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.get(var) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Terms in descending monomial order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&ExponentVector, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(ExponentVector, C), PolyError> {
        if order.arity() != self.arity() {
            return Err(PolyError::ArityMismatch {
                expected: order.arity(),
                found: self.arity(),
            });
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub(crate) fn leading_exponent(&self, order: &MonomialOrder) -> Option<&ExponentVector> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self * c * x^shift`.
    pub fn mul_term(&self, shift: &ExponentVector, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.mul(shift), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// In-place `self -= c * x^shift * other`.
    pub(crate) fn sub_scaled(&mut self, other: &Self, shift: &ExponentVector, c: &C) {
        for (e, v) in &other.terms {
            self.add_term(e.mul(shift), -(v.clone() * c.clone()));
        }
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Ok((_, lc)) => self.scale(&(C::one() / lc)),
            Err(_) => self.clone(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.vars, C::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(&self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.total_degree())
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// Leading homogeneous part (the part of top total degree).
    pub fn leading_form(&self) -> Self {
        match self.degree() {
            Degree::NegInfinity => self.clone(),
            Degree::Finite(d) => Poly::from_terms(
                &self.vars,
                self.terms
                    .iter()
                    .filter(|(e, _)| e.total_degree() == d)
                    .map(|(e, c)| (e.clone(), c.clone())),
            ),
        }
    }

    /// Homogenizes with a new last variable.
    pub fn homogenize(&self, new_var: &str) -> Self {
        let d = self.degree().finite().unwrap_or(0);
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        Poly::from_terms(
            &vars,
            self.terms
                .iter()
                .map(|(e, c)| (e.push(d - e.total_degree()), c.clone())),
        )
    }

    /// Sets `var` to `value` and removes it from the variable list.
    pub fn dehomogenize(&self, var: usize, value: &C) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut out = Poly::zero(&vars);
        for (e, c) in &self.terms {
            let k = e.get(var);
            out.add_term(e.remove(var), c.clone() * pow_coeff(value, k));
        }
        out
    }

    /// Substitutes a constant for `var`; arity is kept.
    pub fn partial_eval(&self, var: usize, value: &C) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e.get(var);
            out.add_term(e.with(var, 0), c.clone() * pow_coeff(value, k));
        }
        out
    }

    /// Substitutes the polynomial `value` (same arity) for `var`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        assert_eq!(self.arity(), value.arity());
        let max = self.degree_in(var).unwrap_or(0);
        let mut powers = vec![Self::constant(&self.vars, C::one())];
        for k in 1..=max as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e.get(var) as usize;
            let rest = e.with(var, 0);
            for (pe, pc) in &powers[k].terms {
                out.add_term(pe.mul(&rest), pc.clone() * c.clone());
            }
        }
        out
    }

    /// `p ↦ p(L z)`: variable `z_i` becomes `Σ_j L[i][j] z_j`.
    pub fn subst_linear(&self, matrix: &[Vec<Rational>]) -> Result<Self, PolyError> {
        let n = self.arity();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(PolyError::BadMatrixShape { expected: n });
        }
        if linalg::determinant(matrix).is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(self.subst_linear_unchecked(matrix))
    }

    pub(crate) fn subst_linear_unchecked(&self, matrix: &[Vec<Rational>]) -> Self {
        let n = self.arity();
        let images: Vec<Self> = (0..n)
            .map(|i| {
                Poly::from_terms(
                    &self.vars,
                    (0..n).map(|j| (ExponentVector::unit(n, j), C::from_rational(matrix[i][j].clone()))),
                )
            })
            .collect();
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|img| vec![Self::constant(&self.vars, C::one()), img.clone()])
            .collect();
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&self.vars, c.clone());
            for (i, &k) in e.exponents().iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k > 0 {
                out.add_term(e.with(var, k - 1), c.clone() * C::from_rational(Rational::from_integer(k.into())));
            }
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.arity());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.exponents()) {
                t = t * pow_coeff(x, k);
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.arity());
        self.terms
            .iter()
            .map(|(e, c)| {
                e.exponents()
                    .iter()
                    .zip(point)
                    .fold(c.to_complex(), |t, (&k, x)| t * x.powu(k))
            })
            .sum()
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, indexed by power.
    /// Each coefficient keeps the full arity and does not involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var).map_or(0, |d| d as usize + 1);
        let mut out = vec![Poly::zero(&self.vars); d];
        for (e, c) in &self.terms {
            out[e.get(var) as usize].add_term(e.with(var, 0), c.clone());
        }
        out
    }

    /// Drops a variable the polynomial does not depend on.
    pub fn drop_var(&self, var: usize) -> Result<Self, PolyError> {
        if self.depends_on(var) {
            return Err(PolyError::NotUnivariate);
        }
        let mut vars = self.vars.clone();
        vars.remove(var);
        Ok(Poly::from_terms(
            &vars,
            self.terms.iter().map(|(e, c)| (e.remove(var), c.clone())),
        ))
    }

    /// Appends a variable the polynomial does not depend on.
    pub fn push_var(&self, name: &str) -> Self {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        Poly::from_terms(&vars, self.terms.iter().map(|(e, c)| (e.push(0), c.clone())))
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let order = MonomialOrder::graded_lex(self.arity());
        let (lt, lc) = d.leading_term(&order).ok()?;
        let inv = C::one() / lc;
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.vars);
        while let Some(e) = rem.leading_exponent(&order).cloned() {
            let shift = lt.quotient(&e)?;
            let c = rem.coeff(&e) * inv.clone();
            rem.sub_scaled(d, &shift, &c);
            q.add_term(shift, c);
        }
        Some(q)
    }
}

impl MultiPoly {
    /// Converts to a dense univariate polynomial in `var`; fails if any other
    /// variable occurs.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly, PolyError> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var).map_or(0, |d| d as usize + 1)];
        for (e, c) in &self.terms {
            if e.total_degree() != e.get(var) {
                return Err(PolyError::NotUnivariate);
            }
            coeffs[e.get(var) as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_univariate(u: &UniPoly, vars: &[String], var: usize) -> Self {
        Poly::from_terms(
            vars,
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (ExponentVector::unit(vars.len(), var).with(var, k as u32), c.clone())),
        )
    }

    /// Dense coefficients in `var` as univariate polynomials in `other`
    /// (bivariate polynomials only).
    pub fn to_bivariate(&self, var: usize, other: usize) -> Result<Vec<UniPoly>, PolyError> {
        self.coefficients_in(var)
            .iter()
            .map(|c| c.to_univariate(other))
            .collect()
    }
}

pub(crate) fn pow_coeff<C: Field>(x: &C, k: u32) -> C {
    let mut acc = C::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

impl<C: Field> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity(), o.arity(), "arity mismatch in addition");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Field> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity(), o.arity(), "arity mismatch in subtraction");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Field> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        assert_eq!(self.arity(), o.arity(), "arity mismatch in multiplication");
        let mut out = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.mul(e2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Field> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: Poly<C>) -> Poly<C> {
        &self + &o
    }
}

impl<C: Field> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: Poly<C>) -> Poly<C> {
        &self - &o
    }
}

impl<C: Field> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: Poly<C>) -> Poly<C> {
        &self * &o
    }
}

/// Variable names `x0, x1, ...` or the given list.
pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::{int, rat};

    fn xy() -> Vec<String> {
        var_names(&["x", "y"])
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn leading_terms() {
        let o = MonomialOrder::graded_lex(2);
        let (e, c) = p("y^4 + x*y^3").leading_term(&o).unwrap();
        assert_eq!(e.exponents(), &[1, 3]);
        assert_eq!(c, int(1));
        let (e, c) = p("5").leading_term(&o).unwrap();
        assert!(e.is_constant());
        assert_eq!(c, int(5));
        let (e, _) = p("x^2 + x").leading_term(&o).unwrap();
        assert_eq!(e.exponents(), &[2, 0]);
        assert_eq!(p("0").leading_term(&o), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn swap_substitution() {
        let swap = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(p("y^2 - x").subst_linear(&swap).unwrap(), p("x^2 - y"));
        let singular = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(p("x").subst_linear(&singular), Err(PolyError::SingularMatrix));
    }

    #[test]
    fn zero_absorbs() {
        assert!((&p("x^3 - y + 2") * &p("0")).is_zero());
        assert_eq!(p("0").degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn homogenize_curve() {
        let h = p("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1").homogenize("t");
        let vars = var_names(&["x", "y", "t"]);
        let expect = parse_poly("y^4 + x*y^3 + x*y^2*t + x^2*y*t + x^2*t^2 + t^4", &vars).unwrap();
        assert_eq!(h, expect);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(2, &int(1)), p("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1"));
        let c = p("7").homogenize("t");
        assert_eq!(c.constant_value(), Some(int(7)));
    }

    #[test]
    fn leading_form_and_parts() {
        let q = p("y^3 - x^2*y + x + 1");
        assert_eq!(q.leading_form(), p("y^3 - x^2*y"));
        let parts = q.homogeneous_parts();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&0], p("1"));
    }

    #[test]
    fn substitution_and_evaluation() {
        let q = p("y^2 - x");
        assert_eq!(q.substitute(1, &p("x + 1")), p("x^2 + x + 1"));
        assert_eq!(q.partial_eval(0, &int(4)), p("y^2 - 4"));
        assert_eq!(q.eval(&[int(2), rat(1, 2)]), rat(-7, 4));
        assert_eq!(q.derivative(1), p("2*y"));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        assert_eq!(a.exact_div(&p("x - y")), Some(p("x + y")));
        assert_eq!(a.exact_div(&p("x + 2")), None);
    }
}

impl<C: Field> std::fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::parse::serialize_poly(self, &MonomialOrder::graded_lex(self.arity())))
    }
}
