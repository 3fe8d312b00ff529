//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{format_rational, to_f64, Field, Gaussian, Rational};

/// Coefficients in ascending order; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x - a`.
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Order of vanishing at 0.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rational::one() / lc))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_gaussian(&self, x: &Gaussian) -> Gaussian {
        let mut acc = Gaussian::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + Gaussian::real(c.clone());
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Polynomial long division. Panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = Rational::one() / d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Monic squarefree part.
    pub fn squarefree(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm: monic squarefree factors `a_i` with
    /// `self = lc * Π a_i^i`. Returns `(a_i, i)` for nonconstant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = fp.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Multiplicity of `factor` (nonconstant) as a divisor of `self`.
    pub fn multiplicity_of(&self, factor: &UniPoly) -> u32 {
        if self.is_zero() || factor.is_constant() {
            return 0;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        k
    }

    /// `x^deg * self(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        self.compose(&Self::new(vec![a.clone(), Rational::one()]))
    }

    /// Divides out the largest power of `x`.
    pub fn strip_low(&self) -> Self {
        match self.low_order() {
            Some(k) => Self::new(self.coeffs[k..].to_vec()),
            None => Self::zero(),
        }
    }

    /// Rescaled so the coefficients are coprime integers with a positive
    /// leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let den = crate::scalar::lcm_denominators(self.coeffs.iter());
        let ints: Vec<_> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints[0].clone();
        for v in &ints[1..] {
            g = g.gcd(v);
        }
        let mut out = Self::new(ints.into_iter().map(|v| Rational::new(v, g.clone())).collect());
        if out.leading_coeff() < Rational::zero() {
            out = -&out;
        }
        out
    }

    /// Renders with the given variable name, descending powers.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", format_rational(&a), mono));
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, o: UniPoly) -> UniPoly {
        &self + &o
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, o: UniPoly) -> UniPoly {
        &self - &o
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        &self * &o
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Horner evaluation of rational coefficients at a field element.
pub fn eval_in<C: Field>(coeffs: &[Rational], x: &C) -> C {
    let mut acc = C::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + C::from_rational(c.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn divrem_and_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UniPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UniPoly::from_ints(&[1, 1]).pow(2)), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let f = &UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[2, 1]).pow(3);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(UniPoly::from_ints(&[-1, 1]), 1), (UniPoly::from_ints(&[2, 1]), 3)]);
        assert_eq!(f.squarefree(), UniPoly::from_ints(&[-2, 1, 1]));
        assert_eq!(f.multiplicity_of(&UniPoly::from_ints(&[2, 1])), 3);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[1, 0, -2, 1]).to_string(), "x^3 - 2*x^2 + 1");
        assert_eq!(UniPoly::from_ints(&[0, -1]).to_string(), "-x");
        assert_eq!(UniPoly::new(vec![crate::scalar::rat(1, 2)]).to_string(), "1/2");
    }

    #[test]
    fn primitive_part() {
        let f = UniPoly::new(vec![crate::scalar::rat(-1, 2), crate::scalar::rat(-3, 4)]);
        assert_eq!(f.primitive(), UniPoly::from_ints(&[2, 3]));
        assert_eq!(f.shift(&int(1)), UniPoly::new(vec![crate::scalar::rat(-5, 4), crate::scalar::rat(-3, 4)]));
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-5i64..=5, 0..6).prop_map(|v| UniPoly::from_ints(&v))
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn yun_product(a in arb_poly(), b in arb_poly()) {
            let f = &(&a * &b) * &b;
            prop_assume!(!f.is_constant());
            let mut prod = UniPoly::constant(f.leading_coeff());
            for (g, k) in f.squarefree_decomposition() {
                prod = &prod * &g.pow(k);
            }
            prop_assert_eq!(prod, f);
        }
    }
}
