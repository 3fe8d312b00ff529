//! Exact scalars: rationals, Gaussian rationals, and the `Field` trait the
//! polynomial arithmetic is generic over.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational; always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: fall back to a scaled quotient.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
        let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Canonical text form used by the serializer: `3`, `-7`, `3/2`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a` or `a/b` (optional leading minus).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Smallest rational of the form k/1024 whose `e`-th power is at least `c`.
/// Used to round real roots of rational bounds upward without losing validity.
pub fn ceil_root(c: &Rational, e: u32) -> Rational {
    assert!(e >= 1);
    if !c.is_positive() {
        return Rational::zero();
    }
    if e == 1 {
        return c.clone();
    }
    let scale = BigInt::from(1024);
    let guess = to_f64(c).powf(1.0 / e as f64) * 1024.0;
    let mut k = BigInt::from(guess.floor().max(0.0) as i64);
    let pow_ok = |k: &BigInt| -> bool {
        let r = Rational::new(k.clone(), scale.clone());
        num_traits::pow(r, e as usize) >= *c
    };
    while k.is_positive() && pow_ok(&(&k - 1)) {
        k -= 1;
    }
    while !pow_ok(&k) {
        k += 1;
    }
    Rational::new(k, scale)
}

/// Rational with denominator at most `max_denom` nearest to `x`, if it lies
/// within `tol`.
pub fn identify_rational(x: f64, max_denom: u32, tol: f64) -> Option<Rational> {
    let mut best: Option<(f64, Rational)> = None;
    for q in 1..=max_denom.max(1) {
        let p = (x * q as f64).round();
        let err = (x - p / q as f64).abs();
        if err <= tol && best.as_ref().map_or(true, |(e, _)| err < *e - 1e-15) {
            best = Some((err, rat(p as i64, q as i64)));
        }
    }
    best.map(|(_, r)| r)
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Coefficient field for the sparse polynomial type.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_rational(r: Rational) -> Self;
    fn to_complex(&self) -> Complex64;
    /// `Some(i)` when the field contains a square root of -1 the parser should
    /// expose as the identifier `i`.
    fn imaginary_unit() -> Option<Self>;
    /// Real rational value, when the element has one.
    fn as_rational(&self) -> Option<Rational>;
    /// Sign convention used by the serializer to print `a - b` instead of
    /// `a + -b`.
    fn is_negative(&self) -> bool;
    /// Text that parses back to the same value and can be followed by `*m`.
    fn format_coeff(&self) -> String;
    /// Absolute value bound |c| used by growth estimates (exact for rationals,
    /// |re| + |im| for Gaussian numbers).
    fn abs_bound(&self) -> Rational;
    fn to_gaussian(&self) -> Gaussian;
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(self), 0.0)
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn format_coeff(&self) -> String {
        format_rational(self)
    }
    fn abs_bound(&self) -> Rational {
        self.abs()
    }
    fn to_gaussian(&self) -> Gaussian {
        Gaussian::real(self.clone())
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gaussian {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact value of a complex double.
    pub fn from_complex(z: Complex64) -> Self {
        Gaussian::new(from_f64(z.re), from_f64(z.im))
    }

    /// Rounds both parts to the grid 2^-bits, keeping numbers small during
    /// iterative refinement.
    pub fn round_to_bits(&self, bits: u32) -> Self {
        let scale = Rational::from_integer(BigInt::one() << bits as usize);
        let round = |r: &Rational| (r * &scale).round() / &scale;
        Gaussian::new(round(&self.re), round(&self.im))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_coeff())
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::real(Rational::one())
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Gaussian::new(re, im)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    /// Panics on division by zero, like `Rational`.
    fn div(self, o: Gaussian) -> Gaussian {
        let n = o.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let num = self * o.conj();
        Gaussian::new(num.re / &n, num.im / n)
    }
}

impl Field for Gaussian {
    fn from_rational(r: Rational) -> Self {
        Gaussian::real(r)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Gaussian::i())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
    fn is_negative(&self) -> bool {
        if self.re.is_zero() {
            Signed::is_negative(&self.im)
        } else {
            Signed::is_negative(&self.re)
        }
    }
    fn format_coeff(&self) -> String {
        if self.im.is_zero() {
            return format_rational(&self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", format_rational(&self.im))
        };
        if self.re.is_zero() {
            return im;
        }
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", format_rational(&im_abs))
        };
        let sign = if Signed::is_negative(&self.im) { '-' } else { '+' };
        format!("({} {} {})", format_rational(&self.re), sign, im_part)
    }
    fn abs_bound(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }
    fn to_gaussian(&self) -> Gaussian {
        self.clone()
    }
}
