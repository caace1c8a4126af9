//! Exact scalars: rationals and the real quadratic field Q(sqrt D).
//!
//! Weight vectors of a preorder live in a single real quadratic field. Every
//! sign decision is made with rational arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            s.parse().map_err(|_| Error::parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// A real quadratic field Q(sqrt D) with D squarefree and at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: u64,
}

impl Default for QuadField {
    fn default() -> Self {
        QuadField { d: 2 }
    }
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d < 2 || !is_squarefree(d as u64) {
            return Err(Error::InvalidField(d));
        }
        Ok(QuadField { d: d as u64 })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadExt {
        QuadExt { a, b, d: self.d }
    }

    pub fn rational(&self, a: Rational) -> QuadExt {
        self.elem(a, Rational::zero())
    }

    pub fn int(&self, a: i64) -> QuadExt {
        self.rational(rat(a))
    }

    /// `sqrt(D)` itself.
    pub fn root(&self) -> QuadExt {
        self.elem(Rational::zero(), Rational::one())
    }

    pub fn zero(&self) -> QuadExt {
        self.int(0)
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// The real number `a + b * sqrt(D)` with rational `a`, `b`.
///
/// Values with `b = 0` are plain rationals and combine with elements of any
/// field. Combining two irrational values from different fields panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl std::hash::Hash for QuadExt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl QuadExt {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn joint_d(&self, other: &QuadExt) -> u64 {
        if self.b.is_zero() {
            other.d
        } else if other.b.is_zero() || self.d == other.d {
            self.d
        } else {
            panic!("mixing Q(sqrt {}) with Q(sqrt {})", self.d, other.d)
        }
    }

    /// Exact sign of `a + b sqrt(D)`.
    ///
    /// When `a` and `b` have opposite signs the magnitudes `a^2` and `D b^2`
    /// decide; they never coincide because `D` is not a square.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
                if a2 > db2 {
                    sa
                } else {
                    sa.reverse()
                }
            }
        }
    }

    pub fn sign(&self) -> i8 {
        match self.signum() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> QuadExt {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a - b sqrt(D)`.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a^2 - D b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn scale(&self, r: &Rational) -> QuadExt {
        QuadExt { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, other: &QuadExt) -> Option<QuadExt> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        Some((self * &other.conjugate()).scale(&n.recip()))
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadField::default().rational(a)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt{}", self.b, self.d),
            (false, false) if self.b.is_negative() => write!(f, "{}-{}*sqrt{}", self.a, -&self.b, self.d),
            (false, false) => write!(f, "{}+{}*sqrt{}", self.a, self.b, self.d),
        }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.joint_d(rhs) }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.joint_d(rhs) }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let d = self.joint_d(rhs);
        let dr = Rational::from_integer(BigInt::from(d));
        QuadExt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dr,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        &self + &rhs
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        &self - &rhs
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        &self * &rhs
    }
}

/// Dot product of a rational vector with a vector over Q(sqrt D).
pub fn dot_rational(u: &[Rational], w: &[QuadExt]) -> QuadExt {
    debug_assert_eq!(u.len(), w.len());
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut d = QuadField::default().d;
    for (ui, wi) in u.iter().zip(w) {
        if ui.is_zero() {
            continue;
        }
        a += ui * &wi.a;
        if !wi.b.is_zero() {
            b += ui * &wi.b;
            d = wi.d;
        }
    }
    QuadExt { a, b, d }
}

/// Sign of `a + b sqrt(D)` given as bare components.
pub fn sign(x: &QuadExt) -> i8 {
    x.sign()
}
