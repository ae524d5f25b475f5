//! Exact arithmetic in Q(φ).
//!
//! Here φ is the *small* golden ratio, φ = (√5 − 1)/2 ≈ 0.618, the positive
//! root of φ² = 1 − φ. It is not the 1.618 conjugate that the name often
//! refers to; the two are related by 1/φ = 1 + φ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::Rational;

/// Float value of φ = (√5 − 1)/2.
pub const PHI: f64 = 0.618_033_988_749_894_9;

/// The number `a + b·φ` with rational `a`, `b`.
///
/// Since {1, φ} is a Q-basis of Q(φ) the pair `(a, b)` is unique.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldenNumber {
    pub a: Rational,
    pub b: Rational,
}

impl GoldenNumber {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(Rational::from_integer(a), Rational::from_integer(b))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * PHI
    }

    /// Galois conjugate, sending φ to the other root −1 − φ of x² + x − 1.
    pub fn conjugate(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm `a² − ab − b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b - &self.b * &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero in Q(phi)");
        let c = self.conjugate();
        Self::new(&c.a / &n, &c.b / &n)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }
}

/// Fibonacci numbers with F₀ = F₁ = 1.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut prev, mut cur) = (BigInt::one(), BigInt::one());
    for _ in 1..n {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: &Rational| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                r.to_string()
            }
        };
        if self.b.is_negative() {
            write!(f, "{} - {}φ", show(&self.a), show(&self.b.abs()))
        } else {
            write!(f, "{} + {}φ", show(&self.a), show(&self.b))
        }
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl<'b> Add<&'b GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &'b GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'b> Sub<&'b GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &'b GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'b> Mul<&'b GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    // (a + bφ)(c + dφ) = ac + (ad + bc)φ + bdφ², with φ² = 1 − φ
    fn mul(self, rhs: &'b GoldenNumber) -> GoldenNumber {
        let bd = &self.b * &rhs.b;
        GoldenNumber::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - bd,
        )
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'b> Div<&'b GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn div(self, rhs: &'b GoldenNumber) -> GoldenNumber {
        self * &rhs.recip()
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-&self.a, -&self.b)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}
