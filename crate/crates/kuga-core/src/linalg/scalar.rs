//! Scalar fields the matrix layer is generic over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Complex double-precision scalar.
pub type C64 = num_complex::Complex<f64>;

/// A field of scalars the dense matrix type can be instantiated over.
///
/// Implementations: [`C64`] (the workhorse), `f64` (real-coordinate
/// assemblies), and [`Qi`] (exact Gaussian rationals for the structural
/// identities that must hold with no rounding).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;

    /// The imaginary unit.
    ///
    /// # Panics
    /// Panics for `f64`, which has no imaginary unit; real-coordinate
    /// code never constructs one.
    fn i() -> Self;

    fn from_i64(n: i64) -> Self;

    /// Exact rational value `p/q`.
    ///
    /// # Panics
    /// Panics if `q == 0`.
    fn from_ratio(p: i64, q: i64) -> Self;

    /// Complex conjugate (identity on real scalars).
    fn conj(&self) -> Self;

    /// The real part, as a scalar of the same field.
    fn real_part(&self) -> Self;

    /// Modulus as an `f64` (approximate for exact scalars).
    fn abs_f64(&self) -> f64;

    fn is_zero(&self) -> bool;

    /// Whether this entry should be treated as zero at tolerance `tol`.
    /// Exact scalars ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Lossy conversion to a complex double.
    fn to_c64(&self) -> C64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn i() -> Self {
        panic!("the imaginary unit does not exist in the real scalar field")
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        p as f64 / q as f64
    }
    fn conj(&self) -> Self {
        *self
    }
    fn real_part(&self) -> Self {
        *self
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn to_c64(&self) -> C64 {
        C64::new(*self, 0.0)
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn i() -> Self {
        C64::new(0.0, 1.0)
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        C64::new(p as f64 / q as f64, 0.0)
    }
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }
    fn real_part(&self) -> Self {
        C64::new(self.re, 0.0)
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

/// Marker for scalars with genuine floating-point semantics, where
/// truncated power series (matrix exponentials) make sense.
pub trait FloatScalar: Scalar {
    fn from_f64(x: f64) -> Self;
}
impl FloatScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
}
impl FloatScalar for C64 {
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }
}

/// Exact Gaussian rational: `re + im·i` with big-rational parts.
///
/// Used to re-run the small structural constructions with exact
/// arithmetic, so identities like `J² = −I` are confirmed with equality
/// rather than within a tolerance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Qi { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Qi {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `p/q` as a real Gaussian rational.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Qi {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    /// `(p/q)·i`.
    pub fn ratio_i(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Qi {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(p), BigInt::from(q)),
        }
    }

    /// Squared modulus as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, rhs: Qi) -> Qi {
        Qi {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, rhs: Qi) -> Qi {
        Qi {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, rhs: Qi) -> Qi {
        Qi {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for Qi {
    type Output = Qi;
    fn div(self, rhs: Qi) -> Qi {
        let d = rhs.norm_sqr();
        assert!(!d.is_zero(), "division by zero Gaussian rational");
        Qi {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        }
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Scalar for Qi {
    fn zero() -> Self {
        Qi {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> Self {
        Qi {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    fn i() -> Self {
        Qi {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }
    fn from_i64(n: i64) -> Self {
        Qi::from_int(n)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Qi::ratio(p, q)
    }
    fn conj(&self) -> Self {
        Qi {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn real_part(&self) -> Self {
        Qi {
            re: self.re.clone(),
            im: BigRational::zero(),
        }
    }
    fn abs_f64(&self) -> f64 {
        let n = self.norm_sqr();
        n.to_f64().map(|x| x.sqrt()).unwrap_or(f64::INFINITY)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}
