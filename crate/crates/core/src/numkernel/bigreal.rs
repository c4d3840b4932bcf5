use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Working precision, in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 200;

    /// Panics if `digits` is zero.
    pub const fn new(digits: u32) -> Self {
        assert!(digits > 0, "precision must be at least one digit");
        Precision(digits)
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Mantissa bits, with a few guard bits beyond `digits * log2(10)`.
    pub fn bits(self) -> u32 {
        (f64::from(self.0) * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }

    /// `10^(offset - digits)`, the tolerance scale used throughout.
    pub fn tol(self, offset: i32) -> BigReal {
        BigReal::ten_pow(offset - self.0 as i32, self)
    }

    /// `10^(-digits * num / den)`, e.g. `frac_tol(1, 2)` is `10^(-p/2)`.
    pub fn frac_tol(self, num: u32, den: u32) -> BigReal {
        BigReal::ten_pow(-((self.0 * num / den) as i32), self)
    }

    fn from_bits(bits: u32) -> Self {
        Precision(
            (f64::from(bits.saturating_sub(16)) / std::f64::consts::LOG2_10)
                .floor()
                .max(1.0) as u32,
        )
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

/// Extended-precision real number.
///
/// Binary operations produce a result at the larger of the two operand
/// precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

impl BigReal {
    pub fn zero(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), 0))
    }

    pub fn one(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), 1))
    }

    pub fn from_int(v: i64, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), v))
    }

    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        let n = Float::with_val(prec.bits(), num);
        BigReal(Float::with_val(prec.bits(), n / den))
    }

    /// Exact conversion of a double (every finite f64 is a dyadic rational).
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), v))
    }

    /// Parses a decimal literal such as `"21.8735"` or `"1e-3"` at `prec`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::Parse(format!("cannot parse {s:?} as a real number: {e}")))?;
        let v = Float::with_val(prec.bits(), parsed);
        if !v.is_finite() {
            return Err(Error::Parse(format!("{s:?} is not a finite real number")));
        }
        Ok(BigReal(v))
    }

    pub fn pi(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), Constant::Pi))
    }

    pub fn ten_pow(e: i32, prec: Precision) -> Self {
        let ten = Float::with_val(prec.bits(), 10);
        BigReal(ten.pow(e))
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.0.prec())
    }

    /// Same value, re-rounded to `prec`.
    pub fn with_precision(&self, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_positive(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Less)
    }

    /// -1, 0 or 1.
    pub fn signum_i32(&self) -> i32 {
        match self.0.cmp0() {
            Some(Ordering::Greater) => 1,
            Some(Ordering::Less) => -1,
            _ => 0,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        BigReal(self.0.clone().sqrt())
    }

    pub fn ln(&self) -> Self {
        BigReal(self.0.clone().ln())
    }

    pub fn exp(&self) -> Self {
        BigReal(self.0.clone().exp())
    }

    pub fn gamma(&self) -> Self {
        BigReal(self.0.clone().gamma())
    }

    pub fn recip(&self) -> Self {
        BigReal(self.0.clone().recip())
    }

    pub fn powi(&self, e: i32) -> Self {
        BigReal(self.0.clone().pow(e))
    }

    pub fn pow(&self, e: &BigReal) -> Self {
        let bits = self.0.prec().max(e.0.prec());
        let base = Float::with_val(bits, &self.0);
        BigReal(base.pow(&e.0))
    }

    pub fn max<'a>(&'a self, other: &'a BigReal) -> &'a BigReal {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min<'a>(&'a self, other: &'a BigReal) -> &'a BigReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Scientific decimal string with `digits` significant digits, rounded
    /// half-to-even.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0
            .to_string_radix_round(10, Some(digits.max(1)), Round::Nearest)
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_decimal(25))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_decimal(digits))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let bits = self.0.prec().max(rhs.0.prec());
                BigReal(Float::with_val(bits, $tr::$method(&self.0, &rhs.0)))
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                $tr::$method(self, &rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<i64> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                let r = BigReal(Float::with_val(self.0.prec(), rhs));
                $tr::$method(self, &r)
            }
        }
        impl $tr<i64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                $tr::$method(&self, rhs)
            }
        }
        impl $atr<&BigReal> for BigReal {
            fn $amethod(&mut self, rhs: &BigReal) {
                *self = $tr::$method(&*self, rhs);
            }
        }
        impl $atr<BigReal> for BigReal {
            fn $amethod(&mut self, rhs: BigReal) {
                *self = $tr::$method(&*self, &rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl PartialEq<i64> for BigReal {
    fn eq(&self, other: &i64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i64> for BigReal {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

/// Sum of a sequence at `prec` (empty sums are zero).
pub fn sum<'a, I: IntoIterator<Item = &'a BigReal>>(items: I, prec: Precision) -> BigReal {
    items
        .into_iter()
        .fold(BigReal::zero(prec), |acc, x| acc + x)
}
