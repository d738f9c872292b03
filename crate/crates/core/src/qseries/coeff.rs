use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Exact integer coefficient. Machine-word values stay unboxed; results that
/// overflow `i64` are promoted to a big integer and demoted again when they fit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small(0);
    pub const ONE: Coeff = Coeff::Small(1);

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Small(v) => *v == 0,
            Coeff::Big(b) => b.is_zero(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(v) => Some(*v),
            Coeff::Big(b) => b.to_i64(),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(v) => BigInt::from(*v),
            Coeff::Big(b) => b.clone(),
        }
    }

    fn normalize(b: BigInt) -> Coeff {
        match b.to_i64() {
            Some(v) => Coeff::Small(v),
            None => Coeff::Big(b),
        }
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<BigInt> for Coeff {
    fn from(b: BigInt) -> Self {
        Coeff::normalize(b)
    }
}

impl PartialEq<i64> for Coeff {
    fn eq(&self, other: &i64) -> bool {
        self.to_i64() == Some(*other)
    }
}

impl Add for &Coeff {
    type Output = Coeff;

    fn add(self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Coeff::Small(v);
            }
        }
        Coeff::normalize(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Coeff {
    type Output = Coeff;

    fn sub(self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Coeff::Small(v);
            }
        }
        Coeff::normalize(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Coeff {
    type Output = Coeff;

    fn mul(self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Coeff::Small(v);
            }
        }
        Coeff::normalize(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Coeff {
    type Output = Coeff;

    fn neg(self) -> Coeff {
        if let Coeff::Small(a) = self {
            if let Some(v) = a.checked_neg() {
                return Coeff::Small(v);
            }
        }
        Coeff::normalize(-self.to_big())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl serde::Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coeff::Small(v) => s.serialize_i64(*v),
            Coeff::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_and_demotes() {
        let max = Coeff::from(i64::MAX);
        let sum = &max + &Coeff::ONE;
        assert!(matches!(sum, Coeff::Big(_)));
        assert_eq!(sum.to_string(), "9223372036854775808");
        let back = &sum - &Coeff::ONE;
        assert_eq!(back, Coeff::Small(i64::MAX));

        let sq = &max * &max;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        assert!(matches!(-&Coeff::from(i64::MIN), Coeff::Big(_)));
        assert!((&sum - &sum).is_zero());
    }
}
