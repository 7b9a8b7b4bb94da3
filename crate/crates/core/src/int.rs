//! Exact integers with an `i64` fast path.
//!
//! Every arithmetic operation first tries the checked 64-bit variant and
//! promotes to [`BigInt`] on overflow. Values that fit back into 64 bits are
//! always demoted, so the representation of a given integer is unique and
//! the derived `Eq`/`Hash` agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

/// An arbitrary-precision integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Int(Repr);

impl Int {
    pub const ZERO: Int = Int(Repr::Small(0));
    pub const ONE: Int = Int(Repr::Small(1));

    pub fn from_big(value: BigInt) -> Int {
        match value.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(value)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    /// True when the value is held in the 64-bit representation.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Least non-negative residue modulo `modulus`.
    pub fn rem_euclid(&self, modulus: u32) -> u32 {
        assert!(modulus > 0, "modulus must be positive");
        match &self.0 {
            Repr::Small(v) => v.rem_euclid(modulus as i64) as u32,
            Repr::Big(b) => {
                let m = BigInt::from(modulus);
                let r = ((b % &m) + &m) % &m;
                r.to_u32().expect("residue fits in u32")
            }
        }
    }

    pub fn is_even(&self) -> bool {
        self.rem_euclid(2) == 0
    }

    /// Exact quotient; the caller guarantees `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Int) -> Int {
        assert!(!divisor.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &divisor.0) {
            if let Some(q) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0, "inexact division");
                return Int(Repr::Small(q));
            }
        }
        let (a, b) = (self.to_big(), divisor.to_big());
        debug_assert!((&a % &b).is_zero(), "inexact division");
        Int::from_big(a / b)
    }

    /// `max(self, 0)`.
    pub fn positive_part(&self) -> Int {
        if self.signum() > 0 {
            self.clone()
        } else {
            Int::ZERO
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(Repr::Small(v))
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int(Repr::Small(v as i64))
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int(Repr::Small(v)));
        }
        let s = s.strip_prefix('+').unwrap_or(s);
        Ok(Int::from_big(s.parse::<BigInt>()?))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $assign_trait:ident, $assign:ident, $op:tt) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Int(Repr::Small(v));
                    }
                }
                Int::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                (&self).$method(rhs)
            }
        }
        impl $trait<Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                self.$method(&rhs)
            }
        }
        impl $assign_trait<&Int> for Int {
            fn $assign(&mut self, rhs: &Int) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_trait<Int> for Int {
            fn $assign(&mut self, rhs: Int) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign, +);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign, -);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign, *);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int(Repr::Small(n)),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |acc, x| acc + x)
    }
}

// Small values serialize as JSON numbers, big ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => serializer.serialize_i64(*v),
            Repr::Big(b) => serializer.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Signed(v) => Ok(Int::from(v)),
            Raw::Unsigned(v) => Ok(Int::from_big(BigInt::from(v))),
            Raw::Text(s) => s.trim().parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX) + Int::from(1);
        assert!(!big.is_small());
        assert_eq!(big.to_string(), "9223372036854775808");
        let back = big - Int::from(1);
        assert!(back.is_small());
        assert_eq!(back, Int::from(i64::MAX));
    }

    #[test]
    fn negating_min_promotes() {
        let v = -Int::from(i64::MIN);
        assert!(!v.is_small());
        assert_eq!(v.rem_euclid(4), 0);
        assert_eq!(-v, Int::from(i64::MIN));
    }

    #[test]
    fn residues_are_non_negative() {
        assert_eq!(Int::from(-1).rem_euclid(4), 3);
        assert_eq!(Int::from(-6).rem_euclid(4), 2);
        let big: Int = "-100000000000000000000001".parse().unwrap();
        assert_eq!(big.rem_euclid(4), 3);
    }

    #[test]
    fn serde_keeps_big_values() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let json = serde_json::to_string(&vec![big.clone(), Int::from(-3)]).unwrap();
        assert_eq!(json, r#"["123456789012345678901234567890",-3]"#);
        let back: Vec<Int> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![big, Int::from(-3)]);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (x, y, z) = (Int::from(a), Int::from(b), Int::from(c));
            let (bx, by, bz) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            prop_assert_eq!((&x * &y + &z).to_big(), &bx * &by + &bz);
            prop_assert_eq!((&x - &y * &z).to_big(), &bx - &by * &bz);
            prop_assert_eq!((&x * &y).cmp(&(&y * &z)), (&bx * &by).cmp(&(&by * &bz)));
        }

        #[test]
        fn exact_division_roundtrip(a in -1_000_000_000i64..1_000_000_000, b in 1i64..1_000_000) {
            let prod = Int::from(a) * Int::from(b) * Int::from(i64::MAX);
            let d = Int::from(b) * Int::from(i64::MAX);
            prop_assert_eq!(prod.div_exact(&d), Int::from(a));
        }
    }
}
