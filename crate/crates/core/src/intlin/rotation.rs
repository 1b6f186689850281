//! Points of the circle group `R/Z`, written as reduced fractions of a turn.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use super::IntLinError;

/// `exp(2 pi i p/q)` stored as `p/q` with `0 <= p < q` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalRotation {
    num: i64,
    den: i64,
}

impl RationalRotation {
    pub const ZERO: RationalRotation = RationalRotation { num: 0, den: 1 };
    pub const HALF: RationalRotation = RationalRotation { num: 1, den: 2 };

    /// Reduces `p/q` modulo 1. Fails for `q == 0`.
    pub fn new(p: i64, q: i64) -> Result<Self, IntLinError> {
        if q == 0 {
            return Err(IntLinError::InvalidArgument("zero denominator".into()));
        }
        let (p, q) = if q < 0 {
            (-(p as i128), -(q as i128))
        } else {
            (p as i128, q as i128)
        };
        Ok(Self::from_i128(p, q))
    }

    fn from_i128(p: i128, q: i128) -> Self {
        let p = p.mod_floor(&q);
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        Self {
            num: i64::try_from(p).expect("rotation numerator fits i64"),
            den: i64::try_from(q).expect("rotation denominator fits i64"),
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Order of the point in `R/Z`.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `k`-fold sum.
    pub fn times(&self, k: i64) -> Self {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    /// The two square roots of `self` in `R/Z`: `x/2` and `x/2 + 1/2`.
    pub fn halves(&self) -> [Self; 2] {
        let h = Self::from_i128(self.num as i128, 2 * self.den as i128);
        [h, h + Self::HALF]
    }
}

impl Default for RationalRotation {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RationalRotation {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let l = (self.den as i128).lcm(&(rhs.den as i128));
        let p = self.num as i128 * (l / self.den as i128) + rhs.num as i128 * (l / rhs.den as i128);
        Self::from_i128(p, l)
    }
}

impl Neg for RationalRotation {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_i128(-(self.num as i128), self.den as i128)
    }
}

impl Sub for RationalRotation {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl std::iter::Sum for RationalRotation {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl PartialOrd for RationalRotation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by the representative in `[0, 1)`.
impl Ord for RationalRotation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for RationalRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RationalRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalRotation {
    type Err = IntLinError;

    /// Accepts `"p/q"` or an integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IntLinError::InvalidArgument(format!("cannot parse rotation {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
            None => {
                let p: i64 = s.parse().map_err(|_| bad())?;
                Self::new(p, 1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization() {
        let r = RationalRotation::new(-1, 2).unwrap();
        assert_eq!(r, RationalRotation::HALF);
        assert_eq!(RationalRotation::new(6, 4).unwrap().to_string(), "1/2");
        assert_eq!(RationalRotation::new(3, -4).unwrap().to_string(), "1/4");
        assert!(RationalRotation::new(1, 0).is_err());
        assert_eq!("2/3".parse::<RationalRotation>().unwrap().order(), 3);
        assert!("x".parse::<RationalRotation>().is_err());
    }

    #[test]
    fn halves() {
        let [a, b] = RationalRotation::ZERO.halves();
        assert_eq!(a, RationalRotation::ZERO);
        assert_eq!(b, RationalRotation::HALF);
        let [a, b] = RationalRotation::HALF.halves();
        assert_eq!(a.to_string(), "1/4");
        assert_eq!(b.to_string(), "3/4");
    }

    proptest! {
        #[test]
        fn group_laws(a in -20i64..20, b in 1i64..12, c in -20i64..20, d in 1i64..12) {
            let x = RationalRotation::new(a, b).unwrap();
            let y = RationalRotation::new(c, d).unwrap();
            prop_assert_eq!(x + y, y + x);
            prop_assert!((x - x).is_zero());
            prop_assert_eq!(x.times(b), RationalRotation::ZERO);
            prop_assert!(x.numerator() >= 0 && x.numerator() < x.denominator());
        }
    }
}
