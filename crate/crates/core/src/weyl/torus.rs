//! Unitary torsion points of the torus `T = Hom(X, C^x)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::intlin::RationalRotation;

/// A character of `X = Z^n` with values of finite order, stored by its values
/// `t(e_i)` on the standard basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusPoint(Vec<RationalRotation>);

impl TorusPoint {
    pub fn new(values: Vec<RationalRotation>) -> Self {
        TorusPoint(values)
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint(vec![RationalRotation::ZERO; rank])
    }

    /// Parses values such as `["1/2", "0"]`.
    pub fn parse(values: &[&str]) -> Result<Self> {
        values
            .iter()
            .map(|s| {
                s.parse::<RationalRotation>()
                    .map_err(|e| Error::InvalidInput(format!("bad rotation {s:?}: {e}")))
            })
            .collect::<Result<_>>()
            .map(TorusPoint)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[RationalRotation] {
        &self.0
    }

    /// `t(x)` for `x` in `X`.
    pub fn eval(&self, x: &[i64]) -> RationalRotation {
        self.0.iter().zip(x).map(|(t, &c)| t.times(c)).sum()
    }

    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn inverse(&self) -> TorusPoint {
        TorusPoint(self.0.iter().map(|a| -*a).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(RationalRotation::is_zero)
    }

    /// Order of `t` as a group element.
    pub fn order(&self) -> i64 {
        self.0
            .iter()
            .fold(1, |acc, r| num_integer::lcm(acc, r.order()))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
