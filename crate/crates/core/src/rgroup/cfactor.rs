//! Pole orders of the rank-one c-factors
//! `c_α = (1 + q_{α^∨}^{-1/2} θ_{-α/2})(1 - q_{α^∨}^{-1/2} q_{2α^∨}^{-1} θ_{-α/2}) / (1 - θ_{-α})`
//! at unitary points, for `α ∈ R_1`.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::intlin::rational::Rat;
use crate::intlin::RationalRotation;
use crate::rootdata::{LabelFunction, RootDatum};
use crate::weyl::TorusPoint;

/// Labels `q_{α^∨}` and `q_{2α^∨}` of one factor; `q2` is `1` unless
/// `α/2 ∈ R_nr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFactorParams {
    pub q: Rat,
    pub q2: Rat,
}

impl CFactorParams {
    pub fn new(q: Rat, q2: Rat) -> Result<Self> {
        if !q.is_positive() || !q2.is_positive() {
            return Err(Error::InvalidInput("labels must be positive".into()));
        }
        Ok(CFactorParams { q, q2 })
    }

    /// The factor of root `i` of `R_0`. Its `R_1` root is `2α_i` when the
    /// double lies in `R_nr`, with `q_{2(2α_i)^∨} = q_{α_i^∨}`, and `α_i`
    /// itself otherwise.
    pub fn for_root(rd: &RootDatum, labels: &LabelFunction, i: usize) -> Self {
        match rd.nonreduced().double_of[i] {
            Some(_) => CFactorParams {
                q: labels.double_label(rd, i),
                q2: labels.root_label(i).clone(),
            },
            None => CFactorParams {
                q: labels.root_label(i).clone(),
                q2: Rat::one(),
            },
        }
    }
}

/// `t(α)` and, when `α/2 ∈ X`, `t(α/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOneValue {
    pub alpha: RationalRotation,
    pub half: Option<RationalRotation>,
}

impl RankOneValue {
    /// Values at `t` for the `R_1` root attached to root `i` of `R_0`.
    pub fn at(rd: &RootDatum, i: usize, t: &TorusPoint) -> Self {
        let a = rd.root(i);
        let v = t.eval(a);
        if rd.nonreduced().double_of[i].is_some() {
            return RankOneValue {
                alpha: v.times(2),
                half: Some(v),
            };
        }
        let half = a
            .iter()
            .all(|x| x % 2 == 0)
            .then(|| t.eval(&a.iter().map(|x| x / 2).collect::<Vec<_>>()));
        RankOneValue { alpha: v, half }
    }
}

/// Order of the pole of `c_α` at a unitary point, minus the order of its
/// zero: the denominator vanishes iff `t(α) = 1`, the first numerator factor
/// iff `q_{α^∨} = 1` and `t(α/2) = -1`, the second iff
/// `q_{α^∨} q_{2α^∨}² = 1` and `t(α/2) = 1`.
///
/// Without `t(α/2)` the two numerator factors are taken together as
/// `1 - q_{α^∨}^{-1} θ_{-α}` and `q2` is ignored.
pub fn c_factor_pole_order(params: &CFactorParams, at: &RankOneValue) -> i32 {
    let den = at.alpha.is_zero() as i32;
    let num = match at.half {
        Some(h) => {
            let first = params.q.is_one() && h == RationalRotation::HALF;
            let second = (&params.q * &params.q2 * &params.q2).is_one() && h.is_zero();
            first as i32 + second as i32
        }
        None => (params.q.is_one() && at.alpha.is_zero()) as i32,
    };
    den - num
}

/// [`c_factor_pole_order`] for root `i` of `R_0` at `t`.
pub fn root_pole_order(rd: &RootDatum, labels: &LabelFunction, i: usize, t: &TorusPoint) -> i32 {
    c_factor_pole_order(
        &CFactorParams::for_root(rd, labels, i),
        &RankOneValue::at(rd, i, t),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rational::{rat, rat_frac};

    fn rot(p: i64, q: i64) -> RationalRotation {
        RationalRotation::new(p, q).unwrap()
    }

    #[test]
    fn reduced_factor() {
        let p = CFactorParams::new(rat(2), rat(1)).unwrap();
        let at = |a| RankOneValue {
            alpha: a,
            half: None,
        };
        assert_eq!(c_factor_pole_order(&p, &at(rot(0, 1))), 1);
        assert_eq!(c_factor_pole_order(&p, &at(rot(1, 2))), 0);
        let one = CFactorParams::new(rat(1), rat(1)).unwrap();
        assert_eq!(c_factor_pole_order(&one, &at(rot(0, 1))), 0);
    }

    #[test]
    fn factor_with_half_root() {
        let p = CFactorParams::new(rat(1), rat(2)).unwrap();
        let at = |h: RationalRotation| RankOneValue {
            alpha: h.times(2),
            half: Some(h),
        };
        // t(α/2) = -1 cancels the pole, t(α/2) = 1 does not.
        assert_eq!(c_factor_pole_order(&p, &at(rot(1, 2))), 0);
        assert_eq!(c_factor_pole_order(&p, &at(rot(0, 1))), 1);
        assert_eq!(c_factor_pole_order(&p, &at(rot(1, 4))), 0);
        let one = CFactorParams::new(rat(1), rat(1)).unwrap();
        assert_eq!(c_factor_pole_order(&one, &at(rot(0, 1))), 0);
        assert_eq!(c_factor_pole_order(&one, &at(rot(1, 2))), 0);
        // q q2² = 1 with q ≠ 1.
        let inv = CFactorParams::new(rat(4), rat_frac(1, 2)).unwrap();
        assert_eq!(c_factor_pole_order(&inv, &at(rot(0, 1))), 0);
        assert_eq!(c_factor_pole_order(&inv, &at(rot(1, 2))), 1);
        assert!(CFactorParams::new(rat(0), rat(1)).is_err());
    }
}
