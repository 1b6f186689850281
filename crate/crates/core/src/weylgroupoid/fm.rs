//! Exact Fourier–Motzkin elimination for open polyhedral cones.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlin::rational::Rat;

/// Limit on the number of inequalities kept at any elimination stage.
pub const MAX_CONSTRAINTS: usize = 50_000;

type System = BTreeMap<Vec<Rat>, Rat>;

/// Scales `coef . x >= rhs` so that the first nonzero coefficient is `±1`,
/// or decides it outright when all coefficients vanish.
fn normalize(coef: Vec<Rat>, rhs: Rat) -> Option<std::result::Result<(Vec<Rat>, Rat), ()>> {
    match coef.iter().find(|c| !c.is_zero()) {
        None => {
            if rhs.is_positive() {
                Some(Err(()))
            } else {
                None
            }
        }
        Some(lead) => {
            let s = lead.abs();
            let coef = coef.iter().map(|c| c / &s).collect();
            Some(Ok((coef, rhs / s)))
        }
    }
}

fn insert(sys: &mut System, coef: Vec<Rat>, rhs: Rat) -> std::result::Result<(), ()> {
    match normalize(coef, rhs) {
        None => Ok(()),
        Some(Err(())) => Err(()),
        Some(Ok((c, r))) => {
            let e = sys.entry(c).or_insert_with(|| r.clone());
            if r > *e {
                *e = r;
            }
            Ok(())
        }
    }
}

/// A point `x` with `a . x >= 1` for every row `a`, i.e. a point of the open
/// cone `{a . x > 0}` scaled into it, or `None` if the cone is empty.
pub fn strict_cone_witness(rows: &[Vec<Rat>], dim: usize) -> Result<Option<Vec<Rat>>> {
    let mut stages: Vec<System> = vec![System::new(); dim];
    let mut sys = System::new();
    for a in rows {
        if insert(&mut sys, a.clone(), Rat::one()).is_err() {
            return Ok(None);
        }
    }
    for k in (0..dim).rev() {
        stages[k] = sys.clone();
        let mut next = System::new();
        let (mut pos, mut neg) = (vec![], vec![]);
        for (c, r) in &sys {
            if c[k].is_positive() {
                pos.push((c, r));
            } else if c[k].is_negative() {
                neg.push((c, r));
            } else if insert(&mut next, c.clone(), r.clone()).is_err() {
                return Ok(None);
            }
        }
        for (cp, rp) in &pos {
            for (cn, rn) in &neg {
                let (sp, sn) = (&cp[k], -&cn[k]);
                let coef: Vec<Rat> = cp
                    .iter()
                    .zip(cn.iter())
                    .map(|(x, y)| x / sp + y / &sn)
                    .collect();
                let rhs = *rp / sp + *rn / &sn;
                if insert(&mut next, coef, rhs).is_err() {
                    return Ok(None);
                }
            }
            if next.len() > MAX_CONSTRAINTS {
                return Err(Error::GuardExceeded(format!(
                    "more than {MAX_CONSTRAINTS} inequalities during elimination"
                )));
            }
        }
        sys = next;
    }
    let mut x: Vec<Rat> = vec![Rat::zero(); dim];
    for k in 0..dim {
        let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
        for (c, r) in &stages[k] {
            if c[k].is_zero() {
                continue;
            }
            let rest: Rat = (0..k).map(|j| &c[j] * &x[j]).sum();
            let b = (r - rest) / &c[k];
            if c[k].is_positive() {
                if lo.as_ref().is_none_or(|l| b > *l) {
                    lo = Some(b);
                }
            } else if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        }
        x[k] = pick(lo, hi);
    }
    debug_assert!(rows
        .iter()
        .all(|a| a.iter().zip(&x).map(|(p, q)| p * q).sum::<Rat>() >= Rat::one()));
    Ok(Some(x))
}

/// A value in `[lo, hi]`, preferring small integers.
fn pick(lo: Option<Rat>, hi: Option<Rat>) -> Rat {
    match (lo, hi) {
        (None, None) => Rat::zero(),
        (Some(l), None) => {
            if l <= Rat::zero() {
                Rat::zero()
            } else {
                l.ceil()
            }
        }
        (None, Some(h)) => {
            if h >= Rat::zero() {
                Rat::zero()
            } else {
                h.floor()
            }
        }
        (Some(l), Some(h)) => {
            if l <= Rat::zero() && h >= Rat::zero() {
                Rat::zero()
            } else if l.ceil() <= h {
                if l.is_positive() {
                    l.ceil()
                } else {
                    h.floor()
                }
            } else {
                (l + h) / Rat::from_integer(2.into())
            }
        }
    }
}
