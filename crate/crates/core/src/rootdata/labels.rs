//! Root label functions `alpha^vee -> q_{alpha^vee}` on `R_nr^vee`.

use num_traits::{One, Signed};

use super::{Family, RootDatum};
use crate::error::{Error, Result};
use crate::intlin::rational::Rat;

/// How labels are supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelSpec {
    /// The same value on every root of `R_0`; doubled roots get `1`.
    Uniform(Rat),
    /// `q0` on the orbit of the last simple root (`e_i` for B, `2e_i` for C),
    /// `q1` on the remaining roots of `R_0`, `q2` on the doubled roots.
    /// Types A and D use `q1` throughout.
    Classical { q0: Rat, q1: Rat, q2: Rat },
    /// Values on chosen roots of `R_nr` (in `X`-coordinates), spread over
    /// their orbits. Orbits without a value get `1`.
    PerRoot(Vec<(Vec<i64>, Rat)>),
}

impl LabelSpec {
    pub fn trivial() -> Self {
        LabelSpec::Uniform(Rat::one())
    }
}

/// A positive `W_0`-invariant function on `R_nr^vee`, indexed like
/// [`NonReducedData::roots`](super::NonReducedData).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelFunction {
    values: Vec<Rat>,
}

/// Orbit index of every element of `R_nr` under `W_0`.
fn nr_orbits(rd: &RootDatum) -> Vec<usize> {
    let nr = rd.nonreduced();
    let m = nr.len();
    let image = |k: usize, s: usize| -> usize {
        let r = &nr.roots[k];
        let b = rd.simple_reflection_perm(s)[r.base];
        if r.doubled {
            nr.double_of[b].expect("doubles are W-stable")
        } else {
            b
        }
    };
    let mut orbit = vec![usize::MAX; m];
    let mut next = 0;
    for start in 0..m {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = next;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for s in 0..rd.semisimple_rank() {
                let j = image(k, s);
                if orbit[j] == usize::MAX {
                    orbit[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    orbit
}

impl LabelFunction {
    pub fn new(rd: &RootDatum, spec: &LabelSpec) -> Result<Self> {
        let nr = rd.nonreduced();
        let values: Vec<Rat> = match spec {
            LabelSpec::Uniform(q) => nr
                .roots
                .iter()
                .map(|r| if r.doubled { Rat::one() } else { q.clone() })
                .collect(),
            LabelSpec::Classical { q0, q1, q2 } => {
                let orbit = nr_orbits(rd);
                let special = match rd.classical_type() {
                    Some((Family::B | Family::C, n)) if rd.semisimple_rank() == n => {
                        Some(orbit[n - 1])
                    }
                    _ => None,
                };
                nr.roots
                    .iter()
                    .zip(&orbit)
                    .map(|(r, &o)| {
                        if r.doubled {
                            q2.clone()
                        } else if Some(o) == special {
                            q0.clone()
                        } else {
                            q1.clone()
                        }
                    })
                    .collect()
            }
            LabelSpec::PerRoot(entries) => {
                let orbit = nr_orbits(rd);
                let mut per_orbit: Vec<Option<Rat>> = vec![None; nr.len()];
                for (v, q) in entries {
                    let k = nr
                        .roots
                        .iter()
                        .position(|r| &r.vector == v)
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("{v:?} is not an element of R_nr"))
                        })?;
                    match &per_orbit[orbit[k]] {
                        Some(old) if old != q => {
                            return Err(Error::LabelNotInvariant(format!(
                                "labels {old} and {q} given on the same orbit (at {v:?})"
                            )))
                        }
                        _ => per_orbit[orbit[k]] = Some(q.clone()),
                    }
                }
                orbit
                    .iter()
                    .map(|&o| per_orbit[o].clone().unwrap_or_else(Rat::one))
                    .collect()
            }
        };
        Self::from_values(rd, values)
    }

    /// Validates positivity and invariance of explicit values.
    pub fn from_values(rd: &RootDatum, values: Vec<Rat>) -> Result<Self> {
        let nr = rd.nonreduced();
        if values.len() != nr.len() {
            return Err(Error::InvalidInput(format!(
                "{} label values for {} elements of R_nr",
                values.len(),
                nr.len()
            )));
        }
        if let Some(q) = values.iter().find(|q| !q.is_positive()) {
            return Err(Error::InvalidInput(format!("label {q} is not positive")));
        }
        let orbit = nr_orbits(rd);
        for k in 0..values.len() {
            for j in 0..k {
                if orbit[j] == orbit[k] && values[j] != values[k] {
                    return Err(Error::LabelNotInvariant(format!(
                        "{:?} and {:?} are conjugate but carry labels {} and {}",
                        nr.roots[j].vector, nr.roots[k].vector, values[j], values[k]
                    )));
                }
            }
        }
        Ok(LabelFunction { values })
    }

    /// The constant function `1`.
    pub fn trivial(rd: &RootDatum) -> Self {
        LabelFunction {
            values: vec![Rat::one(); rd.nonreduced().len()],
        }
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// `q_{alpha^vee}` for root `i` of `R_0`.
    pub fn root_label(&self, i: usize) -> &Rat {
        &self.values[i]
    }

    /// `q_{(2 alpha)^vee}` for root `i` of `R_0`, or `1` when `2 alpha` is not
    /// in `R_nr`.
    pub fn double_label(&self, rd: &RootDatum, i: usize) -> Rat {
        rd.nonreduced().double_of[i]
            .map(|d| self.values[d].clone())
            .unwrap_or_else(Rat::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    /// `q(w)` for the element whose inversion set `R_{0,+} ∩ w^{-1} R_{0,-}`
    /// is given by root indices.
    pub fn label_of_inversions(&self, rd: &RootDatum, inversions: &[usize]) -> Rat {
        inversions
            .iter()
            .map(|&i| self.root_label(i) * self.double_label(rd, i))
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rational::{rat, rat_frac};
    use crate::rootdata::{build_classical, LatticeSpec};

    #[test]
    fn classical_triple_on_b2_root_lattice() {
        let rd = build_classical(Family::B, 2, &LatticeSpec::Root).unwrap();
        let spec = LabelSpec::Classical {
            q0: rat(2),
            q1: rat(3),
            q2: rat_frac(5, 7),
        };
        let q = LabelFunction::new(&rd, &spec).unwrap();
        assert_eq!(rd.nonreduced().len(), 12);
        // Root 1 is e_2.
        assert_eq!(q.root_label(1), &rat(2));
        assert_eq!(q.double_label(&rd, 1), rat_frac(5, 7));
        assert_eq!(q.root_label(0), &rat(3));
        assert_eq!(q.double_label(&rd, 0), rat(1));
        // s_{e_2} inverts e_2 only among R_{0,+}.
        assert_eq!(q.label_of_inversions(&rd, &[1]), rat_frac(10, 7));
    }

    #[test]
    fn per_root_orbits() {
        let rd = build_classical(Family::B, 2, &LatticeSpec::Root).unwrap();
        let spec = LabelSpec::PerRoot(vec![(rd.root(1).to_vec(), rat(4))]);
        let q = LabelFunction::new(&rd, &spec).unwrap();
        let e1 = rd.root_index(
            &rd.realization()
                .unwrap()
                .from_ambient(&[rat(1), rat(0)])
                .unwrap(),
        );
        assert_eq!(q.root_label(e1.unwrap()), &rat(4));
        assert_eq!(q.root_label(0), &rat(1));
        let bad = LabelSpec::PerRoot(vec![
            (rd.root(1).to_vec(), rat(4)),
            (rd.root(rd.negative(1)).to_vec(), rat(5)),
        ]);
        assert!(matches!(
            LabelFunction::new(&rd, &bad),
            Err(Error::LabelNotInvariant(_))
        ));
        let neg = LabelSpec::Uniform(rat(-1));
        assert!(LabelFunction::new(&rd, &neg).is_err());
    }

    #[test]
    fn explicit_values_checked() {
        let rd = build_classical(Family::A, 2, &LatticeSpec::Root).unwrap();
        let mut v = vec![rat(2); 6];
        assert!(LabelFunction::from_values(&rd, v.clone()).is_ok());
        v[3] = rat(3);
        assert!(matches!(
            LabelFunction::from_values(&rd, v),
            Err(Error::LabelNotInvariant(_))
        ));
    }
}
