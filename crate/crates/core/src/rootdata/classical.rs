//! Classical root data in their standard coordinate realizations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LabelFunction, LabelSpec, Realization, RootDatum};
use crate::error::{Error, Result};
use crate::intlin::rational::{self, rat, Rat};
use crate::intlin::{row_lattice_basis, IntegerMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        }
    }
}

/// Choice of the lattice `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Root,
    Weight,
    /// Generators in ambient coordinates (`R^{n+1}` for type A, `R^n`
    /// otherwise). For type A a full-rank generator set gives a
    /// non-semisimple datum such as `GL_{n+1}`.
    Generators(Vec<Vec<Rat>>),
}

impl Family {
    fn ambient_dim(self, n: usize) -> usize {
        match self {
            Family::A => n + 1,
            _ => n,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Family::D => 4,
            _ => 1,
        }
    }

    /// Simple roots in ambient coordinates, in `F_0` order.
    fn simple_roots(self, n: usize) -> Vec<Vec<Rat>> {
        let d = self.ambient_dim(n);
        let e = |i: usize, c: i64| -> Vec<(usize, i64)> { vec![(i, c)] };
        let mut specs: Vec<Vec<(usize, i64)>> = vec![];
        let chain = match self {
            Family::A => n,
            Family::D => n - 2,
            _ => n - 1,
        };
        for i in 0..chain {
            specs.push(vec![(i, 1), (i + 1, -1)]);
        }
        match self {
            Family::A => {}
            Family::B => specs.push(e(n - 1, 1)),
            Family::C => specs.push(e(n - 1, 2)),
            Family::D => {
                specs.push(vec![(n - 2, 1), (n - 1, -1)]);
                specs.push(vec![(n - 2, 1), (n - 1, 1)]);
            }
        }
        specs
            .into_iter()
            .map(|s| {
                let mut v = vec![Rat::zero(); d];
                for (i, c) in s {
                    v[i] = rat(c);
                }
                v
            })
            .collect()
    }
}

fn coroot_of(alpha: &[Rat]) -> Vec<Rat> {
    let nn = rational::dot(alpha, alpha);
    alpha.iter().map(|x| x * rat(2) / &nn).collect()
}

fn fundamental_weights(simple: &[Vec<Rat>], coroots: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let l = simple.len();
    // a[j][k] = <alpha_k, alpha_j^vee>; weights are rows of (a^T)^{-1} times the roots.
    let at: Vec<Vec<Rat>> = (0..l)
        .map(|k| {
            (0..l)
                .map(|j| rational::dot(&simple[k], &coroots[j]))
                .collect()
        })
        .collect();
    let c = rational::inverse(&at).expect("Cartan matrix is invertible");
    c.iter()
        .map(|row| {
            let mut w = vec![Rat::zero(); simple[0].len()];
            for (ck, ak) in row.iter().zip(simple) {
                for (wi, ai) in w.iter_mut().zip(ak) {
                    *wi += ck * ai;
                }
            }
            w
        })
        .collect()
}

fn lattice_basis_from_generators(gens: &[Vec<Rat>], dim: usize) -> Result<Vec<Vec<Rat>>> {
    if gens.is_empty() {
        return Err(Error::InvalidLattice("no lattice generators".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.len() != dim) {
        return Err(Error::InvalidLattice(format!(
            "generator of length {} in ambient dimension {dim}",
            g.len()
        )));
    }
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let basis = row_lattice_basis(&IntegerMatrix::from_rows_with_cols(&rows, dim)?);
    Ok(basis
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rat::new(x, den.clone())).collect())
        .collect())
}

/// Builds a classical root datum in its standard realization:
/// `A_n`: `e_i - e_{i+1}` in `R^{n+1}`; `B_n`: `e_i - e_{i+1}, e_n`;
/// `C_n`: `e_i - e_{i+1}, 2e_n`; `D_n`: `e_i - e_{i+1}, e_{n-1} + e_n`.
///
/// The lattice is validated to be stable under the simple reflections, to
/// contain the roots, and to pair integrally with the coroots.
pub fn build_classical(family: Family, n: usize, lattice: &LatticeSpec) -> Result<RootDatum> {
    if n < family.min_rank() {
        return Err(Error::InvalidInput(format!(
            "type {family} needs rank at least {}",
            family.min_rank()
        )));
    }
    if n > 31 {
        return Err(Error::GuardExceeded(format!("rank {n} is too large")));
    }
    let dim = family.ambient_dim(n);
    let simple = family.simple_roots(n);
    let coroots: Vec<Vec<Rat>> = simple.iter().map(|a| coroot_of(a)).collect();
    let (basis, label) = match lattice {
        LatticeSpec::Root => (simple.clone(), "root lattice"),
        LatticeSpec::Weight => (fundamental_weights(&simple, &coroots), "weight lattice"),
        LatticeSpec::Generators(g) => (lattice_basis_from_generators(g, dim)?, "lattice"),
    };
    let real = Realization {
        ambient_dim: dim,
        basis,
    };
    let coords: Vec<Vec<Rat>> = simple
        .iter()
        .enumerate()
        .map(|(j, a)| {
            real.rational_coordinates(a).ok_or_else(|| {
                Error::InvalidLattice(format!("simple root {j} is not in the span of the lattice"))
            })
        })
        .collect::<Result<_>>()?;
    let pair: Vec<Vec<Rat>> = real
        .basis
        .iter()
        .map(|b| coroots.iter().map(|c| rational::dot(b, c)).collect())
        .collect();
    for (j, cj) in coords.iter().enumerate() {
        for (i, pi) in pair.iter().enumerate() {
            let image: Vec<Rat> = cj.iter().map(|x| x * &pi[j]).collect();
            if rational::as_integers(&image).is_none() {
                return Err(Error::LatticeNotStable(format!(
                    "the reflection in simple root {j} maps lattice basis vector {i} outside the lattice"
                )));
            }
        }
    }
    let mut x_roots = vec![];
    for (j, cj) in coords.iter().enumerate() {
        let ints = rational::as_integers(cj).ok_or_else(|| {
            Error::InvalidLattice(format!("lattice does not contain simple root {j}"))
        })?;
        x_roots.push(to_i64(&ints)?);
    }
    let mut y_coroots = vec![];
    for j in 0..simple.len() {
        let col: Vec<Rat> = pair.iter().map(|p| p[j].clone()).collect();
        let ints = rational::as_integers(&col).ok_or_else(|| {
            Error::InvalidLattice(format!(
                "lattice is not contained in the weight lattice (coroot {j} pairs non-integrally)"
            ))
        })?;
        y_coroots.push(to_i64(&ints)?);
    }
    let name = format!("{family}{n} ({label})");
    let mut rd = RootDatum::from_simple_system(&name, real.basis.len(), &x_roots, &y_coroots)?;
    rd.set_realization(real, family, n);
    Ok(rd)
}

/// [`build_classical`] followed by [`LabelFunction::new`].
pub fn build_classical_with_labels(
    family: Family,
    n: usize,
    lattice: &LatticeSpec,
    labels: &LabelSpec,
) -> Result<(RootDatum, LabelFunction)> {
    let rd = build_classical(family, n, lattice)?;
    let q = LabelFunction::new(&rd, labels)?;
    Ok((rd, q))
}

use crate::intlin::to_i64_vec as to_i64;
