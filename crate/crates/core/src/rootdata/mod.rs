//! Root data `(X, Y, R_0, R_0^vee, F_0)` with `X = Z^n` and `Y` its dual,
//! label functions, the non-reduced system `R_nr`, and parabolic restriction.

mod cartan;
mod classical;
mod labels;
mod nonreduced;
mod parabolic;

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intlin::rational::{self, Rat};
use crate::intlin::{lattice_quotient, IntegerMatrix, LatticeQuotient};
use crate::subset::Subset;

pub use cartan::classify_cartan;
pub use classical::{build_classical, build_classical_with_labels, Family, LatticeSpec};
pub use labels::{LabelFunction, LabelSpec};
pub use nonreduced::{NonReducedData, NrRoot};
pub use parabolic::{parabolic_restriction, project_to_p, ParabolicRestriction};

/// Upper bound on the number of positive roots accepted during generation.
const MAX_POSITIVE_ROOTS: usize = 20_000;

/// Coordinates of `X` inside an ambient rational space, kept for classical
/// data so that results can be reported in the usual `e_i` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub ambient_dim: usize,
    /// Row `i` is the `i`-th basis vector of `X` in ambient coordinates.
    pub basis: Vec<Vec<Rat>>,
}

impl Realization {
    pub fn to_ambient(&self, x: &[i64]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient_dim];
        for (xi, b) in x.iter().zip(&self.basis) {
            for (o, bj) in out.iter_mut().zip(b) {
                *o += bj * Rat::from_integer((*xi).into());
            }
        }
        out
    }

    /// `X`-coordinates of an ambient vector, if it lies in the lattice.
    pub fn from_ambient(&self, v: &[Rat]) -> Option<Vec<i64>> {
        let c = self.rational_coordinates(v)?;
        rational::as_integers(&c)?
            .into_iter()
            .map(|x| i64::try_from(x).ok())
            .collect()
    }

    /// Rational coordinates with respect to the lattice basis, if `v` lies in
    /// its span.
    pub fn rational_coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let bt = rational::transpose(&self.basis, self.ambient_dim);
        rational::solve(&bt, v, self.basis.len())
    }
}

/// A validated root datum. Roots are integer vectors in `X = Z^rank`,
/// coroots integer vectors in `Y = Z^rank`, paired by the dot product.
///
/// Roots are ordered: positive roots by height, then by decreasing
/// lexicographic order of their simple-root coefficients (so the simple roots
/// come first, in `F_0` order), followed by the negatives in the same order.
/// Root `i + num_positive()` is the negative of root `i`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    coefficients: Vec<Vec<i64>>,
    n_pos: usize,
    n_simple: usize,
    cartan: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    reflection_perms: Vec<Vec<usize>>,
    nonreduced: NonReducedData,
    realization: Option<Realization>,
    classical: Option<(Family, usize)>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.n_simple == other.n_simple
    }
}

impl RootDatum {
    /// Generates the root datum whose simple roots and coroots are given in
    /// `X`- and `Y`-coordinates.
    pub fn from_simple_system(
        name: &str,
        rank: usize,
        simple_roots: &[Vec<i64>],
        simple_coroots: &[Vec<i64>],
    ) -> Result<Self> {
        let l = simple_roots.len();
        if simple_coroots.len() != l {
            return Err(Error::InvalidInput(format!(
                "{l} simple roots but {} simple coroots",
                simple_coroots.len()
            )));
        }
        if l > Subset::MAX_RANK {
            return Err(Error::GuardExceeded(format!("{l} simple roots (limit 32)")));
        }
        for v in simple_roots.iter().chain(simple_coroots) {
            if v.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "vector of length {} in a datum of rank {rank}",
                    v.len()
                )));
            }
        }
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| pairing(&simple_roots[j], &simple_coroots[i]))
                    .collect()
            })
            .collect();
        for i in 0..l {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidInput(format!(
                    "simple root {i} pairs to {} with its coroot",
                    cartan[i][i]
                )));
            }
            for j in 0..l {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidInput(format!(
                        "entries ({i},{j}) of the Cartan matrix are not those of a root system"
                    )));
                }
            }
        }
        let as_rat = |vs: &[Vec<i64>]| -> Vec<Vec<Rat>> {
            vs.iter().map(|v| rational::to_rat_vec(v)).collect()
        };
        if rational::rank(&as_rat(simple_roots), rank) != l
            || rational::rank(&as_rat(simple_coroots), rank) != l
        {
            return Err(Error::InvalidInput(
                "simple roots or simple coroots are linearly dependent".into(),
            ));
        }

        // Closure of the positive roots under simple reflections.
        let mut coefs: Vec<Vec<i64>> = vec![];
        let mut pos_roots: Vec<Vec<i64>> = vec![];
        let mut pos_coroots: Vec<Vec<i64>> = vec![];
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..l {
            let mut c = vec![0; l];
            c[i] = 1;
            seen.insert(c.clone(), coefs.len());
            coefs.push(c);
            pos_roots.push(simple_roots[i].clone());
            pos_coroots.push(simple_coroots[i].clone());
        }
        let mut head = 0;
        while head < coefs.len() {
            for i in 0..l {
                if head == i {
                    continue;
                }
                let p = pairing(&pos_roots[head], &simple_coroots[i]);
                if p == 0 {
                    continue;
                }
                let mut c = coefs[head].clone();
                c[i] -= p;
                if c.iter().any(|&x| x < 0) {
                    return Err(Error::InvalidInput(
                        "simple reflections do not preserve the positive roots".into(),
                    ));
                }
                let q = pairing(&simple_roots[i], &pos_coroots[head]);
                let root = axpy(&pos_roots[head], -p, &simple_roots[i]);
                let coroot = axpy(&pos_coroots[head], -q, &simple_coroots[i]);
                match seen.get(&c) {
                    Some(&k) => {
                        if pos_coroots[k] != coroot {
                            return Err(Error::InvalidInput(
                                "coroot assignment is not consistent with the reflections".into(),
                            ));
                        }
                    }
                    None => {
                        if coefs.len() >= MAX_POSITIVE_ROOTS {
                            return Err(Error::GuardExceeded(format!(
                                "more than {MAX_POSITIVE_ROOTS} positive roots (not of finite type?)"
                            )));
                        }
                        seen.insert(c.clone(), coefs.len());
                        coefs.push(c);
                        pos_roots.push(root);
                        pos_coroots.push(coroot);
                    }
                }
            }
            head += 1;
        }

        let mut order: Vec<usize> = (0..coefs.len()).collect();
        order.sort_by(|&a, &b| {
            let ha: i64 = coefs[a].iter().sum();
            let hb: i64 = coefs[b].iter().sum();
            ha.cmp(&hb).then_with(|| coefs[b].cmp(&coefs[a]))
        });
        let n_pos = order.len();
        let mut roots = Vec::with_capacity(2 * n_pos);
        let mut coroots = Vec::with_capacity(2 * n_pos);
        let mut coefficients = Vec::with_capacity(2 * n_pos);
        for &k in &order {
            roots.push(pos_roots[k].clone());
            coroots.push(pos_coroots[k].clone());
            coefficients.push(coefs[k].clone());
        }
        for k in 0..n_pos {
            roots.push(neg(&roots[k]));
            coroots.push(neg(&coroots[k]));
            coefficients.push(neg(&coefficients[k]));
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if index.insert(r.clone(), i).is_some() {
                return Err(Error::InvalidInput("repeated root".into()));
            }
        }
        // Reducedness: no root is twice another.
        for r in &roots {
            let d: Vec<i64> = r.iter().map(|x| 2 * x).collect();
            if index.contains_key(&d) {
                return Err(Error::InvalidInput("root system is not reduced".into()));
            }
        }
        let reflection_perms = (0..l)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let p = pairing(r, &coroots[i]);
                        index[&axpy(r, -p, &roots[i])]
                    })
                    .collect()
            })
            .collect();
        let mut rd = RootDatum {
            name: name.to_string(),
            rank,
            roots,
            coroots,
            coefficients,
            n_pos,
            n_simple: l,
            cartan,
            index,
            reflection_perms,
            nonreduced: NonReducedData::default(),
            realization: None,
            classical: None,
        };
        rd.nonreduced = NonReducedData::compute(&rd);
        Ok(rd)
    }

    pub(crate) fn set_realization(&mut self, r: Realization, family: Family, n: usize) {
        self.realization = Some(r);
        self.classical = Some((family, n));
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots `|F_0|`.
    pub fn semisimple_rank(&self) -> usize {
        self.n_simple
    }

    pub fn is_semisimple(&self) -> bool {
        self.n_simple == self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    /// Index of the `i`-th simple root (equal to `i`).
    pub fn simple_root_index(&self, i: usize) -> usize {
        debug_assert!(i < self.n_simple);
        i
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.n_simple]
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.coroots[..self.n_simple]
    }

    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn negative(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Coefficients of root `i` with respect to `F_0`.
    pub fn simple_coefficients(&self, i: usize) -> &[i64] {
        &self.coefficients[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.coefficients[i].iter().sum()
    }

    /// Permutation of root indices induced by the `k`-th simple reflection.
    pub fn simple_reflection_perm(&self, k: usize) -> &[usize] {
        &self.reflection_perms[k]
    }

    /// Matrix of `s_alpha` for root `i` acting on `X` (columns are images of
    /// basis vectors), row-major.
    pub fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let n = self.rank;
        let (a, c) = (&self.roots[i], &self.coroots[i]);
        let mut m = vec![0; n * n];
        for r in 0..n {
            for col in 0..n {
                m[r * n + col] = i64::from(r == col) - a[r] * c[col];
            }
        }
        m
    }

    /// Indices of the roots in `R_P = R_0 ∩ QP`.
    pub fn parabolic_roots(&self, p: Subset) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| {
                self.coefficients[i]
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| c == 0 || p.contains(k))
            })
            .collect()
    }

    pub fn nonreduced(&self) -> &NonReducedData {
        &self.nonreduced
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn classical_type(&self) -> Option<(Family, usize)> {
        self.classical
    }

    /// `X / Z R_0`: torsion part plus free rank.
    pub fn fundamental_group(&self) -> Result<LatticeQuotient> {
        let g = IntegerMatrix::from_rows_with_cols(self.simple_roots(), self.rank)?;
        Ok(lattice_quotient(self.rank, &g)?)
    }

    /// Type of the root system, e.g. `"B3"` or `"A1xA1"`.
    pub fn type_name(&self) -> String {
        classify_cartan(&self.cartan)
    }
}

pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn axpy(x: &[i64], a: i64, y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(u, v)| u + a * v).collect()
}

fn neg(x: &[i64]) -> Vec<i64> {
    x.iter().map(|v| -v).collect()
}
