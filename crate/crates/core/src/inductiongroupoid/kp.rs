//! The finite abelian group `K_P = T^P ∩ T_P`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intlin::{
    integer_kernel, row_lattice_saturation, smith_normal_form, to_i64_vec, IntegerMatrix,
    RationalRotation,
};
use crate::rootdata::RootDatum;
use crate::subset::Subset;
use crate::weyl::TorusPoint;

/// Limit on `|K_P|` for element enumeration.
pub const MAX_KP_ORDER: usize = 1 << 20;

/// `K_P`, realized as the characters of `X` trivial on
/// `L = (X ∩ QP) + (X ∩ (P^vee)^perp)`, so that `K_P ≅ Hom(X/L, C^x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpGroup {
    pub p: Subset,
    /// Invariant factors greater than one.
    pub moduli: Vec<i64>,
    /// `generators[j]` has order `moduli[j]`.
    pub generators: Vec<TorusPoint>,
    /// Basis of `X ∩ QP`.
    pub saturation: Vec<Vec<i64>>,
    /// Generators of `L` in `X`.
    pub lattice: Vec<Vec<i64>>,
    /// `coordinate_j(t) = moduli[j] * t(recover[j])`.
    recover: Vec<Vec<i64>>,
    rank: usize,
}

impl KpGroup {
    pub fn new(rd: &RootDatum, p: Subset) -> Result<Self> {
        let n = rd.rank();
        if !p.is_subset_of(&Subset::full(rd.semisimple_rank())) {
            return Err(Error::InvalidInput(format!(
                "{p} is not a set of simple roots"
            )));
        }
        let roots: Vec<Vec<i64>> = p.iter().map(|b| rd.simple_roots()[b].clone()).collect();
        let coroots: Vec<Vec<i64>> = p.iter().map(|b| rd.simple_coroots()[b].clone()).collect();
        let mut saturation = vec![];
        if !roots.is_empty() {
            for v in row_lattice_saturation(&IntegerMatrix::from_rows_with_cols(&roots, n)?) {
                saturation.push(to_i64_vec(&v)?);
            }
        }
        let mut lattice = saturation.clone();
        for v in integer_kernel(&IntegerMatrix::from_rows_with_cols(&coroots, n)?) {
            lattice.push(to_i64_vec(&v)?);
        }
        let snf = smith_normal_form(&IntegerMatrix::from_rows_with_cols(&lattice, n)?);
        if snf.rank() != n {
            return Err(Error::Inconsistent(format!(
                "the lattice cut out by {p} has rank {} < {n}",
                snf.rank()
            )));
        }
        let (mut moduli, mut generators, mut recover) = (vec![], vec![], vec![]);
        for j in 0..n {
            let d = snf.s[(j, j)]
                .to_i64()
                .ok_or_else(|| Error::GuardExceeded("invariant factor exceeds 64 bits".into()))?;
            if d == 1 {
                continue;
            }
            let col = to_i64_vec(&snf.v.column(j))?;
            generators.push(TorusPoint::new(
                col.iter()
                    .map(|&c| RationalRotation::new(c, d))
                    .collect::<std::result::Result<_, _>>()?,
            ));
            recover.push(to_i64_vec(snf.v_inv.row(j))?);
            moduli.push(d);
        }
        Ok(KpGroup {
            p,
            moduli,
            generators,
            saturation,
            lattice,
            recover,
            rank: n,
        })
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&d| d as usize).product()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Whether `t` is trivial on `L`.
    pub fn contains(&self, t: &TorusPoint) -> bool {
        self.lattice.iter().all(|x| t.eval(x).is_zero())
    }

    /// Coordinates of `t` with respect to the generators, each reduced
    /// modulo its invariant factor.
    pub fn coordinates(&self, t: &TorusPoint) -> Option<Vec<i64>> {
        if !self.contains(t) {
            return None;
        }
        Some(
            self.recover
                .iter()
                .zip(&self.moduli)
                .map(|(r, &d)| {
                    let v = t.eval(r);
                    // v = a / d exactly because t is trivial on L.
                    (v.numerator() * (d / v.denominator())).rem_euclid(d)
                })
                .collect(),
        )
    }

    pub fn element(&self, coords: &[i64]) -> TorusPoint {
        let mut t = TorusPoint::identity(self.rank());
        for (g, &a) in self.generators.iter().zip(coords) {
            let pow = TorusPoint::new(g.values().iter().map(|v| v.times(a)).collect());
            t = t.mul(&pow);
        }
        t
    }

    /// Mixed-radix index of an element, the first coordinate varying slowest.
    pub fn index_of(&self, t: &TorusPoint) -> Option<usize> {
        let c = self.coordinates(t)?;
        Some(
            c.iter()
                .zip(&self.moduli)
                .fold(0usize, |acc, (&a, &d)| acc * d as usize + a as usize),
        )
    }

    pub fn coordinates_of_index(&self, mut index: usize) -> Vec<i64> {
        let mut c = vec![0; self.moduli.len()];
        for j in (0..self.moduli.len()).rev() {
            let d = self.moduli[j] as usize;
            c[j] = (index % d) as i64;
            index /= d;
        }
        c
    }

    /// All elements, in index order.
    pub fn elements(&self) -> Result<Vec<TorusPoint>> {
        let n = self.order();
        if n > MAX_KP_ORDER {
            return Err(Error::GuardExceeded(format!(
                "|K_P| = {n} exceeds {MAX_KP_ORDER}"
            )));
        }
        Ok((0..n)
            .map(|i| self.element(&self.coordinates_of_index(i)))
            .collect())
    }
}
