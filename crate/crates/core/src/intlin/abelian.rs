//! Finite abelian groups in invariant-factor form and lattice quotients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{smith_normal_form, IntLinError, IntegerMatrix};

/// `Z/d_1 x ... x Z/d_k` with `d_1 | ... | d_k`, every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariants: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self { invariants: vec![] }
    }

    /// Accepts any list of positive moduli and normalizes it to invariant
    /// factors (entries equal to 1 are dropped).
    pub fn from_moduli<T: Into<BigInt> + Clone>(moduli: &[T]) -> Result<Self, IntLinError> {
        let m: Vec<BigInt> = moduli.iter().cloned().map(Into::into).collect();
        if m.iter().any(|d| d <= &BigInt::zero()) {
            return Err(IntLinError::InvalidArgument(
                "cyclic factor orders must be positive".into(),
            ));
        }
        let snf = smith_normal_form(&IntegerMatrix::diagonal(&m));
        Ok(Self {
            invariants: snf
                .invariant_factors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        })
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Largest element order (the last invariant factor, or 1).
    pub fn exponent(&self) -> BigInt {
        self.invariants.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn identity(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.invariants.len()]
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        x.iter()
            .zip(&self.invariants)
            .map(|(a, d)| a.mod_floor(d))
            .collect()
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        x.iter()
            .zip(&self.invariants)
            .fold(BigInt::one(), |acc, (a, d)| {
                acc.lcm(&(d / a.mod_floor(d).gcd(d)))
            })
    }

    /// All elements in lexicographic order; `None` if the group has more
    /// than `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order().to_usize()?;
        if order > limit {
            return None;
        }
        let mut out = Vec::with_capacity(order);
        let mut cur = self.identity();
        for _ in 0..order {
            out.push(cur.clone());
            for k in (0..cur.len()).rev() {
                cur[k] += 1;
                if cur[k] < self.invariants[k] {
                    break;
                }
                cur[k] = BigInt::zero();
            }
        }
        Some(out)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariants.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `Z^n / L` split as torsion part plus free rank, with an explicit
/// projection from `Z^n` onto the torsion tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub torsion: FiniteAbelianGroup,
    pub free_rank: usize,
    /// Row `i` maps a vector of `Z^n` to the `i`-th torsion coordinate
    /// (to be reduced modulo the `i`-th invariant factor).
    pub torsion_projection: IntegerMatrix,
    /// Rows giving the free coordinates.
    pub free_projection: IntegerMatrix,
}

impl LatticeQuotient {
    /// Image of `x` in the torsion part.
    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>, IntLinError> {
        let raw = self.torsion_projection.mul_vec(x)?;
        Ok(self.torsion.reduce(&raw))
    }

    /// Whether `x` lies in the sublattice.
    pub fn contains(&self, x: &[BigInt]) -> Result<bool, IntLinError> {
        let t = self.project(x)?;
        let f = self.free_projection.mul_vec(x)?;
        Ok(t.iter().chain(&f).all(Zero::is_zero))
    }
}

/// Computes `Z^ambient_rank / <generators>` where the generators are the rows
/// of `generators`.
pub fn lattice_quotient(
    ambient_rank: usize,
    generators: &IntegerMatrix,
) -> Result<LatticeQuotient, IntLinError> {
    if generators.cols() != ambient_rank && generators.rows() > 0 {
        return Err(IntLinError::DimensionMismatch(format!(
            "generators have length {}, ambient rank is {ambient_rank}",
            generators.cols()
        )));
    }
    // Columns of `a` are the generators: Z^n / a Z^g.
    let a = if generators.rows() == 0 {
        IntegerMatrix::zeros(ambient_rank, 0)
    } else {
        generators.transpose()
    };
    let snf = smith_normal_form(&a);
    let r = snf.rank();
    let mut moduli = vec![];
    let mut rows = vec![];
    for i in 0..r {
        let d = &snf.s[(i, i)];
        if !d.is_one() {
            moduli.push(d.clone());
            rows.push(snf.u.row(i).to_vec());
        }
    }
    let free_rows: Vec<Vec<BigInt>> = (r..ambient_rank).map(|i| snf.u.row(i).to_vec()).collect();
    Ok(LatticeQuotient {
        torsion: FiniteAbelianGroup { invariants: moduli },
        free_rank: ambient_rank - r,
        torsion_projection: IntegerMatrix::from_rows_with_cols(&rows, ambient_rank)?,
        free_projection: IntegerMatrix::from_rows_with_cols(&free_rows, ambient_rank)?,
    })
}
