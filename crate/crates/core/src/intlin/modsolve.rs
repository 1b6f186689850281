//! Linear systems over `Z/N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntLinError, IntegerMatrix};

/// Outcome of [`solve_mod`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModSolution {
    /// `a * x ≡ b (mod n)`.
    Solution(Vec<BigInt>),
    /// `y * a ≡ 0` but `y * b ≢ 0 (mod n)`.
    Unsolvable { certificate: Vec<BigInt> },
}

impl ModSolution {
    pub fn solution(&self) -> Option<&[BigInt]> {
        match self {
            ModSolution::Solution(x) => Some(x),
            ModSolution::Unsolvable { .. } => None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, ModSolution::Solution(_))
    }
}

/// Inverse of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Solves `a * x ≡ b (mod n)` or returns a left-kernel certificate.
pub fn solve_mod(a: &IntegerMatrix, b: &[BigInt], n: &BigInt) -> Result<ModSolution, IntLinError> {
    if n < &BigInt::from(2) {
        return Err(IntLinError::InvalidArgument(format!(
            "modulus {n} is below 2"
        )));
    }
    if b.len() != a.rows() {
        return Err(IntLinError::DimensionMismatch(format!(
            "system has {} equations, right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let ub = snf.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < r {
            let d = &snf.s[(i, i)];
            let g = d.gcd(n);
            if !ubi.is_multiple_of(&g) {
                let scale = n / &g;
                let cert = snf
                    .u
                    .row(i)
                    .iter()
                    .map(|x| (x * &scale).mod_floor(n))
                    .collect();
                return Ok(ModSolution::Unsolvable { certificate: cert });
            }
            let m = n / &g;
            let inv = mod_inverse(&(d / &g), &m).expect("coprime after dividing by gcd");
            y[i] = ((ubi / &g) * inv).mod_floor(&m);
        } else if !ubi.mod_floor(n).is_zero() {
            let cert = snf.u.row(i).iter().map(|x| x.mod_floor(n)).collect();
            return Ok(ModSolution::Unsolvable { certificate: cert });
        }
    }
    let x = snf
        .v
        .mul_vec(&y)?
        .into_iter()
        .map(|v| v.mod_floor(n))
        .collect();
    Ok(ModSolution::Solution(x))
}

/// Checks a solution or certificate returned by [`solve_mod`].
pub fn verify_mod_solution(
    a: &IntegerMatrix,
    b: &[BigInt],
    n: &BigInt,
    outcome: &ModSolution,
) -> Result<bool, IntLinError> {
    match outcome {
        ModSolution::Solution(x) => {
            let ax = a.mul_vec(x)?;
            Ok(ax
                .iter()
                .zip(b)
                .all(|(l, r)| (l - r).mod_floor(n).is_zero()))
        }
        ModSolution::Unsolvable { certificate } => {
            let ya = a.vec_mul(certificate)?;
            let yb: BigInt = certificate.iter().zip(b).map(|(p, q)| p * q).sum();
            Ok(ya.iter().all(|v| v.mod_floor(n).is_zero()) && !yb.mod_floor(n).is_zero())
        }
    }
}
