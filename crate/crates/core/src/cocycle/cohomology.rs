//! 2-cocycles with values in `μ_N`, written additively as exponents in
//! `Z/N` of a fixed primitive `N`-th root of unity.
//!
//! Classes are taken in `H²(G, C^×)`: a cocycle is trivial when it is the
//! coboundary of a `C^×`-valued cochain. Such a cochain can always be chosen
//! with values in `μ_{N e}`, `e` the exponent of `G`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::intlin::{solve_mod, FiniteAbelianGroup, IntegerMatrix, ModEchelon, ModSolution};

/// Limit on `|G|` for the Schur multiplier computation.
pub const MAX_COHOMOLOGY_ORDER: usize = 32;

/// A normalized 2-cocycle `c: G × G → Z/N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoCocycle {
    order: usize,
    modulus: u64,
    table: Vec<u64>,
}

impl TwoCocycle {
    /// Reduces the table modulo `modulus` and checks normalization and the
    /// cocycle identity `c(g,h) + c(gh,k) = c(h,k) + c(g,hk)`.
    pub fn new(g: &FiniteGroup, modulus: u64, table: Vec<Vec<i64>>) -> Result<Self> {
        let n = g.order();
        if modulus < 1 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "cocycle table is not {n} x {n}"
            )));
        }
        let m = modulus as i64;
        let flat = table
            .into_iter()
            .flatten()
            .map(|x| x.rem_euclid(m) as u64)
            .collect();
        let c = TwoCocycle {
            order: n,
            modulus,
            table: flat,
        };
        c.validate(g)?;
        Ok(c)
    }

    pub fn from_fn(g: &FiniteGroup, modulus: u64, f: impl Fn(usize, usize) -> i64) -> Result<Self> {
        let n = g.order();
        Self::new(
            g,
            modulus,
            (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect(),
        )
    }

    pub fn zero(g: &FiniteGroup, modulus: u64) -> Self {
        TwoCocycle {
            order: g.order(),
            modulus,
            table: vec![0; g.order() * g.order()],
        }
    }

    fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = self.order;
        if g.order() != n {
            return Err(Error::InvalidInput(format!(
                "cocycle on a group of order {n} used with a group of order {}",
                g.order()
            )));
        }
        let e = g.identity();
        for a in 0..n {
            if self.value(e, a) != 0 || self.value(a, e) != 0 {
                return Err(Error::InvalidInput(format!(
                    "cocycle is not normalized at {}",
                    g.name(a)
                )));
            }
        }
        let m = self.modulus;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let l = (self.value(a, b) + self.value(ab, c)) % m;
                    let r = (self.value(b, c) + self.value(a, g.mul(b, c))) % m;
                    if l != r {
                        return Err(Error::InvalidInput(format!(
                            "cocycle identity fails at ({}, {}, {})",
                            g.name(a),
                            g.name(b),
                            g.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn value(&self, a: usize, b: usize) -> u64 {
        self.table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.table.chunks(self.order).map(<[u64]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &TwoCocycle) -> Result<TwoCocycle> {
        if self.order != other.order || self.modulus != other.modulus {
            return Err(Error::InvalidInput(
                "cocycles on different groups or moduli".into(),
            ));
        }
        Ok(TwoCocycle {
            order: self.order,
            modulus: self.modulus,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| (a + b) % self.modulus)
                .collect(),
        })
    }

    pub fn negate(&self) -> TwoCocycle {
        TwoCocycle {
            order: self.order,
            modulus: self.modulus,
            table: self
                .table
                .iter()
                .map(|&a| (self.modulus - a) % self.modulus)
                .collect(),
        }
    }

    /// The same values read in `Z/(k N)` (the embedding `μ_N ⊂ μ_{kN}`).
    pub fn inflate_modulus(&self, k: u64) -> TwoCocycle {
        TwoCocycle {
            order: self.order,
            modulus: self.modulus * k,
            table: self.table.iter().map(|&a| a * k).collect(),
        }
    }

    /// `f^* c` for a homomorphism `f` from a group of order `f.len()`.
    pub fn pullback(&self, f: &[usize]) -> TwoCocycle {
        let n = f.len();
        TwoCocycle {
            order: n,
            modulus: self.modulus,
            table: (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| self.value(f[a], f[b]))
                .collect(),
        }
    }

    /// `δb(g, h) = b(g) + b(h) - b(gh)`.
    pub fn coboundary(g: &FiniteGroup, modulus: u64, b: &[u64]) -> Result<TwoCocycle> {
        if b.len() != g.order() || !b[g.identity()].is_multiple_of(modulus) {
            return Err(Error::InvalidInput(
                "cochain must be normalized on G".into(),
            ));
        }
        let m = modulus as i64;
        Self::from_fn(g, modulus, |x, y| {
            (b[x] as i64 + b[y] as i64 - b[g.mul(x, y)] as i64).rem_euclid(m)
        })
    }
}

/// Outcome of [`is_coboundary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryTest {
    /// `e c = δb` in `Z/(N e)` with `b` normalized, i.e. `c = δ(b / (N e))`
    /// with `C^×`-valued cochain `exp(2πi b/(N e))`.
    Coboundary { modulus: u64, witness: Vec<u64> },
    /// A certificate `y` with `y A ≡ 0` and `y · rhs ≢ 0` for the linear
    /// system `A b = e c` modulo `N e`.
    Nontrivial { modulus: u64, certificate: Vec<i64> },
}

impl CoboundaryTest {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryTest::Coboundary { .. })
    }
}

/// Decides whether `c` is trivial in `H²(G, C^×)`.
///
/// Only the equations `c(g, s) = δb(g, s)` with `s` in a generating set are
/// solved: a cocycle vanishing on `G × S` vanishes everywhere. The witness is
/// checked on all of `G × G`.
pub fn is_coboundary(g: &FiniteGroup, c: &TwoCocycle) -> Result<CoboundaryTest> {
    c.validate(g)?;
    let n = g.order();
    let e = g.exponent() as u64;
    let m = c.modulus() * e;
    if m < 2 {
        return Ok(CoboundaryTest::Coboundary {
            modulus: m.max(1),
            witness: vec![0; n],
        });
    }
    let gens = g.generating_set();
    let id = g.identity();
    // Unknowns: b(x) for x != identity.
    let var = |x: usize| {
        if x < id {
            Some(x)
        } else if x == id {
            None
        } else {
            Some(x - 1)
        }
    };
    let mut rows = vec![];
    let mut rhs = vec![];
    for x in 0..n {
        for &s in &gens {
            let mut row = vec![0i64; n - 1];
            for (y, sign) in [(x, 1), (s, 1), (g.mul(x, s), -1)] {
                if let Some(v) = var(y) {
                    row[v] += sign;
                }
            }
            rows.push(row);
            rhs.push(BigInt::from(c.value(x, s) * e));
        }
    }
    if n == 1 {
        return Ok(CoboundaryTest::Coboundary {
            modulus: m,
            witness: vec![0],
        });
    }
    let a = IntegerMatrix::from_rows_with_cols(&rows, n - 1)?;
    match solve_mod(&a, &rhs, &BigInt::from(m))? {
        ModSolution::Solution(x) => {
            let mut b = vec![0u64; n];
            for y in 0..n {
                if let Some(v) = var(y) {
                    b[y] = x[v].to_u64().expect("reduced modulo m");
                }
            }
            let inflated = c.inflate_modulus(e);
            let check = TwoCocycle::coboundary(g, m, &b)?;
            if check != inflated {
                return Err(Error::Inconsistent(
                    "coboundary witness fails off the generating set".into(),
                ));
            }
            Ok(CoboundaryTest::Coboundary {
                modulus: m,
                witness: b,
            })
        }
        ModSolution::Unsolvable { certificate } => Ok(CoboundaryTest::Nontrivial {
            modulus: m,
            certificate: certificate
                .iter()
                .map(|v| v.to_i64().expect("reduced modulo m"))
                .collect(),
        }),
    }
}

/// Whether two cocycles define the same class in `H²(G, C^×)`.
pub fn cohomologous(g: &FiniteGroup, a: &TwoCocycle, b: &TwoCocycle) -> Result<bool> {
    let l = num_integer::lcm(a.modulus(), b.modulus());
    let d = a
        .inflate_modulus(l / a.modulus())
        .add(&b.inflate_modulus(l / b.modulus()).negate())?;
    Ok(is_coboundary(g, &d)?.is_coboundary())
}

/// Invariant factors of the Schur multiplier `H_2(G, Z) ≅ H²(G, C^×)`.
///
/// `H_2(G, Z)` is the torsion of `C_2 / ∂C_3` in the normalized bar complex;
/// it is computed modulo `|G|²` from the boundaries `∂[g|h|s]` with `s` in a
/// generating set, which cut out the same cokernel.
pub fn schur_multiplier(g: &FiniteGroup) -> Result<Vec<u64>> {
    let n = g.order();
    if n > MAX_COHOMOLOGY_ORDER {
        return Err(Error::GuardExceeded(format!(
            "|G| = {n} exceeds {MAX_COHOMOLOGY_ORDER} for the Schur multiplier"
        )));
    }
    if n == 1 {
        return Ok(vec![]);
    }
    let id = g.identity();
    let nonid: Vec<usize> = (0..n).filter(|&x| x != id).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in nonid.iter().enumerate() {
        pos[x] = i;
    }
    let k = n - 1;
    let col =
        |a: usize, b: usize| -> Option<usize> { (a != id && b != id).then(|| pos[a] * k + pos[b]) };
    let m = (n * n) as i64;
    let mut ech = ModEchelon::new(k * k, m)?;
    for &a in &nonid {
        for &b in &nonid {
            for &s in &g.generating_set() {
                // ∂[a|b|s] = [b|s] - [ab|s] + [a|bs] - [a|b]
                let mut row = vec![0i64; k * k];
                for (x, y, sign) in [
                    (b, s, 1),
                    (g.mul(a, b), s, -1),
                    (a, g.mul(b, s), 1),
                    (a, b, -1),
                ] {
                    if let Some(c) = col(x, y) {
                        row[c] += sign;
                    }
                }
                ech.insert(&row)?;
            }
        }
    }
    let torsion: Vec<i64> = ech
        .cokernel_moduli()
        .into_iter()
        .filter(|&d| d > 1 && d < m)
        .collect();
    let grp = FiniteAbelianGroup::from_moduli(&torsion)?;
    Ok(grp
        .invariants()
        .iter()
        .map(|d| d.to_u64().expect("divides |G|"))
        .collect())
}

/// The image of `H²(G, μ_N)` in `H²(G, C^×)`, the `N`-torsion of the Schur
/// multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Report {
    pub modulus: u64,
    pub order: u64,
    pub invariants: Vec<u64>,
    pub schur_multiplier: Vec<u64>,
}

pub fn h2_order(g: &FiniteGroup, modulus: u64) -> Result<H2Report> {
    if modulus < 2 {
        return Err(Error::InvalidInput("modulus must be at least 2".into()));
    }
    let schur = schur_multiplier(g)?;
    let invariants: Vec<u64> = schur
        .iter()
        .map(|&d| num_integer::gcd(d, modulus))
        .filter(|&d| d > 1)
        .collect();
    Ok(H2Report {
        modulus,
        order: invariants.iter().product(),
        invariants,
        schur_multiplier: schur,
    })
}

/// `c` restricted to a subgroup `H`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub group: FiniteGroup,
    /// Element `i` of `group` is `embedding[i]` in the ambient group.
    pub embedding: Vec<usize>,
    pub cocycle: TwoCocycle,
}

pub fn restrict_cocycle(g: &FiniteGroup, c: &TwoCocycle, h: &[usize]) -> Result<Restriction> {
    c.validate(g)?;
    let (group, embedding) = g.subgroup(h)?;
    let cocycle = c.pullback(&embedding);
    cocycle.validate(&group)?;
    Ok(Restriction {
        group,
        embedding,
        cocycle,
    })
}

/// The bilinear cocycle `(x, y) ↦ (N/2) x_1 y_2` on `⟨ω⟩ × ⟨κ⟩` (elements
/// ordered `e, ω, κ, ωκ`), nontrivial for even `N`.
pub fn klein_cocycle(modulus: u64) -> Result<(FiniteGroup, TwoCocycle)> {
    if !modulus.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "the Klein cocycle needs an even modulus".into(),
        ));
    }
    let g = FiniteGroup::klein();
    let bits = |x: usize| -> (i64, i64) {
        let name = g.name(x);
        (name.contains('ω') as i64, name.contains('κ') as i64)
    };
    let half = (modulus / 2) as i64;
    let c = TwoCocycle::from_fn(&g, modulus, |x, y| half * bits(x).0 * bits(y).1)?;
    Ok((g, c))
}

/// Every normalized cocycle `G × G → Z/N`, by exhaustive search over
/// normalized cochains. Only for tiny `G` and `N`.
pub fn all_cocycles(g: &FiniteGroup, modulus: u64, limit: u128) -> Result<Vec<TwoCocycle>> {
    let n = g.order();
    let id = g.identity();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != id && b != id)
        .collect();
    let total = (modulus as u128).checked_pow(cells.len() as u32);
    if total.is_none_or(|t| t > limit) {
        return Err(Error::GuardExceeded(format!(
            "{modulus}^{} cochains exceed the limit {limit}",
            cells.len()
        )));
    }
    let total = total.expect("checked") as u64;
    let mut out = vec![];
    let mut table = vec![0u64; n * n];
    for code in 0..total {
        let mut r = code;
        for &(a, b) in &cells {
            table[a * n + b] = r % modulus;
            r /= modulus;
        }
        let c = TwoCocycle {
            order: n,
            modulus,
            table: table.clone(),
        };
        if c.validate(g).is_ok() {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_coboundary() {
        let g = FiniteGroup::dihedral8();
        match is_coboundary(&g, &TwoCocycle::zero(&g, 4)).unwrap() {
            CoboundaryTest::Coboundary { witness, .. } => assert!(witness.iter().all(|&x| x == 0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn klein_cocycle_is_nontrivial() {
        let (g, c) = klein_cocycle(2).unwrap();
        let (w, k) = (g.find("ω").unwrap(), g.find("κ").unwrap());
        assert_ne!(c.value(w, k), c.value(k, w));
        let t = is_coboundary(&g, &c).unwrap();
        assert!(!t.is_coboundary());
    }

    #[test]
    fn cyclic_cocycles_are_trivial() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let c = TwoCocycle::new(&g, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(is_coboundary(&g, &c).unwrap().is_coboundary());
        let g = FiniteGroup::cyclic(4).unwrap();
        // The carry cocycle of Z/4 ⊂ Z/8 scaled into μ_8.
        let c = TwoCocycle::from_fn(&g, 8, |a, b| if a + b >= 4 { 3 } else { 0 }).unwrap();
        assert!(is_coboundary(&g, &c).unwrap().is_coboundary());
    }

    #[test]
    fn multipliers() {
        assert!(schur_multiplier(&FiniteGroup::cyclic(6).unwrap())
            .unwrap()
            .is_empty());
        assert_eq!(schur_multiplier(&FiniteGroup::klein()).unwrap(), vec![2]);
        assert_eq!(
            schur_multiplier(&FiniteGroup::dihedral8()).unwrap(),
            vec![2]
        );
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let e8 = FiniteGroup::direct_product(&FiniteGroup::klein(), &c2);
        assert_eq!(schur_multiplier(&e8).unwrap(), vec![2, 2, 2]);
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(
            schur_multiplier(&FiniteGroup::direct_product(&c3, &c3)).unwrap(),
            vec![3]
        );
        assert_eq!(
            h2_order(&FiniteGroup::direct_product(&c3, &c3), 2)
                .unwrap()
                .order,
            1
        );
        assert!(schur_multiplier(&FiniteGroup::cyclic(33).unwrap()).is_err());
    }

    #[test]
    fn classes_times_order_counts_cocycles() {
        for (g, n) in [
            (FiniteGroup::cyclic(2).unwrap(), 2),
            (FiniteGroup::cyclic(3).unwrap(), 3),
            (FiniteGroup::klein(), 2),
        ] {
            let all = all_cocycles(&g, n, 1 << 20).unwrap();
            let trivial = all
                .iter()
                .filter(|c| is_coboundary(&g, c).unwrap().is_coboundary())
                .count();
            let h2 = h2_order(&g, n).unwrap();
            assert_eq!(all.len() as u64, trivial as u64 * h2.order);
        }
    }

    #[test]
    fn restriction() {
        let g = FiniteGroup::dihedral8();
        let r = restrict_cocycle(&g, &TwoCocycle::zero(&g, 2), &[g.identity()]).unwrap();
        assert!(r.cocycle.is_zero());
        assert!(restrict_cocycle(&g, &TwoCocycle::zero(&g, 2), &[1]).is_err());
    }
}
