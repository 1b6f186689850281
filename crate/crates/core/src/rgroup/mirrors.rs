//! Mirror root systems inside `R^P`: validation, and detection for the
//! principal series from the c-factors.

use super::cfactor::root_pole_order;
use crate::error::{Error, Result};
use crate::intlin::rational::{self, Rat};
use crate::rootdata::{LabelFunction, RootDatum};
use crate::subset::Subset;
use crate::weyl::{TorusPoint, WeylElement};
use crate::weylgroupoid::{RestrictedRoots, WeylGroupoid};

/// `R^P` with the inner product induced by the `W_0`-invariant form
/// `(x, y) = Σ_{α ∈ R_0} ⟨x, α^∨⟩⟨y, α^∨⟩` on `X ⊗ Q`, realized by projecting
/// each restricted root orthogonally away from `QP`.
#[derive(Clone, Debug)]
pub struct RestrictedGeometry {
    pub p: Subset,
    form: Vec<Vec<Rat>>,
    proj: Vec<Vec<Rat>>,
}

impl RestrictedGeometry {
    pub fn new(g: &WeylGroupoid, p: Subset) -> Result<Self> {
        let rd = g.root_datum();
        let rr = g.restricted_roots(p)?;
        let n = rd.rank();
        let form: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: i64 = rd.coroots().iter().map(|c| c[i] * c[j]).sum();
                        rational::rat(s)
                    })
                    .collect()
            })
            .collect();
        let ip = |a: &[Rat], b: &[Rat]| -> Rat {
            let fb = rational::mat_vec(&form, b);
            rational::dot(a, &fb)
        };
        let basis: Vec<Vec<Rat>> = p
            .iter()
            .map(|k| rational::to_rat_vec(&rd.simple_roots()[k]))
            .collect();
        let gram: Vec<Vec<Rat>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| ip(a, b)).collect())
            .collect();
        let gram_inv = rational::inverse(&gram).ok_or_else(|| {
            Error::Inconsistent(format!("the form is degenerate on the span of {p}"))
        })?;
        let proj = rr
            .roots
            .iter()
            .map(|r| {
                let a = rational::to_rat_vec(rd.root(r.inducing_root));
                let rhs: Vec<Rat> = basis.iter().map(|b| ip(b, &a)).collect();
                let c = rational::mat_vec(&gram_inv, &rhs);
                let mut v = a;
                for (cj, b) in c.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= cj * y;
                    }
                }
                v
            })
            .collect();
        Ok(RestrictedGeometry { p, form, proj })
    }

    pub fn len(&self) -> usize {
        self.proj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proj.is_empty()
    }

    pub fn inner(&self, a: usize, b: usize) -> Rat {
        rational::dot(&self.proj[a], &rational::mat_vec(&self.form, &self.proj[b]))
    }

    /// `⟨a, b^∨⟩ = 2(a, b)/(b, b)`.
    pub fn cartan(&self, a: usize, b: usize) -> Rat {
        rational::rat(2) * self.inner(a, b) / self.inner(b, b)
    }

    pub fn proportional(&self, a: usize, b: usize) -> bool {
        rational::proportionality(&self.proj[a], &self.proj[b]).is_some()
    }

    /// The index of `s_b(a)` when it lies in `R^P`.
    pub fn reflect(&self, a: usize, b: usize) -> Option<usize> {
        let c = self.cartan(a, b);
        let v: Vec<Rat> = self.proj[a]
            .iter()
            .zip(&self.proj[b])
            .map(|(x, y)| x - &c * y)
            .collect();
        self.find(&v)
    }

    /// Whether `a = b + c` for the projected vectors.
    pub fn is_sum(&self, a: usize, b: usize, c: usize) -> bool {
        self.proj[a]
            .iter()
            .zip(self.proj[b].iter().zip(&self.proj[c]))
            .all(|(x, (y, z))| *x == y + z)
    }

    fn find(&self, v: &[Rat]) -> Option<usize> {
        self.proj.iter().position(|p| p.as_slice() == v)
    }

    /// The permutation of `R^P` induced by `s_b`, if `s_b` preserves `R^P`.
    pub fn reflection_permutation(&self, b: usize) -> Option<Vec<usize>> {
        (0..self.len()).map(|a| self.reflect(a, b)).collect()
    }
}

/// The permutation of `R^P` induced by `u ∈ 𝔚_{P,P}`.
pub fn root_permutation(g: &WeylGroupoid, p: Subset, u: WeylElement) -> Result<Vec<usize>> {
    let rr = g.restricted_roots(p)?;
    rr.roots
        .iter()
        .map(|r| {
            let image = g.group().act_on_root(u, r.inducing_root);
            match rr.class_of[image] {
                Some((k, 1)) => Ok(k),
                _ => Err(Error::Precondition(format!(
                    "the Weyl element {u} does not preserve R^{p}"
                ))),
            }
        })
        .collect()
}

/// A reduced integral root system `R_ξ ⊆ R^P` of mirror roots, as indices
/// into [`RestrictedRoots::roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorRootSystem {
    pub p: Subset,
    pub roots: Vec<usize>,
    /// `R_ξ ∩ R^P_+`.
    pub positive: Vec<usize>,
    /// Simple roots of `positive`.
    pub simple: Vec<usize>,
}

impl MirrorRootSystem {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.roots.binary_search(&k).is_ok()
    }

    /// Restricted coordinates of the roots.
    pub fn vectors(&self, rr: &RestrictedRoots) -> Vec<Vec<i64>> {
        self.roots
            .iter()
            .map(|&k| rr.roots[k].vector.clone())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MirrorViolation {
    /// Two proportional roots that are not negatives of each other.
    NotReduced { a: usize, b: usize },
    /// `s_b(a)` is not in the set.
    NotClosed { a: usize, b: usize },
    /// `⟨a, b^∨⟩` is not an integer.
    NotIntegral { a: usize, b: usize, value: Rat },
}

impl std::fmt::Display for MirrorViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MirrorViolation::NotReduced { a, b } => {
                write!(f, "roots {a} and {b} are proportional")
            }
            MirrorViolation::NotClosed { a, b } => {
                write!(
                    f,
                    "the reflection in root {b} maps root {a} outside the set"
                )
            }
            MirrorViolation::NotIntegral { a, b, value } => write!(
                f,
                "pairing of root {a} with the coroot of root {b} is {}",
                rational::format_rat(value)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MirrorValidation {
    Valid(MirrorRootSystem),
    Invalid(Vec<MirrorViolation>),
}

impl MirrorValidation {
    pub fn into_result(self) -> Result<MirrorRootSystem> {
        match self {
            MirrorValidation::Valid(m) => Ok(m),
            MirrorValidation::Invalid(v) => Err(Error::Inconsistent(format!(
                "not a mirror root system: {}",
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            ))),
        }
    }
}

/// Index in `R^P` of the restricted root with coordinates `v`.
pub fn restricted_index(g: &WeylGroupoid, p: Subset, v: &[i64]) -> Result<usize> {
    g.restricted_roots(p)?
        .roots
        .iter()
        .position(|r| r.vector == v)
        .ok_or_else(|| Error::InvalidInput(format!("{v:?} is not a root of R^{p}")))
}

/// Checks reducedness, closure under the own reflections and integrality of
/// a candidate set of restricted roots (given in restricted coordinates).
pub fn validate_mirror_system(
    g: &WeylGroupoid,
    p: Subset,
    candidates: &[Vec<i64>],
) -> Result<MirrorValidation> {
    let idx = candidates
        .iter()
        .map(|v| restricted_index(g, p, v))
        .collect::<Result<Vec<_>>>()?;
    validate_indices(g, p, &idx)
}

/// [`validate_mirror_system`] on indices into `R^P`.
pub fn validate_indices(g: &WeylGroupoid, p: Subset, idx: &[usize]) -> Result<MirrorValidation> {
    let rr = g.restricted_roots(p)?;
    if let Some(k) = idx.iter().find(|&&k| k >= rr.roots.len()) {
        return Err(Error::InvalidInput(format!("no root {k} in R^{p}")));
    }
    let geo = RestrictedGeometry::new(g, p)?;
    let mut roots = idx.to_vec();
    roots.sort_unstable();
    roots.dedup();
    let mut bad = vec![];
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            if b != rr.negative(a) && geo.proportional(a, b) {
                bad.push(MirrorViolation::NotReduced { a, b });
            }
        }
    }
    for &a in &roots {
        for &b in &roots {
            match geo.reflect(a, b) {
                Some(c) if roots.binary_search(&c).is_ok() => {}
                _ => bad.push(MirrorViolation::NotClosed { a, b }),
            }
            let value = geo.cartan(a, b);
            if !value.is_integer() {
                bad.push(MirrorViolation::NotIntegral { a, b, value });
            }
        }
    }
    if !bad.is_empty() {
        return Ok(MirrorValidation::Invalid(bad));
    }
    let positive: Vec<usize> = roots.iter().copied().filter(|&k| k < rr.n_pos).collect();
    let simple = positive
        .iter()
        .copied()
        .filter(|&a| {
            !positive
                .iter()
                .any(|&b| positive.iter().any(|&c| geo.is_sum(a, b, c)))
        })
        .collect();
    Ok(MirrorValidation::Valid(MirrorRootSystem {
        p,
        roots,
        positive,
        simple,
    }))
}

/// Mirrors through the principal series point `t`: the roots `α ∈ R_0`
/// with `s_α(t) = t` at which the c-factor has a pole.
pub fn mirror_roots_principal(
    g: &WeylGroupoid,
    labels: &LabelFunction,
    t: &TorusPoint,
) -> Result<MirrorRootSystem> {
    let rd = g.root_datum();
    check_point(rd, t)?;
    let p = Subset::empty();
    let rr = g.restricted_roots(p)?;
    let mut idx = vec![];
    for r in 0..rd.num_roots() {
        if fixes(g, r, t) && root_pole_order(rd, labels, r, t) == 1 {
            let (k, _) = rr.class_of[r].expect("every root restricts on a^∅");
            idx.push(k);
        }
    }
    validate_indices(g, p, &idx)?.into_result()
}

fn check_point(rd: &RootDatum, t: &TorusPoint) -> Result<()> {
    if t.rank() != rd.rank() {
        return Err(Error::InvalidInput(format!(
            "torus point has {} coordinates, expected {}",
            t.rank(),
            rd.rank()
        )));
    }
    Ok(())
}

/// Whether `s_α` fixes `t`, i.e. `⟨x, α^∨⟩ t(α) = 0` on a basis of `X`.
pub fn fixes(g: &WeylGroupoid, r: usize, t: &TorusPoint) -> bool {
    let rd = g.root_datum();
    let v = t.eval(rd.root(r));
    rd.coroot(r).iter().all(|&c| v.times(c).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rational::rat;
    use crate::rootdata::{build_classical, Family, LabelSpec, LatticeSpec};

    fn a1() -> (WeylGroupoid, LabelFunction) {
        let rd = build_classical(Family::A, 1, &LatticeSpec::Root).unwrap();
        let q = LabelFunction::new(&rd, &LabelSpec::Uniform(rat(2))).unwrap();
        (WeylGroupoid::new(&rd).unwrap(), q)
    }

    #[test]
    fn a1_mirrors() {
        let (g, q) = a1();
        let m = mirror_roots_principal(&g, &q, &TorusPoint::parse(&["0"]).unwrap()).unwrap();
        assert_eq!(m.roots.len(), 2);
        assert_eq!(m.positive.len(), 1);
        assert_eq!(m.simple, m.positive);
        let m = mirror_roots_principal(&g, &q, &TorusPoint::parse(&["1/2"]).unwrap()).unwrap();
        assert!(m.is_empty());
        let trivial = LabelFunction::trivial(g.root_datum());
        let m = mirror_roots_principal(&g, &trivial, &TorusPoint::parse(&["0"]).unwrap()).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn rank_two_mirrors_are_root_systems() {
        let rd = build_classical(Family::B, 2, &LatticeSpec::Root).unwrap();
        let g = WeylGroupoid::new(&rd).unwrap();
        let q = LabelFunction::new(&rd, &LabelSpec::Uniform(rat(3))).unwrap();
        let m = mirror_roots_principal(&g, &q, &TorusPoint::identity(2)).unwrap();
        assert_eq!(m.roots.len(), rd.num_roots());
        assert_eq!(m.simple.len(), 2);
    }

    #[test]
    fn validation_reports_violations() {
        let rd = build_classical(Family::B, 3, &LatticeSpec::Root).unwrap();
        let g = WeylGroupoid::new(&rd).unwrap();
        assert!(matches!(
            validate_indices(&g, Subset::empty(), &[]).unwrap(),
            MirrorValidation::Valid(_)
        ));
        // On a^P for P = {e2 - e3}: e1 and e1 + e2 meet at 45 degrees with
        // squared lengths 1 and 3/2.
        let p = Subset::from_indices(&[1]);
        let rr = g.restricted_roots(p).unwrap();
        let real = rd.realization().unwrap();
        let find = |amb: &[i64]| -> usize {
            let v = real.from_ambient(&rational::to_rat_vec(amb)).unwrap();
            let r = rd.root_index(&v).unwrap();
            rr.class_of[r].unwrap().0
        };
        let a = find(&[1, 0, 0]);
        let b = find(&[1, 1, 0]);
        let pair = [a, rr.negative(a)];
        assert!(matches!(
            validate_indices(&g, p, &pair).unwrap(),
            MirrorValidation::Valid(_)
        ));
        let set = [a, rr.negative(a), b, rr.negative(b)];
        let MirrorValidation::Invalid(v) = validate_indices(&g, p, &set).unwrap() else {
            panic!("expected violations");
        };
        let geo = RestrictedGeometry::new(&g, p).unwrap();
        assert_eq!(geo.cartan(a, b), rational::rat_frac(4, 3));
        assert!(v.contains(&MirrorViolation::NotIntegral {
            a,
            b,
            value: rational::rat_frac(4, 3)
        }));
        assert!(validate_indices(&g, p, &[rr.roots.len()]).is_err());
    }
}
