//! Central extensions `1 → C_N → G̃ → G → 1` and lifting homomorphisms
//! through them.

use super::cohomology::{is_coboundary, schur_multiplier, CoboundaryTest, TwoCocycle};
use super::group::{check_homomorphism, extend_homomorphism, FiniteGroup};
use crate::error::{Error, Result};

/// Limit on the number of generator lifts tried by [`pullback_through_cover`].
pub const MAX_LIFT_CHOICES: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub group: FiniteGroup,
    /// The quotient map `G̃ → G` as a table of images.
    pub quotient: Vec<usize>,
    /// The kernel of `quotient`, sorted.
    pub kernel: Vec<usize>,
    /// A generator of the kernel, which is cyclic.
    pub central_generator: usize,
}

impl CentralExtension {
    /// `G̃ = Z/N × G` with `(a, g)(b, h) = (a + b + c(g, h), gh)`. Element
    /// `(a, g)` has index `a |G| + g`; the section `g ↦ (0, g)` has factor set
    /// `c` and the central generator is `(1, e)`.
    pub fn from_cocycle(g: &FiniteGroup, c: &TwoCocycle) -> Result<Self> {
        if c.group_order() != g.order() {
            return Err(Error::InvalidInput(
                "cocycle and group differ in order".into(),
            ));
        }
        let n = g.order();
        let m = c.modulus() as usize;
        let total = n * m;
        let table: Vec<Vec<usize>> = (0..total)
            .map(|x| {
                let (a, u) = (x / n, x % n);
                (0..total)
                    .map(|y| {
                        let (b, v) = (y / n, y % n);
                        let s = (a + b + c.value(u, v) as usize) % m;
                        s * n + g.mul(u, v)
                    })
                    .collect()
            })
            .collect();
        let names = (0..total)
            .map(|x| {
                let (a, u) = (x / n, x % n);
                if a == 0 {
                    g.name(u).to_string()
                } else {
                    format!("z^{a}·{}", g.name(u))
                }
            })
            .collect();
        let group = FiniteGroup::from_table(table, Some(names))?;
        let quotient = (0..total).map(|x| x % n).collect();
        Self::from_map(group, quotient, g, Some((1 % m) * n + g.identity()))
    }

    /// Validates a surjective homomorphism with central cyclic kernel.
    pub fn from_map(
        group: FiniteGroup,
        quotient: Vec<usize>,
        base: &FiniteGroup,
        central_generator: Option<usize>,
    ) -> Result<Self> {
        check_homomorphism(&group, base, &quotient)?;
        let mut hit = vec![false; base.order()];
        for &x in &quotient {
            hit[x] = true;
        }
        if hit.contains(&false) {
            return Err(Error::InvalidInput("quotient map is not surjective".into()));
        }
        let kernel: Vec<usize> = (0..group.order())
            .filter(|&x| quotient[x] == base.identity())
            .collect();
        let center = group.center();
        if kernel.iter().any(|k| center.binary_search(k).is_err()) {
            return Err(Error::InvalidInput("kernel is not central".into()));
        }
        let gen = match central_generator {
            Some(z) => z,
            None => *kernel
                .iter()
                .find(|&&z| group.element_order(z) == kernel.len())
                .ok_or_else(|| Error::InvalidInput("kernel is not cyclic".into()))?,
        };
        if kernel.binary_search(&gen).is_err() || group.closure(&[gen]).len() != kernel.len() {
            return Err(Error::InvalidInput(
                "central generator does not generate the kernel".into(),
            ));
        }
        Ok(CentralExtension {
            group,
            quotient,
            kernel,
            central_generator: gen,
        })
    }

    /// `⟨η⟩ ↪ 𝔇_8 ↠ ⟨ω⟩ × ⟨κ⟩` with `ω̃ ↦ ω`, `κ̃ ↦ κ`.
    pub fn dihedral_cover() -> (FiniteGroup, CentralExtension) {
        let d8 = FiniteGroup::dihedral8();
        let q = FiniteGroup::klein();
        let gens = [
            d8.find("ω̃").expect("generator"),
            d8.find("κ̃").expect("generator"),
        ];
        let images = [
            q.find("ω").expect("generator"),
            q.find("κ").expect("generator"),
        ];
        let f = extend_homomorphism(&d8, &gens, &q, &images).expect("ω̃, κ̃ map to ω, κ");
        let ext = Self::from_map(d8, f, &q, None).expect("valid extension");
        (q, ext)
    }

    /// Checks that this is a Schur cover of `base`: the kernel lies in the
    /// commutator subgroup and has the order of the Schur multiplier.
    pub fn validate_schur_cover(&self, base: &FiniteGroup) -> Result<()> {
        let schur: u64 = schur_multiplier(base)?.iter().product();
        if self.kernel.len() as u64 != schur {
            return Err(Error::InvalidInput(format!(
                "kernel of order {} but the Schur multiplier has order {schur}",
                self.kernel.len()
            )));
        }
        let comm = self.group.commutator_subgroup();
        if self.kernel.iter().any(|k| comm.binary_search(k).is_err()) {
            return Err(Error::InvalidInput(
                "kernel is not contained in the commutator subgroup".into(),
            ));
        }
        Ok(())
    }

    /// The factor set of a section `s: G → G̃`, written in powers of the
    /// central generator.
    pub fn factor_set(&self, base: &FiniteGroup, section: &[usize]) -> Result<TwoCocycle> {
        let n = base.order();
        if section.len() != n || (0..n).any(|g| self.quotient[section[g]] != g) {
            return Err(Error::InvalidInput(
                "not a section of the quotient map".into(),
            ));
        }
        if section[base.identity()] != self.group.identity() {
            return Err(Error::InvalidInput("section must fix the identity".into()));
        }
        let powers: Vec<usize> = {
            let mut v = vec![self.group.identity()];
            while v.len() < self.kernel.len() {
                v.push(
                    self.group
                        .mul(*v.last().expect("nonempty"), self.central_generator),
                );
            }
            v
        };
        TwoCocycle::from_fn(base, self.kernel.len() as u64, |a, b| {
            let lhs = self.group.mul(section[a], section[b]);
            let z = self
                .group
                .mul(lhs, self.group.inverse(section[base.mul(a, b)]));
            powers.iter().position(|&p| p == z).expect("central") as i64
        })
    }
}

/// Outcome of [`pullback_through_cover`].
#[derive(Clone, Debug)]
pub struct PullbackVerdict {
    /// A homomorphism `G → G̃` lifting `f`, if one exists.
    pub lift: Option<Vec<usize>>,
    pub pulled_back: TwoCocycle,
    pub coboundary: CoboundaryTest,
}

impl PullbackVerdict {
    pub fn lifts(&self) -> bool {
        self.lift.is_some()
    }
}

/// Searches for a lift of `f: G → Q` through a Schur cover of `Q` and
/// decides whether `f^* c` is a coboundary.
///
/// A lift forces `f^* c` to be trivial for every `c`, so a lift together
/// with a nontrivial pullback is reported as an inconsistency.
pub fn pullback_through_cover(
    g: &FiniteGroup,
    f: &[usize],
    q: &FiniteGroup,
    c: &TwoCocycle,
    cover: &CentralExtension,
) -> Result<PullbackVerdict> {
    check_homomorphism(g, q, f)?;
    cover.validate_schur_cover(q)?;
    if cover.quotient.iter().any(|&x| x >= q.order()) {
        return Err(Error::InvalidInput("cover does not map onto Q".into()));
    }
    let gens = g.generating_set();
    let fibres: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..cover.group.order())
                .filter(|&x| cover.quotient[x] == f[s])
                .collect()
        })
        .collect();
    let choices: u128 = fibres.iter().map(|v| v.len() as u128).product();
    if choices > MAX_LIFT_CHOICES {
        return Err(Error::GuardExceeded(format!(
            "{choices} generator lifts exceed {MAX_LIFT_CHOICES}"
        )));
    }
    let mut lift = None;
    let mut pick = vec![0usize; gens.len()];
    'search: loop {
        let images: Vec<usize> = pick.iter().zip(&fibres).map(|(&i, v)| v[i]).collect();
        if let Some(h) = extend_homomorphism(g, &gens, &cover.group, &images) {
            lift = Some(h);
            break;
        }
        for j in 0..pick.len() {
            pick[j] += 1;
            if pick[j] < fibres[j].len() {
                continue 'search;
            }
            pick[j] = 0;
        }
        break;
    }
    let pulled_back = c.pullback(f);
    let coboundary = is_coboundary(g, &pulled_back)?;
    if lift.is_some() && !coboundary.is_coboundary() {
        return Err(Error::Inconsistent(
            "f lifts to the Schur cover but f^*c is not a coboundary".into(),
        ));
    }
    Ok(PullbackVerdict {
        lift,
        pulled_back,
        coboundary,
    })
}
