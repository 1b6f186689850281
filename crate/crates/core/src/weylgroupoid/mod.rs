//! The Weyl groupoid: objects are subsets `P ⊆ F_0`, arrows `P -> Q` are the
//! `w ∈ W_0` with `w(P) = Q`. Includes restricted roots, chambers and the
//! factorization of arrows into elementary conjugations.

mod chambers;
mod fm;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intlin::rational::{self, Rat};
use crate::intlin::{integer_kernel, IntegerMatrix};
use crate::rootdata::RootDatum;
use crate::subset::Subset;
use crate::weyl::{WeylElement, WeylGroup};

pub use chambers::{Chamber, ChamberCheck};
pub use fm::strict_cone_witness;

/// `w ∈ W_0` with `w(source) = target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidArrow {
    pub source: Subset,
    pub target: Subset,
    pub element: WeylElement,
}

/// `σ = w_Q w_P` for `P ⊂ Q` with `|Q \ P| = 1`, as an arrow `P -> σ(P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryConjugation {
    pub arrow: GroupoidArrow,
    pub via: Subset,
    pub self_opposed: bool,
}

/// Primitive restriction of a root to `a^P`, in coordinates dual to
/// [`RestrictedRoots::basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRoot {
    pub vector: Vec<i64>,
    /// Root of smallest height (and index) restricting to `vector`.
    pub inducing_root: usize,
    pub positive: bool,
    /// For a simple restricted root, the simple root of `F_0 \ P` it comes from.
    pub simple: Option<usize>,
}

/// `R^P` with `R^P_+` first (ordered by inducing root) and the negatives after
/// in the same order.
#[derive(Clone, Debug)]
pub struct RestrictedRoots {
    pub p: Subset,
    /// Integer basis of `Y ∩ a^P`.
    pub basis: Vec<Vec<i64>>,
    pub roots: Vec<RestrictedRoot>,
    pub n_pos: usize,
    /// For each root of `R_0`: the restricted root proportional to its
    /// restriction and the (positive integer) multiple, `None` on `R_P`.
    pub class_of: Vec<Option<(usize, i64)>>,
}

impl RestrictedRoots {
    pub fn positive(&self) -> &[RestrictedRoot] {
        &self.roots[..self.n_pos]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn negative(&self, k: usize) -> usize {
        if k < self.n_pos {
            k + self.n_pos
        } else {
            k - self.n_pos
        }
    }

    /// Indices of the simple restricted roots.
    pub fn simple(&self) -> Vec<usize> {
        (0..self.n_pos)
            .filter(|&k| self.roots[k].simple.is_some())
            .collect()
    }
}

pub struct WeylGroupoid {
    rd: RootDatum,
    group: WeylGroup,
    longest: Vec<OnceLock<WeylElement>>,
    restricted: Vec<OnceLock<std::result::Result<RestrictedRoots, Error>>>,
}

impl WeylGroupoid {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let group = WeylGroup::generate(rd)?;
        Ok(Self::with_group(rd, group))
    }

    pub fn with_group(rd: &RootDatum, group: WeylGroup) -> Self {
        let n = 1usize << rd.semisimple_rank();
        WeylGroupoid {
            rd: rd.clone(),
            group,
            longest: (0..n).map(|_| OnceLock::new()).collect(),
            restricted: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.rd.semisimple_rank())
    }

    /// All objects `P ⊆ F_0` in order of their bitmask.
    pub fn objects(&self) -> impl Iterator<Item = Subset> {
        Subset::all(self.rd.semisimple_rank())
    }

    fn check_subset(&self, p: Subset) -> Result<()> {
        if p.is_subset_of(&self.full()) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{p} is not a subset of the {} simple roots",
                self.rd.semisimple_rank()
            )))
        }
    }

    /// `w_P`.
    pub fn longest(&self, p: Subset) -> WeylElement {
        *self.longest[p.bits() as usize].get_or_init(|| self.group.longest_element(p))
    }

    /// `𝔚_{P,Q}`.
    pub fn hom_set(&self, p: Subset, q: Subset) -> Vec<GroupoidArrow> {
        if p.len() != q.len() {
            return vec![];
        }
        self.group
            .elements()
            .filter(|&w| self.group.map_subset(w, p) == Some(q))
            .map(|element| GroupoidArrow {
                source: p,
                target: q,
                element,
            })
            .collect()
    }

    /// All arrows with source `P`.
    pub fn arrows_from(&self, p: Subset) -> Vec<GroupoidArrow> {
        self.group
            .elements()
            .filter_map(|w| {
                self.group.map_subset(w, p).map(|target| GroupoidArrow {
                    source: p,
                    target,
                    element: w,
                })
            })
            .collect()
    }

    pub fn arrow(&self, p: Subset, w: WeylElement) -> Result<GroupoidArrow> {
        self.check_subset(p)?;
        let target = self
            .group
            .map_subset(w, p)
            .ok_or_else(|| Error::Precondition(format!("element {w} does not map {p} into F_0")))?;
        Ok(GroupoidArrow {
            source: p,
            target,
            element: w,
        })
    }

    /// `a ∘ b` (first `b`, then `a`).
    pub fn compose(&self, a: &GroupoidArrow, b: &GroupoidArrow) -> Result<GroupoidArrow> {
        if b.target != a.source {
            return Err(Error::Precondition(format!(
                "cannot compose: target {} differs from source {}",
                b.target, a.source
            )));
        }
        Ok(GroupoidArrow {
            source: b.source,
            target: a.target,
            element: self.group.mul(a.element, b.element),
        })
    }

    pub fn inverse(&self, a: &GroupoidArrow) -> GroupoidArrow {
        GroupoidArrow {
            source: a.target,
            target: a.source,
            element: self.group.inverse(a.element),
        }
    }

    pub fn identity(&self, p: Subset) -> GroupoidArrow {
        GroupoidArrow {
            source: p,
            target: p,
            element: 0,
        }
    }

    /// Classes of associate subsets, each sorted, in order of their smallest
    /// member.
    pub fn associate_classes(&self) -> Vec<Vec<Subset>> {
        let mut classes: Vec<Vec<Subset>> = vec![];
        let mut done = vec![false; 1 << self.rd.semisimple_rank()];
        for p in self.objects() {
            if done[p.bits() as usize] {
                continue;
            }
            let mut class: Vec<Subset> = self.arrows_from(p).iter().map(|a| a.target).collect();
            class.sort();
            class.dedup();
            for q in &class {
                done[q.bits() as usize] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// `w^P = w_0 w_P ∈ 𝔚_{P, P̄}`.
    pub fn conjugate(&self, p: Subset) -> GroupoidArrow {
        let w = self.group.mul(self.longest(self.full()), self.longest(p));
        GroupoidArrow {
            source: p,
            target: self
                .group
                .map_subset(w, p)
                .expect("w_0 w_P maps P into F_0"),
            element: w,
        }
    }

    /// `σ_Q^P = w_Q w_P`.
    pub fn elementary_conjugation(&self, p: Subset, q: Subset) -> Result<ElementaryConjugation> {
        self.check_subset(q)?;
        if !p.is_subset_of(&q) || q.len() != p.len() + 1 {
            return Err(Error::Precondition(format!(
                "{p} is not a maximal proper subset of {q}"
            )));
        }
        let w = self.group.mul(self.longest(q), self.longest(p));
        let target = self
            .group
            .map_subset(w, p)
            .ok_or_else(|| Error::Inconsistent("w_Q w_P does not map P into F_0".into()))?;
        if !target.is_subset_of(&q) {
            return Err(Error::Inconsistent("w_Q w_P does not map P into Q".into()));
        }
        Ok(ElementaryConjugation {
            arrow: GroupoidArrow {
                source: p,
                target,
                element: w,
            },
            via: q,
            self_opposed: self.group.mul(w, w) == 0,
        })
    }

    /// `R^P`.
    pub fn restricted_roots(&self, p: Subset) -> Result<&RestrictedRoots> {
        self.check_subset(p)?;
        self.restricted[p.bits() as usize]
            .get_or_init(|| compute_restricted(&self.rd, p))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `Σ_{β ∈ F_0 \ R} coef_β(α)`, i.e. `α` evaluated at the point of
    /// `a^{R,+}` where all simple roots outside `R` take the value 1.
    fn height_function(&self, r: Subset, alpha: usize) -> i64 {
        self.rd
            .simple_coefficients(alpha)
            .iter()
            .enumerate()
            .filter(|(k, _)| !r.contains(*k))
            .map(|(_, c)| c)
            .sum()
    }

    /// Signs over `R^Q_+` of the chamber `u(a^{R,+})` of `a^Q`, for
    /// `u ∈ 𝔚_{R,Q}`; `true` means positive.
    pub fn chamber_signs(&self, arrow: &GroupoidArrow) -> Result<Vec<bool>> {
        let rq = self.restricted_roots(arrow.target)?;
        let inv = self.group.inverse(arrow.element);
        Ok(rq
            .positive()
            .iter()
            .map(|root| {
                let a = self.group.act_on_root(inv, root.inducing_root);
                self.height_function(arrow.source, a) > 0
            })
            .collect())
    }

    /// Height of `(Q, u(a^{R,+}))`: the number of walls separating it from
    /// the positive chamber.
    pub fn height(&self, arrow: &GroupoidArrow) -> Result<usize> {
        Ok(self.chamber_signs(arrow)?.iter().filter(|s| !**s).count())
    }

    /// Factorization `w = x_1 ⋯ x_n` into elementary conjugations with
    /// `n` equal to the height, together with the minimal gallery
    /// `a^{Q,+} = C_0, ..., C_n = w(a^{P,+})` where `C_i = w_i(a^{P_i,+})`
    /// is recorded as the arrow `w_i`.
    pub fn decompose(&self, arrow: &GroupoidArrow) -> Result<Decomposition> {
        let q = arrow.target;
        let mut u = *arrow;
        let mut h = self.height(&u)?;
        let total = h;
        let mut factors = vec![];
        let mut gallery = vec![u];
        while h > 0 {
            let mut stepped = false;
            for b in 0..self.rd.semisimple_rank() {
                if u.source.contains(b) {
                    continue;
                }
                let sigma = self.elementary_conjugation(u.source, u.source.with(b))?;
                let next = GroupoidArrow {
                    source: sigma.arrow.target,
                    target: q,
                    element: self
                        .group
                        .mul(u.element, self.group.inverse(sigma.arrow.element)),
                };
                if self.height(&next)? + 1 == h {
                    factors.push(sigma);
                    gallery.push(next);
                    u = next;
                    h -= 1;
                    stepped = true;
                    break;
                }
            }
            if !stepped {
                return Err(Error::Inconsistent(format!(
                    "no wall of height {h} chamber leads towards the positive chamber"
                )));
            }
        }
        if u.element != 0 || u.source != q {
            return Err(Error::Inconsistent(
                "walk ended at a positive chamber other than a^{Q,+}".into(),
            ));
        }
        factors.reverse();
        gallery.reverse();
        let d = Decomposition {
            arrow: *arrow,
            factors,
            gallery,
            height: total,
        };
        if !d.factors.is_empty() && self.product(&d.factors)? != *arrow {
            return Err(Error::Inconsistent("factors do not multiply to w".into()));
        }
        Ok(d)
    }

    /// Every factorization of minimal length (one per minimal gallery).
    pub fn all_minimal_decompositions(
        &self,
        arrow: &GroupoidArrow,
    ) -> Result<Vec<Vec<ElementaryConjugation>>> {
        let h = self.height(arrow)?;
        let mut out = vec![];
        self.descend(*arrow, h, &mut vec![], &mut out)?;
        for f in &mut out {
            f.reverse();
        }
        Ok(out)
    }

    fn descend(
        &self,
        u: GroupoidArrow,
        h: usize,
        acc: &mut Vec<ElementaryConjugation>,
        out: &mut Vec<Vec<ElementaryConjugation>>,
    ) -> Result<()> {
        if h == 0 {
            out.push(acc.clone());
            return Ok(());
        }
        for b in 0..self.rd.semisimple_rank() {
            if u.source.contains(b) {
                continue;
            }
            let sigma = self.elementary_conjugation(u.source, u.source.with(b))?;
            let next = GroupoidArrow {
                source: sigma.arrow.target,
                target: u.target,
                element: self
                    .group
                    .mul(u.element, self.group.inverse(sigma.arrow.element)),
            };
            if self.height(&next)? + 1 == h {
                acc.push(sigma);
                self.descend(next, h - 1, acc, out)?;
                acc.pop();
            }
        }
        Ok(())
    }

    /// `x_1 ∘ ⋯ ∘ x_n`, checking that sources and targets match.
    pub fn product(&self, factors: &[ElementaryConjugation]) -> Result<GroupoidArrow> {
        let mut it = factors.iter().rev();
        let Some(first) = it.next() else {
            return Err(Error::InvalidInput("empty product has no source".into()));
        };
        let mut acc = first.arrow;
        for f in it {
            acc = self.compose(&f.arrow, &acc)?;
        }
        Ok(acc)
    }
}

/// Result of [`WeylGroupoid::decompose`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub arrow: GroupoidArrow,
    pub factors: Vec<ElementaryConjugation>,
    pub gallery: Vec<GroupoidArrow>,
    pub height: usize,
}

fn compute_restricted(rd: &RootDatum, p: Subset) -> Result<RestrictedRoots> {
    let n = rd.rank();
    let prow: Vec<Vec<i64>> = p.iter().map(|i| rd.root(i).to_vec()).collect();
    let basis: Vec<Vec<i64>> = integer_kernel(&IntegerMatrix::from_rows_with_cols(&prow, n)?)
        .into_iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    i64::try_from(x)
                        .map_err(|_| Error::GuardExceeded("kernel entry exceeds 64 bits".into()))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    let restrict = |r: usize| -> Vec<i64> {
        basis
            .iter()
            .map(|b| rd.root(r).iter().zip(b).map(|(x, y)| x * y).sum())
            .collect()
    };
    let np = rd.num_positive();
    let in_rp = |r: usize| {
        rd.simple_coefficients(r)
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || p.contains(k))
    };
    // Group positive roots outside R_P by the ray of their restriction.
    let mut classes: Vec<(Vec<i64>, Vec<(usize, Vec<i64>)>)> = vec![];
    for r in 0..np {
        if in_rp(r) {
            continue;
        }
        let v = restrict(r);
        let ray: Vec<i64> = primitive(&v);
        match classes.iter_mut().find(|(c, _)| *c == ray) {
            Some((_, members)) => members.push((r, v)),
            None => classes.push((ray, vec![(r, v)])),
        }
    }
    let mut class_of = vec![None; rd.num_roots()];
    let mut positives: Vec<RestrictedRoot> = vec![];
    // Primitive member: the one dividing all others.
    let mut pending: Vec<(usize, RestrictedRoot, Vec<(usize, i64)>)> = vec![];
    for (ray, members) in &classes {
        let scale = |v: &[i64]| -> i64 {
            let k = ray
                .iter()
                .position(|&x| x != 0)
                .expect("nonzero restriction");
            v[k] / ray[k]
        };
        let m = members
            .iter()
            .map(|(_, v)| scale(v))
            .min()
            .expect("nonempty class");
        let mut mult = vec![];
        for (r, v) in members {
            let s = scale(v);
            if s % m != 0 {
                return Err(Error::Inconsistent(format!(
                    "restrictions to a^{p} on the ray {ray:?} have no primitive element"
                )));
            }
            mult.push((*r, s / m));
        }
        let inducing = mult
            .iter()
            .filter(|(_, k)| *k == 1)
            .map(|(r, _)| *r)
            .min()
            .expect("primitive member exists");
        let vector: Vec<i64> = ray.iter().map(|x| x * m).collect();
        let simple = (inducing < rd.semisimple_rank()).then_some(inducing);
        pending.push((
            inducing,
            RestrictedRoot {
                vector,
                inducing_root: inducing,
                positive: true,
                simple,
            },
            mult,
        ));
    }
    pending.sort_by_key(|(i, _, _)| *i);
    for (k, (_, root, mult)) in pending.into_iter().enumerate() {
        for (r, m) in mult {
            class_of[r] = Some((k, m));
        }
        positives.push(root);
    }
    let n_pos = positives.len();
    for r in 0..np {
        if let Some((k, m)) = class_of[r] {
            class_of[rd.negative(r)] = Some((k + n_pos, m));
        }
    }
    // Every simple root outside P must restrict to a primitive element.
    for b in 0..rd.semisimple_rank() {
        if !p.contains(b) && class_of[b].map(|(_, m)| m) != Some(1) {
            return Err(Error::Inconsistent(format!(
                "simple root {b} restricts to a non-primitive element of R^{p}"
            )));
        }
    }
    let negatives: Vec<RestrictedRoot> = positives
        .iter()
        .map(|r| RestrictedRoot {
            vector: r.vector.iter().map(|x| -x).collect(),
            inducing_root: rd.negative(r.inducing_root),
            positive: false,
            simple: None,
        })
        .collect();
    let mut roots = positives;
    roots.extend(negatives);
    Ok(RestrictedRoots {
        p,
        basis,
        roots,
        n_pos,
        class_of,
    })
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    v.iter().map(|x| x / g).collect()
}

/// Rational point of `a^P` (in `Y ⊗ Q`) where `α = 0` on `P` and `β = 1` on
/// `F_0 \ P`.
pub fn positive_point(rd: &RootDatum, p: Subset) -> Vec<Rat> {
    let rows: Vec<Vec<Rat>> = rd
        .simple_roots()
        .iter()
        .map(|r| rational::to_rat_vec(r))
        .collect();
    let rhs: Vec<Rat> = (0..rd.semisimple_rank())
        .map(|k| {
            if p.contains(k) {
                Rat::zero()
            } else {
                Rat::from_integer(BigInt::from(1))
            }
        })
        .collect();
    rational::solve(&rows, &rhs, rd.rank()).expect("simple roots are independent")
}
