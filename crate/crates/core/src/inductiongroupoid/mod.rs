//! The extended groupoid `𝒲 = 𝒦 ⋊ 𝔚` of standard induction data: the groups
//! `K_P`, label tables, the action on triples `(P, δ, t)` and isotropy groups.

mod delta;
mod dtype;
mod kp;

use std::collections::{HashMap, VecDeque};

pub use delta::{DeltaEntry, DeltaSpec, DeltaTable};
pub use dtype::{classical_wpp_report, DShape, WppReport};
pub use kp::{KpGroup, MAX_KP_ORDER};

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::subset::Subset;
use crate::weyl::{TorusPoint, WeylElement};
use crate::weylgroupoid::{GroupoidArrow, WeylGroupoid};

/// Limit on the number of (arrow, label) pairs tabulated while validating a
/// label table.
pub const MAX_LABEL_MAPS: usize = 5_000_000;

/// `k × u ∈ 𝒲_{P,Q} = K_Q × 𝔚_{P,Q}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedArrow {
    pub source: Subset,
    pub target: Subset,
    pub k: TorusPoint,
    pub u: WeylElement,
}

/// A standard induction datum `(P, δ, t)` with `t ∈ T^P_u` of finite order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InductionDatum {
    pub p: Subset,
    /// Index into the labels of `Δ_P`.
    pub delta: usize,
    pub t: TorusPoint,
}

/// `𝒲_{ξ,ξ}`.
#[derive(Clone, Debug)]
pub struct IsotropyGroup {
    pub xi: InductionDatum,
    /// All elements, the identity first.
    pub elements: Vec<ExtendedArrow>,
    pub generators: Vec<ExtendedArrow>,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub struct ExtendedGroupoid {
    groupoid: WeylGroupoid,
    kp: Vec<KpGroup>,
    delta: DeltaTable,
    /// Label map `Δ_P -> Δ_Q` of every arrow `u ∈ 𝔚_{P,Q}` with `Δ_P ≠ ∅`.
    maps: HashMap<(Subset, WeylElement), Vec<usize>>,
}

impl ExtendedGroupoid {
    pub fn new(rd: &RootDatum, spec: &DeltaSpec) -> Result<Self> {
        Self::with_groupoid(WeylGroupoid::new(rd)?, spec)
    }

    pub fn with_groupoid(groupoid: WeylGroupoid, spec: &DeltaSpec) -> Result<Self> {
        let rd = groupoid.root_datum();
        let kp = groupoid
            .objects()
            .map(|p| KpGroup::new(rd, p))
            .collect::<Result<Vec<_>>>()?;
        let delta = DeltaTable::build(spec, &groupoid, &kp)?;
        let mut g = ExtendedGroupoid {
            groupoid,
            kp,
            delta,
            maps: HashMap::new(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn groupoid(&self) -> &WeylGroupoid {
        &self.groupoid
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.groupoid.root_datum()
    }

    pub fn delta(&self) -> &DeltaTable {
        &self.delta
    }

    pub fn kp(&self, p: Subset) -> &KpGroup {
        &self.kp[p.bits() as usize]
    }

    fn entry(&self, p: Subset) -> Result<&DeltaEntry> {
        self.delta
            .entries
            .get(&p)
            .ok_or_else(|| Error::InvalidInput(format!("no discrete series labels on {p}")))
    }

    /// Checks the label table: shapes, the generator relations of `K_P`,
    /// functoriality over `𝔚` and compatibility `u ∘ k = u(k) ∘ u`. Fills the
    /// table of label maps of all arrows.
    fn validate(&mut self) -> Result<()> {
        let bad = |s: String| Err(Error::Inconsistent(s));
        let n = self.root_datum().semisimple_rank();
        for (&p, e) in &self.delta.entries {
            if !p.is_subset_of(&Subset::full(n)) {
                return Err(Error::InvalidInput(format!(
                    "{p} is not a set of simple roots"
                )));
            }
            let m = e.labels.len();
            if e.dims.len() != m {
                return Err(Error::InvalidInput(format!(
                    "{p}: {m} labels but {} dimensions",
                    e.dims.len()
                )));
            }
            if e.dims.contains(&0) {
                return Err(Error::InvalidInput(format!("{p}: dimension 0")));
            }
            let k = self.kp(p);
            if e.k_action.len() != k.generators.len() {
                return Err(Error::InvalidInput(format!(
                    "{p}: {} generator actions given but K_P has {} generators",
                    e.k_action.len(),
                    k.generators.len()
                )));
            }
            for (j, perm) in e.k_action.iter().enumerate() {
                check_permutation(perm, m, &format!("{p}: action of generator {j}"))?;
                if (0..m).any(|i| e.dims[perm[i]] != e.dims[i]) {
                    return bad(format!("{p}: generator {j} changes a dimension"));
                }
                let mut x: Vec<usize> = (0..m).collect();
                for _ in 0..k.moduli[j] {
                    x = x.iter().map(|&i| perm[i]).collect();
                }
                if x.iter().enumerate().any(|(i, &v)| i != v) {
                    return bad(format!(
                        "{p}: generator {j} acts with order not dividing {}",
                        k.moduli[j]
                    ));
                }
                for (j2, perm2) in e.k_action.iter().enumerate() {
                    if (0..m).any(|i| perm[perm2[i]] != perm2[perm[i]]) {
                        return bad(format!(
                            "{p}: generators {j} and {j2} act by noncommuting maps"
                        ));
                    }
                }
            }
        }
        // Elementary maps: presence, shape, bijectivity, K-compatibility.
        for (&p, e) in &self.delta.entries {
            for b in 0..n {
                if p.contains(b) {
                    continue;
                }
                let sigma = self.groupoid.elementary_conjugation(p, p.with(b))?;
                let q = sigma.arrow.target;
                let map = self.delta.elementary.get(&(p, p.with(b))).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "missing label map for w_Q w_P with P = {p}, Q = {}",
                        p.with(b)
                    ))
                })?;
                let eq = self.entry(q).map_err(|_| {
                    Error::InvalidInput(format!("{p} has labels but its conjugate {q} has none"))
                })?;
                if eq.labels.len() != e.labels.len() {
                    return bad(format!(
                        "{p} and {q} are conjugate but carry different label counts"
                    ));
                }
                check_permutation(map, e.labels.len(), &format!("label map {p} -> {q}"))?;
                if (0..map.len()).any(|i| eq.dims[map[i]] != e.dims[i]) {
                    return bad(format!("label map {p} -> {q} changes a dimension"));
                }
                for (j, gen) in self.kp(p).generators.iter().enumerate() {
                    let moved = self.groupoid.group().act_on_torus(sigma.arrow.element, gen);
                    let kq = self.k_permutation(q, &moved)?;
                    if (0..map.len()).any(|i| map[e.k_action[j][i]] != kq[map[i]]) {
                        return bad(format!(
                            "label map {p} -> {q} does not intertwine generator {j} of K_P"
                        ));
                    }
                }
            }
        }
        // Functoriality: spread the maps from the identities along
        // elementary conjugations, checking every coincidence.
        let mut budget = 0usize;
        let mut maps: HashMap<(Subset, WeylElement), Vec<usize>> = HashMap::new();
        let elementary: HashMap<Subset, Vec<(GroupoidArrow, Subset)>> = self
            .delta
            .entries
            .keys()
            .map(|&q| {
                let list = (0..n)
                    .filter(|&b| !q.contains(b))
                    .map(|b| {
                        self.groupoid
                            .elementary_conjugation(q, q.with(b))
                            .map(|s| (s.arrow, q.with(b)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((q, list))
            })
            .collect::<Result<_>>()?;
        let group = self.groupoid.group();
        for (&p, e) in &self.delta.entries {
            let m = e.labels.len();
            let mut queue = VecDeque::from([(p, 0usize)]);
            maps.insert((p, 0), (0..m).collect());
            while let Some((q, u)) = queue.pop_front() {
                let cur = maps[&(p, u)].clone();
                for (sigma, via) in &elementary[&q] {
                    let v = group.mul(sigma.element, u);
                    let step = &self.delta.elementary[&(q, *via)];
                    let next: Vec<usize> = cur.iter().map(|&i| step[i]).collect();
                    match maps.get(&(p, v)) {
                        Some(old) if *old != next => {
                            return bad(format!(
                                "label maps are not functorial: two factorizations of an arrow from {p} disagree"
                            ));
                        }
                        Some(_) => {}
                        None => {
                            budget += m.max(1);
                            if budget > MAX_LABEL_MAPS {
                                return Err(Error::GuardExceeded(format!(
                                    "more than {MAX_LABEL_MAPS} label images to tabulate"
                                )));
                            }
                            maps.insert((p, v), next);
                            queue.push_back((sigma.target, v));
                        }
                    }
                }
            }
        }
        self.maps = maps;
        Ok(())
    }

    /// The permutation of `Δ_P` by `k ∈ K_P`.
    pub fn k_permutation(&self, p: Subset, k: &TorusPoint) -> Result<Vec<usize>> {
        let e = self.entry(p)?;
        let kp = self.kp(p);
        let coords = kp
            .coordinates(k)
            .ok_or_else(|| Error::InvalidInput(format!("{k} is not an element of K_{p}")))?;
        let mut x: Vec<usize> = (0..e.labels.len()).collect();
        for (j, &a) in coords.iter().enumerate() {
            for _ in 0..a {
                x = x.iter().map(|&i| e.k_action[j][i]).collect();
            }
        }
        Ok(x)
    }

    /// The label map `δ ↦ δ^u` of `u ∈ 𝔚_{P,Q}`.
    pub fn label_map(&self, arrow: &GroupoidArrow) -> Result<&[usize]> {
        self.maps
            .get(&(arrow.source, arrow.element))
            .map(Vec::as_slice)
            .ok_or_else(|| {
                Error::InvalidInput(format!("no label map for an arrow from {}", arrow.source))
            })
    }

    /// The same map, recomputed from the canonical factorization into
    /// elementary conjugations.
    pub fn label_map_by_decomposition(&self, arrow: &GroupoidArrow) -> Result<Vec<usize>> {
        let m = self.entry(arrow.source)?.labels.len();
        let d = self.groupoid.decompose(arrow)?;
        let mut x: Vec<usize> = (0..m).collect();
        for f in d.factors.iter().rev() {
            let step = &self.delta.elementary[&(f.arrow.source, f.via)];
            x = x.iter().map(|&i| step[i]).collect();
        }
        Ok(x)
    }

    pub fn arrow(&self, source: Subset, k: TorusPoint, u: WeylElement) -> Result<ExtendedArrow> {
        let a = self.groupoid.arrow(source, u)?;
        if !self.kp(a.target).contains(&k) {
            return Err(Error::InvalidInput(format!(
                "{k} is not an element of K_{}",
                a.target
            )));
        }
        Ok(ExtendedArrow {
            source,
            target: a.target,
            k,
            u,
        })
    }

    pub fn identity(&self, p: Subset) -> ExtendedArrow {
        ExtendedArrow {
            source: p,
            target: p,
            k: TorusPoint::identity(self.root_datum().rank()),
            u: 0,
        }
    }

    pub fn quotient(&self, g: &ExtendedArrow) -> GroupoidArrow {
        GroupoidArrow {
            source: g.source,
            target: g.target,
            element: g.u,
        }
    }

    /// `(k × u) ∘ (l × v) = k u(l) × uv`.
    pub fn compose(&self, a: &ExtendedArrow, b: &ExtendedArrow) -> Result<ExtendedArrow> {
        if b.target != a.source {
            return Err(Error::Precondition(format!(
                "cannot compose: target {} differs from source {}",
                b.target, a.source
            )));
        }
        let group = self.groupoid.group();
        Ok(ExtendedArrow {
            source: b.source,
            target: a.target,
            k: a.k.mul(&group.act_on_torus(a.u, &b.k)),
            u: group.mul(a.u, b.u),
        })
    }

    pub fn inverse(&self, a: &ExtendedArrow) -> ExtendedArrow {
        let group = self.groupoid.group();
        let ui = group.inverse(a.u);
        ExtendedArrow {
            source: a.target,
            target: a.source,
            k: group.act_on_torus(ui, &a.k.inverse()),
            u: ui,
        }
    }

    /// `K_Q × 𝔚_{P,Q}`.
    pub fn hom_set(&self, p: Subset, q: Subset) -> Result<Vec<ExtendedArrow>> {
        let ks = self.kp(q).elements()?;
        let mut out = vec![];
        for a in self.groupoid.hom_set(p, q) {
            for k in &ks {
                out.push(ExtendedArrow {
                    source: p,
                    target: q,
                    k: k.clone(),
                    u: a.element,
                });
            }
        }
        Ok(out)
    }

    /// Checks `t ∈ T^P` and that the label exists.
    pub fn datum(&self, p: Subset, delta: usize, t: TorusPoint) -> Result<InductionDatum> {
        let rd = self.root_datum();
        if t.rank() != rd.rank() {
            return Err(Error::InvalidInput(format!(
                "torus point has {} coordinates, expected {}",
                t.rank(),
                rd.rank()
            )));
        }
        let m = self.entry(p)?.labels.len();
        if delta >= m {
            return Err(Error::InvalidInput(format!(
                "label {delta} out of range for {p} ({m} labels)"
            )));
        }
        for b in &self.kp(p).saturation {
            if !t.eval(b).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "t = {t} is not trivial on X ∩ QP (value {} on {b:?})",
                    t.eval(b)
                )));
            }
        }
        Ok(InductionDatum { p, delta, t })
    }

    /// `g(P, δ, t) = (u(P), δ^g, k u(t))`.
    pub fn act_on_datum(&self, g: &ExtendedArrow, xi: &InductionDatum) -> Result<InductionDatum> {
        if g.source != xi.p {
            return Err(Error::Precondition(format!(
                "arrow starts at {} but the datum lives on {}",
                g.source, xi.p
            )));
        }
        let u_map = self.label_map(&self.quotient(g))?;
        let k_map = self.k_permutation(g.target, &g.k)?;
        let group = self.groupoid.group();
        Ok(InductionDatum {
            p: g.target,
            delta: k_map[u_map[xi.delta]],
            t: g.k.mul(&group.act_on_torus(g.u, &xi.t)),
        })
    }

    /// `𝒲_{ξ,ξ}` by exhaustive search over `K_P × 𝔚_{P,P}`.
    pub fn isotropy_group(&self, xi: &InductionDatum) -> Result<IsotropyGroup> {
        let mut elements = vec![];
        for g in self.hom_set(xi.p, xi.p)? {
            if self.act_on_datum(&g, xi)? == *xi {
                elements.push(g);
            }
        }
        elements.sort_by_key(|g| (g.u != 0 || !g.k.is_identity(), g.u, g.k.clone()));
        let generators = self.generating_set(&elements)?;
        Ok(IsotropyGroup {
            xi: xi.clone(),
            elements,
            generators,
        })
    }

    /// A greedy generating set of a finite group of arrows at one object.
    pub fn generating_set(&self, elements: &[ExtendedArrow]) -> Result<Vec<ExtendedArrow>> {
        let Some(first) = elements.first() else {
            return Ok(vec![]);
        };
        let mut span = vec![self.identity(first.source)];
        let mut gens = vec![];
        for g in elements {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let mut k = 0;
            while k < span.len() {
                for h in &gens {
                    let x = self.compose(h, &span[k])?;
                    if !span.contains(&x) {
                        span.push(x);
                    }
                }
                k += 1;
            }
        }
        Ok(gens)
    }

    /// Remark on the Morita reduction to `𝔚`: the projection `𝒲 -> 𝔚` is an
    /// equivalence on orbit data exactly when every `K_δ` (the isotropy of a
    /// label in `K_P`) is trivial. Returns the orders `|K_δ|` per `(P, δ)`.
    pub fn label_isotropy_orders(&self) -> Result<Vec<(Subset, usize, usize)>> {
        let mut out = vec![];
        for (&p, e) in &self.delta.entries {
            let ks = self.kp(p).elements()?;
            let perms = ks
                .iter()
                .map(|k| self.k_permutation(p, k))
                .collect::<Result<Vec<_>>>()?;
            for i in 0..e.labels.len() {
                out.push((p, i, perms.iter().filter(|x| x[i] == i).count()));
            }
        }
        Ok(out)
    }
}

fn check_permutation(perm: &[usize], m: usize, what: &str) -> Result<()> {
    if perm.len() != m {
        return Err(Error::InvalidInput(format!(
            "{what}: length {} instead of {m}",
            perm.len()
        )));
    }
    let mut seen = vec![false; m];
    for &i in perm {
        if i >= m || seen[i] {
            return Err(Error::InvalidInput(format!("{what}: not a permutation")));
        }
        seen[i] = true;
    }
    Ok(())
}
