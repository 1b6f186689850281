//! Finite tables of discrete-series labels `Δ_P` and the action of the
//! extended groupoid on them.

use std::collections::{BTreeMap, BTreeSet};

use super::KpGroup;
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::weyl::TorusPoint;
use crate::weylgroupoid::WeylGroupoid;

/// The labels of `Δ_P` for one `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEntry {
    pub labels: Vec<String>,
    /// `dim V_δ` for each label.
    pub dims: Vec<u32>,
    /// `k_action[j][i]` is the label `δ_i^{k_j}` for the `j`-th generator
    /// `k_j` of `K_P`.
    pub k_action: Vec<Vec<usize>>,
}

/// Labels for every `P` that carries discrete series, together with the maps
/// `δ ↦ δ^σ` for the elementary conjugations `σ = w_Q w_P`.
///
/// Subsets absent from `entries` have `Δ_P = ∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaTable {
    pub entries: BTreeMap<Subset, DeltaEntry>,
    /// Keyed by `(P, Q)`; maps `Δ_P` to `Δ_{σ(P)}`.
    pub elementary: BTreeMap<(Subset, Subset), Vec<usize>>,
}

/// Which label table to attach to a root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaSpec {
    /// One label of dimension 1 on every `P`, with trivial action.
    Principal,
    /// `Δ_P = K_P` for every `P`, with `δ_{k'}^k = δ_{k' k^{-1}}` and
    /// `𝔚` acting by transport of characters.
    KTorsor,
    /// `Δ_Q = K_Q / H_Q` on the associate class of `p`, where `H_p` is
    /// generated by `subgroup` and `H_Q` is its transport; empty elsewhere.
    CosetTorsor {
        p: Subset,
        subgroup: Vec<TorusPoint>,
    },
    Table(DeltaTable),
}

impl DeltaTable {
    pub fn num_labels(&self, p: Subset) -> usize {
        self.entries.get(&p).map_or(0, |e| e.labels.len())
    }

    /// `D_Δ`, the least common multiple of the label dimensions.
    pub fn dim_lcm(&self) -> u64 {
        self.entries
            .values()
            .flat_map(|e| e.dims.iter())
            .fold(1u64, |acc, &d| num_integer::lcm(acc, d as u64))
    }

    pub fn build(spec: &DeltaSpec, g: &WeylGroupoid, kp: &[KpGroup]) -> Result<Self> {
        match spec {
            DeltaSpec::Table(t) => Ok(t.clone()),
            DeltaSpec::Principal => {
                let mut t = DeltaTable::default();
                for class in g.associate_classes() {
                    let p = class[0];
                    let all = kp[p.bits() as usize].generators.clone();
                    t.add_coset_class(g, kp, p, &all)?;
                }
                Ok(t)
            }
            DeltaSpec::KTorsor => {
                let mut t = DeltaTable::default();
                for class in g.associate_classes() {
                    t.add_coset_class(g, kp, class[0], &[])?;
                }
                Ok(t)
            }
            DeltaSpec::CosetTorsor { p, subgroup } => {
                let mut t = DeltaTable::default();
                t.add_coset_class(g, kp, *p, subgroup)?;
                Ok(t)
            }
        }
    }

    fn add_coset_class(
        &mut self,
        g: &WeylGroupoid,
        kp: &[KpGroup],
        p: Subset,
        subgroup: &[TorusPoint],
    ) -> Result<()> {
        let k = |q: Subset| &kp[q.bits() as usize];
        for h in subgroup {
            if !k(p).contains(h) {
                return Err(Error::InvalidInput(format!(
                    "{h} is not an element of K_{p}"
                )));
            }
        }
        // H_Q as sets of element indices of K_Q, transported along one arrow each.
        let mut cosets: BTreeMap<Subset, Vec<usize>> = BTreeMap::new();
        for a in g.arrows_from(p) {
            if cosets.contains_key(&a.target) {
                continue;
            }
            let gens: Vec<TorusPoint> = subgroup
                .iter()
                .map(|h| g.group().act_on_torus(a.element, h))
                .collect();
            cosets.insert(a.target, coset_representatives(k(a.target), &gens)?);
        }
        for (&q, rep) in &cosets {
            let kq = k(q);
            let elems = kq.elements()?;
            let reps: Vec<usize> = rep
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let label_of = |i: usize| reps.binary_search(&rep[i]).expect("representative");
            let k_action = kq
                .generators
                .iter()
                .map(|gen| {
                    let inv = gen.inverse();
                    reps.iter()
                        .map(|&r| label_of(kq.index_of(&elems[r].mul(&inv)).expect("closed")))
                        .collect()
                })
                .collect();
            self.entries.insert(
                q,
                DeltaEntry {
                    labels: reps.iter().map(|&r| format!("k{}", elems[r])).collect(),
                    dims: vec![1; reps.len()],
                    k_action,
                },
            );
        }
        for (&q, rep) in &cosets {
            let kq = k(q);
            let elems = kq.elements()?;
            let reps: Vec<usize> = rep
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for b in 0..g.root_datum().semisimple_rank() {
                if q.contains(b) {
                    continue;
                }
                let e = g.elementary_conjugation(q, q.with(b))?;
                let target = e.arrow.target;
                let (kt, trep) = (k(target), &cosets[&target]);
                let treps: Vec<usize> = trep
                    .iter()
                    .copied()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let map = reps
                    .iter()
                    .map(|&r| {
                        let img = g.group().act_on_torus(e.arrow.element, &elems[r]);
                        let i = kt.index_of(&img).ok_or_else(|| {
                            Error::Inconsistent(format!(
                                "transport of {} leaves K_{target}",
                                elems[r]
                            ))
                        })?;
                        Ok(treps.binary_search(&trep[i]).expect("representative"))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                self.elementary.insert((q, q.with(b)), map);
            }
        }
        Ok(())
    }
}

/// For each element index of `K`, the smallest index in its coset modulo
/// the subgroup generated by `gens`.
fn coset_representatives(k: &KpGroup, gens: &[TorusPoint]) -> Result<Vec<usize>> {
    let elems = k.elements()?;
    let mut sub = vec![0usize];
    let mut seen: BTreeSet<usize> = BTreeSet::from([0]);
    let mut i = 0;
    while i < sub.len() {
        for h in gens {
            let j = k.index_of(&elems[sub[i]].mul(h)).ok_or_else(|| {
                Error::InvalidInput(format!("{h} is not an element of K_{}", k.p))
            })?;
            if seen.insert(j) {
                sub.push(j);
            }
        }
        i += 1;
    }
    Ok((0..elems.len())
        .map(|x| {
            sub.iter()
                .map(|&h| k.index_of(&elems[x].mul(&elems[h])).expect("closed"))
                .min()
                .expect("nonempty")
        })
        .collect())
}
