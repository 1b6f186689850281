//! JSON problem descriptors.
//!
//! Rationals and rotations are strings `"p/q"` (integers may also be given
//! as JSON numbers); subsets of simple roots are lists of indices.

use std::collections::BTreeMap;
use std::fmt;

use hecke_rgroup::cocycle::{FiniteGroup, TwoCocycle};
use hecke_rgroup::inductiongroupoid::{DeltaEntry, DeltaSpec, DeltaTable};
use hecke_rgroup::intlin::rational::Rat;
use hecke_rgroup::intlin::RationalRotation;
use hecke_rgroup::rootdata::{
    build_classical, Family, LabelFunction, LabelSpec, LatticeSpec, RootDatum,
};
use hecke_rgroup::weyl::TorusPoint;
use hecke_rgroup::Subset;
use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer};

use crate::error::CliError;

/// A rational number written `"p/q"`, `"p"` or as a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac(pub Rat);

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Frac;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a fraction string \"p/q\" or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Frac, E> {
                Ok(Frac(Rat::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Frac, E> {
                Ok(Frac(Rat::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Frac, E> {
                parse_frac(s).map(Frac).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn parse_frac(s: &str) -> Result<Rat, String> {
    let bad = || format!("cannot parse fraction {s:?}");
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(p, q))
}

/// A point of `Q/Z` written `"p/q"` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rot(pub RationalRotation);

impl<'de> Deserialize<'de> for Rot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rot;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rotation string \"p/q\" in lowest terms, or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rot, E> {
                RationalRotation::new(v, 1).map(Rot).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rot, E> {
                self.visit_i64(v as i64)
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Rot, E> {
                if let Some((p, q)) = s.split_once('/') {
                    let (p, q): (i64, i64) = match (p.trim().parse(), q.trim().parse()) {
                        (Ok(p), Ok(q)) => (p, q),
                        _ => return Err(E::custom(format!("cannot parse rotation {s:?}"))),
                    };
                    if q != 0 && num_integer::gcd(p, q) != 1 {
                        return Err(E::custom(format!("rotation {s:?} is not in lowest terms")));
                    }
                }
                s.parse::<RationalRotation>().map(Rot).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub datum: Option<DatumBlock>,
    pub delta: Option<DeltaBlock>,
    pub induction: Option<InductionBlock>,
    /// Mirror roots in the coordinates of the restricted roots of `a^P`.
    pub mirrors: Option<Vec<Vec<i64>>>,
    /// Cocycle on the R-group, in the element order of the `rgroup` report.
    pub gamma: Option<CocycleBlock>,
    pub group: Option<GroupBlock>,
    pub cocycle: Option<CocycleBlock>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumBlock {
    pub family: String,
    pub rank: usize,
    #[serde(default)]
    pub lattice: LatticeBlock,
    #[serde(default)]
    pub labels: LabelsBlock,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeBlock {
    #[default]
    Root,
    Weight,
    /// Generators in ambient coordinates.
    Generators(Vec<Vec<Frac>>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelsBlock {
    Uniform(Frac),
    Classical { q0: Frac, q1: Frac, q2: Frac },
    PerRoot(Vec<PerRootLabel>),
}

impl Default for LabelsBlock {
    fn default() -> Self {
        LabelsBlock::Uniform(Frac(Rat::from_integer(1.into())))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerRootLabel {
    pub root: Vec<i64>,
    pub q: Frac,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaBlock {
    Principal,
    KTorsor,
    CosetTorsor {
        p: Vec<usize>,
        subgroup: Vec<Vec<Rot>>,
    },
    Table {
        entries: Vec<DeltaEntryBlock>,
        #[serde(default)]
        elementary: Vec<ElementaryBlock>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaEntryBlock {
    pub p: Vec<usize>,
    pub labels: Vec<String>,
    pub dims: Vec<u32>,
    #[serde(default)]
    pub k_action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementaryBlock {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InductionBlock {
    #[serde(default)]
    pub p: Vec<usize>,
    pub t: Vec<Rot>,
    #[serde(default)]
    pub delta: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleBlock {
    pub modulus: u64,
    pub table: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBlock {
    Cyclic(usize),
    Klein,
    Dihedral8,
    Hyperoctahedral(usize),
    Product(Vec<GroupBlock>),
    /// Multiplication table; element 0 must be the identity.
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Restrict reports to these source subsets.
    pub p: Option<Vec<Vec<usize>>>,
    /// Restrict groupoid reports to these target subsets.
    pub q: Option<Vec<Vec<usize>>>,
    /// Give every minimal gallery instead of one.
    #[serde(default)]
    pub all_galleries: bool,
    pub max_arrows: Option<usize>,
    /// Largest order of the torsion points scanned by `decompose`.
    pub max_order: Option<i64>,
    pub max_points: Option<usize>,
    pub modulus: Option<u64>,
    /// Subgroups (element lists) to restrict the cocycle to.
    pub restrict: Option<Vec<Vec<usize>>>,
    /// Pull the cocycle on `C_2 × C_2` back to its dihedral cover.
    #[serde(default)]
    pub pullback_to_cover: bool,
    /// Run the shipped group-level checks.
    #[serde(default)]
    pub suite: bool,
}

pub fn parse(text: &str) -> Result<Descriptor, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Schema(format!("at `{path}`: {inner}"))
    })
}

pub fn subset(indices: &[usize], n: usize, what: &str) -> Result<Subset, CliError> {
    if let Some(&i) = indices.iter().find(|&&i| i >= n) {
        return Err(CliError::Schema(format!(
            "{what}: simple root index {i} out of range (semisimple rank {n})"
        )));
    }
    Ok(Subset::from_indices(indices))
}

impl DatumBlock {
    pub fn build(&self) -> Result<(RootDatum, LabelFunction), CliError> {
        let family: Family = self.family.parse()?;
        let lattice = match &self.lattice {
            LatticeBlock::Root => LatticeSpec::Root,
            LatticeBlock::Weight => LatticeSpec::Weight,
            LatticeBlock::Generators(g) => LatticeSpec::Generators(
                g.iter()
                    .map(|r| r.iter().map(|x| x.0.clone()).collect())
                    .collect(),
            ),
        };
        let rd = build_classical(family, self.rank, &lattice)?;
        let spec = match &self.labels {
            LabelsBlock::Uniform(q) => LabelSpec::Uniform(q.0.clone()),
            LabelsBlock::Classical { q0, q1, q2 } => LabelSpec::Classical {
                q0: q0.0.clone(),
                q1: q1.0.clone(),
                q2: q2.0.clone(),
            },
            LabelsBlock::PerRoot(v) => {
                LabelSpec::PerRoot(v.iter().map(|e| (e.root.clone(), e.q.0.clone())).collect())
            }
        };
        let labels = LabelFunction::new(&rd, &spec)?;
        Ok((rd, labels))
    }
}

pub fn torus_point(values: &[Rot]) -> TorusPoint {
    TorusPoint::new(values.iter().map(|r| r.0).collect())
}

impl DeltaBlock {
    pub fn spec(&self, n: usize) -> Result<DeltaSpec, CliError> {
        Ok(match self {
            DeltaBlock::Principal => DeltaSpec::Principal,
            DeltaBlock::KTorsor => DeltaSpec::KTorsor,
            DeltaBlock::CosetTorsor { p, subgroup } => DeltaSpec::CosetTorsor {
                p: subset(p, n, "delta.coset_torsor.p")?,
                subgroup: subgroup.iter().map(|t| torus_point(t)).collect(),
            },
            DeltaBlock::Table {
                entries,
                elementary,
            } => {
                let mut table = DeltaTable::default();
                for e in entries {
                    table.entries.insert(
                        subset(&e.p, n, "delta.table.entries.p")?,
                        DeltaEntry {
                            labels: e.labels.clone(),
                            dims: e.dims.clone(),
                            k_action: e.k_action.clone(),
                        },
                    );
                }
                let mut maps = BTreeMap::new();
                for e in elementary {
                    let key = (
                        subset(&e.p, n, "delta.table.elementary.p")?,
                        subset(&e.q, n, "delta.table.elementary.q")?,
                    );
                    maps.insert(key, e.map.clone());
                }
                table.elementary = maps;
                DeltaSpec::Table(table)
            }
        })
    }
}

impl GroupBlock {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        Ok(match self {
            GroupBlock::Cyclic(m) => FiniteGroup::cyclic(*m)?,
            GroupBlock::Klein => FiniteGroup::klein(),
            GroupBlock::Dihedral8 => FiniteGroup::dihedral8(),
            GroupBlock::Hyperoctahedral(n) => FiniteGroup::hyperoctahedral(*n)?,
            GroupBlock::Product(parts) => {
                let mut acc = FiniteGroup::cyclic(1)?;
                for p in parts {
                    acc = FiniteGroup::direct_product(&acc, &p.build()?);
                }
                acc
            }
            GroupBlock::Table(t) => FiniteGroup::from_table(t.clone(), None)?,
        })
    }
}

impl CocycleBlock {
    pub fn build(&self, g: &FiniteGroup) -> Result<TwoCocycle, CliError> {
        Ok(TwoCocycle::new(g, self.modulus, self.table.clone())?)
    }
}
