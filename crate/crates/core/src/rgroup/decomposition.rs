//! `𝒲_{ξ,ξ} = 𝕽_ξ ⋉ W^m_{ξ,ξ}` and the Knapp-Stein counts.

use std::collections::HashMap;

use super::mirrors::{root_permutation, MirrorRootSystem, RestrictedGeometry};
use crate::cocycle::{
    is_coboundary, regular_classes, twisted_irreducibles, FiniteGroup, TwoCocycle,
    MAX_COHOMOLOGY_ORDER,
};
use crate::error::{Error, Result};
use crate::inductiongroupoid::{ExtendedArrow, ExtendedGroupoid, InductionDatum};
use crate::weyl::TorusPoint;

/// The element `σ_M` of `𝒲_{ξ,ξ}` acting on `a^P` as the reflection in a
/// positive mirror root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReflection {
    /// Index into `R^P`.
    pub root: usize,
    /// Index into [`RGroupDecomposition::elements`].
    pub element: usize,
    /// The `K_P` part, when exactly one element of `𝒲_{ξ,ξ}` acts as this
    /// reflection; `None` when several do and the choice is a convention.
    pub k: Option<TorusPoint>,
    /// Whether the `𝔚_{P,P}` part is an involution.
    pub self_opposed: bool,
}

#[derive(Clone, Debug)]
pub struct RGroupDecomposition {
    pub xi: InductionDatum,
    /// `𝒲_{ξ,ξ}`, identity first.
    pub elements: Vec<ExtendedArrow>,
    /// Multiplication table of `elements`.
    pub group: FiniteGroup,
    pub mirrors: MirrorRootSystem,
    /// One per positive mirror root.
    pub reflections: Vec<MirrorReflection>,
    /// `W^m_{ξ,ξ}`, sorted indices.
    pub wm: Vec<usize>,
    /// Reflections in the simple mirror roots.
    pub wm_generators: Vec<usize>,
    /// `𝕽_ξ`, sorted indices.
    pub r_group: Vec<usize>,
    /// `w = r m` for every element `w`.
    pub factorization: Vec<(usize, usize)>,
    pub one_dimensional_labels: bool,
}

impl RGroupDecomposition {
    pub fn isotropy_order(&self) -> usize {
        self.elements.len()
    }

    /// `𝕽_ξ` as an abstract group with its embedding.
    pub fn r_group_as_group(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        self.group.subgroup(&self.r_group)
    }
}

fn element_name(eg: &ExtendedGroupoid, g: &ExtendedArrow) -> String {
    let word = eg.groupoid().group().word(g.u);
    let w = if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|s| format!("s{}", s + 1))
            .collect::<Vec<_>>()
            .join("")
    };
    if g.k.is_identity() {
        w
    } else {
        format!("{}·{w}", g.k)
    }
}

/// Multiplication table of a finite group of arrows at one object.
pub fn arrow_group(eg: &ExtendedGroupoid, elements: &[ExtendedArrow]) -> Result<FiniteGroup> {
    let index: HashMap<&ExtendedArrow, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut table = Vec::with_capacity(elements.len());
    for a in elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in elements {
            let c = eg.compose(a, b)?;
            row.push(*index.get(&c).ok_or_else(|| {
                Error::Inconsistent("isotropy group is not closed under composition".into())
            })?);
        }
        table.push(row);
    }
    let names = elements.iter().map(|g| element_name(eg, g)).collect();
    FiniteGroup::from_table(table, Some(names))
}

/// Splits `𝒲_{ξ,ξ}` into the mirror reflection group `W^m` and the
/// stabilizer `𝕽_ξ` of the positive mirror chamber, checking that every
/// element factors uniquely as `r m`.
pub fn rgroup_decomposition(
    eg: &ExtendedGroupoid,
    xi: &InductionDatum,
    mirrors: &MirrorRootSystem,
) -> Result<RGroupDecomposition> {
    let p = xi.p;
    if mirrors.p != p {
        return Err(Error::InvalidInput(format!(
            "mirrors live in R^{} but the datum lives on {p}",
            mirrors.p
        )));
    }
    let gd = eg.groupoid();
    let iso = eg.isotropy_group(xi)?;
    let elements = iso.elements;
    let group = arrow_group(eg, &elements)?;
    let perms = elements
        .iter()
        .map(|g| root_permutation(gd, p, g.u))
        .collect::<Result<Vec<_>>>()?;
    for (g, perm) in elements.iter().zip(&perms) {
        if mirrors.roots.iter().any(|&a| !mirrors.contains(perm[a])) {
            return Err(Error::Inconsistent(format!(
                "the mirror set is not stable under {}",
                element_name(eg, g)
            )));
        }
    }

    let geo = RestrictedGeometry::new(gd, p)?;
    let mut reflections = vec![];
    for &a in &mirrors.positive {
        let target = geo.reflection_permutation(a).ok_or_else(|| {
            Error::Precondition(format!(
                "the reflection in root {a} does not preserve R^{p}"
            ))
        })?;
        let hits: Vec<usize> = (0..elements.len())
            .filter(|&i| perms[i] == target)
            .collect();
        let Some(&first) = hits.first() else {
            return Err(Error::Precondition(format!(
                "no element of the isotropy group reflects in mirror root {a}"
            )));
        };
        let element = hits
            .iter()
            .copied()
            .find(|&i| elements[i].k.is_identity())
            .unwrap_or(first);
        let u = elements[element].u;
        let weyl = gd.group();
        reflections.push(MirrorReflection {
            root: a,
            element,
            k: (hits.len() == 1).then(|| elements[element].k.clone()),
            self_opposed: weyl.mul(u, u) == weyl.identity(),
        });
    }
    let all_refl: Vec<usize> = reflections.iter().map(|r| r.element).collect();
    let wm = group.closure(&all_refl);
    let wm_generators: Vec<usize> = reflections
        .iter()
        .filter(|r| mirrors.simple.contains(&r.root))
        .map(|r| r.element)
        .collect();
    if group.closure(&wm_generators) != wm {
        return Err(Error::Inconsistent(
            "simple mirror reflections do not generate W^m".into(),
        ));
    }

    let r_group: Vec<usize> = (0..elements.len())
        .filter(|&i| {
            mirrors
                .positive
                .iter()
                .all(|&a| mirrors.positive.contains(&perms[i][a]))
        })
        .collect();
    if !group.is_subgroup(&r_group) {
        return Err(Error::Inconsistent(
            "the chamber stabilizer is not a subgroup".into(),
        ));
    }
    for &r in &r_group {
        for &m in &wm {
            let c = group.mul(group.mul(r, m), group.inverse(r));
            if wm.binary_search(&c).is_err() {
                return Err(Error::Inconsistent(
                    "the chamber stabilizer does not normalize W^m".into(),
                ));
            }
        }
    }
    let mut factorization: Vec<Option<(usize, usize)>> = vec![None; elements.len()];
    for &r in &r_group {
        for &m in &wm {
            let w = group.mul(r, m);
            if factorization[w].replace((r, m)).is_some() {
                return Err(Error::Inconsistent(format!(
                    "{} has two factorizations r m",
                    group.name(w)
                )));
            }
        }
    }
    let factorization = factorization
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            Error::Inconsistent(
                "the chamber stabilizer and W^m do not generate the isotropy group".into(),
            )
        })?;

    Ok(RGroupDecomposition {
        xi: xi.clone(),
        elements,
        group,
        mirrors: mirrors.clone(),
        reflections,
        wm,
        wm_generators,
        r_group,
        factorization,
        one_dimensional_labels: eg.delta().dim_lcm() == 1,
    })
}

/// Counts attached to `π(ξ)` by the twisted group algebra `C[𝕽_ξ, γ_ξ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnappSteinReport {
    pub r_group_order: usize,
    /// `dim End(π(ξ)) = |𝕽_ξ|`.
    pub dim_end: usize,
    /// Number of inequivalent irreducible summands.
    pub summands: usize,
    /// Multiplicity of each summand: the degrees of the irreducible
    /// `C[𝕽_ξ, γ_ξ]`-modules, sorted.
    pub multiplicities: Vec<usize>,
    /// Number of `γ_ξ`-regular conjugacy classes.
    pub regular_classes: usize,
    /// Whether `γ_ξ` is a coboundary; `None` above the cohomology guard.
    pub gamma_trivial: Option<bool>,
}

impl KnappSteinReport {
    pub fn irreducible(&self) -> bool {
        self.summands == 1 && self.multiplicities == [1]
    }
}

/// `γ` is a cocycle on [`RGroupDecomposition::r_group_as_group`]. Without
/// one, `γ` is trivial provided all labels are one-dimensional.
pub fn knapp_stein_report(
    decomp: &RGroupDecomposition,
    gamma: Option<&TwoCocycle>,
) -> Result<KnappSteinReport> {
    let (rg, _) = decomp.r_group_as_group()?;
    let zero;
    let c = match gamma {
        Some(c) => {
            if c.group_order() != rg.order() {
                return Err(Error::InvalidInput(format!(
                    "cocycle on a group of order {} but the R-group has order {}",
                    c.group_order(),
                    rg.order()
                )));
            }
            c
        }
        None if decomp.one_dimensional_labels => {
            zero = TwoCocycle::zero(&rg, 1);
            &zero
        }
        None => {
            return Err(Error::Precondition(
                "labels of dimension above 1 need an explicit cocycle".into(),
            ))
        }
    };
    let multiplicities = twisted_irreducibles(&rg, c)?;
    let regular = regular_classes(&rg, c).len();
    if regular != multiplicities.len() {
        return Err(Error::Inconsistent(format!(
            "{} irreducibles but {regular} regular classes",
            multiplicities.len()
        )));
    }
    let gamma_trivial = if rg.order() <= MAX_COHOMOLOGY_ORDER {
        Some(is_coboundary(&rg, c)?.is_coboundary())
    } else {
        None
    };
    Ok(KnappSteinReport {
        r_group_order: rg.order(),
        dim_end: rg.order(),
        summands: multiplicities.len(),
        multiplicities,
        regular_classes: regular,
        gamma_trivial,
    })
}
