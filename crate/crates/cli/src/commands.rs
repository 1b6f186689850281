//! One function per subcommand, each returning the `results` object.

use std::collections::BTreeSet;

use hecke_rgroup::cocycle::{
    h2_order, is_coboundary, pullback_through_cover, regular_classes, restrict_cocycle,
    twisted_irreducibles, CentralExtension,
};
use hecke_rgroup::error::Error;
use hecke_rgroup::inductiongroupoid::{DeltaSpec, ExtendedGroupoid, KpGroup};
use hecke_rgroup::intlin::rational::{format_rat, Rat};
use hecke_rgroup::intlin::RationalRotation;
use hecke_rgroup::rgroup::{
    knapp_stein_report, mirror_roots_principal, rgroup_decomposition, validate_mirror_system,
    KnappSteinReport, MirrorRootSystem, RGroupDecomposition,
};
use hecke_rgroup::rootdata::{parabolic_restriction, LabelFunction, RootDatum};
use hecke_rgroup::weyl::{TorusPoint, WeylGroup};
use hecke_rgroup::weylgroupoid::{ElementaryConjugation, GroupoidArrow, WeylGroupoid};
use hecke_rgroup::Subset;
use serde_json::{json, Value};

use crate::descriptor::{subset, torus_point, Descriptor, GroupBlock};
use crate::error::CliError;
use crate::suite;

const DEFAULT_MAX_ARROWS: usize = 50_000;
const DEFAULT_MAX_ORDER: i64 = 4;
const DEFAULT_MAX_POINTS: usize = 20_000;

fn rat(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn point(t: &TorusPoint) -> Value {
    Value::Array(
        t.values()
            .iter()
            .map(|r| Value::String(r.to_string()))
            .collect(),
    )
}

fn set(p: Subset) -> Value {
    json!(p.indices())
}

fn datum(d: &Descriptor) -> Result<(RootDatum, LabelFunction), CliError> {
    d.datum
        .as_ref()
        .ok_or_else(|| CliError::Schema("missing `datum` block".into()))?
        .build()
}

/// Subsets named in `options.p` (or `options.q`), or all of them.
fn scope(given: &Option<Vec<Vec<usize>>>, n: usize, what: &str) -> Result<Vec<Subset>, CliError> {
    match given {
        Some(v) => v.iter().map(|p| subset(p, n, what)).collect(),
        None => Ok(Subset::all(n).collect()),
    }
}

pub fn rootdatum(d: &Descriptor) -> Result<Value, CliError> {
    let (rd, labels) = datum(d)?;
    let real = rd.realization();
    let ambient = |x: &[i64]| real.map(|r| rats(&r.to_ambient(x))).unwrap_or(Value::Null);
    let roots: Vec<Value> = (0..rd.num_roots())
        .map(|i| {
            json!({
                "index": i,
                "root": rd.root(i),
                "coroot": rd.coroot(i),
                "ambient": ambient(rd.root(i)),
                "positive": rd.is_positive(i),
                "height": rd.height(i),
            })
        })
        .collect();
    let nr = rd.nonreduced();
    let nr_roots: Vec<Value> = nr
        .roots
        .iter()
        .enumerate()
        .map(|(k, r)| {
            json!({
                "root": r.vector,
                "coroot": r.coroot,
                "base": r.base,
                "doubled": r.doubled,
                "label": rat(&labels.values()[k]),
            })
        })
        .collect();
    let fg = rd.fundamental_group()?;
    let n = rd.semisimple_rank();
    let mut parabolic = vec![];
    for p in scope(&d.options.p, n, "options.p")? {
        let kp = KpGroup::new(&rd, p)?;
        let restriction = parabolic_restriction(&rd, p)?;
        parabolic.push(json!({
            "p": set(p),
            "lattice_index": restriction.index.to_string(),
            "kp_invariants": kp.moduli,
            "kp_order": kp.order(),
        }));
    }
    Ok(json!({
        "name": rd.name(),
        "type": rd.type_name(),
        "rank": rd.rank(),
        "semisimple_rank": n,
        "lattice_basis": real.map(|r| Value::Array(r.basis.iter().map(|b| rats(b)).collect())),
        "cartan_matrix": rd.cartan_matrix(),
        "num_roots": rd.num_roots(),
        "roots": roots,
        "nonreduced": {
            "size": nr.len(),
            "roots": nr_roots,
        },
        "r1": {
            "type": nr.r1_type,
            "roots": nr.r1,
            "simple": nr.f1,
        },
        "fundamental_group": {
            "invariants": fg.torsion.invariants().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "free_rank": fg.free_rank,
        },
        "parabolic": parabolic,
    }))
}

fn arrow(w: &WeylGroup, a: &GroupoidArrow) -> Value {
    json!({ "source": set(a.source), "target": set(a.target), "word": w.word(a.element) })
}

fn factor(w: &WeylGroup, x: &ElementaryConjugation) -> Value {
    json!({
        "source": set(x.arrow.source),
        "target": set(x.arrow.target),
        "via": set(x.via),
        "word": w.word(x.arrow.element),
        "self_opposed": x.self_opposed,
    })
}

pub fn groupoid(d: &Descriptor) -> Result<Value, CliError> {
    let (rd, _) = datum(d)?;
    let g = WeylGroupoid::new(&rd)?;
    let w = g.group();
    let n = rd.semisimple_rank();
    let sources = scope(&d.options.p, n, "options.p")?;
    let targets = scope(&d.options.q, n, "options.q")?;
    let limit = d.options.max_arrows.unwrap_or(DEFAULT_MAX_ARROWS);
    let mut arrows = vec![];
    for &p in &sources {
        for &q in &targets {
            for a in g.hom_set(p, q) {
                if arrows.len() >= limit {
                    return Err(Error::GuardExceeded(format!(
                        "more than {limit} arrows; narrow options.p / options.q"
                    ))
                    .into());
                }
                let dec = g.decompose(&a)?;
                let mut entry = arrow(w, &a);
                entry["height"] = json!(dec.height);
                entry["factors"] = Value::Array(dec.factors.iter().map(|x| factor(w, x)).collect());
                entry["gallery"] = Value::Array(dec.gallery.iter().map(|c| arrow(w, c)).collect());
                if d.options.all_galleries {
                    let all = g.all_minimal_decompositions(&a)?;
                    entry["all_decompositions"] = Value::Array(
                        all.iter()
                            .map(|f| Value::Array(f.iter().map(|x| factor(w, x)).collect()))
                            .collect(),
                    );
                }
                arrows.push(entry);
            }
        }
    }
    let mut elementary = vec![];
    for &p in &sources {
        for b in (0..n).filter(|&b| !p.contains(b)) {
            elementary.push(factor(w, &g.elementary_conjugation(p, p.with(b))?));
        }
    }
    let classes: Vec<Value> = g
        .associate_classes()
        .into_iter()
        .map(|c| Value::Array(c.into_iter().map(set).collect()))
        .collect();
    Ok(json!({
        "type": rd.type_name(),
        "weyl_order": w.order(),
        "objects": 1usize << n,
        "associate_classes": classes,
        "elementary_conjugations": elementary,
        "arrows": arrows,
    }))
}

pub fn kp(d: &Descriptor) -> Result<Value, CliError> {
    let (rd, _) = datum(d)?;
    let mut out = vec![];
    for p in scope(&d.options.p, rd.semisimple_rank(), "options.p")? {
        let k = KpGroup::new(&rd, p)?;
        out.push(json!({
            "p": set(p),
            "invariants": k.moduli,
            "order": k.order(),
            "generators": k.generators.iter().map(point).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({ "type": rd.type_name(), "kp": out }))
}

struct Analysis {
    mirrors: MirrorRootSystem,
    decomposition: RGroupDecomposition,
    report: KnappSteinReport,
}

fn analyse(
    d: &Descriptor,
    eg: &ExtendedGroupoid,
    labels: &LabelFunction,
    p: Subset,
    delta: usize,
    t: TorusPoint,
) -> Result<Analysis, CliError> {
    let g = eg.groupoid();
    let xi = eg.datum(p, delta, t.clone())?;
    let mirrors = match (&d.mirrors, p.is_empty()) {
        (Some(m), _) => validate_mirror_system(g, p, m)?.into_result()?,
        (None, true) => mirror_roots_principal(g, labels, &t)?,
        (None, false) => {
            return Err(Error::Precondition(format!(
                "P = {p} is not empty: supply the mirror roots in a `mirrors` block"
            ))
            .into())
        }
    };
    let decomposition = rgroup_decomposition(eg, &xi, &mirrors)?;
    let gamma = match &d.gamma {
        Some(c) => Some(c.build(&decomposition.r_group_as_group()?.0)?),
        None => None,
    };
    let report = knapp_stein_report(&decomposition, gamma.as_ref())?;
    Ok(Analysis {
        mirrors,
        decomposition,
        report,
    })
}

fn extended(d: &Descriptor, rd: &RootDatum) -> Result<ExtendedGroupoid, CliError> {
    let spec = match &d.delta {
        Some(b) => b.spec(rd.semisimple_rank())?,
        None => DeltaSpec::Principal,
    };
    Ok(ExtendedGroupoid::new(rd, &spec)?)
}

fn knapp_stein(r: &KnappSteinReport) -> Value {
    json!({
        "r_group_order": r.r_group_order,
        "dim_end": r.dim_end,
        "summands": r.summands,
        "multiplicities": r.multiplicities,
        "regular_classes": r.regular_classes,
        "gamma_trivial": r.gamma_trivial,
        "irreducible": r.irreducible(),
    })
}

pub fn rgroup(d: &Descriptor) -> Result<Value, CliError> {
    let (rd, labels) = datum(d)?;
    let ind = d
        .induction
        .as_ref()
        .ok_or_else(|| CliError::Schema("missing `induction` block".into()))?;
    let p = subset(&ind.p, rd.semisimple_rank(), "induction.p")?;
    let eg = extended(d, &rd)?;
    let a = analyse(d, &eg, &labels, p, ind.delta, torus_point(&ind.t))?;
    let dec = &a.decomposition;
    let w = eg.groupoid().group();
    let rr = eg.groupoid().restricted_roots(p)?;
    let name = |i: usize| dec.group.name(i).to_string();
    let elements: Vec<Value> = dec
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| json!({ "name": name(i), "k": point(&e.k), "word": w.word(e.u) }))
        .collect();
    let vec_of = |k: usize| json!(rr.roots[k].vector);
    let reflections: Vec<Value> = dec
        .reflections
        .iter()
        .map(|r| {
            json!({
                "root": vec_of(r.root),
                "element": name(r.element),
                "k": r.k.as_ref().map(point),
                "self_opposed": r.self_opposed,
            })
        })
        .collect();
    let (rg, embedding) = dec.r_group_as_group()?;
    Ok(json!({
        "xi": {
            "p": set(p),
            "delta": ind.delta,
            "t": point(&dec.xi.t),
        },
        "isotropy": {
            "order": dec.isotropy_order(),
            "elements": elements,
        },
        "mirrors": {
            "roots": a.mirrors.roots.iter().map(|&k| vec_of(k)).collect::<Vec<_>>(),
            "positive": a.mirrors.positive.iter().map(|&k| vec_of(k)).collect::<Vec<_>>(),
            "simple": a.mirrors.simple.iter().map(|&k| vec_of(k)).collect::<Vec<_>>(),
        },
        "reflections": reflections,
        "wm": dec.wm.iter().map(|&i| name(i)).collect::<Vec<_>>(),
        "r_group": {
            "elements": embedding.iter().map(|&i| name(i)).collect::<Vec<_>>(),
            "order": rg.order(),
            "exponent": rg.exponent(),
            "abelian": rg.is_abelian(),
        },
        "factorization": dec
            .factorization
            .iter()
            .enumerate()
            .map(|(i, &(r, m))| json!({ "element": name(i), "r": name(r), "m": name(m) }))
            .collect::<Vec<_>>(),
        "one_dimensional_labels": dec.one_dimensional_labels,
        "knapp_stein": knapp_stein(&a.report),
    }))
}

fn torsion_points(rank: usize, max_order: i64, limit: usize) -> Result<Vec<TorusPoint>, CliError> {
    let total: u128 = (1..=max_order).map(|m| (m as u128).pow(rank as u32)).sum();
    if total > limit as u128 {
        return Err(Error::GuardExceeded(format!(
            "{total} candidate points of order at most {max_order} exceed options.max_points = {limit}"
        ))
        .into());
    }
    let mut out = BTreeSet::new();
    for m in 1..=max_order {
        for code in 0..(m as usize).pow(rank as u32) {
            let mut c = code;
            let mut vals = Vec::with_capacity(rank);
            for _ in 0..rank {
                vals.push(RationalRotation::new((c % m as usize) as i64, m).map_err(Error::from)?);
                c /= m as usize;
            }
            out.insert(TorusPoint::new(vals));
        }
    }
    Ok(out.into_iter().collect())
}

/// Knapp–Stein decomposition of `π(ξ)`: one datum from the `induction`
/// block, or every principal series point of bounded order up to `W_0`.
pub fn decompose(d: &Descriptor) -> Result<Value, CliError> {
    let (rd, labels) = datum(d)?;
    let eg = extended(d, &rd)?;
    if let Some(ind) = &d.induction {
        let p = subset(&ind.p, rd.semisimple_rank(), "induction.p")?;
        let a = analyse(d, &eg, &labels, p, ind.delta, torus_point(&ind.t))?;
        return Ok(json!({ "points": [row(&a, &torus_point(&ind.t), None)] }));
    }
    if d.mirrors.is_some() || d.gamma.is_some() {
        return Err(CliError::Schema(
            "`mirrors` and `gamma` need an `induction` block".into(),
        ));
    }
    let max_order = d.options.max_order.unwrap_or(DEFAULT_MAX_ORDER);
    if max_order < 1 {
        return Err(CliError::Schema(
            "options.max_order must be positive".into(),
        ));
    }
    let points = torsion_points(
        rd.rank(),
        max_order,
        d.options.max_points.unwrap_or(DEFAULT_MAX_POINTS),
    )?;
    let w = eg.groupoid().group();
    let mut seen: BTreeSet<TorusPoint> = BTreeSet::new();
    let mut rows = vec![];
    let mut reducible = 0;
    for t in points {
        if seen.contains(&t) {
            continue;
        }
        let orbit: BTreeSet<TorusPoint> = w.elements().map(|x| w.act_on_torus(x, &t)).collect();
        let a = analyse(d, &eg, &labels, Subset::empty(), 0, t.clone())?;
        reducible += (!a.report.irreducible()) as usize;
        rows.push(row(&a, &t, Some(orbit.len())));
        seen.extend(orbit);
    }
    Ok(json!({
        "max_order": max_order,
        "orbits": rows.len(),
        "reducible": reducible,
        "points": rows,
    }))
}

fn row(a: &Analysis, t: &TorusPoint, orbit: Option<usize>) -> Value {
    json!({
        "t": point(t),
        "orbit_size": orbit,
        "isotropy_order": a.decomposition.isotropy_order(),
        "positive_mirrors": a.mirrors.positive.len(),
        "r_group_order": a.report.r_group_order,
        "summands": a.report.summands,
        "multiplicities": a.report.multiplicities,
    })
}

/// Reports a guard as a skipped entry instead of failing the whole command.
fn guarded(r: Result<Value, Error>) -> Result<Value, CliError> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::GuardExceeded(m)) => Ok(json!({ "skipped": m })),
        Err(e) => Err(e.into()),
    }
}

pub fn cocycle(d: &Descriptor) -> Result<(Value, bool), CliError> {
    let mut out = serde_json::Map::new();
    let mut all_passed = true;
    if let Some(block) = &d.group {
        let g = block.build()?;
        let modulus = d
            .cocycle
            .as_ref()
            .map(|c| c.modulus)
            .or(d.options.modulus)
            .unwrap_or(2);
        let classes = g.conjugacy_classes();
        out.insert(
            "group".into(),
            json!({
                "order": g.order(),
                "abelian": g.is_abelian(),
                "exponent": g.exponent(),
                "class_sizes": classes.iter().map(Vec::len).collect::<Vec<_>>(),
                "elements": g.names(),
            }),
        );
        out.insert(
            "h2".into(),
            guarded(h2_order(&g, modulus).map(|h| {
                json!({
                    "modulus": h.modulus,
                    "order": h.order,
                    "invariants": h.invariants,
                    "schur_multiplier": h.schur_multiplier,
                })
            }))?,
        );
        if let Some(cb) = &d.cocycle {
            let c = cb.build(&g)?;
            let mut rep = serde_json::Map::new();
            rep.insert(
                "coboundary".into(),
                json!(is_coboundary(&g, &c)?.is_coboundary()),
            );
            rep.insert(
                "regular_classes".into(),
                json!(regular_classes(&g, &c).len()),
            );
            rep.insert(
                "twisted_degrees".into(),
                guarded(twisted_irreducibles(&g, &c).map(|v| json!(v)))?,
            );
            if let Some(subs) = &d.options.restrict {
                let mut res = vec![];
                for h in subs {
                    let r = restrict_cocycle(&g, &c, h)?;
                    res.push(json!({
                        "subgroup": h,
                        "coboundary": is_coboundary(&r.group, &r.cocycle)?.is_coboundary(),
                    }));
                }
                rep.insert("restrictions".into(), Value::Array(res));
            }
            if d.options.pullback_to_cover {
                if !matches!(block, GroupBlock::Klein) {
                    return Err(CliError::Schema(
                        "options.pullback_to_cover needs group \"klein\"".into(),
                    ));
                }
                let (q, ext) = CentralExtension::dihedral_cover();
                let v = pullback_through_cover(&ext.group, &ext.quotient, &q, &c, &ext)?;
                rep.insert(
                    "pullback_to_cover".into(),
                    json!({
                        "lifts": v.lifts(),
                        "coboundary": v.coboundary.is_coboundary(),
                        "pulled_back": v.pulled_back.rows(),
                    }),
                );
            }
            out.insert("cocycle".into(), Value::Object(rep));
        }
    } else if d.cocycle.is_some() {
        return Err(CliError::Schema(
            "a `cocycle` block needs a `group` block".into(),
        ));
    }
    if d.options.suite {
        let outcomes = suite::group_checks();
        all_passed = outcomes.iter().all(|o| o.passed);
        out.insert("suite".into(), suite::to_json(&outcomes, false));
    }
    if out.is_empty() {
        return Err(CliError::Schema(
            "give a `group` block or options.suite".into(),
        ));
    }
    Ok((Value::Object(out), all_passed))
}
