//! The acceptance battery: one check per criterion, each comparing the
//! library with a reference computation written here.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use hecke_rgroup::cocycle::{
    all_cocycles, extend_homomorphism, h2_order, irreducible_degrees, is_coboundary, klein_cocycle,
    pullback_through_cover, regular_classes, restrict_cocycle, twisted_irreducibles,
    CentralExtension, FiniteGroup, TwoCocycle,
};
use hecke_rgroup::error::Error;
use hecke_rgroup::inductiongroupoid::{
    classical_wpp_report, DShape, DeltaSpec, ExtendedGroupoid, KpGroup,
};
use hecke_rgroup::intlin::rational::{rank, rat, rat_frac, to_rat_vec, Rat};
use hecke_rgroup::intlin::RationalRotation;
use hecke_rgroup::rgroup::{knapp_stein_report, mirror_roots_principal, rgroup_decomposition};
use hecke_rgroup::rootdata::{
    build_classical, Family, LabelFunction, LabelSpec, LatticeSpec, RootDatum,
};
use hecke_rgroup::weyl::{TorusPoint, WeylElement, WeylGroup};
use hecke_rgroup::weylgroupoid::{positive_point, GroupoidArrow, WeylGroupoid};
use hecke_rgroup::Subset;

#[path = "oracle.rs"]
mod oracle;

use num_traits::{One, Signed, Zero};

pub type Check = Result<String, String>;

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CRITERIA: [(&str, fn() -> Check); 10] = [
    (
        "gallery decomposition length equals chamber height",
        gallery,
    ),
    (
        "chamber action is free with one positive chamber per orbit",
        chamber_freeness,
    ),
    (
        "K_P tables for B_n root lattice and D_n root lattice",
        kp_tables,
    ),
    (
        "type D stabilizers of P match the signed-permutation order",
        d_stabilizers,
    ),
    ("cohomology suite", cohomology),
    (
        "Klein cocycles pulled back to the dihedral cover are trivial",
        cover_pullback,
    ),
    ("A_1 Knapp-Stein example", a1_knapp_stein),
    ("twisted group algebra counting", twisted_counting),
    (
        "isotropy group splits as R-group times mirror group",
        semidirect_splitting,
    ),
    ("label function is length multiplicative", label_calculus),
];

pub fn run_all() -> Vec<Outcome> {
    CRITERIA
        .iter()
        .enumerate()
        .map(|(i, (name, f))| run_one(i + 1, name, *f))
        .collect()
}

pub fn run_one(id: usize, name: &'static str, f: fn() -> Check) -> Outcome {
    let start = Instant::now();
    let result = std::panic::catch_unwind(f).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id,
        name,
        passed,
        detail,
        seconds,
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn ok<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn datum(f: Family, n: usize, lattice: &LatticeSpec) -> Result<RootDatum, String> {
    ok(build_classical(f, n, lattice))
}

fn lattice_name(l: &LatticeSpec) -> &'static str {
    match l {
        LatticeSpec::Root => "root",
        LatticeSpec::Weight => "weight",
        LatticeSpec::Generators(_) => "custom",
    }
}

fn simple_rows(rd: &RootDatum, p: Subset) -> Vec<Vec<Rat>> {
    p.iter()
        .map(|k| to_rat_vec(rd.root(rd.simple_root_index(k))))
        .collect()
}

fn pair(x: &[i64], y: &[Rat]) -> Rat {
    x.iter()
        .zip(y)
        .map(|(&a, b)| b * Rat::from_integer(a.into()))
        .sum()
}

/// Signs, over representatives of the walls of `a^Q`, of `u(a^{R,+})`:
/// `⟨u^{-1} α, x_R⟩` for a positive point `x_R` of `a^R`.
fn wall_signs(
    rd: &RootDatum,
    w: &WeylGroup,
    arrow: &GroupoidArrow,
    walls: &[usize],
) -> Result<Vec<bool>, String> {
    let xr = positive_point(rd, arrow.source);
    let inv = w.inverse(arrow.element);
    walls
        .iter()
        .map(|&a| {
            let v = pair(rd.root(w.act_on_root(inv, a)), &xr);
            ensure!(!v.is_zero(), "root {a} vanishes on u(a^R)");
            Ok(v.is_positive())
        })
        .collect()
}

/// One positive root per hyperplane of `a^Q`: roots outside `span(Q)`,
/// identified when their restrictions to `a^Q` are proportional.
fn wall_representatives(rd: &RootDatum, q: Subset) -> Vec<usize> {
    let base = simple_rows(rd, q);
    let dim = rd.rank();
    let rank_with = |extra: &[usize]| {
        let mut rows = base.clone();
        rows.extend(extra.iter().map(|&a| to_rat_vec(rd.root(a))));
        rank(&rows, dim)
    };
    let mut reps: Vec<usize> = vec![];
    for a in 0..rd.num_positive() {
        if rank_with(&[a]) == q.len() {
            continue;
        }
        if !reps.iter().any(|&b| rank_with(&[a, b]) == q.len() + 1) {
            reps.push(a);
        }
    }
    reps
}

fn gallery() -> Check {
    let start = Instant::now();
    let mut arrows = 0;
    for f in [Family::A, Family::B, Family::C] {
        for lattice in [LatticeSpec::Root, LatticeSpec::Weight] {
            let rd = datum(f, 3, &lattice)?;
            let g = ok(WeylGroupoid::new(&rd))?;
            let walls: HashMap<Subset, Vec<usize>> = g
                .objects()
                .map(|q| (q, wall_representatives(&rd, q)))
                .collect();
            for r in g.objects() {
                for a in g.arrows_from(r) {
                    let signs = wall_signs(&rd, g.group(), &a, &walls[&a.target])?;
                    let h = signs.iter().filter(|s| !**s).count();
                    let d = ok(g.decompose(&a))?;
                    ensure!(
                        d.factors.len() == h && d.height == h && ok(g.height(&a))? == h,
                        "{f}3 {}: arrow {a:?} has {} factors, {h} separating walls",
                        lattice_name(&lattice),
                        d.factors.len()
                    );
                    for x in &d.factors {
                        let src = x.arrow.source;
                        ensure!(
                            src.is_subset_of(&x.via) && x.via.len() == src.len() + 1,
                            "factor {x:?} is not elementary"
                        );
                    }
                    if d.factors.is_empty() {
                        ensure!(
                            a == g.identity(r),
                            "{a:?} has no factors but is not an identity"
                        );
                    } else {
                        ensure!(
                            ok(g.product(&d.factors))? == a,
                            "factors of {a:?} multiply wrongly"
                        );
                    }
                    arrows += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1} s");
    Ok(format!("{arrows} arrows over A3, B3, C3 (root, weight)"))
}

fn chamber_freeness() -> Check {
    let cases = [
        (Family::A, 1, 2),
        (Family::A, 2, 6),
        (Family::A, 3, 24),
        (Family::B, 2, 8),
        (Family::B, 3, 48),
        (Family::C, 2, 8),
        (Family::C, 3, 48),
    ];
    let mut total = 0;
    for (f, n, order) in cases {
        for lattice in [LatticeSpec::Root, LatticeSpec::Weight] {
            let rd = datum(f, n, &lattice)?;
            let g = ok(WeylGroupoid::new(&rd))?;
            let tag = format!("{f}{n} {}", lattice_name(&lattice));
            let check = ok(g.check_chamber_action())?;
            ensure!(check.passed(), "{tag}: {:?}", check.failures);
            for q in g.objects() {
                let rr = ok(g.restricted_roots(q))?;
                let walls: Vec<usize> = rr.positive().iter().map(|x| x.inducing_root).collect();
                let chambers = ok(g.chambers(q))?;
                let mut hits: HashMap<Vec<bool>, Vec<Subset>> = HashMap::new();
                for r in g.objects() {
                    for a in g.hom_set(r, q) {
                        hits.entry(wall_signs(&rd, g.group(), &a, &walls)?)
                            .or_default()
                            .push(r);
                    }
                }
                ensure!(
                    hits.len() == chambers.len(),
                    "{tag}: a^{q} has {} chambers but {} images",
                    chambers.len(),
                    hits.len()
                );
                for c in &chambers {
                    let h = hits.get(&c.signs).map_or(0, Vec::len);
                    ensure!(
                        h == 1,
                        "{tag}: chamber {:?} of a^{q} is hit {h} times",
                        c.signs
                    );
                }
                if q.is_empty() {
                    ensure!(
                        chambers.len() == order,
                        "{tag}: {} chambers, |W| = {order}",
                        chambers.len()
                    );
                }
                total += chambers.len();
            }
        }
    }
    Ok(format!("{total} chambers over 14 root data"))
}

/// `t(x) = ½ Σ_{i ∈ coords} x_i` in ambient coordinates.
fn sign_character(rd: &RootDatum, coords: &[usize]) -> Result<TorusPoint, String> {
    let real = rd.realization().ok_or("no realization")?;
    real.basis
        .iter()
        .map(|b| {
            let s: Rat = coords.iter().map(|&i| b[i].clone()).sum();
            ensure!(s.is_integer(), "non-integral coordinate sum");
            let s = i64::try_from(s.to_integer()).map_err(|e| e.to_string())?;
            RationalRotation::new(s, 2).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()
        .map(TorusPoint::new)
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n)
        .map(|j| if i == j { rat(1) } else { rat(0) })
        .collect()
}

fn indicator(n: usize, block: &[usize], scale: i64) -> Vec<Rat> {
    (0..n)
        .map(|j| {
            if block.contains(&j) {
                rat(scale)
            } else {
                rat(0)
            }
        })
        .collect()
}

fn diff(n: usize, i: usize, j: usize) -> Vec<Rat> {
    let mut v = unit(n, i);
    v[j] = rat(-1);
    v
}

fn blocks_of(lambda: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut c = 0;
    for &l in lambda {
        out.push((c..c + l).collect());
        c += l;
    }
    out
}

/// Invariant factors above one of `X / L`, `L` given in ambient coordinates.
fn quotient_moduli(rd: &RootDatum, gens: &[Vec<Rat>]) -> Result<Vec<u64>, String> {
    let real = rd.realization().ok_or("no realization")?;
    let rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|v| {
            real.from_ambient(v)
                .map(|x| x.into_iter().map(i128::from).collect())
                .ok_or_else(|| format!("{v:?} is not in X"))
        })
        .collect::<Result<_, _>>()?;
    let inv = oracle::invariant_factors(&rows, rd.rank());
    ensure!(!inv.contains(&0), "X / L is infinite");
    Ok(inv
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect())
}

fn library_divisors(kp: &KpGroup) -> Vec<u64> {
    oracle::elementary_divisors(&kp.moduli.iter().map(|&m| m as u64).collect::<Vec<_>>())
}

fn kp_tables() -> Check {
    let mut count = 0;
    // R_0 of type B_n on its root lattice Z^n.
    for n in 1..=6 {
        let rd = datum(Family::B, n, &LatticeSpec::Root)?;
        for p in Subset::all(n) {
            let tail_start = if p.contains(n - 1) {
                (0..n)
                    .rev()
                    .take_while(|&k| p.contains(k))
                    .last()
                    .unwrap_or(n)
            } else {
                n
            };
            let mut lambda = vec![];
            let mut len = 0;
            for c in 0..tail_start {
                len += 1;
                if c + 1 == tail_start || !p.contains(c) {
                    lambda.push(len);
                    len = 0;
                }
            }
            let mut gens = vec![];
            for b in blocks_of(&lambda) {
                gens.extend(b.windows(2).map(|w| diff(n, w[0], w[1])));
                gens.push(indicator(n, &b, 1));
            }
            gens.extend((tail_start..n).map(|j| unit(n, j)));
            let oracle_mod = quotient_moduli(&rd, &gens)?;
            let kp = ok(KpGroup::new(&rd, p))?;
            let lambda64: Vec<u64> = lambda.iter().map(|&x| x as u64).collect();
            let expected = oracle::elementary_divisors(&lambda64);
            ensure!(
                library_divisors(&kp) == expected
                    && oracle::elementary_divisors(&oracle_mod) == expected,
                "B{n} root, P = {p}: library {:?}, lattice {oracle_mod:?}, blocks {lambda:?}",
                kp.moduli
            );
            count += 1;
        }
    }
    // D_n on its root lattice.
    for n in 4..=6 {
        let rd = datum(Family::D, n, &LatticeSpec::Root)?;
        for shape in DShape::all(n) {
            let p = shape.subset();
            let l = shape.l;
            let m = n - l;
            let blocks = blocks_of(&shape.lambda);
            let mut gens = vec![];
            let mut odd: Vec<&Vec<usize>> = vec![];
            for b in &blocks {
                gens.extend(b.windows(2).map(|w| diff(n, w[0], w[1])));
                if b.len() % 2 == 0 {
                    gens.push(indicator(n, b, 1));
                } else {
                    gens.push(indicator(n, b, 2));
                    odd.push(b);
                }
            }
            for w in odd.windows(2) {
                let mut v = indicator(n, w[0], 1);
                for &j in w[1] {
                    v[j] = rat(1);
                }
                gens.push(v);
            }
            for j in m..n.saturating_sub(1) {
                gens.push(diff(n, j, j + 1));
                let mut v = unit(n, j);
                v[j + 1] = rat(1);
                gens.push(v);
            }
            let oracle_mod = quotient_moduli(&rd, &gens)?;
            let kp = ok(KpGroup::new(&rd, p))?;
            let tag = format!("D{n} root, shape {:?} + D{l}", shape.lambda);
            let lambda64: Vec<u64> = shape.lambda.iter().map(|&x| x as u64).collect();
            let prod: u64 = lambda64.iter().product();
            let lib = library_divisors(&kp);
            ensure!(
                lib == oracle::elementary_divisors(&oracle_mod),
                "{tag}: library {:?}, lattice {oracle_mod:?}",
                kp.moduli
            );
            if !odd.is_empty() {
                let mut expected = lambda64.clone();
                if l >= 2 {
                    expected.push(2);
                }
                let expected = oracle::elementary_divisors(&expected);
                ensure!(lib == expected, "{tag}: {lib:?}, expected {expected:?}");
            } else {
                let expected = if l >= 2 { prod } else { prod / 2 };
                ensure!(
                    kp.order() as u64 == expected,
                    "{tag}: |K_P| = {}, expected {expected}",
                    kp.order()
                );
            }
            if l >= 2 {
                let kappa = sign_character(&rd, &(m..n).collect::<Vec<_>>())?;
                // With l = n every vector of X has even coordinate sum and κ = 1.
                ensure!(
                    kp.contains(&kappa) && kappa.is_identity() == (l == n),
                    "{tag}: κ is not in K_P or has the wrong order"
                );
            }
            count += 1;
        }
    }
    Ok(format!("{count} parabolic subsets"))
}

fn d_stabilizers() -> Check {
    let mut count = 0;
    for n in 4..=6 {
        let rd = datum(Family::D, n, &LatticeSpec::Root)?;
        let g = ok(WeylGroupoid::new(&rd))?;
        let w = g.group();
        for shape in DShape::all(n) {
            let p = shape.subset();
            let simple: BTreeSet<usize> = p.iter().map(|k| rd.simple_root_index(k)).collect();
            let brute = w
                .elements()
                .filter(|&x| {
                    simple
                        .iter()
                        .all(|&r| simple.contains(&w.act_on_root(x, r)))
                })
                .count();
            let report = ok(classical_wpp_report(&g, p))?;
            ensure!(
                brute as u128 == shape.formula_order()
                    && report.brute_order == brute
                    && report.matches,
                "D{n} shape {:?} + D{}: brute {brute}, formula {}, report {} (matches {})",
                shape.lambda,
                shape.l,
                shape.formula_order(),
                report.brute_order,
                report.matches
            );
            count += 1;
        }
    }
    Ok(format!("{count} shapes for n = 4, 5, 6"))
}

fn symmetric_group3() -> FiniteGroup {
    FiniteGroup::generated(
        [0u8, 1, 2],
        &[("s", [1, 0, 2]), ("t", [0, 2, 1])],
        |a, b| [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]],
    )
    .expect("six elements")
}

/// `ρ^a σ^b` with `ρ^8 = σ^2 = 1`, `σρσ = ρ^{-1}`.
fn dihedral16() -> FiniteGroup {
    FiniteGroup::generated((0u8, 0u8), &[("ρ", (1, 0)), ("σ", (0, 1))], |x, y| {
        let c = if x.1 == 0 { y.0 } else { (8 - y.0) % 8 };
        ((x.0 + c) % 8, x.1 ^ y.1)
    })
    .expect("sixteen elements")
}

/// The class of the extension `D_16 → D_8` with kernel `⟨ρ^4⟩`.
fn dihedral_class() -> Result<(FiniteGroup, TwoCocycle), String> {
    let d8 = FiniteGroup::dihedral8();
    let d16 = dihedral16();
    let (om, ka) = (d8.find("ω̃").unwrap(), d8.find("κ̃").unwrap());
    let r = d8.mul(om, ka);
    let gens = [d16.find("ρ").unwrap(), d16.find("σ").unwrap()];
    let f = extend_homomorphism(&d16, &gens, &d8, &[r, om]).ok_or("no map D_16 → D_8")?;
    let ext = ok(CentralExtension::from_map(d16, f.clone(), &d8, None))?;
    let section: Vec<usize> = (0..d8.order())
        .map(|x| (0..f.len()).find(|&y| f[y] == x).unwrap())
        .collect();
    let c = ok(ext.factor_set(&d8, &section))?;
    Ok((d8, c))
}

fn cohomology() -> Check {
    let start = Instant::now();
    for m in 1..=8 {
        let g = ok(FiniteGroup::cyclic(m))?;
        for n in [2u64, 4, 8, 12] {
            let lib = ok(h2_order(&g, n))?.order;
            let brute = oracle::h2_image_order(&g, n);
            ensure!(
                lib == 1 && brute == 1,
                "C_{m}, N = {n}: library {lib}, brute force {brute}"
            );
            let carry = ok(TwoCocycle::from_fn(&g, n, |a, b| ((a + b) / m) as i64))?;
            ensure!(
                ok(is_coboundary(&g, &carry))?.is_coboundary(),
                "carry cocycle on C_{m} is not trivial"
            );
        }
    }
    let c2 = ok(FiniteGroup::cyclic(2))?;
    let c4 = ok(FiniteGroup::cyclic(4))?;
    let c2c2c2 = FiniteGroup::direct_product(&FiniteGroup::klein(), &c2);
    let cases: Vec<(&str, FiniteGroup, u64, u128)> = vec![
        ("C2×C2", FiniteGroup::klein(), 2, 2),
        ("C2×C2", FiniteGroup::klein(), 4, 2),
        ("D8", FiniteGroup::dihedral8(), 2, 2),
        ("D8", FiniteGroup::dihedral8(), 4, 2),
        ("S3", symmetric_group3(), 6, 1),
        ("C2×C4", FiniteGroup::direct_product(&c2, &c4), 4, 2),
        ("C2×C2×C2", c2c2c2, 2, 8),
    ];
    let mut lines = vec![];
    for (name, g, n, known) in &cases {
        let lib = ok(h2_order(g, *n))?.order as u128;
        let brute = oracle::h2_image_order(g, *n);
        ensure!(
            lib == brute && brute == *known,
            "{name}, N = {n}: library {lib}, brute force {brute}, known {known}"
        );
        lines.push(format!("{name}/μ{n}: {lib}"));
    }
    // Klein: all cocycles, distinct antisymmetrizations.
    let k = FiniteGroup::klein();
    let cocycles = ok(all_cocycles(&k, 2, 1 << 20))?;
    ensure!(
        cocycles.len() as u128 == oracle::count_cocycles(&k, 2),
        "Klein cocycle count"
    );
    let classes: HashSet<Vec<u64>> = cocycles
        .iter()
        .map(|c| {
            (0..4)
                .flat_map(|a| (0..4).map(move |b| (a, b)))
                .map(|(a, b)| (c.value(a, b) + 2 - c.value(b, a)) % 2)
                .collect()
        })
        .collect();
    ensure!(
        classes.len() == 2,
        "Klein: {} commutator pairings",
        classes.len()
    );

    let (d8, c) = dihedral_class()?;
    ensure!(
        !ok(is_coboundary(&d8, &c))?.is_coboundary(),
        "D_16 class on D8 reported trivial"
    );
    ensure!(
        !oracle::trivial_in_cx(&d8, &c),
        "D_16 class on D8 has all classes regular"
    );
    let involutions: Vec<usize> = (0..d8.order())
        .filter(|&x| d8.element_order(x) == 2)
        .collect();
    let mut kleins: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &a in &involutions {
        for &b in &involutions {
            let h = oracle::closure(&d8, &[a, b]);
            if a != b && h.len() == 4 && d8.mul(a, b) == d8.mul(b, a) {
                kleins.insert(h);
            }
        }
    }
    ensure!(kleins.len() == 2, "D8 has {} Klein subgroups", kleins.len());
    for h in &kleins {
        let r = ok(restrict_cocycle(&d8, &c, h))?;
        ensure!(
            !oracle::symmetric(&r.group, &r.cocycle)
                && !ok(is_coboundary(&r.group, &r.cocycle))?.is_coboundary(),
            "restriction to {h:?} is trivial"
        );
    }
    let rot = (0..d8.order()).find(|&x| d8.element_order(x) == 4).unwrap();
    let cyc = oracle::closure(&d8, &[rot]);
    let r = ok(restrict_cocycle(&d8, &c, &cyc))?;
    ensure!(
        oracle::symmetric(&r.group, &r.cocycle)
            && ok(is_coboundary(&r.group, &r.cocycle))?.is_coboundary(),
        "restriction to the rotations is nontrivial"
    );
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 5.0, "took {secs:.2} s");
    Ok(format!(
        "cyclic m ≤ 8 trivial; {}; D8 class nontrivial on both Klein subgroups",
        lines.join(", ")
    ))
}

fn cover_pullback() -> Check {
    let (klein, ext) = CentralExtension::dihedral_cover();
    let n = klein.order();
    let e = klein.identity();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != e && b != e)
        .collect();
    let modulus = 4u64;
    let mut tables = vec![];
    for code in 0..modulus.pow(cells.len() as u32) {
        let mut t = vec![vec![0i64; n]; n];
        let mut c = code;
        for &(a, b) in &cells {
            t[a][b] = (c % modulus) as i64;
            c /= modulus;
        }
        let cocycle = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let l = t[y][z] + t[x][klein.mul(y, z)];
                    let r = t[klein.mul(x, y)][z] + t[x][y];
                    (l - r).rem_euclid(modulus as i64) == 0
                })
            })
        });
        if cocycle {
            tables.push(t);
        }
    }
    ensure!(
        tables.len() as u128 == oracle::count_cocycles(&klein, modulus),
        "{} cocycles enumerated",
        tables.len()
    );
    let d8 = &ext.group;
    let f = &ext.quotient;
    let mut nontrivial = 0;
    for t in &tables {
        let c = ok(TwoCocycle::new(&klein, modulus, t.clone()))?;
        if !oracle::symmetric(&klein, &c) {
            nontrivial += 1;
        }
        let v = ok(pullback_through_cover(d8, f, &klein, &c, &ext))?;
        for a in 0..d8.order() {
            for b in 0..d8.order() {
                ensure!(
                    v.pulled_back.value(a, b) as i64 == t[f[a]][f[b]],
                    "pulled back table differs at ({a}, {b})"
                );
            }
        }
        ensure!(
            v.coboundary.is_coboundary() && oracle::trivial_in_cx(d8, &v.pulled_back),
            "pullback of {t:?} is nontrivial"
        );
    }
    ensure!(nontrivial > 0, "no nontrivial class among the cocycles");
    Ok(format!(
        "{} cocycles ({nontrivial} in the nontrivial class), all pullbacks trivial",
        tables.len()
    ))
}

fn a1_knapp_stein() -> Check {
    let rd = datum(Family::A, 1, &LatticeSpec::Root)?;
    let eg = ok(ExtendedGroupoid::new(&rd, &DeltaSpec::Principal))?;
    let q = rat(2);
    let labels = ok(LabelFunction::new(&rd, &LabelSpec::Uniform(q.clone())))?;
    let alpha = rd.root(0).to_vec();
    let mut seen = vec![];
    for k in 0..8 {
        let t = TorusPoint::new(vec![RationalRotation::new(k, 8).map_err(|e| e.to_string())?]);
        // s acts by -1 on X = Zα.
        let fixed = t.values()[0].times(2).is_zero();
        // (1 - q^{-1} z^{-1}) / (1 - z^{-1}) at z = t(α) ∈ {±1}.
        let z = t.eval(&alpha);
        let pole = fixed && {
            let zr = if z.is_zero() { rat(1) } else { rat(-1) };
            let den = rat(1) - zr.recip();
            let num = rat(1) - (&q * &zr).recip();
            den.is_zero() && !num.is_zero()
        };
        let (want_mirrors, want_r) = match (fixed, pole) {
            (true, true) => (2, 1),
            (true, false) => (0, 2),
            _ => (0, 1),
        };
        let m = ok(mirror_roots_principal(eg.groupoid(), &labels, &t))?;
        let xi = ok(eg.datum(Subset::empty(), 0, t.clone()))?;
        let d = ok(rgroup_decomposition(&eg, &xi, &m))?;
        let r = ok(knapp_stein_report(&d, None))?;
        ensure!(
            m.roots.len() == want_mirrors
                && d.r_group.len() == want_r
                && r.dim_end == want_r
                && r.summands == want_r
                && r.multiplicities == vec![1; want_r],
            "t = {t}: mirrors {}, |R| = {}, summands {} (expected {want_mirrors}, {want_r})",
            m.roots.len(),
            d.r_group.len(),
            r.summands
        );
        if k == 0 || k == 4 {
            seen.push(format!(
                "t(α) = {z}: {want_mirrors} mirrors, |R| = {want_r}, {} summand(s)",
                r.summands
            ));
        }
    }
    Ok(seen.join("; "))
}

fn twisted_counting() -> Check {
    let c2 = ok(FiniteGroup::cyclic(2))?;
    let c4 = ok(FiniteGroup::cyclic(4))?;
    let mut groups: Vec<(String, FiniteGroup, Option<Vec<usize>>)> = (1..=8)
        .map(|m| {
            Ok((
                format!("C{m}"),
                ok(FiniteGroup::cyclic(m))?,
                Some(vec![1; m]),
            ))
        })
        .collect::<Result<_, String>>()?;
    groups.push(("C2×C2".into(), FiniteGroup::klein(), Some(vec![1; 4])));
    groups.push((
        "C2×C4".into(),
        FiniteGroup::direct_product(&c2, &c4),
        Some(vec![1; 8]),
    ));
    groups.push(("S3".into(), symmetric_group3(), Some(vec![1, 1, 2])));
    groups.push((
        "D8".into(),
        FiniteGroup::dihedral8(),
        Some(vec![1, 1, 1, 1, 2]),
    ));
    groups.push((
        "B3".into(),
        ok(FiniteGroup::hyperoctahedral(3))?,
        Some(vec![1, 1, 1, 1, 2, 2, 3, 3, 3, 3]),
    ));
    for (name, g, known) in &groups {
        let zero = TwoCocycle::zero(g, 1);
        let d = ok(twisted_irreducibles(g, &zero))?;
        let plain = ok(irreducible_degrees(g))?;
        let squares: usize = d.iter().map(|x| x * x).sum();
        ensure!(
            d == plain && d.len() == oracle::conjugacy_class_count(g) && squares == g.order(),
            "{name}: degrees {d:?}, {} classes",
            oracle::conjugacy_class_count(g)
        );
        if let Some(k) = known {
            ensure!(&d == k, "{name}: degrees {d:?}, expected {k:?}");
        }
    }
    let (k, c) = ok(klein_cocycle(2))?;
    let d = ok(twisted_irreducibles(&k, &c))?;
    let regular = oracle::regular_class_count(&k, &c);
    ensure!(
        d == vec![2] && regular == 1 && regular_classes(&k, &c).len() == 1,
        "Klein cocycle: degrees {d:?}, {regular} regular classes"
    );
    let (d8, c) = dihedral_class()?;
    let d = ok(twisted_irreducibles(&d8, &c))?;
    let regular = oracle::regular_class_count(&d8, &c);
    ensure!(
        d.len() == regular && d.iter().map(|x| x * x).sum::<usize>() == 8,
        "D8 class: degrees {d:?}, {regular} regular classes"
    );
    let mut checked = 0;
    for c in ok(all_cocycles(&k, 4, 1 << 20))? {
        let d = ok(twisted_irreducibles(&k, &c))?;
        let regular = oracle::regular_class_count(&k, &c);
        ensure!(
            d.len() == regular && d.iter().map(|x| x * x).sum::<usize>() == 4,
            "Klein μ4 cocycle {:?}: degrees {d:?}, {regular} regular classes",
            c.rows()
        );
        checked += 1;
    }
    Ok(format!(
        "{} groups with trivial cocycle; Klein class gives [2]; D8 class gives {d:?}; {checked} μ4 Klein cocycles",
        groups.len()
    ))
}

/// Order of the pole of the factor attached to the positive root `b` at `t`,
/// read from `R_nr` and the label values.
fn pole_order(rd: &RootDatum, labels: &LabelFunction, b: usize, t: &TorusPoint) -> i32 {
    let nr = rd.nonreduced();
    let vals = labels.values();
    let beta = rd.root(b);
    let doubled = nr.roots.iter().position(|r| r.doubled && r.base == b);
    // y0 = t(α/2) for the R_1 root α, when α/2 ∈ X.
    let (q, q2, alpha_value, half) = match doubled {
        Some(k) => (
            vals[k].clone(),
            vals[b].clone(),
            t.eval(beta).times(2),
            Some(t.eval(beta)),
        ),
        None => {
            let half = beta
                .iter()
                .all(|x| x % 2 == 0)
                .then(|| t.eval(&beta.iter().map(|x| x / 2).collect::<Vec<_>>()));
            (vals[b].clone(), rat(1), t.eval(beta), half)
        }
    };
    let den = alpha_value.is_zero() as i32;
    match half {
        // (1 + q^{-1/2} y)(1 - q^{-1/2} q2^{-1} y) / (1 - y²) with y = ±1.
        Some(y) if y.times(2).is_zero() => {
            let minus = !y.is_zero();
            let first = minus && q.is_one();
            let second = !minus && (&q * &q2 * &q2).is_one();
            den - first as i32 - second as i32
        }
        Some(_) => 0,
        // (1 - q^{-1} θ) / (1 - θ).
        None => den - (den == 1 && q.is_one()) as i32,
    }
}

fn torsion_points(rank: usize, max_order: i64) -> Vec<TorusPoint> {
    let mut out: BTreeSet<TorusPoint> = BTreeSet::new();
    for d in 1..=max_order {
        let total = (d as usize).pow(rank as u32);
        for code in 0..total {
            let mut c = code;
            let vals = (0..rank)
                .map(|_| {
                    let v = (c % d as usize) as i64;
                    c /= d as usize;
                    RationalRotation::new(v, d).unwrap()
                })
                .collect();
            out.insert(TorusPoint::new(vals));
        }
    }
    out.into_iter().collect()
}

fn semidirect_splitting() -> Check {
    let label_sets = [
        LabelSpec::Uniform(rat(2)),
        LabelSpec::Classical {
            q0: rat(2),
            q1: rat(3),
            q2: rat_frac(1, 4),
        },
        LabelSpec::Classical {
            q0: rat(1),
            q1: rat(2),
            q2: rat(3),
        },
    ];
    let mut runs = 0;
    let mut nontrivial_r = 0;
    let mut with_mirrors = 0;
    for (f, n) in [
        (Family::A, 1),
        (Family::A, 2),
        (Family::B, 2),
        (Family::C, 2),
    ] {
        for lattice in [LatticeSpec::Root, LatticeSpec::Weight] {
            let rd = datum(f, n, &lattice)?;
            let eg = ok(ExtendedGroupoid::new(&rd, &DeltaSpec::Principal))?;
            let g = eg.groupoid();
            let w = g.group();
            let rr = ok(g.restricted_roots(Subset::empty()))?;
            let r = rd.rank();
            let basis: Vec<Vec<i64>> = (0..r)
                .map(|i| (0..r).map(|j| (i == j) as i64).collect())
                .collect();
            let reflection: Vec<WeylElement> = (0..rd.num_positive())
                .map(|b| {
                    w.elements()
                        .find(|&x| {
                            basis.iter().enumerate().all(|(i, e)| {
                                let c = rd.coroot(b)[i];
                                let img: Vec<i64> =
                                    e.iter().zip(rd.root(b)).map(|(a, r)| a - c * r).collect();
                                w.act_on_x(x, e) == img
                            })
                        })
                        .expect("reflection")
                })
                .collect();
            for spec in &label_sets {
                let labels = ok(LabelFunction::new(&rd, spec))?;
                for t in torsion_points(r, 8) {
                    let tag = format!("{f}{n} {} {spec:?} t = {t}", lattice_name(&lattice));
                    let moves = |x: WeylElement| -> TorusPoint {
                        let inv = w.inverse(x);
                        TorusPoint::new(basis.iter().map(|e| t.eval(&w.act_on_x(inv, e))).collect())
                    };
                    let stab: BTreeSet<WeylElement> =
                        w.elements().filter(|&x| moves(x) == t).collect();
                    let mirrors: Vec<usize> = (0..rd.num_positive())
                        .filter(|&b| {
                            let v = t.eval(rd.root(b));
                            rd.coroot(b).iter().all(|&c| v.times(c).is_zero())
                                && pole_order(&rd, &labels, b, &t) == 1
                        })
                        .collect();
                    let mut wm: BTreeSet<WeylElement> = BTreeSet::from([w.identity()]);
                    loop {
                        let next: BTreeSet<WeylElement> = wm
                            .iter()
                            .flat_map(|&x| mirrors.iter().map(move |&b| (x, b)))
                            .map(|(x, b)| w.mul(x, reflection[b]))
                            .collect();
                        if next.is_subset(&wm) {
                            break;
                        }
                        wm.extend(next);
                    }
                    let rgroup: BTreeSet<WeylElement> = stab
                        .iter()
                        .copied()
                        .filter(|&x| {
                            mirrors
                                .iter()
                                .all(|&b| w.is_positive_root(w.act_on_root(x, b)))
                        })
                        .collect();
                    ensure!(wm.is_subset(&stab), "{tag}: W^m is not in the stabilizer");
                    ensure!(
                        rgroup.len() * wm.len() == stab.len(),
                        "{tag}: |R| |W^m| ≠ |W_ξ|"
                    );
                    ensure!(
                        rgroup.intersection(&wm).count() == 1,
                        "{tag}: R ∩ W^m is nontrivial"
                    );
                    let products: BTreeSet<WeylElement> = rgroup
                        .iter()
                        .flat_map(|&a| wm.iter().map(move |&b| w.mul(a, b)))
                        .collect();
                    ensure!(products == stab, "{tag}: R W^m ≠ W_ξ");
                    ensure!(
                        stab.iter().all(|&x| wm
                            .iter()
                            .all(|&m| wm.contains(&w.mul(w.mul(x, m), w.inverse(x))))),
                        "{tag}: W^m is not normal"
                    );

                    let m = ok(mirror_roots_principal(g, &labels, &t))?;
                    let mine: BTreeSet<usize> =
                        mirrors.iter().map(|&b| rr.class_of[b].unwrap().0).collect();
                    ensure!(
                        m.positive.iter().copied().collect::<BTreeSet<_>>() == mine,
                        "{tag}: mirrors {:?}, expected roots {mirrors:?}",
                        m.positive
                    );
                    let xi = ok(eg.datum(Subset::empty(), 0, t.clone()))?;
                    let d = ok(rgroup_decomposition(&eg, &xi, &m))?;
                    let as_set = |idx: &[usize]| -> BTreeSet<WeylElement> {
                        idx.iter().map(|&i| d.elements[i].u).collect()
                    };
                    let all: Vec<usize> = (0..d.elements.len()).collect();
                    ensure!(
                        as_set(&all) == stab && as_set(&d.wm) == wm && as_set(&d.r_group) == rgroup,
                        "{tag}: library |W_ξ| = {}, |W^m| = {}, |R| = {}",
                        d.elements.len(),
                        d.wm.len(),
                        d.r_group.len()
                    );
                    for (i, &(a, b)) in d.factorization.iter().enumerate() {
                        ensure!(
                            d.group.mul(a, b) == i,
                            "{tag}: factorization of element {i} is wrong"
                        );
                    }
                    runs += 1;
                    nontrivial_r += (rgroup.len() > 1) as usize;
                    with_mirrors += (!mirrors.is_empty()) as usize;
                }
            }
        }
    }
    Ok(format!(
        "{runs} principal series points ({with_mirrors} with mirrors, {nontrivial_r} with nontrivial R)"
    ))
}

fn label_calculus() -> Check {
    let rd = datum(Family::B, 3, &LatticeSpec::Root)?;
    let (q0, q1, q2) = (rat(2), rat(3), rat_frac(5, 7));
    let labels = ok(LabelFunction::new(
        &rd,
        &LabelSpec::Classical {
            q0: q0.clone(),
            q1: q1.clone(),
            q2: q2.clone(),
        },
    ))?;
    let w = ok(WeylGroup::generate(&rd))?;
    let nr = rd.nonreduced();
    let vals = labels.values();
    ensure!(
        BTreeSet::from_iter(vals.iter().cloned()) == BTreeSet::from([q0, q1, q2]),
        "labels take values {vals:?}"
    );
    // q(w) = Π q over positive elements of R_nr sent to negatives.
    let qw: Vec<Rat> = w
        .elements()
        .map(|x| {
            nr.roots
                .iter()
                .enumerate()
                .filter(|(_, r)| {
                    rd.is_positive(r.base) && !w.is_positive_root(w.act_on_root(x, r.base))
                })
                .map(|(k, _)| vals[k].clone())
                .product()
        })
        .collect();
    let len: Vec<usize> = w
        .elements()
        .map(|x| {
            (0..rd.num_positive())
                .filter(|&a| !w.is_positive_root(w.act_on_root(x, a)))
                .count()
        })
        .collect();
    for x in w.elements() {
        ensure!(w.label(&rd, &labels, x) == qw[x], "q(w_{x}) differs");
    }
    let mut additive = 0;
    for u in w.elements() {
        for v in w.elements() {
            let uv = w.mul(u, v);
            if len[uv] == len[u] + len[v] {
                ensure!(
                    qw[uv] == &qw[u] * &qw[v],
                    "q(uv) ≠ q(u) q(v) for u = {u}, v = {v}"
                );
                additive += 1;
            }
        }
    }
    Ok(format!(
        "{} elements, {additive} length-additive pairs",
        w.order()
    ))
}
