//! `𝔚_{P,P}` for type `D_n` and a standard parabolic of shape
//! `A_{λ_1 - 1} × ⋯ × A_{λ_r - 1} × D_l`, compared with the signed-permutation
//! description `(W_0(B_{μ_1}) × ⋯ × W_0(B_{μ_M}) × ⟨ω⟩)^{Σ_odd}`.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::intlin::rational::Rat;
use crate::rootdata::Family;
use crate::subset::Subset;
use crate::weylgroupoid::WeylGroupoid;

/// Limit on the size of the signed-permutation group generated for the
/// prediction.
const MAX_PREDICTED: usize = 500_000;

/// `P` as a composition `λ` of `n - l` (blocks on the first `n - l`
/// coordinates, left to right) followed by a `D_l` tail, `l = 0` or `l ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DShape {
    pub n: usize,
    pub lambda: Vec<usize>,
    pub l: usize,
}

impl DShape {
    /// Reads off the shape of `P ⊆ F_0` for `D_n` in the standard ordering
    /// `e_1 - e_2, …, e_{n-1} - e_n, e_{n-1} + e_n`.
    pub fn of(n: usize, p: Subset) -> Result<Self> {
        let (minus, plus) = (n - 2, n - 1);
        let a_end = if p.contains(plus) {
            if !p.contains(minus) {
                return Err(Error::Precondition(format!(
                    "{p} contains e_{{n-1}} + e_n but not e_{{n-1}} - e_n; apply the diagram automorphism first"
                )));
            }
            let mut j = minus;
            while j > 0 && p.contains(j - 1) {
                j -= 1;
            }
            j
        } else {
            n
        };
        let mut lambda = vec![];
        let mut len = 0;
        for c in 0..a_end {
            len += 1;
            if c + 1 == a_end || !p.contains(c) {
                lambda.push(len);
                len = 0;
            }
        }
        Ok(DShape {
            n,
            lambda,
            l: n - a_end,
        })
    }

    pub fn subset(&self) -> Subset {
        let mut p = Subset::empty();
        let mut start = 0;
        for &part in &self.lambda {
            for c in start..start + part - 1 {
                p = p.with(c);
            }
            start += part;
        }
        if self.l >= 2 {
            for c in start..self.n - 1 {
                p = p.with(c);
            }
            p = p.with(self.n - 1);
        }
        p
    }

    /// Every shape for `D_n`: all compositions of `n - l` for `l = 0` and
    /// `2 ≤ l ≤ n`.
    pub fn all(n: usize) -> Vec<DShape> {
        let mut out = vec![];
        for l in std::iter::once(0).chain(2..=n) {
            for lambda in compositions(n - l) {
                out.push(DShape { n, lambda, l });
            }
        }
        out
    }

    /// `μ_i`, the multiplicity of `i` as a part, for `i = 1..=max`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let m = self.lambda.iter().copied().max().unwrap_or(0);
        (1..=m)
            .map(|i| self.lambda.iter().filter(|&&x| x == i).count())
            .collect()
    }

    pub fn has_odd_part(&self) -> bool {
        self.lambda.iter().any(|x| x % 2 == 1)
    }

    /// `|(∏ W_0(B_{μ_i}) × ⟨ω⟩)^{Σ_odd}|` from the multiplicities alone.
    pub fn formula_order(&self) -> u128 {
        let mut order: u128 = 1;
        for mu in self.multiplicities() {
            for k in 1..=mu as u128 {
                order *= 2 * k;
            }
        }
        let omega = self.l >= 2;
        if omega {
            order *= 2;
        }
        if self.has_odd_part() || omega {
            order /= 2;
        }
        order
    }
}

fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Brute-force `𝔚_{P,P}` against the signed-permutation prediction.
#[derive(Clone, Debug)]
pub struct WppReport {
    pub shape: DShape,
    pub brute_order: usize,
    /// Size of the explicitly generated predicted group.
    pub predicted_order: usize,
    pub formula_order: u128,
    /// The predicted elements are exactly the brute-force ones.
    pub matches: bool,
    /// Predicted elements that are not in `𝔚_{P,P}`, and conversely.
    pub extra: usize,
    pub missing: usize,
    /// `Σ_odd` restricted to `∏ W_0(B_{μ_i})` is trivial.
    pub sigma_odd_trivial_on_a: bool,
}

/// A signed permutation of coordinates: `e_i ↦ sign * e_{|img| - 1}`,
/// stored as `img = ±(target + 1)`.
type SignedPerm = Vec<i64>;

fn compose(a: &SignedPerm, b: &SignedPerm) -> SignedPerm {
    b.iter()
        .map(|&x| {
            let y = a[(x.unsigned_abs() - 1) as usize];
            if x < 0 {
                -y
            } else {
                y
            }
        })
        .collect()
}

fn negatives(a: &SignedPerm) -> usize {
    a.iter().filter(|&&x| x < 0).count()
}

pub fn classical_wpp_report(g: &WeylGroupoid, p: Subset) -> Result<WppReport> {
    let rd = g.root_datum();
    let n = match rd.classical_type() {
        Some((Family::D, n)) => n,
        _ => {
            return Err(Error::Precondition(format!(
                "{} is not a classical datum of type D",
                rd.name()
            )))
        }
    };
    let real = rd
        .realization()
        .ok_or_else(|| Error::Precondition("no coordinate realization".into()))?;
    let shape = DShape::of(n, p)?;
    let id: SignedPerm = (1..=n as i64).collect();
    let mut gens: Vec<SignedPerm> = vec![];
    let mut starts: Vec<(usize, usize)> = vec![];
    let mut s = 0;
    for &part in &shape.lambda {
        starts.push((s, part));
        s += part;
    }
    let sizes: BTreeSet<usize> = shape.lambda.iter().copied().collect();
    for &size in &sizes {
        let blocks: Vec<usize> = starts.iter().filter(|b| b.1 == size).map(|b| b.0).collect();
        let mut flip = id.clone();
        for j in 0..size {
            flip[blocks[0] + j] = -((blocks[0] + size - j) as i64);
        }
        gens.push(flip);
        for w in blocks.windows(2) {
            let mut swap = id.clone();
            for j in 0..size {
                swap[w[0] + j] = (w[1] + j + 1) as i64;
                swap[w[1] + j] = (w[0] + j + 1) as i64;
            }
            gens.push(swap);
        }
    }
    // Σ_odd is the parity of the number of sign changes: a block flip
    // changes λ_i signs and ω changes one.
    let a_odd = gens.iter().any(|w| negatives(w) % 2 == 1);
    if shape.l >= 2 {
        let mut omega = id.clone();
        omega[n - 1] = -(n as i64);
        gens.push(omega);
    }
    let mut group: Vec<SignedPerm> = vec![id.clone()];
    let mut seen: HashSet<SignedPerm> = HashSet::from([id]);
    let mut k = 0;
    while k < group.len() {
        for gen in &gens {
            let x = compose(gen, &group[k]);
            if seen.insert(x.clone()) {
                if group.len() >= MAX_PREDICTED {
                    return Err(Error::GuardExceeded(format!(
                        "predicted group exceeds {MAX_PREDICTED} elements"
                    )));
                }
                group.push(x);
            }
        }
        k += 1;
    }
    let kernel: Vec<&SignedPerm> = group
        .iter()
        .filter(|w| negatives(w).is_multiple_of(2))
        .collect();
    let brute: BTreeSet<usize> = g.hom_set(p, p).iter().map(|a| a.element).collect();
    let dim = rd.rank();
    let mut predicted: BTreeSet<usize> = BTreeSet::new();
    let mut extra = 0;
    for w in &kernel {
        let mut m = vec![0i64; dim * dim];
        let mut ok = true;
        for (j, b) in real.basis.iter().enumerate() {
            let mut img = vec![Rat::from_integer(0.into()); real.ambient_dim];
            for (i, bi) in b.iter().enumerate() {
                let t = (w[i].unsigned_abs() - 1) as usize;
                if w[i] < 0 {
                    img[t] -= bi;
                } else {
                    img[t] += bi;
                }
            }
            match real.from_ambient(&img) {
                Some(c) => {
                    for (i, ci) in c.into_iter().enumerate() {
                        m[i * dim + j] = ci;
                    }
                }
                None => ok = false,
            }
        }
        match g.group().find_matrix(&m).filter(|_| ok) {
            Some(e) if brute.contains(&e) => {
                predicted.insert(e);
            }
            _ => extra += 1,
        }
    }
    let missing = brute.difference(&predicted).count();
    Ok(WppReport {
        brute_order: brute.len(),
        predicted_order: kernel.len(),
        formula_order: shape.formula_order(),
        matches: extra == 0 && missing == 0,
        extra,
        missing,
        sigma_odd_trivial_on_a: !a_odd,
        shape,
    })
}
