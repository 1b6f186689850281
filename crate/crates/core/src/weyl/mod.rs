//! The finite Weyl group `W_0` as an explicit table.

mod torus;

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::rootdata::{LabelFunction, RootDatum};
use crate::subset::Subset;

pub use torus::TorusPoint;

/// Largest group that will be enumerated.
pub const MAX_WEYL_ORDER: u128 = 10_000_000;

/// Index of an element in a [`WeylGroup`].
pub type WeylElement = usize;

/// Order of a Weyl group from its type name (`"B3"`, `"A1xA2"`, ...).
pub fn weyl_order_of_type(name: &str) -> Option<u128> {
    if name == "0" {
        return Some(1);
    }
    let fact = |n: u128| (1..=n).product::<u128>();
    name.split('x')
        .map(|c| {
            let (fam, n) = c.split_at(1);
            let n: u128 = n.parse().ok()?;
            Some(match (fam, n) {
                ("A", n) => fact(n + 1),
                ("B" | "C", n) => (1u128 << n) * fact(n),
                ("D", n) => (1u128 << (n - 1)) * fact(n),
                ("E", 6) => 51_840,
                ("E", 7) => 2_903_040,
                ("E", 8) => 696_729_600,
                ("F", 4) => 1_152,
                ("G", 2) => 12,
                _ => return None,
            })
        })
        .product()
}

/// `W_0` enumerated breadth first by left multiplication with simple
/// reflections. Elements of each length are sorted lexicographically by
/// matrix; the identity has index 0.
///
/// Matrices act on `X` (columns are images of basis vectors). An element is
/// determined by its permutation of the roots.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    n_simple: usize,
    n_roots: usize,
    n_pos: usize,
    matrices: Vec<i64>,
    perms: Vec<u32>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    left: Vec<Vec<u32>>,
    inverses: Vec<u32>,
    lookup: HashMap<Vec<u32>, u32>,
}

impl WeylGroup {
    pub fn generate(rd: &RootDatum) -> Result<Self> {
        Self::generate_with_guard(rd, MAX_WEYL_ORDER)
    }

    pub fn generate_with_guard(rd: &RootDatum, guard: u128) -> Result<Self> {
        if let Some(order) = weyl_order_of_type(&rd.type_name()) {
            if order > guard {
                return Err(Error::GuardExceeded(format!(
                    "|W_0| = {order} exceeds the limit {guard}"
                )));
            }
        }
        let n = rd.rank();
        let l = rd.semisimple_rank();
        let nr = rd.num_roots();
        let refl: Vec<Vec<i64>> = (0..l).map(|i| rd.reflection_matrix(i)).collect();
        let sperm: Vec<&[usize]> = (0..l).map(|i| rd.simple_reflection_perm(i)).collect();

        let mut identity = vec![0i64; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let mut g = WeylGroup {
            rank: n,
            n_simple: l,
            n_roots: nr,
            n_pos: rd.num_positive(),
            matrices: identity,
            perms: (0..nr as u32).collect(),
            lengths: vec![0],
            words: vec![vec![]],
            left: vec![vec![]; l],
            inverses: vec![],
            lookup: HashMap::new(),
        };
        g.lookup.insert(g.key_of_perm(&g.perms[..nr]), 0);

        let mut layer: Vec<usize> = vec![0];
        let mut len = 0u32;
        while !layer.is_empty() {
            // Candidates s * w for w in the current layer, in order of discovery.
            let mut fresh: Vec<(Vec<i64>, Vec<u32>, Vec<u8>)> = vec![];
            let mut fresh_keys: HashMap<Vec<u32>, usize> = HashMap::new();
            for &w in &layer {
                for s in 0..l {
                    let p: Vec<u32> = g
                        .perm(w)
                        .iter()
                        .map(|&r| sperm[s][r as usize] as u32)
                        .collect();
                    let key = g.key_of_perm(&p);
                    if g.lookup.contains_key(&key) || fresh_keys.contains_key(&key) {
                        continue;
                    }
                    if (g.lookup.len() + fresh.len()) as u128 >= guard {
                        return Err(Error::GuardExceeded(format!(
                            "more than {guard} elements in W_0"
                        )));
                    }
                    let m = mat_mul(&refl[s], g.matrix(w), n);
                    let mut word = vec![s as u8];
                    word.extend_from_slice(&g.words[w]);
                    fresh_keys.insert(key, fresh.len());
                    fresh.push((m, p, word));
                }
            }
            fresh.sort_by(|a, b| a.0.cmp(&b.0));
            len += 1;
            let start = g.lengths.len();
            for (m, p, word) in fresh {
                let idx = g.lengths.len() as u32;
                g.lookup.insert(g.key_of_perm(&p), idx);
                g.matrices.extend_from_slice(&m);
                g.perms.extend_from_slice(&p);
                g.lengths.push(len);
                g.words.push(word);
            }
            layer = (start..g.lengths.len()).collect();
        }

        let order = g.lengths.len();
        for s in 0..l {
            let col: Vec<u32> = (0..order)
                .map(|w| {
                    let p: Vec<u32> = g
                        .perm(w)
                        .iter()
                        .map(|&r| sperm[s][r as usize] as u32)
                        .collect();
                    g.lookup[&g.key_of_perm(&p)]
                })
                .collect();
            g.left[s] = col;
        }
        g.inverses = (0..order)
            .map(|w| {
                g.words[w]
                    .iter()
                    .fold(0u32, |x, &s| g.left[s as usize][x as usize])
            })
            .collect();
        Ok(g)
    }

    fn key_of_perm(&self, p: &[u32]) -> Vec<u32> {
        p[..self.n_simple].to_vec()
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> WeylElement {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Row-major `rank x rank` matrix of `w` on `X`.
    pub fn matrix(&self, w: WeylElement) -> &[i64] {
        let n2 = self.rank * self.rank;
        &self.matrices[w * n2..(w + 1) * n2]
    }

    /// `perm[r]` is the index of `w(root r)`.
    pub fn perm(&self, w: WeylElement) -> &[u32] {
        &self.perms[w * self.n_roots..(w + 1) * self.n_roots]
    }

    pub fn act_on_root(&self, w: WeylElement, r: usize) -> usize {
        self.perm(w)[r] as usize
    }

    pub fn length(&self, w: WeylElement) -> usize {
        self.lengths[w] as usize
    }

    /// A reduced word `i_1 ... i_k` with `w = s_{i_1} ... s_{i_k}`.
    pub fn word(&self, w: WeylElement) -> Vec<usize> {
        self.words[w].iter().map(|&s| s as usize).collect()
    }

    pub fn simple_reflection(&self, s: usize) -> WeylElement {
        self.left[s][0] as usize
    }

    /// `s_s * w`.
    pub fn left_mul_simple(&self, s: usize, w: WeylElement) -> WeylElement {
        self.left[s][w] as usize
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        self.words[a]
            .iter()
            .rev()
            .fold(b as u32, |x, &s| self.left[s as usize][x as usize]) as usize
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        self.inverses[w] as usize
    }

    /// The element with the given matrix on `X`, if any.
    pub fn find_matrix(&self, m: &[i64]) -> Option<WeylElement> {
        (0..self.order()).find(|&w| self.matrix(w) == m)
    }

    /// The element mapping simple root `i` to root `images[i]`, if any.
    pub fn find_by_simple_images(&self, images: &[usize]) -> Option<WeylElement> {
        let key: Vec<u32> = images.iter().map(|&r| r as u32).collect();
        self.lookup.get(&key).map(|&w| w as usize)
    }

    /// `w x` for `x` in `X`.
    pub fn act_on_x(&self, w: WeylElement, x: &[i64]) -> Vec<i64> {
        mat_vec(self.matrix(w), x, self.rank)
    }

    /// `w y` for `y` in `Y`, i.e. the transpose of `w^{-1}` applied to `y`.
    pub fn act_on_y(&self, w: WeylElement, y: &[i64]) -> Vec<i64> {
        let m = self.matrix(self.inverse(w));
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| m[j * n + i] * y[j]).sum())
            .collect()
    }

    /// `(w t)(x) = t(w^{-1} x)`.
    pub fn act_on_torus(&self, w: WeylElement, t: &TorusPoint) -> TorusPoint {
        let m = self.matrix(self.inverse(w));
        let n = self.rank;
        TorusPoint::new(
            (0..n)
                .map(|i| {
                    let col: Vec<i64> = (0..n).map(|j| m[j * n + i]).collect();
                    t.eval(&col)
                })
                .collect(),
        )
    }

    /// Positive roots made negative by `w`, i.e. `R_{0,+} ∩ w^{-1} R_{0,-}`.
    pub fn inversions(&self, w: WeylElement) -> Vec<usize> {
        let p = self.perm(w);
        (0..self.n_pos)
            .filter(|&r| p[r] as usize >= self.n_pos)
            .collect()
    }

    pub fn is_positive_root(&self, r: usize) -> bool {
        r < self.n_pos
    }

    /// `q(w)` as a product of labels over inverted elements of `R_{nr,+}`.
    pub fn label(&self, rd: &RootDatum, q: &LabelFunction, w: WeylElement) -> BigRational {
        q.label_of_inversions(rd, &self.inversions(w))
    }

    /// Elements of the parabolic subgroup `W_P`.
    pub fn parabolic_subgroup(&self, p: Subset) -> Vec<WeylElement> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let w = out[k];
            for s in p.iter() {
                let x = self.left_mul_simple(s, w);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// The longest element `w_P` of `W_P`.
    pub fn longest_element(&self, p: Subset) -> WeylElement {
        let mut u = 0;
        'outer: loop {
            for b in p.iter() {
                // u s_b is longer than u iff u(alpha_b) > 0.
                if self.is_positive_root(self.act_on_root(u, b)) {
                    u = self.mul(u, self.simple_reflection(b));
                    continue 'outer;
                }
            }
            return u;
        }
    }

    /// `W^P = {w : w(P) ⊂ R_{0,+}}`, the minimal left coset representatives.
    pub fn coset_representatives(&self, p: Subset) -> Vec<WeylElement> {
        (0..self.order())
            .filter(|&w| {
                p.iter()
                    .all(|b| self.is_positive_root(self.act_on_root(w, b)))
            })
            .collect()
    }

    /// Image of the subset `P` as a subset of `F_0`, if `w(P) ⊂ F_0`.
    pub fn map_subset(&self, w: WeylElement, p: Subset) -> Option<Subset> {
        let mut q = Subset::empty();
        for b in p.iter() {
            let r = self.act_on_root(w, b);
            if r >= self.n_simple {
                return None;
            }
            q = q.with(r);
        }
        Some(q)
    }
}

pub(crate) fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

pub(crate) fn mat_vec(m: &[i64], x: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::RationalRotation;
    use crate::rootdata::{build_classical, Family, LatticeSpec};

    fn group(f: Family, n: usize, l: LatticeSpec) -> (RootDatum, WeylGroup) {
        let rd = build_classical(f, n, &l).unwrap();
        let w = WeylGroup::generate(&rd).unwrap();
        (rd, w)
    }

    #[test]
    fn orders() {
        assert_eq!(group(Family::A, 1, LatticeSpec::Root).1.order(), 2);
        assert_eq!(group(Family::B, 3, LatticeSpec::Root).1.order(), 48);
        assert_eq!(group(Family::D, 4, LatticeSpec::Weight).1.order(), 192);
        assert_eq!(weyl_order_of_type("A1xB2"), Some(16));
        assert_eq!(weyl_order_of_type("E8"), Some(696_729_600));
    }

    #[test]
    fn guard() {
        let rd = build_classical(Family::B, 3, &LatticeSpec::Root).unwrap();
        assert!(matches!(
            WeylGroup::generate_with_guard(&rd, 40),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn group_laws_a2() {
        let (_, g) = group(Family::A, 2, LatticeSpec::Root);
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inverse(a)), 0);
            for b in g.elements() {
                let ab = g.mul(a, b);
                assert_eq!(g.matrix(ab), mat_mul(g.matrix(a), g.matrix(b), 2));
            }
        }
        let layers: Vec<usize> = g.elements().map(|w| g.length(w)).collect();
        assert_eq!(layers, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn longest_elements() {
        let (rd, g) = group(Family::A, 2, LatticeSpec::Root);
        let w0 = g.longest_element(Subset::full(2));
        assert_eq!(g.length(w0), 3);
        assert_eq!(g.act_on_root(w0, 0), rd.negative(1));
        assert_eq!(g.longest_element(Subset::empty()), 0);
        let (_, g) = group(Family::B, 2, LatticeSpec::Root);
        let w0 = g.longest_element(Subset::full(2));
        assert_eq!(g.matrix(w0), &[-1, 0, 0, -1]);
        assert_eq!(g.length(w0), 4);
    }

    #[test]
    fn cosets() {
        let (_, g) = group(Family::A, 2, LatticeSpec::Root);
        assert_eq!(g.coset_representatives(Subset::from_indices(&[0])).len(), 3);
        assert_eq!(g.coset_representatives(Subset::full(2)), vec![0]);
        let (_, g) = group(Family::B, 3, LatticeSpec::Weight);
        for bits in 0..8 {
            let p = Subset::from_bits(bits);
            assert_eq!(
                g.coset_representatives(p).len() * g.parabolic_subgroup(p).len(),
                48
            );
        }
    }

    #[test]
    fn torus_action_a1() {
        let (_, g) = group(Family::A, 1, LatticeSpec::Root);
        let t = TorusPoint::new(vec![RationalRotation::HALF]);
        let s = g.simple_reflection(0);
        assert_eq!(g.act_on_torus(s, &t), t);
        let t = TorusPoint::new(vec![RationalRotation::new(1, 3).unwrap()]);
        assert_eq!(g.act_on_torus(s, &t), t.inverse());
    }

    #[test]
    fn y_action_matches_coroots() {
        let (rd, g) = group(Family::C, 3, LatticeSpec::Root);
        for w in g.elements() {
            for r in 0..rd.num_roots() {
                let img = g.act_on_root(w, r);
                assert_eq!(g.act_on_y(w, rd.coroot(r)), rd.coroot(img));
                assert_eq!(g.act_on_x(w, rd.root(r)), rd.root(img));
            }
        }
    }
}
