//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use crate::error::{Error, Result};

/// Limit on the order of groups built by closure.
pub const MAX_GROUP_ORDER: usize = 4096;

/// A finite group with elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates the table (closure, identity, inverses, associativity).
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::GuardExceeded(format!(
                "group order {n} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidInput("table is not square over 0..n".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| flat[a * n + b] == identity && flat[b * n + a] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::InvalidInput(format!(
                            "multiplication is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(Error::InvalidInput(format!(
                    "{} names for {n} elements",
                    v.len()
                )))
            }
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Ok(FiniteGroup {
            n,
            table: flat,
            inverse,
            identity,
            names,
        })
    }

    /// The group generated by `gens` inside a group with multiplication
    /// `mul`. Element `0` is the identity; names are shortest words in the
    /// generator names.
    pub fn generated<T, F>(identity: T, gens: &[(&str, T)], mul: F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut names = vec!["e".to_string()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for (name, g) in gens {
                let x = mul(&elems[k], g);
                if !index.contains_key(&x) {
                    if elems.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GuardExceeded(format!(
                            "group order exceeds {MAX_GROUP_ORDER}"
                        )));
                    }
                    index.insert(x.clone(), elems.len());
                    let word = if k == 0 {
                        name.to_string()
                    } else {
                        format!("{}{}", names[k], name)
                    };
                    names.push(word);
                    elems.push(x);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elems[a], &elems[b])];
            }
        }
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a * n + b] == 0)
                    .expect("finite group")
            })
            .collect();
        Ok(FiniteGroup {
            n,
            table,
            inverse,
            identity: 0,
            names,
        })
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        Self::generated(0usize, &[("g", 1 % m)], |a, b| (a + b) % m)
    }

    /// `⟨ω⟩ × ⟨κ⟩ ≅ C_2 × C_2`.
    pub fn klein() -> Self {
        Self::generated((0u8, 0u8), &[("ω", (1, 0)), ("κ", (0, 1))], |a, b| {
            (a.0 ^ b.0, a.1 ^ b.1)
        })
        .expect("four elements")
    }

    /// The dihedral group of order 8 generated by involutions `ω̃, κ̃` with
    /// `ω̃ κ̃ ω̃ = η κ̃`, `η` central of order 2. Realized by signed
    /// permutation matrices of size 2.
    pub fn dihedral8() -> Self {
        type M = [i8; 4];
        let mul = |a: &M, b: &M| -> M {
            [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ]
        };
        Self::generated(
            [1, 0, 0, 1],
            &[("ω̃", [1, 0, 0, -1]), ("κ̃", [0, 1, 1, 0])],
            mul,
        )
        .expect("eight elements")
    }

    /// Signed permutations of `n` coordinates, `W_0(B_n)`.
    pub fn hyperoctahedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Self::cyclic(1);
        }
        let id: Vec<i32> = (1..=n as i32).collect();
        let mut gens: Vec<(String, Vec<i32>)> = vec![];
        for i in 0..n - 1 {
            let mut s = id.clone();
            s.swap(i, i + 1);
            gens.push((format!("s{}", i + 1), s));
        }
        let mut t = id.clone();
        t[n - 1] = -t[n - 1];
        gens.push((format!("s{n}"), t));
        let named: Vec<(&str, Vec<i32>)> =
            gens.iter().map(|(a, b)| (a.as_str(), b.clone())).collect();
        Self::generated(id, &named, |a, b| {
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
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.n * b.n;
        let idx = |x: usize, y: usize| x * b.n + y;
        let mut table = vec![0; n * n];
        let mut inverse = vec![0; n];
        let mut names = vec![String::new(); n];
        for x in 0..a.n {
            for y in 0..b.n {
                let i = idx(x, y);
                inverse[i] = idx(a.inverse[x], b.inverse[y]);
                names[i] = format!("({},{})", a.names[x], b.names[y]);
                for u in 0..a.n {
                    for v in 0..b.n {
                        table[i * n + idx(u, v)] = idx(a.mul(x, u), b.mul(y, v));
                    }
                }
            }
        }
        FiniteGroup {
            n,
            table,
            inverse,
            identity: idx(a.identity, b.identity),
            names,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inverse(x))
    }

    /// Conjugacy classes, each sorted, in order of their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = vec![];
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.n).map(|x| self.conjugate(x, g)).collect();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.n).filter(|&h| self.commute(g, h)).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&g| (0..self.n).all(|h| self.commute(g, h)))
            .collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut elems = vec![self.identity];
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut k = 0;
        while k < elems.len() {
            for &g in gens {
                let x = self.mul(elems[k], g);
                if !seen[x] {
                    seen[x] = true;
                    elems.push(x);
                }
            }
            k += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| a < self.n)
            && set.iter().all(|&a| {
                set.contains(&self.inverse(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let comms: BTreeSet<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inverse(a), self.inverse(b))))
            .collect();
        self.closure(&comms.into_iter().collect::<Vec<_>>())
    }

    /// A generating set chosen greedily in element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = vec![];
        let mut span = vec![self.identity];
        for g in 0..self.n {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure(&gens);
                if span.len() == self.n {
                    break;
                }
            }
        }
        gens
    }

    /// The subgroup on `elems` (identity first, then in the given order) and
    /// its embedding into `self`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elems) {
            return Err(Error::InvalidInput(
                "elements do not form a subgroup".into(),
            ));
        }
        let mut emb = vec![self.identity];
        emb.extend(
            elems
                .iter()
                .copied()
                .filter(|&x| x != self.identity)
                .collect::<BTreeSet<_>>(),
        );
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = emb.len();
        let mut table = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = pos[&self.mul(emb[i], emb[j])];
            }
        }
        let inverse = emb.iter().map(|&x| pos[&self.inverse(x)]).collect();
        let names = emb.iter().map(|&x| self.names[x].clone()).collect();
        Ok((
            FiniteGroup {
                n: m,
                table,
                inverse,
                identity: 0,
                names,
            },
            emb,
        ))
    }
}

/// Checks that `f: g -> q` (as a table of images) is a homomorphism.
pub fn check_homomorphism(g: &FiniteGroup, q: &FiniteGroup, f: &[usize]) -> Result<()> {
    if f.len() != g.order() || f.iter().any(|&x| x >= q.order()) {
        return Err(Error::InvalidInput(
            "map does not have the right shape".into(),
        ));
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if f[g.mul(a, b)] != q.mul(f[a], f[b]) {
                return Err(Error::InvalidInput(format!(
                    "not a homomorphism at ({}, {})",
                    g.name(a),
                    g.name(b)
                )));
            }
        }
    }
    Ok(())
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism, or returns `None` when
/// the assignment is inconsistent. `gens` must generate `g`.
pub fn extend_homomorphism(
    g: &FiniteGroup,
    gens: &[usize],
    q: &FiniteGroup,
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut f = vec![usize::MAX; g.order()];
    f[g.identity()] = q.identity();
    let mut queue = vec![g.identity()];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        for (&s, &fs) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = q.mul(f[x], fs);
            if f[y] == usize::MAX {
                f[y] = fy;
                queue.push(y);
            } else if f[y] != fy {
                return None;
            }
        }
        k += 1;
    }
    (queue.len() == g.order()).then_some(f)
}
