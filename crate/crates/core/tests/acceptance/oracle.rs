//! Brute-force reference computations used to check the library.

use hecke_rgroup::cocycle::{FiniteGroup, TwoCocycle};

/// Prime-power factors of `n`.
pub fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Elementary divisors (prime powers) of `∏ Z/d`, sorted.
pub fn elementary_divisors(ds: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = ds
        .iter()
        .flat_map(|&d| prime_powers(d).into_iter().map(|(p, k)| p.pow(k)))
        .collect();
    out.sort_unstable();
    out
}

/// Invariant factors of `Z^cols / ⟨rows⟩` by unimodular row and column
/// operations; `0` marks a free summand. Small matrices only.
pub fn invariant_factors(rows: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let mut out = vec![];
    let mut r0 = 0;
    for c0 in 0..cols {
        loop {
            // Smallest nonzero entry of the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(r0) {
                for (j, &v) in row.iter().enumerate().skip(c0) {
                    if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                out.extend(std::iter::repeat_n(0, cols - c0));
                return out;
            };
            a.swap(r0, bi);
            for row in a.iter_mut() {
                row.swap(c0, bj);
            }
            let piv = a[r0][c0];
            let mut clean = true;
            for i in r0 + 1..a.len() {
                let f = a[i][c0] / piv;
                for j in c0..cols {
                    let x = a[r0][j];
                    a[i][j] -= f * x;
                }
                clean &= a[i][c0] == 0;
            }
            for j in c0 + 1..cols {
                let f = a[r0][j] / piv;
                for row in a.iter_mut() {
                    let x = row[c0];
                    row[j] -= f * x;
                }
                clean &= a[r0][j] == 0;
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block.
            let bad = (r0 + 1..a.len()).find(|&i| (c0 + 1..cols).any(|j| a[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in c0..cols {
                        let x = a[i][j];
                        a[r0][j] += x;
                    }
                }
                None => {
                    out.push(piv.abs());
                    r0 += 1;
                    break;
                }
            }
        }
    }
    out
}

/// Number of solutions in `(Z/p^k)^cols` of `A x = 0`.
fn count_solutions_prime_power(rows: &[Vec<i64>], cols: usize, p: i64, k: u32) -> u128 {
    let m = p.pow(k);
    let val = |x: i64| -> u32 {
        if x % m == 0 {
            return k;
        }
        let mut x = x;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let inv = |x: i64| -> i64 {
        // x is a unit mod m.
        (1..m).find(|y| (x * y).rem_euclid(m) == 1).expect("unit")
    };
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(m)).collect())
        .collect();
    let mut count: u128 = 1;
    let mut used = 0;
    let mut r0 = 0;
    let mut free_cols: Vec<bool> = vec![true; cols];
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(r0) {
            for (j, &x) in row.iter().enumerate() {
                if free_cols[j] && x != 0 {
                    let v = val(x);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, bi, bj)) = best else { break };
        a.swap(r0, bi);
        let unit = inv(a[r0][bj] / p.pow(v));
        for x in a[r0].iter_mut() {
            *x = (*x * unit).rem_euclid(m);
        }
        // a[r0][bj] = p^v divides every entry in the free block.
        for i in 0..a.len() {
            if i != r0 && a[i][bj] != 0 {
                let f = a[i][bj] / p.pow(v);
                for j in 0..cols {
                    let x = a[r0][j];
                    a[i][j] = (a[i][j] - f * x).rem_euclid(m);
                }
            }
        }
        free_cols[bj] = false;
        count *= p.pow(v) as u128;
        used += 1;
        r0 += 1;
    }
    count * (m as u128).pow((cols - used) as u32)
}

/// `|Z²(G, Z/N)|` over normalized cochains, from the cocycle identity as a
/// linear system over each `Z/p^k` dividing `N`.
pub fn count_cocycles(g: &FiniteGroup, n: u64) -> u128 {
    let ord = g.order();
    let e = g.identity();
    let cells: Vec<usize> = (0..ord).filter(|&x| x != e).collect();
    let pos = |a: usize, b: usize| -> Option<usize> {
        let i = cells.iter().position(|&x| x == a)?;
        let j = cells.iter().position(|&x| x == b)?;
        Some(i * cells.len() + j)
    };
    let vars = cells.len() * cells.len();
    let mut rows: Vec<Vec<i64>> = vec![];
    for &x in &cells {
        for &y in &cells {
            for &z in &cells {
                let mut row = vec![0i64; vars];
                let mut put = |a: usize, b: usize, s: i64| {
                    if let Some(k) = pos(a, b) {
                        row[k] += s;
                    }
                };
                put(y, z, 1);
                put(g.mul(x, y), z, -1);
                put(x, g.mul(y, z), 1);
                put(x, y, -1);
                if row.iter().any(|&v| v != 0) && !rows.contains(&row) {
                    rows.push(row);
                }
            }
        }
    }
    prime_powers(n)
        .into_iter()
        .map(|(p, k)| count_solutions_prime_power(&rows, vars, p as i64, k))
        .product()
}

/// Order of the image of `H²(G, Z/N)` in `H²(G, C^×)`, which is
/// `|Z²(G, Z/N)| / N^{|G| - 1}` on normalized cochains: the coboundaries
/// have order `N^{|G|-1} / |Hom(G, Z/N)|`, and the kernel of the map to
/// `C^×` coefficients is `Hom(G, C^×) / N-th powers`, of order `|Hom(G, Z/N)|`.
pub fn h2_image_order(g: &FiniteGroup, n: u64) -> u128 {
    let z2 = count_cocycles(g, n);
    let b = (n as u128).pow(g.order() as u32 - 1);
    assert_eq!(z2 % b, 0, "cocycle count {z2} not divisible by {b}");
    z2 / b
}

pub fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    classes(g).len()
}

fn classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = vec![];
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class = vec![];
        for h in 0..n {
            let y = g.mul(g.mul(h, x), g.inverse(h));
            if !seen[y] {
                seen[y] = true;
                class.push(y);
            }
        }
        out.push(class);
    }
    out
}

/// Classes of `x` with `c(x, h) = c(h, x)` for all `h` commuting with `x`.
pub fn regular_class_count(g: &FiniteGroup, c: &TwoCocycle) -> usize {
    classes(g)
        .iter()
        .filter(|class| {
            let x = class[0];
            (0..g.order())
                .filter(|&h| g.mul(x, h) == g.mul(h, x))
                .all(|h| c.value(x, h) == c.value(h, x))
        })
        .count()
}

/// `[Z²]` is trivial in `H²(G, C^×)` iff every class is regular.
pub fn trivial_in_cx(g: &FiniteGroup, c: &TwoCocycle) -> bool {
    regular_class_count(g, c) == conjugacy_class_count(g)
}

/// For abelian `G`: `[c]` is trivial iff `c` is symmetric.
pub fn symmetric(g: &FiniteGroup, c: &TwoCocycle) -> bool {
    (0..g.order()).all(|a| (0..g.order()).all(|b| c.value(a, b) == c.value(b, a)))
}

/// The subgroup generated by `gens`, by closure.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut out = vec![g.identity()];
    let mut k = 0;
    while k < out.len() {
        for &s in gens {
            let x = g.mul(out[k], s);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}
