//! Irreducible representations of twisted group algebras `C^c[G]`.
//!
//! The irreducibles of `C^c[G]` are the irreducibles of the central extension
//! `G̃` on which the central generator acts by `exp(2πi/N)`. Their degrees
//! are read off the center of `F_p[G̃]` for a prime `p ≡ 1` modulo the
//! exponent of `G̃`, which splits `G̃`: the primitive central idempotents are
//! found by splitting with powers `a^{(p-1)/2}`, and an idempotent `e` has
//! degree `d` with `d² = |G̃| · e(1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cohomology::TwoCocycle;
use super::extension::CentralExtension;
use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// Limit on `|G|` for [`twisted_irreducibles`].
pub const MAX_TWISTED_ORDER: usize = 64;
/// Limit on `|G̃| = N |G|`.
pub const MAX_EXTENSION_ORDER: usize = 256;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The commutative algebra spanned by the class sums of a finite group over
/// `F_p`.
struct ClassAlgebra {
    p: u64,
    /// `mult[i][j]`: the nonzero coefficients `(k, a)` of `K_i K_j`.
    mult: Vec<Vec<Vec<(usize, u64)>>>,
    identity_class: usize,
    dim: usize,
}

impl ClassAlgebra {
    fn new(g: &FiniteGroup, classes: &[Vec<usize>], p: u64) -> Self {
        let r = classes.len();
        let mut class_of = vec![0; g.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let mut mult = vec![vec![vec![]; r]; r];
        let mut hits = vec![0u64; r];
        for i in 0..r {
            for j in 0..r {
                for &x in &classes[i] {
                    for &y in &classes[j] {
                        hits[class_of[g.mul(x, y)]] += 1;
                    }
                }
                // Each element of a class occurs equally often in the product.
                for (k, h) in hits.iter_mut().enumerate() {
                    if *h != 0 {
                        mult[i][j].push((k, (*h / classes[k].len() as u64) % p));
                        *h = 0;
                    }
                }
            }
        }
        ClassAlgebra {
            p,
            mult,
            identity_class: class_of[g.identity()],
            dim: r,
        }
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let mut out = vec![0u128; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let s = (ai as u128 * bj as u128) % p;
                for &(k, m) in &self.mult[i][j] {
                    out[k] = (out[k] + s * m as u128) % p;
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[self.identity_class] = 1;
        v
    }

    fn lin(&self, terms: &[(u64, &[u64])]) -> Vec<u64> {
        let p = self.p as u128;
        (0..self.dim)
            .map(|k| {
                terms
                    .iter()
                    .fold(0u128, |acc, (c, v)| (acc + *c as u128 * v[k] as u128) % p)
                    as u64
            })
            .collect()
    }

    /// Whether `e Z` is one-dimensional, i.e. every `e K_j` is a multiple of
    /// `e`.
    fn is_primitive(&self, e: &[u64]) -> bool {
        let piv = e.iter().position(|&x| x != 0).expect("nonzero idempotent");
        let inv = pow_mod(e[piv], self.p - 2, self.p);
        (0..self.dim).all(|j| {
            let mut basis = vec![0; self.dim];
            basis[j] = 1;
            let f = self.mul(e, &basis);
            let lambda = (f[piv] as u128 * inv as u128 % self.p as u128) as u64;
            f.iter()
                .zip(e)
                .all(|(&x, &y)| x as u128 == (lambda as u128 * y as u128) % self.p as u128)
        })
    }

    /// The primitive idempotents.
    fn primitive_idempotents(&self) -> Result<Vec<Vec<u64>>> {
        let p = self.p;
        let half = p.div_ceil(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut done = vec![];
        let mut todo = vec![self.one()];
        let mut attempts = 0;
        while let Some(e) = todo.pop() {
            if self.is_primitive(&e) {
                done.push(e);
                continue;
            }
            attempts += 1;
            if attempts > 10_000 {
                return Err(Error::Inconsistent(
                    "central idempotents did not split".into(),
                ));
            }
            let z: Vec<u64> = (0..self.dim).map(|_| rng.gen_range(0..p)).collect();
            let a = self.mul(&e, &z);
            let b = self.pow(&a, (p - 1) / 2);
            let b2 = self.mul(&b, &b);
            let plus = self.lin(&[(half, &b2), (half, &b)]);
            let minus = self.lin(&[(half, &b2), (p - half, &b)]);
            let zero = self.lin(&[(1, &e), (p - 1, &b2)]);
            let parts: Vec<Vec<u64>> = [plus, minus, zero]
                .into_iter()
                .filter(|v| v.iter().any(|&x| x != 0))
                .collect();
            if parts.len() == 1 {
                todo.push(e);
            } else {
                todo.extend(parts);
            }
        }
        Ok(done)
    }
}

/// A splitting prime `p ≡ 1 (mod exponent)` with `p > bound`, and an element
/// of multiplicative order `order` in `F_p`.
fn splitting_prime(exponent: u64, bound: u64, order: u64) -> (u64, u64) {
    let mut p = exponent + 1;
    while !(p > bound.max(2) && is_prime(p)) {
        p += exponent;
    }
    let factors = prime_factors(p - 1);
    let gen = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("F_p^× is cyclic");
    (p, pow_mod(gen, (p - 1) / order, p))
}

/// Degrees of the irreducibles of `F_p[G]` whose central character sends
/// `z` to `zeta`, for `z` central; all degrees when `z` is the identity.
fn degrees_with_central_value(g: &FiniteGroup, z: usize, order: u64) -> Result<Vec<usize>> {
    let n = g.order() as u64;
    let exponent = num_integer::lcm(g.exponent() as u64, order);
    let (p, zeta) = splitting_prime(exponent, n * n, order);
    let classes = g.conjugacy_classes();
    let alg = ClassAlgebra::new(g, &classes, p);
    let z_class = classes
        .iter()
        .position(|c| c == &vec![z])
        .ok_or_else(|| Error::InvalidInput("element is not central".into()))?;
    let mut z_vec = vec![0; alg.dim];
    z_vec[z_class] = 1;
    let mut degrees = vec![];
    for e in alg.primitive_idempotents()? {
        let ez = alg.mul(&e, &z_vec);
        let piv = e.iter().position(|&x| x != 0).expect("nonzero");
        if ez[piv] != (zeta as u128 * e[piv] as u128 % p as u128) as u64 {
            continue;
        }
        let d2 = (n as u128 * e[alg.identity_class] as u128 % p as u128) as u64;
        let d = (1..=n).find(|d| d * d == d2).ok_or_else(|| {
            Error::Inconsistent(format!("block of dimension {d2} is not a square"))
        })?;
        degrees.push(d as usize);
    }
    degrees.sort_unstable();
    Ok(degrees)
}

/// Degrees of the ordinary irreducible representations of `G`.
pub fn irreducible_degrees(g: &FiniteGroup) -> Result<Vec<usize>> {
    if g.order() > MAX_EXTENSION_ORDER {
        return Err(Error::GuardExceeded(format!(
            "|G| = {} exceeds {MAX_EXTENSION_ORDER}",
            g.order()
        )));
    }
    let d = degrees_with_central_value(g, g.identity(), 1)?;
    check_degrees(g.order(), &d)?;
    Ok(d)
}

fn check_degrees(order: usize, d: &[usize]) -> Result<()> {
    let s: usize = d.iter().map(|x| x * x).sum();
    if s != order {
        return Err(Error::Inconsistent(format!(
            "irreducible degrees {d:?} have squares summing to {s}, not {order}"
        )));
    }
    Ok(())
}

/// Degrees of the irreducible modules of the twisted group algebra
/// `C^c[G]`, sorted, with `Σ d² = |G|` checked.
pub fn twisted_irreducibles(g: &FiniteGroup, c: &TwoCocycle) -> Result<Vec<usize>> {
    if g.order() > MAX_TWISTED_ORDER {
        return Err(Error::GuardExceeded(format!(
            "|G| = {} exceeds {MAX_TWISTED_ORDER}",
            g.order()
        )));
    }
    if g.order() * c.modulus() as usize > MAX_EXTENSION_ORDER {
        return Err(Error::GuardExceeded(format!(
            "the central extension has order above {MAX_EXTENSION_ORDER}"
        )));
    }
    let ext = CentralExtension::from_cocycle(g, c)?;
    let d = degrees_with_central_value(&ext.group, ext.central_generator, c.modulus())?;
    check_degrees(g.order(), &d)?;
    Ok(d)
}

/// The conjugacy classes of `c`-regular elements: `g` with
/// `c(g, h) = c(h, g)` for every `h` commuting with `g`.
pub fn regular_classes(g: &FiniteGroup, c: &TwoCocycle) -> Vec<Vec<usize>> {
    g.conjugacy_classes()
        .into_iter()
        .filter(|class| {
            let x = class[0];
            g.centralizer(x)
                .iter()
                .all(|&h| c.value(x, h) == c.value(h, x))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::cohomology::klein_cocycle;

    #[test]
    fn ordinary_degrees() {
        assert_eq!(
            irreducible_degrees(&FiniteGroup::dihedral8()).unwrap(),
            vec![1, 1, 1, 1, 2]
        );
        assert_eq!(
            irreducible_degrees(&FiniteGroup::hyperoctahedral(3).unwrap()).unwrap(),
            vec![1, 1, 1, 1, 2, 2, 3, 3, 3, 3]
        );
        let s3 = FiniteGroup::generated(
            vec![0u8, 1, 2],
            &[("s", vec![1, 0, 2]), ("t", vec![0, 2, 1])],
            |a, b| b.iter().map(|&i| a[i as usize]).collect(),
        )
        .unwrap();
        assert_eq!(irreducible_degrees(&s3).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn klein_twisted() {
        let (g, c) = klein_cocycle(2).unwrap();
        assert_eq!(twisted_irreducibles(&g, &c).unwrap(), vec![2]);
        assert_eq!(regular_classes(&g, &c).len(), 1);
        let z = TwoCocycle::zero(&g, 2);
        assert_eq!(twisted_irreducibles(&g, &z).unwrap(), vec![1, 1, 1, 1]);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c = TwoCocycle::new(&c2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(twisted_irreducibles(&c2, &c).unwrap(), vec![1, 1]);
    }
}
