//! Diagonal form of an integer matrix modulo `m`, for cokernels of large
//! sparse relation matrices where only the torsion below `m` matters.

use super::IntLinError;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Replaces `(x, y)` by `(s x + t y, -(b/g) x + (a/g) y)` entrywise mod `m`,
/// where `g = s a + t b = gcd(a, b)`. The transform is unimodular.
fn combine(x: &mut [i64], y: &mut [i64], a: i64, b: i64, m: i64) {
    // Keep x untouched when a already divides b.
    let (g, s, t) = if a != 0 && b % a == 0 {
        (a as i128, 1, 0)
    } else {
        ext_gcd(a as i128, b as i128)
    };
    let (p, q) = (-(b as i128) / g, (a as i128) / g);
    let mm = m as i128;
    for (u, v) in x.iter_mut().zip(y.iter_mut()) {
        let (uu, vv) = (*u as i128, *v as i128);
        *u = ((s * uu + t * vv).rem_euclid(mm)) as i64;
        *v = ((p * uu + q * vv).rem_euclid(mm)) as i64;
    }
}

/// Row-reduces integer relations over `Z/m` one row at a time, keeping at
/// most one row per pivot column.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    m: i64,
    cols: usize,
    rows: Vec<Option<Vec<i64>>>,
}

impl ModEchelon {
    pub fn new(cols: usize, m: i64) -> Result<Self, IntLinError> {
        if m < 2 {
            return Err(IntLinError::InvalidArgument(format!(
                "modulus {m} is below 2"
            )));
        }
        Ok(ModEchelon {
            m,
            cols,
            rows: vec![None; cols],
        })
    }

    pub fn insert(&mut self, row: &[i64]) -> Result<(), IntLinError> {
        if row.len() != self.cols {
            return Err(IntLinError::DimensionMismatch(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        let mut r: Vec<i64> = row.iter().map(|x| x.rem_euclid(self.m)).collect();
        for j in 0..self.cols {
            if r[j] == 0 {
                continue;
            }
            match &mut self.rows[j] {
                None => {
                    self.rows[j] = Some(r);
                    return Ok(());
                }
                Some(b) => {
                    let (a, c) = (b[j], r[j]);
                    combine(b, &mut r, a, c, self.m);
                }
            }
        }
        Ok(())
    }

    /// `gcd(d_j, m)` for the diagonal entries `d_j` of a diagonal form of the
    /// inserted relations, one per column (`m` for a free column). The
    /// cokernel modulo `m` is the sum of the `Z/gcd(d_j, m)`.
    pub fn cokernel_moduli(&self) -> Vec<i64> {
        let n = self.cols;
        let m = self.m;
        let mut a: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.clone().unwrap_or_else(|| vec![0; n]))
            .collect();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            // Pivot: the entry of smallest gcd with m in the remaining block.
            let mut best: Option<(i64, usize, usize)> = None;
            'search: for (i, row) in a.iter().enumerate().skip(k) {
                for (j, &v) in row.iter().enumerate().skip(k) {
                    if v != 0 {
                        let g = gcd(v, m);
                        if best.is_none_or(|b| g < b.0) {
                            best = Some((g, i, j));
                            if g == 1 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                out.extend(std::iter::repeat_n(0, n - k));
                break;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            // Each pass either finishes or strictly decreases a[k][k].
            loop {
                for i in k + 1..n {
                    if a[i][k] != 0 {
                        let (x, y) = (a[k][k], a[i][k]);
                        let (head, tail) = a.split_at_mut(i);
                        combine(&mut head[k], &mut tail[0], x, y, m);
                    }
                }
                for j in k + 1..n {
                    if a[k][j] != 0 {
                        let (x, y) = (a[k][k], a[k][j]);
                        let mut ck: Vec<i64> = a.iter().map(|r| r[k]).collect();
                        let mut cj: Vec<i64> = a.iter().map(|r| r[j]).collect();
                        combine(&mut ck, &mut cj, x, y, m);
                        for (r, (u, v)) in a.iter_mut().zip(ck.into_iter().zip(cj)) {
                            r[k] = u;
                            r[j] = v;
                        }
                    }
                }
                if (k + 1..n).all(|i| a[i][k] == 0) {
                    break;
                }
            }
            out.push(gcd(a[k][k], m));
        }
        out.into_iter()
            .map(|g| if g == 0 { m } else { g })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cokernels() {
        // Z^2 / <(2, 0), (0, 3)> modulo 36.
        let mut e = ModEchelon::new(2, 36).unwrap();
        e.insert(&[2, 0]).unwrap();
        e.insert(&[0, 3]).unwrap();
        let mut v = e.cokernel_moduli();
        v.sort();
        assert_eq!(v, vec![2, 3]);
        // Z^3 / <(2, 4, 6), (1, 1, 1)>: one free column.
        let mut e = ModEchelon::new(3, 100).unwrap();
        e.insert(&[2, 4, 6]).unwrap();
        e.insert(&[1, 1, 1]).unwrap();
        let mut v = e.cokernel_moduli();
        v.sort();
        assert_eq!(v, vec![1, 2, 100]);
    }

    #[test]
    fn agrees_with_integer_smith_form() {
        use crate::intlin::{smith_normal_form, IntegerMatrix};
        let rows = vec![
            vec![4, 6, 2],
            vec![2, 8, 10],
            vec![6, 14, 12],
            vec![0, 2, 4],
        ];
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows).unwrap());
        let m = 10_000;
        let mut expected: Vec<i64> = (0..3)
            .map(|j| {
                if j < snf.rank() {
                    gcd(i64::try_from(&snf.s[(j, j)]).unwrap(), m)
                } else {
                    m
                }
            })
            .collect();
        let mut e = ModEchelon::new(3, m).unwrap();
        for r in &rows {
            e.insert(r).unwrap();
        }
        let mut got = e.cokernel_moduli();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }
}
