//! Cartan–Killing type of a Cartan matrix.

/// Names the type of a Cartan matrix `a[i][j] = <alpha_j, alpha_i^vee>`,
/// components joined by `x` in order of their smallest node. The empty
/// matrix is named `"0"`.
///
/// For a rank-two double bond the label is chosen by the last node: a short
/// last node gives `B2`, a long one `C2`.
pub fn classify_cartan(a: &[Vec<i64>]) -> String {
    let n = a.len();
    if n == 0 {
        return "0".into();
    }
    let mut comp = vec![usize::MAX; n];
    let mut names = vec![];
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut nodes = vec![start];
        comp[start] = start;
        let mut k = 0;
        while k < nodes.len() {
            let v = nodes[k];
            for w in 0..n {
                if w != v && a[v][w] != 0 && comp[w] == usize::MAX {
                    comp[w] = start;
                    nodes.push(w);
                }
            }
            k += 1;
        }
        nodes.sort_unstable();
        names.push(component_name(a, &nodes));
    }
    names.join("x")
}

fn component_name(a: &[Vec<i64>], nodes: &[usize]) -> String {
    let n = nodes.len();
    let bond = |i: usize, j: usize| a[i][j] * a[j][i];
    let degree = |i: usize| nodes.iter().filter(|&&j| j != i && a[i][j] != 0).count();
    let edges: Vec<(usize, usize)> = nodes
        .iter()
        .flat_map(|&i| nodes.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i < j && a[i][j] != 0)
        .collect();
    if n == 1 {
        return "A1".into();
    }
    if edges.len() != n - 1 {
        return format!("?{n}");
    }
    let multi: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(i, j)| bond(i, j) > 1)
        .collect();
    // `i` is short relative to `j` when |<alpha_j, alpha_i^vee>| > 1.
    let is_short_vs = |i: usize, j: usize| a[i][j].abs() > 1;
    match multi.as_slice() {
        [] => {
            let branch: Vec<usize> = nodes.iter().copied().filter(|&i| degree(i) == 3).collect();
            match branch.as_slice() {
                [] => format!("A{n}"),
                [b] => {
                    let mut arms: Vec<usize> = nodes
                        .iter()
                        .filter(|&&j| j != *b && a[*b][j] != 0)
                        .map(|&j| arm_length(a, nodes, *b, j))
                        .collect();
                    arms.sort_unstable();
                    match arms.as_slice() {
                        [1, 1, _] => format!("D{n}"),
                        [1, 2, 2] => "E6".into(),
                        [1, 2, 3] => "E7".into(),
                        [1, 2, 4] => "E8".into(),
                        _ => format!("?{n}"),
                    }
                }
                _ => format!("?{n}"),
            }
        }
        [(i, j)] => match bond(*i, *j) {
            3 if n == 2 => "G2".into(),
            2 => {
                if n == 2 {
                    let last = *j;
                    let other = *i;
                    return if is_short_vs(last, other) {
                        "B2".into()
                    } else {
                        "C2".into()
                    };
                }
                // End node adjacent to the double bond, if the bond is terminal.
                let (end, inner) = if degree(*j) == 1 {
                    (*j, *i)
                } else if degree(*i) == 1 {
                    (*i, *j)
                } else {
                    return if n == 4 { "F4".into() } else { format!("?{n}") };
                };
                if is_short_vs(end, inner) {
                    format!("B{n}")
                } else {
                    format!("C{n}")
                }
            }
            _ => format!("?{n}"),
        },
        _ => format!("?{n}"),
    }
}

/// Number of nodes on the arm starting at `first` away from `center`.
fn arm_length(a: &[Vec<i64>], nodes: &[usize], center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        let next: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&j| j != cur && j != prev && a[cur][j] != 0)
            .collect();
        match next.as_slice() {
            [nx] => {
                prev = cur;
                cur = *nx;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_names() {
        let b3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]];
        assert_eq!(classify_cartan(&b3), "B3");
        let c3 = vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        assert_eq!(classify_cartan(&c3), "C3");
        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        assert_eq!(classify_cartan(&d4), "D4");
        assert_eq!(classify_cartan(&[vec![2, 0], vec![0, 2]]), "A1xA1");
        assert_eq!(classify_cartan(&[vec![2, -1], vec![-3, 2]]), "G2");
        assert_eq!(classify_cartan(&[]), "0");
    }
}
