//! The possibly non-reduced system `R_nr` and its reduced subsystem `R_1`.

use super::{classify_cartan, pairing, RootDatum};

/// An element of `R_nr`: either a root of `R_0` or the double `2 alpha` of a
/// root whose coroot lies in `2Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NrRoot {
    pub vector: Vec<i64>,
    /// Coroot of this element (`alpha^vee / 2` for a doubled root).
    pub coroot: Vec<i64>,
    /// Index in `R_0` of `alpha` (for `2 alpha`, of `alpha`).
    pub base: usize,
    pub doubled: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonReducedData {
    /// `R_0` in root order, then the doubled roots in order of their base.
    pub roots: Vec<NrRoot>,
    /// For each root of `R_0`, the index of its double in `roots`, if any.
    pub double_of: Vec<Option<usize>>,
    /// Indices into `roots` of `R_1 = {alpha in R_nr : 2 alpha not in R_nr}`.
    pub r1: Vec<usize>,
    /// Indices into `roots` of the simple system `F_1` (in `F_0` order).
    pub f1: Vec<usize>,
    /// Type of `R_1`.
    pub r1_type: String,
}

impl NonReducedData {
    pub(super) fn compute(rd: &RootDatum) -> Self {
        let mut roots: Vec<NrRoot> = (0..rd.num_roots())
            .map(|i| NrRoot {
                vector: rd.root(i).to_vec(),
                coroot: rd.coroot(i).to_vec(),
                base: i,
                doubled: false,
            })
            .collect();
        let mut double_of = vec![None; rd.num_roots()];
        for (i, slot) in double_of.iter_mut().enumerate() {
            let c = rd.coroot(i);
            if c.iter().all(|x| x % 2 == 0) {
                *slot = Some(roots.len());
                roots.push(NrRoot {
                    vector: rd.root(i).iter().map(|x| 2 * x).collect(),
                    coroot: c.iter().map(|x| x / 2).collect(),
                    base: i,
                    doubled: true,
                });
            }
        }
        let r1: Vec<usize> = (0..roots.len())
            .filter(|&k| roots[k].doubled || double_of[roots[k].base].is_none())
            .collect();
        let f1: Vec<usize> = (0..rd.semisimple_rank())
            .map(|i| double_of[i].unwrap_or(i))
            .collect();
        let cartan: Vec<Vec<i64>> = f1
            .iter()
            .map(|&i| {
                f1.iter()
                    .map(|&j| pairing(&roots[j].vector, &roots[i].coroot))
                    .collect()
            })
            .collect();
        NonReducedData {
            r1_type: classify_cartan(&cartan),
            roots,
            double_of,
            r1,
            f1,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Whether `R_nr` differs from `R_0`.
    pub fn has_doubled_roots(&self) -> bool {
        self.double_of.iter().any(Option::is_some)
    }
}
