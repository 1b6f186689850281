//! Chambers of `a^P` cut out by the walls of `R^P`, enumerated independently
//! of the group, and the comparison with the groupoid action.

use std::collections::{HashMap, VecDeque};

use super::fm::strict_cone_witness;
use super::WeylGroupoid;
use crate::error::{Error, Result};
use crate::intlin::rational::{self, Rat};
use crate::subset::Subset;

/// Limit on the number of chambers enumerated in one `a^P`.
pub const MAX_CHAMBERS: usize = 200_000;

/// A connected component of the complement of the walls in `a^P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub p: Subset,
    /// Sign over each wall of `R^P_+` (`true` for positive).
    pub signs: Vec<bool>,
    /// Interior point in the coordinates of the basis of `Y ∩ a^P`.
    pub witness: Vec<Rat>,
    /// Number of separating walls from the positive chamber.
    pub height: usize,
    /// Gallery distance from the positive chamber, found by breadth-first
    /// search over chamber adjacency.
    pub distance: usize,
}

/// Outcome of comparing the chambers of every `a^Q` with the images
/// `u(a^{R,+})`, `u ∈ 𝔚_{R,Q}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChamberCheck {
    pub chambers: usize,
    pub arrows: usize,
    /// No chamber is the image of two different arrows.
    pub free: bool,
    /// Every chamber is the image of some positive chamber.
    pub transitive: bool,
    /// Height equals gallery distance for every chamber.
    pub heights_are_distances: bool,
    pub failures: Vec<String>,
}

impl ChamberCheck {
    pub fn passed(&self) -> bool {
        self.free && self.transitive && self.heights_are_distances
    }
}

impl WeylGroupoid {
    /// All chambers of `a^P`, in breadth-first order from the positive one.
    pub fn chambers(&self, p: Subset) -> Result<Vec<Chamber>> {
        let rr = self.restricted_roots(p)?;
        let dim = rr.dim();
        let walls: Vec<Vec<Rat>> = rr
            .positive()
            .iter()
            .map(|r| rational::to_rat_vec(&r.vector))
            .collect();
        let rows = |signs: &[bool]| -> Vec<Vec<Rat>> {
            walls
                .iter()
                .zip(signs)
                .map(|(w, &s)| {
                    if s {
                        w.clone()
                    } else {
                        w.iter().map(|x| -x).collect()
                    }
                })
                .collect()
        };
        let start = vec![true; walls.len()];
        let witness = strict_cone_witness(&rows(&start), dim)?
            .ok_or_else(|| Error::Inconsistent(format!("positive chamber of a^{p} is empty")))?;
        let mut out = vec![Chamber {
            p,
            signs: start.clone(),
            witness,
            height: 0,
            distance: 0,
        }];
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for i in 0..walls.len() {
                let mut s = out[c].signs.clone();
                s[i] = !s[i];
                if seen.contains_key(&s) {
                    continue;
                }
                if let Some(witness) = strict_cone_witness(&rows(&s), dim)? {
                    if out.len() >= MAX_CHAMBERS {
                        return Err(Error::GuardExceeded(format!(
                            "more than {MAX_CHAMBERS} chambers in a^{p}"
                        )));
                    }
                    let height = s.iter().filter(|x| !**x).count();
                    let distance = out[c].distance + 1;
                    seen.insert(s.clone(), out.len());
                    queue.push_back(out.len());
                    out.push(Chamber {
                        p,
                        signs: s,
                        witness,
                        height,
                        distance,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Checks, for every `Q`, that `(R, u) ↦ u(a^{R,+})` is a bijection from
    /// the arrows into `Q` onto the chambers of `a^Q`, and that heights equal
    /// gallery distances.
    pub fn check_chamber_action(&self) -> Result<ChamberCheck> {
        let mut report = ChamberCheck {
            free: true,
            transitive: true,
            heights_are_distances: true,
            ..Default::default()
        };
        let mut into: Vec<Vec<super::GroupoidArrow>> = vec![vec![]; 1 << self.rd.semisimple_rank()];
        for r in self.objects() {
            for a in self.arrows_from(r) {
                into[a.target.bits() as usize].push(a);
            }
        }
        for q in self.objects() {
            let chambers = self.chambers(q)?;
            report.chambers += chambers.len();
            let index: HashMap<&[bool], usize> = chambers
                .iter()
                .enumerate()
                .map(|(k, c)| (c.signs.as_slice(), k))
                .collect();
            let mut hits = vec![0usize; chambers.len()];
            for a in &into[q.bits() as usize] {
                report.arrows += 1;
                let s = self.chamber_signs(a)?;
                match index.get(s.as_slice()) {
                    Some(&k) => hits[k] += 1,
                    None => {
                        report.free = false;
                        report
                            .failures
                            .push(format!("image of {a:?} is not a chamber of a^{q}"));
                    }
                }
            }
            for (k, c) in chambers.iter().enumerate() {
                if hits[k] > 1 {
                    report.free = false;
                    report.failures.push(format!(
                        "chamber {:?} of a^{q} is the image of {} arrows",
                        c.signs, hits[k]
                    ));
                }
                if hits[k] == 0 {
                    report.transitive = false;
                    report.failures.push(format!(
                        "chamber {:?} of a^{q} is not in any orbit",
                        c.signs
                    ));
                }
                if c.height != c.distance {
                    report.heights_are_distances = false;
                    report.failures.push(format!(
                        "chamber {:?} of a^{q}: height {} but distance {}",
                        c.signs, c.height, c.distance
                    ));
                }
            }
        }
        Ok(report)
    }
}
