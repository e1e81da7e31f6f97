use serde::{Deserialize, Serialize};

use super::{Cycle, Graph, GraphError, Vertex};

/// A cycle together with a set of its chords, each stored as `(min, max)`
/// and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordedCycle {
    pub cycle: Cycle,
    pub chords: Vec<(Vertex, Vertex)>,
}

impl ChordedCycle {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.cycle.vertices()
    }

    /// Checks every structural invariant against the host graph.
    pub fn verify(&self, g: &Graph) -> Result<(), GraphError> {
        let cycle = Cycle::new(g, self.cycle.vertices().to_vec())?;
        let pos = positions(g.n(), &cycle);
        let k = cycle.len();
        for w in self.chords.windows(2) {
            if w[0] >= w[1] {
                return Err(GraphError::InvalidChords("chords not sorted or repeated".into()));
            }
        }
        for &(a, b) in &self.chords {
            if a >= b {
                return Err(GraphError::InvalidChords(format!("chord ({a},{b}) not normalised")));
            }
            let (Some(pa), Some(pb)) = (pos_of(&pos, a), pos_of(&pos, b)) else {
                return Err(GraphError::InvalidChords(format!("chord ({a},{b}) leaves the cycle")));
            };
            let gap = pa.abs_diff(pb);
            if gap == 1 || gap == k - 1 {
                return Err(GraphError::InvalidChords(format!("({a},{b}) is a cycle edge")));
            }
            if !g.has_edge(a, b) {
                return Err(GraphError::InvalidChords(format!("({a},{b}) is not an edge")));
            }
        }
        Ok(())
    }

    /// Relabels through `f`, re-normalising chord orientation and order.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> ChordedCycle {
        let cycle = self.cycle.map(&f);
        let mut chords: Vec<_> = self
            .chords
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (f(a), f(b));
                (x.min(y), x.max(y))
            })
            .collect();
        chords.sort_unstable();
        ChordedCycle { cycle, chords }
    }
}

fn positions(n: usize, cycle: &Cycle) -> Vec<u32> {
    let mut pos = vec![u32::MAX; n];
    for (i, &v) in cycle.vertices().iter().enumerate() {
        pos[v] = i as u32;
    }
    pos
}

#[inline]
fn pos_of(pos: &[u32], v: Vertex) -> Option<usize> {
    pos.get(v).copied().filter(|&p| p != u32::MAX).map(|p| p as usize)
}

/// All edges of `g` joining two non-consecutive vertices of `c`.
pub fn chords_of(g: &Graph, c: &Cycle) -> Result<ChordedCycle, GraphError> {
    let cycle = Cycle::new(g, c.vertices().to_vec())?;
    let pos = positions(g.n(), &cycle);
    let k = cycle.len();
    let mut chords = Vec::new();
    for (i, &v) in cycle.vertices().iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(j) = pos_of(&pos, w) {
                if j > i && j != i + 1 && !(i == 0 && j == k - 1) {
                    chords.push((v.min(w), v.max(w)));
                }
            }
        }
    }
    chords.sort_unstable();
    Ok(ChordedCycle { cycle, chords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, petersen};

    #[test]
    fn hamilton_cycle_of_k5() {
        let g = complete(5);
        let cc = chords_of(&g, &Cycle::new(&g, vec![0, 1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(cc.chord_count(), 5);
        cc.verify(&g).unwrap();
    }

    #[test]
    fn triangle_has_no_chords() {
        let g = complete(6);
        let cc = chords_of(&g, &Cycle::new(&g, vec![3, 1, 5]).unwrap()).unwrap();
        assert_eq!(cc.chord_count(), 0);
    }

    #[test]
    fn petersen_nine_cycles_have_three_chords() {
        let g = petersen();
        let nines: Vec<_> = crate::oracle::enumerate_cycles(&g)
            .into_iter()
            .filter(|c| c.len() == 9)
            .collect();
        assert!(!nines.is_empty());
        for c in nines {
            let cc = chords_of(&g, &Cycle::new(&g, c).unwrap()).unwrap();
            assert_eq!(cc.chord_count(), 3);
        }
    }

    #[test]
    fn not_a_cycle_is_rejected() {
        let g = complete(4);
        let bogus = Cycle::new_unchecked(vec![0, 1]);
        assert!(chords_of(&g, &bogus).is_err());
    }

    #[test]
    fn verify_rejects_bad_chords() {
        let g = complete(5);
        let cycle = Cycle::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        let mut cc = chords_of(&g, &cycle).unwrap();
        cc.chords.push((0, 1));
        cc.chords.sort();
        assert!(cc.verify(&g).is_err());
        let mut cc = chords_of(&g, &cycle).unwrap();
        cc.chords.retain(|&c| c != (0, 2));
        cc.verify(&g).unwrap();
    }
}
