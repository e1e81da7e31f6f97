use super::interlace::InterlacedCycle;
use super::menger::two_disjoint_paths;
use super::CycleError;
use crate::graph::{chords_of, ChordedCycle, Cycle, Graph, Vertex};

/// Joins `c_prime` to the interlaced cycle by two disjoint paths and closes
/// through a route on the interlaced cycle (its arcs plus the interlacing
/// pair) chosen so that the result keeps a chord. At least half of
/// `c_prime` is kept.
pub fn extend_via_disjoint_paths(
    g: &Graph,
    ic: &InterlacedCycle,
    c_prime: &Cycle,
) -> Result<ChordedCycle, CycleError> {
    let n = g.n();
    let ic_vertices = ic.chorded.vertices();
    let mut on_ic = vec![false; n];
    for &v in ic_vertices {
        on_ic[v] = true;
    }
    if c_prime.vertices().iter().any(|&v| on_ic[v]) {
        return Err(CycleError::InvalidInput("cycles are not vertex-disjoint".into()));
    }
    let (q1, q2) = two_disjoint_paths(g, c_prime.vertices(), ic_vertices)?;
    let (p1, p2) = (q1.first(), q2.first());
    let (t1, t2) = (q1.last(), q2.last());

    let cp = c_prime.vertices();
    let k = cp.len();
    let i1 = cp.iter().position(|&v| v == p1).unwrap();
    let i2 = cp.iter().position(|&v| v == p2).unwrap();
    // Both arcs of c_prime from p1 to p2.
    let forward: Vec<Vertex> = (0..=(i2 + k - i1) % k).map(|s| cp[(i1 + s) % k]).collect();
    let backward: Vec<Vertex> = (0..=(i1 + k - i2) % k).map(|s| cp[(i1 + k - s) % k]).collect();
    let need = k.div_ceil(2);

    let routes = routes_on_ic(ic, t2, t1);
    let mut best: Option<ChordedCycle> = None;
    for arc in [&forward, &backward] {
        if arc.len() < need {
            continue;
        }
        for route in &routes {
            let mut seq: Vec<Vertex> = arc.clone();
            seq.extend(&q2.vertices()[1..]);
            seq.extend(&route[1..]);
            let back = q1.vertices();
            seq.extend(back[1..back.len() - 1].iter().rev());
            let Ok(cc) = chords_of(g, &Cycle::new_unchecked(seq)) else {
                continue;
            };
            if cc.chord_count() == 0 {
                continue;
            }
            let key = |c: &ChordedCycle| (c.chord_count(), c.len());
            if best.as_ref().is_none_or(|b| key(&cc) > key(b)) {
                best = Some(cc);
            }
        }
    }
    let out = best.ok_or(CycleError::NoChordedExtension)?;
    let kept = out.vertices().iter().filter(|v| cp.contains(v)).count();
    assert!(kept >= need, "extension kept {kept} of {k} vertices");
    assert!(out.chord_count() >= 1);
    Ok(out)
}

/// Simple paths from `from` to `to` in the interlaced cycle together with
/// its two interlacing chords.
fn routes_on_ic(ic: &InterlacedCycle, from: Vertex, to: Vertex) -> Vec<Vec<Vertex>> {
    let cyc = ic.chorded.vertices();
    let k = cyc.len();
    let local = |v: Vertex| cyc.iter().position(|&x| x == v).unwrap();
    let mut adj: Vec<Vec<usize>> = (0..k).map(|i| vec![(i + 1) % k, (i + k - 1) % k]).collect();
    for &(a, b) in &ic.pair {
        let (la, lb) = (local(a), local(b));
        adj[la].push(lb);
        adj[lb].push(la);
    }
    let (s, t) = (local(from), local(to));
    let mut out = Vec::new();
    let mut on = vec![false; k];
    let mut path = vec![s];
    on[s] = true;
    let mut iters = vec![0usize];
    while let Some(&u) = path.last() {
        if u == t {
            out.push(path.iter().map(|&i| cyc[i]).collect());
            on[u] = false;
            path.pop();
            iters.pop();
            continue;
        }
        let d = path.len() - 1;
        if iters[d] == adj[u].len() {
            on[u] = false;
            path.pop();
            iters.pop();
            continue;
        }
        let w = adj[u][iters[d]];
        iters[d] += 1;
        if !on[w] {
            on[w] = true;
            path.push(w);
            iters.push(0);
        }
    }
    out
}
