use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use super::{ArcId, LinkDiagram};

/// Faces of the rotation system given by the counterclockwise slot order.
///
/// Each face is listed as the cyclic sequence of `(crossing, slot)` corners
/// it visits. Free loops are not part of the rotation system.
pub fn faces(d: &LinkDiagram) -> Vec<Vec<(usize, usize)>> {
    let mut ends: BTreeMap<ArcId, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (p, a) in x.arcs.iter().enumerate() {
            ends.entry(*a).or_default().push((c, p));
        }
    }
    let other = |c: usize, p: usize| -> (usize, usize) {
        let e = &ends[&d.crossings()[c].arcs[p]];
        if e[0] == (c, p) {
            e[1]
        } else {
            e[0]
        }
    };
    let n = d.crossing_count();
    let mut seen = vec![[false; 4]; n];
    let mut out = Vec::new();
    for c in 0..n {
        for p in 0..4 {
            if seen[c][p] {
                continue;
            }
            let mut face = Vec::new();
            let (mut cc, mut pp) = (c, p);
            while !seen[cc][pp] {
                seen[cc][pp] = true;
                face.push((cc, pp));
                let (c2, p2) = other(cc, pp);
                cc = c2;
                pp = (p2 + 1) % 4;
            }
            out.push(face);
        }
    }
    out
}

/// Whether every connected piece of the crossing graph embeds in the sphere
/// with the recorded cyclic orders (`V - E + F = 2` per piece).
pub fn is_planar(d: &LinkDiagram) -> bool {
    let n = d.crossing_count();
    if n == 0 {
        return true;
    }
    let mut owner: BTreeMap<ArcId, usize> = BTreeMap::new();
    let mut uf = UnionFind::<usize>::new(n);
    for (c, x) in d.crossings().iter().enumerate() {
        for a in x.arcs {
            if let Some(&c0) = owner.get(&a) {
                uf.union(c0, c);
            } else {
                owner.insert(a, c);
            }
        }
    }
    let pieces = (0..n).filter(|&c| uf.find(c) == c).count() as i64;
    let f = faces(d).len() as i64;
    // V - E + F with E = 2V, summed over pieces
    f - n as i64 == 2 * pieces
}
