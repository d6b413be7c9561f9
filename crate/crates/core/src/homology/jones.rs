use std::collections::BTreeMap;

use super::LaurentPoly;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

pub const JONES_CAP: usize = 12;

/// Unnormalized Jones polynomial from the Kauffman bracket, with the unknot
/// worth `q + q^-1`.
///
/// Uses its own loop count (a walk over crossing corners) so it shares no
/// code with the cube of resolutions.
pub fn kauffman_jones(d: &LinkDiagram) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > JONES_CAP {
        return Err(Error::CapExceeded { crossings: n, cap: JONES_CAP });
    }
    let mut partner: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut seen: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (s, a) in x.arcs.iter().enumerate() {
            if let Some(other) = seen.remove(&a.0) {
                partner.insert(other, (c, s));
                partner.insert((c, s), other);
            } else {
                seen.insert(a.0, (c, s));
            }
        }
    }
    let mut choice = vec![false; n];
    let bracket = skein(0, &mut choice, &partner);
    let bracket = &bracket * &LaurentPoly::circle().pow(d.free_loop_count());
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(&bracket * &LaurentPoly::monomial(sign, np - 2 * nm))
}

/// `<D> = <D_0> - q <D_1>` on the next undecided crossing.
fn skein(k: usize, choice: &mut Vec<bool>, partner: &BTreeMap<(usize, usize), (usize, usize)>) -> LaurentPoly {
    if k == choice.len() {
        return LaurentPoly::circle().pow(count_loops(choice, partner));
    }
    choice[k] = false;
    let zero = skein(k + 1, choice, partner);
    choice[k] = true;
    let one = skein(k + 1, choice, partner);
    zero + -(&one * &LaurentPoly::monomial(1, 1))
}

/// The corner paired with slot `s` at a crossing smoothed as `one`.
fn across(s: usize, one: bool) -> usize {
    match (one, s) {
        (false, 0) => 1,
        (false, 1) => 0,
        (false, 2) => 3,
        (false, _) => 2,
        (true, 0) => 3,
        (true, 3) => 0,
        (true, 1) => 2,
        (true, _) => 1,
    }
}

fn count_loops(choice: &[bool], partner: &BTreeMap<(usize, usize), (usize, usize)>) -> usize {
    let mut visited = vec![[false; 4]; choice.len()];
    let mut loops = 0;
    for c in 0..choice.len() {
        for s in 0..4 {
            if visited[c][s] {
                continue;
            }
            loops += 1;
            let mut stack = vec![(c, s)];
            while let Some((c, s)) = stack.pop() {
                if visited[c][s] {
                    continue;
                }
                visited[c][s] = true;
                stack.push(partner[&(c, s)]);
                stack.push((c, across(s, choice[c])));
            }
        }
    }
    loops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn jones(pd: &str) -> String {
        kauffman_jones(&parse_pd(pd).unwrap()).unwrap().to_string()
    }

    #[test]
    fn anchors() {
        assert_eq!(jones(""), "1");
        assert_eq!(jones("L1"), "q^-1 + q");
        assert_eq!(jones("L2"), "q^-2 + 2 + q^2");
        assert_eq!(jones("X(1,1,2,2)"), "q^-1 + q");
        assert_eq!(jones("X(1,2,2,1)"), "q^-1 + q");
    }

    #[test]
    fn trefoils_are_mirror_images() {
        // q -> q^-1 under mirroring
        let a = kauffman_jones(&parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()).unwrap();
        let b = kauffman_jones(&parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap()).unwrap();
        let flipped = a.terms().fold(LaurentPoly::zero(), |acc, (e, c)| acc + LaurentPoly::monomial(c.clone(), -e));
        assert_eq!(flipped, b);
        assert_eq!(b.to_string(), "q + q^3 + q^5 - q^9");
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let p = kauffman_jones(&parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap()).unwrap();
        assert_eq!(p.to_string(), "q^-5 + q^5");
    }
}
