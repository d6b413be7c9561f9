use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::diagram::{parse_pd, LinkDiagram};

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const MIRROR: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
const HOPF: &str = "X(4,1,3,2) X(2,3,1,4)";

fn kh(pd: &str) -> Homology {
    homology(&CubeComplex::build(&parse_pd(pd).unwrap(), Theory::Khovanov).unwrap()).unwrap()
}

fn z(free_rank: usize, torsion: &[i64]) -> HomologyGroup {
    HomologyGroup { free_rank, torsion: torsion.iter().map(|t| BigInt::from(*t)).collect() }
}

#[test]
fn empty_and_unknot() {
    let e = kh("");
    assert_eq!(e.groups.len(), 1);
    assert_eq!(e.get(0, Some(0)), z(1, &[]));
    let u = kh("L1");
    assert_eq!(u.groups.len(), 2);
    assert_eq!(u.get(0, Some(1)), z(1, &[]));
    assert_eq!(u.get(0, Some(-1)), z(1, &[]));
}

#[test]
fn bar_natan_is_refused() {
    let c = CubeComplex::build(&parse_pd("L1").unwrap(), Theory::BarNatan).unwrap();
    assert!(matches!(homology(&c), Err(Error::TheoryUnsupported)));
}

#[test]
fn trefoil_tables() {
    // cross-checked against the rational and mod-2 ranks below
    let m = kh(MIRROR);
    let want =
        [((0, 1), z(1, &[])), ((0, 3), z(1, &[])), ((2, 5), z(1, &[])), ((3, 7), z(0, &[2])), ((3, 9), z(1, &[]))];
    assert_eq!(m.groups.len(), want.len());
    for ((i, q), g) in want {
        assert_eq!(m.get(i, Some(q)), g, "H^{i},{q}");
    }
    let t = kh(TREFOIL);
    let want = [
        ((0, -1), z(1, &[])),
        ((0, -3), z(1, &[])),
        ((-2, -5), z(1, &[])),
        ((-2, -7), z(0, &[2])),
        ((-3, -9), z(1, &[])),
    ];
    assert_eq!(t.groups.len(), want.len());
    for ((i, q), g) in want {
        assert_eq!(t.get(i, Some(q)), g, "H^{i},{q}");
    }
}

fn corpus() -> Vec<LinkDiagram> {
    let mut v: Vec<LinkDiagram> =
        ["", "L1", "L2", "X(1,1,2,2)", "X(1,2,2,1)", HOPF, TREFOIL, MIRROR, FIGURE_EIGHT, "X(4,1,3,2) X(2,3,1,4) L1"]
            .iter()
            .map(|s| parse_pd(s).unwrap())
            .collect();
    let mut t = parse_pd(TREFOIL).unwrap();
    t.add_free_loops(1);
    v.push(t);
    v
}

#[test]
fn euler_paths_agree_with_jones() {
    for d in corpus() {
        let c = CubeComplex::build(&d, Theory::Khovanov).unwrap();
        let chain = graded_euler(&c);
        let hom = homology(&c).unwrap().euler();
        let jones = kauffman_jones(&d).unwrap();
        assert_eq!(chain, jones, "{d}");
        assert_eq!(hom, jones, "{d}");
    }
}

fn rank_rational(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.to_dense().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone() * inv.clone();
                for c2 in 0..cols {
                    let x = a[rank][c2].clone() * f.clone();
                    a[r][c2] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod2(m: &IntegerMatrix) -> usize {
    let two = BigInt::from(2);
    let mut a: Vec<Vec<bool>> =
        m.to_dense().into_iter().map(|r| r.into_iter().map(|x| !(x % &two).is_zero()).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][col]) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && a[r][col] {
                for c2 in 0..cols {
                    a[r][c2] ^= a[rank][c2];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn ranks_match_rational_and_mod_two_elimination() {
    for d in corpus() {
        let c = CubeComplex::build(&d, Theory::Khovanov).unwrap();
        let b = BlockComplex::new(&c).unwrap();
        let h = b.homology();
        let keys: Vec<_> = b.keys().collect();
        let out = |k: Bidegree, f: &dyn Fn(&IntegerMatrix) -> usize| {
            if b.rank(k) == 0 {
                0
            } else {
                f(&b.block_matrix(k))
            }
        };
        let even = |k: Bidegree| h.get(k.0, k.1).torsion.iter().filter(|t| (*t % 2u32).is_zero()).count();
        for &k in &keys {
            let prev = (k.0 - 1, k.1);
            let q_dim = b.rank(k) - out(k, &rank_rational) - out(prev, &rank_rational);
            assert_eq!(q_dim, h.get(k.0, k.1).free_rank, "{d} {k:?}");
            let f2_dim = b.rank(k) - out(k, &rank_mod2) - out(prev, &rank_mod2);
            let next = (k.0 + 1, k.1);
            assert_eq!(f2_dim, h.get(k.0, k.1).free_rank + even(k) + even(next), "{d} {k:?}");
        }
    }
}

#[test]
fn alternating_sums_agree_per_q() {
    for d in corpus() {
        let c = CubeComplex::build(&d, Theory::Khovanov).unwrap();
        let h = homology(&c).unwrap();
        let mut chain: BTreeMap<i64, i64> = BTreeMap::new();
        for ((i, q), r) in c.chain_ranks() {
            *chain.entry(q).or_default() += if i % 2 == 0 { r as i64 } else { -(r as i64) };
        }
        let mut hom: BTreeMap<i64, i64> = BTreeMap::new();
        for ((i, q), g) in &h.groups {
            *hom.entry(q.unwrap()).or_default() += if i % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) };
        }
        chain.retain(|_, v| *v != 0);
        hom.retain(|_, v| *v != 0);
        assert_eq!(chain, hom, "{d}");
    }
}

#[test]
fn invariant_under_kinks() {
    let u = kh("L1");
    assert_eq!(kh("X(1,1,2,2)"), u);
    assert_eq!(kh("X(1,2,2,1)"), u);
}

#[test]
fn lee_homology_of_knots_has_rank_two() {
    for pd in ["L1", TREFOIL, FIGURE_EIGHT] {
        let c = CubeComplex::build(&parse_pd(pd).unwrap(), Theory::Lee).unwrap();
        let h = homology(&c).unwrap();
        let free: usize = h.groups.values().map(|g| g.free_rank).sum();
        assert_eq!(free, 2, "{pd}");
        assert!(h.groups.keys().all(|(_, q)| q.is_none()));
    }
}

#[test]
fn coboundary_test() {
    let c = CubeComplex::build(&parse_pd(MIRROR).unwrap(), Theory::Khovanov).unwrap();
    let b = BlockComplex::new(&c).unwrap();
    for g in c.generators() {
        let dg = c.d_generator(&g);
        assert!(b.is_coboundary(&dg).unwrap());
        assert!(b.is_cocycle(&dg).unwrap());
    }
    // a generator of a nonzero free group is a cocycle but not a coboundary
    for k in b.keys() {
        let g = b.group(k);
        if g.free_rank > 0 {
            let basis = b.cocycle_basis(k);
            assert!(basis.iter().any(|z| !b.is_coboundary(z).unwrap()), "{k:?}");
        }
        for z in b.cocycle_basis(k) {
            assert!(b.is_cocycle(&z).unwrap());
        }
    }
}

#[test]
fn renderers() {
    let rows = kh("L1").rows();
    assert_eq!(render_csv(&rows), "i,q,free_rank,torsion\n0,-1,1,\n0,1,1,\n");
    let human = render_human(&rows);
    assert_eq!(human.lines().count(), 3);
    assert!(human.lines().nth(1).unwrap().ends_with('-'));
    let json = serde_json::to_string(&rows).unwrap();
    let back: Vec<HomologyRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rows);
    assert_eq!(summary(&kh("")), "(Z)[0,0]");
}
