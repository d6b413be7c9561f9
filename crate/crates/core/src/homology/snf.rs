use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type Dense = Vec<Vec<BigInt>>;

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, all positive.
    pub diagonal: Vec<BigInt>,
    pub u: Dense,
    pub v: Dense,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Columns of `V` spanning the kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.cols).map(|j| self.v.iter().map(|row| row[j].clone()).collect()).collect()
    }

    /// Whether `b` lies in the column space of `A` over the integers.
    pub fn in_image(&self, b: &[BigInt]) -> bool {
        assert_eq!(b.len(), self.rows);
        let ub = mat_vec(&self.u, b);
        ub.iter().enumerate().all(|(k, x)| match self.diagonal.get(k) {
            Some(d) => x.is_multiple_of(d),
            None => x.is_zero(),
        })
    }
}

pub(crate) fn mat_vec(m: &Dense, x: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(x).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
}

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Work {
    a: Dense,
    u: Dense,
    v: Dense,
    track: bool,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if self.track {
                self.u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if self.track {
                for row in &mut self.v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        let (ri, rj) = pair(&mut self.a, i, j);
        axpy(ri, rj, c);
        if self.track {
            let (ui, uj) = pair(&mut self.u, i, j);
            axpy(ui, uj, c);
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in &mut self.a {
            let x = &row[j] * c;
            row[i] += x;
        }
        if self.track {
            for row in &mut self.v {
                let x = &row[j] * c;
                row[i] += x;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if self.track {
            for x in &mut self.u[i] {
                *x = -&*x;
            }
        }
    }
}

fn pair<T>(m: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

fn axpy(y: &mut [BigInt], x: &[BigInt], c: &BigInt) {
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += b * c;
        }
    }
}

/// Smith normal form of a dense `rows x cols` matrix. With `track` unset the
/// transforms are left as identities of size zero.
pub fn smith(a: Dense, rows: usize, cols: usize, track: bool) -> SmithForm {
    let mut w = Work {
        a,
        u: if track { identity(rows) } else { Vec::new() },
        v: if track { identity(cols) } else { Vec::new() },
        track,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[t][t].clone();
            let mut residue = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&p);
                    w.add_row(i, t, &-q);
                    residue |= !w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&p);
                    w.add_col(j, t, &-q);
                    residue |= !w.a[t][j].is_zero();
                }
            }
            if residue {
                // a remainder smaller than the pivot is left; move it in
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // enforce divisibility of the rest of the block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..t).map(|k| w.a[k][k].clone()).collect();
    SmithForm { rows, cols, diagonal, u: w.u, v: w.v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Dense {
        rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect()
    }

    fn mul(a: &Dense, b: &Dense) -> Dense {
        let n = b.first().map_or(0, |r| r.len());
        a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect()).collect()
    }

    fn factors(s: &SmithForm) -> Vec<i64> {
        s.diagonal.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert!(smith(m(&[&[0, 0], &[0, 0]]), 2, 2, true).diagonal.is_empty());
        assert_eq!(factors(&smith(m(&[&[1, 0], &[0, 1]]), 2, 2, true)), [1, 1]);
        assert_eq!(factors(&smith(m(&[&[2, 0], &[0, 3]]), 2, 2, true)), [1, 6]);
        assert_eq!(factors(&smith(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3, 3, true)), [2, 6, 12]);
        assert!(smith(Vec::new(), 0, 0, true).diagonal.is_empty());
    }

    #[test]
    fn image_membership() {
        let s = smith(m(&[&[2], &[0]]), 2, 1, true);
        assert!(s.in_image(&[BigInt::from(4), BigInt::zero()]));
        assert!(!s.in_image(&[BigInt::from(3), BigInt::zero()]));
        assert!(!s.in_image(&[BigInt::zero(), BigInt::one()]));
    }

    fn matrix() -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r))
        })
    }

    proptest! {
        #[test]
        fn transforms_diagonalize((r, c, a) in matrix()) {
            let a: Dense = a.iter().map(|row| row.iter().map(|x| BigInt::from(*x)).collect()).collect();
            let s = smith(a.clone(), r, c, true);
            let uav = if r == 0 || c == 0 { vec![vec![BigInt::zero(); c]; r] } else { mul(&mul(&s.u, &a), &s.v) };
            for i in 0..r {
                for j in 0..c {
                    let want = if i == j && i < s.rank() { s.diagonal[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(&uav[i][j], &want);
                }
            }
            for w in s.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for d in &s.diagonal {
                prop_assert!(d.is_positive());
            }
        }

        #[test]
        fn permutation_invariant((r, c, a) in matrix(), seed in 0usize..100) {
            let a: Dense = a.iter().map(|row| row.iter().map(|x| BigInt::from(*x)).collect()).collect();
            let mut b = a.clone();
            if r > 1 {
                b.swap(0, seed % r);
                b.reverse();
            }
            if c > 1 {
                for row in &mut b {
                    row.swap(0, seed % c);
                }
            }
            prop_assert_eq!(smith(a, r, c, false).diagonal, smith(b, r, c, false).diagonal);
        }
    }
}
