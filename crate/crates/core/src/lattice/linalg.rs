//! Exact dense linear algebra over Z and Q used by the lattice layer.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Inertia;

/// Connected components of the graph whose edges are the nonzero
/// off-diagonal Gram entries. The Gram matrix is block diagonal along them.
pub(crate) fn components(rank: usize, gram: &[BigInt]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..rank).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..rank {
        for j in (i + 1)..rank {
            if !gram[i * rank + j].is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; rank];
    for i in 0..rank {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(i);
    }
    out
}

fn submatrix(rank: usize, gram: &[BigInt], idx: &[usize]) -> Vec<Vec<BigInt>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| gram[i * rank + j].clone()).collect())
        .collect()
}

/// Inertia by congruence diagonalization, one block-diagonal component at a
/// time.
pub(crate) fn inertia_of(rank: usize, gram: &[BigInt]) -> Inertia {
    let mut total = Inertia::default();
    for comp in components(rank, gram) {
        let part = inertia_dense(submatrix(rank, gram, &comp));
        total = total + part;
    }
    total
}

/// Symmetric Gaussian elimination over Q using congruence moves only.
///
/// When every remaining diagonal entry vanishes but some off-diagonal entry
/// `a_ij` does not, row and column `j` are added to `i`, which puts `2 a_ij`
/// on the diagonal.
pub(crate) fn inertia_dense(m: Vec<Vec<BigInt>>) -> Inertia {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let mut hit = None;
                'search: for (x, &i) in active.iter().enumerate() {
                    for &j in &active[x + 1..] {
                        if !a[i][j].is_zero() {
                            hit = Some((x, i, j));
                            break 'search;
                        }
                    }
                }
                let Some((x, i, j)) = hit else {
                    out.b_zero += active.len();
                    break;
                };
                for &k in &active {
                    let v = a[k][j].clone();
                    a[k][i] += &v;
                }
                for &k in &active {
                    let v = a[j][k].clone();
                    a[i][k] += &v;
                }
                x
            }
        };
        let p = active.swap_remove(pivot);
        let piv = a[p][p].clone();
        if piv.is_positive() {
            out.b_plus += 1;
        } else {
            out.b_minus += 1;
        }
        for &r in &active {
            if a[r][p].is_zero() {
                continue;
            }
            let factor = &a[r][p] / &piv;
            for &c in &active {
                if a[p][c].is_zero() {
                    continue;
                }
                let delta = &factor * &a[p][c];
                a[r][c] -= delta;
            }
        }
    }
    out
}

pub(crate) fn determinant_of(rank: usize, gram: &[BigInt]) -> BigInt {
    let mut det = BigInt::one();
    for comp in components(rank, gram) {
        det *= bareiss(submatrix(rank, gram, &comp));
        if det.is_zero() {
            break;
        }
    }
    det
}

/// Fraction-free determinant.
pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Integer kernel of a `k × n` matrix via column-style Hermite reduction.
///
/// Columns that are identically zero contribute unit vectors directly; the
/// remaining columns are reduced with unimodular column operations whose
/// inverse is tracked so that kernel coordinates can be read back.
#[derive(Clone, Debug)]
pub(crate) struct IntegerKernel {
    n: usize,
    zero_cols: Vec<usize>,
    live_cols: Vec<usize>,
    /// Rank of the input matrix (number of pivots).
    pivots: usize,
    /// Kernel vectors among the live columns, in full `n` coordinates.
    live_basis: Vec<Vec<BigInt>>,
    /// Inverse of the accumulated column transform on the live columns.
    inverse: Vec<Vec<BigInt>>,
}

impl IntegerKernel {
    pub(crate) fn new(a: &[Vec<BigInt>], n: usize) -> Self {
        let live_cols: Vec<usize> = (0..n).filter(|&c| a.iter().any(|row| !row[c].is_zero())).collect();
        let zero_cols: Vec<usize> = (0..n).filter(|&c| a.iter().all(|row| row[c].is_zero())).collect();
        let m = live_cols.len();
        let mut work: Vec<Vec<BigInt>> = a
            .iter()
            .map(|row| live_cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let mut u = identity(m);
        let mut uinv = identity(m);
        let mut pivot = 0;
        for r in 0..a.len() {
            if pivot == m {
                break;
            }
            let Some(first) = (pivot..m).find(|&c| !work[r][c].is_zero()) else {
                continue;
            };
            if first != pivot {
                swap_cols(&mut work, first, pivot);
                swap_cols(&mut u, first, pivot);
                uinv.swap(first, pivot);
            }
            for c in pivot + 1..m {
                if work[r][c].is_zero() {
                    continue;
                }
                let a_p = work[r][pivot].clone();
                let b_c = work[r][c].clone();
                let eg = a_p.extended_gcd(&b_c);
                let g = eg.gcd;
                let (x, y) = (eg.x, eg.y);
                let ag = &a_p / &g;
                let bg = &b_c / &g;
                combine_cols(&mut work, pivot, c, &x, &y, &bg, &ag);
                combine_cols(&mut u, pivot, c, &x, &y, &bg, &ag);
                let row_p = uinv[pivot].clone();
                let row_c = uinv[c].clone();
                for j in 0..m {
                    uinv[pivot][j] = &ag * &row_p[j] + &bg * &row_c[j];
                    uinv[c][j] = -&y * &row_p[j] + &x * &row_c[j];
                }
            }
            pivot += 1;
        }
        let live_basis = (pivot..m)
            .map(|c| {
                let mut v = vec![BigInt::zero(); n];
                for (i, &col) in live_cols.iter().enumerate() {
                    v[col] = u[i][c].clone();
                }
                v
            })
            .collect();
        IntegerKernel { n, zero_cols, live_cols, pivots: pivot, live_basis, inverse: uinv }
    }

    pub(crate) fn rank_of_input(&self) -> usize {
        self.pivots
    }

    /// Kernel basis: unit vectors of zero columns first, then the reduced
    /// live-column vectors.
    pub(crate) fn basis(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self
            .zero_cols
            .iter()
            .map(|&c| {
                let mut v = vec![BigInt::zero(); self.n];
                v[c] = BigInt::one();
                v
            })
            .collect();
        out.extend(self.live_basis.iter().cloned());
        out
    }

    /// Coordinates of `v` in [`Self::basis`], or `None` when `v` is not in
    /// the kernel.
    pub(crate) fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut out: Vec<BigInt> = self.zero_cols.iter().map(|&c| v[c].clone()).collect();
        let m = self.live_cols.len();
        for (row_idx, row) in self.inverse.iter().enumerate() {
            let mut acc = BigInt::zero();
            for j in 0..m {
                let x = &v[self.live_cols[j]];
                if !x.is_zero() && !row[j].is_zero() {
                    acc += &row[j] * x;
                }
            }
            if row_idx < self.pivots {
                if !acc.is_zero() {
                    return None;
                }
            } else {
                out.push(acc);
            }
        }
        Some(out)
    }
}

fn identity(m: usize) -> Vec<Vec<BigInt>> {
    (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); m];
            row[i] = BigInt::one();
            row
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

// new_p = x p + y c; new_c = -bg p + ag c
fn combine_cols(m: &mut [Vec<BigInt>], p: usize, c: usize, x: &BigInt, y: &BigInt, bg: &BigInt, ag: &BigInt) {
    for row in m.iter_mut() {
        let (vp, vc) = (row[p].clone(), row[c].clone());
        row[p] = x * &vp + y * &vc;
        row[c] = ag * &vc - bg * &vp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss(big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss(big(&[&[2, 0], &[0, 2]])), BigInt::from(4));
        assert_eq!(bareiss(big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(bareiss(big(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])), BigInt::from(-1));
    }

    #[test]
    fn zero_diagonal_move() {
        let i = inertia_dense(big(&[&[0, 1], &[1, 0]]));
        assert_eq!((i.b_plus, i.b_minus, i.b_zero), (1, 1, 0));
        let i = inertia_dense(big(&[&[0, 0], &[0, 0]]));
        assert_eq!((i.b_plus, i.b_minus, i.b_zero), (0, 0, 2));
        let i = inertia_dense(big(&[&[0, 2, 0], &[2, 0, 0], &[0, 0, 0]]));
        assert_eq!((i.b_plus, i.b_minus, i.b_zero), (1, 1, 1));
    }

    #[test]
    fn kernel_coordinates_round_trip() {
        let a = big(&[&[3, 1, 1, 0], &[0, 0, 2, 0]]);
        let k = IntegerKernel::new(&a, 4);
        assert_eq!(k.rank_of_input(), 2);
        let basis = k.basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &a {
                let s: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
        let combo: Vec<BigInt> = (0..4).map(|i| &basis[0][i] * 2 - &basis[1][i] * 5).collect();
        assert_eq!(k.coordinates(&combo), Some(vec![BigInt::from(2), BigInt::from(-5)]));
        let outside = vec![BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        assert_eq!(k.coordinates(&outside), None);
    }
}
