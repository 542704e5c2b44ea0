//! Independent reference computations.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use lefschetz::{IntegralLattice, LatticeVector};

pub fn gram_rows(l: &IntegralLattice) -> Vec<Vec<BigInt>> {
    l.rows().map(|r| r.to_vec()).collect()
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier; index `i`
/// holds the coefficient of `xⁱ`.
pub fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let a: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    coeffs.into_iter().map(|c| {
        assert!(c.is_integer());
        c.to_integer()
    }).collect()
}

fn sign_changes(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(b₊, b₋, b₀)` of a symmetric matrix: all roots are real, so Descartes'
/// rule counts positive and negative roots exactly.
pub fn inertia_by_char_poly(a: &[Vec<BigInt>]) -> (usize, usize, usize) {
    let p = char_poly(a);
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let plus = sign_changes(&p);
    let mirrored: Vec<BigInt> =
        p.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    let minus = sign_changes(&mirrored);
    (plus, minus, zero)
}

/// gcd of `k·v` over every `v ∈ [−r, r]^rank`.
pub fn divisibility_by_box(l: &IntegralLattice, k: &LatticeVector, r: i64) -> BigInt {
    let n = l.rank();
    let gk = l.pairings_with_basis(k).unwrap();
    let mut v = vec![-r; n];
    let mut g = BigInt::zero();
    loop {
        let p: BigInt = v.iter().zip(&gk).map(|(x, y)| BigInt::from(*x) * y).sum();
        g = g.gcd(&p);
        let mut i = 0;
        while i < n && v[i] == r {
            v[i] = -r;
            i += 1;
        }
        if i == n {
            return g;
        }
        v[i] += 1;
    }
}

/// `k·eᵢ ≡ eᵢ·eᵢ (mod 2)` straight from the Gram matrix.
pub fn is_characteristic_direct(l: &IntegralLattice, k: &[BigInt]) -> bool {
    let n = l.rank();
    (0..n).all(|i| {
        let p: BigInt = (0..n).map(|j| l.entry(i, j) * &k[j]).sum();
        (p - l.entry(i, i)).is_even()
    })
}

/// Exact determinant by cofactor-free rational elimination.
pub fn determinant_rational(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[r][j] -= t;
            }
        }
    }
    det.to_integer()
}
