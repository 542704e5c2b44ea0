//! When a gluing diffeomorphism cannot extend, and pencil parameters that
//! realize a prescribed divisibility of `K + Σ`.

use alloc::format;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `d | x`, with `0 | x` only for `x = 0`.
pub fn divides(d: u64, x: i128) -> bool {
    if d == 0 {
        x == 0
    } else {
        x.rem_euclid(i128::from(d)) == 0
    }
}

fn gcd3(a: i128, b: i128, c: i128) -> u128 {
    a.unsigned_abs().gcd(&b.unsigned_abs()).gcd(&c.unsigned_abs())
}

/// Outcome of the obstruction test for a gluing class of divisibility `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObstructionVerdict {
    pub obstructed: bool,
    pub d: u64,
    pub a: u64,
    pub n: u64,
    pub genus: Option<u32>,
    /// Set when obstructed.
    pub witness_m: Option<u64>,
    /// The `m` at which the two divisibilities below are evaluated.
    pub m_used: u64,
    pub div_untwisted: u128,
    pub div_twisted: u128,
}

impl ObstructionVerdict {
    pub fn verdict(&self) -> &'static str {
        if self.obstructed {
            "obstructed"
        } else {
            "inconclusive"
        }
    }
}

/// The factor multiplying `a` in the twisted divisibility: `(2g−1)n − 1`,
/// or `n − 1` when no genus is given.
fn twist_factor(n: u64, genus: Option<u32>) -> i128 {
    match genus {
        Some(g) => (2 * i128::from(g) - 1) * i128::from(n) - 1,
        None => i128::from(n) - 1,
    }
}

/// Obstructed iff `d ∤ a(n−1)`.
///
/// For `d > 0` the witness is the least `m ≥ 1` with `m ≡ 2 − n (mod d)`,
/// where `gcd(m+n−2, d) = d` while the twisted divisibility drops. For
/// `d = 0` it is the least `m ≥ 1` with `(m+n−2) ∤ a·((2g−1)n − 1)`.
pub fn extension_obstructed(d: u64, a: u64, n: u64, genus: Option<u32>) -> Result<ObstructionVerdict> {
    if n < 1 {
        return Err(Error::Precondition("n ≥ 1 required".into()));
    }
    if let Some(g) = genus {
        if !divides(d, 2 * i128::from(g) - 2) {
            return Err(Error::Precondition(format!("d = {d} does not divide 2g − 2 = {}", 2 * i64::from(g) - 2)));
        }
    }
    let (di, ai, ni) = (i128::from(d), i128::from(a), i128::from(n));
    let obstructed = !divides(d, ai * (ni - 1));
    let twisted = ai * twist_factor(n, genus);
    let m_used: i128 = if d > 0 {
        let m = (2 - ni).rem_euclid(di);
        if m == 0 {
            di
        } else {
            m
        }
    } else if obstructed {
        // m + n − 2 > |twisted| always works.
        (1..=twisted.abs() + 1)
            .find(|&m| !divides((m + ni - 2) as u64, twisted))
            .unwrap_or(twisted.abs() + 1)
    } else {
        1
    };
    let e = m_used + ni - 2;
    Ok(ObstructionVerdict {
        obstructed,
        d,
        a,
        n,
        genus,
        witness_m: obstructed.then_some(m_used as u64),
        m_used: m_used as u64,
        div_untwisted: gcd3(e, 0, di),
        div_twisted: gcd3(e, twisted, di),
    })
}

/// Embedding parameters `Σ = k(K + sL)` with `d | s` and `d | (k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PencilParams {
    pub d: u64,
    pub s: u64,
    pub k: u64,
    pub s0: u64,
    pub k0: u64,
    /// Filled in by [`PencilParams::realize`].
    pub genus: Option<BigInt>,
    pub degree: Option<BigInt>,
}

pub fn choose_pencil_params(d: u64, s0: u64, k0: u64) -> Result<PencilParams> {
    if d == 0 || s0 == 0 || k0 == 0 {
        return Err(Error::Precondition("d, s0, k0 must be positive".into()));
    }
    let s = s0.div_ceil(d) * d;
    let k = k0 + (d - (k0 + 1) % d) % d;
    Ok(PencilParams { d, s, k, s0, k0, genus: None, degree: None })
}

impl PencilParams {
    /// Genus and degree of `Σ` on a surface with the given `K², K·L, L²`;
    /// checks `d | 2g − 2`.
    pub fn realize(&self, k2: i64, kl: i64, l2: i64, general_type: bool) -> Result<PencilParams> {
        let (g, deg) = section_data(k2, kl, l2, self.s as i64, self.k as i64, general_type)?;
        let two_g = BigInt::from(2) * &g - BigInt::from(2);
        if !(two_g.clone() % BigInt::from(self.d)).is_zero() {
            return Err(Error::Invariant(format!("d = {} does not divide 2g − 2 = {two_g}", self.d)));
        }
        Ok(PencilParams { genus: Some(g), degree: Some(deg), ..self.clone() })
    }
}

fn quadratic(k2: &BigInt, kl: &BigInt, l2: &BigInt, s: &BigInt) -> BigInt {
    k2 + BigInt::from(2) * s * kl + s * s * l2
}

/// Least `s ≥ 1` with `K² + 2s·KL + s²·L² > 0`, for `L² > 0`, `KL ≥ 0`.
pub fn ample_threshold(k2: i64, kl: i64, l2: i64) -> Result<BigInt> {
    if l2 <= 0 || kl < 0 {
        return Err(Error::Precondition(format!("need L² > 0 and K·L ≥ 0, got L² = {l2}, K·L = {kl}")));
    }
    let (k2, kl, l2) = (BigInt::from(k2), BigInt::from(kl), BigInt::from(l2));
    let ok = |s: &BigInt| quadratic(&k2, &kl, &l2, s).is_positive();
    let mut hi = BigInt::one();
    while !ok(&hi) {
        hi *= 2;
    }
    let mut lo = &hi / 2;
    // ok(hi), !ok(lo) unless lo = 0
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `(g, Σ²)` for `Σ = k(K + sL)`, by adjunction.
pub fn section_data(k2: i64, kl: i64, l2: i64, s: i64, k: i64, general_type: bool) -> Result<(BigInt, BigInt)> {
    if k == 0 {
        return Err(Error::Precondition("k = 0 gives an empty section".into()));
    }
    let (k2, kl, l2, s, k) = (BigInt::from(k2), BigInt::from(kl), BigInt::from(l2), BigInt::from(s), BigInt::from(k));
    let sq = &k * &k * quadratic(&k2, &kl, &l2, &s);
    let ks = &k * (&k2 + &s * &kl);
    let total = &sq + &ks;
    if total.is_odd() {
        return Err(Error::Invariant(format!("Σ² + K·Σ = {total} is odd")));
    }
    let g = BigInt::one() + total / 2;
    if general_type && g < BigInt::from(2) {
        return Err(Error::Invariant(format!("section genus {g} < 2 on a surface of general type")));
    }
    Ok((g, sq))
}

pub fn section_genus(k2: i64, kl: i64, l2: i64, s: i64, k: i64, general_type: bool) -> Result<BigInt> {
    Ok(section_data(k2, kl, l2, s, k, general_type)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divides_convention() {
        assert!(divides(0, 0));
        assert!(!divides(0, 2));
        assert!(!divides(2, 1));
        assert!(divides(3, -6));
    }

    #[test]
    fn verdicts() {
        let v = extension_obstructed(2, 1, 2, Some(6)).unwrap();
        assert!(v.obstructed);
        assert_eq!(v.witness_m, Some(2));
        assert_ne!(v.div_untwisted, v.div_twisted);
        let v = extension_obstructed(0, 0, 4, None).unwrap();
        assert!(!v.obstructed);
        assert_eq!(v.verdict(), "inconclusive");
        let v = extension_obstructed(0, 1, 3, Some(1)).unwrap();
        assert!(v.obstructed);
        assert_ne!(v.div_untwisted, v.div_twisted);
        assert!(extension_obstructed(4, 1, 2, Some(2)).is_err());
    }

    #[test]
    fn pencil_params() {
        let p = choose_pencil_params(3, 5, 10).unwrap();
        assert_eq!((p.s, p.k), (6, 11));
        let p = choose_pencil_params(1, 7, 9).unwrap();
        assert_eq!((p.s, p.k), (7, 9));
        let p = choose_pencil_params(4, 4, 7).unwrap();
        assert_eq!((p.s, p.k), (4, 7));
        assert!(choose_pencil_params(0, 1, 1).is_err());
    }

    #[test]
    fn thresholds_and_genus() {
        assert_eq!(ample_threshold(5, 5, 5).unwrap(), BigInt::from(1));
        assert_eq!(ample_threshold(-100, 0, 1).unwrap(), BigInt::from(11));
        assert_eq!(ample_threshold(1, 0, 1).unwrap(), BigInt::from(1));
        assert!(ample_threshold(1, 0, 0).is_err());
        assert_eq!(section_genus(5, 5, 5, 1, 1, true).unwrap(), BigInt::from(16));
        assert_eq!(section_genus(5, 5, 5, 0, 1, true).unwrap(), BigInt::from(6));
        assert!(section_genus(5, 5, 5, 1, 0, true).is_err());
        let p = choose_pencil_params(3, 1, 1).unwrap().realize(5, 5, 5, true).unwrap();
        let g = p.genus.unwrap();
        assert!(((BigInt::from(2) * g - BigInt::from(2)) % 3u32).is_zero());
    }
}
