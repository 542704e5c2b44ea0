//! Canonical classes of fibre sums and their divisibilities.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::fibresum::{iterated_fibre_sum, FibreSumResult, GluingClass, NormalFormLabels, Splitting, TwistedFamily};
use crate::lattice::{IntegralLattice, LatticeVector};
use crate::manifold::Fibred4Manifold;

/// `K_X = K̄_M + K̄_N + Σ rᵢRᵢ + b_X·B_X + σ_X·Σ_X` in a normal-form basis.
///
/// `kbar_m`, `kbar_n` are coordinates in the `P(M)`, `P(N)` blocks. For a
/// single manifold (`n = 1`) `kbar_n` and `r` are empty and `k_x` lives in
/// the lattice of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalData {
    pub k_x: LatticeVector,
    pub kbar_m: Vec<BigInt>,
    pub kbar_n: Vec<BigInt>,
    pub r: Vec<BigInt>,
    pub b_x: BigInt,
    pub sigma_x: BigInt,
}

impl CanonicalData {
    /// Coordinates rebuilt from the components.
    pub fn reassemble(&self, labels: &NormalFormLabels) -> Result<Vec<BigInt>> {
        let pm = labels.pm_range();
        let pn = labels.pn_range();
        if self.kbar_m.len() != pm.len() || self.kbar_n.len() != pn.len() || self.r.len() != labels.pair_count() {
            return Err(Error::DimensionMismatch { expected: labels.len(), got: self.k_x.len() });
        }
        let mut v = vec![BigInt::zero(); labels.len()];
        v[pm].clone_from_slice(&self.kbar_m);
        v[pn].clone_from_slice(&self.kbar_n);
        for (i, r) in self.r.iter().enumerate() {
            v[labels.r_index(i + 1)] = r.clone();
        }
        v[labels.b_index()] = self.b_x.clone();
        v[labels.sigma_index()] = self.sigma_x.clone();
        Ok(v)
    }
}

pub(crate) struct GompfParts {
    pub kbar_m: Vec<BigInt>,
    pub kbar_n: Vec<BigInt>,
    pub r: Vec<BigInt>,
    pub b_x: BigInt,
    pub sigma_x: BigInt,
}

/// `K̄ = K − (2g−2)B − (K·B − (2g−2)B²)Σ` as coordinates in `P`.
fn kbar(split: &Splitting) -> Result<Vec<BigInt>> {
    let m = split.manifold();
    let t = m.adjunction_value();
    let y = m.k_dot_section() - &t * m.section_square();
    let v = LatticeVector::combination(&[(BigInt::one(), m.canonical()), (-t, m.section()), (-y, m.fibre())])?;
    split.complement().coordinates(&v)
}

pub(crate) fn gompf_components(
    split_m: &Splitting,
    split_n: &Splitting,
    gluing: &GluingClass,
    k_x0_s: &[BigInt],
) -> Result<GompfParts> {
    let (m, n) = (split_m.manifold(), split_n.manifold());
    let t = m.adjunction_value();
    let factor = n.k_dot_section() + 1 - &t * n.section_square();
    let r = k_x0_s
        .iter()
        .zip(gluing.entries())
        .map(|(k, &a)| k - BigInt::from(a) * &factor)
        .collect();
    let sigma_x = m.k_dot_section() + n.k_dot_section() + 2 - &t * (m.section_square() + n.section_square());
    Ok(GompfParts { kbar_m: kbar(split_m)?, kbar_n: kbar(split_n)?, r, b_x: t, sigma_x })
}

pub(crate) fn assemble(lattice: &IntegralLattice, labels: &NormalFormLabels, parts: GompfParts) -> Result<CanonicalData> {
    let mut data = CanonicalData {
        k_x: lattice.zero_vector(),
        kbar_m: parts.kbar_m,
        kbar_n: parts.kbar_n,
        r: parts.r,
        b_x: parts.b_x,
        sigma_x: parts.sigma_x,
    };
    data.k_x = lattice.vector(data.reassemble(labels)?)?;
    Ok(data)
}

/// Canonical class of `M #_Σ N` glued by `C`, with user-supplied
/// `K_{X₀}·Sᵢ` and parity-forced `Sᵢ²`.
pub fn gompf_canonical(
    m: &Fibred4Manifold,
    n: &Fibred4Manifold,
    gluing: &GluingClass,
    k_x0_s: &[BigInt],
) -> Result<CanonicalData> {
    let sum = crate::fibresum::generalized_fibre_sum_with(
        m,
        n,
        gluing,
        crate::fibresum::SquareChoice::ParityDefault,
        k_x0_s,
    )?;
    Ok(sum.canonical().clone())
}

fn require_sphere_section(m: &Fibred4Manifold) -> Result<()> {
    if m.k_dot_section() != BigInt::from(-1) || m.section_square() != BigInt::from(-1) {
        return Err(Error::Precondition(format!(
            "closed form needs K·B = −1 and B² = −1, got K·B = {} and B² = {}",
            m.k_dot_section(),
            m.section_square()
        )));
    }
    Ok(())
}

/// `K̄ = (K + Σ) − (2g−2)(B + Σ)` in `P(M)` coordinates.
fn kbar_closed(split: &Splitting) -> Result<Vec<BigInt>> {
    let m = split.manifold();
    let t = m.adjunction_value();
    let v = LatticeVector::combination(&[
        (BigInt::one(), m.canonical()),
        (BigInt::one() - &t, m.fibre()),
        (-t, m.section()),
    ])?;
    split.complement().coordinates(&v)
}

/// Closed-form class on a built sum: `K̄` on every building-block copy,
/// `rᵢ` on the top-level rim tori, zero on nested pairs.
fn closed_form_on(sum: &FibreSumResult, kb: &[BigInt], r: Vec<BigInt>, total: usize) -> Result<CanonicalData> {
    let labels = sum.labels();
    let g = sum.manifold().genus();
    let t = BigInt::from(2 * i64::from(g) - 2);
    let total = BigInt::from(total as u64);
    let mut coords = vec![BigInt::zero(); labels.len()];
    for range in sum.copies() {
        coords[range.clone()].clone_from_slice(kb);
    }
    for (i, ri) in r.iter().enumerate() {
        coords[labels.r_index(i + 1)] = ri.clone();
    }
    let sigma_x = (&total - BigInt::from(2)) + &t * &total;
    coords[labels.b_index()] = t.clone();
    coords[labels.sigma_index()] = sigma_x.clone();
    Ok(CanonicalData {
        kbar_m: coords[labels.pm_range()].to_vec(),
        kbar_n: coords[labels.pn_range()].to_vec(),
        k_x: sum.lattice().vector(coords)?,
        r,
        b_x: t,
        sigma_x,
    })
}

/// `K_{M(n)} = Σ K̄_{Mᵢ} + (2g−2)B_X + ((n−2) + (2g−2)n)Σ_X`.
///
/// Needs `K·B = −1` and `B² = −1` (a section that is an exceptional sphere).
pub fn canonical_mn(m: &Fibred4Manifold, n: usize) -> Result<CanonicalData> {
    if n < 1 {
        return Err(Error::Precondition("n ≥ 1 required".into()));
    }
    require_sphere_section(m)?;
    let split = Splitting::new(m)?;
    let kb = kbar_closed(&split)?;
    if n == 1 {
        let t = m.adjunction_value();
        let sigma_x = BigInt::from(-1) + &t;
        let k_x = split.recompose(&kb, &t, &sigma_x)?;
        return Ok(CanonicalData { k_x, kbar_m: kb, kbar_n: Vec::new(), r: Vec::new(), b_x: t, sigma_x });
    }
    let built = iterated_fibre_sum(m, n)?;
    let sum = built.as_sum().ok_or_else(|| Error::Invariant("M(n) for n ≥ 2 is a sum".into()))?;
    closed_form_on(sum, &kb, vec![BigInt::zero(); 2 * m.genus() as usize], n)
}

/// `K_{M(m,n,C)}` with `rᵢ = −aᵢ((2g−1)n − 1)` and `Σ_X` coefficient
/// `(m+n−2) + (2g−2)(m+n)`.
pub fn canonical_mmnc(m: &Fibred4Manifold, m_count: usize, n_count: usize, gluing: &GluingClass) -> Result<CanonicalData> {
    Ok(canonical_mmnc_with_sum(m, m_count, n_count, gluing)?.0)
}

/// As [`canonical_mmnc`], also returning the constructed sum.
pub fn canonical_mmnc_with_sum(
    m: &Fibred4Manifold,
    m_count: usize,
    n_count: usize,
    gluing: &GluingClass,
) -> Result<(CanonicalData, FibreSumResult)> {
    if m_count < 1 || n_count < 1 {
        return Err(Error::Precondition("m, n ≥ 1 required".into()));
    }
    require_sphere_section(m)?;
    TwistedFamily::new(m, m_count, n_count)?.canonical(gluing)
}

impl TwistedFamily {
    /// Closed-form canonical class of `M(m, n, C)` and the sum itself.
    pub fn canonical(&self, gluing: &GluingClass) -> Result<(CanonicalData, FibreSumResult)> {
        let m = self.base();
        require_sphere_section(m)?;
        gluing.check(m.genus())?;
        let (m_count, n_count) = self.counts();
        let sum = self.glue(gluing)?;
        let kb = kbar_closed(self.base_split())?;
        let factor = rim_factor(m.genus(), n_count as u64);
        let r = gluing.entries().iter().map(|&a| -BigInt::from(a) * &factor).collect();
        let data = closed_form_on(&sum, &kb, r, m_count + n_count)?;
        Ok((data, sum))
    }
}

/// `(2g−1)n − 1`.
pub fn rim_factor(genus: u32, n: u64) -> BigInt {
    BigInt::from(2 * i64::from(genus) - 1) * BigInt::from(n) - 1
}

/// Divisibility of `K_M + Σ_M`.
pub fn d_of(m: &Fibred4Manifold) -> Result<BigInt> {
    let v = m.canonical().checked_add(m.fibre())?;
    m.lattice().divisibility(&v)
}

/// `gcd(n − 2, d)`.
pub fn div_k_mn_formula(n: u64, d: &BigInt) -> BigInt {
    (BigInt::from(n) - BigInt::from(2)).gcd(d)
}

/// `gcd(m + n − 2, a((2g−1)n − 1), d)`.
pub fn div_k_mmnc_formula(m: u64, n: u64, a: u64, genus: u32, d: &BigInt) -> BigInt {
    let terms = [BigInt::from(m) + BigInt::from(n) - BigInt::from(2), BigInt::from(a) * rim_factor(genus, n), d.clone()];
    gcd_all(terms.iter())
}

fn cross_check(formula: &'static str, f: BigInt, direct: BigInt) -> Result<BigInt> {
    if f != direct {
        return Err(Error::FormulaMismatch { formula, formula_value: f.to_string(), direct_value: direct.to_string() });
    }
    Ok(f)
}

/// Divisibility of `K_{M(n)}`, by the gcd formula and checked against the
/// lattice of the constructed sum.
pub fn div_k_mn(m: &Fibred4Manifold, n: usize) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Precondition("n ≥ 1 required".into()));
    }
    let d = d_of(m)?;
    let formula = div_k_mn_formula(n as u64, &d);
    let built = iterated_fibre_sum(m, n)?;
    let x = built.manifold();
    let direct = x.lattice().divisibility(x.canonical())?;
    cross_check("gcd(n-2, d)", formula, direct)
}

/// Divisibility of `K_{M(m,n,C)}`, by the gcd formula and checked against
/// the lattice of the constructed sum.
pub fn div_k_mmnc(m: &Fibred4Manifold, m_count: usize, n_count: usize, gluing: &GluingClass) -> Result<BigInt> {
    let (data, sum) = canonical_mmnc_with_sum(m, m_count, n_count, gluing)?;
    let d = d_of(m)?;
    let formula = div_k_mmnc_formula(m_count as u64, n_count as u64, gluing.divisibility(), m.genus(), &d);
    let direct = sum.lattice().divisibility(&data.k_x)?;
    cross_check("gcd(m+n-2, a((2g-1)n-1), d)", formula, direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{e1, quintic_fibration};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn k_of_en_is_multiple_of_fibre() {
        let m = e1();
        for n in 1..=4usize {
            let c = canonical_mn(&m, n).unwrap();
            let built = iterated_fibre_sum(&m, n).unwrap();
            let x = built.manifold();
            let expected = x.fibre().scaled(&b(n as i64 - 2));
            assert_eq!(c.k_x, expected, "n = {n}");
            assert_eq!(&c.k_x, x.canonical());
        }
    }

    #[test]
    fn base_case_returns_k() {
        let q = quintic_fibration();
        assert_eq!(&canonical_mn(&q, 1).unwrap().k_x, q.canonical());
    }

    #[test]
    fn quintic_pair_sigma_coefficient() {
        let q = quintic_fibration();
        let c = gompf_canonical(&q, &q, &GluingClass::zero(6), &vec![BigInt::zero(); 12]).unwrap();
        assert_eq!(c.sigma_x, b(20));
        assert_eq!(c.b_x, b(10));
        let s = crate::fibresum::generalized_fibre_sum(&q, &q, &GluingClass::zero(6), &[-2; 12]).unwrap();
        let x = s.manifold();
        assert_eq!(x.pair(x.canonical(), x.section()).unwrap(), b(0));
        assert_eq!(x.pair(x.canonical(), x.fibre()).unwrap(), b(10));
    }

    #[test]
    fn rim_coefficients() {
        let q = quintic_fibration();
        let c = canonical_mmnc(&q, 1, 1, &GluingClass::first(6, 1)).unwrap();
        assert_eq!(c.r[0], b(-10));
        let c = canonical_mmnc(&e1(), 1, 2, &GluingClass::new(vec![3, 0])).unwrap();
        assert_eq!(c.r[0], b(-3));
    }

    #[test]
    fn divisibilities() {
        assert_eq!(d_of(&e1()).unwrap(), b(0));
        assert_eq!(d_of(&quintic_fibration()).unwrap(), b(2));
        assert_eq!(div_k_mn(&e1(), 5).unwrap(), b(3));
        let q = quintic_fibration();
        assert_eq!(div_k_mn(&q, 2).unwrap(), b(2));
        assert_eq!(div_k_mmnc(&q, 1, 1, &GluingClass::first(6, 1)).unwrap(), b(2));
        assert_eq!(div_k_mmnc(&q, 1, 2, &GluingClass::first(6, 1)).unwrap(), b(1));
    }
}
