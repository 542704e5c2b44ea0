//! Basic-class bookkeeping and the product formula for fibre sums.
//!
//! Signs are normalized by `sw(K) = +1`; the sign of `sw(−c)` relative to
//! `sw(c)` is `(−1)^((e+σ)/4)`. The global sign of the product formula is
//! not fixed, so sums are reported up to sign.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fibresum::{fibre_sum_step, FibreSumResult, IteratedSum, Splitting};
use crate::lattice::{LatticeId, LatticeVector};
use crate::manifold::Fibred4Manifold;

/// Which classes a [`BasicClassSet`] speaks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Every basic class is listed.
    Complete,
    /// Only classes with nonzero fibre pairing; classes orthogonal to the
    /// fibre are undetermined.
    FibreNonzero,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Complete => "complete",
            Scope::FibreNonzero => "fibre-nonzero; classes with zero fibre pairing undetermined",
        }
    }
}

/// `(class, sw)` pairs, sorted by class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicClassSet {
    lattice: LatticeId,
    entries: Vec<(LatticeVector, i64)>,
    negation_sign: i64,
    scope: Scope,
}

impl BasicClassSet {
    pub fn new(lattice: LatticeId, mut entries: Vec<(LatticeVector, i64)>, negation_sign: i64, scope: Scope) -> Self {
        entries.sort();
        entries.dedup_by(|a, b| a.0 == b.0);
        BasicClassSet { lattice, entries, negation_sign, scope }
    }

    pub fn lattice_id(&self) -> LatticeId {
        self.lattice
    }

    pub fn entries(&self) -> &[(LatticeVector, i64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    /// `sw(−c) / sw(c)`.
    pub fn negation_sign(&self) -> i64 {
        self.negation_sign
    }

    pub fn sw(&self, class: &LatticeVector) -> Option<i64> {
        self.entries
            .binary_search_by(|(c, _)| c.cmp(class))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn contains(&self, class: &LatticeVector) -> bool {
        self.sw(class).is_some()
    }

    /// Every `sw` value multiplied by `t`.
    pub fn scaled(&self, t: i64) -> Self {
        let entries = self.entries.iter().map(|(c, s)| (c.clone(), s * t)).collect();
        BasicClassSet { entries, ..self.clone() }
    }

    /// `(c, s) ∈ S ⇒ (−c, ±s) ∈ S`.
    pub fn is_negation_closed(&self) -> bool {
        self.entries
            .iter()
            .all(|(c, s)| self.sw(&c.negated()).is_some_and(|t| t == s * self.negation_sign || c.is_zero()))
    }

    fn filtered(&self, keep: impl Fn(&LatticeVector) -> Result<bool>) -> Result<Self> {
        let mut entries = Vec::new();
        for (c, s) in &self.entries {
            if keep(c)? {
                entries.push((c.clone(), *s));
            }
        }
        Ok(BasicClassSet { entries, ..self.clone() })
    }
}

/// `(−1)^((e+σ)/4)`.
pub fn negation_sign(euler: i64, sigma: i64) -> Result<i64> {
    let t = euler + sigma;
    if t % 4 != 0 {
        return Err(Error::Invariant(format!("e + σ = {t} is not divisible by 4")));
    }
    Ok(if (t / 4) % 2 == 0 { 1 } else { -1 })
}

/// Largest blow-up count enumerated.
pub const MAX_BLOWUPS: usize = 24;

/// `±(K' ± E₁ ± … ± E_r)` for a blow-up of a minimal surface of general
/// type. Classes with a `+K'` term carry `sw = +1`.
pub fn basic_classes_blowup(m: &Fibred4Manifold) -> Result<BasicClassSet> {
    if !m.minimal_general_type_base() {
        return Err(Error::Precondition(format!("{} is not flagged as a blow-up of a minimal surface of general type", m.name())));
    }
    if m.b2plus() <= 1 {
        return Err(Error::Precondition(format!("b₂⁺ = {} but b₂⁺ > 1 is required", m.b2plus())));
    }
    let ex = m.exceptional();
    if ex.len() > MAX_BLOWUPS {
        return Err(Error::Precondition(format!("{} exceptional classes exceed the limit {MAX_BLOWUPS}", ex.len())));
    }
    let sign = negation_sign(m.euler(), m.sigma())?;
    let k_prime = m.base_canonical();
    let mut entries = Vec::with_capacity(1 << (ex.len() + 1));
    for mask in 0u32..(1 << ex.len()) {
        let mut c = k_prime.clone();
        for (i, e) in ex.iter().enumerate() {
            c = if mask & (1 << i) == 0 { c.checked_add(e)? } else { c.checked_sub(e)? };
        }
        let neg = c.negated();
        entries.push((c, 1));
        entries.push((neg, sign));
    }
    Ok(BasicClassSet::new(m.lattice().id(), entries, sign, Scope::Complete))
}

/// Classes with `pair(class, fibre) = value`.
pub fn fibre_filter(m: &Fibred4Manifold, set: &BasicClassSet, value: &BigInt) -> Result<BasicClassSet> {
    set.filtered(|c| Ok(&m.pair(c, m.fibre())? == value))
}

/// Classes with `pair(class, fibre) = 2g − 2`, for `g ≥ 2`.
pub fn max_fibre_filter(m: &Fibred4Manifold, set: &BasicClassSet) -> Result<BasicClassSet> {
    if m.genus() < 2 {
        return Err(Error::Precondition("maximal fibre filter needs g ≥ 2".into()));
    }
    fibre_filter(m, set, &m.adjunction_value())
}

/// `k = p_M + p_N + Σ εᵢRᵢ + Σ sᵢSᵢ + b·B_X + β_X·Σ_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicDecomposition {
    pub p_m: Vec<BigInt>,
    pub p_n: Vec<BigInt>,
    pub eps: Vec<BigInt>,
    pub s_coeffs: Vec<BigInt>,
    pub fibre_coeff: BigInt,
    pub beta_x: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeMode {
    Any,
    /// Reject classes with a vanishing-surface component.
    BasicClass,
}

pub fn decompose_characteristic(
    x: &FibreSumResult,
    k: &LatticeVector,
    mode: DecomposeMode,
) -> Result<CharacteristicDecomposition> {
    if !x.lattice().is_characteristic(k)? {
        return Err(Error::NotCharacteristic);
    }
    let labels = x.labels();
    let c = k.coords();
    let pairs = labels.pair_count();
    let s_coeffs: Vec<BigInt> = (1..=pairs).map(|i| c[labels.s_index(i)].clone()).collect();
    if mode == DecomposeMode::BasicClass {
        if let Some(i) = s_coeffs.iter().position(|s| !s.is_zero()) {
            return Err(Error::VanishingComponent { index: i + 1 });
        }
    }
    Ok(CharacteristicDecomposition {
        p_m: c[labels.pm_range()].to_vec(),
        p_n: c[labels.pn_range()].to_vec(),
        eps: (1..=pairs).map(|i| c[labels.r_index(i)].clone()).collect(),
        s_coeffs,
        fibre_coeff: c[labels.b_index()].clone(),
        beta_x: c[labels.sigma_index()].clone(),
    })
}

impl CharacteristicDecomposition {
    pub fn reassemble(&self, x: &FibreSumResult) -> Result<LatticeVector> {
        let labels = x.labels();
        let mut v = Vec::with_capacity(labels.len());
        v.extend_from_slice(&self.p_m);
        v.extend_from_slice(&self.p_n);
        for (s, e) in self.s_coeffs.iter().zip(&self.eps) {
            v.push(s.clone());
            v.push(e.clone());
        }
        v.push(self.fibre_coeff.clone());
        v.push(self.beta_x.clone());
        x.lattice().vector(v)
    }
}

type Index = BTreeMap<Vec<BigInt>, Vec<(BigInt, i64)>>;

fn index(set: &BasicClassSet, split: &Splitting, t: &BigInt) -> Result<Index> {
    let mut idx: Index = BTreeMap::new();
    for (c, s) in set.entries() {
        let (p, x, y) = split.decompose(c)?;
        if &x == t {
            idx.entry(p).or_default().push((y, *s));
        }
    }
    Ok(idx)
}

/// Basic classes of both sides indexed by their `P` component, keeping
/// only those of the form `p + (2g−2)B + βΣ`.
pub struct MstContext {
    genus: u32,
    m: Index,
    n: Index,
}

impl MstContext {
    pub fn new(sm: &BasicClassSet, split_m: &Splitting, sn: &BasicClassSet, split_n: &Splitting) -> Result<Self> {
        let genus = split_m.manifold().genus();
        if genus < 2 {
            return Err(Error::Precondition("the product formula needs g ≥ 2".into()));
        }
        let t = split_m.manifold().adjunction_value();
        Ok(MstContext { genus, m: index(sm, split_m, &t)?, n: index(sn, split_n, &t)? })
    }

    /// `Σ sw(l₁)·sw(l₂)` over `l₁ ∈ 𝒦_M(k)`, `l₂ ∈ 𝒦_N(k)` with
    /// `β_X = β_M + β_N + 2`.
    pub fn sum(&self, k: &CharacteristicDecomposition) -> Result<i64> {
        let t = BigInt::from(2 * i64::from(self.genus) - 2);
        if k.fibre_coeff != t {
            return Err(Error::Precondition(format!(
                "B_X coefficient {} differs from 2g − 2 = {t}",
                k.fibre_coeff
            )));
        }
        if let Some(i) = k.s_coeffs.iter().position(|s| !s.is_zero()) {
            return Err(Error::VanishingComponent { index: i + 1 });
        }
        let (Some(lm), Some(ln)) = (self.m.get(&k.p_m), self.n.get(&k.p_n)) else {
            return Ok(0);
        };
        let mut total = 0i64;
        for (bm, sm) in lm {
            for (bn, sn) in ln {
                if bm + bn + 2 == k.beta_x {
                    total += sm * sn;
                }
            }
        }
        Ok(total)
    }
}

/// One-shot form of [`MstContext::sum`].
pub fn mst_sum(
    k: &CharacteristicDecomposition,
    sm: &BasicClassSet,
    split_m: &Splitting,
    sn: &BasicClassSet,
    split_n: &Splitting,
) -> Result<i64> {
    MstContext::new(sm, split_m, sn, split_n)?.sum(k)
}

/// A class with fibre pairing `2g − 2` and its product-formula value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub class: LatticeVector,
    pub mst: i64,
}

/// Candidates `p_M(l₁) + p_N(l₂) + (2g−2)B_X + βΣ_X` for `l₁ ∈ SM`,
/// `l₂ ∈ SN` of maximal fibre pairing and `β ∈ {β₀ − 2, β₀, β₀ + 2}` with
/// `β₀ = β_M + β_N + 2`, each evaluated by the product formula.
pub fn candidate_table(
    x: &FibreSumResult,
    sm: &BasicClassSet,
    sn: &BasicClassSet,
) -> Result<Vec<Candidate>> {
    let ctx = MstContext::new(sm, x.split_m(), sn, x.split_n())?;
    let t = x.manifold().adjunction_value();
    let pairs = x.labels().pair_count();
    let mut out: BTreeMap<LatticeVector, i64> = BTreeMap::new();
    for (pm, lm) in &ctx.m {
        for (pn, ln) in &ctx.n {
            for (bm, _) in lm {
                for (bn, _) in ln {
                    for shift in [-2i64, 0, 2] {
                        let dec = CharacteristicDecomposition {
                            p_m: pm.clone(),
                            p_n: pn.clone(),
                            eps: alloc::vec![BigInt::zero(); pairs],
                            s_coeffs: alloc::vec![BigInt::zero(); pairs],
                            fibre_coeff: t.clone(),
                            beta_x: bm + bn + 2 + shift,
                        };
                        let class = dec.reassemble(x)?;
                        if out.contains_key(&class) {
                            continue;
                        }
                        let value = ctx.sum(&dec)?;
                        out.insert(class, value);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().map(|(class, mst)| Candidate { class, mst }).collect())
}

fn pm_set(x: &Fibred4Manifold, k: &LatticeVector) -> Result<BasicClassSet> {
    let sign = negation_sign(x.euler(), x.sigma())?;
    Ok(BasicClassSet::new(x.lattice().id(), alloc::vec![(k.clone(), 1), (k.negated(), sign)], sign, Scope::FibreNonzero))
}

/// The basic classes of `M(n)` with nonzero fibre pairing: `±K_X`.
///
/// Built inductively from `M(k) = M #_Σ M(k−1)`; at every step each
/// candidate with fibre pairing `2g − 2` is evaluated by the product
/// formula and only `K_X` may survive.
pub fn basic_classes_mn_fibre_nonzero(m: &Fibred4Manifold, n: usize) -> Result<BasicClassSet> {
    Ok(basic_classes_mn_with_table(m, n)?.0)
}

/// As [`basic_classes_mn_fibre_nonzero`], also returning the candidate
/// table of the last step (empty for `n = 1`).
pub fn basic_classes_mn_with_table(m: &Fibred4Manifold, n: usize) -> Result<(BasicClassSet, Vec<Candidate>)> {
    if n < 1 {
        return Err(Error::Precondition("n ≥ 1 required".into()));
    }
    if m.genus() < 2 {
        return Err(Error::Precondition(format!("fibre genus {} but g ≥ 2 is required", m.genus())));
    }
    let all = basic_classes_blowup(m)?;
    let top = max_fibre_filter(m, &all)?;
    if top.entries() != [(m.canonical().clone(), 1)] {
        return Err(Error::Invariant(format!(
            "expected exactly K among classes of maximal fibre pairing, found {}",
            top.len()
        )));
    }
    let bottom = fibre_filter(m, &all, &-m.adjunction_value())?;
    let sm = BasicClassSet::new(
        all.lattice_id(),
        top.entries().iter().chain(bottom.entries()).cloned().collect(),
        all.negation_sign(),
        Scope::FibreNonzero,
    );
    let mut current = IteratedSum::Single(m.clone());
    let mut sn = sm.clone();
    let mut table = Vec::new();
    for _ in 2..=n {
        let next = fibre_sum_step(m, &current)?;
        let x = next.as_sum().ok_or_else(|| Error::Invariant("fibre sum step".into()))?;
        table = candidate_table(x, &sm, &sn)?;
        let k_x = x.manifold().canonical();
        for c in &table {
            let expected = if &c.class == k_x { 1 } else { 0 };
            if c.mst.abs() != expected {
                return Err(Error::Invariant(format!(
                    "product formula gives {} on a class that {} K_X",
                    c.mst,
                    if expected == 1 { "is" } else { "is not" }
                )));
            }
        }
        if !table.iter().any(|c| &c.class == k_x) {
            return Err(Error::Invariant("K_X missing from the candidate table".into()));
        }
        sn = pm_set(x.manifold(), k_x)?;
        current = next;
    }
    let set = if n == 1 { sm } else { sn };
    Ok((set, table))
}

/// `|L·Σ| ≤ 2g − 2` for every class.
pub fn satisfies_adjunction_bound(m: &Fibred4Manifold, set: &BasicClassSet) -> Result<bool> {
    let t = m.adjunction_value();
    for (c, _) in set.entries() {
        let p = m.pair(c, m.fibre())?;
        if p > t || p < -t.clone() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c²` for every class, which must equal `K²` for a blow-up set.
pub fn common_square(m: &Fibred4Manifold, set: &BasicClassSet) -> Result<Option<BigInt>> {
    let mut sq: Option<BigInt> = None;
    for (c, _) in set.entries() {
        let s = m.lattice().square(c)?;
        match &sq {
            None => sq = Some(s),
            Some(prev) if *prev != s => return Ok(None),
            _ => {}
        }
    }
    Ok(sq)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibresum::iterated_fibre_sum;
    use crate::manifold::{e1, quintic_fibration};

    #[test]
    fn quintic_blowup_enumeration() {
        let q = quintic_fibration();
        let s = basic_classes_blowup(&q).unwrap();
        assert_eq!(s.len(), 64);
        assert_eq!(common_square(&q, &s).unwrap(), Some(BigInt::zero()));
        assert!(s.is_negation_closed());
        assert!(satisfies_adjunction_bound(&q, &s).unwrap());
        for (c, _) in s.entries() {
            assert!(q.lattice().is_characteristic(c).unwrap());
        }
        let top = max_fibre_filter(&q, &s).unwrap();
        assert_eq!(top.entries(), [(q.canonical().clone(), 1)]);
        let low = fibre_filter(&q, &s, &BigInt::from(-10)).unwrap();
        assert_eq!(low.len(), 1);
        assert_eq!(low.entries()[0].0, q.canonical().negated());
    }

    #[test]
    fn gates() {
        assert!(matches!(basic_classes_blowup(&e1()), Err(Error::Precondition(_))));
        assert!(basic_classes_mn_fibre_nonzero(&e1(), 2).is_err());
    }

    #[test]
    fn quintic_m2_and_m3() {
        let q = quintic_fibration();
        for n in [2usize, 3] {
            let (set, table) = basic_classes_mn_with_table(&q, n).unwrap();
            let x = iterated_fibre_sum(&q, n).unwrap();
            let k = x.manifold().canonical();
            assert_eq!(set.len(), 2);
            assert_eq!(set.sw(k), Some(1));
            assert!(set.contains(&k.negated()));
            assert_eq!(table.iter().filter(|c| c.mst != 0).count(), 1);
            assert_eq!(table.len(), 3);
        }
    }

    #[test]
    fn decomposition_of_k_in_m2() {
        let q = quintic_fibration();
        let x = iterated_fibre_sum(&q, 2).unwrap().into_sum().unwrap();
        let d = decompose_characteristic(&x, x.manifold().canonical(), DecomposeMode::BasicClass).unwrap();
        assert!(d.eps.iter().all(Zero::is_zero));
        assert_eq!(d.fibre_coeff, BigInt::from(10));
        assert_eq!(d.beta_x, BigInt::from(20));
        assert_eq!(&d.reassemble(&x).unwrap(), x.manifold().canonical());
        let s1 = x.lattice().basis_vector(x.labels().s_index(1)).scaled(&BigInt::from(2));
        let k = x.manifold().canonical().checked_add(&s1).unwrap();
        assert!(matches!(
            decompose_characteristic(&x, &k, DecomposeMode::BasicClass),
            Err(Error::VanishingComponent { index: 1 })
        ));
        let d = decompose_characteristic(&x, &k, DecomposeMode::Any).unwrap();
        assert!(matches!(
            mst_sum(&d, &basic_classes_blowup(&q).unwrap(), x.split_m(), &basic_classes_blowup(&q).unwrap(), x.split_n()),
            Err(Error::VanishingComponent { index: 1 })
        ));
    }
}
