//! Integral symmetric bilinear forms.
//!
//! An [`IntegralLattice`] is a free abelian group of finite rank with a
//! symmetric integer Gram matrix. [`LatticeVector`]s remember which lattice
//! they live in, so pairing vectors from different lattices is an error
//! rather than silent nonsense.

mod classify;
mod linalg;

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hasher;
use core::ops::Add;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::arith::gcd_all;
use crate::error::{Error, Result};

pub use classify::{Decomposition, FormDescriptor};
use linalg::IntegerKernel;

/// Fingerprint of a Gram matrix. Equal Gram matrices give equal ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeId(u64);

impl LatticeId {
    pub fn value(self) -> u64 {
        self.0
    }
}

/// FNV-1a, enough to tell lattices apart.
struct Fnv(u64);

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 ^= u64::from(*b);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
}

fn fingerprint(rank: usize, gram: &[BigInt]) -> LatticeId {
    let mut h = Fnv(0xcbf2_9ce4_8422_2325);
    h.write_u64(rank as u64);
    for x in gram {
        h.write_u8(match x.sign() {
            Sign::Minus => 1,
            Sign::NoSign => 0,
            Sign::Plus => 2,
        });
        for d in x.iter_u64_digits() {
            h.write_u64(d);
        }
        h.write_u8(0xff);
    }
    LatticeId(h.finish())
}

/// Counts of positive, negative and zero diagonal entries after
/// diagonalization over Q.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
}

impl Inertia {
    pub fn new(b_plus: usize, b_minus: usize, b_zero: usize) -> Self {
        Inertia { b_plus, b_minus, b_zero }
    }

    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }

    pub fn rank(&self) -> usize {
        self.b_plus + self.b_minus + self.b_zero
    }

    pub fn swapped(self) -> Self {
        Inertia { b_plus: self.b_minus, b_minus: self.b_plus, b_zero: self.b_zero }
    }

    fn checked_sub(self, other: Inertia) -> Option<Inertia> {
        Some(Inertia {
            b_plus: self.b_plus.checked_sub(other.b_plus)?,
            b_minus: self.b_minus.checked_sub(other.b_minus)?,
            b_zero: self.b_zero.checked_sub(other.b_zero)?,
        })
    }
}

impl Add for Inertia {
    type Output = Inertia;

    fn add(self, o: Inertia) -> Inertia {
        Inertia {
            b_plus: self.b_plus + o.b_plus,
            b_minus: self.b_minus + o.b_minus,
            b_zero: self.b_zero + o.b_zero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A free abelian group with a symmetric integer pairing.
///
/// The determinant and inertia are cached when they are known exactly at
/// construction time (standard blocks, direct sums, orthogonal
/// complements of unimodular spans); otherwise they are computed on demand.
/// [`IntegralLattice::compute_inertia`] and
/// [`IntegralLattice::compute_determinant`] always recompute.
#[derive(Clone, Debug)]
pub struct IntegralLattice {
    rank: usize,
    gram: Vec<BigInt>,
    id: LatticeId,
    det: Option<BigInt>,
    inertia: Option<Inertia>,
}

impl PartialEq for IntegralLattice {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.gram == other.gram
    }
}

impl Eq for IntegralLattice {}

impl IntegralLattice {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = rows.len();
        let mut gram = Vec::with_capacity(rank * rank);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != rank {
                return Err(Error::NotSquare { rows: rank, row, len: entries.len() });
            }
            gram.extend(entries);
        }
        Self::from_flat(rank, gram)
    }

    /// Row-major Gram matrix of size `rank × rank`.
    pub fn from_flat(rank: usize, gram: Vec<BigInt>) -> Result<Self> {
        if gram.len() != rank * rank {
            return Err(Error::NotSquare { rows: rank, row: gram.len() / rank.max(1), len: gram.len() % rank.max(1) });
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if gram[i * rank + j] != gram[j * rank + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self::trusted(rank, gram, None, None))
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    fn trusted(rank: usize, gram: Vec<BigInt>, det: Option<BigInt>, inertia: Option<Inertia>) -> Self {
        let id = fingerprint(rank, &gram);
        IntegralLattice { rank, gram, id, det, inertia }
    }

    /// `⟨±1⟩`.
    pub fn unit(positive: bool) -> Self {
        let (v, inertia) = if positive { (1, Inertia::new(1, 0, 0)) } else { (-1, Inertia::new(0, 1, 0)) };
        Self::trusted(1, vec![BigInt::from(v)], Some(BigInt::from(v)), Some(inertia))
    }

    /// `p⟨1⟩ ⊕ q⟨−1⟩`.
    pub fn diagonal_pm(p: usize, q: usize) -> Self {
        let entries: Vec<i64> = core::iter::repeat_n(1, p).chain(core::iter::repeat_n(-1, q)).collect();
        let det = if q.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let mut l = Self::diagonal(&entries);
        l.det = Some(det);
        l.inertia = Some(Inertia::new(p, q, 0));
        l
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut gram = vec![BigInt::zero(); n * n];
        for (i, &e) in entries.iter().enumerate() {
            gram[i * n + i] = BigInt::from(e);
        }
        Self::trusted(n, gram, None, None)
    }

    /// Hyperbolic plane `H = [[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        Self::pair_block(0)
    }

    /// `[[s, 1], [1, 0]]`: determinant −1, inertia (1,1,0) for every `s`.
    pub fn pair_block(square: i64) -> Self {
        let gram = vec![BigInt::from(square), BigInt::one(), BigInt::one(), BigInt::zero()];
        Self::trusted(2, gram, Some(-BigInt::one()), Some(Inertia::new(1, 1, 0)))
    }

    /// The E8 root lattice from its Dynkin diagram, scaled by `±1`.
    pub fn e8(positive: bool) -> Self {
        // chain 0-1-2-3-4-5-6, node 7 attached to node 4
        const EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let s: i64 = if positive { 1 } else { -1 };
        let mut gram = vec![BigInt::zero(); 64];
        for i in 0..8 {
            gram[i * 8 + i] = BigInt::from(2 * s);
        }
        for (a, b) in EDGES {
            gram[a * 8 + b] = BigInt::from(-s);
            gram[b * 8 + a] = BigInt::from(-s);
        }
        let inertia = if positive { Inertia::new(8, 0, 0) } else { Inertia::new(0, 8, 0) };
        Self::trusted(8, gram, Some(BigInt::one()), Some(inertia))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i * self.rank + j]
    }

    pub fn gram_flat(&self) -> &[BigInt] {
        &self.gram
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        self.gram.chunks(self.rank.max(1)).take(self.rank)
    }

    pub fn vector(&self, coords: Vec<BigInt>) -> Result<LatticeVector> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: coords.len() });
        }
        Ok(LatticeVector { lattice: self.id, coords })
    }

    pub fn vector_i64(&self, coords: &[i64]) -> Result<LatticeVector> {
        self.vector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero_vector(&self) -> LatticeVector {
        LatticeVector { lattice: self.id, coords: vec![BigInt::zero(); self.rank] }
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut v = self.zero_vector();
        v.coords[i] = BigInt::one();
        v
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.lattice != self.id {
            return Err(Error::LatticeMismatch);
        }
        if v.coords.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.coords.len() });
        }
        Ok(())
    }

    /// `vᵀ G w`.
    pub fn pair(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
        self.check(v)?;
        self.check(w)?;
        let nz_w: Vec<(usize, &BigInt)> = w.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
        let mut acc = BigInt::zero();
        for (i, x) in v.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let row = &self.gram[i * self.rank..(i + 1) * self.rank];
            let mut inner = BigInt::zero();
            for &(j, y) in &nz_w {
                let g = &row[j];
                if !g.is_zero() {
                    inner += g * y;
                }
            }
            acc += x * inner;
        }
        Ok(acc)
    }

    pub fn square(&self, v: &LatticeVector) -> Result<BigInt> {
        self.pair(v, v)
    }

    /// `G v`, the pairings of `v` with every basis vector.
    pub fn pairings_with_basis(&self, v: &LatticeVector) -> Result<Vec<BigInt>> {
        self.check(v)?;
        let nz: Vec<(usize, &BigInt)> = v.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        Ok(self
            .rows()
            .map(|row| {
                let mut acc = BigInt::zero();
                for &(j, x) in &nz {
                    if !row[j].is_zero() {
                        acc += &row[j] * x;
                    }
                }
                acc
            })
            .collect())
    }

    /// The lattice with negated form.
    pub fn negated(&self) -> Self {
        let gram = self.gram.iter().map(|x| -x).collect();
        let det = self.det.as_ref().map(|d| if self.rank.is_multiple_of(2) { d.clone() } else { -d });
        Self::trusted(self.rank, gram, det, self.inertia.map(Inertia::swapped))
    }

    /// Orthogonal direct sum with a block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &Self) -> Self {
        direct_sum_all([self, other])
    }

    /// Gram matrix of the given vectors.
    pub fn restrict(&self, vectors: &[LatticeVector]) -> Result<Self> {
        let images: Vec<Vec<BigInt>> = vectors.iter().map(|v| self.pairings_with_basis(v)).collect::<Result<_>>()?;
        let k = vectors.len();
        let mut gram = Vec::with_capacity(k * k);
        for v in vectors {
            for img in &images {
                let mut acc = BigInt::zero();
                for (x, y) in v.coords.iter().zip(img) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                gram.push(acc);
            }
        }
        Ok(Self::trusted(k, gram, None, None))
    }

    /// `(b_plus, b_minus, b_zero)`; uses the cached value when present.
    pub fn signature(&self) -> Inertia {
        self.inertia.unwrap_or_else(|| self.compute_inertia())
    }

    /// Inertia by exact congruence diagonalization, ignoring any cache.
    pub fn compute_inertia(&self) -> Inertia {
        linalg::inertia_of(self.rank, &self.gram)
    }

    pub fn determinant(&self) -> BigInt {
        match &self.det {
            Some(d) => d.clone(),
            None => self.compute_determinant(),
        }
    }

    pub fn compute_determinant(&self) -> BigInt {
        linalg::determinant_of(self.rank, &self.gram)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Even iff every diagonal entry is even.
    pub fn parity(&self) -> Parity {
        let odd = (0..self.rank).any(|i| self.entry(i, i).bit(0));
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `k·e_i ≡ e_i·e_i (mod 2)` for every basis vector.
    pub fn is_characteristic(&self, k: &LatticeVector) -> Result<bool> {
        let images = self.pairings_with_basis(k)?;
        Ok(images.iter().enumerate().all(|(i, x)| x.bit(0) == self.entry(i, i).bit(0)))
    }

    /// gcd of `v·w` over all `w`; zero iff `v = 0`. Requires unimodularity,
    /// under which the gcd over basis pairings is the full divisibility.
    pub fn divisibility(&self, v: &LatticeVector) -> Result<BigInt> {
        self.require_unimodular()?;
        let images = self.pairings_with_basis(v)?;
        Ok(gcd_all(&images))
    }

    fn require_unimodular(&self) -> Result<()> {
        let det = self.determinant();
        if det.abs().is_one() {
            Ok(())
        } else {
            Err(Error::NotUnimodular { det: det.to_string() })
        }
    }

    /// Integer basis of the orthogonal complement of a unimodular span.
    pub fn orthogonal_complement(&self, span: &[LatticeVector]) -> Result<Complement> {
        self.require_unimodular()?;
        let span_lattice = self.restrict(span)?;
        let span_det = span_lattice.compute_determinant();
        if span_det.is_zero() {
            return Err(Error::DependentSpan);
        }
        if !span_det.abs().is_one() {
            return Err(Error::SpanNotUnimodular { det: span_det.to_string() });
        }
        let rows: Vec<Vec<BigInt>> = span.iter().map(|s| self.pairings_with_basis(s)).collect::<Result<_>>()?;
        let kernel = IntegerKernel::new(&rows, self.rank);
        if kernel.rank_of_input() != span.len() {
            return Err(Error::DependentSpan);
        }
        let basis: Vec<LatticeVector> =
            kernel.basis().into_iter().map(|c| LatticeVector { lattice: self.id, coords: c }).collect();
        let restricted = self.restrict(&basis)?;
        // L = P ⊥ span with span unimodular, so det and inertia split.
        let det = self.determinant() / &span_det;
        let inertia = self.signature().checked_sub(span_lattice.compute_inertia());
        let gram = IntegralLattice::trusted(restricted.rank, restricted.gram, Some(det), inertia);
        Ok(Complement { ambient: self.id, ambient_rank: self.rank, basis, gram, kernel })
    }

    /// Indefinite unimodular classification into `p⟨1⟩ ⊕ q⟨−1⟩` or
    /// `a·E8(±1) ⊕ b·H`.
    pub fn classify(&self) -> Result<FormDescriptor> {
        classify::classify(self)
    }
}

/// Orthogonal direct sum of any number of lattices.
pub fn direct_sum_all<'a, I>(parts: I) -> IntegralLattice
where
    I: IntoIterator<Item = &'a IntegralLattice>,
{
    let parts: Vec<&IntegralLattice> = parts.into_iter().collect();
    let n: usize = parts.iter().map(|p| p.rank).sum();
    let mut gram = vec![BigInt::zero(); n * n];
    let mut off = 0;
    let mut det = Some(BigInt::one());
    let mut inertia = Some(Inertia::default());
    for p in &parts {
        for i in 0..p.rank {
            for j in 0..p.rank {
                let x = p.entry(i, j);
                if !x.is_zero() {
                    gram[(off + i) * n + off + j] = x.clone();
                }
            }
        }
        off += p.rank;
        det = match (det, &p.det) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        inertia = match (inertia, p.inertia) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    IntegralLattice::trusted(n, gram, det, inertia)
}

/// Free function form of [`IntegralLattice::direct_sum`].
pub fn direct_sum(a: &IntegralLattice, b: &IntegralLattice) -> IntegralLattice {
    a.direct_sum(b)
}

/// Integer coordinate vector tagged with its ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    lattice: LatticeId,
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn lattice_id(&self) -> LatticeId {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice || self.coords.len() != other.coords.len() {
            Err(Error::LatticeMismatch)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(LatticeVector { lattice: self.lattice, coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(LatticeVector { lattice: self.lattice, coords })
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        LatticeVector { lattice: self.lattice, coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn negated(&self) -> Self {
        LatticeVector { lattice: self.lattice, coords: self.coords.iter().map(|x| -x).collect() }
    }

    /// `Σ cᵢ vᵢ` over vectors of one lattice.
    pub fn combination(terms: &[(BigInt, &LatticeVector)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or(Error::LatticeMismatch)?;
        let mut out = LatticeVector { lattice: first.lattice, coords: vec![BigInt::zero(); first.coords.len()] };
        for (c, v) in terms {
            out.same(v)?;
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.coords.iter_mut().zip(&v.coords) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }
}

/// Orthogonal complement of a unimodular span, with its integer basis and
/// the coordinate map back from the ambient lattice.
#[derive(Clone, Debug)]
pub struct Complement {
    ambient: LatticeId,
    ambient_rank: usize,
    basis: Vec<LatticeVector>,
    gram: IntegralLattice,
    kernel: IntegerKernel,
}

impl Complement {
    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    /// The complement as a lattice in its own right.
    pub fn lattice(&self) -> &IntegralLattice {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// True when the basis is the first `rank` ambient unit vectors in order.
    pub fn is_prefix(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, v)| {
            v.coords.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// Coordinates of an ambient vector in the complement basis.
    pub fn coordinates(&self, v: &LatticeVector) -> Result<Vec<BigInt>> {
        if v.lattice != self.ambient {
            return Err(Error::LatticeMismatch);
        }
        self.kernel.coordinates(&v.coords).ok_or(Error::NotInComplement)
    }

    /// The ambient vector with the given complement coordinates.
    pub fn embed(&self, coords: &[BigInt]) -> Result<LatticeVector> {
        if coords.len() != self.basis.len() {
            return Err(Error::DimensionMismatch { expected: self.basis.len(), got: coords.len() });
        }
        let mut out = LatticeVector { lattice: self.ambient, coords: vec![BigInt::zero(); self.ambient_rank] };
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.coords.iter_mut().zip(&b.coords) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }
}
