//! Generalized fibre sums in normal form.
//!
//! The sum `X = M #_Σ N` of two fibred manifolds of equal genus `g` gets
//! the basis
//!
//! ```text
//! [ P(M) | P(N) | S₁ R₁ … S₂g R₂g | B Σ ]
//! ```
//!
//! where `P(·)` is the orthogonal complement of `span{Σ, B}`, each
//! `(Sᵢ, Rᵢ)` is a vanishing surface with its dual rim torus (Gram
//! `[[Sᵢ², 1], [1, 0]]`) and `(B, Σ)` has Gram `[[B_M² + B_N², 1], [1, 0]]`.
//! All summands are simply connected, so the kernel of
//! `H₁(Σ) → H₁(M) ⊕ H₁(N)` is everything and there are exactly `2g` pairs.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::gcd_i64;
use crate::canonical::{self, CanonicalData};
use crate::error::{Error, Result};
use crate::lattice::{direct_sum_all, Complement, IntegralLattice, LatticeVector};
use crate::manifold::{FibrationData, Fibred4Manifold};

/// The class `C ∈ H¹(Σ; Z)` of a gluing map, as `aᵢ = ⟨C, αᵢ⟩` against a
/// fixed basis `α₁, …, α₂g` of `H₁(Σ; Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingClass {
    a: Vec<i64>,
}

impl GluingClass {
    pub fn new(a: Vec<i64>) -> Self {
        GluingClass { a }
    }

    pub fn zero(genus: u32) -> Self {
        GluingClass { a: vec![0; 2 * genus as usize] }
    }

    /// `a·e₁` for a genus-`g` fibre.
    pub fn first(genus: u32, a: i64) -> Self {
        let mut c = Self::zero(genus);
        if let Some(x) = c.a.first_mut() {
            *x = a;
        }
        c
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    /// gcd of the entries; zero for `C = 0`.
    pub fn divisibility(&self) -> u64 {
        gcd_i64(&self.a)
    }

    pub(crate) fn check(&self, genus: u32) -> Result<()> {
        let expected = 2 * genus as usize;
        if self.a.len() != expected {
            return Err(Error::GluingLength { expected, got: self.a.len() });
        }
        Ok(())
    }
}

/// Role of one basis vector of a normal-form basis. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    PM(usize),
    PN(usize),
    S(usize),
    R(usize),
    B,
    Sigma,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::PM(j) => write!(f, "PM{j}"),
            Role::PN(j) => write!(f, "PN{j}"),
            Role::S(i) => write!(f, "S{i}"),
            Role::R(i) => write!(f, "R{i}"),
            Role::B => f.write_str("B"),
            Role::Sigma => f.write_str("Sigma"),
        }
    }
}

impl Role {
    /// Inverse of the `Display` tag.
    pub fn parse(tag: &str) -> Option<Role> {
        match tag {
            "B" => return Some(Role::B),
            "Sigma" => return Some(Role::Sigma),
            _ => {}
        }
        let (ctor, digits): (fn(usize) -> Role, &str) = if let Some(d) = tag.strip_prefix("PM") {
            (Role::PM, d)
        } else if let Some(d) = tag.strip_prefix("PN") {
            (Role::PN, d)
        } else if let Some(d) = tag.strip_prefix('S') {
            (Role::S, d)
        } else {
            (Role::R, tag.strip_prefix('R')?)
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
            return None;
        }
        digits.parse().ok().map(ctor)
    }
}

/// Roles of the basis vectors of a fibre sum, in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalFormLabels {
    roles: Vec<Role>,
    pm: usize,
    pn: usize,
    pairs: usize,
}

impl NormalFormLabels {
    pub fn new(pm: usize, pn: usize, pairs: usize) -> Self {
        let mut roles = Vec::with_capacity(pm + pn + 2 * pairs + 2);
        roles.extend((1..=pm).map(Role::PM));
        roles.extend((1..=pn).map(Role::PN));
        for i in 1..=pairs {
            roles.push(Role::S(i));
            roles.push(Role::R(i));
        }
        roles.push(Role::B);
        roles.push(Role::Sigma);
        NormalFormLabels { roles, pm, pn, pairs }
    }

    /// Rebuild from a role list, checking it has the canonical order.
    pub fn from_roles(roles: &[Role]) -> Option<Self> {
        let pm = roles.iter().filter(|r| matches!(r, Role::PM(_))).count();
        let pn = roles.iter().filter(|r| matches!(r, Role::PN(_))).count();
        let pairs = roles.iter().filter(|r| matches!(r, Role::S(_))).count();
        let labels = Self::new(pm, pn, pairs);
        (labels.roles == roles).then_some(labels)
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn pm_range(&self) -> Range<usize> {
        0..self.pm
    }

    pub fn pn_range(&self) -> Range<usize> {
        self.pm..self.pm + self.pn
    }

    pub fn pair_count(&self) -> usize {
        self.pairs
    }

    /// Basis index of `Sᵢ`, 1-based `i`.
    pub fn s_index(&self, i: usize) -> usize {
        self.pm + self.pn + 2 * (i - 1)
    }

    pub fn r_index(&self, i: usize) -> usize {
        self.s_index(i) + 1
    }

    pub fn b_index(&self) -> usize {
        self.roles.len() - 2
    }

    pub fn sigma_index(&self) -> usize {
        self.roles.len() - 1
    }
}

/// `H₂(M) = P(M) ⊥ span{Σ, B}`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Splitting {
    inner: Arc<SplittingInner>,
}

#[derive(Debug)]
struct SplittingInner {
    manifold: Fibred4Manifold,
    complement: Complement,
}

impl Splitting {
    pub fn new(m: &Fibred4Manifold) -> Result<Self> {
        let complement = m.lattice().orthogonal_complement(&[m.fibre().clone(), m.section().clone()])?;
        Ok(Splitting { inner: Arc::new(SplittingInner { manifold: m.clone(), complement }) })
    }

    pub fn manifold(&self) -> &Fibred4Manifold {
        &self.inner.manifold
    }

    pub fn complement(&self) -> &Complement {
        &self.inner.complement
    }

    /// The lattice `P(M)`.
    pub fn p_lattice(&self) -> &IntegralLattice {
        self.inner.complement.lattice()
    }

    pub fn p_rank(&self) -> usize {
        self.inner.complement.rank()
    }

    /// Write `v = p + x·B + y·Σ` with `p ∈ P(M)`; returns `(coords of p, x, y)`.
    pub fn decompose(&self, v: &LatticeVector) -> Result<(Vec<BigInt>, BigInt, BigInt)> {
        let m = &self.inner.manifold;
        let x = m.pair(v, m.fibre())?;
        let y = m.pair(v, m.section())? - &x * m.section_square();
        let p = LatticeVector::combination(&[
            (BigInt::from(1), v),
            (-x.clone(), m.section()),
            (-y.clone(), m.fibre()),
        ])?;
        Ok((self.inner.complement.coordinates(&p)?, x, y))
    }

    /// `p + x·B + y·Σ` back in `H₂(M)`.
    pub fn recompose(&self, p: &[BigInt], x: &BigInt, y: &BigInt) -> Result<LatticeVector> {
        let m = &self.inner.manifold;
        let p = self.inner.complement.embed(p)?;
        LatticeVector::combination(&[(BigInt::from(1), &p), (x.clone(), m.section()), (y.clone(), m.fibre())])
    }
}

/// The sum `X` with its normal-form bookkeeping.
#[derive(Clone, Debug)]
pub struct FibreSumResult {
    manifold: Fibred4Manifold,
    labels: NormalFormLabels,
    summand_count: usize,
    gluing: GluingClass,
    s_squares: Vec<i64>,
    canonical: CanonicalData,
    split_m: Splitting,
    split_n: Splitting,
    copies: Vec<Range<usize>>,
    rim_pairs: Vec<(usize, usize)>,
}

impl FibreSumResult {
    pub fn manifold(&self) -> &Fibred4Manifold {
        &self.manifold
    }

    pub fn into_manifold(self) -> Fibred4Manifold {
        self.manifold
    }

    pub fn labels(&self) -> &NormalFormLabels {
        &self.labels
    }

    /// Number of original building blocks summed together.
    pub fn summand_count(&self) -> usize {
        self.summand_count
    }

    pub fn gluing(&self) -> &GluingClass {
        &self.gluing
    }

    pub fn s_squares(&self) -> &[i64] {
        &self.s_squares
    }

    pub fn canonical(&self) -> &CanonicalData {
        &self.canonical
    }

    pub fn split_m(&self) -> &Splitting {
        &self.split_m
    }

    pub fn split_n(&self) -> &Splitting {
        &self.split_n
    }

    /// Basis ranges of the `P(Mᵢ)` block of every original building block,
    /// nested sums included.
    pub fn copies(&self) -> &[Range<usize>] {
        &self.copies
    }

    /// `(Sᵢ, Rᵢ)` index pairs of every vanishing-surface/rim-torus pair,
    /// nested sums included.
    pub fn rim_pairs(&self) -> &[(usize, usize)] {
        &self.rim_pairs
    }

    pub fn lattice(&self) -> &IntegralLattice {
        self.manifold.lattice()
    }

    /// Check the normal-form block structure against the Gram matrix: the
    /// `P(M)`, `P(N)` blocks reproduce the summands' complements, every
    /// `(Sᵢ, Rᵢ)` block is `[[Sᵢ², 1], [1, 0]]`, the `(B, Σ)` block is
    /// `[[B_M² + B_N², 1], [1, 0]]`, and all cross terms vanish.
    pub fn verify_structure(&self) -> Result<()> {
        let l = self.lattice();
        let labels = &self.labels;
        let mut block_of = vec![0usize; l.rank()];
        let mut expected = vec![BigInt::zero(); l.rank() * l.rank()];
        let n = l.rank();
        let mut place = |start: usize, block: &IntegralLattice, id: usize, block_of: &mut [usize]| {
            for i in 0..block.rank() {
                block_of[start + i] = id;
                for j in 0..block.rank() {
                    expected[(start + i) * n + start + j] = block.entry(i, j).clone();
                }
            }
        };
        place(0, self.split_m.p_lattice(), 0, &mut block_of);
        place(labels.pn_range().start, self.split_n.p_lattice(), 1, &mut block_of);
        for (i, &s) in self.s_squares.iter().enumerate() {
            place(labels.s_index(i + 1), &IntegralLattice::pair_block(s), 2 + i, &mut block_of);
        }
        let b_square = self.split_m.manifold().section_square() + self.split_n.manifold().section_square();
        let b_square = b_square.to_i64().ok_or_else(|| Error::Invariant("B² out of range".into()))?;
        place(labels.b_index(), &IntegralLattice::pair_block(b_square), 2 + self.s_squares.len(), &mut block_of);
        if l.gram_flat() != expected.as_slice() {
            let bad = (0..n * n).find(|&k| l.gram_flat()[k] != expected[k]).unwrap_or(0);
            let (i, j) = (bad / n, bad % n);
            return Err(Error::Invariant(format!(
                "normal form violated at ({}, {}) [{} / {}]",
                i,
                j,
                labels.roles()[i],
                labels.roles()[j]
            )));
        }
        Ok(())
    }
}

/// Copy ranges and rim pairs, both in `P` coordinates.
type Blocks = (Vec<Range<usize>>, Vec<(usize, usize)>);

/// `M(n)`: either `M` itself (`n = 1`) or an honest fibre sum.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum IteratedSum {
    Single(Fibred4Manifold),
    Sum(Box<FibreSumResult>),
}

impl IteratedSum {
    pub fn manifold(&self) -> &Fibred4Manifold {
        match self {
            IteratedSum::Single(m) => m,
            IteratedSum::Sum(s) => s.manifold(),
        }
    }

    pub fn as_sum(&self) -> Option<&FibreSumResult> {
        match self {
            IteratedSum::Single(_) => None,
            IteratedSum::Sum(s) => Some(s),
        }
    }

    pub fn into_sum(self) -> Option<FibreSumResult> {
        match self {
            IteratedSum::Single(_) => None,
            IteratedSum::Sum(s) => Some(*s),
        }
    }

    pub fn summand_count(&self) -> usize {
        match self {
            IteratedSum::Single(_) => 1,
            IteratedSum::Sum(s) => s.summand_count,
        }
    }
}

/// How to pick `Sᵢ²`.
#[derive(Clone, Debug)]
pub enum SquareChoice<'a> {
    Given(&'a [i64]),
    /// `−2` when `rᵢ = K_X·Sᵢ` is even, `−1` when odd.
    ParityDefault,
}

/// One side of a sum together with the nested structure it carries.
struct Summand<'a> {
    manifold: &'a Fibred4Manifold,
    count: usize,
    copies: Vec<Range<usize>>,
    rim_pairs: Vec<(usize, usize)>,
    /// Splitting to reuse when already known.
    split: Option<Splitting>,
}

impl<'a> Summand<'a> {
    fn plain(m: &'a Fibred4Manifold) -> Self {
        Summand { manifold: m, count: 1, copies: Vec::new(), rim_pairs: Vec::new(), split: None }
    }

    fn of(it: &'a IteratedSum) -> Self {
        match it {
            IteratedSum::Single(m) => Self::plain(m),
            IteratedSum::Sum(s) => Summand {
                manifold: s.manifold(),
                count: s.summand_count,
                copies: s.copies.clone(),
                rim_pairs: s.rim_pairs.clone(),
                split: None,
            },
        }
    }

    /// Blocks in `P` coordinates. Nested ranges are only meaningful when
    /// `P` is the coordinate prefix, which holds for normal-form sums.
    fn blocks(&self, split: &Splitting) -> Result<Blocks> {
        if self.copies.is_empty() {
            return Ok((core::iter::once(0..split.p_rank()).collect(), Vec::new()));
        }
        if !split.complement().is_prefix() {
            return Err(Error::Invariant("nested sum without prefix complement".into()));
        }
        Ok((self.copies.clone(), self.rim_pairs.clone()))
    }
}

fn shift(ranges: &[Range<usize>], by: usize) -> impl Iterator<Item = Range<usize>> + '_ {
    ranges.iter().map(move |r| r.start + by..r.end + by)
}

/// Parity-forced `Sᵢ²` for the given `rᵢ`.
pub fn parity_default_squares(r: &[BigInt]) -> Vec<i64> {
    r.iter().map(|x| if x.is_even() { -2 } else { -1 }).collect()
}

fn sum_impl(
    name: String,
    m: Summand<'_>,
    n: Summand<'_>,
    gluing: &GluingClass,
    squares: SquareChoice<'_>,
    k_x0_s: &[BigInt],
) -> Result<FibreSumResult> {
    let (mm, nn) = (m.manifold, n.manifold);
    if mm.genus() != nn.genus() {
        return Err(Error::GenusMismatch { left: mm.genus(), right: nn.genus() });
    }
    let g = mm.genus();
    let c = 2 * g as usize;
    gluing.check(g)?;
    if k_x0_s.len() != c {
        return Err(Error::Precondition(format!("K_X0·S has {} entries, expected 2g = {c}", k_x0_s.len())));
    }
    let split_m = match m.split.clone() {
        Some(s) => s,
        None => Splitting::new(mm)?,
    };
    let split_n = match n.split.clone() {
        Some(s) => s,
        None => Splitting::new(nn)?,
    };
    let parts = canonical::gompf_components(&split_m, &split_n, gluing, k_x0_s)?;
    let s_squares = match squares {
        SquareChoice::Given(s) => {
            if s.len() != c {
                return Err(Error::Precondition(format!("{} vanishing-surface squares, expected 2g = {c}", s.len())));
            }
            for (i, (&sq, r)) in s.iter().zip(&parts.r).enumerate() {
                if (BigInt::from(sq) - r).is_odd() {
                    return Err(Error::SquareParity { index: i + 1, square: sq, r: alloc::string::ToString::to_string(r) });
                }
            }
            s.to_vec()
        }
        SquareChoice::ParityDefault => parity_default_squares(&parts.r),
    };
    let b_square = split_m.manifold().section_square() + split_n.manifold().section_square();
    let b_square = b_square.to_i64().ok_or_else(|| Error::Precondition("B² out of range".into()))?;

    let pm = split_m.p_rank();
    let pn = split_n.p_rank();
    let mut blocks: Vec<IntegralLattice> = Vec::with_capacity(c + 3);
    blocks.push(split_m.p_lattice().clone());
    blocks.push(split_n.p_lattice().clone());
    blocks.extend(s_squares.iter().map(|&s| IntegralLattice::pair_block(s)));
    blocks.push(IntegralLattice::pair_block(b_square));
    let lattice = direct_sum_all(blocks.iter());
    let labels = NormalFormLabels::new(pm, pn, c);

    let canonical = canonical::assemble(&lattice, &labels, parts)?;
    let fibre = lattice.basis_vector(labels.sigma_index());
    let section = lattice.basis_vector(labels.b_index());
    let manifold = Fibred4Manifold::new(FibrationData {
        name,
        euler: mm.euler() + nn.euler() + 4 * i64::from(g) - 4,
        sigma: mm.sigma() + nn.sigma(),
        canonical: canonical.k_x.clone(),
        fibre,
        section,
        genus: g,
        exceptional: Vec::new(),
        minimal_general_type_base: false,
        lattice,
    })?;

    let (m_copies, m_rims) = m.blocks(&split_m)?;
    let (n_copies, n_rims) = n.blocks(&split_n)?;
    let mut copies: Vec<Range<usize>> = m_copies;
    copies.extend(shift(&n_copies, pm));
    let mut rim_pairs = m_rims;
    rim_pairs.extend(n_rims.iter().map(|&(s, r)| (s + pm, r + pm)));
    rim_pairs.extend((1..=c).map(|i| (labels.s_index(i), labels.r_index(i))));

    Ok(FibreSumResult {
        manifold,
        labels,
        summand_count: m.count + n.count,
        gluing: gluing.clone(),
        s_squares,
        canonical,
        split_m,
        split_n,
        copies,
        rim_pairs,
    })
}

/// `X = M #_Σ N` glued by `C`, with the given `Sᵢ²` and `K_{X₀}·Sᵢ = 0`.
///
/// `e(X) = e(M) + e(N) + 4g − 4`, `σ(X) = σ(M) + σ(N)`; the canonical class
/// is filled in by [`crate::canonical`].
pub fn generalized_fibre_sum(
    m: &Fibred4Manifold,
    n: &Fibred4Manifold,
    gluing: &GluingClass,
    s_squares: &[i64],
) -> Result<FibreSumResult> {
    let zeros = vec![BigInt::zero(); 2 * m.genus() as usize];
    generalized_fibre_sum_with(m, n, gluing, SquareChoice::Given(s_squares), &zeros)
}

/// As [`generalized_fibre_sum`] with explicit `K_{X₀}·Sᵢ` and square choice.
pub fn generalized_fibre_sum_with(
    m: &Fibred4Manifold,
    n: &Fibred4Manifold,
    gluing: &GluingClass,
    squares: SquareChoice<'_>,
    k_x0_s: &[BigInt],
) -> Result<FibreSumResult> {
    let name = format!("{}#{}", m.name(), n.name());
    sum_impl(name, Summand::plain(m), Summand::plain(n), gluing, squares, k_x0_s)
}

/// `M(n) = M #_Σ M #_Σ … #_Σ M`, folded as `M(k) = M #_Σ M(k−1)` with
/// `C = 0` and vanishing spheres of square −2.
pub fn iterated_fibre_sum(m: &Fibred4Manifold, n: usize) -> Result<IteratedSum> {
    if n < 1 {
        return Err(Error::Precondition("iterated fibre sum needs n ≥ 1".into()));
    }
    let g = m.genus();
    let gluing = GluingClass::zero(g);
    let squares = vec![-2i64; 2 * g as usize];
    let zeros = vec![BigInt::zero(); 2 * g as usize];
    let split_m = Splitting::new(m)?;
    let mut current = IteratedSum::Single(m.clone());
    for _ in 2..=n {
        current = step(m, &split_m, &current, &gluing, &squares, &zeros)?;
    }
    Ok(current)
}

/// `M(k+1) = M #_Σ M(k)` from an already built `M(k)`.
pub fn fibre_sum_step(m: &Fibred4Manifold, prev: &IteratedSum) -> Result<IteratedSum> {
    let g = m.genus();
    let squares = vec![-2i64; 2 * g as usize];
    let zeros = vec![BigInt::zero(); 2 * g as usize];
    step(m, &Splitting::new(m)?, prev, &GluingClass::zero(g), &squares, &zeros)
}

fn step(
    m: &Fibred4Manifold,
    split_m: &Splitting,
    prev: &IteratedSum,
    gluing: &GluingClass,
    squares: &[i64],
    zeros: &[BigInt],
) -> Result<IteratedSum> {
    let mut left = Summand::plain(m);
    left.split = Some(split_m.clone());
    let k = prev.summand_count() + 1;
    let next = sum_impl(
        format!("{}({k})", m.name()),
        left,
        Summand::of(prev),
        gluing,
        SquareChoice::Given(squares),
        zeros,
    )?;
    Ok(IteratedSum::Sum(Box::new(next)))
}

/// `M(m, n, C) = M(m) #_Σ M(n)` glued by `C`, with parity-forced `Sᵢ²`.
pub fn twisted_sum(m_count: usize, n_count: usize, m: &Fibred4Manifold, gluing: &GluingClass) -> Result<FibreSumResult> {
    TwistedFamily::new(m, m_count, n_count)?.glue(gluing)
}

/// `M(m)` and `M(n)` built once, for gluing with many classes `C`.
#[derive(Clone, Debug)]
pub struct TwistedFamily {
    base: Fibred4Manifold,
    base_split: Splitting,
    left: IteratedSum,
    right: IteratedSum,
    split_left: Splitting,
    split_right: Splitting,
}

impl TwistedFamily {
    pub fn new(m: &Fibred4Manifold, m_count: usize, n_count: usize) -> Result<Self> {
        let left = iterated_fibre_sum(m, m_count)?;
        let right = if n_count == m_count { left.clone() } else { iterated_fibre_sum(m, n_count)? };
        let split_left = Splitting::new(left.manifold())?;
        let split_right = if n_count == m_count { split_left.clone() } else { Splitting::new(right.manifold())? };
        let base_split = match &left {
            IteratedSum::Single(_) => split_left.clone(),
            IteratedSum::Sum(_) => Splitting::new(m)?,
        };
        Ok(TwistedFamily { base: m.clone(), base_split, left, right, split_left, split_right })
    }

    pub fn base(&self) -> &Fibred4Manifold {
        &self.base
    }

    pub fn base_split(&self) -> &Splitting {
        &self.base_split
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.left.summand_count(), self.right.summand_count())
    }

    /// `M(m, n, C)`.
    pub fn glue(&self, gluing: &GluingClass) -> Result<FibreSumResult> {
        let (mc, nc) = self.counts();
        let name = format!("{}({mc},{nc},C)", self.base.name());
        let zeros = vec![BigInt::zero(); 2 * self.base.genus() as usize];
        let mut l = Summand::of(&self.left);
        l.split = Some(self.split_left.clone());
        let mut r = Summand::of(&self.right);
        r.split = Some(self.split_right.clone());
        sum_impl(name, l, r, gluing, SquareChoice::ParityDefault, &zeros)
    }
}

/// Twisted sum of two already built iterated sums of the same base.
pub fn twisted_sum_of(left: &IteratedSum, right: &IteratedSum, gluing: &GluingClass) -> Result<FibreSumResult> {
    let base = match left {
        IteratedSum::Single(m) => String::from(m.name()),
        IteratedSum::Sum(s) => String::from(s.split_m.manifold().name()),
    };
    let name = format!("{}({},{},C)", base, left.summand_count(), right.summand_count());
    let zeros = vec![BigInt::zero(); 2 * left.manifold().genus() as usize];
    sum_impl(name, Summand::of(left), Summand::of(right), gluing, SquareChoice::ParityDefault, &zeros)
}

#[cfg(test)]
mod tests;
