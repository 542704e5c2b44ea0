//! Fibred 4-manifolds and the algebraic surfaces they come from.
//!
//! A [`Fibred4Manifold`] is the total space of a genus-`g` Lefschetz
//! fibration over the sphere, presented by its intersection lattice and
//! explicit coordinate vectors for `K`, `Σ` and a section `B`. Blowing up
//! the base locus of a pencil on an [`AlgebraicSurfaceData`] produces one.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{FormDescriptor, IntegralLattice, LatticeVector, Parity};

/// Plain field bundle validated by [`Fibred4Manifold::new`].
#[derive(Clone, Debug)]
pub struct FibrationData {
    pub name: String,
    pub lattice: IntegralLattice,
    pub canonical: LatticeVector,
    pub fibre: LatticeVector,
    pub section: LatticeVector,
    pub genus: u32,
    pub euler: i64,
    pub sigma: i64,
    pub exceptional: Vec<LatticeVector>,
    pub minimal_general_type_base: bool,
}

/// Simply-connected closed 4-manifold with a genus-`g` fibration class and
/// a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibred4Manifold {
    name: String,
    euler: i64,
    sigma: i64,
    lattice: IntegralLattice,
    canonical: LatticeVector,
    fibre: LatticeVector,
    section: LatticeVector,
    genus: u32,
    exceptional: Vec<LatticeVector>,
    minimal_general_type_base: bool,
    b2plus: i64,
}

fn invariant(msg: String) -> Error {
    Error::Invariant(msg)
}

impl Fibred4Manifold {
    pub fn new(data: FibrationData) -> Result<Self> {
        let FibrationData {
            name,
            lattice,
            canonical,
            fibre,
            section,
            genus,
            euler,
            sigma,
            exceptional,
            minimal_general_type_base,
        } = data;
        if !lattice.is_unimodular() {
            return Err(Error::NotUnimodular { det: lattice.determinant().to_string() });
        }
        let rank = lattice.rank() as i64;
        if rank != euler - 2 {
            return Err(invariant(format!("rank {rank} ≠ e − 2 = {}", euler - 2)));
        }
        let inertia = lattice.signature();
        if inertia.b_zero != 0 || inertia.signature() != sigma {
            return Err(invariant(format!(
                "lattice signature {} (b0 = {}) ≠ σ = {sigma}",
                inertia.signature(),
                inertia.b_zero
            )));
        }
        if !lattice.is_characteristic(&canonical)? {
            return Err(invariant("canonical class is not characteristic".into()));
        }
        if !lattice.square(&fibre)?.is_zero() {
            return Err(invariant("fibre has nonzero square".into()));
        }
        if !lattice.pair(&fibre, &section)?.is_one() {
            return Err(invariant("fibre · section ≠ 1".into()));
        }
        let k_sigma = lattice.pair(&canonical, &fibre)?;
        if k_sigma != BigInt::from(2 * i64::from(genus) - 2) {
            return Err(invariant(format!("adjunction: K·Σ = {k_sigma} ≠ 2g − 2 for g = {genus}")));
        }
        for (i, e) in exceptional.iter().enumerate() {
            if lattice.square(e)? != BigInt::from(-1) || lattice.pair(&canonical, e)? != BigInt::from(-1) {
                return Err(invariant(format!("E{} is not an exceptional class", i + 1)));
            }
        }
        let b2plus = inertia.b_plus as i64;
        Ok(Fibred4Manifold {
            name,
            euler,
            sigma,
            lattice,
            canonical,
            fibre,
            section,
            genus,
            exceptional,
            minimal_general_type_base,
            b2plus,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn canonical(&self) -> &LatticeVector {
        &self.canonical
    }

    pub fn fibre(&self) -> &LatticeVector {
        &self.fibre
    }

    pub fn section(&self) -> &LatticeVector {
        &self.section
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn exceptional(&self) -> &[LatticeVector] {
        &self.exceptional
    }

    pub fn minimal_general_type_base(&self) -> bool {
        self.minimal_general_type_base
    }

    pub fn b2(&self) -> i64 {
        self.lattice.rank() as i64
    }

    pub fn b2plus(&self) -> i64 {
        self.b2plus
    }

    pub fn b2minus(&self) -> i64 {
        self.b2() - self.b2plus
    }

    /// `2g − 2`.
    pub fn adjunction_value(&self) -> BigInt {
        BigInt::from(2 * i64::from(self.genus) - 2)
    }

    pub fn pair(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
        self.lattice.pair(v, w)
    }

    /// `K·B`.
    pub fn k_dot_section(&self) -> BigInt {
        self.lattice.pair(&self.canonical, &self.section).expect("validated at construction")
    }

    /// `B²`.
    pub fn section_square(&self) -> BigInt {
        self.lattice.square(&self.section).expect("validated at construction")
    }

    /// Canonical class of the blown-down surface, `K − ΣEᵢ`.
    pub fn base_canonical(&self) -> LatticeVector {
        let mut k = self.canonical.clone();
        for e in &self.exceptional {
            k = k.checked_sub(e).expect("exceptional classes share the lattice");
        }
        k
    }

    /// Same manifold with a different section class.
    pub fn with_section(&self, section: LatticeVector) -> Result<Self> {
        let mut data = self.to_data();
        data.section = section;
        Self::new(data)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn to_data(&self) -> FibrationData {
        FibrationData {
            name: self.name.clone(),
            lattice: self.lattice.clone(),
            canonical: self.canonical.clone(),
            fibre: self.fibre.clone(),
            section: self.section.clone(),
            genus: self.genus,
            euler: self.euler,
            sigma: self.sigma,
            exceptional: self.exceptional.clone(),
            minimal_general_type_base: self.minimal_general_type_base,
        }
    }

    /// Spin iff the form is even. Cross-checked against the parity of the
    /// divisibility of `K`, which is equivalent because `K` is
    /// characteristic.
    pub fn is_spin(&self) -> Result<bool> {
        let even = self.lattice.parity() == Parity::Even;
        let div = self.lattice.divisibility(&self.canonical)?;
        if even != div.is_even() {
            return Err(invariant(format!("parity {} disagrees with div(K) = {div}", self.lattice.parity().as_str())));
        }
        Ok(even)
    }

    /// Number of singular fibres, `e − (4 − 4g)`.
    pub fn count_singular_fibres(&self) -> Result<i64> {
        let count = self.euler - (4 - 4 * i64::from(self.genus));
        if count < 0 {
            return Err(Error::Precondition(format!(
                "e = {} is below the fibre-bundle value {}",
                self.euler,
                4 - 4 * i64::from(self.genus)
            )));
        }
        Ok(count)
    }

    /// Homeomorphism type of the intersection form.
    pub fn classify_homeo(&self) -> Result<FormDescriptor> {
        self.lattice.classify()
    }
}

/// Smooth projective surface with a chosen hyperplane-section class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSurfaceData {
    name: String,
    lattice: IntegralLattice,
    canonical: LatticeVector,
    hyperplane: LatticeVector,
    k_squared: BigInt,
    euler: i64,
    degree: BigInt,
    minimal_general_type: bool,
}

impl AlgebraicSurfaceData {
    /// Validates unimodularity, `rank = e − 2`, characteristic `K`, the
    /// Noether-type relation `σ = (K² − 2e)/3` and `H² ≥ 1`.
    pub fn new(
        name: impl Into<String>,
        lattice: IntegralLattice,
        canonical: LatticeVector,
        hyperplane: LatticeVector,
        euler: i64,
        minimal_general_type: bool,
    ) -> Result<Self> {
        if !lattice.is_unimodular() {
            return Err(Error::NotUnimodular { det: lattice.determinant().to_string() });
        }
        if lattice.rank() as i64 != euler - 2 {
            return Err(invariant(format!("rank {} ≠ e − 2 = {}", lattice.rank(), euler - 2)));
        }
        if !lattice.is_characteristic(&canonical)? {
            return Err(invariant("canonical class is not characteristic".into()));
        }
        let k_squared = lattice.square(&canonical)?;
        let numerator = &k_squared - BigInt::from(2 * euler);
        let (sigma, rem) = numerator.div_rem(&BigInt::from(3));
        if !rem.is_zero() {
            return Err(invariant(format!("(K² − 2e)/3 = ({k_squared} − {})/3 is not an integer", 2 * euler)));
        }
        let inertia = lattice.signature();
        if inertia.b_zero != 0 || BigInt::from(inertia.signature()) != sigma {
            return Err(invariant(format!("signature {} ≠ (K² − 2e)/3 = {sigma}", inertia.signature())));
        }
        let degree = lattice.square(&hyperplane)?;
        if degree < BigInt::one() {
            return Err(invariant(format!("hyperplane square {degree} < 1")));
        }
        Ok(AlgebraicSurfaceData {
            name: name.into(),
            lattice,
            canonical,
            hyperplane,
            k_squared,
            euler,
            degree,
            minimal_general_type,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn canonical(&self) -> &LatticeVector {
        &self.canonical
    }

    pub fn hyperplane(&self) -> &LatticeVector {
        &self.hyperplane
    }

    pub fn k_squared(&self) -> &BigInt {
        &self.k_squared
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn sigma(&self) -> i64 {
        self.lattice.signature().signature()
    }

    pub fn b2plus(&self) -> i64 {
        self.lattice.signature().b_plus as i64
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn minimal_general_type(&self) -> bool {
        self.minimal_general_type
    }

    /// `K·H`.
    pub fn k_dot_hyperplane(&self) -> BigInt {
        self.lattice.pair(&self.canonical, &self.hyperplane).expect("validated at construction")
    }

    /// Genus of the hyperplane section, `1 + (H² + K·H)/2`.
    pub fn section_genus(&self) -> BigInt {
        BigInt::one() + (&self.degree + self.k_dot_hyperplane()) / BigInt::from(2)
    }

    /// Same surface embedded by a different hyperplane class.
    pub fn with_hyperplane(&self, hyperplane: LatticeVector) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.lattice.clone(),
            self.canonical.clone(),
            hyperplane,
            self.euler,
            self.minimal_general_type,
        )
    }

    /// Blow up the `r = H²` base points of a pencil; see [`blow_up`].
    pub fn blow_up(&self, r: u64) -> Result<Fibred4Manifold> {
        blow_up(self, r)
    }
}

/// `M = M' # r CP²bar` with `Σ = H − ΣEᵢ`, `K = K' + ΣEᵢ`, `B = E₁`.
///
/// The blow-up count must equal `H²` so that the proper transform of the
/// hyperplane section has square zero.
pub fn blow_up(surface: &AlgebraicSurfaceData, r: u64) -> Result<Fibred4Manifold> {
    if BigInt::from(r) != surface.degree {
        return Err(Error::BlowUpMismatch { r, square: surface.degree.to_string() });
    }
    let r_usize = r as usize;
    let base = surface.lattice();
    let lattice = base.direct_sum(&IntegralLattice::diagonal_pm(0, r_usize));
    let n0 = base.rank();
    let extend = |v: &LatticeVector, tail: i64| -> LatticeVector {
        let mut coords = v.coords().to_vec();
        coords.extend(core::iter::repeat_n(BigInt::from(tail), r_usize));
        lattice.vector(coords).expect("rank matches")
    };
    let canonical = extend(&surface.canonical, 1);
    let fibre = extend(&surface.hyperplane, -1);
    let exceptional: Vec<LatticeVector> = (0..r_usize).map(|i| lattice.basis_vector(n0 + i)).collect();
    let section = exceptional.first().cloned().ok_or_else(|| {
        Error::Precondition("blow-up needs at least one base point for the section".into())
    })?;
    let genus = surface.section_genus();
    let genus = genus
        .to_u32()
        .filter(|_| !genus.is_negative())
        .ok_or_else(|| invariant(format!("section genus {genus} out of range")))?;
    Fibred4Manifold::new(FibrationData {
        name: format!("{}#{}CP2bar", surface.name, r),
        lattice,
        canonical,
        fibre,
        section,
        genus,
        euler: surface.euler + r as i64,
        sigma: surface.sigma() - r as i64,
        exceptional,
        minimal_general_type_base: surface.minimal_general_type,
    })
}

/// Named models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Fibration(Fibred4Manifold),
    Surface(AlgebraicSurfaceData),
}

pub const PRESET_NAMES: [&str; 4] = ["E1", "quintic", "CP2", "genus2"];

/// `CP²` with the cubic hyperplane class `3h`.
pub fn cp2_cubic() -> AlgebraicSurfaceData {
    let lattice = IntegralLattice::diagonal_pm(1, 0);
    let canonical = lattice.vector_i64(&[-3]).expect("rank 1");
    let hyperplane = lattice.vector_i64(&[3]).expect("rank 1");
    AlgebraicSurfaceData::new("CP2", lattice, canonical, hyperplane, 3, false).expect("CP2 preset is consistent")
}

/// The quintic surface in `CP³` with its `O(1)` embedding.
///
/// The form is the odd indefinite lattice `9⟨1⟩ ⊕ 44⟨−1⟩` (rank 53,
/// signature −35) with `H = (3,3,3,3,3,1,1,1,1 | 1,…,1)`: a primitive
/// characteristic vector of square 5. `K = H`. Only these numerics are
/// used downstream, so the abstract form stands in for the geometric basis.
pub fn quintic() -> AlgebraicSurfaceData {
    let lattice = IntegralLattice::diagonal_pm(9, 44);
    let mut h = alloc::vec![3i64, 3, 3, 3, 3, 1, 1, 1, 1];
    h.extend(core::iter::repeat_n(1, 44));
    let hyperplane = lattice.vector_i64(&h).expect("rank 53");
    AlgebraicSurfaceData::new("quintic", lattice, hyperplane.clone(), hyperplane, 55, true)
        .expect("quintic preset is consistent")
}

/// `E(1) = CP² # 9 CP²bar` with the elliptic fibration of a cubic pencil.
pub fn e1() -> Fibred4Manifold {
    blow_up(&cp2_cubic(), 9).expect("cubic pencil has 9 base points").renamed("E1")
}

pub fn build_preset(name: &str) -> Result<Preset> {
    match name {
        "E1" => Ok(Preset::Fibration(e1())),
        "quintic" => Ok(Preset::Surface(quintic())),
        "CP2" => Ok(Preset::Surface(cp2_cubic())),
        "genus2" => Ok(Preset::Surface(crate::synth::genus_two_surface())),
        other => Err(Error::UnknownPreset(other.into())),
    }
}

/// Blown-up quintic, `e = 60`, `σ = −40`, genus 6.
pub fn quintic_fibration() -> Fibred4Manifold {
    quintic().blow_up(5).expect("O(1) has degree 5")
}
