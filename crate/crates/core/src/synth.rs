//! Randomized and hand-built models for property tests and self-checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::Result;
use crate::fibresum::GluingClass;
use crate::lattice::{direct_sum_all, IntegralLattice, LatticeVector};
use crate::manifold::{AlgebraicSurfaceData, FibrationData, Fibred4Manifold};

/// Gram matrix plus tracked coordinate vectors under elementary basis
/// changes.
#[derive(Clone, Debug)]
pub struct BasisChange {
    rank: usize,
    gram: Vec<BigInt>,
    vectors: Vec<Vec<BigInt>>,
}

impl BasisChange {
    pub fn new(lattice: &IntegralLattice, vectors: &[&LatticeVector]) -> Self {
        BasisChange {
            rank: lattice.rank(),
            gram: lattice.gram_flat().to_vec(),
            vectors: vectors.iter().map(|v| v.coords().to_vec()).collect(),
        }
    }

    /// `f_j ← f_j + c·f_i`.
    pub fn add(&mut self, i: usize, j: usize, c: i64) {
        let n = self.rank;
        let c = BigInt::from(c);
        for k in 0..n {
            let t = &c * &self.gram[i * n + k];
            self.gram[j * n + k] += t;
        }
        for k in 0..n {
            let t = &c * &self.gram[k * n + i];
            self.gram[k * n + j] += t;
        }
        for v in &mut self.vectors {
            let t = &c * &v[j];
            v[i] -= t;
        }
    }

    /// `f_j ← −f_j`.
    pub fn negate(&mut self, j: usize) {
        let n = self.rank;
        for k in 0..n {
            if k != j {
                self.gram[j * n + k] = -&self.gram[j * n + k];
                self.gram[k * n + j] = -&self.gram[k * n + j];
            }
        }
        for v in &mut self.vectors {
            v[j] = -&v[j];
        }
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        let n = self.rank;
        for k in 0..n {
            self.gram.swap(i * n + k, j * n + k);
        }
        for k in 0..n {
            self.gram.swap(k * n + i, k * n + j);
        }
        for v in &mut self.vectors {
            v.swap(i, j);
        }
    }

    /// `steps` random elementary moves.
    pub fn scramble<R: Rng + ?Sized>(&mut self, rng: &mut R, steps: usize) {
        if self.rank < 2 {
            return;
        }
        for _ in 0..steps {
            let i = rng.random_range(0..self.rank);
            let mut j = rng.random_range(0..self.rank - 1);
            if j >= i {
                j += 1;
            }
            match rng.random_range(0..6) {
                0 => self.swap(i, j),
                1 => self.negate(j),
                k => self.add(i, j, if k % 2 == 0 { 1 } else { -1 }),
            }
        }
    }

    /// The new lattice and the tracked vectors in its basis.
    pub fn finish(self) -> Result<(IntegralLattice, Vec<LatticeVector>)> {
        let lattice = IntegralLattice::from_flat(self.rank, self.gram)?;
        let vs = self.vectors.into_iter().map(|v| lattice.vector(v)).collect::<Result<Vec<_>>>()?;
        Ok((lattice, vs))
    }
}

/// A random unimodular block and a characteristic vector of it.
fn random_block<R: Rng + ?Sized>(rng: &mut R, room: usize) -> (IntegralLattice, Vec<i64>) {
    let pick = rng.random_range(0..8);
    if room >= 8 && pick == 0 {
        let k = (0..8).map(|_| 2 * rng.random_range(-1..=1)).collect();
        (IntegralLattice::e8(rng.random_bool(0.5)), k)
    } else if room >= 2 && pick < 4 {
        let k = (0..2).map(|_| 2 * rng.random_range(-1..=1)).collect();
        (IntegralLattice::hyperbolic(), k)
    } else {
        let k = vec![2 * rng.random_range(-2..=1) + 1];
        (IntegralLattice::unit(rng.random_bool(0.5)), k)
    }
}

/// A random simply-connected fibred model of rank `≤ max_rank` and the
/// given genus.
///
/// The form is `P ⊕ [[b, 1], [1, 0]]` with `B`, `Σ` spanning the last block
/// and `K = k_P + (2g−2)B + yΣ`, `y ≡ b (mod 2)`, then written in a
/// scrambled basis.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, max_rank: usize, genus: u32, name: &str) -> Result<Fibred4Manifold> {
    let p_rank = rng.random_range(0..=max_rank.max(2) - 2);
    let mut blocks = Vec::new();
    let mut k: Vec<i64> = Vec::new();
    let mut room = p_rank;
    while room > 0 {
        let (block, kb) = random_block(rng, room);
        room -= block.rank();
        k.extend(kb);
        blocks.push(block);
    }
    let b: i64 = rng.random_range(-3..=2);
    blocks.push(IntegralLattice::pair_block(b));
    let y = b + 2 * rng.random_range(-2..=2);
    k.push(2 * i64::from(genus) - 2);
    k.push(y);
    let lattice = direct_sum_all(blocks.iter());
    let n = lattice.rank();
    let canonical = lattice.vector_i64(&k)?;
    let section = lattice.basis_vector(n - 2);
    let fibre = lattice.basis_vector(n - 1);
    let sigma = lattice.signature().signature();
    let mut change = BasisChange::new(&lattice, &[&canonical, &section, &fibre]);
    change.scramble(rng, 3 * n);
    let (lattice, vs) = change.finish()?;
    let [canonical, section, fibre]: [LatticeVector; 3] = vs.try_into().expect("three tracked vectors");
    Fibred4Manifold::new(FibrationData {
        name: name.into(),
        euler: n as i64 + 2,
        sigma,
        lattice,
        canonical,
        fibre,
        section,
        genus,
        exceptional: Vec::new(),
        minimal_general_type_base: false,
    })
}

/// Gluing class with entries drawn from `[−bound, bound]`.
pub fn random_gluing<R: Rng + ?Sized>(rng: &mut R, genus: u32, bound: i64) -> GluingClass {
    GluingClass::new((0..2 * genus).map(|_| rng.random_range(-bound..=bound)).collect())
}

/// Formal surface data with fibre genus 2 and `d = 2`.
///
/// `3⟨1⟩`, `K' = (−3, −3, −1)`, `H = (−1, 1, 1)`: `K'² = 19`, `e = 5`,
/// `H² = 3`, `K'·H = −1`. Not a complex surface; it only carries
/// consistent numerics.
pub fn genus_two_surface() -> AlgebraicSurfaceData {
    let lattice = IntegralLattice::diagonal_pm(3, 0);
    let k = lattice.vector_i64(&[-3, -3, -1]).expect("rank 3");
    let h = lattice.vector_i64(&[-1, 1, 1]).expect("rank 3");
    AlgebraicSurfaceData::new("genus2", lattice, k, h, 5, false).expect("genus-2 model is consistent")
}

/// Blow-up of [`genus_two_surface`] at its 3 base points.
pub fn genus_two_model() -> Fibred4Manifold {
    genus_two_surface().blow_up(3).expect("H² = 3")
}

/// A random basis change applied to a whole model.
pub fn rebased<R: Rng + ?Sized>(rng: &mut R, m: &Fibred4Manifold, steps: usize) -> Result<Fibred4Manifold> {
    let mut tracked = vec![m.canonical(), m.section(), m.fibre()];
    tracked.extend(m.exceptional());
    let mut change = BasisChange::new(m.lattice(), &tracked);
    change.scramble(rng, steps);
    let (lattice, mut vs) = change.finish()?;
    let exceptional = vs.split_off(3);
    let [canonical, section, fibre]: [LatticeVector; 3] = vs.try_into().expect("three tracked vectors");
    Fibred4Manifold::new(FibrationData {
        name: format!("{}'", m.name()),
        euler: m.euler(),
        sigma: m.sigma(),
        lattice,
        canonical,
        fibre,
        section,
        genus: m.genus(),
        exceptional,
        minimal_general_type_base: m.minimal_general_type_base(),
    })
}
