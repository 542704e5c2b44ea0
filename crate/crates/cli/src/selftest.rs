//! Randomized structural checks on sums of synthetic models.

use lefschetz::canonical::{d_of, div_k_mmnc_formula};
use lefschetz::fibresum::{generalized_fibre_sum_with, SquareChoice, TwistedFamily};
use lefschetz::obstruction::extension_obstructed;
use lefschetz::synth::{genus_two_model, random_gluing, random_model};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::SelftestRecord;

fn sum_case(rng: &mut ChaCha8Rng, i: usize) -> Result<(), String> {
    let g = 1 + rng.next_u32() % 3;
    let m = random_model(rng, 10, g, &format!("M{i}")).map_err(|e| e.to_string())?;
    let n = random_model(rng, 10, g, &format!("N{i}")).map_err(|e| e.to_string())?;
    let c = random_gluing(rng, g, 2);
    let kx0 = vec![BigInt::zero(); 2 * g as usize];
    let x = generalized_fibre_sum_with(&m, &n, &c, SquareChoice::ParityDefault, &kx0).map_err(|e| e.to_string())?;
    x.verify_structure().map_err(|e| e.to_string())?;
    let l = x.lattice();
    let xm = x.manifold();
    if !l.is_unimodular() {
        return Err("sum is not unimodular".into());
    }
    if l.rank() as i64 != xm.euler() - 2 {
        return Err(format!("rank {} ≠ e − 2 = {}", l.rank(), xm.euler() - 2));
    }
    if xm.sigma() != m.sigma() + n.sigma() {
        return Err(format!("σ = {} ≠ {} + {}", xm.sigma(), m.sigma(), n.sigma()));
    }
    if !l.is_characteristic(xm.canonical()).map_err(|e| e.to_string())? {
        return Err("K_X is not characteristic".into());
    }
    Ok(())
}

fn twisted_case(rng: &mut ChaCha8Rng, family: &TwistedFamily, d: &BigInt) -> Result<(), String> {
    let base = family.base();
    let c = random_gluing(rng, base.genus(), 2);
    let (data, sum) = family.canonical(&c).map_err(|e| e.to_string())?;
    let (mc, nc) = family.counts();
    let formula = div_k_mmnc_formula(mc as u64, nc as u64, c.divisibility(), base.genus(), d);
    let direct = sum.lattice().divisibility(&data.k_x).map_err(|e| e.to_string())?;
    if formula != direct {
        return Err(format!("M({mc},{nc},{:?}): formula {formula} ≠ direct {direct}", c.entries()));
    }
    let v = extension_obstructed(d.to_u64().unwrap_or(0), c.divisibility(), nc as u64, Some(base.genus()))
        .map_err(|e| e.to_string())?;
    if v.obstructed && v.div_untwisted == v.div_twisted {
        return Err(format!("obstructed verdict without a witness for a = {}", c.divisibility()));
    }
    Ok(())
}

pub fn run(seed: u64, cases: usize) -> SelftestRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let genus2 = genus_two_model();
    let d = d_of(&genus2).expect("genus-2 model splits");
    let families: Vec<TwistedFamily> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(a, b)| TwistedFamily::new(&genus2, a, b).expect("genus-2 family"))
        .collect();
    for i in 0..cases {
        let outcome = if i % 2 == 0 {
            sum_case(&mut rng, i)
        } else {
            let f = &families[(rng.next_u32() as usize) % families.len()];
            twisted_case(&mut rng, f, &d)
        };
        if let Err(e) = outcome {
            failures.push(format!("case {i}: {e}"));
        }
    }
    SelftestRecord { seed, cases, passed: cases - failures.len(), failures }
}
