//! Executes manifest operations against a model.

use lefschetz::canonical::{canonical_mmnc_with_sum, canonical_mn, d_of, div_k_mmnc_formula, div_k_mn_formula};
use lefschetz::fibresum::{iterated_fibre_sum, twisted_sum};
use lefschetz::manifold::build_preset;
use lefschetz::obstruction::{ample_threshold, choose_pencil_params, extension_obstructed};
use lefschetz::seibergwitten::{
    basic_classes_blowup, basic_classes_mn_with_table, max_fibre_filter, BasicClassSet,
};
use lefschetz::{
    AlgebraicSurfaceData, Error, Fibred4Manifold, FibreSumResult, GluingClass, IntegralLattice, IteratedSum,
    LatticeVector, Preset,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::manifest::{Embedding, Operation, RawSurface, SurfaceSpec};
use crate::report::*;

/// Why a run stopped. Validation failures exit 2, preconditions exit 3.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precondition() {
            Failure::Precondition(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Failure::Precondition(msg.into()))
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Failure::Validation(msg.into()))
}

/// The fibration under study plus, when it came from a surface, the
/// surface and the class `L` used for pencil parameters.
pub struct Context {
    source: String,
    model: Fibred4Manifold,
    surface: Option<(AlgebraicSurfaceData, LatticeVector)>,
}

impl Context {
    pub fn from_spec(spec: &SurfaceSpec, embedding: Option<&Embedding>) -> Result<Context> {
        let (source, preset) = match spec {
            SurfaceSpec::Name(name) | SurfaceSpec::Preset { preset: name } => {
                (format!("preset:{name}"), build_preset(name)?)
            }
            SurfaceSpec::Raw { raw } => (format!("raw:{}", raw.name), Preset::Surface(raw_surface(raw)?)),
        };
        match preset {
            Preset::Fibration(model) => {
                if embedding.is_some() {
                    return invalid("embedding applies to surfaces, not to fibration presets");
                }
                Ok(Context { source, model, surface: None })
            }
            Preset::Surface(surface) => {
                let (surface, l) = embed(surface, embedding)?;
                let r = surface
                    .degree()
                    .to_u64()
                    .ok_or_else(|| Failure::Precondition(format!("blow-up count {} too large", surface.degree())))?;
                let model = surface.blow_up(r)?;
                Ok(Context { source, model, surface: Some((surface, l)) })
            }
        }
    }

    pub fn preset(name: &str) -> Result<Context> {
        Self::from_spec(&SurfaceSpec::Name(name.into()), None)
    }

    pub fn model(&self) -> &Fibred4Manifold {
        &self.model
    }

    pub fn echo(&self) -> ModelEcho {
        ModelEcho {
            source: self.source.clone(),
            name: self.model.name().into(),
            genus: self.model.genus(),
            rank: self.model.lattice().rank(),
        }
    }
}

fn raw_surface(raw: &RawSurface) -> Result<AlgebraicSurfaceData> {
    let lattice = IntegralLattice::from_i64(&raw.gram)?;
    let k = lattice.vector_i64(&raw.canonical)?;
    let h = lattice.vector_i64(&raw.hyperplane)?;
    Ok(AlgebraicSurfaceData::new(raw.name.clone(), lattice, k, h, raw.euler, raw.minimal_general_type)?)
}

fn embed(surface: AlgebraicSurfaceData, embedding: Option<&Embedding>) -> Result<(AlgebraicSurfaceData, LatticeVector)> {
    match embedding {
        None => {
            let l = surface.hyperplane().clone();
            Ok((surface, l))
        }
        Some(Embedding::Hyperplane { hyperplane }) => {
            let h = surface.lattice().vector_i64(hyperplane)?;
            Ok((surface.with_hyperplane(h.clone())?, h))
        }
        Some(Embedding::Pencil { s, k, l }) => {
            let l = surface.lattice().vector_i64(l)?;
            let h = surface.canonical().checked_add(&l.scaled(&BigInt::from(*s)))?.scaled(&BigInt::from(*k));
            Ok((surface.with_hyperplane(h)?, l))
        }
    }
}

fn gluing(model: &Fibred4Manifold, entries: Option<&Vec<i64>>) -> GluingClass {
    match entries {
        Some(a) => GluingClass::new(a.clone()),
        None => GluingClass::zero(model.genus()),
    }
}

fn positive(name: &str, n: usize) -> Result<usize> {
    if n == 0 {
        return precondition(format!("{name} ≥ 1 required"));
    }
    Ok(n)
}

/// `Some(c)` when `K = c·Σ`.
fn fibre_multiple(k: &LatticeVector, fibre: &LatticeVector) -> Option<BigInt> {
    let (i, f) = fibre.coords().iter().enumerate().find(|(_, f)| !f.is_zero())?;
    let c = &k.coords()[i] / f;
    (fibre.scaled(&c) == *k).then_some(c)
}

pub fn model_block(x: &Fibred4Manifold) -> Result<ModelBlock> {
    let l = x.lattice();
    let k = x.canonical();
    let invariants = Invariants {
        euler: x.euler(),
        sigma: x.sigma(),
        b2: x.b2(),
        b2plus: x.b2plus(),
        b2minus: x.b2minus(),
        parity: l.parity().as_str().into(),
        spin: x.is_spin()?,
        form: x.classify_homeo().ok().map(|f| f.to_string()),
        genus: x.genus(),
        singular_fibres: x.count_singular_fibres()?,
        k_dot_fibre: Int(x.pair(k, x.fibre())?),
        k_dot_section: Int(x.k_dot_section()),
        section_square: Int(x.section_square()),
        k_squared: Int(l.square(k)?),
        canonical_divisibility: Int(l.divisibility(k)?),
        canonical_fibre_multiple: fibre_multiple(k, x.fibre()).map(Int),
    };
    let classes = Classes {
        canonical: ints(k.coords()),
        fibre: ints(x.fibre().coords()),
        section: ints(x.section().coords()),
    };
    Ok(ModelBlock { name: x.name().into(), invariants, classes })
}

fn gram(l: &IntegralLattice) -> GramMatrix {
    GramMatrix { rank: l.rank(), rows: l.rows().map(ints).collect() }
}

fn sum_record(sum: &FibreSumResult, include_gram: bool) -> Result<FibreSumRecord> {
    Ok(FibreSumRecord {
        model: model_block(sum.manifold())?,
        summand_count: sum.summand_count(),
        gluing: sum.gluing().entries().to_vec(),
        s_squares: sum.s_squares().to_vec(),
        labels: sum.labels().roles().iter().map(|r| r.to_string()).collect(),
        gram: include_gram.then(|| gram(sum.lattice())),
    })
}

fn single_record(m: &Fibred4Manifold, include_gram: bool) -> Result<FibreSumRecord> {
    Ok(FibreSumRecord {
        model: model_block(m)?,
        summand_count: 1,
        gluing: Vec::new(),
        s_squares: Vec::new(),
        labels: Vec::new(),
        gram: include_gram.then(|| gram(m.lattice())),
    })
}

fn class_entries(x: &Fibred4Manifold, set: &BasicClassSet) -> Result<Vec<ClassEntry>> {
    set.entries()
        .iter()
        .map(|(c, sw)| {
            Ok(ClassEntry { class: ints(c.coords()), sw: *sw, fibre_pairing: Int(x.pair(c, x.fibre())?) })
        })
        .collect()
}

fn iterate(m: &Fibred4Manifold, n: usize) -> Result<IteratedSum> {
    Ok(iterated_fibre_sum(m, positive("n", n)?)?)
}

/// Runs one operation. `ctx` may be absent only for `obstruction` with an
/// explicit `d` and for `pencil-params`.
pub fn execute(ctx: Option<&Context>, op: &Operation) -> Result<Outcome> {
    let need = || ctx.ok_or_else(|| Failure::Validation(format!("`{}` needs a model", op.name())));
    match op {
        Operation::Invariants { n } => {
            let it = iterate(need()?.model(), n.unwrap_or(1))?;
            Ok(Outcome::Model(model_block(it.manifold())?))
        }
        Operation::Iterate { n } => {
            let it = iterate(need()?.model(), *n)?;
            Ok(Outcome::Model(model_block(it.manifold())?))
        }
        Operation::Fibresum { m, n, gluing: g, include_gram } => {
            let model = need()?.model();
            match m {
                Some(m) => {
                    let c = gluing(model, g.as_ref());
                    let sum = twisted_sum(positive("m", *m)?, positive("n", *n)?, model, &c)?;
                    Ok(Outcome::FibreSum(sum_record(&sum, *include_gram)?))
                }
                None => {
                    if g.is_some() {
                        return invalid("`gluing` needs `m`");
                    }
                    match iterate(model, *n)? {
                        IteratedSum::Single(x) => Ok(Outcome::FibreSum(single_record(&x, *include_gram)?)),
                        IteratedSum::Sum(sum) => Ok(Outcome::FibreSum(sum_record(&sum, *include_gram)?)),
                    }
                }
            }
        }
        Operation::Canonical { m, n, gluing: g } => {
            let model = need()?.model();
            let d = d_of(model)?;
            let (data, lattice, formula) = match m {
                Some(m) => {
                    let c = gluing(model, g.as_ref());
                    let (data, sum) =
                        canonical_mmnc_with_sum(model, positive("m", *m)?, positive("n", *n)?, &c)?;
                    let f = div_k_mmnc_formula(*m as u64, *n as u64, c.divisibility(), model.genus(), &d);
                    (data, sum.lattice().clone(), f)
                }
                None => {
                    if g.is_some() {
                        return invalid("`gluing` needs `m`");
                    }
                    let data = canonical_mn(model, positive("n", *n)?)?;
                    let lattice = iterate(model, *n)?.manifold().lattice().clone();
                    (data, lattice, div_k_mn_formula(*n as u64, &d))
                }
            };
            let direct = lattice.divisibility(&data.k_x)?;
            if direct != formula {
                return Err(Error::FormulaMismatch {
                    formula: "divisibility of K",
                    formula_value: formula.to_string(),
                    direct_value: direct.to_string(),
                }
                .into());
            }
            Ok(Outcome::Canonical(CanonicalRecord {
                k_x: ints(data.k_x.coords()),
                kbar_m: ints(&data.kbar_m),
                kbar_n: ints(&data.kbar_n),
                r: ints(&data.r),
                b_x: Int(data.b_x),
                sigma_x: Int(data.sigma_x),
                d: Int(d),
                divisibility_formula: Int(formula),
                divisibility_direct: Int(direct),
            }))
        }
        Operation::SwClasses { n } => {
            let model = need()?.model();
            let n = positive("n", n.unwrap_or(1))?;
            let (x, set, top) = if n == 1 {
                let set = basic_classes_blowup(model)?;
                let top = max_fibre_filter(model, &set)?;
                (model.clone(), set, top)
            } else {
                let (set, _) = basic_classes_mn_with_table(model, n)?;
                let x = iterate(model, n)?.manifold().clone();
                let top = max_fibre_filter(&x, &set)?;
                (x, set, top)
            };
            Ok(Outcome::BasicClasses(BasicClassRecord {
                scope: set.scope().as_str().into(),
                sign_convention: "SW(K) = +1, SW(-L) = (-1)^((e+σ)/4) SW(L)".into(),
                negation_sign: set.negation_sign(),
                count: set.len(),
                classes: class_entries(&x, &set)?,
                max_fibre_pairing: class_entries(&x, &top)?,
            }))
        }
        Operation::Mst { n } => {
            let model = need()?.model();
            if *n < 2 {
                return precondition("mst needs n ≥ 2");
            }
            let (_, table) = basic_classes_mn_with_table(model, *n)?;
            let it = iterate(model, *n)?;
            let sum = it.as_sum().ok_or_else(|| Failure::Precondition("M(n) is not a sum".into()))?;
            let k = sum.manifold().canonical();
            let sigma = sum.labels().sigma_index();
            let candidates = table
                .iter()
                .map(|c| MstRow {
                    class: ints(c.class.coords()),
                    beta_x: Int(c.class.coords()[sigma].clone()),
                    is_canonical: &c.class == k,
                    mst: c.mst,
                })
                .collect();
            Ok(Outcome::Mst(MstRecord {
                n: *n,
                note: format!("candidates for M({n}) = M # M({}) with fibre pairing 2g-2", n - 1),
                candidates,
            }))
        }
        Operation::Obstruction { a, n, d, genus } => {
            let (d, genus) = match (d, ctx) {
                (Some(d), _) => (*d, genus.or(ctx.map(|c| c.model().genus()))),
                (None, Some(c)) => {
                    let d = d_of(c.model())?
                        .to_u64()
                        .ok_or_else(|| Failure::Precondition("d out of range".into()))?;
                    (d, Some(genus.unwrap_or(c.model().genus())))
                }
                (None, None) => return invalid("`obstruction` needs `d` or a model"),
            };
            let v = extension_obstructed(d, *a, *n, genus)?;
            Ok(Outcome::Obstruction(ObstructionRecord {
                verdict: v.verdict().into(),
                obstructed: v.obstructed,
                d: v.d,
                a: v.a,
                n: v.n,
                genus: v.genus,
                witness_m: v.witness_m,
                m_used: v.m_used,
                div_untwisted: Int(BigInt::from(v.div_untwisted)),
                div_twisted: Int(BigInt::from(v.div_twisted)),
            }))
        }
        Operation::PencilParams { d, s0, k0 } => {
            let surface = ctx.and_then(|c| c.surface.as_ref());
            let numbers = match surface {
                Some((s, l)) => {
                    let small = |x: BigInt| {
                        x.to_i64().ok_or_else(|| Failure::Precondition(format!("{x} out of range")))
                    };
                    let k2 = small(s.k_squared().clone())?;
                    let kl = small(s.lattice().pair(s.canonical(), l)?)?;
                    let l2 = small(s.lattice().square(l)?)?;
                    Some((k2, kl, l2, s.minimal_general_type()))
                }
                None => None,
            };
            let s0 = match (s0, numbers) {
                (Some(s0), _) => *s0,
                (None, Some((k2, kl, l2, _))) => ample_threshold(k2, kl, l2)?
                    .to_u64()
                    .ok_or_else(|| Failure::Precondition("s0 out of range".into()))?,
                (None, None) => return invalid("`pencil-params` needs `s0` or a surface model"),
            };
            let mut p = choose_pencil_params(*d, s0, k0.unwrap_or(1))?;
            if let Some((k2, kl, l2, gt)) = numbers {
                p = p.realize(k2, kl, l2, gt)?;
            }
            Ok(Outcome::Pencil(PencilRecord {
                d: p.d,
                s: p.s,
                k: p.k,
                s0: p.s0,
                k0: p.k0,
                genus: p.genus.map(Int),
                degree: p.degree.map(Int),
            }))
        }
        Operation::Classify { n } => {
            let it = iterate(need()?.model(), n.unwrap_or(1))?;
            let f = it.manifold().classify_homeo()?;
            Ok(Outcome::Classification(Classification {
                parity: f.parity.as_str().into(),
                rank: f.rank,
                signature: f.signature,
                decomposition: f.decomposition.to_string(),
            }))
        }
    }
}

pub fn record(ctx: Option<&Context>, op: &Operation) -> Result<Record> {
    let input = serde_json::to_value(op).map_err(|e| Failure::Validation(e.to_string()))?;
    Ok(Record { op: op.name().into(), input, result: execute(ctx, op)? })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_round_trip() {
        let ctx = Context::preset("genus2").unwrap();
        let ops = [
            Operation::Fibresum { m: Some(1), n: 2, gluing: Some(vec![1, 0, 2, -1]), include_gram: true },
            Operation::Canonical { m: Some(2), n: 1, gluing: Some(vec![0, 1, 0, 0]) },
            Operation::Classify { n: Some(2) },
            Operation::Obstruction { a: 1, n: 2, d: None, genus: None },
        ];
        let records = ops.iter().map(|op| record(Some(&ctx), op).unwrap()).collect();
        let report = Report { model: Some(ctx.echo()), records };
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn fibre_multiple_detects_scalars() {
        let l = IntegralLattice::diagonal(&[1, -1]);
        let f = l.vector_i64(&[1, 1]).unwrap();
        assert_eq!(fibre_multiple(&l.vector_i64(&[3, 3]).unwrap(), &f), Some(BigInt::from(3)));
        assert_eq!(fibre_multiple(&l.vector_i64(&[3, 2]).unwrap(), &f), None);
    }
}
