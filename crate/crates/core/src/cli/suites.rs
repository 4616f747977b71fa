use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use super::report::{CheckRecord, Outcome, VerificationReport};
use super::spec::{AlgebraSpec, FieldSpec, Instance, InstanceRef, InstanceSpec};
use crate::algebra::{Algebra, MaximalClass, RightIdeal};
use crate::fqlinalg::enumerate_vectors;
use crate::matring::{
    count_bounds_report, parallel_class_representatives, quotient_shape, stone_equal, stone_ideal,
};
use crate::module::{
    match_multisets, simple_modules, Isomorphism, ModuleSpec, ProbeOrder, RightModule, Submodule,
};
use crate::similarity::{Dichotomy, EndContext, Verdict};
use crate::{Budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    All,
    T5,
    T8,
    Pt1,
    Length,
    Transfer,
    Stone,
    Decomposition,
    Example313,
    Eigenring,
    Oracle,
    Lemmas,
}

impl Suite {
    /// Every suite `All` expands to, in run order.
    pub const EACH: [Suite; 11] = [
        Suite::Example313,
        Suite::Stone,
        Suite::Pt1,
        Suite::T5,
        Suite::T8,
        Suite::Length,
        Suite::Eigenring,
        Suite::Decomposition,
        Suite::Transfer,
        Suite::Oracle,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::T5 => "t5",
            Suite::T8 => "t8",
            Suite::Pt1 => "pt1",
            Suite::Length => "length",
            Suite::Transfer => "transfer",
            Suite::Stone => "stone",
            Suite::Decomposition => "decomposition",
            Suite::Example313 => "example-3.13",
            Suite::Eigenring => "eigenring",
            Suite::Oracle => "oracle",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub budget: Budget,
    pub timing: bool,
}

pub(crate) enum Check {
    Done { pass: bool, cert: Value, key: String },
    Skip(String),
    /// Hypothesis absent: no record.
    Omit,
}

fn done(pass: bool, cert: Value, key: impl Into<String>) -> Result<Check> {
    Ok(Check::Done {
        pass,
        cert,
        key: key.into(),
    })
}

fn undecided() -> Result<Check> {
    Ok(Check::Skip(
        "isomorphism undecided within the randomized-trial budget".into(),
    ))
}

struct Recorder {
    timing: bool,
    out: Vec<CheckRecord>,
}

impl Recorder {
    fn run(&mut self, id: &str, inst: &InstanceRef, f: impl FnOnce() -> Result<Check>) {
        let start = Instant::now();
        let result = f();
        let wall_ms = self.timing.then(|| start.elapsed().as_millis() as u64);
        let (verdict, certificate, note, key) = match result {
            Ok(Check::Omit) => return,
            Ok(Check::Done { pass, cert, key }) => {
                (if pass { Outcome::Pass } else { Outcome::Fail }, cert, None, key)
            }
            Ok(Check::Skip(why)) => (Outcome::Skipped, Value::Null, Some(why), String::new()),
            Err(e @ Error::OverBudget { .. }) => (
                Outcome::Skipped,
                Value::Null,
                Some(format!("budget: {e}")),
                String::new(),
            ),
            Err(Error::NotApplicable(why)) => (Outcome::Skipped, Value::Null, Some(why), String::new()),
            Err(e) => (Outcome::Fail, Value::Null, Some(e.to_string()), String::new()),
        };
        self.out.push(CheckRecord {
            theorem_id: id.to_string(),
            instance: inst.clone(),
            verdict,
            certificate,
            note,
            wall_ms,
            key,
        });
    }
}

pub fn build_corpus(specs: &[InstanceSpec]) -> Result<Vec<Instance>> {
    specs.iter().map(InstanceSpec::build).collect()
}

pub fn run_suite(suite: Suite, corpus: &[Instance], opts: &RunOptions) -> VerificationReport {
    let mut rec = Recorder {
        timing: opts.timing,
        out: Vec::new(),
    };
    let b = &opts.budget;
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::All => unreachable!(),
            Suite::Example313 => example(&mut rec, b),
            Suite::Stone => stone(&mut rec, b),
            Suite::Pt1 => class_bounds(&mut rec, corpus, b),
            Suite::T5 => dichotomy(&mut rec, corpus, b),
            Suite::T8 => correspondence(&mut rec, corpus, b),
            Suite::Length => length(&mut rec, corpus, b),
            Suite::Eigenring => eigenring(&mut rec, corpus, b),
            Suite::Decomposition => decomposition(&mut rec, corpus, b),
            Suite::Transfer => transfer(&mut rec, corpus, b),
            Suite::Oracle => oracle(&mut rec, corpus, b),
            Suite::Lemmas => lemmas(&mut rec, corpus, b),
        }
    }
    VerificationReport::new(suite.name(), *b, rec.out)
}

fn pow(p: u32, k: usize) -> u64 {
    (p as u64).pow(k as u32)
}

fn is_projective(m: &RightModule) -> Result<bool> {
    Ok(m.is_projective()?.projective)
}

fn proper_lattice(m: &RightModule, b: &Budget) -> Result<Vec<Submodule>> {
    let full = m.full();
    Ok(m
        .submodule_lattice(b)?
        .elements()
        .iter()
        .filter(|s| **s != full)
        .cloned()
        .collect())
}

/// The distinct rings of a corpus, each viewed through its regular module.
fn rings_of(corpus: &[Instance]) -> Vec<(InstanceRef, Arc<Algebra>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for inst in corpus {
        let r = &inst.reference;
        let key = (r.p, serde_json::to_string(&r.algebra).unwrap_or_default());
        if seen.insert(key) {
            out.push((
                InstanceRef {
                    name: r.name.split('/').next().unwrap_or_default().to_string(),
                    p: r.p,
                    algebra: r.algebra.clone(),
                    module: ModuleSpec::Regular,
                },
                inst.algebra.clone(),
            ));
        }
    }
    out
}

fn example_instance(b: &Budget) -> Instance {
    InstanceSpec {
        name: Some("T2(F2)/E11R".into()),
        field: FieldSpec { p: 2 },
        algebra: AlgebraSpec::Triangular { n: 2 },
        module: ModuleSpec::Idempotent { e: vec![1, 0, 0] },
        budgets: *b,
    }
    .build()
    .expect("fixed instance")
}

/// `A = E11·R` over `T_2(F_2)`, its unique maximal submodule `B` (the
/// strictly upper triangular matrices) and `0`.
fn example_parts(inst: &Instance, b: &Budget) -> Result<(EndContext, Submodule, Submodule)> {
    let ctx = EndContext::new(inst.module.clone())?;
    let m = ctx.module();
    let maxes = m.maximal_submodules(b)?;
    if maxes.len() != 1 {
        return Err(Error::Contract("E11·R should have a unique maximal submodule".into()));
    }
    let bsub = maxes[0].clone();
    let incl = m
        .presentation()
        .and_then(|p| p.splitting.clone())
        .ok_or_else(|| Error::Contract("eR without inclusion".into()))?;
    let image: Vec<Vec<u32>> = bsub.space().basis_vectors().map(|v| incl.vec_mul(v)).collect();
    if image != vec![vec![0, 1, 0]] {
        return Err(Error::Contract("maximal submodule of E11·R is not E12·F2".into()));
    }
    let zero = m.zero_submodule();
    Ok((ctx, bsub, zero))
}

fn example(rec: &mut Recorder, b: &Budget) {
    let inst = example_instance(b);
    let r = &inst.reference;
    rec.run("hom-vanishing", r, || {
        let (ctx, bsub, zero) = example_parts(&inst, b)?;
        let (bmod, _) = ctx.module().restrict(&bsub);
        let hom_ab = ctx.module().hom_space(&bmod)?.dim();
        let a_b = ctx.hom_ideal(&bsub)?.dim();
        let a_0 = ctx.hom_ideal(&zero)?.dim();
        done(
            hom_ab == 0 && a_b == 0 && a_0 == 0,
            json!({"dim_hom_a_b": hom_ab, "dim_hom_ideal_b": a_b, "dim_hom_ideal_0": a_0, "dim_end": ctx.end().dim()}),
            format!("dim Hom(A,B)={hom_ab} dim Hom(A,0)={a_0}"),
        )
    });
    rec.run("hom-ideals-similar", r, || {
        let (ctx, bsub, zero) = example_parts(&inst, b)?;
        let (x, y) = (ctx.hom_ideal(&bsub)?, ctx.hom_ideal(&zero)?);
        let w = ctx.end().algebra().similar_ideals(&x, &y, b.enumeration)?;
        done(
            x == y && w.is_some(),
            json!({"equal": x == y, "witness": w}),
            "both ideals zero",
        )
    });
    rec.run("submodules-not-similar", r, || {
        let (ctx, bsub, zero) = example_parts(&inst, b)?;
        let iso = ctx.are_similar(&bsub, &zero, b)?;
        let (q1, _) = ctx.module().quotient(&bsub);
        let (q2, _) = ctx.module().quotient(&zero);
        done(
            iso.is_no(),
            json!({"similar": iso.decided(), "dim_a_mod_b": q1.dim(), "dim_a_mod_0": q2.dim()}),
            format!("similar={:?}", iso.decided()),
        )
    });
    rec.run("transfer-counterexample", r, || {
        let (ctx, bsub, zero) = example_parts(&inst, b)?;
        let t = ctx.similarity_transfer(&bsub, &zero, b)?;
        let l_m = ctx.module().length(b)?;
        let l_e = RightModule::regular(ctx.end().algebra()).length(b)?;
        let pass = t.counterexample
            && t.projective
            && !t.faithfully_projective
            && t.forward == Verdict::Holds
            && t.backward == Verdict::NotApplicable
            && l_e < l_m;
        done(
            pass,
            json!({"report": t, "length_module": l_m, "length_end": l_e}),
            format!("counterexample={} l(E)={l_e} l(A)={l_m}", t.counterexample),
        )
    });
}

fn stone(rec: &mut Recorder, b: &Budget) {
    for (n, p) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let r = InstanceRef {
            name: format!("M{n}(F{p})"),
            p,
            algebra: AlgebraSpec::Matrix { n },
            module: ModuleSpec::Regular,
        };
        rec.run("stone-count", &r, || {
            let c = count_bounds_report(p, n, b)?;
            if c.crosschecked.is_none() {
                return Ok(Check::Skip(format!(
                    "budget: left-ideal lattice of size {p}^{} not enumerated",
                    n * n
                )));
            }
            let pass = c.row.pass && c.crosschecked == Some(true) && c.row.count as u128 == c.expected;
            done(
                pass,
                json!({
                    "row": c.row, "expected": c.expected as u64, "maxr_count": c.maxr_count,
                    "transpose_bijection": c.transpose_bijection, "none_two_sided": c.none_two_sided,
                    "crosschecked": c.crosschecked,
                }),
                format!("|Maxl|={} expected={} |Maxr|={}", c.row.count, c.expected, c.maxr_count),
            )
        });
        rec.run("stone-parallel", &r, || {
            let alg = Algebra::matrix_algebra(n, p)?;
            let all: Vec<Vec<u32>> = enumerate_vectors(n, p, b.enumeration)?
                .filter(|v| v.iter().any(|&x| x != 0))
                .collect();
            let ideals = all
                .iter()
                .map(|u| stone_ideal(&alg, n, u).map(|s| s.ideal))
                .collect::<Result<Vec<_>>>()?;
            let mut pass = true;
            for (i, u) in all.iter().enumerate() {
                for (j, v) in all.iter().enumerate() {
                    pass &= (ideals[i] == ideals[j]) == stone_equal(p, u, v)?;
                }
            }
            let distinct: BTreeSet<_> = ideals.iter().collect();
            done(
                pass,
                json!({"vectors": all.len(), "distinct_ideals": distinct.len()}),
                format!("{} vectors, {} ideals", all.len(), distinct.len()),
            )
        });
        rec.run("stone-quotient", &r, || {
            let alg = Algebra::matrix_algebra(n, p)?;
            let mut shapes = Vec::new();
            for u in parallel_class_representatives(p, n, b)? {
                shapes.push(quotient_shape(&stone_ideal(&alg, n, &u)?, b)?);
            }
            let pass = shapes.iter().all(|&s| s == (n, 1));
            done(
                pass,
                json!({"shapes": shapes}),
                format!("dim {n}, length 1 over T on {} quotients", shapes.len()),
            )
        });
    }
}

fn ring_classes(alg: &Arc<Algebra>, b: &Budget) -> Result<Vec<MaximalClass>> {
    alg.maximal_right_ideals(b)?
        .iter()
        .map(|m| alg.similarity_class_of_maximal(m, b.enumeration))
        .collect()
}

fn class_bounds(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for (r, alg) in rings_of(corpus) {
        let p = alg.p();
        rec.run("class-bound", &r, || {
            let maxr: BTreeSet<RightIdeal> = alg.maximal_right_ideals(b)?.into_iter().collect();
            let mut pass = true;
            let mut rows = Vec::new();
            for cls in ring_classes(&alg, b)? {
                let Some(fam) = &cls.family else { continue };
                let size = pow(p, cls.eigenring_dim) as usize;
                let members: BTreeSet<&RightIdeal> = fam.members.iter().map(|(_, i)| i).collect();
                let ok = fam.members.len() == size
                    && members.len() == size
                    && !members.contains(&cls.representative)
                    && members.iter().all(|m| cls.members.contains(m) && maxr.contains(*m))
                    && cls.size() > size;
                pass &= ok;
                rows.push(json!({"eigenring_dim": cls.eigenring_dim, "class_size": cls.size(), "family_size": fam.members.len()}));
            }
            let key = if rows.is_empty() {
                "no one-sided maximal right ideal".to_string()
            } else {
                let sizes: Vec<usize> = rows.iter().map(|x| x["class_size"].as_u64().unwrap_or(0) as usize).collect();
                format!("|[M]|={sizes:?}")
            };
            done(pass, json!({"maximal": maxr.len(), "one_sided": rows}), key)
        });
        rec.run("two-sided-class", &r, || {
            let maxr = alg.maximal_right_ideals(b)?;
            let two: Vec<&RightIdeal> = maxr.iter().filter(|m| alg.is_two_sided(m)).collect();
            if two.is_empty() {
                return Ok(Check::Omit);
            }
            let mut pass = true;
            for m in &two {
                let cls = alg.similarity_class_of_maximal(m, b.enumeration)?;
                pass &= cls.members == vec![(*m).clone()];
                for other in &maxr {
                    if alg.similar_ideals(m, other, b.enumeration)?.is_some() {
                        pass &= other == *m;
                    }
                }
            }
            done(pass, json!({"two_sided": two.len()}), format!("{} two-sided, classes singletons", two.len()))
        });
        if let AlgebraSpec::Matrix { n: 2 } = r.algebra {
            rec.run("class-equality", &r, || {
                let sizes: Vec<usize> = ring_classes(&alg, b)?.iter().map(MaximalClass::size).collect();
                done(
                    sizes.iter().all(|&s| s == 1 + p as usize),
                    json!({"class_sizes": sizes}),
                    format!("|[M]|={sizes:?} 1+p={}", 1 + p),
                )
            });
        }
        rec.run("class-aggregate", &r, || {
            let classes = ring_classes(&alg, b)?;
            let mut seen: BTreeSet<Vec<RightIdeal>> = BTreeSet::new();
            let mut one_sided = 0usize;
            let mut bound = 0u64;
            for cls in &classes {
                if cls.family.is_none() {
                    continue;
                }
                one_sided += 1;
                if seen.insert(cls.members.clone()) {
                    bound += 1 + pow(p, cls.eigenring_dim);
                }
            }
            done(
                one_sided as u64 >= bound,
                json!({"one_sided_maximal": one_sided, "classes": seen.len(), "bound": bound}),
                format!("{one_sided} >= {bound}"),
            )
        });
    }
}

fn dichotomy(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    let mut min_eig: BTreeMap<u32, u64> = BTreeMap::new();
    for inst in corpus {
        let p = inst.algebra.p();
        rec.run("dichotomy", &inst.reference, || {
            let ctx = EndContext::new(inst.module.clone())?;
            let maxes = ctx.module().maximal_submodules(b)?;
            let maxset: BTreeSet<&Submodule> = maxes.iter().collect();
            let mut pass = true;
            let mut rows = Vec::new();
            for n in &maxes {
                let eig = pow(p, ctx.eigenring(n)?.dim());
                let e = min_eig.entry(p).or_insert(eig);
                *e = (*e).min(eig);
                match ctx.enumerate_similar_maximals(n, b)? {
                    Dichotomy::FullyInvariant => {
                        rows.push(json!({"branch": "fully_invariant", "eigenring_size": eig}));
                    }
                    Dichotomy::Family { alpha, members } => {
                        let mut distinct: BTreeSet<&Submodule> = members.iter().map(|(_, s)| s).collect();
                        distinct.insert(n);
                        let mut ok = members.len() as u64 == eig
                            && distinct.len() as u64 == eig + 1
                            && distinct.iter().all(|s| maxset.contains(s))
                            && maxes.len() as u64 >= 1 + p as u64;
                        for (_, s) in &members {
                            match ctx.are_similar(n, s, b)? {
                                Isomorphism::Yes(_) => {}
                                Isomorphism::No => ok = false,
                                Isomorphism::Unknown => return undecided(),
                            }
                        }
                        pass &= ok;
                        rows.push(json!({"branch": "family", "eigenring_size": eig, "alpha": alpha, "similar": distinct.len()}));
                    }
                }
            }
            let eigs: Vec<u64> = rows.iter().map(|x| x["eigenring_size"].as_u64().unwrap_or(0)).collect();
            done(
                pass,
                json!({"maximal": maxes.len(), "per_maximal": rows}),
                format!("|Max|={} |E(N)|={eigs:?}", maxes.len()),
            )
        });
    }
    for (p, m) in min_eig {
        let r = InstanceRef {
            name: format!("corpus/F{p}"),
            p,
            algebra: AlgebraSpec::Field,
            module: ModuleSpec::Regular,
        };
        rec.run("eigenring-size", &r, || {
            done(
                m >= p as u64,
                json!({"min_eigenring_size": m, "equals_two": m == 2}),
                format!("min |E(N)|={m} p={p}"),
            )
        });
    }
}

fn correspondence(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for inst in corpus {
        rec.run("correspondence", &inst.reference, || {
            if !is_projective(&inst.module)? {
                return Ok(Check::Omit);
            }
            let ctx = EndContext::new(inst.module.clone())?;
            let c = ctx.correspondence(b)?;
            for n in &c.maximal {
                ctx.max_to_max_right_ideal(n, &c.maximal_right_ideals_of_end)?;
            }
            let (a, e) = (c.maximal.len(), c.maximal_right_ideals_of_end.len());
            done(
                c.lands_in_maxr && c.injective && a <= e,
                json!({"maximal": a, "maxr_end": e, "lands_in_maxr": c.lands_in_maxr, "injective": c.injective}),
                format!("|Max|={a} |Maxr(E)|={e}"),
            )
        });
    }
}

fn length(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for inst in corpus {
        rec.run("length", &inst.reference, || {
            let m = &inst.module;
            if !is_projective(m)? {
                return Ok(Check::Omit);
            }
            let fp = m.is_generator()?;
            let ctx = EndContext::new(m.clone())?;
            let l_m = m.length(b)?;
            let l_e = RightModule::regular(ctx.end().algebra()).length(b)?;
            let mut compressible = None;
            if l_e == l_m {
                let mut all = true;
                for s in m.submodule_lattice(b)?.elements() {
                    if s.dim() > 0 {
                        all &= ctx.hom_ideal(s)?.dim() > 0;
                    }
                }
                compressible = Some(all);
            }
            let pass = l_e <= l_m && (!fp || l_e == l_m) && compressible != Some(false);
            done(
                pass,
                json!({"length_end": l_e, "length_module": l_m, "faithfully_projective": fp, "slightly_compressible": compressible}),
                format!("l(E)={l_e} l(M)={l_m} fp={fp}"),
            )
        });
        rec.run("minimal-hom", &inst.reference, || {
            let m = &inst.module;
            if !is_projective(m)? {
                return Ok(Check::Omit);
            }
            let ctx = EndContext::new(m.clone())?;
            let atoms = |elems: &[Submodule]| -> Vec<Submodule> {
                elems
                    .iter()
                    .filter(|s| s.dim() > 0)
                    .filter(|s| {
                        !elems
                            .iter()
                            .any(|t| t.dim() > 0 && t.dim() < s.dim() && s.space().includes(t.space()))
                    })
                    .cloned()
                    .collect()
            };
            let simple = atoms(m.submodule_lattice(b)?.elements());
            let e_lat = RightModule::regular(ctx.end().algebra()).submodule_lattice(b)?;
            let minimal = atoms(e_lat.elements());
            let mut pass = true;
            let mut dims = Vec::new();
            for a in &simple {
                let h = ctx.hom_ideal(a)?;
                dims.push(h.dim());
                pass &= h.dim() == 0 || minimal.iter().any(|x| x.space() == h.space());
            }
            done(
                pass,
                json!({"simple_submodules": simple.len(), "hom_dims": dims}),
                format!("{} simple submodules", simple.len()),
            )
        });
    }
}

fn eigenring(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for inst in corpus {
        rec.run("eigenring-chain", &inst.reference, || {
            if !is_projective(&inst.module)? {
                return Ok(Check::Omit);
            }
            let ctx = EndContext::new(inst.module.clone())?;
            let mut pass = true;
            let mut chains = Vec::new();
            for n in ctx.module().maximal_submodules(b)? {
                let chain = ctx.eigenring_chain(&n)?;
                let iso = ctx.eigenring_quotient_iso(&n)?;
                let division = ctx.eigenring(&n)?.is_division(b)?;
                pass &= chain.iter().all(|&d| d == chain[0])
                    && iso.kernel_is_hom_ideal
                    && iso.surjective
                    && iso.multiplicative
                    && iso.eigenring_dim == iso.end_quotient_dim
                    && division;
                chains.push(json!({"chain": chain, "kernel_is_hom_ideal": iso.kernel_is_hom_ideal,
                    "surjective": iso.surjective, "multiplicative": iso.multiplicative, "division": division}));
            }
            let dims: Vec<u64> = chains.iter().map(|c| c["chain"][0].as_u64().unwrap_or(0)).collect();
            done(pass, json!({"per_maximal": chains}), format!("dim E(N)={dims:?}"))
        });
    }
}

fn decomposition(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for inst in corpus {
        rec.run("decomposition", &inst.reference, || {
            let m = &inst.module;
            if !is_projective(m)? {
                return Ok(Check::Omit);
            }
            let mut pass = true;
            let mut reference: Option<Vec<RightModule>> = None;
            let mut shapes = Vec::new();
            for order in ProbeOrder::standard_set() {
                let dec = m.decompose_into_locals(&order, b)?;
                if dec.undecided {
                    return undecided();
                }
                let mut parts = Vec::new();
                let mut shape = Vec::new();
                let mut total = 0;
                for (s, k) in &dec.classes {
                    pass &= s.certified && s.end_local == Some(true) && s.local_module == Some(true);
                    shape.push((s.module.dim(), *k));
                    total += s.module.dim() * k;
                    parts.extend(std::iter::repeat(s.module.clone()).take(*k));
                }
                pass &= dec.complete && total == m.dim();
                shape.sort_unstable();
                shapes.push(shape);
                match &reference {
                    None => reference = Some(parts),
                    Some(r) => match match_multisets(r, &parts, b)? {
                        Some(same) => pass &= same && r.len() == parts.len(),
                        None => return undecided(),
                    },
                }
            }
            let key = format!("(dim, mult)={:?}", shapes[0]);
            done(pass, json!({"orders": shapes}), key)
        });
    }
}

fn transfer(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for inst in corpus {
        let m = &inst.module;
        rec.run("transfer", &inst.reference, || {
            let projective = is_projective(m)?;
            let fp = projective && m.is_generator()?;
            if !projective {
                return Ok(Check::Omit);
            }
            let ctx = EndContext::new(m.clone())?;
            let lattice = proper_lattice(m, b)?;
            let (subs, scope) = if lattice.len() <= 40 {
                (lattice, "lattice")
            } else {
                let mut v = m.maximal_submodules(b)?;
                v.push(m.zero_submodule());
                (v, "maximal_and_zero")
            };
            let (mut forward, mut backward, mut counter, mut similar) = (true, true, 0, 0);
            for n in &subs {
                for n2 in &subs {
                    let t = ctx.similarity_transfer_with(n, n2, true, fp, b)?;
                    if t.forward == Verdict::Undecided || t.backward == Verdict::Undecided {
                        return undecided();
                    }
                    forward &= t.forward == Verdict::Holds;
                    backward &= !fp || t.backward == Verdict::Holds;
                    counter += t.counterexample as usize;
                    similar += (t.submodules_similar == Some(true)) as usize;
                }
            }
            done(
                forward && backward,
                json!({"pairs": subs.len() * subs.len(), "scope": scope, "faithfully_projective": fp,
                    "forward": forward, "backward": if fp { json!(backward) } else { json!("not_applicable") },
                    "similar_pairs": similar, "counterexample_pairs": counter}),
                format!("{} pairs fp={fp} counterexamples={counter}", subs.len() * subs.len()),
            )
        });
    }
    let inst = example_instance(b);
    rec.run("transfer-counterexample", &inst.reference, || {
        let (ctx, bsub, zero) = example_parts(&inst, b)?;
        let t = ctx.similarity_transfer(&bsub, &zero, b)?;
        done(
            t.counterexample && t.backward == Verdict::NotApplicable,
            json!({"report": t}),
            "ideals similar, submodules not",
        )
    });
}

fn oracle(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    let mut simples: BTreeMap<String, Vec<RightModule>> = BTreeMap::new();
    for inst in corpus {
        let m = &inst.module;
        if pow(m.p(), m.dim()) > 1024 {
            continue;
        }
        let key = format!("{}:{}", inst.reference.p, inst.reference.algebra.label(inst.reference.p));
        rec.run("oracle-max", &inst.reference, || {
            if !simples.contains_key(&key) {
                simples.insert(key.clone(), simple_modules(&inst.algebra, b)?);
            }
            let s = &simples[&key];
            let a: BTreeSet<Submodule> = m.maximal_submodules(b)?.into_iter().collect();
            let c: BTreeSet<Submodule> = m.maximal_submodules_via_simples(&s, b)?.into_iter().collect();
            done(
                a == c,
                json!({"lattice": a.len(), "via_simples": c.len(), "simples": s.len()}),
                format!("|Max|={} via simples={}", a.len(), c.len()),
            )
        });
    }
}

fn lemmas(rec: &mut Recorder, corpus: &[Instance], b: &Budget) {
    for inst in corpus {
        let r = &inst.reference;
        let m = &inst.module;
        let p = m.p();
        let ctx = || EndContext::new(m.clone());
        let flags = || -> Result<(bool, bool)> { Ok((is_projective(m)?, m.is_generator()?)) };
        rec.run("colon-clauses", r, || {
            let ctx = ctx()?;
            let e = ctx.end().dim();
            let betas: Vec<Vec<u32>> = enumerate_vectors(e, p, b.enumeration)?.collect();
            let maxes: BTreeSet<Submodule> = m.maximal_submodules(b)?.into_iter().collect();
            let full = m.full();
            let lattice = proper_lattice(m, b)?;
            let mut pass = true;
            for n in &lattice {
                let data = ctx.idealizer_data(n)?;
                let maximal = maxes.contains(n);
                for beta in &betas {
                    let c = ctx.colon_coords(n, beta);
                    let in_a = data.hom_ideal.space().has(beta);
                    let in_i = data.idealizer.space().has(beta);
                    let contains = c.space().includes(n.space());
                    pass &= (c == full) == in_a;
                    pass &= contains == in_i;
                    pass &= (contains && c != full) == (in_i && !in_a);
                    if maximal {
                        pass &= (c == *n) == (in_i && !in_a);
                    }
                }
            }
            done(
                pass,
                json!({"submodules": lattice.len(), "endomorphisms": betas.len()}),
                format!("{} x {} triples", lattice.len(), betas.len()),
            )
        });
        rec.run("colon-similarity", r, || {
            let ctx = ctx()?;
            let maxes = m.maximal_submodules(b)?;
            let betas: Vec<Vec<u32>> = enumerate_vectors(ctx.end().dim(), p, b.enumeration)?.collect();
            let mut checked = 0usize;
            let mut pass = true;
            for n in &maxes {
                for beta in &betas {
                    let f = ctx.map(beta);
                    if !n.space().sum(&f.row_space())?.is_full() {
                        continue;
                    }
                    let (colon, _) = ctx.colon_similarity(n, &f)?;
                    pass &= maxes.contains(&colon);
                    checked += 1;
                }
            }
            done(pass, json!({"spanning_endomorphisms": checked}), format!("{checked} witnesses"))
        });
        rec.run("similarity-witness", r, || {
            let (projective, _) = flags()?;
            if !projective {
                return Ok(Check::Omit);
            }
            let ctx = ctx()?;
            let maxes = m.maximal_submodules(b)?;
            let mut lifted = 0usize;
            for n in &maxes {
                for n2 in &maxes {
                    match ctx.are_similar(n, n2, b)? {
                        Isomorphism::Yes(phi) => {
                            ctx.similarity_witness(n, n2, &phi)?;
                            lifted += 1;
                        }
                        Isomorphism::No => {}
                        Isomorphism::Unknown => return undecided(),
                    }
                }
            }
            done(true, json!({"witnesses": lifted}), format!("{lifted} lifted"))
        });
        rec.run("similarity-equivalence", r, || {
            let ctx = ctx()?;
            let part = ctx.similarity_classes(b)?;
            if part.undecided {
                return undecided();
            }
            let maxes = m.maximal_submodules(b)?;
            let class_of = |s: &Submodule| part.classes.iter().position(|c| c.members.contains(s));
            let mut rel = vec![vec![false; maxes.len()]; maxes.len()];
            for (i, x) in maxes.iter().enumerate() {
                for (j, y) in maxes.iter().enumerate() {
                    match ctx.are_similar(x, y, b)? {
                        Isomorphism::Yes(_) => rel[i][j] = true,
                        Isomorphism::No => {}
                        Isomorphism::Unknown => return undecided(),
                    }
                }
            }
            let mut pass = (0..maxes.len()).all(|i| rel[i][i]);
            for i in 0..maxes.len() {
                for j in 0..maxes.len() {
                    pass &= rel[i][j] == rel[j][i];
                    pass &= rel[i][j] == (class_of(&maxes[i]) == class_of(&maxes[j]));
                    for k in 0..maxes.len() {
                        pass &= !(rel[i][j] && rel[j][k]) || rel[i][k];
                    }
                }
            }
            // w_i^{-1} w_j : M/N_i → M/N_j for members of one class
            for c in &part.classes {
                for (x, wx) in c.members.iter().zip(&c.witnesses) {
                    let inv = wx
                        .inverse()
                        .ok_or_else(|| Error::Contract("witness not invertible".into()))?;
                    let (qx, _) = m.quotient(x);
                    for (y, wy) in c.members.iter().zip(&c.witnesses) {
                        let (qy, _) = m.quotient(y);
                        let f = inv.mul(wy);
                        pass &= qx.is_hom_to(&qy, &f) && f.is_invertible();
                    }
                }
            }
            let sizes: Vec<usize> = part.classes.iter().map(|c| c.members.len()).collect();
            done(pass, json!({"class_sizes": sizes}), format!("classes {sizes:?}"))
        });
        rec.run("eigenring-invariance", r, || {
            let (projective, _) = flags()?;
            if !projective {
                return Ok(Check::Omit);
            }
            let ctx = ctx()?;
            let part = ctx.similarity_classes(b)?;
            if part.undecided {
                return undecided();
            }
            let mut pass = true;
            let mut dims = Vec::new();
            for c in &part.classes {
                for s in &c.members {
                    pass &= ctx.eigenring(s)?.dim() == c.eigenring_dim;
                }
                dims.push(c.eigenring_dim);
            }
            done(pass, json!({"eigenring_dims": dims}), format!("dim E per class {dims:?}"))
        });
        rec.run("idealizer-coincidence", r, || {
            let (projective, _) = flags()?;
            if !projective {
                return Ok(Check::Omit);
            }
            let ctx = ctx()?;
            let maxes = m.maximal_submodules(b)?;
            let mut pass = true;
            for n in &maxes {
                pass &= ctx.idealizer_coincidence(n)?;
            }
            done(pass, json!({"maximal": maxes.len()}), format!("|Max|={}", maxes.len()))
        });
        rec.run("quasi-duo", r, || {
            let (projective, _) = flags()?;
            if !projective {
                return Ok(Check::Omit);
            }
            let ctx = ctx()?;
            let mut pass = true;
            let mut checked = 0;
            let mut count = 0;
            for n in m.maximal_submodules(b)? {
                let q = ctx.quasi_duo_dichotomy(&n, b)?;
                pass &= q.holds;
                checked += q.checked;
                count = q.max_count;
            }
            done(
                pass,
                json!({"maximal": count, "vectors_checked": checked}),
                format!("|Max|={count} checked={checked}"),
            )
        });
        rec.run("hom-monotone", r, || {
            let (_, generator) = flags()?;
            let ctx = ctx()?;
            let lattice: Vec<Submodule> = m.submodule_lattice(b)?.elements().to_vec();
            let homs = lattice
                .iter()
                .map(|s| ctx.hom_ideal(s))
                .collect::<Result<Vec<_>>>()?;
            let mut pass = true;
            let mut pairs = 0;
            for (i, x) in lattice.iter().enumerate() {
                for (j, y) in lattice.iter().enumerate() {
                    if i == j || !y.space().includes(x.space()) {
                        continue;
                    }
                    pairs += 1;
                    pass &= homs[j].space().includes(homs[i].space());
                    if generator {
                        pass &= homs[i] != homs[j];
                    }
                }
            }
            done(
                pass,
                json!({"pairs": pairs, "strict": generator}),
                format!("{pairs} pairs strict={generator}"),
            )
        });
        rec.run("free-summand", r, || {
            let (_, generator) = flags()?;
            if !generator {
                return Ok(Check::Omit);
            }
            let d = inst.algebra.dim();
            match m.free_summand()? {
                Some(fs) => done(
                    fs.copies <= d,
                    json!({"copies": fs.copies, "dim_r": d}),
                    format!("R in M^{}", fs.copies),
                ),
                None => done(false, json!({"copies": null}), "no free summand"),
            }
        });
        if let ModuleSpec::DirectSum { summands } = &r.module {
            rec.run("projective-sum", r, || {
                let parts = summands
                    .iter()
                    .map(|s| s.build(&inst.algebra))
                    .collect::<Result<Vec<_>>>()?;
                let each = parts.iter().map(is_projective).collect::<Result<Vec<_>>>()?;
                let whole = is_projective(m)?;
                done(
                    whole == each.iter().all(|&x| x),
                    json!({"parts": each, "sum": whole}),
                    format!("parts {each:?} sum {whole}"),
                )
            });
        }
        rec.run("jordan-holder", r, || match m.jordan_holder_check(b)? {
            Some(ok) => done(ok, json!({"length": m.length(b)?}), format!("l={}", m.length(b)?)),
            None => undecided(),
        });
    }
}
