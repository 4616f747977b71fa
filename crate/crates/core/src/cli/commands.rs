use std::fmt::Write as _;

use serde_json::{json, Value};

use super::spec::Instance;
use crate::module::{is_local_ring, simple_modules, ProbeOrder, RightModule};
use crate::similarity::EndContext;
use crate::{Budget, Error, Result};

/// JSON document, text table and overall verdict of one command.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub json: Value,
    pub table: String,
    pub pass: bool,
}

fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::OverBudget { .. } | Error::NotApplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn table(rows: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<24} {v}");
    }
    s
}

fn show<T: std::fmt::Debug>(x: &Option<T>) -> String {
    match x {
        Some(v) => format!("{v:?}"),
        None => "skipped (budget)".into(),
    }
}

pub fn check_ring(inst: &Instance, b: &Budget) -> Result<CommandOutput> {
    let alg = &inst.algebra;
    let regular = RightModule::regular(alg);
    let maxr = optional(alg.maximal_right_ideals(b))?;
    let two_sided = maxr
        .as_ref()
        .map(|v| v.iter().filter(|m| alg.is_two_sided(m)).count());
    let radical = optional(regular.radical(b))?.map(|r| r.dim());
    let length = optional(regular.length(b))?;
    let local = optional(is_local_ring(alg, b))?;
    let simples = optional(simple_modules(alg, b))?.map(|v| v.iter().map(RightModule::dim).collect::<Vec<_>>());
    let json = json!({
        "name": inst.name(), "p": alg.p(), "dim": alg.dim(), "valid": true,
        "local": local, "maximal_right_ideals": maxr.as_ref().map(Vec::len),
        "two_sided_maximal": two_sided, "radical_dim": radical, "length": length,
        "simple_module_dims": simples, "transpose": alg.transpose_perm().is_some(),
    });
    let t = table(&[
        ("ring", inst.name().to_string()),
        ("p", alg.p().to_string()),
        ("dim", alg.dim().to_string()),
        ("valid", "associative, unital".into()),
        ("local", show(&local)),
        ("|Maxr|", show(&maxr.as_ref().map(Vec::len))),
        ("two-sided maximal", show(&two_sided)),
        ("radical dim", show(&radical)),
        ("length of R_R", show(&length)),
        ("simple module dims", show(&simples)),
    ]);
    Ok(CommandOutput {
        json,
        table: t,
        pass: true,
    })
}

pub fn inspect_module(inst: &Instance, b: &Budget) -> Result<CommandOutput> {
    let m = &inst.module;
    let projective = m.is_projective()?.projective;
    let generator = m.is_generator()?;
    let trace = m.trace_ideal()?.dim();
    let radical = optional(m.radical(b))?.map(|r| r.dim());
    let length = optional(m.length(b))?;
    let maxes = optional(m.maximal_submodules(b))?.map(|v| v.len());
    let local_module = optional(m.is_local_module(b))?;
    let (end_dim, end_local) = if m.dim() == 0 {
        (0, None)
    } else {
        let e = m.end_ring()?;
        (e.dim(), optional(is_local_ring(e.algebra(), b))?)
    };
    let summands = optional(m.decompose_into_locals(&ProbeOrder::Natural, b))?.map(|d| {
        d.classes
            .iter()
            .map(|(s, k)| (s.module.dim(), *k))
            .collect::<Vec<_>>()
    });
    let json = json!({
        "name": inst.name(), "dim": m.dim(), "radical_dim": radical, "length": length,
        "projective": projective, "generator": generator,
        "faithfully_projective": projective && generator, "trace_ideal_dim": trace,
        "maximal_submodules": maxes, "end_dim": end_dim, "end_local": end_local,
        "local_module": local_module, "local_summands": summands,
    });
    let t = table(&[
        ("module", inst.name().to_string()),
        ("dim", m.dim().to_string()),
        ("radical dim", show(&radical)),
        ("length", show(&length)),
        ("projective", projective.to_string()),
        ("generator", generator.to_string()),
        ("faithfully projective", (projective && generator).to_string()),
        ("trace ideal dim", trace.to_string()),
        ("|Max|", show(&maxes)),
        ("dim End", end_dim.to_string()),
        ("End local", show(&end_local)),
        ("local module", show(&local_module)),
        ("summands (dim, mult)", show(&summands)),
    ]);
    Ok(CommandOutput {
        json,
        table: t,
        pass: true,
    })
}

/// Classes of `Max(M)`, and on the ring the bound
/// `|Maxr(T) ∖ Max(T)| ≥ |I| + Σ |𝕀(M)/M|` over the classes `I` of one-sided
/// maximal right ideals.
pub fn similarity_classes(inst: &Instance, b: &Budget) -> Result<CommandOutput> {
    let ctx = EndContext::new(inst.module.clone())?;
    let part = ctx.similarity_classes(b)?;
    let p = inst.algebra.p() as u64;
    let classes: Vec<Value> = part
        .classes
        .iter()
        .map(|c| {
            json!({
                "size": c.members.len(), "eigenring_dim": c.eigenring_dim,
                "members": c.members.iter().map(|s| s.space().basis().to_rows()).collect::<Vec<_>>(),
            })
        })
        .collect();

    let alg = &inst.algebra;
    let mut one_sided = 0u64;
    let mut bound = 0u64;
    let mut seen = std::collections::BTreeSet::new();
    for m in alg.maximal_right_ideals(b)? {
        let cls = alg.similarity_class_of_maximal(&m, b.enumeration)?;
        if cls.family.is_none() {
            continue;
        }
        one_sided += 1;
        if seen.insert(cls.members.clone()) {
            bound += 1 + p.pow(cls.eigenring_dim as u32);
        }
    }
    let aggregate = one_sided >= bound;
    let json = json!({
        "name": inst.name(), "classes": classes, "undecided": part.undecided,
        "aggregate": {"one_sided_maximal": one_sided, "classes": seen.len(), "bound": bound, "holds": aggregate},
    });
    let mut t = String::new();
    let _ = writeln!(t, "{:<8} {:<6} {}", "class", "size", "dim E(N)");
    for (i, c) in part.classes.iter().enumerate() {
        let _ = writeln!(t, "{:<8} {:<6} {}", i + 1, c.members.len(), c.eigenring_dim);
    }
    let _ = writeln!(
        t,
        "one-sided maximal right ideals {one_sided} >= {bound} over {} classes: {}",
        seen.len(),
        if aggregate { "holds" } else { "FAILS" }
    );
    if part.undecided {
        let _ = writeln!(t, "some isomorphism queries undecided");
    }
    Ok(CommandOutput {
        json,
        table: t,
        pass: aggregate && !part.undecided,
    })
}
