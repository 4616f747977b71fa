use std::sync::Arc;

use super::spec::{AlgebraSpec, FieldSpec, InstanceSpec};
use crate::algebra::Algebra;
use crate::module::{ModuleSpec, RightModule};
use crate::{Budget, Result};

fn rings() -> Vec<(u32, AlgebraSpec)> {
    let dual = AlgebraSpec::StructureConstants {
        dim: 2,
        table: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        unit: vec![1, 0],
        transpose: None,
    };
    vec![
        (2, AlgebraSpec::Matrix { n: 2 }),
        (3, AlgebraSpec::Matrix { n: 2 }),
        (2, AlgebraSpec::Matrix { n: 3 }),
        (2, AlgebraSpec::Triangular { n: 2 }),
        (3, AlgebraSpec::Triangular { n: 2 }),
        (2, AlgebraSpec::Triangular { n: 3 }),
        (2, dual),
        (
            2,
            AlgebraSpec::Product {
                factors: vec![AlgebraSpec::Field, AlgebraSpec::Field],
            },
        ),
    ]
}

/// The matrix units `E_ii` (or the factor units of a product), omitting the
/// unit itself.
fn diagonal_idempotents(spec: &AlgebraSpec, algebra: &Algebra) -> Vec<Vec<u32>> {
    let d = algebra.dim();
    let unit_vec = |i: usize| {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    };
    let out: Vec<Vec<u32>> = match spec {
        AlgebraSpec::Matrix { n } => (0..*n).map(|i| unit_vec(i * n + i)).collect(),
        AlgebraSpec::Triangular { n } => {
            let units = Algebra::triangular_units(*n);
            (0..*n)
                .map(|i| unit_vec(units.iter().position(|&u| u == (i, i)).unwrap()))
                .collect()
        }
        AlgebraSpec::Field | AlgebraSpec::DualNumbers => vec![],
        AlgebraSpec::Product { factors } => {
            let mut out = Vec::new();
            let mut offset = 0;
            for f in factors {
                let fa = f.build(algebra.p()).expect("factor of a built product");
                let mut v = vec![0; d];
                v[offset..offset + fa.dim()].copy_from_slice(fa.unit());
                out.push(v);
                offset += fa.dim();
            }
            out
        }
        AlgebraSpec::StructureConstants { .. } => (0..d)
            .map(unit_vec)
            .filter(|e| algebra.is_idempotent(e))
            .collect(),
    };
    out.into_iter().filter(|e| e.as_slice() != algebra.unit()).collect()
}

/// `R/N` for the first maximal right ideal `N` with `R/N` not projective, or
/// the first `R/N` when every simple quotient is projective.
fn quotient_spec(algebra: &Arc<Algebra>) -> Result<ModuleSpec> {
    let regular = RightModule::regular(algebra);
    let maxes = regular.maximal_submodules(&Budget::default())?;
    let mut first = None;
    for n in &maxes {
        let (q, _) = regular.quotient(n);
        if !q.is_projective()?.projective {
            return Ok(q.to_spec());
        }
        first.get_or_insert(q);
    }
    Ok(first.expect("a nonzero algebra has a maximal right ideal").to_spec())
}

/// Every corpus ring with its regular module, `eR` for each diagonal
/// idempotent, sums of two distinct `eR`, and one quotient module.
pub fn default_corpus() -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    for (p, spec) in rings() {
        let algebra = Arc::new(spec.build(p).expect("corpus ring"));
        let label = match spec {
            AlgebraSpec::StructureConstants { .. } => format!("Dual(F{p})"),
            _ => spec.label(p),
        };
        let mk = |tag: String, module: ModuleSpec| InstanceSpec {
            name: Some(format!("{label}/{tag}")),
            field: FieldSpec { p },
            algebra: spec.clone(),
            module,
            budgets: Budget::default(),
        };
        out.push(mk("R".into(), ModuleSpec::Regular));
        let idems = diagonal_idempotents(&spec, &algebra);
        for (i, e) in idems.iter().enumerate() {
            out.push(mk(format!("e{}R", i + 1), ModuleSpec::Idempotent { e: e.clone() }));
        }
        for i in 0..idems.len() {
            for j in i + 1..idems.len() {
                let summands = vec![
                    ModuleSpec::Idempotent { e: idems[i].clone() },
                    ModuleSpec::Idempotent { e: idems[j].clone() },
                ];
                out.push(mk(format!("e{}R+e{}R", i + 1, j + 1), ModuleSpec::DirectSum { summands }));
            }
        }
        out.push(mk("R/N".into(), quotient_spec(&algebra).expect("corpus quotient")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds() {
        let corpus = default_corpus();
        assert_eq!(corpus.len(), 5 + 5 + 8 + 5 + 5 + 8 + 2 + 5);
        for spec in &corpus {
            let inst = spec.build().unwrap();
            assert!(inst.module.dim() > 0, "{}", inst.name());
        }
        let names: std::collections::BTreeSet<_> = corpus.iter().map(|s| s.name.clone()).collect();
        assert_eq!(names.len(), corpus.len());
    }

    #[test]
    fn triangular_quotient_is_not_projective() {
        let spec = default_corpus()
            .into_iter()
            .find(|s| s.name.as_deref() == Some("T2(F2)/R/N"))
            .unwrap();
        let inst = spec.build().unwrap();
        assert_eq!(inst.module.dim(), 1);
        assert!(!inst.module.is_projective().unwrap().projective);
    }
}
