use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{dual_numbers, Algebra};
use crate::module::{ModuleSpec, RightModule};
use crate::{Budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Field,
    DualNumbers,
    Matrix {
        n: usize,
    },
    Triangular {
        n: usize,
    },
    Product {
        factors: Vec<AlgebraSpec>,
    },
    StructureConstants {
        dim: usize,
        table: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transpose: Option<Vec<usize>>,
    },
}

impl AlgebraSpec {
    pub fn build(&self, p: u32) -> Result<Algebra> {
        match self {
            AlgebraSpec::Field => Algebra::prime_field(p),
            AlgebraSpec::DualNumbers => dual_numbers(p),
            AlgebraSpec::Matrix { n } => Algebra::matrix_algebra(*n, p),
            AlgebraSpec::Triangular { n } => Algebra::triangular_algebra(*n, p),
            AlgebraSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::InvalidTable("product of no factors".into()))?;
                let mut acc = first.build(p)?;
                for f in it {
                    acc = Algebra::product(&acc, &f.build(p)?)?;
                }
                Ok(acc)
            }
            AlgebraSpec::StructureConstants {
                dim,
                table,
                unit,
                transpose,
            } => {
                let a = Algebra::from_structure_constants(p, *dim, table, unit.clone())?;
                match transpose {
                    Some(t) => a.with_transpose(t.clone()),
                    None => Ok(a),
                }
            }
        }
    }

    pub fn label(&self, p: u32) -> String {
        match self {
            AlgebraSpec::Field => format!("F{p}"),
            AlgebraSpec::DualNumbers => format!("Dual(F{p})"),
            AlgebraSpec::Matrix { n } => format!("M{n}(F{p})"),
            AlgebraSpec::Triangular { n } => format!("T{n}(F{p})"),
            AlgebraSpec::Product { factors } => factors
                .iter()
                .map(|f| f.label(p))
                .collect::<Vec<_>>()
                .join("x"),
            AlgebraSpec::StructureConstants { dim, .. } => format!("A{dim}(F{p})"),
        }
    }
}

fn regular() -> ModuleSpec {
    ModuleSpec::Regular
}

/// One ring, one module and the budgets to examine them with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub algebra: AlgebraSpec,
    #[serde(default = "regular")]
    pub module: ModuleSpec,
    #[serde(default)]
    pub budgets: Budget,
}

/// What a report records about an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceRef {
    pub name: String,
    pub p: u32,
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub reference: InstanceRef,
    pub budget: Budget,
    pub algebra: Arc<Algebra>,
    pub module: RightModule,
}

impl Instance {
    pub fn name(&self) -> &str {
        &self.reference.name
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(Box<InstanceSpec>),
    Many(Vec<InstanceSpec>),
}

impl InstanceSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// A single instance or an array of them.
    pub fn list_from_json(s: &str) -> Result<Vec<Self>> {
        Ok(match serde_json::from_str::<OneOrMany>(s)? {
            OneOrMany::One(x) => vec![*x],
            OneOrMany::Many(v) => v,
        })
    }

    pub fn load_list(path: &Path) -> Result<Vec<Self>> {
        Self::list_from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<Instance> {
        let b = &self.budgets;
        if b.enumeration == 0 || b.trials == 0 {
            return Err(Error::InvalidSpec("budgets must be positive".into()));
        }
        let p = self.field.p;
        let algebra = Arc::new(self.algebra.build(p)?);
        let module = self.module.build(&algebra)?;
        let name = self.name.clone().unwrap_or_else(|| {
            let m = match &self.module {
                ModuleSpec::Regular => "regular".to_string(),
                ModuleSpec::Idempotent { .. } => "eR".to_string(),
                ModuleSpec::DirectSum { summands } => format!("sum{}", summands.len()),
                ModuleSpec::Action { dim, .. } => format!("action{dim}"),
            };
            format!("{}/{}", self.algebra.label(p), m)
        });
        Ok(Instance {
            reference: InstanceRef {
                name,
                p,
                algebra: self.algebra.clone(),
                module: self.module.clone(),
            },
            budget: self.budgets.clone(),
            algebra,
            module,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build() {
        let s = r#"{"field":{"p":2},"algebra":{"kind":"triangular","n":2},
                    "module":{"kind":"idempotent","e":[1,0,0]},
                    "budgets":{"enumeration":1000,"trials":8,"seed":3}}"#;
        let spec = InstanceSpec::from_json(s).unwrap();
        let inst = spec.build().unwrap();
        assert_eq!(inst.module.dim(), 2);
        assert_eq!(inst.name(), "T2(F2)/eR");
        assert_eq!(inst.budget.seed, 3);
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(InstanceSpec::from_json(&back).unwrap(), spec);
    }

    #[test]
    fn defaults_and_rejections() {
        let spec = InstanceSpec::from_json(r#"{"field":{"p":3},"algebra":{"kind":"matrix","n":2}}"#).unwrap();
        assert_eq!(spec.module, ModuleSpec::Regular);
        assert_eq!(spec.budgets, Budget::default());
        assert!(InstanceSpec::from_json(r#"{"field":{"p":4},"algebra":{"kind":"field"}}"#)
            .unwrap()
            .build()
            .is_err());
        assert!(InstanceSpec::from_json(r#"{"field":{"p":2},"algebra":{"kind":"ring"}}"#).is_err());
        let zero = r#"{"field":{"p":2},"algebra":{"kind":"field"},"budgets":{"enumeration":0}}"#;
        assert!(InstanceSpec::from_json(zero).unwrap().build().is_err());
    }

    #[test]
    fn list_forms() {
        let one = r#"{"field":{"p":2},"algebra":{"kind":"field"}}"#;
        assert_eq!(InstanceSpec::list_from_json(one).unwrap().len(), 1);
        let many = format!("[{one},{one}]");
        assert_eq!(InstanceSpec::list_from_json(&many).unwrap().len(), 2);
    }
}
