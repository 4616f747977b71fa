use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Isomorphism, RightModule, Submodule};
use crate::algebra::Algebra;
use crate::fqlinalg::{check_budget, enumerate_vectors, Subspace};
use crate::{Budget, Error, Result};

/// Every submodule of a module, in canonical order.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    elements: Vec<Submodule>,
}

impl SubmoduleLattice {
    pub fn elements(&self) -> &[Submodule] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements strictly inside `top` that no other element strictly inside
    /// `top` contains.
    pub fn covered_by(&self, top: &Submodule) -> Vec<Submodule> {
        let below: Vec<&Submodule> = self
            .elements
            .iter()
            .filter(|s| s.dim() < top.dim() && top.space.includes(&s.space))
            .collect();
        below
            .iter()
            .filter(|s| {
                !below
                    .iter()
                    .any(|t| t.dim() > s.dim() && t.space.includes(&s.space))
            })
            .map(|s| (*s).clone())
            .collect()
    }

    pub fn contains(&self, s: &Submodule) -> bool {
        self.elements.binary_search(s).is_ok()
    }
}

/// Nonzero vectors whose first nonzero coordinate is 1.
fn projective_points(dim: usize, p: u32, budget: u64) -> Result<impl Iterator<Item = Vec<u32>>> {
    Ok(enumerate_vectors(dim, p, budget)?
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1)))
}

pub(crate) fn subquotient(module: &RightModule, upper: &Submodule, lower: &Submodule) -> RightModule {
    let (u, _) = module.restrict(upper);
    let coords: Vec<Vec<u32>> = lower
        .space
        .basis_vectors()
        .map(|v| upper.space.coordinates(v).expect("lower ⊆ upper"))
        .collect();
    let inner = Subspace::span(module.p(), upper.dim(), &coords).expect("coordinates");
    let inner = u.submodule(inner).expect("submodule of the restriction");
    u.quotient(&inner).0
}

impl RightModule {
    /// All submodules: the cyclic ones `vR`, closed under sums.
    pub fn submodule_lattice(&self, budget: &Budget) -> Result<SubmoduleLattice> {
        let mut set: BTreeSet<Submodule> = BTreeSet::new();
        set.insert(self.zero_submodule());
        for v in projective_points(self.dim, self.p(), budget.enumeration)? {
            set.insert(self.cyclic(&v));
        }
        let mut frontier: Vec<Submodule> = set.iter().cloned().collect();
        while !frontier.is_empty() {
            let current: Vec<Submodule> = set.iter().cloned().collect();
            let mut next = Vec::new();
            for a in &frontier {
                for b in &current {
                    let s = self.sum(a, b);
                    if !set.contains(&s) {
                        set.insert(s.clone());
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
        Ok(SubmoduleLattice {
            elements: set.into_iter().collect(),
        })
    }

    pub fn maximal_submodules(&self, budget: &Budget) -> Result<Vec<Submodule>> {
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        Ok(self.submodule_lattice(budget)?.covered_by(&self.full()))
    }

    /// Kernels of the nonzero maps onto each simple module.
    pub fn maximal_submodules_via_simples(
        &self,
        simples: &[RightModule],
        budget: &Budget,
    ) -> Result<Vec<Submodule>> {
        let mut out = BTreeSet::new();
        for s in simples {
            let hom = self.hom_space(s)?;
            for c in projective_points(hom.dim(), self.p(), budget.enumeration)? {
                let f = hom.map(&c);
                if f.rank() != s.dim() {
                    return Err(Error::Contract("nonzero map onto a simple module is not onto".into()));
                }
                out.insert(Submodule {
                    space: f.left_kernel(),
                });
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn radical(&self, budget: &Budget) -> Result<Submodule> {
        let mut rad = self.full();
        for n in self.maximal_submodules(budget)? {
            rad = self.intersection(&rad, &n);
        }
        Ok(rad)
    }

    /// `0 = N_0 ⊊ N_1 ⊊ … ⊊ N_ℓ = M`, descending from `M` through the least
    /// (or greatest) maximal submodule in canonical order at each step.
    pub fn composition_series(&self, greatest: bool, budget: &Budget) -> Result<Vec<Submodule>> {
        let lattice = self.submodule_lattice(budget)?;
        let mut chain = vec![self.full()];
        loop {
            let top = chain.last().expect("nonempty");
            if top.dim() == 0 {
                break;
            }
            let covered = lattice.covered_by(top);
            let next = if greatest {
                covered.into_iter().max()
            } else {
                covered.into_iter().min()
            };
            chain.push(next.expect("a nonzero module has a maximal submodule"));
        }
        chain.reverse();
        Ok(chain)
    }

    pub fn length(&self, budget: &Budget) -> Result<usize> {
        Ok(self.composition_series(false, budget)?.len() - 1)
    }

    pub fn composition_factors(&self, greatest: bool, budget: &Budget) -> Result<Vec<RightModule>> {
        let chain = self.composition_series(greatest, budget)?;
        Ok(chain
            .windows(2)
            .map(|w| subquotient(self, &w[1], &w[0]))
            .collect())
    }

    /// Compares the least and greatest descents: lengths and factor
    /// multisets up to isomorphism. `None` when an isomorphism query is
    /// undecided.
    pub fn jordan_holder_check(&self, budget: &Budget) -> Result<Option<bool>> {
        let a = self.composition_factors(false, budget)?;
        let b = self.composition_factors(true, budget)?;
        if a.len() != b.len() {
            return Ok(Some(false));
        }
        match_multisets(&a, &b, budget)
    }

    /// A unique maximal submodule containing every proper submodule.
    pub fn is_local_module(&self, budget: &Budget) -> Result<bool> {
        if self.dim == 0 {
            return Ok(false);
        }
        let lattice = self.submodule_lattice(budget)?;
        let max = lattice.covered_by(&self.full());
        if max.len() != 1 {
            return Ok(false);
        }
        Ok(lattice
            .elements()
            .iter()
            .filter(|s| s.dim() < self.dim)
            .all(|s| max[0].space.includes(&s.space)))
    }
}

/// Pairs up isomorphic modules; `None` if some query is undecided.
pub(crate) fn match_multisets(
    a: &[RightModule],
    b: &[RightModule],
    budget: &Budget,
) -> Result<Option<bool>> {
    let mut used = vec![false; b.len()];
    let mut undecided = false;
    for x in a {
        let mut found = false;
        for (j, y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            match x.is_isomorphic(y, budget)? {
                Isomorphism::Yes(_) => {
                    used[j] = true;
                    found = true;
                    break;
                }
                Isomorphism::No => {}
                Isomorphism::Unknown => undecided = true,
            }
        }
        if !found {
            return Ok(if undecided { None } else { Some(false) });
        }
    }
    Ok(Some(true))
}

/// Simple modules `R/N` for `N` maximal in `R_R`, one per isomorphism class.
pub fn simple_modules(algebra: &Arc<Algebra>, budget: &Budget) -> Result<Vec<RightModule>> {
    let regular = RightModule::regular(algebra);
    check_budget(regular.dim(), algebra.p(), budget.enumeration)?;
    let mut out: Vec<RightModule> = Vec::new();
    for n in regular.maximal_submodules(budget)? {
        let (s, _) = regular.quotient(&n);
        let mut seen = false;
        for t in &out {
            match s.is_isomorphic(t, budget)? {
                Isomorphism::Yes(_) => {
                    seen = true;
                    break;
                }
                Isomorphism::No => {}
                Isomorphism::Unknown => {
                    return Err(Error::NotApplicable(
                        "isomorphism of simple modules undecided within budget".into(),
                    ))
                }
            }
        }
        if !seen {
            out.push(s);
        }
    }
    Ok(out)
}

impl Algebra {
    /// Maximal right ideals, as the maximal submodules of the regular module.
    pub fn maximal_right_ideals(self: &Arc<Self>, budget: &Budget) -> Result<Vec<crate::RightIdeal>> {
        RightModule::regular(self)
            .maximal_submodules(budget)?
            .into_iter()
            .map(|n| self.right_ideal(n.into_space()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual_numbers;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn simple_module_lattice() {
        let f = Arc::new(Algebra::prime_field(3).unwrap());
        let m = RightModule::regular(&f);
        let l = m.submodule_lattice(&b()).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(m.maximal_submodules(&b()).unwrap(), vec![m.zero_submodule()]);
        assert_eq!(m.length(&b()).unwrap(), 1);
        assert!(m.is_local_module(&b()).unwrap());
    }

    #[test]
    fn matrix_ring_counts() {
        let a = Arc::new(Algebra::matrix_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        assert_eq!(r.maximal_submodules(&b()).unwrap().len(), 3);
        assert_eq!(r.length(&b()).unwrap(), 2);
        assert!(!r.is_local_module(&b()).unwrap());
        assert!(r.radical(&b()).unwrap().space().is_zero());
        assert_eq!(simple_modules(&a, &b()).unwrap().len(), 1);
    }

    #[test]
    fn triangular_counts() {
        let a = Arc::new(Algebra::triangular_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        assert_eq!(r.length(&b()).unwrap(), 3);
        assert_eq!(r.maximal_submodules(&b()).unwrap().len(), 2);
        assert_eq!(r.radical(&b()).unwrap().dim(), 1);
        assert_eq!(simple_modules(&a, &b()).unwrap().len(), 2);
        assert_eq!(r.jordan_holder_check(&b()).unwrap(), Some(true));
    }

    #[test]
    fn dual_numbers_are_local() {
        let a = Arc::new(dual_numbers(2).unwrap());
        let r = RightModule::regular(&a);
        let max = r.maximal_submodules(&b()).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].space(), &Subspace::span(2, 2, &[vec![0, 1]]).unwrap());
        assert!(r.is_local_module(&b()).unwrap());
    }

    #[test]
    fn oracle_agreement() {
        for a in [
            Algebra::matrix_algebra(2, 2).unwrap(),
            Algebra::triangular_algebra(2, 3).unwrap(),
            dual_numbers(2).unwrap(),
        ] {
            let a = Arc::new(a);
            let simples = simple_modules(&a, &b()).unwrap();
            let r = RightModule::regular(&a);
            assert_eq!(
                r.maximal_submodules(&b()).unwrap(),
                r.maximal_submodules_via_simples(&simples, &b()).unwrap()
            );
        }
    }

    #[test]
    fn lattice_over_budget() {
        let a = Arc::new(Algebra::matrix_algebra(2, 3).unwrap());
        let r = RightModule::regular(&a);
        assert!(matches!(
            r.submodule_lattice(&Budget::with_enumeration(10)),
            Err(Error::OverBudget { .. })
        ));
    }
}
