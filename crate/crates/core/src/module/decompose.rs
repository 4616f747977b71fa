use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Isomorphism, RightModule, Submodule};
use crate::algebra::Algebra;
use crate::fqlinalg::{count_vectors, enumerate_vectors, FpMatrix, Subspace};
use crate::{Budget, Result};

/// Order in which endomorphism basis elements are tried as splitters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeOrder {
    Natural,
    Reversed,
    Rotated(usize),
    Shuffled(u64),
}

impl ProbeOrder {
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        match *self {
            ProbeOrder::Natural => {}
            ProbeOrder::Reversed => v.reverse(),
            ProbeOrder::Rotated(k) => {
                if n > 0 {
                    v.rotate_left(k % n)
                }
            }
            ProbeOrder::Shuffled(seed) => v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
        v
    }

    /// Five distinct orders.
    pub fn standard_set() -> [ProbeOrder; 5] {
        [
            ProbeOrder::Natural,
            ProbeOrder::Reversed,
            ProbeOrder::Rotated(1),
            ProbeOrder::Shuffled(1),
            ProbeOrder::Shuffled(2),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: RightModule,
    /// Rows are the summand's basis in the coordinates of the original module.
    pub embedding: FpMatrix,
    pub end_dim: usize,
    /// No endomorphism is neither nilpotent nor invertible, checked over all
    /// of `End`.
    pub certified: bool,
    pub end_local: Option<bool>,
    pub local_module: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Every summand certified indecomposable.
    pub complete: bool,
}

/// Classes of summands up to isomorphism, with multiplicities.
#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub classes: Vec<(Summand, usize)>,
    pub complete: bool,
    /// Some isomorphism query was undecided.
    pub undecided: bool,
}

/// Non-units form an additive subgroup: their span has exactly as many
/// elements as there are non-units.
pub fn is_local_ring(algebra: &Algebra, budget: &Budget) -> Result<bool> {
    let p = algebra.p();
    let d = algebra.dim();
    let mut nonunits = Vec::new();
    for x in enumerate_vectors(d, p, budget.enumeration)? {
        if !algebra.is_unit(&x) {
            nonunits.push(x);
        }
    }
    let span = Subspace::span(p, d, &nonunits)?;
    Ok(count_vectors(span.dim(), p) == nonunits.len() as u128)
}

/// Fitting split: `M = ker φ^m ⊕ im φ^m` when both are nonzero.
fn fitting_split(phi: &FpMatrix) -> Option<(Subspace, Subspace)> {
    let m = phi.rows();
    let g = phi.pow(m as u32);
    let k = g.left_kernel();
    if k.dim() == 0 || k.dim() == m {
        return None;
    }
    Some((k, g.row_space()))
}

fn find_split(
    module: &RightModule,
    order: &ProbeOrder,
    budget: &Budget,
) -> Result<(Option<(Subspace, Subspace)>, bool)> {
    let end = module.end_ring()?;
    let maps = end.basis_maps();
    let perm = order.permutation(maps.len());
    for &i in &perm {
        if let Some(s) = fitting_split(&maps[i]) {
            return Ok((Some(s), false));
        }
    }
    for (a, &i) in perm.iter().enumerate() {
        for &j in &perm[a + 1..] {
            if let Some(s) = fitting_split(&maps[i].add(&maps[j])) {
                return Ok((Some(s), false));
            }
        }
    }
    if count_vectors(maps.len(), module.p()) > budget.enumeration as u128 {
        return Ok((None, false));
    }
    for c in enumerate_vectors(maps.len(), module.p(), budget.enumeration)? {
        let mut c2 = vec![0; c.len()];
        for (k, &i) in perm.iter().enumerate() {
            c2[i] = c[k];
        }
        if let Some(s) = fitting_split(&end.to_map(&c2)) {
            return Ok((Some(s), false));
        }
    }
    Ok((None, true))
}

impl RightModule {
    pub fn fitting_decompose(&self, order: &ProbeOrder, budget: &Budget) -> Result<Decomposition> {
        let mut out = Vec::new();
        let id = FpMatrix::identity(self.p(), self.dim);
        let mut stack = vec![(self.clone(), id)];
        while let Some((m, embed)) = stack.pop() {
            if m.dim == 0 {
                continue;
            }
            let (split, certified) = find_split(&m, order, budget)?;
            match split {
                Some((k, i)) => {
                    for part in [k, i] {
                        let sub = Submodule { space: part };
                        let (piece, incl) = m.restrict(&sub);
                        stack.push((piece, incl.mul(&embed)));
                    }
                }
                None => {
                    let end = m.end_ring()?;
                    let end_local = match is_local_ring(end.algebra(), budget) {
                        Ok(b) => Some(b),
                        Err(crate::Error::OverBudget { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    let local_module = match m.is_local_module(budget) {
                        Ok(b) => Some(b),
                        Err(crate::Error::OverBudget { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    out.push(Summand {
                        end_dim: end.dim(),
                        module: m,
                        embedding: embed,
                        certified,
                        end_local,
                        local_module,
                    });
                }
            }
        }
        out.sort_by(|a, b| {
            (a.module.dim, a.embedding.row_space()).cmp(&(b.module.dim, b.embedding.row_space()))
        });
        let complete = out.iter().all(|s| s.certified);
        Ok(Decomposition {
            summands: out,
            complete,
        })
    }

    pub fn decompose_into_locals(&self, order: &ProbeOrder, budget: &Budget) -> Result<LocalDecomposition> {
        let dec = self.fitting_decompose(order, budget)?;
        let mut classes: Vec<(Summand, usize)> = Vec::new();
        let mut undecided = false;
        'next: for s in dec.summands {
            for (rep, count) in classes.iter_mut() {
                match rep.module.is_isomorphic(&s.module, budget)? {
                    Isomorphism::Yes(_) => {
                        *count += 1;
                        continue 'next;
                    }
                    Isomorphism::No => {}
                    Isomorphism::Unknown => undecided = true,
                }
            }
            classes.push((s, 1));
        }
        Ok(LocalDecomposition {
            classes,
            complete: dec.complete,
            undecided,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::dual_numbers;

    #[test]
    fn matrix_ring_is_two_copies_of_the_simple() {
        let a = Arc::new(Algebra::matrix_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        let b = Budget::default();
        let dec = r.decompose_into_locals(&ProbeOrder::Natural, &b).unwrap();
        assert!(dec.complete && !dec.undecided);
        assert_eq!(dec.classes.len(), 1);
        assert_eq!(dec.classes[0].1, 2);
        assert_eq!(dec.classes[0].0.module.dim(), 2);
        assert_eq!(dec.classes[0].0.end_local, Some(true));
    }

    #[test]
    fn triangular_peirce_decomposition() {
        let a = Arc::new(Algebra::triangular_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        let b = Budget::default();
        for order in ProbeOrder::standard_set() {
            let dec = r.fitting_decompose(&order, &b).unwrap();
            assert!(dec.complete);
            let dims: Vec<usize> = dec.summands.iter().map(|s| s.module.dim()).collect();
            assert_eq!(dims, vec![1, 2]);
            for s in &dec.summands {
                assert_eq!(s.end_local, Some(true));
                assert_eq!(s.local_module, Some(true));
            }
            let e1 = RightModule::idempotent(&a, &[1, 0, 0]).unwrap();
            let e2 = RightModule::idempotent(&a, &[0, 0, 1]).unwrap();
            assert!(dec.summands[1].module.is_isomorphic(&e1, &b).unwrap().is_yes());
            assert!(dec.summands[0].module.is_isomorphic(&e2, &b).unwrap().is_yes());
        }
    }

    #[test]
    fn local_rings() {
        let b = Budget::default();
        assert!(is_local_ring(&dual_numbers(3).unwrap(), &b).unwrap());
        assert!(is_local_ring(&Algebra::prime_field(7).unwrap(), &b).unwrap());
        assert!(!is_local_ring(&Algebra::matrix_algebra(2, 2).unwrap(), &b).unwrap());
        let f2 = Algebra::prime_field(2).unwrap();
        assert!(!is_local_ring(&Algebra::product(&f2, &f2).unwrap(), &b).unwrap());
    }

    #[test]
    fn probe_orders_are_permutations() {
        for o in ProbeOrder::standard_set() {
            let mut v = o.permutation(6);
            v.sort();
            assert_eq!(v, (0..6).collect::<Vec<_>>());
        }
    }
}
