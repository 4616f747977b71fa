use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RightModule;
use crate::fqlinalg::{count_vectors, enumerate_vectors, FpMatrix};
use crate::{Budget, Result};

/// Outcome of an isomorphism query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// An invertible module map.
    Yes(FpMatrix),
    No,
    /// Exhaustive search was over budget and the random trials found nothing.
    Unknown,
}

impl Isomorphism {
    pub fn is_yes(&self) -> bool {
        matches!(self, Isomorphism::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Isomorphism::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Isomorphism::Unknown)
    }

    pub fn witness(&self) -> Option<&FpMatrix> {
        match self {
            Isomorphism::Yes(f) => Some(f),
            _ => None,
        }
    }

    /// `Some(true)`, `Some(false)` or `None` for unknown.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Isomorphism::Yes(_) => Some(true),
            Isomorphism::No => Some(false),
            Isomorphism::Unknown => None,
        }
    }
}

impl RightModule {
    pub fn is_isomorphic(&self, other: &RightModule, budget: &Budget) -> Result<Isomorphism> {
        other.check_algebra(self.algebra())?;
        if self.dim != other.dim {
            return Ok(Isomorphism::No);
        }
        let p = self.p();
        if self.dim == 0 {
            return Ok(Isomorphism::Yes(FpMatrix::zeros(p, 0, 0)));
        }
        let there = self.hom_space(other)?;
        let back = other.hom_space(self)?;
        if there.dim() == 0 || there.dim() != back.dim() {
            return Ok(Isomorphism::No);
        }
        if self.hom_space(self)?.dim() != other.hom_space(other)?.dim() {
            return Ok(Isomorphism::No);
        }
        let h = there.dim();
        if count_vectors(h, p) <= budget.enumeration as u128 {
            for c in enumerate_vectors(h, p, budget.enumeration)? {
                let f = there.map(&c);
                if f.is_invertible() {
                    return Ok(Isomorphism::Yes(f));
                }
            }
            return Ok(Isomorphism::No);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        for _ in 0..budget.trials {
            let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
            let f = there.map(&c);
            if f.is_invertible() {
                return Ok(Isomorphism::Yes(f));
            }
        }
        Ok(Isomorphism::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn identity_and_characters() {
        let a = Arc::new(Algebra::triangular_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        let b = Budget::default();
        assert!(r.is_isomorphic(&r, &b).unwrap().is_yes());
        let max = r.maximal_submodules(&b).unwrap();
        let (s1, _) = r.quotient(&max[0]);
        let (s2, _) = r.quotient(&max[1]);
        assert!(s1.is_isomorphic(&s2, &b).unwrap().is_no());
    }

    #[test]
    fn quotients_of_matrix_ring_agree() {
        let a = Arc::new(Algebra::matrix_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        let b = Budget::default();
        let max = r.maximal_submodules(&b).unwrap();
        let (q0, _) = r.quotient(&max[0]);
        for n in &max[1..] {
            let (q, _) = r.quotient(n);
            let iso = q0.is_isomorphic(&q, &b).unwrap();
            let f = iso.witness().unwrap();
            assert!(q0.is_hom_to(&q, f));
        }
    }

    #[test]
    fn randomized_branch_is_seeded() {
        let a = Arc::new(Algebra::matrix_algebra(2, 2).unwrap());
        let r = RightModule::regular(&a);
        let b = Budget {
            enumeration: 4,
            trials: 64,
            seed: 7,
        };
        let x = r.is_isomorphic(&r, &b).unwrap();
        assert!(x.is_yes());
        assert_eq!(x, r.is_isomorphic(&r, &b).unwrap());
        let none = Budget {
            enumeration: 4,
            trials: 0,
            seed: 7,
        };
        assert!(r.is_isomorphic(&r, &none).unwrap().is_unknown());
    }
}
