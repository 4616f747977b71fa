//! Maximal left ideals of `M_n(F_p)` through Stone's ideals
//! `D(0, u) = {X : Xu = 0}`.
//!
//! Left ideals of `T` are handled as right ideals of the opposite algebra,
//! which has the same carrier.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, LeftIdeal, RightIdeal};
use crate::fqlinalg::{check_budget, enumerate_vectors, inv, is_prime, mul, FpMatrix};
use crate::module::RightModule;
use crate::{Budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoneIdeal {
    pub p: u32,
    pub n: usize,
    pub u: Vec<u32>,
    /// Inside the `n²`-dimensional carrier, `E_ij` at index `i·n + j`.
    pub ideal: LeftIdeal,
}

/// `D(0, u)` in `M_n(F_p)`.
pub fn stone_ideal(algebra: &Algebra, n: usize, u: &[u32]) -> Result<StoneIdeal> {
    let p = algebra.p();
    if algebra.dim() != n * n || u.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for an algebra of dimension {}",
            u.len(),
            algebra.dim()
        )));
    }
    if u.iter().all(|&x| x == 0) {
        return Err(Error::Contract("u must be nonzero".into()));
    }
    // Row i of Xu is Σ_j X_ij u_j.
    let mut c = FpMatrix::zeros(p, n, n * n);
    for i in 0..n {
        for (j, &uj) in u.iter().enumerate() {
            c.set(i, i * n + j, uj % p);
        }
    }
    let ideal = algebra.left_ideal(c.right_kernel())?;
    Ok(StoneIdeal {
        p,
        n,
        u: u.to_vec(),
        ideal,
    })
}

/// `v = uc` for a nonzero scalar `c`.
pub fn stone_equal(p: u32, u: &[u32], v: &[u32]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch("vectors of different lengths".into()));
    }
    let Some(k) = u.iter().position(|&x| x != 0) else {
        return Err(Error::Contract("zero vector".into()));
    };
    if v.iter().all(|&x| x == 0) {
        return Err(Error::Contract("zero vector".into()));
    }
    let c = mul(p, v[k], inv(p, u[k]));
    Ok(c != 0 && u.iter().zip(v).all(|(&a, &b)| mul(p, a, c) == b))
}

/// Nonzero vectors of `F_p^n` with first nonzero coordinate 1.
pub fn parallel_class_representatives(p: u32, n: usize, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    Ok(enumerate_vectors(n, p, budget.enumeration)?
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect())
}

#[derive(Clone, Debug)]
pub struct MaxlEnumeration {
    pub p: u32,
    pub n: usize,
    pub ideals: Vec<StoneIdeal>,
    /// Agreement with the maximal submodules of the regular module of the
    /// opposite algebra; `None` when that is over budget.
    pub crosschecked: Option<bool>,
}

impl MaxlEnumeration {
    pub fn count(&self) -> usize {
        self.ideals.len()
    }

    /// `(p^n − 1)/(p − 1)`.
    pub fn expected(&self) -> u128 {
        let pn = (self.p as u128).pow(self.n as u32);
        (pn - 1) / (self.p as u128 - 1)
    }
}

/// Maximal left ideals of `M_n(F_p)` by brute force: right ideals of `T^op`.
pub fn brute_force_maxl(algebra: &Algebra, budget: &Budget) -> Result<Vec<LeftIdeal>> {
    let op = Arc::new(algebra.opposite());
    let regular = RightModule::regular(&op);
    regular
        .maximal_submodules(budget)?
        .into_iter()
        .map(|s| algebra.left_ideal(s.into_space()))
        .collect()
}

pub fn enumerate_maxl_matrix_ring(p: u32, n: usize, budget: &Budget) -> Result<MaxlEnumeration> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let algebra = Algebra::matrix_algebra(n, p)?;
    let ideals = parallel_class_representatives(p, n, budget)?
        .iter()
        .map(|u| stone_ideal(&algebra, n, u))
        .collect::<Result<Vec<_>>>()?;
    let crosschecked = match check_budget(n * n, p, budget.enumeration) {
        Ok(_) => {
            let brute: BTreeSet<LeftIdeal> = brute_force_maxl(&algebra, budget)?.into_iter().collect();
            let stone: BTreeSet<LeftIdeal> = ideals.iter().map(|s| s.ideal.clone()).collect();
            Some(brute == stone && stone.len() == ideals.len())
        }
        Err(Error::OverBudget { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(MaxlEnumeration {
        p,
        n,
        ideals,
        crosschecked,
    })
}

/// One JSON row of the count report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub p: u32,
    pub n: usize,
    pub count: usize,
    pub bound_pk: u32,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct CountBounds {
    pub row: CountRow,
    pub expected: u128,
    pub maxr_count: usize,
    /// Transposes of `Maxl` are exactly the maximal right ideals.
    pub transpose_bijection: bool,
    pub none_two_sided: bool,
    pub crosschecked: Option<bool>,
}

pub fn count_bounds_report(p: u32, n: usize, budget: &Budget) -> Result<CountBounds> {
    if n < 2 {
        return Err(Error::Contract("count bounds need n > 1".into()));
    }
    let maxl = enumerate_maxl_matrix_ring(p, n, budget)?;
    let algebra = Arc::new(Algebra::matrix_algebra(n, p)?);
    let transposed: BTreeSet<RightIdeal> = maxl
        .ideals
        .iter()
        .map(|s| algebra.transpose_left(&s.ideal))
        .collect::<Result<_>>()?;
    let (maxr_count, transpose_bijection) = match check_budget(n * n, p, budget.enumeration) {
        Ok(_) => {
            let maxr: BTreeSet<RightIdeal> = algebra.maximal_right_ideals(budget)?.into_iter().collect();
            (maxr.len(), maxr == transposed)
        }
        Err(Error::OverBudget { .. }) => (transposed.len(), transposed.len() == maxl.count()),
        Err(e) => return Err(e),
    };
    let none_two_sided = maxl
        .ideals
        .iter()
        .all(|s| !algebra.is_right_closed(s.ideal.space()))
        && transposed.iter().all(|r| !algebra.is_two_sided(r));
    let count = maxl.count();
    let expected = maxl.expected();
    let pass = count as u128 == expected
        && count as u64 >= p as u64 + 1
        && none_two_sided
        && transpose_bijection
        && maxr_count == count
        && maxl.crosschecked != Some(false);
    Ok(CountBounds {
        row: CountRow {
            p,
            n,
            count,
            bound_pk: p + 1,
            pass,
        },
        expected,
        maxr_count,
        transpose_bijection,
        none_two_sided,
        crosschecked: maxl.crosschecked,
    })
}

/// `(dim_F_p, length over T)` of the left module `T/D(0, u) ≅ F_p^n`.
pub fn quotient_shape(stone: &StoneIdeal, budget: &Budget) -> Result<(usize, usize)> {
    let algebra = Algebra::matrix_algebra(stone.n, stone.p)?;
    let op = Arc::new(algebra.opposite());
    let regular = RightModule::regular(&op);
    let sub = regular.submodule(stone.ideal.space().clone())?;
    let q = regular.quotient(&sub).0;
    Ok((q.dim(), q.length(budget)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_zero_u_in_m2_f2() {
        let a = Algebra::matrix_algebra(2, 2).unwrap();
        let d = stone_ideal(&a, 2, &[1, 0]).unwrap();
        // Xu = 0 with u = e_1: the first column vanishes.
        assert_eq!(d.ideal.dim(), 2);
        for v in d.ideal.space().basis_vectors() {
            assert_eq!(v[0], 0);
            assert_eq!(v[2], 0);
        }
        assert!(stone_ideal(&a, 2, &[0, 0]).is_err());
    }

    #[test]
    fn parallel_vectors_give_equal_ideals() {
        let a = Algebra::matrix_algebra(2, 3).unwrap();
        let b = Budget::default();
        let all: Vec<Vec<u32>> = enumerate_vectors(2, 3, 9).unwrap().filter(|v| v.iter().any(|&x| x != 0)).collect();
        for u in &all {
            for v in &all {
                let same = stone_ideal(&a, 2, u).unwrap().ideal == stone_ideal(&a, 2, v).unwrap().ideal;
                assert_eq!(same, stone_equal(3, u, v).unwrap());
            }
        }
        assert_eq!(enumerate_maxl_matrix_ring(3, 2, &b).unwrap().count(), 4);
        assert!(stone_equal(3, &[0, 0], &[1, 0]).is_err());
    }

    #[test]
    fn counts_and_crosschecks() {
        let b = Budget::default();
        for (n, p, want) in [(2, 2, 3), (2, 3, 4), (3, 2, 7)] {
            let e = enumerate_maxl_matrix_ring(p, n, &b).unwrap();
            assert_eq!(e.count(), want);
            assert_eq!(e.expected(), want as u128);
            assert_eq!(e.crosschecked, Some(true));
            let r = count_bounds_report(p, n, &b).unwrap();
            assert!(r.row.pass, "{r:?}");
            assert_eq!(r.maxr_count, want);
        }
    }

    #[test]
    fn quotient_is_the_simple_column_module() {
        let b = Budget::default();
        let a = Algebra::matrix_algebra(3, 2).unwrap();
        let d = stone_ideal(&a, 3, &[0, 1, 1]).unwrap();
        assert_eq!(quotient_shape(&d, &b).unwrap(), (3, 1));
    }

    #[test]
    fn uncrosschecked_when_over_budget() {
        let e = enumerate_maxl_matrix_ring(2, 3, &Budget::with_enumeration(100)).unwrap();
        assert_eq!(e.count(), 7);
        assert_eq!(e.crosschecked, None);
    }
}
