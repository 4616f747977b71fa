use crate::{Error, Result};

/// `p^dim`, saturating.
pub fn count_vectors(dim: usize, p: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..dim {
        acc = acc.saturating_mul(p as u128);
    }
    acc
}

/// Fails with [`Error::OverBudget`] when `p^dim` exceeds `budget`.
pub fn check_budget(dim: usize, p: u32, budget: u64) -> Result<u64> {
    let needed = count_vectors(dim, p);
    if needed > budget as u128 {
        return Err(Error::OverBudget {
            needed,
            budget,
        });
    }
    Ok(needed as u64)
}

/// All vectors of F_p^dim in lexicographic order (first coordinate most
/// significant), each exactly once.
pub fn enumerate_vectors(dim: usize, p: u32, budget: u64) -> Result<VectorIter> {
    check_budget(dim, p, budget)?;
    Ok(VectorIter {
        p,
        next: Some(vec![0; dim]),
    })
}

pub struct VectorIter {
    p: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for VectorIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.p {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_and_complete() {
        let all: Vec<_> = enumerate_vectors(2, 3, 100).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(all[8], vec![2, 2]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }

    #[test]
    fn zero_dimensional_space_has_one_vector() {
        assert_eq!(enumerate_vectors(0, 2, 1).unwrap().count(), 1);
    }

    #[test]
    fn over_budget() {
        match enumerate_vectors(11, 2, 1024) {
            Err(Error::OverBudget { needed, budget }) => {
                assert_eq!(needed, 2048);
                assert_eq!(budget, 1024);
            }
            _ => panic!("expected over-budget failure"),
        }
        assert!(enumerate_vectors(10, 2, 1024).is_ok());
    }
}
