use std::sync::Arc;

use super::RightModule;
use crate::algebra::{Algebra, RightIdeal};
use crate::fqlinalg::{solve, FpMatrix, Subspace};
use crate::{Error, Result};

/// A surjection `π: R^k → M` from generators `g_1, …, g_k`, with an optional
/// splitting `σ: M → R^k` (`σ·π = I` as matrices).
///
/// Row `l·d + j` of `surjection` is `g_l·b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Vec<u32>>,
    pub surjection: FpMatrix,
    pub splitting: Option<FpMatrix>,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub(crate) fn direct_sum(
        p: u32,
        algebra: &Arc<Algebra>,
        parts: &[Presentation],
        modules: &[RightModule],
    ) -> Result<Option<Presentation>> {
        let total: usize = modules.iter().map(|m| m.dim()).sum();
        let mut generators = Vec::new();
        let mut offset = 0;
        for (pres, m) in parts.iter().zip(modules) {
            for g in &pres.generators {
                let mut v = vec![0; total];
                v[offset..offset + m.dim()].copy_from_slice(g);
                generators.push(v);
            }
            offset += m.dim();
        }
        let surjection = FpMatrix::block_diag(
            p,
            &parts.iter().map(|x| x.surjection.clone()).collect::<Vec<_>>(),
        );
        let splitting = parts
            .iter()
            .map(|x| x.splitting.clone())
            .collect::<Option<Vec<_>>>()
            .map(|s| FpMatrix::block_diag(p, &s));
        debug_assert_eq!(surjection.rows(), generators.len() * algebra.dim());
        Ok(Some(Presentation {
            generators,
            surjection,
            splitting,
        }))
    }
}

#[derive(Clone, Debug)]
pub struct ProjectivityReport {
    pub projective: bool,
    pub presentation: Presentation,
}

/// A split embedding `R_R → M^n`: `embedding·retraction = I_d`.
#[derive(Clone, Debug)]
pub struct FreeSummand {
    pub copies: usize,
    pub embedding: FpMatrix,
    pub retraction: FpMatrix,
}

impl RightModule {
    fn act_on_power(&self, x: &[u32], j: usize, n: usize) -> Vec<u32> {
        let m = self.dim;
        (0..n)
            .flat_map(|i| self.action[j].vec_mul(&x[i * m..(i + 1) * m]))
            .collect()
    }

    /// `R^k` as a module.
    pub fn free(algebra: &Arc<Algebra>, k: usize) -> Result<RightModule> {
        if k == 0 {
            let p = algebra.p();
            return RightModule::from_action(algebra, 0, vec![FpMatrix::zeros(p, 0, 0); algebra.dim()]);
        }
        RightModule::direct_sum(&vec![RightModule::regular(algebra); k])
    }

    /// Standard basis vectors, taken in order, each kept only if it lies
    /// outside the submodule generated by those already kept.
    pub fn generating_set(&self) -> Vec<Vec<u32>> {
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut current = self.zero_submodule();
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            if !current.space.has(&e) {
                gens.push(e);
                current = self.generate(&gens).expect("vectors of module length");
            }
        }
        gens
    }

    pub fn free_cover(&self) -> Presentation {
        let generators = self.generating_set();
        let d = self.algebra.dim();
        let mut rows = Vec::with_capacity(generators.len() * d);
        for g in &generators {
            for r in &self.action {
                rows.push(r.vec_mul(g));
            }
        }
        Presentation {
            surjection: FpMatrix::from_rows(self.p(), self.dim, &rows).expect("cover rows"),
            generators,
            splitting: None,
        }
    }

    /// Projective iff the free cover splits; the splitting is found by
    /// solving `Σ c_l S_l π = I` over a basis `S_l` of `Hom(M, R^k)`.
    pub fn is_projective(&self) -> Result<ProjectivityReport> {
        let mut presentation = self.free_cover();
        let p = self.p();
        let m = self.dim;
        if m == 0 {
            presentation.splitting = Some(FpMatrix::zeros(p, 0, 0));
            return Ok(ProjectivityReport {
                projective: true,
                presentation,
            });
        }
        let free = RightModule::free(&self.algebra, presentation.rank())?;
        let hom = self.hom_space(&free)?;
        let maps = hom.basis_maps();
        if maps.is_empty() {
            return Ok(ProjectivityReport {
                projective: false,
                presentation,
            });
        }
        let rows: Vec<Vec<u32>> = maps
            .iter()
            .map(|s| s.mul(&presentation.surjection).into_data())
            .collect();
        let system = FpMatrix::from_rows(p, m * m, &rows)?.transpose();
        let target = FpMatrix::from_vec(p, m * m, 1, FpMatrix::identity(p, m).into_data())?;
        let sol = solve(&system, &target)?;
        let projective = match sol.particular {
            Some(c) => {
                let coeffs: Vec<u32> = c.into_data();
                let sigma = hom.map(&coeffs);
                if sigma.mul(&presentation.surjection) != FpMatrix::identity(p, m) {
                    return Err(Error::Contract("splitting does not split".into()));
                }
                presentation.splitting = Some(sigma);
                true
            }
            None => false,
        };
        Ok(ProjectivityReport {
            projective,
            presentation,
        })
    }

    /// `Σ f(M)` over `f ∈ Hom(M, R_R)`, a two-sided ideal.
    pub fn trace_ideal(&self) -> Result<RightIdeal> {
        let regular = RightModule::regular(&self.algebra);
        let hom = self.hom_space(&regular)?;
        let d = self.algebra.dim();
        let mut span = Subspace::zero(self.p(), d);
        for f in hom.basis_maps() {
            span = span.sum(&f.row_space())?;
        }
        let ideal = self.algebra.right_ideal(span)?;
        if !self.algebra.is_two_sided(&ideal) {
            return Err(Error::Contract("trace ideal is not two-sided".into()));
        }
        Ok(ideal)
    }

    pub fn is_generator(&self) -> Result<bool> {
        Ok(self.trace_ideal()?.space().is_full())
    }

    pub fn is_faithfully_projective(&self) -> Result<bool> {
        Ok(self.is_projective()?.projective && self.is_generator()?)
    }

    /// For a generator, `R_R` as a direct summand of `M^n` with `n ≤ dim R`.
    pub fn free_summand(&self) -> Result<Option<FreeSummand>> {
        let algebra = Arc::clone(&self.algebra);
        let p = self.p();
        let d = algebra.dim();
        let regular = RightModule::regular(&algebra);
        let maps = self.hom_space(&regular)?.basis_maps();
        // Images f_l(M) span the trace ideal; add maps until the unit is
        // reached and write 1 = Σ_l f_l(x_l).
        let mut used: Vec<usize> = Vec::new();
        let mut span = Subspace::zero(p, d);
        for (l, f) in maps.iter().enumerate() {
            if span.has(algebra.unit()) {
                break;
            }
            let grown = span.sum(&f.row_space())?;
            if grown.dim() > span.dim() {
                used.push(l);
                span = grown;
            }
        }
        if !span.has(algebra.unit()) {
            return Ok(None);
        }
        let m = self.dim;
        let n = used.len();
        let mut retraction = maps[used[0]].clone();
        for &l in &used[1..] {
            retraction = retraction.vstack(&maps[l]);
        }
        let unit = FpMatrix::from_rows(p, d, &[algebra.unit().to_vec()])?;
        let x = solve(&retraction.transpose(), &unit.transpose())?
            .particular
            .ok_or_else(|| Error::Contract("unit not in the span".into()))?
            .into_data();
        // ι(r) = (x_1·r, …, x_n·r)
        let mut embedding = FpMatrix::zeros(p, d, n * m);
        for j in 0..d {
            let img = self.act_on_power(&x, j, n);
            for (c, v) in img.into_iter().enumerate() {
                embedding.set(j, c, v);
            }
        }
        let power = RightModule::direct_sum(&vec![self.clone(); n])?;
        if !regular.is_hom_to(&power, &embedding)
            || !power.is_hom_to(&regular, &retraction)
            || embedding.mul(&retraction) != FpMatrix::identity(p, d)
        {
            return Err(Error::Contract("free summand construction failed".into()));
        }
        Ok(Some(FreeSummand {
            copies: n,
            embedding,
            retraction,
        }))
    }
}
