use std::sync::Arc;

use super::{RightModule, Submodule};
use crate::algebra::{Algebra, RightIdeal, Subring};
use crate::fqlinalg::{FpMatrix, Subspace};
use crate::{Error, Result};

/// All module maps between two modules, as a subspace of the flattened
/// `m_src × m_tgt` matrices (entry `(r, c)` at index `r·m_tgt + c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    source_dim: usize,
    target_dim: usize,
    space: Subspace,
}

impl HomSpace {
    pub fn new(source: &RightModule, target: &RightModule) -> Result<Self> {
        target.check_algebra(source.algebra())?;
        let (ms, mt) = (source.dim(), target.dim());
        let p = source.p();
        let d = source.algebra().dim();
        let n = ms * mt;
        // ρ_s(b_i)·F − F·ρ_t(b_i) = 0, one equation per (i, a, c).
        let mut eqs = vec![0u32; d * n * n];
        for i in 0..d {
            let s = &source.action()[i];
            let t = &target.action()[i];
            for a in 0..ms {
                for c in 0..mt {
                    let row = &mut eqs[((i * ms + a) * mt + c) * n..][..n];
                    for r in 0..ms {
                        let u = r * mt + c;
                        row[u] = (row[u] + s.get(a, r)) % p;
                    }
                    for r in 0..mt {
                        let u = a * mt + r;
                        row[u] = (row[u] + p - t.get(r, c)) % p;
                    }
                }
            }
        }
        let system = FpMatrix::from_vec(p, d * n, n, eqs)?;
        Ok(HomSpace {
            source_dim: ms,
            target_dim: mt,
            space: system.right_kernel(),
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    fn unflatten(&self, v: Vec<u32>) -> FpMatrix {
        FpMatrix::from_vec(self.space.prime(), self.source_dim, self.target_dim, v)
            .expect("flattened map")
    }

    pub fn basis_maps(&self) -> Vec<FpMatrix> {
        self.space
            .basis_vectors()
            .map(|v| self.unflatten(v.to_vec()))
            .collect()
    }

    /// The map with the given coordinates on the canonical basis.
    pub fn map(&self, coords: &[u32]) -> FpMatrix {
        self.unflatten(self.space.combine(coords))
    }

    pub fn coords(&self, f: &FpMatrix) -> Option<Vec<u32>> {
        if f.rows() != self.source_dim || f.cols() != self.target_dim {
            return None;
        }
        self.space.coordinates(f.data())
    }

    pub fn contains(&self, f: &FpMatrix) -> bool {
        self.coords(f).is_some()
    }
}

/// `End(M)` as an algebra on the canonical basis of `Hom(M, M)`.
///
/// The product is composition, `(f·g)(v) = f(g(v))`, so the matrix of `f·g`
/// is `G·F`. With this order `Hom(M, N)` is a right ideal for every
/// submodule `N`.
#[derive(Clone, Debug)]
pub struct EndRing {
    hom: HomSpace,
    maps: Vec<FpMatrix>,
    algebra: Arc<Algebra>,
}

impl EndRing {
    pub fn new(module: &RightModule) -> Result<Self> {
        if module.dim() == 0 {
            return Err(Error::NotApplicable("the zero module has no endomorphism algebra".into()));
        }
        let hom = HomSpace::new(module, module)?;
        let maps = hom.basis_maps();
        let e = maps.len();
        let mut table = vec![vec![Vec::new(); e]; e];
        for (i, fi) in maps.iter().enumerate() {
            for (j, fj) in maps.iter().enumerate() {
                table[i][j] = hom
                    .coords(&fj.mul(fi))
                    .ok_or_else(|| Error::Contract("composite is not a module map".into()))?;
            }
        }
        let unit = hom
            .coords(&FpMatrix::identity(module.p(), module.dim()))
            .ok_or_else(|| Error::Contract("identity is not a module map".into()))?;
        let algebra = Algebra::from_structure_constants(module.p(), e, &table, unit)?;
        Ok(EndRing {
            hom,
            maps,
            algebra: Arc::new(algebra),
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn basis_maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn to_map(&self, coords: &[u32]) -> FpMatrix {
        self.hom.map(coords)
    }

    pub fn to_coords(&self, f: &FpMatrix) -> Option<Vec<u32>> {
        self.hom.coords(f)
    }

    /// The left kernel of the matrix whose `k`-th row is `flatten(X·F_k·P)`.
    fn linear_condition(&self, left: &FpMatrix, target: &Subspace) -> Subspace {
        let p = self.algebra.p();
        let proj = target.projection_matrix();
        let rows: Vec<Vec<u32>> = self
            .maps
            .iter()
            .map(|f| left.mul(f).mul(&proj).into_data())
            .collect();
        let width = left.rows() * proj.cols();
        if width == 0 {
            return Subspace::full(p, self.dim());
        }
        FpMatrix::from_rows(p, width, &rows)
            .expect("condition rows")
            .left_kernel()
    }

    /// `Hom(M, N) = {β : β(M) ⊆ N}` in End coordinates.
    pub fn hom_into(&self, n: &Submodule) -> Result<RightIdeal> {
        self.check_submodule(n)?;
        let id = FpMatrix::identity(self.algebra.p(), self.hom.source_dim);
        let space = self.linear_condition(&id, n.space());
        self.algebra
            .right_ideal(space)
            .map_err(|_| Error::Contract("Hom(M, N) is not a right ideal of End(M)".into()))
    }

    /// `𝕀(N) = {β : β(N) ⊆ N}` in End coordinates.
    pub fn idealizer(&self, n: &Submodule) -> Result<Subring> {
        self.check_submodule(n)?;
        let space = self.linear_condition(n.space().basis(), n.space());
        self.algebra.subring(space)
    }

    fn check_submodule(&self, n: &Submodule) -> Result<()> {
        if n.space().ambient_dim() != self.hom.source_dim {
            return Err(Error::DimensionMismatch("submodule of a different module".into()));
        }
        Ok(())
    }
}

impl RightModule {
    pub fn hom_space(&self, target: &RightModule) -> Result<HomSpace> {
        HomSpace::new(self, target)
    }

    pub fn end_ring(&self) -> Result<EndRing> {
        EndRing::new(self)
    }

    /// `Hom(M, N)` for a submodule `N` of this module, as maps `M → M`.
    pub fn hom_into_submodule(&self, n: &Submodule) -> Result<RightIdeal> {
        self.end_ring()?.hom_into(n)
    }
}
