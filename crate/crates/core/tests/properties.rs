use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use eigenring::algebra::Algebra;
use eigenring::cli::{default_corpus, InstanceSpec};
use eigenring::fqlinalg::{FpMatrix, Subspace};
use eigenring::matring::{stone_equal, stone_ideal};
use eigenring::module::{ModuleSpec, RightModule};
use eigenring::similarity::EndContext;
use eigenring::Budget;

fn matrix(p: u32, r: usize, c: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(0..p, r * c).prop_map(move |v| FpMatrix::from_vec(p, r, c, v).unwrap())
}

fn corpus() -> &'static [InstanceSpec] {
    static C: OnceLock<Vec<InstanceSpec>> = OnceLock::new();
    C.get_or_init(default_corpus)
}

fn corpus_module() -> impl Strategy<Value = usize> {
    0..corpus().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(3, 4, 5)) {
        prop_assert_eq!(m.rank() + m.right_kernel().dim(), 5);
        prop_assert_eq!(m.rank() + m.left_kernel().dim(), 4);
        for v in m.left_kernel().basis_vectors() {
            prop_assert!(m.vec_mul(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(2, 3, 6), b in matrix(2, 3, 6)) {
        let (x, y) = (Subspace::from_matrix(&a), Subspace::from_matrix(&b));
        let s = x.sum(&y).unwrap();
        let i = x.intersection(&y).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), x.dim() + y.dim());
        prop_assert!(s.contains(&x).unwrap() && x.contains(&i).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(5, 3, 3)) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), FpMatrix::identity(5, 3));
            prop_assert_eq!(inv.mul(&m), FpMatrix::identity(5, 3));
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn cyclic_submodules_are_invariant(i in corpus_module(), seed in prop::collection::vec(0u32..3, 9)) {
        let inst = corpus()[i].build().unwrap();
        let m = &inst.module;
        let v: Vec<u32> = seed.iter().take(m.dim()).map(|&x| x % m.p()).chain(std::iter::repeat(0)).take(m.dim()).collect();
        let c = m.cyclic(&v);
        prop_assert!(m.is_invariant(c.space()));
        prop_assert!(c.space().contains_vector(&v).unwrap());
    }

    #[test]
    fn colon_clauses_on_random_endomorphisms(i in corpus_module(), coeffs in prop::collection::vec(0u32..3, 16)) {
        let inst = corpus()[i].build().unwrap();
        let ctx = EndContext::new(inst.module.clone()).unwrap();
        let p = inst.module.p();
        let beta: Vec<u32> = coeffs.iter().cycle().take(ctx.end().dim()).map(|&x| x % p).collect();
        let b = Budget::default();
        for n in inst.module.maximal_submodules(&b).unwrap() {
            let data = ctx.idealizer_data(&n).unwrap();
            let colon = ctx.colon_coords(&n, &beta);
            let in_a = data.hom_ideal.space().contains_vector(&beta).unwrap();
            let in_i = data.idealizer.space().contains_vector(&beta).unwrap();
            prop_assert_eq!(colon == inst.module.full(), in_a);
            prop_assert_eq!(colon == n, in_i && !in_a);
            prop_assert!(inst.module.is_invariant(colon.space()));
        }
    }

    #[test]
    fn right_colon_is_a_right_ideal(c in prop::collection::vec(0u32..2, 9)) {
        let a = Arc::new(Algebra::matrix_algebra(3, 2).unwrap());
        for m in a.maximal_right_ideals(&Budget::default()).unwrap() {
            let colon = a.colon_right(&m, &c).unwrap();
            prop_assert!(a.is_right_closed(colon.space()));
        }
    }

    #[test]
    fn stone_ideals_match_parallelism(u in prop::collection::vec(0u32..3, 2), v in prop::collection::vec(0u32..3, 2)) {
        prop_assume!(u.iter().any(|&x| x != 0) && v.iter().any(|&x| x != 0));
        let a = Algebra::matrix_algebra(2, 3).unwrap();
        let same = stone_ideal(&a, 2, &u).unwrap().ideal == stone_ideal(&a, 2, &v).unwrap().ideal;
        prop_assert_eq!(same, stone_equal(3, &u, &v).unwrap());
        prop_assert_eq!(stone_equal(3, &u, &v).unwrap(), stone_equal(3, &v, &u).unwrap());
    }

    #[test]
    fn isomorphism_is_decided_and_witnessed(i in corpus_module(), j in corpus_module()) {
        let (a, b) = (corpus()[i].build().unwrap(), corpus()[j].build().unwrap());
        prop_assume!(a.algebra == b.algebra);
        let iso = a.module.is_isomorphic(&b.module, &Budget::default()).unwrap();
        prop_assert!(!iso.is_unknown());
        if let Some(f) = iso.witness() {
            prop_assert!(a.module.is_hom_to(&b.module, f) && f.is_invertible());
        }
    }
}

#[test]
fn module_spec_round_trips() {
    for spec in default_corpus() {
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(InstanceSpec::from_json(&text).unwrap(), spec);
        let inst = spec.build().unwrap();
        let back = inst.module.to_spec();
        let rebuilt = back.build(&inst.algebra).unwrap();
        assert_eq!(rebuilt.action(), inst.module.action());
        assert!(matches!(back, ModuleSpec::Action { .. }));
    }
}

#[test]
fn algebra_json_round_trips() {
    for spec in default_corpus() {
        let inst = spec.build().unwrap();
        let a = Algebra::from_json(&inst.algebra.to_json()).unwrap();
        assert_eq!(&a, inst.algebra.as_ref());
        let r = RightModule::regular(&Arc::new(a));
        assert_eq!(r.dim(), inst.algebra.dim());
    }
}
