use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use eigenring::algebra::Algebra;
use eigenring::cli::{build_corpus, default_corpus, run_suite, Instance, Outcome, RunOptions, Suite, VerificationReport};
use eigenring::fqlinalg::{enumerate_vectors, FpMatrix};
use eigenring::matring::{brute_force_maxl, enumerate_maxl_matrix_ring};
use eigenring::module::RightModule;
use eigenring::Budget;

/// Number of module maps `a → b`, by enumerating every matrix.
fn brute_hom_count(a: &RightModule, b: &RightModule) -> usize {
    let p = a.p();
    let (m, n) = (a.dim(), b.dim());
    if n == 0 {
        return 1;
    }
    enumerate_vectors(m * n, p, 1 << 20)
        .unwrap()
        .filter(|v| a.is_hom_to(b, &FpMatrix::from_vec(p, m, n, v.clone()).unwrap()))
        .count()
}

fn suite_clean(r: &VerificationReport, ids: &[&str]) -> Result<(), String> {
    if r.checks.is_empty() {
        return Err("no checks ran".into());
    }
    for c in &r.checks {
        if c.verdict != Outcome::Pass {
            return Err(format!("{} on {}: {:?} {:?}", c.theorem_id, c.instance.name, c.verdict, c.note));
        }
    }
    for id in ids {
        if !r.checks.iter().any(|c| c.theorem_id == *id) {
            return Err(format!("no {id} record"));
        }
    }
    Ok(())
}

fn count(r: &VerificationReport, id: &str) -> usize {
    r.checks.iter().filter(|c| c.theorem_id == id).count()
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn projective_count(corpus: &[Instance]) -> usize {
    corpus
        .iter()
        .filter(|i| i.module.is_projective().unwrap().projective)
        .count()
}

fn criterion(n: usize, corpus: &[Instance], opts: &RunOptions) -> Result<String, String> {
    let b = &opts.budget;
    match n {
        1 => {
            let r = run_suite(Suite::Example313, corpus, opts);
            suite_clean(&r, &["hom-vanishing", "hom-ideals-similar", "submodules-not-similar", "transfer-counterexample"])?;
            let t = Arc::new(Algebra::triangular_algebra(2, 2).unwrap());
            let a = RightModule::idempotent(&t, &[1, 0, 0]).unwrap();
            let maxes = a.maximal_submodules(b).unwrap();
            let (bmod, _) = a.restrict(&maxes[0]);
            let (zero, _) = a.restrict(&a.zero_submodule());
            expect(brute_hom_count(&a, &bmod) == 1, "brute force finds a nonzero map A → B")?;
            expect(brute_hom_count(&a, &zero) == 1, "Hom(A, 0) nonzero")?;
            let (q_b, _) = a.quotient(&maxes[0]);
            let (q_0, _) = a.quotient(&a.zero_submodule());
            expect(q_b.dim() != q_0.dim(), "A/B and A/0 have equal dimension")?;
            Ok("dim Hom(A,B) = dim Hom(A,0) = 0, ideals similar, B and 0 not similar".into())
        }
        2 => {
            let r = run_suite(Suite::Stone, corpus, opts);
            suite_clean(&r, &["stone-count", "stone-parallel", "stone-quotient"])?;
            let mut counts = Vec::new();
            for (n, p, want) in [(2usize, 2u32, 3usize), (2, 3, 4), (3, 2, 7)] {
                let e = enumerate_maxl_matrix_ring(p, n, b).unwrap();
                let brute = brute_force_maxl(&Algebra::matrix_algebra(n, p).unwrap(), b).unwrap();
                let formula = ((p as usize).pow(n as u32) - 1) / (p as usize - 1);
                expect(e.count() == want && brute.len() == want && formula == want, format!("count for ({n},{p})"))?;
                counts.push(e.count());
            }
            Ok(format!("|Maxl| = {counts:?}, brute force and transpose agree"))
        }
        3 => {
            let r = run_suite(Suite::Pt1, corpus, opts);
            suite_clean(&r, &["class-bound", "class-equality", "class-aggregate"])?;
            expect(count(&r, "class-equality") == 2, "equality checked on both M2 rings")?;
            Ok(format!("{} rings, |[M]| = 1+p on M2(F2), M2(F3)", count(&r, "class-bound")))
        }
        4 => {
            let r = run_suite(Suite::T5, corpus, opts);
            suite_clean(&r, &["dichotomy", "eigenring-size"])?;
            expect(count(&r, "dichotomy") == corpus.len(), "a module was not covered")?;
            Ok(format!("{} modules, every maximal submodule classified", corpus.len()))
        }
        5 => {
            let r = run_suite(Suite::T8, corpus, opts);
            suite_clean(&r, &["correspondence"])?;
            expect(count(&r, "correspondence") == projective_count(corpus), "a projective module was not covered")?;
            Ok(format!("{} projective modules, injective into Maxr(End)", count(&r, "correspondence")))
        }
        6 => {
            let r = run_suite(Suite::Length, corpus, opts);
            suite_clean(&r, &["length", "minimal-hom"])?;
            expect(count(&r, "length") == projective_count(corpus), "a projective module was not covered")?;
            let fp = r
                .checks
                .iter()
                .filter(|c| c.theorem_id == "length" && c.certificate["faithfully_projective"] == true)
                .count();
            Ok(format!("{} projective modules, {fp} with l(End) = l(M) forced", count(&r, "length")))
        }
        7 => {
            let r = run_suite(Suite::Eigenring, corpus, opts);
            suite_clean(&r, &["eigenring-chain"])?;
            expect(count(&r, "eigenring-chain") == projective_count(corpus), "a projective module was not covered")?;
            Ok("chain equal, kernel A, surjective, division ring".into())
        }
        8 => {
            let r = run_suite(Suite::Decomposition, corpus, opts);
            suite_clean(&r, &["decomposition"])?;
            expect(count(&r, "decomposition") == projective_count(corpus), "a projective module was not covered")?;
            Ok("local summands, multiset stable under 5 probe orders".into())
        }
        9 => {
            let r = run_suite(Suite::Transfer, corpus, opts);
            suite_clean(&r, &["transfer", "transfer-counterexample"])?;
            let fp_ok = r
                .checks
                .iter()
                .filter(|c| c.theorem_id == "transfer" && c.certificate["faithfully_projective"] == true)
                .all(|c| c.certificate["backward"] == true);
            expect(fp_ok, "backward failed on a faithfully projective module")?;
            let corner = r
                .checks
                .iter()
                .find(|c| c.instance.name == "T2(F2)/e1R")
                .ok_or("corner module missing")?;
            expect(
                corner.certificate["counterexample_pairs"].as_u64().unwrap_or(0) > 0,
                "corpus corner module shows no counterexample",
            )?;
            Ok("forward on projective, backward on faithfully projective, counterexample reported".into())
        }
        10 => {
            let r = run_suite(Suite::Oracle, corpus, opts);
            suite_clean(&r, &["oracle-max"])?;
            let eligible = corpus
                .iter()
                .filter(|i| (i.module.p() as u64).pow(i.module.dim() as u32) <= 1024)
                .count();
            expect(count(&r, "oracle-max") == eligible, "an eligible instance was not covered")?;
            Ok(format!("{eligible} instances, lattice and simple-quotient maxima equal"))
        }
        _ => unreachable!(),
    }
}

const NAMES: [&str; 10] = [
    "example reproduction",
    "stone counts",
    "similarity class bound",
    "maximal submodule dichotomy",
    "max to maxr correspondence",
    "length theorem",
    "eigenring chain",
    "decomposition",
    "similarity transfer",
    "oracle equivalence",
];

fn main() -> ExitCode {
    let corpus = build_corpus(&default_corpus()).expect("default corpus builds");
    let opts = RunOptions {
        budget: Budget::default(),
        timing: false,
    };
    let mut failed = 0;
    for (i, name) in NAMES.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(|| criterion(i + 1, &corpus, &opts))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", NAMES.len() - failed, NAMES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
