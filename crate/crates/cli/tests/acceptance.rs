//! Acceptance suite: one PASS/FAIL line per criterion with its tolerance
//! and time limit. Runs without the libtest harness so the lines are always
//! printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use hecke_core::blocks::{adjustment_matrix, check_block_structure};
use hecke_core::fixtures;
use hecke_core::gram::{det_factor_check, reconstruct_gram_modular, solve_gram_direct, solve_gram_standard_base, ModularPlan};
use hecke_core::hecke::{phi_e_defect, schur_elements, semisimple_at};
use hecke_core::meataxe::{chop, decomposition_matrix, FModule, DEFAULT_BUDGET};
use hecke_core::pipeline::{run_pipeline, Dataset, PipelineOptions, PipelineReport};
use hecke_core::rings::cyclotomic::{cyclotomic_polynomial, substitute_square};
use hecke_core::rings::field::{is_prime, Ring};
use hecke_core::rings::laurent::lp;
use hecke_core::rings::matrix::{self, Matrix};
use hecke_core::specrank::{bad_prime_set, modular_target, rank_at_modular, rank_at_zeta, specialize_at_zeta};
use hecke_core::weyl::{is_e_regular, WeylType};
use hecke_core::wgraph::{build_generator_matrices, GenMatrices};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_g2(d: &Dataset, e: u64, ell: u64) -> Result<PipelineReport, String> {
    run_pipeline(d, e, ell, &PipelineOptions::default()).map_err(|x| format!("e={e} l={ell}: {x}"))
}

fn g2_table(e: u64) -> Vec<(&'static str, u32, usize)> {
    match e {
        2 => vec![("1", 0, 1), ("r", 1, 2), ("r'", 1, 2)],
        3 => vec![("1", 0, 1), ("eps1", 1, 1), ("eps2", 1, 1), ("r", 1, 2), ("r'", 1, 1)],
        _ => vec![("1", 0, 1), ("eps1", 1, 1), ("eps2", 1, 1), ("r", 1, 1), ("r'", 1, 2)],
    }
}

fn c1_g2_end_to_end(limit: Duration) -> Check {
    let d = Dataset::g2().map_err(|e| e.to_string())?;
    let mut slowest = Duration::ZERO;
    for (e, ell) in [(2, 7), (3, 7), (6, 7), (2, 5), (3, 13), (6, 5)] {
        let t = Instant::now();
        let r = run_g2(&d, e, ell)?;
        let got: Vec<(&str, u32, usize)> = r.simples.iter().map(|s| (s.label.as_str(), s.a, s.dim)).collect();
        ensure(got == g2_table(e), || format!("e={e} l={ell}: table {got:?}"))?;
        slowest = slowest.max(t.elapsed());
    }
    ensure(slowest < limit, || format!("slowest pair took {slowest:?}"))?;
    Ok(format!("6 pairs, slowest {slowest:.2?}"))
}

fn g2_reps() -> Vec<GenMatrices> {
    fixtures::g2_wgraphs().iter().map(build_generator_matrices).collect()
}

fn c2_g2_invariants() -> Check {
    let t: WeylType = "G2".parse().unwrap();
    let s = schur_elements(&g2_reps(), &t).map_err(|e| e.to_string())?;
    let a: Vec<u32> = s.iter().map(|x| x.a).collect();
    let f: Vec<String> = s.iter().map(|x| x.f.to_string()).collect();
    ensure(a == [0, 1, 1, 1, 1, 6], || format!("a = {a:?}"))?;
    ensure(f == ["1", "3", "3", "6", "2", "1"], || format!("f = {f:?}"))?;
    Ok("a = (0,1,1,1,1,6), f = (1,3,3,6,2,1)".into())
}

fn c3_e6_10s() -> Check {
    let m = build_generator_matrices(&fixtures::e6_10s_wgraph());
    let q = solve_gram_direct(&m).map_err(|e| e.to_string())?;
    let printed = fixtures::e6_10s_gram();
    let negated = printed.q.map(|p| -p);
    ensure(q.q == printed.q || q.q == negated, || "solved Q differs from the printed matrix".into())?;
    let sign = if q.q == printed.q { 1 } else { -1 };
    ensure(*q.entry(0, 0) == lp(&[(6, sign), (4, 3 * sign), (2, 3 * sign), (0, sign)]), || "entry (1,1)".into())?;
    ensure(*q.entry(0, 3) == lp(&[(5, -sign), (3, -2 * sign), (1, -sign)]), || "entry (1,4)".into())?;

    let z = rank_at_zeta(&q, 4);
    ensure(z.rank == 1, || format!("rank at zeta_8 is {}", z.rank))?;
    let (k, qz) = specialize_at_zeta(&q, 4);
    let a = k.sub(&k.zeta_pow(2), &k.one());
    let a = k.add(&a, &a);
    let b = k.neg(&k.add(&k.zeta_pow(3), &k.zeta_pow(3)));
    let w: Vec<_> = [&a, &a, &a, &b, &a, &b, &a, &b, &b, &b].into_iter().map(|x| k.mul(x, &k.from_i64(sign))).collect();
    ensure(qz.row(0) == w.as_slice(), || "row 1 at zeta_8 differs from the printed vector".into())?;
    for i in 0..10 {
        let pair = Matrix::from_rows(10, vec![qz.row(i).to_vec(), w.clone()]);
        ensure(matrix::rank(&k, &pair) == 1, || format!("row {} is not proportional", i + 1))?;
    }
    let bad = bad_prime_set(&q, 4, &q.weyl).map_err(|e| e.to_string())?;
    ensure(bad.candidates == [2], || format!("candidates {:?}", bad.candidates))?;
    ensure(bad.verified.is_empty(), || format!("verified {:?}", bad.verified))?;
    Ok(format!("Q equals the printed matrix (sign {sign:+}), rank 1 at zeta_8, candidates {{2}}, verified {{}}"))
}

fn c4_method_agreement() -> Check {
    let mut reps = g2_reps();
    reps.push(build_generator_matrices(&fixtures::e6_10s_wgraph()));
    for m in &reps {
        let d = solve_gram_direct(m).map_err(|e| e.to_string())?;
        let s = solve_gram_standard_base(m).map_err(|e| e.to_string())?;
        let r = reconstruct_gram_modular(m, &ModularPlan::default()).map_err(|e| e.to_string())?;
        ensure(d == s && d == r, || format!("{}: methods disagree", m.label))?;
    }
    Ok(format!("{} fixtures, three methods each", reps.len()))
}

fn c5_properties() -> Check {
    let g2: WeylType = "G2".parse().unwrap();
    let d = Dataset::g2().map_err(|e| e.to_string())?;
    // every computed Gram matrix
    let mut reps = g2_reps();
    reps.push(build_generator_matrices(&fixtures::e6_10s_wgraph()));
    let mut computed = Vec::new();
    for m in &reps {
        let q = solve_gram_direct(m).map_err(|e| e.to_string())?;
        ensure(q.verify_invariance(m) && q.is_symmetric() && q.is_primitive(), || format!("gram invariants: {}", m.label))?;
        ensure(det_factor_check(&q, &m.weyl).passed(), || format!("gram invariants: determinant of {}", m.label))?;
        computed.push(q);
    }
    // decomposition and adjustment matrices
    let mut checked = 0;
    for e in [2u64, 3, 6] {
        for ell in [5u64, 7, 11, 13] {
            if !is_e_regular(&g2, e, ell) {
                continue;
            }
            let r = run_g2(&d, e, ell)?;
            r.decomposition.check_delta().map_err(|x| format!("decomposition: {x}"))?;
            adjustment_matrix(&r.decomposition, &r.decomposition).map_err(|x| format!("decomposition: {x}"))?;
            checked += 1;
        }
    }
    // cyclotomic identity
    for n in 1..=60u64 {
        let rhs = if n % 2 == 0 { cyclotomic_polynomial(2 * n) } else { &cyclotomic_polynomial(n) * &cyclotomic_polynomial(2 * n) };
        ensure(substitute_square(&cyclotomic_polynomial(n)) == rhs, || format!("cyclotomic identity: d = {n}"))?;
    }
    // rank stability off the exceptional set
    let mut grams = fixtures::g2_cellular_grams();
    grams.extend(computed);
    let mut comparisons = 0;
    for q in &grams {
        for e in 2..=6u64 {
            let zeta = rank_at_zeta(q, e).rank;
            let bad = bad_prime_set(q, e, &q.weyl).map_err(|x| x.to_string())?;
            for ell in (3..=50).filter(|&l| is_prime(l) && (2 * e) % l != 0 && is_e_regular(&q.weyl, e, l)) {
                if bad.verified.contains(&ell) {
                    continue;
                }
                let r = rank_at_modular(q, e, ell).map_err(|x| x.to_string())?.rank;
                ensure(r == zeta, || format!("rank stability: {} e={e} l={ell}", q.label))?;
                comparisons += 1;
            }
        }
    }
    // chop seed independence
    for (e, ell) in [(2u64, 7u64), (3, 7), (6, 5)] {
        let (f, theta) = modular_target(e, ell).map_err(|x| x.to_string())?;
        let modules: Vec<_> = d.labels.iter().cloned().zip(d.reps.iter().map(|m| FModule::specialize(m, &f, theta).unwrap())).collect();
        let runs: Vec<_> = [1u64, 2, 3]
            .iter()
            .map(|&s| decomposition_matrix(&modules, e, ell, s, DEFAULT_BUDGET).map_err(|x| x.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(runs[0] == runs[1] && runs[1] == runs[2], || format!("chop seed independence: e={e} l={ell}"))?;
        let m = FModule::specialize(&build_generator_matrices(&fixtures::e6_10s_wgraph()), &f, theta).unwrap();
        let dims = |s: u64| {
            let mut v: Vec<(usize, usize)> = chop(&m, s, DEFAULT_BUDGET).unwrap().iter().map(|c| (c.dim, c.multiplicity)).collect();
            v.sort();
            v
        };
        ensure(dims(1) == dims(2) && dims(2) == dims(3), || format!("chop seed independence: 10_s e={e} l={ell}"))?;
    }
    // semisimple specializations
    for (e, ell) in [(4u64, 5u64), (4, 7), (5, 7), (5, 11), (7, 13), (8, 5)] {
        ensure(semisimple_at(&g2, e), || format!("semisimple: e={e} should be semisimple"))?;
        let (f, theta) = modular_target(e, ell).map_err(|x| x.to_string())?;
        let modules: Vec<_> = d.labels.iter().cloned().zip(d.reps.iter().map(|m| FModule::specialize(m, &f, theta).unwrap())).collect();
        let dm = decomposition_matrix(&modules, e, ell, 1, DEFAULT_BUDGET).map_err(|x| x.to_string())?;
        ensure(dm.is_identity(), || format!("semisimple: e={e} l={ell}"))?;
    }
    Ok(format!("{} grams, {checked} decomposition matrices, {comparisons} rank comparisons", grams.len()))
}

fn c6_james(limit: Duration) -> Check {
    let g2: WeylType = "G2".parse().unwrap();
    let d = Dataset::g2().map_err(|e| e.to_string())?;
    let mut pairs = 0;
    let mut slowest = Duration::ZERO;
    for e in [2u64, 3, 6] {
        for ell in [5u64, 7, 11, 13] {
            if !is_e_regular(&g2, e, ell) {
                continue;
            }
            let t = Instant::now();
            let r = run_g2(&d, e, ell)?;
            ensure(r.james.holds(), || format!("e={e} l={ell}: radicals differ"))?;
            ensure(r.adjustment.is_identity(), || format!("e={e} l={ell}: adjustment not identity"))?;
            slowest = slowest.max(t.elapsed());
            pairs += 1;
        }
    }
    ensure(slowest < limit, || format!("slowest pair took {slowest:?}"))?;
    Ok(format!("{pairs} pairs, slowest {slowest:.2?}"))
}

fn c7_blocks() -> Check {
    let d = Dataset::g2().map_err(|e| e.to_string())?;
    let schur = d.schur.clone().unwrap();
    let mut defect_one = 0;
    for e in [2u64, 3, 6] {
        let r = run_g2(&d, e, 7)?;
        check_block_structure(&r.blocks, &r.decomposition).map_err(|x| x.to_string())?;
        let singletons: Vec<&str> = r.blocks.blocks.iter().filter(|b| b.labels.len() == 1).map(|b| b.labels[0].as_str()).collect();
        let zero: Vec<&str> = schur.iter().filter(|s| phi_e_defect(s, e) == 0).map(|s| s.label.as_str()).collect();
        let mut a = singletons.clone();
        let mut b = zero.clone();
        a.sort();
        b.sort();
        ensure(a == b, || format!("e={e}: singletons {singletons:?}, defect 0 {zero:?}"))?;
        defect_one += r.blocks.blocks.iter().filter(|b| b.defect == Some(1)).count();
    }
    Ok(format!("constant defects, singletons = defect 0, {defect_one} defect-1 blocks two-diagonal"))
}

type Criterion = (&'static str, &'static str, Duration, Box<dyn Fn() -> Check>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 G2 end-to-end tables", "exact", Duration::from_secs(10), Box::new(|| c1_g2_end_to_end(Duration::from_secs(10)))),
        ("2 G2 invariants a, f", "exact", Duration::from_secs(1), Box::new(c2_g2_invariants)),
        ("3 E6 10_s Gram, rank, bad primes", "exact", Duration::from_secs(60), Box::new(c3_e6_10s)),
        ("4 method agreement", "exact", Duration::from_secs(300), Box::new(c4_method_agreement)),
        ("5 property suites", "exact", Duration::from_secs(600), Box::new(c5_properties)),
        ("6 radical verdict and adjustment", "exact", Duration::from_secs(60), Box::new(|| c6_james(Duration::from_secs(60)))),
        ("7 block structure", "exact", Duration::from_secs(10), Box::new(c7_blocks)),
    ];
    let mut failed = 0;
    for (name, tol, limit, f) in criteria {
        let t = Instant::now();
        let res = f();
        let el = t.elapsed();
        let res = res.and_then(|m| if el <= limit { Ok(m) } else { Err(format!("took {el:.2?}")) });
        match res {
            Ok(m) => println!("PASS criterion {name} [tolerance {tol}, limit {limit:?}, {el:.2?}]: {m}"),
            Err(m) => {
                failed += 1;
                println!("FAIL criterion {name} [tolerance {tol}, limit {limit:?}, {el:.2?}]: {m}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
