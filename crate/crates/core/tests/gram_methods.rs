//! The three Gram solvers agree on every bundled W-graph.

use std::time::Instant;

use hecke_core::fixtures;
use hecke_core::gram::{det_factor_check, reconstruct_gram_modular, solve_gram_direct, solve_gram_standard_base, ModularPlan};
use hecke_core::rings::lp;
use hecke_core::wgraph::build_generator_matrices;

#[test]
fn e6_10s_matches_printed_matrix() {
    let m = build_generator_matrices(&fixtures::e6_10s_wgraph());
    let t = Instant::now();
    let direct = solve_gram_direct(&m).unwrap();
    eprintln!("direct: {:?}", t.elapsed());
    assert_eq!(direct, fixtures::e6_10s_gram());
    assert_eq!(direct.entry(0, 0), &lp(&[(6, 1), (4, 3), (2, 3), (0, 1)]));
    assert_eq!(direct.entry(0, 3), &lp(&[(5, -1), (3, -2), (1, -1)]));
    let t = Instant::now();
    assert_eq!(solve_gram_standard_base(&m).unwrap(), direct);
    eprintln!("standard base: {:?}", t.elapsed());
    let t = Instant::now();
    assert_eq!(reconstruct_gram_modular(&m, &ModularPlan::default()).unwrap(), direct);
    eprintln!("modular: {:?}", t.elapsed());
    assert!(det_factor_check(&direct, &m.weyl).passed());
}

#[test]
fn g2_methods_agree() {
    for g in fixtures::g2_wgraphs() {
        let m = build_generator_matrices(&g);
        let direct = solve_gram_direct(&m).unwrap();
        assert_eq!(solve_gram_standard_base(&m).unwrap(), direct, "{}", g.label);
        assert_eq!(reconstruct_gram_modular(&m, &ModularPlan::default()).unwrap(), direct, "{}", g.label);
        assert!(direct.verify_invariance(&m));
        assert!(direct.is_symmetric() && direct.is_primitive() && direct.sign_rule_holds());
        assert!(det_factor_check(&direct, &m.weyl).passed(), "{}", g.label);
    }
}
