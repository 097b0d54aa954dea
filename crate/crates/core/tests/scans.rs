//! Scans at the default bounds, and agreement between sequential and
//! parallel execution.

use primegraph_core::verify::{
    scan_psl2_even, scan_psl2_odd, verify_bipartite_bound, verify_excluded_simple_families,
    verify_theorem_a, verify_theorem_b, verify_theorem_c,
};
use primegraph_core::{Execution, NamedTable, ScanConfig, VerificationReport};

fn strip(mut r: VerificationReport) -> String {
    r.elapsed = None;
    serde_json::to_string(&r).unwrap()
}

fn config(execution: Execution) -> ScanConfig {
    ScanConfig {
        execution,
        ..ScanConfig::default()
    }
}

#[test]
fn default_scans_succeed() {
    let table = NamedTable::bundled().unwrap();
    let c = ScanConfig::default();
    let reports = [
        scan_psl2_even(c.max_f, c.execution).unwrap(),
        scan_psl2_odd(c.max_q, c.execution).unwrap(),
        verify_excluded_simple_families(&c, &table).unwrap(),
        verify_theorem_a(&c, &table).unwrap(),
        verify_theorem_b(&c, &table).unwrap(),
        verify_theorem_c(&c, &table).unwrap(),
        verify_bipartite_bound(&c, &table).unwrap(),
    ];
    for r in &reports {
        assert!(r.success(), "{}: {:?}", r.check_id, r.counterexamples);
        assert!(!r.instances.is_empty());
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let table = NamedTable::bundled().unwrap();
    let (seq, par) = (config(Execution::Sequential), config(Execution::Parallel));
    assert_eq!(
        strip(scan_psl2_even(40, Execution::Sequential).unwrap()),
        strip(scan_psl2_even(40, Execution::Parallel).unwrap())
    );
    assert_eq!(
        strip(scan_psl2_odd(20_000, Execution::Sequential).unwrap()),
        strip(scan_psl2_odd(20_000, Execution::Parallel).unwrap())
    );
    assert_eq!(
        strip(verify_excluded_simple_families(&seq, &table).unwrap()),
        strip(verify_excluded_simple_families(&par, &table).unwrap())
    );
    assert_eq!(
        strip(verify_theorem_b(&seq, &table).unwrap()),
        strip(verify_theorem_b(&par, &table).unwrap())
    );
}

#[test]
fn stress_bound_for_even_characteristic() {
    let r = scan_psl2_even(60, Execution::Parallel).unwrap();
    assert!(r.success(), "{:?}", r.counterexamples);
    assert_eq!(r.instances.len(), 59);
}

#[test]
fn odd_psl2_instances_have_two_components() {
    let r = scan_psl2_odd(10_000, Execution::Parallel).unwrap();
    for inst in &r.instances {
        assert_eq!(inst.components, Some(2), "{}", inst.descriptor);
        if inst.triangle_free {
            assert!(inst.rho_size <= 4, "{}", inst.descriptor);
        }
    }
}
