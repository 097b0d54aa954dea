//! Palfy's condition: in a solvable group, among any three primes of
//! `rho(G)` some character degree is divisible by two of them.

use serde::Serialize;

use super::report::{Counterexample, InstanceRecord, VerificationReport};
use super::VerifyError;
use crate::graph::PrimeGraph;
use crate::groupdata::{DegreeSet, GroupDescriptor, NamedTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PalfyResult {
    pub satisfied: bool,
    /// Least triple (lexicographically) no degree covers twice.
    pub violating_triple: Option<[u128; 3]>,
}

/// A degree divisible by two primes of a triple is exactly an edge of the
/// prime graph inside the triple, so the condition fails iff the prime
/// graph has an independent set of size three.
pub fn check_palfy(degrees: &DegreeSet) -> PalfyResult {
    let g = PrimeGraph::from_degree_set(degrees);
    let vs = g.vertices();
    let n = vs.len();
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(vs[i], vs[j]) {
                continue;
            }
            for k in j + 1..n {
                if !g.has_edge(vs[i], vs[k]) && !g.has_edge(vs[j], vs[k]) {
                    return PalfyResult {
                        satisfied: false,
                        violating_triple: Some([vs[i], vs[j], vs[k]]),
                    };
                }
            }
        }
    }
    PalfyResult {
        satisfied: true,
        violating_triple: None,
    }
}

/// Report for a single degree set. A violation is only a counterexample
/// when the group is known to be solvable; otherwise it is recorded on the
/// instance.
pub fn palfy_report(label: &str, degrees: &DegreeSet, solvable: bool) -> VerificationReport {
    let mut report = VerificationReport::new(format!("palfy:{label}"), label.to_string());
    let result = check_palfy(degrees);
    let g = PrimeGraph::from_degree_set(degrees);
    let mut record = InstanceRecord::from_graph(label, &g);
    record.violating_triple = result.violating_triple;
    report.instances.push(record);
    if let Some([a, b, c]) = result.violating_triple {
        report.notable.push(format!(
            "{label}: no degree is divisible by two of {{{a},{b},{c}}}"
        ));
        if solvable {
            report.counterexamples.push(Counterexample::new(
                label,
                format!("solvable group violates Palfy's condition on {{{a},{b},{c}}}"),
            ));
        }
    }
    report
}

/// [`palfy_report`] for a descriptor, taking solvability from the table.
pub fn palfy_check(
    descriptor: &GroupDescriptor,
    table: &NamedTable,
) -> Result<VerificationReport, VerifyError> {
    let degrees = descriptor.degree_set(table)?;
    let solvable = descriptor.known_solvable(table);
    Ok(palfy_report(&descriptor.to_string(), &degrees, solvable))
}
