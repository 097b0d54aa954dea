//! Scans over the simple-group families.

use std::collections::BTreeSet;
use std::time::Instant;

use super::report::{Counterexample, InstanceRecord, LabeledFactorization, VerificationReport};
use super::{check_max_f, check_max_q, ScanConfig, VerifyError};
use crate::graph::{FigureA, PrimeGraph};
use crate::groupdata::{
    named_degrees, psl2_degrees, psl3_vertices, suzuki_vertices, NamedTable, Sign,
};
use crate::numtheory::{self, ratio_prime_power_check, FactoredInteger};
use crate::par::{map_ordered, Execution};

type Outcome = (InstanceRecord, Vec<Counterexample>, Option<String>);

fn fact(n: u128) -> FactoredInteger {
    numtheory::factor(n).expect("positive")
}

fn merge(report: &mut VerificationReport, outcomes: Vec<Outcome>) {
    for (record, ces, note) in outcomes {
        report.instances.push(record);
        report.counterexamples.extend(ces);
        report.notable.extend(note);
    }
}

fn sorted_components(mut parts: Vec<Vec<u128>>) -> Vec<Vec<u128>> {
    parts.retain(|p| !p.is_empty());
    parts.sort();
    parts
}

fn psl2_even_instance(f: u32) -> Outcome {
    let q = 1u128 << f;
    let label = format!("PSL2(2^{f})");
    let degrees = psl2_degrees(q).expect("q >= 4 is a prime power");
    let g = PrimeGraph::from_degree_set(&degrees);
    let record = InstanceRecord::from_graph(label.clone(), &g);
    let (minus, plus) = (fact(q - 1), fact(q + 1));
    let audit = || {
        vec![
            LabeledFactorization::new("2^f-1", minus.clone()),
            LabeledFactorization::new("2^f+1", plus.clone()),
        ]
    };
    let mut ces = Vec::new();

    let predicted_free = minus.num_primes() <= 2 && plus.num_primes() <= 2;
    if record.triangle_free != predicted_free {
        ces.push(
            Counterexample::new(
                &label,
                format!(
                    "triangle-free = {} but |pi(2^f-1)| = {}, |pi(2^f+1)| = {}",
                    record.triangle_free,
                    minus.num_primes(),
                    plus.num_primes()
                ),
            )
            .with_factorizations(audit()),
        );
    }

    let expected = sorted_components(vec![vec![2], minus.primes(), plus.primes()]);
    let actual = g.connected_components().expect("exact graph");
    if actual != expected {
        ces.push(
            Counterexample::new(
                &label,
                format!(
                    "components {actual:?}, expected {{2}} | pi(2^f-1) | pi(2^f+1) = {expected:?}"
                ),
            )
            .with_factorizations(audit()),
        );
    }

    let mut note = None;
    if record.triangle_free && record.rho_size == 5 {
        if record.figure_a != Some(FigureA::Second) || f < 6 {
            ces.push(
                Counterexample::new(
                    &label,
                    format!(
                        "five-vertex triangle-free instance with f = {f} matches {:?}, expected Second with f >= 6",
                        record.figure_a
                    ),
                )
                .with_factorizations(audit()),
            );
        }
        // Every maximal subgroup index must carry two odd primes. Only the
        // odd parts are factored, so the check stays in range for every f.
        for (what, odd) in maximal_index_odd_parts(f, &minus, &plus) {
            if odd.num_primes() < 2 {
                ces.push(
                    Counterexample::new(
                        &label,
                        format!("maximal subgroup index {what} has at most one odd prime divisor"),
                    )
                    .with_factorizations(vec![LabeledFactorization::new("odd part", odd)]),
                );
            }
        }
        note = Some(format!("{label} realizes Second"));
    }
    (record, ces, note)
}

/// Odd parts of the maximal subgroup indices of `PSL2(2^f)`, in the order
/// used by `psl2_even_maximal_indices`.
fn maximal_index_odd_parts(
    f: u32,
    minus: &FactoredInteger,
    plus: &FactoredInteger,
) -> Vec<(String, FactoredInteger)> {
    let mut out = vec![
        ("2^(f-1)(2^f+1)".to_string(), plus.clone()),
        ("2^(f-1)(2^f-1)".to_string(), minus.clone()),
        ("2^f+1".to_string(), plus.clone()),
    ];
    for n in 2..=f {
        if !f.is_multiple_of(n) || !numtheory::is_prime(n as u128) {
            continue;
        }
        let a = f / n;
        let ratio = ((1u128 << (2 * f)) - 1) / ((1u128 << (2 * a)) - 1);
        out.push((format!("for n = {n}"), fact(ratio)));
    }
    out
}

/// `(2^(2f)-1)/(2^(2b)-1)` is never a prime power for `6 <= f <= max_f`,
/// `f = n*b`, `n` an odd prime.
pub fn ratio_prime_power_counterexamples(max_f: u32) -> Vec<Counterexample> {
    let mut out = Vec::new();
    for f in 6..=max_f {
        for b in 1..f {
            if f % b != 0 {
                continue;
            }
            let Ok(check) = ratio_prime_power_check(f, b) else {
                continue;
            };
            if check.is_prime_power {
                out.push(
                    Counterexample::new(
                        format!("f = {f}, b = {b}"),
                        "(2^(2f)-1)/(2^(2b)-1) is a prime power",
                    )
                    .with_factorizations(vec![LabeledFactorization::new("ratio", check.ratio)]),
                );
            }
        }
    }
    out
}

/// `PSL2(2^f)` for `2 <= f <= max_f`.
pub fn scan_psl2_even(max_f: u32, exec: Execution) -> Result<VerificationReport, VerifyError> {
    check_max_f(max_f)?;
    let start = Instant::now();
    let params: Vec<u32> = (2..=max_f).collect();
    let mut report = VerificationReport::new("psl2-even", format!("2 <= f <= {max_f}"));
    merge(
        &mut report,
        map_ordered(&params, exec, |&f| psl2_even_instance(f)),
    );
    report
        .counterexamples
        .extend(ratio_prime_power_counterexamples(max_f));
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

fn clique_edges(primes: &[u128], edges: &mut BTreeSet<(u128, u128)>) {
    for (i, &u) in primes.iter().enumerate() {
        for &v in &primes[i + 1..] {
            edges.insert((u, v));
        }
    }
}

fn psl2_odd_instance(q: u128, p: u128) -> Outcome {
    let label = format!("PSL2({q})");
    let degrees = psl2_degrees(q).expect("odd prime power >= 7");
    let g = PrimeGraph::from_degree_set(&degrees);
    let record = InstanceRecord::from_graph(label.clone(), &g);
    let (minus, plus) = (fact(q - 1), fact(q + 1));
    let audit = || {
        vec![
            LabeledFactorization::new("q-1", minus.clone()),
            LabeledFactorization::new("q+1", plus.clone()),
        ]
    };
    let mut ces = Vec::new();

    let predicted_free = minus.num_primes() <= 2 && plus.num_primes() <= 2;
    if record.triangle_free != predicted_free {
        ces.push(
            Counterexample::new(
                &label,
                format!(
                    "triangle-free = {} but |pi(q-1)| = {}, |pi(q+1)| = {}",
                    record.triangle_free,
                    minus.num_primes(),
                    plus.num_primes()
                ),
            )
            .with_factorizations(audit()),
        );
    }
    if record.triangle_free && record.rho_size > 4 {
        ces.push(
            Counterexample::new(
                &label,
                format!("triangle-free with |rho| = {}", record.rho_size),
            )
            .with_factorizations(audit()),
        );
    }

    let even_part: BTreeSet<u128> = minus.primes().into_iter().chain(plus.primes()).collect();
    let expected = sorted_components(vec![vec![p], even_part.into_iter().collect()]);
    let actual = g.connected_components().expect("exact graph");
    if actual != expected {
        ces.push(
            Counterexample::new(
                &label,
                format!("components {actual:?}, expected {{p}} | pi(q^2-1) = {expected:?}"),
            )
            .with_factorizations(audit()),
        );
    }

    let mut expected_edges = BTreeSet::new();
    clique_edges(&minus.primes(), &mut expected_edges);
    clique_edges(&plus.primes(), &mut expected_edges);
    let actual_edges: BTreeSet<_> = g.edge_list().into_iter().collect();
    if actual_edges != expected_edges {
        ces.push(
            Counterexample::new(
                &label,
                "edges differ from the union of cliques on pi(q-1) and pi(q+1)",
            )
            .with_factorizations(audit()),
        );
    }
    let note = (record.triangle_free && record.rho_size == 4)
        .then(|| format!("{label}: triangle-free with 4 vertices"));
    (record, ces, note)
}

/// Odd prime powers `q` with `7 <= q <= max_q`, with their characteristic.
pub(crate) fn odd_prime_powers(max_q: u128) -> Vec<(u128, u128)> {
    (7..=max_q)
        .step_by(2)
        .filter_map(|q| match numtheory::prime_power_part(q) {
            Ok(Some((p, _))) => Some((q, p)),
            _ => None,
        })
        .collect()
}

/// `PSL2(q)` for odd prime powers `7 <= q <= max_q`.
pub fn scan_psl2_odd(max_q: u128, exec: Execution) -> Result<VerificationReport, VerifyError> {
    check_max_q(max_q)?;
    let start = Instant::now();
    let params = odd_prime_powers(max_q);
    let mut report =
        VerificationReport::new("psl2-odd", format!("odd prime powers 7 <= q <= {max_q}"));
    merge(
        &mut report,
        map_ordered(&params, exec, |&(q, p)| psl2_odd_instance(q, p)),
    );
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

/// Named simple groups whose prime graph must contain a triangle.
const TRIANGLE_GROUPS: [&str; 6] = ["J1", "M11", "M23", "A8", "PSL3(4)", "PSU3(4)"];
/// Named groups whose prime graph is exactly a triangle, with the sign of
/// the matching `PSL3`/`PSU3` vertex formula at `q = 3`.
const EXACT_TRIANGLES: [(&str, Sign); 2] = [("PSL3(3)", Sign::Plus), ("PSU3(3)", Sign::Minus)];

enum FamilyParam {
    Suzuki(u32),
    Psl3(Sign, u128),
}

/// The non-`PSL2` simple groups that must always have a triangle, plus
/// the exact-triangle cases `PSL3(3)` and `PSU3(3)`.
///
/// Missing table entries are a [`VerifyError::DataGap`], never a pass.
pub fn verify_excluded_simple_families(
    config: &ScanConfig,
    table: &NamedTable,
) -> Result<VerificationReport, VerifyError> {
    config.validate()?;
    let missing: Vec<String> = TRIANGLE_GROUPS
        .iter()
        .copied()
        .chain(EXACT_TRIANGLES.iter().map(|(id, _)| *id))
        .filter(|id| table.get(id).is_none())
        .map(str::to_string)
        .collect();
    if !missing.is_empty() {
        return Err(VerifyError::DataGap { missing });
    }
    let start = Instant::now();
    let mut report = VerificationReport::new(
        "excluded-families",
        format!(
            "named groups; Sz(2^e), odd 3 <= e <= {}; PSL3/PSU3(q), 3 <= q <= {}, q != 4",
            config.max_suzuki_exponent, config.max_psl3_q
        ),
    );

    for id in TRIANGLE_GROUPS {
        let g = PrimeGraph::from_degree_set(&named_degrees(table, id)?);
        let record = InstanceRecord::from_graph(id, &g);
        if record.triangle_free {
            report
                .counterexamples
                .push(Counterexample::new(id, "prime graph has no triangle"));
        }
        report.instances.push(record);
    }

    for (id, sign) in EXACT_TRIANGLES {
        let g = PrimeGraph::from_degree_set(&named_degrees(table, id)?);
        let expected = psl3_vertices(sign, 3)?.vertices;
        if g.len() != 3 || g.edge_count() != 3 || g.vertices() != expected.as_slice() {
            report.counterexamples.push(Counterexample::new(
                id,
                format!(
                    "prime graph is not the triangle on {expected:?}: vertices {:?}, edges {:?}",
                    g.vertices(),
                    g.edge_list()
                ),
            ));
        }
        report.instances.push(InstanceRecord::from_graph(id, &g));
    }

    let mut params: Vec<FamilyParam> = (3..=config.max_suzuki_exponent)
        .step_by(2)
        .map(FamilyParam::Suzuki)
        .collect();
    for q in 3..=config.max_psl3_q {
        if q == 4 || !matches!(numtheory::prime_power_part(q), Ok(Some(_))) {
            continue;
        }
        params.push(FamilyParam::Psl3(Sign::Plus, q));
        params.push(FamilyParam::Psl3(Sign::Minus, q));
    }
    let outcomes = map_ordered(
        &params,
        config.execution,
        |param| -> Result<Outcome, VerifyError> {
            let (label, data) = match *param {
                FamilyParam::Suzuki(e) => (format!("Sz(2^{e})"), suzuki_vertices(1u128 << e)?),
                FamilyParam::Psl3(sign, q) => {
                    let name = if sign == Sign::Plus { "PSL3" } else { "PSU3" };
                    (format!("{name}({q})"), psl3_vertices(sign, q)?)
                }
            };
            let g = data.to_graph();
            let record = InstanceRecord::from_graph(label.clone(), &g);
            let mut ces = Vec::new();
            match *param {
                FamilyParam::Suzuki(_) => {
                    if data.complete_on.len() < 3 || !g.has_triangle_lower_bound() {
                        ces.push(Counterexample::new(
                            &label,
                            format!("odd part {:?} has fewer than 3 primes", data.complete_on),
                        ));
                    }
                }
                FamilyParam::Psl3(_, q) => {
                    if data.vertices.len() >= 4 {
                        if data.complete_on.len() < 3 || !g.has_triangle_lower_bound() {
                            ces.push(Counterexample::new(
                                &label,
                                format!(
                                    "complete part {:?} has fewer than 3 primes",
                                    data.complete_on
                                ),
                            ));
                        }
                    } else if q != 3 {
                        ces.push(Counterexample::new(
                            &label,
                            format!(
                                "only {} vertices with q = {q}; expected q = 3",
                                data.vertices.len()
                            ),
                        ));
                    }
                }
            }
            Ok((record, ces, None))
        },
    );
    let outcomes: Result<Vec<_>, _> = outcomes.into_iter().collect();
    merge(&mut report, outcomes?);
    report.elapsed = Some(start.elapsed());
    Ok(report)
}
