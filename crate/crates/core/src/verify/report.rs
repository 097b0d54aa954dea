use std::time::Duration;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::{FigureA, PrimeGraph, ShapeFlags};
use crate::numtheory::FactoredInteger;

/// Per-instance facts recorded by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub descriptor: String,
    pub rho_size: usize,
    pub triangle_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[u128; 3]>,
    /// `None` for partial graphs.
    pub components: Option<usize>,
    pub figure_a: Option<FigureA>,
    pub shape: Option<ShapeFlags>,
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_triple: Option<[u128; 3]>,
}

impl InstanceRecord {
    pub fn from_graph(descriptor: impl Into<String>, g: &PrimeGraph) -> Self {
        let descriptor = descriptor.into();
        if g.is_partial() {
            let triangle = g.find_triangle().ok().flatten();
            return InstanceRecord {
                descriptor,
                rho_size: g.len(),
                triangle_free: false,
                triangle: triangle.map(|(a, b, c)| [a, b, c]),
                components: None,
                figure_a: None,
                shape: None,
                partial: true,
                violating_triple: None,
            };
        }
        let triangle = g.find_triangle().expect("exact graph");
        InstanceRecord {
            descriptor,
            rho_size: g.len(),
            triangle_free: triangle.is_none(),
            triangle: triangle.map(|(a, b, c)| [a, b, c]),
            components: Some(g.connected_components().expect("exact graph").len()),
            figure_a: g.figure_a_match().expect("exact graph"),
            shape: Some(g.shape_predicates().expect("exact graph")),
            partial: false,
            violating_triple: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledFactorization {
    pub label: String,
    pub value: FactoredInteger,
}

impl LabeledFactorization {
    pub fn new(label: impl Into<String>, value: FactoredInteger) -> Self {
        LabeledFactorization {
            label: label.into(),
            value,
        }
    }
}

/// A failed assertion, with the factorizations needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub assertion: String,
    pub factorizations: Vec<LabeledFactorization>,
}

impl Counterexample {
    pub fn new(instance: impl Into<String>, assertion: impl Into<String>) -> Self {
        Counterexample {
            instance: instance.into(),
            assertion: assertion.into(),
            factorizations: Vec::new(),
        }
    }

    pub fn with_factorizations(mut self, f: Vec<LabeledFactorization>) -> Self {
        self.factorizations = f;
        self
    }
}

/// Outcome of one scan. Succeeds iff no counterexample was found.
///
/// JSON form: `{"check_id", "range", "instances", "counterexamples",
/// "notable", "success"}` plus `"elapsed_ms"` when timing was recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check_id: String,
    pub parameter_range: String,
    /// In parameter order.
    pub instances: Vec<InstanceRecord>,
    pub counterexamples: Vec<Counterexample>,
    /// Instances singled out by the check, e.g. five-vertex triangle-free ones.
    pub notable: Vec<String>,
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>, parameter_range: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            parameter_range: parameter_range.into(),
            instances: Vec::new(),
            counterexamples: Vec::new(),
            notable: Vec::new(),
            elapsed: None,
        }
    }

    pub fn success(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let len = if self.elapsed.is_some() { 7 } else { 6 };
        let mut st = serializer.serialize_struct("VerificationReport", len)?;
        st.serialize_field("check_id", &self.check_id)?;
        st.serialize_field("range", &self.parameter_range)?;
        st.serialize_field("instances", &self.instances)?;
        st.serialize_field("counterexamples", &self.counterexamples)?;
        st.serialize_field("notable", &self.notable)?;
        st.serialize_field("success", &self.success())?;
        if let Some(d) = self.elapsed {
            st.serialize_field("elapsed_ms", &(d.as_secs_f64() * 1000.0))?;
        }
        st.end()
    }
}
