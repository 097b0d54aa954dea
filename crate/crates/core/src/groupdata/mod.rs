//! Character-degree sets and the group families they are generated from.

mod families;
mod named;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::numtheory::{self, NumError};

pub use families::{
    psl2_degrees, psl2_even_maximal_indices, psl3_vertices, suzuki_vertices, PartialVertexData,
    Sign,
};
pub use named::{named_degrees, NamedGroupEntry, NamedTable, Solvability, Source, DATA_ENV};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid degree set: {0}")]
    InvalidDegreeSet(String),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown group id {id:?}; available ids: {}", available.join(", "))]
    UnknownId { id: String, available: Vec<String> },
    #[error("{0} only has partial (lower-bound) data and no degree set")]
    Partial(String),
    #[error("malformed named-group data at line {line}: {message}")]
    Data { line: usize, message: String },
    #[error("cannot read named-group data from {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed group spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// The set `cd(G)` of irreducible character degrees: sorted, duplicate
/// free, always containing 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeSet(Vec<u128>);

impl DegreeSet {
    pub fn new(degrees: impl IntoIterator<Item = u128>) -> Result<Self, GroupError> {
        let set: BTreeSet<u128> = degrees.into_iter().collect();
        if set.contains(&0) {
            return Err(GroupError::InvalidDegreeSet(
                "degrees must be positive".into(),
            ));
        }
        if !set.contains(&1) {
            return Err(GroupError::InvalidDegreeSet(
                "the principal degree 1 is missing".into(),
            ));
        }
        Ok(DegreeSet(set.into_iter().collect()))
    }

    /// The degree set of an abelian group.
    pub fn trivial() -> Self {
        DegreeSet(vec![1])
    }

    pub fn degrees(&self) -> &[u128] {
        &self.0
    }

    /// Degrees other than 1.
    pub fn nontrivial(&self) -> &[u128] {
        &self.0[1..]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, d: u128) -> bool {
        self.0.binary_search(&d).is_ok()
    }

    /// `rho(G)`: every prime dividing some degree, ascending.
    pub fn prime_support(&self) -> Vec<u128> {
        let mut primes = BTreeSet::new();
        for &d in self.nontrivial() {
            let f = numtheory::factor(d).expect("degrees are positive");
            primes.extend(f.factors().keys().copied());
        }
        primes.into_iter().collect()
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// Degrees of a direct product: all pairwise products.
pub fn product_degrees(a: &DegreeSet, b: &DegreeSet) -> DegreeSet {
    let set: BTreeSet<u128> = a
        .degrees()
        .iter()
        .flat_map(|&x| {
            b.degrees()
                .iter()
                .map(move |&y| x.checked_mul(y).expect("degree overflow"))
        })
        .collect();
    DegreeSet(set.into_iter().collect())
}

/// A symbolic handle on a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// `PSL2(q)`; build with [`GroupDescriptor::psl2`] so `q = 5` becomes 4.
    Psl2 {
        q: u128,
    },
    /// A key into the named-group table.
    Named {
        id: String,
    },
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
    /// The Suzuki group `2B2(q^2)`; vertex data only.
    SuzukiPartial {
        q_squared: u128,
    },
    /// `PSL3(q)` (`Sign::Plus`) or `PSU3(q)` (`Sign::Minus`); vertex data only.
    Psl3Partial {
        epsilon: Sign,
        q: u128,
    },
}

impl GroupDescriptor {
    pub fn psl2(q: u128) -> Result<Self, GroupError> {
        let q = if q == 5 { 4 } else { q };
        check_prime_power(q, 4, "PSL2")?;
        Ok(GroupDescriptor::Psl2 { q })
    }

    pub fn named(id: impl Into<String>) -> Self {
        GroupDescriptor::Named { id: id.into() }
    }

    pub fn product(left: GroupDescriptor, right: GroupDescriptor) -> Self {
        GroupDescriptor::Product(Box::new(left), Box::new(right))
    }

    pub fn suzuki(q_squared: u128) -> Result<Self, GroupError> {
        families::suzuki_exponent(q_squared)?;
        Ok(GroupDescriptor::SuzukiPartial { q_squared })
    }

    pub fn psl3(epsilon: Sign, q: u128) -> Result<Self, GroupError> {
        families::check_psl3_q(q)?;
        Ok(GroupDescriptor::Psl3Partial { epsilon, q })
    }

    pub fn is_partial(&self) -> bool {
        match self {
            GroupDescriptor::SuzukiPartial { .. } | GroupDescriptor::Psl3Partial { .. } => true,
            GroupDescriptor::Product(a, b) => a.is_partial() || b.is_partial(),
            _ => false,
        }
    }

    /// The full degree set; partial descriptors are rejected.
    pub fn degree_set(&self, table: &NamedTable) -> Result<DegreeSet, GroupError> {
        match self {
            GroupDescriptor::Psl2 { q } => psl2_degrees(*q),
            GroupDescriptor::Named { id } => named_degrees(table, id),
            GroupDescriptor::Product(a, b) => Ok(product_degrees(
                &a.degree_set(table)?,
                &b.degree_set(table)?,
            )),
            GroupDescriptor::SuzukiPartial { .. } | GroupDescriptor::Psl3Partial { .. } => {
                Err(GroupError::Partial(self.to_string()))
            }
        }
    }

    /// Vertex data for the Suzuki and `PSL3`/`PSU3` descriptors.
    pub fn vertex_data(&self) -> Result<PartialVertexData, GroupError> {
        match self {
            GroupDescriptor::SuzukiPartial { q_squared } => suzuki_vertices(*q_squared),
            GroupDescriptor::Psl3Partial { epsilon, q } => psl3_vertices(*epsilon, *q),
            _ => Err(GroupError::InvalidParameter(format!(
                "{self} has a full degree set, not partial vertex data"
            ))),
        }
    }

    /// True only when the group is known to be solvable: a named entry
    /// tagged solvable, or a product of such.
    pub fn known_solvable(&self, table: &NamedTable) -> bool {
        match self {
            GroupDescriptor::Named { id } => table
                .get(id)
                .is_some_and(|e| e.class == Some(Solvability::Solvable)),
            GroupDescriptor::Product(a, b) => a.known_solvable(table) && b.known_solvable(table),
            _ => false,
        }
    }

    /// Parses `PSL2:q`, `Sz:q2`, `PSL3:q`, `PSU3:q`, `product:A,B` or a
    /// named id. `q` may be written as `p^f`.
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(GroupError::BadSpec(spec.to_string()));
        }
        if let Some(rest) = spec.strip_prefix("product:") {
            let (left, right) = rest
                .split_once(',')
                .ok_or_else(|| GroupError::BadSpec(spec.to_string()))?;
            if left.trim().is_empty() || right.trim().is_empty() {
                return Err(GroupError::BadSpec(spec.to_string()));
            }
            return Ok(GroupDescriptor::product(
                GroupDescriptor::parse(left)?,
                GroupDescriptor::parse(right)?,
            ));
        }
        let family = |prefix: &str| -> Result<Option<u128>, GroupError> {
            match spec.strip_prefix(prefix) {
                Some(q) => parse_power(q)
                    .map(Some)
                    .ok_or_else(|| GroupError::BadSpec(spec.to_string())),
                None => Ok(None),
            }
        };
        if let Some(q) = family("PSL2:")? {
            return GroupDescriptor::psl2(q);
        }
        if let Some(q) = family("Sz:")? {
            return GroupDescriptor::suzuki(q);
        }
        if let Some(q) = family("PSL3:")? {
            return GroupDescriptor::psl3(Sign::Plus, q);
        }
        if let Some(q) = family("PSU3:")? {
            return GroupDescriptor::psl3(Sign::Minus, q);
        }
        if spec.contains(',') {
            return Err(GroupError::BadSpec(spec.to_string()));
        }
        Ok(GroupDescriptor::named(spec))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Psl2 { q } => write!(f, "PSL2({q})"),
            GroupDescriptor::Named { id } => write!(f, "{id}"),
            GroupDescriptor::Product(a, b) => write!(f, "{a} x {b}"),
            GroupDescriptor::SuzukiPartial { q_squared } => write!(f, "Sz({q_squared})"),
            GroupDescriptor::Psl3Partial { epsilon, q } => match epsilon {
                Sign::Plus => write!(f, "PSL3({q})"),
                Sign::Minus => write!(f, "PSU3({q})"),
            },
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_power(text: &str) -> Option<u128> {
    let text = text.trim();
    match text.split_once('^') {
        Some((base, exp)) => {
            let base: u128 = base.trim().parse().ok()?;
            let exp: u32 = exp.trim().parse().ok()?;
            base.checked_pow(exp)
        }
        None => text.parse().ok(),
    }
}

/// Returns `(p, f)` with `q = p^f`, requiring `q >= min`.
pub(crate) fn check_prime_power(q: u128, min: u128, what: &str) -> Result<(u128, u32), GroupError> {
    if q < min {
        return Err(GroupError::InvalidParameter(format!(
            "{what} needs q >= {min}, got {q}"
        )));
    }
    numtheory::prime_power_part(q)?
        .ok_or_else(|| GroupError::InvalidParameter(format!("{what} needs a prime power, got {q}")))
}
