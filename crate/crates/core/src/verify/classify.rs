//! Decide whether a small graph can be a prime graph, citing the result
//! that settles it.

use std::fmt;

use serde::{Serialize, Serializer};

use super::VerifyError;
use crate::graph::{Graph, GraphError, PrimeGraph, MAX_ISOMORPHISM_VERTICES};
use crate::groupdata::{GroupDescriptor, NamedTable};

/// The published result a verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Citation {
    /// Triangle-free prime graphs have at most five vertices.
    TheoremA,
    /// Only the two Figure A graphs are triangle-free on five vertices.
    TheoremB,
    /// Cycles and trees that are prime graphs have at most four vertices.
    TheoremC,
    /// Lewis and White: a path on four vertices is never a prime graph.
    PathOnFour,
    /// Lewis-Meng and Lewis-White: a square prime graph forces a solvable
    /// direct product.
    SquareSolvable,
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Citation::TheoremA => "Theorem A: a triangle-free prime graph has at most 5 vertices",
            Citation::TheoremB => {
                "Theorem B: a triangle-free prime graph on 5 vertices is K_{2,3} or an isolated vertex plus two disjoint edges"
            }
            Citation::TheoremC => "Theorem C: a prime graph that is a cycle or a tree has at most 4 vertices",
            Citation::PathOnFour => "Lewis-White: a path with 4 vertices is not a prime graph",
            Citation::SquareSolvable => {
                "Lewis-Meng, Lewis-White: a square prime graph forces a direct product, in particular a solvable group"
            }
        })
    }
}

impl Serialize for Citation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ClassificationVerdict {
    OccursWithWitness { witness: GroupDescriptor },
    OccursSolvableOnly { citation: Citation },
    ProvenImpossible { citation: Citation },
    Unknown,
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationVerdict::OccursWithWitness { witness } => {
                write!(f, "OccursWithWitness: {witness}")
            }
            ClassificationVerdict::OccursSolvableOnly { citation } => {
                write!(f, "OccursSolvableOnly: {citation}")
            }
            ClassificationVerdict::ProvenImpossible { citation } => {
                write!(f, "ProvenImpossible: {citation}")
            }
            ClassificationVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Groups whose prime graphs certify occurrence. Each witness is rebuilt
/// and compared before it is returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCatalog {
    witnesses: Vec<GroupDescriptor>,
}

impl Default for WitnessCatalog {
    fn default() -> Self {
        WitnessCatalog {
            witnesses: vec![
                GroupDescriptor::named("PSL3(3)"),
                GroupDescriptor::Psl2 { q: 64 },
                GroupDescriptor::product(
                    GroupDescriptor::named("A5"),
                    GroupDescriptor::named("23^(1+2):11"),
                ),
            ],
        }
    }
}

impl WitnessCatalog {
    pub fn empty() -> Self {
        WitnessCatalog {
            witnesses: Vec::new(),
        }
    }

    pub fn with(mut self, witness: GroupDescriptor) -> Self {
        self.witnesses.push(witness);
        self
    }

    pub fn witnesses(&self) -> &[GroupDescriptor] {
        &self.witnesses
    }

    /// First witness whose rebuilt prime graph is isomorphic to `g`.
    /// Witnesses without table data are skipped.
    fn find(&self, g: &Graph, table: &NamedTable) -> Result<Option<GroupDescriptor>, GraphError> {
        for w in &self.witnesses {
            let Ok(degrees) = w.degree_set(table) else {
                continue;
            };
            let wg = PrimeGraph::from_degree_set(&degrees);
            if wg.len() == g.len() && wg.len() <= MAX_ISOMORPHISM_VERTICES && wg.is_isomorphic(g)? {
                return Ok(Some(w.clone()));
            }
        }
        Ok(None)
    }
}

fn impossible(citation: Citation) -> ClassificationVerdict {
    ClassificationVerdict::ProvenImpossible { citation }
}

/// Applies the known results in a fixed order:
///
/// 1. triangle-free on 6+ vertices: impossible
/// 2. cycle or tree on 5+ vertices (this covers the octagon): impossible
/// 3. path on 4 vertices: impossible
/// 4. triangle-free on 5 vertices but neither Figure A graph: impossible
/// 5. isomorphic to a catalogued witness: occurs
/// 6. 4-cycle: occurs, solvable groups only
/// 7. otherwise unknown
pub fn classify(
    g: &PrimeGraph,
    catalog: &WitnessCatalog,
    table: &NamedTable,
) -> Result<ClassificationVerdict, VerifyError> {
    if g.is_partial() {
        return Err(GraphError::Partial("classify").into());
    }
    if g.len() > MAX_ISOMORPHISM_VERTICES {
        return Err(GraphError::TooLarge {
            size: g.len(),
            limit: MAX_ISOMORPHISM_VERTICES,
        }
        .into());
    }
    let n = g.len();
    let triangle_free = g.find_triangle()?.is_none();
    let shape = g.shape_predicates()?;

    if triangle_free && n >= 6 {
        return Ok(impossible(Citation::TheoremA));
    }
    if (shape.is_cycle || shape.is_tree) && n >= 5 {
        return Ok(impossible(Citation::TheoremC));
    }
    if shape.is_path && n == 4 {
        return Ok(impossible(Citation::PathOnFour));
    }
    if triangle_free && n == 5 && g.figure_a_match()?.is_none() {
        return Ok(impossible(Citation::TheoremB));
    }
    if let Some(witness) = catalog.find(g, table)? {
        return Ok(ClassificationVerdict::OccursWithWitness { witness });
    }
    if shape.is_cycle && n == 4 {
        return Ok(ClassificationVerdict::OccursSolvableOnly {
            citation: Citation::SquareSolvable,
        });
    }
    Ok(ClassificationVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(vertices: &[u128], edges: &[(u128, u128)]) -> PrimeGraph {
        PrimeGraph::from_edges(vertices.iter().copied(), edges).unwrap()
    }

    fn run(g: &PrimeGraph) -> ClassificationVerdict {
        classify(
            g,
            &WitnessCatalog::default(),
            &NamedTable::bundled().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn verdicts() {
        let c5 = pg(
            &[2, 3, 5, 7, 11],
            &[(2, 3), (3, 5), (5, 7), (7, 11), (2, 11)],
        );
        assert_eq!(run(&c5), impossible(Citation::TheoremC));

        let p4 = pg(&[2, 3, 5, 7], &[(2, 3), (3, 5), (5, 7)]);
        assert_eq!(run(&p4), impossible(Citation::PathOnFour));

        let c4 = pg(&[2, 3, 5, 7], &[(2, 3), (3, 5), (5, 7), (2, 7)]);
        assert_eq!(
            run(&c4),
            ClassificationVerdict::OccursSolvableOnly {
                citation: Citation::SquareSolvable
            }
        );

        let k3 = pg(&[2, 3, 5], &[(2, 3), (2, 5), (3, 5)]);
        assert_eq!(
            run(&k3),
            ClassificationVerdict::OccursWithWitness {
                witness: GroupDescriptor::named("PSL3(3)")
            }
        );

        let six = pg(&[2, 3, 5, 7, 11, 13], &[(2, 3), (5, 7), (11, 13)]);
        assert_eq!(run(&six), impossible(Citation::TheoremA));

        let k23 = pg(
            &[2, 3, 5, 7, 11],
            &[(2, 5), (2, 7), (2, 11), (3, 5), (3, 7), (3, 11)],
        );
        assert!(matches!(
            run(&k23),
            ClassificationVerdict::OccursWithWitness { .. }
        ));

        let second = pg(&[2, 3, 5, 7, 13], &[(3, 7), (5, 13)]);
        assert_eq!(
            run(&second),
            ClassificationVerdict::OccursWithWitness {
                witness: GroupDescriptor::Psl2 { q: 64 }
            }
        );

        let star = pg(&[2, 3, 5, 7], &[(2, 3), (2, 5), (2, 7)]);
        assert_eq!(run(&star), ClassificationVerdict::Unknown);

        // Five vertices, triangle-free, not a Figure A graph: a 4-cycle plus a pendant.
        let odd = pg(
            &[2, 3, 5, 7, 11],
            &[(2, 3), (3, 5), (5, 7), (2, 7), (7, 11)],
        );
        assert_eq!(run(&odd), impossible(Citation::TheoremB));

        // The octagon is triangle-free, so the vertex bound settles it first.
        let primes = [2u128, 3, 5, 7, 11, 13, 17, 19];
        let edges: Vec<_> = (0..8).map(|i| (primes[i], primes[(i + 1) % 8])).collect();
        assert_eq!(run(&pg(&primes, &edges)), impossible(Citation::TheoremA));
    }

    #[test]
    fn empty_catalog_is_conservative() {
        let table = NamedTable::bundled().unwrap();
        let k3 = pg(&[2, 3, 5], &[(2, 3), (2, 5), (3, 5)]);
        assert_eq!(
            classify(&k3, &WitnessCatalog::empty(), &table).unwrap(),
            ClassificationVerdict::Unknown
        );
        // A catalog entry that is not isomorphic is never returned.
        let cat = WitnessCatalog::empty().with(GroupDescriptor::named("2.A6"));
        assert_eq!(
            classify(&k3, &cat, &table).unwrap(),
            ClassificationVerdict::Unknown
        );
        // Missing table data skips the witness.
        let cat = WitnessCatalog::empty().with(GroupDescriptor::named("nope"));
        assert_eq!(
            classify(&k3, &cat, &table).unwrap(),
            ClassificationVerdict::Unknown
        );
    }

    #[test]
    fn rejects_partial_and_oversized() {
        let table = NamedTable::bundled().unwrap();
        let partial = PrimeGraph::partial_from_edges([2, 3], &[]).unwrap();
        assert!(classify(&partial, &WitnessCatalog::default(), &table).is_err());
        let primes = [2u128, 3, 5, 7, 11, 13, 17, 19, 23];
        let big = PrimeGraph::from_edges(primes, &[]).unwrap();
        assert!(classify(&big, &WitnessCatalog::default(), &table).is_err());
    }

    #[test]
    fn verdict_json() {
        let v = ClassificationVerdict::ProvenImpossible {
            citation: Citation::TheoremC,
        };
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["verdict"], "ProvenImpossible");
        assert!(json["citation"].as_str().unwrap().starts_with("Theorem C"));
    }
}
