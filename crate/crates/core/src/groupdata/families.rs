//! Degree and vertex formulas for the simple-group families.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{check_prime_power, DegreeSet, GroupError};
use crate::graph::PrimeGraph;
use crate::numtheory::{self, FactoredInteger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `cd(PSL2(q))`.
///
/// * `q` even: `{1, q-1, q, q+1}`
/// * `q` odd, `q > 5`: `{1, (q+e)/2, q-1, q, q+1}` with `e = (-1)^((q-1)/2)`
///
/// `q = 5` is treated as `q = 4` since the groups coincide.
pub fn psl2_degrees(q: u128) -> Result<DegreeSet, GroupError> {
    let q = if q == 5 { 4 } else { q };
    check_prime_power(q, 4, "PSL2")?;
    if q > u128::MAX / 2 {
        return Err(GroupError::InvalidParameter(format!(
            "q = {q} is too large"
        )));
    }
    let degrees = if q % 2 == 0 {
        vec![1, q - 1, q, q + 1]
    } else {
        let half = if ((q - 1) / 2) % 2 == 0 {
            q.div_ceil(2)
        } else {
            (q - 1) / 2
        };
        vec![1, half, q - 1, q, q + 1]
    };
    DegreeSet::new(degrees)
}

/// Vertex data for a group whose prime graph is only known in part: the
/// full vertex set plus a subset known to induce a complete subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialVertexData {
    pub vertices: Vec<u128>,
    pub complete_on: Vec<u128>,
    pub partial: bool,
}

impl PartialVertexData {
    fn new(vertices: BTreeSet<u128>, excluded: u128) -> Self {
        let complete_on = vertices
            .iter()
            .copied()
            .filter(|&v| v != excluded)
            .collect();
        PartialVertexData {
            vertices: vertices.into_iter().collect(),
            complete_on,
            partial: true,
        }
    }

    /// The lower-bound graph: a clique on `complete_on`, nothing else.
    pub fn to_graph(&self) -> PrimeGraph {
        let mut edges = Vec::new();
        for (i, &u) in self.complete_on.iter().enumerate() {
            for &v in &self.complete_on[i + 1..] {
                edges.push((u, v));
            }
        }
        PrimeGraph::partial_from_edges(self.vertices.clone(), &edges)
            .expect("vertex data is prime and edges are internal")
    }
}

pub(crate) fn suzuki_exponent(q_squared: u128) -> Result<u32, GroupError> {
    if q_squared == 0 || !q_squared.is_power_of_two() {
        return Err(GroupError::InvalidParameter(format!(
            "Suzuki parameter must be a power of two, got {q_squared}"
        )));
    }
    let e = q_squared.trailing_zeros();
    if e < 3 || e.is_multiple_of(2) {
        return Err(GroupError::InvalidParameter(format!(
            "Suzuki parameter must be 2^(2m+1) with m >= 1, got 2^{e}"
        )));
    }
    if 2 * e >= 128 {
        return Err(GroupError::InvalidParameter(format!(
            "Suzuki parameter 2^{e} is too large"
        )));
    }
    Ok(e)
}

/// Vertices of the Suzuki group `2B2(q^2)`: `{2} + pi(q^2 - 1) + pi(q^4 + 1)`.
/// Every vertex other than 2 is pairwise adjacent; the edges at 2 are not
/// recorded.
pub fn suzuki_vertices(q_squared: u128) -> Result<PartialVertexData, GroupError> {
    suzuki_exponent(q_squared)?;
    let mut vertices = BTreeSet::from([2u128]);
    vertices.extend(numtheory::prime_support(q_squared - 1)?);
    vertices.extend(numtheory::prime_support(q_squared * q_squared + 1)?);
    Ok(PartialVertexData::new(vertices, 2))
}

pub(crate) fn check_psl3_q(q: u128) -> Result<(u128, u32), GroupError> {
    if q == 4 {
        return Err(GroupError::InvalidParameter(
            "PSL3/PSU3 with q = 4 is covered by the named table".into(),
        ));
    }
    if q >= 1 << 40 {
        return Err(GroupError::InvalidParameter(format!(
            "q = {q} is too large"
        )));
    }
    check_prime_power(q, 3, "PSL3")
}

/// Vertices of `PSL3(q)` / `PSU3(q)` with `q = p^f`:
/// `{p} + pi((q^2 - 1)(q^2 + e*q + 1))`, complete away from `p`.
pub fn psl3_vertices(epsilon: Sign, q: u128) -> Result<PartialVertexData, GroupError> {
    let (p, _) = check_psl3_q(q)?;
    let second = match epsilon {
        Sign::Plus => q * q + q + 1,
        Sign::Minus => q * q - q + 1,
    };
    let mut vertices = BTreeSet::from([p]);
    vertices.extend(numtheory::prime_support(q * q - 1)?);
    vertices.extend(numtheory::prime_support(second)?);
    Ok(PartialVertexData::new(vertices, p))
}

/// Indices of the maximal subgroups of `PSL2(2^f)`:
/// `2^(f-1)(2^f+1)`, `2^(f-1)(2^f-1)`, `2^f+1`, then
/// `2^f(2^(2f)-1) / (2^a(2^(2a)-1))` for each prime `n = f/a`, ascending in `n`.
///
/// The last family grows like `2^(3(f-a))`. From `f = 46` some indices leave
/// the `u128` range, and the call then fails instead of wrapping.
pub fn psl2_even_maximal_indices(f: u32) -> Result<Vec<FactoredInteger>, GroupError> {
    if !(2..=63).contains(&f) {
        return Err(GroupError::InvalidParameter(format!(
            "maximal indices need 2 <= f <= 63, got {f}"
        )));
    }
    let q = 1u128 << f;
    let half = 1u128 << (f - 1);
    let mut values = vec![half * (q + 1), half * (q - 1), q + 1];
    for n in 2..=f {
        if !f.is_multiple_of(n) || !numtheory::is_prime(n as u128) {
            continue;
        }
        let a = f / n;
        let ratio = ((1u128 << (2 * f)) - 1) / ((1u128 << (2 * a)) - 1);
        let value = (1u128 << (f - a))
            .checked_mul(ratio)
            .ok_or_else(|| GroupError::InvalidParameter(format!("index overflow at f = {f}")))?;
        values.push(value);
    }
    values
        .into_iter()
        .map(|v| numtheory::factor(v).map_err(GroupError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl2_examples() {
        assert_eq!(psl2_degrees(4).unwrap().degrees(), &[1, 3, 4, 5]);
        assert_eq!(psl2_degrees(5).unwrap().degrees(), &[1, 3, 4, 5]);
        assert_eq!(psl2_degrees(29).unwrap().degrees(), &[1, 15, 28, 29, 30]);
        assert_eq!(psl2_degrees(9).unwrap().degrees(), &[1, 5, 8, 9, 10]);
        assert_eq!(psl2_degrees(7).unwrap().degrees(), &[1, 3, 6, 7, 8]);
        assert_eq!(psl2_degrees(8).unwrap().degrees(), &[1, 7, 8, 9]);
        for bad in [0, 1, 2, 3, 6, 10, 12] {
            assert!(psl2_degrees(bad).is_err(), "q = {bad}");
        }
    }

    #[test]
    fn psl2_sizes() {
        // q = 5 is normalized to q = 4.
        for q in (4..3000u128).filter(|&q| q != 5) {
            let Ok(d) = psl2_degrees(q) else { continue };
            for x in [q - 1, q, q + 1] {
                assert!(d.contains(x));
            }
            if q % 2 == 0 {
                assert_eq!(d.len(), 4);
            } else if q > 5 {
                assert_eq!(d.len(), 5);
            }
        }
    }

    #[test]
    fn suzuki_examples() {
        let s = suzuki_vertices(8).unwrap();
        assert_eq!(s.vertices, vec![2, 5, 7, 13]);
        assert_eq!(s.complete_on, vec![5, 7, 13]);
        assert!(s.partial);
        let s = suzuki_vertices(32).unwrap();
        assert_eq!(s.vertices, vec![2, 5, 31, 41]);
        assert_eq!(s.complete_on, vec![5, 31, 41]);
        for bad in [0, 2, 4, 16, 12, 64] {
            assert!(suzuki_vertices(bad).is_err(), "q^2 = {bad}");
        }
        for e in (3..=61).step_by(2) {
            assert!(suzuki_vertices(1 << e).unwrap().vertices.contains(&2));
        }
    }

    #[test]
    fn psl3_examples() {
        let s = psl3_vertices(Sign::Plus, 3).unwrap();
        assert_eq!((s.vertices, s.complete_on), (vec![2, 3, 13], vec![2, 13]));
        let s = psl3_vertices(Sign::Minus, 3).unwrap();
        assert_eq!((s.vertices, s.complete_on), (vec![2, 3, 7], vec![2, 7]));
        let s = psl3_vertices(Sign::Plus, 5).unwrap();
        assert_eq!(
            (s.vertices, s.complete_on),
            (vec![2, 3, 5, 31], vec![2, 3, 31])
        );
        assert!(psl3_vertices(Sign::Plus, 2).is_err());
        assert!(psl3_vertices(Sign::Minus, 4).is_err());
        assert!(psl3_vertices(Sign::Plus, 6).is_err());
    }

    #[test]
    fn maximal_indices() {
        let v: Vec<u128> = psl2_even_maximal_indices(2)
            .unwrap()
            .iter()
            .map(|f| f.value())
            .collect();
        assert_eq!(v, vec![10, 6, 5, 10]);
        let v: Vec<u128> = psl2_even_maximal_indices(6)
            .unwrap()
            .iter()
            .map(|f| f.value())
            .collect();
        // n = 2, a = 3: 2^3 * 65; n = 3, a = 2: 2^4 * 273.
        assert_eq!(v, vec![2080, 2016, 65, 8 * 65, 16 * 273]);
        for f in 2..=43 {
            let v = psl2_even_maximal_indices(f).unwrap();
            assert_eq!(v[2].value(), (1u128 << f) + 1);
            assert_eq!(v[2].value() % 2, 1);
            for index in &v {
                let odd = index.without_prime(2).value();
                assert_eq!(index.value() % odd, 0);
            }
        }
        assert!(psl2_even_maximal_indices(46).is_err());
        assert!(psl2_even_maximal_indices(1).is_err());
        assert!(psl2_even_maximal_indices(64).is_err());
    }

    #[test]
    fn partial_graph_is_clique_on_complete_part() {
        let g = suzuki_vertices(8).unwrap().to_graph();
        assert!(g.is_partial());
        assert_eq!(g.edge_list(), vec![(5, 7), (5, 13), (7, 13)]);
    }
}
