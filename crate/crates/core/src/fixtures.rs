//! Bundled inputs and golden data.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::ideal::MonomialIdealModel;
use crate::matroid::{enumerate_bases, parse_bases, parse_graph, uniform, GroundMatroid, LabeledGraph};
use crate::minplus::FineType;

pub const RUNNING_EXAMPLE_GRAPH: &str = include_str!("../fixtures/running_example.json");
pub const RUNNING_EXAMPLE_BASES: &str = include_str!("../fixtures/running_example_bases.json");
pub const RUNNING_EXAMPLE_EXPECTED: &str = include_str!("../fixtures/running_example_expected.json");
/// Written with variables `x_0..x_4`.
pub const RUNNING_EXAMPLE_IDEAL: &str = include_str!("../fixtures/running_example_ideal.txt");
pub const K3_GRAPH: &str = include_str!("../fixtures/k3.json");
pub const K4_GRAPH: &str = include_str!("../fixtures/k4.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub nonbases: Vec<BTreeSet<usize>>,
    pub origin_type: FineType,
    pub pseudovertices: Vec<String>,
    pub bounded_cells: usize,
    pub sample_interior_type: FineType,
    pub maximal_cells: usize,
    pub maximal_cells_by_support: BTreeMap<usize, usize>,
    pub f_vector: Vec<usize>,
    pub resolution_ranks: Vec<usize>,
}

pub fn running_example_graph() -> LabeledGraph {
    parse_graph(RUNNING_EXAMPLE_GRAPH.as_bytes()).expect("bundled graph is valid")
}

pub fn running_example() -> GroundMatroid {
    enumerate_bases(&running_example_graph())
}

pub fn running_example_bases() -> GroundMatroid {
    parse_bases(RUNNING_EXAMPLE_BASES.as_bytes()).expect("bundled basis list is valid")
}

pub fn running_example_expected() -> Expected {
    serde_json::from_str(RUNNING_EXAMPLE_EXPECTED).expect("bundled expectations parse")
}

pub fn running_example_ideal() -> MonomialIdealModel {
    MonomialIdealModel::parse_text(RUNNING_EXAMPLE_IDEAL, 5, true).expect("bundled ideal parses")
}

pub fn k3() -> GroundMatroid {
    enumerate_bases(&parse_graph(K3_GRAPH.as_bytes()).expect("bundled graph is valid"))
}

pub fn k4() -> GroundMatroid {
    enumerate_bases(&parse_graph(K4_GRAPH.as_bytes()).expect("bundled graph is valid"))
}

/// The matroids exercised by the invariant suite, with display names.
pub fn fixture_matroids() -> Vec<(&'static str, GroundMatroid)> {
    vec![
        ("running example", running_example()),
        ("K3", k3()),
        ("K4", k4()),
        ("U(2,3)", uniform(2, 3).expect("valid")),
        ("U(2,4)", uniform(2, 4).expect("valid")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(running_example(), running_example_bases());
        assert_eq!(running_example_ideal().len(), 73);
        assert_eq!(running_example_expected().f_vector, vec![14, 78, 172, 180, 73]);
        assert_eq!(k3().num_bases(), 3);
        assert_eq!(k4().num_bases(), 16);
    }
}
