//! Matroids given by graphs (bases are spanning trees) or by explicit basis lists.
//!
//! Ground-set elements are the 1-based positions of the edges in the input list.
//! Bases are kept sorted lexicographically by their sorted element lists and
//! indexed `1..=n` in that order.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this many `k`-subsets, spanning trees are found by branching instead of
/// testing every subset.
const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasesJson {
    ground_size: usize,
    bases: Vec<Vec<usize>>,
}

impl LabeledGraph {
    /// Validates a simple, connected, bridgeless graph.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (pos, (a, b)) in edges.iter().enumerate() {
            let label = pos + 1;
            let ia = *index.get(a).ok_or_else(|| Error::UnknownVertex { edge: label, vertex: a.clone() })?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownVertex { edge: label, vertex: b.clone() })?;
            if ia == ib {
                return Err(Error::LoopEdge { edge: label, vertex: a.clone() });
            }
            let key = (ia.min(ib), ia.max(ib));
            if let Some(&first) = seen.get(&key) {
                return Err(Error::DuplicateEdge { edge: label, first });
            }
            seen.insert(key, label);
        }
        let graph = Self { vertices, edges };
        let all: Vec<usize> = (0..graph.edges.len()).collect();
        if graph.components(&all) != 1 {
            return Err(Error::Disconnected);
        }
        for skip in 0..graph.edges.len() {
            let rest: Vec<usize> = all.iter().copied().filter(|&e| e != skip).collect();
            if graph.components(&rest) != 1 {
                return Err(Error::Bridge(skip + 1));
            }
        }
        Ok(graph)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    fn endpoints(&self) -> Vec<(usize, usize)> {
        let index: BTreeMap<&str, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        self.edges
            .iter()
            .map(|(a, b)| (index[a.as_str()], index[b.as_str()]))
            .collect()
    }

    /// Connected components of the spanning subgraph on the given 0-based edges.
    fn components(&self, edges: &[usize]) -> usize {
        let ends = self.endpoints();
        let mut dsu = Dsu::new(self.vertices.len());
        let mut count = self.vertices.len();
        for &e in edges {
            if dsu.union(ends[e].0, ends[e].1) {
                count -= 1;
            }
        }
        count
    }
}

/// Parses the graph JSON format `{"vertices":[..],"edges":[[a,b],..]}`.
pub fn parse_graph(text: &[u8]) -> Result<LabeledGraph> {
    let raw: GraphJson = serde_json::from_slice(text).map_err(|e| Error::Malformed(e.to_string()))?;
    LabeledGraph::new(
        raw.vertices,
        raw.edges.into_iter().map(|[a, b]| (a, b)).collect(),
    )
}

/// Parses the basis-list JSON format `{"ground_size":m,"bases":[[..],..]}`.
pub fn parse_bases(text: &[u8]) -> Result<GroundMatroid> {
    let raw: BasesJson = serde_json::from_slice(text).map_err(|e| Error::Malformed(e.to_string()))?;
    matroid_from_bases(
        raw.ground_size,
        raw.bases.into_iter().map(|b| b.into_iter().collect()).collect(),
    )
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundMatroid {
    ground_size: usize,
    rank: usize,
    bases: Vec<BTreeSet<usize>>,
}

impl GroundMatroid {
    /// `d + 1`.
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// `k`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `n`.
    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> &[BTreeSet<usize>] {
        &self.bases
    }

    /// Basis with 1-based index `i`.
    pub fn basis(&self, i: usize) -> &BTreeSet<usize> {
        &self.bases[i - 1]
    }

    /// 1-based index of `set` if it is a basis.
    pub fn basis_index(&self, set: &BTreeSet<usize>) -> Option<usize> {
        self.bases.binary_search(set).ok().map(|i| i + 1)
    }

    pub fn is_basis(&self, set: &BTreeSet<usize>) -> bool {
        self.basis_index(set).is_some()
    }

    /// Does `set` contain some basis?
    pub fn contains_basis(&self, set: &BTreeSet<usize>) -> bool {
        self.bases.iter().any(|b| b.is_subset(set))
    }

    pub fn ground(&self) -> BTreeSet<usize> {
        (1..=self.ground_size).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ground_size": self.ground_size,
            "bases": self.bases.iter().map(|b| b.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// All spanning trees as edge-label sets.
pub fn enumerate_bases(g: &LabeledGraph) -> GroundMatroid {
    let m = g.edges.len();
    let k = g.vertices.len() - 1;
    let bases = if binomial(m, k) <= EXHAUSTIVE_LIMIT {
        spanning_trees_exhaustive(g)
    } else {
        spanning_trees_branching(g)
    };
    GroundMatroid { ground_size: m, rank: k, bases }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn spanning_trees_exhaustive(g: &LabeledGraph) -> Vec<BTreeSet<usize>> {
    let ends = g.endpoints();
    let k = g.vertices.len() - 1;
    (0..g.edges.len())
        .combinations(k)
        .filter(|subset| {
            let mut dsu = Dsu::new(g.vertices.len());
            subset.iter().all(|&e| dsu.union(ends[e].0, ends[e].1))
        })
        .map(|subset| subset.into_iter().map(|e| e + 1).collect())
        .collect()
}

/// Include/exclude branching over edges in label order: an edge is taken when it
/// joins two components, skipped when the remaining edges still connect the graph.
fn spanning_trees_branching(g: &LabeledGraph) -> Vec<BTreeSet<usize>> {
    let ends = g.endpoints();
    let nv = g.vertices.len();
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    fn connectable(ends: &[(usize, usize)], nv: usize, chosen: &[usize], from: usize) -> bool {
        let mut dsu = Dsu::new(nv);
        let mut comps = nv;
        for &e in chosen.iter().chain(&(from..ends.len()).collect::<Vec<_>>()) {
            if dsu.union(ends[e].0, ends[e].1) {
                comps -= 1;
            }
        }
        comps == 1
    }

    fn acyclic_with(ends: &[(usize, usize)], nv: usize, chosen: &[usize], e: usize) -> bool {
        let mut dsu = Dsu::new(nv);
        for &c in chosen {
            dsu.union(ends[c].0, ends[c].1);
        }
        dsu.union(ends[e].0, ends[e].1)
    }

    fn rec(
        ends: &[(usize, usize)],
        nv: usize,
        e: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if chosen.len() == nv - 1 {
            out.push(chosen.iter().map(|c| c + 1).collect());
            return;
        }
        if e == ends.len() {
            return;
        }
        if acyclic_with(ends, nv, chosen, e) {
            chosen.push(e);
            rec(ends, nv, e + 1, chosen, out);
            chosen.pop();
        }
        if connectable(ends, nv, chosen, e + 1) {
            rec(ends, nv, e + 1, chosen, out);
        }
    }

    rec(&ends, nv, 0, &mut chosen, &mut out);
    out.sort();
    out
}

/// Validates an explicit basis list and sorts it into canonical order.
pub fn matroid_from_bases(ground_size: usize, bases: Vec<BTreeSet<usize>>) -> Result<GroundMatroid> {
    if bases.is_empty() {
        return Err(Error::NoBases);
    }
    let k = bases[0].len();
    for (i, b) in bases.iter().enumerate() {
        if b.len() != k {
            return Err(Error::UnequalBasisSizes { index: i + 1, expected: k, found: b.len() });
        }
        if let Some(&e) = b.iter().find(|&&e| e == 0 || e > ground_size) {
            return Err(Error::ElementOutOfRange { element: e, ground_size });
        }
    }
    let mut sorted = bases;
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateBasis(w[0].clone()));
        }
    }
    for e in 1..=ground_size {
        let hits = sorted.iter().filter(|b| b.contains(&e)).count();
        if hits == 0 {
            return Err(Error::Loop(e));
        }
        if hits == sorted.len() {
            return Err(Error::Coloop(e));
        }
    }
    let m = GroundMatroid { ground_size, rank: k, bases: sorted };
    if let Some((u, v)) = exchange_counterexample(&m) {
        return Err(Error::ExchangeViolated { u, v });
    }
    Ok(m)
}

/// The uniform matroid `U_{k,m}`: every `k`-subset of `[m]` is a basis.
pub fn uniform(k: usize, m: usize) -> Result<GroundMatroid> {
    if k == 0 || k >= m {
        return Err(Error::ParameterRange { k, d: m.saturating_sub(1), reason: "need 1 <= k <= d" });
    }
    matroid_from_bases(m, (1..=m).combinations(k).map(|c| c.into_iter().collect()).collect())
}

/// `k`-subsets of the ground set that are not bases, in lexicographic order.
pub fn non_bases(m: &GroundMatroid) -> Vec<BTreeSet<usize>> {
    (1..=m.ground_size)
        .combinations(m.rank)
        .map(|c| c.into_iter().collect::<BTreeSet<_>>())
        .filter(|s| !m.is_basis(s))
        .collect()
}

/// `b_{I,J}`: bases containing all of `include` and none of `exclude`.
pub fn count_b(m: &GroundMatroid, include: &BTreeSet<usize>, exclude: &BTreeSet<usize>) -> Result<usize> {
    let overlap: BTreeSet<usize> = include.intersection(exclude).copied().collect();
    if !overlap.is_empty() {
        return Err(Error::OverlappingSets(overlap));
    }
    Ok(m.bases
        .iter()
        .filter(|b| include.is_subset(b) && exclude.is_disjoint(b))
        .count())
}

fn exchange_counterexample(m: &GroundMatroid) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
    for u in &m.bases {
        for v in &m.bases {
            if u == v {
                continue;
            }
            for &x in u.difference(v) {
                let ok = v.difference(u).any(|&y| {
                    let mut w = u.clone();
                    w.remove(&x);
                    w.insert(y);
                    m.is_basis(&w)
                });
                if !ok {
                    return Some((u.clone(), v.clone()));
                }
            }
        }
    }
    None
}

/// Basis exchange: for bases `U != V` and `u` in `U \ V` some `v` in `V \ U`
/// makes `U - u + v` a basis.
pub fn check_exchange(m: &GroundMatroid) -> bool {
    exchange_counterexample(m).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const RUNNING_GRAPH: &str = r#"{"vertices":["a","b","c","d"],
        "edges":[["a","b"],["b","c"],["c","a"],["c","d"],["d","b"]]}"#;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn running() -> GroundMatroid {
        enumerate_bases(&parse_graph(RUNNING_GRAPH.as_bytes()).unwrap())
    }

    fn k4() -> LabeledGraph {
        parse_graph(
            br#"{"vertices":["1","2","3","4"],"edges":[["1","2"],["1","3"],["1","4"],["2","3"],["2","4"],["3","4"]]}"#,
        )
        .unwrap()
    }

    /// Brute-force reference: every k-subset whose edges touch all vertices and
    /// contain no cycle, where a cycle is detected by repeatedly pruning leaves.
    fn spanning_trees_by_leaf_pruning(g: &LabeledGraph) -> Vec<BTreeSet<usize>> {
        let ends = g.endpoints();
        let nv = g.vertices().len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << ends.len()) {
            if mask.count_ones() as usize != nv - 1 {
                continue;
            }
            let mut alive: Vec<usize> = (0..ends.len()).filter(|e| mask >> e & 1 == 1).collect();
            loop {
                let mut deg = vec![0; nv];
                for &e in &alive {
                    deg[ends[e].0] += 1;
                    deg[ends[e].1] += 1;
                }
                let before = alive.len();
                alive.retain(|&e| deg[ends[e].0] > 1 && deg[ends[e].1] > 1);
                if alive.len() == before {
                    break;
                }
            }
            if alive.is_empty() {
                out.push((0..ends.len()).filter(|e| mask >> e & 1 == 1).map(|e| e + 1).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn k3_parses_and_has_three_bases() {
        let g = parse_graph(br#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#).unwrap();
        assert_eq!(g.edges().len(), 3);
        let m = enumerate_bases(&g);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bases(), &[set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert!(non_bases(&m).is_empty());
    }

    #[test]
    fn running_example_bases_in_order() {
        let m = running();
        let expected: Vec<BTreeSet<usize>> = [
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 4],
            [1, 3, 5],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
            [3, 4, 5],
        ]
        .iter()
        .map(|b| set(b))
        .collect();
        assert_eq!((m.ground_size(), m.rank(), m.num_bases()), (5, 3, 8));
        assert_eq!(m.bases(), expected.as_slice());
        assert_eq!(non_bases(&m), vec![set(&[1, 2, 3]), set(&[2, 4, 5])]);
        let explicit = matroid_from_bases(5, expected.into_iter().rev().collect()).unwrap();
        assert_eq!(explicit, m);
    }

    #[test]
    fn running_example_matches_leaf_pruning_oracle() {
        let g = parse_graph(RUNNING_GRAPH.as_bytes()).unwrap();
        assert_eq!(enumerate_bases(&g).bases(), spanning_trees_by_leaf_pruning(&g).as_slice());
    }

    #[test]
    fn k4_has_sixteen_spanning_trees() {
        let g = k4();
        let m = enumerate_bases(&g);
        assert_eq!(m.num_bases(), 16);
        assert_eq!(m.bases(), spanning_trees_by_leaf_pruning(&g).as_slice());
        assert_eq!(spanning_trees_branching(&g), spanning_trees_exhaustive(&g));
    }

    #[test]
    fn branching_agrees_with_exhaustive_on_k5() {
        let names: Vec<String> = (1..=5).map(|i| i.to_string()).collect();
        let edges = (0..5)
            .tuple_combinations()
            .map(|(a, b): (usize, usize)| (names[a].clone(), names[b].clone()))
            .collect();
        let g = LabeledGraph::new(names.clone(), edges).unwrap();
        let ex = spanning_trees_exhaustive(&g);
        assert_eq!(ex.len(), 125);
        assert_eq!(spanning_trees_branching(&g), ex);
    }

    #[test]
    fn graph_validation_errors() {
        let path = br#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;
        assert_eq!(parse_graph(path).unwrap_err(), Error::Bridge(1));
        let looped = br#"{"vertices":["a","b"],"edges":[["a","a"]]}"#;
        assert!(matches!(parse_graph(looped).unwrap_err(), Error::LoopEdge { edge: 1, .. }));
        let dup = br#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","a"],["b","c"],["c","a"]]}"#;
        assert_eq!(parse_graph(dup).unwrap_err(), Error::DuplicateEdge { edge: 2, first: 1 });
        let split = br#"{"vertices":["a","b","c","x","y","z"],
            "edges":[["a","b"],["b","c"],["c","a"],["x","y"],["y","z"],["z","x"]]}"#;
        assert_eq!(parse_graph(split).unwrap_err(), Error::Disconnected);
        assert!(matches!(parse_graph(b"{\"vertices\":").unwrap_err(), Error::Malformed(_)));
        let unknown = br#"{"vertices":["a","b"],"edges":[["a","q"]]}"#;
        assert!(matches!(parse_graph(unknown).unwrap_err(), Error::UnknownVertex { .. }));
    }

    #[test]
    fn basis_list_validation_errors() {
        assert!(matches!(
            matroid_from_bases(4, vec![set(&[1, 2]), set(&[3, 4])]).unwrap_err(),
            Error::ExchangeViolated { .. }
        ));
        assert!(matches!(
            matroid_from_bases(3, vec![set(&[1, 2]), set(&[3])]).unwrap_err(),
            Error::UnequalBasisSizes { index: 2, .. }
        ));
        assert_eq!(
            matroid_from_bases(3, vec![set(&[1, 4])]).unwrap_err(),
            Error::ElementOutOfRange { element: 4, ground_size: 3 }
        );
        assert_eq!(matroid_from_bases(3, vec![set(&[1, 2]), set(&[1, 3])]).unwrap_err(), Error::Coloop(1));
        assert_eq!(matroid_from_bases(4, vec![set(&[1, 2]), set(&[2, 3]), set(&[1, 3])]).unwrap_err(), Error::Loop(4));
        assert_eq!(matroid_from_bases(3, vec![]).unwrap_err(), Error::NoBases);
        assert!(parse_bases(br#"{"ground_size":4,"bases":[[1,2],[3,4]]}"#).is_err());
    }

    #[test]
    fn exchange_check_by_hand() {
        assert!(check_exchange(&running()));
        assert!(check_exchange(&uniform(2, 4).unwrap()));
        let bad = GroundMatroid { ground_size: 4, rank: 2, bases: vec![set(&[1, 2]), set(&[3, 4])] };
        assert!(!check_exchange(&bad));
    }

    #[test]
    fn uniform_matroids() {
        let u = uniform(2, 4).unwrap();
        assert_eq!(u.num_bases(), 6);
        assert!(non_bases(&u).is_empty());
        assert!(uniform(4, 4).is_err());
        assert!(uniform(0, 4).is_err());
    }

    #[test]
    fn count_b_examples() {
        let m = running();
        assert_eq!(count_b(&m, &set(&[1]), &set(&[])).unwrap(), 5);
        assert_eq!(count_b(&m, &set(&[]), &set(&[1, 2])).unwrap(), 1);
        assert_eq!(count_b(&m, &set(&[]), &set(&[])).unwrap(), 8);
        assert_eq!(count_b(&m, &set(&[1]), &set(&[1])).unwrap_err(), Error::OverlappingSets(set(&[1])));
    }

    #[test]
    fn count_b_deletion_contraction_recurrence() {
        let m = running();
        for include in (1..=5).powerset() {
            let include: BTreeSet<usize> = include.into_iter().collect();
            let rest: Vec<usize> = (1..=5).filter(|e| !include.contains(e)).collect();
            for exclude in rest.iter().copied().powerset() {
                let exclude: BTreeSet<usize> = exclude.into_iter().collect();
                for &e in rest.iter().filter(|e| !exclude.contains(e)) {
                    let mut i2 = include.clone();
                    i2.insert(e);
                    let mut j2 = exclude.clone();
                    j2.insert(e);
                    assert_eq!(
                        count_b(&m, &include, &exclude).unwrap(),
                        count_b(&m, &i2, &exclude).unwrap() + count_b(&m, &include, &j2).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn non_basis_count_identity() {
        for m in [running(), uniform(2, 4).unwrap(), enumerate_bases(&k4())] {
            assert_eq!(non_bases(&m).len() + m.num_bases() as usize, binomial(m.ground_size(), m.rank()) as usize);
            for e in 1..=m.ground_size() {
                let c = count_b(&m, &set(&[e]), &set(&[])).unwrap();
                assert!(0 < c && c < m.num_bases());
            }
        }
    }
}
