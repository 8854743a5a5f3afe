//! The tropical complex of a generator list: brute-force maximal cells, the full
//! face lattice with its f-vector, and the closed-form coarse types of the
//! maximal cells of a tropical matroid polytope.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::diffcons::System;
use crate::error::{Error, Result};
use crate::matroid::{count_b, GroundMatroid};
use crate::minplus::{fine_type, CoarseType, FineType, TropicalPoint};
use crate::polytope::{build_polytope, pseudovertices, sequence_prefix_entries, valid_sequences, PolytopeModel};

/// Default bound on search nodes for the cell enumerations.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellRecord {
    pub fine_type: FineType,
    pub dimension: usize,
    pub bounded: bool,
    /// Relative-interior point, canonical coordinates.
    pub witness: TropicalPoint,
}

impl CellRecord {
    fn from_witness(witness: TropicalPoint, generators: &[TropicalPoint]) -> Self {
        let fine_type = fine_type(&witness, generators).expect("witness has the generator width");
        Self {
            dimension: fine_type.cell_dimension(),
            bounded: fine_type.is_bounded(),
            fine_type,
            witness: witness.canonical(),
        }
    }

    pub fn coarse(&self) -> CoarseType {
        self.fine_type.coarse()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.fine_type,
            "dim": self.dimension,
            "bounded": self.bounded,
            "coarse": self.coarse(),
            "witness": self.witness.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CellComplexModel {
    /// Sorted by `(dimension, fine_type)`.
    pub cells: Vec<CellRecord>,
    /// `f_0, ..., f_d`.
    pub f_vector: Vec<usize>,
}

impl CellComplexModel {
    /// `f_{-1} = 1, f_0, ..., f_d`.
    pub fn f_vector_with_empty_face(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.f_vector.iter().copied()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn cells_of_dimension(&self, dim: usize) -> impl Iterator<Item = &CellRecord> {
        self.cells.iter().filter(move |c| c.dimension == dim)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.cells.iter().map(CellRecord::to_json).collect())
    }
}

pub fn cell_dimension(t: &FineType) -> usize {
    t.cell_dimension()
}

/// Generator `i` attains its minimum at coordinate `k` (0-based), i.e. for every
/// `j`: `x_j - x_k <= v_{i,j} - v_{i,k}`. Strict for a full-dimensional cell.
fn add_argmin(sys: &mut System, v: &TropicalPoint, k: usize, strict: bool) {
    let c = v.coords();
    for j in 0..c.len() {
        if j != k {
            sys.add(k, j, &c[j] - &c[k], strict);
        }
    }
}

fn check_widths(generators: &[TropicalPoint]) -> Result<usize> {
    let width = generators.first().ok_or(Error::NoGenerators)?.len();
    for v in generators {
        if v.len() != width {
            return Err(Error::DimensionMismatch { expected: width, found: v.len() });
        }
    }
    Ok(width)
}

/// Full-dimensional cells of the complex of `generators`, one per realizable
/// argmin map, found by depth-first search over partial maps with a strict
/// feasibility check at every node. `cap` bounds the number of nodes tested.
pub fn maximal_cells_of(generators: &[TropicalPoint], cap: u64) -> Result<Vec<CellRecord>> {
    let width = check_widths(generators)?;
    let mut out = Vec::new();
    let mut budget = cap;
    let mut sys = System::new(width);
    search_sigma(generators, 0, &mut sys, &mut budget, cap, &mut out)?;
    out.sort_by(|a, b| a.fine_type.cmp(&b.fine_type));
    Ok(out)
}

fn search_sigma(
    generators: &[TropicalPoint],
    depth: usize,
    sys: &mut System,
    budget: &mut u64,
    cap: u64,
    out: &mut Vec<CellRecord>,
) -> Result<()> {
    if depth == generators.len() {
        let witness = TropicalPoint::new(sys.witness().expect("checked feasible"));
        let cell = CellRecord::from_witness(witness, generators);
        debug_assert_eq!(cell.dimension, sys.len() - 1);
        out.push(cell);
        return Ok(());
    }
    for k in 0..sys.len() {
        if *budget == 0 {
            return Err(Error::CapExceeded(cap));
        }
        *budget -= 1;
        let mut next = sys.clone();
        add_argmin(&mut next, &generators[depth], k, true);
        if next.is_feasible() {
            search_sigma(generators, depth + 1, &mut next, budget, cap, out)?;
        }
    }
    Ok(())
}

/// Every cell of the complex of `generators`: faces are reached from the
/// maximal cells by forcing one more generator into one more sector and taking
/// the relative interior of the resulting closed polyhedron.
pub fn complex_of(generators: &[TropicalPoint], cap: u64) -> Result<CellComplexModel> {
    let width = check_widths(generators)?;
    let n = generators.len();
    let mut budget = cap;
    let mut seen: BTreeMap<FineType, CellRecord> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for cell in maximal_cells_of(generators, cap)? {
        queue.push_back(cell.fine_type.clone());
        seen.insert(cell.fine_type.clone(), cell);
    }
    while let Some(t) = queue.pop_front() {
        for i in 1..=n {
            for j in 1..=width {
                if t.entry(j).contains(&i) {
                    continue;
                }
                if budget == 0 {
                    return Err(Error::CapExceeded(cap));
                }
                budget -= 1;
                let mut tight = t.clone();
                tight.entry_mut(j).insert(i);
                let mut sys = System::new(width);
                for (k, entry) in tight.entries().iter().enumerate() {
                    for &l in entry {
                        add_argmin(&mut sys, &generators[l - 1], k, false);
                    }
                }
                let Some((point, dim)) = sys.relative_interior() else { continue };
                let cell = CellRecord::from_witness(TropicalPoint::new(point), generators);
                debug_assert!(cell.fine_type.contains(&tight));
                debug_assert_eq!(cell.dimension, dim);
                if !seen.contains_key(&cell.fine_type) {
                    queue.push_back(cell.fine_type.clone());
                    seen.insert(cell.fine_type.clone(), cell);
                }
            }
        }
    }
    let mut cells: Vec<CellRecord> = seen.into_values().collect();
    cells.sort_by(|a, b| a.dimension.cmp(&b.dimension).then_with(|| a.fine_type.cmp(&b.fine_type)));
    let mut f_vector = vec![0; width];
    for c in &cells {
        f_vector[c.dimension] += 1;
    }
    Ok(CellComplexModel { cells, f_vector })
}

pub fn enumerate_maximal_cells(p: &PolytopeModel, cap: u64) -> Result<Vec<CellRecord>> {
    maximal_cells_of(p.generators(), cap)
}

pub fn enumerate_all_cells(p: &PolytopeModel, cap: u64) -> Result<CellComplexModel> {
    complex_of(p.generators(), cap)
}

/// Sequences `(i_1, ..., i_{d'+1})` indexing the maximal cells: a valid prefix
/// of length `d' <= d-k+1` followed by any unused coordinate.
pub fn theorem_sequences(p: &PolytopeModel) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 0..=p.corank() {
        for prefix in valid_sequences(p, len).expect("length within corank") {
            for last in (1..=p.width()).filter(|e| !prefix.contains(e)) {
                let mut seq = prefix.clone();
                seq.push(last);
                out.push(seq);
            }
        }
    }
    out
}

fn theorem_coarse(m: &GroundMatroid, seq: &[usize]) -> CoarseType {
    let mut counts = vec![0; m.ground_size()];
    let set = |s: &[usize]| s.iter().copied().collect::<BTreeSet<usize>>();
    let b = |inc: &[usize], exc: &[usize]| count_b(m, &set(inc), &set(exc)).expect("disjoint sets in range");
    counts[seq[0] - 1] = b(&seq[..1], &[]) + b(&[], seq);
    for l in 1..seq.len() {
        counts[seq[l] - 1] = b(&seq[l..=l], &seq[..l]);
    }
    CoarseType::new(counts)
}

/// Closed-form coarse types of the maximal cells, one per theorem sequence.
pub fn theorem_coarse_types(m: &GroundMatroid) -> Vec<(Vec<usize>, CoarseType)> {
    let p = build_polytope(m);
    theorem_sequences(&p)
        .into_iter()
        .map(|seq| {
            let t = theorem_coarse(m, &seq);
            (seq, t)
        })
        .collect()
}

/// Fine types behind the closed form: `T_{i_1}` is the origin entry plus the
/// generators avoiding the whole sequence, `T_{i_l}` the origin entry minus
/// everything claimed earlier, all other entries empty.
pub fn theorem_fine_types(p: &PolytopeModel) -> Vec<(Vec<usize>, FineType)> {
    let n = p.num_generators();
    theorem_sequences(p)
        .into_iter()
        .map(|seq| {
            let mut entries = vec![BTreeSet::new(); p.width()];
            for (&i, e) in seq.iter().zip(sequence_prefix_entries(p, &seq)) {
                entries[i - 1] = e;
            }
            let avoiding = (1..=n).filter(|&l| seq.iter().all(|&i| !p.origin_type().entry(i).contains(&l)));
            entries[seq[0] - 1].extend(avoiding);
            (seq, FineType::new(entries))
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_hypersimplex(k: usize, d: usize) -> Result<()> {
    if k < 2 || k > d {
        return Err(Error::ParameterRange { k, d, reason: "need 2 <= k <= d" });
    }
    Ok(())
}

fn hypersimplex_tuple(k: usize, d: usize, alpha: usize) -> CoarseType {
    let mut counts = vec![0; d + 1];
    counts[0] = binomial(d + 1 - alpha, k) + binomial(d, k - 1);
    for (l, c) in counts.iter_mut().enumerate().take(alpha).skip(1) {
        *c = binomial(d - l, k - 1);
    }
    CoarseType::new(counts)
}

/// Orbit representatives (sorted descending) of the maximal-cell coarse types
/// of `Δ_k^d`, `alpha = 1..=d+2-k`.
pub fn hypersimplex_coarse_types(k: usize, d: usize) -> Result<BTreeSet<CoarseType>> {
    check_hypersimplex(k, d)?;
    Ok((1..=d + 2 - k).map(|alpha| hypersimplex_tuple(k, d, alpha).sorted_desc()).collect())
}

/// The `alpha = 0` tuple of the uniform closed form. Its first entry exceeds the
/// number of generators, so it is never the coarse type of a cell.
pub fn hypersimplex_alpha_zero(k: usize, d: usize) -> Result<CoarseType> {
    check_hypersimplex(k, d)?;
    Ok(hypersimplex_tuple(k, d, 0))
}

pub fn orbit_representatives<'a>(cells: impl IntoIterator<Item = &'a CellRecord>) -> BTreeSet<CoarseType> {
    cells.into_iter().map(|c| c.coarse().sorted_desc()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub cells: usize,
    pub sequences: usize,
    pub formula_fine_types: usize,
    /// Cell counts keyed by number of nonzero coarse entries.
    pub by_support: BTreeMap<usize, usize>,
    pub fine_types_equal: bool,
    pub coarse_multisets_equal: bool,
    /// Every sequence's closed-form coarse type is the size vector of its fine type.
    pub formula_consistent: bool,
    pub missing_from_formula: Vec<String>,
    pub missing_from_enumeration: Vec<String>,
}

impl CrossValidation {
    /// Formula and enumeration agree on the set of cells. At rank 1 distinct
    /// sequences can describe the same cell, so the sequence count may exceed
    /// the cell count there.
    pub fn ok(&self) -> bool {
        self.fine_types_equal && self.formula_consistent && self.cells == self.formula_fine_types
    }

    pub fn bijective(&self) -> bool {
        self.ok() && self.coarse_multisets_equal && self.cells == self.sequences
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            format!("OK: {} cells, formula == enumeration", self.cells)
        } else {
            format!(
                "MISMATCH: {} cells enumerated, {} formula types ({} missing from formula, {} missing from enumeration)",
                self.cells,
                self.formula_fine_types,
                self.missing_from_formula.len(),
                self.missing_from_enumeration.len()
            )
        }
    }
}

pub fn cross_validate(p: &PolytopeModel, cap: u64) -> Result<CrossValidation> {
    Ok(cross_validate_cells(p, &enumerate_maximal_cells(p, cap)?))
}

/// As [`cross_validate`], against maximal cells already enumerated.
pub fn cross_validate_cells(p: &PolytopeModel, brute: &[CellRecord]) -> CrossValidation {
    let formula = theorem_fine_types(p);
    let coarse = theorem_coarse_types(p.matroid());
    let brute_types: BTreeSet<FineType> = brute.iter().map(|c| c.fine_type.clone()).collect();
    let formula_types: BTreeSet<FineType> = formula.iter().map(|(_, t)| t.clone()).collect();
    let formula_consistent = formula.iter().zip(&coarse).all(|((s1, t), (s2, c))| s1 == s2 && t.coarse() == *c);
    let brute_coarse: Vec<CoarseType> = brute.iter().map(CellRecord::coarse).sorted().collect();
    let formula_coarse: Vec<CoarseType> = coarse.iter().map(|(_, c)| c.clone()).sorted().collect();
    let mut by_support = BTreeMap::new();
    for c in brute {
        *by_support.entry(c.coarse().nonzero_entries()).or_insert(0) += 1;
    }
    CrossValidation {
        cells: brute.len(),
        sequences: formula.len(),
        formula_fine_types: formula_types.len(),
        by_support,
        fine_types_equal: brute_types == formula_types,
        coarse_multisets_equal: brute_coarse == formula_coarse,
        formula_consistent,
        missing_from_formula: brute_types.difference(&formula_types).map(ToString::to_string).collect(),
        missing_from_enumeration: formula_types.difference(&brute_types).map(ToString::to_string).collect(),
    }
}

/// Bounded 1-skeleton: pseudovertex labels and the pairs joined by a bounded
/// 1-cell, each pair ordered and the list sorted.
pub fn skeleton(p: &PolytopeModel, complex: &CellComplexModel) -> (Vec<String>, Vec<(String, String)>) {
    let m = p.matroid();
    let vertices = pseudovertices(p);
    let mut labels: BTreeMap<FineType, String> = BTreeMap::new();
    for v in &vertices {
        let t = fine_type(&v.point, p.generators()).expect("same width");
        labels.insert(t, v.label(m));
    }
    let mut edges = BTreeSet::new();
    for edge in complex.cells_of_dimension(1).filter(|c| c.bounded) {
        let ends: Vec<&String> = complex
            .cells_of_dimension(0)
            .filter(|v| v.fine_type.contains(&edge.fine_type))
            .filter_map(|v| labels.get(&v.fine_type))
            .collect();
        if let [a, b] = ends[..] {
            edges.insert(if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
        }
    }
    (vertices.iter().map(|v| v.label(m)).collect(), edges.into_iter().collect())
}

/// Graphviz rendering of [`skeleton`].
pub fn skeleton_dot(p: &PolytopeModel, complex: &CellComplexModel) -> String {
    let (nodes, edges) = skeleton(p, complex);
    let mut out = String::from("graph skeleton {\n");
    for v in &nodes {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for (a, b) in &edges {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    out.push_str("}\n");
    out
}

/// Affine dimension of the closed cell of type `t`, read off the equality
/// structure of its constraint system rather than the type graph.
pub fn constraint_dimension(t: &FineType, generators: &[TropicalPoint]) -> Option<usize> {
    let mut sys = System::new(t.len());
    for (k, entry) in t.entries().iter().enumerate() {
        for &l in entry {
            add_argmin(&mut sys, &generators[l - 1], k, false);
        }
    }
    sys.relative_interior().map(|(_, d)| d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{enumerate_bases, parse_graph, uniform};

    const RUNNING_GRAPH: &str = r#"{"vertices":["a","b","c","d"],
        "edges":[["a","b"],["b","c"],["c","a"],["c","d"],["d","b"]]}"#;

    fn running() -> PolytopeModel {
        build_polytope(&enumerate_bases(&parse_graph(RUNNING_GRAPH.as_bytes()).unwrap()))
    }

    fn hypersimplex(k: usize, d: usize) -> PolytopeModel {
        build_polytope(&uniform(k, d + 1).unwrap())
    }

    #[test]
    fn dimension_examples() {
        let p = running();
        assert_eq!(cell_dimension(p.origin_type()), 0);
        let t = FineType::from_lists(&[&[1], &[1], &[3, 6], &[1], &[2, 4, 5, 7, 8]]);
        assert_eq!(cell_dimension(&t), 2);
        let t = FineType::from_lists(&[&[1], &[2], &[3], &[4]]);
        assert_eq!(cell_dimension(&t), 3);
    }

    #[test]
    fn single_generator_is_a_sector_fan() {
        for d in 1..=4 {
            let v = vec![TropicalPoint::from_ints(&(0..=d as i64).collect::<Vec<_>>())];
            let max = maximal_cells_of(&v, DEFAULT_CAP).unwrap();
            assert_eq!(max.len(), d + 1);
            let c = complex_of(&v, DEFAULT_CAP).unwrap();
            let expected: Vec<usize> = (0..=d).map(|i| binomial(d + 1, i)).collect();
            assert_eq!(c.f_vector[1..], expected[1..]);
            assert_eq!(c.f_vector[0], 1);
            assert_eq!(c.euler_characteristic(), if d % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn theorem_coarse_examples() {
        let p = running();
        let types: BTreeMap<Vec<usize>, CoarseType> = theorem_coarse_types(p.matroid()).into_iter().collect();
        assert_eq!(types[&vec![3]], CoarseType::new(vec![0, 0, 8, 0, 0]));
        assert_eq!(types[&vec![1, 2]], CoarseType::new(vec![6, 2, 0, 0, 0]));
        assert_eq!(types[&vec![4, 2, 1]], CoarseType::new(vec![1, 2, 0, 5, 0]));
        assert_eq!(types.len(), 73);
    }

    #[test]
    fn running_example_maximal_cells() {
        let p = running();
        let report = cross_validate(&p, DEFAULT_CAP).unwrap();
        assert!(report.bijective(), "{report:?}");
        assert_eq!(report.cells, 73);
        assert_eq!(report.by_support, BTreeMap::from([(1, 5), (2, 20), (3, 48)]));
        assert_eq!(report.summary(), "OK: 73 cells, formula == enumeration");
    }

    #[test]
    fn running_example_f_vector_and_fidelity() {
        let p = running();
        let c = enumerate_all_cells(&p, DEFAULT_CAP).unwrap();
        assert_eq!(c.f_vector, vec![14, 78, 172, 180, 73]);
        assert_eq!(c.f_vector_with_empty_face(), vec![1, 14, 78, 172, 180, 73]);
        assert_eq!(c.euler_characteristic(), 1);
        let maximal: Vec<&CellRecord> = c.cells_of_dimension(4).collect();
        for cell in &c.cells {
            assert_eq!(fine_type(&cell.witness, p.generators()).unwrap(), cell.fine_type);
            assert_eq!(constraint_dimension(&cell.fine_type, p.generators()), Some(cell.dimension));
            assert_eq!(cell.bounded, cell.fine_type.union().len() == 8 && cell.fine_type.is_bounded());
            assert!(maximal.iter().any(|m| cell.fine_type.contains(&m.fine_type)));
        }
        let zero: BTreeSet<TropicalPoint> = c.cells_of_dimension(0).map(|z| z.witness.clone()).collect();
        let pv: BTreeSet<TropicalPoint> = pseudovertices(&p).into_iter().map(|v| v.point).collect();
        assert_eq!(zero, pv);
    }

    #[test]
    fn bounded_top_cells_match_sequences() {
        for p in [running(), hypersimplex(2, 3), hypersimplex(1, 2), hypersimplex(2, 2)] {
            let c = enumerate_all_cells(&p, DEFAULT_CAP).unwrap();
            let enumerated: BTreeSet<FineType> =
                c.cells_of_dimension(p.corank()).filter(|c| c.bounded).map(|c| c.fine_type.clone()).collect();
            let from_sequences: BTreeSet<FineType> =
                crate::polytope::maximal_bounded_cells(&p).into_iter().map(|b| b.interior_type).collect();
            assert_eq!(enumerated, from_sequences);
        }
    }

    #[test]
    fn cross_validation_small_cases() {
        for p in [hypersimplex(2, 2), hypersimplex(2, 3), hypersimplex(3, 3)] {
            assert!(cross_validate(&p, DEFAULT_CAP).unwrap().bijective());
        }
        for d in 1..=3 {
            let r = cross_validate(&hypersimplex(1, d), DEFAULT_CAP).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn hypersimplex_orbits_match_enumeration() {
        assert_eq!(
            hypersimplex_coarse_types(2, 3).unwrap(),
            BTreeSet::from([
                CoarseType::new(vec![6, 0, 0, 0]),
                CoarseType::new(vec![4, 2, 0, 0]),
                CoarseType::new(vec![3, 2, 1, 0]),
            ])
        );
        for (k, d) in [(2, 2), (2, 3), (3, 3)] {
            let cells = enumerate_maximal_cells(&hypersimplex(k, d), DEFAULT_CAP).unwrap();
            assert_eq!(hypersimplex_coarse_types(k, d).unwrap(), orbit_representatives(&cells), "k={k} d={d}");
        }
        let zero = hypersimplex_alpha_zero(2, 3).unwrap();
        assert!(zero.counts()[0] > binomial(4, 2));
        assert!(hypersimplex_coarse_types(1, 3).is_err());
        assert!(hypersimplex_coarse_types(4, 3).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let p = running();
        assert_eq!(enumerate_maximal_cells(&p, 10), Err(Error::CapExceeded(10)));
    }

    #[test]
    fn skeleton_of_the_simplex_is_a_hexagon() {
        let p = hypersimplex(1, 2);
        let c = enumerate_all_cells(&p, DEFAULT_CAP).unwrap();
        let dot = skeleton_dot(&p, &c);
        assert_eq!(dot.matches(" -- ").count(), 6);
        let (nodes, edges) = skeleton(&p, &c);
        assert_eq!(nodes.len(), 6);
        assert_eq!(nodes, ["v1", "v2", "v3", "e3", "e2", "e1"]);
        let pairs = [("e1", "v2"), ("e1", "v3"), ("e2", "v1"), ("e2", "v3"), ("e3", "v1"), ("e3", "v2")];
        assert_eq!(edges, pairs.map(|(a, b)| (a.to_string(), b.to_string())));
        assert!(dot.starts_with("graph skeleton {"));
    }
}
