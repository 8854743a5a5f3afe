//! The invariant suite run by `tropmat check`.

use std::collections::BTreeSet;

use crate::complex::{
    cross_validate_cells, enumerate_all_cells, enumerate_maximal_cells, hypersimplex_coarse_types, orbit_representatives,
    CellRecord,
};
use crate::error::Result;
use crate::fixtures::fixture_matroids;
use crate::halfspace::{gk_minimal, hypersimplex_generators, hypersimplex_halfspaces, verify_exterior_description};
use crate::ideal::{ideal_generators, ideal_membership, is_minimal_generating, Monomial, MonomialIdealModel};
use crate::matroid::{check_exchange, uniform, GroundMatroid};
use crate::minplus::{fine_type, in_tconv, FineType};
use crate::polytope::{
    build_polytope, corner, corner_type_formula, maximal_bounded_cells, origin_type_formula, pseudovertex_type_formula,
    pseudovertices,
};

/// Complexes with more generators than this are only checked on their maximal cells.
pub const FULL_COMPLEX_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.results.push(CheckResult { name: name.into(), passed, detail: detail.into() });
    }

    pub fn to_text(&self) -> String {
        self.results
            .iter()
            .map(|r| {
                let status = if r.passed { "PASS" } else { "FAIL" };
                if r.detail.is_empty() {
                    format!("{status} {}\n", r.name)
                } else {
                    format!("{status} {}: {}\n", r.name, r.detail)
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.passed(),
            "results": self.results.iter().map(|r| serde_json::json!({
                "name": r.name, "pass": r.passed, "detail": r.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Checks every invariant of the polytope, its types and its complex for one matroid.
pub fn check_matroid(report: &mut CheckReport, name: &str, m: &GroundMatroid, cap: u64) -> Result<()> {
    let p = build_polytope(m);
    let n = p.num_generators();
    let all: BTreeSet<usize> = (1..=n).collect();

    report.record(format!("{name}: exchange property"), check_exchange(m), "");
    report.record(format!("{name}: origin type formula"), origin_type_formula(m) == *p.origin_type(), p.origin_type().to_string());

    let mut corners_ok = true;
    for i in 1..=p.width() {
        let c = corner(&p, i)?;
        corners_ok &= c == crate::minplus::TropicalPoint::unit(p.width(), i)
            && fine_type(&c, p.generators())? == corner_type_formula(&p, i)?;
    }
    report.record(format!("{name}: corners are unit vectors with the predicted type"), corners_ok, "");

    let vertices = pseudovertices(&p);
    let mut formula_ok = true;
    let mut union_ok = p.origin_type().union() == all;
    for v in &vertices {
        let direct = fine_type(&v.point, p.generators())?;
        formula_ok &= direct == pseudovertex_type_formula(&p, &v.support) && direct.cell_dimension() == 0;
        union_ok &= direct.union() == all;
    }
    report.record(
        format!("{name}: pseudovertex types agree with the direct computation"),
        formula_ok,
        format!("{} pseudovertices", vertices.len()),
    );

    let cells = maximal_bounded_cells(&p);
    let expected = n * factorial(p.corank());
    let mut cells_ok = cells.len() == expected;
    for c in &cells {
        let t = fine_type(&c.interior_sample(), p.generators())?;
        cells_ok &= t == c.interior_type && t.cell_dimension() == p.corank() && t.is_bounded();
        union_ok &= t.union() == all;
    }
    report.record(
        format!("{name}: maximal bounded cells"),
        cells_ok,
        format!("{} cells, expected n(d+1-k)! = {expected}", cells.len()),
    );

    let maximal = enumerate_maximal_cells(&p, cap)?;
    let cv = cross_validate_cells(&p, &maximal);
    report.record(format!("{name}: closed form vs enumeration"), cv.ok() && cv.bijective(), cv.summary());

    let ideal = ideal_generators(m);
    let brute = MonomialIdealModel::new(maximal.iter().map(|c| Monomial::from(&c.coarse())));
    report.record(
        format!("{name}: coarse-type ideal"),
        is_minimal_generating(&ideal) && ideal == brute && ideal.len() == maximal.len(),
        format!("{} generators", ideal.len()),
    );

    let mut bounded_ok = true;
    for c in &maximal {
        union_ok &= c.fine_type.union() == all;
        bounded_ok &= c.bounded == c.fine_type.is_bounded() && c.bounded == in_tconv(&c.witness, p.generators())?;
    }

    if n <= FULL_COMPLEX_LIMIT {
        let complex = enumerate_all_cells(&p, cap)?;
        let d = p.dim();
        let euler = if d % 2 == 0 { 1 } else { -1 };
        report.record(
            format!("{name}: Euler relation"),
            complex.euler_characteristic() == euler,
            format!("f = {:?}", complex.f_vector),
        );
        let tops: Vec<&CellRecord> = complex.cells_of_dimension(d).collect();
        let mut fidelity = true;
        let mut monotone = true;
        let mut member = true;
        for c in &complex.cells {
            fidelity &= fine_type(&c.witness, p.generators())? == c.fine_type;
            monotone &= tops.iter().any(|t| c.fine_type.contains(&t.fine_type));
            member &= ideal_membership(&c.coarse(), &ideal);
            union_ok &= c.fine_type.union() == all;
            bounded_ok &= c.bounded == in_tconv(&c.witness, p.generators())?;
        }
        report.record(format!("{name}: witness types match stored types"), fidelity, format!("{} cells", complex.cells.len()));
        report.record(format!("{name}: every cell contains the type of a maximal cell"), monotone, "");
        report.record(format!("{name}: every cell's coarse type lies in the ideal"), member, "");
        let enumerated: BTreeSet<FineType> =
            complex.cells_of_dimension(p.corank()).filter(|c| c.bounded).map(|c| c.fine_type.clone()).collect();
        let predicted: BTreeSet<FineType> = cells.iter().map(|c| c.interior_type.clone()).collect();
        report.record(format!("{name}: bounded top cells are the sequence cells"), enumerated == predicted, "");
        let zero: BTreeSet<_> = complex.cells_of_dimension(0).filter(|c| c.bounded).map(|c| c.witness.clone()).collect();
        let pv: BTreeSet<_> = vertices.iter().map(|v| v.point.clone()).collect();
        report.record(format!("{name}: bounded 0-cells are the pseudovertices"), zero == pv, "");
    }
    report.record(format!("{name}: type union is every generator"), union_ok, "");
    report.record(format!("{name}: bounded iff no empty entry"), bounded_ok, "");
    Ok(())
}

fn check_hypersimplices(report: &mut CheckReport, cap: u64, probe_budget: usize) -> Result<()> {
    for (k, d) in [(2, 2), (2, 3)] {
        let g = hypersimplex_generators(k, d)?;
        let system = hypersimplex_halfspaces(k, d)?;
        let mut minimal = true;
        for h in &system.halfspaces {
            minimal &= gk_minimal(h, &g)?;
        }
        report.record(format!("Δ({k},{d}): every listed halfspace is minimal"), minimal, format!("{} halfspaces", system.len()));
        let full = verify_exterior_description(&system, &g, probe_budget)?;
        report.record(
            format!("Δ({k},{d}): exterior description"),
            full.ok(),
            format!("{} probes, {} counterexamples", full.probes, full.counterexamples.len()),
        );
        let mut each_needed = true;
        for idx in d + 1..system.len() {
            each_needed &= !verify_exterior_description(&system.without(idx), &g, probe_budget)?.ok();
        }
        report.record(format!("Δ({k},{d}): dropping any H(0,I) is detected"), each_needed, "");
    }
    for (k, d) in [(2, 2), (2, 3), (3, 3)] {
        let cells = enumerate_maximal_cells(&build_polytope(&uniform(k, d + 1)?), cap)?;
        let formula = hypersimplex_coarse_types(k, d)?;
        let brute = orbit_representatives(&cells);
        report.record(
            format!("Δ({k},{d}): uniform coarse types up to symmetry"),
            formula == brute,
            formula.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
        );
    }
    let d = 3;
    let mut nested = true;
    for k in 1..d {
        let inner = build_polytope(&uniform(k + 1, d + 1)?);
        let outer = build_polytope(&uniform(k, d + 1)?);
        for v in pseudovertices(&inner) {
            nested &= in_tconv(&v.point, outer.generators())?;
        }
    }
    report.record("hypersimplex chain Δ(k+1,3) ⊂ Δ(k,3)", nested, "");
    Ok(())
}

/// Runs the suite over the bundled fixtures and the small hypersimplices.
pub fn run_checks(cap: u64, probe_budget: usize) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for (name, m) in fixture_matroids() {
        check_matroid(&mut report, name, &m, cap)?;
    }
    check_hypersimplices(&mut report, cap, probe_budget)?;
    Ok(report)
}
