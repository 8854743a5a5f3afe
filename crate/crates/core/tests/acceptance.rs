use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{RngAlgorithm, TestRng, TestRunner};

use tropmat::complex::{
    cell_dimension, cross_validate, enumerate_all_cells, enumerate_maximal_cells, hypersimplex_alpha_zero,
    hypersimplex_coarse_types, orbit_representatives, theorem_coarse_types, CellComplexModel, DEFAULT_CAP,
};
use tropmat::fixtures::{fixture_matroids, running_example, running_example_ideal};
use tropmat::halfspace::{
    gk_minimal, hypersimplex_generators, hypersimplex_halfspaces, verify_exterior_description, DEFAULT_PROBE_BUDGET,
};
use tropmat::ideal::{ideal_generators, ideal_membership, is_minimal_generating, resolution_ranks};
use tropmat::matroid::{check_exchange, non_bases, uniform};
use tropmat::minplus::{fine_type, in_tconv, ratio, FineType, TropicalPoint};
use tropmat::polytope::{build_polytope, maximal_bounded_cells, pseudovertex_type_formula, pseudovertices, PolytopeModel};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn running() -> &'static PolytopeModel {
    static P: OnceLock<PolytopeModel> = OnceLock::new();
    P.get_or_init(|| build_polytope(&running_example()))
}

fn running_complex() -> &'static CellComplexModel {
    static C: OnceLock<CellComplexModel> = OnceLock::new();
    C.get_or_init(|| enumerate_all_cells(running(), DEFAULT_CAP).expect("within cap"))
}

fn criterion_1_bases() -> Outcome {
    let m = running_example();
    let expected: Vec<BTreeSet<usize>> = [
        [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5], [1, 4, 5], [2, 3, 4], [2, 3, 5], [3, 4, 5],
    ]
    .iter()
    .map(|b| set(b))
    .collect();
    ensure!(m.bases() == expected.as_slice(), "bases {:?}", m.bases());
    let nb = non_bases(&m);
    ensure!(nb == vec![set(&[1, 2, 3]), set(&[2, 4, 5])], "non-bases {nb:?}");
    Ok(())
}

fn criterion_2_origin_type() -> Outcome {
    let t = fine_type(&TropicalPoint::origin(5), running().generators()).map_err(|e| e.to_string())?;
    let expected =
        FineType::from_lists(&[&[1, 2, 3, 4, 5], &[1, 2, 6, 7], &[3, 4, 6, 7, 8], &[1, 3, 5, 6, 8], &[2, 4, 5, 7, 8]]);
    ensure!(t == expected, "origin type {t}");
    Ok(())
}

fn criterion_3_pseudovertices() -> Outcome {
    let count = pseudovertices(running()).len();
    ensure!(count == 14, "running example has {count} pseudovertices");
    for d in 1..=3 {
        let count = pseudovertices(&build_polytope(&uniform(1, d + 1).unwrap())).len();
        ensure!(count == (1 << (d + 1)) - 2, "simplex of dimension {d} has {count} pseudovertices");
    }
    Ok(())
}

fn criterion_4_bounded_cells() -> Outcome {
    let p = running();
    let cells = maximal_bounded_cells(p);
    ensure!(cells.len() == 16, "{} maximal bounded cells", cells.len());
    for c in &cells {
        let sample = fine_type(&c.interior_sample(), p.generators()).unwrap();
        ensure!(sample == c.interior_type, "sample type {sample} vs {}", c.interior_type);
        ensure!(cell_dimension(&c.interior_type) == 2, "cell {:?} has dimension {}", c.sequence, cell_dimension(&c.interior_type));
    }
    let sample = FineType::from_lists(&[&[1], &[1], &[3, 6], &[1], &[2, 4, 5, 7, 8]]);
    ensure!(cells.iter().any(|c| c.interior_type == sample), "type {sample} missing");
    Ok(())
}

fn criterion_5_maximal_cells() -> Outcome {
    let p = running();
    let cells = enumerate_maximal_cells(p, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure!(cells.len() == 73, "{} maximal cells", cells.len());
    let mut by_support = BTreeMap::new();
    for c in &cells {
        *by_support.entry(c.coarse().nonzero_entries()).or_insert(0) += 1;
    }
    ensure!(by_support == BTreeMap::from([(1, 5), (2, 20), (3, 48)]), "split {by_support:?}");
    let mut brute: Vec<_> = cells.iter().map(|c| c.coarse()).collect();
    let mut formula: Vec<_> = theorem_coarse_types(p.matroid()).into_iter().map(|(_, t)| t).collect();
    brute.sort();
    formula.sort();
    ensure!(brute == formula, "coarse multisets differ");
    let report = cross_validate(p, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure!(report.ok() && report.bijective(), "{}", report.summary());
    Ok(())
}

fn criterion_6_f_vector() -> Outcome {
    let c = running_complex();
    ensure!(c.f_vector == vec![14, 78, 172, 180, 73], "f-vector {:?}", c.f_vector);
    ensure!(c.euler_characteristic() == 1, "Euler sum {}", c.euler_characteristic());
    let ranks = resolution_ranks(c);
    ensure!(ranks == vec![73, 180, 172, 78, 14], "ranks {ranks:?}");
    Ok(())
}

fn criterion_7_ideal() -> Outcome {
    let ideal = ideal_generators(running().matroid());
    let golden = running_example_ideal();
    ensure!(golden.len() == 73, "golden list has {} monomials", golden.len());
    ensure!(ideal == golden, "generated ideal differs from the golden list");
    ensure!(is_minimal_generating(&ideal), "generating set is not minimal");
    for cell in &running_complex().cells {
        let t = fine_type(&cell.witness, running().generators()).unwrap().coarse();
        ensure!(ideal_membership(&t, &ideal), "coarse type {t} of cell {} not in the ideal", cell.fine_type);
    }
    Ok(())
}

fn criterion_8_halfspaces() -> Outcome {
    let listed: [(usize, usize, &[&[usize]]); 2] = [
        (2, 2, &[&[1, 2], &[1, 3], &[2, 3]]),
        (2, 3, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]),
    ];
    for (k, d, origin_sectors) in listed {
        let system = hypersimplex_halfspaces(k, d).map_err(|e| e.to_string())?;
        let g = hypersimplex_generators(k, d).unwrap();
        ensure!(system.len() == d + 1 + origin_sectors.len(), "Δ({k},{d}): {} halfspaces", system.len());
        for (i, h) in system.halfspaces[..=d].iter().enumerate() {
            ensure!(
                *h.apex() == TropicalPoint::unit(d + 1, i + 1) && *h.sectors() == set(&[i + 1]),
                "Δ({k},{d}): cornered halfspace {i} is wrong"
            );
        }
        for (h, sectors) in system.halfspaces[d + 1..].iter().zip(origin_sectors) {
            ensure!(
                *h.apex() == TropicalPoint::origin(d + 1) && *h.sectors() == set(sectors),
                "Δ({k},{d}): expected H(0,{sectors:?})"
            );
        }
        for h in &system.halfspaces {
            ensure!(gk_minimal(h, &g) == Ok(true), "Δ({k},{d}): {h:?} is not minimal");
        }
        let report = verify_exterior_description(&system, &g, DEFAULT_PROBE_BUDGET).unwrap();
        ensure!(report.ok(), "Δ({k},{d}): {} counterexamples", report.counterexamples.len());
        for idx in d + 1..system.len() {
            let reduced = verify_exterior_description(&system.without(idx), &g, DEFAULT_PROBE_BUDGET).unwrap();
            ensure!(!reduced.counterexamples.is_empty(), "Δ({k},{d}): dropping halfspace {idx} went unnoticed");
        }
    }
    Ok(())
}

fn criterion_9_uniform_corollary() -> Outcome {
    for (k, d) in [(2, 2), (2, 3), (3, 3)] {
        let formula = hypersimplex_coarse_types(k, d).map_err(|e| e.to_string())?;
        let cells = enumerate_maximal_cells(&build_polytope(&uniform(k, d + 1).unwrap()), DEFAULT_CAP).unwrap();
        let brute = orbit_representatives(&cells);
        ensure!(formula == brute, "Δ({k},{d}): formula {formula:?} vs enumeration {brute:?}");
        let zero = hypersimplex_alpha_zero(k, d).unwrap();
        let n = hypersimplex_generators(k, d).unwrap().len();
        println!("  note: Δ({k},{d}) alpha = 0 tuple {zero} exceeds n = {n} and is not a cell type");
    }
    Ok(())
}

fn criterion_10_properties() -> Outcome {
    let config = ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let coord = (-8i64..=8, 1i64..=3).prop_map(|(n, d)| ratio(n, d));
    for (name, m) in fixture_matroids() {
        ensure!(check_exchange(&m), "{name}: exchange property fails");
        let p = build_polytope(&m);
        let n = p.num_generators();
        let all: BTreeSet<usize> = (1..=n).collect();
        for v in pseudovertices(&p) {
            let direct = fine_type(&v.point, p.generators()).unwrap();
            ensure!(direct == pseudovertex_type_formula(&p, &v.support), "{name}: formula disagrees at {}", v.point);
        }
        let points = prop::collection::vec(coord.clone(), p.width());
        let shift = coord.clone();
        let gens = p.generators().to_vec();
        runner
            .run(&(points, shift), |(chart, c)| {
                let x = TropicalPoint::new(chart);
                let t = fine_type(&x, &gens).unwrap();
                prop_assert_eq!(t.union(), all.clone());
                prop_assert_eq!(&fine_type(&x.scaled(&c), &gens).unwrap(), &t);
                prop_assert_eq!(t.is_bounded(), in_tconv(&x, &gens).unwrap());
                prop_assert_eq!(t.is_bounded(), t.entries().iter().all(|e| !e.is_empty()));
                Ok(())
            })
            .map_err(|e| format!("{name}: {e}"))?;
    }
    for k in 1..=2 {
        let inner = build_polytope(&uniform(k + 1, 4).unwrap());
        let outer = build_polytope(&uniform(k, 4).unwrap());
        for v in inner.generators() {
            ensure!(in_tconv(v, outer.generators()).unwrap(), "Δ({},3) not inside Δ({k},3)", k + 1);
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 running example bases", criterion_1_bases),
        ("2 origin type", criterion_2_origin_type),
        ("3 pseudovertex counts", criterion_3_pseudovertices),
        ("4 maximal bounded cells", criterion_4_bounded_cells),
        ("5 maximal cells and closed form", criterion_5_maximal_cells),
        ("6 f-vector and resolution ranks", criterion_6_f_vector),
        ("7 coarse-type ideal", criterion_7_ideal),
        ("8 hypersimplex halfspaces", criterion_8_halfspaces),
        ("9 uniform coarse types", criterion_9_uniform_corollary),
        ("10 property suites", criterion_10_properties),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
