//! Minimal tropical halfspaces and exterior descriptions of tropical hypersimplices.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::complex::{complex_of, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::matroid::uniform;
use crate::minplus::{fine_type, in_tconv, ratio, Rational, TropicalHalfspace, TropicalPoint};
use crate::polytope::build_polytope;

/// Default number of lattice probes used by [`verify_exterior_description`].
pub const DEFAULT_PROBE_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HalfspaceSystem {
    pub halfspaces: Vec<TropicalHalfspace>,
}

impl HalfspaceSystem {
    pub fn new(halfspaces: Vec<TropicalHalfspace>) -> Self {
        Self { halfspaces }
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn contains(&self, x: &TropicalPoint) -> Result<bool> {
        for h in &self.halfspaces {
            if !h.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The system with member `index` (0-based) dropped.
    pub fn without(&self, index: usize) -> Self {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.remove(index);
        Self { halfspaces }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.halfspaces.iter().map(TropicalHalfspace::to_json).collect())
    }
}

fn first_uncontained(h: &TropicalHalfspace, generators: &[TropicalPoint]) -> Result<Option<usize>> {
    for (i, v) in generators.iter().enumerate() {
        if !h.contains(v)? {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// Minimality test for a halfspace containing `generators`, using the type `T`
/// of the apex: (i) the entries in `I` cover all generators; (ii) every entry
/// outside `I` meets one inside; (iii) every entry `i` in `I` shares with some
/// entry outside `I` a generator not covered by the other entries of `I`.
pub fn gk_minimal(h: &TropicalHalfspace, generators: &[TropicalPoint]) -> Result<bool> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    if let Some(i) = first_uncontained(h, generators)? {
        return Err(Error::NotContaining(i));
    }
    let t = fine_type(h.apex(), generators)?;
    let n = generators.len();
    let inside: Vec<usize> = h.sectors().iter().copied().collect();
    let outside: Vec<usize> = (1..=t.len()).filter(|j| !h.sectors().contains(j)).collect();
    let covered: BTreeSet<usize> = inside.iter().flat_map(|&i| t.entry(i).iter().copied()).collect();
    if covered.len() != n {
        return Ok(false);
    }
    if !outside.iter().all(|&j| inside.iter().any(|&i| !t.entry(i).is_disjoint(t.entry(j)))) {
        return Ok(false);
    }
    Ok(inside.iter().all(|&i| {
        let others: BTreeSet<usize> = inside
            .iter()
            .filter(|&&k| k != i)
            .flat_map(|&k| t.entry(k).iter().copied())
            .collect();
        outside.iter().any(|&j| t.entry(i).intersection(t.entry(j)).any(|g| !others.contains(g)))
    }))
}

/// `c_k(V) = ⊕_j (-v_{j,k}) ⊙ v_j`.
fn corner_of(generators: &[TropicalPoint], k: usize) -> Result<TropicalPoint> {
    let mut acc: Option<TropicalPoint> = None;
    for v in generators {
        let term = v.scaled(&-v.coord(k).clone());
        acc = Some(match acc {
            None => term,
            Some(a) => a.tropical_sum(&term)?,
        });
    }
    Ok(acc.ok_or(Error::NoGenerators)?.canonical())
}

/// The `d+1` halfspaces `H(c_k(V), {k})`.
pub fn cornered_halfspaces(generators: &[TropicalPoint]) -> Result<HalfspaceSystem> {
    let width = generators.first().ok_or(Error::NoGenerators)?.len();
    let halfspaces = (1..=width)
        .map(|k| TropicalHalfspace::new(corner_of(generators, k)?, BTreeSet::from([k])))
        .collect::<Result<_>>()?;
    Ok(HalfspaceSystem::new(halfspaces))
}

/// Generators of `Δ_k^d`, in basis order.
pub fn hypersimplex_generators(k: usize, d: usize) -> Result<Vec<TropicalPoint>> {
    if k == 0 || k > d {
        return Err(Error::ParameterRange { k, d, reason: "need 1 <= k <= d" });
    }
    Ok(build_polytope(&uniform(k, d + 1)?).generators().to_vec())
}

/// Cornered halfspaces of `Δ_k^d`, followed for `k >= 2` by every `H(0, I)` with
/// `|I| = d-k+2` in lexicographic order.
pub fn hypersimplex_halfspaces(k: usize, d: usize) -> Result<HalfspaceSystem> {
    let generators = hypersimplex_generators(k, d)?;
    let mut system = cornered_halfspaces(&generators)?;
    if k >= 2 {
        for sectors in (1..=d + 1).combinations(d - k + 2) {
            system
                .halfspaces
                .push(TropicalHalfspace::new(TropicalPoint::origin(d + 1), sectors.into_iter().collect())?);
        }
    }
    Ok(system)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub point: TropicalPoint,
    pub in_polytope: bool,
    pub in_system: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExteriorReport {
    /// `(halfspace, generator)` pairs, 1-based, where containment fails.
    pub uncontained: Vec<(usize, usize)>,
    pub probes: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ExteriorReport {
    pub fn ok(&self) -> bool {
        self.uncontained.is_empty() && self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.ok(),
            "uncontained": self.uncontained,
            "probes": self.probes,
            "counterexamples": self.counterexamples.iter().map(|c| serde_json::json!({
                "point": c.point.to_json(),
                "in_polytope": c.in_polytope,
                "in_system": c.in_system,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Half-integer points of `[-2, 2]^d` in the `c_0` chart, lexicographic, at most `budget`.
fn lattice_probes(width: usize, budget: usize) -> Vec<TropicalPoint> {
    let steps: Vec<Rational> = (-4..=4).map(|h| ratio(h, 2)).collect();
    (0..width - 1)
        .map(|_| steps.iter().cloned())
        .multi_cartesian_product()
        .take(budget)
        .map(|chart| TropicalPoint::from_c0_chart(&chart))
        .collect()
}

/// Pseudovertices of `tconv(V)` shifted by `±1/4` along each unit direction.
fn perturbed_pseudovertices(generators: &[TropicalPoint]) -> Result<Vec<TropicalPoint>> {
    let width = generators[0].len();
    let complex = complex_of(generators, DEFAULT_CAP)?;
    let quarter = ratio(1, 4);
    let mut out = Vec::new();
    for v in complex.cells_of_dimension(0).filter(|c| c.bounded) {
        for i in 0..width {
            for sign in [&quarter, &-quarter.clone()] {
                let mut shift = vec![Rational::zero(); width];
                shift[i] = sign.clone();
                out.push(v.witness.translated(&shift)?);
            }
        }
    }
    Ok(out)
}

/// Checks that every generator lies in every halfspace and that membership in
/// `tconv(V)` agrees with membership in the system on the probe set.
pub fn verify_exterior_description(
    system: &HalfspaceSystem,
    generators: &[TropicalPoint],
    probe_budget: usize,
) -> Result<ExteriorReport> {
    let width = generators.first().ok_or(Error::NoGenerators)?.len();
    let mut uncontained = Vec::new();
    for (hi, h) in system.halfspaces.iter().enumerate() {
        for (gi, v) in generators.iter().enumerate() {
            if !h.contains(v)? {
                uncontained.push((hi + 1, gi + 1));
            }
        }
    }
    let mut probes: BTreeSet<TropicalPoint> = lattice_probes(width, probe_budget).into_iter().collect();
    probes.extend(perturbed_pseudovertices(generators)?);
    let mut counterexamples = Vec::new();
    for x in &probes {
        let in_polytope = in_tconv(x, generators)?;
        let in_system = system.contains(x)?;
        if in_polytope != in_system {
            counterexamples.push(Counterexample { point: x.canonical(), in_polytope, in_system });
        }
    }
    Ok(ExteriorReport { uncontained, probes: probes.len(), counterexamples })
}

fn subscript(i: usize) -> String {
    i.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).expect("decimal digit")).expect("subscript digit"))
        .collect()
}

fn term(i: usize, a: &Rational) -> String {
    let x = format!("x{}", subscript(i));
    if a.is_zero() {
        x
    } else if a.is_positive() {
        format!("{x} \u{2212} {a}")
    } else {
        format!("{x} + {}", -a)
    }
}

fn min_of(terms: Vec<String>) -> String {
    if terms.len() == 1 {
        terms.into_iter().next().expect("one term")
    } else {
        format!("min({})", terms.join(","))
    }
}

/// `min(x₁ − a₁, ...) ≤ min(...)` with zero offsets dropped, e.g.
/// `min(x₁,x₂) ≤ x₃` or `x₁ − 1 ≤ min(x₂,x₃)`.
pub fn inequality(h: &TropicalHalfspace) -> String {
    let apex = h.apex().canonical();
    let (inside, outside): (Vec<usize>, Vec<usize>) = (1..=apex.len()).partition(|i| h.sectors().contains(i));
    let render = |idx: Vec<usize>| min_of(idx.into_iter().map(|i| term(i, apex.coord(i))).collect());
    format!("{} \u{2264} {}", render(inside), render(outside))
}

pub fn inequality_form(system: &HalfspaceSystem) -> String {
    system.halfspaces.iter().map(|h| inequality(h) + "\n").collect()
}
