//! The tropical matroid polytope: generators `-e_B`, the origin type, corners,
//! pseudovertices and the maximal bounded cells of valid deletion sequences.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matroid::GroundMatroid;
use crate::minplus::{fine_type, rat, FineType, Rational, TropicalPoint};

#[derive(Clone, Debug)]
pub struct PolytopeModel {
    matroid: GroundMatroid,
    generators: Vec<TropicalPoint>,
    origin_type: FineType,
}

impl PolytopeModel {
    pub fn matroid(&self) -> &GroundMatroid {
        &self.matroid
    }

    pub fn generators(&self) -> &[TropicalPoint] {
        &self.generators
    }

    pub fn origin_type(&self) -> &FineType {
        &self.origin_type
    }

    /// `d + 1`.
    pub fn width(&self) -> usize {
        self.matroid.ground_size()
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.matroid.ground_size() - 1
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// `d - k + 1`, the dimension of the maximal bounded cells.
    pub fn corank(&self) -> usize {
        self.matroid.ground_size() - self.matroid.rank()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ground_size": self.matroid.ground_size(),
            "rank": self.matroid.rank(),
            "bases": self.matroid.to_json()["bases"],
            "generators": self.generators.iter().map(TropicalPoint::to_json).collect::<Vec<_>>(),
            "origin_type": self.origin_type,
        })
    }
}

pub fn build_polytope(m: &GroundMatroid) -> PolytopeModel {
    let width = m.ground_size();
    let generators: Vec<TropicalPoint> = m
        .bases()
        .iter()
        .map(|b| TropicalPoint::neg_indicator(width, b).canonical())
        .collect();
    let origin_type = fine_type(&TropicalPoint::origin(width), &generators).expect("generators share a width");
    PolytopeModel { matroid: m.clone(), generators, origin_type }
}

/// `T^{(0)}_i = { j : i in B_j }`, read directly off the basis list.
pub fn origin_type_formula(m: &GroundMatroid) -> FineType {
    FineType::new(
        (1..=m.ground_size())
            .map(|i| {
                m.bases()
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.contains(&i))
                    .map(|(j, _)| j + 1)
                    .collect()
            })
            .collect(),
    )
}

fn check_coord(p: &PolytopeModel, i: usize) -> Result<()> {
    if i == 0 || i > p.width() {
        return Err(Error::CoordinateOutOfRange { coord: i, dim: p.width() });
    }
    Ok(())
}

/// `c_i(V) = ⊕_j (-v_{j,i}) ⊙ v_j`, in canonical coordinates.
pub fn corner(p: &PolytopeModel, i: usize) -> Result<TropicalPoint> {
    check_coord(p, i)?;
    let mut acc: Option<TropicalPoint> = None;
    for v in &p.generators {
        let term = v.scaled(&-v.coord(i).clone());
        acc = Some(match acc {
            None => term,
            Some(a) => a.tropical_sum(&term)?,
        });
    }
    Ok(acc.expect("at least one generator").canonical())
}

/// Type of the corner `e_i`: entry `i` holds every generator, entry `j != i`
/// holds the bases containing `j` but not `i`.
pub fn corner_type_formula(p: &PolytopeModel, i: usize) -> Result<FineType> {
    check_coord(p, i)?;
    let bases = p.matroid.bases();
    Ok(FineType::new(
        (1..=p.width())
            .map(|j| {
                if j == i {
                    (1..=bases.len()).collect()
                } else {
                    (1..=bases.len())
                        .filter(|&l| bases[l - 1].contains(&j) && !bases[l - 1].contains(&i))
                        .collect()
                }
            })
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoVertex {
    /// Union of bases `J`; the canonical point is `e_{J^C}`.
    pub support: BTreeSet<usize>,
    pub point: TropicalPoint,
    pub fine_type: FineType,
}

impl PseudoVertex {
    /// `0` for the origin, `v<i>` for the generator of basis `B_i`, otherwise
    /// `e_<i1,i2,..>` listing the complement of the support.
    pub fn label(&self, m: &GroundMatroid) -> String {
        pseudovertex_label(m, &self.support)
    }
}

pub fn pseudovertex_label(m: &GroundMatroid, support: &BTreeSet<usize>) -> String {
    if support.len() == m.ground_size() {
        return "0".to_string();
    }
    if let Some(i) = m.basis_index(support) {
        return format!("v{i}");
    }
    let comp: Vec<String> = (1..=m.ground_size())
        .filter(|e| !support.contains(e))
        .map(|e| e.to_string())
        .collect();
    format!("e{}", comp.join(","))
}

/// Type of `-e_J` from the origin type: for `j in J` remove every generator in
/// an entry indexed by `J^C`; for `j` outside `J` add every generator avoiding
/// all of `J^C`.
pub fn pseudovertex_type_formula(p: &PolytopeModel, support: &BTreeSet<usize>) -> FineType {
    let t0 = &p.origin_type;
    let n = p.num_generators();
    let complement: Vec<usize> = (1..=p.width()).filter(|e| !support.contains(e)).collect();
    let hit: BTreeSet<usize> = complement.iter().flat_map(|&i| t0.entry(i).iter().copied()).collect();
    let avoid: BTreeSet<usize> = (1..=n).filter(|l| !hit.contains(l)).collect();
    FineType::new(
        (1..=p.width())
            .map(|j| {
                if support.contains(&j) {
                    t0.entry(j).difference(&hit).copied().collect()
                } else {
                    t0.entry(j).union(&avoid).copied().collect()
                }
            })
            .collect(),
    )
}

/// All `-e_J` with `J` a union of bases whose type is 0-dimensional, sorted by
/// `(|J|, J)`. The only union that can fail is the full ground set at rank 1,
/// where the origin lies in the interior of the simplex.
pub fn pseudovertices(p: &PolytopeModel) -> Vec<PseudoVertex> {
    let bases = p.matroid.bases();
    let mut unions: BTreeSet<BTreeSet<usize>> = bases.iter().cloned().collect();
    let mut frontier: Vec<BTreeSet<usize>> = unions.iter().cloned().collect();
    while let Some(u) = frontier.pop() {
        for b in bases {
            let grown: BTreeSet<usize> = u.union(b).copied().collect();
            if !unions.contains(&grown) {
                unions.insert(grown.clone());
                frontier.push(grown);
            }
        }
    }
    let mut supports: Vec<BTreeSet<usize>> = unions.into_iter().collect();
    supports.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    supports
        .into_iter()
        .map(|support| {
            let point = TropicalPoint::neg_indicator(p.width(), &support).canonical();
            let fine_type = pseudovertex_type_formula(p, &support);
            PseudoVertex { support, point, fine_type }
        })
        .filter(|v| v.fine_type.cell_dimension() == 0)
        .collect()
}

/// Ordered, duplicate-free tuples whose complement still contains a basis.
pub fn valid_sequences(p: &PolytopeModel, length: usize) -> Result<Vec<Vec<usize>>> {
    let max = p.corank();
    if length > max {
        return Err(Error::LengthOutOfRange { length, max });
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(length);
    extend_valid(&p.matroid, length, &mut seq, &mut out);
    Ok(out)
}

fn extend_valid(m: &GroundMatroid, length: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if seq.len() == length {
        out.push(seq.clone());
        return;
    }
    for e in 1..=m.ground_size() {
        if seq.contains(&e) {
            continue;
        }
        seq.push(e);
        let rest: BTreeSet<usize> = (1..=m.ground_size()).filter(|x| !seq.contains(x)).collect();
        if m.contains_basis(&rest) {
            extend_valid(m, length, seq, out);
        }
        seq.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedCell {
    pub sequence: Vec<usize>,
    /// 1-based index of the basis `[d+1] \ sequence`.
    pub basis: usize,
    /// `0, e_{i1}, e_{i1,i2}, ..., v_B` in canonical coordinates.
    pub vertex_chain: Vec<TropicalPoint>,
    pub interior_type: FineType,
}

impl BoundedCell {
    /// Ordinary average of the chain points, a relative-interior point of the simplex.
    pub fn interior_sample(&self) -> TropicalPoint {
        let width = self.vertex_chain[0].len();
        let count = rat(self.vertex_chain.len() as i64);
        let mut sum = vec![Rational::zero(); width];
        for pt in &self.vertex_chain {
            for (s, c) in sum.iter_mut().zip(pt.coords()) {
                *s += c;
            }
        }
        TropicalPoint::new(sum.into_iter().map(|s| s / &count).collect())
    }
}

/// Interior type along a deletion sequence: entry `i_l` keeps the origin entry
/// minus everything already claimed by `i_1..i_{l-1}`.
pub(crate) fn sequence_prefix_entries(p: &PolytopeModel, sequence: &[usize]) -> Vec<BTreeSet<usize>> {
    let t0 = &p.origin_type;
    let mut claimed = BTreeSet::new();
    let mut out = Vec::with_capacity(sequence.len());
    for &i in sequence {
        out.push(t0.entry(i).difference(&claimed).copied().collect());
        claimed.extend(t0.entry(i).iter().copied());
    }
    out
}

/// One maximal bounded cell per complete valid sequence, `n * (d+1-k)!` in all.
pub fn maximal_bounded_cells(p: &PolytopeModel) -> Vec<BoundedCell> {
    let width = p.width();
    let sequences = valid_sequences(p, p.corank()).expect("corank is in range");
    sequences
        .into_iter()
        .map(|sequence| {
            let basis_set: BTreeSet<usize> = (1..=width).filter(|e| !sequence.contains(e)).collect();
            let basis = p.matroid.basis_index(&basis_set).expect("complement of a complete valid sequence is a basis");
            let mut vertex_chain = Vec::with_capacity(sequence.len() + 1);
            for r in 0..=sequence.len() {
                let deleted: BTreeSet<usize> = sequence[..r].iter().copied().collect();
                vertex_chain.push(TropicalPoint::indicator(width, &deleted));
            }
            let mut entries = vec![BTreeSet::from([basis]); width];
            for (&i, entry) in sequence.iter().zip(sequence_prefix_entries(p, &sequence)) {
                entries[i - 1] = entry;
            }
            BoundedCell { sequence, basis, vertex_chain, interior_type: FineType::new(entries) }
        })
        .collect()
}
