//! The coarse-type monomial ideal and the ranks of its cellular resolution.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{theorem_coarse_types, CellComplexModel};
use crate::error::{Error, Result};
use crate::matroid::GroundMatroid;
use crate::minplus::CoarseType;

/// Exponent vector; position `c` (0-based) is the exponent of coordinate `c+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<usize>,
}

impl Monomial {
    pub fn new(exponents: Vec<usize>) -> Self {
        Self { exponents }
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.len() == other.exponents.len()
            && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// `x_1^a*x_3^b` style, zero exponents omitted; `1` for the unit monomial.
    pub fn render(&self, zero_based: bool) -> String {
        let offset = usize::from(!zero_based);
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(c, e)| format!("x_{}^{}", c + offset, e))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Inverse of [`Monomial::render`]; a bare `x_i` means exponent 1.
    pub fn parse(text: &str, width: usize, zero_based: bool) -> Result<Self> {
        let text = text.trim();
        let mut exponents = vec![0; width];
        if text == "1" {
            return Ok(Self::new(exponents));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix("x_")
                .ok_or_else(|| Error::Malformed(format!("bad factor {factor:?}")))?;
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, e),
                None => (rest, "1"),
            };
            let var: usize = var.parse().map_err(|_| Error::Malformed(format!("bad variable in {factor:?}")))?;
            let exp: usize = exp.parse().map_err(|_| Error::Malformed(format!("bad exponent in {factor:?}")))?;
            let coord = if zero_based { var } else { var.checked_sub(1).ok_or(Error::CoordinateOutOfRange { coord: 0, dim: width })? };
            if coord >= width {
                return Err(Error::CoordinateOutOfRange { coord: coord + 1, dim: width });
            }
            exponents[coord] = exponents[coord]
                .checked_add(exp)
                .ok_or_else(|| Error::Malformed(format!("exponent overflow in {factor:?}")))?;
        }
        Ok(Self::new(exponents))
    }
}

impl From<&CoarseType> for Monomial {
    fn from(t: &CoarseType) -> Self {
        Monomial::new(t.counts().to_vec())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdealModel {
    /// Deduplicated, sorted lexicographically by exponent vector.
    generators: Vec<Monomial>,
}

impl MonomialIdealModel {
    pub fn new(generators: impl IntoIterator<Item = Monomial>) -> Self {
        let set: BTreeSet<Monomial> = generators.into_iter().collect();
        Self { generators: set.into_iter().collect() }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn to_text(&self, zero_based: bool) -> String {
        self.generators.iter().map(|g| g.render(zero_based) + "\n").collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.generators.iter().map(Monomial::exponents).collect::<Vec<_>>())
    }

    /// One monomial per line; blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str, width: usize, zero_based: bool) -> Result<Self> {
        let mut gens = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            gens.push(Monomial::parse(line, width, zero_based)?);
        }
        Ok(Self::new(gens))
    }
}

/// One generator per closed-form maximal-cell coarse type.
pub fn ideal_generators(m: &GroundMatroid) -> MonomialIdealModel {
    MonomialIdealModel::new(theorem_coarse_types(m).iter().map(|(_, t)| Monomial::from(t)))
}

/// No generator divides a different one.
pub fn is_minimal_generating(ideal: &MonomialIdealModel) -> bool {
    let g = ideal.generators();
    g.iter().enumerate().all(|(i, a)| g.iter().enumerate().all(|(j, b)| i == j || !a.divides(b)))
}

pub fn ideal_membership(t: &CoarseType, ideal: &MonomialIdealModel) -> bool {
    ideal.contains(&Monomial::from(t))
}

/// Ranks of the cellular resolution, starting with the module mapping onto the ideal.
pub fn resolution_ranks(c: &CellComplexModel) -> Vec<usize> {
    c.f_vector.iter().rev().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complex_of, enumerate_maximal_cells, DEFAULT_CAP};
    use crate::matroid::uniform;
    use crate::minplus::TropicalPoint;
    use crate::polytope::build_polytope;

    fn mono(e: &[usize]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn divisibility_and_minimality() {
        let a = mono(&[2, 0]);
        let b = mono(&[2, 1]);
        assert!(a.divides(&b) && !b.divides(&a));
        assert!(!is_minimal_generating(&MonomialIdealModel::new([a.clone(), b])));
        assert!(is_minimal_generating(&MonomialIdealModel::new([mono(&[1])])));
        assert!(!MonomialIdealModel::new([a.clone()]).contains(&mono(&[0, 0])));
        assert!(MonomialIdealModel::new([a.clone()]).contains(&a));
    }

    #[test]
    fn render_and_parse_round_trip() {
        let m = mono(&[1, 0, 3]);
        assert_eq!(m.render(false), "x_1^1*x_3^3");
        assert_eq!(m.render(true), "x_0^1*x_2^3");
        assert_eq!(Monomial::parse("x_1^1*x_3^3", 3, false).unwrap(), m);
        assert_eq!(Monomial::parse("x_0*x_2^3", 3, true).unwrap(), m);
        assert_eq!(mono(&[0, 0]).render(false), "1");
        assert_eq!(Monomial::parse("1", 2, false).unwrap(), mono(&[0, 0]));
        assert!(Monomial::parse("x_4^1", 3, false).is_err());
        assert!(Monomial::parse("x_0^1", 3, false).is_err());
        assert!(Monomial::parse("y_1", 3, false).is_err());
        assert!(Monomial::parse("x_1^", 3, false).is_err());
    }

    #[test]
    fn segment_ideal_matches_enumeration() {
        let m = uniform(1, 2).unwrap();
        let ideal = ideal_generators(&m);
        let cells = enumerate_maximal_cells(&build_polytope(&m), DEFAULT_CAP).unwrap();
        let brute = MonomialIdealModel::new(cells.iter().map(|c| Monomial::from(&c.coarse())));
        assert_eq!(ideal, brute);
        assert_eq!(ideal.generators(), &[mono(&[0, 2]), mono(&[1, 1]), mono(&[2, 0])]);
    }

    #[test]
    fn resolution_ranks_of_one_apex() {
        let c = complex_of(&[TropicalPoint::from_ints(&[0, 0])], DEFAULT_CAP).unwrap();
        assert_eq!(resolution_ranks(&c), vec![2, 1]);
    }

    #[test]
    fn uniform_ideals_are_minimal() {
        for (k, m) in [(2, 3), (2, 4), (3, 4), (1, 3)] {
            assert!(is_minimal_generating(&ideal_generators(&uniform(k, m).unwrap())));
        }
    }
}
