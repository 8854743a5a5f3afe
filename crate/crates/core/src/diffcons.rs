//! Difference-constraint systems `x_b - x_a <= c` and `x_b - x_a < c` over exact
//! rationals.
//!
//! Strictness is handled symbolically: a strict bound `c` is the lexicographic
//! weight `(c, -1)`, i.e. `c - ε` for an infinitesimal `ε`. Feasibility is the
//! absence of a lexicographically negative cycle, found by Bellman–Ford from a
//! virtual source. The resulting potentials are turned into a concrete rational
//! point by choosing `ε` small enough that no slack constraint becomes tight.

use std::ops::Add;

use num_traits::{One, Zero};

use crate::minplus::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct LexWeight {
    pub value: Rational,
    /// Multiple of `ε`; `-1` per strict edge.
    pub eps: i64,
}

impl LexWeight {
    pub fn zero() -> Self {
        Self { value: Rational::zero(), eps: 0 }
    }
}

impl Add for &LexWeight {
    type Output = LexWeight;
    fn add(self, rhs: &LexWeight) -> LexWeight {
        LexWeight { value: &self.value + &rhs.value, eps: self.eps + rhs.eps }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct System {
    n: usize,
    /// `bound[a * n + b]`: tightest bound on `x_b - x_a`.
    bound: Vec<Option<LexWeight>>,
}

impl System {
    pub fn new(n: usize) -> Self {
        Self { n, bound: vec![None; n * n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Adds `x_b - x_a <= value` (or `<` when `strict`), 0-based nodes.
    pub fn add(&mut self, a: usize, b: usize, value: Rational, strict: bool) {
        let w = LexWeight { value, eps: if strict { -1 } else { 0 } };
        let slot = &mut self.bound[a * self.n + b];
        if slot.as_ref().is_none_or(|old| w < *old) {
            *slot = Some(w);
        }
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize, &LexWeight)> {
        self.bound
            .iter()
            .enumerate()
            .filter_map(move |(idx, w)| w.as_ref().map(|w| (idx / self.n, idx % self.n, w)))
    }

    /// Shortest lexicographic distances from a virtual source joined to every
    /// node by a zero edge, or `None` on a negative cycle.
    pub fn potentials(&self) -> Option<Vec<LexWeight>> {
        let mut dist = vec![LexWeight::zero(); self.n];
        for _ in 0..=self.n {
            let mut changed = false;
            for (a, b, w) in self.edges() {
                let cand = &dist[a] + w;
                if cand < dist[b] {
                    dist[b] = cand;
                    changed = true;
                }
            }
            if !changed {
                return Some(dist);
            }
        }
        None
    }

    pub fn is_feasible(&self) -> bool {
        self.potentials().is_some()
    }

    /// A rational point satisfying every constraint, strict ones strictly.
    pub fn witness(&self) -> Option<Vec<Rational>> {
        let dist = self.potentials()?;
        let mut eps = Rational::one();
        for (a, b, w) in self.edges() {
            let slack = &w.value - (&dist[b].value - &dist[a].value);
            let drift = dist[b].eps - dist[a].eps;
            if slack > Rational::zero() && drift > 0 {
                let limit = slack / rat(2 * drift);
                if limit < eps {
                    eps = limit;
                }
            }
        }
        let point: Vec<Rational> = dist.iter().map(|d| &d.value + &eps * rat(d.eps)).collect();
        debug_assert!(self.satisfied_by(&point));
        Some(point)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.edges().all(|(a, b, w)| {
            let diff = &x[b] - &x[a];
            if w.eps < 0 {
                diff < w.value
            } else {
                diff <= w.value
            }
        })
    }

    /// Treats every bound as non-strict and returns a point in the relative
    /// interior of the closed polyhedron together with its affine dimension
    /// (modulo the all-ones direction), or `None` if it is empty.
    pub fn relative_interior(&self) -> Option<(Vec<Rational>, usize)> {
        let n = self.n;
        let mut dist: Vec<Option<Rational>> = self
            .bound
            .iter()
            .map(|w| w.as_ref().map(|w| w.value.clone()))
            .collect();
        for a in 0..n {
            let d = &mut dist[a * n + a];
            if d.as_ref().is_none_or(|v| *v > Rational::zero()) {
                *d = Some(Rational::zero());
            }
        }
        for k in 0..n {
            for a in 0..n {
                let Some(ak) = dist[a * n + k].clone() else { continue };
                for b in 0..n {
                    if let Some(kb) = &dist[k * n + b] {
                        let cand = &ak + kb;
                        let slot = &mut dist[a * n + b];
                        if slot.as_ref().is_none_or(|v| cand < *v) {
                            *slot = Some(cand);
                        }
                    }
                }
            }
        }
        if (0..n).any(|a| dist[a * n + a].as_ref().is_some_and(|v| *v < Rational::zero())) {
            return None;
        }
        // Nodes whose difference is pinned by a zero-weight cycle form one class.
        let mut class = vec![usize::MAX; n];
        let mut classes = 0;
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            for b in a..n {
                let pinned = match (&dist[a * n + b], &dist[b * n + a]) {
                    (Some(x), Some(y)) => (x + y).is_zero(),
                    _ => false,
                };
                if pinned {
                    class[b] = classes;
                }
            }
            classes += 1;
        }
        let mut lex = System::new(n);
        for (a, b, w) in self.edges() {
            lex.add(a, b, w.value.clone(), class[a] != class[b]);
        }
        let point = lex.witness()?;
        Some((point, classes - 1))
    }
}
