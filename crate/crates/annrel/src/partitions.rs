//! Colored partitions and the linear order on them.
//!
//! A part is a basis color at an integer degree; a colored partition is a
//! finite multiset of parts, stored sorted ascending. The comparator fixes
//! one concrete order satisfying the five axioms: longer partitions are
//! smaller; among equal lengths smaller total degree is smaller; among equal
//! length and degree the descending part lists are compared position by
//! position, a part being ordered by degree then color index.

use crate::liealg::Algebra;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub const COMPARATOR_NAME: &str = "length-degree-revlex";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Part {
    pub degree: i64,
    pub color: u32,
}

impl Part {
    pub fn new(color: u32, degree: i64) -> Self {
        Part { degree, color }
    }
}

/// A colored partition; parts are kept sorted ascending by (degree, color).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPartition {
    parts: Vec<Part>,
}

impl ColoredPartition {
    pub fn empty() -> Self {
        ColoredPartition { parts: Vec::new() }
    }

    pub fn from_parts(mut parts: Vec<Part>) -> Self {
        parts.sort();
        ColoredPartition { parts }
    }

    pub fn single(p: Part) -> Self {
        ColoredPartition { parts: vec![p] }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().map(|p| p.degree).sum()
    }

    pub fn weight(&self, alg: &Algebra) -> Vec<i64> {
        let mut w = vec![0i64; alg.rank];
        for p in &self.parts {
            for (i, x) in alg.weights[p.color as usize].iter().enumerate() {
                w[i] += x;
            }
        }
        w
    }

    /// Multiset union.
    pub fn product(&self, other: &ColoredPartition) -> ColoredPartition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        ColoredPartition::from_parts(parts)
    }

    /// Multiset containment.
    pub fn contains(&self, other: &ColoredPartition) -> bool {
        let mut it = self.parts.iter();
        'outer: for p in &other.parts {
            for q in it.by_ref() {
                match q.cmp(p) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// Multiset difference; `rho` must embed in `self`.
    pub fn quotient(&self, rho: &ColoredPartition) -> Option<ColoredPartition> {
        let mut remaining = self.parts.clone();
        for p in &rho.parts {
            let pos = remaining.iter().position(|q| q == p)?;
            remaining.remove(pos);
        }
        Some(ColoredPartition { parts: remaining })
    }

    pub fn display(&self, alg: &Algebra) -> String {
        if self.parts.is_empty() {
            return "1".to_string();
        }
        self.parts
            .iter()
            .map(|p| format!("{}({})", alg.labels[p.color as usize], p.degree))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let s = self
            .parts
            .iter()
            .map(|p| format!("c{}({})", p.color, p.degree))
            .collect::<Vec<_>>()
            .join(" ");
        write!(f, "{}", s)
    }
}

impl Ord for ColoredPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        // Longer is smaller.
        other
            .parts
            .len()
            .cmp(&self.parts.len())
            // Among equal lengths, smaller degree is smaller.
            .then_with(|| self.degree().cmp(&other.degree()))
            // Descending part lists compared from the largest part down.
            .then_with(|| {
                for (a, b) in self.parts.iter().rev().zip(other.parts.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for ColoredPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A window of admissible part degrees, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub dmin: i64,
    pub dmax: i64,
}

impl Window {
    pub fn new(dmin: i64, dmax: i64) -> Self {
        assert!(dmin <= dmax, "empty window");
        Window { dmin, dmax }
    }

    pub fn contains(&self, d: i64) -> bool {
        self.dmin <= d && d <= self.dmax
    }

    pub fn admits(&self, pi: &ColoredPartition) -> bool {
        pi.parts().iter().all(|p| self.contains(p.degree))
    }

    /// Enlarged window used for stability certification.
    pub fn doubled(&self) -> Window {
        Window {
            dmin: 2 * self.dmin - 1,
            dmax: if self.dmax <= 0 { self.dmax } else { 2 * self.dmax + 1 },
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dmin, self.dmax)
    }
}

/// All colored partitions of the given length and degree with part degrees
/// inside the window, optionally restricted to one h-weight; sorted.
pub fn enumerate(
    alg: &Algebra,
    length: usize,
    degree: i64,
    window: Window,
    weight: Option<&[i64]>,
) -> Vec<ColoredPartition> {
    let mut universe: Vec<Part> = Vec::new();
    for d in window.dmin..=window.dmax {
        for c in 0..alg.dim() as u32 {
            universe.push(Part::new(c, d));
        }
    }
    universe.sort();
    let mut out = Vec::new();
    let mut current: Vec<Part> = Vec::new();
    enumerate_rec(&universe, 0, length, degree, window, &mut current, &mut out);
    if let Some(mu) = weight {
        out.retain(|pi| pi.weight(alg) == mu);
    }
    out.sort();
    out
}

fn enumerate_rec(
    universe: &[Part],
    start: usize,
    remaining_len: usize,
    remaining_deg: i64,
    window: Window,
    current: &mut Vec<Part>,
    out: &mut Vec<ColoredPartition>,
) {
    if remaining_len == 0 {
        if remaining_deg == 0 {
            out.push(ColoredPartition {
                parts: current.clone(),
            });
        }
        return;
    }
    let r = remaining_len as i64;
    for i in start..universe.len() {
        let p = universe[i];
        // Parts are chosen nondecreasing, so all later degrees are >= p.degree.
        if remaining_deg < r * p.degree {
            // Degrees only grow along the universe; nothing later can fit.
            if p.degree * r > remaining_deg && universe[i..].iter().all(|q| q.degree >= p.degree) {
                break;
            }
            continue;
        }
        if remaining_deg > p.degree + (r - 1) * window.dmax {
            continue;
        }
        current.push(p);
        enumerate_rec(universe, i, remaining_len - 1, remaining_deg - p.degree, window, current, out);
        current.pop();
    }
}

/// The embedding set: elements of `leading_terms` whose parts form a
/// sub-multiset of `pi`.
pub fn embeddings<'a>(
    pi: &ColoredPartition,
    leading_terms: &'a [ColoredPartition],
) -> Vec<&'a ColoredPartition> {
    leading_terms.iter().filter(|rho| pi.contains(rho)).collect()
}

/// N(pi) = max(#E(pi) - 1, 0).
pub fn count_n(pi: &ColoredPartition, leading_terms: &[ColoredPartition]) -> usize {
    embeddings(pi, leading_terms).len().saturating_sub(1)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OrderCheckReport {
    pub comparator: String,
    pub population: usize,
    pub pair_comparisons: usize,
    pub multiplicativity_checks: usize,
    pub ok: bool,
}

/// Verify the order axioms on the finite family of partitions with length
/// at most `max_len` and part degrees in the window.
///
/// Pair comparisons against the sorted ranking establish totality,
/// antisymmetry and transitivity at once; the length, degree and
/// largest-part axioms are checked on the same pairs. Multiplicativity
/// (mu <= nu implies pi mu <= pi nu) is checked exhaustively with the two
/// factors bounded by `mult_len` to keep the triple loop affordable.
pub fn check_order_axioms(
    alg: &Algebra,
    max_len: usize,
    window: Window,
    mult_len: usize,
) -> Result<OrderCheckReport, String> {
    let mut all: Vec<ColoredPartition> = Vec::new();
    for len in 0..=max_len {
        for n in len as i64 * window.dmin..=len as i64 * window.dmax {
            all.extend(enumerate(alg, len, n, window, None));
        }
    }
    all.sort();
    all.dedup();
    let mut pairs = 0usize;
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            pairs += 1;
            // consistency with the sorted ranking: total order
            if a.cmp(b) != i.cmp(&j) {
                return Err(format!("ranking mismatch between {a} and {b}"));
            }
            // longer is smaller
            if a.len() > b.len() && a >= b {
                return Err(format!("length axiom fails for {a}, {b}"));
            }
            // equal length, smaller degree is smaller
            if a.len() == b.len() && a.degree() < b.degree() && a >= b {
                return Err(format!("degree axiom fails for {a}, {b}"));
            }
            // equal length and degree: the smaller has the smaller largest part
            if a.len() == b.len() && !a.is_empty() && a.degree() == b.degree() && a < b {
                let (la, lb) = (a.parts().last().unwrap(), b.parts().last().unwrap());
                if la > lb {
                    return Err(format!("largest-part axiom fails for {a}, {b}"));
                }
            }
        }
    }
    // minimal element: head of the sorted list is below everything, and is
    // recovered as the minimum no matter the input order
    if let Some(head) = all.first() {
        let min = all.iter().rev().min().unwrap();
        if min != head {
            return Err("minimum not stable under traversal order".to_string());
        }
    }
    let small: Vec<&ColoredPartition> = all.iter().filter(|p| p.len() <= mult_len).collect();
    let mut mults = 0usize;
    for &mu in &small {
        for &nu in &small {
            if mu > nu {
                continue;
            }
            for &pi in &small {
                mults += 1;
                if pi.product(mu) > pi.product(nu) {
                    return Err(format!("multiplicativity fails for {pi} * ({mu}, {nu})"));
                }
            }
        }
    }
    Ok(OrderCheckReport {
        comparator: COMPARATOR_NAME.to_string(),
        population: all.len(),
        pair_comparisons: pairs,
        multiplicativity_checks: mults,
        ok: true,
    })
}
