//! Cell-by-cell comparison of the combinatorial embedding count with the
//! kernel dimension: for each grade n (and optionally each h-weight) the
//! left side sums N(pi) over enumerated partitions of fixed length, the
//! right side is dim Q(n) computed from the kernel of the contraction, and
//! the middle quantity re-sums N over the observed leading terms. Equality
//! of the outer quantities is the rank condition that guarantees relations
//! among relations at that cell.

use crate::liealg::Algebra;
use crate::partitions::{self, ColoredPartition, Window};
use crate::verma::{relation_leading_terms, RbCache};
use crate::voa::{self, kernel_q, q_of_n, RelationBasis, Relations};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equality,
    StrictInequality,
    HypothesisFailed,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct RankCell {
    pub n: i64,
    pub ell: usize,
    pub mu: Option<Vec<i64>>,
    pub window: Window,
    /// sum of N(pi) over all enumerated partitions of length ell
    pub lhs: usize,
    /// sum of N(pi) over the observed leading terms only
    pub middle: usize,
    /// dim Q(n) at this cell
    pub rhs: usize,
    pub hypothesis_ok: bool,
    pub verdict: Verdict,
    /// leading terms with their multiplicities, for reports
    pub leading_terms: Vec<(String, usize)>,
}

#[derive(Debug, thiserror::Error)]
pub enum RankError {
    #[error("window instability at n={n} mu={mu:?}: {detail}")]
    WindowInstability {
        n: i64,
        mu: Option<Vec<i64>>,
        detail: String,
    },
    #[error("internal invariant violated at n={n} mu={mu:?}: {detail}")]
    Invariant {
        n: i64,
        mu: Option<Vec<i64>>,
        detail: String,
    },
    #[error(transparent)]
    Voa(#[from] voa::VoaError),
    #[error(transparent)]
    Verma(#[from] crate::verma::VermaError),
}

/// Truncation window derived from an all-negative enumeration window: the
/// coefficient computations need nonnegative part degrees as well.
pub fn trunc_window(enum_window: Window) -> Window {
    Window::new(enum_window.dmin, (-enum_window.dmin).max(1))
}

/// Left side of the rank condition.
pub fn lhs_count(
    alg: &Algebra,
    ell: usize,
    n: i64,
    mu: Option<&[i64]>,
    enum_window: Window,
    leading: &[ColoredPartition],
) -> usize {
    partitions::enumerate(alg, ell, n, enum_window, mu)
        .iter()
        .map(|pi| partitions::count_n(pi, leading))
        .sum()
}

fn rank_check_at(
    alg: &Algebra,
    rel: &Relations,
    ell: usize,
    n: i64,
    mu: Option<&[i64]>,
    enum_window: Window,
    trunc: Window,
    rb_cache: &mut BTreeMap<i64, RelationBasis>,
) -> Result<RankCell, RankError> {
    let mut vcache = RbCache::new();
    let leading = relation_leading_terms(alg, rel, enum_window, trunc, &mut vcache)?;
    let lhs = lhs_count(alg, ell, n, mu, enum_window, &leading);

    let kers = kernel_q(alg, rel, ell, -n, mu)?;
    let mut seqs = Vec::new();
    for q in &kers {
        seqs.push(q_of_n(alg, rel, q, n, trunc, rb_cache)?);
    }
    let summary = voa::analyze_qn(&seqs, ell);
    let rhs = summary.dim;

    // Leading terms must live inside the enumerated cell for the
    // comparison to mean anything; treat escapes like a failed hypothesis.
    let in_cell = summary
        .mults
        .iter()
        .all(|(pi, _)| enum_window.admits(pi) && pi.parts().iter().all(|p| p.degree <= -1));
    let hypothesis_ok = summary.hypothesis_ok && in_cell;
    let middle: usize = summary
        .mults
        .iter()
        .map(|(pi, _)| partitions::count_n(pi, &leading))
        .sum();

    if hypothesis_ok {
        if !(lhs >= middle && middle >= rhs) {
            return Err(RankError::Invariant {
                n,
                mu: mu.map(|m| m.to_vec()),
                detail: format!("expected lhs >= middle >= rhs, got {lhs} / {middle} / {rhs}"),
            });
        }
    }
    let verdict = if !hypothesis_ok {
        Verdict::HypothesisFailed
    } else if lhs == rhs {
        Verdict::Equality
    } else {
        Verdict::StrictInequality
    };
    Ok(RankCell {
        n,
        ell,
        mu: mu.map(|m| m.to_vec()),
        window: enum_window,
        lhs,
        middle,
        rhs,
        hypothesis_ok,
        verdict,
        leading_terms: summary
            .mults
            .iter()
            .map(|(pi, m)| (pi.display(alg), *m))
            .collect(),
    })
}

/// One certified cell: computed at the given window and at the doubled
/// window; the counts and verdict must agree.
pub fn rank_check(
    alg: &Algebra,
    rel: &Relations,
    ell: usize,
    n: i64,
    mu: Option<&[i64]>,
    enum_window: Window,
    certify: bool,
) -> Result<RankCell, RankError> {
    let mut cache = BTreeMap::new();
    let cell = rank_check_at(
        alg,
        rel,
        ell,
        n,
        mu,
        enum_window,
        trunc_window(enum_window),
        &mut cache,
    )?;
    if certify {
        let mut cache2 = BTreeMap::new();
        let wide = rank_check_at(
            alg,
            rel,
            ell,
            n,
            mu,
            enum_window.doubled(),
            trunc_window(enum_window).doubled(),
            &mut cache2,
        )?;
        if (wide.lhs, wide.rhs, wide.hypothesis_ok, wide.verdict)
            != (cell.lhs, cell.rhs, cell.hypothesis_ok, cell.verdict)
        {
            return Err(RankError::WindowInstability {
                n,
                mu: mu.map(|m| m.to_vec()),
                detail: format!(
                    "window {} gives ({}, {}, {:?}), doubled gives ({}, {}, {:?})",
                    enum_window, cell.lhs, cell.rhs, cell.verdict, wide.lhs, wide.rhs, wide.verdict
                ),
            });
        }
    }
    Ok(cell)
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub ell: usize,
    /// grades to scan, e.g. -2..=-8
    pub grades: Vec<i64>,
    pub weight_refined: bool,
    pub window: Window,
    pub certify: bool,
}

/// Scan all requested cells in parallel; output ordered by (n, mu).
pub fn scan(alg: &Algebra, rel: &Relations, cfg: &ScanConfig) -> Result<Vec<RankCell>, RankError> {
    let mut cells: Vec<(i64, Option<Vec<i64>>)> = Vec::new();
    for &n in &cfg.grades {
        if cfg.weight_refined {
            let mut weights: Vec<Vec<i64>> =
                partitions::enumerate(alg, cfg.ell, n, cfg.window, None)
                    .iter()
                    .map(|pi| pi.weight(alg))
                    .collect();
            for q in kernel_q(alg, rel, cfg.ell, -n, None)? {
                weights.push(q.weight.clone());
            }
            weights.sort();
            weights.dedup();
            for mu in weights {
                cells.push((n, Some(mu)));
            }
        } else {
            cells.push((n, None));
        }
    }
    let mut out: Vec<RankCell> = cells
        .into_par_iter()
        .map(|(n, mu)| {
            rank_check(alg, rel, cfg.ell, n, mu.as_deref(), cfg.window, cfg.certify)
        })
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|a, b| (a.n, &a.mu).cmp(&(b.n, &b.mu)));
    Ok(out)
}
