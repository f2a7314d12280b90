//! Exact structure data for the simple Lie algebras sl(n), realized by
//! traceless rational matrices. Structure constants come from matrix
//! commutators, the invariant form is the trace form (so that the maximal
//! root has squared length 2), and dual bases are solved for exactly.

use crate::linalg;
use crate::rat::Rat;
use num::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Rational linear combination of basis labels, indexed by basis position.
pub type LinComb = BTreeMap<usize, Rat>;

pub fn lincomb_single(idx: usize) -> LinComb {
    let mut m = LinComb::new();
    m.insert(idx, Rat::one());
    m
}

pub fn lincomb_add(acc: &mut LinComb, idx: usize, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(idx).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&idx);
    }
}

type Matrix = Vec<Vec<Rat>>;

/// A fixed basis of a simple Lie algebra together with precomputed tables:
/// brackets, the invariant form, root data and dual bases.
///
/// Basis order: sorted by root height, most negative first, with the Cartan
/// elements `h1..h{n-1}` at height zero between the lowering and raising
/// root vectors `E{i}{j}`; ties broken by matrix position. This order is
/// what the colored-partition order sees as the color index, and the rank
/// comparisons are sensitive to it: with lowering vectors below the Cartan
/// the observed leading terms of the kernel match the embedding counts.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub name: String,
    pub n: usize,
    pub rank: usize,
    pub labels: Vec<String>,
    matrices: Vec<Matrix>,
    bracket_table: Vec<Vec<LinComb>>,
    form_table: Vec<Vec<Rat>>,
    /// h-weight of each basis element: values of the root on h_1..h_rank.
    pub weights: Vec<Vec<i64>>,
    pub theta: usize,
    pub dual_coxeter: i64,
    dual_of: Vec<LinComb>,
    /// Root height per basis element (0 for Cartan).
    pub heights: Vec<i64>,
    /// Basis indices of h1..h{rank} in order.
    pub cartan: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("sl(n) requires n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("unknown algebra type `{0}` (expected sl2, sl3, ...)")]
    UnknownType(String),
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn bracket_basis(&self, x: usize, y: usize) -> &LinComb {
        &self.bracket_table[x][y]
    }

    /// Bilinear extension of the bracket table.
    pub fn bracket(&self, x: &LinComb, y: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (&i, a) in x {
            for (&j, b) in y {
                for (&t, c) in &self.bracket_table[i][j] {
                    lincomb_add(&mut out, t, a * b * c);
                }
            }
        }
        out
    }

    pub fn form(&self, x: usize, y: usize) -> &Rat {
        &self.form_table[x][y]
    }

    pub fn dual_of(&self, x: usize) -> &LinComb {
        &self.dual_of[x]
    }

    pub fn is_cartan(&self, x: usize) -> bool {
        // Only the Cartan elements sit at height zero; in type A every root
        // has height j - i != 0.
        self.heights[x] == 0
    }

    /// True for root vectors attached to positive roots.
    pub fn is_raising(&self, x: usize) -> bool {
        self.heights[x] > 0
    }

    pub fn matrix(&self, x: usize) -> &Matrix {
        &self.matrices[x]
    }

    /// Expand a traceless matrix in the fixed basis.
    pub fn matrix_to_lincomb(&self, m: &Matrix) -> LinComb {
        let n = self.n;
        let mut out = LinComb::new();
        // Off-diagonal entries map to elementary root vectors.
        for (idx, label_mat) in self.matrices.iter().enumerate() {
            if self.is_cartan(idx) {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    if !label_mat[i][j].is_zero() {
                        lincomb_add(&mut out, idx, m[i][j].clone());
                    }
                }
            }
        }
        // Diagonal part: diag(d) = sum_i (d_1 + ... + d_i) h_i.
        let mut partial = Rat::zero();
        for i in 0..self.rank {
            partial += &m[i][i];
            lincomb_add(&mut out, self.cartan[i], partial.clone());
        }
        out
    }

    pub fn weight_of_lincomb(&self, x: &LinComb) -> Option<Vec<i64>> {
        let mut w: Option<Vec<i64>> = None;
        for (&i, _) in x {
            match &w {
                None => w = Some(self.weights[i].clone()),
                Some(prev) if *prev == self.weights[i] => {}
                _ => return None,
            }
        }
        w
    }
}

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Rat::zero(); n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    let prod = &a[i][k] * &b[k][j];
                    out[i][j] += prod;
                }
            }
        }
    }
    out
}

fn mat_commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = &ab[i][j] - &ba[i][j];
        }
    }
    out
}

fn mat_trace_product(a: &Matrix, b: &Matrix) -> Rat {
    let n = a.len();
    let mut t = Rat::zero();
    for i in 0..n {
        for k in 0..n {
            t += &a[i][k] * &b[k][i];
        }
    }
    t
}

/// Build sl(n, Q) with the elementary-matrix basis.
pub fn build_sl(n: usize) -> Result<Algebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::RankTooSmall(n));
    }
    let rank = n - 1;
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    let mut heights = Vec::new();
    let mut cartan = Vec::new();

    // Lowering root vectors E_{ij}, i > j, sorted by height j - i then (i, j),
    // then the Cartan elements at height zero, then the raising root vectors.
    let mut roots: Vec<(i64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                roots.push((j as i64 - i as i64, i, j));
            }
        }
    }
    roots.sort();
    for (h, i, j) in roots.iter().copied().filter(|r| r.0 < 0) {
        labels.push(format!("E{}{}", i + 1, j + 1));
        let mut m = zero_matrix(n);
        m[i][j] = Rat::one();
        matrices.push(m);
        heights.push(h);
    }
    for i in 0..rank {
        cartan.push(labels.len());
        labels.push(format!("h{}", i + 1));
        let mut m = zero_matrix(n);
        m[i][i] = Rat::one();
        m[i + 1][i + 1] = -Rat::one();
        matrices.push(m);
        heights.push(0);
    }
    for (h, i, j) in roots.iter().copied().filter(|r| r.0 > 0) {
        labels.push(format!("E{}{}", i + 1, j + 1));
        let mut m = zero_matrix(n);
        m[i][j] = Rat::one();
        matrices.push(m);
        heights.push(h);
    }

    let dim = labels.len();
    let mut weights = Vec::with_capacity(dim);
    for m in &matrices {
        // [h_i, x] = (m_{ii'} diag pairing) x for root vectors; 0 for Cartan.
        let mut w = vec![0i64; rank];
        for (a, row) in m.iter().enumerate() {
            for (b, entry) in row.iter().enumerate() {
                if a != b && !entry.is_zero() {
                    for i in 0..rank {
                        let di = |t: usize| -> i64 {
                            if t == i {
                                1
                            } else if t == i + 1 {
                                -1
                            } else {
                                0
                            }
                        };
                        w[i] = di(a) - di(b);
                    }
                }
            }
        }
        weights.push(w);
    }

    let mut algebra = Algebra {
        name: format!("sl{}", n),
        n,
        rank,
        labels,
        matrices,
        bracket_table: Vec::new(),
        form_table: Vec::new(),
        weights,
        theta: 0,
        dual_coxeter: n as i64,
        dual_of: Vec::new(),
        heights,
        cartan,
    };

    algebra.theta = algebra
        .labels
        .iter()
        .position(|l| l == &format!("E1{}", n))
        .expect("theta vector present");

    let mut bracket_table = Vec::with_capacity(dim);
    let mut form_table = Vec::with_capacity(dim);
    for x in 0..dim {
        let mut brow = Vec::with_capacity(dim);
        let mut frow = Vec::with_capacity(dim);
        for y in 0..dim {
            let comm = mat_commutator(&algebra.matrices[x], &algebra.matrices[y]);
            brow.push(algebra.matrix_to_lincomb(&comm));
            frow.push(mat_trace_product(&algebra.matrices[x], &algebra.matrices[y]));
        }
        bracket_table.push(brow);
        form_table.push(frow);
    }
    algebra.bracket_table = bracket_table;
    algebra.form_table = form_table;

    // Dual basis: solve <x, y*> = delta exactly against the Gram matrix.
    let gram: Vec<Vec<Rat>> = (0..dim)
        .map(|i| (0..dim).map(|j| algebra.form_table[i][j].clone()).collect())
        .collect();
    let inv = linalg::invert(&gram);
    let mut dual_of = Vec::with_capacity(dim);
    for col in inv {
        let mut lc = LinComb::new();
        for (j, c) in col.into_iter().enumerate() {
            lincomb_add(&mut lc, j, c);
        }
        dual_of.push(lc);
    }
    algebra.dual_of = dual_of;

    Ok(algebra)
}

/// Parse "sl2", "sl3", ... into an algebra.
pub fn build_by_name(name: &str) -> Result<Algebra, AlgebraError> {
    let rest = name
        .strip_prefix("sl")
        .ok_or_else(|| AlgebraError::UnknownType(name.to_string()))?;
    let n: usize = rest
        .parse()
        .map_err(|_| AlgebraError::UnknownType(name.to_string()))?;
    build_sl(n)
}

/// Machine-readable summary for `algebra info`.
#[derive(Serialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub dimension: usize,
    pub rank: usize,
    pub labels: Vec<String>,
    pub theta: String,
    pub dual_coxeter: i64,
    pub form_matrix: Vec<Vec<String>>,
}

impl From<&Algebra> for AlgebraInfo {
    fn from(a: &Algebra) -> Self {
        AlgebraInfo {
            name: a.name.clone(),
            dimension: a.dim(),
            rank: a.rank,
            labels: a.labels.clone(),
            theta: a.labels[a.theta].clone(),
            dual_coxeter: a.dual_coxeter,
            form_matrix: (0..a.dim())
                .map(|i| {
                    (0..a.dim())
                        .map(|j| crate::rat::format_rat(a.form(i, j)))
                        .collect()
                })
                .collect(),
        }
    }
}
