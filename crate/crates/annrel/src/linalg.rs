//! Dense exact linear algebra over the rationals: row reduction, rank,
//! kernels and span membership. Matrices are small (desk scale), so a
//! straightforward fraction-pivot Gaussian elimination is enough.

use crate::rat::Rat;
use num::Zero;

#[derive(Debug, Clone)]
pub struct RowEchelon {
    /// Reduced rows, each with its pivot column.
    pub rows: Vec<(usize, Vec<Rat>)>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

/// Reduced row echelon form; columns are eliminated left to right.
pub fn row_echelon(mut rows: Vec<Vec<Rat>>) -> RowEchelon {
    let mut out: Vec<(usize, Vec<Rat>)> = Vec::new();
    for row in rows.drain(..) {
        let mut row = row;
        reduce_against(&mut row, &out);
        if let Some(p) = first_nonzero(&row) {
            let inv = row[p].clone();
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &inv;
                }
            }
            for (_, r) in out.iter_mut() {
                let c = r[p].clone();
                if !c.is_zero() {
                    for (a, b) in r.iter_mut().zip(row.iter()) {
                        *a -= &c * b;
                    }
                }
            }
            let pos = out.partition_point(|(q, _)| *q < p);
            out.insert(pos, (p, row));
        }
    }
    RowEchelon { rows: out }
}

fn first_nonzero(row: &[Rat]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn reduce_against(row: &mut [Rat], basis: &[(usize, Vec<Rat>)]) {
    for (p, r) in basis {
        let c = row[*p].clone();
        if !c.is_zero() {
            for (a, b) in row.iter_mut().zip(r.iter()) {
                *a -= &c * b;
            }
        }
    }
}

pub fn rank(rows: Vec<Vec<Rat>>) -> usize {
    row_echelon(rows).rank()
}

/// Basis of the (left) kernel of the linear map sending the i-th standard
/// basis vector to `rows[i]`: all rational combinations of the rows that
/// vanish. Returned as coefficient vectors over the rows.
pub fn kernel(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let m = rows[0].len();
    // Augment each row with an identity block and reduce on the image part.
    let mut out: Vec<(Option<usize>, Vec<Rat>)> = Vec::new();
    let mut kernel_rows = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut aug: Vec<Rat> = row.clone();
        aug.extend((0..n).map(|j| if j == i { num::One::one() } else { Rat::zero() }));
        for (p, r) in &out {
            if let Some(p) = p {
                let c = aug[*p].clone();
                if !c.is_zero() {
                    for (a, b) in aug.iter_mut().zip(r.iter()) {
                        *a -= &c * b;
                    }
                }
            }
        }
        match aug[..m].iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = aug[p].clone();
                for x in aug.iter_mut() {
                    if !x.is_zero() {
                        *x = &*x / &inv;
                    }
                }
                out.push((Some(p), aug));
            }
            None => kernel_rows.push(aug[m..].to_vec()),
        }
    }
    kernel_rows
}

/// Solve `sum_i x_i rows[i] = target` exactly. Returns the coefficients if
/// the target lies in the row span.
pub fn express_in_span(rows: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = rows.len();
    let m = target.len();
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut aug: Vec<Rat> = row.clone();
        aug.extend((0..n).map(|j| if j == i { num::One::one() } else { Rat::zero() }));
        for (p, r) in &basis {
            let c = aug[*p].clone();
            if !c.is_zero() {
                for (a, b) in aug.iter_mut().zip(r.iter()) {
                    *a -= &c * b;
                }
            }
        }
        if let Some(p) = aug[..m].iter().position(|x| !x.is_zero()) {
            let inv = aug[p].clone();
            for x in aug.iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &inv;
                }
            }
            basis.push((p, aug));
        }
    }
    let mut t: Vec<Rat> = target.to_vec();
    t.extend((0..n).map(|_| Rat::zero()));
    for (p, r) in &basis {
        let c = t[*p].clone();
        if !c.is_zero() {
            for (a, b) in t.iter_mut().zip(r.iter()) {
                *a -= &c * b;
            }
        }
    }
    if t[..m].iter().all(|x| x.is_zero()) {
        Some(t[m..].iter().map(|x| -x).collect())
    } else {
        None
    }
}

/// Invert a square matrix; panics on singular input (callers pass Gram
/// matrices that are invertible by construction).
pub fn invert(mat: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = mat.len();
    let mut rows: Vec<Vec<Rat>> = mat
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if j == i { num::One::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .expect("singular matrix");
        rows.swap(col, piv);
        let inv = rows[col][col].clone();
        for x in rows[col].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &inv;
            }
        }
        for r in 0..n {
            if r != col {
                let c = rows[r][col].clone();
                if !c.is_zero() {
                    let src = rows[col].clone();
                    for (a, b) in rows[r].iter_mut().zip(src.iter()) {
                        *a -= &c * b;
                    }
                }
            }
        }
    }
    rows.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(rows.clone()), 2);
        let ker = kernel(&rows);
        assert_eq!(ker.len(), 1);
        // The kernel vector recombines the rows to zero.
        let k = &ker[0];
        for col in 0..3 {
            let mut s = Rat::zero();
            for (i, row) in rows.iter().enumerate() {
                s += &k[i] * &row[col];
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn express_and_invert() {
        let rows = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = express_in_span(&rows, &v(&[2, 3, 5])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(express_in_span(&rows, &v(&[0, 0, 1])).is_none());

        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = invert(&m);
        assert_eq!(inv[0], v(&[1, -1]));
        assert_eq!(inv[1], v(&[-1, 2]));
    }
}
