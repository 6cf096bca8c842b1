//! Smith normal form over the integers with transformation matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone)]
pub struct Snf {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
    u_inv: Matrix,
    v_inv: Matrix,
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for (k, x) in row.iter().enumerate().take(inner) {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s += x * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
    rows: usize,
    cols: usize,
}

impl Work {
    /// row_i += q·row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let x = &self.a[j][c] * q;
            self.a[i][c] += x;
        }
        for c in 0..self.rows {
            let x = &self.u[j][c] * q;
            self.u[i][c] += x;
        }
        // Inverse: column j -= q·column i.
        for r in 0..self.rows {
            let x = &self.u_inv[r][i] * q;
            self.u_inv[r][j] -= x;
        }
    }

    /// col_i += q·col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let x = &self.a[r][j] * q;
            self.a[r][i] += x;
        }
        for r in 0..self.cols {
            let x = &self.v[r][j] * q;
            self.v[r][i] += x;
        }
        for c in 0..self.cols {
            let x = &self.v_inv[i][c] * q;
            self.v_inv[j][c] -= x;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for r in self.u_inv.iter_mut() {
            r.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for r in self.v.iter_mut() {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for r in self.u_inv.iter_mut() {
            r[i] = -&r[i];
        }
    }
}

/// Computes `U·A·V = D` and checks the identity and the inverses exactly.
pub fn smith_normal_form(a: &Matrix, rows: usize, cols: usize) -> Snf {
    let mut w = Work {
        a: a.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.a[i][j].is_zero() && best.map_or(true, |(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let p = w.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = -w.a[i][t].div_floor(&p);
                    w.add_row(i, t, &q);
                    dirty |= !w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = -w.a[t][j].div_floor(&p);
                    w.add_col(j, t, &q);
                    dirty |= !w.a[t][j].is_zero();
                }
            }
            if dirty {
                // A smaller remainder exists in row or column t: move it to the pivot.
                let mut best = (t, t);
                for i in t..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Pivot must divide the rest of the block.
            let mut bad = None;
            'find: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&w.a[i][j] % &p).is_zero() {
                        bad = Some(i);
                        break 'find;
                    }
                }
            }
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).filter(|x| !x.is_zero()).collect();
    let snf = Snf { diagonal, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv };
    snf.verify(a, rows, cols);
    snf
}

impl Snf {
    fn verify(&self, a: &Matrix, rows: usize, cols: usize) {
        let ua = mul(&self.u, a, rows, cols);
        let d = mul(&ua, &self.v, cols, cols);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j && i < self.diagonal.len() { self.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, expect, "Smith normal form check failed at ({i}, {j})");
            }
        }
        assert_eq!(mul(&self.u, &self.u_inv, rows, rows), identity(rows), "U is not unimodular");
        assert_eq!(mul(&self.v, &self.v_inv, cols, cols), identity(cols), "V is not unimodular");
        for w in self.diagonal.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "invariant factors do not divide");
        }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}
