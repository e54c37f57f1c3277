//! Dense linear algebra over a prime field, sized for class matrices.

use crate::modpoly::{Poly, PrimeField};

pub(crate) type Matrix = Vec<Vec<u64>>;

/// Row-reduces `rows` in place to reduced echelon form; returns pivot columns.
pub(crate) fn rref(f: &PrimeField, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let sub = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for a square or rectangular `m`.
pub(crate) fn nullspace(f: &PrimeField, m: &Matrix) -> Matrix {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rows = m.clone();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - M)` via reduction to Hessenberg form.
pub(crate) fn charpoly(f: &PrimeField, m: &Matrix) -> Poly {
    let n = m.len();
    let mut h = m.clone();
    // Similarity transforms to upper Hessenberg form.
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let t = f.mul(h[i][c], inv);
            // row_i -= t row_{c+1}; then col_{c+1} += t col_i
            for j in 0..n {
                let sub = f.mul(t, h[c + 1][j]);
                h[i][j] = f.sub(h[i][j], sub);
            }
            for row in h.iter_mut() {
                let add = f.mul(t, row[i]);
                row[c + 1] = f.add(row[c + 1], add);
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Poly> = vec![vec![1]];
    for k in 0..n {
        let mut next = f.mul_poly(&polys[k], &f.normalize(vec![f.neg(h[k][k]), 1]));
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let coef = f.mul(prod, h[i][k]);
            next = f.sub_poly(&next, &f.scale(&polys[i], coef));
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub(crate) fn mat_vec(f: &PrimeField, m: &Matrix, v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}
