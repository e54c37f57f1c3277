//! Central characters modulo a prime by simultaneous diagonalization of the
//! class matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{charpoly, mat_vec, nullspace, rref, Matrix};
use crate::error::{Error, Result};
use crate::modpoly::PrimeField;

const SPLIT_SEED: u64 = 0xd1c0_5c4e;
const ROOT_SEED: u64 = 0x0007_2007;
const RANDOM_ATTEMPTS: usize = 64;

/// A subspace given by a basis in reduced echelon form.
struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_rows(f: &PrimeField, mut rows: Matrix) -> Self {
        let pivots = rref(f, &mut rows);
        Subspace { basis: rows, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The matrix of `a` restricted to this (invariant) subspace, in the
    /// coordinates of the echelon basis.
    fn restrict(&self, f: &PrimeField, a: &Matrix) -> Matrix {
        let m = self.dim();
        let images: Vec<Vec<u64>> = self.basis.iter().map(|b| mat_vec(f, a, b)).collect();
        (0..m)
            .map(|row| (0..m).map(|col| images[col][self.pivots[row]]).collect())
            .collect()
    }

    /// Splits into eigenspaces of `a`; `None` if `a` is scalar here.
    fn split(&self, f: &PrimeField, a: &Matrix) -> Result<Option<Vec<Subspace>>> {
        let b = self.restrict(f, a);
        let cp = charpoly(f, &b);
        let roots = f.roots(&cp, ROOT_SEED);
        if roots.len() == 1 {
            return Ok(None);
        }
        let m = self.dim();
        let mut parts = Vec::with_capacity(roots.len());
        let mut total = 0;
        for lambda in roots {
            let shifted: Matrix = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| if i == j { f.sub(b[i][j], lambda) } else { b[i][j] })
                        .collect()
                })
                .collect();
            let coords = nullspace(f, &shifted);
            total += coords.len();
            let vectors: Matrix = coords
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.basis[0].len()];
                    for (coef, row) in c.iter().zip(&self.basis) {
                        for (x, &y) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(*coef, y));
                        }
                    }
                    v
                })
                .collect();
            parts.push(Subspace::from_rows(f, vectors));
        }
        if total != m {
            return Err(Error::verification(
                "class matrix is not diagonalizable over the chosen field",
            ));
        }
        Ok(Some(parts))
    }
}

/// Common eigenvectors of the class matrices `mats` over `F_ℓ`, each scaled
/// so its identity-class entry is 1.
///
/// Spaces are split by each class matrix in turn, then by random linear
/// combinations from a fixed seed if any space is still not one-dimensional.
pub(crate) fn central_characters_mod(f: &PrimeField, mats: &[Matrix]) -> Result<Vec<Vec<u64>>> {
    let r = mats.len();
    let identity: Matrix = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![Subspace::from_rows(f, identity)];
    for a in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(r);
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
                continue;
            }
            match s.split(f, a)? {
                Some(parts) => next.extend(parts),
                None => next.push(s),
            }
        }
        spaces = next;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut attempts = 0;
    while spaces.iter().any(|s| s.dim() > 1) {
        if attempts == RANDOM_ATTEMPTS {
            return Err(Error::verification("eigenspaces could not be separated"));
        }
        attempts += 1;
        let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..f.modulus())).collect();
        let mut combo = vec![vec![0u64; r]; r];
        for (a, &c) in mats.iter().zip(&coeffs) {
            for (crow, arow) in combo.iter_mut().zip(a) {
                for (x, &y) in crow.iter_mut().zip(arow) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        let mut next = Vec::with_capacity(r);
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
                continue;
            }
            match s.split(f, &combo)? {
                Some(parts) => next.extend(parts),
                None => next.push(s),
            }
        }
        spaces = next;
    }

    let mut out: Vec<Vec<u64>> = Vec::with_capacity(r);
    for s in spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(Error::verification("central character vanishes on the identity"));
        }
        let inv = f.inv(v[0]);
        out.push(v.iter().map(|&x| f.mul(x, inv)).collect());
    }
    // Each vector must satisfy A_i ω = ω_i ω.
    for w in &out {
        for (i, a) in mats.iter().enumerate() {
            let aw = mat_vec(f, a, w);
            if aw.iter().zip(w).any(|(&x, &y)| x != f.mul(w[i], y)) {
                return Err(Error::verification("eigenvector check failed"));
            }
        }
    }
    Ok(out)
}
