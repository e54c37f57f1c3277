//! Permutation models: projective actions of `SL_n(q)` and `Sp_2n(q)`, and
//! the symmetric, alternating and cyclic groups.

use std::collections::HashMap;

use super::gf::GaloisField;
use crate::error::{Error, Result};
use crate::permgroup::{Perm, PermutationGroup};

/// Normalized representatives of the 1-spaces of `GF(q)^d`.
struct ProjectiveSpace {
    field: GaloisField,
    dim: usize,
    points: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

impl ProjectiveSpace {
    fn new(field: GaloisField, dim: usize) -> Self {
        let q = field.order() as u32;
        let mut points = Vec::new();
        // First nonzero coordinate equal to one.
        for lead in 0..dim {
            let free = dim - lead - 1;
            for mut code in 0..(q as u64).pow(free as u32) {
                let mut v = vec![0u32; dim];
                v[lead] = 1;
                for slot in v.iter_mut().skip(lead + 1) {
                    *slot = (code % q as u64) as u32;
                    code /= q as u64;
                }
                points.push(v);
            }
        }
        points.sort();
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        ProjectiveSpace { field, dim, points, index }
    }

    fn normalize(&self, mut v: Vec<u32>) -> Vec<u32> {
        let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero vector");
        let s = self.field.inv(lead);
        v.iter_mut().for_each(|x| *x = self.field.mul(*x, s));
        v
    }

    /// The permutation induced by the linear map `f`.
    fn induced(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> Result<Perm> {
        let images = self
            .points
            .iter()
            .map(|v| self.index[&self.normalize(f(v))])
            .collect();
        Perm::from_images(images)
    }

    /// Row vector times matrix.
    fn apply_matrix(&self, v: &[u32], m: &[Vec<u32>]) -> Vec<u32> {
        (0..self.dim)
            .map(|j| (0..self.dim).fold(0, |acc, i| self.field.add(acc, self.field.mul(v[i], m[i][j]))))
            .collect()
    }
}

/// `PSL_n(q)` acting on the points of `PG(n−1, q)`, generated by the
/// elementary transvections `I + b·E_{i,i±1}` with `b` in an additive basis.
pub fn projective_linear_group(n: usize, q: u64) -> Result<PermutationGroup> {
    if n < 2 {
        return Err(Error::invalid("dimension must be at least 2"));
    }
    let space = ProjectiveSpace::new(GaloisField::new(q)?, n);
    let mut gens = Vec::new();
    for b in space.field.additive_basis() {
        for i in 0..n - 1 {
            for (r, c) in [(i, i + 1), (i + 1, i)] {
                let mut m: Vec<Vec<u32>> = (0..n).map(|a| (0..n).map(|z| (a == z) as u32).collect()).collect();
                m[r][c] = b;
                gens.push(space.induced(|v| space.apply_matrix(v, &m))?);
            }
        }
    }
    PermutationGroup::new(space.points.len(), gens)
}

/// `PSp_2n(q)` acting on the points of `PG(2n−1, q)`, generated by symplectic
/// transvections `x ↦ x + a·B(x, v)·v`.
pub fn projective_symplectic_group(n: usize, q: u64) -> Result<PermutationGroup> {
    if n < 1 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    let space = ProjectiveSpace::new(GaloisField::new(q)?, 2 * n);
    let k = &space.field;
    // Coordinates e_1..e_n, f_1..f_n.
    let form = |x: &[u32], y: &[u32]| {
        (0..n).fold(0, |acc, i| {
            let t = k.sub(k.mul(x[i], y[n + i]), k.mul(x[n + i], y[i]));
            k.add(acc, t)
        })
    };
    let unit = |i: usize| {
        let mut v = vec![0u32; 2 * n];
        v[i] = 1;
        v
    };
    let sum = |a: Vec<u32>, b: Vec<u32>| a.iter().zip(&b).map(|(x, y)| k.add(*x, *y)).collect::<Vec<u32>>();
    let mut directions: Vec<Vec<u32>> = (0..2 * n).map(unit).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                directions.push(sum(unit(i), unit(j)));
            }
            directions.push(sum(unit(i), unit(n + j)));
        }
    }
    let mut gens = Vec::new();
    for a in k.additive_basis() {
        for v in &directions {
            gens.push(space.induced(|x| {
                let c = k.mul(a, form(x, v));
                x.iter().zip(v).map(|(xi, vi)| k.add(*xi, k.mul(c, *vi))).collect()
            })?);
        }
    }
    PermutationGroup::new(space.points.len(), gens)
}

pub fn symmetric_group(n: usize) -> Result<PermutationGroup> {
    if n < 1 {
        return Err(Error::invalid("degree must be positive"));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[(1..=n as u32).collect()])?);
        gens.push(Perm::from_cycles(n, &[vec![1, 2]])?);
    }
    PermutationGroup::new(n, gens)
}

pub fn alternating_group(n: usize) -> Result<PermutationGroup> {
    if n < 1 {
        return Err(Error::invalid("degree must be positive"));
    }
    let gens = (3..=n as u32)
        .map(|k| Perm::from_cycles(n, &[vec![1, 2, k]]))
        .collect::<Result<Vec<_>>>()?;
    PermutationGroup::new(n, gens)
}

pub fn cyclic_group(n: usize) -> Result<PermutationGroup> {
    if n < 1 {
        return Err(Error::invalid("order must be positive"));
    }
    let gens = if n >= 2 { vec![Perm::from_cycles(n, &[(1..=n as u32).collect()])?] } else { Vec::new() };
    PermutationGroup::new(n, gens)
}
