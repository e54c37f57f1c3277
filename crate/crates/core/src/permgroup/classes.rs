use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Perm, PermutationGroup};
use crate::error::{Error, Result};
use crate::numtheory::prime_divisors;

/// Conjugacy-class data of a finite group.
///
/// Classes are ordered by their least element; class 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub order: u128,
    pub reps: Vec<Perm>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
    pub inverse_map: Vec<usize>,
    /// For each prime `m` dividing the exponent, the class of `g^m`.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    /// `power_table[k][t]` is the class of `g_k^t` for `0 ≤ t < orders[k]`.
    pub power_table: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |a, &o| a.lcm(&o))
    }

    /// Class of `g_k^t` for any integer `t`.
    pub fn power_class(&self, k: usize, t: i64) -> usize {
        let o = self.orders[k] as i64;
        self.power_table[k][t.rem_euclid(o) as usize]
    }
}

/// The element list of a group together with its class decomposition.
#[derive(Clone, Debug)]
pub struct Classes {
    data: ClassData,
    elements: Vec<Perm>,
    class_of: Vec<u32>,
    index: HashMap<Perm, u32>,
}

impl Classes {
    pub fn new(group: &PermutationGroup, bound: u64) -> Result<Self> {
        let mut elements = group.elements(bound)?;
        elements.sort_unstable();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let gens = group.generators();
        let unassigned = u32::MAX;
        let mut class_of = vec![unassigned; elements.len()];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != unassigned {
                continue;
            }
            let c = reps.len() as u32;
            class_of[start] = c;
            let mut orbit = vec![start as u32];
            let mut i = 0;
            while i < orbit.len() {
                let x = &elements[orbit[i] as usize];
                for g in gens {
                    let y = index[&x.conjugate_by(g)];
                    if class_of[y as usize] == unassigned {
                        class_of[y as usize] = c;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            reps.push(elements[start].clone());
            sizes.push(orbit.len() as u64);
        }

        let orders: Vec<u64> = reps.iter().map(Perm::order).collect();
        let class_of_perm = |p: &Perm| class_of[index[p] as usize] as usize;
        let inverse_map: Vec<usize> = reps.iter().map(|g| class_of_perm(&g.inverse())).collect();
        let power_table: Vec<Vec<usize>> = reps
            .iter()
            .zip(&orders)
            .map(|(g, &o)| {
                let mut acc = Perm::identity(g.degree());
                (0..o)
                    .map(|_| {
                        let c = class_of_perm(&acc);
                        acc = acc.mul(g);
                        c
                    })
                    .collect()
            })
            .collect();
        let exponent = orders.iter().fold(1u64, |a, &o| a.lcm(&o));
        let power_maps = prime_divisors(exponent)
            .into_iter()
            .map(|m| {
                let map = (0..reps.len())
                    .map(|k| power_table[k][(m % orders[k]) as usize])
                    .collect();
                (m, map)
            })
            .collect();

        let data = ClassData {
            order: elements.len() as u128,
            reps,
            sizes,
            orders,
            inverse_map,
            power_maps,
            power_table,
        };
        Ok(Classes {
            data,
            elements,
            class_of,
            index,
        })
    }

    pub fn data(&self) -> &ClassData {
        &self.data
    }

    pub fn into_data(self) -> ClassData {
        self.data
    }

    /// All elements in increasing order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&i| self.class_of[i as usize] as usize)
    }

    fn constants_for(&self, k: usize) -> Vec<Vec<u64>> {
        let r = self.data.len();
        let z = &self.data.reps[k];
        let mut c = vec![vec![0u64; r]; r];
        for (x, &cx) in self.elements.iter().zip(&self.class_of) {
            let y = x.inverse().mul(z);
            let cy = self.class_of[self.index[&y] as usize];
            c[cx as usize][cy as usize] += 1;
        }
        c
    }

    /// `(c_ijk)_k`: for fixed `z ∈ K_k`, the number of pairs
    /// `(x, y) ∈ K_i × K_j` with `xy = z`.
    pub fn class_mult_coeffs(&self, i: usize, j: usize) -> Result<Vec<u64>> {
        let r = self.data.len();
        if i >= r || j >= r {
            return Err(Error::invalid(format!("class index out of range 0..{r}")));
        }
        Ok((0..r)
            .map(|k| {
                let z = &self.data.reps[k];
                self.elements
                    .iter()
                    .zip(&self.class_of)
                    .filter(|(_, &cx)| cx as usize == i)
                    .filter(|(x, _)| self.class_of[self.index[&x.inverse().mul(z)] as usize] as usize == j)
                    .count() as u64
            })
            .collect())
    }

    /// The full tensor `t[k][i][j] = c_ijk`, computed in parallel over `k`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.data.len())
            .into_par_iter()
            .map(|k| self.constants_for(k))
            .collect()
    }
}
