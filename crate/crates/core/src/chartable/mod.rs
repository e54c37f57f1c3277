//! Exact ordinary character tables by the Dixon–Schneider method.
//!
//! Central characters are computed modulo a prime `ℓ ≡ 1 (mod exponent)`,
//! converted to character values mod `ℓ`, and lifted to cyclotomic integers
//! by counting eigenvalue multiplicities. Every table is checked exactly
//! before it is returned.

mod dixon;
mod linalg;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicInteger, GroupRingAccumulator};
use crate::error::{Error, Result};
use crate::modpoly::PrimeField;
use crate::numtheory::{factorize, is_prime, pow_mod};
use crate::permgroup::{ClassData, Classes, PermutationGroup};

/// An irreducible character table.
///
/// Row 0 is the trivial character; rows are sorted by degree and then by
/// their value vectors. `values[χ][k]` is stored at conductor
/// `classes.orders[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub classes: ClassData,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<CyclotomicInteger>>,
    /// Exponent of the group; every value lies in `Z[ζ_conductor]`.
    pub conductor: u64,
    /// The prime used for the modular computation.
    pub modulus: u64,
}

/// Tuning for [`character_table_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct TableOptions {
    /// Use the `prime_index`-th admissible prime instead of the least.
    pub prime_index: usize,
}

/// The `index`-th prime `ℓ` with `ℓ ≡ 1 (mod exponent)` and `ℓ² > 4|G|`.
pub fn dixon_prime(order: u128, exponent: u64, index: usize) -> u64 {
    let mut seen = 0;
    let mut l = exponent + 1;
    loop {
        if (l as u128) * (l as u128) > 4 * order && is_prime(l) {
            if seen == index {
                return l;
            }
            seen += 1;
        }
        l += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

pub fn character_table(group: &PermutationGroup) -> Result<CharacterTable> {
    character_table_with(&group.conjugacy_classes()?, TableOptions::default())
}

pub fn character_table_with(classes: &Classes, opts: TableOptions) -> Result<CharacterTable> {
    let data = classes.data();
    let r = data.len();
    let order = data.order;
    let exponent = data.exponent();
    let ell = dixon_prime(order, exponent, opts.prime_index);
    let f = PrimeField::new(ell);

    let tensor = classes.structure_constants();
    // (A_i)_{jk} = c_ijk
    let mats: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|k| tensor[k][i][j] % ell).collect())
                .collect()
        })
        .collect();
    let omegas = dixon::central_characters_mod(&f, &mats)?;
    if omegas.len() != r {
        return Err(Error::verification("wrong number of central characters"));
    }

    let order_mod = (order % ell as u128) as u64;
    let divisors = small_divisors(order);
    let g = primitive_root(ell);
    let mut rows = Vec::with_capacity(r);
    for w in &omegas {
        // Σ_k ω_k ω_k' / |K_k| = |G| / χ(1)²
        let s = (0..r).fold(0u64, |acc, k| {
            let t = f.mul(f.mul(w[k], w[data.inverse_map[k]]), f.inv(data.sizes[k] % ell));
            f.add(acc, t)
        });
        if s == 0 {
            return Err(Error::verification("degenerate degree equation"));
        }
        let d2 = f.mul(order_mod, f.inv(s));
        let candidates: Vec<u64> = divisors.iter().copied().filter(|&d| f.mul(d % ell, d % ell) == d2).collect();
        let [d] = candidates[..] else {
            return Err(Error::verification(format!(
                "no unique degree solves d² ≡ {d2} (mod {ell})"
            )));
        };
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(w[k], d % ell), f.inv(data.sizes[k] % ell)))
            .collect();
        let values = (0..r)
            .map(|k| lift_value(&f, g, data, &chi_mod, k, d))
            .collect::<Result<Vec<_>>>()?;
        rows.push((d, values));
    }

    rows.sort_by(|(da, va), (db, vb)| {
        let trivial_a = va.iter().all(|v| v.as_integer() == Some(1));
        let trivial_b = vb.iter().all(|v| v.as_integer() == Some(1));
        trivial_b
            .cmp(&trivial_a)
            .then(da.cmp(db))
            .then_with(|| va.iter().map(|v| v.coeffs()).cmp(vb.iter().map(|v| v.coeffs())))
    });
    let (degrees, values): (Vec<u64>, Vec<Vec<CyclotomicInteger>>) = rows.into_iter().unzip();
    let table = CharacterTable {
        classes: data.clone(),
        degrees,
        values,
        conductor: exponent,
        modulus: ell,
    };
    table.verify()?;
    Ok(table)
}

/// Divisors `d` of `n` with `d² ≤ n`.
fn small_divisors(n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
        }
        d += 1;
    }
    out
}

/// Recovers `χ(g_k)` from the values mod `ℓ` on the powers of `g_k`.
fn lift_value(
    f: &PrimeField,
    g: u64,
    data: &ClassData,
    chi_mod: &[u64],
    k: usize,
    degree: u64,
) -> Result<CyclotomicInteger> {
    let o = data.orders[k];
    let ell = f.modulus();
    let z = pow_mod(g, (ell - 1) / o, ell);
    let zinv = f.inv(z);
    let oinv = f.inv(o % ell);
    let mut terms = Vec::with_capacity(o as usize);
    let mut total = 0u64;
    for j in 0..o {
        // m_j = o⁻¹ Σ_t χ(g^t) z^{-jt}
        let step = f.pow(zinv, j);
        let mut acc = 0u64;
        let mut zt = 1u64;
        for t in 0..o {
            acc = f.add(acc, f.mul(chi_mod[data.power_table[k][t as usize]], zt));
            zt = f.mul(zt, step);
        }
        let m = f.mul(acc, oinv);
        if m > degree {
            return Err(Error::verification(format!(
                "eigenvalue multiplicity {m} exceeds degree {degree}"
            )));
        }
        total += m;
        if m != 0 {
            terms.push((j as i64, m as i64));
        }
    }
    if total != degree {
        return Err(Error::verification("eigenvalue multiplicities do not sum to the degree"));
    }
    Ok(CyclotomicInteger::from_exponents(o, &terms))
}

impl CharacterTable {
    pub fn num_characters(&self) -> usize {
        self.degrees.len()
    }

    pub fn group_order(&self) -> u128 {
        self.classes.order
    }

    /// Exact checks: shape, first column, `Σ χ(1)² = |G|`, and both
    /// orthogonality relations.
    pub fn verify(&self) -> Result<()> {
        let r = self.classes.len();
        let order = self.classes.order;
        if self.degrees.len() != r || self.values.len() != r || self.values.iter().any(|row| row.len() != r) {
            return Err(Error::verification("table is not square"));
        }
        for (chi, row) in self.values.iter().enumerate() {
            if row[0].as_integer() != Some(self.degrees[chi] as i64) {
                return Err(Error::verification(format!("character {chi}: first column differs from its degree")));
            }
            for (k, v) in row.iter().enumerate() {
                if self.classes.orders[k] % v.conductor() != 0 || self.conductor % v.conductor() != 0 {
                    return Err(Error::verification(format!("value ({chi},{k}) has an unexpected conductor")));
                }
            }
        }
        let sum_sq: u128 = self.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
        if sum_sq != order {
            return Err(Error::verification(format!("sum of squared degrees is {sum_sq}, not {order}")));
        }
        let n = self.conductor;
        let order_i = i64::try_from(order).map_err(|_| Error::Overflow("table verification"))?;
        for a in 0..r {
            for b in a..r {
                let mut acc = GroupRingAccumulator::new(n);
                for k in 0..r {
                    acc.add_product_conj(&self.values[a][k], &self.values[b][k], self.classes.sizes[k] as i64)?;
                }
                let expect = if a == b { order_i } else { 0 };
                if !acc.equals_integer(expect) {
                    return Err(Error::verification(format!("row orthogonality fails for ({a},{b})")));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = GroupRingAccumulator::new(n);
                for row in &self.values {
                    acc.add_product_conj(&row[k], &row[l], 1)?;
                }
                let expect = if k == l { order_i / self.classes.sizes[k] as i64 } else { 0 };
                if !acc.equals_integer(expect) {
                    return Err(Error::verification(format!("column orthogonality fails for ({k},{l})")));
                }
            }
        }
        Ok(())
    }

    /// The set of character degrees.
    pub fn degree_set(&self) -> BTreeSet<u64> {
        self.degrees.iter().copied().collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses a table and re-checks it with [`CharacterTable::verify`].
    pub fn from_json(text: &str) -> Result<Self> {
        let t: CharacterTable = serde_json::from_str(text)?;
        t.verify()?;
        Ok(t)
    }
}

/// The set of character degrees of `t`.
pub fn degree_set(t: &CharacterTable) -> BTreeSet<u64> {
    t.degree_set()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Perm;

    fn group(n: usize, gens: &[&[&[u32]]]) -> PermutationGroup {
        let gens = gens
            .iter()
            .map(|cs| Perm::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap())
            .collect();
        PermutationGroup::new(n, gens).unwrap()
    }

    #[test]
    fn admissible_primes() {
        // A5: exponent 30, 4·60 = 240 < ℓ².
        assert_eq!(dixon_prime(60, 30, 0), 31);
        assert_eq!(dixon_prime(60, 30, 1), 61);
        assert_eq!(dixon_prime(6, 6, 0), 7);
        assert_eq!(primitive_root(31), 3);
    }

    #[test]
    fn small_tables() {
        let a5 = character_table(&group(5, &[&[&[1, 2, 3, 4, 5]], &[&[3, 4, 5]]])).unwrap();
        assert_eq!(a5.degrees, vec![1, 3, 3, 4, 5]);
        assert_eq!(a5.degree_set().into_iter().collect::<Vec<_>>(), vec![1, 3, 4, 5]);

        let c4 = character_table(&group(4, &[&[&[1, 2, 3, 4]]])).unwrap();
        assert_eq!(c4.degrees, vec![1, 1, 1, 1]);
        let i = CyclotomicInteger::zeta(4);
        assert!(c4.values.iter().any(|row| row.iter().any(|v| v.value_eq(&i))));

        let s3 = character_table(&group(3, &[&[&[1, 2, 3]], &[&[1, 2]]])).unwrap();
        assert_eq!(s3.degrees, vec![1, 1, 2]);
    }

    #[test]
    fn golden_ratio_values_in_a5() {
        let a5 = character_table(&group(5, &[&[&[1, 2, 3, 4, 5]], &[&[3, 4, 5]]])).unwrap();
        // The degree-3 characters take values (1 ± √5)/2 on 5-cycles, that is
        // -ζ5² - ζ5³ and -ζ5 - ζ5⁴.
        let a = CyclotomicInteger::from_exponents(5, &[(2, -1), (3, -1)]);
        let b = CyclotomicInteger::from_exponents(5, &[(1, -1), (4, -1)]);
        let five: Vec<usize> = (0..5).filter(|&k| a5.classes.orders[k] == 5).collect();
        for chi in 1..=2 {
            for &k in &five {
                let v = &a5.values[chi][k];
                assert!(v.value_eq(&a) || v.value_eq(&b));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s3 = character_table(&group(3, &[&[&[1, 2, 3]], &[&[1, 2]]])).unwrap();
        let back = CharacterTable::from_json(&s3.to_json().unwrap()).unwrap();
        assert_eq!(back, s3);
        back.verify().unwrap();
    }

    #[test]
    fn tampered_table_fails_verification() {
        let mut s3 = character_table(&group(3, &[&[&[1, 2, 3]], &[&[1, 2]]])).unwrap();
        let k = s3.classes.orders.iter().position(|&o| o == 2).unwrap();
        s3.values[1][k] = CyclotomicInteger::from_int(2, 1);
        assert!(matches!(s3.verify(), Err(Error::Verification(_))));
        let json = serde_json::to_string(&s3).unwrap();
        assert!(matches!(CharacterTable::from_json(&json), Err(Error::Verification(_))));
    }

    #[test]
    fn independent_of_the_modular_prime() {
        for g in [
            group(5, &[&[&[1, 2, 3, 4, 5]], &[&[3, 4, 5]]]),
            group(3, &[&[&[1, 2, 3]], &[&[1, 2]]]),
            group(6, &[&[&[1, 2, 3, 4, 5, 6]]]),
        ] {
            let cl = g.conjugacy_classes().unwrap();
            let t0 = character_table_with(&cl, TableOptions { prime_index: 0 }).unwrap();
            let t1 = character_table_with(&cl, TableOptions { prime_index: 1 }).unwrap();
            assert_ne!(t0.modulus, t1.modulus);
            assert_eq!(t0.values, t1.values);
        }
    }
}
