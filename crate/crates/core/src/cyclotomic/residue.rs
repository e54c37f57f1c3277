use std::fmt;

use serde::Serialize;

use super::{cyclotomic_arc, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::modpoly::{poly_order, Poly, PrimeField};
use crate::numtheory::{is_prime, multiplicative_order};

/// Seed for the randomized splitting step; fixed so factor lists are reproducible.
const FACTOR_SEED: u64 = 0x5eed_0f_c0de;

/// An element of `F_{p^d} = F_p[x]/(g)`, stored as `d` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The element as a prime-field scalar, if it lies in `F_p`.
    pub fn as_scalar(&self) -> Option<u64> {
        if self.0[1..].iter().all(|&c| c == 0) {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_scalar() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{:?}", self.0),
        }
    }
}

/// The surjection `Z[ζ_n] → F_p[x]/(g)` sending `ζ_n` to `x`, for an
/// irreducible factor `g` of `Φ_n` modulo `p`.
#[derive(Clone, Debug)]
pub struct ResidueMap {
    conductor: u64,
    field: PrimeField,
    modulus: Poly,
    powers: Vec<Vec<u64>>,
}

/// Strips all factors of `p` from `n`.
fn p_prime_part(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

impl ResidueMap {
    /// Uses the least irreducible factor of `Φ_n` mod `p` (degree first,
    /// then coefficients from the constant term up).
    pub fn new(n: u64, p: u64) -> Result<Self> {
        let factors = Self::irreducible_factors(n, p)?;
        Self::build(n, p, factors.into_iter().next().expect("Φ_n has a factor"))
    }

    /// All distinct monic irreducible factors of `Φ_n` mod `p`, sorted.
    ///
    /// Modulo `p`, `Φ_n` is a power of `Φ_{n'}` where `n'` is the `p'`-part of
    /// `n`, so the factors of the latter are returned.
    pub fn irreducible_factors(n: u64, p: u64) -> Result<Vec<Poly>> {
        if n == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::invalid(format!("{p} is not a supported prime")));
        }
        let field = PrimeField::new(p);
        let phi = field.from_i64(&cyclotomic_arc(p_prime_part(n, p)));
        let mut factors: Vec<Poly> = field
            .factor(&phi, FACTOR_SEED)
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        factors.sort_by(|a, b| poly_order(a, b));
        Ok(factors)
    }

    /// Uses a caller-chosen factor `g`, which must be a monic irreducible
    /// divisor of `Φ_n` mod `p`.
    pub fn with_factor(n: u64, p: u64, g: &[u64]) -> Result<Self> {
        let factors = Self::irreducible_factors(n, p)?;
        let field = PrimeField::new(p);
        let g = field.monic(&field.normalize(g.to_vec()));
        if !factors.contains(&g) {
            return Err(Error::invalid(format!(
                "{g:?} is not an irreducible factor of the {n}-th cyclotomic polynomial mod {p}"
            )));
        }
        Self::build(n, p, g)
    }

    fn build(n: u64, p: u64, g: Poly) -> Result<Self> {
        let field = PrimeField::new(p);
        let d = g.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = field.rem(&[1], &g);
        for _ in 0..n {
            let mut padded = cur.clone();
            padded.resize(d, 0);
            powers.push(padded);
            cur = field.mulmod(&cur, &[0, 1], &g);
        }
        Ok(ResidueMap {
            conductor: n,
            field,
            modulus: g,
            powers,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    /// The irreducible factor `g`, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Degree of the residue field over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The splitting-law prediction for [`Self::degree`].
    pub fn expected_degree(n: u64, p: u64) -> u64 {
        multiplicative_order(p % p_prime_part(n, p).max(1), p_prime_part(n, p)).unwrap_or(1)
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        let mut v = vec![0; self.degree()];
        v[0] = self.field.reduce_i64(c);
        FieldElement(v)
    }

    pub fn reduce(&self, a: &CyclotomicInteger) -> Result<FieldElement> {
        let m = a.conductor();
        if self.conductor % m != 0 {
            return Err(Error::ConductorMismatch {
                have: m,
                want: self.conductor,
            });
        }
        let stride = (self.conductor / m) as usize;
        let mut acc = vec![0u64; self.degree()];
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = self.field.reduce_i64(c);
            for (slot, &b) in acc.iter_mut().zip(&self.powers[i * stride]) {
                *slot = self.field.add(*slot, self.field.mul(c, b));
            }
        }
        Ok(FieldElement(acc))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut v = self.field.mulmod(&self.field.normalize(a.0.clone()), &self.field.normalize(b.0.clone()), &self.modulus);
        v.resize(self.degree(), 0);
        FieldElement(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic_polynomial;
    use crate::numtheory::euler_phi;
    use proptest::prelude::*;

    #[test]
    fn splitting_examples() {
        let m = ResidueMap::new(4, 5).unwrap();
        assert_eq!(m.degree(), 1);
        let m = ResidueMap::new(3, 2).unwrap();
        assert_eq!(m.modulus(), &[1, 1, 1]);
        assert_eq!(m.degree(), 2);
        let m = ResidueMap::new(1, 7).unwrap();
        assert_eq!(m.degree(), 1);
        assert_eq!(m.reduce(&CyclotomicInteger::from_int(1, 23)).unwrap().as_scalar(), Some(2));
    }

    #[test]
    fn chosen_root_of_minus_one() {
        // x - 2 over F_5 is [3, 1].
        let m = ResidueMap::with_factor(4, 5, &[3, 1]).unwrap();
        assert_eq!(m.reduce(&CyclotomicInteger::zeta(4)).unwrap().as_scalar(), Some(2));
        assert!(ResidueMap::with_factor(4, 5, &[1, 1]).is_err());
    }

    #[test]
    fn defining_relation_vanishes() {
        for n in 1..=40u64 {
            for p in [2u64, 3, 5, 7, 11] {
                let m = ResidueMap::new(n, p).unwrap();
                let phi = cyclotomic_polynomial(n);
                let terms: Vec<(i64, i64)> = phi.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
                // Φ_n(ζ_n) written out as a sum of powers, reduced exactly first.
                let value = CyclotomicInteger::from_exponents(n, &terms);
                assert!(m.reduce(&value).unwrap().is_zero());
                // ζ_n itself is a root of g.
                let field = PrimeField::new(p);
                let g = field.from_i64(&phi);
                assert!(field.rem(&g, m.modulus()).is_empty(), "g divides Φ_n mod p");
            }
        }
    }

    #[test]
    fn degree_follows_splitting_law() {
        for n in 1..=80u64 {
            for p in [2u64, 3, 5, 7, 13, 31] {
                let m = ResidueMap::new(n, p).unwrap();
                assert_eq!(m.degree() as u64, ResidueMap::expected_degree(n, p), "n={n} p={p}");
                let count = ResidueMap::irreducible_factors(n, p).unwrap().len() as u64;
                let np = p_prime_part(n, p);
                assert_eq!(count * m.degree() as u64, euler_phi(np));
            }
        }
    }

    #[test]
    fn mismatched_conductor_rejected() {
        let m = ResidueMap::new(6, 7).unwrap();
        assert!(m.reduce(&CyclotomicInteger::zeta(4)).is_err());
        assert!(m.reduce(&CyclotomicInteger::zeta(3)).is_ok());
    }

    fn arb_case() -> impl Strategy<Value = (u64, u64, Vec<i64>, Vec<i64>)> {
        (1u64..=60, prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])).prop_flat_map(|(n, p)| {
            let phi = euler_phi(n) as usize;
            (
                Just(n),
                Just(p),
                proptest::collection::vec(-50i64..50, phi),
                proptest::collection::vec(-50i64..50, phi),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_is_ring_homomorphism((n, p, a, b) in arb_case()) {
            let a = CyclotomicInteger::from_coeffs(n, a).unwrap();
            let b = CyclotomicInteger::from_coeffs(n, b).unwrap();
            let m = ResidueMap::new(n, p).unwrap();
            let ra = m.reduce(&a).unwrap();
            let rb = m.reduce(&b).unwrap();
            prop_assert_eq!(m.reduce(&(&a * &b)).unwrap(), m.mul(&ra, &rb));
            prop_assert_eq!(m.reduce(&(&a + &b)).unwrap(), m.add(&ra, &rb));
        }
    }
}
