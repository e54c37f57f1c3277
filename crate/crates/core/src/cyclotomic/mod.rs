//! Exact arithmetic in rings of cyclotomic integers `Z[ζ_n]`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^(φ(n)-1)` modulo the
//! n-th cyclotomic polynomial. Binary operations on elements of different
//! conductors first embed both into the ring of the lcm conductor.

mod accumulator;
mod residue;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::euler_phi;

pub use accumulator::GroupRingAccumulator;
pub use residue::{FieldElement, ResidueMap};

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact division of `f` by a monic `g` over the integers; panics if inexact.
fn div_exact_monic(f: &[i64], g: &[i64]) -> Vec<i64> {
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    let mut quot = vec![0i64; f.len() - dg];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dg];
        quot[i] = c;
        if c != 0 {
            for (j, &b) in g.iter().enumerate() {
                rem[i + j] -= c * b;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

pub(crate) fn cyclotomic_arc(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of index 0");
    if let Some(hit) = phi_cache().lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut f = vec![0i64; n as usize + 1];
    f[0] = -1;
    f[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        f = div_exact_monic(&f, &cyclotomic_arc(d));
    }
    let arc = Arc::new(f);
    phi_cache().lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}

/// The n-th cyclotomic polynomial, coefficients lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    cyclotomic_arc(n).as_ref().clone()
}

/// Reduces `Σ buf[j] x^j` modulo `Φ_n`, returning `φ(n)` coefficients.
pub(crate) fn reduce_mod_phi(n: u64, mut buf: Vec<i64>) -> Vec<i64> {
    let phi = cyclotomic_arc(n);
    let deg = phi.len() - 1;
    let sparse: Vec<(usize, i64)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    for i in (deg..buf.len()).rev() {
        let c = buf[i];
        if c == 0 {
            continue;
        }
        buf[i] = 0;
        let base = i - deg;
        for &(j, b) in &sparse {
            buf[base + j] -= c * b;
        }
    }
    buf.resize(deg, 0);
    buf
}

/// An element of `Z[ζ_n]` in canonical power-basis form.
///
/// Equality is structural: two values are `==` only when they carry the same
/// conductor. Use [`CyclotomicInteger::value_eq`] to compare across conductors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclotomicInteger {
    conductor: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn from_int(n: u64, c: i64) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![0; euler_phi(n) as usize];
        coeffs[0] = c;
        CyclotomicInteger { conductor: n, coeffs }
    }

    pub fn zero(n: u64) -> Self {
        Self::from_int(n, 0)
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        Self::from_exponents(n, &[(k, 1)])
    }

    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds an element from power-basis coefficients of length `φ(n)`.
    pub fn from_coeffs(n: u64, coeffs: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::invalid(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CyclotomicInteger { conductor: n, coeffs })
    }

    /// `Σ c ζ_n^e` over the given `(e, c)` pairs.
    pub fn from_exponents(n: u64, terms: &[(i64, i64)]) -> Self {
        let mut buf = vec![0i64; n as usize];
        for &(e, c) in terms {
            buf[e.rem_euclid(n as i64) as usize] += c;
        }
        CyclotomicInteger {
            conductor: n,
            coeffs: reduce_mod_phi(n, buf),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// The same element viewed in `Z[ζ_m]`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == 0 || m % self.conductor != 0 {
            return Err(Error::ConductorMismatch {
                have: self.conductor,
                want: m,
            });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let stride = (m / self.conductor) as usize;
        let mut buf = vec![0i64; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            buf[(i * stride) % m as usize] += c;
        }
        Ok(CyclotomicInteger {
            conductor: m,
            coeffs: reduce_mod_phi(m, buf),
        })
    }

    fn coerce(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.conductor.lcm(&b.conductor);
        (a.embed(n).unwrap(), b.embed(n).unwrap())
    }

    /// Complex conjugation `ζ ↦ ζ^(-1)`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as i64;
        let terms: Vec<(i64, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (n - i as i64, c))
            .collect();
        Self::from_exponents(self.conductor, &terms)
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// `self / d` when the quotient is again a cyclotomic integer.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|&c| c % d != 0) {
            return None;
        }
        Some(CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|&c| c / d).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.conductor);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Equality of the underlying algebraic numbers, across conductors.
    pub fn value_eq(&self, other: &Self) -> bool {
        let (a, b) = Self::coerce(self, other);
        a.coeffs == b.coeffs
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        let n = self.conductor as usize;
        let mut buf = vec![0i64; (2 * self.coeffs.len()).max(n)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                buf[i + j] += a * b;
            }
        }
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: reduce_mod_phi(self.conductor, buf),
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_integer() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let term = match (i, mag) {
                (0, m) => format!("{m}"),
                (1, 1) => format!("z{}", self.conductor),
                (1, m) => format!("{m}*z{}", self.conductor),
                (i, 1) => format!("z{}^{i}", self.conductor),
                (i, m) => format!("{m}*z{}^{i}", self.conductor),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let (a, b) = CyclotomicInteger::coerce(self, rhs);
        CyclotomicInteger {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        if self.conductor == rhs.conductor {
            return self.mul_same(rhs);
        }
        let (a, b) = CyclotomicInteger::coerce(self, rhs);
        a.mul_same(&b)
    }
}

pub fn cyc_add(a: &CyclotomicInteger, b: &CyclotomicInteger) -> CyclotomicInteger {
    a + b
}

pub fn cyc_mul(a: &CyclotomicInteger, b: &CyclotomicInteger) -> CyclotomicInteger {
    a * b
}

pub fn cyc_conj(a: &CyclotomicInteger) -> CyclotomicInteger {
    a.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
        assert_eq!(cyclotomic_polynomial(105).len(), 49);
    }

    #[test]
    fn cyclotomic_matches_moebius_product() {
        // Oracle: Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}, computed as a power series
        // where (x^d - 1)^{-1} = -(1 + x^d + x^{2d} + ...).
        fn mobius(n: u64) -> i64 {
            let f = crate::numtheory::factorize(n);
            if f.iter().any(|&(_, e)| e > 1) {
                0
            } else if f.len() % 2 == 0 {
                1
            } else {
                -1
            }
        }
        for n in 1..=60u64 {
            let len = euler_phi(n) as usize + 1;
            let mut series = vec![0i64; len];
            series[0] = 1;
            for d in divisors(n) {
                let mu = mobius(n / d);
                let d = d as usize;
                if mu == 1 {
                    // multiply by (x^d - 1)
                    let mut next = vec![0i64; len];
                    for i in 0..len {
                        next[i] -= series[i];
                        if i + d < len {
                            next[i + d] += series[i];
                        }
                    }
                    series = next;
                } else if mu == -1 {
                    // divide by (x^d - 1): multiply by -(1 + x^d + ...)
                    let mut next = vec![0i64; len];
                    for i in 0..len {
                        let mut k = i;
                        loop {
                            next[k] -= series[i];
                            k += d;
                            if k >= len {
                                break;
                            }
                        }
                    }
                    series = next;
                }
            }
            let phi = cyclotomic_polynomial(n);
            // Fix the overall sign from the n = 1 convention (x - 1).
            let sign = if series[len - 1] == phi[len - 1] { 1 } else { -1 };
            let series: Vec<i64> = series.iter().map(|c| c * sign).collect();
            assert_eq!(series, phi, "n = {n}");
        }
    }

    #[test]
    fn ring_examples() {
        let i = CyclotomicInteger::zeta(4);
        assert_eq!(&i * &i, CyclotomicInteger::from_int(4, -1));
        let w = CyclotomicInteger::zeta(3);
        let w2 = CyclotomicInteger::zeta_pow(3, 2);
        assert_eq!(&w + &w2, CyclotomicInteger::from_int(3, -1));
        assert_eq!(CyclotomicInteger::zeta(5).conj(), CyclotomicInteger::zeta_pow(5, 4));
    }

    #[test]
    fn mixed_conductors_coerce() {
        // ζ_3 * ζ_4 = ζ_12^7
        let p = &CyclotomicInteger::zeta(3) * &CyclotomicInteger::zeta(4);
        assert_eq!(p, CyclotomicInteger::zeta_pow(12, 7));
        assert!(CyclotomicInteger::from_int(2, -1).value_eq(&CyclotomicInteger::from_int(1, -1)));
        assert!(CyclotomicInteger::zeta(6).value_eq(&CyclotomicInteger::zeta_pow(3, 2).scale(-1)));
    }

    #[test]
    fn exact_division() {
        let a = CyclotomicInteger::from_exponents(5, &[(1, 6), (2, -12)]);
        assert_eq!(a.div_exact(6), Some(CyclotomicInteger::from_exponents(5, &[(1, 1), (2, -2)])));
        assert_eq!(a.div_exact(4), None);
    }

    fn arb_element(n: u64) -> impl Strategy<Value = CyclotomicInteger> {
        let phi = euler_phi(n) as usize;
        proptest::collection::vec(-20i64..20, phi)
            .prop_map(move |c| CyclotomicInteger::from_coeffs(n, c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (CyclotomicInteger, CyclotomicInteger, CyclotomicInteger)> {
        (1u64..=60).prop_flat_map(|n| (arb_element(n), arb_element(n), arb_element(n)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &CyclotomicInteger::one(a.conductor()), a.clone());
        }

        #[test]
        fn conjugation_is_ring_involution((a, b, _c) in arb_triple()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn embedding_is_a_homomorphism((a, b, _c) in arb_triple(), k in 1u64..4) {
            let m = a.conductor() * k;
            prop_assert_eq!((&a * &b).embed(m).unwrap(), &a.embed(m).unwrap() * &b.embed(m).unwrap());
            prop_assert_eq!(a.conj().embed(m).unwrap(), a.embed(m).unwrap().conj());
        }
    }
}
