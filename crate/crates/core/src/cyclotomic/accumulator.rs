use super::{reduce_mod_phi, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, factorize, inv_mod};

/// Sums of products of cyclotomic integers, kept in the group ring `Z[C_n]`
/// (exponents mod `n`) and only interpreted in `Z[ζ_n]` at the end.
///
/// Testing whether the sum is a given rational integer uses the tensor
/// decomposition `Z[ζ_n] = ⊗ Z[ζ_Q]` over the prime-power factors `Q` of `n`,
/// which avoids dense reduction modulo `Φ_n` for large `n`.
#[derive(Clone, Debug)]
pub struct GroupRingAccumulator {
    n: u64,
    buf: Vec<i64>,
}

struct LocalFactor {
    q: u64,
    p: u64,
    phi: u64,
    unit: u64,
    stride: u64,
}

impl GroupRingAccumulator {
    pub fn new(n: u64) -> Self {
        GroupRingAccumulator {
            n,
            buf: vec![0; n as usize],
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    fn exponent_step(&self, a: &CyclotomicInteger) -> Result<u64> {
        if self.n % a.conductor() != 0 {
            return Err(Error::ConductorMismatch {
                have: a.conductor(),
                want: self.n,
            });
        }
        Ok(self.n / a.conductor())
    }

    /// Adds `weight · a`.
    pub fn add(&mut self, a: &CyclotomicInteger, weight: i64) -> Result<()> {
        let s = self.exponent_step(a)?;
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c != 0 {
                self.buf[(i as u64 * s % self.n) as usize] += weight * c;
            }
        }
        Ok(())
    }

    /// Adds `weight · a · conj(b)`.
    pub fn add_product_conj(&mut self, a: &CyclotomicInteger, b: &CyclotomicInteger, weight: i64) -> Result<()> {
        let sa = self.exponent_step(a)?;
        let sb = self.exponent_step(b)?;
        let n = self.n;
        let bs: Vec<(u64, i64)> = b
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| ((n - (j as u64 * sb) % n) % n, c))
            .collect();
        for (i, &x) in a.coeffs().iter().enumerate() {
            if x == 0 {
                continue;
            }
            let ea = i as u64 * sa % n;
            for &(eb, y) in &bs {
                self.buf[((ea + eb) % n) as usize] += weight * x * y;
            }
        }
        Ok(())
    }

    /// Whether the accumulated value in `Z[ζ_n]` equals the integer `c`.
    pub fn equals_integer(&self, c: i64) -> bool {
        let locals: Vec<LocalFactor> = {
            let mut stride = 1;
            factorize(self.n)
                .into_iter()
                .map(|(p, e)| {
                    let q = p.pow(e);
                    let m = self.n / q;
                    let local = LocalFactor {
                        q,
                        p,
                        phi: euler_phi(q),
                        unit: if q == 1 { 0 } else { inv_mod(m % q, q).expect("coprime cofactor") },
                        stride,
                    };
                    stride *= local.phi;
                    local
                })
                .collect()
        };
        let mut coords = vec![0i64; euler_phi(self.n) as usize];
        let mut terms: Vec<(u64, i64)> = Vec::new();
        for (exp, &w) in self.buf.iter().enumerate() {
            if w == 0 {
                continue;
            }
            terms.clear();
            terms.push((0, w));
            for f in &locals {
                let t = (exp as u64 % f.q) * f.unit % f.q;
                let mut next = Vec::with_capacity(terms.len() * f.p as usize);
                for &(idx, coef) in &terms {
                    if t < f.phi {
                        next.push((idx + t * f.stride, coef));
                    } else {
                        // ζ_Q^(φ(Q)+s) = -Σ_k ζ_Q^(s + kQ/p)
                        let s = t - f.phi;
                        for k in 0..f.p - 1 {
                            next.push((idx + (s + k * f.q / f.p) * f.stride, -coef));
                        }
                    }
                }
                terms = next;
            }
            for &(idx, coef) in &terms {
                coords[idx as usize] += coef;
            }
        }
        coords[0] == c && coords[1..].iter().all(|&x| x == 0)
    }

    /// The accumulated value in canonical power-basis form.
    pub fn to_cyclotomic(&self) -> CyclotomicInteger {
        CyclotomicInteger::from_coeffs(self.n, reduce_mod_phi(self.n, self.buf.clone())).unwrap()
    }
}
