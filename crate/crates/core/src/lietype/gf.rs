use crate::error::{Error, Result};
use crate::modpoly::PrimeField;
use crate::numtheory::is_prime_power;

/// `GF(q)` with elements `0..q` encoded as base-`p` digit strings of
/// polynomials modulo a primitive polynomial. `0` and `1` are the field's
/// zero and one.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// A primitive element.
    generator: u32,
}

/// Largest field order with tabulated arithmetic.
pub const MAX_FIELD_ORDER: u64 = 1024;

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let pp = is_prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!("GF({q}) is larger than {MAX_FIELD_ORDER}")));
        }
        let (p, k) = (pp.prime, pp.exponent as usize);
        let f = PrimeField::new(p);
        let qs = q as usize;
        let encode = |poly: &[u64]| -> u32 {
            let mut v = 0u64;
            for i in (0..k).rev() {
                v = v * p + poly.get(i).copied().unwrap_or(0);
            }
            v as u32
        };
        let decode = |mut v: u64| -> Vec<u64> {
            let mut out = vec![0; k];
            for c in out.iter_mut() {
                *c = v % p;
                v /= p;
            }
            out
        };
        // Monic degree-k modulus for which x has order q-1.
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|tail| {
                    let mut m = decode(tail);
                    m.push(1);
                    m
                })
                .find(|m| is_primitive(&f, m, q - 1))
                .ok_or_else(|| Error::verification(format!("no primitive polynomial for GF({q})")))?
        };
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            let pa = decode(a);
            for b in 0..q {
                let pb = decode(b);
                let s: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| f.add(*x, *y)).collect();
                add[a as usize * qs + b as usize] = encode(&s);
                let prod = f.rem(&f.mul_poly(&pa, &pb), &modulus);
                mul[a as usize * qs + b as usize] = encode(&prod);
            }
        }
        let mut inv = vec![0u32; qs];
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field") as u32;
        }
        let generator = if k == 1 {
            (1..qs)
                .find(|&g| {
                    let mut x = 1usize;
                    (1..qs - 1).all(|_| {
                        x = mul[x * qs + g] as usize;
                        x != 1
                    })
                })
                .expect("primitive root") as u32
        } else {
            p as u32
        };
        Ok(GaloisField { p, q: qs, add, mul, inv, generator })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q as u32).find(|&b| self.add(a, b) == 0).expect("field")
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// `1, ω, …, ω^{k−1}`: a basis of `GF(q)` over `GF(p)`.
    pub fn additive_basis(&self) -> Vec<u32> {
        let mut out = vec![1u32];
        let mut x = 1u32;
        while (self.p as usize).pow(out.len() as u32) < self.q {
            x = self.mul(x, self.generator);
            out.push(x);
        }
        out
    }
}

fn is_primitive(f: &PrimeField, m: &[u64], order: u64) -> bool {
    let x = vec![0, 1];
    if f.powmod(&x, order as u128, m) != vec![1] {
        return false;
    }
    crate::numtheory::prime_divisors(order)
        .into_iter()
        .all(|r| f.powmod(&x, (order / r) as u128, m) != vec![1])
}
