//! Dense polynomials over a prime field and their factorization
//! (square-free decomposition, distinct-degree and Cantor-Zassenhaus
//! equal-degree splitting).
//!
//! Polynomials are coefficient vectors, lowest degree first, with no
//! trailing zeros; the zero polynomial is the empty vector. The prime must
//! be below 2^32 so products of two residues fit in a `u64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numtheory::{inv_mod, pow_mod};

pub type Poly = Vec<u64>;

/// Arithmetic in `F_p[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "prime field modulus out of range: {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.p).expect("inverse of zero in prime field")
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn normalize(&self, mut f: Poly) -> Poly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn from_i64(&self, coeffs: &[i64]) -> Poly {
        self.normalize(coeffs.iter().map(|&c| self.reduce_i64(c)).collect())
    }

    pub fn degree(f: &[u64]) -> Option<usize> {
        if f.is_empty() {
            None
        } else {
            Some(f.len() - 1)
        }
    }

    pub fn add_poly(&self, f: &[u64], g: &[u64]) -> Poly {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| self.add(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        self.normalize(out)
    }

    pub fn sub_poly(&self, f: &[u64], g: &[u64]) -> Poly {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| self.sub(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        self.normalize(out)
    }

    pub fn scale(&self, f: &[u64], c: u64) -> Poly {
        self.normalize(f.iter().map(|&a| self.mul(a, c)).collect())
    }

    pub fn mul_poly(&self, f: &[u64], g: &[u64]) -> Poly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        // Accumulate in u128 and reduce once per output coefficient.
        let mut acc = vec![0u128; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                acc[i + j] += (a * b) as u128;
            }
        }
        let p = self.p as u128;
        self.normalize(acc.into_iter().map(|c| (c % p) as u64).collect())
    }

    /// Quotient and remainder of `f` by a nonzero `g`.
    pub fn divrem(&self, f: &[u64], g: &[u64]) -> (Poly, Poly) {
        assert!(!g.is_empty(), "division by zero polynomial");
        if f.len() < g.len() {
            return (Vec::new(), f.to_vec());
        }
        let lead_inv = self.inv(*g.last().unwrap());
        let dg = g.len() - 1;
        let mut rem = f.to_vec();
        let mut quot = vec![0u64; f.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = self.mul(rem[i + dg], lead_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                rem[i + j] = self.sub(rem[i + j], self.mul(c, b));
            }
        }
        rem.truncate(dg);
        (self.normalize(quot), self.normalize(rem))
    }

    pub fn rem(&self, f: &[u64], g: &[u64]) -> Poly {
        self.divrem(f, g).1
    }

    pub fn monic(&self, f: &[u64]) -> Poly {
        match f.last() {
            None => Vec::new(),
            Some(&lead) => self.scale(f, self.inv(lead)),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &[u64], g: &[u64]) -> Poly {
        let mut a = self.normalize(f.to_vec());
        let mut b = self.normalize(g.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, f: &[u64]) -> Poly {
        let out = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        self.normalize(out)
    }

    pub fn mulmod(&self, f: &[u64], g: &[u64], m: &[u64]) -> Poly {
        self.rem(&self.mul_poly(f, g), m)
    }

    pub fn powmod(&self, f: &[u64], mut e: u128, m: &[u64]) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = self.rem(&[1], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// `f^p mod m`, iterated `times` times (the Frobenius map).
    fn frobenius(&self, f: &[u64], times: usize, m: &[u64]) -> Poly {
        let mut out = self.rem(f, m);
        for _ in 0..times {
            out = self.powmod(&out, self.p as u128, m);
        }
        out
    }

    /// Square-free decomposition of a monic `f`: pairs `(g, k)` with
    /// `f = prod g^k`, each `g` square-free and the `g` pairwise coprime.
    pub fn squarefree_decomposition(&self, f: &[u64]) -> Vec<(Poly, u32)> {
        let f = self.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let df = self.derivative(&f);
        if df.is_empty() {
            // f = g(x^p)
            let root: Poly = f.iter().step_by(self.p as usize).copied().collect();
            for (g, k) in self.squarefree_decomposition(&root) {
                out.push((g, k * self.p as u32));
            }
            return merge_powers(out);
        }
        let mut c = self.gcd(&f, &df);
        let mut w = self.divrem(&f, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((self.monic(&z), i));
            }
            i += 1;
            w = y;
            c = self.divrem(&c, &w).0;
        }
        if c.len() > 1 {
            let root: Poly = c.iter().step_by(self.p as usize).copied().collect();
            for (g, k) in self.squarefree_decomposition(&root) {
                out.push((g, k * self.p as u32));
            }
        }
        merge_powers(out)
    }

    /// Distinct-degree factorization of a monic square-free `f`:
    /// pairs `(d, g)` with `g` the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(usize, Poly)> {
        let mut out = Vec::new();
        let mut h = self.monic(f);
        let x: Poly = vec![0, 1];
        let mut xp = x.clone();
        let mut d = 0;
        while h.len() > 1 {
            d += 1;
            if 2 * d > h.len() - 1 {
                let deg = h.len() - 1;
                out.push((deg, h));
                break;
            }
            xp = self.frobenius(&xp, 1, &h);
            let g = self.gcd(&h, &self.sub_poly(&xp, &x));
            if g.len() > 1 {
                h = self.divrem(&h, &g).0;
                xp = self.rem(&xp, &h);
                out.push((d, g));
            }
        }
        out
    }

    /// Splits a monic square-free `f` whose irreducible factors all have degree `d`.
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let f = self.monic(f);
        let n = f.len() - 1;
        if n == d {
            return vec![f];
        }
        loop {
            let a: Poly = self.normalize((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let g = self.gcd(&f, &a);
            let candidate = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = if self.p == 2 {
                    // Trace map a + a^2 + ... + a^(2^(d-1)).
                    let mut t = a.clone();
                    let mut cur = a.clone();
                    for _ in 1..d {
                        cur = self.mulmod(&cur, &cur, &f);
                        t = self.add_poly(&t, &cur);
                    }
                    t
                } else {
                    // a^((p^d - 1) / 2) = (a^(1 + p + ... + p^(d-1)))^((p - 1) / 2)
                    let mut norm = self.rem(&[1], &f);
                    let mut cur = self.rem(&a, &f);
                    for i in 0..d {
                        if i > 0 {
                            cur = self.frobenius(&cur, 1, &f);
                        }
                        norm = self.mulmod(&norm, &cur, &f);
                    }
                    let half = self.powmod(&norm, ((self.p - 1) / 2) as u128, &f);
                    self.sub_poly(&half, &[1])
                };
                self.gcd(&f, &b)
            };
            if candidate.len() > 1 && candidate.len() < f.len() {
                let other = self.divrem(&f, &candidate).0;
                let mut out = self.equal_degree(&candidate, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficient vector (lowest coefficient first).
    pub fn factor(&self, f: &[u64], seed: u64) -> Vec<(Poly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (sqf, k) in self.squarefree_decomposition(f) {
            for (d, g) in self.distinct_degree(&sqf) {
                for h in self.equal_degree(&g, d, &mut rng) {
                    out.push((h, k));
                }
            }
        }
        out.sort_by(|a, b| poly_order(&a.0, &b.0));
        out
    }

    /// Distinct roots of `f` in `F_p`, ascending.
    pub fn roots(&self, f: &[u64], seed: u64) -> Vec<u64> {
        let f = self.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let xp = self.powmod(&[0, 1], self.p as u128, &f);
        let linear_part = self.gcd(&f, &self.sub_poly(&xp, &[0, 1]));
        if linear_part.len() <= 1 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut roots: Vec<u64> = self
            .equal_degree(&linear_part, 1, &mut rng)
            .into_iter()
            .map(|lin| self.neg(lin[0]))
            .collect();
        roots.sort_unstable();
        roots
    }
}

fn merge_powers(mut v: Vec<(Poly, u32)>) -> Vec<(Poly, u32)> {
    v.sort();
    v
}

/// Ordering used to choose among irreducible factors: degree first, then the
/// coefficient vector compared from the constant term upward.
pub fn poly_order(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
