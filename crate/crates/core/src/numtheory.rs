//! Integer number theory: primality, factorization, prime powers,
//! primitive prime divisors and the two scanning lemmas about powers of two.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::cyclotomic_polynomial;
use crate::error::{Error, Result};

/// A prime power `prime^exponent` with `exponent >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u128 {
        (self.prime as u128).pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.exponent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FermatMersenneTag {
    Fermat,
    Mersenne,
    Neither,
}

/// Classification of an integer as a Fermat prime `2^k + 1`, a Mersenne
/// prime `2^k - 1`, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatMersenneClass {
    pub tag: FermatMersenneTag,
    pub witness: Option<u32>,
}

/// Which of `q^n - 1` / `q^n + 1` a primitive divisor is sought for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            other => Err(Error::invalid(format!("unknown sign {other:?}"))),
        }
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

// First 13 primes: deterministic below 3.3 * 10^24, so on all of u64.
const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic Miller-Rabin.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    // Brent's variant with a deterministic sequence of constants.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && d == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                d = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if d == n {
            loop {
                ys = f(ys);
                d = x.abs_diff(ys).gcd(&n);
                if d > 1 {
                    break;
                }
            }
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0)");
    let mut primes = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if k == 1 {
            continue;
        }
        if is_prime(k) {
            primes.push(k);
            continue;
        }
        let d = pollard_rho(k);
        stack.push(d);
        stack.push(k / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Exponent of the prime `p` in `n` (`n > 0`).
pub fn valuation(mut n: u128, p: u64) -> u32 {
    assert!(n > 0 && p > 1);
    let p = p as u128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u64) -> u128 {
    (p as u128).pow(valuation(n, p))
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `a` modulo `m`; `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let mut ord = euler_phi(m);
    for (p, _) in factorize(ord) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`; `None` otherwise,
/// including for `n = 1`.
pub fn is_prime_power(n: u64) -> Option<PrimePower> {
    if n < 2 {
        return None;
    }
    match factorize(n).as_slice() {
        [(p, k)] => Some(PrimePower {
            prime: *p,
            exponent: *k,
        }),
        _ => None,
    }
}

/// 1 or a prime power.
pub fn is_one_or_prime_power(n: u64) -> bool {
    n == 1 || is_prime_power(n).is_some()
}

fn eval_cyclotomic(m: u64, q: u64) -> Result<u128> {
    let phi = cyclotomic_polynomial(m);
    let q = q as i128;
    let mut acc: i128 = 0;
    for &c in phi.iter().rev() {
        acc = acc
            .checked_mul(q)
            .and_then(|v| v.checked_add(c as i128))
            .ok_or(Error::Overflow("cyclotomic evaluation"))?;
    }
    u128::try_from(acc).map_err(|_| Error::Overflow("cyclotomic evaluation"))
}

/// Smallest primitive prime divisor of `q^n - 1` (resp. `q^n + 1`).
///
/// For [`Sign::Minus`] the result `z` divides `q^n - 1` and no `q^m - 1`
/// with `m < n`; for [`Sign::Plus`] it divides `q^n + 1` and no `q^m + 1`
/// with `m < n`. Such primes are exactly those with `ord_z(q) = n`
/// (resp. `2n`), and all of them divide `Φ_n(q)` (resp. `Φ_{2n}(q)`).
/// Returns `Ok(None)` only in the classical exceptions: `(q, n) = (2, 6)` or
/// `n = 2` with `q + 1` a power of two for the minus sign, `(q, n) = (2, 3)`
/// for the plus sign.
pub fn zsigmondy_prime(q: u64, n: u32, sign: Sign) -> Result<Option<u64>> {
    if n < 2 {
        return Err(Error::invalid(format!("zsigmondy_prime needs n >= 2, got {n}")));
    }
    if q < 2 {
        return Err(Error::invalid(format!("zsigmondy_prime needs q >= 2, got {q}")));
    }
    let target = match sign {
        Sign::Minus => n as u64,
        Sign::Plus => 2 * n as u64,
    };
    let value = eval_cyclotomic(target, q)?;
    let value = u64::try_from(value).map_err(|_| Error::Overflow("zsigmondy_prime"))?;
    Ok(prime_divisors(value)
        .into_iter()
        .find(|&z| multiplicative_order(q % z, z) == Some(target)))
}

/// True exactly for the parameter triples where no primitive prime divisor exists.
pub fn is_zsigmondy_exception(q: u64, n: u32, sign: Sign) -> bool {
    match sign {
        Sign::Minus => (q == 2 && n == 6) || (n == 2 && (q + 1).is_power_of_two()),
        Sign::Plus => q == 2 && n == 3,
    }
}

pub fn fermat_or_mersenne(q: u64) -> FermatMersenneClass {
    let neither = FermatMersenneClass {
        tag: FermatMersenneTag::Neither,
        witness: None,
    };
    if q < 2 || !is_prime(q) {
        return neither;
    }
    // 3 is both 2^1 + 1 and 2^2 - 1; the Fermat reading wins.
    if (q - 1).is_power_of_two() && q > 2 {
        return FermatMersenneClass {
            tag: FermatMersenneTag::Fermat,
            witness: Some((q - 1).trailing_zeros()),
        };
    }
    if (q + 1).is_power_of_two() {
        return FermatMersenneClass {
            tag: FermatMersenneTag::Mersenne,
            witness: Some((q + 1).trailing_zeros()),
        };
    }
    neither
}

/// All `(q, n, s)` with `q` an odd prime `<= q_bound`, `1 <= n <= n_bound`,
/// `1 <= s <= s_bound` and `q^n + 1 = 2^s`.
pub fn catalan_solutions(q_bound: u64, n_bound: u32, s_bound: u32) -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    for q in primes_up_to(q_bound).into_iter().filter(|&q| q > 2) {
        let mut power: u128 = 1;
        for n in 1..=n_bound {
            power = match power.checked_mul(q as u128) {
                Some(v) => v,
                None => break,
            };
            let Some(target) = power.checked_add(1) else { break };
            if target.is_power_of_two() {
                let s = target.trailing_zeros();
                if s >= 1 && s <= s_bound {
                    out.push((q, n, s));
                }
            }
            if s_bound < 127 && target > (1u128 << s_bound) {
                break;
            }
        }
    }
    out
}

/// All `q = 2^k` with `2 <= k <= exp_bound` such that `q - 1` and `q + 1`
/// are both prime powers.
pub fn scan_even_neighbors(exp_bound: u32) -> Result<Vec<u64>> {
    if exp_bound < 2 {
        return Err(Error::invalid("scan_even_neighbors needs exp_bound >= 2"));
    }
    if exp_bound > 62 {
        return Err(Error::Overflow("scan_even_neighbors"));
    }
    Ok((2..=exp_bound)
        .map(|k| 1u64 << k)
        .filter(|&q| is_prime_power(q - 1).is_some() && is_prime_power(q + 1).is_some())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_examples() {
        assert_eq!(
            is_prime_power(8),
            Some(PrimePower {
                prime: 2,
                exponent: 3
            })
        );
        assert_eq!(is_prime_power(1), None);
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(97).map(|p| p.exponent), Some(1));
    }

    #[test]
    fn prime_power_round_trip() {
        for p in primes_up_to(100) {
            for k in 1..=10u32 {
                let Some(n) = p.checked_pow(k) else { continue };
                assert_eq!(
                    is_prime_power(n),
                    Some(PrimePower {
                        prime: p,
                        exponent: k
                    })
                );
            }
        }
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve: std::collections::HashSet<u64> = primes_up_to(20_000).into_iter().collect();
        for n in 0..20_000 {
            assert_eq!(is_prime(n), sieve.contains(&n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in [1u64, 2, 60, 360, 25920, 600_851_475_143, 18_446_744_073_709_551_615, 999_999_000_001 * 7] {
            let f = factorize(n);
            let back: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(back, n as u128);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_prime(2, 6, Sign::Minus).unwrap(), None);
        assert_eq!(zsigmondy_prime(2, 3, Sign::Plus).unwrap(), None);
        assert_eq!(zsigmondy_prime(2, 4, Sign::Minus).unwrap(), Some(5));
        assert_eq!(zsigmondy_prime(3, 2, Sign::Minus).unwrap(), None);
        assert_eq!(zsigmondy_prime(7, 2, Sign::Minus).unwrap(), None);
        assert_eq!(zsigmondy_prime(5, 2, Sign::Minus).unwrap(), Some(3));
        assert!(zsigmondy_prime(5, 1, Sign::Minus).is_err());
    }

    #[test]
    fn zsigmondy_orders() {
        for q in 2..=50u64 {
            for n in 2..=12u32 {
                for sign in [Sign::Minus, Sign::Plus] {
                    let z = zsigmondy_prime(q, n, sign).unwrap();
                    assert_eq!(z.is_none(), is_zsigmondy_exception(q, n, sign), "{q} {n} {sign:?}");
                    if let Some(z) = z {
                        let want = if sign == Sign::Minus { n as u64 } else { 2 * n as u64 };
                        assert_eq!(multiplicative_order(q % z, z), Some(want));
                    }
                }
            }
        }
    }

    #[test]
    fn fermat_mersenne_examples() {
        assert_eq!(
            fermat_or_mersenne(5),
            FermatMersenneClass {
                tag: FermatMersenneTag::Fermat,
                witness: Some(2)
            }
        );
        assert_eq!(
            fermat_or_mersenne(7),
            FermatMersenneClass {
                tag: FermatMersenneTag::Mersenne,
                witness: Some(3)
            }
        );
        assert_eq!(fermat_or_mersenne(11).tag, FermatMersenneTag::Neither);
        assert_eq!(fermat_or_mersenne(9).tag, FermatMersenneTag::Neither);
        assert_eq!(fermat_or_mersenne(2).tag, FermatMersenneTag::Neither);
        assert_eq!(fermat_or_mersenne(65537).witness, Some(16));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_solutions(10, 5, 10), vec![(3, 1, 2), (7, 1, 3)]);
        assert!(catalan_solutions(2, 5, 5).is_empty());
        let big = catalan_solutions(1000, 20, 30);
        assert!(!big.is_empty());
        assert!(big.iter().all(|&(_, n, _)| n == 1));
    }

    #[test]
    fn even_neighbor_examples() {
        assert_eq!(scan_even_neighbors(20).unwrap(), vec![4, 8]);
        assert_eq!(scan_even_neighbors(2).unwrap(), vec![4]);
        assert_eq!(scan_even_neighbors(3).unwrap(), vec![4, 8]);
        assert!(scan_even_neighbors(1).is_err());
    }

    #[test]
    fn orders_and_parts() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(valuation(2448, 3), 2);
        assert_eq!(p_part(25920, 3), 81);
        assert_eq!(euler_phi(7440), 1920);
        assert_eq!(inv_mod(3, 7), Some(5));
    }
}
