//! Partitions, hooks and e-cores, and generic degrees of unipotent characters.

mod symbols;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{multiplicative_order, Sign};

pub use symbols::{unipotent_degree_c, SymbolC};

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates `parts`; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// `n(λ) = Σ (i − 1) λ_i`.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// The beta-set `{λ_i + m − i}` with `m` beads, `m ≥ len`.
    pub fn beta_set(&self, m: usize) -> Vec<u32> {
        assert!(m >= self.len());
        (0..m)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + (m - 1 - i) as u32)
            .collect()
    }

    /// Inverse of [`Partition::beta_set`] for any set of distinct beads.
    pub fn from_beta_set(beads: &[u32]) -> Partition {
        let mut b = beads.to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let m = b.len();
        let parts = b.iter().enumerate().map(|(i, &x)| x - (m - 1 - i) as u32).collect();
        Partition::new(parts).expect("beads are distinct")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)`, `()` and the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::invalid(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

/// The e-core, by sliding abacus beads up their runners.
pub fn e_core(lambda: &Partition, e: u32) -> Result<Partition> {
    if e == 0 {
        return Err(Error::invalid("e must be at least 1"));
    }
    let beads = lambda.beta_set(lambda.len());
    let e = e as usize;
    let mut per_runner = vec![0u32; e];
    for &b in &beads {
        per_runner[b as usize % e] += 1;
    }
    let slid: Vec<u32> = per_runner
        .iter()
        .enumerate()
        .flat_map(|(r, &count)| (0..count).map(move |k| r as u32 + k * e as u32))
        .collect();
    Ok(Partition::from_beta_set(&slid))
}

/// Generic degree of the unipotent character `χ_λ` of `GL_n(q)` (`ε = +`)
/// or `GU_n(q)` (`ε = −`, by evaluating at `−q` and taking absolute values).
pub fn unipotent_degree_a(lambda: &Partition, q: u64, eps: Sign) -> Result<u128> {
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    let x = match eps {
        Sign::Plus => BigInt::from(q),
        Sign::Minus => -BigInt::from(q),
    };
    let one = BigInt::from(1);
    let mut num = x.pow(lambda.n_statistic());
    for i in 1..=lambda.size() {
        num *= x.pow(i) - &one;
    }
    let mut den = BigInt::from(1);
    for h in lambda.hook_lengths() {
        den *= x.pow(h) - &one;
    }
    let (quot, rem) = num.div_rem(&den);
    if rem != BigInt::from(0) {
        return Err(Error::verification(format!("degree of {lambda} at q={q} is not integral")));
    }
    u128::try_from(quot.magnitude()).map_err(|_| Error::Overflow("unipotent degree"))
}

/// Parameters of the principal-block criterion for `GL_n(q)` / `GU_n(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockParamsA {
    /// Multiplicative order of `εq` modulo `p`.
    pub e: u32,
    /// `n mod e`.
    pub r: u32,
}

impl BlockParamsA {
    pub fn new(n: u32, q: u64, p: u64, eps: Sign) -> Result<Self> {
        if q % p == 0 {
            return Err(Error::invalid(format!("p = {p} divides q = {q}")));
        }
        let eq = match eps {
            Sign::Plus => q % p,
            Sign::Minus => p - q % p,
        };
        let e = multiplicative_order(eq, p)
            .ok_or_else(|| Error::invalid(format!("{eq} is not a unit mod {p}")))? as u32;
        Ok(BlockParamsA { e, r: n % e })
    }
}

/// Whether `χ_λ` lies in the principal block: its e-core is `(r)`.
pub fn in_principal_block_a(lambda: &Partition, bp: BlockParamsA) -> Result<bool> {
    Ok(e_core(lambda, bp.e)? == Partition::row(bp.r))
}
