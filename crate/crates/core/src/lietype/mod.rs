//! Closed-form data for the simple groups `PSL_n(q)`, `PSU_n(q)`,
//! `PSp_2n(q)` and `SL_2(2^k)`.

mod gf;
mod models;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime_power, p_part, valuation, Sign};

pub use gf::GaloisField;
pub use models::{alternating_group, cyclic_group, projective_linear_group, projective_symplectic_group, symmetric_group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "PSL")]
    Psl,
    #[serde(rename = "PSU")]
    Psu,
    #[serde(rename = "PSp")]
    Psp,
    #[serde(rename = "SL2even")]
    Sl2Even,
}

/// A simple group of Lie type. For `Psp`, `n` is the half-dimension, so
/// `PSp_4(q)` has `n = 2`. For `Sl2Even`, `n` is 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub q: u64,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32, q: u64) -> Result<Self> {
        let pp = is_prime_power(q).ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))?;
        let bad = |why: &str| Err(Error::invalid(format!("{why}: {family:?} n={n} q={q}")));
        match family {
            Family::Psl => {
                if n < 2 {
                    return bad("rank too small");
                }
                if (n == 2 && q < 4) || (n == 2 && q % 2 == 0) {
                    return bad("PSL_2 needs odd q >= 5 (even q is SL2even)");
                }
            }
            Family::Psu => {
                if n < 3 || (n == 3 && q == 2) {
                    return bad("PSU needs n >= 3 and is not simple for (3, 2)");
                }
            }
            Family::Psp => {
                if n < 2 || (n == 2 && q == 2) {
                    return bad("PSp_2n needs n >= 2 and PSp_4(2) is not simple");
                }
            }
            Family::Sl2Even => {
                if n != 2 || pp.prime != 2 || q < 4 {
                    return bad("SL2even needs q = 2^k >= 4");
                }
            }
        }
        Ok(FamilySpec { family, n, q })
    }

    /// `PSL_2(q)` for odd `q`, `SL_2(q)` for even `q`.
    pub fn psl2(q: u64) -> Result<Self> {
        if q % 2 == 0 {
            Self::new(Family::Sl2Even, 2, q)
        } else {
            Self::new(Family::Psl, 2, q)
        }
    }

    pub fn characteristic(&self) -> u64 {
        is_prime_power(self.q).expect("validated").prime
    }

    pub fn epsilon(&self) -> Sign {
        if self.family == Family::Psu {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_rank_one(&self) -> bool {
        matches!(self.family, Family::Psl | Family::Sl2Even) && self.n == 2
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Psl => write!(f, "PSL{}({})", self.n, self.q),
            Family::Psu => write!(f, "PSU{}({})", self.n, self.q),
            Family::Psp => write!(f, "PSp{}({})", 2 * self.n, self.q),
            Family::Sl2Even => write!(f, "SL2({})", self.q),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses names such as `PSL2(7)`, `SL2(8)`, `PSU3(3)`, `PSp4(3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("unrecognized group name {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        let close = s.strip_suffix(')').ok_or_else(bad)?;
        let q: u64 = close[open + 1..].trim().parse().map_err(|_| bad())?;
        let head = &s[..open];
        let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let dim: u32 = head[split..].parse().map_err(|_| bad())?;
        match &head[..split] {
            "PSL" | "L" if dim == 2 && q % 2 == 0 => Self::new(Family::Sl2Even, 2, q),
            "PSL" | "L" => Self::new(Family::Psl, dim, q),
            "SL" if dim == 2 && q % 2 == 0 => Self::new(Family::Sl2Even, 2, q),
            "PSU" | "U" => Self::new(Family::Psu, dim, q),
            "PSp" | "S" if dim % 2 == 0 => Self::new(Family::Psp, dim / 2, q),
            _ => Err(bad()),
        }
    }
}

fn checked_pow(q: u64, e: u32) -> Result<u128> {
    (q as u128).checked_pow(e).ok_or(Error::Overflow("group order"))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow("group order"))
}

pub fn group_order(f: &FamilySpec) -> Result<u128> {
    let q = f.q;
    let n = f.n;
    let order = match f.family {
        Family::Psl | Family::Psu => {
            let minus = f.family == Family::Psu;
            let mut acc = checked_pow(q, n * (n - 1) / 2)?;
            for i in 2..=n {
                let qi = checked_pow(q, i)?;
                let term = if minus && i % 2 == 1 { qi + 1 } else { qi - 1 };
                acc = mul(acc, term)?;
            }
            let d = if minus { (n as u64).gcd(&(q + 1)) } else { (n as u64).gcd(&(q - 1)) };
            acc / d as u128
        }
        Family::Psp => {
            let mut acc = checked_pow(q, n * n)?;
            for i in 1..=n {
                acc = mul(acc, checked_pow(q, 2 * i)? - 1)?;
            }
            acc / 2u64.gcd(&(q - 1)) as u128
        }
        Family::Sl2Even => mul(q as u128, (q as u128) * (q as u128) - 1)?,
    };
    Ok(order)
}

/// The degree of the Steinberg character, the `q`-part of the order.
pub fn steinberg_degree(f: &FamilySpec) -> Result<u128> {
    Ok(p_part(group_order(f)?, f.characteristic()))
}

/// Degrees of `PSL_2(q)` with multiplicities, `q ≥ 4`.
pub fn psl2_degree_multiset(q: u64) -> Result<Vec<(u64, u64)>> {
    let spec = FamilySpec::psl2(q)?;
    let out = if spec.family == Family::Sl2Even {
        vec![(1, 1), (q - 1, q / 2), (q, 1), (q + 1, (q - 2) / 2)]
    } else if q % 4 == 1 {
        vec![(1, 1), ((q + 1) / 2, 2), (q - 1, (q - 1) / 4), (q, 1), (q + 1, (q - 5) / 4)]
    } else {
        vec![(1, 1), ((q - 1) / 2, 2), (q - 1, (q - 3) / 4), (q, 1), (q + 1, (q - 3) / 4)]
    };
    Ok(out.into_iter().filter(|&(_, m)| m > 0).collect())
}

/// `cd(PSL_2(q))`: `{1, q, q+1, q−1, (q+δ)/2}` for odd `q` with `δ = ±1 ≡ q
/// (mod 4)`, and `{1, q, q+1, q−1}` for even `q`.
pub fn psl2_degree_set(q: u64) -> Result<BTreeSet<u64>> {
    Ok(psl2_degree_multiset(q)?.into_iter().map(|(d, _)| d).collect())
}

/// Same as [`psl2_degree_set`], named for the even-characteristic family.
pub fn sl2_even_degree_set(q: u64) -> Result<BTreeSet<u64>> {
    if q % 2 != 0 {
        return Err(Error::invalid(format!("{q} is odd")));
    }
    psl2_degree_set(q)
}

/// A superset of `cd(B_0(PSL_2(q)))`: all degrees except those of p-defect
/// zero. In defining characteristic this is [`defining_char_b0`].
pub fn psl2_b0_upper(q: u64, p: u64) -> Result<BTreeSet<u64>> {
    let spec = FamilySpec::psl2(q)?;
    let order = group_order(&spec)?;
    if order % p as u128 != 0 {
        return Err(Error::invalid(format!("{p} does not divide |{spec}| = {order}")));
    }
    if p == spec.characteristic() {
        return defining_char_b0(&spec);
    }
    let full = valuation(order, p);
    Ok(psl2_degree_set(q)?
        .into_iter()
        .filter(|&d| valuation(d as u128, p) != full)
        .collect())
}

/// `cd(B_0)` in defining characteristic: every degree but the Steinberg one.
pub fn defining_char_b0(f: &FamilySpec) -> Result<BTreeSet<u64>> {
    if !f.is_rank_one() {
        return Err(Error::Unsupported(format!("defining-characteristic block degrees for {f}")));
    }
    let mut set = psl2_degree_set(f.q)?;
    set.remove(&f.q);
    Ok(set)
}

/// The two prime-power unipotent degrees of `PSL_3(q)` / `PSU_3(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Psl3Degrees {
    pub steinberg: u128,
    /// `(q³ − ε)/(q − ε)`.
    pub other: u128,
    pub other_is_power_of_two: bool,
}

impl Psl3Degrees {
    pub fn set(&self) -> BTreeSet<u128> {
        [self.steinberg, self.other].into_iter().collect()
    }
}

pub fn psl3_prime_power_degrees(q: u64, eps: Sign) -> Result<Psl3Degrees> {
    if is_prime_power(q).is_none() {
        return Err(Error::invalid(format!("q = {q} is not a prime power")));
    }
    let q = q as u128;
    let q3 = q.checked_pow(3).ok_or(Error::Overflow("q^3"))?;
    let other = match eps {
        Sign::Plus => (q3 - 1) / (q - 1),
        Sign::Minus => (q3 + 1) / (q + 1),
    };
    Ok(Psl3Degrees {
        steinberg: q3,
        other,
        other_is_power_of_two: other.is_power_of_two(),
    })
}
