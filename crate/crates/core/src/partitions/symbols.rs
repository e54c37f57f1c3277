use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced symbol of defect 1 labelling a unipotent character of
/// `Sp_2n(q)`: the top row has one more entry than the bottom row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolC {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl SymbolC {
    /// Validates the rows and removes common shifts `(0 …/0 …)`.
    pub fn new(mut top: Vec<u32>, mut bottom: Vec<u32>) -> Result<Self> {
        if !strictly_increasing(&top) || !strictly_increasing(&bottom) {
            return Err(Error::invalid("symbol rows must be strictly increasing"));
        }
        if top.len() != bottom.len() + 1 {
            return Err(Error::Unsupported(format!(
                "symbols of defect {} (only defect 1 is supported)",
                top.len() as i64 - bottom.len() as i64
            )));
        }
        while top.first() == Some(&0) && bottom.first() == Some(&0) {
            top.remove(0);
            bottom.remove(0);
            top.iter_mut().for_each(|x| *x -= 1);
            bottom.iter_mut().for_each(|x| *x -= 1);
        }
        Ok(SymbolC { top, bottom })
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    /// `Σ entries − ⌊((a + b − 1)/2)²⌋`.
    pub fn rank(&self) -> u32 {
        let m = self.bottom.len() as u32;
        self.top.iter().sum::<u32>() + self.bottom.iter().sum::<u32>() - m * m
    }

    /// The symbol of the trivial character, `(n / −)`.
    pub fn trivial(n: u32) -> Self {
        SymbolC {
            top: vec![n],
            bottom: Vec::new(),
        }
    }

    /// The symbol of the Steinberg character, `(0 1 … n / 1 … n)`.
    pub fn steinberg(n: u32) -> Self {
        SymbolC {
            top: (0..=n).collect(),
            bottom: (1..=n).collect(),
        }
    }

    /// All reduced defect-1 symbols of rank `n`.
    pub fn all_of_rank(n: u32) -> Vec<SymbolC> {
        fn strict_sets(len: usize, sum: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if len == 0 {
                if sum == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            // The smallest possible sum of `len` distinct entries ≥ x.
            let min_sum = |x: u32| len as u32 * x + (len as u32 * (len as u32 - 1)) / 2;
            let mut x = min;
            while min_sum(x) <= sum {
                cur.push(x);
                strict_sets(len - 1, sum - x, x + 1, cur, out);
                cur.pop();
                x += 1;
            }
        }
        let mut out = Vec::new();
        for m in 0..=n {
            let total = n + m * m;
            for top_sum in 0..=total {
                let mut tops = Vec::new();
                strict_sets(m as usize + 1, top_sum, 0, &mut Vec::new(), &mut tops);
                if tops.is_empty() {
                    continue;
                }
                let mut bottoms = Vec::new();
                strict_sets(m as usize, total - top_sum, 0, &mut Vec::new(), &mut bottoms);
                for t in &tops {
                    for b in &bottoms {
                        if t.first() == Some(&0) && b.first() == Some(&0) {
                            continue;
                        }
                        out.push(SymbolC {
                            top: t.clone(),
                            bottom: b.clone(),
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Generic degree of the unipotent character of `Sp_2n(q)` labelled by
    /// this symbol, evaluated at `q`:
    ///
    /// ```text
    /// Π_{i=1..n}(q^{2i}−1) · Π_{λ'<λ}(q^λ−q^λ') · Π_{μ'<μ}(q^μ−q^μ') · Π_{λ,μ}(q^λ+q^μ)
    /// ─────────────────────────────────────────────────────────────────────────────────
    /// 2^m · Π_λ Π_{h≤λ}(q^{2h}−1) · Π_μ Π_{h≤μ}(q^{2h}−1) · q^{C(2m−1,2)+C(2m−3,2)+…}
    /// ```
    ///
    /// with `λ` over the top row, `μ` over the bottom row and `m` the length
    /// of the bottom row.
    pub fn degree(&self, q: u64) -> Result<u128> {
        if q < 2 {
            return Err(Error::invalid("q must be at least 2"));
        }
        let n = self.rank();
        let x = BigInt::from(q);
        let one = BigInt::from(1);
        let pw = |e: u32| x.pow(e);
        let mut num = BigInt::from(1);
        for i in 1..=n {
            num *= pw(2 * i) - &one;
        }
        for row in [&self.top, &self.bottom] {
            for (j, &a) in row.iter().enumerate() {
                for &b in &row[..j] {
                    num *= pw(a) - pw(b);
                }
            }
        }
        for &a in &self.top {
            for &b in &self.bottom {
                num *= pw(a) + pw(b);
            }
        }
        let m = self.bottom.len() as u32;
        let mut den = BigInt::from(1) << m;
        for &a in self.top.iter().chain(&self.bottom) {
            for h in 1..=a {
                den *= pw(2 * h) - &one;
            }
        }
        let q_exp: u32 = (1..=m).map(|j| (2 * j - 1) * (2 * j - 2) / 2).sum();
        den *= pw(q_exp);
        let (quot, rem) = num.div_rem(&den);
        if rem != BigInt::from(0) || quot <= BigInt::from(0) {
            return Err(Error::verification(format!("degree of {self} at q={q} is not a positive integer")));
        }
        u128::try_from(quot).map_err(|_| Error::Overflow("symbol degree"))
    }
}

impl fmt::Display for SymbolC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "({} / {})", row(&self.top), row(&self.bottom))
    }
}

/// Generic degree of the type C unipotent character labelled by `s`.
pub fn unipotent_degree_c(s: &SymbolC, n: u32, q: u64) -> Result<u128> {
    if s.rank() != n {
        return Err(Error::invalid(format!("{s} has rank {}, not {n}", s.rank())));
    }
    s.degree(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_reduction() {
        let s = SymbolC::new(vec![0, 2], vec![1]).unwrap();
        assert_eq!(s.rank(), 2);
        let shifted = SymbolC::new(vec![0, 1, 3], vec![0, 2]).unwrap();
        assert_eq!(shifted, s);
        assert!(SymbolC::new(vec![0, 1, 2], vec![]).is_err());
        assert!(SymbolC::new(vec![2, 1], vec![0]).is_err());
        assert_eq!(SymbolC::steinberg(3).rank(), 3);
        assert_eq!(SymbolC::trivial(3).rank(), 3);
    }

    #[test]
    fn symbol_counts() {
        assert_eq!(SymbolC::all_of_rank(1).len(), 2);
        assert_eq!(SymbolC::all_of_rank(2).len(), 5);
        for n in 1..=5 {
            for s in SymbolC::all_of_rank(n) {
                assert_eq!(s.rank(), n);
                assert_eq!(SymbolC::new(s.top().to_vec(), s.bottom().to_vec()).unwrap(), s);
            }
        }
    }

    #[test]
    fn degree_anchors() {
        for q in [2u64, 3, 4, 5, 7] {
            let q2 = q as u128;
            for n in 1..=4 {
                assert_eq!(SymbolC::trivial(n).degree(q).unwrap(), 1);
                assert_eq!(SymbolC::steinberg(n).degree(q).unwrap(), q2.pow(n * n));
            }
            // Rank 2: q(q+1)²/2 and twice q(q²+1)/2.
            let mut degs: Vec<u128> = SymbolC::all_of_rank(2).iter().map(|s| s.degree(q).unwrap()).collect();
            degs.sort();
            let mut expect = vec![1, q2 * (q2 * q2 + 1) / 2, q2 * (q2 * q2 + 1) / 2, q2 * (q2 + 1) * (q2 + 1) / 2, q2.pow(4)];
            expect.sort();
            assert_eq!(degs, expect);
        }
        let s = SymbolC::new(vec![0, 2], vec![1]).unwrap();
        assert_eq!(unipotent_degree_c(&s, 2, 3).unwrap(), 24);
        assert!(unipotent_degree_c(&s, 3, 3).is_err());
        assert_eq!(s.to_string(), "(0 2 / 1)");
    }
}
