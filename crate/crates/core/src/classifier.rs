//! Decision procedures for "every degree in the principal block is a prime
//! power": single pairs, the `PSL_2` family scan, and explicit groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::block_partition;
use crate::chartable::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::groups::named_group;
use crate::lietype::{defining_char_b0, group_order, psl2_b0_upper, FamilySpec};
use crate::numtheory::{fermat_or_mersenne, is_one_or_prime_power, is_prime, is_prime_power, prime_divisors, FermatMersenneTag};
use crate::permgroup::{PermutationGroup, DEFAULT_ELEMENT_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Oracle,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Oracle => "oracle",
            Method::Both => "both",
        })
    }
}

/// The five cases of the `PSL_2` classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremACase {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl fmt::Display for TheoremACase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremACase::I => "(i)",
            TheoremACase::Ii => "(ii)",
            TheoremACase::Iii => "(iii)",
            TheoremACase::Iv => "(iv)",
            TheoremACase::V => "(v)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub subject: String,
    pub p: u64,
    pub accepted: bool,
    /// False when only an upper bound was available and it contained a
    /// non-prime-power degree.
    pub conclusive: bool,
    pub cd_b0: Vec<u64>,
    pub method: Method,
    pub prime_divisors: Vec<u64>,
    pub theorem_a_case: Option<TheoremACase>,
    /// Least non-prime-power degree of a conclusive rejection.
    pub witness: Option<u64>,
}

impl PairVerdict {
    fn new(subject: String, p: u64, cd: &BTreeSet<u64>, method: Method, exact: bool, case: Option<TheoremACase>) -> Self {
        let bad = cd.iter().copied().find(|&d| !is_one_or_prime_power(d));
        PairVerdict {
            subject,
            p,
            accepted: bad.is_none(),
            conclusive: exact || bad.is_none(),
            cd_b0: cd.iter().copied().collect(),
            method,
            prime_divisors: prime_count(cd).into_iter().collect(),
            theorem_a_case: case,
            witness: if exact { bad } else { None },
        }
    }

    /// `accepted` agrees with the degrees and `prime_divisors` with `cd_b0`.
    pub fn is_consistent(&self) -> bool {
        let cd: BTreeSet<u64> = self.cd_b0.iter().copied().collect();
        self.accepted == cd.iter().all(|&d| is_one_or_prime_power(d))
            && self.prime_divisors == prime_count(&cd).into_iter().collect::<Vec<_>>()
    }
}

/// Union of the prime divisors of the entries.
pub fn prime_count(cd: &BTreeSet<u64>) -> BTreeSet<u64> {
    cd.iter().flat_map(|&d| prime_divisors(d)).collect()
}

/// Which case of the classification lists `(spec, p)`, if any. `spec` must
/// be a rank-one family; `PSL_2(5)` is not canonical and never listed.
pub fn theorem_a_case(spec: &FamilySpec, p: u64) -> Option<TheoremACase> {
    if !spec.is_rank_one() || !is_prime(p) {
        return None;
    }
    let order = group_order(spec).ok()?;
    if order % p as u128 != 0 {
        return None;
    }
    let q = spec.q;
    match q {
        4 => return Some(TheoremACase::Iv),
        8 => return Some(TheoremACase::Iii),
        9 => return (p == 5).then_some(TheoremACase::V),
        5 => return None,
        _ => {}
    }
    if q % 2 == 1 {
        let prime_fm = is_prime(q) && fermat_or_mersenne(q).tag != FermatMersenneTag::Neither;
        return (prime_fm && p != 2 && p != q).then_some(TheoremACase::I);
    }
    [q - 1, q + 1]
        .into_iter()
        .find(|&r| is_prime(r))
        .filter(|&r| p != 2 && p != r)
        .map(|_| TheoremACase::Ii)
}

/// The listed pairs with `q ≤ q_bound`, enumerated case by case.
pub fn theorem_a_expected(q_bound: u64) -> Result<Vec<(FamilySpec, u64, TheoremACase)>> {
    let mut out = Vec::new();
    let odd_primes = |spec: &FamilySpec, skip: &[u64]| -> Result<Vec<u64>> {
        let order = u64::try_from(group_order(spec)?).map_err(|_| Error::Overflow("group order"))?;
        Ok(prime_divisors(order).into_iter().filter(|p| !skip.contains(p)).collect())
    };
    // (i): Fermat or Mersenne primes q > 5.
    for q in (7..=q_bound).filter(|&q| is_prime(q)) {
        if fermat_or_mersenne(q).tag != FermatMersenneTag::Neither {
            let s = FamilySpec::psl2(q)?;
            for p in odd_primes(&s, &[2, q])? {
                out.push((s, p, TheoremACase::I));
            }
        }
    }
    // (ii): q = 2^n ≥ 16 with 2^n ± 1 prime.
    let mut q = 16u64;
    while q <= q_bound {
        if let Some(r) = [q - 1, q + 1].into_iter().find(|&r| is_prime(r)) {
            let s = FamilySpec::psl2(q)?;
            for p in odd_primes(&s, &[2, r])? {
                out.push((s, p, TheoremACase::Ii));
            }
        }
        q *= 2;
    }
    let fixed: [(u64, &[u64], TheoremACase); 3] = [
        (8, &[2, 3, 5, 7], TheoremACase::Iii),
        (4, &[2, 3, 5], TheoremACase::Iv),
        (9, &[5], TheoremACase::V),
    ];
    for (q, ps, case) in fixed {
        if q <= q_bound {
            let s = FamilySpec::psl2(q)?;
            let order = group_order(&s)?;
            for &p in ps.iter().filter(|&&p| order % p as u128 == 0) {
                out.push((s, p, case));
            }
        }
    }
    out.sort_by_key(|(s, p, _)| (s.q, *p));
    Ok(out)
}

fn closed_form(spec: &FamilySpec, p: u64) -> Result<PairVerdict> {
    if !spec.is_rank_one() {
        return Err(Error::Unsupported(format!("closed-form principal block degrees for {spec}")));
    }
    let case = theorem_a_case(spec, p);
    if p == spec.characteristic() {
        let cd = defining_char_b0(spec)?;
        return Ok(PairVerdict::new(spec.to_string(), p, &cd, Method::ClosedForm, true, case));
    }
    let cd = psl2_b0_upper(spec.q, p)?;
    Ok(PairVerdict::new(spec.to_string(), p, &cd, Method::ClosedForm, false, case))
}

fn oracle(subject: String, t: &CharacterTable, p: u64, case: Option<TheoremACase>) -> Result<PairVerdict> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let cd = block_partition(t, p)?.cd_b0(t);
    Ok(PairVerdict::new(subject, p, &cd, Method::Oracle, true, case))
}

/// Merges a closed-form and an oracle verdict, listing any disagreement.
fn combine(cf: PairVerdict, or: PairVerdict) -> (PairVerdict, Vec<String>) {
    let mut issues = Vec::new();
    let upper: BTreeSet<u64> = cf.cd_b0.iter().copied().collect();
    if !or.cd_b0.iter().all(|d| upper.contains(d)) {
        issues.push(format!(
            "{} p={}: oracle cd(B0) {:?} not inside the closed-form bound {:?}",
            or.subject, or.p, or.cd_b0, cf.cd_b0
        ));
    }
    if cf.conclusive && cf.accepted != or.accepted {
        issues.push(format!("{} p={}: closed form and oracle disagree on acceptance", or.subject, or.p));
    }
    if cf.conclusive && cf.witness.is_some() && cf.cd_b0 != or.cd_b0 {
        issues.push(format!("{} p={}: exact closed-form set differs from the oracle", or.subject, or.p));
    }
    (PairVerdict { method: Method::Both, ..or }, issues)
}

fn check_pair_spec(spec: &FamilySpec, p: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let order = group_order(spec)?;
    if order % p as u128 != 0 {
        return Err(Error::invalid(format!("{p} does not divide |{spec}| = {order}")));
    }
    Ok(order)
}

/// Decides one pair. With [`Method::Both`] a disagreement between the two
/// routes is an error.
pub fn verify_pair(spec: &FamilySpec, p: u64, method: Method) -> Result<PairVerdict> {
    check_pair_spec(spec, p)?;
    let by_oracle = || -> Result<PairVerdict> {
        let t = character_table(&named_group(&spec.to_string())?)?;
        oracle(spec.to_string(), &t, p, theorem_a_case(spec, p))
    };
    match method {
        Method::ClosedForm => closed_form(spec, p),
        Method::Oracle => by_oracle(),
        Method::Both => {
            let (v, issues) = combine(closed_form(spec, p)?, by_oracle()?);
            if issues.is_empty() {
                Ok(v)
            } else {
                Err(Error::verification(issues.join("; ")))
            }
        }
    }
}

/// Oracle verdict for an explicit group. An accepted verdict with more than
/// three primes dividing the degrees is reported as a verification failure.
pub fn hypothesis_check(subject: &str, g: &PermutationGroup, p: u64) -> Result<PairVerdict> {
    let t = character_table(g)?;
    hypothesis_check_table(subject, &t, p)
}

pub fn hypothesis_check_table(subject: &str, t: &CharacterTable, p: u64) -> Result<PairVerdict> {
    let v = oracle(subject.to_string(), t, p, None)?;
    if v.accepted && v.prime_divisors.len() > 3 {
        return Err(Error::verification(format!(
            "{subject} p={p}: accepted with {} primes {:?}",
            v.prime_divisors.len(),
            v.prime_divisors
        )));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub q_bound: u64,
    pub oracle: bool,
    pub verdicts: Vec<PairVerdict>,
    /// `(subject, p)` of every accepted verdict.
    pub accepted: Vec<(String, u64)>,
    /// `(subject, p)` of every listed pair within the bound.
    pub expected: Vec<(String, u64)>,
    /// Pairs left undecided by the closed form.
    pub inconclusive: usize,
    pub failures: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Smallest admissible scan bound.
pub const MIN_Q_BOUND: u64 = 4;

/// Verifies every pair `(PSL_2(q), p)` with `4 ≤ q ≤ q_bound`, `q ≠ 5`
/// (`PSL_2(5) ≅ SL_2(4)`) and `p` dividing the order, and compares the
/// accepted pairs with the listed ones. With `oracle`, pairs whose group fits
/// the element bound are also decided from the character table.
pub fn scan_theorem_a(q_bound: u64, use_oracle: bool) -> Result<ScanReport> {
    if q_bound < MIN_Q_BOUND {
        return Err(Error::invalid(format!("q bound {q_bound} is below {MIN_Q_BOUND}")));
    }
    let qs: Vec<u64> = (MIN_Q_BOUND..=q_bound).filter(|&q| q != 5 && is_prime_power(q).is_some()).collect();
    let per_q: Vec<Result<(Vec<PairVerdict>, Vec<String>)>> = qs
        .par_iter()
        .map(|&q| {
            let spec = FamilySpec::psl2(q)?;
            let order = group_order(&spec)?;
            let primes = prime_divisors(u64::try_from(order).map_err(|_| Error::Overflow("group order"))?);
            let table = if use_oracle && order <= DEFAULT_ELEMENT_BOUND as u128 {
                Some(character_table(&named_group(&spec.to_string())?)?)
            } else {
                None
            };
            let mut verdicts = Vec::new();
            let mut issues = Vec::new();
            for p in primes {
                let cf = closed_form(&spec, p)?;
                match &table {
                    Some(t) => {
                        let or = oracle(spec.to_string(), t, p, cf.theorem_a_case)?;
                        let (v, mut found) = combine(cf, or);
                        issues.append(&mut found);
                        verdicts.push(v);
                    }
                    None => verdicts.push(cf),
                }
            }
            Ok((verdicts, issues))
        })
        .collect();
    let mut verdicts = Vec::new();
    let mut failures = Vec::new();
    for r in per_q {
        let (mut v, mut f) = r?;
        verdicts.append(&mut v);
        failures.append(&mut f);
    }

    for v in &verdicts {
        if !v.is_consistent() {
            failures.push(format!("{} p={}: inconsistent verdict record", v.subject, v.p));
        }
        if v.accepted && v.prime_divisors.len() != 2 {
            failures.push(format!("{} p={}: accepted with primes {:?}, not exactly two", v.subject, v.p, v.prime_divisors));
        }
        if v.accepted && v.prime_divisors.len() > 3 {
            failures.push(format!("{} p={}: more than three primes", v.subject, v.p));
        }
        if v.method != Method::ClosedForm && v.cd_b0.len() < 3 {
            failures.push(format!("{} p={}: fewer than three degrees in cd(B0)", v.subject, v.p));
        }
        if v.accepted != v.theorem_a_case.is_some() && v.conclusive {
            failures.push(format!(
                "{} p={}: accepted={} but listed case {:?}",
                v.subject, v.p, v.accepted, v.theorem_a_case
            ));
        }
    }

    let accepted: Vec<(String, u64)> = verdicts.iter().filter(|v| v.accepted).map(|v| (v.subject.clone(), v.p)).collect();
    let expected: Vec<(String, u64)> = theorem_a_expected(q_bound)?.into_iter().map(|(s, p, _)| (s.to_string(), p)).collect();
    let as_set = |v: &[(String, u64)]| v.iter().cloned().collect::<BTreeSet<_>>();
    if as_set(&accepted) != as_set(&expected) {
        let missing: Vec<_> = as_set(&expected).difference(&as_set(&accepted)).cloned().collect();
        let extra: Vec<_> = as_set(&accepted).difference(&as_set(&expected)).cloned().collect();
        failures.push(format!("accepted set differs from the list: missing {missing:?}, extra {extra:?}"));
    }
    let inconclusive = verdicts.iter().filter(|v| !v.conclusive).count();
    Ok(ScanReport {
        q_bound,
        oracle: use_oracle,
        verdicts,
        accepted,
        expected,
        inconclusive,
        failures,
    })
}

/// Verdicts grouped by case tag, for display.
pub fn by_case(report: &ScanReport) -> BTreeMap<TheoremACase, Vec<&PairVerdict>> {
    let mut out: BTreeMap<TheoremACase, Vec<&PairVerdict>> = BTreeMap::new();
    for v in report.verdicts.iter().filter(|v| v.accepted) {
        if let Some(c) = v.theorem_a_case {
            out.entry(c).or_default().push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn prime_counts() {
        assert_eq!(prime_count(&set(&[1, 16, 17])), set(&[2, 17]));
        assert_eq!(prime_count(&set(&[1])), set(&[]));
        assert_eq!(prime_count(&set(&[1, 8, 9])), set(&[2, 3]));
    }

    #[test]
    fn expected_list_up_to_32() {
        // Written out by hand from the five cases.
        let hand: BTreeSet<(String, u64)> = [
            ("PSL2(7)", 3),
            ("PSL2(17)", 3),
            ("PSL2(31)", 3),
            ("PSL2(31)", 5),
            ("SL2(16)", 3),
            ("SL2(16)", 5),
            ("SL2(32)", 3),
            ("SL2(32)", 11),
            ("SL2(8)", 2),
            ("SL2(8)", 3),
            ("SL2(8)", 7),
            ("SL2(4)", 2),
            ("SL2(4)", 3),
            ("SL2(4)", 5),
            ("PSL2(9)", 5),
        ]
        .into_iter()
        .map(|(s, p)| (s.to_string(), p))
        .collect();
        let got: BTreeSet<(String, u64)> =
            theorem_a_expected(32).unwrap().into_iter().map(|(s, p, _)| (s.to_string(), p)).collect();
        assert_eq!(got, hand);
        // The predicate and the enumeration agree.
        for (s, p, case) in theorem_a_expected(64).unwrap() {
            assert_eq!(theorem_a_case(&s, p), Some(case));
        }
        let q4: Vec<_> = theorem_a_expected(4).unwrap().into_iter().map(|(_, _, c)| c).collect();
        assert_eq!(q4, vec![TheoremACase::Iv; 3]);
    }

    #[test]
    fn closed_form_pairs() {
        let v = verify_pair(&FamilySpec::psl2(17).unwrap(), 3, Method::ClosedForm).unwrap();
        assert!(v.accepted && v.conclusive);
        assert_eq!(v.cd_b0, vec![1, 16, 17]);
        assert_eq!(v.prime_divisors, vec![2, 17]);
        let v = verify_pair(&FamilySpec::psl2(9).unwrap(), 3, Method::ClosedForm).unwrap();
        assert!(!v.accepted && v.conclusive);
        assert_eq!(v.witness, Some(10));
        let v = verify_pair(&FamilySpec::psl2(11).unwrap(), 3, Method::ClosedForm).unwrap();
        assert!(!v.accepted && !v.conclusive && v.witness.is_none());
        assert!(verify_pair(&FamilySpec::psl2(7).unwrap(), 5, Method::ClosedForm).is_err());
        assert!(verify_pair(&"PSp4(3)".parse().unwrap(), 5, Method::ClosedForm).is_err());
    }

    #[test]
    fn oracle_pairs() {
        let v = verify_pair(&FamilySpec::psl2(4).unwrap(), 3, Method::Both).unwrap();
        assert!(v.accepted);
        assert_eq!(v.prime_divisors, vec![2, 5]);
        assert_eq!(v.theorem_a_case, Some(TheoremACase::Iv));
        let v = verify_pair(&FamilySpec::psl2(9).unwrap(), 5, Method::Both).unwrap();
        assert!(v.accepted);
        assert_eq!(v.cd_b0, vec![1, 8, 9]);
        let v = verify_pair(&FamilySpec::psl2(9).unwrap(), 3, Method::Oracle).unwrap();
        assert!(!v.accepted);
        assert!(v.witness.is_some_and(|d| !is_one_or_prime_power(d)));
    }

    #[test]
    fn explicit_groups() {
        let v = hypothesis_check("SL2(8)", &named_group("SL2(8)").unwrap(), 7).unwrap();
        assert!(v.accepted);
        assert_eq!(v.prime_divisors, vec![2, 3]);
        let v = hypothesis_check("S4", &named_group("S4").unwrap(), 2).unwrap();
        assert!(v.accepted && v.prime_divisors.len() <= 2);
        let v = hypothesis_check("C6", &named_group("C6").unwrap(), 3).unwrap();
        assert_eq!(v.cd_b0, vec![1]);
        assert!(v.accepted);
    }

    #[test]
    fn scan_small_bounds() {
        let r = scan_theorem_a(9, true).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.inconclusive, 0);
        let r = scan_theorem_a(17, false).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.accepted.contains(&("SL2(16)".into(), 3)) && r.accepted.contains(&("SL2(16)".into(), 5)));
        let r = scan_theorem_a(4, false).unwrap();
        assert_eq!(r.accepted.len(), 3);
        assert!(scan_theorem_a(3, false).is_err());
    }
}
