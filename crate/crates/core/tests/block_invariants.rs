//! Structural properties of principal blocks on the group corpus.

use blockdeg::blocks::{block_partition, block_partition_with};
use blockdeg::chartable::{character_table, character_table_with, CharacterTable, TableOptions};
use blockdeg::cyclotomic::ResidueMap;
use blockdeg::groups::named_group;
use blockdeg::lietype::psl2_b0_upper;
use blockdeg::numtheory::{is_one_or_prime_power, prime_divisors, Sign};
use blockdeg::partitions::{in_principal_block_a, unipotent_degree_a, BlockParamsA, Partition};
use blockdeg::permgroup::DEFAULT_ELEMENT_BOUND;

/// Nonabelian simple groups in the corpus.
const SIMPLE: &[&str] = &["A5", "A6", "PSL2(7)", "SL2(8)", "PSL2(11)", "PSL2(13)", "SL2(16)", "PSL2(17)", "PSp4(3)", "PSL3(3)"];

fn table(name: &str) -> CharacterTable {
    character_table(&named_group(name).unwrap()).unwrap()
}

fn primes_of(t: &CharacterTable) -> Vec<u64> {
    prime_divisors(t.group_order() as u64)
}

#[test]
fn defect_zero_characters_are_isolated() {
    for name in SIMPLE.iter().chain(&["S4", "S5", "C6"]) {
        let t = table(name);
        for p in primes_of(&t) {
            let b = block_partition(&t, p).unwrap();
            let blocks = b.blocks();
            for (chi, &d) in b.defects.iter().enumerate() {
                if d == 0 {
                    assert_eq!(blocks[b.block_of[chi]], vec![chi], "{name} p={p}");
                }
            }
            // Blocks partition the characters and start at their least member.
            let mut seen: Vec<usize> = blocks.iter().flatten().copied().collect();
            seen.sort();
            assert_eq!(seen, (0..t.num_characters()).collect::<Vec<_>>());
            for (i, members) in blocks.iter().enumerate() {
                assert_eq!(b.block_of[members[0]], i);
            }
            assert!(b.principal_block().contains(&0));
        }
    }
}

#[test]
fn principal_blocks_of_simple_groups_are_large() {
    for name in SIMPLE {
        let t = table(name);
        for p in primes_of(&t) {
            let b = block_partition(&t, p).unwrap();
            let cd = b.cd_b0(&t);
            assert!(cd.len() >= 3, "{name} p={p}: {cd:?}");
            if p >= 5 {
                let coprime = cd.iter().filter(|&&d| d % p != 0).count();
                assert!(coprime >= 3, "{name} p={p}: {cd:?}");
            }
            if p % 2 == 1 {
                assert!(cd.iter().any(|d| d % 2 == 0), "{name} p={p}: no even degree in {cd:?}");
            }
        }
    }
}

#[test]
fn psl2_blocks_lie_inside_the_closed_form_bound() {
    for q in [4u64, 7, 8, 9, 11, 13, 16, 17] {
        let name = blockdeg::lietype::FamilySpec::psl2(q).unwrap().to_string();
        let t = table(&name);
        for p in primes_of(&t) {
            let cd = block_partition(&t, p).unwrap().cd_b0(&t);
            let upper = psl2_b0_upper(q, p).unwrap();
            assert!(cd.is_subset(&upper), "{name} p={p}: {cd:?} ⊄ {upper:?}");
        }
    }
}

#[test]
fn prime_power_property_passes_to_normal_subgroups_and_quotients() {
    let s5 = named_group("S5").unwrap();
    let a5 = named_group("A5").unwrap();
    assert!(a5.is_normal_in(&s5));
    let c2 = s5.quotient(&a5, DEFAULT_ELEMENT_BOUND).unwrap();
    assert_eq!(c2.order(), 2);
    let (tg, tn, tq) = (character_table(&s5).unwrap(), character_table(&a5).unwrap(), character_table(&c2).unwrap());
    let all_pp = |t: &CharacterTable, p: u64| block_partition(t, p).unwrap().cd_b0(t).iter().all(|&d| is_one_or_prime_power(d));
    let mut premise_held = 0;
    for p in [2u64, 3, 5] {
        if all_pp(&tg, p) {
            premise_held += 1;
            assert!(all_pp(&tn, p), "p={p}: normal subgroup");
            assert!(all_pp(&tq, p), "p={p}: quotient");
        }
    }
    assert!(premise_held >= 1);
}

#[test]
fn partitions_are_independent_of_residue_factor_and_dixon_prime() {
    for name in ["A5", "S3", "PSL2(7)"] {
        let g = named_group(name).unwrap();
        let cl = g.conjugacy_classes().unwrap();
        let t = character_table_with(&cl, TableOptions::default()).unwrap();
        let t_alt = character_table_with(&cl, TableOptions { prime_index: 1 }).unwrap();
        for p in primes_of(&t) {
            let base = block_partition(&t, p).unwrap();
            assert_eq!(block_partition(&t_alt, p).unwrap(), base, "{name} p={p} alternate prime");
            let factors = ResidueMap::irreducible_factors(t.conductor, p).unwrap();
            for f in &factors {
                let m = ResidueMap::with_factor(t.conductor, p, f).unwrap();
                assert_eq!(block_partition_with(&t, &m).unwrap(), base, "{name} p={p} factor {f:?}");
            }
            // A residue map over a larger conductor gives the same answer.
            let m = ResidueMap::new(t.conductor * 7, p).unwrap();
            assert_eq!(block_partition_with(&t, &m).unwrap(), base);
        }
    }
}

#[test]
fn e_core_criterion_matches_psl3_2_at_p3() {
    let bp = BlockParamsA::new(3, 2, 3, Sign::Plus).unwrap();
    assert_eq!((bp.e, bp.r), (2, 1));
    let t = table("PSL2(7)");
    let cd = block_partition(&t, 3).unwrap().cd_b0(&t);
    for lambda in Partition::all(3) {
        let predicted = in_principal_block_a(&lambda, bp).unwrap();
        let degree = unipotent_degree_a(&lambda, 2, Sign::Plus).unwrap() as u64;
        assert_eq!(cd.contains(&degree), predicted, "{lambda} of degree {degree}");
    }
}

/// For `q ≡ ±3 (mod 8)` the Sylow 2-subgroup of `PSL_2(q)` is a Klein four
/// group, so the principal 2-block has exactly four characters of degrees
/// `1, q, (q+δ)/2, (q+δ)/2` with `1 + (q+δ)/2 + (q+δ)/2 = q + δ`.
#[test]
fn principal_2_blocks_with_klein_four_defect() {
    for q in [5u64, 11, 13, 19, 27, 29] {
        assert!(q % 8 == 3 || q % 8 == 5);
        let delta: i64 = if q % 4 == 1 { 1 } else { -1 };
        let half = ((q as i64 + delta) / 2) as u64;
        let spec = blockdeg::lietype::FamilySpec::psl2(q).unwrap();
        let g = if q == 5 { named_group("PSL2(5)") } else { named_group(&spec.to_string()) }.unwrap();
        let t = character_table(&g).unwrap();
        let b = block_partition(&t, 2).unwrap();
        let mut degrees: Vec<u64> = b.principal_block().iter().map(|&c| t.degrees[c]).collect();
        degrees.sort();
        let mut expect = vec![1, q, half, half];
        expect.sort();
        assert_eq!(degrees, expect, "q={q}");
        let accepted = degrees.iter().all(|&d| is_one_or_prime_power(d));
        assert_eq!(accepted, is_one_or_prime_power(half), "q={q}");
    }
}
