//! Closed-form degree data checked against computed character tables.

use std::collections::BTreeSet;

use blockdeg::chartable::character_table;
use blockdeg::groups::named_group;
use blockdeg::lietype::{
    group_order, projective_linear_group, psl2_degree_multiset, psl2_degree_set, psl3_prime_power_degrees,
    steinberg_degree, FamilySpec,
};
use blockdeg::numtheory::Sign;
use blockdeg::partitions::{unipotent_degree_a, unipotent_degree_c, Partition, SymbolC};

fn multiset(t: &blockdeg::chartable::CharacterTable) -> Vec<u64> {
    let mut d = t.degrees.clone();
    d.sort();
    d
}

#[test]
fn classical_degree_multisets() {
    let cases: [(&str, &[u64]); 5] = [
        ("A5", &[1, 3, 3, 4, 5]),
        ("S3", &[1, 1, 2]),
        ("PSL2(7)", &[1, 3, 3, 6, 7, 8]),
        ("A6", &[1, 5, 5, 8, 8, 9, 10]),
        // Four of degree q - 1 and three of degree q + 1: 1 + 4·49 + 64 + 3·81 = 504.
        ("SL2(8)", &[1, 7, 7, 7, 7, 8, 9, 9, 9]),
    ];
    for (name, expect) in cases {
        let g = named_group(name).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(multiset(&t), expect, "{name}");
        t.verify().unwrap();
        let sum: u128 = t.degrees.iter().map(|&d| (d as u128).pow(2)).sum();
        assert_eq!(sum, g.order());
    }
}

#[test]
fn psl2_degrees_match_tables() {
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 17] {
        let spec = FamilySpec::psl2(q).unwrap();
        let g = if q == 5 { named_group("PSL2(5)") } else { named_group(&spec.to_string()) }.unwrap();
        assert_eq!(g.order(), group_order(&spec).unwrap());
        let t = character_table(&g).unwrap();
        assert_eq!(t.degree_set(), psl2_degree_set(q).unwrap(), "q={q}");
        let mut expanded: Vec<u64> = psl2_degree_multiset(q)
            .unwrap()
            .into_iter()
            .flat_map(|(d, m)| std::iter::repeat(d).take(m as usize))
            .collect();
        expanded.sort();
        assert_eq!(multiset(&t), expanded, "q={q}");
        let st = steinberg_degree(&spec).unwrap();
        assert_eq!(st, q as u128);
        assert!(t.degree_set().contains(&(st as u64)));
    }
}

#[test]
fn type_c_symbols_appear_in_psp4_3() {
    let t = character_table(&named_group("PSp4(3)").unwrap()).unwrap();
    assert_eq!(t.group_order(), 25920);
    let degrees = t.degree_set();
    for s in SymbolC::all_of_rank(2) {
        let d = unipotent_degree_c(&s, 2, 3).unwrap();
        assert!(degrees.contains(&(d as u64)), "{s} has degree {d}");
    }
    let spec: FamilySpec = "PSp4(3)".parse().unwrap();
    assert!(degrees.contains(&(steinberg_degree(&spec).unwrap() as u64)));
}

#[test]
fn type_a_unipotent_degrees_appear_in_psl3() {
    for q in [2u64, 3] {
        let t = character_table(&projective_linear_group(3, q).unwrap()).unwrap();
        let degrees = t.degree_set();
        let unipotent: BTreeSet<u64> = Partition::all(3)
            .iter()
            .map(|l| unipotent_degree_a(l, q, Sign::Plus).unwrap() as u64)
            .collect();
        assert!(unipotent.is_subset(&degrees), "q={q}: {unipotent:?} ⊄ {degrees:?}");
        let pp = psl3_prime_power_degrees(q, Sign::Plus).unwrap();
        for d in pp.set() {
            assert!(degrees.contains(&(d as u64)), "q={q}: {d}");
        }
    }
}

#[test]
fn alternate_dixon_prime_gives_the_same_table() {
    use blockdeg::chartable::{character_table_with, TableOptions};
    for name in ["A5", "S3", "PSL2(7)", "S4"] {
        let g = named_group(name).unwrap();
        let cl = g.conjugacy_classes().unwrap();
        let a = character_table_with(&cl, TableOptions { prime_index: 0 }).unwrap();
        let b = character_table_with(&cl, TableOptions { prime_index: 2 }).unwrap();
        assert_ne!(a.modulus, b.modulus);
        assert_eq!(a.values, b.values, "{name}");
    }
}
