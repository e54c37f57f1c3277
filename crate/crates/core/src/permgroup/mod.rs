//! Permutation groups given by generators.
//!
//! Points are 0-based internally and 1-based in every printed or parsed form.
//! Products act on the right: `(x * y)(p) = y(x(p))`.

mod classes;
mod parse;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use classes::{ClassData, Classes};
pub use parse::{parse_group, parse_permutation, write_group};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_BOUND: u64 = 1_000_000;

/// A permutation of `{0, …, n-1}` stored as its image list.
///
/// The derived order compares image tuples lexicographically; it is the fixed
/// total order used to pick class representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::MalformedPermutation(format!(
                    "image list {:?} is not a bijection",
                    images
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt as usize > n {
                    return Err(Error::MalformedPermutation(format!(
                        "point {pt} outside 1..{n}"
                    )));
                }
                if used[pt as usize - 1] {
                    return Err(Error::MalformedPermutation(format!(
                        "point {pt} appears twice"
                    )));
                }
                used[pt as usize - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[pt as usize - 1] = next - 1;
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.0[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[g.0[i] as usize] = g.0[j as usize];
        }
        Perm(out)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Nontrivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut p = self.0[start];
            while p as usize != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.0[p as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;

    /// Accepts 1-based images, the serialized form.
    fn try_from(v: Vec<u32>) -> Result<Self> {
        if v.contains(&0) {
            return Err(Error::MalformedPermutation("images are 1-based".into()));
        }
        Perm::from_images(v.into_iter().map(|i| i - 1).collect())
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.0.into_iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`, for `b` in the orbit.
    transversal: HashMap<u32, Perm>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(base, Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal.clear();
        self.transversal.insert(self.base, Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for g in &self.gens {
                let c = g.apply(b);
                if !self.transversal.contains_key(&c) {
                    let u = self.transversal[&b].mul(g);
                    self.transversal.insert(c, u);
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set with transversals.
#[derive(Clone, Debug)]
struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier–Sims.
    fn build(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain { levels: Vec::new() };
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.add_strong_generator(degree, g.clone(), 0);
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.find_schreier_failure(lvl) {
                Some(h) => {
                    chain.add_strong_generator(degree, h, lvl + 1);
                    i = chain.levels.len() as isize - 1;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// Adds `g` as a strong generator at levels `from..` that it fixes the
    /// earlier base points of, extending the base if `g` fixes them all.
    fn add_strong_generator(&mut self, degree: usize, g: Perm, from: usize) {
        let fixes_all = self.levels.iter().all(|l| g.apply(l.base) == l.base);
        if fixes_all {
            let b = (0..degree as u32).find(|&p| g.apply(p) != p).expect("nonidentity");
            self.levels.push(Level::new(b, degree));
        }
        for (k, level) in self.levels.iter_mut().enumerate() {
            if k >= from {
                level.gens.push(g.clone());
                level.rebuild_orbit(degree);
            }
            if g.apply(level.base) != level.base {
                break;
            }
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped.
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(level.base);
            match level.transversal.get(&b) {
                Some(u) => g = g.mul(&u.inverse()),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    /// A sifted Schreier generator at `lvl` that fails to sift to the identity.
    fn find_schreier_failure(&self, lvl: usize) -> Option<Perm> {
        let level = &self.levels[lvl];
        for &b in &level.orbit {
            let ub = &level.transversal[&b];
            for s in &level.gens {
                let c = s.apply(b);
                let h = ub.mul(s).mul(&level.transversal[&c].inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.strip(h, lvl + 1);
                if j < self.levels.len() || !res.is_identity() {
                    return Some(res);
                }
            }
        }
        None
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn contains(&self, g: &Perm) -> bool {
        let (res, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && res.is_identity()
    }
}

/// A permutation group on `{1, …, degree}`.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    /// Exact group order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    /// Whether `self` is a normal subgroup of `other`.
    pub fn is_normal_in(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.generators.iter().all(|n| other.contains(n))
            && other
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|n| self.contains(&n.conjugate_by(g))))
    }

    /// All elements, in breadth-first order from the identity.
    pub fn elements(&self, bound: u64) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > bound as u128 {
            return Err(Error::BoundExceeded { order, bound });
        }
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::with_capacity(order as usize);
        let mut out = Vec::with_capacity(order as usize);
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        if out.len() as u128 != order {
            return Err(Error::verification(format!(
                "enumerated {} elements but the stabilizer chain gives {order}",
                out.len()
            )));
        }
        Ok(out)
    }

    pub fn conjugacy_classes(&self) -> Result<Classes> {
        Classes::new(self, DEFAULT_ELEMENT_BOUND)
    }

    /// The action of `self` on the right cosets of a normal subgroup `n`,
    /// a faithful permutation representation of the quotient.
    pub fn quotient(&self, n: &PermutationGroup, bound: u64) -> Result<PermutationGroup> {
        if !n.is_normal_in(self) {
            return Err(Error::invalid("quotient by a subgroup that is not normal"));
        }
        let elements = self.elements(bound)?;
        let sub: Vec<Perm> = n.elements(bound)?;
        let mut coset_of: HashMap<Perm, u32> = HashMap::new();
        let mut reps: Vec<Perm> = Vec::new();
        for x in &elements {
            if coset_of.contains_key(x) {
                continue;
            }
            let idx = reps.len() as u32;
            for h in &sub {
                coset_of.insert(h.mul(x), idx);
            }
            reps.push(x.clone());
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = reps.iter().map(|r| coset_of[&r.mul(g)]).collect();
                Perm::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::new(reps.len(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Perm {
        Perm::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn product_acts_on_the_right() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).apply(0), 2);
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
        assert_eq!(Perm::identity(4).to_string(), "()");
    }

    #[test]
    fn small_orders() {
        let a5 = PermutationGroup::new(5, vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[3, 4, 5]])]).unwrap();
        assert_eq!(a5.order(), 60);
        let c2 = PermutationGroup::new(2, vec![cyc(2, &[&[1, 2]])]).unwrap();
        assert_eq!(c2.order(), 2);
        // PSL2(7) on 8 points: x -> x+1, x -> 2x, x -> -1/x on the projective line.
        let psl27 = PermutationGroup::new(
            8,
            vec![
                cyc(8, &[&[1, 2, 3, 4, 5, 6, 7]]),
                cyc(8, &[&[2, 3, 5], &[4, 7, 6]]),
                cyc(8, &[&[1, 8], &[2, 7], &[3, 4], &[5, 6]]),
            ],
        )
        .unwrap();
        assert_eq!(psl27.order(), 168);
        assert_eq!(psl27.elements(1000).unwrap().len(), 168);
        let s8 = PermutationGroup::new(8, vec![cyc(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]]), cyc(8, &[&[1, 2]])]).unwrap();
        assert_eq!(s8.order(), 40320);
        let trivial = PermutationGroup::new(4, vec![]).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let s8 = PermutationGroup::new(8, vec![cyc(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]]), cyc(8, &[&[1, 2]])]).unwrap();
        assert!(matches!(s8.elements(1000), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn normality_and_quotient() {
        let s5 = PermutationGroup::new(5, vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])]).unwrap();
        let a5 = PermutationGroup::new(5, vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[3, 4, 5]])]).unwrap();
        let c2 = PermutationGroup::new(5, vec![cyc(5, &[&[1, 2]])]).unwrap();
        assert!(a5.is_normal_in(&s5));
        assert!(!c2.is_normal_in(&s5));
        let q = s5.quotient(&a5, 1000).unwrap();
        assert_eq!(q.order(), 2);
        assert!(s5.quotient(&c2, 1000).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        // Oracle: breadth-first closure counts the elements directly.
        #[test]
        fn chain_order_matches_closure(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            let g = PermutationGroup::new(6, vec![a.clone(), b.clone(), c]).unwrap();
            let order = g.order();
            prop_assert_eq!(720 % order, 0);
            let mut seen = HashSet::new();
            let mut stack = vec![Perm::identity(6)];
            seen.insert(Perm::identity(6));
            while let Some(x) = stack.pop() {
                for gen in g.generators() {
                    let y = x.mul(gen);
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            prop_assert_eq!(seen.len() as u128, order);
            for x in seen.iter().take(20) {
                prop_assert!(g.contains(x));
            }
        }

        #[test]
        fn group_laws(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
            prop_assert!(a.pow(a.order() as i64).is_identity());
            prop_assert_eq!(a.pow(-1), a.inverse());
        }
    }
}
