//! p-blocks of irreducible characters via central characters.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::chartable::{character_table, CharacterTable};
use crate::cyclotomic::{CyclotomicInteger, FieldElement, ResidueMap};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, valuation};
use crate::permgroup::PermutationGroup;

/// `ω[χ][k] = |K_k| χ(g_k) / χ(1)`, checked to be an algebraic integer.
pub fn central_characters(t: &CharacterTable) -> Result<Vec<Vec<CyclotomicInteger>>> {
    t.values
        .iter()
        .zip(&t.degrees)
        .enumerate()
        .map(|(chi, (row, &d))| {
            row.iter()
                .zip(&t.classes.sizes)
                .enumerate()
                .map(|(k, (v, &size))| {
                    v.scale(size as i64).div_exact(d as i64).ok_or_else(|| {
                        Error::verification(format!("central character ({chi},{k}) is not integral"))
                    })
                })
                .collect()
        })
        .collect()
}

/// Assignment of characters to p-blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub p: u64,
    /// Block index of each character; blocks are numbered by least member.
    pub block_of: Vec<usize>,
    /// Always 0, the block of the trivial character.
    pub principal: usize,
    pub defects: Vec<u32>,
}

impl BlockPartition {
    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&b| b + 1)
    }

    /// Members of each block, in block order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (chi, &b) in self.block_of.iter().enumerate() {
            out[b].push(chi);
        }
        out
    }

    pub fn principal_block(&self) -> Vec<usize> {
        (0..self.block_of.len()).filter(|&chi| self.block_of[chi] == self.principal).collect()
    }

    /// Degrees of the characters in the principal block.
    pub fn cd_b0(&self, t: &CharacterTable) -> BTreeSet<u64> {
        self.principal_block().into_iter().map(|chi| t.degrees[chi]).collect()
    }

    pub fn report(&self, t: &CharacterTable) -> BlockReport {
        BlockReport {
            p: self.p,
            blocks: self.blocks(),
            principal: self.principal,
            cd_b0: self.cd_b0(t).into_iter().collect(),
        }
    }
}

/// The JSON block report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub p: u64,
    pub blocks: Vec<Vec<usize>>,
    pub principal: usize,
    pub cd_b0: Vec<u64>,
}

/// `ν_p(|G|) − ν_p(χ(1))`.
pub fn defect(t: &CharacterTable, chi: usize, p: u64) -> Result<u32> {
    let d = *t
        .degrees
        .get(chi)
        .ok_or_else(|| Error::invalid(format!("character index {chi} out of range")))?;
    Ok(valuation(t.group_order(), p) - valuation(d as u128, p))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{p} is not prime")))
    }
}

pub fn block_partition(t: &CharacterTable, p: u64) -> Result<BlockPartition> {
    check_prime(p)?;
    if t.group_order() % p as u128 != 0 {
        return Ok(singletons(t, p));
    }
    block_partition_with(t, &ResidueMap::new(t.conductor, p)?)
}

/// Blocks computed through a caller-supplied residue map, whose conductor
/// must be a multiple of the table's.
pub fn block_partition_with(t: &CharacterTable, map: &ResidueMap) -> Result<BlockPartition> {
    let p = map.prime();
    check_prime(p)?;
    if map.conductor() % t.conductor != 0 {
        return Err(Error::ConductorMismatch {
            have: t.conductor,
            want: map.conductor(),
        });
    }
    let defects = (0..t.num_characters()).map(|chi| defect(t, chi, p)).collect::<Result<Vec<_>>>()?;
    if t.group_order() % p as u128 != 0 {
        return Ok(singletons(t, p));
    }
    let omega = central_characters(t)?;
    let rows: Vec<Vec<FieldElement>> = omega
        .iter()
        .map(|row| row.iter().map(|w| map.reduce(w)).collect())
        .collect::<Result<_>>()?;
    let mut first_seen: HashMap<&[FieldElement], usize> = HashMap::new();
    let mut block_of = Vec::with_capacity(rows.len());
    for row in &rows {
        let next = first_seen.len();
        block_of.push(*first_seen.entry(row.as_slice()).or_insert(next));
    }
    let partition = BlockPartition {
        p,
        block_of,
        principal: 0,
        defects,
    };
    // Defect-zero characters are alone in their blocks.
    let blocks = partition.blocks();
    for (chi, &d) in partition.defects.iter().enumerate() {
        if d == 0 && blocks[partition.block_of[chi]].len() != 1 {
            return Err(Error::verification(format!("defect-zero character {chi} shares a block")));
        }
    }
    Ok(partition)
}

fn singletons(t: &CharacterTable, p: u64) -> BlockPartition {
    let n = t.num_characters();
    BlockPartition {
        p,
        block_of: (0..n).collect(),
        principal: 0,
        defects: (0..n)
            .map(|chi| valuation(t.group_order(), p) - valuation(t.degrees[chi] as u128, p))
            .collect(),
    }
}

/// Degrees in the principal p-block of `g`.
pub fn cd_b0(g: &PermutationGroup, p: u64) -> Result<BTreeSet<u64>> {
    let t = character_table(g)?;
    Ok(block_partition(&t, p)?.cd_b0(&t))
}
