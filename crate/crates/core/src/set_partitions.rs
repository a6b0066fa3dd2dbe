//! Set partitions of `[n] = {1, ..., n}`.
//!
//! Blocks are kept sorted by minimum with ascending elements, so structural
//! equality is partition equality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition is not noncrossing")]
    NotNoncrossing,
    #[error("blocks do not partition [{n}]: {reason}")]
    NotAPartition { n: u32, reason: String },
    #[error("cannot parse partition: {0}")]
    Parse(String),
    #[error("partitions have different ground sets ({0} vs {1})")]
    SizeMismatch(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct SetPartition {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

impl TryFrom<PartitionJson> for SetPartition {
    type Error = PartitionError;

    fn try_from(j: PartitionJson) -> Result<Self, PartitionError> {
        SetPartition::new(j.n, j.blocks)
    }
}

impl From<SetPartition> for PartitionJson {
    fn from(p: SetPartition) -> Self {
        PartitionJson { n: p.n, blocks: p.blocks }
    }
}

impl SetPartition {
    pub fn new(n: u32, blocks: Vec<Vec<u32>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n as usize + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(PartitionError::NotAPartition { n, reason: "empty block".into() });
            }
            for &i in block {
                if i == 0 || i > n {
                    return Err(PartitionError::NotAPartition { n, reason: format!("{i} out of range") });
                }
                if std::mem::replace(&mut seen[i as usize], true) {
                    return Err(PartitionError::NotAPartition { n, reason: format!("{i} repeated") });
                }
            }
        }
        if let Some(i) = (1..=n).find(|&i| !seen[i as usize]) {
            return Err(PartitionError::NotAPartition { n, reason: format!("{i} missing") });
        }
        Ok(Self::canonical(n, blocks))
    }

    /// Sorts blocks into canonical order. Callers guarantee the blocks partition `[n]`.
    pub(crate) fn canonical(n: u32, mut blocks: Vec<Vec<u32>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// Builds the partition whose block of `i` is labelled `labels[i - 1]`.
    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len() as u32;
        let mut slots: Vec<Vec<u32>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (k, &l) in labels.iter().enumerate() {
            let slot = *index.entry(l).or_insert_with(|| {
                slots.push(Vec::new());
                slots.len() - 1
            });
            slots[slot].push(k as u32 + 1);
        }
        Self::canonical(n, slots)
    }

    pub fn singletons(n: u32) -> Self {
        SetPartition { n, blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn one_block(n: u32) -> Self {
        SetPartition { n, blocks: vec![(1..=n).collect()] }
    }

    /// Parses `"1,3,7|2|4,5,6"`; the ground set size is the number of elements.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PartitionError::Parse("empty input".into()));
        }
        let mut blocks = Vec::new();
        for part in text.split('|') {
            let block = part
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| PartitionError::Parse(format!("{:?}: {e}", t.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum::<usize>() as u32;
        Self::new(n, blocks)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `labels[i]` is the index (into `blocks()`) of the block holding `i`; entry 0 is unused.
    pub fn block_index(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.n as usize + 1];
        for (k, block) in self.blocks.iter().enumerate() {
            for &i in block {
                labels[i as usize] = k;
            }
        }
        labels
    }

    pub fn same_block(&self, i: u32, j: u32) -> bool {
        self.blocks.iter().any(|b| b.contains(&i) && b.contains(&j))
    }

    pub fn is_noncrossing(&self) -> bool {
        let labels = self.block_index();
        let mut open: Vec<usize> = Vec::new();
        for i in 1..=self.n {
            let k = labels[i as usize];
            let block = &self.blocks[k];
            let last = *block.last().unwrap();
            if block[0] != i && open.last() != Some(&k) {
                return false;
            }
            if block[0] == i && last != i {
                open.push(k);
            } else if block[0] != i && last == i {
                open.pop();
            }
        }
        true
    }

    /// Applies a bijection of `[n]` to every element.
    pub fn map_elements(&self, f: impl Fn(u32) -> u32) -> Self {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&i| f(i)).collect()).collect();
        Self::canonical(self.n, blocks)
    }

    /// `i -> i + 1 (mod n)`.
    pub fn rotate(&self) -> Self {
        self.rotate_by(1)
    }

    /// `i -> i + k (mod n)`, for any integer `k`.
    pub fn rotate_by(&self, k: i64) -> Self {
        let n = self.n as i64;
        if n == 0 {
            return self.clone();
        }
        self.map_elements(|i| ((i as i64 - 1 + k).rem_euclid(n) + 1) as u32)
    }

    /// `i -> n + 1 - i`.
    pub fn reflect(&self) -> Self {
        let n = self.n;
        self.map_elements(|i| n + 1 - i)
    }

    /// The Kreweras complement. Primed vertex `i'` sits between `i` and `i + 1`;
    /// `i' ~ j'` (`i < j`) exactly when `{i+1, ..., j}` is a union of blocks.
    pub fn kreweras(&self) -> Result<Self, PartitionError> {
        if !self.is_noncrossing() {
            return Err(PartitionError::NotNoncrossing);
        }
        let n = self.n as usize;
        let labels = self.block_index();
        let lo: Vec<u32> = self.blocks.iter().map(|b| b[0]).collect();
        let hi: Vec<u32> = self.blocks.iter().map(|b| *b.last().unwrap()).collect();
        let mut class = vec![usize::MAX; n + 1];
        for i in 1..=n {
            if class[i] == usize::MAX {
                class[i] = i;
            }
            let mut reach = 0;
            for j in i + 1..=n {
                let k = labels[j];
                if (lo[k] as usize) <= i {
                    break;
                }
                reach = reach.max(hi[k] as usize);
                if reach == j {
                    class[j] = class[i];
                    break;
                }
            }
        }
        Ok(Self::from_labels(&class[1..]))
    }

    /// The inverse of [`Self::kreweras`]. With primed vertices placed after their
    /// unprimed partners the complement squares to `rot^{-1}`, so the inverse is
    /// `rot` applied to the complement.
    pub fn kreweras_inverse(&self) -> Result<Self, PartitionError> {
        Ok(self.kreweras()?.rotate())
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool, PartitionError> {
        if self.n != other.n {
            return Err(PartitionError::SizeMismatch(self.n, other.n));
        }
        let labels = other.block_index();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&i| labels[i as usize] == labels[b[0] as usize])))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            crate::lattice_paths::write_list(f, block)?;
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// All noncrossing partitions of `[n]` in canonical order.
pub fn enumerate_noncrossing(n: u32) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n as usize];
    let mut open = Vec::new();
    nc_extend(0, 0, &mut labels, &mut open, &mut out);
    out.sort_unstable();
    out
}

fn nc_extend(pos: usize, used: usize, labels: &mut Vec<usize>, open: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
    if pos == labels.len() {
        out.push(SetPartition::from_labels(labels));
        return;
    }
    // join an open block; everything opened after it is closed for good
    for depth in 0..open.len() {
        let saved = open.split_off(depth + 1);
        labels[pos] = open[depth];
        nc_extend(pos + 1, used, labels, open, out);
        open.extend(saved);
    }
    open.push(used);
    labels[pos] = used;
    nc_extend(pos + 1, used + 1, labels, open, out);
    open.pop();
}

/// All set partitions of `[n]` in canonical order.
pub fn enumerate_all(n: u32) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n as usize];
    all_extend(0, 0, &mut labels, &mut out);
    out.sort_unstable();
    out
}

fn all_extend(pos: usize, used: usize, labels: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
    if pos == labels.len() {
        out.push(SetPartition::from_labels(labels));
        return;
    }
    for l in 0..=used {
        labels[pos] = l;
        all_extend(pos + 1, used.max(l + 1), labels, out);
    }
}
