//! Rational noncrossing parking functions and the `S_a x Z_{b-1}` action.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice_paths::{parse_u32_list, validate_path, write_list, Slope};
use crate::rational_nc::{enumerate_nc, is_member, partition_of_path, rank_assignment, rank_sequence, NcError};
use crate::set_partitions::{enumerate_all, PartitionError, SetPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParkingError {
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("partition is not in NC(a,b)")]
    NotMember,
    #[error("labels are invalid: {0}")]
    BadLabels(String),
    #[error("not a rational slope parking word: {0}")]
    NotParkingWord(String),
    #[error("not a permutation of [{0}]")]
    NotPermutation(u32),
    #[error("cannot parse: {0}")]
    Parse(String),
}

/// A permutation of `[n]`; `images[i-1]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, ParkingError> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x as usize - 1], true) {
                return Err(ParkingError::NotPermutation(n));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The permutation on `[n]` whose cycles are consecutive runs of the given lengths.
    pub fn with_cycle_type(lengths: &[u32]) -> Self {
        let mut images = Vec::new();
        let mut start = 1;
        for &len in lengths {
            for k in 0..len {
                images.push(start + (k + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }

    /// Parses one-line notation `"2,1,3"`.
    pub fn parse(text: &str) -> Result<Self, ParkingError> {
        Self::new(parse_u32_list(text).map_err(ParkingError::Parse)?)
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self o other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// Cycle lengths in nonincreasing order.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if seen[start as usize - 1] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i as usize - 1] {
                seen[i as usize - 1] = true;
                i = self.apply(i);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|x, y| y.cmp(x));
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.images)
    }
}

/// All permutations of `[n]` in lexicographic order of one-line notation.
pub fn all_permutations(n: u32) -> Vec<Permutation> {
    let mut cur: Vec<u32> = (1..=n).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    // next lexicographic permutation until exhausted
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
}

/// Every partition of `n` as a nonincreasing list of parts.
pub fn cycle_types(n: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// An element `(w, g^d)` of `S_a x Z_{b-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub w: Permutation,
    pub d: u32,
}

impl GroupElement {
    pub fn new(w: Permutation, d: u32) -> Self {
        GroupElement { w, d }
    }

    /// Componentwise product; `d` is reduced modulo `modulus = b - 1`.
    pub fn compose(&self, other: &GroupElement, modulus: u32) -> GroupElement {
        GroupElement { w: self.w.compose(&other.w), d: (self.d + other.d) % modulus }
    }
}

/// A pair `(pi, f)`: `labels[k]` is the label set of `partition.blocks()[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction {
    slope: Slope,
    partition: SetPartition,
    labels: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct LabelledBlock<'a> {
    block: &'a [u32],
    labels: &'a [u32],
}

#[derive(Serialize)]
struct ParkingJson<'a> {
    a: u32,
    b: u32,
    blocks: Vec<LabelledBlock<'a>>,
}

impl Serialize for ParkingFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let blocks = self
            .partition
            .blocks()
            .iter()
            .zip(&self.labels)
            .map(|(block, labels)| LabelledBlock { block, labels })
            .collect();
        ParkingJson { a: self.slope.a(), b: self.slope.b(), blocks }.serialize(s)
    }
}

impl fmt::Display for ParkingFunction {
    /// `"1,3,7:3,5|2:2|4,5,6:1,4"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (block, labels)) in self.partition.blocks().iter().zip(&self.labels).enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write_list(f, block)?;
            f.write_str(":")?;
            write_list(f, labels)?;
        }
        Ok(())
    }
}

impl ParkingFunction {
    /// Checks membership, disjointness and `|f(B)| = rank(B)`.
    pub fn new(slope: Slope, partition: SetPartition, labels: Vec<Vec<u32>>) -> Result<Self, ParkingError> {
        if !is_member(&partition, slope)? {
            return Err(ParkingError::NotMember);
        }
        if labels.len() != partition.num_blocks() {
            return Err(ParkingError::BadLabels("one label set per block required".into()));
        }
        let ranks = rank_assignment(&partition, slope)?.ranks;
        let a = slope.a();
        let mut seen = vec![false; a as usize + 1];
        let mut sorted = Vec::with_capacity(labels.len());
        for (set, &r) in labels.into_iter().zip(&ranks) {
            if set.len() as i64 != r {
                return Err(ParkingError::BadLabels(format!("label set {set:?} should have size {r}")));
            }
            for &x in &set {
                if x == 0 || x > a || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(ParkingError::BadLabels(format!("label {x} invalid or repeated")));
                }
            }
            let mut set = set;
            set.sort_unstable();
            sorted.push(set);
        }
        Ok(ParkingFunction { slope, partition, labels: sorted })
    }

    /// Parses `"1,3,7:3,5|2:2|4,5,6:1,4"`.
    pub fn parse(slope: Slope, text: &str) -> Result<Self, ParkingError> {
        let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for part in text.trim().split('|') {
            let (block, labels) = part
                .split_once(':')
                .ok_or_else(|| ParkingError::Parse(format!("{part:?} lacks ':'")))?;
            let block = parse_u32_list(block).map_err(ParkingError::Parse)?;
            let labels = parse_u32_list(labels).map_err(ParkingError::Parse)?;
            pairs.push((block, labels));
        }
        let n = pairs.iter().map(|(b, _)| b.len()).sum::<usize>() as u32;
        let partition = SetPartition::new(n, pairs.iter().map(|(b, _)| b.clone()).collect())?;
        let labels = partition
            .blocks()
            .iter()
            .map(|block| {
                pairs
                    .iter()
                    .find(|(b, _)| b.iter().min() == Some(&block[0]))
                    .map(|(_, l)| l.clone())
                    .unwrap()
            })
            .collect();
        Self::new(slope, partition, labels)
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    /// Rotates `d` times, each block carrying its label set, then relabels by `w`.
    pub fn act(&self, g: &GroupElement) -> ParkingFunction {
        let n = self.partition.n() as i64;
        let shift = |i: u32| ((i as i64 - 1 + g.d as i64).rem_euclid(n) + 1) as u32;
        let moved: Vec<(Vec<u32>, Vec<u32>)> = self
            .partition
            .blocks()
            .iter()
            .zip(&self.labels)
            .map(|(block, labels)| {
                let mut block: Vec<u32> = block.iter().map(|&i| shift(i)).collect();
                block.sort_unstable();
                let mut labels: Vec<u32> = labels.iter().map(|&x| g.w.apply(x)).collect();
                labels.sort_unstable();
                (block, labels)
            })
            .collect();
        let partition = SetPartition::canonical(self.partition.n(), moved.iter().map(|(b, _)| b.clone()).collect());
        let labels = partition
            .blocks()
            .iter()
            .map(|block| moved.iter().find(|(b, _)| b == block).unwrap().1.clone())
            .collect();
        ParkingFunction { slope: self.slope, partition, labels }
    }
}

/// `Park^NC(a,b)` in canonical order.
pub fn enumerate_park(slope: Slope) -> Result<Vec<ParkingFunction>, ParkingError> {
    let a = slope.a();
    let parts = enumerate_nc(slope)?;
    let mut out: Vec<ParkingFunction> = parts
        .par_iter()
        .flat_map_iter(|p| {
            let ranks: Vec<usize> = rank_assignment(p, slope)
                .expect("members are noncrossing on [b-1]")
                .ranks
                .iter()
                .map(|&r| r as usize)
                .collect();
            let mut found = Vec::new();
            let mut labels = vec![Vec::new(); ranks.len()];
            distribute(1, a, &ranks, &mut labels, &mut |l| {
                found.push(ParkingFunction { slope, partition: p.clone(), labels: l.to_vec() })
            });
            found
        })
        .collect();
    out.par_sort_unstable();
    Ok(out)
}

/// Places labels `next..=a` into slots with the given capacities.
fn distribute(next: u32, a: u32, caps: &[usize], labels: &mut Vec<Vec<u32>>, emit: &mut dyn FnMut(&[Vec<u32>])) {
    if next > a {
        emit(labels);
        return;
    }
    for k in 0..caps.len() {
        if labels[k].len() < caps[k] {
            labels[k].push(next);
            distribute(next + 1, a, caps, labels, emit);
            labels[k].pop();
        }
    }
}

/// Number of parking functions fixed by `(w, g^d)`, by direct search.
pub fn character(slope: Slope, w: &Permutation, d: u32) -> Result<u64, ParkingError> {
    check_perm(slope, w)?;
    let g = GroupElement::new(w.clone(), d);
    let all = enumerate_park(slope)?;
    Ok(all.par_iter().filter(|pf| pf.act(&g) == **pf).count() as u64)
}

fn check_perm(slope: Slope, w: &Permutation) -> Result<(), ParkingError> {
    if w.n() != slope.a() {
        return Err(ParkingError::NotPermutation(slope.a()));
    }
    Ok(())
}

/// `q = (b-1) / gcd(d, b-1)`, the order of `g^d`.
pub fn rotation_order(slope: Slope, d: u32) -> u32 {
    let n = slope.b() - 1;
    n / num_integer::gcd(d % n, n)
}

/// `mult_w(zeta^d)`: cycles minus one when `q = 1`, else cycles of length divisible by `q`.
pub fn eigenvalue_multiplicity(slope: Slope, w: &Permutation, d: u32) -> u32 {
    let q = rotation_order(slope, d);
    let cycles = w.cycle_type();
    if q == 1 {
        cycles.len() as u32 - 1
    } else {
        cycles.iter().filter(|&&l| l % q == 0).count() as u32
    }
}

/// `b^{mult_w(zeta^d)}`.
pub fn predicted_character(slope: Slope, w: &Permutation, d: u32) -> Result<u64, ParkingError> {
    check_perm(slope, w)?;
    Ok((slope.b() as u64).pow(eigenvalue_multiplicity(slope, w, d)))
}

/// A rational slope parking word `(p_1, ..., p_a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SlopeParkingWord {
    pub slope: Slope,
    pub entries: Vec<u32>,
}

impl fmt::Display for SlopeParkingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.entries)
    }
}

impl SlopeParkingWord {
    pub fn new(slope: Slope, entries: Vec<u32>) -> Result<Self, ParkingError> {
        let (a, b) = (slope.a() as u64, slope.b() as u64);
        if entries.len() as u64 != a {
            return Err(ParkingError::NotParkingWord(format!("expected {a} entries, got {}", entries.len())));
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        for (i, &p) in sorted.iter().enumerate() {
            // p'_i <= (b/a)(i-1) + 1 with i counted from 1
            if p == 0 || a * (p as u64 - 1) > b * i as u64 {
                return Err(ParkingError::NotParkingWord(format!("sorted entry {p} at position {}", i + 1)));
            }
        }
        Ok(SlopeParkingWord { slope, entries })
    }

    pub fn parse(slope: Slope, text: &str) -> Result<Self, ParkingError> {
        Self::new(slope, parse_u32_list(text).map_err(ParkingError::Parse)?)
    }

    /// `w.(p_1, ..., p_a) = (p_{w^{-1}(1)}, ..., p_{w^{-1}(a)})`, matching relabelling by `w`.
    pub fn act(&self, w: &Permutation) -> SlopeParkingWord {
        let inv = w.inverse();
        let entries = (1..=self.entries.len() as u32).map(|i| self.entries[inv.apply(i) as usize - 1]).collect();
        SlopeParkingWord { slope: self.slope, entries }
    }
}

/// `p_i = min(B)` for the block whose label set contains `i`.
pub fn to_slope_word(pf: &ParkingFunction) -> SlopeParkingWord {
    let mut entries = vec![0u32; pf.slope.a() as usize];
    for (block, labels) in pf.partition.blocks().iter().zip(&pf.labels) {
        for &x in labels {
            entries[x as usize - 1] = block[0];
        }
    }
    SlopeParkingWord { slope: pf.slope, entries }
}

pub fn from_slope_word(word: &SlopeParkingWord) -> Result<ParkingFunction, ParkingError> {
    let word = SlopeParkingWord::new(word.slope, word.entries.clone())?;
    let slope = word.slope;
    let mut runs = vec![0u32; slope.b() as usize - 1];
    for &p in &word.entries {
        runs[p as usize - 1] += 1;
    }
    let path = validate_path(slope, &runs).map_err(|e| ParkingError::NotParkingWord(e.to_string()))?;
    let partition = partition_of_path(&path)?;
    if rank_sequence(&partition, slope)?.entries != runs {
        return Err(ParkingError::NotParkingWord("rank sequence does not reproduce the word".into()));
    }
    let labels = partition
        .blocks()
        .iter()
        .map(|block| (1..=slope.a()).filter(|&i| word.entries[i as usize - 1] == block[0]).collect())
        .collect();
    Ok(ParkingFunction { slope, partition, labels })
}

/// `(w,q)`-admissible partitions of `[a]`: `w`-stable, at most one `w`-stable
/// block, every other block in a `w`-orbit of size exactly `q`.
pub fn admissible_partitions(w: &Permutation, q: u32) -> Vec<SetPartition> {
    enumerate_all(w.n())
        .into_iter()
        .filter(|sigma| block_orbits(sigma, w).is_some_and(|orbits| is_admissible(&orbits, q)))
        .collect()
}

/// Sizes of the `w`-orbits on the blocks of `sigma`, or `None` if `sigma` is not `w`-stable.
fn block_orbits(sigma: &SetPartition, w: &Permutation) -> Option<Vec<u32>> {
    if sigma.map_elements(|i| w.apply(i)) != *sigma {
        return None;
    }
    let labels = sigma.block_index();
    let image = |k: usize| labels[w.apply(sigma.blocks()[k][0]) as usize];
    let mut seen = vec![false; sigma.num_blocks()];
    let mut sizes = Vec::new();
    for start in 0..sigma.num_blocks() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = image(k);
            len += 1;
        }
        sizes.push(len);
    }
    Some(sizes)
}

fn is_admissible(orbits: &[u32], q: u32) -> bool {
    orbits.iter().filter(|&&s| s == 1).count() <= 1 && orbits.iter().all(|&s| s == 1 || s == q)
}

/// Checks `b^{r_q(w)} = sum over admissible sigma of prod_{t < t_sigma} (b - 1 - t q)`.
pub fn twelvefold_check(slope: Slope, w: &Permutation, d: u32) -> Result<bool, ParkingError> {
    check_perm(slope, w)?;
    let q = rotation_order(slope, d);
    if q < 2 {
        return Err(ParkingError::Parse(format!("the identity requires q >= 2, got q = {q}")));
    }
    let b = BigInt::from(slope.b());
    let r = w.cycle_type().iter().filter(|&&l| l % q == 0).count() as u32;
    let lhs: BigInt = Pow::pow(&b, r);
    let rhs: BigInt = enumerate_all(w.n())
        .iter()
        .filter_map(|sigma| block_orbits(sigma, w))
        .filter(|orbits| is_admissible(orbits, q))
        .map(|orbits| {
            let t = orbits.iter().filter(|&&s| s > 1).count() as u32;
            (0..t).fold(BigInt::one(), |acc, k| acc * (&b - 1 - BigInt::from(k) * q))
        })
        .sum();
    Ok(lhs == rhs)
}

/// Character table rows: one per cycle type of `S_a` and each `d` in `0..b-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub cycle_type: String,
    pub d: u32,
    pub brute: u64,
    pub predicted: u64,
    pub ok: bool,
}

pub fn character_table(slope: Slope) -> Result<Vec<CharacterRow>, ParkingError> {
    let all = enumerate_park(slope)?;
    let mut cells = BTreeMap::new();
    let types = cycle_types(slope.a());
    for ct in &types {
        let w = Permutation::with_cycle_type(ct);
        for d in 0..slope.b() - 1 {
            let g = GroupElement::new(w.clone(), d);
            let brute = all.par_iter().filter(|pf| pf.act(&g) == **pf).count() as u64;
            cells.insert((ct.clone(), d), (brute, predicted_character(slope, &w, d)?));
        }
    }
    Ok(types
        .iter()
        .flat_map(|ct| (0..slope.b() - 1).map(move |d| (ct, d)))
        .map(|(ct, d)| {
            let (brute, predicted) = cells[&(ct.clone(), d)];
            let cycle_type = ct.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            CharacterRow { cycle_type, d, brute, predicted, ok: brute == predicted }
        })
        .collect())
}
