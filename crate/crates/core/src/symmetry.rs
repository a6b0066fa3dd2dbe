//! Rational noncrossing partitions fixed by `rot^d`, their `d`-modified rank
//! sequences, and the symmetric counting formulas.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::lattice_paths::counts::{big_binomial, factorial};
use crate::lattice_paths::{validate_path, write_list, DyckPath, PathError, Slope, SlopeError};
use crate::rational_nc::{enumerate_nc, partition_of_path, rank_assignment, NcError};
use crate::set_partitions::SetPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("{d} is not a divisor of {n} with 1 <= d < {n}")]
    InvalidDivisor { d: u32, n: u32 },
    #[error("partition is not fixed by rot^{d}")]
    NotFixed { d: u32 },
    #[error("sequence has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("sequence is not good (q * sum exceeds a)")]
    NotGood,
    #[error("sequence is not very good")]
    NotVeryGood,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Nc(#[from] NcError),
}

/// A slope `a < b` with a divisor `d` of `b - 1`, `1 <= d < b - 1`, and `q = (b-1)/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SymmetricContext {
    pub slope: Slope,
    pub d: u32,
    pub q: u32,
}

impl SymmetricContext {
    pub fn new(slope: Slope, d: u32) -> Result<Self, SymmetryError> {
        let slope = slope.require_proper()?;
        let n = slope.b() - 1;
        if d == 0 || d >= n || n % d != 0 {
            return Err(SymmetryError::InvalidDivisor { d, n });
        }
        Ok(SymmetricContext { slope, d, q: n / d })
    }

    /// Every valid `d` for this slope.
    pub fn all(slope: Slope) -> Vec<SymmetricContext> {
        let n = slope.b().saturating_sub(1);
        (1..n).filter_map(|d| Self::new(slope, d).ok()).collect()
    }

    fn a(&self) -> u32 {
        self.slope.a()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Central,
    Wrapping,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModifiedRankSequence {
    pub ctx: SymmetricContext,
    pub entries: Vec<u32>,
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    d: u32,
    entries: &'a [u32],
}

impl Serialize for ModifiedRankSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SequenceJson { d: self.ctx.d, entries: &self.entries }.serialize(s)
    }
}

impl fmt::Display for ModifiedRankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.entries)
    }
}

impl ModifiedRankSequence {
    pub fn new(ctx: SymmetricContext, entries: Vec<u32>) -> Result<Self, SymmetryError> {
        if entries.len() != ctx.d as usize {
            return Err(SymmetryError::WrongLength { expected: ctx.d as usize, got: entries.len() });
        }
        Ok(ModifiedRankSequence { ctx, entries })
    }

    pub fn zero(ctx: SymmetricContext) -> Self {
        ModifiedRankSequence { ctx, entries: vec![0; ctx.d as usize] }
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&s| s as u64).sum()
    }

    /// `c = a - q * (s_1 + ... + s_d)`; negative exactly when the sequence is not good.
    pub fn c(&self) -> i64 {
        self.ctx.a() as i64 - self.ctx.q as i64 * self.sum() as i64
    }

    pub fn is_good(&self) -> bool {
        self.c() >= 0
    }

    pub fn is_very_good(&self) -> bool {
        self.is_good() && (self.c() == 0 || self.entries[0] == 0)
    }

    /// `(s_d, s_1, ..., s_{d-1})`.
    pub fn rotate(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.rotate_right(1);
        ModifiedRankSequence { ctx: self.ctx, entries }
    }

    /// `(s_{j+1}, ..., s_d, s_1, ..., s_j)`.
    pub fn shift_left(&self, j: usize) -> Self {
        let mut entries = self.entries.clone();
        let len = entries.len();
        entries.rotate_left(j % len);
        ModifiedRankSequence { ctx: self.ctx, entries }
    }
}

/// The lattice path `L(s)` from `(0,0)` to `(b,a)`; it need not be a Dyck path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LPath {
    pub slope: Slope,
    /// North steps on each of the first `b - 1` columns.
    pub runs: Vec<u32>,
    /// `segments[k]` is the first column of segment `L_{k+1}`.
    pub segments: Vec<u32>,
}

impl LPath {
    pub fn to_dyck_path(&self) -> Result<DyckPath, PathError> {
        validate_path(self.slope, &self.runs)
    }
}

/// Weights on the doubled path `(N^{s_1} E ... N^{s_d} E)^2`: the origin has
/// weight 0, east steps subtract `a`, north steps add `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleLemmaLabeling {
    pub weights: Vec<i64>,
    /// Index (into `weights`) of the unique minimum.
    pub min_index: usize,
    pub min_weight: i64,
    /// Number of east steps before the minimum point.
    pub min_column: usize,
}

fn check_fixed(p: &SetPartition, ctx: &SymmetricContext) -> Result<(), SymmetryError> {
    crate::rational_nc::check_ground_set(p, ctx.slope)?;
    if p.rotate_by(ctx.d as i64) != *p {
        return Err(SymmetryError::NotFixed { d: ctx.d });
    }
    Ok(())
}

pub fn is_fixed(p: &SetPartition, ctx: &SymmetricContext) -> bool {
    p.rotate_by(ctx.d as i64) == *p
}

/// `NC_d(a,b)` in canonical order.
pub fn fixed_partitions(ctx: &SymmetricContext) -> Vec<SetPartition> {
    enumerate_nc(ctx.slope)
        .expect("context slopes are proper")
        .into_iter()
        .filter(|p| is_fixed(p, ctx))
        .collect()
}

/// Kind of each block of `p`, aligned with `p.blocks()`.
pub fn classify_blocks(p: &SetPartition, ctx: &SymmetricContext) -> Result<Vec<BlockKind>, SymmetryError> {
    check_fixed(p, ctx)?;
    let n = p.n() as i64;
    let shift = |i: u32, k: i64| ((i as i64 - 1 + k).rem_euclid(n) + 1) as u32;
    let kinds = p
        .blocks()
        .iter()
        .map(|block| {
            let mut image: Vec<u32> = block.iter().map(|&i| shift(i, ctx.d as i64)).collect();
            image.sort_unstable();
            if image == *block {
                return BlockKind::Central;
            }
            let (lo, hi) = (block[0], *block.last().unwrap());
            let wraps = (1..ctx.q as i64).all(|k| block.iter().all(|&i| (lo..=hi).contains(&shift(i, k * ctx.d as i64))));
            if wraps {
                BlockKind::Wrapping
            } else {
                BlockKind::Plain
            }
        })
        .collect();
    Ok(kinds)
}

/// No wrapping block, and `1` lies in the central block when there is one.
pub fn is_noble_partition(p: &SetPartition, ctx: &SymmetricContext) -> Result<bool, SymmetryError> {
    let kinds = classify_blocks(p, ctx)?;
    Ok(kinds.iter().enumerate().all(|(k, kind)| match kind {
        BlockKind::Wrapping => false,
        BlockKind::Central => p.blocks()[k][0] == 1,
        BlockKind::Plain => true,
    }))
}

/// `S_d(p)`.
pub fn modified_rank_sequence(p: &SetPartition, ctx: &SymmetricContext) -> Result<ModifiedRankSequence, SymmetryError> {
    let kinds = classify_blocks(p, ctx)?;
    let ranks = rank_assignment(p, ctx.slope)?.ranks;
    let mut entries = vec![0u32; ctx.d as usize];
    for ((block, kind), &r) in p.blocks().iter().zip(&kinds).zip(&ranks) {
        let m = block[0] as usize;
        if *kind == BlockKind::Plain && m <= ctx.d as usize {
            entries[m - 1] = u32::try_from(r).map_err(|_| NcError::NegativeRank { block: block.clone(), rank: r })?;
        }
    }
    Ok(ModifiedRankSequence { ctx: *ctx, entries })
}

pub fn l_of(s: &ModifiedRankSequence) -> Result<LPath, SymmetryError> {
    if !s.is_very_good() {
        return Err(SymmetryError::NotVeryGood);
    }
    let (d, q) = (s.ctx.d as usize, s.ctx.q as usize);
    let mut runs = Vec::with_capacity(d * q);
    for _ in 0..q {
        runs.extend_from_slice(&s.entries);
    }
    let c = s.c();
    if c > 0 {
        runs[0] = c as u32;
    }
    let segments = (0..q).map(|k| (k * d) as u32).collect();
    Ok(LPath { slope: s.ctx.slope, runs, segments })
}

/// Very good with `L(s)` a Dyck path.
pub fn is_noble_sequence(s: &ModifiedRankSequence) -> bool {
    s.is_very_good() && l_of(s).is_ok_and(|l| l.to_dyck_path().is_ok())
}

pub fn cycle_lemma_labeling(s: &ModifiedRankSequence) -> CycleLemmaLabeling {
    let (a, b) = (s.ctx.a() as i64, s.ctx.slope.b() as i64);
    let mut weights = vec![0i64];
    let mut columns = vec![0usize];
    for _ in 0..2 {
        for &r in &s.entries {
            for _ in 0..r {
                weights.push(weights.last().unwrap() + b);
                columns.push(*columns.last().unwrap());
            }
            weights.push(weights.last().unwrap() - a);
            columns.push(columns.last().unwrap() + 1);
        }
    }
    let min_weight = *weights.iter().min().unwrap();
    let mut at = weights.iter().enumerate().filter(|(_, &w)| w == min_weight).map(|(k, _)| k);
    let min_index = at.next().unwrap();
    assert!(at.next().is_none(), "cycle lemma minimum must be unique for coprime slopes");
    CycleLemmaLabeling { weights, min_index, min_weight, min_column: columns[min_index] }
}

/// A noble rotation of a good sequence, together with the offset `j` such that
/// the result is `(s_{j+1}, ..., s_d, s_1, ..., s_j)`.
pub fn noble_rotation(s: &ModifiedRankSequence) -> Result<(ModifiedRankSequence, usize), SymmetryError> {
    if !s.is_good() {
        return Err(SymmetryError::NotGood);
    }
    let c = s.c();
    if c == s.ctx.a() as i64 {
        return Ok((s.clone(), 0));
    }
    let d = s.ctx.d as usize;
    let col = cycle_lemma_labeling(s).min_column;
    // the minimum sits just before a nonempty run; when c > 0 the rotation keeps the
    // empty entry preceding that run in front, so the initial run can hold c
    let j = if c > 0 { (col + d - 1) % d } else { col % d };
    Ok((s.shift_left(j), j))
}

/// The unique partition in `NC_d(a,b)` with modified rank sequence `s`.
pub fn s_d_inverse(s: &ModifiedRankSequence) -> Result<SetPartition, SymmetryError> {
    let (noble, j) = noble_rotation(s)?;
    let path = l_of(&noble)?.to_dyck_path().expect("noble rotations give Dyck paths");
    Ok(partition_of_path(&path)?.rotate_by(j as i64))
}

/// All good sequences for the context, in lexicographic order.
pub fn good_sequences(ctx: &SymmetricContext) -> Vec<ModifiedRankSequence> {
    let bound = ctx.a() / ctx.q;
    let mut out = Vec::new();
    let mut cur = vec![0u32; ctx.d as usize];
    fn go(pos: usize, left: u32, cur: &mut Vec<u32>, ctx: &SymmetricContext, out: &mut Vec<ModifiedRankSequence>) {
        if pos == cur.len() {
            out.push(ModifiedRankSequence { ctx: *ctx, entries: cur.clone() });
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            go(pos + 1, left - v, cur, ctx, out);
        }
        cur[pos] = 0;
    }
    go(0, bound, &mut cur, ctx, &mut out);
    out
}

/// Orbit data of a fixed partition: `m[i-1]` orbits of non-central blocks of rank
/// `i`, and whether a central block is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitProfile {
    pub m: Vec<u32>,
    pub central: bool,
}

impl OrbitProfile {
    /// Number of orbits of non-central blocks.
    pub fn orbits(&self) -> u32 {
        self.m.iter().sum()
    }
}

pub fn orbit_profile(p: &SetPartition, ctx: &SymmetricContext) -> Result<OrbitProfile, SymmetryError> {
    let kinds = classify_blocks(p, ctx)?;
    let ranks = rank_assignment(p, ctx.slope)?.ranks;
    let mut blocks = vec![0u32; ctx.a() as usize];
    let mut central = false;
    for (kind, &r) in kinds.iter().zip(&ranks) {
        if *kind == BlockKind::Central {
            central = true;
        } else if r >= 1 && r <= ctx.a() as i64 {
            blocks[r as usize - 1] += 1;
        } else {
            return Err(SymmetryError::HypothesisViolated(format!("non-central block of rank {r}")));
        }
    }
    let m = blocks.iter().map(|&c| c / ctx.q).collect();
    Ok(OrbitProfile { m, central })
}

/// `|NC_d(a,b)| = C(floor(a/q) + d, d)`.
pub fn count_symmetric_catalan(ctx: &SymmetricContext) -> BigUint {
    let d = ctx.d as u64;
    big_binomial((ctx.a() / ctx.q) as u64 + d, d)
}

/// Partitions in `NC_d(a,b)` with `m[i-1]` orbits of non-central blocks of rank `i`:
/// the multinomial `d! / (m_1! ... m_a! (d - m)!)`.
pub fn count_symmetric_kreweras(ctx: &SymmetricContext, m: &[u32]) -> Result<BigUint, SymmetryError> {
    let weight: u64 = m.iter().enumerate().map(|(i, &mi)| (i as u64 + 1) * mi as u64).sum();
    if ctx.q as u64 * weight > ctx.a() as u64 {
        return Err(SymmetryError::HypothesisViolated(format!("q * sum(i m_i) = {} > a", ctx.q as u64 * weight)));
    }
    let total: u64 = m.iter().map(|&x| x as u64).sum();
    let d = ctx.d as u64;
    if total > d {
        return Ok(BigUint::default());
    }
    let denom = m.iter().fold(factorial(d - total), |acc, &mi| acc * factorial(mi as u64));
    Ok(factorial(d) / denom)
}

/// Partitions in `NC_d(a,b)` with `p` orbits of non-central blocks, with or
/// without a central block. With a central block the orbit ranks sum to less
/// than `a/q`, giving `C(d,p) C(ceil(a/q) - 1, p)`; without one they sum to
/// exactly `a/q`, giving `C(d,p) C(a/q - 1, p - 1)` when `q | a` and 0 otherwise.
pub fn count_symmetric_narayana(ctx: &SymmetricContext, p: u32, with_central: bool) -> Result<BigUint, SymmetryError> {
    let (a, q) = (ctx.a() as u64, ctx.q as u64);
    if q * p as u64 > a {
        return Err(SymmetryError::HypothesisViolated(format!("q * p = {} > a", q * p as u64)));
    }
    let choose = big_binomial(ctx.d as u64, p as u64);
    if with_central {
        Ok(choose * big_binomial(a.div_ceil(q) - 1, p as u64))
    } else if a % q != 0 || p == 0 {
        Ok(BigUint::default())
    } else {
        Ok(choose * big_binomial(a / q - 1, p as u64 - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(a: u32, b: u32, d: u32) -> SymmetricContext {
        SymmetricContext::new(Slope::new(a, b).unwrap(), d).unwrap()
    }

    fn seq(c: SymmetricContext, e: &[u32]) -> ModifiedRankSequence {
        ModifiedRankSequence::new(c, e.to_vec()).unwrap()
    }

    fn p(t: &str) -> SetPartition {
        t.parse().unwrap()
    }

    #[test]
    fn contexts() {
        assert_eq!(ctx(4, 9, 4).q, 2);
        let s = Slope::new(4, 9).unwrap();
        assert!(SymmetricContext::new(s, 8).is_err());
        assert!(SymmetricContext::new(s, 3).is_err());
        assert_eq!(SymmetricContext::all(s).iter().map(|c| c.d).collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn fixed_examples() {
        let c = ctx(4, 9, 4);
        let fixed = fixed_partitions(&c);
        assert!(fixed.contains(&p("1,8|2,3,6,7|4,5")));
        assert!(fixed.contains(&SetPartition::one_block(8)));
        assert_eq!(fixed_partitions(&ctx(3, 5, 2)).len(), 3);
    }

    #[test]
    fn block_kinds() {
        use BlockKind::*;
        let c = ctx(4, 9, 4);
        assert_eq!(classify_blocks(&p("1,8|2,3,6,7|4,5"), &c).unwrap(), vec![Wrapping, Central, Plain]);
        assert_eq!(classify_blocks(&SetPartition::one_block(8), &c).unwrap(), vec![Central]);
        assert_eq!(classify_blocks(&p("1,6|2,3|4,5"), &ctx(6, 7, 2)).unwrap(), vec![Wrapping, Plain, Plain]);
        assert_eq!(classify_blocks(&p("1,2|3,4,5,6,7,8"), &c), Err(SymmetryError::NotFixed { d: 4 }));
    }

    #[test]
    fn noble_partitions() {
        let c = ctx(6, 7, 3);
        assert!(!is_noble_partition(&p("1|2,3,5,6|4"), &c).unwrap());
        assert!(is_noble_partition(&p("1,3,4,6|2|5"), &c).unwrap());
        assert!(is_noble_partition(&p("1,2,4,5|3|6"), &c).unwrap());
        let c = ctx(6, 7, 2);
        assert!(!is_noble_partition(&p("1,6|2,3|4,5"), &c).unwrap());
        assert!(is_noble_partition(&p("1,2|3,4|5,6"), &c).unwrap());
    }

    #[test]
    fn modified_sequences() {
        let c = ctx(4, 9, 4);
        assert_eq!(modified_rank_sequence(&p("1,8|2,3,6,7|4,5"), &c).unwrap().entries, vec![0, 0, 0, 1]);
        assert_eq!(modified_rank_sequence(&SetPartition::one_block(8), &c).unwrap().entries, vec![0; 4]);
        assert_eq!(modified_rank_sequence(&p("1,3,4,6|2|5"), &ctx(6, 7, 3)).unwrap().entries, vec![0, 1, 0]);
    }

    #[test]
    fn l_paths() {
        let c = ctx(4, 7, 3);
        let l = l_of(&seq(c, &[0, 1, 1])).unwrap();
        assert_eq!(l.runs, vec![0, 1, 1, 0, 1, 1]);
        assert_eq!(l.segments, vec![0, 3]);
        assert!(l.to_dyck_path().is_err());
        assert_eq!(l_of(&ModifiedRankSequence::zero(c)).unwrap().runs, vec![4, 0, 0, 0, 0, 0]);
        assert!(l_of(&seq(ctx(9, 13, 4), &[1, 2, 0, 0])).unwrap().to_dyck_path().is_ok());
        assert_eq!(l_of(&seq(ctx(11, 13, 4), &[1, 0, 2, 0])), Err(SymmetryError::NotVeryGood));
    }

    #[test]
    fn noble_sequences() {
        let c = ctx(4, 7, 3);
        assert!(!is_noble_sequence(&seq(c, &[0, 1, 1])));
        assert!(is_noble_sequence(&seq(c, &[1, 1, 0])));
        assert!(is_noble_sequence(&ModifiedRankSequence::zero(c)));
        assert!(!is_noble_sequence(&seq(ctx(11, 13, 4), &[1, 0, 2, 0])));
    }

    #[test]
    fn cycle_lemma() {
        let s = seq(ctx(11, 13, 4), &[1, 0, 2, 0]);
        let lab = cycle_lemma_labeling(&s);
        assert_eq!(lab.min_weight, -14);
        assert_eq!(*lab.weights.last().unwrap(), -10);
        assert_eq!(noble_rotation(&s).unwrap().0.entries, vec![0, 2, 0, 1]);
        let c = ctx(4, 7, 3);
        assert_eq!(noble_rotation(&seq(c, &[0, 1, 1])).unwrap().0.entries, vec![1, 1, 0]);
        let z = ModifiedRankSequence::zero(c);
        assert_eq!(noble_rotation(&z).unwrap(), (z, 0));
        assert_eq!(noble_rotation(&seq(c, &[1, 1, 1])), Err(SymmetryError::NotGood));
    }

    #[test]
    fn inverse_examples() {
        let c = ctx(4, 9, 4);
        assert_eq!(s_d_inverse(&seq(c, &[0, 0, 0, 1])).unwrap(), p("1,8|2,3,6,7|4,5"));
        assert_eq!(s_d_inverse(&ModifiedRankSequence::zero(c)).unwrap(), SetPartition::one_block(8));
        assert_eq!(s_d_inverse(&seq(ctx(6, 7, 3), &[0, 1, 0])).unwrap(), p("1,3,4,6|2|5"));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_symmetric_catalan(&ctx(3, 5, 2)), BigUint::from(3u32));
        assert_eq!(count_symmetric_kreweras(&ctx(4, 9, 4), &[1, 0, 0, 0]).unwrap(), BigUint::from(4u32));
        assert_eq!(count_symmetric_narayana(&ctx(6, 7, 3), 1, true).unwrap(), BigUint::from(6u32));
        assert!(count_symmetric_kreweras(&ctx(4, 9, 4), &[0, 0, 1, 0]).is_err());
        // (3,5), d = 2: q = 2 does not divide 3, so every fixed partition has a central block
        let c = ctx(3, 5, 2);
        let total: BigUint = (0..=1).map(|p| count_symmetric_narayana(&c, p, true).unwrap()).sum();
        assert_eq!(total, BigUint::from(3u32));
        assert_eq!(count_symmetric_narayana(&c, 1, false).unwrap(), BigUint::default());
    }

    #[test]
    fn orbit_profiles() {
        let c = ctx(4, 9, 4);
        let prof = orbit_profile(&p("1,8|2,3,6,7|4,5"), &c).unwrap();
        assert_eq!(prof, OrbitProfile { m: vec![1, 0, 0, 0], central: true });
        assert_eq!(orbit_profile(&SetPartition::one_block(8), &c).unwrap().orbits(), 0);
    }
}
