use serde::Serialize;

use super::{check_ground_set, NcError};
use crate::lattice_paths::{validate_path, DyckPath, Slope};
use crate::set_partitions::SetPartition;

/// The `a,b`-rank of every block of a noncrossing partition of `[b-1]`.
/// `ranks[k]` belongs to `partition.blocks()[k]`; values may be nonpositive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankAssignment {
    pub slope: Slope,
    pub partition: SetPartition,
    pub ranks: Vec<i64>,
}

impl RankAssignment {
    pub fn rank_of(&self, block: &[u32]) -> Option<i64> {
        self.partition.blocks().iter().position(|b| b == block).map(|k| self.ranks[k])
    }

    pub fn total(&self) -> i64 {
        self.ranks.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RankSequence {
    pub slope: Slope,
    pub entries: Vec<u32>,
}

pub fn rank_assignment(p: &SetPartition, slope: Slope) -> Result<RankAssignment, NcError> {
    let slope = slope.require_proper()?;
    check_ground_set(p, slope)?;
    let blocks = p.blocks();
    let span = |k: usize| (blocks[k][0], *blocks[k].last().unwrap());
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&k| span(k).1 - span(k).0);
    let mut ranks = vec![0i64; blocks.len()];
    for (pos, &k) in order.iter().enumerate() {
        let (lo, hi) = span(k);
        let nested: i64 = order[..pos]
            .iter()
            .filter(|&&m| lo <= span(m).0 && span(m).1 <= hi)
            .map(|&m| ranks[m])
            .sum();
        ranks[k] = slope.ceil_height((hi - lo + 1) as u64) as i64 - nested;
    }
    Ok(RankAssignment { slope, partition: p.clone(), ranks })
}

/// `R(pi)`: the rank of each block placed at its minimum.
pub fn rank_sequence(p: &SetPartition, slope: Slope) -> Result<RankSequence, NcError> {
    let ra = rank_assignment(p, slope)?;
    let mut entries = vec![0u32; p.n() as usize];
    for (block, &r) in p.blocks().iter().zip(&ra.ranks) {
        if r < 0 {
            return Err(NcError::NegativeRank { block: block.clone(), rank: r });
        }
        entries[block[0] as usize - 1] = r as u32;
    }
    Ok(RankSequence { slope: ra.slope, entries })
}

pub fn path_from_rank_sequence(rs: &RankSequence) -> Result<DyckPath, NcError> {
    Ok(validate_path(rs.slope, &rs.entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_paths::PathError;

    fn s(a: u32, b: u32) -> Slope {
        Slope::new(a, b).unwrap()
    }

    fn p(t: &str) -> SetPartition {
        t.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        let ra = rank_assignment(&p("1,3,7|2|4,5,6"), s(5, 8)).unwrap();
        assert_eq!(ra.ranks, vec![2, 1, 2]);
        assert_eq!(rank_assignment(&SetPartition::one_block(7), s(5, 8)).unwrap().ranks, vec![5]);
        assert_eq!(rank_assignment(&p("1,3|2|4"), s(3, 5)).unwrap().ranks, vec![1, 1, 1]);
        assert!(rank_assignment(&p("1,3|2,4"), s(3, 5)).is_err());
        assert!(rank_assignment(&p("1,2|3"), s(3, 5)).is_err());
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(rank_sequence(&p("1,3|2|4,6,7|5"), s(5, 8)).unwrap().entries, vec![1, 1, 0, 2, 1, 0, 0]);
        assert_eq!(rank_sequence(&SetPartition::one_block(6), s(4, 7)).unwrap().entries, vec![4, 0, 0, 0, 0, 0]);
        assert_eq!(rank_sequence(&p("1,3,7|2|4,5,6"), s(5, 8)).unwrap().entries, vec![2, 1, 0, 2, 0, 0, 0]);
    }

    #[test]
    fn negative_rank_reported() {
        // (2,5): the outer block of {1,4|2|3} has rank ceil(8/5) - 1 - 1 = 0,
        // and in (2,7) the block {1,6} of {1,6|2|3|4|5} gets 2 - 4 = -2
        let err = rank_sequence(&p("1,6|2|3|4|5"), s(2, 7)).unwrap_err();
        assert_eq!(err, NcError::NegativeRank { block: vec![1, 6], rank: -2 });
    }

    #[test]
    fn paths_from_sequences() {
        let rs = |a, b, e: &[u32]| RankSequence { slope: s(a, b), entries: e.to_vec() };
        assert!(path_from_rank_sequence(&rs(5, 8, &[1, 1, 0, 2, 1, 0, 0])).is_ok());
        assert!(path_from_rank_sequence(&rs(4, 7, &[4, 0, 0, 0, 0, 0])).is_ok());
        assert_eq!(
            path_from_rank_sequence(&rs(4, 7, &[0, 1, 1, 0, 1, 1])),
            Err(NcError::Path(PathError::BelowDiagonal { x: 1 }))
        );
    }
}
