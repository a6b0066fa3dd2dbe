//! Rational noncrossing partitions: the laser map from Dyck paths, its
//! homogeneous variant, the path rotation `rot'`, ranks and membership tests.

mod membership;
mod rank;

use rayon::prelude::*;
use thiserror::Error;

use crate::lattice_paths::{enumerate_paths, DyckPath, PathError, Point, Slope, SlopeError, Step};
use crate::set_partitions::{PartitionError, SetPartition};

pub use membership::{has_valid_ranking, is_member, is_member_kreweras, is_member_rank_orbit, is_member_reconstruction};
pub use rank::{path_from_rank_sequence, rank_assignment, rank_sequence, RankAssignment, RankSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("partition is on [{got}], expected [{expected}]")]
    WrongGroundSet { expected: u32, got: u32 },
    #[error("block {block:?} has negative rank {rank}")]
    NegativeRank { block: Vec<u32>, rank: i64 },
}

/// Groups the labels `1..=n` by the innermost span `[lo, hi]` that contains them.
/// Spans must be pairwise nested or disjoint.
fn regions(n: u32, spans: &[(u32, u32)]) -> SetPartition {
    let labels: Vec<usize> = (1..=n)
        .map(|i| {
            spans
                .iter()
                .enumerate()
                .filter(|(_, &(lo, hi))| lo <= i && i <= hi)
                .min_by_key(|(_, &(lo, hi))| hi - lo)
                .map_or(0, |(k, _)| k + 1)
        })
        .collect();
    SetPartition::from_labels(&labels)
}

/// `pi(D)`: the noncrossing partition of `[b-1]` cut out by the valley lasers.
/// Label `i` sits just below the east end of the `i`-th east step, so the laser
/// `(v, e)` encloses exactly the labels `v+1..=e`.
pub fn partition_of_path(path: &DyckPath) -> Result<SetPartition, NcError> {
    let slope = path.slope().require_proper()?;
    let spans: Vec<(u32, u32)> = path.laser_set().iter().map(|l| (l.i + 1, l.j)).collect();
    Ok(regions(slope.b() - 1, &spans))
}

/// The homogeneous partition of `[a+b-1]`: lasers are fired from the south end
/// of every north step. Lattice points of the path are numbered `0..=a+b` from
/// the origin; label `i` belongs to the `i`-th point.
pub fn homogeneous_partition_of_path(path: &DyckPath) -> SetPartition {
    let slope = path.slope();
    let heights = path.heights();
    let mut spans = Vec::new();
    let mut y = 0;
    for (x, &r) in path.runs().iter().enumerate() {
        for k in 0..r {
            let from = Point::new(x as u32, y + k);
            // the ray from the origin runs along the diagonal to the endpoint
            if from != Point::new(0, 0) {
                let hit = path.fire(&heights, from);
                spans.push((from.x + from.y + 1, hit.east_x + hit.y));
            }
        }
        y += r;
    }
    regions(slope.a() + slope.b() - 1, &spans)
}

/// The path operator intertwining `pi` with `rot^{-1}`.
pub fn rot_prime(path: &DyckPath) -> Result<DyckPath, NcError> {
    let slope = path.slope().require_proper()?;
    let runs = path.runs();
    let i1 = runs[0] as usize;
    if i1 == slope.a() as usize {
        return Ok(path.clone());
    }
    let first_east = runs[1..].iter().take_while(|&&r| r == 0).count() + 1;
    let word = path.steps();
    let out: Vec<Step> = if first_east > 1 {
        let mut w = word;
        w.remove(i1);
        w.push(Step::East);
        w
    } else {
        let hit = path.fire(&path.heights(), Point::new(1, i1 as u32));
        let cut = (hit.east_x + hit.y) as usize;
        let (first, second) = (&word[..i1], &word[i1..i1 + 1]);
        let (third, fourth) = (&word[i1 + 1..cut], &word[cut..]);
        [third, first, fourth, second].concat()
    };
    Ok(DyckPath::from_steps(slope, &out)?)
}

/// `NC(a,b)` in canonical order.
pub fn enumerate_nc(slope: Slope) -> Result<Vec<SetPartition>, NcError> {
    let slope = slope.require_proper()?;
    let mut out: Vec<SetPartition> = enumerate_paths(slope)
        .par_iter()
        .map(|p| partition_of_path(p).expect("slope checked"))
        .collect();
    out.par_sort_unstable();
    out.dedup();
    Ok(out)
}

/// `HNC(a,b)` in canonical order.
pub fn enumerate_hnc(slope: Slope) -> Vec<SetPartition> {
    let mut out: Vec<SetPartition> = enumerate_paths(slope).par_iter().map(homogeneous_partition_of_path).collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

pub(crate) fn check_ground_set(p: &SetPartition, slope: Slope) -> Result<(), NcError> {
    let expected = slope.b() - 1;
    if p.n() != expected {
        return Err(NcError::WrongGroundSet { expected, got: p.n() });
    }
    if !p.is_noncrossing() {
        return Err(PartitionError::NotNoncrossing.into());
    }
    Ok(())
}
