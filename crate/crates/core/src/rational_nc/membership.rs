use super::{check_ground_set, partition_of_path, rank_assignment, rank_sequence, path_from_rank_sequence, NcError};
use crate::lattice_paths::{is_admissible, Slope};
use crate::set_partitions::SetPartition;

/// All ranks positive and summing to `a`.
pub fn has_valid_ranking(p: &SetPartition, slope: Slope) -> Result<bool, NcError> {
    let ra = rank_assignment(p, slope)?;
    Ok(ra.ranks.iter().all(|&r| r > 0) && ra.total() == slope.a() as i64)
}

/// Rebuilds the candidate path from the rank sequence and maps it back.
pub fn is_member_reconstruction(p: &SetPartition, slope: Slope) -> Result<bool, NcError> {
    let ra = rank_assignment(p, slope)?;
    if ra.ranks.iter().any(|&r| r <= 0) {
        return Ok(false);
    }
    let rs = rank_sequence(p, slope)?;
    match path_from_rank_sequence(&rs) {
        Ok(path) => Ok(partition_of_path(&path)? == *p),
        Err(NcError::Path(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Tests the blocks of the Kreweras complement against the admissible lasers
/// and the strict ceiling inequality.
pub fn is_member_kreweras(p: &SetPartition, slope: Slope) -> Result<bool, NcError> {
    let slope = slope.require_proper()?;
    check_ground_set(p, slope)?;
    let (a, b) = (slope.a() as i64, slope.b() as i64);
    let ceil = |len: u32| slope.ceil_height(len as u64) as i64;
    for block in p.kreweras()?.blocks() {
        let (&top, rest) = block.split_last().unwrap();
        if rest.iter().any(|&i| !is_admissible(slope, i, top)) {
            return Ok(false);
        }
        for (k, &i) in rest.iter().enumerate() {
            for &j in &rest[k + 1..] {
                // ceil((top-i)a/b) - ceil((top-j)a/b) > (j-i)a/b
                if b * (ceil(top - i) - ceil(top - j)) <= (j - i) as i64 * a {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every rotation of `p` has a valid ranking.
pub fn is_member_rank_orbit(p: &SetPartition, slope: Slope) -> Result<bool, NcError> {
    let mut q = p.clone();
    for _ in 0..p.n() {
        if !has_valid_ranking(&q, slope)? {
            return Ok(false);
        }
        q = q.rotate();
    }
    Ok(true)
}

/// Default membership test for `NC(a,b)`.
pub fn is_member(p: &SetPartition, slope: Slope) -> Result<bool, NcError> {
    is_member_reconstruction(p, slope)
}
