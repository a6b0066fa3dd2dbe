use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{eval_at_primitive_root, q_catalan, q_kreweras, q_narayana, QError, QPolynomial};
use crate::lattice_paths::Slope;
use crate::rational_nc::{enumerate_hnc, enumerate_nc, rank_assignment};
use crate::set_partitions::SetPartition;

/// A finite set with a cyclic action, given by the permutation induced by a
/// generator, and a candidate sieving polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    pub family: String,
    /// `generator[x]` is the image of element `x`.
    pub generator: Vec<usize>,
    /// `|C|`.
    pub order: u32,
    pub polynomial: QPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspRow {
    pub d: u32,
    pub k: u32,
    #[serde(serialize_with = "ser_eval")]
    pub eval: Option<BigInt>,
    pub fixed: u64,
    pub ok: bool,
}

fn ser_eval<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(x) => match i64::try_from(x) {
            Ok(small) => s.serialize_i64(small),
            Err(_) => s.serialize_str(&x.to_string()),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspReport {
    pub family: String,
    pub size: usize,
    pub order: u32,
    pub rows: Vec<CspRow>,
    pub pass: bool,
}

impl CspReport {
    pub fn failures(&self) -> impl Iterator<Item = &CspRow> {
        self.rows.iter().filter(|r| !r.ok)
    }
}

impl CspInstance {
    /// Builds the instance for partitions acted on by `rotate`.
    pub fn from_partitions(family: impl Into<String>, parts: &[SetPartition], order: u32, polynomial: QPolynomial) -> Self {
        let index: HashMap<&SetPartition, usize> = parts.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let generator = parts
            .iter()
            .map(|p| *index.get(&p.rotate()).expect("family must be closed under rotation"))
            .collect();
        CspInstance { family: family.into(), generator, order, polynomial }
    }

    pub fn size(&self) -> usize {
        self.generator.len()
    }

    /// Orbit length of every element.
    fn orbit_lengths(&self) -> Result<Vec<u32>, QError> {
        let n = self.generator.len();
        let mut seen = vec![false; n];
        for &g in &self.generator {
            if g >= n || std::mem::replace(&mut seen[g], true) {
                return Err(QError::InvalidArgument("generator is not a permutation".into()));
            }
        }
        let mut len = vec![0u32; n];
        for start in 0..n {
            if len[start] != 0 {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = self.generator[start];
            while x != start {
                cycle.push(x);
                x = self.generator[x];
            }
            if !self.order.is_multiple_of(cycle.len() as u32) {
                return Err(QError::InvalidArgument(format!(
                    "orbit of length {} does not divide |C| = {}",
                    cycle.len(),
                    self.order
                )));
            }
            for &y in &cycle {
                len[y] = cycle.len() as u32;
            }
        }
        Ok(len)
    }
}

/// Checks `X(zeta^d) = |X^{c^d}|` for every `d` in `0..|C|`, where `zeta^d` is a
/// primitive `|C|/gcd(d,|C|)`-th root of unity.
pub fn csp_verify(inst: &CspInstance) -> Result<CspReport, QError> {
    let lengths = inst.orbit_lengths()?;
    let order = inst.order;
    if order == 0 {
        return Err(QError::InvalidArgument("|C| must be positive".into()));
    }
    let rows: Vec<CspRow> = (0..order)
        .into_par_iter()
        .map(|d| {
            let k = order / d.gcd(&order);
            let eval = eval_at_primitive_root(&inst.polynomial, k).ok();
            let fixed = lengths.iter().filter(|&&l| d % l == 0).count() as u64;
            let ok = eval.as_ref() == Some(&BigInt::from(fixed));
            CspRow { d, k, eval, fixed, ok }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ok);
    Ok(CspReport { family: inst.family.clone(), size: inst.size(), order, rows, pass })
}

/// `NC(a,b)` under rotation with `Cat_q(a,b)`.
pub fn catalan_instance(slope: Slope) -> Result<CspInstance, QError> {
    let parts = nc(slope)?;
    Ok(CspInstance::from_partitions(format!("catalan{slope}"), &parts, slope.b() - 1, q_catalan(slope)?))
}

/// Members of `NC(a,b)` with `k` blocks, with `Nar_q(a,b,k)`.
pub fn narayana_instance(slope: Slope, k: u32) -> Result<CspInstance, QError> {
    let poly = q_narayana(slope, k)?;
    let parts: Vec<SetPartition> = nc(slope)?.into_iter().filter(|p| p.num_blocks() == k as usize).collect();
    Ok(CspInstance::from_partitions(format!("narayana{slope} k={k}"), &parts, slope.b() - 1, poly))
}

/// Members of `NC(a,b)` with `r[i-1]` blocks of rank `i`, with `Krew_q(a,b,r)`.
pub fn kreweras_instance(slope: Slope, r: &[u32]) -> Result<CspInstance, QError> {
    let poly = q_kreweras(slope, r)?;
    let parts: Vec<SetPartition> = nc(slope)?
        .into_iter()
        .filter(|p| rank_profile(p, slope).as_deref() == Some(r))
        .collect();
    Ok(CspInstance::from_partitions(format!("kreweras{slope} r={r:?}"), &parts, slope.b() - 1, poly))
}

/// `HNC(a,b)` on `[a+b-1]` under rotation with `Cat_q(a,b)`.
pub fn homogeneous_instance(slope: Slope) -> Result<CspInstance, QError> {
    let parts = enumerate_hnc(slope);
    Ok(CspInstance::from_partitions(
        format!("homogeneous{slope}"),
        &parts,
        slope.a() + slope.b() - 1,
        q_catalan(slope)?,
    ))
}

fn nc(slope: Slope) -> Result<Vec<SetPartition>, QError> {
    enumerate_nc(slope).map_err(|e| QError::InvalidArgument(e.to_string()))
}

/// `r[i-1]` = number of blocks of rank `i`.
pub(crate) fn rank_profile(p: &SetPartition, slope: Slope) -> Option<Vec<u32>> {
    let ranks = rank_assignment(p, slope).ok()?.ranks;
    let mut r = vec![0u32; slope.a() as usize];
    for x in ranks {
        if x < 1 || x > slope.a() as i64 {
            return None;
        }
        r[x as usize - 1] += 1;
    }
    Some(r)
}
