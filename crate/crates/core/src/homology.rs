//! Integral homology of truncated presentations.
//!
//! With a truncation at dimension `n` the groups `H_0 .. H_{n-1}` agree with
//! the homology of any extension of the presentation, because they only use
//! boundaries up to degree `n`. `H_n` is not determined and is never
//! reported.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chain::{normalized_chains, ChainComplex};
use crate::error::{Result, SegalError};
use crate::snf::smith_normal_form;
use crate::sset::SimplicialSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySignature {
    pub rank: usize,
    /// Torsion coefficients in divisibility order, each `> 1`, as decimal
    /// strings so arbitrarily large coefficients serialize exactly.
    pub torsion: Vec<String>,
}

impl HomologySignature {
    pub fn free(rank: usize) -> Self {
        HomologySignature { rank, torsion: Vec::new() }
    }
}

impl std::fmt::Display for HomologySignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology of a complex in one degree; needs the boundary out of degree
/// `k + 1`, so `k` must lie strictly below the top degree.
pub fn complex_homology(c: &ChainComplex, k: usize) -> Result<HomologySignature> {
    if k + 1 > c.top_degree() {
        return Err(SegalError::unsupported(format!(
            "homology in degree {k} needs boundaries beyond the truncation"
        )));
    }
    let rank_k = c.ranks[k];
    let rank_dk = smith_normal_form(&c.boundaries[k]).rank();
    let snf_up = smith_normal_form(&c.boundaries[k + 1]);
    let rank_dk1 = snf_up.rank();
    let torsion: Vec<String> = snf_up
        .diag
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_string())
        .collect();
    Ok(HomologySignature { rank: rank_k - rank_dk - rank_dk1, torsion })
}

/// `H_k` of a presentation, `k <= truncation - 1`.
pub fn homology(x: &SimplicialSet, k: usize) -> Result<HomologySignature> {
    complex_homology(&normalized_chains(x), k)
}

/// `H_0 .. H_up_to`, capped at what the truncation determines.
pub fn homology_range(x: &SimplicialSet, up_to: usize) -> Result<Vec<HomologySignature>> {
    let c = normalized_chains(x);
    let top = up_to.min(x.truncation().saturating_sub(1));
    (0..=top).map(|k| complex_homology(&c, k)).collect()
}

/// Largest degree where homology comparisons between presentations of this
/// truncation are meaningful.
pub fn reliable_degree(x: &SimplicialSet) -> usize {
    x.truncation().saturating_sub(1)
}

/// Betti-number check data: torsion-free Euler characteristic from homology
/// must match the generator count alternating sum.
pub fn euler_from_homology(x: &SimplicialSet) -> Result<i64> {
    // Only valid when homology vanishes at and above the truncation; used on
    // fully resolved presentations in tests.
    let sigs = homology_range(x, reliable_degree(x))?;
    Ok(sigs
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { s.rank as i64 } else { -(s.rank as i64) })
        .sum())
}

pub fn torsion_big(sig: &HomologySignature) -> Vec<BigInt> {
    sig.torsion.iter().map(|t| t.parse().expect("decimal torsion")).collect()
}
