use num_bigint::BigUint;

use crate::error::{precondition, Result};

/// Closed-form bounds for length `n` and alphabet `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub n: usize,
    pub q: u8,
    /// Tight irreducible binary partitions have at least `n + 3` members
    /// (stated for `n >= 4`).
    pub min_size_lower: Option<u64>,
    /// Irreducible binary partitions have at most
    /// `floor((2n - 1) 2^n / (3n - 1))` members.
    pub max_size_upper: BigUint,
    /// Tight irreducible partitions and tight minimal covers of
    /// `{0..q-1}^n` have at least `(q - 1) n + 1` members.
    pub cover_lower: u64,
    /// Tight irreducible affine partitions have at least `n + 1` members.
    pub avsp_lower: u64,
    /// Codimensions `k >= 2` allowed for an irreducible homogeneous partition
    /// of length `n >= 4`: those with `k + 1 <= n <= 2^k - 3`.
    pub homogeneous_codims: Vec<u32>,
}

pub fn bounds(n: usize, q: u8) -> Result<Bounds> {
    if n == 0 || q < 2 {
        return precondition("bounds need n >= 1 and q >= 2");
    }
    let n64 = n as u64;
    let max_size_upper = (BigUint::from(2 * n64 - 1) << n) / BigUint::from(3 * n64 - 1);
    let homogeneous_codims = if n >= 4 {
        (2..n as u32).filter(|&k| k < 64 && n64 + 3 <= 1u64 << k).collect()
    } else {
        Vec::new()
    };
    Ok(Bounds {
        n,
        q,
        min_size_lower: (n >= 4).then_some(n64 + 3),
        max_size_upper,
        cover_lower: (q as u64 - 1) * n64 + 1,
        avsp_lower: n64 + 1,
        homogeneous_codims,
    })
}
