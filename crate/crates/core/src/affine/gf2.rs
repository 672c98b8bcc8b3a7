//! Bit-vector linear algebra over GF(2). Vectors are `u64` words; a basis
//! in reduced row echelon form is kept sorted by descending pivot, where
//! the pivot of a row is its highest set bit.

pub(crate) fn pivot(v: u64) -> u64 {
    debug_assert!(v != 0);
    1u64 << (63 - v.leading_zeros())
}

/// Reduces `v` against an echelon basis.
pub(crate) fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &row in basis {
        if v & pivot(row) != 0 {
            v ^= row;
        }
    }
    v
}

/// Inserts `v`; returns false when it was already in the span.
pub(crate) fn insert(basis: &mut Vec<u64>, v: u64) -> bool {
    let v = reduce(basis, v);
    if v == 0 {
        return false;
    }
    let p = pivot(v);
    for row in basis.iter_mut() {
        if *row & p != 0 {
            *row ^= v;
        }
    }
    let at = basis.partition_point(|&r| pivot(r) > p);
    basis.insert(at, v);
    true
}

pub(crate) fn rref(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis = Vec::new();
    for v in vectors {
        insert(&mut basis, v);
    }
    basis
}

/// Intersection of two spans (Zassenhaus).
pub(crate) fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut rows: Vec<u128> = Vec::new();
    let mut push = |mut v: u128| {
        for &r in rows.iter() {
            let p = 1u128 << (127 - r.leading_zeros());
            if v & p != 0 {
                v ^= r;
            }
        }
        if v != 0 {
            let p = 1u128 << (127 - v.leading_zeros());
            for r in rows.iter_mut() {
                if *r & p != 0 {
                    *r ^= v;
                }
            }
            let at = rows.partition_point(|&r| r.leading_zeros() < v.leading_zeros());
            rows.insert(at, v);
        }
    };
    for &u in a {
        push((u as u128) << 64 | u as u128);
    }
    for &w in b {
        push((w as u128) << 64);
    }
    rref(rows.into_iter().filter(|r| r >> 64 == 0).map(|r| r as u64))
}
