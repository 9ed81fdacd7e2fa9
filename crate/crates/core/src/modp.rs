//! Word-sized arithmetic modulo a prime, used by the falsifier's rank
//! certificates.

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

pub fn from_i64(x: i64, p: u64) -> u64 {
    let r = (x as i128).rem_euclid(p as i128);
    r as u64
}

/// Rank of a dense matrix over F_p. Rows are consumed.
pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv_p = inv(rows[rank][col], p);
        for c in col..ncols {
            rows[rank][c] = mul(rows[rank][c], inv_p, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..ncols {
                    let t = mul(f, rows[rank][c], p);
                    rows[r][c] = sub(rows[r][c], t, p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for a in [1u64, 2, 3, 12345, P61 - 1] {
            assert_eq!(mul(a, inv(a, P61), P61), 1);
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        let p = P61;
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]], p), 1);
        assert_eq!(rank(vec![vec![1, 2], vec![3, 4]], p), 2);
        assert_eq!(rank(vec![vec![0, 0], vec![0, 0]], p), 0);
        assert_eq!(rank(vec![vec![1, 0, 0], vec![0, 1, 0]], p), 2);
    }
}
