//! Naive textbook GF(2) elimination, kept deliberately independent of the
//! packed-bit implementation in the core crate. The reproduction suite uses
//! it as the oracle for ranks and solvability.

/// Rank by plain row reduction on byte matrices.
#[must_use]
#[allow(clippy::needless_range_loop)]
pub fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut a: Vec<Vec<u8>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| a[r][col] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..nrows {
            if r != rank && a[r][col] == 1 {
                for c in col..ncols {
                    a[r][c] ^= a[rank][c];
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solvability of `A·x = b` by eliminating the augmented matrix; returns a
/// particular solution when consistent.
#[must_use]
#[allow(clippy::needless_range_loop)]
pub fn naive_solve(rows: &[Vec<u8>], rhs: &[u8]) -> Option<Vec<u8>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    assert_eq!(rhs.len(), nrows);
    let mut a: Vec<Vec<u8>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| a[r][col] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..nrows {
            if r != rank && a[r][col] == 1 {
                for c in col..=ncols {
                    a[r][c] ^= a[rank][c];
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    for row in a.iter().skip(rank) {
        if row[ncols] == 1 {
            return None;
        }
    }
    let mut x = vec![0u8; ncols];
    for &(r, c) in &pivots {
        x[c] = a[r][ncols];
    }
    Some(x)
}

/// `A·x` over GF(2), bytewise.
#[must_use]
pub fn naive_mul(rows: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
    rows.iter()
        .map(|row| row.iter().zip(x).fold(0u8, |acc, (&a, &b)| acc ^ (a & b)))
        .collect()
}
