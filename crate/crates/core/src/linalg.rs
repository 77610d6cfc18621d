//! Exact matrix rank: fraction-free Bareiss elimination over the integers
//! and ordinary elimination modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::poly::univariate::{inv_mod, mulmod};

/// Rank over Q of an integer matrix.
///
/// Pivots are the first nonzero entry of each column in row order, so the
/// elimination is deterministic. Every intermediate entry is a minor of the
/// input, which keeps the division by the previous pivot exact.
pub fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[col];
        tail.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &row[j] * pv - &factor * &prow[j];
                row[j] = v.div_floor(&prev);
            }
        });
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over F_p of a matrix of residues in `[0, p)`.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p).unwrap();
        for v in m[rank].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        tail.par_iter_mut().for_each(|row| {
            let c = row[col];
            if c != 0 {
                for j in col..cols {
                    row[j] = (row[j] + p - mulmod(c, prow[j], p)) % p;
                }
            }
        });
        rank += 1;
    }
    rank
}

/// Reduction of an integer matrix mod `p`.
pub fn reduce_mod_p(m: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
    let pb = BigInt::from(p);
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = x.mod_floor(&pb);
                    debug_assert!(!r.is_negative());
                    r.to_u64().unwrap()
                })
                .collect()
        })
        .collect()
}

/// Rank over Q, screened by the rank mod a large prime: the modular rank
/// never exceeds the rational one, so full row rank mod p settles it.
pub fn rank_rational(m: Vec<Vec<BigInt>>) -> usize {
    const SCREEN: u64 = 2_147_483_647;
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    if rank_mod_p(reduce_mod_p(&m, SCREEN), SCREEN) == rows {
        return rows;
    }
    rank_bareiss(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_bareiss(big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_bareiss(big(&[&[0, 1, 2], &[0, 2, 5], &[0, 0, 0]])), 2);
        assert_eq!(rank_bareiss(big(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
        assert_eq!(rank_bareiss(Vec::new()), 0);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 7), 1);
        // singular mod 5 only
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![3, 1]], 5), 1);
        assert_eq!(rank_bareiss(big(&[&[1, 2], &[3, 1]])), 2);
    }

    #[test]
    fn modular_rank_bounded_by_exact_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let rows = rng.random_range(1..7);
            let cols = rng.random_range(1..7);
            let r = rng.random_range(1..=rows.min(cols));
            // product of rows x r and r x cols integer matrices has rank <= r
            let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..r).map(|_| rng.random_range(-9..10)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..r).map(|_| (0..cols).map(|_| rng.random_range(-9..10)).collect()).collect();
            let m: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from((0..r).map(|t| a[i][t] * b[t][j]).sum::<i64>())).collect())
                .collect();
            let exact = rank_bareiss(m.clone());
            assert!(exact <= r);
            for p in [2u64, 3, 101, 2_147_483_647] {
                assert!(rank_mod_p(reduce_mod_p(&m, p), p) <= exact);
            }
            assert_eq!(rank_mod_p(reduce_mod_p(&m, 2_147_483_647), 2_147_483_647), exact);
            assert_eq!(rank_rational(m), exact);
        }
    }
}
