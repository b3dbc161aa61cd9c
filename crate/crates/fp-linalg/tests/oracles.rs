//! Independent oracles for the F_p linear algebra: an integer
//! fraction-free elimination reduced mod p, brute-force subspace counting
//! over small fields, and determinism/duality properties.

use fp_linalg::{kernel_basis, rank, row_reduce, subquotient_dim, FpMatrix, FpScalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank of an integer matrix mod p via fraction-free (Bareiss-style)
/// elimination carried out in i128, entirely independent of FpMatrix.
fn integer_rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| (v % p) as i128).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let p = p as i128;
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (row..nrows).find(|&r| a[r][col].rem_euclid(p) != 0) else {
            continue;
        };
        a.swap(row, pivot);
        for r in row + 1..nrows {
            if a[r][col].rem_euclid(p) == 0 {
                continue;
            }
            let (num, den) = (a[r][col], a[row][col]);
            for c in 0..ncols {
                a[r][c] = (a[r][c] * den - a[row][c] * num).rem_euclid(p);
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

#[test]
fn random_rank_matches_integer_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let rows: Vec<Vec<i64>> = (0..20)
            .map(|_| (0..20).map(|_| rng.gen_range(0..5)).collect())
            .collect();
        let m = FpMatrix::from_rows(&rows, 5).unwrap();
        assert_eq!(rank(&m), integer_rank_mod_p(&rows, 5));
    }
}

/// Count elements of a subspace of F_5^n spanned by `vectors` by brute
/// force, and return its dimension as log_5 of the count.
fn brute_force_span_dim(vectors: &[Vec<u64>], n: usize, p: u64) -> usize {
    let mut seen = std::collections::HashSet::new();
    let k = vectors.len();
    let total = p.pow(k as u32);
    for mask in 0..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut m = mask;
        for _ in 0..k {
            coeffs.push(m % p);
            m /= p;
        }
        let mut v = vec![0u64; n];
        for (c, vec) in coeffs.iter().zip(vectors) {
            for (i, x) in vec.iter().enumerate() {
                v[i] = (v[i] + c * x) % p;
            }
        }
        seen.insert(v);
    }
    let count = seen.len() as u64;
    let mut dim = 0;
    let mut acc = 1u64;
    while acc < count {
        acc *= p;
        dim += 1;
    }
    assert_eq!(acc, count, "span size must be a power of p");
    dim
}

#[test]
fn subquotient_matches_exhaustive_enumeration_over_f5() {
    let p = 5u64;
    let ambient = 5usize;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        // random survivors matrix out of the ambient space
        let surv_rows: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..ambient).map(|_| rng.gen_range(0..5)).collect())
            .collect();
        let survivors = FpMatrix::from_rows(&surv_rows, p).unwrap();

        // pick killers inside ker(survivors) so the composition vanishes
        let ker = kernel_basis(&survivors);
        if ker.is_empty() {
            continue;
        }
        let mut killers = FpMatrix::zero(ambient, 2, p).unwrap();
        for j in 0..2 {
            // random combination of kernel vectors
            let mut col = vec![0i64; ambient];
            for v in &ker {
                let c = rng.gen_range(0..5) as i64;
                for (i, x) in v.iter().enumerate() {
                    col[i] += c * x.value() as i64;
                }
            }
            for (i, x) in col.iter().enumerate() {
                killers.set(i, j, *x);
            }
        }

        let got = subquotient_dim(ambient, &killers, &survivors).unwrap();

        // brute force: dim ker(survivors) minus dim span(killer columns)
        let mut kernel_count = 0u64;
        let total = p.pow(ambient as u32);
        for mask in 0..total {
            let mut v = Vec::with_capacity(ambient);
            let mut m = mask;
            for _ in 0..ambient {
                v.push(FpScalar::new((m % p) as i64, p).unwrap());
                m /= p;
            }
            if survivors.apply(&v).iter().all(|x| x.is_zero()) {
                kernel_count += 1;
            }
        }
        let mut ker_dim = 0;
        let mut acc = 1u64;
        while acc < kernel_count {
            acc *= p;
            ker_dim += 1;
        }
        assert_eq!(acc, kernel_count);

        let killer_cols: Vec<Vec<u64>> = (0..2)
            .map(|j| (0..ambient).map(|i| killers.get(i, j).value()).collect())
            .collect();
        let killer_dim = brute_force_span_dim(&killer_cols, ambient, p);
        assert_eq!(got, ker_dim - killer_dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_rank_of_transpose(
        rows in prop::collection::vec(prop::collection::vec(0i64..7, 6), 1..8)
    ) {
        let m = FpMatrix::from_rows(&rows, 7).unwrap();
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_count_plus_rank_is_cols(
        rows in prop::collection::vec(prop::collection::vec(0i64..5, 5), 1..7)
    ) {
        let m = FpMatrix::from_rows(&rows, 5).unwrap();
        prop_assert_eq!(kernel_basis(&m).len() + rank(&m), m.cols());
        for v in kernel_basis(&m) {
            prop_assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn reduction_independent_of_insertion_order(
        entries in prop::collection::vec(((0usize..6, 0usize..6), 1i64..5), 0..18),
        seed in 0u64..1000
    ) {
        let mut a = FpMatrix::zero(6, 6, 5).unwrap();
        for ((r, c), v) in &entries {
            a.add_to(*r, *c, *v);
        }
        let mut shuffled = entries.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            let j = rng.gen_range(0..=i);
            shuffled.swap(i, j);
        }
        let mut b = FpMatrix::zero(6, 6, 5).unwrap();
        for ((r, c), v) in &shuffled {
            b.add_to(*r, *c, *v);
        }
        let ra = row_reduce(&a);
        let rb = row_reduce(&b);
        prop_assert_eq!(ra.rank, rb.rank);
        prop_assert_eq!(ra.pivot_cols, rb.pivot_cols);
        prop_assert_eq!(ra.reduced, rb.reduced);
    }
}
