//! Exact linear algebra over the prime field F_p.
//!
//! Matrices are stored sparsely and reduced with plain Gauss-Jordan
//! elimination, picking pivots in increasing column order so that every
//! reduction is deterministic for a fixed column labeling. A dense
//! elimination path is used when the matrix is not actually sparse.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is not an odd prime >= 3")]
    NotPrime(u64),
    #[error("matrix shapes are incompatible: {0}")]
    ShapeMismatch(String),
    #[error("survivors * killers != 0 (first nonzero at row {row}, col {col})")]
    CompositionNonzero { row: usize, col: usize },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A residue in `[0, p)` together with its (odd prime) modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u64,
    prime: u64,
}

impl fmt::Debug for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.prime)
    }
}

impl FpScalar {
    pub fn new(value: i64, prime: u64) -> Result<Self, LinalgError> {
        if prime < 3 || !is_prime(prime) {
            return Err(LinalgError::NotPrime(prime));
        }
        Ok(Self::reduce(value, prime))
    }

    /// Caller promises `prime` was validated before.
    pub fn reduce(value: i64, prime: u64) -> Self {
        let p = prime as i64;
        let mut v = value % p;
        if v < 0 {
            v += p;
        }
        FpScalar {
            value: v as u64,
            prime,
        }
    }

    pub fn zero(prime: u64) -> Self {
        FpScalar { value: 0, prime }
    }

    pub fn one(prime: u64) -> Self {
        FpScalar { value: 1, prime }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        FpScalar {
            value: (self.value + other.value) % self.prime,
            prime: self.prime,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        FpScalar {
            value: (self.value + self.prime - other.value) % self.prime,
            prime: self.prime,
        }
    }

    pub fn neg(&self) -> Self {
        FpScalar {
            value: if self.value == 0 {
                0
            } else {
                self.prime - self.value
            },
            prime: self.prime,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        FpScalar {
            value: (self.value * other.value) % self.prime,
            prime: self.prime,
        }
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.prime);
        FpScalar {
            value: pow_mod(self.value, self.prime - 2, self.prime),
            prime: self.prime,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Sparse matrix over F_p. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    prime: u64,
    entries: BTreeMap<(usize, usize), u64>,
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize, prime: u64) -> Result<Self, LinalgError> {
        if prime < 3 || !is_prime(prime) {
            return Err(LinalgError::NotPrime(prime));
        }
        Ok(FpMatrix {
            rows,
            cols,
            prime,
            entries: BTreeMap::new(),
        })
    }

    pub fn identity(n: usize, prime: u64) -> Result<Self, LinalgError> {
        let mut m = Self::zero(n, n, prime)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>], prime: u64) -> Result<Self, LinalgError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows.len(), ncols, prime)?;
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.add_to(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Overwrite one entry; storing zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let v = FpScalar::reduce(value, self.prime).value;
        if v == 0 {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    /// Add `value` into one entry.
    pub fn add_to(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let v = FpScalar::reduce(value, self.prime).value;
        if v == 0 {
            return;
        }
        let e = self.entries.entry((row, col)).or_insert(0);
        *e = (*e + v) % self.prime;
        if *e == 0 {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> FpScalar {
        FpScalar {
            value: *self.entries.get(&(row, col)).unwrap_or(&0),
            prime: self.prime,
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix {
            rows: self.cols,
            cols: self.rows,
            prime: self.prime,
            entries: BTreeMap::new(),
        };
        for (&(r, c), &v) in &self.entries {
            t.entries.insert((c, r), v);
        }
        t
    }

    pub fn matmul(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FpMatrix::zero(self.rows, other.cols, self.prime)?;
        // group rhs by row for the sparse product
        for (&(i, k), &a) in &self.entries {
            for (&(k2, j), &b) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.add_to(i, j, (a * b % self.prime) as i64);
            }
        }
        Ok(out)
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[FpScalar]) -> Vec<FpScalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![FpScalar::zero(self.prime); self.rows];
        for (&(r, c), &a) in &self.entries {
            let term = a * v[c].value % self.prime;
            out[r] = FpScalar {
                value: (out[r].value + term) % self.prime,
                prime: self.prime,
            };
        }
        out
    }

    fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.entries.len() as f64 / (self.rows as f64 * self.cols as f64)
        }
    }

    fn to_sparse_rows(&self) -> Vec<BTreeMap<usize, u64>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(r, c), &v) in &self.entries {
            rows[r].insert(c, v);
        }
        rows
    }
}

/// Outcome of a reduced-row-echelon reduction.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Reduced row-echelon form with pivots chosen in increasing column order.
pub fn row_reduce(m: &FpMatrix) -> RowReduction {
    if m.density() > 0.25 && m.rows > 0 && m.cols > 0 {
        row_reduce_dense(m)
    } else {
        row_reduce_sparse(m)
    }
}

fn row_reduce_sparse(m: &FpMatrix) -> RowReduction {
    let p = m.prime;
    let mut rows = m.to_sparse_rows();
    let mut pivot_cols = Vec::new();
    let mut next_row = 0usize;
    for col in 0..m.cols {
        let Some(pr) = (next_row..rows.len()).find(|&r| rows[r].get(&col).is_some_and(|&v| v != 0))
        else {
            continue;
        };
        rows.swap(next_row, pr);
        let inv = pow_mod(rows[next_row][&col], p - 2, p);
        if inv != 1 {
            for v in rows[next_row].values_mut() {
                *v = *v * inv % p;
            }
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row {
                continue;
            }
            let Some(&factor) = row.get(&col) else {
                continue;
            };
            if factor == 0 {
                continue;
            }
            for (&c, &v) in &pivot_row {
                let sub = factor * v % p;
                let e = row.entry(c).or_insert(0);
                *e = (*e + p - sub) % p;
                if *e == 0 {
                    row.remove(&c);
                }
            }
        }
        pivot_cols.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    let mut reduced = FpMatrix {
        rows: m.rows,
        cols: m.cols,
        prime: p,
        entries: BTreeMap::new(),
    };
    for (r, row) in rows.iter().enumerate() {
        for (&c, &v) in row {
            if v != 0 {
                reduced.entries.insert((r, c), v);
            }
        }
    }
    RowReduction {
        rank: pivot_cols.len(),
        reduced,
        pivot_cols,
    }
}

fn row_reduce_dense(m: &FpMatrix) -> RowReduction {
    let p = m.prime;
    let mut a = vec![vec![0u64; m.cols]; m.rows];
    for (&(r, c), &v) in &m.entries {
        a[r][c] = v;
    }
    let mut pivot_cols = Vec::new();
    let mut next_row = 0usize;
    for col in 0..m.cols {
        let Some(pr) = (next_row..m.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(next_row, pr);
        let inv = pow_mod(a[next_row][col], p - 2, p);
        if inv != 1 {
            for v in a[next_row].iter_mut() {
                *v = *v * inv % p;
            }
        }
        for r in 0..m.rows {
            if r == next_row || a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col];
            for c in 0..m.cols {
                let sub = factor * a[next_row][c] % p;
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
        pivot_cols.push(col);
        next_row += 1;
        if next_row == m.rows {
            break;
        }
    }
    let mut reduced = FpMatrix {
        rows: m.rows,
        cols: m.cols,
        prime: p,
        entries: BTreeMap::new(),
    };
    for (r, row) in a.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v != 0 {
                reduced.entries.insert((r, c), v);
            }
        }
    }
    RowReduction {
        rank: pivot_cols.len(),
        reduced,
        pivot_cols,
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    row_reduce(m).rank
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column,
/// in increasing free-column order.
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<FpScalar>> {
    let p = m.prime;
    let red = row_reduce(m);
    let pivot_set: Vec<Option<usize>> = {
        // column -> pivot row
        let mut v = vec![None; m.cols];
        for (row, &col) in red.pivot_cols.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec = vec![FpScalar::zero(p); m.cols];
        vec[free] = FpScalar::one(p);
        for (col, pr) in pivot_set.iter().enumerate() {
            if let Some(row) = pr {
                let c = red.reduced.get(*row, free);
                if !c.is_zero() {
                    vec[col] = c.neg();
                }
            }
        }
        basis.push(vec);
    }
    basis
}

/// Dimension of `ker(survivors) / im(killers)` inside an ambient space.
///
/// `killers` is an `ambient x k` matrix whose columns land in the ambient
/// space; `survivors` is an `m x ambient` matrix defined on it. The
/// composite `survivors * killers` must vanish.
pub fn subquotient_dim(
    ambient_dim: usize,
    killers: &FpMatrix,
    survivors: &FpMatrix,
) -> Result<usize, LinalgError> {
    if killers.rows != ambient_dim {
        return Err(LinalgError::ShapeMismatch(format!(
            "killers has {} rows, ambient is {}",
            killers.rows, ambient_dim
        )));
    }
    if survivors.cols != ambient_dim {
        return Err(LinalgError::ShapeMismatch(format!(
            "survivors has {} cols, ambient is {}",
            survivors.cols, ambient_dim
        )));
    }
    let comp = survivors.matmul(killers)?;
    if let Some((&(row, col), _)) = comp.entries.iter().next() {
        return Err(LinalgError::CompositionNonzero { row, col });
    }
    let ker = ambient_dim - rank(survivors);
    Ok(ker - rank(killers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_arithmetic() {
        let a = FpScalar::new(3, 5).unwrap();
        let b = FpScalar::new(4, 5).unwrap();
        assert_eq!(a.add(&b).value(), 2);
        assert_eq!(a.mul(&b).value(), 2);
        assert_eq!(a.inv().mul(&a).value(), 1);
        assert_eq!(FpScalar::new(-1, 5).unwrap().value(), 4);
        assert_eq!(FpScalar::new(1, 4), Err(LinalgError::NotPrime(4)));
        assert_eq!(FpScalar::new(1, 2), Err(LinalgError::NotPrime(2)));
    }

    #[test]
    fn zero_1x1_has_rank_zero() {
        let m = FpMatrix::from_rows(&[vec![0]], 5).unwrap();
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let m = FpMatrix::from_rows(&[vec![1, 2], vec![2, 4]], 5).unwrap();
        let red = row_reduce(&m);
        assert_eq!(red.rank, 1);
        assert_eq!(red.pivot_cols, vec![0]);
        // RREF should be [[1,2],[0,0]]
        assert_eq!(red.reduced.get(0, 0).value(), 1);
        assert_eq!(red.reduced.get(0, 1).value(), 2);
        assert_eq!(red.reduced.get(1, 0).value(), 0);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = FpMatrix::identity(3, 5).unwrap();
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let m = FpMatrix::zero(2, 3, 5).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 3);
        // independence: stack as columns and check rank
        let mut s = FpMatrix::zero(3, 3, 5).unwrap();
        for (j, v) in k.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                s.set(i, j, x.value() as i64);
            }
        }
        assert_eq!(rank(&s), 3);
    }

    #[test]
    fn kernel_vectors_satisfy_matrix() {
        let m = FpMatrix::from_rows(&[vec![1, 1, 0]], 5).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for entry in m.apply(v) {
                assert!(entry.is_zero());
            }
        }
    }

    #[test]
    fn subquotient_trivial_cases() {
        let z_in = FpMatrix::zero(4, 0, 5).unwrap();
        let z_out = FpMatrix::zero(0, 4, 5).unwrap();
        assert_eq!(subquotient_dim(4, &z_in, &z_out).unwrap(), 4);

        // killers of rank 1 into ambient 3, survivors 0 -> 2
        let mut killers = FpMatrix::zero(3, 2, 5).unwrap();
        killers.set(0, 0, 1);
        killers.set(0, 1, 2);
        let survivors = FpMatrix::zero(0, 3, 5).unwrap();
        assert_eq!(subquotient_dim(3, &killers, &survivors).unwrap(), 2);
    }

    #[test]
    fn subquotient_rejects_nonzero_composition() {
        let killers = FpMatrix::identity(2, 5).unwrap();
        let survivors = FpMatrix::identity(2, 5).unwrap();
        let err = subquotient_dim(2, &killers, &survivors).unwrap_err();
        assert!(matches!(err, LinalgError::CompositionNonzero { .. }));
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        // this matrix is dense enough to trigger the dense path
        let m = FpMatrix::from_rows(
            &[vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![3, 1, 4, 2], vec![0, 1, 2, 3]],
            5,
        )
        .unwrap();
        let dense = row_reduce_dense(&m);
        let sparse = row_reduce_sparse(&m);
        assert_eq!(dense.rank, sparse.rank);
        assert_eq!(dense.pivot_cols, sparse.pivot_cols);
        assert_eq!(dense.reduced, sparse.reduced);
    }
}
