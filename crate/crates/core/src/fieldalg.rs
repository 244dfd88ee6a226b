//! Exact arithmetic over a prime field GF(p) and dense matrix algebra.
//!
//! Matrices are value-semantic and immutable after construction; every
//! operation returns a new value. Row reduction uses "first nonzero in
//! column" pivoting, which is sufficient because the arithmetic is exact.

use crate::error::{Error, Result};
use rand::Rng;

/// A prime field GF(p), 2 <= p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    modulus: u64,
}

impl Field {
    pub fn new(modulus: u64) -> Result<Self> {
        if !is_prime(modulus) || modulus >= (1 << 31) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Field { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // modulus < 2^31, so the product fits in u64
        (a * b) % self.modulus
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.modulus == 0 {
            return Err(Error::NonInvertible);
        }
        Ok(self.pow(a, self.modulus - 2))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.modulus)
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.modulus)
    }
}

fn is_prime(n: u64) -> bool {
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

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<u64>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(height * width);
        for row in &rows {
            if row.len() != width {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &e in row {
                data.push(field.reduce(e));
            }
        }
        Ok(FieldMatrix {
            field,
            rows: height,
            cols: width,
            data,
        })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = field.reduce(f(i, j));
            }
        }
        m
    }

    pub fn random<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn random_nonzero<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random_nonzero(rng))
    }

    /// Cauchy matrix: entry (i, j) = (xs[i] - ys[j])^-1. All points must be
    /// pairwise distinct so every square sub-matrix is non-singular.
    pub fn cauchy(field: Field, xs: &[u64], ys: &[u64]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &p in xs.iter().chain(ys.iter()) {
            if !seen.insert(field.reduce(p)) {
                return Err(Error::InvalidPoints(format!(
                    "point {} repeated across xs/ys",
                    field.reduce(p)
                )));
            }
        }
        let mut m = Self::zeros(field, xs.len(), ys.len());
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                let d = field.sub(field.reduce(x), field.reduce(y));
                m.data[i * ys.len() + j] = field.inv(d)?;
            }
        }
        Ok(m)
    }

    /// Vandermonde matrix: entry (i, j) = points[j]^i. Any `rows` columns of
    /// it are independent when the points are distinct.
    pub fn vandermonde(field: Field, points: &[u64], rows: usize) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &p in points {
            if !seen.insert(field.reduce(p)) {
                return Err(Error::InvalidPoints(format!("point {} repeated", field.reduce(p))));
            }
        }
        Ok(Self::from_fn(field, rows, points.len(), |i, j| {
            field.pow(points[j], i as u64)
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = self.field.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "sub {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = self.field.sub(*a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.field.reduce(c);
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let lhs_row = i * rhs.cols;
                for j in 0..rhs.cols {
                    let v = f.add(out.data[lhs_row + j], f.mul(a, rhs.get(k, j)));
                    out.data[lhs_row + j] = v;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: returns `v * self` with `v` of length `rows`.
    pub fn left_mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vec len {} vs {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: returns `self * v` with `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vec len {} vs {} cols",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (j, &x) in v.iter().enumerate() {
                acc = f.add(acc, f.mul(self.get(i, j), x));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                rhs.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("vstack col mismatch".into()));
        }
        Ok(Self::from_fn(self.field, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                rhs.get(i - self.rows, j)
            }
        }))
    }

    /// Sub-matrix of the half-open row/column ranges.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j)
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    /// Rank over GF(p) via row reduction. The receiver is not modified.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let pivot = (rank..rows).find(|&i| m[i * cols + col] != 0);
            let Some(p) = pivot else { continue };
            if p != rank {
                for j in 0..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(m[rank * cols + col]).expect("pivot nonzero");
            for i in (rank + 1)..rows {
                let factor = f.mul(m[i * cols + col], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..cols {
                    let v = f.sub(m[i * cols + j], f.mul(factor, m[rank * cols + j]));
                    m[i * cols + j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Solve `A x = b` for square non-singular `A`.
    pub fn solve(&self, b: &[u64]) -> Result<Vec<u64>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("solve needs a square matrix".into()));
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("rhs length mismatch".into()));
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut rhs: Vec<u64> = b.iter().map(|&x| f.reduce(x)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| m[i * n + col] != 0).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                rhs.swap(pivot, col);
            }
            let inv = f.inv(m[col * n + col])?;
            for j in col..n {
                m[col * n + j] = f.mul(m[col * n + j], inv);
            }
            rhs[col] = f.mul(rhs[col], inv);
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = m[i * n + col];
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m[i * n + j], f.mul(factor, m[col * n + j]));
                    m[i * n + j] = v;
                }
                rhs[i] = f.sub(rhs[i], f.mul(factor, rhs[col]));
            }
        }
        Ok(rhs)
    }

    /// Inverse of a square non-singular matrix.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse needs a square matrix".into()));
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| m[i * n + col] != 0).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let pi = f.inv(m[col * n + col])?;
            for j in 0..n {
                m[col * n + j] = f.mul(m[col * n + j], pi);
                inv.data[col * n + j] = f.mul(inv.data[col * n + j], pi);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = m[i * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let a = f.sub(m[i * n + j], f.mul(factor, m[col * n + j]));
                    m[i * n + j] = a;
                    let b = f.sub(inv.data[i * n + j], f.mul(factor, inv.data[col * n + j]));
                    inv.data[i * n + j] = b;
                }
            }
        }
        Ok(inv)
    }
}

/// Precomputed solver for row-vector systems `s * A = z` where `A` has full
/// row rank. Picks an independent column set once, then each solve is a
/// small matrix-vector product; reused across stripes by the codec.
#[derive(Debug, Clone)]
pub struct RowSolver {
    matrix: FieldMatrix,
    basis_cols: Vec<usize>,
    basis_inv: FieldMatrix,
}

impl RowSolver {
    pub fn new(matrix: FieldMatrix) -> Result<Self> {
        let basis_cols = independent_columns(&matrix, matrix.rows());
        if basis_cols.len() < matrix.rows() {
            return Err(Error::SingularMatrix);
        }
        let basis = matrix.select_columns(&basis_cols);
        let basis_inv = basis.inverse()?;
        Ok(RowSolver {
            matrix,
            basis_cols,
            basis_inv,
        })
    }

    /// Solve `s * A = z`, checking the non-basis coordinates for consistency.
    pub fn solve(&self, z: &[u64]) -> Result<Vec<u64>> {
        if z.len() != self.matrix.cols() {
            return Err(Error::DimensionMismatch("solver rhs length".into()));
        }
        let zb: Vec<u64> = self.basis_cols.iter().map(|&j| z[j]).collect();
        let s = self.basis_inv.left_mul_vec(&zb)?;
        let full = self.matrix.left_mul_vec(&s)?;
        if full != z {
            return Err(Error::DecodeFailed("inconsistent symbol set".into()));
        }
        Ok(s)
    }
}

/// First `limit` independent columns of `m`, found by incremental elimination.
pub fn independent_columns(m: &FieldMatrix, limit: usize) -> Vec<usize> {
    let f = m.field();
    let rows = m.rows();
    // reduced holds the echelon form of the selected columns, one pivot row each
    let mut reduced: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot row, column)
    let mut picked = Vec::new();
    for j in 0..m.cols() {
        if picked.len() == limit {
            break;
        }
        let mut col = m.col(j);
        for (pivot_row, basis_col) in &reduced {
            let c = col[*pivot_row];
            if c != 0 {
                for i in 0..rows {
                    col[i] = f.sub(col[i], f.mul(c, basis_col[i]));
                }
            }
        }
        if let Some(p) = (0..rows).find(|&i| col[i] != 0) {
            let inv = f.inv(col[p]).expect("nonzero");
            for v in col.iter_mut() {
                *v = f.mul(*v, inv);
            }
            reduced.push((p, col));
            picked.push(j);
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn primality_gate() {
        assert!(Field::new(2).is_ok());
        assert!(Field::new(11).is_ok());
        assert!(Field::new(65537).is_ok());
        assert!(Field::new(1).is_err());
        assert!(Field::new(65536).is_err());
        assert!(Field::new(91).is_err()); // 7 * 13
    }

    #[test]
    fn inverse_in_gf11() {
        let f = gf(11);
        assert_eq!(f.inv(1).unwrap(), 1);
        // oracle: exhaustive search over GF(11)
        let oracle = (1..11).find(|&x| f.mul(3, x) == 1).unwrap();
        assert_eq!(oracle, 4);
        assert_eq!(f.inv(3).unwrap(), 4);
        assert!(matches!(f.inv(0), Err(Error::NonInvertible)));
        for e in 1..11 {
            assert_eq!(f.inv(f.inv(e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn rank_examples() {
        let f = gf(11);
        assert_eq!(FieldMatrix::identity(f, 4).rank(), 4);
        assert_eq!(FieldMatrix::zeros(f, 2, 2).rank(), 0);
        // row 2 = 2 * row 1
        let m = FieldMatrix::from_rows(f, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let f = gf(11);
        let id = FieldMatrix::identity(f, 3);
        assert_eq!(id.solve(&[5, 6, 7]).unwrap(), vec![5, 6, 7]);
        let a = FieldMatrix::from_rows(f, vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(a.solve(&[4, 9]).unwrap(), vec![2, 3]);
        let s = FieldMatrix::from_rows(f, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(s.solve(&[1, 2]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn cauchy_golden_and_submatrices() {
        let f = gf(11);
        let c = FieldMatrix::cauchy(f, &[1, 2], &[3, 4]).unwrap();
        // modular inverses computed by hand: (1-3)^-1 = 9^-1 = 5, etc.
        assert_eq!(c, FieldMatrix::from_rows(f, vec![vec![5, 7], vec![10, 5]]).unwrap());

        assert!(matches!(
            FieldMatrix::cauchy(f, &[1], &[1]),
            Err(Error::InvalidPoints(_))
        ));

        // every 2x2 sub-matrix of a 3x3 Cauchy over GF(13) has rank 2
        let f13 = gf(13);
        let c = FieldMatrix::cauchy(f13, &[1, 2, 3], &[4, 5, 6]).unwrap();
        for r0 in 0..3 {
            for r1 in (r0 + 1)..3 {
                for c0 in 0..3 {
                    for c1 in (c0 + 1)..3 {
                        let sub = c.select_rows(&[r0, r1]).select_columns(&[c0, c1]);
                        assert_eq!(sub.rank(), 2);
                    }
                }
            }
        }
    }

    #[test]
    fn solve_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = gf(65537);
        for _ in 0..20 {
            let a = FieldMatrix::random(f, 6, 6, &mut rng);
            if !a.is_nonsingular() {
                continue;
            }
            let x: Vec<u64> = (0..6).map(|_| f.random(&mut rng)).collect();
            let b = a.mul_vec(&x).unwrap();
            assert_eq!(a.solve(&b).unwrap(), x);
            let inv = a.inverse().unwrap();
            assert_eq!(a.mul(&inv).unwrap(), FieldMatrix::identity(f, 6));
        }
    }

    #[test]
    fn rank_product_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = gf(101);
        for _ in 0..25 {
            let a = FieldMatrix::random(f, 4, 5, &mut rng);
            let b = FieldMatrix::random(f, 5, 3, &mut rng);
            let ab = a.mul(&b).unwrap();
            assert!(ab.rank() <= a.rank().min(b.rank()));
        }
    }

    #[test]
    fn row_solver_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = gf(65537);
        let a = FieldMatrix::random(f, 4, 7, &mut rng);
        assert_eq!(a.rank(), 4);
        let solver = RowSolver::new(a.clone()).unwrap();
        let s: Vec<u64> = (0..4).map(|_| f.random(&mut rng)).collect();
        let z = a.left_mul_vec(&s).unwrap();
        assert_eq!(solver.solve(&z).unwrap(), s);

        let mut bad = z.clone();
        bad[6] = f.add(bad[6], 1);
        assert!(matches!(solver.solve(&bad), Err(Error::DecodeFailed(_))));
    }

    #[test]
    fn vandermonde_column_independence() {
        let f = gf(11);
        let v = FieldMatrix::vandermonde(f, &[1, 2, 3, 4], 3).unwrap();
        for c0 in 0..4 {
            for c1 in (c0 + 1)..4 {
                for c2 in (c1 + 1)..4 {
                    assert!(v.select_columns(&[c0, c1, c2]).is_nonsingular());
                }
            }
        }
    }
}
