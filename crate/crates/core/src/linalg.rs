//! Dense linear algebra over a prime field `F_p`.

use std::fmt;

/// Arithmetic in `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2 && p < (1 << 31), "characteristic out of range");
        Fp { p }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce a signed integer.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

/// Row-major matrix with entries in `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, f: Fp) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32], f: Fp) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Mat, f: Fp) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat, f: Fp) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32, f: Fp) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Columns `[self | other]`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Rows `[self ; other]`.
    pub fn vcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: Fp) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: Fp) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self, f: Fp) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel as a matrix with basis vectors as columns.
    pub fn kernel_matrix(&self, f: Fp) -> Mat {
        Mat::from_columns(self.cols, &self.kernel(f))
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[u32], f: Fp) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hcat(&Mat::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols);
        }
        Some(x)
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self, f: Fp) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hcat(&Mat::identity(n));
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Columns forming a basis of the column space (pivot columns of self).
    pub fn column_basis(&self, f: Fp) -> Mat {
        let (_, pivots) = self.rref(f);
        let cols: Vec<Vec<u32>> = pivots.iter().map(|&c| self.column(c)).collect();
        Mat::from_columns(self.rows, &cols)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Subspace of `F_p^n` given by a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            n,
            basis: Mat::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            n,
            basis: Mat::identity(n),
        }
    }

    /// Span of the given vectors.
    pub fn span(n: usize, vectors: &[Vec<u32>], f: Fp) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * n);
        for v in vectors {
            assert_eq!(v.len(), n);
            data.extend_from_slice(v);
        }
        let m = Mat::from_rows(vectors.len(), n, data);
        let (r, pivots) = m.rref(f);
        let k = pivots.len();
        Subspace {
            n,
            basis: Mat::from_rows(k, n, r.data()[..k * n].to_vec()),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn sum(&self, other: &Subspace, f: Fp) -> Subspace {
        let mut v = self.vectors();
        v.extend(other.vectors());
        Subspace::span(self.n, &v, f)
    }

    pub fn contains(&self, v: &[u32], f: Fp) -> bool {
        let mut vs = self.vectors();
        vs.push(v.to_vec());
        Subspace::span(self.n, &vs, f).dim() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace, f: Fp) -> bool {
        self.sum(other, f).dim() == self.dim()
    }

    pub fn intersect(&self, other: &Subspace, f: Fp) -> Subspace {
        // Solve x·A = y·B via the kernel of [A; -B]^T.
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Subspace::zero(self.n);
        }
        let stacked = self.basis.vcat(&other.basis.scale(f.neg(1), f));
        let ker = stacked.transpose().kernel(f);
        let vectors: Vec<Vec<u32>> = ker
            .iter()
            .map(|coef| {
                let mut v = vec![0; self.n];
                for (i, &c) in coef[..a].iter().enumerate() {
                    if c != 0 {
                        for (j, x) in v.iter_mut().enumerate() {
                            *x = f.add(*x, f.mul(c, self.basis.get(i, j)));
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.n, &vectors, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse() {
        let f = Fp::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_kernel_solve() {
        let f = Fp::new(3);
        let m = Mat::from_rows(2, 3, vec![1, 2, 0, 2, 1, 0]);
        assert_eq!(m.rank(f), 1);
        let ker = m.kernel(f);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v, f).iter().all(|&x| x == 0));
        }
        assert!(m.solve(&[1, 2], f).is_some());
        assert!(m.solve(&[1, 0], f).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let f = Fp::new(5);
        let m = Mat::from_rows(2, 2, vec![1, 2, 3, 4]);
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(&inv, f), Mat::identity(2));
        assert!(Mat::from_rows(2, 2, vec![1, 2, 2, 4]).inverse(f).is_none());
    }

    #[test]
    fn subspace_ops() {
        let f = Fp::new(2);
        let a = Subspace::span(3, &[vec![1, 0, 0], vec![0, 1, 0]], f);
        let b = Subspace::span(3, &[vec![0, 1, 0], vec![0, 0, 1]], f);
        assert_eq!(a.intersect(&b, f).dim(), 1);
        assert_eq!(a.sum(&b, f).dim(), 3);
        assert!(a.contains(&[1, 1, 0], f));
        assert!(!a.contains(&[0, 0, 1], f));
    }
}
