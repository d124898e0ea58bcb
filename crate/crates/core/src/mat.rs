//! Dense complex matrices of small fixed size (2x2 up to 8x8).
//!
//! Everything in the pipeline is built from 8x8 matrices graded into
//! 2+4+2 blocks, so this module favors simplicity over asymptotics:
//! row-major storage, naive products, Gauss-Jordan inverses.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    /// Build from nested slices; panics when the rows are ragged.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Real entries given row-major.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for (k, v) in entries.iter().enumerate() {
            m.data[k] = C64::new(*v, 0.0);
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, v) in entries.iter().enumerate() {
            m[(k, k)] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = v.conj();
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = self.clone();
        for v in &mut m.data {
            *v *= s;
        }
        m
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        let mut m = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Max-abs norm over entries.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// ||self - I||_max.
    pub fn residual_from_identity(&self) -> f64 {
        assert!(self.is_square());
        (self - &CMat::identity(self.rows)).norm_max()
    }

    /// Gauss-Jordan inverse with partial pivoting. Returns `None` when a
    /// pivot falls below `1e-14 * norm_max`.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let scale = self.norm_max().max(1.0);
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in col + 1..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-14 * scale {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let acj = a[(col, j)];
                    let icj = inv[(col, j)];
                    a[(r, j)] -= f * acj;
                    inv[(r, j)] -= f * icj;
                }
            }
        }
        Some(inv)
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> C64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ONE;
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in col + 1..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return ZERO;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            det *= a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / a[(col, col)];
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Smallest singular value, via eigenvalues of A^H A (cyclic Jacobi).
    pub fn smallest_singular_value(&self) -> f64 {
        let ata = &self.adjoint() * self;
        let eigs = hermitian_eigenvalues(&ata);
        eigs.into_iter().fold(f64::INFINITY, f64::min).max(0.0).sqrt()
    }

    pub fn largest_singular_value(&self) -> f64 {
        let ata = &self.adjoint() * self;
        let eigs = hermitian_eigenvalues(&ata);
        eigs.into_iter().fold(0.0, f64::max).max(0.0).sqrt()
    }
}

/// Eigenvalues of a Hermitian matrix by the cyclic complex Jacobi method.
///
/// Each sweep applies unitary similarities U^H A U with
/// U = diag(1, e^{-i phi}) . G(theta), which first rotates the off-diagonal
/// entry onto the real axis and then annihilates it with a real rotation.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let scale = a.norm_max().max(1.0);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off < 1e-30 * scale * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() < 1e-18 * scale {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / apq.norm(); // e^{i phi}
                let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
                let (c, s) = (theta.cos(), theta.sin());
                // U columns: (c, s e^{-i phi}) and (-s, c e^{-i phi}).
                let u21 = phase.conj() * s;
                let u22 = phase.conj() * c;
                // Rows: A <- U^H A.
                for j in 0..n {
                    let vp = a[(p, j)];
                    let vq = a[(q, j)];
                    a[(p, j)] = c * vp + u21.conj() * vq;
                    a[(q, j)] = -s * vp + u22.conj() * vq;
                }
                // Columns: A <- A U.
                for i in 0..n {
                    let vp = a[(i, p)];
                    let vq = a[(i, q)];
                    a[(i, p)] = vp * c + vq * u21;
                    a[(i, q)] = -vp * s + vq * u22;
                }
            }
        }
    }
    (0..n).map(|k| a[(k, k)].re).collect()
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a += *b;
        }
        m
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a -= *b;
        }
        m
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut m = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    m[(i, j)] += v * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(-ONE)
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let v = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Commutator [a, b] = ab - ba.
pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    &(a * b) - &(b * a)
}
