//! Exact arithmetic backend: Gaussian rationals and bivariate polynomials
//! in (z, zbar).
//!
//! The factorization unknowns stay polynomial in (z, zbar) divided by powers
//! of det(d) all the way up to the block-diagonal middle term, so identities
//! can be checked as literal polynomial equalities after clearing the
//! denominator. Square roots only enter with the triangular factors, which
//! is where the numeric backend takes over.

use crate::mat::{C64, CMat};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = Ratio<BigInt>;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Gaussian rational a + b i with exact rational parts.
#[derive(Clone, PartialEq, Eq)]
pub struct GRat {
    pub re: Q,
    pub im: Q,
}

impl GRat {
    pub fn zero() -> Self {
        Self { re: Q::zero(), im: Q::zero() }
    }

    pub fn one() -> Self {
        Self { re: Q::one(), im: Q::zero() }
    }

    pub fn i() -> Self {
        Self { re: Q::zero(), im: Q::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self { re: q_int(n), im: Q::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self { re: q_ratio(num, den), im: Q::zero() }
    }

    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().expect("rational overflows f64"),
            self.im.to_f64().expect("rational overflows f64"),
        )
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        GRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_positive() {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

/// Bivariate polynomial in z and zbar with Gaussian-rational coefficients.
/// Keys are (z-degree, zbar-degree).
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), GRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: GRat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(GRat::one())
    }

    /// Monomial c * z^a * zbar^b.
    pub fn monomial(c: GRat, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((a, b), c);
        }
        p
    }

    pub fn z() -> Self {
        Self::monomial(GRat::one(), 1, 0)
    }

    pub fn zbar() -> Self {
        Self::monomial(GRat::one(), 0, 1)
    }

    /// r^2 = z * zbar.
    pub fn r2() -> Self {
        Self::monomial(GRat::one(), 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: (u32, u32), val: GRat) {
        if val.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                let sum = &*cur + &val;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *cur = sum;
                }
            }
            None => {
                self.terms.insert(key, val);
            }
        }
    }

    /// bar-conjugation: coefficients conjugated, z and zbar exchanged.
    pub fn conj_bar(&self) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in &self.terms {
            p.terms.insert((*b, *a), c.conj());
        }
        p
    }

    pub fn scale(&self, s: &GRat) -> Self {
        let mut p = Self::zero();
        if s.is_zero() {
            return p;
        }
        for (k, c) in &self.terms {
            p.terms.insert(*k, c * s);
        }
        p
    }

    /// Exact evaluation at z (zbar taken as the conjugate).
    pub fn eval(&self, z: &GRat) -> GRat {
        let zb = z.conj();
        let mut acc = GRat::zero();
        for ((a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..*a {
                t = &t * z;
            }
            for _ in 0..*b {
                t = &t * &zb;
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn eval_c64(&self, z: C64) -> C64 {
        let zb = z.conj();
        let mut acc = C64::new(0.0, 0.0);
        for ((a, b), c) in &self.terms {
            acc += c.to_c64() * z.powu(*a) * zb.powu(*b);
        }
        acc
    }

    /// Wirtinger derivative in z.
    pub fn d_dz(&self) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in &self.terms {
            if *a > 0 {
                p.insert((a - 1, *b), c * &GRat::from_int(*a as i64));
            }
        }
        p
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (k, c) in &rhs.terms {
            p.insert(*k, c.clone());
        }
        p
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (k, c) in &rhs.terms {
            p.insert(*k, -c);
        }
        p
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut p = BiPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                p.insert((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        &BiPoly::zero() - self
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            if *a > 0 {
                write!(f, " z^{}", a)?;
            }
            if *b > 0 {
                write!(f, " w^{}", b)?;
            }
        }
        Ok(())
    }
}

/// Matrix with BiPoly entries.
#[derive(Clone, PartialEq, Eq)]
pub struct EMat {
    rows: usize,
    cols: usize,
    data: Vec<BiPoly>,
}

impl EMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BiPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = BiPoly::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Entrywise bar-conjugation (coefficients conjugated, z <-> zbar).
    pub fn conj_bar(&self) -> Self {
        let mut m = self.clone();
        for p in &mut m.data {
            *p = p.conj_bar();
        }
        m
    }

    pub fn scale(&self, s: &BiPoly) -> Self {
        let mut m = self.clone();
        for p in &mut m.data {
            *p = &*p * s;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BiPoly::is_zero)
    }

    /// Exact evaluation at z to a numeric matrix.
    pub fn eval_c64(&self, z: C64) -> CMat {
        let mut m = CMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].eval_c64(z);
            }
        }
        m
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval_exact(&self, z: &GRat) -> Vec<Vec<GRat>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].eval(z)).collect())
            .collect()
    }

    /// det of a 2x2 matrix.
    pub fn det2(&self) -> BiPoly {
        assert_eq!((self.rows, self.cols), (2, 2));
        &(&self[(0, 0)] * &self[(1, 1)]) - &(&self[(0, 1)] * &self[(1, 0)])
    }

    /// Adjugate of a 2x2 matrix: det2() * inverse.
    pub fn adjugate2(&self) -> EMat {
        assert_eq!((self.rows, self.cols), (2, 2));
        let mut m = EMat::zeros(2, 2);
        m[(0, 0)] = self[(1, 1)].clone();
        m[(0, 1)] = -&self[(0, 1)];
        m[(1, 0)] = -&self[(1, 0)];
        m[(1, 1)] = self[(0, 0)].clone();
        m
    }
}

impl std::ops::Index<(usize, usize)> for EMat {
    type Output = BiPoly;
    fn index(&self, (i, j): (usize, usize)) -> &BiPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for EMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BiPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &EMat {
    type Output = EMat;
    fn add(self, rhs: &EMat) -> EMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a = &*a + b;
        }
        m
    }
}

impl Sub for &EMat {
    type Output = EMat;
    fn sub(self, rhs: &EMat) -> EMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a = &*a - b;
        }
        m
    }
}

impl Mul for &EMat {
    type Output = EMat;
    fn mul(self, rhs: &EMat) -> EMat {
        assert_eq!(self.cols, rhs.rows);
        let mut m = EMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let prod = &self[(i, k)] * &rhs[(k, j)];
                    m[(i, j)] = &m[(i, j)] + &prod;
                }
            }
        }
        m
    }
}

impl fmt::Debug for EMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "EMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "  ({},{}): {:?}", i, j, self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Exact constant matrices mirroring the numeric ones in `consts`.
pub mod econsts {
    use super::*;

    pub fn antidiag(n: usize) -> EMat {
        let mut m = EMat::zeros(n, n);
        for k in 0..n {
            m[(k, n - 1 - k)] = BiPoly::one();
        }
        m
    }

    pub fn j2() -> EMat {
        antidiag(2)
    }

    pub fn j4() -> EMat {
        antidiag(4)
    }

    pub fn s4() -> EMat {
        let mut m = EMat::zeros(4, 4);
        m[(0, 3)] = BiPoly::one();
        m[(1, 1)] = BiPoly::one();
        m[(2, 2)] = BiPoly::one();
        m[(3, 0)] = BiPoly::one();
        m
    }

    pub fn jc4() -> EMat {
        &s4() * &j4()
    }
}
