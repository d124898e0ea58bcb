//! Univariate polynomials and rational functions over the Gaussian
//! rationals, with exact antiderivatives.
//!
//! Antiderivatives are found by a linear ansatz rather than partial
//! fractions: if A/D (proper, reduced) has a rational antiderivative, its
//! denominator divides C = gcd(D, D'), so d/dz(B/C) = A/D becomes a linear
//! system for the coefficients of B. No solution means a logarithmic term
//! would be required, which the pipeline rejects.

use crate::error::{CoreError, Result};
use crate::exact::{BiPoly, GRat};
use crate::mat::C64;
use std::fmt;

/// Dense univariate polynomial, coefficients ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<GRat>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: GRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<GRat>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(GRat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> GRat {
        self.coeffs.get(k).cloned().unwrap_or_else(GRat::zero)
    }

    pub fn coeffs(&self) -> &[GRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> GRat {
        self.coeffs.last().cloned().unwrap_or_else(GRat::zero)
    }

    pub fn add(&self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        UPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        UPoly::from_coeffs(out)
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![GRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &GRat) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * &GRat::from_int(k as i64));
        }
        UPoly::from_coeffs(out)
    }

    /// Termwise antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> UPoly {
        let mut out = vec![GRat::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] = c * &GRat::from_ratio(1, (k + 1) as i64);
        }
        UPoly::from_coeffs(out)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, den: &UPoly) -> (UPoly, UPoly) {
        assert!(!den.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = UPoly::zero();
        let dlead_inv = den.leading().inv();
        while !rem.is_zero() && rem.degree() >= den.degree() {
            let shift = (rem.degree() - den.degree()) as usize;
            let factor = &rem.leading() * &dlead_inv;
            let mut term = vec![GRat::zero(); shift + 1];
            term[shift] = factor;
            let term = UPoly::from_coeffs(term);
            rem = rem.sub(&term.mul(den));
            quot = quot.add(&term);
        }
        (quot, rem)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead_inv = a.leading().inv();
        a.scale(&lead_inv)
    }

    pub fn eval(&self, z: &GRat) -> GRat {
        let mut acc = GRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn eval_c64(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_c64();
        }
        acc
    }

    /// Holomorphic bivariate image (z-powers only).
    pub fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            p = &p + &BiPoly::monomial(c.clone(), k as u32, 0);
        }
        p
    }

    /// Numeric roots by the Durand-Kerner iteration.
    pub fn roots_c64(&self) -> Vec<C64> {
        let deg = self.degree();
        if deg <= 0 {
            return vec![];
        }
        let n = deg as usize;
        let lead = self.leading().to_c64();
        let monic: Vec<C64> = self.coeffs.iter().map(|c| c.to_c64() / lead).collect();
        let eval = |z: C64| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for c in monic.iter().rev() {
                acc = acc * z + c;
            }
            acc
        };
        let mut roots: Vec<C64> = (0..n)
            .map(|k| C64::new(0.4, 0.9).powu(k as u32 + 1))
            .collect();
        for _ in 0..200 {
            let mut shift = 0.0f64;
            for i in 0..n {
                let mut denom = C64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        denom *= roots[i] - roots[j];
                    }
                }
                if denom.norm() < 1e-300 {
                    continue;
                }
                let delta = eval(roots[i]) / denom;
                roots[i] -= delta;
                shift = shift.max(delta.norm());
            }
            if shift < 1e-13 {
                break;
            }
        }
        roots
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            if k > 0 {
                write!(f, " z^{}", k)?;
            }
        }
        Ok(())
    }
}

/// Reduced rational function num/den.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: UPoly,
    den: UPoly,
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFn {
    pub fn zero() -> Self {
        Self { num: UPoly::zero(), den: UPoly::constant(GRat::one()) }
    }

    pub fn from_poly(p: UPoly) -> Self {
        Self { num: p, den: UPoly::constant(GRat::one()) }
    }

    /// Build and reduce. Panics on a zero denominator.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        // Normalize denominator to be monic.
        let lead_inv = den.leading().inv();
        Self {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    /// The polynomial it equals, when `is_polynomial`.
    pub fn as_poly(&self) -> Option<UPoly> {
        if !self.is_polynomial() {
            return None;
        }
        Some(self.num.scale(&self.den.coeff(0).inv()))
    }

    pub fn add(&self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn mul(&self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.scale(&-(&GRat::one())),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> RationalFn {
        RationalFn::new(
            self.num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
    }

    pub fn eval_c64(&self, z: C64) -> C64 {
        self.num.eval_c64(z) / self.den.eval_c64(z)
    }

    pub fn eval(&self, z: &GRat) -> GRat {
        let d = self.den.eval(z);
        assert!(!d.is_zero(), "evaluation at a pole");
        &self.num.eval(z) * &d.inv()
    }

    /// Distance from z to the nearest pole (infinity when polynomial).
    pub fn pole_distance(&self, z: C64) -> f64 {
        self.den
            .roots_c64()
            .into_iter()
            .map(|r| (z - r).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Rational antiderivative vanishing at `base`, when one exists.
    ///
    /// `tag` labels the entry for error reporting.
    pub fn antiderivative(&self, base: &GRat, tag: (usize, usize)) -> Result<RationalFn> {
        let (poly_part, rem) = self.num.div_rem(&self.den);
        let mut result = RationalFn::from_poly(poly_part.antiderivative());
        if !rem.is_zero() {
            let proper = RationalFn { num: rem, den: self.den.clone() };
            let frac = proper.proper_antiderivative(tag)?;
            result = result.add(&frac);
        }
        // Shift so the antiderivative vanishes at the base point.
        if result.den.eval(base).is_zero() {
            return Err(CoreError::PoleOfPotential { z: base.to_c64(), eps: 0.0 });
        }
        let offset = result.eval(base);
        Ok(result.add(&RationalFn::from_poly(UPoly::constant(-(&offset)))))
    }

    /// Antiderivative of a proper fraction by linear ansatz on B/C with
    /// C = gcd(D, D').
    fn proper_antiderivative(&self, tag: (usize, usize)) -> Result<RationalFn> {
        let c = self.den.gcd(&self.den.derivative());
        if c.degree() <= 0 {
            // Squarefree denominator: every pole is simple, so a nonzero
            // proper part always integrates to logs.
            return Err(CoreError::NonintegrableResidue { row: tag.0, col: tag.1 });
        }
        // Solve d/dz (B/C) = A/D for deg(B) < deg(C):
        //   B' C D - B C' D - A C^2 = 0.
        let nb = c.degree() as usize;
        let cd = c.mul(&self.den);
        let cpd = c.derivative().mul(&self.den);
        let ac2 = self.num.mul(&c).mul(&c);
        // Columns: contribution of each basis monomial z^k of B.
        let max_deg = ac2
            .degree()
            .max(cd.degree() + nb as i64)
            .max(cpd.degree() + nb as i64)
            .max(0) as usize;
        let rows = max_deg + 1;
        let mut cols: Vec<Vec<GRat>> = Vec::with_capacity(nb);
        for k in 0..nb {
            let mut basis = vec![GRat::zero(); k + 1];
            basis[k] = GRat::one();
            let b = UPoly::from_coeffs(basis);
            let contrib = b.derivative().mul(&cd).sub(&b.mul(&cpd));
            let mut col = vec![GRat::zero(); rows];
            for (i, v) in contrib.coeffs().iter().enumerate() {
                col[i] = v.clone();
            }
            cols.push(col);
        }
        let mut rhs = vec![GRat::zero(); rows];
        for (i, v) in ac2.coeffs().iter().enumerate() {
            rhs[i] = v.clone();
        }
        let sol = solve_exact(&cols, &rhs, rows, nb)
            .ok_or(CoreError::NonintegrableResidue { row: tag.0, col: tag.1 })?;
        Ok(RationalFn::new(UPoly::from_coeffs(sol), c))
    }
}

/// Solve an overdetermined exact linear system given by columns; returns a
/// solution when the system is consistent, `None` otherwise.
fn solve_exact(cols: &[Vec<GRat>], rhs: &[GRat], rows: usize, ncols: usize) -> Option<Vec<GRat>> {
    let mut a: Vec<Vec<GRat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<GRat> = (0..ncols).map(|j| cols[j][i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = vec![];
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows).find(|r| !a[*r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        let inv = a[pivot_row][col].inv();
        for v in a[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !a[r2][col].is_zero() {
                let f = a[r2][col].clone();
                for k in 0..=ncols {
                    let sub = &f * &a[pivot_row][k];
                    a[r2][k] = &a[r2][k] - &sub;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // Consistency: no row of the form [0 ... 0 | nonzero].
    for r in pivot_row..rows {
        if !a[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![GRat::zero(); ncols];
    for (r, c) in pivots {
        sol[c] = a[r][ncols].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_int;

    fn gi(n: i64) -> GRat {
        GRat::from_int(n)
    }

    #[test]
    fn division_round_trip() {
        // (z^3 - 2z + 1) / (z - 1)
        let num = UPoly::from_coeffs(vec![gi(1), gi(-2), gi(0), gi(1)]);
        let den = UPoly::from_coeffs(vec![gi(-1), gi(1)]);
        let (q, r) = num.div_rem(&den);
        assert!(r.is_zero());
        assert_eq!(q.mul(&den), num);
    }

    #[test]
    fn polynomial_antiderivative() {
        let f = RationalFn::from_poly(UPoly::from_coeffs(vec![gi(0), gi(2)])); // 2z
        let int = f.antiderivative(&GRat::zero(), (1, 1)).unwrap();
        // z^2
        assert_eq!(int.num().coeff(2), gi(1));
        assert!(int.is_polynomial());
    }

    #[test]
    fn double_pole_integrates() {
        // 1/z^2 -> -1/z
        let f = RationalFn::new(
            UPoly::constant(gi(1)),
            UPoly::from_coeffs(vec![gi(0), gi(0), gi(1)]),
        );
        let base = GRat::from_int(1);
        let int = f.antiderivative(&base, (1, 1)).unwrap();
        let d = int.derivative();
        let z = GRat::new(crate::exact::q_ratio(3, 2), q_int(0));
        assert_eq!(d.eval(&z), f.eval(&z));
        assert!(int.eval(&base).is_zero());
    }

    #[test]
    fn simple_pole_rejected() {
        // 1/z has residue 1: log term.
        let f = RationalFn::new(
            UPoly::constant(gi(1)),
            UPoly::from_coeffs(vec![gi(0), gi(1)]),
        );
        let err = f.antiderivative(&GRat::from_int(1), (2, 1));
        assert!(matches!(err, Err(CoreError::NonintegrableResidue { row: 2, col: 1 })));
    }

    #[test]
    fn mixed_rational_antiderivative() {
        // z + 1/(z-1)^2 integrates to z^2/2 - 1/(z-1) + const.
        let den = UPoly::from_coeffs(vec![gi(1), gi(-2), gi(1)]);
        let f = RationalFn::from_poly(UPoly::from_coeffs(vec![gi(0), gi(1)]))
            .add(&RationalFn::new(UPoly::constant(gi(1)), den));
        let int = f.antiderivative(&GRat::zero(), (1, 2)).unwrap();
        let z = GRat::new(q_int(3), q_int(1));
        assert_eq!(int.derivative().eval(&z), f.eval(&z));
        assert!(int.eval(&GRat::zero()).is_zero());
    }

    #[test]
    fn roots_of_quadratic() {
        // z^2 + 1 -> +-i
        let p = UPoly::from_coeffs(vec![gi(1), gi(0), gi(1)]);
        let mut roots = p.roots_c64();
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((roots[0] - C64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((roots[1] - C64::new(0.0, 1.0)).norm() < 1e-10);
    }
}
