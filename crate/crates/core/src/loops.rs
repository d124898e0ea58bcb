//! Finite matrix-valued Laurent polynomials in the loop parameter.
//!
//! A `LoopMat` is a map from integer degree d to an 8x8 coefficient matrix,
//! with finite support. Degrees are hard-capped at |d| <= 4: every object in
//! the pipeline lives in [-2, 2], so anything wider is a bug upstream.
//!
//! The conjugation used on loops is
//!
//!   bar(F)(lambda) = sum_d conj(F_d) lambda^{-d},
//!
//! i.e. coefficientwise conjugation together with degree negation. On the
//! unit circle this is plain pointwise conjugation. The degree negation is
//! not spelled out in most references; it is forced by the requirement that
//! the conjugate of a lower-triangular loop in negative powers come out
//! upper-triangular in positive powers (see `tau` and the tests).

use crate::consts::{d0_twist, j8, jc8, s8};
use crate::error::{CoreError, Result};
use crate::mat::{CMat, C64};
use std::collections::BTreeMap;

/// Hard cap on the absolute loop degree.
pub const DEGREE_CAP: i32 = 4;

/// Coefficients below this max-norm are dropped when trimming.
const TRIM_EPS: f64 = 0.0;

#[derive(Clone, Debug)]
pub struct LoopMat {
    dim: usize,
    coeffs: BTreeMap<i32, CMat>,
}

impl LoopMat {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs.insert(0, CMat::identity(dim));
        m
    }

    /// Constant loop.
    pub fn constant(m: CMat) -> Self {
        assert!(m.is_square());
        let dim = m.rows();
        let mut l = Self::zero(dim);
        l.set_coeff(0, m).expect("degree 0 is always in range");
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set_coeff(&mut self, degree: i32, m: CMat) -> Result<()> {
        if degree.abs() > DEGREE_CAP {
            return Err(CoreError::DegreeOverflow {
                degree,
                cap: DEGREE_CAP,
            });
        }
        assert_eq!(m.rows(), self.dim);
        assert_eq!(m.cols(), self.dim);
        if m.norm_max() > TRIM_EPS {
            self.coeffs.insert(degree, m);
        } else {
            self.coeffs.remove(&degree);
        }
        Ok(())
    }

    /// Coefficient at `degree` (zero matrix when absent).
    pub fn coeff(&self, degree: i32) -> CMat {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| CMat::zeros(self.dim, self.dim))
    }

    pub fn support(&self) -> Vec<i32> {
        self.coeffs.keys().copied().collect()
    }

    pub fn min_degree(&self) -> i32 {
        self.coeffs.keys().next().copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Largest coefficient norm outside the window [lo, hi].
    pub fn mass_outside(&self, lo: i32, hi: i32) -> f64 {
        self.coeffs
            .iter()
            .filter(|(d, _)| **d < lo || **d > hi)
            .map(|(_, m)| m.norm_max())
            .fold(0.0, f64::max)
    }

    /// Drop coefficients with max-norm below `eps`.
    pub fn trimmed(&self, eps: f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (d, m) in &self.coeffs {
            if m.norm_max() > eps {
                out.coeffs.insert(*d, m.clone());
            }
        }
        out
    }

    /// Evaluate at a point of the circle (or anywhere in C*).
    pub fn eval(&self, lambda: C64) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (d, m) in &self.coeffs {
            let w = lambda.powi(*d);
            out = &out + &m.scale(w);
        }
        out
    }

    pub fn add(&self, rhs: &LoopMat) -> LoopMat {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (d, m) in &rhs.coeffs {
            let cur = out.coeff(*d);
            out.coeffs.insert(*d, &cur + m);
        }
        out.trimmed(0.0)
    }

    pub fn sub(&self, rhs: &LoopMat) -> LoopMat {
        self.add(&rhs.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> LoopMat {
        let mut out = Self::zero(self.dim);
        for (d, m) in &self.coeffs {
            out.coeffs.insert(*d, m.scale(s));
        }
        out
    }

    /// Max over degrees of the coefficient max-norm.
    pub fn norm_max(&self) -> f64 {
        self.coeffs.values().map(|m| m.norm_max()).fold(0.0, f64::max)
    }

    /// bar(F): coefficientwise conjugation with degree negation.
    pub fn bar(&self) -> LoopMat {
        let mut out = Self::zero(self.dim);
        for (d, m) in &self.coeffs {
            out.coeffs.insert(-d, m.conj());
        }
        out
    }

    /// Coefficientwise transpose (degrees kept).
    pub fn transpose(&self) -> LoopMat {
        let mut out = Self::zero(self.dim);
        for (d, m) in &self.coeffs {
            out.coeffs.insert(*d, m.transpose());
        }
        out
    }

    /// F(-lambda): flips the sign of odd-degree coefficients.
    pub fn negate_lambda(&self) -> LoopMat {
        let mut out = Self::zero(self.dim);
        for (d, m) in &self.coeffs {
            let m = if d.rem_euclid(2) == 1 {
                m.scale(C64::new(-1.0, 0.0))
            } else {
                m.clone()
            };
            out.coeffs.insert(*d, m);
        }
        out
    }

    /// Conjugate by a constant matrix: c * F * c_inv.
    pub fn conjugate_by(&self, c: &CMat, c_inv: &CMat) -> LoopMat {
        let mut out = Self::zero(self.dim);
        for (d, m) in &self.coeffs {
            out.coeffs.insert(*d, &(c * m) * c_inv);
        }
        out
    }
}

/// Coefficientwise convolution product. Errors when the result would exceed
/// the degree cap with a coefficient of non-negligible mass.
pub fn loop_mul(a: &LoopMat, b: &LoopMat) -> Result<LoopMat> {
    assert_eq!(a.dim(), b.dim());
    let dim = a.dim();
    let mut acc: BTreeMap<i32, CMat> = BTreeMap::new();
    for (da, ma) in &a.coeffs {
        for (db, mb) in &b.coeffs {
            let d = da + db;
            let prod = ma * mb;
            match acc.get_mut(&d) {
                Some(m) => *m = &*m + &prod,
                None => {
                    acc.insert(d, prod);
                }
            }
        }
    }
    let mut out = LoopMat::zero(dim);
    for (d, m) in acc {
        if d.abs() > DEGREE_CAP {
            // Cancellation may legitimately leave a zero coefficient here.
            if m.norm_max() > 1e-9 {
                return Err(CoreError::DegreeOverflow {
                    degree: d,
                    cap: DEGREE_CAP,
                });
            }
            continue;
        }
        if m.norm_max() > TRIM_EPS {
            out.coeffs.insert(d, m);
        }
    }
    Ok(out)
}

/// Inverse of a unipotent loop I + K, where K is nilpotent with K^3 = 0 in
/// the 2+4+2 block grading: returns I - K + K^2 and checks the Neumann
/// series really terminates.
pub fn loop_inv_unipotent(a: &LoopMat) -> Result<LoopMat> {
    let dim = a.dim();
    let id = LoopMat::identity(dim);
    let k = a.sub(&id);
    if k.coeff(0).norm_max() > 1e-9 {
        return Err(CoreError::NotUnipotent(format!(
            "lambda^0 coefficient differs from I by {:.3e}",
            k.coeff(0).norm_max()
        )));
    }
    let k2 = loop_mul(&k, &k)?;
    let k3 = loop_mul(&k2, &k)?;
    if k3.norm_max() > 1e-9 * (1.0 + k.norm_max()).powi(3) {
        return Err(CoreError::NotUnipotent(format!(
            "K^3 has mass {:.3e}; series does not terminate",
            k3.norm_max()
        )));
    }
    Ok(id.sub(&k).add(&k2))
}

/// tau(F) = S8 bar(F) S8: the real-form involution at loop level.
pub fn tau(f: &LoopMat) -> LoopMat {
    let s = s8();
    f.bar().conjugate_by(&s, &s)
}

/// tau(F)^{-1} computed directly as jc8 * bar(F)^t * jc8.
///
/// Valid for loops with values in the J8-orthogonal group; for those,
/// loop_mul(tau(F), tau_inv(F)) = I.
pub fn tau_inv(f: &LoopMat) -> LoopMat {
    let j = jc8();
    f.bar().transpose().conjugate_by(&j, &j)
}

/// Pointwise group inverse F(lambda)^{-1} = J8 F(lambda)^t J8 for loops with
/// values in the J8-orthogonal group; degrees are preserved.
pub fn loop_inv_g8(f: &LoopMat) -> LoopMat {
    let j = j8();
    f.transpose().conjugate_by(&j, &j)
}

/// || A^t J8 A - J8 ||_max: membership residual for the 8x8 quadric group.
pub fn g8_residual(a: &CMat) -> f64 {
    let j = j8();
    (&(&(&a.transpose() * &j) * a) - &j).norm_max()
}

/// Residual of the reality condition tau(F) = F, sampled as a loop.
pub fn reality_residual(f: &LoopMat) -> f64 {
    tau(f).sub(f).norm_max()
}

/// Residual of the twisting condition F(-lambda) = D0 F(lambda) D0^{-1}.
pub fn twist_residual(f: &LoopMat) -> f64 {
    let d = d0_twist();
    f.negate_lambda().sub(&f.conjugate_by(&d, &d)).norm_max()
}
