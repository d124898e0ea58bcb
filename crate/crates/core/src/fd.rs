//! Central-difference Wirtinger derivatives.
//!
//! Complex-step differentiation is unavailable here because the evaluated
//! quantities genuinely depend on zbar; plain second-order central stencils
//! in x and y are used instead, and convergence is asserted by step-halving
//! tests rather than assumed.

use crate::error::Result;
use crate::mat::{C64, CMat};

/// Step scaled to the magnitude of the base point.
pub fn step_for(z: C64, h_rel: f64) -> f64 {
    h_rel * (1.0 + z.norm())
}

/// First Wirtinger derivatives (d/dz, d/dzbar) of a matrix-valued map.
pub fn dz_dzbar_mat(
    eval: &dyn Fn(C64) -> Result<CMat>,
    z: C64,
    h: f64,
) -> Result<(CMat, CMat)> {
    let ex = C64::new(h, 0.0);
    let ey = C64::new(0.0, h);
    let fxp = eval(z + ex)?;
    let fxm = eval(z - ex)?;
    let fyp = eval(z + ey)?;
    let fym = eval(z - ey)?;
    let s = C64::new(0.5 / h, 0.0);
    let dx = (&fxp - &fxm).scale(s);
    let dy = (&fyp - &fym).scale(s);
    let half = C64::new(0.5, 0.0);
    let i = C64::new(0.0, 1.0);
    let dz = (&dx - &dy.scale(i)).scale(half);
    let dzbar = (&dx + &dy.scale(i)).scale(half);
    Ok((dz, dzbar))
}

/// Complex-vector first and second Wirtinger derivatives of a real-vector
/// map, from a 3x3 stencil:
///   Y_z  = (Y_x - i Y_y) / 2,
///   Y_zz = (Y_xx - Y_yy - 2 i Y_xy) / 4.
pub struct VecDerivs {
    pub y: Vec<f64>,
    pub y_z: Vec<C64>,
    pub y_zz: Vec<C64>,
}

pub fn vec_derivs(
    eval: &dyn Fn(C64) -> Result<Vec<f64>>,
    z: C64,
    h: f64,
) -> Result<VecDerivs> {
    let ex = C64::new(h, 0.0);
    let ey = C64::new(0.0, h);
    let y = eval(z)?;
    let xp = eval(z + ex)?;
    let xm = eval(z - ex)?;
    let yp = eval(z + ey)?;
    let ym = eval(z - ey)?;
    let pp = eval(z + ex + ey)?;
    let pm = eval(z + ex - ey)?;
    let mp = eval(z - ex + ey)?;
    let mm = eval(z - ex - ey)?;
    let n = y.len();
    let mut y_z = Vec::with_capacity(n);
    let mut y_zz = Vec::with_capacity(n);
    for k in 0..n {
        let dx = (xp[k] - xm[k]) / (2.0 * h);
        let dy = (yp[k] - ym[k]) / (2.0 * h);
        let dxx = (xp[k] - 2.0 * y[k] + xm[k]) / (h * h);
        let dyy = (yp[k] - 2.0 * y[k] + ym[k]) / (h * h);
        let dxy = (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h);
        y_z.push(C64::new(0.5 * dx, -0.5 * dy));
        y_zz.push(C64::new(0.25 * (dxx - dyy), -0.5 * dxy));
    }
    Ok(VecDerivs { y, y_z, y_zz })
}

/// d/dz of a real-vector map (used for metric densities).
pub fn vec_dz(eval: &dyn Fn(C64) -> Result<Vec<f64>>, z: C64, h: f64) -> Result<Vec<C64>> {
    let ex = C64::new(h, 0.0);
    let ey = C64::new(0.0, h);
    let xp = eval(z + ex)?;
    let xm = eval(z - ex)?;
    let yp = eval(z + ey)?;
    let ym = eval(z - ey)?;
    Ok((0..xp.len())
        .map(|k| {
            let dx = (xp[k] - xm[k]) / (2.0 * h);
            let dy = (yp[k] - ym[k]) / (2.0 * h);
            C64::new(0.5 * dx, -0.5 * dy)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wirtinger_split_on_polynomial() {
        // f(z) = z^2 zbar: f_z = 2 z zbar, f_zbar = z^2.
        let eval = |z: C64| -> Result<CMat> {
            let mut m = CMat::zeros(1, 1);
            m[(0, 0)] = z * z * z.conj();
            Ok(m)
        };
        let z = C64::new(0.7, -0.4);
        let (dz, dzbar) = dz_dzbar_mat(&eval, z, 1e-5).unwrap();
        assert!((dz[(0, 0)] - 2.0 * z * z.conj()).norm() < 1e-8);
        assert!((dzbar[(0, 0)] - z * z).norm() < 1e-8);
    }

    #[test]
    fn second_derivatives_on_real_polynomial() {
        // y = Re(z^3): y_z = 3 z^2 / 2, y_zz = 3 z (coefficient checks).
        let eval = |z: C64| -> Result<Vec<f64>> { Ok(vec![(z * z * z).re]) };
        let z = C64::new(0.3, 0.6);
        let d = vec_derivs(&eval, z, 1e-4).unwrap();
        let want_z = 1.5 * z * z;
        let want_zz = 3.0 * z;
        assert!((d.y_z[0] - want_z).norm() < 1e-7);
        assert!((d.y_zz[0] - want_zz).norm() < 1e-5);
    }
}
