//! Sampling grids in the parameter domain.
//!
//! Enumeration order is part of the output contract: row-major over the
//! grid axes (radius outer for polar grids, y outer for rectangular ones),
//! with the circle parameter looped outside the grid by the callers.

use crate::mat::C64;

#[derive(Clone, Debug, PartialEq)]
pub enum GridSpec {
    /// Radii sampled inclusively from r0 to r1, angles half-open on
    /// [theta0, theta1) so the angular direction can close up periodically.
    Polar {
        r0: f64,
        r1: f64,
        nr: usize,
        theta0: f64,
        theta1: f64,
        ntheta: usize,
    },
    /// Both axes sampled inclusively.
    Rect {
        x0: f64,
        x1: f64,
        nx: usize,
        y0: f64,
        y1: f64,
        ny: usize,
    },
}

impl GridSpec {
    /// The default polar grid used by the verification suites.
    pub fn default_polar() -> Self {
        GridSpec::Polar {
            r0: 0.2,
            r1: 1.95,
            nr: 5,
            theta0: 0.0,
            theta1: 2.0 * std::f64::consts::PI,
            ntheta: 4,
        }
    }

    pub fn points(&self) -> Vec<C64> {
        match *self {
            GridSpec::Polar {
                r0,
                r1,
                nr,
                theta0,
                theta1,
                ntheta,
            } => {
                let mut out = Vec::with_capacity(nr * ntheta);
                for i in 0..nr {
                    let r = if nr == 1 {
                        r0
                    } else {
                        r0 + (r1 - r0) * i as f64 / (nr - 1) as f64
                    };
                    for j in 0..ntheta {
                        let th = theta0 + (theta1 - theta0) * j as f64 / ntheta as f64;
                        out.push(C64::from_polar(r, th));
                    }
                }
                out
            }
            GridSpec::Rect {
                x0,
                x1,
                nx,
                y0,
                y1,
                ny,
            } => {
                let mut out = Vec::with_capacity(nx * ny);
                for iy in 0..ny {
                    let y = if ny == 1 {
                        y0
                    } else {
                        y0 + (y1 - y0) * iy as f64 / (ny - 1) as f64
                    };
                    for ix in 0..nx {
                        let x = if nx == 1 {
                            x0
                        } else {
                            x0 + (x1 - x0) * ix as f64 / (nx - 1) as f64
                        };
                        out.push(C64::new(x, y));
                    }
                }
                out
            }
        }
    }

    /// (rows, cols, periodic-in-cols) for meshing.
    pub fn mesh_dims(&self) -> (usize, usize, bool) {
        match *self {
            GridSpec::Polar { nr, ntheta, theta0, theta1, .. } => {
                let full_turn =
                    ((theta1 - theta0) - 2.0 * std::f64::consts::PI).abs() < 1e-9;
                (nr, ntheta, full_turn)
            }
            GridSpec::Rect { nx, ny, .. } => (ny, nx, false),
        }
    }

    pub fn len(&self) -> usize {
        match *self {
            GridSpec::Polar { nr, ntheta, .. } => nr * ntheta,
            GridSpec::Rect { nx, ny, .. } => nx * ny,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Triangle index list (0-based into `points()` order). Periodic grids
    /// close the column direction.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let (rows, cols, periodic) = self.mesh_dims();
        let mut tris = vec![];
        if rows < 2 || cols < 2 {
            return tris;
        }
        let col_pairs: Vec<(usize, usize)> = if periodic {
            (0..cols).map(|j| (j, (j + 1) % cols)).collect()
        } else {
            (0..cols - 1).map(|j| (j, j + 1)).collect()
        };
        for i in 0..rows - 1 {
            for &(j0, j1) in &col_pairs {
                let a = i * cols + j0;
                let b = i * cols + j1;
                let c = (i + 1) * cols + j0;
                let d = (i + 1) * cols + j1;
                tris.push([a, b, d]);
                tris.push([a, d, c]);
            }
        }
        tris
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_polar_matches_expected_count() {
        let g = GridSpec::default_polar();
        assert_eq!(g.points().len(), 20);
        // Row-major: first four points share the smallest radius.
        let pts = g.points();
        for p in &pts[0..4] {
            assert!((p.norm() - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_triangle_count_is_periodic() {
        let g = GridSpec::default_polar();
        // 2 * (nr - 1) * ntheta triangles for a closed angular direction.
        assert_eq!(g.triangles().len(), 2 * 4 * 4);
    }

    #[test]
    fn rect_triangle_count() {
        let g = GridSpec::Rect {
            x0: -1.0,
            x1: 1.0,
            nx: 3,
            y0: 0.0,
            y1: 1.0,
            ny: 2,
        };
        assert_eq!(g.points().len(), 6);
        assert_eq!(g.triangles().len(), 2 * 2);
    }
}
