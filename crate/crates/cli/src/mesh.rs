//! Mesh export: triangulated 3D projections of a surface dataset in ASCII
//! polygon formats (Wavefront OBJ or OFF).

use crate::dataset::{Dataset, Row};
use anyhow::{bail, Result};
use isowill_core::grid::GridSpec;
use std::fmt::Write as _;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Off,
}

#[derive(Clone)]
pub enum Projection {
    /// 1-based coordinate indices into x.
    Coords(usize, usize, usize),
    /// Principal components of the point cloud, deterministic ordering.
    Pca,
}

impl Projection {
    pub fn describe(&self) -> String {
        match self {
            Projection::Coords(a, b, c) => format!("coords {a},{b},{c}"),
            Projection::Pca => "pca".to_string(),
        }
    }
}

/// Jacobi eigendecomposition of a small real symmetric matrix; returns
/// (eigenvalues, eigenvectors as rows), deterministically ordered by
/// descending eigenvalue with a fixed sign convention.
fn symmetric_eigen(a: &[[f64; 7]; 7]) -> (Vec<f64>, Vec<[f64; 7]>) {
    let n = 7;
    let mut m = *a;
    let mut v = [[0.0f64; 7]; 7];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p][q] * m[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (2.0 * m[p][q]).atan2(m[q][q] - m[p][p]);
                let (c, s) = (theta.cos(), theta.sin());
                for k in 0..n {
                    let (mp, mq) = (m[p][k], m[q][k]);
                    m[p][k] = c * mp - s * mq;
                    m[q][k] = s * mp + c * mq;
                }
                for k in 0..n {
                    let (mp, mq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mp - s * mq;
                    m[k][q] = s * mp + c * mq;
                }
                for k in 0..n {
                    let (vp, vq) = (v[p][k], v[q][k]);
                    v[p][k] = c * vp - s * vq;
                    v[q][k] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].partial_cmp(&m[i][i]).unwrap());
    let mut vals = vec![];
    let mut vecs = vec![];
    for &k in &order {
        vals.push(m[k][k]);
        let mut row = v[k];
        // Fixed sign: the component of largest magnitude is positive.
        let lead = row
            .iter()
            .cloned()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .unwrap_or(1.0);
        if lead < 0.0 {
            for c in &mut row {
                *c = -*c;
            }
        }
        vecs.push(row);
    }
    (vals, vecs)
}

fn project(points: &[[f64; 7]], projection: &Projection) -> Vec<[f64; 3]> {
    match projection {
        Projection::Coords(a, b, c) => points
            .iter()
            .map(|p| [p[a - 1], p[b - 1], p[c - 1]])
            .collect(),
        Projection::Pca => {
            let n = points.len().max(1) as f64;
            let mut mean = [0.0f64; 7];
            for p in points {
                for k in 0..7 {
                    mean[k] += p[k] / n;
                }
            }
            let mut cov = [[0.0f64; 7]; 7];
            for p in points {
                for i in 0..7 {
                    for j in 0..7 {
                        cov[i][j] += (p[i] - mean[i]) * (p[j] - mean[j]) / n;
                    }
                }
            }
            let (_, vecs) = symmetric_eigen(&cov);
            points
                .iter()
                .map(|p| {
                    let mut out = [0.0f64; 3];
                    for (k, o) in out.iter_mut().enumerate() {
                        *o = (0..7).map(|i| (p[i] - mean[i]) * vecs[k][i]).sum();
                    }
                    out
                })
                .collect()
        }
    }
}

/// Select one (lambda, branch) layer of the dataset, in dataset order.
pub fn select_layer<'a>(
    data: &'a Dataset,
    lambda_index: usize,
    branch: &str,
) -> Result<Vec<&'a Row>> {
    let mut lambdas: Vec<(f64, f64)> = vec![];
    for r in &data.rows {
        let key = (r.lambda.re, r.lambda.im);
        if !lambdas.contains(&key) {
            lambdas.push(key);
        }
    }
    let Some(&lam) = lambdas.get(lambda_index) else {
        bail!(
            "lambda index {lambda_index} out of range ({} distinct values)",
            lambdas.len()
        );
    };
    let rows: Vec<&Row> = data
        .rows
        .iter()
        .filter(|r| (r.lambda.re, r.lambda.im) == lam)
        .filter(|r| r.branch == branch || (branch == "primal" && r.branch == "unique"))
        .collect();
    if rows.is_empty() {
        bail!("no rows for branch '{branch}' at lambda index {lambda_index}");
    }
    if rows.iter().any(|r| r.is_failed()) {
        bail!("selected layer contains failed samples; cannot mesh");
    }
    Ok(rows)
}

/// Render the mesh. Vertex order follows the dataset order of the layer.
pub fn render(
    rows: &[&Row],
    grid: &GridSpec,
    projection: &Projection,
    format: MeshFormat,
    spec_hash: u64,
) -> Result<String> {
    if rows.len() != grid.len() {
        bail!(
            "layer has {} vertices but the grid describes {}",
            rows.len(),
            grid.len()
        );
    }
    let points: Vec<[f64; 7]> = rows.iter().map(|r| r.x).collect();
    let verts = project(&points, projection);
    let tris = grid.triangles();
    let lam = rows[0].lambda;
    let mut out = String::new();
    match format {
        MeshFormat::Obj => {
            let _ = writeln!(out, "# isowill mesh/1");
            let _ = writeln!(out, "# spec_hash={spec_hash:016x}");
            let _ = writeln!(out, "# lambda={:.16e}{:+.16e}i", lam.re, lam.im);
            let _ = writeln!(out, "# projection={}", projection.describe());
            for v in &verts {
                let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
            }
            for t in &tris {
                let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
            }
        }
        MeshFormat::Off => {
            let _ = writeln!(out, "OFF");
            let _ = writeln!(out, "# isowill mesh/1 spec_hash={spec_hash:016x}");
            let _ = writeln!(out, "# lambda={:.16e}{:+.16e}i", lam.re, lam.im);
            let _ = writeln!(out, "# projection={}", projection.describe());
            let _ = writeln!(out, "{} {} 0", verts.len(), tris.len());
            for v in &verts {
                let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
            }
            for t in &tris {
                let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
            }
        }
    }
    Ok(out)
}
