//! Dataset CSV: the construct output, re-read by the mesh exporter.
//!
//! Versioned header, fixed column order, fixed float formatting, so that
//! identical inputs produce byte-identical files.

use anyhow::{bail, Context, Result};
use isowill_core::mat::C64;
use isowill_core::pipeline::SurfaceSample;
use isowill_core::surface::RhoBranch;
use std::fmt::Write as _;

pub const DATASET_SCHEMA: &str = "dataset/1";

/// One row: either a computed sample or a flagged failure placeholder.
pub struct Row {
    pub z: C64,
    pub lambda: C64,
    pub branch: String,
    pub rank: usize,
    pub rho1: C64,
    pub y: [f64; 8],
    pub x: [f64; 7],
    pub metric_density: f64,
    pub big_cell_margin: f64,
    pub residuals: [f64; 5],
    pub flags: Vec<String>,
}

pub fn branch_name(b: RhoBranch) -> &'static str {
    match b {
        RhoBranch::Rank1Primal => "primal",
        RhoBranch::Rank1Dual => "dual",
        RhoBranch::Rank2Unique => "unique",
    }
}

impl Row {
    pub fn from_sample(s: &SurfaceSample, metric_density: f64) -> Self {
        let mut flags = vec![];
        if s.renormalized {
            flags.push("blowup_renormalized".to_string());
        }
        Row {
            z: s.z,
            lambda: s.lambda,
            branch: branch_name(s.branch).to_string(),
            rank: s.rank_estimate,
            rho1: s.rho1,
            y: s.y,
            x: s.x,
            metric_density,
            big_cell_margin: s.big_cell_margin,
            residuals: [
                s.lightcone_residual,
                s.sphere_residual,
                s.rho_residual,
                s.b1_pattern_residual,
                s.reality_residual,
            ],
            flags,
        }
    }

    pub fn failed(z: C64, lambda: C64, reason: &str) -> Self {
        Row {
            z,
            lambda,
            branch: "none".to_string(),
            rank: 0,
            rho1: C64::new(0.0, 0.0),
            y: [0.0; 8],
            x: [0.0; 7],
            metric_density: 0.0,
            big_cell_margin: 0.0,
            residuals: [0.0; 5],
            flags: vec![format!("error:{reason}")],
        }
    }

    pub fn is_failed(&self) -> bool {
        self.flags.iter().any(|f| f.starts_with("error:"))
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

pub const COLUMNS: &str = "re_z,im_z,re_lambda,im_lambda,branch,rank,re_rho1,im_rho1,\
y0,y1,y2,y3,y4,y5,y6,y7,x1,x2,x3,x4,x5,x6,x7,\
metric_density,big_cell_margin,lightcone_residual,sphere_residual,rho_residual,\
b1_pattern_residual,reality_residual,flags";

/// Render the full dataset deterministically.
pub fn render(rows: &[Row], spec_hash: u64, grid_desc: &str, lambda_count: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# isowill {DATASET_SCHEMA}");
    let _ = writeln!(out, "# spec_hash={spec_hash:016x}");
    let _ = writeln!(out, "# grid={grid_desc} lambda_count={lambda_count}");
    let _ = writeln!(out, "{COLUMNS}");
    for r in rows {
        let flags = if r.flags.is_empty() {
            "-".to_string()
        } else {
            r.flags.join(";")
        };
        let mut fields: Vec<String> = vec![
            fmt_f(r.z.re),
            fmt_f(r.z.im),
            fmt_f(r.lambda.re),
            fmt_f(r.lambda.im),
            r.branch.clone(),
            r.rank.to_string(),
            fmt_f(r.rho1.re),
            fmt_f(r.rho1.im),
        ];
        fields.extend(r.y.iter().map(|v| fmt_f(*v)));
        fields.extend(r.x.iter().map(|v| fmt_f(*v)));
        fields.push(fmt_f(r.metric_density));
        fields.push(fmt_f(r.big_cell_margin));
        fields.extend(r.residuals.iter().map(|v| fmt_f(*v)));
        fields.push(flags);
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

/// Parsed dataset, as much as the mesh exporter needs.
pub struct Dataset {
    pub spec_hash: u64,
    pub rows: Vec<Row>,
}

pub fn parse(text: &str) -> Result<Dataset> {
    let mut spec_hash = 0u64;
    let mut rows = vec![];
    let mut header_seen = false;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(h) = rest.strip_prefix("spec_hash=") {
                spec_hash = u64::from_str_radix(h, 16)
                    .with_context(|| format!("line {lineno}: bad spec hash"))?;
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if line != COLUMNS {
                bail!("line {lineno}: unexpected column header");
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 31 {
            bail!("line {lineno}: expected 31 fields, got {}", fields.len());
        }
        let f = |k: usize| -> Result<f64> {
            fields[k]
                .parse::<f64>()
                .with_context(|| format!("line {lineno}: bad float in column {k}"))
        };
        let mut y = [0.0; 8];
        for (k, v) in y.iter_mut().enumerate() {
            *v = f(8 + k)?;
        }
        let mut x = [0.0; 7];
        for (k, v) in x.iter_mut().enumerate() {
            *v = f(16 + k)?;
        }
        rows.push(Row {
            z: C64::new(f(0)?, f(1)?),
            lambda: C64::new(f(2)?, f(3)?),
            branch: fields[4].to_string(),
            rank: fields[5]
                .parse()
                .with_context(|| format!("line {lineno}: bad rank"))?,
            rho1: C64::new(f(6)?, f(7)?),
            y,
            x,
            metric_density: f(23)?,
            big_cell_margin: f(24)?,
            residuals: [f(25)?, f(26)?, f(27)?, f(28)?, f(29)?],
            flags: if fields[30] == "-" {
                vec![]
            } else {
                fields[30].split(';').map(str::to_string).collect()
            },
        });
    }
    if !header_seen {
        bail!("missing dataset header");
    }
    Ok(Dataset { spec_hash, rows })
}

/// FNV-1a hash of the raw spec bytes, recorded in outputs for provenance.
pub fn content_hash(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
