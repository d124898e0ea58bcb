//! The two built-in potentials used by the golden test cases and the CLI
//! `golden` subcommand.

use crate::error::Result;
use crate::exact::GRat;
use crate::potential::{potential_from_coeffs, FcheckData, PotentialSpec};

fn g(n: i64, d: i64) -> GRat {
    GRat::from_ratio(n, d)
}

fn gi(n: i64, d: i64) -> GRat {
    // (n/d) i
    GRat::new(crate::exact::q_ratio(0, 1), crate::exact::q_ratio(n, d))
}

/// The sphere-valued example: pattern block
///   (1/2) [[2iz, -2z, -i, 1], [-2iz, 2z, -i, 1],
///          [-2, -2i, -z, -iz], [2i, -2, -iz, z]].
pub fn sphere_case_potential() -> Result<(PotentialSpec, FcheckData)> {
    potential_from_coeffs([
        [&[GRat::zero(), gi(1, 1)], &[gi(-1, 2)]],
        [&[GRat::zero(), gi(-1, 1)], &[gi(-1, 2)]],
        [&[g(-1, 1)], &[GRat::zero(), g(-1, 2)]],
        [&[gi(1, 1)], &[GRat::zero(), gi(-1, 2)]],
    ])
}

/// The isotropic-minimal example with f2 = z^2, f4 = z: pattern block
///   (1/2) [[-i f2', f2', 0, 0], [i f2', -f2', 0, 0],
///          [f4', i f4', 0, 0], [i f4', -f4', 0, 0]].
pub fn minimal_case_potential() -> Result<(PotentialSpec, FcheckData)> {
    potential_from_coeffs([
        [&[GRat::zero(), gi(-1, 1)], &[]],
        [&[GRat::zero(), gi(1, 1)], &[]],
        [&[g(1, 2)], &[]],
        [&[gi(1, 2)], &[]],
    ])
}
