//! Floating-point isometries realizing the equivalence of two flags.

use nalgebra::DMatrix;

use super::systems::adapted_frame;
use super::{flags::invariant_difference, Flag, QuadraticSpace, Subspace};
use crate::error::{Error, Result};
use crate::exact::{invert, ExactScalar, Mat};

/// Max-norm tolerance for the isometry residual and subspace distances.
pub const WITNESS_TOLERANCE: f64 = 1e-9;

/// `g ∈ O(p,q)` (up to rounding) with `g·f2 = f1`, plus the measured residuals.
#[derive(Debug, Clone)]
pub struct Witness {
    pub matrix: DMatrix<f64>,
    /// `‖gᵀ I_{p,q} g − I_{p,q}‖_max`.
    pub isometry_residual: f64,
    /// Projector distances between `g·small₂` and `small₁`, and likewise for `big`.
    pub small_distance: f64,
    pub big_distance: f64,
}

impl Witness {
    pub fn max_residual(&self) -> f64 {
        self.isometry_residual
            .max(self.small_distance)
            .max(self.big_distance)
    }
}

/// Exact frame columns `E` and the exact norms of the columns.
fn frame(space: &QuadraticSpace, flag: &Flag) -> Result<(Mat, Vec<ExactScalar>)> {
    let frame = adapted_frame(space, flag)?;
    let e = Mat::from_columns(space.dim(), &frame.vectors)?;
    Ok((e, frame.norms))
}

/// `Σᵢ √rᵢ · colᵢ(a) ⊗ rowᵢ(b)` with the `rᵢ` grouped by square class, so each
/// group is summed exactly and only multiplied by one irrational factor.
fn scaled_product(a: &Mat, ratios: &[ExactScalar], b: &Mat) -> DMatrix<f64> {
    let (n, m) = (a.rows(), b.cols());
    let mut groups: Vec<(ExactScalar, Mat)> = Vec::new();
    for (i, r) in ratios.iter().enumerate() {
        let (coef, slot) = match groups
            .iter()
            .position(|(r0, _)| (r / r0).sqrt_exact().is_some())
        {
            Some(g) => ((r / &groups[g].0).sqrt_exact().unwrap(), g),
            None => {
                groups.push((r.clone(), Mat::zeros(n, m)));
                (ExactScalar::one(), groups.len() - 1)
            }
        };
        let acc = &mut groups[slot].1;
        for row in 0..n {
            let x = &coef * &a[(row, i)];
            if x.is_zero() {
                continue;
            }
            for col in 0..m {
                acc[(row, col)] += &(&x * &b[(i, col)]);
            }
        }
    }
    groups.iter().fold(DMatrix::zeros(n, m), |sum, (r, mat)| {
        sum + mat.to_f64() * r.to_f64().sqrt()
    })
}

/// Orthogonal projector onto the column span of `b` (full column rank).
fn projector(b: &DMatrix<f64>) -> DMatrix<f64> {
    if b.ncols() == 0 {
        return DMatrix::zeros(b.nrows(), b.nrows());
    }
    let q = b.clone().qr().q();
    &q * q.transpose()
}

/// Max-entry distance between the projectors onto `span(a)` and `span(b)`.
pub fn subspace_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (projector(a) - projector(b)).amax()
}

pub fn isometry_witness(p: usize, q: usize, f1: &Flag, f2: &Flag) -> Result<Witness> {
    let space = QuadraticSpace::standard(p, q);
    let (i1, i2) = (space.flag_invariants(f1)?, space.flag_invariants(f2)?);
    if f1.kind() != f2.kind() {
        return Err(Error::Malformed(format!(
            "flags of different types {:?} and {:?}",
            f1.kind(),
            f2.kind()
        )));
    }
    if let Some(diff) = invariant_difference(&i1, &i2) {
        return Err(Error::Inequivalent(diff));
    }
    let (e1, n1) = frame(&space, f1)?;
    let (e2, n2) = frame(&space, f2)?;
    // g = E₁ S E₂⁻¹ with S = diag(√(|n2ᵢ| / |n1ᵢ|)); only S is irrational.
    let e2_inv = invert(&e2)?;
    let ratios: Vec<ExactScalar> = n1
        .iter()
        .zip(&n2)
        .map(|(a, b)| {
            if a.is_zero() {
                ExactScalar::one()
            } else {
                &b.abs() / &a.abs()
            }
        })
        .collect();
    let g = scaled_product(&e1, &ratios, &e2_inv);

    let j = space.gram().to_f64();
    let isometry_residual = (g.transpose() * &j * &g - &j).amax();
    // Images of f2's subspaces: E₁ S (E₂⁻¹ B), with E₂⁻¹ B exact.
    let image = |s: &Subspace| scaled_product(&e1, &ratios, &(&e2_inv * &s.basis_matrix()));
    let witness = Witness {
        isometry_residual,
        small_distance: subspace_distance(&f1.small().basis_matrix().to_f64(), &image(f2.small())),
        big_distance: subspace_distance(&f1.big().basis_matrix().to_f64(), &image(f2.big())),
        matrix: g,
    };
    let worst = witness.max_residual();
    if !worst.is_finite() || worst > WITNESS_TOLERANCE {
        return Err(Error::WitnessFailure(format!(
            "residual {worst:e} exceeds {WITNESS_TOLERANCE:e}"
        )));
    }
    Ok(witness)
}
