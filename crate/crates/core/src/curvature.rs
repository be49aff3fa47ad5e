//! Exact curvature of left-invariant metrics on a Lie group.
//!
//! Everything is computed on the Lie algebra from structure constants and a
//! Gram matrix, with the conventions
//! `R(x,y)z = ∇ₓ∇ᵧz − ∇ᵧ∇ₓz − ∇_{[x,y]}z` and `Ric(y,z) = tr(x ↦ R(x,y)z)`.

use crate::error::{Error, Result};
use crate::exact::{invert, lin_comb, solve, ExactScalar, Mat, Vector};
use crate::lie::LieAlgebra;

/// `∇_{eᵢ} eⱼ` in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionTable {
    n: usize,
    gamma: Vec<Vec<Vector>>,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.gamma[i][j]
    }

    /// `∇_{eᵢ} v` for a coordinate vector `v`.
    pub fn along_basis(&self, i: usize, v: &[ExactScalar]) -> Vector {
        lin_comb(v, &self.gamma[i], self.n)
    }

    /// `∇_w e_k`.
    pub fn along(&self, w: &[ExactScalar], k: usize) -> Vector {
        let cols: Vec<Vector> = (0..self.n).map(|m| self.gamma[m][k].clone()).collect();
        lin_comb(w, &cols, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.gamma
            .iter()
            .flatten()
            .flatten()
            .all(ExactScalar::is_zero)
    }
}

fn check_gram(alg: &LieAlgebra, gram: &Mat) -> Result<Mat> {
    if !gram.is_square() || gram.rows() != alg.dim() {
        return Err(Error::Precondition(format!(
            "Gram matrix is {}x{}, algebra has dimension {}",
            gram.rows(),
            gram.cols(),
            alg.dim()
        )));
    }
    if !gram.is_symmetric() {
        return Err(Error::Malformed("Gram matrix is not symmetric".into()));
    }
    invert(gram).map_err(|_| Error::Precondition("Gram matrix is degenerate".into()))
}

/// Levi-Civita connection by the Koszul formula
/// `2⟨∇ₓy, z⟩ = ⟨[x,y],z⟩ − ⟨[y,z],x⟩ + ⟨[z,x],y⟩`.
pub fn levi_civita(alg: &LieAlgebra, gram: &Mat) -> Result<ConnectionTable> {
    let inv = check_gram(alg, gram)?;
    let n = alg.dim();
    let e = |i| crate::exact::unit_vector(n, i);
    let half = crate::exact::q(1, 2);
    let ip = |x: &Vector, l: usize| gram.bilinear(x, &e(l));
    let gamma = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k: Vector = (0..n)
                        .map(|l| {
                            let a = ip(alg.bracket_basis(i, j), l);
                            let b = ip(alg.bracket_basis(j, l), i);
                            let c = ip(alg.bracket_basis(l, i), j);
                            &(&(&a - &b) + &c) * &half
                        })
                        .collect();
                    inv.mul_vec(&k)
                })
                .collect()
        })
        .collect();
    Ok(ConnectionTable { n, gamma })
}

/// `R(eᵢ, eⱼ) e_k` in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Riemann {
    n: usize,
    r: Vec<Vec<Vec<Vector>>>,
}

impl Riemann {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.r[i][j][k]
    }

    /// Indices `(i, j, k, m)` with a nonzero component `m` of `R(eᵢ,eⱼ)e_k`.
    pub fn nonzero_components(&self) -> Vec<(usize, usize, usize, usize, ExactScalar)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for (m, x) in self.r[i][j][k].iter().enumerate() {
                        if !x.is_zero() {
                            out.push((i, j, k, m, x.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn riemann(conn: &ConnectionTable, alg: &LieAlgebra) -> Riemann {
    let n = conn.dim();
    assert_eq!(n, alg.dim(), "connection and algebra dimensions differ");
    let r = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            let a = conn.along_basis(i, conn.get(j, k));
                            let b = conn.along_basis(j, conn.get(i, k));
                            let c = conn.along(alg.bracket_basis(i, j), k);
                            a.iter()
                                .zip(&b)
                                .zip(&c)
                                .map(|((a, b), c)| &(a - b) - c)
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Riemann { n, r }
}

pub fn is_flat(riemann: &Riemann) -> bool {
    riemann
        .r
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .all(ExactScalar::is_zero)
}

/// Ricci tensor as a symmetric matrix, and the scalar curvature `tr(A⁻¹ Ric)`.
pub fn ricci(riemann: &Riemann, gram: &Mat) -> Result<(Mat, ExactScalar)> {
    let n = riemann.dim();
    if gram.rows() != n || !gram.is_square() {
        return Err(Error::Precondition(
            "Gram matrix size does not match the tensor".into(),
        ));
    }
    let inv = invert(gram).map_err(|_| Error::Precondition("Gram matrix is degenerate".into()))?;
    let mut ric = Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let mut acc = ExactScalar::zero();
            for i in 0..n {
                acc += &riemann.r[i][j][k][i];
            }
            ric[(j, k)] = acc;
        }
    }
    let mut scalar = ExactScalar::zero();
    for j in 0..n {
        for k in 0..n {
            if !inv[(j, k)].is_zero() && !ric[(j, k)].is_zero() {
                scalar += &inv[(j, k)] * &ric[(j, k)];
            }
        }
    }
    Ok((ric, scalar))
}

/// `Ric_op = c·Id + D` with `D ∈ Der(𝔤)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Soliton {
    pub c: ExactScalar,
    pub derivation: Mat,
}

impl Soliton {
    pub fn is_einstein(&self) -> bool {
        self.derivation.is_zero()
    }
}

/// Solves for an algebraic Ricci soliton structure, `None` if there is none.
pub fn soliton_check(alg: &LieAlgebra, gram: &Mat, ricci: &Mat) -> Result<Option<Soliton>> {
    let inv = check_gram(alg, gram)?;
    let n = alg.dim();
    let op = &inv * ricci;
    let ders = alg.derivations();
    // Columns: Id, D₁, …, D_m flattened row-major; right-hand side Ric_op.
    let mut columns: Vec<Vector> = vec![Mat::identity(n).entries().to_vec()];
    columns.extend(ders.iter().map(|d| d.entries().to_vec()));
    let system = Mat::from_columns(n * n, &columns)?;
    let Some(sol) = solve(&system, op.entries()) else {
        return Ok(None);
    };
    let mut derivation = Mat::zeros(n, n);
    for (lambda, d) in sol[1..].iter().zip(&ders) {
        if !lambda.is_zero() {
            derivation = &derivation + &d.scale(lambda);
        }
    }
    let soliton = Soliton {
        c: sol[0].clone(),
        derivation,
    };
    debug_assert!(alg.is_derivation(&soliton.derivation));
    Ok(Some(soliton))
}

#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub connection: ConnectionTable,
    pub riemann: Riemann,
    pub ricci: Mat,
    pub scalar_curv: ExactScalar,
    pub is_flat: bool,
    pub soliton: Option<Soliton>,
}

impl CurvatureReport {
    pub fn compute(alg: &LieAlgebra, gram: &Mat) -> Result<Self> {
        let connection = levi_civita(alg, gram)?;
        let riemann = riemann(&connection, alg);
        let (ricci, scalar_curv) = ricci(&riemann, gram)?;
        let soliton = soliton_check(alg, gram, &ricci)?;
        Ok(CurvatureReport {
            is_flat: is_flat(&riemann),
            connection,
            riemann,
            ricci,
            scalar_curv,
            soliton,
        })
    }

    /// Ricci operator `A⁻¹ Ric`.
    pub fn ricci_operator(&self, gram: &Mat) -> Result<Mat> {
        Ok(&invert(gram)? * &self.ricci)
    }
}
