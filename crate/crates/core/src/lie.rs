//! Finite-dimensional Lie algebras given by structure constants.

use crate::error::{Error, Result};
use crate::exact::{kernel, ExactScalar, Mat, Vector};

/// `[eᵢ, eⱼ] = Σₖ c[i][j][k] eₖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    brackets: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    /// Checks antisymmetry and the Jacobi identity.
    pub fn new(brackets: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = brackets.len();
        if brackets
            .iter()
            .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Malformed(
                "structure constants must be n x n x n".into(),
            ));
        }
        let alg = LieAlgebra { dim, brackets };
        for i in 0..dim {
            for j in 0..dim {
                let sum: Vector = alg.brackets[i][j]
                    .iter()
                    .zip(&alg.brackets[j][i])
                    .map(|(a, b)| a + b)
                    .collect();
                if sum.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Malformed(format!(
                        "bracket not antisymmetric at ({i},{j})"
                    )));
                }
            }
        }
        if !alg.satisfies_jacobi() {
            return Err(Error::Malformed(
                "structure constants violate the Jacobi identity".into(),
            ));
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            brackets: vec![vec![vec![ExactScalar::zero(); dim]; dim]; dim],
        }
    }

    /// `𝔥₃ ⊕ ℝⁿ⁻³` with `[e_{n−1}, e_n] = e₁` (1-based).
    pub fn heisenberg(n: usize) -> Self {
        assert!(n >= 3, "need at least three dimensions");
        let mut alg = Self::abelian(n);
        alg.brackets[n - 2][n - 1][0] = ExactScalar::one();
        alg.brackets[n - 1][n - 2][0] = -ExactScalar::one();
        alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vector {
        let mut out = vec![ExactScalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (o, b) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets
            .iter()
            .flatten()
            .flatten()
            .all(ExactScalar::is_zero)
    }

    fn satisfies_jacobi(&self) -> bool {
        let e = |i| crate::exact::unit_vector(self.dim, i);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&e(i), &self.brackets[j][k]);
                    let b = self.bracket(&e(j), &self.brackets[k][i]);
                    let c = self.bracket(&e(k), &self.brackets[i][j]);
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((x, y), z)| !(&(x + y) + z).is_zero())
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[𝔤, 𝔤]` as a spanning list.
    pub fn derived_algebra(&self) -> Vec<Vector> {
        let all: Vec<Vector> = (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.brackets[i][j].clone())
            .collect();
        crate::exact::independent_subset(&all, self.dim)
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vector> {
        // x is central iff Σᵢ xᵢ c[i][j][k] = 0 for all j, k.
        let rows: Vec<Vector> = (0..self.dim)
            .flat_map(|j| (0..self.dim).map(move |k| (j, k)))
            .map(|(j, k)| {
                (0..self.dim)
                    .map(|i| self.brackets[i][j][k].clone())
                    .collect()
            })
            .collect();
        kernel(&Mat::from_rows(rows).expect("rectangular"))
    }

    /// Whether `d` satisfies `d[x,y] = [dx,y] + [x,dy]` on basis pairs.
    pub fn is_derivation(&self, d: &Mat) -> bool {
        let cols = d.columns();
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| {
                let lhs = d.mul_vec(&self.brackets[i][j]);
                let e_i = crate::exact::unit_vector(self.dim, i);
                let e_j = crate::exact::unit_vector(self.dim, j);
                let r1 = self.bracket(&cols[i], &e_j);
                let r2 = self.bracket(&e_i, &cols[j]);
                lhs.iter()
                    .zip(r1.iter().zip(&r2))
                    .all(|(l, (a, b))| *l == a + b)
            })
        })
    }

    /// Whether `phi` is a Lie algebra homomorphism on basis pairs.
    pub fn preserves_bracket(&self, phi: &Mat) -> bool {
        let cols = phi.columns();
        (0..self.dim).all(|i| {
            (i + 1..self.dim)
                .all(|j| phi.mul_vec(&self.brackets[i][j]) == self.bracket(&cols[i], &cols[j]))
        })
    }

    /// Basis of `Der(𝔤)` as matrices acting on column vectors.
    pub fn derivations(&self) -> Vec<Mat> {
        let n = self.dim;
        // Unknown d[a][b] sits at index a*n + b; d e_b = Σₐ d[a][b] e_a.
        let idx = |a: usize, b: usize| a * n + b;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for m in 0..n {
                    let mut row = vec![ExactScalar::zero(); n * n];
                    for b in 0..n {
                        let c = &self.brackets[i][j][b];
                        if !c.is_zero() {
                            row[idx(m, b)] += c;
                        }
                    }
                    for a in 0..n {
                        let c1 = &self.brackets[a][j][m];
                        if !c1.is_zero() {
                            row[idx(a, i)] -= c1;
                        }
                        let c2 = &self.brackets[i][a][m];
                        if !c2.is_zero() {
                            row[idx(a, j)] -= c2;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..n * n)
                .map(|k| crate::exact::unit_vector(n * n, k))
                .collect()
        } else {
            kernel(&Mat::from_rows(rows).expect("rectangular"))
        };
        basis
            .into_iter()
            .map(|v| Mat::new(n, n, v).expect("n*n entries"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, unit_vector};

    #[test]
    fn heisenberg_structure() {
        let h = LieAlgebra::heisenberg(5);
        assert_eq!(
            h.bracket(&unit_vector(5, 3), &unit_vector(5, 4)),
            unit_vector(5, 0)
        );
        assert_eq!(
            h.bracket(&unit_vector(5, 4), &unit_vector(5, 3)),
            vec![q(-1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]
        );
        assert_eq!(h.derived_algebra(), vec![unit_vector(5, 0)]);
        let center = crate::forms::Subspace::new(5, h.center()).unwrap();
        assert!(center.same_span(&crate::forms::Subspace::coordinate(5, 0..3)));
        assert!(h.satisfies_jacobi());
    }

    #[test]
    fn derivation_space_dimension() {
        let h = LieAlgebra::heisenberg(3);
        assert_eq!(h.derivations().len(), 6);
        for d in h.derivations() {
            assert!(h.is_derivation(&d));
        }
        assert!(!h.is_derivation(&Mat::identity(3)));
        assert_eq!(LieAlgebra::abelian(2).derivations().len(), 4);
    }

    #[test]
    fn rejects_bad_constants() {
        let mut b = vec![vec![vec![ExactScalar::zero(); 2]; 2]; 2];
        b[0][1][0] = ExactScalar::one();
        assert!(LieAlgebra::new(b.clone()).is_err());
        b[1][0][0] = -ExactScalar::one();
        assert!(LieAlgebra::new(b).is_ok());
    }
}
