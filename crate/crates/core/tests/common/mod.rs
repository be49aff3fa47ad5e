//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use heisenflag::exact::{det, int_vector, solve, unit_vector, ExactScalar, Mat, Vector};
use heisenflag::forms::{Flag, Subspace};
use heisenflag::lie::LieAlgebra;
use heisenflag::sampling::small_rational;
use rand::Rng;

/// Christoffel symbols obtained by solving torsion-freeness and metric
/// compatibility as one linear system in the `n³` unknowns `Γ[i][j][m]`.
pub fn brute_connection(alg: &LieAlgebra, gram: &Mat) -> Vec<Vec<Vector>> {
    let n = alg.dim();
    let idx = |i: usize, j: usize, m: usize| (i * n + j) * n + m;
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    let zero_row = || vec![ExactScalar::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let br = alg.bracket_basis(i, j);
            for m in 0..n {
                // Γ[i][j][m] − Γ[j][i][m] = [eᵢ,eⱼ]ₘ
                let mut r = zero_row();
                r[idx(i, j, m)] += ExactScalar::one();
                r[idx(j, i, m)] -= ExactScalar::one();
                rows.push(r);
                rhs.push(br[m].clone());
            }
            for k in 0..n {
                // Σₘ Γ[i][j][m] g[m][k] + Σₘ Γ[i][k][m] g[j][m] = 0
                let mut r = zero_row();
                for m in 0..n {
                    r[idx(i, j, m)] += &gram[(m, k)];
                    r[idx(i, k, m)] += &gram[(j, m)];
                }
                rows.push(r);
                rhs.push(ExactScalar::zero());
            }
        }
    }
    let sol = solve(&Mat::from_rows(rows).unwrap(), &rhs).expect("Levi-Civita system is solvable");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| sol[idx(i, j, 0)..idx(i, j, 0) + n].to_vec())
                .collect()
        })
        .collect()
}

/// `R(eᵢ,eⱼ)e_k` from explicit index sums over a Christoffel table.
pub fn brute_riemann(alg: &LieAlgebra, gamma: &[Vec<Vector>]) -> Vec<Vec<Vec<Vector>>> {
    let n = alg.dim();
    let mut r = vec![vec![vec![vec![ExactScalar::zero(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = alg.bracket_basis(i, j);
            for k in 0..n {
                for m in 0..n {
                    let mut acc = ExactScalar::zero();
                    for l in 0..n {
                        acc += &gamma[j][k][l] * &gamma[i][l][m];
                        acc -= &gamma[i][k][l] * &gamma[j][l][m];
                        acc -= &br[l] * &gamma[l][k][m];
                    }
                    r[i][j][k][m] = acc;
                }
            }
        }
    }
    r
}

pub fn brute_ricci(r: &[Vec<Vec<Vector>>]) -> Mat {
    let n = r.len();
    let mut ric = Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let mut acc = ExactScalar::zero();
            for (i, ri) in r.iter().enumerate() {
                acc += &ri[j][k][i];
            }
            ric[(j, k)] = acc;
        }
    }
    ric
}

/// Ricci form of a nilpotent metric Lie algebra with orthogonal basis of norms
/// `a`: `Ric(x,y) = −½ Σᵢ ⟨[x,eᵢ],[y,eᵢ]⟩/aᵢ + ¼ Σᵢⱼ ⟨[eᵢ,eⱼ],x⟩⟨[eᵢ,eⱼ],y⟩/(aᵢaⱼ)`.
pub fn nilpotent_ricci_diagonal(alg: &LieAlgebra, a: &[ExactScalar]) -> Mat {
    let n = alg.dim();
    let g = Mat::diagonal(a);
    let e = |i| unit_vector(n, i);
    let half = ExactScalar::new(1, 2);
    let quarter = ExactScalar::new(1, 4);
    let mut ric = Mat::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let mut acc = ExactScalar::zero();
            for i in 0..n {
                let bx = alg.bracket(&e(x), &e(i));
                let by = alg.bracket(&e(y), &e(i));
                acc -= &(&half * &g.bilinear(&bx, &by)) / &a[i];
                for j in 0..n {
                    let b = alg.bracket_basis(i, j);
                    let t = &g.bilinear(b, &e(x)) * &g.bilinear(b, &e(y));
                    acc += &(&quarter * &t) / &(&a[i] * &a[j]);
                }
            }
            ric[(x, y)] = acc;
        }
    }
    ric
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Mat {
    let entries = (0..rows * cols)
        .map(|_| small_rational(rng, bound))
        .collect();
    Mat::new(rows, cols, entries).unwrap()
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Mat {
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = small_rational(rng, bound);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    m
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Mat {
    loop {
        let m = random_matrix(rng, n, n, 3);
        if !det(&m).unwrap().is_zero() {
            return m;
        }
    }
}

pub fn random_nondegenerate_gram<R: Rng>(rng: &mut R, n: usize) -> Mat {
    loop {
        let m = random_symmetric(rng, n, 4);
        if !det(&m).unwrap().is_zero() {
            return m;
        }
    }
}

/// A random two-step nilpotent algebra: the last `n − m` basis vectors bracket
/// into the first `m`, which are central.
pub fn random_two_step<R: Rng>(rng: &mut R, n: usize, m: usize) -> LieAlgebra {
    let mut b = vec![vec![vec![ExactScalar::zero(); n]; n]; n];
    for i in m..n {
        for j in i + 1..n {
            for k in 0..m {
                let x = ExactScalar::from_i64(rng.random_range(-2..=2));
                b[j][i][k] = -&x;
                b[i][j][k] = x;
            }
        }
    }
    LieAlgebra::new(b).unwrap()
}

/// A random flag of type `(k1, k2)` spanned by `{−1,0,1}` vectors.
pub fn random_ternary_flag<R: Rng>(rng: &mut R, n: usize, k1: usize, k2: usize) -> Flag {
    loop {
        let vs: Vec<Vector> = (0..k2)
            .map(|_| int_vector(&(0..n).map(|_| rng.random_range(-1..=1)).collect::<Vec<_>>()))
            .collect();
        if let Ok(f) = Flag::from_vectors(n, &vs, k1) {
            return f;
        }
    }
}

pub fn subspace_f64(s: &Subspace) -> nalgebra::DMatrix<f64> {
    s.basis_matrix().to_f64()
}
