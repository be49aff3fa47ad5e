//! Exact Gaussian elimination and symmetric congruence diagonalization.

use super::matrix::{lin_comb, Mat, Vector};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Mat) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].recip().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let d = &f * &a[(r, j)];
                    a[(i, j)] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right null space `{x | M x = 0}`, one vector per free column.
pub fn kernel(m: &Mat) -> Vec<Vector> {
    let Rref { matrix: a, pivots } = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![ExactScalar::zero(); cols];
            v[free] = ExactScalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[(row, free)];
            }
            v
        })
        .collect()
}

pub fn det(m: &Mat) -> Result<ExactScalar> {
    if !m.is_square() {
        return Err(Error::Malformed(
            "determinant of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut d = ExactScalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(ExactScalar::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            d = -d;
        }
        let pivot = a[(c, c)].clone();
        d *= &pivot;
        let inv = pivot.recip().expect("nonzero pivot");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] * &inv;
            for j in c..n {
                if !a[(c, j)].is_zero() {
                    let t = &f * &a[(c, j)];
                    a[(i, j)] -= t;
                }
            }
        }
    }
    Ok(d)
}

pub fn invert(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::Malformed("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = ExactScalar::one();
    }
    let Rref { matrix, pivots } = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    let mut inv = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = matrix[(i, n + j)].clone();
        }
    }
    Ok(inv)
}

/// Solves `M x = b` exactly; `None` when inconsistent. Free variables are set to zero.
pub fn solve(m: &Mat, b: &[ExactScalar]) -> Option<Vector> {
    assert_eq!(m.rows(), b.len());
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug = Mat::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let Rref { matrix, pivots } = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![ExactScalar::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = matrix[(row, cols)].clone();
    }
    Some(x)
}

fn check_dims(vectors: &[Vector], dim: usize) -> Result<()> {
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::Malformed(format!(
            "expected vectors of length {dim}"
        )));
    }
    Ok(())
}

/// Rank of a list of vectors of length `dim`.
pub fn span_rank(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Mat::from_columns(dim, vectors).expect("uniform vector lengths"))
}

/// Greedy maximal independent subset, preserving order.
pub fn independent_subset(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut chosen: Vec<Vector> = Vec::new();
    for v in vectors {
        chosen.push(v.clone());
        if span_rank(&chosen, dim) < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

/// Coordinates of `v` in the independent list `basis`, if `v` lies in its span.
pub fn coordinates(basis: &[Vector], v: &[ExactScalar]) -> Option<Vector> {
    if basis.is_empty() {
        return v.iter().all(ExactScalar::is_zero).then(Vec::new);
    }
    let m = Mat::from_columns(v.len(), basis).ok()?;
    solve(&m, v)
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersect(a: &[Vector], b: &[Vector]) -> Result<Vec<Vector>> {
    let dim = match a.first().or(b.first()) {
        Some(v) => v.len(),
        None => return Ok(Vec::new()),
    };
    check_dims(a, dim)?;
    check_dims(b, dim)?;
    let a = independent_subset(a, dim);
    let b = independent_subset(b, dim);
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    // [A | B] (x, y) = 0  ⇔  A x = −B y ∈ span(A) ∩ span(B)
    let mut cols = a.clone();
    cols.extend(b.iter().cloned());
    let m = Mat::from_columns(dim, &cols)?;
    Ok(kernel(&m)
        .into_iter()
        .map(|k| lin_comb(&k[..a.len()], &a, dim))
        .collect())
}

/// Extends the independent list `start` to a basis of `span(start ∪ pool)`,
/// drawing from `pool` in order.
pub fn extend_independent(start: &[Vector], pool: &[Vector], dim: usize) -> Vec<Vector> {
    let mut out = start.to_vec();
    let mut r = span_rank(&out, dim);
    for v in pool {
        out.push(v.clone());
        let r2 = span_rank(&out, dim);
        if r2 > r {
            r = r2;
        } else {
            out.pop();
        }
    }
    out
}

/// Result of a symmetric congruence: `transformᵀ · S · transform = diag(diagonal)`.
#[derive(Debug, Clone)]
pub struct CongruenceResult {
    pub transform: Mat,
    pub diagonal: Vec<ExactScalar>,
}

impl CongruenceResult {
    /// `(positive, negative, zero)` counts of the diagonal.
    pub fn sign_counts(&self) -> (usize, usize, usize) {
        let pos = self.diagonal.iter().filter(|d| d.is_positive()).count();
        let neg = self.diagonal.iter().filter(|d| d.is_negative()).count();
        (pos, neg, self.diagonal.len() - pos - neg)
    }
}

/// Symmetric Gaussian elimination over ℚ.
///
/// A zero pivot with a nonzero row is repaired either by swapping in a later
/// nonzero diagonal entry or, when the remaining diagonal is entirely zero, by
/// the substitution `(e_k, e_j) ↦ (e_k + e_j, e_k − e_j)`, which creates the
/// pivots `±2 s_kj` without leaving ℚ.
pub fn congruence_diagonalize(s: &Mat) -> Result<CongruenceResult> {
    if !s.is_square() {
        return Err(Error::Malformed(format!(
            "{}x{} matrix is not square",
            s.rows(),
            s.cols()
        )));
    }
    if !s.is_symmetric() {
        return Err(Error::Malformed("matrix is not symmetric".into()));
    }
    let n = s.rows();
    let mut a = s.clone();
    let mut p = Mat::identity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let row_nonzero = (k + 1..n).any(|j| !a[(k, j)].is_zero());
            if !row_nonzero {
                continue;
            }
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                a.swap_rows(k, j);
                a.swap_cols(k, j);
                p.swap_cols(k, j);
            } else {
                let j = (k + 1..n)
                    .find(|&j| !a[(k, j)].is_zero())
                    .expect("nonzero row");
                // new_k = e_k + e_j, new_j = e_k − e_j
                for i in 0..n {
                    let (x, y) = (a[(i, k)].clone(), a[(i, j)].clone());
                    a[(i, k)] = &x + &y;
                    a[(i, j)] = &x - &y;
                }
                for c in 0..n {
                    let (x, y) = (a[(k, c)].clone(), a[(j, c)].clone());
                    a[(k, c)] = &x + &y;
                    a[(j, c)] = &x - &y;
                }
                for i in 0..n {
                    let (x, y) = (p[(i, k)].clone(), p[(i, j)].clone());
                    p[(i, k)] = &x + &y;
                    p[(i, j)] = &x - &y;
                }
            }
        }
        let pivot = a[(k, k)].clone();
        let inv = pivot.recip().expect("pivot repaired above");
        for r in k + 1..n {
            if a[(k, r)].is_zero() {
                continue;
            }
            let f = &a[(k, r)] * &inv;
            // column r -= f · column k, then row r -= f · row k
            for i in 0..n {
                if !a[(i, k)].is_zero() {
                    let t = &f * &a[(i, k)];
                    a[(i, r)] -= t;
                }
            }
            for c in 0..n {
                if !a[(k, c)].is_zero() {
                    let t = &f * &a[(k, c)];
                    a[(r, c)] -= t;
                }
            }
            for i in 0..n {
                if !p[(i, k)].is_zero() {
                    let t = &f * &p[(i, k)];
                    p[(i, r)] -= t;
                }
            }
        }
    }
    debug_assert!(a.is_diagonal());
    Ok(CongruenceResult {
        diagonal: a.diag(),
        transform: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{int_vector, unit_vector};
    use crate::exact::scalar::q;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> Vector {
        unit_vector(n, i)
    }

    fn hyperbolic4() -> Mat {
        Mat::from_i64_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
    }

    fn random_rational(rng: &mut ChaCha8Rng) -> ExactScalar {
        q(rng.random_range(-9..=9), rng.random_range(1..=9))
    }

    fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // sprinkle exact zeros so degenerate and zero-diagonal cases show up
                let x = if rng.random_bool(0.3) {
                    ExactScalar::zero()
                } else {
                    random_rational(rng)
                };
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        m
    }

    fn assert_congruence(s: &Mat, r: &CongruenceResult) {
        let d = s.congruence(&r.transform);
        assert_eq!(d, Mat::diagonal(&r.diagonal));
        assert!(!det(&r.transform).unwrap().is_zero());
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let s = Mat::diagonal(&[q(3, 1), q(0, 1), q(-5, 1)]);
        let r = congruence_diagonalize(&s).unwrap();
        assert_eq!(r.diagonal, vec![q(3, 1), q(0, 1), q(-5, 1)]);
        assert_eq!(r.transform, Mat::identity(3));
    }

    #[test]
    fn hyperbolic_plane_uses_sum_difference_pivot() {
        let s = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let r = congruence_diagonalize(&s).unwrap();
        assert_eq!(r.transform, Mat::from_i64_rows(&[&[1, 1], &[1, -1]]));
        assert_eq!(r.diagonal, vec![q(2, 1), q(-2, 1)]);
        assert_congruence(&s, &r);
    }

    #[test]
    fn standard_form_counts() {
        for (p, qq) in [(2, 2), (3, 1), (0, 3), (4, 0)] {
            let r = congruence_diagonalize(&Mat::standard_form(p, qq)).unwrap();
            assert_eq!(r.sign_counts(), (p, qq, 0));
            assert!(r.diagonal[..p].iter().all(ExactScalar::is_one));
            assert!(r.diagonal[p..].iter().all(|d| *d == q(-1, 1)));
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            congruence_diagonalize(&Mat::zeros(2, 3)),
            Err(Error::Malformed(_))
        ));
        let asym = Mat::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert!(matches!(
            congruence_diagonalize(&asym),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Mat::identity(3)).is_empty());
        let k = kernel(&Mat::from_i64_rows(&[&[1, 1], &[1, 1]]));
        assert_eq!(k, vec![int_vector(&[-1, 1])]);
        let k = kernel(&Mat::zeros(2, 2));
        assert_eq!(k, vec![int_vector(&[1, 0]), int_vector(&[0, 1])]);
    }

    #[test]
    fn intersect_examples() {
        let n = 3;
        let i = intersect(&[e(n, 0), e(n, 1)], &[e(n, 1), e(n, 2)]).unwrap();
        assert_eq!(i.len(), 1);
        assert_eq!(span_rank(&[i[0].clone(), e(n, 1)], n), 1);

        assert!(intersect(&[e(n, 0)], &[e(n, 1)]).unwrap().is_empty());

        let s = int_vector(&[1, 1, 0]);
        let i = intersect(&[s.clone(), e(n, 2)], std::slice::from_ref(&s)).unwrap();
        assert_eq!(i.len(), 1);
        assert_eq!(span_rank(&[i[0].clone(), s], n), 1);

        assert!(matches!(
            intersect(&[e(3, 0)], &[e(2, 0)]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn invert_det_rank_examples() {
        let two = Mat::identity(3).scale(&q(2, 1));
        assert_eq!(invert(&two).unwrap(), Mat::identity(3).scale(&q(1, 2)));
        assert_eq!(
            det(&Mat::from_i64_rows(&[&[0, 1], &[1, 0]])).unwrap(),
            q(-1, 1)
        );
        assert_eq!(rank(&hyperbolic4()), 4);
        assert_eq!(
            invert(&Mat::from_i64_rows(&[&[1, 2], &[2, 4]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn random_symmetric_matrices_diagonalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..500 {
            let n = rng.random_range(1..=8);
            let s = random_symmetric(&mut rng, n);
            let r = congruence_diagonalize(&s).unwrap();
            assert_congruence(&s, &r);
            assert_eq!(kernel(&s).len() + rank(&s), n);
            assert_eq!(r.sign_counts().2, kernel(&s).len());
        }
    }

    #[test]
    fn sylvester_sign_counts_are_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=6);
            let s = random_symmetric(&mut rng, n);
            let qm = loop {
                let mut m = Mat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = random_rational(&mut rng);
                    }
                }
                if !det(&m).unwrap().is_zero() {
                    break m;
                }
            };
            let before = congruence_diagonalize(&s).unwrap().sign_counts();
            let after = congruence_diagonalize(&s.congruence(&qm))
                .unwrap()
                .sign_counts();
            assert_eq!(before, after);
        }
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(entries in proptest::collection::vec((-5i64..=5, 1i64..=4), 9)) {
            let m = Mat::new(3, 3, entries.iter().map(|&(a, b)| q(a, b)).collect()).unwrap();
            match invert(&m) {
                Ok(inv) => {
                    prop_assert_eq!(&m * &inv, Mat::identity(3));
                    prop_assert!(!det(&m).unwrap().is_zero());
                }
                Err(_) => prop_assert!(det(&m).unwrap().is_zero()),
            }
        }

        #[test]
        fn intersection_dimension_formula(a in proptest::collection::vec(proptest::collection::vec(-1i64..=1, 4), 0..4),
                                          b in proptest::collection::vec(proptest::collection::vec(-1i64..=1, 4), 0..4)) {
            let a: Vec<Vector> = a.iter().map(|v| int_vector(v)).collect();
            let b: Vec<Vector> = b.iter().map(|v| int_vector(v)).collect();
            let i = intersect(&a, &b).unwrap();
            let mut union = a.clone();
            union.extend(b.iter().cloned());
            prop_assert_eq!(i.len(), span_rank(&a, 4) + span_rank(&b, 4) - span_rank(&union, 4));
            for v in &i {
                prop_assert!(coordinates(&independent_subset(&a, 4), v).is_some());
                prop_assert!(coordinates(&independent_subset(&b, 4), v).is_some());
            }
        }
    }
}
