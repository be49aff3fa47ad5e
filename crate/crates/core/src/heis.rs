//! Left-invariant metrics on `H₃ × ℝⁿ⁻³` up to scaling and automorphisms.
//!
//! A metric is a nondegenerate Gram matrix on `𝔤 = 𝔥₃ ⊕ ℝⁿ⁻³`. Its class is
//! fixed by the signature of the center `Z = span{e₁..e_{n−2}}` and by how the
//! derived line `span{e₁}` sits inside `Z`. Classes are numbered 1..21.

use std::fmt;
use std::ops::Deref;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{det, invert, ExactScalar, Mat};
use crate::forms::{
    possible_codim2_signatures, possible_line_signatures, QuadraticSpace, RefinedLineSignature,
    Signature, Subspace,
};
use crate::lie::LieAlgebra;
use crate::sampling::{rng_from_seed, small_rational};

/// `𝔥₃ ⊕ ℝⁿ⁻³` with `[e_{n−1}, e_n] = e₁`, `n ≥ 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergAlgebra {
    n: usize,
    lie: LieAlgebra,
}

impl HeisenbergAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::OutOfScope(format!(
                "dimension {n}: only H3 x R^(n-3) with n >= 4 is classified here"
            )));
        }
        Ok(HeisenbergAlgebra {
            n,
            lie: LieAlgebra::heisenberg(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    /// `span{e₁..e_{n−2}}`.
    pub fn center(&self) -> Subspace {
        Subspace::coordinate(self.n, 0..self.n - 2)
    }

    /// `span{e₁}`.
    pub fn derived(&self) -> Subspace {
        Subspace::coordinate(self.n, [0])
    }
}

impl Deref for HeisenbergAlgebra {
    type Target = LieAlgebra;

    fn deref(&self) -> &LieAlgebra {
        &self.lie
    }
}

/// A row of the class table: the center signature as an offset from `(p, q, 0)`,
/// and the refined signature of the derived line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub id: u8,
    pub offset: (i64, i64, i64),
    pub refined: RefinedLineSignature,
}

impl TableRow {
    /// Concrete center signature for `(p, q)`, if nonnegative.
    pub fn center_signature(&self, p: usize, q: usize) -> Option<Signature> {
        let (a, b, c) = self.offset;
        Signature::checked(p as i64 + a, q as i64 + b, c)
    }

    /// `(p-2,q-1,1)` style rendering.
    pub fn pattern(&self) -> String {
        let sym = |name: &str, d: i64| match d {
            0 => name.to_string(),
            d => format!("{name}{d}"),
        };
        format!(
            "({},{},{})",
            sym("p", self.offset.0),
            sym("q", self.offset.1),
            self.offset.2
        )
    }
}

const fn row(id: u8, offset: (i64, i64, i64), refined: RefinedLineSignature) -> TableRow {
    TableRow {
        id,
        offset,
        refined,
    }
}

use RefinedLineSignature::{Lightlike as L, Radical as R, Spacelike as S, Timelike as T};

/// The frozen numbering of all 21 classes.
pub const TABLE: [TableRow; 21] = [
    row(1, (-2, 0, 0), S),
    row(2, (-2, 0, 0), T),
    row(3, (-2, 0, 0), L),
    row(4, (-1, -1, 0), S),
    row(5, (-1, -1, 0), T),
    row(6, (-1, -1, 0), L),
    row(7, (0, -2, 0), S),
    row(8, (0, -2, 0), T),
    row(9, (0, -2, 0), L),
    row(10, (-2, -1, 1), S),
    row(11, (-2, -1, 1), T),
    row(12, (-2, -1, 1), L),
    row(13, (-2, -1, 1), R),
    row(14, (-1, -2, 1), S),
    row(15, (-1, -2, 1), T),
    row(16, (-1, -2, 1), L),
    row(17, (-1, -2, 1), R),
    row(18, (-2, -2, 2), S),
    row(19, (-2, -2, 2), T),
    row(20, (-2, -2, 2), L),
    row(21, (-2, -2, 2), R),
];

pub fn table_row(id: u8) -> Option<&'static TableRow> {
    TABLE.iter().find(|r| r.id == id)
}

/// Row ids matching concrete invariants at canonical `(p, q)`, `p ≥ q`.
fn matching_rows(p: usize, q: usize, center: Signature, refined: RefinedLineSignature) -> Vec<u8> {
    TABLE
        .iter()
        .filter(|r| r.refined == refined && r.center_signature(p, q) == Some(center))
        .map(|r| r.id)
        .collect()
}

/// Class id for canonical `(p, q)`; errors unless exactly one row matches.
pub fn class_id_for(
    p: usize,
    q: usize,
    center: Signature,
    refined: RefinedLineSignature,
) -> Result<u8> {
    match matching_rows(p, q, center, refined).as_slice() {
        [id] => Ok(*id),
        [] => Err(Error::Precondition(format!(
            "no class with center signature {center} and derived line {refined} at ({p},{q})"
        ))),
        ids => Err(Error::Precondition(format!(
            "ambiguous class table at ({p},{q}): rows {ids:?} share center {center} and {refined}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MetricClass {
    pub id: u8,
    pub center_signature: Signature,
    pub derived_refined: RefinedLineSignature,
}

impl fmt::Display for MetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class {} (center {}, derived {})",
            self.id, self.center_signature, self.derived_refined
        )
    }
}

/// Outcome of classifying one Gram matrix. `p ≥ q` always; `swapped` records
/// that the input had signature `(q, p)` and was negated first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub p: usize,
    pub q: usize,
    pub swapped: bool,
    pub class: MetricClass,
}

/// Reduces `(p, q)` to `p ≥ q`, reporting whether a swap happened.
pub fn canonical_signature(p: usize, q: usize) -> (usize, usize, bool) {
    if p < q {
        (q, p, true)
    } else {
        (p, q, false)
    }
}

fn check_scope(p: usize, q: usize) -> Result<()> {
    if p + q < 4 {
        return Err(Error::OutOfScope(format!(
            "signature ({p},{q}): dimension {} < 4 is outside the classified range",
            p + q
        )));
    }
    if p == 0 || q == 0 {
        return Err(Error::OutOfScope(format!(
            "signature ({p},{q}) is definite; the Riemannian case is classified elsewhere"
        )));
    }
    Ok(())
}

pub fn classify_metric(alg: &HeisenbergAlgebra, gram: &Mat) -> Result<Classification> {
    let n = alg.n();
    if !gram.is_square() || gram.rows() != n {
        return Err(Error::Precondition(format!(
            "Gram matrix is {}x{}, expected {n}x{n}",
            gram.rows(),
            gram.cols()
        )));
    }
    let space = QuadraticSpace::new(gram.clone())?;
    let sig = space.total_signature();
    if sig.nul > 0 {
        return Err(Error::Precondition("Gram matrix is degenerate".into()));
    }
    check_scope(sig.pos, sig.neg)?;
    let (p, q, swapped) = canonical_signature(sig.pos, sig.neg);
    let space = if swapped { space.negated() } else { space };
    let center = alg.center();
    let center_signature = space.signature(&center)?;
    let derived_refined = space.refined_line_signature(&center, &alg.derived())?;
    let id = class_id_for(p, q, center_signature, derived_refined)?;
    Ok(Classification {
        p,
        q,
        swapped,
        class: MetricClass {
            id,
            center_signature,
            derived_refined,
        },
    })
}

/// Admissible classes for a signature, in canonical `p ≥ q` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    pub p: usize,
    pub q: usize,
    pub swapped: bool,
    pub classes: Vec<MetricClass>,
}

impl ClassTable {
    pub fn ids(&self) -> Vec<u8> {
        self.classes.iter().map(|c| c.id).collect()
    }

    pub fn contains(&self, id: u8) -> bool {
        self.classes.iter().any(|c| c.id == id)
    }
}

pub fn admissible_classes(p: usize, q: usize) -> Result<ClassTable> {
    check_scope(p, q)?;
    let (p, q, swapped) = canonical_signature(p, q);
    let mut classes = Vec::new();
    for center in possible_codim2_signatures(p, q) {
        for refined in possible_line_signatures(center.pos, center.neg, center.nul) {
            let id = class_id_for(p, q, center, refined)?;
            classes.push(MetricClass {
                id,
                center_signature: center,
                derived_refined: refined,
            });
        }
    }
    classes.sort_by_key(|c| c.id);
    if classes.windows(2).any(|w| w[0].id == w[1].id) {
        return Err(Error::Precondition(format!(
            "two invariant pairs map to one class at ({p},{q})"
        )));
    }
    Ok(ClassTable {
        p,
        q,
        swapped,
        classes,
    })
}

/// A Gram matrix of signature `(p, q)` in the given class, entries in `{0, ±1}`.
pub fn representative(class_id: u8, p: usize, q: usize) -> Result<Mat> {
    let table = admissible_classes(p, q)?;
    let class = *table
        .classes
        .iter()
        .find(|c| c.id == class_id)
        .ok_or_else(|| {
            Error::Precondition(format!(
                "class {class_id} is not admissible for signature ({p},{q})"
            ))
        })?;
    let gram = canonical_representative(table.p, table.q, &class);
    Ok(if table.swapped { -&gram } else { gram })
}

fn canonical_representative(p: usize, q: usize, class: &MetricClass) -> Mat {
    let n = p + q;
    let z = n - 2;
    let Signature {
        pos: s,
        neg: t,
        nul: u,
    } = class.center_signature;
    let one = ExactScalar::one();
    let mut a = Mat::zeros(n, n);

    let radical: Vec<usize> = match class.derived_refined {
        R => (0..u).collect(),
        _ => (z - u..z).collect(),
    };
    let (mut s_left, mut t_left) = (s, t);
    let mut used = radical.clone();
    match class.derived_refined {
        S => {
            a[(0, 0)] = one.clone();
            s_left -= 1;
            used.push(0);
        }
        T => {
            a[(0, 0)] = -&one;
            t_left -= 1;
            used.push(0);
        }
        L => {
            a[(0, 1)] = one.clone();
            a[(1, 0)] = one.clone();
            s_left -= 1;
            t_left -= 1;
            used.extend([0, 1]);
        }
        R => {}
    }
    for i in (0..z).filter(|i| !used.contains(i)) {
        if s_left > 0 {
            a[(i, i)] = one.clone();
            s_left -= 1;
        } else {
            a[(i, i)] = -&one;
            t_left -= 1;
        }
    }
    debug_assert_eq!((s_left, t_left), (0, 0));

    // Each radical direction of the center pairs with one complement direction.
    let complement = [n - 2, n - 1];
    for (&r, &c) in radical.iter().zip(&complement[2 - u..]) {
        a[(r, c)] = one.clone();
        a[(c, r)] = one.clone();
    }
    let mut pos_left = p - s - u;
    for &c in &complement[..2 - u] {
        if pos_left > 0 {
            a[(c, c)] = one.clone();
            pos_left -= 1;
        } else {
            a[(c, c)] = -&one;
        }
    }
    a
}

/// An element `g = c·φ` of the parabolic group with block sizes `(1, n−3, 2)`,
/// where `φ` is an automorphism of `𝔤`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledAutomorphism {
    pub matrix: Mat,
    pub scale: ExactScalar,
    pub automorphism: Mat,
}

impl ScaledAutomorphism {
    /// Splits an invertible parabolic matrix as scale times automorphism.
    pub fn from_matrix(g: Mat) -> Result<Self> {
        let n = g.rows();
        if !is_parabolic_shape(&g) {
            return Err(Error::Precondition(
                "matrix is not block upper triangular (1, n-3, 2)".into(),
            ));
        }
        let a = g[(0, 0)].clone();
        let d =
            &(&g[(n - 2, n - 2)] * &g[(n - 1, n - 1)]) - &(&g[(n - 2, n - 1)] * &g[(n - 1, n - 2)]);
        if a.is_zero() || d.is_zero() || det(&g)?.is_zero() {
            return Err(Error::Singular);
        }
        let scale = &d / &a;
        let automorphism = g.scale(&scale.recip().expect("nonzero"));
        Ok(ScaledAutomorphism {
            matrix: g,
            scale,
            automorphism,
        })
    }
}

fn is_parabolic_shape(g: &Mat) -> bool {
    let n = g.rows();
    if !g.is_square() || n < 4 {
        return false;
    }
    let below_first = (1..n).all(|i| g[(i, 0)].is_zero());
    let below_middle = (n - 2..n).all(|i| (1..n - 2).all(|j| g[(i, j)].is_zero()));
    below_first && below_middle
}

pub fn parabolic_sample_with<G: Rng + ?Sized>(n: usize, rng: &mut G) -> ScaledAutomorphism {
    assert!(n >= 4, "parabolic group needs n >= 4");
    loop {
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let allowed = match (i, j) {
                    (_, 0) => i == 0,
                    (i, j) if i >= n - 2 => j >= n - 2,
                    _ => true,
                };
                if allowed {
                    g[(i, j)] = small_rational(rng, 3);
                }
            }
        }
        if let Ok(s) = ScaledAutomorphism::from_matrix(g) {
            return s;
        }
    }
}

pub fn parabolic_sample(n: usize, seed: u64) -> ScaledAutomorphism {
    parabolic_sample_with(n, &mut rng_from_seed(seed))
}

/// `g⁻ᵀ · gram · g⁻¹`.
pub fn act_on_metric(g: &Mat, gram: &Mat) -> Result<Mat> {
    if !g.is_square() || g.rows() != gram.rows() || !gram.is_square() {
        return Err(Error::Malformed("matrix sizes do not match".into()));
    }
    let inv = invert(g)?;
    Ok(gram.congruence(&inv))
}

pub fn is_scaled_automorphism(g: &Mat, n: usize) -> bool {
    if g.rows() != n || g.cols() != n || n < 4 {
        return false;
    }
    match ScaledAutomorphism::from_matrix(g.clone()) {
        Ok(s) => LieAlgebra::heisenberg(n).preserves_bracket(&s.automorphism),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn alg(n: usize) -> HeisenbergAlgebra {
        HeisenbergAlgebra::new(n).unwrap()
    }

    fn hyperbolic_22() -> Mat {
        Mat::from_i64_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
    }

    fn lorentz_13() -> Mat {
        Mat::from_i64_rows(&[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]])
    }

    #[test]
    fn classify_examples() {
        let c = classify_metric(&alg(4), &Mat::standard_form(2, 2)).unwrap();
        assert_eq!(c.class.id, 7);
        assert_eq!(c.class.center_signature, Signature::new(2, 0, 0));
        assert_eq!(c.class.derived_refined, S);

        let c = classify_metric(&alg(4), &hyperbolic_22()).unwrap();
        assert_eq!(
            (c.class.id, c.class.center_signature),
            (21, Signature::new(0, 0, 2))
        );
        assert_eq!(c.class.derived_refined, R);

        let c = classify_metric(&alg(4), &lorentz_13()).unwrap();
        assert_eq!((c.p, c.q, c.swapped), (3, 1, false));
        assert_eq!(
            (c.class.id, c.class.center_signature),
            (13, Signature::new(1, 0, 1))
        );
    }

    #[test]
    fn classify_errors() {
        let a = alg(4);
        let degenerate = Mat::diagonal(&[q(1, 1), q(-1, 1), q(1, 1), q(0, 1)]);
        assert!(matches!(
            classify_metric(&a, &degenerate),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            classify_metric(&a, &Mat::identity(5)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            classify_metric(&a, &Mat::identity(4)),
            Err(Error::OutOfScope(_))
        ));
        assert!(matches!(
            HeisenbergAlgebra::new(3),
            Err(Error::OutOfScope(_))
        ));
        let asym =
            Mat::from_i64_rows(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
        assert!(matches!(
            classify_metric(&a, &asym),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn swapped_signature() {
        let c = classify_metric(&alg(4), &(-&lorentz_13())).unwrap();
        assert_eq!((c.p, c.q, c.swapped, c.class.id), (3, 1, true, 13));
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(
            admissible_classes(3, 3).unwrap().ids(),
            (1..=21).collect::<Vec<u8>>()
        );
        assert_eq!(
            admissible_classes(3, 1).unwrap().ids(),
            vec![1, 2, 3, 4, 10, 13]
        );
        assert_eq!(
            admissible_classes(2, 2).unwrap().ids(),
            vec![2, 4, 5, 6, 7, 11, 13, 14, 17, 21]
        );
        assert_eq!(
            admissible_classes(1, 3).unwrap().ids(),
            vec![1, 2, 3, 4, 10, 13]
        );
        assert!(admissible_classes(2, 1).is_err());
        assert!(admissible_classes(4, 0).is_err());
    }

    #[test]
    fn representative_examples() {
        assert_eq!(representative(7, 2, 2).unwrap(), Mat::standard_form(2, 2));
        assert_eq!(representative(21, 2, 2).unwrap(), hyperbolic_22());
        assert_eq!(representative(13, 3, 1).unwrap(), lorentz_13());
        assert!(matches!(
            representative(8, 2, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn representatives_round_trip() {
        for n in 4..=8 {
            for q in 1..n {
                let p = n - q;
                for c in admissible_classes(p, q).unwrap().classes {
                    let g = representative(c.id, p, q).unwrap();
                    assert!(g.entries().iter().all(|x| x.is_zero() || x.abs().is_one()));
                    let got = classify_metric(&alg(n), &g).unwrap();
                    assert_eq!(got.class, c, "({p},{q})");
                    assert_eq!(got.swapped, p < q);
                }
            }
        }
    }

    #[test]
    fn parabolic_examples() {
        let id = ScaledAutomorphism::from_matrix(Mat::identity(4)).unwrap();
        assert!(id.scale.is_one() && id.automorphism == Mat::identity(4));
        let two = ScaledAutomorphism::from_matrix(Mat::identity(4).scale(&q(2, 1))).unwrap();
        assert_eq!(two.scale, q(2, 1));
        assert_eq!(two.automorphism, Mat::identity(4));
        let flip = Mat::diagonal(&[q(-1, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        let s = ScaledAutomorphism::from_matrix(flip.clone()).unwrap();
        assert_eq!(s.scale, q(-1, 1));
        assert_eq!(s.automorphism, -&flip);
        assert!(is_scaled_automorphism(&flip, 5));
    }

    #[test]
    fn parabolic_samples_are_scaled_automorphisms() {
        for seed in 0..200 {
            let n = 4 + (seed as usize % 4);
            let s = parabolic_sample(n, seed);
            assert!(is_scaled_automorphism(&s.matrix, n));
            assert!(alg(n).preserves_bracket(&s.automorphism));
            assert_eq!(s.automorphism.scale(&s.scale), s.matrix);
        }
    }

    #[test]
    fn non_parabolic_rejected() {
        let rev = Mat::from_i64_rows(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert!(!is_scaled_automorphism(&rev, 4));
        let mut m = Mat::identity(4);
        m[(2, 0)] = q(1, 1);
        assert!(!is_scaled_automorphism(&m, 4));
        assert!(!is_scaled_automorphism(&Mat::identity(4), 5));
    }

    #[test]
    fn act_examples() {
        let g = Mat::standard_form(2, 2);
        assert_eq!(act_on_metric(&Mat::identity(4), &g).unwrap(), g);
        let halved = act_on_metric(&Mat::identity(4).scale(&q(2, 1)), &g).unwrap();
        assert_eq!(halved, g.scale(&q(1, 4)));
        let swap =
            Mat::from_i64_rows(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let d = Mat::diagonal(&[q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)]);
        assert_eq!(
            act_on_metric(&swap, &d).unwrap(),
            Mat::diagonal(&[q(-1, 1), q(1, 1), q(1, 1), q(-1, 1)])
        );
        assert!(matches!(
            act_on_metric(&Mat::zeros(4, 4), &d),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn orbit_invariance_sample() {
        let mut rng = rng_from_seed(11);
        for (p, q) in [(2, 2), (3, 1), (3, 2)] {
            let n = p + q;
            for c in admissible_classes(p, q).unwrap().classes {
                let a = representative(c.id, p, q).unwrap();
                for _ in 0..5 {
                    let g = parabolic_sample_with(n, &mut rng);
                    let moved = act_on_metric(&g.matrix, &a).unwrap();
                    assert_eq!(classify_metric(&alg(n), &moved).unwrap().class.id, c.id);
                }
            }
        }
    }

    #[test]
    fn pattern_rendering() {
        assert_eq!(TABLE[0].pattern(), "(p-2,q,0)");
        assert_eq!(TABLE[20].pattern(), "(p-2,q-2,2)");
        assert_eq!(
            TABLE.iter().map(|r| r.id).collect::<Vec<_>>(),
            (1..=21).collect::<Vec<u8>>()
        );
    }
}
