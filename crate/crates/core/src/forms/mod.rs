//! Quadratic spaces, their subspaces and flags.
//!
//! A [`QuadraticSpace`] is `ℚⁿ` with a symmetric (possibly degenerate) Gram
//! matrix. Subspaces are stored by an explicit basis in ambient coordinates;
//! every invariant computed here depends only on the span.

mod flags;
mod systems;
mod witness;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{
    congruence_diagonalize, coordinates, independent_subset, kernel, lin_comb, rank, span_rank,
    ExactScalar, Mat, Vector,
};

pub use flags::{
    flags_equivalent, invariant_difference, matsuki_data, possible_codim2_signatures,
    possible_line_signatures, subspaces_equivalent, FlagInvariants, MatsukiData,
};
pub use systems::{extend_basis, extend_nullsystem, lightlike_split, scaled_system, ScaledSystem};
pub use witness::{isometry_witness, subspace_distance, Witness, WITNESS_TOLERANCE};

/// Counts of positive, negative and zero directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub nul: usize,
}

impl Signature {
    pub const fn new(pos: usize, neg: usize, nul: usize) -> Self {
        Signature { pos, neg, nul }
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.nul
    }

    /// Signature of the negated form.
    pub fn negated(&self) -> Self {
        Signature::new(self.neg, self.pos, self.nul)
    }

    /// Builds a signature from signed offsets, `None` when a component is negative.
    pub fn checked(pos: i64, neg: i64, nul: i64) -> Option<Self> {
        let c = |x: i64| usize::try_from(x).ok();
        Some(Signature::new(c(pos)?, c(neg)?, c(nul)?))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.nul)
    }
}

/// Signature of a line inside a larger subspace, with the null case split by
/// whether the line lies in the radical of that subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RefinedLineSignature {
    Spacelike,
    Timelike,
    Lightlike,
    Radical,
}

impl RefinedLineSignature {
    pub const ALL: [RefinedLineSignature; 4] = [
        RefinedLineSignature::Spacelike,
        RefinedLineSignature::Timelike,
        RefinedLineSignature::Lightlike,
        RefinedLineSignature::Radical,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RefinedLineSignature::Spacelike => "SPACELIKE",
            RefinedLineSignature::Timelike => "TIMELIKE",
            RefinedLineSignature::Lightlike => "LIGHTLIKE",
            RefinedLineSignature::Radical => "RADICAL",
        }
    }

    /// The triple notation, `(0,0,1)_nul` for radical lines.
    pub fn triple(&self) -> &'static str {
        match self {
            RefinedLineSignature::Spacelike => "(1,0,0)",
            RefinedLineSignature::Timelike => "(0,1,0)",
            RefinedLineSignature::Lightlike => "(0,0,1)",
            RefinedLineSignature::Radical => "(0,0,1)_nul",
        }
    }

    /// Under negation of the form spacelike and timelike trade places.
    pub fn negated(&self) -> Self {
        match self {
            RefinedLineSignature::Spacelike => RefinedLineSignature::Timelike,
            RefinedLineSignature::Timelike => RefinedLineSignature::Spacelike,
            other => *other,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s) || t.triple() == s)
    }
}

impl fmt::Display for RefinedLineSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A linear subspace of `ℚⁿ` given by an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Requires independent vectors of length `ambient_dim`.
    pub fn new(ambient_dim: usize, basis: Vec<Vector>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Malformed(format!(
                "basis vectors must have length {ambient_dim}"
            )));
        }
        if span_rank(&basis, ambient_dim) != basis.len() {
            return Err(Error::Malformed(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Span of arbitrary vectors; dependent ones are dropped.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Malformed(format!(
                "vectors must have length {ambient_dim}"
            )));
        }
        Ok(Subspace {
            ambient_dim,
            basis: independent_subset(vectors, ambient_dim),
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim).columns(),
        }
    }

    /// `span{e_i | i ∈ indices}`.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let basis = indices
            .into_iter()
            .map(|i| crate::exact::unit_vector(ambient_dim, i))
            .collect();
        Subspace::new(ambient_dim, basis).expect("distinct unit vectors")
    }

    pub fn from_i64(ambient_dim: usize, vectors: &[&[i64]]) -> Result<Self> {
        let basis = vectors
            .iter()
            .map(|v| crate::exact::int_vector(v))
            .collect();
        Subspace::new(ambient_dim, basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_columns(self.ambient_dim, &self.basis).expect("uniform lengths")
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        v.len() == self.ambient_dim && coordinates(&self.basis, v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Same span.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Coordinates of `v` with respect to this basis.
    pub fn coords_of(&self, v: &[ExactScalar]) -> Option<Vector> {
        coordinates(&self.basis, v)
    }

    /// Image under a linear map given by a square matrix.
    pub fn image(&self, g: &Mat) -> Result<Subspace> {
        if g.rows() != self.ambient_dim || g.cols() != self.ambient_dim {
            return Err(Error::Malformed(
                "map size does not match ambient dimension".into(),
            ));
        }
        Subspace::span(
            self.ambient_dim,
            &self.basis.iter().map(|v| g.mul_vec(v)).collect::<Vec<_>>(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Malformed(
                "subspaces live in different ambient spaces".into(),
            ));
        }
        let basis = crate::exact::intersect(&self.basis, &other.basis)?;
        Subspace::span(self.ambient_dim, &basis)
    }
}

/// `ℚⁿ` with the bilinear form `⟨x, y⟩ = xᵀ G y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: Mat,
}

impl QuadraticSpace {
    pub fn new(gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Malformed(format!(
                "Gram matrix is {}x{}, not square",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::Malformed("Gram matrix is not symmetric".into()));
        }
        Ok(QuadraticSpace { gram })
    }

    /// `(ℚ^{p+q}, I_{p,q})`.
    pub fn standard(p: usize, q: usize) -> Self {
        QuadraticSpace {
            gram: Mat::standard_form(p, q),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn form(&self, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[ExactScalar]) -> ExactScalar {
        self.form(x, x)
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank(&self.gram) == self.dim()
    }

    fn check(&self, w: &Subspace) -> Result<()> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::Malformed(format!(
                "subspace of ℚ^{} in a space of dimension {}",
                w.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Gram matrix of the form restricted to `w`, in `w`'s basis: `Bᵀ G B`.
    pub fn restrict(&self, w: &Subspace) -> Result<Mat> {
        self.check(w)?;
        if w.dim() == 0 {
            return Ok(Mat::zeros(0, 0));
        }
        Ok(self.gram.congruence(&w.basis_matrix()))
    }

    pub fn signature(&self, w: &Subspace) -> Result<Signature> {
        let r = congruence_diagonalize(&self.restrict(w)?)?;
        let (pos, neg, nul) = r.sign_counts();
        Ok(Signature::new(pos, neg, nul))
    }

    /// Signature of the whole space.
    pub fn total_signature(&self) -> Signature {
        self.signature(&Subspace::full(self.dim()))
            .expect("full subspace matches")
    }

    /// `{v ∈ W | ⟨v, w⟩ = 0 for all w ∈ W}` in ambient coordinates.
    pub fn radical(&self, w: &Subspace) -> Result<Subspace> {
        let s = self.restrict(w)?;
        let vectors: Vec<Vector> = kernel(&s)
            .iter()
            .map(|c| lin_comb(c, w.basis(), self.dim()))
            .collect();
        Subspace::new(self.dim(), vectors)
    }

    /// Vectors of `container` orthogonal to every vector in `against`.
    pub fn orthogonal_within(&self, container: &Subspace, against: &[Vector]) -> Result<Subspace> {
        self.check(container)?;
        if against.is_empty() {
            return Ok(container.clone());
        }
        let rows: Vec<Vector> = against
            .iter()
            .map(|a| {
                let ga = self.gram.mul_vec(a);
                container
                    .basis()
                    .iter()
                    .map(|b| crate::exact::dot(&ga, b))
                    .collect()
            })
            .collect();
        let m = Mat::from_rows(rows)?;
        let vectors: Vec<Vector> = kernel(&m)
            .iter()
            .map(|c| lin_comb(c, container.basis(), self.dim()))
            .collect();
        Subspace::new(self.dim(), vectors)
    }

    /// Whether `v` is orthogonal to all of `w`.
    pub fn is_orthogonal_to(&self, v: &[ExactScalar], w: &Subspace) -> bool {
        let gv = self.gram.mul_vec(v);
        w.basis()
            .iter()
            .all(|b| crate::exact::dot(&gv, b).is_zero())
    }

    /// Signature of the line `l` inside `v`, with null lines split by `rad(v)`.
    pub fn refined_line_signature(
        &self,
        v: &Subspace,
        l: &Subspace,
    ) -> Result<RefinedLineSignature> {
        self.check(v)?;
        self.check(l)?;
        if l.dim() != 1 {
            return Err(Error::Precondition(format!(
                "expected a line, got dimension {}",
                l.dim()
            )));
        }
        if v.dim() < 2 {
            return Err(Error::Precondition(
                "the containing subspace must have dimension at least 2".into(),
            ));
        }
        let x = &l.basis()[0];
        if !v.contains(x) {
            return Err(Error::Precondition(
                "line is not contained in the subspace".into(),
            ));
        }
        let n = self.norm(x);
        Ok(if n.is_positive() {
            RefinedLineSignature::Spacelike
        } else if n.is_negative() {
            RefinedLineSignature::Timelike
        } else if self.is_orthogonal_to(x, v) {
            RefinedLineSignature::Radical
        } else {
            RefinedLineSignature::Lightlike
        })
    }

    /// Negated form, realizing the `(p,q) ↔ (q,p)` correspondence.
    pub fn negated(&self) -> Self {
        QuadraticSpace { gram: -&self.gram }
    }
}

/// Nested subspaces `small ⊂ big`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    small: Subspace,
    big: Subspace,
}

impl Flag {
    pub fn new(small: Subspace, big: Subspace) -> Result<Self> {
        if small.ambient_dim() != big.ambient_dim() {
            return Err(Error::Malformed(
                "flag parts live in different ambient spaces".into(),
            ));
        }
        if small.dim() >= big.dim() {
            return Err(Error::Malformed(format!(
                "flag dimensions must increase, got ({}, {})",
                small.dim(),
                big.dim()
            )));
        }
        if !big.contains_subspace(&small) {
            return Err(Error::Malformed(
                "small subspace is not contained in big subspace".into(),
            ));
        }
        Ok(Flag { small, big })
    }

    /// The flag `(span of the first k vectors, span of all vectors)`.
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vector], k: usize) -> Result<Self> {
        if k > vectors.len() {
            return Err(Error::Malformed(
                "fewer vectors than the small dimension".into(),
            ));
        }
        let small = Subspace::new(ambient_dim, vectors[..k].to_vec())?;
        let big = Subspace::new(ambient_dim, vectors.to_vec())?;
        Flag::new(small, big)
    }

    pub fn small(&self) -> &Subspace {
        &self.small
    }

    pub fn big(&self) -> &Subspace {
        &self.big
    }

    pub fn ambient_dim(&self) -> usize {
        self.big.ambient_dim()
    }

    /// `(k₁, k₂)`.
    pub fn kind(&self) -> (usize, usize) {
        (self.small.dim(), self.big.dim())
    }

    pub fn image(&self, g: &Mat) -> Result<Flag> {
        Flag::new(self.small.image(g)?, self.big.image(g)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vector, q};
    use proptest::prelude::*;

    fn sub(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_i64(n, vs).unwrap()
    }

    #[test]
    fn restrict_examples() {
        let s = QuadraticSpace::standard(2, 2);
        assert_eq!(
            s.restrict(&sub(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]))
                .unwrap(),
            Mat::from_i64_rows(&[&[1, 0], &[0, 1]])
        );
        assert_eq!(
            s.restrict(&sub(4, &[&[1, 0, 1, 0]])).unwrap(),
            Mat::zeros(1, 1)
        );
        assert_eq!(
            s.restrict(&sub(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]))
                .unwrap(),
            Mat::zeros(2, 2)
        );
        assert!(matches!(
            s.restrict(&Subspace::full(3)),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            QuadraticSpace::standard(3, 2).total_signature(),
            Signature::new(3, 2, 0)
        );
        let s = QuadraticSpace::standard(2, 2);
        let iso = sub(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(s.signature(&iso).unwrap(), Signature::new(0, 0, 2));
        let s6 = QuadraticSpace::standard(3, 3);
        assert_eq!(
            s6.signature(&Subspace::coordinate(6, 0..4)).unwrap(),
            Signature::new(3, 1, 0)
        );
    }

    #[test]
    fn radical_examples() {
        let s = QuadraticSpace::new(Mat::diagonal(&[q(1, 1), q(0, 1), q(-1, 1)])).unwrap();
        let r = s.radical(&Subspace::full(3)).unwrap();
        assert!(r.same_span(&Subspace::coordinate(3, [1])));

        let s = QuadraticSpace::standard(2, 2);
        assert_eq!(
            s.radical(&Subspace::coordinate(4, [0, 2])).unwrap().dim(),
            0
        );

        let w = sub(4, &[&[1, 0, 0, 0], &[0, 1, 0, 1]]);
        let r = s.radical(&w).unwrap();
        assert!(r.same_span(&sub(4, &[&[0, 1, 0, 1]])));
    }

    #[test]
    fn refined_line_examples() {
        let s = QuadraticSpace::standard(2, 2);
        let v = sub(4, &[&[1, 0, 0, 0], &[0, 1, 0, 1]]);
        let rl = |v: &Subspace, l: &[i64]| s.refined_line_signature(v, &sub(4, &[l])).unwrap();
        assert_eq!(rl(&v, &[0, 1, 0, 1]), RefinedLineSignature::Radical);
        assert_eq!(rl(&v, &[1, 0, 0, 0]), RefinedLineSignature::Spacelike);
        let v2 = Subspace::coordinate(4, [0, 2]);
        assert_eq!(rl(&v2, &[1, 0, 1, 0]), RefinedLineSignature::Lightlike);
        assert_eq!(rl(&v2, &[0, 0, 1, 0]), RefinedLineSignature::Timelike);

        let outside = s.refined_line_signature(&v2, &sub(4, &[&[0, 1, 0, 0]]));
        assert!(matches!(outside, Err(Error::Precondition(_))));
        let line_in_line =
            s.refined_line_signature(&sub(4, &[&[1, 0, 0, 0]]), &sub(4, &[&[1, 0, 0, 0]]));
        assert!(matches!(line_in_line, Err(Error::Precondition(_))));
    }

    #[test]
    fn subspace_validation() {
        assert!(Subspace::from_i64(3, &[&[1, 0, 0], &[2, 0, 0]]).is_err());
        assert!(Subspace::from_i64(3, &[&[1, 0]]).is_err());
        let s = Subspace::span(3, &[int_vector(&[1, 0, 0]), int_vector(&[2, 0, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(Flag::new(sub(3, &[&[0, 0, 1]]), sub(3, &[&[1, 0, 0], &[0, 1, 0]])).is_err());
        assert!(Flag::new(sub(3, &[&[1, 1, 0]]), sub(3, &[&[1, 0, 0], &[0, 1, 0]])).is_ok());
    }

    fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-2i64..=2, n)
    }

    proptest! {
        // The invariants of a subspace do not depend on the basis chosen for it.
        #[test]
        fn basis_independence(
            gram_diag in proptest::collection::vec(-1i64..=1, 5),
            vs in proptest::collection::vec(small_vec(5), 1..5),
            change in proptest::collection::vec(small_vec(4), 4),
        ) {
            let s = QuadraticSpace::new(Mat::diagonal(&gram_diag.iter().map(|&d| q(d, 1)).collect::<Vec<_>>())).unwrap();
            let w = Subspace::span(5, &vs.iter().map(|v| int_vector(v)).collect::<Vec<_>>()).unwrap();
            let k = w.dim();
            prop_assume!(k > 0);
            let c = Mat::from_rows(change[..k].iter().map(|r| int_vector(&r[..k])).collect()).unwrap();
            prop_assume!(!crate::exact::det(&c).unwrap().is_zero());
            let new_basis = (&w.basis_matrix() * &c).columns();
            let w2 = Subspace::new(5, new_basis).unwrap();
            prop_assert!(w.same_span(&w2));
            prop_assert_eq!(s.signature(&w).unwrap(), s.signature(&w2).unwrap());
            let (r1, r2) = (s.radical(&w).unwrap(), s.radical(&w2).unwrap());
            prop_assert!(r1.same_span(&r2));
            if k >= 2 {
                let line = Subspace::new(5, vec![w.basis()[0].clone()]).unwrap();
                prop_assert_eq!(
                    s.refined_line_signature(&w, &line).unwrap(),
                    s.refined_line_signature(&w2, &line).unwrap()
                );
            }
        }
    }
}
