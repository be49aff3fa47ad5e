//! Orbit invariants of flags and subspaces.

use std::fmt;

use super::{Flag, QuadraticSpace, RefinedLineSignature, Signature, Subspace};
use crate::error::{Error, Result};

/// The three data separating `O(p,q)`-orbits on a flag variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagInvariants {
    pub sig_big: Signature,
    pub sig_small: Signature,
    pub dim_small_cap_rad: usize,
}

impl fmt::Display for FlagInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.sig_big, self.sig_small, self.dim_small_cap_rad
        )
    }
}

/// Intersection counts against `U⁺ = span{e₁..e_p}` and `U⁻ = span{e_{p+1}..e_{p+q}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatsukiData {
    pub c_plus: usize,
    pub c_minus: usize,
    pub c_zero: usize,
    pub d_plus: usize,
    pub d_minus: usize,
    pub d_zero: usize,
    pub d_pm: usize,
}

impl MatsukiData {
    pub fn as_tuple(&self) -> [usize; 7] {
        [
            self.c_plus,
            self.c_minus,
            self.c_zero,
            self.d_plus,
            self.d_minus,
            self.d_zero,
            self.d_pm,
        ]
    }
}

impl fmt::Display for MatsukiData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.as_tuple().iter().map(ToString::to_string).collect();
        write!(f, "({})", t.join(","))
    }
}

impl QuadraticSpace {
    pub fn flag_invariants(&self, f: &Flag) -> Result<FlagInvariants> {
        if f.ambient_dim() != self.dim() {
            return Err(Error::Malformed(format!(
                "flag in ℚ^{} for a space of dimension {}",
                f.ambient_dim(),
                self.dim()
            )));
        }
        if !self.is_nondegenerate() {
            return Err(Error::Precondition("ambient form is degenerate".into()));
        }
        let rad = self.radical(f.big())?;
        Ok(FlagInvariants {
            sig_big: self.signature(f.big())?,
            sig_small: self.signature(f.small())?,
            dim_small_cap_rad: f.small().intersect(&rad)?.dim(),
        })
    }
}

fn check_shapes(space: &QuadraticSpace, f1: &Flag, f2: &Flag) -> Result<()> {
    if f1.kind() != f2.kind() {
        return Err(Error::Malformed(format!(
            "flags of different types {:?} and {:?}",
            f1.kind(),
            f2.kind()
        )));
    }
    if f1.ambient_dim() != space.dim() || f2.ambient_dim() != space.dim() {
        return Err(Error::Malformed("flag and space dimensions differ".into()));
    }
    Ok(())
}

pub fn flags_equivalent(space: &QuadraticSpace, f1: &Flag, f2: &Flag) -> Result<bool> {
    check_shapes(space, f1, f2)?;
    Ok(space.flag_invariants(f1)? == space.flag_invariants(f2)?)
}

/// Names the first invariant on which two tuples differ.
pub fn invariant_difference(a: &FlagInvariants, b: &FlagInvariants) -> Option<String> {
    if a.sig_big != b.sig_big {
        Some(format!("sig_big {} ≠ {}", a.sig_big, b.sig_big))
    } else if a.sig_small != b.sig_small {
        Some(format!("sig_small {} ≠ {}", a.sig_small, b.sig_small))
    } else if a.dim_small_cap_rad != b.dim_small_cap_rad {
        Some(format!(
            "dim(small ∩ rad big) {} ≠ {}",
            a.dim_small_cap_rad, b.dim_small_cap_rad
        ))
    } else {
        None
    }
}

pub fn matsuki_data(f: &Flag, p: usize, q: usize) -> Result<MatsukiData> {
    let n = p + q;
    if f.ambient_dim() != n {
        return Err(Error::Malformed(format!(
            "flag in ℚ^{} but p+q = {n}",
            f.ambient_dim()
        )));
    }
    if n < 3 || f.kind() != (1, n - 2) {
        return Err(Error::Malformed(format!(
            "expected a flag of type (1,{}), got {:?}",
            n.saturating_sub(2),
            f.kind()
        )));
    }
    let u_plus = Subspace::coordinate(n, 0..p);
    let u_minus = Subspace::coordinate(n, p..n);
    let (big, small) = (f.big(), f.small());
    let big_plus = big.intersect(&u_plus)?;
    let big_minus = big.intersect(&u_minus)?;
    let c_plus = big_plus.dim();
    let c_minus = big_minus.dim();
    let split = Subspace::span(n, &[big_plus.basis(), big_minus.basis()].concat())?;
    let d_plus = small.intersect(&big_plus)?.dim();
    let d_minus = small.intersect(&big_minus)?.dim();
    Ok(MatsukiData {
        c_plus,
        c_minus,
        c_zero: big.dim() - c_plus - c_minus,
        d_plus,
        d_minus,
        d_zero: small.dim() - d_plus - d_minus,
        d_pm: small.intersect(&split)?.dim(),
    })
}

/// Signatures a codimension-2 subspace of `(ℚ^{p+q}, I_{p,q})` can carry.
pub fn possible_codim2_signatures(p: usize, q: usize) -> Vec<Signature> {
    let (p, q) = (p as i64, q as i64);
    [
        (p - 2, q, 0),
        (p - 1, q - 1, 0),
        (p, q - 2, 0),
        (p - 2, q - 1, 1),
        (p - 1, q - 2, 1),
        (p - 2, q - 2, 2),
    ]
    .into_iter()
    .filter_map(|(a, b, c)| Signature::checked(a, b, c))
    .collect()
}

/// Refined signatures of lines inside a subspace of signature `(s,t,u)`.
pub fn possible_line_signatures(s: usize, t: usize, u: usize) -> Vec<RefinedLineSignature> {
    let mut out = Vec::new();
    if s >= 1 {
        out.push(RefinedLineSignature::Spacelike);
    }
    if t >= 1 {
        out.push(RefinedLineSignature::Timelike);
    }
    if s >= 1 && t >= 1 {
        out.push(RefinedLineSignature::Lightlike);
    }
    if u >= 1 {
        out.push(RefinedLineSignature::Radical);
    }
    out
}

/// Whether an isometry of the (possibly degenerate) space carries `u` onto `w`.
pub fn subspaces_equivalent(space: &QuadraticSpace, u: &Subspace, w: &Subspace) -> Result<bool> {
    let full = Subspace::full(space.dim());
    let rad = space.radical(&full)?;
    Ok(space.signature(u)? == space.signature(w)?
        && u.intersect(&rad)?.dim() == w.intersect(&rad)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Mat};

    fn sub(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_i64(n, vs).unwrap()
    }

    fn flag(n: usize, small: &[&[i64]], big: &[&[i64]]) -> Flag {
        Flag::new(sub(n, small), sub(n, big)).unwrap()
    }

    fn coord_flag(n: usize, small: &[usize], big: &[usize]) -> Flag {
        Flag::new(
            Subspace::coordinate(n, small.iter().copied()),
            Subspace::coordinate(n, big.iter().copied()),
        )
        .unwrap()
    }

    fn inv(big: (usize, usize, usize), small: (usize, usize, usize), k: usize) -> FlagInvariants {
        FlagInvariants {
            sig_big: Signature::new(big.0, big.1, big.2),
            sig_small: Signature::new(small.0, small.1, small.2),
            dim_small_cap_rad: k,
        }
    }

    #[test]
    fn flag_invariant_examples() {
        let s33 = QuadraticSpace::standard(3, 3);
        assert_eq!(
            s33.flag_invariants(&coord_flag(6, &[0], &[0, 1, 2, 3]))
                .unwrap(),
            inv((3, 1, 0), (1, 0, 0), 0)
        );
        let s22 = QuadraticSpace::standard(2, 2);
        assert_eq!(
            s22.flag_invariants(&coord_flag(4, &[0], &[0, 1])).unwrap(),
            inv((2, 0, 0), (1, 0, 0), 0)
        );
        let iso = flag(4, &[&[1, 0, 1, 0]], &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(
            s22.flag_invariants(&iso).unwrap(),
            inv((0, 0, 2), (0, 0, 1), 1)
        );

        let degenerate = QuadraticSpace::new(Mat::diagonal(&[q(1, 1), q(-1, 1), q(0, 1)])).unwrap();
        assert!(matches!(
            degenerate.flag_invariants(&coord_flag(3, &[0], &[0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn flags_equivalent_examples() {
        let s = QuadraticSpace::standard(2, 2);
        let a = coord_flag(4, &[0], &[0, 1]);
        assert!(flags_equivalent(&s, &a, &a).unwrap());
        let b = coord_flag(4, &[2], &[2, 3]);
        assert!(!flags_equivalent(&s, &a, &b).unwrap());
        let diff = invariant_difference(
            &s.flag_invariants(&a).unwrap(),
            &s.flag_invariants(&b).unwrap(),
        )
        .unwrap();
        assert_eq!(diff, "sig_big (2,0,0) ≠ (0,2,0)");
        let c = coord_flag(4, &[1], &[0, 1]);
        assert!(flags_equivalent(&s, &a, &c).unwrap());
        let shape = coord_flag(4, &[0], &[0, 1, 2]);
        assert!(matches!(
            flags_equivalent(&s, &a, &shape),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn matsuki_examples() {
        let m = matsuki_data(&coord_flag(6, &[0], &[0, 1, 2, 3]), 3, 3).unwrap();
        assert_eq!(m.as_tuple(), [3, 1, 0, 1, 0, 0, 1]);
        let iso = flag(4, &[&[1, 0, 1, 0]], &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(
            matsuki_data(&iso, 2, 2).unwrap().as_tuple(),
            [0, 0, 2, 0, 0, 1, 0]
        );
        let neg = coord_flag(4, &[2], &[2, 3]);
        assert_eq!(
            matsuki_data(&neg, 2, 2).unwrap().as_tuple(),
            [0, 2, 0, 0, 1, 0, 1]
        );
        assert!(matsuki_data(&neg, 3, 3).is_err());
        assert!(matsuki_data(&coord_flag(4, &[0], &[0, 1, 2]), 2, 2).is_err());
    }

    #[test]
    fn codim2_signature_examples() {
        let sig = |v: &[(usize, usize, usize)]| -> Vec<Signature> {
            let mut s: Vec<_> = v.iter().map(|&(a, b, c)| Signature::new(a, b, c)).collect();
            s.sort();
            s
        };
        let sorted = |mut v: Vec<Signature>| {
            v.sort();
            v
        };
        assert_eq!(
            sorted(possible_codim2_signatures(3, 3)),
            sig(&[
                (1, 3, 0),
                (2, 2, 0),
                (3, 1, 0),
                (1, 2, 1),
                (2, 1, 1),
                (1, 1, 2)
            ])
        );
        assert_eq!(
            sorted(possible_codim2_signatures(2, 1)),
            sig(&[(0, 1, 0), (1, 0, 0), (0, 0, 1)])
        );
        assert_eq!(
            sorted(possible_codim2_signatures(3, 1)),
            sig(&[(1, 1, 0), (2, 0, 0), (1, 0, 1)])
        );
    }

    #[test]
    fn line_signature_examples() {
        use RefinedLineSignature::*;
        assert_eq!(possible_line_signatures(2, 0, 1), vec![Spacelike, Radical]);
        assert_eq!(
            possible_line_signatures(1, 1, 0),
            vec![Spacelike, Timelike, Lightlike]
        );
        assert_eq!(possible_line_signatures(0, 0, 1), vec![Radical]);
    }

    #[test]
    fn subspace_equivalence_examples() {
        let s = QuadraticSpace::standard(2, 2);
        let e = |i| Subspace::coordinate(4, [i]);
        assert!(subspaces_equivalent(&s, &e(0), &e(1)).unwrap());
        assert!(!subspaces_equivalent(&s, &e(0), &e(2)).unwrap());

        let d = QuadraticSpace::new(Mat::diagonal(&[q(1, 1), q(-1, 1), q(0, 1)])).unwrap();
        let a = Subspace::coordinate(3, [2]);
        let b = sub(3, &[&[1, 1, 0]]);
        assert_eq!(d.signature(&a).unwrap(), d.signature(&b).unwrap());
        assert!(!subspaces_equivalent(&d, &a, &b).unwrap());
    }
}
