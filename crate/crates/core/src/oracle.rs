//! Brute-force enumeration of flags `(line ⊂ V)` with `dim V = p+q−2`.
//!
//! `V` runs over all reduced row echelon bases whose free entries lie in
//! `{−1,0,1}`, and the line over all `{−1,0,1}` combinations of that basis (up
//! to sign). Degenerate configurations have measure zero, so random sampling
//! would miss them; this grid hits every orbit for small `(p, q)`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::Result;
use crate::exact::{lin_comb, ExactScalar, Mat, Vector};
use crate::forms::RefinedLineSignature;
use crate::forms::{Flag, FlagInvariants, MatsukiData, QuadraticSpace, Signature, Subspace};
use crate::heis::class_id_for;

/// How many sample flags to keep per invariant tuple.
pub const SAMPLES_PER_ORBIT: usize = 6;

/// Reduced row echelon `k × n` matrices with free entries in `{−1,0,1}`, as row lists.
pub fn ternary_rref_bases(n: usize, k: usize) -> Vec<Vec<Vector>> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                (pivots[r] + 1..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for code in 0..3usize.pow(free.len() as u32) {
            let mut rows = vec![vec![ExactScalar::zero(); n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = ExactScalar::one();
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = ExactScalar::from_i64((x % 3) as i64 - 1);
                x /= 3;
            }
            out.push(rows);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Nonzero `{−1,0,1}` coefficient vectors of length `k` with first nonzero entry `+1`.
pub fn ternary_directions(k: usize) -> Vec<Vector> {
    (1..3usize.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let d = (code % 3) as i64 - 1;
                    code /= 3;
                    ExactScalar::from_i64(d)
                })
                .collect::<Vector>()
        })
        .filter(|v| {
            v.iter()
                .find(|x| !x.is_zero())
                .is_some_and(ExactScalar::is_positive)
        })
        .collect()
}

/// Everything observed over the grid.
#[derive(Debug, Clone, Default)]
pub struct OracleSummary {
    pub flags: usize,
    pub invariants: BTreeMap<FlagInvariants, Vec<Flag>>,
    pub matsuki: BTreeSet<MatsukiData>,
}

impl OracleSummary {
    fn merge(mut self, other: OracleSummary) -> OracleSummary {
        self.flags += other.flags;
        for (k, v) in other.invariants {
            let slot = self.invariants.entry(k).or_default();
            let room = SAMPLES_PER_ORBIT.saturating_sub(slot.len());
            slot.extend(v.into_iter().take(room));
        }
        self.matsuki.extend(other.matsuki);
        self
    }

    /// Class ids of the observed orbits, with `p ≥ q`.
    pub fn class_ids(&self, p: usize, q: usize) -> Result<BTreeSet<u8>> {
        self.invariants
            .keys()
            .map(|inv| class_of_invariants(p, q, inv))
            .collect()
    }
}

/// The class id attached to the invariants of a flag `(line, center)`.
pub fn class_of_invariants(p: usize, q: usize, inv: &FlagInvariants) -> Result<u8> {
    let refined = match (inv.sig_small, inv.dim_small_cap_rad) {
        (s, _) if s.pos == 1 => RefinedLineSignature::Spacelike,
        (s, _) if s.neg == 1 => RefinedLineSignature::Timelike,
        (_, 0) => RefinedLineSignature::Lightlike,
        _ => RefinedLineSignature::Radical,
    };
    class_id_for(p, q, inv.sig_big, refined)
}

/// Per-subspace data shared by all lines inside it.
struct BigData {
    basis: Vec<Vector>,
    flag_big: Subspace,
    sig: Signature,
    radical: Subspace,
    c_plus: usize,
    c_minus: usize,
    split: Subspace,
}

fn big_data(space: &QuadraticSpace, p: usize, rows: Vec<Vector>) -> Result<BigData> {
    let n = space.dim();
    let big = Subspace::new(n, rows.clone())?;
    let plus = big.intersect(&Subspace::coordinate(n, 0..p))?;
    let minus = big.intersect(&Subspace::coordinate(n, p..n))?;
    let split = Subspace::span(n, &[plus.basis(), minus.basis()].concat())?;
    Ok(BigData {
        sig: space.signature(&big)?,
        radical: space.radical(&big)?,
        c_plus: plus.dim(),
        c_minus: minus.dim(),
        split,
        flag_big: big,
        basis: rows,
    })
}

/// Invariants and Matsuki data of `(span{v}, V)` using the cached data of `V`.
fn line_data(
    space: &QuadraticSpace,
    p: usize,
    big: &BigData,
    v: &[ExactScalar],
) -> (FlagInvariants, MatsukiData) {
    let norm = space.norm(v);
    let sig_small = match norm.signum() {
        1 => Signature::new(1, 0, 0),
        -1 => Signature::new(0, 1, 0),
        _ => Signature::new(0, 0, 1),
    };
    let in_rad = big.radical.contains(v);
    let d_plus = v[p..].iter().all(ExactScalar::is_zero) as usize;
    let d_minus = v[..p].iter().all(ExactScalar::is_zero) as usize;
    let inv = FlagInvariants {
        sig_big: big.sig,
        sig_small,
        dim_small_cap_rad: in_rad as usize,
    };
    let m = MatsukiData {
        c_plus: big.c_plus,
        c_minus: big.c_minus,
        c_zero: big.basis.len() - big.c_plus - big.c_minus,
        d_plus,
        d_minus,
        d_zero: 1 - d_plus - d_minus,
        d_pm: big.split.contains(v) as usize,
    };
    (inv, m)
}

/// Enumerates all grid flags of type `(1, p+q−2)` in `(ℚ^{p+q}, I_{p,q})`.
pub fn enumerate_codim2_flags(p: usize, q: usize) -> Result<OracleSummary> {
    let n = p + q;
    assert!(n >= 3, "need p + q >= 3");
    let space = QuadraticSpace::standard(p, q);
    let directions = ternary_directions(n - 2);
    ternary_rref_bases(n, n - 2)
        .into_par_iter()
        .map(|rows| -> Result<OracleSummary> {
            let big = big_data(&space, p, rows)?;
            let mut summary = OracleSummary::default();
            for c in &directions {
                let v = lin_comb(c, &big.basis, n);
                let (inv, m) = line_data(&space, p, &big, &v);
                summary.flags += 1;
                summary.matsuki.insert(m);
                let slot = summary.invariants.entry(inv).or_default();
                if slot.len() < SAMPLES_PER_ORBIT {
                    slot.push(Flag::new(Subspace::new(n, vec![v])?, big.flag_big.clone())?);
                }
            }
            Ok(summary)
        })
        .try_reduce(OracleSummary::default, |a, b| Ok(a.merge(b)))
}

/// A basis of `ℚⁿ` whose first vector spans `flag.small` and whose first
/// `dim big` vectors span `flag.big`, as matrix columns.
pub fn adapted_basis(flag: &Flag) -> Mat {
    let n = flag.ambient_dim();
    let start = flag.small().basis().to_vec();
    let with_big = crate::exact::extend_independent(&start, flag.big().basis(), n);
    let all = crate::exact::extend_independent(&with_big, &Mat::identity(n).columns(), n);
    Mat::from_columns(n, &all).expect("uniform lengths")
}

/// The metric on `𝔤` that makes the standard flag `(span{e₁}, span{e₁..e_{n−2}})`
/// look like `flag` inside `(ℚ^{p+q}, I_{p,q})`: `gᵀ I_{p,q} g`.
pub fn metric_of_flag(p: usize, q: usize, flag: &Flag) -> Mat {
    Mat::standard_form(p, q).congruence(&adapted_basis(flag))
}
