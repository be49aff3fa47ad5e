//! Orthogonal bases with rational norms, and the constructions that extend them.

use super::{Flag, QuadraticSpace, Signature, Subspace};
use crate::error::{Error, Result};
use crate::exact::{
    congruence_diagonalize, dot, kernel, lin_comb, span_rank, vec_add, vec_scale, vec_sub,
    ExactScalar, Vector,
};

/// Pairwise orthogonal vectors together with their norms `⟨v, v⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledSystem {
    pub vectors: Vec<Vector>,
    pub norms: Vec<ExactScalar>,
}

impl ScaledSystem {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Sign pattern of the norms.
    pub fn signature(&self) -> Signature {
        let pos = self.norms.iter().filter(|n| n.is_positive()).count();
        let neg = self.norms.iter().filter(|n| n.is_negative()).count();
        Signature::new(pos, neg, self.norms.len() - pos - neg)
    }

    /// Orthogonality and exact norms under `space`.
    pub fn verify(&self, space: &QuadraticSpace) -> Result<()> {
        if self.vectors.len() != self.norms.len() {
            return Err(Error::Malformed("one norm per vector expected".into()));
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != space.dim() {
                return Err(Error::Malformed("system vector has wrong length".into()));
            }
            if space.norm(v) != self.norms[i] {
                return Err(Error::Precondition(format!(
                    "vector {i} does not have the declared norm"
                )));
            }
            for (j, w) in self.vectors.iter().enumerate().skip(i + 1) {
                if !space.form(v, w).is_zero() {
                    return Err(Error::Precondition(format!(
                        "vectors {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Norms must run positive, then negative, then zero.
    fn check_order(&self) -> Result<()> {
        let rank = |n: &ExactScalar| match n.signum() {
            1 => 0,
            -1 => 1,
            _ => 2,
        };
        if self.norms.windows(2).all(|w| rank(&w[0]) <= rank(&w[1])) {
            Ok(())
        } else {
            Err(Error::Precondition(
                "system is not ordered positive, negative, null".into(),
            ))
        }
    }

    fn part(&self, sign: i32) -> Vec<Vector> {
        self.vectors
            .iter()
            .zip(&self.norms)
            .filter(|(_, n)| n.signum() == sign)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

fn first_nonzero(v: &[ExactScalar]) -> usize {
    v.iter().position(|x| !x.is_zero()).unwrap_or(v.len())
}

/// Orthogonal basis of `w`: positive norms first, then negative, then the radical.
pub fn scaled_system(space: &QuadraticSpace, w: &Subspace) -> Result<ScaledSystem> {
    let restricted = space.restrict(w)?;
    let diag = congruence_diagonalize(&restricted)?;
    let mut entries: Vec<(Vector, ExactScalar)> = diag
        .transform
        .columns()
        .iter()
        .zip(diag.diagonal)
        .map(|(c, d)| (lin_comb(c, w.basis(), space.dim()), d))
        .collect();
    entries.sort_by_key(|(v, d)| {
        let group = match d.signum() {
            1 => 0,
            -1 => 1,
            _ => 2,
        };
        (group, first_nonzero(v))
    });
    let (vectors, norms) = entries.into_iter().unzip();
    Ok(ScaledSystem { vectors, norms })
}

/// Basis of `{x ∈ container | x · s = 0 for s ∈ start}` (Euclidean dot product),
/// Euclidean-orthogonalized and rescaled to roughly unit length.
fn euclidean_complement(start: &[Vector], container: &Subspace) -> Result<Vec<Vector>> {
    let n = container.ambient_dim();
    let b = container.basis();
    let rows: Vec<Vector> = start
        .iter()
        .map(|s| b.iter().map(|bj| dot(s, bj)).collect())
        .collect();
    let coeffs = if rows.is_empty() {
        crate::exact::Mat::identity(b.len()).columns()
    } else {
        kernel(&crate::exact::Mat::from_rows(rows)?)
    };
    let raw: Vec<Vector> = coeffs.iter().map(|c| lin_comb(c, b, n)).collect();
    Ok(euclidean_orthogonalize(&raw))
}

fn euclidean_orthogonalize(vs: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut u = v.clone();
        for w in &out {
            u = vec_sub(&u, &vec_scale(w, &(&dot(v, w) / &dot(w, w))));
        }
        out.push(balanced(&u));
    }
    out
}

fn approx(x: f64) -> ExactScalar {
    const DEN: i64 = 1 << 24;
    ExactScalar::new((x * DEN as f64).round() as i64, DEN)
}

/// Like [`scaled_system`], but picks vectors that are close to Euclidean-orthogonal:
/// rounded eigenvectors of the restricted form, made exactly orthogonal afterwards.
/// Frames built this way keep floating-point isometries well conditioned.
pub(crate) fn conditioned_system(space: &QuadraticSpace, w: &Subspace) -> Result<ScaledSystem> {
    let n = space.dim();
    let rad = space.radical(w)?;
    let nulls = euclidean_orthogonalize(rad.basis());
    let rest = Subspace::new(n, euclidean_complement(rad.basis(), w)?)?;
    let fallback = || scaled_system(space, w);
    let mut entries: Vec<(Vector, ExactScalar)> = Vec::new();
    if rest.dim() > 0 {
        let b = rest.basis_matrix().to_f64();
        let (q, r) = b.qr().unpack();
        let m = q.transpose() * space.gram().to_f64() * &q;
        let eig = m.symmetric_eigen();
        let Some(r_inv) = r.try_inverse() else {
            return fallback();
        };
        let c = r_inv * eig.eigenvectors;
        let mut done: Vec<(Vector, ExactScalar)> = Vec::new();
        for col in c.column_iter() {
            let top = col.amax();
            let coeffs: Vector = col.iter().map(|x| approx(x / top)).collect();
            let mut u = lin_comb(&coeffs, rest.basis(), n);
            let orig = u.clone();
            for (v, d) in &done {
                u = vec_sub(&u, &vec_scale(v, &(&space.form(&orig, v) / d)));
            }
            let d = space.norm(&u);
            if d.is_zero() {
                return fallback();
            }
            done.push((u, d));
        }
        entries = done;
    }
    entries.sort_by_key(|(_, d)| if d.is_positive() { 0 } else { 1 });
    entries.extend(nulls.into_iter().map(|z| (z, ExactScalar::zero())));
    let (vectors, norms) = entries.into_iter().unzip();
    Ok(ScaledSystem { vectors, norms })
}

/// Splits a null vector `v ∉ rad V` as `v = v⁺ + v⁻` with `⟨v⁺,v⁺⟩ = 1`, `⟨v⁻,v⁻⟩ = −1`.
pub fn lightlike_split(
    space: &QuadraticSpace,
    v_space: &Subspace,
    v: &[ExactScalar],
) -> Result<(Vector, Vector)> {
    if v.len() != space.dim() || v_space.ambient_dim() != space.dim() {
        return Err(Error::Malformed(
            "vector and space dimensions differ".into(),
        ));
    }
    if v.iter().all(ExactScalar::is_zero) {
        return Err(Error::Precondition("zero vector".into()));
    }
    if !v_space.contains(v) {
        return Err(Error::Precondition("vector is not in the subspace".into()));
    }
    if !space.norm(v).is_zero() {
        return Err(Error::Precondition("vector is not null".into()));
    }
    let gv = space.gram().mul_vec(v);
    if v_space
        .basis()
        .iter()
        .all(|b| crate::exact::dot(&gv, b).is_zero())
    {
        return Err(Error::Precondition("vector lies in the radical".into()));
    }
    let w = &partner(space, v_space, v);
    let vw = crate::exact::dot(&gv, w);
    let shift = &space.norm(w) / &(&vw * &ExactScalar::from_i64(2));
    // w' is null with ⟨v, w'⟩ = ⟨v, w⟩; rescale so that ⟨v, w''⟩ = 1.
    let w1 = vec_sub(w, &vec_scale(v, &shift));
    let w2 = vec_scale(&w1, &vw.recip().expect("nonzero"));
    let half = vec_scale(v, &crate::exact::q(1, 2));
    Ok((vec_add(&half, &w2), vec_sub(&half, &w2)))
}

/// The shortest (Euclidean) `w ∈ V` with `⟨v, w⟩` a fixed positive multiple: the
/// Euclidean projection of `Gv` onto `V`, which pairs with `v` to `|proj|²`.
/// Short partners keep the split, and any isometry built from it, well conditioned.
fn partner(space: &QuadraticSpace, v_space: &Subspace, v: &[ExactScalar]) -> Vector {
    let b = v_space.basis();
    let gv = space.gram().mul_vec(v);
    let gram_e = crate::exact::Mat::from_rows(
        b.iter()
            .map(|bi| b.iter().map(|bj| dot(bi, bj)).collect())
            .collect(),
    )
    .expect("square");
    let rhs: Vector = b.iter().map(|bi| dot(bi, &gv)).collect();
    let coeffs =
        crate::exact::solve(&gram_e, &rhs).expect("Euclidean Gram matrix of a basis is invertible");
    lin_comb(&coeffs, b, space.dim())
}

/// `v` rescaled by a rational close to `1/|v|`.
fn balanced(v: &[ExactScalar]) -> Vector {
    let len = euclidean_len(v);
    let den = (len * 64.0).round().max(1.0) as i64;
    vec_scale(v, &ExactScalar::new(64, den))
}

fn check_nulls(space: &QuadraticSpace, container: &Subspace, nulls: &[Vector]) -> Result<()> {
    if nulls.iter().any(|v| v.len() != space.dim()) {
        return Err(Error::Malformed("null vector has wrong length".into()));
    }
    if span_rank(nulls, space.dim()) != nulls.len() {
        return Err(Error::Precondition(
            "null vectors are linearly dependent".into(),
        ));
    }
    for (i, v) in nulls.iter().enumerate() {
        if !container.contains(v) {
            return Err(Error::Precondition(format!(
                "null vector {i} is outside the subspace"
            )));
        }
        for w in &nulls[i..] {
            if !space.form(v, w).is_zero() {
                return Err(Error::Precondition(
                    "null vectors must be null and pairwise orthogonal".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Full system of `container` (nondegenerate) with `nulls[i] = xᵢ + yᵢ`.
fn extend_nullsystem_within(
    space: &QuadraticSpace,
    container: &Subspace,
    nulls: &[Vector],
) -> Result<ScaledSystem> {
    check_nulls(space, container, nulls)?;
    if space.signature(container)?.nul != 0 {
        return Err(Error::Precondition("ambient form is degenerate".into()));
    }
    let mut current = container.clone();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, v) in nulls.iter().enumerate() {
        let local = space.orthogonal_within(&current, &nulls[i + 1..])?;
        let (x, y) = lightlike_split(space, &local, v)?;
        current = space.orthogonal_within(&current, &[x.clone(), y.clone()])?;
        xs.push(x);
        ys.push(y);
    }
    let rest = conditioned_system(space, &current)?;
    let one = ExactScalar::one();
    let mut vectors = xs;
    let mut norms = vec![one.clone(); vectors.len()];
    vectors.extend(rest.part(1));
    norms.extend(rest.norms.iter().filter(|n| n.is_positive()).cloned());
    vectors.extend(ys);
    norms.resize(vectors.len(), -&one);
    vectors.extend(rest.part(-1));
    norms.extend(rest.norms.iter().filter(|n| n.is_negative()).cloned());
    Ok(ScaledSystem { vectors, norms })
}

/// Positive vectors `x₁..x_p` and negative `y₁..y_q` of a nondegenerate space with
/// `nulls[i] = xᵢ + yᵢ` for each given null vector.
pub fn extend_nullsystem(space: &QuadraticSpace, nulls: &[Vector]) -> Result<ScaledSystem> {
    if !space.is_nondegenerate() {
        return Err(Error::Precondition("ambient form is degenerate".into()));
    }
    extend_nullsystem_within(space, &Subspace::full(space.dim()), nulls)
}

/// Extends a system of `w` to one of `container`, where the form on `container`
/// may be degenerate. Null vectors of the system lying in `rad(container)` must
/// come last.
pub(crate) fn extend_basis_within(
    space: &QuadraticSpace,
    container: &Subspace,
    w: &Subspace,
    system: &ScaledSystem,
) -> Result<ScaledSystem> {
    let n = space.dim();
    if w.ambient_dim() != n || container.ambient_dim() != n {
        return Err(Error::Malformed(
            "subspace and space dimensions differ".into(),
        ));
    }
    if !container.contains_subspace(w) {
        return Err(Error::Precondition(
            "subspace is not inside the container".into(),
        ));
    }
    system.verify(space)?;
    system.check_order()?;
    if system.len() != w.dim() || system.vectors.iter().any(|v| !w.contains(v)) {
        return Err(Error::Precondition(
            "system is not a basis of the subspace".into(),
        ));
    }

    let x = system.part(1);
    let y = system.part(-1);
    let nulls = system.part(0);
    let split = nulls
        .iter()
        .position(|z| space.is_orthogonal_to(z, container))
        .unwrap_or(nulls.len());
    if nulls[split..]
        .iter()
        .any(|z| !space.is_orthogonal_to(z, container))
    {
        return Err(Error::Precondition(
            "null vectors in the ambient radical must be listed last".into(),
        ));
    }
    let (z_free, z_rad) = nulls.split_at(split);

    let rad = space.radical(container)?;
    let core: Vec<Vector> = [x.as_slice(), y.as_slice(), z_free].concat();
    let with_rad: Vec<Vector> = [core.as_slice(), rad.basis()].concat();
    if span_rank(&with_rad, n) != with_rad.len() {
        return Err(Error::Precondition(
            "null vectors are not adapted to the ambient radical".into(),
        ));
    }
    let grown = euclidean_complement(&with_rad, container)?;
    let complement: Vec<Vector> = [core.as_slice(), &grown].concat();
    let u = Subspace::new(n, complement)?;
    let xy: Vec<Vector> = [x.as_slice(), y.as_slice()].concat();
    let y_space = space.orthogonal_within(&u, &xy)?;
    let inner = extend_nullsystem_within(space, &y_space, z_free)?;

    let gamma = [z_rad, &euclidean_complement(z_rad, &rad)?].concat();
    let mut vectors = x.clone();
    let mut norms: Vec<ExactScalar> = system
        .norms
        .iter()
        .filter(|n| n.is_positive())
        .cloned()
        .collect();
    vectors.extend(inner.part(1));
    norms.extend(inner.norms.iter().filter(|n| n.is_positive()).cloned());
    vectors.extend(y);
    norms.extend(system.norms.iter().filter(|n| n.is_negative()).cloned());
    vectors.extend(inner.part(-1));
    norms.extend(inner.norms.iter().filter(|n| n.is_negative()).cloned());
    norms.resize(vectors.len() + gamma.len(), ExactScalar::zero());
    vectors.extend(gamma);
    Ok(ScaledSystem { vectors, norms })
}

/// Extends a system of `w` to a system of the whole space: positives of `w`
/// stay leading positives, negatives stay leading negatives, each null vector
/// outside the ambient radical becomes `αᵢ + βᵢ`, and ambient-radical nulls
/// lead the null block.
pub fn extend_basis(
    space: &QuadraticSpace,
    w: &Subspace,
    system: &ScaledSystem,
) -> Result<ScaledSystem> {
    extend_basis_within(space, &Subspace::full(space.dim()), w, system)
}

/// A system of the whole (nondegenerate) space adapted to the flag. Two flags with
/// equal invariants get frames of identical layout.
pub(crate) fn adapted_frame(space: &QuadraticSpace, flag: &Flag) -> Result<ScaledSystem> {
    if !space.is_nondegenerate() {
        return Err(Error::Precondition("ambient form is degenerate".into()));
    }
    let n = space.dim();
    let (small, big) = (flag.small(), flag.big());
    let rad_small = space.radical(small)?;
    let rad_big = space.radical(big)?;
    let shared = rad_small.intersect(&rad_big)?;
    let free_nulls = euclidean_complement(shared.basis(), &rad_small)?;

    let base = conditioned_system(space, small)?;
    let mut vectors: Vec<Vector> = base
        .vectors
        .iter()
        .zip(&base.norms)
        .filter(|(_, d)| !d.is_zero())
        .map(|(v, _)| v.clone())
        .collect();
    let mut norms: Vec<ExactScalar> = base
        .norms
        .iter()
        .filter(|d| !d.is_zero())
        .cloned()
        .collect();
    vectors.extend(free_nulls);
    vectors.extend(euclidean_orthogonalize(shared.basis()));
    norms.resize(vectors.len(), ExactScalar::zero());
    let small_sys = ScaledSystem { vectors, norms };

    let big_sys = balanced_extension(space, big, small, small_sys)?;
    balanced_extension(space, &Subspace::full(n), big, big_sys)
}

/// [`extend_basis_within`], run twice: the split `z = x + y` of a null vector
/// has `x − y` scaling like `1/|z|`, so each `z` that gets split is rescaled
/// until `|z|` and `|x − y|` are comparable.
fn balanced_extension(
    space: &QuadraticSpace,
    container: &Subspace,
    w: &Subspace,
    mut system: ScaledSystem,
) -> Result<ScaledSystem> {
    let first = extend_basis_within(space, container, w, &system)?;
    let mut changed = false;
    for (z, norm) in system.vectors.iter_mut().zip(&system.norms) {
        if !norm.is_zero() {
            continue;
        }
        let Some(diff) = split_difference(&first, z) else {
            continue;
        };
        let ratio = (euclidean_len(&diff) / euclidean_len(z)).sqrt();
        if (0.5..2.0).contains(&ratio) {
            continue;
        }
        *z = vec_scale(z, &approx_coarse(ratio));
        changed = true;
    }
    if changed {
        extend_basis_within(space, container, w, &system)
    } else {
        Ok(first)
    }
}

/// `x − y` for the pair of `system` with norms `±1` and `x + y = z`.
fn split_difference(system: &ScaledSystem, z: &[ExactScalar]) -> Option<Vector> {
    let one = ExactScalar::one();
    let (xs, ys): (Vec<_>, Vec<_>) = (system.part(1), system.part(-1));
    let unit = |v: &Vector| space_norm_is(system, v, &one);
    for x in xs.iter().filter(|v| unit(v)) {
        let y = vec_sub(z, x);
        if ys.contains(&y) && space_norm_is(system, &y, &-&one) {
            return Some(vec_sub(x, &y));
        }
    }
    None
}

fn space_norm_is(system: &ScaledSystem, v: &Vector, norm: &ExactScalar) -> bool {
    system
        .vectors
        .iter()
        .zip(&system.norms)
        .any(|(u, n)| u == v && n == norm)
}

fn euclidean_len(v: &[ExactScalar]) -> f64 {
    v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
}

/// A rational with a few significant bits, close to `x > 0`.
fn approx_coarse(x: f64) -> ExactScalar {
    let exp = x.log2().floor() as i32;
    let scale = 2f64.powi(5 - exp);
    let num = (x * scale).round() as i64;
    if exp <= 5 {
        ExactScalar::new(num, 1 << (5 - exp))
    } else {
        &ExactScalar::from_i64(num) * &ExactScalar::from_i64(1 << (exp - 5))
    }
}
