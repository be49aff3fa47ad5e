//! Flags on the command line: `"1,0,1,0;0,1,0,1"` lists spanning vectors, the
//! first `small` of which span the small subspace.

use heisenflag::exact::{ExactScalar, Vector};
use heisenflag::forms::Flag;

pub fn parse_vectors(spec: &str) -> Result<Vec<Vector>, String> {
    spec.split(';')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<ExactScalar>()
                        .map_err(|_| format!("bad rational {:?} in {v:?}", x.trim()))
                })
                .collect()
        })
        .collect()
}

pub fn parse_flag(spec: &str, dim: usize, small: usize) -> Result<Flag, String> {
    let vectors = parse_vectors(spec)?;
    if vectors.is_empty() {
        return Err(format!("flag {spec:?} has no vectors"));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(format!(
            "vector of length {} in {spec:?}, expected {dim}",
            v.len()
        ));
    }
    if small == 0 || small >= vectors.len() {
        return Err(format!(
            "flag {spec:?} needs more than {small} vectors to have a proper small subspace"
        ));
    }
    Flag::from_vectors(dim, &vectors, small).map_err(|e| format!("flag {spec:?}: {e}"))
}
