//! Built-in algebras and named objects.
//!
//! * `a2`: the quiver `1 -> 2`.
//! * `kronecker`: two arrows `1 => 2`, no relations.
//! * `dualnumbers`: one vertex with a loop `x`, `x x = 0`.
//! * `sl2block`: `a: 1 -> 2`, `b: 2 -> 1` with `a b = 0`, a presentation of
//!   the principal block of category O for sl(2). Vertex 1 carries `L(0)` and
//!   vertex 2 carries `L(-2)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};
use crate::quiver::{AlgebraPresentation, Representation};
use crate::structure::{projective, simple};

pub const PRESET_NAMES: [&str; 4] = ["a2", "kronecker", "dualnumbers", "sl2block"];

/// Named objects of the sl2 block beyond the generic `S<v>` and `P<v>`:
/// the five indecomposables `L(0)`, `L(-2) = M(-2)`, `M(0) = P(0)`, `M(0)^∨`
/// and `P(-2)`.
pub const SL2_OBJECTS: [&str; 5] = ["L0", "L-2", "M0", "M0dual", "P2"];

pub fn preset_algebra(name: &str) -> Option<Arc<AlgebraPresentation>> {
    let alg = match name {
        "a2" => AlgebraPresentation::from_names(&["1", "2"], &[("a", "1", "2")], &[]),
        "kronecker" => AlgebraPresentation::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]),
        "dualnumbers" => AlgebraPresentation::from_names(&["1"], &[("x", "1", "1")], &[&[(1, &["x", "x"])]]),
        "sl2block" => AlgebraPresentation::from_names(
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1")],
            &[&[(1, &["a", "b"])]],
        ),
        _ => return None,
    };
    Some(Arc::new(alg.expect("preset presentations are valid")))
}

/// Object names available for a preset.
pub fn preset_objects(name: &str) -> Vec<String> {
    let Some(alg) = preset_algebra(name) else {
        return Vec::new();
    };
    let mut out: Vec<String> = Vec::new();
    for v in alg.vertices() {
        out.push(format!("S{v}"));
    }
    for v in alg.vertices() {
        out.push(format!("P{v}"));
    }
    if name == "sl2block" {
        for o in SL2_OBJECTS {
            if !out.iter().any(|x| x == o) {
                out.push(o.to_string());
            }
        }
    }
    out
}

/// Builds a named object of a preset over `field`.
pub fn preset_object(name: &str, object: &str, field: FieldSpec) -> Result<Representation> {
    let alg = preset_algebra(name).ok_or_else(|| Error::InvalidPresentation(format!("unknown preset `{name}`")))?;
    let unknown = || Error::InvalidPresentation(format!("preset `{name}` has no object `{object}`"));
    if name == "sl2block" {
        match object {
            "L0" => return Ok(simple(&alg, field, 0)),
            "L-2" => return Ok(simple(&alg, field, 1)),
            "M0" => return projective(&alg, field, 0),
            "M0dual" => {
                let maps = vec![Matrix::zeros(field, 1, 1), Matrix::identity(field, 1)];
                return Representation::new(alg, field, vec![1, 1], maps);
            }
            _ => {}
        }
    }
    if let Some(v) = object.strip_prefix('S') {
        let i = alg.vertex_index(v).ok_or_else(unknown)?;
        return Ok(simple(&alg, field, i));
    }
    if let Some(v) = object.strip_prefix('P') {
        let i = alg.vertex_index(v).ok_or_else(unknown)?;
        return projective(&alg, field, i);
    }
    Err(unknown())
}
