//! Simples, indecomposable projectives, radical and socle, Jordan–Hölder
//! filtrations and semisimplification.
//!
//! Relations are admissible, so the simples are exactly the one-dimensional
//! vertex representations and `P_i` has a basis of path classes starting at
//! `i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ktheory::GClass;
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::quiver::{hom_basis, AlgebraPresentation, Path, Representation, Subrepresentation};

/// The simple representation `S_i`.
pub fn simple(algebra: &Arc<AlgebraPresentation>, field: FieldSpec, vertex: usize) -> Representation {
    let n = algebra.vertex_count();
    let mut dims = vec![0; n];
    dims[vertex] = 1;
    let maps = algebra
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
        .collect();
    Representation::new(algebra.clone(), field, dims, maps).expect("vertex simple satisfies admissible relations")
}

pub fn simples(algebra: &Arc<AlgebraPresentation>, field: FieldSpec) -> Vec<Representation> {
    (0..algebra.vertex_count()).map(|i| simple(algebra, field, i)).collect()
}

/// The indecomposable projective `P_i`: basis = path classes starting at
/// `i`, arrows acting by appending to the path.
pub fn projective(algebra: &Arc<AlgebraPresentation>, field: FieldSpec, vertex: usize) -> Result<Representation> {
    let basis = algebra.path_basis(field)?;
    let n = algebra.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| basis.paths(vertex, j).len()).collect();
    let maps = algebra
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let cols: Vec<Vec<Scalar>> = basis
                .paths(vertex, a.source)
                .iter()
                .map(|p| {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let ext = Path {
                        source: vertex,
                        arrows,
                    };
                    basis.normal_form(&ext, a.target)
                })
                .collect();
            Matrix::from_columns(field, dims[a.target], &cols)
        })
        .collect();
    Representation::new(algebra.clone(), field, dims, maps)
}

/// `rad V`: at each vertex, the span of the images of all incoming arrows.
pub fn radical(v: &Representation) -> Subrepresentation {
    radical_of(v, &Subrepresentation::full(v))
}

/// `J * E` for a subrepresentation `E` of `v`.
fn radical_of(v: &Representation, e: &Subrepresentation) -> Subrepresentation {
    let f = v.field();
    let mut gens: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); v.dims().len()];
    for (ai, a) in v.algebra().arrows().iter().enumerate() {
        for b in e.space(a.source).basis_vectors() {
            gens[a.target].push(v.map(ai).mul_vec(&b));
        }
    }
    let spaces = gens
        .iter()
        .zip(v.dims())
        .map(|(g, &d)| Subspace::from_vectors(f, d, g))
        .collect();
    Subrepresentation::from_spaces(v, spaces).expect("J E is a subrepresentation")
}

/// `soc V`: at each vertex, the common kernel of all outgoing arrows.
pub fn socle(v: &Representation) -> Subrepresentation {
    let f = v.field();
    let spaces = (0..v.dims().len())
        .map(|i| {
            let outgoing: Vec<&Matrix> = v
                .algebra()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == i)
                .map(|(ai, _)| v.map(ai))
                .collect();
            let mut stacked = Matrix::zeros(f, 0, v.dims()[i]);
            for m in outgoing {
                stacked = stacked.vstack(m);
            }
            Subspace::from_vectors(f, v.dims()[i], &stacked.nullspace_basis())
        })
        .collect();
    Subrepresentation::from_spaces(v, spaces).expect("socle is a subrepresentation")
}

/// A composition series `0 = V_0 ⊂ ... ⊂ V_n = V` with simple factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanHolderData {
    /// `length + 1` subrepresentations, from zero to the whole object.
    pub chain: Vec<Subrepresentation>,
    /// Vertex of the simple factor `V_k / V_{k-1}`, for `k = 1..=length`.
    pub factors: Vec<usize>,
    pub length: usize,
}

/// Refines the radical series: each semisimple layer `J^k V / J^{k+1} V` is
/// split into lines, vertex by vertex in index order and basis vectors in
/// canonical order.
pub fn jordan_holder(v: &Representation) -> JordanHolderData {
    let f = v.field();
    let mut series = vec![Subrepresentation::full(v)];
    while !series.last().unwrap().is_zero() {
        let next = radical_of(v, series.last().unwrap());
        series.push(next);
    }
    let mut current = series.pop().unwrap();
    let mut chain = vec![current.clone()];
    let mut factors = Vec::new();
    while let Some(layer) = series.pop() {
        for i in 0..v.dims().len() {
            for b in layer.space(i).basis_vectors() {
                if current.space(i).contains(&b) {
                    continue;
                }
                let mut spaces = current.spaces().to_vec();
                let mut gens = spaces[i].basis_vectors();
                gens.push(b);
                spaces[i] = Subspace::from_vectors(f, v.dims()[i], &gens);
                current = Subrepresentation::from_spaces(v, spaces).expect("layer refinement is a subrepresentation");
                chain.push(current.clone());
                factors.push(i);
            }
        }
        debug_assert_eq!(current, layer);
    }
    let length = factors.len();
    JordanHolderData { chain, factors, length }
}

/// `gr V` as a G-class: multiplicities of the Jordan–Hölder factors.
pub fn gr(v: &Representation) -> GClass {
    let mut counts = vec![0i64; v.dims().len()];
    for i in jordan_holder(v).factors {
        counts[i] += 1;
    }
    GClass::new(counts)
}

pub fn length(v: &Representation) -> usize {
    jordan_holder(v).length
}

pub fn is_semisimple(v: &Representation) -> bool {
    radical(v).is_zero()
}

/// `dim End(S_i)`.
pub fn endomorphism_dim(algebra: &Arc<AlgebraPresentation>, field: FieldSpec, vertex: usize) -> Result<usize> {
    let s = simple(algebra, field, vertex);
    Ok(hom_basis(&s, &s)?.len())
}

/// `⊕_i S_i^{alpha_i}`, the semisimple object of class `alpha`.
pub fn semisimple_of_class(
    algebra: &Arc<AlgebraPresentation>,
    field: FieldSpec,
    alpha: &GClass,
) -> Result<Representation> {
    if alpha.len() != algebra.vertex_count() {
        return Err(Error::IndexMismatch {
            expected: algebra.vertex_count(),
            actual: alpha.len(),
        });
    }
    if !alpha.is_effective() {
        return Err(Error::NegativeClass);
    }
    let dims: Vec<usize> = alpha.coeffs().iter().map(|&c| c as usize).collect();
    let maps = algebra
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
        .collect();
    Representation::new(algebra.clone(), field, dims, maps)
}
