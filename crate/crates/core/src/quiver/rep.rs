use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ktheory::GClass;
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::quiver::{AlgebraPresentation, Subrepresentation};

/// A finite-dimensional representation: one space per vertex, one matrix
/// per arrow (`dims[target] x dims[source]`), satisfying every relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    algebra: Arc<AlgebraPresentation>,
    field: FieldSpec,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        field: FieldSpec,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        let rep = Representation {
            algebra,
            field,
            dims,
            maps,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Constructor for maps that satisfy the relations by construction.
    pub(crate) fn trusted(
        algebra: Arc<AlgebraPresentation>,
        field: FieldSpec,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Self {
        let rep = Representation {
            algebra,
            field,
            dims,
            maps,
        };
        debug_assert_eq!(rep.validate(), Ok(()));
        rep
    }

    /// Skips relation checking entirely; callers validate afterwards.
    pub(crate) fn unvalidated(
        algebra: Arc<AlgebraPresentation>,
        field: FieldSpec,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Self {
        Representation {
            algebra,
            field,
            dims,
            maps,
        }
    }

    pub fn zero(algebra: Arc<AlgebraPresentation>, field: FieldSpec) -> Self {
        let dims = vec![0; algebra.vertex_count()];
        let maps = vec![Matrix::zeros(field, 0, 0); algebra.arrows().len()];
        Representation::trusted(algebra, field, dims, maps)
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The dimension vector, which is the G-theory class for admissible
    /// presentations.
    pub fn dim_vector(&self) -> GClass {
        GClass::new(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Checks shapes, field membership and that every relation evaluates to zero.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        if self.dims.len() != alg.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} vertices",
                self.dims.len(),
                alg.vertex_count()
            )));
        }
        if self.maps.len() != alg.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for {} arrows",
                self.maps.len(),
                alg.arrows().len()
            )));
        }
        for (m, a) in self.maps.iter().zip(alg.arrows()) {
            if m.shape() != (self.dims[a.target], self.dims[a.source]) {
                return Err(Error::ShapeMismatch(format!(
                    "map for arrow `{}` is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    self.dims[a.target],
                    self.dims[a.source]
                )));
            }
            if m.field() != self.field {
                return Err(Error::FieldMismatch(format!(
                    "map for arrow `{}` is over {}, representation over {}",
                    a.name,
                    m.field(),
                    self.field
                )));
            }
        }
        for (ri, rel) in alg.relations().iter().enumerate() {
            let (s, t) = alg.word_ends(&rel.terms[0].word);
            let mut total = Matrix::zeros(self.field, self.dims[t], self.dims[s]);
            for term in &rel.terms {
                let c = self.field.from_rational(&term.coeff)?;
                total = total.add(&self.word_matrix(&term.word).scale(&c));
            }
            if !total.is_zero() {
                return Err(Error::RelationViolated {
                    relation: ri,
                    from: alg.vertices()[s].clone(),
                    to: alg.vertices()[t].clone(),
                });
            }
        }
        Ok(())
    }

    /// The matrix of a composable word, `V_{a_k} ... V_{a_1}`.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        let (s, _) = self.algebra.word_ends(word);
        let mut m = Matrix::identity(self.field, self.dims[s]);
        for &a in word {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_compatible(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Representation::trusted(self.algebra.clone(), self.field, dims, maps))
    }

    /// Conjugates by a basis change `g_i` at every vertex: the new map for
    /// `a: i -> j` is `g_j V_a g_i^{-1}`. The matrices must be invertible.
    pub fn change_basis(&self, g: &[Matrix]) -> Result<Representation> {
        if g.len() != self.dims.len() {
            return Err(Error::ShapeMismatch("one basis change per vertex required".into()));
        }
        let mut inverses = Vec::with_capacity(g.len());
        for (i, gi) in g.iter().enumerate() {
            if gi.shape() != (self.dims[i], self.dims[i]) || !gi.is_invertible() {
                return Err(Error::ShapeMismatch(format!("basis change at vertex {i} is not invertible")));
            }
            inverses.push(inverse(gi));
        }
        let maps = self
            .algebra
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m).mul(&inverses[a.source]))
            .collect();
        Ok(Representation::trusted(self.algebra.clone(), self.field, self.dims.clone(), maps))
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }
}

/// Inverse of an invertible square matrix via `[m | I]` elimination.
pub(crate) fn inverse(m: &Matrix) -> Matrix {
    let f = m.field();
    let n = m.rows();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|c| {
            let mut e = vec![f.zero(); n];
            e[c] = f.one();
            m.solve(&e).unwrap().expect("invertible")
        })
        .collect();
    Matrix::from_columns(f, n, &cols)
}

/// A morphism of representations: one matrix per vertex, intertwining all
/// arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.check_compatible(&target)?;
        let f = Morphism {
            source,
            target,
            maps,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn trusted(source: Representation, target: Representation, maps: Vec<Matrix>) -> Self {
        let f = Morphism {
            source,
            target,
            maps,
        };
        debug_assert_eq!(f.validate(), Ok(()));
        f
    }

    pub fn identity(v: &Representation) -> Self {
        let maps = v.dims.iter().map(|&d| Matrix::identity(v.field, d)).collect();
        Morphism::trusted(v.clone(), v.clone(), maps)
    }

    pub fn zero(v: &Representation, w: &Representation) -> Result<Self> {
        v.check_compatible(w)?;
        let maps = v.dims.iter().zip(&w.dims).map(|(&a, &b)| Matrix::zeros(v.field, b, a)).collect();
        Ok(Morphism::trusted(v.clone(), w.clone(), maps))
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn validate(&self) -> Result<()> {
        let (v, w) = (&self.source, &self.target);
        if self.maps.len() != v.dims.len() {
            return Err(Error::ShapeMismatch("one matrix per vertex required".into()));
        }
        for (i, m) in self.maps.iter().enumerate() {
            if m.shape() != (w.dims[i], v.dims[i]) {
                return Err(Error::ShapeMismatch(format!("vertex map {i} has the wrong shape")));
            }
        }
        for (ai, a) in v.algebra.arrows().iter().enumerate() {
            let lhs = w.maps[ai].mul(&self.maps[a.source]);
            let rhs = self.maps[a.target].mul(&v.maps[ai]);
            if lhs != rhs {
                return Err(Error::NotAMorphism(a.name.clone()));
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.target != other.source {
            return Err(Error::ShapeMismatch("morphisms do not compose".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| g.mul(f)).collect();
        Ok(Morphism::trusted(self.source.clone(), other.target.clone(), maps))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Whether every vertex map is surjective.
    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }
}

/// A basis of `Hom(V, W)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
    pub dim: usize,
}

/// Basis of the solution space of the intertwining equations, as raw
/// per-vertex matrices. Cheaper than [`hom_space`] when only the maps matter.
pub fn hom_basis(v: &Representation, w: &Representation) -> Result<Vec<Vec<Matrix>>> {
    v.check_compatible(w)?;
    let f = v.field;
    let n = v.dims.len();
    let mut offsets = Vec::with_capacity(n);
    let mut unknowns = 0usize;
    for i in 0..n {
        offsets.push(unknowns);
        unknowns += w.dims[i] * v.dims[i];
    }
    // Unknown f_i is w_i x v_i, row-major from offsets[i].
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * v.dims[i] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (ai, a) in v.algebra.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (wa, va) = (&w.maps[ai], &v.maps[ai]);
        // (W_a f_i - f_j V_a)[r, c] = 0
        for r in 0..w.dims[j] {
            for c in 0..v.dims[i] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..w.dims[i] {
                    let idx = var(i, k, c);
                    row[idx] = f.add(&row[idx], &wa[(r, k)]);
                }
                for k in 0..v.dims[j] {
                    let idx = var(j, r, k);
                    row[idx] = f.sub(&row[idx], &va[(k, c)]);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(f, unknowns, &rows);
    Ok(system
        .nullspace_basis()
        .into_iter()
        .map(|x| {
            (0..n)
                .map(|i| {
                    let data = x[offsets[i]..offsets[i] + w.dims[i] * v.dims[i]].to_vec();
                    Matrix::new(f, w.dims[i], v.dims[i], data).expect("shape")
                })
                .collect()
        })
        .collect())
}

pub fn hom_space(v: &Representation, w: &Representation) -> Result<HomSpace> {
    let basis: Vec<Morphism> = hom_basis(v, w)?
        .into_iter()
        .map(|maps| Morphism::trusted(v.clone(), w.clone(), maps))
        .collect();
    let dim = basis.len();
    Ok(HomSpace { basis, dim })
}

/// Kernel of `f` as a subrepresentation of its source, with the inclusion.
pub fn kernel(f: &Morphism) -> (Subrepresentation, Morphism) {
    let v = &f.source;
    let spaces = f
        .maps
        .iter()
        .zip(&v.dims)
        .map(|(m, &d)| Subspace::from_vectors(v.field, d, &m.nullspace_basis()))
        .collect();
    let sub = Subrepresentation::from_spaces_unchecked(spaces);
    debug_assert!(sub.is_closed_in(v));
    let (_, inclusion) = restrict(v, &sub);
    (sub, inclusion)
}

/// Image of `f` as a subrepresentation of its target.
pub fn image(f: &Morphism) -> Subrepresentation {
    let w = &f.target;
    let spaces = f
        .maps
        .iter()
        .zip(&w.dims)
        .map(|(m, &d)| {
            let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|c| m.column(c)).collect();
            Subspace::from_vectors(w.field, d, &cols)
        })
        .collect();
    let sub = Subrepresentation::from_spaces_unchecked(spaces);
    debug_assert!(sub.is_closed_in(w));
    sub
}

/// The subrepresentation `E` as a representation in its own right, using
/// the canonical basis of each `E_i`, together with the inclusion `E -> V`.
pub fn restrict(v: &Representation, e: &Subrepresentation) -> (Representation, Morphism) {
    let f = v.field;
    let dims: Vec<usize> = e.dims();
    let maps = v
        .algebra
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let src = e.space(a.source);
            let tgt = e.space(a.target);
            let cols: Vec<Vec<Scalar>> = src
                .basis_vectors()
                .iter()
                .map(|b| tgt.coordinates(&v.maps[ai].mul_vec(b)))
                .collect();
            Matrix::from_columns(f, tgt.dim(), &cols)
        })
        .collect();
    let sub_rep = Representation::trusted(v.algebra.clone(), f, dims, maps);
    let incl = (0..v.dims.len()).map(|i| e.space(i).basis_rows().transpose()).collect();
    let inclusion = Morphism::trusted(sub_rep.clone(), v.clone(), incl);
    (sub_rep, inclusion)
}

/// The quotient `V / E` with its projection. The quotient basis at vertex
/// `i` is indexed by the non-pivot columns of `E_i`.
pub fn quotient(v: &Representation, e: &Subrepresentation) -> Result<(Representation, Morphism)> {
    if e.dims().len() != v.dims.len() || !e.is_closed_in(v) {
        return Err(Error::NotASubrep("subspaces are not closed under the arrows".into()));
    }
    let f = v.field;
    let proj: Vec<Matrix> = (0..v.dims.len())
        .map(|i| {
            let space = e.space(i);
            let free = space.free_columns();
            let rows: Vec<Vec<Scalar>> = (0..v.dims[i])
                .map(|c| {
                    let mut unit = vec![f.zero(); v.dims[i]];
                    unit[c] = f.one();
                    let r = space.reduce(&unit);
                    free.iter().map(|&k| r[k].clone()).collect()
                })
                .collect();
            // rows[c] is the image of the c-th unit vector; transpose to q x d.
            Matrix::from_rows(f, free.len(), &rows).transpose()
        })
        .collect();
    let sections: Vec<Matrix> = (0..v.dims.len())
        .map(|i| {
            let free = e.space(i).free_columns();
            let cols: Vec<Vec<Scalar>> = free
                .iter()
                .map(|&k| {
                    let mut unit = vec![f.zero(); v.dims[i]];
                    unit[k] = f.one();
                    unit
                })
                .collect();
            Matrix::from_columns(f, v.dims[i], &cols)
        })
        .collect();
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = v
        .algebra
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| proj[a.target].mul(&v.maps[ai]).mul(&sections[a.source]))
        .collect();
    let q = Representation::trusted(v.algebra.clone(), f, dims, maps);
    let projection = Morphism::trusted(v.clone(), q.clone(), proj);
    Ok((q, projection))
}

/// `outer / inner` for nested subrepresentations `inner ⊂ outer ⊂ V`.
pub fn subquotient(
    v: &Representation,
    outer: &Subrepresentation,
    inner: &Subrepresentation,
) -> Result<Representation> {
    if !outer.contains(inner) {
        return Err(Error::NotASubrep("inner subrepresentation is not contained in outer".into()));
    }
    let (outer_rep, _) = restrict(v, outer);
    let spaces = (0..v.dims.len())
        .map(|i| {
            let coords: Vec<Vec<Scalar>> = inner
                .space(i)
                .basis_vectors()
                .iter()
                .map(|b| outer.space(i).coordinates(b))
                .collect();
            Subspace::from_vectors(v.field, outer.space(i).dim(), &coords)
        })
        .collect();
    let inner_in_outer = Subrepresentation::from_spaces_unchecked(spaces);
    Ok(quotient(&outer_rep, &inner_in_outer)?.0)
}
