use crate::error::{Error, Result};
use crate::ktheory::GClass;
use crate::linalg::{Scalar, Subspace};
use crate::quiver::Representation;

/// A subrepresentation, stored as one canonical subspace per vertex.
///
/// The ambient representation is not stored; operations take it as an
/// argument. Equality is equality of the underlying subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subrepresentation {
    spaces: Vec<Subspace>,
}

impl Subrepresentation {
    pub fn zero(v: &Representation) -> Self {
        Subrepresentation {
            spaces: v.dims().iter().map(|&d| Subspace::zero(v.field(), d)).collect(),
        }
    }

    pub fn full(v: &Representation) -> Self {
        Subrepresentation {
            spaces: v.dims().iter().map(|&d| Subspace::full(v.field(), d)).collect(),
        }
    }

    /// Wraps per-vertex subspaces after checking that they are closed under
    /// every arrow of `v`.
    pub fn from_spaces(v: &Representation, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != v.dims().len()
            || spaces.iter().zip(v.dims()).any(|(s, &d)| s.ambient_dim() != d)
        {
            return Err(Error::NotASubrep("subspace dimensions do not match the ambient".into()));
        }
        let sub = Subrepresentation { spaces };
        if !sub.is_closed_in(v) {
            return Err(Error::NotASubrep("subspaces are not closed under the arrows".into()));
        }
        Ok(sub)
    }

    pub(crate) fn from_spaces_unchecked(spaces: Vec<Subspace>) -> Self {
        Subrepresentation { spaces }
    }

    pub fn space(&self, vertex: usize) -> &Subspace {
        &self.spaces[vertex]
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    /// G-theory class (the dimension vector).
    pub fn class(&self) -> GClass {
        GClass::new(self.spaces.iter().map(|s| s.dim() as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn contains(&self, other: &Subrepresentation) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains_space(b))
    }

    pub fn sum(&self, other: &Subrepresentation) -> Subrepresentation {
        Subrepresentation {
            spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect(),
        }
    }

    /// Whether each arrow `a: i -> j` of `v` maps the space at `i` into the
    /// space at `j`.
    pub fn is_closed_in(&self, v: &Representation) -> bool {
        v.algebra()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| self.spaces[a.source].maps_into(v.map(ai), &self.spaces[a.target]))
    }
}

/// The smallest subrepresentation of `v` containing the given vectors
/// (`generators[i]` lives at vertex `i`), found by closing under arrows
/// until nothing changes.
pub fn sub_from_generators(v: &Representation, generators: &[Vec<Vec<Scalar>>]) -> Result<Subrepresentation> {
    let n = v.dims().len();
    if generators.len() != n {
        return Err(Error::ShapeMismatch(format!("{} generator lists for {n} vertices", generators.len())));
    }
    let f = v.field();
    let mut spaces = Vec::with_capacity(n);
    for (i, gens) in generators.iter().enumerate() {
        if gens.iter().any(|g| g.len() != v.dims()[i] || g.iter().any(|s| !f.contains(s))) {
            return Err(Error::ShapeMismatch(format!("generator at vertex {i} has the wrong length or field")));
        }
        spaces.push(Subspace::from_vectors(f, v.dims()[i], gens));
    }
    loop {
        let mut changed = false;
        for (ai, a) in v.algebra().arrows().iter().enumerate() {
            let img = spaces[a.source].image_under(v.map(ai));
            if !spaces[a.target].contains_space(&img) {
                spaces[a.target] = spaces[a.target].sum(&img);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let sub = Subrepresentation { spaces };
    debug_assert!(sub.is_closed_in(v));
    Ok(sub)
}
