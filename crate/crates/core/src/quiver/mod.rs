//! The data model: quivers with relations, representations, morphisms and
//! the abelian-category operations on them.

mod algebra;
mod rep;
mod subrep;

pub use algebra::{Arrow, AlgebraPresentation, Path, PathBasis, PathTerm, Relation, DEFAULT_PATH_CAP};
pub use rep::{hom_basis, hom_space, image, kernel, quotient, restrict, subquotient, HomSpace, Morphism, Representation};
pub use subrep::{sub_from_generators, Subrepresentation};

