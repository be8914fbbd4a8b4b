//! Quivers with admissible relations and their path-class bases.
//!
//! Paths compose left to right: the word `a b` traverses `a` first, then `b`.
//! On a representation it therefore evaluates to `V_b * V_a`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// Default cap on path length and on the dimension of the path algebra
/// modulo relations.
pub const DEFAULT_PATH_CAP: usize = 64;

/// Hard limit on the number of paths walked while certifying finiteness.
const MAX_WALKED_PATHS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One term `coeff * word` of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathTerm {
    pub coeff: BigRational,
    pub word: Vec<usize>,
}

/// A formal linear combination of parallel paths, required to vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<PathTerm>,
}

impl Relation {
    pub fn new(terms: Vec<PathTerm>) -> Self {
        Relation { terms }
    }

    /// A single monomial relation `word = 0`.
    pub fn monomial(word: Vec<usize>) -> Self {
        Relation {
            terms: vec![PathTerm {
                coeff: BigRational::from_integer(1.into()),
                word,
            }],
        }
    }
}

/// A path: a source vertex plus a (possibly empty) composable arrow word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A finite quiver with admissible relations, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    path_cap: usize,
}

impl AlgebraPresentation {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self> {
        Self::with_path_cap(vertices, arrows, relations, DEFAULT_PATH_CAP)
    }

    pub fn with_path_cap(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
        path_cap: usize,
    ) -> Result<Self> {
        let alg = AlgebraPresentation {
            vertices,
            arrows,
            relations,
            path_cap,
        };
        alg.check_shape()?;
        alg.path_basis(FieldSpec::rationals())?;
        Ok(alg)
    }

    /// Builds a presentation from names, e.g. `&[("a", "1", "2")]`.
    pub fn from_names(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[(i64, &[&str])]],
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let vidx = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown vertex `{name}`")))
        };
        let arrows: Vec<Arrow> = arrows
            .iter()
            .map(|(n, s, t)| {
                Ok(Arrow {
                    name: n.to_string(),
                    source: vidx(s)?,
                    target: vidx(t)?,
                })
            })
            .collect::<Result<_>>()?;
        let aidx = |name: &str| {
            arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow `{name}`")))
        };
        let relations = relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|(c, word)| {
                        Ok(PathTerm {
                            coeff: BigRational::from_integer((*c).into()),
                            word: word.iter().map(|a| aidx(a)).collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(Relation::new(terms))
            })
            .collect::<Result<_>>()?;
        AlgebraPresentation::new(vertices, arrows, relations)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn path_cap(&self) -> usize {
        self.path_cap
    }

    /// Source and target vertex of a composable word of length >= 1.
    pub fn word_ends(&self, word: &[usize]) -> (usize, usize) {
        (self.arrows[word[0]].source, self.arrows[*word.last().unwrap()].target)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.vertices.len();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.is_empty() || self.vertices[..i].contains(v) {
                return Err(Error::InvalidPresentation(format!("bad or duplicate vertex name `{v}`")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidPresentation(format!("arrow `{}` has an unknown endpoint", a.name)));
            }
            if a.name.is_empty() || self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidPresentation(format!("bad or duplicate arrow name `{}`", a.name)));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.terms.is_empty() {
                return Err(Error::InvalidPresentation(format!("relation {ri} is empty")));
            }
            let mut ends = None;
            for term in &rel.terms {
                if term.word.len() < 2 {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {ri} has a term of length < 2 (not admissible)"
                    )));
                }
                if term.word.iter().any(|&a| a >= self.arrows.len()) {
                    return Err(Error::InvalidPresentation(format!("relation {ri} uses an unknown arrow")));
                }
                for pair in term.word.windows(2) {
                    if self.arrows[pair[0]].target != self.arrows[pair[1]].source {
                        return Err(Error::InvalidPresentation(format!(
                            "relation {ri}: arrows `{}` and `{}` do not compose",
                            self.arrows[pair[0]].name, self.arrows[pair[1]].name
                        )));
                    }
                }
                let e = self.word_ends(&term.word);
                if *ends.get_or_insert(e) != e {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {ri} mixes paths with different endpoints"
                    )));
                }
            }
        }
        Ok(())
    }

    /// All paths of length `len` starting anywhere, in lexicographic arrow order.
    fn paths_of_length(&self, len: usize, walked: &mut usize) -> Result<Vec<Path>> {
        let mut layer: Vec<Path> = (0..self.vertex_count())
            .map(|v| Path {
                source: v,
                arrows: Vec::new(),
            })
            .collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                let end = self.path_target(p);
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            arrows,
                        });
                    }
                }
            }
            *walked += next.len();
            if *walked > MAX_WALKED_PATHS {
                return Err(Error::PathCapExceeded { cap: self.path_cap });
            }
            layer = next;
        }
        Ok(layer)
    }

    pub fn path_target(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.source, |&a| self.arrows[a].target)
    }

    /// Computes a basis of the path algebra modulo relations over `field`.
    ///
    /// Finiteness is certified by finding `N` such that every path of
    /// length `N` is an explicit combination of the generators `u r v` of the
    /// relation ideal; presentations that cannot be certified within the path
    /// cap are rejected.
    pub fn path_basis(&self, field: FieldSpec) -> Result<PathBasis> {
        let rels: Vec<Vec<(Scalar, Vec<usize>)>> = self
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .filter(|t| !t.coeff.is_zero())
                    .map(|t| Ok((field.from_rational(&t.coeff)?, t.word.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let spread = rels
            .iter()
            .filter(|r: &&Vec<(Scalar, Vec<usize>)>| !r.is_empty())
            .map(|r| {
                let lo = r.iter().map(|t| t.1.len()).min().unwrap();
                let hi = r.iter().map(|t| t.1.len()).max().unwrap();
                hi - lo
            })
            .max()
            .unwrap_or(0);

        let mut walked = 0usize;
        let mut by_len: Vec<Vec<Path>> = vec![self.paths_of_length(0, &mut walked)?];
        for nil in 1..=self.path_cap {
            while by_len.len() <= nil + spread {
                let l = by_len.len();
                by_len.push(self.paths_of_length(l, &mut walked)?);
            }
            if by_len[nil].is_empty() {
                return self.finish_basis(field, &rels, &by_len, nil);
            }
            if nil < 2 {
                continue;
            }
            // Window of paths of length <= nil + spread.
            let window: Vec<&Path> = by_len[..=nil + spread].iter().flatten().collect();
            let index: HashMap<&Path, usize> = window.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let gens = self.ideal_generators(field, &rels, &by_len, nil + spread, |terms| {
                terms.iter().all(|t| t.1.len() <= nil + spread)
            });
            let mut rows = Vec::with_capacity(gens.len());
            for g in &gens {
                let mut row = vec![field.zero(); window.len()];
                for (c, p) in g {
                    let i = index[p];
                    row[i] = field.add(&row[i], c);
                }
                rows.push(row);
            }
            let span = crate::linalg::Subspace::from_vectors(field, window.len(), &rows);
            let all_in = by_len[nil].iter().all(|p| {
                let mut v = vec![field.zero(); window.len()];
                v[index[p]] = field.one();
                span.contains(&v)
            });
            if all_in {
                return self.finish_basis(field, &rels, &by_len, nil);
            }
        }
        Err(Error::PathCapExceeded { cap: self.path_cap })
    }

    /// Elements `u r v` (as term lists) whose terms pass `keep`, with
    /// `|u| + |v|` bounded so that the shortest term has length <= `max_len`.
    fn ideal_generators(
        &self,
        field: FieldSpec,
        rels: &[Vec<(Scalar, Vec<usize>)>],
        by_len: &[Vec<Path>],
        max_len: usize,
        keep: impl Fn(&[(Scalar, Path)]) -> bool,
    ) -> Vec<Vec<(Scalar, Path)>> {
        let mut out = Vec::new();
        for rel in rels.iter().filter(|r| !r.is_empty()) {
            let (s, t) = self.word_ends(&rel[0].1);
            let min_len = rel.iter().map(|t| t.1.len()).min().unwrap();
            if min_len > max_len {
                continue;
            }
            let budget = max_len - min_len;
            for lu in 0..=budget {
                for u in by_len[lu].iter().filter(|u| self.path_target(u) == s) {
                    for lv in 0..=budget - lu {
                        for v in by_len[lv].iter().filter(|v| v.source == t) {
                            let terms: Vec<(Scalar, Path)> = rel
                                .iter()
                                .map(|(c, w)| {
                                    let mut arrows = u.arrows.clone();
                                    arrows.extend(w);
                                    arrows.extend(&v.arrows);
                                    (
                                        c.clone(),
                                        Path {
                                            source: u.source,
                                            arrows,
                                        },
                                    )
                                })
                                .collect();
                            if keep(&terms) {
                                out.push(terms);
                            }
                        }
                    }
                }
            }
        }
        let _ = field;
        out
    }

    fn finish_basis(
        &self,
        field: FieldSpec,
        rels: &[Vec<(Scalar, Vec<usize>)>],
        by_len: &[Vec<Path>],
        nil: usize,
    ) -> Result<PathBasis> {
        let n = self.vertex_count();
        // Columns ordered longest path first so that pivots fall on long paths
        // and the surviving normal forms are the shortest ones.
        let mut blocks: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
        for len in (0..nil).rev() {
            for p in &by_len[len] {
                blocks[p.source][self.path_target(p)].push(p.clone());
            }
        }
        // Generators truncated below length `nil`.
        let gens = self.ideal_generators(field, rels, by_len, nil.saturating_sub(1), |_| true);
        let mut block_rows: Vec<Vec<Vec<Vec<Scalar>>>> = vec![vec![Vec::new(); n]; n];
        let index: HashMap<&Path, usize> = blocks
            .iter()
            .flatten()
            .flat_map(|b| b.iter().enumerate().map(|(i, p)| (p, i)))
            .collect();
        for g in &gens {
            let (s, t) = (g[0].1.source, self.path_target(&g[0].1));
            let mut row = vec![field.zero(); blocks[s][t].len()];
            for (c, p) in g.iter().filter(|(_, p)| p.arrows.len() < nil) {
                let i = index[p];
                row[i] = field.add(&row[i], c);
            }
            block_rows[s][t].push(row);
        }

        let mut basis: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
        let mut normal_forms: HashMap<Path, Vec<Scalar>> = HashMap::new();
        let mut total = 0usize;
        for s in 0..n {
            for t in 0..n {
                let cols = &blocks[s][t];
                let rref = Matrix::from_rows(field, cols.len(), &block_rows[s][t]).rref();
                let mut is_pivot = vec![false; cols.len()];
                for &p in &rref.pivots {
                    is_pivot[p] = true;
                }
                let free: Vec<usize> = (0..cols.len()).filter(|&c| !is_pivot[c]).collect();
                // Basis paths listed shortest first.
                let mut order: Vec<usize> = free.clone();
                order.sort_by(|&a, &b| {
                    (cols[a].arrows.len(), &cols[a].arrows).cmp(&(cols[b].arrows.len(), &cols[b].arrows))
                });
                let pos_of: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                for &c in &free {
                    let mut v = vec![field.zero(); order.len()];
                    v[pos_of[&c]] = field.one();
                    normal_forms.insert(cols[c].clone(), v);
                }
                for (r, &pc) in rref.pivots.iter().enumerate() {
                    let mut v = vec![field.zero(); order.len()];
                    for &c in &free {
                        v[pos_of[&c]] = field.neg(&rref.matrix[(r, c)]);
                    }
                    normal_forms.insert(cols[pc].clone(), v);
                }
                total += order.len();
                basis[s][t] = order.iter().map(|&c| cols[c].clone()).collect();
            }
        }
        if total > self.path_cap {
            return Err(Error::PathCapExceeded { cap: self.path_cap });
        }
        Ok(PathBasis {
            field,
            nilpotency: nil,
            basis,
            normal_forms,
        })
    }
}

/// A basis of the path algebra modulo relations, split by (source, target),
/// together with the normal form of every path.
#[derive(Clone, Debug)]
pub struct PathBasis {
    field: FieldSpec,
    nilpotency: usize,
    basis: Vec<Vec<Vec<Path>>>,
    normal_forms: HashMap<Path, Vec<Scalar>>,
}

impl PathBasis {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Smallest `N` found with every path of length `N` in the relation ideal.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// Normal-form basis paths from `source` to `target`, shortest first.
    pub fn paths(&self, source: usize, target: usize) -> &[Path] {
        &self.basis[source][target]
    }

    /// Dimension of the whole algebra.
    pub fn dim(&self) -> usize {
        self.basis.iter().flatten().map(Vec::len).sum()
    }

    /// Coordinates of `path` in the basis of its (source, target) block.
    pub fn normal_form(&self, path: &Path, target: usize) -> Vec<Scalar> {
        match self.normal_forms.get(path) {
            Some(v) => v.clone(),
            None => vec![self.field.zero(); self.basis[path.source][target].len()],
        }
    }
}
