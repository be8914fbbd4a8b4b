//! Finite-field census of all representations of a fixed class: iso-class
//! catalogs, Theta-strata by Harder–Narasimhan type, the semisimple closed
//! points, and the projective-cover check.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ktheory::{g_class, minimal_cover_vector, GClass};
use crate::linalg::{increment, FieldSpec, Matrix, Scalar};
use crate::quiver::{hom_basis, AlgebraPresentation, Representation};
use crate::stability::{hn_filtration, SearchConfig, StabilityData};
use crate::structure::{is_semisimple, projective, radical, semisimple_of_class, socle};

/// One representative per isomorphism class of representations of class
/// `alpha` over a prime field.
#[derive(Clone, Debug)]
pub struct IsoClassCatalog {
    pub algebra: Arc<AlgebraPresentation>,
    pub field: FieldSpec,
    pub alpha: GClass,
    pub representatives: Vec<Representation>,
    /// Orbit size of each representative under base change, when computed.
    pub orbit_sizes: Option<Vec<u128>>,
    /// Number of arrow-map tuples satisfying the relations.
    pub valid_tuples: u128,
}

impl IsoClassCatalog {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Indices of the semisimple representatives.
    pub fn semisimple_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| is_semisimple(&self.representatives[i]))
            .collect()
    }

    /// Whether the orbit sizes add up to the number of valid tuples; `None`
    /// when orbit sizes were not computed.
    pub fn orbits_complete(&self) -> Option<bool> {
        self.orbit_sizes
            .as_ref()
            .map(|o| o.iter().fold(0u128, |a, &b| a.saturating_add(b)) == self.valid_tuples)
    }
}

/// Elements of `span(basis)` over `F_p`, visited in base-`p` counter order
/// (first coefficient fastest), stopping early when `pred` holds.
fn find_combination(
    field: FieldSpec,
    basis: &[Vec<Matrix>],
    cfg: &SearchConfig,
    pred: impl Fn(&[Matrix]) -> bool,
) -> Result<bool> {
    let p = field.characteristic().ok_or(Error::NotPrimeField)?;
    let required = (p as u128)
        .checked_pow(basis.len() as u32)
        .unwrap_or(u128::MAX);
    if required > cfg.budget {
        return Err(Error::IsoTestBudgetExceeded {
            required,
            budget: cfg.budget,
        });
    }
    if basis.is_empty() {
        return Ok(false);
    }
    let mut digits = vec![0u32; basis.len()];
    while increment(&mut digits, p) {
        let combo: Vec<Matrix> = (0..basis[0].len())
            .map(|i| {
                basis
                    .iter()
                    .zip(&digits)
                    .filter(|(_, &d)| d != 0)
                    .fold(Matrix::zeros(field, basis[0][i].rows(), basis[0][i].cols()), |acc, (b, &d)| {
                        acc.add(&b[i].scale(&Scalar::Fp(d)))
                    })
            })
            .collect();
        if pred(&combo) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Count of elements of `span(basis)` satisfying `pred`, including zero.
fn count_combinations(
    field: FieldSpec,
    basis: &[Vec<Matrix>],
    cfg: &SearchConfig,
    pred: impl Fn(&[Matrix]) -> bool,
) -> Result<u128> {
    let p = field.characteristic().ok_or(Error::NotPrimeField)?;
    let required = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if required > cfg.budget {
        return Err(Error::IsoTestBudgetExceeded {
            required,
            budget: cfg.budget,
        });
    }
    let mut count = 0u128;
    let mut digits = vec![0u32; basis.len()];
    loop {
        let combo: Vec<Matrix> = match basis.first() {
            None => Vec::new(),
            Some(first) => (0..first.len())
                .map(|i| {
                    basis.iter().zip(&digits).fold(
                        Matrix::zeros(field, first[i].rows(), first[i].cols()),
                        |acc, (b, &d)| acc.add(&b[i].scale(&Scalar::Fp(d))),
                    )
                })
                .collect(),
        };
        if pred(&combo) {
            count += 1;
        }
        if !increment(&mut digits, p) {
            break;
        }
    }
    Ok(count)
}

/// Whether `v` and `w` are isomorphic, by searching `Hom(V, W)` for an
/// element invertible at every vertex.
pub fn are_isomorphic(v: &Representation, w: &Representation, cfg: &SearchConfig) -> Result<bool> {
    v.check_compatible(w)?;
    if v.dims() != w.dims() {
        return Ok(false);
    }
    if v.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(v, w)?;
    find_combination(v.field(), &basis, cfg, |maps| maps.iter().all(Matrix::is_invertible))
}

/// `|Aut(V)|`, counted inside `End(V)`.
pub fn automorphism_count(v: &Representation, cfg: &SearchConfig) -> Result<u128> {
    let basis = hom_basis(v, v)?;
    count_combinations(v.field(), &basis, cfg, |maps| maps.iter().all(Matrix::is_invertible))
}

/// `|GL(d, F_p)|`.
fn gl_order(p: u128, d: usize) -> u128 {
    let pd = p.saturating_pow(d as u32);
    (0..d).fold(1u128, |acc, k| acc.saturating_mul(pd - p.pow(k as u32)))
}

/// Cheap isomorphism invariants used to bucket candidates before the
/// exhaustive test.
fn invariant_key(v: &Representation) -> (Vec<usize>, Vec<usize>, Vec<usize>, usize) {
    let ranks = v.maps().iter().map(Matrix::rank).collect();
    let rad = radical(v).dims();
    let soc = socle(v).dims();
    let end = hom_basis(v, v).map(|b| b.len()).unwrap_or(0);
    (ranks, rad, soc, end)
}

/// Enumerates every arrow-map tuple of class `alpha` over `F_p`, keeps
/// those satisfying the relations, and groups them into isomorphism classes.
pub fn enumerate_reps(
    algebra: &Arc<AlgebraPresentation>,
    alpha: &GClass,
    field: FieldSpec,
    with_orbits: bool,
    cfg: &SearchConfig,
) -> Result<IsoClassCatalog> {
    let p = field.characteristic().ok_or(Error::NotPrimeField)?;
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
    let shapes: Vec<(usize, usize)> = algebra
        .arrows()
        .iter()
        .map(|a| (dims[a.target], dims[a.source]))
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let required = (p as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    cfg.check(required)?;

    let decode = |index: u128| -> Representation {
        let mut rest = index;
        let maps: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| {
                let data: Vec<Scalar> = (0..r * c)
                    .map(|_| {
                        let d = (rest % p as u128) as u32;
                        rest /= p as u128;
                        Scalar::Fp(d)
                    })
                    .collect();
                Matrix::new(field, r, c, data).expect("shape")
            })
            .collect();
        Representation::unvalidated(algebra.clone(), field, dims.clone(), maps)
    };
    // Contiguous index ranges, concatenated in order afterwards.
    let chunk_count = required.clamp(1, 64);
    let ranges: Vec<(u128, u128)> = (0..chunk_count)
        .map(|k| (required * k / chunk_count, required * (k + 1) / chunk_count))
        .collect();
    let found: Vec<Vec<Representation>> = cfg.map_ordered(&ranges, |&(lo, hi)| {
        (lo..hi).map(decode).filter(|r| r.validate().is_ok()).collect()
    });
    let valid: Vec<Representation> = found.into_iter().flatten().collect();
    let valid_tuples = valid.len() as u128;

    let mut buckets: HashMap<(Vec<usize>, Vec<usize>, Vec<usize>, usize), Vec<usize>> = HashMap::new();
    let mut representatives: Vec<Representation> = Vec::new();
    for rep in valid {
        let key = invariant_key(&rep);
        let bucket = buckets.entry(key).or_default();
        let mut known = false;
        for &idx in bucket.iter() {
            if are_isomorphic(&representatives[idx], &rep, cfg)? {
                known = true;
                break;
            }
        }
        if !known {
            bucket.push(representatives.len());
            representatives.push(rep);
        }
    }

    let orbit_sizes = if with_orbits {
        let group = dims
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(gl_order(p as u128, d)));
        Some(
            representatives
                .iter()
                .map(|r| Ok(group / automorphism_count(r, cfg)?))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };

    Ok(IsoClassCatalog {
        algebra: algebra.clone(),
        field,
        alpha: alpha.clone(),
        representatives,
        orbit_sizes,
        valid_tuples,
    })
}

/// One Theta-stratum: an HN type and the catalog indices having it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub hn_type: Vec<(GClass, BigRational)>,
    pub members: Vec<usize>,
}

impl Stratum {
    pub fn is_semistable(&self) -> bool {
        self.hn_type.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataReport {
    /// Ordered by slope sequence, lexicographically descending.
    pub strata: Vec<Stratum>,
    /// Index into `strata` of the semistable stratum, if nonempty.
    pub semistable: Option<usize>,
    /// Catalog index of the semisimple representative.
    pub closed_point: usize,
}

/// Partitions a catalog by Harder–Narasimhan type.
pub fn theta_strata(catalog: &IsoClassCatalog, sd: &StabilityData, cfg: &SearchConfig) -> Result<StrataReport> {
    if *sd.alpha() != catalog.alpha {
        return Err(Error::ClassMismatch {
            expected: catalog.alpha.to_string(),
            actual: sd.alpha().to_string(),
        });
    }
    let types: Vec<Vec<(GClass, BigRational)>> = catalog
        .representatives
        .iter()
        .map(|v| Ok(hn_filtration(sd, v, cfg)?.hn_type().to_vec()))
        .collect::<Result<_>>()?;
    let mut strata: Vec<Stratum> = Vec::new();
    for (i, t) in types.into_iter().enumerate() {
        match strata.iter_mut().find(|s| s.hn_type == t) {
            Some(s) => s.members.push(i),
            None => strata.push(Stratum {
                hn_type: t,
                members: vec![i],
            }),
        }
    }
    strata.sort_by(|a, b| {
        let sa: Vec<&BigRational> = a.hn_type.iter().map(|(_, s)| s).collect();
        let sb: Vec<&BigRational> = b.hn_type.iter().map(|(_, s)| s).collect();
        sb.cmp(&sa).then_with(|| {
            let ca: Vec<&GClass> = a.hn_type.iter().map(|(c, _)| c).collect();
            let cb: Vec<&GClass> = b.hn_type.iter().map(|(c, _)| c).collect();
            cb.cmp(&ca)
        })
    });
    let semistable = strata.iter().position(Stratum::is_semistable);
    let semisimple = catalog.semisimple_indices();
    if semisimple.len() != 1 {
        return Err(Error::InvalidPresentation(format!(
            "catalog has {} semisimple representatives",
            semisimple.len()
        )));
    }
    Ok(StrataReport {
        strata,
        semistable,
        closed_point: semisimple[0],
    })
}

/// One semisimple representative per distinct effective class, sorted by
/// class.
pub fn closed_points(
    algebra: &Arc<AlgebraPresentation>,
    field: FieldSpec,
    alphas: &[GClass],
) -> Result<Vec<(GClass, Representation)>> {
    let mut classes = alphas.to_vec();
    classes.sort();
    classes.dedup();
    classes
        .into_iter()
        .map(|a| {
            let rep = semisimple_of_class(algebra, field, &a)?;
            Ok((a, rep))
        })
        .collect()
}

/// `⊕_j P_j^{n_j}` for a cover vector.
pub fn cover_projective(
    algebra: &Arc<AlgebraPresentation>,
    field: FieldSpec,
    cover: &[(usize, usize)],
) -> Result<Representation> {
    let mut out = Representation::zero(algebra.clone(), field);
    for &(j, n) in cover {
        let p = projective(algebra, field, j)?;
        for _ in 0..n {
            out = out.direct_sum(&p)?;
        }
    }
    Ok(out)
}

/// Whether `⊕_j P_j^{n_j}` surjects onto every representative, with `n`
/// the minimal cover vector of the catalog's class.
pub fn cover_check(catalog: &IsoClassCatalog, cfg: &SearchConfig) -> Result<bool> {
    let cover = minimal_cover_vector(&catalog.alpha)?;
    let pn = cover_projective(&catalog.algebra, catalog.field, &cover)?;
    for v in &catalog.representatives {
        debug_assert_eq!(g_class(v), catalog.alpha);
        if v.is_zero() {
            continue;
        }
        let basis = hom_basis(&pn, v)?;
        let epi = find_combination(catalog.field, &basis, cfg, |maps| {
            maps.iter().all(|m| m.rank() == m.rows())
        })?;
        if !epi {
            return Ok(false);
        }
    }
    Ok(true)
}
