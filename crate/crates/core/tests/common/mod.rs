//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! The oracles work on plain `u32` residues and never call the library's
//! linear algebra, so they can be used to cross-check it.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use fincat::linalg::{FieldSpec, Matrix, Scalar};
use fincat::presets::{preset_algebra, preset_object};
use fincat::quiver::{quotient, sub_from_generators, AlgebraPresentation, Representation};
use fincat::structure::projective;
use num_rational::BigRational;
use rand::Rng;

pub fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

pub fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

pub fn q() -> FieldSpec {
    FieldSpec::rationals()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn alg(name: &str) -> Arc<AlgebraPresentation> {
    preset_algebra(name).unwrap()
}

pub fn obj(name: &str, object: &str, field: FieldSpec) -> Representation {
    preset_object(name, object, field).unwrap()
}

fn random_scalar(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    match field.characteristic() {
        Some(p) => field.from_int(rng.gen_range(0..p as i64)),
        None => field.from_int(rng.gen_range(-2..=2)),
    }
}

pub fn random_matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(field, rng)).collect();
    Matrix::new(field, rows, cols, data).unwrap()
}

pub fn random_invertible(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_basis_change(v: &Representation, rng: &mut impl Rng) -> Representation {
    let g: Vec<Matrix> = v.dims().iter().map(|&d| random_invertible(v.field(), d, rng)).collect();
    v.change_basis(&g).unwrap()
}

/// A random nonzero representation of total dimension at most `max_total`:
/// a random quotient of a sum of projectives, in a random basis.
pub fn random_rep(
    algebra: &Arc<AlgebraPresentation>,
    field: FieldSpec,
    max_total: usize,
    rng: &mut impl Rng,
) -> Representation {
    let n = algebra.vertex_count();
    loop {
        let mut sum = Representation::zero(algebra.clone(), field);
        for _ in 0..rng.gen_range(1..=3) {
            let p = projective(algebra, field, rng.gen_range(0..n)).unwrap();
            sum = sum.direct_sum(&p).unwrap();
        }
        let mut gens: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n];
        for _ in 0..rng.gen_range(0..=3) {
            let i = rng.gen_range(0..n);
            let d = sum.dims()[i];
            gens[i].push((0..d).map(|_| random_scalar(field, rng)).collect());
        }
        let e = sub_from_generators(&sum, &gens).unwrap();
        let (qv, _) = quotient(&sum, &e).unwrap();
        if qv.total_dim() == 0 || qv.total_dim() > max_total {
            continue;
        }
        return random_basis_change(&qv, rng);
    }
}

/// Every dimension vector with nonnegative entries and total in `1..=max`.
pub fn dim_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if cur.iter().sum::<usize>() > 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 0..=left {
            cur[i] = d;
            rec(i + 1, left - d, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, max, &mut cur, &mut out);
    out
}

/// Every representation (every valid arrow-map tuple, no quotienting by
/// isomorphism) with the given dimension vector over `F_p`.
pub fn all_reps(algebra: &Arc<AlgebraPresentation>, p: u32, dims: &[usize]) -> Vec<Representation> {
    let field = FieldSpec::prime(p as u64).unwrap();
    let shapes: Vec<(usize, usize)> = algebra.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut digits = vec![0u32; total];
    let mut out = Vec::new();
    loop {
        let mut k = 0;
        let maps: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| {
                let data: Vec<Scalar> = digits[k..k + r * c].iter().map(|&x| Scalar::Fp(x)).collect();
                k += r * c;
                Matrix::new(field, r, c, data).unwrap()
            })
            .collect();
        if let Ok(v) = Representation::new(algebra.clone(), field, dims.to_vec(), maps) {
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == total {
                return out;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Plain residue-matrix copy of a representation over `F_p`.
#[derive(Clone, Debug)]
pub struct ModRep {
    pub p: u32,
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    /// `maps[a][r][c]`
    pub maps: Vec<Vec<Vec<u32>>>,
}

impl ModRep {
    pub fn of(v: &Representation) -> ModRep {
        let p = v.field().characteristic().expect("prime field");
        let maps = v
            .maps()
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|r| {
                        m.row(r)
                            .iter()
                            .map(|s| match s {
                                Scalar::Fp(x) => *x,
                                Scalar::Q(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ModRep {
            p,
            dims: v.dims().to_vec(),
            arrows: v.algebra().arrows().iter().map(|a| (a.source, a.target)).collect(),
            maps,
        }
    }

    pub fn apply(&self, a: usize, x: &[u32]) -> Vec<u32> {
        self.maps[a]
            .iter()
            .map(|row| row.iter().zip(x).map(|(m, v)| m * v).sum::<u32>() % self.p)
            .collect()
    }
}

fn all_vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn span(p: u32, d: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    set.insert(vec![0; d]);
    for g in gens {
        let cur: Vec<Vec<u32>> = set.iter().cloned().collect();
        for v in cur {
            for c in 1..p {
                set.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % p).collect());
            }
        }
    }
    set
}

/// All subspaces of `F_p^d`, each as its set of vectors, found by spanning
/// every tuple of at most `d` vectors.
pub fn oracle_subspaces(p: u32, d: usize) -> Arc<Vec<BTreeSet<Vec<u32>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<Vec<BTreeSet<Vec<u32>>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(p, d)) {
        return s.clone();
    }
    let vecs = all_vectors(p, d);
    let mut found: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
    let mut frontier: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for _ in 0..=d {
        let mut next = Vec::new();
        for gens in &frontier {
            let s = span(p, d, gens);
            if found.insert(s) && gens.len() < d {
                for v in &vecs {
                    let mut g = gens.clone();
                    g.push(v.clone());
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    let out = Arc::new(found.into_iter().collect::<Vec<_>>());
    cache.lock().unwrap().insert((p, d), out.clone());
    out
}

/// Dimension vectors of all subrepresentations (with multiplicity).
pub fn oracle_subrep_classes(v: &ModRep) -> Vec<Vec<i64>> {
    let spaces: Vec<Arc<Vec<BTreeSet<Vec<u32>>>>> = v.dims.iter().map(|&d| oracle_subspaces(v.p, d)).collect();
    let n = v.dims.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let closed = v.arrows.iter().enumerate().all(|(a, &(s, t))| {
            spaces[s][choice[s]]
                .iter()
                .all(|x| spaces[t][choice[t]].contains(&v.apply(a, x)))
        });
        if closed {
            out.push(
                (0..n)
                    .map(|i| (spaces[i][choice[i]].len() as f64).log(v.p as f64).round() as i64)
                    .collect(),
            );
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            choice[i] += 1;
            if choice[i] < spaces[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Number of subrepresentations, counted by brute force.
pub fn oracle_subrep_count(v: &ModRep) -> usize {
    oracle_subrep_classes(v).len()
}

/// Semistability by brute force: no subrepresentation has larger slope,
/// with slopes `sum beta_i d_i / sum gamma_i d_i` (all `tau_i = 1`).
pub fn oracle_semistable(v: &ModRep, beta: &[BigRational], gamma: &[BigRational]) -> bool {
    let slope = |c: &[i64]| {
        let num: BigRational = c.iter().zip(beta).map(|(&x, b)| b * int(x)).sum();
        let den: BigRational = c.iter().zip(gamma).map(|(&x, g)| g * int(x)).sum();
        num / den
    };
    let whole: Vec<i64> = v.dims.iter().map(|&d| d as i64).collect();
    let s = slope(&whole);
    oracle_subrep_classes(v)
        .iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .all(|c| slope(c) <= s)
}

/// `dim Hom(V, W)` by counting all intertwining vertex-map tuples over `F_p`.
pub fn oracle_hom_dim(v: &ModRep, w: &ModRep) -> usize {
    let p = v.p;
    let n = v.dims.len();
    let shapes: Vec<(usize, usize)> = (0..n).map(|i| (w.dims[i], v.dims[i])).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut digits = vec![0u32; total];
    let mut count = 0u64;
    loop {
        let mut k = 0;
        let f: Vec<Vec<Vec<u32>>> = shapes
            .iter()
            .map(|&(r, c)| {
                let m = (0..r).map(|i| digits[k + i * c..k + (i + 1) * c].to_vec()).collect();
                k += r * c;
                m
            })
            .collect();
        let ok = v.arrows.iter().enumerate().all(|(a, &(s, t))| {
            // W_a f_s == f_t V_a, compared on a basis of V_s
            (0..v.dims[s]).all(|j| {
                let e: Vec<u32> = (0..v.dims[s]).map(|x| u32::from(x == j)).collect();
                let fs = mat_vec(p, &f[s], &e);
                let lhs = w.apply(a, &fs);
                let rhs = mat_vec(p, &f[t], &v.apply(a, &e));
                lhs == rhs
            })
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == total {
                let mut d = 0;
                let mut c = count;
                while c > 1 {
                    assert_eq!(c % p as u64, 0);
                    c /= p as u64;
                    d += 1;
                }
                return d;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn mat_vec(p: u32, m: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<u32>() % p).collect()
}
