use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ktheory::GClass;
use crate::linalg::combinations;
use crate::quiver::{Representation, Subrepresentation};
use crate::stability::{enumerate_subreps, is_semistable, mu_from_pieces, MuValue, SearchConfig, StabilityData, WeightedFiltration};

/// Strictly decreasing weight vectors of length `m` drawn from
/// `[-bound, bound]`, in lexicographically increasing order.
fn weight_vectors(m: usize, bound: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (-bound..=bound).rev().collect();
    let mut out: Vec<Vec<i64>> = combinations(values.len(), m)
        .into_iter()
        .map(|idx| idx.iter().map(|&i| values[i]).collect())
        .collect();
    out.sort();
    out
}

/// Maximizes `mu_beta` over all weighted filtrations of `V` with weights in
/// `[-weight_bound, weight_bound]`.
///
/// Ties in `mu` go to the lexicographically smallest weight vector, then to
/// the first chain in enumeration order.
pub fn filtration_enumerate_max(
    sd: &StabilityData,
    v: &Representation,
    weight_bound: i64,
    cfg: &SearchConfig,
) -> Result<(WeightedFiltration, MuValue)> {
    if weight_bound < 1 {
        return Err(Error::InvalidFiltration("weight bound must be positive".into()));
    }
    if !v.field().is_prime_field() {
        return Err(Error::NotPrimeField);
    }
    if v.is_zero() {
        return Err(Error::ZeroNorm);
    }
    sd.check_class(v)?;
    let mut subs = enumerate_subreps(v, cfg)?;
    // Sorting by total dimension makes every strict superset appear later.
    subs.sort_by_key(Subrepresentation::total_dim);
    let n = subs.len();
    let zero = 0;
    let full = n - 1;
    debug_assert!(subs[zero].is_zero() && subs[full].is_full());
    let supersets: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| subs[j].total_dim() > subs[i].total_dim() && subs[j].contains(&subs[i]))
                .collect()
        })
        .collect();
    // Chains from each node up to the whole object.
    let mut chain_count = vec![0u128; n];
    chain_count[full] = 1;
    for i in (0..full).rev() {
        chain_count[i] = supersets[i]
            .iter()
            .fold(0u128, |acc, &j| acc.saturating_add(chain_count[j]));
    }
    cfg.check(chain_count[zero])?;

    let mut weights_by_len: HashMap<usize, Vec<Vec<i64>>> = HashMap::new();
    let mut best_by_classes: HashMap<Vec<GClass>, Option<(Vec<i64>, MuValue)>> = HashMap::new();
    let mut best: Option<(Vec<i64>, MuValue, Vec<usize>)> = None;

    let mut stack: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = vec![(zero, 0)];
    // Iterative DFS over chains zero -> ... -> full.
    while let Some(&mut (node, ref mut next)) = frames.last_mut() {
        if node == full {
            let chain = stack.clone();
            let mut prev = subs[zero].class();
            let classes: Vec<GClass> = chain
                .iter()
                .map(|&i| {
                    let c = subs[i].class();
                    let d = &c - &prev;
                    prev = c;
                    d
                })
                .collect();
            let m = classes.len();
            let entry = match best_by_classes.get(&classes) {
                Some(e) => e.clone(),
                None => {
                    let ws = weights_by_len.entry(m).or_insert_with(|| weight_vectors(m, weight_bound));
                    let mut local: Option<(Vec<i64>, MuValue)> = None;
                    for w in ws.iter() {
                        let pieces: Vec<(i64, GClass)> = w.iter().copied().zip(classes.iter().cloned()).collect();
                        let mu = match mu_from_pieces(sd, &pieces) {
                            Ok(mu) => mu,
                            Err(Error::ZeroNorm) => continue,
                            Err(e) => return Err(e),
                        };
                        if local.as_ref().is_none_or(|(_, b)| mu > *b) {
                            local = Some((w.clone(), mu));
                        }
                    }
                    best_by_classes.insert(classes, local.clone());
                    local
                }
            };
            if let Some((w, mu)) = entry {
                let replace = match &best {
                    None => true,
                    Some((bw, bmu, _)) => mu > *bmu || (mu == *bmu && w < *bw),
                };
                if replace {
                    best = Some((w, mu, chain));
                }
            }
            frames.pop();
            stack.pop();
            continue;
        }
        if *next < supersets[node].len() {
            let child = supersets[node][*next];
            *next += 1;
            stack.push(child);
            frames.push((child, 0));
        } else {
            frames.pop();
            stack.pop();
        }
    }

    let (weights, mu, chain) = best.ok_or(Error::ZeroNorm)?;
    let steps = chain.into_iter().map(|i| subs[i].clone()).collect();
    Ok((WeightedFiltration::new(v, weights, steps)?, mu))
}

/// Whether semistability agrees for `beta` and `beta + c * gamma`, which
/// shifts every slope by `c`.
pub fn semistable_shift_check(
    sd: &StabilityData,
    v: &Representation,
    c: &num_rational::BigRational,
    cfg: &SearchConfig,
) -> Result<bool> {
    let shifted = sd.for_beta(sd.beta() + &sd.gamma().scale(c))?;
    Ok(is_semistable(sd, v, cfg)?.0 == is_semistable(&shifted, v, cfg)?.0)
}
