//! Exhaustive enumeration of subrepresentations over a prime field.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, count_subspaces, Subspace};
use crate::quiver::{Representation, Subrepresentation};

/// Default cap on enumerated candidates.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of candidates an enumeration may visit.
    pub budget: u128,
    /// Worker threads; results never depend on this value.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u128) -> Self {
        SearchConfig {
            budget,
            ..SearchConfig::default()
        }
    }

    pub(crate) fn check(&self, required: u128) -> Result<()> {
        if required > self.budget {
            return Err(Error::SearchBudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Maps `f` over `items` preserving order, on `workers` threads.
    pub(crate) fn map_ordered<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        if self.workers <= 1 || items.len() < 2 {
            return items.iter().map(f).collect();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.iter().map(f).collect(),
        }
    }
}

/// Number of per-vertex subspace tuples an exhaustive subrepresentation
/// search over `v` has to consider.
pub fn subrep_search_size(v: &Representation) -> Result<u128> {
    let p = v.field().characteristic().ok_or(Error::NotPrimeField)?;
    Ok(v
        .dims()
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(count_subspaces(p as u128, d))))
}

/// Every subrepresentation of `v`, in canonical order (vertex 0's subspace
/// varies slowest).
pub fn enumerate_subreps(v: &Representation, cfg: &SearchConfig) -> Result<Vec<Subrepresentation>> {
    cfg.check(subrep_search_size(v)?)?;
    let f = v.field();
    let n = v.dims().len();
    if n == 0 {
        return Ok(vec![Subrepresentation::zero(v)]);
    }
    let choices: Vec<Vec<Subspace>> = v.dims().iter().map(|&d| all_subspaces(f, d)).collect();
    // Arrows checked once both endpoints have been assigned.
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ai, a) in v.algebra().arrows().iter().enumerate() {
        checks[a.source.max(a.target)].push(ai);
    }

    fn dfs(
        v: &Representation,
        choices: &[Vec<Subspace>],
        checks: &[Vec<usize>],
        partial: &mut Vec<Subspace>,
        out: &mut Vec<Subrepresentation>,
    ) {
        let k = partial.len();
        if k == choices.len() {
            out.push(Subrepresentation::from_spaces_unchecked(partial.clone()));
            return;
        }
        for s in &choices[k] {
            partial.push(s.clone());
            let ok = checks[k].iter().all(|&ai| {
                let a = &v.algebra().arrows()[ai];
                partial[a.source].maps_into(v.map(ai), &partial[a.target])
            });
            if ok {
                dfs(v, choices, checks, partial, out);
            }
            partial.pop();
        }
    }

    let parts = cfg.map_ordered(&choices[0], |first| {
        let mut partial = vec![first.clone()];
        let mut out = Vec::new();
        let ok = checks[0].iter().all(|&ai| first.maps_into(v.map(ai), first));
        if ok {
            dfs(v, &choices, &checks, &mut partial, &mut out);
        }
        out
    });
    let subs: Vec<Subrepresentation> = parts.into_iter().flatten().collect();
    debug_assert!(subs.iter().all(|s| s.is_closed_in(v)));
    Ok(subs)
}
