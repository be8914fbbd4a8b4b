//! Slope stability: beta-slopes, semistability, Harder–Narasimhan
//! filtrations, weighted filtrations and the numerical invariant `mu_beta`.
//!
//! Semistability is only certified over prime fields, where every
//! subrepresentation can be enumerated. Harder–Narasimhan filtrations are
//! stable under field extension, so a filtration found over `F_p` is also the
//! one over its algebraic closure.

mod filtration;
mod hn;
mod search;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ktheory::{dual_basis_matrix, g_class, is_nondegenerate, GClass, KClass, PairingMatrix};
use crate::linalg::{format_rational, FieldSpec};
use crate::quiver::{AlgebraPresentation, Representation, Subrepresentation};

pub use filtration::{filtration_enumerate_max, semistable_shift_check};
pub use hn::{destabilizer_search, hn_filtration, is_semistable, HNFiltration};
pub use search::{enumerate_subreps, subrep_search_size, SearchConfig, DEFAULT_BUDGET};

/// The stability parameters `beta`, `gamma` for objects of class `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityData {
    beta: KClass,
    gamma: KClass,
    alpha: GClass,
    pairing: PairingMatrix,
}

impl StabilityData {
    pub fn new(pairing: PairingMatrix, beta: KClass, gamma: KClass, alpha: GClass) -> Result<Self> {
        let n = pairing.size();
        for len in [beta.len(), gamma.len(), alpha.len()] {
            if len != n {
                return Err(Error::IndexMismatch {
                    expected: n,
                    actual: len,
                });
            }
        }
        if !gamma.is_nonnegative() {
            return Err(Error::NegativeGamma);
        }
        if !alpha.is_effective() {
            return Err(Error::NegativeClass);
        }
        if !is_nondegenerate(&gamma, &alpha) {
            return Err(Error::DegenerateGamma);
        }
        Ok(StabilityData {
            beta,
            gamma,
            alpha,
            pairing,
        })
    }

    /// Uses the canonical gamma for `alpha`, so that gamma-length is length.
    pub fn canonical(
        algebra: &Arc<AlgebraPresentation>,
        field: FieldSpec,
        beta: KClass,
        alpha: GClass,
    ) -> Result<Self> {
        let pairing = dual_basis_matrix(algebra, field)?;
        let gamma = pairing.canonical_gamma(&alpha)?;
        StabilityData::new(pairing, beta, gamma, alpha)
    }

    pub fn with_gamma(
        algebra: &Arc<AlgebraPresentation>,
        field: FieldSpec,
        beta: KClass,
        gamma: KClass,
        alpha: GClass,
    ) -> Result<Self> {
        StabilityData::new(dual_basis_matrix(algebra, field)?, beta, gamma, alpha)
    }

    pub fn beta(&self) -> &KClass {
        &self.beta
    }

    pub fn gamma(&self) -> &KClass {
        &self.gamma
    }

    pub fn alpha(&self) -> &GClass {
        &self.alpha
    }

    pub fn pairing(&self) -> &PairingMatrix {
        &self.pairing
    }

    /// Same beta and gamma, for objects of another class.
    pub fn for_class(&self, alpha: GClass) -> Result<Self> {
        StabilityData::new(self.pairing.clone(), self.beta.clone(), self.gamma.clone(), alpha)
    }

    /// Same gamma and alpha, another beta.
    pub fn for_beta(&self, beta: KClass) -> Result<Self> {
        StabilityData::new(self.pairing.clone(), beta, self.gamma.clone(), self.alpha.clone())
    }

    pub fn beta_pairing(&self, c: &GClass) -> Result<BigRational> {
        self.pairing.pairing(&self.beta, c)
    }

    pub fn gamma_length(&self, c: &GClass) -> Result<BigRational> {
        self.pairing.gamma_length(&self.gamma, c)
    }

    /// `sigma_beta(c) = <beta, c> / l_gamma(c)`.
    pub fn slope_of_class(&self, c: &GClass) -> Result<BigRational> {
        let len = self.gamma_length(c)?;
        if len.is_zero() {
            return Err(Error::ZeroGammaLength);
        }
        Ok(self.beta_pairing(c)? / len)
    }

    pub fn slope(&self, v: &Representation) -> Result<BigRational> {
        self.slope_of_class(&g_class(v))
    }

    pub(crate) fn check_class(&self, v: &Representation) -> Result<()> {
        let c = g_class(v);
        if c != self.alpha {
            return Err(Error::ClassMismatch {
                expected: self.alpha.to_string(),
                actual: c.to_string(),
            });
        }
        Ok(())
    }
}

/// The value `numerator / sqrt(norm_sq)` of the numerical invariant, kept
/// exact. Ordering compares signs first and then signed squares.
#[derive(Clone, Debug)]
pub struct MuValue {
    pub numerator: BigRational,
    pub norm_sq: BigRational,
}

impl MuValue {
    pub fn new(numerator: BigRational, norm_sq: BigRational) -> Result<Self> {
        if !norm_sq.is_positive() {
            return Err(Error::ZeroNorm);
        }
        Ok(MuValue { numerator, norm_sq })
    }

    /// `sign(mu) * mu^2`, a rational with the same ordering as `mu`.
    pub fn signed_square(&self) -> BigRational {
        let sq = &self.numerator * &self.numerator / &self.norm_sq;
        if self.numerator.is_negative() {
            -sq
        } else {
            sq
        }
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let s = self.signed_square().to_f64().unwrap_or(f64::NAN);
        s.signum() * s.abs().sqrt()
    }
}

impl Ord for MuValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

impl PartialOrd for MuValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for MuValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MuValue {}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/sqrt({})",
            format_rational(&self.numerator),
            format_rational(&self.norm_sq)
        )
    }
}

/// A Z-weighted filtration `0 ⊊ A_1 ⊊ ... ⊊ A_m = V`, where `A_t` is the
/// part of weight `>= weights[t]` and weights strictly decrease.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFiltration {
    weights: Vec<i64>,
    steps: Vec<Subrepresentation>,
}

impl WeightedFiltration {
    pub fn new(v: &Representation, weights: Vec<i64>, steps: Vec<Subrepresentation>) -> Result<Self> {
        if weights.is_empty() || weights.len() != steps.len() {
            return Err(Error::InvalidFiltration(format!(
                "{} weights for {} steps",
                weights.len(),
                steps.len()
            )));
        }
        if weights.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidFiltration("weights must strictly decrease".into()));
        }
        if steps.iter().any(|s| s.dims().len() != v.dims().len() || !s.is_closed_in(v)) {
            return Err(Error::InvalidFiltration("a step is not a subrepresentation".into()));
        }
        if steps[0].is_zero() {
            return Err(Error::InvalidFiltration("first step must be nonzero".into()));
        }
        if steps.windows(2).any(|s| !s[1].contains(&s[0]) || s[1].total_dim() == s[0].total_dim()) {
            return Err(Error::InvalidFiltration("steps must strictly increase".into()));
        }
        if !steps.last().unwrap().is_full() {
            return Err(Error::InvalidFiltration("last step must be the whole object".into()));
        }
        Ok(WeightedFiltration { weights, steps })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn steps(&self) -> &[Subrepresentation] {
        &self.steps
    }

    /// Classes of the graded pieces `A_t / A_{t-1}`.
    pub fn graded_classes(&self) -> Vec<GClass> {
        let mut prev = GClass::zero(self.steps[0].dims().len());
        self.steps
            .iter()
            .map(|s| {
                let c = s.class();
                let d = &c - &prev;
                prev = c;
                d
            })
            .collect()
    }

    /// The associated graded point: one rank-1 weight per graded piece.
    pub fn graded_points(&self) -> Vec<(Vec<i64>, GClass)> {
        self.weights
            .iter()
            .zip(self.graded_classes())
            .map(|(&w, c)| (vec![w], c))
            .collect()
    }

    /// Same steps, weights replaced by `scale * w + shift`.
    pub fn reweighted(&self, scale: i64, shift: i64) -> Result<Self> {
        if scale <= 0 {
            return Err(Error::InvalidFiltration("weight scale must be positive".into()));
        }
        Ok(WeightedFiltration {
            weights: self.weights.iter().map(|w| scale * w + shift).collect(),
            steps: self.steps.clone(),
        })
    }
}

/// `b_gamma(g)(r) = sum over pieces of (w . r)^2 l_gamma(A_w)` for a
/// `Z^h`-graded point given as `(weight vector, class)` pieces.
pub fn b_gamma(
    pairing: &PairingMatrix,
    gamma: &KClass,
    graded: &[(Vec<i64>, GClass)],
    r: &[BigRational],
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (w, c) in graded {
        if w.len() != r.len() {
            return Err(Error::IndexMismatch {
                expected: r.len(),
                actual: w.len(),
            });
        }
        let dot = w
            .iter()
            .zip(r)
            .fold(BigRational::zero(), |acc, (wi, ri)| acc + BigRational::from_integer((*wi).into()) * ri);
        total += &dot * &dot * pairing.gamma_length(gamma, c)?;
    }
    Ok(total)
}

/// `mu_beta` from the graded pieces `(w_t, [gr_t])` of a filtration of an
/// object of class `sd.alpha()`.
pub fn mu_from_pieces(sd: &StabilityData, pieces: &[(i64, GClass)]) -> Result<MuValue> {
    let (num, norm) = mu_parts(sd, pieces)?;
    MuValue::new(num, norm)
}

fn mu_parts(sd: &StabilityData, pieces: &[(i64, GClass)]) -> Result<(BigRational, BigRational)> {
    let len_alpha = sd.gamma_length(&sd.alpha)?;
    let beta_alpha = sd.beta_pairing(&sd.alpha)?;
    let mut num = BigRational::zero();
    let mut norm = BigRational::zero();
    for (w, c) in pieces {
        let w = BigRational::from_integer((*w).into());
        let len = sd.gamma_length(c)?;
        num += &w * (&len_alpha * sd.beta_pairing(c)? - &beta_alpha * &len);
        norm += &w * &w * len;
    }
    Ok((num, norm))
}

/// The numerical invariant of a weighted filtration:
/// `sum_t w_t (l(alpha) <beta, gr_t> - <beta, alpha> l(gr_t)) / sqrt(sum_t w_t^2 l(gr_t))`.
pub fn mu_beta(sd: &StabilityData, f: &WeightedFiltration) -> Result<MuValue> {
    let classes = f.graded_classes();
    let total = classes.iter().fold(GClass::zero(sd.alpha.len()), |acc, c| &acc + c);
    if total != sd.alpha {
        return Err(Error::ClassMismatch {
            expected: sd.alpha.to_string(),
            actual: total.to_string(),
        });
    }
    let pieces: Vec<(i64, GClass)> = f.weights.iter().copied().zip(classes).collect();
    mu_from_pieces(sd, &pieces)
}
