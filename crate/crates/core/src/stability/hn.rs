use std::cmp::Ordering;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ktheory::{g_class, GClass};
use crate::quiver::{subquotient, Representation, Subrepresentation};
use crate::stability::{enumerate_subreps, SearchConfig, StabilityData};

/// Picks, among subrepresentations strictly containing `floor`, the one
/// whose quotient by `floor` has maximal slope and, among those, maximal
/// gamma-length. Returns it with its relative class and slope.
fn maximal_destabilizing(
    sd: &StabilityData,
    subs: &[Subrepresentation],
    floor: &Subrepresentation,
) -> Result<Option<(Subrepresentation, GClass, BigRational)>> {
    let base = floor.class();
    let mut best: Option<(usize, GClass, BigRational, BigRational)> = None;
    for (idx, e) in subs.iter().enumerate() {
        if e.total_dim() == floor.total_dim() || !e.contains(floor) {
            continue;
        }
        let c = &e.class() - &base;
        let slope = sd.slope_of_class(&c)?;
        let len = sd.gamma_length(&c)?;
        let better = match &best {
            None => true,
            Some((_, _, s, l)) => match slope.cmp(s) {
                Ordering::Greater => true,
                Ordering::Equal => len > *l,
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((idx, c, slope, len));
        }
    }
    Ok(best.map(|(idx, c, s, _)| (subs[idx].clone(), c, s)))
}

fn require_nonzero_prime(v: &Representation) -> Result<()> {
    if !v.field().is_prime_field() {
        return Err(Error::NotPrimeField);
    }
    if v.is_zero() {
        return Err(Error::ZeroGammaLength);
    }
    Ok(())
}

/// Exhaustively looks for a subobject `E` with `sigma(E) > sigma(V)`.
/// When one exists, the maximal destabilizing subobject is returned.
pub fn destabilizer_search(
    sd: &StabilityData,
    v: &Representation,
    cfg: &SearchConfig,
) -> Result<Option<Subrepresentation>> {
    require_nonzero_prime(v)?;
    sd.check_class(v)?;
    let own = sd.slope(v)?;
    let subs = enumerate_subreps(v, cfg)?;
    let zero = Subrepresentation::zero(v);
    Ok(maximal_destabilizing(sd, &subs, &zero)?
        .filter(|(_, _, s)| *s > own)
        .map(|(e, _, _)| e))
}

/// Semistability together with a destabilizing subobject when it fails.
pub fn is_semistable(
    sd: &StabilityData,
    v: &Representation,
    cfg: &SearchConfig,
) -> Result<(bool, Option<Subrepresentation>)> {
    let cert = destabilizer_search(sd, v, cfg)?;
    Ok((cert.is_none(), cert))
}

/// The Harder–Narasimhan filtration `0 ⊊ A_1 ⊊ ... ⊊ A_m = V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNFiltration {
    steps: Vec<Subrepresentation>,
    hn_type: Vec<(GClass, BigRational)>,
}

impl HNFiltration {
    pub fn steps(&self) -> &[Subrepresentation] {
        &self.steps
    }

    /// `(class of A_t / A_{t-1}, its slope)` for each step.
    pub fn hn_type(&self) -> &[(GClass, BigRational)] {
        &self.hn_type
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_semistable_type(&self) -> bool {
        self.steps.len() == 1
    }

    /// The graded pieces `A_t / A_{t-1}` as representations.
    pub fn graded_pieces(&self, v: &Representation) -> Result<Vec<Representation>> {
        let mut prev = Subrepresentation::zero(v);
        let mut out = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            out.push(subquotient(v, s, &prev)?);
            prev = s.clone();
        }
        Ok(out)
    }

    /// Re-checks the defining properties: strictly decreasing slopes, classes
    /// summing to `[V]`, and each graded piece semistable.
    pub fn verify(&self, sd: &StabilityData, v: &Representation, cfg: &SearchConfig) -> Result<bool> {
        if self.hn_type.windows(2).any(|w| w[0].1 <= w[1].1) {
            return Ok(false);
        }
        let total = self
            .hn_type
            .iter()
            .fold(GClass::zero(v.dims().len()), |acc, (c, _)| &acc + c);
        if total != g_class(v) || !self.steps.last().is_some_and(Subrepresentation::is_full) {
            return Ok(false);
        }
        for (piece, (c, slope)) in self.graded_pieces(v)?.iter().zip(&self.hn_type) {
            if g_class(piece) != *c || sd.slope_of_class(c)? != *slope {
                return Ok(false);
            }
            let piece_sd = sd.for_class(c.clone())?;
            if !is_semistable(&piece_sd, piece, cfg)?.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Builds the HN filtration by repeatedly taking the maximal destabilizing
/// subobject of the current quotient (worked inside `V` as subobjects
/// containing the previous step).
pub fn hn_filtration(sd: &StabilityData, v: &Representation, cfg: &SearchConfig) -> Result<HNFiltration> {
    require_nonzero_prime(v)?;
    sd.check_class(v)?;
    let subs = enumerate_subreps(v, cfg)?;
    let mut floor = Subrepresentation::zero(v);
    let mut steps = Vec::new();
    let mut hn_type = Vec::new();
    while !floor.is_full() {
        let (next, c, slope) =
            maximal_destabilizing(sd, &subs, &floor)?.expect("the whole object strictly contains a proper step");
        floor = next.clone();
        steps.push(next);
        hn_type.push((c, slope));
    }
    Ok(HNFiltration { steps, hn_type })
}
