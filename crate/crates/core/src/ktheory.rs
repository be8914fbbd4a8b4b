//! Grothendieck groups on the bases of simples and indecomposable
//! projectives, the Euler pairing between them, and gamma-lengths.

use std::fmt;
use std::ops::{Add, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, FieldSpec};
use crate::quiver::{hom_basis, AlgebraPresentation, Representation};
use crate::structure;

/// An integer class in the basis `{[S_i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GClass(Vec<i64>);

/// A rational class in the basis `{[P_i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KClass(Vec<BigRational>);

impl GClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        GClass(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        GClass(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        GClass(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `J_alpha`: indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// Sum of coefficients (the length of an object of this class).
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Add for &GClass {
    type Output = GClass;
    fn add(self, rhs: &GClass) -> GClass {
        assert_eq!(self.len(), rhs.len(), "class index mismatch");
        GClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GClass {
    type Output = GClass;
    fn sub(self, rhs: &GClass) -> GClass {
        assert_eq!(self.len(), rhs.len(), "class index mismatch");
        GClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl KClass {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        KClass(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        KClass(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        KClass(vec![BigRational::zero(); n])
    }

    /// The class `[P_i]`.
    pub fn projective(n: usize, i: usize) -> Self {
        let mut k = KClass::zero(n);
        k.0[i] = BigRational::one();
        k
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &BigRational) -> KClass {
        KClass(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        assert_eq!(self.len(), rhs.len(), "class index mismatch");
        KClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The G-theory class of a representation (its Jordan–Hölder
/// multiplicities, which equal the dimension vector here).
pub fn g_class(v: &Representation) -> GClass {
    v.dim_vector()
}

/// The matrix `<P_i, S_j>` computed from Hom dimensions. It is diagonal, and
/// its diagonal entries `tau_i` scale the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl PairingMatrix {
    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn taus(&self) -> Vec<BigRational> {
        (0..self.size()).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn tau(&self, i: usize) -> &BigRational {
        &self.entries[i][i]
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.size() {
            return Err(Error::IndexMismatch {
                expected: self.size(),
                actual: n,
            });
        }
        Ok(())
    }

    /// `<beta, alpha> = sum_i beta_i tau_i alpha_i`.
    pub fn pairing(&self, beta: &KClass, alpha: &GClass) -> Result<BigRational> {
        self.check(beta.len())?;
        self.check(alpha.len())?;
        Ok((0..self.size())
            .map(|i| &beta.0[i] * self.tau(i) * BigRational::from_integer(alpha.0[i].into()))
            .fold(BigRational::zero(), |a, b| a + b))
    }

    /// `l_gamma(alpha) = <gamma, alpha>`; gamma must be nonnegative.
    pub fn gamma_length(&self, gamma: &KClass, alpha: &GClass) -> Result<BigRational> {
        if !gamma.is_nonnegative() {
            return Err(Error::NegativeGamma);
        }
        self.pairing(gamma, alpha)
    }

    /// `sum over i in J_alpha of (1/tau_i) [P_i]`, whose gamma-length is the
    /// ordinary length on every subobject of an object of class `alpha`.
    pub fn canonical_gamma(&self, alpha: &GClass) -> Result<KClass> {
        self.check(alpha.len())?;
        let mut gamma = KClass::zero(self.size());
        for i in alpha.support() {
            gamma.0[i] = self.tau(i).recip();
        }
        Ok(gamma)
    }
}

/// `<P_i, S_j> = dim Hom(P_i, S_j)` for all vertex pairs; fails if the
/// result is not diagonal with positive diagonal.
pub fn dual_basis_matrix(algebra: &std::sync::Arc<AlgebraPresentation>, field: FieldSpec) -> Result<PairingMatrix> {
    let n = algebra.vertex_count();
    let projectives = (0..n)
        .map(|i| structure::projective(algebra, field, i))
        .collect::<Result<Vec<_>>>()?;
    let simples = structure::simples(algebra, field);
    let mut entries = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = hom_basis(&projectives[i], &simples[j])?.len();
            if (i == j) != (d > 0) {
                return Err(Error::NotDiagonal(i, j));
            }
            entries[i][j] = BigRational::from_integer(d.into());
        }
    }
    Ok(PairingMatrix { entries })
}

/// `<beta, V> = sum_i beta_i dim Hom(P_i, V)`, computed through Hom spaces
/// rather than the class of `V`.
pub fn pairing_object(beta: &KClass, v: &Representation) -> Result<BigRational> {
    let n = v.algebra().vertex_count();
    if beta.len() != n {
        return Err(Error::IndexMismatch {
            expected: n,
            actual: beta.len(),
        });
    }
    let mut total = BigRational::zero();
    for (i, b) in beta.0.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let p = structure::projective(v.algebra(), v.field(), i)?;
        let d = hom_basis(&p, v)?.len();
        total += b * BigRational::from_integer(d.into());
    }
    Ok(total)
}

/// Whether `gamma_i > 0` for every `i` in the support of `alpha`.
pub fn is_nondegenerate(gamma: &KClass, alpha: &GClass) -> bool {
    gamma.len() == alpha.len() && alpha.support().iter().all(|&i| gamma.0[i].is_positive())
}

/// The multiplicities `n_j = alpha_j` over `J_alpha`; every object of class
/// `alpha` is a quotient of `⊕ P_j^{n_j}`.
pub fn minimal_cover_vector(alpha: &GClass) -> Result<Vec<(usize, usize)>> {
    if !alpha.is_effective() {
        return Err(Error::NegativeClass);
    }
    Ok(alpha.support().into_iter().map(|j| (j, alpha.0[j] as usize)).collect())
}
