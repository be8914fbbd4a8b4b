//! Scalars and the two kinds of ground field supported: the rationals and
//! prime fields `F_p` with `p <= 2^31`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest characteristic accepted for a prime field.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FieldKind {
    Rationals,
    Prime(u32),
}

/// The ground field of a computation.
///
/// Prime fields are validated on construction, so holding a `FieldSpec`
/// means the characteristic is known to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    kind: FieldKind,
}

/// A field element. Rationals are always fully reduced (guaranteed by
/// `BigRational`); prime-field elements are canonical residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u32),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{}", format_rational(q)),
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            kind: FieldKind::Prime(p as u32),
        })
    }

    /// The characteristic `p`, or `None` for the rationals.
    pub fn characteristic(&self) -> Option<u32> {
        match self.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(p),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.kind, FieldKind::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Q(BigRational::zero()),
            FieldKind::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Q(BigRational::one()),
            FieldKind::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Q(BigRational::from_integer(n.into())),
            FieldKind::Prime(p) => Scalar::Fp(n.rem_euclid(p as i64) as u32),
        }
    }

    /// Maps a rational into this field; fails over `F_p` when `p` divides
    /// the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.kind {
            FieldKind::Rationals => Ok(Scalar::Q(q.clone())),
            FieldKind::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |n: &BigInt| n.mod_floor(&pb).to_u64().unwrap_or(0);
                let num = reduce(q.numer());
                let den = reduce(q.denom());
                if den == 0 {
                    return Err(Error::DenominatorNotInvertible {
                        value: format_rational(q),
                        p,
                    });
                }
                let inv = pow_mod(den, p as u64 - 2, p as u64);
                Ok(Scalar::Fp((num * inv % p as u64) as u32))
            }
        }
    }

    /// Whether `s` is a well-formed element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self.kind, s) {
            (FieldKind::Rationals, Scalar::Q(_)) => true,
            (FieldKind::Prime(p), Scalar::Fp(x)) => *x < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.modulus();
                Scalar::Fp(((*x as u64 + *y as u64) % p) as u32)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Q(x) => Scalar::Q(-x),
            Scalar::Fp(x) => {
                let p = self.modulus();
                Scalar::Fp(((p - *x as u64) % p) as u32)
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.modulus();
                Scalar::Fp((*x as u64 * *y as u64 % p) as u32)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match a {
            Scalar::Q(x) => Scalar::Q(x.recip()),
            Scalar::Fp(x) => {
                let p = self.modulus();
                Scalar::Fp(pow_mod(*x as u64, p - 2, p) as u32)
            }
        })
    }

    /// `a + b * c`, the elimination kernel.
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        match (a, b, c) {
            (Scalar::Fp(x), Scalar::Fp(y), Scalar::Fp(z)) => {
                let p = self.modulus();
                Scalar::Fp(((*x as u64 + *y as u64 * *z as u64 % p) % p) as u32)
            }
            _ => self.add(a, &self.mul(b, c)),
        }
    }

    /// All elements of a prime field in canonical order `0, 1, ..., p-1`.
    /// Returns `None` over the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        self.characteristic().map(|p| (0..p).map(Scalar::Fp))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u128> {
        self.characteristic().map(u128::from)
    }

    fn modulus(&self) -> u64 {
        match self.kind {
            FieldKind::Prime(p) => p as u64,
            FieldKind::Rationals => panic!("prime-field operation over the rationals"),
        }
    }
}

impl Scalar {
    /// Converts a scalar to a rational representative (`F_p` residues map to
    /// their canonical integer lift).
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Q(q) => q.clone(),
            Scalar::Fp(x) => BigRational::from_integer((*x).into()),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `F<p>` (e.g. `F2`, `F3`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::rationals());
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}
