use crate::linalg::{FieldSpec, Matrix, Scalar};

/// A subspace of `F^n` held in canonical form: its basis rows are the
/// nonzero rows of the reduced row echelon form, so two `Subspace` values
/// are equal exactly when they span the same space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let rref = Matrix::from_rows(field, ambient, vectors).rref();
        let rows: Vec<Vec<Scalar>> = (0..rref.rank).map(|r| rref.matrix.row(r).to_vec()).collect();
        Subspace {
            basis: Matrix::from_rows(field, ambient, &rows),
            pivots: rref.pivots,
        }
    }

    /// Builds a subspace from rows already in reduced echelon form.
    pub(crate) fn from_rref_rows(basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Basis as a `dim x ambient` matrix in reduced echelon form.
    pub fn basis_rows(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; the matching unit vectors span a
    /// complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Residual of `v` after clearing the pivot positions with basis rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = f.neg(&out[p]);
            if f.is_zero(&c) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.mul_add(o, &c, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|s| f.is_zero(s))
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Coordinates of a member vector with respect to the canonical basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert!(self.contains(v));
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_vectors(self.field(), self.ambient_dim(), &rows)
    }

    /// Image of this subspace under `m` (a linear map out of the ambient space).
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let rows: Vec<Vec<Scalar>> = (0..self.dim()).map(|r| m.mul_vec(self.basis.row(r))).collect();
        Subspace::from_vectors(self.field(), m.rows(), &rows)
    }

    /// Whether `m` maps this subspace into `target`.
    pub fn maps_into(&self, m: &Matrix, target: &Subspace) -> bool {
        (0..self.dim()).all(|r| target.contains(&m.mul_vec(self.basis.row(r))))
    }
}

/// Number of subspaces of `F_q^n`, saturating at `u128::MAX`.
pub fn count_subspaces(q: u128, n: usize) -> u128 {
    // Row k of the Gaussian binomial triangle: [n choose k]_q.
    let mut row: Vec<u128> = vec![1];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for k in 1..m {
            // [m,k] = [m-1,k-1] + q^k [m-1,k]
            let qk = q.checked_pow(k as u32).unwrap_or(u128::MAX);
            next[k] = row[k - 1].saturating_add(qk.saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u128, |acc, &x| acc.saturating_add(x))
}

/// All subspaces of `F_p^n` in canonical order: by dimension, then pivot
/// set (lexicographic), then free entries counted in base `p`.
///
/// Panics over the rationals.
pub fn all_subspaces(field: FieldSpec, n: usize) -> Vec<Subspace> {
    let p = field.characteristic().expect("subspace enumeration needs a prime field");
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = pivots.clone();
                    (pv[r] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut m = Matrix::zeros(field, k, n);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, field.one());
                }
                for (&(r, c), &d) in free.iter().zip(&digits) {
                    m.set(r, c, Scalar::Fp(d));
                }
                out.push(Subspace::from_rref_rows(m, pivots.clone()));
                if !increment(&mut digits, p) {
                    break;
                }
            }
        }
    }
    out
}

/// Base-`p` odometer; returns false once it wraps around.
pub(crate) fn increment(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
