use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Field, Matrix, Scalar};
use crate::par;

/// Unvalidated structure constants: `mult[i][j]` is the coefficient vector of `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub labels: Vec<String>,
    pub unit: Vec<Scalar>,
    pub mult: Vec<Vec<Vec<Scalar>>>,
}

/// A finite-dimensional unital associative algebra given by structure constants.
#[derive(Clone)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    unit: Vec<Scalar>,
    mult: Vec<Vec<Scalar>>,
    left_regular: Vec<Matrix>,
    right_regular: Vec<Matrix>,
}

impl PartialEq for Algebra {
    /// Structural equality; basis labels are cosmetic.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.unit == other.unit && self.mult == other.mult
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("field", &self.field).field("basis", &self.labels).finish()
    }
}

pub fn validate_algebra(field: Field, raw: &RawAlgebra) -> Result<Algebra> {
    let n = raw.labels.len();
    let dim_err = |context: &str, found| Error::DimensionMismatch { context: context.to_string(), expected: n, found };
    if raw.unit.len() != n {
        return Err(dim_err("unit", raw.unit.len()));
    }
    if raw.mult.len() != n {
        return Err(dim_err("multiplication table rows", raw.mult.len()));
    }
    let mut mult = Vec::with_capacity(n * n);
    for row in &raw.mult {
        if row.len() != n {
            return Err(dim_err("multiplication table columns", row.len()));
        }
        for v in row {
            if v.len() != n {
                return Err(dim_err("product vector", v.len()));
            }
            mult.push(v.clone());
        }
    }
    Algebra::new(field, raw.labels.clone(), raw.unit.clone(), mult)
}

impl Algebra {
    /// Validates associativity on every basis triple and the two-sided unit law.
    pub fn new(field: Field, labels: Vec<String>, unit: Vec<Scalar>, mult: Vec<Vec<Scalar>>) -> Result<Self> {
        let alg = Self::new_unchecked(field, labels, unit, mult);
        alg.check()?;
        Ok(alg)
    }

    fn new_unchecked(field: Field, labels: Vec<String>, unit: Vec<Scalar>, mult: Vec<Vec<Scalar>>) -> Self {
        let n = labels.len();
        assert_eq!(mult.len(), n * n);
        let left_regular = (0..n)
            .map(|i| Matrix::from_columns(field, n, &(0..n).map(|j| mult[i * n + j].clone()).collect::<Vec<_>>()))
            .collect();
        let right_regular = (0..n)
            .map(|j| Matrix::from_columns(field, n, &(0..n).map(|i| mult[i * n + j].clone()).collect::<Vec<_>>()))
            .collect();
        Algebra { field, labels, unit, mult, left_regular, right_regular }
    }

    fn check(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLawViolation(i));
            }
        }
        par::first_failure(n, |i| {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let left = self.right_regular[k].mul_vec(ij);
                    let right = self.left_regular[i].mul_vec(self.product(j, k));
                    if left != right {
                        return Err(Error::NonAssociativeAlgebra(i, j, k));
                    }
                }
            }
            Ok(())
        })
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: Field) -> Self {
        Self::new_unchecked(field, vec!["1".into()], vec![field.one()], vec![vec![field.one()]])
    }

    /// `k[t]/(f)` for monic `f = t^n + c_{n-1} t^{n-1} + … + c_0`, given `[c_0, …, c_{n-1}]`.
    pub fn truncated_polynomial(field: Field, low_coefficients: &[Scalar]) -> Self {
        let n = low_coefficients.len();
        assert!(n > 0, "polynomial degree must be positive");
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        // t^m reduced modulo f, for m < 2n - 1
        let mut powers: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vector(n, i)).collect();
        for m in n..2 * n - 1 {
            let prev = &powers[m - 1];
            let mut next = field.zeros(n);
            next[1..n].clone_from_slice(&prev[..n - 1]);
            let top = prev[n - 1].clone();
            let neg: Vec<Scalar> = low_coefficients.iter().map(|c| -c).collect();
            axpy(&mut next, &top, &neg);
            powers.push(next);
        }
        let mult = (0..n * n).map(|ij| powers[ij / n + ij % n].clone()).collect();
        Self::new_unchecked(field, labels, field.unit_vector(n, 0), mult)
    }

    /// Dual numbers `k[t]/(t²)`.
    pub fn dual_numbers(field: Field) -> Self {
        Self::truncated_polynomial(field, &[field.zero(), field.zero()])
    }

    /// `k[t]/(t² + 1)`; this is ℚ(i) over the rationals.
    pub fn gaussian(field: Field) -> Self {
        Self::truncated_polynomial(field, &[field.one(), field.zero()])
    }

    /// `k × … × k` with `n` orthogonal idempotents.
    pub fn diagonal(field: Field, n: usize) -> Self {
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        let mult = (0..n * n)
            .map(|ij| if ij / n == ij % n { field.unit_vector(n, ij % n) } else { field.zeros(n) })
            .collect();
        let unit = vec![field.one(); n];
        Self::new_unchecked(field, labels, unit, mult)
    }

    /// Upper triangular 2×2 matrices with basis `e11, e12, e22`.
    pub fn upper_triangular(field: Field) -> Self {
        let z = field.zeros(3);
        let e = |i| field.unit_vector(3, i);
        #[rustfmt::skip]
        let mult = vec![
            e(0), e(1), z.clone(),
            z.clone(), z.clone(), e(1),
            z.clone(), z.clone(), e(2),
        ];
        let unit = vec![field.one(), field.zero(), field.one()];
        Self::new_unchecked(field, vec!["e11".into(), "e12".into(), "e22".into()], unit, mult)
    }

    /// The algebra with structure constants given by `product(i, j)`; validated.
    pub fn from_fn(
        field: Field,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        product: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let n = labels.len();
        let mult = (0..n * n).map(|ij| product(ij / n, ij % n)).collect();
        Self::new(field, labels, unit, mult)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim(), i)
    }

    /// Coefficients of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.field.zeros(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), self.product(i, j));
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ e_i v`.
    pub fn left_regular(&self, i: usize) -> &Matrix {
        &self.left_regular[i]
    }

    /// Matrix of `v ↦ v e_j`.
    pub fn right_regular(&self, j: usize) -> &Matrix {
        &self.right_regular[j]
    }

    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.left_regular, a)
    }

    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.right_regular, a)
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let mult = (0..n * n).map(|ij| self.product(ij % n, ij / n).to_vec()).collect();
        Self::new_unchecked(self.field, self.labels.clone(), self.unit.clone(), mult)
    }

    /// The raw table, for serialization.
    pub fn to_raw(&self) -> RawAlgebra {
        let n = self.dim();
        RawAlgebra {
            labels: self.labels.clone(),
            unit: self.unit.clone(),
            mult: (0..n).map(|i| (0..n).map(|j| self.product(i, j).to_vec()).collect()).collect(),
        }
    }
}

/// `Σ coeffs[i] · mats[i]`
pub(crate) fn combine(field: Field, n: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let (rows, cols) = mats.first().map_or((n, n), |m| (m.rows(), m.cols()));
    let mut out = Matrix::zeros(field, rows, cols);
    for (m, c) in mats.iter().zip(coeffs) {
        out.add_scaled(c, m);
    }
    out
}

/// A unital algebra homomorphism `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::NotAlgebraHom("matrix shape".into()));
        }
        if matrix.mul_vec(source.unit()) != target.unit() {
            return Err(Error::NotAlgebraHom("unit not preserved".into()));
        }
        let n = source.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| matrix.column(i)).collect();
        for i in 0..n {
            for j in 0..n {
                if matrix.mul_vec(source.product(i, j)) != target.mul(&images[i], &images[j]) {
                    return Err(Error::NotAlgebraHom(format!("product of basis {i} and {j} not preserved")));
                }
            }
        }
        Ok(AlgebraHom { source, target, matrix })
    }

    pub fn identity(alg: Arc<Algebra>) -> Self {
        let matrix = Matrix::identity(alg.field(), alg.dim());
        AlgebraHom { source: alg.clone(), target: alg, matrix }
    }

    /// The unit map `k → A`.
    pub fn unit_inclusion(ground: Arc<Algebra>, alg: Arc<Algebra>) -> Result<Self> {
        let matrix = Matrix::from_columns(alg.field(), alg.dim(), &[alg.unit().to_vec()]);
        AlgebraHom::new(ground, alg, matrix)
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(a)
    }

    /// `self ∘ other`
    pub fn after(&self, other: &AlgebraHom) -> AlgebraHom {
        AlgebraHom {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }
}
