use std::sync::Arc;

use super::structure::{combine, Algebra, AlgebraHom};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Field, Matrix, QuotientSpace, Scalar, Subspace};
use crate::par;

/// An `A`-`B`-bimodule, finite-dimensional over `k`.
///
/// Actions are matrices on column vectors: `a·m = left_action[a] m` and
/// `m·b = right_action[b] m`. A right module is a bimodule whose left algebra is `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Bimodule {
    /// Validates both representation laws and that the actions commute.
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(left, right, dim, left_action, right_action)?;
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        let shape = |context: &str, expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { context: context.to_string(), expected, found })
            }
        };
        shape("left action count", left.dim(), left_action.len())?;
        shape("right action count", right.dim(), right_action.len())?;
        for m in left_action.iter().chain(&right_action) {
            shape("action matrix rows", dim, m.rows())?;
            shape("action matrix columns", dim, m.cols())?;
        }
        Ok(Bimodule { left, right, dim, left_action, right_action })
    }

    fn check(&self) -> Result<()> {
        let id = Matrix::identity(self.field(), self.dim);
        let (l, r) = (&self.left, &self.right);
        if self.left_matrix(l.unit()) != id {
            return Err(Error::LeftActionNotRepresentation("unit".into()));
        }
        if self.right_matrix(r.unit()) != id {
            return Err(Error::RightActionNotRepresentation("unit".into()));
        }
        par::first_failure(l.dim(), |i| {
            for j in 0..l.dim() {
                if self.left_matrix(l.product(i, j)) != self.left_action[i].mul(&self.left_action[j]) {
                    return Err(Error::LeftActionNotRepresentation(format!("({i}, {j})")));
                }
            }
            Ok(())
        })?;
        par::first_failure(r.dim(), |i| {
            for j in 0..r.dim() {
                if self.right_matrix(r.product(i, j)) != self.right_action[j].mul(&self.right_action[i]) {
                    return Err(Error::RightActionNotRepresentation(format!("({i}, {j})")));
                }
            }
            Ok(())
        })?;
        par::first_failure(l.dim(), |i| {
            for j in 0..r.dim() {
                let (a, b) = (&self.left_action[i], &self.right_action[j]);
                if a.mul(b) != b.mul(a) {
                    return Err(Error::ActionsDoNotCommute(i, j));
                }
            }
            Ok(())
        })
    }

    /// `A` as an `A`-`A`-bimodule: the identity 1-morphism on `A`.
    pub fn regular(alg: Arc<Algebra>) -> Self {
        let n = alg.dim();
        Bimodule {
            left_action: (0..n).map(|i| alg.left_regular(i).clone()).collect(),
            right_action: (0..n).map(|i| alg.right_regular(i).clone()).collect(),
            dim: n,
            left: alg.clone(),
            right: alg,
        }
    }

    /// `A` as a right module over itself (left algebra `k`).
    pub fn right_regular(alg: Arc<Algebra>) -> Self {
        let n = alg.dim();
        let ground = Arc::new(Algebra::ground(alg.field()));
        Bimodule {
            left_action: vec![Matrix::identity(alg.field(), n)],
            right_action: (0..n).map(|i| alg.right_regular(i).clone()).collect(),
            dim: n,
            left: ground,
            right: alg,
        }
    }

    /// `_A A_B` with `B` acting on the right through `hom: B → A`.
    pub fn right_via(hom: &AlgebraHom) -> Self {
        let a = hom.target().clone();
        let b = hom.source().clone();
        Bimodule {
            left_action: (0..a.dim()).map(|i| a.left_regular(i).clone()).collect(),
            right_action: (0..b.dim()).map(|j| a.right_mult_matrix(&hom.apply(&b.basis_vector(j)))).collect(),
            dim: a.dim(),
            left: a,
            right: b,
        }
    }

    /// `_B A_A` with `B` acting on the left through `hom: B → A`.
    pub fn left_via(hom: &AlgebraHom) -> Self {
        let a = hom.target().clone();
        let b = hom.source().clone();
        Bimodule {
            left_action: (0..b.dim()).map(|j| a.left_mult_matrix(&hom.apply(&b.basis_vector(j)))).collect(),
            right_action: (0..a.dim()).map(|i| a.right_regular(i).clone()).collect(),
            dim: a.dim(),
            left: b,
            right: a,
        }
    }

    pub fn zero(left: Arc<Algebra>, right: Arc<Algebra>) -> Self {
        let f = left.field();
        Bimodule {
            left_action: vec![Matrix::zeros(f, 0, 0); left.dim()],
            right_action: vec![Matrix::zeros(f, 0, 0); right.dim()],
            dim: 0,
            left,
            right,
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if !same_algebra(&self.left, &other.left) || !same_algebra(&self.right, &other.right) {
            return Err(Error::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
        }
        let f = self.field();
        let sum = |a: &[Matrix], b: &[Matrix]| {
            a.iter().zip(b).map(|(x, y)| Matrix::block_diagonal(f, &[x.clone(), y.clone()])).collect()
        };
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim + other.dim,
            left_action: sum(&self.left_action, &other.left_action),
            right_action: sum(&self.right_action, &other.right_action),
        })
    }

    /// Conjugates every action by the invertible change of basis `g` (new = g · old · g⁻¹).
    pub fn transport(&self, g: &Matrix) -> Option<Bimodule> {
        let gi = g.inverse()?;
        let conj = |m: &Matrix| g.mul(m).mul(&gi);
        Some(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim,
            left_action: self.left_action.iter().map(conj).collect(),
            right_action: self.right_action.iter().map(conj).collect(),
        })
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action(&self, j: usize) -> &Matrix {
        &self.right_action[j]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.left_action, a)
    }

    pub fn right_matrix(&self, b: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.right_action, b)
    }

    /// `v · b`
    pub fn act_right(&self, v: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.right_matrix(b).mul_vec(v)
    }

    /// `a · v`
    pub fn act_left(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.left_matrix(a).mul_vec(v)
    }

    pub fn is_right_module(&self) -> bool {
        self.left.dim() == 1
    }

    /// Whether `s` is closed under both actions.
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis_vectors().iter().all(|v| {
            self.left_action.iter().chain(&self.right_action).all(|m| s.contains(&m.mul_vec(v)))
        })
    }

    /// The sub-bimodule on `s`, in the coordinates of the RREF basis of `s`.
    pub fn restrict_to(&self, s: &Subspace) -> Result<Bimodule> {
        let basis = s.basis_vectors();
        let restrict = |m: &Matrix| -> Result<Matrix> {
            let cols = basis
                .iter()
                .map(|v| s.coordinates(&m.mul_vec(v)).ok_or(Error::NotSubmodule))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(self.field(), s.dim(), &cols))
        };
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: s.dim(),
            left_action: self.left_action.iter().map(restrict).collect::<Result<_>>()?,
            right_action: self.right_action.iter().map(restrict).collect::<Result<_>>()?,
        })
    }

    /// The quotient bimodule by the sub-bimodule `s`, together with its quotient space.
    pub fn quotient_by(&self, s: &Subspace) -> Result<(Bimodule, QuotientSpace)> {
        if !self.is_submodule(s) {
            return Err(Error::NotSubmodule);
        }
        let q = QuotientSpace::new(s.clone());
        let induce = |m: &Matrix| q.induced(m);
        let module = Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: q.dim(),
            left_action: self.left_action.iter().map(induce).collect(),
            right_action: self.right_action.iter().map(induce).collect(),
        };
        Ok((module, q))
    }

    /// Smallest sub-bimodule containing `vectors`.
    pub fn generated_submodule(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut span = Subspace::span(self.field(), self.dim, vectors);
        loop {
            let mut grown = span.basis_vectors();
            for v in span.basis_vectors() {
                for m in self.left_action.iter().chain(&self.right_action) {
                    grown.push(m.mul_vec(&v));
                }
            }
            let next = Subspace::span(self.field(), self.dim, &grown);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }
}

/// A bimodule homomorphism `source → target`, as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    pub matrix: Matrix,
}

impl BimoduleMap {
    pub fn new(source: &Bimodule, target: &Bimodule, matrix: Matrix) -> Result<Self> {
        check_bimodule_map(source, target, &matrix)?;
        Ok(BimoduleMap { matrix })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_square() && self.matrix.rank() == self.matrix.rows()
    }
}

/// Checks that `matrix` intertwines both actions.
pub fn check_bimodule_map(source: &Bimodule, target: &Bimodule, matrix: &Matrix) -> Result<()> {
    if !same_algebra(&source.left, &target.left) || !same_algebra(&source.right, &target.right) {
        return Err(Error::AlgebraMismatch("bimodule map between different algebras".into()));
    }
    if matrix.rows() != target.dim || matrix.cols() != source.dim {
        return Err(Error::NotBimoduleMap("matrix shape".into()));
    }
    for (i, (s, t)) in source.left_action.iter().zip(&target.left_action).enumerate() {
        if matrix.mul(s) != t.mul(matrix) {
            return Err(Error::NotBimoduleMap(format!("left action of basis {i}")));
        }
    }
    for (j, (s, t)) in source.right_action.iter().zip(&target.right_action).enumerate() {
        if matrix.mul(s) != t.mul(matrix) {
            return Err(Error::NotBimoduleMap(format!("right action of basis {j}")));
        }
    }
    Ok(())
}

/// Space of bimodule maps `m → n`, as row-major vectorized `n.dim × m.dim` matrices.
pub fn module_hom_space(m: &Bimodule, n: &Bimodule) -> Result<Subspace> {
    if !same_algebra(&m.left, &n.left) || !same_algebra(&m.right, &n.right) {
        return Err(Error::AlgebraMismatch("hom space between bimodules over different algebras".into()));
    }
    let actions: Vec<(&Matrix, &Matrix)> = m
        .left_action
        .iter()
        .zip(&n.left_action)
        .chain(m.right_action.iter().zip(&n.right_action))
        .collect();
    Ok(kernel(&intertwiner_system(m.field(), m.dim, n.dim, &actions)))
}

/// Linear system whose solutions `X` (row-major, `rows_out × cols_in`) satisfy `X S = T X` for each pair.
pub(crate) fn intertwiner_system(field: Field, dim_in: usize, dim_out: usize, pairs: &[(&Matrix, &Matrix)]) -> Matrix {
    let unknowns = dim_in * dim_out;
    let mut rows = Vec::new();
    for (s, t) in pairs {
        for r in 0..dim_out {
            for c in 0..dim_in {
                let mut eq = field.zeros(unknowns);
                // (X S)[r][c] = Σ_k X[r][k] S[k][c]
                for k in 0..dim_in {
                    let x = s.get(k, c);
                    if !x.is_zero() {
                        eq[r * dim_in + k] += x;
                    }
                }
                // − (T X)[r][c] = − Σ_k T[r][k] X[k][c]
                for k in 0..dim_out {
                    let x = t.get(r, k);
                    if !x.is_zero() {
                        eq[k * dim_in + c] -= x;
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    Matrix::from_rows(field, unknowns, rows)
}

/// Reshapes a row-major vectorized matrix.
pub fn unvectorize(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_rows(field, cols, v.chunks(cols.max(1)).take(rows).map(<[Scalar]>::to_vec).collect())
}
