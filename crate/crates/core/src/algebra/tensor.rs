use super::bimodule::{check_bimodule_map, same_algebra, Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Field, Matrix, QuotientSpace, Scalar, Subspace};

/// A bilinear map `M × N → P` given by its values on basis pairs.
///
/// This is the portable encoding of every map out of a tensor product:
/// values are attached to pure tensors `m_i ⊗ n_j`, never to a quotient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    left_dim: usize,
    right_dim: usize,
    target_dim: usize,
    values: Vec<Vec<Scalar>>,
}

impl PairTable {
    pub fn new(left_dim: usize, right_dim: usize, target_dim: usize, values: Vec<Vec<Scalar>>) -> Result<Self> {
        if values.len() != left_dim * right_dim {
            return Err(Error::DimensionMismatch {
                context: "pairing table entries".into(),
                expected: left_dim * right_dim,
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.len() != target_dim) {
            return Err(Error::DimensionMismatch {
                context: "pairing table value".into(),
                expected: target_dim,
                found: v.len(),
            });
        }
        Ok(PairTable { left_dim, right_dim, target_dim, values })
    }

    pub fn from_fn(left_dim: usize, right_dim: usize, target_dim: usize, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Self {
        let values = (0..left_dim * right_dim).map(|ij| f(ij / right_dim.max(1), ij % right_dim.max(1))).collect();
        PairTable::new(left_dim, right_dim, target_dim, values).expect("consistent shape")
    }

    /// `(m, b) ↦ m·b` for a bimodule `M` over right algebra `B` (as a `B` basis table).
    pub fn right_action(m: &Bimodule) -> Self {
        let n = m.right_algebra().dim();
        PairTable::from_fn(m.dim(), n, m.dim(), |i, j| m.right_action(j).column(i))
    }

    /// `(a, m) ↦ a·m`
    pub fn left_action(m: &Bimodule) -> Self {
        let n = m.left_algebra().dim();
        PairTable::from_fn(n, m.dim(), m.dim(), |i, j| m.left_action(i).column(j))
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn value(&self, i: usize, j: usize) -> &[Scalar] {
        &self.values[i * self.right_dim + j]
    }

    pub fn value_mut(&mut self, i: usize, j: usize) -> &mut Vec<Scalar> {
        &mut self.values[i * self.right_dim + j]
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    /// Bilinear extension.
    pub fn eval(&self, field: Field, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = field.zeros(self.target_dim);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    axpy(&mut out, &(a * b), self.value(i, j));
                }
            }
        }
        out
    }

    /// `eval(e_i, v)`
    pub fn eval_left_basis(&self, field: Field, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = field.zeros(self.target_dim);
        for (j, b) in v.iter().enumerate() {
            axpy(&mut out, b, self.value(i, j));
        }
        out
    }

    /// `eval(u, e_j)`
    pub fn eval_right_basis(&self, field: Field, u: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = field.zeros(self.target_dim);
        for (i, a) in u.iter().enumerate() {
            axpy(&mut out, a, self.value(i, j));
        }
        out
    }

    /// The induced linear map on `M ⊗_k N` (column `i * right_dim + j`).
    pub fn matrix(&self, field: Field) -> Matrix {
        Matrix::from_columns(field, self.target_dim, &self.values)
    }
}

/// `M ⊗_B N` for an `A`-`B`-bimodule `M` and a `B`-`C`-bimodule `N`, realized as the
/// quotient of `M ⊗_k N` by the balancing relations.
#[derive(Clone, Debug)]
pub struct TensorOverAlgebra {
    left: Bimodule,
    right: Bimodule,
    carrier: QuotientSpace,
    result: Bimodule,
}

impl TensorOverAlgebra {
    pub fn new(left: &Bimodule, right: &Bimodule) -> Result<Self> {
        if !same_algebra(left.right_algebra(), right.left_algebra()) {
            return Err(Error::AlgebraMismatch("tensor product over mismatched middle algebras".into()));
        }
        let field = left.field();
        let (dm, dn) = (left.dim(), right.dim());
        let middle = left.right_algebra();
        let mut relations = Vec::new();
        for t in 0..middle.dim() {
            let rb = left.right_action(t);
            let lb = right.left_action(t);
            for i in 0..dm {
                for j in 0..dn {
                    // (m_i·b_t) ⊗ n_j − m_i ⊗ (b_t·n_j)
                    let mut rel = field.zeros(dm * dn);
                    for k in 0..dm {
                        let c = rb.get(k, i);
                        if !c.is_zero() {
                            rel[k * dn + j] += c;
                        }
                    }
                    for l in 0..dn {
                        let c = lb.get(l, j);
                        if !c.is_zero() {
                            rel[i * dn + l] -= c;
                        }
                    }
                    relations.push(rel);
                }
            }
        }
        let carrier = QuotientSpace::new(Subspace::span(field, dm * dn, &relations));
        let id_m = Matrix::identity(field, dm);
        let id_n = Matrix::identity(field, dn);
        let left_action = left.left_actions().iter().map(|a| carrier.induced(&a.kron(&id_n))).collect();
        let right_action = right.right_actions().iter().map(|c| carrier.induced(&id_m.kron(c))).collect();
        let result = Bimodule::new(
            left.left_algebra().clone(),
            right.right_algebra().clone(),
            carrier.dim(),
            left_action,
            right_action,
        )?;
        Ok(TensorOverAlgebra { left: left.clone(), right: right.clone(), carrier, result })
    }

    pub fn result(&self) -> &Bimodule {
        &self.result
    }

    pub fn carrier(&self) -> &QuotientSpace {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Coordinates of `m_i ⊗ n_j` in the result.
    pub fn pure(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.carrier.projection().column(i * self.right.dim() + j)
    }

    /// Checks that `table` is balanced; the witness is `(i, t, j)` for `(m_i·b_t, n_j)`.
    pub fn check_balanced(&self, table: &PairTable) -> Result<()> {
        let field = self.result.field();
        self.check_shape(table)?;
        let (dm, dn) = (self.left.dim(), self.right.dim());
        for t in 0..self.left.right_algebra().dim() {
            let rb = self.left.right_action(t);
            let lb = self.right.left_action(t);
            for i in 0..dm {
                for j in 0..dn {
                    let lhs = table.eval_right_basis(field, &rb.column(i), j);
                    let rhs = table.eval_left_basis(field, i, &lb.column(j));
                    if lhs != rhs {
                        return Err(Error::NotBalanced(i, t, j));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_shape(&self, table: &PairTable) -> Result<()> {
        if table.left_dim() != self.left.dim() || table.right_dim() != self.right.dim() {
            return Err(Error::DimensionMismatch {
                context: "pairing table shape".into(),
                expected: self.left.dim() * self.right.dim(),
                found: table.left_dim() * table.right_dim(),
            });
        }
        Ok(())
    }

    /// The unique map `M ⊗_B N → target` with `m_i ⊗ n_j ↦ table(i, j)`, after verifying
    /// that the table is balanced and compatible with the outer actions.
    pub fn factor(&self, table: &PairTable, target: &Bimodule) -> Result<BimoduleMap> {
        self.check_shape(table)?;
        if table.target_dim() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "pairing target".into(),
                expected: target.dim(),
                found: table.target_dim(),
            });
        }
        self.check_balanced(table)?;
        let field = target.field();
        let flat = table.matrix(field);
        let id_m = Matrix::identity(field, self.left.dim());
        let id_n = Matrix::identity(field, self.right.dim());
        if !same_algebra(self.left.left_algebra(), target.left_algebra())
            || !same_algebra(self.right.right_algebra(), target.right_algebra())
        {
            return Err(Error::AlgebraMismatch("pairing target over different algebras".into()));
        }
        for (i, (a, ta)) in self.left.left_actions().iter().zip(target.left_actions()).enumerate() {
            if flat.mul(&a.kron(&id_n)) != ta.mul(&flat) {
                return Err(Error::NotBimoduleMap(format!("left action of basis {i}")));
            }
        }
        for (j, (c, tc)) in self.right.right_actions().iter().zip(target.right_actions()).enumerate() {
            if flat.mul(&id_m.kron(c)) != tc.mul(&flat) {
                return Err(Error::NotBimoduleMap(format!("right action of basis {j}")));
            }
        }
        let matrix = flat.mul(self.carrier.section());
        debug_assert!(check_bimodule_map(&self.result, target, &matrix).is_ok());
        Ok(BimoduleMap { matrix })
    }

    /// Dimension of the space of linear maps out of the quotient that vanish on every
    /// pure tensor; zero means factorizations through the quotient are unique.
    pub fn factorization_freedom(&self) -> usize {
        let rank = self.carrier.projection().rank();
        self.result.dim() - rank
    }
}

impl TensorOverAlgebra {
    /// Coordinates of `m_i ⊗ v` for a vector `v` of the right factor.
    pub fn pure_combination(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.result.field();
        let mut out = field.zeros(self.dim());
        for (j, c) in v.iter().enumerate() {
            axpy(&mut out, c, &self.pure(i, j));
        }
        out
    }
}

/// `M ⊗_B N` together with its universal property.
pub fn tensor_over(left: &Bimodule, right: &Bimodule) -> Result<TensorOverAlgebra> {
    TensorOverAlgebra::new(left, right)
}

/// Factors a balanced bilinear table through `M ⊗_B N`.
pub fn balanced_pairing_to_map(
    left: &Bimodule,
    right: &Bimodule,
    table: &PairTable,
    target: &Bimodule,
) -> Result<(TensorOverAlgebra, BimoduleMap)> {
    let t = TensorOverAlgebra::new(left, right)?;
    let map = t.factor(table, target)?;
    Ok((t, map))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn ground_tensor_ground() {
        let k = Arc::new(Algebra::ground(q()));
        let kk = Bimodule::regular(k);
        assert_eq!(tensor_over(&kk, &kk).unwrap().dim(), 1);
    }

    #[test]
    fn unit_absorption() {
        let f = q();
        let a = Arc::new(Algebra::upper_triangular(f));
        let m = Bimodule::right_regular(a.clone());
        let reg = Bimodule::regular(a.clone());
        let t = tensor_over(&m, &reg).unwrap();
        assert_eq!(t.dim(), m.dim());
        let (_, iso) = balanced_pairing_to_map(&m, &reg, &PairTable::right_action(&m), &m).unwrap();
        assert!(iso.is_invertible());
        // m_i ⊗ 1 chases back to m_i
        for i in 0..m.dim() {
            let pure_unit = t.pure_combination(i, a.unit());
            assert_eq!(iso.matrix.mul_vec(&pure_unit), f.unit_vector(m.dim(), i));
        }
    }

    #[test]
    fn product_algebra_tensor_kills_second_factor() {
        // M = ℚ² with coordinatewise right ℚ×ℚ action, N = ℚ with e1 ↦ 1, e2 ↦ 0.
        let f = q();
        let k = Arc::new(Algebra::ground(f));
        let kk = Arc::new(Algebra::diagonal(f, 2));
        let m = Bimodule::new(
            k.clone(),
            kk.clone(),
            2,
            vec![Matrix::identity(f, 2)],
            vec![Matrix::from_i64(f, &[&[1, 0], &[0, 0]]), Matrix::from_i64(f, &[&[0, 0], &[0, 1]])],
        )
        .unwrap();
        let n = Bimodule::new(
            kk,
            k,
            1,
            vec![Matrix::from_i64(f, &[&[1]]), Matrix::from_i64(f, &[&[0]])],
            vec![Matrix::from_i64(f, &[&[1]])],
        )
        .unwrap();
        let t = tensor_over(&m, &n).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.pure(1, 0).iter().all(Scalar::is_zero));
        assert!(!t.pure(0, 0).iter().all(Scalar::is_zero));

        let unbalanced = PairTable::from_fn(2, 1, 1, |_, _| vec![f.one()]);
        let target = Bimodule::new(
            m.left_algebra().clone(),
            n.right_algebra().clone(),
            1,
            vec![Matrix::from_i64(f, &[&[1]])],
            vec![Matrix::from_i64(f, &[&[1]])],
        )
        .unwrap();
        assert!(matches!(t.factor(&unbalanced, &target), Err(Error::NotBalanced(1, ..))));
    }

    #[test]
    fn multiplication_pairing_is_canonical_iso() {
        let f = q();
        let a = Arc::new(Algebra::gaussian(f));
        let reg = Bimodule::regular(a.clone());
        let mult = PairTable::from_fn(2, 2, 2, |i, j| a.product(i, j).to_vec());
        let (t, map) = balanced_pairing_to_map(&reg, &reg, &mult, &reg).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(map.is_invertible());
        assert_eq!(t.factorization_freedom(), 0);
    }
}

