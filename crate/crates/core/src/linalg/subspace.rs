use super::matrix::{rref, Matrix};
use super::scalar::{axpy, Field, Scalar};

/// A subspace of `field^ambient_dim`, stored as the canonical RREF basis.
///
/// Two subspaces are equal iff their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    /// Span of the columns of `m` (the image of `m` as a linear map).
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::row_space(&Matrix::from_rows(field, ambient_dim, vectors.to_vec()))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Basis vectors as the rows of an RREF matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis combination that clears the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !r[p].is_zero() {
                let c = -&r[p];
                axpy(&mut r, &c, self.basis.row(i));
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the stored basis, `None` if `v` is outside the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the stored basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.field().zeros(self.ambient_dim);
        for (i, c) in coords.iter().enumerate() {
            axpy(&mut v, c, self.basis.row(i));
        }
        v
    }

    /// `ambient_dim × dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }
}

/// Null space `{v : m v = 0}` in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    let field = m.field();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = field.zeros(m.cols());
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            v
        })
        .collect();
    Subspace::span(field, m.cols(), &vectors)
}

/// `V / relations`, with the quotient basis indexed by the non-pivot coordinates
/// of the relation RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient_dim: usize,
    relations: Subspace,
    basis_coordinates: Vec<usize>,
    projection: Matrix,
    section: Matrix,
}

impl QuotientSpace {
    pub fn new(relations: Subspace) -> Self {
        let field = relations.field();
        let n = relations.ambient_dim();
        let mut is_pivot = vec![false; n];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut position = vec![usize::MAX; n];
        for (q, &c) in free.iter().enumerate() {
            position[c] = q;
        }
        let mut projection = Matrix::zeros(field, free.len(), n);
        let mut section = Matrix::zeros(field, n, free.len());
        for (q, &c) in free.iter().enumerate() {
            projection.set(q, c, field.one());
            section.set(c, q, field.one());
        }
        for (i, &p) in relations.pivots().iter().enumerate() {
            let row = relations.basis().row(i);
            for (q, &c) in free.iter().enumerate() {
                if !row[c].is_zero() {
                    projection.set(q, p, -&row[c]);
                }
            }
        }
        QuotientSpace { ambient_dim: n, relations, basis_coordinates: free, projection, section }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis_coordinates.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient coordinates whose images form the quotient basis.
    pub fn basis_coordinates(&self) -> &[usize] {
        &self.basis_coordinates
    }

    /// `dim × ambient_dim`
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `ambient_dim × dim`, a right inverse of the projection.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }

    /// Transports an endomorphism of the ambient space that preserves the relations.
    pub fn induced(&self, map: &Matrix) -> Matrix {
        self.projection.mul(map).mul(&self.section)
    }
}

pub fn quotient(relations: Subspace) -> QuotientSpace {
    QuotientSpace::new(relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn v(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let f = q();
        assert!(kernel(&Matrix::identity(f, 3)).is_zero());
        let k = kernel(&Matrix::from_i64(f, &[&[1, 1]]));
        assert_eq!(k.basis_vectors(), vec![v(f, &[1, -1])]);
        // Elimination oracle: x - z = 0, y + 2z = 0 from [[1,2,3],[4,5,6]].
        let k = kernel(&Matrix::from_i64(f, &[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_vectors(), vec![v(f, &[1, -2, 1])]);
    }

    #[test]
    fn quotient_examples() {
        let f = q();
        let qs = quotient(Subspace::span(f, 2, &[v(f, &[0, 1])]));
        assert_eq!(qs.dim(), 1);
        assert_eq!(qs.projection(), &Matrix::from_i64(f, &[&[1, 0]]));
        assert_eq!(quotient(Subspace::full(f, 1)).dim(), 0);
        let qs = quotient(Subspace::span(f, 3, &[v(f, &[1, 1, 0]), v(f, &[0, 1, 1])]));
        assert_eq!(qs.dim(), 1);
        assert!(qs.projection().mul(qs.section()).is_identity());
        assert!(qs.project(&v(f, &[1, 1, 0])).iter().all(Scalar::is_zero));
        assert!(qs.project(&v(f, &[0, 1, 1])).iter().all(Scalar::is_zero));
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = q();
        let s = Subspace::span(f, 3, &[v(f, &[1, 2, 0]), v(f, &[0, 1, 1])]);
        let w = v(f, &[2, 5, 1]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.combine(&c), w);
        assert!(s.coordinates(&v(f, &[0, 0, 1])).is_none());
    }
}
