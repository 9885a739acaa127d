//! The (co)modulated category algebra `⊕_α M(α)` and the canonical transformation π.

use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::equivalence::{pi_star, LaxTransformation};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId};
use crate::linalg::{axpy, Field, Scalar};
use crate::modulation::{
    constant_modulation, presheaf_to_comodulation, Modulation, PresheafOfAlgebras, Variance,
};

/// Algebra whose basis is the disjoint union of the block bases, ordered morphism-major.
#[derive(Clone, Debug)]
pub struct ModCatAlgebra {
    source: Arc<Modulation>,
    carrier: Arc<Algebra>,
    grading: Vec<(MorId, usize)>,
    offsets: Vec<usize>,
    idempotents: Vec<Vec<Scalar>>,
}

/// π for a modulated category algebra: the components `M[C]·1_x`.
pub type PiTransformation = LaxTransformation;

impl ModCatAlgebra {
    /// Builds the algebra of a validated modulation or comodulation.
    pub fn new(source: Arc<Modulation>) -> Result<Self> {
        let cat = source.category().clone();
        let field = source.field();
        let mut offsets = Vec::with_capacity(cat.morphism_count() + 1);
        let mut grading = Vec::new();
        let mut labels = Vec::new();
        for f in cat.morphism_ids() {
            offsets.push(grading.len());
            for i in 0..source.block(f).dim() {
                grading.push((f, i));
                labels.push(format!("({},{})", cat.label(f), i));
            }
        }
        offsets.push(grading.len());
        let dim = grading.len();

        let embed = |f: MorId, local: &[Scalar]| -> Vec<Scalar> {
            let mut v = field.zeros(dim);
            v[offsets[f.0]..offsets[f.0 + 1]].clone_from_slice(local);
            v
        };
        let mut mult = Vec::with_capacity(dim * dim);
        for &(u, i) in &grading {
            for &(v, j) in &grading {
                mult.push(match source.multiply(u, v) {
                    Some(w) => embed(w, source.product_table(u, v).expect("composable").value(i, j)),
                    None => field.zeros(dim),
                });
            }
        }
        let idempotents: Vec<Vec<Scalar>> =
            cat.object_ids().map(|x| embed(cat.identity(x), source.algebra(x).unit())).collect();
        let mut unit = field.zeros(dim);
        for e in &idempotents {
            axpy(&mut unit, &field.one(), e);
        }
        let carrier = Arc::new(Algebra::new(field, labels, unit, mult)?);
        Ok(ModCatAlgebra { source, carrier, grading, offsets, idempotents })
    }

    pub fn source(&self) -> &Arc<Modulation> {
        &self.source
    }

    pub fn carrier(&self) -> &Arc<Algebra> {
        &self.carrier
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        self.source.category()
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `(morphism, local index)` of each basis element.
    pub fn grading(&self) -> &[(MorId, usize)] {
        &self.grading
    }

    pub fn grade(&self, b: usize) -> MorId {
        self.grading[b].0
    }

    /// Basis indices belonging to the block of `f`.
    pub fn block_range(&self, f: MorId) -> std::ops::Range<usize> {
        self.offsets[f.0]..self.offsets[f.0 + 1]
    }

    pub fn idempotent(&self, x: ObjId) -> &[Scalar] {
        &self.idempotents[x.0]
    }

    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    /// Places a vector of the block of `f` into the algebra.
    pub fn embed(&self, f: MorId, local: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.field().zeros(self.dim());
        v[self.block_range(f)].clone_from_slice(local);
        v
    }

    /// Component of `v` in the block of `f`.
    pub fn block_part<'a>(&self, f: MorId, v: &'a [Scalar]) -> &'a [Scalar] {
        &v[self.block_range(f)]
    }

    /// The regular bimodule of the carrier.
    pub fn regular(&self) -> Bimodule {
        Bimodule::regular(self.carrier.clone())
    }

    /// Right `k`-module on the carrier (left algebra the ground field).
    pub fn regular_right_module(&self) -> Bimodule {
        Bimodule::right_regular(self.carrier.clone())
    }

    /// `e_x · A`, the projective right module at `x`, as a submodule of the regular module.
    pub fn projective(&self, x: ObjId) -> Result<Bimodule> {
        let reg = self.regular_right_module();
        let span = reg.generated_submodule(&[self.idempotents[x.0].clone()]);
        reg.restrict_to(&span)
    }
}

pub fn build_mod_cat_algebra(m: &Arc<Modulation>) -> Result<ModCatAlgebra> {
    if m.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch { expected: "covariant" });
    }
    ModCatAlgebra::new(m.clone())
}

pub fn build_comod_cat_algebra(w: &Arc<Modulation>) -> Result<ModCatAlgebra> {
    if w.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch { expected: "contravariant" });
    }
    ModCatAlgebra::new(w.clone())
}

/// `kC`, with `e_α ∗ e_β = e_{βα}` when composable.
pub fn category_algebra(cat: &Arc<FiniteCategory>, field: Field) -> Result<ModCatAlgebra> {
    let k = Arc::new(Algebra::ground(field));
    build_mod_cat_algebra(&Arc::new(constant_modulation(cat, &k, Variance::Covariant)?))
}

/// `R[C]`, cross-checked against `w_β ∗ w_α = R(α)(w_β) · w_α`.
pub fn skew_category_algebra(r: &Arc<PresheafOfAlgebras>) -> Result<ModCatAlgebra> {
    let a = build_comod_cat_algebra(&Arc::new(presheaf_to_comodulation(r)?))?;
    let cat = r.category();
    let field = a.field();
    let n = a.dim();
    crate::par::first_failure(n * n, |ij| {
        let (i, j) = (ij / n, ij % n);
        let ((b, bi), (al, aj)) = (a.grading[i], a.grading[j]);
        let got = a.carrier.product(i, j);
        let expected = match cat.compose(b, al) {
            Some(ba) => {
                let rx = r.algebra(cat.dom(al));
                let ry = r.algebra(cat.cod(al));
                let w = rx.mul(&r.restriction(al).apply(&ry.basis_vector(bi)), &rx.basis_vector(aj));
                a.embed(ba, &w)
            }
            None => field.zeros(n),
        };
        if got == expected.as_slice() {
            Ok(())
        } else {
            Err(Error::SkewProductMismatch(i, j))
        }
    })?;
    Ok(a)
}

/// π: components `A·1_x` of the regular bimodule with multiplication as structure maps.
pub fn build_pi(a: &ModCatAlgebra) -> Result<PiTransformation> {
    Ok(pi_star(a, &a.regular())?.transformation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{free_category, Quiver, RawCategory};
    use crate::linalg::Matrix;
    use crate::modulation::{RawModulation, RawPresheaf};
    use crate::algebra::AlgebraHom;
    use std::collections::BTreeMap;

    fn q() -> Field {
        Field::Rationals
    }

    fn c2() -> Arc<FiniteCategory> {
        Arc::new(RawCategory::new().object("*").morphism("g", "*", "*").compose("g", "g", "1_*").validate().unwrap())
    }

    fn parallel() -> Arc<FiniteCategory> {
        Arc::new(
            RawCategory::new().object("x").object("y").morphism("a", "x", "y").morphism("b", "x", "y").validate().unwrap(),
        )
    }

    /// Structure constants of kC read directly off the composition table.
    fn oracle_category_algebra(cat: &FiniteCategory, field: Field) -> Vec<Vec<Scalar>> {
        let n = cat.morphism_count();
        let mut out = Vec::new();
        for a in cat.morphism_ids() {
            for b in cat.morphism_ids() {
                let mut v = field.zeros(n);
                if let Some(ba) = cat.compose(b, a) {
                    v[ba.0] = field.one();
                }
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn category_algebras_match_composition_table() {
        for cat in [c2(), parallel(), Arc::new(free_category(&Quiver::linear(3)).unwrap())] {
            let a = category_algebra(&cat, q()).unwrap();
            let oracle = oracle_category_algebra(&cat, q());
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert_eq!(a.carrier().product(i, j), oracle[i * a.dim() + j].as_slice());
                }
            }
        }
    }

    #[test]
    fn group_algebra_of_c2() {
        let cat = c2();
        let a = category_algebra(&cat, q()).unwrap();
        assert_eq!(a.dim(), 2);
        let g = cat.find_morphism("g").unwrap().0;
        let one = cat.identity(ObjId(0)).0;
        assert_eq!(a.carrier().product(g, g), q().unit_vector(2, one).as_slice());
    }

    #[test]
    fn a2_species_dimension() {
        let f = q();
        let cat = Arc::new(free_category(&Quiver::linear(2)).unwrap());
        let k = Arc::new(Algebra::ground(f));
        let g = Arc::new(Algebra::gaussian(f));
        let unit = AlgebraHom::unit_inclusion(k.clone(), g.clone()).unwrap();
        let raw = RawModulation {
            category: cat.clone(),
            variance: Variance::Covariant,
            algebras: [(ObjId(0), k), (ObjId(1), g)].into_iter().collect(),
            bimodules: [(cat.find_morphism("a1").unwrap(), Bimodule::left_via(&unit))].into_iter().collect(),
            compositors: BTreeMap::new(),
        };
        let m = Arc::new(Modulation::validate(&raw).unwrap());
        assert_eq!(build_mod_cat_algebra(&m).unwrap().dim(), 5);
    }

    #[test]
    fn skew_algebra_of_parallel_arrows() {
        let cat = parallel();
        let r = Arc::new(PresheafOfAlgebras::constant(&cat, &Arc::new(Algebra::ground(q()))));
        let a = skew_category_algebra(&r).unwrap();
        assert_eq!(a.dim(), 4);
        let (x, y) = (cat.find_object("x").unwrap(), cat.find_object("y").unwrap());
        assert_eq!(a.projective(x).unwrap().dim(), 1);
        assert_eq!(a.projective(y).unwrap().dim(), 3);
        let pi = build_pi(&a).unwrap();
        assert_eq!(pi.component(x).dim(), 3);
        assert_eq!(pi.component(y).dim(), 1);
    }

    #[test]
    fn skew_algebra_closed_form_on_a2() {
        let f = q();
        let cat = Arc::new(free_category(&Quiver::linear(2)).unwrap());
        let raw = RawPresheaf {
            category: cat.clone(),
            algebras: [(ObjId(0), Arc::new(Algebra::dual_numbers(f))), (ObjId(1), Arc::new(Algebra::ground(f)))]
                .into_iter()
                .collect(),
            restrictions: [(cat.find_morphism("a1").unwrap(), Matrix::from_i64(f, &[&[1], &[0]]))].into_iter().collect(),
        };
        let r = Arc::new(PresheafOfAlgebras::validate(&raw).unwrap());
        let a = skew_category_algebra(&r).unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let a = category_algebra(&parallel(), q()).unwrap();
        let c = a.carrier();
        for (x, ex) in a.idempotents().iter().enumerate() {
            for (y, ey) in a.idempotents().iter().enumerate() {
                let p = c.mul(ex, ey);
                if x == y {
                    assert_eq!(&p, ex);
                } else {
                    assert!(p.iter().all(Scalar::is_zero));
                }
            }
        }
    }

    #[test]
    fn pi_of_terminal_and_group() {
        let k = Arc::new(Algebra::ground(q()));
        let terminal = Arc::new(RawCategory::new().object("*").validate().unwrap());
        let m = Arc::new(constant_modulation(&terminal, &k, Variance::Covariant).unwrap());
        let pi = build_pi(&build_mod_cat_algebra(&m).unwrap()).unwrap();
        assert_eq!(pi.component(ObjId(0)).dim(), 1);
        let g = category_algebra(&c2(), q()).unwrap();
        assert_eq!(build_pi(&g).unwrap().component(ObjId(0)).dim(), 2);
    }
}
