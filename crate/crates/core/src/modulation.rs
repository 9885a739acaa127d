//! Modulations and comodulations: strictly unitary pseudofunctors from a finite
//! category into bimodules, plus the two constructions from a presheaf of algebras.
//!
//! Both variances share one representation. Each morphism `f` carries a *block*
//! bimodule from the algebra at `source(f)` to the algebra at `target(f)`, where
//! (source, target) is (dom, cod) for a modulation and (cod, dom) for a
//! comodulation. Compositors are stored as *products*: for blocks `u`, `v` with
//! `target(u) = source(v)` there is a balanced table `u ⊗ v → uv`. In both
//! variances the tensor order of the compositor equals the multiplication order
//! in the category algebra, so coherence is exactly associativity of block products.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra, AlgebraHom, Bimodule, PairTable, TensorOverAlgebra};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, MorId, ObjId, SliceCategory};
use crate::linalg::Matrix;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn name(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        }
    }
}

/// Unvalidated (co)modulation data.
///
/// Data on identities may be omitted; it is synthesized canonically, and when it is
/// supplied it must agree with the canonical choice.
#[derive(Clone, Debug)]
pub struct RawModulation {
    pub category: Arc<FiniteCategory>,
    pub variance: Variance,
    pub algebras: BTreeMap<ObjId, Arc<Algebra>>,
    pub bimodules: BTreeMap<MorId, Bimodule>,
    /// Keyed by `(g, f)` for the composite `g∘f`. For a modulation the table is on
    /// `M(f) ⊗ M(g)`, for a comodulation on `W(g) ⊗ W(f)`.
    pub compositors: BTreeMap<(MorId, MorId), PairTable>,
}

#[derive(Clone, Debug)]
pub struct Modulation {
    category: Arc<FiniteCategory>,
    variance: Variance,
    algebras: Vec<Arc<Algebra>>,
    blocks: Vec<Bimodule>,
    products: Vec<Option<PairTable>>,
    presheaf: Option<Arc<PresheafOfAlgebras>>,
}

pub type Comodulation = Modulation;

impl PartialEq for Modulation {
    fn eq(&self, other: &Self) -> bool {
        *self.category == *other.category
            && self.variance == other.variance
            && self.algebras.len() == other.algebras.len()
            && self.algebras.iter().zip(&other.algebras).all(|(a, b)| same_algebra(a, b))
            && self.blocks == other.blocks
            && self.products == other.products
    }
}

fn source_of(cat: &FiniteCategory, variance: Variance, f: MorId) -> ObjId {
    match variance {
        Variance::Covariant => cat.dom(f),
        Variance::Contravariant => cat.cod(f),
    }
}

fn target_of(cat: &FiniteCategory, variance: Variance, f: MorId) -> ObjId {
    match variance {
        Variance::Covariant => cat.cod(f),
        Variance::Contravariant => cat.dom(f),
    }
}

/// Composite block of `u * v`, defined when `target(u) = source(v)`.
fn product_block(cat: &FiniteCategory, variance: Variance, u: MorId, v: MorId) -> Option<MorId> {
    if target_of(cat, variance, u) != source_of(cat, variance, v) {
        return None;
    }
    match variance {
        Variance::Covariant => cat.compose(v, u),
        Variance::Contravariant => cat.compose(u, v),
    }
}

/// `(g, f)` for `g∘f` ↦ `(left block, right block)` in multiplication order.
fn blocks_of_composite(variance: Variance, g: MorId, f: MorId) -> (MorId, MorId) {
    match variance {
        Variance::Covariant => (f, g),
        Variance::Contravariant => (g, f),
    }
}

pub fn validate_modulation(raw: &RawModulation) -> Result<Modulation> {
    if raw.variance != Variance::Covariant {
        return Err(Error::VarianceMismatch { expected: "covariant" });
    }
    Modulation::validate(raw)
}

pub fn validate_comodulation(raw: &RawModulation) -> Result<Comodulation> {
    if raw.variance != Variance::Contravariant {
        return Err(Error::VarianceMismatch { expected: "contravariant" });
    }
    Modulation::validate(raw)
}

impl Modulation {
    pub fn validate(raw: &RawModulation) -> Result<Modulation> {
        let cat = &raw.category;
        let v = raw.variance;
        let algebras = cat
            .object_ids()
            .map(|x| {
                raw.algebras.get(&x).cloned().ok_or_else(|| Error::MissingAlgebra(cat.object_label(x).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let field = algebras.first().map(|a| a.field());
        if algebras.iter().any(|a| Some(a.field()) != field) {
            return Err(Error::FieldMismatch("object algebras".into()));
        }

        let mut blocks = Vec::with_capacity(cat.morphism_count());
        for f in cat.morphism_ids() {
            let label = cat.label(f);
            let (s, t) = (source_of(cat, v, f), target_of(cat, v, f));
            let block = if cat.is_identity(f) {
                let canonical = Bimodule::regular(algebras[s.0].clone());
                if let Some(given) = raw.bimodules.get(&f) {
                    if *given != canonical {
                        return Err(Error::StrictUnitViolation(label.to_string()));
                    }
                }
                canonical
            } else {
                let b = raw.bimodules.get(&f).ok_or_else(|| Error::MissingBimodule(label.to_string()))?;
                if !same_algebra(b.left_algebra(), &algebras[s.0]) || !same_algebra(b.right_algebra(), &algebras[t.0]) {
                    return Err(Error::BimoduleAlgebraMismatch(label.to_string()));
                }
                b.clone()
            };
            blocks.push(block);
        }

        let n = cat.morphism_count();
        let mut products: Vec<Option<PairTable>> = vec![None; n * n];
        let mut to_check = Vec::new();
        for (g, f) in cat.composable_pairs() {
            let (u, w) = blocks_of_composite(v, g, f);
            let pair = format!("{}∘{}", cat.label(g), cat.label(f));
            let table = if cat.is_identity(u) {
                PairTable::left_action(&blocks[w.0])
            } else if cat.is_identity(w) {
                PairTable::right_action(&blocks[u.0])
            } else {
                let t = raw.compositors.get(&(g, f)).ok_or_else(|| Error::MissingCompositor(pair.clone()))?;
                to_check.push((u, w, pair.clone()));
                t.clone()
            };
            if cat.is_identity(u) || cat.is_identity(w) {
                if let Some(given) = raw.compositors.get(&(g, f)) {
                    if *given != table {
                        return Err(Error::StrictUnitViolation(pair.clone()));
                    }
                }
            }
            products[u.0 * n + w.0] = Some(table);
        }
        for &(g, f) in raw.compositors.keys() {
            if cat.compose(g, f).is_none() {
                return Err(Error::DomCodMismatch { g: cat.label(g).to_string(), f: cat.label(f).to_string() });
            }
        }

        let m = Modulation { category: cat.clone(), variance: v, algebras, blocks, products, presheaf: None };
        par::first_failure(to_check.len(), |i| {
            let (u, w, pair) = &to_check[i];
            m.check_compositor(*u, *w, pair)
        })?;
        m.check_coherence()?;
        Ok(m)
    }

    fn check_compositor(&self, u: MorId, w: MorId, pair: &str) -> Result<()> {
        let uw = self.multiply(u, w).expect("composable");
        let tensor = TensorOverAlgebra::new(&self.blocks[u.0], &self.blocks[w.0])?;
        let map = tensor.factor(self.product_table(u, w).expect("present"), &self.blocks[uw.0]).map_err(|e| match e {
            Error::NotBalanced(i, t, j) => Error::CompositorNotBalanced { pair: pair.to_string(), witness: (i, t, j) },
            Error::NotBimoduleMap(_) => Error::CompositorNotBimoduleMap(pair.to_string()),
            other => other,
        })?;
        if !map.is_invertible() {
            return Err(Error::CompositorNotInvertible(pair.to_string()));
        }
        Ok(())
    }

    /// `(u*v)*w = u*(v*w)` on all basis triples of all composable block triples.
    fn check_coherence(&self) -> Result<()> {
        let cat = &self.category;
        let mut triples = Vec::new();
        for u in cat.morphism_ids() {
            for v in cat.morphism_ids() {
                if self.multiply(u, v).is_none() {
                    continue;
                }
                for w in cat.morphism_ids() {
                    if self.multiply(v, w).is_some() {
                        triples.push((u, v, w));
                    }
                }
            }
        }
        let field = self.field();
        par::first_failure(triples.len(), |idx| {
            let (u, v, w) = triples[idx];
            let uv = self.multiply(u, v).expect("composable");
            let vw = self.multiply(v, w).expect("composable");
            let (t_uv, t_vw) = (self.product_table(u, v).unwrap(), self.product_table(v, w).unwrap());
            let (t_uv_w, t_u_vw) = (self.product_table(uv, w).unwrap(), self.product_table(u, vw).unwrap());
            for i in 0..self.blocks[u.0].dim() {
                for j in 0..self.blocks[v.0].dim() {
                    let ij = t_uv.value(i, j);
                    for l in 0..self.blocks[w.0].dim() {
                        let left = t_uv_w.eval_right_basis(field, ij, l);
                        let right = t_u_vw.eval_left_basis(field, i, t_vw.value(j, l));
                        if left != right {
                            return Err(Error::CoherenceFailure { triple: self.triple_label(u, v, w), witness: (i, j, l) });
                        }
                    }
                }
            }
            Ok(())
        })
    }

    fn triple_label(&self, u: MorId, v: MorId, w: MorId) -> String {
        let c = &self.category;
        let (a, b, d) = match self.variance {
            Variance::Covariant => (w, v, u),
            Variance::Contravariant => (u, v, w),
        };
        format!("{}∘{}∘{}", c.label(a), c.label(b), c.label(d))
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.algebras[0].field()
    }

    pub fn algebra(&self, x: ObjId) -> &Arc<Algebra> {
        &self.algebras[x.0]
    }

    pub fn algebras(&self) -> &[Arc<Algebra>] {
        &self.algebras
    }

    /// The bimodule assigned to `f`.
    pub fn block(&self, f: MorId) -> &Bimodule {
        &self.blocks[f.0]
    }

    /// Object whose algebra acts on the left of the block of `f`.
    pub fn source(&self, f: MorId) -> ObjId {
        source_of(&self.category, self.variance, f)
    }

    /// Object whose algebra acts on the right of the block of `f`.
    pub fn target(&self, f: MorId) -> ObjId {
        target_of(&self.category, self.variance, f)
    }

    /// The block of `u * v` in the category algebra, if the product can be nonzero.
    pub fn multiply(&self, u: MorId, v: MorId) -> Option<MorId> {
        product_block(&self.category, self.variance, u, v)
    }

    /// Compositor table `block(u) ⊗ block(v) → block(u*v)`.
    pub fn product_table(&self, u: MorId, v: MorId) -> Option<&PairTable> {
        self.products[u.0 * self.category.morphism_count() + v.0].as_ref()
    }

    /// Compositor for `g∘f` in the conventional indexing.
    pub fn compositor(&self, g: MorId, f: MorId) -> Option<&PairTable> {
        let (u, w) = blocks_of_composite(self.variance, g, f);
        self.product_table(u, w)
    }

    pub fn presheaf(&self) -> Option<&Arc<PresheafOfAlgebras>> {
        self.presheaf.as_ref()
    }

    /// Raw data with identity entries omitted, suitable for mutation and re-validation.
    pub fn to_raw(&self) -> RawModulation {
        let cat = &self.category;
        RawModulation {
            category: cat.clone(),
            variance: self.variance,
            algebras: cat.object_ids().map(|x| (x, self.algebras[x.0].clone())).collect(),
            bimodules: cat
                .morphism_ids()
                .filter(|&f| !cat.is_identity(f))
                .map(|f| (f, self.blocks[f.0].clone()))
                .collect(),
            compositors: cat
                .composable_pairs()
                .into_iter()
                .filter(|&(g, f)| !cat.is_identity(g) && !cat.is_identity(f))
                .map(|(g, f)| ((g, f), self.compositor(g, f).expect("present").clone()))
                .collect(),
        }
    }
}

/// The constant pseudofunctor: `A` everywhere, regular bimodules, multiplication as compositor.
pub fn constant_modulation(cat: &Arc<FiniteCategory>, alg: &Arc<Algebra>, variance: Variance) -> Result<Modulation> {
    let reg = Bimodule::regular(alg.clone());
    let mult = PairTable::from_fn(alg.dim(), alg.dim(), alg.dim(), |i, j| alg.product(i, j).to_vec());
    let raw = RawModulation {
        category: cat.clone(),
        variance,
        algebras: cat.object_ids().map(|x| (x, alg.clone())).collect(),
        bimodules: cat.morphism_ids().filter(|&f| !cat.is_identity(f)).map(|f| (f, reg.clone())).collect(),
        compositors: cat
            .composable_pairs()
            .into_iter()
            .filter(|&(g, f)| !cat.is_identity(g) && !cat.is_identity(f))
            .map(|p| (p, mult.clone()))
            .collect(),
    };
    Modulation::validate(&raw)
}

/// Unvalidated presheaf data; identity restrictions may be omitted.
#[derive(Clone, Debug)]
pub struct RawPresheaf {
    pub category: Arc<FiniteCategory>,
    pub algebras: BTreeMap<ObjId, Arc<Algebra>>,
    /// `α: x → y` ↦ matrix of `R(α): R(y) → R(x)`
    pub restrictions: BTreeMap<MorId, Matrix>,
}

/// A presheaf of algebras `R` on a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafOfAlgebras {
    category: Arc<FiniteCategory>,
    algebras: Vec<Arc<Algebra>>,
    restrictions: Vec<AlgebraHom>,
}

impl PresheafOfAlgebras {
    pub fn validate(raw: &RawPresheaf) -> Result<Self> {
        let cat = &raw.category;
        let algebras = cat
            .object_ids()
            .map(|x| {
                raw.algebras.get(&x).cloned().ok_or_else(|| Error::MissingAlgebra(cat.object_label(x).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions = Vec::with_capacity(cat.morphism_count());
        for a in cat.morphism_ids() {
            let (src, tgt) = (algebras[cat.cod(a).0].clone(), algebras[cat.dom(a).0].clone());
            let hom = match raw.restrictions.get(&a) {
                Some(m) => AlgebraHom::new(src, tgt, m.clone())
                    .map_err(|e| Error::NotAlgebraHom(format!("restriction along {}: {e}", cat.label(a))))?,
                None if cat.is_identity(a) => AlgebraHom::identity(src),
                None => return Err(Error::NotAlgebraHom(format!("missing restriction along {}", cat.label(a)))),
            };
            if cat.is_identity(a) && !hom.matrix().is_identity() {
                return Err(Error::NotFunctorial(cat.label(a).to_string()));
            }
            restrictions.push(hom);
        }
        let p = PresheafOfAlgebras { category: cat.clone(), algebras, restrictions };
        for (b, a) in cat.composable_pairs() {
            let ba = cat.compose(b, a).expect("composable");
            if p.restrictions[a.0].matrix().mul(p.restrictions[b.0].matrix()) != *p.restrictions[ba.0].matrix() {
                return Err(Error::NotFunctorial(format!("{}∘{}", cat.label(b), cat.label(a))));
            }
        }
        Ok(p)
    }

    pub fn constant(cat: &Arc<FiniteCategory>, alg: &Arc<Algebra>) -> Self {
        PresheafOfAlgebras {
            category: cat.clone(),
            algebras: vec![alg.clone(); cat.object_count()],
            restrictions: vec![AlgebraHom::identity(alg.clone()); cat.morphism_count()],
        }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.algebras[0].field()
    }

    pub fn algebra(&self, x: ObjId) -> &Arc<Algebra> {
        &self.algebras[x.0]
    }

    /// `R(α): R(cod α) → R(dom α)`
    pub fn restriction(&self, a: MorId) -> &AlgebraHom {
        &self.restrictions[a.0]
    }

    /// Precomposition with the slice projection.
    pub fn restrict_to_slice(&self, slice: &SliceCategory) -> PresheafOfAlgebras {
        let cat = slice.category();
        PresheafOfAlgebras {
            category: cat.clone(),
            algebras: cat.object_ids().map(|o| self.algebras[slice.project_object(o).0].clone()).collect(),
            restrictions: cat.morphism_ids().map(|m| self.restrictions[slice.project(m).0].clone()).collect(),
        }
    }

    pub fn to_raw(&self) -> RawPresheaf {
        let cat = &self.category;
        RawPresheaf {
            category: cat.clone(),
            algebras: cat.object_ids().map(|x| (x, self.algebras[x.0].clone())).collect(),
            restrictions: cat
                .morphism_ids()
                .filter(|&a| !cat.is_identity(a))
                .map(|a| (a, self.restrictions[a.0].matrix().clone()))
                .collect(),
        }
    }
}

/// `M_R(α) = _{R(x)} R(x)_{R(y)}` with compositor `(m, n) ↦ m · R(α)(n)`.
pub fn presheaf_to_modulation(r: &Arc<PresheafOfAlgebras>) -> Result<Modulation> {
    let cat = &r.category;
    let field = r.field();
    let mut raw = RawModulation {
        category: cat.clone(),
        variance: Variance::Covariant,
        algebras: cat.object_ids().map(|x| (x, r.algebras[x.0].clone())).collect(),
        bimodules: BTreeMap::new(),
        compositors: BTreeMap::new(),
    };
    for a in cat.morphism_ids().filter(|&a| !cat.is_identity(a)) {
        raw.bimodules.insert(a, Bimodule::right_via(r.restriction(a)));
    }
    for (b, a) in cat.composable_pairs() {
        if cat.is_identity(a) || cat.is_identity(b) {
            continue;
        }
        let rx = r.algebra(cat.dom(a));
        let ry = r.algebra(cat.cod(a));
        let res = r.restriction(a);
        let table = PairTable::from_fn(rx.dim(), ry.dim(), rx.dim(), |i, j| {
            rx.mul(&rx.basis_vector(i), &res.apply(&ry.basis_vector(j)))
        });
        raw.compositors.insert((b, a), table);
        let _ = field;
    }
    let mut m = Modulation::validate(&raw)?;
    m.presheaf = Some(r.clone());
    Ok(m)
}

/// `W_R(α) = _{R(y)} R(x)_{R(x)}` with compositor `(w_β, w_α) ↦ R(α)(w_β) · w_α`.
pub fn presheaf_to_comodulation(r: &Arc<PresheafOfAlgebras>) -> Result<Comodulation> {
    let cat = &r.category;
    let mut raw = RawModulation {
        category: cat.clone(),
        variance: Variance::Contravariant,
        algebras: cat.object_ids().map(|x| (x, r.algebras[x.0].clone())).collect(),
        bimodules: BTreeMap::new(),
        compositors: BTreeMap::new(),
    };
    for a in cat.morphism_ids().filter(|&a| !cat.is_identity(a)) {
        raw.bimodules.insert(a, Bimodule::left_via(r.restriction(a)));
    }
    for (b, a) in cat.composable_pairs() {
        if cat.is_identity(a) || cat.is_identity(b) {
            continue;
        }
        let rx = r.algebra(cat.dom(a));
        let ry = r.algebra(cat.cod(a));
        let res = r.restriction(a);
        let table = PairTable::from_fn(ry.dim(), rx.dim(), rx.dim(), |i, j| {
            rx.mul(&res.apply(&ry.basis_vector(i)), &rx.basis_vector(j))
        });
        raw.compositors.insert((b, a), table);
    }
    let mut m = Modulation::validate(&raw)?;
    m.presheaf = Some(r.clone());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{free_category, Quiver, RawCategory};
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rationals
    }

    fn parallel() -> Arc<FiniteCategory> {
        Arc::new(
            RawCategory::new().object("x").object("y").morphism("a", "x", "y").morphism("b", "x", "y").validate().unwrap(),
        )
    }

    fn c2() -> Arc<FiniteCategory> {
        Arc::new(RawCategory::new().object("*").morphism("g", "*", "*").compose("g", "g", "1_*").validate().unwrap())
    }

    #[test]
    fn constant_modulations_validate() {
        let k = Arc::new(Algebra::ground(q()));
        let terminal = Arc::new(RawCategory::new().object("*").validate().unwrap());
        assert!(constant_modulation(&terminal, &k, Variance::Covariant).is_ok());
        assert!(constant_modulation(&c2(), &k, Variance::Covariant).is_ok());
        let d = Arc::new(Algebra::dual_numbers(q()));
        assert!(constant_modulation(&parallel(), &d, Variance::Covariant).is_ok());
        assert!(constant_modulation(&parallel(), &d, Variance::Contravariant).is_ok());
    }

    #[test]
    fn a2_species_validates() {
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
        let m = validate_modulation(&raw).unwrap();
        assert_eq!(m.block(cat.find_morphism("a1").unwrap()).dim(), 2);
        assert!(matches!(validate_comodulation(&raw), Err(Error::VarianceMismatch { .. })));
    }

    #[test]
    fn scaled_identity_compositor_rejected() {
        let f = q();
        let k = Arc::new(Algebra::ground(f));
        let m = constant_modulation(&c2(), &k, Variance::Covariant).unwrap();
        let mut raw = m.to_raw();
        let cat = m.category().clone();
        let (g, id) = (cat.find_morphism("g").unwrap(), cat.identity(ObjId(0)));
        let mut t = m.compositor(g, id).unwrap().clone();
        t.value_mut(0, 0)[0] = f.from_i64(2);
        raw.compositors.insert((g, id), t);
        assert!(matches!(Modulation::validate(&raw), Err(Error::StrictUnitViolation(_))));
    }

    #[test]
    fn corrupted_compositor_breaks_coherence() {
        let f = q();
        let cat = Arc::new(free_category(&Quiver::linear(4)).unwrap());
        let k = Arc::new(Algebra::ground(f));
        let m = constant_modulation(&cat, &k, Variance::Covariant).unwrap();
        let mut raw = m.to_raw();
        let (a1, a2) = (cat.find_morphism("a1").unwrap(), cat.find_morphism("a2").unwrap());
        raw.compositors.get_mut(&(a2, a1)).unwrap().value_mut(0, 0)[0] = f.from_i64(2);
        assert!(matches!(Modulation::validate(&raw), Err(Error::CoherenceFailure { .. })));
    }

    #[test]
    fn presheaf_constructions_validate() {
        let f = q();
        let cat = Arc::new(free_category(&Quiver::linear(2)).unwrap());
        let k = Arc::new(Algebra::ground(f));
        let d = Arc::new(Algebra::dual_numbers(f));
        let a1 = cat.find_morphism("a1").unwrap();
        // R(v0) = ℚ[t]/(t²), R(v1) = ℚ, R(a1) the unit inclusion ℚ → ℚ[t]/(t²)
        let raw = RawPresheaf {
            category: cat.clone(),
            algebras: [(ObjId(0), d.clone()), (ObjId(1), k.clone())].into_iter().collect(),
            restrictions: [(a1, Matrix::from_i64(f, &[&[1], &[0]]))].into_iter().collect(),
        };
        let r = Arc::new(PresheafOfAlgebras::validate(&raw).unwrap());
        assert!(presheaf_to_modulation(&r).is_ok());
        assert!(presheaf_to_comodulation(&r).is_ok());

        let pk = Arc::new(PresheafOfAlgebras::constant(&parallel(), &k));
        let m = presheaf_to_modulation(&pk).unwrap();
        assert!(m.category().morphism_ids().all(|a| m.block(a).dim() == 1));
        let c = constant_modulation(&parallel(), &k, Variance::Covariant).unwrap();
        assert_eq!(m, c);
    }

    #[test]
    fn nonfunctorial_presheaf_rejected() {
        let f = q();
        let cat = Arc::new(free_category(&Quiver::linear(3)).unwrap());
        let kk = Arc::new(Algebra::diagonal(f, 2));
        let swap = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        let mut restrictions: BTreeMap<MorId, Matrix> = BTreeMap::new();
        restrictions.insert(cat.find_morphism("a1").unwrap(), swap.clone());
        restrictions.insert(cat.find_morphism("a2").unwrap(), swap);
        restrictions.insert(cat.find_morphism("a2∘a1").unwrap(), Matrix::from_i64(f, &[&[0, 1], &[1, 0]]));
        let raw = RawPresheaf {
            category: cat.clone(),
            algebras: cat.object_ids().map(|x| (x, kk.clone())).collect(),
            restrictions,
        };
        assert!(matches!(PresheafOfAlgebras::validate(&raw), Err(Error::NotFunctorial(_))));
    }
}
