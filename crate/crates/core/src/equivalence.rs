//! Representations as lax transformations, their morphisms, and the functors
//! π* and ι* between representations and modules over the category algebra.
//!
//! A transformation has a component `V(x)` (left coefficient algebra `A`, right
//! algebra at `x`) for each object and a structure map
//! `V(f): V(source f) ⊗ block(f) → V(target f)` for each morphism. This covers
//! both variances: for a comodulation `source`/`target` swap dom and cod.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    check_bimodule_map, module_hom_space, same_algebra, unvectorize, Algebra, Bimodule, BimoduleMap, PairTable,
    TensorOverAlgebra,
};
use crate::error::{Error, Result};
use crate::fincat::{MorId, ObjId};
use crate::linalg::{kernel, Field, Matrix, QuotientSpace, Scalar, Subspace};
use crate::mcalgebra::ModCatAlgebra;
use crate::modulation::Modulation;
use crate::par;

#[derive(Clone, Debug)]
pub struct RawLaxTransformation {
    pub modulation: Arc<Modulation>,
    pub coefficients: Arc<Algebra>,
    pub components: BTreeMap<ObjId, Bimodule>,
    /// Structure maps on pure tensors; entries for identities may be omitted.
    pub maps: BTreeMap<MorId, PairTable>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaxTransformation {
    modulation: Arc<Modulation>,
    coefficients: Arc<Algebra>,
    components: Vec<Bimodule>,
    maps: Vec<PairTable>,
}

/// A representation is a lax transformation with coefficients in the ground field.
pub type Representation = LaxTransformation;

fn same_modulation(a: &Arc<Modulation>, b: &Arc<Modulation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn lax_check(raw: &RawLaxTransformation) -> Result<LaxTransformation> {
    let m = &raw.modulation;
    let cat = m.category();
    let mut components = Vec::with_capacity(cat.object_count());
    for x in cat.object_ids() {
        let c = raw
            .components
            .get(&x)
            .ok_or_else(|| Error::MissingBimodule(format!("component at {}", cat.object_label(x))))?;
        if !same_algebra(c.left_algebra(), &raw.coefficients) || !same_algebra(c.right_algebra(), m.algebra(x)) {
            return Err(Error::AlgebraMismatch(format!("component at {}", cat.object_label(x))));
        }
        components.push(c.clone());
    }
    let mut maps = Vec::with_capacity(cat.morphism_count());
    for f in cat.morphism_ids() {
        let table = if cat.is_identity(f) {
            let canonical = PairTable::right_action(&components[cat.dom(f).0]);
            if raw.maps.get(&f).is_some_and(|t| *t != canonical) {
                return Err(Error::LaxUnityViolation(cat.label(f).to_string()));
            }
            canonical
        } else {
            raw.maps.get(&f).cloned().ok_or_else(|| Error::MissingStructureMap(cat.label(f).to_string()))?
        };
        maps.push(table);
    }
    let v = LaxTransformation {
        modulation: m.clone(),
        coefficients: raw.coefficients.clone(),
        components,
        maps,
    };
    v.check()?;
    Ok(v)
}

impl LaxTransformation {
    fn check(&self) -> Result<()> {
        let m = &self.modulation;
        let cat = m.category();
        let morphisms: Vec<MorId> = cat.morphism_ids().filter(|&f| !cat.is_identity(f)).collect();
        par::first_failure(morphisms.len(), |i| {
            let f = morphisms[i];
            let label = cat.label(f).to_string();
            let tensor = TensorOverAlgebra::new(&self.components[m.source(f).0], m.block(f))?;
            tensor.factor(&self.maps[f.0], &self.components[m.target(f).0]).map_err(|e| match e {
                Error::NotBalanced(i, t, j) => Error::LaxNotBalanced { morphism: label.clone(), witness: (i, t, j) },
                Error::NotBimoduleMap(_) => Error::LaxNotBimoduleMap(label.clone()),
                other => other,
            })?;
            Ok(())
        })?;

        let mut pairs = Vec::new();
        for u in cat.morphism_ids() {
            for v in cat.morphism_ids() {
                if let Some(w) = m.multiply(u, v) {
                    pairs.push((u, v, w));
                }
            }
        }
        let field = self.field();
        par::first_failure(pairs.len(), |idx| {
            let (u, v, w) = pairs[idx];
            let product = m.product_table(u, v).expect("composable");
            for k in 0..self.components[m.source(u).0].dim() {
                for i in 0..m.block(u).dim() {
                    let vu = self.maps[u.0].value(k, i);
                    for j in 0..m.block(v).dim() {
                        let lhs = self.maps[v.0].eval_right_basis(field, vu, j);
                        let rhs = self.maps[w.0].eval_left_basis(field, k, product.value(i, j));
                        if lhs != rhs {
                            return Err(Error::LaxSquareFailure {
                                first: cat.label(u).to_string(),
                                second: cat.label(v).to_string(),
                                witness: (k, i, j),
                            });
                        }
                    }
                }
            }
            Ok(())
        })
    }

    /// All components zero.
    pub fn zero(modulation: &Arc<Modulation>, coefficients: &Arc<Algebra>) -> Self {
        let cat = modulation.category();
        LaxTransformation {
            modulation: modulation.clone(),
            coefficients: coefficients.clone(),
            components: cat
                .object_ids()
                .map(|x| Bimodule::zero(coefficients.clone(), modulation.algebra(x).clone()))
                .collect(),
            maps: cat.morphism_ids().map(|f| PairTable::from_fn(0, modulation.block(f).dim(), 0, |_, _| vec![])).collect(),
        }
    }

    pub fn modulation(&self) -> &Arc<Modulation> {
        &self.modulation
    }

    pub fn coefficients(&self) -> &Arc<Algebra> {
        &self.coefficients
    }

    pub fn field(&self) -> Field {
        self.coefficients.field()
    }

    pub fn component(&self, x: ObjId) -> &Bimodule {
        &self.components[x.0]
    }

    pub fn components(&self) -> &[Bimodule] {
        &self.components
    }

    pub fn map(&self, f: MorId) -> &PairTable {
        &self.maps[f.0]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Bimodule::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(Bimodule::dim).sum()
    }

    pub fn to_raw(&self) -> RawLaxTransformation {
        let cat = self.modulation.category();
        RawLaxTransformation {
            modulation: self.modulation.clone(),
            coefficients: self.coefficients.clone(),
            components: cat.object_ids().map(|x| (x, self.components[x.0].clone())).collect(),
            maps: cat
                .morphism_ids()
                .filter(|&f| !cat.is_identity(f))
                .map(|f| (f, self.maps[f.0].clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &LaxTransformation) -> Result<LaxTransformation> {
        if !same_modulation(&self.modulation, &other.modulation) || !same_algebra(&self.coefficients, &other.coefficients)
        {
            return Err(Error::IncompatiblePair);
        }
        let m = &self.modulation;
        let field = self.field();
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.direct_sum(b)).collect::<Result<Vec<_>>>()?;
        let maps = m
            .category()
            .morphism_ids()
            .map(|f| {
                let (s, t) = (m.source(f).0, m.target(f).0);
                let (ds, dt) = (self.components[s].dim(), self.components[t].dim());
                let total_t = dt + other.components[t].dim();
                PairTable::from_fn(ds + other.components[s].dim(), m.block(f).dim(), total_t, |k, j| {
                    let mut v = field.zeros(total_t);
                    if k < ds {
                        v[..dt].clone_from_slice(self.maps[f.0].value(k, j));
                    } else {
                        v[dt..].clone_from_slice(other.maps[f.0].value(k - ds, j));
                    }
                    v
                })
            })
            .collect();
        let sum = LaxTransformation {
            modulation: self.modulation.clone(),
            coefficients: self.coefficients.clone(),
            components,
            maps,
        };
        sum.check()?;
        Ok(sum)
    }
}

/// A morphism of transformations, one bimodule map per object.
#[derive(Clone, Debug, PartialEq)]
pub struct Modification {
    source: LaxTransformation,
    target: LaxTransformation,
    components: Vec<Matrix>,
}

pub fn modification_check(
    source: &LaxTransformation,
    target: &LaxTransformation,
    components: Vec<Matrix>,
) -> Result<Modification> {
    if !same_modulation(&source.modulation, &target.modulation)
        || !same_algebra(&source.coefficients, &target.coefficients)
        || components.len() != source.components.len()
    {
        return Err(Error::IncompatiblePair);
    }
    let m = &source.modulation;
    let cat = m.category();
    let field = source.field();
    for x in cat.object_ids() {
        check_bimodule_map(&source.components[x.0], &target.components[x.0], &components[x.0])?;
    }
    for f in cat.morphism_ids().filter(|&f| !cat.is_identity(f)) {
        let (s, t) = (m.source(f).0, m.target(f).0);
        for k in 0..source.components[s].dim() {
            let tk = components[s].column(k);
            for j in 0..m.block(f).dim() {
                let lhs = components[t].mul_vec(source.maps[f.0].value(k, j));
                let rhs = target.maps[f.0].eval_right_basis(field, &tk, j);
                if lhs != rhs {
                    return Err(Error::SquareFailure(cat.label(f).to_string()));
                }
            }
        }
    }
    Ok(Modification { source: source.clone(), target: target.clone(), components })
}

impl Modification {
    pub fn identity(v: &LaxTransformation) -> Self {
        let components = v.components.iter().map(|c| Matrix::identity(v.field(), c.dim())).collect();
        Modification { source: v.clone(), target: v.clone(), components }
    }

    pub fn zero(source: &LaxTransformation, target: &LaxTransformation) -> Result<Self> {
        let field = source.field();
        let components =
            source.components.iter().zip(&target.components).map(|(s, t)| Matrix::zeros(field, t.dim(), s.dim())).collect();
        modification_check(source, target, components)
    }

    pub fn source(&self) -> &LaxTransformation {
        &self.source
    }

    pub fn target(&self) -> &LaxTransformation {
        &self.target
    }

    pub fn component(&self, x: ObjId) -> &Matrix {
        &self.components[x.0]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// `self ∘ other`
    pub fn after(&self, other: &Modification) -> Result<Modification> {
        if other.target != self.source {
            return Err(Error::IncompatiblePair);
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.mul(b)).collect();
        Ok(Modification { source: other.source.clone(), target: self.target.clone(), components })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(|t| t.is_square() && t.rank() == t.rows())
    }
}

fn check_source(a: &ModCatAlgebra, m: &Arc<Modulation>) -> Result<()> {
    if same_modulation(a.source(), m) {
        Ok(())
    } else {
        Err(Error::ModulationMismatch)
    }
}

fn object_offsets(v: &LaxTransformation) -> Vec<usize> {
    let mut offsets = vec![0];
    for c in &v.components {
        offsets.push(offsets.last().unwrap() + c.dim());
    }
    offsets
}

/// `ι*(V) = ⊕_x V(x)` as an `A`-`M[C]` bimodule.
pub fn iota_star(a: &ModCatAlgebra, v: &LaxTransformation) -> Result<Bimodule> {
    check_source(a, &v.modulation)?;
    let m = &v.modulation;
    let field = v.field();
    let offsets = object_offsets(v);
    let dim = *offsets.last().unwrap();
    let right = a
        .grading()
        .iter()
        .map(|&(f, j)| {
            let (s, t) = (m.source(f).0, m.target(f).0);
            let mut mat = Matrix::zeros(field, dim, dim);
            for k in 0..v.components[s].dim() {
                for (r, c) in v.maps[f.0].value(k, j).iter().enumerate() {
                    mat.set(offsets[t] + r, offsets[s] + k, c.clone());
                }
            }
            mat
        })
        .collect();
    let left = (0..v.coefficients.dim())
        .map(|i| {
            let blocks: Vec<Matrix> = v.components.iter().map(|c| c.left_action(i).clone()).collect();
            Matrix::block_diagonal(field, &blocks)
        })
        .collect();
    Bimodule::new(v.coefficients.clone(), a.carrier().clone(), dim, left, right)
}

/// `ι*(T)`, block diagonal.
pub fn iota_star_map(a: &ModCatAlgebra, t: &Modification) -> Result<BimoduleMap> {
    let source = iota_star(a, &t.source)?;
    let target = iota_star(a, &t.target)?;
    BimoduleMap::new(&source, &target, Matrix::block_diagonal(t.source.field(), &t.components))
}

/// Result of π*: the transformation plus the subspaces `M·1_x` realizing its components.
#[derive(Clone, Debug)]
pub struct PiStar {
    pub transformation: LaxTransformation,
    pub images: Vec<Subspace>,
}

/// `π*(M)(x) = M·1_x`, in the coordinates of the RREF basis of the image.
pub fn pi_star(a: &ModCatAlgebra, module: &Bimodule) -> Result<PiStar> {
    if !same_algebra(module.right_algebra(), a.carrier()) {
        return Err(Error::AlgebraMismatch("module is not over the category algebra".into()));
    }
    let m = a.source();
    let cat = m.category();
    let field = a.field();
    let images: Vec<Subspace> =
        cat.object_ids().map(|x| Subspace::column_space(&module.right_matrix(a.idempotent(x)))).collect();
    let restrict = |s: &Subspace, t: &Subspace, op: &Matrix| -> Result<Matrix> {
        let cols = s
            .basis_vectors()
            .iter()
            .map(|b| t.coordinates(&op.mul_vec(b)).ok_or_else(|| Error::RoundtripMismatch("image not stable".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, t.dim(), &cols))
    };
    let mut components = BTreeMap::new();
    for x in cat.object_ids() {
        let s = &images[x.0];
        let left = module.left_actions().iter().map(|op| restrict(s, s, op)).collect::<Result<Vec<_>>>()?;
        let right =
            a.block_range(cat.identity(x)).map(|b| restrict(s, s, module.right_action(b))).collect::<Result<Vec<_>>>()?;
        components.insert(x, Bimodule::new(module.left_algebra().clone(), m.algebra(x).clone(), s.dim(), left, right)?);
    }
    let mut maps = BTreeMap::new();
    for f in cat.morphism_ids().filter(|&f| !cat.is_identity(f)) {
        let (s, t) = (&images[m.source(f).0], &images[m.target(f).0]);
        let per_basis =
            a.block_range(f).map(|b| restrict(s, t, module.right_action(b))).collect::<Result<Vec<_>>>()?;
        maps.insert(f, PairTable::from_fn(s.dim(), per_basis.len(), t.dim(), |k, j| per_basis[j].column(k)));
    }
    let transformation = lax_check(&RawLaxTransformation {
        modulation: m.clone(),
        coefficients: module.left_algebra().clone(),
        components,
        maps,
    })?;
    Ok(PiStar { transformation, images })
}

/// `π*(φ)` for a bimodule map `φ: M → N`.
pub fn pi_star_map(source: &PiStar, target: &PiStar, phi: &Matrix) -> Result<Modification> {
    let field = phi.field();
    let components = source
        .images
        .iter()
        .zip(&target.images)
        .map(|(s, t)| {
            let cols = s
                .basis_vectors()
                .iter()
                .map(|b| t.coordinates(&phi.mul_vec(b)).ok_or(Error::NotBimoduleMap("does not preserve 1_x-images".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(field, t.dim(), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    modification_check(&source.transformation, &target.transformation, components)
}

#[derive(Clone, Debug)]
pub struct ModuleRoundtrip {
    pub rebuilt: Bimodule,
    /// `ι*π*(M) → M`
    pub iso: BimoduleMap,
}

/// Checks `ι*π*(M) ≅ M` through the inclusion of the blocks `M·1_x`.
pub fn roundtrip_module(a: &ModCatAlgebra, module: &Bimodule) -> Result<ModuleRoundtrip> {
    let pi = pi_star(a, module)?;
    let rebuilt = iota_star(a, &pi.transformation)?;
    let cols: Vec<Vec<Scalar>> = pi.images.iter().flat_map(Subspace::basis_vectors).collect();
    let matrix = Matrix::from_columns(a.field(), module.dim(), &cols);
    let iso = BimoduleMap::new(&rebuilt, module, matrix).map_err(|e| Error::RoundtripMismatch(e.to_string()))?;
    if !iso.is_invertible() {
        return Err(Error::RoundtripMismatch("blocks M·1_x do not decompose M".into()));
    }
    Ok(ModuleRoundtrip { rebuilt, iso })
}

#[derive(Clone, Debug)]
pub struct RepresentationRoundtrip {
    pub rebuilt: LaxTransformation,
    /// `V → π*ι*(V)`
    pub iso: Modification,
}

/// Checks `π*ι*(V) ≅ V` componentwise.
pub fn roundtrip_representation(a: &ModCatAlgebra, v: &LaxTransformation) -> Result<RepresentationRoundtrip> {
    let module = iota_star(a, v)?;
    let pi = pi_star(a, &module)?;
    let offsets = object_offsets(v);
    let field = v.field();
    let components = pi
        .images
        .iter()
        .enumerate()
        .map(|(x, s)| {
            let cols = (0..v.components[x].dim())
                .map(|k| {
                    s.coordinates(&field.unit_vector(module.dim(), offsets[x] + k))
                        .ok_or_else(|| Error::RoundtripMismatch(format!("V({x}) not inside its 1_x-image")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(field, s.dim(), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = modification_check(v, &pi.transformation, components).map_err(|e| Error::RoundtripMismatch(e.to_string()))?;
    if !iso.is_isomorphism() {
        return Err(Error::RoundtripMismatch("component maps are not invertible".into()));
    }
    Ok(RepresentationRoundtrip { rebuilt: pi.transformation, iso })
}

/// `ker T` with its inclusion.
pub fn rep_kernel(t: &Modification) -> Result<(LaxTransformation, Modification)> {
    let v = &t.source;
    let m = &v.modulation;
    let cat = m.category();
    let field = v.field();
    let kernels: Vec<Subspace> = t.components.iter().map(kernel).collect();
    let mut components = BTreeMap::new();
    for x in cat.object_ids() {
        components.insert(x, v.components[x.0].restrict_to(&kernels[x.0])?);
    }
    let mut maps = BTreeMap::new();
    for f in cat.morphism_ids().filter(|&f| !cat.is_identity(f)) {
        let (s, tg) = (&kernels[m.source(f).0], &kernels[m.target(f).0]);
        let basis = s.basis_vectors();
        let values = basis
            .iter()
            .flat_map(|b| (0..m.block(f).dim()).map(move |j| (b, j)))
            .map(|(b, j)| {
                tg.coordinates(&v.maps[f.0].eval_right_basis(field, b, j))
                    .ok_or_else(|| Error::SquareFailure(cat.label(f).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        maps.insert(f, PairTable::new(s.dim(), m.block(f).dim(), tg.dim(), values)?);
    }
    let k = lax_check(&RawLaxTransformation {
        modulation: m.clone(),
        coefficients: v.coefficients.clone(),
        components,
        maps,
    })?;
    let inclusion = modification_check(&k, v, kernels.iter().map(Subspace::inclusion).collect())?;
    Ok((k, inclusion))
}

/// `coker T` with its projection.
pub fn rep_cokernel(t: &Modification) -> Result<(LaxTransformation, Modification)> {
    let w = &t.target;
    let m = &w.modulation;
    let cat = m.category();
    let field = w.field();
    let mut quotients: Vec<QuotientSpace> = Vec::new();
    let mut components = BTreeMap::new();
    for x in cat.object_ids() {
        let image = Subspace::column_space(&t.components[x.0]);
        let (c, q) = w.components[x.0].quotient_by(&image)?;
        components.insert(x, c);
        quotients.push(q);
    }
    let mut maps = BTreeMap::new();
    for f in cat.morphism_ids().filter(|&f| !cat.is_identity(f)) {
        let (s, tg) = (&quotients[m.source(f).0], &quotients[m.target(f).0]);
        let table = PairTable::from_fn(s.dim(), m.block(f).dim(), tg.dim(), |k, j| {
            tg.project(&w.maps[f.0].eval_right_basis(field, &s.section().column(k), j))
        });
        maps.insert(f, table);
    }
    let c = lax_check(&RawLaxTransformation {
        modulation: m.clone(),
        coefficients: w.coefficients.clone(),
        components,
        maps,
    })?;
    let projection = modification_check(w, &c, quotients.iter().map(|q| q.projection().clone()).collect())?;
    Ok((c, projection))
}

/// Bound on random combinations tried when the hom space is too large to enumerate.
pub const ISO_SEARCH_ATTEMPTS: usize = 64;
const EXHAUSTIVE_LIMIT: u64 = 4096;

/// Searches the hom space for an invertible bimodule map `m → n`.
///
/// Over `F_p` with a small hom space the search is exhaustive, so `None` is a proof
/// of non-isomorphism. Otherwise basis elements and seeded random combinations are
/// tried and `None` only means no isomorphism was found.
pub fn find_module_isomorphism(m: &Bimodule, n: &Bimodule, seed: u64) -> Result<Option<BimoduleMap>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let hom = module_hom_space(m, n)?;
    let field = m.field();
    let basis = hom.basis_vectors();
    let to_map = |coeffs: &[Scalar]| -> Option<BimoduleMap> {
        let v = hom.combine(coeffs);
        let mat = unvectorize(field, n.dim(), m.dim(), &v);
        let map = BimoduleMap { matrix: mat };
        map.is_invertible().then_some(map)
    };
    if m.dim() == 0 {
        return Ok(Some(BimoduleMap { matrix: Matrix::zeros(field, 0, 0) }));
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let d = basis.len();
    if let Field::Prime(p) = field {
        if let Some(total) = p.checked_pow(d as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            for idx in 0..total {
                let mut rest = idx;
                let coeffs: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let c = rest % p;
                        rest /= p;
                        field.from_i64(c as i64)
                    })
                    .collect();
                if let Some(map) = to_map(&coeffs) {
                    return Ok(Some(map));
                }
            }
            return Ok(None);
        }
    }
    for i in 0..d {
        if let Some(map) = to_map(&field.unit_vector(d, i)) {
            return Ok(Some(map));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_SEARCH_ATTEMPTS {
        let coeffs: Vec<Scalar> = (0..d).map(|_| field.from_i64(rng.gen_range(-7..=7))).collect();
        if let Some(map) = to_map(&coeffs) {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Searches for an isomorphism of transformations via their modules.
pub fn find_isomorphism(
    a: &ModCatAlgebra,
    v: &LaxTransformation,
    w: &LaxTransformation,
    seed: u64,
) -> Result<Option<Modification>> {
    if v.dims() != w.dims() {
        return Ok(None);
    }
    let (mv, mw) = (iota_star(a, v)?, iota_star(a, w)?);
    let Some(map) = find_module_isomorphism(&mv, &mw, seed)? else {
        return Ok(None);
    };
    let offsets = object_offsets(v);
    let components = (0..v.components.len())
        .map(|x| {
            let range: Vec<usize> = (offsets[x]..offsets[x + 1]).collect();
            map.matrix.submatrix(&range, &range)
        })
        .collect();
    modification_check(v, w, components).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FiniteCategory, RawCategory};
    use crate::mcalgebra::{category_algebra, ModCatAlgebra};

    fn q() -> Field {
        Field::Rationals
    }

    fn c2() -> Arc<FiniteCategory> {
        Arc::new(RawCategory::new().object("*").morphism("g", "*", "*").compose("g", "g", "1_*").validate().unwrap())
    }

    fn scaling_rep(a: &ModCatAlgebra, c: i64) -> Result<LaxTransformation> {
        let m = a.source();
        let k = Arc::new(Algebra::ground(q()));
        let cat = m.category();
        let g = cat.find_morphism("g").unwrap();
        lax_check(&RawLaxTransformation {
            modulation: m.clone(),
            coefficients: k.clone(),
            components: [(ObjId(0), Bimodule::regular(k))].into_iter().collect(),
            maps: [(g, PairTable::from_fn(1, 1, 1, |_, _| vec![q().from_i64(c)]))].into_iter().collect(),
        })
    }

    #[test]
    fn sign_representation() {
        let a = category_algebra(&c2(), q()).unwrap();
        let sign = scaling_rep(&a, -1).unwrap();
        assert!(matches!(scaling_rep(&a, 2), Err(Error::LaxSquareFailure { .. })));
        let module = iota_star(&a, &sign).unwrap();
        assert_eq!(module.dim(), 1);
        let g = a.category().find_morphism("g").unwrap().0;
        assert_eq!(module.right_action(g), &Matrix::from_i64(q(), &[&[-1]]));
        let rt = roundtrip_representation(&a, &sign).unwrap();
        assert!(rt.iso.components().iter().all(Matrix::is_identity));
    }

    #[test]
    fn zero_representation_is_valid() {
        let a = category_algebra(&c2(), q()).unwrap();
        let k = Arc::new(Algebra::ground(q()));
        let z = LaxTransformation::zero(a.source(), &k);
        assert!(lax_check(&z.to_raw()).is_ok());
        assert_eq!(iota_star(&a, &z).unwrap().dim(), 0);
    }

    #[test]
    fn regular_module_roundtrip() {
        let a = category_algebra(&c2(), q()).unwrap();
        let rt = roundtrip_module(&a, &a.regular_right_module()).unwrap();
        assert!(rt.iso.matrix.is_identity());
        let pi = build_pi_dims(&a);
        assert_eq!(pi, vec![2]);
    }

    fn build_pi_dims(a: &ModCatAlgebra) -> Vec<usize> {
        pi_star(a, &a.regular()).unwrap().transformation.dims()
    }

    #[test]
    fn kernels_and_cokernels() {
        let a = category_algebra(&c2(), q()).unwrap();
        let sign = scaling_rep(&a, -1).unwrap();
        let id = Modification::identity(&sign);
        assert_eq!(rep_kernel(&id).unwrap().0.total_dim(), 0);
        assert_eq!(rep_cokernel(&id).unwrap().0.total_dim(), 0);
        let zero = Modification::zero(&sign, &sign).unwrap();
        assert_eq!(rep_kernel(&zero).unwrap().0.total_dim(), 1);
        assert_eq!(rep_cokernel(&zero).unwrap().0.total_dim(), 1);

        let double = sign.direct_sum(&sign).unwrap();
        let fold = modification_check(&double, &sign, vec![Matrix::from_i64(q(), &[&[1, 1]])]).unwrap();
        let (k, inc) = rep_kernel(&fold).unwrap();
        assert_eq!(k.total_dim(), 1);
        assert!(fold.after(&inc).unwrap().components()[0].is_zero());
    }

    #[test]
    fn sign_and_trivial_are_not_isomorphic() {
        let a = category_algebra(&c2(), Field::prime(5).unwrap()).unwrap();
        let f = a.field();
        let k = Arc::new(Algebra::ground(f));
        let g = a.category().find_morphism("g").unwrap();
        let rep = |c: i64| {
            lax_check(&RawLaxTransformation {
                modulation: a.source().clone(),
                coefficients: k.clone(),
                components: [(ObjId(0), Bimodule::regular(k.clone()))].into_iter().collect(),
                maps: [(g, PairTable::from_fn(1, 1, 1, |_, _| vec![f.from_i64(c)]))].into_iter().collect(),
            })
            .unwrap()
        };
        let (sign, triv) = (rep(-1), rep(1));
        assert!(find_isomorphism(&a, &sign, &triv, 0).unwrap().is_none());
        assert!(find_isomorphism(&a, &sign, &sign, 0).unwrap().is_some());
    }
}
