//! Presheaf modules over a presheaf of algebras, the geometric finite-type test
//! (via restriction to slices) and the algebraic finitely-generated test.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{same_algebra, unvectorize, Algebra, Bimodule, PairTable};
use crate::equivalence::{iota_star, lax_check, LaxTransformation, RawLaxTransformation};
use crate::error::{Error, Result};
use crate::fincat::{slice, FiniteCategory, MorId, ObjId, SliceCategory};
use crate::linalg::{kernel, Field, Matrix, Scalar, Subspace};
use crate::mcalgebra::{skew_category_algebra, ModCatAlgebra};
use crate::modulation::{Modulation, PresheafOfAlgebras, Variance};
use crate::par;

#[derive(Clone, Debug)]
pub struct RawPresheafModule {
    pub presheaf: Arc<PresheafOfAlgebras>,
    /// Right `R(x)`-modules (left algebra the ground field).
    pub components: BTreeMap<ObjId, Bimodule>,
    /// `α: x → y` ↦ `ρ_α: V(y) → V(x)`; identities may be omitted.
    pub restrictions: BTreeMap<MorId, Matrix>,
}

/// A presheaf of right modules over a presheaf of algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafModule {
    presheaf: Arc<PresheafOfAlgebras>,
    components: Vec<Bimodule>,
    restrictions: Vec<Matrix>,
}

fn same_presheaf(a: &Arc<PresheafOfAlgebras>, b: &Arc<PresheafOfAlgebras>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PresheafModule {
    pub fn validate(raw: &RawPresheafModule) -> Result<Self> {
        let r = &raw.presheaf;
        let cat = r.category();
        let field = r.field();
        let mut components = Vec::with_capacity(cat.object_count());
        for x in cat.object_ids() {
            let c = raw
                .components
                .get(&x)
                .ok_or_else(|| Error::MissingBimodule(format!("component at {}", cat.object_label(x))))?;
            if !c.is_right_module() || !same_algebra(c.right_algebra(), r.algebra(x)) {
                return Err(Error::AlgebraMismatch(format!("component at {}", cat.object_label(x))));
            }
            components.push(c.clone());
        }
        let mut restrictions = Vec::with_capacity(cat.morphism_count());
        for a in cat.morphism_ids() {
            let (dx, dy) = (components[cat.dom(a).0].dim(), components[cat.cod(a).0].dim());
            let rho = match raw.restrictions.get(&a) {
                Some(m) => m.clone(),
                None if cat.is_identity(a) => Matrix::identity(field, dx),
                None => return Err(Error::MissingStructureMap(cat.label(a).to_string())),
            };
            if rho.rows() != dx || rho.cols() != dy {
                return Err(Error::DimensionMismatch {
                    context: format!("restriction along {}", cat.label(a)),
                    expected: dx * dy,
                    found: rho.rows() * rho.cols(),
                });
            }
            if cat.is_identity(a) && !rho.is_identity() {
                return Err(Error::NotFunctorial(cat.label(a).to_string()));
            }
            restrictions.push(rho);
        }
        let v = PresheafModule { presheaf: r.clone(), components, restrictions };
        v.check()?;
        Ok(v)
    }

    fn check(&self) -> Result<()> {
        let r = &self.presheaf;
        let cat = r.category();
        for (b, a) in cat.composable_pairs() {
            let ba = cat.compose(b, a).expect("composable");
            if self.restrictions[a.0].mul(&self.restrictions[b.0]) != self.restrictions[ba.0] {
                return Err(Error::NotFunctorial(format!("{}∘{}", cat.label(b), cat.label(a))));
            }
        }
        for a in cat.morphism_ids() {
            let (x, y) = (cat.dom(a), cat.cod(a));
            let rho = &self.restrictions[a.0];
            let ry = r.algebra(y);
            for j in 0..ry.dim() {
                let image = r.restriction(a).apply(&ry.basis_vector(j));
                let lhs = rho.mul(self.components[y.0].right_action(j));
                let rhs = self.components[x.0].right_matrix(&image).mul(rho);
                if lhs != rhs {
                    return Err(Error::NotSemilinear(cat.label(a).to_string()));
                }
            }
        }
        Ok(())
    }

    /// `R` as a module over itself.
    pub fn structure(r: &Arc<PresheafOfAlgebras>) -> Self {
        let cat = r.category();
        PresheafModule {
            presheaf: r.clone(),
            components: cat.object_ids().map(|x| Bimodule::right_regular(r.algebra(x).clone())).collect(),
            restrictions: cat.morphism_ids().map(|a| r.restriction(a).matrix().clone()).collect(),
        }
    }

    pub fn zero(r: &Arc<PresheafOfAlgebras>) -> Self {
        let cat = r.category();
        let field = r.field();
        let k = Arc::new(Algebra::ground(field));
        PresheafModule {
            presheaf: r.clone(),
            components: cat.object_ids().map(|x| Bimodule::zero(k.clone(), r.algebra(x).clone())).collect(),
            restrictions: cat.morphism_ids().map(|_| Matrix::zeros(field, 0, 0)).collect(),
        }
    }

    pub fn presheaf(&self) -> &Arc<PresheafOfAlgebras> {
        &self.presheaf
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        self.presheaf.category()
    }

    pub fn field(&self) -> Field {
        self.presheaf.field()
    }

    pub fn component(&self, x: ObjId) -> &Bimodule {
        &self.components[x.0]
    }

    pub fn restriction(&self, a: MorId) -> &Matrix {
        &self.restrictions[a.0]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Bimodule::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(Bimodule::dim).sum()
    }

    pub fn to_raw(&self) -> RawPresheafModule {
        let cat = self.category();
        RawPresheafModule {
            presheaf: self.presheaf.clone(),
            components: cat.object_ids().map(|x| (x, self.components[x.0].clone())).collect(),
            restrictions: cat
                .morphism_ids()
                .filter(|&a| !cat.is_identity(a))
                .map(|a| (a, self.restrictions[a.0].clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &PresheafModule) -> Result<PresheafModule> {
        if !same_presheaf(&self.presheaf, &other.presheaf) {
            return Err(Error::BaseMismatch);
        }
        let field = self.field();
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.direct_sum(b)).collect::<Result<_>>()?;
        let restrictions = self
            .restrictions
            .iter()
            .zip(&other.restrictions)
            .map(|(a, b)| Matrix::block_diagonal(field, &[a.clone(), b.clone()]))
            .collect();
        Ok(PresheafModule { presheaf: self.presheaf.clone(), components, restrictions })
    }

    /// The isomorphic copy obtained by the componentwise change of basis `g_x`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<PresheafModule> {
        let cat = self.category();
        let mut components = Vec::with_capacity(g.len());
        let mut inverses = Vec::with_capacity(g.len());
        for (c, gx) in self.components.iter().zip(g) {
            components.push(c.transport(gx).ok_or(Error::NotBimoduleMap("change of basis is singular".into()))?);
            inverses.push(gx.inverse().expect("checked by transport"));
        }
        let restrictions = cat
            .morphism_ids()
            .map(|a| g[cat.dom(a).0].mul(&self.restrictions[a.0]).mul(&inverses[cat.cod(a).0]))
            .collect();
        let v = PresheafModule { presheaf: self.presheaf.clone(), components, restrictions };
        v.check()?;
        Ok(v)
    }

    /// Smallest sub-presheaf-module containing the given sections.
    pub fn generated_subpresheaf(&self, gens: &[(ObjId, Vec<Scalar>)]) -> Vec<Subspace> {
        let cat = self.category();
        let field = self.field();
        let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); cat.object_count()];
        for (x, v) in gens {
            spans[x.0].push(v.clone());
        }
        let mut subs: Vec<Subspace> =
            cat.object_ids().map(|x| Subspace::span(field, self.components[x.0].dim(), &spans[x.0])).collect();
        loop {
            let mut grown: Vec<Vec<Vec<Scalar>>> = subs.iter().map(Subspace::basis_vectors).collect();
            for x in cat.object_ids() {
                for v in subs[x.0].basis_vectors() {
                    for m in self.components[x.0].right_actions() {
                        grown[x.0].push(m.mul_vec(&v));
                    }
                }
            }
            for a in cat.morphism_ids() {
                for v in subs[cat.cod(a).0].basis_vectors() {
                    grown[cat.dom(a).0].push(self.restrictions[a.0].mul_vec(&v));
                }
            }
            let next: Vec<Subspace> = cat
                .object_ids()
                .map(|x| Subspace::span(field, self.components[x.0].dim(), &grown[x.0]))
                .collect();
            if next.iter().zip(&subs).all(|(a, b)| a.dim() == b.dim()) {
                return subs;
            }
            subs = next;
        }
    }

    /// `V / K` for a sub-presheaf-module `K` given componentwise.
    pub fn quotient(&self, sub: &[Subspace]) -> Result<PresheafModule> {
        let cat = self.category();
        let mut components = Vec::new();
        let mut quotients = Vec::new();
        for x in cat.object_ids() {
            let (c, q) = self.components[x.0].quotient_by(&sub[x.0])?;
            components.push(c);
            quotients.push(q);
        }
        let restrictions = cat
            .morphism_ids()
            .map(|a| {
                let (qx, qy) = (&quotients[cat.dom(a).0], &quotients[cat.cod(a).0]);
                qx.projection().mul(&self.restrictions[a.0]).mul(qy.section())
            })
            .collect();
        let v = PresheafModule { presheaf: self.presheaf.clone(), components, restrictions };
        v.check()?;
        Ok(v)
    }
}

fn backing_presheaf(w: &Arc<Modulation>) -> Result<&Arc<PresheafOfAlgebras>> {
    if w.variance() != Variance::Contravariant {
        return Err(Error::NotPresheafBacked);
    }
    w.presheaf().ok_or(Error::NotPresheafBacked)
}

/// `ρ_α(v) = V(α)(v ⊗ 1)` for a representation of a presheaf-derived comodulation.
pub fn comod_rep_to_presheaf_module(v: &LaxTransformation) -> Result<PresheafModule> {
    let r = backing_presheaf(v.modulation())?;
    if v.coefficients().dim() != 1 {
        return Err(Error::AlgebraMismatch("presheaf modules need ground-field coefficients".into()));
    }
    let cat = r.category();
    let field = r.field();
    let restrictions = cat
        .morphism_ids()
        .map(|a| {
            let (x, y) = (cat.dom(a), cat.cod(a));
            let unit = r.algebra(x).unit();
            let cols: Vec<Vec<Scalar>> = (0..v.component(y).dim())
                .map(|k| v.map(a).eval_left_basis(field, k, unit))
                .collect();
            Matrix::from_columns(field, v.component(x).dim(), &cols)
        })
        .collect();
    let components = cat.object_ids().map(|x| v.component(x).clone()).collect();
    let p = PresheafModule { presheaf: r.clone(), components, restrictions };
    p.check()?;
    Ok(p)
}

/// Inverse of [`comod_rep_to_presheaf_module`]: `V(α)(v ⊗ r) = ρ_α(v) · r`.
pub fn presheaf_module_to_comod_rep(p: &PresheafModule, w: &Arc<Modulation>) -> Result<LaxTransformation> {
    let r = backing_presheaf(w)?;
    if !same_presheaf(r, &p.presheaf) {
        return Err(Error::BaseMismatch);
    }
    let cat = r.category();
    let k = Arc::new(Algebra::ground(r.field()));
    let components = cat
        .object_ids()
        .map(|x| {
            let c = &p.components[x.0];
            let c = Bimodule::new(k.clone(), c.right_algebra().clone(), c.dim(), c.left_actions().to_vec(), c.right_actions().to_vec())?;
            Ok((x, c))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let maps = cat
        .morphism_ids()
        .filter(|&a| !cat.is_identity(a))
        .map(|a| {
            let (x, y) = (cat.dom(a), cat.cod(a));
            let cx = &p.components[x.0];
            let rho = &p.restrictions[a.0];
            let table = PairTable::from_fn(p.components[y.0].dim(), r.algebra(x).dim(), cx.dim(), |k, j| {
                cx.right_action(j).mul_vec(&rho.column(k))
            });
            (a, table)
        })
        .collect();
    lax_check(&RawLaxTransformation { modulation: w.clone(), coefficients: k, components, maps })
}

/// `V|_x`: the pullback of `R` and `V` along the projection `C/x → C`.
#[derive(Clone, Debug)]
pub struct RestrictedModule {
    pub slice: SliceCategory,
    pub presheaf: Arc<PresheafOfAlgebras>,
    pub module: PresheafModule,
}

pub fn restrict(v: &PresheafModule, x: ObjId) -> Result<RestrictedModule> {
    let s = slice(v.category(), x)?;
    let r = Arc::new(v.presheaf.restrict_to_slice(&s));
    let module = restrict_along(v, &s, &r)?;
    Ok(RestrictedModule { slice: s, presheaf: r, module })
}

fn restrict_along(v: &PresheafModule, s: &SliceCategory, r: &Arc<PresheafOfAlgebras>) -> Result<PresheafModule> {
    let cat = s.category();
    let m = PresheafModule {
        presheaf: r.clone(),
        components: cat.object_ids().map(|o| v.components[s.project_object(o).0].clone()).collect(),
        restrictions: cat.morphism_ids().map(|a| v.restrictions[s.project(a).0].clone()).collect(),
    };
    m.check()?;
    Ok(m)
}

/// Solution space of a presheaf-module hom system, with the per-object unpacking.
#[derive(Clone, Debug)]
pub struct PresheafHomSpace {
    pub space: Subspace,
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
}

impl PresheafHomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `φ_x` of a solution vector.
    pub fn component(&self, solution: &[Scalar], x: ObjId) -> Matrix {
        let (rows, cols) = self.shapes[x.0];
        let field = self.space.field();
        unvectorize(field, rows, cols, &solution[self.offsets[x.0]..self.offsets[x.0] + rows * cols])
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.space.basis_vectors()
    }
}

/// Homs `U → V` of presheaf modules: right-linear components commuting with restrictions.
pub fn presheaf_hom_space(u: &PresheafModule, v: &PresheafModule) -> Result<PresheafHomSpace> {
    if !same_presheaf(&u.presheaf, &v.presheaf) {
        return Err(Error::BaseMismatch);
    }
    let cat = u.category();
    let field = u.field();
    let shapes: Vec<(usize, usize)> =
        cat.object_ids().map(|x| (v.components[x.0].dim(), u.components[x.0].dim())).collect();
    let mut offsets = vec![0];
    for (r, c) in &shapes {
        offsets.push(offsets.last().unwrap() + r * c);
    }
    let unknowns = *offsets.last().unwrap();
    let var = |x: ObjId, r: usize, c: usize| offsets[x.0] + r * shapes[x.0].1 + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut push = |eq: Vec<Scalar>| {
        if eq.iter().any(|e| !e.is_zero()) {
            rows.push(eq);
        }
    };
    for x in cat.object_ids() {
        let (du, dv) = (shapes[x.0].1, shapes[x.0].0);
        for (s, t) in u.components[x.0].right_actions().iter().zip(v.components[x.0].right_actions()) {
            // φ S = T φ
            for r in 0..dv {
                for c in 0..du {
                    let mut eq = field.zeros(unknowns);
                    for k in 0..du {
                        eq[var(x, r, k)] += s.get(k, c);
                    }
                    for k in 0..dv {
                        eq[var(x, k, c)] -= t.get(r, k);
                    }
                    push(eq);
                }
            }
        }
    }
    for a in cat.morphism_ids().filter(|&a| !cat.is_identity(a)) {
        let (x, y) = (cat.dom(a), cat.cod(a));
        let (ru, rv) = (&u.restrictions[a.0], &v.restrictions[a.0]);
        // φ_x ρU = ρV φ_y
        for r in 0..shapes[x.0].0 {
            for c in 0..shapes[y.0].1 {
                let mut eq = field.zeros(unknowns);
                for k in 0..shapes[x.0].1 {
                    eq[var(x, r, k)] += ru.get(k, c);
                }
                for k in 0..shapes[y.0].0 {
                    eq[var(y, k, c)] -= rv.get(r, k);
                }
                push(eq);
            }
        }
    }
    let space = kernel(&Matrix::from_rows(field, unknowns, rows));
    Ok(PresheafHomSpace { space, offsets, shapes })
}

/// Verdict of the finite-type test at one object `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectVerdict {
    pub object: String,
    /// `dim Hom(R|_x, V|_x)`; a valid `n_x` whenever the object passes.
    pub hom_dim: usize,
    pub passes: bool,
    /// Slice objects `(w, α)` where the images of all homs fail to span `V(w)`.
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub finite_type: bool,
    pub objects: Vec<ObjectVerdict>,
}

/// `V|_x` is a quotient of some `R|_x^n` for every `x`.
///
/// A surjection from a finite power exists iff the images of a basis of
/// `Hom(R|_x, V|_x)` jointly span every component, and then `n = dim Hom` works.
pub fn finite_type(v: &PresheafModule) -> Result<FiniteTypeReport> {
    let cat = v.category();
    let objects = par::try_map_indexed(cat.object_count(), |i| {
        let x = ObjId(i);
        let restricted = restrict(v, x)?;
        let structure = PresheafModule::structure(&restricted.presheaf);
        let hom = presheaf_hom_space(&structure, &restricted.module)?;
        let basis = hom.basis();
        let scat = restricted.slice.category();
        let mut failing = Vec::new();
        for o in scat.object_ids() {
            let target = restricted.module.components[o.0].dim();
            let images: Vec<Vec<Scalar>> =
                basis.iter().flat_map(|h| hom.component(h, o).transpose().row_vecs()).collect();
            if Subspace::span(v.field(), target, &images).dim() < target {
                failing.push(scat.object_label(o).to_string());
            }
        }
        Ok::<_, Error>(ObjectVerdict {
            object: cat.object_label(x).to_string(),
            hom_dim: hom.dim(),
            passes: failing.is_empty(),
            failing,
        })
    })?;
    Ok(FiniteTypeReport { finite_type: objects.iter().all(|o| o.passes), objects })
}

/// Whether the action closure of `gens` is all of `m`.
pub fn finitely_generated(m: &Bimodule, gens: &[Vec<Scalar>]) -> bool {
    m.generated_submodule(gens).dim() == m.dim()
}

/// Greedy generating set drawn from the standard basis.
///
/// Each step adds the basis vector enlarging the generated submodule the most, ties
/// broken by basis order. The count is an upper bound on the minimal number.
pub fn minimal_generators(m: &Bimodule) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let mut current = 0;
    while current < m.dim() {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..m.dim() {
            let mut trial = gens.clone();
            trial.push(field.unit_vector(m.dim(), i));
            let d = m.generated_submodule(&trial).dim();
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, i));
            }
        }
        let (d, i) = best.expect("nonempty module");
        gens.push(field.unit_vector(m.dim(), i));
        current = d;
    }
    gens
}

/// Finite-type and finite-generation verdicts for one presheaf module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVerdict {
    pub dims: Vec<usize>,
    pub finitely_generated: bool,
    pub generators: usize,
    pub finite_type: FiniteTypeReport,
}

/// Runs both tests on `v`, going through the module `ι*` of its representation.
pub fn assess(a: &ModCatAlgebra, v: &PresheafModule) -> Result<ModuleVerdict> {
    let rep = presheaf_module_to_comod_rep(v, a.source())?;
    let module = iota_star(a, &rep)?;
    let gens = minimal_generators(&module);
    Ok(ModuleVerdict {
        dims: v.dims(),
        finitely_generated: finitely_generated(&module, &gens),
        generators: gens.len(),
        finite_type: finite_type(v)?,
    })
}

/// The presheaf module corresponding to the projective `1_x · R[C]`.
pub fn projective_presheaf_module(a: &ModCatAlgebra, x: ObjId) -> Result<PresheafModule> {
    let p = a.projective(x)?;
    let rep = crate::equivalence::pi_star(a, &p)?.transformation;
    comod_rep_to_presheaf_module(&rep)
}

/// Data of the two-object, two-arrow example with the constant presheaf `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub algebra_dim: usize,
    pub px: ModuleVerdict,
    pub py: ModuleVerdict,
    /// `dim Hom(k|_y, P_x|_y)`
    pub hom_dim: usize,
    /// Component dimensions of `P_x|_x`, `P_x|_y` and `P_y|_x`, in slice object order.
    pub px_at_x: Vec<(String, usize)>,
    pub px_at_y: Vec<(String, usize)>,
    pub py_at_x: Vec<(String, usize)>,
    /// The structure module and its square: both tests pass.
    pub structure: ModuleVerdict,
    pub structure_squared: ModuleVerdict,
}

pub fn separation_demo(field: Field) -> Result<SeparationReport> {
    let cat = crate::corpus::parallel_arrows();
    let k = Arc::new(Algebra::ground(field));
    let r = Arc::new(PresheafOfAlgebras::constant(&cat, &k));
    let a = skew_category_algebra(&r)?;
    let (x, y) = (cat.find_object("x")?, cat.find_object("y")?);
    let px = projective_presheaf_module(&a, x)?;
    let py = projective_presheaf_module(&a, y)?;

    let values = |v: &PresheafModule, at: ObjId| -> Result<Vec<(String, usize)>> {
        let res = restrict(v, at)?;
        let scat = res.slice.category().clone();
        Ok(scat.object_ids().map(|o| (scat.object_label(o).to_string(), res.module.components[o.0].dim())).collect())
    };
    let px_at_y = restrict(&px, y)?;
    let hom = presheaf_hom_space(&PresheafModule::structure(&px_at_y.presheaf), &px_at_y.module)?;
    let structure = PresheafModule::structure(&r);
    Ok(SeparationReport {
        algebra_dim: a.dim(),
        px: assess(&a, &px)?,
        py: assess(&a, &py)?,
        hom_dim: hom.dim(),
        px_at_x: values(&px, x)?,
        px_at_y: values(&px, y)?,
        py_at_x: values(&py, x)?,
        structure: assess(&a, &structure)?,
        structure_squared: assess(&a, &structure.direct_sum(&structure)?)?,
    })
}

/// Evaluation at the terminal object `(x, 1_x)` of the slice, `Hom(R|_x, V|_x) → V(x)`.
pub fn evaluate_at_apex(res: &RestrictedModule, hom: &PresheafHomSpace, h: &[Scalar]) -> Vec<Scalar> {
    let t = res.slice.terminal();
    hom.component(h, t).mul_vec(res.presheaf.algebra(t).unit())
}
