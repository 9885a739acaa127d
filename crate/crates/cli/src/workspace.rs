//! The JSON workspace format and resolution of its named, cross-referenced objects.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::Arc;

use modcat::algebra::{Algebra, AlgebraHom, Bimodule, PairTable};
use modcat::equivalence::{lax_check, LaxTransformation, RawLaxTransformation};
use modcat::fincat::{free_category, FiniteCategory, Quiver, RawCategory};
use modcat::finiteness::{PresheafModule, RawPresheafModule};
use modcat::linalg::{Field, Matrix, Scalar};
use modcat::mcalgebra::ModCatAlgebra;
use modcat::modulation::{
    constant_modulation, presheaf_to_comodulation, presheaf_to_modulation, Modulation, PresheafOfAlgebras,
    RawModulation, RawPresheaf, Variance,
};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub format_version: String,
    pub field: String,
    #[serde(default)]
    pub categories: BTreeMap<String, CategoryDef>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDef>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDef>,
    #[serde(default)]
    pub presheaves: BTreeMap<String, PresheafDef>,
    #[serde(default)]
    pub modulations: BTreeMap<String, ModulationDef>,
    #[serde(default)]
    pub representations: BTreeMap<String, RepresentationDef>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDef>,
    #[serde(default)]
    pub presheaf_modules: BTreeMap<String, PresheafModuleDef>,
}

/// A scalar as `"a/b"` text or a bare integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarDef {
    Int(i64),
    Text(String),
}

pub type VectorDef = Vec<ScalarDef>;
/// Rows of a matrix.
pub type MatrixDef = Vec<VectorDef>;
/// `table[i][j]` is the image of the pure tensor `e_i ⊗ e_j`.
pub type TableDef = Vec<Vec<VectorDef>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDef {
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDef>,
    /// object → identity label. When absent, identities `1_x` are generated.
    pub identities: Option<BTreeMap<String, String>>,
    /// `[g, f, g∘f]`
    #[serde(default)]
    pub compositions: Vec<(String, String, String)>,
    /// Free category on an acyclic quiver instead of an explicit table.
    pub free_on: Option<QuiverDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDef {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDef {
    /// `ground`, `dual_numbers`, `gaussian`, `upper_triangular` or `diagonal:<n>`
    Builtin { name: String },
    Explicit { dim: Option<usize>, basis: Vec<String>, unit: VectorDef, mult: TableDef },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BimoduleDef {
    Explicit {
        /// Defaults to the ground field.
        left: Option<String>,
        right: Option<String>,
        dim: usize,
        #[serde(default)]
        left_action: Vec<MatrixDef>,
        #[serde(default)]
        right_action: Vec<MatrixDef>,
    },
    Regular { algebra: String },
    RightRegular { algebra: String },
    /// `_B A_A` for a homomorphism `B → A`
    LeftVia { source: String, target: String, matrix: MatrixDef },
    /// `_A A_B` for a homomorphism `B → A`
    RightVia { source: String, target: String, matrix: MatrixDef },
}

/// A bimodule by name or inline.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum BimoduleRef {
    Name(String),
    Inline(BimoduleDef),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDef {
    pub category: String,
    pub object_algebras: BTreeMap<String, String>,
    #[serde(default)]
    pub restriction_maps: BTreeMap<String, MatrixDef>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceDef {
    Covariant,
    Contravariant,
}

impl From<VarianceDef> for Variance {
    fn from(v: VarianceDef) -> Self {
        match v {
            VarianceDef::Covariant => Variance::Covariant,
            VarianceDef::Contravariant => Variance::Contravariant,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModulationDef {
    Explicit {
        category: String,
        variance: VarianceDef,
        object_algebras: BTreeMap<String, String>,
        #[serde(default)]
        morphism_bimodules: BTreeMap<String, BimoduleRef>,
        /// Keyed `"g∘f"`.
        #[serde(default)]
        compositors: BTreeMap<String, TableDef>,
    },
    FromPresheaf { presheaf: String, variance: VarianceDef },
    Constant { category: String, algebra: String, variance: VarianceDef },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDef {
    pub modulation: String,
    /// Defaults to the ground field.
    pub coefficient_algebra: Option<String>,
    pub components: BTreeMap<String, BimoduleRef>,
    #[serde(default)]
    pub maps: BTreeMap<String, TableDef>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDef {
    /// A right module over the algebra of `modulation`, one matrix per basis element.
    Explicit {
        modulation: String,
        dim: usize,
        right_action: Vec<MatrixDef>,
        /// Defaults to the ground field.
        coefficient_algebra: Option<String>,
        #[serde(default)]
        left_action: Vec<MatrixDef>,
    },
    Regular { modulation: String },
    /// `1_x · A`
    Projective { modulation: String, object: String },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PresheafModuleDef {
    Explicit {
        presheaf: String,
        components: BTreeMap<String, BimoduleRef>,
        #[serde(default)]
        restrictions: BTreeMap<String, MatrixDef>,
    },
    /// The structure presheaf as a module over itself.
    Structure { presheaf: String },
    /// The presheaf module of `1_x · R[C]`.
    Projective { presheaf: String, object: String },
}

pub fn parse(text: &str) -> Result<WorkspaceFile, CliError> {
    let ws: WorkspaceFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), reason: e.to_string() })?;
    if ws.format_version != "1" {
        return Err(CliError::Parse { line: 0, reason: format!("unsupported format_version {:?}", ws.format_version) });
    }
    Ok(ws)
}

/// Lazily resolved workspace objects, cached by name.
pub struct Context {
    pub file: WorkspaceFile,
    pub field: Field,
    categories: RefCell<BTreeMap<String, Arc<FiniteCategory>>>,
    algebras: RefCell<BTreeMap<String, Arc<Algebra>>>,
    presheaves: RefCell<BTreeMap<String, Arc<PresheafOfAlgebras>>>,
    modulations: RefCell<BTreeMap<String, Arc<Modulation>>>,
    mcalgebras: RefCell<BTreeMap<String, Arc<ModCatAlgebra>>>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str) -> Result<&'a T, CliError> {
    map.get(name).ok_or_else(|| CliError::UnresolvedReference(format!("{kind} {name:?}")))
}

fn cached<T: Clone>(
    cache: &RefCell<BTreeMap<String, T>>,
    name: &str,
    build: impl FnOnce() -> Result<T, CliError>,
) -> Result<T, CliError> {
    if let Some(v) = cache.borrow().get(name) {
        return Ok(v.clone());
    }
    let v = build()?;
    cache.borrow_mut().insert(name.to_string(), v.clone());
    Ok(v)
}

impl Context {
    pub fn new(file: WorkspaceFile, field_override: Option<Field>) -> Result<Self, CliError> {
        let field = match field_override {
            Some(f) => f,
            None => file.field.parse().map_err(|e: modcat::Error| CliError::Parse { line: 0, reason: e.to_string() })?,
        };
        Ok(Context {
            file,
            field,
            categories: RefCell::default(),
            algebras: RefCell::default(),
            presheaves: RefCell::default(),
            modulations: RefCell::default(),
            mcalgebras: RefCell::default(),
        })
    }

    fn check<T>(&self, location: &str, r: modcat::Result<T>) -> Result<T, CliError> {
        r.map_err(|error| CliError::Check { location: location.to_string(), error })
    }

    pub fn scalar(&self, s: &ScalarDef) -> Result<Scalar, CliError> {
        match s {
            ScalarDef::Int(n) => Ok(self.field.from_i64(*n)),
            ScalarDef::Text(t) => self.field.parse(t).map_err(|e| CliError::Parse { line: 0, reason: e.to_string() }),
        }
    }

    pub fn vector(&self, v: &VectorDef, len: usize, what: &str) -> Result<Vec<Scalar>, CliError> {
        if v.len() != len {
            return Err(CliError::Shape(format!("{what}: expected length {len}, found {}", v.len())));
        }
        v.iter().map(|s| self.scalar(s)).collect()
    }

    pub fn matrix(&self, m: &MatrixDef, rows: usize, cols: usize, what: &str) -> Result<Matrix, CliError> {
        if m.len() != rows {
            return Err(CliError::Shape(format!("{what}: expected {rows} rows, found {}", m.len())));
        }
        let rows = m.iter().map(|r| self.vector(r, cols, what)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(self.field, cols, rows))
    }

    pub fn table(&self, t: &TableDef, left: usize, right: usize, target: usize, what: &str) -> Result<PairTable, CliError> {
        if t.len() != left || t.iter().any(|r| r.len() != right) {
            return Err(CliError::Shape(format!("{what}: expected a {left}×{right} table")));
        }
        let values = t
            .iter()
            .flat_map(|r| r.iter())
            .map(|v| self.vector(v, target, what))
            .collect::<Result<Vec<_>, _>>()?;
        self.check(what, PairTable::new(left, right, target, values))
    }

    pub fn category(&self, name: &str) -> Result<Arc<FiniteCategory>, CliError> {
        cached(&self.categories, name, || {
            let def = lookup(&self.file.categories, name, "category")?;
            let loc = format!("category {name}");
            let cat = match &def.free_on {
                Some(q) => {
                    let quiver = self.check(&loc, Quiver::new(q.vertices.clone(), q.arrows.clone()))?;
                    self.check(&loc, free_category(&quiver))?
                }
                None => {
                    let mut raw = RawCategory::new();
                    match &def.identities {
                        Some(ids) => {
                            raw.objects = def.objects.clone();
                            raw.identities = ids.clone();
                        }
                        None => {
                            for o in &def.objects {
                                raw = raw.object(o);
                            }
                        }
                    }
                    for m in &def.morphisms {
                        raw = raw.morphism(&m.id, &m.dom, &m.cod);
                    }
                    for (g, f, gf) in &def.compositions {
                        raw = raw.compose(g, f, gf);
                    }
                    self.check(&loc, raw.validate())?
                }
            };
            Ok(Arc::new(cat))
        })
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<Algebra>, CliError> {
        cached(&self.algebras, name, || {
            let def = lookup(&self.file.algebras, name, "algebra")?;
            let loc = format!("algebra {name}");
            let f = self.field;
            let alg = match def {
                AlgebraDef::Builtin { name: b } => match b.as_str() {
                    "ground" => Algebra::ground(f),
                    "dual_numbers" => Algebra::dual_numbers(f),
                    "gaussian" => Algebra::gaussian(f),
                    "upper_triangular" => Algebra::upper_triangular(f),
                    other => match other.strip_prefix("diagonal:").and_then(|n| n.parse().ok()) {
                        Some(n) => Algebra::diagonal(f, n),
                        None => return Err(CliError::UnresolvedReference(format!("builtin algebra {other:?}"))),
                    },
                },
                AlgebraDef::Explicit { dim, basis, unit, mult } => {
                    let n = basis.len();
                    if dim.is_some_and(|d| d != n) {
                        return Err(CliError::Shape(format!("{loc}: dim does not match the basis")));
                    }
                    let unit = self.vector(unit, n, &loc)?;
                    let table = self.table(mult, n, n, n, &loc)?;
                    self.check(&loc, Algebra::new(f, basis.clone(), unit, table.values().to_vec()))?
                }
            };
            Ok(Arc::new(alg))
        })
    }

    fn ground(&self) -> Arc<Algebra> {
        Arc::new(Algebra::ground(self.field))
    }

    fn optional_algebra(&self, name: &Option<String>) -> Result<Arc<Algebra>, CliError> {
        match name {
            Some(n) => self.algebra(n),
            None => Ok(self.ground()),
        }
    }

    fn hom(&self, source: &str, target: &str, m: &MatrixDef, loc: &str) -> Result<AlgebraHom, CliError> {
        let (s, t) = (self.algebra(source)?, self.algebra(target)?);
        let matrix = self.matrix(m, t.dim(), s.dim(), loc)?;
        self.check(loc, AlgebraHom::new(s, t, matrix))
    }

    pub fn bimodule_def(&self, def: &BimoduleDef, loc: &str) -> Result<Bimodule, CliError> {
        Ok(match def {
            BimoduleDef::Explicit { left, right, dim, left_action, right_action } => {
                let (l, r) = (self.optional_algebra(left)?, self.optional_algebra(right)?);
                let left_action = if left_action.is_empty() && l.dim() == 1 {
                    vec![Matrix::identity(self.field, *dim)]
                } else {
                    left_action.iter().map(|m| self.matrix(m, *dim, *dim, loc)).collect::<Result<_, _>>()?
                };
                let right_action = if right_action.is_empty() && r.dim() == 1 {
                    vec![Matrix::identity(self.field, *dim)]
                } else {
                    right_action.iter().map(|m| self.matrix(m, *dim, *dim, loc)).collect::<Result<_, _>>()?
                };
                self.check(loc, Bimodule::new(l, r, *dim, left_action, right_action))?
            }
            BimoduleDef::Regular { algebra } => Bimodule::regular(self.algebra(algebra)?),
            BimoduleDef::RightRegular { algebra } => Bimodule::right_regular(self.algebra(algebra)?),
            BimoduleDef::LeftVia { source, target, matrix } => Bimodule::left_via(&self.hom(source, target, matrix, loc)?),
            BimoduleDef::RightVia { source, target, matrix } => {
                Bimodule::right_via(&self.hom(source, target, matrix, loc)?)
            }
        })
    }

    pub fn bimodule(&self, r: &BimoduleRef, loc: &str) -> Result<Bimodule, CliError> {
        match r {
            BimoduleRef::Name(n) => {
                let def = lookup(&self.file.bimodules, n, "bimodule")?;
                self.bimodule_def(def, &format!("bimodule {n}"))
            }
            BimoduleRef::Inline(def) => self.bimodule_def(def, loc),
        }
    }

    fn object_algebras(
        &self,
        cat: &FiniteCategory,
        names: &BTreeMap<String, String>,
    ) -> Result<BTreeMap<modcat::fincat::ObjId, Arc<Algebra>>, CliError> {
        names
            .iter()
            .map(|(x, a)| {
                let id = cat.find_object(x).map_err(|_| CliError::UnresolvedReference(format!("object {x:?}")))?;
                Ok((id, self.algebra(a)?))
            })
            .collect()
    }

    fn morphism(&self, cat: &FiniteCategory, label: &str) -> Result<modcat::fincat::MorId, CliError> {
        cat.find_morphism(label).map_err(|_| CliError::UnresolvedReference(format!("morphism {label:?}")))
    }

    fn object(&self, cat: &FiniteCategory, label: &str) -> Result<modcat::fincat::ObjId, CliError> {
        cat.find_object(label).map_err(|_| CliError::UnresolvedReference(format!("object {label:?}")))
    }

    pub fn presheaf(&self, name: &str) -> Result<Arc<PresheafOfAlgebras>, CliError> {
        cached(&self.presheaves, name, || {
            let def = lookup(&self.file.presheaves, name, "presheaf")?;
            let loc = format!("presheaf {name}");
            let cat = self.category(&def.category)?;
            let algebras = self.object_algebras(&cat, &def.object_algebras)?;
            let mut restrictions = BTreeMap::new();
            for (label, m) in &def.restriction_maps {
                let a = self.morphism(&cat, label)?;
                let (rows, cols) = (
                    algebras.get(&cat.dom(a)).map_or(0, |x| x.dim()),
                    algebras.get(&cat.cod(a)).map_or(0, |x| x.dim()),
                );
                restrictions.insert(a, self.matrix(m, rows, cols, &loc)?);
            }
            let raw = RawPresheaf { category: cat, algebras, restrictions };
            Ok(Arc::new(self.check(&loc, PresheafOfAlgebras::validate(&raw))?))
        })
    }

    pub fn modulation(&self, name: &str) -> Result<Arc<Modulation>, CliError> {
        cached(&self.modulations, name, || {
            let def = lookup(&self.file.modulations, name, "modulation")?;
            let loc = format!("modulation {name}");
            let m = match def {
                ModulationDef::FromPresheaf { presheaf, variance } => {
                    let r = self.presheaf(presheaf)?;
                    match Variance::from(*variance) {
                        Variance::Covariant => self.check(&loc, presheaf_to_modulation(&r))?,
                        Variance::Contravariant => self.check(&loc, presheaf_to_comodulation(&r))?,
                    }
                }
                ModulationDef::Constant { category, algebra, variance } => {
                    let cat = self.category(category)?;
                    self.check(&loc, constant_modulation(&cat, &self.algebra(algebra)?, (*variance).into()))?
                }
                ModulationDef::Explicit { category, variance, object_algebras, morphism_bimodules, compositors } => {
                    let cat = self.category(category)?;
                    let algebras = self.object_algebras(&cat, object_algebras)?;
                    let mut bimodules = BTreeMap::new();
                    for (label, b) in morphism_bimodules {
                        bimodules.insert(self.morphism(&cat, label)?, self.bimodule(b, &format!("{loc} at {label}"))?);
                    }
                    let variance = Variance::from(*variance);
                    let block_dim = |f: modcat::fincat::MorId| -> usize {
                        if cat.is_identity(f) {
                            algebras.get(&cat.dom(f)).map_or(0, |a| a.dim())
                        } else {
                            bimodules.get(&f).map_or(0, Bimodule::dim)
                        }
                    };
                    let mut tables = BTreeMap::new();
                    for (key, t) in compositors {
                        // composite labels may themselves contain '∘', so try every split
                        let (g, f) = key
                            .match_indices('∘')
                            .find_map(|(i, sep)| {
                                let (g, f) = (&key[..i], &key[i + sep.len()..]);
                                Some((cat.find_morphism(g).ok()?, cat.find_morphism(f).ok()?))
                            })
                            .ok_or_else(|| CliError::Shape(format!("compositor key {key:?} is not of the form g∘f")))?;
                        let gf = cat.compose(g, f).ok_or_else(|| {
                            CliError::Shape(format!("compositor key {key:?} is not a composable pair"))
                        })?;
                        let (left, right) = match variance {
                            Variance::Covariant => (f, g),
                            Variance::Contravariant => (g, f),
                        };
                        let table =
                            self.table(t, block_dim(left), block_dim(right), block_dim(gf), &format!("{loc} {key}"))?;
                        tables.insert((g, f), table);
                    }
                    let raw = RawModulation { category: cat, variance, algebras, bimodules, compositors: tables };
                    self.check(&loc, Modulation::validate(&raw))?
                }
            };
            Ok(Arc::new(m))
        })
    }

    pub fn mcalgebra(&self, modulation: &str) -> Result<Arc<ModCatAlgebra>, CliError> {
        cached(&self.mcalgebras, modulation, || {
            let m = self.modulation(modulation)?;
            Ok(Arc::new(self.check(&format!("algebra of {modulation}"), ModCatAlgebra::new(m))?))
        })
    }

    pub fn representation(&self, name: &str) -> Result<(String, LaxTransformation), CliError> {
        let def = lookup(&self.file.representations, name, "representation")?;
        let loc = format!("representation {name}");
        let m = self.modulation(&def.modulation)?;
        let cat = m.category().clone();
        let coefficients = self.optional_algebra(&def.coefficient_algebra)?;
        let mut components = BTreeMap::new();
        for (x, b) in &def.components {
            components.insert(self.object(&cat, x)?, self.bimodule(b, &format!("{loc} at {x}"))?);
        }
        let dim_at = |x: modcat::fincat::ObjId| components.get(&x).map_or(0, Bimodule::dim);
        let mut maps = BTreeMap::new();
        for (label, t) in &def.maps {
            let f = self.morphism(&cat, label)?;
            let table =
                self.table(t, dim_at(m.source(f)), m.block(f).dim(), dim_at(m.target(f)), &format!("{loc} {label}"))?;
            maps.insert(f, table);
        }
        let raw = RawLaxTransformation { modulation: m, coefficients, components, maps };
        Ok((def.modulation.clone(), self.check(&loc, lax_check(&raw))?))
    }

    /// A module and the name of the modulation whose algebra it is over.
    pub fn module(&self, name: &str) -> Result<(String, Bimodule), CliError> {
        let def = lookup(&self.file.modules, name, "module")?;
        let loc = format!("module {name}");
        match def {
            ModuleDef::Explicit { modulation, dim, right_action, coefficient_algebra, left_action } => {
                let a = self.mcalgebra(modulation)?;
                let coefficients = self.optional_algebra(coefficient_algebra)?;
                let right = right_action.iter().map(|m| self.matrix(m, *dim, *dim, &loc)).collect::<Result<_, _>>()?;
                let left = if left_action.is_empty() && coefficients.dim() == 1 {
                    vec![Matrix::identity(self.field, *dim)]
                } else {
                    left_action.iter().map(|m| self.matrix(m, *dim, *dim, &loc)).collect::<Result<_, _>>()?
                };
                let b = self.check(&loc, Bimodule::new(coefficients, a.carrier().clone(), *dim, left, right))?;
                Ok((modulation.clone(), b))
            }
            ModuleDef::Regular { modulation } => Ok((modulation.clone(), self.mcalgebra(modulation)?.regular_right_module())),
            ModuleDef::Projective { modulation, object } => {
                let a = self.mcalgebra(modulation)?;
                let x = self.object(a.category(), object)?;
                Ok((modulation.clone(), self.check(&loc, a.projective(x))?))
            }
        }
    }

    pub fn presheaf_module(&self, name: &str) -> Result<PresheafModule, CliError> {
        let def = lookup(&self.file.presheaf_modules, name, "presheaf module")?;
        let loc = format!("presheaf module {name}");
        match def {
            PresheafModuleDef::Structure { presheaf } => Ok(PresheafModule::structure(&self.presheaf(presheaf)?)),
            PresheafModuleDef::Projective { presheaf, object } => {
                let r = self.presheaf(presheaf)?;
                let a = self.check(&loc, modcat::mcalgebra::skew_category_algebra(&r))?;
                let x = self.object(r.category(), object)?;
                self.check(&loc, modcat::finiteness::projective_presheaf_module(&a, x))
            }
            PresheafModuleDef::Explicit { presheaf, components, restrictions } => {
                let r = self.presheaf(presheaf)?;
                let cat = r.category().clone();
                let mut comps = BTreeMap::new();
                for (x, b) in components {
                    comps.insert(self.object(&cat, x)?, self.bimodule(b, &format!("{loc} at {x}"))?);
                }
                let dim_at = |x: modcat::fincat::ObjId| comps.get(&x).map_or(0, Bimodule::dim);
                let mut rho = BTreeMap::new();
                for (label, m) in restrictions {
                    let a = self.morphism(&cat, label)?;
                    rho.insert(a, self.matrix(m, dim_at(cat.dom(a)), dim_at(cat.cod(a)), &loc)?);
                }
                let raw = RawPresheafModule { presheaf: r, components: comps, restrictions: rho };
                self.check(&loc, PresheafModule::validate(&raw))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(text: &str) -> Context {
        Context::new(parse(text).unwrap(), None).unwrap()
    }

    #[test]
    fn scalars_accept_ints_and_fractions() {
        let c = ctx(r#"{"format_version": "1", "field": "q"}"#);
        assert_eq!(c.scalar(&ScalarDef::Text("-3/6".into())).unwrap(), c.field.from_ratio(-1, 2).unwrap());
        assert_eq!(c.scalar(&ScalarDef::Int(4)).unwrap(), c.field.from_i64(4));
    }

    #[test]
    fn prime_field_from_file() {
        let c = ctx(r#"{"format_version": "1", "field": "fp:5"}"#);
        assert_eq!(c.scalar(&ScalarDef::Int(7)).unwrap(), c.field.from_i64(2));
    }

    #[test]
    fn wrong_version_rejected() {
        assert!(matches!(parse(r#"{"format_version": "2", "field": "q"}"#), Err(CliError::Parse { .. })));
    }

    #[test]
    fn free_category_and_compositor_key() {
        let c = ctx(r#"{
          "format_version": "1", "field": "q",
          "categories": {"A3": {"free_on": {"vertices": ["a","b","c"], "arrows": [["f","a","b"],["g","b","c"]]}}},
          "algebras": {"k": {"kind": "builtin", "name": "ground"}},
          "modulations": {"m": {
            "kind": "explicit", "category": "A3", "variance": "covariant",
            "object_algebras": {"a": "k", "b": "k", "c": "k"},
            "morphism_bimodules": {
              "f": {"kind": "regular", "algebra": "k"},
              "g": {"kind": "regular", "algebra": "k"},
              "g∘f": {"kind": "regular", "algebra": "k"}
            },
            "compositors": {"g∘f": [[["2"]]]}
          }}
        }"#);
        let cat = c.category("A3").unwrap();
        assert_eq!(cat.morphism_count(), 6);
        let m = c.modulation("m").unwrap();
        assert_eq!(m.block(cat.find_morphism("g∘f").unwrap()).dim(), 1);
    }

    #[test]
    fn bad_compositor_key() {
        let c = ctx(r#"{
          "format_version": "1", "field": "q",
          "categories": {"pt": {"objects": ["*"]}},
          "algebras": {"k": {"kind": "builtin", "name": "ground"}},
          "modulations": {"m": {"kind": "explicit", "category": "pt", "variance": "covariant",
            "object_algebras": {"*": "k"}, "compositors": {"nonsense": []}}}
        }"#);
        assert!(matches!(c.modulation("m"), Err(CliError::Shape(_))));
    }
}
