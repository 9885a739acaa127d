use std::sync::Arc;

use modcat::algebra::{Bimodule, PairTable};
use modcat::corpus;
use modcat::equivalence::{
    iota_star, pi_star, roundtrip_module, roundtrip_representation, LaxTransformation, Modification,
};
use modcat::fincat::FiniteCategory;
use modcat::finiteness::{
    finite_type, finitely_generated, minimal_generators, presheaf_module_to_comod_rep,
    separation_demo, FiniteTypeReport, PresheafModule,
};
use modcat::linalg::{Field, Matrix, Scalar};
use modcat::mcalgebra::{category_algebra, skew_category_algebra, ModCatAlgebra};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::{self, Report};
use crate::workspace::{Context, ScalarDef};

fn sorted_names<T>(m: &std::collections::BTreeMap<String, T>) -> Vec<String> {
    m.keys().cloned().collect()
}

/// Records a check failure as a finding; input errors still abort.
fn record<T>(r: &mut Report, check: &str, location: &str, res: Result<T, CliError>) -> Result<Option<T>, CliError> {
    match res {
        Ok(v) => {
            r.pass(check, location);
            Ok(Some(v))
        }
        Err(CliError::Check { location: inner, error }) => {
            r.fail(check, location, &report::error_kind(&error), format!("{inner}: {error}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn validate(ctx: &Context) -> Result<Report, CliError> {
    let mut r = Report::new("validate");
    let f = &ctx.file;
    for n in sorted_names(&f.categories) {
        record(&mut r, "category", &n, ctx.category(&n))?;
    }
    for n in sorted_names(&f.algebras) {
        record(&mut r, "algebra", &n, ctx.algebra(&n))?;
    }
    for (n, def) in &f.bimodules {
        record(&mut r, "bimodule", n, ctx.bimodule_def(def, &format!("bimodule {n}")))?;
    }
    for n in sorted_names(&f.presheaves) {
        record(&mut r, "presheaf", &n, ctx.presheaf(&n))?;
    }
    for n in sorted_names(&f.modulations) {
        if record(&mut r, "modulation", &n, ctx.modulation(&n))?.is_some() {
            record(&mut r, "algebra_construction", &n, ctx.mcalgebra(&n))?;
        }
    }
    for n in sorted_names(&f.representations) {
        record(&mut r, "representation", &n, ctx.representation(&n))?;
    }
    for n in sorted_names(&f.modules) {
        record(&mut r, "module", &n, ctx.module(&n))?;
    }
    for n in sorted_names(&f.presheaf_modules) {
        record(&mut r, "presheaf_module", &n, ctx.presheaf_module(&n))?;
    }
    Ok(r)
}

pub fn algebra_artifact(a: &ModCatAlgebra) -> Value {
    let cat = a.category();
    let carrier = a.carrier();
    let basis: Vec<Value> =
        a.grading().iter().map(|&(f, j)| json!({"morphism": cat.label(f), "index": j})).collect();
    let mult: Vec<Value> = (0..a.dim())
        .map(|i| Value::Array((0..a.dim()).map(|j| report::vector(carrier.product(i, j))).collect()))
        .collect();
    let idempotents: Map<String, Value> =
        cat.object_ids().map(|x| (cat.object_label(x).to_string(), report::vector(a.idempotent(x)))).collect();
    json!({
        "dim": a.dim(),
        "basis": basis,
        "unit": report::vector(carrier.unit()),
        "mult": mult,
        "idempotents": idempotents,
    })
}

fn block_dims(a: &ModCatAlgebra) -> Value {
    let cat = a.category();
    let m = a.source();
    Value::Object(cat.morphism_ids().map(|f| (cat.label(f).to_string(), json!(m.block(f).dim()))).collect())
}

fn check_algebra(r: &mut Report, a: &ModCatAlgebra, location: &str) {
    let m = a.source();
    let total: usize = a.category().morphism_ids().map(|f| m.block(f).dim()).sum();
    r.expect("dimension_is_sum_of_blocks", location, a.dim() == total, || format!("{} != {total}", a.dim()));
    let carrier = a.carrier();
    let field = a.field();
    let mut sum = field.zeros(a.dim());
    for e in a.idempotents() {
        modcat::linalg::axpy(&mut sum, &field.one(), e);
    }
    r.expect("unit_is_sum_of_idempotents", location, sum == carrier.unit(), || "unit differs".into());
}

pub fn build_algebra(ctx: &Context, name: &str) -> Result<Report, CliError> {
    let mut r = Report::new("build-algebra");
    let a = if ctx.file.modulations.contains_key(name) {
        ctx.mcalgebra(name)?
    } else if ctx.file.presheaves.contains_key(name) {
        let p = ctx.presheaf(name)?;
        let loc = format!("skew algebra of {name}");
        Arc::new(skew_category_algebra(&p).map_err(|error| CliError::Check { location: loc, error })?)
    } else {
        return Err(CliError::UnresolvedReference(format!("modulation or presheaf {name:?}")));
    };
    r.pass("algebra_construction", name);
    check_algebra(&mut r, &a, name);
    r.artifact("algebra", algebra_artifact(&a));
    r.artifact("block_dims", block_dims(&a));
    Ok(r)
}

pub fn module_artifact(m: &Bimodule) -> Value {
    let mut o = Map::new();
    o.insert("dim".into(), json!(m.dim()));
    o.insert("right_action".into(), Value::Array(m.right_actions().iter().map(report::matrix).collect()));
    if m.left_algebra().dim() > 1 {
        o.insert("left_action".into(), Value::Array(m.left_actions().iter().map(report::matrix).collect()));
    }
    Value::Object(o)
}

fn table_artifact(t: &PairTable) -> Value {
    Value::Array(
        (0..t.left_dim())
            .map(|i| Value::Array((0..t.right_dim()).map(|j| report::vector(t.value(i, j))).collect()))
            .collect(),
    )
}

pub fn representation_artifact(v: &LaxTransformation) -> Value {
    let m = v.modulation();
    let cat = m.category();
    let components: Map<String, Value> =
        cat.object_ids().map(|x| (cat.object_label(x).to_string(), module_artifact(v.component(x)))).collect();
    let maps: Map<String, Value> = cat
        .morphism_ids()
        .filter(|&f| !cat.is_identity(f))
        .map(|f| (cat.label(f).to_string(), table_artifact(v.map(f))))
        .collect();
    json!({"components": components, "maps": maps})
}

fn modification_artifact(cat: &FiniteCategory, t: &Modification) -> Value {
    Value::Object(
        cat.object_ids().map(|x| (cat.object_label(x).to_string(), report::matrix(t.component(x)))).collect(),
    )
}

/// The permutation encoded by `m`, if it is a permutation matrix.
fn permutation(m: &Matrix) -> Option<Vec<usize>> {
    (0..m.cols())
        .map(|j| {
            let col = m.column(j);
            let ones: Vec<usize> = (0..col.len()).filter(|&i| !col[i].is_zero()).collect();
            (ones.len() == 1 && col[ones[0]].is_one()).then(|| ones[0])
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConvertMode {
    RepToModule,
    ModuleToRep,
    Roundtrip,
}

fn core<T>(location: &str, r: modcat::Result<T>) -> Result<T, CliError> {
    r.map_err(|error| CliError::Check { location: location.to_string(), error })
}

pub fn convert(ctx: &Context, mode: ConvertMode, name: &str, over: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new("convert");
    match mode {
        ConvertMode::RepToModule => {
            let (modulation, v) = ctx.representation(name)?;
            let a = ctx.mcalgebra(over.unwrap_or(&modulation))?;
            let m = core(name, iota_star(&a, &v))?;
            r.pass("rep_to_module", name);
            r.artifact("module", module_artifact(&m));
        }
        ConvertMode::ModuleToRep => {
            let (modulation, m) = ctx.module(name)?;
            let a = ctx.mcalgebra(over.unwrap_or(&modulation))?;
            let v = core(name, pi_star(&a, &m))?.transformation;
            r.pass("module_to_rep", name);
            r.artifact("representation", representation_artifact(&v));
        }
        ConvertMode::Roundtrip => {
            if ctx.file.representations.contains_key(name) {
                let (modulation, v) = ctx.representation(name)?;
                let a = ctx.mcalgebra(over.unwrap_or(&modulation))?;
                let rt = core(name, roundtrip_representation(&a, &v))?;
                r.pass("representation_roundtrip", name);
                r.artifact("iso", modification_artifact(a.category(), &rt.iso));
            } else {
                let (modulation, m) = ctx.module(name)?;
                let a = ctx.mcalgebra(over.unwrap_or(&modulation))?;
                let rt = core(name, roundtrip_module(&a, &m))?;
                r.pass("module_roundtrip", name);
                r.artifact("iso", report::matrix(&rt.iso.matrix));
                r.artifact("permutation", json!(permutation(&rt.iso.matrix)));
            }
        }
    }
    Ok(r)
}

fn finite_type_artifact(rep: &FiniteTypeReport) -> Value {
    let objects: Vec<Value> = rep
        .objects
        .iter()
        .map(|o| json!({"object": o.object, "hom_dim": o.hom_dim, "passes": o.passes, "failing": o.failing}))
        .collect();
    json!({"finite_type": rep.finite_type, "objects": objects})
}

fn record_finite_type(r: &mut Report, rep: &FiniteTypeReport, location: &str) {
    for o in &rep.objects {
        let loc = format!("{location} at {}", o.object);
        if o.passes {
            r.pass("finite_type", &loc);
        } else {
            r.fail("finite_type", &loc, "not_finite_type", format!("images miss {}", o.failing.join(", ")));
        }
    }
}

pub fn finite_type_cmd(ctx: &Context, name: &str) -> Result<Report, CliError> {
    let mut r = Report::new("finite-type");
    let p = ctx.presheaf_module(name)?;
    let rep = core(name, finite_type(&p))?;
    record_finite_type(&mut r, &rep, name);
    r.artifact("dims", json!(p.dims()));
    r.artifact("finite_type", finite_type_artifact(&rep));
    Ok(r)
}

/// The right module behind a presheaf module, over its skew category algebra.
fn presheaf_module_as_module(p: &PresheafModule, location: &str) -> Result<Bimodule, CliError> {
    let a = core(location, skew_category_algebra(p.presheaf()))?;
    let v = core(location, presheaf_module_to_comod_rep(p, a.source()))?;
    core(location, iota_star(&a, &v))
}

pub fn fg(ctx: &Context, name: &str, gens: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new("fg");
    let m = if ctx.file.modules.contains_key(name) {
        ctx.module(name)?.1
    } else {
        presheaf_module_as_module(&ctx.presheaf_module(name)?, name)?
    };
    let gens: Vec<Vec<Scalar>> = match gens {
        Some(text) => {
            let raw: Vec<Vec<ScalarDef>> =
                serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), reason: e.to_string() })?;
            raw.iter().map(|g| ctx.vector(g, m.dim(), "generator")).collect::<Result<_, _>>()?
        }
        None => minimal_generators(&m),
    };
    let generated = m.generated_submodule(&gens).dim();
    r.expect("finitely_generated", name, finitely_generated(&m, &gens), || {
        format!("generated submodule has dimension {generated} of {}", m.dim())
    });
    r.artifact("dim", json!(m.dim()));
    r.artifact("generators", Value::Array(gens.iter().map(|g| report::vector(g)).collect()));
    Ok(r)
}

fn demo_section5(field: Field) -> Result<Report, CliError> {
    let mut r = Report::new("demo section5");
    let rep = core("section5", separation_demo(field))?;
    r.expect("algebra_dim", "R[C]", rep.algebra_dim == 4, || format!("dim {}", rep.algebra_dim));
    for (name, v) in [("P_x", &rep.px), ("P_y", &rep.py)] {
        r.expect("finitely_generated", name, v.finitely_generated && v.generators == 1, || {
            format!("{} generators", v.generators)
        });
        r.expect("not_finite_type", name, !v.finite_type.finite_type, || "finite type".into());
    }
    r.expect("hom_dim", "Hom(k|_y, P_x|_y)", rep.hom_dim == 0, || format!("dim {}", rep.hom_dim));
    let one = |l: &str, d: usize| vec![(l.to_string(), d)];
    r.expect("restriction", "P_x|_x", rep.px_at_x == one("(x,1_x)", 1), || format!("{:?}", rep.px_at_x));
    r.expect("restriction", "P_y|_x", rep.py_at_x == one("(x,1_x)", 2), || format!("{:?}", rep.py_at_x));
    for (name, v) in [("R", &rep.structure), ("R⊕R", &rep.structure_squared)] {
        r.expect("finite_type", name, v.finite_type.finite_type, || "not finite type".into());
        r.expect("finitely_generated", name, v.finitely_generated, || "not finitely generated".into());
    }
    let values = |v: &[(String, usize)]| -> Value {
        Value::Array(v.iter().map(|(l, d)| json!({"object": l, "dim": d})).collect())
    };
    r.artifact("algebra_dim", json!(rep.algebra_dim));
    r.artifact("hom_dim", json!(rep.hom_dim));
    r.artifact("P_x", json!({"dims": rep.px.dims, "generators": rep.px.generators,
        "finite_type": finite_type_artifact(&rep.px.finite_type)}));
    r.artifact("P_y", json!({"dims": rep.py.dims, "generators": rep.py.generators,
        "finite_type": finite_type_artifact(&rep.py.finite_type)}));
    r.artifact("P_x|_x", values(&rep.px_at_x));
    r.artifact("P_x|_y", values(&rep.px_at_y));
    r.artifact("P_y|_x", values(&rep.py_at_x));
    Ok(r)
}

fn roundtrips(r: &mut Report, a: &ModCatAlgebra, seed: u64, label: &str) -> Result<(), CliError> {
    let mut modules = vec![a.regular_right_module()];
    modules.extend(corpus::random_modules(a, seed, 4, 6));
    for (i, m) in modules.iter().enumerate() {
        let loc = format!("{label} module {i}");
        match roundtrip_module(a, m) {
            Ok(_) => r.pass("module_roundtrip", &loc),
            Err(e) => r.error("module_roundtrip", &loc, &e),
        }
        let v = core(&loc, pi_star(a, m))?.transformation;
        let loc = format!("{label} representation {i}");
        match roundtrip_representation(a, &v) {
            Ok(_) => r.pass("representation_roundtrip", &loc),
            Err(e) => r.error("representation_roundtrip", &loc, &e),
        }
    }
    Ok(())
}

fn demo_group(field: Field, n: usize, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new(format!("demo group:{n}"));
    let cat = corpus::cyclic_group(n);
    let a = core("kC", category_algebra(&cat, field))?;
    check_algebra(&mut r, &a, "kC");
    // e_g * e_h = e_{gh} against the composition table
    let mut mismatches = 0;
    for (i, &(f, _)) in a.grading().iter().enumerate() {
        for (j, &(g, _)) in a.grading().iter().enumerate() {
            let expect = a.embed(cat.compose(g, f).expect("group"), &[field.one()]);
            if a.carrier().product(i, j) != expect.as_slice() {
                mismatches += 1;
            }
        }
    }
    r.expect("group_algebra_table", "kC", mismatches == 0, || format!("{mismatches} mismatching products"));
    roundtrips(&mut r, &a, seed, "kC")?;
    r.artifact("algebra", algebra_artifact(&a));
    Ok(r)
}

fn demo_species(field: Field, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new("demo species-a2");
    let m = Arc::new(core("species", corpus::a2_species(field))?);
    let a = core("species", ModCatAlgebra::new(m))?;
    check_algebra(&mut r, &a, "species");
    r.expect("algebra_dim", "species", a.dim() == 5, || format!("dim {}", a.dim()));
    roundtrips(&mut r, &a, seed, "species")?;
    r.artifact("algebra", algebra_artifact(&a));
    r.artifact("block_dims", block_dims(&a));
    Ok(r)
}

pub fn demo(name: &str, field: Field, seed: u64) -> Result<Report, CliError> {
    match name {
        "section5" => demo_section5(field),
        "species-a2" => demo_species(field, seed),
        other => match other.strip_prefix("group:").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => demo_group(field, n, seed),
            _ => Err(CliError::UnknownDemo(other.to_string())),
        },
    }
}
