//! Small named examples and seeded random generators shared by tests, demos and benches.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraHom, Bimodule};
use crate::error::Result;
use crate::fincat::{free_category, FiniteCategory, ObjId, Quiver, RawCategory};
use crate::finiteness::PresheafModule;
use crate::linalg::{Field, Matrix, Scalar};
use crate::mcalgebra::ModCatAlgebra;
use crate::modulation::{
    constant_modulation, presheaf_to_comodulation, presheaf_to_modulation, Modulation, PresheafOfAlgebras,
    RawModulation, RawPresheaf, Variance,
};

pub fn terminal() -> Arc<FiniteCategory> {
    Arc::new(RawCategory::new().object("*").validate().expect("terminal category"))
}

/// The cyclic group of order `n` as a one-object category; `g^i` is labelled `g^i`
/// (`g` for `i = 1`, `1_*` for `i = 0`).
pub fn cyclic_group(n: usize) -> Arc<FiniteCategory> {
    let label = |i: usize| match i {
        0 => "1_*".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{i}"),
    };
    let mut raw = RawCategory::new().object("*");
    for i in 1..n {
        raw = raw.morphism(&label(i), "*", "*");
    }
    for i in 1..n {
        for j in 1..n {
            raw = raw.compose(&label(i), &label(j), &label((i + j) % n));
        }
    }
    Arc::new(raw.validate().expect("cyclic group"))
}

/// Free category on `v0 → v1 → … → v(n-1)`.
pub fn path(n: usize) -> Arc<FiniteCategory> {
    Arc::new(free_category(&Quiver::linear(n)).expect("linear quiver"))
}

/// Two objects `x`, `y` and two parallel arrows `α, β: x → y`.
pub fn parallel_arrows() -> Arc<FiniteCategory> {
    Arc::new(
        RawCategory::new()
            .object("x")
            .object("y")
            .morphism("α", "x", "y")
            .morphism("β", "x", "y")
            .validate()
            .expect("parallel arrows"),
    )
}

/// Presheaf on `path(n)` from vertex algebras and arrow restrictions `R(a_i): R(v_i) → R(v_{i-1})`.
pub fn presheaf_on_path(algebras: Vec<Arc<Algebra>>, arrows: Vec<Matrix>) -> Result<PresheafOfAlgebras> {
    let cat = path(algebras.len());
    let mut restrictions = BTreeMap::new();
    for f in cat.morphism_ids().filter(|&f| !cat.is_identity(f)) {
        let mut m: Option<Matrix> = None;
        for step in cat.label(f).split('∘').rev() {
            let i: usize = step[1..].parse().expect("arrow label a<i>");
            let r = arrows[i - 1].clone();
            m = Some(match m {
                None => r,
                Some(acc) => acc.mul(&r),
            });
        }
        restrictions.insert(f, m.expect("nonempty path"));
    }
    PresheafOfAlgebras::validate(&RawPresheaf {
        category: cat.clone(),
        algebras: cat.object_ids().map(|x| (x, algebras[x.0].clone())).collect(),
        restrictions,
    })
}

/// `k` at `v0`, `k[t]/(t²+1)` at `v1`, the latter as a `k`-bimodule on the arrow.
pub fn a2_species(field: Field) -> Result<Modulation> {
    let cat = path(2);
    let k = Arc::new(Algebra::ground(field));
    let g = Arc::new(Algebra::gaussian(field));
    let unit = AlgebraHom::unit_inclusion(k.clone(), g.clone())?;
    Modulation::validate(&RawModulation {
        category: cat.clone(),
        variance: Variance::Covariant,
        algebras: [(ObjId(0), k), (ObjId(1), g)].into_iter().collect(),
        bimodules: [(cat.find_morphism("a1")?, Bimodule::left_via(&unit))].into_iter().collect(),
        compositors: BTreeMap::new(),
    })
}

/// Named presheaves of algebras used throughout the test corpus.
pub fn presheaves(field: Field) -> Result<Vec<(String, Arc<PresheafOfAlgebras>)>> {
    let k = Arc::new(Algebra::ground(field));
    let d = Arc::new(Algebra::dual_numbers(field));
    let kk = Arc::new(Algebra::diagonal(field, 2));
    let ut = Arc::new(Algebra::upper_triangular(field));
    let m = |rows: &[&[i64]]| Matrix::from_i64(field, rows);

    let mut out = vec![("constant-k/parallel".to_string(), Arc::new(PresheafOfAlgebras::constant(&parallel_arrows(), &k)))];
    out.push((
        "dual-over-k/A2".into(),
        Arc::new(presheaf_on_path(vec![d.clone(), k.clone()], vec![m(&[&[1], &[0]])])?),
    ));
    let c2 = cyclic_group(2);
    let swap = m(&[&[0, 1], &[1, 0]]);
    out.push((
        "swap/C2".into(),
        Arc::new(PresheafOfAlgebras::validate(&RawPresheaf {
            category: c2.clone(),
            algebras: [(ObjId(0), kk.clone())].into_iter().collect(),
            restrictions: [(c2.find_morphism("g")?, swap)].into_iter().collect(),
        })?),
    ));
    out.push(("constant-dual/A3".into(), Arc::new(PresheafOfAlgebras::constant(&path(3), &d))));
    // UT ← k×k ← k: diagonal inclusion, then the unit
    out.push((
        "triangular/A3".into(),
        Arc::new(presheaf_on_path(
            vec![ut, kk, k],
            vec![m(&[&[1, 0], &[0, 0], &[0, 1]]), m(&[&[1], &[1]])],
        )?),
    ));
    Ok(out)
}

/// Named, validated (co)modulations.
pub fn modulations(field: Field) -> Result<Vec<(String, Arc<Modulation>)>> {
    let k = Arc::new(Algebra::ground(field));
    let d = Arc::new(Algebra::dual_numbers(field));
    let mut out: Vec<(String, Arc<Modulation>)> = Vec::new();
    for (name, cat) in [
        ("terminal", terminal()),
        ("C2", cyclic_group(2)),
        ("C3", cyclic_group(3)),
        ("A3", path(3)),
        ("A4", path(4)),
        ("parallel", parallel_arrows()),
    ] {
        out.push((format!("constant-k/{name}"), Arc::new(constant_modulation(&cat, &k, Variance::Covariant)?)));
    }
    out.push(("constant-dual/parallel".into(), Arc::new(constant_modulation(&parallel_arrows(), &d, Variance::Covariant)?)));
    out.push(("co-constant-dual/A3".into(), Arc::new(constant_modulation(&path(3), &d, Variance::Contravariant)?)));
    out.push(("species/A2".into(), Arc::new(a2_species(field)?)));
    for (name, r) in presheaves(field)? {
        out.push((format!("mod/{name}"), Arc::new(presheaf_to_modulation(&r)?)));
        out.push((format!("comod/{name}"), Arc::new(presheaf_to_comodulation(&r)?)));
    }
    Ok(out)
}

/// Modulations on `A4`, which has a composable triple of non-identity morphisms.
pub fn mutation_targets(field: Field) -> Result<Vec<(String, Arc<Modulation>)>> {
    let a4 = path(4);
    let mut out = Vec::new();
    for (name, alg) in [
        ("k", Algebra::ground(field)),
        ("dual", Algebra::dual_numbers(field)),
        ("triangular", Algebra::upper_triangular(field)),
    ] {
        let alg = Arc::new(alg);
        out.push((format!("constant-{name}/A4"), Arc::new(constant_modulation(&a4, &alg, Variance::Covariant)?)));
        out.push((format!("co-constant-{name}/A4"), Arc::new(constant_modulation(&a4, &alg, Variance::Contravariant)?)));
    }
    let d = Arc::new(Algebra::dual_numbers(field));
    let k = Arc::new(Algebra::ground(field));
    let incl = Matrix::from_i64(field, &[&[1], &[0]]);
    let id = Matrix::identity(field, 2);
    let r = Arc::new(presheaf_on_path(vec![d.clone(), d.clone(), d, k], vec![id.clone(), id, incl])?);
    out.push(("mod/dual-dual-dual-k/A4".into(), Arc::new(presheaf_to_modulation(&r)?)));
    out.push(("comod/dual-dual-dual-k/A4".into(), Arc::new(presheaf_to_comodulation(&r)?)));
    Ok(out)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries in `{-2, …, 2}`, roughly half zero.
pub fn random_vector(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n)
        .map(|_| if rng.gen_bool(0.5) { field.zero() } else { field.from_i64(rng.gen_range(-2..=2)) })
        .collect()
}

/// A random invertible matrix (unit lower times unit upper triangular, then a row shuffle).
pub fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut l = Matrix::identity(field, n);
    let mut u = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, field.from_i64(rng.gen_range(-2..=2)));
            u.set(j, i, field.from_i64(rng.gen_range(-2..=2)));
        }
    }
    let mut p = l.mul(&u);
    if n > 1 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut rows = p.row_vecs();
        rows.swap(a, b);
        p = Matrix::from_rows(field, n, rows);
    }
    p
}

/// Distinct nonzero right modules of dimension at most `max_dim`: cyclic submodules,
/// quotients of the regular module and of the projectives `1_x·A`.
pub fn random_modules(a: &ModCatAlgebra, seed: u64, count: usize, max_dim: usize) -> Vec<Bimodule> {
    let field = a.field();
    let reg = a.regular_right_module();
    let mut rng = rng(seed);
    let mut out: Vec<Bimodule> = Vec::new();
    let push = |m: Bimodule, out: &mut Vec<Bimodule>| {
        if m.dim() > 0 && m.dim() <= max_dim && !out.contains(&m) {
            out.push(m);
        }
    };
    for x in a.category().object_ids() {
        if let Ok(p) = a.projective(x) {
            push(p, &mut out);
        }
    }
    push(reg.clone(), &mut out);
    for _ in 0..count * 40 {
        if out.len() >= count {
            break;
        }
        let base = match rng.gen_range(0..3) {
            0 => reg.clone(),
            _ => {
                let x = ObjId(rng.gen_range(0..a.category().object_count()));
                match a.projective(x) {
                    Ok(p) => p,
                    Err(_) => continue,
                }
            }
        };
        if base.dim() == 0 {
            continue;
        }
        let v = random_vector(field, base.dim(), &mut rng);
        let sub = base.generated_submodule(&[v]);
        let candidate = if rng.gen_bool(0.5) { base.restrict_to(&sub) } else { base.quotient_by(&sub).map(|(q, _)| q) };
        if let Ok(m) = candidate {
            push(m, &mut out);
        }
    }
    out
}

/// Finite-type presheaf modules over `r`: free modules `R^n`, quotients of them by
/// generated sub-presheaves, direct sums and conjugated copies.
pub fn finite_type_modules(r: &Arc<PresheafOfAlgebras>, seed: u64, count: usize) -> Vec<PresheafModule> {
    let field = r.field();
    let cat = r.category().clone();
    let mut rng = rng(seed);
    let structure = PresheafModule::structure(r);
    let free2 = structure.direct_sum(&structure).expect("same base");
    let mut out = vec![structure.clone()];
    let push = |m: PresheafModule, out: &mut Vec<PresheafModule>| {
        if m.total_dim() > 0 && !out.contains(&m) {
            out.push(m);
        }
    };
    push(free2.clone(), &mut out);
    for _ in 0..count * 40 {
        if out.len() >= count {
            break;
        }
        let base = if rng.gen_bool(0.5) { &structure } else { &free2 };
        let gens: Vec<(ObjId, Vec<Scalar>)> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let x = ObjId(rng.gen_range(0..cat.object_count()));
                (x, random_vector(field, base.component(x).dim(), &mut rng))
            })
            .collect();
        let sub = base.generated_subpresheaf(&gens);
        let Ok(mut m) = base.quotient(&sub) else { continue };
        match rng.gen_range(0..4) {
            0 if out.len() > 1 => {
                let other = out[rng.gen_range(0..out.len())].clone();
                if m.total_dim() + other.total_dim() <= 8 {
                    m = m.direct_sum(&other).expect("same base");
                }
            }
            1 => {
                let g: Vec<Matrix> =
                    cat.object_ids().map(|x| random_invertible(field, m.component(x).dim(), &mut rng)).collect();
                m = m.conjugate(&g).expect("invertible change of basis");
            }
            _ => {}
        }
        push(m, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcalgebra::build_mod_cat_algebra;

    #[test]
    fn corpus_builds() {
        let f = Field::Rationals;
        assert!(modulations(f).unwrap().len() >= 15);
        assert_eq!(cyclic_group(3).morphism_count(), 3);
        assert_eq!(presheaves(f).unwrap().len(), 5);
        assert_eq!(mutation_targets(f).unwrap().len(), 8);
    }

    #[test]
    fn random_modules_are_deterministic() {
        let m = Arc::new(constant_modulation(&cyclic_group(3), &Arc::new(Algebra::ground(Field::Rationals)), Variance::Covariant).unwrap());
        let a = build_mod_cat_algebra(&m).unwrap();
        let one = random_modules(&a, 7, 6, 3);
        assert_eq!(one, random_modules(&a, 7, 6, 3));
        assert!(one.iter().all(|m| m.dim() <= 3));
    }

    #[test]
    fn random_invertible_is_invertible() {
        let mut r = rng(1);
        for n in 0..5 {
            assert!(random_invertible(Field::Rationals, n, &mut r).inverse().is_some());
        }
    }
}
