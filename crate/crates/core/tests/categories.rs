use std::sync::Arc;

use modcat::corpus;
use modcat::fincat::{free_category, slice, FiniteCategory, Quiver};
use proptest::prelude::*;

fn check_associative(cat: &FiniteCategory) {
    for f in cat.morphism_ids() {
        for g in cat.morphism_ids() {
            let Some(gf) = cat.compose(g, f) else { continue };
            for h in cat.morphism_ids() {
                if let Some(hg) = cat.compose(h, g) {
                    assert_eq!(cat.compose(h, gf), cat.compose(hg, f));
                }
            }
        }
    }
}

/// Paths by depth-first search from every arrow.
fn count_paths(n: usize, arrows: &[(usize, usize)]) -> usize {
    fn from(v: usize, arrows: &[(usize, usize)]) -> usize {
        arrows.iter().filter(|a| a.0 == v).map(|a| 1 + from(a.1, arrows)).sum()
    }
    (0..n).map(|v| from(v, arrows)).sum()
}

/// Arrows only go from lower to higher index, so the quiver is acyclic.
fn dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (Just(n), prop::sample::subsequence(pairs.clone(), 0..=pairs.len().min(5)))
    })
}

fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        arrows.iter().enumerate().map(|(k, &(s, t))| (format!("a{k}"), format!("v{s}"), format!("v{t}"))).collect(),
    )
    .unwrap()
}

fn check_slices(cat: &Arc<FiniteCategory>) {
    for x in cat.object_ids() {
        let s = slice(cat, x).unwrap();
        let sc = s.category();
        check_associative(sc);
        for o in sc.object_ids() {
            assert_eq!(s.project(sc.identity(o)), cat.identity(s.project_object(o)));
        }
        for f in sc.morphism_ids() {
            for g in sc.morphism_ids() {
                if let Some(gf) = sc.compose(g, f) {
                    assert_eq!(cat.compose(s.project(g), s.project(f)), Some(s.project(gf)));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_categories((n, arrows) in dag()) {
        let cat = Arc::new(free_category(&quiver(n, &arrows)).unwrap());
        prop_assert_eq!(cat.morphism_count(), n + count_paths(n, &arrows));
        check_associative(&cat);
        check_slices(&cat);
    }
}

#[test]
fn corpus_categories() {
    for cat in [corpus::terminal(), corpus::cyclic_group(4), corpus::path(4), corpus::parallel_arrows()] {
        check_associative(&cat);
        check_slices(&cat);
    }
}

#[test]
fn cyclic_quiver_rejected() {
    let q = Quiver::new(
        vec!["a".into(), "b".into()],
        vec![("f".into(), "a".into(), "b".into()), ("g".into(), "b".into(), "a".into())],
    );
    assert!(matches!(q, Err(modcat::Error::CyclicQuiver(_))));
}
