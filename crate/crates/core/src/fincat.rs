//! Finite categories given by explicit composition tables, slice categories,
//! and free categories on acyclic quivers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub label: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// Unvalidated category description, keyed by labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(label, dom, cod)`
    pub morphisms: Vec<(String, String, String)>,
    /// object → identity morphism label
    pub identities: BTreeMap<String, String>,
    /// `(g, f, g∘f)`; composites involving an identity may be omitted.
    pub compositions: Vec<(String, String, String)>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, label: &str) -> Self {
        self.objects.push(label.to_string());
        self.morphisms.push((format!("1_{label}"), label.to_string(), label.to_string()));
        self.identities.insert(label.to_string(), format!("1_{label}"));
        self
    }

    pub fn morphism(mut self, label: &str, dom: &str, cod: &str) -> Self {
        self.morphisms.push((label.to_string(), dom.to_string(), cod.to_string()));
        self
    }

    pub fn compose(mut self, g: &str, f: &str, gf: &str) -> Self {
        self.compositions.push((g.to_string(), f.to_string(), gf.to_string()));
        self
    }

    pub fn validate(&self) -> Result<FiniteCategory> {
        validate_category(self)
    }
}

/// A validated finite category. Objects and morphisms are addressed by index;
/// the index order is the canonical order used by every downstream grading.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<MorId>,
    compose: Vec<Option<MorId>>,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.iter().map(|m| &m.label).collect::<Vec<_>>())
            .finish()
    }
}

pub fn validate_category(raw: &RawCategory) -> Result<FiniteCategory> {
    let mut object_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if object_index.insert(o.clone(), ObjId(i)).is_some() {
            return Err(Error::DuplicateLabel(o.clone()));
        }
    }
    let obj = |l: &str| object_index.get(l).copied().ok_or_else(|| Error::UnknownObject(l.to_string()));
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    let mut morphism_index = HashMap::new();
    for (i, (label, dom, cod)) in raw.morphisms.iter().enumerate() {
        if morphism_index.insert(label.clone(), MorId(i)).is_some() {
            return Err(Error::DuplicateLabel(label.clone()));
        }
        morphisms.push(MorphismData { label: label.clone(), dom: obj(dom)?, cod: obj(cod)? });
    }
    let mor = |l: &str| morphism_index.get(l).copied().ok_or_else(|| Error::UnknownMorphism(l.to_string()));

    let mut identities = Vec::with_capacity(raw.objects.len());
    for (i, o) in raw.objects.iter().enumerate() {
        let id_label = raw.identities.get(o).ok_or_else(|| Error::IdentityLawViolation(o.clone()))?;
        let id = mor(id_label)?;
        if morphisms[id.0].dom != ObjId(i) || morphisms[id.0].cod != ObjId(i) {
            return Err(Error::IdentityLawViolation(id_label.clone()));
        }
        identities.push(id);
    }
    for o in raw.identities.keys() {
        obj(o)?;
    }

    let n = morphisms.len();
    let mut compose: Vec<Option<MorId>> = vec![None; n * n];
    for (g, f, gf) in &raw.compositions {
        let (g_id, f_id, gf_id) = (mor(g)?, mor(f)?, mor(gf)?);
        let (gm, fm, gfm) = (&morphisms[g_id.0], &morphisms[f_id.0], &morphisms[gf_id.0]);
        if gm.dom != fm.cod || gfm.dom != fm.dom || gfm.cod != gm.cod {
            return Err(Error::DomCodMismatch { g: g.clone(), f: f.clone() });
        }
        let slot = &mut compose[g_id.0 * n + f_id.0];
        match slot {
            Some(existing) if *existing != gf_id => {
                return Err(Error::DomCodMismatch { g: g.clone(), f: f.clone() })
            }
            _ => *slot = Some(gf_id),
        }
    }
    // Identity composites are implied; any supplied value must agree.
    for (i, m) in morphisms.iter().enumerate() {
        for (slot, expected) in [
            (identities[m.cod.0].0 * n + i, MorId(i)),
            (i * n + identities[m.dom.0].0, MorId(i)),
        ] {
            match compose[slot] {
                Some(found) if found != expected => return Err(Error::IdentityLawViolation(m.label.clone())),
                _ => compose[slot] = Some(expected),
            }
        }
    }
    for (gi, g) in morphisms.iter().enumerate() {
        for (fi, f) in morphisms.iter().enumerate() {
            if g.dom == f.cod && compose[gi * n + fi].is_none() {
                return Err(Error::MissingComposite { g: g.label.clone(), f: f.label.clone() });
            }
        }
    }
    let cat = FiniteCategory { objects: raw.objects.clone(), morphisms, identities, compose, object_index, morphism_index };
    cat.check_associativity()?;
    Ok(cat)
}

impl FiniteCategory {
    fn check_associativity(&self) -> Result<()> {
        for (f, g) in self.composable_pairs().into_iter().map(|(g, f)| (f, g)) {
            let gf = self.compose(g, f).expect("composable");
            for h in self.morphism_ids().filter(|&h| self.dom(h) == self.cod(g)) {
                let left = self.compose(h, gf);
                let hg = self.compose(h, g).expect("composable");
                let right = self.compose(hg, f);
                if left != right {
                    return Err(Error::NonAssociative {
                        h: self.label(h).to_string(),
                        g: self.label(g).to_string(),
                        f: self.label(f).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_label(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn label(&self, m: MorId) -> &str {
        &self.morphisms[m.0].label
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].cod
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.dom(m).0] == m
    }

    /// `g ∘ f`, defined when `dom g = cod f`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g.0 * self.morphisms.len() + f.0]
    }

    pub fn find_object(&self, label: &str) -> Result<ObjId> {
        self.object_index.get(label).copied().ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    pub fn find_morphism(&self, label: &str) -> Result<MorId> {
        self.morphism_index.get(label).copied().ok_or_else(|| Error::UnknownMorphism(label.to_string()))
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.morphism_ids().filter(|&m| self.dom(m) == x && self.cod(m) == y).collect()
    }

    /// All `(g, f)` with `dom g = cod f`, in canonical (g-major) order.
    pub fn composable_pairs(&self) -> Vec<(MorId, MorId)> {
        let mut out = Vec::new();
        for g in self.morphism_ids() {
            for f in self.morphism_ids() {
                if self.dom(g) == self.cod(f) {
                    out.push((g, f));
                }
            }
        }
        out
    }

    /// Reconstructs a raw description (all composites listed) for serialization.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.label.clone(), self.objects[m.dom.0].clone(), self.objects[m.cod.0].clone()))
                .collect(),
            identities: self
                .object_ids()
                .map(|x| (self.object_label(x).to_string(), self.label(self.identity(x)).to_string()))
                .collect(),
            compositions: self
                .composable_pairs()
                .into_iter()
                .map(|(g, f)| {
                    let gf = self.compose(g, f).expect("composable");
                    (self.label(g).to_string(), self.label(f).to_string(), self.label(gf).to_string())
                })
                .collect(),
        }
    }
}

/// The slice category `C/x` with its projection to `C`.
#[derive(Clone, Debug)]
pub struct SliceCategory {
    base: Arc<FiniteCategory>,
    apex: ObjId,
    category: Arc<FiniteCategory>,
    legs: Vec<MorId>,
    projection: Vec<MorId>,
}

pub fn slice(base: &Arc<FiniteCategory>, apex: ObjId) -> Result<SliceCategory> {
    if apex.0 >= base.object_count() {
        return Err(Error::UnknownObject(format!("#{}", apex.0)));
    }
    let legs: Vec<MorId> = base.morphism_ids().filter(|&m| base.cod(m) == apex).collect();
    let object_label = |a: MorId| format!("({},{})", base.object_label(base.dom(a)), base.label(a));
    let mut raw = RawCategory::new();
    for &a in &legs {
        raw.objects.push(object_label(a));
    }
    let mut projection = Vec::new();
    // slice morphism → (source leg, target leg)
    let mut ends = Vec::new();
    let morphism_label = |g: MorId, s: MorId, t: MorId| format!("{}:{}->{}", base.label(g), object_label(s), object_label(t));
    for &s in &legs {
        for &t in &legs {
            for g in base.hom(base.dom(s), base.dom(t)) {
                if base.compose(t, g) == Some(s) {
                    raw.morphisms.push((morphism_label(g, s, t), object_label(s), object_label(t)));
                    projection.push(g);
                    ends.push((s, t));
                    if base.is_identity(g) && s == t {
                        raw.identities.insert(object_label(s), morphism_label(g, s, t));
                    }
                }
            }
        }
    }
    for (i, &g) in projection.iter().enumerate() {
        for (j, &f) in projection.iter().enumerate() {
            let (fs, ft) = ends[j];
            let (gs, gt) = ends[i];
            if gs == ft {
                let gf = base.compose(g, f).expect("composable in base");
                raw.compositions.push((raw.morphisms[i].0.clone(), raw.morphisms[j].0.clone(), morphism_label(gf, fs, gt)));
            }
        }
    }
    let category = Arc::new(validate_category(&raw)?);
    Ok(SliceCategory { base: base.clone(), apex, category, legs, projection })
}

impl SliceCategory {
    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn apex(&self) -> ObjId {
        self.apex
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    /// The morphism `α: w → x` of slice object `(w, α)`.
    pub fn leg(&self, o: ObjId) -> MorId {
        self.legs[o.0]
    }

    /// Projection of slice objects to base objects.
    pub fn project_object(&self, o: ObjId) -> ObjId {
        self.base.dom(self.legs[o.0])
    }

    /// Projection of slice morphisms to base morphisms.
    pub fn project(&self, m: MorId) -> MorId {
        self.projection[m.0]
    }

    /// The terminal object `(x, 1_x)`.
    pub fn terminal(&self) -> ObjId {
        let id = self.base.identity(self.apex);
        ObjId(self.legs.iter().position(|&l| l == id).expect("identity leg present"))
    }
}

/// A finite directed graph, acyclic by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let find = |v: &str| vertices.iter().position(|x| x == v).ok_or_else(|| Error::UnknownObject(v.to_string()));
        let arrows = arrows
            .into_iter()
            .map(|(l, s, t)| Ok((l, find(&s)?, find(&t)?)))
            .collect::<Result<Vec<_>>>()?;
        let q = Quiver { vertices, arrows };
        if let Some(v) = q.find_cycle() {
            return Err(Error::CyclicQuiver(q.vertices[v].clone()));
        }
        Ok(q)
    }

    pub fn linear(n: usize) -> Self {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let arrows = (1..n).map(|i| (format!("a{i}"), vertices[i - 1].clone(), vertices[i].clone())).collect();
        Quiver::new(vertices, arrows).expect("linear quiver is acyclic")
    }

    fn find_cycle(&self) -> Option<usize> {
        // 0 = unvisited, 1 = on stack, 2 = done
        fn visit(q: &Quiver, v: usize, state: &mut [u8]) -> Option<usize> {
            state[v] = 1;
            for (_, s, t) in &q.arrows {
                if *s != v {
                    continue;
                }
                match state[*t] {
                    1 => return Some(*t),
                    0 => {
                        if let Some(c) = visit(q, *t, state) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            state[v] = 2;
            None
        }
        let mut state = vec![0u8; self.vertices.len()];
        (0..self.vertices.len()).find_map(|v| if state[v] == 0 { visit(self, v, &mut state) } else { None })
    }

    /// All directed paths of positive length as arrow-index sequences, shortest first.
    fn paths(&self) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = self.arrows[*p.last().expect("nonempty")].2;
                for (a, (_, s, _)) in self.arrows.iter().enumerate() {
                    if *s == end {
                        let mut q = p.clone();
                        q.push(a);
                        next.push(q);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// Free category on an acyclic quiver: morphisms are directed paths, composition is concatenation.
pub fn free_category(q: &Quiver) -> Result<FiniteCategory> {
    let mut raw = RawCategory::new();
    for v in &q.vertices {
        raw = raw.object(v);
    }
    let paths = q.paths();
    let path_label = |p: &[usize]| p.iter().rev().map(|&a| q.arrows[a].0.as_str()).collect::<Vec<_>>().join("∘");
    for p in &paths {
        let src = &q.vertices[q.arrows[p[0]].1];
        let tgt = &q.vertices[q.arrows[*p.last().expect("nonempty")].2];
        raw.morphisms.push((path_label(p), src.clone(), tgt.clone()));
    }
    for f in &paths {
        for g in &paths {
            if q.arrows[*f.last().expect("nonempty")].2 == q.arrows[g[0]].1 {
                let mut gf = f.clone();
                gf.extend(g);
                raw.compositions.push((path_label(g), path_label(f), path_label(&gf)));
            }
        }
    }
    validate_category(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn parallel_arrows() -> FiniteCategory {
        RawCategory::new().object("x").object("y").morphism("a", "x", "y").morphism("b", "x", "y").validate().unwrap()
    }

    fn c2() -> RawCategory {
        RawCategory::new().object("*").morphism("g", "*", "*").compose("g", "g", "1_*")
    }

    #[test]
    fn parallel_arrows_is_valid() {
        assert_eq!(parallel_arrows().morphism_count(), 4);
    }

    #[test]
    fn group_c2_is_valid() {
        let c = c2().validate().unwrap();
        let g = c.find_morphism("g").unwrap();
        assert_eq!(c.compose(g, g), Some(c.identity(ObjId(0))));
    }

    #[test]
    fn nonassociative_table_rejected() {
        // One-object monoid {1, e, f} with e∘e = e, e∘f = f, f∘e = e, f∘f = f is associative;
        // switching f∘e to f breaks (e∘f)∘e = f∘e vs e∘(f∘e).
        let raw = RawCategory::new()
            .object("*")
            .morphism("e", "*", "*")
            .morphism("f", "*", "*")
            .compose("e", "e", "e")
            .compose("e", "f", "e")
            .compose("f", "e", "f")
            .compose("f", "f", "f");
        assert!(raw.validate().is_ok());
        let bad = RawCategory::new()
            .object("*")
            .morphism("e", "*", "*")
            .morphism("f", "*", "*")
            .compose("e", "e", "e")
            .compose("e", "f", "e")
            .compose("f", "e", "f")
            .compose("f", "f", "e");
        assert!(matches!(bad.validate(), Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn missing_and_mismatched_composites() {
        let raw = RawCategory::new().object("*").morphism("g", "*", "*");
        assert!(matches!(raw.validate(), Err(Error::MissingComposite { .. })));
        let raw = RawCategory::new().object("x").object("y").morphism("a", "x", "y").compose("a", "a", "a");
        assert!(matches!(raw.validate(), Err(Error::DomCodMismatch { .. })));
        let raw = c2().compose("1_*", "g", "1_*");
        assert!(matches!(raw.validate(), Err(Error::IdentityLawViolation(_))));
    }

    #[test]
    fn slice_of_parallel_arrows() {
        let c = Arc::new(parallel_arrows());
        let sx = slice(&c, c.find_object("x").unwrap()).unwrap();
        assert_eq!((sx.category().object_count(), sx.category().morphism_count()), (1, 1));
        let sy = slice(&c, c.find_object("y").unwrap()).unwrap();
        assert_eq!((sy.category().object_count(), sy.category().morphism_count()), (3, 5));
        let labels: Vec<&str> = sy.category().object_ids().map(|o| sy.category().object_label(o)).collect();
        assert_eq!(labels, vec!["(y,1_y)", "(x,a)", "(x,b)"]);
    }

    #[test]
    fn free_category_path_counts() {
        assert_eq!(free_category(&Quiver::linear(2)).unwrap().morphism_count(), 3);
        assert_eq!(free_category(&Quiver::linear(3)).unwrap().morphism_count(), 6);
        let looped = Quiver::new(vec!["x".into()], vec![("l".into(), "x".into(), "x".into())]);
        assert!(matches!(looped, Err(Error::CyclicQuiver(_))));
    }
}
