//! Finite categories presented by explicit composition tables, functors
//! between them, and natural transformations.
//!
//! Morphisms carry stable integer identifiers. Hom-sets are listed in
//! identifier order, which is also the order used for enumeration and JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

const MISSING: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// Outcome of one axiom family in [`FinCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub checks: Vec<AxiomCheck>,
    /// Number of composable triples inspected for associativity.
    pub triples: u64,
}

impl CategoryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// A finite category with an explicit composition table.
///
/// The table stores `g ∘ f` for every pair with `cod f == dom g`; entries may
/// be missing or ill-typed until [`validate`](Self::validate) has passed.
#[derive(Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    homs: Vec<Vec<MorId>>,
    hom_pos: Vec<usize>,
    outgoing: Vec<Vec<MorId>>,
    out_pos: Vec<usize>,
    comp_offset: Vec<usize>,
    comp: Vec<u32>,
    identities: Vec<Option<MorId>>,
    basepoint: Option<ObjId>,
    zeros: Vec<Option<MorId>>,
    report: OnceLock<CategoryReport>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.comp == other.comp
            && self.identities == other.identities
            && self.basepoint == other.basepoint
    }
}

impl Eq for FinCategory {}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .field("basepoint", &self.basepoint)
            .finish()
    }
}

/// Incremental construction of a [`FinCategory`].
#[derive(Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
    basepoint: Option<ObjId>,
    composites: BTreeMap<(MorId, MorId), MorId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, name: impl Into<String>, dom: ObjId, cod: ObjId) -> MorId {
        self.morphisms.push(Morphism {
            name: name.into(),
            dom,
            cod,
        });
        self.morphisms.len() - 1
    }

    /// Adds a morphism and marks it as the identity of `obj`.
    pub fn identity(&mut self, name: impl Into<String>, obj: ObjId) -> MorId {
        let id = self.morphism(name, obj, obj);
        self.identities[obj] = Some(id);
        id
    }

    pub fn set_identity(&mut self, obj: ObjId, mor: MorId) {
        self.identities[obj] = Some(mor);
    }

    pub fn basepoint(&mut self, obj: ObjId) {
        self.basepoint = Some(obj);
    }

    /// Records `g ∘ f = h`.
    pub fn composite(&mut self, g: MorId, f: MorId, h: MorId) {
        self.composites.insert((g, f), h);
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// Finishes with the recorded composites; unrecorded entries stay missing.
    pub fn build(mut self) -> Result<FinCategory> {
        let composites = std::mem::take(&mut self.composites);
        self.build_with(|g, f| composites.get(&(g, f)).copied())
    }

    /// Finishes by asking `compose(g, f)` for every composable pair.
    pub fn build_with(self, mut compose: impl FnMut(MorId, MorId) -> Option<MorId>) -> Result<FinCategory> {
        let n = self.objects.len();
        for (id, m) in self.morphisms.iter().enumerate() {
            if m.dom >= n || m.cod >= n {
                return Err(Error::Malformed(format!(
                    "morphism {id} ({}) has endpoint outside 0..{n}",
                    m.name
                )));
            }
        }
        if let Some(b) = self.basepoint {
            if b >= n {
                return Err(Error::Malformed(format!("basepoint {b} is not an object")));
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut hom_pos = vec![0; self.morphisms.len()];
        let mut outgoing = vec![Vec::new(); n];
        let mut out_pos = vec![0; self.morphisms.len()];
        for (id, m) in self.morphisms.iter().enumerate() {
            let h: &mut Vec<MorId> = &mut homs[m.dom * n + m.cod];
            hom_pos[id] = h.len();
            h.push(id);
            out_pos[id] = outgoing[m.dom].len();
            outgoing[m.dom].push(id);
        }
        let mut comp_offset = Vec::with_capacity(self.morphisms.len() + 1);
        let mut comp = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            comp_offset.push(comp.len());
            for &g in &outgoing[m.cod] {
                let h = compose(g, f);
                comp.push(match h {
                    Some(h) if h < self.morphisms.len() => h as u32,
                    Some(h) => {
                        return Err(Error::Malformed(format!("composite {h} is not a morphism")));
                    }
                    None => MISSING,
                });
            }
        }
        comp_offset.push(comp.len());
        let mut cat = FinCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            homs,
            hom_pos,
            outgoing,
            out_pos,
            comp_offset,
            comp,
            identities: self.identities,
            basepoint: self.basepoint,
            zeros: Vec::new(),
            report: OnceLock::new(),
        };
        cat.zeros = cat.compute_zeros();
        Ok(cat)
    }
}

impl FinCategory {
    pub fn builder() -> CategoryBuilder {
        CategoryBuilder::new()
    }

    fn compute_zeros(&self) -> Vec<Option<MorId>> {
        let n = self.objects.len();
        let Some(b) = self.basepoint else {
            return vec![None; n * n];
        };
        let mut zeros = vec![None; n * n];
        for x in 0..n {
            let [to_base] = self.homs[x * n + b][..] else { continue };
            for y in 0..n {
                let [from_base] = self.homs[b * n + y][..] else {
                    continue;
                };
                zeros[x * n + y] = self.try_compose(from_base, to_base);
            }
        }
        zeros
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> impl ExactSizeIterator<Item = MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, obj: ObjId) -> &str {
        &self.objects[obj]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Position of `f` inside its hom-set listing.
    pub fn hom_position(&self, f: MorId) -> usize {
        self.hom_pos[f]
    }

    /// Morphisms with domain `a`, across all codomains.
    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a]
    }

    pub fn basepoint(&self) -> Option<ObjId> {
        self.basepoint
    }

    pub fn try_identity(&self, a: ObjId) -> Option<MorId> {
        self.identities[a]
    }

    /// Identity of `a`. Panics if the table has none, which validation rules out.
    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a].unwrap_or_else(|| panic!("object {} has no identity", self.objects[a]))
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.dom(f)] == Some(f)
    }

    /// Table lookup for `g ∘ f`; `None` if not composable or missing.
    #[inline]
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let m = &self.morphisms[f];
        if self.morphisms[g].dom != m.cod {
            return None;
        }
        let h = self.comp[self.comp_offset[f] + self.out_pos[g]];
        (h != MISSING).then_some(h as MorId)
    }

    /// `g ∘ f` for a composable pair of a validated category.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite {} ∘ {} in table",
                self.morphisms[g].name, self.morphisms[f].name
            )
        })
    }

    pub fn checked_compose(&self, g: MorId, f: MorId) -> Result<MorId> {
        if self.dom(g) != self.cod(f) {
            return Err(Error::Mismatch(format!(
                "{} ∘ {} is not composable",
                self.morphism_name(g),
                self.morphism_name(f)
            )));
        }
        self.try_compose(g, f)
            .ok_or_else(|| Error::InvalidCategory(format!("missing composite {g} ∘ {f}")))
    }

    /// The zero morphism `a -> * -> b`, when a basepoint is declared.
    pub fn zero(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.zeros[a * self.objects.len() + b]
    }

    /// True iff `f` factors through the declared basepoint.
    pub fn is_zero(&self, f: MorId) -> bool {
        let m = &self.morphisms[f];
        self.zero(m.dom, m.cod) == Some(f)
    }

    pub fn nonzero_hom(&self, a: ObjId, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        let z = self.zero(a, b);
        self.hom(a, b).iter().copied().filter(move |&f| Some(f) != z)
    }

    /// Returns a copy whose table records `g ∘ f = h`, whatever it said before.
    /// Used to build fault fixtures.
    pub fn with_composite_overridden(&self, g: MorId, f: MorId, h: MorId) -> Result<FinCategory> {
        if self.dom(g) != self.cod(f) {
            return Err(Error::Mismatch(format!("{g} ∘ {f} is not composable")));
        }
        let mut out = self.clone();
        out.comp[self.comp_offset[f] + self.out_pos[g]] = h as u32;
        out.report = OnceLock::new();
        out.zeros = out.compute_zeros();
        Ok(out)
    }

    /// Exhaustive axiom check, cached after the first call.
    pub fn validate(&self) -> &CategoryReport {
        self.report.get_or_init(|| validate_category(self))
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::InvalidCategory(format!(
                "{} failed: {}",
                c.axiom,
                c.witness.as_deref().unwrap_or("")
            ))),
        }
    }

    /// Number of composable pairs, i.e. the size of the composition table.
    pub fn composable_pairs(&self) -> usize {
        self.comp.len()
    }

    pub fn to_json(&self) -> CategoryJson {
        let n = self.objects.len();
        let mut homs = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                if !h.is_empty() {
                    homs.insert(format!("{a},{b}"), h.to_vec());
                }
            }
        }
        let mut compose = BTreeMap::new();
        for f in self.morphism_ids() {
            for &g in &self.outgoing[self.cod(f)] {
                if let Some(h) = self.try_compose(g, f) {
                    compose.insert(format!("{g},{f}"), h);
                }
            }
        }
        let identities = self
            .identities
            .iter()
            .enumerate()
            .filter_map(|(a, i)| i.map(|i| (a.to_string(), i)))
            .collect();
        CategoryJson {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            homs: Some(homs),
            compose,
            identities,
            basepoint: self.basepoint,
        }
    }

    pub fn from_json(json: &CategoryJson) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new();
        for o in &json.objects {
            b.object(o.clone());
        }
        for m in &json.morphisms {
            b.morphism(m.name.clone(), m.dom, m.cod);
        }
        for (key, &mor) in &json.identities {
            let obj: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("identity key {key:?} is not an object index")))?;
            if obj >= b.num_objects() || mor >= b.num_morphisms() {
                return Err(Error::Malformed(format!("identity {key} -> {mor} out of range")));
            }
            b.set_identity(obj, mor);
        }
        if let Some(bp) = json.basepoint {
            b.basepoint(bp);
        }
        for (key, &h) in &json.compose {
            let (g, f) = parse_pair(key)?;
            if g >= b.num_morphisms() || f >= b.num_morphisms() {
                return Err(Error::Malformed(format!("composite key {key} out of range")));
            }
            b.composite(g, f, h);
        }
        let cat = b.build()?;
        if let Some(homs) = &json.homs {
            for (key, list) in homs {
                let (a, c) = parse_pair(key)?;
                if a >= cat.num_objects() || c >= cat.num_objects() || cat.hom(a, c) != list.as_slice() {
                    return Err(Error::Malformed(format!(
                        "hom listing {key} disagrees with the morphism list"
                    )));
                }
            }
        }
        Ok(cat)
    }

    /// Graphviz rendering: objects as nodes, a generating set of
    /// non-identity morphisms as edges.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph \"{graph_name}\" {{\n");
        for (i, o) in self.objects.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(o)));
        }
        for f in self.generators() {
            let m = &self.morphisms[f];
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                m.dom,
                m.cod,
                escape(&m.name)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// Greedy generating set: a non-identity morphism is kept iff it is not
    /// already a composite of previously kept ones.
    pub fn generators(&self) -> Vec<MorId> {
        let mut reached = vec![false; self.morphisms.len()];
        for i in self.identities.iter().flatten() {
            reached[*i] = true;
        }
        let mut gens = Vec::new();
        for f in self.morphism_ids() {
            if reached[f] {
                continue;
            }
            gens.push(f);
            reached[f] = true;
            // close under composition with everything reached so far
            let mut stack = vec![f];
            while let Some(x) = stack.pop() {
                let mut fresh = Vec::new();
                for &g in &self.outgoing[self.cod(x)] {
                    if reached[g] {
                        if let Some(h) = self.try_compose(g, x) {
                            fresh.push(h);
                        }
                    }
                }
                for y in self.morphism_ids() {
                    if reached[y] && self.cod(y) == self.dom(x) {
                        if let Some(h) = self.try_compose(x, y) {
                            fresh.push(h);
                        }
                    }
                }
                for h in fresh {
                    if !reached[h] {
                        reached[h] = true;
                        stack.push(h);
                    }
                }
            }
        }
        gens
    }
}

/// Pointer equality first, structural equality as fallback.
pub fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected \"a,b\", got {key:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad index in {key:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

/// Serialized form of a [`FinCategory`].
///
/// Morphism identifiers are positions in `morphisms`; `homs` is keyed by
/// `"dom,cod"` and `compose` by `"g,f"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homs: Option<BTreeMap<String, Vec<MorId>>>,
    pub compose: BTreeMap<String, MorId>,
    pub identities: BTreeMap<String, MorId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<ObjId>,
}

impl Serialize for FinCategory {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinCategory {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = CategoryJson::deserialize(d)?;
        FinCategory::from_json(&json).map_err(serde::de::Error::custom)
    }
}

fn pass(axiom: &'static str) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: true,
        witness: None,
    }
}

fn fail(axiom: &'static str, witness: String) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: false,
        witness: Some(witness),
    }
}

/// Checks table totality, unit laws, associativity on every composable
/// triple, and (when declared) that the basepoint is initial and terminal.
pub fn validate_category(c: &FinCategory) -> CategoryReport {
    let name = |f: MorId| c.morphism_name(f).to_string();
    let mut checks = Vec::new();

    // tables
    let mut table_issue = None;
    'outer: for f in c.morphism_ids() {
        for &g in c.outgoing(c.cod(f)) {
            match c.try_compose(g, f) {
                None => {
                    table_issue = Some(format!("missing composite {} ∘ {}", name(g), name(f)));
                    break 'outer;
                }
                Some(h) if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) => {
                    table_issue = Some(format!(
                        "composite {} ∘ {} = {} has the wrong endpoints",
                        name(g),
                        name(f),
                        name(h)
                    ));
                    break 'outer;
                }
                Some(_) => {}
            }
        }
    }
    if table_issue.is_none() {
        for a in c.objects() {
            match c.try_identity(a) {
                None => {
                    table_issue = Some(format!("object {} has no identity", c.object_name(a)));
                    break;
                }
                Some(i) if c.dom(i) != a || c.cod(i) != a => {
                    table_issue = Some(format!("identity of {} is not an endomorphism of it", c.object_name(a)));
                    break;
                }
                Some(_) => {}
            }
        }
    }
    checks.push(match table_issue {
        None => pass("tables"),
        Some(w) => fail("tables", w),
    });

    // unit laws
    let mut left = None;
    let mut right = None;
    for f in c.morphism_ids() {
        let (a, b) = (c.dom(f), c.cod(f));
        if left.is_none() {
            if let Some(ib) = c.try_identity(b) {
                if c.try_compose(ib, f) != Some(f) {
                    left = Some(format!("1 ∘ {} != {}", name(f), name(f)));
                }
            }
        }
        if right.is_none() {
            if let Some(ia) = c.try_identity(a) {
                if c.try_compose(f, ia) != Some(f) {
                    right = Some(format!("{} ∘ 1 != {}", name(f), name(f)));
                }
            }
        }
    }
    checks.push(left.map_or_else(|| pass("left_unit"), |w| fail("left_unit", w)));
    checks.push(right.map_or_else(|| pass("right_unit"), |w| fail("right_unit", w)));

    // associativity
    let mut triples = 0u64;
    let mut assoc = None;
    'assoc: for f in c.morphism_ids() {
        for &g in c.outgoing(c.cod(f)) {
            let Some(gf) = c.try_compose(g, f) else { continue };
            for &h in c.outgoing(c.cod(g)) {
                triples += 1;
                let Some(hg) = c.try_compose(h, g) else { continue };
                let lhs = c.try_compose(hg, f);
                let rhs = c.try_compose(h, gf);
                if lhs != rhs || lhs.is_none() {
                    assoc = Some(format!(
                        "({} ∘ {}) ∘ {} != {} ∘ ({} ∘ {})",
                        name(h),
                        name(g),
                        name(f),
                        name(h),
                        name(g),
                        name(f)
                    ));
                    break 'assoc;
                }
            }
        }
    }
    checks.push(assoc.map_or_else(|| pass("associativity"), |w| fail("associativity", w)));

    if let Some(b) = c.basepoint() {
        let mut issue = None;
        for a in c.objects() {
            let into = c.hom(a, b).len();
            let out = c.hom(b, a).len();
            if into != 1 || out != 1 {
                issue = Some(format!(
                    "|hom({0}, *)| = {into}, |hom(*, {0})| = {out}",
                    c.object_name(a)
                ));
                break;
            }
        }
        checks.push(issue.map_or_else(|| pass("basepoint"), |w| fail("basepoint", w)));
    }

    CategoryReport { checks, triples }
}

/// Plain object/morphism tables of a functor, without the categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctorTable {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl FunctorTable {
    pub fn identity(c: &FinCategory) -> Self {
        Self {
            objects: c.objects().collect(),
            morphisms: c.morphism_ids().collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorTable) -> FunctorTable {
        FunctorTable {
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&m| self.morphisms[m]).collect(),
        }
    }

    /// First violation of the functor laws from `dom` to `cod`, if any.
    pub fn violation(&self, dom: &FinCategory, cod: &FinCategory) -> Option<String> {
        if self.objects.len() != dom.num_objects() || self.morphisms.len() != dom.num_morphisms() {
            return Some("table size does not match the domain".into());
        }
        if let Some(&o) = self.objects.iter().find(|&&o| o >= cod.num_objects()) {
            return Some(format!("object image {o} out of range"));
        }
        if let Some(&m) = self.morphisms.iter().find(|&&m| m >= cod.num_morphisms()) {
            return Some(format!("morphism image {m} out of range"));
        }
        for f in dom.morphism_ids() {
            let img = self.morphisms[f];
            if cod.dom(img) != self.objects[dom.dom(f)] || cod.cod(img) != self.objects[dom.cod(f)] {
                return Some(format!("image of {} has the wrong endpoints", dom.morphism_name(f)));
            }
        }
        for a in dom.objects() {
            if cod.try_identity(self.objects[a]) != Some(self.morphisms[dom.identity(a)]) {
                return Some(format!("identity of {} is not preserved", dom.object_name(a)));
            }
        }
        for f in dom.morphism_ids() {
            for &g in dom.outgoing(dom.cod(f)) {
                let gf = dom.compose(g, f);
                if cod.try_compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                    return Some(format!(
                        "composite {} ∘ {} is not preserved",
                        dom.morphism_name(g),
                        dom.morphism_name(f)
                    ));
                }
            }
        }
        None
    }
}

/// A functor between finite categories. When both categories declare a
/// basepoint, validation also requires `F(*) = *`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFunctor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    table: FunctorTable,
}

impl PointedFunctor {
    /// Checks table sizes and ranges; the functor laws are checked by
    /// [`validate`](Self::validate).
    pub fn new(dom: Arc<FinCategory>, cod: Arc<FinCategory>, table: FunctorTable) -> Result<Self> {
        if table.objects.len() != dom.num_objects() || table.morphisms.len() != dom.num_morphisms() {
            return Err(Error::InvalidFunctor("table size does not match the domain".into()));
        }
        if table.objects.iter().any(|&o| o >= cod.num_objects())
            || table.morphisms.iter().any(|&m| m >= cod.num_morphisms())
        {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        Ok(Self { dom, cod, table })
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let table = FunctorTable::identity(&c);
        Self {
            dom: c.clone(),
            cod: c,
            table,
        }
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn table(&self) -> &FunctorTable {
        &self.table
    }

    #[inline]
    pub fn on_object(&self, a: ObjId) -> ObjId {
        self.table.objects[a]
    }

    #[inline]
    pub fn on_morphism(&self, f: MorId) -> MorId {
        self.table.morphisms[f]
    }

    /// Functor laws and basepoint preservation; `None` means valid.
    pub fn validate(&self) -> Option<String> {
        if let Some(w) = self.table.violation(&self.dom, &self.cod) {
            return Some(w);
        }
        if let (Some(a), Some(b)) = (self.dom.basepoint(), self.cod.basepoint()) {
            if self.on_object(a) != b {
                return Some("basepoint is not preserved".into());
            }
        }
        None
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate() {
            None => Ok(()),
            Some(w) => Err(Error::InvalidFunctor(w)),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PointedFunctor) -> Result<PointedFunctor> {
        if !same_category(&first.cod, &self.dom) {
            return Err(Error::Mismatch("functors are not composable".into()));
        }
        Ok(PointedFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            table: self.table.after(&first.table),
        })
    }

    /// Witness of failure of full faithfulness, or `None` if every hom map is a bijection.
    pub fn fully_faithful_violation(&self) -> Option<String> {
        for a in self.dom.objects() {
            for b in self.dom.objects() {
                let src = self.dom.hom(a, b);
                let tgt = self.cod.hom(self.on_object(a), self.on_object(b));
                let mut hit = vec![false; tgt.len()];
                for &f in src {
                    let pos = self.cod.hom_position(self.on_morphism(f));
                    if hit[pos] {
                        return Some(format!(
                            "hom({}, {}) is not mapped injectively",
                            self.dom.object_name(a),
                            self.dom.object_name(b)
                        ));
                    }
                    hit[pos] = true;
                }
                if hit.iter().any(|h| !h) {
                    return Some(format!(
                        "hom({}, {}) -> hom(F{}, F{}) is not surjective",
                        self.dom.object_name(a),
                        self.dom.object_name(b),
                        self.dom.object_name(a),
                        self.dom.object_name(b)
                    ));
                }
            }
        }
        None
    }
}

/// A failing naturality square `target(f) ∘ α_a != α_b ∘ source(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub morphism: MorId,
    pub morphism_name: String,
    pub left: MorId,
    pub right: MorId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub squares_checked: usize,
    pub witness: Option<SquareWitness>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// A natural transformation between two functors with a common domain and codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    source: PointedFunctor,
    target: PointedFunctor,
    components: Vec<Option<MorId>>,
}

impl NatTransformation {
    pub fn new(source: PointedFunctor, target: PointedFunctor, components: Vec<Option<MorId>>) -> Result<Self> {
        if !same_category(&source.dom, &target.dom) || !same_category(&source.cod, &target.cod) {
            return Err(Error::Mismatch(
                "source and target functors differ in domain or codomain".into(),
            ));
        }
        if components.len() != source.dom.num_objects() {
            return Err(Error::LengthMismatch {
                expected: source.dom.num_objects(),
                actual: components.len(),
            });
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: PointedFunctor) -> Self {
        let components = f.dom.objects().map(|a| Some(f.cod.identity(f.on_object(a)))).collect();
        Self {
            source: f.clone(),
            target: f,
            components,
        }
    }

    pub fn source(&self) -> &PointedFunctor {
        &self.source
    }

    pub fn target(&self) -> &PointedFunctor {
        &self.target
    }

    pub fn component(&self, a: ObjId) -> Result<MorId> {
        self.components[a]
            .ok_or_else(|| Error::MissingComponent(format!("no component at {}", self.source.dom.object_name(a))))
    }

    /// Component at `a`; panics if missing.
    pub fn at(&self, a: ObjId) -> MorId {
        self.component(a).unwrap()
    }

    /// `α F`: components `α_{F b}`, for `first` landing in our domain.
    pub fn whisker_left(&self, first: &PointedFunctor) -> Result<NatTransformation> {
        let components = first
            .dom
            .objects()
            .map(|b| self.components[first.on_object(b)])
            .collect();
        NatTransformation::new(self.source.after(first)?, self.target.after(first)?, components)
    }

    /// `K α`: components `K(α_a)`, for `after` defined on our codomain.
    pub fn whisker_right(&self, after: &PointedFunctor) -> Result<NatTransformation> {
        let components = self
            .components
            .iter()
            .map(|c| c.map(|m| after.on_morphism(m)))
            .collect();
        NatTransformation::new(after.after(&self.source)?, after.after(&self.target)?, components)
    }
}

/// Checks every naturality square, reporting the first failure.
pub fn check_natural(t: &NatTransformation) -> Result<NaturalityReport> {
    let dom = &t.source.dom;
    let cod = &t.source.cod;
    for a in dom.objects() {
        let c = t.component(a)?;
        if cod.dom(c) != t.source.on_object(a) || cod.cod(c) != t.target.on_object(a) {
            return Err(Error::Mismatch(format!(
                "component at {} has the wrong endpoints",
                dom.object_name(a)
            )));
        }
    }
    let mut squares = 0;
    for f in dom.morphism_ids() {
        let (a, b) = (dom.dom(f), dom.cod(f));
        let left = cod.compose(t.target.on_morphism(f), t.at(a));
        let right = cod.compose(t.at(b), t.source.on_morphism(f));
        squares += 1;
        if left != right {
            return Ok(NaturalityReport {
                squares_checked: squares,
                witness: Some(SquareWitness {
                    morphism: f,
                    morphism_name: dom.morphism_name(f).to_string(),
                    left,
                    right,
                }),
            });
        }
    }
    Ok(NaturalityReport {
        squares_checked: squares,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> FinCategory {
        let mut b = FinCategory::builder();
        let o = b.object("o");
        let i = b.identity("1", o);
        b.composite(i, i, i);
        b.build().unwrap()
    }

    /// Monoid {1, e} with e∘e = e, presented as a one-object category.
    fn idempotent() -> FinCategory {
        let mut b = FinCategory::builder();
        let o = b.object("o");
        let i = b.identity("1", o);
        let e = b.morphism("e", o, o);
        b.composite(i, i, i);
        b.composite(i, e, e);
        b.composite(e, i, e);
        b.composite(e, e, e);
        b.build().unwrap()
    }

    /// Monoid {1, a, z} with a∘a = z absorbing; `broken` sets a∘z = a.
    fn nilpotent(broken: bool) -> FinCategory {
        let mut b = FinCategory::builder();
        let o = b.object("o");
        let i = b.identity("1", o);
        let a = b.morphism("a", o, o);
        let z = b.morphism("z", o, o);
        for m in [i, a, z] {
            b.composite(i, m, m);
            b.composite(m, i, m);
        }
        b.composite(a, a, z);
        b.composite(z, a, z);
        b.composite(z, z, z);
        b.composite(a, z, if broken { a } else { z });
        b.build().unwrap()
    }

    #[test]
    fn single_object_passes() {
        assert!(one().validate().passed());
        assert!(idempotent().validate().passed());
        assert!(nilpotent(false).validate().passed());
    }

    #[test]
    fn broken_associativity_is_named() {
        let c = nilpotent(true);
        let r = c.validate();
        assert!(!r.passed());
        let f = r.first_failure().unwrap();
        assert_eq!(f.axiom, "associativity");
        assert!(f.witness.as_ref().unwrap().contains('a'));
    }

    #[test]
    fn missing_composite_is_flagged_not_raised() {
        let mut b = FinCategory::builder();
        let o = b.object("o");
        let i = b.identity("1", o);
        b.morphism("e", o, o);
        b.composite(i, i, i);
        let c = b.build().unwrap();
        assert_eq!(c.validate().first_failure().unwrap().axiom, "tables");
        assert!(c.ensure_valid().is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = idempotent();
        let s = serde_json::to_string(&c).unwrap();
        let back: FinCategory = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn dot_lists_generators() {
        let dot = idempotent().to_dot("idem");
        assert!(dot.contains("label=\"e\""));
        assert!(!dot.contains("label=\"1\""));
    }

    #[test]
    fn identity_transformation_is_natural() {
        let c = Arc::new(idempotent());
        let id = PointedFunctor::identity(c);
        let t = NatTransformation::identity(id);
        assert!(check_natural(&t).unwrap().passed());
    }

    #[test]
    fn missing_component_is_an_error() {
        let c = Arc::new(one());
        let id = PointedFunctor::identity(c);
        let t = NatTransformation::new(id.clone(), id, vec![None]).unwrap();
        assert!(matches!(check_natural(&t), Err(Error::MissingComponent(_))));
    }
}
