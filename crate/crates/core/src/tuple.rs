//! The tuple category `T(B)` over a pointed finite base `B`.
//!
//! Objects are the basepoint `*` and tuples of nonzero base objects. A
//! morphism from a `q`-tuple to a `p`-tuple is either zero or a pair
//! `(f, ⟨ψ⟩)` of an injection `f : q -> p` and base morphisms
//! `ψ_j : n_{f⁻¹(j)} -> m_j`, where an index off the image of `f` reads the
//! designated unit object. Any zero component makes the whole morphism zero;
//! this normalization is applied eagerly, so equal morphisms are equal values.
//!
//! With `B` the truncated `F` and unit `<1>` this is the truncated `G*`;
//! with `B` the pointed `Δᵒᵖ` and unit `[0]` it is the truncated `E`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{FinCategory, FunctorTable, MorId, ObjId, PointedFunctor};
use crate::error::{Error, Result};
use crate::pointed::PointedMap;
use crate::skeletal::{
    enum_injections, pointed_delta_op, reindex_slice, smash_maps, smash_objects, Fskel, Injection, ObjectTuple,
    TruncationParams,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TupleMorphism {
    Zero,
    Map {
        injection: Injection,
        /// Base morphism ids, one per codomain position.
        components: Vec<MorId>,
    },
}

impl TupleMorphism {
    pub fn is_zero(&self) -> bool {
        matches!(self, TupleMorphism::Zero)
    }
}

/// A finite truncation of `T(B)`, materialized as a [`FinCategory`].
#[derive(Clone, Debug)]
pub struct TupleCategory {
    base: Arc<FinCategory>,
    unit: ObjId,
    q_max: usize,
    objects: Vec<ObjectTuple>,
    object_index: HashMap<ObjectTuple, ObjId>,
    morphisms: Vec<TupleMorphism>,
    morphism_index: HashMap<(ObjId, ObjId, TupleMorphism), MorId>,
    cat: Arc<FinCategory>,
}

/// All tuples of length `q` over the nonzero base objects `1..base_objects`,
/// lexicographic.
fn tuples_of_length(q: usize, base_objects: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..base_objects).map(move |n| {
                    let mut t = t.clone();
                    t.push(n);
                    t
                })
            })
            .collect();
    }
    out
}

impl TupleCategory {
    /// The full truncation: `*` first, then tuples by length, then lexicographically.
    pub fn build(base: Arc<FinCategory>, unit: ObjId, q_max: usize) -> Result<Self> {
        let mut objects = vec![ObjectTuple::Basepoint];
        for q in 0..=q_max {
            objects.extend(
                tuples_of_length(q, base.num_objects())
                    .into_iter()
                    .map(ObjectTuple::Tuple),
            );
        }
        Self::build_on(base, unit, q_max, objects)
    }

    /// The full subcategory on the listed objects, which must start with `*`.
    pub fn build_on(base: Arc<FinCategory>, unit: ObjId, q_max: usize, objects: Vec<ObjectTuple>) -> Result<Self> {
        base.ensure_valid()?;
        if base.basepoint() != Some(0) {
            return Err(Error::InvalidCategory(
                "tuple categories need a base whose zero object is object 0".into(),
            ));
        }
        if unit == 0 || unit >= base.num_objects() {
            return Err(Error::Malformed(format!(
                "unit object {unit} must be a nonzero base object"
            )));
        }
        if objects.first() != Some(&ObjectTuple::Basepoint) {
            return Err(Error::Malformed("object list must start with the basepoint".into()));
        }
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if let Some(e) = o.entries() {
                if e.len() > q_max {
                    return Err(Error::Truncation(format!("{o} is longer than q_max = {q_max}")));
                }
                if let Some(&bad) = e.iter().find(|&&n| n >= base.num_objects()) {
                    return Err(Error::Truncation(format!("entry {bad} of {o} is not a base object")));
                }
            } else if i != 0 {
                return Err(Error::Malformed("basepoint listed twice".into()));
            }
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::Malformed(format!("object {o} listed twice")));
            }
        }

        let mut builder = FinCategory::builder();
        for o in &objects {
            builder.object(o.to_string());
        }
        builder.basepoint(0);
        let mut morphisms = Vec::new();
        let mut morphism_index = HashMap::new();
        let mut ends = Vec::new();
        for (a, src) in objects.iter().enumerate() {
            for (b, tgt) in objects.iter().enumerate() {
                let mut hom = enumerate_hom(&base, unit, src, tgt)?;
                hom.push(TupleMorphism::Zero);
                for m in hom {
                    let id = builder.morphism(morphism_name(&base, &m), a, b);
                    morphism_index.insert((a, b, m.clone()), id);
                    morphisms.push(m);
                    ends.push((a, b));
                }
            }
        }
        for (a, o) in objects.iter().enumerate() {
            let id = match o {
                ObjectTuple::Basepoint => TupleMorphism::Zero,
                ObjectTuple::Tuple(e) => normalize(
                    &base,
                    Injection::identity(e.len()),
                    e.iter().map(|&n| base.identity(n)).collect(),
                ),
            };
            builder.set_identity(a, morphism_index[&(a, a, id)]);
        }
        let cat = builder.build_with(|g, f| {
            let (a, _) = ends[f];
            let (_, c) = ends[g];
            let h = compose_formula(&base, unit, &morphisms[g], &morphisms[f]).ok()?;
            morphism_index.get(&(a, c, h)).copied()
        })?;
        Ok(Self {
            base,
            unit,
            q_max,
            objects,
            object_index,
            morphisms,
            morphism_index,
            cat: Arc::new(cat),
        })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn unit(&self) -> ObjId {
        self.unit
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn objects(&self) -> &[ObjectTuple] {
        &self.objects
    }

    pub fn object(&self, id: ObjId) -> &ObjectTuple {
        &self.objects[id]
    }

    pub fn object_id(&self, t: &ObjectTuple) -> Result<ObjId> {
        self.object_index
            .get(t)
            .copied()
            .ok_or_else(|| Error::Truncation(format!("{t} is not an object of this truncation")))
    }

    pub fn morphism(&self, id: MorId) -> &TupleMorphism {
        &self.morphisms[id]
    }

    /// Identifier of a morphism between two objects, normalizing first.
    pub fn morphism_id(&self, dom: ObjId, cod: ObjId, m: &TupleMorphism) -> Result<MorId> {
        let m = match m {
            TupleMorphism::Zero => TupleMorphism::Zero,
            TupleMorphism::Map { injection, components } => {
                normalize(&self.base, injection.clone(), components.clone())
            }
        };
        self.morphism_index
            .get(&(dom, cod, m))
            .copied()
            .ok_or_else(|| Error::Malformed("not a morphism between these objects".into()))
    }

    /// The hom-set listing: injections lexicographic, then components
    /// lexicographic, with the zero morphism last unless `nonzero_only`.
    pub fn enum_tuple_hom(
        &self,
        dom: &ObjectTuple,
        cod: &ObjectTuple,
        nonzero_only: bool,
    ) -> Result<Vec<TupleMorphism>> {
        let (a, b) = (self.object_id(dom)?, self.object_id(cod)?);
        Ok(self
            .cat
            .hom(a, b)
            .iter()
            .map(|&m| self.morphisms[m].clone())
            .filter(|m| !(nonzero_only && m.is_zero()))
            .collect())
    }

    /// `g ∘ f` by the composition formula, checked for composability.
    pub fn compose_tuple(&self, g: MorId, f: MorId) -> Result<MorId> {
        if self.cat.cod(f) != self.cat.dom(g) {
            return Err(Error::Mismatch(format!(
                "{} ∘ {} is not composable",
                self.cat.morphism_name(g),
                self.cat.morphism_name(f)
            )));
        }
        let h = compose_formula(&self.base, self.unit, &self.morphisms[g], &self.morphisms[f])?;
        self.morphism_id(self.cat.dom(f), self.cat.cod(g), &h)
    }

    /// Concatenation of objects; the basepoint absorbs.
    pub fn oplus_objects(&self, a: &ObjectTuple, b: &ObjectTuple) -> Result<ObjectTuple> {
        let c = a.concat(b);
        if let Some(q) = c.len() {
            if q > self.q_max {
                return Err(Error::Truncation(format!(
                    "{a} ⊕ {b} is longer than q_max = {}",
                    self.q_max
                )));
            }
        }
        self.object_id(&c)?;
        Ok(c)
    }

    /// Blockwise sum of morphisms; zero absorbs.
    pub fn oplus_morphisms(&self, f: MorId, g: MorId) -> Result<MorId> {
        let dom = self.oplus_objects(self.object(self.cat.dom(f)), self.object(self.cat.dom(g)))?;
        let cod = self.oplus_objects(self.object(self.cat.cod(f)), self.object(self.cat.cod(g)))?;
        let m = match (&self.morphisms[f], &self.morphisms[g]) {
            (
                TupleMorphism::Map {
                    injection: fi,
                    components: fc,
                },
                TupleMorphism::Map {
                    injection: gi,
                    components: gc,
                },
            ) => TupleMorphism::Map {
                injection: fi.block_sum(gi),
                components: fc.iter().chain(gc).copied().collect(),
            },
            _ => TupleMorphism::Zero,
        };
        self.morphism_id(self.object_id(&dom)?, self.object_id(&cod)?, &m)
    }

    /// The length-one inclusion `B -> T(B)`: `b ↦ (b)`, `ψ ↦ (1, (ψ))`.
    pub fn length_one_inclusion(&self) -> Result<PointedFunctor> {
        if self.q_max < 1 {
            return Err(Error::Truncation("the length-one inclusion needs q_max >= 1".into()));
        }
        let objects = self
            .base
            .objects()
            .map(|n| self.object_id(&ObjectTuple::new(vec![n])))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = self
            .base
            .morphism_ids()
            .map(|psi| {
                let (a, b) = (self.base.dom(psi), self.base.cod(psi));
                let m = TupleMorphism::Map {
                    injection: Injection::identity(1),
                    components: vec![psi],
                };
                self.morphism_id(objects[a], objects[b], &m)
            })
            .collect::<Result<Vec<_>>>()?;
        PointedFunctor::new(self.base.clone(), self.cat.clone(), FunctorTable { objects, morphisms })
    }
}

fn morphism_name(base: &FinCategory, m: &TupleMorphism) -> String {
    match m {
        TupleMorphism::Zero => "0".into(),
        TupleMorphism::Map { injection, components } => {
            let comps: Vec<&str> = components.iter().map(|&c| base.morphism_name(c)).collect();
            format!("({injection};{})", comps.join(";"))
        }
    }
}

fn normalize(base: &FinCategory, injection: Injection, components: Vec<MorId>) -> TupleMorphism {
    if components.iter().any(|&c| base.is_zero(c)) {
        TupleMorphism::Zero
    } else {
        TupleMorphism::Map { injection, components }
    }
}

fn enumerate_hom(base: &FinCategory, unit: ObjId, src: &ObjectTuple, tgt: &ObjectTuple) -> Result<Vec<TupleMorphism>> {
    let (Some(s), Some(t)) = (src.entries(), tgt.entries()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for f in enum_injections(s.len(), t.len()) {
        let doms = reindex_slice(&f, s, &unit)?;
        let choices: Vec<Vec<MorId>> = doms
            .iter()
            .zip(t)
            .map(|(&d, &c)| base.nonzero_hom(d, c).collect())
            .collect();
        let mut combos: Vec<Vec<MorId>> = vec![Vec::new()];
        for options in &choices {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&o| {
                        let mut v = prefix.clone();
                        v.push(o);
                        v
                    })
                })
                .collect();
        }
        out.extend(combos.into_iter().map(|components| TupleMorphism::Map {
            injection: f.clone(),
            components,
        }));
    }
    Ok(out)
}

/// `(g, ⟨φ⟩) ∘ (f, ⟨ψ⟩) = (g f, ⟨φ⟩ ∘ g_*⟨ψ⟩)`, normalized.
pub fn compose_formula(base: &FinCategory, unit: ObjId, g: &TupleMorphism, f: &TupleMorphism) -> Result<TupleMorphism> {
    let (
        TupleMorphism::Map {
            injection: gi,
            components: phi,
        },
        TupleMorphism::Map {
            injection: fi,
            components: psi,
        },
    ) = (g, f)
    else {
        return Ok(TupleMorphism::Zero);
    };
    let injection = gi.after(fi)?;
    let pushed = reindex_slice(gi, psi, &base.identity(unit))?;
    let components = phi
        .iter()
        .zip(&pushed)
        .map(|(&p, &s)| base.checked_compose(p, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize(base, injection, components))
}

/// The truncated `G*`: tuples over `F` truncated at `<N>`, with unit `<1>`.
#[derive(Clone, Debug)]
pub struct Gstar {
    fskel: Fskel,
    tuples: TupleCategory,
}

impl Gstar {
    pub fn new(trunc: &TruncationParams) -> Result<Self> {
        let fskel = Fskel::new(trunc.n_max)?;
        Self::over(fskel, trunc.q_max)
    }

    pub fn over(fskel: Fskel, q_max: usize) -> Result<Self> {
        if fskel.n_max() < 1 {
            return Err(Error::Truncation("G* needs <1> in the base truncation".into()));
        }
        let tuples = TupleCategory::build(fskel.category().clone(), 1, q_max)?;
        Ok(Self { fskel, tuples })
    }

    /// Full subcategory on the listed objects (which must start with `*`).
    pub fn on_objects(fskel: Fskel, q_max: usize, objects: Vec<ObjectTuple>) -> Result<Self> {
        let tuples = TupleCategory::build_on(fskel.category().clone(), 1, q_max, objects)?;
        Ok(Self { fskel, tuples })
    }

    /// The full subcategory on tuples whose smash stays inside `F≤N`, the
    /// largest domain on which `∧` lands back in the same truncation.
    pub fn collapsible(fskel: Fskel, q_max: usize) -> Result<Self> {
        let full = Self::over(fskel.clone(), q_max)?;
        let n = fskel.n_max();
        let objects = full
            .tuples()
            .objects()
            .iter()
            .filter(|t| smash_objects(t) <= n)
            .cloned()
            .collect();
        Self::on_objects(fskel, q_max, objects)
    }

    pub fn fskel(&self) -> &Fskel {
        &self.fskel
    }

    pub fn tuples(&self) -> &TupleCategory {
        &self.tuples
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        self.tuples.category()
    }

    /// `(f, ⟨ψ⟩)` with the components as pointed maps; `None` for zero.
    pub fn components(&self, m: MorId) -> Option<(Injection, Vec<PointedMap>)> {
        match self.tuples.morphism(m) {
            TupleMorphism::Zero => None,
            TupleMorphism::Map { injection, components } => Some((
                injection.clone(),
                components.iter().map(|&c| self.fskel.map_of(c)).collect(),
            )),
        }
    }

    /// Looks up `(f, ⟨ψ⟩) : dom -> cod`.
    pub fn morphism_from_maps(
        &self,
        dom: &ObjectTuple,
        cod: &ObjectTuple,
        injection: Injection,
        psis: &[PointedMap],
    ) -> Result<MorId> {
        let components = psis.iter().map(|p| self.fskel.map_id(p)).collect::<Result<Vec<_>>>()?;
        let (a, b) = (self.tuples.object_id(dom)?, self.tuples.object_id(cod)?);
        self.tuples
            .morphism_id(a, b, &TupleMorphism::Map { injection, components })
    }

    pub fn collapse_object(&self, t: &ObjectTuple) -> usize {
        smash_objects(t)
    }

    /// The smash `∧(f, ⟨ψ⟩)` as a pointed map.
    pub fn collapse_morphism(&self, m: MorId) -> Result<PointedMap> {
        let c = self.category();
        let (src, tgt) = (self.tuples.object(c.dom(m)), self.tuples.object(c.cod(m)));
        match self.components(m) {
            None => Ok(PointedMap::zero(smash_objects(src), smash_objects(tgt))),
            Some((f, psis)) => smash_maps(&f, &psis, src, tgt),
        }
    }

    /// `∧ : G* -> F` as a functor into the given truncation of `F`.
    pub fn collapse_functor(&self, target: &Fskel) -> Result<PointedFunctor> {
        let objects = self
            .tuples
            .objects()
            .iter()
            .map(|t| target.object(smash_objects(t)))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = self
            .category()
            .morphism_ids()
            .map(|m| target.map_id(&self.collapse_morphism(m)?))
            .collect::<Result<Vec<_>>>()?;
        PointedFunctor::new(
            self.category().clone(),
            target.category().clone(),
            FunctorTable { objects, morphisms },
        )
    }

    /// Largest smash product of an object, i.e. the `N` the collapse needs.
    pub fn collapse_bound(&self) -> usize {
        self.tuples.objects().iter().map(smash_objects).max().unwrap_or(0)
    }

    pub fn morphism_json(&self, m: MorId) -> TupleMorphismJson {
        match self.components(m) {
            None => TupleMorphismJson::Zero { zero: true },
            Some((f, psis)) => TupleMorphismJson::Map {
                f: f.images().to_vec(),
                psis,
            },
        }
    }
}

/// `{"zero":true}` or `{"f":[...], "psis":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TupleMorphismJson {
    Zero { zero: bool },
    Map { f: Vec<usize>, psis: Vec<PointedMap> },
}

/// Closed-form count of nonzero `G*` morphisms `n -> m`:
/// `Σ_f Π_j ((m_j + 1)^{n_{f⁻¹(j)}} − 1)` with `n_∅ = 1`.
pub fn gstar_nonzero_count(n: &[usize], m: &[usize]) -> usize {
    enum_injections(n.len(), m.len())
        .iter()
        .map(|f| {
            let inv = f.inverse();
            m.iter()
                .enumerate()
                .map(|(j, &mj)| {
                    let e = inv[j].map_or(1, |i| n[i - 1]);
                    (mj + 1).pow(e as u32) - 1
                })
                .product::<usize>()
        })
        .sum()
}

/// The truncated `E`: tuples over the pointed `Δᵒᵖ` on `[0..d]`, unit `[0]`.
pub fn simplex_tuple_category(d: usize, q_max: usize) -> Result<TupleCategory> {
    TupleCategory::build(Arc::new(pointed_delta_op(d)?), 1, q_max)
}

impl fmt::Display for TupleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TupleMorphism::Zero => write!(f, "0"),
            TupleMorphism::Map { injection, components } => write!(f, "({injection};{components:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g22() -> Gstar {
        Gstar::new(&TruncationParams::default()).unwrap()
    }

    fn t(s: &str) -> ObjectTuple {
        s.parse().unwrap()
    }

    #[test]
    fn objects_of_the_small_truncation() {
        let g = g22();
        let names: Vec<String> = g.tuples().objects().iter().map(|o| o.to_string()).collect();
        assert_eq!(names, ["*", "()", "(1)", "(2)", "(1,1)", "(1,2)", "(2,1)", "(2,2)"]);
    }

    #[test]
    fn hom_examples() {
        let g = Gstar::new(&TruncationParams {
            n_max: 3,
            q_max: 1,
            degree: 3,
        })
        .unwrap();
        let h = g.tuples().enum_tuple_hom(&t("(2)"), &t("(3)"), false).unwrap();
        assert_eq!(h.len(), 16);
        assert!(h.last().unwrap().is_zero());
        let g = g22();
        assert_eq!(
            g.tuples().enum_tuple_hom(&t("(1)"), &t("()"), false).unwrap(),
            vec![TupleMorphism::Zero]
        );
        assert!(g
            .tuples()
            .enum_tuple_hom(&t("(1,1)"), &t("(1)"), true)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn empty_length_truncation() {
        let f = Fskel::new(2).unwrap();
        let g = Gstar::over(f, 0).unwrap();
        let c = g.category();
        assert_eq!(c.num_objects(), 2);
        assert!(c.validate().passed());
        let unit = g.tuples().object_id(&ObjectTuple::unit()).unwrap();
        let nonzero: Vec<_> = c
            .morphism_ids()
            .filter(|&m| !g.tuples().morphism(m).is_zero())
            .collect();
        assert_eq!(nonzero, vec![c.identity(unit)]);
    }

    #[test]
    fn identity_and_zero_laws() {
        let g = g22();
        let c = g.category();
        for f in c.morphism_ids() {
            let (a, b) = (c.dom(f), c.cod(f));
            assert_eq!(g.tuples().compose_tuple(f, c.identity(a)).unwrap(), f);
            assert_eq!(g.tuples().compose_tuple(c.identity(b), f).unwrap(), f);
            for x in c.objects() {
                let z = c.zero(b, x).unwrap();
                assert!(g.tuples().morphism(g.tuples().compose_tuple(z, f).unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn oplus_examples() {
        let g = g22();
        let tc = g.tuples();
        assert_eq!(tc.oplus_objects(&t("(1)"), &t("(2)")).unwrap(), t("(1,2)"));
        assert_eq!(tc.oplus_objects(&t("(2)"), &t("()")).unwrap(), t("(2)"));
        assert_eq!(tc.oplus_objects(&t("()"), &t("(2)")).unwrap(), t("(2)"));
        assert_eq!(tc.oplus_objects(&t("*"), &t("(2)")).unwrap(), ObjectTuple::Basepoint);
        assert!(matches!(
            tc.oplus_objects(&t("(1,2)"), &t("(1)")),
            Err(Error::Truncation(_))
        ));
        let c = g.category();
        let (a, b) = (tc.object_id(&t("(1)")).unwrap(), tc.object_id(&t("(2)")).unwrap());
        let ab = tc.object_id(&t("(1,2)")).unwrap();
        assert_eq!(
            tc.oplus_morphisms(c.identity(a), c.identity(b)).unwrap(),
            c.identity(ab)
        );
    }

    #[test]
    fn simplex_tuple_category_is_a_category() {
        let e = simplex_tuple_category(1, 2).unwrap();
        assert!(e.category().validate().passed());
        let j = e.length_one_inclusion().unwrap();
        assert!(j.validate().is_none());
        assert!(j.fully_faithful_violation().is_none());
    }

    #[test]
    fn count_formula_small_cases() {
        assert_eq!(gstar_nonzero_count(&[2], &[3]), 15);
        assert_eq!(gstar_nonzero_count(&[1], &[]), 0);
        assert_eq!(gstar_nonzero_count(&[], &[2, 2]), 4);
        assert_eq!(gstar_nonzero_count(&[2, 2], &[4]), 0);
    }
}
