//! Pointed diagrams `C -> Set*` and `C -> Cat` on a finite pointed index
//! category, their natural transformations, precomposition, and the
//! levelwise nerve of a category-valued diagram.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{same_category, FinCategory, FunctorTable, MorId, ObjId, PointedFunctor};
use crate::error::{Error, Result};
use crate::pointed::{compose_pointed, PointedFinSet, PointedMap};
use crate::simplicial::{nerve_simplices, IdentityReport, Simplex, SimplicialSet};

/// The value categories a diagram may land in.
pub trait DiagramValue: Clone + fmt::Debug + PartialEq {
    type Map: Clone + fmt::Debug + PartialEq;

    fn terminal() -> Self;
    fn is_terminal(&self) -> bool;
    fn identity_map(&self) -> Self::Map;
    /// `g ∘ f`, for maps already known to be composable.
    fn compose_maps(g: &Self::Map, f: &Self::Map) -> Self::Map;
    /// Why `map` is not a map `src -> tgt`, if it is not.
    fn map_violation(map: &Self::Map, src: &Self, tgt: &Self) -> Option<String>;
}

impl DiagramValue for PointedFinSet {
    type Map = PointedMap;

    fn terminal() -> Self {
        PointedFinSet::point()
    }

    fn is_terminal(&self) -> bool {
        self.is_point()
    }

    fn identity_map(&self) -> PointedMap {
        PointedMap::identity(self.size)
    }

    fn compose_maps(g: &PointedMap, f: &PointedMap) -> PointedMap {
        compose_pointed(g, f).expect("composable pointed maps")
    }

    fn map_violation(map: &PointedMap, src: &Self, tgt: &Self) -> Option<String> {
        (map.source() != *src || map.target() != *tgt).then(|| format!("{map} is not a map {src} -> {tgt}"))
    }
}

impl DiagramValue for Arc<FinCategory> {
    type Map = FunctorTable;

    fn terminal() -> Self {
        let mut b = FinCategory::builder();
        let o = b.object("*");
        let i = b.identity("1", o);
        b.composite(i, i, i);
        Arc::new(b.build().expect("terminal category"))
    }

    fn is_terminal(&self) -> bool {
        self.num_objects() == 1 && self.num_morphisms() == 1
    }

    fn identity_map(&self) -> FunctorTable {
        FunctorTable::identity(self)
    }

    fn compose_maps(g: &FunctorTable, f: &FunctorTable) -> FunctorTable {
        g.after(f)
    }

    fn map_violation(map: &FunctorTable, src: &Self, tgt: &Self) -> Option<String> {
        map.violation(src, tgt)
    }
}

/// Outcome of a diagram or diagram-map validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub checked: usize,
    pub witness: Option<String>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// A diagram on a finite pointed index category, stored as total tables.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedDiagram<V: DiagramValue> {
    index: Arc<FinCategory>,
    objects: Vec<V>,
    morphisms: Vec<V::Map>,
}

pub type SetDiagram = PointedDiagram<PointedFinSet>;
pub type CatDiagram = PointedDiagram<Arc<FinCategory>>;

impl<V: DiagramValue> PointedDiagram<V> {
    /// Checks that both tables are total; the functor laws are checked by
    /// [`validate`](Self::validate).
    pub fn new(index: Arc<FinCategory>, objects: Vec<V>, morphisms: Vec<V::Map>) -> Result<Self> {
        if objects.len() != index.num_objects() {
            return Err(Error::InvalidDiagram(format!(
                "object table has {} entries for {} objects",
                objects.len(),
                index.num_objects()
            )));
        }
        if morphisms.len() != index.num_morphisms() {
            return Err(Error::InvalidDiagram(format!(
                "morphism table has {} entries for {} morphisms",
                morphisms.len(),
                index.num_morphisms()
            )));
        }
        Ok(Self {
            index,
            objects,
            morphisms,
        })
    }

    pub fn from_fn(
        index: Arc<FinCategory>,
        on_object: impl Fn(ObjId) -> V,
        on_morphism: impl Fn(MorId) -> Result<V::Map>,
    ) -> Result<Self> {
        let objects = index.objects().map(on_object).collect();
        let morphisms = index.morphism_ids().map(on_morphism).collect::<Result<_>>()?;
        Self::new(index, objects, morphisms)
    }

    /// The diagram constant at the terminal value.
    pub fn terminal(index: Arc<FinCategory>) -> Self {
        let t = V::terminal();
        let objects = vec![t.clone(); index.num_objects()];
        let morphisms = vec![t.identity_map(); index.num_morphisms()];
        Self {
            index,
            objects,
            morphisms,
        }
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    pub fn value(&self, a: ObjId) -> &V {
        &self.objects[a]
    }

    pub fn map(&self, f: MorId) -> &V::Map {
        &self.morphisms[f]
    }

    pub fn values(&self) -> &[V] {
        &self.objects
    }

    pub fn maps(&self) -> &[V::Map] {
        &self.morphisms
    }

    /// Endpoints, identities, every composable pair, and the basepoint.
    pub fn validate(&self) -> DiagramReport {
        let c = &self.index;
        let mut checked = 0;
        let fail = |checked, w| DiagramReport {
            checked,
            witness: Some(w),
        };
        for f in c.morphism_ids() {
            checked += 1;
            if let Some(w) = V::map_violation(&self.morphisms[f], &self.objects[c.dom(f)], &self.objects[c.cod(f)]) {
                return fail(checked, format!("image of {}: {w}", c.morphism_name(f)));
            }
        }
        for a in c.objects() {
            checked += 1;
            if self.morphisms[c.identity(a)] != self.objects[a].identity_map() {
                return fail(checked, format!("identity of {} is not preserved", c.object_name(a)));
            }
        }
        for f in c.morphism_ids() {
            for &g in c.outgoing(c.cod(f)) {
                checked += 1;
                let lhs = &self.morphisms[c.compose(g, f)];
                if *lhs != V::compose_maps(&self.morphisms[g], &self.morphisms[f]) {
                    return fail(
                        checked,
                        format!(
                            "composite {} ∘ {} is not preserved",
                            c.morphism_name(g),
                            c.morphism_name(f)
                        ),
                    );
                }
            }
        }
        checked += 1;
        match c.basepoint() {
            None => return fail(checked, "index category has no basepoint".into()),
            Some(b) if !self.objects[b].is_terminal() => {
                return fail(
                    checked,
                    format!("basepoint value {:?} is not terminal", self.objects[b]),
                )
            }
            _ => {}
        }
        DiagramReport { checked, witness: None }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().witness {
            None => Ok(()),
            Some(w) => Err(Error::InvalidDiagram(w)),
        }
    }

    /// `F* X = X ∘ F`.
    pub fn precompose(&self, f: &PointedFunctor) -> Result<Self> {
        if !same_category(f.cod(), &self.index) {
            return Err(Error::Mismatch("functor does not land in the diagram's index".into()));
        }
        Ok(Self {
            index: f.dom().clone(),
            objects: f.table().objects.iter().map(|&o| self.objects[o].clone()).collect(),
            morphisms: f.table().morphisms.iter().map(|&m| self.morphisms[m].clone()).collect(),
        })
    }
}

/// A natural transformation between diagrams on the same index.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramMap<V: DiagramValue> {
    source: Arc<PointedDiagram<V>>,
    target: Arc<PointedDiagram<V>>,
    components: Vec<V::Map>,
}

pub type SetMap = DiagramMap<PointedFinSet>;
pub type CatMap = DiagramMap<Arc<FinCategory>>;

impl<V: DiagramValue> DiagramMap<V> {
    pub fn new(
        source: Arc<PointedDiagram<V>>,
        target: Arc<PointedDiagram<V>>,
        components: Vec<V::Map>,
    ) -> Result<Self> {
        if !same_category(&source.index, &target.index) {
            return Err(Error::Mismatch("diagrams live on different index categories".into()));
        }
        if components.len() != source.index.num_objects() {
            return Err(Error::LengthMismatch {
                expected: source.index.num_objects(),
                actual: components.len(),
            });
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: Arc<PointedDiagram<V>>) -> Self {
        let components = x.objects.iter().map(V::identity_map).collect();
        Self {
            source: x.clone(),
            target: x,
            components,
        }
    }

    pub fn source(&self) -> &Arc<PointedDiagram<V>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PointedDiagram<V>> {
        &self.target
    }

    pub fn component(&self, a: ObjId) -> &V::Map {
        &self.components[a]
    }

    pub fn components(&self) -> &[V::Map] {
        &self.components
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DiagramMap<V>) -> Result<DiagramMap<V>> {
        if first.target != self.source {
            return Err(Error::Mismatch("diagram maps are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| V::compose_maps(g, f))
            .collect();
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Component endpoints, every naturality square, and the basepoint component.
    pub fn check_natural(&self) -> DiagramReport {
        let c = &self.source.index;
        let mut checked = 0;
        let fail = |checked, w| DiagramReport {
            checked,
            witness: Some(w),
        };
        for a in c.objects() {
            checked += 1;
            if let Some(w) = V::map_violation(&self.components[a], &self.source.objects[a], &self.target.objects[a]) {
                return fail(checked, format!("component at {}: {w}", c.object_name(a)));
            }
        }
        for f in c.morphism_ids() {
            checked += 1;
            let (a, b) = (c.dom(f), c.cod(f));
            let left = V::compose_maps(&self.target.morphisms[f], &self.components[a]);
            let right = V::compose_maps(&self.components[b], &self.source.morphisms[f]);
            if left != right {
                return fail(
                    checked,
                    format!("naturality square at {} does not commute", c.morphism_name(f)),
                );
            }
        }
        if let Some(b) = c.basepoint() {
            checked += 1;
            if self.components[b] != self.source.objects[b].identity_map() {
                return fail(checked, "basepoint component is not the identity".into());
            }
        }
        DiagramReport { checked, witness: None }
    }

    /// `F* α`, with components `α_{F c}`.
    pub fn precompose(&self, f: &PointedFunctor) -> Result<Self> {
        Ok(Self {
            source: Arc::new(self.source.precompose(f)?),
            target: Arc::new(self.target.precompose(f)?),
            components: f.table().objects.iter().map(|&o| self.components[o].clone()).collect(),
        })
    }

    /// Same as [`precompose`](Self::precompose) but reusing already
    /// precomposed endpoints, so results compose with other maps between them.
    pub fn precompose_onto(
        &self,
        f: &PointedFunctor,
        source: Arc<PointedDiagram<V>>,
        target: Arc<PointedDiagram<V>>,
    ) -> Result<Self> {
        let components = f.table().objects.iter().map(|&o| self.components[o].clone()).collect();
        Self::new(source, target, components)
    }
}

impl SetDiagram {
    /// Nonbasepoint cardinality at `a`.
    pub fn size_at(&self, a: ObjId) -> usize {
        self.objects[a].size
    }

    /// Total number of nonbasepoint elements over all objects.
    pub fn total_size(&self) -> usize {
        self.objects.iter().map(|o| o.size).sum()
    }
}

impl SetMap {
    pub fn is_levelwise_bijection(&self) -> bool {
        self.components.iter().all(PointedMap::is_bijective)
    }
}

/// Default cap on candidate component values tried by [`enum_diagram_maps`].
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// All natural transformations `x -> y`, in lexicographic order of their
/// component tables (objects in index order, elements ascending).
///
/// Backtracks over element images; assigning `α_a(e) = v` immediately forces
/// `α_b(X h (e)) = Y h (v)` for every `h : a -> b`, so only consistent
/// partial assignments are ever extended. Every value tried counts against
/// `budget`; running out is an error rather than a truncated answer.
pub fn enum_diagram_maps(x: &Arc<SetDiagram>, y: &Arc<SetDiagram>, budget: usize) -> Result<Vec<SetMap>> {
    if !same_category(&x.index, &y.index) {
        return Err(Error::Mismatch("diagrams live on different index categories".into()));
    }
    let c = &x.index;
    let mut offsets = Vec::with_capacity(c.num_objects() + 1);
    offsets.push(0);
    for a in c.objects() {
        offsets.push(offsets[a] + x.size_at(a));
    }
    let vars = offsets[c.num_objects()];
    let owner: Vec<(ObjId, usize)> = c
        .objects()
        .flat_map(|a| (1..=x.size_at(a)).map(move |e| (a, e)))
        .collect();

    struct Search<'a> {
        c: &'a FinCategory,
        x: &'a SetDiagram,
        y: &'a SetDiagram,
        offsets: &'a [usize],
        owner: &'a [(ObjId, usize)],
        assign: Vec<Option<usize>>,
        trail: Vec<usize>,
        spent: usize,
        budget: usize,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        /// Assigns and propagates; false on conflict. Every write goes on the trail.
        fn set(&mut self, var: usize, value: usize) -> bool {
            let mut queue = vec![(var, value)];
            while let Some((v, val)) = queue.pop() {
                match self.assign[v] {
                    Some(old) if old == val => continue,
                    Some(_) => return false,
                    None => {}
                }
                self.assign[v] = Some(val);
                self.trail.push(v);
                let (a, e) = self.owner[v];
                for &h in self.c.outgoing(a) {
                    let b = self.c.cod(h);
                    let xe = self.x.morphisms[h].apply(e);
                    let yv = self.y.morphisms[h].apply(val);
                    if xe == 0 {
                        if yv != 0 {
                            return false;
                        }
                    } else {
                        queue.push((self.offsets[b] + xe - 1, yv));
                    }
                }
            }
            true
        }

        fn undo(&mut self, mark: usize) {
            while self.trail.len() > mark {
                let v = self.trail.pop().unwrap();
                self.assign[v] = None;
            }
        }

        fn run(&mut self, from: usize) -> Result<()> {
            let Some(v) = (from..self.assign.len()).find(|&v| self.assign[v].is_none()) else {
                self.found.push(self.assign.iter().map(|a| a.unwrap()).collect());
                return Ok(());
            };
            let (a, _) = self.owner[v];
            for val in 0..=self.y.size_at(a) {
                self.spent += 1;
                if self.spent > self.budget {
                    return Err(Error::BudgetExceeded { budget: self.budget });
                }
                let mark = self.trail.len();
                if self.set(v, val) {
                    self.run(v + 1)?;
                }
                self.undo(mark);
            }
            Ok(())
        }
    }

    let mut s = Search {
        c,
        x,
        y,
        offsets: &offsets,
        owner: &owner,
        assign: vec![None; vars],
        trail: Vec::new(),
        spent: 0,
        budget,
        found: Vec::new(),
    };
    s.run(0)?;
    s.found
        .into_iter()
        .map(|table| {
            let components = c
                .objects()
                .map(|a| PointedMap::new(x.size_at(a), y.size_at(a), table[offsets[a]..offsets[a + 1]].to_vec()))
                .collect::<Result<_>>()?;
            SetMap::new(x.clone(), y.clone(), components)
        })
        .collect()
}

/// The levelwise nerve `N_* X` of a category-valued diagram through degree `d`.
///
/// Degree `k` is the set-valued diagram `c ↦ N_k(X c)`. Its basepoint is the
/// totally degenerate simplex on the object picked out by `X(* -> c)`, so the
/// basepoint level is a point in every degree and index maps preserve it.
#[derive(Clone, Debug)]
pub struct LevelwiseNerve {
    pub degree: usize,
    pub levels: Vec<Arc<SetDiagram>>,
    /// `simplices[c][k][e]` is element `e` of `N_k(X c)`.
    pub simplices: Vec<Vec<Vec<Simplex>>>,
    /// `faces[k][i] : N_k -> N_{k-1}` for `k ≥ 1`.
    pub faces: Vec<Vec<SetMap>>,
    /// `degeneracies[k][i] : N_k -> N_{k+1}` for `k < d`.
    pub degeneracies: Vec<Vec<SetMap>>,
    /// The simplicial set `N(X c)` in the same element order.
    pub per_object: Vec<SimplicialSet>,
}

pub fn nerve_levelwise(x: &CatDiagram, d: usize) -> Result<LevelwiseNerve> {
    x.ensure_valid()?;
    let c = &x.index;
    let b = c.basepoint().expect("validated diagrams have a basepoint");
    let mut simplices = Vec::with_capacity(c.num_objects());
    let mut per_object = Vec::with_capacity(c.num_objects());
    for a in c.objects() {
        let cat = &x.objects[a];
        let zero = c.hom(b, a)[0];
        let base_obj = x.morphisms[zero].objects[0];
        let levels: Vec<Vec<Simplex>> = (0..=d)
            .map(|k| {
                let mut level = nerve_simplices(cat, k);
                let base = Simplex {
                    start: base_obj,
                    mors: vec![cat.identity(base_obj); k],
                };
                let pos = level
                    .iter()
                    .position(|s| *s == base)
                    .expect("degenerate basepoint simplex");
                let s = level.remove(pos);
                level.insert(0, s);
                level
            })
            .collect();
        per_object.push(SimplicialSet::from_levels(
            &levels,
            |s, i| s.face(cat, i),
            |s, i| s.degeneracy(cat, i),
        ));
        simplices.push(levels);
    }
    let index: Vec<Vec<HashMap<&Simplex, usize>>> = simplices
        .iter()
        .map(|per| {
            per.iter()
                .map(|l| l.iter().enumerate().map(|(e, s)| (s, e)).collect())
                .collect()
        })
        .collect();

    let mut levels = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let diagram = SetDiagram::from_fn(
            c.clone(),
            |a| PointedFinSet::new(simplices[a][k].len() - 1),
            |h| {
                let (a, a2) = (c.dom(h), c.cod(h));
                let table = &x.morphisms[h];
                let values = simplices[a][k][1..]
                    .iter()
                    .map(|s| {
                        let img = Simplex {
                            start: table.objects[s.start],
                            mors: s.mors.iter().map(|&m| table.morphisms[m]).collect(),
                        };
                        index[a2][k][&img]
                    })
                    .collect();
                PointedMap::new(simplices[a][k].len() - 1, simplices[a2][k].len() - 1, values)
            },
        )?;
        levels.push(Arc::new(diagram));
    }

    let structure_map = |from: usize, to: usize, table: &dyn Fn(&SimplicialSet) -> &Vec<usize>| -> Result<SetMap> {
        let components = c
            .objects()
            .map(|a| {
                let t = table(&per_object[a]);
                PointedMap::new(t.len() - 1, simplices[a][to].len() - 1, t[1..].to_vec())
            })
            .collect::<Result<_>>()?;
        SetMap::new(levels[from].clone(), levels[to].clone(), components)
    };
    let faces = (0..=d)
        .map(|k| {
            if k == 0 {
                return Ok(Vec::new());
            }
            (0..=k)
                .map(|i| structure_map(k, k - 1, &|s: &SimplicialSet| &s.faces[k][i]))
                .collect()
        })
        .collect::<Result<_>>()?;
    let degeneracies = (0..=d)
        .map(|k| {
            if k == d {
                return Ok(Vec::new());
            }
            (0..=k)
                .map(|i| structure_map(k, k + 1, &|s: &SimplicialSet| &s.degeneracies[k][i]))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(LevelwiseNerve {
        degree: d,
        levels,
        simplices,
        faces,
        degeneracies,
        per_object,
    })
}

impl LevelwiseNerve {
    /// Simplicial identities at every index object, plus naturality of
    /// every face and degeneracy in the index variable.
    pub fn check_identities(&self) -> IdentityReport {
        let mut report = IdentityReport {
            checked: 0,
            witness: None,
        };
        for s in &self.per_object {
            report.merge(s.check_identities());
        }
        for m in self.faces.iter().chain(&self.degeneracies).flatten() {
            let r = m.check_natural();
            report.merge(IdentityReport {
                checked: r.checked,
                witness: r.witness,
            });
        }
        report
    }

    /// Simplex counts (including the basepoint) per index object and degree.
    pub fn counts(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .map(|per| per.iter().map(Vec::len).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeletal::Fskel;

    fn f2() -> Arc<FinCategory> {
        Fskel::new(2).unwrap().category().clone()
    }

    /// `<n> ↦ F(<1>, <n>)` with the zero map as basepoint.
    fn rep1(fs: &Fskel) -> SetDiagram {
        let c = fs.category().clone();
        SetDiagram::from_fn(
            c.clone(),
            |n| PointedFinSet::new(c.hom(1, n).len() - 1),
            |h| {
                let m = fs.map_of(h);
                let (a, b) = (c.dom(h), c.cod(h));
                // element k of F(<1>, <a>) is the map 1 ↦ k
                PointedMap::from_fn(c.hom(1, a).len() - 1, c.hom(1, b).len() - 1, |k| m.apply(k))
            },
        )
        .unwrap()
    }

    #[test]
    fn terminal_and_representable_validate() {
        assert!(SetDiagram::terminal(f2()).validate().passed());
        let fs = Fskel::new(2).unwrap();
        assert!(rep1(&fs).validate().passed());
    }

    #[test]
    fn broken_composite_is_named() {
        let fs = Fskel::new(2).unwrap();
        let mut x = rep1(&fs);
        let swap = fs.map_id(&PointedMap::new(2, 2, vec![2, 1]).unwrap()).unwrap();
        x.morphisms[swap] = PointedMap::identity(2);
        let r = x.validate();
        assert!(r.witness.unwrap().contains("composite"));
    }

    #[test]
    fn nonterminal_basepoint_fails() {
        let c = f2();
        let x = SetDiagram::from_fn(c.clone(), |_| PointedFinSet::new(1), |_| Ok(PointedMap::identity(1))).unwrap();
        assert!(x.validate().witness.unwrap().contains("basepoint"));
    }

    #[test]
    fn maps_out_of_and_into_terminal() {
        let fs = Fskel::new(2).unwrap();
        let t = Arc::new(SetDiagram::terminal(fs.category().clone()));
        let r = Arc::new(rep1(&fs));
        assert_eq!(enum_diagram_maps(&r, &t, DEFAULT_BUDGET).unwrap().len(), 1);
        assert_eq!(enum_diagram_maps(&t, &r, DEFAULT_BUDGET).unwrap().len(), 1);
    }

    #[test]
    fn maps_out_of_a_representable_are_points_of_the_target() {
        let fs = Fskel::new(2).unwrap();
        let r = Arc::new(rep1(&fs));
        let maps = enum_diagram_maps(&r, &r, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps.len(), r.size_at(1) + 1);
        assert!(maps.iter().all(|m| m.check_natural().passed()));
    }

    #[test]
    fn budget_is_explicit() {
        let fs = Fskel::new(2).unwrap();
        let r = Arc::new(rep1(&fs));
        assert!(matches!(
            enum_diagram_maps(&r, &r, 1),
            Err(Error::BudgetExceeded { budget: 1 })
        ));
    }

    #[test]
    fn terminal_category_nerve_is_a_point() {
        let c = f2();
        let x = CatDiagram::terminal(c);
        let n = nerve_levelwise(&x, 3).unwrap();
        assert!(n.counts().iter().flatten().all(|&k| k == 1));
        assert!(n.check_identities().passed());
    }
}
