//! The left adjoint `L` of restriction `i*` along a pointed functor
//! `i : C -> D`, computed as an explicit coend of pointed finite sets:
//!
//! ```text
//! (LX) t = ∫^{n ∈ C} ⋁_{θ ∈ D°(i n, t)} X n
//! ```
//!
//! Generators are triples `(n, θ, x)` with `θ` nonzero and `x` a
//! nonbasepoint element of `X n`. For every `h : n -> n'` the generator
//! `(n, θ ∘ i h, x)` is identified with `(n', θ, X h (x))`, where a zero
//! composite or a basepoint image means the basepoint class. The quotient is
//! computed with union-find; every class is named by its least generator in
//! the order `(n, θ, x)`, which makes all outputs deterministic.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{same_category, FinCategory, FunctorTable, MorId, ObjId, PointedFunctor};
use crate::diagram::{enum_diagram_maps, DiagramReport, SetDiagram, SetMap};
use crate::error::{Error, Result};
use crate::pointed::{PointedFinSet, PointedMap};
use crate::skeletal::{Fskel, ObjectTuple};
use crate::tuple::Gstar;

/// Disjoint sets over `0..n`; the root of each set is its least element.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        lo
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub n: ObjId,
    pub theta: MorId,
    pub x: usize,
}

/// The coend at one object `t`, with its generators and their classes.
#[derive(Clone, Debug, Serialize)]
pub struct CoendPresentation {
    pub target: ObjId,
    pub generators: Vec<Generator>,
    /// Class of each generator; `0` is the basepoint class.
    pub class_of: Vec<usize>,
    /// Least generator of class `c` at position `c - 1`.
    pub representatives: Vec<usize>,
    #[serde(skip)]
    blocks: HashMap<(ObjId, MorId), usize>,
}

impl CoendPresentation {
    /// Number of nonbasepoint classes.
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn pointed_set(&self) -> PointedFinSet {
        PointedFinSet::new(self.size())
    }

    pub fn generator_index(&self, n: ObjId, theta: MorId, x: usize) -> Option<usize> {
        if x == 0 {
            return None;
        }
        self.blocks.get(&(n, theta)).map(|&start| start + x - 1)
    }

    /// Class of `(n, θ, x)`; zero `θ` or basepoint `x` give the basepoint class.
    pub fn class(&self, n: ObjId, theta: MorId, x: usize) -> usize {
        self.generator_index(n, theta, x).map_or(0, |g| self.class_of[g])
    }

    pub fn representative(&self, class: usize) -> &Generator {
        &self.generators[self.representatives[class - 1]]
    }

    /// Generators belonging to `class`, in order.
    pub fn members(&self, class: usize) -> impl Iterator<Item = &Generator> + '_ {
        self.generators
            .iter()
            .zip(&self.class_of)
            .filter(move |(_, &c)| c == class)
            .map(|(g, _)| g)
    }
}

fn check_inputs(x: &SetDiagram, i: &PointedFunctor) -> Result<()> {
    if !same_category(i.dom(), x.index()) {
        return Err(Error::Mismatch(
            "the functor's domain is not the diagram's index".into(),
        ));
    }
    x.ensure_valid()?;
    i.ensure_valid()
}

fn present(x: &SetDiagram, i: &PointedFunctor, t: ObjId) -> CoendPresentation {
    let c = x.index();
    let d = i.cod();
    let mut generators = Vec::new();
    let mut blocks = HashMap::new();
    for n in c.objects() {
        let size = x.size_at(n);
        for theta in d.nonzero_hom(i.on_object(n), t) {
            blocks.insert((n, theta), generators.len() + 1);
            generators.extend((1..=size).map(|x| Generator { n, theta, x }));
        }
    }
    // node 0 is the basepoint, node g + 1 is generator g
    let mut uf = UnionFind::new(generators.len() + 1);
    let node = |n: ObjId, theta: MorId, x: usize| -> usize {
        if x == 0 || d.is_zero(theta) {
            0
        } else {
            blocks[&(n, theta)] + x - 1
        }
    };
    for h in c.morphism_ids() {
        let (n, n2) = (c.dom(h), c.cod(h));
        let ih = i.on_morphism(h);
        let xh = x.map(h);
        for theta in d.nonzero_hom(i.on_object(n2), t) {
            let composite = d.compose(theta, ih);
            for e in 1..=x.size_at(n) {
                uf.union(node(n, composite, e), node(n2, theta, xh.apply(e)));
            }
        }
    }
    let mut class_of_root = HashMap::new();
    class_of_root.insert(0, 0);
    let mut representatives = Vec::new();
    let mut class_of = Vec::with_capacity(generators.len());
    for g in 0..generators.len() {
        let root = uf.find(g + 1);
        let class = *class_of_root.entry(root).or_insert_with(|| {
            representatives.push(g);
            representatives.len()
        });
        class_of.push(class);
    }
    CoendPresentation {
        target: t,
        generators,
        class_of,
        representatives,
        blocks: blocks.into_iter().map(|(k, v)| (k, v - 1)).collect(),
    }
}

/// `(LX) t` as a pointed set together with its presentation.
pub fn compute_l(x: &SetDiagram, i: &PointedFunctor, t: ObjId) -> Result<(PointedFinSet, CoendPresentation)> {
    check_inputs(x, i)?;
    if t >= i.cod().num_objects() {
        return Err(Error::OutOfRange {
            value: t,
            max: i.cod().num_objects() - 1,
            context: "target object".into(),
        });
    }
    let p = present(x, i, t);
    Ok((p.pointed_set(), p))
}

/// `LX` at every object of `D`, with its functorial action.
#[derive(Clone, Debug)]
pub struct Lift {
    x: Arc<SetDiagram>,
    i: PointedFunctor,
    presentations: Vec<CoendPresentation>,
    diagram: Arc<SetDiagram>,
    restricted: Arc<SetDiagram>,
}

impl Lift {
    pub fn new(x: Arc<SetDiagram>, i: &PointedFunctor) -> Result<Self> {
        check_inputs(&x, i)?;
        let d = i.cod().clone();
        let presentations: Vec<CoendPresentation> = d.objects().map(|t| present(&x, i, t)).collect();
        let diagram = SetDiagram::from_fn(
            d.clone(),
            |t| presentations[t].pointed_set(),
            |g| {
                let (t, s) = (d.dom(g), d.cod(g));
                let (from, to) = (&presentations[t], &presentations[s]);
                let values = (1..=from.size())
                    .map(|c| {
                        let r = from.representative(c);
                        to.class(r.n, d.compose(g, r.theta), r.x)
                    })
                    .collect();
                PointedMap::new(from.size(), to.size(), values)
            },
        )?;
        let restricted = Arc::new(diagram.precompose(i)?);
        Ok(Self {
            x,
            i: i.clone(),
            presentations,
            diagram: Arc::new(diagram),
            restricted,
        })
    }

    pub fn source(&self) -> &Arc<SetDiagram> {
        &self.x
    }

    pub fn functor(&self) -> &PointedFunctor {
        &self.i
    }

    /// `LX` as a diagram on `D`.
    pub fn diagram(&self) -> &Arc<SetDiagram> {
        &self.diagram
    }

    /// `i* L X`.
    pub fn restricted(&self) -> &Arc<SetDiagram> {
        &self.restricted
    }

    pub fn presentation(&self, t: ObjId) -> &CoendPresentation {
        &self.presentations[t]
    }

    /// Rechecks the action of every `D`-morphism on every generator, not
    /// just on class representatives.
    pub fn check_well_defined(&self) -> DiagramReport {
        let d = self.i.cod();
        let mut checked = 0;
        for g in d.morphism_ids() {
            let (from, to) = (&self.presentations[d.dom(g)], &self.presentations[d.cod(g)]);
            let action = self.diagram.map(g);
            for (gen, &class) in from.generators.iter().zip(&from.class_of) {
                checked += 1;
                if to.class(gen.n, d.compose(g, gen.theta), gen.x) != action.apply(class) {
                    return DiagramReport {
                        checked,
                        witness: Some(format!(
                            "{} moves members of class {class} at {} to different classes",
                            d.morphism_name(g),
                            d.object_name(d.dom(g))
                        )),
                    };
                }
            }
        }
        DiagramReport { checked, witness: None }
    }

    /// `η_{X,p} : X p -> (LX)(i p)`, `x ↦ [p, 1_{i p}, x]`.
    pub fn unit_at(&self, p: ObjId) -> PointedMap {
        let d = self.i.cod();
        let ip = self.i.on_object(p);
        let pres = &self.presentations[ip];
        let id = d.identity(ip);
        PointedMap::from_fn(self.x.size_at(p), pres.size(), |e| pres.class(p, id, e)).expect("unit lands in the coend")
    }

    /// `η_X : X -> i* L X`.
    pub fn unit(&self) -> Result<SetMap> {
        let components = self.x.index().objects().map(|p| self.unit_at(p)).collect();
        SetMap::new(self.x.clone(), self.restricted.clone(), components)
    }

    /// `ε_Y : L i* Y -> Y`, where this lift must be of `i* Y`.
    ///
    /// Every member of every class is evaluated, so an ill-defined class
    /// is reported instead of silently resolved by its representative.
    pub fn counit(&self, y: &Arc<SetDiagram>) -> Result<SetMap> {
        let d = self.i.cod();
        if !same_category(y.index(), d) {
            return Err(Error::Mismatch(
                "the diagram does not live on the functor's codomain".into(),
            ));
        }
        if *self.x != y.precompose(&self.i)? {
            return Err(Error::Mismatch(
                "the lift is not of the restriction of this diagram".into(),
            ));
        }
        let components = d
            .objects()
            .map(|t| {
                let pres = &self.presentations[t];
                let mut values = vec![None; pres.size()];
                for (gen, &class) in pres.generators.iter().zip(&pres.class_of) {
                    let image = y.map(gen.theta).apply(gen.x);
                    if class == 0 {
                        if image != 0 {
                            return Err(Error::InconsistentCounit { object: t, class });
                        }
                        continue;
                    }
                    match values[class - 1] {
                        None => values[class - 1] = Some(image),
                        Some(v) if v != image => return Err(Error::InconsistentCounit { object: t, class }),
                        _ => {}
                    }
                }
                PointedMap::new(
                    pres.size(),
                    y.size_at(t),
                    values.into_iter().map(|v| v.unwrap()).collect(),
                )
            })
            .collect::<Result<_>>()?;
        SetMap::new(self.diagram.clone(), y.clone(), components)
    }
}

/// `L f : LX -> LX'` for `f : X -> X'`, given the lifts of both ends.
pub fn lift_map(f: &SetMap, from: &Lift, to: &Lift) -> Result<SetMap> {
    if **f.source() != *from.x || **f.target() != *to.x {
        return Err(Error::Mismatch("map endpoints do not match the lifts".into()));
    }
    let d = from.i.cod();
    let components = d
        .objects()
        .map(|t| {
            let (a, b) = (&from.presentations[t], &to.presentations[t]);
            PointedMap::from_fn(a.size(), b.size(), |c| {
                let r = a.representative(c);
                b.class(r.n, r.theta, f.component(r.n).apply(r.x))
            })
        })
        .collect::<Result<_>>()?;
    SetMap::new(from.diagram.clone(), to.diagram.clone(), components)
}

/// `(LX)(t) -> Y(t)` for a map into `i* Y`; convenience for counit use.
pub fn counit_epsilon(y: &Arc<SetDiagram>, i: &PointedFunctor) -> Result<(Lift, SetMap)> {
    let lift = Lift::new(Arc::new(y.precompose(i)?), i)?;
    let eps = lift.counit(y)?;
    Ok((lift, eps))
}

pub fn unit_eta(x: &Arc<SetDiagram>, i: &PointedFunctor, p: ObjId) -> Result<PointedMap> {
    Ok(Lift::new(x.clone(), i)?.unit_at(p))
}

fn first_difference(f: &SetMap, g: &SetMap, what: &str) -> Option<String> {
    let c = f.source().index();
    c.objects().find_map(|a| {
        let (u, v) = (f.component(a), g.component(a));
        (u != v).then(|| {
            let e = (1..=u.dom()).find(|&e| u.apply(e) != v.apply(e)).unwrap_or(0);
            format!("{what} differs at {} on element {e}", c.object_name(a))
        })
    })
}

fn identity_report(f: &SetMap, what: &str) -> DiagramReport {
    let checked = f.components().iter().map(PointedMap::dom).sum::<usize>();
    let id = SetMap::identity(f.source().clone());
    DiagramReport {
        checked,
        witness: first_difference(f, &id, what),
    }
}

/// `ε_{LX} ∘ L(η_X) = 1_{LX}`, elementwise at every object.
pub fn check_left_triangle(x: &Arc<SetDiagram>, i: &PointedFunctor) -> Result<DiagramReport> {
    let lx = Lift::new(x.clone(), i)?;
    let eta = lx.unit()?;
    let lilx = Lift::new(lx.restricted.clone(), i)?;
    let l_eta = lift_map(&eta, &lx, &lilx)?;
    let eps = lilx.counit(&lx.diagram)?;
    Ok(identity_report(&eps.after(&l_eta)?, "ε_LX ∘ L(η_X)"))
}

/// `(i* ε_Y) ∘ η_{i* Y} = 1_{i* Y}`, elementwise at every object.
pub fn check_right_triangle(y: &Arc<SetDiagram>, i: &PointedFunctor) -> Result<DiagramReport> {
    let (liy, eps) = counit_epsilon(y, i)?;
    let eta = liy.unit()?;
    let i_eps = eps.precompose_onto(i, liy.restricted.clone(), liy.x.clone())?;
    Ok(identity_report(&i_eps.after(&eta)?, "i*ε_Y ∘ η_{i*Y}"))
}

/// Both triangle identities, merged into one report.
pub fn check_triangles(x: &Arc<SetDiagram>, y: &Arc<SetDiagram>, i: &PointedFunctor) -> Result<DiagramReport> {
    let left = check_left_triangle(x, i)?;
    let right = check_right_triangle(y, i)?;
    Ok(DiagramReport {
        checked: left.checked + right.checked,
        witness: left.witness.or(right.witness),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    /// `|hom(LX, Y)|`.
    pub left: usize,
    /// `|hom(X, i* Y)|`.
    pub right: usize,
    pub witness: Option<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Enumerates both hom-sets and checks that `Φ(g) = i*(g) ∘ η_X` and
/// `Ψ(f) = ε_Y ∘ L(f)` are mutually inverse.
pub fn adjunction_bijection(
    x: &Arc<SetDiagram>,
    y: &Arc<SetDiagram>,
    i: &PointedFunctor,
    budget: usize,
) -> Result<AdjunctionReport> {
    let lx = Lift::new(x.clone(), i)?;
    let eta = lx.unit()?;
    let iy = Arc::new(y.precompose(i)?);
    let liy = Lift::new(iy.clone(), i)?;
    let eps = liy.counit(y)?;

    let left = enum_diagram_maps(lx.diagram(), y, budget)?;
    let right = enum_diagram_maps(x, &iy, budget)?;
    let phi = |g: &SetMap| -> Result<SetMap> { g.precompose_onto(i, lx.restricted.clone(), iy.clone())?.after(&eta) };
    let psi = |f: &SetMap| -> Result<SetMap> { eps.after(&lift_map(f, &lx, &liy)?) };

    let mut witness = None;
    if left.len() != right.len() {
        witness = Some(format!(
            "|hom(LX, Y)| = {} but |hom(X, i*Y)| = {}",
            left.len(),
            right.len()
        ));
    }
    for (k, f) in right.iter().enumerate() {
        if witness.is_some() {
            break;
        }
        witness = first_difference(&phi(&psi(f)?)?, f, &format!("Φ(Ψ(f_{k}))"));
    }
    for (k, g) in left.iter().enumerate() {
        if witness.is_some() {
            break;
        }
        witness = first_difference(&psi(&phi(g)?)?, g, &format!("Ψ(Φ(g_{k}))"));
    }
    Ok(AdjunctionReport {
        left: left.len(),
        right: right.len(),
        witness,
    })
}

/// `L(1) = 1` and `L(g ∘ f) = L(g) ∘ L(f)` for the given composable pair.
pub fn check_lift_functoriality(f: &SetMap, g: &SetMap, i: &PointedFunctor) -> Result<DiagramReport> {
    let la = Lift::new(f.source().clone(), i)?;
    let lb = Lift::new(f.target().clone(), i)?;
    let lc = Lift::new(g.target().clone(), i)?;
    let l_id = lift_map(&SetMap::identity(la.x.clone()), &la, &la)?;
    let r = identity_report(&l_id, "L(1)");
    if !r.passed() {
        return Ok(r);
    }
    let whole = lift_map(&g.after(f)?, &la, &lc)?;
    let parts = lift_map(g, &lb, &lc)?.after(&lift_map(f, &la, &lb)?)?;
    Ok(DiagramReport {
        checked: r.checked * 2,
        witness: first_difference(&whole, &parts, "L(g ∘ f)"),
    })
}

fn bijection_witness(m: &PointedMap, what: String) -> Option<String> {
    (!m.is_bijective()).then(|| format!("{what} is not a bijection: {m}"))
}

/// `η_{X,p}` is a bijection at every `p`.
pub fn check_unit_iso(x: &Arc<SetDiagram>, i: &PointedFunctor) -> Result<DiagramReport> {
    let lx = Lift::new(x.clone(), i)?;
    let c = x.index();
    let mut checked = 0;
    for p in c.objects() {
        checked += 1;
        if let Some(w) = bijection_witness(&lx.unit_at(p), format!("η at {}", c.object_name(p))) {
            return Ok(DiagramReport {
                checked,
                witness: Some(w),
            });
        }
    }
    Ok(DiagramReport { checked, witness: None })
}

/// Brute-force anchor for the coend engine.
///
/// With `i` the identity, evaluation `[n, h, x] ↦ X h (x)` must be a
/// bijection `(LX) p -> X p` inverse to the unit. When `via` is a fully
/// faithful functor out of the same index, the three-step composite
/// `X p -> (L_via X)(via p) ≅ (L_id X) p -> X p` is also checked to be the
/// identity, the middle map reindexing `θ` by its unique preimage.
pub fn yoneda_density_oracle(x: &Arc<SetDiagram>, via: Option<&PointedFunctor>) -> Result<DiagramReport> {
    let c = x.index().clone();
    let id = PointedFunctor::identity(c.clone());
    let density = Lift::new(x.clone(), &id)?;
    let eval = density.counit(x)?;
    let mut checked = 0;
    let fail = |checked, w| {
        Ok(DiagramReport {
            checked,
            witness: Some(w),
        })
    };
    for p in c.objects() {
        checked += 1;
        let e = eval.component(p);
        if let Some(w) = bijection_witness(e, format!("density evaluation at {}", c.object_name(p))) {
            return fail(checked, w);
        }
        let round = e.after(&density.unit_at(p))?;
        if !round.is_identity() {
            return fail(checked, format!("evaluation ∘ η at {} is {round}", c.object_name(p)));
        }
    }
    let Some(i) = via else {
        return Ok(DiagramReport { checked, witness: None });
    };
    if let Some(w) = i.fully_faithful_violation() {
        return fail(checked, format!("functor is not fully faithful: {w}"));
    }
    let d = i.cod();
    let mut preimage = HashMap::new();
    for h in c.morphism_ids() {
        preimage.insert(i.on_morphism(h), h);
    }
    let lift = Lift::new(x.clone(), i)?;
    for p in c.objects() {
        let eta = lift.unit_at(p);
        let pres = lift.presentation(i.on_object(p));
        let dens = density.presentation(p);
        for e in 1..=x.size_at(p) {
            checked += 1;
            let class = eta.apply(e);
            let image = if class == 0 {
                0
            } else {
                let r = pres.representative(class);
                let h = preimage[&r.theta];
                debug_assert_eq!(d.cod(r.theta), i.on_object(p));
                eval.component(p).apply(dens.class(r.n, h, r.x))
            };
            if image != e {
                return fail(
                    checked,
                    format!("three-step composite sends {e} to {image} at {}", c.object_name(p)),
                );
            }
        }
    }
    Ok(DiagramReport { checked, witness: None })
}

/// A class of diagram maps, decided per map.
pub trait MorphismClass {
    fn contains(&self, f: &SetMap) -> Result<bool>;
}

/// Maps whose every component is a bijection.
#[derive(Clone, Copy, Debug, Default)]
pub struct LevelwiseBijections;

impl MorphismClass for LevelwiseBijections {
    fn contains(&self, f: &SetMap) -> Result<bool> {
        Ok(f.is_levelwise_bijection())
    }
}

/// `S^i = (i*)⁻¹ S`: maps on `D` whose restriction along `i` lies in `S`.
#[derive(Clone, Copy, Debug)]
pub struct RightInduced<'a, S> {
    pub class: &'a S,
    pub functor: &'a PointedFunctor,
}

impl<S: MorphismClass> MorphismClass for RightInduced<'_, S> {
    fn contains(&self, f: &SetMap) -> Result<bool> {
        self.class.contains(&f.precompose(self.functor)?)
    }
}

pub fn right_induced_predicate<'a, S: MorphismClass>(class: &'a S, functor: &'a PointedFunctor) -> RightInduced<'a, S> {
    RightInduced { class, functor }
}

/// Every isomorphism among `maps` belongs to `class`.
pub fn check_contains_isomorphisms(class: &impl MorphismClass, maps: &[SetMap]) -> Result<DiagramReport> {
    let mut checked = 0;
    for (k, f) in maps.iter().enumerate() {
        if f.is_levelwise_bijection() {
            checked += 1;
            if !class.contains(f)? {
                return Ok(DiagramReport {
                    checked,
                    witness: Some(format!("isomorphism #{k} is not in the class")),
                });
            }
        }
    }
    Ok(DiagramReport { checked, witness: None })
}

/// For each composable `(f, g)`, two of `f`, `g`, `g ∘ f` in `class` force the third.
pub fn check_two_out_of_three(class: &impl MorphismClass, pairs: &[(SetMap, SetMap)]) -> Result<DiagramReport> {
    let mut checked = 0;
    for (k, (f, g)) in pairs.iter().enumerate() {
        checked += 1;
        let gf = g.after(f)?;
        let members = [class.contains(f)?, class.contains(g)?, class.contains(&gf)?];
        if members.iter().filter(|&&m| m).count() == 2 {
            let missing = ["f", "g", "g ∘ f"][members.iter().position(|&m| !m).unwrap()];
            return Ok(DiagramReport {
                checked,
                witness: Some(format!("pair #{k}: two of three are in the class but {missing} is not")),
            });
        }
    }
    Ok(DiagramReport { checked, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeFunctorReport {
    pub checked: usize,
    /// `f ∈ W ⇒ F f ∈ W'`.
    pub relative: bool,
    /// `f ∈ W ⇔ F f ∈ W'`.
    pub creates: bool,
    pub witness: Option<String>,
}

/// Whether `functor` sends `w` into `w2`, and whether it creates `w2`,
/// judged on the listed morphisms.
pub fn check_relative_functor<A, B>(
    items: &[A],
    functor: impl Fn(&A) -> Result<B>,
    w: impl Fn(&A) -> Result<bool>,
    w2: impl Fn(&B) -> Result<bool>,
) -> Result<RelativeFunctorReport> {
    let mut report = RelativeFunctorReport {
        checked: 0,
        relative: true,
        creates: true,
        witness: None,
    };
    for (k, a) in items.iter().enumerate() {
        report.checked += 1;
        let (inside, image_inside) = (w(a)?, w2(&functor(a)?)?);
        if inside && !image_inside {
            report.relative = false;
            report.creates = false;
            report
                .witness
                .get_or_insert(format!("morphism #{k} is in W but its image is not in W'"));
        } else if !inside && image_inside {
            report.creates = false;
            report
                .witness
                .get_or_insert(format!("morphism #{k} is not in W but its image is in W'"));
        }
    }
    Ok(report)
}

/// Comparison of the truncated coend against a wider truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub n_max: usize,
    pub margin: usize,
    /// `(t, |small|, |large|, bijective)` for every target tuple.
    pub targets: Vec<(String, usize, usize, bool)>,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.targets.iter().all(|t| t.3)
    }
}

/// The inclusion `F≤N -> F≤M` for `N ≤ M`.
pub fn fskel_inclusion(small: &Fskel, big: &Fskel) -> Result<PointedFunctor> {
    let objects = small
        .category()
        .objects()
        .map(|n| big.object(n))
        .collect::<Result<_>>()?;
    let morphisms = small
        .category()
        .morphism_ids()
        .map(|m| big.map_id(&small.map_of(m)))
        .collect::<Result<_>>()?;
    PointedFunctor::new(
        small.category().clone(),
        big.category().clone(),
        FunctorTable { objects, morphisms },
    )
}

/// Computes `LX` over `F≤N` and over `F≤N+margin` (with `X` given on the
/// larger truncation) and reports, for each tuple of the `(N, q_max)`
/// truncation of `G*`, whether the canonical comparison of classes is a
/// bijection. This observes agreement; it proves nothing about the
/// untruncated coend.
pub fn stability_diagnostic(
    x_big: &Arc<SetDiagram>,
    n_max: usize,
    margin: usize,
    q_max: usize,
) -> Result<StabilityReport> {
    let small = Fskel::new(n_max)?;
    let big = Fskel::new(n_max + margin)?;
    if !same_category(x_big.index(), big.category()) {
        return Err(Error::Mismatch("diagram must live on the wider truncation".into()));
    }
    let reference = Gstar::over(small.clone(), q_max)?;
    let mut objects: Vec<ObjectTuple> = reference.tuples().objects().to_vec();
    for n in 0..=n_max + margin {
        let t = ObjectTuple::new(vec![n]);
        if !objects.contains(&t) {
            objects.push(t);
        }
    }
    let g = Gstar::on_objects(big.clone(), q_max.max(1), objects)?;
    let i_big = g.tuples().length_one_inclusion()?;
    let inc = fskel_inclusion(&small, &big)?;
    let i_small = i_big.after(&inc)?;
    let x_small = Arc::new(x_big.precompose(&inc)?);
    let l_small = Lift::new(x_small, &i_small)?;
    let l_big = Lift::new(x_big.clone(), &i_big)?;
    let mut targets = Vec::new();
    for t in reference.tuples().objects() {
        let id = g.tuples().object_id(t)?;
        let (a, b) = (l_small.presentation(id), l_big.presentation(id));
        let mut hit = vec![false; b.size() + 1];
        let mut injective = true;
        for c in 1..=a.size() {
            let r = a.representative(c);
            let image = b.class(inc.on_object(r.n), r.theta, r.x);
            if image == 0 || hit[image] {
                injective = false;
            }
            hit[image] = true;
        }
        let surjective = hit[1..].iter().all(|&h| h);
        targets.push((t.to_string(), a.size(), b.size(), injective && surjective));
    }
    Ok(StabilityReport { n_max, margin, targets })
}

/// The identity functor is fully faithful; used as the default `via`.
pub fn identity_functor(c: &Arc<FinCategory>) -> PointedFunctor {
    PointedFunctor::identity(c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_roots_are_minimal() {
        let mut uf = UnionFind::new(6);
        uf.union(4, 5);
        uf.union(5, 2);
        uf.union(3, 1);
        assert_eq!(uf.find(5), 2);
        assert_eq!(uf.find(4), 2);
        assert_eq!(uf.find(3), 1);
        uf.union(4, 3);
        assert_eq!(uf.find(2), 1);
        assert_eq!(uf.find(0), 0);
    }

    #[test]
    fn terminal_lifts_to_terminal() {
        let g = Gstar::new(&Default::default()).unwrap();
        let i = g.tuples().length_one_inclusion().unwrap();
        let x = Arc::new(SetDiagram::terminal(i.dom().clone()));
        let l = Lift::new(x, &i).unwrap();
        assert!(l.diagram().values().iter().all(|v| v.is_point()));
    }
}
