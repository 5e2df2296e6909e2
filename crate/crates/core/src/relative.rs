//! Relative categories and the set-level parts of their homotopy theory:
//! relative simplex categories, truncated classification diagrams, Segal
//! maps, and prism homotopies induced by natural transformations.
//!
//! Everything here is strict. A Segal map is reported as a bijection or
//! not; nothing is claimed about weak equivalences.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{FinCategory, FunctorTable, MorId, NatTransformation, ObjId, PointedFunctor};
use crate::error::{Error, Result};
use crate::simplicial::{nerve_simplices, IdentityReport, Simplex, SimplicialMap, SimplicialSet};

/// A finite category with a wide subcategory of weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCategory {
    cat: Arc<FinCategory>,
    weq: Vec<bool>,
}

impl RelativeCategory {
    /// Requires `weq` to contain every identity and be closed under composition.
    pub fn new(cat: Arc<FinCategory>, weq: Vec<bool>) -> Result<Self> {
        if weq.len() != cat.num_morphisms() {
            return Err(Error::LengthMismatch {
                expected: cat.num_morphisms(),
                actual: weq.len(),
            });
        }
        cat.ensure_valid()?;
        for a in cat.objects() {
            if !weq[cat.identity(a)] {
                return Err(Error::InvalidCategory(format!(
                    "identity of {} is not a weak equivalence",
                    cat.object_name(a)
                )));
            }
        }
        for f in cat.morphism_ids().filter(|&f| weq[f]) {
            for &g in cat.outgoing(cat.cod(f)) {
                if weq[g] && !weq[cat.compose(g, f)] {
                    return Err(Error::InvalidCategory(format!(
                        "weak equivalences are not closed under {} ∘ {}",
                        cat.morphism_name(g),
                        cat.morphism_name(f)
                    )));
                }
            }
        }
        Ok(Self { cat, weq })
    }

    pub fn all(cat: Arc<FinCategory>) -> Result<Self> {
        let weq = vec![true; cat.num_morphisms()];
        Self::new(cat, weq)
    }

    pub fn identities(cat: Arc<FinCategory>) -> Result<Self> {
        let weq = cat.morphism_ids().map(|f| cat.is_identity(f)).collect();
        Self::new(cat, weq)
    }

    pub fn isomorphisms(cat: Arc<FinCategory>) -> Result<Self> {
        let weq = cat.morphism_ids().map(|f| is_iso(&cat, f)).collect();
        Self::new(cat, weq)
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn is_weq(&self, f: MorId) -> bool {
        self.weq[f]
    }

    pub fn weq(&self) -> &[bool] {
        &self.weq
    }

    /// A non-weak-equivalence isomorphism, if any.
    pub fn check_contains_isos(&self) -> Option<String> {
        self.cat
            .morphism_ids()
            .find(|&f| is_iso(&self.cat, f) && !self.weq[f])
            .map(|f| format!("isomorphism {} is not a weak equivalence", self.cat.morphism_name(f)))
    }

    /// A composable pair violating 2-out-of-3, if any.
    pub fn check_two_out_of_three(&self) -> Option<String> {
        let c = &self.cat;
        for f in c.morphism_ids() {
            for &g in c.outgoing(c.cod(f)) {
                let gf = c.compose(g, f);
                let count = [self.weq[f], self.weq[g], self.weq[gf]].iter().filter(|&&w| w).count();
                if count == 2 {
                    return Some(format!(
                        "two of {}, {} and their composite are weak equivalences, the third is not",
                        c.morphism_name(f),
                        c.morphism_name(g)
                    ));
                }
            }
        }
        None
    }

    /// The subcategory of weak equivalences, with its inclusion on morphisms.
    pub fn weq_subcategory(&self) -> Result<(FinCategory, Vec<MorId>)> {
        let c = &self.cat;
        let mut b = FinCategory::builder();
        for a in c.objects() {
            b.object(c.object_name(a));
        }
        let kept: Vec<MorId> = c.morphism_ids().filter(|&f| self.weq[f]).collect();
        let mut new_id = HashMap::new();
        for &f in &kept {
            new_id.insert(f, b.morphism(c.morphism_name(f), c.dom(f), c.cod(f)));
        }
        for a in c.objects() {
            b.set_identity(a, new_id[&c.identity(a)]);
        }
        let sub = b.build_with(|g, f| new_id.get(&c.compose(kept[g], kept[f])).copied())?;
        Ok((sub, kept))
    }
}

fn is_iso(c: &FinCategory, f: MorId) -> bool {
    let (a, b) = (c.dom(f), c.cod(f));
    c.hom(b, a)
        .iter()
        .any(|&g| c.compose(g, f) == c.identity(a) && c.compose(f, g) == c.identity(b))
}

/// `(C, W)^{Δ[n]}`: `n`-strings of `C` and ladders between them whose
/// rungs are weak equivalences.
#[derive(Clone, Debug)]
pub struct RelativeSimplexCategory {
    pub n: usize,
    /// The underlying category `C`.
    pub base: Arc<FinCategory>,
    pub cat: Arc<FinCategory>,
    pub strings: Vec<Simplex>,
    /// Rungs of each morphism, one per vertex.
    pub ladders: Vec<Vec<MorId>>,
    ladder_index: HashMap<(ObjId, ObjId, Vec<MorId>), MorId>,
}

pub fn relative_simplex_category(r: &RelativeCategory, n: usize) -> Result<RelativeSimplexCategory> {
    let c = &r.cat;
    let strings = nerve_simplices(c, n);
    let mut b = FinCategory::builder();
    for s in &strings {
        b.object(simplex_name(c, s));
    }
    let mut ladders = Vec::new();
    let mut ladder_index = HashMap::new();
    for (u, s) in strings.iter().enumerate() {
        for (v, t) in strings.iter().enumerate() {
            let mut found = Vec::new();
            extend_ladder(r, s, t, &mut Vec::new(), &mut found);
            for rungs in found {
                let names: Vec<&str> = rungs.iter().map(|&m| c.morphism_name(m)).collect();
                let id = b.morphism(format!("[{}]", names.join(",")), u, v);
                ladder_index.insert((u, v, rungs.clone()), id);
                ladders.push(rungs);
            }
        }
    }
    for (u, s) in strings.iter().enumerate() {
        let rungs: Vec<MorId> = (0..=n).map(|j| c.identity(s.vertex_at(c, j))).collect();
        b.set_identity(u, ladder_index[&(u, u, rungs)]);
    }
    let ends: Vec<(ObjId, ObjId)> = {
        let mut e = vec![(0, 0); ladders.len()];
        for ((u, v, _), &id) in &ladder_index {
            e[id] = (*u, *v);
        }
        e
    };
    let cat = b.build_with(|g, f| {
        let rungs: Vec<MorId> = ladders[g]
            .iter()
            .zip(&ladders[f])
            .map(|(&x, &y)| c.compose(x, y))
            .collect();
        ladder_index.get(&(ends[f].0, ends[g].1, rungs)).copied()
    })?;
    Ok(RelativeSimplexCategory {
        n,
        base: c.clone(),
        cat: Arc::new(cat),
        strings,
        ladders,
        ladder_index,
    })
}

fn simplex_name(c: &FinCategory, s: &Simplex) -> String {
    if s.mors.is_empty() {
        return c.object_name(s.start).to_string();
    }
    let names: Vec<&str> = s.mors.iter().map(|&m| c.morphism_name(m)).collect();
    format!("({})", names.join(","))
}

fn extend_ladder(r: &RelativeCategory, s: &Simplex, t: &Simplex, rungs: &mut Vec<MorId>, out: &mut Vec<Vec<MorId>>) {
    let c = &r.cat;
    let j = rungs.len();
    if j == s.dim() + 1 {
        out.push(rungs.clone());
        return;
    }
    for &m in c.hom(s.vertex_at(c, j), t.vertex_at(c, j)) {
        if !r.weq[m] {
            continue;
        }
        if j > 0 && c.compose(m, s.mors[j - 1]) != c.compose(t.mors[j - 1], rungs[j - 1]) {
            continue;
        }
        rungs.push(m);
        extend_ladder(r, s, t, rungs, out);
        rungs.pop();
    }
}

impl RelativeSimplexCategory {
    /// The functor induced by a monotone `α : [m] -> [n]`, where `other` is
    /// the simplex category in degree `m`.
    pub fn reindex(&self, other: &RelativeSimplexCategory, alpha: &[usize]) -> FunctorTable {
        let c = &*self.cat;
        let base = &*self.base;
        let string_index: HashMap<&Simplex, ObjId> = other.strings.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let restrict = |s: &Simplex| -> Simplex {
            let vertex = |j: usize| s.vertex_at(base, j);
            let path = |from: usize, to: usize| -> MorId {
                (from..to).fold(base.identity(vertex(from)), |acc, j| base.compose(s.mors[j], acc))
            };
            Simplex {
                start: vertex(alpha[0]),
                mors: alpha.windows(2).map(|w| path(w[0], w[1])).collect(),
            }
        };
        let objects = self.strings.iter().map(|s| string_index[&restrict(s)]).collect();
        let morphisms = c
            .morphism_ids()
            .map(|f| {
                let rungs: Vec<MorId> = alpha.iter().map(|&j| self.ladders[f][j]).collect();
                let u = string_index[&restrict(&self.strings[c.dom(f)])];
                let v = string_index[&restrict(&self.strings[c.cod(f)])];
                other.ladder_index[&(u, v, rungs)]
            })
            .collect();
        FunctorTable { objects, morphisms }
    }
}

/// A bisimplicial set truncated at `(n_max, k_max)`.
///
/// `vertical[n]` is the simplicial set in the `k` direction at horizontal
/// degree `n`. `horizontal[k]` is the simplicial set in the `n` direction at
/// vertical degree `k`.
#[derive(Clone, Debug, Serialize)]
pub struct BisimplicialSet {
    pub sizes: Vec<Vec<usize>>,
    pub vertical: Vec<SimplicialSet>,
    pub horizontal: Vec<SimplicialSet>,
}

impl BisimplicialSet {
    /// Simplicial identities in both directions, and commutation of every
    /// horizontal structure map with every vertical one.
    pub fn check_identities(&self) -> IdentityReport {
        let mut report = IdentityReport {
            checked: 0,
            witness: None,
        };
        for s in self.vertical.iter().chain(&self.horizontal) {
            report.merge(s.check_identities());
        }
        let n_max = self.vertical.len() - 1;
        let k_max = self.horizontal.len() - 1;
        type Table<'a> = (&'a str, usize, usize, &'a Vec<usize>);
        let h_maps = |n: usize, k: usize| -> Vec<Table<'_>> {
            let h = &self.horizontal[k];
            let mut maps = Vec::new();
            if n >= 1 {
                maps.extend(h.faces[n].iter().enumerate().map(|(i, t)| ("d", i, n - 1, t)));
            }
            if n < n_max {
                maps.extend(h.degeneracies[n].iter().enumerate().map(|(i, t)| ("s", i, n + 1, t)));
            }
            maps
        };
        let v_maps = |n: usize, k: usize| -> Vec<Table<'_>> {
            let v = &self.vertical[n];
            let mut maps = Vec::new();
            if k >= 1 {
                maps.extend(v.faces[k].iter().enumerate().map(|(i, t)| ("d", i, k - 1, t)));
            }
            if k < k_max {
                maps.extend(v.degeneracies[k].iter().enumerate().map(|(i, t)| ("s", i, k + 1, t)));
            }
            maps
        };
        for n in 0..=n_max {
            for k in 0..=k_max {
                for (hn, hi, n2, h) in h_maps(n, k) {
                    for (vn, vi, k2, v) in v_maps(n, k) {
                        let v_after = &v_maps(n2, k).into_iter().find(|m| m.0 == vn && m.1 == vi).unwrap().3;
                        let h_after = &h_maps(n, k2).into_iter().find(|m| m.0 == hn && m.1 == hi).unwrap().3;
                        for x in 0..self.sizes[n][k] {
                            report.checked += 1;
                            if v_after[h[x]] != h_after[v[x]] && report.witness.is_none() {
                                report.witness = Some(format!(
                                    "horizontal {hn}{hi} and vertical {vn}{vi} do not commute at ({n},{k}) element {x}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

/// The truncated classification diagram `N_cl(C, W)` with its simplex categories.
#[derive(Clone, Debug)]
pub struct Classification {
    pub categories: Vec<RelativeSimplexCategory>,
    pub simplices: Vec<Vec<Vec<Simplex>>>,
    pub diagram: BisimplicialSet,
}

fn cofaces(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|j| if j < i { j } else { j + 1 }).collect()
}

fn codegeneracies(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

fn map_simplex(table: &FunctorTable, s: &Simplex) -> Simplex {
    Simplex {
        start: table.objects[s.start],
        mors: s.mors.iter().map(|&m| table.morphisms[m]).collect(),
    }
}

pub fn classification(r: &RelativeCategory, n_max: usize, k_max: usize) -> Result<Classification> {
    let categories: Vec<RelativeSimplexCategory> = (0..=n_max)
        .map(|n| relative_simplex_category(r, n))
        .collect::<Result<_>>()?;
    let mut vertical = Vec::new();
    let mut simplices = Vec::new();
    for sc in &categories {
        let (v, levels) = SimplicialSet::nerve(&sc.cat, k_max);
        vertical.push(v);
        simplices.push(levels);
    }
    let index: Vec<Vec<HashMap<&Simplex, usize>>> = simplices
        .iter()
        .map(|per_n| {
            per_n
                .iter()
                .map(|l| l.iter().enumerate().map(|(e, s)| (s, e)).collect())
                .collect()
        })
        .collect();
    let face_tables: Vec<Vec<FunctorTable>> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| categories[n].reindex(&categories[n - 1], &cofaces(n, i)))
                .collect()
        })
        .collect();
    let degeneracy_tables: Vec<Vec<FunctorTable>> = (0..=n_max)
        .map(|n| {
            if n == n_max {
                return Vec::new();
            }
            (0..=n)
                .map(|i| categories[n].reindex(&categories[n + 1], &codegeneracies(n, i)))
                .collect()
        })
        .collect();
    let horizontal = (0..=k_max)
        .map(|k| {
            let along = |n: usize, to: usize, table: &FunctorTable| -> Vec<usize> {
                simplices[n][k]
                    .iter()
                    .map(|s| index[to][k][&map_simplex(table, s)])
                    .collect()
            };
            SimplicialSet {
                sizes: (0..=n_max).map(|n| simplices[n][k].len()).collect(),
                faces: (0..=n_max)
                    .map(|n| face_tables[n].iter().map(|t| along(n, n - 1, t)).collect())
                    .collect(),
                degeneracies: (0..=n_max)
                    .map(|n| degeneracy_tables[n].iter().map(|t| along(n, n + 1, t)).collect())
                    .collect(),
            }
        })
        .collect();
    let sizes = (0..=n_max)
        .map(|n| (0..=k_max).map(|k| simplices[n][k].len()).collect())
        .collect();
    Ok(Classification {
        categories,
        simplices,
        diagram: BisimplicialSet {
            sizes,
            vertical,
            horizontal,
        },
    })
}

/// Level `(n, k)` of the classification diagram: its simplices, and the
/// structure maps to the adjacent computed levels.
pub fn classification_level(r: &RelativeCategory, n: usize, k: usize) -> Result<Vec<Simplex>> {
    let sc = relative_simplex_category(r, n)?;
    Ok(nerve_simplices(&sc.cat, k))
}

/// Data of a set-level Segal map `Y_n -> Y_1 ×_{Y_0} ... ×_{Y_0} Y_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalData {
    pub n: usize,
    pub domain: usize,
    pub edges: usize,
    pub vertices: usize,
    /// `spine[j][y]` is the `j`th spine edge of `y ∈ Y_n`.
    pub spine: Vec<Vec<usize>>,
    /// `d_1 : Y_1 -> Y_0`.
    pub source: Vec<usize>,
    /// `d_0 : Y_1 -> Y_0`.
    pub target: Vec<usize>,
}

impl SegalData {
    /// Reads the Segal data off a simplicial set; spine edges are obtained
    /// by top faces followed by bottom faces.
    pub fn from_simplicial(s: &SimplicialSet, n: usize) -> Result<Self> {
        if n < 1 || n > s.degree() {
            return Err(Error::Truncation(format!(
                "Segal map at n = {n} needs degrees 1..={}",
                s.degree()
            )));
        }
        let spine = (0..n)
            .map(|j| {
                (0..s.sizes[n])
                    .map(|mut y| {
                        let mut k = n;
                        while k > j + 1 {
                            y = s.faces[k][k][y];
                            k -= 1;
                        }
                        for _ in 0..j {
                            y = s.faces[k][0][y];
                            k -= 1;
                        }
                        y
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            domain: s.sizes[n],
            edges: s.sizes[1],
            vertices: s.sizes[0],
            spine,
            source: s.faces[1][1].clone(),
            target: s.faces[1][0].clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    pub n: usize,
    pub domain: usize,
    pub pullback: usize,
    pub injective: bool,
    pub surjective: bool,
    pub witness: Option<String>,
}

impl SegalReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Enumerates the iterated pullback and compares it with the image of the Segal map.
pub fn segal_map_check(data: &SegalData) -> SegalReport {
    let mut image: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut witness = None;
    let mut injective = true;
    for y in 0..data.domain {
        let key: Vec<usize> = data.spine.iter().map(|s| s[y]).collect();
        if let Some(&prev) = image.get(&key) {
            injective = false;
            witness.get_or_insert(format!("elements {prev} and {y} have the same spine {key:?}"));
        } else {
            image.insert(key, y);
        }
    }
    // chains e_0, ..., e_{n-1} with target(e_j) = source(e_{j+1})
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); data.vertices];
    for e in 0..data.edges {
        by_source[data.source[e]].push(e);
    }
    let mut chains: Vec<Vec<usize>> = (0..data.edges).map(|e| vec![e]).collect();
    for _ in 1..data.n {
        chains = chains
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                by_source[data.target[last]].iter().map(move |&e| {
                    let mut c = c.clone();
                    c.push(e);
                    c
                })
            })
            .collect();
    }
    let missing = chains.iter().find(|c| !image.contains_key(*c));
    let surjective = missing.is_none();
    if let Some(c) = missing {
        witness.get_or_insert(format!("spine {c:?} has no filler"));
    }
    SegalReport {
        n: data.n,
        domain: data.domain,
        pullback: chains.len(),
        injective,
        surjective,
        witness,
    }
}

/// The boundary `∂Δ[2]` through degree `d`: nondecreasing vertex strings
/// in `{0,1,2}` that miss at least one vertex. Its Segal map at `n = 2` is
/// not surjective.
pub fn boundary_of_two_simplex(d: usize) -> SimplicialSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=d)
        .map(|k| {
            let mut out: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..=k {
                out = out
                    .into_iter()
                    .flat_map(|s| {
                        let lo = s.last().copied().unwrap_or(0);
                        (lo..3).map(move |v| {
                            let mut s = s.clone();
                            s.push(v);
                            s
                        })
                    })
                    .collect();
            }
            out.retain(|s| !(s.contains(&0) && s.contains(&1) && s.contains(&2)));
            out
        })
        .collect();
    SimplicialSet::from_levels(
        &levels,
        |s, i| {
            let mut s = s.clone();
            s.remove(i);
            s
        },
        |s, i| {
            let mut s = s.clone();
            s.insert(i, s[i]);
            s
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismReport {
    pub degree: usize,
    pub checked: usize,
    /// Whether some prism simplex differs from its end-0 value.
    pub nonconstant: bool,
    pub witness: Option<String>,
}

impl PrismReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// The simplicial homotopy `N(C) × Δ[1] -> N(D)` of a transformation
/// `p : F ⇒ G`, checked through degree `d`.
///
/// A `k`-simplex of `Δ[1]` is recorded by its number `j` of leading zeros.
/// The prism on `(σ, j)` applies `F` to the vertices before `j` and `G` to
/// the rest, crossing over with `p` on edge `j`. The end `j = k + 1` must be
/// `N(F)` and `j = 0` must be `N(G)`.
pub fn homotopy_from_transformation(p: &NatTransformation, d: usize) -> Result<PrismReport> {
    let f = p.source();
    let g = p.target();
    let c = f.dom().clone();
    let e = f.cod().clone();
    let (_, src_levels) = SimplicialSet::nerve(&c, d);
    let prism_levels: Vec<Vec<(Simplex, usize)>> = src_levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.iter()
                .flat_map(|s| (0..=k + 1).map(move |j| (s.clone(), j)))
                .collect()
        })
        .collect();
    let prism = SimplicialSet::from_levels(
        &prism_levels,
        |(s, j), i| (s.face(&c, i), if i < *j { j - 1 } else { *j }),
        |(s, j), i| (s.degeneracy(&c, i), if i < *j { j + 1 } else { *j }),
    );
    let (target, tgt_levels) = SimplicialSet::nerve(&e, d);
    let tgt_index: Vec<HashMap<&Simplex, usize>> = tgt_levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let h = |s: &Simplex, j: usize| -> Result<Simplex> {
        let start = if j > 0 {
            f.on_object(s.start)
        } else {
            g.on_object(s.start)
        };
        let mors = s
            .mors
            .iter()
            .enumerate()
            .map(|(idx, &m)| {
                let edge = idx + 1;
                Ok(if edge < j {
                    f.on_morphism(m)
                } else if edge == j {
                    e.checked_compose(p.component(c.cod(m))?, f.on_morphism(m))?
                } else {
                    g.on_morphism(m)
                })
            })
            .collect::<Result<_>>()?;
        Ok(Simplex { start, mors })
    };
    let mut components = Vec::with_capacity(d + 1);
    let mut nonconstant = false;
    let mut report = prism.check_identities();
    report.merge(target.check_identities());
    for (k, level) in prism_levels.iter().enumerate() {
        let mut comp = Vec::with_capacity(level.len());
        for (s, j) in level {
            let img = h(s, *j)?;
            let Some(&idx) = tgt_index[k].get(&img) else {
                return Ok(PrismReport {
                    degree: d,
                    checked: report.checked,
                    nonconstant,
                    witness: Some(format!("prism image of {s:?} is not a simplex of the target")),
                });
            };
            report.checked += 1;
            if *j == k + 1 && img != s.map(f) && report.witness.is_none() {
                report.witness = Some(format!("end 0 differs from N(F) at {s:?}"));
            }
            if *j == 0 && img != s.map(g) && report.witness.is_none() {
                report.witness = Some(format!("end 1 differs from N(G) at {s:?}"));
            }
            if img != s.map(f) {
                nonconstant = true;
            }
            comp.push(idx);
        }
        components.push(comp);
    }
    report.merge(SimplicialMap { components }.check(&prism, &target));
    Ok(PrismReport {
        degree: d,
        checked: report.checked,
        nonconstant,
        witness: report.witness,
    })
}

/// Whether `functor` sends weak equivalences to weak equivalences, and
/// whether it creates them.
pub fn check_relative_category_functor(
    functor: &PointedFunctor,
    source: &RelativeCategory,
    target: &RelativeCategory,
) -> Result<crate::coend::RelativeFunctorReport> {
    let items: Vec<MorId> = source.cat.morphism_ids().collect();
    crate::coend::check_relative_functor(
        &items,
        |&m| Ok(functor.on_morphism(m)),
        |&m| Ok(source.is_weq(m)),
        |&m| Ok(target.is_weq(m)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{terminal_category, walking_arrow, walking_iso};

    fn iso_all() -> RelativeCategory {
        RelativeCategory::all(Arc::new(walking_iso())).unwrap()
    }

    #[test]
    fn simplex_category_of_the_walking_iso() {
        let sc = relative_simplex_category(&iso_all(), 1).unwrap();
        assert_eq!(sc.cat.num_objects(), 4);
        assert_eq!(sc.cat.num_morphisms(), 16);
        assert!(sc.cat.validate().passed());
    }

    #[test]
    fn identities_only_gives_a_discrete_category() {
        let r = RelativeCategory::identities(Arc::new(walking_arrow())).unwrap();
        let sc = relative_simplex_category(&r, 1).unwrap();
        assert_eq!(sc.cat.num_objects(), 3);
        assert_eq!(sc.cat.num_morphisms(), 3);
    }

    #[test]
    fn weq_must_be_a_subcategory() {
        let c = Arc::new(walking_arrow());
        assert!(RelativeCategory::new(c.clone(), vec![false, true, true]).is_err());
        assert!(RelativeCategory::new(c, vec![true, true, false]).is_ok());
    }

    #[test]
    fn classification_sizes_and_identities() {
        let cl = classification(&iso_all(), 2, 2).unwrap();
        for n in 0..=2 {
            for k in 0..=2 {
                assert_eq!(cl.diagram.sizes[n][k], 1 << ((n + 1) * (k + 1)));
            }
        }
        assert!(cl.diagram.check_identities().passed());
        let t = RelativeCategory::all(Arc::new(terminal_category())).unwrap();
        let cl = classification(&t, 2, 2).unwrap();
        assert!(cl.diagram.sizes.iter().flatten().all(|&s| s == 1));
    }

    #[test]
    fn segal_maps() {
        let cl = classification(&iso_all(), 2, 1).unwrap();
        for k in 0..=1 {
            let r = segal_map_check(&SegalData::from_simplicial(&cl.diagram.horizontal[k], 2).unwrap());
            assert!(r.bijective(), "{r:?}");
            assert_eq!(r.pullback, 1 << (3 * (k + 1)));
        }
        let bad = segal_map_check(&SegalData::from_simplicial(&boundary_of_two_simplex(2), 2).unwrap());
        assert!(bad.injective);
        assert!(!bad.surjective);
        assert!(bad.witness.is_some());
    }

    #[test]
    fn prism_between_constant_functors() {
        let arrow = Arc::new(walking_arrow());
        let c = Arc::new(walking_arrow());
        let constant = |o: ObjId| {
            PointedFunctor::new(
                c.clone(),
                arrow.clone(),
                FunctorTable {
                    objects: vec![o; 2],
                    morphisms: vec![arrow.identity(o); 3],
                },
            )
            .unwrap()
        };
        let p = NatTransformation::new(constant(0), constant(1), vec![Some(2), Some(2)]).unwrap();
        let r = homotopy_from_transformation(&p, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.nonconstant);
        let id = NatTransformation::identity(PointedFunctor::identity(c));
        let r = homotopy_from_transformation(&id, 3).unwrap();
        assert!(r.passed());
        assert!(!r.nonconstant);
    }
}
