//! The check suite: every exhaustive law check over one truncated universe,
//! collected into a deterministic report.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::category::{FinCategory, FunctorTable, MorId, NatTransformation, PointedFunctor};
use crate::coend::{
    adjunction_bijection, check_contains_isomorphisms, check_left_triangle, check_lift_functoriality,
    check_relative_functor, check_right_triangle, check_two_out_of_three, check_unit_iso, right_induced_predicate,
    stability_diagnostic, yoneda_density_oracle, LevelwiseBijections, Lift, MorphismClass,
};
use crate::diagram::{enum_diagram_maps, nerve_levelwise, DiagramReport, SetDiagram, SetMap, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::fixtures::{
    fskel_fixtures, indiscrete_gamma_category, monoid_gamma_set, representable, terminal_category, walking_arrow,
    walking_iso, RandomDiagrams,
};
use crate::relative::{
    boundary_of_two_simplex, classification, homotopy_from_transformation, segal_map_check, RelativeCategory, SegalData,
};
use crate::skeletal::{enum_fskel_hom, smash_objects, Fskel, ObjectTuple, TruncationParams, MAX_FSKEL_TABLE};
use crate::tuple::{gstar_nonzero_count, simplex_tuple_category, Gstar};

/// Deliberate defects used to confirm that the suite notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// One entry of the `G*` composition table is replaced by a zero map.
    BrokenComposition,
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "broken-composition" => Ok(Fault::BrokenComposition),
            _ => Err(Error::Config(format!("unknown fault {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub q_max: usize,
    pub degree: usize,
    pub seed: u64,
    /// Random diagrams drawn per index category.
    pub randoms: usize,
    /// Largest level of a random diagram.
    pub random_cap: usize,
    pub budget: usize,
    /// Extra `F` levels for the stability diagnostic; 0 disables it.
    pub stability_margin: usize,
    /// Check names or name prefixes to run; empty runs everything.
    pub select: Vec<String>,
    pub fault: Option<Fault>,
    /// Extra categories whose axioms are checked, e.g. read from files.
    #[serde(serialize_with = "names_only")]
    pub categories: Vec<(String, Arc<FinCategory>)>,
    #[serde(skip)]
    pub timing: bool,
}

fn names_only<S: serde::Serializer>(cats: &[(String, Arc<FinCategory>)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(cats.iter().map(|(name, _)| name))
}

impl PartialEq for SuiteConfig {
    fn eq(&self, other: &Self) -> bool {
        serde_json::to_value(self).ok() == serde_json::to_value(other).ok()
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_max: 2,
            q_max: 2,
            degree: 3,
            seed: 0,
            randoms: 100,
            random_cap: 6,
            budget: DEFAULT_BUDGET,
            stability_margin: 0,
            select: Vec::new(),
            fault: None,
            categories: Vec::new(),
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_max == 0 || self.n_max > 3 {
            return bad(format!("N = {} must lie in 1..=3", self.n_max));
        }
        if self.q_max == 0 || self.q_max > 2 {
            return bad(format!("q_max = {} must lie in 1..=2", self.q_max));
        }
        if self.n_max.pow(self.q_max as u32) > MAX_FSKEL_TABLE {
            return bad(format!(
                "the collapse of the (N = {}, q_max = {}) truncation leaves F<={MAX_FSKEL_TABLE}",
                self.n_max, self.q_max
            ));
        }
        if self.degree == 0 || self.degree > 3 {
            return bad(format!("degree d = {} must lie in 1..=3", self.degree));
        }
        if self.stability_margin > 0 && self.n_max + self.stability_margin > MAX_FSKEL_TABLE {
            return bad(format!("N + stability margin exceeds {MAX_FSKEL_TABLE}"));
        }
        if self.budget == 0 {
            return bad("budget must be positive".into());
        }
        for s in &self.select {
            if !CHECKS.iter().any(|c| selects(s, c)) {
                return bad(format!("selection {s:?} matches no check"));
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> TruncationParams {
        TruncationParams {
            n_max: self.n_max,
            q_max: self.q_max,
            degree: self.degree,
        }
    }

    fn runs(&self, name: &str) -> bool {
        self.select.is_empty() || self.select.iter().any(|s| selects(s, name))
    }
}

fn selects(selection: &str, name: &str) -> bool {
    name == selection || name.strip_prefix(selection).is_some_and(|rest| rest.starts_with('.'))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub checked: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub status: Status,
    pub config: SuiteConfig,
    /// Seeds of the random diagram streams, for replay.
    pub seeds: BTreeMap<String, u64>,
    pub checks: Vec<CheckResult>,
    pub diagnostics: Vec<serde_json::Value>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Pretty JSON with lexicographically sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            name: &'a str,
            status: Status,
            checked: usize,
            witness: &'a str,
        }
        let rows: Vec<Row> = self
            .checks
            .iter()
            .map(|c| Row {
                name: &c.name,
                status: c.status,
                checked: c.checked,
                witness: c.witness.as_deref().unwrap_or(""),
            })
            .collect();
        crate::emit::to_csv(&rows).expect("report rows serialize")
    }
}

/// Every check name, in report order.
pub const CHECKS: &[&str] = &[
    "adjunction.bijection",
    "adjunction.density",
    "adjunction.lift-functoriality",
    "adjunction.triangles",
    "adjunction.unit-iso",
    "category.fskel-axioms",
    "category.gstar-axioms",
    "category.input-axioms",
    "category.simplex-tuple-axioms",
    "diagram.collapse-inclusion",
    "functor.collapse-composites",
    "functor.inclusion-fully-faithful",
    "functor.smash-inclusion",
    "hom.emptiness",
    "hom.fskel-count",
    "hom.gstar-count",
    "monoidal.collapse",
    "nerve.levelwise",
    "relative.classification",
    "relative.prism",
    "relative.segal",
    "relative.segal-counterexample",
    "right-induced.creation",
    "right-induced.isomorphisms",
    "right-induced.two-out-of-three",
];

struct Outcome {
    checked: usize,
    detail: String,
    witness: Option<String>,
}

impl Outcome {
    fn new(checked: usize, detail: impl Into<String>, witness: Option<String>) -> Self {
        Self {
            checked,
            detail: detail.into(),
            witness,
        }
    }
}

type Named = Vec<(String, Arc<SetDiagram>)>;

/// Shared inputs, built on first use so that narrow selections stay cheap.
struct Universe<'a> {
    config: &'a SuiteConfig,
    fskel: Fskel,
    gstar: OnceLock<Result<Gstar>>,
    inclusion: OnceLock<Result<PointedFunctor>>,
    fskel_fixtures: OnceLock<Result<Named>>,
    fskel_randoms: OnceLock<Result<Named>>,
    gstar_fixtures: OnceLock<Result<Named>>,
    gstar_randoms: OnceLock<Result<Named>>,
    family: OnceLock<Result<Named>>,
    fixture_maps: OnceLock<Result<Vec<Vec<Vec<SetMap>>>>>,
}

fn shared<T>(cell: &OnceLock<Result<T>>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(init)
        .as_ref()
        .map_err(|e| Error::Malformed(format!("shared input failed: {e}")))
}

pub fn fskel_seed(seed: u64) -> u64 {
    seed
}

pub fn gstar_seed(seed: u64) -> u64 {
    seed ^ 0x9e37_79b9_7f4a_7c15
}

impl<'a> Universe<'a> {
    fn new(config: &'a SuiteConfig) -> Result<Self> {
        Ok(Self {
            config,
            fskel: Fskel::new(config.n_max)?,
            gstar: OnceLock::new(),
            inclusion: OnceLock::new(),
            fskel_fixtures: OnceLock::new(),
            fskel_randoms: OnceLock::new(),
            gstar_fixtures: OnceLock::new(),
            gstar_randoms: OnceLock::new(),
            family: OnceLock::new(),
            fixture_maps: OnceLock::new(),
        })
    }

    fn gstar(&self) -> Result<&Gstar> {
        shared(&self.gstar, || Gstar::over(self.fskel.clone(), self.config.q_max))
    }

    fn i(&self) -> Result<&PointedFunctor> {
        shared(&self.inclusion, || self.gstar()?.tuples().length_one_inclusion())
    }

    fn fskel_fixtures(&self) -> Result<&Named> {
        shared(&self.fskel_fixtures, || fskel_fixtures(&self.fskel))
    }

    fn fskel_randoms(&self) -> Result<&Named> {
        shared(&self.fskel_randoms, || {
            let mut gen = RandomDiagrams::over_fskel(&self.fskel, fskel_seed(self.config.seed), self.config.random_cap);
            (0..self.config.randoms)
                .map(|k| Ok((format!("random F #{k}"), Arc::new(gen.next_diagram()?))))
                .collect()
        })
    }

    /// Representables on every nonzero tuple, the terminal diagram, and the
    /// lifts of the `F` fixtures.
    fn gstar_fixtures(&self) -> Result<&Named> {
        shared(&self.gstar_fixtures, || {
            let g = self.gstar()?;
            let c = g.category();
            let mut out = vec![("terminal".to_string(), Arc::new(SetDiagram::terminal(c.clone())))];
            for (a, t) in g.tuples().objects().iter().enumerate().skip(1) {
                out.push((format!("rep{t}"), Arc::new(representable(c, a)?)));
            }
            for (name, x) in self.fskel_fixtures()? {
                out.push((format!("L({name})"), Lift::new(x.clone(), self.i()?)?.diagram().clone()));
            }
            Ok(out)
        })
    }

    fn gstar_randoms(&self) -> Result<&Named> {
        shared(&self.gstar_randoms, || {
            let c = self.gstar()?.category().clone();
            let mut gen = RandomDiagrams::new(c, gstar_seed(self.config.seed), self.config.random_cap);
            (0..self.config.randoms)
                .map(|k| Ok((format!("random G* #{k}"), Arc::new(gen.next_diagram()?))))
                .collect()
        })
    }

    /// A small family of `G*` diagrams and all maps between them,
    /// `maps[a][b]` from family member `a` to member `b`.
    fn fixture_maps(&self) -> Result<(&Named, &Vec<Vec<Vec<SetMap>>>)> {
        let family = self.map_family()?;
        let maps = shared(&self.fixture_maps, || {
            family
                .iter()
                .map(|(_, a)| {
                    family
                        .iter()
                        .map(|(_, b)| enum_diagram_maps(a, b, self.config.budget))
                        .collect()
                })
                .collect()
        })?;
        Ok((family, maps))
    }

    fn map_family(&self) -> Result<&Named> {
        const NAMES: [&str; 7] = [
            "terminal",
            "rep(1)",
            "rep(2)",
            "rep(1,1)",
            "rep(2,1)",
            "L(Z/2)",
            "L(rep<1> v rep<1>)",
        ];
        shared(&self.family, || {
            Ok(self
                .gstar_fixtures()?
                .iter()
                .filter(|(n, _)| NAMES.contains(&n.as_str()))
                .cloned()
                .collect())
        })
    }
}

/// Runs the selected checks; failures are reported, never raised. Only a
/// malformed configuration is an error.
pub fn run_suite(config: &SuiteConfig) -> Result<CheckReport> {
    config.validate()?;
    let u = Universe::new(config)?;
    let mut checks = Vec::with_capacity(CHECKS.len());
    for &name in CHECKS {
        if !config.runs(name) {
            checks.push(CheckResult {
                name: name.into(),
                status: Status::Skipped,
                checked: 0,
                detail: "not selected".into(),
                witness: None,
                millis: None,
            });
            continue;
        }
        let start = Instant::now();
        let outcome = run_check(name, &u).unwrap_or_else(|e| Outcome::new(0, "error", Some(format!("error: {e}"))));
        checks.push(CheckResult {
            name: name.into(),
            status: if outcome.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            checked: outcome.checked,
            detail: outcome.detail,
            witness: outcome.witness,
            millis: config.timing.then(|| start.elapsed().as_millis()),
        });
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let mut diagnostics = Vec::new();
    if config.stability_margin > 0 {
        let big = Fskel::new(config.n_max + config.stability_margin)?;
        for (name, x) in [
            ("Z/2", monoid_gamma_set(&big, 2)?),
            ("rep<1>", representable(big.category(), 1)?),
        ] {
            let r = stability_diagnostic(&Arc::new(x), config.n_max, config.stability_margin, config.q_max)?;
            diagnostics.push(serde_json::json!({
                "kind": "stability",
                "diagram": name,
                "stable": r.stable(),
                "report": r,
            }));
        }
    }
    let status = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    let suite = if config.select.is_empty() {
        "all".to_string()
    } else {
        config.select.join("+")
    };
    let seeds = BTreeMap::from([
        ("fskel-random".to_string(), fskel_seed(config.seed)),
        ("gstar-random".to_string(), gstar_seed(config.seed)),
    ]);
    Ok(CheckReport {
        suite,
        status,
        config: config.clone(),
        seeds,
        checks,
        diagnostics,
    })
}

fn run_check(name: &str, u: &Universe) -> Result<Outcome> {
    match name {
        "adjunction.bijection" => adjunction_bijection_check(u),
        "adjunction.density" => density_check(u),
        "adjunction.lift-functoriality" => lift_functoriality_check(u),
        "adjunction.triangles" => triangles_check(u),
        "adjunction.unit-iso" => unit_iso_check(u),
        "category.fskel-axioms" => fskel_axioms(u),
        "category.gstar-axioms" => gstar_axioms(u),
        "category.input-axioms" => {
            let mut checked = 0;
            for (name, c) in &u.config.categories {
                let r = c.validate();
                checked += r.triples as usize;
                if let Some(f) = r.first_failure() {
                    let w = format!("{name}: {}: {}", f.axiom, f.witness.as_deref().unwrap_or(""));
                    return Ok(Outcome::new(checked, "", Some(w)));
                }
            }
            Ok(Outcome::new(
                checked,
                format!("{} input categories", u.config.categories.len()),
                None,
            ))
        }
        "category.simplex-tuple-axioms" => {
            let e = simplex_tuple_category(1, u.config.q_max)?;
            let r = e.category().validate();
            Ok(category_outcome(e.category(), r, "pointed Δop on [0..1]"))
        }
        "diagram.collapse-inclusion" => collapse_inclusion_check(u),
        "functor.collapse-composites" => collapse_composites(u),
        "functor.inclusion-fully-faithful" => fully_faithful_check(u),
        "functor.smash-inclusion" => smash_inclusion_check(u),
        "hom.emptiness" => emptiness_check(),
        "hom.fskel-count" => fskel_count_check(),
        "hom.gstar-count" => gstar_count_check(u),
        "monoidal.collapse" => monoidal_check(u),
        "nerve.levelwise" => nerve_check(u),
        "relative.classification" => classification_check(u),
        "relative.prism" => prism_check(u),
        "relative.segal" => segal_check(u),
        "relative.segal-counterexample" => {
            let r = segal_map_check(&SegalData::from_simplicial(
                &boundary_of_two_simplex(u.config.degree),
                2,
            )?);
            let witness = r
                .bijective()
                .then(|| "the Segal map of the boundary of Δ[2] was reported bijective".to_string());
            Ok(Outcome::new(
                1,
                format!("detected: {}", r.witness.unwrap_or_default()),
                witness,
            ))
        }
        "right-induced.creation" => creation_check(u),
        "right-induced.isomorphisms" => isomorphisms_check(u),
        "right-induced.two-out-of-three" => two_out_of_three_check(u),
        _ => Err(Error::Config(format!("unknown check {name}"))),
    }
}

fn category_outcome(c: &FinCategory, r: &crate::category::CategoryReport, what: &str) -> Outcome {
    let witness = r
        .first_failure()
        .map(|f| format!("{}: {}", f.axiom, f.witness.as_deref().unwrap_or("")));
    Outcome::new(
        r.triples as usize,
        format!(
            "{what}: {} objects, {} morphisms, {} composable triples",
            c.num_objects(),
            c.num_morphisms(),
            r.triples
        ),
        witness,
    )
}

/// Folds per-item reports, stopping at the first failure.
fn sweep<'x, T: 'x>(
    items: impl IntoIterator<Item = (&'x String, T)>,
    mut check: impl FnMut(T) -> Result<DiagramReport>,
) -> Result<(usize, usize, Option<String>)> {
    let (mut count, mut checked) = (0, 0);
    for (name, item) in items {
        count += 1;
        let r = check(item)?;
        checked += r.checked;
        if let Some(w) = r.witness {
            return Ok((count, checked, Some(format!("{name}: {w}"))));
        }
    }
    Ok((count, checked, None))
}

fn fskel_diagrams<'u>(u: &'u Universe) -> Result<impl Iterator<Item = &'u (String, Arc<SetDiagram>)>> {
    Ok(u.fskel_fixtures()?.iter().chain(u.fskel_randoms()?.iter()))
}

fn gstar_diagrams<'u>(u: &'u Universe) -> Result<impl Iterator<Item = &'u (String, Arc<SetDiagram>)>> {
    Ok(u.gstar_fixtures()?.iter().chain(u.gstar_randoms()?.iter()))
}

fn fskel_axioms(u: &Universe) -> Result<Outcome> {
    let mut checked = 0;
    for n in 0..=u.config.n_max.max(3) {
        let fs = Fskel::new(n)?;
        let r = fs.category().validate();
        checked += r.triples as usize;
        if !r.passed() {
            return Ok(category_outcome(fs.category(), r, &format!("F<={n}")));
        }
    }
    Ok(Outcome::new(
        checked,
        format!("F<=n for n <= {}", u.config.n_max.max(3)),
        None,
    ))
}

/// The composite `g ∘ 1` for the first non-identity nonzero `g`, redirected to zero.
fn broken_composition(c: &FinCategory) -> Result<FinCategory> {
    let g = c
        .morphism_ids()
        .find(|&m| !c.is_identity(m) && !c.is_zero(m))
        .ok_or_else(|| Error::Malformed("no morphism to break".into()))?;
    let (a, b) = (c.dom(g), c.cod(g));
    let zero = c.zero(a, b).ok_or_else(|| Error::Malformed("no zero map".into()))?;
    c.with_composite_overridden(g, c.identity(a), zero)
}

fn gstar_axioms(u: &Universe) -> Result<Outcome> {
    let g = u.gstar()?;
    let c = match u.config.fault {
        Some(Fault::BrokenComposition) => Arc::new(broken_composition(g.category())?),
        None => g.category().clone(),
    };
    let r = c.validate();
    let mut out = category_outcome(
        &c,
        r,
        &format!("G* (N = {}, q_max = {})", u.config.n_max, u.config.q_max),
    );
    if out.witness.is_none() && c.basepoint() != Some(0) {
        out.witness = Some("basepoint is not declared".into());
    }
    Ok(out)
}

fn fskel_count_check() -> Result<Outcome> {
    let trunc = TruncationParams {
        n_max: 3,
        q_max: 1,
        degree: 1,
    };
    let fs = Fskel::new(3)?;
    let mut checked = 0;
    for n in 0..=3 {
        for m in 0..=3 {
            checked += 1;
            let expected = (0..n).fold(1, |acc, _| acc * (m + 1));
            let listed = enum_fskel_hom(n, m, false, &trunc)?.len();
            let table = fs.category().hom(n, m).len();
            if listed != expected || table != expected {
                return Ok(Outcome::new(
                    checked,
                    "",
                    Some(format!(
                        "|F(<{n}>,<{m}>)|: enumerated {listed}, table {table}, expected {expected}"
                    )),
                ));
            }
        }
    }
    Ok(Outcome::new(checked, "|F(<n>,<m>)| = (m+1)^n for n, m <= 3", None))
}

fn gstar_count_check(u: &Universe) -> Result<Outcome> {
    let g = u.gstar()?;
    let c = g.category();
    let objects = g.tuples().objects();
    let mut checked = 0;
    for (a, s) in objects.iter().enumerate() {
        for (b, t) in objects.iter().enumerate() {
            checked += 1;
            let nonzero = c.nonzero_hom(a, b).count();
            let expected = match (s.entries(), t.entries()) {
                (Some(n), Some(m)) => gstar_nonzero_count(n, m),
                _ => 0,
            };
            if nonzero != expected || c.hom(a, b).len() != expected + 1 {
                return Ok(Outcome::new(
                    checked,
                    "",
                    Some(format!(
                        "hom({s}, {t}): {nonzero} nonzero maps, formula gives {expected}"
                    )),
                ));
            }
        }
    }
    Ok(Outcome::new(checked, "every object pair of the truncation", None))
}

fn emptiness_check() -> Result<Outcome> {
    let mut objects = vec![ObjectTuple::Basepoint, ObjectTuple::unit()];
    objects.extend((1..=4).map(|n| ObjectTuple::new(vec![n])));
    for m in 1..=2 {
        for n in 1..=2 {
            objects.push(ObjectTuple::new(vec![m, n]));
        }
    }
    let g = Gstar::on_objects(Fskel::new(4)?, 2, objects)?;
    let c = g.category();
    let id = |t: Vec<usize>| g.tuples().object_id(&ObjectTuple::new(t));
    let mut checked = 1;
    let n = c
        .nonzero_hom(id(vec![1])?, g.tuples().object_id(&ObjectTuple::unit())?)
        .count();
    if n != 0 {
        return Ok(Outcome::new(
            checked,
            "",
            Some(format!("G*((1), ()) has {n} nonzero maps")),
        ));
    }
    for m in 1..=2 {
        for k in 1..=2 {
            checked += 1;
            let n = c.nonzero_hom(id(vec![m, k])?, id(vec![m * k])?).count();
            if n != 0 {
                return Ok(Outcome::new(
                    checked,
                    "",
                    Some(format!("G*(({m},{k}), ({})) has {n} nonzero maps", m * k)),
                ));
            }
        }
    }
    Ok(Outcome::new(
        checked,
        "G*((1), ()) and G*((m,n), (mn)) for m, n <= 2 have only the zero map",
        None,
    ))
}

fn smash_inclusion_check(u: &Universe) -> Result<Outcome> {
    let mut checked = 0;
    for n in 1..=u.config.n_max.max(3) {
        let fs = Fskel::new(n)?;
        let g = Gstar::over(fs.clone(), 1)?;
        let i = g.tuples().length_one_inclusion()?;
        let wedge = g.collapse_functor(&fs)?;
        let c = fs.category();
        for a in c.objects() {
            checked += 1;
            if wedge.on_object(i.on_object(a)) != a {
                return Ok(Outcome::new(checked, "", Some(format!("∧ i <{a}> != <{a}> in F<={n}"))));
            }
        }
        for f in c.morphism_ids() {
            checked += 1;
            if wedge.on_morphism(i.on_morphism(f)) != f {
                return Ok(Outcome::new(
                    checked,
                    "",
                    Some(format!("∧ i ({}) != {} in F<={n}", fs.map_of(f), fs.map_of(f))),
                ));
            }
        }
    }
    Ok(Outcome::new(
        checked,
        format!("∧ ∘ i = 1 on F<=n for n <= {}", u.config.n_max.max(3)),
        None,
    ))
}

fn collapse_composites(u: &Universe) -> Result<Outcome> {
    let g = u.gstar()?;
    let target = Fskel::new(g.collapse_bound())?;
    let wedge = g.collapse_functor(&target)?;
    let witness = wedge.validate();
    Ok(Outcome::new(
        g.category().composable_pairs(),
        format!("∧ : G* -> F<={} on every composable pair", g.collapse_bound()),
        witness,
    ))
}

fn fully_faithful_check(u: &Universe) -> Result<Outcome> {
    let mut checked = 0;
    for (n, q) in [(u.config.n_max, u.config.q_max), (3, 1)] {
        let g = Gstar::over(Fskel::new(n)?, q)?;
        let i = g.tuples().length_one_inclusion()?;
        checked += i.dom().num_objects().pow(2);
        if let Some(w) = i.fully_faithful_violation() {
            return Ok(Outcome::new(checked, "", Some(format!("N = {n}, q_max = {q}: {w}"))));
        }
    }
    Ok(Outcome::new(checked, "hom bijections for every object pair", None))
}

fn lex_smash(f: &crate::pointed::PointedMap, g: &crate::pointed::PointedMap) -> Vec<usize> {
    let mut values = Vec::with_capacity(f.dom() * g.dom());
    for a in 1..=f.dom() {
        for b in 1..=g.dom() {
            let (x, y) = (f.apply(a), g.apply(b));
            values.push(if x == 0 || y == 0 { 0 } else { (x - 1) * g.cod() + y });
        }
    }
    values
}

fn monoidal_check(u: &Universe) -> Result<Outcome> {
    let g = u.gstar()?;
    let t = g.tuples();
    let c = g.category();
    let q = u.config.q_max;
    let len = |o: usize| t.object(o).len().unwrap_or(0);
    let mut checked = 0;
    let unit = ObjectTuple::unit();
    for a in t.objects() {
        checked += 1;
        if t.oplus_objects(a, &unit)? != *a || t.oplus_objects(&unit, a)? != *a {
            return Ok(Outcome::new(checked, "", Some(format!("() is not a unit for {a}"))));
        }
        for b in t.objects() {
            if a.len().unwrap_or(0) + b.len().unwrap_or(0) > q {
                continue;
            }
            checked += 1;
            let ab = t.oplus_objects(a, b)?;
            if smash_objects(&ab) != smash_objects(a) * smash_objects(b) {
                return Ok(Outcome::new(checked, "", Some(format!("∧({a} ⊕ {b}) != ∧{a} · ∧{b}"))));
            }
        }
    }
    let short: Vec<MorId> = c
        .morphism_ids()
        .filter(|&m| len(c.dom(m)).max(len(c.cod(m))) * 2 <= q)
        .collect();
    for &f in &short {
        for &h in &short {
            checked += 1;
            let sum = t.oplus_morphisms(f, h)?;
            let lhs = g.collapse_morphism(sum)?;
            let rhs = lex_smash(&g.collapse_morphism(f)?, &g.collapse_morphism(h)?);
            if lhs.values() != rhs.as_slice() {
                return Ok(Outcome::new(
                    checked,
                    "",
                    Some(format!("∧(f ⊕ g) != ∧f ∧ ∧g for morphisms {f} and {h}")),
                ));
            }
        }
    }
    Ok(Outcome::new(
        checked,
        "() is a strict unit and ∧ is strict monoidal on objects and on morphisms of length <= q_max/2",
        None,
    ))
}

fn triangles_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let (nx, cx, wx) = sweep(fskel_diagrams(u)?.map(|(n, x)| (n, x)), |x| check_left_triangle(x, i))?;
    if wx.is_some() {
        return Ok(Outcome::new(cx, "left triangle", wx));
    }
    let (ny, cy, wy) = sweep(gstar_diagrams(u)?.map(|(n, y)| (n, y)), |y| check_right_triangle(y, i))?;
    Ok(Outcome::new(
        cx + cy,
        format!("ε_L ∘ L η = 1 on {nx} diagrams over F, i*ε ∘ η_i* = 1 on {ny} diagrams over G*"),
        wy,
    ))
}

fn adjunction_bijection_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let budget = u.config.budget;
    let mut pairs: Vec<(String, &Arc<SetDiagram>, &Arc<SetDiagram>)> = Vec::new();
    for (nx, x) in u.fskel_fixtures()? {
        for (ny, y) in u.map_family()? {
            pairs.push((format!("({nx}, {ny})"), x, y));
        }
    }
    for ((nx, x), (ny, y)) in u.fskel_randoms()?.iter().zip(u.gstar_randoms()?) {
        pairs.push((format!("({nx}, {ny})"), x, y));
    }
    let (mut done, mut skipped, mut maps) = (0, 0, 0);
    for (name, x, y) in pairs {
        match adjunction_bijection(x, y, i, budget) {
            Ok(r) => {
                done += 1;
                maps += r.left + r.right;
                if let Some(w) = r.witness {
                    return Ok(Outcome::new(maps, "", Some(format!("{name}: {w}"))));
                }
            }
            Err(Error::BudgetExceeded { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome::new(
        maps,
        format!("Φ and Ψ are inverse on {done} pairs; {skipped} pairs exceeded the budget of {budget}"),
        None,
    ))
}

fn unit_iso_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let (n, checked, w) = sweep(fskel_diagrams(u)?.map(|(n, x)| (n, x)), |x| check_unit_iso(x, i))?;
    Ok(Outcome::new(
        checked,
        format!("η bijective at every object for {n} diagrams"),
        w,
    ))
}

fn density_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let (nx, cx, w) = sweep(fskel_diagrams(u)?.map(|(n, x)| (n, x)), |x| {
        yoneda_density_oracle(x, Some(i))
    })?;
    if w.is_some() {
        return Ok(Outcome::new(cx, "", w));
    }
    let (ny, cy, w) = sweep(u.gstar_fixtures()?.iter().map(|(n, y)| (n, y)), |y| {
        yoneda_density_oracle(y, None)
    })?;
    Ok(Outcome::new(
        cx + cy,
        format!("L along the identity is evaluation for {nx} diagrams over F and {ny} over G*"),
        w,
    ))
}

fn lift_functoriality_check(u: &Universe) -> Result<Outcome> {
    let fs = &u.fskel;
    let c = fs.category();
    let family: Vec<Arc<SetDiagram>> = vec![
        Arc::new(SetDiagram::terminal(c.clone())),
        Arc::new(representable(c, 1)?),
        Arc::new(representable(c, fs.n_max().min(2))?),
        Arc::new(monoid_gamma_set(fs, 2)?),
    ];
    let maps: Vec<Vec<Vec<SetMap>>> = family
        .iter()
        .map(|a| {
            family
                .iter()
                .map(|b| enum_diagram_maps(a, b, u.config.budget))
                .collect()
        })
        .collect::<Result<_>>()?;
    let i = u.i()?;
    let mut checked = 0;
    for a in 0..family.len() {
        for b in 0..family.len() {
            for e in 0..family.len() {
                for f in &maps[a][b] {
                    for g in &maps[b][e] {
                        let r = check_lift_functoriality(f, g, i)?;
                        checked += 1;
                        if let Some(w) = r.witness {
                            return Ok(Outcome::new(checked, "", Some(w)));
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::new(
        checked,
        "L(1) = 1 and L(g ∘ f) = L g ∘ L f on all composable fixture maps",
        None,
    ))
}

fn collapse_inclusion_check(u: &Universe) -> Result<Outcome> {
    let n = u.config.n_max;
    let sub = Gstar::collapsible(u.fskel.clone(), u.config.q_max)?;
    let wedge = sub.collapse_functor(&u.fskel)?;
    let i = sub.tuples().length_one_inclusion()?;
    let mut count = 0;
    for (name, x) in fskel_diagrams(u)? {
        count += 1;
        let back = x.precompose(&wedge)?.precompose(&i)?;
        if back != **x {
            return Ok(Outcome::new(count, "", Some(format!("{name}: i*∧*X != X"))));
        }
    }
    Ok(Outcome::new(
        count,
        format!("i*∧*X = X on the full subcategory with smash <= {n}"),
        None,
    ))
}

fn nerve_check(u: &Universe) -> Result<Outcome> {
    let d = u.config.degree;
    let x = indiscrete_gamma_category(&u.fskel)?;
    let report = x.validate();
    if let Some(w) = report.witness {
        return Ok(Outcome::new(report.checked, "", Some(w)));
    }
    let nerve = nerve_levelwise(&x, d)?;
    let ids = nerve.check_identities();
    let mut checked = ids.checked;
    if let Some(w) = ids.witness {
        return Ok(Outcome::new(checked, "", Some(w)));
    }
    let counts = nerve.counts();
    for (c, per_degree) in counts.iter().enumerate() {
        for (k, &size) in per_degree.iter().enumerate() {
            checked += 1;
            let expected = (c + 1).pow(k as u32 + 1);
            if size != expected {
                return Ok(Outcome::new(
                    checked,
                    "",
                    Some(format!(
                        "level <{c}> degree {k} has {size} simplices, expected {expected}"
                    )),
                ));
            }
        }
    }
    for (k, level) in nerve.levels.iter().enumerate() {
        checked += 1;
        if let Some(w) = level.validate().witness {
            return Ok(Outcome::new(checked, "", Some(format!("degree {k}: {w}"))));
        }
    }
    // nerve commutes with precomposition by the collapse
    let sub = Gstar::collapsible(u.fskel.clone(), u.config.q_max)?;
    let wedge = sub.collapse_functor(&u.fskel)?;
    let pulled = nerve_levelwise(&x.precompose(&wedge)?, d)?;
    for k in 0..=d {
        checked += 1;
        if *pulled.levels[k] != nerve.levels[k].precompose(&wedge)? {
            return Ok(Outcome::new(
                checked,
                "",
                Some(format!("N(∧*X) != ∧*N(X) in degree {k}")),
            ));
        }
    }
    Ok(Outcome::new(
        checked,
        format!("levelwise nerve of <n> ↦ indiscrete{{0..n}} through degree {d}, and its commutation with ∧*"),
        None,
    ))
}

fn relative_fixtures() -> Result<Vec<(String, RelativeCategory)>> {
    let (arrow, iso, point) = (
        Arc::new(walking_arrow()),
        Arc::new(walking_iso()),
        Arc::new(terminal_category()),
    );
    Ok(vec![
        ("terminal".into(), RelativeCategory::all(point)?),
        (
            "walking-arrow, identities".into(),
            RelativeCategory::identities(arrow.clone())?,
        ),
        ("walking-arrow, all".into(), RelativeCategory::all(arrow)?),
        (
            "walking-iso, identities".into(),
            RelativeCategory::identities(iso.clone())?,
        ),
        ("walking-iso, all".into(), RelativeCategory::all(iso)?),
    ])
}

fn classification_check(u: &Universe) -> Result<Outcome> {
    let d = u.config.degree;
    let mut checked = 0;
    for (name, r) in relative_fixtures()? {
        let cl = classification(&r, d, d)?;
        let ids = cl.diagram.check_identities();
        checked += ids.checked;
        if let Some(w) = ids.witness {
            return Ok(Outcome::new(checked, "", Some(format!("{name}: {w}"))));
        }
        if name == "walking-iso, all" {
            for (n, row) in cl.diagram.sizes.iter().enumerate() {
                for (k, &size) in row.iter().enumerate() {
                    checked += 1;
                    let expected = 1usize << ((n + 1) * (k + 1));
                    if size != expected {
                        return Ok(Outcome::new(
                            checked,
                            "",
                            Some(format!(
                                "{name}: level ({n}, {k}) has {size} simplices, expected {expected}"
                            )),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::new(
        checked,
        format!(
            "walking-iso levels are 2^((n+1)(k+1)) for n, k <= {d}; bisimplicial identities hold for every fixture"
        ),
        None,
    ))
}

fn segal_check(u: &Universe) -> Result<Outcome> {
    let d = u.config.degree;
    let mut checked = 0;
    for (name, r) in relative_fixtures()? {
        let cl = classification(&r, d, d)?;
        let rows = cl
            .diagram
            .horizontal
            .iter()
            .enumerate()
            .map(|(k, s)| (format!("row k = {k}"), s))
            .chain(
                cl.diagram
                    .vertical
                    .iter()
                    .enumerate()
                    .map(|(n, s)| (format!("column n = {n}"), s)),
            );
        for (which, s) in rows {
            for n in 2..=d {
                checked += 1;
                let report = segal_map_check(&SegalData::from_simplicial(s, n)?);
                if !report.bijective() {
                    return Ok(Outcome::new(
                        checked,
                        "",
                        Some(format!(
                            "{name}, {which}, n = {n}: {}",
                            report.witness.unwrap_or_else(|| "not a bijection".into())
                        )),
                    ));
                }
            }
        }
    }
    Ok(Outcome::new(
        checked,
        "set-level Segal maps of every row and column are bijections (strict bijectivity, not weak equivalence)",
        None,
    ))
}

fn prism_check(u: &Universe) -> Result<Outcome> {
    let d = u.config.degree;
    let arrow = Arc::new(walking_arrow());
    let iso = Arc::new(walking_iso());
    let constant = |o: usize| {
        PointedFunctor::new(
            arrow.clone(),
            arrow.clone(),
            FunctorTable {
                objects: vec![o; 2],
                morphisms: vec![arrow.identity(o); 3],
            },
        )
    };
    let swap = PointedFunctor::new(
        iso.clone(),
        iso.clone(),
        FunctorTable {
            objects: vec![1, 0],
            morphisms: vec![3, 2, 1, 0],
        },
    )?;
    let transformations = vec![
        (
            "0 ⇒ 1 between constant functors",
            NatTransformation::new(constant(0)?, constant(1)?, vec![Some(2), Some(2)])?,
        ),
        (
            "identity on the walking arrow",
            NatTransformation::identity(PointedFunctor::identity(arrow.clone())),
        ),
        (
            "identity ⇒ swap on the walking iso",
            NatTransformation::new(PointedFunctor::identity(iso.clone()), swap, vec![Some(1), Some(2)])?,
        ),
    ];
    let mut checked = 0;
    for (name, p) in transformations {
        let r = homotopy_from_transformation(&p, d)?;
        checked += r.checked;
        if let Some(w) = r.witness {
            return Ok(Outcome::new(checked, "", Some(format!("{name}: {w}"))));
        }
    }
    Ok(Outcome::new(
        checked,
        format!("prism homotopies satisfy the simplicial identities through degree {d}"),
        None,
    ))
}

type MapsAndPairs = (Vec<SetMap>, Vec<(SetMap, SetMap)>);

fn all_maps(u: &Universe) -> Result<MapsAndPairs> {
    let (family, maps) = u.fixture_maps()?;
    let n = family.len();
    let flat = maps.iter().flatten().flatten().cloned().collect();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                for f in &maps[a][b] {
                    for g in &maps[b][e] {
                        pairs.push((f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    Ok((flat, pairs))
}

fn isomorphisms_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let (maps, _) = all_maps(u)?;
    let s = LevelwiseBijections;
    let si = right_induced_predicate(&s, i);
    let r = check_contains_isomorphisms(&si, &maps)?;
    let mut strict = 0;
    for f in &maps {
        if si.contains(f)? && !f.is_levelwise_bijection() {
            strict += 1;
        }
    }
    Ok(Outcome::new(
        r.checked,
        format!(
            "{} maps among the fixture family; {strict} lie in S^i without being isomorphisms",
            maps.len()
        ),
        r.witness,
    ))
}

fn two_out_of_three_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let (_, pairs) = all_maps(u)?;
    let s = LevelwiseBijections;
    let r = check_two_out_of_three(&right_induced_predicate(&s, i), &pairs)?;
    Ok(Outcome::new(
        r.checked,
        "every composable pair in the fixture family",
        r.witness,
    ))
}

fn creation_check(u: &Universe) -> Result<Outcome> {
    let i = u.i()?;
    let (maps, _) = all_maps(u)?;
    let s = LevelwiseBijections;
    let si = right_induced_predicate(&s, i);
    let r = check_relative_functor(&maps, |f| f.precompose(i), |f| si.contains(f), |f| s.contains(f))?;
    let witness = if !(r.relative && r.creates) {
        Some(r.witness.unwrap_or_else(|| "i* does not create S".into()))
    } else {
        None
    };
    Ok(Outcome::new(
        r.checked,
        "i* : (Fun(G*), S^i) -> (Fun(F), S) creates weak equivalences",
        witness,
    ))
}
