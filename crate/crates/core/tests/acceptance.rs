//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! fails if any criterion fails. Counts and closed forms are recomputed
//! here by brute force rather than taken from the library.

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gstar::category::{FunctorTable, NatTransformation, PointedFunctor};
use gstar::coend::{
    adjunction_bijection, check_contains_isomorphisms, check_left_triangle, check_right_triangle,
    check_two_out_of_three, check_unit_iso, right_induced_predicate, yoneda_density_oracle, LevelwiseBijections, Lift,
    MorphismClass,
};
use gstar::diagram::{enum_diagram_maps, SetDiagram, SetMap, DEFAULT_BUDGET};
use gstar::fixtures::{fskel_fixtures, representable, terminal_category, walking_arrow, walking_iso, RandomDiagrams};
use gstar::pointed::PointedMap;
use gstar::relative::{classification, homotopy_from_transformation, segal_map_check, RelativeCategory, SegalData};
use gstar::skeletal::{enum_fskel_hom, Fskel, ObjectTuple, TruncationParams};
use gstar::suite::{run_suite, SuiteConfig};
use gstar::tuple::Gstar;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

const RANDOMS: usize = 100;
const SEED: u64 = 0;

fn gstar22() -> Gstar {
    Gstar::over(Fskel::new(2).unwrap(), 2).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Injections `{1..q} -> {1..p}` as image lists, independent of the library.
fn injections(q: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(q: usize, p: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == q {
            out.push(acc.clone());
            return;
        }
        for j in 1..=p {
            if !acc.contains(&j) {
                acc.push(j);
                go(q, p, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(q, p, &mut Vec::new(), &mut out);
    out
}

fn closed_form(n: &[usize], m: &[usize]) -> usize {
    injections(n.len(), m.len())
        .iter()
        .map(|f| {
            (1..=m.len())
                .map(|j| {
                    let e = f.iter().position(|&fj| fj == j).map_or(1, |i| n[i]);
                    (0..e).fold(1usize, |acc, _| acc * (m[j - 1] + 1)) - 1
                })
                .product::<usize>()
        })
        .sum()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let g = gstar22();
    let c = g.category();
    let report = c.validate();
    if let Some(f) = report.first_failure() {
        return Err(format!("{}: {}", f.axiom, f.witness.clone().unwrap_or_default()));
    }
    let base = c.basepoint().ok_or("no basepoint")?;
    for a in c.objects() {
        ensure(c.hom(base, a).len() == 1 && c.hom(a, base).len() == 1, || {
            format!("basepoint is not a zero object at {}", c.object_name(a))
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} composable triples, {} morphisms, basepoint is a zero object, {:.1}s",
        report.triples,
        c.num_morphisms(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Verdict {
    let g = gstar22();
    let c = g.category();
    let objects = g.tuples().objects();
    let mut pairs = 0;
    for (a, s) in objects.iter().enumerate() {
        for (b, t) in objects.iter().enumerate() {
            let (Some(n), Some(m)) = (s.entries(), t.entries()) else {
                continue;
            };
            pairs += 1;
            let listed = c.nonzero_hom(a, b).count();
            let expected = closed_form(n, m);
            ensure(listed == expected, || {
                format!("hom({s}, {t}): {listed} listed, closed form {expected}")
            })?;
        }
    }
    let trunc = TruncationParams {
        n_max: 3,
        q_max: 1,
        degree: 1,
    };
    let fs = Fskel::new(3).unwrap();
    for n in 0..=3 {
        for m in 0..=3usize {
            let expected = (m + 1).pow(n as u32);
            let listed = enum_fskel_hom(n, m, false, &trunc).unwrap().len();
            let table = fs.category().hom(n, m).len();
            ensure(listed == expected && table == expected, || {
                format!("|F(<{n}>,<{m}>)|: {listed} listed, {table} tabulated, expected {expected}")
            })?;
        }
    }
    Ok(format!(
        "{pairs} tuple pairs match the closed form; |F(<n>,<m>)| = (m+1)^n for n, m <= 3"
    ))
}

fn criterion_3() -> Verdict {
    let mut checked = 0;
    for n in 1..=3 {
        let fs = Fskel::new(n).unwrap();
        let g = Gstar::over(fs.clone(), 1).unwrap();
        let i = g.tuples().length_one_inclusion().unwrap();
        let c = fs.category();
        for a in c.objects() {
            let t = g.tuples().object(i.on_object(a));
            ensure(*t == ObjectTuple::new(vec![a]), || format!("i<{a}> = {t}"))?;
            ensure(g.collapse_object(t) == a, || format!("∧ i <{a}> != <{a}>"))?;
        }
        for f in c.morphism_ids() {
            checked += 1;
            let back = g.collapse_morphism(i.on_morphism(f)).unwrap();
            ensure(back == fs.map_of(f), || format!("∧ i ({}) = {back}", fs.map_of(f)))?;
        }
        // fully faithful: hom(a, b) -> hom(ia, ib) is a bijection
        let d = g.category();
        for a in c.objects() {
            for b in c.objects() {
                let images: HashSet<usize> = c.hom(a, b).iter().map(|&f| i.on_morphism(f)).collect();
                let target = d.hom(i.on_object(a), i.on_object(b));
                ensure(
                    images.len() == c.hom(a, b).len() && images.len() == target.len(),
                    || format!("i is not bijective on hom(<{a}>, <{b}>) in F<={n}"),
                )?;
            }
        }
    }
    // ∧ preserves every composite of the (2, 2) truncation
    let g = gstar22();
    let c = g.category();
    let smash: Vec<PointedMap> = c.morphism_ids().map(|m| g.collapse_morphism(m).unwrap()).collect();
    let mut composites = 0;
    for f in c.morphism_ids() {
        for &h in c.outgoing(c.cod(f)) {
            composites += 1;
            let whole = &smash[c.compose(h, f)];
            let parts = smash[h].after(&smash[f]).unwrap();
            ensure(*whole == parts, || {
                format!("∧ fails to preserve {} ∘ {}", c.morphism_name(h), c.morphism_name(f))
            })?;
        }
    }
    Ok(format!(
        "∧ ∘ i = 1 on {checked} morphisms of F<=n (n <= 3), i fully faithful, {composites} composites preserved"
    ))
}

fn criterion_4() -> Verdict {
    let mut objects = vec![ObjectTuple::Basepoint, ObjectTuple::unit()];
    objects.extend((1..=4).map(|n| ObjectTuple::new(vec![n])));
    for m in 1..=2 {
        for n in 1..=2 {
            objects.push(ObjectTuple::new(vec![m, n]));
        }
    }
    let g = Gstar::on_objects(Fskel::new(4).unwrap(), 2, objects).unwrap();
    let c = g.category();
    let id = |t: &str| g.tuples().object_id(&t.parse().unwrap()).unwrap();
    let count = |a: usize, b: usize| c.nonzero_hom(a, b).count();
    ensure(count(id("(1)"), id("()")) == 0, || "G*((1), ()) is nonempty".into())?;
    for m in 1..=2 {
        for n in 1..=2 {
            let k = count(id(&format!("({m},{n})")), id(&format!("({})", m * n)));
            ensure(k == 0, || format!("G*(({m},{n}), ({})) has {k} maps", m * n))?;
        }
    }
    Ok("G*((1), ()) and G*((m,n), (mn)), m, n <= 2, contain only the zero map".into())
}

struct Adjunction {
    i: PointedFunctor,
    fixtures_f: Vec<(String, Arc<SetDiagram>)>,
    randoms_f: Vec<Arc<SetDiagram>>,
    fixtures_g: Vec<(String, Arc<SetDiagram>)>,
    randoms_g: Vec<Arc<SetDiagram>>,
}

fn adjunction_inputs() -> Adjunction {
    let g = gstar22();
    let fs = g.fskel().clone();
    let i = g.tuples().length_one_inclusion().unwrap();
    let fixtures_f = fskel_fixtures(&fs).unwrap();
    let mut gen = RandomDiagrams::over_fskel(&fs, SEED, 6);
    let randoms_f = (0..RANDOMS).map(|_| Arc::new(gen.next_diagram().unwrap())).collect();
    let c = g.category().clone();
    let mut fixtures_g = vec![("terminal".to_string(), Arc::new(SetDiagram::terminal(c.clone())))];
    for (a, t) in g.tuples().objects().iter().enumerate().skip(1) {
        fixtures_g.push((format!("rep{t}"), Arc::new(representable(&c, a).unwrap())));
    }
    let mut gen = RandomDiagrams::new(c, SEED + 1, 6);
    let randoms_g = (0..RANDOMS).map(|_| Arc::new(gen.next_diagram().unwrap())).collect();
    Adjunction {
        i,
        fixtures_f,
        randoms_f,
        fixtures_g,
        randoms_g,
    }
}

fn all_f(a: &Adjunction) -> impl Iterator<Item = &Arc<SetDiagram>> {
    a.fixtures_f.iter().map(|(_, x)| x).chain(&a.randoms_f)
}

fn all_g(a: &Adjunction) -> impl Iterator<Item = &Arc<SetDiagram>> {
    a.fixtures_g.iter().map(|(_, y)| y).chain(&a.randoms_g)
}

fn criterion_5(a: &Adjunction) -> Verdict {
    let start = Instant::now();
    let mut triangles = 0;
    for x in all_f(a) {
        let r = check_left_triangle(x, &a.i).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("left triangle: {}", r.witness.clone().unwrap()))?;
        triangles += 1;
    }
    for y in all_g(a) {
        let r = check_right_triangle(y, &a.i).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("right triangle: {}", r.witness.clone().unwrap()))?;
        triangles += 1;
    }
    let mut pairs: Vec<(&Arc<SetDiagram>, &Arc<SetDiagram>)> = Vec::new();
    for (_, x) in &a.fixtures_f {
        for (_, y) in &a.fixtures_g {
            pairs.push((x, y));
        }
    }
    pairs.extend(a.randoms_f.iter().zip(&a.randoms_g));
    let (mut done, mut over_budget, mut maps) = (0, 0, 0);
    for (x, y) in pairs {
        match adjunction_bijection(x, y, &a.i, DEFAULT_BUDGET) {
            Ok(r) => {
                ensure(r.passed(), || r.witness.clone().unwrap())?;
                // both sides were enumerated independently; their sizes must agree
                ensure(r.left == r.right, || format!("{} != {}", r.left, r.right))?;
                done += 1;
                maps += r.left;
            }
            Err(gstar::Error::BudgetExceeded { .. }) => over_budget += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "triangles on {triangles} diagrams; Φ/Ψ round-trip on {done} pairs ({maps} maps), {over_budget} over budget; {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_6(a: &Adjunction) -> Verdict {
    let mut count = 0;
    for x in all_f(a) {
        let r = check_unit_iso(x, &a.i).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.witness.clone().unwrap())?;
        let l = Lift::new(x.clone(), &a.i).map_err(|e| e.to_string())?;
        for p in x.index().objects() {
            let (lhs, rhs) = (l.diagram().size_at(a.i.on_object(p)), x.size_at(p));
            ensure(lhs == rhs, || format!("|LX(i p)| = {lhs} but |X p| = {rhs}"))?;
        }
        count += 1;
    }
    Ok(format!("η bijective at every object for {count} diagrams"))
}

fn criterion_7(a: &Adjunction) -> Verdict {
    let mut count = 0;
    for x in all_f(a) {
        let r = yoneda_density_oracle(x, Some(&a.i)).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.witness.clone().unwrap())?;
        count += 1;
    }
    for y in all_g(a) {
        let id = PointedFunctor::identity(y.index().clone());
        let r = yoneda_density_oracle(y, None).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.witness.clone().unwrap())?;
        let l = Lift::new(y.clone(), &id).map_err(|e| e.to_string())?;
        ensure(l.diagram().values() == y.values(), || {
            "density changes a cardinality".into()
        })?;
        count += 1;
    }
    Ok(format!("L along the identity is evaluation on {count} diagrams"))
}

/// `S^i` decided directly: every component at an object `i p` is a bijection.
fn in_s_i(f: &SetMap, i: &PointedFunctor) -> bool {
    i.dom().objects().all(|p| f.component(i.on_object(p)).is_bijective())
}

fn criterion_8(a: &Adjunction) -> Verdict {
    let family: Vec<&Arc<SetDiagram>> = a
        .fixtures_g
        .iter()
        .filter(|(n, _)| ["terminal", "rep(1)", "rep(2)", "rep(1,1)", "rep(2,1)"].contains(&n.as_str()))
        .map(|(_, y)| y)
        .collect();
    let maps: Vec<Vec<Vec<SetMap>>> = family
        .iter()
        .map(|x| {
            family
                .iter()
                .map(|y| enum_diagram_maps(x, y, DEFAULT_BUDGET).unwrap())
                .collect()
        })
        .collect();
    let s = LevelwiseBijections;
    let si = right_induced_predicate(&s, &a.i);
    let flat: Vec<SetMap> = maps.iter().flatten().flatten().cloned().collect();
    for f in &flat {
        let lib = si.contains(f).map_err(|e| e.to_string())?;
        ensure(lib == in_s_i(f, &a.i), || {
            "S^i disagrees with the direct predicate".into()
        })?;
    }
    let r = check_contains_isomorphisms(&si, &flat).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.witness.clone().unwrap())?;
    let mut pairs = Vec::new();
    for row in &maps {
        for (y, into_y) in row.iter().enumerate() {
            for out_of_y in &maps[y] {
                for f in into_y {
                    for g in out_of_y.iter() {
                        pairs.push((f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    let r2 = check_two_out_of_three(&si, &pairs).map_err(|e| e.to_string())?;
    ensure(r2.passed(), || r2.witness.clone().unwrap())?;
    Ok(format!(
        "{} isomorphisms in S^i; 2-out-of-3 on {} composable pairs",
        r.checked,
        pairs.len()
    ))
}

fn criterion_9() -> Verdict {
    let iso = Arc::new(walking_iso());
    let cl = classification(&RelativeCategory::all(iso.clone()).unwrap(), 3, 3).unwrap();
    for n in 0..=3 {
        for k in 0..=3 {
            let expected = 1usize << ((n + 1) * (k + 1));
            let size = cl.diagram.sizes[n][k];
            ensure(size == expected, || {
                format!("level ({n}, {k}) = {size}, expected {expected}")
            })?;
        }
    }
    let arrow = Arc::new(walking_arrow());
    let fixtures = vec![
        RelativeCategory::all(Arc::new(terminal_category())).unwrap(),
        RelativeCategory::identities(arrow.clone()).unwrap(),
        RelativeCategory::all(arrow.clone()).unwrap(),
        RelativeCategory::identities(iso.clone()).unwrap(),
        RelativeCategory::all(iso.clone()).unwrap(),
    ];
    let mut segal = 0;
    for r in &fixtures {
        let cl = classification(r, 3, 3).unwrap();
        let ids = cl.diagram.check_identities();
        ensure(ids.passed(), || ids.witness.clone().unwrap())?;
        for s in cl.diagram.horizontal.iter().chain(&cl.diagram.vertical) {
            for n in 2..=3 {
                let rep = segal_map_check(&SegalData::from_simplicial(s, n).unwrap());
                ensure(rep.bijective(), || format!("Segal map at n = {n}: {:?}", rep.witness))?;
                segal += 1;
            }
        }
    }
    let constant = |o: usize| {
        PointedFunctor::new(
            arrow.clone(),
            arrow.clone(),
            FunctorTable {
                objects: vec![o; 2],
                morphisms: vec![arrow.identity(o); 3],
            },
        )
        .unwrap()
    };
    let swap = PointedFunctor::new(
        iso.clone(),
        iso.clone(),
        FunctorTable {
            objects: vec![1, 0],
            morphisms: vec![3, 2, 1, 0],
        },
    )
    .unwrap();
    let transformations = [
        NatTransformation::new(constant(0), constant(1), vec![Some(2), Some(2)]).unwrap(),
        NatTransformation::identity(PointedFunctor::identity(arrow.clone())),
        NatTransformation::new(PointedFunctor::identity(iso.clone()), swap, vec![Some(1), Some(2)]).unwrap(),
    ];
    for p in &transformations {
        let r = homotopy_from_transformation(p, 3).unwrap();
        ensure(r.passed(), || r.witness.clone().unwrap())?;
    }
    Ok(format!(
        "walking-iso levels 2^((n+1)(k+1)) for n, k <= 3; {segal} Segal maps bijective; {} prisms pass through degree 3",
        transformations.len()
    ))
}

fn criterion_10() -> Verdict {
    let config = SuiteConfig::default();
    let first = run_suite(&config).map_err(|e| e.to_string())?;
    let second = run_suite(&config).map_err(|e| e.to_string())?;
    ensure(first.passed(), || {
        let f: Vec<String> = first
            .failures()
            .map(|c| format!("{}: {:?}", c.name, c.witness))
            .collect();
        format!("default suite fails: {}", f.join("; "))
    })?;
    let (a, b) = (first.to_json(), second.to_json());
    ensure(a == b, || "reports differ".into())?;
    ensure(first.to_csv() == second.to_csv(), || "csv reports differ".into())?;
    Ok(format!(
        "two default runs give identical {}-byte reports; the suite passes",
        a.len()
    ))
}

fn main() -> ExitCode {
    let adjunction = adjunction_inputs();
    let criteria: Vec<Criterion> = vec![
        ("category axioms of G* (N=2, q_max=2)", Box::new(criterion_1)),
        ("hom-count laws", Box::new(criterion_2)),
        ("functor laws for ∧ and i", Box::new(criterion_3)),
        ("emptiness facts", Box::new(criterion_4)),
        (
            "adjunction triangles and hom bijection",
            Box::new(|| criterion_5(&adjunction)),
        ),
        ("unit isomorphism", Box::new(|| criterion_6(&adjunction))),
        ("density oracle", Box::new(|| criterion_7(&adjunction))),
        ("right-induced closures", Box::new(|| criterion_8(&adjunction))),
        ("classification, Segal maps, prisms", Box::new(criterion_9)),
        ("determinism of reports", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
