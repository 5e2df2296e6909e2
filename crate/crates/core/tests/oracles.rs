//! Worked examples and brute-force oracles for the enumerators.

use std::sync::Arc;

use gstar::category::FinCategory;
use gstar::coend::{
    counit_epsilon, right_induced_predicate, yoneda_density_oracle, LevelwiseBijections, Lift, MorphismClass,
};
use gstar::diagram::{enum_diagram_maps, nerve_levelwise, SetDiagram, SetMap, DEFAULT_BUDGET};
use gstar::fixtures::{
    fskel_fixtures, indiscrete_gamma_category, monoid_gamma_set, representable, walking_arrow, walking_iso,
    RandomDiagrams,
};
use gstar::pointed::PointedMap;
use gstar::relative::{classification, RelativeCategory};
use gstar::simplicial::{nerve_simplices, SimplicialSet};
use gstar::skeletal::{Fskel, ObjectTuple};
use gstar::tuple::Gstar;

fn all_pointed_maps(dom: usize, cod: usize) -> Vec<PointedMap> {
    let mut out = vec![Vec::new()];
    for _ in 0..dom {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=cod).map(move |y| {
                    let mut v = v.clone();
                    v.push(y);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| PointedMap::new(dom, cod, v).unwrap()).collect()
}

/// Every natural transformation by trying every family of components.
fn brute_force_maps(x: &Arc<SetDiagram>, y: &Arc<SetDiagram>) -> Vec<Vec<PointedMap>> {
    let c = x.index();
    let mut families: Vec<Vec<PointedMap>> = vec![Vec::new()];
    for a in c.objects() {
        let choices = all_pointed_maps(x.size_at(a), y.size_at(a));
        families = families
            .into_iter()
            .flat_map(|f| {
                choices.iter().map(move |m| {
                    let mut f = f.clone();
                    f.push(m.clone());
                    f
                })
            })
            .collect();
    }
    families
        .into_iter()
        .filter(|alpha| {
            c.morphism_ids().all(|h| {
                let (a, b) = (c.dom(h), c.cod(h));
                alpha[b].after(x.map(h)).unwrap() == y.map(h).after(&alpha[a]).unwrap()
            })
        })
        .collect()
}

#[test]
fn diagram_map_enumeration_matches_brute_force() {
    let fs = Fskel::new(2).unwrap();
    let mut diagrams: Vec<Arc<SetDiagram>> = fskel_fixtures(&fs)
        .unwrap()
        .into_iter()
        .map(|(_, d)| d)
        .filter(|d| d.total_size() <= 6)
        .collect();
    let mut gen = RandomDiagrams::over_fskel(&fs, 7, 3);
    diagrams.extend((0..6).map(|_| Arc::new(gen.next_diagram().unwrap())));
    for x in &diagrams {
        for y in &diagrams {
            let fast: Vec<Vec<PointedMap>> = enum_diagram_maps(x, y, DEFAULT_BUDGET)
                .unwrap()
                .iter()
                .map(|m| m.components().to_vec())
                .collect();
            let mut slow = brute_force_maps(x, y);
            slow.sort();
            let mut sorted = fast.clone();
            sorted.sort();
            assert_eq!(sorted, slow);
            assert_eq!(fast, sorted, "enumeration order is lexicographic");
        }
    }
}

#[test]
fn budget_exhaustion_is_an_error() {
    let fs = Fskel::new(2).unwrap();
    let z2 = Arc::new(monoid_gamma_set(&fs, 2).unwrap());
    assert!(matches!(
        enum_diagram_maps(&z2, &z2, 1),
        Err(gstar::Error::BudgetExceeded { .. })
    ));
}

#[test]
fn lift_of_rep1_at_two() {
    let g = Gstar::over(Fskel::new(2).unwrap(), 2).unwrap();
    let i = g.tuples().length_one_inclusion().unwrap();
    let c = g.fskel().category();
    let rep1 = Arc::new(representable(c, g.fskel().object(1).unwrap()).unwrap());
    let l = Lift::new(rep1, &i).unwrap();
    let at = |t: &str| {
        l.diagram()
            .size_at(g.tuples().object_id(&t.parse::<ObjectTuple>().unwrap()).unwrap())
    };
    // F(<1>, <2>) has three elements, two of them nonzero
    assert_eq!(at("(2)"), 2);
    assert_eq!(at("()"), 0);
    // L of a representable is representable: G*((1), (1,1)) has two nonzero maps
    assert_eq!(at("(1,1)"), 2);
    assert!(l.check_well_defined().passed());
}

#[test]
fn density_of_a_representable() {
    let fs = Fskel::new(2).unwrap();
    let rep = Arc::new(representable(fs.category(), fs.object(1).unwrap()).unwrap());
    assert_eq!(rep.size_at(fs.object(2).unwrap()) + 1, 3);
    assert!(yoneda_density_oracle(&rep, None).unwrap().passed());
}

#[test]
fn counit_of_rep11_is_right_induced_but_not_an_isomorphism() {
    let g = Gstar::over(Fskel::new(2).unwrap(), 2).unwrap();
    let i = g.tuples().length_one_inclusion().unwrap();
    let t = g.tuples().object_id(&"(1,1)".parse().unwrap()).unwrap();
    let y = Arc::new(representable(g.category(), t).unwrap());
    let (_, eps) = counit_epsilon(&y, &i).unwrap();
    let si = right_induced_predicate(&LevelwiseBijections, &i);
    assert!(si.contains(&eps).unwrap());
    assert!(!eps.is_levelwise_bijection());
    assert!(!LevelwiseBijections.contains(&eps).unwrap());
}

#[test]
fn row_zero_of_the_classification_is_the_nerve_of_the_weak_equivalences() {
    let arrow = Arc::new(walking_arrow());
    let iso = Arc::new(walking_iso());
    for r in [
        RelativeCategory::all(arrow.clone()).unwrap(),
        RelativeCategory::identities(arrow).unwrap(),
        RelativeCategory::isomorphisms(iso.clone()).unwrap(),
        RelativeCategory::identities(iso).unwrap(),
    ] {
        let cl = classification(&r, 1, 3).unwrap();
        let (w, _) = r.weq_subcategory().unwrap();
        for k in 0..=3 {
            assert_eq!(cl.diagram.sizes[0][k], nerve_simplices(&w, k).len());
        }
    }
}

#[test]
fn nerve_of_the_walking_arrow() {
    let (s, _): (SimplicialSet, _) = SimplicialSet::nerve(&walking_arrow(), 2);
    assert_eq!(s.sizes, vec![2, 3, 4]);
    assert!(s.check_identities().passed());
}

#[test]
fn nerve_of_an_indiscrete_category() {
    // N_k of the indiscrete category on m objects has m^(k+1) simplices
    let c: FinCategory = gstar::fixtures::indiscrete(3);
    for k in 0..=3 {
        assert_eq!(nerve_simplices(&c, k).len(), 3usize.pow(k as u32 + 1));
    }
}

#[test]
fn levelwise_nerve_of_the_indiscrete_gamma_category() {
    let fs = Fskel::new(2).unwrap();
    let x = indiscrete_gamma_category(&fs).unwrap();
    let nerve = nerve_levelwise(&x, 2).unwrap();
    assert!(nerve.check_identities().passed());
    for n in 0..=2 {
        for k in 0..=2 {
            assert_eq!(nerve.counts()[n][k], (n + 1).pow(k as u32 + 1));
        }
    }
}

#[test]
fn unit_of_every_fixture_is_a_levelwise_bijection() {
    let g = Gstar::over(Fskel::new(2).unwrap(), 2).unwrap();
    let i = g.tuples().length_one_inclusion().unwrap();
    for (name, x) in fskel_fixtures(g.fskel()).unwrap() {
        let eta: SetMap = Lift::new(x, &i).unwrap().unit().unwrap();
        assert!(eta.is_levelwise_bijection(), "{name}");
    }
}
