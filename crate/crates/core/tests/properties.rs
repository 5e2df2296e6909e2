//! Randomized invariants. Generated diagrams come from seeded samplers, so
//! a failing case is reproduced by its seed.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use gstar::coend::{check_left_triangle, check_right_triangle, check_unit_iso, yoneda_density_oracle};
use gstar::diagram::{nerve_levelwise, SetDiagram};
use gstar::fixtures::{indiscrete_gamma_category, RandomDiagrams};
use gstar::pointed::PointedMap;
use gstar::skeletal::Fskel;
use gstar::tuple::{compose_formula, Gstar};

fn g22() -> &'static Gstar {
    static G: OnceLock<Gstar> = OnceLock::new();
    G.get_or_init(|| Gstar::over(Fskel::new(2).unwrap(), 2).unwrap())
}

fn collapsible() -> &'static Gstar {
    static G: OnceLock<Gstar> = OnceLock::new();
    G.get_or_init(|| Gstar::collapsible(Fskel::new(2).unwrap(), 2).unwrap())
}

fn pointed_map(dom: usize, cod: usize) -> impl Strategy<Value = PointedMap> {
    proptest::collection::vec(0..=cod, dom).prop_map(move |v| PointedMap::new(dom, cod, v).unwrap())
}

fn composable_pointed() -> impl Strategy<Value = (PointedMap, PointedMap, PointedMap)> {
    (0..4usize, 0..4usize, 0..4usize, 0..4usize)
        .prop_flat_map(|(a, b, c, d)| (pointed_map(a, b), pointed_map(b, c), pointed_map(c, d)))
}

/// A random path `f, g, h` of composable morphisms, as indices into hom lists.
fn path(seed: (usize, usize, usize)) -> (usize, usize, usize) {
    let c = g22().category();
    let f = seed.0 % c.num_morphisms();
    let out = c.outgoing(c.cod(f));
    let g = out[seed.1 % out.len()];
    let out = c.outgoing(c.cod(g));
    let h = out[seed.2 % out.len()];
    (f, g, h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pointed_composition_is_associative((f, g, h) in composable_pointed()) {
        let left = h.after(&g).unwrap().after(&f).unwrap();
        let right = h.after(&g.after(&f).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        for k in 0..=f.dom() {
            prop_assert_eq!(left.apply(k), h.apply(g.apply(f.apply(k))));
        }
    }

    #[test]
    fn tuple_composition_follows_the_formula(seed in (any::<usize>(), any::<usize>(), any::<usize>())) {
        let g = g22();
        let c = g.category();
        let (f, h, _) = path(seed);
        let composite = g.tuples().morphism(c.compose(h, f)).clone();
        let formula = compose_formula(g.fskel().category(), 1, g.tuples().morphism(h), g.tuples().morphism(f)).unwrap();
        prop_assert_eq!(composite, formula);
    }

    #[test]
    fn tuple_composition_is_associative(seed in (any::<usize>(), any::<usize>(), any::<usize>())) {
        let c = g22().category();
        let (f, g, h) = path(seed);
        prop_assert_eq!(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f));
    }

    #[test]
    fn collapse_is_a_functor(seed in (any::<usize>(), any::<usize>(), any::<usize>())) {
        let g = g22();
        let c = g.category();
        let (f, h, _) = path(seed);
        let whole = g.collapse_morphism(c.compose(h, f)).unwrap();
        let parts = g.collapse_morphism(h).unwrap().after(&g.collapse_morphism(f).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn unit_and_triangles_on_random_diagrams(seed in any::<u64>()) {
        let g = g22();
        let i = g.tuples().length_one_inclusion().unwrap();
        let x = Arc::new(RandomDiagrams::over_fskel(g.fskel(), seed, 5).next_diagram().unwrap());
        prop_assert!(check_unit_iso(&x, &i).unwrap().passed());
        prop_assert!(check_left_triangle(&x, &i).unwrap().passed());
        prop_assert!(yoneda_density_oracle(&x, Some(&i)).unwrap().passed());
        let y = Arc::new(RandomDiagrams::new(g.category().clone(), seed, 4).next_diagram().unwrap());
        prop_assert!(check_right_triangle(&y, &i).unwrap().passed());
    }

    #[test]
    fn restriction_along_collapse_then_inclusion_is_the_identity(seed in any::<u64>()) {
        let g = collapsible();
        let i = g.tuples().length_one_inclusion().unwrap();
        let smash = g.collapse_functor(g.fskel()).unwrap();
        let x: SetDiagram = RandomDiagrams::over_fskel(g.fskel(), seed, 5).next_diagram().unwrap();
        let back = x.precompose(&smash).unwrap().precompose(&i).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn nerve_commutes_with_restriction() {
    let g = collapsible();
    let smash = g.collapse_functor(g.fskel()).unwrap();
    let x = indiscrete_gamma_category(g.fskel()).unwrap();
    let restricted = nerve_levelwise(&x.precompose(&smash).unwrap(), 2).unwrap();
    let nerve = nerve_levelwise(&x, 2).unwrap();
    for k in 0..=2 {
        assert_eq!(*restricted.levels[k], nerve.levels[k].precompose(&smash).unwrap());
    }
}
