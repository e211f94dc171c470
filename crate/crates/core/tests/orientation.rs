mod common;

use ak_core::homology::{class_basis, express, Expressed};
use ak_core::multigraph::automorphisms;
use ak_core::orientation::{
    automorphism_sign, automorphism_sign_closed_form, classify, h1_action_sign, h1_action_sign_closed_form,
    h1_action_sign_with_tree, relative_sign, EdgeDirections, LabelledGraph, OrientedLabelling, SpanningTree,
};
use ak_core::perm::{self, Sign};
use ak_core::{Convention, DartGraph, TadpolePolicy};
use common::{all_classes, random_graph, random_iso, rng};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const CONVENTIONS: [Convention; 2] = [Convention::Even, Convention::Odd];

fn random_directions<R: Rng>(g: &DartGraph, r: &mut R) -> EdgeDirections {
    EdgeDirections(g.edges().into_iter().map(|(a, b)| if r.gen() { a } else { b }).collect())
}

fn random_labelling<R: Rng>(g: &DartGraph, r: &mut R) -> OrientedLabelling {
    let mut vl: Vec<usize> = (0..g.num_vertices()).collect();
    let mut el: Vec<usize> = (0..g.num_edges()).collect();
    vl.shuffle(r);
    el.shuffle(r);
    OrientedLabelling::new(g, vl, &el, &random_directions(g, r)).unwrap()
}

#[test]
fn cycle_space_determinant_matches_closed_form() {
    let mut r = rng(3);
    for g in all_classes(4) {
        for iso in automorphisms(&g) {
            for _ in 0..3 {
                let dirs = random_directions(&g, &mut r);
                assert_eq!(h1_action_sign(&g, &dirs, &iso), h1_action_sign_closed_form(&g, &dirs, &iso));
                for c in CONVENTIONS {
                    assert_eq!(
                        automorphism_sign(c, &g, &dirs, &iso),
                        automorphism_sign_closed_form(c, &g, &dirs, &iso)
                    );
                }
            }
        }
    }
}

#[test]
fn cycle_space_sign_independent_of_tree_and_directions() {
    let mut r = rng(5);
    for g in all_classes(3) {
        for iso in automorphisms(&g) {
            let base = h1_action_sign(&g, &EdgeDirections::reference(&g), &iso);
            for _ in 0..10 {
                let mut order: Vec<usize> = (0..g.num_darts()).collect();
                order.shuffle(&mut r);
                let root = r.gen_range(0..g.num_vertices());
                let tree = SpanningTree::bfs(&g, root, Some(&order));
                let dirs = random_directions(&g, &mut r);
                assert_eq!(h1_action_sign_with_tree(&g, &dirs, &iso, &tree), base, "{g:?}");
            }
        }
    }
}

#[test]
fn automorphism_signs_are_homomorphisms() {
    let mut r = rng(7);
    let graphs: Vec<DartGraph> = all_classes(4).into_iter().filter(|g| automorphisms(g).len() > 1).collect();
    for _ in 0..1000 {
        let g = graphs.choose(&mut r).unwrap();
        let auts = automorphisms(g);
        let (a, b) = (auts.choose(&mut r).unwrap(), auts.choose(&mut r).unwrap());
        let dirs = random_directions(g, &mut r);
        for c in CONVENTIONS {
            let lhs = automorphism_sign(c, g, &dirs, &a.compose(b));
            assert_eq!(lhs, automorphism_sign(c, g, &dirs, a) * automorphism_sign(c, g, &dirs, b));
        }
    }
}

#[test]
fn transported_labelling_differs_by_the_automorphism_sign() {
    let mut r = rng(9);
    for g in all_classes(3) {
        for iso in automorphisms(&g) {
            let l = random_labelling(&g, &mut r);
            for c in CONVENTIONS {
                let s = relative_sign(c, &g, &l.transport(&iso), &l);
                assert_eq!(s, automorphism_sign(c, &g, &l.directions(&g), &iso), "{g:?} {c:?}");
            }
        }
    }
}

#[test]
fn label_change_rules() {
    let g = ak_core::multigraph::named::k4();
    let l = OrientedLabelling::reference(&g);
    let swap = |n: usize| {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(0, 1);
        p
    };
    let edge_swap = l.relabel(&swap(6), &perm::identity(4));
    let vertex_swap = l.relabel(&perm::identity(6), &swap(4));
    let mut reversed = l.clone();
    reversed.reverse_edge_at(&g, 0);
    let expect = [
        (Convention::Even, [Sign::Minus, Sign::Plus, Sign::Plus]),
        (Convention::Odd, [Sign::Plus, Sign::Minus, Sign::Minus]),
    ];
    for (c, [e, v, d]) in expect {
        assert_eq!(relative_sign(c, &g, &edge_swap, &l), e);
        assert_eq!(relative_sign(c, &g, &vertex_swap, &l), v);
        assert_eq!(relative_sign(c, &g, &reversed, &l), d);
    }
}

#[test]
fn classification_is_relabelling_invariant() {
    let mut r = rng(13);
    for g in all_classes(4) {
        for c in CONVENTIONS {
            let base = classify(&g, c);
            for _ in 0..100 {
                let h = random_iso(g.num_vertices(), &mut r).apply(&g);
                let other = classify(&h, c);
                assert_eq!(other.rep, base.rep);
                assert_eq!(other.is_generator(), base.is_generator());
            }
        }
    }
}

#[test]
fn express_is_equivariant() {
    let mut r = rng(17);
    for k in 1..=3 {
        for c in CONVENTIONS {
            let basis = class_basis(k, c, TadpolePolicy::Include).unwrap();
            for g in &basis.census {
                for _ in 0..5 {
                    let lg = LabelledGraph { graph: g.rep.clone(), labelling: random_labelling(&g.rep, &mut r) };
                    let base = express(&lg, &basis).unwrap();
                    // moving darts around does not change the labelled graph
                    let iso = random_iso(g.rep.num_vertices(), &mut r);
                    let moved = LabelledGraph { graph: iso.apply(&g.rep), labelling: lg.labelling.transport(&iso) };
                    assert_eq!(express(&moved, &basis).unwrap(), base);
                    // a label change multiplies by its relative sign
                    let other = random_labelling(&g.rep, &mut r);
                    let s = relative_sign(c, &g.rep, &other, &lg.labelling);
                    let changed = express(&LabelledGraph { graph: g.rep.clone(), labelling: other }, &basis).unwrap();
                    match (base, changed) {
                        (Expressed::Class { class_id: a, sign: x }, Expressed::Class { class_id: b, sign: y }) => {
                            assert_eq!(a, b);
                            assert_eq!(y, s * x);
                        }
                        (Expressed::Zero { .. }, Expressed::Zero { .. }) => {}
                        other => panic!("inconsistent images {other:?}"),
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relative_sign_is_a_cocycle(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let g = random_graph(k, true, &mut r);
        let (a, b, c) = (random_labelling(&g, &mut r), random_labelling(&g, &mut r), random_labelling(&g, &mut r));
        for conv in CONVENTIONS {
            prop_assert_eq!(
                relative_sign(conv, &g, &a, &c),
                relative_sign(conv, &g, &a, &b) * relative_sign(conv, &g, &b, &c)
            );
        }
    }

    #[test]
    fn zero_status_survives_relabelling(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let g = random_graph(k, true, &mut r);
        let h = random_iso(g.num_vertices(), &mut r).apply(&g);
        for conv in CONVENTIONS {
            prop_assert_eq!(classify(&g, conv).is_generator(), classify(&h, conv).is_generator());
        }
    }
}
