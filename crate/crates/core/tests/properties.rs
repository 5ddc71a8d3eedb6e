//! Property tests for the structural invariants of graphs, presentations,
//! normal forms, chains, point evaluation and surfaces.
//!
//! Random terms come from the crate's seeded generators, driven by a seed
//! that proptest chooses and shrinks.

use finprop_core::chains::{act_term, act_type, cup_i, Cochain, SimplicialChain, SimplicialComplexData};
use finprop_core::graph::{Generator, GraphTerm, Target};
use finprop_core::normal::{compose_weighted, leibniz_push, normalize, MSElement, WeightedSurjection};
use finprop_core::perm::Permutation;
use finprop_core::presentation::{
    apply_attaching, apply_relations_s, delta, eps, from_edge_weights, mu, padded, phi, stabilization_homotopy,
    stabilize_add, stabilize_remove, to_edge_weights, PropTag,
};
use finprop_core::random::{random_permutation, random_s_term, random_simplex_point, random_weighted, TermShape};
use finprop_core::rational::{q, Q};
use finprop_core::simplex::{eval_term, SimplexPoint};
use finprop_core::surface::{
    arc_of_strand, degenerate_strand, element_surface, removable_strands, surface_summary, to_ribbon,
};
use finprop_core::term::parse_term;
use num::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small() -> TermShape {
    TermShape { max_vertices: 8, ..TermShape::default() }
}

/// A random term with exactly `n` inputs.
fn term_with_inputs(rng: &mut ChaCha8Rng, n: usize) -> GraphTerm {
    if n == 0 || n > 3 {
        return GraphTerm::unit(n);
    }
    let shape = TermShape { max_inputs: n, ..small() };
    for _ in 0..200 {
        let g = random_s_term(rng, &shape);
        if g.inputs() == n {
            return g;
        }
    }
    GraphTerm::unit(n)
}

fn then(a: &GraphTerm, b: &GraphTerm) -> GraphTerm {
    a.then(b).expect("biarities agree")
}

fn point(rng: &mut ChaCha8Rng, d: usize) -> SimplexPoint<Q> {
    SimplexPoint::new(random_simplex_point(rng, d, 10)).expect("sorted")
}

fn interior(rng: &mut ChaCha8Rng) -> Q {
    let d: i64 = rng.gen_range(2..=12);
    Q::new(rng.gen_range(1..d).into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertical_composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_s_term(&mut r, &small());
        let b = term_with_inputs(&mut r, a.outputs());
        let c = term_with_inputs(&mut r, b.outputs());
        prop_assert!(then(&then(&a, &b), &c).iso_equal(&then(&a, &then(&b, &c))));
        prop_assert!(then(&GraphTerm::unit(a.inputs()), &a).iso_equal(&a));
        prop_assert!(then(&a, &GraphTerm::unit(a.outputs())).iso_equal(&a));
    }

    #[test]
    fn horizontal_composition_and_interchange(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_s_term(&mut r, &small()), random_s_term(&mut r, &small()));
        let c = term_with_inputs(&mut r, a.outputs());
        let d = term_with_inputs(&mut r, b.outputs());
        prop_assert!(a.beside(&b).beside(&c).iso_equal(&a.beside(&b.beside(&c))));
        prop_assert!(a.beside(&GraphTerm::unit(0)).iso_equal(&a));
        prop_assert!(then(&a.beside(&b), &c.beside(&d)).iso_equal(&then(&a, &c).beside(&then(&b, &d))));
    }

    #[test]
    fn permutations_act(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        let (s, t) = (random_permutation(&mut r, g.inputs()), random_permutation(&mut r, g.inputs()));
        let twice = g.permute_inputs(&s).unwrap().permute_inputs(&t).unwrap();
        prop_assert!(twice.iso_equal(&g.permute_inputs(&t.compose(&s).unwrap()).unwrap()));
        let m = g.outputs();
        let (u, v) = (random_permutation(&mut r, m), random_permutation(&mut r, m));
        let twice = g.permute_outputs(&u).unwrap().permute_outputs(&v).unwrap();
        prop_assert!(twice.iso_equal(&g.permute_outputs(&v.compose(&u).unwrap()).unwrap()));
        prop_assert!(g.permute_inputs(&Permutation::identity(g.inputs())).unwrap().iso_equal(&g));
    }

    #[test]
    fn iso_equal_is_an_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        prop_assert!(g.iso_equal(&g));
        // wrapping in explicit strand permutations is undone by absorption
        let p = random_permutation(&mut r, g.outputs());
        let box_ = GraphTerm::corolla(finprop_core::graph::Vertex::plain(Generator::Symmetry(p.clone())));
        let unbox = GraphTerm::permutation(&p.inverse());
        let wrapped = if g.outputs() > 0 { then(&then(&g, &box_), &unbox) } else { g.clone() };
        let absorbed = wrapped.absorb_equivalences();
        prop_assert!(absorbed.iso_equal(&g));
        prop_assert!(g.iso_equal(&absorbed));
        prop_assert!(absorbed.absorb_equivalences().iso_equal(&g.absorb_equivalences()));
    }

    #[test]
    fn attaching_and_relations_are_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        let a = apply_attaching(&g, PropTag::S).unwrap();
        prop_assert!(apply_attaching(&a, PropTag::S).unwrap().iso_equal(&a));
        prop_assert_eq!(a.biarity(), g.biarity());
        let s = apply_relations_s(&g).unwrap();
        prop_assert!(apply_relations_s(&s).unwrap().iso_equal(&s));
        prop_assert_eq!(s.biarity(), g.biarity());
        prop_assert_eq!(normalize(&s).unwrap(), normalize(&g).unwrap());
        prop_assert_eq!(normalize(&leibniz_push(&g).unwrap()).unwrap(), normalize(&g).unwrap());
    }

    #[test]
    fn edge_weights_are_valid_and_conserved(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        let w = to_edge_weights(&g).unwrap();
        prop_assert!(w.check(&g).is_ok());
        let total: Q = w.input_weights(&g).into_iter().sum();
        prop_assert_eq!(total, Q::from_integer((g.outputs() as i64).into()));
        let back = from_edge_weights(&g, &w).unwrap();
        let inc = g.incidence();
        for (v, vertex) in g.vertices().iter().enumerate() {
            if vertex.generator == Generator::Product && !w.weights[inc.vertex_out[v][0]].is_zero() {
                prop_assert_eq!(&back.graph.vertices()[v].params, &vertex.params);
            }
        }
    }

    #[test]
    fn normal_forms_are_stable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        let e = normalize(&g).unwrap();
        prop_assert_eq!(normalize(&e.to_graph()).unwrap(), e.clone());
        prop_assert_eq!(MSElement::parse(&e.to_string()).unwrap(), e.clone());
        prop_assert_eq!(MSElement::from_json(&e.to_json()).unwrap(), e.clone());
        if let MSElement::Surjection(x) = &e {
            let mut sums = vec![Q::zero(); x.m()];
            for (v, w) in x.blocks().iter().flatten() {
                sums[v - 1] += w;
            }
            prop_assert!(sums.iter().all(|s| s.is_one()));
        }
    }

    #[test]
    fn single_relations_do_not_change_normal_forms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        let m = g.outputs();
        prop_assume!(m >= 1);
        let base = normalize(&g).unwrap();
        let (s, t) = (interior(&mut r), interior(&mut r));
        let at = r.gen_range(0..m);
        let graft = |x: &GraphTerm| then(&g, &padded(at, x, m - at - x.inputs()));
        // involutive and counit relations on one strand
        prop_assert_eq!(normalize(&graft(&then(&delta(), &mu(s.clone())))).unwrap(), base.clone());
        prop_assert_eq!(normalize(&graft(&then(&delta(), &GraphTerm::unit(1).beside(&eps())))).unwrap(), base.clone());
        // coassociativity
        let left = then(&graft(&delta()), &padded(at, &delta(), m - at));
        let right = then(&graft(&delta()), &padded(at + 1, &delta(), m - at - 1));
        prop_assert_eq!(normalize(&left).unwrap(), normalize(&right).unwrap());
        if m >= 2 {
            let at = r.gen_range(0..m - 1);
            let graft2 = |x: &GraphTerm| then(&g, &padded(at, x, m - at - x.inputs()));
            // commutativity at an output
            let swap = GraphTerm::permutation(&Permutation::transposition(2, 0, 1));
            let one = Q::one();
            prop_assert_eq!(
                normalize(&graft2(&mu(s.clone()))).unwrap(),
                normalize(&graft2(&then(&swap, &mu(&one - &s)))).unwrap()
            );
        }
        if m >= 3 {
            let at = r.gen_range(0..m - 2);
            let graft3 = |x: &GraphTerm| then(&g, &padded(at, x, m - at - 3));
            // associativity with matching input shares
            let one = Q::one();
            let v = &one - (&one - &s) * (&one - &t);
            let u = &t / &v;
            let left = then(&mu(s.clone()).beside(&GraphTerm::unit(1)), &mu(t.clone()));
            let right = then(&GraphTerm::unit(1).beside(&mu(u)), &mu(v));
            prop_assert_eq!(normalize(&graft3(&left)).unwrap(), normalize(&graft3(&right)).unwrap());
        }
    }

    #[test]
    fn weighted_composition_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (n, k, l, m) = (r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let a = MSElement::Surjection(random_weighted(&mut r, n, k, 2));
        let b = MSElement::Surjection(random_weighted(&mut r, k, l, 2));
        let c = MSElement::Surjection(random_weighted(&mut r, l, m, 2));
        // each composite agrees with normalizing the stacked graphs
        let ab = compose_weighted(&a, &b).unwrap();
        prop_assert_eq!(&ab, &normalize(&then(&a.to_graph(), &b.to_graph())).unwrap());
        let bc = compose_weighted(&b, &c).unwrap();
        let abc = then(&then(&a.to_graph(), &b.to_graph()), &c.to_graph());
        prop_assert_eq!(compose_weighted(&a, &bc).unwrap(), normalize(&abc).unwrap());
        prop_assert_eq!(compose_weighted(&MSElement::unit(n), &a).unwrap(), a.clone());
        prop_assert_eq!(compose_weighted(&a, &MSElement::unit(k)).unwrap(), a.clone());
        prop_assert_eq!(normalize(&a.to_graph().beside(&b.to_graph())).unwrap(), a.beside(&b));
    }

    #[test]
    fn steenrod_relation_on_simplices(seed in any::<u64>(), d in 1usize..=5, i in 1usize..=3) {
        let mut r = rng(seed);
        let k = SimplicialComplexData::simplex(d);
        let mut cocycle = |deg: usize| {
            let faces: Vec<Vec<usize>> = k.faces(deg).iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
            Cochain::new(deg, faces).unwrap().coboundary(&k)
        };
        let p = rng(seed ^ 1).gen_range(0..d);
        let q_ = rng(seed ^ 2).gen_range(0..d);
        let (a, b) = (cocycle(p), cocycle(q_));
        let lhs = cup_i(i, &a, &b, &k).coboundary(&k);
        let rhs = cup_i(i - 1, &a, &b, &k).add(&cup_i(i - 1, &b, &a, &k)).unwrap();
        prop_assert_eq!(lhs.support(), rhs.support());
    }

    #[test]
    fn evaluation_keeps_points_ordered(seed in any::<u64>(), d in 0usize..=5) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        let pts: Vec<_> = (0..g.inputs()).map(|_| point(&mut r, d)).collect();
        for out in eval_term(&g, &pts).unwrap() {
            prop_assert!(SimplexPoint::new(out.coords().to_vec()).is_ok());
            prop_assert_eq!(out.dim(), d);
        }
    }

    #[test]
    fn stabilization_pointwise(seed in any::<u64>(), d in 0usize..=4) {
        let mut r = rng(seed);
        let g = random_s_term(&mut r, &small());
        prop_assume!(g.outputs() >= 1);
        let n = g.inputs();
        let pts: Vec<_> = (0..n).map(|_| point(&mut r, d)).collect();
        // r∘i(g) is g precomposed with the end of the counit homotopy
        let ri = stabilize_remove(&stabilize_add(&g).unwrap()).unwrap();
        let bent = then(&phi(Q::one()).beside(&GraphTerm::unit(n - 1)), &g);
        prop_assert_eq!(eval_term(&ri, &pts).unwrap(), eval_term(&bent, &pts).unwrap());
        let straight = then(&phi(Q::zero()).beside(&GraphTerm::unit(n - 1)), &g);
        prop_assert_eq!(eval_term(&straight, &pts).unwrap(), eval_term(&g, &pts).unwrap());
        // the homotopy for i∘r at its two ends
        let ir = stabilize_add(&stabilize_remove(&g).unwrap()).unwrap();
        let h0 = stabilization_homotopy(&g, Q::zero()).unwrap();
        prop_assert_eq!(eval_term(&h0, &pts).unwrap(), eval_term(&ir, &pts).unwrap());
        let h1 = stabilization_homotopy(&g, Q::one()).unwrap();
        prop_assert_eq!(eval_term(&h1, &pts).unwrap(), eval_term(&bent, &pts).unwrap());
    }

    #[test]
    fn surfaces_are_faithful_and_consistent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let x = random_weighted(&mut r, n, m, 3);
        let rg = to_ribbon(&x).unwrap();
        let collapsed = rg.collapse_edges();
        prop_assert_eq!(collapsed.collapse_edges(), collapsed.clone());
        prop_assert_eq!(collapsed.recover().unwrap(), x.clone());
        let s = collapsed.summary();
        prop_assert!(s.consistent());
        prop_assert_eq!(s.topology(), rg.summary().topology());
        // every directed edge lies on exactly one ribbon loop
        let mut visits = vec![0; 2 * rg.edges().len()];
        for l in rg.ribbon_loops() {
            for h in l {
                visits[h] += 1;
            }
        }
        prop_assert!(visits.iter().all(|&v| v == 1));
    }

    #[test]
    fn arc_removal_matches_degeneration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let x = random_weighted(&mut r, n, m, 3);
        let removable = removable_strands(&x);
        prop_assume!(!removable.is_empty());
        let k = removable[r.gen_range(0..removable.len())];
        let g = to_ribbon(&x).unwrap().collapse_edges();
        let removed = g.remove_arc(arc_of_strand(&g, &x, k).unwrap()).unwrap();
        prop_assert_eq!(removed.summary(), element_surface(&degenerate_strand(&x, k).unwrap()).unwrap());
    }

    #[test]
    fn surfaces_of_composites(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (n, k, m) = (r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let a = random_weighted(&mut r, n, k, 2);
        let b = random_weighted(&mut r, k, m, 2);
        let fast = compose_weighted(&MSElement::Surjection(a.clone()), &MSElement::Surjection(b.clone())).unwrap();
        let slow = normalize(&then(&a.to_graph(), &b.to_graph())).unwrap();
        prop_assert_eq!(element_surface(&fast).unwrap(), element_surface(&slow).unwrap());
    }
}

#[test]
fn coproduct_action_is_coassociative_and_counital() {
    let left = parse_term("delta ; (delta | id)").unwrap();
    let right = parse_term("delta ; (id | delta)").unwrap();
    let counit_left = parse_term("delta ; (eps | id)").unwrap();
    let counit_right = parse_term("delta ; (id | eps)").unwrap();
    for d in 0..=6 {
        for k in 0..=d {
            for face in SimplicialChain::basis_faces(d, k) {
                let f = std::slice::from_ref(&face);
                assert_eq!(act_term(&left, d, f).unwrap(), act_term(&right, d, f).unwrap(), "{face:?}");
                let same = SimplicialChain::face(d, face.clone()).unwrap();
                assert_eq!(act_term(&counit_left, d, f).unwrap(), same);
                assert_eq!(act_term(&counit_right, d, f).unwrap(), same);
            }
        }
    }
}

#[test]
fn action_commutes_with_output_permutations() {
    let d = 4;
    for m in 2..=3 {
        for k in 0..=2 {
            for t in finprop_core::normal::enumerate_basis(1, m, k) {
                for p in Permutation::all(m) {
                    for face in (0..=d).flat_map(|j| SimplicialChain::basis_faces(d, j)) {
                        let moved = act_type(&t.permute_outputs(&p), d, std::slice::from_ref(&face)).unwrap();
                        let mut expected = SimplicialChain::zero(d, m);
                        for term in act_type(&t, d, std::slice::from_ref(&face)).unwrap().terms() {
                            let mut out = term.clone();
                            for (j, f) in term.iter().enumerate() {
                                out[p.apply(j)] = f.clone();
                            }
                            expected.toggle(out);
                        }
                        assert_eq!(moved, expected, "{t} under {:?}", p.one_based());
                    }
                }
            }
        }
    }
}

#[test]
fn fixed_relation_instances_hold_at_points() {
    let mut r = rng(3);
    for _ in 0..500 {
        let d = r.gen_range(0..=4);
        let (x, y) = (point(&mut r, d), point(&mut r, d));
        let s = interior(&mut r);
        let both = [x.clone(), y.clone()];
        let id_eps = eval_term(&GraphTerm::unit(1).beside(&eps()), &both).unwrap();
        assert_eq!(eval_term(&mu(Q::zero()), &both).unwrap(), id_eps);
        assert_eq!(eval_term(&then(&mu(s.clone()), &eps()), &both).unwrap(), Vec::new());
        assert_eq!(eval_term(&phi(Q::zero()), std::slice::from_ref(&x)).unwrap(), vec![x.clone()]);
        let pi2 = then(&delta(), &eps().beside(&GraphTerm::unit(1)));
        assert_eq!(eval_term(&phi(Q::one()), std::slice::from_ref(&x)).unwrap(), eval_term(&pi2, &[x]).unwrap());
    }
    let half = eval_term(&mu(q(1, 2)), &[SimplexPoint::new(vec![q(1, 5)]).unwrap(), SimplexPoint::new(vec![q(3, 5)]).unwrap()]);
    assert_eq!(half.unwrap()[0].coords(), &[q(2, 5)]);
    assert!(matches!(GraphTerm::unit(1).edges()[0].target, Target::Output(0)));
}

#[test]
fn identity_and_coproduct_surfaces() {
    let id = surface_summary(&WeightedSurjection::unit(1)).unwrap();
    assert_eq!((id.genus, id.boundary), (0, 2));
}

/// Normalizing a prefix before composing can differ from normalizing the
/// whole stack: the Leibniz case split reads weights set by the graph below.
#[test]
fn weighted_composition_depends_on_bracketing() {
    let a = MSElement::parse("surj n=1 m=2 : 2/1 1/1").unwrap();
    let b = MSElement::parse("surj n=2 m=1 : 1/1/6 ; 1/5/6").unwrap();
    let c = MSElement::parse("surj n=1 m=2 : 1/1 2/1").unwrap();
    let ab_c = compose_weighted(&compose_weighted(&a, &b).unwrap(), &c).unwrap();
    let a_bc = compose_weighted(&a, &compose_weighted(&b, &c).unwrap()).unwrap();
    assert_eq!(ab_c, MSElement::parse("surj n=1 m=2 : 1/1 2/1").unwrap());
    assert_eq!(a_bc, MSElement::parse("surj n=1 m=2 : 1/2/3 2/1 1/1/3").unwrap());
    let stacked = then(&then(&a.to_graph(), &b.to_graph()), &c.to_graph());
    assert_eq!(normalize(&stacked).unwrap(), a_bc);
}
