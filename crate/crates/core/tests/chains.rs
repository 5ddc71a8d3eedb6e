use finprop_core::chains::{
    act_term, act_type, act_type_on, compose_surjections, ChainElement, SimplicialChain,
};
use finprop_core::normal::enumerate_basis;

fn faces_of(d: usize) -> Vec<Vec<usize>> {
    (0..=d).flat_map(|k| SimplicialChain::basis_faces(d, k)).collect()
}

#[test]
fn boundary_squares_to_zero_on_generators() {
    for n in 1..=2 {
        for m in 1..=4 {
            for k in 0..=4 {
                if n == 2 && m + k > 5 {
                    continue;
                }
                for t in enumerate_basis(n, m, k) {
                    let x = ChainElement::generator(t.clone());
                    assert!(x.differential().unwrap().differential().unwrap().is_zero(), "{t}");
                }
            }
        }
    }
}

#[test]
fn action_is_a_chain_map() {
    let d = 4;
    for m in 1..=3 {
        for k in 1..=3 {
            for t in enumerate_basis(1, m, k) {
                let x = ChainElement::generator(t.clone());
                let dx = x.differential().unwrap();
                for face in faces_of(d) {
                    let c = SimplicialChain::face(d, face.clone()).unwrap();
                    let lhs = dx.act(&c).unwrap();
                    let rhs = x.act(&c).unwrap().boundary().add(&x.act(&c.boundary()).unwrap());
                    assert_eq!(lhs, rhs, "{t} on {face:?}");
                }
            }
        }
    }
}

#[test]
fn act_type_agrees_with_graph_evaluation() {
    let d = 4;
    for n in 1..=2 {
        for m in 1..=3 {
            for k in 0..=2 {
                for t in enumerate_basis(n, m, k) {
                    let g = t.generic_weights().to_graph();
                    for a in faces_of(d) {
                        let inputs: Vec<Vec<Vec<usize>>> = if n == 1 {
                            vec![vec![a.clone()]]
                        } else {
                            faces_of(2).into_iter().map(|b| vec![a.clone(), b]).collect()
                        };
                        for faces in inputs {
                            assert_eq!(act_type(&t, d, &faces).unwrap(), act_term(&g, d, &faces).unwrap(), "{t} {faces:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn operadic_composition_matches_action() {
    let d = 4;
    for (mf, kf) in [(2, 0), (2, 1), (2, 2), (3, 1)] {
        for (mg, kg) in [(2, 0), (2, 1), (1, 0), (3, 0)] {
            for f in enumerate_basis(1, mf, kf) {
                for g in enumerate_basis(1, mg, kg) {
                    for slot in 1..=mf {
                        let comp = compose_surjections(&f, slot, &g);
                        for face in faces_of(d) {
                            let c = SimplicialChain::face(d, face.clone()).unwrap();
                            let mut lhs = SimplicialChain::zero(d, mf + mg - 1);
                            for t in &comp {
                                lhs = lhs.add(&act_type_on(t, &c).unwrap());
                            }
                            let first = act_type_on(&f, &c).unwrap();
                            let rhs = first.map_factor(slot - 1, mf + mg - 1, |x| act_type(&g, d, &[x.clone()]).unwrap());
                            assert_eq!(lhs, rhs, "{f} o_{slot} {g} on {face:?}");
                        }
                    }
                }
            }
        }
    }
}
