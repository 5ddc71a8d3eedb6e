use std::collections::BTreeSet;

use finprop_core::chains::{act_term, SimplicialChain};
use finprop_core::graph::{Generator, GraphTerm, Vertex};
use finprop_core::rational::q;
use finprop_core::simplex::{face_action, product_grid_coverage};
use itertools::Itertools;

fn faces_of(d: usize) -> Vec<Vec<usize>> {
    (0..=d).flat_map(|k| SimplicialChain::basis_faces(d, k)).collect()
}

fn corolla(generator: &Generator) -> GraphTerm {
    let params = match generator {
        Generator::Product | Generator::CounitHomotopy => vec![q(1, 2)],
        _ => Vec::new(),
    };
    GraphTerm::corolla(Vertex::new(generator.clone(), params))
}

fn chain_cells(generator: &Generator, d: usize, faces: &[Vec<usize>]) -> BTreeSet<Vec<Vec<usize>>> {
    act_term(&corolla(generator), d, faces).unwrap().terms().iter().cloned().collect()
}

#[test]
fn swept_cells_match_the_chain_action_on_single_faces() {
    for d in 0..=6 {
        for face in faces_of(d) {
            let f = std::slice::from_ref(&face);
            for generator in [Generator::Coproduct, Generator::Counit, Generator::CounitHomotopy] {
                assert_eq!(face_action(&generator, f), chain_cells(&generator, d, f), "{generator:?} on {face:?}");
            }
        }
    }
}

#[test]
fn swept_cells_match_the_chain_action_on_pairs() {
    for d in 0..=6 {
        let faces = faces_of(d);
        for (a, b) in faces.iter().cartesian_product(&faces) {
            let pair = [a.clone(), b.clone()];
            assert_eq!(
                face_action(&Generator::Product, &pair),
                chain_cells(&Generator::Product, d, &pair),
                "product on {a:?}, {b:?}"
            );
        }
    }
}

#[test]
fn product_sweeps_the_joined_face() {
    for d in 1..=4 {
        let faces = faces_of(d);
        for (a, b) in faces.iter().cartesian_product(&faces) {
            let union: Vec<usize> = a.iter().chain(b).copied().sorted().dedup().collect();
            assert_eq!(product_grid_coverage(d, a, b, 64), union, "{a:?}, {b:?}");
        }
    }
}
