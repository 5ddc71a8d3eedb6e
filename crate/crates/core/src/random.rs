//! Seeded random generators for terms, strand patterns, weights and points.

use num::{One, Zero};
use rand::Rng;

use crate::graph::{Generator, GraphTerm, Vertex};
use crate::normal::{SurjectionType, WeightedSurjection};
use crate::perm::Permutation;
use crate::rational::Q;

/// A rational in [0, 1] with denominator at most `max_den`. Boundary values
/// and 1/2 are drawn with extra probability to exercise ties.
pub fn random_unit_rational<R: Rng>(rng: &mut R, max_den: i64) -> Q {
    match rng.gen_range(0..10) {
        0 => Q::zero(),
        1 => Q::one(),
        2 => Q::new(1.into(), 2.into()),
        _ => {
            let d = rng.gen_range(1..=max_den);
            Q::new(rng.gen_range(0..=d).into(), d.into())
        }
    }
}

/// A rational in the open interval (0, 1).
pub fn random_interior_rational<R: Rng>(rng: &mut R, max_den: i64) -> Q {
    let d = rng.gen_range(2..=max_den.max(2));
    Q::new(rng.gen_range(1..d).into(), d.into())
}

/// Options for [`random_s_term`].
#[derive(Debug, Clone)]
pub struct TermShape {
    pub max_vertices: usize,
    pub max_inputs: usize,
    /// Relative frequency of counits among the drawn generators.
    pub counit_weight: u32,
    /// Whether to interleave random wire permutations.
    pub permutations: bool,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape { max_vertices: 12, max_inputs: 3, counit_weight: 1, permutations: true }
    }
}

fn layer(width: usize, at: usize, g: &GraphTerm) -> GraphTerm {
    let used = g.inputs();
    GraphTerm::horizontal_compose(&[GraphTerm::unit(at), g.clone(), GraphTerm::unit(width - at - used)])
}

/// A random graph over ε, Δ, μ built layer by layer.
pub fn random_s_term<R: Rng>(rng: &mut R, shape: &TermShape) -> GraphTerm {
    let n = rng.gen_range(1..=shape.max_inputs);
    let target = rng.gen_range((shape.max_vertices + 1) / 2..=shape.max_vertices.max(1));
    let mut g = GraphTerm::unit(n);
    let mut placed = 0;
    while placed < target {
        let width = g.outputs();
        // products become likelier as the number of wires grows
        let choice = if width == 0 {
            1
        } else if rng.gen_ratio(shape.counit_weight, 12) {
            0
        } else if rng.gen_ratio(width as u32, width as u32 + 2) {
            2
        } else {
            1
        };
        let next = match choice {
            0 if width > 1 || rng.gen_bool(0.1) => {
                let at = rng.gen_range(0..width);
                layer(width, at, &GraphTerm::corolla(Vertex::plain(Generator::Counit)))
            }
            2 if width >= 2 => {
                let at = rng.gen_range(0..width - 1);
                let s = random_unit_rational(rng, 6);
                layer(width, at, &GraphTerm::corolla(Vertex::new(Generator::Product, vec![s])))
            }
            _ if width >= 1 => {
                let at = rng.gen_range(0..width);
                layer(width, at, &GraphTerm::corolla(Vertex::plain(Generator::Coproduct)))
            }
            _ => break,
        };
        g = g.then(&next).expect("layer widths agree");
        placed += 1;
        if shape.permutations && g.outputs() >= 2 && rng.gen_bool(0.3) {
            let p = random_permutation(rng, g.outputs());
            g = g.then(&GraphTerm::permutation(&p)).expect("permutation width");
        }
    }
    g.absorb_equivalences()
}

pub fn random_permutation<R: Rng>(rng: &mut R, k: usize) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (0..k).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffled identity is bijective")
}

/// A random nondegenerate strand pattern with at most `max_degree` extra strands.
pub fn random_surjection_type<R: Rng>(rng: &mut R, n: usize, m: usize, max_degree: usize) -> SurjectionType {
    assert!(m >= 1, "strand patterns need an output");
    loop {
        let r = m + rng.gen_range(0..=max_degree);
        let mut blocks = vec![Vec::new(); n];
        for _ in 0..r {
            blocks[rng.gen_range(0..n)].push(0);
        }
        let mut ok = true;
        for block in &mut blocks {
            let mut prev = 0;
            for v in block.iter_mut() {
                if m == 1 && prev == 1 {
                    ok = false;
                    break;
                }
                let mut x = rng.gen_range(1..=m);
                while x == prev {
                    x = rng.gen_range(1..=m);
                }
                *v = x;
                prev = x;
            }
        }
        if !ok {
            continue;
        }
        if let Ok(t) = SurjectionType::new(n, m, blocks) {
            return t;
        }
    }
}

/// Positive random weights summing to one at every output.
pub fn random_weights<R: Rng>(rng: &mut R, ty: &SurjectionType) -> WeightedSurjection {
    let strands: Vec<usize> = ty.blocks().iter().flatten().copied().collect();
    let raw: Vec<i64> = strands.iter().map(|_| rng.gen_range(1..=6)).collect();
    let mut totals = vec![0i64; ty.m() + 1];
    for (v, w) in strands.iter().zip(&raw) {
        totals[*v] += w;
    }
    let weights: Vec<Q> = strands.iter().zip(&raw).map(|(v, w)| Q::new((*w).into(), totals[*v].into())).collect();
    WeightedSurjection::from_type(ty, &weights).expect("weights sum to one")
}

/// A random weighted surjection of the given biarity.
pub fn random_weighted<R: Rng>(rng: &mut R, n: usize, m: usize, max_degree: usize) -> WeightedSurjection {
    let ty = random_surjection_type(rng, n, m, max_degree);
    random_weights(rng, &ty)
}

/// A random point of the d-simplex in ordered coordinates x_1 ≤ … ≤ x_d.
pub fn random_simplex_point<R: Rng>(rng: &mut R, d: usize, max_den: i64) -> Vec<Q> {
    let mut xs: Vec<Q> = (0..d).map(|_| random_unit_rational(rng, max_den)).collect();
    xs.sort();
    xs
}
