//! Reference implementations used to cross-check the main algorithms.
//!
//! Each function here computes its answer by a different route from the
//! code it checks: band tracing instead of rewriting, brute force instead of
//! closed formulas.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::graph::{Generator, GraphTerm, Source};
use crate::normal::{MSElement, NormalError, SurjectionType, WeightedSurjection};
use crate::presentation::to_edge_weights;
use crate::rational::Q;

/// A piece of the band of input `input`, covering `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Segment {
    input: usize,
    lo: Q,
    hi: Q,
}

fn width(segments: &[Segment]) -> Q {
    segments.iter().map(|s| &s.hi - &s.lo).sum()
}

/// Splits a band after total width `cut`.
fn split(segments: Vec<Segment>, cut: &Q) -> (Vec<Segment>, Vec<Segment>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut used = Q::zero();
    for s in segments {
        let w = &s.hi - &s.lo;
        let room = cut - &used;
        if !room.is_positive() {
            right.push(s);
        } else if w <= room {
            used += &w;
            left.push(s);
        } else {
            let mid = &s.lo + &room;
            left.push(Segment { input: s.input, lo: s.lo.clone(), hi: mid.clone() });
            right.push(Segment { input: s.input, lo: mid, hi: s.hi });
            used = cut.clone();
        }
    }
    (left, right)
}

/// Normal form by tracing input bands through the weighted graph.
///
/// Every input carries an interval as wide as its weight. A coproduct cuts
/// its band at the weight of its first output, a product concatenates its
/// two bands and a counit discards its band. At each output the arriving
/// pieces are sorted by input and position; per input, the pieces in
/// positional order form the strands.
pub fn band_normal_form(g: &GraphTerm) -> Result<MSElement, NormalError> {
    let g = g.absorb_equivalences();
    if g.outputs() == 0 {
        return Ok(MSElement::Counit { n: g.inputs() });
    }
    let weights = to_edge_weights(&g)?.weights;
    let inc = g.incidence();
    let order = g.topological_order().map_err(|_| NormalError::NotCanonical("cycle"))?;
    let mut bands: Vec<Option<Vec<Segment>>> = vec![None; g.edges().len()];
    for (e, edge) in g.edges().iter().enumerate() {
        if let Source::Input(i) = edge.source {
            bands[e] = Some(vec![Segment { input: i, lo: Q::zero(), hi: weights[e].clone() }]);
        }
    }
    for v in order {
        let ins: Vec<Vec<Segment>> = inc.vertex_in[v].iter().map(|&e| bands[e].take().expect("band computed")).collect();
        let outs = &inc.vertex_out[v];
        match g.vertices()[v].generator {
            Generator::Counit => {}
            Generator::Coproduct => {
                let band = ins.into_iter().next().unwrap();
                let (l, r) = split(band, &weights[outs[0]]);
                bands[outs[0]] = Some(l);
                bands[outs[1]] = Some(r);
            }
            Generator::Product => {
                bands[outs[0]] = Some(ins.into_iter().flatten().collect());
            }
            _ => return Err(NormalError::UnsupportedGenerator(g.vertices()[v].generator.name())),
        }
    }

    // input -> list of (lo, hi, output)
    let mut pieces: BTreeMap<usize, Vec<(Q, Q, usize)>> = BTreeMap::new();
    for j in 0..g.outputs() {
        let e = inc.output[j];
        let band = bands[e].take().expect("output band");
        debug_assert_eq!(width(&band), weights[e]);
        for s in band {
            if s.hi > s.lo {
                pieces.entry(s.input).or_default().push((s.lo, s.hi, j + 1));
            }
        }
    }
    let mut blocks = vec![Vec::new(); g.inputs()];
    for (i, mut list) in pieces {
        list.sort();
        let mut block: Vec<(usize, Q)> = Vec::new();
        for (lo, hi, j) in list {
            match block.last_mut() {
                Some((v, w)) if *v == j => *w += hi - lo,
                _ => block.push((j, hi - lo)),
            }
        }
        blocks[i] = block;
    }
    Ok(MSElement::Surjection(WeightedSurjection::new(g.inputs(), g.outputs(), blocks)?))
}

/// Brute-force count of maps {1..r} → {1..m} that are surjective and have no
/// two equal consecutive values, for a single input.
pub fn count_nondegenerate_surjections(m: usize, r: usize) -> usize {
    let mut count = 0;
    let total = m.pow(r as u32);
    'outer: for code in 0..total {
        let mut x = code;
        let mut seq = Vec::with_capacity(r);
        for _ in 0..r {
            seq.push(x % m);
            x /= m;
        }
        for w in seq.windows(2) {
            if w[0] == w[1] {
                continue 'outer;
            }
        }
        if (0..m).all(|v| seq.contains(&v)) {
            count += 1;
        }
    }
    count
}

/// Differential of a basis element by deleting one strand: the terms are
/// the patterns obtained by removing a strand whose output occurs at least
/// twice, keeping only nondegenerate results, summed mod 2.
pub fn strand_deletion_differential(t: &SurjectionType) -> BTreeMap<SurjectionType, bool> {
    let mut out: BTreeMap<SurjectionType, bool> = BTreeMap::new();
    for (bi, block) in t.blocks().iter().enumerate() {
        for p in 0..block.len() {
            if t.multiplicity(block[p]) < 2 {
                continue;
            }
            let mut blocks = t.blocks().to_vec();
            blocks[bi].remove(p);
            if let Ok(face) = SurjectionType::new(t.n(), t.m(), blocks) {
                let entry = out.entry(face).or_insert(false);
                *entry = !*entry;
            }
        }
    }
    out.retain(|_, v| *v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::normalize;
    use crate::term::parse_term;

    #[test]
    fn band_trace_examples() {
        for s in ["delta", "mu(1/3)", "mu(1/3) ; delta", "delta ; mu(1/2)", "delta ; (delta | id) ; (id | mu(1/3))"] {
            let g = parse_term(s).unwrap();
            assert_eq!(band_normal_form(&g).unwrap(), normalize(&g).unwrap(), "{s}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_nondegenerate_surjections(2, 3), 2);
        assert_eq!(count_nondegenerate_surjections(1, 2), 0);
        assert_eq!(count_nondegenerate_surjections(3, 3), 6);
    }
}
