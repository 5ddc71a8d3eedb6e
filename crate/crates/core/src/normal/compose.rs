//! Vertical composition of normal forms by rectangle refinement.

use num::{Signed, Zero};

use super::{MSElement, NormalError, WeightedSurjection};
use crate::rational::Q;

/// Composes `top` (n, k) with `bottom` (k, m).
///
/// Intermediate wire j carries a band of width W_j, the total weight of
/// bottom block j. The strands of `top` ending at wire j cut that band in
/// proportion to their weights, the strands of bottom block j cut it by
/// their own weights, and the common refinement gives the composite
/// strands. Zero-width pieces are dropped and neighbouring pieces of one
/// input that reach the same output are merged.
pub fn compose_weighted(top: &MSElement, bottom: &MSElement) -> Result<MSElement, NormalError> {
    let (n, k) = top.biarity();
    let (k2, _) = bottom.biarity();
    if k != k2 {
        return Err(NormalError::BiarityMismatch(top.biarity(), bottom.biarity()));
    }
    let (top, bottom) = match (top, bottom) {
        (_, MSElement::Counit { .. }) => return Ok(MSElement::Counit { n }),
        (MSElement::Surjection(t), MSElement::Surjection(b)) => (t, b),
        (MSElement::Counit { .. }, MSElement::Surjection(_)) => {
            unreachable!("a surjection of biarity (0, m) needs m = 0")
        }
    };
    Ok(MSElement::Surjection(compose_surjections(top, bottom)?))
}

fn compose_surjections(top: &WeightedSurjection, bottom: &WeightedSurjection) -> Result<WeightedSurjection, NormalError> {
    let widths: Vec<Q> = bottom.blocks().iter().map(|b| b.iter().map(|s| s.1.clone()).sum()).collect();

    // start of every top strand inside its wire, in units of the wire width
    let mut offsets = vec![Q::zero(); top.m()];
    let mut blocks = Vec::with_capacity(top.n());
    for block in top.blocks() {
        let mut out: Vec<(usize, Q)> = Vec::new();
        for (wire, a) in block {
            let j = wire - 1;
            let lo = &offsets[j] * &widths[j];
            let hi = (&offsets[j] + a) * &widths[j];
            offsets[j] += a;
            let mut start = Q::zero();
            for (u, b) in &bottom.blocks()[j] {
                let end = &start + b;
                let overlap = hi.clone().min(end.clone()) - lo.clone().max(start.clone());
                if overlap.is_positive() {
                    match out.last_mut() {
                        Some((v, w)) if v == u => *w += overlap,
                        _ => out.push((*u, overlap)),
                    }
                }
                start = end;
            }
        }
        blocks.push(out);
    }
    WeightedSurjection::new(top.n(), bottom.m(), blocks)
}
