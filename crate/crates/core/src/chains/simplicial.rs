//! Normalized simplicial chains of standard simplices over F₂ and the action
//! of MS chains on their tensor powers.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Generator, GraphTerm};
use crate::normal::SurjectionType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("face {0:?} is not a strictly increasing list of vertices of the {1}-simplex")]
    BadFace(Vec<usize>, usize),
    #[error("expected {expected} tensor factors, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("{0} vertices have no chain-level action")]
    Unsupported(&'static str),
}

/// A face of a standard simplex as its strictly increasing vertex list.
pub type Face = Vec<usize>;

/// A formal F₂-sum of tensor products of faces of Δ^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialChain {
    dim: usize,
    arity: usize,
    terms: BTreeSet<Vec<Face>>,
}

impl SimplicialChain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        SimplicialChain { dim, arity, terms: BTreeSet::new() }
    }

    /// The chain consisting of one tensor of faces.
    pub fn tensor(dim: usize, faces: Vec<Face>) -> Result<Self, ChainError> {
        for f in &faces {
            check_face(f, dim)?;
        }
        let arity = faces.len();
        Ok(SimplicialChain { dim, arity, terms: BTreeSet::from([faces]) })
    }

    /// A single face.
    pub fn face(dim: usize, face: Face) -> Result<Self, ChainError> {
        Self::tensor(dim, vec![face])
    }

    /// The scalar 1 (empty tensor).
    pub fn one(dim: usize) -> Self {
        SimplicialChain { dim, arity: 0, terms: BTreeSet::from([Vec::new()]) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeSet<Vec<Face>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds one term mod 2.
    pub fn toggle(&mut self, term: Vec<Face>) {
        debug_assert_eq!(term.len(), self.arity);
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    pub fn add(&self, other: &SimplicialChain) -> SimplicialChain {
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }

    /// All faces of Δ^d of the given dimension.
    pub fn basis_faces(dim: usize, k: usize) -> Vec<Face> {
        (0..=dim).combinations(k + 1).collect()
    }

    /// Simplicial boundary, summed over tensor factors without signs.
    /// Vertices have zero boundary.
    pub fn boundary(&self) -> SimplicialChain {
        let mut out = SimplicialChain::zero(self.dim, self.arity);
        for term in &self.terms {
            for (k, face) in term.iter().enumerate() {
                if face.len() < 2 {
                    continue;
                }
                for i in 0..face.len() {
                    let mut t = term.clone();
                    t[k].remove(i);
                    out.toggle(t);
                }
            }
        }
        out
    }

    /// Applies `f` to factor `k` of every term, splicing the resulting
    /// factors in its place. `out_arity` is the arity of the result.
    pub fn map_factor(&self, k: usize, out_arity: usize, f: impl Fn(&Face) -> SimplicialChain) -> SimplicialChain {
        let mut out = SimplicialChain::zero(self.dim, out_arity);
        for term in &self.terms {
            for piece in &f(&term[k]).terms {
                let mut t = term[..k].to_vec();
                t.extend(piece.iter().cloned());
                t.extend(term[k + 1..].iter().cloned());
                out.toggle(t);
            }
        }
        out
    }
}

impl fmt::Display for SimplicialChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let text = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter().map(|face| format!("[{}]", face.iter().join(","))).join("⊗")
                }
            })
            .join(" + ");
        write!(f, "{text}")
    }
}

fn check_face(face: &[usize], dim: usize) -> Result<(), ChainError> {
    if face.is_empty() || face.iter().any(|&v| v > dim) || face.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ChainError::BadFace(face.to_vec(), dim));
    }
    Ok(())
}

/// Alexander–Whitney splittings of a face into `r` consecutive overlapping
/// pieces: all sequences 0 = n_0 ≤ n_1 ≤ … ≤ n_r = q.
pub fn aw_splittings(face: &[usize], r: usize) -> Vec<Vec<Face>> {
    let q = face.len() - 1;
    let mut out = Vec::new();
    let mut cuts = vec![0usize; r + 1];
    cuts[r] = q;
    fn rec(face: &[usize], cuts: &mut Vec<usize>, t: usize, out: &mut Vec<Vec<Face>>) {
        let r = cuts.len() - 1;
        if t == r {
            out.push((0..r).map(|p| face[cuts[p]..=cuts[p + 1]].to_vec()).collect());
            return;
        }
        for c in cuts[t - 1]..=cuts[r] {
            cuts[t] = c;
            rec(face, cuts, t + 1, out);
        }
    }
    if r == 0 {
        return Vec::new();
    }
    if r == 1 {
        return vec![vec![face.to_vec()]];
    }
    rec(face, &mut cuts, 1, &mut out);
    out
}

/// Sorted union of faces, or `None` if two of them share a vertex.
pub fn join(faces: &[&Face]) -> Option<Face> {
    let mut all: Vec<usize> = faces.iter().flat_map(|f| f.iter().copied()).collect();
    let before = all.len();
    all.sort_unstable();
    all.dedup();
    (all.len() == before).then_some(all)
}

/// Action of a strand pattern on one tensor of faces (one face per input):
/// every input face is cut into as many consecutive pieces as the block has
/// strands, and the pieces reaching each output are joined. Empty blocks
/// evaluate the counit.
pub fn act_type(t: &SurjectionType, dim: usize, faces: &[Face]) -> Result<SimplicialChain, ChainError> {
    if faces.len() != t.n() {
        return Err(ChainError::Arity { expected: t.n(), found: faces.len() });
    }
    for f in faces {
        check_face(f, dim)?;
    }
    let mut out = SimplicialChain::zero(dim, t.m());
    if t.n() == 0 {
        return Ok(SimplicialChain::one(dim));
    }
    let mut per_input: Vec<Vec<Vec<Face>>> = Vec::with_capacity(t.n());
    for (block, face) in t.blocks().iter().zip(faces) {
        if block.is_empty() {
            if face.len() != 1 {
                return Ok(out);
            }
            per_input.push(vec![Vec::new()]);
        } else {
            per_input.push(aw_splittings(face, block.len()));
        }
    }
    for choice in per_input.iter().map(|v| v.iter()).multi_cartesian_product() {
        let mut buckets: Vec<Vec<&Face>> = vec![Vec::new(); t.m()];
        for (block, pieces) in t.blocks().iter().zip(&choice) {
            for (&j, piece) in block.iter().zip(pieces.iter()) {
                buckets[j - 1].push(piece);
            }
        }
        let joined: Option<Vec<Face>> = buckets.iter().map(|b| join(b)).collect();
        if let Some(term) = joined {
            out.toggle(term);
        }
    }
    Ok(out)
}

/// Linear extension of [`act_type`] to a chain of matching arity.
pub fn act_type_on(t: &SurjectionType, c: &SimplicialChain) -> Result<SimplicialChain, ChainError> {
    if c.arity != t.n() {
        return Err(ChainError::Arity { expected: t.n(), found: c.arity });
    }
    let mut out = SimplicialChain::zero(c.dim, t.m());
    for term in &c.terms {
        out = out.add(&act_type(t, c.dim, term)?);
    }
    Ok(out)
}

/// Action of an arbitrary graph over ε, Δ, μ and the counit homotopy on
/// one tensor of faces, evaluating vertex by vertex in topological order.
pub fn act_term(g: &GraphTerm, dim: usize, faces: &[Face]) -> Result<SimplicialChain, ChainError> {
    if faces.len() != g.inputs() {
        return Err(ChainError::Arity { expected: g.inputs(), found: faces.len() });
    }
    for f in faces {
        check_face(f, dim)?;
    }
    let g = g.absorb_equivalences();
    let mut out = SimplicialChain::zero(dim, g.outputs());
    for v in g.vertices() {
        match v.generator {
            Generator::Counit | Generator::Coproduct | Generator::Product => {}
            Generator::CounitHomotopy => return Ok(out),
            _ => return Err(ChainError::Unsupported(v.generator.name())),
        }
    }
    let inc = g.incidence();
    let order = g.topological_order().expect("valid graph is acyclic");
    let mut state: Vec<Option<Face>> = vec![None; g.edges().len()];
    for (i, f) in faces.iter().enumerate() {
        state[inc.input[i]] = Some(f.clone());
    }
    fn go(
        g: &GraphTerm,
        inc: &crate::graph::Incidence,
        order: &[usize],
        k: usize,
        state: &mut Vec<Option<Face>>,
        out: &mut SimplicialChain,
    ) {
        if k == order.len() {
            let term = inc.output.iter().map(|&e| state[e].clone().expect("output face")).collect();
            out.toggle(term);
            return;
        }
        let v = order[k];
        let ins = &inc.vertex_in[v];
        let outs = &inc.vertex_out[v];
        match g.vertices()[v].generator {
            Generator::Counit => {
                if state[ins[0]].as_ref().expect("input face").len() == 1 {
                    go(g, inc, order, k + 1, state, out);
                }
            }
            Generator::Coproduct => {
                let face = state[ins[0]].clone().expect("input face");
                for i in 0..face.len() {
                    state[outs[0]] = Some(face[..=i].to_vec());
                    state[outs[1]] = Some(face[i..].to_vec());
                    go(g, inc, order, k + 1, state, out);
                }
                state[outs[0]] = None;
                state[outs[1]] = None;
            }
            Generator::Product => {
                let a = state[ins[0]].clone().expect("input face");
                let b = state[ins[1]].clone().expect("input face");
                if let Some(u) = join(&[&a, &b]) {
                    state[outs[0]] = Some(u);
                    go(g, inc, order, k + 1, state, out);
                    state[outs[0]] = None;
                }
            }
            _ => unreachable!("checked above"),
        }
    }
    go(&g, &inc, &order, 0, &mut state, &mut out);
    Ok(out)
}

/// Linear extension of [`act_term`].
pub fn act_term_on(g: &GraphTerm, c: &SimplicialChain) -> Result<SimplicialChain, ChainError> {
    let mut out = SimplicialChain::zero(c.dim, g.outputs());
    for term in &c.terms {
        out = out.add(&act_term(g, c.dim, term)?);
    }
    Ok(out)
}

/// Operadic composition f ∘_k g of single-input strand patterns over F₂.
///
/// With c occurrences of k in f, the sequence of g is cut into c
/// consecutive pieces that overlap in one entry; the pieces replace the
/// occurrences of k in order, shifted by k − 1, and the values of f above k
/// are shifted by l − 1 where l is the number of outputs of g. Degenerate
/// results are dropped and the rest summed mod 2.
pub fn compose_surjections(f: &SurjectionType, k: usize, g: &SurjectionType) -> BTreeSet<SurjectionType> {
    assert!(f.n() == 1 && g.n() == 1, "single-input patterns only");
    assert!((1..=f.m()).contains(&k), "composition slot out of range");
    let fs = &f.blocks()[0];
    let gs = &g.blocks()[0];
    let l = g.m();
    let c = fs.iter().filter(|&&v| v == k).count();
    let mut out = BTreeSet::new();
    for pieces in aw_splittings(gs, c) {
        let mut seq = Vec::new();
        let mut next = pieces.iter();
        for &v in fs {
            if v == k {
                seq.extend(next.next().unwrap().iter().map(|&x| x + k - 1));
            } else if v > k {
                seq.push(v + l - 1);
            } else {
                seq.push(v);
            }
        }
        if let Ok(t) = SurjectionType::sequence(f.m() + l - 1, &seq) {
            if !out.remove(&t) {
                out.insert(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn chain(dim: usize, terms: &[&[&[usize]]]) -> SimplicialChain {
        let arity = terms.first().map_or(0, |t| t.len());
        let mut c = SimplicialChain::zero(dim, arity);
        for t in terms {
            c.toggle(t.iter().map(|f| f.to_vec()).collect());
        }
        c
    }

    #[test]
    fn coproduct_is_alexander_whitney() {
        let t = SurjectionType::sequence(2, &[1, 2]).unwrap();
        let got = act_type(&t, 1, &[vec![0, 1]]).unwrap();
        assert_eq!(got, chain(1, &[&[&[0], &[0, 1]], &[&[0, 1], &[1]]]));
    }

    #[test]
    fn product_joins_disjoint_faces() {
        let mu = parse_term("mu(1/2)").unwrap();
        assert_eq!(act_term(&mu, 2, &[vec![0], vec![1, 2]]).unwrap(), chain(2, &[&[&[0, 1, 2]]]));
        assert!(act_term(&mu, 2, &[vec![0, 1], vec![1, 2]]).unwrap().is_zero());
    }

    #[test]
    fn counit_detects_vertices() {
        let eps = parse_term("eps").unwrap();
        assert!(act_term(&eps, 3, &[vec![0, 1]]).unwrap().is_zero());
        assert_eq!(act_term(&eps, 3, &[vec![3]]).unwrap(), SimplicialChain::one(3));
    }

    #[test]
    fn homotopy_acts_by_zero() {
        let h = parse_term("h(1/2)").unwrap();
        assert!(act_term(&h, 2, &[vec![0, 2]]).unwrap().is_zero());
    }

    #[test]
    fn splittings_count() {
        // compositions of q into r non-negative parts
        assert_eq!(aw_splittings(&[0, 1, 2], 2).len(), 3);
        assert_eq!(aw_splittings(&[0, 1, 2], 3).len(), 6);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = chain(3, &[&[&[0, 1, 2, 3], &[1, 2]]]);
        assert!(c.boundary().boundary().is_zero());
    }

    #[test]
    fn composition_example() {
        // (1,2) ∘_1 (1,2) = (1,2,3)
        let f = SurjectionType::sequence(2, &[1, 2]).unwrap();
        let got = compose_surjections(&f, 1, &f);
        assert_eq!(got, BTreeSet::from([SurjectionType::sequence(3, &[1, 2, 3]).unwrap()]));
    }
}
