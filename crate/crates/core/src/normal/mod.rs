//! Normal forms in the quotient prop MS.
//!
//! Every class of biarity (n, m) with m ≥ 1 has a unique canonical graph,
//! described by a [`WeightedSurjection`]: per input an ordered block of
//! strands, each strand labelled with its output and its weight. Biarity
//! (n, 0) consists of the single all-counit class.

mod compose;
mod net;

use std::fmt;

use itertools::Itertools;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use compose::compose_weighted;
pub use net::{RewriteStats, RuleFamily, Strategy};

use crate::graph::{Edge, Generator, GraphError, GraphTerm, Source, Target, Vertex};
use crate::perm::Permutation;
use crate::presentation::PresentationError;
use crate::rational::{format_rational, parse_rational, Q};
use net::Net;

/// Rewrites allowed per vertex of the input graph before giving up.
const STEPS_PER_VERTEX: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalError {
    #[error("{0} vertices cannot be normalized in MS")]
    UnsupportedGenerator(&'static str),
    #[error("invalid surjection: {0}")]
    InvalidSurjection(String),
    #[error("biarity mismatch: {0:?} against {1:?}")]
    BiarityMismatch((usize, usize), (usize, usize)),
    #[error("rewriting did not terminate within {0} steps")]
    StepLimit(usize),
    #[error("irreducible graph is not canonical: {0}")]
    NotCanonical(&'static str),
    #[error("malformed normal form: {0}")]
    Format(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Combinatorial type of a canonical graph: the strand pattern without
/// weights. Output values are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurjectionType {
    n: usize,
    m: usize,
    blocks: Vec<Vec<usize>>,
}

impl SurjectionType {
    /// Checks block count, value range, surjectivity and nondegeneracy.
    /// For m = 0 every block must be empty (the counit class).
    pub fn new(n: usize, m: usize, blocks: Vec<Vec<usize>>) -> Result<Self, NormalError> {
        let bad = |why: String| Err(NormalError::InvalidSurjection(why));
        if blocks.len() != n {
            return bad(format!("{} blocks for {} inputs", blocks.len(), n));
        }
        for block in &blocks {
            if let Some(&v) = block.iter().find(|&&v| v == 0 || v > m) {
                return bad(format!("value {v} outside 1..={m}"));
            }
            if block.iter().tuple_windows().any(|(a, b)| a == b) {
                return bad(format!("adjacent repeat in block {block:?}"));
            }
        }
        for j in 1..=m {
            if !blocks.iter().flatten().any(|&v| v == j) {
                return bad(format!("output {j} is not hit"));
            }
        }
        Ok(SurjectionType { n, m, blocks })
    }

    /// Single-input type from a strand sequence.
    pub fn sequence(m: usize, seq: &[usize]) -> Result<Self, NormalError> {
        Self::new(1, m, vec![seq.to_vec()])
    }

    /// The all-counit class of biarity (n, 0).
    pub fn counit(n: usize) -> Self {
        SurjectionType { n, m: 0, blocks: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn biarity(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_counit(&self) -> bool {
        self.m == 0
    }

    /// Total number of strands.
    pub fn strands(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Number of strands ending at output `j` (1-based).
    pub fn multiplicity(&self, j: usize) -> usize {
        self.blocks.iter().flatten().filter(|&&v| v == j).count()
    }

    /// r − m, the dimension of the cell.
    pub fn degree(&self) -> usize {
        self.strands() - self.m
    }

    /// Uniform weights: each strand of output j gets 1/k_j.
    pub fn generic_weights(&self) -> WeightedSurjection {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| (v, Q::new(1.into(), (self.multiplicity(v) as i64).into()))).collect())
            .collect();
        WeightedSurjection { n: self.n, m: self.m, blocks }
    }

    /// Relabels outputs: value j becomes τ(j).
    pub fn permute_outputs(&self, tau: &Permutation) -> Self {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&v| tau.apply(v - 1) + 1).collect()).collect();
        SurjectionType { n: self.n, m: self.m, blocks }
    }

    /// Moves block i to position σ(i).
    pub fn permute_inputs(&self, sigma: &Permutation) -> Self {
        let mut blocks = vec![Vec::new(); self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            blocks[sigma.apply(i)] = b.clone();
        }
        SurjectionType { n: self.n, m: self.m, blocks }
    }
}

impl fmt::Display for SurjectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.blocks.iter().map(|b| b.iter().join(",")).join(" | ");
        write!(f, "({body})")
    }
}

/// Canonical form of an MS element with m ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedSurjection {
    n: usize,
    m: usize,
    blocks: Vec<Vec<(usize, Q)>>,
}

impl WeightedSurjection {
    /// Validates the type, positivity of every weight and the unit weight
    /// sum at each output.
    pub fn new(n: usize, m: usize, blocks: Vec<Vec<(usize, Q)>>) -> Result<Self, NormalError> {
        if m == 0 {
            return Err(NormalError::InvalidSurjection("m = 0 has no weighted form".into()));
        }
        SurjectionType::new(n, m, blocks.iter().map(|b| b.iter().map(|s| s.0).collect()).collect())?;
        if let Some((_, w)) = blocks.iter().flatten().find(|(_, w)| !w.is_positive()) {
            return Err(NormalError::InvalidSurjection(format!("non-positive weight {}", format_rational(w))));
        }
        for j in 1..=m {
            let total: Q = blocks.iter().flatten().filter(|s| s.0 == j).map(|s| s.1.clone()).sum();
            if !total.is_one() {
                return Err(NormalError::InvalidSurjection(format!(
                    "weights at output {j} sum to {}",
                    format_rational(&total)
                )));
            }
        }
        Ok(WeightedSurjection { n, m, blocks })
    }

    /// Builds from a type and weights listed in strand order.
    pub fn from_type(ty: &SurjectionType, weights: &[Q]) -> Result<Self, NormalError> {
        if weights.len() != ty.strands() {
            return Err(NormalError::InvalidSurjection(format!(
                "{} weights for {} strands",
                weights.len(),
                ty.strands()
            )));
        }
        let mut it = weights.iter();
        let blocks = ty.blocks.iter().map(|b| b.iter().map(|&v| (v, it.next().unwrap().clone())).collect()).collect();
        Self::new(ty.n, ty.m, blocks)
    }

    /// The identity on n wires.
    pub fn unit(n: usize) -> Self {
        WeightedSurjection { n, m: n, blocks: (1..=n).map(|j| vec![(j, Q::one())]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn biarity(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn blocks(&self) -> &[Vec<(usize, Q)>] {
        &self.blocks
    }

    pub fn surjection_type(&self) -> SurjectionType {
        SurjectionType { n: self.n, m: self.m, blocks: self.blocks.iter().map(|b| b.iter().map(|s| s.0).collect()).collect() }
    }

    /// Weights in strand order.
    pub fn weights(&self) -> Vec<Q> {
        self.blocks.iter().flatten().map(|s| s.1.clone()).collect()
    }

    pub fn degree(&self) -> usize {
        self.surjection_type().degree()
    }

    /// The canonical graph: a left coproduct comb per input block feeding a
    /// left product comb per output.
    pub fn to_graph(&self) -> GraphTerm {
        canonical_graph(self.n, self.m, &self.blocks)
    }

    /// Block concatenation.
    pub fn beside(&self, other: &WeightedSurjection) -> WeightedSurjection {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| b.iter().map(|(v, w)| (v + self.m, w.clone())).collect()));
        WeightedSurjection { n: self.n + other.n, m: self.m + other.m, blocks }
    }
}

/// Builds the canonical graph of a strand pattern with arbitrary
/// non-negative weights. Zero weights give boundary points of the cell.
pub fn canonical_graph(n: usize, m: usize, blocks: &[Vec<(usize, Q)>]) -> GraphTerm {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let strands: Vec<(usize, &Q)> = blocks.iter().flatten().map(|(v, w)| (*v, w)).collect();

    // product combs: the target slot of every strand
    let mut strand_target = vec![Target::Output(0); strands.len()];
    for j in 1..=m {
        let leaves: Vec<usize> = (0..strands.len()).filter(|&t| strands[t].0 == j).collect();
        if leaves.len() == 1 {
            strand_target[leaves[0]] = Target::Output(j - 1);
            continue;
        }
        let first = vertices.len();
        let mut acc = strands[leaves[0]].1.clone();
        for p in 1..leaves.len() {
            let w = strands[leaves[p]].1;
            let total = &acc + w;
            let s = if total.is_zero() { Q::zero() } else { w / &total };
            vertices.push(Vertex::new(Generator::Product, vec![s]));
            acc = total;
        }
        strand_target[leaves[0]] = Target::Vertex { vertex: first, slot: 0 };
        for p in 1..leaves.len() {
            strand_target[leaves[p]] = Target::Vertex { vertex: first + p - 1, slot: 1 };
            let target = if p + 1 < leaves.len() {
                Target::Vertex { vertex: first + p, slot: 0 }
            } else {
                Target::Output(j - 1)
            };
            edges.push(Edge { source: Source::Vertex { vertex: first + p - 1, slot: 0 }, target });
        }
    }

    // coproduct combs
    let mut t0 = 0;
    for (i, block) in blocks.iter().enumerate() {
        let r = block.len();
        match r {
            0 => {
                vertices.push(Vertex::plain(Generator::Counit));
                edges.push(Edge { source: Source::Input(i), target: Target::Vertex { vertex: vertices.len() - 1, slot: 0 } });
            }
            1 => edges.push(Edge { source: Source::Input(i), target: strand_target[t0] }),
            _ => {
                // D_p is vertex first + p - 1 for p = 1..r-1; D_{r-1} is the root
                let first = vertices.len();
                for _ in 1..r {
                    vertices.push(Vertex::plain(Generator::Coproduct));
                }
                let d = |p: usize| first + p - 1;
                edges.push(Edge { source: Source::Input(i), target: Target::Vertex { vertex: d(r - 1), slot: 0 } });
                for p in 1..r {
                    let left = if p == 1 { strand_target[t0] } else { Target::Vertex { vertex: d(p - 1), slot: 0 } };
                    edges.push(Edge { source: Source::Vertex { vertex: d(p), slot: 0 }, target: left });
                    edges.push(Edge { source: Source::Vertex { vertex: d(p), slot: 1 }, target: strand_target[t0 + p] });
                }
            }
        }
        t0 += r;
    }
    GraphTerm::from_parts(n, m, vertices, edges)
}

/// An element of MS(n, m).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MSElement {
    /// The single class of biarity (n, 0).
    Counit { n: usize },
    Surjection(WeightedSurjection),
}

impl MSElement {
    pub fn biarity(&self) -> (usize, usize) {
        match self {
            MSElement::Counit { n } => (*n, 0),
            MSElement::Surjection(ws) => ws.biarity(),
        }
    }

    pub fn unit(n: usize) -> Self {
        if n == 0 {
            MSElement::Counit { n: 0 }
        } else {
            MSElement::Surjection(WeightedSurjection::unit(n))
        }
    }

    pub fn as_surjection(&self) -> Option<&WeightedSurjection> {
        match self {
            MSElement::Surjection(ws) => Some(ws),
            MSElement::Counit { .. } => None,
        }
    }

    pub fn surjection_type(&self) -> SurjectionType {
        match self {
            MSElement::Counit { n } => SurjectionType::counit(*n),
            MSElement::Surjection(ws) => ws.surjection_type(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            MSElement::Counit { .. } => 0,
            MSElement::Surjection(ws) => ws.degree(),
        }
    }

    pub fn to_graph(&self) -> GraphTerm {
        match self {
            MSElement::Counit { n } => {
                GraphTerm::horizontal_compose(&vec![GraphTerm::corolla(Vertex::plain(Generator::Counit)); *n])
            }
            MSElement::Surjection(ws) => ws.to_graph(),
        }
    }

    /// Horizontal composition of normal forms.
    pub fn beside(&self, other: &MSElement) -> MSElement {
        match (self, other) {
            (MSElement::Surjection(a), MSElement::Surjection(b)) => MSElement::Surjection(a.beside(b)),
            (MSElement::Counit { n }, MSElement::Counit { n: k }) => MSElement::Counit { n: n + k },
            (MSElement::Counit { n }, MSElement::Surjection(b)) => {
                let mut blocks = vec![Vec::new(); *n];
                blocks.extend(b.blocks.iter().cloned());
                MSElement::Surjection(WeightedSurjection { n: n + b.n, m: b.m, blocks })
            }
            (MSElement::Surjection(a), MSElement::Counit { n }) => {
                let mut blocks = a.blocks.clone();
                blocks.extend(vec![Vec::new(); *n]);
                MSElement::Surjection(WeightedSurjection { n: a.n + n, m: a.m, blocks })
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            MSElement::Counit { n } => serde_json::json!({ "counit": true, "n": n }),
            MSElement::Surjection(ws) => serde_json::json!({
                "n": ws.n,
                "m": ws.m,
                "blocks": ws.blocks.iter().map(Vec::len).collect::<Vec<_>>(),
                "assignment": ws.blocks.iter().flatten().map(|s| s.0).collect::<Vec<_>>(),
                "weights": ws.blocks.iter().flatten().map(|s| format_rational(&s.1)).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<MSElement, NormalError> {
        #[derive(Deserialize)]
        struct Doc {
            #[serde(default)]
            counit: bool,
            n: usize,
            #[serde(default)]
            m: usize,
            #[serde(default)]
            blocks: Vec<usize>,
            #[serde(default)]
            assignment: Vec<usize>,
            #[serde(default)]
            weights: Vec<String>,
        }
        let doc: Doc = serde_json::from_value(value.clone()).map_err(|e| NormalError::Format(e.to_string()))?;
        if doc.counit || doc.m == 0 {
            return Ok(MSElement::Counit { n: doc.n });
        }
        if doc.blocks.len() != doc.n || doc.assignment.len() != doc.weights.len() {
            return Err(NormalError::Format("block sizes do not match the strand lists".into()));
        }
        let weights: Vec<Q> = doc
            .weights
            .iter()
            .map(|w| parse_rational(w).map_err(|e| NormalError::Format(e.to_string())))
            .collect::<Result<_, _>>()?;
        let mut pairs = doc.assignment.into_iter().zip(weights);
        let mut blocks = Vec::new();
        for r in doc.blocks {
            let block: Vec<_> = pairs.by_ref().take(r).collect();
            if block.len() != r {
                return Err(NormalError::Format("block sizes exceed the strand list".into()));
            }
            blocks.push(block);
        }
        if pairs.next().is_some() {
            return Err(NormalError::Format("strands left over after the last block".into()));
        }
        Ok(MSElement::Surjection(WeightedSurjection::new(doc.n, doc.m, blocks)?))
    }

    /// Parses the textual normal form printed by `Display`.
    pub fn parse(text: &str) -> Result<MSElement, NormalError> {
        let bad = |why: &str| NormalError::Format(why.to_string());
        let text = text.trim();
        let header_field = |part: Option<&str>, key: &str| -> Result<usize, NormalError> {
            part.and_then(|p| p.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| NormalError::Format(format!("expected `{key}<count>`")))
        };
        if let Some(rest) = text.strip_prefix("counit") {
            let n = header_field(rest.split_whitespace().next(), "n=")?;
            return Ok(MSElement::Counit { n });
        }
        let rest = text.strip_prefix("surj").ok_or_else(|| bad("expected `surj` or `counit`"))?;
        let (header, body) = rest.split_once(':').ok_or_else(|| bad("expected `:` after the header"))?;
        let mut fields = header.split_whitespace();
        let n = header_field(fields.next(), "n=")?;
        let m = header_field(fields.next(), "m=")?;
        let mut blocks = Vec::new();
        for part in body.split(';') {
            let mut block = Vec::new();
            for strand in part.split_whitespace() {
                let (value, weight) = strand.split_once('/').ok_or_else(|| bad("strands are written value/weight"))?;
                let value: usize = value.parse().map_err(|_| bad("strand value is not an integer"))?;
                let weight = parse_rational(weight).map_err(|e| NormalError::Format(e.to_string()))?;
                block.push((value, weight));
            }
            blocks.push(block);
        }
        if m == 0 {
            return Ok(MSElement::Counit { n });
        }
        Ok(MSElement::Surjection(WeightedSurjection::new(n, m, blocks)?))
    }
}

impl fmt::Display for MSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MSElement::Counit { n } => write!(f, "counit n={n}"),
            MSElement::Surjection(ws) => {
                let body = ws
                    .blocks
                    .iter()
                    .map(|b| b.iter().map(|(v, w)| format!("{v}/{}", format_rational(w))).join(" "))
                    .join(" ; ");
                write!(f, "surj n={} m={} : {}", ws.n, ws.m, body)
            }
        }
    }
}

fn step_limit(g: &GraphTerm) -> usize {
    STEPS_PER_VERTEX * (g.vertex_count() + 4) * (g.vertex_count() + 4)
}

/// Normal form of a graph over ε, Δ, μ (identities and permutations allowed).
pub fn normalize(g: &GraphTerm) -> Result<MSElement, NormalError> {
    normalize_with(g, Strategy::Stratified).map(|(e, _)| e)
}

/// Normal form under a chosen rewriting order, with rewrite statistics.
pub fn normalize_with(g: &GraphTerm, strategy: Strategy) -> Result<(MSElement, RewriteStats), NormalError> {
    if g.outputs() == 0 {
        // validation of the generators still applies
        Net::from_graph(g)?;
        return Ok((MSElement::Counit { n: g.inputs() }, RewriteStats::default()));
    }
    let mut net = Net::from_graph(g)?;
    let stats = net.rewrite(strategy, step_limit(g))?;
    Ok((MSElement::Surjection(net.extract()?), stats))
}

/// Removes every counit by the counit relations. Fails for m = 0, where
/// only the counit class exists.
pub fn eliminate_counits(g: &GraphTerm) -> Result<GraphTerm, NormalError> {
    if g.outputs() == 0 {
        return Err(NormalError::InvalidSurjection("biarity (n,0) is the counit class".into()));
    }
    let mut net = Net::from_graph(g)?;
    net.run_families(&[RuleFamily::ZeroMu, RuleFamily::CounitMu, RuleFamily::CounitDelta], step_limit(g))?;
    Ok(net.to_graph())
}

/// Moves every product below every coproduct by the exchange relation.
pub fn leibniz_push(g: &GraphTerm) -> Result<GraphTerm, NormalError> {
    let mut net = Net::from_graph(g)?;
    net.run_families(&[RuleFamily::Leibniz], step_limit(g))?;
    Ok(net.to_graph())
}

/// Equality in MS.
pub fn equal_ms(a: &GraphTerm, b: &GraphTerm) -> Result<bool, NormalError> {
    if a.biarity() != b.biarity() {
        return Err(NormalError::BiarityMismatch(a.biarity(), b.biarity()));
    }
    Ok(normalize(a)? == normalize(b)?)
}

/// All nondegenerate strand patterns of biarity (n, m) and the given degree,
/// sorted. For m = 0 the counit class is the only type, in degree 0.
pub fn enumerate_basis(n: usize, m: usize, degree: usize) -> Vec<SurjectionType> {
    if m == 0 {
        return if degree == 0 { vec![SurjectionType::counit(n)] } else { Vec::new() };
    }
    let r = m + degree;
    let mut out = Vec::new();
    for sizes in compositions(r, n) {
        let mut block_start = vec![false; r];
        let mut at = 0;
        for &s in &sizes {
            if s > 0 {
                block_start[at] = true;
            }
            at += s;
        }
        let mut seq = Vec::with_capacity(r);
        fill(&block_start, m, &mut seq, &mut |seq| {
            let mut blocks = Vec::with_capacity(n);
            let mut at = 0;
            for &s in &sizes {
                blocks.push(seq[at..at + s].to_vec());
                at += s;
            }
            if let Ok(t) = SurjectionType::new(n, m, blocks) {
                out.push(t);
            }
        });
    }
    out.sort();
    out
}

/// Visits every sequence over 1..=m without repeats inside a block.
fn fill(block_start: &[bool], m: usize, seq: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let t = seq.len();
    if t == block_start.len() {
        visit(seq);
        return;
    }
    for v in 1..=m {
        if !block_start[t] && seq.last() == Some(&v) {
            continue;
        }
        seq.push(v);
        fill(block_start, m, seq, visit);
        seq.pop();
    }
}

/// Ordered ways of writing `total` as a sum of `parts` non-negative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::term::parse_term;

    fn nf(s: &str) -> MSElement {
        normalize(&parse_term(s).unwrap()).unwrap()
    }

    fn ws(n: usize, m: usize, blocks: Vec<Vec<(usize, Q)>>) -> MSElement {
        MSElement::Surjection(WeightedSurjection::new(n, m, blocks).unwrap())
    }

    #[test]
    fn coproduct_is_canonical() {
        assert_eq!(nf("delta"), ws(1, 2, vec![vec![(1, q(1, 1)), (2, q(1, 1))]]));
    }

    #[test]
    fn involutive_bubble_is_identity() {
        for s in ["0", "1/3", "1/2", "1"] {
            assert_eq!(nf(&format!("delta ; mu({s})")), MSElement::unit(1));
        }
    }

    #[test]
    fn coassociativity() {
        let expected = ws(1, 3, vec![vec![(1, q(1, 1)), (2, q(1, 1)), (3, q(1, 1))]]);
        assert_eq!(nf("delta ; (delta | id)"), expected);
        assert_eq!(nf("delta ; (id | delta)"), expected);
    }

    #[test]
    fn counit_cases() {
        assert_eq!(nf("delta ; (eps | id)"), MSElement::unit(1));
        assert_eq!(nf("delta ; (id | eps)"), MSElement::unit(1));
        assert_eq!(nf("mu(1/2) ; eps"), MSElement::Counit { n: 2 });
        assert_eq!(nf("mu(0)"), ws(2, 1, vec![vec![(1, q(1, 1))], vec![]]));
        assert_eq!(nf("mu(1)"), ws(2, 1, vec![vec![], vec![(1, q(1, 1))]]));
    }

    #[test]
    fn product_weights_follow_the_second_input_share() {
        assert_eq!(nf("mu(1/3)"), ws(2, 1, vec![vec![(1, q(2, 3))], vec![(1, q(1, 3))]]));
    }

    #[test]
    fn commutativity_in_output_trees() {
        assert_eq!(nf("swap ; mu(1/3)"), nf("mu(2/3)"));
        assert_ne!(nf("delta"), nf("delta ; swap"));
    }

    #[test]
    fn eliminate_and_push() {
        let g = eliminate_counits(&parse_term("delta ; (eps | id)").unwrap()).unwrap();
        assert!(g.iso_equal(&GraphTerm::unit(1)));
        let g = leibniz_push(&parse_term("mu(1/2) ; delta").unwrap()).unwrap();
        assert!(g.iso_equal(&GraphTerm::unit(2)));
        let g = parse_term("delta ; (delta | id)").unwrap();
        assert!(leibniz_push(&g).unwrap().iso_equal(&g));
        assert!(eliminate_counits(&parse_term("eps").unwrap()).is_err());
    }

    #[test]
    fn equal_ms_examples() {
        let t = |s: &str| parse_term(s).unwrap();
        assert!(!equal_ms(&t("delta"), &t("delta ; swap")).unwrap());
        assert!(equal_ms(&t("eps | eps"), &t("mu(1/2) ; eps")).unwrap());
        assert!(equal_ms(&t("delta"), &t("id")).is_err());
    }

    #[test]
    fn basis_examples() {
        let seqs = |n, m, k| enumerate_basis(n, m, k).into_iter().map(|t| t.blocks()[0].clone()).collect::<Vec<_>>();
        assert_eq!(seqs(1, 2, 0), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(seqs(1, 2, 1), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert!(enumerate_basis(1, 1, 3).is_empty());
        assert_eq!(enumerate_basis(2, 1, 0).len(), 2);
        assert_eq!(enumerate_basis(2, 1, 1).len(), 1);
        assert_eq!(enumerate_basis(3, 0, 0), vec![SurjectionType::counit(3)]);
    }

    #[test]
    fn canonical_graph_round_trip() {
        for t in enumerate_basis(2, 2, 2) {
            let w = t.generic_weights();
            assert_eq!(normalize(&w.to_graph()).unwrap(), MSElement::Surjection(w.clone()));
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let e = nf("(delta | id) ; (id | mu(1/2))");
        let text = e.to_string();
        assert_eq!(MSElement::parse(&text).unwrap(), e);
        assert_eq!(MSElement::from_json(&e.to_json()).unwrap(), e);
        let c = MSElement::Counit { n: 3 };
        assert_eq!(c.to_string(), "counit n=3");
        assert_eq!(MSElement::parse("counit n=3").unwrap(), c);
        assert_eq!(MSElement::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(MSElement::parse("surj n=1 m=2 : 1/1 2/1").unwrap(), nf("delta"));
        assert_eq!(MSElement::parse("surj n=2 m=1 : ; 1/1").unwrap(), nf("mu(1)"));
        assert!(MSElement::parse("surj n=1 m=2 : 1/1 1/1").is_err());
    }

    #[test]
    fn horizontal_normal_forms() {
        let a = nf("delta");
        let b = nf("mu(1/2)");
        let g = parse_term("delta | mu(1/2)").unwrap();
        assert_eq!(normalize(&g).unwrap(), a.beside(&b));
        let c = MSElement::Counit { n: 1 };
        assert_eq!(normalize(&parse_term("eps | delta").unwrap()).unwrap(), c.beside(&a));
    }
}
