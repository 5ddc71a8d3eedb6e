//! The presentations of S̃ and S: corollas, attaching maps, the counit
//! relations, edge-weight coordinates and the stabilization maps.

use num::{One, Zero};
use thiserror::Error;

use crate::graph::{first_param, Edge, Generator, GraphError, GraphTerm, Source, Target, Vertex};
use crate::rational::{format_rational, in_unit_interval, Q};

pub use crate::graph::Generator as GeneratorKind;

/// Selects the relation set in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropTag {
    /// The prop with the counit homotopy φ.
    STilde,
    /// The strictly counital quotient.
    S,
    /// The quotient by the involutive, coassociative, associative,
    /// commutative and Leibniz relations.
    MS,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{kind} takes {expected} parameters, {found} given")]
    ParamCount { kind: &'static str, expected: usize, found: usize },
    #[error("parameter {0} lies outside [0,1]")]
    ParamRange(String),
    #[error("{0} is not a generator of the presented props")]
    NotAGenerator(&'static str),
    #[error("the counit homotopy is not available in this prop")]
    HomotopyNotAllowed,
    #[error("edge weighting violates condition {condition} at {location}")]
    WeightCondition { condition: u8, location: String },
    #[error("edge weighting has {found} entries for {expected} edges")]
    WeightLength { expected: usize, found: usize },
    #[error("stabilization needs at least {needed} {what}")]
    Stabilize { needed: usize, what: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Single-vertex graph of a generator with the given parameters.
pub fn corolla(kind: GeneratorKind, params: Vec<Q>) -> Result<GraphTerm, PresentationError> {
    match kind {
        Generator::Unit | Generator::Symmetry(_) => return Err(PresentationError::NotAGenerator(kind.name())),
        _ => {}
    }
    if params.len() != kind.dimension() {
        return Err(PresentationError::ParamCount {
            kind: kind.name(),
            expected: kind.dimension(),
            found: params.len(),
        });
    }
    if let Some(bad) = params.iter().find(|p| !in_unit_interval(p)) {
        return Err(PresentationError::ParamRange(format_rational(bad)));
    }
    Ok(GraphTerm::corolla(Vertex::new(kind, params)))
}

pub fn eps() -> GraphTerm {
    GraphTerm::corolla(Vertex::plain(Generator::Counit))
}

pub fn delta() -> GraphTerm {
    GraphTerm::corolla(Vertex::plain(Generator::Coproduct))
}

pub fn mu(s: Q) -> GraphTerm {
    GraphTerm::corolla(Vertex::new(Generator::Product, vec![s]))
}

pub fn phi(s: Q) -> GraphTerm {
    GraphTerm::corolla(Vertex::new(Generator::CounitHomotopy, vec![s]))
}

/// `id^a | g | id^b`.
pub fn padded(a: usize, g: &GraphTerm, b: usize) -> GraphTerm {
    GraphTerm::horizontal_compose(&[GraphTerm::unit(a), g.clone(), GraphTerm::unit(b)])
}

/// Checks that the generators used by `g` belong to the prop selected by `tag`.
pub fn check_tag(g: &GraphTerm, tag: PropTag) -> Result<(), PresentationError> {
    g.validate().map_err(GraphError::from)?;
    if tag != PropTag::STilde && g.contains(|k| *k == Generator::CounitHomotopy) {
        return Err(PresentationError::HomotopyNotAllowed);
    }
    Ok(())
}

/// The boundary graph prescribed by the attaching maps for a vertex whose
/// parameter is 0 or 1, if any.
fn attaching_replacement(v: &Vertex) -> Option<GraphTerm> {
    let s = v.params.first()?;
    let at_zero = s.is_zero();
    if !at_zero && !s.is_one() {
        return None;
    }
    Some(match v.generator {
        // s is the share of the second input
        Generator::Product if at_zero => GraphTerm::unit(1).beside(&eps()),
        Generator::Product => eps().beside(&GraphTerm::unit(1)),
        Generator::CounitHomotopy if at_zero => GraphTerm::unit(1),
        Generator::CounitHomotopy => delta().then(&eps().beside(&GraphTerm::unit(1))).expect("biarities match"),
        _ => return None,
    })
}

/// Replaces every vertex sitting at a boundary parameter by its attaching graph.
pub fn apply_attaching(g: &GraphTerm, tag: PropTag) -> Result<GraphTerm, PresentationError> {
    check_tag(g, tag)?;
    let mut current = g.clone();
    while let Some((v, replacement)) =
        current.vertices().iter().enumerate().find_map(|(i, v)| attaching_replacement(v).map(|r| (i, r)))
    {
        current = current.substitute_vertex(v, &replacement);
    }
    Ok(current)
}

/// Mutable working copy used by the relation rewriting.
struct Work {
    inputs: usize,
    outputs: usize,
    vertices: Vec<Option<Vertex>>,
    edges: Vec<Option<Edge>>,
}

impl Work {
    fn from(g: &GraphTerm) -> Self {
        Work {
            inputs: g.inputs(),
            outputs: g.outputs(),
            vertices: g.vertices().iter().cloned().map(Some).collect(),
            edges: g.edges().iter().cloned().map(Some).collect(),
        }
    }

    fn finish(self) -> GraphTerm {
        let mut renumber = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.into_iter().enumerate() {
            if let Some(v) = v {
                renumber[i] = vertices.len();
                vertices.push(v);
            }
        }
        let edges = self
            .edges
            .into_iter()
            .flatten()
            .map(|e| Edge {
                source: match e.source {
                    Source::Vertex { vertex, slot } => Source::Vertex { vertex: renumber[vertex], slot },
                    s => s,
                },
                target: match e.target {
                    Target::Vertex { vertex, slot } => Target::Vertex { vertex: renumber[vertex], slot },
                    t => t,
                },
            })
            .collect();
        GraphTerm::from_parts(self.inputs, self.outputs, vertices, edges)
    }

    fn edge_into(&self, vertex: usize, slot: usize) -> usize {
        self.edges
            .iter()
            .position(|e| matches!(e, Some(e) if e.target == Target::Vertex { vertex, slot }))
            .expect("valid graph")
    }

    fn edge_from(&self, vertex: usize, slot: usize) -> usize {
        self.edges
            .iter()
            .position(|e| matches!(e, Some(e) if e.source == Source::Vertex { vertex, slot }))
            .expect("valid graph")
    }

    fn kind(&self, vertex: usize) -> &Generator {
        &self.vertices[vertex].as_ref().expect("live vertex").generator
    }

    fn is_counit_target(&self, t: Target) -> bool {
        matches!(t, Target::Vertex { vertex, .. } if *self.kind(vertex) == Generator::Counit)
    }

    fn add_counit(&mut self) -> usize {
        self.vertices.push(Some(Vertex::plain(Generator::Counit)));
        self.vertices.len() - 1
    }

    fn remove_vertex(&mut self, v: usize) {
        self.vertices[v] = None;
    }

    fn topological(&self) -> Vec<usize> {
        let g = GraphTerm::from_parts(
            self.inputs,
            self.outputs,
            self.vertices.iter().map(|v| v.clone().unwrap_or(Vertex::plain(Generator::Unit))).collect(),
            self.edges.iter().flatten().cloned().collect(),
        );
        // dead vertices have no edges, so they only appear as isolated entries
        g.topological_order()
            .expect("acyclic")
            .into_iter()
            .filter(|&v| self.vertices[v].is_some())
            .collect()
    }
}

/// One rewrite of the counit relations anchored at vertex `u`, if any applies.
fn counit_redex(w: &Work, u: usize, tag: PropTag) -> Option<Vec<(usize, usize)>> {
    // returns the list of (edge index, slot) pairs that identify the match
    match w.kind(u) {
        Generator::Product => {
            let out = w.edge_from(u, 0);
            w.is_counit_target(w.edges[out].unwrap().target).then(|| vec![(out, 0)])
        }
        Generator::CounitHomotopy if tag == PropTag::STilde => {
            let out = w.edge_from(u, 0);
            w.is_counit_target(w.edges[out].unwrap().target).then(|| vec![(out, 0)])
        }
        Generator::Coproduct => {
            let o0 = w.edge_from(u, 0);
            let o1 = w.edge_from(u, 1);
            let c0 = w.is_counit_target(w.edges[o0].unwrap().target);
            let c1 = w.is_counit_target(w.edges[o1].unwrap().target);
            match tag {
                PropTag::STilde => (c0 && c1).then(|| vec![(o0, 0), (o1, 1)]),
                _ if c0 => Some(vec![(o0, 0), (o1, 1)]),
                _ if c1 => Some(vec![(o1, 1), (o0, 0)]),
                _ => None,
            }
        }
        _ => None,
    }
}

fn rewrite_counit(w: &mut Work, u: usize, tag: PropTag) {
    let kind = w.kind(u).clone();
    match kind {
        Generator::Product => {
            // μ_s ; ε  →  ε | ε
            let out = w.edge_from(u, 0);
            let Target::Vertex { vertex: e, .. } = w.edges[out].unwrap().target else { unreachable!() };
            w.edges[out] = None;
            w.remove_vertex(e);
            w.remove_vertex(u);
            for slot in 0..2 {
                let inp = w.edge_into(u, slot);
                let c = w.add_counit();
                w.edges[inp].as_mut().unwrap().target = Target::Vertex { vertex: c, slot: 0 };
            }
        }
        Generator::CounitHomotopy => {
            // φ_s ; ε  →  ε
            let out = w.edge_from(u, 0);
            let Target::Vertex { vertex: e, .. } = w.edges[out].unwrap().target else { unreachable!() };
            w.edges[out] = None;
            let inp = w.edge_into(u, 0);
            w.remove_vertex(u);
            w.edges[inp].as_mut().unwrap().target = Target::Vertex { vertex: e, slot: 0 };
        }
        Generator::Coproduct => {
            let o0 = w.edge_from(u, 0);
            let o1 = w.edge_from(u, 1);
            let inp = w.edge_into(u, 0);
            let c0 = w.is_counit_target(w.edges[o0].unwrap().target);
            let (capped, kept) = if tag == PropTag::STilde || c0 { (o0, o1) } else { (o1, o0) };
            let Target::Vertex { vertex: e, .. } = w.edges[capped].unwrap().target else { unreachable!() };
            // Δ ; (ε | x)  →  x, which in S̃ only fires when x is itself ε
            let continuation = w.edges[kept].unwrap().target;
            w.edges[capped] = None;
            w.edges[kept] = None;
            w.remove_vertex(e);
            w.remove_vertex(u);
            w.edges[inp].as_mut().unwrap().target = continuation;
        }
        _ => unreachable!("no counit redex at {:?}", kind),
    }
}

/// Applies the counit relations of the selected prop to a fixpoint, always
/// rewriting the leftmost redex in topological order. Every rule removes at
/// least one vertex, so the rewriting terminates.
pub fn apply_relations(g: &GraphTerm, tag: PropTag) -> Result<GraphTerm, PresentationError> {
    check_tag(g, tag)?;
    let mut w = Work::from(g);
    loop {
        let order = w.topological();
        let Some(u) = order.into_iter().find(|&u| counit_redex(&w, u, tag).is_some()) else {
            break;
        };
        rewrite_counit(&mut w, u, tag);
    }
    Ok(w.finish())
}

/// Shorthand for the relations of S.
pub fn apply_relations_s(g: &GraphTerm) -> Result<GraphTerm, PresentationError> {
    apply_relations(g, PropTag::S)
}

/// Nonnegative edge weights indexed like the edges of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    pub weights: Vec<Q>,
}

impl EdgeWeighting {
    /// Checks the three defining conditions on `g`.
    pub fn check(&self, g: &GraphTerm) -> Result<(), PresentationError> {
        if self.weights.len() != g.edges().len() {
            return Err(PresentationError::WeightLength { expected: g.edges().len(), found: self.weights.len() });
        }
        let inc = g.incidence();
        for (ei, e) in g.edges().iter().enumerate() {
            let w = &self.weights[ei];
            if *w < Q::zero() {
                return Err(PresentationError::WeightCondition { condition: 0, location: format!("edge {}", ei) });
            }
            match e.target {
                Target::Vertex { vertex, .. } if g.vertices()[vertex].generator == Generator::Counit => {
                    if !w.is_zero() {
                        return Err(PresentationError::WeightCondition { condition: 1, location: format!("edge {}", ei) });
                    }
                }
                Target::Output(_) if !w.is_one() => {
                    return Err(PresentationError::WeightCondition { condition: 2, location: format!("edge {}", ei) });
                }
                _ => {}
            }
        }
        for (v, vertex) in g.vertices().iter().enumerate() {
            if vertex.generator == Generator::Counit {
                continue;
            }
            let total_in: Q = inc.vertex_in[v].iter().map(|&e| self.weights[e].clone()).sum();
            let total_out: Q = inc.vertex_out[v].iter().map(|&e| self.weights[e].clone()).sum();
            if total_in != total_out {
                return Err(PresentationError::WeightCondition { condition: 3, location: format!("vertex {}", v) });
            }
        }
        Ok(())
    }

    pub fn input_weights(&self, g: &GraphTerm) -> Vec<Q> {
        g.incidence().input.iter().map(|&e| self.weights[e].clone()).collect()
    }
}

/// Propagates weight 1 upward from every output.
pub fn to_edge_weights(g: &GraphTerm) -> Result<EdgeWeighting, PresentationError> {
    check_tag(g, PropTag::S)?;
    let inc = g.incidence();
    let order = g.topological_order().expect("validated");
    let mut weights: Vec<Option<Q>> = vec![None; g.edges().len()];
    for (ei, e) in g.edges().iter().enumerate() {
        if let Target::Output(_) = e.target {
            weights[ei] = Some(Q::one());
        }
    }
    for &v in order.iter().rev() {
        let vertex = &g.vertices()[v];
        let outs: Vec<Q> = inc.vertex_out[v].iter().map(|&e| weights[e].clone().expect("set below")).collect();
        let ins: Vec<Q> = match &vertex.generator {
            Generator::Counit => vec![Q::zero()],
            Generator::Coproduct => vec![&outs[0] + &outs[1]],
            Generator::Product => {
                let s = first_param(vertex);
                vec![(Q::one() - &s) * &outs[0], s * &outs[0]]
            }
            Generator::Unit => vec![outs[0].clone()],
            Generator::Symmetry(p) => (0..p.len()).map(|i| outs[p.apply(i)].clone()).collect(),
            Generator::CounitHomotopy => return Err(PresentationError::HomotopyNotAllowed),
        };
        for (slot, w) in ins.into_iter().enumerate() {
            weights[inc.vertex_in[v][slot]] = Some(w);
        }
    }
    Ok(EdgeWeighting { weights: weights.into_iter().map(|w| w.expect("every edge reached")).collect() })
}

/// Result of [`from_edge_weights`]: the graph with recovered parameters and
/// the product vertices whose output weight vanished (their parameter is set to 0).
#[derive(Debug, Clone)]
pub struct Recovered {
    pub graph: GraphTerm,
    pub degenerate: Vec<usize>,
}

/// Recovers product parameters as the share `b / a` of the second input.
pub fn from_edge_weights(g: &GraphTerm, w: &EdgeWeighting) -> Result<Recovered, PresentationError> {
    check_tag(g, PropTag::S)?;
    w.check(g)?;
    let inc = g.incidence();
    let mut vertices = g.vertices().to_vec();
    let mut degenerate = Vec::new();
    for (v, vertex) in vertices.iter_mut().enumerate() {
        if vertex.generator == Generator::Product {
            let out = &w.weights[inc.vertex_out[v][0]];
            let second = &w.weights[inc.vertex_in[v][1]];
            if out.is_zero() {
                vertex.params = vec![Q::zero()];
                degenerate.push(v);
            } else {
                vertex.params = vec![second / out];
            }
        }
    }
    Ok(Recovered { graph: GraphTerm::from_parts(g.inputs(), g.outputs(), vertices, g.edges().to_vec()), degenerate })
}

/// The map `i`: a new first output is pulled off input 1 with a coproduct.
pub fn stabilize_add(g: &GraphTerm) -> Result<GraphTerm, PresentationError> {
    let (n, _) = g.biarity();
    if n == 0 {
        return Err(PresentationError::Stabilize { needed: 1, what: "input" });
    }
    let top = padded(0, &delta(), n - 1);
    Ok(top.then(&padded(1, g, 0))?)
}

/// The map `r`: output 1 is capped with a counit.
pub fn stabilize_remove(g: &GraphTerm) -> Result<GraphTerm, PresentationError> {
    let (_, m) = g.biarity();
    if m == 0 {
        return Err(PresentationError::Stabilize { needed: 1, what: "output" });
    }
    Ok(g.then(&padded(0, &eps(), m - 1))?)
}

/// The homotopy `H_s` joining `i∘r(g)` (at s = 0) and `(φ_1 | id) ; g` (at s = 1):
/// the new branch and the first output of `g` are merged by `μ_s`.
pub fn stabilization_homotopy(g: &GraphTerm, s: Q) -> Result<GraphTerm, PresentationError> {
    let (n, m) = g.biarity();
    if n == 0 || m == 0 {
        return Err(PresentationError::Stabilize { needed: 1, what: "input and output" });
    }
    let top = padded(0, &delta(), n - 1);
    let mid = top.then(&padded(1, g, 0))?;
    Ok(mid.then(&padded(0, &mu(s), m - 1))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::term::parse_term;

    fn t(s: &str) -> GraphTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn corollas() {
        assert_eq!(corolla(Generator::Coproduct, vec![]).unwrap().biarity(), (1, 2));
        assert_eq!(corolla(Generator::Product, vec![q(1, 2)]).unwrap().vertices()[0].params, vec![q(1, 2)]);
        assert!(matches!(corolla(Generator::Product, vec![q(3, 2)]), Err(PresentationError::ParamRange(_))));
        assert!(matches!(corolla(Generator::Product, vec![]), Err(PresentationError::ParamCount { .. })));
    }

    #[test]
    fn attaching_maps() {
        let g = apply_attaching(&mu(Q::zero()), PropTag::S).unwrap();
        assert!(g.iso_equal(&t("id | eps")));
        let g = apply_attaching(&mu(Q::one()), PropTag::S).unwrap();
        assert!(g.iso_equal(&t("eps | id")));
        let g = apply_attaching(&phi(Q::zero()), PropTag::STilde).unwrap();
        assert!(g.iso_equal(&GraphTerm::unit(1)));
        let g = apply_attaching(&phi(Q::one()), PropTag::STilde).unwrap();
        assert!(g.iso_equal(&t("delta ; (eps | id)")));
        let g = apply_attaching(&mu(q(1, 3)), PropTag::S).unwrap();
        assert!(g.iso_equal(&mu(q(1, 3))));
        assert!(matches!(apply_attaching(&phi(q(1, 2)), PropTag::S), Err(PresentationError::HomotopyNotAllowed)));
    }

    #[test]
    fn counit_relations_in_s() {
        let g = apply_relations_s(&t("delta ; (eps | id)")).unwrap();
        assert!(g.iso_equal(&GraphTerm::unit(1)));
        let g = apply_relations_s(&t("delta ; (id | eps)")).unwrap();
        assert!(g.iso_equal(&GraphTerm::unit(1)));
        let g = apply_relations_s(&t("mu(1/3) ; eps")).unwrap();
        assert!(g.iso_equal(&t("eps | eps")));
        let g = apply_relations_s(&t("delta ; (delta | id) ; (eps | eps | eps)")).unwrap();
        assert!(g.iso_equal(&t("eps")));
    }

    #[test]
    fn counit_relations_in_s_tilde() {
        let g = apply_relations(&t("h(1/2) ; eps"), PropTag::STilde).unwrap();
        assert!(g.iso_equal(&t("eps")));
        let g = apply_relations(&t("delta ; (eps | eps)"), PropTag::STilde).unwrap();
        assert!(g.iso_equal(&t("eps")));
        // not a relation of S̃
        let g = apply_relations(&t("delta ; (eps | id)"), PropTag::STilde).unwrap();
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn edge_weights_of_small_graphs() {
        let w = to_edge_weights(&mu(q(1, 2))).unwrap();
        let g = mu(q(1, 2));
        let inc = g.incidence();
        assert_eq!(w.weights[inc.output[0]], Q::one());
        assert_eq!(w.weights[inc.input[0]], q(1, 2));
        assert_eq!(w.weights[inc.input[1]], q(1, 2));
        let d = delta();
        assert_eq!(to_edge_weights(&d).unwrap().input_weights(&d), vec![q(2, 1)]);
        let bubble = t("delta ; mu(1/3)");
        let w = to_edge_weights(&bubble).unwrap();
        let inc = bubble.incidence();
        assert_eq!(w.weights[inc.input[0]], Q::one());
        assert_eq!(w.weights[inc.vertex_out[0][0]], q(2, 3));
        assert_eq!(w.weights[inc.vertex_out[0][1]], q(1, 3));
    }

    #[test]
    fn weights_recover_parameters() {
        let g = mu(q(1, 2));
        let back = from_edge_weights(&g, &to_edge_weights(&g).unwrap()).unwrap();
        assert_eq!(back.graph.vertices()[0].params, vec![q(1, 2)]);
        let inc = g.incidence();
        let mut w = vec![Q::zero(); 3];
        w[inc.input[0]] = q(2, 3);
        w[inc.input[1]] = q(1, 3);
        w[inc.output[0]] = Q::one();
        let back = from_edge_weights(&g, &EdgeWeighting { weights: w.clone() }).unwrap();
        assert_eq!(back.graph.vertices()[0].params, vec![q(1, 3)]);
        w[inc.input[1]] = q(1, 2);
        assert!(matches!(
            from_edge_weights(&g, &EdgeWeighting { weights: w }),
            Err(PresentationError::WeightCondition { condition: 3, .. })
        ));
    }

    #[test]
    fn degenerate_product_is_flagged() {
        let g = t("mu(1/4) ; eps");
        let back = from_edge_weights(&g, &to_edge_weights(&g).unwrap()).unwrap();
        assert_eq!(back.degenerate, vec![0]);
        assert_eq!(back.graph.vertices()[0].params, vec![Q::zero()]);
    }

    #[test]
    fn stabilization() {
        let i = stabilize_add(&GraphTerm::unit(1)).unwrap();
        assert!(i.iso_equal(&delta()));
        let ri = stabilize_remove(&i).unwrap();
        assert!(apply_relations_s(&ri).unwrap().iso_equal(&GraphTerm::unit(1)));
        assert!(stabilize_remove(&GraphTerm::unit(0)).is_err());
        assert_eq!(stabilize_add(&t("eps | eps")).unwrap().biarity(), (2, 1));
        assert!(stabilize_add(&GraphTerm::unit(0)).is_err());
    }
}
