//! Labelled open directed acyclic graphs decorated by generators: the
//! elements of the free props.
//!
//! All indices are 0-based. External ports are numbered left to right.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{Permutation, PermutationError};
use crate::rational::{format_rational, parse_rational, Q};

/// Decoration of a vertex.
///
/// The first four are the generators of the presented props. `Unit` and
/// `Symmetry` are the identity and permutation decorations that
/// [`GraphTerm::absorb_equivalences`] removes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Counit,
    Coproduct,
    Product,
    CounitHomotopy,
    Unit,
    Symmetry(Permutation),
}

impl Generator {
    pub fn biarity(&self) -> (usize, usize) {
        match self {
            Generator::Counit => (1, 0),
            Generator::Coproduct => (1, 2),
            Generator::Product => (2, 1),
            Generator::CounitHomotopy => (1, 1),
            Generator::Unit => (1, 1),
            Generator::Symmetry(p) => (p.len(), p.len()),
        }
    }

    /// Dimension of the generating cell, which is the number of parameters.
    pub fn dimension(&self) -> usize {
        match self {
            Generator::Product | Generator::CounitHomotopy => 1,
            _ => 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Counit => "eps",
            Generator::Coproduct => "delta",
            Generator::Product => "mu",
            Generator::CounitHomotopy => "h",
            Generator::Unit => "unit",
            Generator::Symmetry(_) => "perm",
        }
    }
}

/// Where an edge starts: an external input port or an output slot of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Input(usize),
    Vertex { vertex: usize, slot: usize },
}

/// Where an edge ends: an external output port or an input slot of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Output(usize),
    Vertex { vertex: usize, slot: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: Source,
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub generator: Generator,
    pub params: Vec<Q>,
}

impl Vertex {
    pub fn new(generator: Generator, params: Vec<Q>) -> Self {
        Vertex { generator, params }
    }

    pub fn plain(generator: Generator) -> Self {
        Vertex { generator, params: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge {edge} refers to input port {port} but there are {count} inputs")]
    InputOutOfRange { edge: usize, port: usize, count: usize },
    #[error("edge {edge} refers to output port {port} but there are {count} outputs")]
    OutputOutOfRange { edge: usize, port: usize, count: usize },
    #[error("edge {edge} refers to missing vertex {vertex}")]
    VertexOutOfRange { edge: usize, vertex: usize },
    #[error("vertex {vertex} ({kind}) has no {direction} slot {slot}")]
    SlotArity { vertex: usize, kind: String, direction: &'static str, slot: usize },
    #[error("{direction} slot {slot} of vertex {vertex} is used by {uses} edges")]
    SlotUse { vertex: usize, direction: &'static str, slot: usize, uses: usize },
    #[error("{direction} port {port} is used by {uses} edges")]
    PortUse { direction: &'static str, port: usize, uses: usize },
    #[error("directed cycle through vertex {vertex}")]
    Cycle { vertex: usize },
    #[error("vertex {vertex} ({kind}) expects {expected} parameters, found {found}")]
    ParamCount { vertex: usize, kind: String, expected: usize, found: usize },
    #[error("parameter {value} of vertex {vertex} lies outside [0,1]")]
    ParamRange { vertex: usize, value: String },
    #[error("vertex {vertex} carries an empty permutation")]
    EmptySymmetry { vertex: usize },
}

/// The list of all violated invariants of a graph term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid graph term: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
    #[error("cannot compose: top has {top_outputs} outputs, bottom has {bottom_inputs} inputs")]
    BiarityMismatch { top_outputs: usize, bottom_inputs: usize },
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("malformed graph document: {0}")]
    Format(String),
}

/// A labelled open directed graph with no directed cycles.
///
/// Values are immutable: every operation returns a fresh term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphTerm {
    inputs: usize,
    outputs: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// Slot-to-edge lookup tables of a valid graph.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub vertex_in: Vec<Vec<usize>>,
    pub vertex_out: Vec<Vec<usize>>,
    pub input: Vec<usize>,
    pub output: Vec<usize>,
}

impl GraphTerm {
    /// Assembles a term without checking it. Use [`GraphTerm::validate`] or
    /// [`GraphTerm::checked`] before trusting the result.
    pub fn from_parts(inputs: usize, outputs: usize, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        GraphTerm { inputs, outputs, vertices, edges }
    }

    pub fn checked(inputs: usize, outputs: usize, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let g = Self::from_parts(inputs, outputs, vertices, edges);
        g.validate()?;
        Ok(g)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn biarity(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, pred: impl Fn(&Generator) -> bool) -> bool {
        self.vertices.iter().any(|v| pred(&v.generator))
    }

    /// The graph with a single vertex, wired port by port.
    pub fn corolla(vertex: Vertex) -> Self {
        let (n, m) = vertex.generator.biarity();
        let mut edges = Vec::with_capacity(n + m);
        for i in 0..n {
            edges.push(Edge { source: Source::Input(i), target: Target::Vertex { vertex: 0, slot: i } });
        }
        for j in 0..m {
            edges.push(Edge { source: Source::Vertex { vertex: 0, slot: j }, target: Target::Output(j) });
        }
        GraphTerm { inputs: n, outputs: m, vertices: vec![vertex], edges }
    }

    /// `n` parallel through-strands.
    pub fn unit(n: usize) -> Self {
        let edges = (0..n).map(|i| Edge { source: Source::Input(i), target: Target::Output(i) }).collect();
        GraphTerm { inputs: n, outputs: n, vertices: Vec::new(), edges }
    }

    /// Strands sending input `i` to output `p(i)`.
    pub fn permutation(p: &Permutation) -> Self {
        let edges = (0..p.len())
            .map(|i| Edge { source: Source::Input(i), target: Target::Output(p.apply(i)) })
            .collect();
        GraphTerm { inputs: p.len(), outputs: p.len(), vertices: Vec::new(), edges }
    }

    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        let mut in_use: Vec<Vec<usize>> = self.vertices.iter().map(|v| vec![0; v.generator.biarity().0]).collect();
        let mut out_use: Vec<Vec<usize>> = self.vertices.iter().map(|v| vec![0; v.generator.biarity().1]).collect();
        let mut input_use = vec![0usize; self.inputs];
        let mut output_use = vec![0usize; self.outputs];

        for (vi, v) in self.vertices.iter().enumerate() {
            let expected = v.generator.dimension();
            if v.params.len() != expected {
                violations.push(Violation::ParamCount {
                    vertex: vi,
                    kind: v.generator.name().to_string(),
                    expected,
                    found: v.params.len(),
                });
            }
            for p in &v.params {
                if p.is_negative() || *p > Q::one() {
                    violations.push(Violation::ParamRange { vertex: vi, value: format_rational(p) });
                }
            }
            if let Generator::Symmetry(p) = &v.generator {
                if p.is_empty() {
                    violations.push(Violation::EmptySymmetry { vertex: vi });
                }
            }
        }

        for (ei, e) in self.edges.iter().enumerate() {
            match e.source {
                Source::Input(i) => {
                    if i >= self.inputs {
                        violations.push(Violation::InputOutOfRange { edge: ei, port: i, count: self.inputs });
                    } else {
                        input_use[i] += 1;
                    }
                }
                Source::Vertex { vertex, slot } => {
                    if vertex >= self.vertices.len() {
                        violations.push(Violation::VertexOutOfRange { edge: ei, vertex });
                    } else if slot >= out_use[vertex].len() {
                        violations.push(Violation::SlotArity {
                            vertex,
                            kind: self.vertices[vertex].generator.name().to_string(),
                            direction: "output",
                            slot,
                        });
                    } else {
                        out_use[vertex][slot] += 1;
                    }
                }
            }
            match e.target {
                Target::Output(j) => {
                    if j >= self.outputs {
                        violations.push(Violation::OutputOutOfRange { edge: ei, port: j, count: self.outputs });
                    } else {
                        output_use[j] += 1;
                    }
                }
                Target::Vertex { vertex, slot } => {
                    if vertex >= self.vertices.len() {
                        violations.push(Violation::VertexOutOfRange { edge: ei, vertex });
                    } else if slot >= in_use[vertex].len() {
                        violations.push(Violation::SlotArity {
                            vertex,
                            kind: self.vertices[vertex].generator.name().to_string(),
                            direction: "input",
                            slot,
                        });
                    } else {
                        in_use[vertex][slot] += 1;
                    }
                }
            }
        }

        for (vertex, uses) in in_use.iter().enumerate() {
            for (slot, &u) in uses.iter().enumerate() {
                if u != 1 {
                    violations.push(Violation::SlotUse { vertex, direction: "input", slot, uses: u });
                }
            }
        }
        for (vertex, uses) in out_use.iter().enumerate() {
            for (slot, &u) in uses.iter().enumerate() {
                if u != 1 {
                    violations.push(Violation::SlotUse { vertex, direction: "output", slot, uses: u });
                }
            }
        }
        for (port, &u) in input_use.iter().enumerate() {
            if u != 1 {
                violations.push(Violation::PortUse { direction: "input", port, uses: u });
            }
        }
        for (port, &u) in output_use.iter().enumerate() {
            if u != 1 {
                violations.push(Violation::PortUse { direction: "output", port, uses: u });
            }
        }

        if violations.is_empty() {
            if let Err(vertex) = self.topological_order() {
                violations.push(Violation::Cycle { vertex });
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Lookup tables from slots and ports to edge indices. The term must be valid.
    pub fn incidence(&self) -> Incidence {
        let mut vertex_in: Vec<Vec<usize>> =
            self.vertices.iter().map(|v| vec![usize::MAX; v.generator.biarity().0]).collect();
        let mut vertex_out: Vec<Vec<usize>> =
            self.vertices.iter().map(|v| vec![usize::MAX; v.generator.biarity().1]).collect();
        let mut input = vec![usize::MAX; self.inputs];
        let mut output = vec![usize::MAX; self.outputs];
        for (ei, e) in self.edges.iter().enumerate() {
            match e.source {
                Source::Input(i) => input[i] = ei,
                Source::Vertex { vertex, slot } => vertex_out[vertex][slot] = ei,
            }
            match e.target {
                Target::Output(j) => output[j] = ei,
                Target::Vertex { vertex, slot } => vertex_in[vertex][slot] = ei,
            }
        }
        Incidence { vertex_in, vertex_out, input, output }
    }

    /// Kahn's algorithm, always releasing the smallest ready vertex index.
    /// Returns a vertex on a cycle on failure.
    pub fn topological_order(&self) -> Result<Vec<usize>, usize> {
        let nv = self.vertices.len();
        let mut indegree = vec![0usize; nv];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for e in &self.edges {
            if let (Source::Vertex { vertex: a, .. }, Target::Vertex { vertex: b, .. }) = (e.source, e.target) {
                if a < nv && b < nv {
                    indegree[b] += 1;
                    succ[a].push(b);
                }
            }
        }
        let mut ready: BTreeSet<usize> = (0..nv).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() == nv {
            Ok(order)
        } else {
            Err((0..nv).find(|&v| indegree[v] > 0).unwrap_or(0))
        }
    }

    /// Disjoint union with labellings concatenated left to right.
    pub fn horizontal_compose(gs: &[GraphTerm]) -> GraphTerm {
        let mut out = GraphTerm::unit(0);
        for g in gs {
            let (vo, io, oo) = (out.vertices.len(), out.inputs, out.outputs);
            out.vertices.extend(g.vertices.iter().cloned());
            out.edges.extend(g.edges.iter().map(|e| Edge {
                source: match e.source {
                    Source::Input(i) => Source::Input(i + io),
                    Source::Vertex { vertex, slot } => Source::Vertex { vertex: vertex + vo, slot },
                },
                target: match e.target {
                    Target::Output(j) => Target::Output(j + oo),
                    Target::Vertex { vertex, slot } => Target::Vertex { vertex: vertex + vo, slot },
                },
            }));
            out.inputs += g.inputs;
            out.outputs += g.outputs;
        }
        out
    }

    pub fn beside(&self, other: &GraphTerm) -> GraphTerm {
        GraphTerm::horizontal_compose(&[self.clone(), other.clone()])
    }

    /// Fuses the `i`-th output of `top` with the `i`-th input of `bottom`.
    pub fn vertical_compose(top: &GraphTerm, bottom: &GraphTerm) -> Result<GraphTerm, GraphError> {
        if top.outputs != bottom.inputs {
            return Err(GraphError::BiarityMismatch { top_outputs: top.outputs, bottom_inputs: bottom.inputs });
        }
        let offset = top.vertices.len();
        let bottom_inc = bottom.incidence();
        let shift_target = |t: Target| match t {
            Target::Output(j) => Target::Output(j),
            Target::Vertex { vertex, slot } => Target::Vertex { vertex: vertex + offset, slot },
        };
        let mut edges = Vec::with_capacity(top.edges.len() + bottom.edges.len());
        for e in &top.edges {
            match e.target {
                Target::Output(j) => {
                    let continuation = bottom.edges[bottom_inc.input[j]].target;
                    edges.push(Edge { source: e.source, target: shift_target(continuation) });
                }
                _ => edges.push(*e),
            }
        }
        for e in &bottom.edges {
            if let Source::Vertex { vertex, slot } = e.source {
                edges.push(Edge { source: Source::Vertex { vertex: vertex + offset, slot }, target: shift_target(e.target) });
            }
        }
        let mut vertices = top.vertices.clone();
        vertices.extend(bottom.vertices.iter().cloned());
        Ok(GraphTerm { inputs: top.inputs, outputs: bottom.outputs, vertices, edges })
    }

    pub fn then(&self, bottom: &GraphTerm) -> Result<GraphTerm, GraphError> {
        GraphTerm::vertical_compose(self, bottom)
    }

    /// Relabels inputs: the old input `i` becomes input `sigma(i)`.
    pub fn permute_inputs(&self, sigma: &Permutation) -> Result<GraphTerm, GraphError> {
        if sigma.len() != self.inputs {
            return Err(PermutationError::SizeMismatch { expected: self.inputs, found: sigma.len() }.into());
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            if let Source::Input(i) = e.source {
                e.source = Source::Input(sigma.apply(i));
            }
        }
        Ok(g)
    }

    /// Relabels outputs: the old output `j` becomes output `tau(j)`.
    pub fn permute_outputs(&self, tau: &Permutation) -> Result<GraphTerm, GraphError> {
        if tau.len() != self.outputs {
            return Err(PermutationError::SizeMismatch { expected: self.outputs, found: tau.len() }.into());
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            if let Target::Output(j) = e.target {
                e.target = Target::Output(tau.apply(j));
            }
        }
        Ok(g)
    }

    /// The same graph with the parameters of vertex `v` replaced.
    pub fn with_params(&self, v: usize, params: Vec<Q>) -> GraphTerm {
        let mut g = self.clone();
        g.vertices[v].params = params;
        g
    }

    /// Replaces vertex `v` by the graph `replacement`, which must have the
    /// same biarity as the vertex decoration.
    pub fn substitute_vertex(&self, v: usize, replacement: &GraphTerm) -> GraphTerm {
        let inc = self.incidence();
        let renumber = |w: usize| if w > v { w - 1 } else { w };
        let offset = self.vertices.len() - 1;
        let mut vertices: Vec<Vertex> =
            self.vertices.iter().enumerate().filter(|(i, _)| *i != v).map(|(_, x)| x.clone()).collect();
        vertices.extend(replacement.vertices.iter().cloned());

        let outer_source = |s: Source| match s {
            Source::Input(i) => Source::Input(i),
            Source::Vertex { vertex, slot } => Source::Vertex { vertex: renumber(vertex), slot },
        };
        let outer_target = |t: Target| match t {
            Target::Output(j) => Target::Output(j),
            Target::Vertex { vertex, slot } => Target::Vertex { vertex: renumber(vertex), slot },
        };

        let mut edges = Vec::new();
        for e in &self.edges {
            let touches_source = matches!(e.source, Source::Vertex { vertex, .. } if vertex == v);
            let touches_target = matches!(e.target, Target::Vertex { vertex, .. } if vertex == v);
            if !touches_source && !touches_target {
                edges.push(Edge { source: outer_source(e.source), target: outer_target(e.target) });
            }
        }
        for e in &replacement.edges {
            let source = match e.source {
                Source::Input(i) => outer_source(self.edges[inc.vertex_in[v][i]].source),
                Source::Vertex { vertex, slot } => Source::Vertex { vertex: vertex + offset, slot },
            };
            let target = match e.target {
                Target::Output(j) => outer_target(self.edges[inc.vertex_out[v][j]].target),
                Target::Vertex { vertex, slot } => Target::Vertex { vertex: vertex + offset, slot },
            };
            edges.push(Edge { source, target });
        }
        GraphTerm { inputs: self.inputs, outputs: self.outputs, vertices, edges }
    }

    /// Removes identity-decorated vertices and permutation-decorated vertices,
    /// rewiring through them.
    pub fn absorb_equivalences(&self) -> GraphTerm {
        let mut g = self.clone();
        while let Some(v) = g
            .vertices
            .iter()
            .position(|x| matches!(x.generator, Generator::Unit | Generator::Symmetry(_)))
        {
            let replacement = match &g.vertices[v].generator {
                Generator::Symmetry(p) => GraphTerm::permutation(p),
                _ => GraphTerm::unit(1),
            };
            g = g.substitute_vertex(v, &replacement);
        }
        g
    }

    /// A complete invariant of the labelled isomorphism class.
    ///
    /// Vertices are numbered in breadth-first order starting from the input
    /// ports and then the output ports; each vertex visits its input slots and
    /// then its output slots. Since ports are labelled, isomorphic terms
    /// receive identical numberings.
    pub fn canonical_form(&self) -> CanonicalForm {
        let inc = self.incidence();
        let nv = self.vertices.len();
        let mut number = vec![usize::MAX; nv];
        let mut order = Vec::with_capacity(nv);
        let mut queue = VecDeque::new();
        let visit = |w: usize, number: &mut Vec<usize>, order: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            if number[w] == usize::MAX {
                number[w] = order.len();
                order.push(w);
                queue.push_back(w);
            }
        };
        let mut seeds = Vec::new();
        for &e in &inc.input {
            if let Target::Vertex { vertex, .. } = self.edges[e].target {
                seeds.push(vertex);
            }
        }
        for &e in &inc.output {
            if let Source::Vertex { vertex, .. } = self.edges[e].source {
                seeds.push(vertex);
            }
        }
        seeds.extend(0..nv);
        for s in seeds {
            visit(s, &mut number, &mut order, &mut queue);
            while let Some(w) = queue.pop_front() {
                for &e in &inc.vertex_in[w] {
                    if let Source::Vertex { vertex, .. } = self.edges[e].source {
                        visit(vertex, &mut number, &mut order, &mut queue);
                    }
                }
                for &e in &inc.vertex_out[w] {
                    if let Target::Vertex { vertex, .. } = self.edges[e].target {
                        visit(vertex, &mut number, &mut order, &mut queue);
                    }
                }
            }
        }
        let canon_source = |s: Source| match s {
            Source::Input(i) => Source::Input(i),
            Source::Vertex { vertex, slot } => Source::Vertex { vertex: number[vertex], slot },
        };
        let vertices = order
            .iter()
            .map(|&w| {
                let sources = inc.vertex_in[w].iter().map(|&e| canon_source(self.edges[e].source)).collect();
                (self.vertices[w].generator.clone(), self.vertices[w].params.clone(), sources)
            })
            .collect();
        let outputs = inc.output.iter().map(|&e| canon_source(self.edges[e].source)).collect();
        CanonicalForm { inputs: self.inputs, outputs: self.outputs, vertices, output_sources: outputs }
    }

    /// Decides labelled, decorated isomorphism.
    pub fn iso_equal(&self, other: &GraphTerm) -> bool {
        self.biarity() == other.biarity()
            && self.vertices.len() == other.vertices.len()
            && self.edges.len() == other.edges.len()
            && self.canonical_form() == other.canonical_form()
    }
}

/// Canonical serialization used by [`GraphTerm::iso_equal`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    inputs: usize,
    outputs: usize,
    vertices: Vec<(Generator, Vec<Q>, Vec<Source>)>,
    output_sources: Vec<Source>,
}

impl fmt::Display for GraphTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph ({}, {}) with {} vertices", self.inputs, self.outputs, self.vertices.len())?;
        for (i, v) in self.vertices.iter().enumerate() {
            let params: Vec<String> = v.params.iter().map(format_rational).collect();
            match &v.generator {
                Generator::Symmetry(p) => writeln!(f, "  v{} perm{:?}", i, p.one_based())?,
                g if params.is_empty() => writeln!(f, "  v{} {}", i, g.name())?,
                g => writeln!(f, "  v{} {}({})", i, g.name(), params.join(","))?,
            }
        }
        for e in &self.edges {
            let s = match e.source {
                Source::Input(i) => format!("in{}", i + 1),
                Source::Vertex { vertex, slot } => format!("v{}.out{}", vertex, slot + 1),
            };
            let t = match e.target {
                Target::Output(j) => format!("out{}", j + 1),
                Target::Vertex { vertex, slot } => format!("v{}.in{}", vertex, slot + 1),
            };
            writeln!(f, "  {} -> {}", s, t)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON and DOT export

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EndDoc {
    Input { input: usize },
    Output { output: usize },
    Vertex { vertex: usize, slot: usize },
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    from: EndDoc,
    to: EndDoc,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    kind: String,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    inputs: usize,
    outputs: usize,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

impl GraphTerm {
    /// JSON document with 0-based ports and slots and rationals as `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphDoc {
            inputs: self.inputs,
            outputs: self.outputs,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    kind: v.generator.name().to_string(),
                    params: v.params.iter().map(format_rational).collect(),
                    perm: match &v.generator {
                        Generator::Symmetry(p) => Some(p.images().to_vec()),
                        _ => None,
                    },
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    from: match e.source {
                        Source::Input(input) => EndDoc::Input { input },
                        Source::Vertex { vertex, slot } => EndDoc::Vertex { vertex, slot },
                    },
                    to: match e.target {
                        Target::Output(output) => EndDoc::Output { output },
                        Target::Vertex { vertex, slot } => EndDoc::Vertex { vertex, slot },
                    },
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("graph documents always serialize")
    }

    /// Parses and validates a JSON document produced by [`GraphTerm::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<GraphTerm, GraphError> {
        let doc: GraphDoc = serde_json::from_value(value.clone()).map_err(|e| GraphError::Format(e.to_string()))?;
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for v in doc.vertices {
            let generator = match v.kind.as_str() {
                "eps" => Generator::Counit,
                "delta" => Generator::Coproduct,
                "mu" => Generator::Product,
                "h" => Generator::CounitHomotopy,
                "unit" => Generator::Unit,
                "perm" => Generator::Symmetry(Permutation::new(
                    v.perm.ok_or_else(|| GraphError::Format("perm vertex without images".into()))?,
                )?),
                other => return Err(GraphError::Format(format!("unknown vertex kind `{}`", other))),
            };
            let params = v
                .params
                .iter()
                .map(|p| parse_rational(p).map_err(|e| GraphError::Format(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            vertices.push(Vertex { generator, params });
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in doc.edges {
            let source = match e.from {
                EndDoc::Input { input } => Source::Input(input),
                EndDoc::Vertex { vertex, slot } => Source::Vertex { vertex, slot },
                EndDoc::Output { .. } => return Err(GraphError::Format("edge starts at an output port".into())),
            };
            let target = match e.to {
                EndDoc::Output { output } => Target::Output(output),
                EndDoc::Vertex { vertex, slot } => Target::Vertex { vertex, slot },
                EndDoc::Input { .. } => return Err(GraphError::Format("edge ends at an input port".into())),
            };
            edges.push(Edge { source, target });
        }
        GraphTerm::checked(doc.inputs, doc.outputs, vertices, edges)
    }

    /// Graphviz rendering; vertex shapes follow the generator kind.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph term {\n  rankdir=TB;\n");
        for i in 0..self.inputs {
            out.push_str(&format!("  in{} [shape=plaintext, label=\"in {}\"];\n", i, i + 1));
        }
        for j in 0..self.outputs {
            out.push_str(&format!("  out{} [shape=plaintext, label=\"out {}\"];\n", j, j + 1));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = match v.generator {
                Generator::Counit => "point",
                Generator::Coproduct => "invtriangle",
                Generator::Product => "triangle",
                Generator::CounitHomotopy => "circle",
                Generator::Unit => "square",
                Generator::Symmetry(_) => "box",
            };
            let params: Vec<String> = v.params.iter().map(format_rational).collect();
            let label = if params.is_empty() {
                v.generator.name().to_string()
            } else {
                format!("{}({})", v.generator.name(), params.join(","))
            };
            out.push_str(&format!("  v{} [shape={}, label=\"{}\"];\n", i, shape, label));
        }
        for e in &self.edges {
            let (s, ts) = match e.source {
                Source::Input(i) => (format!("in{}", i), String::new()),
                Source::Vertex { vertex, slot } => (format!("v{}", vertex), format!("taillabel=\"{}\"", slot + 1)),
            };
            let (t, hs) = match e.target {
                Target::Output(j) => (format!("out{}", j), String::new()),
                Target::Vertex { vertex, slot } => (format!("v{}", vertex), format!("headlabel=\"{}\"", slot + 1)),
            };
            let attrs: Vec<String> = [ts, hs].into_iter().filter(|a| !a.is_empty()).collect();
            out.push_str(&format!("  {} -> {} [{}];\n", s, t, attrs.join(", ")));
        }
        out.push_str("}\n");
        out
    }
}

/// Convenience: the parameter of a one-parameter vertex, or zero.
pub fn first_param(v: &Vertex) -> Q {
    v.params.first().cloned().unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mu(s: Q) -> GraphTerm {
        GraphTerm::corolla(Vertex::new(Generator::Product, vec![s]))
    }

    fn delta() -> GraphTerm {
        GraphTerm::corolla(Vertex::plain(Generator::Coproduct))
    }

    fn eps() -> GraphTerm {
        GraphTerm::corolla(Vertex::plain(Generator::Counit))
    }

    #[test]
    fn identity_strand_is_valid() {
        assert!(GraphTerm::unit(1).validate().is_ok());
        assert_eq!(GraphTerm::unit(0).vertex_count(), 0);
        assert_eq!(GraphTerm::unit(0).biarity(), (0, 0));
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let g = GraphTerm::from_parts(
            0,
            0,
            vec![Vertex::new(Generator::CounitHomotopy, vec![q(1, 2)])],
            vec![Edge {
                source: Source::Vertex { vertex: 0, slot: 0 },
                target: Target::Vertex { vertex: 0, slot: 0 },
            }],
        );
        let report = g.validate().unwrap_err();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Cycle { .. })));
    }

    #[test]
    fn product_with_three_inputs_is_rejected() {
        let mut edges = vec![Edge { source: Source::Vertex { vertex: 0, slot: 0 }, target: Target::Output(0) }];
        for i in 0..3 {
            edges.push(Edge { source: Source::Input(i), target: Target::Vertex { vertex: 0, slot: i } });
        }
        let g = GraphTerm::from_parts(3, 1, vec![Vertex::new(Generator::Product, vec![q(1, 2)])], edges);
        let report = g.validate().unwrap_err();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::SlotArity { slot: 2, .. })));
    }

    #[test]
    fn horizontal_composition_concatenates() {
        assert!(GraphTerm::unit(1).beside(&GraphTerm::unit(1)).iso_equal(&GraphTerm::unit(2)));
        let g = eps().beside(&delta());
        assert_eq!(g.biarity(), (2, 2));
        assert!(g.validate().is_ok());
        assert_eq!(GraphTerm::horizontal_compose(&[]), GraphTerm::unit(0));
    }

    #[test]
    fn vertical_composition_with_units() {
        let g = delta().beside(&mu(q(1, 3)));
        let left = GraphTerm::unit(3).then(&g).unwrap();
        let right = g.then(&GraphTerm::unit(3)).unwrap();
        assert!(left.iso_equal(&g));
        assert!(right.iso_equal(&g));
        assert!(delta().then(&GraphTerm::unit(3)).is_err());
    }

    #[test]
    fn bubble_graph_shape() {
        let bubble = delta().then(&mu(q(1, 2))).unwrap();
        assert!(bubble.validate().is_ok());
        assert_eq!(bubble.biarity(), (1, 1));
        assert_eq!(bubble.vertex_count(), 2);
        let inc = bubble.incidence();
        // both outputs of the coproduct feed the product, slot by slot
        for slot in 0..2 {
            let e = bubble.edges()[inc.vertex_out[0][slot]];
            assert_eq!(e.target, Target::Vertex { vertex: 1, slot });
        }
    }

    #[test]
    fn permutations_act() {
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        let crossing = GraphTerm::unit(2).permute_inputs(&swap).unwrap();
        assert!(crossing.iso_equal(&GraphTerm::permutation(&swap)));
        assert!(!crossing.iso_equal(&GraphTerm::unit(2)));
        let g = delta().beside(&delta());
        let back = g.permute_inputs(&swap).unwrap().permute_inputs(&swap.inverse()).unwrap();
        assert!(back.iso_equal(&g));
        assert!(g.permute_inputs(&Permutation::identity(2)).unwrap().iso_equal(&g));
    }

    #[test]
    fn absorb_removes_units_and_symmetries() {
        let unit_vertex = GraphTerm::corolla(Vertex::plain(Generator::Unit));
        assert!(unit_vertex.absorb_equivalences().iso_equal(&GraphTerm::unit(1)));
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        let g = delta().then(&GraphTerm::corolla(Vertex::plain(Generator::Symmetry(swap.clone())))).unwrap();
        let expected = delta().permute_outputs(&swap).unwrap();
        assert!(g.absorb_equivalences().iso_equal(&expected));
    }

    #[test]
    fn json_round_trip() {
        let g = delta().then(&mu(q(2, 7)).beside(&GraphTerm::unit(0))).unwrap();
        let back = GraphTerm::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert_eq!(g.to_json()["vertices"][1]["params"][0], "2/7");
    }

    #[test]
    fn dot_mentions_every_vertex() {
        let dot = delta().then(&mu(q(1, 2))).unwrap().to_dot();
        assert!(dot.contains("invtriangle") && dot.contains("mu(1/2)"));
    }
}
