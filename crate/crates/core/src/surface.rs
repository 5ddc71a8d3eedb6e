//! Ribbon graphs and oriented surfaces attached to weighted strand patterns.
//!
//! The canonical graph of an element is compactified: every open edge end
//! gets a boundary vertex carrying a loop edge, which closes up into a
//! boundary circle. Internal vertices order their half-edges as input slots
//! followed by output slots; boundary vertices order theirs as loop tail,
//! loop head, port (or loop head first when reversed). Faces are the orbits
//! of `h ↦ next(twin(h))`.
//!
//! Half-edge `2e` is the tail end of edge `e` and `2e + 1` its head end.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use num::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Generator, Source, Target};
use crate::normal::{canonical_graph, normalize, MSElement, NormalError, WeightedSurjection};
use crate::presentation::{to_edge_weights, PresentationError};
use crate::rational::{format_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("elements without outputs have no surface")]
    NoOutputs,
    #[error("arc data does not describe a canonical element: {0}")]
    Unrecoverable(String),
    #[error("no arc with index {0}")]
    NoArc(usize),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Incoming,
    Outgoing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RibbonNode {
    /// A boundary circle vertex; `index` is the 0-based port number.
    Boundary { side: Side, index: usize },
    /// A vertex of the canonical graph.
    Internal { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonEdge {
    pub tail: usize,
    pub head: usize,
    /// Edge weight; `None` for the loop of a boundary circle.
    pub weight: Option<Q>,
}

impl RibbonEdge {
    pub fn is_circle_loop(&self) -> bool {
        self.weight.is_none()
    }
}

/// A graph with a cyclic order of half-edges at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    nodes: Vec<RibbonNode>,
    edges: Vec<RibbonEdge>,
    rotation: Vec<Vec<usize>>,
}

/// Cyclic order at a boundary vertex before collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryOrder {
    /// Loop tail, loop head, port.
    #[default]
    TailFirst,
    /// Loop head, loop tail, port.
    HeadFirst,
}

fn twin(h: usize) -> usize {
    h ^ 1
}

impl RibbonGraph {
    pub fn nodes(&self) -> &[RibbonNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[RibbonEdge] {
        &self.edges
    }

    pub fn rotation(&self, node: usize) -> &[usize] {
        &self.rotation[node]
    }

    fn node_of(&self, h: usize) -> usize {
        let e = &self.edges[h / 2];
        if h % 2 == 0 {
            e.tail
        } else {
            e.head
        }
    }

    fn is_boundary(&self, node: usize) -> bool {
        matches!(self.nodes[node], RibbonNode::Boundary { .. })
    }

    /// The half-edge after `h` in the cyclic order at its vertex.
    pub fn next(&self, h: usize) -> usize {
        let rot = &self.rotation[self.node_of(h)];
        let p = rot.iter().position(|&x| x == h).expect("half-edge listed at its vertex");
        rot[(p + 1) % rot.len()]
    }

    /// Checks that every half-edge appears exactly once, at its own vertex.
    pub fn validate(&self) -> bool {
        let mut seen = vec![false; 2 * self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &h in rot {
                if h >= seen.len() || seen[h] || self.node_of(h) != v {
                    return false;
                }
                seen[h] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Contracts every edge with exactly one end on a boundary circle whose
    /// interior end has no other edge of the same direction, until none is
    /// left. The interior vertex is absorbed into the circle vertex.
    pub fn collapse_edges(&self) -> RibbonGraph {
        let mut g = self.clone();
        while let Some(e) = (0..g.edges.len()).find(|&e| g.collapsible(e)) {
            g = g.contract(e);
        }
        g
    }

    fn collapsible(&self, e: usize) -> bool {
        let edge = &self.edges[e];
        if edge.is_circle_loop() || self.is_boundary(edge.tail) == self.is_boundary(edge.head) {
            return false;
        }
        // the interior end, and the parity of half-edges pointing the same way
        let (inner, parity) = if self.is_boundary(edge.tail) { (edge.head, 1) } else { (edge.tail, 0) };
        self.rotation[inner].iter().filter(|&&h| h % 2 == parity).count() == 1
    }

    fn contract(&self, e: usize) -> RibbonGraph {
        let edge = &self.edges[e];
        let (outer, inner, h_outer, h_inner) = if self.is_boundary(edge.tail) {
            (edge.tail, edge.head, 2 * e, 2 * e + 1)
        } else {
            (edge.head, edge.tail, 2 * e + 1, 2 * e)
        };
        let inner_rot = &self.rotation[inner];
        let p = inner_rot.iter().position(|&h| h == h_inner).expect("listed");
        let spliced: Vec<usize> = (1..inner_rot.len()).map(|k| inner_rot[(p + k) % inner_rot.len()]).collect();
        let mut rotation = self.rotation.clone();
        rotation[outer] = rotation[outer].iter().flat_map(|&h| if h == h_outer { spliced.clone() } else { vec![h] }).collect();
        rotation[inner].clear();
        let mut edges = self.edges.clone();
        for x in edges.iter_mut() {
            if x.tail == inner {
                x.tail = outer;
            }
            if x.head == inner {
                x.head = outer;
            }
        }
        RibbonGraph { nodes: self.nodes.clone(), edges, rotation }.without(&[inner], &[e])
    }

    /// Deletes nodes and edges, renumbering the rest. Deleted nodes must be
    /// isolated once the deleted edges are gone.
    fn without(&self, nodes: &[usize], edges: &[usize]) -> RibbonGraph {
        let node_map: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.nodes.len())
                .map(|v| {
                    if nodes.contains(&v) {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let edge_map: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.edges.len())
                .map(|e| {
                    if edges.contains(&e) {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let half = |h: usize| edge_map[h / 2].map(|e| 2 * e + h % 2);
        RibbonGraph {
            nodes: self.nodes.iter().enumerate().filter(|(v, _)| node_map[*v].is_some()).map(|(_, n)| n.clone()).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(e, _)| edge_map[*e].is_some())
                .map(|(_, x)| RibbonEdge {
                    tail: node_map[x.tail].expect("endpoint kept"),
                    head: node_map[x.head].expect("endpoint kept"),
                    weight: x.weight.clone(),
                })
                .collect(),
            rotation: self
                .rotation
                .iter()
                .enumerate()
                .filter(|(v, _)| node_map[*v].is_some())
                .map(|(_, rot)| rot.iter().filter_map(|&h| half(h)).collect())
                .collect(),
        }
    }

    /// Orbits of `h ↦ next(twin(h))`, each listed from its smallest half-edge.
    pub fn ribbon_loops(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; 2 * self.edges.len()];
        let mut loops = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                orbit.push(h);
                h = self.next(twin(h));
            }
            loops.push(orbit);
        }
        loops
    }

    /// Connected component index of every node.
    pub fn components(&self) -> Vec<usize> {
        let mut comp: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(comp: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while comp[r] != r {
                r = comp[r];
            }
            comp[v] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut comp, e.tail), find(&mut comp, e.head));
            comp[a.max(b)] = a.min(b);
        }
        let roots: Vec<usize> = (0..self.nodes.len()).map(|v| find(&mut comp, v)).collect();
        let labels: Vec<usize> = roots.iter().copied().unique().collect();
        roots.iter().map(|r| labels.iter().position(|l| l == r).expect("root labelled")).collect()
    }

    fn circle_of(&self, node: usize) -> Option<(Side, usize)> {
        match self.nodes[node] {
            RibbonNode::Boundary { side, index } => Some((side, index)),
            RibbonNode::Internal { .. } => None,
        }
    }

    /// Non-loop half-edges at a boundary vertex, read cyclically starting
    /// right after the two half-edges of its loop.
    fn ports_in_order(&self, node: usize) -> Vec<usize> {
        let rot = &self.rotation[node];
        let is_loop = |h: usize| self.edges[h / 2].is_circle_loop();
        let Some(p) = (0..rot.len()).find(|&k| is_loop(rot[k]) && !is_loop(rot[(k + 1) % rot.len()])) else {
            return Vec::new();
        };
        (1..rot.len()).map(|k| rot[(p + k) % rot.len()]).filter(|&h| !is_loop(h)).collect()
    }

    /// The arcs: every non-loop edge, located by its position among the
    /// ports of each end.
    pub fn arcs(&self) -> Vec<ArcData> {
        let locate = |node: usize, h: usize| -> Endpoint {
            match self.circle_of(node) {
                Some((side, index)) => Endpoint::Circle {
                    side,
                    index,
                    position: self.ports_in_order(node).iter().position(|&x| x == h).expect("port listed"),
                },
                None => Endpoint::Interior(node),
            }
        };
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_circle_loop())
            .map(|(i, e)| ArcData {
                tail: locate(e.tail, 2 * i),
                head: locate(e.head, 2 * i + 1),
                weight: e.weight.clone().expect("non-loop edges are weighted"),
            })
            .sorted()
            .collect()
    }

    /// Topological invariants of the closed-up surface with the boundary
    /// disks removed.
    pub fn summary(&self) -> SurfaceSummary {
        let loops = self.ribbon_loops();
        let comp = self.components();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut parts = vec![ComponentSummary::default(); count];
        for (v, &c) in comp.iter().enumerate() {
            parts[c].vertices += 1;
            if self.is_boundary(v) {
                parts[c].boundary += 1;
            }
        }
        for e in &self.edges {
            parts[comp[e.tail]].edges += 1;
        }
        for l in &loops {
            parts[comp[self.node_of(l[0])]].faces += 1;
        }
        for p in &mut parts {
            // the faces bounded by the circle loops are the removed disks
            p.faces -= p.boundary;
            p.euler = p.vertices as i64 - p.edges as i64 + p.faces as i64;
            p.genus = (2 - p.boundary as i64 - p.euler) / 2;
        }
        let total = |f: fn(&ComponentSummary) -> usize| parts.iter().map(f).sum::<usize>();
        let euler = parts.iter().map(|p| p.euler).sum();
        SurfaceSummary {
            vertices: total(|p| p.vertices),
            edges: total(|p| p.edges),
            faces: total(|p| p.faces),
            euler,
            genus: parts.iter().map(|p| p.genus).sum(),
            boundary: total(|p| p.boundary),
            components: parts,
            arcs: self.arcs(),
        }
    }

    /// Recovers the weighted element from the arcs of a collapsed graph.
    pub fn recover(&self) -> Result<WeightedSurjection, SurfaceError> {
        let circles = |side: Side| -> Vec<usize> {
            let mut v: Vec<(usize, usize)> = (0..self.nodes.len())
                .filter_map(|node| match self.circle_of(node) {
                    Some((s, index)) if s == side => Some((index, node)),
                    _ => None,
                })
                .collect();
            v.sort_unstable();
            v.into_iter().map(|(_, node)| node).collect()
        };
        let (ins, outs) = (circles(Side::Incoming), circles(Side::Outgoing));
        if ins.len() + outs.len() != self.nodes.len() {
            return Err(SurfaceError::Unrecoverable("interior vertices remain".into()));
        }
        let mut blocks = Vec::new();
        let mut keys: Vec<Vec<(usize, usize)>> = vec![Vec::new(); outs.len()];
        for (i, &node) in ins.iter().enumerate() {
            let mut block = Vec::new();
            for (pos, h) in self.ports_in_order(node).into_iter().enumerate() {
                let e = &self.edges[h / 2];
                let j = outs.iter().position(|&o| o == e.head).filter(|_| h % 2 == 0).ok_or_else(|| {
                    SurfaceError::Unrecoverable(format!("arc {} does not run from an input to an output", h / 2))
                })?;
                keys[j].push((i, pos));
                block.push((j + 1, e.weight.clone().expect("weighted")));
            }
            blocks.push(block);
        }
        // the arcs must reach each output circle in strand order
        for (j, &node) in outs.iter().enumerate() {
            let seen: Vec<(usize, usize)> = self
                .ports_in_order(node)
                .iter()
                .map(|&h| {
                    let tail = self.edges[h / 2].tail;
                    let i = ins.iter().position(|&x| x == tail).unwrap_or(usize::MAX);
                    let pos = self.ports_in_order(tail).iter().position(|&x| x == twin(h)).unwrap_or(usize::MAX);
                    (i, pos)
                })
                .collect();
            if seen != keys[j] {
                return Err(SurfaceError::Unrecoverable(format!("arcs at output {} are out of order", j + 1)));
            }
        }
        Ok(WeightedSurjection::new(ins.len(), outs.len(), blocks)?)
    }

    /// Deletes an arc and rescales the remaining arcs at its head so their
    /// weights again sum to one. Pairs of arcs with the same ends that sit
    /// next to each other at both ends are then merged, adding weights.
    pub fn remove_arc(&self, arc: usize) -> Result<RibbonGraph, SurfaceError> {
        let e = (0..self.edges.len())
            .filter(|&e| !self.edges[e].is_circle_loop())
            .nth(arc)
            .ok_or(SurfaceError::NoArc(arc))?;
        let head = self.edges[e].head;
        let mut g = self.drop_edge(e);
        let at_head: Vec<usize> = (0..g.edges.len()).filter(|&x| g.edges[x].head == head && !g.edges[x].is_circle_loop()).collect();
        let total: Q = at_head.iter().map(|&x| g.edges[x].weight.clone().expect("arc")).sum();
        if !total.is_zero() {
            for x in at_head {
                g.edges[x].weight = g.edges[x].weight.take().map(|w| w / &total);
            }
        }
        while let Some((a, b)) = g.parallel_pair() {
            let w = g.edges[a].weight.clone().expect("arc") + g.edges[b].weight.clone().expect("arc");
            g.edges[a].weight = Some(w);
            g = g.drop_edge(b);
        }
        Ok(g)
    }

    fn drop_edge(&self, e: usize) -> RibbonGraph {
        let mut g = self.clone();
        for rot in g.rotation.iter_mut() {
            rot.retain(|&h| h / 2 != e);
        }
        g.without(&[], &[e])
    }

    fn parallel_pair(&self) -> Option<(usize, usize)> {
        for node in 0..self.nodes.len() {
            if self.circle_of(node).is_none() {
                continue;
            }
            let ports = self.ports_in_order(node);
            for w in ports.windows(2) {
                let (a, b) = (w[0], w[1]);
                if a % 2 == 0 && b % 2 == 0 && self.edges[a / 2].head == self.edges[b / 2].head {
                    let head_ports = self.ports_in_order(self.edges[a / 2].head);
                    if head_ports.windows(2).any(|x| x[0] == twin(a) && x[1] == twin(b)) {
                        return Some((a / 2, b / 2));
                    }
                }
            }
        }
        None
    }

    /// Graphviz rendering with loop edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ribbon {\n");
        for (v, node) in self.nodes.iter().enumerate() {
            let (label, shape) = match node {
                RibbonNode::Boundary { side: Side::Incoming, index } => (format!("in{}", index + 1), "doublecircle"),
                RibbonNode::Boundary { side: Side::Outgoing, index } => (format!("out{}", index + 1), "doublecircle"),
                RibbonNode::Internal { label } => (label.clone(), "circle"),
            };
            let order = self.rotation[v].iter().join(" ");
            writeln!(out, "  n{v} [label=\"{label}\", shape={shape}, tooltip=\"{order}\"];").expect("string write");
        }
        for (i, e) in self.edges.iter().enumerate() {
            match &e.weight {
                None => writeln!(out, "  n{} -> n{} [style=dashed, label=\"e{i}\"];", e.tail, e.head),
                Some(w) => writeln!(out, "  n{} -> n{} [label=\"e{i}: {}\"];", e.tail, e.head, format_rational(w)),
            }
            .expect("string write");
        }
        out.push_str("}\n");
        out
    }
}

/// One end of an arc.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoint {
    Circle { side: Side, index: usize, position: usize },
    Interior(usize),
}

/// A directed weighted 1-cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcData {
    pub tail: Endpoint,
    pub head: Endpoint,
    #[serde(with = "rational_string")]
    pub weight: Q,
}

mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Q};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub boundary: usize,
    pub euler: i64,
    pub genus: i64,
}

impl ComponentSummary {
    /// χ = 2 − 2g − b with an integral nonnegative genus.
    pub fn consistent(&self) -> bool {
        self.genus >= 0 && 2 - 2 * self.genus - self.boundary as i64 == self.euler
    }
}

/// Counts and invariants of a surface; totals sum over components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: i64,
    pub boundary: usize,
    pub components: Vec<ComponentSummary>,
    pub arcs: Vec<ArcData>,
}

impl SurfaceSummary {
    /// V − E + F agrees with the Euler characteristic of every component.
    pub fn consistent(&self) -> bool {
        self.components.iter().all(ComponentSummary::consistent)
            && self.vertices as i64 - self.edges as i64 + self.faces as i64 == self.euler
            && self.euler == 2 * self.components.len() as i64 - 2 * self.genus - self.boundary as i64
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// The invariants without the arc list.
    pub fn topology(&self) -> (i64, i64, usize, usize) {
        (self.euler, self.genus, self.boundary, self.components.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

/// The compactified canonical graph of `x` as a ribbon graph, before
/// collapse.
pub fn to_ribbon(x: &WeightedSurjection) -> Result<RibbonGraph, SurfaceError> {
    to_ribbon_with(x, &vec![BoundaryOrder::TailFirst; x.n() + x.m()])
}

/// As [`to_ribbon`] with a chosen cyclic order at every boundary vertex,
/// inputs first.
pub fn to_ribbon_with(x: &WeightedSurjection, orders: &[BoundaryOrder]) -> Result<RibbonGraph, SurfaceError> {
    let (n, m) = x.biarity();
    if m == 0 {
        return Err(SurfaceError::NoOutputs);
    }
    let g = x.to_graph();
    let weights = to_edge_weights(&g)?;
    let inc = g.incidence();
    let mut nodes: Vec<RibbonNode> = (0..n)
        .map(|index| RibbonNode::Boundary { side: Side::Incoming, index })
        .chain((0..m).map(|index| RibbonNode::Boundary { side: Side::Outgoing, index }))
        .collect();
    nodes.extend(g.vertices().iter().map(|v| RibbonNode::Internal { label: v.generator.name().to_string() }));
    let mut edges: Vec<RibbonEdge> = (0..n + m).map(|b| RibbonEdge { tail: b, head: b, weight: None }).collect();
    let internal = n + m;
    for (ei, e) in g.edges().iter().enumerate() {
        let tail = match e.source {
            Source::Input(i) => i,
            Source::Vertex { vertex, .. } => internal + vertex,
        };
        let head = match e.target {
            Target::Output(j) => n + j,
            Target::Vertex { vertex, .. } => internal + vertex,
        };
        edges.push(RibbonEdge { tail, head, weight: Some(weights.weights[ei].clone()) });
    }
    let edge_of = |ei: usize| internal + ei;
    let mut rotation: Vec<Vec<usize>> = (0..n + m)
        .map(|b| match orders.get(b).copied().unwrap_or_default() {
            BoundaryOrder::TailFirst => vec![2 * b, 2 * b + 1],
            BoundaryOrder::HeadFirst => vec![2 * b + 1, 2 * b],
        })
        .collect();
    for (i, &e) in inc.input.iter().enumerate() {
        rotation[i].push(2 * edge_of(e));
    }
    for (j, &e) in inc.output.iter().enumerate() {
        rotation[n + j].push(2 * edge_of(e) + 1);
    }
    for v in 0..g.vertices().len() {
        let ins = inc.vertex_in[v].iter().map(|&e| 2 * edge_of(e) + 1);
        let outs = inc.vertex_out[v].iter().map(|&e| 2 * edge_of(e));
        rotation.push(ins.chain(outs).collect());
    }
    let rg = RibbonGraph { nodes, edges, rotation };
    debug_assert!(rg.validate());
    Ok(rg)
}

/// Summary of the collapsed surface of a canonical element.
pub fn surface_summary(x: &WeightedSurjection) -> Result<SurfaceSummary, SurfaceError> {
    Ok(to_ribbon(x)?.collapse_edges().summary())
}

/// Summary of an element of MS; the counit class has no surface.
pub fn element_surface(e: &MSElement) -> Result<SurfaceSummary, SurfaceError> {
    match e {
        MSElement::Counit { .. } => Err(SurfaceError::NoOutputs),
        MSElement::Surjection(x) => surface_summary(x),
    }
}

/// Sends the weight of strand `k` (in block order) to zero and normalizes.
pub fn degenerate_strand(x: &WeightedSurjection, k: usize) -> Result<MSElement, SurfaceError> {
    let mut t = 0;
    let blocks: Vec<Vec<(usize, Q)>> = x
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|(v, w)| {
                    t += 1;
                    (*v, if t - 1 == k { Q::zero() } else { w.clone() })
                })
                .collect()
        })
        .collect();
    Ok(normalize(&canonical_graph(x.n(), x.m(), &blocks))?)
}

/// Strands whose weight can go to zero without emptying an output.
pub fn removable_strands(x: &WeightedSurjection) -> Vec<usize> {
    let ty = x.surjection_type();
    x.blocks().iter().flatten().enumerate().filter(|(_, (v, _))| ty.multiplicity(*v) > 1).map(|(k, _)| k).collect()
}

/// Index of strand `k` among the arcs of the collapsed surface of `x`.
pub fn arc_of_strand(rg: &RibbonGraph, x: &WeightedSurjection, k: usize) -> Option<usize> {
    let (i, pos) = x
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, b)| (0..b.len()).map(move |p| (i, p)))
        .nth(k)?;
    let arcs: Vec<usize> = (0..rg.edges.len()).filter(|&e| !rg.edges[e].is_circle_loop()).collect();
    let node = rg.nodes.iter().position(|n| *n == RibbonNode::Boundary { side: Side::Incoming, index: i })?;
    let h = *rg.ports_in_order(node).get(pos)?;
    arcs.iter().position(|&e| e == h / 2)
}

/// Topology of the collapsed surface under random cyclic orders at the
/// boundary vertices, compared with the default choice.
pub fn probe_boundary_orders<R: Rng>(x: &WeightedSurjection, trials: usize, rng: &mut R) -> Result<bool, SurfaceError> {
    let base = surface_summary(x)?.topology();
    for _ in 0..trials {
        let orders: Vec<BoundaryOrder> = (0..x.n() + x.m())
            .map(|_| if rng.gen_bool(0.5) { BoundaryOrder::HeadFirst } else { BoundaryOrder::TailFirst })
            .collect();
        if to_ribbon_with(x, &orders)?.collapse_edges().summary().topology() != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A ribbon graph from explicit data, for hand-built examples.
pub fn ribbon_from_parts(
    nodes: Vec<RibbonNode>,
    edges: Vec<(usize, usize, Option<Q>)>,
    rotation: Vec<Vec<usize>>,
) -> Option<RibbonGraph> {
    let edges = edges.into_iter().map(|(tail, head, weight)| RibbonEdge { tail, head, weight }).collect();
    let g = RibbonGraph { nodes, edges, rotation };
    g.validate().then_some(g)
}

/// Internal vertices left after collapse, by generator name.
pub fn remaining_generators(rg: &RibbonGraph) -> BTreeSet<String> {
    rg.nodes
        .iter()
        .filter_map(|n| match n {
            RibbonNode::Internal { label } => Some(label.clone()),
            RibbonNode::Boundary { .. } => None,
        })
        .collect()
}

/// Whether the canonical graph of `x` contains a product vertex.
pub fn has_products(x: &WeightedSurjection) -> bool {
    x.to_graph().contains(|k| *k == Generator::Product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::SurjectionType;
    use crate::rational::q;

    fn form(m: usize, seq: &[usize]) -> WeightedSurjection {
        SurjectionType::sequence(m, seq).unwrap().generic_weights()
    }

    #[test]
    fn identity_is_an_annulus() {
        let x = WeightedSurjection::unit(1);
        let rg = to_ribbon(&x).unwrap();
        assert_eq!(rg.collapse_edges(), rg);
        let s = rg.summary();
        assert_eq!((s.genus, s.boundary), (0, 2));
        assert_eq!(s.arcs.len(), 1);
        assert!(s.consistent());
    }

    #[test]
    fn coproduct_is_a_pair_of_pants() {
        let x = form(2, &[1, 2]);
        let s = surface_summary(&x).unwrap();
        assert_eq!((s.genus, s.boundary, s.components.len()), (0, 3, 1));
        assert_eq!(s.arcs.len(), 2);
    }

    #[test]
    fn cup_one_and_cup_two() {
        let rg = to_ribbon(&form(2, &[1, 2, 1])).unwrap();
        assert_eq!(rg.nodes().iter().filter(|n| matches!(n, RibbonNode::Boundary { .. })).count(), 3);
        let s = rg.collapse_edges().summary();
        assert_eq!((s.genus, s.arcs.len()), (0, 3));
        assert_eq!(surface_summary(&form(2, &[1, 2, 1, 2])).unwrap().genus, 1);
    }

    #[test]
    fn collapse_removes_every_interior_vertex() {
        let x = form(3, &[1, 2, 3, 1, 2]);
        let c = to_ribbon(&x).unwrap().collapse_edges();
        assert!(remaining_generators(&c).is_empty());
        assert_eq!(c.collapse_edges(), c);
        assert_eq!(c.recover().unwrap(), x);
    }

    #[test]
    fn theta_graph_loops() {
        let nodes = vec![RibbonNode::Internal { label: "a".into() }, RibbonNode::Internal { label: "b".into() }];
        let edges = vec![(0, 1, Some(q(1, 1))), (0, 1, Some(q(1, 1))), (0, 1, Some(q(1, 1)))];
        let same = ribbon_from_parts(nodes.clone(), edges.clone(), vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(same.ribbon_loops().len(), 1);
        let opposite = ribbon_from_parts(nodes, edges, vec![vec![0, 2, 4], vec![5, 3, 1]]).unwrap();
        assert_eq!(opposite.ribbon_loops().len(), 3);
        let single = ribbon_from_parts(
            vec![RibbonNode::Internal { label: "a".into() }, RibbonNode::Internal { label: "b".into() }],
            vec![(0, 1, Some(q(1, 1)))],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        assert_eq!(single.ribbon_loops(), vec![vec![0, 1]]);
    }

    #[test]
    fn capped_input_is_a_separate_disk() {
        let x = WeightedSurjection::new(2, 1, vec![vec![], vec![(1, q(1, 1))]]).unwrap();
        let s = surface_summary(&x).unwrap();
        assert_eq!(s.components.len(), 2);
        assert!(s.consistent());
        assert_eq!(to_ribbon(&x).unwrap().collapse_edges().recover().unwrap(), x);
    }

    #[test]
    fn removing_an_arc_matches_degeneration() {
        let x = form(2, &[1, 2, 1]);
        let rg = to_ribbon(&x).unwrap().collapse_edges();
        let arc = arc_of_strand(&rg, &x, 0).unwrap();
        let removed = rg.remove_arc(arc).unwrap();
        let limit = degenerate_strand(&x, 0).unwrap();
        assert_eq!(removed.summary(), element_surface(&limit).unwrap());
        assert_eq!(removed.recover().unwrap(), *limit.as_surjection().unwrap());
    }

    #[test]
    fn counit_has_no_surface() {
        assert!(element_surface(&MSElement::Counit { n: 2 }).is_err());
    }
}
