//! Rewriting engine on weighted nets.
//!
//! A net is a graph over ε, Δ and μ whose edges carry their edge-weight
//! coordinates. Product parameters are recovered from the weights when a
//! canonical graph is read back, so rules only update weights locally.

use std::collections::BTreeSet;

use num::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{NormalError, WeightedSurjection};
use crate::graph::{Edge, Generator, GraphTerm, Source, Target, Vertex};
use crate::presentation::to_edge_weights;
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Eps,
    Delta,
    Mu,
}

/// Endpoint of an edge: an external port or a vertex slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum End {
    Port(usize),
    Slot(usize, usize),
}

#[derive(Debug, Clone)]
struct NEdge {
    src: End,
    tgt: End,
    w: Q,
}

#[derive(Debug, Clone)]
struct NVertex {
    kind: Kind,
    ins: Vec<usize>,
    outs: Vec<usize>,
}

/// Rule families of the rewriting system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleFamily {
    /// A product with a zero-weight input becomes a strand and a counit.
    ZeroMu,
    /// A counit below a product splits into two counits.
    CounitMu,
    /// A counit on one output of a coproduct is absorbed.
    CounitDelta,
    /// A product followed by a coproduct is exchanged.
    Leibniz,
    /// A right-leaning pair of coproducts is rotated to the left comb.
    CoassocRotate,
    /// A right-leaning pair of products is rotated to the left comb.
    AssocRotate,
    /// Adjacent leaves of an output-bound product comb are sorted.
    CommuteSwap,
    /// Leaves adjacent in a coproduct comb and in a product comb merge.
    InvolutionMerge,
}

impl RuleFamily {
    pub const ALL: [RuleFamily; 8] = [
        RuleFamily::ZeroMu,
        RuleFamily::CounitMu,
        RuleFamily::CounitDelta,
        RuleFamily::Leibniz,
        RuleFamily::CoassocRotate,
        RuleFamily::AssocRotate,
        RuleFamily::CommuteSwap,
        RuleFamily::InvolutionMerge,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Redex {
    ZeroMu { mu: usize, slot: usize },
    CounitMu { mu: usize },
    CounitDelta { delta: usize, slot: usize },
    Leibniz { mu: usize, delta: usize },
    CoassocRotate { root: usize },
    AssocRotate { root: usize },
    CommuteSwap { root: usize, position: usize },
    InvolutionMerge { mu_root: usize, mu_position: usize, delta_root: usize, delta_position: usize },
}

impl Redex {
    fn anchor(&self) -> usize {
        match *self {
            Redex::ZeroMu { mu, .. } | Redex::CounitMu { mu } | Redex::Leibniz { mu, .. } => mu,
            Redex::CounitDelta { delta, .. } => delta,
            Redex::CoassocRotate { root } | Redex::AssocRotate { root } | Redex::CommuteSwap { root, .. } => root,
            Redex::InvolutionMerge { mu_root, .. } => mu_root,
        }
    }

    fn family(&self) -> RuleFamily {
        match self {
            Redex::ZeroMu { .. } => RuleFamily::ZeroMu,
            Redex::CounitMu { .. } => RuleFamily::CounitMu,
            Redex::CounitDelta { .. } => RuleFamily::CounitDelta,
            Redex::Leibniz { .. } => RuleFamily::Leibniz,
            Redex::CoassocRotate { .. } => RuleFamily::CoassocRotate,
            Redex::AssocRotate { .. } => RuleFamily::AssocRotate,
            Redex::CommuteSwap { .. } => RuleFamily::CommuteSwap,
            Redex::InvolutionMerge { .. } => RuleFamily::InvolutionMerge,
        }
    }
}

/// Order in which redexes are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Counit elimination, then Leibniz, then the comb rotations, then
    /// sorting, then involution removal; each stage runs to a fixpoint and
    /// the whole pipeline repeats until nothing applies. Within a stage the
    /// leftmost redex in topological order is rewritten first.
    Stratified,
    /// A redex drawn uniformly from all applicable redexes of all families.
    Shuffled { seed: u64 },
}

/// Number of rewrites performed per rule family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: Vec<(RuleFamily, usize)>,
}

impl RewriteStats {
    fn record(&mut self, family: RuleFamily) {
        match self.steps.iter_mut().find(|(f, _)| *f == family) {
            Some((_, c)) => *c += 1,
            None => self.steps.push((family, 1)),
        }
    }

    pub fn total(&self) -> usize {
        self.steps.iter().map(|(_, c)| c).sum()
    }
}

/// Mutable weighted graph over ε, Δ, μ.
#[derive(Debug, Clone)]
pub(crate) struct Net {
    n: usize,
    m: usize,
    vs: Vec<Option<NVertex>>,
    es: Vec<Option<NEdge>>,
    input_edge: Vec<usize>,
    output_edge: Vec<usize>,
}

impl Net {
    /// Builds the weighted net of a valid graph over ε, Δ, μ (identity and
    /// permutation decorations are absorbed first).
    pub(crate) fn from_graph(g: &GraphTerm) -> Result<Net, NormalError> {
        let g = g.absorb_equivalences();
        let weights = to_edge_weights(&g)?;
        let mut net = Net {
            n: g.inputs(),
            m: g.outputs(),
            vs: Vec::new(),
            es: Vec::new(),
            input_edge: vec![usize::MAX; g.inputs()],
            output_edge: vec![usize::MAX; g.outputs()],
        };
        for v in g.vertices() {
            let kind = match v.generator {
                Generator::Counit => Kind::Eps,
                Generator::Coproduct => Kind::Delta,
                Generator::Product => Kind::Mu,
                _ => return Err(NormalError::UnsupportedGenerator(v.generator.name())),
            };
            net.add_vertex(kind);
        }
        for (e, w) in g.edges().iter().zip(weights.weights) {
            let src = match e.source {
                Source::Input(i) => End::Port(i),
                Source::Vertex { vertex, slot } => End::Slot(vertex, slot),
            };
            let tgt = match e.target {
                Target::Output(j) => End::Port(j),
                Target::Vertex { vertex, slot } => End::Slot(vertex, slot),
            };
            net.add_edge(src, tgt, w);
        }
        Ok(net)
    }

    fn add_vertex(&mut self, kind: Kind) -> usize {
        let (i, o) = match kind {
            Kind::Eps => (1, 0),
            Kind::Delta => (1, 2),
            Kind::Mu => (2, 1),
        };
        self.vs.push(Some(NVertex { kind, ins: vec![usize::MAX; i], outs: vec![usize::MAX; o] }));
        self.vs.len() - 1
    }

    fn add_edge(&mut self, src: End, tgt: End, w: Q) -> usize {
        let id = self.es.len();
        self.es.push(Some(NEdge { src, tgt, w }));
        self.register_src(id, src);
        self.register_tgt(id, tgt);
        id
    }

    fn register_src(&mut self, e: usize, src: End) {
        match src {
            End::Port(i) => self.input_edge[i] = e,
            End::Slot(v, s) => self.vertex_mut(v).outs[s] = e,
        }
    }

    fn register_tgt(&mut self, e: usize, tgt: End) {
        match tgt {
            End::Port(j) => self.output_edge[j] = e,
            End::Slot(v, s) => self.vertex_mut(v).ins[s] = e,
        }
    }

    fn set_src(&mut self, e: usize, src: End) {
        self.edge_mut(e).src = src;
        self.register_src(e, src);
    }

    fn set_tgt(&mut self, e: usize, tgt: End) {
        self.edge_mut(e).tgt = tgt;
        self.register_tgt(e, tgt);
    }

    fn edge(&self, e: usize) -> &NEdge {
        self.es[e].as_ref().expect("live edge")
    }

    fn edge_mut(&mut self, e: usize) -> &mut NEdge {
        self.es[e].as_mut().expect("live edge")
    }

    fn vertex(&self, v: usize) -> &NVertex {
        self.vs[v].as_ref().expect("live vertex")
    }

    fn vertex_mut(&mut self, v: usize) -> &mut NVertex {
        self.vs[v].as_mut().expect("live vertex")
    }

    fn kill_edge(&mut self, e: usize) {
        self.es[e] = None;
    }

    fn kill_vertex(&mut self, v: usize) {
        self.vs[v] = None;
    }

    fn weight(&self, e: usize) -> &Q {
        &self.edge(e).w
    }

    fn set_weight(&mut self, e: usize, w: Q) {
        self.edge_mut(e).w = w;
    }

    fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vs.iter().enumerate().filter(|(_, v)| v.is_some()).map(|(i, _)| i)
    }

    fn kind(&self, v: usize) -> Kind {
        self.vertex(v).kind
    }

    /// The vertex at the target end of an edge, with its kind.
    fn tgt_vertex(&self, e: usize) -> Option<(usize, usize, Kind)> {
        match self.edge(e).tgt {
            End::Slot(v, s) => Some((v, s, self.kind(v))),
            End::Port(_) => None,
        }
    }

    fn src_vertex(&self, e: usize) -> Option<(usize, usize, Kind)> {
        match self.edge(e).src {
            End::Slot(v, s) => Some((v, s, self.kind(v))),
            End::Port(_) => None,
        }
    }

    fn vertex_count(&self) -> usize {
        self.vs.iter().flatten().count()
    }

    /// Kahn's algorithm releasing the smallest ready vertex first.
    fn topological(&self) -> Vec<usize> {
        let mut indegree = vec![0usize; self.vs.len()];
        for v in self.live_vertices() {
            for &e in &self.vertex(v).ins {
                if self.src_vertex(e).is_some() {
                    indegree[v] += 1;
                }
            }
        }
        let mut ready: BTreeSet<usize> = self.live_vertices().filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &e in &self.vertex(v).outs {
                if let Some((w, _, _)) = self.tgt_vertex(e) {
                    indegree[w] -= 1;
                    if indegree[w] == 0 {
                        ready.insert(w);
                    }
                }
            }
        }
        order
    }

    // -- comb views -------------------------------------------------------

    /// Leaves of the product tree rooted at `root`, left to right.
    fn mu_leaves(&self, root: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        let mut stack = vec![root];
        let mut order = Vec::new();
        // iterative in-order traversal: expand slot 0 before slot 1
        while let Some(v) = stack.pop() {
            order.push(v);
            for slot in (0..2).rev() {
                let e = self.vertex(v).ins[slot];
                match self.src_vertex(e) {
                    Some((u, _, Kind::Mu)) => stack.push(u),
                    _ => stack.push(usize::MAX - e),
                }
            }
            while let Some(&top) = stack.last() {
                if top > self.vs.len() {
                    leaves.push(usize::MAX - top);
                    stack.pop();
                } else {
                    break;
                }
            }
        }
        leaves
    }

    /// For a left product comb: `(M_1, …, M_{k-1}, leaves)` with `M_1` the
    /// deepest product. `None` when the tree is not a left comb.
    fn mu_comb(&self, root: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut chain = vec![root];
        let mut cur = root;
        loop {
            let right = self.vertex(cur).ins[1];
            if matches!(self.src_vertex(right), Some((_, _, Kind::Mu))) {
                return None;
            }
            match self.src_vertex(self.vertex(cur).ins[0]) {
                Some((u, _, Kind::Mu)) => {
                    chain.push(u);
                    cur = u;
                }
                _ => break,
            }
        }
        chain.reverse();
        let mut leaves = vec![self.vertex(chain[0]).ins[0]];
        for &mv in &chain {
            leaves.push(self.vertex(mv).ins[1]);
        }
        Some((chain, leaves))
    }

    /// For a left coproduct comb rooted at `root`: `(D_1, …, D_{r-1}, leaves)`.
    fn delta_comb(&self, root: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut chain = vec![root];
        let mut cur = root;
        loop {
            let right = self.vertex(cur).outs[1];
            if matches!(self.tgt_vertex(right), Some((_, _, Kind::Delta))) {
                return None;
            }
            match self.tgt_vertex(self.vertex(cur).outs[0]) {
                Some((u, _, Kind::Delta)) => {
                    chain.push(u);
                    cur = u;
                }
                _ => break,
            }
        }
        chain.reverse();
        let mut leaves = vec![self.vertex(chain[0]).outs[0]];
        for &dv in &chain {
            leaves.push(self.vertex(dv).outs[1]);
        }
        Some((chain, leaves))
    }

    /// Topmost coproduct of the coproduct tree containing `v`.
    fn delta_root(&self, mut v: usize) -> usize {
        while let Some((u, _, Kind::Delta)) = self.src_vertex(self.vertex(v).ins[0]) {
            v = u;
        }
        v
    }

    /// Root of a product tree: a product whose output does not feed a product.
    fn is_mu_root(&self, v: usize) -> bool {
        self.kind(v) == Kind::Mu && !matches!(self.tgt_vertex(self.vertex(v).outs[0]), Some((_, _, Kind::Mu)))
    }

    /// The tree reaches an external output through products only.
    fn is_output_bound(&self, root: usize) -> bool {
        matches!(self.edge(self.vertex(root).outs[0]).tgt, End::Port(_))
    }

    /// Input port and left/right path of a leaf reached through coproducts only.
    fn leaf_key(&self, mut e: usize) -> Option<(usize, Vec<usize>)> {
        let mut path = Vec::new();
        loop {
            match self.edge(e).src {
                End::Port(i) => {
                    path.reverse();
                    return Some((i, path));
                }
                End::Slot(v, s) if self.kind(v) == Kind::Delta => {
                    path.push(s);
                    e = self.vertex(v).ins[0];
                }
                End::Slot(..) => return None,
            }
        }
    }

    fn refresh_mu_comb(&mut self, chain: &[usize]) {
        for &mv in chain {
            let total = self.weight(self.vertex(mv).ins[0]) + self.weight(self.vertex(mv).ins[1]);
            let out = self.vertex(mv).outs[0];
            self.set_weight(out, total);
        }
    }

    fn refresh_delta_comb(&mut self, chain: &[usize]) {
        for &dv in chain {
            let total = self.weight(self.vertex(dv).outs[0]) + self.weight(self.vertex(dv).outs[1]);
            let inp = self.vertex(dv).ins[0];
            self.set_weight(inp, total);
        }
    }

    // -- redex search -----------------------------------------------------

    fn redexes(&self, family: RuleFamily, out: &mut Vec<Redex>) {
        for v in self.live_vertices() {
            let vx = self.vertex(v);
            match (family, vx.kind) {
                (RuleFamily::ZeroMu, Kind::Mu) => {
                    for slot in 0..2 {
                        if self.weight(vx.ins[slot]).is_zero() {
                            out.push(Redex::ZeroMu { mu: v, slot });
                            break;
                        }
                    }
                }
                (RuleFamily::CounitMu, Kind::Mu) => {
                    if matches!(self.tgt_vertex(vx.outs[0]), Some((_, _, Kind::Eps))) {
                        out.push(Redex::CounitMu { mu: v });
                    }
                }
                (RuleFamily::CounitDelta, Kind::Delta) => {
                    for slot in 0..2 {
                        if matches!(self.tgt_vertex(vx.outs[slot]), Some((_, _, Kind::Eps))) {
                            out.push(Redex::CounitDelta { delta: v, slot });
                            break;
                        }
                    }
                }
                (RuleFamily::Leibniz, Kind::Mu) => {
                    if let Some((d, _, Kind::Delta)) = self.tgt_vertex(vx.outs[0]) {
                        out.push(Redex::Leibniz { mu: v, delta: d });
                    }
                }
                (RuleFamily::CoassocRotate, Kind::Delta) => {
                    if matches!(self.tgt_vertex(vx.outs[1]), Some((_, _, Kind::Delta))) {
                        out.push(Redex::CoassocRotate { root: v });
                    }
                }
                (RuleFamily::AssocRotate, Kind::Mu) => {
                    if matches!(self.src_vertex(vx.ins[1]), Some((_, _, Kind::Mu))) {
                        out.push(Redex::AssocRotate { root: v });
                    }
                }
                (RuleFamily::CommuteSwap, Kind::Mu) => {
                    if !self.is_mu_root(v) || !self.is_output_bound(v) {
                        continue;
                    }
                    let Some((_, leaves)) = self.mu_comb(v) else { continue };
                    let keys: Vec<_> = leaves.iter().map(|&e| self.leaf_key(e)).collect();
                    for p in 0..leaves.len() - 1 {
                        if let (Some(a), Some(b)) = (&keys[p], &keys[p + 1]) {
                            if a > b {
                                out.push(Redex::CommuteSwap { root: v, position: p });
                            }
                        }
                    }
                }
                (RuleFamily::InvolutionMerge, Kind::Mu) => {
                    if !self.is_mu_root(v) {
                        continue;
                    }
                    let Some((_, leaves)) = self.mu_comb(v) else { continue };
                    for q in 0..leaves.len() - 1 {
                        let (Some((da, _, Kind::Delta)), Some((db, _, Kind::Delta))) =
                            (self.src_vertex(leaves[q]), self.src_vertex(leaves[q + 1]))
                        else {
                            continue;
                        };
                        let root = self.delta_root(da);
                        if self.delta_root(db) != root {
                            continue;
                        }
                        let Some((_, dleaves)) = self.delta_comb(root) else { continue };
                        if let Some(p) = dleaves.iter().position(|&e| e == leaves[q]) {
                            if dleaves.get(p + 1) == Some(&leaves[q + 1]) {
                                out.push(Redex::InvolutionMerge {
                                    mu_root: v,
                                    mu_position: q,
                                    delta_root: root,
                                    delta_position: p,
                                });
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }

    // -- rewrites ---------------------------------------------------------

    fn apply(&mut self, r: &Redex) {
        match *r {
            Redex::ZeroMu { mu, slot } => {
                let zero = self.vertex(mu).ins[slot];
                let other = self.vertex(mu).ins[1 - slot];
                let out = self.vertex(mu).outs[0];
                let tgt = self.edge(out).tgt;
                self.kill_edge(out);
                self.kill_vertex(mu);
                self.set_tgt(other, tgt);
                let c = self.add_vertex(Kind::Eps);
                self.set_tgt(zero, End::Slot(c, 0));
            }
            Redex::CounitMu { mu } => {
                let out = self.vertex(mu).outs[0];
                let (c, _, _) = self.tgt_vertex(out).expect("counit below");
                let ins = self.vertex(mu).ins.clone();
                self.kill_edge(out);
                self.kill_vertex(c);
                self.kill_vertex(mu);
                for e in ins {
                    let c = self.add_vertex(Kind::Eps);
                    self.set_tgt(e, End::Slot(c, 0));
                }
            }
            Redex::CounitDelta { delta, slot } => {
                let capped = self.vertex(delta).outs[slot];
                let kept = self.vertex(delta).outs[1 - slot];
                let inp = self.vertex(delta).ins[0];
                let (c, _, _) = self.tgt_vertex(capped).expect("counit below");
                let tgt = self.edge(kept).tgt;
                self.kill_edge(capped);
                self.kill_edge(kept);
                self.kill_vertex(c);
                self.kill_vertex(delta);
                self.set_tgt(inp, tgt);
            }
            Redex::Leibniz { mu, delta } => self.leibniz(mu, delta),
            Redex::CoassocRotate { root } => {
                let lower = self.tgt_vertex(self.vertex(root).outs[1]).expect("coproduct below").0;
                let p = self.vertex(root).outs[0];
                let e = self.vertex(root).outs[1];
                let q = self.vertex(lower).outs[0];
                let r = self.vertex(lower).outs[1];
                self.set_src(e, End::Slot(root, 0));
                self.set_src(p, End::Slot(lower, 0));
                self.set_src(q, End::Slot(lower, 1));
                self.set_src(r, End::Slot(root, 1));
                let w = self.weight(p) + self.weight(q);
                self.set_weight(e, w);
            }
            Redex::AssocRotate { root } => {
                let lower = self.src_vertex(self.vertex(root).ins[1]).expect("product above").0;
                let p = self.vertex(root).ins[0];
                let e = self.vertex(root).ins[1];
                let q = self.vertex(lower).ins[0];
                let r = self.vertex(lower).ins[1];
                self.set_tgt(e, End::Slot(root, 0));
                self.set_tgt(p, End::Slot(lower, 0));
                self.set_tgt(q, End::Slot(lower, 1));
                self.set_tgt(r, End::Slot(root, 1));
                let w = self.weight(p) + self.weight(q);
                self.set_weight(e, w);
            }
            Redex::CommuteSwap { root, position } => {
                let (chain, leaves) = self.mu_comb(root).expect("left comb");
                let slot_of = |t: usize| if t == 0 { End::Slot(chain[0], 0) } else { End::Slot(chain[t - 1], 1) };
                let (a, b) = (leaves[position], leaves[position + 1]);
                let (sa, sb) = (slot_of(position), slot_of(position + 1));
                self.set_tgt(a, sb);
                self.set_tgt(b, sa);
                self.refresh_mu_comb(&chain);
            }
            Redex::InvolutionMerge { mu_root, mu_position, delta_root, delta_position } => {
                let (mchain, mleaves) = self.mu_comb(mu_root).expect("left comb");
                let (dchain, dleaves) = self.delta_comb(delta_root).expect("left comb");
                let kept = mleaves[mu_position];
                let gone = mleaves[mu_position + 1];
                debug_assert_eq!(dleaves[delta_position], kept);
                let merged = self.weight(kept) + self.weight(gone);
                self.set_weight(kept, merged);

                // product comb: the leaf at position t ≥ 1 enters M_t
                let mt = mchain[mu_position];
                let a = self.vertex(mt).ins[0];
                let o = self.vertex(mt).outs[0];
                let tgt = self.edge(o).tgt;
                self.kill_edge(o);
                self.kill_vertex(mt);
                self.set_tgt(a, tgt);

                // coproduct comb: the leaf at position t ≥ 1 leaves D_t
                let dt = dchain[delta_position];
                let a = self.vertex(dt).ins[0];
                let b = self.vertex(dt).outs[0];
                let src = self.edge(a).src;
                self.kill_edge(a);
                self.kill_vertex(dt);
                self.set_src(b, src);

                self.kill_edge(gone);
                let mchain: Vec<usize> = mchain.into_iter().filter(|&v| v != mt).collect();
                let dchain: Vec<usize> = dchain.into_iter().filter(|&v| v != dt).collect();
                self.refresh_mu_comb(&mchain);
                self.refresh_delta_comb(&dchain);
            }
        }
    }

    fn leibniz(&mut self, mu: usize, delta: usize) {
        let x = self.vertex(mu).ins[0];
        let y = self.vertex(mu).ins[1];
        let mid = self.vertex(mu).outs[0];
        let o1 = self.vertex(delta).outs[0];
        let o2 = self.vertex(delta).outs[1];
        let a1 = self.weight(x).clone();
        let b1 = self.weight(o1).clone();
        let (t1, t2) = (self.edge(o1).tgt, self.edge(o2).tgt);
        self.kill_edge(mid);
        self.kill_vertex(mu);
        self.kill_vertex(delta);
        match a1.cmp(&b1) {
            std::cmp::Ordering::Equal => {
                self.kill_edge(o1);
                self.kill_edge(o2);
                self.set_tgt(x, t1);
                self.set_tgt(y, t2);
            }
            std::cmp::Ordering::Greater => {
                // the first input is cut: its head goes to output 1, its tail joins the second input
                let d = self.add_vertex(Kind::Delta);
                let m = self.add_vertex(Kind::Mu);
                self.set_tgt(x, End::Slot(d, 0));
                self.set_src(o1, End::Slot(d, 0));
                self.add_edge(End::Slot(d, 1), End::Slot(m, 0), &a1 - &b1);
                self.set_tgt(y, End::Slot(m, 1));
                self.set_src(o2, End::Slot(m, 0));
            }
            std::cmp::Ordering::Less => {
                // the second input is cut: its head joins the first input, its tail goes to output 2
                let d = self.add_vertex(Kind::Delta);
                let m = self.add_vertex(Kind::Mu);
                self.set_tgt(y, End::Slot(d, 0));
                self.add_edge(End::Slot(d, 0), End::Slot(m, 1), &b1 - &a1);
                self.set_src(o2, End::Slot(d, 1));
                self.set_tgt(x, End::Slot(m, 0));
                self.set_src(o1, End::Slot(m, 0));
            }
        }
    }

    /// Rewrites with the given families only, leftmost redex first.
    pub(crate) fn run_families(&mut self, families: &[RuleFamily], step_limit: usize) -> Result<usize, NormalError> {
        let mut steps = 0;
        let mut buffer = Vec::new();
        loop {
            buffer.clear();
            for &f in families {
                self.redexes(f, &mut buffer);
            }
            if buffer.is_empty() {
                return Ok(steps);
            }
            let order = self.topological();
            let rank = |v: usize| order.iter().position(|&u| u == v).unwrap_or(usize::MAX);
            let chosen = buffer.iter().min_by_key(|r| rank(r.anchor())).cloned().expect("nonempty");
            self.apply(&chosen);
            steps += 1;
            if steps > step_limit {
                return Err(NormalError::StepLimit(step_limit));
            }
        }
    }

    /// Converts back to a graph term; product parameters are read off the
    /// weights as the share of the second input.
    pub(crate) fn to_graph(&self) -> GraphTerm {
        let live: Vec<usize> = self.live_vertices().collect();
        let index = |v: usize| live.iter().position(|&u| u == v).expect("live vertex");
        let vertices = live
            .iter()
            .map(|&v| match self.kind(v) {
                Kind::Eps => Vertex::plain(Generator::Counit),
                Kind::Delta => Vertex::plain(Generator::Coproduct),
                Kind::Mu => {
                    let out = self.weight(self.vertex(v).outs[0]);
                    let second = self.weight(self.vertex(v).ins[1]);
                    let s = if out.is_zero() { Q::zero() } else { second / out };
                    Vertex::new(Generator::Product, vec![s])
                }
            })
            .collect();
        let edges = self
            .es
            .iter()
            .flatten()
            .map(|e| Edge {
                source: match e.src {
                    End::Port(i) => Source::Input(i),
                    End::Slot(v, slot) => Source::Vertex { vertex: index(v), slot },
                },
                target: match e.tgt {
                    End::Port(j) => Target::Output(j),
                    End::Slot(v, slot) => Target::Vertex { vertex: index(v), slot },
                },
            })
            .collect();
        GraphTerm::from_parts(self.n, self.m, vertices, edges)
    }

    /// Rewrites to a fixpoint. Fails if `step_limit` rewrites do not suffice.
    pub(crate) fn rewrite(&mut self, strategy: Strategy, step_limit: usize) -> Result<RewriteStats, NormalError> {
        let mut stats = RewriteStats::default();
        let mut buffer = Vec::new();
        match strategy {
            Strategy::Stratified => {
                let stages: [&[RuleFamily]; 5] = [
                    &[RuleFamily::ZeroMu, RuleFamily::CounitMu, RuleFamily::CounitDelta],
                    &[RuleFamily::Leibniz],
                    &[RuleFamily::CoassocRotate, RuleFamily::AssocRotate],
                    &[RuleFamily::CommuteSwap],
                    &[RuleFamily::InvolutionMerge],
                ];
                loop {
                    let before = stats.total();
                    for stage in stages {
                        loop {
                            buffer.clear();
                            for &f in stage {
                                self.redexes(f, &mut buffer);
                            }
                            if buffer.is_empty() {
                                break;
                            }
                            let order = self.topological();
                            let rank = |v: usize| order.iter().position(|&u| u == v).unwrap_or(usize::MAX);
                            let chosen = buffer.iter().min_by_key(|r| rank(r.anchor())).cloned().expect("nonempty");
                            self.apply(&chosen);
                            stats.record(chosen.family());
                            if stats.total() > step_limit {
                                return Err(NormalError::StepLimit(step_limit));
                            }
                        }
                    }
                    if stats.total() == before {
                        break;
                    }
                }
            }
            Strategy::Shuffled { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                loop {
                    buffer.clear();
                    for f in RuleFamily::ALL {
                        self.redexes(f, &mut buffer);
                    }
                    let Some(chosen) = buffer.choose(&mut rng).cloned() else { break };
                    self.apply(&chosen);
                    stats.record(chosen.family());
                    if stats.total() > step_limit {
                        return Err(NormalError::StepLimit(step_limit));
                    }
                }
            }
        }
        Ok(stats)
    }

    /// Reads the weighted surjection off an irreducible net and checks that
    /// it is canonical.
    pub(crate) fn extract(&self) -> Result<WeightedSurjection, NormalError> {
        let mut blocks = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let e = self.input_edge[i];
            let strands = match self.tgt_vertex(e) {
                Some((_, _, Kind::Eps)) => Vec::new(),
                Some((d, _, Kind::Delta)) => {
                    let (_, leaves) = self.delta_comb(d).ok_or(NormalError::NotCanonical("coproducts not in left comb"))?;
                    leaves
                }
                _ => vec![e],
            };
            let mut block = Vec::with_capacity(strands.len());
            for s in strands {
                let mut cur = s;
                let output = loop {
                    match self.edge(cur).tgt {
                        End::Port(j) => break j,
                        End::Slot(v, _) if self.kind(v) == Kind::Mu => cur = self.vertex(v).outs[0],
                        End::Slot(..) => return Err(NormalError::NotCanonical("strand does not reach an output")),
                    }
                };
                block.push((output + 1, self.weight(s).clone()));
            }
            blocks.push(block);
        }
        let expected_vertices: usize = blocks.iter().map(|b| b.len().saturating_sub(1) + usize::from(b.is_empty())).sum::<usize>()
            + (0..self.m)
                .map(|j| blocks.iter().flatten().filter(|(f, _)| *f == j + 1).count().saturating_sub(1))
                .sum::<usize>();
        if expected_vertices != self.vertex_count() {
            return Err(NormalError::NotCanonical("unexpected vertices remain"));
        }
        WeightedSurjection::new(self.n, self.m, blocks)
    }

    /// Leaves of every output-bound product tree, for diagnostics.
    #[allow(dead_code)]
    pub(crate) fn output_trees(&self) -> Vec<Vec<usize>> {
        self.live_vertices()
            .filter(|&v| self.is_mu_root(v) && self.is_output_bound(v))
            .map(|v| self.mu_leaves(v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::term::parse_term;

    fn net(s: &str) -> Net {
        Net::from_graph(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn leibniz_middle_case_gives_parallel_strands() {
        let mut n = net("mu(1/2) ; delta");
        // product output weight 2, inputs 1 and 1; coproduct outputs 1 and 1
        n.rewrite(Strategy::Stratified, 100).unwrap();
        let ws = n.extract().unwrap();
        assert_eq!(ws.blocks(), &[vec![(1, q(1, 1))], vec![(2, q(1, 1))]]);
    }

    #[test]
    fn leibniz_first_case_branches_first_input() {
        // a1 = 4/3 > b1 = 1: the first input feeds both outputs
        let mut n = net("mu(1/3) ; delta");
        n.rewrite(Strategy::Stratified, 100).unwrap();
        let ws = n.extract().unwrap();
        assert_eq!(ws.blocks(), &[vec![(1, q(1, 1)), (2, q(1, 3))], vec![(2, q(2, 3))]]);
    }

    #[test]
    fn mu_leaves_in_order() {
        let n = net("(id | id | id) ; (mu(1/2) | id) ; mu(1/3)");
        let trees = n.output_trees();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].len(), 3);
    }

    #[test]
    fn step_limit_is_reported() {
        let mut n = net("delta ; (delta | id) ; (mu(1/2) | id) ; mu(1/2)");
        assert!(matches!(n.rewrite(Strategy::Stratified, 0), Err(NormalError::StepLimit(0))));
    }
}
