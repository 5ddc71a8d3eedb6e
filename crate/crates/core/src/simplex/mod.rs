//! Pointwise action of the generators on standard simplices and on
//! geometric realizations of simplicial sets.
//!
//! A point of Δ^d is written in ordered coordinates 0 ≤ x_1 ≤ … ≤ x_d ≤ 1;
//! the vertex [j] has its last j coordinates equal to 1. Generators act
//! coordinatewise.

mod sset;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

pub use sset::{push_point, Cell, RealizationPoint, SimplexRef, SimplicialSet, SsetError};

use crate::chains::{join, Face};
use crate::graph::{first_param, Generator, GraphTerm};
use crate::random::random_simplex_point;
use crate::rational::{format_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("coordinates {0} are not an ordered chain in [0,1]")]
    NotMonotone(String),
    #[error("expected {expected} input points, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("input points live in different dimensions")]
    DimensionMismatch,
    #[error("parameter {0} lies outside [0,1]")]
    Parameter(String),
    #[error("face or degeneracy index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
}

/// Scalars usable as simplex coordinates: exact rationals or floats.
pub trait Coord: Clone + PartialOrd + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(q: &Q) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    /// Equality up to `tolerance`; exact for rationals.
    fn close(&self, other: &Self, tolerance: f64) -> bool;
    fn to_f64(&self) -> f64;
    fn render(&self) -> String;

    fn is_boundary(&self, tolerance: f64) -> bool {
        self.close(&Self::zero(), tolerance) || self.close(&Self::one(), tolerance)
    }
}

impl Coord for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn close(&self, other: &Self, _tolerance: f64) -> bool {
        self == other
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Coord for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_q(q: &Q) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn close(&self, other: &Self, tolerance: f64) -> bool {
        (self - other).abs() <= tolerance
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Default tolerance for float coordinates.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// A point of Δ^d in ordered coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPoint<C: Coord = Q> {
    coords: Vec<C>,
}

impl<C: Coord> SimplexPoint<C> {
    pub fn new(coords: Vec<C>) -> Result<Self, SimplexError> {
        let ok = coords.iter().all(|c| *c >= C::zero() && *c <= C::one())
            && coords.windows(2).all(|w| w[0] <= w[1]);
        if !ok {
            return Err(SimplexError::NotMonotone(coords.iter().map(Coord::render).join(",")));
        }
        Ok(SimplexPoint { coords })
    }

    /// The vertex [j] of Δ^d.
    pub fn vertex(d: usize, j: usize) -> Self {
        let coords = (0..d).map(|i| if i >= d - j { C::one() } else { C::zero() }).collect();
        SimplexPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    /// Number of distinct coordinate values other than 0 and 1.
    pub fn skeleton_level(&self, tolerance: f64) -> usize {
        let mut values: Vec<&C> = Vec::new();
        for c in &self.coords {
            if !c.is_boundary(tolerance) && !values.iter().any(|v| v.close(c, tolerance)) {
                values.push(c);
            }
        }
        values.len()
    }

    /// Barycentric coordinates t_0, …, t_d: t_j = x_{d+1−j} − x_{d−j}
    /// with x_0 = 0 and x_{d+1} = 1.
    pub fn barycentric(&self) -> Vec<C> {
        let d = self.dim();
        let x = |i: usize| -> C {
            if i == 0 {
                C::zero()
            } else if i == d + 1 {
                C::one()
            } else {
                self.coords[i - 1].clone()
            }
        };
        (0..=d).map(|j| x(d + 1 - j).sub(&x(d - j))).collect()
    }

    /// Inverse of [`SimplexPoint::barycentric`]: x_i = t_{d+1−i} + … + t_d.
    pub fn from_barycentric(t: &[C]) -> Self {
        let d = t.len() - 1;
        let mut coords = Vec::with_capacity(d);
        let mut acc = C::zero();
        for i in 1..=d {
            acc = acc.add(&t[d + 1 - i]);
            coords.push(acc.clone());
        }
        SimplexPoint { coords }
    }

    /// The coface δ_i : Δ^d → Δ^{d+1}: prepend 0 (i = 0), repeat x_i
    /// (0 < i ≤ d) or append 1 (i = d + 1).
    pub fn coface(&self, i: usize) -> Result<Self, SimplexError> {
        let d = self.dim();
        let mut coords = self.coords.clone();
        match i {
            0 => coords.insert(0, C::zero()),
            i if i <= d => coords.insert(i, self.coords[i - 1].clone()),
            i if i == d + 1 => coords.push(C::one()),
            _ => return Err(SimplexError::Index { index: i, dim: d }),
        }
        Ok(SimplexPoint { coords })
    }

    /// The codegeneracy σ_i : Δ^d → Δ^{d−1}, deleting x_i (1 ≤ i ≤ d).
    pub fn codegeneracy(&self, i: usize) -> Result<Self, SimplexError> {
        if i == 0 || i > self.dim() {
            return Err(SimplexError::Index { index: i, dim: self.dim() });
        }
        let mut coords = self.coords.clone();
        coords.remove(i - 1);
        Ok(SimplexPoint { coords })
    }

    pub fn close(&self, other: &Self, tolerance: f64) -> bool {
        self.dim() == other.dim() && self.coords.iter().zip(&other.coords).all(|(a, b)| a.close(b, tolerance))
    }

    /// Vertices whose barycentric coordinate is positive.
    pub fn carrier(&self, tolerance: f64) -> Face {
        let zero = C::zero();
        self.barycentric().iter().enumerate().filter(|(_, t)| !t.close(&zero, tolerance)).map(|(j, _)| j).collect()
    }

    /// The barycenter of a face of Δ^d.
    pub fn barycenter(d: usize, face: &[usize]) -> Self {
        let share = C::one().div(&C::from_q(&Q::from_integer((face.len() as i64).into())));
        let t: Vec<C> = (0..=d).map(|j| if face.contains(&j) { share.clone() } else { C::zero() }).collect();
        SimplexPoint::from_barycentric(&t)
    }

    pub fn to_f64(&self) -> SimplexPoint<f64> {
        SimplexPoint { coords: self.coords.iter().map(Coord::to_f64).collect() }
    }
}

impl<C: Coord> fmt::Display for SimplexPoint<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().map(Coord::render).join(", "))
    }
}

/// Parses comma-separated rationals into a point.
pub fn parse_point(text: &str) -> Result<SimplexPoint<Q>, SimplexError> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.trim().is_empty() {
        return SimplexPoint::new(Vec::new());
    }
    let coords: Result<Vec<Q>, _> = text.split(',').map(|s| crate::rational::parse_rational(s.trim())).collect();
    SimplexPoint::new(coords.map_err(|_| SimplexError::NotMonotone(text.to_string()))?)
}

fn half<C: Coord>() -> C {
    C::one().div(&C::one().add(&C::one()))
}

fn two<C: Coord>() -> C {
    C::one().add(&C::one())
}

/// First output of Δ on one coordinate.
pub fn delta_left<C: Coord>(x: &C) -> C {
    if *x <= half() {
        C::zero()
    } else {
        two::<C>().mul(x).sub(&C::one())
    }
}

/// Second output of Δ on one coordinate.
pub fn delta_right<C: Coord>(x: &C) -> C {
    if *x <= half() {
        two::<C>().mul(x)
    } else {
        C::one()
    }
}

/// φ_s on one coordinate.
pub fn phi<C: Coord>(s: &C, x: &C) -> C {
    let corner = two::<C>().sub(s).div(&two());
    if *x <= corner {
        two::<C>().mul(x).div(&two::<C>().sub(s))
    } else {
        C::one()
    }
}

/// The literal two-point interpolation ψ_s(x, y) = s·x + (1−s)·y.
pub fn psi<C: Coord>(s: &C, x: &C, y: &C) -> C {
    s.mul(x).add(&C::one().sub(s).mul(y))
}

/// The product μ_s on one coordinate pair: (1−s)·x + s·y, so that s is the
/// share of the second input.
pub fn mu<C: Coord>(s: &C, x: &C, y: &C) -> C {
    psi(&C::one().sub(s), x, y)
}

fn check_param(q: &Q) -> Result<(), SimplexError> {
    if q.is_negative() || *q > <Q as One>::one() {
        return Err(SimplexError::Parameter(format_rational(q)));
    }
    Ok(())
}

/// Applies one generator to a tuple of points of a common dimension.
pub fn eval_generator<C: Coord>(
    generator: &Generator,
    params: &[Q],
    points: &[SimplexPoint<C>],
) -> Result<Vec<SimplexPoint<C>>, SimplexError> {
    let (n, _) = generator.biarity();
    if points.len() != n {
        return Err(SimplexError::Arity { expected: n, found: points.len() });
    }
    if points.windows(2).any(|w| w[0].dim() != w[1].dim()) {
        return Err(SimplexError::DimensionMismatch);
    }
    for p in params {
        check_param(p)?;
    }
    let map = |p: &SimplexPoint<C>, f: &dyn Fn(&C) -> C| SimplexPoint { coords: p.coords.iter().map(f).collect() };
    Ok(match generator {
        Generator::Counit => Vec::new(),
        Generator::Coproduct => vec![map(&points[0], &delta_left), map(&points[0], &delta_right)],
        Generator::Product => {
            let s = C::from_q(&params[0]);
            let coords = points[0].coords.iter().zip(&points[1].coords).map(|(x, y)| mu(&s, x, y)).collect();
            vec![SimplexPoint { coords }]
        }
        Generator::CounitHomotopy => {
            let s = C::from_q(&params[0]);
            vec![map(&points[0], &|x| phi(&s, x))]
        }
        Generator::Unit => vec![points[0].clone()],
        Generator::Symmetry(p) => {
            let mut out = points.to_vec();
            for (i, pt) in points.iter().enumerate() {
                out[p.apply(i)] = pt.clone();
            }
            out
        }
    })
}

/// Evaluates a graph on a tuple of points, vertex by vertex.
pub fn eval_term<C: Coord>(g: &GraphTerm, points: &[SimplexPoint<C>]) -> Result<Vec<SimplexPoint<C>>, SimplexError> {
    if points.len() != g.inputs() {
        return Err(SimplexError::Arity { expected: g.inputs(), found: points.len() });
    }
    if points.windows(2).any(|w| w[0].dim() != w[1].dim()) {
        return Err(SimplexError::DimensionMismatch);
    }
    let inc = g.incidence();
    let order = g.topological_order().expect("valid graph is acyclic");
    let mut values: Vec<Option<SimplexPoint<C>>> = vec![None; g.edges().len()];
    for (i, p) in points.iter().enumerate() {
        values[inc.input[i]] = Some(p.clone());
    }
    for v in order {
        let vertex = &g.vertices()[v];
        let ins: Vec<SimplexPoint<C>> =
            inc.vertex_in[v].iter().map(|&e| values[e].take().expect("value computed upstream")).collect();
        let outs = eval_generator(&vertex.generator, &vertex.params, &ins)?;
        for (&e, p) in inc.vertex_out[v].iter().zip(outs) {
            values[e] = Some(p);
        }
    }
    Ok(inc.output.iter().map(|&e| values[e].take().expect("output computed")).collect())
}

/// Outcome of a sampled property check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub samples: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(describe());
        }
    }
}

/// Number of parameters strictly inside (0, 1) across the vertices of `g`.
pub fn interior_parameters(g: &GraphTerm) -> usize {
    g.vertices().iter().flat_map(|v| v.params.iter()).filter(|q| q.is_positive() && **q < <Q as One>::one()).count()
}

fn random_inputs<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<SimplexPoint<Q>> {
    (0..n).map(|_| SimplexPoint { coords: random_simplex_point(rng, d, 12) }).collect()
}

/// Cellularity on random points: the total skeleton level of the outputs
/// may not exceed that of the inputs plus the number of interior
/// parameters.
pub fn check_cellular<R: Rng>(g: &GraphTerm, d: usize, samples: usize, rng: &mut R) -> CheckReport {
    let extra = interior_parameters(g);
    check_cellular_with(g.inputs(), d, extra, samples, rng, |pts| eval_term(g, pts).expect("valid evaluation"))
}

/// Cellularity of an arbitrary map on tuples of points.
pub fn check_cellular_with<R: Rng>(
    inputs: usize,
    d: usize,
    extra: usize,
    samples: usize,
    rng: &mut R,
    f: impl Fn(&[SimplexPoint<Q>]) -> Vec<SimplexPoint<Q>>,
) -> CheckReport {
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let pts = random_inputs(rng, inputs, d);
        let outs = f(&pts);
        let lin: usize = pts.iter().map(|p| p.skeleton_level(0.0)).sum();
        let lout: usize = outs.iter().map(|p| p.skeleton_level(0.0)).sum();
        report.record(lout <= lin + extra, || {
            format!("inputs {} of level {lin} gave outputs {} of level {lout}", pts.iter().join(" "), outs.iter().join(" "))
        });
    }
    report
}

/// A structure map of the cosimplicial space Δ^•.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicialOp {
    Coface(usize),
    Codegeneracy(usize),
}

impl SimplicialOp {
    pub fn apply<C: Coord>(&self, p: &SimplexPoint<C>) -> Result<SimplexPoint<C>, SimplexError> {
        match *self {
            SimplicialOp::Coface(i) => p.coface(i),
            SimplicialOp::Codegeneracy(i) => p.codegeneracy(i),
        }
    }

    /// All cofaces and codegeneracies with domain Δ^d.
    pub fn all(d: usize) -> Vec<SimplicialOp> {
        let mut out: Vec<SimplicialOp> = (0..=d + 1).map(SimplicialOp::Coface).collect();
        out.extend((1..=d).map(SimplicialOp::Codegeneracy));
        out
    }
}

/// Naturality on random points: Φ(g, op(x)) = op(Φ(g, x)) componentwise.
pub fn check_naturality<R: Rng>(g: &GraphTerm, op: SimplicialOp, d: usize, samples: usize, rng: &mut R) -> CheckReport {
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let pts = random_inputs(rng, g.inputs(), d);
        let moved: Vec<_> = pts.iter().map(|p| op.apply(p).expect("index in range")).collect();
        let lhs = eval_term(g, &moved).expect("valid evaluation");
        let rhs: Vec<_> = eval_term(g, &pts).expect("valid evaluation").iter().map(|p| op.apply(p).expect("index")).collect();
        report.record(lhs == rhs, || format!("{op:?} at {}", pts.iter().join(" ")));
    }
    report
}

/// The same check in float coordinates with a tolerance.
pub fn check_naturality_float<R: Rng>(
    g: &GraphTerm,
    op: SimplicialOp,
    d: usize,
    samples: usize,
    tolerance: f64,
    rng: &mut R,
) -> CheckReport {
    let mut report = CheckReport::default();
    for _ in 0..samples {
        let pts: Vec<SimplexPoint<f64>> = random_inputs(rng, g.inputs(), d).iter().map(SimplexPoint::to_f64).collect();
        let moved: Vec<_> = pts.iter().map(|p| op.apply(p).expect("index in range")).collect();
        let lhs = eval_term(g, &moved).expect("valid evaluation");
        let rhs: Vec<_> = eval_term(g, &pts).expect("valid evaluation").iter().map(|p| op.apply(p).expect("index")).collect();
        let ok = lhs.len() == rhs.len() && lhs.iter().zip(&rhs).all(|(a, b)| a.close(b, tolerance));
        report.record(ok, || format!("{op:?} at {}", pts.iter().join(" ")));
    }
    report
}

/// Cells swept out by a generator on a tuple of faces, ranging over its
/// parameter. Each entry lists one face per output.
pub fn face_image(generator: &Generator, faces: &[Face]) -> BTreeSet<Vec<Face>> {
    let mut out = BTreeSet::new();
    match generator {
        Generator::Coproduct => {
            let f = &faces[0];
            for i in 0..f.len() {
                out.insert(vec![f[..=i].to_vec(), f[i..].to_vec()]);
            }
        }
        Generator::Counit => {
            out.insert(Vec::new());
        }
        Generator::Product => {
            let mut all: Vec<usize> = faces.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            out.insert(vec![all]);
        }
        Generator::CounitHomotopy | Generator::Unit => {
            out.insert(vec![faces[0].clone()]);
        }
        Generator::Symmetry(p) => {
            let mut v = faces.to_vec();
            for (i, f) in faces.iter().enumerate() {
                v[p.apply(i)] = f.clone();
            }
            out.insert(v);
        }
    }
    out
}

/// The cells of [`face_image`] of full dimension: the input dimensions plus
/// the parameter dimension. These are the cells seen by the chain-level
/// action.
pub fn face_action(generator: &Generator, faces: &[Face]) -> BTreeSet<Vec<Face>> {
    let expected: usize = faces.iter().map(|f| f.len() - 1).sum::<usize>() + generator.dimension();
    let products_ok = |_: &Vec<Face>| match generator {
        Generator::Product => join(&faces.iter().collect::<Vec<_>>()).is_some(),
        _ => true,
    };
    face_image(generator, faces)
        .into_iter()
        .filter(|t| t.iter().map(|f| f.len() - 1).sum::<usize>() == expected && products_ok(t))
        .collect()
}

/// Union of the carriers of μ_s applied to the barycenters of two faces of
/// Δ^d, with s ranging over the grid k/resolution.
pub fn product_grid_coverage(d: usize, a: &[usize], b: &[usize], resolution: i64) -> Face {
    let x: SimplexPoint<Q> = SimplexPoint::barycenter(d, a);
    let y: SimplexPoint<Q> = SimplexPoint::barycenter(d, b);
    let mut covered = BTreeSet::new();
    for k in 0..=resolution {
        let s = Q::new(k.into(), resolution.into());
        let out = eval_generator(&Generator::Product, &[s], &[x.clone(), y.clone()]).expect("valid inputs");
        covered.extend(out[0].carrier(0.0));
    }
    covered.into_iter().collect()
}

/// Compares two points up to the ordering of coordinates.
pub fn compare<C: Coord>(a: &C, b: &C) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// The first parameter of the vertices of `g`, for diagnostics.
pub fn parameters(g: &GraphTerm) -> Vec<Q> {
    g.vertices().iter().filter(|v| !v.params.is_empty()).map(first_param).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::term::parse_term;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(xs: &[Q]) -> SimplexPoint {
        SimplexPoint::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn generator_formulas() {
        let out = eval_generator(&Generator::Coproduct, &[], &[pt(&[q(1, 4)])]).unwrap();
        assert_eq!(out, vec![pt(&[q(0, 1)]), pt(&[q(1, 2)])]);
        assert_eq!(psi(&q(1, 2), &q(1, 5), &q(3, 5)), q(2, 5));
        for x in [q(0, 1), q(1, 3), q(1, 1)] {
            assert_eq!(phi(&q(0, 1), &x), x);
        }
        assert_eq!(phi(&q(1, 2), &q(3, 4)), q(1, 1));
        assert!(eval_generator(&Generator::Counit, &[], &[pt(&[q(1, 3)])]).unwrap().is_empty());
    }

    #[test]
    fn barycentric_round_trip() {
        let p = pt(&[q(1, 5), q(1, 2), q(1, 2), q(4, 5)]);
        let t = p.barycentric();
        assert_eq!(t.iter().cloned().sum::<Q>(), q(1, 1));
        assert_eq!(SimplexPoint::from_barycentric(&t), p);
        let v: SimplexPoint = SimplexPoint::vertex(3, 1);
        assert_eq!(v.barycentric(), vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn skeleton_levels() {
        assert_eq!(pt(&[q(0, 1), q(1, 3), q(1, 3), q(1, 1)]).skeleton_level(0.0), 1);
        assert_eq!(pt(&[q(1, 4), q(1, 2)]).to_f64().skeleton_level(FLOAT_TOLERANCE), 2);
    }

    #[test]
    fn term_evaluation() {
        let x = pt(&[q(1, 5), q(2, 3)]);
        assert_eq!(eval_term(&GraphTerm::unit(1), &[x.clone()]).unwrap(), vec![x.clone()]);
        let g = parse_term("delta ; (eps | id)").unwrap();
        let h = parse_term("h(1)").unwrap();
        assert_eq!(eval_term(&g, &[x.clone()]).unwrap(), eval_term(&h, &[x.clone()]).unwrap());
        let y = pt(&[q(1, 2), q(1, 1)]);
        assert!(eval_term(&parse_term("mu(1/3) ; eps").unwrap(), &[x.clone(), y.clone()]).unwrap().is_empty());
        assert!(eval_term(&g, &[x, y]).is_err());
    }

    #[test]
    fn cellular_and_natural_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for s in ["delta", "mu(1/3)", "h(1/2)", "eps"] {
            let g = parse_term(s).unwrap();
            assert!(check_cellular(&g, 3, 300, &mut rng).passed(), "{s}");
            for op in SimplicialOp::all(3) {
                assert!(check_naturality(&g, op, 3, 100, &mut rng).passed(), "{s} {op:?}");
            }
        }
        let corrupted = check_cellular_with(1, 3, 0, 300, &mut rng, |pts| {
            vec![SimplexPoint { coords: pts[0].coords().iter().map(|x| x / Q::from_integer(3.into())).collect() }]
        });
        assert!(!corrupted.passed());
    }

    #[test]
    fn faces_of_generators() {
        let d = face_action(&Generator::Coproduct, &[vec![0, 2]]);
        assert_eq!(d, BTreeSet::from([vec![vec![0], vec![0, 2]], vec![vec![0, 2], vec![2]]]));
        assert_eq!(face_action(&Generator::Product, &[vec![0], vec![1, 2]]), BTreeSet::from([vec![vec![0, 1, 2]]]));
        assert!(face_action(&Generator::Product, &[vec![0, 1], vec![1, 2]]).is_empty());
        assert_eq!(face_image(&Generator::Counit, &[vec![0, 1]]), BTreeSet::from([vec![]]));
    }
}
