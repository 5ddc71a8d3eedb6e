//! Finitely presented simplicial sets and the coalgebra structure on their
//! geometric realizations.
//!
//! A simplicial set is stored by its nondegenerate cells. Every simplex,
//! degenerate or not, is a [`SimplexRef`]: a nondegenerate cell together
//! with a monotone surjection onto its vertex set, read as the iterated
//! degeneracy applied to the cell.

use std::fmt;

use itertools::Itertools;
use num::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{eval_term, SimplexError, SimplexPoint};
use crate::graph::GraphTerm;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsetError {
    #[error("cell {cell}: {reason}")]
    BadCell { cell: usize, reason: String },
    #[error("simplicial identity d_{i} d_{j} = d_{jm} d_{i} fails on cell {cell}", jm = .j - 1)]
    Identity { cell: usize, i: usize, j: usize },
    #[error("reference to cell {0} which does not exist")]
    UnknownCell(usize),
    #[error("map {0:?} is not a monotone map into the vertices of the simplex")]
    BadMap(Vec<usize>),
    #[error("point of dimension {point} on a simplex of dimension {simplex}")]
    Dimension { point: usize, simplex: usize },
    #[error("realization action needs a term with one input, found {0}")]
    Arity(usize),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("malformed simplicial set description: {0}")]
    Format(String),
}

/// A simplex of a simplicial set: the degeneracy `map` applied to the
/// nondegenerate cell `cell`. The map lists, for each vertex of the simplex,
/// the vertex of the cell it sits over; it is monotone and onto.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub cell: usize,
    pub map: Vec<usize>,
}

impl SimplexRef {
    /// The nondegenerate simplex of a cell of dimension `dim`.
    pub fn cell(cell: usize, dim: usize) -> Self {
        SimplexRef { cell, map: (0..=dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.map.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.map.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "c{}[{}]", self.cell, self.map.iter().join(","))
        } else {
            write!(f, "c{}", self.cell)
        }
    }
}

/// A nondegenerate cell with its faces d_0, …, d_dim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<SimplexRef>,
}

/// A finite simplicial set given by its nondegenerate cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSet {
    cells: Vec<Cell>,
}

fn is_monotone(map: &[usize]) -> bool {
    map.windows(2).all(|w| w[0] <= w[1])
}

impl SimplicialSet {
    /// Validates the face tables, including the simplicial identities.
    pub fn new(cells: Vec<Cell>) -> Result<Self, SsetError> {
        for (c, cell) in cells.iter().enumerate() {
            let expected = if cell.dim == 0 { 0 } else { cell.dim + 1 };
            if cell.faces.len() != expected {
                return Err(SsetError::BadCell {
                    cell: c,
                    reason: format!("dimension {} needs {expected} faces, found {}", cell.dim, cell.faces.len()),
                });
            }
            for face in &cell.faces {
                let target = cells.get(face.cell).ok_or(SsetError::UnknownCell(face.cell))?;
                let onto = face.map.first() == Some(&0)
                    && face.map.last() == Some(&target.dim)
                    && face.map.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                if face.map.len() != cell.dim || !onto || target.dim >= cell.dim {
                    return Err(SsetError::BadCell { cell: c, reason: format!("face {face} has the wrong shape") });
                }
            }
        }
        let set = SimplicialSet { cells };
        for (c, cell) in set.cells.iter().enumerate() {
            if cell.dim < 2 {
                continue;
            }
            let top = SimplexRef::cell(c, cell.dim);
            for j in 1..=cell.dim {
                for i in 0..j {
                    let a = set.face(&set.face(&top, j)?, i)?;
                    let b = set.face(&set.face(&top, i)?, j - 1)?;
                    if a != b {
                        return Err(SsetError::Identity { cell: c, i, j });
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_dim(&self, c: usize) -> usize {
        self.cells[c].dim
    }

    /// The standard simplex Δ^k: one cell per nonempty subset of vertices.
    pub fn standard(k: usize) -> Self {
        let subsets: Vec<Vec<usize>> =
            (1..=k + 1).flat_map(|size| (0..=k).combinations(size)).collect();
        let index = |s: &[usize]| subsets.iter().position(|t| t == s).expect("subset listed");
        let cells = subsets
            .iter()
            .map(|s| {
                let dim = s.len() - 1;
                let faces = if dim == 0 {
                    Vec::new()
                } else {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            SimplexRef::cell(index(&f), dim - 1)
                        })
                        .collect()
                };
                Cell { dim, faces }
            })
            .collect();
        SimplicialSet::new(cells).expect("standard simplex is valid")
    }

    /// One vertex and one edge with both ends at the vertex.
    pub fn circle() -> Self {
        let v = SimplexRef::cell(0, 0);
        SimplicialSet::new(vec![Cell { dim: 0, faces: vec![] }, Cell { dim: 1, faces: vec![v.clone(), v] }])
            .expect("circle is valid")
    }

    /// Δ²/∂Δ²: one vertex and one 2-cell whose faces are the degenerate edge.
    pub fn sphere2() -> Self {
        let e = SimplexRef { cell: 0, map: vec![0, 0] };
        SimplicialSet::new(vec![Cell { dim: 0, faces: vec![] }, Cell { dim: 2, faces: vec![e.clone(), e.clone(), e] }])
            .expect("sphere is valid")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SsetError> {
        let raw: SimplicialSet = serde_json::from_value(value.clone()).map_err(|e| SsetError::Format(e.to_string()))?;
        SimplicialSet::new(raw.cells)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    fn check(&self, r: &SimplexRef) -> Result<(), SsetError> {
        let cell = self.cells.get(r.cell).ok_or(SsetError::UnknownCell(r.cell))?;
        if r.map.is_empty() || !is_monotone(&r.map) || r.map.iter().any(|&v| v > cell.dim) {
            return Err(SsetError::BadMap(r.map.clone()));
        }
        Ok(())
    }

    /// The simplex θ*(r) for a monotone map θ from [j] to the vertices of r.
    /// Missing cell vertices are removed by passing to faces of the cell.
    pub fn restrict(&self, r: &SimplexRef, theta: &[usize]) -> Result<SimplexRef, SsetError> {
        self.check(r)?;
        if theta.is_empty() || !is_monotone(theta) || theta.iter().any(|&v| v > r.dim()) {
            return Err(SsetError::BadMap(theta.to_vec()));
        }
        let mut cell = r.cell;
        let mut map: Vec<usize> = theta.iter().map(|&a| r.map[a]).collect();
        loop {
            let dim = self.cells[cell].dim;
            let Some(missing) = (0..=dim).find(|v| !map.contains(v)) else {
                return Ok(SimplexRef { cell, map });
            };
            let face = &self.cells[cell].faces[missing];
            map = map.iter().map(|&v| face.map[if v > missing { v - 1 } else { v }]).collect();
            cell = face.cell;
        }
    }

    /// The face d_i.
    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef, SsetError> {
        if r.dim() == 0 || i > r.dim() {
            return Err(SsetError::BadMap(vec![i]));
        }
        let theta: Vec<usize> = (0..=r.dim()).filter(|&a| a != i).collect();
        self.restrict(r, &theta)
    }

    /// The degeneracy s_j.
    pub fn degeneracy(&self, r: &SimplexRef, j: usize) -> Result<SimplexRef, SsetError> {
        if j > r.dim() {
            return Err(SsetError::BadMap(vec![j]));
        }
        let mut theta: Vec<usize> = (0..=r.dim()).collect();
        theta.insert(j, j);
        self.restrict(r, &theta)
    }

    /// Canonical representative of the class of (r, x): a nondegenerate
    /// cell and a point with all barycentric coordinates positive.
    pub fn canonicalize(&self, r: &SimplexRef, x: &SimplexPoint<Q>) -> Result<RealizationPoint, SsetError> {
        self.check(r)?;
        if x.dim() != r.dim() {
            return Err(SsetError::Dimension { point: x.dim(), simplex: r.dim() });
        }
        let mut cell = r.cell;
        let mut map = r.map.clone();
        let mut t = x.barycentric();
        loop {
            let dim = self.cells[cell].dim;
            let mut pushed = vec![Q::zero(); dim + 1];
            for (a, ta) in map.iter().zip(&t) {
                pushed[*a] += ta;
            }
            match pushed.iter().position(Zero::is_zero) {
                Some(v) if dim > 0 => {
                    let face = &self.cells[cell].faces[v];
                    pushed.remove(v);
                    cell = face.cell;
                    map = face.map.clone();
                    t = pushed;
                }
                _ => {
                    let point = SimplexPoint::from_barycentric(&pushed);
                    return Ok(RealizationPoint { cell, point });
                }
            }
        }
    }

    /// The coalgebra action of a one-input term on a realization point:
    /// the term is evaluated on the coordinates and each output is
    /// canonicalized on the same simplex.
    pub fn realization_act_on(
        &self,
        g: &GraphTerm,
        r: &SimplexRef,
        x: &SimplexPoint<Q>,
    ) -> Result<Vec<RealizationPoint>, SsetError> {
        if g.inputs() != 1 {
            return Err(SsetError::Arity(g.inputs()));
        }
        self.check(r)?;
        if x.dim() != r.dim() {
            return Err(SsetError::Dimension { point: x.dim(), simplex: r.dim() });
        }
        eval_term(g, std::slice::from_ref(x))?.iter().map(|y| self.canonicalize(r, y)).collect()
    }

    pub fn realization_act(&self, g: &GraphTerm, rp: &RealizationPoint) -> Result<Vec<RealizationPoint>, SsetError> {
        let r = SimplexRef::cell(rp.cell, self.cells[rp.cell].dim);
        self.realization_act_on(g, &r, &rp.point)
    }

    /// A random simplex of dimension `dim` together with a monotone map
    /// into it, for well-definedness checks.
    pub fn random_relation<R: Rng>(&self, rng: &mut R, max_dim: usize) -> (SimplexRef, Vec<usize>) {
        let c = rng.gen_range(0..self.cells.len());
        let k = self.cells[c].dim;
        let top = SimplexRef::cell(c, k);
        let j = rng.gen_range(0..=max_dim);
        let mut theta: Vec<usize> = (0..=j).map(|_| rng.gen_range(0..=k)).collect();
        theta.sort_unstable();
        (top, theta)
    }
}

/// Pushes a point of Δ^j forward along a monotone map θ : [j] → [k].
pub fn push_point(theta: &[usize], k: usize, x: &SimplexPoint<Q>) -> SimplexPoint<Q> {
    let mut t = vec![Q::zero(); k + 1];
    for (a, ta) in theta.iter().zip(x.barycentric()) {
        t[*a] += ta;
    }
    SimplexPoint::from_barycentric(&t)
}

/// A point of a geometric realization in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationPoint {
    pub cell: usize,
    pub point: SimplexPoint<Q>,
}

impl RealizationPoint {
    /// Whether every barycentric coordinate is positive.
    pub fn is_interior(&self) -> bool {
        self.point.barycentric().iter().all(|t| *t > Q::zero())
    }

    pub fn is_vertex(&self) -> bool {
        self.point.dim() == 0 && self.point.barycentric() == vec![Q::one()]
    }
}

impl fmt::Display for RealizationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{} {}", self.cell, self.point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::term::parse_term;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(xs: &[Q]) -> SimplexPoint<Q> {
        SimplexPoint::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn builtins_validate() {
        assert_eq!(SimplicialSet::standard(3).cells().len(), 15);
        assert_eq!(SimplicialSet::circle().cells().len(), 2);
        assert_eq!(SimplicialSet::sphere2().cells().len(), 2);
        let bad = vec![Cell { dim: 0, faces: vec![] }, Cell { dim: 1, faces: vec![SimplexRef::cell(0, 0)] }];
        assert!(SimplicialSet::new(bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = SimplicialSet::sphere2();
        assert_eq!(SimplicialSet::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn faces_of_sphere_are_degenerate() {
        let s = SimplicialSet::sphere2();
        let top = SimplexRef::cell(1, 2);
        assert_eq!(s.face(&top, 1).unwrap(), SimplexRef { cell: 0, map: vec![0, 0] });
        assert_eq!(s.face(&s.face(&top, 0).unwrap(), 0).unwrap(), SimplexRef::cell(0, 0));
    }

    #[test]
    fn coproduct_on_an_edge() {
        let x = SimplicialSet::standard(1);
        let top = 2;
        let rp = x.canonicalize(&SimplexRef::cell(top, 1), &pt(&[q(1, 4)])).unwrap();
        assert_eq!(rp, RealizationPoint { cell: top, point: pt(&[q(1, 4)]) });
        let out = x.realization_act(&parse_term("delta").unwrap(), &rp).unwrap();
        assert!(out[0].is_vertex());
        assert_eq!(out[1], RealizationPoint { cell: top, point: pt(&[q(1, 2)]) });
        let id = x.realization_act(&GraphTerm::unit(1), &rp).unwrap();
        assert_eq!(id, vec![rp]);
    }

    #[test]
    fn boundary_points_collapse_on_the_sphere() {
        let s = SimplicialSet::sphere2();
        let rp = s.canonicalize(&SimplexRef::cell(1, 2), &pt(&[q(0, 1), q(1, 2)])).unwrap();
        assert_eq!(rp, RealizationPoint { cell: 0, point: pt(&[]) });
    }

    #[test]
    fn well_defined_on_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = parse_term("delta ; (id | h(1/3)) ; (delta | id)").unwrap();
        for x in [SimplicialSet::standard(2), SimplicialSet::circle(), SimplicialSet::sphere2()] {
            for _ in 0..200 {
                let (top, theta) = x.random_relation(&mut rng, 3);
                let p = pt(&crate::random::random_simplex_point(&mut rng, theta.len() - 1, 8));
                let pulled = x.restrict(&top, &theta).unwrap();
                let lhs = x.realization_act_on(&g, &pulled, &p).unwrap();
                let rhs = x.realization_act_on(&g, &top, &push_point(&theta, top.dim(), &p)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
