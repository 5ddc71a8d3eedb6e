//! Cochains on ordered simplicial complexes over F₂, cup-i products and
//! Steenrod squares.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use super::cup_i_generator;
use super::simplicial::{act_type, Face};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("face {0:?} is not a simplex of the complex")]
    NotAFace(Vec<usize>),
    #[error("cochain mixes degrees {0} and {1}")]
    MixedDegree(usize, usize),
    #[error("the cochain is not a cocycle")]
    NotACocycle,
}

/// A finite simplicial complex on an ordered vertex set, given by its
/// maximal faces and closed downward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplexData {
    vertices: Vec<usize>,
    faces: Vec<Vec<Face>>,
    index: Vec<BTreeMap<Face, usize>>,
}

impl SimplicialComplexData {
    pub fn from_maximal(maximal: &[Vec<usize>]) -> Self {
        let mut by_dim: Vec<BTreeSet<Face>> = Vec::new();
        for f in maximal {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for k in 1..=f.len() {
                if by_dim.len() < k {
                    by_dim.resize(k, BTreeSet::new());
                }
                for sub in f.iter().copied().combinations(k) {
                    by_dim[k - 1].insert(sub);
                }
            }
        }
        let faces: Vec<Vec<Face>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = faces.iter().map(|fs| fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect()).collect();
        let vertices = faces.first().map(|vs| vs.iter().map(|v| v[0]).collect()).unwrap_or_default();
        SimplicialComplexData { vertices, faces, index }
    }

    /// Parses one maximal face per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CochainError> {
        Ok(Self::from_maximal(&parse_face_lines(text)?))
    }

    /// The standard d-simplex on vertices 0..=d.
    pub fn simplex(d: usize) -> Self {
        Self::from_maximal(&[(0..=d).collect()])
    }

    /// Boundary of the 3-simplex, a 2-sphere.
    pub fn sphere2() -> Self {
        Self::from_maximal(&(0..4).combinations(3).collect::<Vec<_>>())
    }

    /// The minimal 6-vertex triangulation of the real projective plane.
    pub fn rp2() -> Self {
        let tris = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]];
        Self::from_maximal(&tris.iter().map(|t| t.to_vec()).collect::<Vec<_>>())
    }

    /// The 7-vertex triangulation of the torus.
    pub fn torus7() -> Self {
        let mut tris = Vec::new();
        for i in 0..7 {
            tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        Self::from_maximal(&tris)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// Faces of dimension k in lexicographic order.
    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        let k = face.len().checked_sub(1)?;
        self.index.get(k)?.get(face).copied()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.face_index(face).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces.iter().enumerate().map(|(k, fs)| if k % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) }).sum()
    }

    /// Matrix of the coboundary from degree k to k + 1: rows are
    /// (k+1)-faces, columns are k-faces.
    pub fn coboundary_matrix(&self, k: usize) -> F2Matrix {
        let rows = self.faces(k + 1);
        let mut m = F2Matrix::zero(rows.len(), self.faces(k).len());
        for (r, face) in rows.iter().enumerate() {
            for i in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(i);
                let c = self.face_index(&sub).expect("complex is closed under faces");
                m.flip(r, c);
            }
        }
        m
    }

    /// Dimension of H^k over F₂.
    pub fn betti(&self, k: usize) -> usize {
        let n = self.faces(k).len();
        let kernel = n - self.coboundary_matrix(k).rank();
        let image = if k == 0 { 0 } else { self.coboundary_matrix(k - 1).rank() };
        kernel - image
    }

    /// Cocycles of degree k whose classes form a basis of H^k.
    pub fn cohomology_basis(&self, k: usize) -> Vec<Cochain> {
        let kernel = self.coboundary_matrix(k).nullspace();
        let mut span: Vec<Vec<bool>> = if k == 0 {
            Vec::new()
        } else {
            self.coboundary_matrix(k - 1).columns()
        };
        let mut basis = Vec::new();
        for v in kernel {
            let before = F2Matrix::from_columns(self.faces(k).len(), &span).rank();
            span.push(v.clone());
            if F2Matrix::from_columns(self.faces(k).len(), &span).rank() > before {
                basis.push(Cochain::from_vector(self, k, &v));
            } else {
                span.pop();
            }
        }
        basis
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_coboundary(&self, c: &Cochain) -> bool {
        if c.is_zero() {
            return true;
        }
        if c.degree == 0 {
            return false;
        }
        let m = self.coboundary_matrix(c.degree - 1);
        m.solve(&c.to_vector(self)).is_some()
    }
}

fn parse_face_lines(text: &str) -> Result<Vec<Vec<usize>>, CochainError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let face: Result<Vec<usize>, _> =
            line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::parse).collect();
        let face = face.map_err(|e| CochainError::Parse { line: i + 1, reason: e.to_string() })?;
        out.push(face);
    }
    Ok(out)
}

/// An F₂-cochain: the set of faces on which it takes the value 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    support: BTreeSet<Face>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, support: BTreeSet::new() }
    }

    /// The cochain dual to the given faces (each counted mod 2).
    pub fn new(degree: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self, CochainError> {
        let mut c = Cochain::zero(degree);
        for mut f in faces {
            f.sort_unstable();
            if f.len() != degree + 1 {
                return Err(CochainError::MixedDegree(degree, f.len().saturating_sub(1)));
            }
            c.toggle(f);
        }
        Ok(c)
    }

    /// Parses one face per line; the degree is read off the first face.
    pub fn parse(text: &str) -> Result<Self, CochainError> {
        let faces = parse_face_lines(text)?;
        let degree = faces.first().map_or(0, |f| f.len().saturating_sub(1));
        Self::new(degree, faces)
    }

    /// Checks that every face of the support lies in the complex.
    pub fn check(&self, k: &SimplicialComplexData) -> Result<(), CochainError> {
        match self.support.iter().find(|f| !k.contains(f)) {
            Some(f) => Err(CochainError::NotAFace(f.clone())),
            None => Ok(()),
        }
    }

    fn from_vector(k: &SimplicialComplexData, degree: usize, v: &[bool]) -> Self {
        let support = k.faces(degree).iter().zip(v).filter(|(_, &b)| b).map(|(f, _)| f.clone()).collect();
        Cochain { degree, support }
    }

    fn to_vector(&self, k: &SimplicialComplexData) -> Vec<bool> {
        k.faces(self.degree).iter().map(|f| self.support.contains(f)).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> &BTreeSet<Face> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn value(&self, face: &[usize]) -> bool {
        self.support.contains(face)
    }

    pub fn toggle(&mut self, face: Face) {
        if !self.support.remove(&face) {
            self.support.insert(face);
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(CochainError::MixedDegree(self.degree, other.degree));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = Cochain { degree, support: self.support.clone() };
        for f in &other.support {
            out.toggle(f.clone());
        }
        Ok(out)
    }

    pub fn coboundary(&self, k: &SimplicialComplexData) -> Cochain {
        let mut out = Cochain::zero(self.degree + 1);
        for face in k.faces(self.degree + 1) {
            let hits = (0..face.len())
                .filter(|&i| {
                    let mut sub = face.clone();
                    sub.remove(i);
                    self.support.contains(&sub)
                })
                .count();
            if hits % 2 == 1 {
                out.support.insert(face.clone());
            }
        }
        out
    }

    pub fn is_cocycle(&self, k: &SimplicialComplexData) -> bool {
        self.coboundary(k).is_zero()
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.support.iter().map(|s| format!("[{}]*", s.iter().join(","))).join(" + "))
    }
}

/// The cup-i product, evaluated through the action of the (1,2)
/// generator of degree i on the faces of the complex.
pub fn cup_i(i: usize, a: &Cochain, b: &Cochain, k: &SimplicialComplexData) -> Cochain {
    let total = a.degree + b.degree;
    if i > total {
        return Cochain::zero(0);
    }
    let degree = total - i;
    let generator = cup_i_generator(i);
    let standard: Face = (0..=degree).collect();
    let terms = act_type(&generator, degree, &[standard]).expect("standard face");
    let mut out = Cochain::zero(degree);
    for face in k.faces(degree) {
        let mut value = false;
        for t in terms.terms() {
            let (x, y) = (&t[0], &t[1]);
            if x.len() != a.degree + 1 || y.len() != b.degree + 1 {
                continue;
            }
            let fx: Face = x.iter().map(|&p| face[p]).collect();
            let fy: Face = y.iter().map(|&p| face[p]).collect();
            if a.value(&fx) && b.value(&fy) {
                value = !value;
            }
        }
        if value {
            out.support.insert(face.clone());
        }
    }
    out
}

/// The classical cup product from front and back faces.
pub fn cup_product_front_back(a: &Cochain, b: &Cochain, k: &SimplicialComplexData) -> Cochain {
    let degree = a.degree + b.degree;
    let mut out = Cochain::zero(degree);
    for face in k.faces(degree) {
        if a.value(&face[..=a.degree]) && b.value(&face[a.degree..]) {
            out.support.insert(face.clone());
        }
    }
    out
}

/// Sq^k(x) = x ∪_{|x|−k} x, zero when k exceeds |x|.
pub fn steenrod_square(k: usize, x: &Cochain, complex: &SimplicialComplexData) -> Result<Cochain, CochainError> {
    x.check(complex)?;
    if !x.is_cocycle(complex) {
        return Err(CochainError::NotACocycle);
    }
    if k > x.degree {
        return Ok(Cochain::zero(x.degree + k));
    }
    Ok(cup_i(x.degree - k, x, x, complex))
}

/// A dense matrix over F₂ with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![vec![0; cols.div_ceil(64)]; rows] }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<bool>]) -> Self {
        let mut m = F2Matrix::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, &b) in col.iter().enumerate() {
                if b {
                    m.flip(r, c);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r][c / 64] ^= 1 << (c % 64);
    }

    pub fn columns(&self) -> Vec<Vec<bool>> {
        (0..self.cols).map(|c| (0..self.rows).map(|r| self.get(r, c)).collect()).collect()
    }

    /// Row echelon form in place; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| self.get(r, c)) else { continue };
            self.data.swap(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, c) {
                    let pivot_row = self.data[row].clone();
                    for (x, y) in self.data[r].iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// A basis of {x : Mx = 0}.
    pub fn nullspace(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.eliminate();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![false; self.cols];
                x[f] = true;
                for (r, &p) in pivots.iter().enumerate() {
                    if m.get(r, f) {
                        x[p] = true;
                    }
                }
                x
            })
            .collect()
    }

    /// Some x with Mx = b, if one exists.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        let mut aug = F2Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    aug.flip(r, c);
                }
            }
            if b[r] {
                aug.flip(r, self.cols);
            }
        }
        let pivots = aug.eliminate();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual(faces: &[&[usize]]) -> Cochain {
        Cochain::new(faces[0].len() - 1, faces.iter().map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn cup_zero_on_triangle() {
        let k = SimplicialComplexData::simplex(2);
        let c = cup_i(0, &dual(&[&[0, 1]]), &dual(&[&[1, 2]]), &k);
        assert_eq!(c, dual(&[&[0, 1, 2]]));
    }

    #[test]
    fn cup_one_on_interval() {
        let k = SimplicialComplexData::simplex(1);
        let a = dual(&[&[0, 1]]);
        assert_eq!(cup_i(1, &a, &a, &k), a);
        assert!(cup_i(3, &a, &a, &k).is_zero());
    }

    #[test]
    fn complexes() {
        let rp2 = SimplicialComplexData::rp2();
        assert_eq!(rp2.euler_characteristic(), 1);
        assert_eq!((rp2.betti(0), rp2.betti(1), rp2.betti(2)), (1, 1, 1));
        let t = SimplicialComplexData::torus7();
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!((t.betti(0), t.betti(1), t.betti(2)), (1, 2, 1));
        let s = SimplicialComplexData::sphere2();
        assert_eq!((s.betti(0), s.betti(1), s.betti(2)), (1, 0, 1));
    }

    #[test]
    fn rp2_square_is_nonzero() {
        let k = SimplicialComplexData::rp2();
        let basis = k.cohomology_basis(1);
        assert_eq!(basis.len(), 1);
        let sq = steenrod_square(1, &basis[0], &k).unwrap();
        assert!(sq.is_cocycle(&k));
        assert!(!k.is_coboundary(&sq));
    }

    #[test]
    fn parse_files() {
        let k = SimplicialComplexData::parse("# triangle\n0 1 2\n2 3\n").unwrap();
        assert_eq!(k.faces(1).len(), 4);
        let c = Cochain::parse("0 1\n1 2 # edge\n").unwrap();
        assert_eq!(c.degree(), 1);
        assert!(Cochain::parse("0 1\n0 1 2\n").is_err());
        assert!(SimplicialComplexData::parse("0 x\n").is_err());
    }

    #[test]
    fn solving() {
        let mut m = F2Matrix::zero(2, 3);
        m.flip(0, 0);
        m.flip(0, 1);
        m.flip(1, 1);
        m.flip(1, 2);
        let x = m.solve(&[true, false]).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(m.nullspace().len(), 1);
    }
}
