//! Cellular chains of MS over F₂ and their action on simplicial chains.

mod cochain;
mod simplicial;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use cochain::{
    cup_i, cup_product_front_back, steenrod_square, Cochain, CochainError, F2Matrix, SimplicialComplexData,
};
pub use simplicial::{
    act_term, act_term_on, act_type, act_type_on, aw_splittings, compose_surjections, join, ChainError, Face,
    SimplicialChain,
};

use crate::graph::{Generator, GraphTerm};
use crate::normal::{normalize, NormalError, SurjectionType};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainElementError {
    #[error("generator {0} has biarity {1:?}, expected {2:?}")]
    Biarity(String, (usize, usize), (usize, usize)),
    #[error("generator {0} has degree {1}, expected {2}")]
    Degree(String, usize, usize),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// A homogeneous F₂-linear combination of cells of MS(n, m).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainElement {
    n: usize,
    m: usize,
    degree: usize,
    terms: BTreeSet<SurjectionType>,
}

impl ChainElement {
    pub fn zero(n: usize, m: usize, degree: usize) -> Self {
        ChainElement { n, m, degree, terms: BTreeSet::new() }
    }

    pub fn generator(t: SurjectionType) -> Self {
        ChainElement { n: t.n(), m: t.m(), degree: t.degree(), terms: BTreeSet::from([t]) }
    }

    /// Sum of the given generators, which must share biarity and degree.
    pub fn from_terms(
        n: usize,
        m: usize,
        degree: usize,
        terms: impl IntoIterator<Item = SurjectionType>,
    ) -> Result<Self, ChainElementError> {
        let mut out = ChainElement::zero(n, m, degree);
        for t in terms {
            out.toggle(t)?;
        }
        Ok(out)
    }

    /// Adds one generator mod 2.
    pub fn toggle(&mut self, t: SurjectionType) -> Result<(), ChainElementError> {
        if t.biarity() != (self.n, self.m) {
            return Err(ChainElementError::Biarity(t.to_string(), t.biarity(), (self.n, self.m)));
        }
        if t.degree() != self.degree {
            return Err(ChainElementError::Degree(t.to_string(), t.degree(), self.degree));
        }
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainElement) -> Result<ChainElement, ChainElementError> {
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone())?;
        }
        Ok(out)
    }

    pub fn biarity(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeSet<SurjectionType> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Cellular differential, computed on canonical graphs.
    pub fn differential(&self) -> Result<ChainElement, ChainElementError> {
        let mut out = ChainElement::zero(self.n, self.m, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Ok(out);
        }
        for t in &self.terms {
            for face in generator_differential(t)? {
                out.toggle(face)?;
            }
        }
        Ok(out)
    }

    /// Action on a simplicial chain of arity n.
    pub fn act(&self, c: &SimplicialChain) -> Result<SimplicialChain, ChainElementError> {
        let mut out = SimplicialChain::zero(c.dim(), self.m);
        for t in &self.terms {
            out = out.add(&act_type_on(t, c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.terms.iter().join(" + "))
        }
    }
}

/// Differential of one generator: every product of the canonical graph is
/// replaced by each of its two endpoint values, the result renormalized, and
/// the faces of one lower degree summed mod 2.
pub fn generator_differential(t: &SurjectionType) -> Result<BTreeSet<SurjectionType>, ChainElementError> {
    let mut out = BTreeSet::new();
    if t.is_counit() || t.degree() == 0 {
        return Ok(out);
    }
    let g = t.generic_weights().to_graph();
    for (v, vertex) in g.vertices().iter().enumerate() {
        if vertex.generator != Generator::Product {
            continue;
        }
        for s in [Q::zero(), Q::one()] {
            let face = g.with_params(v, vec![s]);
            let e = normalize(&face)?;
            if e.degree() + 1 == t.degree() {
                let ft = e.surjection_type();
                if !out.remove(&ft) {
                    out.insert(ft);
                }
            }
        }
    }
    Ok(out)
}

/// Image of the top cell of a term over ε, Δ, μ and the counit homotopy in
/// the chains of MS. Terms with a counit homotopy map to zero, as do terms
/// whose generic normal form has lower dimension than the number of
/// products.
pub fn chains_s_check(g: &GraphTerm) -> Result<ChainElement, ChainElementError> {
    let g = g.absorb_equivalences();
    let products = g.vertices().iter().filter(|v| v.generator == Generator::Product).count();
    if g.contains(|k| *k == Generator::CounitHomotopy) {
        return Ok(ChainElement::zero(g.inputs(), g.outputs(), products + g.vertices().iter().filter(|v| v.generator == Generator::CounitHomotopy).count()));
    }
    // generic parameters: large prime denominators avoid weight ties
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut generic = g.clone();
    for (v, vertex) in g.vertices().iter().enumerate() {
        if vertex.generator == Generator::Product {
            let s = Q::new(rng.gen_range(1..1009).into(), 1009.into());
            generic = generic.with_params(v, vec![s]);
        }
    }
    let e = normalize(&generic)?;
    let mut out = ChainElement::zero(g.inputs(), g.outputs(), products);
    if e.degree() == products {
        out.toggle(e.surjection_type())?;
    }
    Ok(out)
}

/// The cup-i generator (1,2,1,2,…) of length i + 2.
pub fn cup_i_generator(i: usize) -> SurjectionType {
    let seq: Vec<usize> = (0..i + 2).map(|p| p % 2 + 1).collect();
    SurjectionType::sequence(2, &seq).expect("alternating sequence is nondegenerate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::enumerate_basis;
    use crate::oracle::strand_deletion_differential;
    use crate::term::parse_term;

    fn ty(m: usize, seq: &[usize]) -> SurjectionType {
        SurjectionType::sequence(m, seq).unwrap()
    }

    #[test]
    fn cup_one_boundary() {
        let d = ChainElement::generator(ty(2, &[1, 2, 1])).differential().unwrap();
        let expected = ChainElement::from_terms(1, 2, 0, [ty(2, &[1, 2]), ty(2, &[2, 1])]).unwrap();
        assert_eq!(d, expected);
        assert!(ChainElement::generator(ty(2, &[1, 2])).differential().unwrap().is_zero());
    }

    #[test]
    fn product_boundary_is_two_capped_strands() {
        let mu = SurjectionType::new(2, 1, vec![vec![1], vec![1]]).unwrap();
        let d = ChainElement::generator(mu).differential().unwrap();
        let a = SurjectionType::new(2, 1, vec![vec![], vec![1]]).unwrap();
        let b = SurjectionType::new(2, 1, vec![vec![1], vec![]]).unwrap();
        assert_eq!(d, ChainElement::from_terms(2, 1, 0, [a, b]).unwrap());
    }

    #[test]
    fn differential_matches_strand_deletion() {
        for n in 1..=2 {
            for m in 1..=3 {
                for k in 1..=3 {
                    for t in enumerate_basis(n, m, k) {
                        let got = generator_differential(&t).unwrap();
                        let expected: BTreeSet<_> = strand_deletion_differential(&t).into_keys().collect();
                        assert_eq!(got, expected, "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn chains_of_s() {
        let t = |s: &str| parse_term(s).unwrap();
        assert!(chains_s_check(&t("mu(1/2) ; eps")).unwrap().is_zero());
        assert!(chains_s_check(&t("h(1/2)")).unwrap().is_zero());
        let id = chains_s_check(&t("delta ; (eps | id)")).unwrap();
        assert_eq!(id, ChainElement::generator(ty(1, &[1])));
        let mu = chains_s_check(&t("mu(1/2)")).unwrap();
        assert_eq!(mu, ChainElement::generator(SurjectionType::new(2, 1, vec![vec![1], vec![1]]).unwrap()));
    }

    #[test]
    fn cup_generators() {
        assert_eq!(cup_i_generator(0), ty(2, &[1, 2]));
        assert_eq!(cup_i_generator(2), ty(2, &[1, 2, 1, 2]));
    }
}
