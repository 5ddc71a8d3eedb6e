//! Seeded verification suites, one per acceptance criterion.
//!
//! Every suite records the number of checks it made and the first failures
//! it met, and reports its wall-clock time against a budget.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chains::{
    act_type, act_type_on, compose_surjections, cup_i, cup_product_front_back, generator_differential,
    steenrod_square, ChainElement, Cochain, SimplicialChain, SimplicialComplexData,
};
use crate::graph::GraphTerm;
use crate::normal::{enumerate_basis, normalize, normalize_with, MSElement, Strategy, SurjectionType, WeightedSurjection};
use crate::oracle::{band_normal_form, count_nondegenerate_surjections};
use crate::perm::Permutation;
use crate::presentation::{stabilization_homotopy, stabilize_add, stabilize_remove};
use crate::random::{random_interior_rational, random_s_term, random_surjection_type, random_weighted, random_weights, TermShape};
use crate::rational::{format_rational, q, Q};
use crate::simplex::{
    check_cellular, check_cellular_with, check_naturality, eval_term, push_point, SimplexPoint, SimplicialOp,
    SimplicialSet,
};
use crate::surface::{
    arc_of_strand, degenerate_strand, element_surface, probe_boundary_orders, removable_strands, surface_summary,
    to_ribbon,
};
use crate::term::parse_term;

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub number: usize,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl SuiteReport {
    fn new(number: usize, title: &'static str, budget_secs: u64) -> Self {
        SuiteReport { number, title, checks: 0, failures: Vec::new(), elapsed: Duration::ZERO, budget: Duration::from_secs(budget_secs) }
    }

    /// Records one check; keeps at most ten failure messages.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            if self.failures.len() < 10 {
                self.failures.push(describe());
            } else if self.failures.len() == 10 {
                self.failures.push("further failures omitted".into());
            }
        }
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.within_budget()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} criterion {}: {} ({} checks, {} failures, {:.2}s of {}s)",
            self.number,
            self.title,
            self.checks,
            self.failures.len(),
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )?;
        if !self.within_budget() {
            write!(f, " over time budget")?;
        }
        for fail in &self.failures {
            write!(f, "\n    {fail}")?;
        }
        Ok(())
    }
}

/// The default seed for all suites.
pub const DEFAULT_SEED: u64 = 20_240_917;

fn rng_for(seed: u64, criterion: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(criterion as u64))
}

fn timed(mut report: SuiteReport, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    body(&mut report);
    report.elapsed = start.elapsed();
    report
}

/// Criterion 1: normal forms do not depend on the order of rewriting.
pub fn confluence(seed: u64) -> SuiteReport {
    timed(SuiteReport::new(1, "confluence of normalization", 60), |r| {
        let mut rng = rng_for(seed, 1);
        let mut cases: Vec<GraphTerm> = Vec::new();
        for s in [Q::zero(), q(1, 3), q(1, 2), Q::one()] {
            let s = format_rational(&s);
            for text in [format!("mu({s}) ; delta ; (delta | id)"), format!("delta ; mu({s}) ; delta")] {
                cases.push(parse_term(&text).expect("fixed critical pair parses"));
            }
        }
        let shape = TermShape::default();
        cases.extend((0..1000).map(|_| random_s_term(&mut rng, &shape)));
        for (i, g) in cases.iter().enumerate() {
            let reference = normalize(g);
            let mut forms = vec![reference.clone()];
            for _ in 0..2 {
                forms.push(normalize_with(g, Strategy::Shuffled { seed: rng.gen() }).map(|(e, _)| e));
            }
            forms.push(band_normal_form(g));
            let ok = forms.iter().all(|f| f.is_ok() && *f == reference);
            r.check(ok, || format!("case {i}: {g} gave {forms:?}"));
        }
    })
}

/// Criterion 2: basis sizes against a brute-force count.
pub fn basis_counts(_seed: u64) -> SuiteReport {
    timed(SuiteReport::new(2, "basis counts", 10), |r| {
        for m in 1..=4 {
            for k in 0..=4 {
                let got = enumerate_basis(1, m, k).len();
                let expected = count_nondegenerate_surjections(m, m + k);
                r.check(got == expected, || format!("(m,k)=({m},{k}): {got} vs {expected}"));
            }
        }
        let anchor = enumerate_basis(1, 2, 1).len();
        r.check(anchor == 2, || format!("(2,1) anchor gave {anchor}"));
    })
}

fn differential_cached(
    cache: &mut HashMap<SurjectionType, BTreeSet<SurjectionType>>,
    t: &SurjectionType,
) -> Result<BTreeSet<SurjectionType>, String> {
    if let Some(d) = cache.get(t) {
        return Ok(d.clone());
    }
    let d = generator_differential(t).map_err(|e| e.to_string())?;
    cache.insert(t.clone(), d.clone());
    Ok(d)
}

fn square_vanishes(cache: &mut HashMap<SurjectionType, BTreeSet<SurjectionType>>, terms: &[SurjectionType]) -> Result<bool, String> {
    let mut first = BTreeSet::new();
    for t in terms {
        for f in differential_cached(cache, t)? {
            if !first.remove(&f) {
                first.insert(f);
            }
        }
    }
    let mut second: BTreeSet<SurjectionType> = BTreeSet::new();
    for t in &first {
        for f in differential_cached(cache, t)? {
            if !second.remove(&f) {
                second.insert(f);
            }
        }
    }
    Ok(second.is_empty())
}

/// Criterion 3: the differential squares to zero.
pub fn differential_squares(seed: u64) -> SuiteReport {
    timed(SuiteReport::new(3, "differential squares to zero", 30), |r| {
        let mut cache = HashMap::new();
        for m in 1..=4 {
            for k in 0..=4 {
                for t in enumerate_basis(1, m, k) {
                    let res = square_vanishes(&mut cache, std::slice::from_ref(&t));
                    r.check(res == Ok(true), || format!("{t}: {res:?}"));
                }
            }
        }
        let mut rng = rng_for(seed, 3);
        for case in 0..200 {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            // with one output every block holds at most one strand
            let max_degree = if m == 1 { n - 1 } else { 3 };
            let k = rng.gen_range(0..=max_degree);
            let size = rng.gen_range(1..=4);
            let mut terms = Vec::new();
            while terms.len() < size {
                let t = random_surjection_type(&mut rng, n, m, k);
                if t.degree() == k {
                    terms.push(t);
                }
            }
            let element = ChainElement::from_terms(n, m, k, terms);
            let res = element
                .map_err(|e| e.to_string())
                .and_then(|x| x.differential().and_then(|d| d.differential()).map_err(|e| e.to_string()));
            r.check(matches!(&res, Ok(z) if z.is_zero()), || format!("random case {case}: {res:?}"));
        }
    })
}

fn faces_up_to(d: usize) -> Vec<Vec<usize>> {
    (0..=d).flat_map(|k| SimplicialChain::basis_faces(d, k)).collect()
}

/// Criterion 4: the action is a chain map and respects composition.
pub fn action_compatibility(_seed: u64) -> SuiteReport {
    timed(SuiteReport::new(4, "action is a chain map and respects composition", 60), |r| {
        let mut cache = HashMap::new();
        for d in 0..=5 {
            let faces = faces_up_to(d);
            for m in 1..=3 {
                for k in 0..=3 {
                    for t in enumerate_basis(1, m, k) {
                        let dt = differential_cached(&mut cache, &t).expect("differential computes");
                        for face in &faces {
                            let c = SimplicialChain::face(d, face.clone()).expect("basis face");
                            let mut lhs = SimplicialChain::zero(d, m);
                            for s in &dt {
                                lhs = lhs.add(&act_type_on(s, &c).expect("arity one"));
                            }
                            let direct = act_type_on(&t, &c).expect("arity one");
                            let rhs = direct.boundary().add(&act_type_on(&t, &c.boundary()).expect("arity one"));
                            r.check(lhs == rhs, || format!("{t} on {face:?} in dimension {d}"));
                        }
                    }
                }
            }
        }
        let d = 5;
        let faces = faces_up_to(d);
        for (mf, kf) in [(2, 0), (2, 1), (2, 2), (3, 1)] {
            for (mg, kg) in [(1, 0), (2, 0), (2, 1), (3, 0)] {
                for f in enumerate_basis(1, mf, kf) {
                    for g in enumerate_basis(1, mg, kg) {
                        for slot in 1..=mf {
                            let comp = compose_surjections(&f, slot, &g);
                            for face in &faces {
                                let c = SimplicialChain::face(d, face.clone()).expect("basis face");
                                let mut lhs = SimplicialChain::zero(d, mf + mg - 1);
                                for t in &comp {
                                    lhs = lhs.add(&act_type_on(t, &c).expect("arity one"));
                                }
                                let first = act_type_on(&f, &c).expect("arity one");
                                let rhs = first.map_factor(slot - 1, mf + mg - 1, |x| {
                                    act_type(&g, d, std::slice::from_ref(x)).expect("arity one")
                                });
                                r.check(lhs == rhs, || format!("{f} o_{slot} {g} on {face:?}"));
                            }
                        }
                    }
                }
            }
        }
    })
}

fn random_cochain<R: Rng>(rng: &mut R, degree: usize, k: &SimplicialComplexData) -> Cochain {
    let faces = k.faces(degree).iter().filter(|_| rng.gen_bool(0.4)).cloned();
    Cochain::new(degree, faces).expect("faces of the right degree")
}

/// Criterion 5: cup-i products and Steenrod squares.
pub fn steenrod_suite(seed: u64) -> SuiteReport {
    timed(SuiteReport::new(5, "cup-i products and Steenrod squares", 120), |r| {
        let mut rng = rng_for(seed, 5);
        for d in 1..=5 {
            let k = SimplicialComplexData::simplex(d);
            for _ in 0..40 {
                let p = rng.gen_range(1..=d);
                let q_ = rng.gen_range(1..=d);
                // every cocycle of a simplex of positive degree is a coboundary
                let a = random_cochain(&mut rng, p - 1, &k).coboundary(&k);
                let b = random_cochain(&mut rng, q_ - 1, &k).coboundary(&k);
                let lhs = cup_i(1, &a, &b, &k).coboundary(&k);
                let rhs = cup_i(0, &a, &b, &k).add(&cup_i(0, &b, &a, &k));
                let ok = match rhs {
                    Ok(rhs) => lhs.support() == rhs.support(),
                    Err(_) => false,
                };
                r.check(ok, || format!("coboundary of a cup-1 product on the {d}-simplex, degrees {p},{q_}"));
            }
        }
        let rp2 = SimplicialComplexData::rp2();
        let h1 = rp2.cohomology_basis(1);
        r.check(h1.len() == 1, || format!("H^1(RP^2) has dimension {}", h1.len()));
        for x in &h1 {
            let sq = steenrod_square(1, x, &rp2).expect("degree fits");
            r.check(!rp2.is_coboundary(&sq), || "Sq^1 vanishes on the generator of H^1(RP^2)".into());
        }
        for (name, k) in [
            ("RP^2", SimplicialComplexData::rp2()),
            ("torus", SimplicialComplexData::torus7()),
            ("sphere", SimplicialComplexData::sphere2()),
        ] {
            for deg in 0..=2 {
                for x in k.cohomology_basis(deg) {
                    let sq = steenrod_square(0, &x, &k).expect("degree fits");
                    let ok = sq.add(&x).map(|diff| k.is_coboundary(&diff)).unwrap_or(false);
                    r.check(ok, || format!("Sq^0 moves a degree-{deg} class of the {name}"));
                }
            }
        }
        for d in 0..=4 {
            let k = SimplicialComplexData::simplex(d);
            for p in 0..=d {
                for q_ in 0..=d - p {
                    for a in k.faces(p) {
                        for b in k.faces(q_) {
                            let a = Cochain::new(p, [a.clone()]).expect("face");
                            let b = Cochain::new(q_, [b.clone()]).expect("face");
                            let ok = cup_i(0, &a, &b, &k) == cup_product_front_back(&a, &b, &k);
                            r.check(ok, || format!("cup_0 on {a} and {b}"));
                        }
                    }
                }
            }
        }
    })
}

fn random_point<R: Rng>(rng: &mut R, d: usize) -> SimplexPoint<Q> {
    SimplexPoint::new(crate::random::random_simplex_point(rng, d, 12)).expect("sorted coordinates")
}

fn term(text: &str) -> GraphTerm {
    parse_term(text).expect("fixed term parses")
}

/// Criterion 6: the action on simplices and realizations.
pub fn cw_level(seed: u64) -> SuiteReport {
    timed(SuiteReport::new(6, "pointwise action on simplices and realizations", 120), |r| {
        let mut rng = rng_for(seed, 6);
        // identities hold for every parameter value
        let identities: Vec<(&str, &str, usize)> = vec![
            ("mu(0)", "id | eps", 2),
            ("mu(1)", "eps | id", 2),
            ("h(0)", "id", 1),
            ("h(1)", "delta ; (eps | id)", 1),
            ("delta ; (eps | eps)", "eps", 1),
            ("mu(S) ; eps", "eps | eps", 2),
            ("h(S) ; eps", "eps", 1),
        ];
        for (lhs, rhs, inputs) in &identities {
            for sample in 0..10_000 {
                let s = format_rational(&crate::random::random_unit_rational(&mut rng, 12));
                let (gl, gr) = (term(&lhs.replace('S', &s)), term(&rhs.replace('S', &s)));
                let d = sample % 5;
                let pts: Vec<_> = (0..*inputs).map(|_| random_point(&mut rng, d)).collect();
                let (a, b) = (eval_term(&gl, &pts), eval_term(&gr, &pts));
                r.check(a.is_ok() && a == b, || format!("{lhs} = {rhs} at s = {s}, points {pts:?}"));
            }
        }
        // outputs stay ordered
        for _ in 0..1000 {
            let g = random_s_term(&mut rng, &TermShape::default());
            let pts: Vec<_> = (0..g.inputs()).map(|_| random_point(&mut rng, 3)).collect();
            let out = eval_term(&g, &pts);
            let ok = out.map(|o| o.iter().all(|p| SimplexPoint::new(p.coords().to_vec()).is_ok())).unwrap_or(false);
            r.check(ok, || format!("unordered output for {g}"));
        }
        // naturality
        for d in 0..=4 {
            for op in SimplicialOp::all(d) {
                for _ in 0..20 {
                    let s = format_rational(&crate::random::random_unit_rational(&mut rng, 12));
                    for text in ["delta".to_string(), format!("mu({s})"), format!("h({s})"), "eps".to_string()] {
                        let report = check_naturality(&term(&text), op, d, 25, &mut rng);
                        r.check(report.passed(), || format!("{text} {op:?} d={d}: {:?}", report.violations));
                    }
                }
            }
        }
        // cellularity
        for text in ["delta", "mu(S)", "h(S)", "eps"] {
            for _ in 0..100 {
                let s = format_rational(&random_interior_rational(&mut rng, 12));
                let g = term(&text.replace('S', &s));
                let report = check_cellular(&g, 3, 100, &mut rng);
                r.check(report.passed(), || format!("{text} at s = {s}: {:?}", report.violations));
            }
        }
        let control = check_cellular_with(1, 3, 0, 1000, &mut rng, |pts| {
            vec![SimplexPoint::new(pts[0].coords().iter().map(|x| x / Q::from_integer(3.into())).collect())
                .expect("scaling keeps order")]
        });
        r.check(!control.passed(), || "the scaled map x/3 passed the cellularity check".into());
        // realization well-definedness
        let sets = [SimplicialSet::standard(2), SimplicialSet::standard(3), SimplicialSet::circle(), SimplicialSet::sphere2()];
        for case in 0..1000 {
            let x = &sets[case % sets.len()];
            let s = format_rational(&crate::random::random_unit_rational(&mut rng, 12));
            let g = match rng.gen_range(0..4) {
                0 => term("delta"),
                1 => term(&format!("h({s})")),
                2 => term(&format!("delta ; (h({s}) | delta)")),
                _ => term("delta ; (delta | id) ; (id | eps | id)"),
            };
            let (top, theta) = x.random_relation(&mut rng, 3);
            let p = random_point(&mut rng, theta.len() - 1);
            let lhs = x.restrict(&top, &theta).and_then(|pulled| x.realization_act_on(&g, &pulled, &p));
            let rhs = x.realization_act_on(&g, &top, &push_point(&theta, top.dim(), &p));
            r.check(lhs.is_ok() && lhs == rhs, || format!("{g} on {top} along {theta:?} at {p}"));
        }
    })
}

/// Criterion 7: the stabilization maps.
pub fn stabilization(seed: u64) -> SuiteReport {
    timed(SuiteReport::new(7, "stabilization identities", 30), |r| {
        let mut rng = rng_for(seed, 7);
        let shape = TermShape { max_vertices: 10, ..TermShape::default() };
        let mut done = 0;
        while done < 500 {
            let g = random_s_term(&mut rng, &shape);
            if g.outputs() == 0 {
                continue;
            }
            done += 1;
            let base = normalize(&g);
            let ri = stabilize_add(&g).and_then(|i| stabilize_remove(&i)).map(|x| normalize(&x));
            r.check(matches!(&ri, Ok(x) if *x == base), || format!("r(i(g)) differs for {g}"));
            let ir = stabilize_remove(&g).and_then(|x| stabilize_add(&x)).map(|x| normalize(&x));
            let h0 = stabilization_homotopy(&g, Q::zero()).map(|x| normalize(&x));
            r.check(h0.is_ok() && ir.is_ok() && h0 == ir, || format!("start of the homotopy is not i(r(g)) for {g}"));
            let h1 = stabilization_homotopy(&g, Q::one()).map(|x| normalize(&x));
            r.check(matches!(&h1, Ok(x) if *x == base), || format!("end of the homotopy is not g for {g}"));
        }
    })
}

/// Criterion 8: surfaces of canonical elements.
pub fn surfaces(seed: u64) -> SuiteReport {
    timed(SuiteReport::new(8, "arc surfaces", 60), |r| {
        let mut rng = rng_for(seed, 8);
        let mut elements: Vec<WeightedSurjection> = Vec::new();
        for n in 1..=2 {
            for m in 1..=3 {
                for k in 0..=3 {
                    for t in enumerate_basis(n, m, k) {
                        elements.push(t.generic_weights());
                        elements.push(random_weights(&mut rng, &t));
                    }
                }
            }
        }
        for x in &elements {
            let rg = to_ribbon(x);
            let collapsed = rg.as_ref().map(|g| g.collapse_edges()).map_err(Clone::clone);
            let back = collapsed.clone().and_then(|g| g.recover());
            r.check(back.as_ref() == Ok(x), || format!("round trip of {x:?} gave {back:?}"));
            let pre = rg.as_ref().map(|g| g.summary());
            let post = collapsed.as_ref().map(|g| g.summary());
            let ok = match (&pre, &post) {
                (Ok(a), Ok(b)) => a.consistent() && b.consistent() && a.topology() == b.topology(),
                _ => false,
            };
            r.check(ok, || format!("Euler characteristic mismatch for {x:?}"));
            if let Ok(g) = &collapsed {
                r.check(g.collapse_edges() == *g, || format!("collapse not idempotent for {x:?}"));
            }
            let probe = probe_boundary_orders(x, 2, &mut rng);
            r.check(probe == Ok(true), || format!("boundary order changes the topology of {x:?}"));
        }
        let anchors = [(vec![1], 1, (0, 2)), (vec![1, 2], 2, (0, 3))];
        for (seq, m, expected) in anchors {
            let x = SurjectionType::sequence(m, &seq).expect("anchor").generic_weights();
            let s = surface_summary(&x);
            let got = s.as_ref().map(|s| (s.genus, s.boundary));
            r.check(got == Ok(expected), || format!("{seq:?} gave {got:?}"));
        }
        let mut cases = 0;
        while cases < 200 {
            let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let x = random_weighted(&mut rng, n, m, 3);
            let removable = removable_strands(&x);
            if removable.is_empty() {
                continue;
            }
            cases += 1;
            let k = removable[rng.gen_range(0..removable.len())];
            let limit = degenerate_strand(&x, k).and_then(|e| element_surface(&e));
            let removed = to_ribbon(&x).and_then(|g| {
                let g = g.collapse_edges();
                let arc = arc_of_strand(&g, &x, k).expect("strand has an arc");
                g.remove_arc(arc)
            });
            let ok = matches!((&limit, &removed), (Ok(a), Ok(b)) if *a == b.summary());
            r.check(ok, || format!("weight of strand {k} of {x:?} to zero"));
        }
    })
}

/// Criterion 9: freeness of the symmetric group actions.
pub fn symmetric_actions(_seed: u64) -> SuiteReport {
    timed(SuiteReport::new(9, "symmetric group actions", 10), |r| {
        for m in 1..=4 {
            let perms: Vec<Permutation> = Permutation::all(m).into_iter().filter(|p| !p.is_identity()).collect();
            for k in 0..=3 {
                for t in enumerate_basis(1, m, k) {
                    for p in &perms {
                        r.check(t.permute_outputs(p) != t, || format!("{t} fixed by {:?}", p.one_based()));
                    }
                }
            }
        }
        let fixed = SurjectionType::new(3, 1, vec![vec![], vec![], vec![1]]).expect("valid type");
        let swap = Permutation::transposition(3, 0, 1);
        r.check(fixed.permute_inputs(&swap) == fixed, || "ε|ε|id is not fixed by (1 2) on types".into());
        let g = term("eps | eps | id");
        let permuted = g.permute_inputs(&swap).map(|h| normalize(&h));
        let expected = normalize(&g);
        r.check(matches!(&permuted, Ok(x) if *x == expected), || "ε|ε|id is not fixed by (1 2) in normal form".into());
        let moved = SurjectionType::new(3, 1, vec![vec![], vec![1], vec![]]).expect("valid type");
        r.check(moved.permute_inputs(&swap) != moved, || "ε|id|ε is fixed by (1 2)".into());
        r.check(matches!(expected, Ok(MSElement::Surjection(_))), || "ε|ε|id normalized to a counit".into());
    })
}

/// All suites in order.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES.iter().map(|(_, f)| f(seed)).collect()
}

type Suite = fn(u64) -> SuiteReport;

/// The suites by criterion number.
pub const SUITES: [(usize, Suite); 9] = [
    (1, confluence),
    (2, basis_counts),
    (3, differential_squares),
    (4, action_compatibility),
    (5, steenrod_suite),
    (6, cw_level),
    (7, stabilization),
    (8, surfaces),
    (9, symmetric_actions),
];

/// Runs one suite by number.
pub fn run_one(number: usize, seed: u64) -> Option<SuiteReport> {
    SUITES.iter().find(|(n, _)| *n == number).map(|(_, f)| f(seed))
}
