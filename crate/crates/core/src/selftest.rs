//! Deterministic self-test: every documented property of the toolkit,
//! checked on seeded random instances against brute-force references.
//!
//! Each check draws from its own `ChaCha8` stream derived from the seed and
//! the check number, so checks can run concurrently and the report is
//! byte-identical for a fixed seed.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cocycle::{coboundary, mu_power_demo, picard_cokernel, unit_class, LaurentUnit};
use crate::descent::{
    check_equivariant, descend_module, element_descent, graded_ideal_descent, hom_space, same_span,
    HomMode,
};
use crate::document::Document;
use crate::field::{DegreeCap, Field};
use crate::matrix::rank_of;
use crate::moore::{is_fq_independent, moore_identity_check, moore_identity_sampled, MooreInput};
use crate::oracle;
use crate::semilinear::{
    beta_surjectivity_report, descend_vector_space, fixed_space, lang_map, lang_solve,
    splitting_degree, CoefficientRing,
};

pub mod instances;

use instances::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub lines: Vec<CheckLine>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    /// Fixed-width table, one line per check, ordered by check number.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "selftest seed={}", self.seed).unwrap();
        for l in &self.lines {
            let status = if l.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{:>2}  {status}  {:<46}  {}", l.id, l.name, l.detail).unwrap();
        }
        let passed = self.lines.iter().filter(|l| l.passed).count();
        writeln!(out, "{passed}/{} checks passed", self.lines.len()).unwrap();
        out
    }
}

pub const CHECKS: [(u8, &str); 11] = [
    (1, "moore determinant factorization"),
    (2, "moore invertibility vs independence"),
    (3, "fixed-space descent round trip"),
    (4, "splitting degree vs brute-force search"),
    (5, "lang equation and beta surjectivity"),
    (6, "equivariant module descent round trip"),
    (7, "equivariant homs vs descended homs"),
    (8, "graded ideal and element descent"),
    (9, "unit coboundary cokernel"),
    (10, "roots-of-unity power map"),
    (11, "document serialization round trip"),
];

pub fn check_rng(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs all checks, concurrently, and reports them in order.
pub fn run(seed: u64, cap: DegreeCap) -> SelftestReport {
    let lines = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(id, _)| s.spawn(move || run_check(id, seed, cap)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("self-test check panicked"))
            .collect()
    });
    SelftestReport { seed, lines }
}

pub fn run_check(id: u8, seed: u64, cap: DegreeCap) -> CheckLine {
    let name = CHECKS
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .expect("known check");
    let mut rng = check_rng(seed, id);
    let result = match id {
        1 => moore_factorization(&mut rng),
        2 => moore_independence(),
        3 => fixed_space_round_trip(&mut rng, cap),
        4 => splitting_degree_search(&mut rng, cap),
        5 => lang_and_beta(&mut rng, cap),
        6 => module_round_trip(&mut rng, cap),
        7 => hom_comparison(&mut rng, cap),
        8 => ideal_descent(&mut rng),
        9 => unit_cokernel(),
        10 => power_map(),
        11 => serialization(&mut rng, cap),
        _ => unreachable!(),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckLine {
        id,
        name,
        passed,
        detail,
    }
}

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn moore_factorization(rng: &mut ChaCha8Rng) -> Outcome {
    let mut symbolic = 0;
    for (q, r) in [(2, 1), (2, 2), (3, 1), (4, 1)] {
        let id = moore_identity_check(q, r).map_err(err)?;
        ensure!(!id.omega.is_zero(), "omega vanished for q={q}, r={r}");
        symbolic += 1;
    }
    let mut points = 0;
    for (q, r) in [(3, 2), (4, 2)] {
        moore_identity_sampled(q, r, 6, 200, rng).map_err(err)?;
        points += 200;
    }
    Ok(format!(
        "{symbolic} symbolic identities, {points} sampled points"
    ))
}

fn moore_independence() -> Outcome {
    let mut tuples = 0;
    for (q, m, r) in [(2u64, 2u32, 1usize), (2, 3, 2), (3, 2, 1)] {
        let field = Field::from_q(q, m).map_err(err)?;
        let order = field.order().unwrap();
        let total = order.pow(r as u32 + 1);
        for mut idx in 0..total {
            let elems: Vec<_> = (0..=r)
                .map(|_| {
                    let x = field.from_index(idx % order);
                    idx /= order;
                    x
                })
                .collect();
            let brute = oracle::independent_by_enumeration(&elems).ok_or("oracle out of range")?;
            let moore = is_fq_independent(&MooreInput::new(&field, elems.clone()).map_err(err)?);
            ensure!(brute == moore, "discrepancy over {field} at {elems:?}");
            tuples += 1;
        }
    }
    Ok(format!("{tuples} tuples, 0 discrepancies"))
}

fn fixed_space_round_trip(rng: &mut ChaCha8Rng, cap: DegreeCap) -> Outcome {
    let mut rejected = 0;
    for _ in 0..200 {
        let (sigma, skipped) = random_split_semilinear(rng, &SMALL_FIELDS_9, 3, cap);
        rejected += skipped;
        let n = sigma.dim();
        let fixed = fixed_space(&sigma).map_err(err)?;
        ensure!(fixed.dim() <= n, "fixed space larger than n");
        ensure!(
            rank_of(sigma.field(), &fixed.basis) == fixed.dim(),
            "fixed basis is dependent over the big field"
        );
        let d = descend_vector_space(&sigma, cap).map_err(err)?;
        ensure!(
            d.dim == n && d.verify(&sigma),
            "certificate fails for {:?}",
            sigma.matrix()
        );
    }
    Ok(format!(
        "200 instances, {rejected} resampled over the degree cap"
    ))
}

fn splitting_degree_search(rng: &mut ChaCha8Rng, cap: DegreeCap) -> Outcome {
    let mut rejected = 0;
    let mut max_e = 0;
    for _ in 0..100 {
        let (sigma, skipped) = random_split_semilinear(rng, &SMALL_FIELDS_9, 2, cap);
        rejected += skipped;
        let e = splitting_degree(&sigma, cap).map_err(err)?;
        let brute = oracle::min_split_degree(&sigma, cap);
        ensure!(brute == Some(e), "order gives {e}, search gives {brute:?}");
        max_e = max_e.max(e);
    }
    Ok(format!(
        "100 instances, 0 discrepancies, max degree {max_e}, {rejected} resampled"
    ))
}

fn lang_and_beta(rng: &mut ChaCha8Rng, cap: DegreeCap) -> Outcome {
    let mut rejected = 0;
    for _ in 0..100 {
        let (field, a, skipped) = random_lang_target(rng, cap);
        rejected += skipped;
        let sol = lang_solve(&a, cap).map_err(err)?;
        let emb = field.embedding_into(sol.solution.field()).map_err(err)?;
        ensure!(
            lang_map(&sol.solution).map_err(err)? == a.embed(&emb),
            "G^-1 phi(G) != A"
        );
    }
    let mut reports = Vec::new();
    for (q, m, ring) in [
        (3, 1, CoefficientRing::Field),
        (4, 1, CoefficientRing::Field),
        (2, 2, CoefficientRing::Field),
        (2, 2, CoefficientRing::DualNumbers),
    ] {
        let r = beta_surjectivity_report(q, m, 1, ring, cap).map_err(err)?;
        ensure!(r.all_hit, "beta misses targets for q={q}, m={m}, {ring:?}");
        reports.push(format!("{}/{}", r.hit, r.targets));
    }
    Ok(format!(
        "100 solutions, {rejected} resampled; beta hit {}",
        reports.join(" ")
    ))
}

fn module_round_trip(rng: &mut ChaCha8Rng, cap: DegreeCap) -> Outcome {
    let mut rejected = 0;
    for _ in 0..100 {
        let (module, skipped) = random_module(rng, cap);
        rejected += skipped;
        check_equivariant(&module).map_err(|v| format!("generated module not equivariant: {v}"))?;
        let d = descend_module(&module, cap).map_err(err)?;
        ensure!(d.dim() == module.dim(), "dimension changed");
        ensure!(
            d.verify(&module),
            "certificate is not an equivariant isomorphism"
        );
    }
    Ok(format!("100 modules, {rejected} resampled"))
}

fn hom_comparison(rng: &mut ChaCha8Rng, cap: DegreeCap) -> Outcome {
    let mut total_dim = 0;
    for _ in 0..100 {
        let (m, n) = random_module_pair(rng, cap);
        let eq = hom_space(&m, &n, HomMode::Equivariant, cap).map_err(err)?;
        let dm = descend_module(&m, cap).map_err(err)?;
        let dn = descend_module(&n, cap).map_err(err)?;
        let descended = dm.hom_basis(&dn).map_err(err)?;
        ensure!(
            eq.dim() == descended.len(),
            "equivariant {} vs descended {}",
            eq.dim(),
            descended.len()
        );
        total_dim += eq.dim();
    }
    let mut exhaustive = 0;
    while exhaustive < 20 {
        let (m, n) = random_small_pair(rng, cap);
        let eq = hom_space(&m, &n, HomMode::Equivariant, cap).map_err(err)?;
        let emb = m.field().embedding_into(&eq.field).map_err(err)?;
        let (me, ne) = (m.extend_along(&emb), n.extend_along(&emb));
        let Some(brute) = oracle::homs_by_enumeration(
            &eq.field,
            me.action(),
            ne.action(),
            Some((me.sigma().matrix(), ne.sigma().matrix())),
        ) else {
            continue;
        };
        let solved = oracle::fq_span(&eq.field, &eq.basis).ok_or("span too large")?;
        ensure!(
            as_set(&brute) == as_set(&solved),
            "equivariant hom sets differ"
        );

        let dm = descend_module(&m, cap).map_err(err)?;
        let dn = descend_module(&n, cap).map_err(err)?;
        let fq = m.algebra().field();
        let brute =
            oracle::homs_by_enumeration(fq, &dm.action, &dn.action, None).ok_or("too large")?;
        let solved =
            oracle::fq_span(fq, &dm.hom_basis(&dn).map_err(err)?).ok_or("span too large")?;
        ensure!(
            as_set(&brute) == as_set(&solved),
            "descended hom sets differ"
        );
        exhaustive += 1;
    }
    Ok(format!(
        "100 pairs (total hom dim {total_dim}), {exhaustive} exhaustive over F_2"
    ))
}

fn as_set(ms: &[crate::matrix::MatrixF]) -> BTreeSet<Vec<u128>> {
    ms.iter()
        .map(|m| m.entries().iter().map(|x| x.index()).collect())
        .collect()
}

fn ideal_descent(rng: &mut ChaCha8Rng) -> Outcome {
    let fixtures = stable_ideal_fixtures(rng);
    for ideal in &fixtures {
        let j = graded_ideal_descent(ideal).map_err(err)?;
        ensure!(j.field().m() == 1, "descended ideal is not over F_q");
        ensure!(j.dims() == ideal.dims(), "dimensions differ");
        ensure!(
            j.embed(ideal.field()).map_err(err)? == *ideal,
            "J (x) F_q^m != I"
        );
    }
    let f8 = Field::new(2, 1, 3).unwrap();
    let emb = f8.base_field().embedding_into(&f8).unwrap();
    for _ in 0..100 {
        let f = random_polynomial(rng, &f8, 2, 3, 5);
        let parts = element_descent(&f).map_err(err)?;
        let orbit: Vec<_> = (0..3).map(|i| f.frobenius_on_coeffs(i)).collect();
        let lifted: Vec<_> = parts.iter().map(|a| a.embed(&emb)).collect();
        ensure!(
            same_span(&f8, &lifted, &orbit),
            "span equality fails for {f}"
        );
        ensure!(
            lifted.iter().all(|a| a.has_fq_coefficients()),
            "coefficients outside F_q"
        );
    }
    Ok(format!("{} stable ideals, 100 elements", fixtures.len()))
}

fn unit_cokernel() -> Outcome {
    let mut summary = Vec::new();
    for (q, m) in [(2u64, 2u32), (3, 2), (3, 3), (5, 2)] {
        let c = picard_cokernel(q, m).map_err(err)?;
        let field = c.generator.field().clone();
        let order = field.order().unwrap() as u64;
        ensure!(c.free_rank == 1, "free rank {}", c.free_rank);
        ensure!(
            c.torsion_order == q - 1,
            "torsion {} for q={q}, m={m}",
            c.torsion_order
        );
        ensure!(
            c.torsion_order * c.image_size == order - 1,
            "index mismatch"
        );
        ensure!(c.x_class_nontrivial, "x is a coboundary");
        // kernel of the class map is exactly the image of the coboundary
        let image: BTreeSet<u128> = field
            .elements()
            .skip(1)
            .map(|l| {
                coboundary(&LaurentUnit::new(l, 0).unwrap())
                    .lambda()
                    .index()
            })
            .collect();
        let trivial = LaurentUnit::one(&field);
        for l in field.elements().skip(1) {
            let u = LaurentUnit::new(l.clone(), 0).unwrap();
            let in_kernel = unit_class(&u).map_err(err)? == trivial;
            ensure!(
                in_kernel == image.contains(&l.index()),
                "class map kernel differs at {l}"
            );
        }
        summary.push(format!("q={q},m={m}:Z/{}+Z", c.torsion_order));
    }
    Ok(summary.join(" "))
}

fn power_map() -> Outcome {
    let mut cases = 0;
    for q in [3u64, 4, 5] {
        for m in 1..=3 {
            let r = mu_power_demo(q, m).map_err(err)?;
            ensure!(
                r.roots.len() as u64 == q - 1,
                "|mu_(q-1)| = {}",
                r.roots.len()
            );
            ensure!(
                r.image.len() == 1 && r.image[0].is_one(),
                "image is not {{1}}"
            );
            ensure!(!r.surjective, "power map surjective for q={q}");
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, image {{1}} in each"))
}

fn serialization(rng: &mut ChaCha8Rng, cap: DegreeCap) -> Outcome {
    for i in 0..500 {
        let doc = random_document(rng, cap);
        let text = doc.print();
        let parsed = Document::parse(&text).map_err(err)?;
        ensure!(parsed == doc, "document {i} changed on round trip");
        ensure!(parsed.print() == text, "document {i} printed differently");
        if let Some(false) = decodes_back(&doc, cap) {
            return Err(format!(
                "document {i} ({}) does not decode to the same value",
                doc.type_name()
            ));
        }
    }
    Ok("500 documents".into())
}

/// Decodes and re-encodes the value-carrying document types; `None` for
/// report types, which are output-only.
pub fn decodes_back(doc: &Document, cap: DegreeCap) -> Option<bool> {
    let back = || -> Option<Document> {
        Some(match doc {
            Document::Field(_) => Document::from_field(&doc.to_field(cap).ok()?),
            Document::Element { .. } => Document::from_element(&doc.to_element(cap).ok()?),
            Document::Elements { .. } => {
                let (f, xs) = doc.to_elements(cap).ok()?;
                Document::from_elements(&f, &xs)
            }
            Document::Matrix { .. } => Document::from_matrix(&doc.to_matrix(cap).ok()?),
            Document::DualMatrix { .. } => {
                Document::from_dual_matrix(&doc.to_dual_matrix(cap).ok()?)
            }
            Document::Polynomial { .. } => Document::from_polynomial(&doc.to_polynomial(cap).ok()?),
            Document::Polynomials { .. } => {
                let (f, ps) = doc.to_polynomials(cap).ok()?;
                Document::from_polynomials(&f, &ps)
            }
            Document::Semilinear { .. } => Document::from_semilinear(&doc.to_semilinear(cap).ok()?),
            Document::Algebra(_) => Document::from_algebra(&doc.to_algebra(cap).ok()?),
            Document::Module { .. } => Document::from_module(&doc.to_module(cap).ok()?),
            Document::Ideal { .. } => Document::from_ideal(&doc.to_ideal(cap).ok()?),
            Document::LaurentUnit { .. } => Document::from_unit(&doc.to_unit(cap).ok()?),
            _ => unreachable!(),
        })
    };
    match doc {
        Document::Field(_)
        | Document::Element { .. }
        | Document::Elements { .. }
        | Document::Matrix { .. }
        | Document::DualMatrix { .. }
        | Document::Polynomial { .. }
        | Document::Polynomials { .. }
        | Document::Semilinear { .. }
        | Document::Algebra(_)
        | Document::Module { .. }
        | Document::Ideal { .. }
        | Document::LaurentUnit { .. } => Some(back().as_ref() == Some(doc)),
        _ => None,
    }
}
