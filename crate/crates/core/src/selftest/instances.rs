//! Seeded generators for the self-test and the integration tests.

use rand::Rng;

use crate::cocycle::LaurentUnit;
use crate::descent::{EquivariantModule, FinAlgebra, GradedIdealTrunc};
use crate::document::Document;
use crate::error::Error;
use crate::field::{DegreeCap, Field, FieldElement};
use crate::matrix::MatrixF;
use crate::poly::{homogeneous_monomials, PolynomialF};
use crate::semilinear::{splitting_degree, DualMatrix, SemilinearEndo};

/// `(q, m)` with `q^m <= 9`.
pub const SMALL_FIELDS_9: [(u64, u32); 10] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (4, 1),
    (5, 1),
    (7, 1),
    (8, 1),
    (9, 1),
];

/// `(q, m)` with `q^m <= 8`.
pub const SMALL_FIELDS_8: [(u64, u32); 8] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (4, 1),
    (5, 1),
    (7, 1),
    (8, 1),
];

const DOCUMENT_FIELDS: [(u64, u32); 9] = [
    (2, 1),
    (2, 4),
    (3, 2),
    (4, 3),
    (5, 1),
    (7, 2),
    (9, 1),
    (8, 2),
    (25, 1),
];

pub fn pick_field<R: Rng>(rng: &mut R, choices: &[(u64, u32)]) -> Field {
    let (q, m) = choices[rng.gen_range(0..choices.len())];
    Field::from_q(q, m).expect("listed fields are valid")
}

pub fn random_element<R: Rng>(rng: &mut R, field: &Field) -> FieldElement {
    field.from_index(rng.gen_range(0..field.order().expect("small field")))
}

pub fn random_nonzero<R: Rng>(rng: &mut R, field: &Field) -> FieldElement {
    field.from_index(rng.gen_range(1..field.order().expect("small field")))
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: &Field, rows: usize, cols: usize) -> MatrixF {
    MatrixF::from_fn(field, rows, cols, |_, _| random_element(rng, field))
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: &Field, n: usize) -> MatrixF {
    loop {
        let a = random_matrix(rng, field, n, n);
        if !a.determinant().is_zero() {
            return a;
        }
    }
}

/// A random `A * phi` with `n <= max_n` whose splitting field fits under
/// `cap`, and the number of draws rejected for exceeding it.
pub fn random_split_semilinear<R: Rng>(
    rng: &mut R,
    fields: &[(u64, u32)],
    max_n: usize,
    cap: DegreeCap,
) -> (SemilinearEndo, usize) {
    let mut skipped = 0;
    loop {
        let field = pick_field(rng, fields);
        let n = rng.gen_range(1..=max_n);
        let sigma =
            SemilinearEndo::with_matrix(random_invertible(rng, &field, n)).expect("invertible");
        match splitting_degree(&sigma, cap) {
            Ok(_) => return (sigma, skipped),
            Err(Error::CapacityExceeded { .. }) => skipped += 1,
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
}

/// A random `A` in `GL_n(F_{q^m})`, `n <= 3`, `q^m <= 8`, whose Lang
/// equation is solvable under `cap`.
pub fn random_lang_target<R: Rng>(rng: &mut R, cap: DegreeCap) -> (Field, MatrixF, usize) {
    let mut skipped = 0;
    loop {
        let field = pick_field(rng, &SMALL_FIELDS_8);
        let n = rng.gen_range(1..=3);
        let a = random_invertible(rng, &field, n);
        let tau = SemilinearEndo::with_matrix(a.transpose().inverse().expect("invertible"))
            .expect("invertible");
        if splitting_degree(&tau, cap).is_ok() {
            return (field, a, skipped);
        }
        skipped += 1;
    }
}

/// `F_q`, or `F_q[t]/(f)` for a random monic `f` of degree 2 or 3.
pub fn random_algebra<R: Rng>(rng: &mut R, fq: &Field, max_dim: usize) -> FinAlgebra {
    let d = rng.gen_range(1..=max_dim);
    if d == 1 {
        return FinAlgebra::base(fq).expect("base algebra");
    }
    let coeffs: Vec<_> = (0..d).map(|_| random_element(rng, fq)).collect();
    FinAlgebra::monogenic(fq, &coeffs).expect("monogenic algebras are valid")
}

/// `(A (x) L)^k` with Frobenius twisted by a random invertible `A (x) L`-
/// linear map, transported along a random change of basis. Requires `A`
/// commutative.
pub fn random_module_over<R: Rng>(
    rng: &mut R,
    alg: &FinAlgebra,
    field: &Field,
    k: usize,
) -> EquivariantModule {
    let d = alg.dim();
    let n = k * d;
    let emb = alg.field().embedding_into(field).expect("F_q embeds");
    let left: Vec<MatrixF> = (0..d)
        .map(|c| alg.left_multiplication(c).embed(&emb))
        .collect();
    let blocks = |b: &dyn Fn(usize, usize) -> Option<MatrixF>| {
        let grid: Vec<Vec<Option<MatrixF>>> =
            (0..k).map(|i| (0..k).map(|j| b(i, j)).collect()).collect();
        MatrixF::from_fn(field, n, n, |r, c| match &grid[r / d][c / d] {
            Some(m) => m.get(r % d, c % d).clone(),
            None => field.zero(),
        })
    };
    let action: Vec<MatrixF> = left
        .iter()
        .map(|l| blocks(&|i, j| (i == j).then(|| l.clone())))
        .collect();
    let twist = loop {
        let entries: Vec<Vec<MatrixF>> = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        left.iter().fold(MatrixF::zeros(field, d, d), |acc, l| {
                            acc.add(&l.scale(&random_element(rng, field)))
                        })
                    })
                    .collect()
            })
            .collect();
        let u = blocks(&|i, j| Some(entries[i][j].clone()));
        if !u.determinant().is_zero() {
            break u;
        }
    };
    let module = EquivariantModule::new(
        alg.clone(),
        action,
        SemilinearEndo::with_matrix(twist).expect("invertible"),
    )
    .expect("shapes agree");
    module
        .conjugate(&random_invertible(rng, field, n))
        .expect("invertible change of basis")
}

fn splits(module: &EquivariantModule, cap: DegreeCap) -> bool {
    splitting_degree(module.sigma(), cap).is_ok()
}

/// Both modules split over one common extension within `cap`.
fn pair_splits(m: &EquivariantModule, n: &EquivariantModule, cap: DegreeCap) -> bool {
    let (Ok(a), Ok(b)) = (
        splitting_degree(m.sigma(), cap),
        splitting_degree(n.sigma(), cap),
    ) else {
        return false;
    };
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    m.field().degree() * (a / x * b) as usize <= cap.0
}

/// A random equivariant module with `dim A <= 3`, `dim V <= 4`,
/// `q^m <= 8`, splitting under `cap`; also returns the rejection count.
pub fn random_module<R: Rng>(rng: &mut R, cap: DegreeCap) -> (EquivariantModule, usize) {
    let mut skipped = 0;
    loop {
        let field = pick_field(rng, &SMALL_FIELDS_8);
        let alg = random_algebra(rng, &field.base_field(), 3);
        let k = rng.gen_range(1..=4 / alg.dim());
        let module = random_module_over(rng, &alg, &field, k);
        if splits(&module, cap) {
            return (module, skipped);
        }
        skipped += 1;
    }
}

/// Two random modules over a common algebra and field whose homs can be
/// computed under `cap`.
pub fn random_module_pair<R: Rng>(
    rng: &mut R,
    cap: DegreeCap,
) -> (EquivariantModule, EquivariantModule) {
    loop {
        let field = pick_field(rng, &SMALL_FIELDS_8);
        let alg = random_algebra(rng, &field.base_field(), 3);
        let max_k = 4 / alg.dim();
        let (km, kn) = (rng.gen_range(1..=max_k), rng.gen_range(1..=max_k));
        let m = random_module_over(rng, &alg, &field, km);
        let n = random_module_over(rng, &alg, &field, kn);
        if pair_splits(&m, &n, cap) {
            return (m, n);
        }
    }
}

/// A pair over `F_2` or `F_4` (with `q = 2`) of total dimension at most 4.
pub fn random_small_pair<R: Rng>(
    rng: &mut R,
    cap: DegreeCap,
) -> (EquivariantModule, EquivariantModule) {
    loop {
        let field = Field::new(2, 1, rng.gen_range(1..=2)).expect("small field");
        let alg = random_algebra(rng, &field.base_field(), 2);
        let d = alg.dim();
        let km = rng.gen_range(1..=4 / d - 1);
        let kn = rng.gen_range(1..=4 / d - km);
        let m = random_module_over(rng, &alg, &field, km);
        let n = random_module_over(rng, &alg, &field, kn);
        if pair_splits(&m, &n, cap) {
            return (m, n);
        }
    }
}

pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    field: &Field,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> PolynomialF {
    let terms = rng.gen_range(1..=max_terms);
    (0..terms).fold(PolynomialF::zero(field, nvars), |acc, _| {
        let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_degree)).collect();
        acc.add(&PolynomialF::monomial(field, e, random_element(rng, field)))
    })
}

pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    field: &Field,
    nvars: usize,
    degree: u32,
) -> PolynomialF {
    let mons = homogeneous_monomials(nvars, degree);
    loop {
        let coeffs: Vec<_> = mons.iter().map(|_| random_element(rng, field)).collect();
        let p = PolynomialF::from_coefficients(field, &mons, &coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

fn orbit(f: &PolynomialF) -> Vec<PolynomialF> {
    (0..f.field().m() as i64)
        .map(|i| f.frobenius_on_coeffs(i))
        .collect()
}

/// Frobenius-stable truncated ideals (`D = 4`) over `F_4` and `F_9` in two
/// and three variables: generated by Frobenius orbits, by rational
/// polynomials, and by mixtures of both.
pub fn stable_ideal_fixtures<R: Rng>(rng: &mut R) -> Vec<GradedIdealTrunc> {
    let mut out = Vec::new();
    for (p, m) in [(2u32, 2u32), (3, 2)] {
        let field = Field::new(p, 1, m).expect("small field");
        let fq = field.base_field();
        let emb = fq.embedding_into(&field).expect("F_q embeds");
        for nvars in [2usize, 3] {
            let linear = orbit(&random_homogeneous(rng, &field, nvars, 1));
            let quadratic = orbit(&random_homogeneous(rng, &field, nvars, 2));
            let rational: Vec<_> = (0..2)
                .map(|_| random_homogeneous(rng, &fq, nvars, 2).embed(&emb))
                .collect();
            let mut mixed = orbit(&random_homogeneous(rng, &field, nvars, 3));
            mixed.push(rational[0].clone());
            for gens in [linear, quadratic, rational, mixed] {
                out.push(
                    GradedIdealTrunc::from_generators(&field, nvars, 4, &gens)
                        .expect("homogeneous generators"),
                );
            }
        }
    }
    out
}

/// A random document of one of the value-carrying types, or a report type.
pub fn random_document<R: Rng>(rng: &mut R, cap: DegreeCap) -> Document {
    let field = pick_field(rng, &DOCUMENT_FIELDS);
    let n = rng.gen_range(1..=3);
    match rng.gen_range(0..14) {
        0 => Document::from_field(&field),
        1 => Document::from_element(&random_element(rng, &field)),
        2 => {
            let xs: Vec<_> = (0..n).map(|_| random_element(rng, &field)).collect();
            Document::from_elements(&field, &xs)
        }
        3 => {
            let cols = rng.gen_range(1..=3);
            Document::from_matrix(&random_matrix(rng, &field, n, cols))
        }
        4 => {
            let re = random_invertible(rng, &field, n);
            let eps = random_matrix(rng, &field, n, n);
            Document::from_dual_matrix(&DualMatrix::new(re, eps).expect("same shape"))
        }
        5 => Document::from_polynomial(&random_polynomial(rng, &field, n, 4, 6)),
        6 => {
            let ps: Vec<_> = (0..n)
                .map(|_| random_polynomial(rng, &field, 2, 3, 4))
                .collect();
            Document::from_polynomials(&field, &ps)
        }
        7 => Document::from_semilinear(
            &SemilinearEndo::with_matrix(random_invertible(rng, &field, n)).expect("invertible"),
        ),
        8 => Document::from_algebra(&random_algebra(rng, &field.base_field(), 3)),
        9 => {
            let alg = random_algebra(rng, &field.base_field(), 2);
            let k = rng.gen_range(1..=2);
            Document::from_module(&random_module_over(rng, &alg, &field, k))
        }
        10 => {
            let gens: Vec<_> = (0..n)
                .map(|_| {
                    let d = rng.gen_range(1..=2);
                    random_homogeneous(rng, &field, 2, d)
                })
                .collect();
            Document::from_ideal(
                &GradedIdealTrunc::from_generators(&field, 2, 3, &gens).expect("homogeneous"),
            )
        }
        11 => {
            let lambda = random_nonzero(rng, &field);
            Document::from_unit(
                &LaurentUnit::new(lambda, rng.gen_range(-50..=50)).expect("nonzero"),
            )
        }
        12 => Document::SplittingDegree {
            degree: rng.gen_range(1..=cap.0 as u32),
        },
        _ => Document::from_error(&Error::NotStable {
            degree: rng.gen_range(0..=4),
            witness: random_polynomial(rng, &field, 2, 3, 3),
        }),
    }
}
