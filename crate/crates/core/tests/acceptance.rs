//! End-to-end acceptance checks. Every quantity the library derives is
//! recomputed here by brute force with the reference arithmetic in
//! `common`, and each criterion prints a single PASS/FAIL line.

mod common;

use std::collections::BTreeSet;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{report, El, Embed, Gf, Mat};
use frobenius_descent::cocycle::{coboundary, mu_power_demo, picard_cokernel, LaurentUnit};
use frobenius_descent::descent::{
    descend_module, element_descent, graded_ideal_descent, hom_space, EquivariantModule,
    FinAlgebra, HomMode,
};
use frobenius_descent::document::Document;
use frobenius_descent::field::{DegreeCap, Field};
use frobenius_descent::matrix::MatrixF;
use frobenius_descent::moore::{
    is_fq_independent, moore_identity_check, moore_identity_sampled, MooreInput,
};
use frobenius_descent::poly::PolynomialF;
use frobenius_descent::selftest::instances::{
    random_lang_target, random_module, random_module_pair, random_small_pair,
    random_split_semilinear, stable_ideal_fixtures, SMALL_FIELDS_9,
};
use frobenius_descent::semilinear::{
    beta_surjectivity_report, descend_vector_space, fixed_space, lang_solve, splitting_degree,
    CoefficientRing,
};

type Outcome = Result<String, String>;

const CAP: DegreeCap = DegreeCap(24);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run(id: u8, name: &str, body: fn() -> Outcome) {
    let outcome = body();
    report(id, name, &outcome);
    if let Err(why) = outcome {
        panic!("criterion {id} ({name}) failed: {why}");
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// Moore matrices

/// Normalized representatives of `P^r(F_q)`, as elements of `gf`.
fn projective_points(gf: &Gf, r: usize) -> Vec<Vec<El>> {
    let fq = gf.fq_elements();
    let mut out = Vec::new();
    let total = (fq.len() as u64).pow(r as u32 + 1);
    for mut idx in 0..total {
        let v: Vec<El> = (0..=r)
            .map(|_| {
                let x = fq[(idx % fq.len() as u64) as usize].clone();
                idx /= fq.len() as u64;
                x
            })
            .collect();
        if v.iter().find(|x| !gf.is_zero(x)) == Some(&gf.one()) {
            out.push(v);
        }
    }
    out
}

fn moore_det(gf: &Gf, x: &[El]) -> El {
    let mut rows: Mat = vec![x.to_vec()];
    for i in 1..x.len() {
        rows.push(rows[i - 1].iter().map(|y| gf.frob(y)).collect());
    }
    gf.leibniz_det(&rows)
}

fn form_product(gf: &Gf, points: &[Vec<El>], x: &[El]) -> El {
    points.iter().fold(gf.one(), |acc, a| {
        let form = a
            .iter()
            .zip(x)
            .fold(gf.zero(), |s, (c, xi)| gf.add(&s, &gf.mul(c, xi)));
        gf.mul(&acc, &form)
    })
}

fn moore_identity() -> Outcome {
    // (q, r, e): F_{q^e} has more elements than there are linear forms, so
    // agreement on the whole grid F_{q^e}^(r+1) is polynomial identity
    let mut grid_points = 0;
    for (q, r, e) in [(2u64, 1usize, 2u32), (2, 2, 3), (3, 1, 2), (4, 1, 2)] {
        let id = moore_identity_check(q, r).map_err(err)?;
        let big = Field::from_q(q, e).map_err(err)?;
        let emb = Embed::check(&id.omega.field().embedding_into(&big).map_err(err)?);
        let gf = &emb.big;
        let omega = emb.el(&emb.small.el(&id.omega));
        ensure!(
            !gf.is_zero(&omega) && gf.in_fq(&omega),
            "omega not in F_q^* for q={q}, r={r}"
        );
        let points = projective_points(gf, r);
        let n = gf.order();
        let mut nonzero = false;
        for mut idx in 0..n.pow(r as u32 + 1) {
            let x: Vec<El> = (0..=r)
                .map(|_| {
                    let v = gf.nth(idx % n);
                    idx /= n;
                    v
                })
                .collect();
            let det = moore_det(gf, &x);
            nonzero |= !gf.is_zero(&det);
            ensure!(
                det == gf.mul(&omega, &form_product(gf, &points, &x)),
                "identity fails at a point for q={q}, r={r}"
            );
            grid_points += 1;
        }
        ensure!(nonzero, "determinant vanishes identically for q={q}, r={r}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for q in [3u64, 4] {
        let r = 2;
        moore_identity_sampled(q, r, 6, 200, &mut rng).map_err(err)?;
        let id = moore_identity_check(q, r).map_err(err)?;
        let big = Field::from_q(q, 6).map_err(err)?;
        let emb = Embed::check(&id.omega.field().embedding_into(&big).map_err(err)?);
        let gf = &emb.big;
        let omega = emb.el(&emb.small.el(&id.omega));
        let points = projective_points(gf, r);
        for _ in 0..200 {
            let x: Vec<El> = (0..=r)
                .map(|_| gf.nth(rng.gen_range(0..gf.order())))
                .collect();
            ensure!(
                moore_det(gf, &x) == gf.mul(&omega, &form_product(gf, &points, &x)),
                "sampled identity fails for q={q}, r={r}"
            );
        }
    }
    Ok(format!(
        "4 symbolic cases on {grid_points} grid points, 2 x 200 samples over F_(q^6)"
    ))
}

#[test]
fn criterion_01_moore_identity() {
    run(
        1,
        "Moore determinant factors into rational linear forms",
        moore_identity,
    );
}

fn moore_independence() -> Outcome {
    let mut tuples = 0;
    for (q, m, r) in [(2u64, 2u32, 1usize), (2, 3, 2), (3, 2, 1)] {
        let field = Field::from_q(q, m).map_err(err)?;
        let gf = Gf::of(&field);
        let fq = gf.fq_elements();
        let n = gf.order();
        for mut idx in 0..n.pow(r as u32 + 1) {
            let xs: Vec<_> = (0..=r)
                .map(|_| {
                    let v = field.from_index(idx % n);
                    idx /= n;
                    v
                })
                .collect();
            let els: Vec<El> = xs.iter().map(|x| gf.el(x)).collect();
            // brute force: is there a nonzero F_q-relation?
            let combos = (fq.len() as u64).pow(r as u32 + 1);
            let dependent = (1..combos).any(|mut c| {
                let sum = els.iter().fold(gf.zero(), |acc, x| {
                    let coef = &fq[(c % fq.len() as u64) as usize];
                    c /= fq.len() as u64;
                    gf.add(&acc, &gf.mul(coef, x))
                });
                gf.is_zero(&sum)
            });
            let moore = is_fq_independent(&MooreInput::new(&field, xs).map_err(err)?);
            ensure!(moore == !dependent, "discrepancy for q={q}, m={m}, r={r}");
            tuples += 1;
        }
    }
    Ok(format!("{tuples} tuples, 0 discrepancies"))
}

#[test]
fn criterion_02_moore_independence() {
    run(
        2,
        "Moore invertibility iff F_q-independence",
        moore_independence,
    );
}

// ---------------------------------------------------------------------------
// Semilinear maps

/// Number of `v` in `F^n` with `A phi(v) = v`, by enumeration.
fn count_fixed(gf: &Gf, a: &Mat) -> u128 {
    let n = a.len();
    let order = gf.order();
    (0..order.pow(n as u32))
        .filter(|&idx| {
            let mut i = idx;
            let v: Vec<El> = (0..n)
                .map(|_| {
                    let x = gf.nth(i % order);
                    i /= order;
                    x
                })
                .collect();
            let fv: Vec<El> = v.iter().map(|x| gf.frob(x)).collect();
            gf.mat_vec(a, &fv) == v
        })
        .count() as u128
}

fn fixed_space_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut max_degree = 0;
    for i in 0..200 {
        let (sigma, _) = random_split_semilinear(&mut rng, &SMALL_FIELDS_9, 3, CAP);
        let field = sigma.field();
        let n = sigma.dim();
        ensure!(
            n <= 3 && field.order().unwrap() <= 9,
            "instance {i} out of range"
        );
        let gf = Gf::of(field);
        let a = gf.mat(sigma.matrix());
        let fixed = fixed_space(&sigma).map_err(err)?;
        ensure!(
            fixed.dim() <= n,
            "instance {i}: fixed space of dimension {} > {n}",
            fixed.dim()
        );
        let count = count_fixed(&gf, &a);
        ensure!(
            count == (field.q() as u128).pow(fixed.dim() as u32),
            "instance {i}: {count} fixed vectors but dimension {}",
            fixed.dim()
        );

        let d = descend_vector_space(&sigma, CAP).map_err(err)?;
        let emb = Embed::check(&field.embedding_into(&d.field).map_err(err)?);
        let big = &emb.big;
        let a_big = emb.mat(&a);
        let g = big.mat(&d.certificate);
        ensure!(
            d.dim == n && big.is_invertible(&g),
            "instance {i}: certificate is not invertible"
        );
        ensure!(
            big.mat_mul(&a_big, &big.mat_frob(&g)) == g,
            "instance {i}: A phi(G) != G"
        );
        max_degree = max_degree.max(d.field.degree());
    }
    Ok(format!(
        "200 instances, largest certificate field of degree {max_degree} over F_p"
    ))
}

#[test]
fn criterion_03_fixed_space_round_trip() {
    run(
        3,
        "fixed space and vector-space descent round trip",
        fixed_space_round_trip,
    );
}

fn splitting_degree_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut largest = 0;
    for i in 0..100 {
        let (sigma, _) = random_split_semilinear(&mut rng, &SMALL_FIELDS_9, 2, CAP);
        let field = sigma.field();
        let n = sigma.dim();
        let e = splitting_degree(&sigma, CAP).map_err(err)?;
        let k = field.q_exponent() as usize;
        // least extension with an n-dimensional fixed space, searched upward
        let mut found = None;
        for e2 in 1..=e {
            let (_, emb) = field.extend(e2, CAP).map_err(err)?;
            let emb = Embed::check(&emb);
            let big = &emb.big;
            let a = emb.mat(&emb.small.mat(sigma.matrix()));
            let kernel = big.fp_kernel_dim(n, |v| {
                let fv: Vec<El> = v.iter().map(|x| big.frob(x)).collect();
                big.mat_vec(&a, &fv)
                    .iter()
                    .zip(v)
                    .map(|(x, y)| big.sub(x, y))
                    .collect()
            });
            if kernel == n * k {
                found = Some(e2);
                break;
            }
        }
        ensure!(
            found == Some(e),
            "instance {i}: order gives {e}, search gives {found:?}"
        );
        largest = largest.max(e);
    }
    Ok(format!(
        "100 instances, 0 discrepancies, degrees up to {largest}"
    ))
}

#[test]
fn criterion_04_splitting_degree() {
    run(
        4,
        "splitting degree equals brute-force minimum",
        splitting_degree_formula,
    );
}

/// Targets `a in F_q^*` hit by `g -> g^(q-1)` on some `F_(q^e)^*`, `e <= 4`.
fn gl1_hits(q: u64) -> Result<(usize, usize), String> {
    let fq = Field::from_q(q, 1).map_err(err)?;
    let targets: Vec<_> = fq.elements().skip(1).collect();
    let mut hit = BTreeSet::new();
    for e in 1..=4 {
        let big = Field::from_q(q, e).map_err(err)?;
        let emb = Embed::check(&fq.embedding_into(&big).map_err(err)?);
        let gf = &emb.big;
        let images: BTreeSet<El> = gf
            .all()
            .skip(1)
            .map(|g| gf.pow(&g, q as u128 - 1))
            .collect();
        for (i, a) in targets.iter().enumerate() {
            if images.contains(&emb.el(&emb.small.el(a))) {
                hit.insert(i);
            }
        }
    }
    Ok((targets.len(), hit.len()))
}

/// Units `a + b eps` of `F_4[eps]/(eps^2)` hit by `g -> g^-1 phi(g)` with
/// `phi` the squaring map, searching `F_(4^e)[eps]` for `e <= 3`. For
/// `g = x + y eps` this is `x^(q-1) + (y^q x^-1 - y x^(q-2)) eps`.
fn dual_number_hits() -> Result<(usize, usize), String> {
    let f4 = Field::from_q(2, 2).map_err(err)?;
    let small = Gf::of(&f4);
    let targets: Vec<(El, El)> = small
        .all()
        .skip(1)
        .flat_map(|a| small.all().map(move |b| (a.clone(), b)))
        .collect();
    let mut hit = BTreeSet::new();
    for e in 1..=3 {
        let big = Field::from_q(2, 2 * e).map_err(err)?;
        let emb = Embed::check(&f4.embedding_into(&big).map_err(err)?);
        let gf = &emb.big;
        let q = 2u128;
        let mut images = BTreeSet::new();
        for x in gf.all().skip(1) {
            let xinv = gf.inv(&x);
            let re = gf.pow(&x, q - 1);
            for y in gf.all() {
                let eps = gf.sub(
                    &gf.mul(&gf.pow(&y, q), &xinv),
                    &gf.mul(&y, &gf.pow(&x, q - 2)),
                );
                images.insert((re.clone(), eps));
            }
        }
        for (i, (a, b)) in targets.iter().enumerate() {
            if images.contains(&(emb.el(a), emb.el(b))) {
                hit.insert(i);
            }
        }
    }
    Ok((targets.len(), hit.len()))
}

fn lang_equation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let (field, a, _) = random_lang_target(&mut rng, CAP);
        ensure!(
            a.rows() <= 3 && field.order().unwrap() <= 8,
            "instance {i} out of range"
        );
        let sol = lang_solve(&a, CAP).map_err(err)?;
        let emb = Embed::check(&field.embedding_into(sol.solution.field()).map_err(err)?);
        let big = &emb.big;
        let g = big.mat(&sol.solution);
        let a_big = emb.mat(&emb.small.mat(&a));
        // G^-1 phi(G) = A  <=>  phi(G) = G A with G invertible
        ensure!(big.is_invertible(&g), "instance {i}: G is singular");
        ensure!(
            big.mat_frob(&g) == big.mat_mul(&g, &a_big),
            "instance {i}: G^-1 phi(G) != A"
        );
    }
    let mut summary = Vec::new();
    for (q, m, ring, expected) in [
        (3u64, 1u32, CoefficientRing::Field, gl1_hits(3)?),
        (4, 1, CoefficientRing::Field, gl1_hits(4)?),
        (2, 2, CoefficientRing::DualNumbers, dual_number_hits()?),
    ] {
        let r = beta_surjectivity_report(q, m, 1, ring, CAP).map_err(err)?;
        let (targets, hit) = expected;
        ensure!(
            hit == targets,
            "brute force misses targets for q={q}, m={m}, {ring:?}"
        );
        ensure!(
            r.all_hit && r.targets == targets && r.hit == hit,
            "report {}/{} vs brute force {hit}/{targets} for q={q}, m={m}, {ring:?}",
            r.hit,
            r.targets
        );
        summary.push(format!("{hit}/{targets}"));
    }
    Ok(format!(
        "100 solutions verified; targets hit {}",
        summary.join(", ")
    ))
}

#[test]
fn criterion_05_lang_equation() {
    run(
        5,
        "Lang equation solutions and surjectivity of beta",
        lang_equation,
    );
}

// ---------------------------------------------------------------------------
// Equivariant modules

/// `rho(e_i) rho(e_j) = sum_k c_ijk rho(e_k)` and `sum_i u_i rho(e_i) = 1`,
/// with the algebra's constants embedded by `emb`.
fn is_representation(emb: &Embed, alg: &FinAlgebra, rho: &[Mat]) -> bool {
    let gf = &emb.big;
    let fq = &emb.small;
    let n = rho.first().map_or(0, Vec::len);
    let combo = |coeffs: &[frobenius_descent::field::FieldElement]| -> Mat {
        let mut acc = vec![vec![gf.zero(); n]; n];
        for (c, r) in coeffs.iter().zip(rho) {
            let c = emb.el(&fq.el(c));
            for (arow, rrow) in acc.iter_mut().zip(r) {
                for (x, y) in arow.iter_mut().zip(rrow) {
                    *x = gf.add(x, &gf.mul(&c, y));
                }
            }
        }
        acc
    };
    let consts = alg.constants();
    (0..rho.len())
        .all(|i| (0..rho.len()).all(|j| gf.mat_mul(&rho[i], &rho[j]) == combo(&consts[i][j])))
        && combo(alg.unit()) == gf.identity(n)
}

fn module_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..100 {
        let (module, _) = random_module(&mut rng, CAP);
        let alg = module.algebra();
        ensure!(
            alg.dim() <= 3 && module.dim() <= 4 && module.field().order().unwrap() <= 8,
            "instance {i} out of range"
        );
        let field = module.field();
        let over_field = Embed::check(&alg.field().embedding_into(field).map_err(err)?);
        let gf = &over_field.big;
        let rho: Vec<Mat> = module.action().iter().map(|r| gf.mat(r)).collect();
        let a = gf.mat(module.sigma().matrix());
        ensure!(
            is_representation(&over_field, alg, &rho),
            "instance {i}: not an A-module"
        );
        ensure!(
            rho.iter()
                .all(|r| gf.mat_mul(&a, &gf.mat_frob(r)) == gf.mat_mul(r, &a)),
            "instance {i}: sigma is not A-linear"
        );

        let d = descend_module(&module, CAP).map_err(err)?;
        let up = Embed::check(&field.embedding_into(&d.field).map_err(err)?);
        let rational = Embed::check(&alg.field().embedding_into(&d.field).map_err(err)?);
        let big = &up.big;
        let g = big.mat(&d.certificate);
        let a_big = up.mat(&a);
        ensure!(
            big.is_invertible(&g),
            "instance {i}: certificate is singular"
        );
        ensure!(
            big.mat_mul(&a_big, &big.mat_frob(&g)) == g,
            "instance {i}: A phi(G) != G"
        );
        let descended: Vec<Mat> = d.action.iter().map(|r| rational.small.mat(r)).collect();
        let fq_self = Embed::check(&alg.field().embedding_into(alg.field()).map_err(err)?);
        ensure!(
            is_representation(&fq_self, alg, &descended),
            "instance {i}: descended action is not a module"
        );
        for (r, s) in rho.iter().zip(&descended) {
            ensure!(
                big.mat_mul(&up.mat(r), &g) == big.mat_mul(&g, &rational.mat(s)),
                "instance {i}: G does not intertwine the actions"
            );
        }
    }
    Ok("100 modules descended; certificates are equivariant isomorphisms".into())
}

#[test]
fn criterion_06_module_round_trip() {
    run(
        6,
        "equivariant module descent round trip",
        module_round_trip,
    );
}

/// The conditions on `H` (`nn x nm`) for an `A`-linear map, plus
/// `H A_M = A_N phi(H)` when `sigmas` is given; zero iff all hold.
fn hom_conditions(
    gf: &Gf,
    rho_m: &[Mat],
    rho_n: &[Mat],
    sigmas: Option<(&Mat, &Mat)>,
    h: &Mat,
) -> Vec<El> {
    let mut out = Vec::new();
    for (rm, rn) in rho_m.iter().zip(rho_n) {
        let lhs = gf.mat_mul(h, rm);
        let rhs = gf.mat_mul(rn, h);
        out.extend(
            lhs.concat()
                .iter()
                .zip(rhs.concat())
                .map(|(x, y)| gf.sub(x, &y)),
        );
    }
    if let Some((am, an)) = sigmas {
        let lhs = gf.mat_mul(h, am);
        let rhs = gf.mat_mul(an, &gf.mat_frob(h));
        out.extend(
            lhs.concat()
                .iter()
                .zip(rhs.concat())
                .map(|(x, y)| gf.sub(x, &y)),
        );
    }
    out
}

fn unflatten(v: &[El], rows: usize, cols: usize) -> Mat {
    (0..rows)
        .map(|r| v[r * cols..(r + 1) * cols].to_vec())
        .collect()
}

/// `F_q`-dimension of the hom space, from the `F_p`-kernel of the conditions.
fn hom_dimension(gf: &Gf, rho_m: &[Mat], rho_n: &[Mat], sigmas: Option<(&Mat, &Mat)>) -> usize {
    let (nm, nn) = (rho_m[0].len(), rho_n[0].len());
    let kernel = gf.fp_kernel_dim(nm * nn, |v| {
        hom_conditions(gf, rho_m, rho_n, sigmas, &unflatten(v, nn, nm))
    });
    kernel / gf.k as usize
}

/// Actions and twists of both modules over `field`, via checked embeddings.
fn extended(
    m: &EquivariantModule,
    n: &EquivariantModule,
    field: &Field,
) -> Result<(Gf, [Vec<Mat>; 2], [Mat; 2]), String> {
    let emb = Embed::check(&m.field().embedding_into(field).map_err(err)?);
    let lift = |x: &MatrixF| emb.mat(&emb.small.mat(x));
    let rho = [
        m.action().iter().map(&lift).collect(),
        n.action().iter().map(&lift).collect(),
    ];
    let sig = [lift(m.sigma().matrix()), lift(n.sigma().matrix())];
    Ok((emb.big.clone(), rho, sig))
}

fn every_matrix(gf: &Gf, rows: usize, cols: usize) -> impl Iterator<Item = Mat> + '_ {
    let order = gf.order();
    (0..order.pow((rows * cols) as u32)).map(move |mut idx| {
        let v: Vec<El> = (0..rows * cols)
            .map(|_| {
                let x = gf.nth(idx % order);
                idx /= order;
                x
            })
            .collect();
        unflatten(&v, rows, cols)
    })
}

fn fq_span(gf: &Gf, basis: &[Mat]) -> BTreeSet<Mat> {
    let fq = gf.fq_elements();
    let len = fq.len() as u64;
    let (rows, cols) = basis.first().map_or((0, 0), |b| (b.len(), b[0].len()));
    (0..len.pow(basis.len() as u32))
        .map(|mut c| {
            let mut acc = vec![vec![gf.zero(); cols]; rows];
            for b in basis {
                let coef = &fq[(c % len) as usize];
                c /= len;
                for (arow, brow) in acc.iter_mut().zip(b) {
                    for (x, y) in arow.iter_mut().zip(brow) {
                        *x = gf.add(x, &gf.mul(coef, y));
                    }
                }
            }
            acc
        })
        .collect()
}

fn fully_faithful() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total = 0;
    for i in 0..100 {
        let (m, n) = random_module_pair(&mut rng, CAP);
        let eq = hom_space(&m, &n, HomMode::Equivariant, CAP).map_err(err)?;
        let (dm, dn) = (
            descend_module(&m, CAP).map_err(err)?,
            descend_module(&n, CAP).map_err(err)?,
        );
        let descended = dm.hom_basis(&dn).map_err(err)?;
        ensure!(
            eq.dim() == descended.len(),
            "pair {i}: {} vs {}",
            eq.dim(),
            descended.len()
        );

        let (gf, [rm, rn], [am, an]) = extended(&m, &n, &eq.field)?;
        let brute_eq = hom_dimension(&gf, &rm, &rn, Some((&am, &an)));
        let fq = Gf::of(m.algebra().field());
        let dm_act: Vec<Mat> = dm.action.iter().map(|r| fq.mat(r)).collect();
        let dn_act: Vec<Mat> = dn.action.iter().map(|r| fq.mat(r)).collect();
        let brute_desc = hom_dimension(&fq, &dm_act, &dn_act, None);
        ensure!(
            brute_eq == eq.dim() && brute_desc == descended.len(),
            "pair {i}: brute-force dimensions {brute_eq}/{brute_desc}, solved {}/{}",
            eq.dim(),
            descended.len()
        );
        let basis: Vec<Mat> = eq.basis.iter().map(|h| gf.mat(h)).collect();
        ensure!(
            basis
                .iter()
                .all(|h| hom_conditions(&gf, &rm, &rn, Some((&am, &an)), h)
                    .iter()
                    .all(|x| gf.is_zero(x))),
            "pair {i}: a solved basis element is not equivariant"
        );
        let flat: Vec<Vec<El>> = basis.iter().map(|h| h.concat()).collect();
        ensure!(
            flat.is_empty() || gf.rank(&flat) == flat.len(),
            "pair {i}: solved basis is dependent"
        );
        total += eq.dim();
    }

    let mut exhaustive = 0;
    let mut tries = 0;
    while exhaustive < 20 {
        tries += 1;
        ensure!(tries < 1000, "too few small pairs");
        let (m, n) = random_small_pair(&mut rng, CAP);
        ensure!(
            m.field().q() == 2 && m.dim() + n.dim() <= 4,
            "small pair out of range"
        );
        let eq = hom_space(&m, &n, HomMode::Equivariant, CAP).map_err(err)?;
        let (gf, [rm, rn], [am, an]) = extended(&m, &n, &eq.field)?;
        let (nm, nn) = (m.dim(), n.dim());
        if gf
            .order()
            .checked_pow((nm * nn) as u32)
            .is_none_or(|c| c > 1 << 18)
        {
            continue;
        }
        let brute: BTreeSet<Mat> = every_matrix(&gf, nn, nm)
            .filter(|h| {
                hom_conditions(&gf, &rm, &rn, Some((&am, &an)), h)
                    .iter()
                    .all(|x| gf.is_zero(x))
            })
            .collect();
        let basis: Vec<Mat> = eq.basis.iter().map(|h| gf.mat(h)).collect();
        ensure!(
            brute == fq_span(&gf, &basis),
            "equivariant homs differ from the solved span"
        );

        let (dm, dn) = (
            descend_module(&m, CAP).map_err(err)?,
            descend_module(&n, CAP).map_err(err)?,
        );
        let fq = Gf::of(m.algebra().field());
        let dm_act: Vec<Mat> = dm.action.iter().map(|r| fq.mat(r)).collect();
        let dn_act: Vec<Mat> = dn.action.iter().map(|r| fq.mat(r)).collect();
        let brute: BTreeSet<Mat> = every_matrix(&fq, nn, nm)
            .filter(|h| {
                hom_conditions(&fq, &dm_act, &dn_act, None, h)
                    .iter()
                    .all(|x| fq.is_zero(x))
            })
            .collect();
        let solved: Vec<Mat> = dm
            .hom_basis(&dn)
            .map_err(err)?
            .iter()
            .map(|h| fq.mat(h))
            .collect();
        ensure!(
            brute == fq_span(&fq, &solved),
            "descended homs differ from the solved span"
        );
        exhaustive += 1;
    }
    Ok(format!(
        "100 pairs, total hom dimension {total}; 20 pairs over F_2 enumerated exhaustively"
    ))
}

#[test]
fn criterion_07_fully_faithful() {
    run(7, "equivariant homs match descended homs", fully_faithful);
}

// ---------------------------------------------------------------------------
// Ideals

fn ideal_descent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fixtures = stable_ideal_fixtures(&mut rng);
    let mut fields = BTreeSet::new();
    for (i, ideal) in fixtures.iter().enumerate() {
        ensure!(
            ideal.nvars() <= 3 && ideal.max_degree() == 4,
            "fixture {i} out of range"
        );
        fields.insert(ideal.field().order().unwrap());
        let j = graded_ideal_descent(ideal).map_err(err)?;
        let emb = Embed::check(&j.field().embedding_into(ideal.field()).map_err(err)?);
        let gf = &emb.big;
        ensure!(
            j.field().m() == 1,
            "fixture {i}: descended ideal is not over F_q"
        );
        for d in 0..=ideal.max_degree() {
            let rows_i: Vec<Vec<El>> = ideal
                .component_rows(d)
                .iter()
                .map(|r| r.iter().map(|x| gf.el(x)).collect())
                .collect();
            let rows_j: Vec<Vec<El>> = j
                .component_rows(d)
                .iter()
                .map(|r| r.iter().map(|x| emb.el(&emb.small.el(x))).collect())
                .collect();
            ensure!(
                rows_j.iter().flatten().all(|x| gf.in_fq(x)),
                "fixture {i}: coefficient outside F_q"
            );
            let union: Vec<Vec<El>> = rows_i.iter().chain(&rows_j).cloned().collect();
            let (ri, rj, ru) = (gf.rank(&rows_i), gf.rank(&rows_j), gf.rank(&union));
            ensure!(
                ri == rj && rj == ru && rj == rows_j.len(),
                "fixture {i}, degree {d}: ranks I={ri}, J={rj}, I+J={ru}"
            );
        }
    }
    ensure!(
        fields == BTreeSet::from([4, 9]),
        "fixtures cover fields {fields:?}"
    );

    let f8 = Field::new(2, 1, 3).map_err(err)?;
    let emb = Embed::check(&f8.base_field().embedding_into(&f8).map_err(err)?);
    let gf = &emb.big;
    for t in 0..100 {
        let f = random_poly(&mut rng, &f8);
        let parts = element_descent(&f).map_err(err)?;
        let mut monomials: BTreeSet<Vec<u32>> = f.terms().map(|(e, _)| e.clone()).collect();
        for a in &parts {
            monomials.extend(a.terms().map(|(e, _)| e.clone()));
        }
        let coeffs =
            |p: &PolynomialF,
             lift: &dyn Fn(&frobenius_descent::field::FieldElement) -> El|
             -> Vec<El> { monomials.iter().map(|e| lift(&p.coefficient(e))).collect() };
        let base = coeffs(&f, &|x| gf.el(x));
        let mut orbit = vec![base];
        for _ in 1..3 {
            let next = orbit.last().unwrap().iter().map(|x| gf.frob(x)).collect();
            orbit.push(next);
        }
        let lifted: Vec<Vec<El>> = parts
            .iter()
            .map(|a| coeffs(a, &|x| emb.el(&emb.small.el(x))))
            .collect();
        ensure!(
            lifted.iter().flatten().all(|x| gf.in_fq(x)),
            "polynomial {t}: coefficient outside F_q"
        );
        let union: Vec<Vec<El>> = orbit.iter().chain(&lifted).cloned().collect();
        let (ro, rl, ru) = (gf.rank(&orbit), gf.rank(&lifted), gf.rank(&union));
        ensure!(
            ro == rl && rl == ru,
            "polynomial {t}: ranks orbit={ro}, parts={rl}, union={ru}"
        );
    }
    Ok(format!(
        "{} stable ideals over F_4 and F_9, 100 random polynomials over F_8",
        fixtures.len()
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, field: &Field) -> PolynomialF {
    let order = field.order().unwrap();
    (0..rng.gen_range(1..=5)).fold(PolynomialF::zero(field, 2), |acc, _| {
        let e = vec![rng.gen_range(0..=3), rng.gen_range(0..=3)];
        acc.add(&PolynomialF::monomial(
            field,
            e,
            field.from_index(rng.gen_range(0..order)),
        ))
    })
}

#[test]
fn criterion_08_ideal_descent() {
    run(8, "graded ideal and element descent", ideal_descent);
}

// ---------------------------------------------------------------------------
// Units of the Laurent polynomial ring

fn picard() -> Outcome {
    let mut summary = Vec::new();
    for (q, m) in [(2u64, 2u32), (3, 2), (3, 3), (5, 2)] {
        let c = picard_cokernel(q, m).map_err(err)?;
        let field = c.generator.field().clone();
        let gf = Gf::of(&field);
        let mut image = BTreeSet::new();
        for lambda in gf.all().skip(1) {
            // lambda^(1-q) = lambda / lambda^q
            image.insert(gf.mul(&lambda, &gf.inv(&gf.frob(&lambda))));
        }
        let group = gf.order() as u64 - 1;
        ensure!(
            group.is_multiple_of(image.len() as u64),
            "image is not a subgroup for q={q}, m={m}"
        );
        let torsion = group / image.len() as u64;
        ensure!(
            torsion == q - 1,
            "brute force gives torsion {torsion} for q={q}, m={m}"
        );
        ensure!(
            c.torsion_order == torsion && c.image_size == image.len() as u64 && c.free_rank == 1,
            "report ({}, {}, rank {}) vs brute force ({torsion}, {}) for q={q}, m={m}",
            c.torsion_order,
            c.image_size,
            c.free_rank,
            image.len()
        );
        // every coboundary has degree 0, so x is never one
        for lambda in field.elements().skip(1) {
            for t in -2..=2 {
                let b = coboundary(&LaurentUnit::new(lambda.clone(), t).map_err(err)?);
                ensure!(b.t() == 0, "coboundary of degree {}", b.t());
                ensure!(
                    image.contains(&gf.el(b.lambda())),
                    "coboundary outside the brute-force image"
                );
            }
        }
        ensure!(
            c.x_class_nontrivial,
            "x reported as a coboundary for q={q}, m={m}"
        );
        // the torsion representatives lie in distinct cosets of the image
        let reps: Vec<El> = c.representatives[..c.torsion_order as usize]
            .iter()
            .map(|u| gf.el(u.lambda()))
            .collect();
        for (a, x) in reps.iter().enumerate() {
            for y in &reps[a + 1..] {
                ensure!(
                    !image.contains(&gf.mul(x, &gf.inv(y))),
                    "two representatives share a class"
                );
            }
        }
        summary.push(format!("Z/{torsion}+Z"));
    }
    Ok(format!("cokernels {}", summary.join(", ")))
}

#[test]
fn criterion_09_unit_cokernel() {
    run(9, "coboundary cokernel on Laurent units", picard);
}

fn power_map() -> Outcome {
    let mut cases = 0;
    for q in [3u64, 4, 5] {
        for m in 1..=3 {
            let r = mu_power_demo(q, m).map_err(err)?;
            let gf = Gf::of(r.roots[0].field());
            let roots: BTreeSet<El> = gf
                .all()
                .skip(1)
                .filter(|x| gf.pow(x, q as u128 - 1) == gf.one())
                .collect();
            let image: BTreeSet<El> = roots.iter().map(|x| gf.pow(x, q as u128 - 1)).collect();
            ensure!(
                image == BTreeSet::from([gf.one()]),
                "brute-force image is not {{1}}"
            );
            let reported: BTreeSet<El> = r.roots.iter().map(|x| gf.el(x)).collect();
            ensure!(reported == roots, "roots differ for q={q}, m={m}");
            let reported: Vec<El> = r.image.iter().map(|x| gf.el(x)).collect();
            ensure!(
                reported == vec![gf.one()] && !r.surjective,
                "report claims a larger image for q={q}, m={m}"
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, image {{1}} each time"))
}

#[test]
fn criterion_10_power_map() {
    run(10, "(q-1)-power map on roots of unity", power_map);
}

// ---------------------------------------------------------------------------
// Infrastructure

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut kinds = BTreeSet::new();
    for i in 0..500 {
        let doc = frobenius_descent::selftest::instances::random_document(&mut rng, CAP);
        let text = doc.print();
        let parsed = Document::parse(&text).map_err(err)?;
        ensure!(parsed == doc, "document {i} changed on a round trip");
        ensure!(parsed.print() == text, "document {i} printed differently");
        // plain JSON, tagged with its type, one document per text
        let value: serde_json::Value = serde_json::from_str(&text).map_err(err)?;
        ensure!(
            value["type"] == doc.type_name(),
            "document {i} has the wrong type tag"
        );
        ensure!(
            text.ends_with("}\n"),
            "document {i} lacks the trailing newline"
        );
        kinds.insert(doc.type_name());
    }

    let exe = env!("CARGO_BIN_EXE_frobdesc");
    let runs: Vec<_> = (0..2)
        .map(|_| Command::new(exe).args(["selftest", "--seed", "0"]).output())
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure!(
        runs.iter().all(|o| o.status.success()),
        "selftest did not pass"
    );
    ensure!(
        runs[0].stdout == runs[1].stdout,
        "selftest output differs between runs"
    );
    ensure!(!runs[0].stdout.is_empty(), "selftest printed nothing");
    Ok(format!(
        "500 documents of {} types; selftest --seed 0 byte-identical twice",
        kinds.len()
    ))
}

#[test]
fn criterion_11_infrastructure() {
    run(
        11,
        "document round trip and deterministic self-test",
        infrastructure,
    );
}
