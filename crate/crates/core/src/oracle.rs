//! Brute-force reference computations, used by the self-test to check the
//! structured algorithms on instances small enough to enumerate.

use crate::field::{DegreeCap, Field, FieldElement};
use crate::matrix::MatrixF;
use crate::semilinear::SemilinearEndo;

/// Largest search space the oracles will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 18;

fn count_pow(base: u128, exp: usize) -> Option<u128> {
    base.checked_pow(exp as u32)
        .filter(|&n| n <= BRUTE_FORCE_LIMIT)
}

/// All vectors of `F^n` in index order (first coordinate fastest).
fn vectors(field: &Field, n: usize) -> Option<impl Iterator<Item = Vec<FieldElement>> + '_> {
    let order = field.order()?;
    let total = count_pow(order, n)?;
    Some((0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let x = field.from_index(idx % order);
                idx /= order;
                x
            })
            .collect()
    }))
}

/// `F_q`-independence by trying every nonzero coefficient vector.
pub fn independent_by_enumeration(elements: &[FieldElement]) -> Option<bool> {
    let field = elements.first()?.field().clone();
    let fq = field.base_field();
    let emb = fq.embedding_into(&field).ok()?;
    let mut all = vectors(&fq, elements.len())?;
    all.next(); // the zero vector
    let dependent = all.any(|c| {
        c.iter()
            .zip(elements)
            .fold(field.zero(), |acc, (ci, x)| &acc + &(&emb.apply(ci) * x))
            .is_zero()
    });
    Some(!dependent)
}

/// Number of fixed vectors of `sigma`, by enumeration when small enough.
pub fn count_fixed_vectors(sigma: &SemilinearEndo) -> Option<u128> {
    let all = vectors(sigma.field(), sigma.dim())?;
    Some(all.filter(|v| sigma.apply(v) == *v).count() as u128)
}

/// Least `e` for which `sigma` has `q^n` fixed vectors over `F_{q^(me)}`,
/// found by extending one degree at a time. Fixed vectors are counted by
/// enumeration where possible and otherwise read off the dimension of an
/// `F_p`-kernel computed directly from the definition.
pub fn min_split_degree(sigma: &SemilinearEndo, cap: DegreeCap) -> Option<u32> {
    let n = sigma.dim();
    let base_deg = sigma.field().degree();
    let q = sigma.field().q() as u128;
    for e in 1.. {
        if base_deg * e as usize > cap.0 {
            return None;
        }
        let (big, emb) = sigma.field().extend(e, cap).ok()?;
        let ext = SemilinearEndo::new(sigma.matrix().embed(&emb), sigma.twist()).ok()?;
        let full = match count_fixed_vectors(&ext) {
            Some(count) => Some(count) == q.checked_pow(n as u32),
            None => fp_fixed_dimension(&big, &ext) == n * big.q_exponent() as usize,
        };
        if full {
            return Some(e);
        }
    }
    None
}

/// `dim_{F_p}` of `{v : sigma(v) = v}` via an explicit `F_p`-matrix.
fn fp_fixed_dimension(field: &Field, sigma: &SemilinearEndo) -> usize {
    use crate::field::FpMatrix;
    let n = sigma.dim();
    let deg = field.degree();
    let mut columns = Vec::with_capacity(n * deg);
    for slot in 0..n {
        for j in 0..deg {
            let mut c = vec![0u32; deg];
            c[j] = 1;
            let mut v = vec![field.zero(); n];
            v[slot] = field.element(&c).expect("unit vector");
            let image = sigma.apply(&v);
            columns.push(
                image
                    .iter()
                    .zip(&v)
                    .flat_map(|(a, b)| (a - b).coords().to_vec())
                    .collect::<Vec<u32>>(),
            );
        }
    }
    let m = FpMatrix::from_columns(field.p(), n * deg, &columns);
    n * deg - m.rank()
}

/// All `nn x nm` matrices `H` over `field` with `H rho_M(a) = rho_N(a) H`
/// for every `a` and, when given, `H A_M = A_N phi(H)`.
pub fn homs_by_enumeration(
    field: &Field,
    rho_m: &[MatrixF],
    rho_n: &[MatrixF],
    sigmas: Option<(&MatrixF, &MatrixF)>,
) -> Option<Vec<MatrixF>> {
    let nm = rho_m.first().map_or(0, MatrixF::rows);
    let nn = rho_n.first().map_or(0, MatrixF::rows);
    let all = vectors(field, nm * nn)?;
    Some(
        all.map(|v| MatrixF::from_fn(field, nn, nm, |r, c| v[r * nm + c].clone()))
            .filter(|h| {
                rho_m.iter().zip(rho_n).all(|(a, b)| h.mul(a) == b.mul(h))
                    && sigmas.is_none_or(|(am, an)| h.mul(am) == an.mul(&h.frobenius(1)))
            })
            .collect(),
    )
}

/// Every `F_q`-linear combination of `basis` (entries over `field`).
pub fn fq_span(field: &Field, basis: &[MatrixF]) -> Option<Vec<MatrixF>> {
    let fq = field.base_field();
    let emb = fq.embedding_into(field).ok()?;
    let (rows, cols) = basis.first().map_or((0, 0), |b| (b.rows(), b.cols()));
    let combos = vectors(&fq, basis.len())?;
    Some(
        combos
            .map(|c| {
                c.iter()
                    .zip(basis)
                    .fold(MatrixF::zeros(field, rows, cols), |acc, (ci, b)| {
                        acc.add(&b.scale(&emb.apply(ci)))
                    })
            })
            .collect(),
    )
}
