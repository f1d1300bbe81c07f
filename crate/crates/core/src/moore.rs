//! Moore matrices `(mu_j^(q^i))`, the factorization of the Moore
//! determinant into `F_q`-rational linear forms, and the resulting test for
//! `F_q`-linear independence.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::MatrixF;
use crate::poly::PolynomialF;

/// Elements `mu_0, ..., mu_r` of one field; `q` is read off the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreInput {
    field: Field,
    elements: Vec<FieldElement>,
}

impl MooreInput {
    pub fn new(field: &Field, elements: Vec<FieldElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidArgument(
                "a Moore matrix needs at least one element".into(),
            ));
        }
        if elements.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(MooreInput {
            field: field.clone(),
            elements,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }
}

/// Square matrix with entry `(i, j) = mu_j^(q^i)`.
pub fn moore_matrix(input: &MooreInput) -> MatrixF {
    let n = input.elements.len();
    let mut rows = Vec::with_capacity(n);
    let mut cur = input.elements.clone();
    for _ in 0..n {
        let next = cur.iter().map(|x| x.frobenius(1)).collect();
        rows.push(std::mem::replace(&mut cur, next));
    }
    MatrixF::from_rows(&input.field, rows).expect("square by construction")
}

/// `F_q`-independence via invertibility of the Moore matrix.
pub fn is_fq_independent(input: &MooreInput) -> bool {
    !moore_matrix(input).determinant().is_zero()
}

/// Representatives of `P^r(F_q)` whose first nonzero coordinate is 1, in
/// index order.
pub fn projective_points(fq: &Field, r: usize) -> Vec<Vec<FieldElement>> {
    let q = fq.order().expect("small field");
    let total = q.pow(r as u32 + 1);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut v = Vec::with_capacity(r + 1);
        let mut rest = idx;
        for _ in 0..=r {
            v.push(fq.from_index(rest % q));
            rest /= q;
        }
        if v.iter()
            .find(|x| !x.is_zero())
            .is_some_and(FieldElement::is_one)
        {
            out.push(v);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; the boolean is the parity (true = odd)
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    out.push((a.clone(), odd));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Result of the symbolic Moore identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreIdentity {
    pub q: u64,
    pub r: usize,
    /// The scalar with `det = omega * product`, in `F_q^*`.
    pub omega: FieldElement,
    pub determinant: PolynomialF,
    pub product: PolynomialF,
}

/// Symbolic Moore determinant of `x_0, ..., x_r` over `F_q`.
pub fn symbolic_moore_determinant(fq: &Field, r: usize) -> PolynomialF {
    let nvars = r + 1;
    let q = fq.q();
    let powers: Vec<u32> = (0..nvars).map(|i| q.pow(i as u32) as u32).collect();
    let mut det = PolynomialF::zero(fq, nvars);
    for (perm, odd) in permutations(nvars) {
        // row i uses column perm[i]: x_{perm[i]}^{q^i}
        let mut e = vec![0u32; nvars];
        for (i, &j) in perm.iter().enumerate() {
            e[j] += powers[i];
        }
        let sign = if odd { fq.from_int(-1) } else { fq.one() };
        det = det.add(&PolynomialF::monomial(fq, e, sign));
    }
    det
}

/// Product of the linear forms `a_0 x_0 + ... + a_r x_r` over all
/// normalized representatives of `P^r(F_q)`.
pub fn projective_linear_form_product(fq: &Field, r: usize) -> PolynomialF {
    let nvars = r + 1;
    let mut prod = PolynomialF::constant(fq, nvars, fq.one());
    for a in projective_points(fq, r) {
        let form = a
            .iter()
            .enumerate()
            .fold(PolynomialF::zero(fq, nvars), |acc, (j, c)| {
                acc.add(&PolynomialF::var(fq, nvars, j).scale(c))
            });
        prod = prod.mul(&form);
    }
    prod
}

/// Expands both sides of the Moore determinant identity over `F_q` and
/// returns `omega`. Requires `q <= 4` and `r <= 2`.
pub fn moore_identity_check(q: u64, r: usize) -> Result<MooreIdentity> {
    if q > 4 || r > 2 {
        return Err(Error::InvalidArgument(format!(
            "symbolic expansion is limited to q <= 4 and r <= 2 (got q = {q}, r = {r})"
        )));
    }
    let fq = Field::from_q(q, 1)?;
    let determinant = symbolic_moore_determinant(&fq, r);
    let product = projective_linear_form_product(&fq, r);
    let violated = || Error::IdentityViolated { q, r };
    let (e, c) = product.terms().next().ok_or_else(violated)?;
    let omega = &determinant.coefficient(e) * &c.inv().ok_or_else(violated)?;
    if omega.is_zero() || product.scale(&omega) != determinant {
        return Err(violated());
    }
    Ok(MooreIdentity {
        q,
        r,
        omega,
        determinant,
        product,
    })
}

/// Checks `det(Moore(x)) = omega * prod L_a(x)` at `samples` random points
/// of `F_{q^m}^(r+1)`, with `omega` taken from the symbolic check. Returns
/// the number of points at which the product is nonzero.
pub fn moore_identity_sampled<R: Rng>(
    q: u64,
    r: usize,
    m: u32,
    samples: usize,
    rng: &mut R,
) -> Result<usize> {
    let identity = moore_identity_check(q, r)?;
    let fq = identity.omega.field().clone();
    let big = Field::from_q(q, m)?;
    let emb = fq.embedding_into(&big)?;
    let omega = emb.apply(&identity.omega);
    let points = projective_points(&fq, r);
    let order = big.order().expect("small field");
    let mut nonzero = 0;
    for _ in 0..samples {
        let x: Vec<FieldElement> = (0..=r)
            .map(|_| big.from_index(rng.gen_range(0..order)))
            .collect();
        let det = moore_matrix(&MooreInput::new(&big, x.clone())?).determinant();
        let prod = points.iter().fold(big.one(), |acc, a| {
            let form = a
                .iter()
                .zip(&x)
                .fold(big.zero(), |s, (c, xi)| &s + &(&emb.apply(c) * xi));
            &acc * &form
        });
        if det != &omega * &prod {
            return Err(Error::IdentityViolated { q, r });
        }
        if !prod.is_zero() {
            nonzero += 1;
        }
    }
    Ok(nonzero)
}
