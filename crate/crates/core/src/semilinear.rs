//! Frobenius-semilinear automorphisms `v -> A phi^s(v)` of `F_{q^m}^n`.
//!
//! The fixed vectors of such a map form an `F_q`-space `V^sigma` with
//! `dim V^sigma <= n`. Over `F_{q^(me)}` the fixed vectors span `V` exactly
//! when the `me`-fold iterate, the linear map `T^e` with
//! `T = A phi(A) ... phi^(m-1)(A)`, is the identity; so the least such `e`
//! is the multiplicative order of `T`. Solving Lang's equation
//! `G^-1 phi(G) = A` reduces to the same fixed-space computation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{DegreeCap, EmbeddingMap, Field, FieldElement};
use crate::kernel::{fp_affine_solve, fp_kernel, fq_basis_from_span};
use crate::matrix::MatrixF;

/// `sigma(v) = A * phi^twist(v)` on `field^n`, `A` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearEndo {
    matrix: MatrixF,
    twist: u32,
}

impl SemilinearEndo {
    pub fn new(matrix: MatrixF, twist: u32) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument(
                "semilinear map needs a square matrix".into(),
            ));
        }
        if twist == 0 {
            return Err(Error::InvalidArgument("twist must be at least 1".into()));
        }
        if matrix.determinant().is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(SemilinearEndo { matrix, twist })
    }

    /// `A * phi`.
    pub fn with_matrix(matrix: MatrixF) -> Result<Self> {
        Self::new(matrix, 1)
    }

    /// The standard Frobenius on `field^n`.
    pub fn standard(field: &Field, n: usize) -> Self {
        SemilinearEndo {
            matrix: MatrixF::identity(field, n),
            twist: 1,
        }
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &MatrixF {
        &self.matrix
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let twisted: Vec<_> = v.iter().map(|x| x.frobenius(self.twist as i64)).collect();
        self.matrix.mul_vec(&twisted)
    }

    /// `sigma` applied column by column: `A phi^s(G)`.
    pub fn apply_matrix(&self, g: &MatrixF) -> MatrixF {
        self.matrix.mul(&g.frobenius(self.twist as i64))
    }

    /// `sigma (+) tau` on `V (+) W`.
    pub fn direct_sum(&self, other: &SemilinearEndo) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.twist != other.twist {
            return Err(Error::InvalidArgument("twists differ".into()));
        }
        Ok(SemilinearEndo {
            matrix: self.matrix.direct_sum(&other.matrix),
            twist: self.twist,
        })
    }

    /// The linear map `sigma^m = A phi(A) ... phi^(m-1)(A)` (for twist 1).
    pub fn linear_iterate(&self) -> MatrixF {
        let m = self.field().m();
        let mut t = MatrixF::identity(self.field(), self.dim());
        for i in 0..m {
            t = t.mul(&self.matrix.frobenius(i as i64));
        }
        t
    }

    fn require_twist_one(&self) -> Result<()> {
        if self.twist != 1 {
            return Err(Error::InvalidArgument(
                "operation requires twist 1; regard q^s as the base field instead".into(),
            ));
        }
        Ok(())
    }
}

/// An `F_q`-basis of `V^sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSpace {
    pub parent: SemilinearEndo,
    pub basis: Vec<Vec<FieldElement>>,
}

impl FixedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `{v : A phi(v) = v}` as an `F_q`-basis.
pub fn fixed_space(sigma: &SemilinearEndo) -> Result<FixedSpace> {
    sigma.require_twist_one()?;
    let field = sigma.field();
    let n = sigma.dim();
    let span = fp_kernel(field, n, |v| {
        let s = sigma.apply(v);
        s.iter().zip(v).map(|(a, b)| a - b).collect()
    });
    let basis = fq_basis_from_span(field, &span);
    debug_assert!(basis.iter().all(|v| sigma.apply(v) == *v));
    Ok(FixedSpace {
        parent: sigma.clone(),
        basis,
    })
}

/// Least `e` such that `sigma` has a full fixed space over `F_{q^(me)}`:
/// the order of `sigma^m` in `GL_n(F_{q^m})`.
pub fn splitting_degree(sigma: &SemilinearEndo, cap: DegreeCap) -> Result<u32> {
    sigma.require_twist_one()?;
    let t = sigma.linear_iterate();
    let deg = sigma.field().degree();
    let max_e = (cap.0 / deg) as u64;
    if let Some(e) = t.order_up_to(max_e.max(1)) {
        if deg as u64 * e <= cap.0 as u64 {
            return Ok(e as u32);
        }
    }
    // report the degree actually needed when it is cheap to find
    let needed = t
        .order_up_to(1 << 16)
        .map_or(usize::MAX, |e| e as usize * deg);
    Err(Error::CapacityExceeded {
        degree: needed,
        cap: cap.0,
    })
}

/// The same matrix read over `F_{q^(me)}`.
pub fn extend_scalars(sigma: &SemilinearEndo, e: u32, cap: DegreeCap) -> Result<SemilinearEndo> {
    let (_, emb) = sigma.field().extend(e, cap)?;
    Ok(extend_along(sigma, &emb))
}

pub(crate) fn extend_along(sigma: &SemilinearEndo, emb: &EmbeddingMap) -> SemilinearEndo {
    SemilinearEndo {
        matrix: sigma.matrix.embed(emb),
        twist: sigma.twist,
    }
}

/// Descent datum of a semilinear automorphism: an invertible `G` over
/// `F_{q^(me)}` with `A phi(G) = G`. Its columns are an `F_q`-basis of
/// `V^sigma` after extension, so `G` carries the standard Frobenius on
/// `F_q^n (x) F_{q^(me)}` to `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpaceDescent {
    pub dim: usize,
    pub extension_degree: u32,
    pub field: Field,
    pub certificate: MatrixF,
}

impl VectorSpaceDescent {
    pub fn basis(&self) -> Vec<Vec<FieldElement>> {
        (0..self.certificate.cols())
            .map(|j| self.certificate.column(j))
            .collect()
    }

    /// `A phi(G) = G` and `G` invertible, for `sigma` read over the
    /// certificate's field.
    pub fn verify(&self, sigma: &SemilinearEndo) -> bool {
        let Ok(emb) = sigma.field().embedding_into(&self.field) else {
            return false;
        };
        let ext = extend_along(sigma, &emb);
        ext.apply_matrix(&self.certificate) == self.certificate
            && !self.certificate.determinant().is_zero()
    }
}

pub fn descend_vector_space(sigma: &SemilinearEndo, cap: DegreeCap) -> Result<VectorSpaceDescent> {
    let e = splitting_degree(sigma, cap)?;
    let (field, emb) = sigma.field().extend(e, cap)?;
    let ext = extend_along(sigma, &emb);
    let fixed = fixed_space(&ext)?;
    let n = sigma.dim();
    if fixed.dim() != n {
        return Err(Error::Verification(
            "fixed space is not full at the splitting degree",
        ));
    }
    let certificate = MatrixF::from_columns(&field, n, &fixed.basis);
    if ext.apply_matrix(&certificate) != certificate || certificate.determinant().is_zero() {
        return Err(Error::Verification("descent certificate"));
    }
    Ok(VectorSpaceDescent {
        dim: n,
        extension_degree: e,
        field,
        certificate,
    })
}

/// Solution of Lang's equation `G^-1 phi(G) = A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LangSolution {
    pub extension_degree: u32,
    pub solution: MatrixF,
}

/// `G^-1 phi(G)`.
pub fn lang_map(g: &MatrixF) -> Result<MatrixF> {
    Ok(g.inverse()?.mul(&g.frobenius(1)))
}

/// Finds `G` over the least extension `F_{q^(me)}` with `G^-1 phi(G) = A`.
/// The rows of `G` are fixed vectors of `w -> (A^T)^-1 phi(w)`.
pub fn lang_solve(a: &MatrixF, cap: DegreeCap) -> Result<LangSolution> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(
            "Lang's equation needs a square matrix".into(),
        ));
    }
    let at_inv = a.transpose().inverse().map_err(|_| Error::NotInvertible)?;
    let tau = SemilinearEndo::with_matrix(at_inv)?;
    let descent = descend_vector_space(&tau, cap)?;
    let g = descent.certificate.transpose();
    let emb = a.field().embedding_into(&descent.field)?;
    if lang_map(&g)? != a.embed(&emb) {
        return Err(Error::Verification("Lang solution"));
    }
    Ok(LangSolution {
        extension_degree: descent.extension_degree,
        solution: g,
    })
}

/// Matrix over the dual numbers `F_{q^m}[eps]/(eps^2)`: `re + eps * eps_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMatrix {
    pub re: MatrixF,
    pub eps: MatrixF,
}

impl DualMatrix {
    pub fn new(re: MatrixF, eps: MatrixF) -> Result<Self> {
        if re.field() != eps.field() {
            return Err(Error::FieldMismatch);
        }
        if re.rows() != eps.rows() || re.cols() != eps.cols() {
            return Err(Error::InvalidArgument(
                "dual parts have different shapes".into(),
            ));
        }
        Ok(DualMatrix { re, eps })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        DualMatrix {
            re: MatrixF::identity(field, n),
            eps: MatrixF::zeros(field, n, n),
        }
    }

    pub fn field(&self) -> &Field {
        self.re.field()
    }

    pub fn mul(&self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix {
            re: self.re.mul(&rhs.re),
            eps: self.re.mul(&rhs.eps).add(&self.eps.mul(&rhs.re)),
        }
    }

    /// Invertible exactly when the reduction is.
    pub fn inverse(&self) -> Result<DualMatrix> {
        let r = self.re.inverse()?;
        let e = r.mul(&self.eps).mul(&r);
        let zero = MatrixF::zeros(self.field(), e.rows(), e.cols());
        Ok(DualMatrix {
            re: r,
            eps: zero.sub(&e),
        })
    }

    /// Frobenius on coefficients; `eps` is fixed.
    pub fn frobenius(&self, s: i64) -> DualMatrix {
        DualMatrix {
            re: self.re.frobenius(s),
            eps: self.eps.frobenius(s),
        }
    }

    pub fn embed(&self, emb: &EmbeddingMap) -> DualMatrix {
        DualMatrix {
            re: self.re.embed(emb),
            eps: self.eps.embed(emb),
        }
    }
}

/// `G^-1 phi(G)` over the dual numbers.
pub fn dual_lang_map(g: &DualMatrix) -> Result<DualMatrix> {
    Ok(g.inverse()?.mul(&g.frobenius(1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualLangSolution {
    pub extension_degree: u32,
    pub solution: DualMatrix,
}

/// Lang's equation over `F_{q^m}[eps]/(eps^2)`: solve the reduction, then
/// lift through the square-zero ideal by solving the `F_q`-affine equation
/// `phi(G1) - G1 A0 = G0 A1`, extending further when it has no solution.
pub fn lang_solve_dual(a: &DualMatrix, cap: DegreeCap) -> Result<DualLangSolution> {
    let reduced = lang_solve(&a.re, cap)?;
    let base = a.field();
    let e0 = reduced.extension_degree;
    let n = a.re.rows();
    let mut j = 1u32;
    loop {
        let e = e0 * j;
        cap.check(base.degree() * e as usize)?;
        let (level0, _) = base.extend(e0, cap)?;
        let (level, emb) = base.extend(e, cap)?;
        let lift = level0.embedding_into(&level)?;
        let g0 = reduced.solution.embed(&lift);
        let a0 = a.re.embed(&emb);
        let a1 = a.eps.embed(&emb);
        let rhs = g0.mul(&a1);
        let to_matrix =
            |v: &[FieldElement]| MatrixF::from_fn(&level, n, n, |r, c| v[r * n + c].clone());
        let solved = fp_affine_solve(
            &level,
            n * n,
            |v| {
                let g1 = to_matrix(v);
                g1.frobenius(1).sub(&g1.mul(&a0)).entries().to_vec()
            },
            rhs.entries(),
        );
        if let Some(v) = solved {
            let g = DualMatrix {
                re: g0,
                eps: to_matrix(&v),
            };
            if dual_lang_map(&g)? != a.embed(&emb) {
                return Err(Error::Verification("dual Lang solution"));
            }
            return Ok(DualLangSolution {
                extension_degree: e,
                solution: g,
            });
        }
        j += 1;
    }
}

/// Coefficient ring for [`beta_surjectivity_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRing {
    Field,
    DualNumbers,
}

/// Enumeration of Lang's map over all of `GL_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub q: u64,
    pub m: u32,
    pub n: usize,
    pub ring: CoefficientRing,
    pub targets: usize,
    pub hit: usize,
    /// Minimal extension degree -> number of targets needing it.
    pub degree_histogram: BTreeMap<u32, usize>,
    pub all_hit: bool,
}

const ENUMERATION_LIMIT: u128 = 1 << 16;

fn matrix_from_index(field: &Field, n: usize, mut idx: u128) -> MatrixF {
    let order = field.order().expect("small field");
    MatrixF::from_fn(field, n, n, |_, _| {
        let x = field.from_index(idx % order);
        idx /= order;
        x
    })
}

/// Solves `beta(g) = a` for every `a` in `GL_n` over `F_{q^m}` (or its dual
/// numbers) and records the least extension degree each target needs.
pub fn beta_surjectivity_report(
    q: u64,
    m: u32,
    n: usize,
    ring: CoefficientRing,
    cap: DegreeCap,
) -> Result<BetaReport> {
    let field = Field::from_q(q, m)?;
    let order = field.order().ok_or(Error::CapacityExceeded {
        degree: field.degree(),
        cap: cap.0,
    })?;
    let entries = match ring {
        CoefficientRing::Field => n * n,
        CoefficientRing::DualNumbers => 2 * n * n,
    } as u32;
    let total = order
        .checked_pow(entries)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("GL_{n} over F_{q}^{m} is too large to enumerate"))
        })?;
    let square = order.pow((n * n) as u32);
    let mut histogram = BTreeMap::new();
    let mut targets = 0;
    let mut hit = 0;
    for idx in 0..total {
        let re = matrix_from_index(&field, n, idx % square);
        if re.determinant().is_zero() {
            continue;
        }
        targets += 1;
        let e = match ring {
            CoefficientRing::Field => lang_solve(&re, cap).map(|s| s.extension_degree),
            CoefficientRing::DualNumbers => {
                let eps = matrix_from_index(&field, n, idx / square);
                lang_solve_dual(&DualMatrix::new(re, eps)?, cap).map(|s| s.extension_degree)
            }
        };
        match e {
            Ok(e) => {
                hit += 1;
                *histogram.entry(e).or_insert(0) += 1;
            }
            Err(Error::CapacityExceeded { .. }) => {}
            Err(other) => return Err(other),
        }
    }
    Ok(BetaReport {
        q,
        m,
        n,
        ring,
        targets,
        hit,
        degree_histogram: histogram,
        all_hit: hit == targets,
    })
}
