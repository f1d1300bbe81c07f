use std::fmt;

use serde::{Deserialize, Serialize};

use super::algebra::FinAlgebra;
use crate::error::{Error, Result};
use crate::field::{DegreeCap, EmbeddingMap, Field};
use crate::kernel::{fp_kernel, fq_basis_from_span};
use crate::matrix::MatrixF;
use crate::semilinear::{descend_vector_space, extend_along, splitting_degree, SemilinearEndo};

/// A module over `A (x) F_{q^m}` with a compatible Frobenius-semilinear
/// automorphism `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantModule {
    algebra: FinAlgebra,
    /// Action of each algebra basis element, `n x n` over the field.
    action: Vec<MatrixF>,
    sigma: SemilinearEndo,
}

/// First relation an [`EquivariantModule`] fails to satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum EquivarianceViolation {
    /// The unit does not act as the identity.
    Unit,
    /// `rho(e_left) rho(e_right) != rho(e_left e_right)`.
    Multiplication { left: usize, right: usize },
    /// `sigma` does not commute with `rho(e_basis_index)`.
    SigmaCommutation { basis_index: usize },
}

impl fmt::Display for EquivarianceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unit => write!(f, "unit does not act as the identity"),
            Self::Multiplication { left, right } => {
                write!(f, "action violates e_{left} * e_{right}")
            }
            Self::SigmaCommutation { basis_index } => {
                write!(f, "sigma does not commute with e_{basis_index}")
            }
        }
    }
}

impl EquivariantModule {
    /// Checks shapes and fields only; see [`check_equivariant`] for the
    /// algebraic relations.
    pub fn new(algebra: FinAlgebra, action: Vec<MatrixF>, sigma: SemilinearEndo) -> Result<Self> {
        let field = sigma.field();
        if field.p() != algebra.field().p() || field.q() != algebra.field().q() {
            return Err(Error::FieldMismatch);
        }
        if action.len() != algebra.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        let n = sigma.dim();
        for a in &action {
            if a.field() != field {
                return Err(Error::FieldMismatch);
            }
            if a.rows() != n || a.cols() != n {
                return Err(Error::InvalidArgument(
                    "action matrices must be n x n".into(),
                ));
            }
        }
        Ok(EquivariantModule {
            algebra,
            action,
            sigma,
        })
    }

    /// `A (x) F_{q^m}` with `sigma = id (x) phi`.
    pub fn canonical(algebra: &FinAlgebra, field: &Field) -> Result<Self> {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_multiplication(i))
            .collect();
        Self::from_rational(algebra, action, field)
    }

    /// `W (x) F_{q^m}` with the standard Frobenius, for an `A`-module `W`
    /// given by its action matrices over `F_q`.
    pub fn from_rational(
        algebra: &FinAlgebra,
        action: Vec<MatrixF>,
        field: &Field,
    ) -> Result<Self> {
        let emb = algebra.field().embedding_into(field)?;
        let n = action.first().map_or(0, MatrixF::rows);
        let action = action.iter().map(|a| a.embed(&emb)).collect();
        Self::new(algebra.clone(), action, SemilinearEndo::standard(field, n))
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.sigma.field()
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn action(&self) -> &[MatrixF] {
        &self.action
    }

    pub fn sigma(&self) -> &SemilinearEndo {
        &self.sigma
    }

    fn algebra_embedding(&self) -> EmbeddingMap {
        self.algebra
            .field()
            .embedding_into(self.field())
            .expect("F_q embeds in F_q^m")
    }

    /// Scalar extension along an embedding of the coefficient field.
    pub fn extend_along(&self, emb: &EmbeddingMap) -> Self {
        EquivariantModule {
            algebra: self.algebra.clone(),
            action: self.action.iter().map(|a| a.embed(emb)).collect(),
            sigma: extend_along(&self.sigma, emb),
        }
    }

    pub fn extend(&self, e: u32, cap: DegreeCap) -> Result<Self> {
        let (_, emb) = self.field().extend(e, cap)?;
        Ok(self.extend_along(&emb))
    }

    /// Transports the structure along `v -> P v`.
    pub fn conjugate(&self, p: &MatrixF) -> Result<Self> {
        let p_inv = p.inverse()?;
        let action = self.action.iter().map(|a| p.mul(a).mul(&p_inv)).collect();
        // P sigma P^-1 = P A phi(P)^-1 phi
        let sigma = SemilinearEndo::new(
            p.mul(self.sigma.matrix())
                .mul(&p_inv.frobenius(self.sigma.twist() as i64)),
            self.sigma.twist(),
        )?;
        Self::new(self.algebra.clone(), action, sigma)
    }
}

/// Verifies the unit, the multiplication table and `sigma`-commutation;
/// reports the first relation that fails.
pub fn check_equivariant(
    module: &EquivariantModule,
) -> std::result::Result<(), EquivarianceViolation> {
    let alg = module.algebra();
    let field = module.field();
    let emb = module.algebra_embedding();
    let n = module.dim();
    let combine = |coeffs: &[crate::field::FieldElement]| {
        coeffs
            .iter()
            .zip(module.action())
            .fold(MatrixF::zeros(field, n, n), |acc, (c, a)| {
                acc.add(&a.scale(&emb.apply(c)))
            })
    };
    if !combine(alg.unit()).is_identity() {
        return Err(EquivarianceViolation::Unit);
    }
    for (i, ai) in module.action().iter().enumerate() {
        for (j, aj) in module.action().iter().enumerate() {
            if ai.mul(aj) != combine(&alg.constants()[i][j]) {
                return Err(EquivarianceViolation::Multiplication { left: i, right: j });
            }
        }
    }
    let sigma = module.sigma();
    for (i, a) in module.action().iter().enumerate() {
        // sigma(rho(a) v) = A phi^s(rho(a)) phi^s(v) must equal rho(a) A phi^s(v)
        if sigma.matrix().mul(&a.frobenius(sigma.twist() as i64)) != a.mul(sigma.matrix()) {
            return Err(EquivarianceViolation::SigmaCommutation { basis_index: i });
        }
    }
    Ok(())
}

/// An `A`-module `W` over `F_q` together with the isomorphism
/// `W (x) F_{q^(me)} -> V (x) F_{q^(me)}` that carries the standard
/// Frobenius to `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendedModule {
    pub algebra: FinAlgebra,
    /// Action matrices over `F_q`.
    pub action: Vec<MatrixF>,
    pub extension_degree: u32,
    /// Field of the certificate, `F_{q^(me)}`.
    pub field: Field,
    pub certificate: MatrixF,
}

impl DescendedModule {
    pub fn dim(&self) -> usize {
        self.certificate.cols()
    }

    /// `A' phi(G) = G` and `G rho_W(a) = rho_V(a) G` over the certificate
    /// field, with `G` invertible.
    pub fn verify(&self, module: &EquivariantModule) -> bool {
        let Ok(emb) = module.field().embedding_into(&self.field) else {
            return false;
        };
        let Ok(alg_emb) = self.algebra.field().embedding_into(&self.field) else {
            return false;
        };
        let ext = module.extend_along(&emb);
        let g = &self.certificate;
        if g.determinant().is_zero() || ext.sigma().apply_matrix(g) != *g {
            return false;
        }
        ext.action()
            .iter()
            .zip(&self.action)
            .all(|(rho_v, rho_w)| rho_v.mul(g) == g.mul(&rho_w.embed(&alg_emb)))
    }

    /// `F_q`-basis of `Hom_A(self, other)` in canonical echelon order.
    pub fn hom_basis(&self, other: &DescendedModule) -> Result<Vec<MatrixF>> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let fq = self.algebra.field();
        let (nm, nn) = (self.dim(), other.dim());
        let system = linear_hom_system(fq, &self.action, &other.action, nm, nn);
        Ok(system
            .nullspace()
            .into_iter()
            .map(|v| MatrixF::from_fn(fq, nn, nm, |r, c| v[r * nm + c].clone()))
            .collect())
    }
}

/// Coefficient matrix of `H -> (H rho_M(a) - rho_N(a) H)_a`, unknowns the
/// row-major entries of `H` (`nn x nm`).
fn linear_hom_system(
    field: &Field,
    rho_m: &[MatrixF],
    rho_n: &[MatrixF],
    nm: usize,
    nn: usize,
) -> MatrixF {
    let unknowns = nm * nn;
    let mut columns = Vec::with_capacity(unknowns);
    for idx in 0..unknowns {
        let h = MatrixF::from_fn(field, nn, nm, |r, c| {
            if r * nm + c == idx {
                field.one()
            } else {
                field.zero()
            }
        });
        let col: Vec<_> = rho_m
            .iter()
            .zip(rho_n)
            .flat_map(|(a, b)| h.mul(a).sub(&b.mul(&h)).entries().to_vec())
            .collect();
        columns.push(col);
    }
    let rows = rho_m.len() * unknowns;
    if rows == 0 {
        return MatrixF::zeros(field, 0, unknowns);
    }
    MatrixF::from_columns(field, rows, &columns)
}

/// Descends an equivariant module: extends scalars to the splitting degree
/// of `sigma`, takes `W = V^sigma` and restricts the action to it.
pub fn descend_module(module: &EquivariantModule, cap: DegreeCap) -> Result<DescendedModule> {
    check_equivariant(module).map_err(Error::NotEquivariant)?;
    let descent = descend_vector_space(module.sigma(), cap)?;
    let emb = module.field().embedding_into(&descent.field)?;
    let alg_emb = module.algebra().field().embedding_into(&descent.field)?;
    let g = descent.certificate.clone();
    let g_inv = g.inverse()?;
    let action = module
        .action()
        .iter()
        .map(|rho| {
            g_inv
                .mul(&rho.embed(&emb))
                .mul(&g)
                .pull_back(&alg_emb)
                .ok_or(Error::Verification("restricted action is not F_q-rational"))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = DescendedModule {
        algebra: module.algebra().clone(),
        action,
        extension_degree: descent.extension_degree,
        field: descent.field,
        certificate: g,
    };
    if !out.verify(module) {
        return Err(Error::Verification("module descent certificate"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomMode {
    /// `A (x) F_{q^m}`-linear maps, a space over `F_{q^m}`.
    Linear,
    /// Maps that also intertwine the Frobenius structures, a space over
    /// `F_q`; computed over the least common splitting field of both
    /// modules.
    Equivariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub mode: HomMode,
    /// Field the basis matrices live in.
    pub field: Field,
    pub basis: Vec<MatrixF>,
}

impl HomSpace {
    /// Dimension over `F_{q^m}` (linear) or `F_q` (equivariant).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn hom_space(
    source: &EquivariantModule,
    target: &EquivariantModule,
    mode: HomMode,
    cap: DegreeCap,
) -> Result<HomSpace> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch);
    }
    if source.algebra() != target.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let (nm, nn) = (source.dim(), target.dim());
    match mode {
        HomMode::Linear => {
            let field = source.field();
            let system = linear_hom_system(field, source.action(), target.action(), nm, nn);
            let basis = system
                .nullspace()
                .into_iter()
                .map(|v| MatrixF::from_fn(field, nn, nm, |r, c| v[r * nm + c].clone()))
                .collect();
            Ok(HomSpace {
                mode,
                field: field.clone(),
                basis,
            })
        }
        HomMode::Equivariant => {
            let e1 = splitting_degree(source.sigma(), cap)?;
            let e2 = splitting_degree(target.sigma(), cap)?;
            let e = e1 / gcd(e1, e2) * e2;
            let (field, emb) = source.field().extend(e, cap)?;
            let m = source.extend_along(&emb);
            let n = target.extend_along(&emb);
            let to_h = |v: &[crate::field::FieldElement]| {
                MatrixF::from_fn(&field, nn, nm, |r, c| v[r * nm + c].clone())
            };
            let span = fp_kernel(&field, nm * nn, |v| {
                let h = to_h(v);
                let mut out: Vec<_> = m
                    .action()
                    .iter()
                    .zip(n.action())
                    .flat_map(|(a, b)| h.mul(a).sub(&b.mul(&h)).entries().to_vec())
                    .collect();
                // H sigma_M = sigma_N H  <=>  H A_M = A_N phi(H)
                let lhs = h.mul(m.sigma().matrix());
                let rhs = n.sigma().matrix().mul(&h.frobenius(1));
                out.extend(lhs.sub(&rhs).entries().iter().cloned());
                out
            });
            let basis = fq_basis_from_span(&field, &span)
                .iter()
                .map(|v| to_h(v))
                .collect();
            Ok(HomSpace { mode, field, basis })
        }
    }
}
