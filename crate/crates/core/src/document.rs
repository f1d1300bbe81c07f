//! One self-describing JSON format for every value the command-line tool
//! reads or writes.
//!
//! Field elements are little-endian coefficient lists over `F_p` of full
//! length `[F_{q^m} : F_p]`; matrices are row-major; polynomials are lists of
//! exponent/coefficient pairs in increasing exponent order. Printing is
//! canonical, so `parse(print(d)) == d` and decoding rejects anything that
//! the printer would not have produced (unreduced coefficients, zero terms,
//! a modulus that is not the field's).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cocycle::{LaurentUnit, MuPowerReport, PicardCokernel};
use crate::descent::{
    DescendedModule, EquivarianceViolation, EquivariantModule, FinAlgebra, GradedIdealTrunc,
    HomMode, HomSpace,
};
use crate::error::Error;
use crate::field::{DegreeCap, EmbeddingMap, Field, FieldElement};
use crate::matrix::MatrixF;
use crate::moore::MooreIdentity;
use crate::poly::{homogeneous_monomials, PolynomialF};
use crate::semilinear::{
    BetaReport, DualLangSolution, DualMatrix, FixedSpace, LangSolution, SemilinearEndo,
    VectorSpaceDescent,
};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
    /// A well-formed request the library refuses, e.g. over the degree cap.
    #[error(transparent)]
    Domain(Error),
    #[error("expected a {expected} document, got {found}")]
    WrongType {
        expected: &'static str,
        found: String,
    },
}

fn malformed(e: impl std::fmt::Display) -> DocumentError {
    DocumentError::Malformed(e.to_string())
}

type DocResult<T> = std::result::Result<T, DocumentError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u32,
    pub q_exponent: u32,
    pub m: u32,
    /// Monic modulus of `F_{q^m}` over `F_p`, constant term first.
    pub modulus: Vec<u32>,
}

/// Little-endian coordinates over `F_p`.
pub type ElementDoc = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ElementDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponent: Vec<u32>,
    pub coefficient: ElementDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub nvars: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaDoc {
    pub matrix: MatrixDoc,
    pub twist: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    /// `F_q`, with `m = 1`.
    pub field: FieldDoc,
    pub constants: Vec<Vec<Vec<ElementDoc>>>,
    pub unit: Vec<ElementDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDoc {
    pub lambda: ElementDoc,
    pub t: i64,
}

/// Structured part of an error document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorPayload {
    CapacityExceeded {
        degree: usize,
        cap: usize,
    },
    Singular {
        rank: usize,
    },
    NotEquivariant {
        violation: EquivarianceViolation,
    },
    NotStable {
        degree: u32,
        field: FieldDoc,
        witness: PolynomialDoc,
    },
    IdentityViolated {
        q: u64,
        r: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Document {
    Field(FieldDoc),
    Element {
        field: FieldDoc,
        value: ElementDoc,
    },
    Elements {
        field: FieldDoc,
        values: Vec<ElementDoc>,
    },
    Embedding {
        source: FieldDoc,
        target: FieldDoc,
        image_of_generator: ElementDoc,
    },
    Matrix {
        field: FieldDoc,
        matrix: MatrixDoc,
    },
    DualMatrix {
        field: FieldDoc,
        re: MatrixDoc,
        eps: MatrixDoc,
    },
    Polynomial {
        field: FieldDoc,
        polynomial: PolynomialDoc,
    },
    Polynomials {
        field: FieldDoc,
        polynomials: Vec<PolynomialDoc>,
    },
    Semilinear {
        field: FieldDoc,
        matrix: MatrixDoc,
        twist: u32,
    },
    Algebra(AlgebraDoc),
    Module {
        algebra: AlgebraDoc,
        field: FieldDoc,
        action: Vec<MatrixDoc>,
        sigma: SigmaDoc,
    },
    Ideal {
        field: FieldDoc,
        nvars: usize,
        max_degree: u32,
        components: Vec<Vec<Vec<ElementDoc>>>,
    },
    LaurentUnit {
        field: FieldDoc,
        lambda: ElementDoc,
        t: i64,
    },
    Boolean {
        value: bool,
    },
    SplittingDegree {
        degree: u32,
    },
    FixedSpace {
        field: FieldDoc,
        basis: Vec<Vec<ElementDoc>>,
    },
    VectorSpaceDescent {
        field: FieldDoc,
        extension_degree: u32,
        certificate: MatrixDoc,
    },
    LangSolution {
        field: FieldDoc,
        extension_degree: u32,
        solution: MatrixDoc,
    },
    DualLangSolution {
        field: FieldDoc,
        extension_degree: u32,
        re: MatrixDoc,
        eps: MatrixDoc,
    },
    BetaReport(BetaReport),
    MooreIdentity {
        field: FieldDoc,
        q: u64,
        r: usize,
        omega: ElementDoc,
        determinant: PolynomialDoc,
        product: PolynomialDoc,
    },
    EquivarianceReport {
        equivariant: bool,
        violation: Option<EquivarianceViolation>,
    },
    DescendedModule {
        algebra: AlgebraDoc,
        field: FieldDoc,
        extension_degree: u32,
        action: Vec<MatrixDoc>,
        certificate: MatrixDoc,
    },
    HomSpace {
        mode: HomMode,
        field: FieldDoc,
        basis: Vec<MatrixDoc>,
    },
    PicardCokernel {
        field: FieldDoc,
        q: u64,
        m: u32,
        torsion_order: u64,
        free_rank: u32,
        image_size: u64,
        generator: ElementDoc,
        representatives: Vec<UnitDoc>,
        x_class_nontrivial: bool,
    },
    MuPowerReport {
        field: FieldDoc,
        q: u64,
        m: u32,
        roots: Vec<ElementDoc>,
        image: Vec<ElementDoc>,
        surjective: bool,
    },
    Error {
        kind: String,
        message: String,
        payload: Option<ErrorPayload>,
    },
}

impl Document {
    pub fn type_name(&self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.get("type").and_then(|t| t.as_str()).map(str::to_owned))
            .unwrap_or_default()
    }

    /// Canonical text form: pretty JSON with a trailing newline.
    pub fn print(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> DocResult<Document> {
        Ok(serde_json::from_str(text)?)
    }

    /// Parses a stream of concatenated documents.
    pub fn parse_many(text: &str) -> DocResult<Vec<Document>> {
        serde_json::Deserializer::from_str(text)
            .into_iter::<Document>()
            .map(|d| d.map_err(DocumentError::from))
            .collect()
    }

    fn wrong(&self, expected: &'static str) -> DocumentError {
        DocumentError::WrongType {
            expected,
            found: self.type_name(),
        }
    }

    // ---- encoders ----

    pub fn from_field(f: &Field) -> Self {
        Document::Field(enc_field(f))
    }

    pub fn from_element(x: &FieldElement) -> Self {
        Document::Element {
            field: enc_field(x.field()),
            value: enc_elem(x),
        }
    }

    pub fn from_elements(field: &Field, xs: &[FieldElement]) -> Self {
        Document::Elements {
            field: enc_field(field),
            values: xs.iter().map(enc_elem).collect(),
        }
    }

    pub fn from_embedding(e: &EmbeddingMap) -> Self {
        Document::Embedding {
            source: enc_field(e.source()),
            target: enc_field(e.target()),
            image_of_generator: enc_elem(e.image_of_generator()),
        }
    }

    pub fn from_matrix(a: &MatrixF) -> Self {
        Document::Matrix {
            field: enc_field(a.field()),
            matrix: enc_matrix(a),
        }
    }

    pub fn from_dual_matrix(a: &DualMatrix) -> Self {
        Document::DualMatrix {
            field: enc_field(a.field()),
            re: enc_matrix(&a.re),
            eps: enc_matrix(&a.eps),
        }
    }

    pub fn from_polynomial(p: &PolynomialF) -> Self {
        Document::Polynomial {
            field: enc_field(p.field()),
            polynomial: enc_poly(p),
        }
    }

    pub fn from_polynomials(field: &Field, ps: &[PolynomialF]) -> Self {
        Document::Polynomials {
            field: enc_field(field),
            polynomials: ps.iter().map(enc_poly).collect(),
        }
    }

    pub fn from_semilinear(s: &SemilinearEndo) -> Self {
        Document::Semilinear {
            field: enc_field(s.field()),
            matrix: enc_matrix(s.matrix()),
            twist: s.twist(),
        }
    }

    pub fn from_algebra(a: &FinAlgebra) -> Self {
        Document::Algebra(enc_algebra(a))
    }

    pub fn from_module(m: &EquivariantModule) -> Self {
        Document::Module {
            algebra: enc_algebra(m.algebra()),
            field: enc_field(m.field()),
            action: m.action().iter().map(enc_matrix).collect(),
            sigma: SigmaDoc {
                matrix: enc_matrix(m.sigma().matrix()),
                twist: m.sigma().twist(),
            },
        }
    }

    pub fn from_ideal(i: &GradedIdealTrunc) -> Self {
        Document::Ideal {
            field: enc_field(i.field()),
            nvars: i.nvars(),
            max_degree: i.max_degree(),
            components: (0..=i.max_degree())
                .map(|d| {
                    i.component_rows(d)
                        .iter()
                        .map(|r| r.iter().map(enc_elem).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_unit(u: &LaurentUnit) -> Self {
        Document::LaurentUnit {
            field: enc_field(u.field()),
            lambda: enc_elem(u.lambda()),
            t: u.t(),
        }
    }

    pub fn from_fixed_space(f: &FixedSpace) -> Self {
        Document::FixedSpace {
            field: enc_field(f.parent.field()),
            basis: f
                .basis
                .iter()
                .map(|v| v.iter().map(enc_elem).collect())
                .collect(),
        }
    }

    pub fn from_vector_space_descent(d: &VectorSpaceDescent) -> Self {
        Document::VectorSpaceDescent {
            field: enc_field(&d.field),
            extension_degree: d.extension_degree,
            certificate: enc_matrix(&d.certificate),
        }
    }

    pub fn from_lang_solution(s: &LangSolution) -> Self {
        Document::LangSolution {
            field: enc_field(s.solution.field()),
            extension_degree: s.extension_degree,
            solution: enc_matrix(&s.solution),
        }
    }

    pub fn from_dual_lang_solution(s: &DualLangSolution) -> Self {
        Document::DualLangSolution {
            field: enc_field(s.solution.field()),
            extension_degree: s.extension_degree,
            re: enc_matrix(&s.solution.re),
            eps: enc_matrix(&s.solution.eps),
        }
    }

    pub fn from_moore_identity(id: &MooreIdentity) -> Self {
        Document::MooreIdentity {
            field: enc_field(id.omega.field()),
            q: id.q,
            r: id.r,
            omega: enc_elem(&id.omega),
            determinant: enc_poly(&id.determinant),
            product: enc_poly(&id.product),
        }
    }

    pub fn from_descended_module(d: &DescendedModule) -> Self {
        Document::DescendedModule {
            algebra: enc_algebra(&d.algebra),
            field: enc_field(&d.field),
            extension_degree: d.extension_degree,
            action: d.action.iter().map(enc_matrix).collect(),
            certificate: enc_matrix(&d.certificate),
        }
    }

    pub fn from_hom_space(h: &HomSpace) -> Self {
        Document::HomSpace {
            mode: h.mode,
            field: enc_field(&h.field),
            basis: h.basis.iter().map(enc_matrix).collect(),
        }
    }

    pub fn from_picard(c: &PicardCokernel) -> Self {
        Document::PicardCokernel {
            field: enc_field(c.generator.field()),
            q: c.q,
            m: c.m,
            torsion_order: c.torsion_order,
            free_rank: c.free_rank,
            image_size: c.image_size,
            generator: enc_elem(&c.generator),
            representatives: c
                .representatives
                .iter()
                .map(|u| UnitDoc {
                    lambda: enc_elem(u.lambda()),
                    t: u.t(),
                })
                .collect(),
            x_class_nontrivial: c.x_class_nontrivial,
        }
    }

    pub fn from_mu_report(r: &MuPowerReport, field: &Field) -> Self {
        Document::MuPowerReport {
            field: enc_field(field),
            q: r.q,
            m: r.m,
            roots: r.roots.iter().map(enc_elem).collect(),
            image: r.image.iter().map(enc_elem).collect(),
            surjective: r.surjective,
        }
    }

    pub fn from_error(e: &Error) -> Self {
        let (kind, payload) = match e {
            Error::CapacityExceeded { degree, cap } => (
                "capacity_exceeded",
                Some(ErrorPayload::CapacityExceeded {
                    degree: *degree,
                    cap: *cap,
                }),
            ),
            Error::FieldMismatch => ("field_mismatch", None),
            Error::AlgebraMismatch => ("algebra_mismatch", None),
            Error::Singular { rank } => ("singular", Some(ErrorPayload::Singular { rank: *rank })),
            Error::NotInvertible => ("not_invertible", None),
            Error::IdentityViolated { q, r } => (
                "identity_violated",
                Some(ErrorPayload::IdentityViolated { q: *q, r: *r }),
            ),
            Error::NotEquivariant(v) => (
                "not_equivariant",
                Some(ErrorPayload::NotEquivariant {
                    violation: v.clone(),
                }),
            ),
            Error::NotStable { degree, witness } => (
                "not_stable",
                Some(ErrorPayload::NotStable {
                    degree: *degree,
                    field: enc_field(witness.field()),
                    witness: enc_poly(witness),
                }),
            ),
            Error::InvalidArgument(_) => ("invalid_argument", None),
            Error::Verification(_) => ("verification", None),
        };
        Document::Error {
            kind: kind.to_owned(),
            message: e.to_string(),
            payload,
        }
    }

    // ---- decoders ----

    pub fn to_field(&self, cap: DegreeCap) -> DocResult<Field> {
        match self {
            Document::Field(f) => dec_field(f, cap),
            other => Err(other.wrong("field")),
        }
    }

    pub fn to_element(&self, cap: DegreeCap) -> DocResult<FieldElement> {
        match self {
            Document::Element { field, value } => dec_elem(&dec_field(field, cap)?, value),
            other => Err(other.wrong("element")),
        }
    }

    pub fn to_elements(&self, cap: DegreeCap) -> DocResult<(Field, Vec<FieldElement>)> {
        match self {
            Document::Elements { field, values } => {
                let f = dec_field(field, cap)?;
                let xs = values
                    .iter()
                    .map(|v| dec_elem(&f, v))
                    .collect::<DocResult<_>>()?;
                Ok((f, xs))
            }
            other => Err(other.wrong("elements")),
        }
    }

    pub fn to_matrix(&self, cap: DegreeCap) -> DocResult<MatrixF> {
        match self {
            Document::Matrix { field, matrix } => dec_matrix(&dec_field(field, cap)?, matrix),
            other => Err(other.wrong("matrix")),
        }
    }

    pub fn to_dual_matrix(&self, cap: DegreeCap) -> DocResult<DualMatrix> {
        match self {
            Document::DualMatrix { field, re, eps } => {
                let f = dec_field(field, cap)?;
                DualMatrix::new(dec_matrix(&f, re)?, dec_matrix(&f, eps)?).map_err(malformed)
            }
            other => Err(other.wrong("dual_matrix")),
        }
    }

    pub fn to_polynomial(&self, cap: DegreeCap) -> DocResult<PolynomialF> {
        match self {
            Document::Polynomial { field, polynomial } => {
                dec_poly(&dec_field(field, cap)?, polynomial)
            }
            other => Err(other.wrong("polynomial")),
        }
    }

    pub fn to_polynomials(&self, cap: DegreeCap) -> DocResult<(Field, Vec<PolynomialF>)> {
        match self {
            Document::Polynomials { field, polynomials } => {
                let f = dec_field(field, cap)?;
                let ps = polynomials
                    .iter()
                    .map(|p| dec_poly(&f, p))
                    .collect::<DocResult<_>>()?;
                Ok((f, ps))
            }
            other => Err(other.wrong("polynomials")),
        }
    }

    pub fn to_semilinear(&self, cap: DegreeCap) -> DocResult<SemilinearEndo> {
        match self {
            Document::Semilinear {
                field,
                matrix,
                twist,
            } => SemilinearEndo::new(dec_matrix(&dec_field(field, cap)?, matrix)?, *twist)
                .map_err(malformed),
            other => Err(other.wrong("semilinear")),
        }
    }

    pub fn to_algebra(&self, cap: DegreeCap) -> DocResult<FinAlgebra> {
        match self {
            Document::Algebra(a) => dec_algebra(a, cap),
            other => Err(other.wrong("algebra")),
        }
    }

    pub fn to_module(&self, cap: DegreeCap) -> DocResult<EquivariantModule> {
        match self {
            Document::Module {
                algebra,
                field,
                action,
                sigma,
            } => {
                let alg = dec_algebra(algebra, cap)?;
                let f = dec_field(field, cap)?;
                let action = action
                    .iter()
                    .map(|a| dec_matrix(&f, a))
                    .collect::<DocResult<_>>()?;
                let sigma = SemilinearEndo::new(dec_matrix(&f, &sigma.matrix)?, sigma.twist)
                    .map_err(malformed)?;
                EquivariantModule::new(alg, action, sigma).map_err(malformed)
            }
            other => Err(other.wrong("module")),
        }
    }

    pub fn to_ideal(&self, cap: DegreeCap) -> DocResult<GradedIdealTrunc> {
        match self {
            Document::Ideal {
                field,
                nvars,
                max_degree,
                components,
            } => {
                let f = dec_field(field, cap)?;
                if components.len() != *max_degree as usize + 1 {
                    return Err(malformed("need one component per degree 0..=max_degree"));
                }
                let pieces = components
                    .iter()
                    .enumerate()
                    .map(|(d, rows)| {
                        let mons = homogeneous_monomials(*nvars, d as u32);
                        rows.iter()
                            .map(|row| {
                                if row.len() != mons.len() {
                                    return Err(malformed(format!(
                                        "degree {d} rows need {} entries",
                                        mons.len()
                                    )));
                                }
                                let coeffs = row
                                    .iter()
                                    .map(|x| dec_elem(&f, x))
                                    .collect::<DocResult<Vec<_>>>()?;
                                Ok(PolynomialF::from_coefficients(&f, &mons, &coeffs))
                            })
                            .collect::<DocResult<Vec<_>>>()
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let ideal =
                    GradedIdealTrunc::from_components(&f, *nvars, pieces).map_err(malformed)?;
                if Document::from_ideal(&ideal) != *self {
                    return Err(malformed("components must be in echelon form"));
                }
                Ok(ideal)
            }
            other => Err(other.wrong("ideal")),
        }
    }

    pub fn to_unit(&self, cap: DegreeCap) -> DocResult<LaurentUnit> {
        match self {
            Document::LaurentUnit { field, lambda, t } => {
                LaurentUnit::new(dec_elem(&dec_field(field, cap)?, lambda)?, *t).map_err(malformed)
            }
            other => Err(other.wrong("laurent_unit")),
        }
    }
}

pub fn enc_field(f: &Field) -> FieldDoc {
    FieldDoc {
        p: f.p(),
        q_exponent: f.q_exponent(),
        m: f.m(),
        modulus: f.modulus().to_vec(),
    }
}

pub fn dec_field(d: &FieldDoc, cap: DegreeCap) -> DocResult<Field> {
    let f = Field::with_cap(d.p, d.q_exponent, d.m, cap).map_err(|e| match e {
        Error::CapacityExceeded { .. } => DocumentError::Domain(e),
        other => malformed(other),
    })?;
    if f.modulus() != d.modulus.as_slice() {
        return Err(malformed(format!(
            "modulus {:?} is not the one used for {f}",
            d.modulus
        )));
    }
    Ok(f)
}

pub fn enc_elem(x: &FieldElement) -> ElementDoc {
    x.coords().to_vec()
}

pub fn dec_elem(f: &Field, v: &[u32]) -> DocResult<FieldElement> {
    f.element(v).map_err(malformed)
}

pub fn enc_matrix(a: &MatrixF) -> MatrixDoc {
    MatrixDoc {
        rows: a.rows(),
        cols: a.cols(),
        entries: (0..a.rows())
            .map(|i| a.row(i).iter().map(enc_elem).collect())
            .collect(),
    }
}

pub fn dec_matrix(f: &Field, d: &MatrixDoc) -> DocResult<MatrixF> {
    if d.entries.len() != d.rows || d.entries.iter().any(|r| r.len() != d.cols) {
        return Err(malformed(format!(
            "matrix entries do not match {} x {}",
            d.rows, d.cols
        )));
    }
    let mut out = MatrixF::zeros(f, d.rows, d.cols);
    for (i, row) in d.entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out.set(i, j, dec_elem(f, x)?);
        }
    }
    Ok(out)
}

pub fn enc_poly(p: &PolynomialF) -> PolynomialDoc {
    PolynomialDoc {
        nvars: p.nvars(),
        terms: p
            .terms()
            .map(|(e, c)| TermDoc {
                exponent: e.clone(),
                coefficient: enc_elem(c),
            })
            .collect(),
    }
}

pub fn dec_poly(f: &Field, d: &PolynomialDoc) -> DocResult<PolynomialF> {
    let terms = d
        .terms
        .iter()
        .map(|t| Ok((t.exponent.clone(), dec_elem(f, &t.coefficient)?)))
        .collect::<DocResult<Vec<_>>>()?;
    let p = PolynomialF::from_terms(f, d.nvars, terms).map_err(malformed)?;
    if enc_poly(&p) != *d {
        return Err(malformed(
            "terms must be distinct, nonzero and in increasing exponent order",
        ));
    }
    Ok(p)
}

pub fn enc_algebra(a: &FinAlgebra) -> AlgebraDoc {
    AlgebraDoc {
        field: enc_field(a.field()),
        constants: a
            .constants()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.iter().map(enc_elem).collect())
                    .collect()
            })
            .collect(),
        unit: a.unit().iter().map(enc_elem).collect(),
    }
}

pub fn dec_algebra(d: &AlgebraDoc, cap: DegreeCap) -> DocResult<FinAlgebra> {
    let f = dec_field(&d.field, cap)?;
    let constants = d
        .constants
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    c.iter()
                        .map(|x| dec_elem(&f, x))
                        .collect::<DocResult<Vec<_>>>()
                })
                .collect::<DocResult<Vec<_>>>()
        })
        .collect::<DocResult<Vec<_>>>()?;
    let unit = d
        .unit
        .iter()
        .map(|x| dec_elem(&f, x))
        .collect::<DocResult<Vec<_>>>()?;
    FinAlgebra::new(&f, constants, unit).map_err(malformed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_document_shape() {
        let f4 = Field::new(2, 1, 2).unwrap();
        let text = Document::from_field(&f4).print();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["type"], "field");
        assert_eq!(v["modulus"], serde_json::json!([1, 1, 1]));
        assert_eq!(
            Document::parse(&text)
                .unwrap()
                .to_field(DegreeCap::default())
                .unwrap(),
            f4
        );
    }

    #[test]
    fn wrong_modulus_is_rejected() {
        let doc = Document::Field(FieldDoc {
            p: 2,
            q_exponent: 1,
            m: 2,
            modulus: vec![1, 0, 1],
        });
        assert!(matches!(
            doc.to_field(DegreeCap::default()),
            Err(DocumentError::Malformed(_))
        ));
    }

    #[test]
    fn unreduced_coordinates_are_rejected() {
        let f3 = Field::new(3, 1, 1).unwrap();
        let doc = Document::Element {
            field: enc_field(&f3),
            value: vec![3],
        };
        assert!(doc.to_element(DegreeCap::default()).is_err());
    }

    #[test]
    fn concatenated_stream() {
        let f4 = Field::new(2, 1, 2).unwrap();
        let text = format!(
            "{}{}",
            Document::from_element(&f4.generator()).print(),
            Document::from_field(&f4).print()
        );
        let docs = Document::parse_many(&text).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[1].type_name(), "field");
    }

    #[test]
    fn error_payload_survives() {
        let f4 = Field::new(2, 1, 2).unwrap();
        let e = Error::NotStable {
            degree: 1,
            witness: PolynomialF::var(&f4, 2, 0),
        };
        let doc = Document::from_error(&e);
        assert_eq!(Document::parse(&doc.print()).unwrap(), doc);
        match doc {
            Document::Error {
                payload: Some(ErrorPayload::NotStable { degree, .. }),
                ..
            } => assert_eq!(degree, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
