use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::kernel::{fp_kernel, fq_basis_from_span};
use crate::matrix::{rank_of, MatrixF};
use crate::moore::{moore_matrix, MooreInput};
use crate::poly::{homogeneous_monomials, Exponent, PolynomialF};

/// Splits `f` over `F_q^m` into `F_q`-rational polynomials using the
/// distinguished basis `1, g, ..., g^(m-1)`. See [`element_descent_in_basis`].
pub fn element_descent(f: &PolynomialF) -> Result<Vec<PolynomialF>> {
    element_descent_in_basis(f, &f.field().fq_basis())
}

/// Writes `f = sum_r mu_(i_r) a_r` with `a_r` over `F_q`, keeping only the
/// basis elements with a nonzero component, and recovers the `a_r` from the
/// Frobenius orbit `f, phi(f), ..., phi^n(f)` by inverting the Moore matrix
/// of those `mu`s. The returned polynomials live over `F_q`; the span of
/// their extensions equals the span of the orbit, which is checked.
pub fn element_descent_in_basis(
    f: &PolynomialF,
    basis: &[FieldElement],
) -> Result<Vec<PolynomialF>> {
    let field = f.field();
    let m = field.m() as usize;
    if basis.len() != m || basis.iter().any(|b| b.field() != field) {
        return Err(Error::InvalidArgument(format!(
            "need an F_q-basis of {field} with {m} elements"
        )));
    }
    let fq = field.base_field();
    let emb = fq.embedding_into(field)?;
    // change of basis from the distinguished coordinates
    let mut columns = Vec::with_capacity(m);
    for b in basis {
        columns.push(field.fq_coordinates(b)?);
    }
    let change = MatrixF::from_columns(&fq, m, &columns)
        .inverse()
        .map_err(|_| Error::InvalidArgument("basis elements are F_q-dependent".into()))?;

    // components[j] = coefficient of basis[j], as polynomials over F_q
    let mut components = vec![PolynomialF::zero(&fq, f.nvars()); m];
    for (e, c) in f.terms() {
        let coords = change.mul_vec(&field.fq_coordinates(c)?);
        for (comp, x) in components.iter_mut().zip(coords) {
            *comp = comp.add(&PolynomialF::monomial(&fq, e.clone(), x));
        }
    }
    let kept: Vec<usize> = (0..m).filter(|&j| !components[j].is_zero()).collect();
    if kept.is_empty() {
        return Ok(Vec::new());
    }

    let mus: Vec<FieldElement> = kept.iter().map(|&j| basis[j].clone()).collect();
    let moore = moore_matrix(&MooreInput::new(field, mus)?);
    let inv = moore.inverse()?;
    let orbit: Vec<PolynomialF> = (0..kept.len())
        .map(|i| f.frobenius_on_coeffs(i as i64))
        .collect();
    // orbit_i = sum_r mu_r^(q^i) a_r, so a = M^-1 * orbit
    let mut out = Vec::with_capacity(kept.len());
    for r in 0..kept.len() {
        let a = orbit
            .iter()
            .enumerate()
            .fold(PolynomialF::zero(field, f.nvars()), |acc, (i, p)| {
                acc.add(&p.scale(inv.get(r, i)))
            });
        let rational = a
            .pull_back(&emb)
            .ok_or(Error::Verification("descended element is not F_q-rational"))?;
        if rational != components[kept[r]] {
            return Err(Error::Verification(
                "Moore inversion disagrees with the basis expansion",
            ));
        }
        out.push(rational);
    }

    let extended: Vec<PolynomialF> = out.iter().map(|a| a.embed(&emb)).collect();
    if !same_span(field, &extended, &orbit) {
        return Err(Error::Verification("span of descended elements"));
    }
    Ok(out)
}

fn support(polys: &[PolynomialF]) -> Vec<Exponent> {
    let mut mons: Vec<Exponent> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e.clone()))
        .collect();
    mons.sort();
    mons.dedup();
    mons
}

/// Whether two families of polynomials span the same space.
pub fn same_span(field: &Field, a: &[PolynomialF], b: &[PolynomialF]) -> bool {
    let all: Vec<PolynomialF> = a.iter().chain(b).cloned().collect();
    let mons = support(&all);
    let rows = |ps: &[PolynomialF]| -> Vec<Vec<FieldElement>> {
        ps.iter().map(|p| p.coefficients_in(&mons)).collect()
    };
    let (ra, rb, rall) = (rows(a), rows(b), rows(&all));
    let r = rank_of(field, &rall);
    rank_of(field, &ra) == r && rank_of(field, &rb) == r
}

/// Degree-truncated homogeneous ideal: graded pieces `I_0, ..., I_D`, each
/// kept as echelon rows against [`homogeneous_monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdealTrunc {
    field: Field,
    nvars: usize,
    max_degree: u32,
    components: Vec<Vec<Vec<FieldElement>>>,
}

impl GradedIdealTrunc {
    /// The truncation of the ideal generated by homogeneous `generators`.
    pub fn from_generators(
        field: &Field,
        nvars: usize,
        max_degree: u32,
        generators: &[PolynomialF],
    ) -> Result<Self> {
        let mut pieces: Vec<Vec<PolynomialF>> = vec![Vec::new(); max_degree as usize + 1];
        for g in generators {
            check_poly(field, nvars, g)?;
            if g.is_zero() {
                continue;
            }
            let d = g.degree().expect("nonzero");
            if d <= max_degree {
                pieces[d as usize].push(g.clone());
            }
        }
        let mut components: Vec<Vec<Vec<FieldElement>>> = Vec::with_capacity(pieces.len());
        for d in 0..=max_degree {
            let mons = homogeneous_monomials(nvars, d);
            let mut rows: Vec<Vec<FieldElement>> = pieces[d as usize]
                .iter()
                .map(|p| p.coefficients_in(&mons))
                .collect();
            if d > 0 {
                let below = homogeneous_monomials(nvars, d - 1);
                for row in &components[d as usize - 1] {
                    let p = PolynomialF::from_coefficients(field, &below, row);
                    for i in 0..nvars {
                        rows.push(
                            p.mul(&PolynomialF::var(field, nvars, i))
                                .coefficients_in(&mons),
                        );
                    }
                }
            }
            components.push(echelon(field, mons.len(), rows));
        }
        Ok(GradedIdealTrunc {
            field: field.clone(),
            nvars,
            max_degree,
            components,
        })
    }

    /// Explicit graded pieces; `pieces[d]` spans `I_d`. Rejects families not
    /// closed under multiplication by the variables.
    pub fn from_components(
        field: &Field,
        nvars: usize,
        pieces: Vec<Vec<PolynomialF>>,
    ) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument(
                "need at least the degree-0 piece".into(),
            ));
        }
        let max_degree = pieces.len() as u32 - 1;
        let mut components = Vec::with_capacity(pieces.len());
        for (d, piece) in pieces.iter().enumerate() {
            let mons = homogeneous_monomials(nvars, d as u32);
            let mut rows = Vec::with_capacity(piece.len());
            for p in piece {
                check_poly(field, nvars, p)?;
                if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(d as u32)) {
                    return Err(Error::InvalidArgument(format!(
                        "piece {d} holds a polynomial of another degree"
                    )));
                }
                rows.push(p.coefficients_in(&mons));
            }
            components.push(echelon(field, mons.len(), rows));
        }
        let ideal = GradedIdealTrunc {
            field: field.clone(),
            nvars,
            max_degree,
            components,
        };
        if !ideal.is_closed() {
            return Err(Error::InvalidArgument(
                "pieces are not closed under multiplication by variables".into(),
            ));
        }
        Ok(ideal)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Echelon rows of `I_d` against `homogeneous_monomials(nvars, d)`.
    pub fn component_rows(&self, d: u32) -> &[Vec<FieldElement>] {
        &self.components[d as usize]
    }

    /// Echelon basis of `I_d` as polynomials.
    pub fn component(&self, d: u32) -> Vec<PolynomialF> {
        let mons = homogeneous_monomials(self.nvars, d);
        self.components[d as usize]
            .iter()
            .map(|row| PolynomialF::from_coefficients(&self.field, &mons, row))
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// `x_i I_d` is contained in `I_(d+1)` for every `d < D`.
    pub fn is_closed(&self) -> bool {
        (0..self.max_degree).all(|d| {
            let upper = self.component(d + 1);
            let mons = homogeneous_monomials(self.nvars, d + 1);
            let base: Vec<_> = upper.iter().map(|p| p.coefficients_in(&mons)).collect();
            let r = base.len();
            self.component(d).iter().all(|p| {
                (0..self.nvars).all(|i| {
                    let mut rows = base.clone();
                    rows.push(
                        p.mul(&PolynomialF::var(&self.field, self.nvars, i))
                            .coefficients_in(&mons),
                    );
                    rank_of(&self.field, &rows) == r
                })
            })
        })
    }

    /// Componentwise extension of scalars.
    pub fn embed(&self, target: &Field) -> Result<Self> {
        let emb = self.field.embedding_into(target)?;
        Ok(GradedIdealTrunc {
            field: target.clone(),
            nvars: self.nvars,
            max_degree: self.max_degree,
            components: self
                .components
                .iter()
                .map(|rows| {
                    rows.iter()
                        .map(|r| r.iter().map(|x| emb.apply(x)).collect())
                        .collect()
                })
                .collect(),
        })
    }
}

fn check_poly(field: &Field, nvars: usize, p: &PolynomialF) -> Result<()> {
    if p.field() != field {
        return Err(Error::FieldMismatch);
    }
    if p.nvars() != nvars {
        return Err(Error::InvalidArgument(format!(
            "expected {nvars} variables, got {}",
            p.nvars()
        )));
    }
    if !p.is_homogeneous() {
        return Err(Error::InvalidArgument(
            "ideal generators must be homogeneous".into(),
        ));
    }
    Ok(())
}

fn echelon(field: &Field, width: usize, rows: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    if rows.is_empty() || width == 0 {
        return Vec::new();
    }
    MatrixF::from_rows(field, rows)
        .expect("equal widths")
        .row_space_basis()
}

/// Descends a Frobenius-stable truncated ideal: `J_d` is the fixed space
/// of `phi` on `I_d`, an `F_q`-space with `J_d (x) F_q^m = I_d`.
///
/// Fails with [`Error::NotStable`] carrying the first degree and element of
/// `phi(I_d)` outside `I_d`.
pub fn graded_ideal_descent(ideal: &GradedIdealTrunc) -> Result<GradedIdealTrunc> {
    let field = ideal.field();
    let fq = field.base_field();
    let emb = fq.embedding_into(field)?;
    let mut components = Vec::with_capacity(ideal.components.len());
    for d in 0..=ideal.max_degree {
        let rows = ideal.component_rows(d);
        let k = rows.len();
        let r = rank_of(field, rows);
        for row in rows {
            let image: Vec<_> = row.iter().map(|x| x.frobenius(1)).collect();
            let mut with = rows.to_vec();
            with.push(image.clone());
            if rank_of(field, &with) != r {
                let mons = homogeneous_monomials(ideal.nvars, d);
                return Err(Error::NotStable {
                    degree: d,
                    witness: PolynomialF::from_coefficients(field, &mons, &image),
                });
            }
        }
        if k == 0 {
            components.push(Vec::new());
            continue;
        }
        let width = rows[0].len();
        let combine = |c: &[FieldElement]| -> Vec<FieldElement> {
            (0..width)
                .map(|j| {
                    c.iter()
                        .zip(rows)
                        .fold(field.zero(), |s, (ci, row)| &s + &(ci * &row[j]))
                })
                .collect()
        };
        // coefficient vectors c with phi(sum c_i b_i) = sum c_i b_i
        let span: Vec<Vec<FieldElement>> = fp_kernel(field, k, |c| {
            let v = combine(c);
            v.iter().map(|x| &x.frobenius(1) - x).collect()
        })
        .iter()
        .map(|c| combine(c))
        .collect();
        let fixed = fq_basis_from_span(field, &span);
        let rational = fixed
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| emb.preimage(x))
                    .collect::<Option<Vec<_>>>()
                    .ok_or(Error::Verification("fixed vector is not F_q-rational"))
            })
            .collect::<Result<Vec<_>>>()?;
        let j = echelon(&fq, width, rational);
        let extended: Vec<Vec<FieldElement>> = j
            .iter()
            .map(|row| row.iter().map(|x| emb.apply(x)).collect())
            .collect();
        if extended.len() != k || echelon(field, width, extended) != rows {
            return Err(Error::Verification("descended piece does not span I_d"));
        }
        components.push(j);
    }
    Ok(GradedIdealTrunc {
        field: fq,
        nvars: ideal.nvars,
        max_degree: ideal.max_degree,
        components,
    })
}
