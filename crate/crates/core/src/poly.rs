//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{EmbeddingMap, Field, FieldElement};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Polynomial in `nvars` variables. Terms are keyed by exponent vector and
/// never hold a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolynomialF {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exponent, FieldElement>,
}

/// All exponent vectors of total degree `d` in `nvars` variables, ordered
/// so that `x_0^d` comes first (descending lexicographic).
pub fn homogeneous_monomials(nvars: usize, d: u32) -> Vec<Exponent> {
    fn rec(nvars: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

impl PolynomialF {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        PolynomialF {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElement) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    pub fn monomial(field: &Field, exponent: Exponent, c: FieldElement) -> Self {
        assert_eq!(c.field(), field);
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        PolynomialF {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} in a {nvars}-variable polynomial",
                    e.len()
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> FieldElement {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::InvalidArgument("variable counts differ".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Panicking variants for internal use where compatibility is known.
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("compatible polynomials")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("compatible polynomials")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("compatible polynomials")
    }

    pub fn neg(&self) -> Self {
        PolynomialF {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument("wrong number of coordinates".into()));
        }
        if point.iter().any(|x| x.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k as u128);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Applies `x -> x^(q^s)` to every coefficient, fixing monomials.
    pub fn frobenius_on_coeffs(&self, s: i64) -> Self {
        PolynomialF {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.frobenius(s)))
                .collect(),
        }
    }

    pub fn embed(&self, emb: &EmbeddingMap) -> Self {
        assert_eq!(emb.source(), &self.field);
        PolynomialF {
            field: emb.target().clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), emb.apply(c)))
                .collect(),
        }
    }

    /// Preimage under `emb` when every coefficient lies in its image.
    pub fn pull_back(&self, emb: &EmbeddingMap) -> Option<Self> {
        assert_eq!(emb.target(), &self.field);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), emb.preimage(c)?);
        }
        Some(PolynomialF {
            field: emb.source().clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// Whether every coefficient lies in `F_q`.
    pub fn has_fq_coefficients(&self) -> bool {
        self.terms.values().all(|c| self.field.is_in_fq(c))
    }

    /// Coefficient vector against the given monomial list.
    pub fn coefficients_in(&self, monomials: &[Exponent]) -> Vec<FieldElement> {
        monomials.iter().map(|e| self.coefficient(e)).collect()
    }

    pub fn from_coefficients(
        field: &Field,
        monomials: &[Exponent],
        coeffs: &[FieldElement],
    ) -> Self {
        let nvars = monomials.first().map_or(0, Vec::len);
        let mut p = Self::zero(field, nvars);
        for (e, c) in monomials.iter().zip(coeffs) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

/// Which ring operation [`poly_arith`] performs.
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add,
    Mul,
    Eval(&'a [FieldElement]),
    FrobeniusOnCoeffs(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyValue {
    Polynomial(PolynomialF),
    Scalar(FieldElement),
}

/// Binary and unary polynomial operations behind one entry point. `b` is
/// ignored by the unary operations.
pub fn poly_arith(a: &PolynomialF, b: Option<&PolynomialF>, op: PolyOp<'_>) -> Result<PolyValue> {
    let need_b = || b.ok_or_else(|| Error::InvalidArgument("second operand required".into()));
    Ok(match op {
        PolyOp::Add => PolyValue::Polynomial(a.checked_add(need_b()?)?),
        PolyOp::Mul => PolyValue::Polynomial(a.checked_mul(need_b()?)?),
        PolyOp::Eval(pt) => PolyValue::Scalar(a.eval(pt)?),
        PolyOp::FrobeniusOnCoeffs(s) => PolyValue::Polynomial(a.frobenius_on_coeffs(s)),
    })
}

impl fmt::Display for PolynomialF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}
