//! Finite fields `F_{q^m}` realized as `F_p[t]/(f)` with a designated
//! intermediate field `F_q`, `q = p^k`.
//!
//! Every field of a given absolute degree over `F_p` is built from the same
//! modulus (the least irreducible polynomial in base-`p` order), so two
//! `Field` values with equal `(p, k, m)` share identical data. Subfield
//! embeddings are chosen compatibly along the divisor lattice; see
//! [`embedding`].

mod element;
pub mod embedding;
pub mod fp;
pub(crate) mod upoly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use element::FieldElement;
pub use embedding::EmbeddingMap;
pub use fp::FpMatrix;

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// Upper bound on the absolute degree `[F : F_p]` of any field the crate
/// will construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeCap(pub usize);

impl Default for DegreeCap {
    fn default() -> Self {
        DegreeCap(DEFAULT_DEGREE_CAP)
    }
}

impl DegreeCap {
    pub fn check(self, degree: usize) -> Result<()> {
        if degree > self.0 {
            Err(Error::CapacityExceeded {
                degree,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// Data shared by every `Field` with the same `p` and absolute degree.
pub(crate) struct AbsField {
    pub(crate) p: u32,
    pub(crate) degree: usize,
    /// Monic, low degree first, length `degree + 1`.
    pub(crate) modulus: Vec<u32>,
    /// `t^(degree + i) mod modulus` for `i < degree - 1`.
    reduction: Vec<Vec<u32>>,
    /// Matrix of `x -> x^(p^j)` in the power basis, `j < degree`.
    frob: Vec<FpMatrix>,
}

impl AbsField {
    fn build(p: u32, degree: usize) -> Self {
        let modulus = fp::least_irreducible(degree, p);
        let mut reduction = Vec::with_capacity(degree.saturating_sub(1));
        if degree > 1 {
            let mut cur: Vec<u32> = modulus[..degree].iter().map(|&c| fp::neg(c, p)).collect();
            reduction.push(cur.clone());
            for _ in 1..degree - 1 {
                let top = cur[degree - 1];
                let mut next = vec![0u32; degree];
                for i in (1..degree).rev() {
                    next[i] = cur[i - 1];
                }
                for i in 0..degree {
                    next[i] = fp::sub(next[i], fp::mul(top, modulus[i], p), p);
                }
                cur = next;
                reduction.push(cur.clone());
            }
        }
        let mut abs = AbsField {
            p,
            degree,
            modulus,
            reduction,
            frob: Vec::new(),
        };
        let cols: Vec<Vec<u32>> = (0..degree)
            .map(|i| {
                let mut e = vec![0u32; degree];
                e[i] = 1;
                abs.pow_raw(&e, p as u128)
            })
            .collect();
        let frob1 = FpMatrix::from_columns(p, degree, &cols);
        let mut frob = vec![FpMatrix::identity(p, degree)];
        for j in 1..degree {
            let next = frob1.mul(&frob[j - 1]);
            frob.push(next);
        }
        abs.frob = frob;
        abs
    }

    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.degree;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] += ai as u64 * bj as u64;
            }
            if i % 8 == 7 {
                for x in prod.iter_mut() {
                    *x %= p;
                }
            }
        }
        for x in prod.iter_mut() {
            *x %= p;
        }
        let mut out: Vec<u64> = prod[..n].to_vec();
        for (i, row) in self.reduction.iter().enumerate() {
            let c = prod[n + i];
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = (*o + c * r as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub(crate) fn pow_raw(&self, a: &[u32], mut e: u128) -> Vec<u32> {
        let mut result = vec![0u32; self.degree];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_raw(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        result
    }

    /// `x -> x^(p^j)` for any integer `j`.
    pub(crate) fn frob_raw(&self, a: &[u32], j: i64) -> Vec<u32> {
        let j = j.rem_euclid(self.degree as i64) as usize;
        if j == 0 {
            return a.to_vec();
        }
        self.frob[j].mul_vec(a)
    }
}

fn abs_field(p: u32, degree: usize) -> Arc<AbsField> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, usize), Arc<AbsField>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(f) = memo.lock().unwrap().get(&(p, degree)) {
        return f.clone();
    }
    let built = Arc::new(AbsField::build(p, degree));
    memo.lock()
        .unwrap()
        .entry((p, degree))
        .or_insert(built)
        .clone()
}

/// The field `F_{q^m}` with `q = p^k`, stored over `F_p`.
#[derive(Clone)]
pub struct Field {
    pub(crate) abs: Arc<AbsField>,
    k: u32,
    m: u32,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.abs.p == other.abs.p && self.k == other.k && self.m == other.m
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.abs.p, self.k, self.m).hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(p={}, q={}, m={})", self.p(), self.q(), self.m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.q())
        } else {
            write!(f, "F_{}^{}", self.q(), self.m)
        }
    }
}

impl Field {
    /// `F_{q^m}` with `q = p^q_exponent`, under the default degree cap.
    pub fn new(p: u32, q_exponent: u32, m: u32) -> Result<Field> {
        Self::with_cap(p, q_exponent, m, DegreeCap::default())
    }

    pub fn with_cap(p: u32, q_exponent: u32, m: u32, cap: DegreeCap) -> Result<Field> {
        if !fp::is_prime(p) || p >= 1 << 16 {
            return Err(Error::InvalidArgument(format!(
                "characteristic must be a prime below 65536, got {p}"
            )));
        }
        if q_exponent == 0 || m == 0 {
            return Err(Error::InvalidArgument(
                "q exponent and extension degree must be positive".into(),
            ));
        }
        let degree = q_exponent as usize * m as usize;
        cap.check(degree)?;
        Ok(Field {
            abs: abs_field(p, degree),
            k: q_exponent,
            m,
        })
    }

    /// `F_q^m` for a prime power `q`.
    pub fn from_q(q: u64, m: u32) -> Result<Field> {
        let (p, k) = fp::prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        Field::new(p, k, m)
    }

    pub fn p(&self) -> u32 {
        self.abs.p
    }

    pub fn q_exponent(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        (self.abs.p as u64).pow(self.k)
    }

    /// Degree over `F_q`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree over `F_p`.
    pub fn degree(&self) -> usize {
        self.abs.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.abs.modulus
    }

    /// Number of elements, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.abs.p as u128).checked_pow(self.abs.degree as u32)
    }

    pub fn base_field(&self) -> Field {
        Field {
            abs: abs_field(self.p(), self.k as usize),
            k: self.k,
            m: 1,
        }
    }

    pub fn prime_field(&self) -> Field {
        Field {
            abs: abs_field(self.p(), 1),
            k: 1,
            m: 1,
        }
    }

    /// Same absolute field with `q` replaced by `q^s` (requires `s | m`).
    pub fn with_q_power(&self, s: u32) -> Result<Field> {
        if s == 0 || !self.m.is_multiple_of(s) {
            return Err(Error::InvalidArgument(format!(
                "cannot regard q^{s} as the base of a degree-{} extension",
                self.m
            )));
        }
        Ok(Field {
            abs: self.abs.clone(),
            k: self.k * s,
            m: self.m / s,
        })
    }

    /// The degree-`e` extension `F_{q^{me}}` and the canonical embedding.
    pub fn extend(&self, e: u32, cap: DegreeCap) -> Result<(Field, EmbeddingMap)> {
        if e == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        let target = Field::with_cap(self.p(), self.k, self.m * e, cap)?;
        let emb = self.embedding_into(&target)?;
        Ok((target, emb))
    }

    /// The canonical embedding into a field whose absolute degree is a
    /// multiple of this one.
    pub fn embedding_into(&self, target: &Field) -> Result<EmbeddingMap> {
        EmbeddingMap::canonical(self, target)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(self)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self)
    }

    /// The root `g` of the modulus.
    pub fn generator(&self) -> FieldElement {
        let mut c = vec![0u32; self.degree()];
        if self.degree() == 1 {
            // the root of t + c0 is -c0
            c[0] = fp::neg(self.abs.modulus[0], self.p());
        } else {
            c[1] = 1;
        }
        FieldElement::from_raw(self, c)
    }

    pub fn element(&self, coords: &[u32]) -> Result<FieldElement> {
        FieldElement::from_coords(self, coords)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(self, n)
    }

    pub fn from_index(&self, index: u128) -> FieldElement {
        FieldElement::from_index(self, index)
    }

    /// All elements in index order. Panics if the field is too large to
    /// enumerate.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.order().expect("field too large to enumerate");
        (0..n).map(move |i| self.from_index(i))
    }

    /// The distinguished `F_q`-basis `1, g, ..., g^(m-1)`.
    pub fn fq_basis(&self) -> Vec<FieldElement> {
        let g = self.generator();
        let mut out = Vec::with_capacity(self.m as usize);
        let mut cur = self.one();
        for _ in 0..self.m {
            out.push(cur.clone());
            cur = &cur * &g;
        }
        out
    }

    /// Whether `x` lies in the subfield `F_q`.
    pub fn is_in_fq(&self, x: &FieldElement) -> bool {
        x.frobenius(1) == *x
    }

    /// Coordinates of `x` in the distinguished `F_q`-basis, as elements of
    /// `F_q`.
    pub fn fq_coordinates(&self, x: &FieldElement) -> Result<Vec<FieldElement>> {
        if x.field() != self {
            return Err(Error::FieldMismatch);
        }
        let fq = self.base_field();
        let emb = fq.embedding_into(self)?;
        let k = self.k as usize;
        let basis = self.fq_basis();
        let mut columns = Vec::with_capacity(self.degree());
        for b in &basis {
            for j in 0..k {
                let mut e = vec![0u32; k];
                e[j] = 1;
                let c = FieldElement::from_raw(&fq, e);
                columns.push((&emb.apply(&c) * b).coords().to_vec());
            }
        }
        let mat = FpMatrix::from_columns(self.p(), self.degree(), &columns);
        let sol = mat
            .solve(x.coords())
            .ok_or(Error::Verification("distinguished basis is not a basis"))?;
        Ok(sol
            .chunks(k)
            .map(|c| FieldElement::from_raw(&fq, c.to_vec()))
            .collect())
    }
}
