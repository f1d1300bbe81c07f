use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{fp, Field};
use crate::error::{Error, Result};

/// An element of a [`Field`], stored as its coordinates over `F_p` in the
/// power basis of the generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    coords: Vec<u32>,
}

impl FieldElement {
    pub(crate) fn from_raw(field: &Field, coords: Vec<u32>) -> Self {
        debug_assert_eq!(coords.len(), field.degree());
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_coords(field: &Field, coords: &[u32]) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        if coords.iter().any(|&c| c >= field.p()) {
            return Err(Error::InvalidArgument(format!(
                "coordinates must be reduced modulo {}",
                field.p()
            )));
        }
        Ok(Self::from_raw(field, coords.to_vec()))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_raw(field, vec![0; field.degree()])
    }

    pub fn one(field: &Field) -> Self {
        let mut c = vec![0; field.degree()];
        c[0] = 1;
        Self::from_raw(field, c)
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        let mut c = vec![0; field.degree()];
        c[0] = n.rem_euclid(field.p() as i64) as u32;
        Self::from_raw(field, c)
    }

    /// Inverse of [`FieldElement::index`].
    pub fn from_index(field: &Field, mut index: u128) -> Self {
        let p = field.p() as u128;
        let coords = (0..field.degree())
            .map(|_| {
                let c = (index % p) as u32;
                index /= p;
                c
            })
            .collect();
        Self::from_raw(field, coords)
    }

    /// `sum_i c_i p^i`; the total order used for every canonical choice.
    pub fn index(&self) -> u128 {
        let p = self.field.p() as u128;
        self.coords
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "field mismatch: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn pow(&self, e: u128) -> Self {
        Self::from_raw(&self.field, self.field.abs.pow_raw(&self.coords, e))
    }

    /// `x^n` for any integer `n`; `None` for a negative power of zero.
    pub fn pow_signed(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u128))
        } else {
            self.inv().map(|i| i.pow(n.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.p();
        let f = &self.field.abs.modulus;
        // extended Euclid in F_p[t]
        let mut r0: Vec<u32> = f.clone();
        let mut r1: Vec<u32> = self.coords.clone();
        fp::poly_trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while r1.len() > 1 {
            let (quot, rem) = divrem(&r0, &r1, p);
            let prod = poly_mul(&quot, &s1, p);
            let s2 = poly_sub(&s0, &prod, p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant
        let c = fp::inv(r1[0], p);
        let mut out = vec![0u32; self.field.degree()];
        let s1 = divrem(&s1, f, p).1;
        for (o, s) in out.iter_mut().zip(s1) {
            *o = fp::mul(s, c, p);
        }
        Some(Self::from_raw(&self.field, out))
    }

    /// `x^(q^s)`, the `s`-th power of the `q`-Frobenius.
    pub fn frobenius(&self, s: i64) -> Self {
        let j = s * self.field.q_exponent() as i64;
        self.abs_frobenius(j)
    }

    /// `x^(p^j)`.
    pub fn abs_frobenius(&self, j: i64) -> Self {
        Self::from_raw(&self.field, self.field.abs.frob_raw(&self.coords, j))
    }

    /// Multiplicative order; panics on zero.
    pub fn multiplicative_order(&self) -> u128 {
        assert!(!self.is_zero());
        let n = self.field.order().expect("field too large") - 1;
        let mut order = n;
        let mut rest = n;
        let mut d = 2u128;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
                while order.is_multiple_of(d) && self.pow(order / d).is_one() {
                    order /= d;
                }
            }
            d += 1;
        }
        if rest > 1 && order.is_multiple_of(rest) && self.pow(order / rest).is_one() {
            order /= rest;
        }
        order
    }
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp::add(out[i + j], fp::mul(x, y, p), p);
        }
    }
    fp::poly_trim(&mut out);
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            fp::sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    fp::poly_trim(&mut out);
    out
}

fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    fp::poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp::inv(b[db], p);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = fp::mul(r[top], lead_inv, p);
        let shift = top - db;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = fp::sub(r[shift + i], fp::mul(c, bi, p), p);
        }
        r.pop();
        fp::poly_trim(&mut r);
    }
    fp::poly_trim(&mut q);
    (q, r)
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords
            .iter()
            .rev()
            .cmp(other.coords.iter().rev())
            .then_with(|| self.coords.len().cmp(&other.coords.len()))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p();
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| fp::add(a, b, p))
            .collect();
        FieldElement::from_raw(&self.field, coords)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p();
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| fp::sub(a, b, p))
            .collect();
        FieldElement::from_raw(&self.field, coords)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement::from_raw(
            &self.field,
            self.field.abs.mul_raw(&self.coords, &rhs.coords),
        )
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let coords = self.coords.iter().map(|&a| fp::neg(a, p)).collect();
        FieldElement::from_raw(&self.field, coords)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial in the generator `g`, highest power first; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "g")?,
                (1, c) => write!(f, "{c}g")?,
                (i, 1) => write!(f, "g^{i}")?,
                (i, c) => write!(f, "{c}g^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}
