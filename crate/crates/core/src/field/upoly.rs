//! Univariate polynomials over a [`Field`], just enough to split a
//! polynomial that factors into distinct linear factors.

use super::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly {
    field: Field,
    /// Low degree first, no trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl UPoly {
    pub(crate) fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn x(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    fn constant(c: FieldElement) -> Self {
        let f = c.field().clone();
        Self::new(&f, vec![c])
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(&self.field, c)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(&self.field, c)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(&self.field, Vec::new());
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::new(&self.field, c)
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] * &lead_inv;
            let shift = top - dd;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * di);
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::new(&self.field, q), Self::new(&self.field, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let li = lead.inv().unwrap();
                Self::new(&self.field, self.coeffs.iter().map(|c| c * &li).collect())
            }
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn mulmod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut result = Self::constant(self.field.one()).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        result
    }

    /// Distinct roots of a polynomial that splits into distinct linear
    /// factors over its coefficient field (Cantor–Zassenhaus), sorted.
    pub(crate) fn split_roots(&self) -> Vec<FieldElement> {
        let mut roots = Vec::new();
        self.monic().split_into(&mut roots);
        roots.sort();
        roots
    }

    fn split_into(&self, roots: &mut Vec<FieldElement>) {
        match self.degree() {
            None | Some(0) => return,
            Some(1) => {
                roots.push(-&(&self.coeffs[0] * &self.coeffs[1].inv().unwrap()));
                return;
            }
            _ => {}
        }
        let field = &self.field;
        let p = field.p();
        let n = field.degree();
        // in characteristic 2 the basis t^i suffices: if Tr(t^i (r - s)) = 0
        // for all i then r = s. Otherwise walk the field in index order.
        let deltas: Box<dyn Iterator<Item = FieldElement>> = if p == 2 {
            let t = field.from_index(if n > 1 { 2 } else { 1 });
            Box::new(std::iter::successors(Some(field.one()), move |d| Some(d * &t)).take(n))
        } else {
            let order = field.order().expect("field too large");
            Box::new((1..order).map(|idx| field.from_index(idx)))
        };
        for delta in deltas {
            let splitter = if p == 2 {
                // absolute trace of delta * x
                let mut term = Self::constant(delta).mul(&Self::x(field)).rem(self);
                let mut acc = term.clone();
                for _ in 1..n {
                    term = term.mulmod(&term, self);
                    acc = acc.add(&term);
                }
                acc
            } else {
                // (x + delta)^((p^n - 1) / 2) = prod_j y^(p^j), y = (x + delta)^((p-1)/2)
                let w = Self::x(field).add(&Self::constant(delta));
                let mut y = w.powmod((p as u64 - 1) / 2, self);
                let mut acc = y.clone();
                for _ in 1..n {
                    y = y.powmod(p as u64, self);
                    acc = acc.mulmod(&y, self);
                }
                acc.sub(&Self::constant(field.one()))
            };
            let h = self.gcd(&splitter);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && Some(dh) < self.degree() {
                let (other, _) = self.divrem(&h);
                h.split_into(roots);
                other.monic().split_into(roots);
                return;
            }
        }
        unreachable!("polynomial does not split into distinct linear factors");
    }
}
