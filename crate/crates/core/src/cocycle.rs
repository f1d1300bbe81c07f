//! Units `lambda x^t` of `F_{q^m}[x, x^-1]` and the Frobenius coboundary
//! `u -> u / phi(u)`, whose cokernel is the group of isomorphism classes of
//! Frobenius-twisted line bundles on the punctured line.
//!
//! Over an algebraically closed field the scalar part of the cokernel
//! vanishes and only the `Z` spanned by the class of `x` survives; over a
//! finite field the scalars leave a cyclic torsion part of order `q - 1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Fields up to this many elements are handled by enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 16;

/// `lambda * x^t` with `lambda != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentUnit {
    lambda: FieldElement,
    t: i64,
}

impl LaurentUnit {
    pub fn new(lambda: FieldElement, t: i64) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument(
                "a unit needs a nonzero scalar".into(),
            ));
        }
        Ok(LaurentUnit { lambda, t })
    }

    pub fn one(field: &Field) -> Self {
        LaurentUnit {
            lambda: field.one(),
            t: 0,
        }
    }

    /// The unit `x`.
    pub fn x(field: &Field) -> Self {
        LaurentUnit {
            lambda: field.one(),
            t: 1,
        }
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn field(&self) -> &Field {
        self.lambda.field()
    }

    pub fn mul(&self, other: &LaurentUnit) -> LaurentUnit {
        LaurentUnit {
            lambda: &self.lambda * &other.lambda,
            t: self.t + other.t,
        }
    }

    pub fn inv(&self) -> LaurentUnit {
        LaurentUnit {
            lambda: self.lambda.inv().expect("nonzero"),
            t: -self.t,
        }
    }

    /// `phi(lambda x^t) = lambda^q x^t`.
    pub fn frobenius(&self) -> LaurentUnit {
        LaurentUnit {
            lambda: self.lambda.frobenius(1),
            t: self.t,
        }
    }
}

/// `u * phi(u)^-1 = (lambda^(1-q), 0)`.
pub fn coboundary(u: &LaurentUnit) -> LaurentUnit {
    u.mul(&u.frobenius().inv())
}

fn check_enumerable(field: &Field) -> Result<u128> {
    match field.order() {
        Some(n) if n <= ENUMERATION_LIMIT => Ok(n),
        _ => {
            let max_degree = (16.0 / (field.p() as f64).log2()).floor() as usize;
            Err(Error::CapacityExceeded {
                degree: field.degree(),
                cap: max_degree,
            })
        }
    }
}

/// Discrete logarithms in `F_{q^m}^*` by a full table.
struct LogTable {
    generator: FieldElement,
    /// `log[index(x)]`, unused at index 0.
    log: Vec<u64>,
    group_order: u64,
}

impl LogTable {
    fn new(field: &Field) -> Result<Self> {
        let n = check_enumerable(field)?;
        let group_order = (n - 1) as u64;
        let generator = field
            .elements()
            .skip(1)
            .find(|x| x.multiplicative_order() == group_order as u128)
            .expect("the multiplicative group is cyclic");
        let mut log = vec![0u64; n as usize];
        let mut cur = field.one();
        for k in 0..group_order {
            log[cur.index() as usize] = k;
            cur = &cur * &generator;
        }
        Ok(LogTable {
            generator,
            log,
            group_order,
        })
    }

    fn log(&self, x: &FieldElement) -> u64 {
        self.log[x.index() as usize]
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cokernel of [`coboundary`] on the units of `F_{q^m}[x, x^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardCokernel {
    pub q: u64,
    pub m: u32,
    /// Order of the scalar (torsion) part.
    pub torsion_order: u64,
    /// Rank of the free part, spanned by the class of `x`.
    pub free_rank: u32,
    /// Number of distinct scalar coboundaries.
    pub image_size: u64,
    /// Primitive element used for discrete logarithms.
    pub generator: FieldElement,
    /// `(gamma^k, 0)` for `k < torsion_order`, followed by `x`.
    pub representatives: Vec<LaurentUnit>,
    /// No unit has coboundary `x`.
    pub x_class_nontrivial: bool,
}

/// Enumerates `F_{q^m}^*`, collects the coboundaries and reads off the
/// cokernel.
pub fn picard_cokernel(q: u64, m: u32) -> Result<PicardCokernel> {
    let field = Field::from_q(q, m)?;
    let table = LogTable::new(&field)?;
    let x = LaurentUnit::x(&field);
    let mut image = BTreeSet::new();
    let mut x_hit = false;
    for lambda in field.elements().skip(1) {
        // t is arbitrary: it cancels, so t = 1 covers the whole orbit
        let b = coboundary(&LaurentUnit::new(lambda, 1)?);
        x_hit |= b == x;
        image.insert(b.lambda.index());
    }
    let image_size = image.len() as u64;
    if table.group_order % image_size != 0 {
        return Err(Error::Verification("image is not a subgroup"));
    }
    let torsion_order = table.group_order / image_size;
    let mut representatives: Vec<LaurentUnit> = (0..torsion_order)
        .map(|k| LaurentUnit {
            lambda: table.generator.pow(k as u128),
            t: 0,
        })
        .collect();
    representatives.push(x);
    Ok(PicardCokernel {
        q,
        m,
        torsion_order,
        free_rank: 1,
        image_size,
        generator: table.generator,
        representatives,
        x_class_nontrivial: !x_hit,
    })
}

/// Canonical representative of the class of `u`: the scalar part is
/// replaced by the power of the least primitive element with the least
/// exponent in the same coset; `t` is kept.
pub fn unit_class(u: &LaurentUnit) -> Result<LaurentUnit> {
    let field = u.field();
    let table = LogTable::new(field)?;
    // the image is generated by gamma^(1-q), of index gcd(q - 1, |F^*|)
    let d = gcd(field.q() - 1, table.group_order);
    let k = table.log(&u.lambda) % d;
    Ok(LaurentUnit {
        lambda: table.generator.pow(k as u128),
        t: u.t,
    })
}

/// The `(q-1)`-power map on the `(q-1)`-th roots of unity in `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuPowerReport {
    pub q: u64,
    pub m: u32,
    pub roots: Vec<FieldElement>,
    pub image: Vec<FieldElement>,
    pub surjective: bool,
}

pub fn mu_power_demo(q: u64, m: u32) -> Result<MuPowerReport> {
    let field = Field::from_q(q, m)?;
    check_enumerable(&field)?;
    let e = (q - 1) as u128;
    let roots: Vec<FieldElement> = field
        .elements()
        .skip(1)
        .filter(|x| x.pow(e).is_one())
        .collect();
    let image: BTreeSet<FieldElement> = roots.iter().map(|x| x.pow(e)).collect();
    let image: Vec<FieldElement> = image.into_iter().collect();
    Ok(MuPowerReport {
        q,
        m,
        surjective: image.len() == roots.len(),
        roots,
        image,
    })
}
