use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::MatrixF;

/// A finite-dimensional associative unital `F_q`-algebra, given by
/// structure constants in a fixed basis `e_0, ..., e_(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    field: Field,
    /// `constants[i][j]` holds the coordinates of `e_i * e_j`.
    constants: Vec<Vec<Vec<FieldElement>>>,
    unit: Vec<FieldElement>,
}

impl FinAlgebra {
    /// Validates shapes, associativity and the unit.
    pub fn new(
        field: &Field,
        constants: Vec<Vec<Vec<FieldElement>>>,
        unit: Vec<FieldElement>,
    ) -> Result<Self> {
        if field.m() != 1 {
            return Err(Error::InvalidArgument(format!(
                "structure constants must lie in F_q, got {field}"
            )));
        }
        let d = unit.len();
        if d == 0 {
            return Err(Error::InvalidArgument("algebra of dimension 0".into()));
        }
        let shapes_ok = constants.len() == d
            && constants
                .iter()
                .all(|row| row.len() == d && row.iter().all(|c| c.len() == d));
        if !shapes_ok {
            return Err(Error::InvalidArgument(
                "structure constants must be d x d x d".into(),
            ));
        }
        let all_in_field = constants
            .iter()
            .flatten()
            .flatten()
            .chain(&unit)
            .all(|c| c.field() == field);
        if !all_in_field {
            return Err(Error::FieldMismatch);
        }
        let alg = FinAlgebra {
            field: field.clone(),
            constants,
            unit,
        };
        let basis: Vec<Vec<FieldElement>> = (0..d).map(|i| alg.basis_vector(i)).collect();
        for a in &basis {
            if alg.mul(&alg.unit, a) != *a || alg.mul(a, &alg.unit) != *a {
                return Err(Error::InvalidArgument(
                    "unit is not a two-sided identity".into(),
                ));
            }
            for b in &basis {
                let ab = alg.mul(a, b);
                for c in &basis {
                    if alg.mul(&ab, c) != alg.mul(a, &alg.mul(b, c)) {
                        return Err(Error::InvalidArgument(
                            "multiplication is not associative".into(),
                        ));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// `F_q` itself.
    pub fn base(fq: &Field) -> Result<Self> {
        Self::new(fq, vec![vec![vec![fq.one()]]], vec![fq.one()])
    }

    /// `F_q[t]/(f)` for monic `f = t^d + c_(d-1) t^(d-1) + ... + c_0`, given
    /// as `[c_0, ..., c_(d-1)]`, in the basis `1, t, ..., t^(d-1)`.
    pub fn monogenic(fq: &Field, lower_coeffs: &[FieldElement]) -> Result<Self> {
        let d = lower_coeffs.len();
        if d == 0 {
            return Err(Error::InvalidArgument(
                "need a polynomial of degree >= 1".into(),
            ));
        }
        // t^k reduced, for k < 2d - 1
        let mut powers: Vec<Vec<FieldElement>> = Vec::with_capacity(2 * d);
        for k in 0..2 * d - 1 {
            let v = if k < d {
                let mut v = vec![fq.zero(); d];
                v[k] = fq.one();
                v
            } else {
                let prev = &powers[k - 1];
                let top = prev[d - 1].clone();
                let mut v = vec![fq.zero(); d];
                v[1..d].clone_from_slice(&prev[..d - 1]);
                for i in 0..d {
                    v[i] = &v[i] - &(&top * &lower_coeffs[i]);
                }
                v
            };
            powers.push(v);
        }
        let constants = (0..d)
            .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut unit = vec![fq.zero(); d];
        unit[0] = fq.one();
        Self::new(fq, constants, unit)
    }

    /// `F_q[eps]/(eps^2)`.
    pub fn dual_numbers(fq: &Field) -> Result<Self> {
        Self::monogenic(fq, &[fq.zero(), fq.zero()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[FieldElement] {
        &self.unit
    }

    pub fn constants(&self) -> &[Vec<Vec<FieldElement>>] {
        &self.constants
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (o, c) in out.iter_mut().zip(&self.constants[i][j]) {
                    *o = &*o + &(&s * c);
                }
            }
        }
        out
    }

    /// Matrix of `x -> e_i x` over `F_q`.
    pub fn left_multiplication(&self, i: usize) -> MatrixF {
        let d = self.dim();
        MatrixF::from_fn(&self.field, d, d, |r, c| self.constants[i][c][r].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_square_to_zero() {
        let f2 = Field::new(2, 1, 1).unwrap();
        let a = FinAlgebra::dual_numbers(&f2).unwrap();
        let eps = a.basis_vector(1);
        assert!(a.mul(&eps, &eps).iter().all(FieldElement::is_zero));
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn inconsistent_unit_is_rejected() {
        let f3 = Field::new(3, 1, 1).unwrap();
        let (z, o) = (f3.zero(), f3.one());
        // e1 e0 = 0 contradicts e0 being the unit
        let constants = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), z.clone()], vec![z.clone(), o.clone()]],
        ];
        assert!(FinAlgebra::new(&f3, constants, vec![o, z]).is_err());
    }

    #[test]
    fn monogenic_cubic() {
        let f2 = Field::new(2, 1, 1).unwrap();
        // F_2[t]/(t^3 + t + 1) = F_8
        let a = FinAlgebra::monogenic(&f2, &[f2.one(), f2.one(), f2.zero()]).unwrap();
        let t = a.basis_vector(1);
        let t3 = a.mul(&a.mul(&t, &t), &t);
        assert_eq!(t3, vec![f2.one(), f2.one(), f2.zero()]);
        assert!(FinAlgebra::monogenic(&Field::new(2, 1, 2).unwrap(), &[f2.one()]).is_err());
    }
}
