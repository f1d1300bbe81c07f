//! Dense matrices over a [`Field`] with exact Gaussian elimination.
//!
//! Echelon conventions: the pivot of each row is its first nonzero entry,
//! scaled to 1, and every other entry of a pivot column is cleared. All
//! bases returned from this module are in that reduced form.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{EmbeddingMap, Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixF {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixF over {} [", self.field)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl MatrixF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatrixF {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::InvalidArgument("ragged matrix rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                entries.push(e);
            }
        }
        Ok(MatrixF {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Builds a matrix from a generator function `(i, j) -> entry`.
    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.field(), field);
                entries.push(e);
            }
        }
        MatrixF {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn scalar(field: &Field, n: usize, c: &FieldElement) -> Self {
        Self::from_fn(
            field,
            n,
            n,
            |i, j| if i == j { c.clone() } else { field.zero() },
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.field(), &self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn add(&self, rhs: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixF {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixF {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MatrixF {
        MatrixF {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &MatrixF) -> MatrixF {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = MatrixF::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * rhs.get(l, j));
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &MatrixF) -> Result<MatrixF> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        Ok(self.mul(rhs))
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.field.zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> MatrixF {
        assert!(self.is_square());
        let mut result = MatrixF::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Entrywise `x -> x^(q^s)`.
    pub fn frobenius(&self, s: i64) -> MatrixF {
        MatrixF {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.frobenius(s)).collect(),
        }
    }

    /// Entrywise image under a field embedding.
    pub fn embed(&self, emb: &EmbeddingMap) -> MatrixF {
        assert_eq!(emb.source(), &self.field);
        MatrixF {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| emb.apply(a)).collect(),
        }
    }

    /// Entrywise preimage under an embedding, if every entry lies in the
    /// image.
    pub fn pull_back(&self, emb: &EmbeddingMap) -> Option<MatrixF> {
        assert_eq!(emb.target(), &self.field);
        let entries = self
            .entries
            .iter()
            .map(|a| emb.preimage(a))
            .collect::<Option<Vec<_>>>()?;
        Some(MatrixF {
            field: emb.source().clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (MatrixF, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if piv != row {
                for j in 0..self.cols {
                    self.entries.swap(piv * self.cols + j, row * self.cols + j);
                }
            }
            let s = self.get(row, col).inv().unwrap();
            for j in col..self.cols {
                let idx = row * self.cols + j;
                self.entries[idx] = &self.entries[idx] * &s;
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = &self.entries[r * self.cols + j]
                        - &(&f * &self.entries[row * self.cols + j]);
                    self.entries[r * self.cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced row echelon form: a canonical basis of
    /// the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }

    /// Basis of `{v : M v = 0}` in reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let basis: Vec<Vec<FieldElement>> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, free);
                }
                v
            })
            .collect();
        if basis.is_empty() {
            return basis;
        }
        MatrixF::from_rows(&self.field, basis)
            .expect("consistent rows")
            .row_space_basis()
    }

    pub fn determinant(&self) -> FieldElement {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return self.field.zero();
            };
            if piv != col {
                for j in 0..n {
                    m.entries.swap(piv * n + j, col * n + j);
                }
                det = -&det;
            }
            let pv = m.get(col, col).clone();
            det = &det * &pv;
            let pinv = pv.inv().unwrap();
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) * &pinv;
                for j in col..n {
                    let v = m.get(r, j) - &(&f * m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Exact inverse; `Singular` carries the rank otherwise.
    pub fn inverse(&self) -> Result<MatrixF> {
        if !self.is_square() {
            return Err(Error::InvalidArgument(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let aug = MatrixF::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&c| c < n).count();
        if rank < n {
            return Err(Error::Singular { rank });
        }
        Ok(MatrixF::from_fn(&self.field, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }

    /// The unique solution of `M x = b` for square invertible `M`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::InvalidArgument("solve needs a square system".into()));
        }
        if b.iter().any(|x| x.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        let n = self.rows;
        let aug = MatrixF::from_fn(&self.field, n, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&c| c < n).count();
        if rank < n {
            return Err(Error::Singular { rank });
        }
        Ok((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &MatrixF) -> MatrixF {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        MatrixF::from_fn(&self.field, r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                self.field.zero()
            }
        })
    }

    /// Multiplicative order in `GL_n`, searching exponents up to `bound`.
    pub fn order_up_to(&self, bound: u64) -> Option<u64> {
        assert!(self.is_square());
        let mut cur = self.clone();
        for e in 1..=bound {
            if cur.is_identity() {
                return Some(e);
            }
            cur = cur.mul(self);
        }
        None
    }
}

/// Outcome of [`solve_or_invert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutput {
    Solution(Vec<FieldElement>),
    Inverse(MatrixF),
}

/// Solves `M x = b` when `b` is given, otherwise inverts `M`.
pub fn solve_or_invert(m: &MatrixF, b: Option<&[FieldElement]>) -> Result<SolveOutput> {
    match b {
        Some(b) => m.solve(b).map(SolveOutput::Solution),
        None => m.inverse().map(SolveOutput::Inverse),
    }
}

/// Rank over the field of a family of vectors of equal length.
pub fn rank_of(field: &Field, vectors: &[Vec<FieldElement>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    MatrixF::from_rows(field, vectors.to_vec())
        .expect("vectors of equal length over one field")
        .rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> MatrixF {
        let order = field.order().unwrap();
        MatrixF::from_fn(field, n, n, |_, _| {
            field.from_index(rng.gen_range(0..order))
        })
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let f = Field::new(3, 1, 2).unwrap();
        for n in 0..4 {
            assert!(MatrixF::identity(&f, n).nullspace().is_empty());
        }
    }

    #[test]
    fn self_inverse_over_f4() {
        let f4 = Field::new(2, 1, 2).unwrap();
        let g = f4.generator();
        let g1 = &g + &f4.one();
        let m = MatrixF::from_rows(&f4, vec![vec![g.clone(), g1.clone()], vec![g1, g]]).unwrap();
        assert!(m.determinant().is_one());
        assert_eq!(m.inverse().unwrap(), m);
        assert!(m.mul(&m).is_identity());
    }

    #[test]
    fn rank_nullity_over_f9() {
        let f9 = Field::new(3, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut m = random_matrix(&f9, 4, &mut rng);
            // force some rank deficiency now and then
            if rng.gen_bool(0.5) {
                let c = f9.from_index(rng.gen_range(0..9));
                for j in 0..4 {
                    let v = m.get(0, j) * &c;
                    m.set(3, j, v);
                }
            }
            let ns = m.nullspace();
            assert_eq!(m.rank() + ns.len(), 4);
            for v in &ns {
                assert!(m.mul_vec(v).iter().all(FieldElement::is_zero));
            }
            match m.inverse() {
                Ok(inv) => assert!(m.mul(&inv).is_identity()),
                Err(Error::Singular { rank }) => assert_eq!(rank, m.rank()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn solve_reports_rank() {
        let f = Field::new(5, 1, 1).unwrap();
        let m = MatrixF::from_fn(&f, 2, 2, |_, _| f.one());
        let err = solve_or_invert(&m, Some(&[f.one(), f.zero()])).unwrap_err();
        assert!(matches!(err, Error::Singular { rank: 1 }));
        let id = MatrixF::identity(&f, 2);
        let b = [f.from_int(2), f.from_int(3)];
        assert_eq!(
            solve_or_invert(&id, Some(&b)).unwrap(),
            SolveOutput::Solution(b.to_vec())
        );
    }

    #[test]
    fn determinant_matches_invertibility() {
        let f8 = Field::new(2, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_matrix(&f8, 3, &mut rng);
            assert_eq!(m.determinant().is_zero(), m.inverse().is_err());
        }
    }
}
