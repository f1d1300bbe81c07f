//! Reference arithmetic for the integration tests, written independently of
//! the library: elements of `F_{p^n}` are plain coefficient vectors reduced
//! by schoolbook division, matrices are `Vec<Vec<_>>`, and linear algebra is
//! textbook Gaussian elimination.
//!
//! Only the *representation* (the modulus, and where a subfield's generator
//! lands) is read from the library, and every such datum is checked here
//! before it is used.

#![allow(dead_code)]

use std::io::Write;

use frobenius_descent::field::{EmbeddingMap, Field, FieldElement};
use frobenius_descent::matrix::MatrixF;

pub type El = Vec<u64>;
pub type Mat = Vec<Vec<El>>;

/// `F_{p^n}` given by a monic modulus; `q = p^k` is the Frobenius exponent.
#[derive(Clone, Debug)]
pub struct Gf {
    pub p: u64,
    pub n: usize,
    pub k: u32,
    modulus: Vec<u64>,
}

impl Gf {
    pub fn of(field: &Field) -> Gf {
        let modulus: Vec<u64> = field.modulus().iter().map(|&c| c as u64).collect();
        assert_eq!(modulus.len(), field.degree() + 1);
        assert_eq!(*modulus.last().unwrap(), 1, "modulus must be monic");
        Gf {
            p: field.p() as u64,
            n: field.degree(),
            k: field.q_exponent(),
            modulus,
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.n as u32)
    }

    pub fn zero(&self) -> El {
        vec![0; self.n]
    }

    pub fn one(&self) -> El {
        self.int(1)
    }

    pub fn int(&self, c: i64) -> El {
        let mut v = self.zero();
        v[0] = c.rem_euclid(self.p as i64) as u64;
        v
    }

    /// Base-`p` digits of `idx`, lowest first.
    pub fn nth(&self, mut idx: u128) -> El {
        (0..self.n)
            .map(|_| {
                let d = (idx % self.p as u128) as u64;
                idx /= self.p as u128;
                d
            })
            .collect()
    }

    pub fn all(&self) -> impl Iterator<Item = El> + '_ {
        (0..self.order()).map(move |i| self.nth(i))
    }

    pub fn is_zero(&self, a: &El) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &El, b: &El) -> El {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn mul(&self, a: &El, b: &El) -> El {
        let p = self.p;
        let n = self.n;
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
        for top in (n..2 * n).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..n {
                let idx = top - n + i;
                prod[idx] = (prod[idx] + (p - c) * self.modulus[i]) % p;
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn pow(&self, a: &El, mut e: u128) -> El {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// `a^q`.
    pub fn frob(&self, a: &El) -> El {
        self.pow(a, self.q() as u128)
    }

    pub fn inv(&self, a: &El) -> El {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    pub fn in_fq(&self, a: &El) -> bool {
        self.frob(a) == *a
    }

    /// Elements of `F_q` inside this field, in index order.
    pub fn fq_elements(&self) -> Vec<El> {
        self.all().filter(|x| self.in_fq(x)).collect()
    }

    /// `sum_i c_i x^i` for an `F_p`-coefficient vector `c`.
    pub fn eval_fp_poly(&self, c: &[u64], x: &El) -> El {
        let mut acc = self.zero();
        for &ci in c.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.int(ci as i64));
        }
        acc
    }

    pub fn el(&self, x: &FieldElement) -> El {
        assert_eq!(x.field().degree(), self.n);
        x.coords().iter().map(|&c| c as u64).collect()
    }

    pub fn mat(&self, a: &MatrixF) -> Mat {
        (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| self.el(a.get(i, j))).collect())
            .collect()
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        (0..inner).fold(self.zero(), |acc, l| {
                            self.add(&acc, &self.mul(&row[l], &b[l][j]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mat_frob(&self, a: &Mat) -> Mat {
        a.iter()
            .map(|r| r.iter().map(|x| self.frob(x)).collect())
            .collect()
    }

    pub fn mat_vec(&self, a: &Mat, v: &[El]) -> Vec<El> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
            })
            .collect()
    }

    pub fn identity(&self, n: usize) -> Mat {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { self.one() } else { self.zero() })
                    .collect()
            })
            .collect()
    }

    /// Row rank by elimination.
    pub fn rank(&self, rows: &[Vec<El>]) -> usize {
        let mut m: Vec<Vec<El>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| !self.is_zero(&m[r][c])) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv(&m[rank][c]);
            let pivot_row: Vec<El> = m[rank].iter().map(|x| self.mul(x, &inv)).collect();
            for r in 0..m.len() {
                if r != rank && !self.is_zero(&m[r][c]) {
                    let f = m[r][c].clone();
                    for j in 0..cols {
                        m[r][j] = self.sub(&m[r][j], &self.mul(&f, &pivot_row[j]));
                    }
                }
            }
            m[rank] = pivot_row;
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, a: &Mat) -> bool {
        a.len() == a.first().map_or(0, Vec::len) && self.rank(a) == a.len()
    }

    /// Determinant by the Leibniz formula (small matrices only).
    pub fn leibniz_det(&self, a: &Mat) -> El {
        let n = a.len();
        let mut total = self.zero();
        for (perm, odd) in permutations(n) {
            let term = (0..n).fold(self.one(), |acc, i| self.mul(&acc, &a[i][perm[i]]));
            total = if odd {
                self.sub(&total, &term)
            } else {
                self.add(&total, &term)
            };
        }
        total
    }

    /// `F_p`-dimension of the kernel of an `F_p`-linear map on `F^n_in`,
    /// given the map itself.
    pub fn fp_kernel_dim(&self, n_in: usize, map: impl Fn(&[El]) -> Vec<El>) -> usize {
        let mut columns = Vec::new();
        for slot in 0..n_in {
            for j in 0..self.n {
                let mut v = vec![self.zero(); n_in];
                v[slot][j] = 1;
                columns.push(map(&v).concat());
            }
        }
        n_in * self.n - fp_rank(self.p, &columns)
    }
}

/// Rank over `F_p` of a list of vectors.
pub fn fp_rank(p: u64, vectors: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<u64>> = vectors.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = modpow(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// All permutations of `0..n` with their parity.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            // inserting at `pos` moves the new largest element past n-1-pos others
            let moved = (n - 1 - pos) % 2 == 1;
            out.push((p, odd ^ moved));
        }
    }
    out
}

/// An embedding `small -> big`, re-derived from the image of the small
/// field's generator after checking that the image is a root of the small
/// field's modulus.
pub struct Embed {
    pub small: Gf,
    pub big: Gf,
    image: El,
}

impl Embed {
    pub fn check(emb: &EmbeddingMap) -> Embed {
        let small = Gf::of(emb.source());
        let big = Gf::of(emb.target());
        assert_eq!(big.n % small.n, 0);
        let image = if small.n == 1 {
            big.one()
        } else {
            big.el(emb.image_of_generator())
        };
        if small.n > 1 {
            let modulus: Vec<u64> = emb.source().modulus().iter().map(|&c| c as u64).collect();
            assert!(
                big.is_zero(&big.eval_fp_poly(&modulus, &image)),
                "generator image is not a root"
            );
        }
        Embed { small, big, image }
    }

    pub fn el(&self, x: &El) -> El {
        if self.small.n == 1 {
            return self.big.int(x[0] as i64);
        }
        self.big.eval_fp_poly(x, &self.image)
    }

    pub fn mat(&self, a: &Mat) -> Mat {
        a.iter()
            .map(|r| r.iter().map(|x| self.el(x)).collect())
            .collect()
    }
}

/// Writes one report line past the test harness's output capture, so the
/// line shows up whether or not the test passes.
pub fn report(id: u8, name: &str, outcome: &Result<String, String>) {
    let line = match outcome {
        Ok(detail) => format!("criterion {id:>2}  PASS  {name}: {detail}\n"),
        Err(why) => format!("criterion {id:>2}  FAIL  {name}: {why}\n"),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}
