//! Compatible subfield embeddings.
//!
//! For absolute degrees `a | c` the image of the generator of `F_{p^a}` in
//! `F_{p^c}` is the least root (in index order) of the degree-`a` modulus
//! that agrees with the already chosen images of every intermediate
//! subfield `F_{p^d}`, `d | a`. Choosing divisors in increasing order keeps
//! the whole system compatible: `emb(b, c) . emb(a, b) = emb(a, c)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::upoly::UPoly;
use super::{Field, FieldElement, FpMatrix};
use crate::error::{Error, Result};

/// A ring homomorphism `source -> target` of finite fields, determined by
/// the image of the source generator.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    source: Field,
    target: Field,
    image_of_generator: FieldElement,
    /// Columns: images of `g^i`, `i < [source : F_p]`.
    matrix: FpMatrix,
}

impl PartialEq for EmbeddingMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.image_of_generator == other.image_of_generator
    }
}

impl Eq for EmbeddingMap {}

fn generator_image(p: u32, a: usize, c: usize) -> Vec<u32> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, usize, usize), Vec<u32>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&(p, a, c)) {
        return v.clone();
    }
    let computed = compute_generator_image(p, a, c);
    memo.lock()
        .unwrap()
        .entry((p, a, c))
        .or_insert(computed)
        .clone()
}

fn prime_level(p: u32, degree: usize) -> Field {
    Field::with_cap(p, 1, degree as u32, super::DegreeCap(usize::MAX)).expect("valid field")
}

/// Evaluates an `F_p`-polynomial given by coordinates at `x`.
fn eval_coords(coords: &[u32], x: &FieldElement) -> FieldElement {
    let field = x.field();
    let mut acc = field.zero();
    for &c in coords.iter().rev() {
        acc = &(&acc * x) + &field.from_int(c as i64);
    }
    acc
}

fn compute_generator_image(p: u32, a: usize, c: usize) -> Vec<u32> {
    let big = prime_level(p, c);
    if a == c {
        return big.generator().coords().to_vec();
    }
    let small = prime_level(p, a);
    if a == 1 {
        return big
            .from_int(small.generator().coords()[0] as i64)
            .coords()
            .to_vec();
    }
    let modulus = UPoly::new(
        &big,
        small
            .modulus()
            .iter()
            .map(|&m| big.from_int(m as i64))
            .collect(),
    );
    let roots = modulus.split_roots();
    // constraints from proper divisors d of a
    let constraints: Vec<(Vec<u32>, FieldElement)> = (2..a)
        .filter(|d| a.is_multiple_of(*d))
        .map(|d| {
            let into_small = generator_image(p, d, a);
            let into_big = FieldElement::from_raw(&big, generator_image(p, d, c));
            (into_small, into_big)
        })
        .collect();
    roots
        .into_iter()
        .find(|r| {
            constraints
                .iter()
                .all(|(via_small, direct)| eval_coords(via_small, r) == *direct)
        })
        .expect("a compatible root always exists")
        .coords()
        .to_vec()
}

impl EmbeddingMap {
    pub(crate) fn canonical(source: &Field, target: &Field) -> Result<Self> {
        if source.p() != target.p() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::InvalidArgument(format!(
                "{source} does not embed in {target}"
            )));
        }
        let image = FieldElement::from_raw(
            target,
            generator_image(source.p(), source.degree(), target.degree()),
        );
        Ok(Self::from_image(source, target, image))
    }

    fn from_image(source: &Field, target: &Field, image: FieldElement) -> Self {
        let mut columns = Vec::with_capacity(source.degree());
        let mut cur = target.one();
        for _ in 0..source.degree() {
            columns.push(cur.coords().to_vec());
            cur = &cur * &image;
        }
        let matrix = FpMatrix::from_columns(source.p(), target.degree(), &columns);
        EmbeddingMap {
            source: source.clone(),
            target: target.clone(),
            image_of_generator: image,
            matrix,
        }
    }

    pub fn identity(field: &Field) -> Self {
        Self::from_image(field, field, field.generator())
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image_of_generator
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert_eq!(x.field(), &self.source, "element not in the source field");
        FieldElement::from_raw(&self.target, self.matrix.mul_vec(x.coords()))
    }

    /// The unique preimage of `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &FieldElement) -> Option<FieldElement> {
        assert_eq!(y.field(), &self.target, "element not in the target field");
        self.matrix
            .solve(y.coords())
            .map(|c| FieldElement::from_raw(&self.source, c))
    }

    /// `other . self`.
    pub fn then(&self, other: &EmbeddingMap) -> Result<EmbeddingMap> {
        if self.target != other.source {
            return Err(Error::FieldMismatch);
        }
        let image = other.apply(&self.image_of_generator);
        Ok(Self::from_image(&self.source, &other.target, image))
    }
}
