//! `F_p`-linear problems on `L^n` for a finite field `L`.
//!
//! Frobenius-twisted equations such as `A phi(v) = v` are not `L`-linear,
//! but they are linear over the prime field. Each unknown coordinate in `L`
//! is expanded into its `[L : F_p]` prime-field coordinates, the map is
//! tabulated on basis vectors, and the problem is solved over `F_p`.

use crate::field::{Field, FieldElement, FpMatrix};
use crate::matrix::MatrixF;

fn unit_input(field: &Field, n: usize, slot: usize, j: usize) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); n];
    let mut c = vec![0u32; field.degree()];
    c[j] = 1;
    v[slot] = field.element(&c).expect("unit coordinates");
    v
}

fn flatten(v: &[FieldElement]) -> Vec<u32> {
    v.iter().flat_map(|x| x.coords().iter().copied()).collect()
}

fn unflatten(field: &Field, flat: &[u32]) -> Vec<FieldElement> {
    flat.chunks(field.degree())
        .map(|c| field.element(c).expect("reduced coordinates"))
        .collect()
}

/// Tabulates an `F_p`-linear map `L^n_in -> L^n_out`.
fn tabulate(
    field: &Field,
    n_in: usize,
    map: &impl Fn(&[FieldElement]) -> Vec<FieldElement>,
) -> FpMatrix {
    let deg = field.degree();
    let mut columns = Vec::with_capacity(n_in * deg);
    let mut rows = None;
    for slot in 0..n_in {
        for j in 0..deg {
            let out = flatten(&map(&unit_input(field, n_in, slot, j)));
            rows.get_or_insert(out.len());
            columns.push(out);
        }
    }
    FpMatrix::from_columns(field.p(), rows.unwrap_or(0), &columns)
}

/// `F_p`-basis (canonical echelon form) of the kernel of an `F_p`-linear
/// map on `L^n_in`.
pub fn fp_kernel(
    field: &Field,
    n_in: usize,
    map: impl Fn(&[FieldElement]) -> Vec<FieldElement>,
) -> Vec<Vec<FieldElement>> {
    if n_in == 0 {
        return Vec::new();
    }
    let table = tabulate(field, n_in, &map);
    if table.rows() == 0 {
        // map into the zero space: everything is in the kernel
        return FpMatrix::zeros(field.p(), 1, n_in * field.degree())
            .nullspace()
            .iter()
            .map(|v| unflatten(field, v))
            .collect();
    }
    table
        .nullspace()
        .iter()
        .map(|v| unflatten(field, v))
        .collect()
}

/// One solution of `map(v) = rhs` for an `F_p`-linear `map`, if any.
pub fn fp_affine_solve(
    field: &Field,
    n_in: usize,
    map: impl Fn(&[FieldElement]) -> Vec<FieldElement>,
    rhs: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    if n_in == 0 {
        return rhs.iter().all(FieldElement::is_zero).then(Vec::new);
    }
    let table = tabulate(field, n_in, &map);
    table.solve(&flatten(rhs)).map(|x| unflatten(field, &x))
}

/// From an `F_p`-spanning set of an `F_q`-space `E` whose `F_q`-independent
/// families stay `L`-independent, extracts an `F_q`-basis of `E`: the
/// greedy maximal `L`-independent subfamily.
pub fn fq_basis_from_span(field: &Field, span: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let mut chosen: Vec<Vec<FieldElement>> = Vec::new();
    let mut echelon: Vec<Vec<FieldElement>> = Vec::new();
    for v in span {
        let mut rows = echelon.clone();
        rows.push(v.clone());
        let basis = MatrixF::from_rows(field, rows)
            .expect("equal lengths")
            .row_space_basis();
        if basis.len() > echelon.len() {
            echelon = basis;
            chosen.push(v.clone());
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_fixed_points_of_f4() {
        let f4 = Field::new(2, 1, 2).unwrap();
        let ker = fp_kernel(&f4, 1, |v| vec![&v[0].frobenius(1) - &v[0]]);
        assert_eq!(ker, vec![vec![f4.one()]]);
    }

    #[test]
    fn artin_schreier_solvability() {
        // x^2 + x = c over F_4 is solvable iff Tr(c) = 0, i.e. c in F_2
        let f4 = Field::new(2, 1, 2).unwrap();
        for c in f4.elements() {
            let sol = fp_affine_solve(
                &f4,
                1,
                |v| vec![&v[0].frobenius(1) + &v[0]],
                std::slice::from_ref(&c),
            );
            assert_eq!(sol.is_some(), f4.is_in_fq(&c), "c = {c}");
            if let Some(x) = sol {
                assert_eq!(&x[0].frobenius(1) + &x[0], c);
            }
        }
    }
}
