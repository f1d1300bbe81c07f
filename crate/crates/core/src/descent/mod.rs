//! Descent of Frobenius-equivariant objects to `F_q`: modules over a finite
//! `F_q`-algebra, single polynomials, and truncated graded ideals.

mod algebra;
mod ideal;
mod module;

pub use algebra::FinAlgebra;
pub use ideal::{
    element_descent, element_descent_in_basis, graded_ideal_descent, same_span, GradedIdealTrunc,
};
pub use module::{
    check_equivariant, descend_module, hom_space, DescendedModule, EquivarianceViolation,
    EquivariantModule, HomMode, HomSpace,
};
