//! Derived-equivalence invariants of incidence algebras: Cartan matrix,
//! Coxeter matrix, Coxeter polynomial.

use crate::exact::{ExactMatrix, ExactScalar, IntPoly};
use crate::poset::Poset;

/// Cartan (zeta) matrix in a fixed linear extension: C[i][j] = 1 iff the
/// i-th element is <= the j-th. Unitriangular, so det = 1.
pub fn cartan_matrix(p: &Poset) -> ExactMatrix {
    let order = p.linear_extension();
    ExactMatrix::from_fn(p.len(), p.len(), |i, j| {
        if p.leq(order[i], order[j]) {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
}

/// Coxeter matrix -C^{-T} C (integer entries).
pub fn coxeter_matrix(p: &Poset) -> ExactMatrix {
    let c = cartan_matrix(p);
    let c_inv_t = c
        .transpose()
        .inverse()
        .expect("unitriangular Cartan matrix is invertible");
    c_inv_t.mul(&c).neg()
}

/// Characteristic polynomial of the Coxeter matrix.
pub fn coxeter_polynomial(p: &Poset) -> IntPoly {
    coxeter_matrix(p)
        .char_poly()
        .expect("Coxeter matrix is an integer matrix")
}
