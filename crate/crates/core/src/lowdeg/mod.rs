//! Coefficient-only criteria for σ-degree 2 and 3.
//!
//! Both degrees follow the same pattern: a few coefficient ratios (`u` for
//! degree 2, `w, z` for degree 3) drive a linear recursion whose last terms
//! give `A_L` in closed form, and from it every root count.

pub mod deg2;
pub mod deg3;

pub use deg2::{
    a_matrix_deg2, chi_deg2, classify_lin_deg2, classify_proj_deg2, g_sequence_conjugated,
    g_sequence_forward, n5_full_kernel_condition, trace_formula_deg2, Deg2State,
};
pub use deg3::{
    a_matrix_deg3, chi_deg3, classify_lin_deg3, classify_proj_deg3, h_sequence_conjugated,
    h_sequence_forward, Deg3LinClass, Deg3ProjClass, Deg3State,
};

use crate::error::{Error, Result};
use crate::gfield::FieldElement;
use crate::skewpoly::LinearizedPoly;

/// A root count together with the branch that produced it, e.g.
/// `proj2:odd:delta-square`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub count: u64,
    pub tag: &'static str,
}

/// Terms `X_0..X_len` of a recursion; negative indices read as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence(Vec<FieldElement>);

impl Sequence {
    pub fn get(&self, k: i64) -> FieldElement {
        if k < 0 {
            FieldElement::ZERO
        } else {
            self.0[k as usize]
        }
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.0
    }
}

fn expect_degree(l: &LinearizedPoly, expected: usize) -> Result<()> {
    if l.degree() != Some(expected) {
        return Err(Error::WrongDegree {
            expected,
            found: l.degree(),
        });
    }
    Ok(())
}
