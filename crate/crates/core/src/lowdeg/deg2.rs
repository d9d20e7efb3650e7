//! `L = a x + b x^σ + c x^{σ^2}`, `ac ≠ 0`.
//!
//! With `u = a^σ c / b^{σ+1}` the sequence `G_0 = 1, G_1 = -1` and
//! `G_k + G_{k-1} + u^{σ^{k-2}} G_{k-2} = 0` (equivalently
//! `G_k + G_{k-1}^σ + u G_{k-2}^{σ^2} = 0`) gives
//!
//! ```text
//! A_L = N(b/c) [ -u^{σ^-1} G_{n-2}^σ      -(a/b) G_{n-1}^σ ]
//!              [ (c/b)^{σ^-1} G_{n-1}      G_n             ]
//! ```
//!
//! and `Tr A_L = N(b/c)(G_n + G_n^σ + G_{n-1}^σ)`, `det A_L = N(a/c)`.

use std::sync::Arc;

use super::{expect_degree, Classification, Sequence};
use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::rootcount::nullity_of;
use crate::semimat::{CharPoly, SqMatrix};
use crate::skewpoly::LinearizedPoly;

/// `G_0..G_len` by `G_k = -G_{k-1} - u^{σ^{k-2}} G_{k-2}`.
pub fn g_sequence_forward(f: &FieldSpec, u: FieldElement, len: usize) -> Vec<FieldElement> {
    let mut g = seed(f, u, len);
    for k in 3..=len {
        let t = f.mul(f.frobenius(u, k as i64 - 2), g[k - 2]);
        g.push(f.neg(f.add(g[k - 1], t)));
    }
    g
}

/// `G_0..G_len` by `G_k = -G_{k-1}^σ - u G_{k-2}^{σ^2}`.
pub fn g_sequence_conjugated(f: &FieldSpec, u: FieldElement, len: usize) -> Vec<FieldElement> {
    let mut g = seed(f, u, len);
    for k in 3..=len {
        let t = f.mul(u, f.frobenius(g[k - 2], 2));
        g.push(f.neg(f.add(f.frobenius(g[k - 1], 1), t)));
    }
    g
}

fn seed(f: &FieldSpec, u: FieldElement, len: usize) -> Vec<FieldElement> {
    let mut g = vec![f.one(), f.neg(f.one()), f.sub(f.one(), u)];
    g.truncate(len + 1);
    g
}

#[derive(Clone, Debug)]
pub struct Deg2State {
    field: Arc<FieldSpec>,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub u: FieldElement,
    /// `G_0..G_n`.
    pub g: Sequence,
    /// `N(b/c)`.
    pub norm_bc: FieldElement,
    /// `N(a/c) = det A_L`.
    pub det: FieldElement,
    /// `G_n + G_n^σ + G_{n-1}^σ`.
    pub trace_factor: FieldElement,
    /// `Tr A_L`.
    pub trace: FieldElement,
    /// `Δ_L = Tr(A_L)^2 - 4 det(A_L)`, odd `q` only.
    pub delta: Option<FieldElement>,
    /// `Λ_L = det(A_L) / Tr(A_L)^2`, even `q` with nonzero trace only.
    pub lambda_inv: Option<FieldElement>,
}

fn outer_coefficients(l: &LinearizedPoly) -> Result<(FieldElement, FieldElement, FieldElement)> {
    expect_degree(l, 2)?;
    let (a, b, c) = (l.coeff(0), l.coeff(1), l.coeff(2));
    if a.is_zero() || c.is_zero() {
        return Err(Error::ZeroOuterCoefficient);
    }
    Ok((a, b, c))
}

impl Deg2State {
    /// Requires σ-degree 2 and `abc ≠ 0`. Both recursions are evaluated and
    /// must agree term by term.
    pub fn new(l: &LinearizedPoly) -> Result<Self> {
        let (a, b, c) = outer_coefficients(l)?;
        if b.is_zero() {
            return Err(Error::ZeroMiddleCoefficient);
        }
        let f = l.field().clone();
        let n = f.n() as usize;
        let u = f.div(f.mul(f.frobenius(a, 1), c), f.mul(f.frobenius(b, 1), b))?;
        let g3 = g_sequence_forward(&f, u, n);
        let g4 = g_sequence_conjugated(&f, u, n);
        if g3 != g4 {
            return Err(Error::Inconsistent(format!(
                "G recursions disagree for u = {u}"
            )));
        }
        let g = Sequence(g3);
        let n = n as i64;
        let norm_bc = f.norm(f.div(b, c)?);
        let det = f.norm(f.div(a, c)?);
        let trace_factor = f.add(
            f.add(g.get(n), f.frobenius(g.get(n), 1)),
            f.frobenius(g.get(n - 1), 1),
        );
        let trace = f.mul(norm_bc, trace_factor);
        let (delta, lambda_inv) = if f.p() == 2 {
            let li = if trace.is_zero() {
                None
            } else {
                Some(f.div(det, f.mul(trace, trace))?)
            };
            (None, li)
        } else {
            let four_det = f.mul(f.from_int(4), det);
            (Some(f.sub(f.mul(trace, trace), four_det)), None)
        };
        Ok(Deg2State {
            field: f,
            a,
            b,
            c,
            u,
            g,
            norm_bc,
            det,
            trace_factor,
            trace,
            delta,
            lambda_inv,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    fn n(&self) -> i64 {
        self.field.n() as i64
    }

    /// `G_n^{σ^2} - G_n = G_{n-1}^σ - G_{n-1}^{σ^2}`.
    pub fn boundary_identity_holds(&self) -> bool {
        let f = &self.field;
        let (gn, gn1) = (self.g.get(self.n()), self.g.get(self.n() - 1));
        f.sub(f.frobenius(gn, 2), gn) == f.sub(f.frobenius(gn1, 1), f.frobenius(gn1, 2))
    }

    /// `u^{σ^-1} (G_{n-1}^{σ+1} - G_n G_{n-2}^σ) = N(u)`.
    pub fn norm_identity_holds(&self) -> bool {
        let f = &self.field;
        let n = self.n();
        let gn1 = self.g.get(n - 1);
        let inner = f.sub(
            f.mul(f.frobenius(gn1, 1), gn1),
            f.mul(self.g.get(n), f.frobenius(self.g.get(n - 2), 1)),
        );
        f.mul(f.frobenius(self.u, -1), inner) == f.norm(self.u)
    }

    /// The closed-form `A_L`.
    pub fn a_matrix(&self) -> Result<SqMatrix> {
        let f = &self.field;
        let n = self.n();
        let entry = |x: FieldElement| f.mul(self.norm_bc, x);
        let m00 = f.neg(f.mul(f.frobenius(self.u, -1), f.frobenius(self.g.get(n - 2), 1)));
        let m01 = f.neg(f.mul(f.div(self.a, self.b)?, f.frobenius(self.g.get(n - 1), 1)));
        let m10 = f.mul(f.frobenius(f.div(self.c, self.b)?, -1), self.g.get(n - 1));
        let m11 = self.g.get(n);
        SqMatrix::from_rows(
            f.clone(),
            vec![vec![entry(m00), entry(m01)], vec![entry(m10), entry(m11)]],
        )
    }

    /// `G_{n-1} = 0` and `G_n ∈ F_q`, i.e. `A_L` is scalar.
    pub fn is_scalar(&self) -> bool {
        let n = self.n();
        self.g.get(n - 1).is_zero() && self.field.in_base_field(self.g.get(n))
    }
}

pub fn a_matrix_deg2(l: &LinearizedPoly) -> Result<SqMatrix> {
    Deg2State::new(l)?.a_matrix()
}

/// `χ_L(x) = x^2 - N(b/c)(G_n + G_n^σ + G_{n-1}^σ) x + N(a/c)`.
pub fn chi_deg2(l: &LinearizedPoly) -> Result<CharPoly> {
    let st = Deg2State::new(l)?;
    let f = st.field();
    Ok(CharPoly::from_coeffs(
        f,
        vec![st.det, f.neg(st.trace), f.one()],
    ))
}

/// `Tr A_L` from the explicit trace expressions for `n = 4, 5, 6, 7`.
pub fn trace_formula_deg2(l: &LinearizedPoly) -> Result<FieldElement> {
    let (_, b, c) = outer_coefficients(l)?;
    if b.is_zero() {
        return Err(Error::ZeroMiddleCoefficient);
    }
    let f = l.field();
    let n = f.n();
    let st = Deg2State::new(l)?;
    let u = st.u;
    let one = f.one();
    let uu = |ks: &[i64]| f.product(ks.iter().map(|&k| f.frobenius(u, k)));
    let tr = |x: FieldElement, d: u32| f.partial_trace(x, d);
    let inner = match n {
        4 => f.add(f.sub(one, tr(u, 4)?), tr(uu(&[0, 2]), 2)?),
        5 => f.sub(tr(f.sub(u, uu(&[0, 2])), 5)?, one),
        6 => {
            let t = f.sub(one, tr(f.sub(u, uu(&[0, 2])), 6)?);
            f.sub(f.add(t, tr(uu(&[0, 3]), 3)?), tr(uu(&[0, 2, 4]), 2)?)
        }
        7 => {
            let arg = f.add(f.sub(f.sub(u, uu(&[0, 2])), uu(&[0, 3])), uu(&[0, 2, 4]));
            f.sub(tr(arg, 7)?, one)
        }
        other => return Err(Error::UnsupportedN(other)),
    };
    Ok(f.mul(f.norm(f.div(b, c)?), inner))
}

/// Number of roots of `P_L(y) = a + b y + c y^{σ+1}` from the coefficients.
pub fn classify_proj_deg2(l: &LinearizedPoly) -> Result<Classification> {
    let (a, b, c) = outer_coefficients(l)?;
    let f = l.field();
    let q = f.q() as u64;
    let n = f.n();
    if b.is_zero() {
        let ratio = f.neg(f.div(a, c)?);
        return Ok(if n % 2 == 1 {
            if f.p() == 2 {
                Classification {
                    count: 1,
                    tag: "proj2:b0:n-odd:q-even",
                }
            } else if f.is_nonzero_square_in_base(f.norm(ratio)) {
                Classification {
                    count: 2,
                    tag: "proj2:b0:n-odd:square",
                }
            } else {
                Classification {
                    count: 0,
                    tag: "proj2:b0:n-odd:non-square",
                }
            }
        } else if f.in_base_field(f.relative_norm(ratio, 2)?) {
            Classification {
                count: q + 1,
                tag: "proj2:b0:n-even:in-Fq",
            }
        } else {
            Classification {
                count: 0,
                tag: "proj2:b0:n-even:not-in-Fq",
            }
        });
    }

    let st = Deg2State::new(l)?;
    if st.is_scalar() {
        return Ok(Classification {
            count: q + 1,
            tag: "proj2:scalar",
        });
    }
    if let Some(delta) = st.delta {
        return Ok(if delta.is_zero() {
            if st.g.get(n as i64 - 1).is_zero() {
                Classification {
                    count: q + 1,
                    tag: "proj2:odd:delta-zero:scalar",
                }
            } else {
                Classification {
                    count: 1,
                    tag: "proj2:odd:delta-zero",
                }
            }
        } else if f.is_nonzero_square_in_base(delta) {
            Classification {
                count: 2,
                tag: "proj2:odd:delta-square",
            }
        } else {
            Classification {
                count: 0,
                tag: "proj2:odd:delta-non-square",
            }
        });
    }

    // q even: χ = x^2 + Tr x + det has a double root iff Tr = 0, otherwise
    // two roots in F_q iff x^2 + x + Λ does.
    let Some(lambda) = st.lambda_inv else {
        return Ok(Classification {
            count: 1,
            tag: "proj2:even:trace-zero",
        });
    };
    Ok(if f.base_absolute_trace(lambda).is_zero() {
        Classification {
            count: 2,
            tag: "proj2:even:T0-zero",
        }
    } else {
        Classification {
            count: 0,
            tag: "proj2:even:T0-one",
        }
    })
}

/// Nullity of `L` (0, 1 or 2) from the coefficients.
pub fn classify_lin_deg2(l: &LinearizedPoly) -> Result<Classification> {
    let (_, b, _) = outer_coefficients(l)?;
    if b.is_zero() {
        return Ok(Classification {
            count: nullity_of(l)? as u64,
            tag: "lin2:b0:generic",
        });
    }
    let st = Deg2State::new(l)?;
    let f = st.field();
    let n = f.n() as i64;
    if st.g.get(n - 1).is_zero() && f.mul(st.norm_bc, st.g.get(n)) == f.one() {
        return Ok(Classification {
            count: 2,
            tag: "lin2:i",
        });
    }
    let chi_at_one = f.add(f.sub(f.one(), st.trace), st.det);
    Ok(if chi_at_one.is_zero() {
        Classification {
            count: 1,
            tag: "lin2:ii",
        }
    } else {
        Classification {
            count: 0,
            tag: "lin2:iii",
        }
    })
}

/// The `n = 5` criterion for `q^2` roots: `b ≠ 0`,
/// `(1 - u)^{σ^2+1} - u^σ = 0` and `N(1 - u) = N(c/b)`.
pub fn n5_full_kernel_condition(l: &LinearizedPoly) -> Result<bool> {
    let (a, b, c) = outer_coefficients(l)?;
    let f = l.field();
    if f.n() != 5 {
        return Err(Error::UnsupportedN(f.n()));
    }
    if b.is_zero() {
        return Ok(false);
    }
    let u = f.div(f.mul(f.frobenius(a, 1), c), f.mul(f.frobenius(b, 1), b))?;
    let one_minus = f.sub(f.one(), u);
    let first = f.sub(
        f.mul(f.frobenius(one_minus, 2), one_minus),
        f.frobenius(u, 1),
    );
    Ok(first.is_zero() && f.norm(one_minus) == f.norm(f.div(c, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, m: u32, n: u32, s: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(p, m, n, s, None).unwrap())
    }

    fn poly(f: &Arc<FieldSpec>, ints: &[i64]) -> LinearizedPoly {
        LinearizedPoly::new(f.clone(), ints.iter().map(|&c| f.from_int(c)).collect()).unwrap()
    }

    #[test]
    fn g_table_rows() {
        let f = field(3, 1, 5, 1);
        for u in f.elements() {
            let g = g_sequence_forward(&f, u, 5);
            let fr = |x, k| f.frobenius(x, k);
            let one = f.one();
            let om = f.sub(one, u);
            assert_eq!(g[3], f.sub(f.add(fr(u, 1), u), one));
            let g4 = f.sub(f.mul(fr(om, 2), om), fr(u, 1));
            assert_eq!(g[4], g4);
            let g5 = f.sub(
                f.sub(f.sub(one, f.mul(fr(u, 3), u)), f.mul(fr(om, 2), om)),
                f.mul(fr(om, 3), fr(om, 1)),
            );
            assert_eq!(g[5], g5);
        }
    }

    #[test]
    fn f8_worked_case() {
        let f = field(2, 1, 3, 1);
        let l = poly(&f, &[1, 1, 1]);
        let st = Deg2State::new(&l).unwrap();
        assert_eq!(st.u, f.one());
        assert_eq!(st.g.get(2), f.zero());
        assert_eq!(st.g.get(3), f.one());
        assert_eq!(st.a_matrix().unwrap(), SqMatrix::identity(f.clone(), 2));
        assert_eq!(classify_proj_deg2(&l).unwrap().count, 3);
        assert_eq!(classify_lin_deg2(&l).unwrap().count, 2);
    }

    #[test]
    fn b_zero_odd_n_non_square() {
        let f = field(3, 1, 3, 1);
        let l = poly(&f, &[1, 0, 1]);
        let c = classify_proj_deg2(&l).unwrap();
        assert_eq!((c.count, c.tag), (0, "proj2:b0:n-odd:non-square"));
    }

    #[test]
    fn example_one_polynomial() {
        let f = field(3, 1, 5, 1);
        let l = poly(&f, &[-1, 0, 1]);
        let c = classify_proj_deg2(&l).unwrap();
        assert_eq!(c.count, 2);
        let c = classify_lin_deg2(&l).unwrap();
        assert_eq!(c.count, 1);
    }

    #[test]
    fn errors() {
        let f = field(2, 1, 3, 1);
        assert!(matches!(
            Deg2State::new(&poly(&f, &[1, 1])),
            Err(Error::WrongDegree { expected: 2, .. })
        ));
        assert_eq!(
            Deg2State::new(&poly(&f, &[1, 0, 1])).unwrap_err(),
            Error::ZeroMiddleCoefficient
        );
        assert_eq!(
            classify_proj_deg2(&poly(&f, &[0, 1, 1])).unwrap_err(),
            Error::ZeroOuterCoefficient
        );
        assert_eq!(
            trace_formula_deg2(&poly(&f, &[1, 1, 1])).unwrap_err(),
            Error::UnsupportedN(3)
        );
    }
}
