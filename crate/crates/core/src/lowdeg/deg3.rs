//! `L = a x + b x^σ + c x^{σ^2} + d x^{σ^3}`, `ad ≠ 0`.
//!
//! With `w = a^σ c / b^{σ+1}` and `z = b^σ d / c^{σ+1}` (so `bc ≠ 0`), the
//! sequence `H_0 = 1, H_1 = -1, H_2 = 1 - z` and
//! `H_k = -H_{k-1} - z^{σ^{k-2}} H_{k-2} - w^{σ^{k-2}} z^{σ^{k-2}+σ^{k-3}} H_{k-3}`
//! determines `A_L` through `H_n, H_{n-1}, H_{n-2}`.

use std::sync::Arc;

use super::{expect_degree, Sequence};
use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::semimat::{projective_points, CharPoly, EigenProfile, SqMatrix};
use crate::skewpoly::LinearizedPoly;

fn seed(f: &FieldSpec, z: FieldElement, len: usize) -> Vec<FieldElement> {
    let mut h = vec![f.one(), f.neg(f.one()), f.sub(f.one(), z)];
    h.truncate(len + 1);
    h
}

/// `H_0..H_len` by the recursion with conjugated `w, z`.
pub fn h_sequence_forward(
    f: &FieldSpec,
    w: FieldElement,
    z: FieldElement,
    len: usize,
) -> Vec<FieldElement> {
    let mut h = seed(f, z, len);
    for k in 3..=len {
        let e = k as i64 - 2;
        let zk = f.frobenius(z, e);
        let t2 = f.mul(zk, h[k - 2]);
        let coeff = f.mul(f.frobenius(w, e), f.mul(zk, f.frobenius(z, e - 1)));
        let t3 = f.mul(coeff, h[k - 3]);
        h.push(f.neg(f.add(f.add(h[k - 1], t2), t3)));
    }
    h
}

/// `H_0..H_len` by `H_k = -H_{k-1}^σ - z H_{k-2}^{σ^2} - w^σ z^{σ+1} H_{k-3}^{σ^3}`.
pub fn h_sequence_conjugated(
    f: &FieldSpec,
    w: FieldElement,
    z: FieldElement,
    len: usize,
) -> Vec<FieldElement> {
    let mut h = seed(f, z, len);
    let coeff = f.mul(f.frobenius(w, 1), f.mul(f.frobenius(z, 1), z));
    for k in 3..=len {
        let t1 = f.frobenius(h[k - 1], 1);
        let t2 = f.mul(z, f.frobenius(h[k - 2], 2));
        let t3 = f.mul(coeff, f.frobenius(h[k - 3], 3));
        h.push(f.neg(f.add(f.add(t1, t2), t3)));
    }
    h
}

#[derive(Clone, Debug)]
pub struct Deg3State {
    field: Arc<FieldSpec>,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
    pub w: FieldElement,
    pub z: FieldElement,
    /// `H_0..H_n`.
    pub h: Sequence,
    /// `N(c/d)`.
    pub norm_cd: FieldElement,
}

fn outer_coefficients(l: &LinearizedPoly) -> Result<[FieldElement; 4]> {
    expect_degree(l, 3)?;
    let co = [l.coeff(0), l.coeff(1), l.coeff(2), l.coeff(3)];
    if co[0].is_zero() || co[3].is_zero() {
        return Err(Error::ZeroOuterCoefficient);
    }
    Ok(co)
}

impl Deg3State {
    /// Requires σ-degree 3 and `abcd ≠ 0`. Both recursions are evaluated and
    /// must agree, and the boundary identity at `k = n` must hold.
    pub fn new(l: &LinearizedPoly) -> Result<Self> {
        let [a, b, c, d] = outer_coefficients(l)?;
        if b.is_zero() || c.is_zero() {
            return Err(Error::ZeroInnerCoefficient);
        }
        let f = l.field().clone();
        let n = f.n() as usize;
        let w = f.div(f.mul(f.frobenius(a, 1), c), f.mul(f.frobenius(b, 1), b))?;
        let z = f.div(f.mul(f.frobenius(b, 1), d), f.mul(f.frobenius(c, 1), c))?;
        let h5 = h_sequence_forward(&f, w, z, n);
        let h6 = h_sequence_conjugated(&f, w, z, n);
        if h5 != h6 {
            return Err(Error::Inconsistent(format!(
                "H recursions disagree for w = {w}, z = {z}"
            )));
        }
        let st = Deg3State {
            norm_cd: f.norm(f.div(c, d)?),
            field: f,
            a,
            b,
            c,
            d,
            w,
            z,
            h: Sequence(h5),
        };
        if !st.boundary_identity_holds() {
            return Err(Error::Inconsistent(
                "H boundary identity fails at k = n".into(),
            ));
        }
        Ok(st)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    fn n(&self) -> i64 {
        self.field.n() as i64
    }

    /// `H_n^{σ^3} + H_{n-1}^{σ^3} + z^σ H_{n-2}^{σ^3} = H_n + H_{n-1}^σ + z H_{n-2}^{σ^2}`.
    pub fn boundary_identity_holds(&self) -> bool {
        let f = &self.field;
        let n = self.n();
        let (hn, hn1, hn2) = (self.h.get(n), self.h.get(n - 1), self.h.get(n - 2));
        let lhs = f.add(
            f.add(f.frobenius(hn, 3), f.frobenius(hn1, 3)),
            f.mul(f.frobenius(self.z, 1), f.frobenius(hn2, 3)),
        );
        let rhs = f.add(
            f.add(hn, f.frobenius(hn1, 1)),
            f.mul(self.z, f.frobenius(hn2, 2)),
        );
        lhs == rhs
    }

    /// The closed-form `A_L`:
    ///
    /// ```text
    /// N(c/d) [ H_n^{σ^-2} + H_{n-1}^{σ^-1} + z^{σ^-2} H_{n-2}   -(a/b) z^{σ^-1} H_{n-2}^σ   -(a/c) H_{n-1}^σ                     ]
    ///        [ (d/c)^{σ^-2} (H_{n-1}^{σ^-1} + H_{n-2})           H_n^{σ^-1} + H_{n-1}       -(b/c)(wz H_{n-2}^{σ^2} + H_{n-1}^σ) ]
    ///        [ (d/c)^{σ^-1+σ^-2} H_{n-2}                         (d/c)^{σ^-1} H_{n-1}       H_n                                  ]
    /// ```
    ///
    /// The `(0, 1)` entry follows from `A_L C_L = C_L A_L^σ`, which ties row 0
    /// of `A_L` to row 2 of `A_L^σ`.
    pub fn a_matrix(&self) -> Result<SqMatrix> {
        let f = &self.field;
        let n = self.n();
        let fr = |x, k| f.frobenius(x, k);
        let (hn, hn1, hn2) = (self.h.get(n), self.h.get(n - 1), self.h.get(n - 2));
        let dc = f.div(self.d, self.c)?;
        let m = [
            [
                f.add(f.add(fr(hn, -2), fr(hn1, -1)), f.mul(fr(self.z, -2), hn2)),
                f.neg(f.mul(f.div(self.a, self.b)?, f.mul(fr(self.z, -1), fr(hn2, 1)))),
                f.neg(f.mul(f.div(self.a, self.c)?, fr(hn1, 1))),
            ],
            [
                f.mul(fr(dc, -2), f.add(fr(hn1, -1), hn2)),
                f.add(fr(hn, -1), hn1),
                f.neg(f.mul(
                    f.div(self.b, self.c)?,
                    f.add(f.mul(f.mul(self.w, self.z), fr(hn2, 2)), fr(hn1, 1)),
                )),
            ],
            [
                f.mul(f.mul(fr(dc, -1), fr(dc, -2)), hn2),
                f.mul(fr(dc, -1), hn1),
                hn,
            ],
        ];
        let rows = m
            .iter()
            .map(|row| row.iter().map(|&x| f.mul(self.norm_cd, x)).collect())
            .collect();
        SqMatrix::from_rows(f.clone(), rows)
    }

    /// `χ_0 = N(-a/d)`.
    pub fn chi0(&self) -> FieldElement {
        let f = &self.field;
        f.norm(f.neg(f.div(self.a, self.d).expect("d ≠ 0")))
    }

    /// `χ_1 = N(c/d)^2 (a_1 + a_2 + a_3)` with, writing `H_{n-i}^{(k)}` for `H_{n-i}^{σ^k}`,
    ///
    /// ```text
    /// a_1 = w^σ z^{σ+1} (H_{n-1}^{(1)} H_{n-2}^{(3)} + H_{n-2}^{(2)} H_{n-2}^{(3)}
    ///                    + z^σ H_{n-2}^{(3)} H_{n-3}^{(3)} + w^{σ^2} z^{σ+σ^2} H_{n-3}^{(3)} H_{n-3}^{(4)})
    /// a_2 = w^σ z^{σ+1} (H_{n-1}^{(3)} H_{n-2}^{(2)} - H_n^{(2)} H_{n-3}^{(3)})
    /// a_3 = w^{σ^2} z^{σ+σ^2} (H_{n-1}^{(2)} H_{n-2}^{(4)} - H_n^{(2)} H_{n-3}^{(4)})
    ///       + z^σ (H_{n-1}^{(2)} H_{n-1}^{(3)} - H_n^{(2)} H_{n-2}^{(3)})
    /// ```
    pub fn chi1(&self) -> FieldElement {
        let f = &self.field;
        let n = self.n();
        let fr = |x, k| f.frobenius(x, k);
        let h = |i: i64, k: i64| fr(self.h.get(n - i), k);
        let (w, z) = (self.w, self.z);
        let ws_z = f.mul(fr(w, 1), f.mul(fr(z, 1), z)); // w^σ z^{σ+1}
        let ws2_z = f.mul(fr(w, 2), f.mul(fr(z, 1), fr(z, 2))); // w^{σ^2} z^{σ+σ^2}
        let a1 = f.mul(
            ws_z,
            f.sum([
                f.mul(h(1, 1), h(2, 3)),
                f.mul(h(2, 2), h(2, 3)),
                f.mul(fr(z, 1), f.mul(h(2, 3), h(3, 3))),
                f.mul(ws2_z, f.mul(h(3, 3), h(3, 4))),
            ]),
        );
        let a2 = f.mul(
            ws_z,
            f.sub(f.mul(h(1, 3), h(2, 2)), f.mul(h(0, 2), h(3, 3))),
        );
        let a3 = f.add(
            f.mul(
                ws2_z,
                f.sub(f.mul(h(1, 2), h(2, 4)), f.mul(h(0, 2), h(3, 4))),
            ),
            f.mul(
                fr(z, 1),
                f.sub(f.mul(h(1, 2), h(1, 3)), f.mul(h(0, 2), h(2, 3))),
            ),
        );
        let ncd = self.norm_cd;
        f.mul(f.mul(ncd, ncd), f.sum([a1, a2, a3]))
    }

    /// `χ_2 = Tr A_L`.
    pub fn chi2(&self) -> FieldElement {
        let f = &self.field;
        let n = self.n();
        let fr = |x, k| f.frobenius(x, k);
        let (hn, hn1, hn2) = (self.h.get(n), self.h.get(n - 1), self.h.get(n - 2));
        let s = f.sum([
            fr(hn, 2),
            fr(hn, 1),
            hn,
            fr(hn1, 1),
            fr(hn1, 2),
            f.mul(self.z, fr(hn2, 2)),
        ]);
        f.mul(self.norm_cd, s)
    }

    /// `x^3 - χ_2 x^2 + χ_1 x - χ_0`.
    pub fn char_poly(&self) -> CharPoly {
        let f = &self.field;
        CharPoly::from_coeffs(
            f,
            vec![f.neg(self.chi0()), self.chi1(), f.neg(self.chi2()), f.one()],
        )
    }

    /// `H_{n-1} = H_{n-2} = 0` and `H_n ∈ F_q`.
    pub fn scalar_criterion(&self) -> bool {
        let n = self.n();
        self.h.get(n - 1).is_zero()
            && self.h.get(n - 2).is_zero()
            && self.field.in_base_field(self.h.get(n))
    }

    /// `H_{n-1} = H_{n-2} = 0` and `H_n N(c/d) = 1`.
    pub fn identity_criterion(&self) -> bool {
        let n = self.n();
        let f = &self.field;
        self.h.get(n - 1).is_zero()
            && self.h.get(n - 2).is_zero()
            && f.mul(self.h.get(n), self.norm_cd) == f.one()
    }

    /// For `n = 5`: `z^{σ^2+1} + z^σ - 1 = 0` and `z^σ + z - 1 - w^σ z^{1+σ} = 0`.
    pub fn n5_scalar_criterion(&self) -> Option<bool> {
        if self.n() != 5 {
            return None;
        }
        let f = &self.field;
        let (w, z) = (self.w, self.z);
        let zs = f.frobenius(z, 1);
        let first = f.sub(f.add(f.mul(f.frobenius(z, 2), z), zs), f.one());
        let second = f.sub(
            f.sub(f.add(zs, z), f.one()),
            f.mul(f.frobenius(w, 1), f.mul(z, zs)),
        );
        Some(first.is_zero() && second.is_zero())
    }

    /// For `n = 5`: the scalar criterion together with `N(z) N(c/d) = -1`.
    pub fn n5_identity_criterion(&self) -> Option<bool> {
        let f = &self.field;
        let base = self.n5_scalar_criterion()?;
        Some(base && f.mul(f.norm(self.z), self.norm_cd) == f.neg(f.one()))
    }

    /// For `n = 5` under the scalar criterion: whether `H_5 = -N(z)`.
    pub fn h5_identity(&self) -> Option<bool> {
        if !self.n5_scalar_criterion()? {
            return None;
        }
        let f = &self.field;
        Some(self.h.get(5) == f.neg(f.norm(self.z)))
    }
}

pub fn a_matrix_deg3(l: &LinearizedPoly) -> Result<SqMatrix> {
    Deg3State::new(l)?.a_matrix()
}

pub fn chi_deg3(l: &LinearizedPoly) -> Result<CharPoly> {
    Ok(Deg3State::new(l)?.char_poly())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg3ProjClass {
    pub count: u64,
    /// Multiplicity pairs `(m_a, m_g)` of the `F_q`-eigenvalues, descending.
    pub signature: Vec<(usize, usize)>,
    pub tag: &'static str,
    /// `H_{n-1} = H_{n-2} = 0 ∧ H_n ∈ F_q`, when `bc ≠ 0`.
    pub scalar_criterion: Option<bool>,
    /// The `z, w` form of the same criterion, when `n = 5` and `bc ≠ 0`.
    pub n5_scalar_criterion: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg3LinClass {
    pub nullity: usize,
    /// `1 - χ_2 + χ_1 - χ_0 ≠ 0`.
    pub permutation: bool,
    /// `H_{n-1} = H_{n-2} = 0 ∧ H_n N(c/d) = 1`, when `bc ≠ 0`.
    pub identity_criterion: Option<bool>,
    pub n5_identity_criterion: Option<bool>,
    /// `H_5 = -N(z)`, checked only when its hypotheses hold.
    pub h5_identity: Option<bool>,
}

fn signature_row(q: u32, sig: &[(usize, usize)]) -> Result<(u64, &'static str)> {
    let q = q as u64;
    let row = match sig {
        [(3, 3)] => (q * q + q + 1, "proj3:(3,3)"),
        [(3, 2)] => (q + 1, "proj3:(3,2)"),
        [(3, 1)] => (1, "proj3:(3,1)"),
        [(1, 1)] => (1, "proj3:(1,1)"),
        [(2, 2), (1, 1)] => (q + 2, "proj3:(2,2)+(1,1)"),
        [(2, 1), (1, 1)] => (2, "proj3:(2,1)+(1,1)"),
        [(1, 1), (1, 1), (1, 1)] => (3, "proj3:3x(1,1)"),
        [] => (0, "proj3:none"),
        other => {
            return Err(Error::Inconsistent(format!(
                "impossible eigen signature {other:?}"
            )))
        }
    };
    Ok(row)
}

fn profile(l: &LinearizedPoly) -> Result<EigenProfile> {
    SqMatrix::a_matrix(l)?.eigen_profile()
}

/// Number of roots of `P_L = a + b y + c y^{σ+1} + d y^{σ^2+σ+1}` from the
/// multiplicity signature of `A_L`.
pub fn classify_proj_deg3(l: &LinearizedPoly) -> Result<Deg3ProjClass> {
    let [_, b, c, _] = outer_coefficients(l)?;
    let f = l.field();
    let prof = profile(l)?;
    let signature = prof.signature();
    let (count, tag) = signature_row(f.q(), &signature)?;
    let from_profile = prof.projective_count(f.q());
    if count != from_profile {
        return Err(Error::Inconsistent(format!(
            "signature table gives {count}, eigenspaces give {from_profile}"
        )));
    }
    let (scalar_criterion, n5_scalar_criterion) = if b.is_zero() || c.is_zero() {
        (None, None)
    } else {
        let st = Deg3State::new(l)?;
        (Some(st.scalar_criterion()), st.n5_scalar_criterion())
    };
    Ok(Deg3ProjClass {
        count,
        signature,
        tag,
        scalar_criterion,
        n5_scalar_criterion,
    })
}

/// Nullity of `L` as the geometric multiplicity of the eigenvalue 1.
pub fn classify_lin_deg3(l: &LinearizedPoly) -> Result<Deg3LinClass> {
    let [_, b, c, _] = match outer_coefficients(l) {
        Err(Error::ZeroOuterCoefficient) => return Err(Error::ZeroCoefficient),
        other => other?,
    };
    let f = l.field();
    let prof = profile(l)?;
    let nullity = prof.geometric(f.one());
    let state = if b.is_zero() || c.is_zero() {
        None
    } else {
        Some(Deg3State::new(l)?)
    };
    let chi = match &state {
        Some(st) => st.char_poly(),
        None => SqMatrix::a_matrix(l)?.char_poly()?,
    };
    let permutation = !chi.eval(f, f.one()).is_zero();
    Ok(Deg3LinClass {
        nullity,
        permutation,
        identity_criterion: state.as_ref().map(Deg3State::identity_criterion),
        n5_identity_criterion: state.as_ref().and_then(Deg3State::n5_identity_criterion),
        h5_identity: state.as_ref().and_then(Deg3State::h5_identity),
    })
}

/// `(q^3 - 1)/(q - 1)`, the maximum projective count in σ-degree 3.
pub fn max_proj_count(q: u32) -> u64 {
    projective_points(q, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, m: u32, n: u32, s: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(p, m, n, s, None).unwrap())
    }

    fn random_poly(f: &Arc<FieldSpec>, rng: &mut ChaCha8Rng) -> LinearizedPoly {
        let coeffs = (0..4)
            .map(|_| f.element(rng.random_range(1..f.order()) as u64).unwrap())
            .collect();
        LinearizedPoly::new(f.clone(), coeffs).unwrap()
    }

    #[test]
    fn h_table_rows() {
        let f = field(2, 1, 5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = f.element(rng.random_range(0..f.order()) as u64).unwrap();
            let z = f.element(rng.random_range(0..f.order()) as u64).unwrap();
            let h = h_sequence_forward(&f, w, z, 5);
            let fr = |x, k| f.frobenius(x, k);
            let one = f.one();
            let h3 = f.sub(
                f.sub(f.add(fr(z, 1), z), one),
                f.mul(fr(w, 1), f.mul(z, fr(z, 1))),
            );
            assert_eq!(h[3], h3);
            let h4 = f.sum([
                one,
                f.neg(z),
                f.neg(fr(z, 1)),
                f.neg(fr(z, 2)),
                f.mul(fr(w, 2), f.mul(fr(z, 1), fr(z, 2))),
                f.mul(z, fr(z, 2)),
                f.mul(fr(w, 1), f.mul(z, fr(z, 1))),
            ]);
            assert_eq!(h[4], h4);
        }
    }

    #[test]
    fn closed_forms_match_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n, s) in [(2, 4, 1), (2, 5, 2), (3, 3, 1), (3, 4, 3), (2, 3, 1)] {
            let f = field(p, 1, n, s);
            for _ in 0..300 {
                let l = random_poly(&f, &mut rng);
                let st = Deg3State::new(&l).unwrap();
                let direct = SqMatrix::a_matrix(&l).unwrap();
                assert_eq!(st.a_matrix().unwrap(), direct, "{l} over {f}");
                assert_eq!(st.char_poly(), direct.char_poly().unwrap(), "{l} over {f}");
            }
        }
    }

    #[test]
    fn errors() {
        let f = field(2, 1, 4, 1);
        let l = LinearizedPoly::new(f.clone(), vec![f.one(), f.zero(), f.one(), f.one()]).unwrap();
        assert_eq!(Deg3State::new(&l).unwrap_err(), Error::ZeroInnerCoefficient);
        let l = LinearizedPoly::new(f.clone(), vec![f.zero(), f.one(), f.one(), f.one()]).unwrap();
        assert_eq!(classify_lin_deg3(&l).unwrap_err(), Error::ZeroCoefficient);
        assert_eq!(
            classify_proj_deg3(&l).unwrap_err(),
            Error::ZeroOuterCoefficient
        );
    }
}
