//! Root counts of `L` and `P_L` from the matrix `A_L`.
//!
//! * the nullity of `L_α` equals the nullity of `A_L - N(α) I`;
//! * `P_L` has `Σ_{λ ∈ F_q} (q^{n_λ} - 1)/(q - 1)` roots, `n_λ` the
//!   eigenspace dimension of `λ`;
//! * the same count follows from the σ-degrees of `gcrc(L, x^{σ^n} - λx)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gfield::FieldElement;
use crate::semimat::{projective_points, EigenProfile, SqMatrix};
use crate::skewpoly::LinearizedPoly;

/// Result of the `A_L = λ I` test.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FullKernel {
    /// `A_L = λ I` with `λ ≠ 1`: `P_L` has `(q^d - 1)/(q - 1)` roots.
    FullSplitProjective(FieldElement),
    /// `A_L = I`: `L` has `q^d` roots (and `P_L` splits completely).
    FullKernelLinear,
    Neither,
}

impl FullKernel {
    pub fn splits_projective(self) -> bool {
        !matches!(self, FullKernel::Neither)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCountReport {
    pub degree: usize,
    /// Number of leading zero coefficients removed before building `A_L`.
    pub shift: usize,
    /// `dim_{F_q} ker L`, from `A_L - I`.
    pub nullity: usize,
    /// `q^nullity`.
    pub roots_l: u128,
    /// `deg_σ gcrc(L, x^{σ^n} - x)`.
    pub nullity_gcrc: usize,
    /// Nullity of the Dickson matrix of `L` reduced to σ-degree below `n`.
    pub nullity_dickson: usize,
    /// Root count of `P_L` from the eigen profile; `None` when `a_0 = 0`.
    pub roots_p: Option<u64>,
    /// Root count of `P_L` from the per-`λ` gcrc degrees.
    pub roots_p_gcrc: Option<u64>,
    pub profile: Option<EigenProfile>,
    pub per_lambda_gcrc_degrees: BTreeMap<FieldElement, usize>,
    pub full_kernel: Option<FullKernel>,
    pub norm_condition: Option<bool>,
    pub methods_agree: bool,
}

fn require_nonzero(l: &LinearizedPoly) -> Result<usize> {
    l.degree().ok_or(Error::ZeroPolynomial)
}

fn require_projective(l: &LinearizedPoly) -> Result<usize> {
    let d = require_nonzero(l)?;
    if l.coeff(0).is_zero() {
        return Err(Error::ZeroConstant);
    }
    Ok(d)
}

/// `dim_{F_q} ker L`, as the nullity of `A_{L'} - I` where `L'` has `a_0 ≠ 0`.
pub fn nullity_of(l: &LinearizedPoly) -> Result<usize> {
    nullity_at(l, FieldElement::ONE)
}

/// `null(L_α) = null(A_L - N(α) I)`.
pub fn nullity_twisted(l: &LinearizedPoly, alpha: FieldElement) -> Result<usize> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    nullity_at(l, l.field().norm(alpha))
}

fn nullity_at(l: &LinearizedPoly, lambda: FieldElement) -> Result<usize> {
    require_nonzero(l)?;
    let (normalized, _) = l.normalize_a0()?;
    if normalized.degree() == Some(0) {
        return Ok(0);
    }
    Ok(SqMatrix::a_matrix(&normalized)?
        .minus_scalar(lambda)
        .nullity())
}

pub fn eigen_profile_of(l: &LinearizedPoly) -> Result<EigenProfile> {
    require_projective(l)?;
    SqMatrix::a_matrix(l)?.eigen_profile()
}

/// Number of `y ∈ F_{q^n}` with `P_L(y) = 0`, from the eigen profile of `A_L`.
pub fn count_proj_roots(l: &LinearizedPoly) -> Result<u64> {
    let d = require_projective(l)?;
    if d == 0 {
        return Ok(0);
    }
    Ok(eigen_profile_of(l)?.projective_count(l.field().q()))
}

/// `d_λ = deg_σ gcrc(L, x^{σ^n} - λ x)` for every `λ ∈ F_q^*`.
pub fn gcrc_degrees(l: &LinearizedPoly) -> Result<BTreeMap<FieldElement, usize>> {
    require_nonzero(l)?;
    let field = l.field();
    field
        .base_field_elements()
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|lambda| {
            let central = LinearizedPoly::central(field.clone(), lambda);
            let g = l.gcrc(&central)?;
            Ok((lambda, g.degree().unwrap_or(0)))
        })
        .collect()
}

/// `Σ_{λ ∈ F_q^*} (q^{d_λ} - 1)/(q - 1)`.
pub fn count_proj_roots_gcrc(l: &LinearizedPoly) -> Result<u64> {
    require_projective(l)?;
    let q = l.field().q();
    Ok(gcrc_degrees(l)?
        .values()
        .map(|&d| projective_points(q, d))
        .sum())
}

pub fn full_kernel_check(l: &LinearizedPoly) -> Result<FullKernel> {
    let a = SqMatrix::a_matrix(l)?;
    Ok(match a.as_scalar() {
        Some(lambda) if lambda == FieldElement::ONE => FullKernel::FullKernelLinear,
        Some(lambda) => FullKernel::FullSplitProjective(lambda),
        None => FullKernel::Neither,
    })
}

/// `N(a_0) = (-1)^{nd} N(a_d)`, a necessary condition for `q^d` roots.
pub fn norm_condition_holds(l: &LinearizedPoly) -> Result<bool> {
    let d = require_nonzero(l)?;
    let f = l.field();
    let (a0, ad) = (l.coeff(0), l.coeff(d));
    if a0.is_zero() || ad.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let rhs = f.norm(ad);
    let rhs = if (f.n() as usize * d) % 2 == 1 {
        f.neg(rhs)
    } else {
        rhs
    };
    Ok(f.norm(a0) == rhs)
}

/// Every admissible projective root count for σ-degree `d`:
/// `{Σ_i (q^{n_i} - 1)/(q - 1) : Σ n_i ≤ d}`.
pub fn admissible_counts(q: u32, d: usize) -> BTreeSet<u64> {
    fn walk(q: u32, remaining: usize, max_part: usize, acc: u64, out: &mut BTreeSet<u64>) {
        out.insert(acc);
        for part in (1..=max_part.min(remaining)).rev() {
            walk(
                q,
                remaining - part,
                part,
                acc + projective_points(q, part),
                out,
            );
        }
    }
    let mut out = BTreeSet::new();
    walk(q, d, d, 0, &mut out);
    out
}

/// Assembles every count together with a cross-method agreement flag.
pub fn report(l: &LinearizedPoly) -> Result<RootCountReport> {
    let degree = require_nonzero(l)?;
    let field = l.field();
    let q = field.q();
    let (normalized, shift) = l.normalize_a0()?;
    let nullity = nullity_of(l)?;
    let central = LinearizedPoly::central(field.clone(), FieldElement::ONE);
    let nullity_gcrc = l.gcrc(&central)?.degree().unwrap_or(0);
    let nullity_dickson = l.fold_to_map().dickson()?.nullity();
    let roots_l = (q as u128).pow(nullity as u32);

    let mut rep = RootCountReport {
        degree,
        shift,
        nullity,
        roots_l,
        nullity_gcrc,
        nullity_dickson,
        roots_p: None,
        roots_p_gcrc: None,
        profile: None,
        per_lambda_gcrc_degrees: BTreeMap::new(),
        full_kernel: None,
        norm_condition: None,
        methods_agree: nullity == nullity_gcrc && nullity == nullity_dickson,
    };

    if shift == 0 {
        rep.per_lambda_gcrc_degrees = gcrc_degrees(l)?;
        let by_gcrc: u64 = rep
            .per_lambda_gcrc_degrees
            .values()
            .map(|&d| projective_points(q, d))
            .sum();
        rep.roots_p_gcrc = Some(by_gcrc);
        rep.norm_condition = Some(norm_condition_holds(l)?);
        if degree == 0 {
            rep.roots_p = Some(0);
        } else {
            let profile = eigen_profile_of(l)?;
            rep.roots_p = Some(profile.projective_count(q));
            rep.profile = Some(profile);
            rep.full_kernel = Some(full_kernel_check(l)?);
        }
        rep.methods_agree &= rep.roots_p == rep.roots_p_gcrc;
    } else {
        debug_assert!(!normalized.coeff(0).is_zero());
    }
    Ok(rep)
}
