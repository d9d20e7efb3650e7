//! σ-linearized polynomials `L = a_0 x + a_1 x^σ + … + a_d x^{σ^d}` under
//! addition and composition.
//!
//! The same coefficient vector also stands for the projective polynomial
//! `P_L(y) = Σ a_i y^{[i]}`, `[i] = 1 + q^s + … + q^{s(i-1)}`, through
//! [`LinearizedPoly::proj_eval`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::semimat::SqMatrix;

#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly[{self}]")
    }
}

/// Text codec: `e0;e1;…;ed`, integer-encoded coefficients ascending.
impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn same_field(a: &Arc<FieldSpec>, b: &Arc<FieldSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LinearizedPoly {
    /// Builds a polynomial from `a_0..a_d`, dropping trailing zeros.
    pub fn new(field: Arc<FieldSpec>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::MixedFields);
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    pub(crate) fn from_trusted(field: Arc<FieldSpec>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearizedPoly { field, coeffs }
    }

    pub fn parse(field: Arc<FieldSpec>, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = text
            .split(';')
            .map(|tok| {
                let tok = tok.trim();
                let v: u64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("'{tok}' is not an element code")))?;
                field
                    .element(v)
                    .map_err(|_| Error::Parse(format!("element code {v} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(field, coeffs))
    }

    pub fn zero(field: Arc<FieldSpec>) -> Self {
        LinearizedPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    /// The composition identity `x`.
    pub fn identity(field: Arc<FieldSpec>) -> Self {
        Self::monomial(field, FieldElement::ONE, 0)
    }

    /// `c · x^{σ^k}`.
    pub fn monomial(field: Arc<FieldSpec>, c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_trusted(field, coeffs)
    }

    /// `x^{σ^n} - λ x`.
    pub fn central(field: Arc<FieldSpec>, lambda: FieldElement) -> Self {
        let n = field.n() as usize;
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = FieldElement::ONE;
        coeffs[0] = field.sub(coeffs[0], lambda);
        Self::from_trusted(field, coeffs)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `a_i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// σ-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::from_trusted(self.field.clone(), coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::from_trusted(self.field.clone(), coeffs))
    }

    /// `c · L`, which is also `(c x) ∘ L`.
    pub fn scale(&self, c: FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(c, a)).collect();
        Self::from_trusted(self.field.clone(), coeffs)
    }

    /// Scales so that the leading coefficient is 1. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(
                self.field
                    .inv(lead)
                    .expect("leading coefficient is nonzero"),
            ),
            None => self.clone(),
        }
    }

    /// `L ∘ M = Σ_k (Σ_i a_i b_{k-i}^{σ^i}) x^{σ^k}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = f.mul(a, f.frobenius(b, i as i64));
                out[i + j] = f.add(out[i + j], term);
            }
        }
        Ok(Self::from_trusted(self.field.clone(), out))
    }

    /// Right division: returns `(Q, R)` with `self = Q ∘ divisor + R` and
    /// `deg_σ R < deg_σ divisor`.
    pub fn div_rem_right(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor)?;
        let dl = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let f = &self.field;
        let lead = divisor.coeffs[dl];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; rem.len().saturating_sub(dl)];
        while let Some(dr) = rem.len().checked_sub(1) {
            if dr < dl {
                break;
            }
            let k = dr - dl;
            // (t x^{σ^k}) ∘ divisor has leading coefficient t · lead^{σ^k}
            let t = f.div(rem[dr], f.frobenius(lead, k as i64))?;
            quot[k] = t;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let term = f.mul(t, f.frobenius(b, k as i64));
                rem[k + j] = f.sub(rem[k + j], term);
            }
            debug_assert!(rem[dr].is_zero());
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((
            Self::from_trusted(self.field.clone(), quot),
            Self::from_trusted(self.field.clone(), rem),
        ))
    }

    /// `self mod_r divisor`.
    pub fn rem_right(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem_right(divisor)?.1)
    }

    /// Monic greatest common right component by the right Euclidean algorithm.
    pub fn gcrc(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_right(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common left composition.
    ///
    /// Runs the extended right Euclidean algorithm keeping
    /// `r_i = s_i ∘ L + t_i ∘ M`; at the first zero remainder `s ∘ L = -t ∘ M`
    /// is the least common left composition.
    pub fn lclc(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput);
        }
        let field = self.field.clone();
        let mut r_prev = self.clone();
        let mut r_cur = other.clone();
        let mut s_prev = Self::identity(field.clone());
        let mut s_cur = Self::zero(field.clone());
        while !r_cur.is_zero() {
            let (q, r) = r_prev.div_rem_right(&r_cur)?;
            let s_next = s_prev.sub(&q.compose(&s_cur)?)?;
            r_prev = r_cur;
            r_cur = r;
            s_prev = s_cur;
            s_cur = s_next;
        }
        Ok(s_cur.compose(self)?.monic())
    }

    /// `L(x) = Σ a_i x^{σ^i}`.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        let mut xs = x;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xs = f.frobenius(xs, 1);
            }
            acc = f.add(acc, f.mul(a, xs));
        }
        acc
    }

    /// `P_L(y) = Σ a_i y^{[i]}` with `y^{[i]} = y · y^σ ⋯ y^{σ^{i-1}}`.
    pub fn proj_eval(&self, y: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        let mut bracket = FieldElement::ONE;
        let mut conj = y;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                bracket = f.mul(bracket, conj);
                conj = f.frobenius(conj, 1);
            }
            acc = f.add(acc, f.mul(a, bracket));
        }
        acc
    }

    /// `y^{[i]}`.
    pub fn bracket_power(field: &FieldSpec, y: FieldElement, i: usize) -> FieldElement {
        field.product((0..i as i64).map(|j| field.frobenius(y, j)))
    }

    /// `L_α = Σ a_i α^{[i]} x^{σ^i}`.
    pub fn twist(&self, alpha: FieldElement) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        if !self.field.contains(alpha) {
            return Err(Error::MixedFields);
        }
        let f = &self.field;
        let mut bracket = FieldElement::ONE;
        let mut conj = alpha;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if i > 0 {
                    bracket = f.mul(bracket, conj);
                    conj = f.frobenius(conj, 1);
                }
                f.mul(a, bracket)
            })
            .collect();
        Ok(Self::from_trusted(self.field.clone(), coeffs))
    }

    /// The `n × n` Dickson matrix with `D[i][j] = a_{(j-i) mod n}^{σ^i}`.
    pub fn dickson(&self) -> Result<SqMatrix> {
        let n = self.field.n() as usize;
        if let Some(d) = self.degree() {
            if d >= n {
                return Err(Error::DegreeTooLarge {
                    degree: d,
                    n: self.field.n(),
                });
            }
        }
        let f = &self.field;
        let mut mat = SqMatrix::zero(self.field.clone(), n);
        for i in 0..n {
            for j in 0..n {
                let a = self.coeff((j + n - i) % n);
                mat.set(i, j, f.frobenius(a, i as i64));
            }
        }
        Ok(mat)
    }

    /// The polynomial of σ-degree below `n` defining the same map on
    /// `F_{q^n}`, obtained by reducing exponents with `x^{σ^n} = x`.
    pub fn fold_to_map(&self) -> Self {
        let n = self.field.n() as usize;
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i % n] = self.field.add(out[i % n], a);
        }
        Self::from_trusted(self.field.clone(), out)
    }

    /// Shifts out leading zero coefficients: if `a_0 = … = a_{k-1} = 0 ≠ a_k`,
    /// returns `L' = Σ_{i≥k} a_i^{σ^{-k}} x^{σ^{i-k}}`, so `L = (L')^{σ^k}`
    /// pointwise and `ker L' = ker L`. Also returns `k`.
    pub fn normalize_a0(&self) -> Result<(Self, usize)> {
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        if k == 0 {
            return Ok((self.clone(), 0));
        }
        let coeffs = self.coeffs[k..]
            .iter()
            .map(|&a| self.field.frobenius(a, -(k as i64)))
            .collect();
        Ok((Self::from_trusted(self.field.clone(), coeffs), k))
    }
}
