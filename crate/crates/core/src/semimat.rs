//! Dense square matrices over `F_{q^n}`: companion matrices, the semilinear
//! products `C_k = C C^σ ⋯ C^{σ^{k-1}}`, `A_L = C_n`, exact rank, the
//! characteristic polynomial and eigenvalue multiplicities over `F_q`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfield::{FieldElement, FieldSpec};
use crate::skewpoly::{same_field, LinearizedPoly};

/// Largest dimension accepted by [`SqMatrix::char_poly`].
pub const MAX_CHARPOLY_DIM: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct SqMatrix {
    field: Arc<FieldSpec>,
    dim: usize,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqMatrix[{self}]")
    }
}

/// Text codec: rows separated by `|`, entries by `,`.
impl fmt::Display for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            if i > 0 {
                f.write_str("|")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl SqMatrix {
    pub fn zero(field: Arc<FieldSpec>, dim: usize) -> Self {
        SqMatrix {
            field,
            dim,
            entries: vec![FieldElement::ZERO; dim * dim],
        }
    }

    pub fn scalar(field: Arc<FieldSpec>, dim: usize, lambda: FieldElement) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.set(i, i, lambda);
        }
        m
    }

    pub fn identity(field: Arc<FieldSpec>, dim: usize) -> Self {
        Self::scalar(field, dim, FieldElement::ONE)
    }

    /// Builds a matrix from rows; all rows must have the same length as the row count.
    pub fn from_rows(field: Arc<FieldSpec>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimMismatch);
        }
        let entries: Vec<FieldElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|&e| !field.contains(e)) {
            return Err(Error::MixedFields);
        }
        Ok(SqMatrix {
            field,
            dim,
            entries,
        })
    }

    pub fn parse(field: Arc<FieldSpec>, text: &str) -> Result<Self> {
        let rows = text
            .trim()
            .split('|')
            .map(|row| {
                row.split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        let v: u64 = tok
                            .parse()
                            .map_err(|_| Error::Parse(format!("'{tok}' is not an element code")))?;
                        field
                            .element(v)
                            .map_err(|_| Error::Parse(format!("element code {v} out of range")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, rows).map_err(|e| match e {
            Error::DimMismatch => Error::Parse("matrix is not square".into()),
            other => other,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries
            .chunks(self.dim.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::MixedFields);
        }
        if self.dim != other.dim {
            return Err(Error::DimMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let d = self.dim;
        let mut out = Self::zero(self.field.clone(), d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let idx = i * d + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(SqMatrix {
            field: self.field.clone(),
            dim: self.dim,
            entries,
        })
    }

    /// `A - λ I`.
    pub fn minus_scalar(&self, lambda: FieldElement) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.set(i, i, self.field.sub(self.get(i, i), lambda));
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let entries = self.entries.iter().map(|&a| self.field.mul(c, a)).collect();
        SqMatrix {
            field: self.field.clone(),
            dim: self.dim,
            entries,
        }
    }

    /// Applies `σ^k` to every entry.
    pub fn sigma_entrywise(&self, k: i64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&a| self.field.frobenius(a, k))
            .collect();
        SqMatrix {
            field: self.field.clone(),
            dim: self.dim,
            entries,
        }
    }

    pub fn trace(&self) -> FieldElement {
        self.field.sum((0..self.dim).map(|i| self.get(i, i)))
    }

    /// `Some(λ)` when the matrix equals `λ I`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        let lambda = if self.dim == 0 {
            FieldElement::ZERO
        } else {
            self.get(0, 0)
        };
        let d = self.dim;
        let ok = (0..d).all(|i| {
            (0..d).all(|j| self.get(i, j) == if i == j { lambda } else { FieldElement::ZERO })
        });
        ok.then_some(lambda)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let d = self.dim;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| !m[r * d + col].is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..d {
                    m.swap(piv * d + j, rank * d + j);
                }
            }
            let inv = f.inv(m[rank * d + col]).expect("pivot is nonzero");
            for r in rank + 1..d {
                let factor = f.mul(m[r * d + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..d {
                    let v = f.mul(factor, m[rank * d + j]);
                    m[r * d + j] = f.sub(m[r * d + j], v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.dim - self.rank()
    }

    /// Determinant by elimination.
    pub fn det(&self) -> FieldElement {
        let f = &self.field;
        let d = self.dim;
        let mut m = self.entries.clone();
        let mut det = FieldElement::ONE;
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !m[r * d + col].is_zero()) else {
                return FieldElement::ZERO;
            };
            if piv != col {
                for j in 0..d {
                    m.swap(piv * d + j, col * d + j);
                }
                det = f.neg(det);
            }
            let p = m[col * d + col];
            det = f.mul(det, p);
            let inv = f.inv(p).expect("pivot is nonzero");
            for r in col + 1..d {
                let factor = f.mul(m[r * d + col], inv);
                for j in col..d {
                    let v = f.mul(factor, m[col * d + j]);
                    m[r * d + j] = f.sub(m[r * d + j], v);
                }
            }
        }
        det
    }

    /// `det(xI - A)` by Laplace expansion, memoised over column subsets.
    pub fn char_poly(&self) -> Result<CharPoly> {
        let d = self.dim;
        if d > MAX_CHARPOLY_DIM {
            return Err(Error::DimTooLarge(d));
        }
        let f = &self.field;
        let full = (1usize << d) - 1;
        let mut dp: Vec<Option<Vec<FieldElement>>> = vec![None; full + 1];
        dp[0] = Some(vec![FieldElement::ONE]);
        for mask in 0..full {
            let Some(cur) = dp[mask].take() else { continue };
            let row = mask.count_ones() as usize;
            for col in 0..d {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let negative = (mask >> (col + 1)).count_ones() % 2 == 1;
                // entry (row, col) of xI - A
                let constant = f.neg(self.get(row, col));
                let mut term = vec![FieldElement::ZERO; cur.len() + 1];
                for (k, &c) in cur.iter().enumerate() {
                    term[k] = f.add(term[k], f.mul(c, constant));
                    if row == col {
                        term[k + 1] = f.add(term[k + 1], c);
                    }
                }
                if negative {
                    term.iter_mut().for_each(|t| *t = f.neg(*t));
                }
                let slot = dp[mask | (1 << col)].get_or_insert_with(Vec::new);
                if slot.len() < term.len() {
                    slot.resize(term.len(), FieldElement::ZERO);
                }
                for (s, t) in slot.iter_mut().zip(term) {
                    *s = f.add(*s, t);
                }
            }
        }
        let mut coeffs = dp[full].take().unwrap_or_else(|| vec![FieldElement::ONE]);
        coeffs.resize(d + 1, FieldElement::ZERO);
        Ok(CharPoly::new(f, coeffs))
    }

    /// Multiplicities of every eigenvalue lying in `F_q`.
    pub fn eigen_profile(&self) -> Result<EigenProfile> {
        let chi = self.char_poly()?;
        let mut entries = BTreeMap::new();
        let mut total = 0;
        for lambda in self.field.base_field_elements() {
            let ma = chi.root_multiplicity(&self.field, lambda);
            if ma > 0 {
                let mg = self.minus_scalar(lambda).nullity();
                entries.insert(lambda, (ma, mg));
                total += ma;
            }
        }
        Ok(EigenProfile {
            entries,
            remainder_degree: self.dim - total,
        })
    }

    // ------------------------------------------------------------ constructors

    /// The companion matrix `C_L`: ones on the subdiagonal, last column
    /// `(-a_0/a_d, …, -a_{d-1}/a_d)`.
    pub fn companion(l: &LinearizedPoly) -> Result<Self> {
        let d = match l.degree() {
            None => return Err(Error::ZeroLeading),
            Some(0) => return Err(Error::DegreeZero),
            Some(d) => d,
        };
        let f = l.field();
        let lead = l.coeff(d);
        let mut c = Self::zero(f.clone(), d);
        for i in 1..d {
            c.set(i, i - 1, FieldElement::ONE);
        }
        for i in 0..d {
            c.set(i, d - 1, f.neg(f.div(l.coeff(i), lead)?));
        }
        Ok(c)
    }

    /// `C_k = C_{k-1} C^{σ^{k-1}}`, `C_0 = I`.
    pub fn partial_product(l: &LinearizedPoly, k: usize) -> Result<Self> {
        let n = l.field().n() as usize;
        check_k(k, n)?;
        let c = Self::companion(l)?;
        let mut acc = Self::identity(l.field().clone(), c.dim);
        for i in 0..k {
            acc = acc.mul(&c.sigma_entrywise(i as i64))?;
        }
        Ok(acc)
    }

    /// `C_k = C C_{k-1}^σ`, the other recursion for the same product.
    pub fn partial_product_left(l: &LinearizedPoly, k: usize) -> Result<Self> {
        let n = l.field().n() as usize;
        check_k(k, n)?;
        let c = Self::companion(l)?;
        let mut acc = Self::identity(l.field().clone(), c.dim);
        for _ in 0..k {
            acc = c.mul(&acc.sigma_entrywise(1))?;
        }
        Ok(acc)
    }

    /// `A_L = C_L C_L^σ ⋯ C_L^{σ^{n-1}}`. Requires `a_0 ≠ 0`.
    pub fn a_matrix(l: &LinearizedPoly) -> Result<Self> {
        match l.degree() {
            None => return Err(Error::ZeroLeading),
            Some(0) => return Err(Error::DegreeZero),
            Some(_) => {}
        }
        if l.coeff(0).is_zero() {
            return Err(Error::ZeroConstant);
        }
        Self::partial_product(l, l.field().n() as usize)
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k > n {
        return Err(Error::BadRange {
            what: "product length",
            value: k as i64,
            lo: 0,
            hi: n as i64,
        });
    }
    Ok(())
}

/// A monic characteristic polynomial `c_0 + c_1 x + … + x^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<FieldElement>,
    certificate: Vec<bool>,
}

impl CharPoly {
    fn new(field: &FieldSpec, coeffs: Vec<FieldElement>) -> Self {
        let certificate = coeffs.iter().map(|&c| field.in_base_field(c)).collect();
        CharPoly {
            coeffs,
            certificate,
        }
    }

    /// Builds a characteristic polynomial from explicit coefficients `c_0..c_d`
    /// (the leading one included).
    pub fn from_coeffs(field: &FieldSpec, coeffs: Vec<FieldElement>) -> Self {
        Self::new(field, coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Per-coefficient result of the `F_q` membership test.
    pub fn certificate(&self) -> &[bool] {
        &self.certificate
    }

    /// True when every coefficient lies in `F_q`.
    pub fn in_base_field(&self) -> bool {
        self.certificate.iter().all(|&b| b)
    }

    pub fn eval(&self, field: &FieldSpec, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                field.add(field.mul(acc, x), c)
            })
    }

    /// Multiplicity of `λ` as a root, by repeated synthetic division.
    pub fn root_multiplicity(&self, field: &FieldSpec, lambda: FieldElement) -> usize {
        let mut poly = self.coeffs.clone();
        let mut mult = 0;
        while poly.len() > 1 {
            // divide by (x - λ): Horner from the top
            let mut quot = vec![FieldElement::ZERO; poly.len() - 1];
            let mut carry = FieldElement::ZERO;
            for i in (0..poly.len()).rev() {
                let v = field.add(poly[i], field.mul(carry, lambda));
                if i == 0 {
                    carry = v;
                } else {
                    quot[i - 1] = v;
                    carry = v;
                }
            }
            if !carry.is_zero() {
                break;
            }
            mult += 1;
            poly = quot;
        }
        mult
    }
}

/// Algebraic and geometric multiplicities of the `F_q`-eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenProfile {
    /// `λ ↦ (m_a, m_g)`, only for eigenvalues with `m_a ≥ 1`.
    pub entries: BTreeMap<FieldElement, (usize, usize)>,
    /// Degree of the part of `χ` without roots in `F_q`.
    pub remainder_degree: usize,
}

impl EigenProfile {
    pub fn geometric(&self, lambda: FieldElement) -> usize {
        self.entries.get(&lambda).map_or(0, |&(_, g)| g)
    }

    /// `Σ_λ (q^{m_g} - 1)/(q - 1)`.
    pub fn projective_count(&self, q: u32) -> u64 {
        self.entries
            .values()
            .map(|&(_, g)| projective_points(q, g))
            .sum()
    }

    /// The multiplicity pairs sorted descending, e.g. `[(2,2), (1,1)]`.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.entries.values().copied().collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

/// `(q^k - 1)/(q - 1)`, the number of one-dimensional subspaces of `F_q^k`.
pub fn projective_points(q: u32, k: usize) -> u64 {
    (0..k).map(|i| (q as u64).pow(i as u32)).sum()
}
