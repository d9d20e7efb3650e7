//! The field tower `F_p ⊂ F_q ⊂ F_{q^n}` with a chosen generator `σ: x ↦ x^{q^s}`
//! of `Gal(F_{q^n} : F_q)`.
//!
//! The whole tower is a single extension `F_p[t] / (f)` with `deg f = m·n`.
//! Elements are stored by their integer code `Σ c_i p^i`, where `c_i` is the
//! coefficient of `t^i`; this code is also the text encoding. `F_q` is not
//! embedded explicitly: it is the fixed set of `x ↦ x^{p^m}`.
//!
//! Fields up to [`DEFAULT_TABLE_BOUND`] elements get discrete-log and Zech
//! tables; larger ones fall back to schoolbook arithmetic on the coefficient
//! vector.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_SIZE_BOUND: u64 = 1 << 24;
pub const DEFAULT_TABLE_BOUND: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of `F_{q^n}`, identified by its integer code.
///
/// The code is only meaningful together with the [`FieldSpec`] that produced
/// it. Two elements of the same field are equal iff their codes are equal.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Construction limits.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FieldOptions {
    /// Largest admissible `p^{mn}`.
    pub size_bound: u64,
    /// Largest field for which log/Zech tables are built.
    pub table_bound: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            size_bound: DEFAULT_SIZE_BOUND,
            table_bound: DEFAULT_TABLE_BOUND,
        }
    }
}

struct Tables {
    /// `exp[i] = g^i`, stored twice over so that sums of two logs index directly.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NO_LOG` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

pub struct FieldSpec {
    p: u32,
    m: u32,
    n: u32,
    s: u32,
    modulus: Vec<u32>,
    degree: usize,
    order: u32,
    q: u32,
    pow_p: Vec<u32>,
    /// `frob_images[j]` is the code of `(t^j)^p`.
    frob_images: Vec<u32>,
    /// `sigma_images[j]` is the code of `σ(t^j)`.
    sigma_images: Vec<u32>,
    /// `sigma_exps[k] = q^{s k} mod (p^{mn} - 1)`.
    sigma_exps: Vec<u64>,
    tables: Option<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.n == other.n
            && self.s == other.s
            && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={},m={},n={},s={},mod=",
            self.p, self.m, self.n, self.s
        )?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FieldSpec {
    /// Builds `F_{q^n}` with `q = p^m` and `σ = x ↦ x^{q^s}`.
    ///
    /// Without an explicit modulus the least monic irreducible of degree
    /// `m·n` is used, where polynomials are ordered by the integer code of
    /// their non-leading coefficients.
    pub fn new(p: u32, m: u32, n: u32, s: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_options(p, m, n, s, modulus, FieldOptions::default())
    }

    pub fn with_options(
        p: u32,
        m: u32,
        n: u32,
        s: u32,
        modulus: Option<&[u32]>,
        options: FieldOptions,
    ) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if m == 0 || n == 0 || s == 0 {
            return Err(Error::BadParameters);
        }
        if gcd(s as u64, n as u64) != 1 {
            return Err(Error::BadSigma { s, n });
        }
        let degree = (m as usize) * (n as usize);
        let size = (p as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        let bound = options.size_bound.min(u32::MAX as u64);
        if size > bound as u128 {
            return Err(Error::SizeBoundExceeded {
                size,
                bound: options.size_bound,
            });
        }
        let order = size as u32;

        let modulus = match modulus {
            Some(coeffs) => {
                let mut f: Vec<u32> = coeffs.to_vec();
                if f.len() == degree {
                    f.push(1);
                }
                if f.len() != degree + 1 || f[degree] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus { expected: degree });
                }
                if !fp::is_irreducible(&f, p) {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            None => least_irreducible(p, degree),
        };

        let mut pow_p = Vec::with_capacity(degree + 1);
        let mut acc = 1u32;
        for i in 0..=degree {
            pow_p.push(acc);
            if i < degree {
                acc = acc.wrapping_mul(p);
            }
        }
        let q = pow_p[m as usize];

        let mut field = FieldSpec {
            p,
            m,
            n,
            s,
            modulus,
            degree,
            order,
            q,
            pow_p,
            frob_images: Vec::new(),
            sigma_images: Vec::new(),
            sigma_exps: Vec::new(),
            tables: None,
        };

        field.frob_images = (0..degree)
            .map(|j| {
                let basis = field.pow_p[j];
                field.pow_slow(basis, p as u64)
            })
            .collect();
        let steps = (m as u64) * (s as u64);
        field.sigma_images = (0..degree)
            .map(|j| {
                let mut x = field.pow_p[j];
                for _ in 0..steps {
                    x = field.apply_linear(&field.frob_images, x);
                }
                x
            })
            .collect();

        let group = (order as u64) - 1;
        let qs = pow_mod(q as u64, s as u64, group.max(1));
        let mut e = 1 % group.max(1);
        field.sigma_exps = (0..n)
            .map(|_| {
                let cur = e;
                e = ((e as u128 * qs as u128) % group.max(1) as u128) as u64;
                cur
            })
            .collect();

        if (order as u64) <= options.table_bound {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    /// `|F_q|`.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// `|F_{q^n}|`.
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// Degree of the whole tower over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Decodes an integer code, rejecting codes outside `[0, p^{mn})`.
    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.order as u64 {
            return Err(Error::BadRange {
                what: "element code",
                value: code as i64,
                lo: 0,
                hi: self.order as i64 - 1,
            });
        }
        Ok(FieldElement(code as u32))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.order
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficient vector over `F_p`, ascending powers of `t`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        self.digits(x.0)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.degree || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "coefficient vector must have at most {} entries below {}",
                self.degree, self.p
            )));
        }
        Ok(FieldElement(self.undigits(coeffs)))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order).map(FieldElement)
    }

    /// All elements of `F_q`, in ascending code order.
    pub fn base_field_elements(&self) -> Vec<FieldElement> {
        match &self.tables {
            Some(t) => {
                let group = self.order - 1;
                let step = group / (self.q - 1);
                let mut v: Vec<FieldElement> = (0..self.q - 1)
                    .map(|i| FieldElement(t.exp[(i * step) as usize]))
                    .collect();
                v.push(FieldElement::ZERO);
                v.sort();
                v
            }
            None => self.elements().filter(|&x| self.in_base_field(x)).collect(),
        }
    }

    // ----------------------------------------------------------------- arithmetic

    /// Checked arithmetic on two elements of this field.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::MixedFields);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let group = self.order - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let k = if lb >= la { lb - la } else { lb + group - la };
                let z = t.zech[k as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[(la + z) as usize])
                }
            }
            None => FieldElement(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let half = (self.order - 1) / 2;
                FieldElement(t.exp[(t.log[a.0 as usize] + half) as usize])
            }
            None => {
                let d: Vec<u32> = self
                    .digits(a.0)
                    .into_iter()
                    .map(|c| (self.p - c) % self.p)
                    .collect();
                FieldElement(self.undigits(&d))
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let group = self.order - 1;
                let l = t.log[a.0 as usize];
                FieldElement(t.exp[((group - l) % group) as usize])
            }
            None => FieldElement(self.pow_slow(a.0, self.order as u64 - 2)),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let group = (self.order - 1) as u64;
                let l = t.log[a.0 as usize] as u64;
                let k = ((l as u128 * (e % group) as u128) % group as u128) as usize;
                FieldElement(t.exp[k])
            }
            None => FieldElement(self.pow_slow(a.0, e)),
        }
    }

    /// `Σ xs`.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, xs: I) -> FieldElement {
        xs.into_iter()
            .fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// `Π xs`.
    pub fn product<I: IntoIterator<Item = FieldElement>>(&self, xs: I) -> FieldElement {
        xs.into_iter()
            .fold(FieldElement::ONE, |acc, x| self.mul(acc, x))
    }

    // ---------------------------------------------------------------- Frobenius

    /// `x^{σ^k}`; negative `k` is taken modulo `n`.
    #[inline]
    pub fn frobenius(&self, x: FieldElement, k: i64) -> FieldElement {
        let k = k.rem_euclid(self.n as i64) as usize;
        if k == 0 || x.0 == 0 {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let group = (self.order - 1) as u64;
                let l = t.log[x.0 as usize] as u64;
                let e = ((l as u128 * self.sigma_exps[k] as u128) % group as u128) as usize;
                FieldElement(t.exp[e])
            }
            None => self.frobenius_via_operator(x, k as i64),
        }
    }

    /// `x^{σ^k}` through the `F_p`-linear `σ` operator alone, never touching
    /// the log tables.
    pub fn frobenius_via_operator(&self, x: FieldElement, k: i64) -> FieldElement {
        let k = k.rem_euclid(self.n as i64);
        let mut v = x.0;
        for _ in 0..k {
            v = self.apply_linear(&self.sigma_images, v);
        }
        FieldElement(v)
    }

    /// `x ↦ x^p` through the precomputed operator.
    pub fn p_power(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.apply_linear(&self.frob_images, x.0))
    }

    /// `N(x) = x^{1 + σ + ... + σ^{n-1}}`.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.product((0..self.n as i64).map(|k| self.frobenius(x, k)))
    }

    /// `Π_{j < n/d} x^{σ^{d j}}`, the norm onto the fixed field of `σ^d`.
    /// `d` must divide `n`.
    pub fn relative_norm(&self, x: FieldElement, d: u32) -> Result<FieldElement> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::BadRange {
                what: "norm step",
                value: d as i64,
                lo: 1,
                hi: self.n as i64,
            });
        }
        let reps = self.n / d;
        Ok(self.product((0..reps as i64).map(|j| self.frobenius(x, j * d as i64))))
    }

    /// `Σ_{j<d} x^{σ^j}`; with `d = n` this is the trace onto `F_q`.
    pub fn partial_trace(&self, x: FieldElement, d: u32) -> Result<FieldElement> {
        if d == 0 || d > self.n {
            return Err(Error::BadRange {
                what: "trace length",
                value: d as i64,
                lo: 1,
                hi: self.n as i64,
            });
        }
        Ok(self.sum((0..d as i64).map(|j| self.frobenius(x, j))))
    }

    pub fn trace(&self, x: FieldElement) -> FieldElement {
        self.sum((0..self.n as i64).map(|j| self.frobenius(x, j)))
    }

    /// Trace from `F_q` down to `F_p`: `Σ_{i<m} x^{p^i}`. Meaningful for `x ∈ F_q`.
    pub fn base_absolute_trace(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.p_power(y);
        }
        acc
    }

    pub fn in_base_field(&self, x: FieldElement) -> bool {
        self.frobenius(x, 1) == x
    }

    /// Whether `x` is a nonzero square in `F_q` (`q` odd, `x ∈ F_q`).
    pub fn is_nonzero_square_in_base(&self, x: FieldElement) -> bool {
        if x.is_zero() {
            return false;
        }
        if self.p == 2 {
            return true;
        }
        self.pow(x, ((self.q - 1) / 2) as u64) == FieldElement::ONE
    }

    // ---------------------------------------------------------------- internals

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut d = vec![0u32; self.degree];
        for slot in d.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter()
            .zip(&self.pow_p)
            .fold(0u32, |acc, (&c, &pw)| acc + c * pw)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut r = 0u32;
        for &pw in &self.pow_p[..self.degree] {
            r += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
        }
        r
    }

    fn scale_slow(&self, c: u32, a: u32) -> u32 {
        if c == 0 {
            return 0;
        }
        if c == 1 {
            return a;
        }
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|x| ((x as u64 * c as u64) % self.p as u64) as u32)
            .collect();
        self.undigits(&d)
    }

    fn apply_linear(&self, images: &[u32], x: u32) -> u32 {
        let mut acc = 0u32;
        let mut v = x;
        for &img in images {
            let c = v % self.p;
            v /= self.p;
            if c != 0 {
                acc = self.add_slow(acc, self.scale_slow(c, img));
            }
        }
        acc
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let prod = fp::mul(&da, &db, self.p);
        let r = fp::rem(&prod, &self.modulus, self.p);
        self.undigits(&r)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let order = self.order as usize;
        let group = order - 1;
        let g = self.find_generator();
        let mut exp = vec![0u32; 2 * group.max(1)];
        let mut log = vec![NO_LOG; order];
        let mut x = 1u32;
        for i in 0..group {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        for i in 0..group {
            exp[group + i] = exp[i];
        }
        let zech = (0..group)
            .map(|k| {
                let v = self.add_slow(exp[k], 1);
                if v == 0 {
                    NO_LOG
                } else {
                    log[v as usize]
                }
            })
            .collect();
        Tables { exp, log, zech }
    }

    fn find_generator(&self) -> u32 {
        let group = (self.order - 1) as u64;
        if group == 1 {
            return 1;
        }
        let primes = prime_factors(group);
        let start = if self.degree >= 2 { self.p } else { 2 };
        (start..self.order)
            .chain(1..start)
            .find(|&g| g != 0 && primes.iter().all(|&r| self.pow_slow(g, group / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `p=…,m=…,n=…,s=…[,mod=c0,c1,…]`.
    fn from_str(text: &str) -> Result<Self> {
        let (mut p, mut m, mut n, mut s) = (None, None, None, None);
        let mut modulus: Option<Vec<u32>> = None;
        let mut in_mod = false;
        for raw in text.split(',') {
            let tok = raw.trim();
            if tok.is_empty() {
                return Err(Error::Parse(format!("empty item in field spec '{text}'")));
            }
            if let Some((key, val)) = tok.split_once('=') {
                in_mod = false;
                let key = key.trim();
                let val = val.trim();
                match key {
                    "p" => p = Some(parse_num(val)?),
                    "m" => m = Some(parse_num(val)?),
                    "n" => n = Some(parse_num(val)?),
                    "s" => s = Some(parse_num(val)?),
                    "mod" => {
                        modulus = Some(vec![parse_num(val)?]);
                        in_mod = true;
                    }
                    other => return Err(Error::Parse(format!("unknown field key '{other}'"))),
                }
            } else if in_mod {
                modulus.as_mut().unwrap().push(parse_num(tok)?);
            } else {
                return Err(Error::Parse(format!("unexpected token '{tok}'")));
            }
        }
        let need =
            |v: Option<u32>, k: &str| v.ok_or_else(|| Error::Parse(format!("missing '{k}'")));
        FieldSpec::new(
            need(p, "p")?,
            need(m, "m")?,
            need(n, "n")?,
            need(s, "s")?,
            modulus.as_deref(),
        )
    }
}

fn parse_num(v: &str) -> Result<u32> {
    v.parse::<u32>()
        .map_err(|_| Error::Parse(format!("'{v}' is not a non-negative integer")))
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn least_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let count = (p as u64).pow(degree as u32);
    (0..count)
        .map(|mut e| {
            let mut f = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                f.push((e % p as u64) as u32);
                e /= p as u64;
            }
            f.push(1);
            f
        })
        .find(|f| fp::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Dense polynomials over `F_p`, ascending coefficients.
mod fp {
    fn inv(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Remainder modulo a nonzero `f` (not necessarily monic).
    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let f = trim(f.to_vec());
        let mut r = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv(f[df], p) as u64;
        while r.len() > df && !r.is_empty() {
            let shift = r.len() - 1 - df;
            let c = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
            for (i, &fi) in f.iter().enumerate() {
                let sub = (c * fi as u64) % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = trim(rem(&x, &y, p));
            x = y;
            y = r;
        }
        x
    }

    /// `x^{p^k} mod f`.
    fn x_pow_p_iter(f: &[u32], p: u32, k: usize) -> Vec<u32> {
        let mut h = rem(&[0, 1], f, p);
        for _ in 0..k {
            let mut acc = vec![1u32];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = rem(&mul(&acc, &base, p), f, p);
                }
                base = rem(&mul(&base, &base, p), f, p);
                e >>= 1;
            }
            h = acc;
        }
        h
    }

    /// Rabin's test for a monic `f` of degree `N ≥ 1`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        let x = rem(&[0, 1], f, p);
        let sub_x = |h: Vec<u32>| -> Vec<u32> {
            let mut h = h;
            if h.len() < 2 {
                h.resize(2, 0);
            }
            h[1] = (h[1] + p - x.get(1).copied().unwrap_or(0)) % p;
            h[0] = (h[0] + p - x.first().copied().unwrap_or(0)) % p;
            trim(h)
        };
        if !sub_x(x_pow_p_iter(f, p, n)).is_empty() {
            return false;
        }
        let mut m = n;
        let mut d = 2;
        let mut primes = Vec::new();
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        primes.into_iter().all(|r| {
            let h = sub_x(x_pow_p_iter(f, p, n / r));
            let g = gcd(&h, f, p);
            g.len() == 1
        })
    }
}
