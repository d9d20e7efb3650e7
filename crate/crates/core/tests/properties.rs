//! Algebraic laws of the composition ring, checked on random inputs.

use std::sync::Arc;

use linroots::oracle::brute_roots_lin;
use linroots::rootcount::{nullity_of, nullity_twisted};
use linroots::{FieldElement, FieldSpec, LinearizedPoly, SqMatrix};
use proptest::prelude::*;

fn fields() -> Vec<Arc<FieldSpec>> {
    [
        (2, 1, 4, 1),
        (3, 1, 3, 1),
        (2, 1, 5, 2),
        (3, 1, 4, 3),
        (2, 2, 3, 1),
    ]
    .into_iter()
    .map(|(p, m, n, s)| Arc::new(FieldSpec::new(p, m, n, s, None).unwrap()))
    .collect()
}

fn poly_in(f: &Arc<FieldSpec>, codes: &[u32]) -> LinearizedPoly {
    let order = f.order();
    let coeffs = codes
        .iter()
        .map(|&c| f.element((c % order) as u64).unwrap())
        .collect();
    LinearizedPoly::new(f.clone(), coeffs).unwrap()
}

fn codes(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 0..=max_len)
}

/// A nonzero field element code.
fn unit(f: &FieldSpec, c: u32) -> FieldElement {
    f.element((c % (f.order() - 1) + 1) as u64).unwrap()
}

/// Plain polynomials over `F_{q^n}`, coefficient `i` at `x^i`, for the gcd
/// oracle. Only used with `s = 1`, `m = 1`, where `x^{σ^i} = x^{p^i}`.
mod plain {
    use linroots::{FieldElement, FieldSpec};

    pub fn from_linearized(f: &FieldSpec, coeffs: &[FieldElement]) -> Vec<FieldElement> {
        let p = f.p() as usize;
        let top = coeffs.len().checked_sub(1).map_or(0, |d| p.pow(d as u32));
        let mut out = vec![FieldElement::ZERO; top + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            out[p.pow(i as u32)] = c;
        }
        trim(out)
    }

    fn trim(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn rem(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let mut r = a.to_vec();
        let lead_inv = f.inv(*b.last().unwrap()).unwrap();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let factor = f.mul(*r.last().unwrap(), lead_inv);
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(factor, c));
            }
            r = trim(r);
        }
        r
    }

    pub fn monic_gcd(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let li = f.inv(lead).unwrap();
            a.iter_mut().for_each(|c| *c = f.mul(*c, li));
        }
        a
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative_and_distributive(fi in 0usize..5, a in codes(4), b in codes(4), c in codes(4)) {
        let f = &fields()[fi];
        let (a, b, c) = (poly_in(f, &a), poly_in(f, &b), poly_in(f, &c));
        prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        let bc = b.add(&c).unwrap();
        prop_assert_eq!(a.compose(&bc).unwrap(), a.compose(&b).unwrap().add(&a.compose(&c).unwrap()).unwrap());
        prop_assert_eq!(bc.compose(&a).unwrap(), b.compose(&a).unwrap().add(&c.compose(&a).unwrap()).unwrap());
        let id = LinearizedPoly::identity(f.clone());
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        prop_assert_eq!(id.compose(&a).unwrap(), a);
    }

    #[test]
    fn composition_adds_degrees_and_evaluates_as_maps(fi in 0usize..5, a in codes(4), b in codes(4), x in any::<u32>()) {
        let f = &fields()[fi];
        let (a, b) = (poly_in(f, &a), poly_in(f, &b));
        let ab = a.compose(&b).unwrap();
        match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => prop_assert_eq!(ab.degree(), Some(da + db)),
            _ => prop_assert!(ab.is_zero()),
        }
        let x = f.element((x % f.order()) as u64).unwrap();
        prop_assert_eq!(ab.eval(x), a.eval(b.eval(x)));
    }

    #[test]
    fn right_division_reconstructs(fi in 0usize..5, a in codes(6), b in codes(4)) {
        let f = &fields()[fi];
        let (a, b) = (poly_in(f, &a), poly_in(f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem_right(&b).unwrap();
        prop_assert_eq!(q.compose(&b).unwrap().add(&r).unwrap(), a);
        prop_assert!(r.degree().map_or(true, |d| Some(d) < b.degree()));
    }

    #[test]
    fn gcrc_and_lclc_degrees(fi in 0usize..5, a in codes(4), b in codes(4)) {
        let f = &fields()[fi];
        let (a, b) = (poly_in(f, &a), poly_in(f, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcrc(&b).unwrap();
        let l = a.lclc(&b).unwrap();
        prop_assert!(a.rem_right(&g).unwrap().is_zero());
        prop_assert!(b.rem_right(&g).unwrap().is_zero());
        prop_assert!(l.rem_right(&a).unwrap().is_zero());
        prop_assert!(l.rem_right(&b).unwrap().is_zero());
        prop_assert_eq!(
            a.degree().unwrap() + b.degree().unwrap(),
            g.degree().unwrap() + l.degree().unwrap()
        );
    }

    #[test]
    fn gcrc_is_the_ordinary_gcd(fi in 0usize..2, a in codes(4), b in codes(4)) {
        // fields 0 and 1 have s = 1, m = 1
        let f = &fields()[fi];
        let (a, b) = (poly_in(f, &a), poly_in(f, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcrc(&b).unwrap();
        let expected = plain::monic_gcd(
            f,
            &plain::from_linearized(f, a.coeffs()),
            &plain::from_linearized(f, b.coeffs()),
        );
        prop_assert_eq!(plain::from_linearized(f, g.coeffs()), expected);
    }

    #[test]
    fn twist_is_a_homomorphism(fi in 0usize..5, a in codes(4), b in codes(4), alpha in any::<u32>(), y in any::<u32>()) {
        let f = &fields()[fi];
        let (a, b) = (poly_in(f, &a), poly_in(f, &b));
        let alpha = unit(f, alpha);
        let ta = a.twist(alpha).unwrap();
        let tb = b.twist(alpha).unwrap();
        prop_assert_eq!(a.compose(&b).unwrap().twist(alpha).unwrap(), ta.compose(&tb).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().twist(alpha).unwrap(), ta.add(&tb).unwrap());
        let y = f.element((y % f.order()) as u64).unwrap();
        prop_assert_eq!(ta.proj_eval(y), a.proj_eval(f.mul(alpha, y)));
        if !a.is_zero() && !b.is_zero() {
            let g = a.gcrc(&b).unwrap();
            prop_assert_eq!(g.twist(alpha).unwrap().monic(), ta.gcrc(&tb).unwrap());
        }
    }

    #[test]
    fn kernels_are_subspaces_of_size_q_power(fi in 0usize..5, a in codes(5)) {
        let f = &fields()[fi];
        let l = poly_in(f, &a);
        prop_assume!(!l.is_zero());
        let (roots, dim) = brute_roots_lin(&l).unwrap();
        prop_assert_eq!(roots.len() as u64, (f.q() as u64).pow(dim as u32));
        prop_assert_eq!(nullity_of(&l).unwrap(), dim);
    }

    #[test]
    fn twisted_nullity_depends_on_the_norm_only(fi in 0usize..5, a in codes(4), alpha in any::<u32>(), beta in any::<u32>()) {
        let f = &fields()[fi];
        let l = poly_in(f, &a);
        prop_assume!(!l.is_zero());
        let alpha = unit(f, alpha);
        // β with the same norm as α: α times a norm-one element x^{σ-1}
        let x = unit(f, beta);
        let beta = f.mul(alpha, f.div(f.frobenius(x, 1), x).unwrap());
        prop_assert_eq!(f.norm(alpha), f.norm(beta));
        prop_assert_eq!(nullity_twisted(&l, alpha).unwrap(), nullity_twisted(&l, beta).unwrap());
        let (_, dim) = brute_roots_lin(&l.twist(alpha).unwrap()).unwrap();
        prop_assert_eq!(nullity_twisted(&l, alpha).unwrap(), dim);
    }

    #[test]
    fn a_matrix_columns_are_reduced_central_monomials(fi in 0usize..5, a in codes(4), lead in any::<u32>(), a0 in any::<u32>()) {
        let f = &fields()[fi];
        let mut c: Vec<u32> = a;
        c.insert(0, 0);
        let mut l = poly_in(f, &c).coeffs().to_vec();
        l.resize(l.len().max(1), FieldElement::ZERO);
        l[0] = unit(f, a0);
        l.push(unit(f, lead));
        let l = LinearizedPoly::new(f.clone(), l).unwrap();
        let d = l.degree().unwrap();
        let a_l = SqMatrix::a_matrix(&l).unwrap();
        let n = f.n() as usize;
        for i in 0..d {
            let r = LinearizedPoly::monomial(f.clone(), f.one(), n + i).rem_right(&l).unwrap();
            for j in 0..d {
                prop_assert_eq!(a_l.get(j, i), r.coeff(j));
            }
        }
    }

    #[test]
    fn field_axioms(fi in 0usize..5, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[fi];
        let e = |x: u32| f.element((x % f.order()) as u64).unwrap();
        let (a, b, c) = (e(a), e(b), e(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, 1), f.frobenius_via_operator(a, 1));
        prop_assert_eq!(f.frobenius(f.frobenius(a, -1), 1), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert!(f.in_base_field(f.norm(a)) && f.in_base_field(f.trace(a)));
    }

    #[test]
    fn codecs_round_trip(fi in 0usize..5, a in codes(5)) {
        let f = &fields()[fi];
        let l = poly_in(f, &a);
        prop_assert_eq!(LinearizedPoly::parse(f.clone(), &l.to_string()).unwrap(), l);
        let parsed: FieldSpec = f.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, f.as_ref());
    }
}
