//! Small worked cases with known answers.

use std::sync::Arc;

use linroots::lowdeg::{
    classify_lin_deg2, classify_proj_deg2, g_sequence_forward, h_sequence_conjugated,
    trace_formula_deg2, Deg3State,
};
use linroots::oracle::{brute_roots_lin, brute_roots_proj, crosscheck};
use linroots::rootcount::{
    count_proj_roots, count_proj_roots_gcrc, full_kernel_check, norm_condition_holds, nullity_of,
    nullity_twisted, FullKernel,
};
use linroots::{Error, FieldElement, FieldSpec, LinearizedPoly, SqMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(p: u32, m: u32, n: u32, s: u32) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::new(p, m, n, s, None).unwrap())
}

fn ints(f: &Arc<FieldSpec>, c: &[i64]) -> LinearizedPoly {
    LinearizedPoly::new(f.clone(), c.iter().map(|&v| f.from_int(v)).collect()).unwrap()
}

fn e(f: &FieldSpec, code: u64) -> FieldElement {
    f.element(code).unwrap()
}

fn matrix(f: &Arc<FieldSpec>, rows: &[&[i64]]) -> SqMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&v| f.from_int(v)).collect())
        .collect();
    SqMatrix::from_rows(f.clone(), rows).unwrap()
}

fn random_unit(f: &FieldSpec, rng: &mut ChaCha8Rng) -> FieldElement {
    e(f, rng.random_range(1..f.order() as u64))
}

#[test]
fn field_construction() {
    let f = field(2, 1, 5, 2);
    assert_eq!((f.q(), f.order()), (2, 32));
    assert!(matches!(
        FieldSpec::new(2, 1, 4, 2, None),
        Err(Error::BadSigma { s: 2, n: 4 })
    ));
    assert!(matches!(
        FieldSpec::new(4, 1, 2, 1, None),
        Err(Error::NonPrime(4))
    ));
}

#[test]
fn arithmetic_in_f4() {
    // ω is the code 2, ω + 1 the code 3
    let f = field(2, 1, 2, 1);
    let (one, w, w1) = (f.one(), e(&f, 2), e(&f, 3));
    assert!(f.add(w, w).is_zero());
    assert_eq!(f.mul(w, w), w1);
    assert_eq!(f.div(one, w).unwrap(), w1);
    assert_eq!(f.frobenius(w, 1), w1);
    assert_eq!(f.frobenius(w, 0), w);
    assert!(!f.in_base_field(w));
    assert!(f.in_base_field(one) && f.in_base_field(FieldElement::ZERO));
}

#[test]
fn norm_and_trace() {
    let f = field(2, 1, 3, 1);
    for g in f.nonzero_elements() {
        assert_eq!(f.norm(g), f.one());
        let direct = f.sum([g, f.pow(g, 2), f.pow(g, 4)]);
        assert_eq!(f.trace(g), direct);
        assert_eq!(f.partial_trace(g, 1).unwrap(), g);
    }
    let f = field(3, 1, 4, 1);
    for x in f.base_field_elements() {
        assert_eq!(f.norm(x), f.pow(x, 4));
        assert_eq!(f.partial_trace(x, 4).unwrap(), f.mul(f.from_int(4), x));
    }
}

#[test]
fn composition_examples() {
    let f = field(3, 1, 4, 1);
    let a = e(&f, 5);
    let sigma = ints(&f, &[0, 1]);
    let ax = LinearizedPoly::new(f.clone(), vec![a]).unwrap();
    let expected = LinearizedPoly::monomial(f.clone(), f.frobenius(a, 1), 1);
    assert_eq!(sigma.compose(&ax).unwrap(), expected);
    let plus = ints(&f, &[1, 1]);
    let minus = ints(&f, &[-1, 1]);
    assert_eq!(plus.compose(&minus).unwrap(), ints(&f, &[-1, 0, 1]));
    let id = LinearizedPoly::identity(f.clone());
    assert_eq!(id.compose(&minus).unwrap(), minus);
}

#[test]
fn right_division_example() {
    let f = field(3, 1, 4, 1);
    let (q, r) = ints(&f, &[0, 0, 1])
        .div_rem_right(&ints(&f, &[-1, 1]))
        .unwrap();
    assert_eq!(q, ints(&f, &[1, 1]));
    assert_eq!(r, ints(&f, &[1]));
    let l = ints(&f, &[2, 1, 1]);
    assert_eq!(
        l.div_rem_right(&l).unwrap(),
        (ints(&f, &[1]), LinearizedPoly::zero(f.clone()))
    );
}

#[test]
fn gcrc_of_central_elements() {
    // gcd(x^{q^5} - x, x^{q^2} - x) = x^q - x, gcd(x^{q^10} - x, x^{q^2} - x) = x^{q^2} - x
    let f = field(2, 1, 5, 1);
    let l = ints(&f, &[-1, 0, 1]);
    let central = LinearizedPoly::central(f.clone(), f.one());
    assert_eq!(central.gcrc(&l).unwrap(), ints(&f, &[-1, 1]));
    let f = field(2, 1, 10, 1);
    let l = ints(&f, &[-1, 0, 1]);
    let central = LinearizedPoly::central(f.clone(), f.one());
    assert_eq!(central.gcrc(&l).unwrap(), l);
    let zero = LinearizedPoly::zero(f.clone());
    let scaled = ints(&f, &[1, 1]).scale(e(&f, 7));
    assert_eq!(scaled.gcrc(&zero).unwrap(), scaled.monic());
}

#[test]
fn lclc_examples() {
    let f = field(3, 1, 4, 1);
    let (a, b) = (ints(&f, &[-1, 0, 1]), ints(&f, &[-1, 1]));
    assert_eq!(a.lclc(&b).unwrap(), a);
    let l = ints(&f, &[2, 1, 2]);
    assert_eq!(l.lclc(&l).unwrap(), l.monic());
}

#[test]
fn projective_evaluation() {
    let f = field(3, 1, 3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let l = LinearizedPoly::new(
        f.clone(),
        (0..3).map(|_| random_unit(&f, &mut rng)).collect(),
    )
    .unwrap();
    for _ in 0..100 {
        let x = random_unit(&f, &mut rng);
        let y = f.div(f.frobenius(x, 1), x).unwrap();
        assert_eq!(l.eval(x), f.mul(x, l.proj_eval(y)));
    }
    // P_L = a + b y + c y^{q+1}
    let y = e(&f, 11);
    let (a, b, c) = (l.coeff(0), l.coeff(1), l.coeff(2));
    let direct = f.sum([a, f.mul(b, y), f.mul(c, f.pow(y, 4))]);
    assert_eq!(l.proj_eval(y), direct);
    assert_eq!(l.twist(f.one()).unwrap(), l);
}

#[test]
fn dickson_examples() {
    let f = field(3, 1, 2, 1);
    assert_eq!(
        ints(&f, &[1]).dickson().unwrap(),
        SqMatrix::identity(f.clone(), 2)
    );
    assert_eq!(
        ints(&f, &[-1, 1]).dickson().unwrap(),
        matrix(&f, &[&[-1, 1], &[1, -1]])
    );
    assert_eq!(matrix(&f, &[&[-1, 1], &[1, -1]]).nullity(), 1);
}

#[test]
fn normalize_constant_term() {
    let f = field(2, 1, 4, 1);
    let (l, k) = ints(&f, &[0, 1]).normalize_a0().unwrap();
    assert_eq!((l, k), (ints(&f, &[1]), 1));
}

#[test]
fn companion_and_product() {
    let f = field(2, 1, 5, 1);
    assert_eq!(
        SqMatrix::companion(&ints(&f, &[-1, 1])).unwrap(),
        matrix(&f, &[&[1]])
    );
    let l = ints(&f, &[-1, 0, 1]);
    let swap = matrix(&f, &[&[0, 1], &[1, 0]]);
    assert_eq!(SqMatrix::companion(&l).unwrap(), swap);
    assert_eq!(SqMatrix::a_matrix(&l).unwrap(), swap);
    assert_eq!(
        SqMatrix::partial_product(&l, 0).unwrap(),
        SqMatrix::identity(f.clone(), 2)
    );

    let f8 = field(2, 1, 3, 1);
    let l = ints(&f8, &[1, 1, 1]);
    assert_eq!(
        SqMatrix::companion(&l).unwrap(),
        matrix(&f8, &[&[0, 1], &[1, 1]])
    );
    assert_eq!(
        SqMatrix::a_matrix(&l).unwrap(),
        SqMatrix::identity(f8.clone(), 2)
    );
}

#[test]
fn both_product_recursions_agree() {
    let f = field(2, 1, 4, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let l = LinearizedPoly::new(
            f.clone(),
            (0..4).map(|_| random_unit(&f, &mut rng)).collect(),
        )
        .unwrap();
        for k in 0..=4 {
            assert_eq!(
                SqMatrix::partial_product(&l, k).unwrap(),
                SqMatrix::partial_product_left(&l, k).unwrap()
            );
        }
    }
}

#[test]
fn characteristic_polynomials_and_profiles() {
    let f3 = field(3, 1, 5, 1);
    let swap = matrix(&f3, &[&[0, 1], &[1, 0]]);
    assert_eq!(
        swap.char_poly().unwrap().coeffs(),
        &[f3.from_int(-1), f3.zero(), f3.one()]
    );
    let profile = swap.eigen_profile().unwrap();
    assert_eq!(profile.entries.get(&f3.one()), Some(&(1, 1)));
    assert_eq!(profile.entries.get(&f3.from_int(-1)), Some(&(1, 1)));

    let id = SqMatrix::identity(f3.clone(), 2);
    let profile = id.eigen_profile().unwrap();
    assert_eq!(profile.entries.len(), 1);
    assert_eq!(profile.entries.get(&f3.one()), Some(&(2, 2)));
    assert_eq!(id.nullity(), 0);
    assert_eq!(SqMatrix::zero(f3.clone(), 3).nullity(), 3);

    let f2 = field(2, 1, 5, 1);
    let profile = matrix(&f2, &[&[0, 1], &[1, 0]]).eigen_profile().unwrap();
    assert_eq!(profile.entries.get(&f2.one()), Some(&(2, 1)));
}

#[test]
fn root_counts_of_worked_cases() {
    let f8 = field(2, 1, 3, 1);
    let l = ints(&f8, &[1, 1, 1]);
    assert_eq!(nullity_of(&l).unwrap(), 2);
    assert_eq!(brute_roots_lin(&l).unwrap().0.len(), 4);
    assert_eq!(count_proj_roots(&l).unwrap(), 3);
    assert_eq!(count_proj_roots_gcrc(&l).unwrap(), 3);
    assert_eq!(full_kernel_check(&l).unwrap(), FullKernel::FullKernelLinear);
    assert!(norm_condition_holds(&l).unwrap());
    assert_eq!(nullity_twisted(&l, f8.one()).unwrap(), 2);

    let x_sigma = ints(&f8, &[-1, 1]);
    assert_eq!(nullity_of(&x_sigma).unwrap(), 1);
    assert_eq!(
        full_kernel_check(&x_sigma).unwrap(),
        FullKernel::FullKernelLinear
    );
    assert!(norm_condition_holds(&x_sigma).unwrap());

    // x^{q^2} - x over F_{q^5}
    for (p, expected) in [(3, 2), (2, 1)] {
        let f = field(p, 1, 5, 1);
        let l = ints(&f, &[-1, 0, 1]);
        assert_eq!(nullity_of(&l).unwrap(), 1);
        assert_eq!(count_proj_roots(&l).unwrap(), expected);
        assert_eq!(count_proj_roots_gcrc(&l).unwrap(), expected);
        assert_eq!(brute_roots_proj(&l).unwrap().len() as u64, expected);
        assert_eq!(full_kernel_check(&l).unwrap(), FullKernel::Neither);
        let rec = crosscheck(&l).unwrap();
        assert!(rec.agree(), "{:?}", rec.disagreements);
        assert_eq!(rec.nullity_brute, 1);
    }
}

#[test]
fn twisted_nullity_with_norm_minus_one() {
    let f = field(3, 1, 5, 1);
    let l = ints(&f, &[-1, 0, 1]);
    let alpha = f
        .nonzero_elements()
        .find(|&a| f.norm(a) == f.from_int(-1))
        .unwrap();
    assert_eq!(nullity_twisted(&l, alpha).unwrap(), 1);
    assert_eq!(brute_roots_lin(&l.twist(alpha).unwrap()).unwrap().1, 1);
    assert!(matches!(
        nullity_twisted(&l, FieldElement::ZERO),
        Err(Error::ZeroAlpha)
    ));
}

#[test]
fn norm_condition_is_not_sufficient() {
    let f = field(2, 1, 3, 1);
    let found = f.nonzero_elements().any(|a| {
        f.elements().any(|b| {
            f.nonzero_elements().any(|c| {
                let l = LinearizedPoly::new(f.clone(), vec![a, b, c]).unwrap();
                norm_condition_holds(&l).unwrap() && nullity_of(&l).unwrap() < 2
            })
        })
    });
    assert!(found);
}

#[test]
fn g_and_h_tables() {
    let f = field(3, 1, 4, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for _ in 0..200 {
        let (u, w, z) = (
            random_unit(&f, &mut rng),
            random_unit(&f, &mut rng),
            random_unit(&f, &mut rng),
        );
        let g = g_sequence_forward(&f, u, 4);
        assert_eq!(g[3], f.sub(f.add(f.frobenius(u, 1), u), f.one()));
        let one_minus = f.sub(f.one(), u);
        let g4 = f.sub(
            f.mul(f.frobenius(one_minus, 2), one_minus),
            f.frobenius(u, 1),
        );
        assert_eq!(g[4], g4);
        let h = h_sequence_conjugated(&f, w, z, 3);
        let zs = f.frobenius(z, 1);
        let h3 = f.sub(
            f.sub(f.add(zs, z), f.one()),
            f.mul(f.frobenius(w, 1), f.mul(z, zs)),
        );
        assert_eq!(h[3], h3);
    }
    let f8 = field(2, 1, 3, 1);
    let g = g_sequence_forward(&f8, f8.one(), 3);
    assert_eq!((g[2], g[3]), (f8.zero(), f8.one()));
}

#[test]
fn w_z_product_identities() {
    let f = field(2, 1, 4, 1);
    let fr = |x, k| f.frobenius(x, k);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let c: Vec<_> = (0..4).map(|_| random_unit(&f, &mut rng)).collect();
        let st = Deg3State::new(&LinearizedPoly::new(f.clone(), c.clone()).unwrap()).unwrap();
        let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
        let wz = f.div(f.mul(fr(a, 1), d), f.mul(b, fr(cc, 1))).unwrap();
        assert_eq!(f.mul(st.w, st.z), wz);
        let lhs = f.mul(fr(st.w, 1), f.mul(fr(st.z, 1), st.z));
        let den = f.mul(fr(cc, 2), f.mul(fr(cc, 1), cc));
        let rhs = f.div(f.mul(fr(a, 2), f.mul(fr(d, 1), d)), den).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn trace_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, n) in [(2, 4), (2, 5), (2, 6), (3, 4), (2, 7)] {
        let f = field(p, 1, n, 1);
        for _ in 0..100 {
            let l = LinearizedPoly::new(
                f.clone(),
                (0..3).map(|_| random_unit(&f, &mut rng)).collect(),
            )
            .unwrap();
            let direct = SqMatrix::a_matrix(&l).unwrap().trace();
            assert_eq!(trace_formula_deg2(&l).unwrap(), direct, "{f} {l}");
        }
    }
    // the n = 5 formula N(b/c)(tr(u - u^{1+σ^2}) - 1)
    let f = field(2, 1, 5, 1);
    for _ in 0..100 {
        let c: Vec<_> = (0..3).map(|_| random_unit(&f, &mut rng)).collect();
        let l = LinearizedPoly::new(f.clone(), c.clone()).unwrap();
        let u = f
            .div(
                f.mul(f.frobenius(c[0], 1), c[2]),
                f.mul(f.frobenius(c[1], 1), c[1]),
            )
            .unwrap();
        let inner = f.sub(u, f.mul(u, f.frobenius(u, 2)));
        let expected = f.mul(
            f.norm(f.div(c[1], c[2]).unwrap()),
            f.sub(f.trace(inner), f.one()),
        );
        assert_eq!(SqMatrix::a_matrix(&l).unwrap().trace(), expected);
    }
}

#[test]
fn degree_two_classifier_examples() {
    let f8 = field(2, 1, 3, 1);
    let l = ints(&f8, &[1, 1, 1]);
    assert_eq!(classify_proj_deg2(&l).unwrap().count, 3);
    let lin = classify_lin_deg2(&l).unwrap();
    assert_eq!((lin.count, lin.tag), (2, "lin2:i"));

    let f27 = field(3, 1, 3, 1);
    let c = classify_proj_deg2(&ints(&f27, &[1, 0, 1])).unwrap();
    assert_eq!((c.count, c.tag), (0, "proj2:b0:n-odd:non-square"));

    let f243 = field(3, 1, 5, 1);
    let l = ints(&f243, &[-1, 0, 1]);
    assert_eq!(classify_proj_deg2(&l).unwrap().count, 2);
    assert_eq!(classify_lin_deg2(&l).unwrap().count, 1);
}
