use std::sync::{Arc, OnceLock};

use agdecode::code::{CodeFamily, CodeSpec, EvaluationSet, GammaSelector};
use agdecode::curves;
use agdecode::decoder::{DecodeOptions, Decoder};
use agdecode::field::{Field, FieldElement};
use agdecode::groebner::{is_groebner_basis, module_gb_general, reduce, ModuleElement, ModuleOrder};
use agdecode::poly::UniPoly;
use agdecode::ring::{RingElement, StandardForm};
use proptest::prelude::*;

fn gf16() -> Field {
    Field::new(2, 4, vec![1, 1, 0, 0, 1]).unwrap()
}

fn gf9() -> Field {
    Field::new(3, 2, vec![1, 0, 1]).unwrap()
}

fn klein() -> &'static Arc<CodeFamily> {
    static K: OnceLock<Arc<CodeFamily>> = OnceLock::new();
    K.get_or_init(|| {
        let sf = StandardForm::build(&curves::klein_quartic_gf8().unwrap()).unwrap();
        let pts = EvaluationSet::all_rational(&sf);
        CodeFamily::new(sf, pts).unwrap()
    })
}

fn ring_element(sf: &StandardForm, coeffs: &[Vec<FieldElement>]) -> RingElement {
    let q = sf.field().order();
    RingElement::from_coeffs(
        coeffs
            .iter()
            .take(sf.a1())
            .map(|c| UniPoly::from_coeffs(c.iter().map(|&x| x % q).collect()))
            .collect(),
    )
}

fn coeff_lists() -> impl Strategy<Value = Vec<Vec<FieldElement>>> {
    prop::collection::vec(prop::collection::vec(0u32..8, 0..5), 3)
}

proptest! {
    #[test]
    fn field_axioms(a in 0u32..16, b in 0u32..16, c in 0u32..16) {
        for f in [gf16(), gf9()] {
            let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                prop_assert_eq!(f.pow(a, f.order() as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn ring_product_matches_pointwise(a in coeff_lists(), b in coeff_lists()) {
        let fam = klein();
        let sf = fam.standard_form();
        let f = sf.field();
        let (a, b) = (ring_element(sf, &a), ring_element(sf, &b));
        let ab = sf.mul(&a, &b);
        prop_assert_eq!(sf.mul(&b, &a), ab.clone());
        let (va, vb, vab) = (fam.evaluate(&a), fam.evaluate(&b), fam.evaluate(&ab));
        for i in 0..fam.n() {
            prop_assert_eq!(f.mul(va[i], vb[i]), vab[i]);
        }
        if let (Some(pa), Some(pb)) = (sf.pole_order(&a), sf.pole_order(&b)) {
            prop_assert_eq!(sf.pole_order(&ab), Some(pa + pb));
        }
    }

    #[test]
    fn normal_form_is_idempotent(a in coeff_lists()) {
        let sf = klein().standard_form();
        let a = ring_element(sf, &a);
        let back = sf.normal_form(&sf.to_mpoly(&a)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_inverts_product(a in coeff_lists(), b in coeff_lists()) {
        let sf = klein().standard_form();
        let (a, b) = (ring_element(sf, &a), ring_element(sf, &b));
        prop_assume!(!b.is_zero());
        let ab = sf.mul(&a, &b);
        prop_assert_eq!(sf.exact_div(&ab, &b, None), Some(a));
    }

    #[test]
    fn reduction_stays_in_module(
        gens in prop::collection::vec(prop::collection::vec(prop::collection::vec(0u32..16, 0..4), 3), 3..5),
        combo in prop::collection::vec(prop::collection::vec(0u32..16, 0..3), 5),
    ) {
        let f = gf16();
        let order = ModuleOrder::new(2, vec![0, 3, 7]).unwrap();
        let mut elems: Vec<ModuleElement> = gens
            .iter()
            .map(|g| ModuleElement::from_coords(g.iter().map(|c| UniPoly::from_coeffs(c.clone())).collect()))
            .collect();
        // make the module full rank
        for pos in 0..3 {
            elems.push(ModuleElement::unit(3, pos, 1, 6));
        }
        let gb = module_gb_general(&f, elems.clone(), &order).unwrap();
        prop_assert!(is_groebner_basis(&f, &gb.basis, &order));
        let mut m = ModuleElement::zero(3);
        for (e, c) in elems.iter().zip(&combo) {
            m = m.add(&f, &e.mul_poly(&f, &UniPoly::from_coeffs(c.clone())));
        }
        prop_assert!(reduce(&f, &m, &gb.basis, &order).is_zero());
        let outside = m.add(&f, &ModuleElement::unit(3, 0, 1, 0));
        let has_constant_unit = gb.basis.iter().any(|g| order.lead(g).map(|l| (l.pos, l.deg)) == Some((0, 0)));
        if !has_constant_unit {
            prop_assert!(!reduce(&f, &outside, &gb.basis, &order).is_zero());
        }
    }
}

fn herm4_code() -> &'static (CodeSpec, Decoder) {
    static C: OnceLock<(CodeSpec, Decoder)> = OnceLock::new();
    C.get_or_init(|| {
        let sf = StandardForm::build(&curves::hermitian(2).unwrap()).unwrap();
        let pts = EvaluationSet::all_rational(&sf);
        let code = CodeSpec::new(CodeFamily::new(sf, pts).unwrap(), &GammaSelector::U(5)).unwrap();
        let dec = Decoder::new(code.clone());
        (code, dec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoded_list_is_sound(msg in prop::collection::vec(0u32..4, 5), errs in prop::collection::vec((0usize..8, 1u32..4), 0..3)) {
        let (code, dec) = herm4_code();
        let f = code.field();
        let (c, _) = code.encode(&msg).unwrap();
        let mut r = c.clone();
        for (i, e) in errs {
            r[i] = f.add(r[i], e);
        }
        let tau = 2;
        let mut opts = DecodeOptions::new(tau);
        opts.checked = true;
        let res = dec.list_decode(&r, &opts).unwrap();
        prop_assert_eq!(res.stats.invariant_violations, 0);
        let d = c.iter().zip(&r).filter(|(a, b)| a != b).count();
        if d <= tau {
            prop_assert!(res.contains_message(&msg));
        }
        for cand in &res.list {
            prop_assert!(cand.distance <= tau);
            prop_assert_eq!(&code.encode(&cand.message).unwrap().0, &cand.codeword);
        }
    }
}
