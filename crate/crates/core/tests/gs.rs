use std::cmp::Ordering;
use std::sync::Arc;

use agdecode::code::{CodeFamily, CodeSpec, EvaluationSet, GammaSelector};
use agdecode::curves;
use agdecode::groebner::ModuleElement;
use agdecode::gs::{
    eta_powers, gs_list_decode, interpolation_polynomial, multiplication_bound, multiplicity_at, substitute,
    vanishes_to_order, GsParams,
};
use agdecode::linalg::distance;
use agdecode::poly::UniPoly;
use agdecode::ring::StandardForm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family(curve: agdecode::curve::CurveSpec) -> Arc<CodeFamily> {
    let sf = StandardForm::build(&curve).unwrap();
    let pts = EvaluationSet::all_rational(&sf);
    CodeFamily::new(sf, pts).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, q: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..q)).collect()
}

fn corrupt(rng: &mut ChaCha8Rng, c: &[u32], q: u32, w: usize) -> Vec<u32> {
    let mut r = c.to_vec();
    for i in rand::seq::index::sample(rng, c.len(), w) {
        r[i] ^= rng.gen_range(1..q);
    }
    r
}

#[test]
fn hermitian_interpolation_properties() {
    let fam = family(curves::hermitian(2).unwrap());
    let sf = fam.standard_form();
    let f = sf.field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=2 {
        for ell in [m, m + 1] {
            let p = GsParams { m, ell, u: 6 };
            let bound = multiplication_bound(3, 2, 8, 1, &p);
            for _ in 0..3 {
                let r = random_word(&mut rng, 4, 8);
                let it = interpolation_polynomial(&fam, &r, &p).unwrap();
                for (i, pt) in fam.points().points().iter().enumerate() {
                    assert!(
                        multiplicity_at(sf, &it.q, pt, r[i], m).unwrap(),
                        "m={m} ell={ell} point {i}"
                    );
                }
                assert!(it.gb.multiplications <= bound, "{} > {bound}", it.gb.multiplications);
                let order = &it.module.order;
                let gens = &it.module.generators;
                for _ in 0..100 {
                    let mut e = ModuleElement::zero(gens.len());
                    for g in gens {
                        let c: Vec<u32> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..4)).collect();
                        e = e.add(f, &g.mul_poly(f, &UniPoly::from_coeffs(c)));
                    }
                    if !e.is_zero() {
                        assert_ne!(order.cmp_elements(&e, &it.q), Ordering::Less);
                    }
                }
            }
        }
    }
}

#[test]
fn reference_bound_value() {
    assert_eq!(
        multiplication_bound(3, 2, 8, 1, &GsParams { m: 1, ell: 2, u: 6 }),
        14742
    );
}

#[test]
fn klein_ideal_powers_without_explicit_f() {
    let fam = family(curves::klein_quartic_gf8().unwrap());
    let sf = fam.standard_form();
    let etas = eta_powers(&fam, 2).unwrap();
    for (i, level) in etas.iter().enumerate().skip(1) {
        for e in level {
            assert!(fam.evaluate(e).iter().all(|&v| v == 0));
            for pt in fam.points().points().iter().take(4) {
                assert!(vanishes_to_order(sf, pt, e, i).unwrap());
            }
        }
    }
}

#[test]
fn klein_corrects_one_error() {
    let fam = family(curves::klein_quartic_gf8().unwrap());
    let code = CodeSpec::new(fam.clone(), &GammaSelector::U(20)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let msg = random_word(&mut rng, 8, code.dimension());
        let (c, mu) = code.encode(&msg).unwrap();
        let r = corrupt(&mut rng, &c, 8, 1);
        let p = GsParams { m: 1, ell: 2, u: 20 };
        let res = gs_list_decode(&code, &r, &p, 1, 100_000).unwrap();
        assert_eq!(res.list.len(), 1);
        assert_eq!(res.list[0].message, msg);
        let it = interpolation_polynomial(&fam, &r, &p).unwrap();
        assert!(substitute(fam.standard_form(), &it.q, &mu).is_zero());
    }
}

#[test]
fn reed_solomon_list_within_johnson_radius() {
    let fam = family(curves::projective_line(curves::default_field(8).unwrap()));
    let code = CodeSpec::new(fam, &GammaSelector::U(2)).unwrap();
    assert_eq!((code.n(), code.dimension(), code.d_ag()), (8, 3, 6));
    let all: Vec<Vec<u32>> = (0..512u32).map(|v| vec![v & 7, (v >> 3) & 7, v >> 6]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    // n - sqrt(n (k - 1)) = 4, so m = 3, ell = 5 reaches 3 errors
    let p = GsParams { m: 3, ell: 5, u: 2 };
    for _ in 0..5 {
        let msg = random_word(&mut rng, 8, 3);
        let (c, _) = code.encode(&msg).unwrap();
        let r = corrupt(&mut rng, &c, 8, 3);
        let res = gs_list_decode(&code, &r, &p, 3, 100_000).unwrap();
        let mut brute: Vec<Vec<u32>> = all
            .iter()
            .filter(|m| distance(&code.encode(m).unwrap().0, &r) <= 3)
            .cloned()
            .collect();
        brute.sort();
        let got: Vec<Vec<u32>> = res.list.iter().map(|c| c.message.clone()).collect();
        assert_eq!(got, brute);
        assert!(got.contains(&msg));
    }
}

#[test]
fn zero_word_picks_the_smallest_generator() {
    let fam = family(curves::hermitian(2).unwrap());
    let sf = fam.standard_form();
    let least = fam.eta_basis().pole_orders.iter().min().copied().unwrap();
    // below the smallest eta pole the generator z itself wins
    let it = interpolation_polynomial(&fam, &[0; 8], &GsParams { m: 1, ell: 1, u: 3 }).unwrap();
    let coeffs = it.z_coefficients(2);
    assert!(coeffs[0].is_zero());
    assert_eq!(sf.pole_order(&coeffs[1]), Some(0));
    // above it the answer is z-free
    let it = interpolation_polynomial(
        &fam,
        &[0; 8],
        &GsParams {
            m: 1,
            ell: 1,
            u: least + 1,
        },
    )
    .unwrap();
    let coeffs = it.z_coefficients(2);
    assert!(coeffs[1].is_zero());
    assert_eq!(sf.pole_order(&coeffs[0]), Some(least));
}

#[test]
fn hermitian_weight_one_matches_exhaustive_search() {
    let fam = family(curves::hermitian(2).unwrap());
    let code = CodeSpec::new(fam, &GammaSelector::U(3)).unwrap();
    let k = code.dimension();
    let all: Vec<(Vec<u32>, Vec<u32>)> = (0..4u32.pow(k as u32))
        .map(|v| {
            let m: Vec<u32> = (0..k).map(|i| (v >> (2 * i)) & 3).collect();
            let c = code.encode(&m).unwrap().0;
            (m, c)
        })
        .collect();
    let (msg, c) = all[37].clone();
    let p = GsParams { m: 1, ell: 2, u: 3 };
    for i in 0..code.n() {
        for e in 1..4 {
            let mut r = c.clone();
            r[i] ^= e;
            let res = gs_list_decode(&code, &r, &p, 1, 100_000).unwrap();
            let got: Vec<Vec<u32>> = res.list.iter().map(|c| c.message.clone()).collect();
            let brute: Vec<Vec<u32>> = all
                .iter()
                .filter(|(_, w)| distance(w, &r) <= 1)
                .map(|(m, _)| m.clone())
                .collect();
            assert_eq!(got, brute);
            assert_eq!(got, vec![msg.clone()]);
        }
    }
}
