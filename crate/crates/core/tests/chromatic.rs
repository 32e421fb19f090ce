mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use simplichrom::chromatic::{
    chi_polynomial, count_colorings, evaluate_chi, exists_coloring, verify_identity_part1, verify_identity_part2,
};
use simplichrom::{SimplicialComplex, UniformMode, VertexSet};

#[test]
fn polynomial_matches_brute_force_counts() {
    let mut rng = rng(1);
    for _ in 0..300 {
        let (n, sets) = random_complex(&mut rng, 8, 6);
        let s = complex(n, &sets);
        let chi = chi_polynomial(&s).unwrap();
        for t in 0..=4u64 {
            let brute = brute_colorings(n, &sets, t);
            assert_eq!(chi.eval(t), BigInt::from(brute), "n={n} {sets:?} t={t}");
            assert_eq!(count_colorings(&s, t).unwrap(), brute);
            assert_eq!(evaluate_chi(&s, t).unwrap(), BigInt::from(brute));
            assert_eq!(exists_coloring(&s, t, None).unwrap(), brute > 0, "exists n={n} {sets:?} t={t}");
        }
    }
}

#[test]
fn basic_values_and_shape() {
    let mut rng = rng(2);
    for _ in 0..200 {
        let (n, sets) = random_complex(&mut rng, 8, 6);
        let s = complex(n, &sets);
        let chi = chi_polynomial(&s).unwrap();
        let p = &chi.polynomial;
        assert_eq!(chi.eval(0), BigInt::from(0));
        // one color survives only when nothing is forbidden
        assert_eq!(chi.eval(1), BigInt::from(u64::from(sets.is_empty())));
        if sets.iter().any(|s| s.count_ones() == 1) {
            // a lone vertex is always monochromatic
            assert!(p.is_zero());
        } else {
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(n));
        }
    }
}

#[test]
fn nonface_round_trip_through_facets() {
    let mut rng = rng(3);
    for _ in 0..200 {
        let (n, sets) = random_complex(&mut rng, 7, 5);
        let s = complex(n, &sets);
        let facets = s.facets().unwrap().to_vec();
        let back = SimplicialComplex::from_facets(n, facets).unwrap();
        assert_eq!(back.minimal_nonfaces(), s.minimal_nonfaces(), "n={n} {sets:?}");
    }
}

#[test]
fn f_and_h_vectors_match_subset_enumeration() {
    let mut rng = rng(4);
    for _ in 0..200 {
        let (n, sets) = random_complex(&mut rng, 8, 6);
        let s = complex(n, &sets);
        let f = brute_face_counts(n, &sets);
        let (d, h) = brute_h(n, &sets);
        assert_eq!(s.krull_dim().unwrap(), d);
        let h_lib = s.h_polynomial().unwrap();
        let got: Vec<BigInt> = (0..=d).map(|i| h_lib.coeff(i)).collect();
        assert_eq!(got, h);
        // h(1) counts the facets of top size
        assert_eq!(h_lib.eval_i64(1), BigInt::from(f[d]));
        let f_lib = s.f_vector().unwrap();
        assert_eq!(f_lib.len(), f.len());
    }
}

#[test]
fn component_counts_are_bounded() {
    let mut rng = rng(5);
    for _ in 0..200 {
        let (n, sets) = random_complex(&mut rng, 8, 6);
        let s = complex(n, &sets);
        let r = s.num_nonfaces();
        for mask in 1u32..1 << r {
            let idx: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let c = s.component_count(&idx).unwrap();
            assert!(c >= 1 && c <= idx.len());
        }
        let all_one = s.uniform_c_check(UniformMode::AllOne).unwrap().holds;
        assert_eq!(all_one, pairwise_intersecting(s.minimal_nonfaces().iter().map(|v| v.bits()).collect::<Vec<_>>().as_slice()));
    }
}

#[test]
fn part1_on_intersecting_families() {
    let mut rng = rng(6);
    let mut checked = 0;
    for _ in 0..2000 {
        let (n, sets) = random_complex(&mut rng, 8, 5);
        if !pairwise_intersecting(&sets) {
            continue;
        }
        let rep = verify_identity_part1(&complex(n, &sets)).unwrap();
        assert!(rep.hypotheses_ok && rep.pass, "n={n} {sets:?}");
        checked += 1;
    }
    assert!(checked >= 100, "{checked}");
}

#[test]
fn part2_on_apex_augmentations() {
    let mut rng = rng(7);
    for _ in 0..150 {
        let (n, sets) = random_complex(&mut rng, 7, 5);
        let t = complex(n, &sets);
        let aug = t.apex_augment().unwrap();
        let s = &aug.complex;
        let rep = verify_identity_part2(s, &aug.witness).unwrap();
        assert!(rep.pass, "n={n} {sets:?}");
        // independent check: brute colorings of S against t^e (t-1)^(n-e) h_T(1/t)
        let (d_t, h_t) = brute_h(n, &sets);
        let n_s = s.num_vertices();
        let e = if sets.is_empty() { n_s } else { d_t + 1 };
        let s_sets: Vec<u64> = s.minimal_nonfaces().iter().map(|v| v.bits()).collect();
        for c in 2..=4 {
            let brute = BigRational::from_integer(brute_colorings(n_s, &s_sets, c as u64).into());
            assert_eq!(brute, part2_oracle(n_s, e, &h_t, c), "n={n} {sets:?} t={c}");
        }
    }
}

#[test]
fn shipped_part1_fixtures() {
    let tri = complex(3, &[0b111]);
    let rep = verify_identity_part1(&tri).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.lhs.as_polynomial().unwrap().coefficients(), ints(&[0, -1]).as_slice());
    let two = complex(4, &[0b0111, 0b1101]);
    let rep = verify_identity_part1(&two).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.lhs.as_polynomial().unwrap().coefficients(), ints(&[0, 1, -2]).as_slice());
}

fn arb_complex() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(1u64..(1 << n), 0..5))).prop_map(|(n, raw)| {
        let mut sets: Vec<u64> = Vec::new();
        for s in raw {
            if sets.iter().all(|&x| x & s != x && x & s != s) {
                sets.push(s);
            }
        }
        (n, sets)
    })
}

proptest! {
    #[test]
    fn relabeling_preserves_the_polynomial((n, sets) in arb_complex(), rot in 0usize..7) {
        let perm = |v: usize| (v + rot) % n;
        let moved: Vec<u64> = sets.iter().map(|&b| VertexSet::from_bits(b).map(perm).bits()).collect();
        let a = chi_polynomial(&complex(n, &sets)).unwrap().polynomial;
        let b = chi_polynomial(&complex(n, &moved)).unwrap().polynomial;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn adding_a_nonface_never_adds_colorings((n, sets) in arb_complex(), extra in 1u64..128, t in 1u64..4) {
        let extra = extra & ((1 << n) - 1);
        prop_assume!(extra != 0);
        // every old nonface still contains a new one, so valid colorings for
        // the new family remain valid for the old one
        let mut more: Vec<u64> = sets.iter().copied().filter(|&x| x & extra != extra).collect();
        if more.iter().all(|&x| x & extra != x) {
            more.push(extra);
        }
        let before = chi_polynomial(&complex(n, &sets)).unwrap().eval(t);
        let after = chi_polynomial(&complex(n, &more)).unwrap().eval(t);
        prop_assert!(after <= before);
    }
}
