//! Property tests for the canonical-form and arithmetic layers.

use proptest::prelude::*;
use trace_pi_core::{rat, Rat, TraceMonomial, TracePolynomial};

fn rotations(word: &[u32]) -> Vec<Vec<u32>> {
    (0..word.len())
        .map(|i| {
            let mut w = word[i..].to_vec();
            w.extend_from_slice(&word[..i]);
            w
        })
        .collect()
}

#[test]
fn canonicalization_exhaustive_short_words() {
    // every word over {1..4} of length <= 6, against all of its rotations
    let alphabet = [1u32, 2, 3, 4];
    let mut words: Vec<Vec<u32>> = alphabet.iter().map(|&a| vec![a]).collect();
    for _ in 1..6 {
        let mut next = Vec::new();
        for w in &words {
            if w.len() == 6 {
                continue;
            }
            for &a in &alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        words.extend(next.clone());
        words = {
            let mut all = words;
            all.sort();
            all.dedup();
            all
        };
    }
    let mut checked = 0usize;
    for w in &words {
        let canon = TraceMonomial::new(&[w], &[]).unwrap();
        // constant on the rotation orbit
        for r in rotations(w) {
            assert_eq!(TraceMonomial::new(&[&r], &[]).unwrap(), canon, "{w:?}");
        }
        // idempotent
        let again = TraceMonomial::new(&[canon.blocks()[0].word()], &[]).unwrap();
        assert_eq!(again, canon);
        // the canonical word is minimal among rotations
        let min = rotations(w).into_iter().min().unwrap();
        assert_eq!(canon.blocks()[0].word(), min.as_slice());
        checked += 1;
    }
    assert!(checked >= 5460, "checked {checked} words");
}

/// Small random monomials over variables 1..=4 with repeats allowed.
fn arb_monomial() -> impl Strategy<Value = TraceMonomial> {
    let word = prop::collection::vec(1u32..=4, 1..=3);
    let blocks = prop::collection::vec(word.clone(), 0..=2);
    let outside = prop::collection::vec(1u32..=4, 0..=3);
    (blocks, outside).prop_map(|(blocks, outside)| {
        let refs: Vec<&[u32]> = blocks.iter().map(|w| w.as_slice()).collect();
        TraceMonomial::new(&refs, &outside).unwrap()
    })
}

fn arb_poly() -> impl Strategy<Value = TracePolynomial> {
    prop::collection::vec((arb_monomial(), -3i64..=3), 0..=4).prop_map(|terms| {
        let mut p = TracePolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, rat(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonicalize_invariant_under_rotation(word in prop::collection::vec(1u32..=5, 1..=7)) {
        let canon = TraceMonomial::new(&[&word], &[]).unwrap();
        for r in rotations(&word) {
            prop_assert_eq!(TraceMonomial::new(&[&r], &[]).unwrap(), canon.clone());
        }
    }

    #[test]
    fn mul_is_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn empty_monomial_is_neutral(a in arb_poly()) {
        let one = TracePolynomial::one();
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert_eq!(one.mul(&a), a);
    }

    #[test]
    fn wrapped_polynomials_are_central(a in arb_poly(), b in arb_poly()) {
        // wrap_trace(a) * b == b * wrap_trace(a) whenever the wrap exists
        if let Ok(w) = a.wrap_trace() {
            prop_assert_eq!(w.mul(&b), b.mul(&w));
        }
    }

    #[test]
    fn mul_distributes_over_addition(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn format_parse_roundtrip(a in arb_poly()) {
        let text = a.to_string();
        let back = trace_pi_core::parse_poly(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn substitution_respects_composition() {
    use std::collections::BTreeMap;
    // sigma: x1 -> Tr(x2)*x1, x2 -> x3x4 ; tau shifts every variable up by one
    let p = trace_pi_core::catalog("f2", &[rat(2)]).unwrap();
    let m = |blocks: &[&[u32]], outside: &[u32]| TraceMonomial::new(blocks, outside).unwrap();
    let mut sigma = BTreeMap::new();
    sigma.insert(1, m(&[&[2]], &[1]));
    sigma.insert(2, m(&[], &[3, 4]));
    let mut tau = BTreeMap::new();
    for v in 1..=4 {
        tau.insert(v, m(&[], &[v + 1]));
    }
    let lhs = p
        .substitute(&sigma)
        .unwrap()
        .substitute(&tau)
        .unwrap();
    let composed: BTreeMap<u32, TraceMonomial> = sigma
        .iter()
        .map(|(v, img)| (*v, img.relabel(|x| x + 1).unwrap()))
        .collect();
    let rhs = p.substitute(&composed).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn multilinear_substitution_stays_multilinear() {
    use std::collections::BTreeMap;
    let p = trace_pi_core::catalog("h2", &[]).unwrap();
    let m = |blocks: &[&[u32]], outside: &[u32]| TraceMonomial::new(blocks, outside).unwrap();
    let mut sigma = BTreeMap::new();
    sigma.insert(1, m(&[&[5]], &[1]));
    sigma.insert(2, m(&[], &[2]));
    sigma.insert(3, m(&[&[4]], &[3]));
    let q = p.substitute_disjoint(&sigma).unwrap();
    assert_eq!(q.multilinear_degree(), Some(5));
}

#[test]
fn scale_by_zero_is_zero() {
    let p = trace_pi_core::catalog("h3", &[]).unwrap();
    assert!(p.scale(&Rat::from_integer(0.into())).is_zero());
    assert_eq!(p.sub(&p), TracePolynomial::zero());
}
