//! The generator battery: every named generator is an identity of its own
//! algebra across parameter choices, transfers lift identities to the
//! one-larger degenerate diagonal algebra, and the evaluation semantics agree
//! with the multilinear expansion on random rational points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trace_pi_core::{
    build_c2, build_ck_degenerate, build_dn, catalog, evaluate, ideals_equal_at_degree,
    is_identity, rat, wrap_generator, Assignment, Rat, TraceAlgebra, TracePolynomial,
};

fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

fn assert_identity(p: &TracePolynomial, alg: &TraceAlgebra, what: &str) {
    let verdict = is_identity(p, alg).unwrap();
    assert!(verdict.holds(), "{what} should vanish on {}", alg.label());
}

#[test]
fn generators_vanish_on_their_algebras() {
    let params = [rat(1), rat(2), rat(-1)];
    let f1 = catalog("f1", &[]).unwrap();
    for a in &params {
        let d2_a0 = build_dn(&[a.clone(), rat(0)]).unwrap();
        assert_identity(&f1, &d2_a0, "f1");
        assert_identity(&catalog("f2", &[a.clone()]).unwrap(), &d2_a0, "f2");

        let d2_aa = build_dn(&[a.clone(), a.clone()]).unwrap();
        assert_identity(&f1, &d2_aa, "f1");
        assert_identity(&catalog("f3", &[a.clone()]).unwrap(), &d2_aa, "f3");

        let d3_aa0 = build_dn(&[a.clone(), a.clone(), rat(0)]).unwrap();
        assert_identity(&catalog("g3", &[a.clone()]).unwrap(), &d3_aa0, "g3");

        let c2_a1 = build_c2(a, &rat(1));
        assert_identity(&f1, &c2_a1, "f1");
        assert_identity(&catalog("h4", &[a.clone()]).unwrap(), &c2_a1, "h4");
        assert_identity(&catalog("h5", &[a.clone()]).unwrap(), &c2_a1, "h5");

        for k in [2u32, 3, 4] {
            let ck = build_ck_degenerate(k as usize, a).unwrap();
            assert_identity(&catalog("g6", &[a.clone()]).unwrap(), &ck, "g6");
            assert_identity(
                &catalog("g7", &[a.clone(), rat(k as i64)]).unwrap(),
                &ck,
                "g7",
            );
        }
    }
    for (a, b) in [(rat(1), rat(2)), (rat(1), rat(-1)), (rat(2), rat(-1))] {
        let d2_ab = build_dn(&[a.clone(), b.clone()]).unwrap();
        assert_identity(&catalog("f4", &[a.clone(), b.clone()]).unwrap(), &d2_ab, "f4");
        assert_identity(&catalog("f5", &[a.clone(), b.clone()]).unwrap(), &d2_ab, "f5");

        let d3_ab0 = build_dn(&[a.clone(), b.clone(), rat(0)]).unwrap();
        assert_identity(&catalog("g4", &[a.clone(), b.clone()]).unwrap(), &d3_ab0, "g4");
        assert_identity(&catalog("g5", &[a.clone(), b.clone()]).unwrap(), &d3_ab0, "g5");
    }
    let c2_01 = build_c2(&rat(0), &rat(1));
    assert_identity(&catalog("h2", &[]).unwrap(), &c2_01, "h2");
    assert_identity(&catalog("h3", &[]).unwrap(), &c2_01, "h3");
}

/// g7 with alpha = 0 degenerates to the product of singleton traces, which is
/// not an identity of C_k; the parameterization matters.
#[test]
fn g7_needs_the_right_alpha() {
    let ck = build_ck_degenerate(3, &rat(1)).unwrap();
    let wrong = catalog("g7", &[rat(2), rat(3)]).unwrap();
    assert!(!is_identity(&wrong, &ck).unwrap().holds());
}

#[test]
fn wrapping_lifts_identities_to_the_degenerate_extension() {
    // f identity of D_n with all trace values nonzero implies Tr(f x) is an
    // identity of D_{n+1} with an appended zero trace value.
    let cases: Vec<(Vec<Rat>, TracePolynomial)> = vec![
        (rats(&[1, 1]), catalog("f3", &[rat(1)]).unwrap()),
        (rats(&[2, 2]), catalog("f3", &[rat(2)]).unwrap()),
        (rats(&[1, 2]), catalog("f4", &[rat(1), rat(2)]).unwrap()),
        (rats(&[1, 2]), catalog("f5", &[rat(1), rat(2)]).unwrap()),
        (rats(&[1, 0]), catalog("f2", &[rat(1)]).unwrap()),
    ];
    for (alphas, f) in cases {
        let small = build_dn(&alphas).unwrap();
        assert_identity(&f, &small, "source generator");
        let mut extended = alphas.clone();
        extended.push(rat(0));
        let big = build_dn(&extended).unwrap();
        let wrapped = wrap_generator(&f).unwrap();
        assert_identity(&wrapped, &big, "wrapped generator");
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    (0..dim)
        .map(|_| {
            let num = rng.gen_range(-4i64..=4);
            let den = rng.gen_range(1i64..=3);
            Rat::new(num.into(), den.into())
        })
        .collect()
}

/// Multilinearity makes basis tuples sufficient: on random rational points
/// the direct evaluation equals the expansion over basis tuples weighted by
/// coordinate products.
#[test]
fn evaluation_matches_multilinear_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ace);
    let cases: Vec<(TracePolynomial, TraceAlgebra)> = vec![
        (catalog("f2", &[rat(1)]).unwrap(), build_dn(&rats(&[1, 0])).unwrap()),
        (catalog("f3", &[rat(2)]).unwrap(), build_dn(&rats(&[2, 2])).unwrap()),
        (catalog("h3", &[]).unwrap(), build_c2(&rat(0), &rat(1))),
        (catalog("f1", &[]).unwrap(), build_ck_degenerate(3, &rat(1)).unwrap()),
    ];
    for (p, alg) in &cases {
        let n = p.multilinear_degree().unwrap() as usize;
        let d = alg.dim();
        for _ in 0..200 {
            let points: Vec<Vec<Rat>> = (0..n).map(|_| random_element(&mut rng, d)).collect();
            let mut asg = Assignment::new(alg);
            for (i, pt) in points.iter().enumerate() {
                asg = asg.set_coords(i as u32 + 1, pt.clone());
            }
            let direct = evaluate(p, &asg).unwrap();

            let mut expansion = vec![Rat::from_integer(0.into()); d];
            for t in 0..d.pow(n as u32) {
                let mut idx = t;
                let mut tuple = vec![0usize; n];
                for slot in (0..n).rev() {
                    tuple[slot] = idx % d;
                    idx /= d;
                }
                let weight: Rat = tuple
                    .iter()
                    .enumerate()
                    .map(|(slot, &b)| points[slot][b].clone())
                    .fold(Rat::from_integer(1.into()), |acc, x| acc * x);
                if num_traits::Zero::is_zero(&weight) {
                    continue;
                }
                let mut basis_asg = Assignment::new(alg);
                for (slot, &b) in tuple.iter().enumerate() {
                    let mut coords = vec![Rat::from_integer(0.into()); d];
                    coords[b] = rat(1);
                    basis_asg = basis_asg.set_coords(slot as u32 + 1, coords);
                }
                let v = evaluate(p, &basis_asg).unwrap();
                for (acc, x) in expansion.iter_mut().zip(v.coords()) {
                    *acc += x * &weight;
                }
            }
            assert_eq!(direct.coords(), expansion.as_slice());
        }
    }
}

#[test]
fn trace_symmetry_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let algebras = vec![
        build_dn(&rats(&[1, 2, 0])).unwrap(),
        build_c2(&rat(1), &rat(2)),
        build_ck_degenerate(4, &rat(3)).unwrap(),
        trace_pi_core::build_ut2(),
        trace_pi_core::build_mn(2, &rat(1)).unwrap(),
    ];
    for alg in &algebras {
        for _ in 0..1000 {
            let a = alg.element(random_element(&mut rng, alg.dim())).unwrap();
            let b = alg.element(random_element(&mut rng, alg.dim())).unwrap();
            let ab = a.mul(&b).unwrap().trace();
            let ba = b.mul(&a).unwrap().trace();
            assert_eq!(ab, ba, "{}", alg.label());
        }
    }
}

/// Degenerate diagonal traces are exactly the ones with a vanishing value,
/// over every {0,1,2}-pattern up to four entries.
#[test]
fn diagonal_degeneracy_patterns() {
    for d in 1..=4usize {
        for code in 0..3usize.pow(d as u32) {
            let mut alphas = Vec::with_capacity(d);
            let mut c = code;
            for _ in 0..d {
                alphas.push(rat((c % 3) as i64));
                c /= 3;
            }
            let alg = build_dn(&alphas).unwrap();
            let has_zero = alphas.iter().any(|a| num_traits::Zero::is_zero(a));
            assert_eq!(alg.is_degenerate(), has_zero, "pattern {alphas:?}");
            if let Some(witness) = alg.degeneracy_witness() {
                // the witness pairs to zero with every basis element
                let w = alg.element(witness).unwrap();
                for i in 0..alg.dim() {
                    let b = alg.basis_element(i);
                    assert_eq!(w.mul(&b).unwrap().trace(), rat(0));
                }
            }
        }
    }
}

/// Permuting the diagonal trace values yields trace-isomorphic algebras, so
/// the identity spaces agree degree by degree.
#[test]
fn permuted_diagonal_traces_have_equal_identities() {
    let base = rats(&[1, 2, 0]);
    let perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![1, 0, 2],
        vec![2, 0, 1],
        vec![0, 2, 1],
    ];
    let reference = build_dn(&base).unwrap();
    for perm in &perms {
        let permuted: Vec<Rat> = perm.iter().map(|&i| base[i].clone()).collect();
        let other = build_dn(&permuted).unwrap();
        for n in 1..=4u32 {
            assert!(
                ideals_equal_at_degree(&reference, &other, n).unwrap(),
                "{permuted:?} at n={n}"
            );
        }
    }
}
