//! Classical Tor patterns computed by brute force: exterior algebras
//! give divided powers, truncated polynomial algebras give an exterior
//! class plus divided powers on the transpotence class.

use bar_oracle::{bar_tor_dims, cartan_check, AugmentedAlgebra};
use graded_core::{GenKind, GeneratorSpec, Gens, RingSpec, TriDeg};

fn monogenic(p: u64, kind: GenKind, degree: i64) -> RingSpec {
    RingSpec::new(
        p,
        Gens::new(vec![GeneratorSpec::new("x", kind, TriDeg::internal(degree), 0)]).unwrap(),
        Vec::new(),
    )
    .unwrap()
}

#[test]
fn trivial_algebra_has_unit_only() {
    let ring = RingSpec::new(5, Gens::new(vec![]).unwrap(), Vec::new()).unwrap();
    let alg = AugmentedAlgebra::new(ring, 20).unwrap();
    let tor = bar_tor_dims(&alg, 6, 20).unwrap();
    assert_eq!(tor.dim(0, 0), 1);
    assert!(tor.iter().all(|(&(s, t), &d)| (s, t) == (0, 0) || d == 0));
}

#[test]
fn exterior_class_gives_divided_powers() {
    // Tor over E(x), |x| = 3: one class at (s, 3s) for every s
    let alg = AugmentedAlgebra::new(monogenic(5, GenKind::Exterior, 3), 30).unwrap();
    let tor = bar_tor_dims(&alg, 8, 30).unwrap();
    for s in 0..=8usize {
        for t in 0..=30i64 {
            let expect = usize::from(t == 3 * s as i64);
            assert_eq!(tor.dim(s, t), expect, "at ({s},{t})");
        }
    }
}

#[test]
fn truncated_polynomial_gives_exterior_tensor_divided_powers() {
    // Tor over P_p(x), |x| = 2, p = 5: E(sx) (x) divided powers on cx,
    // with sx in bidegree (1, 2) and cx in bidegree (2, 2p); the class
    // gamma_k(cx) sits in bidegree (2k, 2pk).
    let p = 5u64;
    let alg = AugmentedAlgebra::new(monogenic(p, GenKind::Truncated(5), 2), 30).unwrap();
    let tor = bar_tor_dims(&alg, 16, 30).unwrap();
    let mut expected = std::collections::BTreeMap::new();
    for eps in 0..=1usize {
        for k in 0..=8usize {
            let (s, t) = (eps + 2 * k, 2 * eps as i64 + 2 * p as i64 * k as i64);
            if t <= 30 {
                expected.insert((s, t), 1usize);
            }
        }
    }
    for s in 0..=16usize {
        for t in 0..=30i64 {
            let expect = *expected.get(&(s, t)).unwrap_or(&0);
            assert_eq!(tor.dim(s, t), expect, "at ({s},{t})");
        }
    }
    // transpotence degree: |cx| = 2p|x|/2 + 2 = 12 at p=5, matching the
    // degree of the first higher Bott class
    assert_eq!(tor.dim(2, 10), 1);
    assert_eq!(2 + 10, 2 * p as i64 + 2);
}

#[test]
fn tor_of_tensor_is_tensor_of_tors() {
    let p = 5u64;
    let combined = RingSpec::new(
        p,
        Gens::new(vec![
            GeneratorSpec::new("x", GenKind::Exterior, TriDeg::internal(3), 0),
            GeneratorSpec::new("y", GenKind::Truncated(5), TriDeg::internal(2), 0),
        ])
        .unwrap(),
        Vec::new(),
    )
    .unwrap();
    let t_max = 18i64;
    let s_max = 9usize;
    let alg = AugmentedAlgebra::new(combined, t_max).unwrap();
    let tor = bar_tor_dims(&alg, s_max, t_max).unwrap();

    let ta = bar_tor_dims(
        &AugmentedAlgebra::new(monogenic(p, GenKind::Exterior, 3), t_max).unwrap(),
        s_max,
        t_max,
    )
    .unwrap();
    let tb = bar_tor_dims(
        &AugmentedAlgebra::new(monogenic(p, GenKind::Truncated(5), 2), t_max).unwrap(),
        s_max,
        t_max,
    )
    .unwrap();

    for s in 0..=s_max {
        for t in 0..=t_max {
            let mut expect = 0usize;
            for s1 in 0..=s {
                for t1 in 0..=t {
                    expect += ta.dim(s1, t1) * tb.dim(s - s1, t - t1);
                }
            }
            assert_eq!(tor.dim(s, t), expect, "at ({s},{t})");
        }
    }
}

#[test]
fn euler_characteristic_matches_chain_level() {
    // per internal degree t, the alternating sum of Tor dims equals the
    // alternating sum of bar-chain dims
    let p = 5u64;
    let alg = AugmentedAlgebra::new(monogenic(p, GenKind::Truncated(5), 2), 16).unwrap();
    let s_max = 9usize;
    let tor = bar_tor_dims(&alg, s_max, 16).unwrap();
    for t in 0..=16i64 {
        let mut chi_chain = 0i64;
        for s in 0..=s_max {
            // chains in Ideal^(x s) of degree t: count tuples
            let count = count_tuples(&alg, s, t);
            chi_chain += if s % 2 == 0 { count } else { -count };
        }
        let mut chi_tor = 0i64;
        for s in 0..=s_max {
            let d = tor.dim(s, t) as i64;
            chi_tor += if s % 2 == 0 { d } else { -d };
        }
        assert_eq!(chi_chain, chi_tor, "degree {t}");
    }
}

fn count_tuples(alg: &AugmentedAlgebra, s: usize, t: i64) -> i64 {
    // dim of (ideal)^(x s) in degree t by convolution
    let mut dims = vec![0i64; (t + 1) as usize];
    dims[0] = 1;
    for _ in 0..s {
        let mut next = vec![0i64; (t + 1) as usize];
        for (d, &v) in dims.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for e in 1..=(t as usize - d) {
                next[d + e] += v * alg.ideal_dim(e as i64) as i64;
            }
        }
        dims = next;
    }
    dims[t as usize]
}

#[test]
fn cartan_pattern_at_p5_to_degree_14() {
    let report = cartan_check(5, 14).unwrap();
    assert!(
        report.passed(),
        "mismatches: {:?}",
        report.mismatches
    );
}
