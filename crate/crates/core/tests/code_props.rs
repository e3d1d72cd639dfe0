use lrc_forge::code::{bch_lower_bound, column_search, enumeration_distance, DistanceOutcome};
use lrc_forge::numtheory::gcd;
use lrc_forge::{
    multiplicative_order, CyclicCode, EncodeMode, FieldTower, FiniteField, Parallelism, Polynomial,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cyclic code over GF(q) whose defining set is the union of the chosen
/// q-cyclotomic cosets mod n.
fn random_code(q: u64, n: usize, mask: u64) -> CyclicCode {
    let base = FiniteField::with_size(q).unwrap();
    let s = multiplicative_order(q, n as u64).unwrap() as u32;
    let ext = FiniteField::new(base.characteristic(), base.degree() * s).unwrap();
    let tower = FieldTower::new(&base, &ext).unwrap();
    let xi = ext.primitive_nth_root(n as u64).unwrap();
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for e in 0..n {
        if seen[e] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = e;
        while !seen[x] {
            seen[x] = true;
            coset.push(x);
            x = (x * q as usize) % n;
        }
        cosets.push(coset);
    }
    let mut g = Polynomial::one(&ext);
    for (i, coset) in cosets.iter().enumerate() {
        if mask >> (i % 64) & 1 == 1 {
            for &e in coset {
                g = g
                    .mul(&Polynomial::sparse_binomial(1, &xi.pow(e as u64)))
                    .unwrap();
            }
        }
    }
    let g = g.descend_coefficients(&tower).unwrap();
    CyclicCode::from_generator(&base, n, &g).unwrap()
}

fn small_params() -> impl Strategy<Value = (u64, usize, u64)> {
    (
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]),
        2usize..16,
        any::<u64>(),
    )
        .prop_filter("coprime", |(q, n, _)| gcd(*q, *n as u64) == 1)
        .prop_filter("small splitting field", |(q, n, _)| {
            (*q as u128).pow(multiplicative_order(*q, *n as u64).unwrap() as u32) <= 1 << 20
        })
}

fn random_message(rng: &mut ChaCha8Rng, q: u64, k: usize) -> Vec<u32> {
    (0..k).map(|_| rng.gen_range(0..q as u32)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn defining_set_is_cyclotomically_closed((q, n, mask) in small_params()) {
        let code = random_code(q, n, mask);
        let z = code.zeros();
        for &e in z {
            prop_assert!(z.contains(&(e * q as usize % n)));
        }
        prop_assert_eq!(z.len(), n - code.k());
    }

    #[test]
    fn cyclic_shift_closure((q, n, mask) in small_params()) {
        let code = random_code(q, n, mask);
        let f = code.base_field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(mask);
        for _ in 0..100 {
            let m = random_message(&mut rng, q, code.k());
            let c = code.encode_raw(&m, EncodeMode::Multiplicative).unwrap();
            for shift in 0..n {
                let rotated: Vec<_> = (0..n).map(|i| f.element(c[(i + n - shift) % n] as u64).unwrap()).collect();
                prop_assert!(code.is_codeword(&rotated).unwrap());
            }
        }
    }

    #[test]
    fn parity_check_matches_divisibility((q, n, mask) in small_params()) {
        let code = random_code(q, n, mask);
        let f = code.base_field().clone();
        let h = code.expanded_parity_check();
        // Rank-nullity: the kernel has dimension k.
        prop_assert_eq!(n - h.rank(), code.k());
        let mut rng = ChaCha8Rng::seed_from_u64(mask ^ 0x5eed);
        for _ in 0..50 {
            let word: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
            let lifted: Vec<_> = word.iter().map(|&x| f.element(x as u64).unwrap()).collect();
            let by_division = code.is_codeword(&lifted).unwrap();
            let by_syndrome = h.mul_vec(&word).iter().all(|&x| x == 0);
            prop_assert_eq!(by_division, by_syndrome);
            prop_assert_eq!(code.syndrome_is_zero(&word), by_division);
        }
    }

    #[test]
    fn systematic_encoding((q, n, mask) in small_params()) {
        let code = random_code(q, n, mask);
        let mut rng = ChaCha8Rng::seed_from_u64(mask);
        let m = random_message(&mut rng, q, code.k());
        let c = code.encode_raw(&m, EncodeMode::Systematic).unwrap();
        prop_assert_eq!(&c[n - code.k()..], &m[..]);
        // Oracle: c(x) mod g(x) is zero.
        let poly = Polynomial::from_raw(code.base_field(), c.clone());
        prop_assert!(poly.rem(code.generator()).unwrap().is_zero());
    }

    #[test]
    fn distance_oracles_agree((q, n, mask) in small_params()) {
        let code = random_code(q, n, mask);
        prop_assume!(code.k() > 0);
        prop_assume!((q as u128).pow(code.k() as u32) <= 1 << 16);
        let by_enumeration = enumeration_distance(code.generator_matrix(), 1 << 16, Parallelism::Sequential)
            .unwrap()
            .unwrap();
        let by_columns = column_search(code.parity_check(), n, u128::MAX, Parallelism::Parallel).unwrap();
        let by_expanded = column_search(code.expanded_parity_check(), n, u128::MAX, Parallelism::Sequential).unwrap();
        prop_assert_eq!(by_columns.outcome, DistanceOutcome::Exact(by_enumeration));
        prop_assert_eq!(by_expanded.outcome, DistanceOutcome::Exact(by_enumeration));
        let bch = bch_lower_bound(&code);
        prop_assert!(bch <= by_enumeration, "bch {} > d {}", bch, by_enumeration);
        prop_assert!(by_enumeration <= n - code.k() + 1);
    }

    #[test]
    fn bch_bound_matches_exhaustive_scan((q, n, mask) in small_params()) {
        let code = random_code(q, n, mask);
        let z = code.zeros();
        let mut best = 0;
        for b in 1..n.max(2) {
            if gcd(b as u64, n as u64) != 1 {
                continue;
            }
            for u in 0..n {
                let mut len = 0;
                while len < n && z.contains(&((u + len * b) % n)) {
                    len += 1;
                }
                best = best.max(len);
            }
        }
        prop_assert_eq!(bch_lower_bound(&code), 1 + best);
    }
}
