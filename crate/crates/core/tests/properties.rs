//! Property tests over randomly drawn small inputs.

use num_bigint::BigUint;
use proptest::prelude::*;

use twisted_hurwitz::oracle::{self, HurwitzInput, ScanOptions};
use twisted_hurwitz::partition::Partition;
use twisted_hurwitz::permutation::Permutation;
use twisted_hurwitz::tropical;
use twisted_hurwitz::twist;

fn small_partition(max_size: u64) -> impl Strategy<Value = Partition> {
    (1..=max_size)
        .prop_flat_map(|n| {
            let all = Partition::all_of(n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just(()).prop_perturb(move |_, mut rng| {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            let j = (rng.next_u64() as usize) % (i + 1);
            images.swap(i, j);
        }
        Permutation::from_images(images).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inverse_composes_to_identity(p in permutation(8)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn cycle_type_partitions_the_degree(p in permutation(9)) {
        prop_assert_eq!(p.cycle_type().size(), 9);
    }

    #[test]
    fn b_tilde_elements_invert_under_twist(lambda in small_partition(4)) {
        let n = lambda.size() as usize;
        let tau = twist::tau(n).unwrap();
        let listed = twist::enumerate_b_tilde(&lambda, 12).unwrap();
        prop_assert_eq!(
            BigUint::from(listed.len() as u64),
            twist::b_tilde_cardinality(&lambda)
        );
        for sigma in &listed {
            prop_assert_eq!(sigma.conjugate(&tau), sigma.inverse());
            prop_assert!(twist::is_in_b_tilde(sigma, &lambda, n));
        }
    }

    #[test]
    fn source_target_symmetry(mu in small_partition(3), nu in small_partition(3), genus in 0u64..2) {
        prop_assume!(mu.size() == nu.size());
        let opts = ScanOptions::default();
        let forward = HurwitzInput::new(genus, mu.clone(), nu.clone()).unwrap();
        let backward = HurwitzInput::new(genus, nu, mu).unwrap();
        if forward.branch_count().is_err() {
            return Ok(());
        }
        prop_assert_eq!(
            oracle::twisted_hurwitz(&forward, true, &opts).unwrap(),
            oracle::twisted_hurwitz(&backward, true, &opts).unwrap()
        );
    }

    #[test]
    fn enumeration_is_deterministic_and_duplicate_free(
        mu in small_partition(4),
        nu in small_partition(4),
        genus in 0u64..2,
    ) {
        prop_assume!(mu.size() == nu.size());
        match oracle::branch_count(genus, &mu, &nu) {
            Ok(b) if b <= 5 => {}
            _ => return Ok(()),
        }
        let first = tropical::enumerate_twisted_covers(genus, &mu, &nu, false).unwrap();
        let second = tropical::enumerate_twisted_covers(genus, &mu, &nu, false).unwrap();
        prop_assert_eq!(first.len(), second.len());
        for (a, b) in first.iter().zip(second.iter()) {
            prop_assert!(a.is_isomorphic(b));
        }
        // each isomorphism class exactly once
        for i in 0..first.len() {
            prop_assert!(first[i].is_isomorphic(&first[i]));
            for j in i + 1..first.len() {
                prop_assert!(!first[i].is_isomorphic(&first[j]), "duplicate covers at {i},{j}");
            }
        }
    }
}
