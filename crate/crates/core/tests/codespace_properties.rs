use num_complex::Complex;
use proptest::prelude::*;
use qwe_core::codespace::{CodeSpace, Exact};
use qwe_core::enumerator::{brute_force_enumerators, macwilliams_transform, BruteForceOptions};
use qwe_core::pauli::PauliString;
use qwe_core::Rational;

/// Up to three codewords on disjoint supports (so they are orthogonal) with
/// small Gaussian-integer amplitudes.
fn space(real: bool) -> impl Strategy<Value = CodeSpace<Exact>> {
    (1usize..=4)
        .prop_flat_map(move |n| {
            let dim = 1usize << n;
            let amp = if real {
                (-3i64..=3, Just(0i64)).boxed()
            } else {
                (-3i64..=3, -3i64..=3).boxed()
            };
            (Just(n), proptest::collection::vec((0usize..3, amp), dim), 1usize..=3)
        })
        .prop_filter_map("every codeword needs support", |(n, cells, k)| {
            let k = k.min(1 << n);
            let mut vectors = vec![Vec::new(); k];
            for (x, (owner, (re, im))) in cells.into_iter().enumerate() {
                if owner < k && (re, im) != (0, 0) {
                    vectors[owner].push((x as u64, Complex::new(re, im)));
                }
            }
            if vectors.iter().any(Vec::is_empty) {
                return None;
            }
            CodeSpace::<Exact>::from_vectors(n, vectors).ok()
        })
}

fn letter_form(n: usize, x: u64, z: u64) -> PauliString {
    let mask = (1u64 << n) - 1;
    PauliString::unsigned(n, x & mask, z & mask).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hermitian_matrix_elements(s in space(false), x in any::<u64>(), z in any::<u64>()) {
        let e = letter_form(s.n(), x, z);
        for a in 0..s.k_dim() {
            for b in 0..s.k_dim() {
                let ab = s.matrix_element(a, &e, b).unwrap();
                let ba = s.matrix_element(b, &e, a).unwrap();
                prop_assert!(ab.same_value(&ba.conj()));
            }
        }
    }

    #[test]
    fn antisymmetric_expectation_vanishes_on_real_words(s in space(true), x in any::<u64>(), z in any::<u64>()) {
        let e = letter_form(s.n(), x, z);
        prop_assume!(!e.is_symmetric());
        for a in 0..s.k_dim() {
            prop_assert!(s.matrix_element(a, &e, a).unwrap().is_zero());
        }
    }

    #[test]
    fn enumerator_totals_and_bounds(s in space(false)) {
        let n = s.n();
        let k = s.k_dim() as i128;
        let pair = brute_force_enumerators(&s, &BruteForceOptions::default()).unwrap();
        let one = Rational::from_integer(1);
        prop_assert_eq!(pair.a[0], one);
        prop_assert_eq!(pair.b[0], one);
        for (a, b) in pair.a.iter().zip(&pair.b) {
            prop_assert!(*a >= Rational::from_integer(0) && b >= a);
        }
        let sa: Rational = pair.a.iter().sum();
        let sb: Rational = pair.b.iter().sum();
        prop_assert_eq!(sa, Rational::new(1 << n, k));
        prop_assert_eq!(sb, Rational::from_integer((1 << n) * k));
        prop_assert_eq!(macwilliams_transform(&pair.a, n, s.k_dim()), pair.b);
    }
}
