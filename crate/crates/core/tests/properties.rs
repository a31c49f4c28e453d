use proptest::prelude::*;
use qwe_core::pauli::{weight_class_size, PauliString, WeightClass};

fn pauli(max_n: usize) -> impl Strategy<Value = PauliString> {
    (1..=max_n).prop_flat_map(|n| {
        let mask = (1u64 << n) - 1;
        (Just(n), any::<u64>(), any::<u64>(), 0u8..4)
            .prop_map(move |(n, x, z, p)| PauliString::new(n, x & mask, z & mask, p).unwrap())
    })
}

fn pauli_triple() -> impl Strategy<Value = (PauliString, PauliString, PauliString)> {
    (1usize..=63).prop_flat_map(|n| {
        let mask = (1u64 << n) - 1;
        let one = move || {
            (any::<u64>(), any::<u64>(), 0u8..4)
                .prop_map(move |(x, z, p)| PauliString::new(n, x & mask, z & mask, p).unwrap())
        };
        (one(), one(), one())
    })
}

proptest! {
    #[test]
    fn y_count_from_other_weights(p in pauli(63)) {
        let w = p.weight_profile();
        prop_assert_eq!(w.n_y, w.wt_x + w.wt_z - w.wt);
        prop_assert_eq!(w.wt, w.n_x + w.n_y + w.n_z);
    }

    #[test]
    fn label_round_trip(p in pauli(63)) {
        let label = p.to_label();
        prop_assert_eq!(PauliString::from_label(&label).unwrap(), p);
    }

    #[test]
    fn multiplication_is_associative((a, b, c) in pauli_triple()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutation_decides_reordering((a, b, _) in pauli_triple()) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        if a.commutes(&b).unwrap() {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, ba.negated());
        }
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }

    #[test]
    fn letter_forms_square_to_identity(p in pauli(63)) {
        let u = p.to_unsigned();
        prop_assert!(u.is_hermitian());
        let sq = u.multiply(&u).unwrap();
        prop_assert!(sq.is_identity_string());
        prop_assert_eq!(sq.phase_exp(), 0);
    }

    #[test]
    fn hadamard_is_an_involution_preserving_products((a, b, _) in pauli_triple()) {
        prop_assert_eq!(a.hadamard_conjugate().hadamard_conjugate(), a);
        let lhs = a.multiply(&b).unwrap().hadamard_conjugate();
        let rhs = a.hadamard_conjugate().multiply(&b.hadamard_conjugate()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_action_composes((a, b, _) in pauli_triple(), seed in any::<u64>()) {
        let x = seed & ((1u64 << a.n()) - 1);
        let (y1, k1) = b.apply_to_basis(x).unwrap();
        let (y2, k2) = a.apply_to_basis(y1).unwrap();
        let (y, k) = a.multiply(&b).unwrap().apply_to_basis(x).unwrap();
        prop_assert_eq!(y, y2);
        prop_assert_eq!(k, (k1 + k2) & 3);
    }

    #[test]
    fn permutation_preserves_profile_and_products(
        (a, b, _) in pauli_triple(),
        shuffle in any::<u64>(),
    ) {
        let n = a.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = shuffle;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s = s.rotate_left(7) ^ 0x9e37_79b9_7f4a_7c15;
        }
        let pa = a.permute_qubits(&perm).unwrap();
        prop_assert_eq!(pa.weight_profile(), a.weight_profile());
        let lhs = a.multiply(&b).unwrap().permute_qubits(&perm).unwrap();
        prop_assert_eq!(lhs, pa.multiply(&b.permute_qubits(&perm).unwrap()).unwrap());
    }

    #[test]
    fn weight_class_random_access(n in 1usize..=9, w in 0usize..=9, frac in 0.0f64..1.0) {
        let w = w.min(n);
        let size = weight_class_size(n, w);
        let rank = ((size as f64) * frac) as u128 % size;
        let tail: Vec<_> = WeightClass::new(n, w).unwrap().skip(rank as usize).take(5).collect();
        let jumped: Vec<_> = WeightClass::starting_at(n, w, rank).unwrap().take(5).collect();
        prop_assert_eq!(tail, jumped);
    }
}

#[test]
fn weight_classes_partition_all_paulis() {
    let n = 4;
    let mut seen = std::collections::HashSet::new();
    for w in 0..=n {
        let class: Vec<_> = WeightClass::new(n, w).unwrap().collect();
        assert_eq!(class.len() as u128, weight_class_size(n, w));
        for p in class {
            assert_eq!(p.weight(), w);
            assert!(seen.insert((p.x_mask(), p.z_mask())));
        }
    }
    assert_eq!(seen.len(), 256);
}
