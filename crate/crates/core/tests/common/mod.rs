#![allow(dead_code)]

use qwe_core::pauli::PauliString;
use qwe_core::stabilizer::{validate, StabilizerGroup};
use rand::Rng;

/// Draws a random valid group with `n - k` generators; `all_even` restricts
/// generators to even `n_X`, `n_Y`, `n_Z`.
pub fn random_group(n: usize, k: usize, all_even: bool, rng: &mut impl Rng) -> StabilizerGroup {
    let mask = (1u64 << n) - 1;
    'restart: loop {
        let mut gens: Vec<PauliString> = Vec::new();
        while gens.len() < n - k {
            let mut found = None;
            for _ in 0..20_000 {
                let p = PauliString::unsigned(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask).unwrap();
                let p = if rng.gen() { p.negated() } else { p };
                let w = p.weight_profile();
                if w.wt == 0 || (all_even && (w.n_x % 2 == 1 || w.n_y % 2 == 1 || w.n_z % 2 == 1)) {
                    continue;
                }
                if !gens.iter().all(|g| g.commutes(&p).unwrap()) {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(p);
                if validate(&trial).is_ok() {
                    found = Some(p);
                    break;
                }
            }
            match found {
                Some(p) => gens.push(p),
                None => continue 'restart,
            }
        }
        return validate(&gens).unwrap();
    }
}
