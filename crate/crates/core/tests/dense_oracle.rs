//! Cross-checks against explicit 2^n × 2^n matrices built by Kronecker products.

use num_complex::Complex;
use qwe_core::codespace::{CodeSpace, Exact};
use qwe_core::enumerator::{brute_force_enumerators, BruteForceOptions};
use qwe_core::pauli::{Letter, PauliString};
use qwe_core::Rational;

type C = Complex<i64>;

#[derive(Clone, PartialEq, Debug)]
struct Dense {
    dim: usize,
    m: Vec<C>,
}

impl Dense {
    fn get(&self, r: usize, c: usize) -> C {
        self.m[r * self.dim + c]
    }

    fn mul(&self, o: &Dense) -> Dense {
        let d = self.dim;
        let mut m = vec![C::new(0, 0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == C::new(0, 0) {
                    continue;
                }
                for c in 0..d {
                    m[r * d + c] += a * o.get(k, c);
                }
            }
        }
        Dense { dim: d, m }
    }

    fn scale(&self, s: C) -> Dense {
        Dense {
            dim: self.dim,
            m: self.m.iter().map(|&v| v * s).collect(),
        }
    }

    fn transpose(&self) -> Dense {
        let d = self.dim;
        let mut m = vec![C::new(0, 0); d * d];
        for r in 0..d {
            for c in 0..d {
                m[c * d + r] = self.get(r, c);
            }
        }
        Dense { dim: d, m }
    }

    fn adjoint(&self) -> Dense {
        let mut t = self.transpose();
        t.m.iter_mut().for_each(|v| *v = v.conj());
        t
    }

    fn trace(&self) -> C {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

fn single(letter: Letter) -> [C; 4] {
    let (o, z, i) = (C::new(1, 0), C::new(0, 0), C::new(0, 1));
    match letter {
        Letter::I => [o, z, z, o],
        Letter::X => [z, o, o, z],
        Letter::Y => [z, -i, i, z],
        Letter::Z => [o, z, z, -o],
    }
}

fn phase(p: u8) -> C {
    [C::new(1, 0), C::new(0, 1), C::new(-1, 0), C::new(0, -1)][(p & 3) as usize]
}

/// Matrix of `p` in the basis where bit `j` of the row index is qubit `j`.
fn dense(p: &PauliString) -> Dense {
    let n = p.n();
    let dim = 1usize << n;
    // letters carry their own i for Y; the remaining phase is the sign part
    let sign = phase(p.sign_exp());
    let mut m = vec![C::new(0, 0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut v = sign;
            for q in 0..n {
                let s = single(p.letter(q));
                v *= s[((r >> q) & 1) * 2 + ((c >> q) & 1)];
            }
            m[r * dim + c] = v;
        }
    }
    Dense { dim, m }
}

fn all_paulis(n: usize) -> Vec<PauliString> {
    let mut out = Vec::new();
    for x in 0..1u64 << n {
        for z in 0..1u64 << n {
            out.push(PauliString::unsigned(n, x, z).unwrap());
        }
    }
    out
}

#[test]
fn letter_phase_matches_y_convention() {
    // Y = iXZ
    let x = dense(&"X".parse().unwrap());
    let z = dense(&"Z".parse().unwrap());
    let y = dense(&"Y".parse().unwrap());
    assert_eq!(x.mul(&z).scale(C::new(0, 1)), y);
}

#[test]
fn multiply_matches_matrix_product() {
    for n in 1..=2 {
        let ps = all_paulis(n);
        for a in &ps {
            for b in &ps {
                for s in 0..4 {
                    let a = PauliString::new(n, a.x_mask(), a.z_mask(), (a.phase_exp() + s) & 3).unwrap();
                    let prod = a.multiply(b).unwrap();
                    assert_eq!(dense(&prod), dense(&a).mul(&dense(b)), "{a} * {b}");
                }
            }
        }
    }
}

#[test]
fn multiply_matches_on_three_qubits() {
    let ps = all_paulis(3);
    for a in ps.iter().step_by(5) {
        for b in &ps {
            assert_eq!(dense(&a.multiply(b).unwrap()), dense(a).mul(&dense(b)));
        }
    }
}

#[test]
fn commutes_matches_commutator() {
    for n in 1..=3 {
        let ps = all_paulis(n);
        for a in ps.iter().step_by(3) {
            for b in &ps {
                let (da, db) = (dense(a), dense(b));
                assert_eq!(a.commutes(b).unwrap(), da.mul(&db) == db.mul(&da));
            }
        }
    }
}

#[test]
fn apply_to_basis_matches_columns() {
    for n in 1..=3 {
        for p in all_paulis(n) {
            for s in 0..4u8 {
                let p = PauliString::new(n, p.x_mask(), p.z_mask(), (p.phase_exp() + s) & 3).unwrap();
                let d = dense(&p);
                for col in 0..1u64 << n {
                    let (row, k) = p.apply_to_basis(col).unwrap();
                    for r in 0..1usize << n {
                        let want = if r as u64 == row { phase(k) } else { C::new(0, 0) };
                        assert_eq!(d.get(r, col as usize), want);
                    }
                }
            }
        }
    }
}

#[test]
fn transpose_sign_follows_y_count() {
    for n in 1..=3 {
        for p in all_paulis(n) {
            let d = dense(&p);
            let t = d.transpose();
            if p.weight_profile().n_y % 2 == 0 {
                assert_eq!(t, d, "{p}");
                assert!(p.is_symmetric());
            } else {
                assert_eq!(t, d.scale(C::new(-1, 0)), "{p}");
                assert!(!p.is_symmetric());
            }
        }
    }
}

#[test]
fn letter_forms_are_hermitian() {
    for p in all_paulis(3) {
        let d = dense(&p);
        assert_eq!(d.adjoint(), d);
        assert!(p.is_hermitian());
        assert!(!PauliString::new(3, p.x_mask(), p.z_mask(), (p.phase_exp() + 1) & 3)
            .unwrap()
            .is_hermitian());
    }
}

#[test]
fn hadamard_matches_conjugation() {
    // H^⊗n up to the 1/√2^n factor, which cancels in H P H
    for n in 1..=2 {
        let dim = 1usize << n;
        let h = Dense {
            dim,
            m: (0..dim * dim)
                .map(|i| {
                    let (r, c) = (i / dim, i % dim);
                    C::new(if (r & c).count_ones() % 2 == 0 { 1 } else { -1 }, 0)
                })
                .collect(),
        };
        let norm = C::new(dim as i64, 0);
        for p in all_paulis(n) {
            let lhs = dense(&p.hadamard_conjugate()).scale(norm);
            assert_eq!(lhs, h.mul(&dense(&p)).mul(&h), "{p}");
        }
    }
}

fn projector(space: &CodeSpace<Exact>) -> (Dense, i64) {
    // Π·L with L = common multiple of the scales, to stay in integers
    let dim = 1usize << space.n();
    let l: i64 = space.codewords().iter().map(|c| c.scale() as i64).product();
    let mut m = vec![C::new(0, 0); dim * dim];
    for c in space.codewords() {
        let w = l / c.scale() as i64;
        for &(r, a) in c.support() {
            for &(s, b) in c.support() {
                m[r as usize * dim + s as usize] += a * b.conj() * w;
            }
        }
    }
    (Dense { dim, m }, l)
}

/// Enumerators straight from the trace definitions.
fn trace_enumerators(space: &CodeSpace<Exact>) -> (Vec<Rational>, Vec<Rational>) {
    let n = space.n();
    let k = space.k_dim() as i128;
    let (pi, l) = projector(space);
    let l = l as i128;
    let mut a = vec![Rational::from_integer(0); n + 1];
    let mut b = vec![Rational::from_integer(0); n + 1];
    for e in all_paulis(n) {
        let de = dense(&e);
        let ep = de.mul(&pi);
        let t = ep.trace();
        let tr2 = ep.mul(&ep).trace();
        assert_eq!(tr2.im, 0);
        let w = e.weight();
        a[w] += Rational::new(t.norm_sqr() as i128, k * k * l * l);
        b[w] += Rational::new(tr2.re as i128, k * l * l);
    }
    (a, b)
}

fn c(re: i64, im: i64) -> C {
    C::new(re, im)
}

#[test]
fn brute_force_matches_trace_definition() {
    let spaces = vec![
        // trivial code
        CodeSpace::<Exact>::from_vectors(1, vec![vec![(0, c(1, 0))], vec![(1, c(1, 0))]]).unwrap(),
        // Bell state
        CodeSpace::<Exact>::from_vectors(2, vec![vec![(0, c(1, 0)), (3, c(1, 0))]]).unwrap(),
        // three-qubit repetition code
        CodeSpace::<Exact>::from_vectors(3, vec![vec![(0, c(1, 0))], vec![(7, c(1, 0))]]).unwrap(),
        // complex, unequal scales, not a stabilizer code
        CodeSpace::<Exact>::from_vectors(
            3,
            vec![
                vec![(0, c(1, 0)), (3, c(0, 2)), (5, c(-1, 1))],
                vec![(1, c(2, 0)), (6, c(1, -1))],
                vec![(2, c(3, 0))],
            ],
        )
        .unwrap(),
        // real, non-stabilizer pair with scales 5 and 3
        CodeSpace::<Exact>::from_vectors(
            3,
            vec![
                vec![(0, c(1, 0)), (6, c(2, 0))],
                vec![(7, c(1, 0)), (1, c(-1, 0)), (2, c(1, 0))],
            ],
        )
        .unwrap(),
    ];
    for space in &spaces {
        let pair = brute_force_enumerators(space, &BruteForceOptions::default()).unwrap();
        let (a, b) = trace_enumerators(space);
        assert_eq!(pair.a, a);
        assert_eq!(pair.b, b);
    }
}
