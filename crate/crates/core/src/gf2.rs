//! Linear algebra over GF(2) on packed symplectic vectors.
//!
//! Vectors pack a Pauli's masks as `x | z << 64`.

use crate::pauli::PauliString;

#[inline]
pub(crate) fn pack(p: &PauliString) -> u128 {
    p.x_mask() as u128 | (p.z_mask() as u128) << 64
}

#[inline]
pub(crate) fn unpack(v: u128) -> (u64, u64) {
    (v as u64, (v >> 64) as u64)
}

#[inline]
fn top_bit(v: u128) -> usize {
    127 - v.leading_zeros() as usize
}

/// Echelon basis of Pauli operators that tracks exact phases under reduction.
///
/// Row `b` (if present) has highest packed bit `b`. All stored operators are
/// products of inserted operators, so reducing a member of the span down to
/// the identity string leaves exactly the phase relating it to that product.
#[derive(Debug, Clone)]
pub(crate) struct PauliBasis {
    n: usize,
    rows: Vec<Option<PauliString>>,
}

pub(crate) enum Insert {
    Added,
    /// The operator reduced to the identity string with this phase exponent.
    Dependent(u8),
}

impl PauliBasis {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            n,
            rows: vec![None; 128],
        }
    }

    /// Multiplies `p` on the right by basis rows until no pivot bit remains.
    pub(crate) fn reduce(&self, p: &PauliString) -> PauliString {
        let mut cur = *p;
        let mut v = pack(&cur);
        while v != 0 {
            let b = top_bit(v);
            match &self.rows[b] {
                Some(row) => {
                    cur = cur.mul_unchecked(row);
                    v = pack(&cur);
                }
                None => break,
            }
        }
        cur
    }

    /// Reduces only the masks; phase is not tracked.
    pub(crate) fn reduce_vec(&self, mut v: u128) -> u128 {
        while v != 0 {
            let b = top_bit(v);
            match &self.rows[b] {
                Some(row) => v ^= pack(row),
                None => break,
            }
        }
        v
    }

    pub(crate) fn contains_vec(&self, v: u128) -> bool {
        self.reduce_vec(v) == 0
    }

    pub(crate) fn insert(&mut self, p: &PauliString) -> Insert {
        let reduced = self.reduce(p);
        let v = pack(&reduced);
        if v == 0 {
            return Insert::Dependent(reduced.phase_exp());
        }
        debug_assert_eq!(reduced.n(), self.n);
        self.rows[top_bit(v)] = Some(reduced);
        Insert::Added
    }
}

/// Basis of `{u : row·u = 0 for every row}` restricted to the columns in `columns`.
pub(crate) fn null_space(rows: &[u128], columns: u128) -> Vec<u128> {
    let mut rows: Vec<u128> = rows.iter().map(|r| r & columns).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut next_row = 0;
    for col in 0..128 {
        if columns >> col & 1 == 0 {
            continue;
        }
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot = rows[next_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && *row >> col & 1 == 1 {
                *row ^= pivot;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    let pivot_cols: u128 = pivots.iter().fold(0, |acc, &(_, c)| acc | 1u128 << c);
    let mut basis = Vec::new();
    for free in 0..128 {
        if columns >> free & 1 == 0 || pivot_cols >> free & 1 == 1 {
            continue;
        }
        let mut v = 1u128 << free;
        for &(r, c) in &pivots {
            if rows[r] >> free & 1 == 1 {
                v |= 1u128 << c;
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `coeffs[i]·x = rhs[i]` over `n` unknowns; returns one solution.
pub(crate) fn solve(equations: &[(u64, bool)], n: usize) -> Option<u64> {
    let mut eqs: Vec<(u64, bool)> = equations.to_vec();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(found) = (next..eqs.len()).find(|&r| eqs[r].0 >> col & 1 == 1) else {
            continue;
        };
        eqs.swap(next, found);
        let (pc, pr) = eqs[next];
        for (r, eq) in eqs.iter_mut().enumerate() {
            if r != next && eq.0 >> col & 1 == 1 {
                eq.0 ^= pc;
                eq.1 ^= pr;
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if eqs[next..].iter().any(|&(_, rhs)| rhs) {
        return None;
    }
    let mut x = 0u64;
    for &(r, c) in &pivots {
        if eqs[r].1 {
            x |= 1 << c;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_dimension_and_orthogonality() {
        let rows = [0b1011u128, 0b0110];
        let ns = null_space(&rows, 0b1111);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in rows {
                assert_eq!((v & r).count_ones() % 2, 0);
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let eqs = [(0b011u64, true), (0b110, false)];
        let x = solve(&eqs, 3).unwrap();
        for (c, r) in eqs {
            assert_eq!((c & x).count_ones() % 2 == 1, r);
        }
        assert!(solve(&[(0b1, true), (0b1, false)], 1).is_none());
    }

    #[test]
    fn basis_tracks_phase() {
        let mut b = PauliBasis::new(2);
        let xx: PauliString = "XX".parse().unwrap();
        let zz: PauliString = "ZZ".parse().unwrap();
        assert!(matches!(b.insert(&xx), Insert::Added));
        assert!(matches!(b.insert(&zz), Insert::Added));
        // -YY = XX·ZZ, so YY reduces to the identity with sign -1
        let yy: PauliString = "YY".parse().unwrap();
        assert_eq!(b.reduce(&yy).phase_exp(), 2);
        assert!(b.contains_vec(pack(&yy)));
        assert!(!b.contains_vec(pack(&"XI".parse().unwrap())));
    }
}
