//! n-qubit Pauli strings in bit-packed symplectic form.
//!
//! A [`PauliString`] stores two masks and a quarter-turn phase. The operator it
//! denotes is `i^phase · X^x Z^z`, where bit `j` of each mask refers to qubit `j`
//! and qubit 0 is the leftmost letter of a label. With this ordering the letter
//! `Y` is `i·XZ`, so a plain letter string carries `phase = n_Y mod 4`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest qubit count representable in a single machine word per mask.
pub const MAX_QUBITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty Pauli label")]
    EmptyLabel,
    #[error("invalid character {found:?} at position {position} of Pauli label")]
    InvalidCharacter { position: usize, found: char },
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("mask does not fit in {n} qubits")]
    MaskOverflow { n: usize },
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("weight {weight} out of range for {n} qubits")]
    WeightOutOfRange { n: usize, weight: usize },
    #[error("basis index {index} out of range for {n} qubits")]
    BasisIndex { n: usize, index: u64 },
    #[error("invalid qubit permutation")]
    Permutation,
}

/// Single-qubit letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// The six letter statistics of a Pauli string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WeightProfile {
    /// Non-identity letters.
    pub wt: usize,
    /// Letters in {X, Y}.
    pub wt_x: usize,
    /// Letters in {Z, Y}.
    pub wt_z: usize,
    pub n_x: usize,
    pub n_y: usize,
    pub n_z: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

#[inline]
fn parity(v: u64) -> u32 {
    v.count_ones() & 1
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn new(n: usize, x_mask: u64, z_mask: u64, phase_exp: u8) -> Result<Self, PauliError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::QubitCount(n));
        }
        let full = full_mask(n);
        if x_mask & !full != 0 || z_mask & !full != 0 {
            return Err(PauliError::MaskOverflow { n });
        }
        Ok(Self {
            n,
            x: x_mask,
            z: z_mask,
            phase: phase_exp & 3,
        })
    }

    /// Builds the Hermitian letter-form operator for the given masks.
    pub fn unsigned(n: usize, x_mask: u64, z_mask: u64) -> Result<Self, PauliError> {
        let phase = ((x_mask & z_mask).count_ones() & 3) as u8;
        Self::new(n, x_mask, z_mask, phase)
    }

    #[inline]
    pub(crate) fn from_raw(n: usize, x: u64, z: u64, phase: u8) -> Self {
        debug_assert!((1..=MAX_QUBITS).contains(&n));
        Self {
            n,
            x,
            z,
            phase: phase & 3,
        }
    }

    #[inline]
    pub(crate) fn unsigned_raw(n: usize, x: u64, z: u64) -> Self {
        Self::from_raw(n, x, z, ((x & z).count_ones() & 3) as u8)
    }

    pub fn identity(n: usize) -> Result<Self, PauliError> {
        Self::new(n, 0, 0, 0)
    }

    /// `X^{⊗n}`.
    pub fn all_x(n: usize) -> Result<Self, PauliError> {
        Self::new(n, full_mask(n), 0, 0)
    }

    /// `Z^{⊗n}`.
    pub fn all_z(n: usize) -> Result<Self, PauliError> {
        Self::new(n, 0, full_mask(n), 0)
    }

    /// Parses `sign? letter{n}` with sign in `+`, `-`, `i`, `-i`.
    pub fn from_label(label: &str) -> Result<Self, PauliError> {
        let (sign_exp, body, offset) = if let Some(rest) = label.strip_prefix("-i") {
            (3u8, rest, 2)
        } else if let Some(rest) = label.strip_prefix('-') {
            (2, rest, 1)
        } else if let Some(rest) = label.strip_prefix('+') {
            (0, rest, 1)
        } else if let Some(rest) = label.strip_prefix('i') {
            (1, rest, 1)
        } else {
            (0, label, 0)
        };
        if body.is_empty() {
            return Err(PauliError::EmptyLabel);
        }
        let mut x = 0u64;
        let mut z = 0u64;
        let mut n = 0usize;
        for (pos, c) in body.chars().enumerate() {
            let letter = Letter::from_char(c).ok_or(PauliError::InvalidCharacter {
                position: pos + offset,
                found: c,
            })?;
            if pos >= MAX_QUBITS {
                return Err(PauliError::QubitCount(body.chars().count()));
            }
            let (bx, bz) = letter.bits();
            x |= (bx as u64) << pos;
            z |= (bz as u64) << pos;
            n += 1;
        }
        let letter_phase = ((x & z).count_ones() & 3) as u8;
        Self::new(n, x, z, letter_phase + sign_exp)
    }

    /// Canonical label: no `+` prefix, otherwise the inverse of [`from_label`](Self::from_label).
    pub fn to_label(&self) -> String {
        let prefix = match self.sign_exp() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        let mut s = String::with_capacity(self.n + 2);
        s.push_str(prefix);
        for j in 0..self.n {
            s.push(self.letter(j).as_char());
        }
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// Phase relative to the plain letter string, i.e. `phase − n_Y (mod 4)`.
    #[inline]
    pub fn sign_exp(&self) -> u8 {
        (self.phase + 4 - ((self.x & self.z).count_ones() & 3) as u8) & 3
    }

    /// The letter-form representative with the same masks.
    #[inline]
    pub fn to_unsigned(&self) -> Self {
        Self::unsigned_raw(self.n, self.x, self.z)
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_exp() & 1 == 0
    }

    pub fn is_identity_string(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    #[inline]
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn weight_profile(&self) -> WeightProfile {
        let wt = (self.x | self.z).count_ones() as usize;
        let wt_x = self.x.count_ones() as usize;
        let wt_z = self.z.count_ones() as usize;
        let n_y = (self.x & self.z).count_ones() as usize;
        WeightProfile {
            wt,
            wt_x,
            wt_z,
            n_x: wt_x - n_y,
            n_y,
            n_z: wt_z - n_y,
        }
    }

    /// True iff the dense matrix of the letter string equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        (self.x & self.z).count_ones().is_multiple_of(2)
    }

    fn check_dims(&self, other: &Self) -> Result<(), PauliError> {
        if self.n != other.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Phase-exact product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    // (i^p X^a Z^b)(i^q X^c Z^d) = i^{p+q} (-1)^{b·c} X^{a⊕c} Z^{b⊕d}
    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let sign = 2 * parity(self.z & other.x) as u8;
        Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: (self.phase + other.phase + sign) & 3,
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_dims(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        parity((self.x & other.z) ^ (self.z & other.x)) == 0
    }

    /// `P|x⟩ = i^k |y⟩`; returns `(y, k)`.
    pub fn apply_to_basis(&self, basis: u64) -> Result<(u64, u8), PauliError> {
        if basis & !full_mask(self.n) != 0 {
            return Err(PauliError::BasisIndex {
                n: self.n,
                index: basis,
            });
        }
        Ok(self.apply_unchecked(basis))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, basis: u64) -> (u64, u8) {
        let k = (self.phase + 2 * parity(self.z & basis) as u8) & 3;
        (basis ^ self.x, k)
    }

    pub fn negated(&self) -> Self {
        Self {
            phase: (self.phase + 2) & 3,
            ..*self
        }
    }

    /// `H^{⊗n} P H^{⊗n}`: masks swap and each Y picks up a sign.
    pub fn hadamard_conjugate(&self) -> Self {
        let sign = 2 * parity(self.x & self.z) as u8;
        Self {
            n: self.n,
            x: self.z,
            z: self.x,
            phase: (self.phase + sign) & 3,
        }
    }

    /// Moves the letter on qubit `j` to qubit `perm[j]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self, PauliError> {
        if perm.len() != self.n {
            return Err(PauliError::Permutation);
        }
        let mut seen = 0u64;
        let mut x = 0u64;
        let mut z = 0u64;
        for (j, &target) in perm.iter().enumerate() {
            if target >= self.n || seen >> target & 1 == 1 {
                return Err(PauliError::Permutation);
            }
            seen |= 1 << target;
            x |= ((self.x >> j) & 1) << target;
            z |= ((self.z >> j) & 1) << target;
        }
        Ok(Self {
            n: self.n,
            x,
            z,
            phase: self.phase,
        })
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({})", self.to_label())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_label(s)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of unsigned Pauli strings of weight `i` on `n` qubits, `C(n,i)·3^i`.
pub fn weight_class_size(n: usize, weight: usize) -> u128 {
    binomial(n, weight) * 3u128.pow(weight as u32)
}

/// Letter-form Pauli strings of a fixed weight.
///
/// Supports are visited as position subsets in lexicographic order; within a
/// support the letters run through X < Y < Z with the last support position
/// varying fastest. [`WeightClass::starting_at`] jumps to any rank so disjoint
/// rank ranges can be handed to different workers.
#[derive(Debug, Clone)]
pub struct WeightClass {
    n: usize,
    support: Vec<usize>,
    digits: Vec<u8>,
    remaining: u128,
}

const LETTER_CYCLE: [(u64, u64); 3] = [(1, 0), (1, 1), (0, 1)];

impl WeightClass {
    pub fn new(n: usize, weight: usize) -> Result<Self, PauliError> {
        Self::starting_at(n, weight, 0)
    }

    pub fn starting_at(n: usize, weight: usize, rank: u128) -> Result<Self, PauliError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::QubitCount(n));
        }
        if weight > n {
            return Err(PauliError::WeightOutOfRange { n, weight });
        }
        let total = weight_class_size(n, weight);
        if rank >= total {
            return Ok(Self {
                n,
                support: Vec::new(),
                digits: Vec::new(),
                remaining: 0,
            });
        }
        let per_support = 3u128.pow(weight as u32);
        let mut subset_rank = rank / per_support;
        let mut letter_rank = rank % per_support;

        let mut support = Vec::with_capacity(weight);
        let mut next = 0usize;
        for slot in 0..weight {
            loop {
                let count = binomial(n - next - 1, weight - slot - 1);
                if subset_rank < count {
                    support.push(next);
                    next += 1;
                    break;
                }
                subset_rank -= count;
                next += 1;
            }
        }
        let mut digits = vec![0u8; weight];
        for d in digits.iter_mut().rev() {
            *d = (letter_rank % 3) as u8;
            letter_rank /= 3;
        }
        Ok(Self {
            n,
            support,
            digits,
            remaining: total - rank,
        })
    }

    pub fn remaining(&self) -> u128 {
        self.remaining
    }

    fn current(&self) -> PauliString {
        let mut x = 0u64;
        let mut z = 0u64;
        for (&pos, &d) in self.support.iter().zip(&self.digits) {
            let (bx, bz) = LETTER_CYCLE[d as usize];
            x |= bx << pos;
            z |= bz << pos;
        }
        PauliString::unsigned_raw(self.n, x, z)
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            if *d < 2 {
                *d += 1;
                return;
            }
            *d = 0;
        }
        // next combination in lexicographic order
        let k = self.support.len();
        let n = self.n;
        for slot in (0..k).rev() {
            if self.support[slot] < n - k + slot {
                self.support[slot] += 1;
                for t in slot + 1..k {
                    self.support[t] = self.support[t - 1] + 1;
                }
                return;
            }
        }
    }
}

impl Iterator for WeightClass {
    type Item = PauliString;

    fn next(&mut self) -> Option<PauliString> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current();
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match usize::try_from(self.remaining) {
            Ok(r) => (r, Some(r)),
            Err(_) => (usize::MAX, None),
        }
    }
}

pub fn enumerate_weight_class(n: usize, weight: usize) -> Result<WeightClass, PauliError> {
    WeightClass::new(n, weight)
}
