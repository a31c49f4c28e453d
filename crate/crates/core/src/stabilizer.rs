//! Stabilizer groups: validation, enumeration, codewords and the realness and
//! transversality predicates.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use thiserror::Error;

use crate::codespace::{CodeSpace, CodeSpaceError, Exact};
use crate::gf2::{self, Insert, PauliBasis};
use crate::pauli::{full_mask, PauliError, PauliString};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StabilizerError {
    #[error("no generators given")]
    Empty,
    #[error("generator {index} acts on {found} qubits, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("{count} generators on {n} qubits; at most {n} allowed")]
    TooManyGenerators { count: usize, n: usize },
    #[error("generator {index} ({label}) is not Hermitian")]
    NonHermitian { index: usize, label: String },
    #[error("generators {first} ({first_label}) and {second} ({second_label}) anticommute")]
    NonCommuting {
        first: usize,
        second: usize,
        first_label: String,
        second_label: String,
    },
    #[error("generator {index} ({label}) is a product of earlier generators")]
    Dependent { index: usize, label: String },
    #[error("generator {index} ({label}) puts -I in the group")]
    MinusIdentity { index: usize, label: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    CodeSpace(#[from] CodeSpaceError),
}

/// A validated abelian group of Hermitian Pauli operators not containing `-I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliString>,
}

/// How the logical operators used to label codewords are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalBasis {
    /// The canonical pair from [`StabilizerGroup::canonical_logicals`].
    Canonical,
    /// `Z̄ = Z^⊗n`, `X̄ = X^⊗n`; needs `k = 1` with both in the centralizer and outside the group.
    Transversal,
}

/// A logical Pauli (`Z̄_j`, `X̄_j`) pair for each encoded qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalPair {
    pub z: PauliString,
    pub x: PauliString,
}

/// Logical action of a transversal Pauli relative to the canonical logical pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalLabel {
    I,
    X,
    Y,
    Z,
    /// Not in the centralizer: the operator leaves the codespace.
    None,
}

impl fmt::Display for LogicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicalLabel::I => "I",
            LogicalLabel::X => "X",
            LogicalLabel::Y => "Y",
            LogicalLabel::Z => "Z",
            LogicalLabel::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ExactlyTransversal,
    /// `X^⊗n` acts as logical Z and `Z^⊗n` as logical X.
    Swapped,
    NotTransversal,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExactlyTransversal => "exactly_transversal",
            Verdict::Swapped => "swapped",
            Verdict::NotTransversal => "not_transversal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalityReport {
    pub x_in_centralizer: bool,
    pub z_in_centralizer: bool,
    pub x_in_group: bool,
    pub z_in_group: bool,
    pub n_odd: bool,
    pub canonical: LogicalPair,
    /// Logical operator implemented by `X^⊗n`.
    pub x_implements: LogicalLabel,
    /// Logical operator implemented by `Z^⊗n`.
    pub z_implements: LogicalLabel,
    pub verdict: Verdict,
}

impl TransversalityReport {
    /// True when `X^⊗n` and `Z^⊗n` are anticommuting logical operators, so some
    /// labeling of the code (`LogicalBasis::Transversal`) makes them exactly
    /// logical X and logical Z. The verdict only compares against the
    /// canonical labeling.
    pub fn transversal_pair(&self) -> bool {
        self.x_in_centralizer && self.z_in_centralizer && !self.x_in_group && !self.z_in_group && self.n_odd
    }
}

/// Iterates `start..end` of the Gray-code walk over a basis.
///
/// Step `t` is the product of the basis elements selected by the bits of
/// `t ^ (t >> 1)`; consecutive steps differ by one multiplication.
#[derive(Debug, Clone)]
pub struct GrayProducts {
    basis: Vec<PauliString>,
    current: PauliString,
    next: u64,
    end: u64,
}

impl GrayProducts {
    fn new(n: usize, basis: Vec<PauliString>, start: u64, end: u64) -> Self {
        let total = 1u64 << basis.len();
        let end = end.min(total);
        let gray = start ^ (start >> 1);
        let mut current = PauliString::from_raw(n, 0, 0, 0);
        for (j, b) in basis.iter().enumerate() {
            if gray >> j & 1 == 1 {
                current = current.mul_unchecked(b);
            }
        }
        Self {
            basis,
            current,
            next: start,
            end,
        }
    }
}

impl Iterator for GrayProducts {
    type Item = PauliString;

    fn next(&mut self) -> Option<PauliString> {
        if self.next >= self.end {
            return None;
        }
        let out = self.current;
        self.next += 1;
        if self.next < self.end {
            let flip = self.next.trailing_zeros() as usize;
            self.current = self.current.mul_unchecked(&self.basis[flip]);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.end - self.next) as usize;
        (r, Some(r))
    }
}

/// Histogram of `weight(product)` over all subset products of `basis` masks.
fn weight_histogram(n: usize, basis: &[(u64, u64)]) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let (mut x, mut z) = (0u64, 0u64);
    hist[0] += 1;
    for t in 1u64..1u64 << basis.len() {
        let (bx, bz) = basis[t.trailing_zeros() as usize];
        x ^= bx;
        z ^= bz;
        hist[(x | z).count_ones() as usize] += 1;
    }
    hist
}

/// Comparison key for the canonical logical search: even `n_Y` first, then
/// lower weight, then the label read from qubit 0 with `I < Y < Z < X`.
fn logical_key(p: &PauliString) -> (u32, u32, u128) {
    let (x, z) = (p.x_mask(), p.z_mask());
    let mut code = 0u128;
    for j in 0..p.n() {
        let rank = match (x >> j & 1, z >> j & 1) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            _ => 3,
        };
        code = code << 2 | rank;
    }
    ((x & z).count_ones() & 1, (x | z).count_ones(), code)
}

fn min_by_key<I: Iterator<Item = PauliString>>(it: I) -> Option<PauliString> {
    it.min_by(|a, b| logical_key(a).cmp(&logical_key(b)).then(Ordering::Equal))
}

pub fn validate(generators: &[PauliString]) -> Result<StabilizerGroup, StabilizerError> {
    let first = generators.first().ok_or(StabilizerError::Empty)?;
    let n = first.n();
    for (index, g) in generators.iter().enumerate() {
        if g.n() != n {
            return Err(StabilizerError::DimensionMismatch {
                index,
                expected: n,
                found: g.n(),
            });
        }
    }
    if generators.len() > n {
        return Err(StabilizerError::TooManyGenerators {
            count: generators.len(),
            n,
        });
    }
    for (index, g) in generators.iter().enumerate() {
        if !g.is_hermitian() {
            return Err(StabilizerError::NonHermitian {
                index,
                label: g.to_label(),
            });
        }
    }
    for (a, ga) in generators.iter().enumerate() {
        for (b, gb) in generators.iter().enumerate().skip(a + 1) {
            if !ga.commutes_unchecked(gb) {
                return Err(StabilizerError::NonCommuting {
                    first: a,
                    second: b,
                    first_label: ga.to_label(),
                    second_label: gb.to_label(),
                });
            }
        }
    }
    let mut basis = PauliBasis::new(n);
    for (index, g) in generators.iter().enumerate() {
        match basis.insert(g) {
            Insert::Added => {}
            Insert::Dependent(0) => {
                return Err(StabilizerError::Dependent {
                    index,
                    label: g.to_label(),
                })
            }
            Insert::Dependent(_) => {
                return Err(StabilizerError::MinusIdentity {
                    index,
                    label: g.to_label(),
                })
            }
        }
    }
    Ok(StabilizerGroup {
        n,
        generators: generators.to_vec(),
    })
}

/// Parses labels and validates them as a generator set.
pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<StabilizerGroup, StabilizerError> {
    let gens = labels
        .iter()
        .map(|l| PauliString::from_label(l.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    validate(&gens)
}

impl StabilizerGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of logical qubits.
    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    fn basis(&self) -> PauliBasis {
        let mut b = PauliBasis::new(self.n);
        for g in &self.generators {
            b.insert(g);
        }
        b
    }

    /// Exact signed membership: `Some(true)` if `p ∈ S`, `Some(false)` if
    /// `-p ∈ S`, `None` if neither.
    pub fn membership(&self, p: &PauliString) -> Result<Option<bool>, StabilizerError> {
        if p.n() != self.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: p.n(),
            }
            .into());
        }
        let r = self.basis().reduce(p);
        Ok(match (r.is_identity_string(), r.phase_exp()) {
            (true, 0) => Some(true),
            (true, 2) => Some(false),
            _ => None,
        })
    }

    pub fn contains(&self, p: &PauliString) -> Result<bool, StabilizerError> {
        Ok(self.membership(p)? == Some(true))
    }

    /// True iff `p` commutes with every generator.
    pub fn in_centralizer(&self, p: &PauliString) -> bool {
        self.generators.iter().all(|g| g.commutes_unchecked(p))
    }

    pub fn group_size(&self) -> u64 {
        1 << self.generators.len()
    }

    pub fn centralizer_size(&self) -> u64 {
        1 << (self.n + self.k())
    }

    /// All `2^{n-k}` group elements with exact signs.
    pub fn enumerate_group(&self) -> GrayProducts {
        self.group_range(0, self.group_size())
    }

    /// Elements `start..end` of the group walk; ranges partition the group.
    pub fn group_range(&self, start: u64, end: u64) -> GrayProducts {
        GrayProducts::new(self.n, self.generators.clone(), start, end)
    }

    /// Letter-form basis of the centralizer (dimension `n + k`).
    pub fn centralizer_basis(&self) -> Vec<PauliString> {
        let rows: Vec<u128> = self
            .generators
            .iter()
            .map(|g| g.z_mask() as u128 | (g.x_mask() as u128) << 64)
            .collect();
        let full = full_mask(self.n) as u128;
        gf2::null_space(&rows, full | full << 64)
            .into_iter()
            .map(|v| {
                let (x, z) = gf2::unpack(v);
                PauliString::unsigned_raw(self.n, x, z)
            })
            .collect()
    }

    /// All `2^{n+k}` centralizer elements in letter form.
    pub fn enumerate_centralizer(&self) -> impl Iterator<Item = PauliString> {
        let n = self.n;
        let basis = self.centralizer_basis();
        let size = 1u64 << basis.len();
        GrayProducts::new(n, basis, 0, size).map(|p| p.to_unsigned())
    }

    /// Weight histogram of the group, signs ignored.
    pub fn group_weight_histogram(&self) -> Vec<u64> {
        let masks: Vec<_> = self.generators.iter().map(|g| (g.x_mask(), g.z_mask())).collect();
        weight_histogram(self.n, &masks)
    }

    pub fn centralizer_weight_histogram(&self) -> Vec<u64> {
        let masks: Vec<_> = self
            .centralizer_basis()
            .iter()
            .map(|g| (g.x_mask(), g.z_mask()))
            .collect();
        weight_histogram(self.n, &masks)
    }

    /// True iff every generator has an even number of `Y` letters.
    pub fn is_real_code(&self) -> bool {
        self.generators.iter().all(|g| g.weight_profile().n_y % 2 == 0)
    }

    /// `n` odd and every generator has `n_X`, `n_Y`, `n_Z` all even.
    pub fn all_even_check(&self) -> bool {
        self.n % 2 == 1
            && self.generators.iter().all(|g| {
                let w = g.weight_profile();
                w.n_x % 2 == 0 && w.n_y % 2 == 0 && w.n_z % 2 == 0
            })
    }

    /// Conjugates every generator by `H^⊗n`.
    pub fn hadamard_conjugate(&self) -> Result<Self, StabilizerError> {
        let gens: Vec<_> = self.generators.iter().map(|g| g.hadamard_conjugate()).collect();
        validate(&gens)
    }

    /// Moves qubit `j` to `perm[j]` in every generator.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self, StabilizerError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.permute_qubits(perm))
            .collect::<Result<Vec<_>, _>>()?;
        validate(&gens)
    }

    /// Canonical logical operators, one pair per encoded qubit.
    ///
    /// For each `j` in turn, `Z̄_j` is the minimal centralizer element that
    /// commutes with all earlier pairs and lies outside the span of the group
    /// and the earlier logicals; `X̄_j` is the minimal centralizer element that
    /// anticommutes with `Z̄_j` and commutes with the earlier pairs. Minimal
    /// means: even `n_Y` before odd, then lower weight, then lexicographic
    /// label from qubit 0 with `I < Y < Z < X`. Returned operators are in
    /// letter form.
    pub fn canonical_logicals(&self) -> Vec<LogicalPair> {
        let centralizer: Vec<PauliString> = self.enumerate_centralizer().collect();
        let mut span = self.basis();
        let mut pairs: Vec<LogicalPair> = Vec::with_capacity(self.k());
        for _ in 0..self.k() {
            let commutes_with_pairs = |p: &PauliString, pairs: &[LogicalPair]| {
                pairs
                    .iter()
                    .all(|q| q.z.commutes_unchecked(p) && q.x.commutes_unchecked(p))
            };
            let z = min_by_key(
                centralizer
                    .iter()
                    .copied()
                    .filter(|p| commutes_with_pairs(p, &pairs) && !span.contains_vec(gf2::pack(p))),
            )
            .expect("centralizer larger than group span");
            let x = min_by_key(
                centralizer
                    .iter()
                    .copied()
                    .filter(|p| !p.commutes_unchecked(&z) && commutes_with_pairs(p, &pairs)),
            )
            .expect("symplectic partner exists");
            span.insert(&z);
            span.insert(&x);
            pairs.push(LogicalPair { z, x });
        }
        pairs
    }

    fn logical_pairs(&self, basis: LogicalBasis) -> Result<Vec<LogicalPair>, StabilizerError> {
        match basis {
            LogicalBasis::Canonical => Ok(self.canonical_logicals()),
            LogicalBasis::Transversal => {
                if self.k() != 1 {
                    return Err(StabilizerError::Unsupported(format!(
                        "transversal logical basis needs k = 1, got k = {}",
                        self.k()
                    )));
                }
                let z = PauliString::all_z(self.n)?;
                let x = PauliString::all_x(self.n)?;
                let usable = self.in_centralizer(&z)
                    && self.in_centralizer(&x)
                    && !z.commutes_unchecked(&x)
                    && self.membership(&z)?.is_none()
                    && self.membership(&x)?.is_none();
                if !usable {
                    return Err(StabilizerError::Unsupported(
                        "X^n and Z^n do not form a logical pair".into(),
                    ));
                }
                Ok(vec![LogicalPair { z, x }])
            }
        }
    }

    /// Exact codewords `|c⟩`, `c ∈ 0..2^k`, with bit `j` of `c` the `Z̄_j` eigenvalue label.
    ///
    /// `|0…0⟩` is the group-sum projector applied to a basis state fixed by
    /// every diagonal element of `⟨S, Z̄_1..Z̄_k⟩`; the others are `∏ X̄_j^{c_j} |0…0⟩`.
    pub fn synthesize_codewords(&self, basis: LogicalBasis) -> Result<CodeSpace<Exact>, StabilizerError> {
        let n = self.n;
        let k = self.k();
        if k > 20 {
            return Err(StabilizerError::Unsupported(format!("{} codewords", 1u128 << k)));
        }
        let pairs = self.logical_pairs(basis)?;

        // Echelon form on the X part: rows with a pivot X bit, the rest are diagonal.
        let mut rows: Vec<PauliString> = self.generators.clone();
        rows.extend(pairs.iter().map(|p| p.z));
        let mut off_diagonal: Vec<PauliString> = Vec::new();
        for bit in 0..n {
            let Some(pos) = rows.iter().position(|r| r.x_mask() >> bit & 1 == 1) else {
                continue;
            };
            let pivot = rows.swap_remove(pos);
            for r in rows.iter_mut() {
                if r.x_mask() >> bit & 1 == 1 {
                    *r = r.mul_unchecked(&pivot);
                }
            }
            for r in off_diagonal.iter_mut() {
                if r.x_mask() >> bit & 1 == 1 {
                    *r = r.mul_unchecked(&pivot);
                }
            }
            off_diagonal.push(pivot);
        }
        // d|s⟩ = i^{phase} (-1)^{z·s} |s⟩ must be +|s⟩.
        let equations: Vec<(u64, bool)> = rows.iter().map(|d| (d.z_mask(), d.phase_exp() == 2)).collect();
        let seed = gf2::solve(&equations, n).expect("stabilizer group without -I has a common eigenstate");

        let mut zero: Vec<(u64, Complex<i64>)> = Vec::with_capacity(1 << off_diagonal.len());
        for h in GrayProducts::new(n, off_diagonal.clone(), 0, 1 << off_diagonal.len()) {
            let (y, q) = h.apply_unchecked(seed);
            zero.push((y, quarter_unit(q)));
        }
        let mut vectors = Vec::with_capacity(1 << k);
        vectors.push(zero);
        for (j, pair) in pairs.iter().enumerate() {
            let width = 1 << j;
            for c in 0..width {
                let image: Vec<_> = vectors[c]
                    .iter()
                    .map(|&(x, a)| {
                        let (y, q) = pair.x.apply_unchecked(x);
                        (y, a * quarter_unit(q))
                    })
                    .collect();
                vectors.push(image);
            }
        }
        Ok(CodeSpace::<Exact>::from_vectors(n, vectors)?)
    }

    /// Which logical Paulis `X^⊗n` and `Z^⊗n` implement, and the resulting verdict. Needs `k = 1`.
    pub fn transversality_report(&self) -> Result<TransversalityReport, StabilizerError> {
        if self.k() != 1 {
            return Err(StabilizerError::Unsupported(format!(
                "transversality report needs k = 1, got k = {}",
                self.k()
            )));
        }
        let n = self.n;
        let all_x = PauliString::all_x(n)?;
        let all_z = PauliString::all_z(n)?;
        let canonical = self.canonical_logicals().remove(0);
        let x_in_centralizer = self.in_centralizer(&all_x);
        let z_in_centralizer = self.in_centralizer(&all_z);
        let x_in_group = self.membership(&all_x)?.is_some();
        let z_in_group = self.membership(&all_z)?.is_some();

        let label = |p: &PauliString, central: bool, in_group: bool| {
            if !central {
                LogicalLabel::None
            } else if in_group {
                LogicalLabel::I
            } else {
                match (!p.commutes_unchecked(&canonical.z), !p.commutes_unchecked(&canonical.x)) {
                    (true, false) => LogicalLabel::X,
                    (false, true) => LogicalLabel::Z,
                    (true, true) => LogicalLabel::Y,
                    (false, false) => unreachable!("centralizer element outside the group acts nontrivially"),
                }
            }
        };
        let x_implements = label(&all_x, x_in_centralizer, x_in_group);
        let z_implements = label(&all_z, z_in_centralizer, z_in_group);
        let n_odd = n % 2 == 1;
        let verdict = match (x_implements, z_implements) {
            (LogicalLabel::X, LogicalLabel::Z) if n_odd => Verdict::ExactlyTransversal,
            (LogicalLabel::Z, LogicalLabel::X) if n_odd => Verdict::Swapped,
            _ => Verdict::NotTransversal,
        };
        Ok(TransversalityReport {
            x_in_centralizer,
            z_in_centralizer,
            x_in_group,
            z_in_group,
            n_odd,
            canonical,
            x_implements,
            z_implements,
            verdict,
        })
    }
}

fn quarter_unit(q: u8) -> Complex<i64> {
    match q & 3 {
        0 => Complex::new(1, 0),
        1 => Complex::new(0, 1),
        2 => Complex::new(-1, 0),
        _ => Complex::new(0, -1),
    }
}

impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
