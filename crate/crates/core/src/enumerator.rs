//! Shor–Laflamme weight enumerators, distance, and the identities that hold
//! for real codes with exactly transversal `X` and `Z`.
//!
//! For each weight `i` the enumerators sum over the `3^i C(n,i)` letter-form
//! Pauli strings `E` of that weight:
//!
//! ```text
//! A_i = (1/K²) Σ_E |Σ_a ⟨a|E|a⟩|²        B_i = (1/K) Σ_E Σ_{a,b} |⟨a|E|b⟩|²
//! ```
//!
//! Letter-form strings are Hermitian, so the `B` sum equals the trace form
//! `Tr(EΠEΠ)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use rayon::prelude::*;
use thiserror::Error;

use crate::codespace::{Backend, CodeSpace, CodeSpaceError};
use crate::pauli::{binomial, weight_class_size, PauliError, PauliString, WeightClass};
use crate::stabilizer::StabilizerGroup;
use crate::Rational;

/// Default qubit cap for brute-force enumeration.
pub const DEFAULT_MAX_QUBITS: usize = 11;
/// Pauli strings per parallel work item.
const CHUNK: u128 = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumeratorError {
    #[error("brute force limited to n <= {limit} (n = {n}); pass an override to go further")]
    TooManyQubits { n: usize, limit: usize },
    #[error("arithmetic overflow in exact accumulation")]
    Overflow,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    CodeSpace(#[from] CodeSpaceError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Scalar type of enumerator entries.
pub trait Coefficient:
    Copy
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    const BACKEND: &'static str;

    fn from_i128(v: i128) -> Self;
    /// Whether two entries count as different when locating the distance.
    fn differs(&self, other: &Self) -> bool;
    fn is_zero_value(&self) -> bool;
    /// `p/q` in lowest terms (integers bare) or a decimal.
    fn render(&self) -> String;
    fn parse(s: &str) -> Option<Self>;
}

impl Coefficient for Rational {
    const BACKEND: &'static str = "exact";

    fn from_i128(v: i128) -> Self {
        Rational::from_integer(v)
    }
    fn differs(&self, other: &Self) -> bool {
        self != other
    }
    fn is_zero_value(&self) -> bool {
        *self.numer() == 0
    }
    fn render(&self) -> String {
        if *self.denom() == 1 {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn parse(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.parse().ok()?;
                let q: i128 = q.parse().ok()?;
                (q != 0).then(|| Rational::new(p, q))
            }
            None => s.parse().ok().map(Rational::from_integer),
        }
    }
}

/// Equality tolerance for floating enumerator entries, relative to `max(1, B_i)`.
pub const FLOAT_ENUMERATOR_TOLERANCE: f64 = 1e-9;

impl Coefficient for f64 {
    const BACKEND: &'static str = "float";

    fn from_i128(v: i128) -> Self {
        v as f64
    }
    fn differs(&self, other: &Self) -> bool {
        (self - other).abs() > FLOAT_ENUMERATOR_TOLERANCE * other.abs().max(1.0)
    }
    fn is_zero_value(&self) -> bool {
        self.abs() <= FLOAT_ENUMERATOR_TOLERANCE
    }
    fn render(&self) -> String {
        // shortest representation that parses back to the same value
        format!("{self:?}")
    }
    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumeratorPair<V> {
    pub n: usize,
    pub a: Vec<V>,
    pub b: Vec<V>,
}

/// Smallest weight with `A_i ≠ B_i`, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    At(usize),
    NoDiscrepancy,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::At(d) => write!(f, "{d}"),
            Distance::NoDiscrepancy => f.write_str("no discrepancy"),
        }
    }
}

impl<V: Coefficient> EnumeratorPair<V> {
    pub fn distance(&self) -> Distance {
        self.a
            .iter()
            .zip(&self.b)
            .position(|(a, b)| a.differs(b))
            .map_or(Distance::NoDiscrepancy, Distance::At)
    }

    /// One line per weight: `i A_i B_i`.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for (i, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            out.push_str(&format!("{i} {} {}\n", a.render(), b.render()));
        }
        out
    }

    /// Two rows, `A = (…)` and `B = (…)`.
    pub fn render_table(&self) -> String {
        let row = |v: &[V]| v.iter().map(|c| c.render()).collect::<Vec<_>>().join(",");
        format!("A = ({})\nB = ({})\n", row(&self.a), row(&self.b))
    }

    /// Inverse of [`EnumeratorPair::render_lines`].
    pub fn parse_lines(text: &str) -> Result<Self, EnumeratorError> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| EnumeratorError::Parse {
                line: ln,
                message: message.to_string(),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [i, ai, bi] = parts[..] else {
                return Err(err("expected `i A_i B_i`"));
            };
            if i.parse::<usize>().ok() != Some(a.len()) {
                return Err(err("weights must run 0, 1, 2, ..."));
            }
            a.push(V::parse(ai).ok_or_else(|| err("bad A value"))?);
            b.push(V::parse(bi).ok_or_else(|| err("bad B value"))?);
        }
        if a.is_empty() {
            return Err(EnumeratorError::Parse {
                line: 0,
                message: "no rows".into(),
            });
        }
        Ok(Self { n: a.len() - 1, a, b })
    }
}

/// Options for [`brute_force_enumerators`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Largest `n` accepted.
    pub max_qubits: usize,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
            threads: None,
        }
    }
}

struct Partial<S> {
    a: S,
    b: S,
}

fn accumulate_range<B: Backend>(
    space: &CodeSpace<B>,
    weights: &[B::Sum],
    weight: usize,
    start: u128,
    len: u128,
) -> Result<Partial<B::Sum>, CodeSpaceError> {
    let k = space.k_dim();
    let mut elems = vec![B::acc_zero(); k * k];
    let mut pa = B::sum_zero();
    let mut pb = B::sum_zero();
    let class = WeightClass::starting_at(space.n(), weight, start)?;
    for e in class.take(len as usize) {
        space.all_elements(&e, &mut elems);
        let mut trace = B::acc_zero();
        for a in 0..k {
            trace = B::acc_add(trace, B::acc_scale(elems[a * k + a], weights[a])?);
        }
        pa = B::sum_add(pa, B::norm_sqr(trace)?)?;
        for a in 0..k {
            for b in 0..k {
                let g = elems[a * k + b];
                if g == B::acc_zero() {
                    continue;
                }
                let w = B::sum_mul(weights[a], weights[b])?;
                pb = B::sum_add(pb, B::sum_mul(B::norm_sqr(g)?, w)?)?;
            }
        }
    }
    Ok(Partial { a: pa, b: pb })
}

fn brute_force_inner<B: Backend>(space: &CodeSpace<B>) -> Result<EnumeratorPair<B::Value>, EnumeratorError> {
    let n = space.n();
    let k = space.k_dim();
    let (weights, l) = B::codeword_weights(space)?;
    let ksum = B::sum_from_usize(k);
    let l2 = B::sum_mul(l, l)?;
    let a_den = B::sum_mul(B::sum_mul(ksum, ksum)?, l2)?;
    let b_den = B::sum_mul(ksum, l2)?;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for weight in 0..=n {
        let size = weight_class_size(n, weight);
        let chunks = size.div_ceil(CHUNK);
        let partials: Vec<Result<Partial<B::Sum>, CodeSpaceError>> = (0..chunks as u64)
            .into_par_iter()
            .map(|c| {
                let start = c as u128 * CHUNK;
                accumulate_range(space, &weights, weight, start, CHUNK.min(size - start))
            })
            .collect();
        // fixed merge order keeps floating results independent of scheduling
        let mut sa = B::sum_zero();
        let mut sb = B::sum_zero();
        for p in partials {
            let p = p?;
            sa = B::sum_add(sa, p.a)?;
            sb = B::sum_add(sb, p.b)?;
        }
        a.push(B::ratio(sa, a_den));
        b.push(B::ratio(sb, b_den));
    }
    Ok(EnumeratorPair { n, a, b })
}

/// Enumerators by definition, summing over every Pauli string.
///
/// Cost is `4^n · K² · support`, so `n` is capped by `options.max_qubits`.
pub fn brute_force_enumerators<B: Backend>(
    space: &CodeSpace<B>,
    options: &BruteForceOptions,
) -> Result<EnumeratorPair<B::Value>, EnumeratorError> {
    if space.n() > options.max_qubits {
        return Err(EnumeratorError::TooManyQubits {
            n: space.n(),
            limit: options.max_qubits,
        });
    }
    let run = || {
        brute_force_inner(space).map_err(|e| match e {
            EnumeratorError::CodeSpace(CodeSpaceError::Overflow) => EnumeratorError::Overflow,
            other => other,
        })
    };
    match options.threads {
        None => run(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| EnumeratorError::ThreadPool(e.to_string()))?
            .install(run),
    }
}

/// Enumerators of a stabilizer code from weight counts of the group (`A`)
/// and its centralizer (`B`).
pub fn stabilizer_enumerators(group: &StabilizerGroup) -> EnumeratorPair<Rational> {
    let to_rational = |h: Vec<u64>| h.into_iter().map(|c| Rational::from_integer(c as i128)).collect();
    EnumeratorPair {
        n: group.n(),
        a: to_rational(group.group_weight_histogram()),
        b: to_rational(group.centralizer_weight_histogram()),
    }
}

fn require_k2<B: Backend>(space: &CodeSpace<B>) -> Result<(), EnumeratorError> {
    if space.k_dim() != 2 {
        return Err(EnumeratorError::Precondition(format!(
            "needs K = 2 codewords, found {}",
            space.k_dim()
        )));
    }
    Ok(())
}

fn require_x<B: Backend>(space: &CodeSpace<B>) -> Result<(), EnumeratorError> {
    if !space.x_transversal_exact() {
        return Err(EnumeratorError::Precondition(
            "X^n does not map codeword 0 to codeword 1 exactly".into(),
        ));
    }
    Ok(())
}

fn require_z<B: Backend>(space: &CodeSpace<B>) -> Result<(), EnumeratorError> {
    if !space.z_transversal_exact() {
        return Err(EnumeratorError::Precondition(
            "Z^n does not act as diag(1,-1) on the codewords".into(),
        ));
    }
    Ok(())
}

/// `Σ_E |⟨a|E|b⟩|²` per weight over strings selected by `keep`.
fn selected_sums<B: Backend>(
    space: &CodeSpace<B>,
    a: usize,
    b: usize,
    keep: impl Fn(&PauliString) -> bool + Sync,
) -> Result<Vec<B::Value>, EnumeratorError> {
    let n = space.n();
    let ca = &space.codewords()[a];
    let cb = &space.codewords()[b];
    let den = B::sum_mul(
        B::sum_from_usize(ca.scale() as usize),
        B::sum_from_usize(cb.scale() as usize),
    )?;
    let mut out = Vec::with_capacity(n + 1);
    for weight in 0..=n {
        let mut s = B::sum_zero();
        for e in WeightClass::new(n, weight)? {
            if !keep(&e) {
                continue;
            }
            let m = space.matrix_element(a, &e, b)?;
            s = B::sum_add(s, B::norm_sqr(m.value)?)?;
        }
        out.push(B::ratio(s, den));
    }
    Ok(out)
}

/// `Σ |⟨0|E|0⟩|²` over strings with `wt_X` and `wt_Z` even.
///
/// Needs `K = 2` with `X^⊗n` and `Z^⊗n` exactly transversal on the given
/// labeling; under those hypotheses the result equals `A`.
pub fn restricted_a<B: Backend>(space: &CodeSpace<B>) -> Result<Vec<B::Value>, EnumeratorError> {
    require_k2(space)?;
    require_x(space)?;
    require_z(space)?;
    selected_sums(space, 0, 0, |e| {
        let w = e.weight_profile();
        w.wt_x % 2 == 0 && w.wt_z % 2 == 0
    })
}

/// The two correction terms with `B = A + C + D`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdDecomposition<V> {
    /// `Σ |⟨0|E|0⟩|²` over `wt_X` even, `wt_Z` odd.
    pub c: Vec<V>,
    /// `Σ |⟨0|E|1⟩|²` over `wt_X` odd.
    pub d: Vec<V>,
}

/// Needs `K = 2`, `X^⊗n` exactly transversal and real codewords.
pub fn cd_decomposition<B: Backend>(space: &CodeSpace<B>) -> Result<CdDecomposition<B::Value>, EnumeratorError> {
    require_k2(space)?;
    require_x(space)?;
    if !space.is_real() {
        return Err(EnumeratorError::Precondition("codewords are not real".into()));
    }
    let c = selected_sums(space, 0, 0, |e| {
        let w = e.weight_profile();
        w.wt_x % 2 == 0 && w.wt_z % 2 == 1
    })?;
    let d = selected_sums(space, 0, 1, |e| e.weight_profile().wt_x % 2 == 1)?;
    Ok(CdDecomposition { c, d })
}

/// Hypotheses under which odd `A_i` vanish and even `A_i = B_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Hypotheses {
    pub real: bool,
    pub x_exactly_transversal: bool,
    pub z_exactly_transversal: bool,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.real && self.x_exactly_transversal && self.z_exactly_transversal
    }

    /// Reads the hypotheses off a two-codeword space as labeled.
    pub fn from_space<B: Backend>(space: &CodeSpace<B>) -> Self {
        Self {
            real: space.is_real(),
            x_exactly_transversal: space.x_transversal_exact(),
            z_exactly_transversal: space.z_transversal_exact(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremChecks {
    /// `(i, A_i == 0)` for odd `i`.
    pub odd_a_vanishes: Vec<(usize, bool)>,
    /// `(i, A_i == B_i)` for even `i`.
    pub even_a_equals_b: Vec<(usize, bool)>,
    pub distance: Distance,
    pub distance_odd: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremReport {
    NotApplicable { reason: String },
    Checked(TheoremChecks),
}

impl TheoremReport {
    /// False only for a checked report with a failing entry.
    pub fn ok(&self) -> bool {
        match self {
            TheoremReport::NotApplicable { .. } => true,
            TheoremReport::Checked(c) => c.passed,
        }
    }
}

pub fn theorem_check<V: Coefficient>(pair: &EnumeratorPair<V>, hypotheses: &Hypotheses) -> TheoremReport {
    if !hypotheses.hold() {
        let mut missing = Vec::new();
        if !hypotheses.real {
            missing.push("real");
        }
        if !hypotheses.x_exactly_transversal {
            missing.push("X exactly transversal");
        }
        if !hypotheses.z_exactly_transversal {
            missing.push("Z exactly transversal");
        }
        return TheoremReport::NotApplicable {
            reason: format!("hypotheses not met: {}", missing.join(", ")),
        };
    }
    let mut odd_a_vanishes = Vec::new();
    let mut even_a_equals_b = Vec::new();
    for (i, (a, b)) in pair.a.iter().zip(&pair.b).enumerate() {
        if i % 2 == 1 {
            odd_a_vanishes.push((i, a.is_zero_value()));
        } else {
            even_a_equals_b.push((i, !a.differs(b)));
        }
    }
    let distance = pair.distance();
    let distance_odd = matches!(distance, Distance::At(d) if d % 2 == 1);
    let passed = distance_odd && odd_a_vanishes.iter().all(|&(_, ok)| ok) && even_a_equals_b.iter().all(|&(_, ok)| ok);
    TheoremReport::Checked(TheoremChecks {
        odd_a_vanishes,
        even_a_equals_b,
        distance,
        distance_odd,
        passed,
    })
}

/// Quaternary Krawtchouk polynomial `K_j(i) = Σ_s (-1)^s 3^{j-s} C(i,s) C(n-i,j-s)`.
pub fn krawtchouk(n: usize, j: usize, i: usize) -> i128 {
    (0..=j)
        .map(|s| {
            let term = 3i128.pow((j - s) as u32) * binomial(i, s) as i128 * binomial(n - i, j - s) as i128;
            if s % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `B_j = (K / 2^n) Σ_i A_i K_j(i)`.
pub fn macwilliams_transform<V: Coefficient>(a: &[V], n: usize, k_dim: usize) -> Vec<V> {
    let norm = V::from_i128(k_dim as i128) / V::from_i128(1i128 << n);
    (0..=n)
        .map(|j| {
            let s = a.iter().enumerate().fold(V::from_i128(0), |acc, (i, &ai)| {
                acc + ai * V::from_i128(krawtchouk(n, j, i))
            });
            s * norm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codespace::{AmplitudeTable, Exact, Float};
    use crate::stabilizer::{from_labels, LogicalBasis};
    use num_complex::Complex;

    fn r(v: &[i128]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    fn trivial() -> CodeSpace<Exact> {
        CodeSpace::<Exact>::from_vectors(1, vec![vec![(0, Complex::new(1, 0))], vec![(1, Complex::new(1, 0))]]).unwrap()
    }

    #[test]
    fn trivial_code() {
        let e = brute_force_enumerators(&trivial(), &BruteForceOptions::default()).unwrap();
        assert_eq!((e.a.clone(), e.b.clone()), (r(&[1, 0]), r(&[1, 3])));
        assert_eq!(e.distance(), Distance::At(1));
        assert_eq!(macwilliams_transform(&e.a, 1, 2), e.b);
    }

    #[test]
    fn five_qubit_both_paths() {
        let g = from_labels(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap();
        let fast = stabilizer_enumerators(&g);
        assert_eq!(fast.a, r(&[1, 0, 0, 0, 15, 0]));
        assert_eq!(fast.b, r(&[1, 0, 0, 30, 15, 18]));
        let space = g.synthesize_codewords(LogicalBasis::Canonical).unwrap();
        let slow = brute_force_enumerators(&space, &BruteForceOptions::default()).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(slow.distance(), Distance::At(3));
        assert_eq!(macwilliams_transform(&fast.a, 5, 2), fast.b);
        let one = brute_force_enumerators(
            &space,
            &BruteForceOptions {
                threads: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, slow);
    }

    #[test]
    fn float_backend_matches() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let space = CodeSpace::<Float>::from_amplitude_table(AmplitudeTable {
            n: 2,
            codewords: vec![vec![(0, Complex::new(h, 0.0)), (3, Complex::new(h, 0.0))]],
            scales: vec![1],
        })
        .unwrap();
        let e = brute_force_enumerators(&space, &BruteForceOptions::default()).unwrap();
        let bell = stabilizer_enumerators(&from_labels(&["XX", "ZZ"]).unwrap());
        for (x, y) in e.a.iter().chain(&e.b).zip(bell.a.iter().chain(&bell.b)) {
            assert!(!x.differs(&(*y.numer() as f64)));
        }
    }

    #[test]
    fn cap_enforced() {
        let opts = BruteForceOptions {
            max_qubits: 0,
            threads: None,
        };
        assert_eq!(
            brute_force_enumerators(&trivial(), &opts),
            Err(EnumeratorError::TooManyQubits { n: 1, limit: 0 })
        );
    }

    #[test]
    fn lines_round_trip() {
        let pair = EnumeratorPair {
            n: 2,
            a: vec![
                Rational::from_integer(1),
                Rational::new(110, 3),
                Rational::from_integer(0),
            ],
            b: vec![
                Rational::from_integer(1),
                Rational::new(55, 3),
                Rational::from_integer(7),
            ],
        };
        let text = pair.render_lines();
        assert_eq!(text, "0 1 1\n1 110/3 55/3\n2 0 7\n");
        assert_eq!(EnumeratorPair::<Rational>::parse_lines(&text).unwrap(), pair);
        assert!(EnumeratorPair::<Rational>::parse_lines("0 1 1\n2 0 0\n").is_err());
        let f = EnumeratorPair {
            n: 0,
            a: vec![0.1f64],
            b: vec![1.0 / 3.0],
        };
        assert_eq!(EnumeratorPair::<f64>::parse_lines(&f.render_lines()).unwrap(), f);
    }

    #[test]
    fn not_applicable_without_hypotheses() {
        let e = stabilizer_enumerators(&from_labels(&["XX", "ZZ"]).unwrap());
        let report = theorem_check(&e, &Hypotheses::default());
        assert!(matches!(report, TheoremReport::NotApplicable { .. }));
        assert!(report.ok());
    }

    #[test]
    fn preconditions_refused() {
        assert_eq!(restricted_a(&trivial()).unwrap(), r(&[1, 0]));
        // relabeled: Z^n now acts as diag(-1, 1)
        let flipped =
            CodeSpace::<Exact>::from_vectors(1, vec![vec![(1, Complex::new(1, 0))], vec![(0, Complex::new(1, 0))]])
                .unwrap();
        assert!(matches!(restricted_a(&flipped), Err(EnumeratorError::Precondition(_))));
        let bell = from_labels(&["XX", "ZZ"])
            .unwrap()
            .synthesize_codewords(LogicalBasis::Canonical)
            .unwrap();
        assert!(matches!(cd_decomposition(&bell), Err(EnumeratorError::Precondition(_))));
    }
}
