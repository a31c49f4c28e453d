//! Codeword sets over the computational basis.
//!
//! Two numeric backends share one contract:
//!
//! * [`Exact`]: each codeword is an integer Gaussian vector `v` with an implicit
//!   factor `1/√N`, where `N = Σ|v_x|²`. Inner products reduce to Gaussian
//!   integers over `√(N_a N_b)`, and squared magnitudes to rationals.
//! * [`Float`]: plain `Complex<f64>` amplitudes, compared with tolerances.
//!
//! Storage is sparse (basis index → amplitude) with a dense lookup table for
//! small `n`, since stabilizer codewords touch only a fraction of the basis.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::pauli::{full_mask, PauliError, PauliString, MAX_QUBITS};
use crate::Rational;

/// Gram-matrix tolerance for the floating backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;
/// Imaginary parts at or below this count as real on the floating backend.
pub const REALNESS_TOLERANCE: f64 = 1e-12;
/// Upper bound on an exact codeword scale; keeps inner sums inside `i128`.
pub const MAX_EXACT_SCALE: u64 = 1 << 62;
const DENSE_LIMIT_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeSpaceError {
    #[error("codespace needs at least one codeword")]
    Empty,
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    QubitCount(usize),
    #[error("codeword {codeword}: basis index {index} listed twice")]
    DuplicateBasisIndex { codeword: usize, index: u64 },
    #[error("codeword {codeword}: basis index {index} does not fit in {n} qubits")]
    BasisIndexRange { codeword: usize, index: u64, n: usize },
    #[error("codeword {codeword}: scale must be positive and at most 2^62")]
    BadScale { codeword: usize },
    #[error("codewords are not orthonormal: Gram entry ({row},{col}) = {value}")]
    NotOrthonormal { row: usize, col: usize, value: String },
    #[error("codeword index {index} out of range (K = {k})")]
    CodewordIndex { index: usize, k: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("arithmetic overflow in exact backend")]
    Overflow,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

/// Numeric backend for [`CodeSpace`].
pub trait Backend: Sized + Send + Sync + 'static {
    /// Stored amplitude (numerator for the exact backend).
    type Amp: Copy + PartialEq + fmt::Debug + Send + Sync;
    /// Accumulator for inner products.
    type Acc: Copy + PartialEq + fmt::Debug + Send + Sync + std::ops::Neg<Output = Self::Acc>;
    /// Accumulator for squared magnitudes.
    type Sum: Copy + PartialEq + fmt::Debug + Send + Sync;
    /// Final coefficient type.
    type Value: crate::enumerator::Coefficient;

    const NAME: &'static str;

    fn amp_zero() -> Self::Amp;
    fn amp_is_zero(a: Self::Amp) -> bool;
    fn amp_is_real(a: Self::Amp) -> bool;
    fn acc_zero() -> Self::Acc;
    /// `conj(a) · i^quarter · b`.
    fn conj_mul(a: Self::Amp, b: Self::Amp, quarter: u8) -> Self::Acc;
    fn acc_add(x: Self::Acc, y: Self::Acc) -> Self::Acc;
    fn acc_scale(x: Self::Acc, w: Self::Sum) -> Result<Self::Acc, CodeSpaceError>;
    fn norm_sqr(x: Self::Acc) -> Result<Self::Sum, CodeSpaceError>;
    fn sum_zero() -> Self::Sum;
    fn sum_add(x: Self::Sum, y: Self::Sum) -> Result<Self::Sum, CodeSpaceError>;
    fn sum_mul(x: Self::Sum, y: Self::Sum) -> Result<Self::Sum, CodeSpaceError>;
    fn sum_from_usize(k: usize) -> Self::Sum;
    fn ratio(num: Self::Sum, den: Self::Sum) -> Self::Value;
    /// Element `value/√scale` is zero.
    fn elem_is_zero(value: Self::Acc) -> bool;
    /// Element `value/√scale` is one.
    fn elem_is_one(value: Self::Acc, scale: u128) -> bool;
    /// Per-codeword weights `w_a` and common denominator `L` such that
    /// `w_a / L = 1 / N_a`.
    fn codeword_weights(space: &CodeSpace<Self>) -> Result<(Vec<Self::Sum>, Self::Sum), CodeSpaceError>;
}

/// Integer Gaussian amplitudes over a per-codeword `√N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact;

/// `Complex<f64>` amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Float;

#[inline]
fn rotate<T: Copy + std::ops::Neg<Output = T>>(c: Complex<T>, quarter: u8) -> Complex<T> {
    match quarter & 3 {
        0 => c,
        1 => Complex::new(-c.im, c.re),
        2 => Complex::new(-c.re, -c.im),
        _ => Complex::new(c.im, -c.re),
    }
}

impl Backend for Exact {
    type Amp = Complex<i64>;
    type Acc = Complex<i128>;
    type Sum = i128;
    type Value = Rational;

    const NAME: &'static str = "exact";

    fn amp_zero() -> Self::Amp {
        Complex::new(0, 0)
    }
    fn amp_is_zero(a: Self::Amp) -> bool {
        a.re == 0 && a.im == 0
    }
    fn amp_is_real(a: Self::Amp) -> bool {
        a.im == 0
    }
    fn acc_zero() -> Self::Acc {
        Complex::new(0, 0)
    }
    #[inline]
    fn conj_mul(a: Self::Amp, b: Self::Amp, quarter: u8) -> Self::Acc {
        let (ar, ai) = (a.re as i128, -(a.im as i128));
        let (br, bi) = (b.re as i128, b.im as i128);
        rotate(Complex::new(ar * br - ai * bi, ar * bi + ai * br), quarter)
    }
    #[inline]
    fn acc_add(x: Self::Acc, y: Self::Acc) -> Self::Acc {
        Complex::new(x.re + y.re, x.im + y.im)
    }
    fn acc_scale(x: Self::Acc, w: i128) -> Result<Self::Acc, CodeSpaceError> {
        Ok(Complex::new(
            x.re.checked_mul(w).ok_or(CodeSpaceError::Overflow)?,
            x.im.checked_mul(w).ok_or(CodeSpaceError::Overflow)?,
        ))
    }
    fn norm_sqr(x: Self::Acc) -> Result<i128, CodeSpaceError> {
        let r = x.re.checked_mul(x.re).ok_or(CodeSpaceError::Overflow)?;
        let i = x.im.checked_mul(x.im).ok_or(CodeSpaceError::Overflow)?;
        r.checked_add(i).ok_or(CodeSpaceError::Overflow)
    }
    fn sum_zero() -> i128 {
        0
    }
    fn sum_add(x: i128, y: i128) -> Result<i128, CodeSpaceError> {
        x.checked_add(y).ok_or(CodeSpaceError::Overflow)
    }
    fn sum_mul(x: i128, y: i128) -> Result<i128, CodeSpaceError> {
        x.checked_mul(y).ok_or(CodeSpaceError::Overflow)
    }
    fn sum_from_usize(k: usize) -> i128 {
        k as i128
    }
    fn ratio(num: i128, den: i128) -> Rational {
        Rational::new(num, den)
    }
    fn elem_is_zero(value: Self::Acc) -> bool {
        value.is_zero()
    }
    fn elem_is_one(value: Self::Acc, scale: u128) -> bool {
        value.im == 0 && value.re > 0 && value.re.checked_mul(value.re).is_some_and(|s| s as u128 == scale)
    }
    fn codeword_weights(space: &CodeSpace<Self>) -> Result<(Vec<i128>, i128), CodeSpaceError> {
        space.common_scale()
    }
}

impl Backend for Float {
    type Amp = Complex<f64>;
    type Acc = Complex<f64>;
    type Sum = f64;
    type Value = f64;

    const NAME: &'static str = "float";

    fn amp_zero() -> Self::Amp {
        Complex::new(0.0, 0.0)
    }
    fn amp_is_zero(a: Self::Amp) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn amp_is_real(a: Self::Amp) -> bool {
        a.im.abs() <= REALNESS_TOLERANCE
    }
    fn acc_zero() -> Self::Acc {
        Complex::new(0.0, 0.0)
    }
    #[inline]
    fn conj_mul(a: Self::Amp, b: Self::Amp, quarter: u8) -> Self::Acc {
        rotate(a.conj() * b, quarter)
    }
    #[inline]
    fn acc_add(x: Self::Acc, y: Self::Acc) -> Self::Acc {
        x + y
    }
    fn acc_scale(x: Self::Acc, w: f64) -> Result<Self::Acc, CodeSpaceError> {
        Ok(x * w)
    }
    fn norm_sqr(x: Self::Acc) -> Result<f64, CodeSpaceError> {
        Ok(x.norm_sqr())
    }
    fn sum_zero() -> f64 {
        0.0
    }
    fn sum_add(x: f64, y: f64) -> Result<f64, CodeSpaceError> {
        Ok(x + y)
    }
    fn sum_mul(x: f64, y: f64) -> Result<f64, CodeSpaceError> {
        Ok(x * y)
    }
    fn sum_from_usize(k: usize) -> f64 {
        k as f64
    }
    fn ratio(num: f64, den: f64) -> f64 {
        num / den
    }
    fn elem_is_zero(value: Self::Acc) -> bool {
        value.norm() <= FLOAT_TOLERANCE
    }
    fn elem_is_one(value: Self::Acc, _scale: u128) -> bool {
        (value - Complex::new(1.0, 0.0)).norm() <= FLOAT_TOLERANCE
    }
    fn codeword_weights(space: &CodeSpace<Self>) -> Result<(Vec<f64>, f64), CodeSpaceError> {
        Ok((vec![1.0; space.k_dim()], 1.0))
    }
}

/// A matrix element `⟨a|P|b⟩`, stored as `value / √scale` (scale is 1 for floats).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude<B: Backend> {
    pub value: B::Acc,
    pub scale: u128,
}

impl<B: Backend> Amplitude<B> {
    /// Exact on the exact backend, within tolerance on the floating one.
    pub fn is_zero(&self) -> bool {
        B::elem_is_zero(self.value)
    }

    pub fn is_one(&self) -> bool {
        B::elem_is_one(self.value, self.scale)
    }

    pub fn negated(&self) -> Self {
        Self {
            value: -self.value,
            scale: self.scale,
        }
    }
}

impl Amplitude<Exact> {
    pub fn conj(&self) -> Self {
        Self {
            value: self.value.conj(),
            scale: self.scale,
        }
    }

    pub fn norm_sqr(&self) -> Result<Rational, CodeSpaceError> {
        let num = Exact::norm_sqr(self.value)?;
        let den = i128::try_from(self.scale).map_err(|_| CodeSpaceError::Overflow)?;
        Ok(Rational::new(num, den))
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let s = (self.scale as f64).sqrt();
        Complex::new(self.value.re as f64 / s, self.value.im as f64 / s)
    }

    /// Exact equality of the two represented complex numbers.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.value.is_zero() || other.value.is_zero() {
            return self.value.is_zero() && other.value.is_zero();
        }
        // equal magnitudes, and a·conj(b) real positive
        let (Ok(na), Ok(nb)) = (Exact::norm_sqr(self.value), Exact::norm_sqr(other.value)) else {
            return false;
        };
        let lhs = (na as u128).checked_mul(other.scale);
        let rhs = (nb as u128).checked_mul(self.scale);
        if lhs.is_none() || lhs != rhs {
            return false;
        }
        let cross = self.value * other.value.conj();
        cross.im == 0 && cross.re > 0
    }
}

impl Amplitude<Float> {
    pub fn conj(&self) -> Self {
        Self {
            value: self.value.conj(),
            scale: 1,
        }
    }

    pub fn norm_sqr(&self) -> Result<f64, CodeSpaceError> {
        Ok(self.value.norm_sqr())
    }

    pub fn to_complex(&self) -> Complex<f64> {
        self.value
    }

    pub fn same_value(&self, other: &Self) -> bool {
        (self.value - other.value).norm() <= FLOAT_TOLERANCE
    }
}

#[derive(Debug, Clone)]
enum Lookup<T> {
    Dense(Vec<T>),
    Sparse(HashMap<u64, T>),
}

/// One codeword: sparse support plus a lookup table.
#[derive(Debug, Clone)]
pub struct Codeword<B: Backend> {
    scale: u64,
    support: Vec<(u64, B::Amp)>,
    lookup: Lookup<B::Amp>,
}

impl<B: Backend> Codeword<B> {
    fn build(n: usize, scale: u64, mut support: Vec<(u64, B::Amp)>) -> Self {
        support.retain(|&(_, a)| !B::amp_is_zero(a));
        support.sort_by_key(|&(x, _)| x);
        let lookup = if n <= DENSE_LIMIT_QUBITS {
            let mut dense = vec![B::amp_zero(); 1usize << n];
            for &(x, a) in &support {
                dense[x as usize] = a;
            }
            Lookup::Dense(dense)
        } else {
            Lookup::Sparse(support.iter().copied().collect())
        };
        Self { scale, support, lookup }
    }

    #[inline]
    pub fn amplitude(&self, basis: u64) -> B::Amp {
        match &self.lookup {
            Lookup::Dense(v) => v.get(basis as usize).copied().unwrap_or_else(B::amp_zero),
            Lookup::Sparse(m) => m.get(&basis).copied().unwrap_or_else(B::amp_zero),
        }
    }

    /// Nonzero entries sorted by basis index.
    pub fn support(&self) -> &[(u64, B::Amp)] {
        &self.support
    }

    /// `N` in the implicit `1/√N` factor (1 on the floating backend).
    pub fn scale(&self) -> u64 {
        self.scale
    }
}

/// Raw input for [`CodeSpace`] construction: entries per codeword plus scales.
#[derive(Debug, Clone)]
pub struct AmplitudeTable<B: Backend> {
    pub n: usize,
    pub codewords: Vec<Vec<(u64, B::Amp)>>,
    pub scales: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CodeSpace<B: Backend> {
    n: usize,
    codewords: Vec<Codeword<B>>,
    real: bool,
}

impl<B: Backend> CodeSpace<B> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of codewords.
    pub fn k_dim(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Codeword<B>] {
        &self.codewords
    }

    pub fn codeword(&self, index: usize) -> Result<&Codeword<B>, CodeSpaceError> {
        self.codewords.get(index).ok_or(CodeSpaceError::CodewordIndex {
            index,
            k: self.codewords.len(),
        })
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// `K = 2` and `X^⊗n` maps codeword 0 to codeword 1 exactly.
    pub fn x_transversal_exact(&self) -> bool {
        let Ok(x) = PauliString::all_x(self.n) else {
            return false;
        };
        self.k_dim() == 2 && self.matrix_element(1, &x, 0).is_ok_and(|e| e.is_one())
    }

    /// `K = 2` and `Z^⊗n` acts as `diag(1, -1)` on the codewords.
    pub fn z_transversal_exact(&self) -> bool {
        let Ok(z) = PauliString::all_z(self.n) else {
            return false;
        };
        self.k_dim() == 2
            && self.matrix_element(0, &z, 0).is_ok_and(|e| e.is_one())
            && self.matrix_element(1, &z, 1).is_ok_and(|e| e.negated().is_one())
    }

    fn check_table_shape(table: &AmplitudeTable<B>) -> Result<(), CodeSpaceError> {
        let n = table.n;
        if n == 0 || n > MAX_QUBITS {
            return Err(CodeSpaceError::QubitCount(n));
        }
        if table.codewords.is_empty() {
            return Err(CodeSpaceError::Empty);
        }
        if table.scales.len() != table.codewords.len() {
            return Err(CodeSpaceError::Parse {
                line: 0,
                message: "one scale per codeword required".into(),
            });
        }
        for (j, cw) in table.codewords.iter().enumerate() {
            let mut seen = std::collections::HashSet::with_capacity(cw.len());
            for &(x, _) in cw {
                if x & !full_mask(n) != 0 {
                    return Err(CodeSpaceError::BasisIndexRange {
                        codeword: j,
                        index: x,
                        n,
                    });
                }
                if !seen.insert(x) {
                    return Err(CodeSpaceError::DuplicateBasisIndex { codeword: j, index: x });
                }
            }
        }
        Ok(())
    }

    /// `⟨ψ_a|P|ψ_b⟩`, cost linear in the support of `ψ_b`.
    pub fn matrix_element(&self, a: usize, pauli: &PauliString, b: usize) -> Result<Amplitude<B>, CodeSpaceError> {
        if pauli.n() != self.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: pauli.n(),
            }
            .into());
        }
        let ca = self.codeword(a)?;
        let cb = self.codeword(b)?;
        let value = raw_element::<B>(ca, pauli, cb);
        let scale = ca.scale as u128 * cb.scale as u128;
        Ok(Amplitude { value, scale })
    }

    /// All `K²` raw elements for `P`, row-major `out[a*K + b]`.
    #[inline]
    pub(crate) fn all_elements(&self, pauli: &PauliString, out: &mut [B::Acc]) {
        let k = self.codewords.len();
        out.iter_mut().for_each(|v| *v = B::acc_zero());
        for (bi, cb) in self.codewords.iter().enumerate() {
            for &(x, amp_b) in &cb.support {
                let (y, quarter) = pauli.apply_unchecked(x);
                for (ai, ca) in self.codewords.iter().enumerate() {
                    let amp_a = ca.amplitude(y);
                    let slot = &mut out[ai * k + bi];
                    *slot = B::acc_add(*slot, B::conj_mul(amp_a, amp_b, quarter));
                }
            }
        }
    }
}

#[inline]
fn raw_element<B: Backend>(ca: &Codeword<B>, pauli: &PauliString, cb: &Codeword<B>) -> B::Acc {
    let mut acc = B::acc_zero();
    for &(x, amp_b) in &cb.support {
        let (y, quarter) = pauli.apply_unchecked(x);
        acc = B::acc_add(acc, B::conj_mul(ca.amplitude(y), amp_b, quarter));
    }
    acc
}

impl CodeSpace<Exact> {
    pub fn from_amplitude_table(table: AmplitudeTable<Exact>) -> Result<Self, CodeSpaceError> {
        Self::check_table_shape(&table)?;
        let n = table.n;
        let mut codewords = Vec::with_capacity(table.codewords.len());
        for (j, (entries, &scale)) in table.codewords.into_iter().zip(&table.scales).enumerate() {
            if scale == 0 || scale > MAX_EXACT_SCALE {
                return Err(CodeSpaceError::BadScale { codeword: j });
            }
            codewords.push(Codeword::<Exact>::build(n, scale, entries));
        }
        // Gram matrix: diagonal Σ|v|² must equal N, off-diagonal Σ conj(v)w must vanish.
        for a in 0..codewords.len() {
            for b in a..codewords.len() {
                let ca = &codewords[a];
                let cb = &codewords[b];
                let mut g = Complex::<i128>::new(0, 0);
                for &(x, w) in &cb.support {
                    let v = ca.amplitude(x);
                    let t = Exact::conj_mul(v, w, 0);
                    g.re = g.re.checked_add(t.re).ok_or(CodeSpaceError::Overflow)?;
                    g.im = g.im.checked_add(t.im).ok_or(CodeSpaceError::Overflow)?;
                }
                let ok = if a == b {
                    g.im == 0 && g.re == ca.scale as i128
                } else {
                    g.is_zero()
                };
                if !ok {
                    return Err(CodeSpaceError::NotOrthonormal {
                        row: a,
                        col: b,
                        value: render_gram_exact(g, ca.scale as u128 * cb.scale as u128),
                    });
                }
            }
        }
        let real = codewords
            .iter()
            .all(|c| c.support.iter().all(|&(_, a)| Exact::amp_is_real(a)));
        Ok(Self { n, codewords, real })
    }

    /// Builds a space from integer vectors, taking each scale as `Σ|v|²`.
    pub fn from_vectors(n: usize, vectors: Vec<Vec<(u64, Complex<i64>)>>) -> Result<Self, CodeSpaceError> {
        let mut scales = Vec::with_capacity(vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            let mut s: u128 = 0;
            for &(_, a) in v {
                let m = (a.re as i128 * a.re as i128 + a.im as i128 * a.im as i128) as u128;
                s = s.checked_add(m).ok_or(CodeSpaceError::Overflow)?;
            }
            if s == 0 || s > MAX_EXACT_SCALE as u128 {
                return Err(CodeSpaceError::BadScale { codeword: j });
            }
            scales.push(s as u64);
        }
        Self::from_amplitude_table(AmplitudeTable {
            n,
            codewords: vectors,
            scales,
        })
    }

    /// Codeword weights `L/N_a` and `L = lcm(N_a)`.
    pub(crate) fn common_scale(&self) -> Result<(Vec<i128>, i128), CodeSpaceError> {
        let mut l: i128 = 1;
        for c in &self.codewords {
            l = l.lcm(&(c.scale as i128));
            if l > (1i128 << 100) {
                return Err(CodeSpaceError::Overflow);
            }
        }
        Ok((self.codewords.iter().map(|c| l / c.scale as i128).collect(), l))
    }
}

fn render_gram_exact(g: Complex<i128>, scale: u128) -> String {
    // value = g / √scale; print a rational when √scale is an integer
    let root = (scale as f64).sqrt().round() as u128;
    let body = if g.im == 0 {
        format!("{}", g.re)
    } else {
        format!("({}{:+}i)", g.re, g.im)
    };
    if root * root == scale {
        if g.im == 0 {
            format!("{}", Rational::new(g.re, root as i128))
        } else {
            format!("{body}/{root}")
        }
    } else {
        format!("{body}/sqrt({scale})")
    }
}

impl CodeSpace<Float> {
    pub fn from_amplitude_table(table: AmplitudeTable<Float>) -> Result<Self, CodeSpaceError> {
        Self::check_table_shape(&table)?;
        let n = table.n;
        let mut codewords = Vec::with_capacity(table.codewords.len());
        for (j, (entries, &scale)) in table.codewords.into_iter().zip(&table.scales).enumerate() {
            if scale == 0 {
                return Err(CodeSpaceError::BadScale { codeword: j });
            }
            let f = 1.0 / (scale as f64).sqrt();
            let entries = entries.into_iter().map(|(x, a)| (x, a * f)).collect();
            codewords.push(Codeword::<Float>::build(n, 1, entries));
        }
        for a in 0..codewords.len() {
            for b in a..codewords.len() {
                let g = raw_element::<Float>(&codewords[a], &PauliString::from_raw(n, 0, 0, 0), &codewords[b]);
                let target = if a == b { 1.0 } else { 0.0 };
                if (g - Complex::new(target, 0.0)).norm() > FLOAT_TOLERANCE {
                    return Err(CodeSpaceError::NotOrthonormal {
                        row: a,
                        col: b,
                        value: format!("{}{:+}i", g.re, g.im),
                    });
                }
            }
        }
        let real = codewords
            .iter()
            .all(|c| c.support.iter().all(|&(_, a)| Float::amp_is_real(a)));
        Ok(Self { n, codewords, real })
    }
}

/// A codespace loaded from a file, in whichever backend the file declares.
#[derive(Debug, Clone)]
pub enum AnyCodeSpace {
    Exact(CodeSpace<Exact>),
    Float(CodeSpace<Float>),
}

impl AnyCodeSpace {
    pub fn n(&self) -> usize {
        match self {
            AnyCodeSpace::Exact(s) => s.n(),
            AnyCodeSpace::Float(s) => s.n(),
        }
    }

    pub fn k_dim(&self) -> usize {
        match self {
            AnyCodeSpace::Exact(s) => s.k_dim(),
            AnyCodeSpace::Float(s) => s.k_dim(),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            AnyCodeSpace::Exact(s) => s.is_real(),
            AnyCodeSpace::Float(s) => s.is_real(),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> CodeSpaceError {
    CodeSpaceError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_kv<'a>(token: &'a str, key: &str, line: usize) -> Result<&'a str, CodeSpaceError> {
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=...`, found `{token}`")))
}

fn parse_bits(s: &str, n: usize, line: usize) -> Result<u64, CodeSpaceError> {
    if s.chars().count() != n {
        return Err(parse_err(line, format!("bitstring `{s}` must have {n} characters")));
    }
    let mut x = 0u64;
    for (j, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => x |= 1 << j,
            _ => return Err(parse_err(line, format!("invalid bit `{c}` in `{s}`"))),
        }
    }
    Ok(x)
}

/// Parses the line-oriented codeword format.
///
/// ```text
/// n=2 K=1 backend=exact
/// codeword 0 scale=2
/// 00 1
/// 11 1
/// ```
pub fn parse_codeword_file(text: &str) -> Result<AnyCodeSpace, CodeSpaceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 {
        return Err(parse_err(
            hline,
            "header must be `n=<int> K=<int> backend=<exact|float>`",
        ));
    }
    let n: usize = parse_kv(tokens[0], "n", hline)?
        .parse()
        .map_err(|_| parse_err(hline, "bad qubit count"))?;
    let k: usize = parse_kv(tokens[1], "K", hline)?
        .parse()
        .map_err(|_| parse_err(hline, "bad codeword count"))?;
    let backend = parse_kv(tokens[2], "backend", hline)?;
    if n == 0 || n > MAX_QUBITS {
        return Err(parse_err(hline, format!("qubit count {n} outside 1..={MAX_QUBITS}")));
    }
    let exact = match backend {
        "exact" => true,
        "float" => false,
        other => return Err(parse_err(hline, format!("unknown backend `{other}`"))),
    };

    let mut scales: Vec<u64> = Vec::with_capacity(k);
    let mut exact_rows: Vec<Vec<(u64, Complex<i64>)>> = Vec::with_capacity(k);
    let mut float_rows: Vec<Vec<(u64, Complex<f64>)>> = Vec::with_capacity(k);
    let mut seen: Vec<std::collections::HashSet<u64>> = Vec::with_capacity(k);

    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("codeword") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(parse_err(ln, "codeword header must be `codeword <j> scale=<int>`"));
            }
            let j: usize = parts[0].parse().map_err(|_| parse_err(ln, "bad codeword index"))?;
            if j != scales.len() {
                return Err(parse_err(ln, format!("expected codeword {}, found {j}", scales.len())));
            }
            if j >= k {
                return Err(parse_err(ln, format!("more than K={k} codewords")));
            }
            let scale: u64 = parse_kv(parts[1], "scale", ln)?
                .parse()
                .map_err(|_| parse_err(ln, "scale must be a positive integer"))?;
            if scale == 0 {
                return Err(parse_err(ln, "scale must be a positive integer"));
            }
            scales.push(scale);
            exact_rows.push(Vec::new());
            float_rows.push(Vec::new());
            seen.push(Default::default());
            continue;
        }
        let cur = scales
            .len()
            .checked_sub(1)
            .ok_or_else(|| parse_err(ln, "amplitude line before any codeword header"))?;
        let mut parts = line.split_whitespace();
        let bits = parts.next().unwrap_or_default();
        let value = parts
            .next()
            .ok_or_else(|| parse_err(ln, "expected `<bitstring> <re>[,<im>]`"))?;
        if parts.next().is_some() {
            return Err(parse_err(ln, "trailing tokens"));
        }
        let x = parse_bits(bits, n, ln)?;
        if !seen[cur].insert(x) {
            return Err(parse_err(ln, format!("duplicate basis index {bits} in codeword {cur}")));
        }
        let (re, im) = match value.split_once(',') {
            Some((r, i)) => (r, Some(i)),
            None => (value, None),
        };
        if exact {
            let re: i64 = re.parse().map_err(|_| parse_err(ln, format!("bad integer `{re}`")))?;
            let im: i64 = match im {
                Some(s) => s.parse().map_err(|_| parse_err(ln, format!("bad integer `{s}`")))?,
                None => 0,
            };
            exact_rows[cur].push((x, Complex::new(re, im)));
        } else {
            let re: f64 = re.parse().map_err(|_| parse_err(ln, format!("bad number `{re}`")))?;
            let im: f64 = match im {
                Some(s) => s.parse().map_err(|_| parse_err(ln, format!("bad number `{s}`")))?,
                None => 0.0,
            };
            float_rows[cur].push((x, Complex::new(re, im)));
        }
    }
    if scales.len() != k {
        return Err(parse_err(
            0,
            format!("expected K={k} codewords, found {}", scales.len()),
        ));
    }
    if exact {
        CodeSpace::<Exact>::from_amplitude_table(AmplitudeTable {
            n,
            codewords: exact_rows,
            scales,
        })
        .map(AnyCodeSpace::Exact)
    } else {
        CodeSpace::<Float>::from_amplitude_table(AmplitudeTable {
            n,
            codewords: float_rows,
            scales,
        })
        .map(AnyCodeSpace::Float)
    }
}

pub fn load_codeword_file(path: impl AsRef<Path>) -> Result<AnyCodeSpace, CodeSpaceError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CodeSpaceError::Io(format!("{}: {e}", path.display())))?;
    parse_codeword_file(&text)
}

fn bitstring(x: u64, n: usize) -> String {
    (0..n).map(|j| if x >> j & 1 == 1 { '1' } else { '0' }).collect()
}

impl CodeSpace<Exact> {
    /// Renders the space in the codeword file format.
    pub fn to_codeword_file(&self) -> String {
        let mut out = format!("n={} K={} backend=exact\n", self.n, self.k_dim());
        for (j, c) in self.codewords.iter().enumerate() {
            let _ = writeln!(out, "codeword {j} scale={}", c.scale);
            for &(x, a) in &c.support {
                if a.im == 0 {
                    let _ = writeln!(out, "{} {}", bitstring(x, self.n), a.re);
                } else {
                    let _ = writeln!(out, "{} {},{}", bitstring(x, self.n), a.re, a.im);
                }
            }
        }
        out
    }
}
