//! Built-in example codes with their known enumerators, and file loaders.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::codespace::{self, AnyCodeSpace, CodeSpaceError};
use crate::enumerator::Coefficient;
use crate::pauli::PauliString;
use crate::stabilizer::{self, StabilizerError, StabilizerGroup, Verdict};
use crate::Rational;

/// Environment variable naming a codeword file for the `eleven-two-three` entry.
pub const ELEVEN_TWO_THREE_ENV: &str = "QWE_ELEVEN_TWO_THREE";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("entry `{0}` has no codeword file (set {ELEVEN_TWO_THREE_ENV})")]
    MissingCodewords(String),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    CodeSpace(#[from] CodeSpaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Stabilizer(&'static [&'static str]),
    /// Codewords come from a file outside the repository.
    ExternalCodewords,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Stable command-line identifier.
    pub name: &'static str,
    /// Conventional `[[n,k,d]]` or `((n,K,d))` title.
    pub title: &'static str,
    pub n: usize,
    /// Code space dimension `K`.
    pub k_dim: usize,
    pub kind: EntryKind,
    expected_a: &'static [&'static str],
    expected_b: &'static [&'static str],
    pub expected_distance: usize,
    pub expected_real: bool,
    /// Transversality verdict for stabilizer entries.
    pub expected_verdict: Option<Verdict>,
}

impl CatalogEntry {
    fn row(values: &[&str]) -> Vec<Rational> {
        values
            .iter()
            .map(|v| Rational::parse(v).expect("catalog rows are well formed"))
            .collect()
    }

    pub fn expected_a(&self) -> Vec<Rational> {
        Self::row(self.expected_a)
    }

    pub fn expected_b(&self) -> Vec<Rational> {
        Self::row(self.expected_b)
    }

    pub fn is_stabilizer(&self) -> bool {
        matches!(self.kind, EntryKind::Stabilizer(_))
    }

    /// The validated group, for stabilizer entries.
    pub fn group(&self) -> Option<StabilizerGroup> {
        match self.kind {
            EntryKind::Stabilizer(labels) => {
                Some(stabilizer::from_labels(labels).expect("built-in generators are valid"))
            }
            EntryKind::ExternalCodewords => None,
        }
    }

    /// Codeword file for external entries, taken from the environment.
    pub fn codeword_path(&self) -> Option<PathBuf> {
        match self.kind {
            EntryKind::ExternalCodewords => std::env::var_os(ELEVEN_TWO_THREE_ENV)
                .filter(|p| !p.is_empty())
                .map(PathBuf::from),
            EntryKind::Stabilizer(_) => None,
        }
    }
}

const FIVE_QUBIT: &[&str] = &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];

const STEANE: &[&str] = &["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"];

const SHOR: &[&str] = &[
    "ZZIIIIIII",
    "IZZIIIIII",
    "IIIZZIIII",
    "IIIIZZIII",
    "IIIIIIZZI",
    "IIIIIIIZZ",
    "XXXXXXIII",
    "IIIXXXXXX",
];

// Shortened dodecacode, with per-qubit letter relabelings chosen so every
// generator has even X, Y and Z counts.
const ELEVEN_ONE_FIVE: &[&str] = &[
    "XZZIXIIXIIX",
    "ZIYIIZXIYXI",
    "XIZZXIXIIXI",
    "IXIXZZIXIIX",
    "ZXZXXYIIYXI",
    "XIIXIZZXIXI",
    "IXIIXIXYYIX",
    "ZXZXIZXXZII",
    "XIIXIIXIYYX",
    "ZIIXXIXXIIZ",
];

pub fn builtin_codes() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "five-qubit",
            title: "[[5,1,3]]",
            n: 5,
            k_dim: 2,
            kind: EntryKind::Stabilizer(FIVE_QUBIT),
            expected_a: &["1", "0", "0", "0", "15", "0"],
            expected_b: &["1", "0", "0", "30", "15", "18"],
            expected_distance: 3,
            expected_real: true,
            expected_verdict: Some(Verdict::ExactlyTransversal),
        },
        CatalogEntry {
            name: "steane",
            title: "[[7,1,3]]",
            n: 7,
            k_dim: 2,
            kind: EntryKind::Stabilizer(STEANE),
            expected_a: &["1", "0", "0", "0", "21", "0", "42", "0"],
            expected_b: &["1", "0", "0", "21", "21", "126", "42", "45"],
            expected_distance: 3,
            expected_real: true,
            expected_verdict: Some(Verdict::ExactlyTransversal),
        },
        CatalogEntry {
            name: "shor",
            title: "[[9,1,3]]",
            n: 9,
            k_dim: 2,
            kind: EntryKind::Stabilizer(SHOR),
            expected_a: &["1", "0", "9", "0", "27", "0", "75", "0", "144", "0"],
            expected_b: &["1", "0", "9", "39", "27", "207", "75", "333", "144", "189"],
            expected_distance: 3,
            expected_real: true,
            expected_verdict: Some(Verdict::Swapped),
        },
        CatalogEntry {
            name: "eleven-one-five",
            title: "[[11,1,5]]",
            n: 11,
            k_dim: 2,
            kind: EntryKind::Stabilizer(ELEVEN_ONE_FIVE),
            expected_a: &["1", "0", "0", "0", "0", "0", "198", "0", "495", "0", "330", "0"],
            expected_b: &[
                "1", "0", "0", "0", "0", "198", "198", "990", "495", "1650", "330", "234",
            ],
            expected_distance: 5,
            expected_real: true,
            expected_verdict: Some(Verdict::ExactlyTransversal),
        },
        CatalogEntry {
            name: "eleven-two-three",
            title: "((11,2,3))",
            n: 11,
            k_dim: 2,
            kind: EntryKind::ExternalCodewords,
            expected_a: &["1", "0", "0", "0", "110/3", "0", "88", "0", "605", "0", "880/3", "0"],
            expected_b: &[
                "1", "0", "0", "55/3", "110/3", "88", "88", "1210", "605", "4400/3", "880/3", "289",
            ],
            expected_distance: 3,
            expected_real: true,
            expected_verdict: None,
        },
    ]
}

pub fn lookup(name: &str) -> Result<CatalogEntry, CatalogError> {
    builtin_codes()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

/// Parses a generator list: one label per non-blank line, `#` starts a comment.
pub fn parse_stabilizer_text(text: &str) -> Result<StabilizerGroup, CatalogError> {
    let mut generators = Vec::new();
    let mut width: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let label = raw.split('#').next().unwrap_or("").trim();
        if label.is_empty() {
            continue;
        }
        let p = PauliString::from_label(label).map_err(|e| CatalogError::Parse {
            line,
            message: e.to_string(),
        })?;
        match width {
            None => width = Some((p.n(), line)),
            Some((n, first)) if n != p.n() => {
                return Err(CatalogError::Parse {
                    line,
                    message: format!("{} qubits, but line {first} has {n}", p.n()),
                })
            }
            Some(_) => {}
        }
        generators.push(p);
    }
    if generators.is_empty() {
        return Err(CatalogError::Parse {
            line: 0,
            message: "no generators".into(),
        });
    }
    Ok(stabilizer::validate(&generators)?)
}

fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))
}

pub fn load_stabilizer_file(path: impl AsRef<Path>) -> Result<StabilizerGroup, CatalogError> {
    parse_stabilizer_text(&read(path.as_ref())?)
}

pub fn load_codeword_file(path: impl AsRef<Path>) -> Result<AnyCodeSpace, CatalogError> {
    Ok(codespace::parse_codeword_file(&read(path.as_ref())?)?)
}
