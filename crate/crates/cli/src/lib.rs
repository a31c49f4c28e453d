//! Command-line driver for `qwe`.
//!
//! [`run`] parses arguments, writes everything to the supplied sinks and
//! returns the process exit status: 0 on success or pass, 1 when a check
//! fails, 2 on input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwe_core::catalog::{self, CatalogEntry, EntryKind};
use qwe_core::codespace::{AnyCodeSpace, Backend, CodeSpace};
use qwe_core::enumerator::{
    brute_force_enumerators, cd_decomposition, restricted_a, stabilizer_enumerators, theorem_check, BruteForceOptions,
    Coefficient, EnumeratorPair, Hypotheses, TheoremReport,
};
use qwe_core::pauli::MAX_QUBITS;
use qwe_core::stabilizer::{LogicalBasis, StabilizerGroup, Verdict};
use qwe_core::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Largest `n` brute-forced without `--slow`.
pub const FAST_BRUTE_LIMIT: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "qwe",
    version,
    about = "Weight enumerators and transversality checks for quantum codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the A and B weight enumerators.
    Enumerate(SourceArgs),
    /// Print the smallest weight where A and B differ.
    Distance(SourceArgs),
    /// Realness, transversality and all-even predicates.
    Check(SourceArgs),
    /// Check the odd-A, even-A=B and odd-distance identities and their lemmas.
    Verify(SourceArgs),
    /// List built-in codes, or compare one against its known enumerators.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Lines,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Built-in code name (see `qwe catalog`).
    name: Option<String>,
    /// Stabilizer generator file.
    #[arg(long, conflicts_with = "codewords")]
    stabilizer: Option<PathBuf>,
    /// Codeword file.
    #[arg(long)]
    codewords: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for brute-force enumeration.
    #[arg(long)]
    threads: Option<usize>,
    /// Allow brute force above n = 10.
    #[arg(long)]
    slow: bool,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    /// Entry to compare against its known rows.
    name: Option<String>,
    /// Codeword file for external entries.
    #[arg(long)]
    codewords: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    slow: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

enum Source {
    Stabilizer { label: String, group: StabilizerGroup },
    Codewords { label: String, space: AnyCodeSpace },
}

impl Source {
    fn label(&self) -> &str {
        match self {
            Source::Stabilizer { label, .. } | Source::Codewords { label, .. } => label,
        }
    }
}

fn load_entry(entry: &CatalogEntry, codewords: Option<&PathBuf>) -> Result<Source, Failure> {
    let label = entry.name.to_string();
    match entry.kind {
        EntryKind::Stabilizer(_) => {
            if codewords.is_some() {
                return Err(input_error(format!(
                    "`{}` is a stabilizer entry; drop --codewords",
                    entry.name
                )));
            }
            Ok(Source::Stabilizer {
                label,
                group: entry.group().expect("stabilizer entry"),
            })
        }
        EntryKind::ExternalCodewords => {
            let path = codewords
                .cloned()
                .or_else(|| entry.codeword_path())
                .ok_or_else(|| input_error(catalog::CatalogError::MissingCodewords(entry.name.into())))?;
            let space = catalog::load_codeword_file(&path).map_err(input_error)?;
            if space.n() != entry.n || space.k_dim() != entry.k_dim {
                return Err(input_error(format!(
                    "{}: expected n={} K={}, file has n={} K={}",
                    path.display(),
                    entry.n,
                    entry.k_dim,
                    space.n(),
                    space.k_dim()
                )));
            }
            Ok(Source::Codewords { label, space })
        }
    }
}

fn resolve(args: &SourceArgs) -> Result<Source, Failure> {
    match (&args.name, &args.stabilizer, &args.codewords) {
        (Some(name), None, codewords) => {
            let entry = catalog::lookup(name).map_err(input_error)?;
            load_entry(&entry, codewords.as_ref())
        }
        (Some(_), Some(_), _) => Err(input_error("give either a catalog name or --stabilizer, not both")),
        (None, Some(path), None) => Ok(Source::Stabilizer {
            label: path.display().to_string(),
            group: catalog::load_stabilizer_file(path).map_err(input_error)?,
        }),
        (None, None, Some(path)) => Ok(Source::Codewords {
            label: path.display().to_string(),
            space: catalog::load_codeword_file(path).map_err(input_error)?,
        }),
        (None, Some(_), Some(_)) => Err(input_error("--stabilizer and --codewords are exclusive")),
        (None, None, None) => Err(input_error(
            "no input: give a catalog name, --stabilizer or --codewords",
        )),
    }
}

/// Enumerators in whichever backend produced them.
#[derive(Debug, Clone, PartialEq)]
enum Pair {
    Exact(EnumeratorPair<Rational>),
    Float(EnumeratorPair<f64>),
}

impl Pair {
    fn render(&self, format: Format) -> String {
        match (self, format) {
            (Pair::Exact(p), Format::Table) => p.render_table(),
            (Pair::Exact(p), Format::Lines) => p.render_lines(),
            (Pair::Float(p), Format::Table) => p.render_table(),
            (Pair::Float(p), Format::Lines) => p.render_lines(),
        }
    }

    fn distance(&self) -> qwe_core::Distance {
        match self {
            Pair::Exact(p) => p.distance(),
            Pair::Float(p) => p.distance(),
        }
    }

    fn theorem_check(&self, h: &Hypotheses) -> TheoremReport {
        match self {
            Pair::Exact(p) => theorem_check(p, h),
            Pair::Float(p) => theorem_check(p, h),
        }
    }
}

struct Compute {
    method: Method,
    options: BruteForceOptions,
}

impl Compute {
    fn new(method: Method, threads: Option<usize>, slow: bool) -> Self {
        Self {
            method,
            options: BruteForceOptions {
                max_qubits: if slow { MAX_QUBITS } else { FAST_BRUTE_LIMIT },
                threads,
            },
        }
    }

    fn brute<B: Backend>(&self, space: &CodeSpace<B>) -> Result<EnumeratorPair<B::Value>, Failure> {
        brute_force_enumerators(space, &self.options).map_err(|e| match e {
            qwe_core::enumerator::EnumeratorError::TooManyQubits { n, .. } => {
                input_error(format!("brute force on n = {n} needs --slow"))
            }
            other => input_error(other),
        })
    }

    fn enumerators(&self, source: &Source) -> Result<Pair, Failure> {
        match (source, self.method) {
            (Source::Stabilizer { group, .. }, Method::Auto | Method::Group) => {
                Ok(Pair::Exact(stabilizer_enumerators(group)))
            }
            (Source::Stabilizer { group, .. }, Method::Brute) => {
                let space = group
                    .synthesize_codewords(LogicalBasis::Canonical)
                    .map_err(input_error)?;
                Ok(Pair::Exact(self.brute(&space)?))
            }
            (Source::Codewords { .. }, Method::Group) => Err(input_error("--method group needs a stabilizer source")),
            (Source::Codewords { space, .. }, _) => match space {
                AnyCodeSpace::Exact(s) => Ok(Pair::Exact(self.brute(s)?)),
                AnyCodeSpace::Float(s) => Ok(Pair::Float(self.brute(s)?)),
            },
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_enumerate(args: &SourceArgs, out: &mut String) -> Result<i32, Failure> {
    let source = resolve(args)?;
    let pair = Compute::new(args.method, args.threads, args.slow).enumerators(&source)?;
    out.push_str(&pair.render(args.format));
    Ok(EXIT_OK)
}

fn cmd_distance(args: &SourceArgs, out: &mut String) -> Result<i32, Failure> {
    let source = resolve(args)?;
    let pair = Compute::new(args.method, args.threads, args.slow).enumerators(&source)?;
    match args.format {
        Format::Table => writeln!(out, "distance: {}", pair.distance()).unwrap(),
        Format::Lines => writeln!(out, "{}", pair.distance()).unwrap(),
    }
    Ok(EXIT_OK)
}

fn space_checks<B: Backend>(space: &CodeSpace<B>, out: &mut String) {
    writeln!(out, "n: {}  K: {}  backend: {}", space.n(), space.k_dim(), B::NAME).unwrap();
    writeln!(out, "real codewords: {}", yes_no(space.is_real())).unwrap();
    writeln!(out, "X^n exactly transversal: {}", yes_no(space.x_transversal_exact())).unwrap();
    writeln!(out, "Z^n exactly transversal: {}", yes_no(space.z_transversal_exact())).unwrap();
}

fn cmd_check(args: &SourceArgs, out: &mut String) -> Result<i32, Failure> {
    let source = resolve(args)?;
    writeln!(out, "code: {}", source.label()).unwrap();
    match &source {
        Source::Codewords { space, .. } => {
            match space {
                AnyCodeSpace::Exact(s) => space_checks(s, out),
                AnyCodeSpace::Float(s) => space_checks(s, out),
            }
            Ok(EXIT_OK)
        }
        Source::Stabilizer { group, .. } => {
            writeln!(out, "n: {}  k: {}", group.n(), group.k()).unwrap();
            let real = group.is_real_code();
            let all_even = group.all_even_check();
            writeln!(out, "real (every generator has even n_Y): {}", yes_no(real)).unwrap();
            writeln!(out, "all-even generators, n odd: {}", yes_no(all_even)).unwrap();
            if group.k() != 1 {
                writeln!(out, "transversality: not applicable (k = {})", group.k()).unwrap();
                return Ok(EXIT_OK);
            }
            let report = group.transversality_report().map_err(input_error)?;
            writeln!(
                out,
                "canonical logicals: Z = {}  X = {}",
                report.canonical.z, report.canonical.x
            )
            .unwrap();
            writeln!(
                out,
                "X^n: centralizer {}, group {}, acts as logical {}",
                yes_no(report.x_in_centralizer),
                yes_no(report.x_in_group),
                report.x_implements
            )
            .unwrap();
            writeln!(
                out,
                "Z^n: centralizer {}, group {}, acts as logical {}",
                yes_no(report.z_in_centralizer),
                yes_no(report.z_in_group),
                report.z_implements
            )
            .unwrap();
            writeln!(out, "transversality: {}", report.verdict).unwrap();
            if report.verdict == Verdict::Swapped {
                writeln!(
                    out,
                    "note: conjugating by H^n gives an equivalent code with X and Z exactly transversal"
                )
                .unwrap();
            }
            // all-even generators must give a real code with transversal X and Z (up to relabeling)
            let consistent = !all_even || (real && report.verdict != Verdict::NotTransversal);
            if !consistent {
                writeln!(out, "inconsistent: all-even code that is not real and transversal").unwrap();
                return Ok(EXIT_CHECK_FAILED);
            }
            Ok(EXIT_OK)
        }
    }
}

fn render_report(report: &TheoremReport, out: &mut String) {
    match report {
        TheoremReport::NotApplicable { reason } => {
            writeln!(out, "theorems: not applicable ({reason})").unwrap();
        }
        TheoremReport::Checked(c) => {
            let list = |v: &[(usize, bool)]| {
                let bad: Vec<String> = v.iter().filter(|(_, ok)| !ok).map(|(i, _)| i.to_string()).collect();
                if bad.is_empty() {
                    "pass".to_string()
                } else {
                    format!("FAIL at i = {}", bad.join(","))
                }
            };
            writeln!(out, "A_i = 0 for odd i: {}", list(&c.odd_a_vanishes)).unwrap();
            writeln!(out, "A_i = B_i for even i: {}", list(&c.even_a_equals_b)).unwrap();
            writeln!(
                out,
                "distance: {} ({})",
                c.distance,
                if c.distance_odd { "odd" } else { "not odd" }
            )
            .unwrap();
        }
    }
}

/// Lemma-level identities on a labeled two-codeword space; returns pass/fail.
fn identity_checks<B: Backend>(
    space: &CodeSpace<B>,
    pair: &EnumeratorPair<B::Value>,
    out: &mut String,
) -> Result<bool, Failure> {
    let ra = restricted_a(space).map_err(input_error)?;
    let ra_ok = ra.iter().zip(&pair.a).all(|(x, y)| !x.differs(y));
    writeln!(out, "restricted A (wt_X, wt_Z even) = A: {}", pass_fail(ra_ok)).unwrap();
    let cd = cd_decomposition(space).map_err(input_error)?;
    let sum_ok = (0..=space.n()).all(|i| !(pair.a[i] + cd.c[i] + cd.d[i]).differs(&pair.b[i]));
    writeln!(out, "B = A + C + D: {}", pass_fail(sum_ok)).unwrap();
    let even_ok = (0..=space.n())
        .step_by(2)
        .all(|i| cd.c[i].is_zero_value() && cd.d[i].is_zero_value());
    writeln!(out, "C_i = D_i = 0 for even i: {}", pass_fail(even_ok)).unwrap();
    Ok(ra_ok && sum_ok && even_ok)
}

/// Lemma-level sums enumerate every Pauli string, like brute force.
fn identities_allowed(n: usize, slow: bool, out: &mut String) -> bool {
    if n > FAST_BRUTE_LIMIT && !slow {
        writeln!(out, "lemma identities: skipped (n = {n}, pass --slow)").unwrap();
        return false;
    }
    true
}

fn cmd_verify(args: &SourceArgs, out: &mut String) -> Result<i32, Failure> {
    let source = resolve(args)?;
    let compute = Compute::new(args.method, args.threads, args.slow);
    writeln!(out, "code: {}", source.label()).unwrap();
    let mut ok = true;
    match source {
        Source::Stabilizer { label, group } => {
            if group.k() != 1 {
                writeln!(
                    out,
                    "theorems: not applicable (k = {}, need a single logical qubit)",
                    group.k()
                )
                .unwrap();
                return Ok(EXIT_OK);
            }
            let mut group = group;
            let mut report = group.transversality_report().map_err(input_error)?;
            writeln!(out, "transversality: {}", report.verdict).unwrap();
            if report.verdict == Verdict::Swapped {
                group = group.hadamard_conjugate().map_err(input_error)?;
                report = group.transversality_report().map_err(input_error)?;
                writeln!(out, "normalized by H^n: {}", report.verdict).unwrap();
            }
            // the theorems concern a labeling where X^n and Z^n act as X and Z;
            // one exists whenever they form an anticommuting logical pair
            let pair_ok = report.transversal_pair();
            if pair_ok && report.verdict != Verdict::ExactlyTransversal {
                writeln!(out, "labeling: codewords taken as Z^n eigenstates").unwrap();
            }
            let hypotheses = Hypotheses {
                real: group.is_real_code(),
                x_exactly_transversal: pair_ok,
                z_exactly_transversal: pair_ok,
            };
            let normalized = Source::Stabilizer { label, group };
            let pair = compute.enumerators(&normalized)?;
            let report = pair.theorem_check(&hypotheses);
            render_report(&report, out);
            ok &= report.ok();
            let Source::Stabilizer { group, .. } = &normalized else {
                unreachable!()
            };
            if hypotheses.hold() && identities_allowed(group.n(), args.slow, out) {
                let space = group
                    .synthesize_codewords(LogicalBasis::Transversal)
                    .map_err(input_error)?;
                let Pair::Exact(p) = &pair else {
                    unreachable!("stabilizer enumerators are exact")
                };
                ok &= identity_checks(&space, p, out)?;
            }
        }
        Source::Codewords { space, .. } => {
            let pair = compute.enumerators(&Source::Codewords {
                label: String::new(),
                space: space.clone(),
            })?;
            let hypotheses = match &space {
                AnyCodeSpace::Exact(s) => Hypotheses::from_space(s),
                AnyCodeSpace::Float(s) => Hypotheses::from_space(s),
            };
            let report = pair.theorem_check(&hypotheses);
            render_report(&report, out);
            ok &= report.ok();
            if hypotheses.hold() && identities_allowed(space.n(), args.slow, out) {
                ok &= match (&space, &pair) {
                    (AnyCodeSpace::Exact(s), Pair::Exact(p)) => identity_checks(s, p, out)?,
                    (AnyCodeSpace::Float(s), Pair::Float(p)) => identity_checks(s, p, out)?,
                    _ => unreachable!("backend of enumerators follows the space"),
                };
            }
        }
    }
    writeln!(out, "result: {}", if ok { "pass" } else { "FAIL" }).unwrap();
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_catalog(args: &CatalogArgs, out: &mut String) -> Result<i32, Failure> {
    let Some(name) = &args.name else {
        for e in catalog::builtin_codes() {
            let kind = if e.is_stabilizer() {
                "stabilizer"
            } else {
                "external codewords"
            };
            writeln!(out, "{:<16} {:<11} {}", e.name, e.title, kind).unwrap();
        }
        return Ok(EXIT_OK);
    };
    let entry = catalog::lookup(name).map_err(input_error)?;
    let source = load_entry(&entry, args.codewords.as_ref())?;
    let pair = Compute::new(args.method, args.threads, args.slow).enumerators(&source)?;
    let Pair::Exact(pair) = pair else {
        return Err(input_error("catalog comparison needs an exact codeword file"));
    };
    writeln!(out, "{} {}", entry.name, entry.title).unwrap();
    let mut ok = true;
    for (tag, got, want) in [("A", &pair.a, entry.expected_a()), ("B", &pair.b, entry.expected_b())] {
        let row = |v: &[Rational]| v.iter().map(|c| c.render()).collect::<Vec<_>>().join(",");
        let same = *got == want;
        ok &= same;
        writeln!(out, "{tag} expected ({})", row(&want)).unwrap();
        writeln!(
            out,
            "{tag} computed ({}) {}",
            row(got),
            if same { "match" } else { "MISMATCH" }
        )
        .unwrap();
    }
    let d = pair.distance();
    let d_ok = d == qwe_core::Distance::At(entry.expected_distance);
    ok &= d_ok;
    writeln!(out, "distance expected {} computed {d}", entry.expected_distance).unwrap();
    if let (Some(want), Source::Stabilizer { group, .. }) = (entry.expected_verdict, &source) {
        let got = group.transversality_report().map_err(input_error)?.verdict;
        let real = group.is_real_code();
        ok &= got == want && real == entry.expected_real;
        writeln!(out, "transversality expected {want} computed {got}").unwrap();
        writeln!(
            out,
            "real expected {} computed {}",
            yes_no(entry.expected_real),
            yes_no(real)
        )
        .unwrap();
    }
    if let Source::Codewords { space, .. } = &source {
        let real = space.is_real();
        ok &= real == entry.expected_real;
        writeln!(
            out,
            "real expected {} computed {}",
            yes_no(entry.expected_real),
            yes_no(real)
        )
        .unwrap();
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs one command line, writing normal output to `stdout` and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(text.as_bytes());
            return EXIT_INPUT;
        }
    };
    let mut out = String::new();
    let result = match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, &mut out),
        Command::Distance(a) => cmd_distance(a, &mut out),
        Command::Check(a) => cmd_check(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
        Command::Catalog(a) => cmd_catalog(a, &mut out),
    };
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
