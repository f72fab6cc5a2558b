//! Command-line front end: file parsing, dispatch and report rendering.
//!
//! Exit status is 0 on success, 1 when a validation check or a hypothesis
//! fails, and 2 on parse, I/O or capacity errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::characters::{
    code_voa_character, frame_decomposition_character, with_vacuum_prefactor, CharacterError,
    FrameModuleLabel,
};
use crate::gf2::text::{parse_code, parse_rows, render_code, SourceRow, TextError};
use crate::gf2::{BinaryWord, Gf2Error, LinearCode};
use crate::orbifold::{
    g_split, moonshine_pipeline, orbifold_transform, OrbifoldError, OrbifoldResult, Parity,
};
use crate::par;
use crate::qseries::{format_exponent, QSeriesError, UNITS_PER_Q};
use crate::structure::{
    FrameDecomposition, FramedStructure, StructureCodes, StructureError, ValidationOptions,
    ValidationReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("capacity: {0}")]
    Capacity(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
}

impl CliError {
    pub fn exit_status(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Hypothesis(_) => 1,
            CliError::Usage(_)
            | CliError::Io { .. }
            | CliError::Parse(_)
            | CliError::Capacity(_) => 2,
        }
    }
}

impl From<TextError> for CliError {
    fn from(e: TextError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<Gf2Error> for CliError {
    fn from(e: Gf2Error) -> Self {
        match e {
            Gf2Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<QSeriesError> for CliError {
    fn from(e: QSeriesError) -> Self {
        CliError::Capacity(e.to_string())
    }
}

impl From<CharacterError> for CliError {
    fn from(e: CharacterError) -> Self {
        match e {
            CharacterError::Gf2(g) => g.into(),
            CharacterError::Series(s) => s.into(),
            CharacterError::OddCode => CliError::Validation(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Gf2(g) => g.into(),
            StructureError::Character(c) => c.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<OrbifoldError> for CliError {
    fn from(e: OrbifoldError) -> Self {
        match e {
            OrbifoldError::Gf2(g) => g.into(),
            OrbifoldError::Structure(s) => s.into(),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// Flat `key = value` lines.
    Kv,
}

#[derive(Debug, Parser)]
#[command(name = "framed", version, about = "Structure codes of framed VOAs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Also require every word of D to have weight divisible by 8.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a structure file and report holomorphy.
    Validate { file: PathBuf },
    /// Print the dual of a code file.
    Dual { file: PathBuf },
    /// Print the weight enumerator of a code file.
    Wenum { file: PathBuf },
    /// Character of M_C, or of the [decomposition] section when present.
    Char {
        file: PathBuf,
        /// Truncate after q^N.
        #[arg(long, default_value_t = 20)]
        order: i64,
        /// Multiply by q^(-n/48).
        #[arg(long)]
        prefactor: bool,
    },
    /// Weight-one obstruction read off from the codes.
    V1 { file: PathBuf },
    /// Orbifold the structure codes by tau_delta.
    Orbifold {
        file: PathBuf,
        #[arg(long)]
        delta: String,
    },
    /// Run the delta = 110...0 orbifold pipeline and print its certificates.
    Pipeline { file: PathBuf },
    /// List even-weight delta outside C up to a weight bound.
    FindDelta {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_weight: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                CliOutput {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stdout = String::new();
    match execute(&cli, &mut stdout) {
        Ok(()) => CliOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            status: e.exit_status(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Raw contents of a structure file, with source lines kept for diagnostics.
#[derive(Debug, Clone)]
pub struct ParsedStructure {
    pub c_rows: Vec<SourceRow>,
    pub d_rows: Vec<SourceRow>,
    pub decomposition: Option<Vec<(usize, FrameModuleLabel, u64)>>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    C,
    D,
    Decomposition,
}

/// Parses the `[C]` / `[D]` / `[decomposition]` text format.
pub fn parse_structure_text(text: &str) -> Result<ParsedStructure, TextError> {
    let mut section = Section::None;
    let mut c_lines: Vec<(usize, &str)> = Vec::new();
    let mut d_lines: Vec<(usize, &str)> = Vec::new();
    let mut decomposition: Option<Vec<(usize, FrameModuleLabel, u64)>> = None;
    let (mut saw_c, mut saw_d) = (false, false);

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('[') {
            section = match trimmed.to_ascii_lowercase().as_str() {
                "[c]" => {
                    saw_c = true;
                    Section::C
                }
                "[d]" => {
                    saw_d = true;
                    Section::D
                }
                "[decomposition]" => {
                    decomposition.get_or_insert_with(Vec::new);
                    Section::Decomposition
                }
                _ => return Err(TextError::new(line, format!("unknown section {trimmed}"))),
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(TextError::new(
                    line,
                    "content before the first section header",
                ))
            }
            Section::C => c_lines.push((line, trimmed)),
            Section::D => d_lines.push((line, trimmed)),
            Section::Decomposition => {
                let (labels, mult) = trimmed.split_once(':').ok_or_else(|| {
                    TextError::new(line, "expected `h1,h2,...,hn : multiplicity`")
                })?;
                let label = FrameModuleLabel::parse(labels.trim())
                    .map_err(|e| TextError::new(line, e.to_string()))?;
                let multiplicity: u64 = mult.trim().parse().map_err(|_| {
                    TextError::new(line, format!("bad multiplicity {:?}", mult.trim()))
                })?;
                decomposition
                    .as_mut()
                    .expect("section opened")
                    .push((line, label, multiplicity));
            }
        }
    }
    if !saw_c || !saw_d {
        return Err(TextError::new(
            text.lines().count().max(1),
            "missing [C] or [D] section",
        ));
    }
    let c_rows = rows_from(&c_lines)?;
    let d_rows = rows_from(&d_lines)?;
    Ok(ParsedStructure {
        c_rows,
        d_rows,
        decomposition,
    })
}

fn rows_from(lines: &[(usize, &str)]) -> Result<Vec<SourceRow>, TextError> {
    let mut rows = Vec::new();
    for &(line, text) in lines {
        rows.extend(parse_rows([text], line)?);
    }
    Ok(rows)
}

/// Loaded structure file: the codes, line diagnostics for odd generators,
/// and the decomposition if one was given.
#[derive(Debug, Clone)]
pub struct LoadedStructure {
    pub codes: StructureCodes,
    pub odd_rows: Vec<String>,
    pub decomposition: Option<FrameDecomposition>,
}

pub fn load_structure_text(text: &str) -> Result<LoadedStructure, CliError> {
    let parsed = parse_structure_text(text)?;
    let length = parsed
        .c_rows
        .first()
        .or(parsed.d_rows.first())
        .map(|r| r.word.len())
        .ok_or_else(|| CliError::Parse("both [C] and [D] are empty".into()))?;
    let mut odd_rows = Vec::new();
    let mut build = |name: &str, rows: &[SourceRow]| -> Result<LinearCode, CliError> {
        for r in rows {
            if r.word.len() != length {
                return Err(CliError::Parse(format!(
                    "line {}: [{name}] row has length {}, expected {length}",
                    r.line,
                    r.word.len()
                )));
            }
            if r.word.weight() % 2 == 1 {
                odd_rows.push(format!(
                    "line {}: [{name}] generator {} has odd weight {}",
                    r.line,
                    r.word,
                    r.word.weight()
                ));
            }
        }
        let words: Vec<BinaryWord> = rows.iter().map(|r| r.word).collect();
        Ok(LinearCode::from_generators(length, &words)?)
    };
    let c = build("C", &parsed.c_rows)?;
    let d = build("D", &parsed.d_rows)?;
    let codes = StructureCodes::new(c, d)?;
    let decomposition = match parsed.decomposition {
        None => None,
        Some(entries) => {
            for (line, label, _) in &entries {
                if label.len() != length {
                    return Err(CliError::Parse(format!(
                        "line {line}: label has {} entries, expected {length}",
                        label.len()
                    )));
                }
            }
            let entries = entries.into_iter().map(|(_, l, m)| (l, m)).collect();
            Some(FrameDecomposition::new(length, entries)?)
        }
    };
    Ok(LoadedStructure {
        codes,
        odd_rows,
        decomposition,
    })
}

/// Parses and validates a structure file; any failed check is an error.
pub fn parse_structure_file(
    path: &Path,
    options: ValidationOptions,
) -> Result<(StructureCodes, Option<FramedStructure>), CliError> {
    let loaded = load_structure_text(&read(path)?)?;
    ensure_valid(&loaded, options)?;
    let framed = match loaded.decomposition {
        Some(d) => Some(loaded.codes.attach_decomposition(d)?),
        None => None,
    };
    Ok((loaded.codes, framed))
}

fn ensure_valid(loaded: &LoadedStructure, options: ValidationOptions) -> Result<(), CliError> {
    if !loaded.odd_rows.is_empty() {
        return Err(CliError::Validation(loaded.odd_rows.join("; ")));
    }
    let report = loaded.codes.validate_with(options);
    if !report.passed() {
        return Err(CliError::Validation(report.failures().join("; ")));
    }
    Ok(())
}

struct Out<'a> {
    buf: &'a mut String,
    format: Format,
}

impl Out<'_> {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = match self.format {
            Format::Kv => writeln!(self.buf, "{key} = {value}"),
            Format::Text => writeln!(self.buf, "{key}: {value}"),
        };
    }

    fn line(&mut self, text: impl std::fmt::Display) {
        let _ = writeln!(self.buf, "{text}");
    }

    fn is_kv(&self) -> bool {
        self.format == Format::Kv
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_validation(out: &mut Out<'_>, report: &ValidationReport, odd_rows: &[String]) {
    for check in &report.checks {
        if out.is_kv() {
            out.kv(
                &format!("check.{}", check.name.replace(' ', "_")),
                pass(check.passed),
            );
        } else {
            out.line(format!(
                "[{}] {}: {}",
                pass(check.passed),
                check.name,
                check.detail
            ));
        }
    }
    for row in odd_rows {
        if out.is_kv() {
            out.kv("diagnostic", row);
        } else {
            out.line(format!("  {row}"));
        }
    }
    out.kv("length", report.length);
    out.kv("rank", report.rank);
    out.kv("dim_C", report.dim_c);
    out.kv("dim_D", report.dim_d);
}

fn execute(cli: &Cli, buf: &mut String) -> Result<(), CliError> {
    let options = ValidationOptions { strict: cli.strict };
    let mut out = Out {
        buf,
        format: cli.format,
    };
    match &cli.command {
        Command::Validate { file } => {
            let loaded = load_structure_text(&read(file)?)?;
            let report = loaded.codes.validate_with(options);
            render_validation(&mut out, &report, &loaded.odd_rows);
            if report.passed() {
                let holomorphic = loaded.codes.is_holomorphic()?;
                out.kv("holomorphic", holomorphic);
                if let Some(d) = loaded.decomposition {
                    let entries = d.entries().len();
                    loaded.codes.attach_decomposition(d)?;
                    out.kv("decomposition_entries", entries);
                }
                Ok(())
            } else {
                let mut failures = loaded.odd_rows.clone();
                failures.extend(report.failures());
                Err(CliError::Validation(failures.join("; ")))
            }
        }
        Command::Dual { file } => {
            let code = parse_code(&read(file)?)?;
            let dual = code.dual()?;
            if out.is_kv() {
                out.kv("length", dual.length());
                out.kv("dimension", dual.dimension());
                for (i, g) in dual.generators().iter().enumerate() {
                    out.kv(&format!("generator.{i}"), g);
                }
            } else {
                out.buf.push_str(&render_code(&dual));
            }
            Ok(())
        }
        Command::Wenum { file } => {
            let code = parse_code(&read(file)?)?;
            let we = code.weight_enumerator()?;
            if out.is_kv() {
                out.kv("length", code.length());
                out.kv("dimension", code.dimension());
                out.kv("enumerator", &we);
                for (w, c) in we.counts().iter().enumerate() {
                    if *c != 0u32.into() {
                        out.kv(&format!("A.{w}"), c);
                    }
                }
            } else {
                out.line(&we);
            }
            Ok(())
        }
        Command::Char {
            file,
            order,
            prefactor,
        } => {
            if *order < 0 {
                return Err(CliError::Usage("--order must be nonnegative".into()));
            }
            let (codes, framed) = parse_structure_file(file, options)?;
            let units = order * UNITS_PER_Q;
            let (source, mut series) = match &framed {
                Some(f) => (
                    "decomposition",
                    frame_decomposition_character(f.decomposition(), units)?,
                ),
                None => ("code_voa", code_voa_character(codes.c(), units)?),
            };
            if *prefactor {
                series = with_vacuum_prefactor(&series, codes.length())?;
            }
            out.kv("source", source);
            out.kv("order", format_exponent(series.order()));
            out.kv("series", &series);
            Ok(())
        }
        Command::V1 { file } => {
            let (codes, _) = parse_structure_file(file, options)?;
            let report = codes.v1_code_obstruction()?;
            out.kv("a2", report.a2);
            out.kv("v1_nonzero_forced", report.forces_nonzero_v1());
            for w in &report.weight_two_words {
                out.kv("weight_two_word", w);
            }
            out.kv("suspicious_tau_words", report.suspicious_tau_words.len());
            for w in &report.suspicious_tau_words {
                out.kv("tau_word", format!("{w} (wt {})", w.weight()));
            }
            Ok(())
        }
        Command::Orbifold { file, delta } => {
            let (codes, _) = parse_structure_file(file, options)?;
            let delta = BinaryWord::parse(delta.trim())
                .map_err(|e| CliError::Parse(format!("--delta: {e}")))?;
            let result = orbifold_transform(&codes, &delta)?;
            render_orbifold(&mut out, &result)?;
            Ok(())
        }
        Command::Pipeline { file } => {
            let (codes, _) = parse_structure_file(file, options)?;
            let report = moonshine_pipeline(&codes)?;
            out.kv("delta", report.delta);
            for (i, cert) in report.certificates.iter().enumerate() {
                if out.is_kv() {
                    out.kv(&format!("certificate.{}", i + 1), pass(cert.passed));
                    out.kv(&format!("certificate.{}.name", i + 1), cert.name);
                } else {
                    out.line(format!(
                        "({}) [{}] {}: {}",
                        i + 1,
                        pass(cert.passed),
                        cert.name,
                        cert.detail
                    ));
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Hypothesis("pipeline certificate failed".into()))
            }
        }
        Command::FindDelta { file, max_weight } => {
            let (codes, _) = parse_structure_file(file, options)?;
            let found = find_deltas(&codes, *max_weight)?;
            out.kv("count", found.len());
            for (delta, dim_d0) in found {
                out.kv(
                    "delta",
                    format!("{delta} wt={} dim_D0={dim_d0}", delta.weight()),
                );
            }
            Ok(())
        }
    }
}

fn render_orbifold(out: &mut Out<'_>, r: &OrbifoldResult) -> Result<(), CliError> {
    out.kv("delta", r.delta);
    out.kv("parity", r.parity);
    out.kv("dim_D0", r.d0.dimension());
    for (name, code) in [("C_out", r.output.c()), ("D_out", r.output.d())] {
        out.kv(&format!("{name}.dimension"), code.dimension());
        for (i, g) in code.generators().iter().enumerate() {
            out.kv(&format!("{name}.generator.{i}"), g);
        }
    }
    out.kv("holomorphic", r.certificates.output_holomorphic);
    out.kv("a2_out", r.certificates.output_a2);
    out.kv("delta_in_C_out", r.certificates.delta_in_output_c);
    if r.parity == Parity::Even {
        let split = g_split(r)?;
        out.kv("g_plus_weight_one", split.plus.weight_one_dim);
        out.kv("g_minus_weight_one", split.minus.weight_one_count);
        out.kv(
            "g_minus_top_weight",
            format_exponent(split.minus.top_weight_halves() as i64 * 24),
        );
        out.kv("abelian_certificate", split.abelian_certificate());
    }
    Ok(())
}

/// Even-weight words `δ ∉ C` with `2 ≤ wt δ ≤ max_weight`, each with `dim D⁰`.
pub fn find_deltas(
    codes: &StructureCodes,
    max_weight: usize,
) -> Result<Vec<(BinaryWord, usize)>, CliError> {
    let n = codes.length();
    let mut candidates = Vec::new();
    let mut support = Vec::new();
    for w in (2..=max_weight.min(n)).step_by(2) {
        combinations(n, w, 0, &mut support, &mut candidates);
    }
    let dim_d = codes.d().dimension();
    let annotated = par::map(&candidates, |bits| {
        let delta = BinaryWord::from_bits(n, *bits).expect("in range");
        let in_c = codes.c().contains(&delta).expect("same length");
        let trivial = codes.d().is_orthogonal_to(&delta).expect("same length");
        (!in_c).then_some((delta, if trivial { dim_d } else { dim_d - 1 }))
    });
    Ok(annotated.into_iter().flatten().collect())
}

fn combinations(n: usize, k: usize, start: usize, support: &mut Vec<usize>, out: &mut Vec<u128>) {
    if support.len() == k {
        out.push(support.iter().fold(0u128, |acc, &i| acc | 1u128 << i));
        return;
    }
    for i in start..n {
        if n - i < k - support.len() {
            break;
        }
        support.push(i);
        combinations(n, k, i + 1, support, out);
        support.pop();
    }
}
