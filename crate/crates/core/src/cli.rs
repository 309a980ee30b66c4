//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 numerical or reference failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{
    converged_subset, diagnose_with, sweep, DiagnoseOptions, PTDiagnosis, SweepAxis, SweepOutcome, SweepRequest,
};
use crate::eigen::{SortMode, DEFAULT_TOL_REAL};
use crate::error::Error;
use crate::fock::hamiltonian_direct;
use crate::model::{candidate_frequencies, select_frequency, Family, FrequencyLabel, OscillatorSpec, Rejection};
use crate::reference::{self, BlockResult, Expected};
use crate::report::{self, format_num, Cell, Table, SPECTRUM_COLUMNS};
use crate::selfcheck;

#[derive(Debug, Parser)]
#[command(name = "ptosc", version, about = "Truncated-basis spectra of PT-symmetrized complex oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Classified leading spectrum and PT verdict for one oscillator
    Spectrum(SpectrumArgs),
    /// Recompute every block of the momentum-shift reference table
    Table1(FormatArgs),
    /// Recompute every block of the coordinate-shift reference table
    Table2(FormatArgs),
    /// Verdict for each point of a one-parameter grid
    Sweep(SweepArgs),
    /// Compare spectra at two basis sizes
    Converge(ConvergeArgs),
    /// Run the built-in invariant suite
    Check(FormatArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Momentum,
    Coordinate,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Momentum => Family::MomentumShift,
            FamilyArg::Coordinate => Family::CoordinateShift,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Sum,
    Diff,
    Negdiff,
    Variational,
    Manual,
}

impl From<StrategyArg> for FrequencyLabel {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Sum => FrequencyLabel::SumRoot,
            StrategyArg::Diff => FrequencyLabel::DiffRoot,
            StrategyArg::Negdiff => FrequencyLabel::NegDiffRoot,
            StrategyArg::Variational => FrequencyLabel::Variational,
            StrategyArg::Manual => FrequencyLabel::Manual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SortArg {
    Real,
    #[default]
    Magnitude,
}

impl From<SortArg> for SortMode {
    fn from(s: SortArg) -> Self {
        match s {
            SortArg::Real => SortMode::ByRealPart,
            SortArg::Magnitude => SortMode::ByMagnitude,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamName {
    #[value(name = "W")]
    W,
    #[value(name = "L")]
    L,
    #[value(name = "R")]
    R,
}

#[derive(Debug, Args)]
pub struct FormatArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Potential strength (momentum family)
    #[arg(long = "W")]
    pub w_potential: Option<f64>,
    /// Shift strength (momentum family) or kinetic strength (coordinate family)
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Shift strength (coordinate family)
    #[arg(long = "R")]
    pub r: Option<f64>,
    #[arg(long, value_enum)]
    pub strategy: StrategyArg,
    /// Auxiliary frequency, required with --strategy manual
    #[arg(long = "w")]
    pub w: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DiagArgs {
    /// Basis size
    #[arg(long = "N", default_value_t = 100)]
    pub n: usize,
    /// Number of leading eigenvalues examined
    #[arg(long, default_value_t = 40)]
    pub count: usize,
    #[arg(long = "tol-real", default_value_t = DEFAULT_TOL_REAL)]
    pub tol_real: f64,
    #[arg(long, value_enum, default_value_t = SortArg::Magnitude)]
    pub sort: SortArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub diag: DiagArgs,
    /// Write the nonzero entries of H as row,col,re,im CSV
    #[arg(long = "dump-matrix", value_name = "FILE")]
    pub dump_matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub diag: DiagArgs,
    /// Parameter to vary
    #[arg(long, value_enum)]
    pub vary: ParamName,
    /// Grid values, comma separated
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "range")]
    pub values: Vec<f64>,
    /// Grid as start:step:stop (inclusive)
    #[arg(long)]
    pub range: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 50)]
    pub n1: usize,
    #[arg(long, default_value_t = 100)]
    pub n2: usize,
    #[arg(long = "drift-tol", default_value_t = 1e-6)]
    pub drift_tol: f64,
    /// Records listed in text mode
    #[arg(long, default_value_t = 40)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Table1,
    Table2,
    Sweep,
    Converge,
    Check,
}

impl CommandKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Table1 => "table1",
            CommandKind::Table2 => "table2",
            CommandKind::Sweep => "sweep",
            CommandKind::Converge => "converge",
            CommandKind::Check => "check",
        }
    }
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: Option<OscillatorSpec>,
    pub strategy: Option<FrequencyLabel>,
    pub w: Option<f64>,
    pub options: DiagnoseOptions,
    pub format: Format,
    pub dump_matrix: Option<PathBuf>,
    pub sweep: Option<(SweepAxis, Vec<f64>)>,
    pub converge: Option<(usize, usize, f64)>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require(v: Option<f64>, flag: &str, family: Family) -> Result<f64, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required for the {family} family")))
}

/// Family parameters as `(strength, shift)`; the swept one may be absent.
fn family_params(m: &ModelArgs, swept: Option<ParamName>) -> Result<(Family, Option<f64>, Option<f64>), CliError> {
    let family = Family::from(m.family);
    let (strength, shift, stray) = match family {
        Family::MomentumShift => (m.w_potential, m.l, m.r.map(|_| "R")),
        Family::CoordinateShift => (m.l, m.r, m.w_potential.map(|_| "W")),
    };
    if let Some(flag) = stray {
        return Err(usage(format!("--{flag} does not apply to the {family} family")));
    }
    let names = match family {
        Family::MomentumShift => ("W", "L"),
        Family::CoordinateShift => ("L", "R"),
    };
    let skip = |n: &str| swept.is_some_and(|p| format!("{p:?}") == n);
    let strength = if skip(names.0) { None } else { Some(require(strength, names.0, family)?) };
    let shift = if skip(names.1) { None } else { Some(require(shift, names.1, family)?) };
    Ok((family, strength, shift))
}

fn strategy_of(m: &ModelArgs) -> Result<(FrequencyLabel, Option<f64>), CliError> {
    let label = FrequencyLabel::from(m.strategy);
    match (label, m.w) {
        (FrequencyLabel::Manual, None) => Err(usage("--strategy manual requires --w")),
        (FrequencyLabel::Manual, Some(w)) if !(w.is_finite() && w > 0.0) => Err(usage(format!("--w must be > 0, got {w}"))),
        (FrequencyLabel::Manual, Some(w)) => Ok((label, Some(w))),
        (_, Some(_)) => Err(usage("--w is only allowed with --strategy manual")),
        (_, None) => Ok((label, None)),
    }
}

fn diag_options(d: &DiagArgs) -> Result<DiagnoseOptions, CliError> {
    if d.count == 0 || d.count > d.n {
        return Err(usage(format!("--count must be between 1 and N (count={}, N={})", d.count, d.n)));
    }
    if d.n < crate::fock::MIN_HAMILTONIAN_BASIS {
        return Err(usage(format!("--N must be at least {}", crate::fock::MIN_HAMILTONIAN_BASIS)));
    }
    if !(d.tol_real.is_finite() && d.tol_real > 0.0) {
        return Err(usage("--tol-real must be > 0"));
    }
    Ok(DiagnoseOptions { basis_size: d.n, examined_count: d.count, tol_real: d.tol_real, sort_mode: d.sort.into() })
}

fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || usage(format!("--range expects start:step:stop, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let (start, step, stop) = (nums[0], nums[1], nums[2]);
    if !(step.is_finite() && step > 0.0 && start.is_finite() && stop.is_finite() && stop >= start) {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let base = |command, format| RunConfig {
            command,
            spec: None,
            strategy: None,
            w: None,
            options: DiagnoseOptions::default(),
            format,
            dump_matrix: None,
            sweep: None,
            converge: None,
        };
        match cli.command {
            CliCommand::Table1(f) => Ok(base(CommandKind::Table1, f.format)),
            CliCommand::Table2(f) => Ok(base(CommandKind::Table2, f.format)),
            CliCommand::Check(f) => Ok(base(CommandKind::Check, f.format)),
            CliCommand::Spectrum(a) => {
                let (family, s, h) = family_params(&a.model, None)?;
                let spec = OscillatorSpec::new(family, s.unwrap_or_default(), h.unwrap_or_default()).map_err(|e| usage(e.to_string()))?;
                let (label, w) = strategy_of(&a.model)?;
                Ok(RunConfig {
                    spec: Some(spec),
                    strategy: Some(label),
                    w,
                    options: diag_options(&a.diag)?,
                    dump_matrix: a.dump_matrix,
                    ..base(CommandKind::Spectrum, a.diag.format)
                })
            }
            CliCommand::Sweep(a) => {
                let (family, s, h) = family_params(&a.model, Some(a.vary))?;
                let axis = match (family, a.vary) {
                    (Family::MomentumShift, ParamName::W) | (Family::CoordinateShift, ParamName::L) => SweepAxis::Strength,
                    (Family::MomentumShift, ParamName::L) | (Family::CoordinateShift, ParamName::R) => SweepAxis::Shift,
                    (_, p) => return Err(usage(format!("--vary {p:?} does not apply to the {family} family"))),
                };
                let values = match &a.range {
                    Some(r) => parse_range(r)?,
                    None if a.values.is_empty() => return Err(usage("sweep needs --values or --range")),
                    None => a.values.clone(),
                };
                let (label, w) = strategy_of(&a.model)?;
                // the swept parameter is a placeholder until each grid point
                let spec = OscillatorSpec::new(family, s.unwrap_or(1.0), h.unwrap_or(0.0)).map_err(|e| usage(e.to_string()))?;
                Ok(RunConfig {
                    spec: Some(spec),
                    strategy: Some(label),
                    w,
                    options: diag_options(&a.diag)?,
                    sweep: Some((axis, values)),
                    ..base(CommandKind::Sweep, a.diag.format)
                })
            }
            CliCommand::Converge(a) => {
                let (family, s, h) = family_params(&a.model, None)?;
                let spec = OscillatorSpec::new(family, s.unwrap_or_default(), h.unwrap_or_default()).map_err(|e| usage(e.to_string()))?;
                let (label, w) = strategy_of(&a.model)?;
                if !(4 <= a.n1 && a.n1 < a.n2) {
                    return Err(usage(format!("need 4 <= --n1 < --n2 (n1={}, n2={})", a.n1, a.n2)));
                }
                if !(a.drift_tol.is_finite() && a.drift_tol > 0.0) {
                    return Err(usage("--drift-tol must be > 0"));
                }
                let options = DiagnoseOptions { examined_count: a.count.min(a.n1).max(1), ..DiagnoseOptions::default() };
                Ok(RunConfig {
                    spec: Some(spec),
                    strategy: Some(label),
                    w,
                    options,
                    converge: Some((a.n1, a.n2, a.drift_tol)),
                    ..base(CommandKind::Converge, a.format)
                })
            }
        }
    }
}

/// `true` when every check or reference comparison passed.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    match cfg.command {
        CommandKind::Spectrum => run_spectrum(cfg, out),
        CommandKind::Table1 => run_table(cfg, 1, out),
        CommandKind::Table2 => run_table(cfg, 2, out),
        CommandKind::Sweep => run_sweep(cfg, out),
        CommandKind::Converge => run_converge(cfg, out),
        CommandKind::Check => run_check(cfg, out),
    }
}

/// Parses `args`, runs, and maps the outcome to an exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg, out));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "ptosc: {e}");
            e.exit_code()
        }
    }
}

fn fmt_value(re: f64, im: f64, tol: f64) -> String {
    if im.abs() <= tol * re.hypot(im).max(1.0) {
        format!("{re:.1}")
    } else {
        format!("{re:.2} {} {:.2}i", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

fn param_cells(spec: &OscillatorSpec) -> [Cell; 4] {
    let (w, l, r) = spec.named_params();
    [Cell::from(spec.family().as_str()), w.into(), l.into(), r.into()]
}

fn spectrum_table(diags: &[&PTDiagnosis]) -> Table {
    let mut t = Table::new(&SPECTRUM_COLUMNS);
    for d in diags {
        for (i, z, class) in d.examined() {
            let mut row: Vec<Cell> = param_cells(&d.spec).into();
            row.extend([
                Cell::from(d.choice.label().as_str()),
                Cell::from(d.choice.w()),
                Cell::from(d.basis_size),
                Cell::from(i),
                Cell::from(z.re),
                Cell::from(z.im),
                Cell::from(class.to_string()),
                Cell::from(d.verdict.as_str()),
            ]);
            t.push(row);
        }
    }
    t
}

fn describe_spec(spec: &OscillatorSpec) -> String {
    match spec.named_params() {
        (Some(w), Some(l), None) => format!("momentum  W={w}  L={l}"),
        (None, Some(l), Some(r)) => format!("coordinate  L={l}  R={r}"),
        _ => spec.to_string(),
    }
}

fn verdict_remark(d: &PTDiagnosis) -> &'static str {
    if d.verdict.pt_holds() {
        "PT condition holds"
    } else {
        "PT condition fails"
    }
}

fn write_rejections(out: &mut dyn Write, rejected: &[Rejection]) -> io::Result<()> {
    for r in rejected {
        writeln!(out, "# rejected candidate {}: {}", r.label, r.reason)?;
    }
    Ok(())
}

fn run_spectrum(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let spec = cfg.spec.expect("validated");
    let choice = select_frequency(&spec, cfg.strategy.expect("validated"), cfg.w)?;
    if let Some(path) = &cfg.dump_matrix {
        let h = hamiltonian_direct(&spec, choice.w(), cfg.options.basis_size)?;
        let mut f = BufWriter::new(File::create(path)?);
        h.write_nonzero_csv(&mut f)?;
        f.flush()?;
    }
    let d = diagnose_with(&spec, &choice, &cfg.options)?;
    match cfg.format {
        Format::Csv => spectrum_table(&[&d]).write_csv(out)?,
        Format::Json => report::write_json(out, "spectrum", spectrum_table(&[&d]).to_json())?,
        Format::Text => {
            writeln!(
                out,
                "# {}  strategy={}  w={}  N={}  count={}",
                describe_spec(&spec),
                choice.label(),
                format_num(choice.w()),
                d.basis_size,
                d.examined_count
            )?;
            write_rejections(out, &candidate_frequencies(&spec).rejected)?;
            writeln!(out, "{:>5}  {:>24}  class", "index", "eigenvalue")?;
            for (i, z, class) in d.examined() {
                writeln!(out, "{i:>5}  {:>24}  {class}", fmt_value(z.re, z.im, cfg.options.tol_real))?;
            }
            writeln!(out, "verdict: {} ({})", d.verdict, verdict_remark(&d))?;
        }
    }
    Ok(true)
}

const TABLE_COLUMNS: [&str; 17] = [
    "table", "block", "family", "W", "L", "R", "strategy", "w", "N", "check", "expected", "computed", "computed_re", "computed_im", "abs_error", "tol", "pass",
];

fn expected_text(e: &Expected) -> String {
    match e {
        Expected::Real(x) => format!("{x}"),
        Expected::Pair { re, im } => format!("{re}±{im}i"),
        Expected::Verdict(v) => v.as_str().to_owned(),
    }
}

fn table_rows(results: &[BlockResult]) -> Table {
    let mut t = Table::new(&TABLE_COLUMNS);
    for r in results {
        for row in &r.rows {
            let check = match row.expected {
                Expected::Real(_) => "real",
                Expected::Pair { .. } => "pair",
                Expected::Verdict(_) => "verdict",
            };
            let mut cells = vec![Cell::from(r.block.table as usize), Cell::from(r.block.block)];
            cells.extend(param_cells(&r.spec));
            cells.extend([
                Cell::from(r.choice.label().as_str()),
                Cell::from(r.choice.w()),
                Cell::from(r.diagnosis.basis_size),
                Cell::from(check),
                Cell::from(expected_text(&row.expected)),
                row.computed_verdict.map_or(Cell::Empty, |v| Cell::from(v.as_str())),
                row.computed.map(|z| z.re).into(),
                row.computed.map(|z| z.im).into(),
                row.abs_error.into(),
                row.tol.into(),
                Cell::from(row.pass),
            ]);
            t.push(cells);
        }
    }
    t
}

fn run_table(cfg: &RunConfig, number: u8, out: &mut dyn Write) -> Result<bool, CliError> {
    let results = reference::table(number).iter().map(|b| b.evaluate()).collect::<Result<Vec<_>, _>>()?;
    let all_pass = results.iter().all(BlockResult::pass);
    let command = if number == 1 { "table1" } else { "table2" };
    match cfg.format {
        Format::Csv => table_rows(&results).write_csv(out)?,
        Format::Json => report::write_json(out, command, table_rows(&results).to_json())?,
        Format::Text => {
            let name = if number == 1 { "I" } else { "II" };
            for r in &results {
                writeln!(
                    out,
                    "Table {name} block {}: {}  w={}={}  N={}",
                    r.block.block,
                    describe_spec(&r.spec),
                    r.block.w_text,
                    format_num(r.choice.w()),
                    r.diagnosis.basis_size
                )?;
                writeln!(out, "  {:<18} {:<24} {:>10} {:>8}  result", "reference", "computed", "error", "tol")?;
                for row in &r.rows {
                    let computed = match (row.computed, row.computed_verdict) {
                        (Some(z), _) => fmt_value(z.re, z.im, DEFAULT_TOL_REAL),
                        (None, Some(v)) => v.as_str().to_owned(),
                        (None, None) => "-".to_owned(),
                    };
                    let err = row.abs_error.map_or("-".to_owned(), |e| format!("{e:.2e}"));
                    let tol = row.tol.map_or("-".to_owned(), |t| format!("{t:.0e}"));
                    writeln!(
                        out,
                        "  {:<18} {:<24} {:>10} {:>8}  {}",
                        expected_text(&row.expected),
                        computed,
                        err,
                        tol,
                        if row.pass { "PASS" } else { "FAIL" }
                    )?;
                }
                writeln!(out, "  block {}: {}", r.block.block, if r.pass() { "PASS" } else { "FAIL" })?;
            }
            let passed = results.iter().filter(|r| r.pass()).count();
            writeln!(out, "{passed}/{} blocks match the reference table", results.len())?;
        }
    }
    Ok(all_pass)
}

const SWEEP_COLUMNS: [&str; 14] = [
    "index", "family", "W", "L", "R", "strategy", "w", "N", "count", "verdict", "n_real", "n_pair", "n_stray", "detail",
];

fn run_sweep(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let spec = cfg.spec.expect("validated");
    let (axis, values) = cfg.sweep.clone().expect("validated");
    let req = SweepRequest {
        family: spec.family(),
        strength: spec.strength(),
        shift: spec.shift(),
        axis,
        values,
        strategy: cfg.strategy.expect("validated"),
        manual_w: cfg.w,
        options: cfg.options,
    };
    let rows = sweep(&req);
    let mut t = Table::new(&SWEEP_COLUMNS);
    let mut ok = true;
    for row in &rows {
        let params: [Cell; 4] = match &row.spec {
            Some(s) => param_cells(s),
            None => {
                let (s, h) = match axis {
                    SweepAxis::Strength => (row.value, req.shift),
                    SweepAxis::Shift => (req.strength, row.value),
                };
                match req.family {
                    Family::MomentumShift => [Cell::from("momentum"), s.into(), h.into(), Cell::Empty],
                    Family::CoordinateShift => [Cell::from("coordinate"), Cell::Empty, s.into(), h.into()],
                }
            }
        };
        let mut cells = vec![Cell::from(row.index)];
        cells.extend(params);
        cells.push(Cell::from(req.strategy.as_str()));
        match &row.outcome {
            SweepOutcome::Diagnosed(d) => {
                let mut n_real = 0;
                let mut n_pair = 0;
                let mut n_stray = 0;
                for (_, _, l) in d.examined() {
                    match l {
                        crate::eigen::ValueClass::Real => n_real += 1,
                        crate::eigen::ValueClass::Pair(_) => n_pair += 1,
                        crate::eigen::ValueClass::Stray => n_stray += 1,
                    }
                }
                cells.extend([
                    Cell::from(d.choice.w()),
                    Cell::from(d.basis_size),
                    Cell::from(d.examined_count),
                    Cell::from(d.verdict.as_str()),
                    Cell::from(n_real as usize),
                    Cell::from(n_pair as usize),
                    Cell::from(n_stray as usize),
                    Cell::Empty,
                ]);
            }
            SweepOutcome::Rejected(reason) => {
                cells.extend([Cell::Empty, Cell::from(req.options.basis_size), Cell::from(req.options.examined_count), Cell::from("rejected")]);
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::from(reason.clone())]);
            }
            SweepOutcome::Failed(e) => {
                ok = false;
                cells.extend([Cell::Empty, Cell::from(req.options.basis_size), Cell::from(req.options.examined_count), Cell::from("failed")]);
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::from(e.to_string())]);
            }
        }
        t.push(cells);
    }
    match cfg.format {
        Format::Csv => t.write_csv(out)?,
        Format::Json => report::write_json(out, "sweep", t.to_json())?,
        Format::Text => {
            writeln!(out, "{:>5}  {:>10}  {:>12}  {:<18}  {:>5} {:>5} {:>5}  detail", "index", "value", "w", "verdict", "real", "pair", "stray")?;
            for (row, cells) in rows.iter().zip(&t.rows) {
                let text = |c: &Cell| match c {
                    Cell::Num(x) => format_num(*x),
                    Cell::Int(i) => i.to_string(),
                    Cell::Text(s) => s.clone(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Empty => "-".into(),
                };
                writeln!(
                    out,
                    "{:>5}  {:>10}  {:>12}  {:<18}  {:>5} {:>5} {:>5}  {}",
                    row.index,
                    format_num(row.value),
                    text(&cells[6]),
                    text(&cells[9]),
                    text(&cells[10]),
                    text(&cells[11]),
                    text(&cells[12]),
                    match &cells[13] {
                        Cell::Empty => String::new(),
                        c => text(c),
                    }
                )?;
            }
        }
    }
    Ok(ok)
}

const CONVERGE_COLUMNS: [&str; 8] = ["index", "small_re", "small_im", "large_re", "large_im", "drift", "stable", "stable_count"];

fn run_converge(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let spec = cfg.spec.expect("validated");
    let choice = select_frequency(&spec, cfg.strategy.expect("validated"), cfg.w)?;
    let (n1, n2, tol) = cfg.converge.expect("validated");
    let rep = converged_subset(&spec, &choice, n1, n2, tol)?;
    let mut t = Table::new(&CONVERGE_COLUMNS);
    for (i, r) in rep.records.iter().enumerate() {
        t.push(vec![
            Cell::from(i),
            r.small.re.into(),
            r.small.im.into(),
            r.large.re.into(),
            r.large.im.into(),
            r.drift.into(),
            Cell::from(i < rep.stable_count),
            Cell::from(rep.stable_count),
        ]);
    }
    match cfg.format {
        Format::Csv => t.write_csv(out)?,
        Format::Json => report::write_json(out, "converge", t.to_json())?,
        Format::Text => {
            writeln!(out, "# {}  strategy={}  w={}  N1={n1}  N2={n2}  drift-tol={tol:e}", describe_spec(&spec), choice.label(), format_num(choice.w()))?;
            writeln!(out, "{:>5}  {:>24}  {:>24}  {:>10}", "index", "at N1", "nearest at N2", "drift")?;
            for (i, r) in rep.records.iter().take(cfg.options.examined_count).enumerate() {
                writeln!(
                    out,
                    "{i:>5}  {:>24}  {:>24}  {:>10.2e}{}",
                    fmt_value(r.small.re, r.small.im, DEFAULT_TOL_REAL),
                    fmt_value(r.large.re, r.large.im, DEFAULT_TOL_REAL),
                    r.drift,
                    if i < rep.stable_count { "" } else { "  *" }
                )?;
            }
            writeln!(out, "stable leading eigenvalues: {} of {}", rep.stable_count, rep.records.len())?;
        }
    }
    Ok(true)
}

fn run_check(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let results = selfcheck::run_all();
    let passed = results.iter().filter(|r| r.passed).count();
    match cfg.format {
        Format::Text => {
            for r in &results {
                writeln!(out, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail)?;
            }
            writeln!(out, "{passed}/{} checks passed", results.len())?;
        }
        Format::Csv | Format::Json => {
            let mut t = Table::new(&["name", "passed", "detail"]);
            for r in &results {
                t.push(vec![Cell::from(r.name.clone()), Cell::from(r.passed), Cell::from(r.detail.clone())]);
            }
            if cfg.format == Format::Csv {
                t.write_csv(out)?;
            } else {
                report::write_json(out, "check", json!(t.to_json()))?;
            }
        }
    }
    Ok(passed == results.len())
}
