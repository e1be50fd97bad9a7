//! Command-line front end for the `h3audit` binary.
//!
//! Exit codes: `0` success, `1` a verification failed (the output carries a
//! witness), `2` usage error.

pub mod output;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::class_maps::ClassTag;
use crate::error::{Error, Result};
use crate::extremal::{extremal_series, sharpness_check, ExtremalSpec, Variant};
use crate::functionals::{triangle_bound, FunctionalName, TriangleInputs};
use crate::optimizer::{audit_class, Model, SearchConfig};
use crate::proof_trace::{
    majorant_max, monotonicity_report, reduced_max_with_grid, ReductionCase,
};
use crate::report::Verdict;
use crate::scalar::{format_rational, rational_to_f64};

pub use output::{CoefficientRow, CeilingRow, Format, OutputRecord, PrintedFraction, ResultItem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Slack allowed between an empirical `|H_3(1)|` and its triangle ceiling.
pub const CEILING_SLACK: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "h3audit", version, about = "Audit Hankel determinant bounds for univalent function classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the reductions, extremal functions and triangle-inequality arithmetic.
    Verify(Flags),
    /// Maximize a functional over a class numerically.
    Search(Flags),
    /// Print the expansion of an extremal function.
    Extremal(Flags),
    /// Tabulate the third Hankel determinant bounds for every class.
    Report(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Lz,
    LzReal,
    Herglotz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Paper,
    Derived,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// r, star or convex; all classes when omitted.
    #[arg(long)]
    pub class: Option<ClassTag>,
    /// t, fs, h22 or h31.
    #[arg(long)]
    pub functional: Option<FunctionalName>,
    /// Defaults to herglotz for h31 and lz otherwise.
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    #[arg(long, default_value_t = 4)]
    pub atoms: usize,
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    #[arg(long, default_value_t = 2001)]
    pub grid: usize,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = VariantArg::Paper)]
    pub variant: VariantArg,
}

impl Flags {
    fn classes(&self) -> Vec<ClassTag> {
        match self.class {
            Some(c) => vec![c],
            None => ClassTag::ALL.to_vec(),
        }
    }

    fn functional(&self) -> FunctionalName {
        self.functional.unwrap_or(FunctionalName::TA2A3A4)
    }

    fn model_for(&self, functional: FunctionalName) -> Model {
        let arg = self.model.unwrap_or(if functional == FunctionalName::H31 {
            ModelArg::Herglotz
        } else {
            ModelArg::Lz
        });
        match arg {
            ModelArg::Lz => Model::Lz,
            ModelArg::LzReal => Model::LzReal,
            ModelArg::Herglotz => Model::Herglotz(self.atoms),
        }
    }

    fn config(&self, functional: FunctionalName) -> Result<SearchConfig> {
        let config = SearchConfig {
            model: self.model_for(functional),
            grid_points_per_axis: self.grid,
            restarts: self.restarts,
            seed: self.seed,
            tol: self.tol,
            ..SearchConfig::default()
        };
        config.validate()?;
        Ok(config)
    }

    fn record_inputs(&self, record: &mut OutputRecord, functional: FunctionalName) {
        let class = self
            .class
            .map(|c| c.cli_name().to_string())
            .unwrap_or_else(|| "all".into());
        record.input("class", class);
        record.input("functional", functional.cli_name());
        record.input("model", self.model_for(functional));
        record.input("grid", self.grid);
        record.input("restarts", self.restarts);
        record.input("seed", self.seed);
        record.input("tol", self.tol);
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Invocation { code, stdout, stderr };
        }
    };
    let format = match &cli.command {
        Command::Verify(f) | Command::Search(f) | Command::Extremal(f) | Command::Report(f) => {
            f.format
        }
    };
    match run(&cli) {
        Ok((code, record)) => Invocation {
            code,
            stdout: record.render(format),
            stderr: String::new(),
        },
        Err(e) => Invocation {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs a parsed command, returning the exit code and the output record.
pub fn run(cli: &Cli) -> Result<(i32, OutputRecord)> {
    match &cli.command {
        Command::Verify(f) => verify(f),
        Command::Search(f) => search(f),
        Command::Extremal(f) => extremal(f),
        Command::Report(f) => report(f),
    }
}

fn verify(flags: &Flags) -> Result<(i32, OutputRecord)> {
    let functional = flags.functional();
    let mut record = OutputRecord::new("verify");
    flags.record_inputs(&mut record, functional);
    let mut ok = true;
    for class in flags.classes() {
        ok &= match functional {
            FunctionalName::TA2A3A4 => verify_t(class, flags, &mut record)?,
            FunctionalName::H31 => verify_h31(class, flags, &mut record)?,
            _ => verify_search(class, functional, flags, &mut record)?,
        };
    }
    let code = if ok { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((code, record))
}

/// The extremal function expected to attain the `|a2 a3 - a4|` bound.
fn attaining_variant(class: ClassTag) -> Variant {
    match class {
        ClassTag::Convex => Variant::DerivedFormula,
        _ => Variant::PaperFormula,
    }
}

fn verify_t(class: ClassTag, flags: &Flags, record: &mut OutputRecord) -> Result<bool> {
    let case = ReductionCase::for_class(class);
    let result = reduced_max_with_grid(&case, flags.tol, flags.grid)?;
    let claimed = FunctionalName::TA2A3A4
        .reference_bound(class)
        .expect("fixed functional");
    let max_ok = (result.value - rational_to_f64(&claimed)).abs() <= flags.tol;
    if !max_ok {
        record.notes.push(format!(
            "{}: reduced maximum {} at (c, rho) = ({}, {}) differs from {}",
            class.cli_name(),
            result.value,
            result.c,
            result.rho,
            format_rational(&claimed)
        ));
    }
    record.results.push(ResultItem::ReducedMax {
        class,
        result,
        claimed,
        pass: max_ok,
    });

    let mut sharp_ok = false;
    for spec in ExtremalSpec::catalog().into_iter().filter(|s| s.class == class) {
        let s = sharpness_check(&spec, FunctionalName::TA2A3A4)?;
        if spec.variant == attaining_variant(class) {
            sharp_ok = s.attains;
            if !s.attains {
                record.notes.push(format!(
                    "{}: extremal {} does not attain the bound ({} = {})",
                    class.cli_name(),
                    spec.variant,
                    s.functional.cli_name(),
                    format_rational(&s.value)
                ));
            }
        }
        if let Some(note) = &s.note {
            record
                .notes
                .push(format!("{}: extremal {}: {note}", class.cli_name(), spec.variant));
        }
        record.results.push(ResultItem::Sharpness(s));
    }

    let mono = monotonicity_report(&case, flags.grid)?;
    let mono_ok = mono.required_violations() == 0;
    for seg in &mono.segments {
        if let Some(w) = seg.witnesses.first() {
            record.notes.push(format!(
                "{}: {:?} claim on c in [{}, {}{} fails at {} grid points over {} c-values{}, e.g. c = {}, rho = {}, dF/drho = {}",
                class.cli_name(),
                seg.claimed,
                seg.c_interval.0,
                seg.c_interval.1,
                if seg.include_hi { "]" } else { ")" },
                seg.violation_count,
                seg.checked_c,
                if seg.required { "" } else { " (the bound does not depend on it)" },
                w.c,
                w.rho,
                w.derivative
            ));
        }
    }
    record.results.push(ResultItem::Monotonicity(mono));

    if class == ClassTag::Convex {
        let m = majorant_max(class, flags.tol)?;
        record.notes.push(format!(
            "convex: without the sign restriction on c the modulus majorant reaches {:.9} at c = {}; `search --class convex --functional t` audits the bound directly",
            m.value, m.c
        ));
    }
    Ok(max_ok && sharp_ok && mono_ok)
}

fn verify_search(
    class: ClassTag,
    functional: FunctionalName,
    flags: &Flags,
    record: &mut OutputRecord,
) -> Result<bool> {
    let report = audit_class(class, functional, &flags.config(functional)?)?;
    let ok = report.verdict == Verdict::AttainsWithinTol;
    if !ok {
        record.notes.push(format!(
            "{} {}: best |value| {} at params {:?} is {}",
            class.cli_name(),
            functional.cli_name(),
            report.best_modulus,
            report.best_params,
            report.verdict
        ));
    }
    record.results.push(ResultItem::Bound(report));
    Ok(ok)
}

/// `|H_3(1)|` bounds exactly as printed, unreduced.
pub fn printed_h31(class: ClassTag) -> PrintedFraction {
    let (num, den) = match class {
        ClassTag::BoundedTurning => (993, 1620),
        ClassTag::Starlike => (16, 1),
        ClassTag::Convex => (15, 24),
    };
    PrintedFraction { num, den }
}

/// Recomputes the triangle-inequality ceiling and searches for the actual
/// maxima of `|H_3(1)|` and `|a2 a3 - a4|`.
pub fn ceiling_row(class: ClassTag, flags: &Flags) -> Result<CeilingRow> {
    let inputs = TriangleInputs::for_class(class);
    let recomputed = triangle_bound(&inputs);
    let printed = printed_h31(class);
    let h31 = audit_class(class, FunctionalName::H31, &flags.config(FunctionalName::H31)?)?;
    let t = audit_class(
        class,
        FunctionalName::TA2A3A4,
        &flags.config(FunctionalName::TA2A3A4)?,
    )?;
    Ok(CeilingRow {
        class,
        constituents: vec![
            ("cap_a3", inputs.cap_a3.clone()),
            ("cap_a4", inputs.cap_a4.clone()),
            ("cap_a5", inputs.cap_a5.clone()),
            ("bound_h22", inputs.bound_h22.clone()),
            ("bound_t", inputs.bound_t.clone()),
            ("bound_fs", inputs.bound_fs.clone()),
        ],
        matches: recomputed == printed.value(),
        recomputed,
        printed,
        empirical_h31: h31.best_modulus,
        empirical_t: t.best_modulus,
    })
}

fn ceiling_notes(row: &CeilingRow, notes: &mut Vec<String>) {
    let name = row.class.cli_name();
    if !row.matches {
        notes.push(format!(
            "{name}: the constituents give {} = {:.9}, not the printed {} = {:.9}",
            format_rational(&row.recomputed),
            rational_to_f64(&row.recomputed),
            row.printed.label(),
            rational_to_f64(&row.printed.value()),
        ));
    }
    let bound_t = &row.constituents[4].1;
    if row.empirical_t > rational_to_f64(bound_t) + CEILING_SLACK {
        notes.push(format!(
            "{name}: |a2 a3 - a4| reaches {:.9} > {}, so the ceiling rests on a constituent that does not hold",
            row.empirical_t,
            format_rational(bound_t)
        ));
    }
    if row.empirical_h31 > rational_to_f64(&row.recomputed) + CEILING_SLACK {
        notes.push(format!(
            "{name}: empirical |H3(1)| {:.9} exceeds the recomputed ceiling",
            row.empirical_h31
        ));
    }
}

fn verify_h31(class: ClassTag, flags: &Flags, record: &mut OutputRecord) -> Result<bool> {
    let row = ceiling_row(class, flags)?;
    ceiling_notes(&row, &mut record.notes);
    let ok = row.matches && row.empirical_h31 <= rational_to_f64(&row.recomputed) + CEILING_SLACK;
    record.results.push(ResultItem::Ceiling(row));
    Ok(ok)
}

fn search(flags: &Flags) -> Result<(i32, OutputRecord)> {
    let functional = flags.functional();
    let config = flags.config(functional)?;
    let mut record = OutputRecord::new("search");
    flags.record_inputs(&mut record, functional);
    for class in flags.classes() {
        let report = audit_class(class, functional, &config)?;
        if report.verdict == Verdict::ExceedsBound {
            record.notes.push(format!(
                "{} {}: {:.9} exceeds the literature bound {}",
                class.cli_name(),
                functional.cli_name(),
                report.best_modulus,
                report
                    .paper_bound
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_default()
            ));
        }
        record.results.push(ResultItem::Bound(report));
    }
    Ok((EXIT_OK, record))
}

fn extremal(flags: &Flags) -> Result<(i32, OutputRecord)> {
    let class = flags
        .class
        .ok_or_else(|| Error::InvalidConfig("extremal requires --class".into()))?;
    let variant = match flags.variant {
        VariantArg::Paper => Variant::PaperFormula,
        VariantArg::Derived => Variant::DerivedFormula,
    };
    let spec = ExtremalSpec::new(class, variant)?;
    let series = extremal_series(&spec, flags.order)?;
    let mut record = OutputRecord::new("extremal");
    record.input("class", class.cli_name());
    record.input("variant", variant);
    record.input("order", flags.order);
    for (k, value) in series.coeffs().iter().enumerate().skip(1) {
        record.results.push(ResultItem::Coefficient(CoefficientRow {
            k,
            value: value.clone(),
        }));
    }
    for functional in [
        FunctionalName::TA2A3A4,
        FunctionalName::FeketeSzego,
        FunctionalName::SecondHankel,
        FunctionalName::H31,
    ] {
        let s = sharpness_check(&spec, functional)?;
        if let Some(note) = &s.note {
            let note = format!("{}: {note}", functional.cli_name());
            if !record.notes.contains(&note) {
                record.notes.push(note);
            }
        }
        record.results.push(ResultItem::Sharpness(s));
    }
    Ok((EXIT_OK, record))
}

fn report(flags: &Flags) -> Result<(i32, OutputRecord)> {
    let mut record = OutputRecord::new("report");
    flags.record_inputs(&mut record, FunctionalName::H31);
    for class in flags.classes() {
        let row = ceiling_row(class, flags)?;
        ceiling_notes(&row, &mut record.notes);
        record.results.push(ResultItem::Ceiling(row));
    }
    Ok((EXIT_OK, record))
}
