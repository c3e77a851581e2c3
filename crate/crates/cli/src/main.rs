use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use linmon_core::automaton::build_automaton;
use linmon_core::oracle::{census_counts, enumerate_census, DEFAULT_WORD_BUDGET};
use linmon_core::report::{Count, CountsSource, DEFAULT_MAX_DEGREE};
use linmon_core::rewriting::default_completion_degree;
use linmon_core::{
    analyze, complete, parse_presentation, resolve_weights, Analysis, AnalysisOptions,
    CompletionStatus, Error, Presentation,
};

// A closed stdout (e.g. piping into `head`) ends the process quietly.
macro_rules! print {
    ($($t:tt)*) => {{
        use std::io::Write;
        if std::io::stdout().write_fmt(format_args!($($t)*)).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! println {
    ($($t:tt)*) => {{
        print!("{}\n", format_args!($($t)*))
    }};
}

const EXIT_INVALID: u8 = 1;
const EXIT_NON_HOMOGENEOUS: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser)]
#[command(name = "linmon", version, about = "Analyze homogeneous monoid presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: weights, completion, growth, series, decomposition.
    Analyze(Common),
    /// Check homogeneity and print the weights.
    Check(Common),
    /// Print the completed rewriting system.
    Complete(Common),
    /// Print the normal-word automaton in DOT.
    Automaton {
        #[command(flatten)]
        common: Common,
        /// Write the DOT text here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Growth class and counts.
    Growth(Common),
    /// Rational generating series of the counts.
    Series(Common),
    /// Sandwich decomposition (linear growth only).
    Decompose(Common),
    /// Bounds on the least number of free sandwiches.
    Gamma(Common),
    /// Counts by brute-force congruence enumeration.
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    /// Presentation file, or `-` for stdin.
    file: PathBuf,
    /// Largest weight to count.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comma-separated generator order, e.g. `y,x`.
    #[arg(long, value_delimiter = ',')]
    seed_order: Option<Vec<String>>,
    /// Completion bound (default: four times the heaviest relation).
    #[arg(long)]
    completion_degree: Option<u64>,
    /// Word budget for the oracle.
    #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
    budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Common {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            max_degree: self.max_degree,
            completion_degree: self.completion_degree,
            oracle_budget: self.budget,
        }
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

/// A failure already reported on stderr, carrying the exit code.
struct Exit(u8);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        eprintln!("error: {e}");
        match e {
            Error::NonHomogeneous(_) => Exit(EXIT_NON_HOMOGENEOUS),
            Error::NotComplete(_) => Exit(EXIT_TRUNCATED),
            _ => Exit(EXIT_INVALID),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code)) => ExitCode::from(code),
    }
}

fn run(command: Command) -> Result<(), Exit> {
    match command {
        Command::Analyze(c) => cmd_analyze(&c),
        Command::Check(c) => cmd_check(&c),
        Command::Complete(c) => cmd_complete(&c),
        Command::Automaton { common, output } => cmd_automaton(&common, output.as_deref()),
        Command::Growth(c) => cmd_growth(&c),
        Command::Series(c) => cmd_series(&c),
        Command::Decompose(c) => cmd_decompose(&c),
        Command::Gamma(c) => cmd_gamma(&c),
        Command::Oracle(c) => cmd_oracle(&c),
    }
}

fn load(c: &Common) -> Result<Presentation, Exit> {
    let text = if c.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| {
            eprintln!("error: reading stdin: {e}");
            Exit(EXIT_INVALID)
        })?;
        s
    } else {
        fs::read_to_string(&c.file).map_err(|e| {
            eprintln!("error: reading {}: {e}", c.file.display());
            Exit(EXIT_INVALID)
        })?
    };
    let p = parse_presentation(&text)?;
    match &c.seed_order {
        Some(order) => Ok(p.reorder(order)?),
        None => Ok(p),
    }
}

fn run_analysis(c: &Common) -> Result<Analysis, Exit> {
    let p = load(c)?;
    Ok(analyze(&p, &c.options())?)
}

fn truncated(a: &Analysis) -> Option<u64> {
    match a.system.status() {
        CompletionStatus::TruncatedAt(d) => Some(d),
        CompletionStatus::Complete => None,
    }
}

/// Reports truncation on stderr and turns it into exit code 3.
fn require_complete(a: &Analysis) -> Result<(), Exit> {
    match truncated(a) {
        Some(d) => {
            eprintln!("error: completion truncated at degree {d}");
            Err(Exit(EXIT_TRUNCATED))
        }
        None => Ok(()),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json serializes"));
}

fn counts_line(counts: &[Count]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_analyze(c: &Common) -> Result<(), Exit> {
    let a = run_analysis(c)?;
    let r = &a.report;
    if c.json() {
        println!("{}", r.to_json());
    } else {
        print!("{}", analysis_text(&a));
    }
    if truncated(&a).is_some() {
        for d in &r.diagnostics {
            eprintln!("warning: {d}");
        }
    }
    require_complete(&a)
}

fn analysis_text(a: &Analysis) -> String {
    let r = &a.report;
    let mut out = String::new();
    let weights: Vec<String> = r
        .generators
        .iter()
        .zip(&r.weights)
        .map(|(g, w)| format!("{g}={w}"))
        .collect();
    out += &format!("weights: {}\n", weights.join(" "));
    match r.completion.truncated_at {
        Some(d) => out += &format!("completion: truncated at degree {d}\n"),
        None => out += &format!("completion: complete ({} rules)\n", r.completion.rules.len()),
    }
    for rule in &r.completion.rules {
        out += &format!("  {rule}\n");
    }
    if let Some(g) = &r.growth {
        out += &format!("growth: {g}\n");
    }
    let source = match r.counts_source {
        CountsSource::Automaton => "automaton",
        CountsSource::Oracle => "oracle",
    };
    out += &format!("counts ({source}): {}\n", counts_line(&r.counts));
    if let Some(s) = &r.series {
        out += &format!("series: {}\n", s.text);
    }
    if let (Some(g), Some(d)) = (&a.gamma, &r.decomposition) {
        out += &decomposition_text(&g.witness, &a.alphabet);
        out += &format!("gamma: {}\n", gamma_text(d.gamma.lower, d.gamma.upper));
    }
    if let Some(m) = &a.monogenic {
        out += &monogenic_text(m, &a.alphabet);
    }
    for d in &r.diagnostics {
        out += &format!("note: {d}\n");
    }
    out
}

fn decomposition_text(
    d: &linmon_core::SandwichDecomposition,
    alphabet: &linmon_core::Alphabet,
) -> String {
    let finite: Vec<String> = d.finite.iter().map(|w| alphabet.display_word(w)).collect();
    let sandwiches: Vec<String> = d.sandwiches.iter().map(|s| s.format(alphabet)).collect();
    let mut out = String::from("decomposition:\n");
    out += &format!("  finite: {{{}}}\n", finite.join(", "));
    out += &format!("  zero: {}\n", if d.has_zero { "yes" } else { "no" });
    out += &format!("  sandwiches: {}\n", sandwiches.join(", "));
    out
}

fn gamma_text(lower: usize, upper: usize) -> String {
    if lower == upper {
        format!("{lower} (exact)")
    } else {
        format!("between {lower} and {upper}")
    }
}

fn monogenic_text(m: &linmon_core::MonogenicCheck, alphabet: &linmon_core::Alphabet) -> String {
    match m {
        linmon_core::MonogenicCheck::Witness {
            generator,
            residual,
        } => {
            let rest: Vec<String> = residual.iter().map(|w| alphabet.display_word(w)).collect();
            format!(
                "monogenic: <{}> plus {{{}}}\n",
                alphabet.display_word(generator),
                rest.join(", ")
            )
        }
        linmon_core::MonogenicCheck::Refuted(reason) => format!("monogenic: refuted ({reason})\n"),
    }
}

fn cmd_check(c: &Common) -> Result<(), Exit> {
    let p = load(c)?;
    match resolve_weights(&p) {
        Ok(weights) => {
            if c.json() {
                print_json(&json!({
                    "homogeneous": true,
                    "generators": p.generators(),
                    "weights": weights,
                }));
            } else {
                let pairs: Vec<String> = p
                    .generators()
                    .iter()
                    .zip(&weights)
                    .map(|(g, w)| format!("{g}={w}"))
                    .collect();
                println!("homogeneous: {}", pairs.join(" "));
            }
            Ok(())
        }
        Err(e @ Error::NonHomogeneous(_)) => {
            if c.json() {
                print_json(&json!({ "homogeneous": false, "reason": e.to_string() }));
            } else {
                println!("not homogeneous");
            }
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_complete(c: &Common) -> Result<(), Exit> {
    let p = load(c)?;
    let weights = resolve_weights(&p)?;
    let alphabet = p.alphabet(&weights)?;
    let bound = c
        .completion_degree
        .unwrap_or_else(|| default_completion_degree(&p, &weights));
    let system = complete(&p, &alphabet, bound);
    let rules: Vec<String> = system.rules().iter().map(|r| system.format_rule(r)).collect();
    if c.json() {
        let report = linmon_core::report::CompletionReport::new(&system);
        print_json(&serde_json::to_value(report).expect("json serializes"));
    } else {
        println!("{}", system.status());
        for r in rules {
            println!("{r}");
        }
    }
    match system.status() {
        CompletionStatus::Complete => Ok(()),
        CompletionStatus::TruncatedAt(d) => {
            eprintln!("error: completion truncated at degree {d}");
            Err(Exit(EXIT_TRUNCATED))
        }
    }
}

fn cmd_automaton(c: &Common, output: Option<&Path>) -> Result<(), Exit> {
    let p = load(c)?;
    let weights = resolve_weights(&p)?;
    let alphabet = p.alphabet(&weights)?;
    let bound = c
        .completion_degree
        .unwrap_or_else(|| default_completion_degree(&p, &weights));
    let system = complete(&p, &alphabet, bound);
    let obstructions = system.obstruction_set()?;
    let dot = build_automaton(&obstructions, &alphabet).to_dot();
    match output {
        Some(path) => fs::write(path, dot).map_err(|e| {
            eprintln!("error: writing {}: {e}", path.display());
            Exit(EXIT_INVALID)
        }),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}

fn cmd_growth(c: &Common) -> Result<(), Exit> {
    let a = run_analysis(c)?;
    require_complete(&a)?;
    let r = &a.report;
    let growth = r.growth.clone().unwrap_or_default();
    if c.json() {
        print_json(&json!({ "growth": growth, "counts": r.counts }));
    } else {
        println!("growth: {growth}");
        println!("counts: {}", counts_line(&r.counts));
    }
    Ok(())
}

fn cmd_series(c: &Common) -> Result<(), Exit> {
    let a = run_analysis(c)?;
    require_complete(&a)?;
    let s = a.report.series.as_ref().expect("complete systems have a series");
    if c.json() {
        print_json(&serde_json::to_value(s).expect("json serializes"));
    } else {
        println!("{}", s.text);
    }
    Ok(())
}

fn cmd_decompose(c: &Common) -> Result<(), Exit> {
    let a = run_analysis(c)?;
    require_complete(&a)?;
    let (Some(d), Some(g)) = (&a.report.decomposition, &a.gamma) else {
        let growth = a.report.growth.clone().unwrap_or_default();
        if c.json() {
            print_json(&json!({ "growth": growth, "diagnostic": "not linear" }));
        } else {
            println!("not linear: growth is {growth}");
        }
        return Ok(());
    };
    if c.json() {
        print_json(&serde_json::to_value(d).expect("json serializes"));
    } else {
        print!("{}", decomposition_text(&g.witness, &a.alphabet));
        println!("gamma: {}", gamma_text(g.lower, g.upper));
    }
    Ok(())
}

fn cmd_gamma(c: &Common) -> Result<(), Exit> {
    let a = run_analysis(c)?;
    require_complete(&a)?;
    let Some(d) = &a.report.decomposition else {
        let growth = a.report.growth.clone().unwrap_or_default();
        if c.json() {
            print_json(&json!({ "growth": growth, "diagnostic": "not linear" }));
        } else {
            println!("not linear: growth is {growth}");
        }
        return Ok(());
    };
    if c.json() {
        let mut v = serde_json::to_value(d.gamma).expect("json serializes");
        if let Some(m) = &a.report.monogenic {
            v["monogenic"] = serde_json::to_value(m).expect("json serializes");
        }
        print_json(&v);
    } else {
        println!("gamma: {}", gamma_text(d.gamma.lower, d.gamma.upper));
        if let Some(m) = &a.monogenic {
            print!("{}", monogenic_text(m, &a.alphabet));
        }
    }
    Ok(())
}

fn cmd_oracle(c: &Common) -> Result<(), Exit> {
    let p = load(c)?;
    let weights = resolve_weights(&p)?;
    let census = enumerate_census(&p, &weights, c.max_degree, c.budget)?;
    let counts = census_counts(&census);
    if c.json() {
        print_json(&json!({ "counts": counts }));
    } else {
        let line: Vec<String> = counts.iter().map(u64::to_string).collect();
        println!("counts: {}", line.join(" "));
    }
    Ok(())
}
