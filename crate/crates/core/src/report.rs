//! End-to-end analysis of a presentation and its serializable report.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::automaton::{build_automaton, classify_growth, generating_series, NormalWordAutomaton};
use crate::error::{Error, Result};
use crate::oracle::{census_counts, enumerate_census, DEFAULT_WORD_BUDGET};
use crate::presentation::{infer_weights, validate_homogeneous, Presentation, WeightInference};
use crate::rewriting::{complete, default_completion_degree, CompletionStatus, RewritingSystem};
use crate::sandwich::{
    check_monogenic_plus_finite, extract_decomposition, gamma_bounds, GammaBounds, MonogenicCheck,
    SandwichDecomposition,
};
use crate::words::{Alphabet, Word};

pub const DEFAULT_MAX_DEGREE: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Counts are reported for weights `0..=max_degree`.
    pub max_degree: u64,
    /// Completion bound; `None` means four times the heaviest relation.
    pub completion_degree: Option<u64>,
    /// Word budget for the oracle fallback.
    pub oracle_budget: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_degree: DEFAULT_MAX_DEGREE,
            completion_degree: None,
            oracle_budget: DEFAULT_WORD_BUDGET,
        }
    }
}

/// Declared weights if they balance every relation, otherwise inferred
/// ones. Fails with [`Error::NonHomogeneous`].
pub fn resolve_weights(p: &Presentation) -> Result<Vec<u64>> {
    if let Some(w) = p.declared_weights() {
        let report = validate_homogeneous(p, w);
        if let Some(v) = report.violations.first() {
            return Err(Error::NonHomogeneous(format!(
                "relation {} has sides of weight {} and {}",
                v.relation + 1,
                v.lhs_weight,
                v.rhs_weight
            )));
        }
        return Ok(w.to_vec());
    }
    match infer_weights(p) {
        WeightInference::Homogeneous(w) => Ok(w),
        WeightInference::NonHomogeneous => Err(Error::NonHomogeneous(
            "no positive weights balance every relation".into(),
        )),
    }
}

/// Everything computed for one presentation.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub presentation: Presentation,
    pub alphabet: Alphabet,
    pub system: RewritingSystem,
    /// Present when completion finished.
    pub automaton: Option<NormalWordAutomaton>,
    pub decomposition: Option<SandwichDecomposition>,
    pub gamma: Option<GammaBounds>,
    pub monogenic: Option<MonogenicCheck>,
    pub report: AnalysisReport,
}

/// Runs weights, completion, automaton, growth, series, decomposition and
/// gamma bounds. A truncated completion stops after completion and takes
/// counts from the oracle instead.
pub fn analyze(p: &Presentation, opts: &AnalysisOptions) -> Result<Analysis> {
    let weights = resolve_weights(p)?;
    let alphabet = p.alphabet(&weights)?;
    let bound = opts
        .completion_degree
        .unwrap_or_else(|| default_completion_degree(p, &weights));
    let system = complete(p, &alphabet, bound);
    let mut report = AnalysisReport {
        presentation: p.to_string(),
        generators: p.generators().to_vec(),
        weights: weights.clone(),
        completion: CompletionReport::new(&system),
        growth: None,
        counts: Vec::new(),
        counts_source: CountsSource::Automaton,
        series: None,
        decomposition: None,
        monogenic: None,
        diagnostics: Vec::new(),
    };
    let mut analysis = Analysis {
        presentation: p.clone(),
        alphabet: alphabet.clone(),
        system,
        automaton: None,
        decomposition: None,
        gamma: None,
        monogenic: None,
        report: report.clone(),
    };

    if let CompletionStatus::TruncatedAt(d) = analysis.system.status() {
        report
            .diagnostics
            .push(format!("completion truncated at degree {d}; counts from the oracle"));
        report.counts_source = CountsSource::Oracle;
        match enumerate_census(p, &weights, opts.max_degree, opts.oracle_budget) {
            Ok(census) => {
                report.counts = census_counts(&census)
                    .into_iter()
                    .map(|c| Count::from(BigUint::from(c)))
                    .collect();
            }
            Err(e) => report.diagnostics.push(e.to_string()),
        }
        analysis.report = report;
        return Ok(analysis);
    }

    let obstructions = analysis.system.obstruction_set()?;
    let dfa = build_automaton(&obstructions, &alphabet);
    let growth = classify_growth(&dfa);
    report.growth = Some(growth.to_string());
    report.counts = dfa
        .count_words(opts.max_degree)
        .into_iter()
        .map(Count::from)
        .collect();
    report.series = Some(SeriesReport::new(&generating_series(&dfa)));

    if growth.is_at_most_linear() {
        let mut dec = extract_decomposition(&dfa)?;
        dec.has_zero = p.has_zero();
        let gamma = gamma_bounds(&dec, &dfa);
        report.decomposition = Some(DecompositionReport::new(&gamma.witness, &gamma, &alphabet));
        if gamma.upper == 1 {
            let check = check_monogenic_plus_finite(&gamma.witness, &alphabet)?;
            report.monogenic = Some(MonogenicReport::new(&check, &alphabet));
            analysis.monogenic = Some(check);
        }
        analysis.decomposition = Some(dec);
        analysis.gamma = Some(gamma);
    } else {
        report.diagnostics.push(format!("not linear: growth is {growth}"));
    }
    analysis.automaton = Some(dfa);
    analysis.report = report;
    Ok(analysis)
}

/// A count: a JSON number when it fits in `u64`, a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Count {
    Small(u64),
    Big(String),
}

impl From<BigUint> for Count {
    fn from(n: BigUint) -> Self {
        match n.to_u64() {
            Some(v) => Count::Small(v),
            None => Count::Big(n.to_string()),
        }
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Count::Small(v) => write!(f, "{v}"),
            Count::Big(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountsSource {
    Automaton,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionReport {
    /// `"complete"` or `"truncated"`.
    pub status: String,
    pub truncated_at: Option<u64>,
    pub rules: Vec<String>,
}

impl CompletionReport {
    pub fn new(system: &RewritingSystem) -> Self {
        let (status, truncated_at) = match system.status() {
            CompletionStatus::Complete => ("complete", None),
            CompletionStatus::TruncatedAt(d) => ("truncated", Some(d)),
        };
        CompletionReport {
            status: status.into(),
            truncated_at,
            rules: system.rules().iter().map(|r| system.format_rule(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    /// Coefficients lowest degree first, as decimal strings.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub text: String,
}

impl SeriesReport {
    pub fn new(series: &crate::automaton::GeneratingSeries) -> Self {
        let coeffs = |p: &crate::poly::Poly| p.coeffs().iter().map(|c| c.to_string()).collect();
        SeriesReport {
            numerator: coeffs(&series.numerator),
            denominator: coeffs(&series.denominator),
            text: series.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub a: String,
    pub w: String,
    pub b: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

/// Decomposition in its JSON shape. `finite` omits the empty word, which is
/// reported through `has_unit` instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub finite: Vec<String>,
    pub has_unit: bool,
    pub has_zero: bool,
    pub sandwiches: Vec<SandwichReport>,
    pub gamma: GammaReport,
}

impl DecompositionReport {
    pub fn new(dec: &SandwichDecomposition, gamma: &GammaBounds, alphabet: &Alphabet) -> Self {
        DecompositionReport {
            finite: dec
                .finite
                .iter()
                .filter(|w| !w.is_empty())
                .map(|w| alphabet.format_word(w))
                .collect(),
            has_unit: dec.has_unit(),
            has_zero: dec.has_zero,
            sandwiches: dec
                .sandwiches
                .iter()
                .map(|s| SandwichReport {
                    a: alphabet.format_word(&s.a),
                    w: alphabet.format_word(&s.w),
                    b: alphabet.format_word(&s.b),
                })
                .collect(),
            gamma: GammaReport {
                lower: gamma.lower,
                upper: gamma.upper,
                exact: gamma.exact,
            },
        }
    }

    /// Back to words, checking every name against `alphabet`.
    pub fn to_decomposition(&self, alphabet: &Alphabet) -> Result<SandwichDecomposition> {
        let parse = |s: &str| -> Result<Word> {
            if s.is_empty() {
                return Ok(Word::empty());
            }
            alphabet.parse_word(s).map_err(Error::Validation)
        };
        let mut finite = self
            .finite
            .iter()
            .map(|s| parse(s))
            .collect::<Result<std::collections::BTreeSet<_>>>()?;
        if self.has_unit {
            finite.insert(Word::empty());
        }
        let sandwiches = self
            .sandwiches
            .iter()
            .map(|s| Ok(crate::sandwich::Sandwich::new(parse(&s.a)?, parse(&s.w)?, parse(&s.b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SandwichDecomposition {
            finite,
            has_zero: self.has_zero,
            sandwiches,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum MonogenicReport {
    Witness {
        generator: String,
        residual: Vec<String>,
    },
    Refuted {
        reason: String,
    },
}

impl MonogenicReport {
    pub fn new(check: &MonogenicCheck, alphabet: &Alphabet) -> Self {
        match check {
            MonogenicCheck::Witness {
                generator,
                residual,
            } => MonogenicReport::Witness {
                generator: alphabet.format_word(generator),
                residual: residual.iter().map(|w| alphabet.display_word(w)).collect(),
            },
            MonogenicCheck::Refuted(reason) => MonogenicReport::Refuted {
                reason: reason.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub presentation: String,
    pub generators: Vec<String>,
    pub weights: Vec<u64>,
    pub completion: CompletionReport,
    /// Absent when completion was truncated.
    pub growth: Option<String>,
    pub counts: Vec<Count>,
    pub counts_source: CountsSource,
    pub series: Option<SeriesReport>,
    pub decomposition: Option<DecompositionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monogenic: Option<MonogenicReport>,
    pub diagnostics: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
