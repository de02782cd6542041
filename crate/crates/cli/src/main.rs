use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use thue::combinatorics::{borders, intermediate_overlaps, max_self_overlap, overlap_chain, primitive_root};
use thue::completion::{complete, minimize, verify_epsilon_theorems, MinimizedSystem};
use thue::corpus::{example1, example2, example3, example4, example5, ExampleSpec};
use thue::nullseq::{
    check_complete, check_perfect_bounded, check_perfect_syntactic, decide_bounded_null, decide_problem_two,
    PerfectionVerdict,
};
use thue::rewrite::{
    check_non_overlapping, decide_bounded, decide_fixed_length, decide_reducing, reduce_to_normal_form, Budget,
    DecisionOutcome, Derivation, EquationSystem, Mode, SearchReport, Strategy, Verdict,
};
use thue::syntax::{parse_system, SystemFile};
use thue::{Alphabet, Word};

use thue_cli::report::*;

#[derive(Parser)]
#[command(name = "thue", version, about = "Word problems, overlaps and null-sequence completion for string-rewriting systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    /// Length-preserving equations: exhaust the class.
    A,
    /// Decreasing, non-overlapping rules: compare normal forms.
    B,
}

#[derive(Args)]
struct BudgetArgs {
    /// Longest word the bounded search may visit.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_length: Option<u64>,
    /// States the bounded search may visit.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word to its normal form.
    Reduce {
        /// System file, or `-` for stdin.
        file: PathBuf,
        /// Word to reduce.
        word: String,
        /// Which redex to rewrite at each step.
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
        /// Seed for `--strategy random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay the derivation before printing it.
        #[arg(long)]
        check: bool,
    },
    /// Decide whether two words are equivalent.
    Equiv {
        /// System file, or `-` for stdin.
        file: PathBuf,
        /// First word.
        p: String,
        /// Second word.
        q: String,
        /// Use an exact decision procedure.
        #[arg(long, value_enum, conflicts_with = "bounded")]
        exact_case: Option<Case>,
        /// Use bounded breadth-first search.
        #[arg(long)]
        bounded: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Replay the witness before printing it.
        #[arg(long)]
        check: bool,
    },
    /// Generate null sequences and equations from a seed word.
    Complete {
        /// Seed null word.
        word: String,
        /// Alphabet names; defaults to the sorted symbols of the word.
        #[arg(long)]
        alphabet: Option<String>,
        /// Select an independent generating subsystem.
        #[arg(long)]
        minimize: bool,
        /// Check the minimized system's structural theorems (implies --minimize).
        #[arg(long)]
        verify: bool,
        /// Write the per-round trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Borders, primitive root and overlap structure of a word.
    Analyze {
        /// Word to analyze.
        word: String,
        /// Alphabet names; defaults to the sorted symbols of the word.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Print one of the five worked examples as a system file.
    Corpus {
        /// Example number, 1 to 5.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        example: u8,
        /// Exponents: n_1,…,n_r for example 1; n for examples 3, 4, 5.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// p for example 5.
        #[arg(long)]
        p: Option<usize>,
        /// Extra symbols for example 1.
        #[arg(long, value_delimiter = ',')]
        extra: Vec<String>,
        /// A for example 3.
        #[arg(long)]
        a: Option<String>,
        /// C for example 3.
        #[arg(long)]
        c: Option<String>,
    },
    /// Run the checks that apply to a system file.
    Check {
        /// System file, or `-` for stdin.
        file: PathBuf,
        /// Bound on |RA| for the perfection check; defaults to |R| + 3.
        #[arg(long)]
        max_len: Option<usize>,
        /// Also treat the equations as a minimized system for the null word.
        #[arg(long)]
        epsilon: bool,
    },
}

fn read_file(path: &Path) -> anyhow::Result<SystemFile> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(parse_system(&text)?)
}

fn infer_alphabet(word: &str, names: Option<&str>) -> anyhow::Result<Alphabet> {
    let tokens: Vec<String> = match names {
        Some(n) if n.contains(char::is_whitespace) => n.split_whitespace().map(String::from).collect(),
        Some(n) => n.chars().map(String::from).collect(),
        None => {
            let mut t: Vec<String> = if word.contains(char::is_whitespace) {
                word.split_whitespace().map(String::from).collect()
            } else {
                word.chars().map(String::from).collect()
            };
            t.sort();
            t.dedup();
            t
        }
    };
    Ok(Alphabet::new(tokens)?)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Equivalent => "equivalent",
        Verdict::NotEquivalent => "not-equivalent",
        Verdict::Unknown => "unknown",
    }
}

fn cmd_reduce(file: &Path, input: &str, strategy: StrategyArg, seed: u64, check: bool) -> anyhow::Result<(Report, u8)> {
    let f = read_file(file)?;
    let sys = &f.system;
    let lhs: Vec<Word> = sys.equations.iter().map(|e| e.lhs.clone()).collect();
    let overlaps = check_non_overlapping(&lhs);
    if !overlaps.passes() {
        bail!("left-hand sides overlap: {overlaps}");
    }
    let w = sys.alphabet.parse_word(input)?;
    let strategy = match strategy {
        StrategyArg::Leftmost => Strategy::Leftmost,
        StrategyArg::Rightmost => Strategy::Rightmost,
        StrategyArg::Random => Strategy::Randomized(seed),
    };
    let (nf, d) = reduce_to_normal_form(&w, &sys.with_mode(Mode::SemiThue), strategy)?;
    if check {
        d.replay(&sys.with_mode(Mode::SemiThue)).context("derivation failed to replay")?;
    }
    let report = ReduceReport {
        input: word(&sys.alphabet, &w),
        normal_form: word(&sys.alphabet, &nf),
        derivation: derivation(sys, None, &d)?,
    };
    Ok((Report::Reduce(report), 0))
}

fn cmd_equiv(
    file: &Path,
    p: &str,
    q: &str,
    exact: Option<Case>,
    bounded: bool,
    budget: &BudgetArgs,
    check: bool,
) -> anyhow::Result<(Report, u8)> {
    let f = read_file(file)?;
    let sys = &f.system;
    let (p, q) = (sys.alphabet.parse_word(p)?, sys.alphabet.parse_word(q)?);
    let mut b = Budget::default_for(&p, &q, sys);
    if let Some(n) = &f.null {
        b.max_length = b.max_length.max(p.len().max(q.len()) + n.len());
    }
    if let Some(l) = budget.max_length {
        b.max_length = l as usize;
    }
    if let Some(s) = budget.max_states {
        b.max_states = s as usize;
    }
    let (method, outcome): (&str, DecisionOutcome) = if p == q {
        let identity = DecisionOutcome {
            verdict: Verdict::Equivalent,
            witness: Some(Derivation::identity(p.clone())),
            report: SearchReport { states_explored: 1, max_length_reached: p.len(), saturated: false },
        };
        ("identical", identity)
    } else {
        match (&f.null, bounded, exact) {
            (Some(_), _, Some(_)) => bail!("--exact-case does not apply to a system with a null: line"),
            (Some(_), true, None) => ("bounded-null", decide_bounded_null(&p, &q, &f.null_system()?, b)),
            (Some(r), false, None) => {
                let bound = budget.max_length.map(|l| l as usize).unwrap_or(r.len() + 3);
                ("null-sequence", decide_problem_two(&p, &q, &f.null_system()?, bound)?)
            }
            (None, true, _) => ("bounded", decide_bounded(&p, &q, sys, b)),
            (None, false, Some(Case::A)) => ("fixed-length", decide_fixed_length(&p, &q, sys)?),
            (None, false, Some(Case::B)) => ("reducing", decide_reducing(&p, &q, sys)?),
            (None, false, None) => auto_equiv(&p, &q, sys, b)?,
        }
    };
    if check {
        if let Some(d) = &outcome.witness {
            match &f.null {
                Some(r) => d.replay_with_null(sys, r),
                None => d.replay(sys),
            }
            .context("witness failed to replay")?;
        }
    }
    let witness = match &outcome.witness {
        Some(d) => Some(derivation(sys, f.null.as_deref(), d)?),
        None => None,
    };
    let code = match outcome.verdict {
        Verdict::Equivalent => 0,
        Verdict::NotEquivalent => 1,
        Verdict::Unknown => 3,
    };
    let report = EquivReport {
        p: word(&sys.alphabet, &p),
        q: word(&sys.alphabet, &q),
        method: method.into(),
        verdict: verdict_name(outcome.verdict).into(),
        witness,
        states_explored: outcome.report.states_explored,
        saturated: outcome.report.saturated,
    };
    Ok((Report::Equiv(report), code))
}

fn auto_equiv(p: &Word, q: &Word, sys: &EquationSystem, b: Budget) -> anyhow::Result<(&'static str, DecisionOutcome)> {
    if sys.is_length_preserving() {
        return Ok(("fixed-length", decide_fixed_length(p, q, sys)?));
    }
    let lhs: Vec<Word> = sys.equations.iter().map(|e| e.lhs.clone()).collect();
    if sys.equations.iter().all(|e| e.is_decreasing()) && check_non_overlapping(&lhs).passes() {
        return Ok(("reducing", decide_reducing(p, q, sys)?));
    }
    Ok(("bounded", decide_bounded(p, q, sys, b)))
}

fn cmd_complete(
    input: &str,
    names: Option<&str>,
    minimize_flag: bool,
    verify: bool,
    trace_path: Option<&Path>,
) -> anyhow::Result<(Report, u8)> {
    let ab = infer_alphabet(input, names)?;
    let r = ab.parse_word(input)?;
    let st = complete(&ab, &r)?;
    let trace: Vec<TraceLine> = st
        .trace
        .iter()
        .map(|t| TraceLine {
            theta: t.theta,
            s_size: t.s_size,
            e_size: t.e_size,
            new_equations: t.new_equations.iter().map(|e| equation(&ab, e)).collect(),
        })
        .collect();
    if let Some(path) = trace_path {
        let mut out = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        for t in &trace {
            writeln!(out, "{}", serde_json::to_string(t)?)?;
        }
    }
    let mut code = 0;
    let (mut epsilon, mut certified, mut theorems) = (None, None, None);
    if minimize_flag || verify {
        let ms = minimize(&st)?;
        epsilon = Some(ms.epsilon.equations.iter().map(|e| equation(&ab, e)).collect());
        certified = Some(ms.certified_minimum);
        if verify {
            let report = verify_epsilon_theorems(&ms, &st);
            if !report.passed() {
                code = 1;
            }
            theorems = Some(theorem_records(&report));
        }
    }
    let report = CompleteReport {
        r: word(&ab, &r),
        alphabet: ab.names().to_vec(),
        gamma: st.gamma().iter().map(|g| word(&ab, g)).collect(),
        delta: st.delta().iter().map(|e| equation(&ab, e)).collect(),
        epsilon,
        certified_minimum: certified,
        trace,
        theorems,
    };
    Ok((Report::Complete(report), code))
}

fn theorem_records(report: &thue::completion::EpsilonReport) -> Vec<CheckRecord> {
    report
        .checks
        .iter()
        .map(|c| CheckRecord {
            name: c.name.into(),
            passed: c.passed,
            informational: false,
            detail: c.counterexample.clone().unwrap_or_else(|| "holds".into()),
        })
        .collect()
}

fn cmd_analyze(input: &str, names: Option<&str>) -> anyhow::Result<(Report, u8)> {
    let ab = infer_alphabet(input, names)?;
    let w = ab.parse_word(input)?;
    let root = primitive_root(&w);
    let self_overlap = max_self_overlap(&w).map(|so| OverlapRecord {
        u: word(&ab, &so.witness.u),
        c: word(&ab, &so.witness.c),
        d: word(&ab, &so.witness.d),
        alpha: word(&ab, &so.alpha),
        beta: word(&ab, &so.beta),
        n: so.n,
    });
    let intermediate = match intermediate_overlaps(&w) {
        Ok(v) => v.iter().map(|o| IntermediateRecord { u: word(&ab, &o.witness.u), m: o.m }).collect(),
        Err(_) => Vec::new(),
    };
    let chain = overlap_chain(&w);
    let report = AnalyzeReport {
        word: word(&ab, &w),
        length: w.len(),
        borders: borders(&w).iter().map(|b| word(&ab, b)).collect(),
        root: word(&ab, &root.root),
        exponent: root.exponent,
        self_overlap,
        intermediate,
        chain: chain
            .stages
            .iter()
            .map(|s| OverlapRecord {
                u: word(&ab, &s.u),
                c: word(&ab, &s.c),
                d: word(&ab, &s.d),
                alpha: word(&ab, &s.alpha),
                beta: word(&ab, &s.beta),
                n: s.n,
            })
            .collect(),
        chain_end: word(&ab, chain.last()),
    };
    Ok((Report::Analyze(report), 0))
}

fn cmd_corpus(
    example: u8,
    n: &[usize],
    p: Option<usize>,
    extra: &[String],
    a: Option<&str>,
    c: Option<&str>,
) -> anyhow::Result<(Report, u8)> {
    let first = |default: usize| n.first().copied().unwrap_or(default);
    let spec: ExampleSpec = match example {
        1 => {
            let ns = if n.is_empty() { vec![1] } else { n.to_vec() };
            let extra: Vec<&str> = extra.iter().map(String::as_str).collect();
            example1(&ns, &extra)?
        }
        2 => example2(),
        3 => {
            let (a, c) = (a.unwrap_or("a"), c.unwrap_or("c"));
            let ab = infer_alphabet(&format!("{a}{c}"), None)?;
            example3(&ab, &ab.parse_word(a)?, &ab.parse_word(c)?, first(3))?
        }
        4 => example4(first(2))?,
        5 => example5(first(2), p.unwrap_or(2))?,
        other => bail!("no example {other}"),
    };
    let report = CorpusReport {
        example: spec.id,
        label: spec.label.clone(),
        system: system(&spec.null_system.eqs, Some(spec.r())),
        closed_forms_hold: spec.closed_forms_hold(),
    };
    Ok((Report::Corpus(report), 0))
}

fn cmd_check(file: &Path, max_len: Option<usize>, epsilon: bool) -> anyhow::Result<(Report, u8)> {
    let f = read_file(file)?;
    let sys = &f.system;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, informational: bool, detail: String| {
        checks.push(CheckRecord { name: name.into(), passed, informational, detail });
    };
    match &f.null {
        None => {
            let lhs: Vec<Word> = sys.equations.iter().map(|e| e.lhs.clone()).collect();
            let report = check_non_overlapping(&lhs);
            push("non-overlapping", report.passes(), false, report.to_string());
            let decreasing: Vec<usize> =
                sys.equations.iter().enumerate().filter(|(_, e)| !e.is_decreasing()).map(|(i, _)| i).collect();
            let detail = if decreasing.is_empty() {
                "every equation shortens its left side".to_string()
            } else {
                format!("equations {decreasing:?} are not decreasing")
            };
            push("decreasing", decreasing.is_empty(), true, detail);
        }
        Some(r) => {
            let ns = f.null_system()?;
            let complete_report = check_complete(&ns);
            let failing: Vec<String> =
                complete_report.failing().iter().map(|&z| sys.alphabet.name(z).to_string()).collect();
            let detail = if failing.is_empty() {
                "zR ∥ Rz for every symbol z".to_string()
            } else {
                format!("zR and Rz are not parallel for z in {failing:?}")
            };
            push("complete", failing.is_empty(), false, detail);

            let bound = max_len.unwrap_or(r.len() + 3);
            match check_perfect_bounded(&ns, bound)? {
                PerfectionVerdict::PassUpToBound { words_checked, .. } => {
                    push("perfect-bounded", true, false, format!("no counterexample with |RA| ≤ {bound} ({words_checked} words)"))
                }
                PerfectionVerdict::Counterexample { a, b } => push(
                    "perfect-bounded",
                    false,
                    false,
                    format!("RA ∥ RB but not A ∥ B for A = {}, B = {}", word(&sys.alphabet, &a), word(&sys.alphabet, &b)),
                ),
            }
            match check_perfect_syntactic(&ns) {
                Ok(_) => push("cancellation-certificate", true, true, "perfect by distinct initial symbols".into()),
                Err(v) => push("cancellation-certificate", false, true, v.to_string()),
            }
            if epsilon {
                let st = complete(&sys.alphabet, r)?;
                let ms = MinimizedSystem { epsilon: sys.clone(), provenance: Vec::new(), certified_minimum: false };
                for c in theorem_records(&verify_epsilon_theorems(&ms, &st)) {
                    checks.push(CheckRecord { name: format!("epsilon/{}", c.name), ..c });
                }
            }
        }
    }
    let code = if checks.iter().all(|c| c.passed || c.informational) { 0 } else { 1 };
    Ok((Report::Check(CheckReport { checks }), code))
}

fn run(cli: &Cli) -> anyhow::Result<(Report, u8)> {
    match &cli.command {
        Command::Reduce { file, word, strategy, seed, check } => cmd_reduce(file, word, *strategy, *seed, *check),
        Command::Equiv { file, p, q, exact_case, bounded, budget, check } => {
            cmd_equiv(file, p, q, *exact_case, *bounded, budget, *check)
        }
        Command::Complete { word, alphabet, minimize, verify, trace } => {
            cmd_complete(word, alphabet.as_deref(), *minimize, *verify, trace.as_deref())
        }
        Command::Analyze { word, alphabet } => cmd_analyze(word, alphabet.as_deref()),
        Command::Corpus { example, n, p, extra, a, c } => cmd_corpus(*example, n, *p, extra, a.as_deref(), c.as_deref()),
        Command::Check { file, max_len, epsilon } => cmd_check(file, *max_len, *epsilon),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
            };
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
