use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewmc::actions::resolve_actions;
use skewmc::checkers::{
    explore_mccoy, fields_witness_check, hypothesis_profile, mccoy_search_both, verify_annihilator_nonzero,
    verify_coefficients_in_radical, verify_compatible_membership, verify_lemma_generation, verify_main_theorem,
    verify_maximal_prime, verify_quasi_duo, LemmaReport, McCoyVerdict, SearchMode, SearchOptions, Window,
};
use skewmc::harness::{analyse, catalog_generate, run_campaign, CampaignConfig, HarnessError};
use skewmc::{CheckError, Limits, MonoidKind, OrderedMonoid, RingError, RingSpec};

/// Exhaustive McCoy-condition checks for skew generalized power series
/// over finite rings.
#[derive(Parser)]
#[command(name = "skewmc", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum (f, g) pairs per exhaustive search.
    #[arg(long, global = true, env = "SKEWMC_BUDGET")]
    budget: Option<u64>,
    /// Largest ring order for ideal enumeration.
    #[arg(long, global = true, env = "SKEWMC_IDEAL_CAP")]
    ideal_cap: Option<usize>,
    /// Largest ring order for endomorphism enumeration.
    #[arg(long, global = true, env = "SKEWMC_ENDO_CAP")]
    endo_cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ring properties: radical, idempotents, abelian, semi-regular, ...
    Profile { ring: String },
    /// McCoy search over series supported in the degree-d window.
    Mccoy {
        ring: String,
        monoid: String,
        action: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pairs sampled in random mode.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Structural lemma checks for one ring (and optionally one action).
    Lemmas {
        ring: String,
        #[arg(long)]
        action: Option<String>,
        #[arg(long, default_value = "N")]
        monoid: String,
        /// Window degree for the coefficient-radical check.
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Largest index n in tuples (a_0, ..., a_n).
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Both-sided McCoy search under the theorem's hypotheses.
    Theorem {
        ring: String,
        monoid: String,
        action: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Run even when the hypotheses fail, labelled as exploration.
        #[arg(long)]
        explore: bool,
    },
    /// Runs a campaign from a TOML config and writes the JSON report.
    Campaign {
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Lists the default ring catalog.
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
    /// Polynomial zero-divisor criterion on a commutative ring.
    Fields {
        ring: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

/// Failure classes and their exit codes.
enum Failure {
    Invalid(String),
    Capacity(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Capacity(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        if e.is_capacity() {
            return Failure::Capacity(e.to_string());
        }
        match e {
            CheckError::Ring(RingError::Inconsistent(_)) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        CheckError::from(e).into()
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Check(c) => c.into(),
            HarnessError::Io { .. } => Failure::Internal(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<skewmc::MonoidError> for Failure {
    fn from(e: skewmc::MonoidError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

struct Ctx {
    json: bool,
    limits: Limits,
}

impl Ctx {
    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        let out = if self.json {
            serde_json::to_string_pretty(&value).expect("json")
        } else {
            text()
        };
        // a closed pipe (e.g. `| head`) is not an error
        let _ = writeln!(std::io::stdout(), "{out}");
    }
}

fn parse_ring(s: &str) -> Result<RingSpec, Failure> {
    s.parse().map_err(|e: RingError| Failure::Invalid(e.to_string()))
}

fn parse_monoid(s: &str) -> Result<OrderedMonoid, Failure> {
    Ok(OrderedMonoid::new(s.parse::<MonoidKind>()?))
}

fn verdict_line(v: &McCoyVerdict) -> String {
    let mut s = format!(
        "{:?} McCoy, {} {} [{}], window of {} exponents: {:?} ({} pairs, {} zero-divisor pairs)",
        v.side,
        v.ring,
        v.monoid,
        v.action,
        v.window.len(),
        v.outcome,
        v.pairs_examined,
        v.zero_divisor_pairs
    );
    if let Some(c) = &v.counterexample {
        s += &format!("\n  counterexample: f = {}, g = {}", c.f, c.g);
    }
    if let Some(w) = &v.witness_example {
        s += &format!("\n  e.g. f = {}, g = {}, witness c = {}", w.f, w.g, w.c_name);
    }
    s
}

fn lemma_line(r: &LemmaReport) -> String {
    let mut s = format!(
        "{:?} on {}{}: {:?} ({} instances, {} vacuous, {} failures)",
        r.lemma,
        r.ring,
        r.action.as_ref().map(|a| format!(" [{a}]")).unwrap_or_default(),
        r.status,
        r.instances_checked,
        r.vacuous_instances,
        r.conclusion_failures
    );
    if let Some(n) = &r.note {
        s += &format!("\n  note: {n}");
    }
    for f in &r.failures {
        s += &format!("\n  FAIL {}: {:?}", f.instance, f.witness);
    }
    s
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut limits = Limits::default();
    if let Some(b) = cli.budget {
        limits.budget = b;
    }
    if let Some(c) = cli.ideal_cap {
        limits.ideal_cap = c;
    }
    if let Some(c) = cli.endo_cap {
        limits.endo_cap = c;
    }
    let ctx = Ctx { json: cli.json, limits };
    let limits = &ctx.limits;
    match cli.cmd {
        Cmd::Profile { ring } => {
            let (_, a) = analyse(&parse_ring(&ring)?, limits)?;
            let p = a.profile();
            ctx.emit(serde_json::to_value(&p).expect("json"), || {
                let flag = |f: &skewmc::props::Flag| match &f.witness {
                    None => "yes".to_string(),
                    Some(w) => format!("no (witness {})", w.join(", ")),
                };
                [
                    format!("ring: {} (order {})", p.ring, p.order),
                    format!("commutative: {}", p.commutative),
                    format!("abelian: {}", flag(&p.abelian)),
                    format!("regular: {}", flag(&p.regular)),
                    format!("semi-regular: {}", flag(&p.semiregular)),
                    format!("quasi-duo: {}", flag(&p.quasi_duo)),
                    format!("2-primal: {}", flag(&p.two_primal)),
                    format!(
                        "J(R) = {{{}}}, nilpotency index {}",
                        p.radical.join(", "),
                        p.radical_nilpotency_index.map_or("none".into(), |k| k.to_string())
                    ),
                    format!(
                        "idempotents: {}",
                        p.idempotents
                            .iter()
                            .map(|i| format!("{}{}", i.elem, if i.central { "" } else { " (not central)" }))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    format!("maximal left ideals: {}", p.maximal_left_ideals.len()),
                    format!("maximal right ideals: {}", p.maximal_right_ideals.len()),
                ]
                .join("\n")
            });
            Ok(0)
        }
        Cmd::Mccoy {
            ring,
            monoid,
            action,
            degree,
            side,
            mode,
            seed,
            trials,
        } => {
            let monoid = parse_monoid(&monoid)?;
            let (r, analysis) = analyse(&parse_ring(&ring)?, limits)?;
            let opts = SearchOptions {
                mode: match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::Random => SearchMode::Random { seed, trials },
                },
                ..SearchOptions::default()
            };
            let window = Window::degree(&monoid, degree);
            let mut out = Vec::new();
            let mut code = 0;
            for a in resolve_actions(&r, &monoid, &action, limits)? {
                let holds = hypothesis_profile(&analysis, &a).theorem_hypotheses_hold;
                let (rv, lv) = mccoy_search_both(&a, &window, &opts, limits)?;
                let verdicts: Vec<McCoyVerdict> = match side {
                    SideArg::Right => vec![rv],
                    SideArg::Left => vec![lv],
                    SideArg::Both => vec![rv, lv],
                };
                if holds && verdicts.iter().any(McCoyVerdict::is_counterexample) {
                    code = 1;
                }
                out.push((a.label().to_string(), holds, verdicts));
            }
            ctx.emit(
                json!(out
                    .iter()
                    .map(|(a, h, v)| json!({"action": a, "theorem_hypotheses_hold": h, "verdicts": v}))
                    .collect::<Vec<_>>()),
                || {
                    out.iter()
                        .flat_map(|(_, h, v)| {
                            v.iter().map(move |x| {
                                format!("{}{}", verdict_line(x), if *h { "" } else { "\n  (outside the theorem's hypotheses)" })
                            })
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(code)
        }
        Cmd::Lemmas {
            ring,
            action,
            monoid,
            degree,
            bound,
        } => {
            let (r, a) = analyse(&parse_ring(&ring)?, limits)?;
            let mut reps = vec![
                verify_lemma_generation(&a, bound),
                verify_quasi_duo(&a),
                verify_maximal_prime(&a),
                verify_annihilator_nonzero(&a),
            ];
            if let Some(spec) = action {
                let monoid = parse_monoid(&monoid)?;
                for act in resolve_actions(&r, &monoid, &spec, limits)? {
                    reps.push(verify_compatible_membership(&a, &act));
                    reps.push(verify_coefficients_in_radical(&a, &act, &Window::degree(&monoid, degree), limits)?);
                }
            }
            let code = if reps.iter().any(LemmaReport::failed) { 1 } else { 0 };
            ctx.emit(json!(reps), || reps.iter().map(lemma_line).collect::<Vec<_>>().join("\n"));
            Ok(code)
        }
        Cmd::Theorem {
            ring,
            monoid,
            action,
            degree,
            explore,
        } => {
            let monoid = parse_monoid(&monoid)?;
            let (r, a) = analyse(&parse_ring(&ring)?, limits)?;
            let window = Window::degree(&monoid, degree);
            let mut runs = Vec::new();
            for act in resolve_actions(&r, &monoid, &action, limits)? {
                let run = if explore {
                    explore_mccoy(&a, &act, &window, &SearchOptions::default(), limits)?
                } else {
                    verify_main_theorem(&a, &act, &window, &SearchOptions::default(), limits)?
                };
                runs.push(run);
            }
            let code = if runs.iter().any(|r| !r.exploration && !r.passes) { 1 } else { 0 };
            ctx.emit(json!(runs), || {
                runs.iter()
                    .map(|r| {
                        let head = if r.exploration {
                            format!("{} [{}]: exploration", r.right.ring, r.right.action)
                        } else {
                            format!(
                                "{} [{}]: {}",
                                r.right.ring,
                                r.right.action,
                                if r.passes { "no counterexample" } else { "COUNTEREXAMPLE" }
                            )
                        };
                        format!("{head}\n{}\n{}\n  {}", verdict_line(&r.right), verdict_line(&r.left), r.right.caveat)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(code)
        }
        Cmd::Campaign { config, out, workers } => {
            let mut cfg = CampaignConfig::from_file(&config)?;
            if out.is_some() {
                cfg.out = out;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            // explicit flags and environment override the file
            if let Some(b) = cli.budget {
                cfg.limits.budget = b;
            }
            if let Some(c) = cli.ideal_cap {
                cfg.limits.ideal_cap = c;
            }
            if let Some(c) = cli.endo_cap {
                cfg.limits.endo_cap = c;
            }
            let report = run_campaign(&cfg)?;
            let s = &report.summary;
            ctx.emit(serde_json::to_value(s).expect("json"), || {
                format!(
                    "{} instances: {} verified, {} vacuous, {} counterexample, {} exploration, {} skipped, {} capacity{}",
                    s.total,
                    s.verified,
                    s.vacuous,
                    s.counterexample,
                    s.exploration,
                    s.skipped,
                    s.capacity,
                    cfg.out.as_ref().map(|o| format!("\nreport written to {o}")).unwrap_or_default()
                )
            });
            Ok(report.exit_code() as u8)
        }
        Cmd::Catalog { max_order } => {
            let specs: Vec<String> = catalog_generate(max_order)?.iter().map(ToString::to_string).collect();
            ctx.emit(json!(specs), || specs.join("\n"));
            Ok(0)
        }
        Cmd::Fields { ring, degree } => {
            let (r, _) = analyse(&parse_ring(&ring)?, limits)?;
            let rep = fields_witness_check(&Arc::clone(&r), degree, limits)?;
            let code = if rep.failed() { 1 } else { 0 };
            ctx.emit(json!(rep), || lemma_line(&rep));
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json {
                println!("{}", json!({"error": f.message(), "exit_code": f.code()}));
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
