//! Catalog generation, campaign configuration, campaign runs and the JSON
//! report.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
#[cfg(feature = "parallel")]
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::resolve_actions;
use crate::build::{build_ring, RingSpec};
use crate::checkers::{
    explore_mccoy, fields_witness_check, hypothesis_profile, verify_annihilator_nonzero,
    verify_coefficients_in_radical, verify_compatible_membership, verify_lemma_generation, verify_main_theorem,
    verify_maximal_prime, verify_quasi_duo, verify_sn_transfer, LemmaReport, LemmaStatus, McCoyVerdict, Outcome,
    SearchMode, SearchOptions, TheoremRun, Window, EXPLORATION_LABEL,
};
use crate::error::{CheckError, RingError};
use crate::omonoid::{MonoidKind, OrderedMonoid};
use crate::props::{Flag, PropertyProfile, RingAnalysis};
use crate::ring::FiniteRing;
use crate::series::MonoidAction;
use crate::Limits;

/// Written into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Check(#[from] CheckError),
}

impl From<RingError> for HarnessError {
    fn from(e: RingError) -> Self {
        HarnessError::Check(e.into())
    }
}

/// The default catalog: `zmod n` for `2 <= n <= max_order`, then the named
/// extras whose base ring fits (`gf 4`, `smatrix 2 zmod4`, `product zmod2 zmod2`,
/// `smatrix 2 zmod2`, `smatrix 3 zmod2`, `uppertri 2 zmod2`).
pub fn catalog_generate(max_order: usize) -> Result<Vec<RingSpec>, HarnessError> {
    if max_order < 2 {
        return Err(HarnessError::InvalidArgument(format!(
            "max_order must be at least 2, got {max_order}"
        )));
    }
    let mut out: Vec<RingSpec> = (2..=max_order).map(RingSpec::ZMod).collect();
    let extras: [(&str, usize); 6] = [
        ("gf 4", 4),
        ("smatrix 2 zmod4", 4),
        ("product zmod2 zmod2", 2),
        ("smatrix 2 zmod2", 2),
        ("smatrix 3 zmod2", 2),
        ("uppertri 2 zmod2", 2),
    ];
    for (s, base) in extras {
        let spec: RingSpec = s.parse().expect("catalog specs parse");
        if base <= max_order && !out.contains(&spec) {
            out.push(spec);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckerKind {
    /// Ring-level lemmas plus the action-level membership and radical checks.
    Lemmas,
    /// Both-sided McCoy search, or exploration outside the hypotheses.
    Theorem,
    /// Polynomial zero-divisor criterion on commutative rings.
    Fields,
    SnTransfer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Exhaustive,
    Random,
}

fn default_monoids() -> Vec<MonoidKind> {
    vec![MonoidKind::Naturals]
}
fn default_actions() -> String {
    "all".into()
}
fn default_degree() -> u32 {
    2
}
fn default_trials() -> u64 {
    100_000
}
fn default_checkers() -> Vec<CheckerKind> {
    vec![
        CheckerKind::Lemmas,
        CheckerKind::Theorem,
        CheckerKind::Fields,
        CheckerKind::SnTransfer,
    ]
}
fn default_generation_bound() -> usize {
    2
}
fn default_sn() -> usize {
    2
}
fn default_lemma_degree() -> u32 {
    1
}
fn default_workers() -> usize {
    1
}

/// Campaign settings, read from TOML. Top-level keys, then `[limits]` and
/// `[ring_actions]` (per-ring action specs keyed by ring spec string).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    /// Explicit ring specs; when empty the default catalog is used.
    #[serde(default)]
    pub rings: Vec<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_max_order: Option<usize>,
    #[serde(default = "default_monoids")]
    pub monoids: Vec<MonoidKind>,
    /// Action spec for rings without an entry in `ring_actions`.
    #[serde(default = "default_actions")]
    pub actions: String,
    /// Largest window degree for the McCoy search.
    #[serde(default = "default_degree")]
    pub degree: u32,
    /// Window degree for the coefficient-radical lemma and the
    /// zero-divisor criterion.
    #[serde(default = "default_lemma_degree")]
    pub lemma_degree: u32,
    #[serde(default = "default_mode")]
    pub mode: ModeKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_checkers")]
    pub checkers: Vec<CheckerKind>,
    /// Largest index n in the generation lemma's tuples `(a_0, ..., a_n)`.
    #[serde(default = "default_generation_bound")]
    pub generation_bound: usize,
    /// Matrix size for the S_n(R) transfer check.
    #[serde(default = "default_sn")]
    pub sn_n: usize,
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Wall-clock timings per instance; reports are then no longer
    /// byte-reproducible.
    #[serde(default)]
    pub timings: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default)]
    pub limits: Limits,
    #[serde(default)]
    pub ring_actions: BTreeMap<String, String>,
}

fn default_mode() -> ModeKind {
    ModeKind::Exhaustive
}

impl Default for CampaignConfig {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

impl CampaignConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: CampaignConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &str) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
            path: path.into(),
            msg: e.to_string(),
        })?;
        Self::from_toml(&text).map_err(|e| match e {
            HarnessError::Config(m) => HarnessError::Config(format!("{path}: {m}")),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.degree < 1 {
            return bad("degree must be at least 1".into());
        }
        if self.limits.budget < 1 {
            return bad("limits.budget must be at least 1".into());
        }
        if self.workers < 1 {
            return bad("workers must be at least 1".into());
        }
        if self.monoids.is_empty() {
            return bad("monoids must not be empty".into());
        }
        if self.mode == ModeKind::Random && self.trials == 0 {
            return bad("random mode needs trials >= 1".into());
        }
        for key in self.ring_actions.keys() {
            if let Err(e) = key.parse::<RingSpec>() {
                return bad(format!("ring_actions key `{key}`: {e}"));
            }
        }
        Ok(())
    }

    /// The rings this campaign covers.
    pub fn ring_specs(&self) -> Result<Vec<RingSpec>, HarnessError> {
        if self.rings.is_empty() {
            catalog_generate(self.catalog_max_order.unwrap_or(8))
        } else {
            Ok(self.rings.clone())
        }
    }

    fn action_spec_for(&self, ring: &RingSpec) -> &str {
        self.ring_actions
            .iter()
            .find(|(k, _)| k.parse::<RingSpec>().ok().as_ref() == Some(ring))
            .map(|(_, v)| v.as_str())
            .unwrap_or(&self.actions)
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            mode: match self.mode {
                ModeKind::Exhaustive => SearchMode::Exhaustive,
                ModeKind::Random => SearchMode::Random {
                    seed: self.seed,
                    trials: self.trials,
                },
            },
            ..SearchOptions::default()
        }
    }

    fn runs(&self, c: CheckerKind) -> bool {
        self.checkers.contains(&c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Vacuous,
    Counterexample,
    Exploration,
    Skipped,
    Capacity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Ring,
    Action,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub id: usize,
    pub kind: InstanceKind,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    pub status: Status,
    /// `theorem` when the hypotheses hold, otherwise an exploration label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<PropertyProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compatible: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_hypotheses_hold: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_degree: Option<u32>,
    pub lemmas: Vec<LemmaReport>,
    pub verdicts: Vec<McCoyVerdict>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl InstanceReport {
    fn new(kind: InstanceKind, ring: &str) -> Self {
        InstanceReport {
            id: 0,
            kind,
            ring: ring.to_string(),
            monoid: None,
            action: None,
            status: Status::Skipped,
            stratum: None,
            profile: None,
            compatible: None,
            theorem_hypotheses_hold: None,
            window_degree: None,
            lemmas: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Status from the lemma reports alone.
    fn lemma_status(&self) -> Status {
        if self.lemmas.iter().any(LemmaReport::failed) {
            Status::Counterexample
        } else if self.lemmas.iter().any(|l| l.status == LemmaStatus::Holds) {
            Status::Verified
        } else if self.lemmas.iter().any(|l| l.status == LemmaStatus::Vacuous) {
            Status::Vacuous
        } else {
            Status::Skipped
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub vacuous: usize,
    pub counterexample: usize,
    pub exploration: usize,
    pub skipped: usize,
    pub capacity: usize,
    /// McCoy counterexamples on instances meeting the hypotheses.
    pub theorem_counterexamples: usize,
    pub lemma_failures: usize,
    /// Counterexamples found outside the hypotheses (no claim either way).
    pub exploration_counterexamples: usize,
}

impl Summary {
    pub fn of(instances: &[InstanceReport]) -> Summary {
        let mut s = Summary {
            total: instances.len(),
            ..Summary::default()
        };
        for i in instances {
            *match i.status {
                Status::Verified => &mut s.verified,
                Status::Vacuous => &mut s.vacuous,
                Status::Counterexample => &mut s.counterexample,
                Status::Exploration => &mut s.exploration,
                Status::Skipped => &mut s.skipped,
                Status::Capacity => &mut s.capacity,
            } += 1;
            let cex = i.verdicts.iter().filter(|v| v.outcome == Outcome::Counterexample).count();
            if i.stratum.as_deref() == Some("theorem") {
                s.theorem_counterexamples += cex;
            } else {
                s.exploration_counterexamples += cex;
            }
            s.lemma_failures += i.lemmas.iter().filter(|l| l.failed()).count();
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub version: &'static str,
    pub config: CampaignConfig,
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
}

impl CampaignReport {
    /// 0 clean, 1 a counterexample under the hypotheses, 3 capacity.
    pub fn exit_code(&self) -> i32 {
        if self.summary.counterexample > 0 {
            1
        } else if self.summary.capacity > 0 {
            3
        } else {
            0
        }
    }

    /// The summary agrees with the instance list.
    pub fn is_consistent(&self) -> bool {
        Summary::of(&self.instances) == self.summary
            && self.instances.iter().enumerate().all(|(i, r)| r.id == i)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &str, contents: &str) -> Result<(), HarnessError> {
    let io = |e: std::io::Error| HarnessError::Io {
        path: path.into(),
        msg: e.to_string(),
    };
    let target = Path::new(path);
    let dir = target.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = target.file_name().ok_or_else(|| HarnessError::Io {
        path: path.into(),
        msg: "not a file path".into(),
    })?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, target).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

/// One action instance, prepared during the ring phase.
struct ActionWork {
    ring: String,
    /// `None` when the ring itself exceeded a capacity.
    analysis: Option<Arc<RingAnalysis>>,
    monoid: OrderedMonoid,
    action: Result<Arc<MonoidAction>, String>,
    spec: String,
}

struct RingPhase {
    instance: InstanceReport,
    work: Vec<ActionWork>,
}

fn capacity_note(e: &CheckError) -> String {
    format!("capacity: {e}")
}

fn ring_phase(cfg: &CampaignConfig, spec: &RingSpec) -> Result<RingPhase, HarnessError> {
    let name = spec.to_string();
    let mut inst = InstanceReport::new(InstanceKind::Ring, &name);
    let limits = &cfg.limits;
    let analysis = match build_ring(spec).and_then(|r| RingAnalysis::new(r, limits.ideal_cap)) {
        Ok(a) => Arc::new(a),
        Err(e @ RingError::Capacity { .. }) => {
            let e = CheckError::from(e);
            inst.status = Status::Capacity;
            inst.notes.push(capacity_note(&e));
            let work = cfg
                .monoids
                .iter()
                .map(|&k| ActionWork {
                    ring: name.clone(),
                    analysis: None,
                    monoid: OrderedMonoid::new(k),
                    action: Err(capacity_note(&e)),
                    spec: cfg.action_spec_for(spec).to_string(),
                })
                .collect();
            return Ok(RingPhase { instance: inst, work });
        }
        Err(e) => return Err(e.into()),
    };
    let ring = &analysis.ring;
    inst.profile = Some(analysis.profile());
    if cfg.runs(CheckerKind::Lemmas) {
        inst.lemmas.push(verify_lemma_generation(&analysis, cfg.generation_bound));
        inst.lemmas.push(verify_quasi_duo(&analysis));
        inst.lemmas.push(verify_maximal_prime(&analysis));
        inst.lemmas.push(verify_annihilator_nonzero(&analysis));
    }
    if cfg.runs(CheckerKind::Fields) {
        if ring.is_commutative() {
            match fields_witness_check(&Arc::new(ring.clone()), cfg.lemma_degree, limits) {
                Ok(r) => inst.lemmas.push(r),
                Err(e) if e.is_capacity() => inst.notes.push(format!("zero-divisor criterion: {}", capacity_note(&e))),
                Err(e) => return Err(e.into()),
            }
        } else {
            inst.notes.push("zero-divisor criterion: not commutative, not run".into());
        }
    }
    if cfg.runs(CheckerKind::SnTransfer) {
        match verify_sn_transfer(spec, cfg.sn_n, limits) {
            Ok(r) => inst.lemmas.push(r),
            Err(e) if e.is_capacity() => inst.notes.push(format!("S_n transfer: {}", capacity_note(&e))),
            Err(e) => return Err(e.into()),
        }
    }
    inst.status = inst.lemma_status();
    let ring_arc = Arc::new(ring.clone());
    let action_spec = cfg.action_spec_for(spec);
    let mut work = Vec::new();
    for &kind in &cfg.monoids {
        let monoid = OrderedMonoid::new(kind);
        match resolve_actions(&ring_arc, &monoid, action_spec, limits) {
            Ok(actions) => work.extend(actions.into_iter().map(|a| ActionWork {
                ring: name.clone(),
                analysis: Some(analysis.clone()),
                monoid,
                action: Ok(a),
                spec: action_spec.to_string(),
            })),
            Err(e) if e.is_capacity() => work.push(ActionWork {
                ring: name.clone(),
                analysis: Some(analysis.clone()),
                monoid,
                action: Err(capacity_note(&e)),
                spec: action_spec.to_string(),
            }),
            Err(e) => {
                return Err(HarnessError::Config(format!(
                    "action `{action_spec}` for ring `{name}` over {kind}: {e}"
                )))
            }
        }
    }
    Ok(RingPhase { instance: inst, work })
}

fn stratum_of(analysis: &RingAnalysis, hypotheses: bool) -> String {
    if hypotheses {
        "theorem".into()
    } else if analysis.nil.two_primal
        && analysis.is_semiregular()
        && analysis.jacobson_nilpotent()
        && !analysis.is_abelian()
    {
        "exploration: 2-primal, not abelian".into()
    } else {
        "exploration: outside the hypotheses".into()
    }
}

fn action_phase(cfg: &CampaignConfig, w: &ActionWork) -> Result<InstanceReport, HarnessError> {
    let mut inst = InstanceReport::new(InstanceKind::Action, &w.ring);
    inst.monoid = Some(w.monoid.kind().to_string());
    let (action, analysis) = match (&w.action, &w.analysis) {
        (Ok(a), Some(an)) => (a, an),
        _ => {
            let note = match &w.action {
                Err(n) => n.as_str(),
                Ok(_) => "capacity: ring analysis",
            };
            inst.action = Some(w.spec.clone());
            inst.status = Status::Capacity;
            inst.notes.push(note.to_string());
            return Ok(inst);
        }
    };
    let ring = &analysis.ring;
    inst.action = Some(action.label().to_string());
    let limits = &cfg.limits;
    let h = hypothesis_profile(analysis, action);
    let holds = h.theorem_hypotheses_hold;
    inst.compatible = Some(h.compatible);
    inst.theorem_hypotheses_hold = Some(holds);
    inst.stratum = Some(stratum_of(analysis, holds));
    if cfg.runs(CheckerKind::Lemmas) {
        inst.lemmas.push(verify_compatible_membership(analysis, action));
        let lw = Window::degree(&w.monoid, cfg.lemma_degree);
        match verify_coefficients_in_radical(analysis, action, &lw, limits) {
            Ok(r) => inst.lemmas.push(r),
            Err(e) if e.is_capacity() => inst.notes.push(format!("coefficient-radical lemma: {}", capacity_note(&e))),
            Err(e) => return Err(e.into()),
        }
    }
    let mut status = inst.lemma_status();
    if cfg.runs(CheckerKind::Theorem) {
        let opts = cfg.search_options();
        let degree = match opts.mode {
            SearchMode::Exhaustive => Window::largest_degree_within(&w.monoid, ring.order(), cfg.degree, limits.pair_budget()),
            SearchMode::Random { .. } => Some(cfg.degree),
        };
        inst.window_degree = degree;
        match degree {
            None => {
                status = Status::Capacity;
                inst.notes.push("capacity: no exhaustive window fits the budget".into());
            }
            Some(d) => {
                if d < cfg.degree {
                    inst.notes.push(format!("window shrunk from degree {} to {d} by the budget", cfg.degree));
                }
                let win = Window::degree(&w.monoid, d);
                let run: Result<TheoremRun, CheckError> = if holds {
                    verify_main_theorem(analysis, action, &win, &opts, limits)
                } else {
                    explore_mccoy(analysis, action, &win, &opts, limits)
                };
                match run {
                    Ok(run) => {
                        let lemma_failed = status == Status::Counterexample;
                        status = if !holds {
                            inst.notes.push(EXPLORATION_LABEL.into());
                            Status::Exploration
                        } else if !run.passes || lemma_failed {
                            Status::Counterexample
                        } else if run.right.outcome == Outcome::Vacuous && run.left.outcome == Outcome::Vacuous {
                            Status::Vacuous
                        } else {
                            Status::Verified
                        };
                        inst.lemmas.push(run.report);
                        inst.verdicts.push(run.right);
                        inst.verdicts.push(run.left);
                    }
                    Err(e) if e.is_capacity() => {
                        status = Status::Capacity;
                        inst.notes.push(capacity_note(&e));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    } else if !holds && status != Status::Counterexample {
        status = Status::Skipped;
    }
    inst.status = status;
    Ok(inst)
}

fn timed<T>(enabled: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    #[cfg(feature = "parallel")]
    if enabled {
        let t = Instant::now();
        let out = f();
        return (out, Some(t.elapsed().as_millis() as u64));
    }
    let _ = enabled;
    (f(), None)
}

fn map_ordered<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, HarnessError> + Sync + Send,
) -> Result<Vec<U>, HarnessError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

fn run_inner(cfg: &CampaignConfig) -> Result<CampaignReport, HarnessError> {
    let specs = cfg.ring_specs()?;
    let phases = map_ordered(&specs, |s| {
        let (r, ms) = timed(cfg.timings, || ring_phase(cfg, s));
        r.map(|mut p| {
            p.instance.elapsed_ms = ms;
            p
        })
    })?;
    let mut instances = Vec::new();
    for p in phases {
        let actions = map_ordered(&p.work, |w| {
            let (r, ms) = timed(cfg.timings, || action_phase(cfg, w));
            r.map(|mut i| {
                i.elapsed_ms = ms;
                i
            })
        })?;
        instances.push(p.instance);
        instances.extend(actions);
    }
    for (i, inst) in instances.iter_mut().enumerate() {
        inst.id = i;
    }
    let summary = Summary::of(&instances);
    Ok(CampaignReport {
        version: VERSION,
        config: cfg.clone(),
        instances,
        summary,
    })
}

/// Runs every configured instance with up to `cfg.workers` threads and,
/// when `cfg.out` is set, writes the report atomically.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport, HarnessError> {
    cfg.validate()?;
    #[cfg(feature = "parallel")]
    let report = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| HarnessError::InvalidArgument(e.to_string()))?
        .install(|| run_inner(cfg))?;
    #[cfg(not(feature = "parallel"))]
    let report = run_inner(cfg)?;
    if let Some(out) = &cfg.out {
        write_atomic(out, &report.to_json())?;
    }
    Ok(report)
}

/// Convenience for single-ring tools: analysis plus resolved actions.
pub fn analyse(spec: &RingSpec, limits: &Limits) -> Result<(Arc<FiniteRing>, RingAnalysis), HarnessError> {
    let ring = build_ring(spec)?;
    let analysis = RingAnalysis::new(ring.clone(), limits.ideal_cap)?;
    Ok((Arc::new(ring), analysis))
}
