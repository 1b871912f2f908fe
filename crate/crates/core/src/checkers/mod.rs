//! Instance-level checks: the McCoy search itself, the supporting lemmas,
//! and the aggregated theorem run.

pub mod lemmas;
pub mod search;
pub mod theorem;

use serde::Serialize;

pub use lemmas::{
    hypothesis_profile, verify_annihilator_nonzero, verify_coefficients_in_radical, verify_compatible_membership,
    verify_lemma_generation, verify_maximal_prime, verify_quasi_duo, HypothesisProfile,
};
pub use search::{
    mccoy_search, mccoy_search_both, replay_counterexample, replay_verdict, replay_witness, Counterexample,
    EnumerationOrder, McCoyVerdict, Outcome, Refutation, SearchMode, SearchOptions, Window, WitnessExample,
    WINDOW_CAVEAT,
};
pub use theorem::{
    explore_mccoy, fields_witness_check, two_primal_exploration, verify_main_theorem, verify_sn_transfer,
    ExplorationEntry, ExplorationReport, TheoremRun, EXPLORATION_LABEL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// Σ R a_i R = R implies Σ R a_i = R.
    Generation,
    /// Abelian semi-regular rings are quasi-duo.
    QuasiDuo,
    /// Maximal one-sided ideals are two-sided and prime.
    MaximalPrime,
    /// Maximal one-sided ideals have nonzero annihilators.
    AnnihilatorNonzero,
    /// ab ∈ M iff a ω_s(b) ∈ M.
    CompatibleMembership,
    /// C_f escaping every maximal right ideal forces C_g ⊆ J(R).
    CoefficientsInRadical,
    MainTheorem,
    /// Polynomial shadow of the power-series zero-divisor criterion.
    FieldsShadow,
    SnTransfer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaStatus {
    /// Hypotheses hold and every non-vacuous instance satisfied the conclusion.
    Holds,
    Failed,
    /// Hypotheses hold but no instance reached the conclusion.
    Vacuous,
    Skipped,
}

/// One checked instance. `conclusion_holds` is `None` when the instance is
/// vacuous (its antecedent is false).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub instance: String,
    pub conclusion_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

/// How many passing instances a report keeps as samples.
pub const SAMPLE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    pub hypotheses_hold: bool,
    pub status: LemmaStatus,
    pub instances_checked: u64,
    pub vacuous_instances: u64,
    pub conclusion_failures: u64,
    /// Every failing instance.
    pub failures: Vec<InstanceOutcome>,
    /// The first few passing instances.
    pub samples: Vec<InstanceOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    pub(crate) fn new(lemma: LemmaId, ring: &str, action: Option<&str>, hypotheses_hold: bool) -> Self {
        LemmaReport {
            lemma,
            ring: ring.to_string(),
            action: action.map(str::to_string),
            hypotheses_hold,
            status: LemmaStatus::Skipped,
            instances_checked: 0,
            vacuous_instances: 0,
            conclusion_failures: 0,
            failures: Vec::new(),
            samples: Vec::new(),
            note: None,
        }
    }

    pub(crate) fn skipped(lemma: LemmaId, ring: &str, action: Option<&str>, reason: impl Into<String>) -> Self {
        let mut r = LemmaReport::new(lemma, ring, action, false);
        r.note = Some(reason.into());
        r
    }

    pub(crate) fn vacuous(&mut self, instance: impl Into<String>) {
        self.instances_checked += 1;
        self.vacuous_instances += 1;
        if self.samples.len() < SAMPLE_LIMIT {
            self.samples.push(InstanceOutcome {
                instance: instance.into(),
                conclusion_holds: None,
                witness: None,
            });
        }
    }

    pub(crate) fn pass(&mut self, instance: impl Into<String>, witness: Option<Vec<String>>) {
        self.instances_checked += 1;
        if self.samples.len() < SAMPLE_LIMIT {
            self.samples.push(InstanceOutcome {
                instance: instance.into(),
                conclusion_holds: Some(true),
                witness,
            });
        }
    }

    pub(crate) fn fail(&mut self, instance: impl Into<String>, witness: Vec<String>) {
        self.instances_checked += 1;
        self.conclusion_failures += 1;
        self.failures.push(InstanceOutcome {
            instance: instance.into(),
            conclusion_holds: Some(false),
            witness: Some(witness),
        });
    }

    /// Bulk-counts passing instances without keeping samples.
    pub(crate) fn pass_many(&mut self, k: u64) {
        self.instances_checked += k;
    }

    pub(crate) fn vacuous_many(&mut self, k: u64) {
        self.instances_checked += k;
        self.vacuous_instances += k;
    }

    pub(crate) fn finish(mut self) -> Self {
        self.status = if !self.hypotheses_hold {
            LemmaStatus::Skipped
        } else if self.conclusion_failures > 0 {
            LemmaStatus::Failed
        } else if self.instances_checked == self.vacuous_instances {
            LemmaStatus::Vacuous
        } else {
            LemmaStatus::Holds
        };
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.status == LemmaStatus::Failed
    }
}

/// Renders a set of elements as `{a, b, c}`.
pub(crate) fn set_name(ring: &crate::FiniteRing, elems: impl IntoIterator<Item = crate::Elem>) -> String {
    let v: Vec<&str> = elems.into_iter().map(|a| ring.elem_name(a)).collect();
    format!("{{{}}}", v.join(", "))
}
