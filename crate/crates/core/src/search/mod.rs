//! Exhaustive small-order verification and eigenvector-guided local search.

mod exhaustive;
mod local;

pub use exhaustive::{
    enumerate_graphs, exhaustive_ng, exhaustive_qspread, verify_terpai, EnumerationStats, ExhaustiveOptions,
    QSpreadExtremes, TerpaiReport, DEFAULT_MAX_EXHAUSTIVE_ORDER, MAX_ENUMERATION_ORDER,
};
pub use local::{
    improving_toggle, local_search, objective_value, random_connected_graph, random_graph, Action, SearchTrace,
    ToggleDecision, TraceStep, SCORE_THRESHOLD,
};

use serde::{Deserialize, Serialize};

use crate::graph::CanonicalForm;

/// Two optimum values closer than this are a tie.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `p(G) = λ₁(G) + λ₁(Ḡ)`
    Ng,
    /// `s_Q(G) = q₁(G) − qₙ(G)`
    Qspread,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

/// All optimal graphs of an exhaustive run, one canonical form per
/// isomorphism class, sorted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximizerSet {
    pub n: usize,
    pub objective: Objective,
    pub sense: Sense,
    pub best_value: f64,
    pub maximizers: Vec<CanonicalForm>,
    pub graphs_scanned: u64,
    pub connected_only: bool,
}

impl MaximizerSet {
    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.maximizers.binary_search(form).is_ok()
    }
}
