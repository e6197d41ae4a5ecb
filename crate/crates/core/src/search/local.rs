//! Edge-toggle hill climbing driven by Rayleigh-quotient gain bounds.
//!
//! For the NG sum, toggling `uv` changes `xᵀA(G)x + x̄ᵀA(Ḡ)x̄` by
//! `±2(x_u x_v − x̄_u x̄_v)`, which lower-bounds the change of `p`. For the
//! Q-spread, `xᵀQx − zᵀQz` changes by `±((x_u + x_v)² − (z_u + z_v)²)`, which
//! lower-bounds the change of `s_Q`. A toggle with a positive bound is
//! therefore guaranteed to improve the objective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Objective;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::spectral::{ng_sum, q_spread};

/// Scores at or below this are treated as zero; rounding in the eigenvectors
/// is several orders smaller.
pub const SCORE_THRESHOLD: f64 = 1e-9;

/// A later pair replaces the current best only if it wins by more than this.
const SCORE_TIE: f64 = 1e-12;

const MAX_CONNECTED_DRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Add,
    Remove,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ToggleDecision {
    pub action: Action,
    pub u: usize,
    pub v: usize,
    /// Guaranteed lower bound on the objective gain.
    pub score: f64,
}

impl ToggleDecision {
    const NONE: ToggleDecision = ToggleDecision {
        action: Action::None,
        u: 0,
        v: 0,
        score: 0.0,
    };
}

pub fn objective_value(g: &Graph, mode: Objective) -> Result<f64> {
    match mode {
        Objective::Ng => Ok(ng_sum(g)?.p),
        Objective::Qspread => Ok(q_spread(g)?.s),
    }
}

/// Best toggle by guaranteed gain, ties to the lexicographically first pair.
pub fn improving_toggle(g: &Graph, mode: Objective) -> Result<ToggleDecision> {
    let n = g.n();
    let mut best = ToggleDecision::NONE;
    let mut consider = |u: usize, v: usize, action: Action, score: f64, admissible: &dyn Fn() -> bool| {
        if score > SCORE_THRESHOLD && score > best.score + SCORE_TIE && admissible() {
            best = ToggleDecision { action, u, v, score };
        }
    };

    match mode {
        Objective::Ng => {
            if !g.is_connected() && !g.complement().is_connected() {
                return invalid("NG toggles need the graph or its complement to be connected");
            }
            let r = ng_sum(g)?;
            let (x, xb) = (&r.x, &r.x_bar);
            for u in 0..n {
                for v in u + 1..n {
                    let d = x[u] * x[v] - xb[u] * xb[v];
                    if g.has_edge(u, v) {
                        consider(u, v, Action::Remove, -2.0 * d, &|| true);
                    } else {
                        consider(u, v, Action::Add, 2.0 * d, &|| true);
                    }
                }
            }
        }
        Objective::Qspread => {
            if !g.is_connected() {
                return invalid("Q-spread toggles need a connected graph");
            }
            let r = q_spread(g)?;
            let (x, z) = (&r.x, &r.z);
            for u in 0..n {
                for v in u + 1..n {
                    let d = (x[u] + x[v]).powi(2) - (z[u] + z[v]).powi(2);
                    if g.has_edge(u, v) {
                        let still_connected = || g.toggle_edge(u, v).is_ok_and(|h| h.is_connected());
                        consider(u, v, Action::Remove, -d, &still_connected);
                    } else {
                        consider(u, v, Action::Add, d, &|| true);
                    }
                }
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub decision: ToggleDecision,
    /// Objective after applying the toggle, re-measured.
    pub objective: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchTrace {
    pub mode: Objective,
    pub seed: u64,
    pub start: Graph,
    pub start_value: f64,
    pub steps: Vec<TraceStep>,
    pub fixpoint: Graph,
    pub final_value: f64,
    /// False when the step budget ran out before a fixpoint.
    pub complete: bool,
    /// True if a proposed toggle failed to raise the re-measured objective;
    /// the search stops there without applying it.
    pub stalled: bool,
}

/// Applies improving toggles until none is left or `max_steps` were taken.
/// `seed` is the seed that produced `start` and is carried for replay.
pub fn local_search(start: &Graph, mode: Objective, max_steps: usize, seed: u64) -> Result<SearchTrace> {
    let start_value = objective_value(start, mode)?;
    let mut g = start.clone();
    let mut value = start_value;
    let mut steps = Vec::new();
    let mut complete = false;
    let mut stalled = false;

    loop {
        let decision = improving_toggle(&g, mode)?;
        if decision.action == Action::None {
            complete = true;
            break;
        }
        if steps.len() >= max_steps {
            break;
        }
        let next = g.toggle_edge(decision.u, decision.v)?;
        let next_value = objective_value(&next, mode)?;
        if next_value <= value {
            log::warn!("toggle {:?} did not improve {value} (got {next_value})", decision);
            stalled = true;
            break;
        }
        g = next;
        value = next_value;
        steps.push(TraceStep {
            decision,
            objective: value,
        });
    }

    Ok(SearchTrace {
        mode,
        seed,
        start: start.clone(),
        start_value,
        steps,
        fixpoint: g,
        final_value: value,
        complete,
        stalled,
    })
}

fn draw(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.set_edge(u, v, true);
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)` from a seeded ChaCha8 stream.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("edge probability {p} outside [0, 1]"));
    }
    draw(&mut ChaCha8Rng::seed_from_u64(seed), n, p)
}

/// First connected `G(n, 1/2)` draw of the seeded stream.
pub fn random_connected_graph(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CONNECTED_DRAWS {
        let g = draw(&mut rng, n, 0.5)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected graph on {n} vertices in {MAX_CONNECTED_DRAWS} draws"
    )))
}
