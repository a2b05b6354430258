//! Bob prepares a central projector, Alice identifies its Young diagram by
//! phase estimation of the cycle central elements T_2, .., T_{k*(n)}.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centre::{cycle_class_size, detection_table, k_star, projector_state, CentreState};
use crate::combinat::ceil_log2;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qpe::{phase_decode, phase_encode, qpe_run, DiagonalUnitary, GateCounters};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Register size ceil(log2(2|T_k| + 2)) for the eigenvalues of T_k.
pub fn t_bits(n: usize, k: usize) -> u32 {
    ceil_log2(&(cycle_class_size(n, k) * 2u32 + 2u32))
}

/// P_R scaled to unit g-norm.
pub fn bob_prepare(r: &Partition) -> CentreState {
    projector_state(r).normalized().expect("projectors have positive norm")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    /// Which operator family (1-based); 1 for single-algebra detection.
    pub family: usize,
    pub k: usize,
    pub t: u32,
    pub measured: usize,
    pub decoded: i64,
    pub cu_queries: u64,
    pub total_gates: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetectionTranscript {
    pub schema: &'static str,
    /// Degree of the first factor for LR detection (S_m × S_n ⊂ S_{m+n}).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_label: Option<String>,
    pub identified_label: String,
    pub rounds: Vec<Round>,
    pub cu_queries: u64,
    pub total_gates: u64,
}

impl DetectionTranscript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }
}

pub(crate) fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidArgument(format!("eigenvalue {v} does not fit the simulator")))
}

pub(crate) fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("class size {v} does not fit the simulator")))
}

/// One phase-estimation round: eigenvalues[s] is the integer eigenvalue on
/// basis vector s. Measures, then hands back the post-measurement system
/// state for the next round.
pub(crate) fn qpe_round(
    eigenvalues: &[i64],
    bound: u64,
    t: u32,
    system: &[Complex64],
    rng: &mut ChaCha8Rng,
) -> Result<(usize, i64, GateCounters, Vec<Complex64>)> {
    let phases = eigenvalues
        .iter()
        .map(|&e| phase_encode(e, bound, t))
        .collect::<Result<Vec<_>>>()?;
    let u = DiagonalUnitary::new(phases)?;
    let mut run = qpe_run(&u, system, t)?;
    let m = run.state.measure(rng)?;
    let post = run.state.system_state(m)?;
    Ok((m, phase_decode(m, t), run.counters, post))
}

/// Identifies the diagram of a state proportional to some P_R.
pub fn alice_detect(state: &CentreState, seed: u64) -> Result<(Partition, DetectionTranscript)> {
    let n = state.n;
    let table = detection_table(n);
    let mut system = state.normalized()?.amplitudes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rounds = Vec::new();
    let mut measured = Vec::new();
    for k in 2..=k_star(n).max(1) {
        if n < 2 {
            break;
        }
        let eigenvalues = table
            .signatures()
            .iter()
            .map(|s| to_i64(&s.values[k - 2]))
            .collect::<Result<Vec<_>>>()?;
        let t = t_bits(n, k);
        let (m, decoded, counters, post) =
            qpe_round(&eigenvalues, to_u64(&cycle_class_size(n, k))?, t, &system, &mut rng)?;
        system = post;
        measured.push(BigInt::from(decoded));
        rounds.push(Round {
            family: 1,
            k,
            t,
            measured: m,
            decoded,
            cu_queries: counters.cu_queries,
            total_gates: counters.total_gates,
        });
    }
    let label = table.lookup(&measured).cloned().ok_or_else(|| Error::NotAProjector {
        kind: "central",
        signature: measured.iter().map(ToString::to_string).collect(),
    })?;
    let transcript = DetectionTranscript {
        schema: "1",
        m: None,
        n,
        seed,
        true_label: None,
        identified_label: label.to_string(),
        cu_queries: rounds.iter().map(|r| r.cu_queries).sum(),
        total_gates: rounds.iter().map(|r| r.total_gates).sum(),
        rounds,
    };
    Ok((label, transcript))
}

/// Bob prepares P_R, Alice detects it; the transcript records the truth.
pub fn detect_projector(r: &Partition, seed: u64) -> Result<(Partition, DetectionTranscript)> {
    let (label, mut transcript) = alice_detect(&bob_prepare(r), seed)?;
    transcript.true_label = Some(r.to_string());
    Ok((label, transcript))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundCost {
    pub k: usize,
    pub t: u32,
    pub queries: u64,
    pub gates: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub n: usize,
    pub k_star: usize,
    pub per_k: Vec<RoundCost>,
    pub query_total: u64,
    pub gate_total: u64,
}

pub fn round_costs(n: usize, k_max: usize) -> Vec<RoundCost> {
    (2..=k_max)
        .map(|k| {
            let t = t_bits(n, k);
            let c = GateCounters::closed_form(t);
            RoundCost {
                k,
                t,
                queries: c.cu_queries,
                gates: c.total_gates,
            }
        })
        .collect()
}

/// Queries and gates of the detection protocol for S_n.
pub fn complexity_report(n: usize) -> ComplexityReport {
    let ks = k_star(n);
    let per_k = if n < 2 { Vec::new() } else { round_costs(n, ks) };
    ComplexityReport {
        n,
        k_star: ks,
        query_total: per_k.iter().map(|r| r.queries).sum(),
        gate_total: per_k.iter().map(|r| r.gates).sum(),
        per_k,
    }
}
