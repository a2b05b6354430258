//! Kronecker algebra K(n) and Littlewood–Richardson algebra A(m, n): their
//! triple-labelled central projectors and detection by phase estimation.

mod kron;
mod lr;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::centre::{cycle_class_size, detection_table, k_star};
use crate::detection::{qpe_round, t_bits, to_i64, to_u64, Round};
use crate::error::{Error, Result};
use crate::partition::{format_tuple, partitions, Partition};

pub use kron::{
    dim_k, identity_expansion_sample, identity_expansion_weights, kron_detect, kron_projector_brute, kron_query_total, kronecker_csv,
    kronecker, kronecker_table, ribbon_count, KroneckerTriple,
};
pub use lr::{dim_a, lr_coefficient, lr_csv, lr_detect, lr_query_total, lr_table, necklace_count, LrTriple};

/// A state in the span of triple-labelled projectors. Only labels with a
/// nonzero amplitude are stored. Labels are (R1, R2, R3) for K(n) and
/// (R1, R2, R) for A(m, n); `degrees` gives the symmetric group of each slot.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleCentreState {
    pub degrees: [usize; 3],
    pub labels: Vec<[Partition; 3]>,
    pub amplitudes: Vec<Complex64>,
}

impl TripleCentreState {
    pub fn new(degrees: [usize; 3], labels: Vec<[Partition; 3]>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if labels.len() != amplitudes.len() {
            return Err(Error::InvalidArgument("one amplitude per label required".into()));
        }
        for l in &labels {
            for (p, &d) in l.iter().zip(&degrees) {
                p.ensure_weight(d)?;
            }
        }
        let keep: Vec<usize> = (0..labels.len()).filter(|&i| amplitudes[i] != Complex64::ZERO).collect();
        let norm: f64 = keep.iter().map(|&i| amplitudes[i].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(TripleCentreState {
            degrees,
            labels: keep.iter().map(|&i| labels[i].clone()).collect(),
            amplitudes: keep.iter().map(|&i| amplitudes[i] / norm).collect(),
        })
    }

    /// The normalized projector with a single label.
    pub fn projector(degrees: [usize; 3], label: [Partition; 3]) -> Result<Self> {
        Self::new(degrees, vec![label], vec![Complex64::new(1.0, 0.0)])
    }
}

pub(crate) fn triple_string(t: &[Partition; 3]) -> String {
    format_tuple(&[&t[0], &t[1], &t[2]])
}

/// Three families of QPE rounds, family i reading chi_hat^{label[i]}(T_k)
/// of S_{degrees[i]} for k = 2..k*(degrees[i]). Rounds run k outer, family
/// inner; the post-measurement state feeds the next round.
pub(crate) fn detect_triple(
    state: &TripleCentreState,
    seed: u64,
    kind: &'static str,
) -> Result<([Partition; 3], Vec<Round>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut system = state.amplitudes.clone();
    let tables: Vec<_> = state.degrees.iter().map(|&d| detection_table(d)).collect();
    let cutoffs: Vec<usize> = state.degrees.iter().map(|&d| if d < 2 { 1 } else { k_star(d) }).collect();
    let mut measured: [Vec<BigInt>; 3] = Default::default();
    let mut rounds = Vec::new();
    for k in 2..=cutoffs.iter().copied().max().unwrap_or(1) {
        for i in 0..3 {
            if k > cutoffs[i] {
                continue;
            }
            let d = state.degrees[i];
            let eigenvalues = state
                .labels
                .iter()
                .map(|l| {
                    let sig = tables[i].signature_of(&l[i]).expect("label of the right degree");
                    to_i64(&sig.values[k - 2])
                })
                .collect::<Result<Vec<_>>>()?;
            let t = t_bits(d, k);
            let (m, decoded, counters, post) =
                qpe_round(&eigenvalues, to_u64(&cycle_class_size(d, k))?, t, &system, &mut rng)?;
            system = post;
            measured[i].push(BigInt::from(decoded));
            rounds.push(Round {
                family: i + 1,
                k,
                t,
                measured: m,
                decoded,
                cu_queries: counters.cu_queries,
                total_gates: counters.total_gates,
            });
        }
    }
    let not_found = || Error::NotAProjector {
        kind,
        signature: measured
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect(),
    };
    let mut found = Vec::with_capacity(3);
    for i in 0..3 {
        found.push(if state.degrees[i] < 2 {
            partitions(state.degrees[i]).remove(0)
        } else {
            tables[i].lookup(&measured[i]).cloned().ok_or_else(not_found)?
        });
    }
    let label: [Partition; 3] = found.try_into().expect("three families");
    if !state.labels.contains(&label) {
        return Err(not_found());
    }
    Ok((label, rounds))
}

/// Sum of register sizes over k = 2..k*(d) for one family of degree d.
pub(crate) fn family_queries(d: usize) -> u64 {
    if d < 2 {
        return 0;
    }
    (2..=k_star(d)).map(|k| u64::from(t_bits(d, k))).sum()
}
