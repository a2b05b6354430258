use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{detect_triple, family_queries, triple_string, TripleCentreState};
use crate::centre::table;
use crate::characters::character;
use crate::combinat::factorial;
use crate::detection::DetectionTranscript;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{partitions, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrTriple {
    pub r1: Partition,
    pub r2: Partition,
    pub r: Partition,
    #[serde(serialize_with = "crate::centre::ser_bigint")]
    pub g: BigInt,
}

impl LrTriple {
    /// Labels in the slot order (R1, R2, R) used by A(m, n) states.
    pub fn labels(&self) -> [Partition; 3] {
        [self.r1.clone(), self.r2.clone(), self.r.clone()]
    }
}

/// g(R1, R2, R) = (1/(m! n!)) sum_{mu1, mu2} |C_mu1| |C_mu2|
/// chi^R(mu1 ∪ mu2) chi^R1(mu1) chi^R2(mu2).
pub fn lr_coefficient(r1: &Partition, r2: &Partition, r: &Partition) -> Result<BigInt> {
    let (m, n) = (r1.weight(), r2.weight());
    r.ensure_weight(m + n)?;
    let (t1, t2) = (table(m), table(n));
    let i1 = t1.index_of(r1).expect("partition of m");
    let i2 = t2.index_of(r2).expect("partition of n");
    let mut sum = BigInt::zero();
    for (a, mu1) in t1.labels().iter().enumerate() {
        let x = t1.class_size(a) * t1.get(i1, a);
        if x.is_zero() {
            continue;
        }
        for (b, mu2) in t2.labels().iter().enumerate() {
            let y = t2.class_size(b) * t2.get(i2, b);
            if y.is_zero() {
                continue;
            }
            sum += &x * y * character(r, &mu1.union(mu2))?;
        }
    }
    let (q, rem) = sum.div_rem(&(factorial(m) * factorial(n)));
    if !rem.is_zero() || q.is_negative() {
        return Err(Error::Consistency(format!("LR coefficient of {r1};{r2};{r} is not a natural number")));
    }
    Ok(q)
}

/// All (R1 ⊢ m, R2 ⊢ n, R ⊢ m+n) with their coefficients (zeros included).
pub fn lr_table(m: usize, n: usize, exec: Exec) -> Result<Vec<LrTriple>> {
    let (a, b, c) = (partitions(m), partitions(n), partitions(m + n));
    let mut triples = Vec::with_capacity(a.len() * b.len() * c.len());
    for r1 in &a {
        for r2 in &b {
            for r in &c {
                triples.push((r1, r2, r));
            }
        }
    }
    exec.try_map(&triples, |&(r1, r2, r)| {
        Ok(LrTriple {
            r1: r1.clone(),
            r2: r2.clone(),
            r: r.clone(),
            g: lr_coefficient(r1, r2, r)?,
        })
    })
}

pub fn lr_csv(rows: &[LrTriple]) -> String {
    let mut out = String::from("triple,coefficient\n");
    for r in rows {
        out.push_str(&format!("\"{}\",{}\n", triple_string(&r.labels()), r.g));
    }
    out
}

/// dim A(m, n) = sum of g^2.
pub fn dim_a(m: usize, n: usize) -> Result<BigInt> {
    Ok(lr_table(m, n, Exec::default())?.iter().map(|t| &t.g * &t.g).sum())
}

/// Orbits of S_m × S_n conjugating S_{m+n}, by Burnside class-wise:
/// sum_{mu1, mu2} z_{mu1 ∪ mu2} / (z_mu1 z_mu2).
pub fn necklace_count(m: usize, n: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for mu1 in partitions(m) {
        for mu2 in partitions(n) {
            let (q, r) = mu1.union(&mu2).z().div_rem(&(mu1.z() * mu2.z()));
            if !r.is_zero() {
                return Err(Error::Consistency(format!("centralizer ratio for {mu1} ∪ {mu2}")));
            }
            total += q;
        }
    }
    Ok(total)
}

/// Detects the label of an A(m, n) projector. The state's slots are
/// (R1 ⊢ m, R2 ⊢ n, R ⊢ m+n).
pub fn lr_detect(state: &TripleCentreState, seed: u64) -> Result<(LrTriple, DetectionTranscript)> {
    let [m, n, total] = state.degrees;
    if total != m + n {
        return Err(Error::InvalidArgument(format!("LR states need degrees (m, n, m+n), got {:?}", state.degrees)));
    }
    let kind = "the LR projectors";
    let (label, rounds) = detect_triple(state, seed, kind)?;
    let [r1, r2, r] = label.clone();
    let g = lr_coefficient(&r1, &r2, &r)?;
    if g.is_zero() {
        return Err(Error::NotAProjector {
            kind,
            signature: label.iter().map(ToString::to_string).collect(),
        });
    }
    let transcript = DetectionTranscript {
        schema: "1",
        m: Some(m),
        n,
        seed,
        true_label: None,
        identified_label: triple_string(&label),
        cu_queries: rounds.iter().map(|r| r.cu_queries).sum(),
        total_gates: rounds.iter().map(|r| r.total_gates).sum(),
        rounds,
    };
    Ok((LrTriple { r1, r2, r, g }, transcript))
}

/// Register bits summed over the three sectors S_m, S_n, S_{m+n}.
pub fn lr_query_total(m: usize, n: usize) -> u64 {
    family_queries(m) + family_queries(n) + family_queries(m + n)
}
