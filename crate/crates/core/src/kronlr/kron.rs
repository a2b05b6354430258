use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{detect_triple, family_queries, triple_string, TripleCentreState};
use crate::bruteforce::{self, Element};
use crate::centre::table;
use crate::characters::CharacterTable;
use crate::combinat::factorial;
use crate::detection::DetectionTranscript;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{partitions, Partition};
use crate::perm::all_perms;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KroneckerTriple {
    pub r1: Partition,
    pub r2: Partition,
    pub r3: Partition,
    #[serde(serialize_with = "crate::centre::ser_bigint")]
    pub c: BigInt,
}

impl KroneckerTriple {
    pub fn labels(&self) -> [Partition; 3] {
        [self.r1.clone(), self.r2.clone(), self.r3.clone()]
    }
}

fn kronecker_indexed(t: &CharacterTable, a: usize, b: usize, c: usize) -> Result<BigInt> {
    let sum: BigInt = (0..t.len())
        .map(|mu| t.class_size(mu) * t.get(a, mu) * t.get(b, mu) * t.get(c, mu))
        .sum();
    let (q, r) = sum.div_rem(&factorial(t.n()));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Consistency(format!(
            "Kronecker coefficient of {};{};{} is {sum}/{}",
            t.labels()[a],
            t.labels()[b],
            t.labels()[c],
            factorial(t.n())
        )));
    }
    Ok(q)
}

/// C(R1,R2,R3) = (1/n!) sum_mu |C_mu| chi^R1(mu) chi^R2(mu) chi^R3(mu).
pub fn kronecker(r1: &Partition, r2: &Partition, r3: &Partition) -> Result<BigInt> {
    let n = r1.weight();
    r1.ensure_weight(r2.weight())?;
    r1.ensure_weight(r3.weight())?;
    let t = table(n);
    let idx = |p: &Partition| t.index_of(p).expect("partition of n");
    kronecker_indexed(&t, idx(r1), idx(r2), idx(r3))
}

/// Every triple of partitions of n with its coefficient (zeros included).
pub fn kronecker_table(n: usize, exec: Exec) -> Result<Vec<KroneckerTriple>> {
    let t = table(n);
    let p = t.len();
    let labels = t.labels();
    exec.map_range(p * p * p, |i| {
        let (a, b, c) = (i / (p * p), (i / p) % p, i % p);
        Ok(KroneckerTriple {
            r1: labels[a].clone(),
            r2: labels[b].clone(),
            r3: labels[c].clone(),
            c: kronecker_indexed(&t, a, b, c)?,
        })
    })
    .into_iter()
    .collect()
}

/// CSV with a quoted `R1;R2;R3` column and the coefficient.
pub fn kronecker_csv(rows: &[KroneckerTriple]) -> String {
    let mut out = String::from("triple,coefficient\n");
    for r in rows {
        out.push_str(&format!("\"{}\",{}\n", triple_string(&r.labels()), r.c));
    }
    out
}

/// dim K(n) = sum of C^2 over all triples.
pub fn dim_k(n: usize) -> Result<BigInt> {
    Ok(kronecker_table(n, Exec::default())?.iter().map(|r| &r.c * &r.c).sum())
}

/// Orbits of S_n acting on S_n × S_n by diagonal conjugation, counted by
/// Burnside: sum_mu z_mu.
pub fn ribbon_count(n: usize) -> BigInt {
    partitions(n).iter().map(Partition::z).sum()
}

/// Δ(P_R3)(P_R1 ⊗ P_R2) in the brute-force tensor algebra.
pub fn kron_projector_brute(r1: &Partition, r2: &Partition, r3: &Partition) -> Result<Element> {
    let n = r1.weight();
    r1.ensure_weight(r2.weight())?;
    r1.ensure_weight(r3.weight())?;
    if n > bruteforce::TENSOR_PRODUCT_MAX_N {
        return Err(Error::Capability {
            what: "brute-force Kronecker projector",
            limit: bruteforce::TENSOR_PRODUCT_MAX_N,
            got: n,
        });
    }
    let p1 = bruteforce::projector(r1)?;
    let p2 = bruteforce::projector(r2)?;
    let p3 = bruteforce::projector(r3)?;
    p3.coproduct()?.multiply(&p1.tensor(&p2)?)
}

/// Detects the label (R1, R2, R3) of a K(n) projector state.
pub fn kron_detect(state: &TripleCentreState, seed: u64) -> Result<([Partition; 3], DetectionTranscript)> {
    let n = state.degrees[0];
    if state.degrees != [n, n, n] {
        return Err(Error::InvalidArgument("Kronecker states live on three copies of S_n".into()));
    }
    let kind = "the Kronecker projectors";
    let (label, rounds) = detect_triple(state, seed, kind)?;
    if kronecker(&label[0], &label[1], &label[2])?.is_zero() {
        return Err(Error::NotAProjector {
            kind,
            signature: label.iter().map(ToString::to_string).collect(),
        });
    }
    let transcript = DetectionTranscript {
        schema: "1",
        m: None,
        n,
        seed,
        true_label: None,
        identified_label: triple_string(&label),
        cu_queries: rounds.iter().map(|r| r.cu_queries).sum(),
        total_gates: rounds.iter().map(|r| r.total_gates).sum(),
        rounds,
    };
    Ok((label, transcript))
}

/// 3 sum_{k=2}^{k*(n)} t_bits(n, k).
pub fn kron_query_total(n: usize) -> u64 {
    3 * family_queries(n)
}

/// Largest n for which the 1⊗1 expansion is computed.
pub const IDENTITY_EXPANSION_MAX_N: usize = 6;

/// Weights of 1⊗1 on the triple projectors, g(P̃, P̃) = δ(P̃), found by
/// summing over the elements of S_n: δ(P̃) = sum_σ P_R3(σ) P_R1(σ⁻¹) P_R2(σ⁻¹).
/// Only triples with a nonzero weight are returned; the weights sum to 1.
pub fn identity_expansion_weights(n: usize) -> Result<Vec<([Partition; 3], BigRational)>> {
    if n > IDENTITY_EXPANSION_MAX_N {
        return Err(Error::Capability {
            what: "identity expansion",
            limit: IDENTITY_EXPANSION_MAX_N,
            got: n,
        });
    }
    let t = table(n);
    let order = factorial(n);
    let classes: Vec<usize> = all_perms(n)
        .iter()
        .map(|p| t.index_of(&p.cycle_type()).expect("cycle type"))
        .collect();
    let p = t.len();
    let cube = &order * &order * &order;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                // characters are real class functions, so σ⁻¹ has the same
                // value as σ
                let sum: BigInt = classes.iter().map(|&cl| t.get(c, cl) * t.get(a, cl) * t.get(b, cl)).sum();
                if !sum.is_zero() {
                    let w = BigRational::new(t.dim(a) * t.dim(b) * t.dim(c) * sum, cube.clone());
                    let labels = t.labels();
                    out.push(([labels[a].clone(), labels[b].clone(), labels[c].clone()], w));
                }
            }
        }
    }
    Ok(out)
}

/// Prepares 1⊗1 (normalized), expands it over the triple projectors and runs
/// Kronecker detection on the superposition: returns the sampled triple.
pub fn identity_expansion_sample(n: usize, seed: u64) -> Result<[Partition; 3]> {
    let weights = identity_expansion_weights(n)?;
    let (labels, amps): (Vec<_>, Vec<_>) = weights
        .into_iter()
        .map(|(l, w)| (l, Complex64::new(w.to_f64().unwrap_or(0.0).sqrt(), 0.0)))
        .unzip();
    let state = TripleCentreState::new([n, n, n], labels, amps)?;
    Ok(kron_detect(&state, seed)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::dimension;
    use num_traits::One;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn coefficient_values() {
        for n in 1..=6 {
            let row = Partition::row(n);
            assert_eq!(kronecker(&row, &row, &row).unwrap(), BigInt::one());
        }
        assert_eq!(kronecker(&p("2,1"), &p("2,1"), &p("2,1")).unwrap(), BigInt::one());
        assert!(kronecker(&p("2,1"), &p("2"), &p("2,1")).is_err());
    }

    #[test]
    fn symmetry_and_trivial_slot() {
        for n in 1..=5 {
            let rows = kronecker_table(n, Exec::default()).unwrap();
            let get = |a: &Partition, b: &Partition, c: &Partition| {
                rows.iter().find(|r| &r.r1 == a && &r.r2 == b && &r.r3 == c).unwrap().c.clone()
            };
            for r in &rows {
                assert_eq!(r.c, get(&r.r2, &r.r1, &r.r3));
                assert_eq!(r.c, get(&r.r3, &r.r2, &r.r1));
                assert_eq!(r.c, get(&r.r1, &r.r3, &r.r2));
                if r.r2 == Partition::row(n) {
                    assert_eq!(r.c, BigInt::from(u8::from(r.r1 == r.r3)));
                }
            }
        }
    }

    #[test]
    fn tensor_dimension_count() {
        for n in 1..=6 {
            let rows = kronecker_table(n, Exec::default()).unwrap();
            for a in partitions(n) {
                for b in partitions(n) {
                    let lhs: BigInt = rows
                        .iter()
                        .filter(|r| r.r1 == a && r.r2 == b)
                        .map(|r| &r.c * dimension(&r.r3))
                        .sum();
                    assert_eq!(lhs, dimension(&a) * dimension(&b));
                }
            }
        }
    }

    #[test]
    fn algebra_dimensions() {
        assert_eq!(ribbon_count(1), BigInt::from(1));
        assert_eq!(ribbon_count(2), BigInt::from(4));
        assert_eq!(ribbon_count(3), BigInt::from(11));
        for n in 1..=6 {
            assert_eq!(dim_k(n).unwrap(), ribbon_count(n));
        }
    }

    #[test]
    fn csv_layout() {
        let rows = kronecker_table(2, Exec::default()).unwrap();
        let csv = kronecker_csv(&rows);
        assert!(csv.starts_with("triple,coefficient\n\"2;2;2\",1\n"));
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn detects_all_triples_up_to_five() {
        for n in 1..=5 {
            for r in kronecker_table(n, Exec::default()).unwrap().iter().filter(|r| !r.c.is_zero()) {
                let state = TripleCentreState::projector([n, n, n], r.labels()).unwrap();
                let (label, tr) = kron_detect(&state, 7).unwrap();
                assert_eq!(label, r.labels());
                assert_eq!(tr.cu_queries, kron_query_total(n));
            }
        }
    }

    #[test]
    fn rejects_zero_coefficient_label() {
        // [2,1]⊗[2]⊗[3] has C = 0; a state carrying that label is not one
        // of the projectors.
        let state = TripleCentreState::projector([3, 3, 3], [p("2,1"), p("3"), p("3")]).unwrap();
        assert!(matches!(kron_detect(&state, 1), Err(Error::NotAProjector { .. })));
    }

    #[test]
    fn identity_expansion_support() {
        for n in 1..=4 {
            let w = identity_expansion_weights(n).unwrap();
            let total: BigRational = w.iter().map(|(_, w)| w.clone()).sum();
            assert!(total.is_one());
            let nonzero = kronecker_table(n, Exec::default()).unwrap().iter().filter(|r| !r.c.is_zero()).count();
            assert_eq!(w.len(), nonzero);
        }
        let support: BTreeSet<String> = identity_expansion_weights(2)
            .unwrap()
            .iter()
            .map(|(l, _)| triple_string(l))
            .collect();
        let mut seen = BTreeSet::new();
        for seed in 0..200 {
            let s = identity_expansion_sample(2, seed).unwrap();
            assert!(kronecker(&s[0], &s[1], &s[2]).unwrap() > BigInt::zero());
            seen.insert(triple_string(&s));
        }
        assert!(seen.is_subset(&support));
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn weights_match_tensor_algebra_norms() {
        for n in 1..=3 {
            for (l, w) in identity_expansion_weights(n).unwrap() {
                let e = kron_projector_brute(&l[0], &l[1], &l[2]).unwrap();
                let g = bruteforce::g_pair(&e, &e).unwrap();
                assert_eq!(BigRational::new((*g.numer()).into(), (*g.denom()).into()), w);
            }
        }
    }
}
