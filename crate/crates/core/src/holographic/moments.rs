//! Fermion droplets, Casimir sums, power-sum moments and the integer
//! triangular map between them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::centre::k_star_with;
use crate::combinat::{binomial, factorial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{partitions, Partition};

/// N fermions at strictly increasing non-negative energies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FermionConfig {
    energies: Vec<u64>,
}

impl FermionConfig {
    pub fn new(energies: Vec<u64>) -> Result<Self> {
        if energies.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!("fermion energies must increase strictly: {energies:?}")));
        }
        Ok(FermionConfig { energies })
    }

    /// f_i = R_{N+1-i} + i - 1, with R padded by zeros to N rows.
    pub fn from_diagram(r: &Partition, big_n: usize) -> Result<Self> {
        if r.len() > big_n {
            return Err(Error::InvalidArgument(format!("{r} has {} rows, more than N = {big_n}", r.len())));
        }
        let row = |j: usize| r.parts().get(j).copied().unwrap_or(0) as u64;
        let energies = (1..=big_n).map(|i| row(big_n - i) + i as u64 - 1).collect();
        Ok(FermionConfig { energies })
    }

    pub fn ground(big_n: usize) -> Self {
        FermionConfig { energies: (0..big_n as u64).collect() }
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energies(&self) -> &[u64] {
        &self.energies
    }

    pub fn to_diagram(&self) -> Partition {
        let big_n = self.energies.len();
        let rows = (1..=big_n).rev().map(|i| (self.energies[i - 1] - (i as u64 - 1)) as usize).collect();
        Partition::from_unsorted(rows)
    }
}

/// A^l(f) = l! sum_r C(l,r) C(f,r) 2^r.
pub fn a_poly(l: usize, f: u64) -> BigInt {
    let f = f as usize;
    let sum: BigInt = (0..=l.min(f)).map(|r| binomial(l, r) * binomial(f, r) << r).sum();
    factorial(l) * sum
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirMoments {
    #[serde(serialize_with = "crate::centre::ser_bigints")]
    pub a: Vec<BigInt>,
    #[serde(serialize_with = "crate::centre::ser_bigints")]
    pub m: Vec<BigInt>,
}

impl CasimirMoments {
    pub fn of(config: &FermionConfig, lambda: usize) -> Self {
        CasimirMoments { a: casimirs(config, lambda), m: power_sums(config, lambda) }
    }
}

pub fn casimirs(config: &FermionConfig, lambda: usize) -> Vec<BigInt> {
    (0..=lambda).map(|l| config.energies.iter().map(|&f| a_poly(l, f)).sum()).collect()
}

pub fn power_sums(config: &FermionConfig, lambda: usize) -> Vec<BigInt> {
    (0..=lambda)
        .map(|k| config.energies.iter().map(|&f| BigInt::from(f).pow(k as u32)).sum())
        .collect()
}

/// Signed Stirling numbers of the first kind s(r, k) for r, k <= max.
pub fn stirling_first(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for r in 0..max {
        for k in 1..=r + 1 {
            s[r + 1][k] = &s[r][k - 1] - BigInt::from(r) * &s[r][k];
        }
    }
    s
}

/// c[l][k] with A_l = sum_{k<=l} c[l][k] M_k:
/// c^l_k = sum_{r=k}^{l} s(r,k) 2^r (l!/r!) C(l,r).
pub fn casimir_matrix(lambda: usize) -> Vec<Vec<BigInt>> {
    let s = stirling_first(lambda);
    (0..=lambda)
        .map(|l| {
            (0..=l)
                .map(|k| {
                    (k..=l)
                        .map(|r| &s[r][k] * (factorial(l) / factorial(r)) * binomial(l, r) << r)
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn casimirs_from_moments(m: &[BigInt]) -> Vec<BigInt> {
    let Some(lambda) = m.len().checked_sub(1) else {
        return Vec::new();
    };
    casimir_matrix(lambda)
        .iter()
        .map(|row| row.iter().zip(m).map(|(c, x)| c * x).sum())
        .collect()
}

/// Forward substitution; the diagonal is c^l_l = 2^l.
pub fn moments_from_casimirs(a: &[BigInt]) -> Result<Vec<BigInt>> {
    if a.first().is_none_or(|a0| a0 < &BigInt::one()) {
        return Err(Error::InvalidArgument("A_0 must be at least 1".into()));
    }
    let c = casimir_matrix(a.len() - 1);
    let mut m: Vec<BigInt> = Vec::with_capacity(a.len());
    for (l, row) in c.iter().enumerate() {
        let rest: BigInt = row[..l].iter().zip(&m).map(|(c, x)| c * x).sum();
        let (q, r) = (&a[l] - rest).div_rem(&row[l]);
        if !r.is_zero() {
            return Err(Error::Consistency(format!("moment M_{l} is not an integer")));
        }
        m.push(q);
    }
    Ok(m)
}

fn moment_vectors(n: usize, big_n: usize, lambda: usize) -> Result<Vec<(Partition, Vec<BigInt>)>> {
    partitions(n)
        .into_iter()
        .map(|r| {
            let m = power_sums(&FermionConfig::from_diagram(&r, big_n)?, lambda);
            Ok((r, m))
        })
        .collect()
}

/// Looks M up among {moments(R, N) : R ⊢ n}; every supplied M_k must agree.
pub fn recover_diagram(m: &[BigInt], n: usize, big_n: usize) -> Result<Partition> {
    if m.is_empty() {
        return Err(Error::InconsistentMoments("no moments supplied".into()));
    }
    let lambda = m.len() - 1;
    let hits: Vec<Partition> = moment_vectors(n, big_n, lambda)?
        .into_iter()
        .filter(|(_, v)| v == m)
        .map(|(r, _)| r)
        .collect();
    match hits.len() {
        1 => Ok(hits.into_iter().next().unwrap()),
        0 => Err(Error::InconsistentMoments(format!("no diagram of {n} with N = {big_n} has these moments"))),
        k => Err(Error::InconsistentMoments(format!(
            "{k} diagrams of {n} share moments up to order {lambda}; raise the cutoff"
        ))),
    }
}

/// Smallest K such that (M_1, .., M_K) separates all R ⊢ n at this N.
pub fn moment_cutoff(n: usize, big_n: usize) -> Result<usize> {
    if big_n <= n {
        return Err(Error::InvalidArgument(format!("moment cutoff needs N > n, got N = {big_n}, n = {n}")));
    }
    let configs: Vec<FermionConfig> = partitions(n)
        .iter()
        .map(|r| FermionConfig::from_diagram(r, big_n))
        .collect::<Result<_>>()?;
    if configs.len() <= 1 {
        return Ok(1);
    }
    let mut prefixes: Vec<Vec<BigInt>> = vec![Vec::new(); configs.len()];
    // Distinct sets of N integers in [0, n+N) are separated by M_1..M_N.
    for k in 1.. {
        for (p, c) in prefixes.iter_mut().zip(&configs) {
            p.push(c.energies.iter().map(|&f| BigInt::from(f).pow(k as u32)).sum());
        }
        let mut seen = HashMap::with_capacity(prefixes.len());
        if prefixes.iter().all(|p| seen.insert(p, ()).is_none()) {
            return Ok(k);
        }
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutoffRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub moment_cutoff: usize,
    pub k_star: usize,
}

/// (n, moment_cutoff(n, n+1), k*(n)) for 1 <= n <= n_max.
pub fn cutoff_table(n_max: usize, exec: Exec) -> Result<Vec<CutoffRow>> {
    let ns: Vec<usize> = (1..=n_max).collect();
    exec.try_map(&ns, |&n| {
        Ok(CutoffRow { n, big_n: n + 1, moment_cutoff: moment_cutoff(n, n + 1)?, k_star: k_star_with(n, Exec::Sequential) })
    })
}

pub fn cutoff_csv(rows: &[CutoffRow]) -> String {
    let mut out = String::from("n,N,moment_cutoff,k_star\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.big_n, r.moment_cutoff, r.k_star));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fermion_map() {
        let f = FermionConfig::from_diagram(&p("2,1"), 3).unwrap();
        assert_eq!(f.energies(), &[0, 2, 4]);
        assert_eq!(f.to_diagram(), p("2,1"));
        assert_eq!(FermionConfig::from_diagram(&Partition::empty(), 4).unwrap(), FermionConfig::ground(4));
        assert_eq!(FermionConfig::from_diagram(&p("2"), 3).unwrap().energies(), &[0, 1, 4]);
        assert!(FermionConfig::from_diagram(&p("1,1,1"), 2).is_err());
        assert!(FermionConfig::new(vec![0, 2, 2]).is_err());
        for r in partitions(7) {
            assert_eq!(FermionConfig::from_diagram(&r, 9).unwrap().to_diagram(), r);
        }
    }

    #[test]
    fn a_poly_values() {
        for f in 0..20 {
            assert_eq!(a_poly(0, f), BigInt::one());
            assert_eq!(a_poly(1, f), BigInt::from(1 + 2 * f));
        }
        assert_eq!(a_poly(2, 0), BigInt::from(2));
        // 2! (1 + 2*3*2 + 3*4) = 50
        assert_eq!(a_poly(2, 3), BigInt::from(50));
    }

    #[test]
    fn moments_of_examples() {
        let f = FermionConfig::from_diagram(&p("2,1"), 3).unwrap();
        let cm = CasimirMoments::of(&f, 4);
        assert_eq!(&cm.m[..3], &ints(&[3, 6, 20])[..]);
        assert_eq!(moments_from_casimirs(&cm.a).unwrap(), cm.m);
        for big_n in 1..10u64 {
            let g = FermionConfig::ground(big_n as usize);
            let m = moments_from_casimirs(&casimirs(&g, 3)).unwrap();
            assert_eq!(m[0], BigInt::from(big_n));
            assert_eq!(m[1], BigInt::from(big_n * (big_n - 1) / 2));
        }
    }

    #[test]
    fn stirling_system_is_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let size = rng.random_range(1..8);
            let mut e: Vec<u64> = (0..size).map(|_| rng.random_range(0..40)).collect();
            e.sort_unstable();
            e.dedup();
            let f = FermionConfig::new(e).unwrap();
            let lambda = rng.random_range(0..=8);
            let cm = CasimirMoments::of(&f, lambda);
            assert_eq!(moments_from_casimirs(&cm.a).unwrap(), cm.m);
            assert_eq!(casimirs_from_moments(&cm.m), cm.a);
        }
        let c = casimir_matrix(6);
        for (l, row) in c.iter().enumerate() {
            assert_eq!(row[l], BigInt::one() << l);
        }
        assert!(moments_from_casimirs(&ints(&[0, 1])).is_err());
        assert!(matches!(moments_from_casimirs(&ints(&[1, 2])), Err(Error::Consistency(_))));
    }

    #[test]
    fn stirling_numbers() {
        let s = stirling_first(5);
        assert_eq!(s[4], ints(&[0, -6, 11, -6, 1, 0]));
        assert_eq!(s[5][1], BigInt::from(24));
    }

    #[test]
    fn cutoffs_and_recovery() {
        assert_eq!(moment_cutoff(1, 2).unwrap(), 1);
        assert_eq!(moment_cutoff(0, 1).unwrap(), 1);
        assert_eq!(moment_cutoff(2, 3).unwrap(), 2);
        assert!(moment_cutoff(3, 3).is_err());
        for n in 1..=8 {
            let big_n = n + 1;
            let k = moment_cutoff(n, big_n).unwrap();
            for r in partitions(n) {
                let m = power_sums(&FermionConfig::from_diagram(&r, big_n).unwrap(), k);
                assert_eq!(recover_diagram(&m, n, big_n).unwrap(), r);
            }
        }
        let m = power_sums(&FermionConfig::ground(7), 3);
        assert_eq!(recover_diagram(&m, 0, 7).unwrap(), Partition::empty());
        // M_1 alone cannot tell [2] from [1,1]
        let m = power_sums(&FermionConfig::from_diagram(&p("2"), 3).unwrap(), 1);
        assert!(matches!(recover_diagram(&m, 2, 3), Err(Error::InconsistentMoments(_))));
        assert!(matches!(recover_diagram(&ints(&[3, 0]), 2, 3), Err(Error::InconsistentMoments(_))));
    }

    #[test]
    fn cutoff_table_rows() {
        let rows = cutoff_table(6, Exec::Sequential).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[5].k_star, 3);
        assert!(cutoff_csv(&rows).starts_with("n,N,moment_cutoff,k_star\n1,2,1,"));
    }
}
