//! Randomized classical baseline: estimate chi_hat^R(T_k) from oracle access
//! to regular-representation matrices with l2-norm sampling.
//!
//! With σ = μ = e the row X_γ = D^reg(P_R)_{γ e} = (d_R/n!) chi^R(γ) and the
//! row Y_τ = D^reg(T_k)_{e τ} = [τ⁻¹ has cycle type (k, 1^{n-k})] give
//! <X, Y> = X_e chi_hat^R(T_k), so the eigenvalue is <X, Y> / X_e.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centre::{cycle_class_size, detection_table, k_star, normalized_character, table};
use crate::characters::{character, dimension};
use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{partitions, Partition};
use crate::perm::Perm;

/// Largest n for the regular-representation oracles.
pub const MAX_N: usize = 8;

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Capability {
            what: "regular representation oracle",
            limit: MAX_N,
            got: n,
        });
    }
    Ok(())
}

/// (d_R/n!) chi^R(γ μ⁻¹).
pub fn preg_entry(r: &Partition, gamma: &Perm, mu: &Perm) -> Result<BigRational> {
    let n = r.weight();
    if gamma.degree() != n || mu.degree() != n {
        return Err(Error::InvalidArgument("permutation degree differs from |R|".into()));
    }
    let chi = character(r, &gamma.compose(&mu.inverse()).cycle_type())?;
    Ok(BigRational::new(dimension(r) * chi, factorial(n)))
}

/// 1 iff σ τ⁻¹ is a k-cycle.
pub fn tk_row_entry(sigma: &Perm, tau: &Perm, k: usize) -> u8 {
    let ct = sigma.compose(&tau.inverse()).cycle_type();
    u8::from(k >= 2 && ct.parts().first() == Some(&k) && ct.parts()[1..].iter().all(|&p| p == 1))
}

/// A vector that supports l2-norm sampling and norm reads. Every access is
/// counted.
pub trait L2Sampler {
    type Index;
    fn norm_sqr(&self) -> f64;
    /// Draws i with probability X_i^2 / ||X||^2, returning (i, X_i).
    fn sample(&self, rng: &mut ChaCha8Rng) -> (Self::Index, f64);
    fn queries(&self) -> u64;
}

/// A vector with entry reads and norm reads. Every access is counted.
pub trait EntryOracle<I> {
    fn entry(&self, i: &I) -> f64;
    fn norm_sqr(&self) -> f64;
    fn queries(&self) -> u64;
}

#[derive(Debug, Default)]
struct Counter(AtomicU64);

impl Counter {
    fn tick(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }
    fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// The row of D^reg(P_R) at σ = e. Entries are class functions, so sampling
/// draws a class weighted by |C_mu| chi^R(mu)^2 and then a uniform element.
#[derive(Debug)]
pub struct PregOracle {
    r: Partition,
    classes: Vec<Partition>,
    values: Vec<f64>,
    weights: WeightedIndex<f64>,
    norm_sqr: f64,
    counter: Counter,
}

impl PregOracle {
    pub fn new(r: &Partition) -> Result<Self> {
        let n = r.weight();
        check_n(n)?;
        let t = table(n);
        let row = t.index_of(r).expect("partition of n");
        let order = factorial(n);
        let values: Vec<f64> = (0..t.len())
            .map(|c| crate::centre::ratio_to_f64(&(t.dim(row) * t.get(row, c)), &order))
            .collect();
        let raw: Vec<f64> = (0..t.len())
            .map(|c| (t.class_size(c) * t.get(row, c) * t.get(row, c)).to_f64().unwrap())
            .collect();
        let weights = WeightedIndex::new(&raw).map_err(|_| Error::ZeroNorm)?;
        let d = t.dim(row);
        Ok(PregOracle {
            r: r.clone(),
            classes: t.labels().to_vec(),
            values,
            weights,
            norm_sqr: crate::centre::ratio_to_f64(&(d * d), &order),
            counter: Counter::default(),
        })
    }

    /// Exact entry (γ, μ); counted.
    pub fn entry(&self, gamma: &Perm, mu: &Perm) -> Result<BigRational> {
        self.counter.tick();
        preg_entry(&self.r, gamma, mu)
    }

    /// A pair with a nonzero entry: the diagonal (e, e), whose entry is
    /// d_R^2/n!. Counted as one query.
    pub fn find_nonzero_entry(&self) -> (Perm, Perm) {
        self.counter.tick();
        let e = Perm::identity(self.r.weight());
        (e.clone(), e)
    }
}

fn random_in_class(mu: &Partition, rng: &mut ChaCha8Rng) -> Perm {
    let mut order: Vec<u8> = (0..mu.weight() as u8).collect();
    order.shuffle(rng);
    Perm::from_cycles(&order, mu)
}

impl L2Sampler for PregOracle {
    type Index = Perm;

    fn norm_sqr(&self) -> f64 {
        self.counter.tick();
        self.norm_sqr
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> (Perm, f64) {
        self.counter.tick();
        let c = self.weights.sample(rng);
        (random_in_class(&self.classes[c], rng), self.values[c])
    }

    fn queries(&self) -> u64 {
        self.counter.get()
    }
}

/// The row of D^reg(T_k) at σ = e.
#[derive(Debug)]
pub struct TkOracle {
    n: usize,
    k: usize,
    counter: Counter,
}

impl TkOracle {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        if k < 2 || k > n {
            return Err(Error::InvalidArgument(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
        }
        Ok(TkOracle {
            n,
            k,
            counter: Counter::default(),
        })
    }
}

impl EntryOracle<Perm> for TkOracle {
    fn entry(&self, tau: &Perm) -> f64 {
        self.counter.tick();
        f64::from(tk_row_entry(&Perm::identity(self.n), tau, self.k))
    }

    fn norm_sqr(&self) -> f64 {
        self.counter.tick();
        cycle_class_size(self.n, self.k).to_f64().unwrap()
    }

    fn queries(&self) -> u64 {
        self.counter.get()
    }
}

/// A plain vector exposed through both oracle interfaces.
#[derive(Debug)]
pub struct DenseOracle {
    values: Vec<f64>,
    weights: Option<WeightedIndex<f64>>,
    counter: Counter,
}

impl DenseOracle {
    pub fn new(values: Vec<f64>) -> Self {
        let weights = WeightedIndex::new(values.iter().map(|v| v * v)).ok();
        DenseOracle {
            values,
            weights,
            counter: Counter::default(),
        }
    }
}

impl L2Sampler for DenseOracle {
    type Index = usize;

    fn norm_sqr(&self) -> f64 {
        self.counter.tick();
        self.values.iter().map(|v| v * v).sum()
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> (usize, f64) {
        self.counter.tick();
        let i = self.weights.as_ref().expect("nonzero vector").sample(rng);
        (i, self.values[i])
    }

    fn queries(&self) -> u64 {
        self.counter.get()
    }
}

impl EntryOracle<usize> for DenseOracle {
    fn entry(&self, i: &usize) -> f64 {
        self.counter.tick();
        self.values[*i]
    }

    fn norm_sqr(&self) -> f64 {
        <Self as L2Sampler>::norm_sqr(self)
    }

    fn queries(&self) -> u64 {
        self.counter.get()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleEstimate {
    pub value: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub samples: u64,
    pub queries: u64,
}

/// Median of 6 ceil(ln(1/δ)) groups, each the mean of ceil(9/ε^2) samples of
/// Z = (Y_i / X_i) ||X||^2 with i drawn by l2-sampling from X.
pub fn median_of_means_shape(epsilon: f64, delta: f64) -> (u64, u64) {
    let groups = 6 * (1.0 / delta).ln().ceil().max(1.0) as u64;
    let per_group = (9.0 / (epsilon * epsilon)).ceil().max(1.0) as u64;
    (groups, per_group)
}

/// Estimates <X, Y> to within ε ||X|| ||Y|| with probability at least 1 - δ.
pub fn l2_inner_product<X, Y>(x: &X, y: &Y, epsilon: f64, delta: f64, rng: &mut ChaCha8Rng) -> Result<SampleEstimate>
where
    X: L2Sampler,
    Y: EntryOracle<X::Index>,
{
    if !(epsilon > 0.0) || !(0.0 < delta && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("need ε > 0 and 0 < δ < 1, got ε = {epsilon}, δ = {delta}")));
    }
    let before = x.queries() + y.queries();
    let norm = x.norm_sqr();
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let (groups, per_group) = median_of_means_shape(epsilon, delta);
    let mut means: Vec<f64> = (0..groups)
        .map(|_| {
            (0..per_group)
                .map(|_| {
                    let (i, xi) = x.sample(rng);
                    y.entry(&i) / xi * norm
                })
                .sum::<f64>()
                / per_group as f64
        })
        .collect();
    means.sort_by(f64::total_cmp);
    let mid = means.len() / 2;
    let value = if means.len() % 2 == 1 {
        means[mid]
    } else {
        0.5 * (means[mid - 1] + means[mid])
    };
    Ok(SampleEstimate {
        value,
        epsilon,
        delta,
        samples: groups * per_group,
        queries: x.queries() + y.queries() - before,
    })
}

/// How the accuracy ε of the inner-product estimate is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonPolicy {
    /// ε* = 1/(||X|| ||Y||): inner-product error at most 1.
    #[default]
    EpsilonStar,
    /// ε = X_e / (2 ||X|| ||Y||): eigenvalue error below 1/2, so rounding
    /// is guaranteed with probability 1 - δ.
    RoundingSafe,
}

/// ||X||^2 ||Y||^2 = (d_R^2/n!) |T_k|, exactly.
pub fn norm_product_sqr(r: &Partition, k: usize) -> BigRational {
    let d = dimension(r);
    BigRational::new(&d * &d * cycle_class_size(r.weight(), k), factorial(r.weight()))
}

/// 1/(||X|| ||Y||).
pub fn epsilon_star(r: &Partition, k: usize) -> f64 {
    1.0 / norm_product_sqr(r, k).to_f64().unwrap().sqrt()
}

pub fn epsilon_for(policy: EpsilonPolicy, r: &Partition, k: usize) -> f64 {
    match policy {
        EpsilonPolicy::EpsilonStar => epsilon_star(r, k),
        EpsilonPolicy::RoundingSafe => {
            let d = dimension(r);
            let xe = BigRational::new(&d * &d, factorial(r.weight())).to_f64().unwrap();
            xe * epsilon_star(r, k) / 2.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenEstimate {
    pub k: usize,
    pub estimate: f64,
    pub rounded: i64,
    pub truth: i64,
    pub correct: bool,
    pub queries: u64,
    pub epsilon: f64,
    pub samples: u64,
}

/// Estimates chi_hat^R(T_k) and rounds it to an integer.
pub fn estimate_eigenvalue(
    r: &Partition,
    k: usize,
    delta: f64,
    policy: EpsilonPolicy,
    seed: u64,
) -> Result<EigenEstimate> {
    let n = r.weight();
    let x = PregOracle::new(r)?;
    let y = TkOracle::new(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (e, _) = x.find_nonzero_entry();
    let xe = x.entry(&e, &e)?.to_f64().unwrap();
    let epsilon = epsilon_for(policy, r, k);
    let inner = l2_inner_product(&x, &y, epsilon, delta, &mut rng)?;
    let estimate = inner.value / xe;
    let rounded = estimate.round() as i64;
    let truth = normalized_character(r, k)?.to_i64().expect("small eigenvalue");
    Ok(EigenEstimate {
        k,
        estimate,
        rounded,
        truth,
        correct: rounded == truth,
        queries: x.queries() + y.queries(),
        epsilon,
        samples: inner.samples,
    })
}

/// n^k d_R^2 / (k n!).
pub fn q_star(r: &Partition, k: usize) -> f64 {
    let n = r.weight();
    let d = dimension(r).to_f64().unwrap();
    (n as f64).powi(k as i32) * d * d / (k as f64 * factorial(n).to_f64().unwrap())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub schema: &'static str,
    pub n: usize,
    pub true_label: String,
    pub identified_label: Option<String>,
    pub delta: f64,
    pub policy: EpsilonPolicy,
    pub seed: u64,
    pub per_k: Vec<EigenEstimate>,
    pub q_star: Vec<f64>,
    pub failures: u64,
    pub total_queries: u64,
    /// Queries with the log(1/δ) repetition factor removed.
    pub total_queries_without_log: f64,
}

/// Estimates every eigenvalue up to k*(n) and looks the rounded signature up.
pub fn classical_detect(r: &Partition, delta: f64, policy: EpsilonPolicy, seed: u64) -> Result<ClassicalReport> {
    let n = r.weight();
    check_n(n)?;
    let ks = if n < 2 { 1 } else { k_star(n) };
    let per_k = (2..=ks)
        .map(|k| estimate_eigenvalue(r, k, delta, policy, seed.wrapping_add(k as u64)))
        .collect::<Result<Vec<_>>>()?;
    let signature: Vec<BigInt> = per_k.iter().map(|e| BigInt::from(e.rounded)).collect();
    let identified = detection_table(n).lookup(&signature).map(ToString::to_string);
    let (groups, _) = median_of_means_shape(1.0, delta);
    let total_queries: u64 = per_k.iter().map(|e| e.queries).sum();
    Ok(ClassicalReport {
        schema: "1",
        n,
        true_label: r.to_string(),
        failures: per_k.iter().filter(|e| !e.correct).count() as u64,
        identified_label: identified,
        delta,
        policy,
        seed,
        q_star: (2..=ks).map(|k| q_star(r, k)).collect(),
        total_queries,
        total_queries_without_log: total_queries as f64 / groups as f64,
        per_k,
    })
}

/// Fraction of correct roundings over `trials` seeded runs.
pub fn success_rate(r: &Partition, k: usize, delta: f64, policy: EpsilonPolicy, trials: u64, exec: Exec) -> Result<(f64, u64)> {
    let seeds: Vec<u64> = (0..trials).collect();
    let runs = exec.try_map(&seeds, |&s| estimate_eigenvalue(r, k, delta, policy, s))?;
    let ok = runs.iter().filter(|e| e.correct).count();
    let max_queries = runs.iter().map(|e| e.queries).max().unwrap_or(0);
    Ok((ok as f64 / trials as f64, max_queries))
}

/// Exact Σ_γ (D^reg(P_R))_{γ μ}^2 over all γ ∈ S_n.
pub fn lemma_preg_sum(r: &Partition, mu: &Perm) -> Result<BigRational> {
    crate::perm::all_perms(r.weight())
        .iter()
        .map(|g| preg_entry(r, g, mu).map(|v| &v * &v))
        .try_fold(BigRational::zero(), |acc, v| v.map(|v| acc + v))
}

/// Σ_τ (D^reg(T_k))_{σ τ}^2 over all τ ∈ S_n.
pub fn lemma_tk_sum(sigma: &Perm, k: usize) -> u64 {
    crate::perm::all_perms(sigma.degree())
        .iter()
        .map(|t| u64::from(tk_row_entry(sigma, t, k)))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DmaxBounds {
    pub lower: f64,
    pub upper: f64,
    #[serde(serialize_with = "crate::centre::ser_bigint")]
    pub actual: BigInt,
    /// Number of one-dimensional irreducibles.
    pub linear: usize,
}

/// sqrt((n!-2)/(p(n)-2)) <= max_R d_R <= sqrt(n!-2).
pub fn dmax_bounds(n: usize) -> Result<DmaxBounds> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("bounds need n >= 3, got {n}")));
    }
    let dims: Vec<BigInt> = partitions(n).iter().map(dimension).collect();
    let linear = dims.iter().filter(|d| **d == BigInt::from(1)).count();
    let fact = factorial(n).to_f64().unwrap();
    let p = dims.len() as f64;
    Ok(DmaxBounds {
        lower: ((fact - 2.0) / (p - 2.0)).sqrt(),
        upper: (fact - 2.0).sqrt(),
        actual: dims.into_iter().max().unwrap(),
        linear,
    })
}
