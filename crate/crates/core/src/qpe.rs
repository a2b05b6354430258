//! Statevector simulation of quantum phase estimation for diagonal unitaries.
//!
//! Register qubit 1 is the most significant bit of the register index. The
//! system is stored compressed to the basis vectors carrying amplitude, so a
//! run costs O(t 2^t S) for a support of size S regardless of the full
//! system dimension.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest register accepted by the simulator.
pub const MAX_T: u32 = 24;

const NORM_TOL: f64 = 1e-9;

/// diag(e^{2 pi i lambda_s}) over a D-dimensional system.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalUnitary {
    phases: Vec<f64>,
}

impl DiagonalUnitary {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if let Some(p) = phases.iter().find(|p| !(0.0..1.0).contains(*p)) {
            return Err(Error::InvalidArgument(format!("phase {p} outside [0, 1)")));
        }
        Ok(DiagonalUnitary { phases })
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounters {
    pub cu_queries: u64,
    pub hadamards: u64,
    pub controlled_rk: u64,
    /// Hadamards plus controlled-R_k; oracle calls are tallied separately.
    pub total_gates: u64,
}

impl GateCounters {
    /// Counts after one complete phase estimation with t register bits.
    pub fn closed_form(t: u32) -> Self {
        let t = u64::from(t);
        GateCounters {
            cu_queries: t,
            hadamards: 2 * t,
            controlled_rk: t * (t - 1) / 2,
            total_gates: 2 * t + t * (t - 1) / 2,
        }
    }

    fn hadamard(&mut self) {
        self.hadamards += 1;
        self.total_gates += 1;
    }

    fn rk(&mut self) {
        self.controlled_rk += 1;
        self.total_gates += 1;
    }
}

impl std::ops::AddAssign for GateCounters {
    fn add_assign(&mut self, o: Self) {
        self.cu_queries += o.cu_queries;
        self.hadamards += o.hadamards;
        self.controlled_rk += o.controlled_rk;
        self.total_gates += o.total_gates;
    }
}

/// Register (t qubits) tensor system. Amplitude of |l>|s> sits at
/// `l * support.len() + position of s in support`.
#[derive(Clone, Debug)]
pub struct QpeState {
    t: u32,
    dim: usize,
    support: Vec<usize>,
    amps: Vec<Complex64>,
    counters: GateCounters,
}

impl QpeState {
    /// |0>^t |psi>; psi must have unit norm.
    pub fn new(t: u32, system: &[Complex64]) -> Result<Self> {
        if t == 0 || t > MAX_T {
            return Err(Error::InvalidArgument(format!("register size t = {t} outside 1..={MAX_T}")));
        }
        let norm: f64 = system.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!("system state has norm^2 {norm}, expected 1")));
        }
        let support: Vec<usize> = (0..system.len()).filter(|&s| system[s] != Complex64::ZERO).collect();
        let mut amps = vec![Complex64::ZERO; support.len() << t];
        for (i, &s) in support.iter().enumerate() {
            amps[i] = system[s];
        }
        Ok(QpeState {
            t,
            dim: system.len(),
            support,
            amps,
            counters: GateCounters::default(),
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn counters(&self) -> GateCounters {
        self.counters
    }

    fn width(&self) -> usize {
        self.support.len()
    }

    /// Amplitude of |l>|s> for an uncompressed system index s.
    pub fn amplitude(&self, l: usize, s: usize) -> Complex64 {
        match self.support.iter().position(|&x| x == s) {
            Some(i) => self.amps[l * self.width() + i],
            None => Complex64::ZERO,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Register-index bit for qubit q (1-based, qubit 1 most significant).
    fn bit(&self, q: u32) -> usize {
        assert!((1..=self.t).contains(&q), "qubit {q} out of range");
        1 << (self.t - q)
    }

    pub fn apply_hadamard(&mut self, q: u32) {
        let mask = self.bit(q);
        let w = self.width();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for l in (0..1usize << self.t).filter(|l| l & mask == 0) {
            for i in 0..w {
                let a = self.amps[l * w + i];
                let b = self.amps[(l | mask) * w + i];
                self.amps[l * w + i] = (a + b) * h;
                self.amps[(l | mask) * w + i] = (a - b) * h;
            }
        }
        self.counters.hadamard();
    }

    /// Controlled phase e^{i angle} on |1>_control |1>_target.
    fn apply_controlled_phase(&mut self, control: u32, target: u32, angle: f64) {
        let mask = self.bit(control) | self.bit(target);
        let w = self.width();
        let phase = Complex64::from_polar(1.0, angle);
        for l in (0..1usize << self.t).filter(|l| l & mask == mask) {
            for a in &mut self.amps[l * w..(l + 1) * w] {
                *a *= phase;
            }
        }
    }

    /// Controlled-R_k with R_k = diag(1, e^{2 pi i / 2^k}), or its inverse.
    pub fn apply_controlled_rk(&mut self, control: u32, target: u32, k: u32, inverse: bool) {
        let sign = if inverse { -1.0 } else { 1.0 };
        self.apply_controlled_phase(control, target, sign * 2.0 * PI / 2f64.powi(k as i32));
        self.counters.rk();
    }

    pub fn apply_swap(&mut self, q1: u32, q2: u32) {
        let (m1, m2) = (self.bit(q1), self.bit(q2));
        let w = self.width();
        for l in (0..1usize << self.t).filter(|l| l & m1 != 0 && l & m2 == 0) {
            let other = (l & !m1) | m2;
            for i in 0..w {
                self.amps.swap(l * w + i, other * w + i);
            }
        }
    }

    fn reverse_qubits(&mut self) {
        for q in 1..=self.t / 2 {
            self.apply_swap(q, self.t + 1 - q);
        }
    }

    /// Hadamard on every register qubit.
    pub fn hadamard_layer(&mut self) {
        for q in 1..=self.t {
            self.apply_hadamard(q);
        }
    }

    /// Applies U^(2^j) controlled on register bit j (bit 0 least significant).
    pub fn controlled_power_u(&mut self, u: &DiagonalUnitary, j: u32) -> Result<()> {
        if j >= self.t {
            return Err(Error::InvalidArgument(format!("control bit {j} outside register of {} bits", self.t)));
        }
        if u.dim() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "unitary of dimension {} on a system of dimension {}",
                u.dim(),
                self.dim
            )));
        }
        let mask = 1usize << j;
        let w = self.width();
        let power = (1u64 << j) as f64;
        let factors: Vec<Complex64> = self
            .support
            .iter()
            .map(|&s| Complex64::from_polar(1.0, 2.0 * PI * (power * u.phases[s]).fract()))
            .collect();
        for l in (0..1usize << self.t).filter(|l| l & mask != 0) {
            for (a, f) in self.amps[l * w..(l + 1) * w].iter_mut().zip(&factors) {
                *a *= f;
            }
        }
        self.counters.cu_queries += 1;
        Ok(())
    }

    /// |j> -> 2^{-t/2} sum_k e^{2 pi i j k / 2^t} |k>.
    pub fn qft(&mut self) {
        for q in 1..=self.t {
            self.apply_hadamard(q);
            for m in q + 1..=self.t {
                self.apply_controlled_rk(m, q, m - q + 1, false);
            }
        }
        self.reverse_qubits();
    }

    pub fn inverse_qft(&mut self) {
        self.reverse_qubits();
        for q in (1..=self.t).rev() {
            for m in (q + 1..=self.t).rev() {
                self.apply_controlled_rk(m, q, m - q + 1, true);
            }
            self.apply_hadamard(q);
        }
    }

    /// Probability of each register value.
    pub fn distribution(&self) -> Vec<f64> {
        let w = self.width();
        self.amps.chunks(w.max(1)).map(|c| c.iter().map(|a| a.norm_sqr()).sum()).collect()
    }

    /// Samples a register value and collapses onto it.
    pub fn measure<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<usize> {
        let dist = self.distribution();
        let index = WeightedIndex::new(&dist).map_err(|e| Error::Numerical(format!("outcome distribution: {e}")))?;
        let m = index.sample(rng);
        self.collapse(m)?;
        Ok(m)
    }

    /// Projects the register onto |m> and renormalizes.
    pub fn collapse(&mut self, m: usize) -> Result<()> {
        let w = self.width();
        let p: f64 = self.amps[m * w..(m + 1) * w].iter().map(|a| a.norm_sqr()).sum();
        if p == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let scale = p.sqrt();
        for (l, chunk) in self.amps.chunks_mut(w).enumerate() {
            for a in chunk {
                *a = if l == m { *a / scale } else { Complex64::ZERO };
            }
        }
        Ok(())
    }

    /// System state after measuring m, up to the register: normalized
    /// amplitudes of |m>|s> over the full system dimension.
    pub fn system_state(&self, m: usize) -> Result<Vec<Complex64>> {
        let w = self.width();
        let block = &self.amps[m * w..(m + 1) * w];
        let p: f64 = block.iter().map(|a| a.norm_sqr()).sum();
        if p == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let mut out = vec![Complex64::ZERO; self.dim];
        for (&s, a) in self.support.iter().zip(block) {
            out[s] = a / p.sqrt();
        }
        Ok(out)
    }
}

/// The state just before measurement, and its gate counters.
#[derive(Clone, Debug)]
pub struct QpeRun {
    pub state: QpeState,
    pub distribution: Vec<f64>,
    pub counters: GateCounters,
}

/// Hadamard layer, controlled powers U^(2^j) for j = 0..t-1, inverse QFT.
pub fn qpe_run(u: &DiagonalUnitary, system: &[Complex64], t: u32) -> Result<QpeRun> {
    if system.len() != u.dim() {
        return Err(Error::InvalidArgument(format!(
            "system of dimension {} for a unitary of dimension {}",
            system.len(),
            u.dim()
        )));
    }
    let mut state = QpeState::new(t, system)?;
    state.hadamard_layer();
    for j in 0..t {
        state.controlled_power_u(u, j)?;
    }
    state.inverse_qft();
    let distribution = state.distribution();
    let counters = state.counters();
    Ok(QpeRun {
        state,
        distribution,
        counters,
    })
}

/// Register value whose phase m/2^t equals e/2^t mod 1.
pub fn phase_encode(eigenvalue: i64, chi_max: u64, t: u32) -> Result<f64> {
    check_register(t, chi_max)?;
    if eigenvalue.unsigned_abs() > chi_max {
        return Err(Error::InvalidArgument(format!("eigenvalue {eigenvalue} exceeds bound {chi_max}")));
    }
    let modulus = 1i64 << t;
    Ok(eigenvalue.rem_euclid(modulus) as f64 / modulus as f64)
}

/// Two's-complement reading of a t-bit register value.
pub fn phase_decode(m: usize, t: u32) -> i64 {
    let m = m as i64;
    if m < 1 << (t - 1) {
        m
    } else {
        m - (1 << t)
    }
}

/// 2^t >= 2 chi_max + 2 keeps every eigenvalue in [-chi_max, chi_max]
/// distinguishable after wrap-around.
pub fn check_register(t: u32, chi_max: u64) -> Result<()> {
    let fits = t < 63 && (1u128 << t) >= 2 * u128::from(chi_max) + 2;
    if !fits || t > MAX_T {
        return Err(Error::RegisterTooSmall { t, chi_max });
    }
    Ok(())
}

/// floor(2^t lambda): the best t-bit estimate from below.
pub fn best_estimate(lambda: f64, t: u32) -> usize {
    ((lambda * (1u64 << t) as f64).floor() as usize) % (1usize << t)
}

/// Probability mass at circular distance greater than e from b.
pub fn tail_probability(distribution: &[f64], b: usize, e: usize) -> f64 {
    let size = distribution.len();
    distribution
        .iter()
        .enumerate()
        .filter(|&(m, _)| {
            let d = (m + size - b) % size;
            d.min(size - d) > e
        })
        .map(|(_, p)| p)
        .sum()
}

/// 1/(2(e-1)): the bound on the tail beyond e.
pub fn tail_bound(e: usize) -> f64 {
    1.0 / (2.0 * (e as f64 - 1.0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutcomeCount {
    pub value: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShotReport {
    pub t: u32,
    pub outcomes: Vec<OutcomeCount>,
    pub cu_queries: u64,
    pub total_gates: u64,
    pub seed: u64,
}

/// Draws `shots` register values from an outcome distribution.
pub fn sample_shots<R: Rng + ?Sized>(distribution: &[f64], shots: u64, rng: &mut R) -> Result<Vec<OutcomeCount>> {
    let index = WeightedIndex::new(distribution).map_err(|e| Error::Numerical(format!("outcome distribution: {e}")))?;
    let mut counts = vec![0u64; distribution.len()];
    for _ in 0..shots {
        counts[index.sample(rng)] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(value, count)| OutcomeCount { value, count })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one() -> Vec<Complex64> {
        vec![Complex64::new(1.0, 0.0)]
    }

    fn random_state(t: u32, rng: &mut ChaCha8Rng) -> QpeState {
        let mut st = QpeState::new(t, &one()).unwrap();
        for a in st.amps.iter_mut() {
            *a = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
        let norm = st.norm_sqr().sqrt();
        st.amps.iter_mut().for_each(|a| *a /= norm);
        st
    }

    #[test]
    fn hadamard_layers() {
        let mut s = QpeState::new(1, &one()).unwrap();
        s.hadamard_layer();
        assert_abs_diff_eq!(s.amplitude(0, 0).re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1, 0).re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        let mut s = QpeState::new(2, &one()).unwrap();
        s.hadamard_layer();
        for l in 0..4 {
            assert_abs_diff_eq!(s.amplitude(l, 0).re, 0.5, epsilon = 1e-15);
        }
        for t in 1..=10 {
            let mut s = QpeState::new(t, &one()).unwrap();
            s.hadamard_layer();
            assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn controlled_powers() {
        let zero = DiagonalUnitary::new(vec![0.0]).unwrap();
        let mut s = QpeState::new(3, &one()).unwrap();
        s.hadamard_layer();
        let before = s.amps.clone();
        for j in 0..3 {
            s.controlled_power_u(&zero, j).unwrap();
        }
        assert_eq!(s.amps, before);

        let half = DiagonalUnitary::new(vec![0.5]).unwrap();
        let mut s = QpeState::new(1, &one()).unwrap();
        s.hadamard_layer();
        s.controlled_power_u(&half, 0).unwrap();
        assert_abs_diff_eq!(s.amplitude(1, 0).re, -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);

        let lambda = 0.3141;
        let u = DiagonalUnitary::new(vec![lambda]).unwrap();
        let t = 5;
        let mut s = QpeState::new(t, &one()).unwrap();
        s.hadamard_layer();
        for j in 0..t {
            s.controlled_power_u(&u, j).unwrap();
        }
        for l in 0..32 {
            let expect = Complex64::from_polar(1.0, 2.0 * PI * l as f64 * lambda) / 32f64.sqrt();
            assert_abs_diff_eq!((s.amplitude(l, 0) - expect).norm(), 0.0, epsilon = 1e-12);
        }
        assert_eq!(s.counters().cu_queries, 5);
    }

    #[test]
    fn qft_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in 1..=8 {
            let mut s = random_state(t, &mut rng);
            let before = s.amps.clone();
            s.qft();
            s.inverse_qft();
            for (a, b) in s.amps.iter().zip(&before) {
                assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn one_qubit_inverse_qft_is_hadamard() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut a = random_state(1, &mut rng);
        let mut b = a.clone();
        a.inverse_qft();
        b.apply_hadamard(1);
        assert_eq!(a.amps, b.amps);
    }

    #[test]
    fn qft_matches_definition() {
        let t = 4;
        for j in 0..16usize {
            let mut s = QpeState::new(t, &one()).unwrap();
            s.amps.iter_mut().for_each(|a| *a = Complex64::ZERO);
            s.amps[j] = Complex64::new(1.0, 0.0);
            s.qft();
            for k in 0..16 {
                let expect = Complex64::from_polar(0.25, 2.0 * PI * (j * k) as f64 / 16.0);
                assert_abs_diff_eq!((s.amplitude(k, 0) - expect).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn exact_phase_is_read_exactly() {
        let u = DiagonalUnitary::new(vec![5.0 / 16.0]).unwrap();
        let run = qpe_run(&u, &one(), 4).unwrap();
        assert_abs_diff_eq!(run.distribution[5], 1.0, epsilon = 1e-12);
        assert_eq!(run.counters, GateCounters::closed_form(4));
        assert_eq!(run.counters.total_gates, 8 + 6);
    }

    #[test]
    fn superposition_of_eigenstates() {
        let u = DiagonalUnitary::new(vec![0.25, 0.75]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let run = qpe_run(&u, &[Complex64::new(h, 0.0), Complex64::new(h, 0.0)], 2).unwrap();
        assert_abs_diff_eq!(run.distribution[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(run.distribution[3], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(run.distribution[0] + run.distribution[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_amplitudes_are_compressed_away() {
        let u = DiagonalUnitary::new(vec![0.125, 0.5, 0.0]).unwrap();
        let psi = [Complex64::ZERO, Complex64::new(1.0, 0.0), Complex64::ZERO];
        let mut run = qpe_run(&u, &psi, 3).unwrap();
        assert_eq!(run.state.width(), 1);
        assert_abs_diff_eq!(run.distribution[4], 1.0, epsilon = 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(run.state.measure(&mut rng).unwrap(), 4);
        let post = run.state.system_state(4).unwrap();
        assert_abs_diff_eq!(post[1].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn inexact_phase_matches_closed_form() {
        let lambda = 1.0 / 3.0;
        let t = 4;
        let n = 16.0;
        let run = qpe_run(&DiagonalUnitary::new(vec![lambda]).unwrap(), &one(), t).unwrap();
        for (m, p) in run.distribution.iter().enumerate() {
            let delta = lambda - m as f64 / n;
            let amp: Complex64 = (0..16).map(|k| Complex64::from_polar(1.0 / n, 2.0 * PI * k as f64 * delta)).sum();
            assert_abs_diff_eq!(*p, amp.norm_sqr(), epsilon = 1e-12);
        }
        let b = best_estimate(lambda, t);
        assert_eq!(b, 5);
        let e = (1 << (t - 2)) - 1;
        assert!(tail_probability(&run.distribution, b, e) < tail_bound(e));
    }

    #[test]
    fn amplitude_bound_for_inexact_phase() {
        for (lambda, t) in [(1.0 / 3.0, 6u32), (1.0 / 7.0, 8), (2f64.sqrt() - 1.0, 10)] {
            let run = qpe_run(&DiagonalUnitary::new(vec![lambda]).unwrap(), &one(), t).unwrap();
            let size = 1usize << t;
            let b = best_estimate(lambda, t);
            let delta = lambda - b as f64 / size as f64;
            for m in 0..size {
                let mut l = (m + size - b) % size;
                if l >= size / 2 {
                    l = l.wrapping_sub(size);
                }
                let l = l as isize as f64;
                let gap = (delta - l / size as f64).abs();
                let bound = 1.0 / (2.0 * size as f64 * gap);
                assert!(run.distribution[m].sqrt() <= bound + 1e-12, "lambda {lambda} t {t} m {m}");
            }
        }
    }

    #[test]
    fn encode_decode() {
        assert_eq!(phase_encode(-3, 3, 4).unwrap(), 13.0 / 16.0);
        assert_eq!(phase_decode(13, 4), -3);
        assert_eq!(phase_encode(0, 3, 4).unwrap(), 0.0);
        assert_eq!(phase_encode(15, 15, 5).unwrap(), 15.0 / 32.0);
        assert_eq!(phase_decode(15, 5), 15);
        for e in -15..=15 {
            let m = (phase_encode(e, 15, 5).unwrap() * 32.0) as usize;
            assert_eq!(phase_decode(m, 5), e);
        }
        assert!(matches!(phase_encode(15, 15, 4), Err(Error::RegisterTooSmall { t: 4, chi_max: 15 })));
        assert!(phase_encode(16, 15, 5).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(DiagonalUnitary::new(vec![1.0]).is_err());
        assert!(QpeState::new(0, &one()).is_err());
        assert!(QpeState::new(2, &[Complex64::new(2.0, 0.0)]).is_err());
        let mut s = QpeState::new(2, &one()).unwrap();
        assert!(s.controlled_power_u(&DiagonalUnitary::new(vec![0.0]).unwrap(), 2).is_err());
    }

    #[test]
    fn shots_are_reproducible() {
        let run = qpe_run(&DiagonalUnitary::new(vec![0.3]).unwrap(), &one(), 4).unwrap();
        let a = sample_shots(&run.distribution, 1000, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = sample_shots(&run.distribution, 1000, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|o| o.count).sum::<u64>(), 1000);
    }
}
