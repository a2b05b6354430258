//! Classical moment-recovery pipeline: Young diagram → fermion energies →
//! Casimir sums A_l → sampled angular profile ũ(θ) → Fourier coefficients →
//! triangular solve for A_l → power sums M_k → diagram.
//!
//! ũ(ρ, θ) = sum_{l<=Λ} U(l, ρ) P_l(cos 2θ), U(l, ρ) = (-1)^l (l+1) A_l / ρ^{2l+2}.
//!
//! ũ carries frequencies e^{2iθm} for |m| <= Λ, so it is sampled at
//! L = 2(Λ+1) points θ_j = πj/L, which keeps bins m and -m apart.

mod fft;
mod jacobi;
mod moments;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::Serialize;

pub use fft::{dft, fft, OpCount};
pub use jacobi::{
    diagonal_fourier, diagonal_nonzero, hypergeometric, jacobi_coeffs, legendre_all, legendre_exact, monomial_coeff, JacobiCoeffTable,
};
pub use moments::{
    a_poly, casimir_matrix, casimirs, casimirs_from_moments, cutoff_csv, cutoff_table, moment_cutoff,
    moments_from_casimirs, power_sums, recover_diagram, stirling_first, CasimirMoments, CutoffRow, FermionConfig,
};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest residual accepted when rounding a recovered A_l.
pub const ROUNDING_LIMIT: f64 = 0.5;

pub fn grid_len(lambda: usize) -> usize {
    2 * (lambda + 1)
}

pub fn grid(lambda: usize) -> Vec<f64> {
    let len = grid_len(lambda);
    (0..len).map(|j| PI * j as f64 / len as f64).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryProfile {
    pub rho: f64,
    pub lambda: usize,
    pub thetas: Vec<f64>,
    pub samples: Vec<f64>,
}

impl GeometryProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,u\n");
        for (t, u) in self.thetas.iter().zip(&self.samples) {
            out.push_str(&format!("{t:.17e},{u:.17e}\n"));
        }
        out
    }
}

/// U(l, ρ) for l = 0..=Λ.
pub fn u_coefficients(a: &[BigInt], rho: f64) -> Vec<f64> {
    a.iter()
        .enumerate()
        .map(|(l, a_l)| {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            sign * (l + 1) as f64 * a_l.to_f64().unwrap() / rho.powi(2 * l as i32 + 2)
        })
        .collect()
}

/// Samples ũ on the grid from given Casimir sums A_0..A_Λ.
pub fn profile_from_casimirs(a: &[BigInt], rho: f64) -> Result<GeometryProfile> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidArgument(format!("rho must be positive, got {rho}")));
    }
    let lambda = a.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty Casimir sequence".into()))?;
    let u = u_coefficients(a, rho);
    let thetas = grid(lambda);
    let samples = thetas
        .iter()
        .map(|t| {
            legendre_all(lambda, (2.0 * t).cos())
                .iter()
                .zip(&u)
                .map(|(p, c)| p * c)
                .sum()
        })
        .collect();
    Ok(GeometryProfile { rho, lambda, thetas, samples })
}

pub fn u_profile(config: &FermionConfig, rho: f64, lambda: usize) -> Result<GeometryProfile> {
    profile_from_casimirs(&casimirs(config, lambda), rho)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformPath {
    Fft,
    Dft,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extraction {
    /// C̃_0..C̃_Λ (real parts).
    pub coeffs: Vec<f64>,
    /// Largest discarded imaginary part.
    pub max_imag: f64,
    pub path: TransformPath,
    pub ops: OpCount,
}

fn check_grid(profile: &GeometryProfile) -> Result<()> {
    let len = grid_len(profile.lambda);
    if profile.samples.len() != len || profile.thetas.len() != len {
        return Err(Error::InvalidGrid(format!(
            "expected {len} samples for cutoff {}, got {} samples at {} angles",
            profile.lambda,
            profile.samples.len(),
            profile.thetas.len()
        )));
    }
    for (j, (t, want)) in profile.thetas.iter().zip(grid(profile.lambda)).enumerate() {
        if (t - want).abs() > 1e-12 {
            return Err(Error::InvalidGrid(format!("angle {j} is {t}, expected {want}")));
        }
    }
    Ok(())
}

/// FFT when the grid length is a power of two, direct DFT otherwise.
pub fn dft_extract(profile: &GeometryProfile) -> Result<Extraction> {
    let path = if grid_len(profile.lambda).is_power_of_two() { TransformPath::Fft } else { TransformPath::Dft };
    dft_extract_with(profile, path)
}

pub fn dft_extract_with(profile: &GeometryProfile, path: TransformPath) -> Result<Extraction> {
    check_grid(profile)?;
    let len = profile.samples.len();
    let x: Vec<Complex64> = profile.samples.iter().map(|&u| Complex64::new(u, 0.0)).collect();
    let bins = profile.lambda + 1;
    let (mut out, ops) = match path {
        TransformPath::Fft => {
            if !len.is_power_of_two() {
                return Err(Error::InvalidGrid(format!("FFT path needs a power-of-two grid, got {len}")));
            }
            fft(&x)
        }
        TransformPath::Dft => dft(&x, bins),
    };
    out.truncate(bins);
    let scale = 1.0 / len as f64;
    let max_imag = out.iter().map(|c| (c.im * scale).abs()).fold(0.0, f64::max);
    Ok(Extraction { coeffs: out.iter().map(|c| c.re * scale).collect(), max_imag, path, ops })
}

/// Multiply-adds and divisions in the back substitution: (Λ+1)².
pub fn solve_op_count(lambda: usize) -> u64 {
    (lambda as u64 + 1).pow(2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolvedCasimirs {
    pub u: Vec<f64>,
    #[serde(serialize_with = "crate::centre::ser_bigints")]
    pub a: Vec<BigInt>,
    /// max_l |A_l - round(A_l)| before rounding.
    pub residual: f64,
    pub ops: u64,
}

/// Back substitution U_j = (C̃_j - sum_{l>j} U_l p̃_{l,j}) / p̃_{j,j}, then
/// A_l = (-1)^l ρ^{2l+2} U_l / (l+1) rounded to integers.
pub fn solve_u(c: &[f64], table: &JacobiCoeffTable, rho: f64) -> Result<SolvedCasimirs> {
    let lambda = c.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("no Fourier coefficients".into()))?;
    if table.lambda() < lambda {
        return Err(Error::InvalidArgument(format!("coefficient table covers {} < {lambda}", table.lambda())));
    }
    let mut u = vec![0.0; lambda + 1];
    let mut ops = 0u64;
    for j in (0..=lambda).rev() {
        let mut acc = c[j];
        for l in j + 1..=lambda {
            acc -= u[l] * table.fourier_f64(l, j);
            ops += 2;
        }
        u[j] = acc / table.fourier_f64(j, j);
        ops += 1;
    }
    let mut residual: f64 = 0.0;
    let mut a = Vec::with_capacity(lambda + 1);
    for (l, u_l) in u.iter().enumerate() {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let raw = sign * rho.powi(2 * l as i32 + 2) * u_l / (l + 1) as f64;
        let rounded = raw.round();
        residual = residual.max((raw - rounded).abs());
        a.push(BigInt::from_f64(rounded).ok_or_else(|| Error::Numerical(format!("A_{l} = {raw} is not finite")))?);
    }
    if residual >= ROUNDING_LIMIT {
        return Err(Error::Numerical(format!("Casimir sums are {residual} away from integers")));
    }
    Ok(SolvedCasimirs { u, a, residual, ops })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundTrip {
    pub input: Partition,
    pub recovered: Partition,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub rho: f64,
    pub lambda: usize,
    #[serde(serialize_with = "crate::centre::ser_bigints")]
    pub casimirs: Vec<BigInt>,
    #[serde(serialize_with = "crate::centre::ser_bigints")]
    pub recovered_casimirs: Vec<BigInt>,
    #[serde(serialize_with = "crate::centre::ser_bigints")]
    pub moments: Vec<BigInt>,
    pub casimir_residual: f64,
    pub path: TransformPath,
    pub transform_ops: OpCount,
    pub solve_ops: u64,
}

/// Full pipeline for R ⊢ n with N fermions. The cutoff defaults to
/// moment_cutoff(n, N).
pub fn round_trip(r: &Partition, big_n: usize, rho: f64, lambda: Option<usize>) -> Result<RoundTrip> {
    let n = r.weight();
    let lambda = match lambda {
        Some(l) => l,
        None => moment_cutoff(n, big_n)?,
    };
    let config = FermionConfig::from_diagram(r, big_n)?;
    let a = casimirs(&config, lambda);
    let profile = profile_from_casimirs(&a, rho)?;
    let ext = dft_extract(&profile)?;
    let solved = solve_u(&ext.coeffs, &jacobi_coeffs(lambda), rho)?;
    let moments = moments_from_casimirs(&solved.a)?;
    let recovered = recover_diagram(&moments, n, big_n)?;
    Ok(RoundTrip {
        input: r.clone(),
        recovered,
        big_n,
        rho,
        lambda,
        casimirs: a,
        recovered_casimirs: solved.a,
        moments,
        casimir_residual: solved.residual,
        path: ext.path,
        transform_ops: ext.ops,
        solve_ops: solved.ops,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HoloComplexity {
    pub schema: &'static str,
    pub lambda: usize,
    pub beta: f64,
    pub samples: usize,
    /// samples × Λ^β, the modeled measurement cost.
    pub measurement: f64,
    pub transform_path: TransformPath,
    pub transform_ops: u64,
    pub solve_ops: u64,
    pub dominant: &'static str,
    pub case: u8,
    pub order: String,
}

/// Measured transform and solve counts next to the modeled measurement term.
/// β <= 1 is Case 1, O(Λ²); β > 1 is Case 2, O(Λ^{1+β}).
pub fn holographic_complexity_report(lambda: usize, beta: f64) -> Result<HoloComplexity> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!("beta must be non-negative, got {beta}")));
    }
    let profile = GeometryProfile {
        rho: 1.0,
        lambda,
        thetas: grid(lambda),
        samples: vec![0.0; grid_len(lambda)],
    };
    let ext = dft_extract(&profile)?;
    let solve_ops = solve_op_count(lambda);
    let samples = grid_len(lambda);
    let measurement = samples as f64 * (lambda.max(1) as f64).powf(beta);
    let transform_ops = ext.ops.total();
    let terms = [("measurement", measurement), ("transform", transform_ops as f64), ("solve", solve_ops as f64)];
    let dominant = terms.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
    let (case, order) = if beta <= 1.0 { (1, "O(Lambda^2)".to_string()) } else { (2, format!("O(Lambda^{})", 1.0 + beta)) };
    Ok(HoloComplexity {
        schema: "1",
        lambda,
        beta,
        samples,
        measurement,
        transform_path: ext.path,
        transform_ops,
        solve_ops,
        dominant,
        case,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ground_state_profile() {
        let prof = u_profile(&FermionConfig::ground(1), 1.0, 0).unwrap();
        assert_eq!(prof.samples.len(), 2);
        for s in &prof.samples {
            assert_abs_diff_eq!(*s, 1.0, epsilon = 1e-15);
        }
        let ext = dft_extract(&prof).unwrap();
        assert_abs_diff_eq!(ext.coeffs[0], 1.0, epsilon = 1e-15);
        let solved = solve_u(&ext.coeffs, &jacobi_coeffs(0), 1.0).unwrap();
        assert_abs_diff_eq!(solved.u[0], ext.coeffs[0], epsilon = 1e-15);
        assert!(prof.to_csv().starts_with("theta,u\n"));
        assert!(u_profile(&FermionConfig::ground(1), 0.0, 0).is_err());
    }

    #[test]
    fn profile_is_linear_in_casimirs() {
        let f = FermionConfig::new(vec![0, 3, 5, 9]).unwrap();
        let a = casimirs(&f, 6);
        let doubled: Vec<BigInt> = a.iter().map(|x| x * 2).collect();
        let (p1, p2) = (profile_from_casimirs(&a, 1.5).unwrap(), profile_from_casimirs(&doubled, 1.5).unwrap());
        for (x, y) in p1.samples.iter().zip(&p2.samples) {
            assert_abs_diff_eq!(2.0 * x, *y, epsilon = 1e-9 * y.abs().max(1.0));
        }
    }

    #[test]
    fn single_frequency_extraction() {
        let lambda = 3;
        let thetas = grid(lambda);
        let samples = thetas.iter().map(|t| 2.0 * (2.0 * t).cos()).collect();
        let prof = GeometryProfile { rho: 1.0, lambda, thetas, samples };
        for path in [TransformPath::Fft, TransformPath::Dft] {
            let ext = dft_extract_with(&prof, path).unwrap();
            assert_abs_diff_eq!(ext.coeffs[1], 1.0, epsilon = 1e-14);
            for m in [0, 2, 3] {
                assert_abs_diff_eq!(ext.coeffs[m], 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn fft_and_dft_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for bins in [8usize, 16, 32] {
            let lambda = bins - 1;
            let prof = GeometryProfile {
                rho: 1.0,
                lambda,
                thetas: grid(lambda),
                samples: (0..grid_len(lambda)).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect(),
            };
            let a = dft_extract_with(&prof, TransformPath::Fft).unwrap();
            let b = dft_extract_with(&prof, TransformPath::Dft).unwrap();
            assert_eq!(dft_extract(&prof).unwrap().path, TransformPath::Fft);
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn grid_is_checked() {
        let mut prof = u_profile(&FermionConfig::ground(2), 1.0, 2).unwrap();
        assert_eq!(dft_extract(&prof).unwrap().path, TransformPath::Dft);
        assert!(matches!(dft_extract_with(&prof, TransformPath::Fft), Err(Error::InvalidGrid(_))));
        prof.thetas[1] += 1e-3;
        assert!(matches!(dft_extract(&prof), Err(Error::InvalidGrid(_))));
        prof.thetas.pop();
        prof.samples.pop();
        assert!(matches!(dft_extract(&prof), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn round_trips_small() {
        for n in 0..=7 {
            for r in partitions(n) {
                for rho in [1.0, 2.0] {
                    let rt = round_trip(&r, n + 1, rho, None).unwrap();
                    assert_eq!(rt.recovered, r);
                    assert_eq!(rt.recovered_casimirs, rt.casimirs);
                    assert!(rt.casimir_residual < 1e-6, "{r} rho {rho}: {}", rt.casimir_residual);
                }
            }
        }
    }

    #[test]
    fn half_integer_casimirs_are_rejected() {
        // A_0 = ρ² C̃_0 lands exactly between two integers
        assert!(matches!(solve_u(&[0.5], &jacobi_coeffs(0), 1.0), Err(Error::Numerical(_))));
        assert!(matches!(solve_u(&[0.125, 0.0], &jacobi_coeffs(1), 2.0), Err(Error::Numerical(_))));
        assert!(matches!(solve_u(&[f64::NAN], &jacobi_coeffs(0), 1.0), Err(Error::Numerical(_))));
        assert!(solve_u(&[0.49], &jacobi_coeffs(0), 1.0).is_ok());
    }

    #[test]
    fn fft_count_grows_like_lambda_log_lambda() {
        let ratios: Vec<f64> = (3..=10)
            .map(|b| {
                let lambda = (1usize << b) - 1;
                let r = holographic_complexity_report(lambda, 0.0).unwrap();
                assert_eq!(r.transform_path, TransformPath::Fft);
                r.transform_ops as f64 / (lambda as f64 * (lambda as f64).log2())
            })
            .collect();
        assert!(ratios.iter().all(|&r| r > 1.0 && r < 8.0), "{ratios:?}");
        let dft = holographic_complexity_report(1022, 0.0).unwrap();
        assert_eq!(dft.transform_path, TransformPath::Dft);
        assert_eq!(dft.transform_ops, 2 * 2046 * 1023);
    }

    #[test]
    fn complexity_cases() {
        let r0 = holographic_complexity_report(1023, 0.0).unwrap();
        assert_eq!((r0.case, r0.dominant), (1, "solve"));
        let r2 = holographic_complexity_report(1023, 2.0).unwrap();
        assert_eq!((r2.case, r2.dominant), (2, "measurement"));
        assert_eq!(r2.transform_path, TransformPath::Fft);
        assert!(holographic_complexity_report(4, -1.0).is_err());
        for lambda in [0, 1, 5, 12] {
            let solved = solve_u(&vec![0.0; lambda + 1], &jacobi_coeffs(lambda), 1.0).unwrap();
            assert_eq!(solved.ops, solve_op_count(lambda));
        }
    }
}
