//! Legendre polynomials P_l = P_l^{(0,0)}: monomial coefficients, Fourier
//! coefficients in e^{2iθm} of P_l(cos 2θ), and reference evaluations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinat::binomial;

fn q(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn pow2(k: usize) -> BigRational {
    q(BigInt::one() << k)
}

/// Exact coefficient tables up to degree Λ.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCoeffTable {
    lambda: usize,
    /// p[l][k]: coefficient of x^k in P_l(x).
    p: Vec<Vec<BigRational>>,
    /// pt[l][m], m >= 0: coefficient of e^{2iθm} in P_l(cos 2θ).
    pt: Vec<Vec<BigRational>>,
}

/// p_{l,k} = sum_{m=k}^{l} C(l,m) C(l+m,m) 2^{-m} C(m,k) (-1)^{m-k}, from
/// P_l(x) = sum_m C(l,m) C(l+m,m) ((x-1)/2)^m.
pub fn monomial_coeff(l: usize, k: usize) -> BigRational {
    (k..=l)
        .map(|m| {
            let sign = if (m - k) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            q(binomial(l, m) * binomial(l + m, m) * binomial(m, k) * sign) / pow2(m)
        })
        .sum()
}

pub fn jacobi_coeffs(lambda: usize) -> JacobiCoeffTable {
    let p: Vec<Vec<BigRational>> = (0..=lambda)
        .map(|l| (0..=l).map(|k| monomial_coeff(l, k)).collect())
        .collect();
    // cos^k(2θ) = 2^{-k} sum_j C(k, j) e^{2iθ(2j-k)}
    let pt = (0..=lambda)
        .map(|l| {
            (0..=l)
                .map(|m| {
                    (m..=l)
                        .filter(|k| (k - m) % 2 == 0)
                        .map(|k| &p[l][k] * q(binomial(k, (k + m) / 2)) / pow2(k))
                        .sum()
                })
                .collect()
        })
        .collect();
    JacobiCoeffTable { lambda, p, pt }
}

impl JacobiCoeffTable {
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn monomial(&self, l: usize, k: usize) -> &BigRational {
        &self.p[l][k]
    }

    /// p̃_{l,m}, symmetric in m; zero for |m| > l.
    pub fn fourier(&self, l: usize, m: i64) -> BigRational {
        let m = m.unsigned_abs() as usize;
        if m > l {
            BigRational::zero()
        } else {
            self.pt[l][m].clone()
        }
    }

    pub fn fourier_f64(&self, l: usize, m: usize) -> f64 {
        self.pt[l][m].to_f64().unwrap()
    }

    /// P_l at a rational point from the monomial table.
    pub fn eval(&self, l: usize, x: &BigRational) -> BigRational {
        self.p[l].iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// sum_m p̃_{l,m} e^{2iθm}, which is real.
    pub fn eval_fourier(&self, l: usize, theta: f64) -> f64 {
        let li = l as i64;
        (-li..=li).map(|m| self.fourier(l, m).to_f64().unwrap() * (2.0 * theta * m as f64).cos()).sum()
    }
}

/// (2l)! / (4^l (l!)^2), the leading Fourier coefficient p̃_{l,l}.
pub fn diagonal_fourier(l: usize) -> BigRational {
    q(binomial(2 * l, l)) / pow2(2 * l)
}

/// Three-term recurrence (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}, exact.
pub fn legendre_exact(l: usize, x: &BigRational) -> BigRational {
    let (mut a, mut b) = (BigRational::one(), x.clone());
    if l == 0 {
        return a;
    }
    for j in 1..l {
        let j_q = q(j.into());
        let next = (q((2 * j + 1).into()) * x * &b - &j_q * &a) / q((j + 1).into());
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// P_0(x), .., P_Λ(x) in double precision by the recurrence.
pub fn legendre_all(lambda: usize, x: f64) -> Vec<f64> {
    let mut out = vec![1.0];
    if lambda >= 1 {
        out.push(x);
    }
    for j in 1..lambda {
        let j = j as f64;
        let next = ((2.0 * j + 1.0) * x * out[j as usize] - j * out[j as usize - 1]) / (j + 1.0);
        out.push(next);
    }
    out
}

/// ₂F₁(-l, l+1; 1; z), a terminating series. The terms alternate and grow
/// like C(l,j) C(l+j,j), so the sum is taken exactly at the binary value of z.
pub fn hypergeometric(l: usize, z: f64) -> f64 {
    let z = BigRational::from_float(z).expect("finite argument");
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for j in 0..l {
        let num = q(BigInt::from(j as i64 - l as i64) * BigInt::from(j + l + 1));
        term = term * num * &z / q(BigInt::from((j + 1) * (j + 1)));
        sum += &term;
    }
    sum.to_f64().unwrap()
}

/// True if every p̃_{l,l} is nonzero; the back substitution divides by them.
pub fn diagonal_nonzero(table: &JacobiCoeffTable) -> bool {
    (0..=table.lambda).all(|l| table.pt[l][l].is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn low_degrees() {
        let t = jacobi_coeffs(3);
        assert_eq!(t.monomial(0, 0), &r(1, 1));
        assert_eq!(t.monomial(2, 2), &r(3, 2));
        assert_eq!(t.monomial(2, 0), &r(-1, 2));
        assert_eq!(t.monomial(3, 3), &r(5, 2));
        assert_eq!(t.monomial(3, 1), &r(-3, 2));
        assert_eq!(t.fourier(2, 2), r(3, 8));
        assert_eq!(t.fourier(2, 0), r(1, 4));
        assert_eq!(t.fourier(1, 1), r(1, 2));
    }

    #[test]
    fn matches_recurrence_exactly() {
        let t = jacobi_coeffs(12);
        for l in 0..=12 {
            for x in [r(0, 1), r(1, 1), r(-1, 1), r(1, 3), r(-5, 7), r(2, 1)] {
                assert_eq!(t.eval(l, &x), legendre_exact(l, &x), "l = {l}, x = {x}");
            }
            assert_eq!(t.eval(l, &r(1, 1)), r(1, 1));
        }
    }

    #[test]
    fn fourier_symmetry_and_diagonal() {
        let t = jacobi_coeffs(16);
        assert!(diagonal_nonzero(&t));
        for l in 0..=16 {
            assert_eq!(t.fourier(l, l as i64), diagonal_fourier(l));
            for m in 0..=l as i64 {
                assert_eq!(t.fourier(l, m), t.fourier(l, -m));
            }
            assert!(t.fourier(l, l as i64 + 1).is_zero());
        }
    }

    #[test]
    fn fourier_series_evaluates_legendre() {
        let t = jacobi_coeffs(6);
        let theta = std::f64::consts::PI / 7.0;
        let x = (2.0 * theta).cos();
        let reference = legendre_all(6, x);
        for l in 0..=6 {
            assert_abs_diff_eq!(t.eval_fourier(l, theta), reference[l], epsilon = 1e-12);
        }
    }

    #[test]
    fn hypergeometric_form() {
        for l in 0..=10 {
            for j in 0..32 {
                let theta = std::f64::consts::PI * j as f64 / 32.0;
                let p = legendre_all(10, (2.0 * theta).cos())[l];
                assert_abs_diff_eq!(hypergeometric(l, theta.sin().powi(2)), p, epsilon = 1e-12);
            }
        }
    }
}
