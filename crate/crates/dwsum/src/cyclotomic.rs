//! Exact arithmetic in `Q[x]/(x^k − 1)` with equality decided in the k-th
//! cyclotomic field.
//!
//! A value is a dense vector of `k` rationals, the coefficients of a
//! representative polynomial of degree `< k`. Under the embedding
//! `x ↦ exp(2πi/k)` two representatives denote the same complex number exactly
//! when their difference is divisible by the k-th cyclotomic polynomial `Φ_k`,
//! so equality is decided by exact polynomial remainder — never by floats.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
}

/// An exact element of `Q[x]/(x^k − 1)`, read as a cyclotomic number via
/// `x ↦ exp(2πi/k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicValue {
    modulus: usize,
    coeffs: Vec<BigRational>,
}

impl CyclotomicValue {
    /// The zero value with root-of-unity order `k ≥ 1`.
    pub fn zero(k: usize) -> Self {
        assert!(k >= 1, "modulus must be at least 1");
        Self {
            modulus: k,
            coeffs: vec![BigRational::zero(); k],
        }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(k, 0)
    }

    /// The monomial `x^j` (with `j` reduced mod `k`).
    pub fn monomial(k: usize, j: usize) -> Self {
        let mut v = Self::zero(k);
        v.coeffs[j % k] = BigRational::one();
        v
    }

    /// Builds a value from explicit representative coefficients (`len == k`).
    pub fn from_coeffs(k: usize, coeffs: Vec<BigRational>) -> Self {
        assert!(k >= 1 && coeffs.len() == k, "need exactly k coefficients");
        Self { modulus: k, coeffs }
    }

    /// `Σ_j counts[j] · x^j` — the histogram form produced by enumeration.
    pub fn from_counts(k: usize, counts: &[BigUint]) -> Self {
        assert_eq!(counts.len(), k);
        let coeffs = counts
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
            .collect();
        Self { modulus: k, coeffs }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Representative coefficients, degree `< k`, in ascending order.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check_modulus(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.modulus != other.modulus {
            return Err(CyclotomicError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Ring product; exponents wrap modulo `k` because `x^k = 1`.
    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_modulus(other)?;
        let k = self.modulus;
        let mut coeffs = vec![BigRational::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % k;
                coeffs[idx] = &coeffs[idx] + a * b;
            }
        }
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Exact division of every coefficient by a positive integer.
    pub fn div_nat(&self, d: &BigUint) -> Self {
        assert!(!d.is_zero(), "division by zero");
        let d = BigRational::from_integer(BigInt::from(d.clone()));
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|a| a / &d).collect(),
        }
    }

    /// Complex conjugation of the embedded value: `x^j ↦ x^{k−j}`.
    pub fn conjugate(&self) -> Self {
        let k = self.modulus;
        let mut coeffs = vec![BigRational::zero(); k];
        for (j, a) in self.coeffs.iter().enumerate() {
            coeffs[(k - j) % k] = a.clone();
        }
        Self { modulus: k, coeffs }
    }

    /// Whether the embedded value is zero, i.e. `Φ_k` divides the representative.
    pub fn is_zero_value(&self) -> bool {
        self.reduced().iter().all(|c| c.is_zero())
    }

    /// Exact equality of the embedded cyclotomic numbers.
    pub fn equal(&self, other: &Self) -> Result<bool, CyclotomicError> {
        Ok(self.sub(other)?.is_zero_value())
    }

    /// Canonical form: the remainder of the representative modulo `Φ_k`,
    /// padded back to length `k`.
    pub fn canonical(&self) -> Self {
        let mut coeffs = self.reduced();
        coeffs.resize(self.modulus, BigRational::zero());
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Remainder of the representative modulo `Φ_k` (degree `< φ(k)`).
    fn reduced(&self) -> Vec<BigRational> {
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.modulus)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        poly_rem(self.coeffs.clone(), &phi)
    }

    /// Floating-point embedding `x ↦ exp(2πi/k)`, returned as `(re, im)`.
    /// Only for reporting; all decisions stay exact.
    pub fn to_complex(&self) -> (f64, f64) {
        let k = self.modulus as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let c = rational_to_f64(a);
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / k;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }
}

/// Best-effort `f64` of an exact rational (for display output only).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Enormous numerator/denominator: fall back to a quotient of floats.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * sig(r.numer()));
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn sig(x: &BigInt) -> f64 {
    if x.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// Renders a rational as `"p"` or `"p/q"`, matching the JSON output format.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The k-th cyclotomic polynomial over `Z`, coefficients ascending.
///
/// Computed by exact division: `Φ_k = (x^k − 1) / Π_{d|k, d<k} Φ_d`.
pub fn cyclotomic_polynomial(k: usize) -> Vec<BigInt> {
    assert!(k >= 1);
    let mut memo: Vec<Vec<BigInt>> = Vec::with_capacity(k + 1);
    memo.push(Vec::new()); // index 0 unused
    for d in 1..=k {
        // x^d − 1
        let mut num = vec![BigInt::zero(); d + 1];
        num[0] = -BigInt::one();
        num[d] = BigInt::one();
        let mut quot = num;
        for e in 1..d {
            if d % e == 0 {
                quot = poly_div_exact_int(&quot, &memo[e]);
            }
        }
        memo.push(quot);
    }
    memo.pop().unwrap()
}

/// Exact division of integer polynomials (divisor monic, remainder known zero).
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Remainder of a rational polynomial modulo a monic integer polynomial.
fn poly_rem(mut rem: Vec<BigRational>, den: &[BigRational]) -> Vec<BigRational> {
    let dd = den.len() - 1;
    while rem.len() > dd {
        let c = rem.pop().unwrap();
        if !c.is_zero() {
            let base = rem.len() - dd;
            for (j, d) in den.iter().take(dd).enumerate() {
                rem[base + j] = &rem[base + j] - &c * d;
            }
        }
    }
    while rem.last().is_some_and(|c| c.is_zero()) {
        rem.pop();
    }
    rem
}
