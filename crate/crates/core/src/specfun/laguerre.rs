use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{binomial, factorial, ratio_to_f64};

/// Generalized Laguerre polynomial `L_p^α` held as exact monomial
/// coefficients, `coeffs[j]` multiplying `x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerrePoly {
    pub degree: u32,
    pub alpha: u32,
    pub coeffs: Vec<BigRational>,
}

/// Exact expansion `L_p^α(x) = Σ_j (-1)^j C(p+α, p-j) x^j / j!`.
pub fn assoc_laguerre(p: u32, alpha: u32) -> LaguerrePoly {
    let coeffs = (0..=p)
        .map(|j| {
            let c = BigRational::new(binomial(p + alpha, p - j), factorial(j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    LaguerrePoly {
        degree: p,
        alpha,
        coeffs,
    }
}

impl LaguerrePoly {
    /// Horner evaluation with the coefficients rounded to `f64`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + ratio_to_f64(c))
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Three-term recurrence
    /// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
    pub fn eval_recurrence(&self, x: f64) -> f64 {
        laguerre_recurrence(self.degree, self.alpha as f64, x)
    }

    /// `Σ_j |c_j| |x|^j`, the scale against which rounding errors of the
    /// monomial evaluation are measured.
    pub fn abs_term_sum(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x.abs() + ratio_to_f64(&c.abs()))
    }

    /// `∫_0^∞ x^α e^{-x} L_p^α L_q^α dx` computed exactly term by term.
    pub fn weighted_inner_product(&self, other: &LaguerrePoly) -> BigRational {
        assert_eq!(self.alpha, other.alpha, "inner product needs a common α");
        let mut acc = BigRational::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                // ∫ x^{i+j+α} e^{-x} = (i+j+α)!
                let mom = BigRational::from_integer(factorial(i as u32 + j as u32 + self.alpha));
                acc += a * b * mom;
            }
        }
        acc
    }

    pub fn is_constant_one(&self) -> bool {
        self.degree == 0 && self.coeffs[0] == BigRational::from_integer(BigInt::one())
    }
}

pub(crate) fn laguerre_recurrence(p: u32, alpha: f64, x: f64) -> f64 {
    if p == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..p {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
