//! Angular-momentum algebra: Wigner 3j symbols (exact Racah sum), Gaunt
//! coefficients and integrals of products of spherical harmonics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::{factorial, ratio_to_f64};

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub const fn from_doubled(twice: i32) -> Self {
        Self(twice)
    }

    pub const fn from_int(v: i32) -> Self {
        Self(2 * v)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Exact value `sign · √square`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSqrt {
    pub sign: i8,
    pub square: BigRational,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        Self {
            sign: 0,
            square: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * ratio_to_f64(&self.square).sqrt()
    }
}

fn fact(n: i32) -> BigInt {
    debug_assert!(n >= 0);
    factorial(n as u32)
}

/// Wigner 3j symbol by the Racah formula in exact integer arithmetic.
///
/// Returns exact zero for configurations violating `|m_k| <= j_k`, the
/// triangle condition, integrality, or `m1 + m2 + m3 = 0`.
pub fn wigner3j_exact(
    j1: HalfInteger,
    j2: HalfInteger,
    j3: HalfInteger,
    m1: HalfInteger,
    m2: HalfInteger,
    m3: HalfInteger,
) -> SignedSqrt {
    let (tj1, tj2, tj3) = (j1.0, j2.0, j3.0);
    let (tm1, tm2, tm3) = (m1.0, m2.0, m3.0);
    if tj1 < 0 || tj2 < 0 || tj3 < 0 {
        return SignedSqrt::zero();
    }
    if tm1 + tm2 + tm3 != 0 {
        return SignedSqrt::zero();
    }
    if tm1.abs() > tj1 || tm2.abs() > tj2 || tm3.abs() > tj3 {
        return SignedSqrt::zero();
    }
    // j ± m integral for each column, j1 + j2 + j3 integral
    if (tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0 {
        return SignedSqrt::zero();
    }
    if (tj1 + tj2 + tj3) % 2 != 0 {
        return SignedSqrt::zero();
    }
    let a = (tj1 + tj2 - tj3) / 2;
    let b = (tj1 - tj2 + tj3) / 2;
    let c = (-tj1 + tj2 + tj3) / 2;
    if a < 0 || b < 0 || c < 0 {
        return SignedSqrt::zero();
    }
    let j_sum = (tj1 + tj2 + tj3) / 2;

    let jm1p = (tj1 + tm1) / 2;
    let jm1m = (tj1 - tm1) / 2;
    let jm2p = (tj2 + tm2) / 2;
    let jm2m = (tj2 - tm2) / 2;
    let jm3p = (tj3 + tm3) / 2;
    let jm3m = (tj3 - tm3) / 2;

    // t-independent offsets of the Racah sum
    let o1 = (tj3 - tj2 + tm1) / 2; // j3 - j2 + m1
    let o2 = (tj3 - tj1 - tm2) / 2; // j3 - j1 - m2
    let t_min = 0.max(-o1).max(-o2);
    let t_max = a.min(jm1m).min(jm2p);
    if t_min > t_max {
        return SignedSqrt::zero();
    }

    let mut sum = BigRational::zero();
    for t in t_min..=t_max {
        let den = fact(t) * fact(o1 + t) * fact(o2 + t) * fact(a - t) * fact(jm1m - t) * fact(jm2p - t);
        let term = BigRational::new(BigInt::from(1), den);
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return SignedSqrt::zero();
    }
    let triangle = BigRational::new(fact(a) * fact(b) * fact(c), fact(j_sum + 1));
    let prod = fact(jm1p) * fact(jm1m) * fact(jm2p) * fact(jm2m) * fact(jm3p) * fact(jm3m);
    let square = triangle * BigRational::from_integer(prod) * &sum * &sum;
    // (-1)^{j1 - j2 - m3}
    let phase_exp = (tj1 - tj2 - tm3) / 2;
    let mut sign: i8 = if sum.is_positive() { 1 } else { -1 };
    if phase_exp.rem_euclid(2) == 1 {
        sign = -sign;
    }
    SignedSqrt { sign, square }
}

/// Wigner 3j symbol as `f64`.
pub fn wigner3j(
    j1: HalfInteger,
    j2: HalfInteger,
    j3: HalfInteger,
    m1: HalfInteger,
    m2: HalfInteger,
    m3: HalfInteger,
) -> f64 {
    wigner3j_exact(j1, j2, j3, m1, m2, m3).to_f64()
}

/// 3j symbol with integer arguments.
pub fn wigner3j_int(l1: u32, l2: u32, l3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    let h = |v: i32| HalfInteger::from_int(v);
    wigner3j(h(l1 as i32), h(l2 as i32), h(l3 as i32), h(m1), h(m2), h(m3))
}

/// `∫ Y_{l1}^{m1} Y_{l2}^{m2} Y_{l3}^{m3} dΩ`.
pub fn gaunt(l1: u32, m1: i32, l2: u32, m2: i32, l3: u32, m3: i32) -> f64 {
    if m1.unsigned_abs() > l1 || m2.unsigned_abs() > l2 || m3.unsigned_abs() > l3 {
        return 0.0;
    }
    if (l1 + l2 + l3) % 2 == 1 || m1 + m2 + m3 != 0 {
        return 0.0;
    }
    let pre = (((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1)) as f64 / (4.0 * PI)).sqrt();
    pre * wigner3j_int(l1, l2, l3, 0, 0, 0) * wigner3j_int(l1, l2, l3, m1, m2, m3)
}

/// Coefficient of `Y_L^{m1+m2}` in the product `Y_{l1}^{m1} Y_{l2}^{m2}`:
/// `(-1)^M ∫ Y_{l1}^{m1} Y_{l2}^{m2} Y_L^{-M}`.
fn product_coefficient(l1: u32, m1: i32, l2: u32, m2: i32, big_l: u32) -> f64 {
    let big_m = m1 + m2;
    let sign = if big_m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * gaunt(l1, m1, l2, m2, big_l, -big_m)
}

/// `⟨Y_{l_f}^{m_f} | Y_{a} Y_{b} ... | Y_{l_i}^{m_i}⟩` with the factor
/// harmonics listed between bra and ket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngularBraKet {
    pub final_state: (u32, i32),
    pub factors: Vec<(u32, i32)>,
    pub initial: (u32, i32),
}

impl AngularBraKet {
    pub fn new(final_state: (u32, i32), factors: Vec<(u32, i32)>, initial: (u32, i32)) -> Result<Self> {
        let all = std::iter::once(&final_state)
            .chain(factors.iter())
            .chain(std::iter::once(&initial));
        for &(l, m) in all {
            if m.unsigned_abs() > l {
                return Err(Error::Domain(format!("harmonic index ({l}, {m}) has |m| > l")));
            }
        }
        Ok(Self {
            final_state,
            factors,
            initial,
        })
    }
}

/// Integral of the bra-ket, contracting the factors left to right through
/// the Clebsch-Gordan series of harmonic products, then the ket, and
/// closing with the conjugated bra.
pub fn multi_harmonic_integral(bk: &AngularBraKet) -> f64 {
    let (lf, mf) = bk.final_state;
    let (li, mi) = bk.initial;
    let m_total: i32 = bk.factors.iter().map(|f| f.1).sum::<i32>() + mi;
    if m_total != mf {
        return 0.0;
    }
    let l_total: u32 = bk.factors.iter().map(|f| f.0).sum::<u32>() + li;
    if (l_total + lf) % 2 == 1 || lf > l_total {
        return 0.0;
    }

    let mut chain = bk.factors.iter().copied().chain(std::iter::once((li, mi)));
    let Some((l0, m0)) = chain.next() else {
        unreachable!("the ket is always present")
    };
    // expansion Σ_L c_L Y_L^{m}
    let mut expansion: BTreeMap<u32, f64> = BTreeMap::from([(l0, 1.0)]);
    let mut m = m0;
    for (l2, m2) in chain {
        let mut next: BTreeMap<u32, f64> = BTreeMap::new();
        for (&l1, &c) in &expansion {
            if c == 0.0 {
                continue;
            }
            let lo = l1.abs_diff(l2).max((m + m2).unsigned_abs());
            for big_l in lo..=(l1 + l2) {
                if (l1 + l2 + big_l) % 2 == 1 {
                    continue;
                }
                let k = product_coefficient(l1, m, l2, m2, big_l);
                if k != 0.0 {
                    *next.entry(big_l).or_insert(0.0) += c * k;
                }
            }
        }
        expansion = next;
        m += m2;
    }
    expansion.get(&lf).copied().unwrap_or(0.0)
}

/// Parity rule of the interaction channels: `l_f + l_i + l' + p + 1` even.
pub fn parity_allowed(l_f: u32, l_i: u32, l_prime: u32, p: u32) -> bool {
    (l_f + l_i + l_prime + p + 1) % 2 == 0
}
