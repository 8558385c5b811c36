//! Hilbert series of the face ring as `numerator / (1 - t)^k`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::binomial_big;
use crate::chain_graph::ChainGraph;
use crate::complex::FVector;
use crate::error::Result;
use crate::oracle;

/// Integer polynomial, coefficient `i` multiplies `t^i`. Trailing zeros are
/// trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial(Vec<BigInt>);

impl IntPolynomial {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial(coefficients);
        p.trim();
        p
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        IntPolynomial::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial(vec![BigInt::one()])
    }

    /// `c * t^degree`.
    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut v = vec![BigInt::zero(); degree + 1];
        v[degree] = c;
        IntPolynomial::new(v)
    }

    /// `(1 - t)^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        IntPolynomial::new(
            (0..=k as i64)
                .map(|i| {
                    let c = binomial_big(k as i64, i);
                    if i % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Quotient by `(1 - t)` when the division is exact.
    pub fn div_one_minus_t(&self) -> Option<IntPolynomial> {
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // p = (1 - t) q  =>  q_i = sum_{j <= i} p_j
        let mut acc = BigInt::zero();
        let mut q = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            acc += c;
            q.push(acc.clone());
        }
        Some(IntPolynomial::new(q))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.0.len().max(rhs.0.len());
        IntPolynomial::new(
            (0..len)
                .map(|i| self.coefficient(i) + rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// `numerator / (1 - t)^denom_power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    pub numerator: IntPolynomial,
    pub denom_power: usize,
}

impl RationalSeries {
    /// Cancels common factors of `(1 - t)`.
    pub fn normalized(numerator: IntPolynomial, denom_power: usize) -> Self {
        let mut s = RationalSeries {
            numerator,
            denom_power,
        };
        while s.denom_power > 0 {
            match s.numerator.div_one_minus_t() {
                Some(q) if !s.numerator.is_zero() => {
                    s.numerator = q;
                    s.denom_power -= 1;
                }
                _ => break,
            }
        }
        if s.numerator.is_zero() {
            s.denom_power = 0;
        }
        s
    }

    pub fn is_normalized(&self) -> bool {
        self.denom_power == 0
            || self.numerator.div_one_minus_t().is_none()
            || self.numerator.is_zero()
    }

    /// Power-series coefficients of degrees `0..=upto`, using
    /// `(1 - t)^-k = sum_j C(j + k - 1, k - 1) t^j`.
    pub fn expand(&self, upto: usize) -> Vec<BigInt> {
        let k = self.denom_power as i64;
        let series: Vec<BigInt> = (0..=upto as i64)
            .map(|j| {
                if k == 0 {
                    BigInt::from(u8::from(j == 0))
                } else {
                    binomial_big(j + k - 1, k - 1)
                }
            })
            .collect();
        (0..=upto)
            .map(|j| {
                self.numerator
                    .coefficients()
                    .iter()
                    .enumerate()
                    .take_while(|(i, _)| *i <= j)
                    .map(|(i, c)| c * &series[j - i])
                    .sum()
            })
            .collect()
    }

    /// Sum of two series over a common denominator.
    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let k = self.denom_power.max(other.denom_power);
        let lift =
            |s: &RationalSeries| &s.numerator * &IntPolynomial::one_minus_t_pow(k - s.denom_power);
        RationalSeries::normalized(&lift(self) + &lift(other), k)
    }
}

/// `1 + sum_i f_i t^{i+1} / (1 - t)^{i+1}` over the common denominator
/// `(1 - t)^{d+1}`, normalized.
pub fn hilbert_series(f: &FVector) -> RationalSeries {
    let d1 = f.as_slice().len();
    let mut numerator = IntPolynomial::one_minus_t_pow(d1);
    for (i, &fi) in f.as_slice().iter().enumerate() {
        let term = &IntPolynomial::monomial(BigInt::from(fi), i + 1)
            * &IntPolynomial::one_minus_t_pow(d1 - (i + 1));
        numerator = &numerator + &term;
    }
    RationalSeries::normalized(numerator, d1)
}

/// Caps used by the Hilbert-function oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub tree_candidates: u128,
    pub downset: u128,
    pub monomials: u128,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            tree_candidates: oracle::TREE_CANDIDATE_CAP,
            downset: oracle::DOWNSET_CAP,
            monomials: oracle::MONOMIAL_CAP,
        }
    }
}

/// `HF(0), .., HF(upto)` of the face ring: `HF(j) = sum_s f_{s-1} C(j-1, s-1)`
/// with faces counted by brute force from brute-force spanning trees.
pub fn hilbert_function_oracle_values(
    g: &ChainGraph,
    upto: usize,
    caps: OracleCaps,
) -> Result<Vec<BigInt>> {
    let facets = oracle::spanning_trees_bruteforce(g, caps.tree_candidates)?;
    let f = oracle::f_vector_downsets(&facets, caps.downset)?;
    Ok((0..=upto as i64)
        .map(|j| {
            if j == 0 {
                return BigInt::one();
            }
            f.iter()
                .enumerate()
                .map(|(i, &fi)| BigInt::from(fi) * binomial_big(j - 1, i as i64))
                .sum()
        })
        .collect())
}

/// `HF(j)` of the face ring; see [`hilbert_function_oracle_values`].
pub fn hilbert_function_oracle(g: &ChainGraph, j: usize, caps: OracleCaps) -> Result<BigInt> {
    Ok(hilbert_function_oracle_values(g, j, caps)?
        .pop()
        .expect("non-empty"))
}

/// `HF(j)` by listing every degree-`j` monomial and testing its support.
pub fn hilbert_function_literal(g: &ChainGraph, j: usize, caps: OracleCaps) -> Result<BigInt> {
    let facets = oracle::spanning_trees_bruteforce(g, caps.tree_candidates)?;
    oracle::monomial_count(&facets, g.n(), j, caps.monomials).map(BigInt::from)
}
