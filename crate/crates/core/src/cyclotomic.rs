//! Exact sums of N-th roots of unity.
//!
//! A sum Σ c_k ζ_N^k vanishes iff the coefficient polynomial Σ c_k x^k is
//! divisible by the N-th cyclotomic polynomial Φ_N(x). Reducing modulo
//! the monic Φ_N stays in integer arithmetic, so the zero test is exact —
//! floating point cannot be trusted near zero here.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Ascending divisors of n.
fn divisors(n: usize) -> Vec<usize> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Quotient of an exact division by a monic polynomial.
fn div_monic_exact(num: &[i128], div: &[i128]) -> Vec<i128> {
    debug_assert_eq!(*div.last().unwrap(), 1);
    let mut rem = num.to_vec();
    let dn = div.len() - 1;
    if rem.len() <= dn {
        debug_assert!(rem.iter().all(|&c| c == 0));
        return vec![];
    }
    let mut quot = vec![0i128; rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let q = rem[i];
        quot[i - dn] = q;
        if q != 0 {
            for (j, &dc) in div.iter().enumerate() {
                rem[i - dn + j] -= q * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

/// Remainder of a polynomial modulo a monic polynomial.
fn rem_monic(num: &[i128], div: &[i128]) -> Vec<i128> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    for i in (dn..rem.len()).rev() {
        let q = rem[i];
        if q != 0 {
            for (j, &dc) in div.iter().enumerate() {
                rem[i - dn + j] -= q * dc;
            }
        }
    }
    rem.truncate(dn.min(rem.len()));
    rem
}

/// Coefficients of Φ_n(x), low degree first.
///
/// Computed as (x^n - 1) / ∏_{d|n, d<n} Φ_d(x) by exact integer division.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    assert!(n > 0, "cyclotomic polynomial needs n >= 1");
    if n == 1 {
        return vec![-1, 1];
    }
    let mut num = vec![0i128; n + 1];
    num[0] = -1;
    num[n] = 1;
    let mut result = num;
    for d in divisors(n) {
        if d < n {
            result = div_monic_exact(&result, &cyclotomic_polynomial(d));
        }
    }
    result
}

/// An integer combination Σ coeffs\[k\]·ζ_N^k of N-th roots of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSum {
    order: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicSum {
    pub fn zero(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        Ok(CyclotomicSum {
            order,
            coeffs: vec![0; order],
        })
    }

    pub fn new(order: usize, coeffs: Vec<i64>) -> Result<Self> {
        if order == 0 || coeffs.len() != order {
            return Err(Error::InvalidArgument(
                "coefficient vector length must equal the order".into(),
            ));
        }
        Ok(CyclotomicSum { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds ζ_N^k (exponent taken mod N).
    pub fn add_root(&mut self, exponent: i64) {
        let k = exponent.rem_euclid(self.order as i64) as usize;
        self.coeffs[k] += 1;
    }

    /// Exact zero test: divisibility of the coefficient polynomial by Φ_N.
    pub fn is_zero(&self) -> bool {
        let poly: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
        let phi = cyclotomic_polynomial(self.order);
        rem_monic(&poly, &phi).iter().all(|&c| c == 0)
    }

    /// Floating evaluation Σ c_k e^{2πik/N}, for cross-checks only.
    pub fn eval_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let angle = TAU * k as f64 / self.order as f64;
            re += c as f64 * angle.cos();
            im += c as f64 * angle.sin();
        }
        (re, im)
    }

    pub fn abs(&self) -> f64 {
        let (re, im) = self.eval_complex();
        re.hypot(im)
    }
}
