//! Exact rational scalars and vectors.
//!
//! All geometric thresholds in the cube constructions (distance
//! comparisons, overlap predicates, coset keys) are decided on exact
//! rationals; floats appear only in logs and renderings.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = Ratio<i128>;

/// Floor of a rational.
pub fn rat_floor(r: Rat) -> i128 {
    r.floor().to_integer()
}

/// Fractional part in [0, 1).
pub fn rat_fract(r: Rat) -> Rat {
    r - Rat::from_integer(rat_floor(r))
}

/// Smallest integer n ≥ 1 with n² ≥ r (r > 0), i.e. ⌈√r⌉ for exact
/// squared quantities.
pub fn ceil_sqrt(r: Rat) -> i64 {
    assert!(r > Rat::zero());
    let mut n: i64 = 1;
    while Rat::from_integer((n as i128) * (n as i128)) < r {
        n += 1;
    }
    n
}

/// A vector of rationals over a shared positive denominator, stored in
/// lowest terms (gcd of all numerators and the denominator is 1).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector {
    numerators: Vec<i64>,
    denominator: i64,
}

impl RationalVector {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Result<Self> {
        if denominator < 1 {
            return Err(Error::InvalidArgument(
                "denominator must be positive".into(),
            ));
        }
        let mut v = RationalVector {
            numerators,
            denominator,
        };
        v.reduce();
        Ok(v)
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector {
            numerators: vec![0; dim],
            denominator: 1,
        }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalVector {
            numerators: coords.to_vec(),
            denominator: 1,
        }
    }

    fn reduce(&mut self) {
        let mut g = self.denominator;
        for &n in &self.numerators {
            g = g.gcd(&n);
        }
        if g > 1 {
            for n in &mut self.numerators {
                *n /= g;
            }
            self.denominator /= g;
        }
        if self.numerators.iter().all(|&n| n == 0) {
            self.denominator = 1;
        }
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn coord(&self, i: usize) -> Rat {
        Rat::new(self.numerators[i] as i128, self.denominator as i128)
    }

    pub fn coords(&self) -> impl Iterator<Item = Rat> + '_ {
        (0..self.dim()).map(|i| self.coord(i))
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&n| n == 0)
    }

    pub fn from_rats(coords: &[Rat]) -> Result<Self> {
        let mut denom: i128 = 1;
        for c in coords {
            denom = denom.lcm(c.denom());
        }
        let numerators = coords
            .iter()
            .map(|c| {
                let n = c.numer() * (denom / c.denom());
                i64::try_from(n).map_err(|_| {
                    Error::InvalidArgument("rational coordinate overflow".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let denominator = i64::try_from(denom)
            .map_err(|_| Error::InvalidArgument("rational denominator overflow".into()))?;
        RationalVector::new(numerators, denominator)
    }

    pub fn add(&self, other: &RationalVector) -> Result<RationalVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        let rats: Vec<Rat> = (0..self.dim())
            .map(|i| self.coord(i) + other.coord(i))
            .collect();
        RationalVector::from_rats(&rats)
    }

    pub fn sub(&self, other: &RationalVector) -> Result<RationalVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        let rats: Vec<Rat> = (0..self.dim())
            .map(|i| self.coord(i) - other.coord(i))
            .collect();
        RationalVector::from_rats(&rats)
    }

    pub fn scale(&self, factor: Rat) -> Result<RationalVector> {
        let rats: Vec<Rat> = self.coords().map(|c| c * factor).collect();
        RationalVector::from_rats(&rats)
    }

    pub fn dot(&self, other: &RationalVector) -> Result<Rat> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        let mut acc = Rat::zero();
        for i in 0..self.dim() {
            acc += self.coord(i) * other.coord(i);
        }
        Ok(acc)
    }

    pub fn norm2(&self) -> Rat {
        self.coords().map(|c| c * c).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords().map(|c| c.to_f64().unwrap()).collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c.denom().abs() == 1 {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// |r| as f64, for display only.
pub fn rat_to_f64(r: Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extremely large terms only appear through adversarial inputs.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let v = RationalVector::new(vec![2, 4], 6).unwrap();
        assert_eq!(v.numerators(), &[1, 2]);
        assert_eq!(v.denominator(), 3);
        let z = RationalVector::new(vec![0, 0], 7).unwrap();
        assert_eq!(z.denominator(), 1);
    }

    #[test]
    fn vector_algebra() {
        let a = RationalVector::new(vec![1, 1], 2).unwrap();
        let b = RationalVector::new(vec![1, -1], 3).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.numerators(), &[5, 1]);
        assert_eq!(s.denominator(), 6);
        assert_eq!(a.dot(&b).unwrap(), Rat::zero());
        assert_eq!(a.norm2(), Rat::new(1, 2));
    }

    #[test]
    fn ceil_sqrt_thresholds() {
        assert_eq!(ceil_sqrt(Rat::new(1, 1)), 1);
        assert_eq!(ceil_sqrt(Rat::new(2, 1)), 2);
        assert_eq!(ceil_sqrt(Rat::new(4, 1)), 2);
        assert_eq!(ceil_sqrt(Rat::new(9, 1)), 3);
        assert_eq!(ceil_sqrt(Rat::new(82, 1)), 10);
        assert_eq!(ceil_sqrt(Rat::new(5, 1)), 3);
    }

    #[test]
    fn fract_and_floor() {
        assert_eq!(rat_floor(Rat::new(-3, 2)), -2);
        assert_eq!(rat_fract(Rat::new(-3, 2)), Rat::new(1, 2));
        assert_eq!(rat_fract(Rat::new(7, 3)), Rat::new(1, 3));
    }
}
