use std::fmt;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::{Error, Integer, Rational, Result};

/// Integer direction with coprime coordinates; stands in for the unit vector
/// `z / |z|`. Two facets have the same outer direction iff their primitive
/// normals are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveNormal(Vec<Integer>);

impl PrimitiveNormal {
    /// Divides out the gcd of `coords`. Fails on the zero vector.
    pub fn new(coords: Vec<Integer>) -> Result<Self> {
        let g = coords.iter().fold(Integer::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Self(coords.into_iter().map(|c| c / &g).collect()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| c.into()).collect())
    }

    /// Primitive direction of a nonzero rational vector.
    pub fn from_rational(v: &[Rational]) -> Result<Self> {
        let l = v.iter().fold(Integer::from(1), |l, c| l.lcm(c.denom()));
        Self::new(v.iter().map(|c| c.numer() * (&l / c.denom())).collect())
    }

    pub fn coords(&self) -> &[Integer] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|z|^2`, an integer.
    pub fn norm_squared(&self) -> Integer {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, x: &[Rational]) -> Rational {
        debug_assert_eq!(x.len(), self.0.len());
        self.0
            .iter()
            .zip(x)
            .filter(|(z, _)| !z.is_zero())
            .fold(Rational::zero(), |acc, (z, v)| acc + v * z)
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_integer).collect()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).expect("nonzero")
    }

    pub fn pivot_abs(&self) -> Integer {
        self.0[self.pivot()].abs()
    }
}

impl std::ops::Neg for &PrimitiveNormal {
    type Output = PrimitiveNormal;
    fn neg(self) -> PrimitiveNormal {
        PrimitiveNormal(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PrimitiveNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    AtMost,
    AtLeast,
}

/// `{x : <x, normal> <= bound}` or `>= bound`, in denominator-cleared form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: PrimitiveNormal,
    pub bound: Rational,
    pub sense: Sense,
}

impl Halfspace {
    pub fn at_most(normal: PrimitiveNormal, bound: Rational) -> Self {
        Self {
            normal,
            bound,
            sense: Sense::AtMost,
        }
    }

    pub fn at_least(normal: PrimitiveNormal, bound: Rational) -> Self {
        Self {
            normal,
            bound,
            sense: Sense::AtLeast,
        }
    }

    /// The same set written as `<x, z> <= c`.
    pub fn as_upper(&self) -> (PrimitiveNormal, Rational) {
        match self.sense {
            Sense::AtMost => (self.normal.clone(), self.bound.clone()),
            Sense::AtLeast => (-&self.normal, -self.bound.clone()),
        }
    }

    /// Closure of the complement.
    pub fn complement(&self) -> Self {
        let sense = match self.sense {
            Sense::AtMost => Sense::AtLeast,
            Sense::AtLeast => Sense::AtMost,
        };
        Self {
            normal: self.normal.clone(),
            bound: self.bound.clone(),
            sense,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let (z, c) = self.as_upper();
        z.dot(x) <= c
    }
}
