//! Finitely supported measures on directions.
//!
//! Atoms are keyed by primitive normals `z`. The stored weight `w(z)` relates
//! to the weight of the measure at the unit vector `z / |z|` by
//! `true_weight = w(z) * |z|`, so all stored weights are exact rationals and
//! proportionality of two measures is decided on stored weights directly.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::{PrimitiveNormal, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: BTreeMap<PrimitiveNormal, Rational>,
}

impl DiscreteMeasure {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `w` to the atom at `z`; atoms that reach zero are removed.
    pub fn add(&mut self, z: PrimitiveNormal, w: Rational) {
        if w.is_zero() {
            return;
        }
        let e = self.atoms.entry(z.clone()).or_insert_with(Rational::zero);
        *e += w;
        if e.is_zero() {
            self.atoms.remove(&z);
        }
    }

    pub fn weight(&self, z: &PrimitiveNormal) -> Rational {
        self.atoms.get(z).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimitiveNormal> {
        self.atoms.keys()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&PrimitiveNormal, &Rational)> {
        self.atoms.iter()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn same_support(&self, other: &Self) -> bool {
        self.atoms.keys().eq(other.atoms.keys())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        for (z, w) in &self.atoms {
            out.add(z.clone(), w * c);
        }
        out
    }

    /// `self - other`, atom by atom.
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (z, w) in &other.atoms {
            out.add(z.clone(), -w);
        }
        out
    }

    /// `Σ_z f(z) w(z)`.
    pub fn integrate<F: Fn(&PrimitiveNormal) -> Rational>(&self, f: F) -> Rational {
        self.atoms.iter().map(|(z, w)| f(z) * w).sum()
    }

    /// `λ > 0` with `self = λ other`, if it exists.
    pub fn proportionality(&self, other: &Self) -> Option<Rational> {
        if self.is_empty() || !self.same_support(other) {
            return None;
        }
        let mut it = self.atoms.values().zip(other.atoms.values());
        let (a0, b0) = it.next()?;
        let lambda = a0 / b0;
        if !lambda.is_positive() {
            return None;
        }
        it.all(|(a, b)| *a == b * &lambda).then_some(lambda)
    }
}

impl FromIterator<(PrimitiveNormal, Rational)> for DiscreteMeasure {
    fn from_iter<I: IntoIterator<Item = (PrimitiveNormal, Rational)>>(iter: I) -> Self {
        let mut m = Self::new();
        for (z, w) in iter {
            m.add(z, w);
        }
        m
    }
}
