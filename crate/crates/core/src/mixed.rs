//! Mixed volumes and mixed area measures.
//!
//! Two independent routes are provided:
//!
//! * [`mixed_volume`]: the polarization identity
//!   `n! V(K_1..K_n) = Σ_{∅≠S} (-1)^{n-|S|} Vol(Σ_{i∈S} K_i)`, with slot
//!   subsets grouped by the multiplicities of the distinct bodies they select.
//! * [`mixed_volume_by_measure`]: the recursion
//!   `V(L, K_1..K_{n-1}) = (1/n) Σ_z support_value(L, z) w(z)` over the mixed
//!   area measure of the remaining bodies, whose weights are again mixed
//!   volumes of faces one dimension down, bottoming out at lengths in `R^1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::linalg::{self, cross, pivot_columns};
use crate::{
    dimension_cap, exact_root, DiscreteMeasure, Error, Polytope, PrimitiveNormal, Rational, Result,
};

/// An ordered list of `n` bodies in `R^n`, repetitions allowed.
#[derive(Debug, Clone)]
pub struct BodyTuple<'a> {
    bodies: Vec<&'a Polytope>,
}

impl<'a> BodyTuple<'a> {
    pub fn new(bodies: Vec<&'a Polytope>) -> Result<Self> {
        let n = bodies.len();
        check_bodies(&bodies, n)?;
        Ok(Self { bodies })
    }

    /// `(K_1[m_1], ..., K_r[m_r])`.
    pub fn with_multiplicities(parts: &[(&'a Polytope, usize)]) -> Result<Self> {
        let bodies = parts
            .iter()
            .flat_map(|&(k, m)| std::iter::repeat_n(k, m))
            .collect();
        Self::new(bodies)
    }

    pub fn dim(&self) -> usize {
        self.bodies.len()
    }

    pub fn bodies(&self) -> &[&'a Polytope] {
        &self.bodies
    }

    pub fn mixed_volume(&self) -> Rational {
        polarization(&self.bodies)
    }
}

fn check_bodies(bodies: &[&Polytope], dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::BadArity("at least one body is required".into()));
    }
    if let Some(b) = bodies.iter().find(|b| b.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: b.dim(),
        });
    }
    let limit = dimension_cap();
    if dim > limit {
        return Err(Error::DimensionLimit { dim, limit });
    }
    Ok(())
}

/// Mixed volume of `n` bodies in `R^n` by polarization.
pub fn mixed_volume(bodies: &[&Polytope]) -> Result<Rational> {
    BodyTuple::new(bodies.to_vec()).map(|t| t.mixed_volume())
}

fn same_body(a: &Polytope, b: &Polytope) -> bool {
    std::ptr::eq(a, b) || a == b
}

fn polarization(bodies: &[&Polytope]) -> Rational {
    let n = bodies.len();
    let mut distinct: Vec<&Polytope> = Vec::new();
    let slot: Vec<usize> = bodies
        .iter()
        .map(|b| {
            distinct
                .iter()
                .position(|d| same_body(d, b))
                .unwrap_or_else(|| {
                    distinct.push(b);
                    distinct.len() - 1
                })
        })
        .collect();

    // Coefficient of Vol(Σ c_j K_j) for each multiplicity vector c.
    let mut terms: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for mask in 1u32..1 << n {
        let mut counts = vec![0usize; distinct.len()];
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .for_each(|i| counts[slot[i]] += 1);
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) {
            1
        } else {
            -1
        };
        *terms.entry(counts).or_default() += sign;
    }
    let terms: Vec<(Vec<usize>, i64)> = terms.into_iter().filter(|(_, c)| *c != 0).collect();

    let total: Rational = terms
        .par_iter()
        .map(|(counts, coeff)| combination_volume(&distinct, counts, n) * BigInt::from(*coeff))
        .sum();
    total / factorial(n)
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n as u64).map(BigInt::from).product())
}

/// `Vol_n(Σ_j counts[j] K_j)`.
fn combination_volume(bodies: &[&Polytope], counts: &[usize], n: usize) -> Rational {
    let used: Vec<(&Polytope, usize)> = bodies
        .iter()
        .zip(counts)
        .filter(|(_, &c)| c > 0)
        .map(|(b, &c)| (*b, c))
        .collect();
    if let [(body, c)] = used.as_slice() {
        return body.volume() * num_traits::pow(BigInt::from(*c), n);
    }
    let mut acc: Option<Polytope> = None;
    for (body, c) in used {
        let scaled = if c == 1 {
            body.clone()
        } else {
            body.scale(&Rational::from_integer(c.into()))
        };
        acc = Some(match acc {
            None => scaled,
            Some(a) => a.minkowski_sum(&scaled).expect("equal dimensions"),
        });
    }
    acc.map_or_else(Rational::zero, |p| p.volume())
}

/// Mixed volume by the area-measure recursion, independent of polarization.
pub fn mixed_volume_by_measure(bodies: &[&Polytope]) -> Result<Rational> {
    check_bodies(bodies, bodies.len())?;
    Ok(recursive_mixed_volume(bodies))
}

fn recursive_mixed_volume(bodies: &[&Polytope]) -> Rational {
    let n = bodies.len();
    if n == 1 {
        let xs = bodies[0].vertices().iter().map(|v| &v[0]);
        let hi = xs.clone().max().expect("nonempty");
        let lo = xs.min().expect("nonempty");
        return hi - lo;
    }
    let measure = area_measure(&bodies[1..], n);
    measure.integrate(|z| bodies[0].support_value(z)) / Rational::from_integer(n.into())
}

/// Primitive normal of the hyperplane spanned by an `(n-1)`-dimensional polytope.
fn hyperplane_normal(p: &Polytope) -> PrimitiveNormal {
    let v = p.vertices();
    let diffs: Vec<Vec<Rational>> = v[1..].iter().map(|x| linalg::sub(x, &v[0])).collect();
    // rows of an echelon basis: pick independent differences greedily
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for d in diffs {
        basis.push(d);
        if pivot_columns(&basis).len() < basis.len() {
            basis.pop();
        }
        if basis.len() + 1 == p.dim() {
            break;
        }
    }
    PrimitiveNormal::from_rational(&cross(&basis)).expect("spanning differences")
}

/// Candidate atoms and exact weights; `bodies` are `n-1` polytopes in `R^n`.
fn area_measure(bodies: &[&Polytope], n: usize) -> DiscreteMeasure {
    let sum = bodies[1..].iter().fold(bodies[0].clone(), |acc, b| {
        acc.minkowski_sum(b).expect("equal dimensions")
    });
    let candidates: Vec<PrimitiveNormal> = if sum.is_full_dimensional() {
        sum.facet_normals()
    } else if sum.affine_dim() + 1 == n {
        let z = hyperplane_normal(&sum);
        vec![-&z, z]
    } else {
        Vec::new()
    };
    candidates
        .into_iter()
        .map(|z| {
            let k = z.pivot();
            let faces: Vec<Polytope> = bodies
                .iter()
                .map(|b| b.face_in_direction(&z).drop_coordinate(k))
                .collect();
            let refs: Vec<&Polytope> = faces.iter().collect();
            let w = recursive_mixed_volume(&refs) / Rational::from_integer(z.pivot_abs());
            (z, w)
        })
        .collect()
}

/// Surface area measure: atoms at facet normals with weight
/// `Vol_{n-1}(facet) / |z|`.
pub fn surface_area_measure(p: &Polytope) -> DiscreteMeasure {
    if !p.is_full_dimensional() {
        let n = p.dim();
        let copies = vec![p; n.saturating_sub(1)];
        return if n < 2 {
            DiscreteMeasure::new()
        } else {
            area_measure(&copies, n)
        };
    }
    p.facets()
        .iter()
        .map(|f| (f.normal.clone(), f.normalized_volume.clone()))
        .collect()
}

/// Mixed area measure `S(K_1, ..., K_{n-1}, ·)` of `n-1` bodies in `R^n`.
pub fn mixed_area_measure(bodies: &[&Polytope]) -> Result<DiscreteMeasure> {
    let n = bodies.len() + 1;
    if n < 2 {
        return Err(Error::BadArity(
            "mixed area measure needs at least one body".into(),
        ));
    }
    check_bodies(bodies, n)?;
    Ok(area_measure(bodies, n))
}

/// `(1/n) Σ_z support_value(L, z) w(z)` over the mixed area measure of `bodies`.
pub fn mixed_volume_via_measure(l: &Polytope, bodies: &[&Polytope]) -> Result<Rational> {
    let measure = mixed_area_measure(bodies)?;
    if l.dim() != bodies.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: bodies.len() + 1,
            found: l.dim(),
        });
    }
    Ok(measure.integrate(|z| l.support_value(z)) / Rational::from_integer(l.dim().into()))
}

/// `V([0, v], K_2, ..., K_n) = (1/n) |v| V^{(n-1)}(K_2|v^⊥, ..., K_n|v^⊥)`.
pub fn segment_mixed_volume(v: &[Rational], bodies: &[&Polytope]) -> Result<Rational> {
    let n = bodies.len() + 1;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    check_bodies(bodies, n)?;
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut gram = Rational::one();
    let mut projected = Vec::with_capacity(bodies.len());
    for b in bodies {
        let (p, g) = b.project_along(v)?;
        gram = g;
        projected.push(p);
    }
    let refs: Vec<&Polytope> = projected.iter().collect();
    let base = polarization(&refs);
    let norm_sq: Rational = linalg::dot(v, v);
    // |v| sqrt(gram) = |v|^2 / |v_k| for the basis used by `project_along`
    let factor =
        exact_root(&(norm_sq * gram), 2).expect("length and gram factors cancel to a rational");
    debug_assert!(factor.is_positive());
    Ok(factor * base / Rational::from_integer(n.into()))
}
