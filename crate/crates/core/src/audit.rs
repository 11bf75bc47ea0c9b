//! Measure proportionality, homothety, and the simplex audit built on
//! facet moves.

use num_traits::{One, Signed, Zero};

use crate::bezout::BezoutEvaluator;
use crate::deform::{moved, safe_move_range, MoveSpec};
use crate::mixed::{mixed_area_measure, mixed_volume, surface_area_measure};
use crate::{DiscreteMeasure, Error, Polytope, PrimitiveNormal, Rational, Result};

/// `λ` with `a = λ b`, when both measures share their support.
pub fn measures_proportional(a: &DiscreteMeasure, b: &DiscreteMeasure) -> Option<Rational> {
    a.proportionality(b)
}

/// `λ > 0` with `P = λ K + x` for some translation `x`.
///
/// Decided on vertex sets: `λ` is the ratio of widths along the first facet
/// normal of `K`, and the translation aligns vertex centroids.
pub fn homothety_check(k: &Polytope, p: &Polytope) -> Option<Rational> {
    if k.dim() != p.dim() || !k.is_full_dimensional() || !p.is_full_dimensional() {
        return None;
    }
    let z = &k.facets().first()?.normal;
    let lambda = p.width(z) / k.width(z);
    if !lambda.is_positive() || p.vertices().len() != k.vertices().len() {
        return None;
    }
    let scaled = k.scale(&lambda);
    let shift = crate::linalg::sub(&p.vertex_centroid(), &scaled.vertex_centroid());
    (scaled.translate(&shift) == *p).then_some(lambda)
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub holds: bool,
    /// `V(K_t, K[n-1]) / V_n(K)`.
    pub lambda: Rational,
    /// `S(K_t[r], K[n-1-r], ·)`.
    pub lhs: DiscreteMeasure,
    /// `λ^r S(K, ·)`.
    pub rhs: DiscreteMeasure,
    /// `lhs - rhs`; empty iff the identity holds.
    pub residual: DiscreteMeasure,
}

/// Compares `S(K_t[r], K[n-1-r], ·)` with `λ^r S(K, ·)` atom by atom, where
/// `λ = V(K_t, K[n-1]) / V_n(K)`.
pub fn lemma_measure_power_identity(
    k: &Polytope,
    spec: &MoveSpec,
    r: usize,
) -> Result<IdentityReport> {
    let n = k.dim();
    if r > n - 1 {
        return Err(Error::BadArity(format!("r = {r} outside [0, {}]", n - 1)));
    }
    let kt = crate::deform::move_facet(k, spec)?;
    let eval = BezoutEvaluator::new(k)?;
    let lambda = eval.against_body(&kt) / eval.volume();
    let mut bodies: Vec<&Polytope> = vec![&kt; r];
    bodies.extend(std::iter::repeat_n(k, n - 1 - r));
    let lhs = mixed_area_measure(&bodies)?;
    let rhs = surface_area_measure(k).scaled(&num_traits::pow(lambda.clone(), r));
    let residual = lhs.difference(&rhs);
    Ok(IdentityReport {
        holds: residual.is_empty(),
        lambda,
        lhs,
        rhs,
        residual,
    })
}

/// `n V(K_{t,i}, P[n-1]) - n V(K, P[n-1]) - t w_P(z_i)`, which vanishes when
/// every facet normal of `P` is a facet normal of `K`.
pub fn facet_move_linearity_check(
    k: &Polytope,
    p: &Polytope,
    facet_index: usize,
    t: &Rational,
) -> Result<Rational> {
    let n = k.dim();
    let normals = k.facet_normals();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    if !p
        .facet_normals()
        .iter()
        .all(|z| normals.binary_search(z).is_ok())
    {
        return Err(Error::InvalidParameter(
            "facet normals of P must be facet normals of K".into(),
        ));
    }
    let kt = crate::deform::move_facet(k, &MoveSpec::new(facet_index, t.clone()))?;
    let with_p = |l: &Polytope| {
        let mut v = vec![p; n];
        v[0] = l;
        mixed_volume(&v)
    };
    let nq = Rational::from_integer(n.into());
    let z = &normals[facet_index];
    let w = surface_area_measure(p).weight(z);
    Ok(&nq * with_p(&kt)? - &nq * with_p(k)? - t * w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Simplex,
    NonSimplex,
}

#[derive(Debug, Clone)]
pub struct FacetRecord {
    pub facet_index: usize,
    pub normal: PrimitiveNormal,
    pub t: Rational,
    /// `λ` with `S(K_t) = λ S(K)` at the sampled `t`.
    pub lambda: Option<Rational>,
    /// The same test at `t / 2`.
    pub confirm_lambda: Option<Rational>,
}

impl FacetRecord {
    pub fn proportional(&self) -> bool {
        self.lambda.is_some() && self.confirm_lambda.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub records: Vec<FacetRecord>,
    pub verdict: Shape,
    pub vertex_count: usize,
    /// `verdict == Simplex` iff `vertex_count == n + 1`.
    pub consistent: bool,
}

/// Moves each facet outward by the midpoint of the positive half of its safe
/// range and tests whether the surface area measure stays proportional.
pub fn simplex_audit(k: &Polytope) -> Result<AuditReport> {
    let n = k.dim();
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateInput {
            expected: n,
            found: k.affine_dim(),
        });
    }
    let limit = crate::dimension_cap();
    if n > limit {
        return Err(Error::DimensionLimit { dim: n, limit });
    }
    let base = surface_area_measure(k);
    let half = Rational::new(1.into(), 2.into());
    let records = (0..k.facets().len())
        .map(|i| {
            let range = safe_move_range(k, i)?;
            let t = &range.max * &half;
            let probe = |t: &Rational| -> Result<Option<Rational>> {
                let kt = moved(k, i, t)?;
                Ok(measures_proportional(&surface_area_measure(&kt), &base))
            };
            Ok(FacetRecord {
                facet_index: i,
                normal: k.facets()[i].normal.clone(),
                lambda: probe(&t)?,
                confirm_lambda: probe(&(&t * &half))?,
                t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if records.iter().all(FacetRecord::proportional) {
        Shape::Simplex
    } else {
        Shape::NonSimplex
    };
    let vertex_count = k.vertices().len();
    let consistent = (verdict == Shape::Simplex) == (vertex_count == n + 1);
    Ok(AuditReport {
        records,
        verdict,
        vertex_count,
        consistent,
    })
}

/// `λ^{1/(n-1)}` for a measure ratio `λ`, when rational.
pub fn homothety_scale_from_measure(ratio: &Rational, n: usize) -> Option<Rational> {
    if n < 2 {
        return None;
    }
    if ratio.is_one() || ratio.is_zero() {
        return Some(ratio.clone());
    }
    crate::exact_root(ratio, (n - 1) as u32)
}
