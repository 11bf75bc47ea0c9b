//! Facet moves and cap cuts.
//!
//! A move of facet `i` by `t` replaces `<x, z_i> <= c_i` with
//! `<x, z_i> <= c_i + t`, keeping every other facet inequality. Displacements
//! live in the denominator-cleared scale of the primitive normal, i.e. `t`
//! here corresponds to a displacement of `t / |z_i|` along the unit normal.

use num_traits::{Signed, Zero};

use crate::linalg::{dot, solve};
use crate::venum::next_subset;
use crate::{
    vertex_enumeration, Error, Halfspace, Polytope, PrimitiveNormal, Rational, Result, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSpec {
    pub facet_index: usize,
    pub t: Rational,
}

impl MoveSpec {
    pub fn new(facet_index: usize, t: Rational) -> Self {
        Self { facet_index, t }
    }
}

/// Open interval `(min, max)` with `min < 0 < max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafeRange {
    pub min: Rational,
    pub max: Rational,
}

impl SafeRange {
    pub fn contains(&self, t: &Rational) -> bool {
        self.min < *t && *t < self.max
    }
}

fn check_index(k: &Polytope, i: usize) -> Result<()> {
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateInput {
            expected: k.dim(),
            found: k.affine_dim(),
        });
    }
    if i >= k.facets().len() {
        return Err(Error::InvalidParameter(format!(
            "facet index {i} out of range for {} facets",
            k.facets().len()
        )));
    }
    Ok(())
}

/// The moved polytope without the safe-range check.
pub(crate) fn moved(k: &Polytope, i: usize, t: &Rational) -> Result<Polytope> {
    let mut hs = k.halfspaces();
    hs[i].bound += t;
    vertex_enumeration(&hs, k.dim())
}

/// `K_{t,i}`; fails with `RangeViolation` unless `t` lies in [`safe_move_range`].
pub fn move_facet(k: &Polytope, spec: &MoveSpec) -> Result<Polytope> {
    let range = safe_move_range(k, spec.facet_index)?;
    if !range.contains(&spec.t) {
        return Err(Error::RangeViolation {
            t: spec.t.to_string(),
            min: range.min.to_string(),
            max: range.max.to_string(),
        });
    }
    moved(k, spec.facet_index, &spec.t)
}

/// Values of `t` at which an arrangement vertex of `K_{t,i}` meets another
/// facet hyperplane; the combinatorial type is constant between them.
fn events(k: &Polytope, i: usize) -> Vec<Rational> {
    let n = k.dim();
    let rows: Vec<(Vec<Rational>, Rational)> = k
        .facets()
        .iter()
        .map(|f| (f.normal.to_rational(), f.offset.clone()))
        .collect();
    let others: Vec<usize> = (0..rows.len()).filter(|&j| j != i).collect();
    let mut out = Vec::new();

    // vertices on the moving hyperplane travel along x0 + t d
    let mut unit_i = vec![Rational::zero(); n];
    unit_i[n - 1] = Rational::from_integer(1.into());
    let mut subset: Vec<usize> = (0..n - 1).collect();
    if others.len() >= n - 1 {
        loop {
            let chosen: Vec<usize> = subset.iter().map(|&s| others[s]).chain([i]).collect();
            let a: Vec<Vec<Rational>> = chosen.iter().map(|&j| rows[j].0.clone()).collect();
            let b: Vec<Rational> = chosen.iter().map(|&j| rows[j].1.clone()).collect();
            if let (Some(x0), Some(d)) = (solve(&a, &b), solve(&a, &unit_i)) {
                for (j, (aj, cj)) in rows.iter().enumerate() {
                    if chosen.contains(&j) {
                        continue;
                    }
                    let slope = dot(aj, &d);
                    if !slope.is_zero() {
                        out.push((cj - dot(aj, &x0)) / slope);
                    }
                }
            }
            if !next_subset(&mut subset, others.len()) {
                break;
            }
        }
    }

    // fixed vertices crossed by the moving hyperplane
    let mut subset: Vec<usize> = (0..n).collect();
    if others.len() >= n {
        loop {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&s| rows[others[s]].0.clone()).collect();
            let b: Vec<Rational> = subset.iter().map(|&s| rows[others[s]].1.clone()).collect();
            if let Some(x) = solve(&a, &b) {
                out.push(dot(&rows[i].0, &x) - &rows[i].1);
            }
            if !next_subset(&mut subset, others.len()) {
                break;
            }
        }
    }
    out
}

/// A verified interval of displacements for facet `i` that keep the facet
/// normal set of `K` unchanged. Not maximal: the nearest combinatorial events
/// are halved and the endpoints checked by explicit vertex enumeration.
pub fn safe_move_range(k: &Polytope, i: usize) -> Result<SafeRange> {
    check_index(k, i)?;
    let ev = events(k, i);
    let z = &k.facets()[i].normal;
    let surrogate = k.width(z) * Rational::from_integer(2.into());
    let half = Rational::new(1.into(), 2.into());
    let mut max = ev
        .iter()
        .filter(|t| t.is_positive())
        .min()
        .cloned()
        .unwrap_or_else(|| surrogate.clone())
        * &half;
    let mut min = ev
        .iter()
        .filter(|t| t.is_negative())
        .max()
        .cloned()
        .unwrap_or_else(|| -surrogate)
        * &half;
    let normals = k.facet_normals();
    let stable = |t: &Rational| moved(k, i, t).is_ok_and(|p| p.facet_normals() == normals);
    for bound in [&mut max, &mut min] {
        let mut tries = 0;
        while !stable(bound) {
            tries += 1;
            assert!(tries < 64, "no stable displacement found");
            *bound *= &half;
        }
    }
    Ok(SafeRange { min, max })
}

/// `K ∩ {<x, z> <= support_value(K, z) - eps}`.
pub fn cap_cut(k: &Polytope, z: &PrimitiveNormal, eps: &Rational) -> Result<Polytope> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("cap depth must be positive".into()));
    }
    if z.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: z.dim(),
        });
    }
    let bound = k.support_value(z) - eps;
    match k.clip(&Halfspace::at_most(z.clone(), bound)) {
        Some(p) if p.is_full_dimensional() => Ok(p),
        _ => Err(Error::EmptyOrFlat),
    }
}

/// Whether `M` and `K` have the same orthogonal projection onto `v^⊥`.
pub fn projection_preserved(k: &Polytope, m: &Polytope, v: &[Rational]) -> Result<bool> {
    let (pk, _) = k.project_along(v)?;
    let (pm, _) = m.project_along(v)?;
    Ok(pk == pm)
}

/// Facet normals `z` of `K` where `support_value(M, z) < support_value(K, z)`.
pub fn support_drop_set(k: &Polytope, m: &Polytope) -> Vec<PrimitiveNormal> {
    k.facets()
        .iter()
        .filter(|f| m.support_value(&f.normal) < f.offset)
        .map(|f| f.normal.clone())
        .collect()
}

/// Largest depth, in the scale of `z`, by which a facet touching the face
/// `K^z` falls below the supporting hyperplane of `K` in direction `z`.
pub fn max_facet_sagitta(k: &Polytope, z: &PrimitiveNormal) -> Rational {
    let top = k.support_value(z);
    let on_top: Vec<usize> = k
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| z.dot(v) == top)
        .map(|(i, _)| i)
        .collect();
    k.facets()
        .iter()
        .filter(|f| f.vertices.iter().any(|v| on_top.contains(v)))
        .flat_map(|f| f.vertices.iter().map(|&v| &top - z.dot(&k.vertices()[v])))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Direction of the rational vector `v` as a primitive normal.
pub fn direction(v: &Vector) -> Result<PrimitiveNormal> {
    PrimitiveNormal::from_rational(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cube, regular_polygon, simplex};
    use crate::{q, qi, vector};

    fn z(c: &[i64]) -> PrimitiveNormal {
        PrimitiveNormal::from_i64(c).unwrap()
    }

    #[test]
    fn square_moves() {
        let sq = cube(2).unwrap();
        let top = sq.facet_index(&z(&[0, 1])).unwrap();
        let moved = move_facet(&sq, &MoveSpec::new(top, q(1, 2))).unwrap();
        assert_eq!(
            moved.vertices(),
            &[
                vector(&[0, 0]),
                vec![qi(0), q(3, 2)],
                vector(&[1, 0]),
                vec![qi(1), q(3, 2)]
            ]
        );
        assert!(matches!(
            move_facet(&sq, &MoveSpec::new(top, qi(-2))),
            Err(Error::RangeViolation { .. })
        ));
        for i in 0..4 {
            let r = safe_move_range(&sq, i).unwrap();
            assert!(r.min <= q(-1, 2) && r.max >= qi(1), "{r:?}");
        }
    }

    #[test]
    fn triangle_moves() {
        let t = simplex(2).unwrap();
        let left = t.facet_index(&z(&[-1, 0])).unwrap();
        let moved = move_facet(&t, &MoveSpec::new(left, q(1, 2))).unwrap();
        assert_eq!(
            moved.vertices(),
            &[
                vec![q(-1, 2), qi(0)],
                vec![q(-1, 2), q(3, 2)],
                vector(&[1, 0])
            ]
        );
        for i in 0..3 {
            let r = safe_move_range(&t, i).unwrap();
            assert!(r.min <= q(-1, 4) && r.max >= qi(1), "{r:?}");
        }
        let s3 = simplex(3).unwrap();
        for i in 0..4 {
            let r = safe_move_range(&s3, i).unwrap();
            assert!(r.min.is_negative() && r.max.is_positive());
        }
    }

    #[test]
    fn polygon_range_is_tight() {
        let p = regular_polygon(16, 1000).unwrap();
        let r = safe_move_range(&p, 0).unwrap();
        assert!(r.min.is_negative() && r.max.is_positive());
        let normals = p.facet_normals();
        for t in [r.min.clone() * q(99, 100), r.max.clone() * q(99, 100)] {
            assert_eq!(moved(&p, 0, &t).unwrap().facet_normals(), normals);
        }
    }

    #[test]
    fn caps() {
        let sq = cube(2).unwrap();
        let pent = cap_cut(&sq, &z(&[1, 1]), &q(1, 2)).unwrap();
        assert_eq!(pent.vertices().len(), 5);
        let half = cap_cut(&sq, &z(&[1, 0]), &q(1, 2)).unwrap();
        assert_eq!(
            half.vertices(),
            &[
                vector(&[0, 0]),
                vector(&[0, 1]),
                vec![q(1, 2), qi(0)],
                vec![q(1, 2), qi(1)]
            ]
        );
        assert_eq!(cap_cut(&sq, &z(&[1, 0]), &qi(2)), Err(Error::EmptyOrFlat));
        assert_eq!(cap_cut(&sq, &z(&[1, 0]), &qi(1)), Err(Error::EmptyOrFlat));
    }

    #[test]
    fn projections_and_drops() {
        let sq = cube(2).unwrap();
        let pent = cap_cut(&sq, &z(&[1, 1]), &q(1, 2)).unwrap();
        assert!(projection_preserved(&sq, &sq, &vector(&[1, 0])).unwrap());
        assert!(projection_preserved(&sq, &pent, &vector(&[0, 1])).unwrap());
        let low = cap_cut(&sq, &z(&[0, 1]), &q(1, 2)).unwrap();
        assert!(!projection_preserved(&sq, &low, &vector(&[1, 0])).unwrap());
        assert!(support_drop_set(&sq, &sq).is_empty());
        assert!(support_drop_set(&sq, &pent).is_empty());
        assert_eq!(support_drop_set(&sq, &low), vec![z(&[0, 1])]);

        let disk = regular_polygon(64, 1_000_000).unwrap();
        let capped = cap_cut(&disk, &z(&[1, 0]), &q(1, 10)).unwrap();
        assert!(support_drop_set(&disk, &capped).len() >= 2);
        assert!(max_facet_sagitta(&disk, &z(&[1, 0])) * qi(3) <= q(1, 10));
    }
}
