use num_traits::Zero;

use crate::linalg::solve;
use crate::{Error, Halfspace, Polytope, Rational, Result, Vector};

/// Largest number of halfspaces accepted by [`vertex_enumeration`].
pub const HALFSPACE_GUARD: usize = 128;

/// Vertices of the bounded intersection of `halfspaces` in `R^dim`.
///
/// Brute force: every `dim`-subset of boundary hyperplanes is solved exactly
/// and the solutions are filtered by feasibility.
pub fn vertex_enumeration(halfspaces: &[Halfspace], dim: usize) -> Result<Polytope> {
    if halfspaces.len() > HALFSPACE_GUARD {
        return Err(Error::TooManyHalfspaces {
            count: halfspaces.len(),
            limit: HALFSPACE_GUARD,
        });
    }
    if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: h.normal.dim(),
        });
    }
    let rows: Vec<(Vec<Rational>, Rational)> = halfspaces
        .iter()
        .map(|h| {
            let (z, c) = h.as_upper();
            (z.to_rational(), c)
        })
        .collect();
    if !is_bounded(&rows, dim) {
        return Err(Error::Unbounded);
    }

    let feasible = |x: &Vector| rows.iter().all(|(a, c)| crate::linalg::dot(a, x) <= *c);
    let mut vertices = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            if feasible(&x) {
                vertices.push(x);
            }
        }
        if !next_subset(&mut subset, rows.len()) {
            break;
        }
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    let p = Polytope::from_points(dim, vertices)?;
    if !p.is_full_dimensional() {
        return Err(Error::DegenerateInput {
            expected: dim,
            found: p.affine_dim(),
        });
    }
    Ok(p)
}

/// Advances `subset` to the next combination of `0..n` in lexicographic order.
pub(crate) fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    if k == 0 || k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A nonempty `{A x <= b}` is bounded iff the rows of `A` positively span
/// `R^dim`, i.e. the origin is interior to their convex hull.
fn is_bounded(rows: &[(Vec<Rational>, Rational)], dim: usize) -> bool {
    if rows.len() <= dim {
        return false;
    }
    let Ok(cone) = Polytope::from_points(dim, rows.iter().map(|(a, _)| a.clone()).collect()) else {
        return false;
    };
    cone.is_full_dimensional() && cone.facets().iter().all(|f| f.offset > Rational::zero())
}
