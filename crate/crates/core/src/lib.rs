//! Exact mixed volumes, area measures and Bezout-inequality diagnostics for
//! rational convex polytopes.
//!
//! Every quantity is an exact rational. Directions are stored as primitive
//! integer vectors `z`; the corresponding unit vector is `z / |z|`, and all
//! formulas over the sphere are restated in this denominator-cleared form:
//!
//! * `support_value(P, z) = |z| * h_P(z / |z|)`
//! * a measure atom at `z` with stored weight `w` has true weight `w * |z|`
//!
//! The linear-algebra kernel in [`linalg`] is generic over the scalar type;
//! the polytope layer is instantiated at [`Rational`].

pub mod audit;
pub mod bezout;
pub mod deform;
mod error;
pub mod generate;
mod hull;
pub mod linalg;
pub mod measure;
pub mod mixed;
mod normal;
mod polytope;
pub mod search;
mod venum;

pub use error::{Error, Result};
pub use measure::DiscreteMeasure;
pub use normal::{Halfspace, PrimitiveNormal, Sense};
pub use polytope::{convex_hull, FacetData, Polytope};
pub use venum::vertex_enumeration;

/// Arbitrary-precision exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// A point or direction in `R^n` with exact rational coordinates.
pub type Vector = Vec<Rational>;

/// Hard upper bound on the ambient dimension of full-dimensional operations.
pub const MAX_DIM: usize = 4;

/// The effective dimension cap: [`MAX_DIM`], lowered by `MVLAB_DIM_LIMIT` if set.
pub fn dimension_cap() -> usize {
    static CAP: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("MVLAB_DIM_LIMIT")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map_or(MAX_DIM, |v| v.min(MAX_DIM))
    })
}

/// `num / den` as a [`Rational`]. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Integer-valued [`Rational`].
pub fn qi(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Builds a rational vector from integer coordinates.
pub fn vector(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| qi(c)).collect()
}

/// Exact `k`-th root of a nonnegative rational, if it is rational.
pub fn exact_root(x: &Rational, k: u32) -> Option<Rational> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    (num_traits::pow(n.clone(), k as usize) == *x.numer()
        && num_traits::pow(d.clone(), k as usize) == *x.denom())
    .then(|| Rational::new(n, d))
}
