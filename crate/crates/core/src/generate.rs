//! Exact rational polytope families and seeded random bodies.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{convex_hull, Error, Halfspace, Polytope, PrimitiveNormal, Rational, Result, Vector};

fn unit(n: usize, i: usize) -> Vector {
    (0..n)
        .map(|j| Rational::from_integer(BigInt::from(u8::from(i == j))))
        .collect()
}

fn zero(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    let limit = crate::dimension_cap();
    if n > limit {
        return Err(Error::DimensionLimit { dim: n, limit });
    }
    Ok(())
}

/// `conv{0, e_1, ..., e_n}`.
pub fn simplex(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let mut pts = vec![zero(n)];
    pts.extend((0..n).map(|i| unit(n, i)));
    convex_hull(&pts, n)
}

/// `[0, 1]^n`.
pub fn cube(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let pts: Vec<Vector> = (0..1u32 << n)
        .map(|m| {
            (0..n)
                .map(|i| Rational::from_integer(BigInt::from((m >> i) & 1)))
                .collect()
        })
        .collect();
    convex_hull(&pts, n)
}

/// `conv{±e_1, ..., ±e_n}`.
pub fn cross_polytope(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let pts: Vec<Vector> = (0..n)
        .flat_map(|i| {
            let e = unit(n, i);
            let m = e.iter().map(|c| -c).collect();
            [e, m]
        })
        .collect();
    convex_hull(&pts, n)
}

/// `base × [0, height]` for a full-dimensional `base` in `R^{n-1}`.
pub fn prism(base: &Polytope, height: &Rational) -> Result<Polytope> {
    if !height.is_positive() {
        return Err(Error::InvalidParameter(
            "prism height must be positive".into(),
        ));
    }
    let n = base.dim() + 1;
    check_dim(n)?;
    let pts: Vec<Vector> = base
        .vertices()
        .iter()
        .flat_map(|v| {
            let mut lo = v.clone();
            lo.push(Rational::zero());
            let mut hi = v.clone();
            hi.push(height.clone());
            [lo, hi]
        })
        .collect();
    convex_hull(&pts, n)
}

/// Standard simplex with the corner at the origin cut off by `Σ x_i >= eps`.
pub fn truncated_simplex(n: usize, eps: &Rational) -> Result<Polytope> {
    if !(eps.is_positive() && *eps < Rational::one()) {
        return Err(Error::InvalidParameter(
            "truncation depth must lie in (0, 1)".into(),
        ));
    }
    let normal = PrimitiveNormal::new(vec![BigInt::one(); n])?;
    simplex(n)?
        .clip(&Halfspace::at_least(normal, eps.clone()))
        .ok_or(Error::Empty)
}

/// Hull of `m` seeded random points with small rational coordinates.
/// Extra points are drawn until the hull is full-dimensional.
pub fn random_hull(n: usize, m: usize, seed: u64) -> Result<Polytope> {
    check_dim(n)?;
    if m < n + 1 {
        return Err(Error::InvalidParameter(format!(
            "need at least {} points",
            n + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Vector> = (0..m).map(|_| random_point(&mut rng, n, 4)).collect();
    for _ in 0..64 {
        let p = Polytope::from_points(n, pts.clone())?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
        pts.push(random_point(&mut rng, n, 4));
    }
    Err(Error::DegenerateInput {
        expected: n,
        found: n - 1,
    })
}

/// Point with coordinates `k / 2`, `|k| <= 2 * bound`.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    (0..n)
        .map(|_| {
            Rational::new(
                rng.gen_range(-2 * bound..=2 * bound).into(),
                BigInt::from(2),
            )
        })
        .collect()
}

/// Random body for fuzzing: hull of 1 to `max_points` random points, any
/// affine dimension (segments, polygons and full bodies all occur).
pub fn random_body<R: Rng>(rng: &mut R, n: usize, max_points: usize) -> Polytope {
    let k = rng.gen_range(2..=max_points.max(2));
    let pts = (0..k).map(|_| random_point(rng, n, 3)).collect();
    Polytope::from_points(n, pts).expect("nonempty point set")
}

/// Random full-dimensional body with at most `max_points` generating points.
pub fn random_full_body<R: Rng>(rng: &mut R, n: usize, max_points: usize) -> Polytope {
    loop {
        let k = rng.gen_range(n + 1..=max_points.max(n + 1));
        let pts = (0..k).map(|_| random_point(rng, n, 3)).collect();
        let p = Polytope::from_points(n, pts).expect("nonempty point set");
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// `A Δ + b` for the standard simplex and a random invertible rational `A`.
pub fn random_affine_simplex<R: Rng>(rng: &mut R, n: usize) -> Polytope {
    let base = simplex(n).expect("n >= 1");
    loop {
        let a: Vec<Vector> = (0..n).map(|_| random_point(rng, n, 2)).collect();
        if crate::linalg::determinant(&a).is_zero() {
            continue;
        }
        let b = random_point(rng, n, 2);
        return base.affine_image(&a, &b).expect("invertible map");
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued fraction of the exact binary value of `x`.
pub fn best_rational(x: f64, max_den: u64) -> Result<Rational> {
    let exact = Rational::from_float(x)
        .ok_or_else(|| Error::InvalidParameter(format!("{x} is not finite")))?;
    if max_den == 0 {
        return Err(Error::InvalidParameter(
            "denominator cap must be positive".into(),
        ));
    }
    let cap = BigInt::from(max_den);
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = exact.clone();
    loop {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > cap {
            // largest admissible semiconvergent vs. the last convergent
            let t = (&cap - &k0) / &k1;
            let semi = Rational::new(&h0 + &t * &h1, &k0 + &t * &k1);
            let last = Rational::new(h1, k1);
            let closer = if (&semi - &exact).abs() < (&last - &exact).abs() {
                semi
            } else {
                last
            };
            return Ok(closer);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = &r - Rational::from_integer(a);
        if frac.is_zero() {
            return Ok(Rational::new(h1, k1));
        }
        r = frac.recip();
    }
}

/// Rational `m`-gon approximating the unit circle, vertex `k` near
/// `(cos 2πk/m, sin 2πk/m)`.
pub fn regular_polygon(m: usize, max_den: u64) -> Result<Polytope> {
    check_dim(2)?;
    if m < 3 {
        return Err(Error::InvalidParameter(
            "polygon needs at least 3 sides".into(),
        ));
    }
    let pts: Vec<Vector> = (0..m)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            Ok(vec![
                best_rational(a.cos(), max_den)?,
                best_rational(a.sin(), max_den)?,
            ])
        })
        .collect::<Result<_>>()?;
    let p = convex_hull(&pts, 2)?;
    if p.vertices().len() != m {
        return Err(Error::InvalidParameter(format!(
            "denominator cap {max_den} too small for a convex {m}-gon"
        )));
    }
    Ok(p)
}

/// Rational polytope inscribed near the unit sphere in `R^3`: the octahedron
/// with each face subdivided into `s^2` triangles, pushed to the sphere.
pub fn ball_approx_3d(subdivisions: usize, max_den: u64) -> Result<Polytope> {
    check_dim(3)?;
    let s = subdivisions;
    if s == 0 {
        return Err(Error::InvalidParameter(
            "subdivisions must be positive".into(),
        ));
    }
    let mut pts: Vec<Vector> = Vec::new();
    for signs in 0..8u32 {
        let sg = |b: u32| if signs >> b & 1 == 1 { -1.0 } else { 1.0 };
        for i in 0..=s {
            for j in 0..=s - i {
                let k = s - i - j;
                let v = [sg(0) * i as f64, sg(1) * j as f64, sg(2) * k as f64];
                let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                pts.push(
                    v.iter()
                        .map(|c| best_rational(c / len, max_den))
                        .collect::<Result<_>>()?,
                );
            }
        }
    }
    pts.sort();
    pts.dedup();
    let expected = pts.len();
    let p = convex_hull(&pts, 3)?;
    if p.vertices().len() != expected {
        return Err(Error::InvalidParameter(format!(
            "denominator cap {max_den} too small for {expected} points in convex position"
        )));
    }
    Ok(p)
}

/// Reduces `num / den` to a `(numerator, denominator)` pair of `i64`, if it fits.
pub fn to_i64_pair(x: &Rational) -> Option<(i64, i64)> {
    let g = x.numer().gcd(x.denom());
    Some(((x.numer() / &g).to_i64()?, (x.denom() / &g).to_i64()?))
}
