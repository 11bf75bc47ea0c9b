use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::hull::hull;
use crate::linalg::{self, pivot_columns, sub};
use crate::{Error, Halfspace, Integer, PrimitiveNormal, Rational, Result, Vector};

/// One facet of a full-dimensional polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetData {
    pub normal: PrimitiveNormal,
    /// The facet lies in `{x : <x, normal> = offset}`; equals `support_value(normal)`.
    pub offset: Rational,
    /// Indices into the parent's vertex list.
    pub vertices: Vec<usize>,
    /// `Vol_{n-1}(facet) / |normal|`, exact.
    pub normalized_volume: Rational,
}

#[derive(Debug)]
struct FacetCache {
    facets: Vec<FacetData>,
    volume: Rational,
}

/// Convex hull of finitely many rational points, stored by its extreme points
/// in lexicographic order.
///
/// Lower-dimensional polytopes (faces, projections) are ordinary values that
/// record their affine dimension. Facet structure of a full-dimensional
/// polytope is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<Vector>,
    cache: OnceLock<Arc<FacetCache>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// Full-dimensional hull; `DegenerateInput` if the points span less than `dim`.
pub fn convex_hull(points: &[Vector], dim: usize) -> Result<Polytope> {
    let p = Polytope::from_points(dim, points.to_vec())?;
    if p.affine_dim != dim {
        return Err(Error::DegenerateInput {
            expected: dim,
            found: p.affine_dim,
        });
    }
    Ok(p)
}

fn common_denominator(points: &[Vector]) -> Integer {
    points
        .iter()
        .flatten()
        .fold(Integer::one(), |l, c| l.lcm(c.denom()))
}

fn to_integer(points: &[Vector], den: &Integer) -> Vec<Vec<Integer>> {
    points
        .iter()
        .map(|p| p.iter().map(|c| c.numer() * (den / c.denom())).collect())
        .collect()
}

fn factorial(n: usize) -> Integer {
    (1..=n as u64).map(Integer::from).product()
}

/// Extreme points and facet data of distinct points spanning their space.
fn full_hull(points: &[Vector]) -> (Vec<usize>, FacetCache) {
    let d = points[0].len();
    let den = common_denominator(points);
    let ints = to_integer(points, &den);
    let h = hull(&ints);
    let mut position = vec![usize::MAX; points.len()];
    for (k, &i) in h.extreme.iter().enumerate() {
        position[i] = k;
    }
    let area_scale = Rational::from_integer(factorial(d - 1) * num_traits::pow(den.clone(), d - 1));
    let den_q = Rational::from_integer(den.clone());
    let facets = h
        .facets
        .into_iter()
        .map(|f| FacetData {
            normal: PrimitiveNormal::new(f.normal).expect("hull normal"),
            offset: Rational::from_integer(f.offset) / &den_q,
            vertices: f.points.iter().map(|&i| position[i]).collect(),
            normalized_volume: Rational::from_integer(f.scaled_area) / &area_scale,
        })
        .collect();
    let volume = Rational::new(h.volume_factorial, factorial(d) * num_traits::pow(den, d));
    (h.extreme, FacetCache { facets, volume })
}

/// Affine dimension of `points` and a set of coordinates on which the
/// projection of their affine hull is injective.
fn affine_frame(points: &[Vector]) -> (usize, Vec<usize>) {
    let diffs: Vec<Vector> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let cols = pivot_columns(&diffs);
    (cols.len(), cols)
}

impl Polytope {
    /// Hull of `points` in `R^dim`, of whatever affine dimension they span.
    pub fn from_points(dim: usize, mut points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        points.sort();
        points.dedup();
        let (affine_dim, cols) = affine_frame(&points);
        if affine_dim == 0 {
            return Ok(Self::with_vertices(dim, 0, points));
        }
        if affine_dim == dim {
            let (extreme, cache) = full_hull(&points);
            let vertices = extreme.into_iter().map(|i| points[i].clone()).collect();
            let p = Self::with_vertices(dim, dim, vertices);
            let _ = p.cache.set(Arc::new(cache));
            return Ok(p);
        }
        let projected: Vec<Vector> = points
            .iter()
            .map(|p| cols.iter().map(|&c| p[c].clone()).collect())
            .collect();
        let den = common_denominator(&projected);
        let extreme = hull(&to_integer(&projected, &den)).extreme;
        let vertices = extreme.into_iter().map(|i| points[i].clone()).collect();
        Ok(Self::with_vertices(dim, affine_dim, vertices))
    }

    fn with_vertices(dim: usize, affine_dim: usize, vertices: Vec<Vector>) -> Self {
        Self {
            dim,
            affine_dim,
            vertices,
            cache: OnceLock::new(),
        }
    }

    pub fn point(x: Vector) -> Self {
        Self::with_vertices(x.len(), 0, vec![x])
    }

    /// The segment `[a, b]`.
    pub fn segment(a: Vector, b: Vector) -> Result<Self> {
        let dim = a.len();
        Self::from_points(dim, vec![a, b])
    }

    /// The segment `[0, v]`.
    pub fn segment_from_origin(v: Vector) -> Result<Self> {
        let zero = vec![Rational::zero(); v.len()];
        Self::segment(zero, v)
    }

    /// The segment `[-v, v]`.
    pub fn symmetric_segment(v: &[Rational]) -> Result<Self> {
        Self::segment(v.iter().map(|c| -c).collect(), v.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    fn cache(&self) -> Option<&FacetCache> {
        if !self.is_full_dimensional() {
            return None;
        }
        Some(
            self.cache
                .get_or_init(|| Arc::new(full_hull(&self.vertices).1)),
        )
    }

    /// Facets sorted by primitive normal; empty for lower-dimensional polytopes.
    pub fn facets(&self) -> &[FacetData] {
        self.cache().map_or(&[], |c| &c.facets)
    }

    pub fn facet_normals(&self) -> Vec<PrimitiveNormal> {
        self.facets().iter().map(|f| f.normal.clone()).collect()
    }

    /// Index of the facet with outer normal `z`, if any.
    pub fn facet_index(&self, z: &PrimitiveNormal) -> Option<usize> {
        self.facets().binary_search_by(|f| f.normal.cmp(z)).ok()
    }

    /// Exact `n`-volume; zero when lower-dimensional.
    pub fn volume(&self) -> Rational {
        self.cache()
            .map_or_else(Rational::zero, |c| c.volume.clone())
    }

    /// `max <x, z>` over the polytope, i.e. `|z| h(z / |z|)`.
    pub fn support_value(&self, z: &PrimitiveNormal) -> Rational {
        self.vertices
            .iter()
            .map(|x| z.dot(x))
            .max()
            .expect("nonempty polytope")
    }

    /// The face `P ∩ {<x, z> = support_value(z)}`.
    pub fn face_in_direction(&self, z: &PrimitiveNormal) -> Polytope {
        let values: Vec<Rational> = self.vertices.iter().map(|x| z.dot(x)).collect();
        let top = values.iter().max().expect("nonempty polytope");
        let pts: Vec<Vector> = self
            .vertices
            .iter()
            .zip(&values)
            .filter(|(_, v)| *v == top)
            .map(|(x, _)| x.clone())
            .collect();
        if pts.len() == 1 {
            return Polytope::point(pts.into_iter().next().unwrap());
        }
        Polytope::from_points(self.dim, pts).expect("face of a polytope")
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let sums = self
            .vertices
            .iter()
            .flat_map(|p| other.vertices.iter().map(move |q| linalg::add(p, q)))
            .collect();
        Polytope::from_points(self.dim, sums)
    }

    pub fn translate(&self, x: &[Rational]) -> Polytope {
        let vertices = self.vertices.iter().map(|v| linalg::add(v, x)).collect();
        Self::with_vertices(self.dim, self.affine_dim, vertices)
    }

    /// `c P` for `c > 0`.
    pub fn scale(&self, c: &Rational) -> Polytope {
        assert!(c.is_positive(), "scale factor must be positive");
        let vertices = self.vertices.iter().map(|v| linalg::scale(v, c)).collect();
        Self::with_vertices(self.dim, self.affine_dim, vertices)
    }

    /// Image under `x -> A x + b`.
    pub fn affine_image(&self, a: &[Vector], b: &[Rational]) -> Result<Polytope> {
        let pts = self
            .vertices
            .iter()
            .map(|x| {
                a.iter()
                    .zip(b)
                    .map(|(row, bi)| linalg::dot(row, x) + bi)
                    .collect()
            })
            .collect();
        Polytope::from_points(b.len(), pts)
    }

    /// Coordinate projection deleting coordinate `k`.
    pub fn drop_coordinate(&self, k: usize) -> Polytope {
        let pts = self
            .vertices
            .iter()
            .map(|x| {
                x.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        Polytope::from_points(self.dim - 1, pts).expect("projection of a polytope")
    }

    /// Intersection with a halfspace; `None` when empty.
    pub fn clip(&self, h: &Halfspace) -> Option<Polytope> {
        let (z, c) = h.as_upper();
        let values: Vec<Rational> = self.vertices.iter().map(|x| z.dot(x)).collect();
        if values.iter().all(|v| *v <= c) {
            return Some(self.clone());
        }
        if values.iter().all(|v| *v > c) {
            return None;
        }
        let mut pts: Vec<Vector> = Vec::new();
        for (x, a) in self.vertices.iter().zip(&values) {
            if *a <= c {
                pts.push(x.clone());
            }
        }
        for (x, a) in self.vertices.iter().zip(&values).filter(|(_, a)| **a < c) {
            for (y, b) in self.vertices.iter().zip(&values).filter(|(_, b)| **b > c) {
                let s = (&c - a) / (b - a);
                pts.push(linalg::add(x, &linalg::scale(&sub(y, x), &s)));
            }
        }
        Some(Polytope::from_points(self.dim, pts).expect("clipped polytope"))
    }

    /// Orthogonal projection onto `v^⊥`, in coordinates of a rational basis
    /// `B` of `v^⊥`, together with `det(BᵀB)`. The true `(n-1)`-volume of the
    /// projection is `volume(result) * sqrt(gram)`. The basis is
    /// `b_j = e_j - (v_j / v_k) e_k` for the last nonzero coordinate `k`, which
    /// reduces to coordinate deletion when `v` is an axis.
    pub fn project_along(&self, v: &[Rational]) -> Result<(Polytope, Rational)> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let k = v
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::ZeroVector)?;
        if self.dim < 2 {
            return Err(Error::InvalidParameter(
                "projection needs dimension >= 2".into(),
            ));
        }
        let basis: Vec<Vector> = (0..self.dim)
            .filter(|&j| j != k)
            .map(|j| {
                let mut b = vec![Rational::zero(); self.dim];
                b[j] = Rational::one();
                b[k] = -(&v[j] / &v[k]);
                b
            })
            .collect();
        let gram_matrix: Vec<Vector> = basis
            .iter()
            .map(|bi| basis.iter().map(|bj| linalg::dot(bi, bj)).collect())
            .collect();
        let gram = linalg::determinant(&gram_matrix);
        let pts = self
            .vertices
            .iter()
            .map(|x| {
                let rhs: Vector = basis.iter().map(|b| linalg::dot(b, x)).collect();
                linalg::solve(&gram_matrix, &rhs).expect("basis is independent")
            })
            .collect();
        Ok((Polytope::from_points(self.dim - 1, pts)?, gram))
    }

    /// Vertex pairs spanning an edge of a full-dimensional polytope.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let facets = self.facets();
        let n = self.vertices.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, f) in facets.iter().enumerate() {
            f.vertices.iter().for_each(|&v| incident[v].push(k));
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let common: Vec<Vec<Rational>> = incident[i]
                    .iter()
                    .filter(|k| incident[j].contains(k))
                    .map(|&k| facets[k].normal.to_rational())
                    .collect();
                if common.len() + 1 >= self.dim && linalg::rank(&common) + 1 == self.dim {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Average of the vertices.
    pub fn vertex_centroid(&self) -> Vector {
        let n = Rational::from_integer(BigInt::from(self.vertices.len()));
        (0..self.dim)
            .map(|c| self.vertices.iter().map(|v| &v[c]).sum::<Rational>() / &n)
            .collect()
    }

    /// The halfspace description `<x, z_j> <= offset_j` of a full-dimensional polytope.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.facets()
            .iter()
            .map(|f| Halfspace::at_most(f.normal.clone(), f.offset.clone()))
            .collect()
    }

    /// Width `h(z) + h(-z)` in the denominator-cleared scale.
    pub fn width(&self, z: &PrimitiveNormal) -> Rational {
        self.support_value(z) + self.support_value(&-z)
    }
}
