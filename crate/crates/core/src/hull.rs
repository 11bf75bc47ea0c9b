//! Incremental beneath-beyond convex hull on integer points.
//!
//! Visibility is strict (`<z, p> > c`), so points on the boundary of the
//! current hull are skipped and coplanar facets stay triangulated. The
//! resulting simplicial boundary is a placing triangulation; facets of the
//! polytope are recovered by grouping simplices by primitive normal, and
//! extreme points by the rank of their incident facet normals.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::linalg::{bareiss_determinant, cross, dot, rank, sub};
use crate::{Integer, Rational};

pub(crate) struct HullFacet {
    /// Primitive outer normal.
    pub normal: Vec<Integer>,
    pub offset: Integer,
    /// `(d-1)!` times the facet volume divided by `|normal|`, in input units.
    pub scaled_area: Integer,
    /// Incident extreme points (indices into the input).
    pub points: Vec<usize>,
}

pub(crate) struct Hull {
    /// Sorted indices of extreme points.
    pub extreme: Vec<usize>,
    /// Sorted by normal.
    pub facets: Vec<HullFacet>,
    /// `d!` times the volume, in input units.
    pub volume_factorial: Integer,
}

struct Simplex {
    pts: Vec<usize>,
    normal: Vec<Integer>,
    offset: Integer,
    area: Integer,
}

/// Hull of distinct integer points affinely spanning `R^d`, `d >= 1`.
pub(crate) fn hull(points: &[Vec<Integer>]) -> Hull {
    let d = points[0].len();
    if d == 1 {
        return hull_1d(points);
    }

    let mut base = vec![0usize];
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, p) in points.iter().enumerate().skip(1) {
        if base.len() == d + 1 {
            break;
        }
        rows.push(
            sub(p, &points[0])
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        );
        if rank(&rows) == rows.len() {
            base.push(i);
        } else {
            rows.pop();
        }
    }
    assert_eq!(base.len(), d + 1, "hull input must span the ambient space");

    let interior: Vec<Integer> = (0..d)
        .map(|c| base.iter().map(|&b| &points[b][c]).sum())
        .collect();
    let weight = Integer::from(d as u64 + 1);

    let make = |mut pts: Vec<usize>| -> Simplex {
        pts.sort_unstable();
        let diffs: Vec<Vec<Integer>> = pts[1..]
            .iter()
            .map(|&p| sub(&points[p], &points[pts[0]]))
            .collect();
        let c = cross(&diffs);
        let g = c.iter().fold(Integer::zero(), |g, v| g.gcd(v));
        debug_assert!(!g.is_zero(), "degenerate hull simplex");
        let mut normal: Vec<Integer> = c.into_iter().map(|v| v / &g).collect();
        let mut offset = dot(&normal, &points[pts[0]]);
        if dot(&normal, &interior) > &offset * &weight {
            normal.iter_mut().for_each(|v| *v = -&*v);
            offset = -offset;
        }
        Simplex {
            pts,
            normal,
            offset,
            area: g,
        }
    };

    let mut facets: Vec<Simplex> = (0..=d)
        .map(|skip| {
            base.iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &b)| b)
                .collect()
        })
        .map(&make)
        .collect();

    let mut is_base = vec![false; points.len()];
    base.iter().for_each(|&b| is_base[b] = true);

    for (i, p) in points.iter().enumerate() {
        if is_base[i] {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| dot(&f.normal, p) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..d {
                let ridge: Vec<usize> = f
                    .pts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &q)| q)
                    .collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort_unstable();
        let mut keep = visible.iter();
        facets.retain(|_| !*keep.next().unwrap());
        facets.extend(horizon.into_iter().map(|mut r| {
            r.push(i);
            make(r)
        }));
    }

    let apex = &points[base[0]];
    let volume_factorial = facets
        .iter()
        .map(|f| {
            let m: Vec<Vec<Integer>> = f.pts.iter().map(|&q| sub(&points[q], apex)).collect();
            bareiss_determinant(&m).abs()
        })
        .sum();

    let mut grouped: BTreeMap<Vec<Integer>, (Integer, Integer)> = BTreeMap::new();
    for f in facets {
        let e = grouped
            .entry(f.normal)
            .or_insert_with(|| (f.offset.clone(), Integer::zero()));
        debug_assert_eq!(e.0, f.offset);
        e.1 += f.area;
    }
    let mut facets: Vec<HullFacet> = grouped
        .into_iter()
        .map(|(normal, (offset, scaled_area))| HullFacet {
            normal,
            offset,
            scaled_area,
            points: Vec::new(),
        })
        .collect();

    let mut extreme = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let incident: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| dot(&f.normal, p) == f.offset)
            .map(|(k, _)| k)
            .collect();
        if incident.len() < d {
            continue;
        }
        let normals: Vec<Vec<Rational>> = incident
            .iter()
            .map(|&k| {
                facets[k]
                    .normal
                    .iter()
                    .cloned()
                    .map(Rational::from_integer)
                    .collect()
            })
            .collect();
        if rank(&normals) == d {
            extreme.push(i);
            incident.iter().for_each(|&k| facets[k].points.push(i));
        }
    }

    Hull {
        extreme,
        facets,
        volume_factorial,
    }
}

fn hull_1d(points: &[Vec<Integer>]) -> Hull {
    let (lo, _) = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1[0].cmp(&b.1[0]))
        .unwrap();
    let (hi, _) = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1[0].cmp(&b.1[0]))
        .unwrap();
    let one = Integer::from(1);
    let mut extreme = vec![lo, hi];
    extreme.sort_unstable();
    Hull {
        extreme,
        facets: vec![
            HullFacet {
                normal: vec![-one.clone()],
                offset: -points[lo][0].clone(),
                scaled_area: one.clone(),
                points: vec![lo],
            },
            HullFacet {
                normal: vec![one.clone()],
                offset: points[hi][0].clone(),
                scaled_area: one,
                points: vec![hi],
            },
        ],
        volume_factorial: &points[hi][0] - &points[lo][0],
    }
}
