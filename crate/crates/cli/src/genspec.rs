//! `KIND:PARAMS` generator specs.
//!
//! | spec | body |
//! |---|---|
//! | `simplex:3` | standard simplex |
//! | `cube:2` | unit cube |
//! | `cross_polytope:3` | `conv{±e_i}` |
//! | `prism:simplex:2;1/2` | base times `[0, h]`, base is itself a spec |
//! | `random_hull:3,8,42` | hull of 8 seeded points in `R^3` |
//! | `regular_polygon:64,1000000` | rational 64-gon, denominators ≤ 10^6 |
//! | `ball_approx_3d:2,1000` | subdivided octahedron near the unit sphere |
//! | `truncated_simplex:3,1/4` | simplex minus a corner |
//! | `segment:1,0,0` | `[0, v]` |

use std::str::FromStr;

use mvlab_core::{generate, Polytope, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad generator spec `{spec}`: {reason}")]
pub struct BadParams {
    pub spec: String,
    pub reason: String,
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = d.trim().parse().ok()?;
            let n = n.trim().parse().ok()?;
            (d != num_bigint::BigInt::from(0)).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn parse_rational_list(s: &str) -> Option<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

pub fn generate(spec: &str) -> Result<Polytope, BadParams> {
    let bad = |reason: String| BadParams {
        spec: spec.to_string(),
        reason,
    };
    let (kind, params) = spec
        .split_once(':')
        .ok_or_else(|| bad("expected KIND:PARAMS".into()))?;
    let ints = |want: usize| -> Result<Vec<u64>, BadParams> {
        let v: Vec<u64> = params
            .split(',')
            .map(|p| u64::from_str(p.trim()))
            .collect::<Result<_, _>>()
            .map_err(|_| bad(format!("expected {want} nonnegative integers")))?;
        if v.len() != want {
            return Err(bad(format!(
                "expected {want} parameters, found {}",
                v.len()
            )));
        }
        Ok(v)
    };
    let core = |r: mvlab_core::Result<Polytope>| r.map_err(|e| bad(e.to_string()));
    match kind {
        "simplex" => core(generate::simplex(ints(1)?[0] as usize)),
        "cube" => core(generate::cube(ints(1)?[0] as usize)),
        "cross_polytope" => core(generate::cross_polytope(ints(1)?[0] as usize)),
        "random_hull" => {
            let p = ints(3)?;
            core(generate::random_hull(p[0] as usize, p[1] as usize, p[2]))
        }
        "regular_polygon" => {
            let p = ints(2)?;
            core(generate::regular_polygon(p[0] as usize, p[1]))
        }
        "ball_approx_3d" => {
            let p = ints(2)?;
            core(generate::ball_approx_3d(p[0] as usize, p[1]))
        }
        "truncated_simplex" => {
            let (n, eps) = params
                .split_once(',')
                .ok_or_else(|| bad("expected n,eps".into()))?;
            let n = n.trim().parse().map_err(|_| bad("bad dimension".into()))?;
            let eps = parse_rational(eps).ok_or_else(|| bad("bad eps".into()))?;
            core(generate::truncated_simplex(n, &eps))
        }
        "prism" => {
            let (base, h) = params
                .rsplit_once(';')
                .ok_or_else(|| bad("expected BASE;HEIGHT".into()))?;
            let base = generate(base).map_err(|e| bad(e.to_string()))?;
            let h = parse_rational(h).ok_or_else(|| bad("bad height".into()))?;
            core(generate::prism(&base, &h))
        }
        "segment" => {
            let v = parse_rational_list(params).ok_or_else(|| bad("bad coordinates".into()))?;
            if v.iter().all(num_traits::Zero::is_zero) {
                return Err(bad("segment direction must be nonzero".into()));
            }
            core(Polytope::segment_from_origin(v))
        }
        _ => Err(bad(format!("unknown kind `{kind}`"))),
    }
}
