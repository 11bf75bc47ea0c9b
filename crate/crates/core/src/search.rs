//! Deterministic search for pairs `(L, M)` violating the Bezout inequality
//! for a fixed body `K`.
//!
//! Candidate families are tried in a fixed order:
//!
//! 1. segment pairs along edge directions of `K`;
//! 2. pairs of facet moves `(K_{s,j}, K_{t,i})` at half the safe range;
//! 3. `([-v, v], cap cut)` pairs, those with preserved projection and a
//!    support drop first;
//! 4. seeded random bodies.
//!
//! Gaps are evaluated in parallel chunks, but the reported certificate is the
//! first violation in the fixed order, so the result does not depend on
//! scheduling.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bezout::{BezoutCertificate, BezoutEvaluator};
use crate::deform::{cap_cut, moved, projection_preserved, safe_move_range, support_drop_set};
use crate::generate::random_body;
use crate::{linalg, Error, Polytope, PrimitiveNormal, Rational, Result, Vector};

pub const DEFAULT_SEED: u64 = 0x5eed_b52e;
const CHUNK: usize = 16;

/// Candidate bodies and the index pairs `(L, M)` to evaluate, in order.
type Candidates = (Vec<Polytope>, Vec<(usize, usize)>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    EdgeSegments,
    FacetMoves,
    CapCuts,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::EdgeSegments => "edge_segments",
            Family::FacetMoves => "facet_moves",
            Family::CapCuts => "cap_cuts",
            Family::Random => "random",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchHit {
    pub certificate: BezoutCertificate,
    pub family: Family,
    /// Gap evaluations spent, including the violating one.
    pub evaluations: usize,
}

/// [`counterexample_search_seeded`] with [`DEFAULT_SEED`].
pub fn counterexample_search(k: &Polytope, budget: usize) -> Result<SearchHit> {
    counterexample_search_seeded(k, budget, DEFAULT_SEED)
}

/// First violating certificate within `budget` gap evaluations, or
/// `BudgetExhausted`. Exhausting the budget says nothing about whether `K`
/// is a simplex.
pub fn counterexample_search_seeded(k: &Polytope, budget: usize, seed: u64) -> Result<SearchHit> {
    let mut search = Search {
        eval: BezoutEvaluator::new(k)?,
        budget,
        used: 0,
    };
    for family in [Family::EdgeSegments, Family::FacetMoves, Family::CapCuts] {
        if search.used >= budget {
            break;
        }
        let (bodies, pairs) = match family {
            Family::EdgeSegments => edge_segments(k),
            Family::FacetMoves => facet_moves(k)?,
            _ => cap_cuts(k)?,
        };
        if let Some(hit) = search.run(family, &bodies, &pairs) {
            return Ok(hit);
        }
    }
    let n = k.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while search.used < budget {
        let bodies: Vec<Polytope> = (0..2 * CHUNK)
            .map(|_| random_body(&mut rng, n, n + 2))
            .collect();
        let pairs: Vec<(usize, usize)> = (0..CHUNK).map(|i| (2 * i, 2 * i + 1)).collect();
        if let Some(hit) = search.run(Family::Random, &bodies, &pairs) {
            return Ok(hit);
        }
    }
    Err(Error::BudgetExhausted { budget })
}

struct Search<'a> {
    eval: BezoutEvaluator<'a>,
    budget: usize,
    used: usize,
}

impl Search<'_> {
    fn run(
        &mut self,
        family: Family,
        bodies: &[Polytope],
        pairs: &[(usize, usize)],
    ) -> Option<SearchHit> {
        let against: Vec<OnceLock<Rational>> = bodies.iter().map(|_| OnceLock::new()).collect();
        let value = |i: usize| {
            against[i]
                .get_or_init(|| self.eval.against_body(&bodies[i]))
                .clone()
        };
        for chunk in pairs.chunks(CHUNK) {
            let take = chunk.len().min(self.budget - self.used);
            if take == 0 {
                return None;
            }
            let gaps: Vec<Rational> = chunk[..take]
                .par_iter()
                .map(|&(a, b)| {
                    self.eval
                        .gap_with(&bodies[a], &bodies[b], &value(a), &value(b))
                })
                .collect();
            if let Some(pos) = gaps.iter().position(Signed::is_negative) {
                self.used += pos + 1;
                let (a, b) = chunk[pos];
                let certificate =
                    self.eval
                        .certificate_from_gap(&bodies[a], &bodies[b], gaps[pos].clone());
                return Some(SearchHit {
                    certificate,
                    family,
                    evaluations: self.used,
                });
            }
            self.used += take;
        }
        None
    }
}

/// Sign-normalized primitive direction (first nonzero coordinate positive).
fn line_direction(v: &Vector) -> Option<PrimitiveNormal> {
    let z = PrimitiveNormal::from_rational(v).ok()?;
    Some(if z.coords()[z.pivot()].is_negative() {
        -&z
    } else {
        z
    })
}

fn all_pairs(count: usize) -> Vec<(usize, usize)> {
    (0..count)
        .flat_map(|a| (a + 1..count).map(move |b| (a, b)))
        .collect()
}

fn edge_segments(k: &Polytope) -> Candidates {
    let v = k.vertices();
    let dirs: BTreeSet<PrimitiveNormal> = k
        .edges()
        .into_iter()
        .filter_map(|(i, j)| line_direction(&linalg::sub(&v[j], &v[i])))
        .collect();
    let bodies: Vec<Polytope> = dirs
        .iter()
        .map(|d| Polytope::segment_from_origin(d.to_rational()).expect("nonzero direction"))
        .collect();
    let pairs = all_pairs(bodies.len());
    (bodies, pairs)
}

fn facet_moves(k: &Polytope) -> Result<Candidates> {
    let half = Rational::new(1.into(), 2.into());
    let mut bodies = Vec::new();
    for i in 0..k.facets().len() {
        let range = safe_move_range(k, i)?;
        for t in [&range.max * &half, &range.min * &half] {
            bodies.push(moved(k, i, &t)?);
        }
    }
    let pairs = all_pairs(bodies.len());
    Ok((bodies, pairs))
}

fn cap_cuts(k: &Polytope) -> Result<Candidates> {
    let n = k.dim();
    let mut directions: BTreeSet<PrimitiveNormal> = k.facet_normals().into_iter().collect();
    // vertex directions: sum of incident facet normals
    for (vi, _) in k.vertices().iter().enumerate() {
        let sum = k
            .facets()
            .iter()
            .filter(|f| f.vertices.contains(&vi))
            .fold(vec![Rational::zero(); n], |acc, f| {
                linalg::add(&acc, &f.normal.to_rational())
            });
        if let Ok(z) = PrimitiveNormal::from_rational(&sum) {
            directions.insert(z);
        }
    }
    let mut axes: Vec<Vector> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(u8::from(i == j).into()))
                .collect()
        })
        .collect();
    axes.dedup();

    let mut guided = Vec::new();
    let mut rest = Vec::new();
    for z in &directions {
        let width = k.width(z);
        for frac in [8, 4] {
            let eps = &width / Rational::from_integer(frac.into());
            let Ok(m) = cap_cut(k, z, &eps) else { continue };
            let drop = !support_drop_set(k, &m).is_empty();
            let mut vs = vec![z.to_rational()];
            vs.extend(
                axes.iter()
                    .filter(|a| line_direction(a) != Some(z.clone()))
                    .cloned(),
            );
            for v in vs {
                let preserved = projection_preserved(k, &m, &v)?;
                let l = Polytope::symmetric_segment(&v)?;
                if preserved && drop {
                    guided.push((l, m.clone()));
                } else {
                    rest.push((l, m.clone()));
                }
            }
        }
    }
    let mut bodies = Vec::new();
    let mut pairs = Vec::new();
    for (l, m) in guided.into_iter().chain(rest) {
        pairs.push((bodies.len(), bodies.len() + 1));
        bodies.push(l);
        bodies.push(m);
    }
    Ok((bodies, pairs))
}
