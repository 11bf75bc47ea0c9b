//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::Instant;

use mvlab_core::audit::{
    facet_move_linearity_check, lemma_measure_power_identity, simplex_audit, Shape,
};
use mvlab_core::bezout::{af_spot_check, bezout_gap, bezout_gap_general, BezoutEvaluator};
use mvlab_core::deform::{
    cap_cut, move_facet, projection_preserved, safe_move_range, support_drop_set, MoveSpec,
};
use mvlab_core::generate::{
    cross_polytope, cube, prism, random_affine_simplex, random_body, random_full_body, random_hull,
    random_point, regular_polygon, simplex, truncated_simplex,
};
use mvlab_core::mixed::{
    mixed_area_measure, mixed_volume, mixed_volume_by_measure, segment_mixed_volume,
    surface_area_measure,
};
use mvlab_core::search::counterexample_search;
use mvlab_core::{q, qi, vector, Polytope, PrimitiveNormal, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Gap of the 64-gon strict-point experiment, fixed at first computation.
const POLYGON_STRICT_GAP: &str = "-50147947404272050988691846280296952283183124319713450503201/\
     1708015192770678167938512793600142796012432962616734887072050";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seg(v: &[i64]) -> Polytope {
    Polytope::segment_from_origin(vector(v)).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn exact_counterexamples() -> Outcome {
    let sq = cube(2).unwrap();
    let gap = bezout_gap(&seg(&[1, 0]), &seg(&[0, 1]), &sq).unwrap().gap;
    check(gap == q(-1, 4), || format!("square gap {gap}"))?;

    let c = cube(3).unwrap();
    let (e1, e2, e3) = (seg(&[1, 0, 0]), seg(&[0, 1, 0]), seg(&[0, 0, 1]));
    let gap = bezout_gap(&e1, &e2, &c).unwrap().gap;
    check(gap == q(-1, 18), || format!("cube gap {gap}"))?;
    let gap3 = bezout_gap_general(&[&e1, &e2, &e3], &c, 3).unwrap();
    check(gap3 == q(-7, 54), || format!("cube r=3 gap {gap3}"))?;

    // both mixed-volume algorithms on every term
    for (bodies, k) in [
        (vec![&e1, &e2], &c),
        (vec![&e1, &e1], &c),
        (vec![&e1, &e2, &e3], &c),
    ] {
        let mut slots = bodies.clone();
        slots.extend(std::iter::repeat_n(k, 3 - bodies.len()));
        let a = mixed_volume(&slots).unwrap();
        let b = mixed_volume_by_measure(&slots).unwrap();
        check(a == b, || format!("algorithms disagree: {a} vs {b}"))?;
    }
    Ok("square -1/4, cube -1/18, cube r=3 -7/54".into())
}

fn simplex_satisfaction() -> Outcome {
    let mut pairs = 0;
    let mut tuples = 0;
    for n in 2..=4 {
        let mut r = rng(100 + n as u64);
        let mut simplices = vec![simplex(n).unwrap()];
        simplices.extend((0..20).map(|_| random_affine_simplex(&mut r, n)));
        let per_simplex = 200usize.div_ceil(simplices.len());
        let tuple_reps = 50usize.div_ceil(simplices.len());
        let seeds: Vec<u64> = (0..simplices.len()).map(|_| r.gen()).collect();
        let results: Vec<Result<(usize, usize), String>> = simplices
            .par_iter()
            .zip(seeds)
            .map(|(k, seed)| {
                let mut r = rng(seed);
                let eval = BezoutEvaluator::new(k).unwrap();
                let gap = eval.gap(k, k);
                check(gap.is_zero(), || format!("L=M=K gap {gap} for n={n}"))?;
                let other = random_full_body(&mut r, n, n + 3);
                let gap = eval.gap(k, &other);
                check(gap.is_zero(), || format!("L=K gap {gap} for n={n}"))?;
                let mut count = (0, 0);
                for _ in 0..per_simplex {
                    let l = random_body(&mut r, n, n + 2);
                    let m = random_body(&mut r, n, n + 2);
                    let gap = eval.gap(&l, &m);
                    check(!gap.is_negative(), || format!("negative gap {gap} n={n}"))?;
                    count.0 += 1;
                }
                for rr in 1..=n {
                    for _ in 0..tuple_reps {
                        let bodies: Vec<Polytope> =
                            (0..rr).map(|_| random_body(&mut r, n, n + 1)).collect();
                        let refs: Vec<&Polytope> = bodies.iter().collect();
                        let gap = if rr == 1 {
                            Rational::zero()
                        } else {
                            bezout_gap_general(&refs, k, rr).unwrap()
                        };
                        check(!gap.is_negative(), || format!("r={rr} gap {gap} n={n}"))?;
                        count.1 += 1;
                    }
                }
                Ok(count)
            })
            .collect();
        let (p, t) = results
            .into_iter()
            .try_fold((0, 0), |acc, res| res.map(|(p, t)| (acc.0 + p, acc.1 + t)))?;
        check(p >= 200 && t >= 50 * (n - 1), || {
            format!("too few samples for n={n}")
        })?;
        pairs += p;
        tuples += t;
    }
    Ok(format!(
        "{pairs} (L,M) pairs and {tuples} r-tuples over 63 simplices"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=3 {
        let agree: Vec<Result<(), String>> = (0..100u64)
            .into_par_iter()
            .map(|i| {
                let mut r = rng(1000 * n as u64 + i);
                let bodies: Vec<Polytope> = (0..n).map(|_| random_body(&mut r, n, n + 3)).collect();
                let refs: Vec<&Polytope> = bodies.iter().collect();
                let a = mixed_volume(&refs).unwrap();
                let b = mixed_volume_by_measure(&refs).unwrap();
                check(a == b, || format!("n={n} instance {i}: {a} vs {b}"))
            })
            .collect();
        agree.into_iter().collect::<Result<(), _>>()?;
        counts.push(100);
    }
    let segs: Vec<Result<(), String>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(5000 + i);
            let n = 2 + (i % 2) as usize;
            let v = loop {
                let v = random_point(&mut r, n, 3);
                if !v.iter().all(Zero::is_zero) {
                    break v;
                }
            };
            let bodies: Vec<Polytope> = (1..n).map(|_| random_body(&mut r, n, n + 3)).collect();
            let refs: Vec<&Polytope> = bodies.iter().collect();
            let a = segment_mixed_volume(&v, &refs).unwrap();
            let s = Polytope::segment_from_origin(v).unwrap();
            let mut slots = vec![&s];
            slots.extend(refs);
            let b = mixed_volume(&slots).unwrap();
            check(a == b, || format!("segment instance {i}: {a} vs {b}"))
        })
        .collect();
    segs.into_iter().collect::<Result<(), _>>()?;
    Ok("100 tuples in n=2, 100 in n=3, 100 segment reductions".into())
}

fn measure_power_identity() -> Outcome {
    let mut checked = 0;
    for n in 2..=4 {
        let k = simplex(n).unwrap();
        for i in 0..k.facets().len() {
            let range = safe_move_range(&k, i).unwrap();
            let ts = [&range.max / qi(2), &range.max / qi(4), &range.min / qi(2)];
            for t in ts {
                for r in 0..n {
                    let rep =
                        lemma_measure_power_identity(&k, &MoveSpec::new(i, t.clone()), r).unwrap();
                    check(rep.holds, || {
                        format!("n={n} facet {i} t={t} r={r}: residual {:?}", rep.residual)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    let sq = cube(2).unwrap();
    let top = sq
        .facet_index(&PrimitiveNormal::from_i64(&[0, 1]).unwrap())
        .unwrap();
    let rep = lemma_measure_power_identity(&sq, &MoveSpec::new(top, q(1, 2)), 1).unwrap();
    let e1 = PrimitiveNormal::from_i64(&[1, 0]).unwrap();
    let e2 = PrimitiveNormal::from_i64(&[0, 1]).unwrap();
    check(!rep.holds, || "square identity unexpectedly holds".into())?;
    let residual: Vec<_> = rep
        .residual
        .atoms()
        .map(|(z, w)| (z.clone(), w.clone()))
        .collect();
    check(
        residual
            == vec![
                (-&e1, q(1, 4)),
                (-&e2, q(-1, 4)),
                (e2.clone(), q(-1, 4)),
                (e1, q(1, 4)),
            ],
        || format!("square residual {residual:?}"),
    )?;
    Ok(format!(
        "{checked} simplex cases exact; square residual 1/4 at ±e1, -1/4 at ±e2"
    ))
}

fn support_stability() -> Outcome {
    let mut bodies = Vec::new();
    for n in 2..=3 {
        bodies.push(simplex(n).unwrap());
        bodies.push(cube(n).unwrap());
        for seed in 0..5 {
            bodies.push(random_hull(n, n + 4, 40 + seed).unwrap());
        }
    }
    let results: Vec<Result<usize, String>> = bodies
        .par_iter()
        .map(|k| {
            let n = k.dim();
            let base = surface_area_measure(k);
            let mut count = 0;
            for i in 0..k.facets().len() {
                let range = safe_move_range(k, i).unwrap();
                for t in [&range.max / qi(2), &range.max / qi(5), &range.min / qi(2)] {
                    let kt = move_facet(k, &MoveSpec::new(i, t.clone())).unwrap();
                    for r in 0..n {
                        let mut slots = vec![&kt; r];
                        slots.extend(std::iter::repeat_n(k, n - 1 - r));
                        let m = mixed_area_measure(&slots).unwrap();
                        check(m.same_support(&base), || {
                            format!("support changed: n={n} facet {i} t={t} r={r}")
                        })?;
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect();
    let total: usize = results.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!(
        "{total} measure supports on {} bodies",
        bodies.len()
    ))
}

fn simplex_audit_suite() -> Outcome {
    let mut simplices: Vec<(String, Polytope)> = (2..=4)
        .map(|n| (format!("simplex({n})"), simplex(n).unwrap()))
        .collect();
    let mut others: Vec<(String, Polytope)> = Vec::new();
    for n in 2..=3 {
        others.push((format!("cube({n})"), cube(n).unwrap()));
        others.push((format!("cross_polytope({n})"), cross_polytope(n).unwrap()));
        others.push((
            format!("truncated_simplex({n})"),
            truncated_simplex(n, &q(1, 4)).unwrap(),
        ));
    }
    others.push(("prism".into(), prism(&simplex(2).unwrap(), &qi(1)).unwrap()));
    let mut seed = 0;
    let mut random = 0;
    while random < 20 {
        let n = 2 + random % 2;
        let k = random_hull(n, n + 4, seed).unwrap();
        seed += 1;
        if k.vertices().len() > n + 1 {
            others.push((format!("random_hull({n},{},{})", n + 4, seed - 1), k));
            random += 1;
        }
    }
    simplices.retain(|(_, k)| k.vertices().len() == k.dim() + 1);
    for (name, k) in &simplices {
        let rep = simplex_audit(k).unwrap();
        check(rep.verdict == Shape::Simplex && rep.consistent, || {
            format!("{name} not classified as simplex")
        })?;
    }
    let results: Vec<Result<usize, String>> = others
        .par_iter()
        .map(|(name, k)| {
            let rep = simplex_audit(k).unwrap();
            check(rep.verdict == Shape::NonSimplex && rep.consistent, || {
                format!("{name} not classified as non-simplex")
            })?;
            let hit = counterexample_search(k, 10_000)
                .map_err(|e| format!("{name}: search failed: {e}"))?;
            let recomputed = hit.certificate.recompute().unwrap();
            check(
                hit.certificate.gap.is_negative() && recomputed == hit.certificate.gap,
                || format!("{name}: bad certificate"),
            )?;
            Ok(hit.evaluations)
        })
        .collect();
    let evals: Vec<usize> = results.into_iter().collect::<Result<_, _>>()?;
    Ok(format!(
        "3 simplices, {} non-simplices certified (max {} evaluations)",
        others.len(),
        evals.iter().max().unwrap()
    ))
}

fn strict_point_mechanism() -> Outcome {
    let disk = regular_polygon(64, 1_000_000).unwrap();
    let e1 = PrimitiveNormal::from_i64(&[1, 0]).unwrap();
    check(disk.vertices().contains(&vector(&[1, 0])), || {
        "no vertex at e1".into()
    })?;
    let capped = cap_cut(&disk, &e1, &q(1, 10)).unwrap();
    let v = e1.to_rational();
    let preserved = projection_preserved(&disk, &capped, &v).unwrap();
    let drop = support_drop_set(&disk, &capped);
    let l = Polytope::symmetric_segment(&v).unwrap();
    let gap = bezout_gap(&l, &capped, &disk).unwrap().gap;
    check(preserved, || "64-gon projection not preserved".into())?;
    check(drop.len() >= 2, || format!("64-gon drop set {drop:?}"))?;
    check(gap.is_negative(), || format!("64-gon gap {gap}"))?;
    let frozen: Rational = POLYGON_STRICT_GAP.parse().unwrap();
    check(gap == frozen, || {
        format!("64-gon gap {gap} differs from {frozen}")
    })?;

    let sq = cube(2).unwrap();
    let diag = PrimitiveNormal::from_i64(&[1, 1]).unwrap();
    let pent = cap_cut(&sq, &diag, &q(1, 2)).unwrap();
    let v = diag.to_rational();
    check(projection_preserved(&sq, &pent, &v).unwrap(), || {
        "square projection".into()
    })?;
    check(support_drop_set(&sq, &pent).is_empty(), || {
        "square drop set nonempty".into()
    })?;
    let l = Polytope::symmetric_segment(&v).unwrap();
    let sq_gap = bezout_gap(&l, &pent, &sq).unwrap().gap;
    check(sq_gap.is_zero(), || format!("square gap {sq_gap}"))?;
    Ok(format!(
        "64-gon drops {} facets, gap {gap}; square gap 0",
        drop.len()
    ))
}

fn af_and_linearity() -> Outcome {
    let af: Vec<Result<(), String>> = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(9000 + i);
            let n = 2 + (i % 2) as usize;
            let bodies: Vec<Polytope> = (0..n).map(|_| random_body(&mut r, n, n + 3)).collect();
            let rest: Vec<&Polytope> = bodies[2..].iter().collect();
            let slack = af_spot_check(&bodies[0], &bodies[1], &rest).unwrap();
            check(!slack.is_negative(), || {
                format!("AF slack {slack} at instance {i}")
            })
        })
        .collect();
    af.into_iter().collect::<Result<(), _>>()?;

    let lin: Vec<Result<(), String>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(12_000 + i);
            let n = 2 + (i % 2) as usize;
            let k = match i % 4 {
                0 => cube(n).unwrap(),
                1 => simplex(n).unwrap(),
                _ => random_hull(n, n + 3, i).unwrap(),
            };
            let f = k.facets().len();
            // P: K with one facet moved, then scaled; same normals as K
            let j = r.gen_range(0..f);
            let rj = safe_move_range(&k, j).unwrap();
            let p = move_facet(&k, &MoveSpec::new(j, &rj.max / qi(3)))
                .unwrap()
                .scale(&q(r.gen_range(1..4), r.gen_range(1..4)));
            let i_f = r.gen_range(0..f);
            let ri = safe_move_range(&k, i_f).unwrap();
            let t = if r.gen() {
                &ri.max / qi(2)
            } else {
                &ri.min / qi(3)
            };
            let res = facet_move_linearity_check(&k, &p, i_f, &t).unwrap();
            check(res.is_zero(), || {
                format!("linearity residual {res} at instance {i}")
            })
        })
        .collect();
    lin.into_iter().collect::<Result<(), _>>()?;
    Ok("500 AF slacks nonnegative, 100 linearity residuals zero".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("exact counterexamples", exact_counterexamples),
        ("simplex satisfaction", simplex_satisfaction),
        ("oracle equivalence", oracle_equivalence),
        ("measure power identity", measure_power_identity),
        ("support stability", support_stability),
        ("simplex audit", simplex_audit_suite),
        ("strict-point mechanism", strict_point_mechanism),
        ("Aleksandrov-Fenchel and linearity", af_and_linearity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
