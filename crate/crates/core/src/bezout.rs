//! Bezout-inequality gaps and Aleksandrov–Fenchel slack.
//!
//! For `r = 2` the inequality reads
//! `V(L, M, K[n-2]) V_n(K) <= V(L, K[n-1]) V(M, K[n-1])`; the gap is the
//! right side minus the left side, so a negative gap is a violation.

use num_traits::{Signed, Zero};

use crate::mixed::mixed_volume;
use crate::{Error, Polytope, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
}

/// A pair `(L, M)` together with the body `K` and the exact gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub l: Polytope,
    pub m: Polytope,
    pub k: Polytope,
    pub gap: Rational,
    pub verdict: Verdict,
    pub equality: bool,
}

impl BezoutCertificate {
    fn new(l: Polytope, m: Polytope, k: Polytope, gap: Rational) -> Self {
        let verdict = if gap.is_negative() {
            Verdict::Violated
        } else {
            Verdict::Satisfied
        };
        let equality = gap.is_zero();
        Self {
            l,
            m,
            k,
            gap,
            verdict,
            equality,
        }
    }

    /// Recomputes the gap from the stored bodies.
    pub fn recompute(&self) -> Result<Rational> {
        Ok(BezoutEvaluator::new(&self.k)?.gap(&self.l, &self.m))
    }
}

fn check_same_dim(expected: usize, bodies: &[&Polytope]) -> Result<()> {
    match bodies.iter().find(|b| b.dim() != expected) {
        Some(b) => Err(Error::DimensionMismatch {
            expected,
            found: b.dim(),
        }),
        None => Ok(()),
    }
}

/// Gap evaluator for a fixed full-dimensional body `K`.
#[derive(Debug, Clone)]
pub struct BezoutEvaluator<'a> {
    k: &'a Polytope,
    volume: Rational,
}

impl<'a> BezoutEvaluator<'a> {
    pub fn new(k: &'a Polytope) -> Result<Self> {
        if k.dim() < 2 {
            return Err(Error::BadArity("the inequality needs n >= 2".into()));
        }
        if !k.is_full_dimensional() {
            return Err(Error::DegenerateInput {
                expected: k.dim(),
                found: k.affine_dim(),
            });
        }
        Ok(Self {
            k,
            volume: k.volume(),
        })
    }

    pub fn body(&self) -> &Polytope {
        self.k
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    /// `V(L, K[n-1])`.
    pub fn against_body(&self, l: &Polytope) -> Rational {
        let mut bodies = vec![self.k; self.k.dim()];
        bodies[0] = l;
        mixed_volume(&bodies).expect("validated dimensions")
    }

    /// `V(L, M, K[n-2])`.
    pub fn pair(&self, l: &Polytope, m: &Polytope) -> Rational {
        let mut bodies = vec![self.k; self.k.dim()];
        bodies[0] = l;
        bodies[1] = m;
        mixed_volume(&bodies).expect("validated dimensions")
    }

    /// Gap from precomputed `V(L, K[n-1])` and `V(M, K[n-1])`.
    pub fn gap_with(&self, l: &Polytope, m: &Polytope, vl: &Rational, vm: &Rational) -> Rational {
        vl * vm - self.pair(l, m) * &self.volume
    }

    pub fn gap(&self, l: &Polytope, m: &Polytope) -> Rational {
        self.gap_with(l, m, &self.against_body(l), &self.against_body(m))
    }

    pub fn certificate(&self, l: &Polytope, m: &Polytope) -> BezoutCertificate {
        let gap = self.gap(l, m);
        BezoutCertificate::new(l.clone(), m.clone(), self.k.clone(), gap)
    }

    pub(crate) fn certificate_from_gap(
        &self,
        l: &Polytope,
        m: &Polytope,
        gap: Rational,
    ) -> BezoutCertificate {
        BezoutCertificate::new(l.clone(), m.clone(), self.k.clone(), gap)
    }
}

/// The `r = 2` gap `V(L,K[n-1]) V(M,K[n-1]) - V(L,M,K[n-2]) V_n(K)`.
pub fn bezout_gap(l: &Polytope, m: &Polytope, k: &Polytope) -> Result<BezoutCertificate> {
    check_same_dim(k.dim(), &[l, m])?;
    Ok(BezoutEvaluator::new(k)?.certificate(l, m))
}

/// `Π_i V(K_i, Δ[n-1]) - V(K_1, ..., K_r, Δ[n-r]) V_n(Δ)^{r-1}`.
pub fn bezout_gap_general(bodies: &[&Polytope], delta: &Polytope, r: usize) -> Result<Rational> {
    let n = delta.dim();
    if r < 2 || r > n {
        return Err(Error::BadArity(format!("r = {r} outside [2, {n}]")));
    }
    if bodies.len() != r {
        return Err(Error::BadArity(format!(
            "expected {r} bodies, got {}",
            bodies.len()
        )));
    }
    check_same_dim(n, bodies)?;
    let eval = BezoutEvaluator::new(delta)?;
    let rhs: Rational = bodies.iter().map(|b| eval.against_body(b)).product();
    let mut slots: Vec<&Polytope> = bodies.to_vec();
    slots.extend(std::iter::repeat_n(delta, n - r));
    let lhs = mixed_volume(&slots)? * num_traits::pow(eval.volume().clone(), r - 1);
    Ok(rhs - lhs)
}

/// `V(L,M,rest)^2 - V(L,L,rest) V(M,M,rest)`; nonnegative for all inputs.
pub fn af_spot_check(l: &Polytope, m: &Polytope, rest: &[&Polytope]) -> Result<Rational> {
    let n = rest.len() + 2;
    check_same_dim(n, &[l, m])?;
    check_same_dim(n, rest)?;
    let with = |a: &Polytope, b: &Polytope| {
        let mut v = vec![a, b];
        v.extend_from_slice(rest);
        mixed_volume(&v)
    };
    let lm = with(l, m)?;
    Ok(&lm * &lm - with(l, l)? * with(m, m)?)
}
