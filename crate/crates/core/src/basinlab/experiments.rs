//! Seeded experiments. Each returns a report; sampling problems are recorded
//! as failed cases.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CaseResult, ExperimentReport, Failure};
use super::sampler::{
    fresh_rational, origin_substitutions, random_composition, random_staircase, sample_axis,
    sample_origin, sample_points, satisfies_support, trial_rng, SupportConstraint,
};
use crate::error::{Error, Result};
use crate::groebner::{
    intersect_comaximal, monomial_ideal, staircase_of, tall_point_ideal, torus_limit,
    vanishing_ideal, Ideal, Polynomial, Rational, Weight,
};
use crate::orders::{
    build_poset, check_certificate, dominance, et_row_grouping, find_certificate, incidence_filter,
    leq_et, leq_punc, leq_punc_via_splitting, Order,
};
use crate::staircase::{enumerate, Direction, StandardSet};

/// Substitutions applied per sampled factor.
const SUBSTITUTIONS: usize = 2;
const MAX_REJECTIONS: usize = 64;

fn require_positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn run_trials<F>(name: &str, trials: usize, seed: u64, case: F) -> ExperimentReport
where
    F: Fn(usize, &mut ChaCha8Rng) -> CaseResult + Sync,
{
    let cases: Vec<CaseResult> = (0..trials)
        .into_par_iter()
        .map(|t| case(t, &mut trial_rng(seed, t as u64)))
        .collect();
    ExperimentReport::from_cases(name, seed, cases)
}

fn fail(description: String, expected: &StandardSet, observed: &StandardSet) -> Failure {
    Failure {
        description,
        expected: expected.clone(),
        observed: observed.clone(),
    }
}

fn error_case(description: String, expected: &StandardSet, err: Error) -> Failure {
    fail(
        format!("{description}: {err}"),
        expected,
        &StandardSet::empty(),
    )
}

fn check_staircase(description: String, i: &Ideal, expected: &StandardSet) -> CaseResult {
    match staircase_of(i) {
        Ok(s) if &s == expected => Ok(()),
        Ok(s) => Err(fail(description, expected, &s)),
        Err(e) => Err(error_case(description, expected, e)),
    }
}

fn labels(parts: &[StandardSet]) -> String {
    parts
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Random staircases whose sizes form a random composition of a random
/// total in `1..=n_max`; at least two parts when the total allows it.
fn random_factors(n_max: u32, rng: &mut ChaCha8Rng) -> Vec<StandardSet> {
    let n = rng.gen_range(1..=n_max);
    let mut sizes = random_composition(n, rng);
    if sizes.len() == 1 && n > 1 {
        let cut = rng.gen_range(1..n);
        sizes = vec![cut, n - cut];
    }
    sizes
        .into_iter()
        .map(|k| random_staircase(k, rng))
        .collect()
}

/// Ideals on `V(x2)` with distinct supports: each factor is a punctual
/// sample moved to its own abscissa. Their intersection has staircase
/// `Σ_1` of the factors.
pub fn run_prop1(trials: usize, n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("trials", trials)?;
    require_positive("n_max", n_max as usize)?;
    Ok(run_trials("prop1", trials, seed, |t, rng| {
        let deltas = random_factors(n_max, rng);
        let expected = StandardSet::c4_sum_all(&deltas, Direction::First);
        let description = format!("trial {t}: {}", labels(&deltas));
        let mut used = Vec::new();
        let mut factors = Vec::new();
        for d in &deltas {
            match sample_origin(d, SUBSTITUTIONS, MAX_REJECTIONS, rng) {
                Ok(i) => {
                    let a = fresh_rational(rng, &mut used);
                    factors.push(i.translate(&a, &Rational::zero()));
                }
                Err(e) => return Err(error_case(description, &expected, e)),
            }
        }
        match intersect_comaximal(&factors) {
            Ok(i) => check_staircase(description, &i, &expected),
            Err(e) => Err(error_case(description, &expected, e)),
        }
    }))
}

/// Ideals on distinct lines `V(x2 - λ_j)`; the intersection has staircase
/// `Σ_2` of the factors.
pub fn run_prop2(trials: usize, n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("trials", trials)?;
    require_positive("n_max", n_max as usize)?;
    Ok(run_trials("prop2", trials, seed, |t, rng| {
        let deltas = random_factors(n_max, rng);
        let expected = StandardSet::c4_sum_all(&deltas, Direction::Second);
        let description = format!("trial {t}: {}", labels(&deltas));
        let mut lines = Vec::new();
        let mut factors = Vec::new();
        for d in &deltas {
            let lambda = fresh_rational(rng, &mut lines);
            match sample_axis(d, SUBSTITUTIONS, MAX_REJECTIONS, &mut Vec::new(), rng) {
                Ok(i) => factors.push(i.translate(&Rational::zero(), &lambda)),
                Err(e) => return Err(error_case(description, &expected, e)),
            }
        }
        match intersect_comaximal(&factors) {
            Ok(i) => check_staircase(description, &i, &expected),
            Err(e) => Err(error_case(description, &expected, e)),
        }
    }))
}

/// For ideals on `V(x2)`, every reduced basis element with leading
/// exponent `α` is divisible by `x2^α2`.
pub fn run_divisibility(trials: usize, n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("trials", trials)?;
    require_positive("n_max", n_max as usize)?;
    Ok(run_trials("divisibility", trials, seed, |t, rng| {
        let n = rng.gen_range(1..=n_max);
        let delta = random_staircase(n, rng);
        let description = format!("trial {t}: {delta}");
        let i = sample_axis(&delta, SUBSTITUTIONS, MAX_REJECTIONS, &mut Vec::new(), rng)
            .map_err(|e| error_case(description.clone(), &delta, e))?;
        let gb = i.groebner();
        for f in gb.elements() {
            let alpha = f.leading_exponent().expect("nonzero");
            if !f.divisible_by_x2_power(alpha.a2) {
                let observed = gb.staircase().cloned().unwrap_or_default();
                return Err(fail(
                    format!(
                        "{description}: element `{f}` not divisible by x2^{}",
                        alpha.a2
                    ),
                    &delta,
                    &observed,
                ));
            }
        }
        check_staircase(description, &i, &delta)
    }))
}

/// Points on lines following `rows(a)`, with the lines of each group of
/// an ét witness merged into one line. The merged points must realize `b`.
pub fn et_closure_case(a: &StandardSet, b: &StandardSet, rng: &mut ChaCha8Rng) -> CaseResult {
    let description = format!("{a} -> {b}");
    let Some(groups) = et_row_grouping(a, b) else {
        return Err(fail(format!("{description}: not an ét pair"), b, a));
    };
    let mut ordinates = Vec::new();
    let mut before = Vec::new();
    let mut after = Vec::new();
    for group in &groups {
        let merged = fresh_rational(rng, &mut ordinates);
        let mut abscissas = Vec::new();
        for (k, &r) in group.iter().enumerate() {
            let own = if k == 0 {
                merged.clone()
            } else {
                fresh_rational(rng, &mut ordinates)
            };
            for _ in 0..r {
                let x = fresh_rational(rng, &mut abscissas);
                before.push((x.clone(), own.clone()));
                after.push((x, merged.clone()));
            }
        }
    }
    let ideal = |pts: &[(Rational, Rational)]| {
        vanishing_ideal(pts).map_err(|e| error_case(description.clone(), b, e))
    };
    check_staircase(format!("{description} (before merge)"), &ideal(&before)?, a)?;
    check_staircase(description.clone(), &ideal(&after)?, b)
}

pub fn run_et_closure(a: &StandardSet, b: &StandardSet, seed: u64) -> Result<ExperimentReport> {
    if !leq_et(a, b) {
        return Err(Error::InvalidArgument(format!("{a} is not <=_et {b}")));
    }
    let case = et_closure_case(a, b, &mut trial_rng(seed, 0));
    Ok(ExperimentReport::from_cases("et-closure", seed, vec![case]))
}

/// `et_closure_case` on every cover pair of the ét poset for `n <= n_max`.
pub fn run_et_closure_covers(n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("n_max", n_max as usize)?;
    let mut pairs = Vec::new();
    for n in 1..=n_max {
        let poset = build_poset(n, Order::Etale);
        for &(i, j) in &poset.covers {
            pairs.push((poset.elements[i].clone(), poset.elements[j].clone()));
        }
    }
    let cases: Vec<CaseResult> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (a, b))| et_closure_case(a, b, &mut trial_rng(seed, k as u64)))
        .collect();
    Ok(ExperimentReport::from_cases("et-closure", seed, cases))
}

/// A weight with `0 < n v1 <= v2`.
fn regime_weight(n: u32, rng: &mut ChaCha8Rng) -> Weight {
    let v1 = rng.gen_range(1..=3);
    let low = n as i64 * v1;
    Weight::new(v1, rng.gen_range(low..=low + 4))
}

/// A positive weight separating all monomials `x1^a x2^b` with `a, b < n`.
fn generic_positive_weight(n: u32, rng: &mut ChaCha8Rng) -> Weight {
    let n = n as i64;
    loop {
        let v = Weight::new(rng.gen_range(1..=3 * n), rng.gen_range(1..=3 * n));
        let tie = (0..n).any(|p| (0..n).any(|q| (p, q) != (0, 0) && v.v1 * p == v.v2 * q));
        if !tie {
            return v;
        }
    }
}

fn punctual_limit_case(
    t: usize,
    n_max: u32,
    rng: &mut ChaCha8Rng,
    weight: fn(u32, &mut ChaCha8Rng) -> Weight,
) -> CaseResult {
    let n = rng.gen_range(1..=n_max);
    let delta = random_staircase(n, rng);
    let i = sample_origin(&delta, SUBSTITUTIONS, MAX_REJECTIONS, rng)
        .map_err(|e| error_case(format!("trial {t}: {delta}"), &delta, e))?;
    let conjugations = rng.gen_range(0..=2);
    let i = origin_substitutions(&i, n, conjugations, rng);
    let source = staircase_of(&i).map_err(|e| error_case(format!("trial {t}"), &delta, e))?;
    let v = weight(n, rng);
    let description = format!("trial {t}: {} under v = ({v})", i);
    let limit = torus_limit(&i, v).map_err(|e| error_case(description.clone(), &source, e))?;
    let gb = limit.groebner();
    let observed = gb.staircase().cloned().unwrap_or_default();
    if !gb.elements().iter().all(Polynomial::is_monomial) {
        return Err(fail(
            format!("{description}: limit not monomial"),
            &source,
            &observed,
        ));
    }
    if !satisfies_support(&limit, &SupportConstraint::Origin, n) || !leq_punc(&source, &observed) {
        return Err(fail(description, &source, &observed));
    }
    Ok(())
}

/// Torus limits of punctual ideals, with weights `0 < n v1 <= v2`, stay in
/// strata `>=_punc` the source.
pub fn run_punc_consistency(trials: usize, n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("trials", trials)?;
    require_positive("n_max", n_max as usize)?;
    Ok(run_trials("punc", trials, seed, |t, rng| {
        punctual_limit_case(t, n_max, rng, regime_weight)
    }))
}

/// Same check as `run_punc_consistency` with arbitrary generic positive
/// weights. This probes more of the closure than the weight regime above
/// and is not expected to pass: see `tests/punctual_degenerations.rs`.
pub fn run_punc_generic_weights(trials: usize, n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("trials", trials)?;
    require_positive("n_max", n_max as usize)?;
    Ok(run_trials("punc-generic", trials, seed, |t, rng| {
        punctual_limit_case(t, n_max, rng, generic_positive_weight)
    }))
}

/// `<x1 + c_{n-1} x2^{n-1} + ... + c_1 x2, x2^n>` is a punctual ideal with
/// staircase the column of height `n`.
pub fn run_single_column_density(n: u32, trials: usize, seed: u64) -> Result<ExperimentReport> {
    require_positive("n", n as usize)?;
    require_positive("trials", trials)?;
    let column = StandardSet::single_column(n);
    Ok(run_trials("single-column", trials, seed, |t, rng| {
        let mut coefficients = vec![Rational::zero()];
        coefficients.extend((1..n).map(|_| super::sampler::random_rational(rng)));
        let i = tall_point_ideal(n, &coefficients).expect("valid tall point");
        let description = format!("trial {t}: {}", i);
        check_staircase(description.clone(), &i, &column)?;
        if !satisfies_support(&i, &SupportConstraint::Origin, n) {
            return Err(fail(
                format!("{description}: not punctual"),
                &column,
                &column,
            ));
        }
        Ok(())
    }))
}

/// Limits under `v = (-(n+1), -1)` recover the lex initial ideal.
pub fn run_torus_calibration(trials: usize, n_max: u32, seed: u64) -> Result<ExperimentReport> {
    require_positive("trials", trials)?;
    require_positive("n_max", n_max as usize)?;
    Ok(run_trials("calibration", trials, seed, |t, rng| {
        let n = rng.gen_range(1..=n_max);
        let delta = random_staircase(n, rng);
        let sampled = match t % 4 {
            0 => sample_origin(&delta, SUBSTITUTIONS, MAX_REJECTIONS, rng),
            1 => sample_axis(&delta, SUBSTITUTIONS, MAX_REJECTIONS, &mut Vec::new(), rng),
            2 => {
                let lambda = super::sampler::random_rational(rng);
                sample_axis(&delta, SUBSTITUTIONS, MAX_REJECTIONS, &mut Vec::new(), rng)
                    .map(|i| i.translate(&Rational::zero(), &lambda))
            }
            _ => sample_points(&delta, MAX_REJECTIONS, rng).map(|(i, _)| i),
        };
        let v = Weight::new(-(n as i64 + 1), -1);
        let description = format!("trial {t}: {delta}");
        let i = sampled.map_err(|e| error_case(description.clone(), &delta, e))?;
        let limit = torus_limit(&i, v).map_err(|e| error_case(description.clone(), &delta, e))?;
        if limit != monomial_ideal(&delta).reduced() {
            let observed = staircase_of(&limit).unwrap_or_default();
            return Err(fail(
                format!("{description}: limit {limit}"),
                &delta,
                &observed,
            ));
        }
        Ok(())
    }))
}

/// All ordered pairs of staircases of each size `1..=n_max`.
fn all_pairs(n_max: u32) -> Vec<(StandardSet, StandardSet)> {
    let mut pairs = Vec::new();
    for n in 1..=n_max {
        let st = enumerate(n);
        for a in &st {
            for b in &st {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

fn run_pairs<F>(name: &str, n_max: u32, check: F) -> Result<ExperimentReport>
where
    F: Fn(&StandardSet, &StandardSet) -> Option<String> + Sync,
{
    require_positive("n_max", n_max as usize)?;
    let cases: Vec<CaseResult> = all_pairs(n_max)
        .par_iter()
        .map(|(a, b)| match check(a, b) {
            None => Ok(()),
            Some(msg) => Err(fail(msg, a, b)),
        })
        .collect();
    Ok(ExperimentReport::from_cases(name, 0, cases))
}

/// `a <=_punc b` iff `bᵗ <=_et aᵗ`.
pub fn run_duality(n_max: u32) -> Result<ExperimentReport> {
    run_pairs("duality", n_max, |a, b| {
        let lhs = leq_punc(a, b);
        let rhs = leq_et(&b.transpose(), &a.transpose());
        (lhs != rhs).then(|| format!("punc {lhs}, et of transposes {rhs}"))
    })
}

/// Both orders refine dominance.
pub fn run_refinement(n_max: u32) -> Result<ExperimentReport> {
    run_pairs("refinement", n_max, |a, b| {
        let dom = dominance(a, b);
        if leq_et(a, b) && !dom {
            Some("et without dominance".into())
        } else if leq_punc(a, b) && !dom {
            Some("punc without dominance".into())
        } else {
            None
        }
    })
}

/// The splitting procedure agrees with `leq_punc`.
pub fn run_splitting(n_max: u32) -> Result<ExperimentReport> {
    run_pairs("splitting", n_max, |a, b| {
        let (direct, via) = (leq_punc(a, b), leq_punc_via_splitting(a, b));
        (direct != via).then(|| format!("leq_punc {direct}, splitting {via}"))
    })
}

/// Every certificate found is valid and implies the incidence filter.
pub fn run_certificates(n_max: u32) -> Result<ExperimentReport> {
    run_pairs("certificates", n_max, |a, b| {
        let cert = find_certificate(a, b, n_max)?;
        match check_certificate(&cert, a, b) {
            Ok(true) if incidence_filter(a, b) => None,
            Ok(true) => Some("certificate without incidence filter".into()),
            Ok(false) => Some("certificate rejected".into()),
            Err(e) => Some(format!("certificate malformed: {e}")),
        }
    })
}
