//! Rejection samplers for ideals in a prescribed lex basin.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    intersect_comaximal, monomial_ideal, staircase_of, vanishing_ideal, Ideal, Polynomial, Rational,
};
use crate::staircase::{enumerate, LatticePoint, StandardSet};

/// Bounds for random rationals `num / den`.
pub const MAX_NUMERATOR: i64 = 20;
pub const MAX_DENOMINATOR: i64 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SupportConstraint {
    /// Supported at the origin only.
    Origin,
    /// Supported on `V(x2)`.
    X1Axis,
    /// Supported on `V(x2 - λ)`.
    HorizontalLine(#[serde(serialize_with = "as_string")] Rational),
    /// Reduced points anywhere.
    Free,
}

fn as_string<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasinSampleSpec {
    pub target: StandardSet,
    pub support: SupportConstraint,
    pub seed: u64,
    pub max_rejections: usize,
    /// Number of random substitutions applied to `M_target`.
    pub substitutions: usize,
}

impl BasinSampleSpec {
    pub fn new(target: StandardSet, support: SupportConstraint, seed: u64) -> Self {
        BasinSampleSpec {
            target,
            support,
            seed,
            max_rejections: 64,
            substitutions: 2,
        }
    }
}

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR);
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A rational not in `used`; it is appended to `used`.
pub fn fresh_rational<R: Rng>(rng: &mut R, used: &mut Vec<Rational>) -> Rational {
    loop {
        let r = random_rational(rng);
        if !used.contains(&r) {
            used.push(r.clone());
            return r;
        }
    }
}

pub fn random_staircase<R: Rng>(n: u32, rng: &mut R) -> StandardSet {
    enumerate(n).choose(rng).cloned().expect("st_n is nonempty")
}

/// Random composition of `n` into positive parts.
pub fn random_composition<R: Rng>(n: u32, rng: &mut R) -> Vec<u32> {
    let mut parts = vec![1];
    for _ in 1..n {
        if rng.gen_bool(0.5) {
            parts.push(1);
        } else {
            *parts.last_mut().expect("nonempty") += 1;
        }
    }
    parts
}

/// Univariate polynomial in `var` (1 or 2) with zero constant term, degree
/// at most `max_degree`; each coefficient is zero with probability 1/2.
fn random_shift<R: Rng>(rng: &mut R, var: u8, max_degree: u32) -> Polynomial {
    let terms = (1..=max_degree).filter_map(|k| {
        if rng.gen_bool(0.5) {
            return None;
        }
        let e = if var == 1 {
            LatticePoint::new(k, 0)
        } else {
            LatticePoint::new(0, k)
        };
        Some((e, random_nonzero_rational(rng)))
    });
    let terms: Vec<_> = terms.collect();
    Polynomial::from_terms(terms)
}

/// Drops all terms of total degree `>= n` and adds the degree-`n` monomials.
/// Valid for ideals of colength `n` supported at the origin.
fn truncate_punctual(generators: Vec<Polynomial>, n: u32) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = generators
        .into_iter()
        .map(|g| {
            Polynomial::from_terms(
                g.terms()
                    .iter()
                    .filter(|t| t.exponent.degree() < n)
                    .map(|t| (t.exponent, t.coefficient.clone())),
            )
        })
        .filter(|g| !g.is_zero())
        .collect();
    out.extend((0..=n).map(|a| Polynomial::power(LatticePoint::new(a, n - a))));
    out
}

/// Applies `count` alternating origin-fixing substitutions
/// `x1 -> x1 + q(x2)` and `x2 -> x2 + r(x1)` to a punctual ideal of
/// colength `n`.
pub fn origin_substitutions<R: Rng>(i: &Ideal, n: u32, count: usize, rng: &mut R) -> Ideal {
    if n == 0 {
        return Ideal::unit();
    }
    let max_degree = (n - 1).min(3);
    let mut gens = i.generators().to_vec();
    for s in 0..count {
        let (p1, p2) = if s % 2 == 0 {
            (
                &Polynomial::x1() + &random_shift(rng, 2, max_degree),
                Polynomial::x2(),
            )
        } else {
            (
                Polynomial::x1(),
                &Polynomial::x2() + &random_shift(rng, 1, max_degree),
            )
        };
        gens = truncate_punctual(gens.iter().map(|g| g.compose(&p1, &p2)).collect(), n);
    }
    Ideal::new(truncate_punctual(gens, n))
        .expect("contains monomials")
        .reduced()
}

/// A punctual ideal in the basin of `target`.
pub fn sample_origin<R: Rng>(
    target: &StandardSet,
    substitutions: usize,
    max_rejections: usize,
    rng: &mut R,
) -> Result<Ideal> {
    let n = target.cardinality();
    let base = monomial_ideal(target);
    for _ in 0..max_rejections.max(1) {
        let i = origin_substitutions(&base, n, substitutions, rng);
        if &staircase_of(&i)? == target {
            return Ok(i);
        }
    }
    Err(sampling_failure(target, max_rejections))
}

fn sampling_failure(target: &StandardSet, attempts: usize) -> Error {
    Error::SamplingFailure {
        target: target.to_string(),
        attempts,
    }
}

/// An ideal in the basin of `target` supported on `V(x2)`: columns are split
/// into groups, each sampled at the origin and moved to its own abscissa
/// (drawn outside `used`).
pub fn sample_axis<R: Rng>(
    target: &StandardSet,
    substitutions: usize,
    max_rejections: usize,
    used: &mut Vec<Rational>,
    rng: &mut R,
) -> Result<Ideal> {
    if target.is_empty() {
        return Ok(Ideal::unit());
    }
    for _ in 0..max_rejections.max(1) {
        let cols = target.cols();
        let k = rng.gen_range(1..=cols.len());
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); k];
        for &h in cols {
            groups[rng.gen_range(0..k)].push(h);
        }
        let mut factors = Vec::new();
        let mut local_used = used.clone();
        let mut failed = false;
        for g in groups.into_iter().filter(|g| !g.is_empty()) {
            let delta = StandardSet::from_columns(g);
            match sample_origin(&delta, substitutions, max_rejections, rng) {
                Ok(i) => {
                    let a = fresh_rational(rng, &mut local_used);
                    factors.push(i.translate(&a, &Rational::zero()));
                }
                Err(_) => {
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            continue;
        }
        let Ok(i) = intersect_comaximal(&factors) else {
            continue;
        };
        if &staircase_of(&i)? == target {
            *used = local_used;
            return Ok(i);
        }
    }
    Err(sampling_failure(target, max_rejections))
}

/// Reduced points realizing `target`: `rows[i]` points on line `x2 = λ_i`.
pub fn sample_points<R: Rng>(
    target: &StandardSet,
    max_rejections: usize,
    rng: &mut R,
) -> Result<(Ideal, Vec<(Rational, Rational)>)> {
    for _ in 0..max_rejections.max(1) {
        let mut ordinates = Vec::new();
        let mut points = Vec::new();
        for r in target.rows() {
            let lambda = fresh_rational(rng, &mut ordinates);
            let mut abscissas = Vec::new();
            for _ in 0..r {
                points.push((fresh_rational(rng, &mut abscissas), lambda.clone()));
            }
        }
        let i = vanishing_ideal(&points)?;
        if &staircase_of(&i)? == target {
            return Ok((i, points));
        }
    }
    Err(sampling_failure(target, max_rejections))
}

pub fn sample_with_rng<R: Rng>(spec: &BasinSampleSpec, rng: &mut R) -> Result<Ideal> {
    if spec.max_rejections == 0 {
        return Err(Error::InvalidArgument(
            "max_rejections must be at least 1".into(),
        ));
    }
    let (target, subs, max) = (&spec.target, spec.substitutions, spec.max_rejections);
    match &spec.support {
        SupportConstraint::Origin => sample_origin(target, subs, max, rng),
        SupportConstraint::X1Axis => sample_axis(target, subs, max, &mut Vec::new(), rng),
        SupportConstraint::HorizontalLine(lambda) => {
            Ok(sample_axis(target, subs, max, &mut Vec::new(), rng)?
                .translate(&Rational::zero(), lambda))
        }
        SupportConstraint::Free => Ok(sample_points(target, max, rng)?.0),
    }
}

pub fn sample_basin_ideal(spec: &BasinSampleSpec) -> Result<Ideal> {
    sample_with_rng(spec, &mut trial_rng(spec.seed, 0))
}

/// Re-checks a support constraint for an ideal of colength `n`:
/// the relevant coordinate powers must lie in the ideal.
pub fn satisfies_support(i: &Ideal, support: &SupportConstraint, n: u32) -> bool {
    let gb = i.groebner();
    let x2_shifted =
        |lambda: &Rational| (&Polynomial::x2() - &Polynomial::constant(lambda.clone())).pow(n);
    match support {
        SupportConstraint::Origin => {
            gb.contains(&Polynomial::x1().pow(n)) && gb.contains(&Polynomial::x2().pow(n))
        }
        SupportConstraint::X1Axis => gb.contains(&Polynomial::x2().pow(n)),
        SupportConstraint::HorizontalLine(lambda) => gb.contains(&x2_shifted(lambda)),
        SupportConstraint::Free => true,
    }
}
