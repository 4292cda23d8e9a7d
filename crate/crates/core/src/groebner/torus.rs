//! One-parameter torus actions `t.x^α = t^<α,v> x^α` and their limits.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::basis::{groebner_basis, MonomialOrder, Truncation};
use super::ideal::{staircase_of, Ideal};
use super::poly::{Polynomial, Rational, Term};
use crate::error::{Error, Result};
use crate::staircase::LatticePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub v1: i64,
    pub v2: i64,
}

impl Weight {
    pub const fn new(v1: i64, v2: i64) -> Self {
        Weight { v1, v2 }
    }

    /// `<α, v>`.
    pub fn pair(self, e: LatticePoint) -> i64 {
        self.v1 * e.a1 as i64 + self.v2 * e.a2 as i64
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.v1, self.v2)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `v1,v2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected weight `v1,v2`, got `{s}`"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let v1 = a.trim().parse().map_err(|_| bad())?;
        let v2 = b.trim().parse().map_err(|_| bad())?;
        Ok(Weight { v1, v2 })
    }
}

/// Multiplies the coefficient of each `x^α` by `t^<α,v>`.
pub fn torus_scale(f: &Polynomial, t: &Rational, v: Weight) -> Result<Polynomial> {
    if t.is_zero() {
        return Err(Error::ZeroTorusParameter);
    }
    let terms = f.terms().iter().map(|term| {
        let k = v.pair(term.exponent);
        let k = i32::try_from(k).expect("weight exponent fits in i32");
        (term.exponent, &term.coefficient * t.pow(k))
    });
    Ok(Polynomial::from_terms(terms))
}

/// Sum of the terms of `f` with smallest `<α,v>`.
pub fn initial_form(f: &Polynomial, v: Weight) -> Polynomial {
    let Some(min) = f.terms().iter().map(|t| v.pair(t.exponent)).min() else {
        return Polynomial::zero();
    };
    let kept = f.terms().iter().filter(|t| v.pair(t.exponent) == min).map(
        |Term {
             coefficient,
             exponent,
         }| (*exponent, coefficient.clone()),
    );
    Polynomial::from_terms(kept)
}

/// `lim_{t -> 0} t.I`, returned by its reduced lex basis.
///
/// A positive weight on `x_i` needs `x_i^n` in `I` (`n` the colength);
/// the computation then runs in `S / <x_i^n>`.
pub fn torus_limit(i: &Ideal, v: Weight) -> Result<Ideal> {
    let gb = i.groebner();
    let n = gb.staircase()?.cardinality();
    let mut truncation = Truncation::default();
    for (weight, e, slot) in [
        (v.v1, LatticePoint::new(n, 0), &mut truncation.x1),
        (v.v2, LatticePoint::new(0, n), &mut truncation.x2),
    ] {
        if weight <= 0 {
            continue;
        }
        let power = Polynomial::power(e);
        if !gb.contains(&power) {
            let mut gens = gb.elements().to_vec();
            gens.push(power);
            let actual = staircase_of(&Ideal::new(gens)?)?.cardinality();
            return Err(Error::LimitDoesNotExist {
                expected: n as usize,
                actual: actual as usize,
            });
        }
        *slot = Some(n);
    }
    let weighted = groebner_basis(gb.elements(), MonomialOrder::Weighted(v), truncation);
    let mut forms: Vec<Polynomial> = weighted.iter().map(|f| initial_form(f, v)).collect();
    forms.extend(truncation.generators());
    let limit = Ideal::new(forms)?.reduced();
    let actual = match limit.groebner().staircase() {
        Ok(s) => s.cardinality() as usize,
        Err(_) => usize::MAX,
    };
    if actual != n as usize {
        return Err(Error::LimitDoesNotExist {
            expected: n as usize,
            actual,
        });
    }
    Ok(limit)
}

/// True iff every generator of the reduced basis is a monomial.
pub fn is_monomial_ideal(i: &Ideal) -> bool {
    i.groebner().elements().iter().all(Polynomial::is_monomial)
}
