//! Bivariate polynomials over Q with terms kept in lex order (x1 > x2).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::staircase::LatticePoint;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: Rational,
    pub exponent: LatticePoint,
}

/// Terms strictly decreasing in lex order, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(c, LatticePoint::ORIGIN)
    }

    pub fn monomial(c: Rational, exponent: LatticePoint) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: vec![Term {
                coefficient: c,
                exponent,
            }],
        }
    }

    pub fn x1() -> Self {
        Polynomial::monomial(Rational::one(), LatticePoint::new(1, 0))
    }

    pub fn x2() -> Self {
        Polynomial::monomial(Rational::one(), LatticePoint::new(0, 1))
    }

    /// Monic monomial `x^exponent`.
    pub fn power(exponent: LatticePoint) -> Self {
        Polynomial::monomial(Rational::one(), exponent)
    }

    /// Collects arbitrary (exponent, coefficient) pairs, summing duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (LatticePoint, Rational)>,
    {
        let mut acc: BTreeMap<LatticePoint, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Polynomial::from_sorted_map(acc)
    }

    fn from_sorted_map(map: BTreeMap<LatticePoint, Rational>) -> Self {
        Polynomial {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exponent, coefficient)| Term {
                    coefficient,
                    exponent,
                })
                .collect(),
        }
    }

    /// Univariate polynomial in `x2` with coefficients `coeffs[b]` of `x2^b`.
    pub fn in_x2(coeffs: &[Rational]) -> Self {
        Polynomial::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(b, c)| (LatticePoint::new(0, b as u32), c.clone())),
        )
    }

    /// Univariate polynomial in `x1` with coefficients `coeffs[a]` of `x1^a`.
    pub fn in_x1(coeffs: &[Rational]) -> Self {
        Polynomial::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(a, c)| (LatticePoint::new(a as u32, 0), c.clone())),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_exponent(&self) -> Option<LatticePoint> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn coefficient(&self, exponent: LatticePoint) -> Rational {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map_or_else(Rational::zero, |t| t.coefficient.clone())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: &t.coefficient * c,
                    exponent: t.exponent,
                })
                .collect(),
        }
    }

    /// Multiplication by `c * x^e`; lex order is preserved.
    pub fn mul_term(&self, c: &Rational, e: LatticePoint) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: &t.coefficient * c,
                    exponent: LatticePoint::new(t.exponent.a1 + e.a1, t.exponent.a2 + e.a2),
                })
                .collect(),
        }
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some(t) => self.scale(&t.coefficient.recip()),
            None => Polynomial::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x1 -> p1`, `x2 -> p2`.
    pub fn compose(&self, p1: &Polynomial, p2: &Polynomial) -> Polynomial {
        let mut pow1: Vec<Polynomial> = vec![Polynomial::one()];
        let mut pow2: Vec<Polynomial> = vec![Polynomial::one()];
        let mut acc = Polynomial::zero();
        for t in &self.terms {
            while pow1.len() <= t.exponent.a1 as usize {
                let next = pow1.last().expect("nonempty") * p1;
                pow1.push(next);
            }
            while pow2.len() <= t.exponent.a2 as usize {
                let next = pow2.last().expect("nonempty") * p2;
                pow2.push(next);
            }
            let m = &pow1[t.exponent.a1 as usize] * &pow2[t.exponent.a2 as usize];
            acc = &acc + &m.scale(&t.coefficient);
        }
        acc
    }

    /// Translates the zero set by `(a, b)`: `f(x1 - a, x2 - b)`.
    pub fn translate(&self, a: &Rational, b: &Rational) -> Polynomial {
        let p1 = &Polynomial::x1() - &Polynomial::constant(a.clone());
        let p2 = &Polynomial::x2() - &Polynomial::constant(b.clone());
        self.compose(&p1, &p2)
    }

    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, t| {
            acc + &t.coefficient
                * num_traits::pow(x1.clone(), t.exponent.a1 as usize)
                * num_traits::pow(x2.clone(), t.exponent.a2 as usize)
        })
    }

    /// True iff `x2^k` divides every term.
    pub fn divisible_by_x2_power(&self, k: u32) -> bool {
        self.terms.iter().all(|t| t.exponent.a2 >= k)
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (s, o) = (&self.terms[i], &other.terms[j]);
            match s.exponent.cmp(&o.exponent) {
                std::cmp::Ordering::Greater => {
                    out.push(s.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(Term {
                        coefficient: sign(&o.coefficient),
                        exponent: o.exponent,
                    });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &s.coefficient + sign(&o.coefficient);
                    if !c.is_zero() {
                        out.push(Term {
                            coefficient: c,
                            exponent: s.exponent,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|o| Term {
            coefficient: sign(&o.coefficient),
            exponent: o.exponent,
        }));
        Polynomial { terms: out }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<LatticePoint, Rational> = BTreeMap::new();
        for s in &self.terms {
            for o in &rhs.terms {
                let e =
                    LatticePoint::new(s.exponent.a1 + o.exponent.a1, s.exponent.a2 + o.exponent.a2);
                *acc.entry(e).or_insert_with(Rational::zero) += &s.coefficient * &o.coefficient;
            }
        }
        Polynomial::from_sorted_map(acc)
    }
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(e: LatticePoint) -> String {
    let mut parts = Vec::new();
    for (name, k) in [("x1", e.a1), ("x2", e.a2)] {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

/// Canonical text form, e.g. `3/4*x1^2*x2 - x2^3 + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coefficient.is_negative();
            let magnitude = t.coefficient.abs();
            let mono = format_monomial(t.exponent);
            let body = if mono.is_empty() {
                format_rational(&magnitude)
            } else if magnitude.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&magnitude), mono)
            };
            match (i, negative) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a1: u32, a2: u32) -> LatticePoint {
        LatticePoint::new(a1, a2)
    }

    #[test]
    fn terms_are_lex_sorted() {
        let f = Polynomial::from_terms([(p(0, 5), int(1)), (p(1, 0), int(2)), (p(0, 0), int(-1))]);
        let exps: Vec<_> = f.terms().iter().map(|t| t.exponent).collect();
        assert_eq!(exps, vec![p(1, 0), p(0, 5), p(0, 0)]);
        assert_eq!(f.leading_exponent(), Some(p(1, 0)));
    }

    #[test]
    fn arithmetic() {
        let x1 = Polynomial::x1();
        let x2 = Polynomial::x2();
        let f = &x1 + &x2;
        let g = &x1 - &x2;
        let prod = &f * &g;
        assert_eq!(prod, &x1.pow(2) - &x2.pow(2));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn display_format() {
        let f =
            Polynomial::from_terms([(p(2, 1), rat(3, 4)), (p(0, 3), int(-1)), (p(0, 0), int(1))]);
        assert_eq!(f.to_string(), "3/4*x1^2*x2 - x2^3 + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        let g = Polynomial::from_terms([(p(1, 0), int(-1)), (p(0, 0), rat(-1, 2))]);
        assert_eq!(g.to_string(), "-x1 - 1/2");
    }

    #[test]
    fn translate_and_eval() {
        let f = &Polynomial::x1().pow(2) + &Polynomial::x2();
        let g = f.translate(&int(1), &int(2));
        // g(x) = f(x - (1,2)) vanishes where f vanishes, shifted by (1,2)
        assert_eq!(g.eval(&int(1), &int(2)), f.eval(&int(0), &int(0)));
        assert_eq!(g.eval(&int(2), &int(1)), int(0));
    }
}
