//! Buchberger's algorithm for lex and weighted orders, with optional
//! truncation by pure powers (used for Gröbner bases in `S / <x_i^N>`).

use std::collections::BTreeSet;

use num_traits::Zero;

use super::poly::{Polynomial, Rational, Term};
use super::torus::Weight;
use crate::error::{Error, Result};
use crate::staircase::{LatticePoint, StandardSet};

/// Monomial orders used here. `Weighted(v)` prefers the smallest
/// `<α, v>` and breaks ties by lex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    Weighted(Weight),
}

impl MonomialOrder {
    /// Sort key; the largest key is the leading monomial.
    pub fn key(self, e: LatticePoint) -> (i64, u32, u32) {
        match self {
            MonomialOrder::Lex => (0, e.a1, e.a2),
            MonomialOrder::Weighted(v) => (-v.pair(e), e.a1, e.a2),
        }
    }

    pub fn compare(self, a: LatticePoint, b: LatticePoint) -> std::cmp::Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Lex comparison with `x1 > x2`.
pub fn lex_compare(a: LatticePoint, b: LatticePoint) -> std::cmp::Ordering {
    MonomialOrder::Lex.compare(a, b)
}

/// Pure powers `x1^t1`, `x2^t2` treated as zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Truncation {
    pub x1: Option<u32>,
    pub x2: Option<u32>,
}

impl Truncation {
    fn kills(&self, e: LatticePoint) -> bool {
        self.x1.is_some_and(|t| e.a1 >= t) || self.x2.is_some_and(|t| e.a2 >= t)
    }

    pub fn is_none(&self) -> bool {
        self.x1.is_none() && self.x2.is_none()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if let Some(t) = self.x1 {
            out.push(Polynomial::power(LatticePoint::new(t, 0)));
        }
        if let Some(t) = self.x2 {
            out.push(Polynomial::power(LatticePoint::new(0, t)));
        }
        out
    }
}

/// Polynomial with terms sorted by a given order, leading term first.
#[derive(Clone, Debug)]
struct Ordered {
    terms: Vec<Term>,
}

struct Ring {
    order: MonomialOrder,
    truncation: Truncation,
}

impl Ring {
    fn import(&self, f: &Polynomial) -> Ordered {
        let mut terms: Vec<Term> = f
            .terms()
            .iter()
            .filter(|t| !self.truncation.kills(t.exponent))
            .cloned()
            .collect();
        terms.sort_by(|a, b| self.order.compare(b.exponent, a.exponent));
        Ordered { terms }
    }

    fn export(&self, f: &Ordered) -> Polynomial {
        Polynomial::from_terms(f.terms.iter().map(|t| (t.exponent, t.coefficient.clone())))
    }

    /// `f - c * x^e * g`, truncated.
    fn sub_mul(&self, f: &Ordered, c: &Rational, e: LatticePoint, g: &Ordered) -> Ordered {
        let shifted = g.terms.iter().filter_map(|t| {
            let exp = LatticePoint::new(t.exponent.a1 + e.a1, t.exponent.a2 + e.a2);
            (!self.truncation.kills(exp)).then(|| Term {
                coefficient: -(c * &t.coefficient),
                exponent: exp,
            })
        });
        let shifted: Vec<Term> = shifted.collect();
        let mut out = Vec::with_capacity(f.terms.len() + shifted.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < shifted.len() {
            let (a, b) = (&f.terms[i], &shifted[j]);
            match self.order.compare(a.exponent, b.exponent) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a.coefficient + &b.coefficient;
                    if !s.is_zero() {
                        out.push(Term {
                            coefficient: s,
                            exponent: a.exponent,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&shifted[j..]);
        Ordered { terms: out }
    }

    /// Full reduction of `f` by `basis`.
    fn reduce(&self, f: &Ordered, basis: &[Ordered]) -> Ordered {
        let mut rest = f.clone();
        let mut done: Vec<Term> = Vec::new();
        while let Some(lead) = rest.terms.first().cloned() {
            let divisor = basis.iter().find(|g| {
                g.terms
                    .first()
                    .is_some_and(|t| t.exponent.divides(lead.exponent))
            });
            match divisor {
                Some(g) => {
                    let lg = &g.terms[0];
                    let c = &lead.coefficient / &lg.coefficient;
                    let e = LatticePoint::new(
                        lead.exponent.a1 - lg.exponent.a1,
                        lead.exponent.a2 - lg.exponent.a2,
                    );
                    rest = self.sub_mul(&rest, &c, e, g);
                }
                None => {
                    done.push(lead);
                    rest.terms.remove(0);
                }
            }
        }
        Ordered { terms: done }
    }

    fn s_polynomial(&self, f: &Ordered, g: &Ordered) -> Ordered {
        let (lf, lg) = (&f.terms[0], &g.terms[0]);
        let l = lcm(lf.exponent, lg.exponent);
        let ef = LatticePoint::new(l.a1 - lf.exponent.a1, l.a2 - lf.exponent.a2);
        let eg = LatticePoint::new(l.a1 - lg.exponent.a1, l.a2 - lg.exponent.a2);
        let zero = Ordered { terms: Vec::new() };
        let a = self.sub_mul(&zero, &-lf.coefficient.recip(), ef, f);
        self.sub_mul(&a, &lg.coefficient.recip(), eg, g)
    }

    fn monic(&self, f: &Ordered) -> Ordered {
        let inv = f.terms[0].coefficient.recip();
        Ordered {
            terms: f
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: &t.coefficient * &inv,
                    exponent: t.exponent,
                })
                .collect(),
        }
    }
}

const X1_POWER: usize = usize::MAX;
const X2_POWER: usize = usize::MAX - 1;

fn lcm(a: LatticePoint, b: LatticePoint) -> LatticePoint {
    LatticePoint::new(a.a1.max(b.a1), a.a2.max(b.a2))
}

/// Reduced Gröbner basis with respect to `order`, computed modulo the
/// truncation. Elements are monic and sorted by increasing leading monomial.
/// Returns an empty list for the zero ideal.
pub fn groebner_basis(
    generators: &[Polynomial],
    order: MonomialOrder,
    truncation: Truncation,
) -> Vec<Polynomial> {
    let ring = Ring { order, truncation };
    let mut basis: Vec<Ordered> = Vec::new();
    for g in generators {
        let r = ring.reduce(&ring.import(g), &basis);
        if !r.terms.is_empty() {
            basis.push(ring.monic(&r));
        }
    }

    // pairs keyed by (order key of lcm, i, j) so the smallest lcm comes first;
    // j = X1_POWER or X2_POWER pairs element i with a truncation monomial
    let mut pairs: BTreeSet<((i64, u32, u32), usize, usize)> = BTreeSet::new();
    let lead_of = |basis: &[Ordered], j: usize, i: usize| match j {
        X1_POWER => {
            let t = truncation.x1.expect("x1 truncation");
            LatticePoint::new(t, basis[i].terms[0].exponent.a2)
        }
        X2_POWER => {
            let t = truncation.x2.expect("x2 truncation");
            LatticePoint::new(basis[i].terms[0].exponent.a1, t)
        }
        _ => basis[j].terms[0].exponent,
    };
    let pair_key = |basis: &[Ordered], i: usize, j: usize| {
        let l = lcm(basis[i].terms[0].exponent, lead_of(basis, j, i));
        (order.key(l), i, j)
    };
    let queue_new = |basis: &[Ordered], k: usize, pairs: &mut BTreeSet<_>| {
        for i in 0..k {
            pairs.insert(pair_key(basis, i, k));
        }
        let lk = basis[k].terms[0].exponent;
        // a leading monomial coprime to the truncation power needs no pair
        if truncation.x1.is_some() && lk.a1 > 0 {
            pairs.insert(pair_key(basis, k, X1_POWER));
        }
        if truncation.x2.is_some() && lk.a2 > 0 {
            pairs.insert(pair_key(basis, k, X2_POWER));
        }
    };
    for k in 0..basis.len() {
        queue_new(&basis, k, &mut pairs);
    }
    while let Some(pair) = pairs.pop_first() {
        let (_, i, j) = pair;
        let s = if j == X1_POWER || j == X2_POWER {
            // multiply element i until its leading term vanishes
            let li = basis[i].terms[0].exponent;
            let l = lcm(li, lead_of(&basis, j, i));
            let e = LatticePoint::new(l.a1 - li.a1, l.a2 - li.a2);
            let minus_one = -Rational::from_integer(1.into());
            ring.sub_mul(&Ordered { terms: Vec::new() }, &minus_one, e, &basis[i])
        } else {
            let (li, lj) = (basis[i].terms[0].exponent, basis[j].terms[0].exponent);
            // coprime leading monomials: the S-polynomial reduces to zero
            if (li.a1 == 0 || lj.a1 == 0) && (li.a2 == 0 || lj.a2 == 0) {
                continue;
            }
            // chain criterion: some x^lk divides the lcm and both pairs with k
            // have been treated already
            let l = lcm(li, lj);
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].terms[0].exponent.divides(l)
                    && !pairs.contains(&pair_key(&basis, i.min(k), i.max(k)))
                    && !pairs.contains(&pair_key(&basis, j.min(k), j.max(k)))
            });
            if chained {
                continue;
            }
            ring.s_polynomial(&basis[i], &basis[j])
        };
        let r = ring.reduce(&s, &basis);
        if r.terms.is_empty() {
            continue;
        }
        basis.push(ring.monic(&r));
        let k = basis.len() - 1;
        queue_new(&basis, k, &mut pairs);
    }
    interreduce(&ring, basis)
}

fn interreduce(ring: &Ring, basis: Vec<Ordered>) -> Vec<Polynomial> {
    // keep one element per minimal leading monomial
    let mut minimal: Vec<Ordered> = Vec::new();
    for (idx, f) in basis.iter().enumerate() {
        let lf = f.terms[0].exponent;
        let redundant = basis.iter().enumerate().any(|(jdx, g)| {
            let lg = g.terms[0].exponent;
            jdx != idx && lg.divides(lf) && (lg != lf || jdx < idx)
        });
        if !redundant {
            minimal.push(f.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Ordered> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = Ordered {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = Ordered {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let tail = ring.reduce(&tail, &others);
        let mut terms = lead.terms;
        terms.extend(tail.terms);
        reduced.push(ring.monic(&Ordered { terms }));
    }
    reduced.sort_by(|f, g| ring.order.compare(f.terms[0].exponent, g.terms[0].exponent));
    reduced.iter().map(|f| ring.export(f)).collect()
}

/// Leading exponent of `f` under `order`.
pub fn leading_exponent(f: &Polynomial, order: MonomialOrder) -> Option<LatticePoint> {
    f.terms()
        .iter()
        .map(|t| t.exponent)
        .max_by(|a, b| order.compare(*a, *b))
}

/// Staircase of the monomial ideal generated by `x^e` for `e` in `leads`,
/// or `None` if it is infinite.
pub fn staircase_from_leading(leads: &[LatticePoint]) -> Option<StandardSet> {
    let width = leads.iter().filter(|e| e.a2 == 0).map(|e| e.a1).min()?;
    let mut heights = Vec::with_capacity(width as usize);
    for j in 0..width {
        let h = leads.iter().filter(|e| e.a1 <= j).map(|e| e.a2).min()?;
        heights.push(h);
    }
    Some(StandardSet::from_columns(heights))
}

/// `StandardSet` of `in_lex(I)`, or the marker for an infinite one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StaircaseKind {
    Finite(StandardSet),
    Infinite,
}

/// Monic, tail-reduced lex Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGroebnerBasis {
    elements: Vec<Polynomial>,
    staircase: StaircaseKind,
}

impl ReducedGroebnerBasis {
    pub fn compute(generators: &[Polynomial]) -> Result<Self> {
        if generators.iter().all(Polynomial::is_zero) {
            return Err(Error::ZeroIdeal);
        }
        let elements = groebner_basis(generators, MonomialOrder::Lex, Truncation::default());
        let leads: Vec<LatticePoint> = elements
            .iter()
            .map(|f| f.leading_exponent().expect("nonzero"))
            .collect();
        let staircase = match staircase_from_leading(&leads) {
            Some(s) => StaircaseKind::Finite(s),
            None => StaircaseKind::Infinite,
        };
        Ok(ReducedGroebnerBasis {
            elements,
            staircase,
        })
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn staircase_kind(&self) -> &StaircaseKind {
        &self.staircase
    }

    pub fn staircase(&self) -> Result<&StandardSet> {
        match &self.staircase {
            StaircaseKind::Finite(s) => Ok(s),
            StaircaseKind::Infinite => Err(Error::NotZeroDimensional),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0] == Polynomial::one()
    }

    pub fn leading_exponents(&self) -> Vec<LatticePoint> {
        self.elements
            .iter()
            .map(|f| f.leading_exponent().expect("nonzero"))
            .collect()
    }

    /// Remainder of `f` on division by the basis (lex).
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Lex normal form of `f` modulo a Gröbner basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = Ring {
        order: MonomialOrder::Lex,
        truncation: Truncation::default(),
    };
    let basis: Vec<Ordered> = basis.iter().map(|g| ring.import(g)).collect();
    ring.export(&ring.reduce(&ring.import(f), &basis))
}
