//! Ideals given by generators, and the constructions built on them.

use std::fmt;

use num_traits::Zero;

use super::basis::ReducedGroebnerBasis;
use super::parse::parse_generators;
use super::poly::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::staircase::{LatticePoint, StandardSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Drops zero generators; fails if nothing is left.
    pub fn new(generators: Vec<Polynomial>) -> Result<Self> {
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Ideal { generators })
    }

    pub fn unit() -> Self {
        Ideal {
            generators: vec![Polynomial::one()],
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> ReducedGroebnerBasis {
        ReducedGroebnerBasis::compute(&self.generators).expect("generators are nonzero")
    }

    /// The ideal generated by its own reduced basis.
    pub fn reduced(&self) -> Ideal {
        Ideal {
            generators: self.groebner().elements().to_vec(),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ideal::new(parse_generators(src)?)
    }

    /// One generator per line, with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Applies `x1 -> p1`, `x2 -> p2` to every generator.
    pub fn compose(&self, p1: &Polynomial, p2: &Polynomial) -> Result<Ideal> {
        Ideal::new(self.generators.iter().map(|g| g.compose(p1, p2)).collect())
    }

    pub fn translate(&self, a: &Rational, b: &Rational) -> Ideal {
        Ideal {
            generators: self.generators.iter().map(|g| g.translate(a, b)).collect(),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

pub fn reduced_groebner_basis(i: &Ideal) -> Result<ReducedGroebnerBasis> {
    ReducedGroebnerBasis::compute(i.generators())
}

pub fn staircase_of(i: &Ideal) -> Result<StandardSet> {
    reduced_groebner_basis(i)?.staircase().cloned()
}

/// `M_Δ`, generated by the monomials at the outer corners.
pub fn monomial_ideal(delta: &StandardSet) -> Ideal {
    Ideal {
        generators: delta
            .outer_corners()
            .into_iter()
            .map(Polynomial::power)
            .collect(),
    }
}

pub fn ideal_product(a: &Ideal, b: &Ideal) -> Ideal {
    let mut generators = Vec::with_capacity(a.generators.len() * b.generators.len());
    for f in &a.generators {
        for g in &b.generators {
            generators.push(f * g);
        }
    }
    Ideal::new(generators).expect("product of nonzero polynomials is nonzero")
}

/// Intersection of pairwise comaximal zero-dimensional ideals, computed as
/// their product. The colength is checked against the sum of the factors'.
pub fn intersect_comaximal(ideals: &[Ideal]) -> Result<Ideal> {
    let mut expected = 0;
    let mut acc = Ideal::unit();
    for i in ideals {
        expected += staircase_of(i)?.cardinality() as usize;
        acc = ideal_product(&acc, i).reduced();
    }
    let actual = staircase_of(&acc)?.cardinality() as usize;
    if actual != expected {
        return Err(Error::SupportsNotDisjoint { expected, actual });
    }
    Ok(acc)
}

/// Ideal of a point `(a, b)`.
pub fn point_ideal(a: &Rational, b: &Rational) -> Ideal {
    Ideal {
        generators: vec![
            &Polynomial::x1() - &Polynomial::constant(a.clone()),
            &Polynomial::x2() - &Polynomial::constant(b.clone()),
        ],
    }
}

/// Vanishing ideal of distinct points; the empty set gives `<1>`.
pub fn vanishing_ideal(points: &[(Rational, Rational)]) -> Result<Ideal> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint(p.0.to_string(), p.1.to_string()));
        }
    }
    let mut acc = Ideal::unit();
    for (a, b) in points {
        acc = ideal_product(&acc, &point_ideal(a, b)).reduced();
    }
    Ok(acc)
}

/// `<x1 + Σ c_b x2^b, x2^height>` with `coefficients = c_0..c_{height-1}`.
pub fn tall_point_ideal(height: u32, coefficients: &[Rational]) -> Result<Ideal> {
    if height == 0 {
        return Err(Error::InvalidArgument(
            "tall point height must be positive".into(),
        ));
    }
    if coefficients.len() != height as usize {
        return Err(Error::InvalidArgument(format!(
            "expected {height} coefficients, got {}",
            coefficients.len()
        )));
    }
    let f = &Polynomial::x1() + &Polynomial::in_x2(coefficients);
    let g = Polynomial::power(LatticePoint::new(0, height));
    Ideal::new(vec![f, g])
}

/// True iff every generator vanishes at `(a, b)`.
pub fn vanishes_at(i: &Ideal, a: &Rational, b: &Rational) -> bool {
    i.generators().iter().all(|g| g.eval(a, b).is_zero())
}
