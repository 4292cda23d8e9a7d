//! Exact bivariate Gröbner machinery over Q.

pub mod basis;
pub mod ideal;
pub mod parse;
pub mod poly;
pub mod torus;

pub use basis::{
    groebner_basis, lex_compare, normal_form, MonomialOrder, ReducedGroebnerBasis, StaircaseKind,
    Truncation,
};
pub use ideal::{
    ideal_product, intersect_comaximal, monomial_ideal, point_ideal, reduced_groebner_basis,
    staircase_of, tall_point_ideal, vanishes_at, vanishing_ideal, Ideal,
};
pub use parse::{parse_generators, parse_polynomial};
pub use poly::{int, rat, Polynomial, Rational, Term};
pub use torus::{initial_form, is_monomial_ideal, torus_limit, torus_scale, Weight};
