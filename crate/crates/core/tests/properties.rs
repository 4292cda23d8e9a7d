use std::collections::BTreeSet;

use proptest::prelude::*;
use stairbasin::basinlab::{
    run_prop1, run_prop2, run_torus_calibration, sample_with_rng, trial_rng, BasinSampleSpec,
    SupportConstraint,
};
use stairbasin::groebner::{
    int, rat, staircase_of, vanishing_ideal, Ideal, Polynomial, Rational, ReducedGroebnerBasis,
};
use stairbasin::orders::{dominance, leq_et, leq_punc};
use stairbasin::staircase::{enumerate, Direction};
use stairbasin::{Error, LatticePoint, StandardSet};

fn staircase() -> impl Strategy<Value = StandardSet> {
    prop::collection::vec(1u32..6, 0..5).prop_map(StandardSet::from_columns)
}

fn distinct_points(max: usize) -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::btree_set(((-6i64..6, 1i64..4), (-6i64..6, 1i64..4)), 1..=max).prop_map(
        |pts| {
            let pts: BTreeSet<(Rational, Rational)> = pts
                .into_iter()
                .map(|((a, b), (c, d))| (rat(a, b), rat(c, d)))
                .collect();
            pts.into_iter().collect()
        },
    )
}

/// Rank of a rational matrix by Gaussian elimination.
fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let zero = int(0);
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != zero) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != zero {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        r += 1;
    }
    r
}

fn brute_corners(s: &StandardSet) -> BTreeSet<LatticePoint> {
    let mut out = BTreeSet::new();
    for a1 in 0..=s.width() {
        for a2 in 0..=s.height() {
            let p = LatticePoint::new(a1, a2);
            let left = a1 == 0 || s.contains(LatticePoint::new(a1 - 1, a2));
            let below = a2 == 0 || s.contains(LatticePoint::new(a1, a2 - 1));
            if !s.contains(p) && left && below {
                out.insert(p);
            }
        }
    }
    out
}

#[test]
fn exhaustive_staircase_identities() {
    for n in 0..=10 {
        for s in enumerate(n) {
            assert_eq!(s.transpose().transpose(), s);
            let rows: Vec<StandardSet> =
                s.rows().into_iter().map(StandardSet::single_row).collect();
            assert_eq!(StandardSet::c4_sum_all(&rows, Direction::Second), s);
            let cols: Vec<StandardSet> = s
                .cols()
                .iter()
                .map(|&h| StandardSet::single_column(h))
                .collect();
            assert_eq!(StandardSet::c4_sum_all(&cols, Direction::First), s);
            let d = s.cell_dimensions();
            assert!(d.lex_dim >= d.lin_dim && d.lin_dim >= d.punc_dim);
            let single_row = s.height() <= 1;
            assert_eq!(d.punc_dim == 0, s.width() == n);
            assert_eq!(d.lin_dim == d.punc_dim, n == 0);
            assert_eq!(s.width() == n, single_row);
        }
    }
}

#[test]
fn exhaustive_outer_corners() {
    for n in 0..=8 {
        for s in enumerate(n) {
            let got: BTreeSet<LatticePoint> = s.outer_corners().into_iter().collect();
            assert_eq!(got, brute_corners(&s), "{s}");
        }
    }
}

#[test]
fn exhaustive_order_axioms() {
    for n in 1..=7 {
        let all = enumerate(n);
        for leq in [leq_et, leq_punc, dominance] {
            for a in &all {
                assert!(leq(a, a));
                for b in &all {
                    if a != b && leq(a, b) {
                        assert!(!leq(b, a), "{a} {b}");
                    }
                    for c in &all {
                        if leq(a, b) && leq(b, c) {
                            assert!(leq(a, c), "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reports_are_reproducible() {
    for seed in [1, 99] {
        assert_eq!(
            run_prop1(12, 5, seed).unwrap().to_json(),
            run_prop1(12, 5, seed).unwrap().to_json()
        );
        assert_eq!(
            run_prop2(12, 5, seed).unwrap().to_table(),
            run_prop2(12, 5, seed).unwrap().to_table()
        );
    }
    let a = run_torus_calibration(8, 5, 3).unwrap();
    let b = run_torus_calibration(8, 5, 4).unwrap();
    assert!(a.passed() && b.passed());
    assert_eq!(a.cases_run, a.cases_passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c4_sums_are_commutative_and_additive(a in staircase(), b in staircase(), c in staircase()) {
        for d in [Direction::First, Direction::Second] {
            prop_assert_eq!(a.c4_sum(&b, d), b.c4_sum(&a, d));
            prop_assert_eq!(a.c4_sum(&b, d).c4_sum(&c, d), a.c4_sum(&b.c4_sum(&c, d), d));
            prop_assert_eq!(a.c4_sum(&b, d).cardinality(), a.cardinality() + b.cardinality());
        }
        prop_assert_eq!(
            a.c4_sum(&b, Direction::First).transpose(),
            a.transpose().c4_sum(&b.transpose(), Direction::Second)
        );
    }

    #[test]
    fn duality_on_random_pairs(a in staircase(), b in staircase()) {
        prop_assert_eq!(leq_punc(&a, &b), leq_et(&b.transpose(), &a.transpose()));
        if leq_et(&a, &b) || leq_punc(&a, &b) {
            prop_assert!(dominance(&a, &b));
        }
    }

    #[test]
    fn json_roundtrip(s in staircase()) {
        prop_assert_eq!(StandardSet::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn points_have_colength_k(points in distinct_points(8)) {
        let i = vanishing_ideal(&points).unwrap();
        let stair = staircase_of(&i).unwrap();
        prop_assert_eq!(stair.cardinality() as usize, points.len());
        // staircase monomials evaluated at the points give an invertible matrix
        let matrix: Vec<Vec<Rational>> = points
            .iter()
            .map(|(a, b)| stair.points().map(|e| Polynomial::power(e).eval(a, b)).collect())
            .collect();
        prop_assert_eq!(rank(matrix), points.len());
        for f in i.groebner().elements() {
            for (a, b) in &points {
                prop_assert_eq!(f.eval(a, b), int(0));
            }
        }
    }

    #[test]
    fn reduced_basis_is_canonical(
        points in distinct_points(6),
        mults in prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 3),
        order in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let gb = vanishing_ideal(&points).unwrap().groebner();
        let base = gb.elements().to_vec();
        // redundant combinations of the basis, then a shuffle
        let mut gens = base.clone();
        for (k, &(e1, e2, c)) in mults.iter().enumerate() {
            let g = &base[k % base.len()];
            let h = &base[(k + 1) % base.len()];
            gens.push(&g.mul_term(&int(c), LatticePoint::new(e1, e2)) + h);
        }
        let gens: Vec<Polynomial> = order
            .iter()
            .filter_map(|&k| gens.get(k).cloned())
            .chain(gens.iter().skip(6).cloned())
            .collect();
        let again = ReducedGroebnerBasis::compute(&gens).unwrap();
        prop_assert_eq!(again.elements(), gb.elements());
        let twice = ReducedGroebnerBasis::compute(gb.elements()).unwrap();
        prop_assert_eq!(twice.elements(), gb.elements());
        let i = Ideal::new(gens).unwrap();
        prop_assert_eq!(staircase_of(&i).unwrap(), gb.staircase().unwrap().clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn samplers_meet_their_contract(
        target in prop::collection::vec(1u32..4, 1..4).prop_map(StandardSet::from_columns),
        kind in 0u8..4,
        lambda in -5i64..5,
        seed in any::<u64>(),
    ) {
        let support = match kind {
            0 => SupportConstraint::Origin,
            1 => SupportConstraint::X1Axis,
            2 => SupportConstraint::HorizontalLine(int(lambda)),
            _ => SupportConstraint::Free,
        };
        let spec = BasinSampleSpec::new(target.clone(), support.clone(), seed);
        let i = match sample_with_rng(&spec, &mut trial_rng(seed, 0)) {
            Ok(i) => i,
            Err(Error::SamplingFailure { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        // recompute from reversed generators
        let mut gens = i.generators().to_vec();
        gens.reverse();
        let j = Ideal::new(gens).unwrap();
        prop_assert_eq!(staircase_of(&j).unwrap(), target.clone());
        let n = target.cardinality();
        let gb = j.groebner();
        let x1 = Polynomial::x1();
        let x2 = Polynomial::x2();
        match support {
            SupportConstraint::Origin => {
                prop_assert!(gb.contains(&x1.pow(n)) && gb.contains(&x2.pow(n)));
            }
            SupportConstraint::X1Axis => prop_assert!(gb.contains(&x2.pow(n))),
            SupportConstraint::HorizontalLine(l) => {
                let line = &x2 - &Polynomial::constant(l);
                prop_assert!(gb.contains(&line.pow(n)));
            }
            SupportConstraint::Free => {}
        }
    }
}
