//! The non-deterministic column-splitting procedure deciding `<=_punc`.
//!
//! Each column of `a` is tracked as one fragment (its original height and
//! what is left of it). A step picks a fragment at least as tall as the
//! shortest unmatched column of `b`, and a column `d` of `b` no taller than
//! the fragment, and splits `d` off the fragment. A branch ends when no
//! fragment qualifies. All choices are explored; terminal states are
//! deduplicated and the search is memoized on the full tracked state.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::staircase::StandardSet;

/// Terminal output of one branch. All four fields are multisets of
/// single-column staircases, stored as weakly decreasing heights.
///
/// * `c1` – for every column of `a` that was (partly) split, the height
///   split off it;
/// * `c2` – the unsplittable leftovers;
/// * `c1p` – the columns of `b` that were matched;
/// * `c2p` – the columns of `b` that were not.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplitQuadruple {
    pub c1: Vec<u32>,
    pub c2: Vec<u32>,
    pub c1p: Vec<u32>,
    pub c2p: Vec<u32>,
}

impl SplitQuadruple {
    /// The quadruple `(cols(a), ∅, cols(b), ∅)`.
    pub fn success(a: &StandardSet, b: &StandardSet) -> Self {
        SplitQuadruple {
            c1: a.cols().to_vec(),
            c2: Vec::new(),
            c1p: b.cols().to_vec(),
            c2p: Vec::new(),
        }
    }

    pub fn is_success(&self) -> bool {
        self.c2.is_empty() && self.c2p.is_empty()
    }

    /// `Σ_1` of the given column multiset.
    pub fn sum(columns: &[u32]) -> StandardSet {
        StandardSet::from_columns(columns.iter().copied())
    }
}

/// Fragment of a column of `a`: (original height, remaining height).
type Fragment = (u32, u32);

struct Search<'a> {
    b_cols: &'a [u32],
    seen: HashSet<(Vec<Fragment>, Vec<u32>)>,
    out: BTreeSet<SplitQuadruple>,
}

pub fn split_columns(a: &StandardSet, b: &StandardSet) -> BTreeSet<SplitQuadruple> {
    let fragments: Vec<Fragment> = a.cols().iter().map(|&h| (h, h)).collect();
    let mut search = Search {
        b_cols: b.cols(),
        seen: HashSet::new(),
        out: BTreeSet::new(),
    };
    search.explore(fragments, b.cols().to_vec());
    search.out
}

impl Search<'_> {
    fn explore(&mut self, fragments: Vec<Fragment>, unmatched: Vec<u32>) {
        if !self.seen.insert((fragments.clone(), unmatched.clone())) {
            return;
        }
        // `unmatched` is kept weakly decreasing, so the shortest is last
        let shortest = unmatched.last().copied();
        let candidates: Vec<usize> = match shortest {
            Some(s) => (0..fragments.len())
                .filter(|&i| fragments[i].1 >= s)
                .filter(|&i| i == 0 || fragments[i] != fragments[i - 1])
                .collect(),
            None => Vec::new(),
        };
        if candidates.is_empty() {
            self.out.insert(self.terminal(&fragments, &unmatched));
            return;
        }
        for i in candidates {
            let remaining = fragments[i].1;
            let mut last_d = None;
            for (k, &d) in unmatched.iter().enumerate() {
                if d > remaining || last_d == Some(d) {
                    continue;
                }
                last_d = Some(d);
                let mut next_fragments = fragments.clone();
                next_fragments[i].1 -= d;
                next_fragments.sort_unstable_by(|x, y| y.cmp(x));
                let mut next_unmatched = unmatched.clone();
                next_unmatched.remove(k);
                self.explore(next_fragments, next_unmatched);
            }
        }
    }

    fn terminal(&self, fragments: &[Fragment], unmatched: &[u32]) -> SplitQuadruple {
        let desc = |mut v: Vec<u32>| {
            v.sort_unstable_by(|x, y| y.cmp(x));
            v
        };
        let c1 = desc(
            fragments
                .iter()
                .map(|&(orig, rem)| orig - rem)
                .filter(|&h| h > 0)
                .collect(),
        );
        let c2 = desc(
            fragments
                .iter()
                .map(|&(_, rem)| rem)
                .filter(|&h| h > 0)
                .collect(),
        );
        let mut c1p = self.b_cols.to_vec();
        for &h in unmatched {
            let pos = c1p
                .iter()
                .position(|&x| x == h)
                .expect("unmatched columns come from b");
            c1p.remove(pos);
        }
        SplitQuadruple {
            c1,
            c2,
            c1p,
            c2p: unmatched.to_vec(),
        }
    }
}

/// `a <=_punc b` decided through the splitting procedure.
pub fn leq_punc_via_splitting(a: &StandardSet, b: &StandardSet) -> bool {
    if a.cardinality() != b.cardinality() {
        return false;
    }
    let target = SplitQuadruple::success(a, b);
    split_columns(a, b).contains(&target)
}
