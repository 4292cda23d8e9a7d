//! Partial orders on `st_n`.
//!
//! `leq_et` merges rows, `leq_punc` breaks columns apart. The two are
//! implemented by unrelated searches so that the transpose duality between
//! them is a real cross-check rather than an identity.

mod certificate;
mod poset;
mod splitting;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::staircase::StandardSet;

pub use certificate::{check_certificate, find_certificate, IncidenceCertificate};
pub use poset::{build_poset, PosetData};
pub use splitting::{leq_punc_via_splitting, split_columns, SplitQuadruple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Etale,
    Punctual,
    Dominance,
}

impl Order {
    pub fn name(self) -> &'static str {
        match self {
            Order::Etale => "et",
            Order::Punctual => "punc",
            Order::Dominance => "dominance",
        }
    }

    pub fn leq(self, a: &StandardSet, b: &StandardSet) -> bool {
        match self {
            Order::Etale => leq_et(a, b),
            Order::Punctual => leq_punc(a, b),
            Order::Dominance => dominance(a, b),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "et" | "etale" => Ok(Order::Etale),
            "punc" | "punctual" => Ok(Order::Punctual),
            "dominance" | "dom" => Ok(Order::Dominance),
            other => Err(Error::InvalidArgument(format!("unknown order `{other}`"))),
        }
    }
}

/// `a <=_et b`: the rows of `a` can be grouped so that the group sums are
/// exactly the rows of `b`.
///
/// Rows of `a` are dropped one at a time, largest first, into the bins given
/// by the rows of `b`; dead states are memoized on the sorted residual bin
/// capacities.
pub fn leq_et(a: &StandardSet, b: &StandardSet) -> bool {
    if a.cardinality() != b.cardinality() {
        return false;
    }
    let items = a.rows();
    let bins = b.rows();
    if items.len() < bins.len() {
        return false;
    }
    let mut dead = HashSet::new();
    pack_rows(&items, bins, &mut dead)
}

fn pack_rows(items: &[u32], bins: Vec<u32>, dead: &mut HashSet<(usize, Vec<u32>)>) -> bool {
    let Some((&item, rest)) = items.split_first() else {
        return bins.iter().all(|&c| c == 0);
    };
    // every bin must end up with at least one row
    let open = bins.iter().filter(|&&c| c > 0).count();
    if open > items.len() {
        return false;
    }
    let key = (items.len(), bins.clone());
    if dead.contains(&key) {
        return false;
    }
    let mut tried = Vec::new();
    for i in 0..bins.len() {
        let cap = bins[i];
        if cap < item || tried.contains(&cap) {
            continue;
        }
        tried.push(cap);
        let mut next = bins.clone();
        next[i] -= item;
        next.sort_unstable_by(|x, y| y.cmp(x));
        if pack_rows(rest, next, dead) {
            return true;
        }
    }
    dead.insert(key);
    false
}

/// `a <=_punc b`: every column of `a` breaks vertically into pieces such
/// that all pieces together are the columns of `b`.
///
/// Works column by column on `a`, choosing for each one a sub-multiset of the
/// still unused columns of `b` whose heights sum to it.
/// A witness for `a <=_et b`: for each row of `b` (longest first), the rows
/// of `a` merged into it.
pub fn et_row_grouping(a: &StandardSet, b: &StandardSet) -> Option<Vec<Vec<u32>>> {
    if !leq_et(a, b) {
        return None;
    }
    fn place(items: &[u32], remaining: &mut [u32], groups: &mut [Vec<u32>]) -> bool {
        let Some((&item, rest)) = items.split_first() else {
            return remaining.iter().all(|&c| c == 0);
        };
        let mut tried = Vec::new();
        for i in 0..remaining.len() {
            let cap = remaining[i];
            if cap < item || tried.contains(&(cap, groups[i].is_empty())) {
                continue;
            }
            tried.push((cap, groups[i].is_empty()));
            remaining[i] -= item;
            groups[i].push(item);
            if place(rest, remaining, groups) {
                return true;
            }
            groups[i].pop();
            remaining[i] += item;
        }
        false
    }
    let mut remaining = b.rows();
    let mut groups = vec![Vec::new(); remaining.len()];
    place(&a.rows(), &mut remaining, &mut groups).then_some(groups)
}

pub fn leq_punc(a: &StandardSet, b: &StandardSet) -> bool {
    if a.cardinality() != b.cardinality() {
        return false;
    }
    if a.width() > b.width() {
        return false;
    }
    let max = b.height() as usize;
    let mut counts = vec![0u32; max + 1];
    for &h in b.cols() {
        counts[h as usize] += 1;
    }
    let mut dead = HashSet::new();
    break_columns(a.cols(), &mut counts, &mut dead)
}

fn break_columns(
    targets: &[u32],
    counts: &mut Vec<u32>,
    dead: &mut HashSet<(usize, Vec<u32>)>,
) -> bool {
    let Some((&target, rest)) = targets.split_first() else {
        return counts.iter().all(|&c| c == 0);
    };
    let key = (targets.len(), counts.clone());
    if dead.contains(&key) {
        return false;
    }
    let top = counts.len() - 1;
    let found = choose_pieces(target, top, counts, &mut |counts| {
        break_columns(rest, counts, dead)
    });
    if !found {
        dead.insert(key);
    }
    found
}

/// Enumerates sub-multisets of the column pool (heights `<= max_height`)
/// summing to `target`, removing them from `counts` while `next` runs.
/// Stops at the first choice for which `next` succeeds.
fn choose_pieces(
    target: u32,
    max_height: usize,
    counts: &mut Vec<u32>,
    next: &mut dyn FnMut(&mut Vec<u32>) -> bool,
) -> bool {
    if target == 0 {
        return next(counts);
    }
    for h in (1..=max_height.min(target as usize)).rev() {
        if counts[h] == 0 {
            continue;
        }
        counts[h] -= 1;
        let ok = choose_pieces(target - h as u32, h, counts, next);
        counts[h] += 1;
        if ok {
            return true;
        }
    }
    false
}

fn partial_sums_padded(parts: &[u32], len: usize) -> Vec<u64> {
    let mut acc = 0u64;
    (0..len)
        .map(|i| {
            acc += u64::from(parts.get(i).copied().unwrap_or(0));
            acc
        })
        .collect()
}

/// Dominance order: column partial sums of `a` dominate those of `b`.
/// The column of height `n` is the minimum, the row of length `n` the
/// maximum.
pub fn dominance(a: &StandardSet, b: &StandardSet) -> bool {
    if a.cardinality() != b.cardinality() {
        return false;
    }
    let len = a.width().max(b.width()) as usize;
    let sa = partial_sums_padded(a.cols(), len);
    let sb = partial_sums_padded(b.cols(), len);
    sa.iter().zip(&sb).all(|(x, y)| x >= y)
}

fn padded(parts: Vec<u32>, len: usize) -> Vec<u32> {
    let mut parts = parts;
    parts.resize(len, 0);
    parts
}

/// Row tuple of `a` is lexicographically `<=` that of `b` (zero-padded).
pub fn lex_rows_leq(a: &StandardSet, b: &StandardSet) -> bool {
    if a.cardinality() != b.cardinality() {
        return false;
    }
    let len = a.height().max(b.height()) as usize;
    padded(a.rows(), len) <= padded(b.rows(), len)
}

/// Column tuple of `a` is lexicographically `>=` that of `b` (zero-padded).
pub fn lex_cols_geq(a: &StandardSet, b: &StandardSet) -> bool {
    if a.cardinality() != b.cardinality() {
        return false;
    }
    let len = a.width().max(b.width()) as usize;
    padded(a.cols().to_vec(), len) >= padded(b.cols().to_vec(), len)
}

/// Necessary condition for the closure of the basin of `a` to meet the basin
/// of `b` in `H^n(A^2)`.
pub fn incidence_filter(a: &StandardSet, b: &StandardSet) -> bool {
    dominance(a, b) && lex_rows_leq(a, b) && lex_cols_geq(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::enumerate;

    fn rows(r: &[u32]) -> StandardSet {
        StandardSet::from_rows(r.iter().copied())
    }

    fn cols(c: &[u32]) -> StandardSet {
        StandardSet::from_columns(c.iter().copied())
    }

    #[test]
    fn grouping_witness() {
        let g = et_row_grouping(&rows(&[2, 2, 1, 1]), &rows(&[3, 3])).unwrap();
        assert_eq!(g.len(), 2);
        for group in &g {
            assert_eq!(group.iter().sum::<u32>(), 3);
        }
        assert_eq!(et_row_grouping(&rows(&[2, 2]), &rows(&[3, 1])), None);
    }

    #[test]
    fn et_examples() {
        let s = rows(&[3, 2, 1]);
        assert!(leq_et(&s, &s));
        let column = StandardSet::single_column(6);
        for t in enumerate(6) {
            assert!(leq_et(&column, &t), "{t}");
        }
        assert!(!leq_et(&rows(&[3, 2, 1]), &rows(&[4, 1, 1])));
    }

    #[test]
    fn punc_examples() {
        assert!(leq_punc(&rows(&[3, 2, 1]), &rows(&[4, 1, 1])));
        let column = StandardSet::single_column(6);
        let row = StandardSet::single_row(6);
        for t in enumerate(6) {
            assert!(leq_punc(&t, &t));
            assert!(leq_punc(&column, &t));
            assert!(leq_punc(&t, &row));
        }
    }

    #[test]
    fn cross_size_is_false() {
        let a = cols(&[2, 1]);
        let b = cols(&[2, 2]);
        for order in [Order::Etale, Order::Punctual, Order::Dominance] {
            assert!(!order.leq(&a, &b));
        }
        assert!(!incidence_filter(&a, &b));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance(&rows(&[3, 2, 1]), &rows(&[4, 1, 1])));
        assert!(dominance(
            &StandardSet::single_column(5),
            &StandardSet::single_row(5)
        ));
        assert!(!dominance(&rows(&[4, 1, 1]), &rows(&[3, 3])));
        assert!(!dominance(&rows(&[3, 3]), &rows(&[4, 1, 1])));
    }

    #[test]
    fn lex_examples() {
        let a = rows(&[3, 2, 1]);
        let b = rows(&[4, 1, 1]);
        assert!(lex_rows_leq(&a, &a) && lex_cols_geq(&a, &a));
        assert!(lex_rows_leq(&a, &b));
        assert!(lex_cols_geq(&cols(&[3, 2, 1]), &cols(&[3, 1, 1, 1])));
    }

    #[test]
    fn filter_examples() {
        let a = rows(&[3, 2, 1]);
        let b = rows(&[4, 1, 1]);
        assert!(incidence_filter(&a, &a));
        assert!(incidence_filter(&a, &b));
        assert!(!incidence_filter(&b, &a));
    }

    #[test]
    fn order_parsing() {
        assert_eq!("et".parse::<Order>().unwrap(), Order::Etale);
        assert_eq!("punc".parse::<Order>().unwrap(), Order::Punctual);
        assert_eq!("dominance".parse::<Order>().unwrap(), Order::Dominance);
        assert!("lex".parse::<Order>().is_err());
    }
}
