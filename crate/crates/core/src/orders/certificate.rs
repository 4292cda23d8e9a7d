//! Combinatorial witnesses for weak incidence of lexicographic basins.
//!
//! A certificate decorates every box `b` of a staircase `Λ` with a staircase
//! `Δ_b`, and every box of `Λ'` with `Δ'_b`. The source shape is assembled by
//! taking `Σ_1` along each row of `Λ` and then `Σ_2` over the rows, likewise
//! for the target. The boxes are matched by a row-compatible bijection
//! `Λ -> Λ'` and each matched pair must satisfy `Δ_b <=_punc Δ'_{f(b)}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{leq_et, leq_punc};
use crate::error::{Error, Result};
use crate::staircase::{Direction, LatticePoint, StandardSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceCertificate {
    pub lambda_shape: StandardSet,
    pub lambda_prime_shape: StandardSet,
    #[serde(with = "map_entries")]
    pub box_map: BTreeMap<LatticePoint, LatticePoint>,
    #[serde(with = "map_entries")]
    pub per_box: BTreeMap<LatticePoint, StandardSet>,
    #[serde(with = "map_entries")]
    pub per_box_prime: BTreeMap<LatticePoint, StandardSet>,
}

mod map_entries {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<K, V, S>(map: &BTreeMap<K, V>, serializer: S) -> Result<S::Ok, S::Error>
    where
        K: Serialize,
        V: Serialize,
        S: Serializer,
    {
        serializer.collect_seq(map.iter())
    }

    pub fn deserialize<'de, K, V, D>(deserializer: D) -> Result<BTreeMap<K, V>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        V: Deserialize<'de>,
        D: Deserializer<'de>,
    {
        let entries: Vec<(K, V)> = Vec::deserialize(deserializer)?;
        Ok(entries.into_iter().collect())
    }
}

impl IncidenceCertificate {
    /// The certificate `Λ = Λ' = {(0,0)}` with `Δ_b = Δ'_b = s`.
    pub fn reflexive(s: &StandardSet) -> Self {
        let origin = LatticePoint::ORIGIN;
        IncidenceCertificate {
            lambda_shape: StandardSet::single_column(1),
            lambda_prime_shape: StandardSet::single_column(1),
            box_map: BTreeMap::from([(origin, origin)]),
            per_box: BTreeMap::from([(origin, s.clone())]),
            per_box_prime: BTreeMap::from([(origin, s.clone())]),
        }
    }
}

/// `Σ_2` over the rows of `shape` of `Σ_1` over the boxes in each row.
fn assemble(shape: &StandardSet, decoration: &BTreeMap<LatticePoint, StandardSet>) -> StandardSet {
    let mut rows: BTreeMap<u32, Vec<&StandardSet>> = BTreeMap::new();
    for (p, s) in decoration {
        rows.entry(p.a2).or_default().push(s);
    }
    debug_assert!(rows.len() as u32 == shape.height());
    let row_sums: Vec<StandardSet> = rows
        .values()
        .map(|boxes| StandardSet::c4_sum_all(boxes.iter().copied(), Direction::First))
        .collect();
    StandardSet::c4_sum_all(&row_sums, Direction::Second)
}

fn same_keys<V>(map: &BTreeMap<LatticePoint, V>, boxes: &BTreeSet<LatticePoint>) -> bool {
    map.len() == boxes.len() && map.keys().all(|k| boxes.contains(k))
}

/// Verifies a certificate for the pair `(a, b)`.
///
/// Structural defects (wrong domains, a map that is not a bijection, or one
/// that splits a row of `Λ` across rows of `Λ'`) are reported as
/// [`Error::MalformedCertificate`]; a well-formed certificate that does not
/// certify `(a, b)` yields `Ok(false)`.
pub fn check_certificate(
    cert: &IncidenceCertificate,
    a: &StandardSet,
    b: &StandardSet,
) -> Result<bool> {
    let lambda: BTreeSet<LatticePoint> = cert.lambda_shape.points().collect();
    let lambda_prime: BTreeSet<LatticePoint> = cert.lambda_prime_shape.points().collect();
    let malformed = |msg: &str| Err(Error::MalformedCertificate(msg.to_string()));

    if !same_keys(&cert.box_map, &lambda) {
        return malformed("box_map domain differs from the boxes of lambda");
    }
    let images: BTreeSet<LatticePoint> = cert.box_map.values().copied().collect();
    if images.len() != cert.box_map.len() || images != lambda_prime {
        return malformed("box_map is not a bijection onto the boxes of lambda'");
    }
    if !same_keys(&cert.per_box, &lambda) {
        return malformed("per_box domain differs from the boxes of lambda");
    }
    if !same_keys(&cert.per_box_prime, &lambda_prime) {
        return malformed("per_box_prime domain differs from the boxes of lambda'");
    }
    let mut row_image: BTreeMap<u32, u32> = BTreeMap::new();
    for (src, dst) in &cert.box_map {
        match row_image.insert(src.a2, dst.a2) {
            Some(prev) if prev != dst.a2 => {
                return malformed("box_map sends one row of lambda to several rows of lambda'")
            }
            _ => {}
        }
    }

    let source_ok = assemble(&cert.lambda_shape, &cert.per_box) == *a;
    let target_ok = assemble(&cert.lambda_prime_shape, &cert.per_box_prime) == *b;
    let base_ok = leq_et(&cert.lambda_shape, &cert.lambda_prime_shape);
    let boxes_ok = cert
        .box_map
        .iter()
        .all(|(src, dst)| leq_punc(&cert.per_box[src], &cert.per_box_prime[dst]));
    Ok(source_ok && target_ok && base_ok && boxes_ok)
}

/// One row of `Λ'`: the rows of `Λ` merged into it, each a list of boxes
/// decorated by `(Δ_b, Δ'_{f(b)})`.
type PrimeRow = Vec<Vec<(StandardSet, StandardSet)>>;

/// Exhaustive search for a certificate of `(a, b)`; `None` when `|a| != |b|`,
/// `|a| > bound`, or no witness exists.
pub fn find_certificate(
    a: &StandardSet,
    b: &StandardSet,
    bound: u32,
) -> Option<IncidenceCertificate> {
    if a.cardinality() != b.cardinality() || a.cardinality() > bound {
        return None;
    }
    if a.is_empty() {
        return None;
    }
    let mut search = CertificateSearch::default();
    let rows = search.prime_rows(a.rows(), b.rows())?;
    let cert = build_certificate(&rows);
    debug_assert_eq!(check_certificate(&cert, a, b), Ok(true));
    Some(cert)
}

#[derive(Default)]
struct CertificateSearch {
    row_cache: HashMap<(Vec<u32>, Vec<u32>), Option<PrimeRow>>,
}

impl CertificateSearch {
    fn prime_rows(&mut self, a_rows: Vec<u32>, b_rows: Vec<u32>) -> Option<Vec<PrimeRow>> {
        let Some((&first, rest_b)) = b_rows.split_first() else {
            return a_rows.is_empty().then(Vec::new);
        };
        // the largest remaining row of b opens the next row of Λ'
        for extra in sub_multisets(rest_b) {
            let mut chosen_b = vec![first];
            chosen_b.extend_from_slice(&extra);
            let total: u32 = chosen_b.iter().sum();
            let left_b = multiset_minus(rest_b, &extra);
            for chosen_a in sub_multisets(&a_rows) {
                if chosen_a.iter().sum::<u32>() != total {
                    continue;
                }
                let Some(row) = self.prime_row(&chosen_a, &chosen_b) else {
                    continue;
                };
                let left_a = multiset_minus(&a_rows, &chosen_a);
                if let Some(mut rows) = self.prime_rows(left_a, left_b.clone()) {
                    rows.push(row);
                    return Some(rows);
                }
            }
        }
        None
    }

    fn prime_row(&mut self, a_rows: &[u32], b_rows: &[u32]) -> Option<PrimeRow> {
        let key = (a_rows.to_vec(), b_rows.to_vec());
        if let Some(hit) = self.row_cache.get(&key) {
            return hit.clone();
        }
        let result = solve_prime_row(a_rows, b_rows);
        self.row_cache.insert(key, result.clone());
        result
    }
}

fn solve_prime_row(a_rows: &[u32], b_rows: &[u32]) -> Option<PrimeRow> {
    let b_cols = StandardSet::from_rows(b_rows.iter().copied())
        .cols()
        .to_vec();
    for grouping in multiset_partitions(a_rows) {
        // each block becomes one row of Λ; its columns are shared out over
        // the boxes of that row
        let options: Vec<Vec<Vec<StandardSet>>> = grouping
            .iter()
            .map(|block| {
                let piece = StandardSet::from_rows(block.iter().copied());
                multiset_partitions(piece.cols())
                    .into_iter()
                    .map(|part| {
                        part.into_iter()
                            .map(StandardSet::from_columns)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            let lambda_rows: Vec<&Vec<StandardSet>> = options
                .iter()
                .zip(&choice)
                .map(|(opts, &k)| &opts[k])
                .collect();
            let sources: Vec<&StandardSet> = lambda_rows.iter().flat_map(|r| r.iter()).collect();
            if let Some(targets) = match_targets(&sources, &b_cols) {
                let mut it = targets.into_iter();
                let row = lambda_rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| (s.clone(), it.next().expect("one target per box")))
                            .collect()
                    })
                    .collect();
                return Some(row);
            }
            if !advance(&mut choice, &options) {
                break;
            }
        }
    }
    None
}

fn advance(choice: &mut [usize], options: &[Vec<Vec<StandardSet>>]) -> bool {
    for (k, opts) in choice.iter_mut().zip(options) {
        *k += 1;
        if *k < opts.len() {
            return true;
        }
        *k = 0;
    }
    false
}

/// Splits `pool` (columns) into one staircase per source with
/// `source <=_punc target`.
fn match_targets(sources: &[&StandardSet], pool: &[u32]) -> Option<Vec<StandardSet>> {
    let Some((first, rest)) = sources.split_first() else {
        return pool.is_empty().then(Vec::new);
    };
    for pick in sub_multisets(pool) {
        if pick.iter().sum::<u32>() != first.cardinality() {
            continue;
        }
        let target = StandardSet::from_columns(pick.iter().copied());
        if !leq_punc(first, &target) {
            continue;
        }
        if let Some(mut tail) = match_targets(rest, &multiset_minus(pool, &pick)) {
            tail.insert(0, target);
            return Some(tail);
        }
    }
    None
}

fn build_certificate(prime_rows: &[PrimeRow]) -> IncidenceCertificate {
    let mut prime_order: Vec<usize> = (0..prime_rows.len()).collect();
    let prime_len = |r: &PrimeRow| r.iter().map(Vec::len).sum::<usize>();
    prime_order.sort_by_key(|&k| std::cmp::Reverse(prime_len(&prime_rows[k])));

    // rows of Λ, tagged with (prime row, index inside it), longest first
    let mut lambda_rows: Vec<(usize, usize)> = prime_rows
        .iter()
        .enumerate()
        .flat_map(|(k, r)| (0..r.len()).map(move |i| (k, i)))
        .collect();
    lambda_rows.sort_by_key(|&(k, i)| std::cmp::Reverse(prime_rows[k][i].len()));
    let lambda_height: HashMap<(usize, usize), u32> = lambda_rows
        .iter()
        .enumerate()
        .map(|(h, &tag)| (tag, h as u32))
        .collect();

    let mut cert = IncidenceCertificate {
        lambda_shape: StandardSet::from_rows(
            lambda_rows
                .iter()
                .map(|&(k, i)| prime_rows[k][i].len() as u32),
        ),
        lambda_prime_shape: StandardSet::from_rows(
            prime_order
                .iter()
                .map(|&k| prime_len(&prime_rows[k]) as u32),
        ),
        box_map: BTreeMap::new(),
        per_box: BTreeMap::new(),
        per_box_prime: BTreeMap::new(),
    };
    for (prime_height, &k) in prime_order.iter().enumerate() {
        let mut offset = 0u32;
        for (i, boxes) in prime_rows[k].iter().enumerate() {
            let row = lambda_height[&(k, i)];
            for (j, (src, dst)) in boxes.iter().enumerate() {
                let from = LatticePoint::new(j as u32, row);
                let to = LatticePoint::new(offset + j as u32, prime_height as u32);
                cert.box_map.insert(from, to);
                cert.per_box.insert(from, src.clone());
                cert.per_box_prime.insert(to, dst.clone());
            }
            offset += boxes.len() as u32;
        }
    }
    cert
}

/// All distinct sub-multisets of a weakly decreasing multiset (including the
/// empty one), each weakly decreasing.
fn sub_multisets(items: &[u32]) -> Vec<Vec<u32>> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &x in items {
        match groups.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => groups.push((x, 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (value, count) in groups {
        let mut next = Vec::with_capacity(out.len() * (count + 1));
        for base in &out {
            for take in 0..=count {
                let mut v = base.clone();
                v.extend(std::iter::repeat_n(value, take));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn multiset_minus(items: &[u32], remove: &[u32]) -> Vec<u32> {
    let mut out = items.to_vec();
    for x in remove {
        let pos = out.iter().position(|y| y == x).expect("sub-multiset");
        out.remove(pos);
    }
    out
}

/// All distinct partitions of a multiset into nonempty blocks. Blocks are
/// weakly decreasing and listed in decreasing order.
fn multiset_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn rec(items: &[u32], blocks: &mut Vec<Vec<u32>>, out: &mut BTreeSet<Vec<Vec<u32>>>) {
        let Some((&x, rest)) = items.split_first() else {
            let mut canon = blocks.clone();
            canon.sort_unstable_by(|p, q| q.cmp(p));
            out.insert(canon);
            return;
        };
        for i in 0..blocks.len() {
            blocks[i].push(x);
            rec(rest, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![x]);
        rec(rest, blocks, out);
        blocks.pop();
    }
    let mut out = BTreeSet::new();
    rec(items, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}
