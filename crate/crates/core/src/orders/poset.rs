use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::Order;
use crate::staircase::{enumerate, StandardSet};

/// A partial order on `st_n` together with its Hasse diagram.
#[derive(Clone, Debug, Serialize)]
pub struct PosetData {
    pub order: &'static str,
    pub elements: Vec<StandardSet>,
    /// `relation[i][j]` iff `elements[i] <= elements[j]`.
    pub relation: Vec<Vec<bool>>,
    /// Cover relations `(smaller, larger)`, sorted.
    pub covers: Vec<(usize, usize)>,
}

pub fn build_poset(n: u32, order: Order) -> PosetData {
    let elements = enumerate(n);
    let relation: Vec<Vec<bool>> = elements
        .par_iter()
        .map(|a| elements.iter().map(|b| order.leq(a, b)).collect())
        .collect();
    let covers = transitive_reduction(&relation);
    PosetData {
        order: order.name(),
        elements,
        relation,
        covers,
    }
}

/// Cover pairs of a (reflexive, transitive) relation matrix.
fn transitive_reduction(relation: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = relation.len();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !relation[i][j] {
                continue;
            }
            let between = (0..n).any(|k| k != i && k != j && relation[i][k] && relation[k][j]);
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}

impl PosetData {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: &StandardSet) -> Option<usize> {
        self.elements.iter().position(|e| e == s)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| (0..self.len()).all(|i| i == j || !self.relation[i][j]))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| i == j || !self.relation[i][j]))
            .collect()
    }

    /// Cover relations as pairs of staircases.
    pub fn cover_pairs(&self) -> Vec<(&StandardSet, &StandardSet)> {
        self.covers
            .iter()
            .map(|&(i, j)| (&self.elements[i], &self.elements[j]))
            .collect()
    }

    /// Graphviz rendering; edges point from smaller to larger elements.
    pub fn to_dot(&self) -> String {
        let n: u32 = self.elements.first().map_or(0, StandardSet::cardinality);
        let mut out = String::new();
        let _ = writeln!(out, "digraph {}_{} {{", self.order, n);
        let _ = writeln!(out, "  rankdir=LR;");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", e.label());
        }
        for &(i, j) in &self.covers {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    /// One cover per line, `smaller -> larger` with column labels.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.cover_pairs() {
            let _ = writeln!(out, "{} -> {}", a.label(), b.label());
        }
        out
    }
}
