//! The base digraph T_d, the line-digraph operator and its iteration.
//!
//! Every vertex of the m-iterated line digraph corresponds to a walk of
//! length m in the base digraph; those walks are stored explicitly so the
//! natural correspondence with digit words can be checked arc by arc.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::iso::is_isomorphism;
use crate::matrix::IntMatrix;
use crate::word::{self, DEFAULT_VERTEX_CAP};

/// The digraph T_d on vertices 0..d with arcs (0, i) for every i and
/// (i, i+1 mod d) for i != 0: d vertices, 2d-1 arcs, strongly connected
/// with diameter d-1. Coincides with F(d, 1).
pub fn build_t(d: u32) -> Result<Digraph> {
    if d < 2 {
        return Err(Error::AlphabetTooSmall(d));
    }
    let labels: Vec<String> = (0..d).map(|i| i.to_string()).collect();
    let mut arcs = Vec::with_capacity(2 * d as usize - 1);
    for i in 0..d as usize {
        arcs.push((0, i));
    }
    for i in 1..d as usize {
        arcs.push((i, (i + 1) % d as usize));
    }
    Digraph::from_simple_arcs(labels, arcs)
}

/// A walk through the base digraph, with a copy index per step to keep
/// parallel arcs apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Walk {
    vertices: Vec<usize>,
    copies: Vec<u64>,
}

impl Walk {
    fn label(&self, g: &Digraph) -> String {
        let mut s = g.label(self.vertices[0]).to_string();
        for (i, &v) in self.vertices.iter().enumerate().skip(1) {
            s.push('-');
            s.push_str(g.label(v));
            if g.multiplicity(self.vertices[i - 1], v) > 1 {
                s.push_str(&format!("#{}", self.copies[i - 1]));
            }
        }
        s
    }
}

fn walks_of_length(g: &Digraph, m: usize, cap: u64) -> Result<Vec<Walk>> {
    let expected = order_formula(&g.adjacency_matrix(), m as u64)?;
    if expected > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: "line-digraph iteration",
            needed: expected.to_string(),
            cap,
        });
    }
    let mut walks: Vec<Walk> = (0..g.order())
        .map(|v| Walk {
            vertices: vec![v],
            copies: Vec::new(),
        })
        .collect();
    for _ in 0..m {
        let mut next = Vec::new();
        for w in &walks {
            let last = *w.vertices.last().expect("walks are nonempty");
            for &(head, mult) in g.out_neighbors(last) {
                for copy in 0..mult {
                    let mut vertices = w.vertices.clone();
                    vertices.push(head);
                    let mut copies = w.copies.clone();
                    copies.push(copy);
                    next.push(Walk { vertices, copies });
                }
            }
        }
        walks = next;
    }
    Ok(walks)
}

fn digraph_on_walks(g: &Digraph, walks: Vec<Walk>) -> Result<Digraph> {
    let m = walks.first().map_or(0, |w| w.copies.len());
    let labels: Vec<String> = walks.iter().map(|w| w.label(g)).collect();
    // Arc a -> b iff b continues a by one step: b's prefix equals a's suffix.
    let mut by_prefix: HashMap<(&[usize], &[u64]), Vec<usize>> = HashMap::new();
    for (i, w) in walks.iter().enumerate() {
        by_prefix
            .entry((&w.vertices[..m], &w.copies[..m.saturating_sub(1)]))
            .or_default()
            .push(i);
    }
    let mut arcs = Vec::new();
    for (i, w) in walks.iter().enumerate() {
        let key = (&w.vertices[1..], &w.copies[if m == 0 { 0 } else { 1 }..]);
        if let Some(heads) = by_prefix.get(&key) {
            for &j in heads {
                arcs.push((i, j));
            }
        }
    }
    Digraph::from_simple_arcs(labels, arcs)
}

/// The line digraph LG: one vertex per arc of G (parallel arcs become
/// distinct vertices, suffixed #0, #1, ... in canonical arc order), with
/// an arc from uv to wz exactly when v = w.
pub fn line_digraph(g: &Digraph) -> Result<Digraph> {
    iterated_line_digraph_capped(g, 1, DEFAULT_VERTEX_CAP)
}

/// The m-iterated line digraph, built directly on length-m walks so vertex
/// labels read as dash-joined base walks ("0-1-2"). L^0 G = G.
pub fn iterated_line_digraph(g: &Digraph, m: u32) -> Result<Digraph> {
    iterated_line_digraph_capped(g, m, DEFAULT_VERTEX_CAP)
}

pub fn iterated_line_digraph_capped(g: &Digraph, m: u32, cap: u64) -> Result<Digraph> {
    if m == 0 {
        return Ok(g.clone());
    }
    let walks = walks_of_length(g, m as usize, cap)?;
    digraph_on_walks(g, walks)
}

/// The order of L^m G: j A^m j^T, the sum of all entries of A^m.
pub fn order_formula(a: &IntMatrix, m: u64) -> Result<BigInt> {
    a.require_square()?;
    let n = a.rows();
    let mut row: Vec<BigInt> = vec![BigInt::from(1); n];
    for _ in 0..m {
        let mut next = vec![BigInt::from(0); n];
        for (i, v) in row.iter().enumerate() {
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            for (c, slot) in next.iter_mut().enumerate() {
                let e = a.get(i, c);
                if !num_traits::Zero::is_zero(e) {
                    *slot += v * e;
                }
            }
        }
        row = next;
    }
    Ok(row.into_iter().sum())
}

/// Reads a lineage label like "0-1-2" back into base-digraph digits.
fn parse_lineage(label: &str) -> Result<Vec<u32>> {
    label
        .split('-')
        .map(|part| {
            // Copy suffixes never occur for the simple digraphs T_d.
            let part = part.split('#').next().unwrap_or(part);
            part.parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("bad lineage label {:?}", label)))
        })
        .collect()
}

/// Certifies the natural correspondence walk <-> digit word as a digraph
/// isomorphism from L^{k-1} T_d onto F(d, k): each lineage label is read as
/// a word, located in the word digraph, and the induced bijection is then
/// re-verified arc by arc in both directions. Returns the vertex map.
pub fn natural_word_isomorphism(
    iterated: &Digraph,
    fibonacci: &Digraph,
    d: u32,
) -> Result<Vec<usize>> {
    if iterated.order() != fibonacci.order() {
        return Err(Error::DimensionMismatch(format!(
            "orders differ: {} vs {}",
            iterated.order(),
            fibonacci.order()
        )));
    }
    let index: HashMap<&str, usize> = fibonacci
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut map = Vec::with_capacity(iterated.order());
    for label in iterated.labels() {
        let digits = parse_lineage(label)?;
        let word = word::render_digits(&digits, d);
        let target = index.get(word.as_str()).copied().ok_or_else(|| {
            Error::InvariantViolation(format!(
                "walk {} maps to word {} which is not a vertex",
                label, word
            ))
        })?;
        map.push(target);
    }
    if !is_isomorphism(&map, iterated, fibonacci) {
        return Err(Error::InvariantViolation(
            "natural walk-to-word map is not an isomorphism".into(),
        ));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;
    use crate::word::{build_de_bruijn, build_fibonacci_digraph};

    #[test]
    fn t2_arcs() {
        let t = build_t(2).unwrap();
        assert_eq!(t.arcs(), &[(0, 0, 1), (0, 1, 1), (1, 0, 1)]);
    }

    #[test]
    fn t_has_2d_minus_1_arcs_and_diameter_d_minus_1() {
        for d in 2..=7u32 {
            let t = build_t(d).unwrap();
            assert_eq!(t.arc_count(), 2 * d as u64 - 1);
            assert_eq!(t.diameter().unwrap(), d as u64 - 1);
        }
    }

    #[test]
    fn t5_eccentricities_bounded() {
        let t = build_t(5).unwrap();
        for v in 0..t.order() {
            let ecc = t
                .distances_from(v)
                .unwrap()
                .into_iter()
                .map(|d| d.unwrap())
                .max()
                .unwrap();
            assert!(ecc <= 4);
        }
    }

    #[test]
    fn line_of_t2_is_f22() {
        let l = line_digraph(&build_t(2).unwrap()).unwrap();
        assert_eq!(l.order(), 3);
        let f = build_fibonacci_digraph(2, 2).unwrap();
        assert!(find_isomorphism(&l, &f).unwrap().is_some());
    }

    #[test]
    fn line_of_directed_cycle_is_directed_cycle() {
        let n = 5;
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let cycle =
            Digraph::from_simple_arcs(labels, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let l = line_digraph(&cycle).unwrap();
        assert_eq!(l.order(), n);
        assert!(find_isomorphism(&l, &cycle).unwrap().is_some());
    }

    #[test]
    fn line_of_b22_is_b23() {
        let l = line_digraph(&build_de_bruijn(2, 2).unwrap()).unwrap();
        let b = build_de_bruijn(2, 3).unwrap();
        assert!(find_isomorphism(&l, &b).unwrap().is_some());
    }

    #[test]
    fn iterating_zero_times_is_identity() {
        let t = build_t(3).unwrap();
        assert_eq!(iterated_line_digraph(&t, 0).unwrap(), t);
    }

    #[test]
    fn iterated_agrees_with_repeated_application() {
        let t = build_t(2).unwrap();
        let twice = line_digraph(&line_digraph(&t).unwrap()).unwrap();
        let direct = iterated_line_digraph(&t, 2).unwrap();
        assert_eq!(twice.order(), direct.order());
        assert!(find_isomorphism(&twice, &direct).unwrap().is_some());
    }

    #[test]
    fn iterated_t2_three_times_is_f24() {
        let l3 = iterated_line_digraph(&build_t(2).unwrap(), 3).unwrap();
        assert_eq!(l3.order(), 8);
        let f = build_fibonacci_digraph(2, 4).unwrap();
        let map = natural_word_isomorphism(&l3, &f, 2).unwrap();
        assert_eq!(map.len(), 8);
    }

    #[test]
    fn iterated_t3_twice_has_order_nine() {
        let l2 = iterated_line_digraph(&build_t(3).unwrap(), 2).unwrap();
        assert_eq!(l2.order(), 9);
    }

    #[test]
    fn order_formula_values() {
        let t2 = build_t(2).unwrap().adjacency_matrix();
        assert_eq!(order_formula(&t2, 0).unwrap(), BigInt::from(2));
        assert_eq!(order_formula(&t2, 4).unwrap(), BigInt::from(13));
        let t5 = build_t(5).unwrap().adjacency_matrix();
        assert_eq!(order_formula(&t5, 7).unwrap(), BigInt::from(497));
    }

    #[test]
    fn order_of_line_equals_arc_count() {
        for d in 2..=4u32 {
            let t = build_t(d).unwrap();
            let mut g = t.clone();
            for m in 1..=4u64 {
                let next = line_digraph(&g).unwrap();
                assert_eq!(next.order() as u64, g.arc_count(), "d = {}, m = {}", d, m);
                assert_eq!(
                    BigInt::from(next.order()),
                    order_formula(&t.adjacency_matrix(), m),
                    "d = {}, m = {}",
                    d,
                    m
                );
                g = next;
            }
        }
    }

    #[test]
    fn parallel_arcs_become_suffixed_vertices() {
        let g = Digraph::new(
            vec!["a".into(), "b".into()],
            [(0usize, 1usize, 2u64), (1, 0, 1)],
        )
        .unwrap();
        let l = line_digraph(&g).unwrap();
        assert_eq!(l.order(), 3);
        let labels: Vec<&str> = l.labels().iter().map(String::as_str).collect();
        assert_eq!(labels, ["a-b#0", "a-b#1", "b-a"]);
        // Both copies feed b-a, and b-a feeds both copies.
        assert!(l.has_arc(0, 2) && l.has_arc(1, 2));
        assert!(l.has_arc(2, 0) && l.has_arc(2, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let t = build_t(2).unwrap();
        assert!(matches!(
            iterated_line_digraph_capped(&t, 40, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }
}
