//! Core digraph data model: ordered labeled vertices plus an arc multiset.
//!
//! Loops and parallel arcs are allowed. Values are immutable after
//! construction, so they can be shared freely across threads.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A finite digraph with distinct string labels and integer arc
/// multiplicities. The arc multiset is kept sorted by `(tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    arcs: Vec<(usize, usize, u64)>,
    out_adj: Vec<Vec<(usize, u64)>>,
    in_adj: Vec<Vec<(usize, u64)>>,
}

impl Digraph {
    /// Builds a digraph, merging duplicate `(tail, head)` pairs by summing
    /// multiplicities. Rejects duplicate labels and out-of-range indices.
    pub fn new<I>(labels: Vec<String>, arcs: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let n = labels.len();
        let mut seen: HashMap<&str, ()> = HashMap::with_capacity(n);
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (t, h, m) in arcs {
            if t >= n {
                return Err(Error::IndexOutOfRange { index: t, order: n });
            }
            if h >= n {
                return Err(Error::IndexOutOfRange { index: h, order: n });
            }
            if m == 0 {
                continue;
            }
            *merged.entry((t, h)).or_insert(0) += m;
        }
        let arcs: Vec<(usize, usize, u64)> =
            merged.into_iter().map(|((t, h), m)| (t, h, m)).collect();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(t, h, m) in &arcs {
            out_adj[t].push((h, m));
            in_adj[h].push((t, m));
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        Ok(Digraph {
            labels,
            arcs,
            out_adj,
            in_adj,
        })
    }

    /// Convenience constructor for simple arcs (multiplicity 1 each).
    pub fn from_simple_arcs<I>(labels: Vec<String>, arcs: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Digraph::new(labels, arcs.into_iter().map(|(t, h)| (t, h, 1)))
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// Number of arcs counted with multiplicity.
    pub fn arc_count(&self) -> u64 {
        self.arcs.iter().map(|&(_, _, m)| m).sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Canonically ordered arc triples `(tail, head, multiplicity)`.
    pub fn arcs(&self) -> &[(usize, usize, u64)] {
        &self.arcs
    }

    /// Multiplicity of the arc `tail -> head` (0 when absent).
    pub fn multiplicity(&self, tail: usize, head: usize) -> u64 {
        self.out_adj
            .get(tail)
            .map_or(0, |row| {
                row.iter().find(|&&(h, _)| h == head).map(|&(_, m)| m)
            })
            .unwrap_or(0)
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.multiplicity(tail, head) > 0
    }

    pub fn out_neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.out_adj[v].iter().map(|&(_, m)| m).sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        self.in_adj[v].iter().map(|&(_, m)| m).sum()
    }

    /// Adjacency matrix in vertex order; entry `(u, v)` is the number of
    /// arcs `u -> v`, so row sums are out-degrees.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.order();
        let mut a = IntMatrix::zero(n, n);
        for &(t, h, m) in &self.arcs {
            a.set(t, h, m.into());
        }
        a
    }

    /// The converse digraph: every arc reversed, labels unchanged.
    pub fn converse(&self) -> Digraph {
        Digraph::new(
            self.labels.clone(),
            self.arcs.iter().map(|&(t, h, m)| (h, t, m)),
        )
        .expect("reversing arcs preserves validity")
    }

    /// Subdigraph induced on `subset` (given as vertex indices, in the order
    /// they should appear); keeps every arc with both endpoints inside,
    /// multiplicities intact.
    pub fn induced_subdigraph(&self, subset: &[usize]) -> Result<Digraph> {
        let n = self.order();
        let mut position: HashMap<usize, usize> = HashMap::with_capacity(subset.len());
        let mut labels = Vec::with_capacity(subset.len());
        for (i, &v) in subset.iter().enumerate() {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, order: n });
            }
            if position.insert(v, i).is_some() {
                return Err(Error::DuplicateVertex(self.labels[v].clone()));
            }
            labels.push(self.labels[v].clone());
        }
        let arcs = self.arcs.iter().filter_map(|&(t, h, m)| {
            match (position.get(&t), position.get(&h)) {
                (Some(&t2), Some(&h2)) => Some((t2, h2, m)),
                _ => None,
            }
        });
        Digraph::new(labels, arcs)
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Option<u64>>> {
        let n = self.order();
        if source >= n {
            return Err(Error::IndexOutOfRange {
                index: source,
                order: n,
            });
        }
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::with_capacity(n);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &(v, _) in &self.out_adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Maximum over all ordered pairs of the shortest directed-path length.
    /// Errors with a witness pair when the digraph is not strongly connected.
    pub fn diameter(&self) -> Result<u64> {
        let n = self.order();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "diameter of the empty digraph is undefined".into(),
            ));
        }
        let mut best = 0u64;
        for u in 0..n {
            let dist = self.distances_from(u)?;
            for (v, d) in dist.iter().enumerate() {
                match d {
                    Some(d) => best = best.max(*d),
                    None => {
                        return Err(Error::Disconnected {
                            from: self.labels[u].clone(),
                            to: self.labels[v].clone(),
                        })
                    }
                }
            }
        }
        Ok(best)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let forward_ok = self
            .distances_from(0)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false);
        forward_ok
            && self
                .converse()
                .distances_from(0)
                .map(|d| d.iter().all(Option::is_some))
                .unwrap_or(false)
    }

    /// Histograms of out- and in-degrees (degree -> number of vertices).
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut out = BTreeMap::new();
        let mut inn = BTreeMap::new();
        for v in 0..self.order() {
            *out.entry(self.out_degree(v)).or_insert(0u64) += 1;
            *inn.entry(self.in_degree(v)).or_insert(0u64) += 1;
        }
        DegreeProfile {
            out_degrees: out,
            in_degrees: inn,
        }
    }

    /// DOT export; multiplicities appear as repeated edges.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        s.push_str(&format!("digraph \"{}\" {{\n", name));
        for label in &self.labels {
            s.push_str(&format!("  \"{}\";\n", label));
        }
        for &(t, h, m) in &self.arcs {
            for _ in 0..m {
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\";\n",
                    self.labels[t], self.labels[h]
                ));
            }
        }
        s.push_str("}\n");
        s
    }

    /// Edge-list CSV with columns tail,head,multiplicity (one arc per line,
    /// no header).
    pub fn to_edge_csv(&self) -> String {
        let mut s = String::new();
        for &(t, h, m) in &self.arcs {
            s.push_str(&format!("{},{},{}\n", self.labels[t], self.labels[h], m));
        }
        s
    }

    /// JSON object with labels and arc triples (indices into `labels`).
    pub fn to_json(&self, name: &str) -> serde_json::Value {
        serde_json::json!({
            "name": name,
            "order": self.order(),
            "arc_count": self.arc_count(),
            "labels": self.labels,
            "arcs": self.arcs.iter().map(|&(t, h, m)| serde_json::json!([t, h, m])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "digraph on {} vertices, {} arcs",
            self.order(),
            self.arc_count()
        )?;
        for &(t, h, m) in &self.arcs {
            if m == 1 {
                writeln!(f, "  {} -> {}", self.labels[t], self.labels[h])?;
            } else {
                writeln!(f, "  {} -> {} (x{})", self.labels[t], self.labels[h], m)?;
            }
        }
        Ok(())
    }
}

/// Degree histograms, keyed by degree.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DegreeProfile {
    pub out_degrees: BTreeMap<u64, u64>,
    pub in_degrees: BTreeMap<u64, u64>,
}
