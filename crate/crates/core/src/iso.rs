//! Exact isomorphism, automorphism and homomorphism checks.
//!
//! Backtracking over a color refinement (repeated degree/neighborhood
//! partitioning). Orders here are desk-scale and the Fibonacci digraphs
//! have trivial automorphism groups, so refinement isolates most vertices
//! before any search happens. Every bijection found is re-verified arc by
//! arc before being returned.

use std::collections::BTreeMap;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Default order cap for isomorphism searches.
pub const DEFAULT_ISO_CAP: usize = 5000;

/// Checks whether `map` (g-index -> h-index) is an isomorphism preserving
/// arc multiplicities exactly in both directions.
pub fn is_isomorphism(map: &[usize], g: &Digraph, h: &Digraph) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &image in map {
        if image >= n || seen[image] {
            return false;
        }
        seen[image] = true;
    }
    if g.arc_count() != h.arc_count() {
        return false;
    }
    g.arcs()
        .iter()
        .all(|&(t, head, m)| h.multiplicity(map[t], map[head]) == m)
}

/// True iff every arc of `g` maps to an arc of `h` under the total vertex
/// map `f`. Multiplicities in the image only need to be positive.
pub fn check_homomorphism(f: &[usize], g: &Digraph, h: &Digraph) -> Result<bool> {
    if f.len() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "map covers {} vertices, digraph has {}",
            f.len(),
            g.order()
        )));
    }
    for &image in f {
        if image >= h.order() {
            return Err(Error::IndexOutOfRange {
                index: image,
                order: h.order(),
            });
        }
    }
    Ok(g.arcs().iter().all(|&(t, head, _)| h.has_arc(f[t], f[head])))
}

/// Searches for an isomorphism from `g` onto `h`. Returns the vertex map
/// or `None` when provably no isomorphism exists.
pub fn find_isomorphism(g: &Digraph, h: &Digraph) -> Result<Option<Vec<usize>>> {
    find_isomorphism_capped(g, h, DEFAULT_ISO_CAP)
}

pub fn find_isomorphism_capped(
    g: &Digraph,
    h: &Digraph,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    check_cap(g.order().max(h.order()), cap)?;
    if g.order() != h.order() || g.arc_count() != h.arc_count() {
        return Ok(None);
    }
    let Some(colors) = refine_colors(g, h) else {
        return Ok(None);
    };
    let mut search = Search::new(g, h, colors, SearchMode::FindOne);
    search.run(0);
    match search.found.pop() {
        Some(map) => {
            if !is_isomorphism(&map, g, h) {
                return Err(Error::InvariantViolation(
                    "search produced a map that fails re-verification".into(),
                ));
            }
            Ok(Some(map))
        }
        None => Ok(None),
    }
}

/// Exact number of arc-multiplicity-preserving self-bijections.
pub fn automorphism_count(g: &Digraph) -> Result<u64> {
    automorphism_count_capped(g, DEFAULT_ISO_CAP)
}

pub fn automorphism_count_capped(g: &Digraph, cap: usize) -> Result<u64> {
    check_cap(g.order(), cap)?;
    if g.order() == 0 {
        return Ok(1);
    }
    let colors = refine_colors(g, g).expect("a digraph always matches itself");
    let mut search = Search::new(g, g, colors, SearchMode::CountAll);
    search.run(0);
    Ok(search.count)
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search",
            needed: order.to_string(),
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Joint color refinement over both digraphs. Returns per-vertex colors, or
/// `None` as soon as the color class sizes disagree (no isomorphism then).
fn refine_colors(g: &Digraph, h: &Digraph) -> Option<(Vec<u64>, Vec<u64>)> {
    let initial = |d: &Digraph| -> Vec<(u64, u64)> {
        (0..d.order())
            .map(|v| (d.out_degree(v), d.in_degree(v)))
            .collect()
    };
    let mut palette: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for key in initial(g).into_iter().chain(initial(h)) {
        let next = palette.len() as u64;
        palette.entry(key).or_insert(next);
    }
    let assign = |d: &Digraph, palette: &BTreeMap<(u64, u64), u64>| -> Vec<u64> {
        (0..d.order())
            .map(|v| palette[&(d.out_degree(v), d.in_degree(v))])
            .collect()
    };
    let mut cg = assign(g, &palette);
    let mut ch = assign(h, &palette);

    loop {
        if !class_sizes_match(&cg, &ch) {
            return None;
        }
        type Signature = (u64, Vec<(u64, u64)>, Vec<(u64, u64)>);
        let signature = |d: &Digraph, colors: &[u64], v: usize| -> Signature {
            let mut out: Vec<(u64, u64)> = d
                .out_neighbors(v)
                .iter()
                .map(|&(w, m)| (m, colors[w]))
                .collect();
            let mut inn: Vec<(u64, u64)> = d
                .in_neighbors(v)
                .iter()
                .map(|&(w, m)| (m, colors[w]))
                .collect();
            out.sort_unstable();
            inn.sort_unstable();
            (colors[v], out, inn)
        };
        let sig_g: Vec<Signature> = (0..g.order()).map(|v| signature(g, &cg, v)).collect();
        let sig_h: Vec<Signature> = (0..h.order()).map(|v| signature(h, &ch, v)).collect();
        let mut next_palette: BTreeMap<&Signature, u64> = BTreeMap::new();
        for sig in sig_g.iter().chain(sig_h.iter()) {
            let next = next_palette.len() as u64;
            next_palette.entry(sig).or_insert(next);
        }
        let next_g: Vec<u64> = sig_g.iter().map(|s| next_palette[s]).collect();
        let next_h: Vec<u64> = sig_h.iter().map(|s| next_palette[s]).collect();
        let stable = count_classes(&next_g) == count_classes(&cg);
        cg = next_g;
        ch = next_h;
        if stable {
            if !class_sizes_match(&cg, &ch) {
                return None;
            }
            return Some((cg, ch));
        }
    }
}

fn count_classes(colors: &[u64]) -> usize {
    let mut seen: Vec<u64> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn class_sizes_match(cg: &[u64], ch: &[u64]) -> bool {
    let histogram = |c: &[u64]| -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for &x in c {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    };
    histogram(cg) == histogram(ch)
}

enum SearchMode {
    FindOne,
    CountAll,
}

struct Search<'a> {
    g: &'a Digraph,
    h: &'a Digraph,
    colors_g: Vec<u64>,
    colors_h: Vec<u64>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
    mode: SearchMode,
    found: Vec<Vec<usize>>,
    count: u64,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Digraph,
        h: &'a Digraph,
        (colors_g, colors_h): (Vec<u64>, Vec<u64>),
        mode: SearchMode,
    ) -> Self {
        let n = g.order();
        // Most-constrained first: rare colors before common ones, ties by
        // vertex index so runs are deterministic.
        let mut class_size: BTreeMap<u64, usize> = BTreeMap::new();
        for &c in &colors_g {
            *class_size.entry(c).or_insert(0) += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (class_size[&colors_g[v]], v));
        Search {
            g,
            h,
            colors_g,
            colors_h,
            map: vec![None; n],
            used: vec![false; n],
            order,
            mode,
            found: Vec::new(),
            count: 0,
        }
    }

    fn run(&mut self, depth: usize) {
        if matches!(self.mode, SearchMode::FindOne) && !self.found.is_empty() {
            return;
        }
        if depth == self.order.len() {
            let map: Vec<usize> = self.map.iter().map(|m| m.expect("complete")).collect();
            match self.mode {
                SearchMode::FindOne => self.found.push(map),
                SearchMode::CountAll => self.count += 1,
            }
            return;
        }
        let v = self.order[depth];
        for w in 0..self.h.order() {
            if self.used[w]
                || self.colors_h[w] != self.colors_g[v]
                || !self.compatible(v, w)
            {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            self.run(depth + 1);
            self.map[v] = None;
            self.used[w] = false;
        }
    }

    /// Arc consistency of the candidate pair (v -> w) against everything
    /// already mapped, in both directions and with exact multiplicities.
    fn compatible(&self, v: usize, w: usize) -> bool {
        if self.g.multiplicity(v, v) != self.h.multiplicity(w, w) {
            return false;
        }
        for (u, mu) in self.map.iter().enumerate().filter_map(|(u, m)| m.map(|x| (u, x))) {
            if self.g.multiplicity(v, u) != self.h.multiplicity(w, mu)
                || self.g.multiplicity(u, v) != self.h.multiplicity(mu, w)
            {
                return false;
            }
        }
        true
    }
}
