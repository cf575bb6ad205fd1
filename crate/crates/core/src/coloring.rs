//! Coloring number (degeneracy + 1) and exact chromatic number.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex order in which every vertex has fewer than `bound` neighbors before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<usize>,
    pub bound: usize,
}

impl DegeneracyOrder {
    /// Largest number of earlier neighbors over the order.
    pub fn max_back_degree(&self, g: &Graph) -> usize {
        let mut pos = vec![0; g.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        (0..g.n())
            .map(|v| g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count())
            .max()
            .unwrap_or(0)
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        sorted == (0..g.n()).collect::<Vec<_>>() && self.max_back_degree(g) < self.bound
    }
}

/// `col(G)` by repeatedly peeling a minimum-degree vertex (lowest id on ties).
/// The witness lists vertices in reverse peel order.
pub fn coloring_number(g: &Graph) -> (usize, DegeneracyOrder) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut peeled = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        peeled.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    peeled.reverse();
    let col = degeneracy + 1;
    (col, DegeneracyOrder { order: peeled, bound: col })
}

pub const DEFAULT_CHROMATIC_CAP: usize = 12;

/// Exact chromatic number by backtracking over colors `0..k` for increasing `k`.
pub fn chromatic_number(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded { what: format!("chromatic number search on {n} vertices"), limit: cap });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut colors = vec![usize::MAX; n];
    (1..=n)
        .find(|&k| {
            colors.fill(usize::MAX);
            extend_coloring(g, k, 0, 0, &mut colors)
        })
        .ok_or_else(|| Error::Internal("no proper coloring with n colors".into()))
}

fn extend_coloring(g: &Graph, k: usize, v: usize, used: usize, colors: &mut [usize]) -> bool {
    if v == g.n() {
        return true;
    }
    // a fresh color is interchangeable with any other unused one
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&w| colors[w] != c) {
            colors[v] = c;
            if extend_coloring(g, k, v + 1, used.max(c + 1), colors) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    /// Brute-force coloring number: max over vertex subsets of the subgraph's
    /// minimum degree, plus one.
    fn col_oracle(g: &Graph) -> usize {
        (1u32..1 << g.n())
            .map(|mask| {
                let vs: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
                g.induced(&vs).graph.min_degree()
            })
            .max()
            .unwrap_or(0)
            + 1
    }

    #[test]
    fn examples() {
        assert_eq!(coloring_number(&path(5)).0, 2);
        assert_eq!(coloring_number(&star(4)).0, 2);
        assert_eq!(coloring_number(&cycle(4)).0, 3);
        assert_eq!(coloring_number(&complete(4)).0, 4);
        assert_eq!(coloring_number(&Graph::empty(3)).0, 1);
        assert_eq!(chromatic_number(&cycle(5), 12).unwrap(), 3);
        assert_eq!(chromatic_number(&complete(4), 12).unwrap(), 4);
        assert_eq!(chromatic_number(&path(6), 12).unwrap(), 2);
        assert!(matches!(chromatic_number(&path(13), 12), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn peeling_matches_subgraph_oracle_and_bounds() {
        for g in all_graphs(5) {
            let (col, order) = coloring_number(&g);
            assert_eq!(col, col_oracle(&g), "{g:?}");
            assert!(order.is_valid_for(&g));
            assert_eq!(order.max_back_degree(&g) + 1, col.max(1));
            let chi = chromatic_number(&g, 12).unwrap();
            assert!(chi <= col && col <= g.max_degree() + 1);
        }
    }
}
