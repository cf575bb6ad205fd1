//! Simple undirected graphs on vertices `0..n`.
//!
//! Edges are kept sorted by `(min id, max id)`; an edge's position in that list
//! is its edge id, and labelings are indexed by it.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// An induced or edge-restricted piece of a parent graph together with the map
/// from its vertex ids back to the parent's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Parses the edge-list format: one `u v` pair per line separated by a
    /// single space, `#` comment lines, and an optional `n <count>` header.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            let parts: Vec<&str> = line.split(' ').collect();
            if parts.len() != 2 {
                return Err(err("expected two space-separated fields"));
            }
            let num = |s: &str| -> Result<usize> {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err(&format!("`{s}` is not a non-negative integer")));
                }
                s.parse().map_err(|_| err("integer overflow"))
            };
            if parts[0] == "n" {
                if declared.is_some() {
                    return Err(err("repeated `n` header"));
                }
                declared = Some(num(parts[1])?);
                continue;
            }
            edges.push((num(parts[0])?, num(parts[1])?));
        }
        let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match declared {
            Some(n) if n < implied => {
                return Err(Error::VertexOutOfRange { vertex: implied - 1, n });
            }
            Some(n) => n,
            None => implied,
        };
        Graph::new(n, edges)
    }

    /// Renders the edge-list format with an explicit `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// smallest vertex.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Subgraph> {
        self.component_sets().iter().map(|c| self.induced(c)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        let graph = Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph");
        Subgraph { graph, to_parent: vertices.to_vec() }
    }

    /// Same vertex set, with the edges whose ids are listed removed.
    pub fn without_edges(&self, removed: &[usize]) -> Graph {
        let mut keep = vec![true; self.edges.len()];
        for &e in removed {
            keep[e] = false;
        }
        let edges = self.edges.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
        Graph::new(self.n, edges).expect("edge subset of a simple graph")
    }

    /// Edge ids of all bridges, by depth-first low-link.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.len().checked_sub(1) {
                let (v, parent, next) = stack[top];
                if next < self.adj[v].len() {
                    let w = self.adj[v][next];
                    stack[top].2 += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(self.edge_id(p, v).unwrap());
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_sets().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() + 1 == self.n
    }

    /// `Some(center)` when the graph is a star `K_{1,m}` with `m >= 2`.
    pub fn star_center(&self) -> Option<usize> {
        if self.n < 3 || !self.is_tree() {
            return None;
        }
        (0..self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("union of simple graphs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn parse_format() {
        let g = Graph::parse_edge_list("# a path\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        let g = Graph::parse_edge_list("n 5\n2 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), &[(1, 2)]);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Graph::parse_edge_list("0 0\n"), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::parse_edge_list("0 1\n1 0\n"), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::parse_edge_list("0  1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse_edge_list("0 1\n-1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("0 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("n 2\n0 3\n"), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn bridges_examples() {
        assert_eq!(path(3).bridges(), vec![0, 1]);
        assert!(cycle(4).bridges().is_empty());
        // two triangles joined by an edge
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(g.bridges(), vec![g.edge_id(2, 3).unwrap()]);
    }

    #[test]
    fn bridges_match_removal_oracle() {
        for g in all_graphs(5).into_iter().step_by(3) {
            let base = g.component_sets().len();
            let oracle: Vec<usize> = (0..g.edge_count())
                .filter(|&e| g.without_edges(&[e]).component_sets().len() > base)
                .collect();
            assert_eq!(g.bridges(), oracle, "{g:?}");
        }
    }

    #[test]
    fn components_and_forests() {
        let k4 = complete(4);
        let comps = k4.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph.n(), 4);
        let two = cycle(3).disjoint_union(&path(4));
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].to_parent, vec![3, 4, 5, 6]);
        assert_eq!(comps[1].graph, path(4));
        assert!(path(5).is_forest());
        assert!(!cycle(5).is_forest());
        assert!(path(3).disjoint_union(&path(2)).is_forest());
    }

    #[test]
    fn star_detection() {
        assert_eq!(star(5).star_center(), Some(0));
        assert_eq!(path(3).star_center(), Some(1));
        assert_eq!(path(4).star_center(), None);
        assert_eq!(cycle(3).star_center(), None);
    }
}
