//! Exact arboricity, decompositions into forests, and recoloring a
//! decomposition until no color class has a single-edge component.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_VERTEX_CAP: usize = 12;

/// Edge `e` belongs to forest `class[e]`, with classes numbered `0..a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecomposition {
    pub class: Vec<usize>,
    pub a: usize,
}

impl ForestDecomposition {
    /// Edge ids of class `i`, ascending.
    pub fn class_edges(&self, i: usize) -> Vec<usize> {
        (0..self.class.len()).filter(|&e| self.class[e] == i).collect()
    }

    /// Class `i` as a spanning subgraph of `g`.
    pub fn forest(&self, g: &Graph, i: usize) -> Graph {
        let removed: Vec<usize> = (0..self.class.len()).filter(|&e| self.class[e] != i).collect();
        g.without_edges(&removed)
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.class.len() == g.edge_count()
            && self.class.iter().all(|&c| c < self.a)
            && (0..self.a).all(|i| self.forest(g, i).is_forest())
    }

    /// Edges forming a whole component of their class by themselves.
    pub fn isolated_edges(&self, g: &Graph) -> Vec<usize> {
        let mut class_degree = vec![vec![0usize; self.a]; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            class_degree[u][self.class[e]] += 1;
            class_degree[v][self.class[e]] += 1;
        }
        (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.edges()[e];
                class_degree[u][self.class[e]] == 1 && class_degree[v][self.class[e]] == 1
            })
            .collect()
    }
}

/// Union-find without path compression so unions can be undone.
#[derive(Debug, Clone)]
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
    components: usize,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n).collect(), size: vec![1; n], history: Vec::new(), components: n }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `a` and `b`; false (and nothing recorded) if they
    /// were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(rb);
        self.components -= 1;
        true
    }

    fn undo(&mut self) {
        if let Some(rb) = self.history.pop() {
            let ra = self.parent[rb];
            self.size[ra] -= self.size[rb];
            self.parent[rb] = rb;
            self.components += 1;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    dsu: Vec<RollbackDsu>,
    class: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, e: usize, used: usize) -> bool {
        let m = self.g.edge_count();
        if e == m {
            return true;
        }
        // a forest with c components on n vertices still has room for c - 1 edges
        let room: usize = self.dsu.iter().map(|d| d.components - 1).sum();
        if room < m - e {
            return false;
        }
        let (u, v) = self.g.edges()[e];
        let a = self.dsu.len();
        for c in 0..a.min(used + 1) {
            if self.dsu[c].union(u, v) {
                self.class[e] = c;
                if self.run(e + 1, used.max(c + 1)) {
                    return true;
                }
                self.dsu[c].undo();
            }
        }
        false
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::CapExceeded { what: format!("vertex count {}", g.n()), limit: cap });
    }
    Ok(())
}

/// First decomposition into at most `a` forests found by backtracking over
/// edges in canonical order.
pub fn decompose_forests(g: &Graph, a: usize) -> Result<ForestDecomposition> {
    if a == 0 && g.edge_count() > 0 {
        return Err(Error::Infeasible("zero forests cannot cover a non-empty edge set".into()));
    }
    let mut search = Search { g, dsu: vec![RollbackDsu::new(g.n()); a], class: vec![0; g.edge_count()] };
    if !search.run(0, 0) {
        return Err(Error::Infeasible(format!("no decomposition into {a} forests")));
    }
    let d = ForestDecomposition { class: search.class, a };
    debug_assert!(d.is_valid(g));
    Ok(d)
}

/// `max ⌈|E(H)| / (|V(H)| - 1)⌉` over vertex sets inducing a connected
/// subgraph on at least 2 vertices.
pub fn nash_williams_bound(g: &Graph, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    let n = g.n();
    let mut best = 0;
    for mask in 1u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let h = g.induced(&vertices).graph;
        if h.is_connected() {
            best = best.max(h.edge_count().div_ceil(k - 1));
        }
    }
    Ok(best)
}

/// Least number of forests partitioning the edges, by iterative deepening,
/// checked against [`nash_williams_bound`].
pub fn arboricity(g: &Graph, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    if g.edge_count() == 0 {
        return Err(Error::Precondition("arboricity of an edgeless graph".into()));
    }
    let a = (1..).find(|&a| decompose_forests(g, a).is_ok()).unwrap();
    let bound = nash_williams_bound(g, cap)?;
    if bound != a {
        return Err(Error::Internal(format!("search gives arboricity {a}, dense-subgraph bound gives {bound}")));
    }
    Ok(a)
}

/// Edge ids of the class-`c` component containing `x`, ascending.
fn component_edges(g: &Graph, class: &[usize], c: usize, x: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    let mut stack = vec![x];
    let mut out = Vec::new();
    while let Some(y) = stack.pop() {
        for &z in g.neighbors(y) {
            let e = g.edge_id(y, z).unwrap();
            if class[e] == c && !out.contains(&e) {
                out.push(e);
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Edge ids on the `u`-`v` path inside one class, if the path exists.
fn class_path(g: &Graph, class: &[usize], c: usize, u: usize, v: usize) -> Option<Vec<usize>> {
    let mut via = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut stack = vec![u];
    while let Some(y) = stack.pop() {
        for &z in g.neighbors(y) {
            let e = g.edge_id(y, z).unwrap();
            if class[e] == c && !seen[z] {
                seen[z] = true;
                via[z] = Some((y, e));
                stack.push(z);
            }
        }
    }
    if !seen[v] {
        return None;
    }
    let mut path = Vec::new();
    let mut x = v;
    while let Some((y, e)) = via[x] {
        path.push(e);
        x = y;
    }
    path.reverse();
    Some(path)
}

/// Candidate recolorings for the isolated edge `e`, each a list of
/// `(edge, new class)` pairs, in the fixed move order.
fn candidate_moves(g: &Graph, d: &ForestDecomposition, e: usize) -> Vec<Vec<(usize, usize)>> {
    let (u, v) = g.edges()[e];
    let own = d.class[e];
    let others: Vec<usize> = (0..d.a).filter(|&c| c != own).collect();
    let mut moves = Vec::new();
    // (i) a class with no u-v path takes uv
    for &c in &others {
        if class_path(g, &d.class, c, u, v).is_none() {
            moves.push(vec![(e, c)]);
        }
    }
    // (ii) a pendant edge of an adjacent component, touching uv, joins uv
    for &c in &others {
        for x in [u, v] {
            for f in component_edges(g, &d.class, c, x) {
                let (p, q) = g.edges()[f];
                if p != x && q != x {
                    continue;
                }
                let far = if p == x { q } else { p };
                let far_degree = g.neighbors(far).iter().filter(|&&z| d.class[g.edge_id(far, z).unwrap()] == c).count();
                let near_degree = g.neighbors(x).iter().filter(|&&z| d.class[g.edge_id(x, z).unwrap()] == c).count();
                if far_degree == 1 || near_degree == 1 {
                    moves.push(vec![(f, own)]);
                }
            }
        }
    }
    // (iii) a large adjacent component gives up an end edge of its u-v path
    for &c in &others {
        if let Some(path) = class_path(g, &d.class, c, u, v) {
            if component_edges(g, &d.class, c, u).len() >= 3 {
                moves.push(vec![(path[0], own)]);
                moves.push(vec![(*path.last().unwrap(), own)]);
            }
        }
    }
    // (iv) two 2-edge paths uxv and uyv: vx moves to the second class, uv to the first
    for &c in &others {
        if let Some(path) = class_path(g, &d.class, c, u, v) {
            if path.len() == 2 {
                for &c2 in others.iter().filter(|&&c2| c2 != c) {
                    moves.push(vec![(path[1], c2), (e, c)]);
                    moves.push(vec![(path[0], c2), (e, c)]);
                }
            }
        }
    }
    moves
}

/// Recolors `d` until no class has a single-edge component. Every accepted move
/// keeps the classes acyclic and strictly lowers the number of such edges.
pub fn eliminate_isolated_edges(g: &Graph, d: &ForestDecomposition) -> Result<ForestDecomposition> {
    if !d.is_valid(g) {
        return Err(Error::Precondition("input is not a forest decomposition of the graph".into()));
    }
    for comp in g.components() {
        let h = &comp.graph;
        if h.n() == 2 || (h.n() == 3 && h.edge_count() == 3) {
            return Err(Error::Precondition(format!(
                "component containing vertex {} is an isolated edge or triangle",
                comp.to_parent[0]
            )));
        }
    }
    let mut d = d.clone();
    let budget = g.edge_count() * g.edge_count();
    for _ in 0..=budget {
        let isolated = d.isolated_edges(g);
        if isolated.is_empty() {
            return Ok(d);
        }
        let improved = isolated.iter().find_map(|&e| {
            candidate_moves(g, &d, e).into_iter().find_map(|mv| {
                let mut next = d.clone();
                for (f, c) in mv {
                    next.class[f] = c;
                }
                (next.is_valid(g) && next.isolated_edges(g).len() < isolated.len()).then_some(next)
            })
        });
        match improved {
            Some(next) => d = next,
            None => {
                return Err(Error::Internal(format!(
                    "no improving move for isolated edges {:?}",
                    isolated.iter().map(|&e| g.edges()[e]).collect::<Vec<_>>()
                )))
            }
        }
    }
    Err(Error::Internal(format!("move budget {budget} exhausted")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn arboricity_examples() {
        assert_eq!(arboricity(&complete(4), 12).unwrap(), 2);
        assert_eq!(arboricity(&complete(5), 12).unwrap(), 3);
        assert_eq!(arboricity(&complete_bipartite(3, 3), 12).unwrap(), 2);
        assert_eq!(arboricity(&double_star(2, 3), 12).unwrap(), 1);
        assert_eq!(arboricity(&cycle(5), 12).unwrap(), 2);
        assert!(matches!(arboricity(&Graph::empty(3), 12), Err(Error::Precondition(_))));
        assert!(matches!(arboricity(&path(13), 12), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn decomposition_examples() {
        let k4 = complete(4);
        let d = decompose_forests(&k4, 2).unwrap();
        assert!(d.is_valid(&k4));
        assert_eq!(d.class_edges(0).len() + d.class_edges(1).len(), 6);
        assert!(matches!(decompose_forests(&cycle(4), 1), Err(Error::Infeasible(_))));
        assert!(decompose_forests(&cycle(4), 2).unwrap().is_valid(&cycle(4)));
    }

    #[test]
    fn search_matches_dense_subgraph_bound() {
        for n in 2..=6 {
            for g in all_connected_graphs(n) {
                arboricity(&g, 12).unwrap();
            }
        }
    }

    #[test]
    fn k4_with_a_lonely_edge() {
        let k4 = complete(4);
        // star at 0, path 2-1-3, and edge (2,3) alone
        let d = ForestDecomposition { class: vec![0, 0, 0, 1, 1, 2], a: 3 };
        assert!(d.is_valid(&k4));
        assert_eq!(d.isolated_edges(&k4), vec![5]);
        let out = eliminate_isolated_edges(&k4, &d).unwrap();
        assert!(out.is_valid(&k4));
        assert!(out.isolated_edges(&k4).is_empty());
    }

    #[test]
    fn elimination_preconditions_and_fixed_point() {
        let c3 = cycle(3);
        let d = decompose_forests(&c3, 2).unwrap();
        assert!(matches!(eliminate_isolated_edges(&c3, &d), Err(Error::Precondition(_))));
        let p2 = path(4).disjoint_union(&path(2));
        let d = decompose_forests(&p2, 1).unwrap();
        assert!(matches!(eliminate_isolated_edges(&p2, &d), Err(Error::Precondition(_))));
        let p4 = path(4);
        let d = decompose_forests(&p4, 1).unwrap();
        assert_eq!(eliminate_isolated_edges(&p4, &d).unwrap(), d);
    }

    #[test]
    fn triangle_with_pendant() {
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let d = ForestDecomposition { class: vec![0, 1, 1, 1], a: 2 };
        let out = eliminate_isolated_edges(&g, &d).unwrap();
        assert!(out.isolated_edges(&g).is_empty());
    }

    #[test]
    fn elimination_on_all_small_graphs() {
        for n in 3..=6 {
            for g in all_connected_graphs(n) {
                if g.n() == 3 && g.edge_count() == 3 {
                    continue;
                }
                let a = arboricity(&g, 12).unwrap();
                for extra in 0..=1 {
                    let d = decompose_forests(&g, a + extra).unwrap();
                    let out = eliminate_isolated_edges(&g, &d).unwrap();
                    assert!(out.is_valid(&g) && out.isolated_edges(&g).is_empty(), "{:?}", g.edges());
                }
            }
        }
    }
}
