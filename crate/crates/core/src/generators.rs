//! Standard graph families and exhaustive/random corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// `K_{1,m}` with center 0.
pub fn star(m: usize) -> Graph {
    Graph::new(m + 1, (1..=m).map(|i| (0, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    Graph::new(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v)))).unwrap()
}

/// Centers 0 and 1 joined by an edge; 0 gets `p` pendant leaves, 1 gets `q`.
pub fn double_star(p: usize, q: usize) -> Graph {
    let mut edges = vec![(0, 1)];
    edges.extend((0..p).map(|i| (0, 2 + i)));
    edges.extend((0..q).map(|i| (1, 2 + p + i)));
    Graph::new(2 + p + q, edges).unwrap()
}

/// Named family with range-checked parameters, as used by the `gen` command.
pub fn family(name: &str, params: &[usize]) -> Result<Graph> {
    let arity = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::OutOfRange(format!("`{name}` takes {k} parameter(s)")));
        }
        if params.iter().any(|&p| p < 1) {
            return Err(Error::OutOfRange("parameters must be >= 1".into()));
        }
        Ok(())
    };
    match name {
        "path" => arity(1).map(|_| path(params[0])),
        "cycle" => {
            arity(1)?;
            if params[0] < 3 {
                return Err(Error::OutOfRange("cycle needs n >= 3".into()));
            }
            Ok(cycle(params[0]))
        }
        "star" => arity(1).map(|_| star(params[0])),
        "complete" => arity(1).map(|_| complete(params[0])),
        "complete-bipartite" => arity(2).map(|_| complete_bipartite(params[0], params[1])),
        "double-star" => arity(2).map(|_| double_star(params[0], params[1])),
        _ => Err(Error::OutOfRange(format!("unknown family `{name}`"))),
    }
}

/// Tree on `seq.len() + 2` vertices encoded by a Prüfer sequence.
pub fn prufer_decode(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges)
}

pub fn prufer_encode(tree: &Graph) -> Result<Vec<usize>> {
    if tree.n() < 2 || !tree.is_tree() {
        return Err(Error::Precondition("Prüfer encoding needs a tree on >= 2 vertices".into()));
    }
    let n = tree.n();
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let leaf = (0..n).find(|&v| !removed[v] && degree[v] == 1).unwrap();
        let parent = *tree.neighbors(leaf).iter().find(|&&w| !removed[w]).unwrap();
        seq.push(parent);
        removed[leaf] = true;
        degree[parent] -= 1;
    }
    Ok(seq)
}

/// All `n^(n-2)` labeled trees on `n` vertices, for `1 <= n <= 8`.
pub fn all_labeled_trees(n: usize) -> Result<Vec<Graph>> {
    if !(1..=8).contains(&n) {
        return Err(Error::OutOfRange(format!("labeled tree enumeration needs 1 <= n <= 8, got {n}")));
    }
    if n == 1 {
        return Ok(vec![Graph::empty(1)]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for mut code in 0..total {
        for slot in seq.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        out.push(prufer_decode(&seq)?);
    }
    Ok(out)
}

/// Every labeled graph on `n` vertices (edge-subset enumeration), `n <= 7`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "edge-subset enumeration is limited to n <= 7");
    let pairs: Vec<(usize, usize)> = complete(n).edges().to_vec();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(|g| g.is_connected()).collect()
}

/// Lexicographically least relabelled edge list over all vertex permutations,
/// so isomorphic graphs get equal forms. Brute force, `n <= 8`.
pub fn canonical_form(g: &Graph) -> Graph {
    fn permute(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut Vec<(usize, usize)>) {
        if k == perm.len() {
            let mut edges: Vec<(usize, usize)> =
                g.edges().iter().map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
            edges.sort_unstable();
            if edges < *best {
                *best = edges;
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(k + 1, perm, g, best);
            perm.swap(k, i);
        }
    }
    assert!(g.n() <= 8, "canonical form by permutation is limited to n <= 8");
    let mut best = g.edges().to_vec();
    permute(0, &mut (0..g.n()).collect(), g, &mut best);
    Graph::new(g.n(), best).unwrap()
}

/// One canonical representative per isomorphism class, in first-seen order.
pub fn isomorphism_classes(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut seen = std::collections::HashSet::new();
    graphs.into_iter().map(|g| canonical_form(&g)).filter(|c| seen.insert(c.clone())).collect()
}

/// Unlabeled trees on `n <= 8` vertices, grown leaf by leaf.
pub fn unlabeled_trees(n: usize) -> Result<Vec<Graph>> {
    if !(1..=8).contains(&n) {
        return Err(Error::OutOfRange(format!("unlabeled tree enumeration needs 1 <= n <= 8, got {n}")));
    }
    let mut trees = vec![Graph::empty(1)];
    for m in 2..=n {
        let grown = trees.iter().flat_map(|t| {
            (0..m - 1).map(move |v| Graph::new(m, t.edges().iter().copied().chain([(v, m - 1)])).unwrap())
        });
        trees = isomorphism_classes(grown);
    }
    Ok(trees)
}

/// Unlabeled connected graphs on `n <= 6` vertices.
pub fn unlabeled_connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "isomorphism filtering by permutation is limited to n <= 6");
    isomorphism_classes(all_connected_graphs(n))
}

/// Random graph keeping each vertex pair as an edge with probability `p`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> =
        complete(n).edges().iter().copied().filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

/// Seed of the checked-in random corpus.
pub const RANDOM_CORPUS_SEED: u64 = 20_240_917;

/// `count` random graphs with 3 to 8 vertices and edge density drawn from
/// `[0.3, 0.7]`; samples with a component on fewer than 3 vertices are
/// redrawn. Deterministic in `seed`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=8);
        let p = rng.gen_range(0.3..=0.7);
        let g = random_graph(n, p, &mut rng);
        if g.component_sets().iter().all(|c| c.len() >= 3) {
            out.push(g);
        }
    }
    out
}
