//! Nowhere-zero labelings whose vertex sums properly color the graph, over any
//! group of order at least `Δ + col - 1` (or `Δ + col + 1` when every sum must
//! be non-zero), with an optional set of marked vertices that only need a
//! non-zero sum.
//!
//! The recursion removes edges at a minimum-degree vertex, solves the pieces,
//! and then picks the removed labels one at a time. It is run as an explicit
//! work stack: descending produces a list of records, which are replayed in
//! reverse so every piece is labeled before the step that split it off.

use std::collections::{BTreeSet, HashSet};

use crate::coloring::coloring_number;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{AbelianGroup, GroupElement};
use crate::labeling::{checked, Labeling, LabelingMode};

/// `Δ(G) + col(G) - 1`, or `Δ(G) + col(G) + 1` with `all_nonzero`.
pub fn required_order(g: &Graph, all_nonzero: bool) -> usize {
    let (col, _) = coloring_number(g);
    let base = g.max_degree() + col;
    if all_nonzero {
        base + 1
    } else {
        base - 1
    }
}

struct Task {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    marked: BTreeSet<usize>,
}

enum Record {
    /// Three-vertex component, solved by exhaustive search.
    Base { edges: Vec<(usize, usize)>, marked: BTreeSet<usize> },
    /// `v` was a leaf hanging off `v1`.
    Pendant { v: usize, v1: usize, v1_others: Vec<usize>, v1_marked: bool, max_degree: usize },
    /// Edges `v v1` and `v v2` were removed at a vertex of degree `delta >= 2`.
    TwoEdges {
        v: usize,
        v1: usize,
        v2: usize,
        v_others: Vec<usize>,
        v1_others: Vec<usize>,
        v2_others: Vec<usize>,
        marked: [bool; 3],
        max_degree: usize,
        delta: usize,
    },
}

struct Replay<'a> {
    g: &'a Graph,
    group: &'a AbelianGroup,
    all_nonzero: bool,
    weight: Vec<GroupElement>,
    label: Vec<Option<GroupElement>>,
}

impl Replay<'_> {
    fn assign(&mut self, u: usize, v: usize, x: GroupElement) {
        self.weight[u] = self.group.add(&self.weight[u], &x);
        self.weight[v] = self.group.add(&self.weight[v], &x);
        self.label[self.g.edge_id(u, v).unwrap()] = Some(x);
    }

    /// Forbidden values for a label added at `x` so that `x` ends up distinct
    /// from `others` (unmarked) or non-zero (marked / all non-zero).
    fn constrain(&self, forbidden: &mut HashSet<GroupElement>, x: usize, others: &[usize], marked: bool) {
        let g = self.group;
        let wx = &self.weight[x];
        if !marked {
            for &y in others {
                forbidden.insert(g.sub(&self.weight[y], wx));
            }
        }
        if marked || self.all_nonzero {
            forbidden.insert(g.neg(wx));
        }
    }

    fn pick(&self, forbidden: &HashSet<GroupElement>, bound: usize, what: &str) -> Result<GroupElement> {
        if forbidden.len() > bound || forbidden.len() as u64 >= self.group.order() {
            return Err(Error::Internal(format!(
                "{what}: {} forbidden values (bound {bound}, group order {})",
                forbidden.len(),
                self.group.order()
            )));
        }
        Ok(self.group.elements().find(|x| !forbidden.contains(x)).unwrap())
    }

    fn base(&mut self, edges: &[(usize, usize)], marked: &BTreeSet<usize>) -> Result<()> {
        let group = self.group;
        let nonzero: Vec<GroupElement> = group.nonzero_elements().collect();
        let m = edges.len();
        let mut idx = vec![0usize; m];
        loop {
            let mut w = std::collections::HashMap::new();
            for (&(u, v), &i) in edges.iter().zip(&idx) {
                for x in [u, v] {
                    let cur = w.entry(x).or_insert_with(|| group.identity());
                    *cur = group.add(cur, &nonzero[i]);
                }
            }
            let ok_sums = w.iter().all(|(x, s)| {
                !((marked.contains(x) || self.all_nonzero) && group.is_identity(s))
            });
            let ok_adj = edges
                .iter()
                .all(|(u, v)| marked.contains(u) || marked.contains(v) || w[u] != w[v]);
            if ok_sums && ok_adj {
                for (&(u, v), &i) in edges.iter().zip(&idx) {
                    self.assign(u, v, nonzero[i].clone());
                }
                return Ok(());
            }
            // next tuple, lexicographic
            let mut pos = m;
            loop {
                if pos == 0 {
                    return Err(Error::Internal("three-vertex component admits no labeling".into()));
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < nonzero.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn run(&mut self, record: &Record) -> Result<()> {
        let zero = self.group.identity();
        match record {
            Record::Base { edges, marked } => self.base(edges, marked),
            &Record::Pendant { v, v1, ref v1_others, v1_marked, max_degree } => {
                let mut forbidden: HashSet<GroupElement> = [zero.clone()].into();
                self.constrain(&mut forbidden, v1, v1_others, v1_marked);
                let a = self.pick(&forbidden, max_degree + 1, "pendant edge")?;
                self.assign(v, v1, a);
                Ok(())
            }
            &Record::TwoEdges { v, v1, v2, ref v_others, ref v1_others, ref v2_others, marked, max_degree, delta } => {
                let [v_marked, v1_marked, v2_marked] = marked;
                let nz = usize::from(self.all_nonzero);
                // f(v v2): v and v1 both gain f(v v1) later, so settle w(v) != w(v1) now
                let mut forbidden: HashSet<GroupElement> = [zero.clone()].into();
                forbidden.insert(self.group.sub(&self.weight[v1], &self.weight[v]));
                self.constrain(&mut forbidden, v2, v2_others, v2_marked);
                let b = self.pick(&forbidden, max_degree + 1 + nz, "second removed edge")?;
                self.assign(v, v2, b);

                let mut forbidden: HashSet<GroupElement> = [zero.clone()].into();
                self.constrain(&mut forbidden, v1, v1_others, v1_marked);
                self.constrain(&mut forbidden, v, v_others, v_marked);
                let a = self.pick(&forbidden, max_degree + delta - 1 + 2 * nz, "first removed edge")?;
                self.assign(v, v1, a);
                Ok(())
            }
        }
    }
}

fn others(x: usize, edges: &[(usize, usize)], skip: &[usize]) -> Vec<usize> {
    edges
        .iter()
        .filter_map(|&(a, b)| if a == x { Some(b) } else if b == x { Some(a) } else { None })
        .filter(|y| !skip.contains(y))
        .collect()
}

/// Vertex set and edge list of one piece.
type Piece = (Vec<usize>, Vec<(usize, usize)>);

/// Splits a task's edge set into connected pieces over the task's vertices.
fn split(vertices: &[usize], edges: &[(usize, usize)], n: usize) -> Vec<Piece> {
    let h = Graph::new(n, edges.iter().copied()).expect("subgraph of a simple graph");
    let inside: HashSet<usize> = vertices.iter().copied().collect();
    h.component_sets()
        .into_iter()
        .filter(|c| inside.contains(&c[0]))
        .map(|c| {
            let set: HashSet<usize> = c.iter().copied().collect();
            let es = edges.iter().copied().filter(|(u, _)| set.contains(u)).collect();
            (c, es)
        })
        .collect()
}

/// Nowhere-zero labeling where marked vertices get non-zero sums and every
/// edge with both ends unmarked joins vertices of different sums. With
/// `all_nonzero` every vertex sum is non-zero as well.
pub fn label_local(g: &Graph, group: &AbelianGroup, marked: &[usize], all_nonzero: bool) -> Result<Labeling> {
    let n = g.n();
    if let Some(c) = g.component_sets().iter().find(|c| c.len() < 3) {
        return Err(Error::Precondition(format!("component containing vertex {} has order {}", c[0], c.len())));
    }
    if let Some(&bad) = marked.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    let need = required_order(g, all_nonzero);
    if (group.order() as usize) < need {
        return Err(Error::Precondition(format!("group order {} is below the required {need}", group.order())));
    }

    let top_marked: BTreeSet<usize> = marked.iter().copied().collect();
    let mut stack: Vec<Task> = split(&(0..n).collect::<Vec<_>>(), g.edges(), n)
        .into_iter()
        .rev()
        .map(|(vertices, edges)| {
            let marked = vertices.iter().copied().filter(|v| top_marked.contains(v)).collect();
            Task { vertices, edges, marked }
        })
        .collect();
    let mut records = Vec::new();

    while let Some(task) = stack.pop() {
        match task.vertices.len() {
            1 => continue,
            2 => return Err(Error::Internal("recursion produced a component of order 2".into())),
            3 => {
                records.push(Record::Base { edges: task.edges, marked: task.marked });
                continue;
            }
            _ => {}
        }
        let degree = |x: usize| task.edges.iter().filter(|&&(a, b)| a == x || b == x).count();
        let max_degree = task.vertices.iter().map(|&x| degree(x)).max().unwrap();
        let v = *task.vertices.iter().min_by_key(|&&x| (degree(x), x)).unwrap();
        let mut nb = others(v, &task.edges, &[]);
        nb.sort_unstable();
        let delta = nb.len();
        let is_marked = |x: usize| task.marked.contains(&x);

        if delta == 1 {
            let v1 = nb[0];
            records.push(Record::Pendant {
                v,
                v1,
                v1_others: others(v1, &task.edges, &[v]),
                v1_marked: is_marked(v1),
                max_degree,
            });
            let mut marked = task.marked.clone();
            marked.insert(v1);
            marked.remove(&v);
            let vertices: Vec<usize> = task.vertices.iter().copied().filter(|&x| x != v).collect();
            let edges: Vec<(usize, usize)> = task.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
            stack.push(Task { vertices, edges, marked });
        } else {
            let (v1, v2) = (nb[0], nb[1]);
            records.push(Record::TwoEdges {
                v,
                v1,
                v2,
                v_others: others(v, &task.edges, &[v1]),
                v1_others: others(v1, &task.edges, &[v]),
                v2_others: others(v2, &task.edges, &[v, v1]),
                marked: [is_marked(v), is_marked(v1), is_marked(v2)],
                max_degree,
                delta,
            });
            let removed = [(v.min(v1), v.max(v1)), (v.min(v2), v.max(v2))];
            let edges: Vec<(usize, usize)> = task.edges.iter().copied().filter(|e| !removed.contains(e)).collect();
            for (vertices, edges) in split(&task.vertices, &edges, n).into_iter().rev() {
                if vertices.len() == 2 {
                    return Err(Error::Internal(format!("removing edges at {v} left a component of order 2")));
                }
                let marked = vertices.iter().copied().filter(|&x| x != v && task.marked.contains(&x)).collect();
                stack.push(Task { vertices, edges, marked });
            }
        }
    }

    let mut replay = Replay {
        g,
        group,
        all_nonzero,
        weight: vec![group.identity(); n],
        label: vec![None; g.edge_count()],
    };
    for record in records.iter().rev() {
        replay.run(record)?;
    }
    let values = replay
        .label
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("unlabeled edge after replay".into()))?;
    let f = Labeling::new(group.clone(), g, values)?;
    checked(g, f, &LabelingMode::marked(marked.to_vec(), all_nonzero), "label_local")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::group::enumerate_abelian_groups;
    use crate::labeling::validate;

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn required_order_examples() {
        assert_eq!(required_order(&cycle(4), false), 4);
        assert_eq!(required_order(&star(3), false), 4);
        assert_eq!(required_order(&double_star(2, 2), false), 4);
        assert_eq!(required_order(&complete(4), true), 8);
    }

    #[test]
    fn spec_examples() {
        let c4 = cycle(4);
        let f = label_local(&c4, &grp("Z4"), &[], false).unwrap();
        assert!(validate(&c4, &f, &LabelingMode::sum_coloring(true, false)).pass);

        let k13 = star(3);
        let f = label_local(&k13, &grp("Z4"), &[0], false).unwrap();
        let w = crate::labeling::weights(&k13, &f).unwrap();
        assert!(!grp("Z4").is_identity(&w[0]));
        assert!(validate(&k13, &f, &LabelingMode::marked(vec![0], false)).pass);

        let tri = cycle(3);
        let f = label_local(&tri, &grp("Z4"), &[], false).unwrap();
        assert!(validate(&tri, &f, &LabelingMode::sum_coloring(true, false)).pass);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(label_local(&cycle(4), &grp("Z3"), &[], false), Err(Error::Precondition(_))));
        assert!(matches!(label_local(&cycle(4), &grp("Z5"), &[], true), Err(Error::Precondition(_))));
        assert!(matches!(label_local(&path(2), &grp("Z7"), &[], false), Err(Error::Precondition(_))));
        assert!(matches!(label_local(&path(3), &grp("Z7"), &[5], false), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn all_small_graphs_every_marked_set() {
        for n in 3..=5 {
            for g in all_graphs(n).into_iter().filter(|g| g.component_sets().iter().all(|c| c.len() >= 3)) {
                for all_nonzero in [false, true] {
                    let k = required_order(&g, all_nonzero) as u64;
                    for group in enumerate_abelian_groups(k) {
                        for mask in (0u32..1 << n).step_by(if n == 5 { 7 } else { 1 }) {
                            let marked: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                            let f = label_local(&g, &group, &marked, all_nonzero)
                                .unwrap_or_else(|e| panic!("{g:?} {group} {marked:?}: {e}"));
                            assert!(validate(&g, &f, &LabelingMode::marked(marked, all_nonzero)).pass);
                        }
                    }
                }
            }
        }
    }
}
