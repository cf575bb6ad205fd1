//! Nowhere-zero, non-zero-sum irregular labelings over any Abelian group of
//! order at least `2n`.
//!
//! The graph is peeled down to nothing by [`reduction_sequence`]; the labeling
//! is then rebuilt by replaying the steps backwards, each time choosing the
//! first group element (in canonical order) outside a small forbidden set.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{AbelianGroup, GroupElement};
use crate::labeling::{checked, Labeling, LabelingMode};

/// One peel. Vertex ids are those of the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// A whole `P3` component; `leaves` sorted ascending.
    RemoveP3Component { center: usize, leaves: [usize; 2] },
    /// An edge lying on a cycle of its component.
    RemoveNonBridgeEdge { edge: (usize, usize) },
    /// A leaf edge of a tree component of order >= 4, together with its leaf.
    RemoveLeafEdgeWithPendant { edge: (usize, usize), pendant: usize },
}

fn check_component_orders(g: &Graph) -> Result<()> {
    if let Some(c) = g.component_sets().iter().find(|c| c.len() < 3) {
        return Err(Error::Precondition(format!(
            "component containing vertex {} has order {} (< 3)",
            c[0],
            c.len()
        )));
    }
    Ok(())
}

/// Peels `g` to the empty graph. Preference order: a `P3` component, then a
/// non-bridge edge, then (the graph now being a forest) a leaf edge with its
/// pendant vertex. Ties go to the lowest component, then the smallest edge.
pub fn reduction_sequence(g: &Graph) -> Result<Vec<ReductionStep>> {
    check_component_orders(g)?;
    let mut alive_v = vec![true; g.n()];
    let mut alive_e = vec![true; g.edge_count()];
    let mut steps = Vec::new();
    loop {
        let edges = g.edges().iter().zip(&alive_e).filter(|(_, &a)| a).map(|(&e, _)| e);
        let h = Graph::new(g.n(), edges).expect("subgraph of a simple graph");
        let comps: Vec<Vec<usize>> = h.component_sets().into_iter().filter(|c| alive_v[c[0]]).collect();
        if comps.is_empty() {
            return Ok(steps);
        }
        if let Some(c) = comps.iter().find(|c| c.len() < 3) {
            return Err(Error::Internal(format!("reduction left a component of order {}", c.len())));
        }
        let step = next_step(&h, &comps);
        match step {
            ReductionStep::RemoveP3Component { center, leaves } => {
                for v in [center, leaves[0], leaves[1]] {
                    alive_v[v] = false;
                }
                for leaf in leaves {
                    alive_e[g.edge_id(center, leaf).unwrap()] = false;
                }
            }
            ReductionStep::RemoveNonBridgeEdge { edge } => {
                alive_e[g.edge_id(edge.0, edge.1).unwrap()] = false;
            }
            ReductionStep::RemoveLeafEdgeWithPendant { edge, pendant } => {
                alive_e[g.edge_id(edge.0, edge.1).unwrap()] = false;
                alive_v[pendant] = false;
            }
        }
        steps.push(step);
    }
}

fn next_step(h: &Graph, comps: &[Vec<usize>]) -> ReductionStep {
    let edges_in = |c: &[usize]| -> Vec<(usize, usize)> {
        h.edges().iter().copied().filter(|&(u, _)| c.binary_search(&u).is_ok()).collect()
    };
    for c in comps {
        if c.len() == 3 && edges_in(c).len() == 2 {
            let center = *c.iter().find(|&&v| h.degree(v) == 2).unwrap();
            let mut leaves = [0; 2];
            for (slot, &v) in leaves.iter_mut().zip(c.iter().filter(|&&v| v != center)) {
                *slot = v;
            }
            return ReductionStep::RemoveP3Component { center, leaves };
        }
    }
    let bridges: HashSet<usize> = h.bridges().into_iter().collect();
    for c in comps {
        if let Some(edge) = edges_in(c).into_iter().find(|&(u, v)| !bridges.contains(&h.edge_id(u, v).unwrap())) {
            return ReductionStep::RemoveNonBridgeEdge { edge };
        }
    }
    // every component is now a tree of order >= 4
    let c = &comps[0];
    let (u, v) = edges_in(c).into_iter().find(|&(u, v)| h.degree(u) == 1 || h.degree(v) == 1).unwrap();
    let pendant = if h.degree(u) == 1 { u } else { v };
    ReductionStep::RemoveLeafEdgeWithPendant { edge: (u, v), pendant }
}

/// First element of `group` outside `forbidden`, after checking the forbidden
/// set against the counting bound that guarantees a choice exists.
fn pick(group: &AbelianGroup, forbidden: &HashSet<GroupElement>, bound: usize, what: &str) -> Result<GroupElement> {
    if forbidden.len() > bound {
        return Err(Error::Internal(format!("{what}: {} forbidden values exceed the bound {bound}", forbidden.len())));
    }
    if forbidden.len() as u64 >= group.order() {
        return Err(Error::Internal(format!("{what}: forbidden set exhausts {group}")));
    }
    group
        .elements()
        .find(|x| !forbidden.contains(x))
        .ok_or_else(|| Error::Internal(format!("{what}: no admissible element")))
}

/// Nowhere-zero, non-zero-sum `group`-irregular labeling of `g`.
///
/// Requires every component to have order at least 3 and `|group| >= 2n`.
pub fn label_irregular(g: &Graph, group: &AbelianGroup) -> Result<Labeling> {
    check_component_orders(g)?;
    let n = g.n();
    if group.order() < 2 * n as u64 {
        return Err(Error::Precondition(format!("group order {} is below 2n = {}", group.order(), 2 * n)));
    }
    let steps = reduction_sequence(g)?;
    let zero = group.identity();
    let mut alive = vec![false; n];
    let mut weight = vec![zero.clone(); n];
    let mut label: Vec<Option<GroupElement>> = vec![None; g.edge_count()];
    let set_label = |label: &mut Vec<Option<GroupElement>>, u: usize, v: usize, x: GroupElement| {
        label[g.edge_id(u, v).unwrap()] = Some(x);
    };

    for step in steps.iter().rev() {
        let before = weight.clone();
        let present: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
        match *step {
            ReductionStep::RemoveP3Component { center, leaves: [v, w] } => {
                let n_cur = present.len() + 3;
                let mut forbidden: HashSet<GroupElement> = present.iter().map(|&x| weight[x].clone()).collect();
                forbidden.insert(zero.clone());
                let a = pick(group, &forbidden, 1 + (n_cur - 3), "P3 first label")?;
                let mut forbidden: HashSet<GroupElement> = HashSet::new();
                forbidden.insert(zero.clone());
                forbidden.insert(a.clone());
                forbidden.insert(group.neg(&a));
                for &x in &present {
                    forbidden.insert(weight[x].clone());
                    forbidden.insert(group.sub(&weight[x], &a));
                }
                let b = pick(group, &forbidden, 3 + 2 * (n_cur - 3), "P3 second label")?;
                weight[v] = a.clone();
                weight[w] = b.clone();
                weight[center] = group.add(&a, &b);
                set_label(&mut label, center, v, a);
                set_label(&mut label, center, w, b);
                for x in [center, v, w] {
                    alive[x] = true;
                }
            }
            ReductionStep::RemoveNonBridgeEdge { edge: (u, v) } => {
                let n_cur = present.len();
                let (wu, wv) = (weight[u].clone(), weight[v].clone());
                let mut forbidden: HashSet<GroupElement> = [zero.clone(), group.neg(&wu), group.neg(&wv)].into();
                for &x in present.iter().filter(|&&x| x != u && x != v) {
                    forbidden.insert(group.sub(&weight[x], &wu));
                    forbidden.insert(group.sub(&weight[x], &wv));
                }
                let a = pick(group, &forbidden, 3 + 2 * (n_cur - 2), "cycle edge label")?;
                weight[u] = group.add(&wu, &a);
                weight[v] = group.add(&wv, &a);
                set_label(&mut label, u, v, a);
            }
            ReductionStep::RemoveLeafEdgeWithPendant { edge: (x0, y0), pendant: u } => {
                let v = if x0 == u { y0 } else { x0 };
                let n_cur = present.len() + 1;
                let wv = weight[v].clone();
                let mut forbidden: HashSet<GroupElement> = [zero.clone(), group.neg(&wv)].into();
                for &x in present.iter().filter(|&&x| x != v) {
                    forbidden.insert(weight[x].clone());
                    forbidden.insert(group.sub(&weight[x], &wv));
                }
                let a = pick(group, &forbidden, 2 + 2 * (n_cur - 2), "leaf edge label")?;
                weight[u] = a.clone();
                weight[v] = group.add(&wv, &a);
                set_label(&mut label, u, v, a);
                alive[u] = true;
            }
        }
        let changed = (0..n).filter(|&x| weight[x] != before[x]).count();
        if changed > 3 {
            return Err(Error::Internal(format!("a single step changed {changed} weights")));
        }
        let live: Vec<&GroupElement> = (0..n).filter(|&x| alive[x]).map(|x| &weight[x]).collect();
        let distinct: HashSet<&GroupElement> = live.iter().copied().collect();
        if distinct.len() != live.len() || live.iter().any(|x| group.is_identity(x)) {
            return Err(Error::Internal(format!("partial labeling lost irregularity after {step:?}")));
        }
    }

    let values = label.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Internal("unlabeled edge after replay".into()))?;
    let f = Labeling::new(group.clone(), g, values)?;
    checked(g, f, &LabelingMode::irregular(true, true), "label_irregular")
}
