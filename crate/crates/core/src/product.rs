//! Sum-coloring labelings over product groups: one tree labeling per forest of
//! a decomposition, combined coordinatewise. Also the group-order bounds that
//! come with it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forest::{arboricity, decompose_forests, eliminate_isolated_edges, DEFAULT_VERTEX_CAP};
use crate::graph::Graph;
use crate::group::{enumerate_abelian_groups, AbelianGroup, GroupElement};
use crate::labeling::{checked, Labeling, LabelingMode};
use crate::tree::label_tree;

pub const DEFAULT_K_CUTOFF: u64 = 10_000;

/// Splits the primary factors of `group` into `a` non-empty blocks whose
/// orders are all at least 4. Blocks come out in the order of the first
/// factor each one holds.
pub fn factor_group(group: &AbelianGroup, a: usize) -> Option<Vec<AbelianGroup>> {
    fn rec(factors: &[u64], i: usize, blocks: &mut Vec<Vec<u64>>, a: usize) -> bool {
        if factors.len() - i < a - blocks.len() {
            return false;
        }
        if i == factors.len() {
            return blocks.iter().all(|b| b.iter().product::<u64>() >= 4);
        }
        for j in 0..blocks.len() {
            blocks[j].push(factors[i]);
            if rec(factors, i + 1, blocks, a) {
                return true;
            }
            blocks[j].pop();
        }
        if blocks.len() < a {
            blocks.push(vec![factors[i]]);
            if rec(factors, i + 1, blocks, a) {
                return true;
            }
            blocks.pop();
        }
        false
    }
    if a == 0 {
        return None;
    }
    let mut blocks = Vec::new();
    if !rec(group.factors(), 0, &mut blocks, a) {
        return None;
    }
    Some(blocks.iter().map(|b| AbelianGroup::from_cyclic_orders(b).expect("prime-power factors")).collect())
}

/// Least `k <= cutoff` such that every Abelian group of order `k` splits into
/// `a` factors of order at least 4.
pub fn k_of_a(a: usize, cutoff: u64) -> Result<u64> {
    if a == 0 {
        return Err(Error::OutOfRange("a must be at least 1".into()));
    }
    let floor = 4u64.checked_pow(a as u32).unwrap_or(u64::MAX);
    (floor..=cutoff)
        .find(|&k| enumerate_abelian_groups(k).par_iter().all(|g| factor_group(g, a).is_some()))
        .ok_or(Error::CapExceeded { what: format!("k({a}) search"), limit: cutoff as usize })
}

/// Product of the first `a` primes larger than 3.
pub fn prime_bound(a: usize) -> Result<u64> {
    let mut product: u64 = 1;
    let mut count = 0;
    let mut p = 5u64;
    while count < a {
        if (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            product = product.checked_mul(p).ok_or_else(|| Error::OutOfRange(format!("prime bound for a = {a} overflows")))?;
            count += 1;
        }
        p += 1;
    }
    Ok(product)
}

fn embed(product: &AbelianGroup, map: &[usize], x: &GroupElement) -> GroupElement {
    let mut residues = vec![0; product.rank()];
    for (fi, &pos) in map.iter().enumerate() {
        residues[pos] = x.0[fi];
    }
    GroupElement(residues)
}

fn project(map: &[usize], x: &GroupElement) -> GroupElement {
    GroupElement(map.iter().map(|&pos| x.0[pos]).collect())
}

fn is_triangle(g: &Graph) -> bool {
    g.n() == 3 && g.edge_count() == 3
}

/// Nowhere-zero labeling over `groups[0] × … × groups[a-1]` whose vertex sums
/// differ across every edge. Triangle components get three distinct non-zero
/// labels; the rest is split into `a` forests without single-edge components,
/// and forest `i` is labeled over `groups[i]`.
pub fn label_by_arboricity(g: &Graph, groups: &[AbelianGroup]) -> Result<Labeling> {
    if groups.is_empty() {
        return Err(Error::Precondition("at least one group is needed".into()));
    }
    if let Some(small) = groups.iter().find(|h| h.order() < 4) {
        return Err(Error::Precondition(format!("factor {small} has order below 4")));
    }
    let comps = g.components();
    if let Some(c) = comps.iter().find(|c| c.graph.n() == 2) {
        return Err(Error::Precondition(format!("edge {} {} is an isolated edge", c.to_parent[0], c.to_parent[1])));
    }
    let (product, maps) = AbelianGroup::direct_product(groups);
    let mut values: Vec<Option<GroupElement>> = vec![None; g.edge_count()];

    let mut rest_vertices = Vec::new();
    for c in &comps {
        if is_triangle(&c.graph) {
            let mut picks = product.nonzero_elements();
            for &(u, v) in c.graph.edges() {
                let e = g.edge_id(c.to_parent[u], c.to_parent[v]).unwrap();
                values[e] = picks.next();
            }
        } else {
            rest_vertices.extend_from_slice(&c.to_parent);
        }
    }
    rest_vertices.sort_unstable();
    let rest = g.induced(&rest_vertices);
    let a = groups.len();
    let d = decompose_forests(&rest.graph, a)
        .map_err(|_| Error::Precondition(format!("the graph does not split into {a} forests")))?;
    let d = eliminate_isolated_edges(&rest.graph, &d)?;
    for (i, group_i) in groups.iter().enumerate() {
        let forest = d.forest(&rest.graph, i);
        for tree in forest.components().into_iter().filter(|t| t.graph.n() >= 2) {
            let f = label_tree(&tree.graph, group_i, false)?;
            for (&(u, v), x) in tree.graph.edges().iter().zip(f.values()) {
                let (pu, pv) = (rest.to_parent[tree.to_parent[u]], rest.to_parent[tree.to_parent[v]]);
                values[g.edge_id(pu, pv).unwrap()] = Some(embed(&product, &maps[i], x));
            }
        }
    }

    let values = values.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Internal("unlabeled edge".into()))?;
    let f = Labeling::new(product, g, values)?;
    let w = crate::labeling::weights(g, &f)?;
    for (i, &(u, v)) in rest.graph.edges().iter().enumerate() {
        let map = &maps[d.class[i]];
        let (pu, pv) = (rest.to_parent[u], rest.to_parent[v]);
        let x = project(map, &f.values()[g.edge_id(pu, pv).unwrap()]);
        if x.0.iter().all(|&r| r == 0) || project(map, &w[pu]) == project(map, &w[pv]) {
            return Err(Error::Internal(format!("edge {pu} {pv} fails in its own coordinate")));
        }
    }
    checked(g, f, &LabelingMode::sum_coloring(true, false), "label_by_arboricity")
}

/// Same, starting from one group: it is split into `a(G)` factors of order at
/// least 4.
pub fn label_by_arboricity_in(g: &Graph, group: &AbelianGroup) -> Result<Labeling> {
    let a = if g.edge_count() == 0 { 1 } else { arboricity(g, DEFAULT_VERTEX_CAP)? };
    let parts = factor_group(group, a)
        .ok_or_else(|| Error::Precondition(format!("{group} does not split into {a} factors of order >= 4")))?;
    let f = label_by_arboricity(g, &parts)?;
    let (product, _) = AbelianGroup::direct_product(&parts);
    debug_assert_eq!(&product, group);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::labeling::validate;

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    fn names(parts: Option<Vec<AbelianGroup>>) -> Option<Vec<String>> {
        parts.map(|p| p.iter().map(|h| h.to_string()).collect())
    }

    #[test]
    fn factor_examples() {
        assert_eq!(names(factor_group(&grp("Z4xZ5xZ7"), 3)), Some(vec!["Z4".into(), "Z5".into(), "Z7".into()]));
        assert_eq!(names(factor_group(&grp("Z2xZ2xZ5xZ7"), 3)), Some(vec!["Z2xZ2".into(), "Z5".into(), "Z7".into()]));
        assert_eq!(factor_group(&grp("Z16"), 2), None);
        assert_eq!(names(factor_group(&grp("Z4xZ4"), 2)), Some(vec!["Z4".into(), "Z4".into()]));
        assert_eq!(factor_group(&grp("Z3"), 1), None);
    }

    #[test]
    fn every_group_of_order_140_splits_in_three() {
        for group in enumerate_abelian_groups(140) {
            let parts = factor_group(&group, 3).unwrap();
            assert!(parts.iter().all(|h| h.order() >= 4));
            assert_eq!(AbelianGroup::direct_product(&parts).0, group);
        }
    }

    #[test]
    fn k_values() {
        assert_eq!(k_of_a(1, DEFAULT_K_CUTOFF).unwrap(), 4);
        assert_eq!(k_of_a(2, DEFAULT_K_CUTOFF).unwrap(), 20);
        let k3 = k_of_a(3, DEFAULT_K_CUTOFF).unwrap();
        assert!(k3 <= 140);
        assert!(matches!(k_of_a(2, 19), Err(Error::CapExceeded { .. })));
        for a in 1..=3 {
            assert!(k_of_a(a, DEFAULT_K_CUTOFF).unwrap() <= prime_bound(a).unwrap());
        }
    }

    #[test]
    fn prime_bounds() {
        assert_eq!(prime_bound(1).unwrap(), 5);
        assert_eq!(prime_bound(2).unwrap(), 35);
        assert_eq!(prime_bound(3).unwrap(), 385);
    }

    #[test]
    fn k4_over_z4_times_z5() {
        let k4 = complete(4);
        let f = label_by_arboricity(&k4, &[grp("Z4"), grp("Z5")]).unwrap();
        assert!(validate(&k4, &f, &LabelingMode::sum_coloring(true, false)).pass);
        assert_eq!(f.group(), &grp("Z4xZ5"));
    }

    #[test]
    fn triangle_and_tree() {
        let c3 = cycle(3);
        let f = label_by_arboricity(&c3, &[grp("Z4")]).unwrap();
        assert!(validate(&c3, &f, &LabelingMode::sum_coloring(true, false)).pass);
        let t = double_star(2, 2);
        let f = label_by_arboricity(&t, &[grp("Z4")]).unwrap();
        assert_eq!(f, label_tree(&t, &grp("Z4"), false).unwrap());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(label_by_arboricity(&path(2), &[grp("Z4")]), Err(Error::Precondition(_))));
        assert!(matches!(label_by_arboricity(&complete(4), &[grp("Z4")]), Err(Error::Precondition(_))));
        assert!(matches!(label_by_arboricity(&path(4), &[grp("Z3")]), Err(Error::Precondition(_))));
        assert!(matches!(label_by_arboricity_in(&complete(4), &grp("Z16")), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_small_graphs_at_their_arboricity() {
        for n in 3..=6 {
            for g in all_connected_graphs(n) {
                let a = arboricity(&g, 12).unwrap();
                let groups: Vec<AbelianGroup> = (0..a).map(|i| grp(["Z4", "Z2xZ2", "Z5"][i % 3])).collect();
                let f = label_by_arboricity(&g, &groups).unwrap();
                assert!(validate(&g, &f, &LabelingMode::sum_coloring(true, false)).pass);
            }
        }
        let f = label_by_arboricity_in(&complete(5), &grp("Z4xZ5xZ7")).unwrap();
        assert!(validate(&complete(5), &f, &LabelingMode::sum_coloring(true, false)).pass);
    }
}
