//! Nowhere-zero sum-coloring labelings of trees over any group of order >= 4
//! (>= 5 when every vertex sum must be non-zero).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{AbelianGroup, GroupElement};
use crate::labeling::{checked, Labeling, LabelingMode};

/// First non-zero `c` (canonical order) with `m·c = 0`.
pub fn find_annihilator(group: &AbelianGroup, m: u64) -> Option<GroupElement> {
    group.nonzero_elements().find(|c| group.is_identity(&group.scalar_mul(m as i64, c)))
}

fn is_injective_multiple(group: &AbelianGroup, m: u64) -> bool {
    let images: HashSet<GroupElement> = group.elements().map(|c| group.scalar_mul(m as i64, &c)).collect();
    images.len() as u64 == group.order()
}

/// `v` with father `u` and leaf sons, peeled off the tree in one step.
#[derive(Debug, Clone)]
struct Peel {
    v: usize,
    u: usize,
    sons: Vec<usize>,
}

/// Repeatedly roots the remaining tree at its lowest leaf, walks to a deepest
/// vertex and strips the sons of that vertex's father. Stops at a single edge.
fn peel_sequence(t: &Graph) -> (Vec<Peel>, (usize, usize)) {
    let n = t.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut remaining = n;
    let mut peels = Vec::new();
    while remaining > 2 {
        let r = (0..n).find(|&v| alive[v] && deg[v] == 1).unwrap();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        depth[r] = 0;
        let mut stack = vec![r];
        let mut deepest = r;
        while let Some(x) = stack.pop() {
            if (depth[x], std::cmp::Reverse(x)) > (depth[deepest], std::cmp::Reverse(deepest)) {
                deepest = x;
            }
            for &y in t.neighbors(x) {
                if alive[y] && depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let v = parent[deepest];
        let u = parent[v];
        let sons: Vec<usize> = t.neighbors(v).iter().copied().filter(|&y| alive[y] && y != u).collect();
        for &s in &sons {
            alive[s] = false;
            remaining -= 1;
        }
        deg[v] = 1;
        peels.push(Peel { v, u, sons });
    }
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    (peels, (rest[0], rest[1]))
}

/// Nowhere-zero labeling of the tree `t` whose sums differ across every edge;
/// with `all_nonzero` no sum is the identity either.
pub fn label_tree(t: &Graph, group: &AbelianGroup, all_nonzero: bool) -> Result<Labeling> {
    if t.n() < 3 || !t.is_tree() {
        return Err(Error::Precondition("label_tree needs a tree on at least 3 vertices".into()));
    }
    let min_order = if all_nonzero { 5 } else { 4 };
    if group.order() < min_order {
        return Err(Error::Precondition(format!("group order {} is below {min_order}", group.order())));
    }
    let (peels, (x0, y0)) = peel_sequence(t);
    let zero = group.identity();
    let mut weight = vec![zero.clone(); t.n()];
    let mut label: Vec<Option<GroupElement>> = vec![None; t.edge_count()];
    let mut assign = |weight: &mut Vec<GroupElement>, a: usize, b: usize, x: &GroupElement| {
        weight[a] = group.add(&weight[a], x);
        weight[b] = group.add(&weight[b], x);
        label[t.edge_id(a, b).unwrap()] = Some(x.clone());
    };
    let first = group.element_at(1);
    assign(&mut weight, x0, y0, &first);

    for Peel { v, u, sons } in peels.iter().rev() {
        let (v, u) = (*v, *u);
        let interim = weight[v].clone();
        if group.is_identity(&interim) {
            return Err(Error::Internal(format!("vertex {v} is a leaf of the smaller tree but has sum 0")));
        }
        let m = (sons.len() - 1) as u64;
        let c = match find_annihilator(group, m) {
            Some(c) => c,
            None => {
                if !is_injective_multiple(group, m) {
                    return Err(Error::Internal(format!("{m}·x is neither annihilated nor injective on {group}")));
                }
                group
                    .nonzero_elements()
                    .find(|c| !group.is_identity(&group.add(&interim, &group.scalar_mul(m as i64, c))))
                    .ok_or_else(|| Error::Internal("no label keeps the interim sum non-zero".into()))?
            }
        };
        for &s in &sons[..sons.len() - 1] {
            assign(&mut weight, v, s, &c);
        }
        let s_v = weight[v].clone();
        if group.is_identity(&s_v) {
            return Err(Error::Internal(format!("interim sum at {v} is zero")));
        }
        let mut forbidden: HashSet<GroupElement> = [zero.clone(), group.sub(&c, &s_v), group.sub(&weight[u], &s_v)].into();
        if all_nonzero {
            forbidden.insert(group.neg(&s_v));
        }
        if forbidden.len() as u64 >= group.order() {
            return Err(Error::Internal(format!("forbidden set exhausts {group} at vertex {v}")));
        }
        let x = group.elements().find(|x| !forbidden.contains(x)).unwrap();
        let last = *sons.last().unwrap();
        assign(&mut weight, v, last, &x);
        if sons[..sons.len() - 1].iter().any(|&s| weight[s] == weight[v]) || weight[last] == weight[v] {
            return Err(Error::Internal(format!("a leaf son of {v} shares its sum")));
        }
    }

    let values = label.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Internal("unlabeled edge".into()))?;
    let f = Labeling::new(group.clone(), t, values)?;
    checked(t, f, &LabelingMode::sum_coloring(true, all_nonzero), "label_tree")
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
    fn annihilator_examples() {
        assert_eq!(find_annihilator(&grp("Z4"), 2), Some(GroupElement(vec![2])));
        assert_eq!(find_annihilator(&grp("Z5"), 3), None);
        assert_eq!(find_annihilator(&grp("Z2xZ3"), 0), Some(GroupElement(vec![0, 1])));
        assert_eq!(find_annihilator(&grp("Z4"), 1), None);
    }

    #[test]
    fn annihilator_or_injective() {
        for k in 4..=12 {
            for group in enumerate_abelian_groups(k) {
                for m in 0..8 {
                    assert!(find_annihilator(&group, m).is_some() || is_injective_multiple(&group, m));
                }
            }
        }
    }

    #[test]
    fn star_over_z4_takes_the_injective_branch() {
        let k13 = star(3);
        let f = label_tree(&k13, &grp("Z4"), false).unwrap();
        let el = |r| GroupElement(vec![r]);
        // root 1, v = 0, sons 2,3: f(01) = 1, then c = 1, then f(03) avoids {0, 3}
        assert_eq!(f.values(), &[el(1), el(1), el(1)]);
        assert!(validate(&k13, &f, &LabelingMode::sum_coloring(true, false)).pass);
    }

    #[test]
    fn paths_and_double_stars() {
        for (g, group) in [(path(4), "Z4"), (path(3), "Z2xZ2"), (double_star(2, 2), "Z4"), (double_star(2, 2), "Z2xZ2")] {
            let f = label_tree(&g, &grp(group), false).unwrap();
            assert!(validate(&g, &f, &LabelingMode::sum_coloring(true, false)).pass);
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(label_tree(&star(3), &grp("Z3"), true), Err(Error::Precondition(_))));
        assert!(matches!(label_tree(&star(3), &grp("Z3"), false), Err(Error::Precondition(_))));
        assert!(matches!(label_tree(&star(3), &grp("Z2xZ2"), true), Err(Error::Precondition(_))));
        assert!(matches!(label_tree(&path(2), &grp("Z4"), false), Err(Error::Precondition(_))));
        assert!(matches!(label_tree(&cycle(4), &grp("Z4"), false), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_trees_up_to_seven_vertices() {
        for n in 3..=7 {
            for t in all_labeled_trees(n).unwrap() {
                for k in 4..=8 {
                    for group in enumerate_abelian_groups(k) {
                        for all_nonzero in [false, true] {
                            if all_nonzero && k < 5 {
                                continue;
                            }
                            let f = label_tree(&t, &group, all_nonzero).unwrap();
                            assert!(validate(&t, &f, &LabelingMode::sum_coloring(true, all_nonzero)).pass);
                        }
                    }
                }
            }
        }
    }
}
