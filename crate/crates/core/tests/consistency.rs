//! Constructions against the exhaustive search: whenever a construction's
//! preconditions hold, the search must find a labeling too.

use std::path::Path;

use nzlabel::generators::*;
use nzlabel::irregular::label_irregular;
use nzlabel::local::{label_local, required_order};
use nzlabel::oracle::{exists_labeling, invariant, DEFAULT_EDGE_CAP};
use nzlabel::tree::label_tree;
use nzlabel::{enumerate_abelian_groups, validate, Graph, LabelingMode};

fn small_graphs() -> Vec<Graph> {
    (3..=5).flat_map(unlabeled_connected_graphs).collect()
}

#[test]
fn irregular_construction_and_search_agree() {
    let mode = LabelingMode::irregular(true, true);
    for g in small_graphs() {
        for group in enumerate_abelian_groups(2 * g.n() as u64) {
            assert!(validate(&g, &label_irregular(&g, &group).unwrap(), &mode).pass);
            assert!(exists_labeling(&g, &group, &mode, DEFAULT_EDGE_CAP).unwrap().is_some());
        }
    }
}

#[test]
fn local_construction_and_search_agree() {
    for g in small_graphs() {
        for all_nonzero in [false, true] {
            let mode = LabelingMode::marked(vec![0], all_nonzero);
            for group in enumerate_abelian_groups(required_order(&g, all_nonzero) as u64) {
                assert!(validate(&g, &label_local(&g, &group, &[0], all_nonzero).unwrap(), &mode).pass);
                assert!(exists_labeling(&g, &group, &mode, DEFAULT_EDGE_CAP).unwrap().is_some());
            }
        }
    }
}

#[test]
fn tree_construction_and_search_agree() {
    for n in 3..=7 {
        for t in unlabeled_trees(n).unwrap() {
            for (k, all_nonzero) in [(4, false), (5, true), (6, true)] {
                let mode = LabelingMode::sum_coloring(true, all_nonzero);
                for group in enumerate_abelian_groups(k) {
                    assert!(validate(&t, &label_tree(&t, &group, all_nonzero).unwrap(), &mode).pass);
                    assert!(exists_labeling(&t, &group, &mode, DEFAULT_EDGE_CAP).unwrap().is_some());
                }
            }
        }
    }
}

#[test]
fn nowhere_zero_irregularity_strength_is_at_most_2n() {
    let mode = LabelingMode::irregular(true, false);
    for g in small_graphs() {
        let n = g.n() as u64;
        let r = invariant(&g, &mode, 3, 2 * n, DEFAULT_EDGE_CAP).unwrap();
        assert!(r.value <= 2 * n);
        assert!(r.reverify(&g, &mode, DEFAULT_EDGE_CAP).unwrap());
    }
}

#[test]
fn sharpness_examples_report_actual_gaps() {
    // zero labels allowed versus forbidden, on stars and cycles
    for (g, chi_like) in [(star(3), false), (star(7), false), (cycle(4), true), (cycle(8), true)] {
        let (plain, star_mode) = if chi_like {
            (LabelingMode::sum_coloring(false, false), LabelingMode::sum_coloring(true, false))
        } else {
            (LabelingMode::irregular(false, false), LabelingMode::irregular(true, false))
        };
        let start = if chi_like { 2 } else { 3 };
        let cap = 2 * g.n() as u64 + 2;
        let a = invariant(&g, &plain, start, cap, DEFAULT_EDGE_CAP).unwrap().value;
        let b = invariant(&g, &star_mode, start, cap, DEFAULT_EDGE_CAP).unwrap().value;
        assert!(a <= b, "{:?}: {a} > {b}", g.edges());
    }
}

#[test]
fn random_corpus_files_match_the_generator() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/random");
    let expected = random_corpus(50, RANDOM_CORPUS_SEED);
    for (i, g) in expected.iter().enumerate() {
        let text = std::fs::read_to_string(dir.join(format!("random-{i:02}.txt"))).unwrap();
        assert_eq!(&Graph::parse_edge_list(&text).unwrap(), g);
    }
}
