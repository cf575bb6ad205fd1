//! Exhaustive search for labelings, and the exact invariants built on it.

use rayon::prelude::*;

use crate::coloring::{chromatic_number, DEFAULT_CHROMATIC_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{enumerate_abelian_groups, AbelianGroup};
use crate::labeling::{validate, Distinguish, Labeling, LabelingMode};

pub const DEFAULT_EDGE_CAP: usize = 24;

/// Addition table over element indices in canonical order (0 is the identity).
struct Table {
    k: usize,
    add: Vec<u32>,
}

impl Table {
    fn new(group: &AbelianGroup) -> Self {
        let elems: Vec<_> = group.elements().collect();
        let k = elems.len();
        let mut add = vec![0u32; k * k];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * k + j] = group.index_of(&group.add(a, b)) as u32;
            }
        }
        Table { k, add }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.k + b as usize]
    }
}

struct Search<'a> {
    g: &'a Graph,
    mode: &'a LabelingMode,
    table: Table,
    first_label: u32,
    /// vertices whose weight becomes final once edge `e` is labeled
    closes: Vec<Vec<usize>>,
    marked: Vec<bool>,
    labels: Vec<u32>,
    w: Vec<u32>,
    done: Vec<bool>,
    /// Global mode: how many finished vertices carry each weight
    used: Vec<u32>,
}

impl Search<'_> {
    /// Checks `v` against every finished vertex and marks it finished.
    fn close(&mut self, v: usize) -> bool {
        let wv = self.w[v];
        if wv == 0 && self.mode.needs_nonzero(v) {
            return false;
        }
        match self.mode.distinguish {
            Distinguish::Global => {
                if self.used[wv as usize] > 0 {
                    return false;
                }
                self.used[wv as usize] += 1;
            }
            Distinguish::Adjacent => {
                if !self.marked[v]
                    && self.g.neighbors(v).iter().any(|&u| self.done[u] && !self.marked[u] && self.w[u] == wv)
                {
                    return false;
                }
            }
        }
        self.done[v] = true;
        true
    }

    fn reopen(&mut self, v: usize) {
        self.done[v] = false;
        if self.mode.distinguish == Distinguish::Global {
            self.used[self.w[v] as usize] -= 1;
        }
    }

    fn run(&mut self, e: usize) -> bool {
        if e == self.g.edge_count() {
            return true;
        }
        let (u, v) = self.g.edges()[e];
        let closes = self.closes[e].clone();
        for x in self.first_label..self.table.k as u32 {
            let (wu, wv) = (self.w[u], self.w[v]);
            self.w[u] = self.table.add(wu, x);
            self.w[v] = self.table.add(wv, x);
            self.labels[e] = x;
            let mut closed = 0;
            while closed < closes.len() && self.close(closes[closed]) {
                closed += 1;
            }
            if closed == closes.len() && self.run(e + 1) {
                return true;
            }
            for &y in closes[..closed].iter().rev() {
                self.reopen(y);
            }
            self.w[u] = wu;
            self.w[v] = wv;
        }
        false
    }
}

/// A labeling of `g` over `group` satisfying `mode`, or `None` once the pruned
/// search over all labelings (edges in canonical order, labels in canonical
/// element order) is exhausted.
pub fn exists_labeling(g: &Graph, group: &AbelianGroup, mode: &LabelingMode, cap: usize) -> Result<Option<Labeling>> {
    if g.edge_count() > cap {
        return Err(Error::CapExceeded { what: format!("edge count {}", g.edge_count()), limit: cap });
    }
    let k = group.order() as usize;
    let n = g.n();
    // pigeonhole: n distinct weights need n elements, non-zero ones need n + 1
    let needed = n + usize::from(mode.nonzero_sums == crate::labeling::NonzeroSums::All);
    if mode.distinguish == Distinguish::Global && k < needed {
        return Ok(None);
    }
    let mut closes = vec![Vec::new(); g.edge_count()];
    for v in 0..n {
        if let Some(&u) = g.neighbors(v).iter().max_by_key(|&&u| g.edge_id(u, v)) {
            closes[g.edge_id(u, v).unwrap()].push(v);
        }
    }
    let mut search = Search {
        g,
        mode,
        table: Table::new(group),
        first_label: u32::from(mode.nowhere_zero),
        closes,
        marked: mode.marked_set(n),
        labels: vec![0; g.edge_count()],
        w: vec![0; n],
        done: vec![false; n],
        used: vec![0; k],
    };
    for v in (0..n).filter(|&v| g.degree(v) == 0) {
        if !search.close(v) {
            return Ok(None);
        }
    }
    if !search.run(0) {
        return Ok(None);
    }
    let values = search.labels.iter().map(|&i| group.element_at(i as u64)).collect();
    let f = Labeling::new(group.clone(), g, values)?;
    if !validate(g, &f, mode).pass {
        return Err(Error::Internal("search returned a labeling the validator rejects".into()));
    }
    Ok(Some(f))
}

/// Least order at which every group admits a labeling, with one witness per
/// group at that order and one failing group per smaller order tried.
#[derive(Debug, Clone)]
pub struct ExactResult {
    pub name: String,
    pub value: u64,
    pub witnesses: Vec<Labeling>,
    /// `(order, group)` for each order in `[k_start, value)`.
    pub blockers: Vec<(u64, AbelianGroup)>,
}

impl ExactResult {
    /// Re-validates every witness and re-runs the search on every blocker.
    pub fn reverify(&self, g: &Graph, mode: &LabelingMode, cap: usize) -> Result<bool> {
        if !self.witnesses.iter().all(|f| validate(g, f, mode).pass) {
            return Ok(false);
        }
        let orders: Vec<u64> = self.witnesses.iter().map(|f| f.group().order()).collect();
        if orders.iter().any(|&k| k != self.value) || orders.len() != enumerate_abelian_groups(self.value).len() {
            return Ok(false);
        }
        for (_, group) in &self.blockers {
            if exists_labeling(g, group, mode, cap)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Name of the invariant a mode computes, e.g. `s_g*` or `chi_g*`.
pub fn invariant_name(mode: &LabelingMode) -> String {
    let base = match mode.distinguish {
        Distinguish::Global => "s_g",
        Distinguish::Adjacent => "chi_g",
    };
    format!("{base}{}", if mode.nowhere_zero { "*" } else { "" })
}

/// Tests each order in `[k_start, k_max]` on its own, with no monotonicity assumed.
pub fn invariant(g: &Graph, mode: &LabelingMode, k_start: u64, k_max: u64, cap: usize) -> Result<ExactResult> {
    let mut blockers = Vec::new();
    for k in k_start.max(1)..=k_max {
        let mut witnesses = Vec::new();
        let mut blocker = None;
        for group in enumerate_abelian_groups(k) {
            match exists_labeling(g, &group, mode, cap)? {
                Some(f) => witnesses.push(f),
                None => {
                    blocker = Some(group);
                    break;
                }
            }
        }
        match blocker {
            Some(group) => blockers.push((k, group)),
            None => return Ok(ExactResult { name: invariant_name(mode), value: k, witnesses, blockers }),
        }
    }
    Err(Error::CapExceeded { what: format!("{} search order", invariant_name(mode)), limit: k_max as usize })
}

/// Closed form for the irregularity strength with zero labels allowed, on a
/// connected graph of order `n >= 3`.
pub fn closed_form_strength(g: &Graph) -> u64 {
    let n = g.n() as u64;
    // K_{1,m} with m + 2 an odd power of 3
    let exceptional_star = g.star_center().is_some() && {
        let (mut rest, mut exp) = (n + 1, 0);
        while rest % 3 == 0 {
            rest /= 3;
            exp += 1;
        }
        rest == 1 && exp % 2 == 1
    };
    if exceptional_star {
        n + 2
    } else if n % 4 == 2 {
        n + 1
    } else {
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub formula: u64,
    pub oracle: u64,
    pub agrees: bool,
}

/// Compares the exact irregularity strength (zero labels and sums allowed)
/// against [`closed_form_strength`].
pub fn verify_closed_form(g: &Graph, cap: usize) -> Result<ClosedFormCheck> {
    if g.n() < 3 || !g.is_connected() {
        return Err(Error::Precondition("needs a connected graph on at least 3 vertices".into()));
    }
    let formula = closed_form_strength(g);
    let result = invariant(g, &LabelingMode::irregular(false, false), 3, formula + 3, cap)?;
    Ok(ClosedFormCheck { formula, oracle: result.value, agrees: result.value == formula })
}

/// One graph's line in a conjecture scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub id: String,
    pub graph: Graph,
    pub chi: usize,
    pub s_star: ExactResult,
    pub chi_star: ExactResult,
}

impl ScanRow {
    pub fn s_gap(&self) -> i64 {
        self.s_star.value as i64 - self.graph.n() as i64
    }

    pub fn chi_gap(&self) -> i64 {
        self.chi_star.value as i64 - self.chi as i64
    }
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    /// Largest `s_g* − n`, with the first graph attaining it.
    pub fn max_s_gap(&self) -> Option<(i64, &str)> {
        self.rows.iter().map(|r| (r.s_gap(), r.id.as_str())).fold(None, |best, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        })
    }

    /// Largest `chi_g* − chi`, with the first graph attaining it.
    pub fn max_chi_gap(&self) -> Option<(i64, &str)> {
        self.rows.iter().map(|r| (r.chi_gap(), r.id.as_str())).fold(None, |best, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        })
    }

    /// Tab-separated `graph-id mode value witness-file blocker-group`, two
    /// lines per graph. Witness files are named `<graph-id>.<mode>.cert`;
    /// the blocker is the failing group one order below the value, or `-`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("graph-id\tmode\tvalue\twitness-file\tblocker-group\n");
        for row in &self.rows {
            for (mode, r) in [(scan_modes().0, &row.s_star), (scan_modes().1, &row.chi_star)] {
                let blocker = r
                    .blockers
                    .iter()
                    .find(|(k, _)| *k + 1 == r.value)
                    .map_or_else(|| "-".to_string(), |(_, g)| g.to_string());
                out.push_str(&format!("{}\t{mode}\t{}\t{}\t{blocker}\n", row.id, r.value, witness_file(&row.id, &mode)));
            }
        }
        out
    }
}

pub fn witness_file(id: &str, mode: &LabelingMode) -> String {
    format!("{id}.{mode}.cert")
}

/// Nowhere-zero irregular and nowhere-zero sum-coloring modes.
pub fn scan_modes() -> (LabelingMode, LabelingMode) {
    (LabelingMode::irregular(true, false), LabelingMode::sum_coloring(true, false))
}

/// Exact `s_g*` (orders from 3) and `chi_g*` (orders from 2) for every graph,
/// computed in parallel. Every graph needs at least 3 vertices in each
/// component.
pub fn conjecture_scan(corpus: &[(String, Graph)], cap: usize) -> Result<ScanReport> {
    if let Some((id, _)) = corpus.iter().find(|(_, g)| g.component_sets().iter().any(|c| c.len() < 3)) {
        return Err(Error::Precondition(format!("graph {id} has a component of order below 3")));
    }
    let (s_mode, chi_mode) = scan_modes();
    let rows = corpus
        .par_iter()
        .map(|(id, g)| {
            let n = g.n() as u64;
            Ok(ScanRow {
                id: id.clone(),
                graph: g.clone(),
                chi: chromatic_number(g, DEFAULT_CHROMATIC_CAP)?,
                s_star: invariant(g, &s_mode, 3, 2 * n + 2, cap)?,
                chi_star: invariant(g, &chi_mode, 2, 2 * n + 2, cap)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn table_matches_group() {
        let group = grp("Z2xZ4");
        let t = Table::new(&group);
        for a in 0..8 {
            for b in 0..8 {
                let (x, y) = (group.element_at(a as u64), group.element_at(b as u64));
                assert_eq!(group.element_at(t.add(a, b) as u64), group.add(&x, &y));
            }
        }
    }

    #[test]
    fn cycle_examples() {
        let c4 = cycle(4);
        let f = exists_labeling(&c4, &grp("Z2"), &LabelingMode::sum_coloring(false, false), 24).unwrap().unwrap();
        assert!(validate(&c4, &f, &LabelingMode::sum_coloring(false, false)).pass);
        assert!(exists_labeling(&c4, &grp("Z2"), &LabelingMode::sum_coloring(true, false), 24).unwrap().is_none());
    }

    #[test]
    fn double_star_over_z3() {
        let ds = double_star(2, 2);
        assert!(exists_labeling(&ds, &grp("Z3"), &LabelingMode::sum_coloring(true, false), 24).unwrap().is_none());
        let r = invariant(&ds, &LabelingMode::sum_coloring(true, false), 2, 8, 24).unwrap();
        assert_eq!(r.value, 4);
        assert!(r.reverify(&ds, &LabelingMode::sum_coloring(true, false), 24).unwrap());
    }

    #[test]
    fn irregularity_strength_examples() {
        let mode = LabelingMode::irregular(false, false);
        assert_eq!(invariant(&path(3), &mode, 3, 8, 24).unwrap().value, 3);
        assert_eq!(invariant(&path(6), &mode, 3, 10, 24).unwrap().value, 7);
    }

    #[test]
    fn closed_form_examples() {
        for (g, expected) in [(path(4), 4), (complete(4), 4), (star(5), 7), (cycle(3), 3)] {
            let check = verify_closed_form(&g, 24).unwrap();
            assert_eq!(check.formula, expected);
            assert!(check.agrees, "{check:?}");
        }
        assert_eq!(closed_form_strength(&star(25)), 28);
        assert_eq!(closed_form_strength(&star(7)), 8);
        assert_eq!(closed_form_strength(&star(6)), 7);
        assert!(matches!(verify_closed_form(&path(2), 24), Err(Error::Precondition(_))));
    }

    #[test]
    fn caps() {
        assert!(matches!(
            exists_labeling(&complete(8), &grp("Z3"), &LabelingMode::sum_coloring(true, false), 24),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            invariant(&cycle(4), &LabelingMode::sum_coloring(true, false), 2, 2, 24),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn marked_vertices_are_exempt() {
        // P3 with the center marked: the leaves may share a weight, the center must be non-zero
        let p3 = path(3);
        let mode = LabelingMode::marked(vec![1], false);
        let f = exists_labeling(&p3, &grp("Z2"), &mode, 24).unwrap();
        assert!(f.is_none(), "Z2 forces both labels to 1 and the center to 0");
        assert!(exists_labeling(&p3, &grp("Z3"), &mode, 24).unwrap().is_some());
    }

    #[test]
    fn small_scan() {
        let corpus = vec![("p3".to_string(), path(3)), ("c4".to_string(), cycle(4))];
        let report = conjecture_scan(&corpus, 24).unwrap();
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            let (s_mode, chi_mode) = scan_modes();
            assert!(row.s_star.reverify(&row.graph, &s_mode, 24).unwrap());
            assert!(row.chi_star.reverify(&row.graph, &chi_mode, 24).unwrap());
        }
        assert!(report.rows[1].chi_gap() >= 1);
        assert!(report.to_tsv().starts_with("graph-id\tmode\tvalue\twitness-file\tblocker-group\n"));
        assert!(conjecture_scan(&[("k2".into(), path(2))], 24).is_err());
    }
}
