//! Edge labelings, induced vertex weights, validators and the certificate format.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{AbelianGroup, GroupElement};

/// Edge labeling bound to a group and to the edge list of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    group: AbelianGroup,
    n: usize,
    edges: Vec<(usize, usize)>,
    values: Vec<GroupElement>,
}

/// `w(v)` for every vertex.
pub type WeightMap = Vec<GroupElement>;

impl Labeling {
    /// `values[i]` labels edge id `i` of `g`.
    pub fn new(group: AbelianGroup, g: &Graph, values: Vec<GroupElement>) -> Result<Self> {
        if values.len() != g.edge_count() {
            return Err(Error::UnboundLabeling);
        }
        if let Some(bad) = values.iter().find(|x| !group.contains(x)) {
            return Err(Error::OutOfRange(format!("{bad} is not an element of {group}")));
        }
        Ok(Labeling { group, n: g.n(), edges: g.edges().to_vec(), values })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_bound_to(&self, g: &Graph) -> bool {
        self.n == g.n() && self.edges == g.edges()
    }

    /// Renders the certificate: a `group` header, one `u v (r1,...,rt)` line
    /// per edge, and optionally `# weight` comment lines.
    pub fn to_certificate(&self, with_weights: bool) -> String {
        let mut s = format!("group {}\n", self.group);
        for (&(u, v), x) in self.edges.iter().zip(&self.values) {
            let _ = writeln!(s, "{u} {v} {x}");
        }
        if with_weights {
            for (v, w) in raw_weights(&self.group, self.n, &self.edges, &self.values).iter().enumerate() {
                let _ = writeln!(s, "# weight {v} {w}");
            }
        }
        s
    }

    /// Reads a certificate and binds it to `g`; every edge of `g` must be
    /// labeled exactly once.
    pub fn parse_certificate(text: &str, g: &Graph) -> Result<Self> {
        let mut group: Option<AbelianGroup> = None;
        let mut values: Vec<Option<GroupElement>> = vec![None; g.edge_count()];
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(spec) = line.strip_prefix("group ") {
                if group.is_some() {
                    return Err(err("repeated group header".into()));
                }
                group = Some(AbelianGroup::parse(spec)?);
                continue;
            }
            let grp = group.as_ref().ok_or_else(|| err("edge line before group header".into()))?;
            let mut parts = line.splitn(3, ' ');
            let (u, v, elem) = match (parts.next(), parts.next(), parts.next()) {
                (Some(u), Some(v), Some(e)) => (u, v, e),
                _ => return Err(err("expected `u v (r1,...,rt)`".into())),
            };
            let u: usize = u.parse().map_err(|_| err(format!("bad vertex `{u}`")))?;
            let v: usize = v.parse().map_err(|_| err(format!("bad vertex `{v}`")))?;
            let x = parse_element(grp, elem).map_err(|e| err(e.to_string()))?;
            let id = g.edge_id(u, v).ok_or_else(|| err(format!("{u} {v} is not an edge of the graph")))?;
            if values[id].replace(x).is_some() {
                return Err(err(format!("edge {u} {v} labeled twice")));
            }
        }
        let group = group.ok_or(Error::Parse { line: 0, msg: "missing group header".into() })?;
        let values = values.into_iter().collect::<Option<Vec<_>>>().ok_or(Error::UnboundLabeling)?;
        Labeling::new(group, g, values)
    }
}

/// Parses `(r1,...,rt)` against the group's factor sequence.
pub fn parse_element(group: &AbelianGroup, text: &str) -> Result<GroupElement> {
    let inner = text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::OutOfRange(format!("`{text}` is not a residue vector")))?;
    let residues = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|r| r.parse::<u64>().map_err(|_| Error::OutOfRange(format!("bad residue `{r}`"))))
            .collect::<Result<Vec<_>>>()?
    };
    group.element(residues)
}

fn raw_weights(
    group: &AbelianGroup,
    n: usize,
    edges: &[(usize, usize)],
    values: &[GroupElement],
) -> WeightMap {
    let mut w = vec![group.identity(); n];
    for (&(u, v), x) in edges.iter().zip(values) {
        w[u] = group.add(&w[u], x);
        w[v] = group.add(&w[v], x);
    }
    w
}

/// Weighted degrees; isolated vertices get the identity.
pub fn weights(g: &Graph, f: &Labeling) -> Result<WeightMap> {
    if !f.is_bound_to(g) {
        return Err(Error::UnboundLabeling);
    }
    Ok(raw_weights(&f.group, f.n, &f.edges, &f.values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distinguish {
    /// All vertex weights pairwise distinct.
    Global,
    /// Weights differ across every edge (proper sum coloring).
    Adjacent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonzeroSums {
    None,
    /// Only the marked vertices need non-zero weight.
    Marked,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelingMode {
    pub distinguish: Distinguish,
    pub nowhere_zero: bool,
    pub nonzero_sums: NonzeroSums,
    /// Marked vertices: exempt from adjacent distinctness, and required to be
    /// non-zero unless `nonzero_sums` is `None`. Sorted, deduplicated.
    pub marked: Vec<usize>,
}

impl LabelingMode {
    pub fn new(
        distinguish: Distinguish,
        nowhere_zero: bool,
        nonzero_sums: NonzeroSums,
        mut marked: Vec<usize>,
    ) -> Result<Self> {
        if distinguish == Distinguish::Global && (!marked.is_empty() || nonzero_sums == NonzeroSums::Marked) {
            return Err(Error::Precondition("a marked set only applies to sum coloring".into()));
        }
        marked.sort_unstable();
        marked.dedup();
        Ok(LabelingMode { distinguish, nowhere_zero, nonzero_sums, marked })
    }

    /// `G`-irregular labeling; `nowhere_zero` forbids identity labels and
    /// `nonzero` additionally forbids identity weights.
    pub fn irregular(nowhere_zero: bool, nonzero: bool) -> Self {
        let sums = if nonzero { NonzeroSums::All } else { NonzeroSums::None };
        LabelingMode { distinguish: Distinguish::Global, nowhere_zero, nonzero_sums: sums, marked: Vec::new() }
    }

    pub fn sum_coloring(nowhere_zero: bool, nonzero: bool) -> Self {
        let sums = if nonzero { NonzeroSums::All } else { NonzeroSums::None };
        LabelingMode { distinguish: Distinguish::Adjacent, nowhere_zero, nonzero_sums: sums, marked: Vec::new() }
    }

    /// Nowhere-zero sum coloring with marked vertices that must be non-zero;
    /// `all_nonzero` extends the non-zero requirement to every vertex.
    pub fn marked(marked: Vec<usize>, all_nonzero: bool) -> Self {
        let sums = if all_nonzero { NonzeroSums::All } else { NonzeroSums::Marked };
        LabelingMode::new(Distinguish::Adjacent, true, sums, marked).expect("sum coloring accepts a marked set")
    }

    /// Attaches a marked set; a mode without non-zero requirements starts
    /// requiring them on the marked vertices.
    pub fn with_marked(self, marked: Vec<usize>) -> Result<Self> {
        let sums = match self.nonzero_sums {
            NonzeroSums::None if !marked.is_empty() => NonzeroSums::Marked,
            other => other,
        };
        LabelingMode::new(self.distinguish, self.nowhere_zero, sums, marked)
    }

    pub fn marked_set(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.marked {
            if v < n {
                m[v] = true;
            }
        }
        m
    }

    /// Whether vertex `v` must have a non-zero weight.
    pub fn needs_nonzero(&self, v: usize) -> bool {
        match self.nonzero_sums {
            NonzeroSums::None => false,
            NonzeroSums::All => true,
            NonzeroSums::Marked => self.marked.binary_search(&v).is_ok(),
        }
    }
}

impl fmt::Display for LabelingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.distinguish {
            Distinguish::Global => "irregular",
            Distinguish::Adjacent => "sum-color",
        };
        f.write_str(base)?;
        match (self.nonzero_sums, self.nowhere_zero) {
            (NonzeroSums::All, true) => f.write_str("-nonzero"),
            (NonzeroSums::All, false) => f.write_str("-zero-labels-nonzero"),
            (_, true) => f.write_str("-nowhere-zero"),
            (_, false) => Ok(()),
        }?;
        if !self.marked.is_empty() {
            let ids: Vec<String> = self.marked.iter().map(|v| v.to_string()).collect();
            write!(f, "[marked {}]", ids.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for LabelingMode {
    type Err = Error;

    /// `irregular`, `irregular-nowhere-zero`, `irregular-nonzero` and the same
    /// three with the `sum-color` prefix. `-nonzero` means nowhere-zero labels
    /// and non-zero weights.
    fn from_str(s: &str) -> Result<Self> {
        let (distinguish, rest) = if let Some(r) = s.strip_prefix("irregular") {
            (Distinguish::Global, r)
        } else if let Some(r) = s.strip_prefix("sum-color") {
            (Distinguish::Adjacent, r)
        } else {
            return Err(Error::OutOfRange(format!("unknown mode `{s}`")));
        };
        let (nz, sums) = match rest {
            "" => (false, false),
            "-nowhere-zero" => (true, false),
            "-nonzero" => (true, true),
            "-zero-labels-nonzero" => (false, true),
            _ => return Err(Error::OutOfRange(format!("unknown mode `{s}`"))),
        };
        Ok(match distinguish {
            Distinguish::Global => LabelingMode::irregular(nz, sums),
            Distinguish::Adjacent => LabelingMode::sum_coloring(nz, sums),
        })
    }
}

/// Independent verdicts for each property; `pass` combines the ones the
/// mode requires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Edge ids carrying the identity.
    pub zero_labels: Vec<usize>,
    /// Vertices required to be non-zero whose weight is the identity.
    pub zero_sums: Vec<usize>,
    /// Vertex pairs that must differ but share a weight.
    pub collisions: Vec<(usize, usize)>,
    pub labels_nonzero: bool,
    pub sums_nonzero: bool,
    pub distinct: bool,
    pub pass: bool,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.pass {
            return "ok".into();
        }
        let mut parts = Vec::new();
        if !self.zero_labels.is_empty() {
            parts.push(format!("{} zero label(s)", self.zero_labels.len()));
        }
        if !self.zero_sums.is_empty() {
            parts.push(format!("zero weight at {:?}", self.zero_sums));
        }
        if !self.collisions.is_empty() {
            parts.push(format!("equal weights at {:?}", self.collisions));
        }
        parts.join("; ")
    }
}

pub fn validate(g: &Graph, f: &Labeling, mode: &LabelingMode) -> ValidationReport {
    let fail_unbound = || ValidationReport {
        zero_labels: Vec::new(),
        zero_sums: Vec::new(),
        collisions: Vec::new(),
        labels_nonzero: false,
        sums_nonzero: false,
        distinct: false,
        pass: false,
    };
    let Ok(w) = weights(g, f) else {
        return fail_unbound();
    };
    let group = f.group();
    let zero_labels: Vec<usize> =
        f.values().iter().enumerate().filter(|(_, x)| group.is_identity(x)).map(|(i, _)| i).collect();
    let zero_sums: Vec<usize> =
        (0..g.n()).filter(|&v| mode.needs_nonzero(v) && group.is_identity(&w[v])).collect();
    let collisions: Vec<(usize, usize)> = match mode.distinguish {
        Distinguish::Global => {
            let mut first: HashMap<&GroupElement, usize> = HashMap::new();
            let mut out = Vec::new();
            for (v, x) in w.iter().enumerate() {
                if let Some(&u) = first.get(x) {
                    out.push((u, v));
                } else {
                    first.insert(x, v);
                }
            }
            out
        }
        Distinguish::Adjacent => {
            let marked = mode.marked_set(g.n());
            g.edges()
                .iter()
                .copied()
                .filter(|&(u, v)| !marked[u] && !marked[v] && w[u] == w[v])
                .collect()
        }
    };
    let labels_nonzero = zero_labels.is_empty();
    let sums_nonzero = zero_sums.is_empty();
    let distinct = collisions.is_empty();
    let pass = distinct && sums_nonzero && (labels_nonzero || !mode.nowhere_zero);
    ValidationReport { zero_labels, zero_sums, collisions, labels_nonzero, sums_nonzero, distinct, pass }
}

/// Passes `f` through [`validate`]; a failure here is a bug in the caller.
pub(crate) fn checked(g: &Graph, f: Labeling, mode: &LabelingMode, who: &str) -> Result<Labeling> {
    let report = validate(g, &f, mode);
    if report.pass {
        Ok(f)
    } else {
        Err(Error::Internal(format!("{who} produced an invalid labeling: {}", report.summary())))
    }
}
