use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use nzlabel::forest::{arboricity, decompose_forests, eliminate_isolated_edges, DEFAULT_VERTEX_CAP};
use nzlabel::generators::{family, random_corpus, random_graph, unlabeled_connected_graphs, unlabeled_trees};
use nzlabel::irregular::label_irregular;
use nzlabel::local::label_local;
use nzlabel::oracle::{conjecture_scan, exists_labeling, invariant, invariant_name, scan_modes, witness_file, DEFAULT_EDGE_CAP};
use nzlabel::product::{k_of_a, label_by_arboricity, label_by_arboricity_in, DEFAULT_K_CUTOFF};
use nzlabel::tree::label_tree;
use nzlabel::{validate, AbelianGroup, Error, Graph, Labeling, LabelingMode};

pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "nzlabel", version, about = "Nowhere-zero group labelings of graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a labeling and write its certificate.
    Label(LabelArgs),
    /// Split the edges into forests, optionally without single-edge components.
    Decompose(DecomposeArgs),
    /// Exact invariant of one graph, or existence over one group.
    Exact(ExactArgs),
    /// Exact s_g* and chi_g* over a corpus, as a tab-separated report.
    Scan(ScanArgs),
    /// Check a certificate against a graph and a mode.
    Verify(VerifyArgs),
    /// Write a graph in edge-list format.
    Gen(GenArgs),
    /// Least k such that every group of order k splits into a factors of order >= 4.
    KOfA(KOfAArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LabelKind {
    Irregular,
    SumColor,
    Tree,
    Product,
}

#[derive(Args, Debug)]
struct LabelArgs {
    kind: LabelKind,
    #[arg(long)]
    graph: PathBuf,
    /// Group spec such as Z4xZ5; `product` accepts it repeated, one per forest.
    #[arg(long, required = true)]
    group: Vec<String>,
    /// Comma-separated marked vertices (`sum-color` only).
    #[arg(long, value_delimiter = ',')]
    marked: Vec<usize>,
    #[arg(long)]
    all_nonzero: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accepted for uniformity; every algorithm is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Number of forests; defaults to the arboricity.
    #[arg(long)]
    forests: Option<usize>,
    /// Recolor until no forest has a single-edge component.
    #[arg(long)]
    no_isolated: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    mode: String,
    /// Only decide existence over this group.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_delimiter = ',')]
    marked: Vec<usize>,
    #[arg(long)]
    k_start: Option<u64>,
    #[arg(long)]
    k_max: Option<u64>,
    /// Directory for witness certificates.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// `trees:<lo>-<hi>` or `connected:<lo>-<hi>` (unlabeled), repeatable.
    #[arg(long)]
    corpus: Vec<String>,
    /// Extra graph files, named by file stem.
    #[arg(long)]
    graph: Vec<PathBuf>,
    /// Directory for witness certificates.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    cert: PathBuf,
    /// Defaults to the `# mode` line of the certificate.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, value_delimiter = ',')]
    marked: Vec<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// path, cycle, star, complete, complete-bipartite, double-star, random, random-corpus, trees, connected
    family: String,
    params: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// File for a single graph, directory for `random-corpus`, `trees` and `connected`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct KOfAArgs {
    a: usize,
    #[arg(long, default_value_t = DEFAULT_K_CUTOFF)]
    cutoff: u64,
}

/// Failure with the exit code and the `ERR <code>: <detail>` line to print.
pub struct Failure {
    pub exit: i32,
    pub line: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Precondition(_) | Error::Infeasible(_) | Error::CapExceeded { .. } | Error::Internal(_) => {
                EXIT_FAILURE
            }
            _ => EXIT_USAGE,
        };
        Failure { exit, line: format!("ERR {}: {e}", e.code()) }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { exit: EXIT_USAGE, line: format!("ERR io: {}: {e}", path.display()) }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn read_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    Ok(Graph::parse_edge_list(&read(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn write_in(dir: &Path, name: &str, text: &str) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| io_failure(&path, e))
}

fn certificate(f: &Labeling, mode: &LabelingMode) -> String {
    format!("# mode {mode}\n{}", f.to_certificate(true))
}

fn parse_mode(text: &str, marked: &[usize]) -> std::result::Result<LabelingMode, Failure> {
    let mode: LabelingMode = text.parse()?;
    Ok(if marked.is_empty() { mode } else { mode.with_marked(marked.to_vec())? })
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { exit: EXIT_USAGE, line: format!("ERR usage: {}", msg.into()) }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Label(args) => label(args),
        Command::Decompose(args) => decompose(args),
        Command::Exact(args) => exact(args),
        Command::Scan(args) => scan(args),
        Command::Verify(args) => verify(args),
        Command::Gen(args) => gen(args),
        Command::KOfA(args) => {
            println!("{}", k_of_a(args.a, args.cutoff)?);
            Ok(())
        }
    }
}

fn label(args: LabelArgs) -> Outcome {
    let g = read_graph(&args.graph)?;
    let groups = args.group.iter().map(|s| AbelianGroup::parse(s)).collect::<nzlabel::Result<Vec<_>>>()?;
    if groups.len() > 1 && !matches!(args.kind, LabelKind::Product) {
        return Err(usage("only `label product` takes several groups"));
    }
    if !args.marked.is_empty() && !matches!(args.kind, LabelKind::SumColor) {
        return Err(usage("--marked applies to `label sum-color` only"));
    }
    let group = &groups[0];
    let (f, mode) = match args.kind {
        LabelKind::Irregular => (label_irregular(&g, group)?, LabelingMode::irregular(true, true)),
        LabelKind::SumColor => {
            let mode = LabelingMode::marked(args.marked.clone(), args.all_nonzero);
            (label_local(&g, group, &args.marked, args.all_nonzero)?, mode)
        }
        LabelKind::Tree => (label_tree(&g, group, args.all_nonzero)?, LabelingMode::sum_coloring(true, args.all_nonzero)),
        LabelKind::Product => {
            let f = if groups.len() == 1 { label_by_arboricity_in(&g, group)? } else { label_by_arboricity(&g, &groups)? };
            (f, LabelingMode::sum_coloring(true, false))
        }
    };
    emit(args.out.as_deref(), &certificate(&f, &mode))
}

fn decompose(args: DecomposeArgs) -> Outcome {
    let g = read_graph(&args.graph)?;
    let a = match args.forests {
        Some(a) => a,
        None => arboricity(&g, args.cap)?,
    };
    let mut d = decompose_forests(&g, a)?;
    if args.no_isolated {
        d = eliminate_isolated_edges(&g, &d)?;
    }
    let mut text = format!("# forests {a}\n");
    for (&(u, v), c) in g.edges().iter().zip(&d.class) {
        text.push_str(&format!("{u} {v} -> {c}\n"));
    }
    emit(args.out.as_deref(), &text)
}

fn graph_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
}

fn exact(args: ExactArgs) -> Outcome {
    let g = read_graph(&args.graph)?;
    let mode = parse_mode(&args.mode, &args.marked)?;
    let id = graph_id(&args.graph);
    if let Some(spec) = &args.group {
        let group = AbelianGroup::parse(spec)?;
        return match exists_labeling(&g, &group, &mode, args.cap)? {
            Some(f) => {
                if let Some(dir) = &args.out {
                    write_in(dir, &witness_file(&id, &mode), &certificate(&f, &mode))?;
                }
                println!("{id}\t{mode}\t{group}\tfound");
                print!("{}", certificate(&f, &mode));
                Ok(())
            }
            None => Err(Error::Infeasible(format!("no {mode} labeling of {id} over {group}")).into()),
        };
    }
    let n = g.n() as u64;
    let k_start = args.k_start.unwrap_or(match mode.distinguish {
        nzlabel::Distinguish::Global => 3,
        nzlabel::Distinguish::Adjacent => 2,
    });
    let k_max = args.k_max.unwrap_or(2 * n + 2);
    let r = invariant(&g, &mode, k_start, k_max, args.cap)?;
    let witness = witness_file(&id, &mode);
    if let Some(dir) = &args.out {
        let text: String = r.witnesses.iter().map(|f| certificate(f, &mode)).collect::<Vec<_>>().join("\n");
        write_in(dir, &witness, &text)?;
    }
    let blocker = r.blockers.last().filter(|(k, _)| k + 1 == r.value).map_or("-".to_string(), |(_, b)| b.to_string());
    println!("graph-id\tmode\tvalue\twitness-file\tblocker-group");
    println!("{id}\t{mode}\t{}\t{witness}\t{blocker}", r.value);
    println!("# {} = {}", invariant_name(&mode), r.value);
    Ok(())
}

fn parse_range(spec: &str) -> Option<(usize, usize)> {
    let (lo, hi) = spec.split_once('-')?;
    Some((lo.parse().ok()?, hi.parse().ok()?))
}

fn scan(args: ScanArgs) -> Outcome {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for spec in &args.corpus {
        let (kind, range) = spec.split_once(':').ok_or_else(|| usage(format!("bad corpus `{spec}`")))?;
        let (lo, hi) = parse_range(range).ok_or_else(|| usage(format!("bad range `{range}`")))?;
        for n in lo..=hi {
            let graphs = match kind {
                "trees" if n <= 8 => unlabeled_trees(n)?,
                "connected" if n <= 6 => unlabeled_connected_graphs(n),
                _ => return Err(usage(format!("unsupported corpus `{kind}:{n}`"))),
            };
            corpus.extend(graphs.into_iter().enumerate().map(|(i, g)| (format!("{kind}{n}-{i:02}"), g)));
        }
    }
    for path in &args.graph {
        corpus.push((graph_id(path), read_graph(path)?));
    }
    let report = conjecture_scan(&corpus, args.cap)?;
    if let Some(dir) = &args.out {
        let (s_mode, chi_mode) = scan_modes();
        for row in &report.rows {
            for (mode, r) in [(&s_mode, &row.s_star), (&chi_mode, &row.chi_star)] {
                let text: String = r.witnesses.iter().map(|f| certificate(f, mode)).collect::<Vec<_>>().join("\n");
                write_in(dir, &witness_file(&row.id, mode), &text)?;
            }
        }
    }
    print!("{}", report.to_tsv());
    if let (Some((s, s_id)), Some((c, c_id))) = (report.max_s_gap(), report.max_chi_gap()) {
        println!("# max s_g* - n = {s} ({s_id})");
        println!("# max chi_g* - chi = {c} ({c_id})");
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let g = read_graph(&args.graph)?;
    let text = read(&args.cert)?;
    let mode_text = match &args.mode {
        Some(m) => m.clone(),
        None => text
            .lines()
            .find_map(|l| l.strip_prefix("# mode "))
            .map(|m| m.split('[').next().unwrap_or(m).to_string())
            .ok_or_else(|| usage("no --mode given and the certificate has no `# mode` line"))?,
    };
    let mut marked = args.marked.clone();
    if marked.is_empty() && args.mode.is_none() {
        if let Some(list) = text.lines().find_map(|l| l.strip_prefix("# mode ")).and_then(|m| m.split_once("[marked ")) {
            marked = list.1.trim_end_matches(']').split(',').filter_map(|v| v.parse().ok()).collect();
        }
    }
    let mode = parse_mode(&mode_text, &marked)?;
    let f = Labeling::parse_certificate(&text, &g)?;
    let report = validate(&g, &f, &mode);
    if report.pass {
        println!("ok {mode}");
        Ok(())
    } else {
        Err(Failure { exit: EXIT_FAILURE, line: format!("ERR invalid: {}", report.summary()) })
    }
}

fn gen(args: GenArgs) -> Outcome {
    let nums = || -> std::result::Result<Vec<usize>, Failure> {
        args.params.iter().map(|p| p.parse().map_err(|_| usage(format!("bad parameter `{p}`")))).collect()
    };
    let dir_out = |graphs: Vec<Graph>, prefix: &str| -> Outcome {
        let dir = args.out.as_deref().ok_or_else(|| usage(format!("`gen {}` needs --out <dir>", args.family)))?;
        for (i, g) in graphs.iter().enumerate() {
            write_in(dir, &format!("{prefix}-{i:02}.txt"), &g.to_edge_list())?;
        }
        Ok(())
    };
    match args.family.as_str() {
        "random" => {
            let (n, p) = match args.params.as_slice() {
                [n, p] => (
                    n.parse::<usize>().map_err(|_| usage(format!("bad vertex count `{n}`")))?,
                    p.parse::<f64>().ok().filter(|p| (0.0..=1.0).contains(p)).ok_or_else(|| usage(format!("bad density `{p}`")))?,
                ),
                _ => return Err(usage("`gen random` takes <n> <p>")),
            };
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed.unwrap_or(0));
            emit(args.out.as_deref(), &random_graph(n, p, &mut rng).to_edge_list())
        }
        "random-corpus" => {
            let count = match nums()?.as_slice() {
                [c] => *c,
                _ => return Err(usage("`gen random-corpus` takes <count>")),
            };
            dir_out(random_corpus(count, args.seed.unwrap_or(nzlabel::generators::RANDOM_CORPUS_SEED)), "random")
        }
        "trees" => match nums()?.as_slice() {
            [n] => dir_out(unlabeled_trees(*n)?, &format!("tree{n}")),
            _ => Err(usage("`gen trees` takes <n>")),
        },
        "connected" => match nums()?.as_slice() {
            [n] if *n <= 6 => dir_out(unlabeled_connected_graphs(*n), &format!("connected{n}")),
            _ => Err(usage("`gen connected` takes <n> with n <= 6")),
        },
        name => emit(args.out.as_deref(), &family(name, &nums()?)?.to_edge_list()),
    }
}
