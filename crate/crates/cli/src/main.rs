use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clusterfree::famfile::{load_family, save_family};
use clusterfree::families::{
    find_forbidden, is_intersecting, star_centers, Family, Predicate, Witness,
};
use clusterfree::gfq::make_field;
use clusterfree::grassmann::Subspace;
use clusterfree::qarith::{gauss_binom, gauss_binom_poly, to_u64};
use clusterfree::search::{search_all_maxima, search_max, SearchOptions, SearchReport};
use clusterfree::verify::{run_suite, Suite, VerifyOptions, VerifyReport, DEFAULT_SEED};
use clusterfree::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "clusterlab",
    version,
    about = "Cluster-free families of subspaces over finite fields"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of k-dimensional subspaces of F_q^n.
    Count {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Write the full star through a vector as a family file.
    GenerateStar {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated coordinates, e.g. 1,0,0,0.
        #[arg(long, value_delimiter = ',', required = true)]
        center: Vec<u32>,
    },
    /// Report structural properties of a family file.
    Check {
        file: PathBuf,
        /// Also test for d-clusters of this size.
        #[arg(long)]
        d: Option<usize>,
        /// Properties that must hold for exit status 0. Defaults to
        /// covering-triple-free and 3-cluster-free (plus d-cluster-free with --d).
        #[arg(long, value_enum, value_delimiter = ',')]
        require: Vec<Property>,
    },
    /// Run a verification suite.
    Verify {
        /// Suite name, or "all".
        suite: String,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u32>>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Largest family avoiding a forbidden configuration.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// covering-triple, 3-cluster, d-cluster (with --d) or <d>-cluster.
        #[arg(long)]
        predicate: String,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        run: RunFlags,
        /// Also enumerate every maximum family.
        #[arg(long)]
        all_maxima: bool,
    },
    /// d-cluster searches over a parameter grid, compared with the star bound.
    Explore {
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        d: Vec<usize>,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct RunFlags {
    /// Force the first subspace into the family (valid by transitivity).
    #[arg(long)]
    fix_first: bool,
    /// Seconds before giving up; the best family so far is reported.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    parallel: bool,
}

impl RunFlags {
    fn options(self) -> Result<SearchOptions, Error> {
        let time_limit = match self.time_limit {
            Some(t) if !(t >= 0.0 && t.is_finite()) => {
                return Err(Error::BadArgs(format!("bad time limit {t}")))
            }
            t => t.map(Duration::from_secs_f64),
        };
        Ok(SearchOptions {
            fix_first: self.fix_first,
            time_limit,
            parallel: self.parallel,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Intersecting,
    Star,
    CoveringTripleFree,
    #[value(name = "3-cluster-free")]
    ThreeClusterFree,
    DClusterFree,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Intersecting => "intersecting",
            Property::Star => "star",
            Property::CoveringTripleFree => "covering-triple-free",
            Property::ThreeClusterFree => "3-cluster-free",
            Property::DClusterFree => "d-cluster-free",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let out = cli.output;
    match cli.cmd {
        Cmd::Count { q, n, k } => count(out, q, n, k),
        Cmd::GenerateStar { q, n, k, center } => generate_star(q, n, k, &center),
        Cmd::Check { file, d, require } => check(out, &file, d, require),
        Cmd::Verify {
            suite,
            q,
            n_max,
            seed,
        } => verify(out, &suite, VerifyOptions { qs: q, n_max, seed }),
        Cmd::Search {
            q,
            n,
            k,
            predicate,
            d,
            run,
            all_maxima,
        } => search(
            out,
            q,
            n,
            k,
            parse_predicate(&predicate, d)?,
            run.options()?,
            all_maxima,
        ),
        Cmd::Explore { q, n, k, d, run } => explore(out, &q, &n, &k, &d, run.options()?),
    }
}

fn parse_predicate(name: &str, d: Option<usize>) -> Result<Predicate, Error> {
    match (name, d) {
        ("d-cluster", Some(d)) if d >= 2 => Ok(Predicate::DCluster(d)),
        ("d-cluster", Some(d)) => Err(Error::BadArity(d)),
        ("d-cluster", None) => Err(Error::BadArgs("d-cluster needs --d".into())),
        (_, Some(_)) => Err(Error::BadArgs("--d only applies to d-cluster".into())),
        (name, None) => name.parse(),
    }
}

fn rows_json(s: &Subspace) -> Value {
    json!(s.rows())
}

fn fmt_subspace(s: &Subspace) -> String {
    let rows: Vec<String> = s
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("<{}>", rows.join("; "))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data"));
}

fn count(out: Output, q: u32, n: usize, k: usize) -> Result<u8, Error> {
    make_field(q)?;
    let value = gauss_binom(n, k, q as u64)?;
    let poly = gauss_binom_poly(n, k)?;
    match out {
        Output::Json => print_json(&json!({
            "q": q,
            "n": n,
            "k": k,
            "count": value.to_string(),
            "polynomial": poly.to_string(),
        })),
        Output::Text => {
            println!("{value}");
            println!("[{n} choose {k}]_q = {poly}");
        }
    }
    Ok(0)
}

fn generate_star(q: u32, n: usize, k: usize, center: &[u32]) -> Result<u8, Error> {
    let field = make_field(q)?;
    if center.len() != n {
        return Err(Error::BadArgs(format!(
            "center has {} coordinates, expected {n}",
            center.len()
        )));
    }
    if let Some(&x) = center.iter().find(|&&x| x >= q) {
        return Err(Error::BadArgs(format!("{x} is not an element of F_{q}")));
    }
    if center.iter().all(|&x| x == 0) {
        return Err(Error::BadArgs("center must be non-zero".into()));
    }
    if k == 0 || k > n {
        return Err(Error::BadDimension(format!(
            "need 1 <= k <= n (n={n}, k={k})"
        )));
    }
    let v: Vec<u8> = center.iter().map(|&x| x as u8).collect();
    let line = Subspace::from_vectors(&field, n, &[v])?;
    let star = Family::star(&field, n, k, &line)?;
    println!("{}", save_family(&star));
    Ok(0)
}

fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "members": w.members.iter().map(rows_json).collect::<Vec<_>>(),
            "pivot": w.pivot.as_ref().map(rows_json),
        }),
    }
}

fn check(
    out: Output,
    file: &PathBuf,
    d: Option<usize>,
    mut require: Vec<Property>,
) -> Result<u8, Error> {
    let text =
        fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let fam = load_family(&text)?;
    if let Some(d) = d {
        if d < 2 {
            return Err(Error::BadArity(d));
        }
    }
    if require.is_empty() {
        require = vec![Property::CoveringTripleFree, Property::ThreeClusterFree];
        if d.is_some() {
            require.push(Property::DClusterFree);
        }
    }
    if require.contains(&Property::DClusterFree) && d.is_none() {
        return Err(Error::BadArgs("d-cluster-free needs --d".into()));
    }

    let centers = star_centers(&fam).unwrap_or_default();
    let covering = find_forbidden(&fam, Predicate::CoveringTriple);
    let cluster = find_forbidden(&fam, Predicate::ThreeCluster);
    let dcluster = d.map(|d| find_forbidden(&fam, Predicate::DCluster(d)));
    let holds = |p: Property| match p {
        Property::Intersecting => is_intersecting(&fam),
        Property::Star => !centers.is_empty(),
        Property::CoveringTripleFree => covering.is_none(),
        Property::ThreeClusterFree => cluster.is_none(),
        Property::DClusterFree => dcluster.as_ref().is_some_and(|w| w.is_none()),
    };
    let pass = require.iter().all(|&p| holds(p));

    match out {
        Output::Json => {
            let mut props = json!({
                "intersecting": holds(Property::Intersecting),
                "star": holds(Property::Star),
                "star_centers": centers.iter().map(rows_json).collect::<Vec<_>>(),
                "covering-triple-free": covering.is_none(),
                "covering_triple_witness": witness_json(&covering),
                "3-cluster-free": cluster.is_none(),
                "3_cluster_witness": witness_json(&cluster),
            });
            if let (Some(d), Some(w)) = (d, &dcluster) {
                props["d"] = json!(d);
                props["d-cluster-free"] = json!(w.is_none());
                props["d_cluster_witness"] = witness_json(w);
            }
            print_json(&json!({
                "q": fam.field().q(),
                "n": fam.ambient_dim(),
                "k": fam.member_dim(),
                "size": fam.len(),
                "properties": props,
                "required": require.iter().map(|p| p.name()).collect::<Vec<_>>(),
                "pass": pass,
            }));
        }
        Output::Text => {
            println!(
                "family: {} subspaces of dimension {} in F_{}^{}",
                fam.len(),
                fam.member_dim(),
                fam.field().q(),
                fam.ambient_dim()
            );
            println!("intersecting: {}", holds(Property::Intersecting));
            println!("star: {}", holds(Property::Star));
            for c in &centers {
                println!("  center {}", fmt_subspace(c));
            }
            let show = |name: &str, w: &Option<Witness>| {
                println!("{name}: {}", w.is_none());
                if let Some(w) = w {
                    let members: Vec<String> = w.members.iter().map(fmt_subspace).collect();
                    println!("  witness {}", members.join(" "));
                    if let Some(p) = &w.pivot {
                        println!("  pivot {}", fmt_subspace(p));
                    }
                }
            };
            show("covering-triple-free", &covering);
            show("3-cluster-free", &cluster);
            if let (Some(d), Some(w)) = (d, &dcluster) {
                show(&format!("{d}-cluster-free"), w);
            }
            println!("{}", if pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(if pass { 0 } else { EXIT_FAIL })
}

fn print_verify_text(r: &VerifyReport) {
    for c in &r.records {
        println!(
            "{} {} [{}] expected {} got {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.id,
            c.params,
            c.expected,
            c.actual
        );
    }
    println!(
        "suite {}: {} ({} checks, {} failed)",
        r.suite,
        if r.pass { "PASS" } else { "FAIL" },
        r.records.len(),
        r.failures().count()
    );
}

fn verify(out: Output, suite: &str, opts: VerifyOptions) -> Result<u8, Error> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, &opts)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    match out {
        Output::Json if reports.len() == 1 => print_json(&reports[0]),
        Output::Json => print_json(&reports),
        Output::Text => reports.iter().for_each(print_verify_text),
    }
    Ok(if pass { 0 } else { EXIT_FAIL })
}

fn print_search_text(r: &SearchReport) {
    println!(
        "search q={} n={} k={} forbidding {}: {} candidate subspaces",
        r.q, r.n, r.k, r.predicate, r.ground_size
    );
    println!("optimum: {}", r.optimum);
    println!("star bound: {}", r.star_bound);
    println!("optimality proved: {}", r.optimality_proved);
    println!("nodes explored: {}", r.nodes_explored);
    if let (Some(all), Some(stars)) = (r.all_maxima_count, r.star_maxima_count) {
        println!("maximum families: {all} ({stars} stars)");
    }
    println!("wall time: {:.3}s", r.wall_time.as_secs_f64());
    println!("witness:");
    for s in r.witness.iter() {
        println!("  {}", fmt_subspace(s));
    }
}

fn search(
    out: Output,
    q: u32,
    n: usize,
    k: usize,
    predicate: Predicate,
    options: SearchOptions,
    all_maxima: bool,
) -> Result<u8, Error> {
    let field = make_field(q)?;
    let report = if all_maxima {
        search_all_maxima(&field, n, k, predicate, options)?.0
    } else {
        search_max(&field, n, k, predicate, options)?
    };
    match out {
        Output::Json => print_json(&report),
        Output::Text => print_search_text(&report),
    }
    Ok(if report.optimality_proved {
        0
    } else {
        EXIT_TIMEOUT
    })
}

/// Grid points with `1 <= k <= n` and `d >= 2`.
fn explore(
    out: Output,
    qs: &[u32],
    ns: &[usize],
    ks: &[usize],
    ds: &[usize],
    options: SearchOptions,
) -> Result<u8, Error> {
    let mut rows = Vec::new();
    let mut all_proved = true;
    let mut exceeded = false;
    for &q in qs {
        let field = make_field(q)?;
        for &n in ns {
            for &k in ks {
                if k == 0 || k > n {
                    continue;
                }
                for &d in ds {
                    if d < 2 {
                        return Err(Error::BadArity(d));
                    }
                    let r = search_max(&field, n, k, Predicate::DCluster(d), options)?;
                    // the bound is only claimed once n(d-1) >= dk
                    let in_range = n * (d - 1) >= d * k;
                    let above =
                        r.optimum > to_u64(&r.star_bound).map_or(usize::MAX, |b| b as usize);
                    all_proved &= r.optimality_proved;
                    exceeded |= in_range && above && r.optimality_proved;
                    rows.push((r, in_range, above));
                }
            }
        }
    }
    match out {
        Output::Json => print_json(
            &rows
                .iter()
                .map(|(r, in_range, above)| {
                    json!({
                        "report": r,
                        "in_range": in_range,
                        "exceeds_star_bound": above,
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Output::Text => {
            println!(
                "{:>3} {:>3} {:>3} {:>3} {:>8} {:>10} {:>7} {:>8}",
                "q", "n", "k", "d", "optimum", "star", "proved", "in-range"
            );
            for (r, in_range, _) in &rows {
                println!(
                    "{:>3} {:>3} {:>3} {:>3} {:>8} {:>10} {:>7} {:>8}",
                    r.q,
                    r.n,
                    r.k,
                    r.d.unwrap_or(0),
                    r.optimum,
                    r.star_bound.to_string(),
                    r.optimality_proved,
                    in_range
                );
            }
        }
    }
    Ok(if exceeded {
        EXIT_FAIL
    } else if all_proved {
        0
    } else {
        EXIT_TIMEOUT
    })
}
