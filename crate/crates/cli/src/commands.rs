use std::fs;
use std::io::Write;
use std::path::Path;

use uso_core::orientation::MAX_TABLE_DIM;
use uso_core::verifier::{BruteForceDecision, MAX_VERIFY_DIM};
use uso_core::{
    enumerate_usos, global_sink, is_bijection, is_uso, naive_walk_count, orbit_period, quantum_find_sink,
    random_edge_walk, sink_via_period, solve_by_facet_decision, with_query_counting, Outmap, PeriodDecision, QpfConfig,
    SubsetMask,
};

use crate::report::Report;
use crate::{BenchArgs, BenchMethod, CliError, DecisionKind, Family, GenArgs, Method, SolveArgs};

type CliResult<T> = Result<T, CliError>;

fn read_outmap(path: &Path) -> CliResult<Outmap> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Outmap::deserialize(&text)?)
}

fn print(report: &Report, json: bool) {
    print!("{}", report.render(json));
}

fn require<T>(value: Option<T>, what: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} requires {what}")))
}

pub fn gen(args: &GenArgs, json: bool) -> CliResult<()> {
    let m = match args.family {
        Family::Uniform => {
            let n = require(args.n, "--n", "uniform")?;
            Outmap::uniform(n, require(args.a, "--a", "uniform")?)?
        }
        Family::Psi => Outmap::psi(require(args.n, "--n", "psi")?)?,
        Family::Random => {
            let n = require(args.n, "--n", "random")?;
            Outmap::random_uso(n, require(args.seed, "--seed", "random")?)?
        }
        Family::Product => {
            let lower = read_outmap(require(args.lower.as_deref(), "--lower", "product")?)?;
            let upper = read_outmap(require(args.upper.as_deref(), "--upper", "product")?)?;
            let m = Outmap::combine(&lower, &upper, require(args.dir, "--dir", "product")?)?;
            if let Some(n) = args.n {
                if n != m.dim() {
                    return Err(CliError::Usage(format!(
                        "--n {n} does not match product dimension {}",
                        m.dim()
                    )));
                }
            }
            m
        }
    };
    match &args.out {
        Some(path) => {
            fs::write(path, m.serialize())?;
            let mut r = Report::new();
            r.put("n", m.dim()).put("out", path.display().to_string());
            print(&r, json);
        }
        None => print!("{}", m.serialize()),
    }
    Ok(())
}

pub fn verify(path: &Path, json: bool) -> CliResult<()> {
    let m = read_outmap(path)?;
    let orientation = m.is_orientation();
    let uso = is_uso(&m)?;
    let mut r = Report::new();
    r.put("n", m.dim())
        .put("orientation", orientation)
        .put("uso", uso)
        .put("bijection", is_bijection(&m))
        .optional_mask("sink", global_sink(&m).ok());
    print(&r, json);
    if uso {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

pub fn period(path: &Path, start: SubsetMask, show_orbit: bool, json: bool) -> CliResult<()> {
    let m = read_outmap(path)?;
    let res = orbit_period(&m, start)?;
    let mut r = Report::new();
    r.put("n", m.dim()).mask("start", start).put("period", res.period);
    if start.is_empty() {
        r.mask("sink", res.sink_candidate);
        r.put("naive_walk_queries", res.period);
    }
    if show_orbit {
        r.put("orbit", res.orbit.iter().map(|v| v.bits()).collect::<Vec<_>>());
    }
    print(&r, json);
    Ok(())
}

fn qpf_config(n: u32, args: &SolveArgs) -> QpfConfig {
    QpfConfig::for_dim(n)
        .with_t(args.t.unwrap_or(2 * n + 1))
        .with_seed(args.seed)
        .with_samples(args.samples)
        .with_retries(args.retries)
        .with_mode(args.mode)
}

pub fn solve(args: &SolveArgs, json: bool) -> CliResult<()> {
    let m = read_outmap(&args.path)?;
    let n = m.dim();
    if n <= MAX_VERIFY_DIM {
        if !is_uso(&m)? {
            eprintln!("error: input is not a unique sink orientation");
            return Err(CliError::VerificationFailed);
        }
    } else {
        eprintln!("warning: skipping USO verification above n = {MAX_VERIFY_DIM}");
    }
    let mut r = Report::new();
    r.put("n", n);
    match args.method {
        Method::Scan => {
            r.put("method", "scan");
            let oracle = with_query_counting(&m);
            r.mask("sink", global_sink(&oracle)?);
            r.put("queries", oracle.counter().count);
        }
        Method::Period => {
            r.put("method", "period");
            let oracle = with_query_counting(&m);
            let l = naive_walk_count(&oracle)?;
            r.mask("sink", sink_via_period(&m)?);
            r.put("period", l).put("queries", oracle.counter().count);
        }
        Method::Qpf => {
            r.put("method", "qpf");
            let cfg = qpf_config(n, args);
            let report = quantum_find_sink(&m, &cfg)?;
            r.mask("sink", report.sink)
                .put("t", cfg.t)
                .put("mode", cfg.mode.to_string())
                .put("period", report.period)
                .put("attempts", report.attempts)
                .put("samples", report.measured.clone())
                .put("candidates", report.candidates.clone())
                .put("oracle_queries", report.oracle_queries)
                .put("validation_queries", report.validation_queries)
                .put("queries", report.eval_queries);
        }
        Method::Facet => {
            r.put("method", "facet");
            let search = match args.decision {
                DecisionKind::Brute => {
                    r.put("decision", "brute");
                    solve_by_facet_decision(&m, &mut BruteForceDecision::new(&m)?)?
                }
                DecisionKind::Period => {
                    r.put("decision", "period");
                    solve_by_facet_decision(&m, &mut PeriodDecision::new(&m)?)?
                }
            };
            r.mask("sink", search.sink).put("decision_calls", search.decision_calls);
        }
        Method::RandomEdge => {
            r.put("method", "random-edge");
            let (sink, counter) = random_edge_walk(&m, args.start, args.seed)?;
            r.mask("sink", sink)
                .put("seed", args.seed)
                .put("queries", counter.count);
        }
    }
    print(&r, json);
    Ok(())
}

pub fn enumerate(n: u32, json: bool) -> CliResult<()> {
    let mut r = Report::new();
    r.put("n", n).put("count", enumerate_usos(n)?.count());
    print(&r, json);
    Ok(())
}

/// Parses `a..b`, `a..=b` or `a-b` (all inclusive), single values, and
/// comma-separated lists of those.
pub fn parse_list(spec: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("bad range {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

struct Row {
    sink: SubsetMask,
    queries: u64,
    period: Option<u64>,
    oracle_queries: Option<u64>,
    validation_queries: Option<u64>,
}

impl Row {
    fn plain(sink: SubsetMask, queries: u64) -> Self {
        Row {
            sink,
            queries,
            period: None,
            oracle_queries: None,
            validation_queries: None,
        }
    }
}

fn bench_row(m: &Outmap, method: BenchMethod, seed: u64) -> CliResult<Row> {
    Ok(match method {
        BenchMethod::NaiveWalk => {
            let oracle = with_query_counting(m);
            let l = naive_walk_count(&oracle)?;
            let sink = orbit_period(m, SubsetMask::EMPTY)?.sink_candidate;
            Row {
                period: Some(l),
                ..Row::plain(sink, oracle.counter().count)
            }
        }
        BenchMethod::Scan => {
            let oracle = with_query_counting(m);
            let sink = global_sink(&oracle)?;
            Row::plain(sink, oracle.counter().count)
        }
        BenchMethod::Period => {
            let oracle = with_query_counting(m);
            let l = naive_walk_count(&oracle)?;
            Row {
                period: Some(l),
                ..Row::plain(sink_via_period(m)?, oracle.counter().count)
            }
        }
        BenchMethod::Qpf => {
            let report = quantum_find_sink(m, &QpfConfig::for_dim(m.dim()).with_seed(seed))?;
            Row {
                sink: report.sink,
                queries: report.eval_queries,
                period: Some(report.period),
                oracle_queries: Some(report.oracle_queries),
                validation_queries: Some(report.validation_queries),
            }
        }
        BenchMethod::Facet => {
            let search = solve_by_facet_decision(m, &mut PeriodDecision::new(m)?)?;
            Row::plain(search.sink, search.decision_calls as u64)
        }
        BenchMethod::RandomEdge => {
            let (sink, counter) = random_edge_walk(m, SubsetMask::EMPTY, seed)?;
            Row::plain(sink, counter.count)
        }
    })
}

fn method_name(method: BenchMethod) -> &'static str {
    match method {
        BenchMethod::NaiveWalk => "naive-walk",
        BenchMethod::Scan => "scan",
        BenchMethod::Period => "period",
        BenchMethod::Qpf => "qpf",
        BenchMethod::Facet => "facet",
        BenchMethod::RandomEdge => "random-edge",
    }
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn bench(args: &BenchArgs) -> CliResult<()> {
    let dims = parse_list(&args.n_range)?;
    let seeds = parse_list(&args.seeds)?;
    let family = match args.family {
        Family::Psi => "psi",
        Family::Uniform => "uniform",
        Family::Random => "random",
        Family::Product => return Err(CliError::Usage("bench does not support --family product".into())),
    };
    let mut csv =
        String::from("family,n,seed,method,sink,sink_set,scan_sink,queries,period,oracle_queries,validation_queries\n");
    for &n in &dims {
        let n = u32::try_from(n)
            .ok()
            .filter(|&n| n <= MAX_TABLE_DIM)
            .ok_or_else(|| CliError::Usage(format!("dimension {n} outside 1..={MAX_TABLE_DIM}")))?;
        for &seed in &seeds {
            let m = match args.family {
                Family::Psi => Outmap::psi(n)?,
                Family::Uniform => Outmap::uniform(n, args.a.unwrap_or(SubsetMask::full(n)))?,
                Family::Random => Outmap::random_uso(n, seed)?,
                Family::Product => unreachable!(),
            };
            let scan_sink = global_sink(&m)?;
            for &method in &args.methods {
                let row = bench_row(&m, method, seed)?;
                csv.push_str(&format!(
                    "{family},{n},{seed},{},{},\"{}\",{},{},{},{},{}\n",
                    method_name(method),
                    row.sink.bits(),
                    row.sink,
                    scan_sink.bits(),
                    row.queries,
                    opt(row.period),
                    opt(row.oracle_queries),
                    opt(row.validation_queries),
                ));
            }
        }
    }
    match &args.csv {
        Some(path) => fs::write(path, csv)?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(())
}
