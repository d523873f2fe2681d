mod args;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use dirinfo::analysis::{
    causality_report, convergence_run, delay_scan, CausalityReport, CausalityThresholds, DEFAULT_ABS_THRESHOLD,
    DEFAULT_DELAY_THRESHOLD, DEFAULT_RATIO,
};
use dirinfo::estimators::{estimate_all, reverse_pair, EstimatorMethod};
use dirinfo::ingest::{align_series, load_csv_series, read_symbol_csv, write_aligned, write_symbol_csv};
use dirinfo::oracle::{
    binary_entropy, coupled_bsc_rates, ctw_redundancy_bound, exact_di, markov_bsc_rate, JointProcessModel,
};
use dirinfo::quantize::{ChangeKind, QuantizeRule};
use dirinfo::sources::{SourceConfig, SourceVariant};
use dirinfo::{CausalPair, Error};

use args::{
    CausalityArgs, Cli, Command, ConvergenceArgs, DelayScanArgs, EstimateArgs, FileInput, Input, Oracle,
    OracleArgs, QuantizeArgs, RunArgs, SimulateArgs,
};

const DEFAULT_N: usize = 100_000;
const DEFAULT_SEED: u64 = 1;
const DEFAULT_SEEDS: u64 = 3;
const DEFAULT_D_MAX: usize = 5;
const DEFAULT_METHOD: u8 = 2;

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } => Failure::Usage(e.to_string()),
            other => Failure::Data(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// The configuration echoed at the top of every output.
struct RunSpec {
    lines: Vec<(String, String)>,
}

impl RunSpec {
    fn new(command: &str) -> Self {
        Self { lines: vec![("command".into(), command.into())] }
    }

    fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    fn header(&self) -> String {
        let mut out = format!("# dirinfo {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.lines {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }
}

fn emit(out: Option<&Path>, spec: &RunSpec, body: &str) -> Outcome {
    let text = spec.header() + body;
    match out {
        Some(p) => File::create(p)?.write_all(text.as_bytes())?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_method(m: u8) -> EstimatorMethod {
    EstimatorMethod::from_index(m).expect("validated by the parser")
}

fn method_list(ms: &[EstimatorMethod]) -> String {
    ms.iter().map(|m| m.index().to_string()).collect::<Vec<_>>().join(",")
}

fn methods_or_all(given: &Option<Vec<u8>>) -> Vec<EstimatorMethod> {
    match given {
        Some(v) => {
            let mut ms: Vec<EstimatorMethod> = v.iter().map(|&m| to_method(m)).collect();
            ms.sort();
            ms.dedup();
            ms
        }
        None => EstimatorMethod::ALL.to_vec(),
    }
}

fn variant_of(input: &Input) -> Option<SourceVariant> {
    Some(match *input {
        Input::MarkovBsc { p, eps } => SourceVariant::MarkovBsc { p, eps },
        Input::Isi { p, delay, eps } => SourceVariant::IsiDelay { p, delay, eps },
        Input::CoupledBsc { alpha, beta } => SourceVariant::CoupledBsc { alpha, beta },
        Input::Iid { q, copy } => SourceVariant::IidPair { q, copy },
        Input::Files(_) => return None,
    })
}

fn default_depth(input: &Input) -> usize {
    match input {
        Input::MarkovBsc { .. } => 3,
        Input::Isi { .. } => 6,
        Input::CoupledBsc { .. } => 2,
        Input::Iid { .. } | Input::Files(_) => 3,
    }
}

fn source_config(input: &Input, run: &RunArgs, spec: &mut RunSpec) -> Result<SourceConfig, Failure> {
    let variant = variant_of(input)
        .ok_or_else(|| Failure::Usage("this command needs a synthetic source, not files".into()))?;
    let cfg = SourceConfig::new(variant, run.n.unwrap_or(DEFAULT_N), run.seed.unwrap_or(DEFAULT_SEED))?;
    spec.set("source", variant).set("n", cfg.n).set("seed", cfg.seed);
    Ok(cfg)
}

fn load_files(f: &FileInput, n: Option<usize>, spec: &mut RunSpec) -> Result<CausalPair, Failure> {
    spec.set("x", f.x.display()).set("y", f.y.display());
    let pair = if f.prices {
        let rule = QuantizeRule {
            threshold: f.threshold,
            kind: if f.log_returns { ChangeKind::Log } else { ChangeKind::Relative },
        };
        let (a, b) = (load_csv_series(&f.x)?, load_csv_series(&f.y)?);
        let aligned = align_series(&a, &b, rule, f.offset)?;
        spec.set("format", "prices")
            .set("threshold", f.threshold)
            .set("returns", if f.log_returns { "log" } else { "relative" })
            .set("offset", f.offset)
            .set("dropped_x", aligned.dropped_a)
            .set("dropped_y", aligned.dropped_b);
        aligned.pair()?
    } else {
        spec.set("format", "symbols");
        CausalPair::new(read_symbol_csv(&f.x, None)?, read_symbol_csv(&f.y, None)?)?
    };
    let pair = match n {
        Some(n) if n < pair.len() => pair.prefix(n),
        _ => pair,
    };
    spec.set("n", pair.len());
    Ok(pair)
}

/// Builds the pair and records where it came from.
fn obtain_pair(input: &Input, run: &RunArgs, spec: &mut RunSpec) -> Result<(CausalPair, usize), Failure> {
    let pair = match input {
        Input::Files(f) => load_files(f, run.n, spec)?,
        _ => source_config(input, run, spec)?.generate()?,
    };
    let depth = run.depth.unwrap_or_else(|| default_depth(input));
    spec.set("depth", depth);
    Ok((pair, depth))
}

fn estimate(a: &EstimateArgs) -> Outcome {
    let mut spec = RunSpec::new("estimate");
    let (pair, depth) = obtain_pair(&a.input, &a.run, &mut spec)?;
    let methods = methods_or_all(&a.method);
    spec.set("methods", method_list(&methods));
    let mut body = String::new();
    if a.trace {
        spec.set("output", "trace of I(X->Y)");
        let all = estimate_all(&pair, depth)?;
        body.push_str("method,i,bits\n");
        for t in all.iter().filter(|t| methods.contains(&t.method)) {
            for (i, v) in &t.points {
                let _ = writeln!(body, "{},{i},{v:.9}", t.method.index());
            }
        }
    } else {
        let fwd = estimate_all(&pair, depth)?;
        let rev = estimate_all(&reverse_pair(&pair)?, depth)?;
        body.push_str("method,di,reverse_di,mi\n");
        for (f, r) in fwd.iter().zip(&rev).filter(|(f, _)| methods.contains(&f.method)) {
            let _ = writeln!(
                body,
                "{},{:.9},{:.9},{:.9}",
                f.method.index(),
                f.final_bits,
                r.final_bits,
                f.final_bits + r.final_bits
            );
        }
    }
    emit(a.run.out.as_deref(), &spec, &body)
}

fn simulate(a: &SimulateArgs) -> Outcome {
    let mut spec = RunSpec::new("simulate");
    let pair = source_config(&a.input, &a.run, &mut spec)?.generate()?;
    if let Some(p) = &a.x_out {
        write_symbol_csv(p, pair.x())?;
        spec.set("x_out", p.display());
    }
    if let Some(p) = &a.y_out {
        write_symbol_csv(p, pair.y())?;
        spec.set("y_out", p.display());
    }
    let mut body = String::from("i,x,y\n");
    for (i, (x, y)) in pair.x().as_slice().iter().zip(pair.y().as_slice()).enumerate() {
        let _ = writeln!(body, "{},{x},{y}", i + 1);
    }
    emit(a.run.out.as_deref(), &spec, &body)
}

fn delay(a: &DelayScanArgs) -> Outcome {
    let mut spec = RunSpec::new("delay-scan");
    let (pair, depth) = obtain_pair(&a.input, &a.run, &mut spec)?;
    let method = to_method(a.method.unwrap_or(DEFAULT_METHOD));
    let d_max = a.d_max.unwrap_or(DEFAULT_D_MAX);
    let threshold = a.threshold.unwrap_or(DEFAULT_DELAY_THRESHOLD);
    spec.set("method", method.index()).set("d_max", d_max).set("threshold", threshold);
    let scan = delay_scan(&pair, d_max, method, depth, threshold)?;
    let mut body = scan.to_csv();
    let detected = scan.detected.map_or("none".to_string(), |d| d.to_string());
    let _ = writeln!(body, "# detected_delay={detected}");
    emit(a.run.out.as_deref(), &spec, &body)
}

fn causality(a: &CausalityArgs) -> Outcome {
    let mut spec = RunSpec::new("causality");
    let (pair, depth) = obtain_pair(&a.input, &a.run, &mut spec)?;
    let method = to_method(a.method.unwrap_or(DEFAULT_METHOD));
    let thresholds = CausalityThresholds {
        abs: a.tau.unwrap_or(DEFAULT_ABS_THRESHOLD),
        ratio: a.rho.unwrap_or(DEFAULT_RATIO),
    };
    spec.set("method", method.index()).set("tau", thresholds.abs).set("rho", thresholds.ratio);
    let report: CausalityReport = causality_report(&pair, method, depth, thresholds)?;
    let mut body = String::new();
    for line in report.to_string().lines() {
        let _ = writeln!(body, "# {line}");
    }
    let _ = writeln!(body, "{}\n{}", CausalityReport::CSV_HEADER, report.csv_row());
    emit(a.run.out.as_deref(), &spec, &body)
}

/// 1, 2, 5 steps per decade from 1000, then `n` itself.
fn default_grid(n: usize, depth: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut decade = 1000usize;
    'outer: loop {
        for m in [1, 2, 5] {
            let v = decade * m;
            if v >= n {
                break 'outer;
            }
            if v > depth {
                grid.push(v);
            }
        }
        decade *= 10;
    }
    grid.push(n);
    grid
}

fn convergence(a: &ConvergenceArgs) -> Outcome {
    let mut spec = RunSpec::new("convergence");
    let cfg = source_config(&a.input, &a.run, &mut spec)?;
    let depth = a.run.depth.unwrap_or_else(|| default_depth(&a.input));
    let methods = methods_or_all(&a.method);
    let first = cfg.seed;
    let seeds: Vec<u64> = (first..first + a.seeds.unwrap_or(DEFAULT_SEEDS)).collect();
    let grid = match &a.grid {
        Some(g) => g.clone(),
        None => default_grid(cfg.n, depth),
    };
    spec.set("depth", depth)
        .set("methods", method_list(&methods))
        .set("seeds", seeds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
        .set("grid", grid.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
    let run = convergence_run(cfg, &methods, &grid, depth, &seeds)?;
    spec.set("quantity", if run.reversed { "I(Y->X)" } else { "I(X->Y)" });
    let mut body = run.to_csv();
    for (m, tv) in run.total_variation() {
        let _ = writeln!(body, "# total_variation {m}={tv:.6}");
    }
    emit(a.run.out.as_deref(), &spec, &body)
}

fn quantize(a: &QuantizeArgs) -> Outcome {
    let mut spec = RunSpec::new("quantize");
    let rule = QuantizeRule {
        threshold: a.threshold,
        kind: if a.log_returns { ChangeKind::Log } else { ChangeKind::Relative },
    };
    spec.set("input", a.input.display())
        .set("threshold", a.threshold)
        .set("returns", if a.log_returns { "log" } else { "relative" });
    let series = load_csv_series(&a.input)?;
    let body = match &a.pair {
        Some(other) => {
            let b = load_csv_series(other)?;
            let aligned = align_series(&series, &b, rule, a.offset)?;
            spec.set("pair", other.display())
                .set("offset", a.offset)
                .set("dropped_input", aligned.dropped_a)
                .set("dropped_pair", aligned.dropped_b);
            let mut buf = Vec::new();
            write_aligned(&mut buf, &aligned)?;
            String::from_utf8(buf).expect("ascii output")
        }
        None => {
            let symbols = rule.apply(&series.values())?;
            let mut body = String::from("date,symbol\n");
            for ((d, _), s) in series.points()[1..].iter().zip(symbols.as_slice()) {
                let _ = writeln!(body, "{d},{s}");
            }
            body
        }
    };
    emit(a.out.as_deref(), &spec, &body)
}

fn oracle(a: &OracleArgs) -> Outcome {
    let mut spec = RunSpec::new("oracle");
    let w = a.digits;
    let mut body = String::new();
    match a.which {
        Oracle::MarkovBsc { p, eps, exact_n } => {
            spec.set("source", SourceVariant::MarkovBsc { p, eps });
            let v = markov_bsc_rate(p, eps)?;
            let _ = writeln!(body, "i_y_to_x={v:.w$}");
            if let Some(n) = exact_n {
                let r = exact_di(&JointProcessModel::markov_bsc(p, eps)?.swapped(), n)?;
                let _ = writeln!(body, "exact_n={n} i_y_to_x={:.w$}", r.di);
            }
        }
        Oracle::CoupledBsc { alpha, beta, exact_n } => {
            spec.set("source", SourceVariant::CoupledBsc { alpha, beta });
            let r = coupled_bsc_rates(alpha, beta)?;
            let _ = writeln!(body, "di={:.w$} rev={:.w$} mi={:.w$}", r.di, r.reverse_di, r.mi);
            if let Some(n) = exact_n {
                let e = exact_di(&JointProcessModel::coupled_bsc(alpha, beta)?, n)?;
                let _ = writeln!(body, "exact_n={n} di={:.w$} rev={:.w$} mi={:.w$}", e.di, e.reverse_di, e.mi);
            }
        }
        Oracle::BinaryEntropy { p } => {
            spec.set("p", p);
            let _ = writeln!(body, "h={:.w$}", binary_entropy(p)?);
        }
        Oracle::CtwBound { gamma, states, n } => {
            spec.set("gamma", gamma).set("states", states).set("n", n);
            let _ = writeln!(body, "bound={:.w$}", ctw_redundancy_bound(gamma, states, n)?);
        }
    }
    emit(None, &spec, &body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(a) => estimate(a),
        Command::Simulate(a) => simulate(a),
        Command::DelayScan(a) => delay(a),
        Command::Causality(a) => causality(a),
        Command::Convergence(a) => convergence(a),
        Command::Quantize(a) => quantize(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_steps() {
        assert_eq!(default_grid(100_000, 3), vec![1000, 2000, 5000, 10_000, 20_000, 50_000, 100_000]);
        assert_eq!(default_grid(1500, 3), vec![1000, 1500]);
        assert_eq!(default_grid(500, 3), vec![500]);
    }

    #[test]
    fn parser_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
