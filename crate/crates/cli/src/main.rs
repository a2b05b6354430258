//! `projdet`: character tables, detection runs, classical baselines and
//! holographic round trips from the command line.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use projdet::centre::{k_star, k_star_growth_report, SignatureTable};
use projdet::characters::CharacterTable;
use projdet::classical::{self, classical_detect, EpsilonPolicy};
use projdet::detection::{complexity_report, detect_projector, DEFAULT_SEED};
use projdet::holographic::{self, cutoff_csv, cutoff_table, holographic_complexity_report, round_trip};
use projdet::kronlr::{
    dim_a, dim_k, kron_detect, kronecker, kronecker_csv, kronecker_table, lr_coefficient, lr_csv, lr_detect,
    lr_table, necklace_count, ribbon_count, TripleCentreState,
};
use projdet::partition::{format_tuple, parse_tuple, partitions};
use projdet::{Error, Exec, Partition};

#[derive(Parser)]
#[command(name = "projdet", version, about = "Projector detection in symmetric group algebras")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "PROJDET_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Run table builds and sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of S_n, or its T_2..T_K signature table.
    Chars {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Emit normalized characters on T_2..T_K instead of the full table.
        #[arg(long, value_name = "K")]
        signatures: Option<usize>,
    },
    /// k*(n) for n = 2..=n_max.
    Kstar {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a detection protocol.
    #[command(subcommand)]
    Detect(Detect),
    /// Kronecker coefficients of S_n.
    Kron {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_triple)]
        triple: Option<Triple>,
        /// Emit every triple as CSV.
        #[arg(long)]
        table: bool,
    },
    /// Littlewood–Richardson coefficients for S_m × S_n ⊂ S_{m+n}.
    Lr {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_triple)]
        triple: Option<Triple>,
        #[arg(long)]
        table: bool,
    },
    /// Holographic moment-recovery pipeline.
    #[command(subcommand)]
    Holo(Holo),
    /// Query and gate totals of the quantum protocol against the classical baseline.
    Report {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
}

#[derive(Subcommand)]
enum Detect {
    /// Phase estimation over the centre of C(S_n).
    Zcsn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_partition)]
        r: Partition,
        #[arg(long)]
        json: bool,
    },
    /// Detection of a Kronecker projector label R1;R2;R3.
    Kron {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_triple)]
        triple: Triple,
    },
    /// Detection of an LR projector label R1;R2;R with R1 ⊢ m, R2 ⊢ n.
    Lr {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_triple)]
        triple: Triple,
    },
    /// Randomized l2-sampling estimate of the eigenvalues.
    Classical(ClassicalArgs),
}

#[derive(Args)]
struct ClassicalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_partition)]
    r: Partition,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, value_enum, default_value_t = Policy::EpsilonStar)]
    policy: Policy,
}

#[derive(Subcommand)]
enum Holo {
    /// Diagram → profile → diagram for one R or every R ⊢ n.
    Roundtrip {
        #[arg(long)]
        n: usize,
        #[arg(long = "capital-n")]
        big_n: usize,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        #[arg(long, value_parser = parse_partition)]
        r: Option<Partition>,
        /// Write the (θ, ũ) samples of --r as CSV.
        #[arg(long, requires = "r")]
        profile_csv: Option<PathBuf>,
    },
    /// moment_cutoff(n, n+1) next to k*(n).
    CutoffTable {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Operation counts and cost case for cutoff Λ and measurement exponent β.
    Cost {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        beta: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    EpsilonStar,
    RoundingSafe,
}

impl From<Policy> for EpsilonPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::EpsilonStar => EpsilonPolicy::EpsilonStar,
            Policy::RoundingSafe => EpsilonPolicy::RoundingSafe,
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Three partitions written "R1;R2;R3".
#[derive(Clone)]
struct Triple([Partition; 3]);

impl Triple {
    fn label(&self) -> String {
        format_tuple(&[&self.0[0], &self.0[1], &self.0[2]])
    }
}

fn parse_triple(s: &str) -> Result<Triple, String> {
    let parts: [Partition; 3] = parse_tuple(s)
        .map_err(|e| e.to_string())?
        .try_into()
        .map_err(|v: Vec<Partition>| format!("expected three partitions separated by ';', got {}", v.len()))?;
    Ok(Triple(parts))
}

/// Failure modes mapped to exit codes: 1 for a detection that did not
/// produce the right label, 2 for bad input.
enum Failure {
    Detection(anyhow::Error),
    Usage(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPartition(_)
            | Error::InvalidArgument(_)
            | Error::WeightMismatch { .. }
            | Error::Capability { .. }
            | Error::RegisterTooSmall { .. }
            | Error::InvalidGrid(_) => Failure::Usage(e.into()),
            _ => Failure::Detection(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Run = Result<Output, Failure>;

/// What a command produced, and whether it counts as a detection failure.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn check_weight(r: &Partition, n: usize) -> Result<(), Failure> {
    r.ensure_weight(n).map_err(Failure::from)
}

#[derive(Serialize)]
struct Schema<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

fn wrap<T: Serialize>(body: T) -> Schema<T> {
    Schema { schema: "1", body }
}

fn chars(n: usize, format: Format, signatures: Option<usize>, exec: Exec) -> Run {
    if let Some(k) = signatures {
        let t = SignatureTable::build(n, k, exec)?;
        return Ok(Output::ok(match format {
            Format::Csv => t.to_csv(),
            Format::Json => {
                #[derive(Serialize)]
                struct Body<'a> {
                    n: usize,
                    cutoff: usize,
                    collision_free: bool,
                    signatures: &'a [projdet::centre::Signature],
                }
                json(&wrap(Body { n, cutoff: k, collision_free: t.is_collision_free(), signatures: t.signatures() }))
            }
        }));
    }
    let t = CharacterTable::full(n, exec);
    Ok(Output::ok(match format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json() + "\n",
    }))
}

fn kstar(n_max: usize, format: Format, exec: Exec) -> Run {
    let rows = k_star_growth_report(n_max, exec);
    Ok(Output::ok(match format {
        Format::Csv => {
            let mut out = String::from("n,k_star,heuristic\n");
            for r in &rows {
                out.push_str(&format!("{},{},{}\n", r.n, r.k_star, r.heuristic));
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                rows: &'a [projdet::centre::KStarRow],
            }
            json(&wrap(Body { rows: &rows }))
        }
    }))
}

fn detect_zcsn(n: usize, r: &Partition, as_json: bool, seed: u64) -> Run {
    check_weight(r, n)?;
    let (found, transcript) = detect_projector(r, seed)?;
    let failed = found != *r;
    let text = if as_json {
        transcript.to_json() + "\n"
    } else {
        let mut out = format!("identified \"{found}\" (prepared \"{r}\")\n");
        for round in &transcript.rounds {
            out.push_str(&format!(
                "  T_{}: t = {}, measured {}, eigenvalue {}\n",
                round.k, round.t, round.measured, round.decoded
            ));
        }
        out.push_str(&format!("cu_queries {}, total_gates {}\n", transcript.cu_queries, transcript.total_gates));
        out
    };
    Ok(Output { text, failed })
}

fn detect_kron(n: usize, triple: &Triple, seed: u64) -> Run {
    for r in &triple.0 {
        check_weight(r, n)?;
    }
    let state = TripleCentreState::projector([n, n, n], triple.0.clone())?;
    let (found, mut transcript) = kron_detect(&state, seed)?;
    transcript.true_label = Some(triple.label());
    Ok(Output { text: transcript.to_json() + "\n", failed: found != triple.0 })
}

fn detect_lr(m: usize, n: usize, triple: &Triple, seed: u64) -> Run {
    let [r1, r2, r] = &triple.0;
    check_weight(r1, m)?;
    check_weight(r2, n)?;
    check_weight(r, m + n)?;
    let state = TripleCentreState::projector([m, n, m + n], triple.0.clone())?;
    let (found, mut transcript) = lr_detect(&state, seed)?;
    transcript.true_label = Some(triple.label());
    Ok(Output { text: transcript.to_json() + "\n", failed: found.labels() != triple.0 })
}

#[derive(Serialize)]
struct Coefficient {
    triple: String,
    coefficient: String,
}

#[derive(Serialize)]
struct KTrialSummary {
    k: usize,
    truth: i64,
    epsilon: f64,
    success_rate: f64,
    max_queries: u64,
}

#[derive(Serialize)]
struct TrialSummary {
    n: usize,
    true_label: String,
    delta: f64,
    policy: EpsilonPolicy,
    seed: u64,
    trials: u64,
    per_k: Vec<KTrialSummary>,
    failures: u64,
}

fn detect_classical(a: &ClassicalArgs, seed: u64, exec: Exec) -> Run {
    check_weight(&a.r, a.n)?;
    let policy = EpsilonPolicy::from(a.policy);
    if a.trials <= 1 {
        let report = classical_detect(&a.r, a.delta, policy, seed)?;
        let failed = report.identified_label.as_deref() != Some(report.true_label.as_str());
        return Ok(Output { text: json(&report), failed });
    }
    if a.trials > 100_000 {
        return Err(Failure::Usage(anyhow::anyhow!("at most 100000 trials")));
    }
    let ks = if a.n < 2 { 1 } else { k_star(a.n) };
    let mut per_k = Vec::new();
    let mut failures = 0;
    for k in 2..=ks {
        let (rate, max_queries) = trial_rate(&a.r, k, a.delta, policy, a.trials, seed, exec)?;
        failures += a.trials - (rate * a.trials as f64).round() as u64;
        per_k.push(KTrialSummary {
            k,
            truth: projdet::centre::normalized_character(&a.r, k)?.try_into().map_err(|_| {
                Failure::Usage(anyhow::anyhow!("eigenvalue out of range"))
            })?,
            epsilon: classical::epsilon_for(policy, &a.r, k),
            success_rate: rate,
            max_queries,
        });
    }
    let summary = TrialSummary {
        n: a.n,
        true_label: a.r.to_string(),
        delta: a.delta,
        policy,
        seed,
        trials: a.trials,
        per_k,
        failures,
    };
    Ok(Output { text: json(&wrap(summary)), failed: failures > 0 })
}

/// Trial i runs with seed + i.
fn trial_rate(
    r: &Partition,
    k: usize,
    delta: f64,
    policy: EpsilonPolicy,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<(f64, u64), Failure> {
    let seeds: Vec<u64> = (0..trials).map(|i| seed.wrapping_add(i)).collect();
    let runs = exec.try_map(&seeds, |&s| classical::estimate_eigenvalue(r, k, delta, policy, s))?;
    let ok = runs.iter().filter(|e| e.correct).count();
    Ok((ok as f64 / trials as f64, runs.iter().map(|e| e.queries).max().unwrap_or(0)))
}

fn kron(n: usize, triple: Option<Triple>, as_table: bool, exec: Exec) -> Run {
    if as_table {
        return Ok(Output::ok(kronecker_csv(&kronecker_table(n, exec)?)));
    }
    if let Some(t) = triple {
        for r in &t.0 {
            check_weight(r, n)?;
        }
        let [r1, r2, r3] = &t.0;
        let body = Coefficient { triple: t.label(), coefficient: kronecker(r1, r2, r3)?.to_string() };
        return Ok(Output::ok(json(&wrap(body))));
    }
    #[derive(Serialize)]
    struct Body {
        n: usize,
        dimension: String,
        ribbon_count: String,
    }
    let body = Body { n, dimension: dim_k(n)?.to_string(), ribbon_count: ribbon_count(n).to_string() };
    Ok(Output::ok(json(&wrap(body))))
}

fn lr(m: usize, n: usize, triple: Option<Triple>, as_table: bool, exec: Exec) -> Run {
    if as_table {
        return Ok(Output::ok(lr_csv(&lr_table(m, n, exec)?)));
    }
    if let Some(t) = triple {
        let [r1, r2, r] = &t.0;
        check_weight(r1, m)?;
        check_weight(r2, n)?;
        let body = Coefficient { triple: t.label(), coefficient: lr_coefficient(r1, r2, r)?.to_string() };
        return Ok(Output::ok(json(&wrap(body))));
    }
    #[derive(Serialize)]
    struct Body {
        m: usize,
        n: usize,
        dimension: String,
        necklace_count: String,
    }
    let body = Body { m, n, dimension: dim_a(m, n)?.to_string(), necklace_count: necklace_count(m, n)?.to_string() };
    Ok(Output::ok(json(&wrap(body))))
}

fn holo_roundtrip(
    n: usize,
    big_n: usize,
    lambda: Option<usize>,
    rho: f64,
    r: Option<Partition>,
    profile_csv: Option<PathBuf>,
    exec: Exec,
) -> Run {
    let lambda = match lambda {
        Some(l) => l,
        None => holographic::moment_cutoff(n, big_n)?,
    };
    if let (Some(r), Some(path)) = (&r, &profile_csv) {
        check_weight(r, n)?;
        let config = holographic::FermionConfig::from_diagram(r, big_n)?;
        let profile = holographic::u_profile(&config, rho, lambda)?;
        fs::write(path, profile.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    let diagrams = match r {
        Some(r) => {
            check_weight(&r, n)?;
            vec![r]
        }
        None => partitions(n),
    };
    let trips = exec.try_map(&diagrams, |r| round_trip(r, big_n, rho, Some(lambda)))?;
    let failed = trips.iter().any(|t| t.recovered != t.input);
    #[derive(Serialize)]
    struct Body {
        n: usize,
        #[serde(rename = "N")]
        big_n: usize,
        lambda: usize,
        rho: f64,
        all_recovered: bool,
        max_casimir_residual: f64,
        round_trips: Vec<holographic::RoundTrip>,
    }
    let body = Body {
        n,
        big_n,
        lambda,
        rho,
        all_recovered: !failed,
        max_casimir_residual: trips.iter().map(|t| t.casimir_residual).fold(0.0, f64::max),
        round_trips: trips,
    };
    Ok(Output { text: json(&wrap(body)), failed })
}

fn holo_cutoff_table(n_max: usize, format: Format, exec: Exec) -> Run {
    let rows = cutoff_table(n_max, exec)?;
    Ok(Output::ok(match format {
        Format::Csv => cutoff_csv(&rows),
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                rows: Vec<holographic::CutoffRow>,
            }
            json(&wrap(Body { rows }))
        }
    }))
}

#[derive(Serialize)]
struct ReportRow {
    n: usize,
    k_star: usize,
    qpe_queries: u64,
    qpe_gates: u64,
    classical_queries: Option<u64>,
    classical_queries_without_log: Option<f64>,
    classical_failures: Option<u64>,
}

fn report(n_max: usize, delta: f64, seed: u64, exec: Exec) -> Run {
    let ns: Vec<usize> = (2..=n_max).collect();
    let rows = exec.try_map(&ns, |&n| -> Result<ReportRow, Error> {
        let q = complexity_report(n);
        let (mut queries, mut without_log, mut failures) = (None, None, None);
        if n <= classical::MAX_N {
            let runs = partitions(n)
                .iter()
                .map(|r| classical_detect(r, delta, EpsilonPolicy::EpsilonStar, seed))
                .collect::<Result<Vec<_>, _>>()?;
            queries = Some(runs.iter().map(|r| r.total_queries).sum());
            without_log = Some(runs.iter().map(|r| r.total_queries_without_log).sum());
            failures = Some(runs.iter().filter(|r| r.identified_label.as_deref() != Some(&r.true_label)).count() as u64);
        }
        Ok(ReportRow {
            n,
            k_star: q.k_star,
            qpe_queries: q.query_total,
            qpe_gates: q.gate_total,
            classical_queries: queries,
            classical_queries_without_log: without_log,
            classical_failures: failures,
        })
    })?;
    #[derive(Serialize)]
    struct Body {
        delta: f64,
        seed: u64,
        /// Classical totals are summed over every diagram of n.
        rows: Vec<ReportRow>,
    }
    Ok(Output::ok(json(&wrap(Body { delta, seed, rows }))))
}

fn run(cli: Cli) -> Run {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let seed = cli.seed;
    match cli.command {
        Command::Chars { n, format, signatures } => chars(n, format, signatures, exec),
        Command::Kstar { n_max, format } => kstar(n_max, format, exec),
        Command::Detect(d) => match d {
            Detect::Zcsn { n, r, json } => detect_zcsn(n, &r, json, seed),
            Detect::Kron { n, triple } => detect_kron(n, &triple, seed),
            Detect::Lr { m, n, triple } => detect_lr(m, n, &triple, seed),
            Detect::Classical(a) => detect_classical(&a, seed, exec),
        },
        Command::Kron { n, triple, table } => kron(n, triple, table, exec),
        Command::Lr { m, n, triple, table } => lr(m, n, triple, table, exec),
        Command::Holo(h) => match h {
            Holo::Roundtrip { n, big_n, lambda, rho, r, profile_csv } => {
                holo_roundtrip(n, big_n, lambda, rho, r, profile_csv, exec)
            }
            Holo::CutoffTable { n_max, format } => holo_cutoff_table(n_max, format, exec),
            Holo::Cost { lambda, beta } => Ok(Output::ok(json(&holographic_complexity_report(lambda, beta)?))),
        },
        Command::Report { n_max, delta } => report(n_max, delta, seed, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(out) => {
            let written = match &output {
                Some(path) => fs::write(path, &out.text).with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.failed {
                eprintln!("detection failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Detection(e)) => {
            eprintln!("detection failed: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
