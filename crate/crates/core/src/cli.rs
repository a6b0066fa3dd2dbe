//! The `rcat` command line. Every number printed here comes straight from a
//! library call.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::lattice_paths::{enumerate_paths, parse_u32_list, Slope};
use crate::parking::{character_table, enumerate_park, from_slope_word, to_slope_word, ParkingFunction, SlopeParkingWord};
use crate::qseries::{
    catalan_instance, csp_verify, homogeneous_instance, kreweras_instance, narayana_instance, rank_profile,
};
use crate::rational_nc::{
    enumerate_hnc, enumerate_nc, is_member_kreweras, is_member_rank_orbit, is_member_reconstruction, rank_assignment,
    rank_sequence,
};
use crate::set_partitions::SetPartition;
use crate::symmetry::{
    count_symmetric_catalan, count_symmetric_kreweras, count_symmetric_narayana, fixed_partitions,
    is_noble_partition, modified_rank_sequence, orbit_profile, SymmetricContext,
};

/// Largest `b - 1` handled by exhaustive subcommands without `--force`.
pub const SIZE_GUARD: u32 = 16;

#[derive(Parser, Debug)]
#[command(name = "rcat", version, about = "Exact rational Catalan combinatorics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Run exhaustive modes even when b - 1 exceeds the size guard.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the a,b-Dyck paths.
    Paths { a: u32, b: u32 },
    /// List NC(a,b), optionally by block count or rank profile.
    Nc {
        a: u32,
        b: u32,
        /// Only partitions with exactly this many blocks.
        #[arg(long, conflicts_with = "ranks")]
        blocks: Option<usize>,
        /// r_1,..,r_a: number of blocks of each rank.
        #[arg(long)]
        ranks: Option<String>,
    },
    /// List the homogeneous partitions HNC(a,b).
    Hnc { a: u32, b: u32 },
    /// Test a partition of [b-1] for membership in NC(a,b).
    Member {
        a: u32,
        b: u32,
        partition: String,
        #[arg(long, value_enum, default_value_t = Method::Reconstruction)]
        method: Method,
    },
    /// Ranks of the blocks of a noncrossing partition of [b-1].
    Rank { a: u32, b: u32, partition: String },
    /// Kreweras complement of a noncrossing partition of [n].
    Krew { n: u32, partition: String },
    /// Partitions fixed by rot^d, or counts checked against closed forms.
    Symmetric {
        a: u32,
        b: u32,
        d: u32,
        /// catalan | kreweras:M1,..,Ma | narayana:P
        #[arg(long)]
        count: Option<CountSpec>,
    },
    /// Verify a cyclic sieving phenomenon.
    Csp {
        a: u32,
        b: u32,
        /// catalan | narayana:K | kreweras:R1,..,Ra | homogeneous
        #[arg(long)]
        family: Family,
    },
    /// Noncrossing parking functions, their character, or the slope word bijection.
    Park {
        a: u32,
        b: u32,
        /// Compare the brute-force character against the predicted one for every conjugacy class and rotation.
        #[arg(long = "char", conflicts_with = "word")]
        character: bool,
        /// A slope word such as 4,2,1,4,1, or a parking function such as 1,3,7:3,5|2:2|4,5,6:1,4.
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Reconstruction,
    Kreweras,
    RankOrbit,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CountSpec {
    Catalan,
    Kreweras(Vec<u32>),
    Narayana(u32),
}

impl FromStr for CountSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "catalan" => Ok(CountSpec::Catalan),
            Some(("kreweras", m)) => Ok(CountSpec::Kreweras(parse_u32_list(m)?)),
            Some(("narayana", p)) => p.parse().map(CountSpec::Narayana).map_err(|e| format!("{p:?}: {e}")),
            _ => Err(format!("unknown count {s:?}; expected catalan, kreweras:M or narayana:P")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Family {
    Catalan,
    Narayana(u32),
    Kreweras(Vec<u32>),
    Homogeneous,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "catalan" => Ok(Family::Catalan),
            None if s == "homogeneous" => Ok(Family::Homogeneous),
            Some(("narayana", k)) => k.parse().map(Family::Narayana).map_err(|e| format!("{k:?}: {e}")),
            Some(("kreweras", r)) => Ok(Family::Kreweras(parse_u32_list(r)?)),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

/// A rendered result: rows for table/csv, a JSON value, and the verdict for the exit code.
struct Report {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(headers: Vec<&'static str>, rows: Vec<Vec<String>>, json: Value) -> Self {
        Report { headers, rows, json, ok: true }
    }
}

type CmdResult = Result<Report, String>;

type MemberTest = fn(&SetPartition, Slope) -> Result<bool, crate::rational_nc::NcError>;

/// Runs the CLI on `args` (including the program name). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let result = match &pool {
        Some(pool) => pool.install(|| dispatch(&cli)),
        None => dispatch(&cli),
    };
    match result {
        Ok(report) => match render(&report, cli.global.format, out) {
            Ok(()) => i32::from(!report.ok),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, String> {
    let Ok(raw) = std::env::var("RCAT_THREADS") else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("RCAT_THREADS={raw:?} is not a positive integer"))?;
    if n == 0 {
        return Err("RCAT_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map(Some).map_err(|e| e.to_string())
}

fn slope(a: u32, b: u32) -> Result<Slope, String> {
    Slope::proper(a, b).map_err(|e| e.to_string())
}

fn guarded(a: u32, b: u32, g: &Global) -> Result<Slope, String> {
    let s = slope(a, b)?;
    if b - 1 > SIZE_GUARD && !g.force {
        return Err(format!("b - 1 = {} exceeds {SIZE_GUARD}; pass --force to enumerate anyway", b - 1));
    }
    Ok(s)
}

fn partition(text: &str) -> Result<SetPartition, String> {
    text.parse().map_err(|e: crate::set_partitions::PartitionError| e.to_string())
}

fn pad(mut v: Vec<u32>, len: u32) -> Result<Vec<u32>, String> {
    if v.len() > len as usize {
        return Err(format!("vector {v:?} is longer than {len}"));
    }
    v.resize(len as usize, 0);
    Ok(v)
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Paths { a, b } => paths(guarded(*a, *b, g)?),
        Command::Nc { a, b, blocks, ranks } => nc(guarded(*a, *b, g)?, *blocks, ranks.as_deref()),
        Command::Hnc { a, b } => hnc(guarded(*a, *b, g)?),
        Command::Member { a, b, partition: p, method } => member(slope(*a, *b)?, &partition(p)?, *method),
        Command::Rank { a, b, partition: p } => rank(slope(*a, *b)?, &partition(p)?),
        Command::Krew { n, partition: p } => krew(*n, &partition(p)?),
        Command::Symmetric { a, b, d, count } => symmetric(guarded(*a, *b, g)?, *d, count.as_ref()),
        Command::Csp { a, b, family } => csp(guarded(*a, *b, g)?, family),
        Command::Park { a, b, character, word } => match word {
            Some(w) => park_word(slope(*a, *b)?, w),
            None if *character => park_char(guarded(*a, *b, g)?),
            None => park_list(guarded(*a, *b, g)?),
        },
    }
}

fn paths(s: Slope) -> CmdResult {
    let all = enumerate_paths(s);
    let rows = all.iter().map(|p| vec![p.to_string(), p.word()]).collect();
    Ok(Report::new(vec!["runs", "word"], rows, serde_json::to_value(&all).map_err(err)?))
}

fn nc(s: Slope, blocks: Option<usize>, ranks: Option<&str>) -> CmdResult {
    let want = ranks.map(|r| parse_u32_list(r).and_then(|v| pad(v, s.a()))).transpose()?;
    let all = enumerate_nc(s).map_err(err)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for p in all {
        if blocks.is_some_and(|k| p.num_blocks() != k) {
            continue;
        }
        if let Some(r) = &want {
            if rank_profile(&p, s).as_ref() != Some(r) {
                continue;
            }
        }
        let seq = rank_sequence(&p, s).map_err(err)?;
        rows.push(vec![p.to_string(), list(&seq.entries)]);
        items.push(json!({"partition": p.to_string(), "blocks": p.blocks(), "rank_sequence": seq.entries}));
    }
    Ok(Report::new(vec!["partition", "rank_sequence"], rows, Value::Array(items)))
}

fn hnc(s: Slope) -> CmdResult {
    let all = enumerate_hnc(s);
    let rows = all.iter().map(|p| vec![p.to_string()]).collect();
    let items = all.iter().map(|p| json!({"partition": p.to_string(), "blocks": p.blocks()})).collect();
    Ok(Report::new(vec!["partition"], rows, Value::Array(items)))
}

fn member(s: Slope, p: &SetPartition, method: Method) -> CmdResult {
    let methods: &[(&str, MemberTest)] = &[
        ("reconstruction", is_member_reconstruction),
        ("kreweras", is_member_kreweras),
        ("rank-orbit", is_member_rank_orbit),
    ];
    let chosen = methods.iter().filter(|(name, _)| match method {
        Method::All => true,
        Method::Reconstruction => *name == "reconstruction",
        Method::Kreweras => *name == "kreweras",
        Method::RankOrbit => *name == "rank-orbit",
    });
    let mut rows = Vec::new();
    let mut verdicts = serde_json::Map::new();
    for (name, f) in chosen {
        let v = f(p, s).map_err(err)?;
        rows.push(vec![name.to_string(), v.to_string()]);
        verdicts.insert(name.to_string(), Value::Bool(v));
    }
    let json = json!({"a": s.a(), "b": s.b(), "partition": p.to_string(), "verdicts": verdicts});
    Ok(Report::new(vec!["method", "member"], rows, json))
}

fn rank(s: Slope, p: &SetPartition) -> CmdResult {
    let ra = rank_assignment(p, s).map_err(err)?;
    let rows = p.blocks().iter().zip(&ra.ranks).map(|(b, r)| vec![list(b), r.to_string()]).collect();
    let blocks: Vec<Value> = p.blocks().iter().zip(&ra.ranks).map(|(b, r)| json!({"block": b, "rank": r})).collect();
    let seq = rank_sequence(p, s).ok().map(|r| r.entries);
    let json = json!({"a": s.a(), "b": s.b(), "partition": p.to_string(), "blocks": blocks,
        "total": ra.total(), "rank_sequence": seq});
    Ok(Report::new(vec!["block", "rank"], rows, json))
}

fn krew(n: u32, p: &SetPartition) -> CmdResult {
    let p = SetPartition::new(n, p.blocks().to_vec()).map_err(err)?;
    let k = p.kreweras().map_err(err)?;
    let inv = p.kreweras_inverse().map_err(err)?;
    let rows = vec![vec![p.to_string(), k.to_string(), inv.to_string()]];
    let json = json!({"n": n, "partition": p.to_string(), "kreweras": k.to_string(), "kreweras_inverse": inv.to_string()});
    Ok(Report::new(vec!["partition", "kreweras", "kreweras_inverse"], rows, json))
}

fn symmetric(s: Slope, d: u32, count: Option<&CountSpec>) -> CmdResult {
    let ctx = SymmetricContext::new(s, d).map_err(err)?;
    let fixed = fixed_partitions(&ctx);
    let Some(count) = count else {
        let mut rows = Vec::new();
        let mut items = Vec::new();
        for p in &fixed {
            let seq = modified_rank_sequence(p, &ctx).map_err(err)?;
            let noble = is_noble_partition(p, &ctx).map_err(err)?;
            rows.push(vec![p.to_string(), seq.to_string(), noble.to_string()]);
            items.push(json!({"partition": p.to_string(), "modified_rank_sequence": seq.entries, "noble": noble}));
        }
        return Ok(Report::new(vec!["partition", "modified_rank_sequence", "noble"], rows, Value::Array(items)));
    };
    let profiles = fixed.iter().map(|p| orbit_profile(p, &ctx)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let mut checks: Vec<(String, u64, String)> = Vec::new();
    match count {
        CountSpec::Catalan => {
            checks.push(("catalan".into(), fixed.len() as u64, count_symmetric_catalan(&ctx).to_string()));
        }
        CountSpec::Kreweras(m) => {
            let m = pad(m.clone(), s.a())?;
            let formula = count_symmetric_kreweras(&ctx, &m).map_err(err)?;
            let brute = profiles.iter().filter(|pr| pr.m == m).count() as u64;
            checks.push((format!("kreweras:{}", list(&m)), brute, formula.to_string()));
        }
        CountSpec::Narayana(p) => {
            for central in [true, false] {
                let formula = count_symmetric_narayana(&ctx, *p, central).map_err(err)?;
                let brute = profiles.iter().filter(|pr| pr.orbits() == *p && pr.central == central).count() as u64;
                let label = if central { "central" } else { "no central" };
                checks.push((format!("narayana:{p} {label}"), brute, formula.to_string()));
            }
        }
    }
    let ok = checks.iter().all(|(_, brute, formula)| brute.to_string() == *formula);
    let rows = checks
        .iter()
        .map(|(c, brute, formula)| vec![c.clone(), brute.to_string(), formula.clone(), (brute.to_string() == *formula).to_string()])
        .collect();
    let items = checks
        .iter()
        .map(|(c, brute, formula)| json!({"count": c, "brute": brute, "formula": formula, "ok": brute.to_string() == *formula}))
        .collect();
    let mut report = Report::new(vec!["count", "brute", "formula", "ok"], rows, Value::Array(items));
    report.ok = ok;
    Ok(report)
}

fn csp(s: Slope, family: &Family) -> CmdResult {
    let inst = match family {
        Family::Catalan => catalan_instance(s),
        Family::Narayana(k) => narayana_instance(s, *k),
        Family::Kreweras(r) => kreweras_instance(s, &pad(r.clone(), s.a())?),
        Family::Homogeneous => homogeneous_instance(s),
    }
    .map_err(err)?;
    let report = csp_verify(&inst).map_err(err)?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            let eval = r.eval.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
            vec![r.d.to_string(), r.k.to_string(), eval, r.fixed.to_string(), r.ok.to_string()]
        })
        .collect();
    let mut out = Report::new(vec!["d", "k", "eval", "fixed", "ok"], rows, serde_json::to_value(&report).map_err(err)?);
    out.ok = report.pass;
    Ok(out)
}

fn park_list(s: Slope) -> CmdResult {
    let all = enumerate_park(s).map_err(err)?;
    let rows = all.iter().map(|pf| vec![pf.to_string(), to_slope_word(pf).to_string()]).collect();
    Ok(Report::new(vec!["parking_function", "word"], rows, serde_json::to_value(&all).map_err(err)?))
}

fn park_char(s: Slope) -> CmdResult {
    let table = character_table(s).map_err(err)?;
    let rows = table
        .iter()
        .map(|r| vec![r.cycle_type.clone(), r.d.to_string(), r.brute.to_string(), r.predicted.to_string(), r.ok.to_string()])
        .collect();
    let mut out = Report::new(
        vec!["cycle_type", "d", "brute", "predicted", "ok"],
        rows,
        serde_json::to_value(&table).map_err(err)?,
    );
    out.ok = table.iter().all(|r| r.ok);
    Ok(out)
}

fn park_word(s: Slope, text: &str) -> CmdResult {
    let pf = if text.contains(':') {
        ParkingFunction::parse(s, text).map_err(err)?
    } else {
        from_slope_word(&SlopeParkingWord::parse(s, text).map_err(err)?).map_err(err)?
    };
    let word = to_slope_word(&pf);
    let rows = vec![vec![pf.to_string(), word.to_string()]];
    let json = json!({"parking_function": pf, "word": word.to_string()});
    Ok(Report::new(vec!["parking_function", "word"], rows, json))
}

fn list(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn render(report: &Report, format: Format, out: &mut dyn Write) -> Result<(), String> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&report.json).map_err(err)?;
            writeln!(out, "{text}").map_err(err)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&report.headers).map_err(err)?;
            for row in &report.rows {
                w.write_record(row).map_err(err)?;
            }
            w.flush().map_err(err)
        }
        Format::Table => {
            let mut widths: Vec<usize> = report.headers.iter().map(|h| h.len()).collect();
            for row in &report.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &mut dyn Iterator<Item = &str>| {
                let padded: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&mut report.headers.iter().copied())).map_err(err)?;
            for row in &report.rows {
                writeln!(out, "{}", line(&mut row.iter().map(String::as_str))).map_err(err)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("rcat").chain(args.iter().copied()), &mut out, &mut e);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn specs_parse() {
        assert_eq!("catalan".parse::<CountSpec>(), Ok(CountSpec::Catalan));
        assert_eq!("kreweras:1,0".parse::<CountSpec>(), Ok(CountSpec::Kreweras(vec![1, 0])));
        assert!("narayana:x".parse::<CountSpec>().is_err());
        assert_eq!("narayana:2".parse::<Family>(), Ok(Family::Narayana(2)));
        assert!("fibonacci".parse::<Family>().is_err());
    }

    #[test]
    fn table_layout() {
        let (code, out, _) = call(&["paths", "2", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "runs  word\n1,1   NENEE\n2,0   NNEEE\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["paths", "2", "4"]).0, 2);
        assert_eq!(call(&["nc", "3", "5", "--blocks", "1", "--ranks", "3"]).0, 2);
        let (code, _, e) = call(&["paths", "1", "18"]);
        assert_eq!(code, 2);
        assert!(e.contains("--force"));
    }
}
