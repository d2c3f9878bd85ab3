use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use warpkit_core::labeling::propagate_labels;
use warpkit_core::moves::{parse_trace, replay};
use warpkit_core::warping::{check_relations, updown_solver, UpDownKind};
use warpkit_core::*;

/// Up-down labelings of twisted virtual braids and warping degrees of twisted knot diagrams.
///
/// Inputs are given inline or as `@path` to read a file.
#[derive(Parser)]
#[command(name = "warpkit", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Up-down labeling function of a braid as an affine map.
    Map {
        braid: String,
        /// Evaluate at a tuple such as `1,2,3`.
        #[arg(short, long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// Z2-labeling function of a braid.
    Z2map {
        braid: String,
        /// Evaluate at a 0/1 tuple such as `0,1,1`.
        #[arg(short, long)]
        eval: Option<String>,
    },
    /// Z2-polynomial of a braid.
    Z2poly { braid: String },
    /// Concrete up-down labeling of every edge for given top labels.
    Label {
        braid: String,
        #[arg(short, long, allow_hyphen_values = true)]
        eval: String,
    },
    /// Warping degree at every base point of a Gauss code.
    Warp { code: String },
    /// All up-down labelings of a Gauss code.
    Updown { code: String },
    /// Check the warping-degree relations on a Gauss code.
    Check { code: String },
    /// Enumerate, apply and search braid moves.
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Compare the label maps of two braids.
    Compare { a: String, b: String },
    /// Gauss code of a braid closure.
    ClosureCode { braid: String },
}

#[derive(Subcommand)]
enum MovesCommand {
    /// List every applicable move site.
    List {
        braid: String,
        #[command(flatten)]
        rules: RuleFlags,
    },
    /// Apply move sites in order, e.g. `"R2 backward @0"` or `@trace.txt`.
    Apply {
        braid: String,
        #[arg(required = true)]
        sites: Vec<String>,
    },
    /// Seeded random walk.
    Walk {
        braid: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        rules: RuleFlags,
    },
    /// Breadth-first search for a move sequence between two braids.
    Search {
        from: String,
        to: String,
        #[arg(long, default_value_t = 200_000)]
        max_visited: usize,
        #[arg(long, default_value_t = 2)]
        max_growth: usize,
        #[command(flatten)]
        rules: RuleFlags,
    },
}

#[derive(Args, Clone, Copy)]
struct RuleFlags {
    /// Leave out R2 moves.
    #[arg(long)]
    no_r2: bool,
    /// Include the forbidden moves.
    #[arg(long)]
    forbidden: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 2 for unreadable or malformed input, 3 when the input is well formed but
/// the operation does not apply to it.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if !e.is_parse_error() => 3,
        _ => 2,
    }
}

struct Output {
    text: String,
    json: Value,
}

fn read_input(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}")),
        None => Ok(arg.to_string()),
    }
}

fn braid(arg: &str) -> Result<BraidWord> {
    Ok(parse_braid_word(&read_input(arg)?)?)
}

fn code(arg: &str) -> Result<TwistedGaussCode> {
    Ok(parse_gauss_code(&read_input(arg)?)?)
}

fn tuple(text: &str) -> Result<Vec<i64>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Syntax(t.trim().to_string()).into()))
        .collect()
}

fn bits(text: &str) -> Result<Vec<u8>> {
    tuple(text)?
        .into_iter()
        .map(|v| match v {
            0 | 1 => Ok(v as u8),
            _ => Err(Error::Range(format!("Z2 inputs must be 0 or 1, got {v}")).into()),
        })
        .collect()
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn paren<T: ToString>(items: &[T]) -> String {
    format!("({})", join(items, ", "))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Map { braid: b, eval } => cmd_map(&braid(b)?, eval.as_deref()),
        Command::Z2map { braid: b, eval } => cmd_z2map(&braid(b)?, eval.as_deref()),
        Command::Z2poly { braid: b } => {
            let p = z2_polynomial(&braid(b)?);
            Ok(Output { text: format!("{p}\n"), json: json!({ "polynomial": p.to_string(), "k": p.k, "m": p.m }) })
        }
        Command::Label { braid: b, eval } => cmd_label(&braid(b)?, eval),
        Command::Warp { code: c } => cmd_warp(&code(c)?),
        Command::Updown { code: c } => cmd_updown(&code(c)?),
        Command::Check { code: c } => cmd_check(&code(c)?),
        Command::Moves(m) => cmd_moves(m),
        Command::Compare { a, b } => {
            let (a, b) = (braid(a)?, braid(b)?);
            let verdict = r2_indicator(&a, &b);
            let mut text = format!("{verdict}\n");
            if verdict == R2Verdict::RequiresR2 {
                let (fa, fb) = (updown_map(&a), updown_map(&b));
                text += &format!("  f(a) = {}\n  f(b) = {}\n", paren(&fa.formula()), paren(&fb.formula()));
            }
            Ok(Output { text, json: json!({ "verdict": verdict }) })
        }
        Command::ClosureCode { braid: b } => {
            let c = braid_closure_code(&braid(b)?)?;
            Ok(Output { text: format!("{}\n", c.render_as_given()), json: json!({ "code": c.render_as_given() }) })
        }
    }
}

fn cmd_map(w: &BraidWord, eval: Option<&str>) -> Result<Output> {
    let map = updown_map(w);
    let signs: Vec<&str> = map.sign.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
    let mut text = format!(
        "n       {}\nperm    {}\nsign    {}\noffset  {}\nf(x)    {}\n",
        map.degree(),
        join(&map.perm.one_based(), " "),
        join(&signs, " "),
        join(&map.offset, " "),
        paren(&map.formula()),
    );
    let mut out = serde_json::to_value(&map)?;
    if let Some(e) = eval {
        let x = tuple(e)?;
        let y = map.evaluate(&x)?;
        text += &format!("f{} = {}\n", paren(&x), paren(&y));
        out["eval"] = json!({ "input": x, "output": y });
    }
    Ok(Output { text, json: out })
}

fn cmd_z2map(w: &BraidWord, eval: Option<&str>) -> Result<Output> {
    let map = z2_map(w);
    let witness = nontriviality_witness(w);
    let mut text = format!(
        "n        {}\nperm     {}\nc        {}\nF(x)     {}\nwitness  {}\n",
        map.degree(),
        join(&map.perm.one_based(), " "),
        join(&map.c, " "),
        map.polynomial(),
        witness.as_deref().map_or("none".to_string(), paren),
    );
    let mut out = serde_json::to_value(&map)?;
    out["polynomial"] = json!(map.polynomial().to_string());
    out["witness"] = json!(witness);
    if let Some(e) = eval {
        let x = bits(e)?;
        let y = map.evaluate(&x)?;
        text += &format!("g{} = {}\n", paren(&x), paren(&y));
        out["eval"] = json!({ "input": x, "output": y });
    }
    Ok(Output { text, json: out })
}

fn cmd_label(w: &BraidWord, eval: &str) -> Result<Output> {
    let top = tuple(eval)?;
    let p = propagate_labels(w, &top)?;
    let mut text = String::new();
    for (s, labels) in p.edges.strands.iter().enumerate() {
        text += &format!("strand {}  {}\n", s + 1, join(labels, " "));
    }
    text += &format!("bottom    {}\n", paren(&p.bottom));
    Ok(Output { text, json: json!({ "top": top, "strands": p.edges.strands, "bottom": p.bottom }) })
}

fn cmd_warp(c: &TwistedGaussCode) -> Result<Output> {
    let r = warping_degree(c);
    let text = format!(
        "code         {}\ndegrees      {}\nd(D)         {} (edge {})\n#C           {}\nbars         {}\nalternating  {}\n",
        c.render_as_given(),
        join(&r.degrees, " "),
        r.min,
        r.argmin,
        r.crossings,
        r.bars,
        r.is_alternating,
    );
    Ok(Output { text, json: serde_json::to_value(&r)? })
}

fn cmd_updown(c: &TwistedGaussCode) -> Result<Output> {
    let f = updown_solver(c)?;
    let terms: Vec<String> = f
        .coefficient
        .iter()
        .zip(&f.constant)
        .map(|(&a, &b)| match (a, b) {
            (1, 0) => "x".to_string(),
            (1, b) if b < 0 => format!("x{b}"),
            (1, b) => format!("x+{b}"),
            (_, 0) => "-x".to_string(),
            (_, b) => format!("{b}-x"),
        })
        .collect();
    let mut text = match f.kind {
        UpDownKind::Unique => format!("Unique, x = {}\n", f.base[0]),
        UpDownKind::OneParameter => "OneParameter, x free\n".to_string(),
    };
    text += &format!("edges     {}\nlabels    {}\n", join(&terms, " "), join(&f.base, " "));
    Ok(Output { text, json: serde_json::to_value(&f)? })
}

fn cmd_check(c: &TwistedGaussCode) -> Result<Output> {
    let report = check_relations(c)?;
    let mut text = String::new();
    for check in &report.checks {
        let status = match (check.applicable, check.holds) {
            (true, true) => "holds",
            (true, false) => "FAILS",
            (false, true) => "holds (not claimed)",
            (false, false) => "fails (not claimed)",
        };
        text += &format!("{:<22} {:<20} {}\n", check.relation.to_string(), status, check.witness);
    }
    Ok(Output { text, json: serde_json::to_value(&report)? })
}

fn cmd_moves(m: &MovesCommand) -> Result<Output> {
    match m {
        MovesCommand::List { braid: b, rules } => {
            let sites: Vec<MoveSite> = enumerate_moves(&braid(b)?, rules.forbidden)
                .into_iter()
                .filter(|s| !(rules.no_r2 && s.rule == RuleName::R2))
                .collect();
            let text = sites.iter().map(|s| format!("{s}\n")).collect();
            Ok(Output { text, json: json!({ "sites": sites }) })
        }
        MovesCommand::Apply { braid: b, sites } => {
            let start = braid(b)?;
            let mut trace = Vec::new();
            for s in sites {
                trace.extend(parse_trace(&read_input(s)?)?);
            }
            let end = replay(&start, &trace)?;
            Ok(Output { text: format!("{end}\n"), json: json!({ "word": end.to_string(), "trace": trace }) })
        }
        MovesCommand::Walk { braid: b, steps, seed, rules } => {
            let walk = random_walk(&braid(b)?, *steps, !rules.no_r2, rules.forbidden, *seed);
            let mut text = format!("{}\n", walk.word);
            for s in &walk.trace {
                text += &format!("# {s}\n");
            }
            if walk.stopped_early {
                text += &format!("# stopped after {} moves: no applicable site\n", walk.trace.len());
            }
            let json = json!({
                "word": walk.word.to_string(),
                "trace": walk.trace,
                "stopped_early": walk.stopped_early,
            });
            Ok(Output { text, json })
        }
        MovesCommand::Search { from, to, max_visited, max_growth, rules } => {
            let limits = SearchLimits {
                max_length_growth: *max_growth,
                max_visited: *max_visited,
                allow_r2: !rules.no_r2,
                include_forbidden: rules.forbidden,
            };
            let r = bounded_search(&braid(from)?, &braid(to)?, limits)?;
            let mut text = if r.found {
                let moves = if r.path.len() == 1 { "move" } else { "moves" };
                format!("found, {} {moves} ({} words visited)\n", r.path.len(), r.visited)
            } else if let Some(reason) = &r.pruned {
                format!("not found: {reason}\n")
            } else if r.limit_hit {
                format!("not found within {} visited words\n", r.visited)
            } else {
                format!("not found: reachable set exhausted ({} words)\n", r.visited)
            };
            for s in &r.path {
                text += &format!("{s}\n");
            }
            Ok(Output { text, json: serde_json::to_value(&r)? })
        }
    }
}
