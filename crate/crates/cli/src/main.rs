mod instance;
mod run;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use twistsemi::aut::enumerate_automorphisms;
use twistsemi::semilin::semilinearize;
use twistsemi::twist::twistify;
use twistsemi::{Caps, Error};

use instance::{parse, parse_ring_recipe, Instance};
use run::CheckRun;

/// Prints a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

const EXIT_PASS: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "twistsemi", version, about = "Verify twisted group ring / semilinearization instances")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Leave wall times out of the report.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Override a size cap, e.g. `--caps twist_order=1024`.
    #[arg(long = "caps", value_name = "NAME=VALUE", global = true)]
    caps: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the checks listed in an instance file.
    Check { file: PathBuf },
    /// Ring automorphisms in canonical order.
    Aut {
        #[command(subcommand)]
        command: AutCommand,
    },
    /// Twisted group ring of an instance file.
    Twist {
        #[command(subcommand)]
        command: ShowCommand,
    },
    /// Semilinearization of an instance file's target.
    Semi {
        #[command(subcommand)]
        command: ShowCommand,
    },
}

#[derive(Debug, Subcommand)]
enum AutCommand {
    /// e.g. `aut list gf 2 [1 1 1]`
    List {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        recipe: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum ShowCommand {
    Show { file: PathBuf },
}

/// Failure that ends the run with a non-pass exit status.
struct Abort {
    code: u8,
    message: String,
}

impl Abort {
    fn input(message: impl Into<String>) -> Self {
        Abort {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) {
            EXIT_CAP
        } else {
            EXIT_INPUT
        };
        Abort {
            code,
            message: e.to_string(),
        }
    }
}

fn caps_from(args: &[String]) -> Result<Caps, Abort> {
    let mut caps = Caps::default();
    for a in args {
        let (name, value) = a
            .split_once('=')
            .ok_or_else(|| Abort::input(format!("--caps expects NAME=VALUE, got `{a}`")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Abort::input(format!("cap value `{value}` is not a non-negative integer")))?;
        caps.set(name, value)?;
    }
    Ok(caps)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn load(path: &Path, caps: &Caps) -> Result<(Instance, String), Abort> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Abort::input(format!("{}: {e}", path.display())))?;
    let digest = hex(&Sha256::digest(text.as_bytes()));
    let file = parse(&text).map_err(|e| Abort::input(format!("parse error at {}:{e}", path.display())))?;
    let inst = file.build(caps).map_err(|e| {
        let code = if matches!(e.error, Error::CapExceeded { .. }) {
            EXIT_CAP
        } else {
            EXIT_INPUT
        };
        Abort {
            code,
            message: format!("{}:{}: {}", path.display(), e.line, e.error),
        }
    })?;
    Ok((inst, digest))
}

#[derive(Serialize)]
struct Objects {
    ring: String,
    ring_order: usize,
    automorphisms: usize,
    group: String,
    group_order: usize,
    action: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    checks: usize,
    failed: usize,
    status: &'static str,
}

#[derive(Serialize)]
struct Document<'a> {
    tool: &'static str,
    version: &'static str,
    instance_digest: &'a str,
    caps: Caps,
    objects: Objects,
    checks: &'a [CheckRun],
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
}

fn describe(inst: &Instance) -> Objects {
    let g = &inst.group;
    Objects {
        ring: inst.ring.label().to_string(),
        ring_order: inst.ring.order(),
        automorphisms: inst.aut.len(),
        group: g.label().to_string(),
        group_order: g.order(),
        action: g
            .elements()
            .map(|x| format!("{} ↦ {}", g.name(x), inst.aut.group().name(inst.action.theta_index(x))))
            .collect(),
        module: inst.module.as_ref().map(|m| m.module().label()),
        target: inst
            .target
            .as_ref()
            .map(|t| format!("{} → {}", t.source().label(), t.target().label())),
    }
}

fn render_text(doc: &Document) -> String {
    let mut s = String::new();
    let o = &doc.objects;
    let _ = writeln!(s, "instance  {}", doc.instance_digest);
    let _ = writeln!(s, "ring      {} ({} elements, {} automorphisms)", o.ring, o.ring_order, o.automorphisms);
    let _ = writeln!(s, "group     {} ({} elements)", o.group, o.group_order);
    let _ = writeln!(s, "action    {}", o.action.join(", "));
    if let Some(m) = &o.module {
        let _ = writeln!(s, "module    {m}");
    }
    if let Some(t) = &o.target {
        let _ = writeln!(s, "target    {t}");
    }
    for run in doc.checks {
        let _ = write!(s, "\n[{}] {}", run.status, run.check);
        for (k, v) in &run.cardinalities {
            let _ = write!(s, "  {k}={v}");
        }
        if let Some(ms) = run.wall_time_ms {
            let _ = write!(s, "  ({ms} ms)");
        }
        s.push('\n');
        for r in &run.records {
            let tag = if r.passed { "ok  " } else { "FAIL" };
            let derived = if r.derived_from_theorem { " [derived from theorem]" } else { "" };
            let _ = writeln!(s, "  {tag} {:<36} {}{derived}", r.name, r.detail);
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "       witness: {w}");
            }
        }
        for c in &run.correspondence {
            let _ = writeln!(s, "       {c}");
        }
    }
    let _ = writeln!(
        s,
        "\n{}: {} checks, {} failed",
        doc.summary.status, doc.summary.checks, doc.summary.failed
    );
    if let Some(ms) = doc.wall_time_ms {
        let _ = writeln!(s, "wall time {ms} ms");
    }
    s
}

fn check(cli: &Cli, file: &Path, caps: &Caps) -> Result<u8, Abort> {
    let start = Instant::now();
    let (inst, digest) = load(file, caps)?;
    let runs = run::run(&inst, &digest, caps, !cli.deterministic)?;
    let failed = runs.iter().filter(|r| !r.passed()).count();
    let doc = Document {
        tool: "twistsemi",
        version: env!("CARGO_PKG_VERSION"),
        instance_digest: &digest,
        caps: *caps,
        objects: describe(&inst),
        checks: &runs,
        summary: Summary {
            checks: runs.len(),
            failed,
            status: if failed == 0 { "pass" } else { "fail" },
        },
        wall_time_ms: (!cli.deterministic).then(|| start.elapsed().as_millis()),
    };
    match cli.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&doc).expect("report serializes")),
        Format::Text => out!("{}", render_text(&doc).trim_end()),
    }
    Ok(if failed == 0 { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

#[derive(Serialize)]
struct AutEntry {
    index: usize,
    name: String,
    permutation: Vec<String>,
}

fn aut_list(cli: &Cli, recipe: &[String], caps: &Caps) -> Result<u8, Abort> {
    let text = recipe.join(" ");
    let r = parse_ring_recipe(&text).map_err(|e| Abort::input(format!("parse error at recipe:{e}")))?;
    let ring = r.build(caps)?;
    let aut = enumerate_automorphisms(&ring, caps)?;
    let entries: Vec<AutEntry> = aut
        .autos()
        .iter()
        .enumerate()
        .map(|(i, a)| AutEntry {
            index: i,
            name: aut.group().name(i).to_string(),
            permutation: ring.elements().map(|x| ring.name(a.apply(x))).collect(),
        })
        .collect();
    match cli.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&entries).expect("serializes")),
        Format::Text => {
            let elems: Vec<String> = ring.elements().map(|x| ring.name(x)).collect();
            out!("{} ({} elements): {} automorphisms", ring.label(), ring.order(), aut.len());
            out!("elements  {}", elems.join(" "));
            for e in &entries {
                out!("{:>3} {:<4} {}", e.index, e.name, e.permutation.join(" "));
            }
        }
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct Product {
    left: String,
    right: String,
    product: String,
}

fn twist_show(cli: &Cli, file: &Path, caps: &Caps) -> Result<u8, Abort> {
    let (inst, _) = load(file, caps)?;
    let tw = twistify(&inst.action, caps)?;
    let base = tw.base();
    let g = tw.action().group();
    let mono = |r: usize, h: usize| format!("{}·{}", base.name(r), g.name(h));
    let rows: Vec<Product> = tw
        .monomial_products()
        .into_iter()
        .map(|((r1, h1), (r2, h2), p)| Product {
            left: mono(r1, h1),
            right: mono(r2, h2),
            product: tw.ring().name(p),
        })
        .collect();
    match cli.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&rows).expect("serializes")),
        Format::Text => {
            out!("{} ({} elements)", tw.ring().label(), tw.ring().order());
            for p in &rows {
                out!("({}) * ({}) = {}", p.left, p.right, p.product);
            }
        }
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct PairEntry {
    index: usize,
    unit: String,
    automorphism: String,
}

fn semi_show(cli: &Cli, file: &Path, caps: &Caps) -> Result<u8, Abort> {
    let (inst, _) = load(file, caps)?;
    let target = inst
        .target
        .as_ref()
        .ok_or_else(|| Abort::input("`semi show` needs a `target` or `module` directive"))?;
    let semi = semilinearize(target, &inst.aut, caps)?;
    let s = target.target();
    let entries: Vec<PairEntry> = semi
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, p)| PairEntry {
            index: i,
            unit: s.name(p.unit),
            automorphism: inst.aut.group().name(p.aut).to_string(),
        })
        .collect();
    match cli.format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&entries).expect("serializes")),
        Format::Text => {
            let abelian = if semi.group().is_abelian() { "abelian" } else { "non-abelian" };
            out!("semi_R({}) has order {} ({abelian})", s.label(), semi.order());
            for e in &entries {
                out!("{:>3} ({}, {})", e.index, e.unit, e.automorphism);
            }
        }
    }
    Ok(EXIT_PASS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = caps_from(&cli.caps).and_then(|caps| match &cli.command {
        Command::Check { file } => check(&cli, file, &caps),
        Command::Aut {
            command: AutCommand::List { recipe },
        } => aut_list(&cli, recipe, &caps),
        Command::Twist {
            command: ShowCommand::Show { file },
        } => twist_show(&cli, file, &caps),
        Command::Semi {
            command: ShowCommand::Show { file },
        } => semi_show(&cli, file, &caps),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(a) => {
            let kind = if a.code == EXIT_CAP { "cap exceeded" } else { "error" };
            eprintln!("{kind}: {}", a.message);
            ExitCode::from(a.code)
        }
    }
}
