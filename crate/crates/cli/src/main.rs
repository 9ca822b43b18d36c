//! `weylkl`: tables and checks for Weyl group combinatorics.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weylkl::cells::CellSide;
use weylkl::homology::{ExtFamily, GradedExtEntry, HomologyError};
use weylkl::poset::{self, Mobius};
use weylkl::verify::{self, Outcome};
use weylkl::{BuildOptions, CartanType, CoxeterSystem, Element, Workbench};

mod render;
use render::Grid;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "weylkl", version, about = "Kazhdan-Lusztig combinatorics and homological invariants of category O")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Cartan type: A, B or D
    #[arg(long = "type", global = true, default_value = "A")]
    type_label: String,
    #[arg(long, global = true, default_value_t = 2)]
    rank: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Shorthand for --format json
    #[arg(long, global = true)]
    json: bool,
    /// Where KL tables are cached (default: the user cache directory)
    #[arg(long, global = true, env = "WEYLKL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for the KL table; 0 uses every core
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Projective, tilting and injective dimensions for every element
    PdTable,
    /// Run consistency checks; exit 1 if any fails
    Verify {
        /// Run only these checks (repeatable)
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List check names and exit
        #[arg(long)]
        list: bool,
    },
    /// Kazhdan-Lusztig polynomial P_{y,w}
    Kl { y: String, w: String },
    /// Kazhdan-Lusztig cells with their a-values
    Cells {
        #[arg(long, value_enum, default_value_t = SideArg::TwoSided)]
        side: SideArg,
    },
    /// Graded Ext dimensions
    Ext {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "e")]
        y: String,
        /// Homological degree; all nonzero degrees when omitted
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
        /// Grading shift
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
    },
    /// Bruhat Möbius function mu(x, y)
    Mobius { x: String, y: String },
    /// Reflection arrows x -> t x of lower length
    Quiver,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    TwoSided,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    StdStdLinear,
    Carlin,
    Ext1Dominant,
    StdSimple,
    SimpleSimple,
}

impl From<FamilyArg> for ExtFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::StdStdLinear => ExtFamily::StdStdLinear,
            FamilyArg::Carlin => ExtFamily::Carlin,
            FamilyArg::Ext1Dominant => ExtFamily::Ext1Dominant,
            FamilyArg::StdSimple => ExtFamily::StdSimple,
            FamilyArg::SimpleSimple => ExtFamily::SimpleSimple,
        }
    }
}

/// Config errors exit with 2, verification failures with 1.
enum Failure {
    Config(anyhow::Error),
    Verification(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Config(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Ctx {
    format: Format,
    options: BuildOptions,
    label: CartanType,
    rank: usize,
}

impl Ctx {
    fn new(g: &GlobalArgs) -> Result<Self> {
        let label: CartanType = g.type_label.parse()?;
        let threads = if g.threads == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { g.threads };
        let cache_dir = if g.no_cache { None } else { g.cache_dir.clone().or_else(|| dirs::cache_dir().map(|d| d.join("weylkl"))) };
        let format = if g.json { Format::Json } else { g.format };
        Ok(Ctx { format, options: BuildOptions { threads, cache_dir, ..BuildOptions::default() }, label, rank: g.rank })
    }

    fn system(&self) -> Result<CoxeterSystem> {
        Ok(CoxeterSystem::build(self.label, self.rank)?)
    }

    fn workbench(&self) -> Result<Workbench> {
        Workbench::build(self.label, self.rank, &self.options).context("building the KL table")
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn parse(sys: &CoxeterSystem, text: &str) -> Result<Element> {
    sys.parse_element(text).with_context(|| format!("cannot read `{text}` as an element of {}", sys.name()))
}

fn print_json(mut value: Value, command: &str, sys: &CoxeterSystem) -> Result<()> {
    let obj = value.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    obj.insert("system".into(), json!(sys.name()));
    emit(&format!("{}\n", serde_json::to_string_pretty(&value)?));
    Ok(())
}

fn print_grid(ctx: &Ctx, grid: &Grid, title: Option<String>) -> Result<()> {
    match ctx.format {
        Format::Csv => emit(&grid.csv()?),
        _ => {
            if let Some(t) = title {
                emit(&format!("{t}\n\n"));
            }
            emit(&grid.markdown());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let ctx = Ctx::new(&cli.global)?;
    match &cli.command {
        Command::PdTable => pd_table(&ctx)?,
        Command::Verify { checks, list } => return verify_cmd(&ctx, checks, *list),
        Command::Kl { y, w } => kl(&ctx, y, w)?,
        Command::Cells { side } => cells(&ctx, *side)?,
        Command::Ext { family, x, y, i, j } => ext(&ctx, (*family).into(), x, y, *i, *j)?,
        Command::Mobius { x, y } => mobius(&ctx, x, y)?,
        Command::Quiver => quiver(&ctx)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn pd_table(ctx: &Ctx) -> Result<()> {
    let wb = ctx.workbench()?;
    let sys = &wb.system;
    let table = wb.homology().table()?;
    if ctx.format == Format::Json {
        let rows: Vec<Value> = sys
            .elements()
            .zip(&table.rows)
            .map(|(w, r)| {
                json!({
                    "w": sys.format_element(w),
                    "word": r.word,
                    "length": r.length,
                    "a": r.a,
                    "pd_projective": r.pd_projective,
                    "pd_standard": r.pd_standard,
                    "pd_simple": r.pd_simple,
                    "pd_costandard": r.pd_costandard,
                    "pd_tilting": r.pd_tilting,
                    "pd_injective": r.pd_injective,
                })
            })
            .collect();
        let refs = json!({
            "pd_standard": "pd D(w) = l(w)",
            "pd_simple": "pd L(w) = 2l(w0) - l(w)",
            "pd_costandard": "pd N(w) = 2l(w0) - l(w)",
            "global_dimension": "gl.dim = 2l(w0)",
            "pd_tilting": "t(w) = a(w)",
            "pd_injective": "i(w) = 2a(w0 w)",
        });
        return print_json(json!({ "global_dimension": table.global_dimension, "ref": refs, "rows": rows }), "pd-table", sys);
    }
    let mut grid = Grid::new(["w", "l", "a", "pd Δ", "pd L", "pd ∇", "t", "t status", "i", "i status"]);
    for (w, r) in sys.elements().zip(&table.rows) {
        grid.push(vec![
            sys.format_element(w),
            r.length.to_string(),
            r.a.to_string(),
            r.pd_standard.to_string(),
            r.pd_simple.to_string(),
            r.pd_costandard.to_string(),
            r.pd_tilting.value.to_string(),
            r.pd_tilting.status.as_str().into(),
            r.pd_injective.value.to_string(),
            r.pd_injective.status.as_str().into(),
        ]);
    }
    print_grid(ctx, &grid, Some(format!("{}: |W| = {}, gl.dim = {}", sys.name(), sys.order(), table.global_dimension)))
}

fn verify_cmd(ctx: &Ctx, names: &[String], list: bool) -> Result<ExitCode, Failure> {
    if list {
        for c in verify::CHECKS {
            emit(&format!("{:<22} {}\n", c.name, c.reference));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let selected: Vec<&verify::Check> = if names.is_empty() {
        verify::CHECKS.iter().collect()
    } else {
        names
            .iter()
            .map(|n| verify::find_check(n).ok_or_else(|| anyhow!("unknown check `{n}`; known: {}", verify::check_names().join(", "))))
            .collect::<Result<_>>()?
    };
    let wb = ctx.workbench()?;
    let reports: Vec<verify::CheckReport> = selected.iter().map(|c| c.run(&wb)).collect();
    let failed: Vec<&str> = reports.iter().filter(|r| r.outcome == Outcome::Fail).map(|r| r.name).collect();
    if ctx.format == Format::Json {
        print_json(json!({ "passed": failed.is_empty(), "checks": reports }), "verify", &wb.system)?;
    } else {
        let mut grid = Grid::new(["check", "outcome", "detail", "ref"]);
        for r in &reports {
            let outcome = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skip => "SKIP",
            };
            grid.push(vec![r.name.into(), outcome.into(), r.detail.clone(), r.reference.into()]);
        }
        print_grid(ctx, &grid, Some(format!("{}: {} checks, {} failed", wb.system.name(), reports.len(), failed.len())))?;
    }
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::Verification(anyhow!("{}", failed.join(", "))))
    }
}

fn kl(ctx: &Ctx, y: &str, w: &str) -> Result<()> {
    let wb = ctx.workbench()?;
    let sys = &wb.system;
    let (y, w) = (parse(sys, y)?, parse(sys, w)?);
    let p = wb.kl.kl_polynomial(y, w);
    let mu = wb.kl.mu(y, w);
    match ctx.format {
        Format::Json => {
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            print_json(
                json!({
                    "y": sys.format_element(y),
                    "w": sys.format_element(w),
                    "polynomial": p.to_string(),
                    "coefficients": coeffs,
                    "mu": mu,
                }),
                "kl",
                sys,
            )
        }
        Format::Csv => {
            let mut grid = Grid::new(["y", "w", "polynomial", "mu"]);
            grid.push(vec![sys.format_element(y), sys.format_element(w), p.to_string(), mu.to_string()]);
            print_grid(ctx, &grid, None)
        }
        Format::Table => {
            emit(&format!("{p}\n"));
            Ok(())
        }
    }
}

fn cells(ctx: &Ctx, side: SideArg) -> Result<()> {
    let wb = ctx.workbench()?;
    let sys = &wb.system;
    let side = match side {
        SideArg::Left => CellSide::Left,
        SideArg::Right => CellSide::Right,
        SideArg::TwoSided => CellSide::TwoSided,
    };
    let decomposition = wb.one_sided_cells(side)?;
    let mut rows = Vec::new();
    for (id, members) in decomposition.cells().iter().enumerate() {
        let a = wb.cells.a_function_at(members[0] as usize)?;
        let names: Vec<String> = members.iter().map(|&x| sys.format_element(sys.element(x as usize))).collect();
        rows.push((id, a, names));
    }
    if ctx.format == Format::Json {
        let cells: Vec<Value> =
            rows.iter().map(|(id, a, names)| json!({ "id": id, "a": a, "size": names.len(), "elements": names })).collect();
        return print_json(
            json!({ "side": side, "ref": "a(cell) = min l(u) - 2 deg P_{e,u} over involutions u", "cells": cells }),
            "cells",
            sys,
        );
    }
    let mut grid = Grid::new(["cell", "a", "size", "elements"]);
    for (id, a, names) in rows {
        grid.push(vec![id.to_string(), a.to_string(), names.len().to_string(), names.join(" ")]);
    }
    print_grid(ctx, &grid, Some(format!("{}: {} cells", sys.name(), decomposition.cell_count())))
}

fn ext(ctx: &Ctx, family: ExtFamily, x: &str, y: &str, i: Option<i64>, j: Option<i64>) -> Result<(), Failure> {
    let wb = ctx.workbench()?;
    let sys = &wb.system;
    let (x, y) = (parse(sys, x)?, parse(sys, y)?);
    let h = wb.homology();
    let gated = |e: HomologyError| match e {
        HomologyError::ValidationFailed(_) => Failure::Verification(e.into()),
        other => Failure::Config(other.into()),
    };
    let entries: Vec<GradedExtEntry> = match i {
        None => h.nonzero_entries(family, x, y).map_err(gated)?,
        Some(i) => {
            let j = j.unwrap_or(match family {
                ExtFamily::StdStdLinear => -i,
                ExtFamily::Ext1Dominant => sys.length(x) as i64 - 2,
                _ => 0,
            });
            vec![h.graded_entry(family, x, y, i, j).map_err(gated)?]
        }
    };
    if ctx.format == Format::Json {
        print_json(json!({ "family": family, "entries": entries }), "ext", sys)?;
        return Ok(());
    }
    let mut grid = Grid::new(["source", "target", "i", "j", "dim"]);
    for e in &entries {
        grid.push(vec![e.source.clone(), e.target.clone(), e.i.to_string(), e.j.to_string(), e.dim.to_string()]);
    }
    print_grid(ctx, &grid, Some(format!("{}: {}", sys.name(), family.name())))?;
    Ok(())
}

fn mobius(ctx: &Ctx, x: &str, y: &str) -> Result<()> {
    let sys = ctx.system()?;
    let (x, y) = (parse(&sys, x)?, parse(&sys, y)?);
    let mu = Mobius::new(&sys).mobius(x, y)?;
    match ctx.format {
        Format::Json => print_json(json!({ "x": sys.format_element(x), "y": sys.format_element(y), "mobius": mu }), "mobius", &sys),
        _ => {
            emit(&format!("{mu}\n"));
            Ok(())
        }
    }
}

fn quiver(ctx: &Ctx) -> Result<()> {
    let sys = ctx.system()?;
    let arrows = poset::end_delta_quiver(&sys);
    if ctx.format == Format::Json {
        return print_json(json!({ "arrows": poset::export_arrows(&sys, &arrows) }), "quiver", &sys);
    }
    let mut grid = Grid::new(["from", "to"]);
    for a in &arrows {
        grid.push(vec![sys.format_element(a.from), sys.format_element(a.to)]);
    }
    print_grid(ctx, &grid, Some(format!("{}: {} arrows", sys.name(), arrows.len())))
}
