use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use nilpair_core::centralizer::{
    combinatorial_basis_for, comparison_table, dims, CentralizerElement,
};
use nilpair_core::classify::{
    enumerate_data_bounded, min_rank, refined_almost_principal, verdict, CensusRow,
    ClassificationVerdict, SearchPredicate,
};
use nilpair_core::datum::{validate_datum, DatumError, LieType, PairDatum, ValidateError};
use nilpair_core::diagram::{Cell, CellSet, DiagramError, DiagramJson, SkewDiagram};
use nilpair_core::linalg::parse_rational;
use nilpair_core::realization::{matrix_json, Realization};
use nilpair_core::render;
use nilpair_core::subdiagram::{assemble_index, enum_single, IndexEntry, Shift};

const DEFAULT_CEILING: usize = 8;

#[derive(Parser)]
#[command(
    name = "nilpair",
    version,
    about = "Skew diagram data of distinguished nilpotent pairs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for enumeration commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram or datum file.
    Validate { input: String },
    /// List index entries at one shift.
    EnumE {
        input: String,
        /// Shift `p,q`; halves written as `1/2`.
        #[arg(long, value_parser = parse_shift, allow_hyphen_values = true)]
        shift: Shift,
    },
    /// Per-shift centralizer dimensions.
    Centralizer {
        input: String,
        /// Also compute the kernel by exact linear algebra.
        #[arg(long)]
        oracle: bool,
        /// Restrict to one shift `p,q` and list its basis elements.
        #[arg(long, value_parser = parse_shift, allow_hyphen_values = true)]
        shift: Option<Shift>,
        /// Include the matrix of every listed basis element.
        #[arg(long)]
        dump: bool,
    },
    /// Wonderful / principal / almost principal verdict.
    Classify { input: String },
    /// Enumerate data and keep those matching a predicate.
    Search {
        #[arg(long = "type", value_parser = parse_type)]
        lie: LieType,
        #[arg(long, default_value_t = 4)]
        rank_bound: usize,
        /// principal, almost_principal, wonderful, not_wonderful, zplus_equals_z
        #[arg(long)]
        predicate: SearchPredicate,
    },
    /// Per-rank counts.
    Census {
        #[arg(long = "type", value_parser = parse_type)]
        lie: LieType,
        #[arg(long, default_value_t = 4)]
        rank_bound: usize,
    },
    /// Draw a diagram or datum.
    Render {
        input: String,
        #[arg(long, conflicts_with = "ascii")]
        svg: bool,
        #[arg(long)]
        ascii: bool,
        /// Cells to star, doubled coordinates: `a,b;a,b`, with an optional
        /// `k:` component prefix per group and groups separated by `|`.
        #[arg(long, allow_hyphen_values = true)]
        highlight: Option<String>,
        /// Star the support of index entry `idx` at shift `p,q`: `p,q:idx`.
        #[arg(long, allow_hyphen_values = true)]
        highlight_entry: Option<String>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
struct Fail(u8, String);

type CmdResult = Result<u8, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn parse_type(s: &str) -> Result<LieType, String> {
    s.parse()
}

fn parse_shift(s: &str) -> Result<Shift, String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let half = |t: &str| -> Result<i32, String> {
        let r = parse_rational(t.trim()).ok_or(format!("bad number {t:?}"))?;
        let d = r * nilpair_core::linalg::rat_int(2);
        if !d.is_integer() {
            return Err(format!("{t} is not a multiple of 1/2"));
        }
        i32::try_from(d.to_integer()).map_err(|e| e.to_string())
    };
    Ok(Shift::new(half(p)?, half(q)?))
}

fn read_input(input: &str) -> Result<String, Fail> {
    if input.trim_start().starts_with('{') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("IoError: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| usage(format!("IoError: {input}: {e}")))
}

enum Input {
    Diagram(SkewDiagram),
    Datum(PairDatum),
}

fn error_name(msg: &str) -> String {
    msg.split(':').next().unwrap_or(msg).trim().to_string()
}

fn diagram_failure(e: &DiagramError) -> Fail {
    Fail(1, e.to_string())
}

fn datum_failure(e: &DatumError) -> Fail {
    match e {
        DatumError::Diagram { source, .. } => Fail(1, format!("{source} ({e})")),
        _ => Fail(1, e.to_string()),
    }
}

fn load(input: &str) -> Result<Input, Fail> {
    let text = read_input(input)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("ParseError: {e}")))?;
    if value.get("type").is_some() {
        match validate_datum(&text) {
            Ok(d) => Ok(Input::Datum(d)),
            Err(ValidateError::Parse(e)) => Err(usage(format!("ParseError: {e}"))),
            Err(ValidateError::Datum(e)) => Err(datum_failure(&e)),
        }
    } else if value.get("cells").is_some() {
        let raw: DiagramJson =
            serde_json::from_value(value).map_err(|e| usage(format!("ParseError: {e}")))?;
        SkewDiagram::new(raw.cells)
            .map(Input::Diagram)
            .map_err(|e| diagram_failure(&e))
    } else {
        Err(usage(
            "ParseError: expected a datum (\"type\") or a diagram (\"cells\")",
        ))
    }
}

fn load_datum(input: &str) -> Result<PairDatum, Fail> {
    match load(input)? {
        Input::Datum(d) => Ok(d),
        Input::Diagram(_) => Err(usage("expected a datum, got a diagram")),
    }
}

fn ceiling() -> Result<usize, Fail> {
    match std::env::var("NILPAIR_RANK_CEILING") {
        Ok(s) => s
            .parse()
            .map_err(|_| usage(format!("NILPAIR_RANK_CEILING={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

fn check_bound(rank_bound: usize) -> Result<usize, Fail> {
    let c = ceiling()?;
    if rank_bound > c {
        return Err(usage(format!(
            "RankTooLarge: rank bound {rank_bound} exceeds ceiling {c}"
        )));
    }
    Ok(c)
}

fn out(s: &str) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => out(&(serde_json::to_string_pretty(value).unwrap() + "\n")),
        Format::Text => out(&text()),
    }
}

fn cells_json(cells: &CellSet) -> Value {
    json!(cells.iter().map(|c| [c.a, c.b]).collect::<Vec<_>>())
}

fn cells_text(cells: &CellSet) -> String {
    cells
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn entry_json(e: &IndexEntry) -> Value {
    json!({
        "shift": [e.shift.a, e.shift.b],
        "kind": e.kind,
        "k": e.k,
        "l": e.l,
        "c": cells_json(&e.c),
        "c_prime": cells_json(&e.c_prime),
    })
}

fn cmd_validate(format: Format, input: &str) -> CmdResult {
    match load(input) {
        Ok(Input::Datum(d)) => {
            let v = json!({
                "valid": true,
                "kind": "datum",
                "type": d.lie_type().to_string(),
                "rank": d.rank(),
                "dim_v": d.dim_v(),
                "datum": d.to_json(),
            });
            emit(format, &v, || {
                format!(
                    "valid datum {}{} (dim V = {})\n",
                    d.lie_type(),
                    d.rank(),
                    d.dim_v()
                )
            });
            Ok(0)
        }
        Ok(Input::Diagram(g)) => {
            let v = json!({
                "valid": true,
                "kind": "diagram",
                "cells": g.len(),
                "symmetry_class": if g.is_centrally_symmetric() { json!(g.symmetry_class()) } else { Value::Null },
            });
            emit(format, &v, || {
                format!("valid diagram with {} cells\n", g.len())
            });
            Ok(0)
        }
        Err(Fail(1, msg)) => {
            let v = json!({"valid": false, "error": error_name(&msg), "message": msg});
            emit(format, &v, || format!("invalid: {msg}\n"));
            Ok(1)
        }
        Err(f) => Err(f),
    }
}

fn cmd_enum_e(format: Format, input: &str, s: Shift) -> CmdResult {
    let (entries, text): (Vec<Value>, Vec<String>) = match load(input)? {
        Input::Diagram(g) => enum_single(&g, s)
            .iter()
            .map(|c| (json!({"c": cells_json(c)}), cells_text(c)))
            .unzip(),
        Input::Datum(d) => assemble_index(&d, s)
            .iter()
            .map(|e| {
                let t = format!(
                    "{:?} {}{}  C: {}  C': {}",
                    e.kind,
                    e.k,
                    e.l,
                    cells_text(&e.c),
                    cells_text(&e.c_prime)
                );
                (entry_json(e), t)
            })
            .unzip(),
    };
    let v = json!({"shift": [s.a, s.b], "count": entries.len(), "entries": entries});
    emit(format, &v, || {
        let mut out = format!("shift {s}: {} entries\n", text.len());
        for t in &text {
            out.push_str(&format!("  {t}\n"));
        }
        out
    });
    Ok(0)
}

fn element_json(r: &Realization, el: &CentralizerElement, dump: bool) -> Value {
    let coefs: Vec<Value> = el
        .coefficients
        .iter()
        .map(|(src, dst, c)| {
            let from = r.describe(r.position(src.k, src.cell).unwrap());
            let to = r.describe(r.position(dst.k, dst.cell).unwrap());
            json!({"from": from, "to": to, "coef": c})
        })
        .collect();
    let mut v = json!({"entry": entry_json(&el.entry), "action": coefs});
    if dump {
        v["matrix"] = matrix_json(&el.x);
    }
    v
}

fn cmd_centralizer(
    format: Format,
    input: &str,
    oracle: bool,
    shift: Option<Shift>,
    dump: bool,
) -> CmdResult {
    let d = load_datum(input)?;
    let r = Realization::build(&d);
    let dm = dims(&d);
    let mut table = comparison_table(&d, oracle);
    if let Some(s) = shift {
        table.retain(|row| row.shift == s);
        if table.is_empty() {
            table = vec![nilpair_core::centralizer::ShiftRow {
                shift: s,
                combinatorial: 0,
                oracle: oracle.then(|| nilpair_core::centralizer::oracle_centralizer(&r).dim_at(s)),
                matches: None,
            }];
            if let Some(o) = table[0].oracle {
                table[0].matches = Some(o == 0);
            }
        }
    }
    let all_match = table.iter().all(|row| row.matches != Some(false));
    let rows: Vec<Value> = table
        .iter()
        .map(|row| {
            json!({
                "2p": row.shift.a,
                "2q": row.shift.b,
                "combinatorial": row.combinatorial,
                "oracle": row.oracle,
                "match": row.matches,
            })
        })
        .collect();
    let basis = (shift.is_some() || dump).then(|| combinatorial_basis_for(&r));
    let elements: Vec<Value> = basis
        .iter()
        .flat_map(|b| b.elements())
        .filter(|el| shift.is_none_or(|s| el.shift() == s))
        .map(|el| element_json(&r, el, dump))
        .collect();
    let mut v = json!({
        "type": d.lie_type().to_string(),
        "rank": d.rank(),
        "rows": rows,
        "dim_z": dm.dim_z,
        "dim_zplus": dm.dim_zplus,
        "dim_zplus_int": dm.dim_zplus_int,
        "wonderful": dm.dim_zplus_int == d.rank(),
    });
    if oracle {
        v["all_match"] = json!(all_match);
    }
    if basis.is_some() {
        v["elements"] = json!(elements);
    }
    emit(format, &v, || {
        let mut out = format!(
            "{}{}  dim Z = {}  positive = {}  integer positive = {}  wonderful = {}\n",
            d.lie_type(),
            d.rank(),
            dm.dim_z,
            dm.dim_zplus,
            dm.dim_zplus_int,
            dm.dim_zplus_int == d.rank()
        );
        out.push_str(&format!("{:>4} {:>4} {:>6}", "2p", "2q", "count"));
        if oracle {
            out.push_str(&format!(" {:>6} {:>5}", "oracle", "match"));
        }
        out.push('\n');
        for row in &table {
            out.push_str(&format!(
                "{:>4} {:>4} {:>6}",
                row.shift.a, row.shift.b, row.combinatorial
            ));
            if let (Some(o), Some(m)) = (row.oracle, row.matches) {
                out.push_str(&format!(" {:>6} {:>5}", o, if m { "yes" } else { "NO" }));
            }
            out.push('\n');
        }
        for el in &elements {
            out.push_str(&format!("element {}\n", el["entry"]));
            for a in el["action"].as_array().unwrap() {
                out.push_str(&format!(
                    "  {} -> {} {}\n",
                    a["from"].as_str().unwrap(),
                    a["coef"],
                    a["to"].as_str().unwrap()
                ));
            }
        }
        out
    });
    Ok(if all_match { 0 } else { 1 })
}

fn verdict_json(d: &PairDatum, v: &ClassificationVerdict) -> Value {
    let mut out = json!({"datum": d.to_json(), "verdict": v});
    if let Some(r) = refined_almost_principal(d) {
        out["refined_almost_principal"] = json!(r);
    }
    out
}

fn verdict_line(d: &PairDatum, v: &ClassificationVerdict) -> String {
    let comps: Vec<String> = d
        .components()
        .map(|(k, g)| format!("gamma{k}={}", cells_text(g.cells())))
        .collect();
    format!(
        "{}{} dimZ={} Z+={} Z+int={} wonderful={} principal={} almost_principal={} agrees={}  {}\n",
        v.lie_type,
        v.rank,
        v.dim_z,
        v.dim_zplus,
        v.dim_zplus_int,
        v.is_wonderful,
        v.is_principal,
        v.is_almost_principal,
        v.agrees,
        comps.join(" ")
    )
}

fn cmd_classify(format: Format, input: &str) -> CmdResult {
    let d = load_datum(input)?;
    let v = verdict(&d);
    emit(format, &verdict_json(&d, &v), || verdict_line(&d, &v));
    Ok(0)
}

fn verdicts(
    lie: LieType,
    rank: usize,
    ceiling: usize,
) -> Result<Vec<(PairDatum, ClassificationVerdict)>, Fail> {
    let data = enumerate_data_bounded(lie, rank, ceiling).map_err(|e| usage(e.to_string()))?;
    Ok(data
        .into_par_iter()
        .map(|d| {
            let v = verdict(&d);
            (d, v)
        })
        .collect())
}

fn cmd_search(format: Format, lie: LieType, rank_bound: usize, pred: SearchPredicate) -> CmdResult {
    let c = check_bound(rank_bound)?;
    let mut found = Vec::new();
    for rank in min_rank(lie)..=rank_bound {
        found.extend(
            verdicts(lie, rank, c)?
                .into_iter()
                .filter(|(_, v)| pred.holds(v)),
        );
    }
    let list: Vec<Value> = found.iter().map(|(d, v)| verdict_json(d, v)).collect();
    let v = json!({"type": lie.to_string(), "rank_bound": rank_bound, "predicate": pred, "count": list.len(), "data": list});
    emit(format, &v, || {
        let mut out = format!("{} matching data\n", found.len());
        for (d, v) in &found {
            out.push_str(&verdict_line(d, v));
        }
        out
    });
    Ok(0)
}

fn cmd_census(format: Format, lie: LieType, rank_bound: usize) -> CmdResult {
    let c = check_bound(rank_bound)?;
    let mut rows = Vec::new();
    for rank in min_rank(lie)..=rank_bound {
        let mut row = CensusRow {
            rank,
            ..Default::default()
        };
        for (_, v) in verdicts(lie, rank, c)? {
            row.add(&v);
        }
        rows.push(row);
    }
    let v = json!({"type": lie.to_string(), "rows": rows});
    emit(format, &v, || {
        let mut out = format!(
            "{:>4} {:>6} {:>9} {:>16} {:>9} {:>8} {:>8}\n",
            "rank", "data", "principal", "almost_principal", "wonderful", "Z=Z+", "disagree"
        );
        for r in &rows {
            out.push_str(&format!(
                "{:>4} {:>6} {:>9} {:>16} {:>9} {:>8} {:>8}\n",
                r.rank,
                r.data,
                r.principal,
                r.almost_principal,
                r.wonderful,
                r.zplus_equals_z,
                r.disagreements
            ));
        }
        out
    });
    Ok(0)
}

fn parse_cells(s: &str) -> Result<CellSet, Fail> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once(',')
                .ok_or_else(|| usage(format!("bad cell {t:?}")))?;
            let n = |x: &str| {
                x.trim()
                    .parse::<i32>()
                    .map_err(|_| usage(format!("bad cell {t:?}")))
            };
            Ok(Cell::new(n(a)?, n(b)?))
        })
        .collect()
}

fn parse_highlight(s: &str) -> Result<Vec<(u8, CellSet)>, Fail> {
    s.split('|')
        .map(|group| match group.split_once(':') {
            Some((k, rest)) => {
                let k = k
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("bad component {k:?}")))?;
                Ok((k, parse_cells(rest)?))
            }
            None => Ok((1, parse_cells(group)?)),
        })
        .collect()
}

fn entry_highlight(d: &PairDatum, spec: &str) -> Result<Vec<(u8, CellSet)>, Fail> {
    let (s, idx) = spec
        .rsplit_once(':')
        .ok_or_else(|| usage("expected p,q:idx"))?;
    let s = parse_shift(s).map_err(usage)?;
    let idx: usize = idx
        .parse()
        .map_err(|_| usage(format!("bad index {idx:?}")))?;
    let entries = assemble_index(d, s);
    let e = entries
        .get(idx)
        .ok_or_else(|| usage(format!("shift {s} has {} entries", entries.len())))?;
    let mut out = vec![(e.k, e.c.clone())];
    if e.c_prime != e.c || e.k != e.l {
        match out.iter_mut().find(|(k, _)| *k == e.l) {
            Some((_, set)) if d.lie_type() != LieType::A => set.extend(e.c_prime.iter().copied()),
            Some(_) => {}
            None => out.push((e.l, e.c_prime.clone())),
        }
    }
    Ok(out)
}

fn cmd_render(
    input: &str,
    svg: bool,
    highlight: Option<&str>,
    highlight_entry: Option<&str>,
) -> CmdResult {
    let mut marks = match highlight {
        Some(h) => parse_highlight(h)?,
        None => Vec::new(),
    };
    let drawing = match load(input)? {
        Input::Diagram(g) => {
            if highlight_entry.is_some() {
                return Err(usage("--highlight-entry needs a datum"));
            }
            let cells: CellSet = marks.into_iter().flat_map(|(_, s)| s).collect();
            if svg {
                render::svg(&g, &cells)
            } else {
                render::ascii(&g, &cells)
            }
        }
        Input::Datum(d) => {
            if let Some(spec) = highlight_entry {
                marks.extend(entry_highlight(&d, spec)?);
            }
            if svg {
                render::svg_datum(&d, &marks)
            } else {
                render::ascii_datum(&d, &marks)
            }
        }
    };
    out(&drawing);
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    let f = cli.format;
    match &cli.command {
        Command::Validate { input } => cmd_validate(f, input),
        Command::EnumE { input, shift } => cmd_enum_e(f, input, *shift),
        Command::Centralizer {
            input,
            oracle,
            shift,
            dump,
        } => cmd_centralizer(f, input, *oracle, *shift, *dump),
        Command::Classify { input } => cmd_classify(f, input),
        Command::Search {
            lie,
            rank_bound,
            predicate,
        } => cmd_search(f, *lie, *rank_bound, *predicate),
        Command::Census { lie, rank_bound } => cmd_census(f, *lie, *rank_bound),
        Command::Render {
            input,
            svg,
            ascii: _,
            highlight,
            highlight_entry,
        } => cmd_render(
            input,
            *svg,
            highlight.as_deref(),
            highlight_entry.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.jobs.unwrap_or(1).max(1);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_parse_in_halves() {
        assert_eq!(parse_shift("2,-1").unwrap(), Shift::new(4, -2));
        assert_eq!(parse_shift("1/2, -3/2").unwrap(), Shift::new(1, -3));
        assert!(parse_shift("1/3,0").is_err());
        assert!(parse_shift("7").is_err());
    }

    #[test]
    fn highlight_groups() {
        let h = parse_highlight("2:0,0;2,0|3:0,2").unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].0, 2);
        assert_eq!(h[0].1.len(), 2);
        assert_eq!(h[1], (3, [Cell::new(0, 2)].into()));
        assert!(parse_highlight("x:0,0").is_err());
    }

    #[test]
    fn error_names_are_prefixes() {
        assert_eq!(error_name("EpsilonInvalid: bad"), "EpsilonInvalid");
    }
}
