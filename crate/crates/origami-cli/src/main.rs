//! Command line front end for exact square-tiled surface computations.
//!
//! Subcommands: `analyze`, `cylinders`, `monodromy`, `density`, `bubble`,
//! `iso`, `catalog`. Surfaces are given inline (`"h=(1,2); v=(1,3)"`), as a
//! file path, or as a catalog reference (`@Mstar`). Exit codes: 0 success (or
//! dense), 1 internal invariant violation, 2 input error, 3 inconclusive
//! density certificate.

mod catalog;
mod matio;
mod report;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use origami_core::density::{lie_closure, DensityOptions, Verdict};
use origami_core::homology::{Homology, PerpOrder};
use origami_core::involution::hyperelliptic_involution;
use origami_core::monodromy::multitwist;
use origami_core::sl2z::Direction;
use origami_core::spin::spin_parity;
use origami_core::surgery::{bubble_square_handle, SlitSpec};
use origami_core::{Error, Origami};

use report::{chain_json, chain_text, matrix_json, matrix_text, StratumReport};

#[derive(Parser)]
#[command(
    name = "origami",
    version,
    about = "Exact computations on square-tiled surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisChoice {
    /// Ascending circumference, ties by smallest square.
    Canonical,
    /// Tie-break that reproduces the traditional labels on the bundled surfaces.
    Paper,
}

impl BasisChoice {
    fn order(self) -> PerpOrder {
        match self {
            BasisChoice::Canonical => PerpOrder::Canonical,
            BasisChoice::Paper => PerpOrder::PaperTies,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Stratum, spin parity, hyperelliptic involution and cylinder tables.
    Analyze {
        /// Inline origami, file path, or @catalog-name.
        surface: String,
        /// Extra directions "p,q" for cylinder tables (default: 1,0 and 0,1).
        #[arg(short = 'd', long = "direction", value_name = "P,Q")]
        directions: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Cylinder decomposition in the given directions.
    Cylinders {
        /// Inline origami, file path, or @catalog-name.
        surface: String,
        /// Periodic direction "p,q" (repeatable).
        #[arg(short = 'd', long = "direction", value_name = "P,Q", required = true)]
        directions: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Multitwist matrices on H1 and on ker(holonomy) per direction.
    Monodromy {
        /// Inline origami, file path, or @catalog-name.
        surface: String,
        /// Periodic direction "p,q" (repeatable).
        #[arg(short = 'd', long = "direction", value_name = "P,Q", required = true)]
        directions: Vec<String>,
        #[arg(long, value_enum, default_value = "canonical")]
        basis: BasisChoice,
        /// Restrict the output to the perp data.
        #[arg(long)]
        perp: bool,
        #[arg(long)]
        json: bool,
    },
    /// Zariski-density certificate for symplectic generators (JSON output).
    Density {
        /// Input file ("-" or absent: stdin); whitespace matrices or JSON,
        /// including piped `monodromy --json` output.
        input: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_word_length: usize,
    },
    /// Bubble a square handle into a horizontal slit.
    Bubble {
        /// Inline origami, file path, or @catalog-name.
        surface: String,
        /// 1-based square whose top edge is slit.
        #[arg(long, value_name = "K")]
        slit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Relabeling carrying the first surface to the second, if any.
    Iso {
        /// Inline origami, file path, or @catalog-name.
        first: String,
        /// Inline origami, file path, or @catalog-name.
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// List the bundled surfaces, or print one by name.
    Catalog { name: Option<String> },
}

fn main() {
    // die quietly when the consumer of a pipe goes away (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    std::process::exit(code);
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: format!("{e}"),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn parse_direction(text: &str) -> Result<Direction, Failure> {
    let (p, q) = text
        .split_once(',')
        .ok_or_else(|| input_error(format!("direction must be \"p,q\", got \"{text}\"")))?;
    let p: i64 = p
        .trim()
        .parse()
        .map_err(|_| input_error(format!("bad direction component \"{p}\"")))?;
    let q: i64 = q
        .trim()
        .parse()
        .map_err(|_| input_error(format!("bad direction component \"{q}\"")))?;
    Ok(Direction::new(p, q)?)
}

fn dispatch(cmd: Cmd) -> Result<i32, Failure> {
    match cmd {
        Cmd::Analyze {
            surface,
            directions,
            json,
        } => cmd_analyze(&surface, &directions, json),
        Cmd::Cylinders {
            surface,
            directions,
            json,
        } => cmd_cylinders(&surface, &directions, json),
        Cmd::Monodromy {
            surface,
            directions,
            basis,
            perp,
            json,
        } => cmd_monodromy(&surface, &directions, basis, perp, json),
        Cmd::Density {
            input,
            max_word_length,
        } => cmd_density(input.as_deref(), max_word_length),
        Cmd::Bubble {
            surface,
            slit,
            json,
        } => cmd_bubble(&surface, slit, json),
        Cmd::Iso {
            first,
            second,
            json,
        } => cmd_iso(&first, &second, json),
        Cmd::Catalog { name } => cmd_catalog(name.as_deref()),
    }
}

fn cylinder_json(c: &origami_core::Cylinder) -> Value {
    json!({
        "circumference": c.circumference,
        "height": c.height,
        "rows": c.rows.iter().map(|r| r.iter().map(|s| s + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "squares": c.squares.iter().map(|s| s + 1).collect::<Vec<_>>(),
        "waist": chain_json(c.waist()),
    })
}

fn cylinder_tables(o: &Origami, directions: &[Direction]) -> Result<(Value, String), Failure> {
    let mut json_dirs = Vec::new();
    let mut text = String::new();
    for dir in directions {
        let cyls = origami_core::cylinder::cylinders(o, *dir)?;
        json_dirs.push(json!({
            "direction": format!("{dir}"),
            "cylinders": cyls.iter().map(cylinder_json).collect::<Vec<_>>(),
        }));
        text.push_str(&format!("cylinders in direction {dir}:\n"));
        for (i, c) in cyls.iter().enumerate() {
            let squares: Vec<String> = c.squares.iter().map(|s| format!("{}", s + 1)).collect();
            text.push_str(&format!(
                "  #{}: circumference {}, height {}, squares [{}], waist {}\n",
                i + 1,
                c.circumference,
                c.height,
                squares.join(","),
                chain_text(c.waist()),
            ));
        }
    }
    Ok((Value::Array(json_dirs), text))
}

fn parse_directions_or_default(
    directions: &[String],
    default: &[(i64, i64)],
) -> Result<Vec<Direction>, Failure> {
    let mut out = Vec::new();
    if directions.is_empty() {
        for &(p, q) in default {
            out.push(Direction::new(p, q)?);
        }
    } else {
        for d in directions {
            out.push(parse_direction(d)?);
        }
    }
    Ok(out)
}

fn cmd_analyze(surface: &str, directions: &[String], json: bool) -> Result<i32, Failure> {
    let o = catalog::resolve(surface)?;
    let stratum = o.stratum()?;
    let hom = Homology::new(&o)?;
    if hom.rank() != 2 * stratum.genus {
        return Err(Error::Internal("H1 rank disagrees with the stratum genus".into()).into());
    }
    let spin = if stratum.zero_orders.iter().all(|k| k % 2 == 0) {
        Some(spin_parity(&o)?)
    } else {
        None
    };
    let involution = hyperelliptic_involution(&o);
    let dirs = parse_directions_or_default(directions, &[(1, 0), (0, 1)])?;
    let (cyl_json, cyl_text) = cylinder_tables(&o, &dirs)?;

    let spin_json = spin.as_ref().map(|s| {
        json!({
            "parity": s.parity,
            "quadratic_form": s.basis.iter().map(|(label, coords, q)| json!({
                "label": label,
                "coords": coords,
                "q": q,
            })).collect::<Vec<_>>(),
        })
    });
    let inv_json = involution.as_ref().map(|w| {
        json!({
            "translation_class": [
                if w.translation_class.0 == 0 { "0" } else { "1/2" },
                if w.translation_class.1 == 0 { "0" } else { "1/2" },
            ],
            "fixed_points": {
                "vertices": w.fixed_points.vertices,
                "edge_midpoints": w.fixed_points.edge_midpoints,
                "centers": w.fixed_points.centers,
                "quarter_points": w.fixed_points.quarter_points,
                "total": w.fixed_points.total(),
            },
            "square_map_subdivided": format!("{}", w.square_map),
            "square_map": w.square_map_original.as_ref().map(|p| format!("{p}")),
        })
    });
    let report = json!({
        "schema": 1,
        "surface": format!("{o}"),
        "squares": o.squares(),
        "stratum": serde_json::to_value(StratumReport::from(&stratum)).expect("stratum"),
        "h1_rank": hom.rank(),
        "spin": spin_json,
        "hyperelliptic": inv_json,
        "cylinders": cyl_json,
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        println!("surface: {o}");
        println!(
            "stratum: {} (genus {}, marked regular points {})",
            stratum.name(),
            stratum.genus,
            stratum.marked_regular_points
        );
        println!("h1 rank: {}", hom.rank());
        match &spin {
            Some(s) => println!(
                "spin parity: {} ({})",
                s.parity,
                if s.parity == 1 { "odd" } else { "even" }
            ),
            None => println!("spin parity: undefined (odd zero order)"),
        }
        match &involution {
            Some(w) => println!(
                "hyperelliptic: yes, {} fixed points (vertices {}, edge midpoints {}, centers {}, quarter points {}), translation class ({},{})",
                w.fixed_points.total(),
                w.fixed_points.vertices,
                w.fixed_points.edge_midpoints,
                w.fixed_points.centers,
                w.fixed_points.quarter_points,
                if w.translation_class.0 == 0 { "0" } else { "1/2" },
                if w.translation_class.1 == 0 { "0" } else { "1/2" },
            ),
            None => println!("hyperelliptic: no"),
        }
        print!("{cyl_text}");
    }
    Ok(0)
}

fn cmd_cylinders(surface: &str, directions: &[String], json: bool) -> Result<i32, Failure> {
    let o = catalog::resolve(surface)?;
    let dirs = parse_directions_or_default(directions, &[])?;
    let (cyl_json, cyl_text) = cylinder_tables(&o, &dirs)?;
    if json {
        let report = json!({
            "schema": 1,
            "surface": format!("{o}"),
            "cylinders": cyl_json,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        println!("surface: {o}");
        print!("{cyl_text}");
    }
    Ok(0)
}

fn cmd_monodromy(
    surface: &str,
    directions: &[String],
    basis: BasisChoice,
    perp_only: bool,
    json: bool,
) -> Result<i32, Failure> {
    let o = catalog::resolve(surface)?;
    let hom = Homology::new(&o)?;
    let dirs = parse_directions_or_default(directions, &[])?;
    let order = basis.order();
    let perp = hom.perp_basis(order)?;

    let mut dir_reports = Vec::new();
    let mut text = String::new();
    for dir in &dirs {
        let mt = multitwist(&hom, *dir, order)?;
        let mut entry = serde_json::Map::new();
        entry.insert("direction".into(), Value::from(format!("{dir}")));
        entry.insert(
            "derivative".into(),
            json!([
                [mt.derivative.a, mt.derivative.b],
                [mt.derivative.c, mt.derivative.d]
            ]),
        );
        entry.insert("shear".into(), Value::from(mt.shear));
        entry.insert("twist_counts".into(), json!(mt.twist_counts));
        if !perp_only {
            entry.insert("h1_matrix".into(), matrix_json(&mt.matrix_h1));
            entry.insert("h1_cohomology".into(), matrix_json(&mt.cohomology_h1()?));
        }
        entry.insert("perp_matrix".into(), matrix_json(&mt.matrix_perp));
        entry.insert(
            "perp_cohomology".into(),
            matrix_json(&mt.cohomology_perp()?),
        );
        dir_reports.push(Value::Object(entry));

        text.push_str(&format!(
            "# direction {dir}: derivative [[{},{}],[{},{}]], shear {}, twists {:?}\n",
            mt.derivative.a,
            mt.derivative.b,
            mt.derivative.c,
            mt.derivative.d,
            mt.shear,
            mt.twist_counts
        ));
        if !perp_only {
            text.push_str("# h1 matrix\n");
            text.push_str(&matrix_text(&mt.matrix_h1));
            text.push('\n');
            text.push_str("# h1 cohomology (inverse transpose)\n");
            text.push_str(&matrix_text(&mt.cohomology_h1()?));
            text.push('\n');
        }
        text.push_str("# perp matrix\n");
        text.push_str(&matrix_text(&mt.matrix_perp));
        text.push('\n');
        text.push_str("# perp cohomology (inverse transpose)\n");
        text.push_str(&matrix_text(&mt.cohomology_perp()?));
        text.push('\n');
    }

    if json {
        let mut report = serde_json::Map::new();
        report.insert("schema".into(), Value::from(1));
        report.insert("surface".into(), Value::from(format!("{o}")));
        report.insert(
            "basis".into(),
            Value::from(match basis {
                BasisChoice::Canonical => "canonical",
                BasisChoice::Paper => "paper",
            }),
        );
        if !perp_only {
            report.insert("h1_gram".into(), matrix_json(hom.gram()));
        }
        report.insert("perp_labels".into(), json!(perp.labels));
        report.insert("perp_gram".into(), matrix_json(&perp.gram));
        report.insert("directions".into(), Value::Array(dir_reports));
        println!(
            "{}",
            serde_json::to_string_pretty(&Value::Object(report)).expect("json")
        );
    } else {
        println!("# surface: {o}");
        println!("# perp basis: {}", perp.labels.join(", "));
        if !perp_only {
            println!("# h1 gram");
            print!("{}", matrix_text(hom.gram()));
            println!();
        }
        println!("# perp gram");
        print!("{}", matrix_text(&perp.gram));
        println!();
        print!("{text}");
    }
    Ok(0)
}

fn cmd_density(input: Option<&str>, max_word_length: usize) -> Result<i32, Failure> {
    let text = match input {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| input_error(format!("cannot read stdin: {e}")))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {path}: {e}")))?,
    };
    let parsed = matio::parse_density_input(&text).map_err(input_error)?;
    let cert = lie_closure(
        &parsed.matrices,
        parsed.form,
        DensityOptions { max_word_length },
    )?;
    let report = json!({
        "schema": 1,
        "verdict": match cert.verdict { Verdict::Dense => "dense", Verdict::Inconclusive => "inconclusive" },
        "dimension": cert.dimension,
        "expected_dimension": cert.expected_dimension,
        "m": cert.m,
        "form": matrix_json(&cert.form),
        "algebra_basis": cert.algebra_basis.iter().map(matrix_json).collect::<Vec<_>>(),
        "witness_log": cert.witness_log,
        "statement": cert.statement,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    Ok(match cert.verdict {
        Verdict::Dense => 0,
        Verdict::Inconclusive => 3,
    })
}

fn cmd_bubble(surface: &str, slit: usize, json: bool) -> Result<i32, Failure> {
    let o = catalog::resolve(surface)?;
    if slit == 0 || slit > o.squares() {
        return Err(input_error(format!(
            "slit square {slit} out of range 1..{}",
            o.squares()
        )));
    }
    let outcome = bubble_square_handle(
        &o,
        SlitSpec {
            base_square: slit - 1,
        },
    )?;
    if json {
        let report = json!({
            "schema": 1,
            "input": format!("{o}"),
            "slit": slit,
            "result": format!("{}", outcome.origami),
            "added_squares": outcome.added_squares,
            "slit_endpoints_distinct": outcome.slit_endpoints_distinct,
            "stratum_before": serde_json::to_value(StratumReport::from(&outcome.stratum_before)).expect("stratum"),
            "stratum_after": serde_json::to_value(StratumReport::from(&outcome.stratum_after)).expect("stratum"),
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        println!("{}", outcome.origami);
    }
    Ok(0)
}

fn cmd_iso(first: &str, second: &str, json: bool) -> Result<i32, Failure> {
    let a = catalog::resolve(first)?;
    let b = catalog::resolve(second)?;
    let relabeling = a.iso(&b);
    if json {
        let report = json!({
            "schema": 1,
            "first": format!("{a}"),
            "second": format!("{b}"),
            "isomorphic": relabeling.is_some(),
            "relabeling": relabeling.as_ref().map(|p| format!("{p}")),
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        match relabeling {
            Some(p) => println!("{p}"),
            None => println!("none"),
        }
    }
    Ok(0)
}

fn cmd_catalog(name: Option<&str>) -> Result<i32, Failure> {
    match name {
        Some(n) => {
            let entry = catalog::lookup(n)
                .ok_or_else(|| input_error(format!("unknown catalog entry \"{n}\"")))?;
            println!("{}", entry.text);
        }
        None => {
            for e in catalog::entries() {
                println!("@{}: {} - {}", e.name, e.text, e.note);
            }
        }
    }
    Ok(0)
}
