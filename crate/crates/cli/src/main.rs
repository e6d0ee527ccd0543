//! Command-line front end: file in, stable text report out.
//!
//! Exit codes: 0 on success, 1 on a contract violation, 2 on a parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cutpaste::error::{Error, Result};
use cutpaste::fixtures;
use cutpaste::manifold::TriangulationModel;
use cutpaste::simplicial::SimplicialObject;
use cutpaste::skgroups::{invariant_tuple, sk_equivalent, skk_equivalent};
use cutpaste::squares::{grid_nerve, k0_presentation, SquaresCategory};
use cutpaste::triangulation::{mapping_torus, Triangulation};

#[derive(Parser)]
#[command(name = "cutpaste", version, about = "Exact invariants of triangulated manifolds, simplicial objects, and squares categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the closed-pseudomanifold invariants of a triangulation file.
    Validate { file: PathBuf },
    /// Integer homology of a triangulation or simplicial-object file.
    Homology { file: PathBuf },
    /// Euler characteristic, semicharacteristic and bordism data.
    Invariants {
        file: PathBuf,
        /// Bordism class label, needed from dimension 5 up.
        #[arg(long)]
        bordism: Option<String>,
    },
    /// Decide SK or SKK equivalence of two triangulations.
    Equiv {
        /// Equivalence relation to decide.
        #[arg(long, value_parser = ["sk", "skk"])]
        rel: String,
        a: PathBuf,
        b: PathBuf,
        /// Bordism label(s): one applies to both inputs, two apply in order.
        #[arg(long)]
        bordism: Vec<String>,
    },
    /// K1(Z)-valued class of a vertex automorphism.
    K1 {
        file: PathBuf,
        /// Inline permutation, e.g. "1 0 2 3 4"; wins over a perm line.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Mapping torus of a triangulation under an automorphism.
    Torus {
        file: PathBuf,
        #[arg(long)]
        perm: Option<String>,
    },
    /// Edgewise subdivision of a simplicial-object file.
    Subdivide { file: PathBuf },
    /// K0 presentation of a squares-category file.
    K0 { file: PathBuf },
    /// Grid nerve of a squares-category file, up to a maximum degree.
    Grid {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        /// Enumeration budget for partial grids.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Emit a built-in triangulation by name.
    Fixture { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", path.display())))
}

fn load_triangulation(path: &Path) -> Result<Triangulation> {
    Triangulation::parse(&read(path)?)
}

fn parse_perm(s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::contract(format!("bad permutation entry '{t}'"))))
        .collect()
}

/// Inline permutation wins over the file's perm line, with a warning.
fn resolve_perm(t: &Triangulation, inline: Option<&str>) -> Result<Vec<u32>> {
    match (inline, &t.permutation) {
        (Some(s), Some(_)) => {
            eprintln!("warning: inline permutation overrides the perm line in the file");
            parse_perm(s)
        }
        (Some(s), None) => parse_perm(s),
        (None, Some(p)) => Ok(p.clone()),
        (None, None) => Ok((0..t.vertex_count as u32).collect()),
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Validate { file } => {
            let t = load_triangulation(&file)?;
            let report = t.validate();
            println!("valid:{}", report.is_valid());
            for v in &report.violations {
                println!("violation:{v}");
            }
            if report.is_valid() {
                println!("connected:{}", report.connected);
                println!("components:{}", report.components);
                match report.orientable {
                    Some(o) => println!("orientable:{o}"),
                    None => println!("orientable:unknown"),
                }
            }
            Ok(if report.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Homology { file } => {
            let text = read(&file)?;
            let groups = if is_triangulation_text(&text) {
                let t = Triangulation::parse(&text)?;
                cutpaste::homology::homology(&t.chain_complex().0)
            } else {
                let x = SimplicialObject::parse(&text)?;
                cutpaste::homology::homology(&x.normalized_chains())
            };
            for (n, g) in groups.iter().enumerate() {
                println!("H_{n} = {g}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { file, bordism } => {
            let t = load_triangulation(&file)?;
            let tuple = invariant_tuple(&t, bordism.as_deref())?;
            println!("{}", tuple.report());
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv { rel, a, b, bordism } => {
            let ta = load_triangulation(&a)?;
            let tb = load_triangulation(&b)?;
            let (la, lb) = match bordism.as_slice() {
                [] => (None, None),
                [one] => (Some(one.as_str()), Some(one.as_str())),
                [one, two, ..] => (Some(one.as_str()), Some(two.as_str())),
            };
            let ia = invariant_tuple(&ta, la)?;
            let ib = invariant_tuple(&tb, lb)?;
            let verdict = match rel.as_str() {
                "skk" => skk_equivalent(&ia, &ib)?,
                _ => sk_equivalent(&ia, &ib)?,
            };
            println!("{}", ia.report());
            println!("{}", ib.report());
            println!("{{dim:{}, rel:{rel}, verdict:{verdict}}}", ia.dim);
            Ok(ExitCode::SUCCESS)
        }
        Command::K1 { file, perm } => {
            let t = load_triangulation(&file)?;
            let p = resolve_perm(&t, perm.as_deref())?;
            let model = TriangulationModel::new(&t);
            println!("{}", model.k1_class(&p)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Torus { file, perm } => {
            let t = load_triangulation(&file)?;
            let p = resolve_perm(&t, perm.as_deref())?;
            let torus = mapping_torus(&t, &p)?;
            print!("{}", torus.serialize());
            Ok(ExitCode::SUCCESS)
        }
        Command::Subdivide { file } => {
            let x = SimplicialObject::parse(&read(&file)?)?;
            let sd = cutpaste::simplicial::edgewise_subdivide(&x)?;
            print!("{}", sd.serialize());
            Ok(ExitCode::SUCCESS)
        }
        Command::K0 { file } => {
            let c = SquaresCategory::parse(&read(&file)?)?;
            let p = k0_presentation(&c)?;
            println!("group: {}", p.group);
            for (i, g) in p.generators.iter().enumerate() {
                println!("generator {i}: {g}");
            }
            let mut objects = c.objects.clone();
            objects.sort();
            for o in &objects {
                let coords = p.class_vector(o)?;
                let parts: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
                println!("class {o}: [{}]", parts.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid { file, nmax, budget } => {
            let c = SquaresCategory::parse(&read(&file)?)?;
            let nerve = grid_nerve(&c, nmax, budget)?;
            print!("{}", nerve.serialize());
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixture { name } => {
            let t = fixtures::fixture(&name)?;
            print!("{}", t.serialize());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn is_triangulation_text(text: &str) -> bool {
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("");
        if let Some(head) = line.split_whitespace().next() {
            return matches!(head, "dim" | "vertices" | "facet" | "orient" | "perm");
        }
    }
    false
}
