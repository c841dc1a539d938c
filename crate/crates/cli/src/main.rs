use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eqpres::deweak::{check_bundle, Deweak};
use eqpres::equivariant::Check;
use eqpres::homology::{abelianization, homology_report, HomologyOptions};
use eqpres::io::{builtin, bundle_from_json, bundle_to_json, to_canonical_json, PresentationFile};
use eqpres::presentation::DEFAULT_MAX_COSETS;
use eqpres::{EquivariantPresentation, Error};
use serde_json::json;

const BUNDLE_FILE: &str = "bundle.json";

#[derive(Parser)]
#[command(name = "eqpres", version, about = "Equivariant group presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation file (`-` reads stdin).
    Verify {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Fail unless the realized group has this order.
        #[arg(long)]
        expect_order: Option<usize>,
    },
    /// Convert a weak-mode presentation to a finite one.
    Deweak {
        file: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Directory for the certificate bundle.
        #[arg(long)]
        certs: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Replay every derivation in a certificate directory.
    TraceCheck {
        file: String,
        certs: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Second homology with its Γ-action, as JSON.
    H2 {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Abelianization of the presented group.
    Abelianize { file: String },
    /// Γ-orbits of the generator symbols.
    Orbits { file: String },
    /// Print a built-in example (z2sum 2-4, star 3-4, hyperoct 2-3).
    Example { name: String, n: usize },
}

enum Failure {
    Check,
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{file}: {e}")))?;
    }
    Ok(text)
}

fn load(file: &str) -> Result<(PresentationFile, EquivariantPresentation), Failure> {
    let f = PresentationFile::from_json(&read_input(file)?)?;
    let ep = f.to_equivariant()?;
    Ok((f, ep))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn all_passed(checks: &[Check]) -> Result<(), Failure> {
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        for c in checks.iter().filter(|c| !c.passed) {
            eprintln!("check failed: {}: {}", c.name, c.detail);
        }
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            file,
            max_cosets,
            expect_order,
        } => {
            let (_, ep) = load(&file)?;
            let report = ep.validate(max_cosets)?;
            print!("{}", to_canonical_json(&report));
            all_passed(&report.checks)?;
            if let Some(k) = expect_order {
                if report.realized_order != k {
                    eprintln!("realized order {} differs from expected {k}", report.realized_order);
                    return Err(Failure::Check);
                }
            }
        }
        Command::Deweak {
            file,
            output,
            certs,
            max_cosets,
        } => {
            let (f, ep) = load(&file)?;
            let d = Deweak::new(&ep, max_cosets)?;
            let out = d.output()?;
            let bundle = d.bundle()?;
            let out_file = PresentationFile::from_equivariant(&format!("{} (finite)", f.name), &out);
            write(&output, &out_file.to_json())?;
            if let Some(dir) = certs {
                std::fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
                let text = bundle_to_json(&bundle, out.gamma_set(), &d.table)?;
                write(&dir.join(BUNDLE_FILE), &text)?;
            }
            let checks = check_bundle(&out, &bundle, max_cosets)?;
            let summary = json!({
                "x": bundle.x.iter().map(|&s| out.gamma_set().symbol_name(s)).collect::<Vec<_>>(),
                "y_size": bundle.y.len(),
                "relator_count": out.r0().len(),
                "trace_count": bundle.traces.len(),
                "checks": checks,
            });
            print!("{}", to_canonical_json(&summary));
            all_passed(&checks)?;
        }
        Command::TraceCheck { file, certs, max_cosets } => {
            let (_, ep) = load(&file)?;
            let path = certs.join(BUNDLE_FILE);
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let bundle = bundle_from_json(&text, ep.gamma_set())?;
            let checks = check_bundle(&ep, &bundle, max_cosets)?;
            print!("{}", to_canonical_json(&json!({ "checks": checks })));
            all_passed(&checks)?;
        }
        Command::H2 { file, max_cosets } => {
            let (_, ep) = load(&file)?;
            let opts = HomologyOptions {
                max_cosets,
                ..HomologyOptions::default()
            };
            let report = homology_report(&ep, opts)?;
            print!("{}", to_canonical_json(&report));
            all_passed(&report.five_term_diagnostics)?;
        }
        Command::Abelianize { file } => {
            let (_, ep) = load(&file)?;
            let h1 = abelianization(&ep.expand_r()?.presentation);
            let factors: Vec<String> = h1.torsion.iter().map(|d| d.to_string()).collect();
            print!(
                "{}",
                to_canonical_json(&json!({ "invariant_factors": factors, "free_rank": h1.free_rank }))
            );
        }
        Command::Orbits { file } => {
            let (_, ep) = load(&file)?;
            let gs = ep.gamma_set();
            let mut orbits = Vec::new();
            for (i, o) in gs.orbits().iter().enumerate() {
                let base = eqpres::SymbolRef::new(i, o.base_point);
                let symbols: Vec<String> = gs
                    .enumerate_s()
                    .into_iter()
                    .filter(|s| s.orbit_index == i)
                    .map(|s| gs.symbol_name(s))
                    .collect();
                let stab = gs.stabilizer_of_symbol(base)?;
                let gamma_order = gs.gamma().order()?;
                let stab_order = eqpres::permgroup::generated_order(gs.gamma().degree(), &stab, gamma_order)?;
                orbits.push(json!({
                    "rep_name": o.rep_name,
                    "representative": gs.symbol_name(base),
                    "size": o.domain_size,
                    "symbols": symbols,
                    "stabilizer_order": stab_order,
                }));
            }
            let out = json!({
                "gamma_order": gs.gamma().order()?,
                "symbol_count": gs.symbol_count(),
                "mode": ep.mode(),
                "orbits": orbits,
            });
            print!("{}", to_canonical_json(&out));
        }
        Command::Example { name, n } => {
            print!("{}", builtin(&name, n)?.to_json());
        }
    }
    Ok(())
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Check => 1,
        Failure::Io(_) => 2,
        Failure::Lib(e) => match e {
            Error::CapExceeded { .. } => 3,
            Error::Parse { .. }
            | Error::UnknownSymbol(_)
            | Error::UnknownExample(_)
            | Error::ExampleRange { .. }
            | Error::UnknownGenerator(_)
            | Error::DuplicateGenerator(_)
            | Error::NotAPermutation(_)
            | Error::Invalid(_)
            | Error::ModeMismatch { .. }
            | Error::DegreeMismatch { .. }
            | Error::PointOutOfRange { .. }
            | Error::SymbolOutOfRange(_) => 2,
            _ => 1,
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check => {}
                Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> u8 {
        let cli = Cli::try_parse_from(std::iter::once("eqpres").chain(args.iter().copied())).unwrap();
        run(cli).err().map_or(0, |f| exit_code(&f))
    }

    fn temp(name: &str, text: &str) -> String {
        let dir = std::env::temp_dir().join(format!("eqpres-cli-unit-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    #[test]
    fn exit_codes() {
        let z = temp("z2sum3.json", &builtin("z2sum", 3).unwrap().to_json());
        assert_eq!(code(&["verify", &z]), 0);
        assert_eq!(code(&["verify", &z, "--expect-order", "8"]), 0);
        assert_eq!(code(&["verify", &z, "--expect-order", "9"]), 1);
        assert_eq!(code(&["verify", &z, "--max-cosets", "4"]), 3);
        assert_eq!(code(&["example", "z2sum", "7"]), 2);
        assert_eq!(code(&["example", "nope", "2"]), 2);
        assert_eq!(code(&["verify", "/nonexistent/file.json"]), 2);
        let bad = temp("bad.json", "{\"name\": ");
        assert_eq!(code(&["verify", &bad]), 2);
        let out = temp("unused.json", "");
        assert_eq!(code(&["deweak", &z, "-o", &out]), 2);
        assert!(Cli::try_parse_from(["eqpres", "verify"]).is_err());
    }

    #[test]
    fn deweak_then_trace_check() {
        let h = temp("hyperoct2.json", &builtin("hyperoct", 2).unwrap().to_json());
        let out = temp("hyperoct2-out.json", "");
        let certs = std::path::Path::new(&out).with_extension("certs").display().to_string();
        assert_eq!(code(&["deweak", &h, "-o", &out, "--certs", &certs]), 0);
        assert_eq!(code(&["trace-check", &out, &certs]), 0);
        assert_eq!(code(&["verify", &out, "--expect-order", "4"]), 0);
        assert_eq!(code(&["h2", &out]), 0);
        assert_eq!(code(&["abelianize", &h]), 0);
        assert_eq!(code(&["orbits", &h]), 0);

        // a tampered bundle no longer replays
        let path = std::path::Path::new(&certs).join(BUNDLE_FILE);
        let text = std::fs::read_to_string(&path).unwrap();
        let tampered = text.replacen("\"position\": 0", "\"position\": 5", 1);
        assert_ne!(tampered, text);
        std::fs::write(&path, tampered).unwrap();
        assert_eq!(code(&["trace-check", &out, &certs]), 1);
    }
}
