//! The `swapkit` command line.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::boolean_algebra::powerset_algebra;
use crate::exec::Exec;
use crate::formula::Formula;
use crate::hilbert::{check_proof, Proof};
use crate::multialgebra::MultiAlgebra;
use crate::nmatrix::{characteristic, decide_logic};
use crate::render::{render_multialgebra, render_tables, tables_json};
use crate::swap::{full_swap, kalman_classic, represent, LogicId};
use crate::verify::{quotient_demo, run_suite, Options, SUITES};

#[derive(Parser, Debug)]
#[command(
    name = "swapkit",
    version,
    about = "Swap structures and Nmatrices for logics of formal inconsistency"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tables of the full swap structure over the algebra with n atoms.
    Tables {
        logic: LogicId,
        #[arg(long, default_value_t = 1)]
        atoms: u32,
    },
    /// Decide premises ⊨ goal in the logic's characteristic Nmatrix.
    Decide {
        logic: LogicId,
        goal: String,
        #[arg(short = 'p', long = "premise")]
        premises: Vec<String>,
    },
    /// Check a Hilbert proof file.
    CheckProof {
        logic: LogicId,
        file: std::path::PathBuf,
    },
    /// Run a property suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 2)]
        atoms: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Run sweeps on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Kalman's K(A) with its Kleene law check.
    Kalman {
        #[arg(long, default_value_t = 1)]
        atoms: u32,
    },
    /// Build and verify ĥ into a power of the two-element structure.
    Represent {
        logic: LogicId,
        #[arg(long, default_value_t = 1)]
        atoms: u32,
    },
    /// The mbC quotient that leaves the class.
    QuotientDemo,
}

type Out<'a> = &'a mut dyn Write;

/// Run with `args` (program name first). Returns the exit code: 0 on
/// success, 1 on a negative verdict or failed check, 2 on usage errors.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn parse_formula(s: &str) -> Result<Formula, String> {
    Formula::parse(s).map_err(|e| format!("cannot parse {s:?}: {e}"))
}

fn emit(out: Out, text: &str) -> Result<(), String> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn emit_json(out: Out, v: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    emit(out, &format!("{text}\n"))
}

fn execute(cli: Cli, out: Out) -> Result<i32, String> {
    let json = cli.json;
    match cli.command {
        Command::Tables { logic, atoms } => {
            let alg = powerset_algebra(atoms).map_err(|e| e.to_string())?;
            let b = full_swap(logic, alg).map_err(|e| e.to_string())?;
            if json {
                emit_json(out, &tables_json(&b))?;
            } else {
                emit(out, &render_tables(&b))?;
            }
            Ok(0)
        }
        Command::Decide {
            logic,
            goal,
            premises,
        } => {
            let goal = parse_formula(&goal)?;
            let premises = premises
                .iter()
                .map(|p| parse_formula(p))
                .collect::<Result<Vec<_>, _>>()?;
            let verdict = decide_logic(logic, &premises, &goal).map_err(|e| e.to_string())?;
            let m = characteristic(logic).map_err(|e| e.to_string())?;
            if json {
                let mut v = verdict.to_json(m);
                v["logic"] = json!(logic.name());
                emit_json(out, &v)?;
            } else if verdict.holds {
                emit(out, "holds\n")?;
            } else {
                let mut text = String::from("does not hold\ncountermodel:\n");
                if let Some(cm) = &verdict.countermodel {
                    for (f, &x) in cm.domain().iter().zip(cm.values()) {
                        let mark = if m.is_designated(x) { "D" } else { "ND" };
                        text.push_str(&format!("  {f} = {} ({mark})\n", m.label(x)));
                    }
                }
                emit(out, &text)?;
            }
            Ok(if verdict.holds { 0 } else { 1 })
        }
        Command::CheckProof { logic, file } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let proof = Proof::parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let result = check_proof(logic, &proof);
            if json {
                let v = match &result {
                    Ok(c) => {
                        json!({"valid": true, "logic": logic.name(), "steps": proof.steps.len(), "conclusion": c.to_string()})
                    }
                    Err(e) => {
                        json!({"valid": false, "logic": logic.name(), "step": e.step(), "error": e.to_string()})
                    }
                };
                emit_json(out, &v)?;
            } else {
                match &result {
                    Ok(c) => emit(
                        out,
                        &format!(
                            "valid in {logic}: {} steps, concludes {c}\n",
                            proof.steps.len()
                        ),
                    )?,
                    Err(e) => emit(out, &format!("invalid in {logic}: {e}\n"))?,
                }
            }
            Ok(if result.is_ok() { 0 } else { 1 })
        }
        Command::Verify {
            suite,
            atoms,
            seed,
            samples,
            sequential,
        } => {
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::default()
            };
            let opts = Options {
                max_atoms: atoms,
                seed,
                samples,
                exec,
            };
            let report =
                run_suite(&suite, &opts).ok_or_else(|| format!("unknown suite {suite}"))?;
            if json {
                emit_json(out, &report.to_json())?;
            } else {
                emit(out, &report.summary())?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Kalman { atoms } => {
            let alg = powerset_algebra(atoms).map_err(|e| e.to_string())?;
            let k = kalman_classic(alg);
            let labels: Vec<String> = (0..k.size()).map(|i| k.label(i)).collect();
            let laws = k.law_violations();
            if json {
                let neg: Vec<&String> = (0..k.size()).map(|i| &labels[k.neg(i)]).collect();
                let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<&String>> {
                    (0..k.size())
                        .map(|x| (0..k.size()).map(|y| &labels[f(x, y)]).collect())
                        .collect()
                };
                emit_json(
                    out,
                    &json!({
                        "atoms": atoms,
                        "carrier": labels,
                        "center": labels[k.center()],
                        "neg": neg,
                        "and": table(&|x, y| k.meet(x, y)),
                        "or": table(&|x, y| k.join(x, y)),
                        "imp": table(&|x, y| k.imp(x, y)),
                        "j_imp": table(&|x, y| k.j_imp(x, y)),
                        "kleene_violations": laws,
                    }),
                )?;
            } else {
                let mut text = format!(
                    "K(A) over {atoms} atom(s), carrier {{{}}}\n",
                    labels.join(",")
                );
                text.push_str(&format!(
                    "center {}, ¬{} = {}\n",
                    labels[k.center()],
                    labels[k.center()],
                    labels[k.neg(k.center())]
                ));
                let binary = |name: &str, f: &dyn Fn(usize, usize) -> usize| {
                    let w = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
                    let mut t = format!("{name:<w$} |");
                    for l in &labels {
                        t.push_str(&format!(" {l:<w$}"));
                    }
                    t = t.trim_end().to_string();
                    t.push('\n');
                    for x in 0..k.size() {
                        let mut row = format!("{:<w$} |", labels[x]);
                        for y in 0..k.size() {
                            row.push_str(&format!(" {:<w$}", labels[f(x, y)]));
                        }
                        t.push_str(row.trim_end());
                        t.push('\n');
                    }
                    t
                };
                text.push('\n');
                text.push_str(&binary("∧", &|x, y| k.meet(x, y)));
                text.push('\n');
                text.push_str(&binary("∨", &|x, y| k.join(x, y)));
                text.push('\n');
                text.push_str(&binary("→", &|x, y| k.imp(x, y)));
                text.push('\n');
                text.push_str(&binary("→J", &|x, y| k.j_imp(x, y)));
                text.push('\n');
                for x in 0..k.size() {
                    text.push_str(&format!("¬{} = {}\n", labels[x], labels[k.neg(x)]));
                }
                text.push_str(&if laws.is_empty() {
                    "Kleene laws: ok\n".to_string()
                } else {
                    format!("Kleene laws fail: {}\n", laws.join("; "))
                });
                emit(out, &text)?;
            }
            Ok(if laws.is_empty() { 0 } else { 1 })
        }
        Command::Represent { logic, atoms } => {
            let alg = powerset_algebra(atoms).map_err(|e| e.to_string())?;
            let b = full_swap(logic, alg).map_err(|e| e.to_string())?;
            let r = represent(logic, &b).map_err(|e| e.to_string())?;
            let ok = r.verify(&b).map_err(|e| e.to_string())?;
            let power = r.power();
            let images: Vec<(String, Vec<String>)> = (0..b.size())
                .map(|x| {
                    let coords = power.coords(r.map.apply(x));
                    (
                        b.label(x),
                        coords.iter().map(|&c| r.factor.label(c)).collect(),
                    )
                })
                .collect();
            if json {
                let map: serde_json::Map<String, serde_json::Value> =
                    images.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                emit_json(
                    out,
                    &json!({"logic": logic.name(), "atoms": atoms, "index_set": r.index_set,
                            "factor_carrier": r.factor.labels(), "map": map, "injective_homomorphism": ok}),
                )?;
            } else {
                let mut text = format!(
                    "ĥ : {logic} over {atoms} atom(s) → {}^{}\n",
                    format_args!("B2[{}]", r.factor.labels().join(",")),
                    r.index_set.len()
                );
                for (k, v) in &images {
                    text.push_str(&format!("  {k} ↦ ({})\n", v.join(", ")));
                }
                text.push_str(if ok {
                    "injective homomorphism: yes\n"
                } else {
                    "injective homomorphism: no\n"
                });
                emit(out, &text)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::QuotientDemo => {
            let d = quotient_demo();
            let blocks: Vec<String> = d
                .theta
                .blocks()
                .iter()
                .map(|b| {
                    format!(
                        "{{{}}}",
                        b.iter()
                            .map(|&x| d.source.label(x))
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            let verdict = if d.is_swap {
                "a swap structure for mbC"
            } else {
                "not a swap structure for mbC"
            };
            if json {
                emit_json(
                    out,
                    &json!({"theta": blocks, "names": ["a", "b"], "multicongruence": d.is_multicongruence,
                            "all_cells_full": d.all_cells_full, "quotient": d.quotient.to_json(),
                            "swap_structure_for_mbC": d.is_swap}),
                )?;
            } else {
                let mut text = format!(
                    "Θ = {{{}}}, a = {}, b = {}\n",
                    blocks.join(", "),
                    blocks[0],
                    blocks[1]
                );
                text.push_str(&format!(
                    "multicongruence: {}\n\n",
                    if d.is_multicongruence { "yes" } else { "no" }
                ));
                text.push_str(&render_multialgebra(&d.quotient));
                text.push_str(&format!("\nquotient is {verdict}\n"));
                emit(out, &text)?;
            }
            Ok(if d.is_multicongruence && d.all_cells_full && !d.is_swap {
                0
            } else {
                1
            })
        }
    }
}
