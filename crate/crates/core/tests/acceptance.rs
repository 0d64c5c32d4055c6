//! One line per acceptance criterion. Runs as a plain binary so the lines
//! show up in `cargo test` output; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use swapkit::boolean_algebra::BoolAlg;
use swapkit::hilbert::{axioms_of, check_proof, derives_ciw_bottom, Proof};
use swapkit::nmatrix::holds_in_logic;
use swapkit::swap::{full_swap, validates, LogicId};
use swapkit::verify::{self, quotient_demo, semantic_check_logic, Options, Report};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(fails: Vec<String>, detail: impl Into<String>) -> Outcome {
        match fails.is_empty() {
            true => Outcome {
                ok: true,
                detail: detail.into(),
            },
            false => Outcome {
                ok: false,
                detail: fails.into_iter().take(5).collect::<Vec<_>>().join("; "),
            },
        }
    }

    fn from_report(r: &Report) -> Outcome {
        Outcome::from_failures(
            r.failures.clone(),
            format!("{} checks; {}", r.checked, r.notes.join("; ")),
        )
    }
}

fn c1_mbc_tables() -> Outcome {
    let (code, text, err) = cli(&["tables", "mbC"]);
    let mut fails = rendered_mismatches(&text, &MBC);
    if code != 0 {
        fails.push(format!("exit {code}: {err}"));
    }
    if !text.contains("carrier: {T,t,t₀,F,f₀}\nD = {T,t,t₀}\n") {
        fails.push("carrier or D line".into());
    }
    let b = full_swap(LogicId::MbC, BoolAlg::two()).expect("full");
    fails.extend(table_mismatches(&b, &MBC));
    Outcome::from_failures(fails, "5 tables, 65 cells")
}

fn c2_three_valued() -> Outcome {
    let mut fails = Vec::new();
    for table in THREE_VALUED {
        let (_, text, _) = cli(&["tables", table.logic.name()]);
        fails.extend(
            rendered_mismatches(&text, table)
                .into_iter()
                .map(|m| format!("{}: {m}", table.logic)),
        );
        let b = full_swap(table.logic, BoolAlg::two()).expect("full");
        fails.extend(
            table_mismatches(&b, table)
                .into_iter()
                .map(|m| format!("{}: {m}", table.logic)),
        );
    }
    Outcome::from_failures(fails, "mbCciw, mbCci, Ci, LFI1∘, Ciore")
}

fn c3_decisions() -> Outcome {
    use LogicId::*;
    let cases: [(&str, LogicId, &[&str], &str, bool); 12] = [
        ("a", MbC, &["p", "~p"], "q", false),
        ("b", MbC, &["@p", "p", "~p"], "q", true),
        ("c", MbC, &[], "p | ~p", true),
        ("d", MbC, &[], "@p | p & ~p", false),
        ("d", MbCciw, &[], "@p | p & ~p", true),
        ("e", MbCciw, &[], "~@p -> p & ~p", false),
        ("e", MbCci, &[], "~@p -> p & ~p", true),
        ("f", MbCci, &[], "~~p -> p", false),
        ("f", Ci, &[], "~~p -> p", true),
        ("g", Cple, &[], "@p", true),
        ("h", Lfi1o, &[], "~(p -> q) -> p & ~q", true),
        ("h", Ciore, &[], "@p | @q -> @(p -> q)", true),
    ];
    let mut fails = Vec::new();
    for (tag, l, prem, goal, want) in cases {
        match holds_in_logic(l, &fs(prem), &f(goal)) {
            Ok(got) if got == want => {}
            other => fails.push(format!("({tag}) {l}: {goal} gave {other:?}")),
        }
    }
    let added = [
        (Lfi1o, ["ce", "neg_or", "neg_and", "neg_imp"]),
        (Ciore, ["ce", "co1", "co2", "co3"]),
    ];
    for (l, names) in added {
        let b = full_swap(l, BoolAlg::two()).expect("full");
        for name in names {
            if !axioms_of(l).get(name).is_some_and(|s| validates(&b, s)) {
                fails.push(format!("(h) {l}: {name} not valid as a schema"));
            }
        }
    }
    Outcome::from_failures(fails, "(a)-(h), 12 verdicts and 8 schemas")
}

fn opts(max_atoms: u32, samples: usize) -> Options {
    Options {
        max_atoms,
        samples,
        ..Options::default()
    }
}

fn c6_quotient() -> Outcome {
    let d = quotient_demo();
    let mut fails = Vec::new();
    let blocks: Vec<Vec<String>> = d
        .theta
        .blocks()
        .iter()
        .map(|bl| bl.iter().map(|&x| d.source.labels()[x].clone()).collect())
        .collect();
    if blocks != [vec!["T", "F"], vec!["t", "t₀", "f₀"]] {
        fails.push(format!("partition {blocks:?}"));
    }
    if !d.is_multicongruence {
        fails.push("not a multicongruence".into());
    }
    if !d.all_cells_full {
        fails.push("some quotient cell is not {a,b}".into());
    }
    if d.is_swap {
        fails.push("quotient accepted as an mbC swap structure".into());
    }
    let (code, out, _) = cli(&["quotient-demo"]);
    if code != 0 || !out.contains("not a swap structure for mbC") {
        fails.push("command output".into());
    }
    Outcome::from_failures(
        fails,
        "Θ = {{T,F},{t,t₀,f₀}}, quotient all {a,b}, not in the mbC class",
    )
}

fn c8_duality() -> Outcome {
    let mut fails = verify::duality(&opts(3, 0)).failures;
    let (code, out, _) = cli(&["kalman"]);
    if code != 0 || !out.contains("center f, ¬f = f") || !out.contains("Kleene laws: ok") {
        fails.push("kalman command".into());
    }
    Outcome::from_failures(
        fails,
        "∗ equations, K(A) Kleene laws and Ciore u₂ over 1 to 3 atoms",
    )
}

fn c10_proofs() -> Outcome {
    let mut fails = Vec::new();
    let fixtures = [
        ("one_mp.proof", LogicId::CplePlus),
        ("explosion.proof", LogicId::MbC),
        ("bottom.proof", LogicId::MbC),
        ("neg_or_halves.proof", LogicId::Lfi1o),
        ("co1_halves.proof", LogicId::Ciore),
    ];
    for (name, l) in fixtures {
        let p = Proof::parse(&fixture(name)).expect("fixture parses");
        match check_proof(l, &p) {
            Ok(c) if holds_in_logic(semantic_check_logic(l), &p.premises, &c) == Ok(true) => {}
            other => fails.push(format!("{name}: {other:?}")),
        }
    }
    for l in LogicId::ALL.into_iter().filter(|&l| l != LogicId::CplePlus) {
        let ok = derives_ciw_bottom(l).is_some_and(|p| check_proof(l, &p) == Ok(f("q")));
        if !ok {
            fails.push(format!("bottom derivation in {l}"));
        }
    }
    // 25 per logic, 200 in all
    let r = verify::proofs(&opts(0, 25));
    fails.extend(r.failures.clone());
    Outcome::from_failures(
        fails,
        format!(
            "5 fixtures, bottom in 7 logics, {} fuzz checks; {}",
            r.checked,
            r.notes.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    type Check = Box<dyn Fn() -> Outcome>;
    let criteria: Vec<(u32, &str, Option<Duration>, Check)> = vec![
        (
            1,
            "mbC tables",
            Some(Duration::from_secs(1)),
            Box::new(c1_mbc_tables),
        ),
        (
            2,
            "three-valued tables",
            Some(Duration::from_secs(1)),
            Box::new(c2_three_valued),
        ),
        (
            3,
            "decision suite",
            Some(Duration::from_secs(5)),
            Box::new(c3_decisions),
        ),
        (
            4,
            "characterization equivalence",
            Some(Duration::from_secs(60)),
            Box::new(|| Outcome::from_report(&verify::characterization(&opts(2, 200)))),
        ),
        (
            5,
            "representation",
            Some(Duration::from_secs(120)),
            Box::new(|| Outcome::from_report(&verify::representation(&opts(3, 50)))),
        ),
        (
            6,
            "quotient counterexample",
            Some(Duration::from_secs(1)),
            Box::new(c6_quotient),
        ),
        (
            7,
            "Kalman functor laws",
            None,
            Box::new(|| Outcome::from_report(&verify::kalman(&opts(3, 100)))),
        ),
        (8, "duality and twist", None, Box::new(c8_duality)),
        (
            9,
            "bivaluation bridge",
            None,
            Box::new(|| Outcome::from_report(&verify::bivaluations(&opts(0, 1000)))),
        ),
        (10, "proof checker soundness", None, Box::new(c10_proofs)),
    ];
    let only: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let mut out = check();
        let took = start.elapsed();
        if let Some(limit) = limit.filter(|&l| took > l) {
            out.ok = false;
            out.detail = format!("took {took:.2?}, limit {limit:?}; {}", out.detail);
        }
        failed += usize::from(!out.ok);
        println!(
            "[{}] {n} {name} ({took:.2?}): {}",
            if out.ok { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
