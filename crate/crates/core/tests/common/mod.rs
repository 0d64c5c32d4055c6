#![allow(dead_code)]

use std::collections::BTreeSet;

use swapkit::formula::Formula;
use swapkit::multialgebra::{tuple_count, MultiAlgebra};
use swapkit::swap::{LogicId, SwapStructure};

pub const OPS: [&str; 5] = ["∧", "∨", "→", "¬", "∘"];

/// A published table: carrier in display order and, per operation, rows
/// separated by `/` with whitespace-separated cells. Cells are `D`/`ND`
/// blocks, bare labels, or `{x,y}` sets.
pub struct Published {
    pub logic: LogicId,
    pub carrier: &'static [&'static str],
    pub designated: &'static [&'static str],
    pub ops: [&'static str; 5],
}

const TWO3: &[&str] = &["T", "t", "F"];

pub const MBC: Published = Published {
    logic: LogicId::MbC,
    carrier: &["T", "t", "t₀", "F", "f₀"],
    designated: &["T", "t", "t₀"],
    ops: [
        "D D D ND ND / D D D ND ND / D D D ND ND / ND ND ND ND ND / ND ND ND ND ND",
        "D D D D D / D D D D D / D D D D D / D D D ND ND / D D D ND ND",
        "D D D ND ND / D D D ND ND / D D D ND ND / D D D D D / D D D D D",
        "ND / D / ND / D / D",
        "D / ND / ND / D / ND",
    ],
};

const CIW_BIN: [&str; 3] = [
    "{t,T} {t,T} {F} / {t,T} {t,T} {F} / {F} {F} {F}",
    "{t,T} {t,T} {t,T} / {t,T} {t,T} {t,T} / {t,T} {t,T} {F}",
    "{t,T} {t,T} {F} / {t,T} {t,T} {F} / {t,T} {t,T} {t,T}",
];

pub const MBCCIW: Published = Published {
    logic: LogicId::MbCciw,
    carrier: TWO3,
    designated: &["T", "t"],
    ops: [
        CIW_BIN[0],
        CIW_BIN[1],
        CIW_BIN[2],
        "{F} / {t,T} / {t,T}",
        "{t,T} / {F} / {t,T}",
    ],
};

pub const MBCCI: Published = Published {
    logic: LogicId::MbCci,
    carrier: TWO3,
    designated: &["T", "t"],
    ops: [
        CIW_BIN[0],
        CIW_BIN[1],
        CIW_BIN[2],
        "{F} / {t,T} / {t,T}",
        "{T} / {F} / {T}",
    ],
};

pub const CI: Published = Published {
    logic: LogicId::Ci,
    carrier: TWO3,
    designated: &["T", "t"],
    ops: [
        CIW_BIN[0],
        CIW_BIN[1],
        CIW_BIN[2],
        "{F} / {t,T} / {T}",
        "{T} / {F} / {T}",
    ],
};

pub const LFI1O: Published = Published {
    logic: LogicId::Lfi1o,
    carrier: TWO3,
    designated: &["T", "t"],
    ops: [
        "T t F / t t F / F F F",
        "T T T / T t t / T t F",
        "T t F / T t F / T T T",
        "F / t / T",
        "T / F / T",
    ],
};

pub const CIORE: Published = Published {
    logic: LogicId::Ciore,
    carrier: TWO3,
    designated: &["T", "t"],
    ops: [
        "T T F / T t F / F F F",
        "T T T / T t T / T T F",
        "T T F / T t F / T T T",
        "F / t / T",
        "T / F / T",
    ],
};

pub const THREE_VALUED: [&Published; 5] = [&MBCCIW, &MBCCI, &CI, &LFI1O, &CIORE];

impl Published {
    pub fn rows(&self, op: usize) -> Vec<Vec<&'static str>> {
        self.ops[op]
            .split('/')
            .map(|r| r.split_whitespace().collect())
            .collect()
    }

    /// The published cell as a set of labels.
    pub fn cell_set(&self, token: &str) -> BTreeSet<String> {
        let nd: Vec<&str> = self
            .carrier
            .iter()
            .filter(|x| !self.designated.contains(x))
            .copied()
            .collect();
        match token {
            "D" => self.designated.iter().map(|s| s.to_string()).collect(),
            "ND" => nd.iter().map(|s| s.to_string()).collect(),
            t => t
                .trim_matches(|c| c == '{' || c == '}')
                .split(',')
                .map(str::to_string)
                .collect(),
        }
    }
}

/// Cells of `b` that differ from the published table, described.
pub fn table_mismatches(b: &SwapStructure, table: &Published) -> Vec<String> {
    let mut out = Vec::new();
    let labels = b.labels();
    if labels.iter().map(String::as_str).collect::<Vec<_>>() != table.carrier {
        out.push(format!("carrier {labels:?}"));
        return out;
    }
    for (op, sym) in OPS.iter().enumerate() {
        for (x, row) in table.rows(op).iter().enumerate() {
            for (y, token) in row.iter().enumerate() {
                let args: Vec<usize> = if op < 3 { vec![x, y] } else { vec![x] };
                let got: BTreeSet<String> = b.cell(op, &args).iter().map(|&u| b.label(u)).collect();
                let want = table.cell_set(token);
                if got != want {
                    out.push(format!("{sym} {args:?}: got {got:?}, want {want:?}"));
                }
            }
        }
    }
    out
}

/// Data rows of one rendered table as (row label, cells).
pub type Rows = Vec<(String, Vec<String>)>;

/// Rendered tables: for each operation symbol, the data rows as
/// (row label, cells).
pub fn parse_rendered(text: &str) -> Vec<(String, Rows)> {
    let mut out = Vec::new();
    let body = text.split_once("\n\n").map_or("", |(_, b)| b);
    for block in body.split("\n\n") {
        let mut lines = block.lines().filter(|l| !l.is_empty());
        let Some(head) = lines.next() else { continue };
        let (lhs, rhs) = head.split_once('|').expect("header has a bar");
        let sym = if lhs.trim().is_empty() {
            rhs.trim().to_string()
        } else {
            lhs.trim().to_string()
        };
        let rows = lines
            .skip(1)
            .map(|l| {
                let (label, cells) = l.split_once('|').expect("row has a bar");
                (
                    label.trim().to_string(),
                    cells.split_whitespace().map(str::to_string).collect(),
                )
            })
            .collect();
        out.push((sym, rows));
    }
    out
}

/// Rendered text that disagrees with the published tokens.
pub fn rendered_mismatches(text: &str, table: &Published) -> Vec<String> {
    let blocks = parse_rendered(text);
    let mut out = Vec::new();
    if blocks.len() != 5 {
        return vec![format!("{} tables rendered", blocks.len())];
    }
    for (op, (sym, rows)) in blocks.iter().enumerate() {
        if sym != OPS[op] {
            out.push(format!("table {op} is {sym}"));
        }
        let want = table.rows(op);
        if rows.len() != want.len() {
            out.push(format!("{sym}: {} rows", rows.len()));
            continue;
        }
        for (x, ((label, cells), want_row)) in rows.iter().zip(&want).enumerate() {
            if label != table.carrier[x] {
                out.push(format!("{sym}: row {x} labelled {label}"));
            }
            if cells.iter().map(String::as_str).collect::<Vec<_>>() != *want_row {
                out.push(format!("{sym} row {label}: {cells:?}, want {want_row:?}"));
            }
        }
    }
    out
}

pub fn f(s: &str) -> Formula {
    Formula::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn fs(items: &[&str]) -> Vec<Formula> {
    items.iter().map(|s| f(s)).collect()
}

/// Every cell of `m` is nonempty and within the carrier.
pub fn cells_well_formed(m: &dyn MultiAlgebra) -> bool {
    let k = m.size();
    (0..m.signature().len()).all(|op| {
        let n = m.signature().arity(op);
        (0..tuple_count(k, n)).all(|r| {
            let args = swapkit_args(r, k, n);
            let c = m.cell(op, &args);
            !c.is_empty() && c.iter().all(|&u| u < k)
        })
    })
}

pub fn swapkit_args(r: usize, k: usize, n: usize) -> Vec<usize> {
    let mut args = vec![0; n];
    swapkit::exec::unrank(r, k, &mut args);
    args
}

/// Run the command line with `args`; returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("swapkit").chain(args.iter().copied());
    let code = swapkit::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8"),
        String::from_utf8(err).expect("utf-8"),
    )
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture_path(name: &str) -> String {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}
