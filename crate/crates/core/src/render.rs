//! Plain-text and JSON renderings of multioperation tables.

use serde_json::{json, Map, Value};

use crate::exec::unrank;
use crate::multialgebra::{labels_of, tuple_count, MultiAlgebra};
use crate::swap::{Mode, SwapStructure};

fn symbol(name: &str) -> &str {
    match name {
        "and" => "∧",
        "or" => "∨",
        "imp" => "→",
        "neg" => "¬",
        "con" => "∘",
        other => other,
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

/// One table per operation, each cell rendered by `cell(op, args)`.
/// Binary operations are grids with the first argument on the rows.
fn grid(m: &dyn MultiAlgebra, mut cell: impl FnMut(usize, &[usize]) -> String) -> String {
    let labels = labels_of(m);
    let k = m.size();
    let sig = m.signature().clone();
    let mut blocks = Vec::new();
    for (op, sym) in sig.ops().iter().enumerate() {
        let name = symbol(&sym.name);
        let mut rows: Vec<Vec<String>> = Vec::new();
        match sym.arity {
            2 => {
                let mut head = vec![name.to_string()];
                head.extend(labels.iter().cloned());
                rows.push(head);
                for (x, label) in labels.iter().enumerate() {
                    let mut row = vec![label.clone()];
                    row.extend((0..k).map(|y| cell(op, &[x, y])));
                    rows.push(row);
                }
            }
            n => {
                rows.push(vec![String::new(), name.to_string()]);
                let mut args = vec![0; n];
                for r in 0..tuple_count(k, n) {
                    unrank(r, k, &mut args);
                    let head = args
                        .iter()
                        .map(|&a| labels[a].clone())
                        .collect::<Vec<_>>()
                        .join(",");
                    rows.push(vec![head, cell(op, &args)]);
                }
            }
        }
        blocks.push(format_rows(&rows));
    }
    blocks.join("\n")
}

fn format_rows(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| width(s))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let mut line = format!("{:<w$} |", row[0], w = widths[0]);
        for (c, s) in row.iter().enumerate().skip(1) {
            line.push(' ');
            line.push_str(s);
            line.push_str(&" ".repeat(widths[c] - width(s)));
            if c + 1 < row.len() {
                line.push(' ');
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if i == 0 {
            let total = widths.iter().sum::<usize>() + 2 * cols;
            out.push_str(&"-".repeat(widths[0] + 1));
            out.push('+');
            out.push_str(&"-".repeat(total - widths[0] - 2));
            out.push('\n');
        }
    }
    out
}

/// Cell text for any multialgebra: `{a,b}` in carrier order.
pub fn render_multialgebra(m: &dyn MultiAlgebra) -> String {
    grid(m, |op, args| {
        let cell = m.cell(op, args);
        format!(
            "{{{}}}",
            cell.iter()
                .map(|&u| m.label(u))
                .collect::<Vec<_>>()
                .join(",")
        )
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    /// Every cell is exactly D or ND.
    Blocks,
    /// Every cell is a singleton.
    Bare,
    /// Cells as sets, `{t,T}`.
    Sets,
}

fn style_of(b: &SwapStructure, op: usize) -> Style {
    let k = b.size();
    let n = b.signature().arity(op);
    let d: Vec<usize> = (0..k).filter(|&x| b.is_designated(x)).collect();
    let nd: Vec<usize> = (0..k).filter(|&x| !b.is_designated(x)).collect();
    let mut args = vec![0; n];
    let (mut blocks, mut bare) = (b.mode() == Mode::Triple, true);
    for r in 0..tuple_count(k, n) {
        unrank(r, k, &mut args);
        let cell = b.cell(op, &args);
        blocks &= *cell == *d || *cell == *nd;
        bare &= cell.len() == 1;
    }
    if blocks {
        Style::Blocks
    } else if bare {
        Style::Bare
    } else {
        Style::Sets
    }
}

/// Set members in display order. Pair structures list carrier elements
/// from last to first, so `{t,T}` over 𝔸₂.
fn display_order(b: &SwapStructure, cell: &[usize]) -> Vec<usize> {
    let mut out = cell.to_vec();
    if b.mode() == Mode::Pair {
        out.reverse();
    }
    out
}

fn cell_text(b: &SwapStructure, style: Style, op: usize, args: &[usize]) -> String {
    let cell = b.cell(op, args);
    match style {
        Style::Blocks if b.is_designated(cell[0]) => "D".into(),
        Style::Blocks => "ND".into(),
        Style::Bare => b.label(cell[0]),
        Style::Sets => {
            format!(
                "{{{}}}",
                display_order(b, &cell)
                    .iter()
                    .map(|&u| b.label(u))
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

/// The five tables of a swap structure, headed by its carrier and
/// designated set.
pub fn render_tables(b: &SwapStructure) -> String {
    let labels = b.labels();
    let d: Vec<&str> = (0..b.size())
        .filter(|&x| b.is_designated(x))
        .map(|x| labels[x].as_str())
        .collect();
    let nd: Vec<&str> = (0..b.size())
        .filter(|&x| !b.is_designated(x))
        .map(|x| labels[x].as_str())
        .collect();
    // bare elements only when the whole structure is deterministic
    let mut styles: Vec<Style> = (0..5).map(|op| style_of(b, op)).collect();
    if styles.contains(&Style::Sets) {
        styles
            .iter_mut()
            .filter(|s| **s == Style::Bare)
            .for_each(|s| *s = Style::Sets);
    }
    let mut out = format!("{} over {} atom(s)\n", b.logic(), b.alg().atoms());
    out.push_str(&format!("carrier: {{{}}}\n", labels.join(",")));
    out.push_str(&format!("D = {{{}}}\n", d.join(",")));
    if styles.contains(&Style::Blocks) {
        out.push_str(&format!("ND = {{{}}}\n", nd.join(",")));
    }
    out.push('\n');
    out.push_str(&grid(b, |op, args| cell_text(b, styles[op], op, args)));
    out
}

/// `{"logic", "atoms", "carrier", "designated", "ops": {name: cells}}`,
/// binary cells as rows of label lists and unary cells as a list.
pub fn tables_json(b: &SwapStructure) -> Value {
    let k = b.size();
    let cell = |op: usize, args: &[usize]| -> Value {
        json!(b
            .cell(op, args)
            .iter()
            .map(|&u| b.label(u))
            .collect::<Vec<_>>())
    };
    let mut ops = Map::new();
    for (op, sym) in b.signature().ops().iter().enumerate() {
        let v = if sym.arity == 2 {
            json!((0..k)
                .map(|x| (0..k).map(|y| cell(op, &[x, y])).collect::<Vec<_>>())
                .collect::<Vec<_>>())
        } else {
            json!((0..k).map(|x| cell(op, &[x])).collect::<Vec<_>>())
        };
        ops.insert(sym.name.clone(), v);
    }
    json!({
        "logic": b.logic().name(),
        "atoms": b.alg().atoms(),
        "carrier": b.labels(),
        "designated": (0..k).filter(|&x| b.is_designated(x)).map(|x| b.label(x)).collect::<Vec<_>>(),
        "ops": ops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean_algebra::BoolAlg;
    use crate::swap::{full_swap, LogicId};

    #[test]
    fn ciw_negation_row() {
        let b = full_swap(LogicId::MbCciw, BoolAlg::two()).unwrap();
        let text = render_tables(&b);
        assert!(text.contains("t | {t,T}"), "{text}");
        assert!(!text.contains("ND ="));
    }

    #[test]
    fn twist_cells_are_bare() {
        let b = full_swap(LogicId::Lfi1o, BoolAlg::two()).unwrap();
        let text = render_tables(&b);
        let body = text.split_once("\n\n").unwrap().1;
        assert!(!body.contains('{'), "{text}");
        assert!(text.contains("t | t"));
    }
}
