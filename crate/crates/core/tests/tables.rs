mod common;

use common::*;
use swapkit::boolean_algebra::{powerset_algebra, BoolAlg};
use swapkit::multialgebra::MultiAlgebra;
use swapkit::render::tables_json;
use swapkit::swap::{full_swap, LogicId};

#[test]
fn mbc_five_valued_cells() {
    let b = full_swap(LogicId::MbC, BoolAlg::two()).unwrap();
    assert_eq!(table_mismatches(&b, &MBC), Vec::<String>::new());
}

#[test]
fn mbc_rendered_blocks() {
    let (code, text, _) = cli(&["tables", "mbC"]);
    assert_eq!(code, 0);
    assert!(
        text.contains("carrier: {T,t,t₀,F,f₀}\nD = {T,t,t₀}\nND = {F,f₀}\n"),
        "{text}"
    );
    assert_eq!(rendered_mismatches(&text, &MBC), Vec::<String>::new());
}

#[test]
fn three_valued_cells() {
    for table in THREE_VALUED {
        let b = full_swap(table.logic, BoolAlg::two()).unwrap();
        assert_eq!(
            table_mismatches(&b, table),
            Vec::<String>::new(),
            "{}",
            table.logic
        );
    }
}

#[test]
fn three_valued_rendered() {
    for table in THREE_VALUED {
        let (code, text, _) = cli(&["tables", table.logic.name()]);
        assert_eq!(code, 0);
        assert_eq!(
            rendered_mismatches(&text, table),
            Vec::<String>::new(),
            "{}\n{text}",
            table.logic
        );
    }
}

#[test]
fn named_cells() {
    let two = BoolAlg::two();
    let cell = |l: LogicId, op: usize, args: &[&str]| {
        let b = full_swap(l, two).unwrap();
        let at = |s: &str| b.labels().iter().position(|x| x == s).unwrap();
        let idx: Vec<usize> = args.iter().map(|s| at(s)).collect();
        b.cell(op, &idx)
            .iter()
            .map(|&u| b.label(u))
            .collect::<Vec<_>>()
    };
    assert_eq!(cell(LogicId::MbCciw, 0, &["T", "T"]), ["T", "t"]);
    assert_eq!(cell(LogicId::MbCciw, 4, &["t"]), ["F"]);
    assert_eq!(cell(LogicId::MbCci, 4, &["T"]), ["T"]);
    assert_eq!(cell(LogicId::Ci, 3, &["F"]), ["T"]);
    assert_eq!(cell(LogicId::Ci, 3, &["t"]), ["T", "t"]);
    assert_eq!(cell(LogicId::Lfi1o, 3, &["t"]), ["t"]);
    assert_eq!(cell(LogicId::Lfi1o, 2, &["t", "F"]), ["F"]);
    assert_eq!(cell(LogicId::Lfi1o, 4, &["t"]), ["F"]);
    assert_eq!(cell(LogicId::Ciore, 0, &["T", "t"]), ["T"]);
}

#[test]
fn cple_is_two_valued_boolean() {
    let b = full_swap(LogicId::Cple, BoolAlg::two()).unwrap();
    assert_eq!(b.labels(), ["T", "F"]);
    assert_eq!(b.cell(4, &[0]).as_ref(), [0]);
    assert_eq!(b.cell(4, &[1]).as_ref(), [0]);
}

#[test]
fn carrier_sizes() {
    // 5^n for mbC, 3^n for the pair logics, 2^n for CPLe
    for n in 1..=3 {
        let a = powerset_algebra(n).unwrap();
        let size = |l| full_swap(l, a).unwrap().size();
        assert_eq!(size(LogicId::MbC), 5usize.pow(n));
        assert_eq!(size(LogicId::Ci), 3usize.pow(n));
        assert_eq!(size(LogicId::Cple), 2usize.pow(n));
    }
}

#[test]
fn json_tables() {
    let b = full_swap(LogicId::MbCciw, BoolAlg::two()).unwrap();
    let v = tables_json(&b);
    assert_eq!(v["logic"], "mbCciw");
    assert_eq!(v["designated"], serde_json::json!(["T", "t"]));
    assert_eq!(v["ops"]["neg"][1], serde_json::json!(["T", "t"]));
    assert_eq!(v["ops"]["and"][2][0], serde_json::json!(["F"]));
}
