mod common;

use common::*;
use swapkit::hilbert::{
    axioms_of, check_proof, derives_ciw_bottom, Proof, ProofError, ProofParseError,
};
use swapkit::nmatrix::holds_in_logic;
use swapkit::swap::LogicId;
use swapkit::verify::semantic_check_logic;

fn load(name: &str) -> Proof {
    Proof::parse(&fixture(name)).unwrap()
}

/// The fixture checks in `logic` and its conclusion is semantically valid.
fn sound(logic: LogicId, name: &str, conclusion: &str) {
    let p = load(name);
    let c = check_proof(logic, &p).unwrap_or_else(|e| panic!("{name} in {logic}: {e}"));
    assert_eq!(c, f(conclusion));
    assert!(holds_in_logic(semantic_check_logic(logic), &p.premises, &c).unwrap());
}

#[test]
fn fixtures_check() {
    sound(LogicId::CplePlus, "one_mp.proof", "q -> p");
    sound(LogicId::MbC, "explosion.proof", "q");
    sound(LogicId::MbC, "bottom.proof", "q");
    sound(LogicId::Lfi1o, "neg_or_halves.proof", "~p & ~q -> ~(p | q)");
    sound(
        LogicId::Ciore,
        "co1_halves.proof",
        "(@p | @q -> @(p & q)) & (@(p & q) -> @p | @q)",
    );
}

#[test]
fn bottom_fixture_is_the_library_proof() {
    assert_eq!(
        load("bottom.proof"),
        derives_ciw_bottom(LogicId::MbC).unwrap()
    );
}

#[test]
fn bottom_in_every_logic_with_bc1() {
    for l in LogicId::ALL {
        match derives_ciw_bottom(l) {
            None => assert_eq!(l, LogicId::CplePlus),
            Some(p) => {
                assert_eq!(p.steps.len(), 13);
                assert_eq!(check_proof(l, &p).unwrap(), f("q"));
                assert!(holds_in_logic(l, &p.premises, &f("q")).unwrap());
            }
        }
    }
}

#[test]
fn fixtures_fail_where_axioms_are_missing() {
    let err = check_proof(LogicId::CplePlus, &load("explosion.proof")).unwrap_err();
    assert!(matches!(err, ProofError::UnknownAxiom { .. }), "{err}");
    assert_eq!(err.step(), 4);
    assert!(check_proof(LogicId::Ciore, &load("neg_or_halves.proof")).is_err());
    assert!(check_proof(LogicId::Lfi1o, &load("co1_halves.proof")).is_err());
}

#[test]
fn non_instance_is_rejected() {
    let err = check_proof(LogicId::MbC, &load("bad_instance.proof")).unwrap_err();
    assert!(matches!(err, ProofError::NotInstance { .. }));
    assert_eq!(err.step(), 1);
}

#[test]
fn bad_references() {
    let p = Proof::parse("premise p\nmp 1 3\n").unwrap();
    let err = check_proof(LogicId::MbC, &p).unwrap_err();
    assert!(matches!(err, ProofError::BadReference { .. }));
    assert_eq!(err.step(), 2);
    let p = Proof::parse("premise p\nmp 1 2\n").unwrap();
    assert!(matches!(
        check_proof(LogicId::MbC, &p),
        Err(ProofError::BadReference { .. })
    ));
}

#[test]
fn mp_shape_mismatch() {
    let p = Proof::parse("premise p\npremise q\nmp 1 2\n").unwrap();
    assert!(matches!(
        check_proof(LogicId::MbC, &p),
        Err(ProofError::MpMismatch { .. })
    ));
}

#[test]
fn empty_proof() {
    assert!(matches!(
        check_proof(LogicId::MbC, &Proof::default()),
        Err(ProofError::Empty)
    ));
}

#[test]
fn parse_errors_carry_lines() {
    match Proof::parse("premise p\nlemma q\n") {
        Err(ProofParseError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    match Proof::parse("# c\naxiom Ax1 p -> (q\n") {
        Err(ProofParseError::Formula { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn display_round_trips_fixtures() {
    for name in [
        "one_mp.proof",
        "explosion.proof",
        "bottom.proof",
        "neg_or_halves.proof",
        "co1_halves.proof",
    ] {
        let p = load(name);
        assert_eq!(Proof::parse(&p.to_string()).unwrap(), p, "{name}");
    }
}

#[test]
fn axiom_set_sizes() {
    let sizes: Vec<(LogicId, usize)> = LogicId::ALL
        .iter()
        .map(|&l| (l, axioms_of(l).len()))
        .collect();
    assert_eq!(
        sizes,
        [
            (LogicId::CplePlus, 9),
            (LogicId::MbC, 11),
            (LogicId::MbCciw, 12),
            (LogicId::MbCci, 12),
            (LogicId::Ci, 13),
            (LogicId::Lfi1o, 17),
            (LogicId::Ciore, 17),
            (LogicId::Cple, 12),
        ]
    );
}

#[test]
fn axiom_inclusions() {
    let ax = axioms_of;
    assert!(ax(LogicId::CplePlus).is_subset_of(&ax(LogicId::MbC)));
    assert!(ax(LogicId::MbC).is_subset_of(&ax(LogicId::MbCciw)));
    assert!(ax(LogicId::MbCci).is_subset_of(&ax(LogicId::Ci)));
    assert!(ax(LogicId::Ci).is_subset_of(&ax(LogicId::Lfi1o)));
    assert!(ax(LogicId::Ci).is_subset_of(&ax(LogicId::Ciore)));
    assert!(ax(LogicId::MbC).is_subset_of(&ax(LogicId::Cple)));
    // mbCci adds ci to mbC directly, and CPLe adds cons to mbC
    assert!(!ax(LogicId::MbCciw).is_subset_of(&ax(LogicId::MbCci)));
    assert!(!ax(LogicId::Ci).is_subset_of(&ax(LogicId::Cple)));
}
