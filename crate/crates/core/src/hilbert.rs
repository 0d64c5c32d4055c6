//! Axiom schemas for each logic and a checker for Hilbert-style proofs
//! with modus ponens.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::{match_schema, Formula, ParseError, Schema};
use crate::swap::LogicId;

const SCHEMAS: [(&str, &str); 22] = [
    ("Ax1", "A -> B -> A"),
    ("Ax2", "(A -> B -> C) -> (A -> B) -> A -> C"),
    ("Ax3", "A -> B -> A & B"),
    ("Ax4", "A & B -> A"),
    ("Ax5", "A & B -> B"),
    ("Ax6", "A -> A | B"),
    ("Ax7", "B -> A | B"),
    ("Ax8", "(A -> C) -> (B -> C) -> A | B -> C"),
    ("Ax9", "(A -> B) | A"),
    ("Ax10", "A | ~A"),
    ("bc1", "@A -> A -> ~A -> B"),
    ("ciw", "@A | A & ~A"),
    ("ci", "~@A -> A & ~A"),
    ("cf", "~~A -> A"),
    ("ce", "A -> ~~A"),
    ("cons", "@A"),
    ("neg_or", "~(A | B) <-> ~A & ~B"),
    ("neg_and", "~(A & B) <-> ~A | ~B"),
    ("neg_imp", "~(A -> B) <-> A & ~B"),
    ("co1", "@A | @B <-> @(A & B)"),
    ("co2", "@A | @B <-> @(A | B)"),
    ("co3", "@A | @B <-> @(A -> B)"),
];

fn schema(name: &str) -> &'static Schema {
    static TABLE: OnceLock<HashMap<&'static str, Schema>> = OnceLock::new();
    &TABLE.get_or_init(|| {
        SCHEMAS
            .iter()
            .map(|&(n, text)| (n, Schema::parse(text).expect("built-in schema parses")))
            .collect()
    })[name]
}

fn names_of(logic: LogicId) -> Vec<&'static str> {
    let mut names: Vec<&str> = vec![
        "Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "Ax9",
    ];
    let mbc = ["Ax10", "bc1"];
    let extra: &[&str] = match logic {
        LogicId::CplePlus => &[],
        LogicId::MbC => &mbc,
        LogicId::MbCciw => &["Ax10", "bc1", "ciw"],
        LogicId::MbCci => &["Ax10", "bc1", "ci"],
        LogicId::Ci => &["Ax10", "bc1", "ci", "cf"],
        LogicId::Cple => &["Ax10", "bc1", "cons"],
        LogicId::Lfi1o => &[
            "Ax10", "bc1", "ci", "cf", "ce", "neg_or", "neg_and", "neg_imp",
        ],
        LogicId::Ciore => &["Ax10", "bc1", "ci", "cf", "ce", "co1", "co2", "co3"],
    };
    names.extend_from_slice(extra);
    names
}

/// The named schemas of a logic, biconditionals stored desugared.
#[derive(Clone, Debug)]
pub struct AxiomSet {
    pub logic: LogicId,
    pub schemas: Vec<(String, Schema)>,
}

impl AxiomSet {
    pub fn get(&self, name: &str) -> Option<&Schema> {
        self.schemas.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn names(&self) -> Vec<&str> {
        self.schemas.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }

    /// Every schema of `self` is also one of `other`.
    pub fn is_subset_of(&self, other: &AxiomSet) -> bool {
        self.schemas.iter().all(|(n, _)| other.get(n).is_some())
    }
}

pub fn axioms_of(logic: LogicId) -> AxiomSet {
    AxiomSet {
        logic,
        schemas: names_of(logic)
            .into_iter()
            .map(|n| (n.to_string(), schema(n).clone()))
            .collect(),
    }
}

/// One proof line. Indices are 0-based here and 1-based in proof files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// The given premise.
    Premise(usize),
    Axiom {
        name: String,
        formula: Formula,
    },
    /// Modus ponens on two earlier steps, in either order.
    Mp(usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub premises: Vec<Formula>,
    pub steps: Vec<Step>,
}

/// Errors name steps 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("proof has no steps")]
    Empty,
    #[error("step {step}: premise {index} does not exist")]
    NoPremise { step: usize, index: usize },
    #[error("step {step}: step {target} is not an earlier step")]
    BadReference { step: usize, target: usize },
    #[error("step {step}: {name} is not an axiom of {logic}")]
    UnknownAxiom {
        step: usize,
        name: String,
        logic: LogicId,
    },
    #[error("step {step}: {formula} is not an instance of {name}")]
    NotInstance {
        step: usize,
        name: String,
        formula: String,
    },
    #[error("step {step}: neither {first} nor {second} is an implication from the other")]
    MpMismatch {
        step: usize,
        first: String,
        second: String,
    },
}

impl ProofError {
    /// 1-based offending step, 0 for an empty proof.
    pub fn step(&self) -> usize {
        match self {
            ProofError::Empty => 0,
            ProofError::NoPremise { step, .. }
            | ProofError::BadReference { step, .. }
            | ProofError::UnknownAxiom { step, .. }
            | ProofError::NotInstance { step, .. }
            | ProofError::MpMismatch { step, .. } => *step,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
}

fn mp_result(a: &Formula, b: &Formula) -> Option<Formula> {
    match b {
        Formula::Binary(crate::formula::BinOp::Imp, x, y) if **x == *a => Some((**y).clone()),
        _ => None,
    }
}

/// Formulas of every step, or the first faulty step.
pub fn step_formulas(logic: LogicId, proof: &Proof) -> Result<Vec<Formula>, ProofError> {
    let axioms = axioms_of(logic);
    let mut done: Vec<Formula> = Vec::with_capacity(proof.steps.len());
    for (i, s) in proof.steps.iter().enumerate() {
        let step = i + 1;
        let f = match s {
            Step::Premise(p) => proof
                .premises
                .get(*p)
                .cloned()
                .ok_or(ProofError::NoPremise { step, index: p + 1 })?,
            Step::Axiom { name, formula } => {
                let schema = axioms.get(name).ok_or_else(|| ProofError::UnknownAxiom {
                    step,
                    name: name.clone(),
                    logic,
                })?;
                if match_schema(schema, formula).is_none() {
                    return Err(ProofError::NotInstance {
                        step,
                        name: name.clone(),
                        formula: formula.to_string(),
                    });
                }
                formula.clone()
            }
            Step::Mp(a, b) => {
                for &t in [a, b] {
                    if t >= i {
                        return Err(ProofError::BadReference {
                            step,
                            target: t + 1,
                        });
                    }
                }
                let (fa, fb) = (&done[*a], &done[*b]);
                mp_result(fa, fb)
                    .or_else(|| mp_result(fb, fa))
                    .ok_or_else(|| ProofError::MpMismatch {
                        step,
                        first: fa.to_string(),
                        second: fb.to_string(),
                    })?
            }
        };
        done.push(f);
    }
    Ok(done)
}

/// The conclusion of a correct proof.
pub fn check_proof(logic: LogicId, proof: &Proof) -> Result<Formula, ProofError> {
    step_formulas(logic, proof)?.pop().ok_or(ProofError::Empty)
}

impl Proof {
    /// `premise <f>` | `axiom <name> <f>` | `mp <i> <j>`, steps numbered
    /// from 1, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Proof, ProofParseError> {
        let mut proof = Proof::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (word, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest = rest.trim();
            let formula = |s: &str| {
                Formula::parse(s).map_err(|source| ProofParseError::Formula { line, source })
            };
            let syntax = |reason: &str| ProofParseError::Syntax {
                line,
                reason: reason.to_string(),
            };
            let step = match word {
                "premise" => {
                    proof.premises.push(formula(rest)?);
                    Step::Premise(proof.premises.len() - 1)
                }
                "axiom" => {
                    let (name, f) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| syntax("axiom needs a name and a formula"))?;
                    Step::Axiom {
                        name: name.to_string(),
                        formula: formula(f.trim())?,
                    }
                }
                "mp" => {
                    let nums: Vec<usize> = rest
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().ok().filter(|&k| k >= 1))
                        .collect::<Option<_>>()
                        .ok_or_else(|| syntax("mp takes two step numbers from 1"))?;
                    if nums.len() != 2 {
                        return Err(syntax("mp takes two step numbers from 1"));
                    }
                    Step::Mp(nums[0] - 1, nums[1] - 1)
                }
                other => return Err(syntax(&format!("unknown step kind `{other}`"))),
            };
            proof.steps.push(step);
        }
        Ok(proof)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            match s {
                Step::Premise(p) => writeln!(f, "premise {}", self.premises[*p])?,
                Step::Axiom { name, formula } => writeln!(f, "axiom {name} {formula}")?,
                Step::Mp(a, b) => writeln!(f, "mp {} {}", a + 1, b + 1)?,
            }
        }
        Ok(())
    }
}

/// A proof of `q` from `p ∧ ¬p ∧ ∘p`, for logics with (bc1).
pub fn derives_ciw_bottom(logic: LogicId) -> Option<Proof> {
    axioms_of(logic).get("bc1")?;
    let f = |s: &str| Formula::parse(s).expect("fixed text");
    let ax = |name: &str, s: &str| Step::Axiom {
        name: name.into(),
        formula: f(s),
    };
    let steps = vec![
        Step::Premise(0),
        ax("Ax4", "p & ~p & @p -> p & ~p"),
        Step::Mp(0, 1),
        ax("Ax5", "p & ~p & @p -> @p"),
        Step::Mp(0, 3),
        ax("Ax4", "p & ~p -> p"),
        Step::Mp(2, 5),
        ax("Ax5", "p & ~p -> ~p"),
        Step::Mp(2, 7),
        ax("bc1", "@p -> p -> ~p -> q"),
        Step::Mp(4, 9),
        Step::Mp(6, 10),
        Step::Mp(8, 11),
    ];
    Some(Proof {
        premises: vec![f("p & ~p & @p")],
        steps,
    })
}
