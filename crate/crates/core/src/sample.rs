//! Seeded generators for the sampled suites: formulas, Boolean homs,
//! closed subsets, submultialgebras, bivaluations, valuations and proofs.

use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::boolean_algebra::{BaHom, BoolAlg};
use crate::exec::unrank;
use crate::formula::{match_schema, BinOp, Formula, Schema, UnOp};
use crate::hilbert::{axioms_of, Proof, Step};
use crate::multialgebra::{tuple_count, MultiAlgebra};
use crate::nmatrix::{bivaluation_domain, clause_violation, Bivaluation, NmError, Valuation};
use crate::swap::{is_swap_for, LogicId, SwapStructure};

/// A formula over `vars` of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.3) {
        return Formula::var(vars.choose(rng).expect("at least one variable"));
    }
    let sub = |rng: &mut R| random_formula(rng, vars, depth - 1);
    match rng.random_range(0..5) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::imp(sub(rng), sub(rng)),
        3 => Formula::neg(sub(rng)),
        _ => Formula::con(sub(rng)),
    }
}

/// A uniformly chosen hom `src → tgt`, if there is one.
pub fn random_ba_hom<R: Rng>(rng: &mut R, src: BoolAlg, tgt: BoolAlg) -> Option<BaHom> {
    if src.is_degenerate() && !tgt.is_degenerate() {
        return None;
    }
    let phi: Vec<u32> = (0..tgt.atoms())
        .map(|_| rng.random_range(0..src.atoms()))
        .collect();
    Some(BaHom::from_atom_map(src, tgt, &phi))
}

/// Every cell of a multialgebra as a bitset over its carrier.
pub struct CellIndex {
    size: usize,
    words: usize,
    /// Per operation: arity and the cells in rank order.
    ops: Vec<(usize, Vec<u64>)>,
}

impl CellIndex {
    pub fn new(m: &dyn MultiAlgebra) -> CellIndex {
        let size = m.size();
        let words = size.div_ceil(64).max(1);
        let sig = m.signature();
        let ops = (0..sig.len())
            .map(|op| {
                let n = sig.arity(op);
                let mut bits = vec![0u64; tuple_count(size, n) * words];
                let mut args = vec![0; n];
                for r in 0..tuple_count(size, n) {
                    unrank(r, size, &mut args);
                    for &u in m.cell(op, &args).iter() {
                        bits[r * words + u / 64] |= 1 << (u % 64);
                    }
                }
                (n, bits)
            })
            .collect();
        CellIndex { size, words, ops }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn cell(&self, op: usize, r: usize) -> &[u64] {
        &self.ops[op].1[r * self.words..(r + 1) * self.words]
    }

    /// The first cell over `subset` that misses it, as (op, rank).
    fn first_gap(&self, subset: &[u64]) -> Option<(usize, usize)> {
        let members = members_of(subset, self.size);
        for (op, (n, _)) in self.ops.iter().enumerate() {
            let mut args = vec![0; *n];
            for t in 0..tuple_count(members.len(), *n) {
                unrank(t, members.len(), &mut args);
                let r = args.iter().fold(0, |acc, &a| acc * self.size + members[a]);
                if self.cell(op, r).iter().zip(subset).all(|(c, s)| c & s == 0) {
                    return Some((op, r));
                }
            }
        }
        None
    }

    /// Every cell over the subset meets it.
    pub fn is_closed(&self, subset: &[u64]) -> bool {
        subset.iter().any(|&w| w != 0) && self.first_gap(subset).is_none()
    }

    /// All nonempty closed subsets, for carriers of at most `max_size`.
    pub fn closed_subsets(&self, max_size: usize) -> Option<Vec<Vec<usize>>> {
        if self.size > max_size || self.size > 24 {
            return None;
        }
        let found = (1u64..1 << self.size)
            .filter(|&m| self.is_closed(&[m]))
            .map(|m| members_of(&[m], self.size));
        Some(found.collect())
    }

    /// A closed subset grown from a random seed set by adding a random
    /// element of each cell that misses it.
    pub fn random_closed_subset<R: Rng>(&self, rng: &mut R) -> Vec<usize> {
        let mut subset = vec![0u64; self.words];
        let density = rng.random_range(0.05..0.9);
        for x in 0..self.size {
            if rng.random_bool(density) {
                subset[x / 64] |= 1 << (x % 64);
            }
        }
        if subset.iter().all(|&w| w == 0) {
            let x = rng.random_range(0..self.size);
            subset[x / 64] |= 1 << (x % 64);
        }
        while let Some((op, r)) = self.first_gap(&subset) {
            let choices = members_of(self.cell(op, r), self.size);
            let &x = choices.choose(rng).expect("cells are nonempty");
            subset[x / 64] |= 1 << (x % 64);
        }
        members_of(&subset, self.size)
    }
}

fn members_of(bits: &[u64], size: usize) -> Vec<usize> {
    (0..size)
        .filter(|&x| bits[x / 64] >> (x % 64) & 1 == 1)
        .collect()
}

/// A random nonempty subset of `cell`.
fn random_subcell<R: Rng>(rng: &mut R, cell: &[usize], keep_all: f64) -> Vec<usize> {
    if cell.len() == 1 || rng.random_bool(keep_all) {
        return cell.to_vec();
    }
    let mut sub: Vec<usize> = cell
        .iter()
        .copied()
        .filter(|_| rng.random_bool(0.5))
        .collect();
    if sub.is_empty() {
        sub.push(*cell.choose(rng).expect("cells are nonempty"));
    }
    sub
}

/// Restriction of `b` to a random closed subset, with cells then thinned
/// at random.
pub fn random_submultialgebra<R: Rng>(
    b: &SwapStructure,
    index: &CellIndex,
    rng: &mut R,
) -> SwapStructure {
    let subset = index.random_closed_subset(rng);
    let restricted = b.restrict(&subset).expect("closed subsets restrict");
    let keep_all = rng.random_range(0.3..1.0);
    restricted
        .shrink(|_, _, cell| random_subcell(rng, cell, keep_all))
        .expect("subcells are valid")
}

/// A random submultialgebra of `full_swap(logic, _)` that is again a swap
/// structure for `logic` and differs from `b`, or `None` when `b` has no
/// proper such part within `tries` attempts.
pub fn random_proper_swap<R: Rng>(
    logic: LogicId,
    b: &SwapStructure,
    index: &CellIndex,
    rng: &mut R,
    tries: usize,
) -> Option<SwapStructure> {
    let full_cells: usize = (0..5).map(|op| total_cell_size(b, op)).sum();
    for _ in 0..tries {
        let s = random_submultialgebra(b, index, rng);
        let proper = s.size() < b.size()
            || (0..5).map(|op| total_cell_size(&s, op)).sum::<usize>() < full_cells;
        if proper && is_swap_for(logic, &s) {
            return Some(s);
        }
    }
    None
}

fn total_cell_size(m: &dyn MultiAlgebra, op: usize) -> usize {
    let n = m.signature().arity(op);
    let mut args = vec![0; n];
    (0..tuple_count(m.size(), n))
        .map(|r| {
            unrank(r, m.size(), &mut args);
            m.cell(op, &args).len()
        })
        .sum()
}

/// A legal valuation on `domain`, which must be closed under subformulas
/// and listed children first.
pub fn random_valuation<R: Rng>(
    m: &dyn MultiAlgebra,
    domain: &[Formula],
    rng: &mut R,
) -> Valuation {
    let mut value: HashMap<&Formula, usize> = HashMap::with_capacity(domain.len());
    let values: Vec<usize> = domain
        .iter()
        .map(|f| {
            let x = match f.op_index() {
                None => rng.random_range(0..m.size()),
                Some(op) => {
                    let args: Vec<usize> = f.children().iter().map(|c| value[c]).collect();
                    *m.cell(op, &args).choose(rng).expect("cells are nonempty")
                }
            };
            value.insert(f, x);
            x
        })
        .collect();
    Valuation::new(domain.to_vec(), values)
}

/// A bivaluation for `logic` on the domain built from `base`, found by
/// randomised backtracking over the clauses.
pub fn random_bivaluation<R: Rng>(
    logic: LogicId,
    base: &[Formula],
    rng: &mut R,
) -> Result<Bivaluation, NmError> {
    let (core, domain) = bivaluation_domain(base);
    let mut values: HashMap<Formula, bool> = HashMap::with_capacity(domain.len());
    let first: Vec<bool> = domain.iter().map(|_| rng.random_bool(0.5)).collect();
    if !extend(logic, &domain, &first, 0, &mut values) {
        return Err(NmError::Invalid("no bivaluation on this domain".into()));
    }
    Bivaluation::new(logic, core, values)
}

fn extend(
    logic: LogicId,
    domain: &[Formula],
    first: &[bool],
    i: usize,
    values: &mut HashMap<Formula, bool>,
) -> bool {
    let Some(f) = domain.get(i) else {
        return true;
    };
    for v in [first[i], !first[i]] {
        values.insert(f.clone(), v);
        if clause_violation(logic, values).is_none() && extend(logic, domain, first, i + 1, values)
        {
            return true;
        }
    }
    values.remove(f);
    false
}

const FUZZ_VARS: [&str; 3] = ["p", "q", "r"];

fn fill_metavariables<R: Rng>(
    schema: &Schema,
    sub: &mut crate::formula::Substitution,
    pool: &[Formula],
    rng: &mut R,
) {
    for v in schema.metavariables() {
        sub.entry(v.to_string()).or_insert_with(|| {
            if !pool.is_empty() && rng.random_bool(0.4) {
                pool.choose(rng).expect("nonempty").clone()
            } else {
                random_formula(rng, &FUZZ_VARS, 2)
            }
        });
    }
}

/// A correct proof in `logic` of at most `max_steps` steps whose formulas
/// have at most `max_size` nodes. Axiom instances are mostly chosen so
/// that modus ponens applies to an earlier step.
pub fn random_proof<R: Rng>(
    logic: LogicId,
    rng: &mut R,
    max_steps: usize,
    max_size: usize,
) -> Proof {
    let axioms = axioms_of(logic);
    let premises: Vec<Formula> = (0..rng.random_range(0..3))
        .map(|_| random_formula(rng, &FUZZ_VARS, 2))
        .collect();
    let mut proof = Proof {
        premises: premises.clone(),
        steps: Vec::new(),
    };
    let mut formulas: Vec<Formula> = Vec::new();
    let mut guard = 0;
    while proof.steps.len() < max_steps && guard < 50 * max_steps {
        guard += 1;
        let roll: f64 = rng.random();
        if roll < 0.15 && !premises.is_empty() {
            let p = rng.random_range(0..premises.len());
            proof.steps.push(Step::Premise(p));
            formulas.push(premises[p].clone());
            continue;
        }
        let (name, schema) = axioms.schemas.choose(rng).expect("axiom sets are nonempty");
        let mut sub = Default::default();
        let mut target = None;
        if roll < 0.75 && !formulas.is_empty() && proof.steps.len() + 2 <= max_steps {
            if let Formula::Binary(BinOp::Imp, x, _) = schema.formula() {
                let i = rng.random_range(0..formulas.len());
                if let Some(s) = match_schema(&Schema((**x).clone()), &formulas[i]) {
                    sub = s;
                    target = Some(i);
                }
            }
        }
        fill_metavariables(schema, &mut sub, &formulas, rng);
        let instance = schema.instantiate(&sub);
        if instance.size() > max_size {
            continue;
        }
        proof.steps.push(Step::Axiom {
            name: name.clone(),
            formula: instance.clone(),
        });
        formulas.push(instance.clone());
        if let Some(i) = target {
            let ax = formulas.len() - 1;
            let Formula::Binary(BinOp::Imp, _, y) = &instance else {
                unreachable!("matched an implication")
            };
            proof.steps.push(if rng.random_bool(0.5) {
                Step::Mp(i, ax)
            } else {
                Step::Mp(ax, i)
            });
            formulas.push((**y).clone());
        }
    }
    if proof.steps.is_empty() {
        let f = random_formula(rng, &FUZZ_VARS, 1);
        proof.steps.push(Step::Axiom {
            name: "Ax1".into(),
            formula: Formula::imp(f.clone(), Formula::imp(f.clone(), f)),
        });
    }
    proof
}

/// Perturb one step so that the proof usually no longer checks.
pub fn mutate_proof<R: Rng>(proof: &Proof, rng: &mut R) -> Proof {
    let mut out = proof.clone();
    let i = rng.random_range(0..out.steps.len());
    out.steps[i] = match &out.steps[i] {
        Step::Axiom { name, formula } => {
            if rng.random_bool(0.5) {
                Step::Axiom {
                    name: name.clone(),
                    formula: perturb(formula, rng),
                }
            } else {
                let names = ["Ax1", "Ax4", "Ax9", "bc1", "ci", "cf", "cons"];
                Step::Axiom {
                    name: names.choose(rng).expect("nonempty").to_string(),
                    formula: formula.clone(),
                }
            }
        }
        Step::Mp(a, b) => Step::Mp(*b, rng.random_range(0..=*a.max(b))),
        Step::Premise(_) => Step::Axiom {
            name: "Ax10".into(),
            formula: random_formula(rng, &FUZZ_VARS, 2),
        },
    };
    out
}

fn perturb<R: Rng>(f: &Formula, rng: &mut R) -> Formula {
    match f {
        Formula::Var(_) => Formula::neg(f.clone()),
        Formula::Unary(op, a) if rng.random_bool(0.5) => {
            Formula::Unary(*op, perturb(a, rng).into())
        }
        Formula::Binary(op, a, b) if rng.random_bool(0.7) => {
            if rng.random_bool(0.5) {
                Formula::Binary(*op, perturb(a, rng).into(), b.clone())
            } else {
                Formula::Binary(*op, a.clone(), perturb(b, rng).into())
            }
        }
        Formula::Unary(UnOp::Neg, a) => (**a).clone(),
        _ => Formula::con(f.clone()),
    }
}
