//! Nmatrices, legal valuations, consequence over a finite Nmatrix, and
//! bivaluations with their induced valuations.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::boolean_algebra::BoolAlg;
use crate::formula::{subformula_closure, BinOp, Formula, UnOp};
use crate::multialgebra::MultiAlgebra;
use crate::swap::{full_swap, sigma, LogicId, Snapshot, SwapError, SwapStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NmError {
    #[error("designated set has {got} entries for a carrier of {expected}")]
    BadDesignated { expected: usize, got: usize },
    #[error("signature is not Σ")]
    SignatureMismatch,
    #[error("{0} is not characterised by a single finite Nmatrix; refusing to decide it")]
    Unsupported(LogicId),
    #[error("bivaluations are defined here for mbC, LFI1∘ and Ciore, not {0}")]
    NoBivaluations(LogicId),
    #[error("domain is not closed: {0}")]
    NotClosed(String),
    #[error("not a bivaluation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Swap(#[from] SwapError),
}

/// A multialgebra over Σ with a set of designated elements.
#[derive(Clone, Debug)]
pub struct Nmatrix<M> {
    alg: M,
    designated: Vec<bool>,
}

impl<M: MultiAlgebra> Nmatrix<M> {
    pub fn new(alg: M, designated: Vec<bool>) -> Result<Nmatrix<M>, NmError> {
        if alg.signature() != sigma() {
            return Err(NmError::SignatureMismatch);
        }
        if designated.len() != alg.size() {
            return Err(NmError::BadDesignated {
                expected: alg.size(),
                got: designated.len(),
            });
        }
        Ok(Nmatrix { alg, designated })
    }

    pub fn alg(&self) -> &M {
        &self.alg
    }

    pub fn designated(&self) -> &[bool] {
        &self.designated
    }

    pub fn is_designated(&self, x: usize) -> bool {
        self.designated[x]
    }
}

/// `M(B) = (B, {z : z1 = 1})`.
pub fn nmatrix_of(b: &SwapStructure) -> Nmatrix<&SwapStructure> {
    Nmatrix {
        designated: b.designated(),
        alg: b,
    }
}

/// An assignment of carrier elements to a list of formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    domain: Vec<Formula>,
    values: Vec<usize>,
}

impl Valuation {
    pub fn new(domain: Vec<Formula>, values: Vec<usize>) -> Valuation {
        assert_eq!(domain.len(), values.len(), "one value per formula");
        Valuation { domain, values }
    }

    pub fn domain(&self) -> &[Formula] {
        &self.domain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, f: &Formula) -> Option<usize> {
        self.domain
            .iter()
            .position(|g| g == f)
            .map(|i| self.values[i])
    }

    /// Domain closed under subformulas and every compound value inside the
    /// cell of its children's values.
    pub fn is_legal(&self, m: &dyn MultiAlgebra) -> bool {
        let at: HashMap<&Formula, usize> = self
            .domain
            .iter()
            .zip(&self.values)
            .map(|(f, &v)| (f, v))
            .collect();
        self.domain.iter().zip(&self.values).all(|(f, &v)| {
            if v >= m.size() {
                return false;
            }
            let Some(op) = f.op_index() else {
                return true;
            };
            let args: Option<Vec<usize>> =
                f.children().iter().map(|c| at.get(c).copied()).collect();
            args.is_some_and(|args| m.contains(op, &args, v))
        })
    }

    pub fn to_json(&self, m: &dyn MultiAlgebra) -> Value {
        let mut out = Map::new();
        for (f, &v) in self.domain.iter().zip(&self.values) {
            out.insert(f.to_string(), Value::String(m.label(v)));
        }
        Value::Object(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub countermodel: Option<Valuation>,
}

impl Verdict {
    pub fn to_json(&self, m: &dyn MultiAlgebra) -> Value {
        json!({
            "holds": self.holds,
            "countermodel": self.countermodel.as_ref().map_or(Value::Null, |v| v.to_json(m)),
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(k: usize) -> Bits {
        Bits(vec![0; k.div_ceil(64)])
    }

    fn full(k: usize) -> Bits {
        let mut b = Bits::empty(k);
        for x in 0..k {
            b.insert(x);
        }
        b
    }

    fn single(k: usize, x: usize) -> Bits {
        let mut b = Bits::empty(k);
        b.insert(x);
        b
    }

    fn insert(&mut self, x: usize) {
        self.0[x / 64] |= 1 << (x % 64);
    }

    fn contains(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |i| word >> i & 1 == 1)
                .map(move |i| w * 64 + i)
        })
    }

    fn retain(&mut self, k: usize, keep: impl Fn(usize) -> bool) {
        for x in 0..k {
            if self.contains(x) && !keep(x) {
                self.0[x / 64] &= !(1 << (x % 64));
            }
        }
    }
}

const NONE: usize = usize::MAX;

/// The search over legal valuations of a subformula closure. Variables,
/// roots and compounds occurring more than once get explicit values; every
/// other node is summarised by the set of values its subtree can reach.
struct Problem<'a, M> {
    m: &'a Nmatrix<M>,
    k: usize,
    nodes: Vec<Formula>,
    op: Vec<Option<usize>>,
    kids: Vec<Vec<usize>>,
    shared: Vec<bool>,
    order: Vec<usize>,
    must: Vec<Option<bool>>,
    trivial: bool,
}

impl<'a, M: MultiAlgebra> Problem<'a, M> {
    fn new(m: &'a Nmatrix<M>, premises: &[Formula], goal: &Formula) -> Problem<'a, M> {
        let nodes = subformula_closure(premises.iter().chain(std::iter::once(goal)));
        let pos: HashMap<&Formula, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let kids: Vec<Vec<usize>> = nodes
            .iter()
            .map(|f| f.children().iter().map(|c| pos[c]).collect())
            .collect();
        let mut uses = vec![0usize; nodes.len()];
        for ks in &kids {
            for &c in ks {
                uses[c] += 1;
            }
        }
        let mut must = vec![None; nodes.len()];
        for p in premises {
            must[pos[p]] = Some(true);
        }
        let g = pos[goal];
        must[g] = Some(false);
        let shared: Vec<bool> = (0..nodes.len())
            .map(|i| kids[i].is_empty() || uses[i] != 1 || must[i].is_some())
            .collect();
        let order = (0..nodes.len()).filter(|&i| shared[i]).collect();
        let op = nodes.iter().map(|f| f.op_index()).collect();
        // a goal that is also a premise can never be refuted
        let trivial = premises.contains(goal);
        Problem {
            m,
            k: m.alg.size(),
            nodes,
            op,
            kids,
            shared,
            order,
            must,
            trivial,
        }
    }

    fn child_set(&self, c: usize, assign: &[usize], fixed: &[Option<usize>]) -> Bits {
        if self.shared[c] {
            Bits::single(self.k, assign[c])
        } else {
            self.reach(c, assign, fixed)
        }
    }

    /// Values node `n` can take given the shared assignments below it.
    fn reach(&self, n: usize, assign: &[usize], fixed: &[Option<usize>]) -> Bits {
        let k = self.k;
        let mut out = match self.op[n] {
            None => Bits::full(k),
            Some(op) => {
                let sets: Vec<Bits> = self.kids[n]
                    .iter()
                    .map(|&c| self.child_set(c, assign, fixed))
                    .collect();
                let mut out = Bits::empty(k);
                let full = Bits::full(k);
                if sets.len() == 1 {
                    for x in sets[0].iter() {
                        for &u in self.m.alg.cell(op, &[x]).iter() {
                            out.insert(u);
                        }
                    }
                } else {
                    'outer: for x in sets[0].iter() {
                        for y in sets[1].iter() {
                            for &u in self.m.alg.cell(op, &[x, y]).iter() {
                                out.insert(u);
                            }
                            if out == full {
                                break 'outer;
                            }
                        }
                    }
                }
                out
            }
        };
        if let Some(f) = fixed[n] {
            out.retain(k, |x| x == f);
        }
        if let Some(d) = self.must[n] {
            out.retain(k, |x| self.m.designated[x] == d);
        }
        out
    }

    fn search(&self, at: usize, assign: &mut [usize], fixed: &[Option<usize>]) -> bool {
        let Some(&n) = self.order.get(at) else {
            return true;
        };
        let cands = self.reach(n, assign, fixed);
        for x in cands.iter() {
            assign[n] = x;
            if self.search(at + 1, assign, fixed) {
                return true;
            }
        }
        assign[n] = NONE;
        false
    }

    /// Fill in the unshared nodes below `n` consistently with `value[n]`.
    fn descend(&self, n: usize, value: &mut [usize], fixed: &[Option<usize>]) {
        let Some(op) = self.op[n] else {
            return;
        };
        let sets: Vec<Vec<usize>> = self.kids[n]
            .iter()
            .map(|&c| self.child_set(c, value, fixed).iter().collect())
            .collect();
        let target = value[n];
        let chosen: Vec<usize> = if sets.len() == 1 {
            vec![*sets[0]
                .iter()
                .find(|&&x| self.m.alg.contains(op, &[x], target))
                .expect("reachable")]
        } else {
            sets[0]
                .iter()
                .flat_map(|&x| sets[1].iter().map(move |&y| [x, y]))
                .find(|args| self.m.alg.contains(op, args, target))
                .expect("reachable")
                .to_vec()
        };
        for (&c, v) in self.kids[n].iter().zip(chosen) {
            if !self.shared[c] {
                value[c] = v;
                self.descend(c, value, fixed);
            }
        }
    }

    fn complete(&self, assign: &[usize], fixed: &[Option<usize>]) -> Vec<usize> {
        let mut value = assign.to_vec();
        for &s in &self.order {
            self.descend(s, &mut value, fixed);
        }
        value
    }

    fn countermodel(&self) -> Option<Valuation> {
        let n = self.nodes.len();
        let mut fixed = vec![None; n];
        let mut assign = vec![NONE; n];
        if self.trivial || !self.search(0, &mut assign, &fixed) {
            return None;
        }
        // lexicographically least in closure order
        for i in 0..n {
            for x in 0..self.k {
                fixed[i] = Some(x);
                let mut trial = vec![NONE; n];
                if self.search(0, &mut trial, &fixed) {
                    assign = trial;
                    break;
                }
            }
        }
        let value = self.complete(&assign, &fixed);
        Some(Valuation::new(self.nodes.clone(), value))
    }

    fn refutable(&self) -> bool {
        let n = self.nodes.len();
        !self.trivial && self.search(0, &mut vec![NONE; n], &vec![None; n])
    }
}

/// `Γ ⊨_M φ` without building a countermodel.
pub fn holds<M: MultiAlgebra>(m: &Nmatrix<M>, premises: &[Formula], goal: &Formula) -> bool {
    !Problem::new(m, premises, goal).refutable()
}

/// `Γ ⊨_M φ`, with the lexicographically least countermodel on the subformula
/// closure when it fails.
pub fn decide<M: MultiAlgebra>(m: &Nmatrix<M>, premises: &[Formula], goal: &Formula) -> Verdict {
    match Problem::new(m, premises, goal).countermodel() {
        None => Verdict {
            holds: true,
            countermodel: None,
        },
        Some(v) => Verdict {
            holds: false,
            countermodel: Some(v),
        },
    }
}

/// The full structure over 𝔸₂, whose Nmatrix characterises `logic`.
pub fn characteristic(logic: LogicId) -> Result<&'static SwapStructure, NmError> {
    static CACHE: OnceLock<Vec<SwapStructure>> = OnceLock::new();
    if logic == LogicId::CplePlus {
        return Err(NmError::Unsupported(logic));
    }
    let all = CACHE.get_or_init(|| {
        LogicId::ALL
            .iter()
            .map(|&l| full_swap(l, BoolAlg::two()).expect("𝔸₂ structures are small"))
            .collect()
    });
    Ok(&all[LogicId::ALL.iter().position(|&l| l == logic).unwrap()])
}

pub fn decide_logic(
    logic: LogicId,
    premises: &[Formula],
    goal: &Formula,
) -> Result<Verdict, NmError> {
    Ok(decide(&nmatrix_of(characteristic(logic)?), premises, goal))
}

pub fn holds_in_logic(
    logic: LogicId,
    premises: &[Formula],
    goal: &Formula,
) -> Result<bool, NmError> {
    Ok(holds(&nmatrix_of(characteristic(logic)?), premises, goal))
}

fn supports_bivaluations(logic: LogicId) -> Result<(), NmError> {
    match logic {
        LogicId::MbC | LogicId::Lfi1o | LogicId::Ciore => Ok(()),
        _ => Err(NmError::NoBivaluations(logic)),
    }
}

/// A two-valued map on a subformula-closed core extended by `¬φ`, `∘φ` and
/// `¬∘φ` for each core formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivaluation {
    logic: LogicId,
    core: Vec<Formula>,
    values: HashMap<Formula, bool>,
}

/// The core (subformula closure of `base`) and the domain (core plus `¬φ`,
/// `∘φ` and `¬∘φ` for each core formula), both in a children-first order.
/// Without `¬∘φ` the clause (vCi) never applies and `∘φ` floats free of
/// `φ` and `¬φ`.
pub fn bivaluation_domain(base: &[Formula]) -> (Vec<Formula>, Vec<Formula>) {
    let core = subformula_closure(base);
    let layer: Vec<Formula> = core
        .iter()
        .flat_map(|f| {
            let con = Formula::con(f.clone());
            [Formula::neg(f.clone()), con.clone(), Formula::neg(con)]
        })
        .collect();
    let mut domain = core.clone();
    let mut seen: HashSet<Formula> = core.iter().cloned().collect();
    for f in layer {
        if seen.insert(f.clone()) {
            domain.push(f);
        }
    }
    (core, domain)
}

impl Bivaluation {
    pub fn new(
        logic: LogicId,
        core: Vec<Formula>,
        values: HashMap<Formula, bool>,
    ) -> Result<Bivaluation, NmError> {
        supports_bivaluations(logic)?;
        Ok(Bivaluation {
            logic,
            core,
            values,
        })
    }

    /// `μ` on the domain built from `base`.
    pub fn from_fn(
        logic: LogicId,
        base: &[Formula],
        mut mu: impl FnMut(&Formula) -> bool,
    ) -> Result<Bivaluation, NmError> {
        let (core, domain) = bivaluation_domain(base);
        let values = domain.iter().map(|f| (f.clone(), mu(f))).collect();
        Bivaluation::new(logic, core, values)
    }

    /// `μ(φ) = 1` iff `v(φ)` is designated, for a legal valuation whose
    /// domain covers the bivaluation domain of `core`.
    pub fn from_valuation<M: MultiAlgebra>(
        logic: LogicId,
        core: &[Formula],
        v: &Valuation,
        m: &Nmatrix<M>,
    ) -> Result<Bivaluation, NmError> {
        let (core, domain) = bivaluation_domain(core);
        let values = domain
            .iter()
            .map(|f| {
                v.get(f)
                    .map(|x| (f.clone(), m.is_designated(x)))
                    .ok_or_else(|| NmError::NotClosed(format!("{f} has no value")))
            })
            .collect::<Result<_, _>>()?;
        Bivaluation::new(logic, core, values)
    }

    pub fn logic(&self) -> LogicId {
        self.logic
    }

    pub fn core(&self) -> &[Formula] {
        &self.core
    }

    pub fn get(&self, f: &Formula) -> Option<bool> {
        self.values.get(f).copied()
    }

    pub fn values(&self) -> &HashMap<Formula, bool> {
        &self.values
    }
}

fn check_closed(b: &Bivaluation) -> Result<(), NmError> {
    let core: HashSet<&Formula> = b.core.iter().collect();
    for f in &b.core {
        if let Some(c) = f.children().into_iter().find(|c| !core.contains(c)) {
            return Err(NmError::NotClosed(format!(
                "{c} is a subformula of {f} outside the core"
            )));
        }
        let con = Formula::con(f.clone());
        for g in [
            f.clone(),
            Formula::neg(f.clone()),
            Formula::neg(con.clone()),
            con,
        ] {
            if !b.values.contains_key(&g) {
                return Err(NmError::NotClosed(format!("{g} has no value")));
            }
        }
    }
    for g in b.values.keys() {
        let layered = |h: &Formula| matches!(h, Formula::Unary(_, a) if core.contains(&**a));
        let neg_con = matches!(g, Formula::Unary(UnOp::Neg, a) if matches!(&**a, Formula::Unary(UnOp::Con, _)) && layered(a));
        if !core.contains(g) && !layered(g) && !neg_con {
            return Err(NmError::NotClosed(format!(
                "{g} is neither in the core nor ¬, ∘ or ¬∘ of a core formula"
            )));
        }
    }
    Ok(())
}

/// The first clause of `logic` that fails on `values`, checking only clauses
/// whose formulas all have values.
pub fn clause_violation(logic: LogicId, values: &HashMap<Formula, bool>) -> Option<String> {
    let mu = |f: &Formula| values.get(f).copied();
    let neg = |f: &Formula| Formula::neg(f.clone());
    let con = |f: &Formula| Formula::con(f.clone());
    let three = logic != LogicId::MbC;
    for (f, &v) in values {
        match f {
            Formula::Binary(op, a, b) => {
                if let (Some(x), Some(y)) = (mu(a), mu(b)) {
                    let want = match op {
                        BinOp::And => x && y,
                        BinOp::Or => x || y,
                        BinOp::Imp => !x || y,
                    };
                    if v != want {
                        return Some(format!("classical clause fails at {f}"));
                    }
                }
            }
            Formula::Unary(UnOp::Neg, a) => {
                if !v && mu(a) == Some(false) {
                    return Some(format!("vNeg fails at {f}"));
                }
                if three {
                    if let Formula::Unary(UnOp::Con, inner) = &**a {
                        if v && (mu(inner) == Some(false) || mu(&neg(inner)) == Some(false)) {
                            return Some(format!("vCi fails at {f}"));
                        }
                    }
                    if let Formula::Unary(UnOp::Neg, inner) = &**a {
                        if mu(inner).is_some_and(|x| x != v) {
                            return Some(format!("vCeCf fails at {f}"));
                        }
                    }
                }
                if logic == LogicId::Lfi1o {
                    if let Formula::Binary(op, x, y) = &**a {
                        let parts = match op {
                            BinOp::And => mu(&neg(x)).zip(mu(&neg(y))).map(|(p, q)| p || q),
                            BinOp::Or => mu(&neg(x)).zip(mu(&neg(y))).map(|(p, q)| p && q),
                            BinOp::Imp => mu(x).zip(mu(&neg(y))).map(|(p, q)| p && q),
                        };
                        if parts.is_some_and(|w| w != v) {
                            return Some(format!("negation clause for {op:?} fails at {f}"));
                        }
                    }
                }
            }
            Formula::Unary(UnOp::Con, a) => {
                if v && mu(a) == Some(true) && mu(&neg(a)) == Some(true) {
                    return Some(format!("vCon fails at {f}"));
                }
                if logic == LogicId::Ciore {
                    if let Formula::Binary(_, x, y) = &**a {
                        if let (Some(p), Some(q)) = (mu(&con(x)), mu(&con(y))) {
                            if v != (p || q) {
                                return Some(format!("vCo fails at {f}"));
                            }
                        }
                    }
                }
            }
            Formula::Var(_) => {}
        }
    }
    None
}

pub fn bivaluation_violation(b: &Bivaluation) -> Result<Option<String>, NmError> {
    check_closed(b)?;
    Ok(clause_violation(b.logic, &b.values))
}

pub fn is_bivaluation(b: &Bivaluation) -> Result<bool, NmError> {
    Ok(bivaluation_violation(b)?.is_none())
}

/// `v_μ(α) = (μα, μ¬α, μ∘α)` for mbC and `(μα, μ¬α)` for the 3-valued
/// logics, over the core.
pub fn induced_valuation(b: &Bivaluation) -> Result<Valuation, NmError> {
    if let Some(why) = bivaluation_violation(b)? {
        return Err(NmError::Invalid(why));
    }
    let m = characteristic(b.logic)?;
    let bit = |f: Formula| u32::from(b.values[&f]);
    let values = b
        .core
        .iter()
        .map(|f| {
            let (z1, z2, z3) = (
                bit(f.clone()),
                bit(Formula::neg(f.clone())),
                bit(Formula::con(f.clone())),
            );
            let z = if b.logic == LogicId::MbC {
                Snapshot::new(z1, z2, z3)
            } else {
                Snapshot::pair(m.alg(), z1, z2)
            };
            m.index_of(&z)
                .ok_or_else(|| NmError::Invalid(format!("{f} gets a value outside the matrix")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Valuation::new(b.core.clone(), values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn explosion_needs_consistency() {
        let v = decide_logic(LogicId::MbC, &[f("p"), f("~p")], &f("q")).unwrap();
        assert!(!v.holds);
        let cm = v.countermodel.unwrap();
        let m = characteristic(LogicId::MbC).unwrap();
        assert!(cm.is_legal(m));
        assert!(
            decide_logic(LogicId::MbC, &[f("@p"), f("p"), f("~p")], &f("q"))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn goal_among_premises() {
        assert!(
            decide_logic(LogicId::MbC, &[f("p & q")], &f("p & q"))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn cple_plus_is_refused() {
        assert_eq!(
            decide_logic(LogicId::CplePlus, &[], &f("p")),
            Err(NmError::Unsupported(LogicId::CplePlus))
        );
    }

    #[test]
    fn vneg_and_dm() {
        let p = f("p");
        let bad = Bivaluation::from_fn(LogicId::MbC, std::slice::from_ref(&p), |g| {
            g != &p && g != &f("~p")
        })
        .unwrap();
        assert!(!is_bivaluation(&bad).unwrap());
        let good = Bivaluation::from_fn(LogicId::MbC, std::slice::from_ref(&p), |g| g != &f("@p"))
            .unwrap();
        assert!(is_bivaluation(&good).unwrap());
        assert_eq!(induced_valuation(&good).unwrap().values(), &[1]);
    }
}
