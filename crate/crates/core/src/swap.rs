//! Swap structures for the LFI hierarchy: universes, full structures,
//! membership, the dual Kalman functor, product isomorphisms, Birkhoff-style
//! representations, and the classical Kalman construction with its duality.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean_algebra::{
    atom_embedding, ba_product, powerset_algebra, tuple_homs, BaError, BaHom, BoolAlg,
};
use crate::exec::{unrank, Exec};
use crate::formula::{BinOp, Signature};
use crate::hilbert::axioms_of;
use crate::multialgebra::{
    is_homomorphism, tuple_count, MaError, MaMap, MultiAlg, MultiAlgebra, ProductView,
};
use crate::nmatrix::{holds, nmatrix_of};

pub(crate) const AND: usize = 0;
pub(crate) const OR: usize = 1;
pub(crate) const IMP: usize = 2;
pub(crate) const NEG: usize = 3;
pub(crate) const CON: usize = 4;

/// Largest carrier `full_swap` will build.
pub const MAX_UNIVERSE: u64 = 1 << 21;

pub(crate) fn sigma() -> &'static Signature {
    static SIGMA: OnceLock<Signature> = OnceLock::new();
    SIGMA.get_or_init(Signature::sigma)
}

fn bin_op(op: usize) -> BinOp {
    match op {
        AND => BinOp::And,
        OR => BinOp::Or,
        _ => BinOp::Imp,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicId {
    #[serde(rename = "CPLe+")]
    CplePlus,
    #[serde(rename = "mbC")]
    MbC,
    #[serde(rename = "mbCciw")]
    MbCciw,
    #[serde(rename = "mbCci")]
    MbCci,
    #[serde(rename = "Ci")]
    Ci,
    #[serde(rename = "LFI1∘")]
    Lfi1o,
    #[serde(rename = "Ciore")]
    Ciore,
    #[serde(rename = "CPLe")]
    Cple,
}

/// Snapshots are triples for CPLe+ and mbC and pairs from mbCciw on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Triple,
    Pair,
}

impl LogicId {
    /// Weakest first. `Ord` is a linear extension of class inclusion:
    /// LFI1∘ and Ciore are incomparable and both contain CPLe.
    pub const ALL: [LogicId; 8] = [
        LogicId::CplePlus,
        LogicId::MbC,
        LogicId::MbCciw,
        LogicId::MbCci,
        LogicId::Ci,
        LogicId::Lfi1o,
        LogicId::Ciore,
        LogicId::Cple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::CplePlus => "CPLe+",
            LogicId::MbC => "mbC",
            LogicId::MbCciw => "mbCciw",
            LogicId::MbCci => "mbCci",
            LogicId::Ci => "Ci",
            LogicId::Lfi1o => "LFI1∘",
            LogicId::Ciore => "Ciore",
            LogicId::Cple => "CPLe",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            LogicId::CplePlus | LogicId::MbC => Mode::Triple,
            _ => Mode::Pair,
        }
    }

    /// Logics whose class of swap structures immediately contains this one's.
    pub fn parents(self) -> &'static [LogicId] {
        match self {
            LogicId::CplePlus => &[],
            LogicId::MbC => &[LogicId::CplePlus],
            LogicId::MbCciw => &[LogicId::MbC],
            LogicId::MbCci => &[LogicId::MbCciw],
            LogicId::Ci => &[LogicId::MbCci],
            LogicId::Lfi1o | LogicId::Ciore => &[LogicId::Ci],
            LogicId::Cple => &[LogicId::Lfi1o, LogicId::Ciore],
        }
    }

    /// `K_self ⊆ K_other`, i.e. `self` is `other` or one of its extensions.
    pub fn extends(self, other: LogicId) -> bool {
        self == other || self.parents().iter().any(|p| p.extends(other))
    }

    /// Single-valued (twist) structures.
    pub fn is_twist(self) -> bool {
        matches!(self, LogicId::Lfi1o | LogicId::Ciore)
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown logic `{0}`")]
pub struct UnknownLogic(pub String);

impl FromStr for LogicId {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_lowercase().as_str() {
            "cple+" | "cplep" => LogicId::CplePlus,
            "mbc" => LogicId::MbC,
            "mbcciw" => LogicId::MbCciw,
            "mbcci" => LogicId::MbCci,
            "ci" => LogicId::Ci,
            "lfi1∘" | "lfi1o" | "lfi1" | "j3" => LogicId::Lfi1o,
            "ciore" => LogicId::Ciore,
            "cple" => LogicId::Cple,
            _ => return Err(UnknownLogic(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwapError {
    #[error("universe of {logic} over {atoms} atoms has {size} candidates, over the cap of {cap}")]
    TooLarge {
        logic: LogicId,
        atoms: u32,
        size: u64,
        cap: u64,
    },
    #[error("snapshot {0} does not decode over the backing algebra")]
    Undecodable(String),
    #[error("snapshot {0} occurs twice")]
    Duplicate(String),
    #[error("subset is not closed: {op} is empty at ({args})")]
    NotClosed { op: String, args: String },
    #[error("cell of {op} at ({args}) is not a nonempty subset of the original cell")]
    BadCell { op: String, args: String },
    #[error("pair encoding needs z3 = ~(z1 & z2), which fails at {0}")]
    NotPairEncodable(String),
    #[error("not a swap structure for {0}")]
    NotInClass(LogicId),
    #[error("backing algebra is degenerate")]
    Degenerate,
    #[error("empty family")]
    EmptyFamily,
    #[error("{0} candidate blocks are too many to search for a decoding")]
    SearchTooLarge(usize),
    #[error(transparent)]
    Multialgebra(#[from] MaError),
    #[error(transparent)]
    Boolean(#[from] BaError),
}

/// A truth value `(z1, z2, z3)`: the value of a formula, of its negation and
/// of its consistency. Pair-mode snapshots keep `z3 = ~(z1 ∧ z2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Snapshot {
    pub z1: u32,
    pub z2: u32,
    pub z3: u32,
}

impl Snapshot {
    pub fn new(z1: u32, z2: u32, z3: u32) -> Snapshot {
        Snapshot { z1, z2, z3 }
    }

    pub fn pair(alg: &BoolAlg, z1: u32, z2: u32) -> Snapshot {
        Snapshot {
            z1,
            z2,
            z3: alg.not(alg.meet(z1, z2)),
        }
    }

    pub fn is_pair_encodable(&self, alg: &BoolAlg) -> bool {
        self.z3 == alg.not(alg.meet(self.z1, self.z2))
    }

    pub fn in_algebra(&self, alg: &BoolAlg) -> bool {
        alg.contains(self.z1) && alg.contains(self.z2) && alg.contains(self.z3)
    }

    pub fn map(&self, f: impl Fn(u32) -> u32) -> Snapshot {
        Snapshot {
            z1: f(self.z1),
            z2: f(self.z2),
            z3: f(self.z3),
        }
    }

    /// Paper name over 𝔸₂ with its rank in the named order.
    fn named(&self, alg: &BoolAlg, mode: Mode) -> Option<(usize, &'static str)> {
        if alg.atoms() != 1 {
            return None;
        }
        match mode {
            Mode::Triple => match (self.z1, self.z2, self.z3) {
                (1, 0, 1) => Some((0, "T")),
                (1, 1, 0) => Some((1, "t")),
                (1, 0, 0) => Some((2, "t₀")),
                (0, 1, 1) => Some((3, "F")),
                (0, 1, 0) => Some((4, "f₀")),
                _ => None,
            },
            Mode::Pair if self.is_pair_encodable(alg) => match (self.z1, self.z2) {
                (1, 0) => Some((0, "T")),
                (1, 1) => Some((1, "t")),
                (0, 1) => Some((3, "F")),
                _ => None,
            },
            Mode::Pair => None,
        }
    }

    pub fn label(&self, alg: &BoolAlg, mode: Mode) -> String {
        if let Some((_, name)) = self.named(alg, mode) {
            return name.to_string();
        }
        match mode {
            Mode::Pair if self.is_pair_encodable(alg) => {
                format!("({},{})", alg.format(self.z1), alg.format(self.z2))
            }
            _ => format!(
                "({},{},{})",
                alg.format(self.z1),
                alg.format(self.z2),
                alg.format(self.z3)
            ),
        }
    }

    fn sort_key(&self, alg: &BoolAlg, mode: Mode) -> (usize, Snapshot) {
        (self.named(alg, mode).map_or(usize::MAX, |(r, _)| r), *self)
    }
}

/// Canonical carrier order: the named order over 𝔸₂, then lexicographic.
pub fn sort_canonical(alg: &BoolAlg, mode: Mode, elems: &mut [Snapshot]) {
    elems.sort_by_key(|z| z.sort_key(alg, mode));
}

pub fn in_universe(logic: LogicId, alg: &BoolAlg, z: &Snapshot) -> bool {
    if !z.in_algebra(alg) {
        return false;
    }
    let covers = alg.join(z.z1, z.z2) == alg.one();
    match logic {
        LogicId::CplePlus => true,
        LogicId::MbC => covers && alg.meet(alg.meet(z.z1, z.z2), z.z3) == alg.zero(),
        LogicId::Cple => z.is_pair_encodable(alg) && z.z2 == alg.not(z.z1),
        _ => covers && z.is_pair_encodable(alg),
    }
}

fn universe_candidates(logic: LogicId, alg: &BoolAlg) -> Result<u64, SwapError> {
    let per = alg.size() as u64;
    let size = match logic.mode() {
        Mode::Triple => per.saturating_pow(3),
        Mode::Pair => per.saturating_pow(2),
    };
    if size > MAX_UNIVERSE {
        return Err(SwapError::TooLarge {
            logic,
            atoms: alg.atoms(),
            size,
            cap: MAX_UNIVERSE,
        });
    }
    Ok(size)
}

/// Snapshots admitted by `logic` over `alg`, in canonical order.
pub fn universe(logic: LogicId, alg: &BoolAlg) -> Result<Vec<Snapshot>, SwapError> {
    universe_candidates(logic, alg)?;
    let mut out = Vec::new();
    for z1 in alg.elements() {
        for z2 in alg.elements() {
            match logic.mode() {
                Mode::Triple => out.extend(alg.elements().map(|z3| Snapshot::new(z1, z2, z3))),
                Mode::Pair => out.push(Snapshot::pair(alg, z1, z2)),
            }
        }
    }
    out.retain(|z| in_universe(logic, alg, z));
    sort_canonical(alg, logic.mode(), &mut out);
    Ok(out)
}

/// First coordinate forced on every member of a cell.
fn first_coordinate(alg: &BoolAlg, op: usize, z: &Snapshot, w: &Snapshot) -> u32 {
    match op {
        NEG => z.z2,
        CON => z.z3,
        _ => alg.apply(bin_op(op), z.z1, w.z1),
    }
}

fn twist_binary(logic: LogicId, alg: &BoolAlg, op: usize, z: &Snapshot, w: &Snapshot) -> Snapshot {
    let first = alg.apply(bin_op(op), z.z1, w.z1);
    let second = if logic == LogicId::Ciore {
        let all = alg.meet(alg.meet(z.z1, z.z2), alg.meet(w.z1, w.z2));
        alg.imp(first, all)
    } else {
        match op {
            AND => alg.join(z.z2, w.z2),
            OR => alg.meet(z.z2, w.z2),
            _ => alg.meet(z.z1, w.z2),
        }
    };
    Snapshot::pair(alg, first, second)
}

fn consistency_value(alg: &BoolAlg, z: &Snapshot) -> Snapshot {
    let both = alg.meet(z.z1, z.z2);
    Snapshot::pair(alg, alg.not(both), both)
}

/// Whether `u` may belong to the cell of `op` at `z` (and `w` for binary
/// operators) under the clauses for `logic`.
pub fn allowed(
    logic: LogicId,
    alg: &BoolAlg,
    op: usize,
    z: &Snapshot,
    w: &Snapshot,
    u: &Snapshot,
) -> bool {
    if u.z1 != first_coordinate(alg, op, z, w) {
        return false;
    }
    match op {
        NEG if logic.is_twist() => *u == Snapshot::pair(alg, z.z2, z.z1),
        NEG if logic.extends(LogicId::Ci) => alg.leq(u.z2, z.z1),
        CON if logic.extends(LogicId::MbCci) => *u == consistency_value(alg, z),
        AND | OR | IMP if logic.is_twist() => *u == twist_binary(logic, alg, op, z, w),
        _ => true,
    }
}

#[derive(Clone, Debug)]
enum Cells {
    /// Maximal cells allowed by the tag's clauses within the carrier.
    Rule,
    Table(MultiAlg),
}

/// A multialgebra over Σ whose elements decode as snapshots over a backing
/// Boolean algebra.
#[derive(Clone, Debug)]
pub struct SwapStructure {
    alg: BoolAlg,
    logic: LogicId,
    elems: Vec<Snapshot>,
    labels: Vec<String>,
    index: HashMap<Snapshot, usize>,
    by_first: HashMap<u32, Vec<usize>>,
    cells: Cells,
}

pub fn full_swap(logic: LogicId, alg: BoolAlg) -> Result<SwapStructure, SwapError> {
    let elems = universe(logic, &alg)?;
    let b = SwapStructure::assemble(alg, logic, elems, Cells::Rule)?;
    if !b.by_first.contains_key(&alg.zero()) {
        return Err(SwapError::Degenerate);
    }
    Ok(b)
}

impl SwapStructure {
    fn assemble(
        alg: BoolAlg,
        logic: LogicId,
        elems: Vec<Snapshot>,
        cells: Cells,
    ) -> Result<SwapStructure, SwapError> {
        let mode = logic.mode();
        let mut index = HashMap::with_capacity(elems.len());
        let mut by_first: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, z) in elems.iter().enumerate() {
            if !z.in_algebra(&alg) {
                return Err(SwapError::Undecodable(format!(
                    "({},{},{})",
                    z.z1, z.z2, z.z3
                )));
            }
            if mode == Mode::Pair && !z.is_pair_encodable(&alg) {
                return Err(SwapError::NotPairEncodable(z.label(&alg, Mode::Triple)));
            }
            if index.insert(*z, i).is_some() {
                return Err(SwapError::Duplicate(z.label(&alg, mode)));
            }
            by_first.entry(z.z1).or_default().push(i);
        }
        let labels = elems.iter().map(|z| z.label(&alg, mode)).collect();
        Ok(SwapStructure {
            alg,
            logic,
            elems,
            labels,
            index,
            by_first,
            cells,
        })
    }

    /// A structure with explicit cells. `table` is indexed like `elems`.
    pub fn from_table(
        alg: BoolAlg,
        logic: LogicId,
        elems: Vec<Snapshot>,
        table: MultiAlg,
    ) -> Result<SwapStructure, SwapError> {
        if table.signature() != sigma() {
            return Err(MaError::SignatureMismatch.into());
        }
        if table.size() != elems.len() {
            return Err(MaError::BadMapLength {
                expected: elems.len(),
                got: table.size(),
            }
            .into());
        }
        let mut b = SwapStructure::assemble(alg, logic, elems, Cells::Rule)?;
        let table = table.with_labels(b.labels.clone());
        b.cells = Cells::Table(table);
        Ok(b)
    }

    pub fn alg(&self) -> &BoolAlg {
        &self.alg
    }

    /// The logic whose clauses generate the cells of a full structure; it
    /// also fixes the triple or pair display mode.
    pub fn logic(&self) -> LogicId {
        self.logic
    }

    pub fn mode(&self) -> Mode {
        self.logic.mode()
    }

    pub fn elems(&self) -> &[Snapshot] {
        &self.elems
    }

    pub fn snapshot(&self, i: usize) -> Snapshot {
        self.elems[i]
    }

    pub fn index_of(&self, z: &Snapshot) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_designated(&self, i: usize) -> bool {
        self.elems[i].z1 == self.alg.one()
    }

    pub fn designated(&self) -> Vec<bool> {
        (0..self.elems.len())
            .map(|i| self.is_designated(i))
            .collect()
    }

    /// `π₁[B]`, sorted.
    pub fn first_image(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.by_first.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// Cells come from the clauses of the tag rather than a table.
    pub fn is_rule_based(&self) -> bool {
        matches!(self.cells, Cells::Rule)
    }

    pub fn materialize(&self) -> MultiAlg {
        MultiAlg::materialize(self)
    }

    fn group(&self, first: u32) -> Cow<'_, [usize]> {
        match self.by_first.get(&first) {
            Some(v) => Cow::Borrowed(v),
            None => Cow::Borrowed(&[]),
        }
    }

    fn single(&self, u: &Snapshot) -> Cow<'_, [usize]> {
        match self.index.get(u) {
            Some(&i) => Cow::Owned(vec![i]),
            None => Cow::Borrowed(&[]),
        }
    }

    fn rule_cell(&self, op: usize, args: &[usize]) -> Cow<'_, [usize]> {
        let alg = &self.alg;
        let z = &self.elems[args[0]];
        let w = &self.elems[*args.get(1).unwrap_or(&args[0])];
        let first = first_coordinate(alg, op, z, w);
        match op {
            NEG if self.logic.is_twist() => self.single(&Snapshot::pair(alg, z.z2, z.z1)),
            NEG if self.logic.extends(LogicId::Ci) => Cow::Owned(
                self.group(first)
                    .iter()
                    .copied()
                    .filter(|&u| alg.leq(self.elems[u].z2, z.z1))
                    .collect(),
            ),
            CON if self.logic.extends(LogicId::MbCci) => self.single(&consistency_value(alg, z)),
            AND | OR | IMP if self.logic.is_twist() => {
                self.single(&twist_binary(self.logic, alg, op, z, w))
            }
            _ => self.group(first),
        }
    }

    fn describe(&self, op: usize, args: &[usize]) -> (String, String) {
        let names: Vec<&str> = args.iter().map(|&a| self.labels[a].as_str()).collect();
        (sigma().ops()[op].name.clone(), names.join(","))
    }

    /// Restriction to a subset of the carrier, which must be closed: every
    /// cell meets it. Cells become their intersection with the subset.
    pub fn restrict(&self, subset: &[usize]) -> Result<SwapStructure, SwapError> {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&x) = keep.iter().find(|&&x| x >= self.elems.len()) {
            return Err(MaError::OutOfRange(x).into());
        }
        let mut new_index = vec![usize::MAX; self.elems.len()];
        for (i, &x) in keep.iter().enumerate() {
            new_index[x] = i;
        }
        let k = keep.len();
        let mut tables = Vec::with_capacity(sigma().len());
        for op in 0..sigma().len() {
            let n = sigma().arity(op);
            let mut table = Vec::with_capacity(tuple_count(k, n));
            let mut local = vec![0; n];
            for r in 0..tuple_count(k, n) {
                unrank(r, k, &mut local);
                let args: Vec<usize> = local.iter().map(|&i| keep[i]).collect();
                let cell: Vec<usize> = self
                    .cell(op, &args)
                    .iter()
                    .map(|&u| new_index[u])
                    .filter(|&u| u != usize::MAX)
                    .collect();
                if cell.is_empty() {
                    let (op, args) = self.describe(op, &args);
                    return Err(SwapError::NotClosed { op, args });
                }
                table.push(cell);
            }
            tables.push(table);
        }
        let elems: Vec<Snapshot> = keep.iter().map(|&x| self.elems[x]).collect();
        if self.is_rule_based() {
            // Intersecting maximal cells with the subset gives the maximal
            // cells over the subset.
            return SwapStructure::assemble(self.alg, self.logic, elems, Cells::Rule);
        }
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let table = MultiAlg::new(sigma().clone(), labels, tables)?;
        SwapStructure::from_table(self.alg, self.logic, elems, table)
    }

    /// Same carrier, with each cell replaced by `choose(op, args, cell)`,
    /// which must return a nonempty subset of `cell`.
    pub fn shrink<F>(&self, mut choose: F) -> Result<SwapStructure, SwapError>
    where
        F: FnMut(usize, &[usize], &[usize]) -> Vec<usize>,
    {
        let k = self.elems.len();
        let mut tables = Vec::with_capacity(sigma().len());
        for op in 0..sigma().len() {
            let n = sigma().arity(op);
            let mut args = vec![0; n];
            let mut table = Vec::with_capacity(tuple_count(k, n));
            for r in 0..tuple_count(k, n) {
                unrank(r, k, &mut args);
                let cell = self.cell(op, &args);
                let mut sub = choose(op, &args, &cell);
                sub.sort_unstable();
                sub.dedup();
                if sub.is_empty() || sub.iter().any(|u| cell.binary_search(u).is_err()) {
                    let (op, args) = self.describe(op, &args);
                    return Err(SwapError::BadCell { op, args });
                }
                table.push(sub);
            }
            tables.push(table);
        }
        let table = MultiAlg::new(sigma().clone(), self.labels.clone(), tables)?;
        SwapStructure::from_table(self.alg, self.logic, self.elems.clone(), table)
    }

    /// The same multialgebra presented under another logic's encoding.
    /// Cells are frozen first, so only the display mode changes.
    pub fn retag(&self, logic: LogicId) -> Result<SwapStructure, SwapError> {
        SwapStructure::from_table(self.alg, logic, self.elems.clone(), self.materialize())
    }
}

impl MultiAlgebra for SwapStructure {
    fn signature(&self) -> &Signature {
        sigma()
    }

    fn size(&self) -> usize {
        self.elems.len()
    }

    fn cell(&self, op: usize, args: &[usize]) -> Cow<'_, [usize]> {
        match &self.cells {
            Cells::Rule => self.rule_cell(op, args),
            Cells::Table(t) => t.cell(op, args),
        }
    }

    fn label(&self, x: usize) -> String {
        self.labels[x].clone()
    }

    fn contains(&self, op: usize, args: &[usize], x: usize) -> bool {
        match &self.cells {
            Cells::Rule => {
                let z = &self.elems[args[0]];
                let w = &self.elems[*args.get(1).unwrap_or(&args[0])];
                allowed(self.logic, &self.alg, op, z, w, &self.elems[x])
            }
            Cells::Table(t) => t.contains(op, args, x),
        }
    }
}

/// Why `b` fails to be a swap structure for `logic`, if it does.
pub fn swap_violation_with(logic: LogicId, b: &SwapStructure, exec: Exec) -> Option<String> {
    let alg = b.alg();
    if !b.by_first.contains_key(&alg.zero()) {
        return Some("0 is not a first coordinate".into());
    }
    if let Some(i) = (0..b.size()).find(|&i| !in_universe(logic, alg, &b.elems[i])) {
        return Some(format!("{} is outside the {} universe", b.labels[i], logic));
    }
    let k = b.size();
    for op in 0..sigma().len() {
        let n = sigma().arity(op);
        let bad = exec.position(tuple_count(k, n), |r| {
            let mut args = [0usize; 2];
            unrank(r, k, &mut args[..n]);
            let z = &b.elems[args[0]];
            let w = &b.elems[args[n - 1]];
            let cell = b.cell(op, &args[..n]);
            cell.is_empty()
                || cell
                    .iter()
                    .any(|&u| !allowed(logic, alg, op, z, w, &b.elems[u]))
        });
        if let Some(r) = bad {
            let mut args = vec![0; n];
            unrank(r, k, &mut args);
            let (op, args) = b.describe(op, &args);
            return Some(format!(
                "cell of {op} at ({args}) breaks the {logic} clauses"
            ));
        }
    }
    None
}

pub fn swap_violation(logic: LogicId, b: &SwapStructure) -> Option<String> {
    swap_violation_with(logic, b, Exec::default())
}

pub fn is_swap_for(logic: LogicId, b: &SwapStructure) -> bool {
    swap_violation(logic, b).is_none()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (a, b) = (find(parent, a), find(parent, b));
    if a == b {
        return false;
    }
    parent[a.max(b)] = a.min(b);
    true
}

/// Merge until every cell lies in one block and the binary operators are
/// well defined on blocks.
fn close_partition(m: &dyn MultiAlgebra, parent: &mut [usize]) {
    let k = m.size();
    loop {
        let mut changed = false;
        for op in 0..sigma().len() {
            let n = sigma().arity(op);
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            let mut args = vec![0; n];
            for r in 0..tuple_count(k, n) {
                unrank(r, k, &mut args);
                let cell = m.cell(op, &args);
                for &u in &cell[1..] {
                    changed |= union(parent, cell[0], u);
                }
                if n == 2 {
                    let key = (find(parent, args[0]), find(parent, args[1]));
                    let v = find(parent, cell[0]);
                    match seen.get(&key) {
                        Some(&prev) => changed |= union(parent, prev, v),
                        None => {
                            seen.insert(key, v);
                        }
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Restricted growth strings of length `c`: every set partition once.
fn for_each_partition(c: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(rgs: &mut Vec<usize>, c: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if rgs.len() == c {
            f(rgs);
            return;
        }
        for b in 0..=max + 1 {
            rgs.push(b);
            go(rgs, c, max.max(b), f);
            rgs.pop();
        }
    }
    if c == 0 {
        f(&[]);
        return;
    }
    let mut rgs = vec![0];
    go(&mut rgs, c, 0, f);
}

/// Try to read a block quotient as a Boolean algebra: returns the atom count
/// and the mask of each block.
fn boolean_reading(m: &dyn MultiAlgebra, block: &[usize], count: usize) -> Option<(u32, Vec<u32>)> {
    if !count.is_power_of_two() {
        return None;
    }
    let mut rep = vec![usize::MAX; count];
    for (x, &b) in block.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = x;
        }
    }
    let q = |op: usize, a: usize, b: usize| block[m.cell(op, &[rep[a], rep[b]])[0]];
    let leq = |a: usize, b: usize| q(AND, a, b) == a;
    let bottom = (0..count).find(|&a| (0..count).all(|b| leq(a, b)))?;
    let atoms: Vec<usize> = (0..count)
        .filter(|&a| a != bottom && (0..count).all(|b| !leq(b, a) || b == a || b == bottom))
        .collect();
    let n = atoms.len() as u32;
    if 1usize << n != count {
        return None;
    }
    let mask: Vec<u32> = (0..count)
        .map(|a| {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &t)| leq(t, a))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let alg = powerset_algebra(n).ok()?;
    let mut seen = vec![false; count];
    for &x in &mask {
        if std::mem::replace(&mut seen[x as usize], true) {
            return None;
        }
    }
    for a in 0..count {
        for b in 0..count {
            for op in [AND, OR, IMP] {
                if mask[q(op, a, b)] != alg.apply(bin_op(op), mask[a], mask[b]) {
                    return None;
                }
            }
        }
    }
    Some((n, mask))
}

/// Largest number of blocks whose coarsenings `decode_swap` will search.
pub const MAX_DECODE_BLOCKS: usize = 10;

/// Search for a snapshot decoding of a bare multialgebra that makes it a
/// swap structure for `logic`. The first coordinate must be a map onto a
/// Boolean algebra compatible with the cells, and then the other two
/// coordinates are read off the cells of ¬ and ∘.
pub fn decode_swap(
    logic: LogicId,
    m: &dyn MultiAlgebra,
) -> Result<Option<SwapStructure>, SwapError> {
    if m.signature() != sigma() {
        return Err(MaError::SignatureMismatch.into());
    }
    let k = m.size();
    let mut parent: Vec<usize> = (0..k).collect();
    close_partition(m, &mut parent);
    let roots: Vec<usize> = (0..k).filter(|&x| find(&mut parent, x) == x).collect();
    if roots.len() > MAX_DECODE_BLOCKS {
        return Err(SwapError::SearchTooLarge(roots.len()));
    }
    let base: Vec<usize> = (0..k)
        .map(|x| roots.binary_search(&find(&mut parent, x)).unwrap())
        .collect();
    let table = MultiAlg::materialize(m);
    let mut tried = HashSet::new();
    let mut found = None;
    for_each_partition(roots.len(), &mut |rgs| {
        if found.is_some() {
            return;
        }
        let mut p: Vec<usize> = (0..k).collect();
        for x in 0..k {
            let y = roots[rgs.iter().position(|&g| g == rgs[base[x]]).unwrap()];
            union(&mut p, x, y);
        }
        close_partition(m, &mut p);
        let ids = crate::multialgebra::EquivRel::from_block_ids(
            &(0..k).map(|x| find(&mut p, x)).collect::<Vec<_>>(),
        );
        let block: Vec<usize> = (0..k).map(|x| ids.block_of(x)).collect();
        if !tried.insert(block.clone()) {
            return;
        }
        let Some((n, mask)) = boolean_reading(m, &block, ids.num_blocks()) else {
            return;
        };
        let Ok(alg) = powerset_algebra(n) else {
            return;
        };
        let elems: Vec<Snapshot> = (0..k)
            .map(|x| {
                let z2 = mask[block[m.cell(NEG, &[x])[0]]];
                let z3 = mask[block[m.cell(CON, &[x])[0]]];
                Snapshot::new(mask[block[x]], z2, z3)
            })
            .collect();
        let Ok(b) = SwapStructure::from_table(alg, LogicId::CplePlus, elems, table.clone()) else {
            return;
        };
        if is_swap_for(logic, &b) {
            found = Some(b);
        }
    });
    Ok(found)
}

/// Whether some snapshot decoding makes `m` a swap structure for `logic`.
pub fn is_swap_up_to_iso(logic: LogicId, m: &dyn MultiAlgebra) -> Result<bool, SwapError> {
    Ok(decode_swap(logic, m)?.is_some())
}

/// `⊨_{M(B)} schema`, metavariables read as fresh variables.
pub fn validates(b: &SwapStructure, schema: &crate::formula::Schema) -> bool {
    holds(&nmatrix_of(b), &[], schema.formula())
}

/// Membership through the axioms: `B` is a CPLe+ structure validating the
/// schemas `logic` adds to positive classical logic.
pub fn characterize(logic: LogicId, b: &SwapStructure) -> bool {
    if !is_swap_for(LogicId::CplePlus, b) {
        return false;
    }
    let set = axioms_of(logic);
    let mut extra: Vec<_> = set
        .schemas
        .iter()
        .filter(|(name, _)| !name.starts_with("Ax") || name == "Ax10")
        .collect();
    extra.sort_by_key(|(_, s)| s.formula().size());
    extra.iter().all(|(_, s)| validates(b, s))
}

/// Componentwise lift of `f` between any two structures that contain the
/// images.
pub fn lift(f: &BaHom, src: &SwapStructure, tgt: &SwapStructure) -> Result<MaMap, SwapError> {
    src.elems()
        .iter()
        .map(|z| {
            let image = z.map(|x| f.apply(x));
            tgt.index_of(&image)
                .ok_or_else(|| SwapError::Undecodable(image.label(tgt.alg(), tgt.mode())))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(MaMap)
}

#[derive(Clone, Debug)]
pub struct KalmanArrow {
    pub src: SwapStructure,
    pub tgt: SwapStructure,
    pub map: MaMap,
}

/// The dual Kalman functor on arrows: `f∗(z) = (f z1, f z2, f z3)`.
pub fn kalman_star(logic: LogicId, f: &BaHom) -> Result<KalmanArrow, SwapError> {
    let src = full_swap(logic, f.src())?;
    let tgt = full_swap(logic, f.tgt())?;
    let map = lift(f, &src, &tgt)?;
    Ok(KalmanArrow { src, tgt, map })
}

/// `f_F : ∏ B_{A_i} → B_{∏ A_i}` with the product on the left indexed as in
/// [`ProductView`].
#[derive(Clone, Debug)]
pub struct ProductIso {
    pub factors: Vec<SwapStructure>,
    pub target: SwapStructure,
    pub map: MaMap,
}

impl ProductIso {
    pub fn view(&self) -> ProductView<'_> {
        let fs: Vec<&dyn MultiAlgebra> = self
            .factors
            .iter()
            .map(|f| f as &dyn MultiAlgebra)
            .collect();
        ProductView::new(sigma().clone(), fs).expect("factors share Σ")
    }
}

pub fn product_iso(logic: LogicId, family: &[BoolAlg]) -> Result<ProductIso, SwapError> {
    if family.is_empty() {
        return Err(SwapError::EmptyFamily);
    }
    let (prod, _) = ba_product(family)?;
    let target = full_swap(logic, prod)?;
    let factors = family
        .iter()
        .map(|&a| full_swap(logic, a))
        .collect::<Result<Vec<_>, _>>()?;
    let offsets: Vec<u32> = family
        .iter()
        .scan(0, |acc, a| Some(std::mem::replace(acc, *acc + a.atoms())))
        .collect();
    let view_size: usize = factors.iter().map(|f| f.size()).product();
    let iso = ProductIso {
        factors,
        target,
        map: MaMap(Vec::new()),
    };
    let view = iso.view();
    let map = (0..view_size)
        .map(|x| {
            let mut z = Snapshot::new(0, 0, 0);
            for (i, &c) in view.coords(x).iter().enumerate() {
                let zi = iso.factors[i].snapshot(c);
                z.z1 |= zi.z1 << offsets[i];
                z.z2 |= zi.z2 << offsets[i];
                z.z3 |= zi.z3 << offsets[i];
            }
            iso.target
                .index_of(&z)
                .ok_or_else(|| SwapError::Undecodable(z.label(&prod, logic.mode())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    drop(view);
    Ok(ProductIso {
        map: MaMap(map),
        ..iso
    })
}

/// `ĥ : B → ∏_{i ∈ I} B_{𝔸₂}` with `I` the atoms of the backing algebra.
#[derive(Clone, Debug)]
pub struct Representation {
    pub index_set: Vec<u32>,
    pub factor: SwapStructure,
    pub map: MaMap,
}

impl Representation {
    pub fn power(&self) -> ProductView<'_> {
        let fs: Vec<&dyn MultiAlgebra> = vec![&self.factor; self.index_set.len()];
        ProductView::new(sigma().clone(), fs).expect("factors share Σ")
    }

    /// Injective homomorphism from `b` into the power.
    pub fn verify(&self, b: &SwapStructure) -> Result<bool, SwapError> {
        Ok(self.map.is_injective() && is_homomorphism(b, &self.power(), &self.map)?)
    }
}

/// `ĥ = f_G⁻¹ ∘ h∗ ∘ g` where `g` includes `b` into the full structure over
/// its algebra and `h` is the atom embedding.
pub fn represent(logic: LogicId, b: &SwapStructure) -> Result<Representation, SwapError> {
    let alg = *b.alg();
    if alg.is_degenerate() {
        return Err(SwapError::Degenerate);
    }
    if !is_swap_for(logic, b) {
        return Err(SwapError::NotInClass(logic));
    }
    let full = full_swap(logic, alg)?;
    let g = lift(&BaHom::identity(alg), b, &full)?;
    let h = tuple_homs(alg, &atom_embedding(alg)?)?;
    let iso = product_iso(logic, &vec![BoolAlg::two(); alg.atoms() as usize])?;
    let h_star = lift(&h, &full, &iso.target)?;
    let mut inverse = vec![usize::MAX; iso.target.size()];
    for (x, &y) in iso.map.0.iter().enumerate() {
        inverse[y] = x;
    }
    let map = g.then(&h_star).then(&MaMap(inverse));
    let factor = iso.factors.into_iter().next().expect("nondegenerate");
    Ok(Representation {
        index_set: (0..alg.atoms()).collect(),
        factor,
        map,
    })
}

/// Kalman's `K(A) = {(a, b) : a ∧ b = 0}` with `(a,b) ∧ (c,d) = (a∧c, b∨d)`,
/// `¬(a,b) = (b,a)` and the Nelson arrow `(a → c, a ∧ d)`.
#[derive(Clone, Debug)]
pub struct KalmanAlg {
    alg: BoolAlg,
    elems: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

pub fn kalman_classic(alg: BoolAlg) -> KalmanAlg {
    let mut elems: Vec<(u32, u32)> = alg
        .elements()
        .flat_map(|a| alg.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| a & b == 0)
        .collect();
    // over 𝔸₂ this is F < f < T
    elems.sort_by_key(|&(a, b)| (a, alg.not(b)));
    let index = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    KalmanAlg { alg, elems, index }
}

impl KalmanAlg {
    pub fn alg(&self) -> &BoolAlg {
        &self.alg
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> (u32, u32) {
        self.elems[i]
    }

    pub fn index_of(&self, e: (u32, u32)) -> Option<usize> {
        self.index.get(&e).copied()
    }

    fn at(&self, e: (u32, u32)) -> usize {
        self.index[&e]
    }

    pub fn label(&self, i: usize) -> String {
        let (a, b) = self.elems[i];
        if self.alg.atoms() == 1 {
            match (a, b) {
                (0, 1) => return "F".into(),
                (0, 0) => return "f".into(),
                _ => return "T".into(),
            }
        }
        format!("({},{})", self.alg.format(a), self.alg.format(b))
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        let ((a, b), (c, d)) = (self.elems[x], self.elems[y]);
        self.at((self.alg.meet(a, c), self.alg.join(b, d)))
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        let ((a, b), (c, d)) = (self.elems[x], self.elems[y]);
        self.at((self.alg.join(a, c), self.alg.meet(b, d)))
    }

    pub fn neg(&self, x: usize) -> usize {
        let (a, b) = self.elems[x];
        self.at((b, a))
    }

    pub fn imp(&self, x: usize, y: usize) -> usize {
        let ((a, _), (c, d)) = (self.elems[x], self.elems[y]);
        self.at((self.alg.imp(a, c), self.alg.meet(a, d)))
    }

    /// `x →_J y = (x → y) ∧ (¬y → ¬x)`.
    pub fn j_imp(&self, x: usize, y: usize) -> usize {
        self.meet(self.imp(x, y), self.imp(self.neg(y), self.neg(x)))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    pub fn bottom(&self) -> usize {
        self.at((self.alg.zero(), self.alg.one()))
    }

    pub fn top(&self) -> usize {
        self.at((self.alg.one(), self.alg.zero()))
    }

    pub fn center(&self) -> usize {
        self.at((self.alg.zero(), self.alg.zero()))
    }

    /// Failed centred Kleene algebra laws, described.
    pub fn law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.size();
        let (bot, top, c) = (self.bottom(), self.top(), self.center());
        if self.neg(c) != c {
            out.push("center is not fixed by ¬".into());
        }
        if self.neg(bot) != top {
            out.push("¬0 ≠ 1".into());
        }
        for x in 0..n {
            if self.neg(self.neg(x)) != x {
                out.push(format!("¬¬{} ≠ {}", self.label(x), self.label(x)));
            }
            if !self.leq(bot, x) || !self.leq(x, top) {
                out.push(format!("{} outside the bounds", self.label(x)));
            }
            for y in 0..n {
                let (lx, ly) = (self.label(x), self.label(y));
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    out.push(format!("commutativity fails at {lx}, {ly}"));
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    out.push(format!("absorption fails at {lx}, {ly}"));
                }
                if self.neg(self.meet(x, y)) != self.join(self.neg(x), self.neg(y)) {
                    out.push(format!("De Morgan fails at {lx}, {ly}"));
                }
                if !self.leq(self.meet(x, self.neg(x)), self.join(y, self.neg(y))) {
                    out.push(format!("Kleene law fails at {lx}, {ly}"));
                }
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        out.push(format!(
                            "distributivity fails at {lx}, {ly}, {}",
                            self.label(z)
                        ));
                    }
                }
            }
        }
        out
    }
}

/// `∗(a, b) = (~a, ~b)` from `K(A)` onto the pair universe, read inside the
/// full LFI1∘ structure over `A`.
#[derive(Clone, Debug)]
pub struct Duality {
    pub kalman: KalmanAlg,
    pub twist: SwapStructure,
    pub star: Vec<usize>,
}

pub fn duality_star(alg: BoolAlg) -> Result<Duality, SwapError> {
    let kalman = kalman_classic(alg);
    let twist = full_swap(LogicId::Lfi1o, alg)?;
    let star = (0..kalman.size())
        .map(|i| {
            let (a, b) = kalman.elem(i);
            let z = Snapshot::pair(&alg, alg.not(a), alg.not(b));
            twist
                .index_of(&z)
                .ok_or_else(|| SwapError::Undecodable(z.label(&alg, Mode::Pair)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Duality {
        kalman,
        twist,
        star,
    })
}

impl Duality {
    fn op(&self, op: usize, args: &[usize]) -> usize {
        self.twist.cell(op, args)[0]
    }

    /// Failed equations, described. Empty when ∗ is a bijection that swaps
    /// ∧ and ∨, commutes with ¬ and maps T, f, F to F, t, T.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (k, alg) = (&self.kalman, *self.kalman.alg());
        let mut hit = vec![false; self.twist.size()];
        for &y in &self.star {
            hit[y] = true;
        }
        if self.star.len() != self.twist.size() || hit.iter().any(|h| !h) {
            out.push("∗ is not a bijection".into());
        }
        let at = |z: Snapshot| self.twist.index_of(&z);
        let (one, zero) = (alg.one(), alg.zero());
        let constants = [
            (k.top(), Snapshot::pair(&alg, zero, one), "∗T = F"),
            (k.center(), Snapshot::pair(&alg, one, one), "∗f = t"),
            (k.bottom(), Snapshot::pair(&alg, one, zero), "∗F = T"),
        ];
        for (x, want, name) in constants {
            if Some(self.star[x]) != at(want) {
                out.push(format!("{name} fails"));
            }
        }
        for x in 0..k.size() {
            if self.star[k.neg(x)] != self.op(NEG, &[self.star[x]]) {
                out.push(format!("∗¬z = ¬∗z fails at {}", k.label(x)));
            }
            for y in 0..k.size() {
                let (sx, sy) = (self.star[x], self.star[y]);
                if self.star[k.meet(x, y)] != self.op(OR, &[sx, sy]) {
                    out.push(format!(
                        "∗(z∧w) = ∗z∨∗w fails at {}, {}",
                        k.label(x),
                        k.label(y)
                    ));
                }
                if self.star[k.join(x, y)] != self.op(AND, &[sx, sy]) {
                    out.push(format!(
                        "∗(z∨w) = ∗z∧∗w fails at {}, {}",
                        k.label(x),
                        k.label(y)
                    ));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BoolAlg {
        BoolAlg::two()
    }

    fn labels(b: &SwapStructure, op: usize, args: &[&str]) -> Vec<String> {
        let idx: Vec<usize> = args
            .iter()
            .map(|a| b.labels().iter().position(|l| l == a).unwrap())
            .collect();
        b.cell(op, &idx).iter().map(|&u| b.label(u)).collect()
    }

    #[test]
    fn logic_names_round_trip() {
        for l in LogicId::ALL {
            assert_eq!(l.name().parse::<LogicId>().unwrap(), l);
        }
        assert_eq!("J3".parse::<LogicId>().unwrap(), LogicId::Lfi1o);
        assert_eq!("cplep".parse::<LogicId>().unwrap(), LogicId::CplePlus);
        assert!("K".parse::<LogicId>().is_err());
    }

    #[test]
    fn inclusion_order() {
        assert!(LogicId::Cple.extends(LogicId::Lfi1o));
        assert!(LogicId::Cple.extends(LogicId::Ciore));
        assert!(LogicId::Cple.extends(LogicId::CplePlus));
        assert!(!LogicId::Lfi1o.extends(LogicId::Ciore));
        assert!(!LogicId::MbC.extends(LogicId::Ci));
        for w in LogicId::ALL.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn named_universes() {
        let names = |l| {
            universe(l, &two())
                .unwrap()
                .iter()
                .map(|z| z.label(&two(), LogicId::mode(l)))
                .collect::<Vec<_>>()
        };
        assert_eq!(names(LogicId::MbC), ["T", "t", "t₀", "F", "f₀"]);
        assert_eq!(names(LogicId::MbCciw), ["T", "t", "F"]);
        assert_eq!(names(LogicId::Cple), ["T", "F"]);
        assert_eq!(universe(LogicId::CplePlus, &two()).unwrap().len(), 8);
    }

    #[test]
    fn sample_cells() {
        let mbc = full_swap(LogicId::MbC, two()).unwrap();
        assert_eq!(labels(&mbc, NEG, &["T"]), ["F", "f₀"]);
        let ciw = full_swap(LogicId::MbCciw, two()).unwrap();
        assert_eq!(labels(&ciw, AND, &["T", "T"]), ["T", "t"]);
        let lfi = full_swap(LogicId::Lfi1o, two()).unwrap();
        assert_eq!(labels(&lfi, IMP, &["t", "F"]), ["F"]);
        assert_eq!(labels(&lfi, CON, &["t"]), ["F"]);
        let ciore = full_swap(LogicId::Ciore, two()).unwrap();
        assert_eq!(labels(&ciore, AND, &["T", "t"]), ["T"]);
    }

    #[test]
    fn rule_cells_match_clause_filter() {
        for l in LogicId::ALL {
            let b = full_swap(l, powerset_algebra(2).unwrap()).unwrap();
            for op in 0..5 {
                let n = sigma().arity(op);
                let mut args = vec![0; n];
                for r in 0..tuple_count(b.size(), n) {
                    unrank(r, b.size(), &mut args);
                    let (z, w) = (b.snapshot(args[0]), b.snapshot(args[n - 1]));
                    let want: Vec<usize> = (0..b.size())
                        .filter(|&u| allowed(l, b.alg(), op, &z, &w, &b.snapshot(u)))
                        .collect();
                    assert_eq!(*b.cell(op, &args), want[..]);
                    assert!(!want.is_empty());
                }
            }
        }
    }

    #[test]
    fn mbc_fails_ciw() {
        let mbc = full_swap(LogicId::MbC, two()).unwrap();
        assert!(is_swap_for(LogicId::MbC, &mbc));
        assert!(!is_swap_for(LogicId::MbCciw, &mbc));
    }

    #[test]
    fn restriction_to_a_smaller_universe() {
        let mbc = full_swap(LogicId::MbC, two()).unwrap();
        let ciw = mbc.restrict(&[0, 1, 3]).unwrap();
        assert!(is_swap_for(
            LogicId::MbCciw,
            &ciw.retag(LogicId::MbCciw).unwrap()
        ));
        // t₀ alone: ¬t₀ needs a first coordinate 0
        assert!(matches!(
            mbc.restrict(&[2]),
            Err(SwapError::NotClosed { .. })
        ));
    }

    #[test]
    fn decoding_a_relabelled_structure() {
        let b = full_swap(LogicId::MbC, two()).unwrap();
        let bare = b.materialize();
        let d = decode_swap(LogicId::MbC, &bare).unwrap().unwrap();
        assert_eq!(d.elems(), b.elems());
        assert!(!is_swap_up_to_iso(LogicId::MbCciw, &bare).unwrap());
        let terminal = MultiAlg::terminal(sigma().clone());
        // the degenerate algebra has a single snapshot
        assert!(is_swap_up_to_iso(LogicId::CplePlus, &terminal).unwrap());
    }

    #[test]
    fn kalman_three_elements() {
        let k = kalman_classic(two());
        let names: Vec<String> = (0..3).map(|i| k.label(i)).collect();
        assert_eq!(names, ["F", "f", "T"]);
        assert_eq!(k.neg(1), 1);
        assert!(k.law_violations().is_empty());
    }

    #[test]
    fn duality_over_two() {
        let d = duality_star(two()).unwrap();
        let f = d.kalman.center();
        assert_eq!(d.twist.label(d.star[f]), "t");
        assert!(d.violations().is_empty());
    }
}
