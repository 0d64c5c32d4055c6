//! Finite multialgebras: homomorphisms, products, direct images, epi-mono
//! factorization, multicongruences and quotients.

use std::borrow::Cow;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exec::{rank, unrank, Exec};
use crate::formula::{OpSym, Signature};

/// Default cap on the number of table cells of a materialised product.
pub const DEFAULT_MAX_CELLS: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaError {
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("operator {op} has an empty cell at {args:?}")]
    EmptyCell { op: String, args: Vec<usize> },
    #[error("operator {op} has a table of the wrong size")]
    WrongTableSize { op: String },
    #[error("index {0} is outside the carrier")]
    OutOfRange(usize),
    #[error("map has {got} entries, expected {expected}")]
    BadMapLength { expected: usize, got: usize },
    #[error("product would have {cells} table cells, over the cap of {cap}")]
    TooLarge { cells: u128, cap: u128 },
    #[error("embedding is not injective")]
    NotInjective,
    #[error("map is not a homomorphism: operator {op} fails at {args:?}")]
    NotHomomorphism { op: String, args: Vec<usize> },
    #[error("relation is not a partition of the carrier")]
    NotPartition,
    #[error("relation is not a multicongruence")]
    NotMulticongruence,
    #[error("invalid multialgebra JSON: {0}")]
    Json(String),
}

/// Read access to a finite multialgebra. Cells are sorted and nonempty.
pub trait MultiAlgebra: Sync {
    fn signature(&self) -> &Signature;
    fn size(&self) -> usize;
    fn cell(&self, op: usize, args: &[usize]) -> Cow<'_, [usize]>;
    fn label(&self, x: usize) -> String;

    fn contains(&self, op: usize, args: &[usize], x: usize) -> bool {
        self.cell(op, args).binary_search(&x).is_ok()
    }
}

impl<T: MultiAlgebra + ?Sized> MultiAlgebra for &T {
    fn signature(&self) -> &Signature {
        (**self).signature()
    }
    fn size(&self) -> usize {
        (**self).size()
    }
    fn cell(&self, op: usize, args: &[usize]) -> Cow<'_, [usize]> {
        (**self).cell(op, args)
    }
    fn label(&self, x: usize) -> String {
        (**self).label(x)
    }
    fn contains(&self, op: usize, args: &[usize], x: usize) -> bool {
        (**self).contains(op, args, x)
    }
}

pub fn tuple_count(k: usize, arity: usize) -> usize {
    k.pow(arity as u32)
}

/// Number of table cells over a carrier of size `k`.
pub fn table_cells(sig: &Signature, k: u128) -> u128 {
    sig.ops()
        .iter()
        .map(|o| k.saturating_pow(o.arity as u32))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Product cap: `SWAPKIT_MAX_CELLS` if set, else [`DEFAULT_MAX_CELLS`].
pub fn max_cells() -> u128 {
    std::env::var("SWAPKIT_MAX_CELLS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}

pub fn labels_of(m: &dyn MultiAlgebra) -> Vec<String> {
    (0..m.size()).map(|x| m.label(x)).collect()
}

/// A multialgebra stored as explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiAlg {
    sig: Signature,
    labels: Vec<String>,
    /// `tables[op][rank(args)]`
    tables: Vec<Vec<Vec<usize>>>,
}

impl MultiAlg {
    /// Cells are sorted and deduplicated; empty cells are rejected.
    pub fn new(
        sig: Signature,
        labels: Vec<String>,
        mut tables: Vec<Vec<Vec<usize>>>,
    ) -> Result<MultiAlg, MaError> {
        let k = labels.len();
        if tables.len() != sig.len() {
            return Err(MaError::SignatureMismatch);
        }
        for (o, (sym, table)) in sig.ops().iter().zip(tables.iter_mut()).enumerate() {
            if table.len() != tuple_count(k, sym.arity) {
                return Err(MaError::WrongTableSize {
                    op: sym.name.clone(),
                });
            }
            for (r, cell) in table.iter_mut().enumerate() {
                cell.sort_unstable();
                cell.dedup();
                if cell.is_empty() {
                    let mut args = vec![0; sig.arity(o)];
                    unrank(r, k, &mut args);
                    return Err(MaError::EmptyCell {
                        op: sym.name.clone(),
                        args,
                    });
                }
                if let Some(&x) = cell.iter().find(|&&x| x >= k) {
                    return Err(MaError::OutOfRange(x));
                }
            }
        }
        Ok(MultiAlg {
            sig,
            labels,
            tables,
        })
    }

    pub fn from_fn<F>(sig: Signature, labels: Vec<String>, f: F) -> Result<MultiAlg, MaError>
    where
        F: Fn(usize, &[usize]) -> Vec<usize>,
    {
        let k = labels.len();
        let tables = (0..sig.len())
            .map(|o| {
                let mut args = vec![0; sig.arity(o)];
                (0..tuple_count(k, sig.arity(o)))
                    .map(|r| {
                        unrank(r, k, &mut args);
                        f(o, &args)
                    })
                    .collect()
            })
            .collect();
        MultiAlg::new(sig, labels, tables)
    }

    pub fn materialize(m: &dyn MultiAlgebra) -> MultiAlg {
        MultiAlg::from_fn(m.signature().clone(), labels_of(m), |o, args| {
            m.cell(o, args).into_owned()
        })
        .expect("cells of a multialgebra are nonempty")
    }

    /// The terminal object 𝟏: one element, every cell `{*}`.
    pub fn terminal(sig: Signature) -> MultiAlg {
        MultiAlg::from_fn(sig, vec!["*".into()], |_, _| vec![0]).unwrap()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> MultiAlg {
        assert_eq!(labels.len(), self.labels.len());
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self, op: usize) -> &[Vec<usize>] {
        &self.tables[op]
    }

    pub fn to_json(&self) -> Value {
        let k = self.labels.len();
        let mut ops = Map::new();
        for (o, sym) in self.sig.ops().iter().enumerate() {
            let mut table = Map::new();
            let mut args = vec![0; sym.arity];
            for (r, cell) in self.tables[o].iter().enumerate() {
                unrank(r, k, &mut args);
                let key = args
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                table.insert(key, json!(cell));
            }
            ops.insert(
                sym.name.clone(),
                json!({"arity": sym.arity, "table": table}),
            );
        }
        json!({"signature": self.sig, "carrier": self.labels, "ops": ops})
    }

    pub fn from_json(v: &Value) -> Result<MultiAlg, MaError> {
        #[derive(Deserialize, Serialize)]
        struct OpJson {
            arity: usize,
            table: std::collections::HashMap<String, Vec<usize>>,
        }
        #[derive(Deserialize, Serialize)]
        struct MaJson {
            signature: Vec<OpSym>,
            carrier: Vec<String>,
            ops: std::collections::HashMap<String, OpJson>,
        }
        let err = |m: String| MaError::Json(m);
        let raw: MaJson = serde_json::from_value(v.clone()).map_err(|e| err(e.to_string()))?;
        let sig = Signature::new(raw.signature).map_err(|e| err(e.to_string()))?;
        let k = raw.carrier.len();
        let mut tables = Vec::new();
        for sym in sig.ops() {
            let op = raw
                .ops
                .get(&sym.name)
                .ok_or_else(|| err(format!("missing operator {}", sym.name)))?;
            if op.arity != sym.arity {
                return Err(err(format!(
                    "arity of {} disagrees with the signature",
                    sym.name
                )));
            }
            let mut table = vec![Vec::new(); tuple_count(k, sym.arity)];
            for (key, cell) in &op.table {
                let args: Vec<usize> = if key.is_empty() {
                    vec![]
                } else {
                    key.split(',')
                        .map(|s| {
                            s.trim()
                                .parse()
                                .map_err(|_| err(format!("bad tuple key {key:?}")))
                        })
                        .collect::<Result<_, _>>()?
                };
                if args.len() != sym.arity || args.iter().any(|&a| a >= k) {
                    return Err(err(format!("bad tuple key {key:?} for {}", sym.name)));
                }
                table[rank(&args, k)] = cell.clone();
            }
            tables.push(table);
        }
        if raw.ops.len() != sig.len() {
            return Err(err("operator not in the signature".into()));
        }
        MultiAlg::new(sig, raw.carrier, tables)
    }
}

impl MultiAlgebra for MultiAlg {
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn size(&self) -> usize {
        self.labels.len()
    }
    fn cell(&self, op: usize, args: &[usize]) -> Cow<'_, [usize]> {
        Cow::Borrowed(&self.tables[op][rank(args, self.labels.len())])
    }
    fn label(&self, x: usize) -> String {
        self.labels[x].clone()
    }
}

/// A total map between carriers, given by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MaMap(pub Vec<usize>);

impl MaMap {
    pub fn identity(n: usize) -> MaMap {
        MaMap((0..n).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MaMap) -> MaMap {
        MaMap(self.0.iter().map(|&x| next.apply(x)).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().all(|&y| seen.insert(y))
    }

    pub fn is_surjective(&self, target_size: usize) -> bool {
        let mut seen = vec![false; target_size];
        for &y in &self.0 {
            if y < target_size {
                seen[y] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }
}

fn check_map(src: &dyn MultiAlgebra, tgt: &dyn MultiAlgebra, f: &MaMap) -> Result<(), MaError> {
    if src.signature() != tgt.signature() {
        return Err(MaError::SignatureMismatch);
    }
    if f.0.len() != src.size() {
        return Err(MaError::BadMapLength {
            expected: src.size(),
            got: f.0.len(),
        });
    }
    if let Some(&y) = f.0.iter().find(|&&y| y >= tgt.size()) {
        return Err(MaError::OutOfRange(y));
    }
    Ok(())
}

/// First tuple where `f[c(a⃗)] ⊆ c(f(a⃗))` fails (or `=` when `full`).
pub fn hom_counterexample(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
    full: bool,
    exec: Exec,
) -> Result<Option<(usize, Vec<usize>)>, MaError> {
    check_map(src, tgt, f)?;
    let k = src.size();
    for o in 0..src.signature().len() {
        let n = src.signature().arity(o);
        let bad = exec.position(tuple_count(k, n), |r| {
            let mut args = vec![0; n];
            unrank(r, k, &mut args);
            let image: Vec<usize> = args.iter().map(|&a| f.apply(a)).collect();
            let cell = src.cell(o, &args);
            if full {
                let mut mapped: Vec<usize> = cell.iter().map(|&x| f.apply(x)).collect();
                mapped.sort_unstable();
                mapped.dedup();
                *tgt.cell(o, &image) != mapped[..]
            } else {
                !cell.iter().all(|&x| tgt.contains(o, &image, f.apply(x)))
            }
        });
        if let Some(r) = bad {
            let mut args = vec![0; n];
            unrank(r, k, &mut args);
            return Ok(Some((o, args)));
        }
    }
    Ok(None)
}

pub fn is_homomorphism(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<bool, MaError> {
    Ok(hom_counterexample(src, tgt, f, false, Exec::default())?.is_none())
}

pub fn is_full_homomorphism(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<bool, MaError> {
    Ok(hom_counterexample(src, tgt, f, true, Exec::default())?.is_none())
}

/// Bijective full homomorphism.
pub fn is_isomorphism(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<bool, MaError> {
    check_map(src, tgt, f)?;
    Ok(src.size() == tgt.size() && f.is_injective() && is_full_homomorphism(src, tgt, f)?)
}

/// Surjective homomorphism.
pub fn is_epimorphism(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<bool, MaError> {
    check_map(src, tgt, f)?;
    Ok(f.is_surjective(tgt.size()) && is_homomorphism(src, tgt, f)?)
}

/// Injective homomorphism.
pub fn is_monomorphism(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<bool, MaError> {
    check_map(src, tgt, f)?;
    Ok(f.is_injective() && is_homomorphism(src, tgt, f)?)
}

/// Whether every cell of `b` maps into the matching cell of `a` under the
/// injective `embedding`.
pub fn is_submultialgebra(
    b: &dyn MultiAlgebra,
    a: &dyn MultiAlgebra,
    embedding: &MaMap,
) -> Result<bool, MaError> {
    check_map(b, a, embedding)?;
    if !embedding.is_injective() {
        return Err(MaError::NotInjective);
    }
    is_homomorphism(b, a, embedding)
}

/// Product computed on demand. Element indices are mixed-radix over the
/// factor carriers, first factor most significant.
pub struct ProductView<'a> {
    factors: Vec<&'a dyn MultiAlgebra>,
    sig: Signature,
    size: usize,
}

impl<'a> ProductView<'a> {
    pub fn new(
        sig: Signature,
        factors: Vec<&'a dyn MultiAlgebra>,
    ) -> Result<ProductView<'a>, MaError> {
        if factors.iter().any(|f| *f.signature() != sig) {
            return Err(MaError::SignatureMismatch);
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.size()))
            .ok_or(MaError::TooLarge {
                cells: u128::MAX,
                cap: usize::MAX as u128,
            })?;
        Ok(ProductView { factors, sig, size })
    }

    pub fn factors(&self) -> &[&'a dyn MultiAlgebra] {
        &self.factors
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = x % f.size();
            x /= f.size();
        }
        out
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, f)| acc * f.size() + c)
    }

    /// `π_i` as a map.
    pub fn projection(&self, i: usize) -> MaMap {
        MaMap((0..self.size).map(|x| self.coords(x)[i]).collect())
    }

    fn factor_args(&self, args: &[usize]) -> Vec<Vec<usize>> {
        let cs: Vec<Vec<usize>> = args.iter().map(|&a| self.coords(a)).collect();
        (0..self.factors.len())
            .map(|i| cs.iter().map(|c| c[i]).collect())
            .collect()
    }
}

impl MultiAlgebra for ProductView<'_> {
    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn size(&self) -> usize {
        self.size
    }

    fn cell(&self, op: usize, args: &[usize]) -> Cow<'_, [usize]> {
        let fargs = self.factor_args(args);
        let mut out = vec![0usize];
        for (f, a) in self.factors.iter().zip(&fargs) {
            let c = f.cell(op, a);
            out = out
                .iter()
                .flat_map(|&acc| c.iter().map(move |&y| acc * f.size() + y))
                .collect();
        }
        Cow::Owned(out)
    }

    fn contains(&self, op: usize, args: &[usize], x: usize) -> bool {
        let xs = self.coords(x);
        self.factor_args(args)
            .iter()
            .zip(&self.factors)
            .zip(xs)
            .all(|((a, f), xi)| f.contains(op, a, xi))
    }

    fn label(&self, x: usize) -> String {
        if self.factors.is_empty() {
            return "*".into();
        }
        let parts: Vec<String> = self
            .coords(x)
            .iter()
            .zip(&self.factors)
            .map(|(&c, f)| f.label(c))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Materialised product with its projections. The empty family gives 𝟏.
pub fn ma_product(
    sig: &Signature,
    factors: &[&dyn MultiAlgebra],
) -> Result<(MultiAlg, Vec<MaMap>), MaError> {
    let size: u128 = factors.iter().map(|f| f.size() as u128).product();
    let cells = table_cells(sig, size);
    let cap = max_cells();
    if cells > cap {
        return Err(MaError::TooLarge { cells, cap });
    }
    let view = ProductView::new(sig.clone(), factors.to_vec())?;
    let projections = (0..factors.len()).map(|i| view.projection(i)).collect();
    Ok((MultiAlg::materialize(&view), projections))
}

/// The direct image f(A) as a submultialgebra of the target, with the
/// inclusion of its carrier into the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectImage {
    pub alg: MultiAlg,
    pub inclusion: MaMap,
}

pub fn direct_image(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<DirectImage, MaError> {
    if let Some((o, args)) = hom_counterexample(src, tgt, f, false, Exec::default())? {
        return Err(MaError::NotHomomorphism {
            op: src.signature().ops()[o].name.clone(),
            args,
        });
    }
    let image: Vec<usize> =
        f.0.iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
    let pos = |y: usize| image.binary_search(&y).unwrap();
    let m = image.len();
    let k = src.size();
    let sig = src.signature().clone();
    let mut tables: Vec<Vec<BTreeSet<usize>>> = sig
        .ops()
        .iter()
        .map(|o| vec![BTreeSet::new(); tuple_count(m, o.arity)])
        .collect();
    for (o, table) in tables.iter_mut().enumerate() {
        let n = sig.arity(o);
        let mut args = vec![0; n];
        for r in 0..tuple_count(k, n) {
            unrank(r, k, &mut args);
            let key: Vec<usize> = args.iter().map(|&a| pos(f.apply(a))).collect();
            table[rank(&key, m)].extend(src.cell(o, &args).iter().map(|&x| pos(f.apply(x))));
        }
    }
    let tables = tables
        .into_iter()
        .map(|t| t.into_iter().map(|c| c.into_iter().collect()).collect())
        .collect();
    let labels = image.iter().map(|&y| tgt.label(y)).collect();
    let alg = MultiAlg::new(sig, labels, tables)?;
    let inclusion = MaMap(image);
    debug_assert!(is_submultialgebra(&alg, tgt, &inclusion).unwrap_or(false));
    Ok(DirectImage { alg, inclusion })
}

/// `f = mono ∘ epi` through the direct image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub image: MultiAlg,
    pub epi: MaMap,
    pub mono: MaMap,
}

pub fn epi_mono_factorize(
    src: &dyn MultiAlgebra,
    tgt: &dyn MultiAlgebra,
    f: &MaMap,
) -> Result<Factorization, MaError> {
    let DirectImage { alg, inclusion } = direct_image(src, tgt, f)?;
    let epi = MaMap(
        f.0.iter()
            .map(|&y| inclusion.0.binary_search(&y).unwrap())
            .collect(),
    );
    Ok(Factorization {
        image: alg,
        epi,
        mono: inclusion,
    })
}

/// A partition of a carrier, stored as a block index per element. Blocks are
/// numbered in order of their first element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivRel {
    block: Vec<usize>,
    count: usize,
}

impl EquivRel {
    pub fn identity(n: usize) -> EquivRel {
        EquivRel {
            block: (0..n).collect(),
            count: n,
        }
    }

    pub fn from_block_ids(ids: &[usize]) -> EquivRel {
        let mut renumber = std::collections::HashMap::new();
        let block = ids
            .iter()
            .map(|id| {
                let next = renumber.len();
                *renumber.entry(*id).or_insert(next)
            })
            .collect();
        EquivRel {
            block,
            count: renumber.len(),
        }
    }

    /// Fails unless every element of `0..n` is in exactly one block.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<EquivRel, MaError> {
        let mut ids = vec![usize::MAX; n];
        for (b, members) in blocks.iter().enumerate() {
            for &x in members {
                if x >= n || ids[x] != usize::MAX {
                    return Err(MaError::NotPartition);
                }
                ids[x] = b;
            }
        }
        if ids.contains(&usize::MAX) || blocks.iter().any(|b| b.is_empty()) {
            return Err(MaError::NotPartition);
        }
        Ok(EquivRel::from_block_ids(&ids))
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.count
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block[x] == self.block[y]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(x);
        }
        out
    }
}

/// For each operator, the set of blocks hit by the cells over each block
/// tuple, unioned over all representatives. Also reports whether all
/// representatives agreed.
fn block_tables(a: &dyn MultiAlgebra, theta: &EquivRel) -> (Vec<Vec<BTreeSet<usize>>>, bool) {
    let k = a.size();
    let m = theta.num_blocks();
    let sig = a.signature();
    let mut agree = true;
    let mut tables = Vec::new();
    for o in 0..sig.len() {
        let n = sig.arity(o);
        let mut table: Vec<Option<BTreeSet<usize>>> = vec![None; tuple_count(m, n)];
        let mut args = vec![0; n];
        for r in 0..tuple_count(k, n) {
            unrank(r, k, &mut args);
            let key: Vec<usize> = args.iter().map(|&x| theta.block_of(x)).collect();
            let blocks: BTreeSet<usize> = a
                .cell(o, &args)
                .iter()
                .map(|&x| theta.block_of(x))
                .collect();
            let slot = &mut table[rank(&key, m)];
            match slot {
                None => *slot = Some(blocks),
                Some(prev) => {
                    if *prev != blocks {
                        agree = false;
                        prev.extend(blocks);
                    }
                }
            }
        }
        if n == 0 {
            agree &= table.iter().flatten().all(|s| s.len() == 1);
        }
        tables.push(table.into_iter().map(|s| s.unwrap_or_default()).collect());
    }
    (tables, agree)
}

/// Clause (ii): related tuples have cells meeting the same blocks. Clause
/// (iii): each constant's cell lies within one block.
pub fn is_multicongruence(theta: &EquivRel, a: &dyn MultiAlgebra) -> Result<bool, MaError> {
    if theta.len() != a.size() {
        return Err(MaError::NotPartition);
    }
    Ok(block_tables(a, theta).1)
}

/// A/Θ with the canonical map. Each cell is the union over all
/// representative tuples.
pub fn quotient(a: &dyn MultiAlgebra, theta: &EquivRel) -> Result<(MultiAlg, MaMap), MaError> {
    if theta.len() != a.size() {
        return Err(MaError::NotPartition);
    }
    let (tables, agree) = block_tables(a, theta);
    if !agree {
        return Err(MaError::NotMulticongruence);
    }
    let labels = theta
        .blocks()
        .iter()
        .map(|b| {
            format!(
                "{{{}}}",
                b.iter().map(|&x| a.label(x)).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    let tables = tables
        .into_iter()
        .map(|t| t.into_iter().map(|c| c.into_iter().collect()).collect())
        .collect();
    let q = MultiAlg::new(a.signature().clone(), labels, tables)?;
    let p = MaMap((0..a.size()).map(|x| theta.block_of(x)).collect());
    Ok((q, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z3 with a non-deterministic successor: s(x) = {x+1, x+2}.
    fn cyclic() -> MultiAlg {
        let sig = Signature::new(vec![OpSym {
            name: "s".into(),
            arity: 1,
        }])
        .unwrap();
        MultiAlg::from_fn(sig, vec!["0".into(), "1".into(), "2".into()], |_, a| {
            vec![(a[0] + 1) % 3, (a[0] + 2) % 3]
        })
        .unwrap()
    }

    #[test]
    fn empty_cells_are_rejected() {
        let sig = Signature::new(vec![OpSym {
            name: "s".into(),
            arity: 1,
        }])
        .unwrap();
        let e = MultiAlg::new(sig, vec!["a".into()], vec![vec![vec![]]]).unwrap_err();
        assert_eq!(
            e,
            MaError::EmptyCell {
                op: "s".into(),
                args: vec![0]
            }
        );
    }

    #[test]
    fn identity_is_full_iso() {
        let a = cyclic();
        let id = MaMap::identity(3);
        assert!(is_full_homomorphism(&a, &a, &id).unwrap());
        assert!(is_isomorphism(&a, &a, &id).unwrap());
        assert!(is_epimorphism(&a, &a, &id).unwrap());
        assert!(is_submultialgebra(&a, &a, &id).unwrap());
    }

    #[test]
    fn terminal_and_products() {
        let a = cyclic();
        let (one, proj) = ma_product(a.signature(), &[]).unwrap();
        assert_eq!(one.size(), 1);
        assert!(proj.is_empty());
        assert_eq!(one, MultiAlg::terminal(a.signature().clone()));
        let (p, proj) = ma_product(a.signature(), &[&a, &a]).unwrap();
        assert_eq!(p.size(), 9);
        for pi in &proj {
            assert!(is_full_homomorphism(&p, &a, pi).unwrap());
        }
        // every map into 𝟏 is a full homomorphism
        assert!(is_full_homomorphism(&a, &one, &MaMap(vec![0; 3])).unwrap());
    }

    #[test]
    fn quotient_by_everything() {
        let a = cyclic();
        let theta = EquivRel::from_blocks(3, &[vec![0, 1, 2]]).unwrap();
        assert!(is_multicongruence(&theta, &a).unwrap());
        let (q, p) = quotient(&a, &theta).unwrap();
        assert_eq!(q.size(), 1);
        assert!(is_full_homomorphism(&a, &q, &p).unwrap());
        let split = EquivRel::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        // s(0) and s(1) both meet both blocks
        assert!(is_multicongruence(&split, &a).unwrap());
        let det = MultiAlg::from_fn(a.signature().clone(), labels_of(&a), |_, x| {
            vec![(x[0] + 1) % 3]
        })
        .unwrap();
        // 0 ~ 1 but s(0) = 1 and s(1) = 2 are not related
        assert!(!is_multicongruence(&split, &det).unwrap());
        assert_eq!(
            quotient(&det, &split).unwrap_err(),
            MaError::NotMulticongruence
        );
        assert!(EquivRel::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(EquivRel::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn constants_need_a_single_block() {
        let sig = Signature::new(vec![OpSym {
            name: "c".into(),
            arity: 0,
        }])
        .unwrap();
        let a = MultiAlg::new(sig, vec!["x".into(), "y".into()], vec![vec![vec![0, 1]]]).unwrap();
        assert!(!is_multicongruence(&EquivRel::identity(2), &a).unwrap());
        assert!(is_multicongruence(&EquivRel::from_block_ids(&[0, 0]), &a).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let a = cyclic();
        let back = MultiAlg::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
        let mut v = a.to_json();
        v["ops"]["s"]["table"]["0"] = json!([]);
        assert!(MultiAlg::from_json(&v).is_err());
    }

    #[test]
    fn factorization_of_constant_map() {
        let a = cyclic();
        let (one, _) = ma_product(a.signature(), &[]).unwrap();
        let f = MaMap(vec![0, 0, 0]);
        let fac = epi_mono_factorize(&a, &one, &f).unwrap();
        assert_eq!(fac.image.size(), 1);
        assert_eq!(fac.epi.then(&fac.mono), f);
        assert!(is_epimorphism(&a, &fac.image, &fac.epi).unwrap());
        assert!(is_monomorphism(&fac.image, &one, &fac.mono).unwrap());
    }
}
