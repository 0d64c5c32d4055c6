//! Finite Boolean algebras as powersets of an atom set, their homomorphisms
//! and products, classical implicative lattices, and the A* duplication.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::BinOp;

/// Largest supported atom count; elements are stored as `u32` masks.
pub const MAX_ATOMS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaError {
    #[error("{0} atoms exceeds the cap of {MAX_ATOMS}")]
    TooManyAtoms(u32),
    #[error("the one-element algebra has no atoms to embed by")]
    Degenerate,
    #[error("map has {got} entries, source has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("value {0} is not an element of the target algebra")]
    OutOfRange(u32),
    #[error("map does not preserve {0}")]
    NotHomomorphism(String),
}

/// The powerset algebra on `atoms` atoms. Element `x` is the set of atoms
/// whose bits are set; atom `i` is `1 << i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoolAlg {
    atoms: u32,
}

/// The 2^n-element Boolean algebra. `n = 0` gives the one-element algebra.
pub fn powerset_algebra(n: u32) -> Result<BoolAlg, BaError> {
    if n > MAX_ATOMS {
        return Err(BaError::TooManyAtoms(n));
    }
    Ok(BoolAlg { atoms: n })
}

impl BoolAlg {
    /// The two-element algebra 𝔸₂.
    pub fn two() -> BoolAlg {
        BoolAlg { atoms: 1 }
    }

    pub fn atoms(&self) -> u32 {
        self.atoms
    }

    pub fn size(&self) -> usize {
        1usize << self.atoms
    }

    pub fn is_degenerate(&self) -> bool {
        self.atoms == 0
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        ((1u64 << self.atoms) - 1) as u32
    }

    pub fn contains(&self, x: u32) -> bool {
        x & !self.one() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + Clone {
        0..=self.one()
    }

    pub fn atom(&self, i: u32) -> u32 {
        debug_assert!(i < self.atoms);
        1 << i
    }

    pub fn meet(&self, a: u32, b: u32) -> u32 {
        a & b
    }

    pub fn join(&self, a: u32, b: u32) -> u32 {
        a | b
    }

    pub fn not(&self, a: u32) -> u32 {
        !a & self.one()
    }

    pub fn imp(&self, a: u32, b: u32) -> u32 {
        self.not(a) | b
    }

    pub fn leq(&self, a: u32, b: u32) -> bool {
        a & !b == 0
    }

    pub fn apply(&self, op: BinOp, a: u32, b: u32) -> u32 {
        match op {
            BinOp::And => self.meet(a, b),
            BinOp::Or => self.join(a, b),
            BinOp::Imp => self.imp(a, b),
        }
    }

    /// Bit string with atom 0 first, e.g. `10` is the first atom of a
    /// two-atom algebra.
    pub fn format(&self, x: u32) -> String {
        if self.atoms == 0 {
            return "0".to_string();
        }
        (0..self.atoms)
            .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// A map between powerset algebras that preserves ∧, ∨, →, 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaHom {
    src: BoolAlg,
    tgt: BoolAlg,
    map: Vec<u32>,
}

/// Exhaustive check of the homomorphism conditions on every pair.
pub fn preserves_operations(src: BoolAlg, tgt: BoolAlg, map: &[u32]) -> Result<(), BaError> {
    if map.len() != src.size() {
        return Err(BaError::WrongLength {
            expected: src.size(),
            got: map.len(),
        });
    }
    if let Some(&v) = map.iter().find(|&&v| !tgt.contains(v)) {
        return Err(BaError::OutOfRange(v));
    }
    if map[0] != 0 {
        return Err(BaError::NotHomomorphism("0".into()));
    }
    if map[src.one() as usize] != tgt.one() {
        return Err(BaError::NotHomomorphism("1".into()));
    }
    for a in src.elements() {
        for b in src.elements() {
            for op in [BinOp::And, BinOp::Or, BinOp::Imp] {
                let lhs = map[src.apply(op, a, b) as usize];
                let rhs = tgt.apply(op, map[a as usize], map[b as usize]);
                if lhs != rhs {
                    return Err(BaError::NotHomomorphism(format!(
                        "{op:?} at ({}, {})",
                        src.format(a),
                        src.format(b)
                    )));
                }
            }
        }
    }
    Ok(())
}

impl BaHom {
    pub fn new(src: BoolAlg, tgt: BoolAlg, map: Vec<u32>) -> Result<BaHom, BaError> {
        preserves_operations(src, tgt, &map)?;
        Ok(BaHom { src, tgt, map })
    }

    pub fn identity(a: BoolAlg) -> BaHom {
        BaHom {
            src: a,
            tgt: a,
            map: a.elements().collect(),
        }
    }

    /// The hom dual to a map from target atoms to source atoms:
    /// `h(x) = {j : phi[j] ∈ x}`. Every hom out of a nondegenerate algebra
    /// has this form.
    pub fn from_atom_map(src: BoolAlg, tgt: BoolAlg, phi: &[u32]) -> BaHom {
        assert_eq!(phi.len(), tgt.atoms() as usize);
        assert!(phi.iter().all(|&i| i < src.atoms()));
        let map = src
            .elements()
            .map(|x| {
                phi.iter()
                    .enumerate()
                    .filter(|&(_, &i)| x >> i & 1 == 1)
                    .fold(0u32, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        BaHom { src, tgt, map }
    }

    pub fn src(&self) -> BoolAlg {
        self.src
    }

    pub fn tgt(&self) -> BoolAlg {
        self.tgt
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &BaHom) -> BaHom {
        assert_eq!(self.tgt, next.src, "homomorphisms are not composable");
        BaHom {
            src: self.src,
            tgt: next.tgt,
            map: self.map.iter().map(|&x| next.apply(x)).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.tgt.size()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.tgt.size()];
        for &y in &self.map {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// Product of a finite family. Factor `i` occupies a contiguous block of
/// atoms, so projections are shifts. The empty product is the one-element
/// algebra.
pub fn ba_product(factors: &[BoolAlg]) -> Result<(BoolAlg, Vec<BaHom>), BaError> {
    let total: u32 = factors.iter().map(|f| f.atoms()).sum();
    let prod = powerset_algebra(total)?;
    let mut offset = 0;
    let projections = factors
        .iter()
        .map(|f| {
            let map = prod.elements().map(|x| (x >> offset) & f.one()).collect();
            offset += f.atoms();
            BaHom {
                src: prod,
                tgt: *f,
                map,
            }
        })
        .collect();
    Ok((prod, projections))
}

/// The map `x ↦ (h_i(x))_i` into the product of the targets, which must be
/// laid out as in [`ba_product`].
pub fn tuple_homs(src: BoolAlg, homs: &[BaHom]) -> Result<BaHom, BaError> {
    let targets: Vec<BoolAlg> = homs.iter().map(|h| h.tgt).collect();
    let (prod, _) = ba_product(&targets)?;
    let map = src
        .elements()
        .map(|x| {
            let mut offset = 0;
            let mut y = 0;
            for h in homs {
                y |= h.apply(x) << offset;
                offset += h.tgt.atoms();
            }
            y
        })
        .collect();
    Ok(BaHom {
        src,
        tgt: prod,
        map,
    })
}

/// One hom into 𝔸₂ per atom: `h_a(x) = 1` iff `a ≤ x`.
pub fn atom_embedding(a: BoolAlg) -> Result<Vec<BaHom>, BaError> {
    if a.is_degenerate() {
        return Err(BaError::Degenerate);
    }
    Ok((0..a.atoms())
        .map(|i| BaHom {
            src: a,
            tgt: BoolAlg::two(),
            map: a.elements().map(|x| x >> i & 1).collect(),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CilError {
    #[error("tables are not a lattice: {0}")]
    NotLattice(String),
    #[error("{a} -> {b} is undefined: the supremum of {{c : {a} & c <= {b}}} is not in that set")]
    ImpUndefined { a: String, b: String },
    #[error("classicality fails at ({a}, {b}): {a} | ({a} -> {b}) is not the top")]
    NotClassical { a: String, b: String },
}

/// A finite classical implicative lattice given by meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cil {
    labels: Vec<String>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

pub fn make_cil(
    labels: Vec<String>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
) -> Result<Cil, CilError> {
    let n = labels.len();
    let bad = |m: String| Err(CilError::NotLattice(m));
    if n == 0 {
        return bad("empty carrier".into());
    }
    for (name, t) in [("meet", &meet), ("join", &join)] {
        if t.len() != n || t.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad(format!(
                "{name} table is not a total {n}x{n} table over the carrier"
            ));
        }
    }
    let range = 0..n;
    for (name, t) in [("meet", &meet), ("join", &join)] {
        for a in range.clone() {
            if t[a][a] != a {
                return bad(format!("{name} is not idempotent at {}", labels[a]));
            }
            for b in range.clone() {
                if t[a][b] != t[b][a] {
                    return bad(format!(
                        "{name} is not commutative at ({}, {})",
                        labels[a], labels[b]
                    ));
                }
                for c in range.clone() {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return bad(format!(
                            "{name} is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
    }
    for a in range.clone() {
        for b in range.clone() {
            if meet[a][join[a][b]] != a || join[a][meet[a][b]] != a {
                return bad(format!(
                    "absorption fails at ({}, {})",
                    labels[a], labels[b]
                ));
            }
        }
    }
    let leq = |a: usize, b: usize| meet[a][b] == a;
    let bottom = (0..n).fold(0, |acc, x| meet[acc][x]);
    let top = (0..n).fold(0, |acc, x| join[acc][x]);
    let mut imp = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let sup = (0..n)
                .filter(|&c| leq(meet[a][c], b))
                .fold(bottom, |acc, c| join[acc][c]);
            if !leq(meet[a][sup], b) {
                return Err(CilError::ImpUndefined {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
            imp[a][b] = sup;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if join[a][imp[a][b]] != top {
                return Err(CilError::NotClassical {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
        }
    }
    Ok(Cil {
        labels,
        meet,
        join,
        imp,
        bottom,
        top,
    })
}

impl Cil {
    /// A Boolean algebra read as a lattice; element `x` gets index `x`.
    pub fn from_boolalg(a: &BoolAlg) -> Cil {
        let els: Vec<u32> = a.elements().collect();
        let table = |f: &dyn Fn(u32, u32) -> u32| {
            els.iter()
                .map(|&x| els.iter().map(|&y| f(x, y) as usize).collect())
                .collect()
        };
        make_cil(
            els.iter().map(|&x| a.format(x)).collect(),
            table(&|x, y| a.meet(x, y)),
            table(&|x, y| a.join(x, y)),
        )
        .expect("Boolean algebras are classical implicative lattices")
    }

    /// The k-element chain `0 < 1 < … < k-1` as lattice tables, for callers
    /// that want to feed [`make_cil`].
    pub fn chain_tables(k: usize) -> (Vec<String>, Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let meet = (0..k).map(|a| (0..k).map(|b| a.min(b)).collect()).collect();
        let join = (0..k).map(|a| (0..k).map(|b| a.max(b)).collect()).collect();
        (labels, meet, join)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == a
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn apply(&self, op: BinOp, a: usize, b: usize) -> usize {
        match op {
            BinOp::And => self.meet(a, b),
            BinOp::Or => self.join(a, b),
            BinOp::Imp => self.imp(a, b),
        }
    }
}

/// A* for a classical implicative lattice A: carrier A × {0,1}, where
/// `(a, 1)` stands for `a` and `(a, 0)` for its formal complement.
/// Element `(a, s)` has index `2a + s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DupAlg {
    base: Cil,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
}

#[allow(clippy::needless_range_loop)]
pub fn duplicate(l: &Cil) -> DupAlg {
    let n = 2 * l.size();
    let mut t = [
        vec![vec![0; n]; n],
        vec![vec![0; n]; n],
        vec![vec![0; n]; n],
    ];
    for x in 0..n {
        for y in 0..n {
            let ((a, s), (b, r)) = (DupAlg::decode(x), DupAlg::decode(y));
            let e = DupAlg::encode;
            t[0][x][y] = match (s, r) {
                (true, true) => e(l.meet(a, b), true),
                (true, false) => e(l.imp(a, b), false),
                (false, true) => e(l.imp(b, a), false),
                (false, false) => e(l.join(a, b), false),
            };
            t[1][x][y] = match (s, r) {
                (true, true) => e(l.join(a, b), true),
                (true, false) => e(l.imp(b, a), true),
                (false, true) => e(l.imp(a, b), true),
                (false, false) => e(l.meet(a, b), false),
            };
            t[2][x][y] = match (s, r) {
                (true, true) => e(l.imp(a, b), true),
                (true, false) => e(l.meet(a, b), false),
                (false, true) => e(l.join(a, b), true),
                (false, false) => e(l.imp(b, a), true),
            };
        }
    }
    let [meet, join, imp] = t;
    DupAlg {
        base: l.clone(),
        meet,
        join,
        imp,
    }
}

impl DupAlg {
    pub fn encode(a: usize, s: bool) -> usize {
        2 * a + s as usize
    }

    pub fn decode(x: usize) -> (usize, bool) {
        (x / 2, x % 2 == 1)
    }

    pub fn base(&self) -> &Cil {
        &self.base
    }

    pub fn size(&self) -> usize {
        2 * self.base.size()
    }

    /// 0* = (1, 0).
    pub fn zero(&self) -> usize {
        Self::encode(self.base.top(), false)
    }

    /// 1* = (1, 1).
    pub fn one(&self) -> usize {
        Self::encode(self.base.top(), true)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.imp[x][y]
    }

    pub fn apply(&self, op: BinOp, x: usize, y: usize) -> usize {
        match op {
            BinOp::And => self.meet(x, y),
            BinOp::Or => self.join(x, y),
            BinOp::Imp => self.imp(x, y),
        }
    }

    pub fn not(&self, x: usize) -> usize {
        let (a, s) = Self::decode(x);
        Self::encode(a, !s)
    }

    /// i*(a) = (a, 1).
    pub fn embed(&self, a: usize) -> usize {
        Self::encode(a, true)
    }

    pub fn label(&self, x: usize) -> String {
        let (a, s) = Self::decode(x);
        format!("({},{})", self.base.label(a), s as u8)
    }

    /// Checks the Boolean algebra laws on every pair and triple, reporting
    /// the first failure.
    pub fn check_boolean_laws(&self) -> Result<(), String> {
        let n = self.size();
        let (z, o) = (self.zero(), self.one());
        let name = |x| self.label(x);
        for x in 0..n {
            if self.meet(x, self.not(x)) != z || self.join(x, self.not(x)) != o {
                return Err(format!("complement fails at {}", name(x)));
            }
            if self.meet(x, o) != x || self.join(x, z) != x {
                return Err(format!("bounds fail at {}", name(x)));
            }
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return Err(format!("commutativity fails at ({}, {})", name(x), name(y)));
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return Err(format!("absorption fails at ({}, {})", name(x), name(y)));
                }
                if self.imp(x, y) != self.join(self.not(x), y) {
                    return Err(format!("x -> y != ~x | y at ({}, {})", name(x), name(y)));
                }
                if self.not(self.meet(x, y)) != self.join(self.not(x), self.not(y)) {
                    return Err(format!("De Morgan fails at ({}, {})", name(x), name(y)));
                }
                for w in 0..n {
                    if self.meet(x, self.meet(y, w)) != self.meet(self.meet(x, y), w)
                        || self.join(x, self.join(y, w)) != self.join(self.join(x, y), w)
                    {
                        return Err(format!(
                            "associativity fails at ({}, {}, {})",
                            name(x),
                            name(y),
                            name(w)
                        ));
                    }
                    if self.meet(x, self.join(y, w)) != self.join(self.meet(x, y), self.meet(x, w))
                    {
                        return Err(format!(
                            "distributivity fails at ({}, {}, {})",
                            name(x),
                            name(y),
                            name(w)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map from a Cil into a Boolean algebra, checked to preserve ∧, ∨, →.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CilHom {
    tgt: BoolAlg,
    map: Vec<u32>,
}

impl CilHom {
    pub fn new(src: &Cil, tgt: BoolAlg, map: Vec<u32>) -> Result<CilHom, BaError> {
        if map.len() != src.size() {
            return Err(BaError::WrongLength {
                expected: src.size(),
                got: map.len(),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| !tgt.contains(v)) {
            return Err(BaError::OutOfRange(v));
        }
        for a in 0..src.size() {
            for b in 0..src.size() {
                for op in [BinOp::And, BinOp::Or, BinOp::Imp] {
                    if map[src.apply(op, a, b)] != tgt.apply(op, map[a], map[b]) {
                        return Err(BaError::NotHomomorphism(format!(
                            "{op:?} at ({}, {})",
                            src.label(a),
                            src.label(b)
                        )));
                    }
                }
            }
        }
        Ok(CilHom { tgt, map })
    }

    pub fn apply(&self, a: usize) -> u32 {
        self.map[a]
    }

    pub fn tgt(&self) -> BoolAlg {
        self.tgt
    }
}

/// A map out of A* into a powerset algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DupHom {
    pub tgt: BoolAlg,
    pub map: Vec<u32>,
}

impl DupHom {
    pub fn apply(&self, x: usize) -> u32 {
        self.map[x]
    }

    pub fn is_boolean_hom(&self, dup: &DupAlg) -> bool {
        let t = self.tgt;
        let n = dup.size();
        self.map.len() == n
            && self.apply(dup.zero()) == t.zero()
            && self.apply(dup.one()) == t.one()
            && (0..n).all(|x| self.apply(dup.not(x)) == t.not(self.apply(x)))
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    [BinOp::And, BinOp::Or, BinOp::Imp].into_iter().all(|op| {
                        self.apply(dup.apply(op, x, y)) == t.apply(op, self.apply(x), self.apply(y))
                    })
                })
            })
    }
}

/// h*(a,1) = h(a), h*(a,0) = ~h(a): the unique Boolean hom with h = h* ∘ i*.
pub fn universal_extension(h: &CilHom) -> DupHom {
    let t = h.tgt;
    let map = (0..2 * h.map.len())
        .map(|x| {
            let (a, s) = DupAlg::decode(x);
            if s {
                h.apply(a)
            } else {
                t.not(h.apply(a))
            }
        })
        .collect();
    DupHom { tgt: t, map }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_powersets() {
        let a2 = powerset_algebra(1).unwrap();
        assert_eq!(a2.size(), 2);
        assert_eq!(a2, BoolAlg::two());
        let one = powerset_algebra(0).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(one.zero(), one.one());
        let a4 = powerset_algebra(2).unwrap();
        assert!(a4.elements().all(|x| a4.meet(a4.one(), x) == x));
        assert!(powerset_algebra(17).is_err());
        assert_eq!(powerset_algebra(16).unwrap().one(), 0xffff);
    }

    #[test]
    fn atom_embedding_examples() {
        let a2 = BoolAlg::two();
        let hs = atom_embedding(a2).unwrap();
        assert_eq!(hs, vec![BaHom::identity(a2)]);
        let a4 = powerset_algebra(2).unwrap();
        let hs = atom_embedding(a4).unwrap();
        let x = a4.atom(0);
        assert_eq!((hs[0].apply(x), hs[1].apply(x)), (1, 0));
        assert_eq!(
            atom_embedding(powerset_algebra(0).unwrap()),
            Err(BaError::Degenerate)
        );
    }

    #[test]
    fn three_chain_is_not_classical() {
        let (_, meet, join) = Cil::chain_tables(3);
        let labels = ["0", "m", "1"].map(String::from).to_vec();
        let err = make_cil(labels, meet, join).unwrap_err();
        assert_eq!(
            err,
            CilError::NotClassical {
                a: "m".into(),
                b: "0".into()
            }
        );
    }

    #[test]
    fn two_chain_is_a_cil() {
        let (labels, meet, join) = Cil::chain_tables(2);
        let c = make_cil(labels, meet, join).unwrap();
        assert_eq!(c.imp(1, 0), 0);
        assert_eq!(c.imp(0, 0), 1);
    }

    #[test]
    fn pentagon_is_not_a_cil() {
        // N5 with 0 < a < c < 1 and 0 < b < 1: {x : c & x <= a} = {0, a, b} has
        // supremum 1, and c & 1 = c is not below a.
        let names = ["0", "a", "c", "b", "1"];
        let up = |x: usize| -> Vec<usize> {
            match x {
                0 => vec![0, 1, 2, 3, 4],
                1 => vec![1, 2, 4],
                2 => vec![2, 4],
                3 => vec![3, 4],
                _ => vec![4],
            }
        };
        let leq = |x: usize, y: usize| up(x).contains(&y);
        let join: Vec<Vec<usize>> = (0..5)
            .map(|x| {
                (0..5)
                    .map(|y| {
                        (0..5)
                            .filter(|&z| leq(x, z) && leq(y, z))
                            .find(|&z| (0..5).all(|w| !(leq(x, w) && leq(y, w)) || leq(z, w)))
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let meet: Vec<Vec<usize>> = (0..5)
            .map(|x| {
                (0..5)
                    .map(|y| {
                        (0..5)
                            .filter(|&z| leq(z, x) && leq(z, y))
                            .find(|&z| (0..5).all(|w| !(leq(w, x) && leq(w, y)) || leq(w, z)))
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let err = make_cil(names.iter().map(|s| s.to_string()).collect(), meet, join).unwrap_err();
        assert!(matches!(err, CilError::ImpUndefined { .. }), "{err}");
    }

    #[test]
    fn non_lattice_rejected() {
        let labels = vec!["x".to_string(), "y".to_string()];
        let meet = vec![vec![0, 0], vec![1, 1]];
        let join = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(
            make_cil(labels, meet, join),
            Err(CilError::NotLattice(_))
        ));
    }

    #[test]
    fn duplicate_of_two_chain() {
        let l = Cil::from_boolalg(&BoolAlg::two());
        let d = duplicate(&l);
        let (one_star, zero_star) = (d.one(), d.zero());
        assert_eq!(DupAlg::decode(zero_star), (1, false));
        assert_eq!(DupAlg::decode(one_star), (1, true));
        assert_eq!(d.meet(one_star, zero_star), zero_star);
        // (1,1) ∨ (0,0) = (0 → 1, 1) = (1,1)
        assert_eq!(
            d.join(DupAlg::encode(1, true), DupAlg::encode(0, false)),
            one_star
        );
        d.check_boolean_laws().unwrap();
    }

    #[test]
    fn universal_extension_on_identity() {
        let l = Cil::from_boolalg(&BoolAlg::two());
        let h = CilHom::new(&l, BoolAlg::two(), vec![0, 1]).unwrap();
        let hs = universal_extension(&h);
        assert_eq!(hs.apply(DupAlg::encode(0, false)), 1);
        assert_eq!(hs.apply(DupAlg::encode(1, false)), 0);
        assert!(hs.is_boolean_hom(&duplicate(&l)));
        assert!(CilHom::new(&l, BoolAlg::two(), vec![1, 0]).is_err());
    }
}
