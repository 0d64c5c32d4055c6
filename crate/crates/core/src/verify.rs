//! Property suites over small Boolean algebras: characterization, the
//! class chain, the Kalman functor, duality, representation, the
//! bivaluation bridge and proof fuzzing.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::boolean_algebra::{powerset_algebra, BaHom, BoolAlg};
use crate::exec::{unrank, Exec};
use crate::formula::Formula;
use crate::hilbert::{check_proof, step_formulas};
use crate::multialgebra::{
    is_homomorphism, is_isomorphism, is_monomorphism, is_multicongruence, is_submultialgebra,
    quotient, tuple_count, EquivRel, MaMap, MultiAlg, MultiAlgebra,
};
use crate::nmatrix::{
    bivaluation_domain, characteristic, holds_in_logic, induced_valuation, is_bivaluation,
    Bivaluation,
};
use crate::sample::{
    mutate_proof, random_ba_hom, random_bivaluation, random_formula, random_proof,
    random_proper_swap, random_submultialgebra, random_valuation, CellIndex,
};
use crate::swap::{
    characterize, duality_star, full_swap, is_swap_for, is_swap_up_to_iso, kalman_classic, lift,
    product_iso, represent, universe, LogicId, SwapStructure,
};

/// Carriers up to this size have all their closed subsets enumerated.
pub const EXHAUSTIVE_LIMIT: usize = 16;
/// Distinct closed subsets drawn from larger carriers.
pub const SAMPLED_RESTRICTIONS: usize = 2000;
/// Fuzzed proofs: at most this many steps, no axiom instance larger
/// than `PROOF_SIZE` nodes.
pub const PROOF_STEPS: usize = 12;
pub const PROOF_SIZE: usize = 40;
/// Largest carrier used for random submultialgebras.
pub const RANDOM_SUB_LIMIT: usize = 125;

#[derive(Clone, Debug)]
pub struct Options {
    pub max_atoms: u32,
    pub seed: u64,
    /// Sample count; each suite documents how it spends it.
    pub samples: usize,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_atoms: 2,
            seed: 0,
            samples: 200,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.into(),
            ..Report::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(why());
        }
    }

    fn absorb(&mut self, results: Vec<(usize, Vec<String>)>) {
        for (n, fails) in results {
            self.checked += n;
            self.failures.extend(fails);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"suite": self.suite, "checked": self.checked, "passed": self.passed(),
               "failures": self.failures, "notes": self.notes})
    }

    /// One summary line, then notes and at most ten failures.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {} ({} checks, {} failures)\n",
            self.suite,
            if self.passed() { "ok" } else { "FAILED" },
            self.checked,
            self.failures.len()
        );
        for n in &self.notes {
            out.push_str(&format!("  {n}\n"));
        }
        for f in self.failures.iter().take(10) {
            out.push_str(&format!("  failure: {f}\n"));
        }
        out
    }
}

pub const SUITES: [&str; 7] = [
    "characterization",
    "class-chain",
    "kalman",
    "duality",
    "representation",
    "bivaluations",
    "proofs",
];

pub fn run_suite(name: &str, opts: &Options) -> Option<Report> {
    Some(match name {
        "characterization" => characterization(opts),
        "class-chain" => class_chain(opts),
        "kalman" => kalman(opts),
        "duality" => duality(opts),
        "representation" => representation(opts),
        "bivaluations" => bivaluations(opts),
        "proofs" => proofs(opts),
        _ => return None,
    })
}

fn alg(atoms: u32) -> BoolAlg {
    powerset_algebra(atoms).expect("small algebra")
}

fn agreement(b: &SwapStructure, what: &str) -> (usize, Vec<String>) {
    let fails = LogicId::ALL
        .iter()
        .filter_map(|&l| {
            let (direct, axioms) = (is_swap_for(l, b), characterize(l, b));
            (direct != axioms)
                .then(|| format!("{what}: is_swap_for({l}) = {direct} but characterize = {axioms}"))
        })
        .collect();
    (LogicId::ALL.len(), fails)
}

/// Closed subsets of `b`: all of them for small carriers, else a seeded
/// sample of distinct ones. The flag says whether the list is exhaustive.
pub fn closed_restrictions(b: &SwapStructure, rng: &mut ChaCha8Rng) -> (Vec<Vec<usize>>, bool) {
    let index = CellIndex::new(b);
    if let Some(all) = index.closed_subsets(EXHAUSTIVE_LIMIT) {
        return (all, true);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..10 * SAMPLED_RESTRICTIONS {
        if out.len() == SAMPLED_RESTRICTIONS {
            break;
        }
        let s = index.random_closed_subset(rng);
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    (out, false)
}

/// `is_swap_for ⟺ characterize` on full structures, their closed
/// restrictions and `samples` random submultialgebras.
pub fn characterization(opts: &Options) -> Report {
    let mut report = Report::new("characterization");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut exhaustive, mut sampled, mut restrictions) = (0, 0, 0);
    let mut pools = Vec::new();
    for atoms in 0..=opts.max_atoms {
        for l0 in LogicId::ALL {
            let full = full_swap(l0, alg(atoms)).expect("full structures exist");
            report.absorb(vec![agreement(
                &full,
                &format!("full {l0} over {atoms} atoms"),
            )]);
            let (subsets, all) = closed_restrictions(&full, &mut rng);
            if all {
                exhaustive += 1;
            } else {
                sampled += 1;
            }
            restrictions += subsets.len();
            let results = opts.exec.map(subsets.len(), |i| {
                let b = full.restrict(&subsets[i]).expect("closed");
                agreement(
                    &b,
                    &format!("{l0} over {atoms} atoms restricted to {:?}", subsets[i]),
                )
            });
            report.absorb(results);
            if atoms >= 1 && full.size() <= RANDOM_SUB_LIMIT {
                pools.push(full);
            }
        }
    }
    let per_pool = opts.samples.div_ceil(pools.len().max(1));
    let mut subs = 0;
    for full in &pools {
        let index = CellIndex::new(full);
        for _ in 0..per_pool {
            let b = random_submultialgebra(full, &index, &mut rng);
            report.absorb(vec![agreement(
                &b,
                &format!("random part of {} ({} elements)", full.logic(), b.size()),
            )]);
            subs += 1;
        }
    }
    report.notes.push(format!(
        "{restrictions} closed restrictions ({exhaustive} carriers enumerated exhaustively, {sampled} sampled with up to {SAMPLED_RESTRICTIONS} distinct subsets each), {subs} random submultialgebras"
    ));
    report
}

/// Universes and full structures nest along the class order.
pub fn class_chain(opts: &Options) -> Report {
    let mut report = Report::new("class-chain");
    for atoms in 0..=opts.max_atoms {
        let a = alg(atoms);
        for l in LogicId::ALL {
            let b = full_swap(l, a).expect("full");
            for &p in l.parents() {
                let up = universe(p, &a).expect("small");
                let inner = universe(l, &a).expect("small");
                report.check(inner.iter().all(|z| up.contains(z)), || {
                    format!("universe of {l} ⊄ universe of {p}")
                });
                let parent = full_swap(p, a).expect("full");
                let emb: Option<Vec<usize>> =
                    b.elems().iter().map(|z| parent.index_of(z)).collect();
                let ok = emb
                    .is_some_and(|e| is_submultialgebra(&b, &parent, &MaMap(e)).unwrap_or(false));
                report.check(ok, || {
                    format!("full {l} is not a submultialgebra of full {p} over {atoms} atoms")
                });
                report.check(is_swap_for(p, &b), || {
                    format!("full {l} is not a {p} structure over {atoms} atoms")
                });
            }
        }
    }
    report
}

fn structures(max_atoms: u32) -> HashMap<(LogicId, u32), SwapStructure> {
    let mut out = HashMap::new();
    for l in LogicId::ALL {
        for atoms in 0..=max_atoms {
            out.insert((l, atoms), full_swap(l, alg(atoms)).expect("full"));
        }
    }
    out
}

/// Families of at most three factors, each with at least one atom and at
/// most `max_atoms` in total.
pub fn families(max_atoms: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![vec![]];
    while let Some(f) = stack.pop() {
        let used: u32 = f.iter().sum();
        if !f.is_empty() {
            out.push(f.clone());
        }
        if f.len() < 3 {
            for n in 1..=max_atoms.saturating_sub(used) {
                let mut g = f.clone();
                g.push(n);
                stack.push(g);
            }
        }
    }
    out.sort();
    out
}

/// Functor laws on `samples` composable pairs, product isomorphisms and
/// monos to monos. Atom counts run from 1 to `max_atoms`.
pub fn kalman(opts: &Options) -> Report {
    let mut report = Report::new("kalman");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let full = structures(opts.max_atoms);
    let top = opts.max_atoms.max(1);
    let (mut monos, mut hom_checks) = (0, 0);
    for _ in 0..opts.samples {
        let (na, nb, nc) = (
            rng.random_range(1..=top),
            rng.random_range(1..=top),
            rng.random_range(1..=top),
        );
        let f = random_ba_hom(&mut rng, alg(na), alg(nb)).expect("nondegenerate source");
        let g = random_ba_hom(&mut rng, alg(nb), alg(nc)).expect("nondegenerate source");
        let fg = f.then(&g);
        for l in LogicId::ALL {
            let (sa, sb, sc) = (&full[&(l, na)], &full[&(l, nb)], &full[&(l, nc)]);
            let fs = lift(&f, sa, sb).expect("lifts land in full structures");
            let gs = lift(&g, sb, sc).expect("lifts land in full structures");
            let fgs = lift(&fg, sa, sc).expect("lifts land in full structures");
            report.check(fgs == fs.then(&gs), || {
                format!("{l}: (g∘f)∗ ≠ g∗∘f∗ for {na}→{nb}→{nc} atoms")
            });
            let id = lift(&BaHom::identity(alg(na)), sa, sa).expect("identity");
            report.check(id == MaMap::identity(sa.size()), || {
                format!("{l}: id∗ is not the identity on {na} atoms")
            });
            if sa.size() <= RANDOM_SUB_LIMIT {
                hom_checks += 1;
                report.check(is_homomorphism(sa, sb, &fs).unwrap_or(false), || {
                    format!("{l}: f∗ is not a homomorphism")
                });
            }
            if f.is_injective() && sa.size() <= RANDOM_SUB_LIMIT {
                monos += 1;
                report.check(is_monomorphism(sa, sb, &fs).unwrap_or(false), || {
                    format!("{l}: mono f gives non-mono f∗")
                });
            }
        }
    }
    for fam in families(opts.max_atoms) {
        let algs: Vec<BoolAlg> = fam.iter().map(|&n| alg(n)).collect();
        for l in LogicId::ALL {
            let iso = product_iso(l, &algs).expect("small family");
            let ok = is_isomorphism(&iso.view(), &iso.target, &iso.map).unwrap_or(false);
            report.check(ok, || format!("{l}: product_iso fails for family {fam:?}"));
        }
    }
    report.notes.push(format!(
        "{} composable pairs per logic, homomorphism checked on {hom_checks} lifts and {monos} monos (sources up to {RANDOM_SUB_LIMIT} elements), families {:?}",
        opts.samples,
        families(opts.max_atoms)
    ));
    report
}

/// `u₂ = (z₁#w₁) → ((z₁∧z₂)∧(w₁∧w₂))` on every Ciore cell.
pub fn ciore_second_coordinate(b: &SwapStructure) -> Vec<String> {
    let a = *b.alg();
    let k = b.size();
    let mut out = Vec::new();
    for (op, bin) in [
        (0, crate::formula::BinOp::And),
        (1, crate::formula::BinOp::Or),
        (2, crate::formula::BinOp::Imp),
    ] {
        for x in 0..k {
            for y in 0..k {
                let (z, w) = (b.snapshot(x), b.snapshot(y));
                let cell = b.cell(op, &[x, y]);
                let want = a.imp(
                    a.apply(bin, z.z1, w.z1),
                    a.meet(a.meet(z.z1, z.z2), a.meet(w.z1, w.z2)),
                );
                if cell.len() != 1 || b.snapshot(cell[0]).z2 != want {
                    out.push(format!("{bin:?} at ({}, {})", b.label(x), b.label(y)));
                }
            }
        }
    }
    out
}

/// Duality equations, the Kleene laws of `K(𝔸₂)` and the Ciore second
/// coordinate, for algebras up to `max_atoms`.
pub fn duality(opts: &Options) -> Report {
    let mut report = Report::new("duality");
    for atoms in 0..=opts.max_atoms {
        let d = duality_star(alg(atoms)).expect("small algebra");
        let v = d.violations();
        report.check(v.is_empty(), || {
            format!("duality over {atoms} atoms: {}", v.join("; "))
        });
        let k = kalman_classic(alg(atoms));
        let v = k.law_violations();
        report.check(v.is_empty(), || {
            format!("K over {atoms} atoms: {}", v.join("; "))
        });
        let ciore = full_swap(LogicId::Ciore, alg(atoms)).expect("full");
        let v = ciore_second_coordinate(&ciore);
        report.check(v.is_empty(), || {
            format!("Ciore u₂ over {atoms} atoms fails at {}", v.join(", "))
        });
    }
    let k = kalman_classic(BoolAlg::two());
    let c = k.center();
    report.check(k.label(c) == "f" && k.neg(c) == c, || {
        "K(𝔸₂) center is not f with ¬f = f".into()
    });
    report
}

/// `represent` on full structures with 1 to `max_atoms` atoms, then on
/// `samples` random proper parts per logic.
pub fn representation(opts: &Options) -> Report {
    let mut report = Report::new("representation");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let check = |l: LogicId, b: &SwapStructure, what: &str| -> (usize, Vec<String>) {
        let ok = represent(l, b).and_then(|r| r.verify(b));
        match ok {
            Ok(true) => (1, vec![]),
            Ok(false) => (
                1,
                vec![format!("{l}: ĥ is not an injective homomorphism on {what}")],
            ),
            Err(e) => (1, vec![format!("{l}: {what}: {e}")]),
        }
    };
    for l in LogicId::ALL {
        for atoms in 1..=opts.max_atoms {
            let b = full_swap(l, alg(atoms)).expect("full");
            report.absorb(vec![check(
                l,
                &b,
                &format!("the full structure over {atoms} atoms"),
            )]);
        }
    }
    let mut drawn = 0;
    for l in LogicId::ALL {
        let pool: Vec<SwapStructure> = (1..=opts.max_atoms)
            .map(|n| full_swap(l, alg(n)).expect("full"))
            .filter(|b| b.size() <= RANDOM_SUB_LIMIT && b.size() > 1)
            .collect();
        let indexes: Vec<CellIndex> = pool.iter().map(|b| CellIndex::new(b)).collect();
        let mut got = 0;
        let mut attempts = 0;
        while got < opts.samples && attempts < 20 * opts.samples && !pool.is_empty() {
            attempts += 1;
            let i = rng.random_range(0..pool.len());
            if let Some(s) = random_proper_swap(l, &pool[i], &indexes[i], &mut rng, 20) {
                report.absorb(vec![check(
                    l,
                    &s,
                    &format!("a random part with {} elements", s.size()),
                )]);
                got += 1;
            }
        }
        report.check(got == opts.samples, || {
            format!("{l}: only {got} random proper parts found")
        });
        drawn += got;
    }
    report.notes.push(format!(
        "{drawn} random proper parts, carriers up to {RANDOM_SUB_LIMIT} elements"
    ));
    report
}

/// Logics with a bivaluation semantics.
pub const BIVALUATION_LOGICS: [LogicId; 3] = [LogicId::MbC, LogicId::Lfi1o, LogicId::Ciore];

/// `samples` bivaluations per logic to legal valuations and `samples`
/// legal valuations back.
pub fn bivaluations(opts: &Options) -> Report {
    let mut report = Report::new("bivaluations");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let vars = ["p", "q", "r"];
    for l in BIVALUATION_LOGICS {
        let m = characteristic(l).expect("characteristic matrix");
        for _ in 0..opts.samples {
            let base = vec![
                random_formula(&mut rng, &vars, 3),
                random_formula(&mut rng, &vars, 2),
            ];
            let mu = random_bivaluation(l, &base, &mut rng).expect("bivaluations exist");
            let faithful = induced_valuation(&mu).is_ok_and(|v| {
                v.is_legal(m)
                    && mu
                        .core()
                        .iter()
                        .all(|f| v.get(f).map(|x| m.is_designated(x)) == mu.get(f))
            });
            report.check(faithful, || {
                format!("{l}: induced valuation fails on {}", show(&base))
            });
            let (core, domain) = bivaluation_domain(&base);
            let v = random_valuation(m, &domain, &mut rng);
            let nm = crate::nmatrix::nmatrix_of(m);
            let back =
                Bivaluation::from_valuation(l, &core, &v, &nm).and_then(|b| is_bivaluation(&b));
            report.check(v.is_legal(m) && back == Ok(true), || {
                format!("{l}: valuation projects badly on {}", show(&base))
            });
        }
    }
    report.notes.push(format!(
        "{} samples each way for {:?}",
        opts.samples,
        BIVALUATION_LOGICS.map(|l| l.name())
    ));
    report
}

fn show(fs: &[Formula]) -> String {
    fs.iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The logic whose characteristic matrix confirms derivations of `l`.
/// Positive classical logic has no finite characteristic swap matrix here;
/// its theorems hold in mbC.
pub fn semantic_check_logic(l: LogicId) -> LogicId {
    if l == LogicId::CplePlus {
        LogicId::MbC
    } else {
        l
    }
}

/// `samples` fuzzed proofs per logic: each checks and every step is
/// confirmed semantically. Mutated proofs that still check are confirmed too.
pub fn proofs(opts: &Options) -> Report {
    let mut report = Report::new("proofs");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut mutants_checked = 0;
    for l in LogicId::ALL {
        let sem = semantic_check_logic(l);
        for _ in 0..opts.samples {
            let proof = random_proof(l, &mut rng, PROOF_STEPS, PROOF_SIZE);
            match step_formulas(l, &proof) {
                Err(e) => report.check(false, || {
                    format!("{l}: generated proof rejected: {e}\n{proof}")
                }),
                Ok(fs) => {
                    for f in fs {
                        let ok = holds_in_logic(sem, &proof.premises, &f).unwrap_or(false);
                        report.check(ok, || format!("{l}: {f} derived but not valid\n{proof}"));
                    }
                }
            }
            let mutant = mutate_proof(&proof, &mut rng);
            if let Ok(c) = check_proof(l, &mutant) {
                mutants_checked += 1;
                let ok = holds_in_logic(sem, &mutant.premises, &c).unwrap_or(false);
                report.check(ok, || {
                    format!("{l}: mutated proof concludes invalid {c}\n{mutant}")
                });
            }
        }
    }
    report.notes.push(format!(
        "{} proofs per logic, {mutants_checked} mutants still checked",
        opts.samples
    ));
    report
}

/// The mbC quotient by `{{T,F},{t,t₀,f₀}}`, relabelled `a`, `b`.
#[derive(Clone, Debug)]
pub struct QuotientDemo {
    pub source: SwapStructure,
    pub theta: EquivRel,
    pub is_multicongruence: bool,
    pub quotient: MultiAlg,
    pub all_cells_full: bool,
    pub is_swap: bool,
}

pub fn quotient_demo() -> QuotientDemo {
    let source = full_swap(LogicId::MbC, BoolAlg::two()).expect("full");
    let block = |name: &str| if name == "T" || name == "F" { 0 } else { 1 };
    let ids: Vec<usize> = source.labels().iter().map(|s| block(s)).collect();
    let theta = EquivRel::from_block_ids(&ids);
    let is_cong = is_multicongruence(&theta, &source).unwrap_or(false);
    let (q, _) = quotient(&source, &theta).expect("multicongruence");
    let q = q.with_labels(vec!["a".into(), "b".into()]);
    let mut all_full = true;
    for op in 0..q.signature().len() {
        let n = q.signature().arity(op);
        let mut args = vec![0; n];
        for r in 0..tuple_count(q.size(), n) {
            unrank(r, q.size(), &mut args);
            all_full &= q.cell(op, &args).len() == 2;
        }
    }
    let is_swap = is_swap_up_to_iso(LogicId::MbC, &q).unwrap_or(false);
    QuotientDemo {
        source,
        theta,
        is_multicongruence: is_cong,
        quotient: q,
        all_cells_full: all_full,
        is_swap,
    }
}
