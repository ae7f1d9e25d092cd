//! Sweeps that check the structural theorems instance by instance, and the
//! report they produce.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::coxeter::{ElementId, GroupModel, GroupTable, Subset};
use crate::error::{Error, Result};
use crate::homology::{injective_hull_with, lemma_outside_letter, socle_index, projective_cover, verify_cover_theorem, verify_hull_theorem};
use crate::linalg::{Field, FieldSpec, PrimeField, Rationals};
use crate::module::{same_element_set, HModule, Indecomposability, IsoOutcome, Multiplicities};
use crate::qsym::{symmetric_group, verify_section5, Composition};
use crate::twist::{apply_twist, twisted_projective_index, verify_twist_theorem, TwistTag};
use crate::weak_order::WeakInterval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Relations,
    ThmIntervalProjective,
    ThmDecomposition,
    ThmTwists,
    ThmCovers,
    ThmHulls,
    LemmaW0,
    Section5,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Relations,
        Suite::ThmIntervalProjective,
        Suite::ThmDecomposition,
        Suite::ThmTwists,
        Suite::ThmCovers,
        Suite::ThmHulls,
        Suite::LemmaW0,
        Suite::Section5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::ThmIntervalProjective => "thm-interval-projective",
            Suite::ThmDecomposition => "thm-decomposition",
            Suite::ThmTwists => "thm-twists",
            Suite::ThmCovers => "thm-covers",
            Suite::ThmHulls => "thm-hulls",
            Suite::LemmaW0 => "lemma-w0",
            Suite::Section5 => "section5",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undetermined => "UNDETERMINED",
        })
    }
}

/// One checked instance of one theorem.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Instance {
    pub theorem: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Instance {
    fn new(theorem: &str, instance: String, status: Status, detail: impl Into<String>) -> Self {
        Instance { theorem: theorem.into(), instance, status, detail: detail.into() }
    }

    fn check(theorem: &str, instance: String, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Instance::new(theorem, instance, status, if ok { String::new() } else { detail.into() })
    }

    fn from_result(theorem: &str, instance: String, r: Result<Instance>) -> Self {
        r.unwrap_or_else(|e| {
            let status = if matches!(e, Error::Undetermined(_)) { Status::Undetermined } else { Status::Fail };
            Instance::new(theorem, instance, status, e.to_string())
        })
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.status, self.theorem, self.instance)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undetermined: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: String,
    pub field: String,
    pub seed: u64,
    pub suite: String,
    pub summary: Summary,
    pub results: Vec<Instance>,
}

impl Report {
    pub fn new(cfg: &RunConfig, suite: &str, mut results: Vec<Instance>) -> Self {
        results.sort();
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Undetermined => summary.undetermined += 1,
            }
        }
        Report { group: cfg.group.to_string(), field: cfg.field.to_string(), seed: cfg.seed, suite: suite.into(), summary, results }
    }

    /// 0 when everything passed, 1 on any failure, 2 when the only problems
    /// are undetermined instances.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.undetermined > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.results.iter().map(|r| format!("{r}\n")).collect();
        out.push_str(&format!(
            "{} {} {}: {} passed, {} failed, {} undetermined\n",
            self.suite, self.group, self.field, self.summary.pass, self.summary.fail, self.summary.undetermined
        ));
        out
    }
}

type Task<'a> = Box<dyn Fn() -> Instance + Send + Sync + 'a>;

/// Group-level state shared by the tasks of one run.
struct Ctx<F: Field> {
    g: Arc<GroupTable>,
    field: F,
    seed: u64,
    cfg: RunConfig,
    socles: OnceLock<BTreeMap<Subset, Subset>>,
}

impl<F: Field> Ctx<F> {
    fn socle_index(&self) -> &BTreeMap<Subset, Subset> {
        self.socles.get_or_init(|| socle_index(&self.g, &self.field))
    }

    fn pairs(&self) -> Vec<(Subset, Subset)> {
        Subset::all(self.g.rank()).flat_map(|j| Subset::EMPTY.between(&j).into_iter().map(move |i| (i, j))).collect()
    }

    fn seed_for(&self, k: usize) -> u64 {
        self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64)
    }

    fn pair_name(&self, i: Subset, j: Subset) -> String {
        format!("I={i} J={j}")
    }

    fn label(&self, w: ElementId) -> String {
        self.g.label(w)
    }

    /// A random pair `u ≤_L v`: `u` is a right factor of a reduced word of `v`.
    fn random_pair(&self, rng: &mut ChaCha8Rng) -> (ElementId, ElementId) {
        let v = rng.gen_range(0..self.g.size());
        let word = self.g.word(v);
        let cut = rng.gen_range(0..=word.len());
        let u = self.g.from_word(&word[cut..]).expect("subword of a reduced word");
        (u, v)
    }

    fn expected_summands(&self, i: Subset, j: Subset) -> Multiplicities {
        i.between(&j).into_iter().map(|x| (x, 1)).collect()
    }
}

fn iso_instance<F: Field>(theorem: &str, instance: String, outcome: &IsoOutcome<F>) -> Instance {
    match outcome {
        IsoOutcome::Isomorphic(_) => Instance::new(theorem, instance, Status::Pass, ""),
        IsoOutcome::NotIsomorphic(r) => Instance::new(theorem, instance, Status::Fail, r.clone()),
        IsoOutcome::Undetermined(r) => Instance::new(theorem, instance, Status::Undetermined, r.clone()),
    }
}

fn indecomposable_instance(theorem: &str, instance: String, r: &Indecomposability, want: bool) -> Instance {
    match (r, want) {
        (Indecomposability::CertifiedYes, true) | (Indecomposability::Decomposable { .. }, false) => {
            Instance::new(theorem, instance, Status::Pass, "")
        }
        (Indecomposability::ProbableYes, _) => Instance::new(theorem, instance, Status::Undetermined, "no certificate found"),
        _ => Instance::new(theorem, instance, Status::Fail, r.label()),
    }
}

fn relations_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "relations";
    let mut tasks: Vec<Task<'a>> = Vec::new();
    let check = |name: String, m: HModule<F>| match m.check_relations() {
        Ok(()) => Instance::new(T, name, Status::Pass, ""),
        Err(e) => Instance::new(T, name, Status::Fail, e),
    };
    for (i, j) in c.pairs() {
        tasks.push(Box::new(move || {
            let name = format!("P{i}^{j}");
            match HModule::projective(&c.g, &c.field, i, j) {
                Ok(m) => check(name, m),
                Err(e) => Instance::new(T, name, Status::Fail, e.to_string()),
            }
        }));
        tasks.push(Box::new(move || {
            let name = format!("B(u_{i},v_{j})");
            match HModule::interval(&c.g, &c.field, c.g.u(i), c.g.v(j)) {
                Ok(m) => check(name, m),
                Err(e) => Instance::new(T, name, Status::Fail, e.to_string()),
            }
        }));
    }
    for i in Subset::all(c.g.rank()) {
        tasks.push(Box::new(move || check(format!("S{i}"), HModule::simple(&c.g, &c.field, i))));
        for tag in TwistTag::ALL {
            tasks.push(Box::new(move || {
                check(format!("{tag}[P{i}]"), apply_twist(tag, &HModule::projective_indecomposable(&c.g, &c.field, i)))
            }));
        }
    }
    for k in 0..8 {
        tasks.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed_for(k));
            let (u, v) = c.random_pair(&mut rng);
            let iv = WeakInterval::new(&c.g, u, v).expect("u ≤ v");
            let y = iv.random_upper_ideal(c.seed_for(k));
            let name = format!("random {k} [{}, {}]", c.label(u), c.label(v));
            let sub = HModule::ideal_submodule(&iv, &c.field, &y).and_then(|s| Ok((s, HModule::ideal_quotient(&iv, &c.field, &y)?)));
            match sub {
                Ok((s, q)) => match s.check_relations().and(q.check_relations()) {
                    Ok(()) => Instance::new(T, name, Status::Pass, ""),
                    Err(e) => Instance::new(T, name, Status::Fail, e),
                },
                Err(e) => Instance::new(T, name, Status::Fail, e.to_string()),
            }
        }));
    }
    if c.cfg.inject_corruption && c.g.rank() > 0 {
        tasks.push(Box::new(move || {
            let p = HModule::projective_indecomposable(&c.g, &c.field, Subset::EMPTY);
            let mut action = p.actions().to_vec();
            let x = action[0].get(0, 0).clone();
            action[0].set(0, 0, c.field.add(&x, &c.field.from_i64(2)));
            check("corrupted P{}".into(), p.with_action(action))
        }));
    }
    tasks
}

fn interval_projective_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "thm-interval-projective";
    c.pairs()
        .into_iter()
        .enumerate()
        .map(|(k, (i, j))| -> Task<'a> {
            Box::new(move || {
                let name = c.pair_name(i, j);
                Instance::from_result(
                    T,
                    name.clone(),
                    (|| {
                        let p = HModule::projective(&c.g, &c.field, i, j)?;
                        let b = HModule::interval(&c.g, &c.field, c.g.u(i), c.g.v(j))?;
                        let (pe, be) = (p.basis_elements().unwrap_or(&[]), b.basis_elements().unwrap_or(&[]));
                        if !same_element_set(pe, be) {
                            return Ok(Instance::new(T, name.clone(), Status::Fail, "D_I^J differs from [u_I, v_J]"));
                        }
                        Ok(iso_instance(T, name.clone(), &p.is_isomorphic(&b, c.seed_for(k))))
                    })(),
                )
            })
        })
        .collect()
}

fn decomposition_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "thm-decomposition";
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for (k, (i, j)) in c.pairs().into_iter().enumerate() {
        tasks.push(Box::new(move || {
            let name = c.pair_name(i, j);
            let p = match HModule::projective(&c.g, &c.field, i, j) {
                Ok(p) => p,
                Err(e) => return Instance::new(T, name, Status::Fail, e.to_string()),
            };
            let d = p.decompose(c.seed_for(k));
            let mut want: Vec<usize> = i.between(&j).into_iter().map(|x| c.g.descent_class(x).len()).collect();
            want.sort_unstable();
            if d.dims() != want {
                return Instance::new(T, name, Status::Fail, format!("summand dimensions {:?}, expected {want:?}", d.dims()));
            }
            for s in &d.summands {
                let r = s.is_indecomposable(c.seed_for(k));
                if r != Indecomposability::CertifiedYes {
                    return indecomposable_instance(T, name, &r, true);
                }
            }
            Instance::new(T, name, Status::Pass, "")
        }));
    }
    // Every nonzero quotient and submodule of P_I is indecomposable.
    for (k, i) in Subset::all(c.g.rank()).enumerate() {
        tasks.push(Box::new(move || {
            let name = format!("subquotients of P{i}");
            let iv = WeakInterval::new(&c.g, c.g.u(i), c.g.v(i)).expect("descent class is an interval");
            let y = iv.random_upper_ideal(c.seed_for(1000 + k));
            let mut mods = Vec::new();
            if !y.is_empty() {
                mods.push(HModule::ideal_submodule(&iv, &c.field, &y));
            }
            if y.len() < iv.len() {
                mods.push(HModule::ideal_quotient(&iv, &c.field, &y));
            }
            for m in mods {
                match m {
                    Ok(m) => {
                        let r = m.is_indecomposable(c.seed_for(k));
                        if !r.is_certified() {
                            return indecomposable_instance(T, name, &r, true);
                        }
                    }
                    Err(e) => return Instance::new(T, name, Status::Fail, e.to_string()),
                }
            }
            Instance::new(T, name, Status::Pass, "")
        }));
    }
    tasks
}

fn twist_instance<F: Field>(c: &Ctx<F>, tag: TwistTag, iv: &WeakInterval, y: &crate::UpperIdeal, seed: u64, name: String) -> Instance {
    const T: &str = "thm-twists";
    match verify_twist_theorem(tag, iv, y, &c.field, seed) {
        Ok(check) => {
            if !check.witness_ok {
                Instance::new(T, name, Status::Fail, "the explicit bijection is not an isomorphism")
            } else {
                iso_instance(T, name, &check.outcome)
            }
        }
        Err(e) => Instance::new(T, name, Status::Fail, e.to_string()),
    }
}

fn twist_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "thm-twists";
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for (k, (i, j)) in c.pairs().into_iter().enumerate() {
        for tag in TwistTag::PREDICTED {
            tasks.push(Box::new(move || {
                let iv = WeakInterval::new(&c.g, c.g.u(i), c.g.v(j)).expect("u_I ≤ v_J");
                let name = format!("{tag} full {}", c.pair_name(i, j));
                let a = twist_instance(c, tag, &iv, &iv.empty_ideal(), c.seed_for(k), name.clone());
                if a.status != Status::Pass {
                    return a;
                }
                let y = iv.random_upper_ideal(c.seed_for(k));
                twist_instance(c, tag, &iv, &y, c.seed_for(k), name)
            }));
            tasks.push(Box::new(move || {
                let name = format!("{tag}[P{i}^{j}]");
                let (i2, j2) = twisted_projective_index(&c.g, tag, i, j).expect("predicted tag");
                let r = (|| {
                    let p = HModule::projective(&c.g, &c.field, i, j)?;
                    let q = HModule::projective(&c.g, &c.field, i2, j2)?;
                    Ok(iso_instance(T, name.clone(), &apply_twist(tag, &p).is_isomorphic(&q, c.seed_for(k))))
                })();
                Instance::from_result(T, name.clone(), r)
            }));
        }
    }
    for k in 0..c.cfg.random_triples {
        tasks.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed_for(5000 + k));
            let (u, v) = c.random_pair(&mut rng);
            let iv = WeakInterval::new(&c.g, u, v).expect("u ≤ v");
            let y = iv.random_upper_ideal(c.seed_for(5000 + k));
            let name = format!("random {k:02} [{}, {}] |Y|={}", c.label(u), c.label(v), y.len());
            for tag in TwistTag::PREDICTED {
                let r = twist_instance(c, tag, &iv, &y, c.seed_for(k), name.clone());
                if r.status != Status::Pass {
                    return Instance { detail: format!("{tag}: {}", r.detail), ..r };
                }
            }
            Instance::new(T, name, Status::Pass, "")
        }));
    }
    tasks
}

fn cover_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "thm-covers";
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for (k, (i, j)) in c.pairs().into_iter().enumerate() {
        for w in c.g.descent_class(j) {
            tasks.push(Box::new(move || {
                let name = format!("{} w={}", c.pair_name(i, j), c.label(w));
                let r = (|| {
                    let iv = WeakInterval::new(&c.g, c.g.u(i), c.g.v(j))?;
                    let y = iv.complement_ideal(w)?;
                    if !verify_cover_theorem(&iv, &c.field, i, j, &y)? {
                        return Ok(Instance::new(T, name.clone(), Status::Fail, "kernel is not superfluous"));
                    }
                    if let Some(bad) = lemma_outside_letter(&iv, j, &y) {
                        return Ok(Instance::new(T, name.clone(), Status::Fail, format!("path to {} stays inside J", c.label(bad))));
                    }
                    let m = HModule::interval(&c.g, &c.field, c.g.u(i), w)?;
                    let cert = projective_cover(&m, c.seed_for(k))?;
                    let want = c.expected_summands(i, j);
                    Ok(Instance::check(
                        T,
                        name.clone(),
                        cert.certified() && cert.summands == want,
                        format!("cover {:?}, certified {}", cert.summands, cert.certified()),
                    ))
                })();
                Instance::from_result(T, name.clone(), r)
            }));
        }
        tasks.push(Box::new(move || {
            let name = format!("indecomposable iff I = J, {}", c.pair_name(i, j));
            match HModule::projective(&c.g, &c.field, i, j) {
                Ok(p) => indecomposable_instance(T, name, &p.is_indecomposable(c.seed_for(k)), i == j),
                Err(e) => Instance::new(T, name, Status::Fail, e.to_string()),
            }
        }));
    }
    tasks
}

fn hull_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "thm-hulls";
    let mut tasks: Vec<Task<'a>> = Vec::new();
    let r = c.g.rank();
    for (k, (i, j)) in c.pairs().into_iter().enumerate() {
        for w in c.g.descent_class(i) {
            tasks.push(Box::new(move || {
                let name = format!("{} w={}", c.pair_name(i, j), c.label(w));
                let res = (|| {
                    let iv = WeakInterval::new(&c.g, c.g.u(i), c.g.v(j))?;
                    let y = iv.up_closure(&[w])?;
                    if !verify_hull_theorem(&iv, &c.field, i, j, &y)? {
                        return Ok(Instance::new(T, name.clone(), Status::Fail, "K Y is not essential"));
                    }
                    let m = HModule::interval(&c.g, &c.field, w, c.g.v(j))?;
                    let hull = injective_hull_with(&m, c.socle_index(), c.seed_for(k))?;
                    let want = c.expected_summands(i, j);
                    if !(hull.certified() && hull.summands == want) {
                        return Ok(Instance::new(T, name.clone(), Status::Fail, format!("hull {:?}", hull.summands)));
                    }
                    let dual = projective_cover(&apply_twist(TwistTag::OmegaHat, &m), c.seed_for(k))?;
                    let flipped: Multiplicities = hull.summands.iter().map(|(x, &n)| (x.complement(r), n)).collect();
                    Ok(Instance::check(
                        T,
                        name.clone(),
                        dual.certified() && dual.summands == flipped,
                        format!("cover of the dual is {:?}, expected {flipped:?}", dual.summands),
                    ))
                })();
                Instance::from_result(T, name.clone(), res)
            }));
        }
    }
    tasks
}

fn lemma_w0_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    const T: &str = "lemma-w0";
    let g = &c.g;
    let r = g.rank();
    let w0 = g.w0();
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for i in Subset::all(r) {
        let ci = g.conj_w0_set(i);
        let flip = ci.complement(r);
        let comp = i.complement(r);
        tasks.push(Box::new(move || {
            Instance::check(
                T,
                format!("I={i} (1) conjugation"),
                g.conj_w0(g.u(i)) == g.u(ci) && g.conj_w0(g.v(i)) == g.v(ci),
                "w0 u_I w0 or w0 v_I w0 mismatch",
            )
        }));
        tasks.push(Box::new(move || {
            Instance::check(
                T,
                format!("I={i} (2) right w0"),
                g.multiply(g.u(i), w0) == g.v(flip) && g.multiply(g.v(i), w0) == g.u(flip),
                "u_I w0 or v_I w0 mismatch",
            )
        }));
        tasks.push(Box::new(move || {
            Instance::check(
                T,
                format!("I={i} (3) left w0"),
                g.multiply(w0, g.u(i)) == g.v(comp) && g.multiply(w0, g.v(i)) == g.u(comp),
                "w0 u_I or w0 v_I mismatch",
            )
        }));
    }
    tasks
}

fn section5_tasks<'a, F: Field>(c: &'a Ctx<F>) -> Vec<Task<'a>> {
    match c.g.model() {
        GroupModel::A(r) if r + 1 <= c.cfg.max_n => section5_for(&c.g, &c.field, r + 1, c.seed, c.cfg.max_n),
        _ => Vec::new(),
    }
}

fn section5_for<'a, F: Field>(g: &'a Arc<GroupTable>, field: &'a F, n: usize, seed: u64, max_n: usize) -> Vec<Task<'a>> {
    const T: &str = "section5";
    Composition::all(n)
        .into_iter()
        .map(|alpha| -> Task<'a> {
            Box::new(move || {
                let name = alpha.to_string();
                match verify_section5(g, field, &alpha, seed, max_n) {
                    Ok(rep) => {
                        let bad: Vec<String> = rep.failures().iter().map(|c| format!("{} ({})", c.name, c.detail)).collect();
                        Instance::check(T, name, bad.is_empty(), bad.join("; "))
                    }
                    Err(e) => Instance::new(T, name, Status::Fail, e.to_string()),
                }
            })
        })
        .collect()
}

fn thread_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("ZEROHECKE_THREADS").ok()?.trim().parse().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
}

fn execute(tasks: Vec<Task<'_>>, progress: &(dyn Fn(&Instance) + Sync)) -> Vec<Instance> {
    let run = || {
        tasks
            .par_iter()
            .map(|t| {
                let i = t();
                progress(&i);
                i
            })
            .collect()
    };
    match thread_pool() {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

fn run_with<F: Field>(suite: Suite, cfg: &RunConfig, field: F, progress: &(dyn Fn(&Instance) + Sync)) -> Result<Vec<Instance>> {
    let g = Arc::new(GroupTable::build_bounded(cfg.group, cfg.max_group_size)?);
    let c = Ctx { g, field, seed: cfg.seed, cfg: cfg.clone(), socles: OnceLock::new() };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut tasks: Vec<Task<'_>> = Vec::new();
    for s in suites {
        tasks.extend(match s {
            Suite::Relations => relations_tasks(&c),
            Suite::ThmIntervalProjective => interval_projective_tasks(&c),
            Suite::ThmDecomposition => decomposition_tasks(&c),
            Suite::ThmTwists => twist_tasks(&c),
            Suite::ThmCovers => cover_tasks(&c),
            Suite::ThmHulls => hull_tasks(&c),
            Suite::LemmaW0 => lemma_w0_tasks(&c),
            Suite::Section5 => section5_tasks(&c),
            Suite::All => unreachable!(),
        });
    }
    Ok(execute(tasks, progress))
}

/// Runs a suite on the configured group and field.
pub fn run_suite(suite: Suite, cfg: &RunConfig, progress: &(dyn Fn(&Instance) + Sync)) -> Result<Report> {
    let results = match cfg.field {
        FieldSpec::Rational => run_with(suite, cfg, Rationals, progress)?,
        FieldSpec::Prime(p) => run_with(suite, cfg, PrimeField::new(p)?, progress)?,
    };
    Ok(Report::new(cfg, suite.name(), results))
}

fn section5_with<F: Field>(n: usize, cfg: &RunConfig, field: F, progress: &(dyn Fn(&Instance) + Sync)) -> Result<Vec<Instance>> {
    if n > cfg.max_n {
        return Err(Error::Config(format!("n = {n} exceeds the bound {}", cfg.max_n)));
    }
    let g = symmetric_group(n)?;
    Ok(execute(section5_for(&g, &field, n, cfg.seed, cfg.max_n), progress))
}

/// Runs the type-A sweep over every composition of `n`.
pub fn run_section5(n: usize, cfg: &RunConfig, progress: &(dyn Fn(&Instance) + Sync)) -> Result<Report> {
    let results = match cfg.field {
        FieldSpec::Rational => section5_with(n, cfg, Rationals, progress)?,
        FieldSpec::Prime(p) => section5_with(n, cfg, PrimeField::new(p)?, progress)?,
    };
    let mut report = Report::new(cfg, "section5", results);
    report.group = format!("A{}", n - 1);
    Ok(report)
}

/// Distinct theorem names in a report.
pub fn theorems(report: &Report) -> BTreeSet<&str> {
    report.results.iter().map(|r| r.theorem.as_str()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(_: &Instance) {}

    #[test]
    fn lemma_on_dihedral() {
        let cfg = RunConfig::parse("I2:7", "Q", 0).unwrap();
        let r = run_suite(Suite::LemmaW0, &cfg, &quiet).unwrap();
        assert_eq!(r.summary.pass, 12);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn corruption_is_caught() {
        let mut cfg = RunConfig::parse("A2", "Fp:101", 0).unwrap();
        cfg.inject_corruption = true;
        let r = run_suite(Suite::Relations, &cfg, &quiet).unwrap();
        assert_eq!(r.summary.fail, 1);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
