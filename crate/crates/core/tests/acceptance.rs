//! The acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::sync::Arc;
use std::time::Instant;

use zerohecke::homology::projective_cover;
use zerohecke::module::total;
use zerohecke::qsym::{ascent_pair_leq, build_w, enumerate_sit, perm_id, symmetric_group, Composition};
use zerohecke::verify::{run_section5, run_suite, Instance, Report, Suite};
use zerohecke::weak_order::leq_l;
use zerohecke::{Field, GroupModel, GroupTable, HModule, PrimeField, Rationals, RunConfig, Subset};

type Outcome = Result<String, String>;

const ALL_GROUPS: [&str; 6] = ["A3", "A4", "B3", "D4", "I2:5", "I2:7"];
const FIELDS: [&str; 2] = ["Q", "Fp:101"];

fn quiet(_: &Instance) {}

fn group(name: &str) -> Arc<GroupTable> {
    Arc::new(GroupTable::build(name.parse::<GroupModel>().unwrap()).unwrap())
}

fn clean(r: &Report) -> Result<usize, String> {
    if r.summary.fail == 0 && r.summary.undetermined == 0 && r.summary.pass > 0 {
        return Ok(r.summary.pass);
    }
    let bad: Vec<String> = r.results.iter().filter(|i| i.status.to_string() != "PASS").take(5).map(|i| i.to_string()).collect();
    Err(format!("{} {} {}: {}", r.suite, r.group, r.field, bad.join(" | ")))
}

/// Runs `suite` on every group over both fields; returns the number of instances.
fn sweep(suite: Suite, groups: &[&str]) -> Result<usize, String> {
    let mut n = 0;
    for g in groups {
        for f in FIELDS {
            let cfg = RunConfig::parse(g, f, 0).map_err(|e| e.to_string())?;
            n += clean(&run_suite(suite, &cfg, &quiet).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(n)
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn relations() -> Outcome {
    let n = sweep(Suite::Relations, &ALL_GROUPS)?;
    Ok(format!("{n} modules"))
}

fn interval_projective() -> Outcome {
    for (g, pairs) in [("A3", 27), ("B3", 27), ("I2:5", 9)] {
        for f in FIELDS {
            let cfg = RunConfig::parse(g, f, 0).unwrap();
            let n = clean(&run_suite(Suite::ThmIntervalProjective, &cfg, &quiet).unwrap())?;
            ensure(n == pairs, || format!("{g} {f}: {n} pairs, expected {pairs}"))?;
        }
    }
    Ok("63 pairs per field".into())
}

fn split_of_p1_13<F: Field>(field: F) -> Result<(), String> {
    let g = group("A3");
    let p = HModule::projective(&g, &field, Subset::from_one_based(&[1]), Subset::from_one_based(&[1, 3])).unwrap();
    let dims = p.decompose(7).dims();
    ensure(dims == vec![3, 5], || format!("P_1^13 splits as {dims:?}"))
}

fn decomposition() -> Outcome {
    let n = sweep(Suite::ThmDecomposition, &["A3", "B3"])?;
    split_of_p1_13(Rationals)?;
    split_of_p1_13(PrimeField::new(101).unwrap())?;
    Ok(format!("{n} instances, A3 P_1^13 = 3 + 5"))
}

/// Right descents of every permutation of 1..=4 in one-line notation.
fn brute_force_a3_census() -> Vec<usize> {
    let mut counts = vec![0; 8];
    let mut perm = [1, 2, 3, 4];
    let mut visit = |p: &[usize; 4]| {
        let mask = (0..3).filter(|&i| p[i] > p[i + 1]).fold(0, |m, i| m | 1 << i);
        counts[mask] += 1;
    };
    // Heap's algorithm.
    let mut c = [0usize; 4];
    visit(&perm);
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    counts
}

fn census_for<F: Field>(field: &F) -> Result<(), String> {
    for name in ALL_GROUPS {
        let g = group(name);
        for i in Subset::all(g.rank()) {
            let d = HModule::projective_indecomposable(&g, field, i).dim();
            ensure(d == g.descent_class(i).len(), || format!("{name}: dim P{i} = {d}"))?;
        }
    }
    Ok(())
}

fn census() -> Outcome {
    let g = group("A3");
    let sizes: Vec<usize> = Subset::all(3).map(|i| g.descent_class(i).len()).collect();
    ensure(sizes == [1, 3, 5, 3, 3, 5, 3, 1], || format!("A3 sizes {sizes:?}"))?;
    ensure(sizes == brute_force_a3_census(), || "disagrees with permutation count".into())?;
    ensure(sizes.iter().sum::<usize>() == 24, || "sum".into())?;
    census_for(&Rationals)?;
    census_for(&PrimeField::new(101).unwrap())?;
    Ok("A3 (1,3,5,3,3,5,3,1), dim P_I = |D_I| on six groups".into())
}

fn socle_top_for<F: Field>(field: &F) -> Result<(), String> {
    for name in ALL_GROUPS {
        let g = group(name);
        for i in Subset::all(g.rank()) {
            let p = HModule::projective_indecomposable(&g, field, i);
            ensure(total(&p.top()) == 1, || format!("{name}: top P{i} is not simple"))?;
            ensure(total(&p.socle_multiplicities()) == 1, || format!("{name}: socle P{i} is not simple"))?;
            let pos = p.basis_elements().unwrap().iter().position(|&w| w == g.v(i)).unwrap();
            let mut e = vec![field.zero(); p.dim()];
            e[pos] = field.one();
            ensure(p.socle().dim() == 1 && p.socle().contains(&e), || format!("{name}: socle P{i} is not spanned by v_I"))?;
        }
    }
    let g = group("A3");
    let el = |s: &str| g.parse_element(s).unwrap();
    let m = HModule::interval(&g, field, el("2143"), el("4132")).unwrap();
    let basis = m.basis_elements().unwrap();
    let unit = |s: &str| {
        let mut v = vec![field.zero(); m.dim()];
        v[basis.iter().position(|&w| w == el(s)).unwrap()] = field.one();
        v
    };
    let diff: Vec<F::Elem> = unit("3142").iter().zip(unit("4132")).map(|(a, b)| field.sub(a, &b)).collect();
    let soc = m.socle();
    ensure(soc.dim() >= 2, || format!("soc B(2143,4132) has dim {}", soc.dim()))?;
    ensure(soc.contains(&diff) && soc.contains(&unit("4132")), || "soc B(2143,4132) misses 3142 - 4132 or 4132".into())
}

fn socle_top() -> Outcome {
    socle_top_for(&Rationals)?;
    socle_top_for(&PrimeField::new(101).unwrap())?;
    Ok("simple on six groups, soc B(2143,4132) as expected".into())
}

fn twists() -> Outcome {
    let n = sweep(Suite::ThmTwists, &["A3", "B3", "I2:7"])?;
    Ok(format!("{n} instances"))
}

fn cover_example<F: Field>(field: F) -> Result<(), String> {
    let g = group("A3");
    let m = HModule::interval(&g, &field, g.parse_element("2134").unwrap(), g.parse_element("4132").unwrap()).unwrap();
    let c = projective_cover(&m, 3).map_err(|e| e.to_string())?;
    let want = [(Subset::from_one_based(&[1]), 1), (Subset::from_one_based(&[1, 3]), 1)].into_iter().collect();
    ensure(c.certified() && c.summands == want, || format!("cover of B(2134,4132) is {:?}", c.summands))
}

fn covers() -> Outcome {
    let n = sweep(Suite::ThmCovers, &["A3", "B3", "I2:5"])?;
    cover_example(Rationals)?;
    cover_example(PrimeField::new(101).unwrap())?;
    Ok(format!("{n} instances, B(2134,4132) covered by P_1 + P_13"))
}

fn hulls() -> Outcome {
    let n = sweep(Suite::ThmHulls, &["A3", "B3", "I2:5"])?;
    Ok(format!("{n} instances with dual covers"))
}

fn lemma_w0() -> Outcome {
    let n = sweep(Suite::LemmaW0, &ALL_GROUPS)?;
    Ok(format!("{n} identities"))
}

fn section5() -> Outcome {
    let mut n = 0;
    for f in FIELDS {
        let cfg = RunConfig { max_n: 6, ..RunConfig::parse("A3", f, 0).unwrap() };
        for size in 1..=6 {
            let k = clean(&run_section5(size, &cfg, &quiet).map_err(|e| e.to_string())?)?;
            ensure(k == 1 << (size - 1), || format!("{k} compositions of {size}"))?;
            n += k;
        }
    }
    let alpha: Composition = "2,2".parse().unwrap();
    let sit = enumerate_sit(&alpha, 6).unwrap();
    ensure(sit.len() == 3, || format!("|SIT(2,2)| = {}", sit.len()))?;
    let g = symmetric_group(4).unwrap();
    let field = Rationals;
    let w = build_w(&g, &field, &alpha, 6).unwrap();
    let b = HModule::interval(&g, &field, perm_id(&g, &[2, 3, 1, 4]).unwrap(), perm_id(&g, &[3, 4, 1, 2]).unwrap()).unwrap();
    ensure(w.is_isomorphic(&b, 1).is_isomorphic(), || "W(2,2) is not B(2314,3412)".into())?;
    Ok(format!("{n} compositions, |SIT(2,2)| = 3, W(2,2) = B(2314,3412)"))
}

fn cross_oracle() -> Outcome {
    let mut pairs = 0;
    for n in [4, 5] {
        let g = symmetric_group(n).unwrap();
        let perm = |w| g.canonical(w).iter().map(|&x| x as usize).collect::<Vec<_>>();
        for u in 0..g.size() {
            for v in 0..g.size() {
                let (pu, pv) = (perm(u), perm(v));
                ensure(ascent_pair_leq(&pu, &pv) == leq_l(&g, u, v), || format!("disagree on {pu:?} <= {pv:?}"))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs == 576 + 14400, || format!("{pairs} pairs"))?;
    Ok(format!("{pairs} pairs"))
}

fn determinism() -> Outcome {
    for f in FIELDS {
        let cfg = RunConfig::parse("A3", f, 11).unwrap();
        let a = run_suite(Suite::All, &cfg, &quiet).map_err(|e| e.to_string())?.to_json();
        std::env::set_var("ZEROHECKE_THREADS", "1");
        let b = run_suite(Suite::All, &cfg, &quiet).map_err(|e| e.to_string())?.to_json();
        std::env::remove_var("ZEROHECKE_THREADS");
        ensure(a == b, || format!("{f}: reports differ"))?;
    }
    Ok("parallel and single-threaded reports identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("relations", relations),
        ("interval-projective", interval_projective),
        ("decomposition", decomposition),
        ("descent census", census),
        ("socle and top", socle_top),
        ("twists", twists),
        ("covers", covers),
        ("hulls", hulls),
        ("lemma-w0", lemma_w0),
        ("section5", section5),
        ("ascent pairs vs weak order", cross_oracle),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS {:>2} {name}: {d} ({secs:.1}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
