use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use zerohecke::module::Multiplicities;
use zerohecke::qsym::{enumerate_set, enumerate_sit, Composition};
use zerohecke::twist::{apply_twist, TwistTag};
use zerohecke::weak_order::leq_l;
use zerohecke::{Field, GroupModel, GroupTable, HModule, PrimeField, Rationals, Subset, WeakInterval};

const NAMES: [&str; 5] = ["A3", "B3", "I2:5", "A0", "D4"];

fn groups() -> &'static [Arc<GroupTable>] {
    static G: OnceLock<Vec<Arc<GroupTable>>> = OnceLock::new();
    G.get_or_init(|| NAMES.iter().map(|n| Arc::new(GroupTable::build(n.parse::<GroupModel>().unwrap()).unwrap())).collect())
}

/// `u ≤ v` iff `v` is reached from `u` by left multiplications that raise length.
fn reachable(g: &GroupTable, u: usize) -> Vec<bool> {
    let mut seen = vec![false; g.size()];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    while let Some(w) = queue.pop_front() {
        for s in 0..g.rank() {
            let x = g.left_mul(s, w);
            if g.length(x) == g.length(w) + 1 && !seen[x] {
                seen[x] = true;
                queue.push_back(x);
            }
        }
    }
    seen
}

#[test]
fn weak_order_is_closure_of_covers() {
    for g in &groups()[..4] {
        for u in 0..g.size() {
            let up = reachable(g, u);
            for v in 0..g.size() {
                assert_eq!(leq_l(g, u, v), up[v], "{} {} {}", g.model(), g.label(u), g.label(v));
            }
        }
    }
}

#[test]
fn w0_is_unique_top() {
    for g in groups() {
        let tops: Vec<usize> = (0..g.size()).filter(|&w| g.left_descents(w) == g.full_set()).collect();
        assert_eq!(tops, vec![g.w0()]);
        assert_eq!(g.length(g.w0()), g.word(g.w0()).len());
    }
}

fn interval(g: &Arc<GroupTable>, seed: u64) -> WeakInterval {
    let v = (seed % g.size() as u64) as usize;
    let word = g.word(v);
    let cut = (seed / 7 % (word.len() as u64 + 1)) as usize;
    WeakInterval::new(g, g.from_word(&word[cut..]).unwrap(), v).unwrap()
}

fn same_actions<F: Field>(a: &HModule<F>, b: &HModule<F>) -> bool {
    a.actions() == b.actions()
}

fn image_factors(tag: TwistTag, g: &GroupTable, m: &Multiplicities) -> Multiplicities {
    m.iter().map(|(&i, &n)| (tag.simple_image(g, i), n)).collect()
}

fn twist_laws<F: Field>(m: &HModule<F>) {
    let g = m.group();
    let tw = |t, x: &HModule<F>| apply_twist(t, x);
    for tag in TwistTag::ALL {
        let t = tw(tag, m);
        assert!(t.verify_relations(), "{tag}");
        assert_eq!(t.dim(), m.dim());
        assert_eq!(t.composition_factors(), image_factors(tag, g, &m.composition_factors()), "{tag}");
    }
    for tag in [TwistTag::Phi, TwistTag::Theta, TwistTag::Chi] {
        assert!(same_actions(&tw(tag, &tw(tag, m)), m), "{tag} is not an involution");
    }
    assert!(same_actions(&tw(TwistTag::ThetaHat, m), &tw(TwistTag::Chi, &tw(TwistTag::Theta, m))));
    assert!(same_actions(&tw(TwistTag::ThetaHat, m), &tw(TwistTag::Theta, &tw(TwistTag::Chi, m))));
    assert!(same_actions(&tw(TwistTag::OmegaHat, m), &tw(TwistTag::Phi, &tw(TwistTag::ThetaHat, m))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ideals_split_intervals(k in 0usize..4, seed in any::<u64>()) {
        let g = &groups()[k];
        let iv = interval(g, seed);
        let y = iv.random_upper_ideal(seed);
        prop_assert!(iv.is_upper_ideal(&y.members(&iv)).unwrap());
        let f = PrimeField::new(101).unwrap();
        let sub = HModule::ideal_submodule(&iv, &f, &y).unwrap();
        let quo = HModule::ideal_quotient(&iv, &f, &y).unwrap();
        prop_assert_eq!(sub.dim() + quo.dim(), iv.len());
        prop_assert!(sub.verify_relations() && quo.verify_relations());
    }

    #[test]
    fn up_closure_is_an_upper_ideal(k in 0usize..4, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = &groups()[k];
        let iv = interval(g, seed);
        let w = iv.members()[pick.index(iv.len())];
        let y = iv.up_closure(&[w]).unwrap();
        let members = y.members(&iv);
        prop_assert!(iv.is_upper_ideal(&members).unwrap());
        prop_assert!(members.iter().all(|&x| leq_l(g, w, x)));
        prop_assert_eq!(members.len(), iv.members().iter().filter(|&&x| leq_l(g, w, x)).count());
    }

    #[test]
    fn twists_on_intervals(k in 0usize..4, seed in any::<u64>(), rational in any::<bool>()) {
        let g = &groups()[k];
        let iv = interval(g, seed);
        if rational {
            twist_laws(&HModule::interval_of(&iv, &Rationals));
        } else {
            twist_laws(&HModule::interval_of(&iv, &PrimeField::new(101).unwrap()));
        }
    }

    #[test]
    fn twists_on_projectives(k in 0usize..5, bits in any::<(u64, u64)>()) {
        let g = &groups()[k];
        let full = g.full_set().0;
        let j = Subset(bits.0 & full);
        let i = Subset(bits.1 & j.0);
        twist_laws(&HModule::projective(g, &PrimeField::new(101).unwrap(), i, j).unwrap());
    }

    #[test]
    fn projective_dimension_is_a_class_sum(k in 0usize..5, bits in any::<(u64, u64)>()) {
        let g = &groups()[k];
        let full = g.full_set().0;
        let j = Subset(bits.0 & full);
        let i = Subset(bits.1 & j.0);
        let p = HModule::projective(g, &Rationals, i, j).unwrap();
        let want: usize = i.between(&j).iter().map(|&x| g.descent_class(x).len()).sum();
        prop_assert_eq!(p.dim(), want);
    }

    #[test]
    fn reading_words_reverse(parts in prop::collection::vec(1usize..4, 1..4)) {
        let alpha = Composition::new(parts).unwrap();
        prop_assume!(alpha.n() <= 7);
        let sit = enumerate_sit(&alpha, 7).unwrap();
        let set = enumerate_set(&alpha, 7).unwrap();
        prop_assert!(!sit.is_empty());
        prop_assert!(set.iter().all(|t| sit.contains(t)));
        for t in &sit {
            let mut r = t.rw();
            r.reverse();
            prop_assert_eq!(r, t.rw_r());
        }
    }

    #[test]
    fn composition_set_round_trip(n in 1usize..8, bits in any::<u64>()) {
        let s = Subset(bits & ((1 << (n - 1)) - 1));
        let alpha = Composition::from_set(s, n).unwrap();
        prop_assert_eq!(alpha.n(), n);
        prop_assert_eq!(alpha.set(), s);
        prop_assert_eq!(alpha.reverse().reverse(), alpha);
    }
}
