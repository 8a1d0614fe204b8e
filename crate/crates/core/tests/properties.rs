use hopfspecies::combinat::LabelSet;
use hopfspecies::fock::{k_encode, PackedWord};
use hopfspecies::rational::{frac, q};
use hopfspecies::setcomp::{deconcat, internal_delta, internal_delta_via_cont, quasi_shuffle, shuffle, theta_q, SetComposition};
use hopfspecies::{LinComb, Q};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn lincomb() -> impl Strategy<Value = LinComb<u8>> {
    prop::collection::vec((0u8..6, rational()), 0..6).prop_map(|ts| {
        let mut r = LinComb::zero();
        for (k, c) in ts {
            r.add_term(k, c);
        }
        r
    })
}

/// Packs arbitrary letters into a set composition of `prefix1 … prefixn`.
fn composition(prefix: &'static str, max: usize) -> impl Strategy<Value = SetComposition> {
    prop::collection::vec(0usize..max, 0..=max).prop_map(move |w| {
        let mut vals = w.clone();
        vals.sort();
        vals.dedup();
        let blocks = vals
            .iter()
            .map(|v| {
                w.iter()
                    .enumerate()
                    .filter(|(_, x)| *x == v)
                    .map(|(i, _)| format!("{prefix}{}", i + 1))
                    .collect::<LabelSet>()
            })
            .collect();
        SetComposition::new(blocks).unwrap()
    })
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn delannoy(k: usize, l: usize) -> u64 {
    (0..=k.min(l)).map(|i| binom(k, i) * binom(l, i) * (1u64 << i)).sum()
}

proptest! {
    #[test]
    fn lincomb_is_a_vector_space(a in lincomb(), b in lincomb(), c in lincomb(), s in rational(), t in rational()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&b).scale(&s), a.scale(&s).add(&b.scale(&s)));
        prop_assert_eq!(a.scale(&(&s + &t)), a.scale(&s).add(&a.scale(&t)));
        prop_assert_eq!(a.scale(&s).scale(&t), a.scale(&(&s * &t)));
        prop_assert!(a.scale(&q(0)).is_empty());
        prop_assert!(a.iter().all(|(_, c)| *c != q(0)));
    }

    #[test]
    fn quasi_shuffle_counts_and_symmetry(x in composition("a", 4), y in composition("b", 4)) {
        let p = quasi_shuffle(&x, &y).unwrap();
        prop_assert_eq!(p.clone(), quasi_shuffle(&y, &x).unwrap());
        prop_assert_eq!(p.len() as u64, delannoy(x.len(), y.len()));
        prop_assert!(p.iter().all(|(_, c)| *c == q(1)));
        let s = shuffle(&x, &y).unwrap();
        prop_assert_eq!(s.len() as u64, binom(x.len() + y.len(), x.len()));
        prop_assert!(s.keys().all(|k| p.coeff(k) == q(1)));
    }

    #[test]
    fn quasi_shuffle_is_associative(x in composition("a", 3), y in composition("b", 3), z in composition("c", 2)) {
        let left: LinComb<SetComposition> = quasi_shuffle(&x, &y).unwrap().map(|u| quasi_shuffle(u, &z).unwrap());
        let right: LinComb<SetComposition> = quasi_shuffle(&y, &z).unwrap().map(|v| quasi_shuffle(&x, v).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn deconcatenation_recovers_prefixes(x in composition("a", 5)) {
        let blocks = x.blocks();
        for i in 0..=blocks.len() {
            let prefix: LabelSet = blocks[..i].iter().flatten().cloned().collect();
            let (l, r) = deconcat(&x, &prefix).unwrap().expect("prefix union splits");
            prop_assert_eq!(l.concat(&r), x.clone());
            prop_assert_eq!(l.len(), i);
        }
    }

    #[test]
    fn internal_delta_formulas_agree(x in composition("a", 5)) {
        prop_assert_eq!(internal_delta(&x), internal_delta_via_cont(&x));
    }

    #[test]
    fn theta_is_multiplicative_in_q(x in composition("a", 4), s in rational(), t in rational()) {
        let lhs = theta_q(&theta_q(&LinComb::basis(x.clone()), &t), &s);
        prop_assert_eq!(lhs, theta_q(&LinComb::basis(x.clone()), &(&s * &t)));
        prop_assert_eq!(theta_q(&LinComb::basis(x.clone()), &q(1)), LinComb::basis(x));
    }

    #[test]
    fn packed_words_round_trip(x in composition("", 5)) {
        let w: PackedWord = k_encode(&x).unwrap();
        prop_assert_eq!(w.to_setcomp(), x.clone());
        prop_assert_eq!(PackedWord::max(&w), x.len());
        prop_assert_eq!(w.letters().len(), x.ground().len());
    }
}
