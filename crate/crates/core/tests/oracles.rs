mod common;

use std::collections::BTreeSet;

use common::*;
use hopfspecies::characters::ground_of_size;
use hopfspecies::combinat::LabelSet;
use hopfspecies::fock::chromatic_polynomial;
use hopfspecies::graphs::{ao_count, graphs_on, phi_chr};
use hopfspecies::rational::q;
use hopfspecies::setcomp::{enumerate_cont, SetComposition};
use hopfspecies::topology::{open_sets, phi_ehr, phi_ehr_q, phi_weak, topologies_on, weak_extensions, QuasiPoset};
use hopfspecies::LinComb;

/// Maps `[n] -> [0, m)` whose image is exactly `[0, m)`, for some `m`.
fn packed(n: usize) -> Vec<Vec<usize>> {
    tuples(n, n.max(1))
        .filter(|f| {
            let m = f.iter().map(|&x| x + 1).max().unwrap_or(0);
            (0..m).all(|v| f.contains(&v))
        })
        .collect()
}

fn fibers(blocks: &[LabelSet], f: &[usize]) -> SetComposition {
    let m = f.iter().map(|&x| x + 1).max().unwrap_or(0);
    let parts = (0..m)
        .map(|v| {
            blocks
                .iter()
                .zip(f)
                .filter(|(_, &x)| x == v)
                .flat_map(|(b, _)| b.iter().cloned())
                .collect()
        })
        .collect();
    SetComposition::new(parts).unwrap()
}

fn up_closed(t: &QuasiPoset, s: &BTreeSet<usize>) -> bool {
    let lt = t.lt();
    s.iter().all(|&i| (0..lt.len()).all(|j| !lt[i][j] || s.contains(&j)))
}

fn small_topologies() -> Vec<QuasiPoset> {
    (0..=4).flat_map(|n| topologies_on(&ground_of_size(n))).collect()
}

#[test]
fn cont_pairs_match_brute_force() {
    for k in 0..=4 {
        let mut want = BTreeSet::new();
        for s in packed(k) {
            if !s.windows(2).all(|w| w[0] <= w[1]) {
                continue;
            }
            for t in packed(k) {
                if (0..k).all(|i| (i + 1..k).all(|j| s[i] != s[j] || t[i] < t[j])) {
                    let shift = |v: &Vec<usize>| v.iter().map(|x| x + 1).collect::<Vec<_>>();
                    want.insert((shift(&s), shift(&t)));
                }
            }
        }
        let got: BTreeSet<_> = enumerate_cont(k).into_iter().collect();
        assert_eq!(got, want, "k = {k}");
    }
}

#[test]
fn open_sets_are_the_up_closed_sets() {
    for t in small_topologies() {
        let n = t.classes().len();
        let want: BTreeSet<Vec<usize>> = (0..1u32 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|s| up_closed(&t, s))
            .map(|s| s.into_iter().collect())
            .collect();
        let got: BTreeSet<Vec<usize>> = open_sets(&t)
            .into_iter()
            .map(|mut s| {
                s.sort();
                s
            })
            .collect();
        assert_eq!(got, want, "{t}");
    }
}

/// Compositions of the classes whose every suffix union is open are the
/// fibers of the weakly increasing packed maps.
#[test]
fn weak_extensions_match_suffix_open_compositions() {
    for t in small_topologies() {
        let n = t.classes().len();
        let suffix_open: BTreeSet<Vec<usize>> = packed(n)
            .into_iter()
            .filter(|f| {
                let m = f.iter().map(|&x| x + 1).max().unwrap_or(0);
                (0..m).all(|i| {
                    let suffix: BTreeSet<usize> = (0..n).filter(|&c| f[c] >= i).collect();
                    up_closed(&t, &suffix)
                })
            })
            .collect();
        let got: BTreeSet<Vec<usize>> = weak_extensions(&t)
            .into_iter()
            .map(|f| f.into_iter().map(|x| x - 1).collect())
            .collect();
        assert_eq!(got, suffix_open, "{t}");
    }
}

#[test]
fn phi_ehr_at_minus_one_sums_weak_extensions() {
    for t in small_topologies() {
        assert_eq!(phi_ehr_q(&t, &q(-1)), phi_weak(&t), "{t}");
        assert_eq!(phi_ehr_q(&t, &q(1)), phi_ehr(&t), "{t}");
    }
}

#[test]
fn phi_ehr_sums_strict_packed_maps() {
    for t in small_topologies() {
        let lt = t.lt();
        let n = t.classes().len();
        let want: LinComb<SetComposition> = ones(
            packed(n)
                .into_iter()
                .filter(|f| (0..n).all(|i| (0..n).all(|j| !lt[i][j] || f[i] < f[j])))
                .map(|f| fibers(t.classes(), &f)),
        );
        assert_eq!(phi_ehr(&t), want, "{t}");
    }
}

#[test]
fn phi_chr_sums_proper_packed_colorings() {
    for n in 0..=4 {
        for g in graphs_on(&ground_of_size(n)) {
            let k = g.blocks().len();
            let want: LinComb<SetComposition> = ones(
                packed(k)
                    .into_iter()
                    .filter(|f| g.edges().iter().all(|&(a, b)| f[a] != f[b]))
                    .map(|f| fibers(g.blocks(), &f)),
            );
            assert_eq!(phi_chr(&g), want, "{g}");
        }
    }
}

#[test]
fn chromatic_at_minus_one_counts_acyclic_orientations() {
    for n in 0..=4 {
        for g in graphs_on(&ground_of_size(n)) {
            let sign = if g.blocks().len() % 2 == 0 { q(1) } else { q(-1) };
            let p = chromatic_polynomial(&g, &q(1));
            assert_eq!(p.eval(&q(-1)), sign * q(ao_count(&g) as i64), "{g}");
            assert_eq!(ao_count(&g) as usize, acyclic_orientations(&g), "{g}");
        }
    }
}
