//! Labels and small enumerators shared by the combinatorial modules.

use std::collections::BTreeSet;

pub type Label = String;
pub type LabelSet = BTreeSet<Label>;

pub fn labelset(xs: &[&str]) -> LabelSet {
    xs.iter().map(|s| s.to_string()).collect()
}

/// All subsets of `0..n` as bitmasks, in increasing mask order.
pub fn masks(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

pub fn subsets_of(s: &LabelSet) -> Vec<LabelSet> {
    let v: Vec<&Label> = s.iter().collect();
    masks(v.len())
        .map(|m| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, l)| (*l).clone())
                .collect()
        })
        .collect()
}

/// Set partitions of `0..n`, groups listed by increasing minimum.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for g in 0..cur.len() {
            cur[g].push(i);
            rec(i + 1, n, cur, out);
            cur[g].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// All maps `[n] -> [k]` (values `1..=k`) that are onto, over every `k`.
pub fn surjections(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(surjections_onto(n, k));
    }
    out
}

pub fn surjections_onto(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if k == 0 {
        return out;
    }
    let mut w = vec![1usize; n];
    loop {
        let mut seen = vec![false; k + 1];
        for &x in &w {
            seen[x] = true;
        }
        if seen[1..].iter().all(|&b| b) {
            out.push(w.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if w[i] < k {
                w[i] += 1;
                for x in w.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn max_or_zero(w: &[usize]) -> usize {
    w.iter().copied().max().unwrap_or(0)
}

/// Groups the items `0..w.len()` by value: entry `i` lists the items with value `i + 1`.
pub fn fibers(w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); max_or_zero(w)];
    for (i, &x) in w.iter().enumerate() {
        out[x - 1].push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let bell: Vec<usize> = (0..6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
        let fubini: Vec<usize> = (0..6).map(|n| surjections(n).len()).collect();
        assert_eq!(fubini, vec![1, 1, 3, 13, 75, 541]);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(subsets_of(&labelset(&["a", "b", "c"])).len(), 8);
    }

    #[test]
    fn fibers_group_by_value() {
        assert_eq!(fibers(&[2, 1, 2]), vec![vec![1], vec![0, 2]]);
    }
}
