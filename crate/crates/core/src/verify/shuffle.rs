//! Shuffle products on index words and the symmetry predicates built on them.

use std::collections::HashMap;

/// All shuffles of two disjoint index words, by the recursive rule
/// ab # cd = a(b # cd) + c(ab # d).
pub fn shuffle(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for rest in shuffle(&a[1..], b) {
        let mut w = vec![a[0]];
        w.extend(rest);
        out.push(w);
    }
    for rest in shuffle(a, &b[1..]) {
        let mut w = vec![b[0]];
        w.extend(rest);
        out.push(w);
    }
    out
}

/// Shuffles of two letter sequences, as sequences.
pub fn shuffle_seqs(a: &crate::bimould::Seq, b: &crate::bimould::Seq) -> Vec<crate::bimould::Seq> {
    let k = a.len();
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = (k..k + b.len()).collect();
    let pool: Vec<crate::bimould::Letter> =
        a.0.iter().chain(b.0.iter()).cloned().collect();
    shuffle(&first, &second)
        .into_iter()
        .map(|word| crate::bimould::Seq(word.into_iter().map(|i| pool[i].clone()).collect()))
        .collect()
}

/// The alternating antipode sum over prefix/reversed-suffix shuffles vanishes
/// in the free shuffle algebra; checked symbolically on index words.
pub fn shuffle_antipode_vanishes(max_len: usize) -> bool {
    for r in 1..=max_len {
        let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
        for i in 0..=r {
            let prefix: Vec<usize> = (1..=i).collect();
            let rev_suffix: Vec<usize> = (i + 1..=r).rev().collect();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for w in shuffle(&prefix, &rev_suffix) {
                *acc.entry(w).or_insert(0) += sign;
            }
        }
        if acc.values().any(|&c| c != 0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_shuffle() {
        let s = shuffle(&[1], &[2]);
        assert_eq!(s, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(shuffle(&[1, 2], &[3]).len(), 3);
        assert_eq!(shuffle(&[1, 2, 3], &[4, 5, 6]).len(), 20);
    }

    #[test]
    fn antipode_vanishes_up_to_six() {
        assert!(shuffle_antipode_vanishes(6));
    }

    #[test]
    fn seq_shuffle_interleaves_letters() {
        use crate::bimould::Seq;
        let id = Seq::identity(3);
        let a = Seq(id.slice(0..1).to_vec());
        let b = Seq(id.slice(1..3).to_vec());
        let all = shuffle_seqs(&a, &b);
        assert_eq!(all.len(), 3);
        // Every shuffle contains both inputs as subsequences.
        assert!(all.contains(&id));
    }
}
