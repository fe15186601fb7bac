//! Permutation signs for graded symmetric algebra.

/// All `(i, n − i)` unshuffles of `0..n`: permutations increasing on the
/// first `i` and on the last `n − i` positions, in lexicographic order of
/// the first block.
pub fn unshuffles(i: usize, n: usize) -> Vec<Vec<usize>> {
    assert!(i <= n, "unshuffle block larger than the permutation");
    let mut out = Vec::new();
    let mut head = Vec::with_capacity(i);
    choose(0, i, n, &mut head, &mut out);
    out
}

fn choose(start: usize, left: usize, n: usize, head: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if left == 0 {
        let mut perm = head.clone();
        perm.extend((0..n).filter(|k| !head.contains(k)));
        out.push(perm);
        return;
    }
    for k in start..=n - left {
        head.push(k);
        choose(k + 1, left - 1, n, head, out);
        head.pop();
    }
}

/// Signature of `perm` (as `±1`), where `perm[k]` is the original position
/// of the element placed at `k`.
pub fn signature(perm: &[usize]) -> i64 {
    let mut sign = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Koszul sign of rearranging elements of the given degrees into the order
/// `perm`: every pair that crosses contributes `(−1)^{|a||b|}`.
pub fn koszul_sign(perm: &[usize], degrees: &[usize]) -> i64 {
    assert_eq!(perm.len(), degrees.len(), "one degree per element");
    let mut sign = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degrees[perm[a]] % 2 == 1 && degrees[perm[b]] % 2 == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).expect("successor exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
}
