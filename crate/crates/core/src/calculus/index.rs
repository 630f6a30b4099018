use std::collections::HashMap;

use crate::graded::Parity;

/// Basis tuples `(A₁,…,A_p)` of p-forms: non-decreasing, with even indices never repeated.
/// When even generators come first this is the usual "evens strictly increasing, then odds
/// non-decreasing" ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIndexSet {
    degree: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl GradedIndexSet {
    pub fn new(parities: &[Parity], degree: usize) -> Self {
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(degree);
        extend(parities, degree, 0, &mut cur, &mut tuples);
        let index = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        Self { degree, tuples, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }
}

fn extend(parities: &[Parity], left: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for a in start..parities.len() {
        let next = if parities[a].is_odd() { a } else { a + 1 };
        cur.push(a);
        extend(parities, left - 1, next, cur, out);
        cur.pop();
    }
}

/// Reorders `tuple` into basis order. Returns the sorted tuple and the sign `s` with
/// `ω(tuple) = s·ω(sorted)` for graded-alternating `ω`, or `None` if an even index repeats.
pub fn sort_with_sign(tuple: &[usize], parities: &[Parity]) -> Option<(Vec<usize>, f64)> {
    let mut t = tuple.to_vec();
    let mut sign = 1.0;
    for i in 1..t.len() {
        let mut k = i;
        while k > 0 && t[k - 1] > t[k] {
            sign *= -parities[t[k - 1]].koszul(parities[t[k]]);
            t.swap(k - 1, k);
            k -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1] && !parities[w[0]].is_odd()) {
        return None;
    }
    Some((t, sign))
}

/// `D_p = Σ_{p'} C(n_even, p')·C(n_odd + p − p' − 1, p − p')`.
pub fn expected_size(n_even: usize, n_odd: usize, p: usize) -> usize {
    (0..=p.min(n_even))
        .map(|pe| {
            let po = p - pe;
            let odd = if n_odd == 0 { usize::from(po == 0) } else { binom(n_odd + po - 1, po) };
            binom(n_even, pe) * odd
        })
        .sum()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
