//! Oracles shared by the integration tests. Each is computed from first
//! principles, independently of the library code it checks.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Euclidean coordinates of a D_n root given in simple-root coordinates,
/// with α_i = e_i − e_{i+1} for i < n and α_n = e_{n−1} + e_n.
pub fn d_euclidean(coords: &[i64]) -> Vec<i64> {
    let n = coords.len();
    let mut e = vec![0; n];
    for (i, &c) in coords.iter().enumerate() {
        if i + 1 < n {
            e[i] += c;
            e[i + 1] -= c;
        } else {
            e[n - 2] += c;
            e[n - 1] += c;
        }
    }
    e
}

/// `e_i ± e_j` (1-based) in a space of dimension `n`.
pub fn e_pm(n: usize, i: usize, j: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] = 1;
    v[j - 1] = sign;
    v
}

/// Every factor label with its dimension, by a direct scan of (n, k) and m.
pub fn oracle_factors(max_dim: usize) -> Vec<(usize, String)> {
    let mut out = BTreeSet::new();
    for n in 2..=max_dim {
        for k in 2..=n {
            if n + 3 > 2 * k {
                let dim = 4 * (k - 1) * (n + 2 - k);
                let small = n + 3 - 2 * k;
                let label = if small == 1 { format!("SU({})", n + 1) } else { format!("SU({})/SU({small})", n + 1) };
                if dim <= max_dim {
                    out.insert((dim, label));
                }
            }
        }
    }
    for m in (2..=max_dim).step_by(2) {
        if m * (m + 2) <= max_dim {
            out.insert((m * (m + 2), format!("SU({})", m + 1)));
        }
    }
    out.into_iter().collect()
}

/// Multisets of factor labels (each sorted) with total dimension ≤ `max_dim`.
pub fn oracle_spaces(max_dim: usize) -> BTreeSet<Vec<String>> {
    let factors = oracle_factors(max_dim);
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, usize, Vec<String>)> = vec![(0, 0, Vec::new())];
    while let Some((from, dim, labels)) = stack.pop() {
        for (i, (d, l)) in factors.iter().enumerate().skip(from) {
            if dim + d <= max_dim {
                let mut next = labels.clone();
                next.push(l.clone());
                let mut key = next.clone();
                key.sort();
                out.insert(key);
                stack.push((i, dim + d, next));
            }
        }
    }
    out
}
