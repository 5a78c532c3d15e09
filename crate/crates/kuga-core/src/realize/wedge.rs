//! Exterior powers of a module map, acting by derivations on the
//! k-th wedge of the standard basis.
//!
//! Basis order: when `split_last` is set, the k-subsets of {0,…,n−1}
//! that avoid the last index n−1 come first (in lexicographic order),
//! followed by those containing it.  For a Hermitian form
//! diag(I_{n−1}, −1) on the standard module this makes the induced
//! form on the wedge diagonal with all positives first, which is the
//! layout the realification step expects.

use std::collections::BTreeMap;

use crate::linalg::{Mat, Scalar};

/// Enumerate k-subsets in the required basis order.
pub fn wedge_subsets(n: usize, k: usize, split_last: bool) -> Vec<Vec<usize>> {
    assert!(k >= 1 && k <= n);
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        all.push(cur.clone());
        // Next k-subset in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if cur[i] != i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return order_subsets(all, n, split_last);
            }
        }
    }
}

fn order_subsets(all: Vec<Vec<usize>>, n: usize, split_last: bool) -> Vec<Vec<usize>> {
    if !split_last {
        return all;
    }
    let (without, with): (Vec<_>, Vec<_>) = all.into_iter().partition(|s| !s.contains(&(n - 1)));
    without.into_iter().chain(with).collect()
}

/// Index lookup for a subset list.
pub fn subset_index(subsets: &[Vec<usize>]) -> BTreeMap<Vec<usize>, usize> {
    subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect()
}

/// The derivation action of `x` on Λᵏ of the standard module:
/// x·(e_{t₁} ∧ … ∧ e_{tₖ}) = Σ e_{t₁} ∧ … ∧ (x e_{tᵢ}) ∧ … ∧ e_{tₖ}.
pub fn wedge_derivation<S: Scalar>(
    x: &Mat<S>,
    subsets: &[Vec<usize>],
    index: &BTreeMap<Vec<usize>, usize>,
) -> Mat<S> {
    let dim = subsets.len();
    let mut out = Mat::<S>::zeros(dim, dim);
    for (col, t_set) in subsets.iter().enumerate() {
        for (pos, &t) in t_set.iter().enumerate() {
            for s in 0..x.rows() {
                let coeff = x.at(s, t).clone();
                if coeff.is_zero() {
                    continue;
                }
                if s == t {
                    let cur = out.at(col, col).clone();
                    out.set(col, col, cur.add(coeff));
                    continue;
                }
                if t_set.binary_search(&s).is_ok() {
                    continue; // repeated factor: wedge vanishes
                }
                // Replace t by s, count crossings for the sign.
                let mut new_set = t_set.clone();
                new_set.remove(pos);
                let (lo, hi) = if s < t { (s, t) } else { (t, s) };
                let crossings = new_set.iter().filter(|&&u| lo < u && u < hi).count();
                let ins = new_set.binary_search(&s).unwrap_err();
                new_set.insert(ins, s);
                let row = *index.get(&new_set).expect("subset in index");
                let signed = if crossings % 2 == 0 {
                    coeff
                } else {
                    coeff.neg()
                };
                let cur = out.at(row, col).clone();
                out.set(row, col, cur.add(signed));
            }
        }
    }
    out
}

/// Number of positives of the induced diagonal form on the wedge when
/// the module form is diag(I_{n−1}, −1) and the basis is split-last
/// ordered: exactly the subsets avoiding n−1 are positive.
pub fn wedge_positives(n: usize, k: usize) -> usize {
    crate::satake::binom((n - 1) as u64, k as u64) as usize
}
