//! Permutations of the embedding set, with cycle notation parsing and
//! rendering and bounded group closure.

use std::collections::BTreeSet;

/// A permutation of `0..n`, stored as the image vector: `apply(i) = map[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n).collect(),
        }
    }

    pub fn from_images(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm { map })
    }

    /// Build from disjoint cycles over `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x >= n || touched[x] {
                    return None; // out of range or not disjoint
                }
                touched[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                map[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Some(Perm { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            map: (0..self.len()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Perm { map: inv }
    }

    /// Disjoint cycles, each starting at its least element, sorted by
    /// first element; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }
}

/// Closure of a generating set under composition, capped at `bound`
/// elements.  Returns the sorted element list (identity first, then
/// lexicographic by image vector), or `None` if the bound is exceeded.
pub fn generate_group(n: usize, generators: &[Perm], bound: usize) -> Option<Vec<Perm>> {
    let mut elements: BTreeSet<Perm> = BTreeSet::new();
    elements.insert(Perm::identity(n));
    let mut frontier: Vec<Perm> = vec![Perm::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if elements.insert(q.clone()) {
                if elements.len() > bound {
                    return None;
                }
                frontier.push(q);
            }
        }
    }
    // BTreeSet iteration is lexicographic on image vectors; the identity
    // (0,1,2,…) is automatically first.
    Some(elements.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Perm::from_cycles(5, &[vec![0, 2, 4], vec![1, 3]]).unwrap();
        assert_eq!(p.apply(0), 2);
        assert_eq!(p.apply(4), 0);
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.cycles(), vec![vec![0, 2, 4], vec![1, 3]]);
    }

    #[test]
    fn overlapping_cycles_rejected() {
        assert!(Perm::from_cycles(4, &[vec![0, 1], vec![1, 2]]).is_none());
        assert!(Perm::from_cycles(3, &[vec![0, 5]]).is_none());
    }

    #[test]
    fn compose_and_inverse() {
        let p = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let q = p.inverse();
        assert!(p.compose(&q).is_identity());
        // p² = (0 2)(1 3)
        let p2 = p.compose(&p);
        assert_eq!(p2.cycles(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn cyclic_group_closure() {
        let p = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let g = generate_group(4, &[p], 64).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g[0].is_identity());
    }

    #[test]
    fn klein_four_group_from_two_generators() {
        let a = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let g = generate_group(4, &[a, b], 64).unwrap();
        assert_eq!(g.len(), 4);
    }

    #[test]
    fn closure_bound_enforced() {
        let p = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let q = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        // ⟨(01234),(01)⟩ = S₅ of order 120 > 60.
        assert!(generate_group(5, &[p, q], 60).is_none());
    }
}
