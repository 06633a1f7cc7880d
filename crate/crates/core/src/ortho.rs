//! Orthogonal 0/1-simplices: nonobtuse simplices whose fully indecomposable
//! pieces are all cube edges. Their edges along those pieces form a spanning
//! tree of mutually orthogonal edges, and the tree's shape determines the
//! simplex up to symmetry.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::bitcore::BinMatrix;
use crate::error::{Error, Result};
use crate::exact::determinant_bin;
use crate::geometry::classify;
use crate::structure::indecomposable_components;

pub const MAX_UPPER_TRIANGULAR_DIM: usize = 8;

pub fn is_orthogonal_simplex(p: &BinMatrix) -> Result<bool> {
    p.require_square()?;
    if determinant_bin(p)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if !classify(p).is_nonobtuse() {
        return Ok(false);
    }
    Ok(indecomposable_components(p)?
        .components
        .iter()
        .all(|c| c.dimension == 1))
}

/// All `n!` upper triangular representations built by repeatedly extending
/// `P` to `[[P, r], [0, 1]]` with `r` a column of `[0 | P]`.
pub fn enumerate_upper_triangular_ortho(n: usize) -> Result<Vec<BinMatrix>> {
    if !(1..=MAX_UPPER_TRIANGULAR_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange {
            n,
            min: 1,
            max: MAX_UPPER_TRIANGULAR_DIM,
        });
    }
    // Column bit patterns, bit i = row i.
    let mut level: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..n {
        let mut next = Vec::with_capacity(level.len() * (k + 1));
        for cols in &level {
            for r in std::iter::once(0).chain(cols.iter().copied()) {
                let mut ext = cols.clone();
                ext.push(r | 1 << k);
                next.push(ext);
            }
        }
        level = next;
    }
    level
        .iter()
        .map(|cols| BinMatrix::from_column_bits(n, cols))
        .collect()
}

/// Spanning tree on the `n + 1` vertex ids of a simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthoTree {
    pub nodes: usize,
    /// Edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl OrthoTree {
    pub fn new(nodes: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        OrthoTree { nodes, edges }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Degrees sorted in decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adjacency().iter().map(|x| x.len()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `n` edges connecting all `n + 1` nodes.
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.nodes {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Isomorphism-invariant encoding: the smaller AHU string over the one or
    /// two centers.
    pub fn canonical_encoding(&self) -> String {
        let adj = self.adjacency();
        centers(&adj)
            .into_iter()
            .map(|c| {
                if let Some(other) = centers(&adj)
                    .into_iter()
                    .find(|&o| o != c && adj[c].contains(&o))
                {
                    // Bicentral: root at the central edge.
                    let a = ahu(&adj, c, other);
                    let b = ahu(&adj, other, c);
                    let (x, y) = if a <= b { (a, b) } else { (b, a) };
                    format!("[{x}{y}]")
                } else {
                    ahu(&adj, c, usize::MAX)
                }
            })
            .min()
            .unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &OrthoTree) -> bool {
        self.nodes == other.nodes && self.canonical_encoding() == other.canonical_encoding()
    }
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            degree[l] = 0;
        }
        for &l in &leaves {
            for &w in &adj[l] {
                if degree[w] == 0 {
                    continue;
                }
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        leaves = next;
    }
    leaves.sort_unstable();
    leaves
}

fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu(adj, w, v))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

/// Each one-dimensional piece is an edge from its attachment vertex to its
/// own vertex; together they span all vertices.
pub fn spanning_tree(p: &BinMatrix) -> Result<OrthoTree> {
    if !is_orthogonal_simplex(p)? {
        return Err(Error::NotOrthogonal);
    }
    let c = indecomposable_components(p)?;
    let edges = c
        .components
        .iter()
        .map(|x| (x.attachment, x.vertices[1]))
        .collect();
    Ok(OrthoTree::new(p.nrows() + 1, edges))
}

/// Groups trees by isomorphism class and returns the class sizes keyed by
/// canonical encoding.
pub fn tree_classes(trees: &[OrthoTree]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for t in trees {
        *out.entry(t.canonical_encoding()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::equivalent;
    use crate::geometry::{right_dihedral_count, Verdict};
    use crate::golden;

    #[test]
    fn recognition_examples() {
        assert!(is_orthogonal_simplex(&BinMatrix::identity(4)).unwrap());
        assert!(!is_orthogonal_simplex(&golden::nonacute_fi_9()).unwrap());
        assert!(is_orthogonal_simplex(&golden::path(3)).unwrap());
        let bidiagonal = BinMatrix::parse("110\n011\n001").unwrap();
        assert_eq!(classify(&bidiagonal).verdict, Verdict::Obtuse);
        assert!(!is_orthogonal_simplex(&golden::acute_7()).unwrap());
        assert!(!is_orthogonal_simplex(&golden::projection_5()).unwrap());
        assert_eq!(
            is_orthogonal_simplex(&BinMatrix::all_ones(2, 2)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn upper_triangular_counts() {
        let mut fact = 1;
        for n in 1..=6 {
            fact *= n;
            let all = enumerate_upper_triangular_ortho(n).unwrap();
            assert_eq!(all.len(), fact);
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), fact, "distinct at n = {n}");
        }
        assert_eq!(
            enumerate_upper_triangular_ortho(1).unwrap(),
            vec![BinMatrix::identity(1)]
        );
        assert!(enumerate_upper_triangular_ortho(0).is_err());
        assert!(enumerate_upper_triangular_ortho(9).is_err());
    }

    #[test]
    fn upper_triangular_outputs_are_orthogonal() {
        for n in 1..=5 {
            for p in enumerate_upper_triangular_ortho(n).unwrap() {
                for i in 0..n {
                    for j in 0..i {
                        assert!(!p.get(i, j));
                    }
                    assert!(p.get(i, i));
                }
                assert!(is_orthogonal_simplex(&p).unwrap(), "{p:?}");
                assert_eq!(right_dihedral_count(&p).unwrap(), n * (n - 1) / 2);
                let v = classify(&p).verdict;
                assert!(if n == 1 {
                    v == Verdict::Acute
                } else {
                    v == Verdict::Nonobtuse
                });
                assert!(spanning_tree(&p).unwrap().is_tree());
            }
        }
    }

    #[test]
    fn spanning_tree_examples() {
        let star = spanning_tree(&BinMatrix::identity(3)).unwrap();
        assert_eq!(star.edges, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.degree_sequence(), vec![3, 1, 1, 1]);
        let path = spanning_tree(&golden::path(3)).unwrap();
        assert_eq!(path.degree_sequence(), vec![2, 2, 1, 1]);
        assert!(!path.is_isomorphic(&star));
        assert_eq!(spanning_tree(&golden::acute_7()), Err(Error::NotOrthogonal));

        let trees: Vec<OrthoTree> = enumerate_upper_triangular_ortho(3)
            .unwrap()
            .iter()
            .map(|p| spanning_tree(p).unwrap())
            .collect();
        assert_eq!(tree_classes(&trees).len(), 2);
    }

    #[test]
    fn unlabeled_tree_counts() {
        // Unlabeled trees on n + 1 nodes: 1, 1, 2, 3, 6, 11.
        for (n, expected) in [(1, 1), (2, 1), (3, 2), (4, 3), (5, 6), (6, 11)] {
            let trees: Vec<OrthoTree> = enumerate_upper_triangular_ortho(n)
                .unwrap()
                .iter()
                .map(|p| spanning_tree(p).unwrap())
                .collect();
            assert_eq!(tree_classes(&trees).len(), expected, "n = {n}");
        }
    }

    #[test]
    fn equivalence_matches_tree_isomorphism() {
        for n in 1..=4 {
            let reps = enumerate_upper_triangular_ortho(n).unwrap();
            let trees: Vec<OrthoTree> = reps.iter().map(|p| spanning_tree(p).unwrap()).collect();
            for a in 0..reps.len() {
                for b in a..reps.len() {
                    assert_eq!(
                        equivalent(&reps[a], &reps[b]).unwrap(),
                        trees[a].is_isomorphic(&trees[b]),
                        "{:?} {:?}",
                        reps[a],
                        reps[b]
                    );
                }
            }
        }
    }
}
