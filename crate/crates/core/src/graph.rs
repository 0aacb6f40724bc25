//! Undirected simple graphs and the combinatorial primitives the analysis
//! needs: complements, induced subgraphs, regularity, edge densities,
//! cliques and automorphisms.
//!
//! Vertices are `0..n` internally. [`VertexSet::from_labels`],
//! [`Graph::from_labeled_edges`] and every `Display` impl use 1-based labels.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, Matrix};
use crate::rational::Rational;
use crate::simplex::VertexFamily;

/// A sorted, duplicate-free set of 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Builds a set from 1-based labels. Panics on label 0.
    pub fn from_labels(labels: &[usize]) -> Self {
        VertexSet::new(labels.iter().map(|&l| {
            assert!(l >= 1, "vertex labels are 1-based");
            l - 1
        }))
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Every nonempty subset of `0..n`, ordered by bitmask.
    pub fn all_nonempty_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
        assert!(n < 64);
        (1u64..(1u64 << n)).map(move |mask| VertexSet((0..n).filter(|i| mask >> i & 1 == 1).collect()))
    }

    /// Subsets of `0..n` with between 1 and `max_size` elements, ordered by
    /// size and then lexicographically.
    pub fn subsets_up_to(n: usize, max_size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for k in 1..=max_size.min(n) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                out.push(VertexSet(idx.clone()));
                let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                    break;
                };
                idx[pos] += 1;
                for q in pos + 1..k {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
        out
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// A vertex permutation, stored as the image of each 0-based vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Panics if `images` is not a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Permutation(images)
    }

    /// Transposition of two 0-based vertices.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Permutation(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AutomorphismLimits {
    pub max_vertices: usize,
    pub max_group_order: usize,
}

impl Default for AutomorphismLimits {
    fn default() -> Self {
        AutomorphismLimits {
            max_vertices: 16,
            max_group_order: 1_000_000,
        }
    }
}

/// Subgraph induced by a vertex set, relabeled to `0..|s|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[k]` is the vertex of the parent graph mapped to `k`.
    pub original: Vec<usize>,
}

/// Pairwise edge densities of a family plus its class sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub densities: Matrix,
    pub sizes: Vec<usize>,
}

impl DensityMatrix {
    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn get(&self, l: usize, m: usize) -> &Rational {
        &self.densities[l][m]
    }

    /// The diagonal matrix of class sizes.
    pub fn lambda(&self) -> Matrix {
        let k = self.k();
        (0..k)
            .map(|l| {
                (0..k)
                    .map(|m| {
                        if l == m {
                            Rational::from_integer(self.sizes[l].into())
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.adj[i * n + j] = true;
                }
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Builds a graph from 0-based edges. Duplicate edges collapse.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v + 1, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i + 1));
            }
            g.adj[i * n + j] = true;
            g.adj[j * n + i] = true;
        }
        Ok(g)
    }

    /// Builds a graph from 1-based edges.
    pub fn from_labeled_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == 0 || j == 0 {
                return Err(Error::VertexOutOfRange { vertex: 0, n });
            }
            zero_based.push((i - 1, j - 1));
        }
        Graph::from_edges(n, zero_based)
    }

    /// Builds a graph from a bitmask over the pairs `(i, j)`, `i < j`, in
    /// lexicographic order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    g.adj[i * n + j] = true;
                    g.adj[j * n + i] = true;
                }
                bit += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    /// Edges `(i, j)` with `i < j`, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        self.adjacency_submatrix(&VertexSet::full(self.n))
    }

    /// The principal submatrix `A[S, S]`.
    pub fn adjacency_submatrix(&self, s: &VertexSet) -> Matrix {
        s.iter()
            .map(|i| {
                s.iter()
                    .map(|j| {
                        if self.has_edge(i, j) {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in 0..n {
                g.adj[i * n + j] = i != j && !self.has_edge(i, j);
            }
        }
        g
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        match s.max_vertex() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange {
                vertex: v + 1,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(s)?;
        let original: Vec<usize> = s.iter().collect();
        let k = original.len();
        let mut g = Graph::empty(k);
        for (a, &i) in original.iter().enumerate() {
            for (b, &j) in original.iter().enumerate() {
                g.adj[a * k + b] = self.has_edge(i, j);
            }
        }
        Ok(InducedSubgraph { graph: g, original })
    }

    /// The common degree, or `None` when degrees differ.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut degrees = (0..self.n).map(|i| self.degree(i));
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    /// Degree of `v` inside `s` (neighbors of `v` that lie in `s`).
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> usize {
        s.iter().filter(|&u| self.has_edge(v, u)).count()
    }

    /// Whether `G[s]` is regular; `None` for the empty set.
    pub fn induced_regular_degree(&self, s: &VertexSet) -> Option<usize> {
        let mut degrees = s.iter().map(|v| self.degree_into(v, s));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter()
            .all(|i| s.iter().all(|j| i == j || self.has_edge(i, j)))
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|i| s.iter().all(|j| !self.has_edge(i, j)))
    }

    /// Ordered adjacent pairs in `s1 × s2`; an edge inside `s1 ∩ s2`
    /// counts twice.
    pub fn edge_count_between(&self, s1: &VertexSet, s2: &VertexSet) -> Result<u64> {
        self.check_set(s1)?;
        self.check_set(s2)?;
        Ok(s1
            .iter()
            .map(|i| s2.iter().filter(|&j| self.has_edge(i, j)).count() as u64)
            .sum())
    }

    pub fn edge_density(&self, s1: &VertexSet, s2: &VertexSet) -> Result<Rational> {
        let e = self.edge_count_between(s1, s2)?;
        Ok(Rational::new(
            e.into(),
            ((s1.len() * s2.len()) as u64).into(),
        ))
    }

    pub fn density_matrix(&self, family: &VertexFamily) -> Result<DensityMatrix> {
        for class in family.classes() {
            self.check_set(class)?;
        }
        let classes = family.classes();
        let k = classes.len();
        let mut densities = vec![vec![Rational::zero(); k]; k];
        for l in 0..k {
            for m in l..k {
                let d = self.edge_density(&classes[l], &classes[m])?;
                densities[m][l] = d.clone();
                densities[l][m] = d;
            }
        }
        Ok(DensityMatrix {
            densities,
            sizes: classes.iter().map(VertexSet::len).collect(),
        })
    }

    /// All maximal cliques, each sorted, listed in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if self.n == 0 {
            return out;
        }
        let mut current = Vec::new();
        self.bron_kerbosch(&mut current, (0..self.n).collect(), Vec::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        current: &mut Vec<usize>,
        candidates: Vec<usize>,
        mut excluded: Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() {
                out.push(VertexSet::new(current.iter().copied()));
            }
            return;
        }
        // Tomita pivot: maximize neighbors among candidates.
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .copied()
            .max_by_key(|&u| candidates.iter().filter(|&&v| self.has_edge(u, v)).count())
            .expect("nonempty");
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| !self.has_edge(pivot, v))
            .collect();
        let mut candidates = candidates;
        for v in branch {
            let next_c: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&u| self.has_edge(v, u))
                .collect();
            let next_x: Vec<usize> = excluded
                .iter()
                .copied()
                .filter(|&u| self.has_edge(v, u))
                .collect();
            current.push(v);
            self.bron_kerbosch(current, next_c, next_x, out);
            current.pop();
            candidates.retain(|&u| u != v);
            excluded.push(v);
        }
    }

    pub fn clique_number(&self) -> usize {
        self.maximal_cliques()
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
    }

    pub fn automorphisms(&self) -> Result<Vec<Permutation>> {
        self.automorphisms_with(AutomorphismLimits::default())
    }

    /// The full automorphism group as explicit permutations, identity first,
    /// in lexicographic order of image vectors.
    pub fn automorphisms_with(&self, limits: AutomorphismLimits) -> Result<Vec<Permutation>> {
        if self.n > limits.max_vertices {
            return Err(Error::AutomorphismLimit {
                n: self.n,
                limit: limits.max_vertices,
            });
        }
        let colors = self.refined_colors();
        let mut image = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        let mut out = Vec::new();
        self.extend_automorphism(0, &colors, &mut image, &mut used, &mut out, limits.max_group_order)?;
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        v: usize,
        colors: &[usize],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
        max_order: usize,
    ) -> Result<()> {
        if v == self.n {
            if out.len() == max_order {
                return Err(Error::AutomorphismGroupTooLarge(max_order));
            }
            out.push(Permutation(image.clone()));
            return Ok(());
        }
        for w in 0..self.n {
            if used[w] || colors[w] != colors[v] {
                continue;
            }
            if (0..v).any(|u| self.has_edge(v, u) != self.has_edge(w, image[u])) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            self.extend_automorphism(v + 1, colors, image, used, out, max_order)?;
            used[w] = false;
        }
        image[v] = usize::MAX;
        Ok(())
    }

    /// Color refinement starting from the degree partition. Automorphisms
    /// preserve the stable coloring.
    fn refined_colors(&self) -> Vec<usize> {
        let mut colors: Vec<usize> = self.degree_sequence();
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.neighbors(v).map(|u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
            for sig in &signatures {
                let next = ids.len();
                ids.entry(sig).or_insert(next);
            }
            let refined: Vec<usize> = signatures.iter().map(|s| ids[s]).collect();
            let before = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
            if ids.len() == before {
                return refined;
            }
            colors = refined;
        }
    }

    /// Automorphisms of `G[s]`, extended to permutations of all `n`
    /// vertices that fix every vertex outside `s`.
    pub fn support_automorphisms(&self, s: &VertexSet) -> Result<Vec<Permutation>> {
        let sub = self.induced_subgraph(s)?;
        let local = sub.graph.automorphisms()?;
        Ok(local
            .into_iter()
            .map(|p| {
                let mut images: Vec<usize> = (0..self.n).collect();
                for (k, &v) in sub.original.iter().enumerate() {
                    images[v] = sub.original[p.apply(k)];
                }
                Permutation(images)
            })
            .collect())
    }

    /// True iff `-c` is not an eigenvalue of `A[S, S]`, i.e.
    /// `det(A[S, S] + c I) != 0`, decided exactly.
    pub fn is_c_eigenvalue_free(&self, s: &VertexSet, c: &Rational) -> Result<bool> {
        self.check_set(s)?;
        let mut m = self.adjacency_submatrix(s);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c;
        }
        Ok(!determinant(&m).is_zero())
    }

    /// Whether `p` maps edges of `G[s]` onto edges of `G[s]` and fixes
    /// the complement of `s`.
    pub fn is_support_automorphism(&self, s: &VertexSet, p: &Permutation) -> bool {
        if p.len() != self.n {
            return false;
        }
        let fixes_outside = (0..self.n).filter(|&v| !s.contains(v)).all(|v| p.apply(v) == v);
        let preserves = s
            .iter()
            .all(|i| s.contains(p.apply(i)) && s.iter().all(|j| self.has_edge(i, j) == self.has_edge(p.apply(i), p.apply(j))));
        fixes_outside && preserves
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (k, (i, j)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", i + 1, j + 1)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_subsets() {
        let all = VertexSet::subsets_up_to(5, 5);
        assert_eq!(all.len(), 31);
        assert_eq!(VertexSet::subsets_up_to(5, 2).len(), 15);
        assert_eq!(VertexSet::subsets_up_to(40, 2).len(), 40 + 780);
        let two = VertexSet::subsets_up_to(4, 2);
        assert_eq!(two[4], VertexSet::new([0, 1]));
        assert_eq!(two.last(), Some(&VertexSet::new([2, 3])));
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        assert_eq!(all, sorted);
    }
    use crate::rational::{int, rat};

    fn cherry() -> Graph {
        Graph::from_labeled_edges(3, &[(1, 3), (2, 3)]).unwrap()
    }

    fn counterexample() -> Graph {
        Graph::from_labeled_edges(4, &[(1, 2), (1, 3), (1, 4), (3, 4)]).unwrap()
    }

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels)
    }

    #[test]
    fn complement_examples() {
        let c = cherry().complement();
        assert_eq!(c, Graph::from_labeled_edges(3, &[(1, 2)]).unwrap());
        assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
        let g = Graph::from_pair_mask(6, 0b101_1001_0110_0011);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_identity_entrywise() {
        let g = Graph::from_pair_mask(5, 0b10_0110_1101);
        let gc = g.complement();
        for i in 0..5 {
            for j in 0..5 {
                let sum = g.has_edge(i, j) as u8 + gc.has_edge(i, j) as u8 + (i == j) as u8;
                assert_eq!(sum, 1);
            }
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = cherry();
        let s = g.induced_subgraph(&set(&[1, 2])).unwrap();
        assert_eq!(s.graph, Graph::empty(2));
        assert_eq!(s.original, vec![0, 1]);
        let s = g.induced_subgraph(&set(&[2, 3])).unwrap();
        assert_eq!(s.graph, Graph::complete(2));
        let k5 = Graph::complete(5);
        assert_eq!(k5.induced_subgraph(&set(&[1, 4, 5])).unwrap().graph, Graph::complete(3));
        assert_eq!(
            g.induced_subgraph(&VertexSet::default()).unwrap_err(),
            Error::EmptyVertexSet
        );
        assert_eq!(Error::EmptyVertexSet.to_string(), "empty induced set");
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(cherry().regular_degree(), None);
        assert_eq!(Graph::cycle(4).regular_degree(), Some(2));
        assert_eq!(Graph::empty(1).regular_degree(), Some(0));
    }

    #[test]
    fn edge_counts_and_densities() {
        let g = cherry();
        assert_eq!(g.edge_count_between(&set(&[1, 2]), &set(&[3])).unwrap(), 2);
        assert_eq!(g.edge_count_between(&set(&[1, 2]), &set(&[1, 2])).unwrap(), 0);
        let k3 = Graph::complete(3);
        assert_eq!(k3.edge_count_between(&set(&[1, 2, 3]), &set(&[1, 2, 3])).unwrap(), 6);
        assert!(g.edge_count_between(&VertexSet::default(), &set(&[1])).is_err());

        assert_eq!(g.edge_density(&set(&[1, 2]), &set(&[3])).unwrap(), int(1));
        assert_eq!(k3.edge_density(&set(&[1, 2, 3]), &set(&[1, 2, 3])).unwrap(), rat(2, 3));
        let h = counterexample();
        assert_eq!(h.edge_density(&set(&[1, 2]), &set(&[3, 4])).unwrap(), rat(1, 2));
    }

    #[test]
    fn density_matrix_examples() {
        let h = counterexample();
        let fam = VertexFamily::new(vec![set(&[1, 2]), set(&[3, 4])]).unwrap();
        let d = h.density_matrix(&fam).unwrap();
        assert_eq!(d.densities, vec![vec![rat(1, 2); 2]; 2]);
        assert_eq!(d.sizes, vec![2, 2]);

        let fam = VertexFamily::new(vec![set(&[1, 2]), set(&[3])]).unwrap();
        let d = cherry().density_matrix(&fam).unwrap();
        assert_eq!(d.densities, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(d.lambda(), vec![vec![int(2), int(0)], vec![int(0), int(1)]]);

        let k4 = Graph::complete(4);
        let fam = VertexFamily::new(vec![VertexSet::full(4)]).unwrap();
        assert_eq!(k4.density_matrix(&fam).unwrap().densities, vec![vec![rat(3, 4)]]);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(cherry().maximal_cliques(), vec![set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(cherry().clique_number(), 2);
        assert_eq!(Graph::complete(5).maximal_cliques(), vec![VertexSet::full(5)]);
        assert_eq!(Graph::complete(5).clique_number(), 5);
        let c5 = Graph::cycle(5);
        assert_eq!(c5.maximal_cliques().len(), 5);
        assert!(c5.maximal_cliques().iter().all(|c| c.len() == 2));
        assert_eq!(c5.clique_number(), 2);
        assert_eq!(Graph::empty(3).maximal_cliques().len(), 3);
    }

    #[test]
    fn automorphism_examples() {
        let auts = cherry().automorphisms().unwrap();
        assert_eq!(auts, vec![Permutation::identity(3), Permutation::swap(3, 0, 1)]);
        assert_eq!(Graph::complete(3).automorphisms().unwrap().len(), 6);
        let p4 = Graph::path(4).automorphisms().unwrap();
        assert_eq!(p4, vec![Permutation::identity(4), Permutation::from_images(vec![3, 2, 1, 0])]);
        assert_eq!(Graph::cycle(4).automorphisms().unwrap().len(), 8);
        let err = Graph::empty(17).automorphisms().unwrap_err();
        assert!(err.to_string().contains("automorphism search limit"));
    }

    #[test]
    fn support_automorphisms_fix_the_outside() {
        let g = Graph::from_labeled_edges(5, &[(1, 3), (2, 3), (4, 5)]).unwrap();
        let s = set(&[1, 2, 3]);
        let auts = g.support_automorphisms(&s).unwrap();
        assert_eq!(auts.len(), 2);
        for p in &auts {
            assert!(g.is_support_automorphism(&s, p));
            assert_eq!(p.apply(3), 3);
            assert_eq!(p.apply(4), 4);
        }
    }

    #[test]
    fn eigenvalue_freeness() {
        // det of the cherry adjacency matrix is zero (rows 1 and 2 coincide)
        let g = cherry();
        assert!(!g.is_c_eigenvalue_free(&VertexSet::full(3), &int(0)).unwrap());
        assert!(g.is_c_eigenvalue_free(&VertexSet::full(3), &int(1)).unwrap());
        assert!(!g.is_c_eigenvalue_free(&set(&[1, 2]), &int(0)).unwrap());
        assert!(g.is_c_eigenvalue_free(&VertexSet::full(3), &int(4)).unwrap());
        // K3 has eigenvalues 2, -1, -1
        let k3 = Graph::complete(3);
        assert!(!k3.is_c_eigenvalue_free(&VertexSet::full(3), &int(1)).unwrap());
        assert!(!k3.is_c_eigenvalue_free(&VertexSet::full(3), &int(-2)).unwrap());
        assert!(k3.is_c_eigenvalue_free(&VertexSet::full(3), &rat(1, 2)).unwrap());
    }
}
