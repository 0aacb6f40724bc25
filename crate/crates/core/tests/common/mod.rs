//! Independent reference computations used by the integration tests. Each
//! works from the adjacency relation directly, without the library's solvers.

#![allow(dead_code)]

use mskkt::graph::{Graph, VertexSet};
use mskkt::rational::{rat, Rational};
use mskkt::simplex::SimplexPoint;
use num_traits::{One, Zero};
use rand::Rng;

pub fn cherry() -> Graph {
    Graph::from_labeled_edges(3, &[(1, 3), (2, 3)]).unwrap()
}

pub fn counterexample() -> Graph {
    Graph::from_labeled_edges(4, &[(1, 2), (1, 3), (1, 4), (3, 4)]).unwrap()
}

pub fn two_triangles() -> Graph {
    Graph::from_labeled_edges(5, &[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)]).unwrap()
}

fn entry(g: &Graph, c: &Rational, i: usize, j: usize) -> Rational {
    if i == j {
        c.clone()
    } else if g.has_edge(i, j) {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `xᵀ(A + cI)x` as a double sum.
pub fn objective(g: &Graph, c: &Rational, x: &[Rational]) -> Rational {
    let n = g.n();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            acc += entry(g, c, i, j) * &x[i] * &x[j];
        }
    }
    acc
}

pub fn payoffs(g: &Graph, c: &Rational, x: &[Rational]) -> Vec<Rational> {
    let n = g.n();
    (0..n)
        .map(|i| (0..n).map(|j| entry(g, c, i, j) * &x[j]).sum())
        .collect()
}

/// Stationarity as "payoffs agree across the support".
pub fn is_gkkt(g: &Graph, c: &Rational, x: &[Rational]) -> bool {
    let mx = payoffs(g, c, x);
    let support: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
    support.iter().all(|&i| mx[i] == mx[support[0]])
}

pub fn is_kkt(g: &Graph, c: &Rational, x: &[Rational]) -> bool {
    if !is_gkkt(g, c, x) {
        return false;
    }
    let mx = payoffs(g, c, x);
    let top = (0..x.len()).filter(|&i| !x[i].is_zero()).map(|i| &mx[i]).next().unwrap().clone();
    mx.iter().all(|v| *v <= top)
}

pub fn subset_is_regular(g: &Graph, s: &[usize]) -> bool {
    let deg = |i: usize| s.iter().filter(|&&j| g.has_edge(i, j)).count();
    s.iter().all(|&i| deg(i) == deg(s[0]))
}

pub fn clique_number(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|mask| {
            (0..n).all(|i| {
                (i + 1..n).all(|j| mask & (1 << i) == 0 || mask & (1 << j) == 0 || g.has_edge(i, j))
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let pairs = pair_index(n);
    let perms = permutations(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        slot[i][j] = k;
        slot[j][i] = k;
    }
    let total = 1u64 << pairs.len();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for mask in 0..total {
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().fold(0u64, |acc, (k, &(i, j))| {
                    if mask & (1 << k) != 0 {
                        acc | 1 << slot[p[i]][p[j]]
                    } else {
                        acc
                    }
                })
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            reps.push(Graph::from_pair_mask(n, mask));
        }
    }
    reps
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = pair_index(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// A rational point of `Δ_n` with random support and small denominators.
pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> SimplexPoint {
    loop {
        let w: Vec<i64> = (0..n)
            .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=6) })
            .collect();
        let total: i64 = w.iter().sum();
        if total > 0 {
            return SimplexPoint::new(w.iter().map(|&v| rat(v, total)).collect()).unwrap();
        }
    }
}

pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let den = rng.gen_range(1..=12);
    rat(rng.gen_range(lo * den..=hi * den), den)
}

pub fn vertex_sets(n: usize) -> Vec<VertexSet> {
    VertexSet::all_nonempty_subsets(n).collect()
}
