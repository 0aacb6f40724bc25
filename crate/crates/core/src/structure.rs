//! Barycentric reduction over vertex families, highly regular families,
//! two-block segments, generalized stars and shared-core clique
//! configurations.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{DensityMatrix, Graph, VertexSet};
use crate::kkt::{stationary_set, KktCertificate, ParametricProgram, StationarySet, Verdict};
use crate::linalg::{feasible_point, Matrix};
use crate::rational::{format_rational, int, Rational};
use crate::simplex::{lift, SimplexPoint, VertexFamily};

fn size(s: &VertexSet) -> Rational {
    Rational::from_integer(s.len().into())
}

fn check_family(g: &Graph, fam: &VertexFamily) -> Result<()> {
    match fam.union().max_vertex() {
        Some(v) if v >= g.n() => Err(Error::VertexOutOfRange { vertex: v + 1, n: g.n() }),
        _ => Ok(()),
    }
}

/// Whether `d({i}, V_m) = d(V_l, V_m)` for every pair of classes and every
/// `i ∈ V_l`.
pub fn is_highly_regular(g: &Graph, fam: &VertexFamily) -> Result<bool> {
    check_family(g, fam)?;
    let d = g.density_matrix(fam)?;
    let classes = fam.classes();
    Ok(classes.iter().enumerate().all(|(l, vl)| {
        classes.iter().enumerate().all(|(m, vm)| {
            vl.iter().all(|i| {
                Rational::from_integer(g.degree_into(i, vm).into()) / size(vm) == *d.get(l, m)
            })
        })
    }))
}

/// The same property stated as: every `G[V_l]` is regular and every vertex
/// of `V_l` has the same number of neighbors in each other class.
pub fn is_highly_regular_by_degrees(g: &Graph, fam: &VertexFamily) -> Result<bool> {
    check_family(g, fam)?;
    let classes = fam.classes();
    let blocks_regular = classes.iter().all(|v| g.induced_regular_degree(v).is_some());
    let cross_constant = classes.iter().all(|vl| {
        classes.iter().all(|vm| {
            let first = g.degree_into(vl.as_slice()[0], vm);
            vl.iter().all(|i| g.degree_into(i, vm) == first)
        })
    });
    Ok(blocks_regular && cross_constant)
}

/// Largest support for which [`highly_regular_partitions`] enumerates.
pub const MAX_PARTITION_SEARCH: usize = 10;

/// Every highly regular partition of `s`.
pub fn highly_regular_partitions(g: &Graph, s: &VertexSet) -> Result<Vec<VertexFamily>> {
    if s.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if s.len() > MAX_PARTITION_SEARCH {
        return Err(Error::Precondition(format!(
            "partition search limited to {MAX_PARTITION_SEARCH} vertices; supply a candidate family"
        )));
    }
    let mut out = Vec::new();
    for fam in VertexFamily::all_partitions(s) {
        if is_highly_regular(g, &fam)? {
            out.push(fam);
        }
    }
    Ok(out)
}

/// The program `max yᵀ(D + cΛ⁻¹)y` over `Δ_k` attached to a family.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedProgram {
    pub densities: DensityMatrix,
    pub c: Rational,
    pub family: VertexFamily,
}

impl ReducedProgram {
    pub fn k(&self) -> usize {
        self.family.k()
    }

    /// `D + cΛ⁻¹`.
    pub fn matrix(&self) -> Matrix {
        let mut m = self.densities.densities.clone();
        for (l, row) in m.iter_mut().enumerate() {
            row[l] += &self.c / Rational::from_integer(self.densities.sizes[l].into());
        }
        m
    }

    pub fn objective(&self, y: &[Rational]) -> Result<Rational> {
        let m = self.check_dim(y)?;
        Ok((0..y.len())
            .map(|l| (0..y.len()).map(|j| &m[l][j] * &y[j]).sum::<Rational>() * &y[l])
            .sum())
    }

    fn check_dim(&self, y: &[Rational]) -> Result<Matrix> {
        if y.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: y.len(),
            });
        }
        Ok(self.matrix())
    }

    /// Interior stationary points of the reduced program.
    pub fn solve(&self) -> StationarySet {
        stationary_set(&self.matrix())
    }

    /// `Σ y_l x^{V_l}` in `Δ_n`.
    pub fn lift(&self, y: &[Rational], n: usize) -> Result<SimplexPoint> {
        lift(y, &self.family, n)
    }
}

pub fn reduce(g: &Graph, c: &Rational, fam: &VertexFamily) -> Result<ReducedProgram> {
    check_family(g, fam)?;
    Ok(ReducedProgram {
        densities: g.density_matrix(fam)?,
        c: c.clone(),
        family: fam.clone(),
    })
}

/// Whether `((D + cΛ⁻¹)y)_l` is constant, for `y` in the open simplex.
pub fn reduced_kkt_check(rp: &ReducedProgram, y: &[Rational]) -> Result<bool> {
    let m = rp.check_dim(y)?;
    let total: Rational = y.iter().sum();
    if y.iter().any(Signed::is_negative) || !total.is_one() {
        return Err(Error::NotOnSimplex(
            y.iter().map(format_rational).collect::<Vec<_>>().join(","),
        ));
    }
    if y.iter().any(Zero::is_zero) {
        return Err(Error::BoundaryPoint);
    }
    let rows: Vec<Rational> = m
        .iter()
        .map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum())
        .collect();
    Ok(rows.iter().all(|r| *r == rows[0]))
}

fn check_reduction_inputs(x: &SimplexPoint, p: &VertexFamily) -> Result<()> {
    if !x.separates_distinct_values(p)? {
        return Err(Error::NotAPartition(format!("{p} does not keep {x} constant on classes")));
    }
    Ok(())
}

/// Checks that a generalized KKT point reduces to a stationary point of the
/// reduced program over `p`.
pub fn forward_reduction_theorem(
    g: &Graph,
    c: &Rational,
    x: &SimplexPoint,
    p: &VertexFamily,
) -> Result<bool> {
    check_reduction_inputs(x, p)?;
    if !ParametricProgram::new(g, c.clone()).is_generalized_kkt(x)? {
        return Err(Error::NotGeneralizedKkt);
    }
    let y = x.barycentric(p)?.y;
    reduced_kkt_check(&reduce(g, c, p)?, &y)
}

/// For a highly regular `p`, checks that generalized-KKT membership of `x`
/// agrees with stationarity of its reduction.
pub fn converse_reduction_theorem(
    g: &Graph,
    c: &Rational,
    x: &SimplexPoint,
    p: &VertexFamily,
) -> Result<bool> {
    check_reduction_inputs(x, p)?;
    if !is_highly_regular(g, p)? {
        return Err(Error::NotHighlyRegular);
    }
    let full = ParametricProgram::new(g, c.clone()).is_generalized_kkt(x)?;
    let y = x.barycentric(p)?.y;
    let reduced = reduced_kkt_check(&reduce(g, c, p)?, &y)?;
    Ok(full == reduced)
}

/// Lifts a reduced stationary point over a highly regular family and
/// certifies the result in the full program.
pub fn lift_reduced(
    g: &Graph,
    c: &Rational,
    p: &VertexFamily,
    y: &[Rational],
) -> Result<(SimplexPoint, KktCertificate)> {
    if !is_highly_regular(g, p)? {
        return Err(Error::NotHighlyRegular);
    }
    let rp = reduce(g, c, p)?;
    if !reduced_kkt_check(&rp, y)? {
        return Err(Error::Precondition("y is not stationary for the reduced program".into()));
    }
    let x = rp.lift(y, g.n())?;
    let cert = ParametricProgram::new(g, c.clone()).classify(&x)?;
    Ok((x, cert))
}

/// Stationary points on the segment between `x^{V1}` and `x^{V2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBlockReport {
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub densities: DensityMatrix,
    /// `|V2| (d12 - d22)`.
    pub alpha: Rational,
    /// `|V1| (d21 - d11)`.
    pub beta: Rational,
    /// `G[V1 ∪ V2]` is regular, equivalently `alpha == beta`.
    pub regular_case: bool,
}

impl TwoBlockReport {
    /// The single parameter at which the whole segment is stationary.
    pub fn c_star(&self) -> Option<Rational> {
        self.regular_case.then(|| self.alpha.clone())
    }

    /// `[min(α, β), max(α, β)]` in the irregular case.
    pub fn interval(&self) -> Option<(Rational, Rational)> {
        (!self.regular_case).then(|| {
            if self.alpha <= self.beta {
                (self.alpha.clone(), self.beta.clone())
            } else {
                (self.beta.clone(), self.alpha.clone())
            }
        })
    }

    /// Coefficients `((c - β)/|V1|, (c - α)/|V2|)` of the interior
    /// condition `k1 y1 = k2 y2`.
    pub fn condition(&self, c: &Rational) -> (Rational, Rational) {
        ((c - &self.beta) / size(&self.v1), (c - &self.alpha) / size(&self.v2))
    }

    /// Whether every point of the open segment is stationary at `c`.
    pub fn whole_segment_stationary(&self, c: &Rational) -> bool {
        let (k1, k2) = self.condition(c);
        k1.is_zero() && k2.is_zero()
    }

    /// Weights `(y1, y2)` of the unique interior stationary point, if any.
    pub fn weights(&self, c: &Rational) -> Option<(Rational, Rational)> {
        if self.whole_segment_stationary(c) {
            return None;
        }
        let w1 = (c - &self.alpha) * size(&self.v1);
        let w2 = (c - &self.beta) * size(&self.v2);
        let total = &w1 + &w2;
        if total.is_zero() {
            return None;
        }
        let (y1, y2) = (w1 / &total, w2 / total);
        (y1.is_positive() && y2.is_positive()).then_some((y1, y2))
    }

    /// `y1 x^{V1} + (1 - y1) x^{V2}` in `Δ_n`.
    pub fn segment_point(&self, y1: &Rational, n: usize) -> Result<SimplexPoint> {
        let fam = VertexFamily::new(vec![self.v1.clone(), self.v2.clone()])?;
        lift(&[y1.clone(), Rational::one() - y1], &fam, n)
    }

    /// The interior stationary point at `c`, if unique.
    pub fn point(&self, c: &Rational, n: usize) -> Result<Option<SimplexPoint>> {
        match self.weights(c) {
            Some((y1, _)) => self.segment_point(&y1, n).map(Some),
            None => Ok(None),
        }
    }
}

pub fn two_block_analysis(g: &Graph, v1: &VertexSet, v2: &VertexSet) -> Result<TwoBlockReport> {
    let fam = VertexFamily::new(vec![v1.clone(), v2.clone()])?;
    if !is_highly_regular(g, &fam)? {
        return Err(Error::NotHighlyRegular);
    }
    let densities = g.density_matrix(&fam)?;
    let alpha = size(v2) * (densities.get(0, 1) - densities.get(1, 1));
    let beta = size(v1) * (densities.get(1, 0) - densities.get(0, 0));
    let regular_case = alpha == beta;
    debug_assert_eq!(regular_case, g.induced_regular_degree(&v1.union(v2)).is_some());
    Ok(TwoBlockReport {
        v1: v1.clone(),
        v2: v2.clone(),
        densities,
        alpha,
        beta,
        regular_case,
    })
}

/// A complete core joined to every vertex of a regular, non-complete
/// periphery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedStar {
    pub n: usize,
    pub core: VertexSet,
    pub periphery: VertexSet,
    /// Degree of `G[P]`.
    pub d: usize,
    /// `|P| - d`.
    pub b: usize,
}

impl GeneralizedStar {
    pub fn h(&self) -> usize {
        self.core.len()
    }

    pub fn p(&self) -> usize {
        self.periphery.len()
    }

    /// Whether `c` lies in the excluded interval `[1, b]`.
    pub fn excludes(&self, c: &Rational) -> bool {
        *c >= Rational::one() && *c <= int(self.b as i64)
    }

    /// Weights on `x^P` and `x^H`.
    pub fn weights(&self, c: &Rational) -> Result<(Rational, Rational)> {
        if self.excludes(c) {
            return Err(Error::StarInapplicable {
                c: format_rational(c),
                b: self.b as u64,
            });
        }
        let p = int(self.p() as i64);
        let h = int(self.h() as i64);
        let w1 = (c - Rational::one()) * p;
        let w2 = (c - int(self.b as i64)) * h;
        let total = &w1 + &w2;
        Ok((w1 / &total, w2 / total))
    }
}

pub fn detect_generalized_star(g: &Graph, h: &VertexSet, p: &VertexSet) -> Option<GeneralizedStar> {
    if h.is_empty() || p.is_empty() || !h.is_disjoint(p) {
        return None;
    }
    if h.union(p).max_vertex()? >= g.n() {
        return None;
    }
    let joined = h.iter().all(|i| p.iter().all(|j| g.has_edge(i, j)));
    if !joined || !g.is_clique(h) || g.is_clique(&h.union(p)) {
        return None;
    }
    let d = g.induced_regular_degree(p)?;
    Some(GeneralizedStar {
        n: g.n(),
        core: h.clone(),
        periphery: p.clone(),
        d,
        b: p.len() - d,
    })
}

/// The stationary point `y1 x^P + y2 x^H` with support `H ∪ P`, defined for
/// `c ∉ [1, b]`.
pub fn genstar_kkt_point(g: &Graph, gs: &GeneralizedStar, c: &Rational) -> Result<SimplexPoint> {
    if g.n() != gs.n {
        return Err(Error::DimensionMismatch { expected: gs.n, got: g.n() });
    }
    let (y1, y2) = gs.weights(c)?;
    let fam = VertexFamily::new(vec![gs.periphery.clone(), gs.core.clone()])?;
    let x = lift(&[y1, y2], &fam, gs.n)?;
    assert_eq!(x.support(), gs.core.union(&gs.periphery), "star point lost support");
    assert!(
        ParametricProgram::new(g, c.clone()).is_generalized_kkt(&x)?,
        "star point is not stationary"
    );
    Ok(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharedCoreReport {
    pub star: GeneralizedStar,
    pub q: usize,
    /// The parameter at which the point is the mean of the clique vectors.
    pub c0: Rational,
    pub point: SimplexPoint,
    pub verdict: Verdict,
    /// Exact LP test against the convex hull of the clique vectors.
    pub outside_hull: bool,
    pub differs_from_mean: bool,
}

/// Cliques pairwise meeting in a common core `H`, with the remaining
/// vertices inducing a regular non-complete graph, give a stationary point
/// with support `∪C_l` outside the hull of the clique vectors.
pub fn shared_core_analysis(g: &Graph, cliques: &[VertexSet], c: &Rational) -> Result<SharedCoreReport> {
    let q = cliques.len();
    if q < 2 {
        return Err(Error::SharedCore("at least two cliques required".into()));
    }
    for (k, cl) in cliques.iter().enumerate() {
        if let Some(v) = cl.max_vertex().filter(|&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n: g.n() });
        }
        if cl.is_empty() || !g.is_clique(cl) {
            return Err(Error::SharedCore(format!("{cl} is not a clique")));
        }
        if cliques[..k].contains(cl) {
            return Err(Error::SharedCore(format!("{cl} listed twice")));
        }
    }
    let core = cliques[1..].iter().fold(cliques[0].clone(), |acc, cl| acc.intersection(cl));
    if core.is_empty() {
        return Err(Error::SharedCore("cliques have no common vertex".into()));
    }
    for (a, ca) in cliques.iter().enumerate() {
        for cb in &cliques[a + 1..] {
            if ca.intersection(cb) != core {
                return Err(Error::SharedCore(format!("{ca} and {cb} meet outside the core {core}")));
            }
        }
    }
    let union = cliques.iter().fold(VertexSet::new([]), |acc, cl| acc.union(cl));
    let periphery = union.difference(&core);
    if periphery.is_empty() {
        return Err(Error::SharedCore("no vertices outside the core".into()));
    }
    if g.induced_regular_degree(&periphery).is_none() {
        return Err(Error::SharedCore(format!("G[{periphery}] is not regular")));
    }
    if g.is_clique(&periphery) {
        return Err(Error::SharedCore(format!("G[{periphery}] is complete")));
    }
    let star = detect_generalized_star(g, &core, &periphery)
        .ok_or_else(|| Error::SharedCore("core and periphery do not form a generalized star".into()))?;

    let qr = int(q as i64);
    let b = int(star.b as i64);
    let c0 = (&qr - &b) / (&qr - Rational::one());
    if *c == c0 {
        return Err(Error::SharedCore(format!("c equals the excluded value {}", format_rational(&c0))));
    }
    let point = genstar_kkt_point(g, &star, c)?;
    let verdict = ParametricProgram::new(g, c.clone()).classify(&point)?.verdict;

    let vectors: Vec<SimplexPoint> = cliques
        .iter()
        .map(|cl| SimplexPoint::characteristic(g.n(), cl))
        .collect::<Result<_>>()?;
    let mean: Vec<Rational> = (0..g.n())
        .map(|i| vectors.iter().map(|v| v.get(i)).sum::<Rational>() / &qr)
        .collect();
    let differs_from_mean = point.coords() != mean.as_slice();
    let outside_hull = !in_convex_hull(&point, &vectors);
    Ok(SharedCoreReport {
        star,
        q,
        c0,
        point,
        verdict,
        outside_hull,
        differs_from_mean,
    })
}

/// Exact membership of `x` in the convex hull of `vectors`.
pub fn in_convex_hull(x: &SimplexPoint, vectors: &[SimplexPoint]) -> bool {
    let n = x.n();
    let mut a: Matrix = (0..n)
        .map(|i| vectors.iter().map(|v| v.get(i).clone()).collect())
        .collect();
    a.push(vec![Rational::one(); vectors.len()]);
    let mut b: Vec<Rational> = x.coords().to_vec();
    b.push(Rational::one());
    feasible_point(&a, &b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels)
    }

    fn fam(classes: &[&[usize]]) -> VertexFamily {
        VertexFamily::new(classes.iter().map(|c| set(c)).collect()).unwrap()
    }

    fn pt(v: &[(i64, i64)]) -> SimplexPoint {
        SimplexPoint::new(v.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    fn cherry() -> Graph {
        Graph::from_labeled_edges(3, &[(1, 3), (2, 3)]).unwrap()
    }

    fn counterexample() -> Graph {
        Graph::from_labeled_edges(4, &[(1, 2), (1, 3), (1, 4), (3, 4)]).unwrap()
    }

    fn two_triangles() -> Graph {
        // shared vertex 1
        Graph::from_labeled_edges(5, &[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)]).unwrap()
    }

    fn three_triangles() -> Graph {
        Graph::from_labeled_edges(
            7,
            &[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5), (1, 6), (1, 7), (6, 7)],
        )
        .unwrap()
    }

    fn square(entries: &[&[(i64, i64)]]) -> Matrix {
        entries
            .iter()
            .map(|row| row.iter().map(|&(a, b)| rat(a, b)).collect())
            .collect()
    }

    #[test]
    fn highly_regular_examples() {
        let g = cherry();
        let s = set(&[1, 2, 3]);
        assert!(is_highly_regular(&g, &VertexFamily::singletons(&s)).unwrap());
        assert!(is_highly_regular(&g, &fam(&[&[1, 2]])).unwrap());
        assert!(!is_highly_regular(&g, &fam(&[&[1, 2, 3]])).unwrap());
        assert!(is_highly_regular(&g, &fam(&[&[1, 2], &[3]])).unwrap());
        assert!(!is_highly_regular(&g, &fam(&[&[1, 3], &[2]])).unwrap());

        let k5 = Graph::complete(5);
        let clique = set(&[1, 2, 4, 5]);
        for p in VertexFamily::all_partitions(&clique) {
            assert!(is_highly_regular(&k5, &p).unwrap());
        }
        let e5 = Graph::empty(5);
        for p in VertexFamily::all_partitions(&clique) {
            assert!(is_highly_regular(&e5, &p).unwrap());
        }

        assert!(!is_highly_regular(&counterexample(), &fam(&[&[1, 2], &[3, 4]])).unwrap());
        assert!(is_highly_regular(&Graph::complete(4), &fam(&[&[1], &[2], &[3], &[4]])).unwrap());
    }

    #[test]
    fn highly_regular_characterizations_agree_on_small_graphs() {
        for mask in 0..(1u64 << 6) {
            let g = Graph::from_pair_mask(4, mask);
            for p in VertexFamily::all_partitions(&VertexSet::full(4)) {
                assert_eq!(
                    is_highly_regular(&g, &p).unwrap(),
                    is_highly_regular_by_degrees(&g, &p).unwrap(),
                    "{g} {p}"
                );
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let rp = reduce(&counterexample(), &int(0), &fam(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(rp.densities.densities, square(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]));
        assert_eq!(rp.densities.sizes, vec![2, 2]);

        let rp = reduce(&cherry(), &int(0), &fam(&[&[1, 2], &[3]])).unwrap();
        assert_eq!(rp.densities.densities, square(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]));
        assert_eq!(rp.densities.sizes, vec![2, 1]);

        let rp = reduce(&Graph::complete(4), &int(0), &fam(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(rp.densities.densities, square(&[&[(1, 2), (1, 1)], &[(1, 1), (1, 2)]]));
    }

    #[test]
    fn reduced_check_examples() {
        let half = [rat(1, 2), rat(1, 2)];
        let h = counterexample();
        let p = fam(&[&[1, 2], &[3, 4]]);
        for c in [int(-1), int(0), rat(1, 2), int(1), int(2)] {
            let rp = reduce(&h, &c, &p).unwrap();
            assert!(reduced_kkt_check(&rp, &half).unwrap());
            let x = rp.lift(&half, 4).unwrap();
            assert_eq!(x, SimplexPoint::barycenter(4));
            assert!(!ParametricProgram::new(&h, c).is_generalized_kkt(&x).unwrap());
        }

        let g = cherry();
        let p = fam(&[&[1, 2], &[3]]);
        assert!(reduced_kkt_check(&reduce(&g, &int(0), &p).unwrap(), &half).unwrap());
        // 3Λ⁻¹y = (3/4, 3/2)
        assert!(!reduced_kkt_check(&reduce(&g, &int(3), &p).unwrap(), &half).unwrap());

        let rp = reduce(&g, &int(0), &p).unwrap();
        assert_eq!(
            reduced_kkt_check(&rp, &[int(1), int(0)]).unwrap_err(),
            Error::BoundaryPoint
        );
        assert!(matches!(
            reduced_kkt_check(&rp, &[rat(1, 2), rat(1, 3)]),
            Err(Error::NotOnSimplex(_))
        ));
    }

    #[test]
    fn forward_reduction_examples() {
        let g = cherry();
        let x = pt(&[(1, 4), (1, 4), (1, 2)]);
        assert!(forward_reduction_theorem(&g, &int(0), &x, &fam(&[&[1, 2], &[3]])).unwrap());
        assert!(forward_reduction_theorem(&g, &int(0), &x, &x.induced_partition()).unwrap());

        let c4 = Graph::cycle(4);
        let xs = SimplexPoint::barycenter(4);
        for c in [int(-2), int(0), int(5)] {
            assert!(forward_reduction_theorem(&c4, &c, &xs, &fam(&[&[1, 2, 3, 4]])).unwrap());
        }

        // the family must keep x constant on classes and cover the support
        assert!(matches!(
            forward_reduction_theorem(&g, &int(0), &x, &fam(&[&[1, 3], &[2]])),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            forward_reduction_theorem(&g, &int(0), &x, &fam(&[&[1, 2]])),
            Err(Error::NotAPartition(_))
        ));
        let y = pt(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(
            forward_reduction_theorem(&g, &int(0), &y, &fam(&[&[1, 2], &[3]])).unwrap_err(),
            Error::NotGeneralizedKkt
        );
    }

    #[test]
    fn converse_reduction_examples() {
        let g = cherry();
        let p = fam(&[&[1, 2], &[3]]);
        let (x, cert) = lift_reduced(&g, &int(0), &p, &[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(x, pt(&[(1, 4), (1, 4), (1, 2)]));
        assert!(cert.verdict.is_stationary());
        assert!(converse_reduction_theorem(&g, &int(0), &x, &p).unwrap());

        let h = counterexample();
        let bary = SimplexPoint::barycenter(4);
        assert_eq!(
            converse_reduction_theorem(&h, &int(0), &bary, &fam(&[&[1, 2], &[3, 4]])).unwrap_err(),
            Error::NotHighlyRegular
        );

        let k4 = Graph::complete(4);
        let (x, cert) = lift_reduced(&k4, &rat(1, 2), &fam(&[&[1, 2], &[3, 4]]), &[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(x, bary);
        assert!(cert.verdict.is_stationary());
    }

    #[test]
    fn two_block_examples() {
        let g = cherry();
        let r = two_block_analysis(&g, &set(&[1, 2]), &set(&[3])).unwrap();
        assert_eq!((r.alpha.clone(), r.beta.clone()), (int(1), int(2)));
        assert!(!r.regular_case);
        assert_eq!(r.interval(), Some((int(1), int(2))));
        assert_eq!(r.c_star(), None);
        assert_eq!(r.point(&int(0), 3).unwrap(), Some(pt(&[(1, 4), (1, 4), (1, 2)])));
        assert_eq!(r.point(&rat(3, 2), 3).unwrap(), None);

        let c4 = Graph::cycle(4);
        let r = two_block_analysis(&c4, &set(&[1, 3]), &set(&[2, 4])).unwrap();
        assert!(r.regular_case);
        assert_eq!(r.c_star(), Some(int(2)));
        assert!(r.whole_segment_stationary(&int(2)));
        let p2 = ParametricProgram::new(&c4, int(2));
        for j in 1..=5 {
            let x = r.segment_point(&rat(j, 6), 4).unwrap();
            assert!(p2.is_generalized_kkt(&x).unwrap());
        }
        assert_eq!(r.point(&int(0), 4).unwrap(), Some(SimplexPoint::barycenter(4)));

        let r = two_block_analysis(&Graph::complete(4), &set(&[1, 2]), &set(&[3, 4])).unwrap();
        assert_eq!(r.c_star(), Some(int(1)));

        assert_eq!(
            two_block_analysis(&counterexample(), &set(&[1, 2]), &set(&[3, 4])).unwrap_err(),
            Error::NotHighlyRegular
        );
    }

    #[test]
    fn generalized_star_examples() {
        let g = cherry();
        let s = detect_generalized_star(&g, &set(&[3]), &set(&[1, 2])).unwrap();
        assert_eq!((s.d, s.b), (0, 2));
        assert!(detect_generalized_star(&Graph::complete(4), &set(&[1]), &set(&[2, 3, 4])).is_none());
        let t = two_triangles();
        let s2 = detect_generalized_star(&t, &set(&[1]), &set(&[2, 3, 4, 5])).unwrap();
        assert_eq!((s2.d, s2.b), (1, 3));
        assert!(detect_generalized_star(&t, &set(&[2]), &set(&[1, 3])).is_none());

        assert_eq!(genstar_kkt_point(&g, &s, &int(0)).unwrap(), pt(&[(1, 4), (1, 4), (1, 2)]));
        assert_eq!(genstar_kkt_point(&g, &s, &int(3)).unwrap(), pt(&[(2, 5), (2, 5), (1, 5)]));
        assert_eq!(
            genstar_kkt_point(&t, &s2, &int(0)).unwrap(),
            pt(&[(3, 7), (1, 7), (1, 7), (1, 7), (1, 7)])
        );
        for c in [int(1), rat(3, 2), int(2)] {
            assert!(matches!(genstar_kkt_point(&g, &s, &c), Err(Error::StarInapplicable { .. })));
        }
    }

    #[test]
    fn star_and_two_block_agree() {
        let g = cherry();
        let s = detect_generalized_star(&g, &set(&[3]), &set(&[1, 2])).unwrap();
        let r = two_block_analysis(&g, &s.periphery, &s.core).unwrap();
        for c in [int(-4), int(0), rat(1, 2), int(3), int(10)] {
            assert_eq!(r.point(&c, 3).unwrap(), Some(genstar_kkt_point(&g, &s, &c).unwrap()));
        }
    }

    #[test]
    fn shared_core_examples() {
        let t = two_triangles();
        let cliques = vec![set(&[1, 2, 3]), set(&[1, 4, 5])];
        let r = shared_core_analysis(&t, &cliques, &int(0)).unwrap();
        assert_eq!((r.q, r.star.b), (2, 3));
        assert_eq!(r.c0, int(-1));
        assert!(r.outside_hull && r.differs_from_mean);
        assert_eq!(r.point, pt(&[(3, 7), (1, 7), (1, 7), (1, 7), (1, 7)]));
        assert!(matches!(shared_core_analysis(&t, &cliques, &int(-1)), Err(Error::SharedCore(_))));
        assert!(matches!(shared_core_analysis(&t, &cliques, &int(2)), Err(Error::StarInapplicable { .. })));

        let g = three_triangles();
        let cliques = vec![set(&[1, 2, 3]), set(&[1, 4, 5]), set(&[1, 6, 7])];
        let r = shared_core_analysis(&g, &cliques, &int(-2)).unwrap();
        assert_eq!(r.star.b, 5);
        assert_eq!(r.c0, int(-1));
        assert!(r.verdict.is_stationary());
        assert!(r.outside_hull && r.differs_from_mean);

        assert!(matches!(
            shared_core_analysis(&g, &[set(&[1, 2, 3])], &int(0)),
            Err(Error::SharedCore(_))
        ));
        assert!(matches!(
            shared_core_analysis(&g, &[set(&[1, 2, 3]), set(&[2, 4])], &int(0)),
            Err(Error::SharedCore(_))
        ));
    }

    #[test]
    fn hull_test_matches_mean_at_excluded_value() {
        let t = two_triangles();
        let s = detect_generalized_star(&t, &set(&[1]), &set(&[2, 3, 4, 5])).unwrap();
        let x = genstar_kkt_point(&t, &s, &int(-1)).unwrap();
        let vectors = vec![
            SimplexPoint::characteristic(5, &set(&[1, 2, 3])).unwrap(),
            SimplexPoint::characteristic(5, &set(&[1, 4, 5])).unwrap(),
        ];
        assert!(in_convex_hull(&x, &vectors));
        assert_eq!(x, pt(&[(1, 3), (1, 6), (1, 6), (1, 6), (1, 6)]));
    }

    #[test]
    fn partition_search_limits() {
        let g = Graph::cycle(4);
        let found = highly_regular_partitions(&g, &VertexSet::full(4)).unwrap();
        assert!(found.contains(&fam(&[&[1, 3], &[2, 4]])));
        assert!(found.contains(&fam(&[&[1, 2, 3, 4]])));
        assert!(found.contains(&fam(&[&[1, 2], &[3, 4]])));
        assert!(!found.contains(&fam(&[&[1], &[2, 3, 4]])));
        assert!(matches!(
            highly_regular_partitions(&Graph::empty(11), &VertexSet::full(11)),
            Err(Error::Precondition(_))
        ));
    }
}
