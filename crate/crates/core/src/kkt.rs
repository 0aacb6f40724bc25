//! KKT and generalized KKT points of `max xᵀ(A + cI)x` over the simplex.
//!
//! A point `x ∈ Δ_n` with `λ = f_c(x)` and `M = A + cI` is a generalized KKT
//! point iff `(Mx)_i = λ` on its support, and a KKT point iff additionally
//! `(Mx)_i <= λ` off the support. Multipliers are recovered as
//! `μ₀ = -2λ`, `μ = 2(λ1 - Mx)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation, VertexSet};
use crate::linalg::{maximize, solve_linear, LpOutcome, Matrix};
use crate::rational::{int, Rational};
use crate::simplex::SimplexPoint;

/// The program `f_c(x) = xᵀ(A + cI)x` on a fixed graph.
#[derive(Debug, Clone)]
pub struct ParametricProgram<'g> {
    pub graph: &'g Graph,
    pub c: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Kkt,
    GeneralizedOnly,
    NotStationary,
}

impl Verdict {
    pub fn is_stationary(self) -> bool {
        self != Verdict::NotStationary
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Kkt => "KKT",
            Verdict::GeneralizedOnly => "GENERALIZED_ONLY",
            Verdict::NotStationary => "NOT_STATIONARY",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KktCertificate {
    pub verdict: Verdict,
    /// `f_c(x)`.
    pub lambda: Rational,
    /// `2(λ1 - Mx)`.
    pub mu: Vec<Rational>,
    /// First vertex violating the condition that failed, if any.
    pub witness: Option<usize>,
}

impl<'g> ParametricProgram<'g> {
    pub fn new(graph: &'g Graph, c: Rational) -> Self {
        ParametricProgram { graph, c }
    }

    fn check_dim(&self, x: &SimplexPoint) -> Result<()> {
        if x.n() != self.graph.n() {
            return Err(Error::DimensionMismatch {
                expected: self.graph.n(),
                got: x.n(),
            });
        }
        Ok(())
    }

    /// `A[S, S] + cI`.
    pub fn payoff_submatrix(&self, s: &VertexSet) -> Matrix {
        let mut m = self.graph.adjacency_submatrix(s);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &self.c;
        }
        m
    }

    /// `Mx` over all vertices.
    pub fn payoffs(&self, x: &SimplexPoint) -> Result<Vec<Rational>> {
        self.check_dim(x)?;
        let support = x.support();
        Ok((0..self.graph.n())
            .map(|i| {
                let mut acc = &self.c * x.get(i);
                for j in support.iter() {
                    if self.graph.has_edge(i, j) {
                        acc += x.get(j);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn objective(&self, x: &SimplexPoint) -> Result<Rational> {
        let mx = self.payoffs(x)?;
        Ok(x.support().iter().map(|i| x.get(i) * &mx[i]).sum())
    }

    pub fn classify(&self, x: &SimplexPoint) -> Result<KktCertificate> {
        let mx = self.payoffs(x)?;
        let support = x.support();
        let lambda: Rational = support.iter().map(|i| x.get(i) * &mx[i]).sum();
        let two = int(2);
        let mu = mx.iter().map(|v| &two * (&lambda - v)).collect();
        let off_stationary = support.iter().find(|&i| mx[i] != lambda);
        let (verdict, witness) = match off_stationary {
            Some(i) => (Verdict::NotStationary, Some(i)),
            None => match (0..self.graph.n()).find(|&i| !support.contains(i) && mx[i] > lambda) {
                Some(i) => (Verdict::GeneralizedOnly, Some(i)),
                None => (Verdict::Kkt, None),
            },
        };
        Ok(KktCertificate {
            verdict,
            lambda,
            mu,
            witness,
        })
    }

    pub fn is_generalized_kkt(&self, x: &SimplexPoint) -> Result<bool> {
        Ok(self.classify(x)?.verdict.is_stationary())
    }

    pub fn is_kkt(&self, x: &SimplexPoint) -> Result<bool> {
        Ok(self.classify(x)?.verdict == Verdict::Kkt)
    }

    /// Generalized KKT points with support exactly `s`.
    pub fn solve_on_support(&self, s: &VertexSet) -> Result<SupportSolution> {
        if s.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if let Some(v) = s.max_vertex().filter(|&v| v >= self.graph.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: v + 1,
                n: self.graph.n(),
            });
        }
        let n = self.graph.n();
        let embed = |local: &[Rational]| -> Vec<Rational> {
            let mut full = vec![Rational::zero(); n];
            for (k, v) in s.iter().enumerate() {
                full[v] = local[k].clone();
            }
            full
        };
        Ok(match stationary_set(&self.payoff_submatrix(s)) {
            StationarySet::Empty => SupportSolution::Empty,
            StationarySet::Unique(x) => {
                SupportSolution::Unique(SimplexPoint::new(embed(&x)).expect("positive and normalized"))
            }
            StationarySet::NonUnique {
                base,
                directions,
                interior,
            } => SupportSolution::NonUnique(AffineFamily {
                base: embed(&base),
                directions: directions.iter().map(|d| embed(d)).collect(),
                interior: interior.map(|x| SimplexPoint::new(embed(&x)).expect("interior point")),
            }),
        })
    }

    /// Averages `x` over a group of support automorphisms. The result keeps
    /// the support, stays a generalized KKT point and is constant on orbits.
    pub fn symmetrize(&self, x: &SimplexPoint, group: &[Permutation]) -> Result<SimplexPoint> {
        if !self.is_generalized_kkt(x)? {
            return Err(Error::NotGeneralizedKkt);
        }
        let s = x.support();
        let n = self.graph.n();
        for (k, p) in group.iter().enumerate() {
            if !self.graph.is_support_automorphism(&s, p) {
                return Err(Error::NotAutomorphism(k + 1));
            }
        }
        check_group(group, n)?;

        let order = Rational::from_integer(group.len().into());
        let coords: Vec<Rational> = (0..n)
            .map(|i| {
                if !s.contains(i) {
                    return Rational::zero();
                }
                let total: Rational = group.iter().map(|p| x.get(p.apply(i))).sum();
                total / &order
            })
            .collect();
        let hat = SimplexPoint::new(coords)?;

        assert_eq!(hat.support(), s, "symmetrization changed the support");
        assert!(self.is_generalized_kkt(&hat)?, "symmetrization left the stationary set");
        assert!(
            group
                .iter()
                .all(|p| s.iter().all(|i| hat.get(p.apply(i)) == hat.get(i))),
            "symmetrized point not invariant"
        );
        Ok(hat)
    }

    /// Symmetrizes over the full automorphism group of the support subgraph.
    pub fn symmetrize_full(&self, x: &SimplexPoint) -> Result<SimplexPoint> {
        let group = self.graph.support_automorphisms(&x.support())?;
        self.symmetrize(x, &group)
    }

    /// For a KKT point whose support matrix `A[S,S] + cI` is nonsingular,
    /// checks that every automorphism of `G[S]` preserves each coordinate.
    pub fn orbit_invariance_check(&self, x: &SimplexPoint) -> Result<bool> {
        let cert = self.classify(x)?;
        if cert.verdict != Verdict::Kkt {
            return Err(Error::Precondition(format!(
                "point is not a KKT point (verdict {})",
                cert.verdict
            )));
        }
        let s = x.support();
        if !self.graph.is_c_eigenvalue_free(&s, &self.c)? {
            return Err(Error::Precondition(
                "-c is an eigenvalue of the support adjacency submatrix".into(),
            ));
        }
        orbits_preserved(self.graph, x)
    }

    /// Supports of size at most `max_support` (all when `None`), each with
    /// its generalized KKT points.
    pub fn scan_supports(&self, max_support: Option<usize>) -> Result<Vec<ScanEntry>> {
        let n = self.graph.n();
        let cap = max_support.unwrap_or(n).min(n);
        VertexSet::subsets_up_to(n, cap)
            .into_iter()
            .map(|support| {
                let solution = self.solve_on_support(&support)?;
                let certificates = solution
                    .points()
                    .iter()
                    .map(|p| self.classify(p))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ScanEntry {
                    support,
                    solution,
                    certificates,
                })
            })
            .collect()
    }
}

/// Whether every automorphism of `G[supp(x)]` fixes each coordinate of `x`.
pub fn orbits_preserved(g: &Graph, x: &SimplexPoint) -> Result<bool> {
    let s = x.support();
    let group = g.support_automorphisms(&s)?;
    Ok(group
        .iter()
        .all(|p| s.iter().all(|i| x.get(p.apply(i)) == x.get(i))))
}

fn check_group(group: &[Permutation], n: usize) -> Result<()> {
    if group.is_empty() {
        return Err(Error::NotAGroup("empty".into()));
    }
    if !group.iter().any(Permutation::is_identity) {
        return Err(Error::NotAGroup("identity missing".into()));
    }
    for p in group {
        if p.len() != n {
            return Err(Error::NotAGroup("permutation of the wrong degree".into()));
        }
        if !group.contains(&p.inverse()) {
            return Err(Error::NotAGroup(format!("inverse of {p} missing")));
        }
        for q in group {
            if !group.contains(&p.compose(q)) {
                return Err(Error::NotAGroup(format!("{p} ∘ {q} missing")));
            }
        }
    }
    Ok(())
}

/// Generalized KKT points with a fixed support.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportSolution {
    Empty,
    Unique(SimplexPoint),
    /// The stationarity system on the support is degenerate.
    NonUnique(AffineFamily),
}

/// `{base + Σ t_k d_k}` intersected with the open face of the support.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFamily {
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
    /// A point with support exactly the scanned set, maximizing the
    /// smallest coordinate; `None` when the family misses the open face.
    pub interior: Option<SimplexPoint>,
}

impl SupportSolution {
    /// Explicit points: the unique solution, or the interior witness of a
    /// degenerate family.
    pub fn points(&self) -> Vec<SimplexPoint> {
        match self {
            SupportSolution::Empty => vec![],
            SupportSolution::Unique(p) => vec![p.clone()],
            SupportSolution::NonUnique(f) => f.interior.iter().cloned().collect(),
        }
    }

    pub fn is_realized(&self) -> bool {
        !self.points().is_empty()
    }

    pub fn is_non_unique(&self) -> bool {
        matches!(self, SupportSolution::NonUnique(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub support: VertexSet,
    pub solution: SupportSolution,
    pub certificates: Vec<KktCertificate>,
}

/// Solutions of `R y = λ1`, `1ᵀy = 1`, `y > 0` for a square `R`.
#[derive(Debug, Clone, PartialEq)]
pub enum StationarySet {
    Empty,
    Unique(Vec<Rational>),
    NonUnique {
        base: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
        interior: Option<Vec<Rational>>,
    },
}

pub fn stationary_set(r: &Matrix) -> StationarySet {
    let k = r.len();
    // unknowns (y_1..y_k, λ)
    let mut a: Matrix = r
        .iter()
        .map(|row| {
            let mut v = row.clone();
            v.push(-Rational::one());
            v
        })
        .collect();
    let mut sum_row = vec![Rational::one(); k];
    sum_row.push(Rational::zero());
    a.push(sum_row);
    let mut b = vec![Rational::zero(); k];
    b.push(Rational::one());

    let Some(sol) = solve_linear(&a, &b) else {
        return StationarySet::Empty;
    };
    let base: Vec<Rational> = sol.particular[..k].to_vec();
    if sol.is_unique() {
        return if base.iter().all(Signed::is_positive) {
            StationarySet::Unique(base)
        } else {
            StationarySet::Empty
        };
    }
    let directions = sol.directions.iter().map(|d| d[..k].to_vec()).collect();
    StationarySet::NonUnique {
        base,
        directions,
        interior: max_min_point(r),
    }
}

/// Maximizes `min_i y_i` over `{y >= 0 : 1ᵀy = 1, (Ry)_i = (Ry)_0}` by
/// writing `y = z + t1` with `z, t >= 0`. Returns the maximizer when the
/// optimum is positive.
fn max_min_point(r: &Matrix) -> Option<Vec<Rational>> {
    let k = r.len();
    let mut a: Matrix = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    let mut sum_row = vec![Rational::one(); k];
    sum_row.push(Rational::from_integer(k.into()));
    a.push(sum_row);
    b.push(Rational::one());
    for i in 1..k {
        let mut row: Vec<Rational> = (0..k).map(|j| &r[i][j] - &r[0][j]).collect();
        let t_coeff: Rational = row.iter().sum();
        row.push(t_coeff);
        a.push(row);
        b.push(Rational::zero());
    }
    let mut objective = vec![Rational::zero(); k + 1];
    objective[k] = Rational::one();
    match maximize(&objective, &a, &b) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            Some(x[..k].iter().map(|z| z + &value).collect())
        }
        _ => None,
    }
}

/// Whether `x^S` is a generalized KKT point, which holds for every `c`
/// exactly when `G[S]` is regular.
pub fn characteristic_gkkt_test(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.induced_subgraph(s)?;
    Ok(g.induced_regular_degree(s).is_some())
}

/// The unique `c` making a non-characteristic `x` a generalized KKT point.
pub fn unique_c_recovery(g: &Graph, x: &SimplexPoint) -> Result<Option<Rational>> {
    if x.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.n(),
        });
    }
    if x.is_characteristic() {
        return Err(Error::CharacteristicVector);
    }
    let p0 = ParametricProgram::new(g, Rational::zero());
    let ax = p0.payoffs(x)?;
    let s = x.support();
    let first = s.as_slice()[0];
    let other = s
        .iter()
        .find(|&j| x.get(j) != x.get(first))
        .expect("non-characteristic point has two distinct values");
    let c = (&ax[other] - &ax[first]) / (x.get(first) - x.get(other));
    let level = &ax[first] + &c * x.get(first);
    let consistent = s.iter().all(|i| &ax[i] + &c * x.get(i) == level);
    Ok(consistent.then_some(c))
}

/// Whether generalized-KKT membership of `x` for `(Ḡ, c)` agrees with that
/// for `(G, 1 - c)`.
pub fn complement_duality_check(g: &Graph, c: &Rational, x: &SimplexPoint) -> Result<bool> {
    let gc = g.complement();
    let left = ParametricProgram::new(&gc, c.clone()).is_generalized_kkt(x)?;
    let right = ParametricProgram::new(g, Rational::one() - c).is_generalized_kkt(x)?;
    Ok(left == right)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObstructionCase {
    /// `i1 ~ i2`: no generalized KKT point for `c = 1` has this support.
    A,
    /// `i1 ≁ i2`: no generalized KKT point for `c = 0` has this support.
    B,
}

impl ObstructionCase {
    pub fn blocked_c(self) -> Rational {
        match self {
            ObstructionCase::A => Rational::one(),
            ObstructionCase::B => Rational::zero(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ObstructionCase::A => "a",
            ObstructionCase::B => "b",
        }
    }
}

/// A triple `(i1, i2, i3)` of 0-based vertices of the support with
/// `i1 ≁ i3`, `i2 ~ i3`, and every other support vertex adjacent to `i1`
/// also adjacent to `i2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Obstruction {
    pub case: ObstructionCase,
    pub triple: (usize, usize, usize),
}

/// One witness per case that applies to support `s`, in case order.
pub fn obstructions(g: &Graph, s: &VertexSet) -> Vec<Obstruction> {
    [ObstructionCase::A, ObstructionCase::B]
        .into_iter()
        .filter_map(|case| obstruction_for(g, s, case))
        .collect()
}

/// The first admissible triple in lexicographic order, either case.
pub fn obstruction_applies(g: &Graph, s: &VertexSet) -> Option<Obstruction> {
    triples(g, s).next()
}

pub fn obstruction_for(g: &Graph, s: &VertexSet, case: ObstructionCase) -> Option<Obstruction> {
    triples(g, s).find(|o| o.case == case)
}

fn triples<'a>(g: &'a Graph, s: &'a VertexSet) -> impl Iterator<Item = Obstruction> + 'a {
    s.iter().flat_map(move |i1| {
        s.iter().flat_map(move |i2| {
            s.iter().filter_map(move |i3| {
                if i1 == i2 || i2 == i3 || i1 == i3 {
                    return None;
                }
                if g.has_edge(i1, i3) || !g.has_edge(i2, i3) {
                    return None;
                }
                let rest_ok = s
                    .iter()
                    .filter(|&v| v != i1 && v != i2 && v != i3)
                    .all(|v| !g.has_edge(v, i1) || g.has_edge(v, i2));
                if !rest_ok {
                    return None;
                }
                let case = if g.has_edge(i1, i2) {
                    ObstructionCase::A
                } else {
                    ObstructionCase::B
                };
                Some(Obstruction {
                    case,
                    triple: (i1, i2, i3),
                })
            })
        })
    })
}

/// Residuals of the KKT conditions at a float point. Coordinates above
/// `support_tol` count as support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktResidual {
    pub lambda: f64,
    /// `max_{i ∈ supp} |(Mx)_i - λ|`.
    pub stationarity: f64,
    /// `max_{i ∉ supp} max(0, (Mx)_i - λ)`.
    pub complementarity: f64,
}

impl KktResidual {
    pub fn total(&self) -> f64 {
        self.stationarity.max(self.complementarity)
    }
}

pub fn float_payoffs(g: &Graph, c: f64, x: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|i| c * x[i] + g.neighbors(i).map(|j| x[j]).sum::<f64>())
        .collect()
}

pub fn kkt_residual(g: &Graph, c: f64, x: &[f64], support_tol: f64) -> KktResidual {
    let mx = float_payoffs(g, c, x);
    let lambda: f64 = x.iter().zip(&mx).map(|(a, b)| a * b).sum();
    let mut stationarity = 0.0f64;
    let mut complementarity = 0.0f64;
    for i in 0..x.len() {
        let gap = mx[i] - lambda;
        if x[i] > support_tol {
            stationarity = stationarity.max(gap.abs());
        } else {
            complementarity = complementarity.max(gap.max(0.0));
        }
    }
    KktResidual {
        lambda,
        stationarity,
        complementarity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApproxVerdict {
    ApproxKkt,
    ApproxGeneralizedOnly,
    ApproxNotStationary,
}

impl ApproxVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ApproxVerdict::ApproxKkt => "APPROX_KKT",
            ApproxVerdict::ApproxGeneralizedOnly => "APPROX_GENERALIZED_ONLY",
            ApproxVerdict::ApproxNotStationary => "APPROX_NOT_STATIONARY",
        }
    }
}

pub const DEFAULT_EPSILON: f64 = 1e-7;
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

/// Tolerance-based classification of a float point; distinct from the
/// exact verdicts.
pub fn classify_approx(g: &Graph, c: f64, x: &[f64], eps: f64) -> Result<(ApproxVerdict, KktResidual)> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let r = kkt_residual(g, c, x, eps);
    let verdict = if r.stationarity > eps {
        ApproxVerdict::ApproxNotStationary
    } else if r.complementarity > eps {
        ApproxVerdict::ApproxGeneralizedOnly
    } else {
        ApproxVerdict::ApproxKkt
    };
    Ok((verdict, r))
}

/// Rounds `x` to rationals with bounded denominators, then classifies
/// exactly.
pub fn classify_rationalized(
    program: &ParametricProgram<'_>,
    x: &[f64],
    max_den: u64,
) -> Result<(SimplexPoint, KktCertificate)> {
    let p = SimplexPoint::rationalized(x, max_den)?;
    let cert = program.classify(&p)?;
    Ok((p, cert))
}
