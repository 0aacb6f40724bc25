//! Points of the standard simplex, vertex families and barycentric
//! coordinates over disjoint characteristic vectors.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::rational::{format_rational, rationalize, to_f64, Rational};

/// A point of the standard simplex with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexPoint {
    coords: Vec<Rational>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::NotOnSimplex("no coordinates".into()));
        }
        if let Some(i) = coords.iter().position(Signed::is_negative) {
            return Err(Error::NotOnSimplex(format!(
                "coordinate {} is negative",
                i + 1
            )));
        }
        let sum: Rational = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotOnSimplex(format!(
                "coordinates sum to {}",
                format_rational(&sum)
            )));
        }
        Ok(SimplexPoint { coords })
    }

    /// The characteristic vector of `s`: `1/|s|` on `s`, zero elsewhere.
    pub fn characteristic(n: usize, s: &VertexSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if let Some(v) = s.max_vertex().filter(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
        let w = Rational::new(1.into(), s.len().into());
        let coords = (0..n)
            .map(|i| if s.contains(i) { w.clone() } else { Rational::zero() })
            .collect();
        Ok(SimplexPoint { coords })
    }

    pub fn vertex(n: usize, i: usize) -> Result<Self> {
        SimplexPoint::characteristic(n, &VertexSet::singleton(i))
    }

    pub fn barycenter(n: usize) -> Self {
        SimplexPoint::characteristic(n, &VertexSet::full(n)).expect("n >= 1")
    }

    /// Rounds each coordinate to the best rational with denominator at
    /// most `max_den`, then absorbs the rounding residue into the largest
    /// coordinate so the sum is exactly one.
    pub fn rationalized(x: &[f64], max_den: u64) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::NotOnSimplex("no coordinates".into()));
        }
        let mut coords: Vec<Rational> = x
            .iter()
            .map(|&v| {
                let r = rationalize(v, max_den);
                if r.is_negative() {
                    Rational::zero()
                } else {
                    r
                }
            })
            .collect();
        let sum: Rational = coords.iter().sum();
        let largest = (0..coords.len())
            .max_by(|&a, &b| coords[a].cmp(&coords[b]).then(b.cmp(&a)))
            .expect("nonempty");
        coords[largest] += Rational::one() - sum;
        SimplexPoint::new(coords)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::new((0..self.n()).filter(|&i| !self.coords[i].is_zero()))
    }

    /// The support set when `self` is a characteristic vector.
    pub fn characteristic_support(&self) -> Option<VertexSet> {
        let s = self.support();
        let first = &self.coords[s.as_slice()[0]];
        let constant = s.iter().all(|i| &self.coords[i] == first);
        constant.then_some(s)
    }

    pub fn is_characteristic(&self) -> bool {
        self.characteristic_support().is_some()
    }

    /// Classes of equal nonzero coordinates, ordered by decreasing value.
    pub fn induced_partition(&self) -> VertexFamily {
        let mut values: Vec<&Rational> = self.coords.iter().filter(|v| !v.is_zero()).collect();
        values.sort_by(|a, b| b.cmp(a));
        values.dedup();
        let classes = values
            .into_iter()
            .map(|v| VertexSet::new((0..self.n()).filter(|&i| &self.coords[i] == v)))
            .collect();
        VertexFamily { classes }
    }

    /// Whether `p`, a partition of the support, keeps coordinates constant
    /// on each class.
    pub fn separates_distinct_values(&self, p: &VertexFamily) -> Result<bool> {
        self.check_partition(p)?;
        Ok(self.constant_on_classes(p))
    }

    pub(crate) fn check_partition(&self, p: &VertexFamily) -> Result<()> {
        let support = self.support();
        let union = p.union();
        if union != support {
            return Err(Error::NotAPartition(format!(
                "family covers {union}, support is {support}"
            )));
        }
        Ok(())
    }

    fn constant_on_classes(&self, fam: &VertexFamily) -> bool {
        fam.classes().iter().all(|c| {
            let first = &self.coords[c.as_slice()[0]];
            c.iter().all(|i| &self.coords[i] == first)
        })
    }

    /// Membership in the convex hull of the family's characteristic
    /// vectors: constant on each class and zero off the union.
    pub fn in_hull_of_family(&self, fam: &VertexFamily) -> bool {
        if fam.union().max_vertex().is_some_and(|v| v >= self.n()) {
            return false;
        }
        let union = fam.union();
        let off_zero = (0..self.n())
            .filter(|&i| !union.contains(i))
            .all(|i| self.coords[i].is_zero());
        off_zero && self.constant_on_classes(fam)
    }

    pub fn barycentric(&self, fam: &VertexFamily) -> Result<BarycentricCoords> {
        if !self.in_hull_of_family(fam) {
            return Err(Error::NotRepresentable(format!(
                "{self} is not in the hull of {fam}"
            )));
        }
        let y = fam
            .classes()
            .iter()
            .map(|c| &self.coords[c.as_slice()[0]] * Rational::from_integer(c.len().into()))
            .collect();
        Ok(BarycentricCoords {
            y,
            family: fam.clone(),
        })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// An ordered family of nonempty, pairwise disjoint vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexFamily {
    classes: Vec<VertexSet>,
}

impl VertexFamily {
    pub fn new(classes: Vec<VertexSet>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut seen = VertexSet::default();
        for (k, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyClass(k + 1));
            }
            if let Some(v) = c.iter().find(|&v| seen.contains(v)) {
                return Err(Error::OverlappingClasses(v + 1));
            }
            seen = seen.union(c);
        }
        Ok(VertexFamily { classes })
    }

    pub fn singletons(s: &VertexSet) -> Self {
        VertexFamily {
            classes: s.iter().map(VertexSet::singleton).collect(),
        }
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn union(&self) -> VertexSet {
        VertexSet::new(self.classes.iter().flat_map(VertexSet::iter))
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }

    /// Every set partition of `s`, each with classes ordered by their
    /// smallest member. Grows like the Bell numbers.
    pub fn all_partitions(s: &VertexSet) -> Vec<VertexFamily> {
        let mut out = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        fn rec(items: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<VertexFamily>) {
            let Some((&first, rest)) = items.split_first() else {
                out.push(VertexFamily {
                    classes: blocks.iter().map(|b| VertexSet::new(b.iter().copied())).collect(),
                });
                return;
            };
            for k in 0..blocks.len() {
                blocks[k].push(first);
                rec(rest, blocks, out);
                blocks[k].pop();
            }
            blocks.push(vec![first]);
            rec(rest, blocks, out);
            blocks.pop();
        }
        rec(s.as_slice(), &mut blocks, &mut out);
        out
    }
}

impl fmt::Display for VertexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.classes.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Weights of a point over the characteristic vectors of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricCoords {
    pub y: Vec<Rational>,
    pub family: VertexFamily,
}

impl BarycentricCoords {
    /// `Σ y_ℓ x^{V_ℓ}` in `Δ_n`.
    pub fn reconstruct(&self, n: usize) -> Result<SimplexPoint> {
        lift(&self.y, &self.family, n)
    }

    /// Whether every weight is positive (the point covers the whole union).
    pub fn is_interior(&self) -> bool {
        self.y.iter().all(Signed::is_positive)
    }
}

/// Maps weights `y ∈ Δ_k` to `Σ y_ℓ x^{V_ℓ}`.
pub fn lift(y: &[Rational], fam: &VertexFamily, n: usize) -> Result<SimplexPoint> {
    if y.len() != fam.k() {
        return Err(Error::DimensionMismatch {
            expected: fam.k(),
            got: y.len(),
        });
    }
    if let Some(v) = fam.union().max_vertex().filter(|&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v + 1, n });
    }
    let mut coords = vec![Rational::zero(); n];
    for (w, c) in y.iter().zip(fam.classes()) {
        let share = w / Rational::from_integer(c.len().into());
        for i in c.iter() {
            coords[i] = share.clone();
        }
    }
    SimplexPoint::new(coords)
}
