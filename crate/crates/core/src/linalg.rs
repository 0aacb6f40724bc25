//! Exact dense linear algebra over the rationals: elimination, affine
//! solution sets, determinants and a small two-phase simplex method.
//!
//! Everything here is sized for desk-scale problems (tens of unknowns).

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Solution set of a consistent linear system: `particular + span(directions)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row. Only the first `cols` columns are eligible
/// as pivots.
fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (o, pv) in other.iter_mut().zip(pivot_row) {
                    if !pv.is_zero() {
                        *o -= &f * pv;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solves `a x = b`. Returns `None` when the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Option<AffineSolution> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols);
    let rank = pivots.len();
    if aug[rank..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![Rational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[row][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); cols];
            d[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                d[pc] = -aug[row][f].clone();
            }
            d
        })
        .collect();
    Some(AffineSolution {
        particular,
        directions,
    })
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            let (top, rest) = a.split_at_mut(i);
            for (dst, p) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &f * p;
            }
        }
    }
    det
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

/// Maximizes `objective · x` subject to `a x = b`, `x >= 0`, exactly.
///
/// Two-phase tableau simplex with Bland's rule, so it terminates on
/// degenerate problems.
pub fn maximize(objective: &[Rational], a: &Matrix, b: &[Rational]) -> LpOutcome {
    let n = objective.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    let width = n + m + 1;
    let rhs = width - 1;

    let mut t: Matrix = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n);
        let flip = b[i].is_negative();
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut phase1 = vec![Rational::zero(); width - 1];
    for c in phase1.iter_mut().skip(n) {
        *c = -Rational::one();
    }
    run_simplex(&mut t, &mut basis, &phase1, width - 1);
    let infeasibility = basis
        .iter()
        .zip(&t)
        .filter(|(&bv, _)| bv >= n)
        .fold(Rational::zero(), |acc, (_, row)| acc + &row[rhs]);
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
                i += 1;
            } else {
                t.remove(i);
                basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut phase2 = vec![Rational::zero(); width - 1];
    phase2[..n].clone_from_slice(objective);
    if !run_simplex(&mut t, &mut basis, &phase2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.iter().zip(&basis) {
        if bv < n {
            x[bv] = row[rhs].clone();
        }
    }
    let value = dot(objective, &x);
    LpOutcome::Optimal { x, value }
}

/// A point of `{x : a x = b, x >= 0}`, if any.
pub fn feasible_point(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(&vec![Rational::zero(); n], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Returns false if the problem is unbounded.
fn run_simplex(t: &mut Matrix, basis: &mut [usize], cost: &[Rational], allowed: usize) -> bool {
    let rhs = cost.len();
    loop {
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let reduced = basis
                .iter()
                .zip(t.iter())
                .fold(cost[j].clone(), |acc, (&bv, row)| acc - &cost[bv] * &row[j]);
            reduced.is_positive()
        });
        let Some(j) = entering else {
            return true;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[rhs] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leave else {
            return false;
        };
        pivot(t, basis, i, j);
    }
}

fn pivot(t: &mut Matrix, basis: &mut [usize], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    // Cofactor expansion, independent of the elimination path.
    fn cofactor_det(a: &Matrix) -> Rational {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor: Matrix = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &a[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let cases = [
            m(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]),
            m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]),
            m(&[&[0, 1, 1, 1], &[1, 0, 0, 0], &[1, 0, 0, 1], &[1, 0, 1, 0]]),
            m(&[&[0, 2], &[3, 0]]),
        ];
        for a in &cases {
            assert_eq!(determinant(a), cofactor_det(a));
        }
        assert_eq!(determinant(&cases[3]), int(-6));
    }

    #[test]
    fn unique_and_affine_solutions() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let s = solve_linear(&a, &[int(3), int(1)]).unwrap();
        assert!(s.is_unique());
        assert_eq!(s.particular, vec![int(2), int(1)]);

        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let s = solve_linear(&a, &[int(1), rat(1, 2)]).unwrap();
        assert_eq!(s.dimension(), 1);
        for t in [int(0), int(3), rat(-1, 7)] {
            let x: Vec<Rational> = s
                .particular
                .iter()
                .zip(&s.directions[0])
                .map(|(p, d)| p + &t * d)
                .collect();
            assert_eq!(mat_vec(&a, &x), vec![int(1), rat(1, 2)]);
        }

        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve_linear(&a, &[int(1), int(3)]).is_none());
    }

    #[test]
    fn simplex_small_programs() {
        // max x + y, x + 2y + s = 4, 3x + y + t = 6
        let a = m(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let out = maximize(&[int(1), int(1), int(0), int(0)], &a, &[int(4), int(6)]);
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(&x[..2], &[rat(8, 5), rat(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
        // infeasible: x + y = -1
        assert_eq!(
            maximize(&[int(0), int(0)], &m(&[&[1, 1]]), &[int(-1)]),
            LpOutcome::Infeasible
        );
        // unbounded: x - y = 0
        assert_eq!(
            maximize(&[int(1), int(0)], &m(&[&[1, -1]]), &[int(0)]),
            LpOutcome::Unbounded
        );
        // redundant equality rows
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(feasible_point(&a, &[int(1), int(2)]).is_some());
    }
}
