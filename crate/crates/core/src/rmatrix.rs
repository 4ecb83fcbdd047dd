//! Restriction matrices of stable envelopes, R-matrices and the
//! Yang–Baxter checks.
//!
//! Matrices are kept in the raw fixed-point basis: rows are points and
//! columns are components in table order. `R(from → to) = M_to⁻¹ M_from`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixloc::{envelope_restrictions, enumerate_fixed_points, euler_nminus, RestrictionTable};
use crate::quiver::{DimVec, Quiver};
use crate::stab::{Chamber, Decomposition};
use crate::symalg::{Poly, RatFun};

/// Dense square or rectangular matrix of rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    rows: Vec<Vec<RatFun>>,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<RatFun>>) -> Result<RatMatrix> {
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Dimension("ragged matrix".into()));
            }
        }
        Ok(RatMatrix { rows })
    }

    pub fn identity(n: usize) -> RatMatrix {
        RatMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect())
                .collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<RatFun>] {
        &self.rows
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..rhs.ncols())
                    .map(|j| {
                        row.iter()
                            .zip(&rhs.rows)
                            .fold(RatFun::zero(), |acc, (a, r)| acc.add(&a.mul(&r[j])))
                    })
                    .collect()
            })
            .collect();
        Ok(RatMatrix { rows })
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMatrix::identity(self.nrows())
    }

    /// Solves `self · X = rhs` exactly.
    ///
    /// Each row of the augmented system is cleared of denominators, the
    /// polynomial system is reduced with Bareiss' fraction-free elimination
    /// and the triangular system is solved by back substitution.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        let n = self.nrows();
        if self.ncols() != n || rhs.nrows() != n {
            return Err(Error::Dimension("solve needs a square system".into()));
        }
        let m = rhs.ncols();
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                let row: Vec<&RatFun> = self.rows[i].iter().chain(&rhs.rows[i]).collect();
                let lcm = row_denominator(&row);
                row.iter().map(|f| clear(f, &lcm)).collect()
            })
            .collect();
        let mut prev = Poly::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, pivot);
            for i in k + 1..n {
                for j in k + 1..n + m {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![vec![RatFun::zero(); m]; n];
        for i in (0..n).rev() {
            for c in 0..m {
                let mut acc = RatFun::from_poly(a[i][n + c].clone());
                for j in i + 1..n {
                    acc = acc.sub(&x[j][c].mul_poly(&a[i][j]));
                }
                x[i][c] = acc.div(&RatFun::from_poly(a[i][i].clone()))?.split_linear_factors();
            }
        }
        Ok(RatMatrix { rows: x })
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        self.solve(&RatMatrix::identity(self.nrows()))
    }
}

/// Product of the distinct denominator factors of a row, to their largest powers.
fn row_denominator(row: &[&RatFun]) -> Vec<(Poly, u32)> {
    let mut lcm: std::collections::BTreeMap<Poly, u32> = Default::default();
    for f in row {
        for (p, m) in f.denominator_factors() {
            let e = lcm.entry(p.clone()).or_default();
            *e = (*e).max(m);
        }
    }
    lcm.into_iter().collect()
}

fn clear(f: &RatFun, lcm: &[(Poly, u32)]) -> Poly {
    let mut g = f.clone();
    for (p, m) in lcm {
        g = g.mul_poly(&p.pow(*m));
    }
    g.into_poly().expect("row denominator clears every entry")
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Restrictions `M[p, F]` of the unit-leaf envelopes in one chamber.
#[derive(Clone, Debug, PartialEq)]
pub struct StabMatrix {
    pub chamber: Chamber,
    pub points: Vec<String>,
    pub matrix: RatMatrix,
}

pub fn stab_matrix(q: &Quiver, table: &RestrictionTable, chamber: &Chamber) -> Result<StabMatrix> {
    let by_component = envelope_restrictions(q, table, chamber)?;
    let rows = (0..table.points.len())
        .map(|p| by_component.iter().map(|col| col[p].clone()).collect())
        .collect();
    Ok(StabMatrix {
        chamber: chamber.clone(),
        points: table.points.iter().map(|p| p.id.clone()).collect(),
        matrix: RatMatrix::new(rows)?,
    })
}

/// Built-in `T*Gr(v, k)` table for the given chamber.
pub fn grassmannian_table(q: &Quiver, v: usize, slots: usize, chamber: &Chamber) -> Result<RestrictionTable> {
    let dec = Decomposition::unit_framings(&vec![0; slots])?;
    enumerate_fixed_points(q, &DimVec(vec![v]), &dec, chamber)
}

/// `R = M_to⁻¹ M_from`.
pub fn r_matrix(m_from: &StabMatrix, m_to: &StabMatrix) -> Result<RatMatrix> {
    if m_from.points != m_to.points {
        return Err(Error::Invalid("matrices use different fixed points".into()));
    }
    m_to.matrix.solve(&m_from.matrix)
}

/// Entries vanish outside `F' ≤ F` and the diagonal is `e(N⁻)`.
pub fn is_triangular(q: &Quiver, m: &StabMatrix, table: &RestrictionTable) -> Result<bool> {
    for (p, row) in m.matrix.rows().iter().enumerate() {
        let here = table.points[p].component;
        for (c, entry) in row.iter().enumerate() {
            if c == here {
                let diag = RatFun::from_poly(euler_nminus(q, table, p, &m.chamber)?);
                if *entry != diag {
                    return Ok(false);
                }
            } else if !table.component_leq(here, c) && !entry.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeReport {
    pub v: usize,
    pub checks: Vec<CheckLine>,
}

impl YbeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("v = {}: {}\n", self.v, if self.passed() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}\n", if c.passed { "ok" } else { "FAIL" }, c.name));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn word(c: &Chamber) -> String {
    c.word().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Triangularity in all six chambers, unitarity of every adjacent pair and
/// the braid relation for `T*Gr(v, 3)`.
pub fn check_ybe(q: &Quiver, v: usize) -> Result<YbeReport> {
    let chambers = Chamber::all(3);
    let mut checks = Vec::new();
    let mut matrices = Vec::with_capacity(chambers.len());
    for c in &chambers {
        let table = grassmannian_table(q, v, 3, c)?;
        let m = stab_matrix(q, &table, c)?;
        checks.push(CheckLine {
            name: format!("triangular in chamber {}", word(c)),
            passed: is_triangular(q, &m, &table)?,
        });
        matrices.push(m);
    }
    let index = |c: &Chamber| chambers.iter().position(|x| x == c).expect("every chamber is listed");
    let r = |from: &Chamber, to: &Chamber| r_matrix(&matrices[index(from)], &matrices[index(to)]);

    for c in &chambers {
        for p in 0..2 {
            let d = c.swap_adjacent(p);
            if index(&d) < index(c) {
                continue;
            }
            let round_trip = r(&d, c)?.mul(&r(c, &d)?)?;
            checks.push(CheckLine {
                name: format!("unitarity {} <-> {}", word(c), word(&d)),
                passed: round_trip.is_identity(),
            });
        }
    }

    // The two reduced words s1 s2 s1 and s2 s1 s2 of the longest permutation.
    let path_product = |steps: [usize; 3]| -> Result<RatMatrix> {
        let mut current = Chamber::identity(3);
        let mut acc = RatMatrix::identity(matrices[0].matrix.nrows());
        for p in steps {
            let next = current.swap_adjacent(p);
            acc = r(&current, &next)?.mul(&acc)?;
            current = next;
        }
        Ok(acc)
    };
    let left = path_product([0, 1, 0])?;
    let right = path_product([1, 0, 1])?;
    checks.push(CheckLine {
        name: "braid relation R12 R13 R23 = R23 R13 R12".into(),
        passed: left == right,
    });
    Ok(YbeReport { v, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse_ratfun;

    fn m(rows: &[&[&str]]) -> RatMatrix {
        RatMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|t| parse_ratfun(t).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn solves_small_systems() {
        let a = m(&[&["h", "1"], &["a(1,1)", "a(1,2)"]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        let b = m(&[&["1/h", "0"], &["0", "1/(a(1,1)-a(1,2))"]]);
        assert!(b.mul(&b.inverse().unwrap()).unwrap().is_identity());
        let singular = m(&[&["h", "2*h"], &["1", "2"]]);
        assert!(matches!(singular.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn tp1_stab_matrices() {
        let q = Quiver::a1();
        let id = Chamber::identity(2);
        let rev = Chamber::from_word(&[2, 1]).unwrap();
        let m_id = stab_matrix(&q, &grassmannian_table(&q, 1, 2, &id).unwrap(), &id).unwrap();
        let m_rev = stab_matrix(&q, &grassmannian_table(&q, 1, 2, &rev).unwrap(), &rev).unwrap();
        assert_eq!(m_id.points, ["{1}", "{2}"]);
        assert_eq!(m_id.matrix, m(&[&["a(1,1)-a(1,2)+h", "0"], &["h", "a(1,1)-a(1,2)"]]));
        assert_eq!(m_rev.matrix, m(&[&["a(1,2)-a(1,1)", "h"], &["0", "a(1,2)-a(1,1)+h"]]));
        let empty = Chamber::identity(3);
        let m0 = stab_matrix(&q, &grassmannian_table(&q, 0, 3, &empty).unwrap(), &empty).unwrap();
        assert!(m0.matrix.is_identity() && m0.matrix.nrows() == 1);
        assert_eq!(r_matrix(&m_id, &m_id).unwrap(), RatMatrix::identity(2));
    }

    #[test]
    fn tp1_r_matrix() {
        let q = Quiver::a1();
        let id = Chamber::identity(2);
        let rev = Chamber::from_word(&[2, 1]).unwrap();
        let m_id = stab_matrix(&q, &grassmannian_table(&q, 1, 2, &id).unwrap(), &id).unwrap();
        let m_rev = stab_matrix(&q, &grassmannian_table(&q, 1, 2, &rev).unwrap(), &rev).unwrap();
        let r = r_matrix(&m_id, &m_rev).unwrap();
        let u = "(a(1,1)-a(1,2))";
        let expected = m(&[
            &[&format!("-{u}/({u}-h)"), &format!("-h/({u}-h)")],
            &[&format!("-h/({u}-h)"), &format!("-{u}/({u}-h)")],
        ]);
        assert_eq!(r, expected);
    }

    #[test]
    fn ybe_for_small_grassmannians() {
        let q = Quiver::a1();
        for v in [0, 1, 2] {
            let report = check_ybe(&q, v).unwrap();
            assert!(report.passed(), "{}", report.to_text());
            assert_eq!(report.checks.len(), 6 + 6 + 1);
        }
    }
}
