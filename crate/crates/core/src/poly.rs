//! Multivariate polynomials with exact rational coefficients, plus the exact
//! linear solve used for interpolation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use serde_json::{json, Value};

use crate::error::Error;

/// A polynomial in `nvars` variables over the rationals. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RationalPoly {
    pub fn zero(nvars: usize) -> Self {
        RationalPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coef: BigRational) {
        debug_assert_eq!(exp.len(), self.nvars);
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coef;
        if entry.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(e, _)| e.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> BigRational {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (exp, coef) in &self.terms {
            let mut monomial = BigInt::one();
            for (x, &e) in point.iter().zip(exp.iter()) {
                monomial *= x.pow(e);
            }
            acc += coef * BigRational::from_integer(monomial);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// Split by total degree; the zero polynomial yields an empty map.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, RationalPoly> {
        let mut parts: BTreeMap<usize, RationalPoly> = BTreeMap::new();
        for (exp, coef) in &self.terms {
            let d = exp.iter().map(|&x| x as usize).sum();
            parts
                .entry(d)
                .or_insert_with(|| RationalPoly::zero(self.nvars))
                .add_term(exp.clone(), coef.clone());
        }
        parts
    }

    pub fn homogeneous_degrees(&self) -> Vec<usize> {
        self.homogeneous_parts().keys().copied().collect()
    }

    /// Human-readable monomial form, highest degree first.
    pub fn pretty(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (i, (exp, coef)) in ordered.iter().enumerate() {
            let negative = coef.is_negative();
            let abs = if negative { -(*coef).clone() } else { (*coef).clone() };
            if i == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in exp.iter().enumerate() {
                if e == 1 {
                    factors.push(names[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            if factors.is_empty() {
                s.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    s.push_str(&format_rational(&abs));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(exp, coef)| json!({ "exp": exp, "coef": format_rational(coef) }))
            .collect();
        json!({ "vars": names, "terms": terms })
    }
}

fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exponent vectors of total degree at most `degree`, graded lexicographic.
pub fn monomials_up_to(nvars: usize, degree: usize) -> Vec<Vec<u32>> {
    fn exact(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            current[pos] = 0;
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            exact(pos + 1, remaining - e, current, out);
        }
        current[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut current = vec![0u32; nvars];
    for d in 0..=degree as u32 {
        exact(0, d, &mut current, &mut out);
    }
    out
}

/// Solves for the unique polynomial of degree at most `degree` through the
/// given nodes. Requires at least as many nodes as monomials; extra rows make
/// the system overdetermined and any inconsistency reports a degree-bound
/// violation. Rank deficiency reports a singular system so the caller can
/// widen its sample.
#[allow(clippy::needless_range_loop)] // elimination walks rows and columns by index
pub fn interpolate(
    nvars: usize,
    degree: usize,
    points: &[Vec<u64>],
    values: &[BigRational],
) -> Result<RationalPoly, Error> {
    assert_eq!(points.len(), values.len());
    let monos = monomials_up_to(nvars, degree);
    let ncols = monos.len();
    if points.len() < ncols {
        return Err(Error::SingularSystem);
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(points.len());
    for (point, value) in points.iter().zip(values.iter()) {
        let coords: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        let mut row: Vec<BigRational> = Vec::with_capacity(ncols + 1);
        for exp in &monos {
            let mut monomial = BigInt::one();
            for (x, &e) in coords.iter().zip(exp.iter()) {
                monomial *= x.pow(e);
            }
            row.push(BigRational::from_integer(monomial));
        }
        row.push(value.clone());
        rows.push(row);
    }
    // forward elimination
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row][col].clone();
        for c in col..=ncols {
            let v = rows[next_row][c].clone() / inv.clone();
            rows[next_row][c] = v;
        }
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=ncols {
                    let delta = &factor * &rows[next_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_rows.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    // inconsistent leftover rows mean the data is not a polynomial of this degree
    for r in next_row..rows.len() {
        if rows[r][..ncols].iter().all(|x| x.is_zero()) && !rows[r][ncols].is_zero() {
            return Err(Error::DegreeBoundViolated);
        }
    }
    if pivot_rows.len() < ncols {
        return Err(Error::SingularSystem);
    }
    let mut poly = RationalPoly::zero(nvars);
    for (row, &col) in pivot_rows.iter().enumerate() {
        let coef = rows[row][ncols].clone();
        if !coef.is_zero() {
            poly.add_term(monos[col].clone(), coef);
        }
    }
    Ok(poly)
}
