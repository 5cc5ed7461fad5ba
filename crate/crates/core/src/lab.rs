//! Piecewise-polynomial structure: the wall arrangement, chamber sampling,
//! exact interpolation of the counting function, and the genus-0
//! wall-crossing identity.
//!
//! Twisted counts are interpolated in their polynomial normalization
//! `h(mu, nu) * |Aut(mu)| * |Aut(nu)|`, the function that restricts to a
//! single polynomial on every chamber; at points where all parts are
//! distinct the normalization is invisible. The canonical variables are
//! `mu_1, ..., mu_m, nu_1, ..., nu_{n-1}`, with the last target part
//! eliminated through the equal-size relation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::oracle::rational_string;
use crate::partition::Partition;
use crate::poly::{interpolate, RationalPoly};
use crate::tropical;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// Signs of all wall forms at a point, in `wall_list` order.
pub type ChamberSignature = Vec<Sign>;

/// A lattice point of the equal-size locus: the two profile tuples.
pub type LatticePoint = (Vec<u64>, Vec<u64>);

/// Pointwise evaluator interpolation works from.
pub type PointFn<'a> = &'a mut dyn FnMut(&[u64], &[u64]) -> Result<BigRational, Error>;

/// A wall `sum_{i in I} mu_i = sum_{j in J} nu_j`, stored with 0-based index
/// sets. Complementary index pairs cut out the same hyperplane on the
/// equal-size locus, so walls are normalized to contain the first source
/// index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
}

impl Wall {
    /// `sum_I mu_i - sum_J nu_j` at a concrete point.
    pub fn form(&self, mu: &[u64], nu: &[u64]) -> i128 {
        let a: i128 = self.i_set.iter().map(|&i| mu[i] as i128).sum();
        let b: i128 = self.j_set.iter().map(|&j| nu[j] as i128).sum();
        a - b
    }

    pub fn complement(&self, m: usize, n: usize) -> Wall {
        Wall {
            i_set: (0..m).filter(|i| !self.i_set.contains(i)).collect(),
            j_set: (0..n).filter(|j| !self.j_set.contains(j)).collect(),
        }
    }

    /// 1-based display, `I={1}:J={2}`.
    pub fn label(&self) -> String {
        let ones = |s: &[usize]| {
            s.iter()
                .map(|&x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("I={{{}}}:J={{{}}}", ones(&self.i_set), ones(&self.j_set))
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All walls for profiles of lengths `m` and `n`, one representative per
/// complementary pair, deterministically ordered.
pub fn wall_list(m: usize, n: usize) -> Vec<Wall> {
    let mut walls = Vec::new();
    if m < 2 && n < 2 {
        return walls;
    }
    for i_mask in 1..(1u32 << m) - 1 {
        for j_mask in 1..(1u32 << n) - 1 {
            // normalize under complementation: keep the representative
            // containing mu_1
            if i_mask & 1 == 0 {
                continue;
            }
            let i_set: Vec<usize> = (0..m).filter(|&i| i_mask >> i & 1 == 1).collect();
            let j_set: Vec<usize> = (0..n).filter(|&j| j_mask >> j & 1 == 1).collect();
            walls.push(Wall { i_set, j_set });
        }
    }
    walls.sort();
    walls
}

/// Sign vector of a point under every wall form; points on a wall are
/// rejected.
pub fn chamber_signature(mu: &[u64], nu: &[u64]) -> Result<ChamberSignature, Error> {
    let walls = wall_list(mu.len(), nu.len());
    let mut signature = Vec::with_capacity(walls.len());
    for wall in &walls {
        let v = wall.form(mu, nu);
        if v == 0 {
            return Err(Error::OnWall(wall.label()));
        }
        signature.push(if v > 0 { Sign::Pos } else { Sign::Neg });
    }
    Ok(signature)
}

/// Lattice points realizing a signature: positive coordinates up to `bound`,
/// equal sizes, scanned by total size and lexicographically within each size,
/// so output is deterministic and the coordinates spread out quickly.
pub fn chamber_sample(
    m: usize,
    n: usize,
    signature: &ChamberSignature,
    count: usize,
    bound: u64,
) -> Result<Vec<LatticePoint>, Error> {
    sample_impl(m, n, signature, count, bound, false)
}

/// As `chamber_sample`, additionally requiring all parts within each profile
/// to be pairwise distinct. End labels of a cover are then unambiguous.
pub fn chamber_sample_generic(
    m: usize,
    n: usize,
    signature: &ChamberSignature,
    count: usize,
    bound: u64,
) -> Result<Vec<LatticePoint>, Error> {
    sample_impl(m, n, signature, count, bound, true)
}

fn sample_impl(
    m: usize,
    n: usize,
    signature: &ChamberSignature,
    count: usize,
    bound: u64,
    generic: bool,
) -> Result<Vec<LatticePoint>, Error> {
    let walls = wall_list(m, n);
    assert_eq!(walls.len(), signature.len(), "signature length mismatch");
    let mut out = Vec::new();
    let mut mu = vec![1u64; m];
    let mut nu = vec![1u64; n];
    let min_size = m.max(n) as u64;
    let max_size = m.min(n) as u64 * bound;
    'sizes: for size in min_size..=max_size {
        scan(
            &mut mu, &mut nu, 0, size, bound, &walls, signature, generic, count, &mut out,
        );
        if out.len() == count {
            break 'sizes;
        }
    }
    if out.len() < count {
        return Err(Error::EmptyChamber {
            wanted: count,
            bound,
        });
    }
    Ok(out)
}

/// Fills `out` with the points of one total size, lexicographically.
#[allow(clippy::too_many_arguments)]
fn scan(
    mu: &mut Vec<u64>,
    nu: &mut Vec<u64>,
    pos: usize,
    size: u64,
    bound: u64,
    walls: &[Wall],
    signature: &ChamberSignature,
    generic: bool,
    count: usize,
    out: &mut Vec<LatticePoint>,
) {
    if out.len() == count {
        return;
    }
    let m = mu.len();
    let n = nu.len();
    if pos == m + n - 1 {
        let nu_partial: u64 = nu[..n - 1].iter().sum();
        if size <= nu_partial {
            return;
        }
        let last = size - nu_partial;
        if last > bound {
            return;
        }
        nu[n - 1] = last;
        if generic && (has_repeats(mu) || has_repeats(nu)) {
            return;
        }
        for (wall, sign) in walls.iter().zip(signature.iter()) {
            let v = wall.form(mu, nu);
            let ok = match sign {
                Sign::Pos => v > 0,
                Sign::Neg => v < 0,
            };
            if !ok {
                return;
            }
        }
        out.push((mu.clone(), nu.clone()));
        return;
    }
    // both profiles must reach the common size exactly
    if pos < m {
        let used: u64 = mu[..pos].iter().sum();
        if pos == m - 1 {
            if size > used && size - used <= bound {
                mu[pos] = size - used;
                scan(
                    mu, nu, pos + 1, size, bound, walls, signature, generic, count, out,
                );
            }
            return;
        }
        let left = (m - pos - 1) as u64;
        if used + 1 + left > size {
            return;
        }
        let hi = (size - used - left).min(bound);
        for value in 1..=hi {
            mu[pos] = value;
            scan(
                mu, nu, pos + 1, size, bound, walls, signature, generic, count, out,
            );
            if out.len() == count {
                return;
            }
        }
    } else {
        let k = pos - m;
        let used: u64 = nu[..k].iter().sum();
        let left = (n - k - 1) as u64;
        if used + 1 + left > size {
            return;
        }
        let hi = (size - used - left).min(bound);
        for value in 1..=hi {
            nu[k] = value;
            scan(
                mu, nu, pos + 1, size, bound, walls, signature, generic, count, out,
            );
            if out.len() == count {
                return;
            }
        }
    }
}

fn has_repeats(xs: &[u64]) -> bool {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// The counting function in its polynomial normalization:
/// `h~_g(mu, nu) * |Aut(mu)| * |Aut(nu)|` at a concrete tuple.
pub fn poly_value(genus: u64, mu: &[u64], nu: &[u64]) -> Result<BigRational, Error> {
    let mu_p = Partition::new(mu.to_vec())?;
    let nu_p = Partition::new(nu.to_vec())?;
    let value = tropical::twisted_hurwitz(genus, &mu_p, &nu_p)?;
    let aut = BigInt::from(mu_p.aut_order() * nu_p.aut_order());
    Ok(value * BigRational::from_integer(aut))
}

/// Names of the canonical variables: all of `mu`, then `nu` with the last
/// part eliminated.
pub fn variable_names(m: usize, n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=m).map(|i| format!("mu{i}")).collect();
    names.extend((1..n).map(|j| format!("nu{j}")));
    names
}

fn point_coords(mu: &[u64], nu: &[u64]) -> Vec<u64> {
    let mut coords = mu.to_vec();
    coords.extend_from_slice(&nu[..nu.len() - 1]);
    coords
}

/// Evaluates a chamber polynomial at a concrete tuple (the eliminated part is
/// dropped from the coordinates).
pub fn eval_at(poly: &RationalPoly, mu: &[u64], nu: &[u64]) -> BigRational {
    let coords: Vec<BigInt> = point_coords(mu, nu)
        .into_iter()
        .map(BigInt::from)
        .collect();
    poly.eval(&coords)
}

/// Interpolates a function on one chamber as a polynomial of the given total
/// degree, resampling with a wider scan when the node set is degenerate.
/// Every extra node beyond the monomial count acts as a held-out check: an
/// inconsistent system reports a degree-bound violation.
pub fn interpolate_function(
    m: usize,
    n: usize,
    degree: usize,
    signature: &ChamberSignature,
    generic: bool,
    f: PointFn,
) -> Result<RationalPoly, Error> {
    let nvars = m + n - 1;
    let monomials = crate::poly::monomials_up_to(nvars, degree).len();
    let mut wanted = monomials + nvars.max(3);
    let mut bound = 12u64;
    for _ in 0..6 {
        let points = match sample_impl(m, n, signature, wanted, bound, generic) {
            Ok(p) => p,
            Err(Error::EmptyChamber { .. }) => {
                bound *= 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut coords = Vec::with_capacity(points.len());
        let mut values = Vec::with_capacity(points.len());
        for (mu, nu) in &points {
            coords.push(point_coords(mu, nu));
            values.push(f(mu, nu)?);
        }
        match interpolate(nvars, degree, &coords, &values) {
            Ok(poly) => return Ok(poly),
            Err(Error::SingularSystem) => {
                // the lexicographic scan keeps returning the same leading
                // points, so widen the node set, not just the box
                wanted += monomials;
                bound *= 2;
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::SingularSystem)
}

/// The chamber polynomial of the twisted count, exact, of total degree at
/// most `m + n - 1 + 2g`.
pub fn interpolate_chamber(
    genus: u64,
    m: usize,
    n: usize,
    signature: &ChamberSignature,
) -> Result<RationalPoly, Error> {
    let degree = m + n - 1 + 2 * genus as usize;
    interpolate_function(m, n, degree, signature, false, &mut |mu, nu| {
        poly_value(genus, mu, nu)
    })
}

/// Pointwise restricted sum over covers whose quotient has an edge with the
/// wall's split incident to the 2-valent vertex. The point must realize the
/// claimed signature and have pairwise distinct parts in each profile, so
/// that end labels are unambiguous.
pub fn restricted_sum_delta_adjacent(
    mu: &[u64],
    nu: &[u64],
    wall: &Wall,
    claimed: &ChamberSignature,
) -> Result<BigRational, Error> {
    let walls = wall_list(mu.len(), nu.len());
    if !walls.contains(wall) {
        return Err(Error::InvalidWall);
    }
    if chamber_signature(mu, nu)? != *claimed {
        return Err(Error::ChamberMismatch);
    }
    if has_repeats(mu) || has_repeats(nu) {
        return Err(Error::Invalid(
            "restricted sums need pairwise distinct parts in each profile".into(),
        ));
    }
    // the engine works on sorted profiles; index sets translate through the
    // sorting permutation
    let (mu_sorted, i_map) = sort_with_index_map(mu);
    let (nu_sorted, j_map) = sort_with_index_map(nu);
    let i_set: Vec<usize> = {
        let mut s: Vec<usize> = wall.i_set.iter().map(|&i| i_map[i]).collect();
        s.sort_unstable();
        s
    };
    let j_set: Vec<usize> = {
        let mut s: Vec<usize> = wall.j_set.iter().map(|&j| j_map[j]).collect();
        s.sort_unstable();
        s
    };
    let mu_p = Partition::new(mu_sorted)?;
    let nu_p = Partition::new(nu_sorted)?;
    tropical::delta_adjacent_sum(&mu_p, &nu_p, &i_set, &j_set)
}

/// Sorted copy plus the map from original index to sorted position. Only
/// well-defined for pairwise distinct entries.
fn sort_with_index_map(xs: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(xs[k]));
    let mut map = vec![0usize; xs.len()];
    for (rank, &orig) in order.iter().enumerate() {
        map[orig] = rank;
    }
    let sorted = order.iter().map(|&k| xs[k]).collect();
    (sorted, map)
}

fn check_adjacent(
    walls: &[Wall],
    wall_index: usize,
    c1: &ChamberSignature,
    c2: &ChamberSignature,
) -> Result<(), Error> {
    if wall_index >= walls.len() || c1.len() != walls.len() || c2.len() != walls.len() {
        return Err(Error::InvalidWall);
    }
    for k in 0..walls.len() {
        let same = c1[k] == c2[k];
        if k == wall_index && same {
            return Err(Error::NotAdjacent);
        }
        if k != wall_index && !same {
            return Err(Error::NotAdjacent);
        }
    }
    if c1[wall_index] != Sign::Pos {
        return Err(Error::NotAdjacent);
    }
    Ok(())
}

/// `P_1 - P_2`: the difference of the genus-0 chamber polynomials across one
/// wall, `C_1` on the positive side.
pub fn wall_crossing_lhs(
    m: usize,
    n: usize,
    wall_index: usize,
    c1: &ChamberSignature,
    c2: &ChamberSignature,
) -> Result<RationalPoly, Error> {
    let walls = wall_list(m, n);
    check_adjacent(&walls, wall_index, c1, c2)?;
    let p1 = interpolate_chamber(0, m, n, c1)?;
    let p2 = interpolate_chamber(0, m, n, c2)?;
    Ok(p1.sub(&p2))
}

/// Every ingredient of the genus-0 wall-crossing formula at one point,
/// kept separate so mismatches can be printed in full.
#[derive(Clone, Debug)]
pub struct WallCrossing {
    pub wall: Wall,
    pub delta: i128,
    /// restricted sum in the chamber containing the point
    pub h_c1_delta: BigRational,
    /// restricted-sum polynomial of the far chamber, evaluated at the point
    pub h_c2_delta: BigRational,
    /// twisted factor of the summand with the 2-valent vertex on the near part
    pub twisted_first: BigRational,
    pub classical_second: BigRational,
    pub classical_first: BigRational,
    pub twisted_second: BigRational,
    pub value: BigRational,
}

impl fmt::Display for WallCrossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "wall {} with delta = {}", self.wall, self.delta)?;
        writeln!(
            f,
            "  restricted sums: near {} far {}",
            rational_string(&self.h_c1_delta),
            rational_string(&self.h_c2_delta)
        )?;
        writeln!(
            f,
            "  twisted/classical pieces: {} * {} and {} * {}",
            rational_string(&self.twisted_first),
            rational_string(&self.classical_second),
            rational_string(&self.classical_first),
            rational_string(&self.twisted_second)
        )?;
        write!(f, "  total {}", rational_string(&self.value))
    }
}

/// Evaluates the wall-crossing formula pointwise at a point of the positive
/// chamber: the difference of the restricted sums plus delta times the two
/// glued products of smaller twisted and classical counts.
pub fn wall_crossing_rhs(
    m: usize,
    n: usize,
    wall_index: usize,
    c1: &ChamberSignature,
    c2: &ChamberSignature,
    mu: &[u64],
    nu: &[u64],
) -> Result<WallCrossing, Error> {
    let walls = wall_list(m, n);
    check_adjacent(&walls, wall_index, c1, c2)?;
    let wall = walls[wall_index].clone();
    if chamber_signature(mu, nu)? != *c1 {
        return Err(Error::ChamberMismatch);
    }
    let delta = wall.form(mu, nu);
    debug_assert!(delta > 0);
    let delta_u = delta as u64;

    let h_c1_delta = restricted_sum_delta_adjacent(mu, nu, &wall, c1)?;
    let far_poly = interpolate_function(m, n, m + n - 1, c2, true, &mut |pmu, pnu| {
        restricted_sum_delta_adjacent(pmu, pnu, &wall, c2)
    })?;
    let h_c2_delta = eval_at(&far_poly, mu, nu);

    let mu_i: Vec<u64> = wall.i_set.iter().map(|&i| mu[i]).collect();
    let nu_j: Vec<u64> = wall.j_set.iter().map(|&j| nu[j]).collect();
    let comp = wall.complement(m, n);
    let mu_ic: Vec<u64> = comp.i_set.iter().map(|&i| mu[i]).collect();
    let nu_jc: Vec<u64> = comp.j_set.iter().map(|&j| nu[j]).collect();

    let with_delta = |parts: &[u64]| {
        let mut v = parts.to_vec();
        v.push(delta_u);
        v
    };
    let first_target = with_delta(&nu_j);
    let second_source = with_delta(&mu_ic);
    // the cut pieces must stay generic too, or the cut end is not identified
    // by its weight
    for piece in [&mu_i, &first_target, &second_source, &nu_jc] {
        if has_repeats(piece) {
            return Err(Error::Invalid(
                "wall crossing needs a point whose cut pieces have distinct parts".into(),
            ));
        }
    }

    // twisted factors exclude sub-covers whose 2-valent vertex touches the
    // cut end: glued back, those have the 2-valent vertex on the crossing
    // edge and belong to the restricted sums above
    let twisted_first = tropical::twisted_hurwitz_avoiding_end(
        &Partition::new(mu_i.clone())?,
        &Partition::new(first_target.clone())?,
        true,
        delta_u,
    )?;
    let classical_second = tropical::classical_double_hurwitz(
        0,
        &Partition::new(second_source.clone())?,
        &Partition::new(nu_jc.clone())?,
    )?;
    let classical_first = tropical::classical_double_hurwitz(
        0,
        &Partition::new(mu_i.clone())?,
        &Partition::new(first_target.clone())?,
    )?;
    let twisted_second = tropical::twisted_hurwitz_avoiding_end(
        &Partition::new(second_source.clone())?,
        &Partition::new(nu_jc.clone())?,
        false,
        delta_u,
    )?;

    let total_vertices = m + n - 1;
    let near_size = wall.i_set.len() + wall.j_set.len();
    let pow = |k: usize| BigRational::from_integer(BigInt::from(1u128 << k));
    let choose = |n: usize, k: usize| BigRational::from_integer(BigInt::from(binomial(n, k)));

    let glued = pow(comp.i_set.len() + comp.j_set.len() - 1)
        * choose(total_vertices, near_size)
        * &twisted_first
        * &classical_second
        + pow(near_size - 1)
            * choose(total_vertices, near_size - 1)
            * &classical_first
            * &twisted_second;

    let value = &h_c1_delta - &h_c2_delta
        + BigRational::from_integer(BigInt::from(delta)) * glued;

    Ok(WallCrossing {
        wall,
        delta,
        h_c1_delta,
        h_c2_delta,
        twisted_first,
        classical_second,
        classical_first,
        twisted_second,
        value,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// True when the polynomial's nonzero homogeneous parts all lie in `allowed`.
pub fn degrees_within(poly: &RationalPoly, allowed: &[usize]) -> bool {
    poly.homogeneous_degrees()
        .iter()
        .all(|d| allowed.contains(d))
}

/// Convenience used by reports: is the rational value an integer?
pub fn is_integral(x: &BigRational) -> bool {
    x.denom() == &BigInt::from(1) || x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rational_int;

    #[test]
    fn wall_lists_by_shape() {
        assert!(wall_list(1, 2).is_empty());
        assert!(wall_list(1, 3).is_empty());
        let walls = wall_list(2, 2);
        assert_eq!(walls.len(), 2);
        assert_eq!(walls[0].i_set, vec![0]);
        assert_eq!(walls[0].j_set, vec![0]);
        assert_eq!(walls[1].i_set, vec![0]);
        assert_eq!(walls[1].j_set, vec![1]);
    }

    #[test]
    fn signatures_and_wall_rejection() {
        assert_eq!(
            chamber_signature(&[3, 1], &[2, 2]).unwrap(),
            vec![Sign::Pos, Sign::Pos]
        );
        assert_eq!(
            chamber_signature(&[2, 2], &[3, 1]).unwrap(),
            vec![Sign::Neg, Sign::Pos]
        );
        assert!(matches!(
            chamber_signature(&[2, 2], &[2, 2]),
            Err(Error::OnWall(_))
        ));
    }

    #[test]
    fn sample_scan_is_deterministic() {
        let sig = vec![Sign::Pos, Sign::Pos];
        let points = chamber_sample(2, 2, &sig, 1, 10).unwrap();
        assert_eq!(points, vec![(vec![3, 1], vec![2, 2])]);
        // empty wall set: the first points of the plain scan qualify
        let empty = chamber_sample(1, 2, &vec![], 3, 10).unwrap();
        assert_eq!(empty.len(), 3);
        assert_eq!(empty[0], (vec![2], vec![1, 1]));
    }

    #[test]
    fn impossible_signature_errors() {
        let sig = vec![Sign::Pos, Sign::Pos];
        // bound 1 leaves no room for mu1 > nu1
        assert!(matches!(
            chamber_sample(2, 2, &sig, 1, 1),
            Err(Error::EmptyChamber { .. })
        ));
    }

    #[test]
    fn interpolation_one_to_two() {
        let poly = interpolate_chamber(0, 1, 2, &vec![]).unwrap();
        // mu(mu-1) + nu1(nu1-1) + nu2(nu2-1) with nu2 = mu - nu1
        for (mu, nu1) in [(5u64, 2u64), (7, 3), (9, 4), (6, 1)] {
            let nu2 = mu - nu1;
            let expected =
                rational_int((mu * (mu - 1) + nu1 * (nu1 - 1) + nu2 * (nu2 - 1)) as i64);
            assert_eq!(eval_at(&poly, &[mu], &[nu1, nu2]), expected);
        }
        assert_eq!(poly.homogeneous_degrees(), vec![1, 2]);
    }

    #[test]
    fn interpolation_single_parts() {
        // genus 0, shapes (1,1): (mu - 1) / 2
        let poly = interpolate_chamber(0, 1, 1, &vec![]).unwrap();
        for mu in 2..=6u64 {
            assert_eq!(
                eval_at(&poly, &[mu], &[mu]),
                BigRational::new(BigInt::from(mu - 1), BigInt::from(2))
            );
        }
        // genus 1, shapes (1,1): (2 mu^3 - 3 mu^2 + mu) / 3
        let poly = interpolate_chamber(1, 1, 1, &vec![]).unwrap();
        let names = variable_names(1, 1);
        assert_eq!(poly.pretty(&names), "2/3*mu1^3 - mu1^2 + 1/3*mu1");
        assert_eq!(poly.homogeneous_degrees(), vec![1, 2, 3]);
    }

    #[test]
    fn restricted_sum_validates_chamber() {
        let walls = wall_list(2, 2);
        let sig_pp = vec![Sign::Pos, Sign::Pos];
        let sig_np = vec![Sign::Neg, Sign::Pos];
        // repeated target parts leave the end labels ambiguous
        assert!(restricted_sum_delta_adjacent(&[3, 1], &[2, 2], &walls[0], &sig_pp).is_err());
        // distinct parts and matching chamber
        let v =
            restricted_sum_delta_adjacent(&[4, 2], &[5, 1], &walls[1], &sig_np).unwrap();
        assert!(v >= BigRational::zero());
    }

    #[test]
    fn restricted_sum_rejects_foreign_walls() {
        // a single source part admits no wall at all
        let foreign = Wall {
            i_set: vec![0],
            j_set: vec![0],
        };
        assert_eq!(
            restricted_sum_delta_adjacent(&[3], &[2, 1], &foreign, &vec![]),
            Err(Error::InvalidWall)
        );
    }

    #[test]
    fn adjacency_is_checked() {
        let c1 = vec![Sign::Pos, Sign::Pos];
        let not_adj = vec![Sign::Neg, Sign::Neg];
        assert!(matches!(
            wall_crossing_lhs(2, 2, 0, &c1, &not_adj),
            Err(Error::NotAdjacent)
        ));
        let c2 = vec![Sign::Neg, Sign::Pos];
        assert!(wall_crossing_lhs(2, 2, 0, &c1, &c2).is_ok());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 1), 3);
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
    }
}
