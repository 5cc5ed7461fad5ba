//! Graph-side engines.
//!
//! Twisted monodromy graphs of type `(g, mu, nu)` are enumerated left to
//! right over the `b` branch-point slots. The running state is the multiset
//! of live strand pairs (two involution-paired open edges of equal weight);
//! each slot applies one of three local moves:
//!
//! * twin join: two pairs merge through two 3-valent twin vertices, in the
//!   parallel or the crossed matching;
//! * twin cut: one pair splits into two pairs through twin vertices;
//! * 4-valent: one pair passes a single involution-fixed vertex.
//!
//! Covers whose live pairs do not realize the target profile, or that come
//! out disconnected, are discarded; isomorphic duplicates are merged. The
//! per-cover multiplicity then sums to the twisted double Hurwitz number.
//! The classical (involution-free) enumeration of 3-valent monodromy graphs
//! with labeled ends lives here too; the genus-0 wall-crossing formula
//! consumes it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cover::{CoverEdge, CoverVertex, EdgeId, GraphContribution, TwistedCover};
use crate::error::Error;
use crate::oracle::branch_count;
use crate::partition::Partition;

/// Every isomorphism class of twisted monodromy graph of the given type,
/// each exactly once, in deterministic order. With `prune_zero` the covers
/// containing a weight-1 4-valent vertex (multiplicity zero) are skipped.
pub fn enumerate_twisted_covers(
    genus: u64,
    mu: &Partition,
    nu: &Partition,
    prune_zero: bool,
) -> Result<Vec<TwistedCover>, Error> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    let b = branch_count(genus, mu, nu)?;
    let mut builder = Builder {
        vertices: Vec::new(),
        edges: Vec::new(),
        live: Vec::new(),
    };
    for &part in mu.parts() {
        builder.new_pair(None, None, part);
    }
    let mut target: Vec<u64> = nu.parts().to_vec();
    target.sort_unstable();
    let mut found: Vec<TwistedCover> = Vec::new();
    let mut keys: Vec<Vec<(usize, usize, u64, u8)>> = Vec::new();
    expand(&mut builder, 1, b, &target, prune_zero, &mut |cover| {
        let key = cover.invariant_key();
        let duplicate = keys
            .iter()
            .zip(found.iter())
            .any(|(k, c)| *k == key && c.is_isomorphic(&cover));
        if !duplicate {
            debug_assert_eq!(cover.validate(genus, mu, nu), Ok(()));
            keys.push(key);
            found.push(cover);
        }
    });
    Ok(found)
}

/// Covers with their automorphism orders and multiplicities.
pub fn cover_contributions(
    genus: u64,
    mu: &Partition,
    nu: &Partition,
    prune_zero: bool,
) -> Result<Vec<GraphContribution>, Error> {
    Ok(enumerate_twisted_covers(genus, mu, nu, prune_zero)?
        .into_iter()
        .map(|c| c.contribution())
        .collect())
}

/// The twisted double Hurwitz number as a weighted graph count.
pub fn twisted_hurwitz(genus: u64, mu: &Partition, nu: &Partition) -> Result<BigRational, Error> {
    let mut total = BigRational::zero();
    for cover in enumerate_twisted_covers(genus, mu, nu, true)? {
        total += cover.multiplicity();
    }
    Ok(total)
}

struct Builder {
    vertices: Vec<CoverVertex>,
    edges: Vec<CoverEdge>,
    /// Open strand pairs: (edge, partner edge), both with unset target.
    live: Vec<(EdgeId, EdgeId)>,
}

impl Builder {
    fn new_pair(&mut self, src_a: Option<usize>, src_b: Option<usize>, weight: u64) {
        let a = self.edges.len();
        let b = a + 1;
        self.edges.push(CoverEdge {
            src: src_a,
            dst: None,
            weight,
            partner: b,
        });
        self.edges.push(CoverEdge {
            src: src_b,
            dst: None,
            weight,
            partner: a,
        });
        self.live.push((a, b));
    }

    fn weight(&self, pair: usize) -> u64 {
        self.edges[self.live[pair].0].weight
    }

    fn twin_vertices(&mut self, level: usize) -> (usize, usize) {
        let v = self.vertices.len();
        self.vertices.push(CoverVertex {
            level,
            partner: v + 1,
        });
        self.vertices.push(CoverVertex {
            level,
            partner: v,
        });
        (v, v + 1)
    }

    fn finish(&self) -> TwistedCover {
        TwistedCover {
            branch_points: 0, // caller sets
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        }
    }
}

fn expand(
    builder: &mut Builder,
    level: usize,
    b: usize,
    target: &[u64],
    prune_zero: bool,
    accept: &mut impl FnMut(TwistedCover),
) {
    if level > b {
        let mut weights: Vec<u64> = (0..builder.live.len()).map(|i| builder.weight(i)).collect();
        weights.sort_unstable();
        if weights != target {
            return;
        }
        let mut cover = builder.finish();
        cover.branch_points = b;
        if cover.is_connected() {
            accept(cover);
        }
        return;
    }
    // pair count moves by at most one per slot
    let remaining = (b - level + 1) as i64;
    if (builder.live.len() as i64 - target.len() as i64).abs() > remaining {
        return;
    }

    let live_count = builder.live.len();

    // twin join of two pairs, both matchings
    for i in 0..live_count {
        for j in i + 1..live_count {
            for crossed in [false, true] {
                let mut next = clone_builder(builder);
                let (p, pp) = next.live[i];
                let (q, qq) = next.live[j];
                let (q_at_v, q_at_w) = if crossed { (qq, q) } else { (q, qq) };
                let (v, w) = next.twin_vertices(level);
                next.edges[p].dst = Some(v);
                next.edges[q_at_v].dst = Some(v);
                next.edges[pp].dst = Some(w);
                next.edges[q_at_w].dst = Some(w);
                let weight = next.edges[p].weight + next.edges[q].weight;
                next.live.remove(j);
                next.live.remove(i);
                next.new_pair(Some(v), Some(w), weight);
                expand(&mut next, level + 1, b, target, prune_zero, accept);
            }
        }
    }

    // twin cut of one pair
    for i in 0..live_count {
        let w_total = builder.weight(i);
        for c in 1..=w_total / 2 {
            let mut next = clone_builder(builder);
            let (p, pp) = next.live[i];
            let (v, w) = next.twin_vertices(level);
            next.edges[p].dst = Some(v);
            next.edges[pp].dst = Some(w);
            next.live.remove(i);
            next.new_pair(Some(v), Some(w), c);
            next.new_pair(Some(v), Some(w), w_total - c);
            expand(&mut next, level + 1, b, target, prune_zero, accept);
        }
    }

    // 4-valent pass-through
    for i in 0..live_count {
        if prune_zero && builder.weight(i) == 1 {
            continue;
        }
        let mut next = clone_builder(builder);
        let (p, pp) = next.live[i];
        let u = next.vertices.len();
        next.vertices.push(CoverVertex { level, partner: u });
        next.edges[p].dst = Some(u);
        next.edges[pp].dst = Some(u);
        let weight = next.edges[p].weight;
        next.live.remove(i);
        next.new_pair(Some(u), Some(u), weight);
        expand(&mut next, level + 1, b, target, prune_zero, accept);
    }
}

fn clone_builder(b: &Builder) -> Builder {
    Builder {
        vertices: b.vertices.clone(),
        edges: b.edges.clone(),
        live: b.live.clone(),
    }
}

/// Sum of multiplicities over covers whose quotient carries an internal edge
/// with the given end split incident to the 2-valent vertex. Genus 0 only;
/// the split is matched up to complement.
pub fn delta_adjacent_sum(
    mu: &Partition,
    nu: &Partition,
    i_set: &[usize],
    j_set: &[usize],
) -> Result<BigRational, Error> {
    let mut total = BigRational::zero();
    for cover in enumerate_twisted_covers(0, mu, nu, true)? {
        let q = cover.quotient();
        let two_valent = q.two_valent_vertices();
        debug_assert_eq!(two_valent.len(), 1);
        let splits = q.edge_splits(mu, nu)?;
        let tv = two_valent[0];
        let adjacent = q.edges_at(tv);
        let matched = adjacent.iter().any(|&e| match &splits[e] {
            None => false,
            Some((si, sj)) => {
                split_matches(si, sj, i_set, j_set, mu.len(), nu.len())
            }
        });
        if matched {
            total += cover.multiplicity();
        }
    }
    Ok(total)
}

/// Twisted count of genus 0 restricted to covers whose quotient 2-valent
/// vertex is not incident to the end of the given weight and direction.
///
/// The glued products of the wall-crossing formula need this restriction:
/// a sub-cover whose 2-valent vertex touches the cut end would re-glue into
/// a graph with the 2-valent vertex on the crossing edge, and those graphs
/// are accounted for separately. The designated end must be unique, so the
/// caller guarantees pairwise distinct parts.
pub fn twisted_hurwitz_avoiding_end(
    mu: &Partition,
    nu: &Partition,
    delta_is_out: bool,
    delta_weight: u64,
) -> Result<BigRational, Error> {
    let mut total = BigRational::zero();
    for cover in enumerate_twisted_covers(0, mu, nu, true)? {
        let q = cover.quotient();
        let two_valent = q.two_valent_vertices();
        debug_assert_eq!(two_valent.len(), 1);
        let tv = two_valent[0];
        let touches_delta_end = q.edges_at(tv).into_iter().any(|e| {
            let edge = &q.edges[e];
            if edge.weight != delta_weight {
                return false;
            }
            if delta_is_out {
                edge.dst.is_none()
            } else {
                edge.src.is_none()
            }
        });
        if !touches_delta_end {
            total += cover.multiplicity();
        }
    }
    Ok(total)
}

pub(crate) fn split_matches(
    si: &[usize],
    sj: &[usize],
    i_set: &[usize],
    j_set: &[usize],
    m: usize,
    n: usize,
) -> bool {
    if si == i_set && sj == j_set {
        return true;
    }
    let ci: Vec<usize> = (0..m).filter(|x| !si.contains(x)).collect();
    let cj: Vec<usize> = (0..n).filter(|x| !sj.contains(x)).collect();
    ci == i_set && cj == j_set
}

// ---------------------------------------------------------------------------
// classical 3-valent monodromy graphs (no involution, labeled ends)
// ---------------------------------------------------------------------------

/// A leveled 3-valent monodromy graph with labeled ends. Levels hold exactly
/// one vertex each, so two such graphs are isomorphic exactly when their
/// edge descriptor multisets agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCover {
    pub slots: usize,
    /// level of vertex `v` is `levels[v]`
    pub levels: Vec<usize>,
    pub edges: Vec<ClassicalEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassicalEdge {
    pub src: Option<usize>,
    pub dst: Option<usize>,
    pub weight: u64,
    /// index into the source profile for inward ends
    pub in_label: Option<usize>,
    /// index into the target profile for outward ends
    pub out_label: Option<usize>,
}

type ClassicalEncoding = Vec<(usize, usize, u64, usize, usize)>;

impl ClassicalCover {
    fn encoding(&self) -> ClassicalEncoding {
        let mut enc: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                (
                    e.src.map(|v| self.levels[v]).unwrap_or(0),
                    e.dst.map(|v| self.levels[v]).unwrap_or(self.slots + 1),
                    e.weight,
                    e.in_label.map(|l| l + 1).unwrap_or(0),
                    e.out_label.map(|l| l + 1).unwrap_or(0),
                )
            })
            .collect();
        enc.sort_unstable();
        enc
    }

    fn is_connected(&self) -> bool {
        let nv = self.levels.len();
        if nv == 0 {
            return self.edges.len() <= 1;
        }
        if self.edges.iter().any(|e| e.src.is_none() && e.dst.is_none()) {
            return false;
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, bb) in [(e.src, e.dst), (e.dst, e.src)] {
                    if a == Some(v) {
                        if let Some(x) = bb {
                            if !seen[x] {
                                seen[x] = true;
                                stack.push(x);
                            }
                        }
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn genus(&self) -> i64 {
        let leaves = self
            .edges
            .iter()
            .map(|e| e.src.is_none() as i64 + e.dst.is_none() as i64)
            .sum::<i64>();
        self.edges.len() as i64 - (self.levels.len() as i64 + leaves) + 1
    }

    /// Product of internal edge weights over the parallel-edge automorphisms.
    pub fn multiplicity(&self) -> BigRational {
        let mut numer = BigInt::one();
        let mut aut = 1u64;
        let mut parallel: std::collections::BTreeMap<(usize, usize, u64), u64> =
            std::collections::BTreeMap::new();
        for e in &self.edges {
            if let (Some(s), Some(d)) = (e.src, e.dst) {
                numer *= BigInt::from(e.weight);
                *parallel.entry((s, d, e.weight)).or_insert(0) += 1;
            }
        }
        for (_, k) in parallel {
            aut *= (1..=k).product::<u64>().max(1);
        }
        BigRational::new(numer, BigInt::from(aut))
    }
}

/// All classical monodromy graphs of type `(g, mu, nu)` with labeled ends.
pub fn enumerate_classical_covers(
    genus: u64,
    mu: &Partition,
    nu: &Partition,
) -> Result<Vec<ClassicalCover>, Error> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    let r = 2 * genus as i64 - 2 + mu.len() as i64 + nu.len() as i64;
    if r < 0 {
        return Err(Error::NegativeBranchCount);
    }
    let r = r as usize;
    let mut state = ClassicalBuilder {
        levels: Vec::new(),
        edges: Vec::new(),
        live: Vec::new(),
    };
    for (i, &part) in mu.parts().iter().enumerate() {
        let e = state.edges.len();
        state.edges.push(ClassicalEdge {
            src: None,
            dst: None,
            weight: part,
            in_label: Some(i),
            out_label: None,
        });
        state.live.push(e);
    }
    let mut found: Vec<ClassicalCover> = Vec::new();
    let mut encodings: Vec<ClassicalEncoding> = Vec::new();
    classical_expand(&mut state, 1, r, genus, nu, &mut |cover| {
        let enc = cover.encoding();
        if !encodings.contains(&enc) {
            encodings.push(enc);
            found.push(cover);
        }
    });
    Ok(found)
}

struct ClassicalBuilder {
    levels: Vec<usize>,
    edges: Vec<ClassicalEdge>,
    live: Vec<usize>,
}

fn classical_expand(
    state: &mut ClassicalBuilder,
    level: usize,
    r: usize,
    genus: u64,
    nu: &Partition,
    accept: &mut impl FnMut(ClassicalCover),
) {
    if level > r {
        let mut weights: Vec<u64> = state.live.iter().map(|&e| state.edges[e].weight).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        if weights != nu.parts() {
            return;
        }
        // all ways to hand the target labels to the open strands
        let mut assignment = vec![usize::MAX; state.live.len()];
        let mut used = vec![false; nu.len()];
        assign_labels(state, nu, 0, &mut assignment, &mut used, &mut |st, asg| {
            let mut edges = st.edges.clone();
            for (k, &e) in st.live.iter().enumerate() {
                edges[e].out_label = Some(asg[k]);
            }
            let cover = ClassicalCover {
                slots: r,
                levels: st.levels.clone(),
                edges,
            };
            if cover.is_connected() && cover.genus() == genus as i64 {
                accept(cover);
            }
        });
        return;
    }
    let remaining = (r - level + 1) as i64;
    if (state.live.len() as i64 - nu.len() as i64).abs() > remaining {
        return;
    }
    let live_count = state.live.len();
    // join
    for i in 0..live_count {
        for j in i + 1..live_count {
            let mut next = clone_classical(state);
            let v = next.levels.len();
            next.levels.push(level);
            let (a, bb) = (next.live[i], next.live[j]);
            next.edges[a].dst = Some(v);
            next.edges[bb].dst = Some(v);
            let weight = next.edges[a].weight + next.edges[bb].weight;
            let e = next.edges.len();
            next.edges.push(ClassicalEdge {
                src: Some(v),
                dst: None,
                weight,
                in_label: None,
                out_label: None,
            });
            next.live.remove(j);
            next.live.remove(i);
            next.live.push(e);
            classical_expand(&mut next, level + 1, r, genus, nu, accept);
        }
    }
    // cut
    for i in 0..live_count {
        let w_total = state.edges[state.live[i]].weight;
        for c in 1..=w_total / 2 {
            let mut next = clone_classical(state);
            let v = next.levels.len();
            next.levels.push(level);
            let a = next.live[i];
            next.edges[a].dst = Some(v);
            let e = next.edges.len();
            for w in [c, w_total - c] {
                next.edges.push(ClassicalEdge {
                    src: Some(v),
                    dst: None,
                    weight: w,
                    in_label: None,
                    out_label: None,
                });
            }
            next.live.remove(i);
            next.live.push(e);
            next.live.push(e + 1);
            classical_expand(&mut next, level + 1, r, genus, nu, accept);
        }
    }
}

fn assign_labels(
    state: &ClassicalBuilder,
    nu: &Partition,
    k: usize,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    accept: &mut impl FnMut(&ClassicalBuilder, &[usize]),
) {
    if k == state.live.len() {
        accept(state, assignment);
        return;
    }
    let w = state.edges[state.live[k]].weight;
    for (label, &part) in nu.parts().iter().enumerate() {
        if part == w && !used[label] {
            used[label] = true;
            assignment[k] = label;
            assign_labels(state, nu, k + 1, assignment, used, accept);
            assignment[k] = usize::MAX;
            used[label] = false;
        }
    }
}

fn clone_classical(b: &ClassicalBuilder) -> ClassicalBuilder {
    ClassicalBuilder {
        levels: b.levels.clone(),
        edges: b.edges.clone(),
        live: b.live.clone(),
    }
}

/// Classical double Hurwitz number by graph enumeration, labeled-ends
/// normalization (the chamber-polynomial one).
pub fn classical_double_hurwitz(
    genus: u64,
    mu: &Partition,
    nu: &Partition,
) -> Result<BigRational, Error> {
    let mut total = BigRational::zero();
    for cover in enumerate_classical_covers(genus, mu, nu)? {
        total += cover.multiplicity();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rational_int;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn flagship_count_and_contributions() {
        let covers = enumerate_twisted_covers(1, &p(&[4]), &p(&[2, 2]), false).unwrap();
        assert_eq!(covers.len(), 8);
        let mut mults: Vec<BigRational> = covers.iter().map(|c| c.multiplicity()).collect();
        mults.sort();
        let mut expected: Vec<BigRational> = [72, 4, 4, 24, 16, 4, 12, 24]
            .iter()
            .map(|&x| rational_int(x))
            .collect();
        expected.sort();
        assert_eq!(mults, expected);
        assert_eq!(
            twisted_hurwitz(1, &p(&[4]), &p(&[2, 2])).unwrap(),
            rational_int(160)
        );
    }

    #[test]
    fn trivial_type_is_one_zero_cover() {
        let covers = enumerate_twisted_covers(0, &p(&[1]), &p(&[1]), false).unwrap();
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].four_valent_vertices().len(), 1);
        assert_eq!(covers[0].multiplicity(), BigRational::zero());
        assert_eq!(
            twisted_hurwitz(0, &p(&[1]), &p(&[1])).unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn three_covers_for_one_to_two_generic() {
        let covers = enumerate_twisted_covers(0, &p(&[4]), &p(&[3, 1]), false).unwrap();
        assert_eq!(covers.len(), 3);
        let total = twisted_hurwitz(0, &p(&[4]), &p(&[3, 1])).unwrap();
        // mu(mu-1) + nu1(nu1-1) + nu2(nu2-1) at (4; 3, 1)
        assert_eq!(total, rational_int(12 + 6));
    }

    #[test]
    fn half_for_two_to_two() {
        assert_eq!(
            twisted_hurwitz(0, &p(&[2]), &p(&[2])).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
    }

    #[test]
    fn genus_one_single_part_values() {
        // (2 mu^3 - 3 mu^2 + mu) / 3
        for mu in 2..=6u64 {
            let expected = BigRational::new(
                BigInt::from(2 * mu * mu * mu) - BigInt::from(3 * mu * mu) + BigInt::from(mu),
                BigInt::from(3),
            );
            assert_eq!(
                twisted_hurwitz(1, &p(&[mu]), &p(&[mu])).unwrap(),
                expected,
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn pruning_does_not_change_the_sum() {
        for (g, mu, nu) in [(0, vec![2, 1], vec![1, 1, 1]), (1, vec![2], vec![1, 1])] {
            let full = enumerate_twisted_covers(g, &p(&mu), &p(&nu), false).unwrap();
            let pruned = enumerate_twisted_covers(g, &p(&mu), &p(&nu), true).unwrap();
            let sum =
                |cs: &[TwistedCover]| cs.iter().map(|c| c.multiplicity()).sum::<BigRational>();
            assert_eq!(sum(&full), sum(&pruned));
            assert!(pruned.len() <= full.len());
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(
            classical_double_hurwitz(0, &p(&[2]), &p(&[1, 1])).unwrap(),
            rational_int(1)
        );
        assert_eq!(
            classical_double_hurwitz(0, &p(&[3]), &p(&[1, 1, 1])).unwrap(),
            rational_int(6)
        );
        assert_eq!(
            classical_double_hurwitz(0, &p(&[1]), &p(&[1])).unwrap(),
            rational_int(1)
        );
    }

    #[test]
    fn classical_agrees_with_scan() {
        for (g, mu, nu) in [
            (0u64, vec![2], vec![1, 1]),
            (0, vec![3], vec![1, 1, 1]),
            (0, vec![2, 1], vec![1, 1, 1]),
            (0, vec![3, 1], vec![2, 2]),
            (1, vec![2], vec![2]),
            (1, vec![2, 1], vec![3]),
        ] {
            let graph = classical_double_hurwitz(g, &p(&mu), &p(&nu)).unwrap();
            let scan = crate::oracle::classical_double_hurwitz(g, &p(&mu), &p(&nu), 8).unwrap();
            assert_eq!(graph, scan, "g={g} mu={mu:?} nu={nu:?}");
        }
    }

    #[test]
    fn edge_splits_realize_wall_forms() {
        // mu1 - nu1 = 1 at ((5,2),(4,3)): some tree must carry an edge whose
        // tail side holds exactly the largest in-end and the largest out-end
        let mu = p(&[5, 2]);
        let nu = p(&[4, 3]);
        let mut seen_first_first = false;
        for cover in enumerate_twisted_covers(0, &mu, &nu, true).unwrap() {
            let q = cover.quotient();
            for split in q.edge_splits(&mu, &nu).unwrap().into_iter().flatten() {
                if split == (vec![0], vec![0]) {
                    seen_first_first = true;
                }
            }
        }
        assert!(seen_first_first);
    }

    #[test]
    fn delta_adjacent_filter_selects_subsum() {
        // ((3,1),(2,2)): wall I={0}, J={0} means delta = mu1 - nu1 = 1
        let mu = p(&[3, 1]);
        let nu = p(&[2, 2]);
        let filtered = delta_adjacent_sum(&mu, &nu, &[0], &[0]).unwrap();
        let total = twisted_hurwitz(0, &mu, &nu).unwrap();
        assert!(filtered >= BigRational::zero());
        assert!(filtered <= total);
    }
}
