//! Twisted monodromy graphs: leveled directed weighted graphs carrying an
//! involution on edges and vertices.
//!
//! Vertices sit over ordered branch-point slots `1..=b`. Edges point left to
//! right; an edge with no source is an inward end, one with no target an
//! outward end. The involution is fixed-point-free on edges and fixes
//! exactly the 4-valent vertices. Isomorphisms (and automorphisms) preserve
//! levels, weights, end directions and commute with the involution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use serde_json::{json, Value};

use crate::partition::Partition;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverVertex {
    /// Branch-point slot, `1..=b`.
    pub level: usize,
    /// Involution partner; the vertex itself exactly for 4-valent vertices.
    pub partner: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEdge {
    /// `None` marks an inward end.
    pub src: Option<VertexId>,
    /// `None` marks an outward end.
    pub dst: Option<VertexId>,
    pub weight: u64,
    /// Involution partner, always a distinct edge.
    pub partner: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCover {
    pub branch_points: usize,
    pub vertices: Vec<CoverVertex>,
    pub edges: Vec<CoverEdge>,
}

/// A cover together with its counted weight.
#[derive(Clone, Debug)]
pub struct GraphContribution {
    pub cover: TwistedCover,
    pub aut_order: u64,
    pub multiplicity: BigRational,
}

type GroupKey = (Option<VertexId>, Option<VertexId>, u64);

/// Index sets of inward and outward ends on one side of an edge.
pub type EndSplit = (Vec<usize>, Vec<usize>);

impl TwistedCover {
    pub fn is_four_valent(&self, v: VertexId) -> bool {
        self.vertices[v].partner == v
    }

    pub fn four_valent_vertices(&self) -> Vec<VertexId> {
        (0..self.vertices.len())
            .filter(|&v| self.is_four_valent(v))
            .collect()
    }

    pub fn in_end_weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self
            .edges
            .iter()
            .filter(|e| e.src.is_none())
            .map(|e| e.weight)
            .collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    pub fn out_end_weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self
            .edges
            .iter()
            .filter(|e| e.dst.is_none())
            .map(|e| e.weight)
            .collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    /// First Betti number, counting the leaf at the far end of every end edge.
    pub fn genus(&self) -> i64 {
        let leaves = self
            .edges
            .iter()
            .map(|e| e.src.is_none() as i64 + e.dst.is_none() as i64)
            .sum::<i64>();
        self.edges.len() as i64 - (self.vertices.len() as i64 + leaves) + 1
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return self.edges.len() <= 1;
        }
        // a both-ways-infinite edge touches no vertex and floats free
        if self.edges.iter().any(|e| e.src.is_none() && e.dst.is_none()) {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                if e.src == Some(v) {
                    if let Some(w) = e.dst {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                if e.dst == Some(v) {
                    if let Some(w) = e.src {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    #[allow(clippy::type_complexity)]
    fn incident(&self, v: VertexId) -> (Vec<EdgeId>, Vec<EdgeId>) {
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.dst == Some(v) {
                ins.push(i);
            }
            if e.src == Some(v) {
                outs.push(i);
            }
        }
        (ins, outs)
    }

    /// Checks every structural invariant against the expected type.
    pub fn validate(&self, genus: u64, mu: &Partition, nu: &Partition) -> Result<(), String> {
        let b = self.branch_points;
        // involution on vertices, level structure
        let mut per_level: Vec<Vec<VertexId>> = vec![Vec::new(); b + 1];
        for (v, data) in self.vertices.iter().enumerate() {
            if data.level == 0 || data.level > b {
                return Err(format!("vertex {v} has level {} out of 1..={b}", data.level));
            }
            if self.vertices[data.partner].partner != v {
                return Err(format!("vertex involution not an involution at {v}"));
            }
            if self.vertices[data.partner].level != data.level {
                return Err(format!("vertex involution moves {v} across levels"));
            }
            per_level[data.level].push(v);
        }
        for (level, at_level) in per_level.iter().enumerate().skip(1) {
            match at_level.as_slice() {
                [w] => {
                    if !self.is_four_valent(*w) {
                        return Err(format!("lone vertex at level {level} is not 4-valent"));
                    }
                }
                [v, w] => {
                    if self.vertices[*v].partner != *w {
                        return Err(format!("two vertices at level {level} are not twins"));
                    }
                }
                other => {
                    return Err(format!(
                        "level {level} holds {} vertices, expected 1 or 2",
                        other.len()
                    ));
                }
            }
        }
        // involution on edges
        for (i, e) in self.edges.iter().enumerate() {
            let p = e.partner;
            if p == i {
                return Err(format!("edge involution fixes edge {i}"));
            }
            let pe = &self.edges[p];
            if pe.partner != i {
                return Err(format!("edge involution not an involution at {i}"));
            }
            if pe.weight != e.weight {
                return Err(format!("edge involution changes weight at {i}"));
            }
            let map_v = |v: Option<VertexId>| v.map(|x| self.vertices[x].partner);
            if pe.src != map_v(e.src) || pe.dst != map_v(e.dst) {
                return Err(format!("edge involution incompatible with endpoints at {i}"));
            }
            if e.weight == 0 {
                return Err(format!("edge {i} has zero weight"));
            }
            if let (Some(s), Some(d)) = (e.src, e.dst) {
                if self.vertices[s].level >= self.vertices[d].level {
                    return Err(format!("edge {i} does not point to a later level"));
                }
            }
        }
        // valences, balancing, equal weights at 4-valent vertices
        for v in 0..self.vertices.len() {
            let (ins, outs) = self.incident(v);
            if ins.is_empty() || outs.is_empty() {
                return Err(format!("vertex {v} is a sink or source"));
            }
            let win: u64 = ins.iter().map(|&e| self.edges[e].weight).sum();
            let wout: u64 = outs.iter().map(|&e| self.edges[e].weight).sum();
            if win != wout {
                return Err(format!("balancing fails at vertex {v}: {win} vs {wout}"));
            }
            if self.is_four_valent(v) {
                if ins.len() != 2 || outs.len() != 2 {
                    return Err(format!("4-valent vertex {v} lacks 2 in / 2 out"));
                }
                let w0 = self.edges[ins[0]].weight;
                if ins
                    .iter()
                    .chain(outs.iter())
                    .any(|&e| self.edges[e].weight != w0)
                {
                    return Err(format!("edges at 4-valent vertex {v} have mixed weights"));
                }
            } else if ins.len() + outs.len() != 3 {
                return Err(format!("3-valent vertex {v} has wrong valence"));
            }
        }
        // end profiles
        if self.in_end_weights() != mu.doubled().parts() {
            return Err("inward ends do not realize the doubled source profile".into());
        }
        if self.out_end_weights() != nu.doubled().parts() {
            return Err("outward ends do not realize the doubled target profile".into());
        }
        if !self.is_connected() {
            return Err("cover is not connected".into());
        }
        if self.genus() != genus as i64 {
            return Err(format!("genus is {}, expected {genus}", self.genus()));
        }
        Ok(())
    }

    /// Edges grouped by (source, target, weight).
    fn edge_groups(&self) -> BTreeMap<GroupKey, Vec<EdgeId>> {
        let mut groups: BTreeMap<GroupKey, Vec<EdgeId>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            groups.entry((e.src, e.dst, e.weight)).or_default().push(i);
        }
        groups
    }

    fn vertices_by_level(&self) -> Vec<Vec<VertexId>> {
        let mut per_level: Vec<Vec<VertexId>> = vec![Vec::new(); self.branch_points + 1];
        for (v, data) in self.vertices.iter().enumerate() {
            per_level[data.level].push(v);
        }
        per_level
    }

    /// All level-preserving, involution-commuting vertex bijections onto
    /// `other` under which every edge group corresponds. Graphs this small
    /// allow brute force over the at most `2^b` candidates.
    fn vertex_maps(&self, other: &TwistedCover) -> Vec<Vec<VertexId>> {
        if self.branch_points != other.branch_points
            || self.vertices.len() != other.vertices.len()
            || self.edges.len() != other.edges.len()
        {
            return Vec::new();
        }
        let mine = self.vertices_by_level();
        let theirs = other.vertices_by_level();
        for level in 1..=self.branch_points {
            if mine[level].len() != theirs[level].len() {
                return Vec::new();
            }
        }
        let other_groups = other.edge_groups();
        let mut maps = Vec::new();
        let mut current = vec![usize::MAX; self.vertices.len()];
        self.extend_map(other, &mine, &theirs, 1, &mut current, &other_groups, &mut maps);
        maps
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_map(
        &self,
        other: &TwistedCover,
        mine: &[Vec<VertexId>],
        theirs: &[Vec<VertexId>],
        level: usize,
        current: &mut Vec<VertexId>,
        other_groups: &BTreeMap<GroupKey, Vec<EdgeId>>,
        maps: &mut Vec<Vec<VertexId>>,
    ) {
        if level > self.branch_points {
            // full check of edge-group correspondence
            for (key, group) in self.edge_groups() {
                let mapped = (
                    key.0.map(|v| current[v]),
                    key.1.map(|v| current[v]),
                    key.2,
                );
                match other_groups.get(&mapped) {
                    Some(target) if target.len() == group.len() => {}
                    _ => return,
                }
            }
            maps.push(current.clone());
            return;
        }
        match (mine[level].as_slice(), theirs[level].as_slice()) {
            ([w], [x]) => {
                if self.is_four_valent(*w) == other.is_four_valent(*x) {
                    current[*w] = *x;
                    self.extend_map(other, mine, theirs, level + 1, current, other_groups, maps);
                    current[*w] = usize::MAX;
                }
            }
            ([v, w], [x, y]) => {
                for (a, b) in [(*x, *y), (*y, *x)] {
                    current[*v] = a;
                    current[*w] = b;
                    self.extend_map(other, mine, theirs, level + 1, current, other_groups, maps);
                    current[*v] = usize::MAX;
                    current[*w] = usize::MAX;
                }
            }
            _ => {}
        }
    }

    /// Multiplier counting the involution-commuting edge bijections available
    /// once a vertex bijection is fixed. Independent of which bijection.
    fn edge_choice_factor(&self) -> u64 {
        let groups = self.edge_groups();
        let mut factor = 1u64;
        for (key, group) in &groups {
            let mapped = (
                key.0.map(|v| self.vertices[v].partner),
                key.1.map(|v| self.vertices[v].partner),
                key.2,
            );
            if mapped == *key {
                // group is stable under the involution: edges pair up inside
                debug_assert!(group.len() % 2 == 0);
                let pairs = (group.len() / 2) as u64;
                factor *= (1..=pairs).product::<u64>().max(1) * (1u64 << pairs);
            } else if mapped > *key {
                // count each orbit of paired groups once
                factor *= (1..=group.len() as u64).product::<u64>().max(1);
            }
        }
        factor
    }

    /// Order of the automorphism group: level-preserving self-maps commuting
    /// with the involution and preserving weights and end directions.
    pub fn automorphism_order(&self) -> u64 {
        let maps = self.vertex_maps(self);
        maps.len() as u64 * self.edge_choice_factor()
    }

    pub fn is_isomorphic(&self, other: &TwistedCover) -> bool {
        !self.vertex_maps(other).is_empty()
    }

    /// Coarse invariant for bucketing candidates before isomorphism testing.
    pub fn invariant_key(&self) -> Vec<(usize, usize, u64, u8)> {
        let mut key: Vec<(usize, usize, u64, u8)> = self
            .edges
            .iter()
            .map(|e| {
                let sl = e.src.map(|v| self.vertices[v].level).unwrap_or(0);
                let dl = e
                    .dst
                    .map(|v| self.vertices[v].level)
                    .unwrap_or(self.branch_points + 1);
                let s4 = e.src.map(|v| self.is_four_valent(v)).unwrap_or(false) as u8
                    + 2 * (e.dst.map(|v| self.is_four_valent(v)).unwrap_or(false) as u8);
                (sl, dl, e.weight, s4)
            })
            .collect();
        key.sort_unstable();
        key
    }

    /// `2^b * prod_V (w_V - 1) * prod_e w(e) / |Aut|`, the products over
    /// 4-valent vertices and involution-orbits of internal edges.
    pub fn multiplicity(&self) -> BigRational {
        let mut numer = BigInt::one() << self.branch_points;
        for v in self.four_valent_vertices() {
            let w = self
                .edges
                .iter()
                .find(|e| e.src == Some(v) || e.dst == Some(v))
                .map(|e| e.weight)
                .unwrap_or(1);
            numer *= BigInt::from(w - 1);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i < e.partner && e.src.is_some() && e.dst.is_some() {
                numer *= BigInt::from(e.weight);
            }
        }
        BigRational::new(numer, BigInt::from(self.automorphism_order()))
    }

    pub fn contribution(&self) -> GraphContribution {
        GraphContribution {
            cover: self.clone(),
            aut_order: self.automorphism_order(),
            multiplicity: self.multiplicity(),
        }
    }

    /// Graph of involution orbits; 4-valent vertices become 2-valent.
    pub fn quotient(&self) -> QuotientGraph {
        let mut vertex_orbit = vec![usize::MAX; self.vertices.len()];
        let mut q_vertices = Vec::new();
        for (v, data) in self.vertices.iter().enumerate() {
            if v <= data.partner {
                vertex_orbit[v] = q_vertices.len();
                vertex_orbit[data.partner] = q_vertices.len();
                q_vertices.push(QuotientVertex {
                    level: data.level,
                    valence: if data.partner == v { 2 } else { 3 },
                });
            }
        }
        let mut q_edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if i < e.partner {
                q_edges.push(QuotientEdge {
                    src: e.src.map(|v| vertex_orbit[v]),
                    dst: e.dst.map(|v| vertex_orbit[v]),
                    weight: e.weight,
                });
            }
        }
        QuotientGraph {
            vertices: q_vertices,
            edges: q_edges,
        }
    }

    /// JSON form mirroring the graph structure field by field.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, data)| {
                json!({
                    "level": data.level,
                    "valence": if self.is_four_valent(v) { 4 } else { 3 },
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!({ "src": e.src, "dst": e.dst, "weight": e.weight }))
            .collect();
        let involution_edges: Vec<Value> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| *i < e.partner)
            .map(|(i, e)| json!([i, e.partner]))
            .collect();
        let involution_vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(v, data)| *v < data.partner)
            .map(|(v, data)| json!([v, data.partner]))
            .collect();
        json!({
            "b": self.branch_points,
            "ends_in": self.in_end_weights(),
            "ends_out": self.out_end_weights(),
            "vertices": vertices,
            "edges": edges,
            "involution_edges": involution_edges,
            "involution_vertices": involution_vertices,
        })
    }

    /// Graphviz rendering; 4-valent vertices are drawn doubled, weights label
    /// the edges.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        s.push_str(&format!("digraph {name} {{\n  rankdir=LR;\n"));
        for (v, data) in self.vertices.iter().enumerate() {
            let peripheries = if self.is_four_valent(v) { 2 } else { 1 };
            s.push_str(&format!(
                "  v{v} [label=\"p{}\" shape=circle peripheries={peripheries}];\n",
                data.level
            ));
        }
        let mut leaf = 0usize;
        for (i, e) in self.edges.iter().enumerate() {
            let src = match e.src {
                Some(v) => format!("v{v}"),
                None => {
                    leaf += 1;
                    let id = format!("in{leaf}");
                    s.push_str(&format!("  {id} [shape=point];\n"));
                    id
                }
            };
            let dst = match e.dst {
                Some(v) => format!("v{v}"),
                None => {
                    leaf += 1;
                    let id = format!("out{leaf}");
                    s.push_str(&format!("  {id} [shape=point];\n"));
                    id
                }
            };
            s.push_str(&format!(
                "  {src} -> {dst} [label=\"{}\" tooltip=\"e{i}\"];\n",
                e.weight
            ));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientVertex {
    pub level: usize,
    pub valence: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientEdge {
    pub src: Option<usize>,
    pub dst: Option<usize>,
    pub weight: u64,
}

/// Quotient of a twisted cover by its involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub vertices: Vec<QuotientVertex>,
    pub edges: Vec<QuotientEdge>,
}

impl QuotientGraph {
    pub fn genus(&self) -> i64 {
        let leaves = self
            .edges
            .iter()
            .map(|e| e.src.is_none() as i64 + e.dst.is_none() as i64)
            .sum::<i64>();
        self.edges.len() as i64 - (self.vertices.len() as i64 + leaves) + 1
    }

    pub fn two_valent_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].valence == 2)
            .collect()
    }

    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].src.is_some() && self.edges[e].dst.is_some())
            .collect()
    }

    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].src == Some(v) || self.edges[e].dst == Some(v))
            .collect()
    }

    /// For each internal edge of a genus-0 quotient, the index sets
    /// `(I, J)` of inward/outward ends on its tail side, so that
    /// `w(e) = sum_I mu_i - sum_J nu_j`. Ends of equal weight are matched to
    /// profile indices in a fixed deterministic order.
    pub fn edge_splits(
        &self,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<Vec<Option<EndSplit>>, crate::error::Error> {
        if self.genus() != 0 {
            return Err(crate::error::Error::QuotientNotTree);
        }
        // deterministic matching of end edges to profile indices
        let mut in_edges: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e].src.is_none())
            .collect();
        in_edges.sort_by_key(|&e| (std::cmp::Reverse(self.edges[e].weight), e));
        let mut out_edges: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e].dst.is_none())
            .collect();
        out_edges.sort_by_key(|&e| (std::cmp::Reverse(self.edges[e].weight), e));
        debug_assert_eq!(in_edges.len(), mu.len());
        debug_assert_eq!(out_edges.len(), nu.len());
        let mut mu_index = vec![usize::MAX; self.edges.len()];
        for (rank, &e) in in_edges.iter().enumerate() {
            debug_assert_eq!(self.edges[e].weight, mu.parts()[rank]);
            mu_index[e] = rank;
        }
        let mut nu_index = vec![usize::MAX; self.edges.len()];
        for (rank, &e) in out_edges.iter().enumerate() {
            debug_assert_eq!(self.edges[e].weight, nu.parts()[rank]);
            nu_index[e] = rank;
        }

        let mut out = Vec::with_capacity(self.edges.len());
        for e in 0..self.edges.len() {
            let (src, dst) = (self.edges[e].src, self.edges[e].dst);
            let (Some(sv), Some(_)) = (src, dst) else {
                out.push(None);
                continue;
            };
            // component of the tail after removing e
            let mut seen_v = vec![false; self.vertices.len()];
            let mut stack = vec![sv];
            seen_v[sv] = true;
            while let Some(v) = stack.pop() {
                for (f, fe) in self.edges.iter().enumerate() {
                    if f == e {
                        continue;
                    }
                    for next in [fe.src, fe.dst].into_iter().flatten() {
                        if (fe.src == Some(v) || fe.dst == Some(v)) && !seen_v[next] {
                            seen_v[next] = true;
                            stack.push(next);
                        }
                    }
                }
            }
            let mut i_set = Vec::new();
            let mut j_set = Vec::new();
            let mut balance: i128 = 0;
            for (f, fe) in self.edges.iter().enumerate() {
                if fe.src.is_none() {
                    if let Some(d) = fe.dst {
                        if seen_v[d] {
                            i_set.push(mu_index[f]);
                            balance += fe.weight as i128;
                        }
                    }
                }
                if fe.dst.is_none() {
                    if let Some(sfv) = fe.src {
                        if seen_v[sfv] {
                            j_set.push(nu_index[f]);
                            balance -= fe.weight as i128;
                        }
                    }
                }
            }
            debug_assert_eq!(balance, self.edges[e].weight as i128);
            i_set.sort_unstable();
            j_set.sort_unstable();
            out.push(Some((i_set, j_set)));
        }
        Ok(out)
    }
}
