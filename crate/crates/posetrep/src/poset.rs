//! Finite posets: cover relations, induced subposets, lattice checks,
//! order-ideal lattices, products, isomorphism and the flip-flop move.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("cover relation contains a cycle: {0:?}")]
    Cycle(Vec<usize>),
    #[error("cover pair ({0}, {1}) out of range")]
    CoverOutOfRange(usize, usize),
    #[error("labels/covers size mismatch")]
    Malformed(String),
    #[error("poset has no unique maximal element; maximal antichain {0:?}")]
    NoUniqueMax(Vec<usize>),
    #[error("poset has no unique minimal element; minimal antichain {0:?}")]
    NoUniqueMin(Vec<usize>),
    #[error("poset too large for ideal enumeration: {n} > {max}")]
    TooLarge { n: usize, max: usize },
    #[error("map is not order-preserving at ({0}, {1})")]
    NotOrderPreserving(usize, usize),
}

/// Finite poset on elements `0..n`. Covers are stored transitively reduced;
/// `leq` is the cached reflexive-transitive closure.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers)
    }
}

impl Poset {
    /// Build from an acyclic set of relation pairs. The input need not be
    /// reduced: the transitive reduction of its closure becomes the cover set.
    pub fn from_covers(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(PosetError::CoverOutOfRange(x, y));
            }
            if x == y {
                return Err(PosetError::Cycle(vec![x]));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in pairs {
            adj[x].push(y);
        }
        let topo = topological_order(n, &adj).map_err(PosetError::Cycle)?;
        // reflexive-transitive closure, processed in reverse topological order
        let mut leq = vec![vec![false; n]; n];
        for &v in topo.iter().rev() {
            leq[v][v] = true;
            let succ = adj[v].clone();
            for w in succ {
                let (row_w, row_v) = if v < w {
                    let (a, b) = leq.split_at_mut(w);
                    (&b[0], &mut a[v])
                } else {
                    let (a, b) = leq.split_at_mut(v);
                    (&a[w], &mut b[0])
                };
                for k in 0..n {
                    if row_w[k] {
                        row_v[k] = true;
                    }
                }
            }
        }
        Ok(Self::from_closure(labels, leq))
    }

    pub(crate) fn from_closure(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Self {
        let n = labels.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] {
                    let is_cover = !(0..n)
                        .any(|z| z != x && z != y && leq[x][z] && leq[z][y]);
                    if is_cover {
                        covers.push((x, y));
                    }
                }
            }
        }
        covers.sort_unstable();
        Poset { n, labels, covers, leq }
    }

    pub fn chain(k: usize) -> Self {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &pairs).unwrap()
    }

    pub fn antichain(k: usize) -> Self {
        let labels = (0..k).map(|i| i.to_string()).collect();
        Self::from_covers(labels, &[]).unwrap()
    }

    /// Boolean lattice of subsets of `{0..dim}`, labeled by bitstrings.
    pub fn cube(dim: usize) -> Self {
        assert!(dim <= 16);
        let n = 1usize << dim;
        let labels = (0..n)
            .map(|m| (0..dim).map(|b| if m >> b & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        let mut pairs = Vec::new();
        for m in 0..n {
            for b in 0..dim {
                if m >> b & 1 == 0 {
                    pairs.push((m, m | 1 << b));
                }
            }
        }
        Self::from_covers(labels, &pairs).unwrap()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.covers.binary_search(&(x, y)).is_ok()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(a, _)| a == x).map(|&(_, b)| b).collect()
    }

    pub fn lower_covers(&self, y: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(_, b)| b == y).map(|&(a, _)| a).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|z| !self.lt(z, x)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|z| !self.lt(x, z)))
            .collect()
    }

    /// A linear extension (topological order of the Hasse diagram).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for &(x, y) in &self.covers {
            adj[x].push(y);
        }
        topological_order(self.n, &adj).expect("poset closure is acyclic")
    }

    /// Induced subposet: the order is the restriction of this poset's order;
    /// covers are recomputed, not restricted.
    pub fn induced_subposet(&self, subset: &[usize]) -> Poset {
        let labels = subset.iter().map(|&x| self.labels[x].clone()).collect();
        let k = subset.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                leq[i][j] = self.leq[x][y];
            }
        }
        Poset::from_closure(labels, leq)
    }

    pub fn dual(&self) -> Poset {
        let mut leq = vec![vec![false; self.n]; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[x][y] = self.leq[y][x];
            }
        }
        Poset::from_closure(self.labels.clone(), leq)
    }

    /// True iff every pair has a unique join and a unique meet; the tables
    /// are returned on success.
    pub fn lattice_tables(&self) -> Option<LatticeTables> {
        let n = self.n;
        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                let uppers: Vec<usize> =
                    (0..n).filter(|&z| self.leq[x][z] && self.leq[y][z]).collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&z| uppers.iter().all(|&w| self.leq[z][w]))?;
                join[x][y] = lub;
                let lowers: Vec<usize> =
                    (0..n).filter(|&z| self.leq[z][x] && self.leq[z][y]).collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&z| lowers.iter().all(|&w| self.leq[w][z]))?;
                meet[x][y] = glb;
            }
        }
        Some(LatticeTables { join, meet })
    }

    pub fn is_lattice(&self) -> bool {
        self.n > 0 && self.lattice_tables().is_some()
    }

    /// Number of directed cover-paths from `x` to `y`.
    pub fn path_count(&self, x: usize, y: usize) -> BigUint {
        let mut counts: HashMap<usize, BigUint> = HashMap::new();
        counts.insert(x, BigUint::one());
        for &v in &self.linear_extension() {
            let Some(c) = counts.get(&v).cloned() else { continue };
            if c.is_zero() {
                continue;
            }
            for w in self.upper_covers(v) {
                *counts.entry(w).or_insert_with(BigUint::zero) += &c;
            }
        }
        counts.remove(&y).unwrap_or_else(BigUint::zero)
    }

    /// True iff every comparable pair is joined by exactly one cover-path,
    /// i.e. the incidence algebra is hereditary.
    pub fn is_path_unique(&self) -> bool {
        let order = self.linear_extension();
        for &x in &order {
            // DP over the topological order, counting paths from x
            let mut counts: HashMap<usize, BigUint> = HashMap::new();
            counts.insert(x, BigUint::one());
            for &v in &order {
                let Some(c) = counts.get(&v).cloned() else { continue };
                for w in self.upper_covers(v) {
                    *counts.entry(w).or_insert_with(BigUint::zero) += &c;
                }
            }
            for y in 0..self.n {
                if self.lt(x, y) && counts.get(&y) != Some(&BigUint::one()) {
                    return false;
                }
            }
        }
        true
    }

    /// Total degree (in + out) of each vertex in the Hasse diagram, plus the
    /// uniform degree when the diagram is regular.
    pub fn hasse_degrees(&self) -> (Vec<usize>, Option<usize>) {
        let mut deg = vec![0usize; self.n];
        for &(x, y) in &self.covers {
            deg[x] += 1;
            deg[y] += 1;
        }
        let uniform = match deg.first() {
            Some(&d) if deg.iter().all(|&e| e == d) => Some(d),
            _ => None,
        };
        (deg, uniform)
    }

    /// Derived-equivalence move: remove the unique maximal element and adjoin a new
    /// global minimum. The result is derived equivalent to the input.
    pub fn flip_flop(&self) -> Result<Poset, PosetError> {
        let maxs = self.maximal_elements();
        let [top] = maxs[..] else {
            return Err(PosetError::NoUniqueMax(maxs));
        };
        let rest: Vec<usize> = (0..self.n).filter(|&x| x != top).collect();
        let sub = self.induced_subposet(&rest);
        Ok(sub.with_new_bottom("0hat"))
    }

    /// Dual move: remove the unique minimal element and adjoin a new global
    /// maximum.
    pub fn flip_flop_dual(&self) -> Result<Poset, PosetError> {
        let mins = self.minimal_elements();
        let [bottom] = mins[..] else {
            return Err(PosetError::NoUniqueMin(mins));
        };
        let rest: Vec<usize> = (0..self.n).filter(|&x| x != bottom).collect();
        let sub = self.induced_subposet(&rest);
        Ok(sub.with_new_top("1hat"))
    }

    fn with_new_bottom(&self, label: &str) -> Poset {
        let n = self.n;
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut leq = vec![vec![false; n + 1]; n + 1];
        for x in 0..n {
            for y in 0..n {
                leq[x][y] = self.leq[x][y];
            }
        }
        for y in 0..=n {
            leq[n][y] = true;
        }
        Poset::from_closure(labels, leq)
    }

    fn with_new_top(&self, label: &str) -> Poset {
        let n = self.n;
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut leq = vec![vec![false; n + 1]; n + 1];
        for x in 0..n {
            for y in 0..n {
                leq[x][y] = self.leq[x][y];
            }
        }
        for x in 0..=n {
            leq[x][n] = true;
        }
        Poset::from_closure(labels, leq)
    }

    pub fn add_bottom(&self) -> Poset {
        self.with_new_bottom("bot")
    }

    pub fn add_top(&self) -> Poset {
        self.with_new_top("top")
    }

    /// Cartesian product with componentwise order; labels are pairs.
    pub fn product(&self, other: &Poset) -> Poset {
        let qn = other.n;
        let idx = |i: usize, j: usize| i * qn + j;
        let mut labels = Vec::with_capacity(self.n * qn);
        for i in 0..self.n {
            for j in 0..qn {
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
            }
        }
        let mut pairs = Vec::new();
        for &(x, y) in &self.covers {
            for j in 0..qn {
                pairs.push((idx(x, j), idx(y, j)));
            }
        }
        for &(x, y) in &other.covers {
            for i in 0..self.n {
                pairs.push((idx(i, x), idx(i, y)));
            }
        }
        Poset::from_covers(labels, &pairs).unwrap()
    }

    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut pairs = self.covers.clone();
        pairs.extend(other.covers.iter().map(|&(x, y)| (x + self.n, y + self.n)));
        Poset::from_covers(labels, &pairs).unwrap()
    }

    /// Lattice of order ideals (down-closed subsets), ordered by inclusion.
    /// Elements are labeled by the antichain of maximal elements of the
    /// ideal, `L(...)` over the base labels.
    pub fn order_ideals_lattice(&self) -> Result<OrderIdealLattice, PosetError> {
        const MAX: usize = 25;
        if self.n > MAX {
            return Err(PosetError::TooLarge { n: self.n, max: MAX });
        }
        let mut ideals: Vec<u32> = vec![0];
        let mut index: HashMap<u32, usize> = HashMap::from([(0, 0)]);
        let mut cover_pairs: Vec<(usize, usize)> = Vec::new();
        let mut head = 0;
        while head < ideals.len() {
            let ideal = ideals[head];
            for x in 0..self.n {
                if ideal >> x & 1 == 1 {
                    continue;
                }
                let addable = (0..self.n)
                    .all(|z| !self.lt(z, x) || ideal >> z & 1 == 1);
                if !addable {
                    continue;
                }
                let next = ideal | 1 << x;
                let to = *index.entry(next).or_insert_with(|| {
                    ideals.push(next);
                    ideals.len() - 1
                });
                cover_pairs.push((head, to));
            }
            head += 1;
        }
        let mut antichains = Vec::with_capacity(ideals.len());
        let mut labels = Vec::with_capacity(ideals.len());
        for &ideal in &ideals {
            let members: Vec<usize> = (0..self.n).filter(|&x| ideal >> x & 1 == 1).collect();
            let maxes: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&x| members.iter().all(|&y| !self.lt(x, y)))
                .collect();
            let mut label = String::from("L(");
            for (k, &x) in maxes.iter().enumerate() {
                if k > 0 {
                    label.push(',');
                }
                label.push_str(&self.labels[x]);
            }
            label.push(')');
            labels.push(label);
            antichains.push(maxes);
        }
        let poset = Poset::from_covers(labels, &cover_pairs)?;
        Ok(OrderIdealLattice { poset, ideals, antichains })
    }

    /// Order-isomorphism search by invariant refinement plus backtracking.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.n != other.n || self.covers.len() != other.covers.len() {
            return None;
        }
        let ca = refine_colors(self);
        let cb = refine_colors(other);
        let mut sa = ca.clone();
        let mut sb = cb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        // map smallest color classes first
        let mut order: Vec<usize> = (0..self.n).collect();
        let class_size = |c: u64, colors: &[u64]| colors.iter().filter(|&&x| x == c).count();
        order.sort_by_key(|&x| (class_size(ca[x], &ca), ca[x]));
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if backtrack(self, other, &ca, &cb, &order, 0, &mut mapping, &mut used) {
            Some(mapping)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PosetJson {
            labels: self.labels.clone(),
            covers: self.covers.clone(),
        })
        .expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Poset, PosetError> {
        let raw: PosetJson = serde_json::from_str(text)
            .map_err(|e| PosetError::Malformed(e.to_string()))?;
        Poset::from_covers(raw.labels, &raw.covers)
    }

    /// DOT rendering of the Hasse diagram, one edge per cover, directed
    /// upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", i, l.replace('"', "\\\""));
        }
        for &(x, y) in &self.covers {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        out.push_str("}\n");
        out
    }
}

/// Meet and join tables of a lattice, indexed by element pairs.
pub struct LatticeTables {
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

/// The lattice of order ideals of a base poset, with the generating
/// antichain of each ideal.
pub struct OrderIdealLattice {
    pub poset: Poset,
    /// Bitmask over base-poset elements, per lattice element.
    pub ideals: Vec<u32>,
    /// Antichain of maximal elements of each ideal (base-poset indices).
    pub antichains: Vec<Vec<usize>>,
}

impl OrderIdealLattice {
    /// Lattice element whose generating antichain is exactly `antichain`
    /// (as a set of base-poset indices).
    pub fn element_of_antichain(&self, antichain: &[usize]) -> Option<usize> {
        let mut key: Vec<usize> = antichain.to_vec();
        key.sort_unstable();
        self.antichains.iter().position(|a| {
            let mut b = a.clone();
            b.sort_unstable();
            b == key
        })
    }
}

/// Order-preserving map between posets.
pub struct PosetMorphism<'a> {
    pub source: &'a Poset,
    pub target: &'a Poset,
    pub map: Vec<usize>,
}

impl<'a> PosetMorphism<'a> {
    pub fn new(
        source: &'a Poset,
        target: &'a Poset,
        map: Vec<usize>,
    ) -> Result<Self, PosetError> {
        assert_eq!(map.len(), source.len());
        for x in 0..source.len() {
            for y in 0..source.len() {
                if source.leq(x, y) && !target.leq(map[x], map[y]) {
                    return Err(PosetError::NotOrderPreserving(x, y));
                }
            }
        }
        Ok(PosetMorphism { source, target, map })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| self.map[x] == y).collect()
    }

    /// True iff every fiber induces a connected subposet (connected Hasse
    /// diagram of the induced subposet).
    pub fn fibers_connected(&self) -> bool {
        (0..self.target.len()).all(|y| {
            let fiber = self.fiber(y);
            !fiber.is_empty() && is_connected(&self.source.induced_subposet(&fiber))
        })
    }
}

/// Connectivity of the underlying undirected Hasse graph.
pub fn is_connected(p: &Poset) -> bool {
    if p.len() == 0 {
        return false;
    }
    let mut seen = vec![false; p.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(x, y) in p.covers() {
            let w = if x == v { y } else if y == v { x } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn topological_order(n: usize, adj: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for targets in adj {
        for &w in targets {
            indeg[w] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop() {
        order.push(v);
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // extract one directed cycle for the report: every leftover vertex has
    // an unprocessed predecessor, so walking predecessors must repeat
    let leftover: Vec<usize> = (0..n).filter(|&v| indeg[v] > 0).collect();
    let start = leftover[0];
    let mut path = vec![start];
    let mut seen_at = HashMap::from([(start, 0usize)]);
    let mut v = start;
    loop {
        let pred = leftover
            .iter()
            .copied()
            .find(|&u| adj[u].contains(&v))
            .expect("leftover vertex has an unprocessed predecessor");
        if let Some(&at) = seen_at.get(&pred) {
            let mut cycle = path[at..].to_vec();
            cycle.reverse();
            return Err(cycle);
        }
        seen_at.insert(pred, path.len());
        path.push(pred);
        v = pred;
    }
}

/// Iterated neighborhood refinement; stable vertex invariants for
/// isomorphism pruning.
fn refine_colors(p: &Poset) -> Vec<u64> {
    let n = p.len();
    let below: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&z| p.lt(z, x)).count())
        .collect();
    let above: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&z| p.lt(x, z)).count())
        .collect();
    let mut colors: Vec<u64> = (0..n)
        .map(|x| {
            hash_tuple(&[
                p.upper_covers(x).len() as u64,
                p.lower_covers(x).len() as u64,
                below[x] as u64,
                above[x] as u64,
            ])
        })
        .collect();
    for _ in 0..3 {
        let next: Vec<u64> = (0..n)
            .map(|x| {
                let mut up: Vec<u64> = p.upper_covers(x).iter().map(|&y| colors[y]).collect();
                let mut down: Vec<u64> = p.lower_covers(x).iter().map(|&y| colors[y]).collect();
                up.sort_unstable();
                down.sort_unstable();
                let mut data = vec![colors[x], 0xD1u64];
                data.extend(up);
                data.push(0xD2);
                data.extend(down);
                hash_tuple(&data)
            })
            .collect();
        colors = next;
    }
    colors
}

fn hash_tuple(data: &[u64]) -> u64 {
    // FNV-1a over the words; deterministic across runs
    let mut h: u64 = 0xcbf29ce484222325;
    for &w in data {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    p: &Poset,
    q: &Poset,
    cp: &[u64],
    cq: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..q.len() {
        if used[y] || cq[y] != cp[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x2| {
            let y2 = mapping[x2];
            p.leq(x, x2) == q.leq(y, y2) && p.leq(x2, x) == q.leq(y2, y)
        });
        if !consistent {
            continue;
        }
        mapping[x] = y;
        used[y] = true;
        if backtrack(p, q, cp, cq, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[x] = usize::MAX;
        used[y] = false;
    }
    false
}
