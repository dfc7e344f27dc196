//! Certificate searches and the classification pipeline.

use crate::poset::{is_connected, Poset};
use crate::reptype::certificate::{validate_certificate, Certificate, FlipMove, Verdict};
use crate::reptype::graph::{graph_class, Graph, GraphClass};
use std::collections::HashSet;

/// Longest witness needed anywhere is a 13-cycle plus one vertex.
pub const CYCLE_CAP: usize = 14;
/// Exhaustive subset search only below this size.
pub const EXHAUSTIVE_CAP: usize = 12;

/// All chordless cycles of a simple graph with length in 4..=cap, each as a
/// vertex list in cyclic order starting at its smallest vertex.
pub fn chordless_cycles(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in &g.edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    // paths rooted at s, all other vertices > s; a vertex adjacent to s may
    // only close the cycle, so extension requires non-adjacency to
    // everything but the path's last vertex
    fn extend(
        s: usize,
        path: &mut Vec<usize>,
        adj: &[Vec<bool>],
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for u in 0..adj.len() {
            if !adj[last][u] || u <= s || path.contains(&u) {
                continue;
            }
            let interior = path.get(1..path.len().saturating_sub(1)).unwrap_or(&[]);
            if interior.iter().any(|&v| adj[v][u]) {
                continue; // chord to an interior vertex
            }
            path.push(u);
            let l = path.len();
            if l == 2 {
                // first step: u ~ s trivially, closure not possible yet
                extend(s, path, adj, cap, out);
            } else if adj[u][s] {
                // any further step would carry the chord u - s
                if l >= 4 && path[1] < u {
                    out.push(path.clone());
                }
            } else if l < cap {
                extend(s, path, adj, cap, out);
            }
            path.pop();
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        extend(s, &mut path, &adj, cap, &mut out);
    }
    out
}

/// Is the induced subposet on `cycle` (cyclic order) exactly that cycle?
fn is_induced_cycle(p: &Poset, cycle: &[usize]) -> bool {
    let m = cycle.len();
    let sub = p.induced_subposet(cycle);
    sub.covers().len() == m
        && sub.covers().iter().all(|&(x, y)| {
            let d = (x + m - y) % m;
            d == 1 || d == m - 1
        })
}

/// Hasse edges between vertex `v` and the members of `set`.
fn edges_to(p: &Poset, v: usize, set: &HashSet<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = p
        .upper_covers(v)
        .into_iter()
        .chain(p.lower_covers(v))
        .filter(|u| set.contains(u))
        .collect();
    out.sort_unstable();
    out
}

/// The induced cycles of the Hasse diagram, length >= 4, up to the cap.
fn induced_poset_cycles(p: &Poset) -> Vec<Vec<usize>> {
    let g = Graph::from_hasse(p);
    let mut cycles = chordless_cycles(&g, CYCLE_CAP);
    cycles.retain(|c| is_induced_cycle(p, c));
    cycles
}

/// An element with at least 5 covers in either direction.
pub fn star_cert(p: &Poset) -> Option<Certificate> {
    for center in 0..p.len() {
        let up = p.upper_covers(center);
        if up.len() >= 5 {
            let cert = Certificate::Star5 { center, leaves: up, upward: true };
            if validate_certificate(p, &cert).is_ok() {
                return Some(cert);
            }
        }
        let down = p.lower_covers(center);
        if down.len() >= 5 {
            let cert = Certificate::Star5 { center, leaves: down, upward: false };
            if validate_certificate(p, &cert).is_ok() {
                return Some(cert);
            }
        }
    }
    None
}

/// Induced cycle plus one vertex omega attached by exactly two cover edges
/// whose feet flank a common cycle neighbor, forming a commutative square.
pub fn square_cycle_cert(p: &Poset) -> Option<Certificate> {
    let cycles = induced_poset_cycles(p);
    let mut candidates: Vec<Certificate> = Vec::new();
    for cycle in &cycles {
        if cycle.len() + 1 > CYCLE_CAP {
            continue;
        }
        let m = cycle.len();
        let inset: HashSet<usize> = cycle.iter().copied().collect();
        for omega in 0..p.len() {
            if inset.contains(&omega) {
                continue;
            }
            let feet = edges_to(p, omega, &inset);
            let [a, b] = feet[..] else { continue };
            // common cycle neighbor of the two feet
            let pos = |v: usize| cycle.iter().position(|&c| c == v).unwrap();
            let (pa, pb) = (pos(a), pos(b));
            let between = |x: usize, y: usize| {
                if (x + 2) % m == y {
                    Some(cycle[(x + 1) % m])
                } else {
                    None
                }
            };
            let Some(mid) = between(pa, pb).or_else(|| between(pb, pa)) else {
                continue;
            };
            let cert = Certificate::SquareCycle {
                cycle: cycle.clone(),
                omega,
                square: [omega, a, b, mid],
            };
            if validate_certificate(p, &cert).is_ok() {
                candidates.push(cert);
            }
        }
    }
    candidates.into_iter().min_by_key(|c| match c {
        Certificate::SquareCycle { cycle, omega, .. } => {
            let mut key = cycle.clone();
            key.sort_unstable();
            (*omega, std::cmp::Reverse(key))
        }
        _ => unreachable!(),
    })
}

/// Path-unique induced subposet with a wild underlying graph, searched by
/// (1) cycle-plus-pendant patterns, (2) greedy peeling of extremal
/// elements, (3) exhaustive subsets on small posets.
pub fn hereditary_wild_cert(p: &Poset) -> Option<Certificate> {
    // strategy 1: induced cycle plus pendant vertex. The witness obeys the
    // overall size cap, so cycles keep one slot free for the pendant.
    // Preference among valid candidates: belt-like cycles first (at least
    // four direction changes, so neither arc is close to a single chain),
    // longest first among those, then lexicographic for determinism.
    let cycles = induced_poset_cycles(p);
    let mut best: Option<((usize, usize, std::cmp::Reverse<Vec<usize>>), Certificate)> = None;
    for cycle in &cycles {
        if cycle.len() + 1 > CYCLE_CAP {
            continue;
        }
        let m = cycle.len();
        let sources = (0..m)
            .filter(|&i| {
                let v = cycle[i];
                p.is_cover(v, cycle[(i + m - 1) % m]) && p.is_cover(v, cycle[(i + 1) % m])
            })
            .count();
        let inset: HashSet<usize> = cycle.iter().copied().collect();
        for v in 0..p.len() {
            if inset.contains(&v) || edges_to(p, v, &inset).len() != 1 {
                continue;
            }
            let mut witness = cycle.clone();
            witness.push(v);
            let sub = p.induced_subposet(&witness);
            if sub.covers().len() != cycle.len() + 1 {
                continue; // attaching v created or destroyed covers
            }
            let cert = Certificate::HereditaryWild { witness: witness.clone() };
            if validate_certificate(p, &cert).is_ok() {
                let key = (sources.min(4), m, std::cmp::Reverse(witness));
                if best.as_ref().map_or(true, |(k, _)| key > *k) {
                    best = Some((key, cert));
                }
            }
        }
    }
    if let Some((_, cert)) = best {
        return Some(cert);
    }
    // strategy 2: peel extremal elements, preferring high Hasse degree
    let mut current: Vec<usize> = (0..p.len()).collect();
    while current.len() > 4 {
        let sub = p.induced_subposet(&current);
        let cert = Certificate::HereditaryWild { witness: current.clone() };
        if validate_certificate(p, &cert).is_ok() {
            return Some(cert);
        }
        let degs = sub.hasse_degrees().0;
        let extremal: Vec<usize> = sub
            .minimal_elements()
            .into_iter()
            .chain(sub.maximal_elements())
            .collect();
        let Some(&worst) = extremal.iter().max_by_key(|&&i| (degs[i], std::cmp::Reverse(i)))
        else {
            break;
        };
        current.remove(worst);
    }
    // strategy 3: exhaustive over subsets for small posets
    if p.len() <= EXHAUSTIVE_CAP {
        for mask in 0u32..(1 << p.len()) {
            if mask.count_ones() < 5 {
                continue;
            }
            let subset: Vec<usize> =
                (0..p.len()).filter(|&i| mask >> i & 1 == 1).collect();
            let cert = Certificate::HereditaryWild { witness: subset };
            if validate_certificate(p, &cert).is_ok() {
                return Some(cert);
            }
        }
    }
    None
}

/// Element covering both x and y (unique in a lattice when it exists).
fn common_upper_cover(p: &Poset, x: usize, y: usize) -> Option<usize> {
    (0..p.len()).find(|&c| p.is_cover(x, c) && p.is_cover(y, c))
}

/// Case split on the bottom element of a 4-regular lattice.
pub fn four_regular_cert(p: &Poset) -> Option<Certificate> {
    if p.hasse_degrees().1 != Some(4) || !p.is_lattice() {
        return None;
    }
    let a = p.minimal_elements()[0];
    let bs = p.upper_covers(a);
    debug_assert_eq!(bs.len(), 4);
    // case 1: some element covers exactly one of the b_i
    for c in 0..p.len() {
        if c == a || bs.contains(&c) {
            continue;
        }
        let lc = p.lower_covers(c);
        if bs.iter().filter(|b| lc.contains(b)).count() == 1 {
            let mut witness = vec![a];
            witness.extend(&bs);
            witness.push(c);
            let cert = Certificate::FourRegular { case: 1, witness };
            if validate_certificate(p, &cert).is_ok() {
                return Some(cert);
            }
        }
    }
    // case 2: pairwise common covers make a hexagon, plus one extra cover
    use itertools::Itertools;
    for perm in (0..4).permutations(4) {
        let b = |i: usize| bs[perm[i]];
        let cc = |x, y| common_upper_cover(p, x, y);
        let (Some(c12), Some(c23), Some(c13), Some(c14)) = (
            cc(b(0), b(1)),
            cc(b(1), b(2)),
            cc(b(0), b(2)),
            cc(b(0), b(3)),
        ) else {
            continue;
        };
        let witness = vec![b(0), b(1), b(2), c12, c23, c13, c14];
        let cert = Certificate::FourRegular { case: 2, witness };
        if validate_certificate(p, &cert).is_ok() {
            return Some(cert);
        }
    }
    None
}

/// Search flip sequences of depth <= 3 for a path-unique Dynkin tree.
pub fn finite_cert(p: &Poset) -> Option<Certificate> {
    let mut frontier: Vec<(Poset, Vec<FlipMove>)> = vec![(p.clone(), Vec::new())];
    for depth in 0..=3 {
        for (q, moves) in &frontier {
            if !q.is_path_unique() || !is_connected(q) {
                continue;
            }
            if let Ok(GraphClass::Dynkin(shape)) = graph_class(&Graph::from_hasse(q)) {
                let cert = if moves.is_empty() {
                    Certificate::FiniteHereditary { shape }
                } else {
                    Certificate::FiniteViaFlipFlop { moves: moves.clone(), shape }
                };
                debug_assert!(validate_certificate(p, &cert).is_ok());
                return Some(cert);
            }
        }
        if depth == 3 {
            break;
        }
        let mut next = Vec::new();
        for (q, moves) in &frontier {
            for (mv, result) in [
                (FlipMove::Flip, q.flip_flop()),
                (FlipMove::FlipDual, q.flip_flop_dual()),
            ] {
                if let Ok(r) = result {
                    let mut ms = moves.clone();
                    ms.push(mv);
                    next.push((r, ms));
                }
            }
        }
        frontier = next;
    }
    None
}

/// Isomorphism onto the 3-cube plus the affine middle 6-cycle.
pub fn tame_cube_cert(p: &Poset) -> Option<Certificate> {
    let cube = Poset::cube(3);
    let iso = p.isomorphism(&cube)?;
    let middle: Vec<usize> = (0..p.len())
        .filter(|&x| {
            let w = cube.label(iso[x]).chars().filter(|&c| c == '1').count();
            w == 1 || w == 2
        })
        .collect();
    let cert = Certificate::TameCube { iso, middle };
    validate_certificate(p, &cert).ok()?;
    Some(cert)
}

/// Wrap a wildness certificate of the target of a fiber-connected
/// surjection into one for the source.
pub fn contraction_cert(
    f: &crate::poset::PosetMorphism<'_>,
    target_cert: Certificate,
) -> Result<Certificate, String> {
    let cert = Certificate::Contraction {
        map: f.map.clone(),
        target: crate::reptype::certificate::PosetData::from_poset(f.target),
        inner: Box::new(target_cert),
    };
    validate_certificate(f.source, &cert)?;
    Ok(cert)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ReportInvariants {
    pub size: usize,
    pub degrees: Vec<usize>,
    pub regular: Option<usize>,
    pub lattice: bool,
    /// Coefficients low degree first, as decimal strings; omitted above 64
    /// elements.
    pub coxeter_polynomial: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub invariants: ReportInvariants,
}

impl ClassifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict.to_string(),
            "certificate": self.certificate.as_ref().map(|c| c.to_schema_json()),
            "invariants": self.invariants,
        })
    }
}

pub fn report_invariants(p: &Poset) -> ReportInvariants {
    let (degrees, regular) = p.hasse_degrees();
    let coxeter_polynomial = if p.len() <= 64 && p.len() > 0 {
        Some(
            crate::reptype::invariants::coxeter_polynomial(p)
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect(),
        )
    } else {
        None
    };
    ReportInvariants {
        size: p.len(),
        degrees,
        regular,
        lattice: p.is_lattice(),
        coxeter_polynomial,
    }
}

/// Certificate pipeline, cheapest first; Unknown is an honest outcome.
pub fn classify(p: &Poset) -> ClassifyReport {
    let searches: [fn(&Poset) -> Option<Certificate>; 6] = [
        finite_cert,
        tame_cube_cert,
        star_cert,
        square_cycle_cert,
        hereditary_wild_cert,
        four_regular_cert,
    ];
    for search in searches {
        if let Some(cert) = search(p) {
            debug_assert!(
                validate_certificate(p, &cert).is_ok(),
                "search returned an invalid certificate"
            );
            return ClassifyReport {
                verdict: cert.verdict(),
                certificate: Some(cert),
                invariants: report_invariants(p),
            };
        }
    }
    ClassifyReport {
        verdict: Verdict::Unknown,
        certificate: None,
        invariants: report_invariants(p),
    }
}
