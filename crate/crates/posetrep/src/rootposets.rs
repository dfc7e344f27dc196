//! Positive-root posets of crystallographic types and their order-ideal
//! lattices, plus the beta-pattern certificate used to exhibit wild
//! subquivers in rank 3.

use crate::poset::{OrderIdealLattice, Poset, PosetError};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootPosetError {
    #[error("cannot parse crystallographic type {0:?}")]
    Parse(String),
    #[error("unsupported crystallographic type {0} (want A/B/C factors of rank <= 4)")]
    Unsupported(String),
    #[error("fixture malformed: {0}")]
    Fixture(String),
    #[error("label {0:?} not present in the ideal lattice")]
    MissingLabel(String),
    #[error("need exactly 3 simple roots, found {0}")]
    NotRank3(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Irreducible crystallographic factors with explicit root data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSystemType {
    A(usize),
    B(usize),
    C(usize),
}

impl RootSystemType {
    fn rank(&self) -> usize {
        match self {
            RootSystemType::A(n) | RootSystemType::B(n) | RootSystemType::C(n) => *n,
        }
    }

    /// Integer Cartan matrix, rows indexed by coroots.
    fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        match self {
            RootSystemType::B(n) if *n >= 2 => a[*n - 1][*n - 2] = -2,
            RootSystemType::C(n) if *n >= 2 => a[*n - 2][*n - 1] = -2,
            _ => {}
        }
        a
    }
}

impl std::fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootSystemType::A(n) => write!(f, "A{n}"),
            RootSystemType::B(n) => write!(f, "B{n}"),
            RootSystemType::C(n) => write!(f, "C{n}"),
        }
    }
}

/// Parse `A3`, `B3`, `C3`, or `x`-separated products like `A1xA1xA1`.
pub fn parse_crystallographic(text: &str) -> Result<Vec<RootSystemType>, RootPosetError> {
    let mut factors = Vec::new();
    for part in text.split('x') {
        let part = part.trim();
        let (head, rest) = part.split_at(1.min(part.len()));
        let n: usize = rest.parse().map_err(|_| RootPosetError::Parse(text.into()))?;
        let factor = match head {
            "A" => RootSystemType::A(n),
            "B" => RootSystemType::B(n),
            "C" => RootSystemType::C(n),
            _ => return Err(RootPosetError::Unsupported(part.into())),
        };
        if n == 0 || n > 4 || (head != "A" && n < 2) {
            return Err(RootPosetError::Unsupported(part.into()));
        }
        factors.push(factor);
    }
    if factors.is_empty() {
        return Err(RootPosetError::Parse(text.into()));
    }
    Ok(factors)
}

/// The poset of positive roots: α ≤ β iff β − α is a nonnegative integer
/// combination of simple roots.
pub struct RootPoset {
    pub poset: Poset,
    /// Indices of the simple roots in `poset`.
    pub simples: Vec<usize>,
    /// Coordinates in the simple-root basis, when built from a type
    /// (fixtures have no coordinates).
    pub roots: Option<Vec<Vec<i64>>>,
}

fn root_label(coords: &[i64]) -> String {
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("a{}", i + 1)
            } else {
                format!("{c}a{}", i + 1)
            }
        })
        .collect();
    terms.join("+")
}

/// Positive roots of one irreducible factor, as coordinate vectors in the
/// simple-root basis, found by reflection closure of the simple roots.
fn positive_roots(t: &RootSystemType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let cartan = t.cartan();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        })
        .collect();
    for v in &stack {
        all.insert(v.clone());
    }
    while let Some(beta) = stack.pop() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if all.insert(image.clone()) {
                stack.push(image);
            }
        }
    }
    let mut positives: Vec<Vec<i64>> = all
        .into_iter()
        .filter(|v| v.iter().all(|&c| c >= 0))
        .collect();
    positives.sort_unstable_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    positives
}

/// Root poset of a product of crystallographic factors (disjoint union of
/// the factor root posets).
pub fn root_poset(factors: &[RootSystemType]) -> Result<RootPoset, RootPosetError> {
    let total_rank: usize = factors.iter().map(RootSystemType::rank).sum();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut offset = 0;
    for t in factors {
        for local in positive_roots(t) {
            let mut v = vec![0i64; total_rank];
            v[offset..offset + t.rank()].copy_from_slice(&local);
            roots.push(v);
        }
        offset += t.rank();
    }
    let m = roots.len();
    let mut leq = vec![vec![false; m]; m];
    for a in 0..m {
        for b in 0..m {
            leq[a][b] = roots[a]
                .iter()
                .zip(&roots[b])
                .all(|(&ca, &cb)| cb >= ca);
        }
    }
    let labels = roots.iter().map(|v| root_label(v)).collect();
    let poset = Poset::from_closure(labels, leq);
    let simples: Vec<usize> = (0..m)
        .filter(|&i| roots[i].iter().sum::<i64>() == 1)
        .collect();
    assert_eq!(simples.len(), total_rank);
    let mins = poset.minimal_elements();
    assert_eq!(mins, simples, "minimal elements must be the simple roots");
    Ok(RootPoset { poset, simples, roots: Some(roots) })
}

pub fn root_poset_from_str(text: &str) -> Result<RootPoset, RootPosetError> {
    root_poset(&parse_crystallographic(text)?)
}

/// Order-ideal lattice of the root poset, elements labeled by generating
/// antichains.
pub fn nonnesting(rp: &RootPoset) -> Result<OrderIdealLattice, RootPosetError> {
    Ok(rp.poset.order_ideals_lattice()?)
}

/// A root β covering exactly two elements, both simple: `(α1, α2, β)` as
/// indices into the root poset.
pub fn find_beta_certificate(rp: &RootPoset) -> Option<(usize, usize, usize)> {
    let simple: HashSet<usize> = rp.simples.iter().copied().collect();
    for beta in 0..rp.poset.len() {
        let lower = rp.poset.lower_covers(beta);
        if let [a, b] = lower[..] {
            if simple.contains(&a) && simple.contains(&b) {
                return Some((a, b, beta));
            }
        }
    }
    None
}

/// In rank 3, the 7-element subset of the ideal lattice
/// {L(αi)} ∪ {L(αi,αj)} ∪ {L(β)} whose induced poset is a 6-cycle with one
/// pendant vertex. Returns lattice-element indices.
pub fn nonnesting_rank3_wild_subset(
    lat: &OrderIdealLattice,
    rp: &RootPoset,
    cert: (usize, usize, usize),
) -> Result<Vec<usize>, RootPosetError> {
    if rp.simples.len() != 3 {
        return Err(RootPosetError::NotRank3(rp.simples.len()));
    }
    let (a1, a2, beta) = cert;
    let a3 = *rp
        .simples
        .iter()
        .find(|&&s| s != a1 && s != a2)
        .expect("third simple root");
    let lookup = |antichain: &[usize]| {
        lat.element_of_antichain(antichain).ok_or_else(|| {
            RootPosetError::MissingLabel(format!("L{antichain:?}"))
        })
    };
    let subset = vec![
        lookup(&[a1])?,
        lookup(&[a2])?,
        lookup(&[a3])?,
        lookup(&[a1, a2])?,
        lookup(&[a1, a3])?,
        lookup(&[a2, a3])?,
        lookup(&[beta])?,
    ];
    Ok(subset)
}

#[derive(Serialize, Deserialize)]
struct RootPosetJson {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    simples: Vec<usize>,
}

/// Load a root-poset substitute from JSON
/// (`{"labels": [...], "covers": [[i,j],...], "simples": [...]}`); the
/// beta pattern is checked by `find_beta_certificate`, never assumed.
pub fn load_root_poset_fixture(json: &str) -> Result<RootPoset, RootPosetError> {
    let data: RootPosetJson =
        serde_json::from_str(json).map_err(|e| RootPosetError::Fixture(e.to_string()))?;
    let poset = Poset::from_covers(data.labels, &data.covers)?;
    let mut simples = data.simples;
    simples.sort_unstable();
    simples.dedup();
    if simples.iter().any(|&s| s >= poset.len()) {
        return Err(RootPosetError::Fixture("simple index out of range".into()));
    }
    if poset.minimal_elements() != simples {
        return Err(RootPosetError::Fixture(
            "designated simples must be exactly the minimal elements".into(),
        ));
    }
    Ok(RootPoset { poset, simples, roots: None })
}

pub fn root_poset_to_json(rp: &RootPoset) -> String {
    let data = RootPosetJson {
        labels: (0..rp.poset.len()).map(|i| rp.poset.label(i).to_string()).collect(),
        covers: rp.poset.covers().to_vec(),
        simples: rp.simples.clone(),
    };
    serde_json::to_string_pretty(&data).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(t: &str) -> RootPoset {
        root_poset_from_str(t).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(rp("A2").poset.len(), 3);
        assert_eq!(rp("A3").poset.len(), 6);
        assert_eq!(rp("B3").poset.len(), 9);
        assert_eq!(rp("C3").poset.len(), 9);
        assert_eq!(rp("B4").poset.len(), 16);
        assert_eq!(rp("A1xA1xA1").poset.len(), 3);
    }

    #[test]
    fn simples_are_minimal() {
        for t in ["A2", "A3", "B3", "C3", "A1xB2"] {
            let r = rp(t);
            assert_eq!(r.poset.minimal_elements(), r.simples, "{t}");
        }
    }

    #[test]
    fn a2_shape() {
        let r = rp("A2");
        // a1, a2 < a1+a2
        let top = r.poset.maximal_elements();
        assert_eq!(top.len(), 1);
        assert_eq!(r.poset.label(top[0]), "a1+a2");
        assert_eq!(r.poset.lower_covers(top[0]).len(), 2);
    }

    #[test]
    fn a1_cubed_is_antichain() {
        let r = rp("A1xA1xA1");
        assert!(r.poset.covers().is_empty());
    }

    #[test]
    fn nonnesting_sizes() {
        assert_eq!(nonnesting(&rp("A2")).unwrap().poset.len(), 5);
        assert_eq!(nonnesting(&rp("A3")).unwrap().poset.len(), 14);
        let cube = nonnesting(&rp("A1xA1xA1")).unwrap();
        assert!(cube.poset.is_isomorphic(&Poset::cube(3)));
    }

    #[test]
    fn nonnesting_extremes() {
        for t in ["A2", "A3", "B3", "A1xA1xA1"] {
            let lat = nonnesting(&rp(t)).unwrap();
            assert_eq!(lat.poset.minimal_elements().len(), 1, "{t}");
            assert_eq!(lat.poset.maximal_elements().len(), 1, "{t}");
            assert!(lat.poset.is_lattice(), "{t}");
        }
    }

    #[test]
    fn simples_ideal_restriction_is_cube() {
        for t in ["A2", "A3", "B3", "C3", "B4"] {
            let r = rp(t);
            let n = r.simples.len();
            let lat = nonnesting(&r).unwrap();
            let simples_mask: u32 =
                r.simples.iter().map(|&s| 1u32 << s).sum();
            let inside: Vec<usize> = (0..lat.poset.len())
                .filter(|&e| lat.ideals[e] & !simples_mask == 0)
                .collect();
            let sub = lat.poset.induced_subposet(&inside);
            assert!(sub.is_isomorphic(&Poset::cube(n)), "{t}");
        }
    }

    #[test]
    fn beta_certificates() {
        let (a1, a2, beta) = find_beta_certificate(&rp("A3")).unwrap();
        let r = rp("A3");
        assert!(r.simples.contains(&a1) && r.simples.contains(&a2));
        assert_eq!(r.poset.lower_covers(beta), vec![a1, a2]);
        assert!(find_beta_certificate(&rp("B3")).is_some());
        assert!(find_beta_certificate(&rp("C3")).is_some());
        assert!(find_beta_certificate(&rp("A1xA1xA1")).is_none());
    }

    #[test]
    fn wild_subset_is_hexagon_with_pendant() {
        for t in ["A3", "B3", "C3"] {
            let r = rp(t);
            let lat = nonnesting(&r).unwrap();
            let cert = find_beta_certificate(&r).unwrap();
            let subset = nonnesting_rank3_wild_subset(&lat, &r, cert).unwrap();
            assert_eq!(subset.len(), 7);
            let q = lat.poset.induced_subposet(&subset);
            assert!(q.is_path_unique(), "{t}");
            // degree sequence of a 6-cycle plus one pendant vertex
            let mut degs = q.hasse_degrees().0;
            degs.sort_unstable();
            assert_eq!(degs, vec![1, 2, 2, 2, 2, 2, 3], "{t}");
        }
    }

    #[test]
    fn beta_cover_within_cube() {
        // L(beta) covers L(a1, a2) and nothing else among the cube vertices
        for t in ["A3", "B3", "C3"] {
            let r = rp(t);
            let lat = nonnesting(&r).unwrap();
            let (a1, a2, beta) = find_beta_certificate(&r).unwrap();
            let l_beta = lat.element_of_antichain(&[beta]).unwrap();
            let l12 = lat.element_of_antichain(&[a1, a2]).unwrap();
            let simples_mask: u32 =
                r.simples.iter().map(|&s| 1u32 << s).sum();
            let covered: Vec<usize> = lat
                .poset
                .lower_covers(l_beta)
                .into_iter()
                .filter(|&e| lat.ideals[e] & !simples_mask == 0)
                .collect();
            assert_eq!(covered, vec![l12], "{t}");
        }
    }

    #[test]
    fn fixture_round_trip_and_checks() {
        let r = rp("A3");
        let json = root_poset_to_json(&r);
        let reloaded = load_root_poset_fixture(&json).unwrap();
        assert!(reloaded.poset.is_isomorphic(&r.poset));
        assert_eq!(
            nonnesting(&reloaded).unwrap().poset.len(),
            nonnesting(&r).unwrap().poset.len()
        );

        let antichain = r#"{"labels":["x","y","z"],"covers":[],"simples":[0,1,2]}"#;
        let loaded = load_root_poset_fixture(antichain).unwrap();
        assert!(find_beta_certificate(&loaded).is_none());

        // beta covering three simples is not a certificate
        let claw = r#"{"labels":["x","y","z","b"],"covers":[[0,3],[1,3],[2,3]],"simples":[0,1,2]}"#;
        let loaded = load_root_poset_fixture(claw).unwrap();
        assert!(find_beta_certificate(&loaded).is_none());

        let bad = r#"{"labels":["x","y"],"covers":[[0,1]],"simples":[0,1]}"#;
        assert!(load_root_poset_fixture(bad).is_err());
    }

    #[test]
    fn parse_rejects_noncrystallographic() {
        assert!(parse_crystallographic("H3").is_err());
        assert!(parse_crystallographic("I2(5)").is_err());
        assert!(parse_crystallographic("A5").is_err());
        assert!(parse_crystallographic("B1").is_err());
    }
}
