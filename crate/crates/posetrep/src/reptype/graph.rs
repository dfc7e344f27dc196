//! Undirected-graph classification by the Tits form: Dynkin diagrams are
//! positive definite, affine (extended Dynkin) diagrams positive
//! semidefinite of corank 1, everything else indefinite and hence wild.

use crate::exact::{Definiteness, ExactMatrix, ExactScalar};
use crate::poset::Poset;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph classification needs a connected graph")]
    Disconnected,
    #[error("graph is not simple: repeated or loop edge ({0}, {1})")]
    NotSimple(usize, usize),
}

/// Simple undirected graph on vertices 0..n.
#[derive(Clone, Debug)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::NotSimple(w[0].0, w[0].1));
            }
        }
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a == b || b >= n) {
            return Err(GraphError::NotSimple(a, b));
        }
        Ok(Graph { n, edges })
    }

    /// The underlying graph of a poset's Hasse diagram.
    pub fn from_hasse(p: &Poset) -> Self {
        Graph::new(p.len(), p.covers().to_vec()).expect("Hasse diagram is simple")
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Symmetrized Tits matrix: 2 on the diagonal, -1 per edge.
    pub fn tits_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::identity(self.n).scale(&ExactScalar::from_int(2));
        for &(a, b) in &self.edges {
            m.set(a, b, ExactScalar::from_int(-1));
            m.set(b, a, ExactScalar::from_int(-1));
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinShape {
    A(usize),
    D(usize),
    E(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AffineShape {
    /// Cycle on m + 1 vertices.
    ATilde(usize),
    DTilde(usize),
    ETilde(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphClass {
    Dynkin(DynkinShape),
    Affine(AffineShape),
    WildGraph,
}

impl std::fmt::Display for GraphClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphClass::Dynkin(DynkinShape::A(n)) => write!(f, "A{n}"),
            GraphClass::Dynkin(DynkinShape::D(n)) => write!(f, "D{n}"),
            GraphClass::Dynkin(DynkinShape::E(n)) => write!(f, "E{n}"),
            GraphClass::Affine(AffineShape::ATilde(n)) => write!(f, "A~{n}"),
            GraphClass::Affine(AffineShape::DTilde(n)) => write!(f, "D~{n}"),
            GraphClass::Affine(AffineShape::ETilde(n)) => write!(f, "E~{n}"),
            GraphClass::WildGraph => write!(f, "wild"),
        }
    }
}

/// Arm lengths of a tree with exactly one branch vertex: lengths of the
/// pendant paths from the branch vertex, sorted.
fn arm_lengths(g: &Graph, branch: usize) -> Option<Vec<usize>> {
    let mut arms = Vec::new();
    for start in g.neighbors(branch) {
        let mut prev = branch;
        let mut at = start;
        let mut len = 1;
        loop {
            let next: Vec<usize> =
                g.neighbors(at).into_iter().filter(|&u| u != prev).collect();
            match next[..] {
                [] => break,
                [u] => {
                    prev = at;
                    at = u;
                    len += 1;
                }
                _ => return None, // second branch vertex on this arm
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    Some(arms)
}

fn name_definite(g: &Graph) -> DynkinShape {
    let degs = g.degrees();
    let branches: Vec<usize> = (0..g.n).filter(|&v| degs[v] >= 3).collect();
    match branches[..] {
        [] => DynkinShape::A(g.n),
        [b] => {
            let arms = arm_lengths(g, b).expect("definite tree has one branch vertex");
            match arms[..] {
                [1, 1, _] => DynkinShape::D(g.n),
                [1, 2, k @ 2..=4] => DynkinShape::E(k + 4),
                _ => unreachable!("positive definite graph with arms {arms:?}"),
            }
        }
        _ => unreachable!("positive definite graph with two branch vertices"),
    }
}

fn name_affine(g: &Graph) -> AffineShape {
    let degs = g.degrees();
    if degs.iter().all(|&d| d == 2) {
        return AffineShape::ATilde(g.n - 1);
    }
    let branches: Vec<usize> = (0..g.n).filter(|&v| degs[v] >= 3).collect();
    match branches[..] {
        [b] if degs[b] == 4 => AffineShape::DTilde(g.n - 1),
        [b] => {
            let arms = arm_lengths(g, b).expect("affine tree");
            match arms[..] {
                [2, 2, 2] => AffineShape::ETilde(6),
                [1, 3, 3] => AffineShape::ETilde(7),
                [1, 2, 5] => AffineShape::ETilde(8),
                _ => unreachable!("semidefinite corank-1 graph with arms {arms:?}"),
            }
        }
        [_, _] => AffineShape::DTilde(g.n - 1),
        _ => unreachable!("semidefinite corank-1 graph with >2 branch vertices"),
    }
}

/// Classify a connected simple graph by the definiteness of its Tits form.
pub fn graph_class(g: &Graph) -> Result<GraphClass, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    match g.tits_matrix().definiteness().expect("Tits matrix is symmetric") {
        Definiteness::PositiveDefinite => Ok(GraphClass::Dynkin(name_definite(g))),
        Definiteness::PositiveSemidefinite { corank: 1 } => {
            Ok(GraphClass::Affine(name_affine(g)))
        }
        _ => Ok(GraphClass::WildGraph),
    }
}
