//! Finite Coxeter groups: exact geometric enumeration, weak order,
//! c-sortable elements and Cambrian lattices.
//!
//! Crystallographic factors and H3 are enumerated by breadth-first search in
//! the reflection representation over `Q` or a quadratic extension; dihedral
//! factors I2(h) are handled combinatorially so that arbitrary h stays exact.

use crate::exact::ExactScalar;
use crate::poset::{Poset, PosetError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("cannot parse Coxeter type {0:?}")]
    Parse(String),
    #[error("unsupported Coxeter type {0}")]
    Unsupported(String),
    #[error("group too large: {0} elements exceeds the bound {MAX_GROUP_SIZE}")]
    TooLarge(usize),
    #[error("Coxeter element must be a permutation of the generators 1..={0}")]
    NotPermutation(usize),
    #[error("no unique maximal sortable element below {0}; candidates {1:?}")]
    NoUniqueFiberMax(usize, Vec<usize>),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

const MAX_GROUP_SIZE: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    I2(usize),
    H3,
}

impl IrreducibleType {
    pub fn rank(&self) -> usize {
        match self {
            IrreducibleType::A(n) | IrreducibleType::B(n) => *n,
            IrreducibleType::I2(_) => 2,
            IrreducibleType::H3 => 3,
        }
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        let ok = match self {
            IrreducibleType::A(n) => (1..=4).contains(n),
            IrreducibleType::B(n) => (2..=4).contains(n),
            IrreducibleType::I2(h) => *h >= 3,
            IrreducibleType::H3 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(CoxeterError::Unsupported(self.to_string()))
        }
    }
}

impl std::fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IrreducibleType::A(n) => write!(f, "A{n}"),
            IrreducibleType::B(n) => write!(f, "B{n}"),
            IrreducibleType::I2(h) => write!(f, "I2({h})"),
            IrreducibleType::H3 => write!(f, "H3"),
        }
    }
}

/// A finite Coxeter type: product of supported irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterType {
    pub factors: Vec<IrreducibleType>,
}

impl CoxeterType {
    pub fn new(factors: Vec<IrreducibleType>) -> Self {
        CoxeterType { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(IrreducibleType::rank).sum()
    }

    /// Parse strings like `A3`, `B3`, `H3`, `I2(7)`, `A1xA1xA1`, `A1xI2(5)`.
    pub fn parse(text: &str) -> Result<Self, CoxeterError> {
        let mut factors = Vec::new();
        for part in text.split('x') {
            let part = part.trim();
            let factor = if let Some(rest) = part.strip_prefix("I2(") {
                let h = rest
                    .strip_suffix(')')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| CoxeterError::Parse(text.into()))?;
                IrreducibleType::I2(h)
            } else if part == "H3" {
                IrreducibleType::H3
            } else if let Some(n) = part.strip_prefix('A') {
                IrreducibleType::A(n.parse().map_err(|_| CoxeterError::Parse(text.into()))?)
            } else if let Some(n) = part.strip_prefix('B') {
                IrreducibleType::B(n.parse().map_err(|_| CoxeterError::Parse(text.into()))?)
            } else {
                return Err(CoxeterError::Parse(text.into()));
            };
            factors.push(factor);
        }
        if factors.is_empty() {
            return Err(CoxeterError::Parse(text.into()));
        }
        Ok(CoxeterType::new(factors))
    }
}

impl std::fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// Choice of Coxeter element: an order on the simple generators
/// (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterElementChoice {
    pub order: Vec<usize>,
}

impl CoxeterElementChoice {
    pub fn new(order: Vec<usize>, rank: usize) -> Result<Self, CoxeterError> {
        let mut seen = vec![false; rank];
        if order.len() != rank {
            return Err(CoxeterError::NotPermutation(rank));
        }
        for &g in &order {
            if g >= rank || seen[g] {
                return Err(CoxeterError::NotPermutation(rank));
            }
            seen[g] = true;
        }
        Ok(CoxeterElementChoice { order })
    }

    /// Parse `1,2,3` (1-based generator indices).
    pub fn parse(text: &str, rank: usize) -> Result<Self, CoxeterError> {
        let order: Vec<usize> = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .and_then(|g| g.checked_sub(1))
                    .ok_or(CoxeterError::NotPermutation(rank))
            })
            .collect::<Result<_, _>>()?;
        Self::new(order, rank)
    }
}

/// One irreducible factor, enumerated: multiplication structure only.
struct FactorGroup {
    ngens: usize,
    lengths: Vec<u32>,
    /// `right[w][g] = w * s_g`
    right: Vec<Vec<usize>>,
}

/// Bilinear-form entry `-cos(pi/m)` as an exact scalar.
fn minus_cos_pi_over(m: usize) -> ExactScalar {
    match m {
        2 => ExactScalar::zero(),
        3 => ExactScalar::ratio(-1, 2),
        4 => ExactScalar::quadratic(0, -1, 2, 2),
        5 => ExactScalar::quadratic(-1, -1, 4, 5),
        _ => panic!("unsupported bond label m = {m}"),
    }
}

/// Enumerate a factor in its reflection representation from the Coxeter
/// matrix.
fn build_geometric(coxeter_matrix: &[Vec<usize>]) -> Result<FactorGroup, CoxeterError> {
    let n = coxeter_matrix.len();
    // generator matrices: s_i fixes all coordinates but row i
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = crate::exact::ExactMatrix::identity(n);
        for j in 0..n {
            if i == j {
                m.set(i, i, ExactScalar::from_int(-1));
            } else {
                // -2 * B(alpha_i, alpha_j) = 2 cos(pi / m_ij)
                let b = minus_cos_pi_over(coxeter_matrix[i][j]);
                m.set(i, j, b.mul(&ExactScalar::from_int(-2)));
            }
        }
        gens.push(m);
    }
    let identity = crate::exact::ExactMatrix::identity(n);
    let mut index: HashMap<crate::exact::ExactMatrix, usize> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut elements = vec![identity];
    let mut lengths = vec![0u32];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        let len = lengths[head];
        let mut row = Vec::with_capacity(n);
        for g in &gens {
            let product = current.mul(g);
            let id = match index.get(&product) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= MAX_GROUP_SIZE {
                        return Err(CoxeterError::TooLarge(id + 1));
                    }
                    index.insert(product.clone(), id);
                    elements.push(product);
                    // BFS from the identity: new elements have length + 1
                    lengths.push(len + 1);
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        head += 1;
    }
    Ok(FactorGroup { ngens: n, lengths, right })
}

/// Dihedral group of order 2h, combinatorial: elements `r^k` and `r^k s1`
/// with `r = s1 s2`.
fn build_dihedral(h: usize) -> FactorGroup {
    let idx = |k: usize, flip: usize| k * 2 + flip;
    let size = 2 * h;
    let mut right = vec![vec![0usize; 2]; size];
    for k in 0..h {
        for flip in 0..2 {
            let w = idx(k, flip);
            // w * s1
            right[w][0] = idx(if flip == 0 { k } else { k }, 1 - flip);
            // w * s2, where s2 = r^(h-1) s1
            right[w][1] = if flip == 0 {
                idx((k + h - 1) % h, 1)
            } else {
                idx((k + 1) % h, 0)
            };
        }
    }
    // lengths by BFS from the identity
    let mut lengths = vec![u32::MAX; size];
    lengths[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        for g in 0..2 {
            let v = right[w][g];
            if lengths[v] == u32::MAX {
                lengths[v] = lengths[w] + 1;
                queue.push_back(v);
            }
        }
    }
    FactorGroup { ngens: 2, lengths, right }
}

fn build_factor(t: &IrreducibleType) -> Result<FactorGroup, CoxeterError> {
    t.validate()?;
    let path_matrix = |n: usize, last_bond: usize, first_bond: usize| {
        let mut m = vec![vec![2usize; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        for i in 0..n.saturating_sub(1) {
            let bond = if i == 0 {
                first_bond
            } else if i == n - 2 {
                last_bond
            } else {
                3
            };
            m[i][i + 1] = bond;
            m[i + 1][i] = bond;
        }
        m
    };
    match t {
        IrreducibleType::A(n) => build_geometric(&path_matrix(*n, 3, 3)),
        IrreducibleType::B(n) => build_geometric(&path_matrix(*n, 4, 3)),
        IrreducibleType::H3 => build_geometric(&path_matrix(3, 3, 5)),
        IrreducibleType::I2(h) => Ok(build_dihedral(*h)),
    }
}

/// A finite Coxeter group with all elements enumerated. Index 0 is the
/// identity.
pub struct CoxeterGroup {
    pub ctype: CoxeterType,
    pub rank: usize,
    lengths: Vec<u32>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    reflections: Vec<usize>,
    inversions: Vec<u64>,
}

impl CoxeterGroup {
    pub fn build(ctype: CoxeterType) -> Result<Self, CoxeterError> {
        let factors: Vec<FactorGroup> = ctype
            .factors
            .iter()
            .map(build_factor)
            .collect::<Result<_, _>>()?;
        let mut size = 1usize;
        for f in &factors {
            size = size
                .checked_mul(f.lengths.len())
                .filter(|&s| s <= MAX_GROUP_SIZE)
                .ok_or(CoxeterError::TooLarge(usize::MAX))?;
        }
        let rank: usize = factors.iter().map(|f| f.ngens).sum();
        // mixed-radix combination of factor indices
        let mut strides = Vec::with_capacity(factors.len());
        let mut acc = 1usize;
        for f in &factors {
            strides.push(acc);
            acc *= f.lengths.len();
        }
        let decompose = |w: usize| -> Vec<usize> {
            let mut parts = Vec::with_capacity(factors.len());
            let mut rest = w;
            for f in &factors {
                parts.push(rest % f.lengths.len());
                rest /= f.lengths.len();
            }
            parts
        };
        let gen_factor: Vec<(usize, usize)> = {
            // global generator index -> (factor, local generator)
            let mut v = Vec::with_capacity(rank);
            for (fi, f) in factors.iter().enumerate() {
                for g in 0..f.ngens {
                    v.push((fi, g));
                }
            }
            v
        };
        let mut lengths = Vec::with_capacity(size);
        let mut right = Vec::with_capacity(size);
        for w in 0..size {
            let parts = decompose(w);
            let len: u32 = parts
                .iter()
                .zip(&factors)
                .map(|(&p, f)| f.lengths[p])
                .sum();
            lengths.push(len);
            let mut row = Vec::with_capacity(rank);
            for &(fi, g) in &gen_factor {
                let mut parts2 = parts.clone();
                parts2[fi] = factors[fi].right[parts[fi]][g];
                let idx: usize = parts2
                    .iter()
                    .zip(&strides)
                    .map(|(&p, &s)| p * s)
                    .sum();
                row.push(idx);
            }
            right.push(row);
        }
        // reduced words via BFS over right multiplication
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut seen = vec![false; size];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for g in 0..rank {
                let v = right[w][g];
                if !seen[v] {
                    seen[v] = true;
                    let mut word = words[w].clone();
                    word.push(g);
                    words[v] = word;
                    queue.push_back(v);
                }
            }
        }
        let mult = |x: usize, y_word: &[usize]| -> usize {
            y_word.iter().fold(x, |acc, &g| right[acc][g])
        };
        // left multiplication by each generator
        let mut left = vec![vec![0usize; rank]; size];
        for w in 0..size {
            for g in 0..rank {
                let gen_elem = right[0][g];
                left[w][g] = mult(gen_elem, &words[w]);
            }
        }
        // reflections: conjugates of the generators
        let mut reflections = Vec::new();
        let mut is_reflection = vec![false; size];
        for w in 0..size {
            for g in 0..rank {
                let wg = right[w][g];
                let inverse_word: Vec<usize> = words[w].iter().rev().copied().collect();
                let t = mult(wg, &inverse_word);
                if !is_reflection[t] {
                    is_reflection[t] = true;
                    reflections.push(t);
                }
            }
        }
        reflections.sort_unstable();
        assert!(reflections.len() <= 64, "inversion bitsets use u64 masks");
        // left inversion sets: t with l(t w) < l(w)
        let mut inversions = Vec::with_capacity(size);
        for w in 0..size {
            let mut mask = 0u64;
            for (ti, &t) in reflections.iter().enumerate() {
                let tw = mult(t, &words[w]);
                if lengths[tw] < lengths[w] {
                    mask |= 1 << ti;
                }
            }
            inversions.push(mask);
        }
        Ok(CoxeterGroup { ctype, rank, lengths, right, left, words, reflections, inversions })
    }

    pub fn from_type_str(text: &str) -> Result<Self, CoxeterError> {
        Self::build(CoxeterType::parse(text)?)
    }

    pub fn size(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> u32 {
        self.lengths[w]
    }

    pub fn longest_element(&self) -> usize {
        let mut tops: Vec<usize> = (0..self.size())
            .filter(|&w| self.lengths[w] == *self.lengths.iter().max().unwrap())
            .collect();
        assert_eq!(tops.len(), 1, "longest element must be unique");
        tops.pop().unwrap()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.reflections.len()
    }

    pub fn inversion_set(&self, w: usize) -> u64 {
        self.inversions[w]
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn right_mult(&self, w: usize, g: usize) -> usize {
        self.right[w][g]
    }

    pub fn left_mult(&self, g: usize, w: usize) -> usize {
        self.left[w][g]
    }

    pub fn element_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &g| self.right[acc][g])
    }

    fn element_label(&self, w: usize) -> String {
        if w == 0 {
            "e".to_string()
        } else {
            self.words[w].iter().map(|g| (g + 1).to_string()).collect()
        }
    }

    /// Right weak order: `w` is covered by `w s_i` when the length goes up
    /// by one. Elements are labeled by reduced words.
    pub fn weak_order(&self) -> Poset {
        let labels = (0..self.size()).map(|w| self.element_label(w)).collect();
        let mut pairs = Vec::new();
        for w in 0..self.size() {
            for g in 0..self.rank {
                let v = self.right[w][g];
                if self.lengths[v] == self.lengths[w] + 1 {
                    pairs.push((w, v));
                }
            }
        }
        Poset::from_covers(labels, &pairs).expect("weak order is acyclic")
    }

    /// Greedy leftmost subword of `c^infinity`: the letters recorded in each
    /// scan of `c` form the passes of the c-sorting word of `w`.
    pub fn c_sorting_word(&self, w: usize, c: &CoxeterElementChoice) -> Vec<Vec<usize>> {
        let mut u = w;
        let mut passes = Vec::new();
        while u != 0 {
            let mut pass = Vec::new();
            for &g in &c.order {
                let su = self.left[u][g];
                if self.lengths[su] < self.lengths[u] {
                    pass.push(g);
                    u = su;
                }
            }
            passes.push(pass);
        }
        passes
    }

    /// Sortability: the supports of the passes are weakly nested.
    pub fn is_c_sortable(&self, w: usize, c: &CoxeterElementChoice) -> bool {
        let passes = self.c_sorting_word(w, c);
        passes.windows(2).all(|pair| {
            let sup = |p: &Vec<usize>| p.iter().fold(0u64, |m, &g| m | 1 << g);
            sup(&pair[1]) & !sup(&pair[0]) == 0
        })
    }

    pub fn sortable_elements(&self, c: &CoxeterElementChoice) -> Vec<usize> {
        (0..self.size()).filter(|&w| self.is_c_sortable(w, c)).collect()
    }

    /// The Cambrian lattice: restriction of the weak order to the c-sortable
    /// elements.
    pub fn cambrian(&self, c: &CoxeterElementChoice) -> Poset {
        let weak = self.weak_order();
        let sortables = self.sortable_elements(c);
        weak.induced_subposet(&sortables)
    }

    /// For every group element, the maximum c-sortable element weakly below
    /// it (indices into the group). Uniqueness of each maximum is verified.
    pub fn pi_down_map(&self, c: &CoxeterElementChoice) -> Result<Vec<usize>, CoxeterError> {
        let weak = self.weak_order();
        let sortables = self.sortable_elements(c);
        let mut map = Vec::with_capacity(self.size());
        for w in 0..self.size() {
            let below: Vec<usize> = sortables
                .iter()
                .copied()
                .filter(|&v| weak.leq(v, w))
                .collect();
            let maxes: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&v| below.iter().all(|&u| !weak.lt(v, u)))
                .collect();
            match maxes[..] {
                [m] => map.push(m),
                _ => return Err(CoxeterError::NoUniqueFiberMax(w, maxes)),
            }
        }
        Ok(map)
    }

    /// All distinct Coxeter element orders (permutations of generators).
    pub fn all_coxeter_orders(&self) -> Vec<CoxeterElementChoice> {
        use itertools::Itertools;
        (0..self.rank)
            .permutations(self.rank)
            .map(|order| CoxeterElementChoice { order })
            .collect()
    }
}
