//! Exact representations of posets: a dimension per element and a matrix per
//! cover edge, subject to the commutativity relations of the incidence
//! algebra.  Provides the Hom-space solver and the one- and two-parameter
//! witness families living on a cycle, resp. a cycle with a square-attached
//! vertex.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{ExactMatrix, ExactScalar};
use crate::poset::Poset;
use crate::reptype::Certificate;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("cover ({x}, {y}) carries a {got_rows}x{got_cols} matrix, expected {want_rows}x{want_cols}")]
    DimensionMismatch {
        x: usize,
        y: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("({0}, {1}) is not a cover edge of the base poset")]
    NotAnEdge(usize, usize),
    #[error("no matrix supplied for cover ({0}, {1})")]
    MissingEdge(usize, usize),
    #[error("the two parameters must be distinct")]
    EqualParameters,
    #[error("representations live over different base posets")]
    BaseMismatch,
    #[error("base poset does not have the required witness shape")]
    BadWitness,
    #[error("malformed representation JSON: {0}")]
    Json(String),
}

/// A functor from a finite poset to finite-dimensional vector spaces: one
/// dimension per element, one matrix per cover edge x ⋖ y (of shape
/// dims\[y\] × dims\[x\], acting on column vectors).
#[derive(Clone, Debug)]
pub struct PosetRep {
    pub base: Poset,
    pub dims: Vec<usize>,
    pub maps: BTreeMap<(usize, usize), ExactMatrix>,
}

fn mat_eq(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && a.sub(b).is_zero()
}

impl PosetRep {
    /// Checks edge shapes; commutativity is checked separately by
    /// [`validate_rep`].
    pub fn new(
        base: Poset,
        dims: Vec<usize>,
        maps: BTreeMap<(usize, usize), ExactMatrix>,
    ) -> Result<Self, RepError> {
        assert_eq!(dims.len(), base.len());
        for &(x, y) in base.covers() {
            let m = maps.get(&(x, y)).ok_or(RepError::MissingEdge(x, y))?;
            if m.rows() != dims[y] || m.cols() != dims[x] {
                return Err(RepError::DimensionMismatch {
                    x,
                    y,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows: dims[y],
                    want_cols: dims[x],
                });
            }
        }
        for &(x, y) in maps.keys() {
            if !base.is_cover(x, y) {
                return Err(RepError::NotAnEdge(x, y));
            }
        }
        Ok(PosetRep { base, dims, maps })
    }

    /// The constant representation: every dimension 1, every edge identity.
    pub fn constant(base: &Poset) -> PosetRep {
        let dims = vec![1; base.len()];
        let maps = base
            .covers()
            .iter()
            .map(|&e| (e, ExactMatrix::identity(1)))
            .collect();
        PosetRep {
            base: base.clone(),
            dims,
            maps,
        }
    }

    /// The simple representation concentrated at one element.
    pub fn simple(base: &Poset, at: usize) -> PosetRep {
        let mut dims = vec![0; base.len()];
        dims[at] = 1;
        let maps = base
            .covers()
            .iter()
            .map(|&(x, y)| ((x, y), ExactMatrix::zeros(dims[y], dims[x])))
            .collect();
        PosetRep {
            base: base.clone(),
            dims,
            maps,
        }
    }

    pub fn map(&self, x: usize, y: usize) -> &ExactMatrix {
        &self.maps[&(x, y)]
    }
}

/// Commutativity check: propagates cover-path products from every source by
/// dynamic programming over a linear extension.  Returns the first pair
/// (x, y) admitting two distinct path products, if any.
pub fn validate_rep(rep: &PosetRep) -> Result<(), (usize, usize)> {
    let p = &rep.base;
    let order = p.linear_extension();
    for &x in &order {
        let mut products: BTreeMap<usize, ExactMatrix> = BTreeMap::new();
        products.insert(x, ExactMatrix::identity(rep.dims[x]));
        for &y in &order {
            let Some(py) = products.get(&y).cloned() else {
                continue;
            };
            for z in p.upper_covers(y) {
                let cand = rep.map(y, z).mul(&py);
                match products.get(&z) {
                    Some(prev) if !mat_eq(prev, &cand) => return Err((x, z)),
                    Some(_) => {}
                    None => {
                        products.insert(z, cand);
                    }
                }
            }
        }
    }
    Ok(())
}

/// An exact basis of the space of natural transformations between two
/// representations of the same poset.
#[derive(Clone, Debug)]
pub struct HomSpace {
    /// One matrix tuple per basis element, indexed by poset element; entry x
    /// has shape target.dims\[x\] × source.dims\[x\].
    pub basis: Vec<Vec<ExactMatrix>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves the naturality system { N(e)·f_x = f_y·M(e) : covers e } by exact
/// nullspace computation.
pub fn hom_space(m: &PosetRep, n: &PosetRep) -> Result<HomSpace, RepError> {
    if m.base.len() != n.base.len() || m.base.covers() != n.base.covers() {
        return Err(RepError::BaseMismatch);
    }
    let p = &m.base;
    let k = p.len();
    // unknowns: the entries of each f_x (n.dims[x] × m.dims[x]), row-major
    let mut offset = vec![0usize; k + 1];
    for x in 0..k {
        offset[x + 1] = offset[x] + n.dims[x] * m.dims[x];
    }
    let vars = offset[k];
    let var = |x: usize, r: usize, c: usize| offset[x] + r * m.dims[x] + c;

    let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
    for &(x, y) in p.covers() {
        let mm = m.map(x, y);
        let nn = n.map(x, y);
        // equation block: N(e)·f_x − f_y·M(e) = 0, one row per entry (r, c)
        for r in 0..n.dims[y] {
            for c in 0..m.dims[x] {
                let mut row = vec![ExactScalar::zero(); vars];
                for t in 0..n.dims[x] {
                    let cur = row[var(x, t, c)].add(nn.get(r, t));
                    row[var(x, t, c)] = cur;
                }
                for t in 0..m.dims[y] {
                    let cur = row[var(y, r, t)].sub(mm.get(t, c));
                    row[var(y, r, t)] = cur;
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        ExactMatrix::zeros(1, vars)
    } else {
        ExactMatrix::new(rows.len(), vars, rows.into_iter().flatten().collect())
    };
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| {
            (0..k)
                .map(|x| {
                    ExactMatrix::from_fn(n.dims[x], m.dims[x], |r, c| v.get(var(x, r, c), 0).clone())
                })
                .collect()
        })
        .collect();
    Ok(HomSpace { basis })
}

fn check_cycle_shape(y: &Poset) -> Result<(), RepError> {
    let (degrees, _) = y.hasse_degrees();
    if y.len() < 4 || !degrees.iter().all(|&d| d == 2) || !crate::poset::is_connected(y) {
        return Err(RepError::BadWitness);
    }
    Ok(())
}

/// One-parameter representation on a cycle-shaped poset: every dimension 1,
/// the designated edge multiplies by λ, every other edge is the identity.
pub fn build_m_lambda(y: &Poset, alpha: (usize, usize), lambda: &BigRational) -> Result<PosetRep, RepError> {
    check_cycle_shape(y)?;
    if !y.is_cover(alpha.0, alpha.1) {
        return Err(RepError::NotAnEdge(alpha.0, alpha.1));
    }
    let maps = y
        .covers()
        .iter()
        .map(|&e| {
            let s = if e == alpha {
                ExactScalar::from_rational(lambda.clone())
            } else {
                ExactScalar::one()
            };
            (e, ExactMatrix::new(1, 1, vec![s]))
        })
        .collect();
    PosetRep::new(y.clone(), vec![1; y.len()], maps)
}

/// The cycle-with-square witness shape inside a poset `x`: an induced cycle
/// (in cyclic order) plus a vertex `omega` attached to it by the two cover
/// edges of a commutative square.
#[derive(Clone, Debug)]
pub struct SquareCycleShape {
    pub cycle: Vec<usize>,
    pub omega: usize,
    /// (a, b, m): the two cycle feet of omega and the cycle vertex between
    /// them closing the square.
    pub square: (usize, usize, usize),
    /// True when omega lies below its feet.
    pub omega_minimal: bool,
}

impl SquareCycleShape {
    /// Recovers the shape data from a witness poset whose elements are the
    /// cycle plus omega (e.g. an induced subposet extracted by
    /// [`square_cycle_witness`]).
    pub fn detect(x: &Poset) -> Result<SquareCycleShape, RepError> {
        let n = x.len();
        let (degrees, _) = x.hasse_degrees();
        let omega = (0..n).find(|&v| degrees[v] == 2 && {
            let cycle: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            check_cycle_shape(&x.induced_subposet(&cycle)).is_ok()
        });
        let omega = omega.ok_or(RepError::BadWitness)?;
        // walk the cycle in cyclic order
        let rest: Vec<usize> = (0..n).filter(|&u| u != omega).collect();
        let cyc = x.induced_subposet(&rest);
        let neighbor = |v: usize| -> Vec<usize> {
            let mut ns = cyc.upper_covers(v);
            ns.extend(cyc.lower_covers(v));
            ns
        };
        let mut order = vec![0usize];
        let mut prev = usize::MAX;
        while order.len() < rest.len() {
            let cur = *order.last().unwrap();
            let next = neighbor(cur).into_iter().find(|&u| u != prev).unwrap();
            prev = cur;
            order.push(next);
        }
        let cycle: Vec<usize> = order.into_iter().map(|i| rest[i]).collect();
        Self::from_parts(x, cycle, omega)
    }

    /// Builds the shape from a known cycle order and omega, validating the
    /// square attachment.
    pub fn from_parts(x: &Poset, cycle: Vec<usize>, omega: usize) -> Result<SquareCycleShape, RepError> {
        let m = cycle.len();
        let pos = |v: usize| cycle.iter().position(|&u| u == v);
        let up: Vec<usize> = x.upper_covers(omega);
        let down: Vec<usize> = x.lower_covers(omega);
        let (feet, omega_minimal) = if down.is_empty() && up.len() == 2 {
            (up, true)
        } else if up.is_empty() && down.len() == 2 {
            (down, false)
        } else {
            return Err(RepError::BadWitness);
        };
        let (pa, pb) = (
            pos(feet[0]).ok_or(RepError::BadWitness)?,
            pos(feet[1]).ok_or(RepError::BadWitness)?,
        );
        // the feet sit two apart on the cycle; the vertex between them closes
        // the square
        let mid = if (pa + 2) % m == pb {
            (pa + 1) % m
        } else if (pb + 2) % m == pa {
            (pb + 1) % m
        } else {
            return Err(RepError::BadWitness);
        };
        let square = (feet[0], feet[1], cycle[mid]);
        let ok = if omega_minimal {
            x.is_cover(square.0, square.2) && x.is_cover(square.1, square.2)
        } else {
            x.is_cover(square.2, square.0) && x.is_cover(square.2, square.1)
        };
        if !ok {
            return Err(RepError::BadWitness);
        }
        Ok(SquareCycleShape {
            cycle,
            omega,
            square,
            omega_minimal,
        })
    }

    /// Default parameter edge: the cycle edge farthest from the square, by
    /// cyclic distance from the square's middle vertex.
    fn default_alpha(&self, x: &Poset) -> (usize, usize) {
        let m = self.cycle.len();
        let mid = self.cycle.iter().position(|&v| v == self.square.2).unwrap();
        let best = (0..m)
            .max_by_key(|&i| {
                // edge i joins cycle positions i and i+1; distance measured
                // edge-to-edge against the two square edges (mid−1, mid)
                let d1 = (i + m - mid) % m;
                let d2 = (mid + m - 1 - i) % m;
                (d1.min(d2), std::cmp::Reverse(i))
            })
            .unwrap();
        let (u, v) = (self.cycle[best], self.cycle[(best + 1) % m]);
        if x.is_cover(u, v) {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// Extracts the witness subposet of a square-cycle certificate, in the index
/// order cycle-then-omega, ready for [`SquareCycleShape::detect`].
pub fn square_cycle_witness(p: &Poset, cert: &Certificate) -> Result<Poset, RepError> {
    let Certificate::SquareCycle { cycle, omega, .. } = cert else {
        return Err(RepError::BadWitness);
    };
    let mut vertices = cycle.clone();
    vertices.push(*omega);
    Ok(p.induced_subposet(&vertices))
}

/// Two-parameter representation on a cycle-with-square poset: dimension 2 on
/// the cycle, 1 at omega; the parameter edge carries diag(λ, μ), other cycle
/// edges the identity, and the two omega edges the (co)diagonal embedding.
/// Requires λ ≠ μ.  `alpha` overrides the parameter edge; it must be a cycle
/// edge outside the square.
pub fn build_m_lambda_mu(
    x: &Poset,
    shape: &SquareCycleShape,
    lambda: &BigRational,
    mu: &BigRational,
    alpha: Option<(usize, usize)>,
) -> Result<PosetRep, RepError> {
    if lambda == mu {
        return Err(RepError::EqualParameters);
    }
    let alpha = match alpha {
        Some(e) => {
            let m = shape.cycle.len();
            let on_cycle = (0..m).any(|i| {
                let (u, v) = (shape.cycle[i], shape.cycle[(i + 1) % m]);
                (e == (u, v) || e == (v, u)) && x.is_cover(e.0, e.1)
            });
            let (a, b, mid) = shape.square;
            let in_square = [a, b].contains(&e.0) && e.1 == mid
                || e.0 == mid && [a, b].contains(&e.1);
            if !on_cycle || in_square {
                return Err(RepError::NotAnEdge(e.0, e.1));
            }
            e
        }
        None => shape.default_alpha(x),
    };
    let mut dims = vec![2; x.len()];
    dims[shape.omega] = 1;
    let diag = ExactMatrix::from_fn(2, 2, |i, j| {
        if i != j {
            ExactScalar::zero()
        } else if i == 0 {
            ExactScalar::from_rational(lambda.clone())
        } else {
            ExactScalar::from_rational(mu.clone())
        }
    });
    let embed = if shape.omega_minimal {
        ExactMatrix::new(2, 1, vec![ExactScalar::one(), ExactScalar::one()])
    } else {
        ExactMatrix::new(1, 2, vec![ExactScalar::one(), ExactScalar::one()])
    };
    let maps = x
        .covers()
        .iter()
        .map(|&(u, v)| {
            let mat = if (u, v) == alpha {
                diag.clone()
            } else if u == shape.omega || v == shape.omega {
                embed.clone()
            } else {
                ExactMatrix::identity(2)
            };
            ((u, v), mat)
        })
        .collect();
    PosetRep::new(x.clone(), dims, maps)
}

/// True iff the dimensions match pointwise and some Hom element is invertible
/// at every vertex; tries each basis element and the sum of all of them
/// (sufficient for the dimension-≤-1 Hom spaces arising here).
pub fn is_isomorphic_reps(m: &PosetRep, n: &PosetRep) -> Result<bool, RepError> {
    if m.dims != n.dims {
        return Ok(false);
    }
    let hom = hom_space(m, n)?;
    let invertible = |f: &[ExactMatrix]| f.iter().all(|fx| fx.inverse().is_some());
    if hom.basis.iter().any(|f| invertible(f)) {
        return Ok(true);
    }
    if hom.basis.len() > 1 {
        let k = m.base.len();
        let sum: Vec<ExactMatrix> = (0..k)
            .map(|v| {
                let mut acc = ExactMatrix::zeros(n.dims[v], m.dims[v]);
                for f in &hom.basis {
                    acc = acc.sub(&f[v].neg());
                }
                acc
            })
            .collect();
        if invertible(&sum) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn rep_to_json(rep: &PosetRep) -> Result<Value, RepError> {
    let poset: Value =
        serde_json::from_str(&rep.base.to_json()).map_err(|e| RepError::Json(e.to_string()))?;
    let mut maps = serde_json::Map::new();
    for (&(x, y), m) in &rep.maps {
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|r| {
                (0..m.cols())
                    .map(|c| {
                        m.get(r, c)
                            .as_rational()
                            .map(|q| q.to_string())
                            .ok_or_else(|| RepError::Json("non-rational entry".into()))
                    })
                    .collect::<Result<_, _>>()
            })
            .collect::<Result<_, _>>()?;
        maps.insert(format!("{x}->{y}"), json!(rows));
    }
    Ok(json!({ "poset": poset, "dims": rep.dims, "maps": maps }))
}

pub fn rep_from_json(v: &Value) -> Result<PosetRep, RepError> {
    let poset = Poset::from_json(
        &serde_json::to_string(v.get("poset").ok_or_else(|| RepError::Json("missing poset".into()))?)
            .map_err(|e| RepError::Json(e.to_string()))?,
    )
    .map_err(|e| RepError::Json(e.to_string()))?;
    let dims: Vec<usize> = serde_json::from_value(
        v.get("dims")
            .ok_or_else(|| RepError::Json("missing dims".into()))?
            .clone(),
    )
    .map_err(|e| RepError::Json(e.to_string()))?;
    let raw: BTreeMap<String, Vec<Vec<String>>> = serde_json::from_value(
        v.get("maps")
            .ok_or_else(|| RepError::Json("missing maps".into()))?
            .clone(),
    )
    .map_err(|e| RepError::Json(e.to_string()))?;
    let mut maps = BTreeMap::new();
    for (key, rows) in raw {
        let (x, y) = key
            .split_once("->")
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| RepError::Json(format!("bad edge key {key:?}")))?;
        if x >= dims.len() || y >= dims.len() {
            return Err(RepError::Json(format!("edge key {key:?} out of range")));
        }
        // matrix shape comes from dims (rows may be empty for 0-dim spaces)
        let (r, c) = (dims[y], dims[x]);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            for s in row {
                let q = BigRational::from_str(s)
                    .map_err(|e| RepError::Json(format!("bad rational {s:?}: {e}")))?;
                data.push(ExactScalar::from_rational(q));
            }
        }
        if data.len() != r * c {
            return Err(RepError::Json(format!("edge {key:?}: wrong matrix shape")));
        }
        maps.insert((x, y), ExactMatrix::new(r, c, data));
    }
    PosetRep::new(poset, dims, maps)
}
