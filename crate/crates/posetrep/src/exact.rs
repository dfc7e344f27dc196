//! Exact scalar and matrix arithmetic.
//!
//! Scalars are elements `a + b*sqrt(d)` of a quadratic extension of the
//! rationals, with `d` a fixed square-free radicand (`d = 0` marks a pure
//! rational). All arithmetic is exact; there is no floating point anywhere
//! in the certification path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("matrix entries are not rational integers")]
    NonIntegral,
}

/// `a + b*sqrt(d)`. Invariant: `b == 0` implies `d == 0`, so equality and
/// hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn brat(n: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(den))
}

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        let d = if b.is_zero() { 0 } else { d };
        debug_assert!(b.is_zero() || d >= 2);
        ExactScalar { a, b, d }
    }

    pub fn from_rational(a: BigRational) -> Self {
        ExactScalar { a, b: BigRational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(brat(n, 1))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(brat(num, den))
    }

    /// `(p + q*sqrt(d)) / r`.
    pub fn quadratic(p: i64, q: i64, r: i64, d: u64) -> Self {
        Self::new(brat(p, r), brat(q, r), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    fn join_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d1, d2) => {
                assert_eq!(d1, d2, "mixed radicands {d1} and {d2}");
                d1
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.join_radicand(other);
        Self::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.join_radicand(other);
        Self::new(&self.a - &other.a, &self.b - &other.b, d)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.join_radicand(other);
        let rad = BigRational::from(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * &rad;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, d)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Self::from_rational(self.a.recip());
        }
        // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2)
        let rad = BigRational::from(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * rad;
        assert!(!norm.is_zero(), "sqrt({}) is rational?", self.d);
        Self::new(&self.a / &norm, -&self.b / &norm, self.d)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Exact sign of `a + b*sqrt(d)` by case analysis on the signs of `a`
    /// and `b` and comparison of `a^2` with `d*b^2`.
    pub fn sign(&self) -> Ordering {
        let sa = ord_of(&self.a);
        let sb = ord_of(&self.b);
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (s1, s2) if s1 == s2 => s1,
            (s1, _) => {
                // a and b have opposite signs: compare a^2 with d b^2.
                let rad = BigRational::from(BigInt::from(self.d));
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * rad;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s1,
                    Ordering::Less => s1.reverse(),
                    Ordering::Equal => {
                        unreachable!("sqrt({}) is rational?", self.d)
                    }
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Floating approximation, for diagnostics and cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

fn ord_of(x: &BigRational) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Classification of a symmetric matrix by exact symmetric Gaussian
/// elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite { corank: usize },
    Indefinite,
}

/// Dense matrix of [`ExactScalar`]s. All entries share one radicand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ExactMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![ExactScalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| ExactScalar::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ExactScalar::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).neg())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mul(s))
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self.get(row, col).inv();
            for j in col..self.cols {
                let v = self.get(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i != row && !self.get(i, col).is_zero() {
                    let f = self.get(i, col).clone();
                    for j in col..self.cols {
                        let v = self.get(i, j).sub(&f.mul(self.get(row, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Exact basis of `{x : Mx = 0}`, one column vector per basis element.
    pub fn nullspace(&self) -> Vec<ExactMatrix> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = ExactMatrix::zeros(self.cols, 1);
            v.set(f, 0, ExactScalar::one());
            for (r, &p) in pivots.iter().enumerate() {
                // reduced form: x_p = -sum_{free c} m[r][c] x_c
                v.set(p, 0, m.get(r, f).neg());
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = ExactMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        });
        let pivots = aug.echelonize();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn rational_grid(&self) -> Result<Vec<Vec<BigRational>>, ExactError> {
        let mut grid = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                match self.get(i, j).as_rational() {
                    Some(r) => row.push(r.clone()),
                    None => return Err(ExactError::NonIntegral),
                }
            }
            grid.push(row);
        }
        Ok(grid)
    }

    /// Exact definiteness classification of a symmetric rational matrix.
    ///
    /// Symmetric elimination with rational pivots; the semidefinite corank is
    /// the zero-pivot count, cross-checked against the nullspace dimension.
    pub fn definiteness(&self) -> Result<Definiteness, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare { rows: self.rows, cols: self.cols });
        }
        if !self.is_symmetric() {
            return Err(ExactError::NonSymmetric);
        }
        let mut s = self.rational_grid()?;
        let n = self.rows;
        let mut active: Vec<usize> = (0..n).collect();
        let mut zero_pivots = 0usize;
        loop {
            if active.is_empty() {
                break;
            }
            let diag = active.iter().copied().find(|&i| !s[i][i].is_zero());
            match diag {
                Some(i) => {
                    if s[i][i].is_negative() {
                        return Ok(Definiteness::Indefinite);
                    }
                    let piv = s[i][i].clone();
                    active.retain(|&k| k != i);
                    for &j in &active {
                        if s[i][j].is_zero() {
                            continue;
                        }
                        let fj = &s[i][j] / &piv;
                        for &k in &active {
                            let delta = &fj * &s[i][k];
                            s[j][k] = &s[j][k] - &delta;
                        }
                    }
                    for &j in &active {
                        s[i][j] = BigRational::zero();
                        s[j][i] = BigRational::zero();
                    }
                }
                None => {
                    // All remaining diagonal entries are zero. Any surviving
                    // off-diagonal entry gives an indefinite 2x2 block.
                    for (ai, &i) in active.iter().enumerate() {
                        for &j in &active[ai + 1..] {
                            if !s[i][j].is_zero() {
                                return Ok(Definiteness::Indefinite);
                            }
                        }
                    }
                    zero_pivots = active.len();
                    break;
                }
            }
        }
        if zero_pivots == 0 {
            Ok(Definiteness::PositiveDefinite)
        } else {
            let kernel_dim = self.nullspace().len();
            assert_eq!(
                kernel_dim, zero_pivots,
                "zero-pivot count disagrees with nullspace dimension"
            );
            Ok(Definiteness::PositiveSemidefinite { corank: zero_pivots })
        }
    }

    /// Monic characteristic polynomial `det(xI - M)` with exact integer
    /// coefficients. Computed by similarity reduction to Hessenberg form
    /// over the rationals.
    pub fn char_poly(&self) -> Result<IntPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut h = self.rational_grid()?;
        let n = self.rows;
        // Hessenberg reduction by similarity.
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap(p, j + 1);
                for row in h.iter_mut() {
                    row.swap(p, j + 1);
                }
            }
            let piv = h[j + 1][j].clone();
            for i in j + 2..n {
                if h[i][j].is_zero() {
                    continue;
                }
                let f = &h[i][j] / &piv;
                for c in 0..n {
                    let delta = &f * &h[j + 1][c];
                    h[i][c] = &h[i][c] - &delta;
                }
                for r in 0..n {
                    let delta = &f * &h[r][i];
                    h[r][j + 1] = &h[r][j + 1] + &delta;
                }
            }
        }
        // Recurrence for characteristic polynomials of leading principal
        // Hessenberg blocks.
        let mut polys: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
        for k in 1..=n {
            let mut p = poly_mul_linear(&polys[k - 1], &h[k - 1][k - 1]);
            let mut subprod = BigRational::one();
            for i in (1..k).rev() {
                // product of subdiagonal entries h[i][i-1] .. h[k-1][k-2]
                subprod = &subprod * &h[i][i - 1];
                if subprod.is_zero() {
                    break;
                }
                let coef = &h[i - 1][k - 1] * &subprod;
                poly_sub_scaled(&mut p, &polys[i - 1], &coef);
            }
            polys.push(p);
        }
        let coeffs = polys
            .pop()
            .unwrap()
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(ExactError::NonIntegral)
                }
            })
            .collect::<Result<Vec<BigInt>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

/// `p(x) * (x - c)`.
fn poly_mul_linear(p: &[BigRational], c: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (i, coef) in p.iter().enumerate() {
        out[i + 1] = &out[i + 1] + coef;
        out[i] = &out[i] - &(coef * c);
    }
    out
}

/// `p -= coef * q`.
fn poly_sub_scaled(p: &mut [BigRational], q: &[BigRational], coef: &BigRational) {
    for (i, qc) in q.iter().enumerate() {
        p[i] = &p[i] - &(qc * coef);
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Integer polynomial, coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluate the polynomial at a square matrix (Cayley-Hamilton checks).
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zeros(n, n);
        let mut power = ExactMatrix::identity(n);
        for c in &self.coeffs {
            let s = ExactScalar::from_rational(BigRational::from(c.clone()));
            acc = acc.sub(&power.scale(&s).neg());
            power = power.mul(m);
        }
        acc
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.magnitude();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
