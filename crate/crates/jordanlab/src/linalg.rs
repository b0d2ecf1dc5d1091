//! Dense matrices over exact rings.
//!
//! Elimination uses unit pivots only, which makes one code path serve fields
//! and local Weil algebras over fields. Integer matrices go through Hermite and
//! Smith forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rings::{Ring, RingKind, Value};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("column span is not a direct summand")]
    NotSummand,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("operation unsupported over {0}")]
    UnsupportedRing(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| self.ring.format(self.get(r, c))).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_values(ring: &Ring, rows: usize, cols: usize, data: Vec<Value>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "data length");
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| ring.from_i64(v))).collect();
        Matrix::from_values(ring, r, c, data)
    }

    /// Builds a matrix from entry strings in row-major order.
    pub fn parse(ring: &Ring, rows: &[Vec<String>]) -> Result<Matrix, crate::rings::RingError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for s in row {
                data.push(ring.parse_element(s)?);
            }
        }
        Ok(Matrix::from_values(ring, r, c, data))
    }

    /// Parses the display form `[a, b; c, d]`.
    pub fn parse_text(ring: &Ring, s: &str) -> Result<Matrix, crate::rings::RingError> {
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s.trim());
        let rows: Vec<Vec<String>> = inner.split(';').map(|r| r.split(',').map(|e| e.trim().to_string()).collect()).collect();
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(crate::rings::RingError::BadElement(s.into(), ring.to_string(), "ragged matrix rows".into()));
        }
        Matrix::parse(ring, &rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.ring.format(self.get(r, c))).collect()).collect()
    }

    pub fn column_vector(ring: &Ring, v: Vec<Value>) -> Matrix {
        let n = v.len();
        Matrix::from_values(ring, n, 1, v)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Value] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Value {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Value) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Value> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Value>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn from_columns(ring: &Ring, rows: usize, cols: &[Vec<Value>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn map(&self, ring: &Ring, f: impl Fn(&Value) -> Value) -> Matrix {
        Matrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.ring.is_zero(v))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch in add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch in sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.map(&self.ring, |v| self.ring.neg(v))
    }

    pub fn scale(&self, s: &Value) -> Matrix {
        self.map(&self.ring, |v| self.ring.mul(s, v))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let r = &self.ring;
        let mut m = Matrix::zeros(r, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    m.data[idx] = r.add(&m.data[idx], &r.mul(a, b));
                }
            }
        }
        m
    }

    pub fn hcat(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows, "shape mismatch in hcat");
        let mut m = Matrix::zeros(&self.ring, self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..o.cols {
                m.set(r, self.cols + c, o.get(r, c).clone());
            }
        }
        m
    }

    pub fn vcat(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "shape mismatch in vcat");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { ring: self.ring.clone(), rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, r0: usize, rn: usize, c0: usize, cn: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.ring, rn, cn);
        for r in 0..rn {
            for c in 0..cn {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.ring, self.rows + o.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..o.rows {
            for c in 0..o.cols {
                m.set(self.rows + r, self.cols + c, o.get(r, c).clone());
            }
        }
        m
    }

    fn supports_elimination(&self) -> bool {
        self.ring.is_local_over_field()
    }

    /// Canonical basis of the column span.
    ///
    /// Over a field or a local Weil algebra over a field: columns normalized to
    /// the identity on the pivot rows, pivot rows chosen top-down as the first
    /// row where a remaining vector has a unit entry. Over Z: Hermite basis,
    /// provided the span is a direct summand.
    pub fn canonical_span(&self) -> Result<Matrix, LinalgError> {
        if matches!(self.ring.kind(), RingKind::Integers) {
            return self.integer_span();
        }
        if !self.supports_elimination() {
            return Err(LinalgError::UnsupportedRing(self.ring.to_string()));
        }
        let r = &self.ring;
        let n = self.rows;
        let mut vecs = self.columns();
        let mut pivoted: Vec<(usize, usize)> = vec![]; // (row, vec index)
        let mut free: Vec<bool> = vec![true; vecs.len()];
        for row in 0..n {
            let Some(i) = (0..vecs.len()).find(|&i| free[i] && r.is_unit(&vecs[i][row])) else { continue };
            let inv = r.inv(&vecs[i][row]).unwrap();
            for v in vecs[i].iter_mut() {
                *v = r.mul(v, &inv);
            }
            let piv = vecs[i].clone();
            for (j, v) in vecs.iter_mut().enumerate() {
                if j == i || r.is_zero(&v[row]) {
                    continue;
                }
                let f = v[row].clone();
                for (x, p) in v.iter_mut().zip(&piv) {
                    *x = r.sub(x, &r.mul(&f, p));
                }
            }
            free[i] = false;
            pivoted.push((row, i));
        }
        if (0..vecs.len()).any(|i| free[i] && vecs[i].iter().any(|x| !r.is_zero(x))) {
            return Err(LinalgError::NotSummand);
        }
        let cols: Vec<Vec<Value>> = pivoted.iter().map(|&(_, i)| vecs[i].clone()).collect();
        Ok(Matrix::from_columns(r, n, &cols))
    }

    fn int_entries(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| match self.get(r, c) {
                        Value::Int(x) => x.clone(),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect()
    }

    fn integer_span(&self) -> Result<Matrix, LinalgError> {
        // row-style Hermite form of the transpose
        let vecs = self.transpose().int_entries();
        let h = hermite_rows(vecs, self.rows);
        if h.is_empty() {
            return Ok(Matrix::zeros(&self.ring, self.rows, 0));
        }
        if elementary_divisors(&h).iter().any(|d| !d.is_one()) {
            return Err(LinalgError::NotSummand);
        }
        let cols: Vec<Vec<Value>> = h.into_iter().map(|row| row.into_iter().map(Value::Int).collect()).collect();
        Ok(Matrix::from_columns(&self.ring, self.rows, &cols))
    }

    /// Rank of the column span (fields and local rings: rank of the free part).
    pub fn rank(&self) -> Result<usize, LinalgError> {
        if matches!(self.ring.kind(), RingKind::Integers) {
            return Ok(hermite_rows(self.transpose().int_entries(), self.rows).len());
        }
        if !self.supports_elimination() {
            return Err(LinalgError::UnsupportedRing(self.ring.to_string()));
        }
        let res = self.ring.residue_field();
        let m = self.map(&res, |v| self.ring.residue(v));
        Ok(m.canonical_span()?.cols)
    }

    /// Reduced row echelon form with unit pivots; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let r = self.ring.clone();
        let mut pivots = vec![];
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| r.is_unit(self.get(i, col))) else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = r.inv(self.get(row, col)).unwrap();
            for c in 0..self.cols {
                let v = r.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for i in 0..self.rows {
                if i == row || r.is_zero(self.get(i, col)) {
                    continue;
                }
                let f = self.get(i, col).clone();
                for c in 0..self.cols {
                    let v = r.sub(self.get(i, c), &r.mul(&f, self.get(row, c)));
                    self.set(i, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Solves A x = b.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        if matches!(self.ring.kind(), RingKind::Integers) {
            return self.solve_integer(b);
        }
        if !self.supports_elimination() {
            return Err(LinalgError::UnsupportedRing(self.ring.to_string()));
        }
        let r = &self.ring;
        let mut aug = self.hcat(b);
        let pivots = aug.rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < self.cols).collect();
        for i in pivots.len()..self.rows {
            let a_zero = (0..self.cols).all(|c| r.is_zero(aug.get(i, c)));
            let b_zero = (0..b.cols).all(|c| r.is_zero(aug.get(i, self.cols + c)));
            if !a_zero {
                // nilpotent leftovers: the system is not over a free module
                return Err(LinalgError::UnsupportedRing(format!("{} (non-free system)", r)));
            }
            if !b_zero {
                return Err(LinalgError::NoSolution);
            }
        }
        let mut x = Matrix::zeros(r, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, aug.get(i, self.cols + c).clone());
            }
        }
        Ok(x)
    }

    fn to_rational(&self) -> Matrix {
        let q = Ring::rationals();
        self.map(&q, |v| match v {
            Value::Int(n) => Value::Rat(BigRational::from_integer(n.clone())),
            _ => unreachable!(),
        })
    }

    fn from_rational_integral(q: &Matrix) -> Option<Matrix> {
        let z = Ring::integers();
        let mut data = Vec::with_capacity(q.data.len());
        for v in &q.data {
            match v {
                Value::Rat(x) if x.is_integer() => data.push(Value::Int(x.numer().clone())),
                _ => return None,
            }
        }
        Some(Matrix::from_values(&z, q.rows, q.cols, data))
    }

    fn solve_integer(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        let xq = self.to_rational().solve(&b.to_rational())?;
        if let Some(x) = Matrix::from_rational_integral(&xq) {
            return Ok(x);
        }
        if self.rank()? == self.cols {
            Err(LinalgError::NoSolution)
        } else {
            Err(LinalgError::UnsupportedRing("Z (underdetermined system without integral particular solution)".into()))
        }
    }

    /// Two-sided inverse.
    pub fn invert(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        match self.ring.kind() {
            RingKind::Integers => {
                let qi = self.to_rational().invert()?;
                Matrix::from_rational_integral(&qi).ok_or(LinalgError::NotInvertible)
            }
            _ if self.supports_elimination() => {
                let mut aug = self.hcat(&Matrix::identity(&self.ring, n));
                let piv = aug.rref();
                if piv.len() < n || piv[n - 1] != n - 1 {
                    return Err(LinalgError::NotInvertible);
                }
                Ok(aug.submatrix(0, n, n, n))
            }
            _ => {
                let d = self.det();
                let di = self.ring.inv(&d).ok_or(LinalgError::NotInvertible)?;
                Ok(self.adjugate().scale(&di))
            }
        }
    }

    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        if self.rows == 0 {
            return true;
        }
        if self.supports_elimination() {
            let mut m = self.clone();
            return m.rref().len() == self.rows;
        }
        self.ring.is_unit(&self.det())
    }

    /// Determinant by cofactor expansion with division-free arithmetic; fine
    /// for the small sizes used here, and valid over any commutative ring.
    pub fn det(&self) -> Value {
        assert!(self.is_square());
        let r = &self.ring;
        let n = self.rows;
        if self.supports_elimination() {
            // unit-pivot elimination; a missing unit pivot on a local ring means
            // the residue determinant vanishes, handled by the cofactor route
            let mut m = self.clone();
            let mut det = r.one();
            let mut ok = true;
            for col in 0..n {
                let Some(p) = (col..n).find(|&i| r.is_unit(m.get(i, col))) else {
                    ok = false;
                    break;
                };
                if p != col {
                    for c in 0..n {
                        m.data.swap(p * n + c, col * n + c);
                    }
                    det = r.neg(&det);
                }
                let pv = m.get(col, col).clone();
                det = r.mul(&det, &pv);
                let inv = r.inv(&pv).unwrap();
                for i in col + 1..n {
                    if r.is_zero(m.get(i, col)) {
                        continue;
                    }
                    let f = r.mul(m.get(i, col), &inv);
                    for c in col..n {
                        let v = r.sub(m.get(i, c), &r.mul(&f, m.get(col, c)));
                        m.set(i, c, v);
                    }
                }
            }
            if ok {
                return det;
            }
            if r.is_field() {
                return r.zero();
            }
        }
        self.det_cofactor()
    }

    fn det_cofactor(&self) -> Value {
        let r = &self.ring;
        let n = self.rows;
        if n == 0 {
            return r.one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = r.zero();
        for c in 0..n {
            let a = self.get(0, c);
            if r.is_zero(a) {
                continue;
            }
            let t = r.mul(a, &self.minor(0, c).det_cofactor());
            acc = if c % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> Matrix {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_values(&self.ring, n - 1, n - 1, data)
    }

    fn adjugate(&self) -> Matrix {
        let n = self.rows;
        let r = &self.ring;
        let mut m = Matrix::zeros(r, n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).det_cofactor();
                m.set(j, i, if (i + j) % 2 == 0 { d } else { r.neg(&d) });
            }
        }
        m
    }

    /// Hermite normal form of the rows of an integer matrix (nonzero rows only).
    pub fn hermite_rows(&self) -> Result<Matrix, LinalgError> {
        if !matches!(self.ring.kind(), RingKind::Integers) {
            return Err(LinalgError::UnsupportedRing(self.ring.to_string()));
        }
        let h = hermite_rows(self.int_entries(), self.cols);
        let data = h.iter().flatten().map(|x| Value::Int(x.clone())).collect();
        Ok(Matrix::from_values(&self.ring, h.len(), self.cols, data))
    }

    /// Smith invariants of an integer matrix (nonzero diagonal entries).
    pub fn smith_invariants(&self) -> Result<Vec<BigInt>, LinalgError> {
        if !matches!(self.ring.kind(), RingKind::Integers) {
            return Err(LinalgError::UnsupportedRing(self.ring.to_string()));
        }
        Ok(elementary_divisors(&self.int_entries()))
    }
}

/// Row Hermite normal form: positive pivots, entries above pivots reduced
/// into `[0, pivot)`, zero rows dropped.
fn hermite_rows(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        loop {
            // move the smallest nonzero |entry| at or below `row` into place
            let Some(p) = (row..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            else {
                break;
            };
            a.swap(row, p);
            let mut done = true;
            for i in row + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[row][col]);
                let pr = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < a.len() && !a[row][col].is_zero() {
            if a[row][col].is_negative() {
                for x in a[row].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = a[row].clone();
            for i in 0..row {
                let q = a[i][col].div_floor(&pr[col]);
                if q.is_zero() {
                    continue;
                }
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
            row += 1;
        }
    }
    a.truncate(row);
    a
}

/// Nonzero Smith invariants by alternating row and column reduction.
fn elementary_divisors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![];
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a1, b1), &(a2, b2)| m[a1][b1].abs().cmp(&m[a2][b2].abs()))
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                let pr = m[t].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for row in m.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let p = m[t][t].clone();
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p))) {
            let ri = m[i].clone();
            for (x, y) in m[t].iter_mut().zip(&ri) {
                *x += y;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn echelon_over_f2() {
        let r = f(2);
        let m = Matrix::from_i64(&r, &[&[1, 0], &[1, 1]]);
        assert_eq!(m.canonical_span().unwrap(), Matrix::identity(&r, 2));
    }

    #[test]
    fn integer_non_summand() {
        let z = Ring::integers();
        let m = Matrix::from_i64(&z, &[&[2], &[4]]);
        assert_eq!(m.canonical_span(), Err(LinalgError::NotSummand));
        let prim = Matrix::from_i64(&z, &[&[-2], &[3]]);
        assert_eq!(prim.canonical_span().unwrap(), Matrix::from_i64(&z, &[&[2], &[-3]]));
        assert_eq!(Matrix::from_i64(&z, &[&[2, 0], &[0, 3]]).smith_invariants().unwrap(), vec![1.into(), 6.into()]);
    }

    #[test]
    fn dual_number_span() {
        let r: Ring = "Weil:Q[e^2]".parse().unwrap();
        let m = Matrix::from_values(&r, 2, 1, vec![r.parse_element("1+e").unwrap(), r.parse_element("e").unwrap()]);
        let c = m.canonical_span().unwrap();
        assert_eq!(c.column(0), vec![r.one(), r.parse_element("e").unwrap()]);
        let bad = Matrix::from_values(&r, 2, 1, vec![r.parse_element("e").unwrap(), r.zero()]);
        assert_eq!(bad.canonical_span(), Err(LinalgError::NotSummand));
        assert!(matches!(
            Matrix::from_i64(&Ring::modular(6).unwrap(), &[&[1], &[0]]).canonical_span(),
            Err(LinalgError::UnsupportedRing(_))
        ));
    }

    #[test]
    fn solving() {
        let r = f(3);
        let a = Matrix::from_i64(&r, &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_i64(&r, &[&[0], &[1]]);
        assert_eq!(a.solve(&b).unwrap(), Matrix::from_i64(&r, &[&[1], &[1]]));
        let d: Ring = "Weil:Q[e^2]".parse().unwrap();
        let a = Matrix::from_values(&d, 1, 1, vec![d.parse_element("1+e").unwrap()]);
        let x = a.solve(&Matrix::identity(&d, 1)).unwrap();
        assert_eq!(*x.get(0, 0), d.parse_element("1-e").unwrap());
        let q = Ring::rationals();
        let sing = Matrix::from_i64(&q, &[&[1, 1], &[1, 1]]);
        assert_eq!(sing.solve(&Matrix::from_i64(&q, &[&[1], &[2]])), Err(LinalgError::NoSolution));
    }

    #[test]
    fn inverses() {
        let r = f(7);
        let swap = Matrix::from_i64(&r, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        let z = Ring::integers();
        let u = Matrix::from_i64(&z, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.invert().unwrap(), Matrix::from_i64(&z, &[&[1, -1], &[0, 1]]));
        assert_eq!(Matrix::from_i64(&z, &[&[2, 0], &[0, 1]]).invert(), Err(LinalgError::NotInvertible));
        let d: Ring = "Weil:Q[e^2]".parse().unwrap();
        let e = d.generator(0);
        let mut n = Matrix::identity(&d, 2);
        n.set(0, 1, e.clone());
        let mut ni = Matrix::identity(&d, 2);
        ni.set(0, 1, d.neg(&e));
        assert_eq!(n.invert().unwrap(), ni);
        let zn = Ring::modular(6).unwrap();
        let m = Matrix::from_i64(&zn, &[&[2, 3], &[3, 2]]);
        let mi = m.invert().unwrap();
        assert_eq!(m.mul(&mi), Matrix::identity(&zn, 2));
    }

    #[test]
    fn determinants() {
        let q = Ring::rationals();
        let m = Matrix::from_i64(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), q.from_i64(18));
        let d: Ring = "Weil:Q[e^2]".parse().unwrap();
        let e = d.generator(0);
        let m = Matrix::from_values(&d, 2, 2, vec![e.clone(), d.one(), d.one(), e.clone()]);
        assert_eq!(m.det(), d.from_i64(-1));
        let m = Matrix::from_values(&d, 2, 2, vec![e.clone(), d.zero(), d.zero(), d.one()]);
        assert_eq!(m.det(), e);
    }
}
