//! Dense matrices over `Scalar` with exact determinants and inverses.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational, Scalar};

#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn try_from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Result<Scalar>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::schema("matrix", "rows have different lengths"));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Scalar::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix on the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Remove one row and one column.
    pub fn without(&self, row: usize, col: usize) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.select(&rs, &cs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn has_series(&self) -> bool {
        self.data.iter().any(Scalar::is_series)
    }

    /// Entrywise agreement (series compared to their common precision).
    pub fn agrees(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.agrees(b))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.agrees(&Self::identity(self.rows))
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::domain(format!("matrix is {}x{}, not square", self.rows, self.cols)));
        }
        Ok(())
    }

    /// Exact determinant. Rationals go through fraction-free Bareiss
    /// elimination on integer rows; series use unit-pivot elimination and
    /// fall back to the division-free Berkowitz recursion.
    pub fn determinant(&self) -> Result<Scalar> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        if self.has_series() {
            if let Some(d) = self.unit_pivot_det() {
                return Ok(d);
            }
            return Ok(self.berkowitz_det());
        }
        let rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.as_rational().cloned().expect("rational")).collect())
            .collect();
        Ok(Scalar::Rational(bareiss_rational(rows)))
    }

    fn unit_pivot_det(&self) -> Option<Scalar> {
        if self.data.iter().any(|x| x.valuation().is_some_and(|v| v < 0)) {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Scalar::one();
        for k in 0..n {
            let p = (k..n).find(|&i| a[i][k].valuation() == Some(0))?;
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let inv = a[k][k].inv().ok()?;
            det = &det * &a[k][k];
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] * &inv;
                let (top, bottom) = a.split_at_mut(i);
                for (x, p) in bottom[0][k..n].iter_mut().zip(&top[k][k..n]) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        Some(det)
    }

    /// Coefficients [1, c_1, …, c_n] of det(λI − A), division free.
    pub fn charpoly(&self) -> Result<Vec<Scalar>> {
        self.require_square()?;
        Ok(berkowitz_vector(&self.to_rows(), 0))
    }

    fn berkowitz_det(&self) -> Scalar {
        let c = berkowitz_vector(&self.to_rows(), 0);
        let n = self.rows;
        let last = c[n].clone();
        if n.is_multiple_of(2) {
            last
        } else {
            -last
        }
    }

    /// Exact inverse; `Error::Singular` when the determinant vanishes.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Self::identity(0));
        }
        if self.has_series() {
            if let Some(inv) = self.unit_pivot_inverse() {
                return Ok(inv);
            }
            return self.adjugate_inverse();
        }
        self.rational_inverse()
    }

    fn rational_inverse(&self) -> Result<Self> {
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r: Vec<Rational> = self.row(i).iter().map(|x| x.constant_term()).collect();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or_else(|| Error::Singular("0".into()))?;
            a.swap(p, k);
            let inv = a[k][k].recip();
            for x in a[k].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k || row[k].is_zero() {
                    continue;
                }
                let f = row[k].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| Scalar::Rational(a[i][n + j].clone())))
    }

    fn unit_pivot_inverse(&self) -> Option<Self> {
        if self.data.iter().any(|x| x.valuation().is_some_and(|v| v < 0)) {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| a[i][k].valuation() == Some(0))?;
            a.swap(p, k);
            let inv = a[k][k].inv().ok()?;
            for x in a[k].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = a[k].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == k || row[k].is_zero() {
                    continue;
                }
                let f = row[k].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        Some(Self::from_fn(n, n, |i, j| a[i][n + j].clone()))
    }

    /// adj(A)/det(A) with the adjugate from Cayley–Hamilton.
    fn adjugate_inverse(&self) -> Result<Self> {
        let n = self.rows;
        let c = berkowitz_vector(&self.to_rows(), 0);
        let det = if n.is_multiple_of(2) { c[n].clone() } else { -c[n].clone() };
        if det.is_zero() {
            return Err(Error::Singular(det.to_string()));
        }
        let mut b = Self::identity(n);
        for ci in c.iter().take(n).skip(1) {
            b = self.mul(&b)?;
            for i in 0..n {
                let v = b.get(i, i) + ci;
                b.set(i, i, v);
            }
        }
        let sign = if n % 2 == 1 { Scalar::one() } else { Scalar::int(-1) };
        Ok(b.scale(&(&sign * &det.inv()?)))
    }
}

fn berkowitz_vector(m: &[Vec<Scalar>], s: usize) -> Vec<Scalar> {
    let n = m.len();
    let size = n - s;
    if size == 0 {
        return vec![Scalar::one()];
    }
    if size == 1 {
        return vec![Scalar::one(), -m[s][s].clone()];
    }
    let inner = berkowitz_vector(m, s + 1);
    // diags: 1, -a, -R C, -R A C, -R A^2 C, ...
    let mut diags = vec![Scalar::one(), -m[s][s].clone()];
    let mut v: Vec<Scalar> = (s + 1..n).map(|i| m[i][s].clone()).collect();
    for step in 0..size - 1 {
        let rv: Scalar = (s + 1..n).map(|j| &m[s][j] * &v[j - s - 1]).sum();
        diags.push(-rv);
        if step + 1 < size - 1 {
            v = (s + 1..n)
                .map(|i| (s + 1..n).map(|j| &m[i][j] * &v[j - s - 1]).sum())
                .collect();
        }
    }
    (0..=size)
        .map(|i| (0..size.min(i + 1)).map(|j| &diags[i - j] * &inner[j]).sum())
        .collect()
}

/// Determinant of a rational matrix: clear each row's denominators, run
/// Bareiss on integers, divide the scaling back out.
pub fn bareiss_rational(rows: Vec<Vec<Rational>>) -> Rational {
    let mut scale = BigInt::one();
    let mut ints: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    Rational::new(bareiss(&mut ints), scale)
}

/// Fraction-free elimination; the matrix is overwritten.
pub fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(p, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .data
            .iter()
            .map(|x| match x {
                Scalar::Rational(r) => format_rational(r),
                s => s.to_string(),
            })
            .collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j], width = width))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Leibniz-free reference determinant by cofactor expansion (test oracle).
pub fn cofactor_det(m: &ExactMatrix) -> Scalar {
    let n = m.rows();
    if n == 0 {
        return Scalar::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Scalar::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let t = m.get(0, j) * &cofactor_det(&m.without(0, j));
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}
