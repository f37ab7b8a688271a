//! Dense complex matrices and the Hermitian routines the quantum instance
//! needs: Jacobi eigendecomposition, PSD square roots, Löwner order and
//! kernels.
//!
//! Matrix literal format: a `rows cols` header followed by `rows * cols`
//! entries written as `a+bi`, row-major. Whitespace, newlines and `;` all
//! separate tokens.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-8;
const KERNEL_TOL: f64 = 1e-8;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self { rows, cols, data }
    }

    /// Row-major entries; fails when `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Row-major real entries. Panics on a length mismatch.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Self {
            rows,
            cols,
            data: data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn column_vector(entries: &[Complex64]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(entries[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// `v v†` for a column vector `v`.
    pub fn outer(v: &ComplexMatrix) -> Self {
        v * &v.adjoint()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> ComplexMatrix {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    /// The `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ComplexMatrix {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "block out of range"
        );
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        op: &'static str,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// `self` stacked on top of `other`; column counts must agree.
    pub fn vstack(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Largest `|a_ij - conj(a_ji)|`; infinite for non-square matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> ComplexMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// `|A† A - I|` measured entrywise.
    pub fn isometry_deviation(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&ComplexMatrix::identity(self.cols))
    }

    /// Literal with `digits` decimals, one matrix row per line.
    pub fn to_literal(&self, digits: usize) -> String {
        let mut out = format!("{} {}", self.rows, self.cols);
        for i in 0..self.rows {
            out.push('\n');
            let row: Vec<String> = (0..self.cols)
                .map(|j| format_complex(self[(i, j)], digits))
                .collect();
            out.push_str(&row.join(" "));
        }
        out
    }

    /// Single-line literal with rows separated by `;`.
    pub fn to_literal_line(&self, digits: usize) -> String {
        self.to_literal(digits).replace('\n', "; ")
    }

    pub fn parse_literal(text: &str) -> Result<ComplexMatrix> {
        let mut tokens = text
            .split(|c: char| c.is_whitespace() || c == ';' || c == ',')
            .filter(|t| !t.is_empty());
        let mut dim = |what: &str| -> Result<usize> {
            let tok = tokens.next().ok_or_else(|| {
                Error::Parse(format!("matrix literal is missing the {what} count"))
            })?;
            tok.parse()
                .map_err(|_| Error::Parse(format!("bad {what} count `{tok}` in matrix literal")))
        };
        let rows = dim("row")?;
        let cols = dim("column")?;
        let data = tokens.map(parse_complex).collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_vec(rows, cols, data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

// The operator forms panic on shape mismatch; fallible callers use
// `matmul`, `try_add` and `try_sub`.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal(9))
    }
}

/// `a+bi` with `digits` decimals; negative zeros are printed as zeros.
pub fn format_complex(z: Complex64, digits: usize) -> String {
    let re = format_real(z.re, digits);
    let im = format_real(z.im, digits);
    match im.strip_prefix('-') {
        Some(abs) => format!("{re}-{abs}i"),
        None => format!("{re}+{im}i"),
    }
}

/// Fixed-point real with `digits` decimals and no negative zero.
pub fn format_real(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i` (exponents allowed).
pub fn parse_complex(token: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("bad complex number `{token}`"));
    let real = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let Some(body) = token.strip_suffix('i') else {
        return Ok(Complex64::new(real(token)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real(s)?,
    };
    Ok(Complex64::new(re, im))
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOL * a.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come out descending (ties keep the original column order).
/// Vectors inside a cluster of eigenvalues closer than `1e-8` are
/// re-orthonormalized, and every vector is rotated so that its first
/// component of largest modulus is real and nonnegative.
pub fn eigen_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(a)?;
    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let off_norm = |m: &ComplexMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&m) < threshold;
    let mut sweep = 0;
    while !converged && sweep < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweep += 1;
        converged = off_norm(&m) < threshold;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: sweep });
    }

    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut columns: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (values[end - 1] - values[end]).abs() < CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt(&mut columns[start..end]);
        }
        start = end;
    }
    for col in &mut columns {
        fix_phase(col);
    }

    let vectors = ComplexMatrix::from_fn(n, n, |i, k| columns[k][i]);
    Ok(HermitianEigen { values, vectors })
}

/// One complex Jacobi rotation annihilating `m[p][q]`.
///
/// The rotation is `J = D R` with `D = diag(1, e^{-iφ})` on the `(p, q)`
/// plane, `φ = arg m[p][q]`, and `R` the real Jacobi rotation of the
/// resulting real symmetric 2x2 block. `m ← J† m J`, `v ← v J`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 || !r.is_normal() {
        return;
    }
    let n = m.rows;
    let phase = apq / r;
    let (a, b) = (m[(p, p)].re, m[(q, q)].re);
    let tau = (b - a) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * j_pp + mkq * j_qp;
        m[(k, q)] = mkp * j_pq + mkq * j_qq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = j_pp.conj() * mpk + j_qp.conj() * mqk;
        m[(q, k)] = j_pq.conj() * mpk + j_qq.conj() * mqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..v.rows {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

fn gram_schmidt(columns: &mut [Vec<Complex64>]) {
    for k in 0..columns.len() {
        let (done, rest) = columns.split_at_mut(k);
        let col = &mut rest[0];
        for prev in done.iter() {
            let proj: Complex64 = prev.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, p) in col.iter_mut().zip(prev) {
                *x -= proj * p;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in col.iter_mut() {
                *x /= norm;
            }
        }
    }
}

fn fix_phase(col: &mut [Complex64]) {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = col
        .iter()
        .position(|z| z.norm() >= max - 1e-12)
        .expect("a component attains the maximum");
    let rot = col[pivot].conj() / col[pivot].norm();
    for z in col.iter_mut() {
        *z *= rot;
    }
    col[pivot] = Complex64::new(col[pivot].re, 0.0);
}

/// Principal square root `V diag(√λ) V†` of a PSD matrix. Eigenvalues in
/// `[-1e-9, 0)` are treated as zero.
pub fn sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigen_hermitian(a)?;
    if let Some(&min) = eig.values.last() {
        if min < -tolerance::eps() {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()).hermitian_part())
}

/// Smallest eigenvalue is at least `-ε`.
pub fn is_psd(a: &ComplexMatrix) -> Result<bool> {
    let eig = eigen_hermitian(a)?;
    Ok(eig
        .values
        .last()
        .is_none_or(|&min| min >= -tolerance::eps()))
}

/// Löwner order: `a ≤ b` iff `b - a` is PSD.
pub fn loewner_leq(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    is_psd(&b.try_sub(a)?)
}

pub fn trace(a: &ComplexMatrix) -> Complex64 {
    a.trace()
}

/// Orthonormal basis (as columns) of the eigenspace of eigenvalues with
/// modulus below `1e-8`; an `n x 0` matrix when the kernel is trivial.
pub fn kernel_basis(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigen_hermitian(a)?;
    let n = a.rows;
    let cols: Vec<usize> = (0..n)
        .filter(|&k| eig.values[k].abs() < KERNEL_TOL)
        .collect();
    Ok(ComplexMatrix::from_fn(n, cols.len(), |i, j| {
        eig.vectors[(i, cols[j])]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_eigenvalues_sorted_descending() {
        let eig = eigen_hermitian(&ComplexMatrix::diagonal(&[0.25, 1.0])).unwrap();
        assert_eq!(eig.values, vec![1.0, 0.25]);
        assert!(eig.vectors.approx_eq(
            &ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            1e-15
        ));
    }

    #[test]
    fn two_by_two_against_characteristic_polynomial() {
        // (1/8)[[3,1],[1,3]]: trace 3/4, det 1/8, so λ² - 3λ/4 + 1/8 = 0.
        let a = ComplexMatrix::from_real(2, 2, &[3.0, 1.0, 1.0, 3.0]).scale_real(0.125);
        let (tr, det) = (0.75f64, 0.125f64);
        let disc = (tr * tr - 4.0 * det).sqrt();
        let expected = [(tr + disc) / 2.0, (tr - disc) / 2.0];
        let eig = eigen_hermitian(&a).unwrap();
        assert!((eig.values[0] - expected[0]).abs() < 1e-14);
        assert!((eig.values[1] - expected[1]).abs() < 1e-14);
        assert!((expected[0] - 0.5).abs() < 1e-15 && (expected[1] - 0.25).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = eig.vectors.column(0);
        let v1 = eig.vectors.column(1);
        assert!(v0.approx_eq(&ComplexMatrix::from_real(2, 1, &[h, h]), 1e-12));
        assert!(v1.approx_eq(&ComplexMatrix::from_real(2, 1, &[h, -h]), 1e-12));
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let a = ComplexMatrix::from_vec(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let eig = eigen_hermitian(&a).unwrap();
        assert!((eig.values[0] - 3.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
        assert!(eig.reconstruct().approx_eq(&a, 1e-12));
        for k in 0..2 {
            let col = eig.vectors.column(k);
            let av = &a * &col;
            assert!(av.approx_eq(&col.scale_real(eig.values[k]), 1e-12));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            eigen_hermitian(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
        let skew = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            eigen_hermitian(&skew),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn degenerate_identity() {
        let eig = eigen_hermitian(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(eig.values, vec![1.0; 4]);
        assert!(eig.vectors.approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn square_roots() {
        let id = ComplexMatrix::identity(3);
        assert!(sqrt_psd(&id).unwrap().approx_eq(&id, 1e-14));

        let proj = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(sqrt_psd(&proj).unwrap().approx_eq(&proj, 1e-12));

        let d = sqrt_psd(&ComplexMatrix::diagonal(&[0.25, 1.0])).unwrap();
        assert!(d.approx_eq(&ComplexMatrix::diagonal(&[0.5, 1.0]), 1e-15));

        let tiny_negative = ComplexMatrix::diagonal(&[1.0, -5e-10]);
        assert!(sqrt_psd(&tiny_negative)
            .unwrap()
            .approx_eq(&ComplexMatrix::diagonal(&[1.0, 0.0]), 1e-15));

        let negative = ComplexMatrix::diagonal(&[1.0, -1e-3]);
        assert!(matches!(sqrt_psd(&negative), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn loewner_trace_kernel() {
        assert!(loewner_leq(&ComplexMatrix::zeros(2, 2), &ComplexMatrix::identity(2)).unwrap());
        assert!(!loewner_leq(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(2, 2)).unwrap());
        assert!(loewner_leq(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(3, 3)).is_err());

        let ket0 = ComplexMatrix::from_real(2, 1, &[1.0, 0.0]);
        assert_eq!(trace(&ComplexMatrix::outer(&ket0)), ONE);

        let k = kernel_basis(&ComplexMatrix::diagonal(&[0.0, 1.0])).unwrap();
        assert_eq!(k.shape(), (2, 1));
        assert!(k.approx_eq(&ket0, 1e-15));
        assert_eq!(
            kernel_basis(&ComplexMatrix::identity(2)).unwrap().shape(),
            (2, 0)
        );
    }

    #[test]
    fn complex_token_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("-0.5+0.25i").unwrap(), c(-0.5, 0.25));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("1e-3+2E-2i").unwrap(), c(1e-3, 2e-2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn literal_format() {
        let m = ComplexMatrix::from_vec(1, 2, vec![c(0.25, 0.0), c(-1e-12, -0.5)]).unwrap();
        assert_eq!(
            m.to_literal(9),
            "1 2\n0.250000000+0.000000000i 0.000000000-0.500000000i"
        );
        assert!(
            ComplexMatrix::parse_literal(&m.to_literal(17))
                .unwrap()
                .max_abs_diff(&m)
                < 1e-16
        );
        assert!(ComplexMatrix::parse_literal("2 2 1 0 0").is_err());
    }
}
