//! Dense complex matrices and vectors.
//!
//! Everything downstream (gates, circuits, protocol states) reduces to the
//! two types here. Storage is row-major `Vec<Complex64>`; values are treated
//! as immutable and every operation returns a fresh matrix.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::{Add, Mul, Sub};

pub use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shorthand constructor used throughout the crate.
#[inline]
pub const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{2πi·k/modulus}`, exact at multiples of `modulus/8`.
///
/// Exactness at the eighth-turn points keeps the QFT entries and the phase
/// gate literals bit-identical, so recipes like `qft_matrix(1) == H` hold
/// without rounding.
pub fn root_of_unity(k: u64, modulus: u64) -> Complex64 {
    assert!(modulus > 0, "modulus must be positive");
    let k = k % modulus;
    if (8 * k).is_multiple_of(modulus) {
        let r = FRAC_1_SQRT_2;
        return match 8 * k / modulus {
            0 => c(1.0, 0.0),
            1 => c(r, r),
            2 => c(0.0, 1.0),
            3 => c(-r, r),
            4 => c(-1.0, 0.0),
            5 => c(-r, -r),
            6 => c(0.0, -1.0),
            _ => c(r, -r),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / modulus as f64)
}

/// Absolute tolerance for Frobenius-norm comparisons.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-10;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(Self::DEFAULT_EPS)
    }
}

/// Result of comparing two matrices modulo a global phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseDistance {
    /// `min_φ ‖a − e^{iφ}·b‖_F`
    pub distance: f64,
    /// The minimizing `φ`, in `(−π, π]`.
    pub phase: f64,
}

/// Square matrix of `Complex64`, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::BadShape {
                dim,
                len: data.len(),
            });
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from a closure over `(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for col in 0..dim {
                data.push(f(r, col));
            }
        }
        ComplexMatrix { dim, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input; intended
    /// for literals.
    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        ComplexMatrix { dim: N, data }
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| c(x, 0.0)))
            .collect();
        ComplexMatrix { dim: N, data }
    }

    /// Diagonal matrix.
    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = e;
        }
        m
    }

    /// Permutation matrix sending basis state `x` to `perm(x)`.
    pub fn permutation(dim: usize, perm: impl Fn(usize) -> usize) -> Self {
        let mut m = Self::zeros(dim);
        for col in 0..dim {
            let row = perm(col);
            assert!(row < dim, "permutation image {row} out of range");
            m.data[row * dim + col] = ONE;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits when `dim` is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn column(&self, col: usize) -> ComplexVector {
        ComplexVector::new((0..self.dim).map(|r| self.get(r, col)).collect())
    }

    /// Matrix from column vectors; all columns must share the same length.
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let dim = columns.len();
        if dim == 0 {
            return Err(Error::BadShape { dim: 0, len: 0 });
        }
        let mut m = Self::zeros(dim);
        for (col, v) in columns.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
            for (r, &x) in v.as_slice().iter().enumerate() {
                m.data[r * dim + col] = x;
            }
        }
        Ok(m)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(ComplexMatrix { dim: n, data: out })
    }

    /// Kronecker product `self ⊗ other`; `other` occupies the low-order
    /// index bits.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        data[(i * m + k) * dim + j * m + l] = a * other.get(k, l);
                    }
                }
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let out = (0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v.as_slice())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(ComplexVector::new(out))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self.get(col, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self.get(col, r))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Reverses the row order (mirror about the horizontal mid-axis).
    /// For 2×2 matrices this is `X·a`.
    pub fn flip_h(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |r, col| self.get(n - 1 - r, col))
    }

    /// Reverses the column order (mirror about the vertical mid-axis).
    /// For 2×2 matrices this is `a·X`.
    pub fn flip_v(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |r, col| self.get(r, n - 1 - col))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Frobenius distance `‖self − other‖_F` without phase freedom.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        matches!(self.distance(other), Ok(d) if d < tol.eps())
    }

    /// `‖a†a − I‖_F`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = ZERO;
                for k in 0..n {
                    s += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    s -= ONE;
                }
                acc += s.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        self.unitarity_deviation() < tol.eps()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// One row per line, entries as `re+imi` separated by commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|col| format_complex(self.get(r, col)))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(',').map(|t| parse_complex(t.trim())).collect())
            .collect::<Result<_>>()?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Malformed("csv matrix is not square".into()));
        }
        ComplexMatrix::new(dim, rows.into_iter().flatten().collect())
    }
}

/// `min_φ ‖a − e^{iφ}·b‖_F` together with the minimizing phase.
///
/// The optimum is `φ = arg tr(b†a)`. When that trace vanishes the phase is
/// taken from the entry pair with the largest `|b_ij|`; when `b = 0` the
/// distance is `‖a‖_F`.
pub fn dist_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<PhaseDistance> {
    a.check_same_dim(b)?;
    let overlap: Complex64 = a.data.iter().zip(&b.data).map(|(x, y)| y.conj() * x).sum();
    let scale = a.frobenius_norm() * b.frobenius_norm();
    let phase = if overlap.norm() > scale * 1e-14 && overlap.norm() > 0.0 {
        overlap.arg()
    } else {
        let (idx, best) = b
            .data
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.norm().total_cmp(&y.norm()))
            .expect("matrices are non-empty");
        if best.norm() == 0.0 {
            return Ok(PhaseDistance {
                distance: a.frobenius_norm(),
                phase: 0.0,
            });
        }
        (best.conj() * a.data[idx]).arg()
    };
    let rot = Complex64::from_polar(1.0, phase);
    // Evaluated directly rather than through ‖a‖²+‖b‖²−2|tr| to avoid
    // cancellation near zero.
    let distance = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - rot * y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(PhaseDistance { distance, phase })
}

pub fn is_unitary(a: &ComplexMatrix, tol: Tolerance) -> bool {
    a.is_unitary(tol)
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|col| {
                    let z = self.get(r, col);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a
/// fallible product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs)
            .expect("matrix difference dimension mismatch")
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    re: f64,
    im: f64,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Entry>> = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|col| {
                        let z = self.get(r, col);
                        Entry { re: z.re, im: z.im }
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Entry>>::deserialize(d)?;
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(D::Error::custom(
                "matrix must be a non-empty square array of rows",
            ));
        }
        let data = rows.into_iter().flatten().map(|e| c(e.re, e.im)).collect();
        Ok(ComplexMatrix { dim, data })
    }
}

fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

fn parse_complex(t: &str) -> Result<Complex64> {
    let bad = || Error::Malformed(format!("bad complex entry `{t}`"));
    let body = t.strip_suffix('i').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].parse().map_err(|_| bad())?;
    Ok(c(re, im))
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        ComplexVector { data }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut data = vec![ZERO; dim];
        data[index] = ONE;
        ComplexVector { data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexVector {
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scale(c(1.0 / n, 0.0))
    }

    /// Euclidean distance modulo a global phase.
    pub fn dist_up_to_phase(&self, other: &Self) -> Result<f64> {
        let overlap = other.inner(self)?;
        let rot = if overlap.norm() > 0.0 {
            Complex64::from_polar(1.0, overlap.arg())
        } else {
            ONE
        };
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - rot * b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2 as R;

    fn h() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[R, R], [R, -R]])
    }

    fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let hh = h().matmul(&h()).unwrap();
        assert!(hh.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
    }

    #[test]
    fn identity_is_neutral() {
        let a = ComplexMatrix::from_rows([[c(1.0, 2.0), c(0.5, -1.0)], [c(3.0, 0.0), c(0.0, 4.0)]]);
        assert_eq!(ComplexMatrix::identity(2).matmul(&a).unwrap(), a);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let err = ComplexMatrix::identity(2)
            .matmul(&ComplexMatrix::identity(4))
            .unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 4 });
    }

    #[test]
    fn kron_identity_hadamard_on_zero_state() {
        let m = ComplexMatrix::identity(2).kron(&h());
        let v = m.apply(&ComplexVector::basis(4, 0)).unwrap();
        let expected = [R, R, 0.0, 0.0];
        for (z, e) in v.as_slice().iter().zip(expected) {
            assert!((z - c(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn kron_scalar_is_identity_map() {
        let one = ComplexMatrix::identity(1);
        assert_eq!(one.kron(&h()), h());
        assert_eq!(h().kron(&one), h());
    }

    #[test]
    fn kron_x_identity_swaps_blocks() {
        // hand expansion of X ⊗ I₂
        let expected = ComplexMatrix::from_real_rows([
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]);
        assert_eq!(x().kron(&ComplexMatrix::identity(2)), expected);
    }

    #[test]
    fn dagger_of_phase_gate_conjugates_diagonal() {
        let s = ComplexMatrix::diag(&[ONE, I]);
        assert_eq!(s.dagger(), ComplexMatrix::diag(&[ONE, -I]));
        assert_eq!(h().dagger(), h());
    }

    #[test]
    fn flips_of_hadamard() {
        assert_eq!(
            h().flip_h(),
            ComplexMatrix::from_real_rows([[R, -R], [R, R]])
        );
        assert_eq!(h().flip_h(), x().matmul(&h()).unwrap());
        assert_eq!(
            h().flip_v(),
            ComplexMatrix::from_real_rows([[R, R], [-R, R]])
        );
        assert_eq!(ComplexMatrix::identity(2).flip_h(), x());
        assert_eq!(ComplexMatrix::identity(2).flip_v(), x());
    }

    #[test]
    fn phase_distance_recovers_phase() {
        let a = ComplexMatrix::from_rows([[c(0.6, 0.0), c(0.0, 0.8)], [c(0.0, 0.8), c(0.6, 0.0)]]);
        let d = dist_up_to_phase(&a, &a).unwrap();
        assert_eq!(d.distance, 0.0);
        assert_eq!(d.phase, 0.0);
        let rotated = a.scale(Complex64::from_polar(1.0, PI / 3.0));
        let d = dist_up_to_phase(&a, &rotated).unwrap();
        assert!(d.distance < 1e-12);
        assert!((d.phase + PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn phase_distance_zero_trace_fallback() {
        // tr(X†Z) = 0; fallback picks the largest |b_ij| entry
        let z = ComplexMatrix::diag(&[ONE, -ONE]);
        let d = dist_up_to_phase(&x(), &z).unwrap();
        assert!((d.distance - 2.0).abs() < 1e-12);
        let zero = ComplexMatrix::zeros(2);
        let d = dist_up_to_phase(&x(), &zero).unwrap();
        assert!((d.distance - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn unitarity() {
        assert!(h().is_unitary(Tolerance::default()));
        assert!(!ComplexMatrix::identity(2)
            .scale(c(2.0, 0.0))
            .is_unitary(Tolerance::default()));
    }

    #[test]
    fn tolerance_rejects_negative() {
        assert!(Tolerance::new(-1.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::default().eps(), 1e-10);
    }

    #[test]
    fn roots_of_unity_exact_at_eighths() {
        assert_eq!(root_of_unity(1, 2), c(-1.0, 0.0));
        assert_eq!(root_of_unity(1, 4), c(0.0, 1.0));
        assert_eq!(root_of_unity(7, 4), c(0.0, -1.0));
        assert_eq!(root_of_unity(1, 8), c(R, R));
        let z = root_of_unity(1, 16);
        assert!((z - Complex64::from_polar(1.0, PI / 8.0)).norm() < 1e-16);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let a = ComplexMatrix::from_rows([
            [c(0.1, -1e-300), c(1.0 / 3.0, f64::MIN_POSITIVE)],
            [c(-0.0, 0.6180339887498949), c(123456789.123, -2.5e-17)],
        ]);
        let back = ComplexMatrix::from_json(&a.to_json()).unwrap();
        for (x, y) in a.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn json_layout() {
        let json = ComplexMatrix::identity(1).to_json();
        assert_eq!(json, r#"[[{"re":1.0,"im":0.0}]]"#);
        assert!(ComplexMatrix::from_json("[[{\"re\":1,\"im\":0}],[]]").is_err());
    }

    #[test]
    fn csv_layout_and_parse() {
        let a = ComplexMatrix::from_rows([
            [c(1.0, -0.5), c(-2e-20, 3.0)],
            [c(0.0, 0.0), c(-1.0, -0.0)],
        ]);
        let csv = a.to_csv();
        assert_eq!(
            csv.lines().next().unwrap(),
            "1-0.5i,-0.00000000000000000002+3i"
        );
        assert_eq!(ComplexMatrix::from_csv(&csv).unwrap(), a);
    }
}
