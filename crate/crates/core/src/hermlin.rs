//! Dense complex Hermitian linear algebra.
//!
//! Everything here works on small square matrices (dimension up to ~10),
//! stored row-major. The eigensolver is a cyclic complex Jacobi method,
//! which is accurate to a few ulps on matrices this size.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance on `max |M - M^H|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; below that is an error.
pub const PSD_TOL: f64 = 1e-10;
/// Largest imaginary part tolerated in an expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

/// Dense square complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking shape and finiteness.
    pub fn from_vec(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Real matrix from row-major `f64` entries. Panics on a shape mismatch.
    pub fn from_real_rows(dim: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), dim * dim, "expected {} entries", dim * dim);
        Self::from_fn(dim, |i, j| {
            Complex::new(T::lit(rows[i * dim + j]), T::zero())
        })
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    /// Rank-one operator `|v><v|`.
    pub fn outer(v: &[Complex<T>]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: T) -> Self {
        self.scale(Complex::new(c, T::zero()))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim, other.dim, "trace_product dimension mismatch");
        let n = self.dim;
        let mut acc = Complex::zero();
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * other.data[j * n + i];
            }
        }
        acc
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// `max |M - M^H|` over all entries.
    pub fn hermiticity_deviation(&self) -> T {
        let n = self.dim;
        let mut dev = T::zero();
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M^H) / 2`.
    pub fn symmetrized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Checks Hermiticity within [`HERMITIAN_TOL`] and returns the symmetrized matrix.
    pub fn to_hermitian(&self) -> Result<Self> {
        let dev = self.hermiticity_deviation();
        if !(dev <= T::tol(HERMITIAN_TOL)) {
            return Err(Error::NotHermitian {
                deviation: dev.as_f64(),
            });
        }
        Ok(self.symmetrized())
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    fn check_same_dim(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "mul dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re.as_f64(), z.im.as_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Spectral decomposition `H = U diag(λ) U^H` with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct HermEig<T: Real> {
    pub eigenvalues: Vec<T>,
    /// Columns are the orthonormal eigenvectors, in eigenvalue order.
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> HermEig<T> {
    /// `U diag(f(λ)) U^H`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.eigenvectors.dim();
        let u = &self.eigenvectors;
        let fl: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| {
                acc + u[(i, k)] * u[(j, k)].conj() * fl[k]
            })
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map_spectrum(|l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn herm_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<HermEig<T>> {
    let h = h.to_hermitian()?;
    jacobi_eig(h)
}

/// Cyclic Jacobi on an already-symmetrized Hermitian matrix.
fn jacobi_eig<T: Real>(mut a: ComplexMatrix<T>) -> Result<HermEig<T>> {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let eps = T::epsilon();
    let negligible = eps * scale * T::lit(1e-2);

    let mut converged = scale.is_zero() || n == 1;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= negligible {
                    a[(p, q)] = Complex::zero();
                    a[(q, p)] = Complex::zero();
                    continue;
                }
                rotated = true;
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (T::lit(2.0) * mag);
                let t = if tau.is_zero() {
                    T::one()
                } else {
                    tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let ph_c = phase.conj();
                // G = [[c, s], [-s e*, c e*]] on (p, q); A <- G^H A G, V <- V G.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ph_c * s;
                    a[(k, q)] = akp * s + akq * ph_c * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * phase * s;
                    a[(q, k)] = apk * s + aqk * phase * c;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * ph_c * s;
                    v[(k, q)] = vkp * s + vkq * ph_c * c;
                }
            }
        }
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[(i, j)].norm_sqr())
            .sqrt();
        converged = !rotated || off <= eps * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite"));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigendecomposition of a Hermitian PSD matrix with roundoff-level eigenvalues set to zero.
pub fn psd_eig<T: Real>(m: &ComplexMatrix<T>) -> Result<HermEig<T>> {
    let mut eig = herm_eig(m)?;
    let min = eig.eigenvalues.first().copied().unwrap_or_else(T::zero);
    if min < -T::tol(PSD_TOL) {
        return Err(Error::NotPsd {
            min_eigenvalue: min.as_f64(),
        });
    }
    // Eigenvalues under the solver's noise floor are indistinguishable from 0;
    // leaving them in would put O(√eps) garbage into √M.
    let top = eig
        .eigenvalues
        .last()
        .copied()
        .unwrap_or_else(T::zero)
        .abs();
    let floor = T::lit(4.0 * eig.eigenvalues.len() as f64) * T::epsilon() * top;
    for l in &mut eig.eigenvalues {
        if *l <= floor {
            *l = T::zero();
        }
    }
    Ok(eig)
}

/// Principal square root of a Hermitian PSD matrix.
pub fn psd_sqrt<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    Ok(psd_eig(m)?.map_spectrum(|l| l.sqrt()))
}

/// Kronecker product `A ⊗ B`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na * nb, |r, c| a[(r / nb, c / nb)] * b[(r % nb, c % nb)])
}

/// Which factor of `H_A ⊗ H_B` survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    dim_a: usize,
    dim_b: usize,
    keep: Subsystem,
) -> Result<ComplexMatrix<T>> {
    if dim_a * dim_b != m.dim() || dim_a == 0 || dim_b == 0 {
        return Err(Error::DimensionMismatch {
            context: "partial_trace",
            expected: dim_a * dim_b,
            found: m.dim(),
        });
    }
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(dim_a, |i, j| {
            (0..dim_b).fold(Complex::zero(), |acc, k| {
                acc + m[(i * dim_b + k, j * dim_b + k)]
            })
        }),
        Subsystem::B => ComplexMatrix::from_fn(dim_b, |k, l| {
            (0..dim_a).fold(Complex::zero(), |acc, i| {
                acc + m[(i * dim_b + k, i * dim_b + l)]
            })
        }),
    };
    Ok(out)
}

/// `[A, B] = AB - BA`.
pub fn commutator<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.check_same_dim(b, "commutator")?;
    Ok(&(a * b) - &(b * a))
}

/// `{A, B} = AB + BA`.
pub fn anticommutator<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    a.check_same_dim(b, "anticommutator")?;
    Ok(&(a * b) + &(b * a))
}

/// `Re Tr(ρH)`, rejecting a non-negligible imaginary part.
pub fn expectation<T: Real>(rho: &ComplexMatrix<T>, h: &ComplexMatrix<T>) -> Result<T> {
    rho.check_same_dim(h, "expectation")?;
    let z = rho.trace_product(h);
    if z.im.abs() > T::tol(EXPECTATION_IMAG_TOL) {
        return Err(Error::NonRealExpectation {
            imag: z.im.as_f64(),
        });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sx() -> M {
        M::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])
    }
    fn sy() -> M {
        M::from_vec(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
    }
    fn sz() -> M {
        M::from_real_rows(2, &[1.0, 0.0, 0.0, -1.0])
    }

    fn singlet_direct() -> M {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        M::outer(&[c(0., 0.), c(s, 0.), c(-s, 0.), c(0., 0.)])
    }

    fn assert_close(a: &M, b: &M, tol: f64) {
        let d = a.max_abs_diff(b);
        assert!(d <= tol, "diff {d:e} > {tol:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn eig_diagonal() {
        let eig = herm_eig(&M::from_diag(&[1.0, 2.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0]);
        assert_close(&eig.eigenvectors, &M::identity(2), 0.0);
    }

    #[test]
    fn eig_descending_diagonal_is_sorted() {
        let eig = herm_eig(&M::from_diag(&[3.0, -1.0, 2.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn eig_pauli() {
        for m in [sx(), sy(), sz()] {
            let eig = herm_eig(&m).unwrap();
            assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
            assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
            assert_close(&eig.reconstruct(), &m, 1e-14);
        }
    }

    #[test]
    fn eig_singlet() {
        let eig = herm_eig(&singlet_direct()).unwrap();
        let want = [0.0, 0.0, 0.0, 1.0];
        for (l, w) in eig.eigenvalues.iter().zip(want) {
            assert!((l - w).abs() < 1e-14, "{l} vs {w}");
        }
        let u = &eig.eigenvectors;
        assert_close(&(&u.adjoint() * u), &M::identity(4), 1e-13);
    }

    #[test]
    fn eig_dense_complex() {
        let m = M::from_vec(
            3,
            vec![
                c(2.0, 0.0),
                c(1.0, -0.5),
                c(0.0, 0.3),
                c(1.0, 0.5),
                c(-1.0, 0.0),
                c(0.2, 0.1),
                c(0.0, -0.3),
                c(0.2, -0.1),
                c(0.5, 0.0),
            ],
        )
        .unwrap();
        let eig = herm_eig(&m).unwrap();
        assert_close(&eig.reconstruct(), &m, 1e-13);
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let tr: f64 = eig.eigenvalues.iter().sum();
        assert!((tr - 1.5).abs() < 1e-13);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = M::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sqrt_examples() {
        let half = M::identity(2).scale_real(0.5);
        assert_close(
            &psd_sqrt(&half).unwrap(),
            &M::identity(2).scale_real(std::f64::consts::FRAC_1_SQRT_2),
            1e-15,
        );
        let d = M::from_diag(&[0.75, 0.25]);
        assert_close(
            &psd_sqrt(&d).unwrap(),
            &M::from_diag(&[3f64.sqrt() / 2.0, 0.5]),
            1e-15,
        );
        let quarter = M::identity(4).scale_real(0.25);
        assert_close(
            &psd_sqrt(&quarter).unwrap(),
            &M::identity(4).scale_real(0.5),
            1e-15,
        );
    }

    #[test]
    fn sqrt_clamps_roundoff_negatives() {
        let d = M::from_diag(&[1.0, -5e-11]);
        let s = psd_sqrt(&d).unwrap();
        assert_eq!(s[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn sqrt_rejects_negative() {
        let d = M::from_diag(&[1.0, -1e-6]);
        assert!(matches!(psd_sqrt(&d), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn kron_examples() {
        assert_close(
            &kron(&M::identity(2), &M::identity(2)),
            &M::identity(4),
            0.0,
        );
        assert_close(
            &kron(&sz(), &M::identity(2)),
            &M::from_diag(&[1.0, 1.0, -1.0, -1.0]),
            0.0,
        );
        let k = kron(&M::from_diag(&[1.0, 0.0]), &sx());
        let mut want = M::zeros(4);
        want[(0, 1)] = c(1.0, 0.0);
        want[(1, 0)] = c(1.0, 0.0);
        assert_close(&k, &want, 0.0);
    }

    #[test]
    fn partial_trace_examples() {
        let rho_a = M::from_diag(&[0.75, 0.25]);
        let rho_b = M::from_real_rows(2, &[0.5, 0.5, 0.5, 0.5]);
        let prod = kron(&rho_a, &rho_b);
        assert_close(
            &partial_trace(&prod, 2, 2, Subsystem::A).unwrap(),
            &rho_a,
            1e-15,
        );
        assert_close(
            &partial_trace(&prod, 2, 2, Subsystem::B).unwrap(),
            &rho_b,
            1e-15,
        );
        let half = M::identity(2).scale_real(0.5);
        assert_close(
            &partial_trace(&singlet_direct(), 2, 2, Subsystem::B).unwrap(),
            &half,
            1e-15,
        );
        assert!(matches!(
            partial_trace(&prod, 3, 2, Subsystem::A),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutator_examples() {
        let comm = commutator(&sx(), &sz()).unwrap();
        assert_close(&comm, &sy().scale(c(0.0, -2.0)), 0.0);
        let anti = anticommutator(&sx(), &sz()).unwrap();
        assert_close(&anti, &M::zeros(2), 0.0);
        let phi = M::from_real_rows(2, &[1.0, 0.0, 0.0, 0.0]);
        let psi = M::from_real_rows(2, &[0.5, 0.5, 0.5, 0.5]);
        let comm = commutator(&phi, &psi).unwrap();
        assert_close(&comm, &sy().scale(c(0.0, 0.5)), 1e-16);
        assert!(commutator(&sx(), &M::identity(3)).is_err());
    }

    #[test]
    fn expectation_examples() {
        let half = M::identity(2).scale_real(0.5);
        assert_eq!(expectation(&half, &sz()).unwrap(), 0.0);
        let zero = M::from_diag(&[1.0, 0.0]);
        assert_eq!(expectation(&zero, &sz()).unwrap(), 1.0);
        assert!(matches!(
            expectation(&zero, &M::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        // A non-Hermitian "observable" can have a complex expectation.
        let mut bad = M::zeros(2);
        bad[(0, 0)] = c(0.0, 1.0);
        assert!(matches!(
            expectation(&zero, &bad),
            Err(Error::NonRealExpectation { .. })
        ));
    }

    #[test]
    fn from_vec_validates() {
        assert!(M::from_vec(2, vec![c(0., 0.); 3]).is_err());
        assert!(M::from_vec(1, vec![c(f64::NAN, 0.)]).is_err());
        assert!(M::from_vec(0, vec![]).is_err());
    }

    #[test]
    fn f32_eig() {
        let m = ComplexMatrix::<f32>::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]);
        let eig = herm_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-6);
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-6);
    }
}
