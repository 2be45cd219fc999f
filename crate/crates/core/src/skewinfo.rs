//! Wigner–Yanase skew information and the uncertainty quantities built on it.
//!
//! For a state `ρ` and observable `H`:
//!
//! * `I(ρ,H) = Tr(ρH²) − Tr(√ρ H √ρ H)`
//! * `J_ρ(H) = Tr(ρH₀²) + Tr(√ρ H₀ √ρ H₀)` with `H₀ = H − Tr(ρH)·1`
//! * `V_ρ(H) = Tr(ρH²) − Tr(ρH)²`
//! * `UN(ρ,H) = √(I·J)`
//!
//! and `I ≤ V ≤ J` with `I + J = 2V`.

use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hermlin::{
    commutator, expectation, herm_eig, kron, partial_trace, psd_eig, ComplexMatrix, HermEig,
    Subsystem,
};
use crate::scalar::Real;

/// Allowed deviation of `Tr ρ` from one.
pub const TRACE_TOL: f64 = 1e-9;
/// Pairwise inner-product tolerance for basis vectors.
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Idempotence / unit-trace tolerance when validating rank-one projectors.
pub const PROJECTOR_TOL: f64 = 1e-9;
/// Below this, `√(J(φ)J(ψ))` is treated as zero and the L term is reported as 0.
pub const L_DENOMINATOR_FLOOR: f64 = 1e-12;
/// Negative roundoff in `I` that is silently clamped, relative to `max(1, Tr ρH²)`.
pub const SKEW_NEG_TOL: f64 = 1e-12;

/// A validated quantum state: Hermitian, PSD, unit trace, with an optional A⊗B split.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Real> {
    mat: ComplexMatrix<T>,
    dim_a: usize,
    dim_b: usize,
    eig: HermEig<T>,
    sqrt_cache: OnceLock<ComplexMatrix<T>>,
}

impl<T: Real> DensityMatrix<T> {
    /// Single-party state (`dim_b = 1`).
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        let d = mat.dim();
        Self::bipartite(mat, d, 1)
    }

    /// State on `H_A ⊗ H_B`.
    pub fn bipartite(mat: ComplexMatrix<T>, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != mat.dim() {
            return Err(Error::DimensionMismatch {
                context: "density matrix split",
                expected: dim_a * dim_b,
                found: mat.dim(),
            });
        }
        if !mat.is_finite() {
            return Err(Error::Validation("entries must be finite".into()));
        }
        let mat = mat.to_hermitian()?;
        let tr = mat.trace().re;
        if !((tr - T::one()).abs() <= T::tol(TRACE_TOL)) {
            return Err(Error::Validation(format!(
                "trace is {} but must be 1 within {TRACE_TOL:e}",
                tr.as_f64()
            )));
        }
        let eig = psd_eig(&mat)?;
        Ok(Self {
            mat,
            dim_a,
            dim_b,
            eig,
            sqrt_cache: OnceLock::new(),
        })
    }

    /// Same matrix, reinterpreted with a different subsystem split.
    pub fn with_split(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "density matrix split",
                expected: dim_a * dim_b,
                found: self.dim(),
            });
        }
        Ok(Self {
            dim_a,
            dim_b,
            ..self.clone()
        })
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    #[inline]
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    #[inline]
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn is_bipartite(&self) -> bool {
        self.dim_b > 1
    }

    /// Ascending spectrum, with roundoff negatives clamped to zero.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eig.eigenvalues
    }

    pub fn eigen(&self) -> &HermEig<T> {
        &self.eig
    }

    /// `√ρ`, computed on first use and cached.
    pub fn sqrt(&self) -> &ComplexMatrix<T> {
        self.sqrt_cache
            .get_or_init(|| self.eig.map_spectrum(|l| l.sqrt()))
    }

    pub fn purity(&self) -> T {
        self.mat.trace_product(&self.mat).re
    }

    pub fn expectation(&self, h: &ComplexMatrix<T>) -> Result<T> {
        expectation(&self.mat, h)
    }

    /// Reduced state on one side; the result is single-party.
    pub fn reduced(&self, keep: Subsystem) -> Result<Self> {
        Self::new(partial_trace(&self.mat, self.dim_a, self.dim_b, keep)?)
    }
}

/// Ordered orthonormal basis `{|φ_k⟩}` inducing rank-one projectors `φ_k = |φ_k⟩⟨φ_k|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveBasis<T> {
    dim: usize,
    vectors: Vec<Vec<Complex<T>>>,
}

impl<T: Real> ProjectiveBasis<T> {
    pub fn from_vectors(vectors: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(Error::InvalidBasis("empty basis".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                context: "basis vector length",
                expected: dim,
                found: v.len(),
            });
        }
        let tol = T::tol(ORTHONORMAL_TOL);
        for i in 0..dim {
            for j in i..dim {
                let ip = inner(&vectors[i], &vectors[j]);
                let want = if i == j { T::one() } else { T::zero() };
                if (ip - Complex::new(want, T::zero())).norm() > tol {
                    return Err(Error::InvalidBasis(format!(
                        "<v{i}|v{j}> = {:.3e}{:+.3e}i, expected {}",
                        ip.re.as_f64(),
                        ip.im.as_f64(),
                        want.as_f64()
                    )));
                }
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Columns of a unitary matrix.
    pub fn from_unitary(u: &ComplexMatrix<T>) -> Result<Self> {
        Self::from_vectors((0..u.dim()).map(|j| u.column(j)).collect())
    }

    /// Eigenbasis of a Hermitian observable, in ascending eigenvalue order.
    pub fn eigenbasis(h: &ComplexMatrix<T>) -> Result<Self> {
        Self::from_unitary(&herm_eig(h)?.eigenvectors)
    }

    /// `{|0⟩, …, |d−1⟩}`.
    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|k| {
                (0..dim)
                    .map(|i| {
                        if i == k {
                            Complex::new(T::one(), T::zero())
                        } else {
                            Complex::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { dim, vectors }
    }

    /// Discrete Fourier basis `|f_k⟩ = d^{-1/2} Σ_j e^{2πi jk/d} |j⟩`; for `d = 2` this is `{|+⟩, |−⟩}`.
    pub fn fourier(dim: usize) -> Self {
        let norm = T::one() / T::lit(dim as f64).sqrt();
        let vectors = (0..dim)
            .map(|k| {
                (0..dim)
                    .map(|j| {
                        let angle = T::TAU() * T::lit(((j * k) % dim) as f64) / T::lit(dim as f64);
                        Complex::from_polar(norm, angle)
                    })
                    .collect()
            })
            .collect();
        Self { dim, vectors }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<Complex<T>>] {
        &self.vectors
    }

    pub fn projector(&self, k: usize) -> ComplexMatrix<T> {
        ComplexMatrix::outer(&self.vectors[k])
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix<T>> {
        (0..self.dim).map(|k| self.projector(k)).collect()
    }

    /// `φ_k ⊗ 1_B`.
    pub fn embedded_projector(&self, k: usize, dim_b: usize) -> ComplexMatrix<T> {
        kron(&self.projector(k), &ComplexMatrix::identity(dim_b))
    }

    /// Observable `Σ_k λ_k φ_k`.
    pub fn observable(&self, spectrum: &[T]) -> Result<ComplexMatrix<T>> {
        if spectrum.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "observable spectrum",
                expected: self.dim,
                found: spectrum.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim);
        for (k, &l) in spectrum.iter().enumerate() {
            out = &out + &self.projector(k).scale_real(l);
        }
        Ok(out)
    }
}

fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

fn check_dims<T: Real>(rho: &DensityMatrix<T>, h: &ComplexMatrix<T>) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            context: "state/observable",
            expected: rho.dim(),
            found: h.dim(),
        });
    }
    Ok(())
}

/// `Tr(ρH²)` and `Tr(√ρ H √ρ H)` for an already-symmetrized `H`.
fn skew_parts<T: Real>(rho: &DensityMatrix<T>, h: &ComplexMatrix<T>) -> (T, T) {
    let s = rho.sqrt();
    let rh = rho.matrix() * h;
    let sh = s * h;
    (rh.trace_product(h).re, sh.trace_product(&sh).re)
}

fn clamp_skew<T: Real>(value: T, scale: T) -> Result<T> {
    if value >= T::zero() {
        return Ok(value);
    }
    if value >= -T::tol(SKEW_NEG_TOL) * scale.max(T::one()) {
        return Ok(T::zero());
    }
    Err(Error::NegativeSkew {
        value: value.as_f64(),
    })
}

/// Wigner–Yanase skew information `I(ρ,H) = −½ Tr[√ρ, H]²`.
pub fn skew_i<T: Real>(rho: &DensityMatrix<T>, h: &ComplexMatrix<T>) -> Result<T> {
    check_dims(rho, h)?;
    let h = h.to_hermitian()?;
    let (second_moment, cross) = skew_parts(rho, &h);
    clamp_skew(second_moment - cross, second_moment)
}

/// `J_ρ(H) = ½ Tr{√ρ, H₀}²`.
pub fn skew_j<T: Real>(rho: &DensityMatrix<T>, h: &ComplexMatrix<T>) -> Result<T> {
    check_dims(rho, h)?;
    let h = h.to_hermitian()?;
    let mean = rho.expectation(&h)?;
    let h0 = &h - &ComplexMatrix::identity(h.dim()).scale_real(mean);
    let (second_moment, cross) = skew_parts(rho, &h0);
    Ok((second_moment + cross).max(T::zero()))
}

/// `V_ρ(H) = Tr(ρH²) − Tr(ρH)²`, clamped at zero.
pub fn variance<T: Real>(rho: &DensityMatrix<T>, h: &ComplexMatrix<T>) -> Result<T> {
    check_dims(rho, h)?;
    let h = h.to_hermitian()?;
    let mean = rho.expectation(&h)?;
    let second = (rho.matrix() * &h).trace_product(&h).re;
    Ok((second - mean * mean).max(T::zero()))
}

/// `UN(ρ,H) = √(I(ρ,H) J_ρ(H))`.
pub fn un<T: Real>(rho: &DensityMatrix<T>, h: &ComplexMatrix<T>) -> Result<T> {
    Ok((skew_i(rho, h)? * skew_j(rho, h)?).sqrt())
}

/// Per-projector `UN(ρ, φ_k)` (or `UN(ρ, φ_k ⊗ 1_B)` when `embed_on_a`).
pub fn un_terms<T: Real>(
    rho: &DensityMatrix<T>,
    basis: &ProjectiveBasis<T>,
    embed_on_a: bool,
) -> Result<Vec<T>> {
    let (expected, dim_b) = if embed_on_a {
        (rho.dim_a(), rho.dim_b())
    } else {
        (rho.dim(), 1)
    };
    if basis.dim() != expected {
        return Err(Error::DimensionMismatch {
            context: "un_sum basis",
            expected,
            found: basis.dim(),
        });
    }
    (0..basis.dim())
        .map(|k| un(rho, &basis.embedded_projector(k, dim_b)))
        .collect()
}

/// `UN(ρ)_{φ_k} = Σ_k UN(ρ, φ_k)`, optionally with `φ_k` embedded as `φ_k ⊗ 1_B`.
pub fn un_sum<T: Real>(
    rho: &DensityMatrix<T>,
    basis: &ProjectiveBasis<T>,
    embed_on_a: bool,
) -> Result<T> {
    Ok(un_terms(rho, basis, embed_on_a)?
        .into_iter()
        .fold(T::zero(), |a, b| a + b))
}

/// Value of a complementarity term plus whether the 0/0 guard fired.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LTerm<T> {
    pub value: T,
    pub degenerate: bool,
}

fn check_rank_one_projector<T: Real>(p: &ComplexMatrix<T>, name: &str) -> Result<()> {
    let tol = T::tol(PROJECTOR_TOL);
    let dev = p.hermiticity_deviation();
    if dev > tol {
        return Err(Error::NotProjector {
            reason: format!("{name} is not Hermitian (deviation {:e})", dev.as_f64()),
        });
    }
    let idem = (p * p).max_abs_diff(p);
    if idem > tol {
        return Err(Error::NotProjector {
            reason: format!("{name} is not idempotent (|P²−P| = {:e})", idem.as_f64()),
        });
    }
    let tr = p.trace().re;
    if (tr - T::one()).abs() > tol {
        return Err(Error::NotProjector {
            reason: format!("{name} has rank {} rather than 1", tr.as_f64()),
        });
    }
    Ok(())
}

/// `L_ρ(φ,ψ) = ¼|Tr(ρ[φ,ψ])|² / √(J_ρ(φ) J_ρ(ψ))`, guarded to 0 when the denominator vanishes.
pub fn l_term<T: Real>(
    rho_a: &DensityMatrix<T>,
    phi: &ComplexMatrix<T>,
    psi: &ComplexMatrix<T>,
) -> Result<LTerm<T>> {
    check_dims(rho_a, phi)?;
    check_dims(rho_a, psi)?;
    check_rank_one_projector(phi, "phi")?;
    check_rank_one_projector(psi, "psi")?;
    let denom = (skew_j(rho_a, phi)? * skew_j(rho_a, psi)?).sqrt();
    if denom < T::lit(L_DENOMINATOR_FLOOR) {
        return Ok(LTerm {
            value: T::zero(),
            degenerate: true,
        });
    }
    let comm = commutator(phi, psi)?;
    let t = rho_a.matrix().trace_product(&comm);
    Ok(LTerm {
        value: T::lit(0.25) * t.norm_sqr() / denom,
        degenerate: false,
    })
}

/// `Σ_k L_ρ(φ_k, ψ_k)` with bases paired by stored index.
pub fn l_sum<T: Real>(
    rho_a: &DensityMatrix<T>,
    phi: &ProjectiveBasis<T>,
    psi: &ProjectiveBasis<T>,
) -> Result<LTerm<T>> {
    for b in [phi, psi] {
        if b.dim() != rho_a.dim() {
            return Err(Error::DimensionMismatch {
                context: "l_sum basis",
                expected: rho_a.dim(),
                found: b.dim(),
            });
        }
    }
    let mut total = LTerm {
        value: T::zero(),
        degenerate: false,
    };
    for k in 0..phi.dim() {
        let term = l_term(rho_a, &phi.projector(k), &psi.projector(k))?;
        total.value += term.value;
        total.degenerate |= term.degenerate;
    }
    Ok(total)
}
