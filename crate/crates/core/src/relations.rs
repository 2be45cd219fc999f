//! Inequality checks, entropic comparisons and the Werner-state curves.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hermlin::{commutator, kron, ComplexMatrix, Subsystem};
use crate::qcorr::{minimize_q, QOptions};
use crate::scalar::Real;
use crate::skewinfo::{l_sum, skew_i, skew_j, un_terms, DensityMatrix, ProjectiveBasis};
use crate::states::{pauli, werner, Axis};

/// Eigenvalues at or below this are dropped from entropy sums.
pub const ENTROPY_CUTOFF: f64 = 1e-15;

/// Outcome of one inequality check. A negative `slack` is a violation.
#[derive(Clone, Debug)]
pub struct RelationReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
    pub terms: BTreeMap<String, T>,
    /// Set when an L-term denominator vanished and the term was taken as 0.
    pub degenerate: bool,
}

impl<T: Real> RelationReport<T> {
    fn new(lhs: T, rhs: T, terms: BTreeMap<String, T>, degenerate: bool) -> Self {
        Self {
            lhs,
            rhs,
            slack: lhs - rhs,
            terms,
            degenerate,
        }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack >= -T::lit(tol)
    }

    pub fn is_finite(&self) -> bool {
        self.lhs.is_finite()
            && self.rhs.is_finite()
            && self.slack.is_finite()
            && self.terms.values().all(|v| v.is_finite())
    }
}

fn check_same(a: usize, b: usize, context: &'static str) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            context,
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// `UN(ρ,R)·UN(ρ,S) ≥ ¼|Tr(ρ[R,S])|²`.
pub fn check_luo<T: Real>(
    rho: &DensityMatrix<T>,
    r: &ComplexMatrix<T>,
    s: &ComplexMatrix<T>,
) -> Result<RelationReport<T>> {
    check_same(rho.dim(), r.dim(), "check_luo R")?;
    check_same(rho.dim(), s.dim(), "check_luo S")?;
    let (ir, jr) = (skew_i(rho, r)?, skew_j(rho, r)?);
    let (is, js) = (skew_i(rho, s)?, skew_j(rho, s)?);
    let (un_r, un_s) = ((ir * jr).sqrt(), (is * js).sqrt());
    let comm = commutator(&r.to_hermitian()?, &s.to_hermitian()?)?;
    let rhs = T::lit(0.25) * rho.matrix().trace_product(&comm).norm_sqr();
    let terms = BTreeMap::from([
        ("I(R)".to_string(), ir),
        ("J(R)".to_string(), jr),
        ("UN(R)".to_string(), un_r),
        ("I(S)".to_string(), is),
        ("J(S)".to_string(), js),
        ("UN(S)".to_string(), un_s),
        ("commutator_term".to_string(), rhs),
    ]);
    Ok(RelationReport::new(un_r * un_s, rhs, terms, false))
}

/// `UN(ρ)_{φ⊗1} + UN(ρ)_{ψ⊗1} ≥ 2 Σ_k L_{ρ_A}(φ_k, ψ_k) + 2 Q(ρ)`.
pub fn check_theorem<T: Real>(
    rho_ab: &DensityMatrix<T>,
    phi: &ProjectiveBasis<T>,
    psi: &ProjectiveBasis<T>,
    qopts: &QOptions,
) -> Result<RelationReport<T>> {
    check_same(rho_ab.dim_a(), phi.dim(), "check_theorem phi basis")?;
    check_same(rho_ab.dim_a(), psi.dim(), "check_theorem psi basis")?;
    let un_phi = un_terms(rho_ab, phi, true)?;
    let un_psi = un_terms(rho_ab, psi, true)?;
    let sum = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a + b);
    let (s_phi, s_psi) = (sum(&un_phi), sum(&un_psi));
    let rho_a = rho_ab.reduced(Subsystem::A)?;
    let l = l_sum(&rho_a, phi, psi)?;
    let q = minimize_q(rho_ab, qopts)?;
    let two = T::lit(2.0);

    let mut terms = BTreeMap::new();
    for (k, v) in un_phi.iter().enumerate() {
        terms.insert(format!("UN_phi[{k}]"), *v);
    }
    for (k, v) in un_psi.iter().enumerate() {
        terms.insert(format!("UN_psi[{k}]"), *v);
    }
    terms.insert("UN_phi".into(), s_phi);
    terms.insert("UN_psi".into(), s_psi);
    terms.insert("L_sum".into(), l.value);
    terms.insert("Q".into(), q.value);
    terms.insert("Q_spread".into(), q.spread);
    terms.insert(
        "Q_converged".into(),
        if q.converged { T::one() } else { T::zero() },
    );
    Ok(RelationReport::new(
        s_phi + s_psi,
        two * l.value + two * q.value,
        terms,
        l.degenerate,
    ))
}

fn entropy_of_spectrum<T: Real>(eigs: &[T]) -> T {
    let cutoff = T::lit(ENTROPY_CUTOFF);
    eigs.iter()
        .filter(|&&l| l > cutoff)
        .fold(T::zero(), |acc, &l| acc - l * l.log2())
}

/// `S(ρ) = −Σ λ log₂ λ` in bits.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    entropy_of_spectrum(rho.eigenvalues())
}

/// `Σ_k (φ_k ⊗ 1) ρ (φ_k ⊗ 1)`.
pub fn post_measurement<T: Real>(
    rho_ab: &DensityMatrix<T>,
    basis: &ProjectiveBasis<T>,
) -> Result<DensityMatrix<T>> {
    check_same(rho_ab.dim_a(), basis.dim(), "post_measurement basis")?;
    let mut out = ComplexMatrix::zeros(rho_ab.dim());
    for k in 0..basis.dim() {
        let p = basis.embedded_projector(k, rho_ab.dim_b());
        out = &out + &(&(&p * rho_ab.matrix()) * &p);
    }
    DensityMatrix::bipartite(out, rho_ab.dim_a(), rho_ab.dim_b())
}

/// `H(R|B) = S(post-measurement state) − S(ρ_B)` in bits.
pub fn cond_entropy_after_measurement<T: Real>(
    rho_ab: &DensityMatrix<T>,
    basis: &ProjectiveBasis<T>,
) -> Result<T> {
    let post = post_measurement(rho_ab, basis)?;
    let rho_b = rho_ab.reduced(Subsystem::B)?;
    Ok(von_neumann_entropy(&post) - von_neumann_entropy(&rho_b))
}

/// `c = max_{j,k} |⟨φ_j|ψ_k⟩|²`.
pub fn overlap_c<T: Real>(phi: &ProjectiveBasis<T>, psi: &ProjectiveBasis<T>) -> Result<T> {
    check_same(phi.dim(), psi.dim(), "overlap_c")?;
    let mut c = T::zero();
    for a in phi.vectors() {
        for b in psi.vectors() {
            let ip = a.iter().zip(b).fold(
                num_complex::Complex::new(T::zero(), T::zero()),
                |acc, (x, y)| acc + x.conj() * *y,
            );
            c = c.max(ip.norm_sqr());
        }
    }
    Ok(c)
}

/// Memory-assisted entropic bound `log₂(1/c) + S(ρ_AB) − S(ρ_B)`.
pub fn berta_bound<T: Real>(
    rho_ab: &DensityMatrix<T>,
    phi: &ProjectiveBasis<T>,
    psi: &ProjectiveBasis<T>,
) -> Result<T> {
    check_same(rho_ab.dim_a(), phi.dim(), "berta_bound basis")?;
    let c = overlap_c(phi, psi)?;
    let rho_b = rho_ab.reduced(Subsystem::B)?;
    Ok(-c.log2() + von_neumann_entropy(rho_ab) - von_neumann_entropy(&rho_b))
}

/// Closed-form curves for the two-qubit Werner family measured in σ_z and σ_x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerCurves<T> {
    pub p: T,
    pub thm_lhs: T,
    pub thm_rhs: T,
    pub luo_lhs: T,
    pub luo_rhs: T,
    pub ent_lhs: T,
}

fn xlog2x<T: Real>(x: T) -> T {
    if x > T::zero() {
        x * x.log2()
    } else {
        T::zero()
    }
}

pub fn werner_closed_forms<T: Real>(p: T) -> Result<WernerCurves<T>> {
    if !(p >= -T::one() && p <= T::one()) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p.as_f64(),
            min: -1.0,
            max: 1.0,
        });
    }
    let l = T::lit;
    let root = (l(3.0) - l(3.0) * p * p).max(T::zero()).sqrt();
    let inner = l(5.0) - l(2.0) * root - l(2.0) * p * (T::one() - p + root);
    let thm_lhs = inner.max(T::zero()).sqrt() / l(3.0);
    let thm_rhs = (l(2.0) - p - root) / l(3.0);
    let luo_lhs = (l(2.0) - p - root) * (l(4.0) + p + root) / l(9.0);
    // −(2(2−p)/3) log₂((2−p)/6) = −4 · x log₂ x with x = (2−p)/6, likewise for (1+p)/6.
    let ent_lhs =
        -l(4.0) * xlog2x((l(2.0) - p) / l(6.0)) - l(4.0) * xlog2x((T::one() + p) / l(6.0)) - l(2.0);
    Ok(WernerCurves {
        p,
        thm_lhs,
        thm_rhs,
        luo_lhs,
        luo_rhs: T::zero(),
        ent_lhs,
    })
}

/// One grid point of the Werner comparison: numeric values next to the closed forms.
#[derive(Clone, Debug)]
pub struct SweepRow<T> {
    pub p: T,
    pub thm_lhs_num: T,
    pub thm_rhs_num: T,
    pub luo_lhs_num: T,
    pub luo_rhs_num: T,
    pub ent_lhs_num: T,
    pub l_sum: T,
    pub q: T,
    pub q_converged: bool,
    pub closed: WernerCurves<T>,
}

impl<T: Real> SweepRow<T> {
    pub fn thm_lhs_delta(&self) -> T {
        (self.thm_lhs_num - self.closed.thm_lhs).abs()
    }
    pub fn thm_rhs_delta(&self) -> T {
        (self.thm_rhs_num - self.closed.thm_rhs).abs()
    }
    pub fn luo_lhs_delta(&self) -> T {
        (self.luo_lhs_num - self.closed.luo_lhs).abs()
    }
    pub fn ent_lhs_delta(&self) -> T {
        (self.ent_lhs_num - self.closed.ent_lhs).abs()
    }
}

/// The σ_z and σ_x eigenbases of a qubit, in that order.
pub fn zx_bases<T: Real>() -> (ProjectiveBasis<T>, ProjectiveBasis<T>) {
    (
        ProjectiveBasis::computational(2),
        ProjectiveBasis::fourier(2),
    )
}

/// Numeric and closed-form Werner values at one `p`.
pub fn werner_row<T: Real>(p: T, qopts: &QOptions) -> Result<SweepRow<T>> {
    let closed = werner_closed_forms(p)?;
    let rho = werner(p)?;
    let (z, x) = zx_bases();
    let thm = check_theorem(&rho, &z, &x, qopts)?;
    let id = ComplexMatrix::identity(2);
    let luo = check_luo(
        &rho,
        &kron(&pauli(Axis::X), &id),
        &kron(&pauli(Axis::Z), &id),
    )?;
    let ent = cond_entropy_after_measurement(&rho, &z)? + cond_entropy_after_measurement(&rho, &x)?;
    Ok(SweepRow {
        p,
        thm_lhs_num: thm.lhs,
        thm_rhs_num: thm.rhs,
        luo_lhs_num: luo.lhs,
        luo_rhs_num: luo.rhs,
        ent_lhs_num: ent,
        l_sum: thm.terms["L_sum"],
        q: thm.terms["Q"],
        q_converged: thm.terms["Q_converged"] > T::zero(),
        closed,
    })
}

/// Evenly spaced grid of `steps` points from `p_min` to `p_max` inclusive.
pub fn sweep_grid<T: Real>(p_min: T, p_max: T, steps: usize) -> Result<Vec<T>> {
    if !(p_min >= -T::one() && p_max <= T::one() && p_min < p_max) {
        return Err(Error::OutOfRange {
            name: "p range",
            value: p_min.as_f64(),
            min: -1.0,
            max: p_max.as_f64(),
        });
    }
    if steps < 2 {
        return Err(Error::InvalidOptions(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    let last = steps - 1;
    Ok((0..steps)
        .map(|i| {
            if i == last {
                p_max
            } else {
                p_min + (p_max - p_min) * T::lit(i as f64) / T::lit(last as f64)
            }
        })
        .collect())
}

/// Sequential sweep over [`sweep_grid`], rows in ascending `p`.
pub fn werner_sweep<T: Real>(
    p_min: T,
    p_max: T,
    steps: usize,
    qopts: &QOptions,
) -> Result<Vec<SweepRow<T>>> {
    sweep_grid(p_min, p_max, steps)?
        .into_iter()
        .map(|p| werner_row(p, qopts))
        .collect()
}
