//! Discord-like correlation
//!
//! `Q(ρ_AB) = min_{φ} Σ_k [I(ρ_AB, φ_k ⊗ 1_B) − I(ρ_A, φ_k)]`
//!
//! minimized over orthonormal bases `{φ_k}` of `H_A`. Each summand is
//! non-negative (Lieb monotonicity) and `Q` vanishes exactly on
//! classical-quantum states.
//!
//! The minimization is a multi-start Nelder–Mead search over a chart of the
//! unitary group. For `dim_a = 2` the chart is the Bloch sphere `(θ, φ)`,
//! seeded from the best cells of a 24×24 grid; for `dim_a = 3` it is
//! `exp(iA)` with `A` Hermitian built from 9 real parameters.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermlin::{herm_eig, ComplexMatrix, Subsystem};
use crate::nelder_mead::NelderMead;
use crate::scalar::Real;
use crate::skewinfo::{skew_i, DensityMatrix, ProjectiveBasis};
use crate::states::StateRng;

/// Negative objective values down to this are roundoff and clamp to zero.
pub const Q_NEG_TOL: f64 = 1e-9;
/// Restarts whose final values differ by more than this mark the result unconverged.
pub const AGREEMENT_TOL: f64 = 1e-6;
/// Cells per axis of the Bloch-sphere seeding grid.
pub const GRID_CELLS: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct QOptions {
    pub restarts: usize,
    /// Evaluation budget per restart.
    pub max_evals: usize,
    /// Simplex-diameter stopping threshold.
    pub tolerance: f64,
    pub seed: u64,
    /// Seed the `dim_a = 2` search from a coarse grid scan.
    pub grid_init: bool,
}

impl Default for QOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_evals: 4000,
            tolerance: 1e-8,
            seed: 0,
            grid_init: true,
        }
    }
}

impl QOptions {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidOptions("restarts must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidOptions("tolerance must be positive".into()));
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidOptions("max_evals must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct QResult<T> {
    pub value: T,
    pub argmin: ProjectiveBasis<T>,
    pub evaluations: usize,
    pub restarts_used: usize,
    pub converged: bool,
    /// max − min over the final values of all restarts.
    pub spread: T,
    /// Final objective of each restart, in restart order.
    pub restart_values: Vec<T>,
}

/// A bipartite state with its A-marginal precomputed, ready for repeated evaluation.
pub struct QObjective<'a, T: Real> {
    rho_ab: &'a DensityMatrix<T>,
    rho_a: DensityMatrix<T>,
}

impl<'a, T: Real> QObjective<'a, T> {
    pub fn new(rho_ab: &'a DensityMatrix<T>) -> Result<Self> {
        Ok(Self {
            rho_ab,
            rho_a: rho_ab.reduced(Subsystem::A)?,
        })
    }

    pub fn reduced_a(&self) -> &DensityMatrix<T> {
        &self.rho_a
    }

    /// Per-projector gaps `I(ρ_AB, φ_k ⊗ 1) − I(ρ_A, φ_k)`.
    pub fn terms(&self, basis: &ProjectiveBasis<T>) -> Result<Vec<T>> {
        if basis.dim() != self.rho_ab.dim_a() {
            return Err(Error::DimensionMismatch {
                context: "q_objective basis",
                expected: self.rho_ab.dim_a(),
                found: basis.dim(),
            });
        }
        (0..basis.dim())
            .map(|k| {
                let global = skew_i(
                    self.rho_ab,
                    &basis.embedded_projector(k, self.rho_ab.dim_b()),
                )?;
                let local = skew_i(&self.rho_a, &basis.projector(k))?;
                Ok(global - local)
            })
            .collect()
    }

    pub fn evaluate(&self, basis: &ProjectiveBasis<T>) -> Result<T> {
        let sum = self.terms(basis)?.into_iter().fold(T::zero(), |a, b| a + b);
        Ok(clamp_q(sum))
    }
}

fn clamp_q<T: Real>(v: T) -> T {
    if v < T::zero() && v >= -T::lit(Q_NEG_TOL) {
        T::zero()
    } else {
        v
    }
}

/// `Σ_k [I(ρ_AB, φ_k ⊗ 1_B) − I(ρ_A, φ_k)]` for one basis of `H_A`.
pub fn q_objective<T: Real>(rho_ab: &DensityMatrix<T>, basis: &ProjectiveBasis<T>) -> Result<T> {
    QObjective::new(rho_ab)?.evaluate(basis)
}

/// `{cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩, −e^{−iφ} sin(θ/2)|0⟩ + cos(θ/2)|1⟩}`.
pub fn bloch_basis<T: Real>(theta: T, phi: T) -> ProjectiveBasis<T> {
    let half = theta * T::lit(0.5);
    let (s, c) = half.sin_cos();
    let e = Complex::from_polar(T::one(), phi);
    let re = |x: T| Complex::new(x, T::zero());
    let v0 = vec![re(c), e * s];
    let v1 = vec![-(e.conj() * s), re(c)];
    ProjectiveBasis::from_vectors(vec![v0, v1]).expect("Bloch vectors are orthonormal")
}

/// Hermitian generator from `d²` reals: `d` diagonal entries, then
/// `(Re, Im)` of each upper-triangular entry in row order.
pub fn hermitian_from_params<T: Real>(params: &[T], d: usize) -> Result<ComplexMatrix<T>> {
    if params.len() != d * d {
        return Err(Error::BadParamLength {
            expected: d * d,
            found: params.len(),
        });
    }
    let mut a = ComplexMatrix::zeros(d);
    for k in 0..d {
        a[(k, k)] = Complex::new(params[k], T::zero());
    }
    let mut idx = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let z = Complex::new(params[idx], params[idx + 1]);
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
            idx += 2;
        }
    }
    Ok(a)
}

/// Columns of `exp(iA(params))`, computed spectrally.
pub fn basis_from_params<T: Real>(params: &[T], d: usize) -> Result<ProjectiveBasis<T>> {
    let a = hermitian_from_params(params, d)?;
    let eig = herm_eig(&a)?;
    let v = &eig.eigenvectors;
    let phases: Vec<Complex<T>> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex::from_polar(T::one(), l))
        .collect();
    let u = ComplexMatrix::from_fn(d, |i, j| {
        (0..d).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
            acc + v[(i, k)] * phases[k] * v[(j, k)].conj()
        })
    });
    ProjectiveBasis::from_unitary(&u)
}

enum Chart {
    Bloch,
    Exponential(usize),
}

impl Chart {
    fn basis<T: Real>(&self, x: &[T]) -> Result<ProjectiveBasis<T>> {
        match self {
            Chart::Bloch => Ok(bloch_basis(x[0], x[1])),
            Chart::Exponential(d) => basis_from_params(x, *d),
        }
    }

    fn random_start(&self, rng: &mut StateRng) -> Vec<f64> {
        match self {
            Chart::Bloch => vec![
                rng.uniform_in(0.0, std::f64::consts::PI),
                rng.uniform_in(0.0, std::f64::consts::TAU),
            ],
            Chart::Exponential(d) => (0..d * d)
                .map(|_| rng.uniform_in(-std::f64::consts::PI, std::f64::consts::PI))
                .collect(),
        }
    }
}

/// Minimizes [`q_objective`] over all orthonormal bases of `H_A` (`dim_a ∈ {2, 3}`).
///
/// Deterministic for a fixed `opts.seed`: restart `r` draws its random start
/// from stream `r` of the seed. Ties between restarts go to the lowest index.
pub fn minimize_q<T: Real>(rho_ab: &DensityMatrix<T>, opts: &QOptions) -> Result<QResult<T>> {
    opts.validate()?;
    let chart = match rho_ab.dim_a() {
        2 => Chart::Bloch,
        3 => Chart::Exponential(3),
        d => {
            return Err(Error::InvalidOptions(format!(
                "minimize_q supports dim_a in {{2, 3}}, got {d}"
            )))
        }
    };
    let objective = QObjective::new(rho_ab)?;
    let eval = |x: &[T]| -> Result<T> { objective.evaluate(&chart.basis(x)?) };

    let mut evaluations = 0usize;
    let mut starts: Vec<(Vec<T>, T)> = Vec::with_capacity(opts.restarts);
    if matches!(chart, Chart::Bloch) && opts.grid_init {
        let pi = T::PI();
        let cell = pi / T::lit(GRID_CELLS as f64);
        let mut cells = Vec::with_capacity(GRID_CELLS * GRID_CELLS);
        for i in 0..GRID_CELLS {
            for j in 0..GRID_CELLS {
                let x = vec![
                    cell * T::lit(i as f64 + 0.5),
                    T::lit(2.0) * cell * T::lit(j as f64),
                ];
                let f = eval(&x)?;
                evaluations += 1;
                cells.push((f, x));
            }
        }
        // stable: equal values keep grid order
        cells.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        starts.extend(
            cells
                .into_iter()
                .take(opts.restarts)
                .map(|(_, x)| (x, cell)),
        );
    }
    for r in starts.len()..opts.restarts {
        let mut rng = StateRng::new(opts.seed, r as u64);
        let x = chart
            .random_start(&mut rng)
            .into_iter()
            .map(T::lit)
            .collect();
        starts.push((x, T::lit(0.5)));
    }

    let tolerance = T::lit(opts.tolerance);
    let mut best: Option<(T, Vec<T>)> = None;
    let mut finals = Vec::with_capacity(opts.restarts);
    let mut survivors = Vec::new();
    for (x0, step) in starts {
        let first = NelderMead {
            max_evals: opts.max_evals,
            tolerance,
        }
        .minimize(eval, &x0, step)?;
        let mut outcome = first.clone();
        let mut used = first.evals;
        // Re-seed a fresh simplex at the optimum to escape a premature collapse.
        if used < opts.max_evals {
            let polish = NelderMead {
                max_evals: opts.max_evals - used,
                tolerance,
            }
            .minimize(eval, &first.x, T::lit(0.05))?;
            used += polish.evals;
            if polish.value <= first.value {
                outcome = polish;
            } else {
                outcome.converged = polish.converged;
            }
        }
        evaluations += used;
        if outcome.converged {
            survivors.push(outcome.value);
        }
        finals.push(outcome.value);
        if best.as_ref().is_none_or(|(v, _)| outcome.value < *v) {
            best = Some((outcome.value, outcome.x));
        }
    }

    let (value, x) = best.expect("at least one restart");
    let argmin = chart.basis(&x)?;
    let range = |vals: &[T]| {
        let lo = vals.iter().copied().fold(T::infinity(), T::min);
        let hi = vals.iter().copied().fold(T::neg_infinity(), T::max);
        hi - lo
    };
    let spread = range(&finals);
    let converged = !survivors.is_empty() && range(&survivors) <= T::lit(AGREEMENT_TOL);
    Ok(QResult {
        value: clamp_q(value),
        argmin,
        evaluations,
        restarts_used: finals.len(),
        converged,
        spread,
        restart_values: finals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{cq_state, pauli, product_state, random_density, singlet, werner, Axis};

    type M = ComplexMatrix<f64>;

    fn projector_sets_match(a: &ProjectiveBasis<f64>, b: &ProjectiveBasis<f64>, tol: f64) -> bool {
        a.projectors()
            .iter()
            .all(|p| b.projectors().iter().any(|q| p.max_abs_diff(q) <= tol))
    }

    #[test]
    fn objective_examples() {
        let a: DensityMatrix<f64> = random_density(2, 1);
        let b: DensityMatrix<f64> = random_density(3, 2);
        let prod = product_state(&a, &b).unwrap();
        let basis = bloch_basis(0.7f64, 1.3);
        assert!(q_objective(&prod, &basis).unwrap().abs() < 1e-12);

        let z = ProjectiveBasis::computational(2);
        assert!((q_objective(&singlet::<f64>(), &z).unwrap() - 0.5).abs() < 1e-14);

        let r0 = DensityMatrix::new(M::from_diag(&[1.0, 0.0])).unwrap();
        let r1 = DensityMatrix::new(M::from_real_rows(2, &[0.5, 0.5, 0.5, 0.5])).unwrap();
        let cq = cq_state(&[0.5, 0.5], &[r0, r1]).unwrap();
        assert!(q_objective(&cq, &z).unwrap().abs() < 1e-12);

        assert!(matches!(
            q_objective(&singlet::<f64>(), &ProjectiveBasis::computational(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bloch_examples() {
        let z = bloch_basis(0.0, 0.0);
        assert!(projector_sets_match(
            &z,
            &ProjectiveBasis::computational(2),
            1e-15
        ));
        assert!(z.projector(0).max_abs_diff(&M::from_diag(&[1.0, 0.0])) < 1e-15);
        let x = bloch_basis(std::f64::consts::FRAC_PI_2, 0.0);
        let xe = ProjectiveBasis::eigenbasis(&pauli(Axis::X)).unwrap();
        assert!(projector_sets_match(&x, &xe, 1e-15));
        let y = bloch_basis(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        let ye = ProjectiveBasis::eigenbasis(&pauli(Axis::Y)).unwrap();
        assert!(projector_sets_match(&y, &ye, 1e-14));
    }

    #[test]
    fn param_chart_examples() {
        let b = basis_from_params(&[0.0; 9], 3).unwrap();
        assert!(projector_sets_match(
            &b,
            &ProjectiveBasis::computational(3),
            1e-15
        ));

        // A = (π/4)σ_y: diagonal zeros, upper entry −iπ/4.
        let params = [0.0, 0.0, 0.0, -std::f64::consts::FRAC_PI_4];
        let a = hermitian_from_params(&params, 2).unwrap();
        assert!(a.max_abs_diff(&pauli(Axis::Y).scale_real(std::f64::consts::FRAC_PI_4)) < 1e-16);
        let b = basis_from_params(&params, 2).unwrap();
        let x = bloch_basis(std::f64::consts::FRAC_PI_2, 0.0);
        assert!(projector_sets_match(&b, &x, 1e-14));

        let params: Vec<f64> = (0..9).map(|i| 0.37 * i as f64 - 1.1).collect();
        let b = basis_from_params(&params, 3).unwrap();
        let sum = b.projectors().iter().fold(M::zeros(3), |acc, p| &acc + p);
        assert!(sum.max_abs_diff(&M::identity(3)) < 1e-9);

        assert!(matches!(
            basis_from_params(&[0.0; 5], 2),
            Err(Error::BadParamLength {
                expected: 4,
                found: 5
            })
        ));
    }

    #[test]
    fn minimize_singlet() {
        let res = minimize_q(&singlet::<f64>(), &QOptions::default()).unwrap();
        assert!((res.value - 0.5).abs() < 1e-6);
        assert_eq!(res.restarts_used, 16);
        assert!((q_objective(&singlet(), &res.argmin).unwrap() - res.value).abs() < 1e-9);
    }

    #[test]
    fn minimize_werner_matches_closed_form() {
        for p in [-0.6f64, 0.0, 0.8] {
            let res = minimize_q(&werner(p).unwrap(), &QOptions::default()).unwrap();
            let want = 0.5 * (2.0 - p - (3.0 - 3.0 * p * p).sqrt()) / 3.0;
            assert!(
                (res.value - want).abs() < 1e-5,
                "p={p}: {} vs {want}",
                res.value
            );
        }
    }

    #[test]
    fn minimize_is_deterministic() {
        let rho = random_density::<f64>(6, 4).with_split(3, 2).unwrap();
        let opts = QOptions {
            restarts: 3,
            seed: 11,
            ..QOptions::default()
        };
        let a = minimize_q(&rho, &opts).unwrap();
        let b = minimize_q(&rho, &opts).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.argmin, b.argmin);
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn minimize_rejects_bad_inputs() {
        let rho = random_density::<f64>(8, 4).with_split(4, 2).unwrap();
        assert!(matches!(
            minimize_q(&rho, &QOptions::default()),
            Err(Error::InvalidOptions(_))
        ));
        let bad = QOptions {
            restarts: 0,
            ..QOptions::default()
        };
        assert!(minimize_q(&singlet::<f64>(), &bad).is_err());
        let bad = QOptions {
            tolerance: 0.0,
            ..QOptions::default()
        };
        assert!(minimize_q(&singlet::<f64>(), &bad).is_err());
    }
}
