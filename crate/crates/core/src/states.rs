//! States, observables, seeded random sampling and the JSON state-file format.
//!
//! # Random streams
//!
//! All sampling goes through [`StateRng`], a ChaCha20 generator
//! (`rand_chacha::ChaCha20Rng`) keyed by `seed_from_u64(seed)` and positioned
//! on stream number `stream`. Uniform variates are `(next_u64() >> 11) · 2⁻⁵³`
//! in `[0, 1)`. Complex Gaussians use Box–Muller on two consecutive uniforms
//! `u1, u2`: with `r = √(−2 ln(1 − u1))`, the sample is
//! `(r cos 2πu2 + i r sin 2πu2) / √2`. Matrices are filled row-major, one
//! complex sample per entry.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;
use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hermlin::{kron, ComplexMatrix};
use crate::scalar::Real;
use crate::skewinfo::{DensityMatrix, ProjectiveBasis};

/// Tolerance on `Σ p_k = 1` for CQ-state weights.
pub const PROBABILITY_TOL: f64 = 1e-10;

/// Reproducible random source, see the module docs for the exact algorithm.
#[derive(Clone, Debug)]
pub struct StateRng {
    inner: ChaCha20Rng,
}

impl StateRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Pair of independent standard normals (Box–Muller).
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        (r * c, r * s)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian<T: Real>(&mut self) -> Complex<T> {
        let (a, b) = self.normal_pair();
        let k = std::f64::consts::FRAC_1_SQRT_2;
        Complex::new(T::lit(a * k), T::lit(b * k))
    }

    /// `d×d` matrix of i.i.d. complex Gaussians (Ginibre ensemble).
    pub fn ginibre<T: Real>(&mut self, d: usize) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(d, |_, _| self.complex_gaussian())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub fn pauli<T: Real>(axis: Axis) -> ComplexMatrix<T> {
    let (o, l) = (T::zero(), T::one());
    let z = |re, im| Complex::new(re, im);
    let data = match axis {
        Axis::X => vec![z(o, o), z(l, o), z(l, o), z(o, o)],
        Axis::Y => vec![z(o, o), z(o, -l), z(o, l), z(o, o)],
        Axis::Z => vec![z(l, o), z(o, o), z(o, o), z(-l, o)],
    };
    ComplexMatrix::from_vec(2, data).expect("2x2")
}

/// SWAP on `C^d ⊗ C^d`: `|kl⟩ ↦ |lk⟩`.
pub fn swap<T: Real>(d: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(d * d);
    for k in 0..d {
        for l in 0..d {
            m[(k * d + l, l * d + k)] = Complex::new(T::one(), T::zero());
        }
    }
    m
}

/// Two-qubit Werner state `(2−p)/6 · 1₄ + (2p−1)/6 · SWAP`, `p ∈ [−1, 1]`.
pub fn werner<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    if !(p >= -T::one() && p <= T::one()) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p.as_f64(),
            min: -1.0,
            max: 1.0,
        });
    }
    let six = T::lit(6.0);
    let a = (T::lit(2.0) - p) / six;
    let b = (T::lit(2.0) * p - T::one()) / six;
    let mat = &ComplexMatrix::identity(4).scale_real(a) + &swap(2).scale_real(b);
    DensityMatrix::bipartite(mat, 2, 2)
}

/// `(|01⟩ − |10⟩)(⟨01| − ⟨10|) / 2`.
pub fn singlet<T: Real>() -> DensityMatrix<T> {
    let s = T::FRAC_1_SQRT_2();
    let z = Complex::zero();
    let v = [
        z,
        Complex::new(s, T::zero()),
        Complex::new(-s, T::zero()),
        z,
    ];
    DensityMatrix::bipartite(ComplexMatrix::outer(&v), 2, 2).expect("singlet is a valid state")
}

/// Pure state `|ψ⟩⟨ψ|` from an unnormalized vector.
pub fn pure_state<T: Real>(v: &[Complex<T>]) -> Result<DensityMatrix<T>> {
    let norm = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
    if !(norm > T::zero()) {
        return Err(Error::Validation("zero state vector".into()));
    }
    let v: Vec<_> = v.iter().map(|z| z / norm).collect();
    DensityMatrix::new(ComplexMatrix::outer(&v))
}

/// `ρ_A ⊗ ρ_B` as a bipartite state.
pub fn product_state<T: Real>(
    a: &DensityMatrix<T>,
    b: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    DensityMatrix::bipartite(kron(a.matrix(), b.matrix()), a.dim(), b.dim())
}

/// Classical-quantum state `Σ_k p_k |k⟩⟨k| ⊗ ρ_k`.
pub fn cq_state<T: Real>(probs: &[T], blocks: &[DensityMatrix<T>]) -> Result<DensityMatrix<T>> {
    if probs.is_empty() || probs.len() != blocks.len() {
        return Err(Error::BadProbabilities(format!(
            "{} weights for {} blocks",
            probs.len(),
            blocks.len()
        )));
    }
    if let Some(p) = probs.iter().find(|p| !(**p >= T::zero())) {
        return Err(Error::BadProbabilities(format!(
            "negative weight {}",
            p.as_f64()
        )));
    }
    let total = probs.iter().fold(T::zero(), |a, &b| a + b);
    if (total - T::one()).abs() > T::tol(PROBABILITY_TOL) {
        return Err(Error::BadProbabilities(format!(
            "weights sum to {}",
            total.as_f64()
        )));
    }
    let dim_b = blocks[0].dim();
    if let Some(b) = blocks.iter().find(|b| b.dim() != dim_b) {
        return Err(Error::DimensionMismatch {
            context: "cq_state block",
            expected: dim_b,
            found: b.dim(),
        });
    }
    let dim_a = probs.len();
    let mut mat = ComplexMatrix::zeros(dim_a * dim_b);
    for (k, (p, block)) in probs.iter().zip(blocks).enumerate() {
        let mut e = ComplexMatrix::zeros(dim_a);
        e[(k, k)] = Complex::new(*p, T::zero());
        mat = &mat + &kron(&e, block.matrix());
    }
    DensityMatrix::bipartite(mat, dim_a, dim_b)
}

/// Hilbert–Schmidt random state `GG†/Tr(GG†)` drawn from `rng`.
pub fn random_density_with<T: Real>(d: usize, rng: &mut StateRng) -> DensityMatrix<T> {
    let g: ComplexMatrix<T> = rng.ginibre(d);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new(w.scale_real(T::one() / tr)).expect("GG† is a valid state")
}

/// Hilbert–Schmidt random state on stream 0 of `seed`.
pub fn random_density<T: Real>(d: usize, seed: u64) -> DensityMatrix<T> {
    random_density_with(d, &mut StateRng::new(seed, 0))
}

pub fn random_pure_with<T: Real>(d: usize, rng: &mut StateRng) -> DensityMatrix<T> {
    let v: Vec<Complex<T>> = (0..d).map(|_| rng.complex_gaussian()).collect();
    pure_state(&v).expect("gaussian vector is nonzero")
}

/// Uniformly random pure state on stream 0 of `seed`.
pub fn random_pure<T: Real>(d: usize, seed: u64) -> DensityMatrix<T> {
    random_pure_with(d, &mut StateRng::new(seed, 0))
}

/// Haar-random unitary: Gram–Schmidt on the columns of a Ginibre matrix.
pub fn random_unitary_with<T: Real>(d: usize, rng: &mut StateRng) -> ComplexMatrix<T> {
    let g: ComplexMatrix<T> = rng.ginibre(d);
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        // Two passes keep the columns orthonormal to working precision.
        for _ in 0..2 {
            for q in &cols {
                let ip = q
                    .iter()
                    .zip(&v)
                    .fold(Complex::zero(), |acc: Complex<T>, (a, b)| {
                        acc + a.conj() * *b
                    });
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= *qi * ip;
                }
            }
        }
        let norm = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

/// Gaussian Hermitian matrix `(G + G†)/2`.
pub fn random_hermitian_with<T: Real>(d: usize, rng: &mut StateRng) -> ComplexMatrix<T> {
    rng.ginibre::<T>(d).symmetrized()
}

/// Haar-random orthonormal basis.
pub fn random_basis_with<T: Real>(d: usize, rng: &mut StateRng) -> ProjectiveBasis<T> {
    ProjectiveBasis::from_unitary(&random_unitary_with(d, rng))
        .expect("unitary columns are orthonormal")
}

/// On-disk representation of a state or observable.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dim_a: usize,
    dim_b: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
    #[serde(default)]
    hermitian_only: bool,
}

fn parse_file(text: &str) -> Result<StateFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn assemble<T: Real>(file: &StateFile, dim: usize) -> Result<ComplexMatrix<T>> {
    for (name, rows) in [("re", &file.re), ("im", &file.im)] {
        if rows.len() != dim {
            return Err(Error::Validation(format!(
                "field `{name}` has {} rows, expected {dim}",
                rows.len()
            )));
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::Validation(format!(
                "field `{name}` row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
    }
    let data = (0..dim * dim)
        .map(|k| {
            let (i, j) = (k / dim, k % dim);
            Complex::new(T::lit(file.re[i][j]), T::lit(file.im[i][j]))
        })
        .collect();
    ComplexMatrix::from_vec(dim, data).map_err(|e| Error::Validation(e.to_string()))
}

/// Parses a state document and validates it as a density matrix.
pub fn parse_state<T: Real>(text: &str) -> Result<DensityMatrix<T>> {
    let file = parse_file(text)?;
    if file.dim_a == 0 || file.dim_b == 0 {
        return Err(Error::Validation("dim_a and dim_b must be positive".into()));
    }
    let mat = assemble(&file, file.dim_a * file.dim_b)?;
    DensityMatrix::bipartite(mat, file.dim_a, file.dim_b).map_err(|e| {
        let detail = match e {
            Error::Validation(msg) => msg,
            other => other.to_string(),
        };
        Error::Validation(format!("DensityMatrix invariant failed: {detail}"))
    })
}

/// Parses an observable document (`"hermitian_only": true`, dimension `dim_a`).
pub fn parse_observable<T: Real>(text: &str) -> Result<ComplexMatrix<T>> {
    let file = parse_file(text)?;
    if !file.hermitian_only {
        return Err(Error::Validation(
            "observable files must set \"hermitian_only\": true".into(),
        ));
    }
    if file.dim_a == 0 {
        return Err(Error::Validation("dim_a must be positive".into()));
    }
    let mat = assemble(&file, file.dim_a)?;
    mat.to_hermitian()
        .map_err(|e| Error::Validation(format!("observable is not Hermitian: {e}")))
}

fn render(
    dim_a: usize,
    dim_b: usize,
    m: &ComplexMatrix<impl Real>,
    hermitian_only: bool,
) -> String {
    let n = m.dim();
    let block = |part: &dyn Fn(usize, usize) -> f64| {
        let mut s = String::from("[\n");
        for i in 0..n {
            s.push_str("    [");
            for j in 0..n {
                if j > 0 {
                    s.push_str(", ");
                }
                write!(s, "{:.16e}", part(i, j)).unwrap();
            }
            s.push(']');
            if i + 1 < n {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("  ]");
        s
    };
    let mut out = format!("{{\n  \"dim_a\": {dim_a},\n  \"dim_b\": {dim_b},\n");
    if hermitian_only {
        out.push_str("  \"hermitian_only\": true,\n");
    }
    writeln!(out, "  \"re\": {},", block(&|i, j| m[(i, j)].re.as_f64())).unwrap();
    write!(
        out,
        "  \"im\": {}\n}}\n",
        block(&|i, j| m[(i, j)].im.as_f64())
    )
    .unwrap();
    out
}

/// Serializes a state with 17 significant digits per number.
pub fn state_to_string<T: Real>(rho: &DensityMatrix<T>) -> String {
    render(rho.dim_a(), rho.dim_b(), rho.matrix(), false)
}

pub fn observable_to_string<T: Real>(h: &ComplexMatrix<T>) -> String {
    render(h.dim(), 1, h, true)
}

pub fn load_state<T: Real>(path: impl AsRef<Path>) -> Result<DensityMatrix<T>> {
    parse_state(&std::fs::read_to_string(path)?)
}

pub fn save_state<T: Real>(rho: &DensityMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, state_to_string(rho))?;
    Ok(())
}

pub fn load_observable<T: Real>(path: impl AsRef<Path>) -> Result<ComplexMatrix<T>> {
    parse_observable(&std::fs::read_to_string(path)?)
}

pub fn save_observable<T: Real>(h: &ComplexMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, observable_to_string(h))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermlin::{herm_eig, partial_trace, Subsystem};

    type M = ComplexMatrix<f64>;

    #[test]
    fn werner_examples() {
        let w = werner(0.5).unwrap();
        assert!(w.matrix().max_abs_diff(&M::identity(4).scale_real(0.25)) < 1e-16);
        let w = werner(-1.0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let direct = M::outer(&[
            Complex::zero(),
            Complex::new(s, 0.0),
            Complex::new(-s, 0.0),
            Complex::zero(),
        ]);
        assert!(w.matrix().max_abs_diff(&direct) < 1e-15);
        let w = werner(1.0f64).unwrap();
        let ev = herm_eig(w.matrix()).unwrap().eigenvalues;
        let want = [0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(matches!(werner(1.5), Err(Error::OutOfRange { .. })));
        assert!(werner(f64::NAN).is_err());
    }

    #[test]
    fn werner_spectrum_and_marginals() {
        for i in 0..=20 {
            let p = -1.0 + 0.1 * i as f64;
            let w = werner(p).unwrap();
            let mut want = vec![(1.0 + p) / 6.0; 3];
            want.push((1.0 - p) / 2.0);
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in w.eigenvalues().iter().zip(&want) {
                assert!((a - b).abs() < 1e-14, "p={p}");
            }
            for keep in [Subsystem::A, Subsystem::B] {
                let r = partial_trace(w.matrix(), 2, 2, keep).unwrap();
                assert!(r.max_abs_diff(&M::identity(2).scale_real(0.5)) < 1e-12);
            }
        }
    }

    #[test]
    fn pauli_and_singlet() {
        assert_eq!(
            pauli::<f64>(Axis::X),
            M::from_real_rows(2, &[0., 1., 1., 0.])
        );
        assert_eq!(
            pauli::<f64>(Axis::Z),
            M::from_real_rows(2, &[1., 0., 0., -1.])
        );
        let y = pauli::<f64>(Axis::Y);
        assert_eq!(y[(0, 1)], Complex::new(0.0, -1.0));
        let s = singlet::<f64>();
        assert!(s.matrix().max_abs_diff(werner(-1.0).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn cq_examples() {
        let r0 = DensityMatrix::new(M::from_diag(&[0.7, 0.3])).unwrap();
        let r1 = DensityMatrix::new(M::from_real_rows(2, &[0.5, 0.5, 0.5, 0.5])).unwrap();
        let cq = cq_state(&[1.0, 0.0], &[r0.clone(), r1.clone()]).unwrap();
        let want = kron(&M::from_diag(&[1.0, 0.0]), r0.matrix());
        assert!(cq.matrix().max_abs_diff(&want) < 1e-16);

        let half = DensityMatrix::new(M::identity(2).scale_real(0.5)).unwrap();
        let cq = cq_state(&[0.5, 0.5], &[half.clone(), half.clone()]).unwrap();
        assert!(cq.matrix().max_abs_diff(&M::identity(4).scale_real(0.25)) < 1e-16);
        assert_eq!((cq.dim_a(), cq.dim_b()), (2, 2));

        assert!(matches!(
            cq_state(&[0.6, 0.6], &[half.clone(), half.clone()]),
            Err(Error::BadProbabilities(_))
        ));
        assert!(matches!(
            cq_state(&[1.5, -0.5], &[half.clone(), half.clone()]),
            Err(Error::BadProbabilities(_))
        ));
        assert!(cq_state(&[1.0], &[half.clone(), half]).is_err());
    }

    #[test]
    fn random_determinism() {
        let a: DensityMatrix<f64> = random_density(4, 9);
        let b: DensityMatrix<f64> = random_density(4, 9);
        assert_eq!(a.matrix(), b.matrix());
        let c: DensityMatrix<f64> = random_density(4, 10);
        assert_ne!(a.matrix(), c.matrix());
        assert!((a.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(a.eigenvalues()[0] >= 0.0);
        let p: DensityMatrix<f64> = random_pure(5, 3);
        assert!((p.purity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn streams_are_independent() {
        let mut a = StateRng::new(1, 0);
        let mut b = StateRng::new(1, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = StateRng::new(5, 0);
        for d in 2..=6 {
            let u: M = random_unitary_with(d, &mut rng);
            assert!((&u.adjoint() * &u).max_abs_diff(&M::identity(d)) < 1e-14);
        }
    }

    #[test]
    fn file_round_trip() {
        let rho: DensityMatrix<f64> = random_density(6, 17).with_split(2, 3).unwrap();
        let text = state_to_string(&rho);
        let back: DensityMatrix<f64> = parse_state(&text).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
        assert_eq!((back.dim_a(), back.dim_b()), (2, 3));
    }

    #[test]
    fn file_errors() {
        match parse_state::<f64>("{\"dim_a\": 2,\n \"dim_b\": x}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad_trace = r#"{"dim_a":2,"dim_b":1,"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}"#;
        match parse_state::<f64>(bad_trace) {
            Err(Error::Validation(msg)) => assert!(msg.contains("trace"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let bad_rows = r#"{"dim_a":2,"dim_b":1,"re":[[1,0]],"im":[[0,0],[0,0]]}"#;
        match parse_state::<f64>(bad_rows) {
            Err(Error::Validation(msg)) => assert!(msg.contains("`re`"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let unknown = r#"{"dim_a":1,"dim_b":1,"re":[[1]],"im":[[0]],"extra":1}"#;
        assert!(matches!(
            parse_state::<f64>(unknown),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn observable_files() {
        let h = pauli::<f64>(Axis::Y);
        let text = observable_to_string(&h);
        assert_eq!(parse_observable::<f64>(&text).unwrap(), h);
        let not_flagged = r#"{"dim_a":2,"dim_b":1,"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}"#;
        assert!(parse_observable::<f64>(not_flagged).is_err());
        let non_herm =
            r#"{"dim_a":2,"dim_b":1,"hermitian_only":true,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]}"#;
        assert!(parse_observable::<f64>(non_herm).is_err());
    }
}
