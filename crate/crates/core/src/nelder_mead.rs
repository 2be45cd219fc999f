//! Derivative-free Nelder–Mead simplex search.

use crate::scalar::Real;

/// Stopping rule for one simplex run.
#[derive(Clone, Copy, Debug)]
pub struct NelderMead<T> {
    /// Objective evaluations allowed, including the initial simplex.
    pub max_evals: usize,
    /// Stop once every vertex lies within this distance of the best one.
    pub tolerance: T,
}

#[derive(Clone, Debug)]
pub struct Outcome<T> {
    pub x: Vec<T>,
    pub value: T,
    pub evals: usize,
    /// `true` if the simplex shrank below the tolerance before the budget ran out.
    pub converged: bool,
}

struct Vertex<T> {
    x: Vec<T>,
    f: T,
}

impl<T: Real> NelderMead<T> {
    /// Minimizes `f` from an axis-aligned simplex `x0 + step·e_i`.
    pub fn minimize<E>(
        &self,
        mut f: impl FnMut(&[T]) -> Result<T, E>,
        x0: &[T],
        step: T,
    ) -> Result<Outcome<T>, E> {
        let n = x0.len();
        let (alpha, gamma, rho, sigma) = (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5));
        let mut evals = 0usize;
        let mut eval = |x: &[T], evals: &mut usize| -> Result<T, E> {
            *evals += 1;
            let v = f(x)?;
            Ok(if v.is_nan() { T::infinity() } else { v })
        };

        let mut simplex = Vec::with_capacity(n + 1);
        simplex.push(Vertex {
            x: x0.to_vec(),
            f: eval(x0, &mut evals)?,
        });
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += step;
            let fx = eval(&x, &mut evals)?;
            simplex.push(Vertex { x, f: fx });
        }

        let mut converged = false;
        loop {
            // Stable sort keeps earlier vertices first among ties.
            simplex.sort_by(|a, b| a.f.partial_cmp(&b.f).expect("NaN mapped to inf"));
            if diameter(&simplex) < self.tolerance {
                converged = true;
                break;
            }
            if evals >= self.max_evals {
                break;
            }

            let centroid: Vec<T> = (0..n)
                .map(|j| {
                    simplex[..n].iter().fold(T::zero(), |acc, v| acc + v.x[j]) / T::lit(n as f64)
                })
                .collect();
            let along = |t: T, from: &[T]| -> Vec<T> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(&c, &w)| c + t * (w - c))
                    .collect()
            };
            let worst = simplex[n].x.clone();
            let f_best = simplex[0].f;
            let f_second = simplex[n - 1].f;
            let f_worst = simplex[n].f;

            let xr = along(-alpha, &worst);
            let fr = eval(&xr, &mut evals)?;
            if fr < f_best {
                let xe = along(-gamma, &worst);
                let fe = eval(&xe, &mut evals)?;
                simplex[n] = if fe < fr {
                    Vertex { x: xe, f: fe }
                } else {
                    Vertex { x: xr, f: fr }
                };
                continue;
            }
            if fr < f_second {
                simplex[n] = Vertex { x: xr, f: fr };
                continue;
            }
            let (xc, fc, accept) = if fr < f_worst {
                let xc = along(-rho, &worst);
                let fc = eval(&xc, &mut evals)?;
                let ok = fc <= fr;
                (xc, fc, ok)
            } else {
                let xc = along(rho, &worst);
                let fc = eval(&xc, &mut evals)?;
                let ok = fc < f_worst;
                (xc, fc, ok)
            };
            if accept {
                simplex[n] = Vertex { x: xc, f: fc };
                continue;
            }
            let best = simplex[0].x.clone();
            for v in simplex.iter_mut().skip(1) {
                for (xi, &bi) in v.x.iter_mut().zip(&best) {
                    *xi = bi + sigma * (*xi - bi);
                }
                v.f = eval(&v.x, &mut evals)?;
            }
        }

        let best = simplex.swap_remove(0);
        Ok(Outcome {
            x: best.x,
            value: best.f,
            evals,
            converged,
        })
    }
}

fn diameter<T: Real>(simplex: &[Vertex<T>]) -> T {
    let best = &simplex[0].x;
    simplex[1..].iter().fold(T::zero(), |m, v| {
        let d =
            v.x.iter()
                .zip(best)
                .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
                .sqrt();
        m.max(d)
    })
}
