//! Derivative-free simplex minimizer with restarts on stagnation.

/// Outcome of [`minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// Objective evaluations spent.
    pub evaluations: usize,
    /// Simplex iterations performed.
    pub iterations: usize,
    /// Best value after each iteration.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    /// Initial simplex edge length.
    pub step: f64,
    /// Spread of simplex values below which the simplex is rebuilt around
    /// the current best vertex.
    pub tolerance: f64,
    /// Iterations without improvement of the best value before a restart.
    pub stall_limit: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            step: 0.5,
            tolerance: 1e-8,
            stall_limit: 60,
        }
    }
}

fn simplex_around(x0: &[f64], step: f64) -> Vec<Vec<f64>> {
    let mut simplex = vec![x0.to_vec()];
    for i in 0..x0.len() {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    simplex
}

/// Minimizes `f` from `x0` with standard reflection/expansion/contraction/
/// shrink coefficients (1, 2, 0.5, 0.5).
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    if n == 0 {
        let value = eval(x0, &mut evaluations);
        return Minimum {
            x: Vec::new(),
            value,
            evaluations,
            iterations: 0,
            history: Vec::new(),
        };
    }

    let mut simplex = simplex_around(x0, opts.step);
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evaluations)).collect();
    let mut best_x = x0.to_vec();
    let mut best_value = values[0];
    let mut history = Vec::with_capacity(opts.max_iterations);
    let mut stalled = 0;

    for _ in 0..opts.max_iterations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if values[0] < best_value {
            best_value = values[0];
            best_x.clone_from(&simplex[0]);
            stalled = 0;
        } else {
            stalled += 1;
        }

        if values[n] - values[0] < opts.tolerance || stalled >= opts.stall_limit {
            simplex = simplex_around(&best_x, opts.step);
            values = simplex.iter().map(|v| eval(v, &mut evaluations)).collect();
            stalled = 0;
            history.push(best_value);
            continue;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|v| v[d]).sum::<f64>() / n as f64)
            .collect();
        let toward = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };

        let reflected = toward(-1.0);
        let fr = eval(&reflected, &mut evaluations);
        if fr < values[0] {
            let expanded = toward(-2.0);
            let fe = eval(&expanded, &mut evaluations);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let (candidate, fc) = if fr < values[n] {
                let c = toward(-0.5);
                let fc = eval(&c, &mut evaluations);
                (c, fc)
            } else {
                let c = toward(0.5);
                let fc = eval(&c, &mut evaluations);
                (c, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = candidate;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    let shrunk: Vec<f64> = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, v)| b + 0.5 * (v - b))
                        .collect();
                    values[i] = eval(&shrunk, &mut evaluations);
                    simplex[i] = shrunk;
                }
            }
        }
        let round_best = values.iter().copied().fold(f64::INFINITY, f64::min);
        if round_best < best_value {
            let i = values.iter().position(|&v| v == round_best).expect("present");
            best_value = round_best;
            best_x.clone_from(&simplex[i]);
            stalled = 0;
        }
        history.push(best_value);
    }

    Minimum {
        x: best_x,
        value: best_value,
        evaluations,
        iterations: history.len(),
        history,
    }
}
