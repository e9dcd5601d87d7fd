//! Derivative-free simplex minimizer.
//!
//! Uses the dimension-adaptive coefficients of Gao & Han, which behave
//! better than the textbook ones beyond a handful of dimensions. When the
//! best value stalls the simplex is rebuilt around the incumbent with a
//! smaller step; the search ends once a rebuild brings no improvement or the
//! evaluation budget runs out.

#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    /// Initial edge length of the simplex.
    pub step: f64,
    pub max_evals: usize,
    /// Stall window: iterations over which the best value must improve.
    pub stall_iters: usize,
    /// Minimum improvement of the best value over the stall window.
    pub stall_tol: f64,
    /// Maximum number of simplex rebuilds after stalls.
    pub max_rebuilds: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            step: 0.25,
            max_evals: 20_000,
            stall_iters: 50,
            stall_tol: 1e-12,
            max_rebuilds: 8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub iterations: usize,
}

struct Simplex {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    fn around<F: FnMut(&[f64]) -> f64>(x0: &[f64], f0: f64, step: f64, f: &mut F) -> Self {
        let n = x0.len();
        let mut points = Vec::with_capacity(n + 1);
        let mut values = Vec::with_capacity(n + 1);
        points.push(x0.to_vec());
        values.push(f0);
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += if x[i] >= 0.0 { step } else { -step };
            values.push(f(&x));
            points.push(x);
        }
        Self { points, values }
    }

    /// Sorts vertices by value, ties broken by original order.
    fn order(&mut self) {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&i, &j| self.values[i].total_cmp(&self.values[j]).then(i.cmp(&j)));
        self.points = idx.iter().map(|&i| self.points[i].clone()).collect();
        self.values = idx.iter().map(|&i| self.values[i]).collect();
    }
}

fn blend(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

pub fn minimize<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = if n >= 2 {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let evals = std::cell::Cell::new(0usize);
    let mut eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let f0 = eval(x0);
    let mut step = opts.step;
    let mut simplex = Simplex::around(x0, f0, step, &mut eval);
    simplex.order();

    let mut iterations = 0usize;
    let mut rebuilds = 0usize;
    let mut history: Vec<f64> = vec![simplex.values[0]];
    let mut best_at_rebuild = simplex.values[0];

    loop {
        iterations += 1;

        let worst = n;
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex.points[..n].iter().map(|p| p[k]).sum::<f64>() / nf)
            .collect();

        let reflected = blend(&centroid, &simplex.points[worst], -alpha);
        let f_r = eval(&reflected);

        if f_r < simplex.values[0] {
            let expanded = blend(&centroid, &simplex.points[worst], -alpha * beta);
            let f_e = eval(&expanded);
            if f_e < f_r {
                simplex.points[worst] = expanded;
                simplex.values[worst] = f_e;
            } else {
                simplex.points[worst] = reflected;
                simplex.values[worst] = f_r;
            }
        } else if f_r < simplex.values[n - 1] {
            simplex.points[worst] = reflected;
            simplex.values[worst] = f_r;
        } else {
            let (candidate, f_c) = if f_r < simplex.values[worst] {
                let outside = blend(&centroid, &simplex.points[worst], -alpha * gamma);
                let f = eval(&outside);
                (outside, f)
            } else {
                let inside = blend(&centroid, &simplex.points[worst], gamma);
                let f = eval(&inside);
                (inside, f)
            };
            if f_c < simplex.values[worst].min(f_r) {
                simplex.points[worst] = candidate;
                simplex.values[worst] = f_c;
            } else {
                let best = simplex.points[0].clone();
                for i in 1..=n {
                    simplex.points[i] = blend(&best, &simplex.points[i], delta);
                    simplex.values[i] = eval(&simplex.points[i]);
                }
            }
        }
        simplex.order();
        history.push(simplex.values[0]);

        if evals.get() >= opts.max_evals {
            break;
        }
        if history.len() > opts.stall_iters {
            let earlier = history[history.len() - 1 - opts.stall_iters];
            if earlier - simplex.values[0] < opts.stall_tol {
                let improved = best_at_rebuild - simplex.values[0] >= opts.stall_tol;
                if rebuilds >= opts.max_rebuilds || (rebuilds > 0 && !improved) {
                    break;
                }
                rebuilds += 1;
                best_at_rebuild = simplex.values[0];
                step *= 0.5;
                let x = simplex.points[0].clone();
                let fx = simplex.values[0];
                simplex = Simplex::around(&x, fx, step, &mut eval);
                simplex.order();
                history.clear();
                history.push(simplex.values[0]);
            }
        }
    }

    NelderMeadResult {
        x: simplex.points[0].clone(),
        value: simplex.values[0],
        evals: evals.get(),
        iterations,
    }
}
