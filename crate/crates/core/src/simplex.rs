//! Nelder-Mead simplex minimization in two dimensions inside a box.
//!
//! Vertices may step outside the box; such points are scored as the value at
//! the nearest in-box point plus an L1 penalty on the overshoot. Projecting
//! vertices onto the boundary instead would flatten the simplex onto an edge
//! and stall it there.

/// Termination and step settings.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Stop once every vertex is within this distance (max-norm) of the best.
    pub x_tol: f64,
    /// ...and every vertex value is within this of the best value.
    pub f_tol: f64,
    pub max_iter: usize,
    pub lower: [f64; 2],
    pub upper: [f64; 2],
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-4,
            f_tol: 1e-6,
            max_iter: 2000,
            lower: [0.0, 0.0],
            upper: [1.0, 1.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexResult {
    pub x: [f64; 2],
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

const PENALTY: f64 = 1.0;
const ALPHA: f64 = 1.0;
const GAMMA: f64 = 2.0;
const RHO: f64 = 0.5;
const SIGMA: f64 = 0.5;

fn clamp(x: [f64; 2], opts: &SimplexOptions) -> [f64; 2] {
    [
        x[0].clamp(opts.lower[0], opts.upper[0]),
        x[1].clamp(opts.lower[1], opts.upper[1]),
    ]
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn overshoot(x: [f64; 2], opts: &SimplexOptions) -> f64 {
    let c = clamp(x, opts);
    (x[0] - c[0]).abs() + (x[1] - c[1]).abs()
}

/// Minimizes `f` over the box starting from the given simplex. `f` is only
/// ever called at in-box points.
pub fn minimize<F>(mut f: F, initial: [[f64; 2]; 3], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut([f64; 2]) -> f64,
{
    let mut evals = 0usize;
    let mut eval = |x: [f64; 2], evals: &mut usize| {
        *evals += 1;
        f(clamp(x, &opts)) + PENALTY * overshoot(x, &opts)
    };

    let mut pts: Vec<([f64; 2], f64)> = initial
        .iter()
        .map(|&x| {
            let x = clamp(x, &opts);
            (x, eval(x, &mut evals))
        })
        .collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (pts[0], pts[2]);
        let x_spread = pts[1..]
            .iter()
            .map(|(x, _)| (x[0] - best.0[0]).abs().max((x[1] - best.0[1]).abs()))
            .fold(0.0, f64::max);
        let f_spread = (worst.1 - best.1).abs();
        if x_spread <= opts.x_tol && f_spread <= opts.f_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid = lerp(pts[0].0, pts[1].0, 0.5);
        let reflected = lerp(centroid, worst.0, -ALPHA);
        let fr = eval(reflected, &mut evals);

        if fr < pts[0].1 {
            let expanded = lerp(centroid, worst.0, -GAMMA);
            let fe = eval(expanded, &mut evals);
            pts[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < pts[1].1 {
            pts[2] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let c = lerp(centroid, reflected, RHO);
            (c, eval(c, &mut evals))
        } else {
            let c = lerp(centroid, worst.0, RHO);
            (c, eval(c, &mut evals))
        };
        if fc < worst.1.min(fr) {
            pts[2] = (contracted, fc);
            continue;
        }
        let anchor = pts[0].0;
        for v in pts.iter_mut().skip(1) {
            let x = lerp(anchor, v.0, SIGMA);
            *v = (x, eval(x, &mut evals));
        }
    }
    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let x = clamp(pts[0].0, &opts);
    let f_best = if overshoot(pts[0].0, &opts) == 0.0 {
        pts[0].1
    } else {
        evals += 1;
        f(x)
    };
    SimplexResult {
        x,
        f: f_best,
        iterations,
        evaluations: evals,
        converged,
    }
}
