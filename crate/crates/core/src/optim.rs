//! Derivative-free minimisers used by the numerical oracles.

/// Golden-section search for a minimum of `f` on `[a, b]`.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // the bracket cannot shrink below a few ulps of its endpoints
    let tol = tol.max(4.0 * f64::EPSILON * (a.abs() + b.abs()));
    for _ in 0..300 {
        if !((b - a).abs() > tol) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Cyclic coordinate descent with a golden-section line search on
/// `[x_i - h, x_i + h]` per coordinate; `h` shrinks after every sweep.
pub fn coordinate_descent<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    h0: f64,
    sweeps: usize,
) -> (Vec<f64>, f64) {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut h = h0;
    for _ in 0..sweeps {
        let before = fx;
        for i in 0..x.len() {
            let xi = x[i];
            let mut y = x.clone();
            let (t, ft) = golden_section(
                |t| {
                    y[i] = t;
                    f(&y)
                },
                xi - h,
                xi + h,
                h * 1e-6,
            );
            if ft < fx {
                x[i] = t;
                fx = ft;
            }
        }
        if before - fx <= 1e-15 * (1.0 + fx.abs()) {
            h *= 0.5;
            if h < 1e-10 {
                break;
            }
        }
    }
    (x, fx)
}

/// Options for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub step: f64,
    pub max_evals: usize,
    /// Stop when the spread of simplex values falls below this.
    pub ftol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            step: 0.1,
            max_evals: 4000,
            ftol: 1e-14,
        }
    }
}

/// Nelder–Mead simplex search with the standard coefficients.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: NelderMead,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = n + 1;
    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    order(&mut simplex);
    while evals < opts.max_evals
        && simplex[n].1 - simplex[0].1 > opts.ftol * (1.0 + simplex[0].1.abs())
    {
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|p| p.0[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|j| centroid[j] + t * (simplex[n].0[j] - centroid[j]))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            evals += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let x = along(-0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(0.5);
                let v = f(&x);
                (x, v)
            };
            evals += 1;
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    for j in 0..n {
                        p.0[j] = best[j] + 0.5 * (p.0[j] - best[j]);
                    }
                    p.1 = f(&p.0);
                }
                evals += n;
            }
        }
        order(&mut simplex);
    }
    let (x, fx) = simplex.swap_remove(0);
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -2.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn golden_terminates_below_ulp_tolerance() {
        let (x, _) = golden_section(|x| (x - 1.0).powi(2), 1.0 - 1e-10, 1.0 + 1e-10, 1e-18);
        assert!((x - 1.0).abs() < 1e-10);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let (x, fx) = nelder_mead(
            rosen,
            &[-1.2, 1.0],
            NelderMead {
                step: 0.5,
                max_evals: 10_000,
                ftol: 1e-20,
            },
        );
        assert!(fx < 1e-12, "{fx}");
        assert!((x[0] - 1.0).abs() < 1e-5 && (x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn coordinate_descent_separable_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + 3.0;
        let (x, fx) = coordinate_descent(f, &[0.0, 0.0], 2.0, 50);
        assert!((fx - 3.0).abs() < 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-5 && (x[1] + 0.5).abs() < 1e-5);
    }
}
