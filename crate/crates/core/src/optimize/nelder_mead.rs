//! Bounded Nelder–Mead with the dimension-adaptive coefficients of Gao
//! and Han. Candidate points are clamped into the box, which is enough
//! here because restarts recover from any simplex flattening against a
//! face.

#[derive(Debug, Clone)]
pub struct NmOutcome {
    pub best: Vec<f64>,
    pub value: f64,
    pub evaluations: u64,
}

/// Minimize `f` over the box `bounds` starting from `x0`.
///
/// Stops when the simplex diameter (max pairwise L∞ distance) drops
/// below `tolerance` or after `max_evals` objective evaluations.
pub fn minimize<F>(
    mut f: F,
    x0: &[f64],
    bounds: &[(f64, f64)],
    max_evals: usize,
    tolerance: f64,
) -> NmOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    assert_eq!(bounds.len(), dim);
    assert!(dim >= 1);

    let clamp = |x: &mut Vec<f64>| {
        for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(lo, hi);
        }
    };

    let n = dim as f64;
    let (refl, expand, contract, shrink) = if dim >= 2 {
        (1.0, 1.0 + 2.0 / n, 0.75 - 0.5 / n, 1.0 - 1.0 / n)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut evals: u64 = 0;
    let mut eval = |x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    // initial simplex: x0 plus one step along each axis, kept in the box
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    {
        let mut p0 = x0.to_vec();
        clamp(&mut p0);
        let v0 = eval(&p0, &mut evals);
        simplex.push((p0.clone(), v0));
        for i in 0..dim {
            let (lo, hi) = bounds[i];
            let step = 0.1 * (hi - lo);
            let mut p = p0.clone();
            p[i] = if p[i] + step <= hi {
                p[i] + step
            } else {
                p[i] - step
            };
            clamp(&mut p);
            let v = eval(&p, &mut evals);
            simplex.push((p, v));
        }
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));

        // diameter over all vertex pairs in the sup norm
        let mut diameter = 0.0f64;
        for i in 0..simplex.len() {
            for j in i + 1..simplex.len() {
                let d = simplex[i]
                    .0
                    .iter()
                    .zip(&simplex[j].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                diameter = diameter.max(d);
            }
        }
        if diameter < tolerance || evals as usize >= max_evals {
            break;
        }

        let worst = simplex[dim].clone();
        let second_worst_val = simplex[dim - 1].1;
        let best_val = simplex[0].1;

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(p, _)| p[i]).sum::<f64>() / n)
            .collect();

        let shift = |coef: f64| -> Vec<f64> {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coef * (c - w))
                .collect();
            for (v, &(lo, hi)) in p.iter_mut().zip(bounds) {
                *v = v.clamp(lo, hi);
            }
            p
        };

        let reflected = shift(refl);
        let refl_val = eval(&reflected, &mut evals);

        if refl_val < best_val {
            let expanded = shift(refl * expand);
            let exp_val = eval(&expanded, &mut evals);
            simplex[dim] = if exp_val < refl_val {
                (expanded, exp_val)
            } else {
                (reflected, refl_val)
            };
        } else if refl_val < second_worst_val {
            simplex[dim] = (reflected, refl_val);
        } else {
            let (candidate, cand_val) = if refl_val < worst.1 {
                let outside = shift(refl * contract);
                let v = eval(&outside, &mut evals);
                (outside, v)
            } else {
                let inside = shift(-contract);
                let v = eval(&inside, &mut evals);
                (inside, v)
            };
            if cand_val < worst.1.min(refl_val) {
                simplex[dim] = (candidate, cand_val);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let mut p: Vec<f64> = best
                        .iter()
                        .zip(&entry.0)
                        .map(|(b, x)| b + shrink * (x - b))
                        .collect();
                    for (v, &(lo, hi)) in p.iter_mut().zip(bounds) {
                        *v = v.clamp(lo, hi);
                    }
                    let v = eval(&p, &mut evals);
                    *entry = (p, v);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best, value) = simplex.swap_remove(0);
    NmOutcome {
        best,
        value,
        evaluations: evals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2) + (x[1] + 0.7).powi(2);
        let out = minimize(f, &[2.0, 2.0], &[(-4.0, 4.0), (-4.0, 4.0)], 2000, 1e-9);
        assert!((out.best[0] - 0.3).abs() < 1e-6);
        assert!((out.best[1] + 0.7).abs() < 1e-6);
        assert!(out.value < 1e-12);
    }

    #[test]
    fn respects_bounds() {
        // unconstrained optimum at (−2, −2) sits outside the box
        let f = |x: &[f64]| (x[0] + 2.0).powi(2) + (x[1] + 2.0).powi(2);
        let out = minimize(f, &[0.5, 0.5], &[(0.0, 1.0), (0.0, 1.0)], 4000, 1e-10);
        assert!(out.best[0].abs() < 1e-6);
        assert!(out.best[1].abs() < 1e-6);
    }

    #[test]
    fn one_dimensional() {
        let f = |x: &[f64]| (x[0] - 1.1).powi(4);
        let out = minimize(f, &[-3.0], &[(-4.0, 4.0)], 2000, 1e-10);
        assert!((out.best[0] - 1.1).abs() < 1e-2);
    }

    #[test]
    fn deterministic() {
        let f = |x: &[f64]| x[0].sin() * x[1].cos() + 0.1 * x[0] * x[0];
        let a = minimize(f, &[1.0, 1.0], &[(-3.0, 3.0), (-3.0, 3.0)], 500, 1e-9);
        let b = minimize(f, &[1.0, 1.0], &[(-3.0, 3.0), (-3.0, 3.0)], 500, 1e-9);
        assert_eq!(a.best, b.best);
        assert_eq!(a.value, b.value);
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn rosenbrock_two_dim() {
        let f = |x: &[f64]| {
            let a = 1.0 - x[0];
            let b = x[1] - x[0] * x[0];
            a * a + 100.0 * b * b
        };
        let out = minimize(f, &[-1.2, 1.0], &[(-5.0, 5.0), (-5.0, 5.0)], 4000, 1e-12);
        assert!(out.value < 1e-8, "value {}", out.value);
    }
}
