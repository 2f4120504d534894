//! Polynomials in a single creation operator and their root representation.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const ROOT_RESIDUAL_TARGET: f64 = 1e-12;
const ROOT_ITERATION_BUDGET: usize = 500;

/// A polynomial Σ_k c_k (a†)^k with complex coefficients, index = power.
#[derive(Debug, Clone, PartialEq)]
pub struct CreationPolynomial {
    coeffs: Vec<C64>,
}

impl CreationPolynomial {
    /// Build from coefficients (constant term first). The leading
    /// coefficient must be nonzero.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::InvalidConfig("empty coefficient list".into())),
            Some(lead) if lead.norm() == 0.0 => Err(Error::LeadingTermVanishes),
            Some(_) => Ok(CreationPolynomial { coeffs }),
        }
    }

    /// Monic polynomial Π_j (z − z_j) expanded from its roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        CreationPolynomial { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Evaluate at z (Horner).
    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluate the derivative at z.
    pub fn eval_derivative(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * (k as f64);
        }
        acc
    }

    /// Coefficients of the order-th derivative.
    fn derivative_coeffs(&self, order: usize) -> Vec<C64> {
        let mut c = self.coeffs.clone();
        for _ in 0..order {
            if c.len() <= 1 {
                return vec![C64::new(0.0, 0.0)];
            }
            c = c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &x)| x * (k as f64))
                .collect();
        }
        c
    }

    /// Multiply by another polynomial (convolution of coefficients).
    pub fn multiply(&self, other: &CreationPolynomial) -> CreationPolynomial {
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CreationPolynomial { coeffs: out }
    }
}

/// Factored form of a [`CreationPolynomial`]: scale · Π_j (z − z_j).
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<C64>,
    pub scale: C64,
}

impl RootSet {
    /// Expand back into coefficient form.
    pub fn expand(&self) -> CreationPolynomial {
        let monic = CreationPolynomial::from_roots(&self.roots);
        let coeffs = monic.coeffs.iter().map(|c| c * self.scale).collect();
        CreationPolynomial { coeffs }
    }
}

/// All complex roots of `p`, with multiplicity, by the Aberth–Ehrlich
/// simultaneous iteration.
///
/// Deterministic start: the degree-many points on a circle of radius
/// 1 + max|coeff| of the monic-normalized polynomial. Converged when the
/// relative backward residual of every root is below 1e-12; errors with
/// `NonConvergence` after 500 iterations otherwise.
pub fn polynomial_roots(p: &CreationPolynomial) -> Result<RootSet> {
    let degree = p.degree();
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let scale = p.coeffs[degree];
    let monic: Vec<C64> = p.coeffs.iter().map(|c| c / scale).collect();
    let monic_poly = CreationPolynomial {
        coeffs: monic.clone(),
    };

    let max_coeff = monic.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let radius = 1.0 + max_coeff;
    let offset = 0.5 / degree as f64; // break axis symmetry deterministically
    let mut z: Vec<C64> = (0..degree)
        .map(|j| {
            let angle = std::f64::consts::TAU * (j as f64 + offset) / degree as f64;
            C64::from_polar(radius, angle)
        })
        .collect();

    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();
    let mut worst = f64::INFINITY;
    for _ in 0..ROOT_ITERATION_BUDGET {
        worst = 0.0f64;
        for j in 0..degree {
            let pj = monic_poly.eval(z[j]);
            // relative backward residual: |p(z)| / Σ|c_k||z|^k
            let mut denom = 0.0;
            let mut zp = 1.0;
            let abs_z = z[j].norm();
            for &a in &abs_coeffs {
                denom += a * zp;
                zp *= abs_z;
            }
            let resid = pj.norm() / denom.max(f64::MIN_POSITIVE);
            worst = worst.max(resid);
            if resid <= ROOT_RESIDUAL_TARGET {
                continue;
            }
            let dpj = monic_poly.eval_derivative(z[j]);
            let newton = if dpj.norm() == 0.0 {
                // nudge off a stationary point
                C64::new(1e-8 * (1.0 + abs_z), 1e-8)
            } else {
                pj / dpj
            };
            let mut repulse = C64::new(0.0, 0.0);
            for k in 0..degree {
                if k != j {
                    let diff = z[j] - z[k];
                    if diff.norm() > 0.0 {
                        repulse += diff.inv();
                    }
                }
            }
            let denom_ab = C64::new(1.0, 0.0) - newton * repulse;
            let step = if denom_ab.norm() < 1e-300 {
                newton
            } else {
                newton / denom_ab
            };
            z[j] -= step;
        }
        if worst <= ROOT_RESIDUAL_TARGET {
            let polished = polish_roots(&monic_poly, &z);
            let best = if reconstruction_error(&monic_poly, &polished)
                <= reconstruction_error(&monic_poly, &z)
            {
                polished
            } else {
                z
            };
            return Ok(RootSet { roots: best, scale });
        }
    }
    Err(Error::NonConvergence {
        residual: worst,
        iterations: ROOT_ITERATION_BUDGET,
    })
}

/// Max absolute coefficient deviation of the monic expansion of `roots`
/// from `monic`, relative to the largest coefficient magnitude.
fn reconstruction_error(monic: &CreationPolynomial, roots: &[C64]) -> f64 {
    let rebuilt = CreationPolynomial::from_roots(roots);
    let scale = monic
        .coeffs
        .iter()
        .map(|c| c.norm())
        .fold(1.0f64, f64::max);
    monic
        .coeffs
        .iter()
        .zip(rebuilt.coeffs.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max)
        / scale
}

/// Sharpen converged Aberth output. Simple roots get Newton steps on p.
/// A cluster of m nearly coincident roots is the split image of one
/// multiplicity-m root; that root is a simple root of p^{(m−1)}, so the
/// cluster collapses to a Newton-refined root of the derivative.
fn polish_roots(monic: &CreationPolynomial, roots: &[C64]) -> Vec<C64> {
    let n = roots.len();
    // single-linkage clustering
    let mut cluster_of: Vec<usize> = (0..n).collect();
    loop {
        let mut merged = false;
        for i in 0..n {
            for j in i + 1..n {
                if cluster_of[i] != cluster_of[j]
                    && (roots[i] - roots[j]).norm() <= 1e-3 * (1.0 + roots[i].norm())
                {
                    let (a, b) = (cluster_of[i], cluster_of[j]);
                    for c in cluster_of.iter_mut() {
                        if *c == b {
                            *c = a;
                        }
                    }
                    merged = true;
                }
            }
        }
        if !merged {
            break;
        }
    }

    let mut out = roots.to_vec();
    let mut seen = std::collections::BTreeSet::new();
    for &cid in cluster_of.iter() {
        if !seen.insert(cid) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| cluster_of[i] == cid).collect();
        let m = members.len();
        let centroid = members.iter().map(|&i| roots[i]).sum::<C64>() / m as f64;
        let refined = if m == 1 {
            newton_refine(&monic.coeffs, centroid, 4)
        } else {
            let deriv = monic.derivative_coeffs(m - 1);
            newton_refine(&deriv, centroid, 12)
        };
        for &i in &members {
            out[i] = refined;
        }
    }
    out
}

fn newton_refine(coeffs: &[C64], start: C64, steps: usize) -> C64 {
    let p = CreationPolynomial {
        coeffs: coeffs.to_vec(),
    };
    let mut z = start;
    let mut best = z;
    let mut best_val = p.eval(z).norm();
    for _ in 0..steps {
        let f = p.eval(z);
        let df = p.eval_derivative(z);
        if df.norm() == 0.0 {
            break;
        }
        z -= f / df;
        let val = p.eval(z).norm();
        if val < best_val {
            best_val = val;
            best = z;
        }
    }
    best
}

/// Greedy minimum-distance pairing of two root multisets; returns the
/// largest paired distance, or `None` if the sizes differ.
pub fn max_pairing_distance(found: &[C64], expected: &[C64]) -> Option<f64> {
    if found.len() != expected.len() {
        return None;
    }
    let mut remaining: Vec<C64> = expected.to_vec();
    let mut worst = 0.0f64;
    for &f in found {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (f - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        worst = worst.max(dist);
        remaining.swap_remove(idx);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert!(matches!(
            CreationPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::LeadingTermVanishes)
        ));
    }

    #[test]
    fn quadratic_roots() {
        // (z − 1)(z − 2) = z² − 3z + 2
        let p = CreationPolynomial::new(vec![c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]).unwrap();
        let rs = polynomial_roots(&p).unwrap();
        let expected = [c(1.0, 0.0), c(2.0, 0.0)];
        assert!(max_pairing_distance(&rs.roots, &expected).unwrap() < 1e-10);
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let p = CreationPolynomial::new(vec![c(3.0, 0.0)]).unwrap();
        assert!(matches!(
            polynomial_roots(&p),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn repeated_roots() {
        // (z − i)² (z + 2)
        let roots = [c(0.0, 1.0), c(0.0, 1.0), c(-2.0, 0.0)];
        let p = CreationPolynomial::from_roots(&roots);
        let rs = polynomial_roots(&p).unwrap();
        assert!(max_pairing_distance(&rs.roots, &roots).unwrap() < 1e-8);
        let rebuilt = rs.expand();
        for k in 0..=3 {
            assert!((rebuilt.coefficient(k) - p.coefficient(k)).norm() < 1e-9);
        }
    }

    #[test]
    fn quadruple_root_recovered() {
        let roots = [c(0.5, -0.7); 4];
        let p = CreationPolynomial::from_roots(&roots);
        let rs = polynomial_roots(&p).unwrap();
        assert!(max_pairing_distance(&rs.roots, &roots).unwrap() < 1e-8);
    }

    #[test]
    fn reconstruction_round_trip() {
        let roots = [
            c(0.3, -1.4),
            c(-2.1, 0.2),
            c(1.7, 1.7),
            c(0.0, 0.0),
            c(-0.5, -0.5),
        ];
        let scale = c(2.0, -1.0);
        let mut p = CreationPolynomial::from_roots(&roots);
        p = CreationPolynomial::new(p.coefficients().iter().map(|x| x * scale).collect()).unwrap();
        let rs = polynomial_roots(&p).unwrap();
        assert!((rs.scale - scale).norm() < 1e-12);
        let rebuilt = rs.expand();
        let max_mag = p
            .coefficients()
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        for k in 0..=p.degree() {
            let err = (rebuilt.coefficient(k) - p.coefficient(k)).norm();
            assert!(err < 1e-9 * max_mag, "coefficient {k} error {err:.2e}");
        }
    }
}
