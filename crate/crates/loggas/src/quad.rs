//! Gaussian quadrature rules: Legendre (Newton on the recurrence) and
//! Jacobi (Golub-Welsch) for inverse-square-root edge weights.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Map the rule to [a, b].
    pub fn scaled(&self, a: f64, b: f64) -> Rule {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        Rule {
            nodes: self.nodes.iter().map(|t| c + h * t).collect(),
            weights: self.weights.iter().map(|w| w * h).collect(),
        }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre rule with `n` nodes on [-1, 1].
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Initial guess (Chebyshev-like).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // P_n' from P_n and P_{n-1}.
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

/// Gauss-Jacobi rule with weight (1-x)^alpha (1+x)^beta on [-1, 1],
/// via the Golub-Welsch eigenvalue method.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Rule {
    assert!(n >= 1 && alpha > -1.0 && beta > -1.0);
    let mut diag = vec![0.0; n];
    let mut sub = vec![0.0; n.saturating_sub(1)];
    let ab = alpha + beta;
    for k in 0..n {
        let kf = k as f64;
        diag[k] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
    }
    for k in 1..n {
        let kf = k as f64;
        // Gautschi's recurrence coefficients; k = 1 written separately to
        // avoid the removable 0/0 at alpha + beta = -1.
        let bk = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s * s - 1.0))
        };
        sub[k - 1] = bk.sqrt();
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = diag[k];
    }
    for k in 0..n - 1 {
        m[(k, k + 1)] = sub[k];
        m[(k + 1, k)] = sub[k];
    }
    let eig = SymmetricEigen::new(m);
    // mu0 = integral of the weight = 2^(a+b+1) B(a+1, b+1)
    let mu0 = 2f64.powf(ab + 1.0) * beta_fn(alpha + 1.0, beta + 1.0);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let x = eig.eigenvalues[j];
            let v0 = eig.eigenvectors[(0, j)];
            (x, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Tanh-sinh (double exponential) quadrature on (a, b); robust for
/// integrable endpoint singularities (logs, inverse square roots).
pub fn tanh_sinh<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h0 = 0.5 * (b - a);
    // levels of the trapezoid refinement in the DE variable
    let mut acc = 0.0;
    let tmax = 3.8f64;
    let mut step = 0.5f64;
    let mut prev = f64::INFINITY;
    for level in 0..8 {
        if level == 0 {
            let mut t = -tmax;
            while t <= tmax + 1e-12 {
                acc += step * de_term(&mut f, c, h0, t);
                t += step;
            }
        } else {
            // midpoints refine the trapezoid
            let mut add = 0.0;
            let mut t = -tmax + 0.5 * step;
            while t <= tmax + 1e-12 {
                add += de_term(&mut f, c, h0, t);
                t += step;
            }
            acc = 0.5 * acc + 0.5 * step * add;
        }
        step *= 0.5;
        if level >= 3 && (acc - prev).abs() <= 1e-14 * acc.abs().max(1.0) {
            break;
        }
        prev = acc;
    }
    acc
}

fn de_term<F: FnMut(f64) -> f64>(f: &mut F, c: f64, h0: f64, t: f64) -> f64 {
    let pi_half = std::f64::consts::FRAC_PI_2;
    let s = pi_half * t.sinh();
    let x = s.tanh();
    let w = pi_half * t.cosh() / s.cosh().powi(2);
    let y = c + h0 * x;
    // clamp strictly inside to avoid evaluating at singular endpoints
    if (1.0 - x.abs()) < 1e-17 {
        return 0.0;
    }
    h0 * w * f(y)
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7, n = 9.
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

fn beta_fn(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// Log-gamma, exposed for exact finite-N reference products.
pub fn lgamma(x: f64) -> f64 {
    ln_gamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let r = gauss_legendre(8);
        // degree 15 exactness
        let val = r.integrate(|x| x.powi(14));
        assert_relative_eq!(val, 2.0 / 15.0, max_relative = 1e-12);
        let val = r.integrate(|x| x.powi(15));
        assert!(val.abs() < 1e-14);
    }

    #[test]
    fn legendre_scaled() {
        let r = gauss_legendre(16).scaled(0.0, 2.0);
        let val = r.integrate(|x| x * x);
        assert_relative_eq!(val, 8.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn jacobi_inverse_sqrt_weight() {
        // weight (1-x)^(-1/2)(1+x)^(-1/2): integral of 1 = pi
        let r = gauss_jacobi(12, -0.5, -0.5);
        let total: f64 = r.weights.iter().sum();
        assert_relative_eq!(total, std::f64::consts::PI, max_relative = 1e-12);
        // integral x^2 / sqrt(1-x^2) = pi/2
        let val = r.integrate(|x| x * x);
        assert_relative_eq!(val, std::f64::consts::PI / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn jacobi_one_sided() {
        // weight (1+x)^(-1/2) on [-1,1]: integral of 1 = 2*sqrt(2)
        let r = gauss_jacobi(24, 0.0, -0.5);
        let total: f64 = r.weights.iter().sum();
        assert_relative_eq!(total, 2.0 * 2f64.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn lgamma_small_integers() {
        assert_relative_eq!(lgamma(5.0), 24f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(lgamma(1.0), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn tanh_sinh_log_singularity() {
        // int_0^1 ln(x) dx = -1
        let v = tanh_sinh(|x| x.ln(), 0.0, 1.0);
        assert_relative_eq!(v, -1.0, epsilon = 1e-12);
        // int_0^1 ln|0.3 - x| dx, exact from antiderivative
        let exact = |x: f64, a: f64, b: f64| {
            let f = |t: f64| {
                let d: f64 = x - t;
                if d == 0.0 {
                    -t
                } else {
                    -d * d.abs().ln() - t
                }
            };
            f(b) - f(a)
        };
        let v = tanh_sinh(|t| (0.3f64 - t).abs().ln(), 0.0, 0.3)
            + tanh_sinh(|t| (0.3f64 - t).abs().ln(), 0.3, 1.0);
        assert_relative_eq!(v, exact(0.3, 0.0, 1.0), epsilon = 1e-11);
    }

    #[test]
    fn tanh_sinh_inverse_sqrt() {
        // int_0^1 x^(-1/2) dx = 2
        let v = tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0);
        assert_relative_eq!(v, 2.0, epsilon = 1e-12);
    }
}
