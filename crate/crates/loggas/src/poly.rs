//! Real polynomials with exact division-based divided differences, and
//! 1/x power series at infinity for square-root edge factors.

use num_complex::Complex64;

/// Dense polynomial with real coefficients, `coeffs[k]` multiplying `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Poly::one();
        for &r in roots {
            p = p.mul(&Poly::new(vec![-r, 1.0]));
        }
        p
    }

    fn trim(&mut self) {
        while let Some(&c) = self.coeffs.last() {
            if c == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * k as f64)
                .collect(),
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// First-order divided difference (p(x) - p(y)) / (x - y) as a bivariate
    /// evaluation, computed by exact coefficient expansion so coincident
    /// arguments are handled without cancellation.
    ///
    /// Uses p^{[1]}(x, y) = sum_k c_k sum_{i+j=k-1} x^i y^j.
    pub fn divided_diff1(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        // Horner in x of polynomials in y: sum_{k>=1} c_k h_{k-1}(x,y),
        // h_m(x,y) = sum_{i+j=m} x^i y^j satisfies h_m = x*h_{m-1} + y^m.
        let mut ypow = Complex64::new(1.0, 0.0);
        let mut h = Complex64::new(0.0, 0.0); // h_{-1} = 0
        let mut hs = Vec::with_capacity(self.coeffs.len());
        for _k in 1..self.coeffs.len() {
            h = h * x + ypow;
            ypow *= y;
            hs.push(h);
        }
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            acc += c * hs[k - 1];
        }
        acc
    }

    /// Second-order divided difference
    /// (p^{[1]}(x, y1) - p^{[1]}(x, y2)) / (y1 - y2), exact in coefficients:
    /// p^{[2]}(x; y1, y2) = sum_k c_k sum_{i+j+l=k-2} x^i y1^j y2^l.
    pub fn divided_diff2(&self, x: Complex64, y1: Complex64, y2: Complex64) -> Complex64 {
        let n = self.coeffs.len();
        if n < 3 {
            return Complex64::new(0.0, 0.0);
        }
        // g_m(y1,y2) = sum_{j+l=m} y1^j y2^l; then
        // sum_{i+j+l=m} x^i y1^j y2^l = sum_{i<=m} x^i g_{m-i}.
        let maxm = n - 2;
        let mut g = vec![Complex64::new(0.0, 0.0); maxm + 1];
        {
            let mut y2pow = Complex64::new(1.0, 0.0);
            let mut h = Complex64::new(0.0, 0.0);
            for m in 0..=maxm {
                h = h * y1 + y2pow;
                y2pow *= y2;
                g[m] = h;
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate().skip(2) {
            let m = k - 2;
            // s_m = sum_{i<=m} x^i g_{m-i}, Horner in x over g.
            let mut s = Complex64::new(0.0, 0.0);
            for i in (0..=m).rev() {
                s = s * x + g[m - i];
                let _ = i;
            }
            acc += c * s;
        }
        acc
    }
}

/// Truncated power series in 1/x: `c[0] + c[1]/x + c[2]/x^2 + ...`.
#[derive(Debug, Clone)]
pub struct InvSeries {
    pub c: Vec<f64>,
}

impl InvSeries {
    pub fn one(order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = 1.0;
        InvSeries { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn mul(&self, other: &InvSeries) -> InvSeries {
        let n = self.c.len().min(other.c.len());
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += self.c[i] * other.c[j];
            }
        }
        InvSeries { c: out }
    }

    /// Series square root, requires c[0] = 1.
    pub fn sqrt(&self) -> InvSeries {
        assert!((self.c[0] - 1.0).abs() < 1e-14, "sqrt needs unit leading term");
        let n = self.c.len();
        let mut s = vec![0.0; n];
        s[0] = 1.0;
        for k in 1..n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= s[j] * s[k - j];
            }
            s[k] = acc / 2.0;
        }
        InvSeries { c: s }
    }

    /// Series reciprocal, requires c[0] != 0.
    pub fn recip(&self) -> InvSeries {
        let n = self.c.len();
        let mut r = vec![0.0; n];
        r[0] = 1.0 / self.c[0];
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.c[j] * r[k - j];
            }
            r[k] = -acc / self.c[0];
        }
        InvSeries { c: r }
    }

    /// Series for sqrt((x-a)(x-b))/x = sqrt(1-(a+b)/x+ab/x^2), i.e. the
    /// per-cut square root factor normalized by its leading power.
    pub fn sqrt_quadratic(a: f64, b: f64, order: usize) -> InvSeries {
        let mut c = vec![0.0; order + 1];
        c[0] = 1.0;
        if order >= 1 {
            c[1] = -(a + b);
        }
        if order >= 2 {
            c[2] = a * b;
        }
        InvSeries { c }.sqrt()
    }

    /// Series for (x-a)/x = 1 - a/x.
    pub fn linear(a: f64, order: usize) -> InvSeries {
        let mut c = vec![0.0; order + 1];
        c[0] = 1.0;
        if order >= 1 {
            c[1] = -a;
        }
        InvSeries { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn from_roots_matches_expansion() {
        // {-1, 1} -> x^2 - 1
        let p = Poly::from_roots(&[-1.0, 1.0]);
        assert_eq!(p.coeffs, vec![-1.0, 0.0, 1.0]);
        // {} -> 1
        let p = Poly::from_roots(&[]);
        assert_eq!(p.coeffs, vec![1.0]);
        // {0, 1, 2} -> x^3 - 3x^2 + 2x
        let p = Poly::from_roots(&[0.0, 1.0, 2.0]);
        assert_eq!(p.coeffs, vec![0.0, 2.0, -3.0, 1.0]);
    }

    #[test]
    fn divided_diffs_match_direct_quotients() {
        let p = Poly::new(vec![2.0, -1.0, 3.0, 0.5]);
        let x = Complex64::new(0.3, 0.1);
        let y = Complex64::new(-1.2, 0.4);
        let direct = (p.eval_c(x) - p.eval_c(y)) / (x - y);
        let dd = p.divided_diff1(x, y);
        assert!((direct - dd).norm() < 1e-12);

        let y2 = Complex64::new(0.7, -0.2);
        let direct2 = (p.divided_diff1(x, y) - p.divided_diff1(x, y2)) / (y - y2);
        let dd2 = p.divided_diff2(x, y, y2);
        assert!((direct2 - dd2).norm() < 1e-12);
    }

    #[test]
    fn divided_diff_examples() {
        // sigma = x^2-1: sigma^[1](x, xi) = x + xi
        let p = Poly::from_roots(&[-1.0, 1.0]);
        let x = Complex64::new(2.0, 0.0);
        let xi = Complex64::new(5.0, 0.0);
        assert!((p.divided_diff1(x, xi) - (x + xi)).norm() < 1e-14);
        // sigma^[2] = 1
        assert!(
            (p.divided_diff2(x, xi, Complex64::new(7.0, 0.0)) - Complex64::new(1.0, 0.0)).norm()
                < 1e-14
        );
        // constant: both orders 0
        let c = Poly::one();
        assert_eq!(c.divided_diff1(x, xi).norm(), 0.0);
        assert_eq!(c.divided_diff2(x, xi, xi).norm(), 0.0);
    }

    #[test]
    fn coincident_point_equals_derivative() {
        let p = Poly::new(vec![1.0, 2.0, -0.5, 0.25, 1.5]);
        for k in 0..20 {
            let x = -2.0 + 0.21 * k as f64;
            let z = Complex64::new(x, 0.0);
            let dd = p.divided_diff1(z, z);
            assert_relative_eq!(dd.re, p.derivative().eval(x), max_relative = 1e-12);
        }
    }

    #[test]
    fn series_sqrt_and_recip() {
        let s = InvSeries::sqrt_quadratic(-1.0, 1.0, 8);
        // sqrt(1 - 1/x^2) = 1 - 1/(2x^2) - 1/(8x^4) - ...
        assert_relative_eq!(s.c[2], -0.5, max_relative = 1e-14);
        assert_relative_eq!(s.c[4], -0.125, max_relative = 1e-14);
        let r = s.recip().mul(&s);
        assert_relative_eq!(r.c[0], 1.0, max_relative = 1e-14);
        for k in 1..r.len() {
            assert!(r.c[k].abs() < 1e-13);
        }
    }
}
