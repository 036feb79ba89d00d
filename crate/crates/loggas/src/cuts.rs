//! Support descriptions: cuts with soft/hard edge types, the edge
//! polynomials, and the square-root branch cut along the support
//! normalized to grow like z^(g+1) at infinity.

use crate::domain::Segment;
use crate::poly::{InvSeries, Poly};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeType {
    Soft,
    Hard,
}

/// One support cut [a, b] with edge classifications.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Cut {
    pub a: f64,
    pub b: f64,
    pub left: EdgeType,
    pub right: EdgeType,
}

impl Cut {
    pub fn segment(&self) -> Segment {
        Segment {
            lo: self.a,
            hi: self.b,
        }
    }
}

/// Union of disjoint cuts, increasing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Support {
    pub cuts: Vec<Cut>,
}

/// sqrt((z-a)(z-b)) with branch cut exactly on [a, b], ~ z at infinity.
pub fn sqrt_quadratic_cut(z: Complex64, a: f64, b: f64) -> Complex64 {
    let za = z - a;
    let zb = z - b;
    let m = (za.norm() * zb.norm()).sqrt();
    let phase = 0.5 * (za.arg() + zb.arg());
    Complex64::from_polar(m, phase)
}

impl Support {
    pub fn genus(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn n_cuts(&self) -> usize {
        self.cuts.len()
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.cuts.iter().map(|c| c.segment()).collect()
    }

    pub fn all_edges(&self) -> Vec<(f64, EdgeType)> {
        let mut v = Vec::new();
        for c in &self.cuts {
            v.push((c.a, c.left));
            v.push((c.b, c.right));
        }
        v
    }

    pub fn hard_edges(&self) -> Vec<f64> {
        self.all_edges()
            .into_iter()
            .filter(|(_, t)| *t == EdgeType::Hard)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn soft_edge_count(&self) -> usize {
        self.all_edges()
            .iter()
            .filter(|(_, t)| *t == EdgeType::Soft)
            .count()
    }

    /// sigma_hd: monic polynomial over hard edges (1 when none).
    pub fn sigma_hd(&self) -> Poly {
        Poly::from_roots(&self.hard_edges())
    }

    /// sigma_S: monic polynomial over all support edges.
    pub fn sigma_s(&self) -> Poly {
        let roots: Vec<f64> = self.all_edges().iter().map(|(x, _)| *x).collect();
        Poly::from_roots(&roots)
    }

    /// The square-root branch sqrt(sigma_S)(z), cut along the support,
    /// ~ z^{g+1} at infinity.
    pub fn sqrt_sigma_s(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in &self.cuts {
            acc *= sqrt_quadratic_cut(z, c.a, c.b);
        }
        acc
    }

    /// Boundary value of sqrt(sigma_S) from above at a real interior point
    /// of cut `h`: i sqrt((x-a)(b-x)) times the real other-cut factors.
    pub fn sqrt_sigma_s_plus(&self, x: f64, h: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 1.0);
        let cut = &self.cuts[h];
        acc *= ((x - cut.a) * (cut.b - x)).max(0.0).sqrt();
        for (k, c) in self.cuts.iter().enumerate() {
            if k != h {
                // real branch value off the cut: sign matches ~z normalization
                let v = (x - c.a) * (x - c.b);
                let mut s = v.abs().sqrt();
                if x < c.a {
                    s = -s;
                }
                acc *= s;
            }
        }
        acc
    }

    /// Index of the cut containing x, if any.
    pub fn cut_of(&self, x: f64) -> Option<usize> {
        self.cuts.iter().position(|c| x >= c.a && x <= c.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.cut_of(x).is_some()
    }

    /// E(z) = sqrt(sigma_S)(z)/sigma_hd(z).
    pub fn e_factor(&self, z: Complex64) -> Complex64 {
        self.sqrt_sigma_s(z) / self.sigma_hd().eval_c(z)
    }

    /// Leading power d and the 1/x series S with E(x) = x^d S(x).
    pub fn e_series(&self, order: usize) -> (i64, InvSeries) {
        let mut s = InvSeries::one(order);
        for c in &self.cuts {
            s = s.mul(&InvSeries::sqrt_quadratic(c.a, c.b, order));
        }
        let hard = self.hard_edges();
        for a in &hard {
            s = s.mul(&InvSeries::linear(*a, order).recip());
        }
        (self.cuts.len() as i64 - hard.len() as i64, s)
    }

    /// Series coefficients s_i of sqrt(sigma_S)(x) = sum_i s_i x^{g+1-i}
    /// (finitely many positive powers, then decaying tail), up to `order`.
    pub fn sqrt_sigma_series(&self, order: usize) -> InvSeries {
        let mut s = InvSeries::one(order);
        for c in &self.cuts {
            s = s.mul(&InvSeries::sqrt_quadratic(c.a, c.b, order));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_cut() -> Support {
        Support {
            cuts: vec![Cut {
                a: -1.0,
                b: 1.0,
                left: EdgeType::Soft,
                right: EdgeType::Soft,
            }],
        }
    }

    #[test]
    fn sqrt_branch_normalization_and_cut() {
        let s = one_cut();
        // large |z|: ~ z
        let z = Complex64::new(100.0, 3.0);
        let v = s.sqrt_sigma_s(z);
        assert!((v / z - 1.0).norm() < 1e-3);
        // real axis right of cut: positive sqrt
        let v = s.sqrt_sigma_s(Complex64::new(2.0, 0.0));
        assert!((v.re - 3f64.sqrt()).abs() < 1e-14 && v.im.abs() < 1e-14);
        // real axis left of cut: negative
        let v = s.sqrt_sigma_s(Complex64::new(-2.0, 0.0));
        assert!((v.re + 3f64.sqrt()).abs() < 1e-14);
        // boundary from above: i sqrt(1-x^2)
        let v = s.sqrt_sigma_s_plus(0.6, 0);
        assert!((v - Complex64::new(0.0, (1.0f64 - 0.36).sqrt())).norm() < 1e-14);
        // continuity: +i epsilon evaluation approaches the plus value
        let v2 = s.sqrt_sigma_s(Complex64::new(0.6, 1e-9));
        assert!((v - v2).norm() < 1e-7);
    }

    #[test]
    fn two_cut_series_consistency() {
        let s = Support {
            cuts: vec![
                Cut {
                    a: -2.0,
                    b: -1.0,
                    left: EdgeType::Soft,
                    right: EdgeType::Soft,
                },
                Cut {
                    a: 1.0,
                    b: 2.5,
                    left: EdgeType::Hard,
                    right: EdgeType::Soft,
                },
            ],
        };
        let (d, series) = s.e_series(10);
        assert_eq!(d, 1);
        // check E(x) ~ x^d * series at a big point
        let x = 50.0;
        let direct = s.e_factor(Complex64::new(x, 0.0));
        let mut approx = 0.0;
        for (k, c) in series.c.iter().enumerate() {
            approx += c / x.powi(k as i32);
        }
        let approx = approx * x.powi(d as i32);
        assert!(
            (direct.re - approx).abs() / approx.abs() < 1e-9,
            "{direct} vs {approx}"
        );
    }
}
