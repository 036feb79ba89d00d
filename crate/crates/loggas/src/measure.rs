//! Quadrature-backed measures on segment unions: node masses, Stieltjes
//! transforms, quantiles, log potentials and the energy functional.
//!
//! Densities are stored through their smooth part: rho(x) = rho~(x) w(x)
//! with w the edge weight ((x-a)^(-1/2) at hard edges, 1 otherwise), so
//! Gauss-Jacobi rules integrate the singular factor exactly.

use crate::cuts::EdgeType;
use crate::domain::Segment;
use crate::error::{Error, Result};
use crate::potential::RBodyPotential;
use crate::quad::{gauss_jacobi, gauss_legendre};
use num_complex::Complex64;

/// Nodes of one segment with measure masses and density values.
#[derive(Debug, Clone)]
pub struct SegGrid {
    pub seg: Segment,
    pub left: EdgeType,
    pub right: EdgeType,
    pub nodes: Vec<f64>,
    /// Pure rule weights against the edge weight: mass_i = wq_i * tilde_i.
    pub wq: Vec<f64>,
    /// Smooth density part at the nodes.
    pub tilde: Vec<f64>,
    /// Mass carried by each node: integral of f dmu = sum mass_i f(x_i).
    pub mass: Vec<f64>,
    /// Full density dmu/dx at the node.
    pub density: Vec<f64>,
}

impl SegGrid {
    pub fn mass_total(&self) -> f64 {
        self.mass.iter().sum()
    }

    fn alpha_beta(left: EdgeType, right: EdgeType) -> (f64, f64) {
        // rule weight (1-t)^alpha (1+t)^beta: alpha = right edge, beta = left
        let alpha = if right == EdgeType::Hard { -0.5 } else { 0.0 };
        let beta = if left == EdgeType::Hard { -0.5 } else { 0.0 };
        (alpha, beta)
    }

    /// Edge weight w(x) in the x variable.
    pub fn edge_weight(&self, x: f64) -> f64 {
        let mut w = 1.0;
        if self.left == EdgeType::Hard {
            w *= (x - self.seg.lo).max(1e-300).powf(-0.5);
        }
        if self.right == EdgeType::Hard {
            w *= (self.seg.hi - x).max(1e-300).powf(-0.5);
        }
        w
    }

    fn build<F: Fn(f64) -> f64>(
        seg: Segment,
        left: EdgeType,
        right: EdgeType,
        n: usize,
        tilde_fn: F,
    ) -> SegGrid {
        let (alpha, beta) = Self::alpha_beta(left, right);
        let rule = if alpha == 0.0 && beta == 0.0 {
            gauss_legendre(n)
        } else {
            gauss_jacobi(n, alpha, beta)
        };
        let h = seg.half();
        let c = seg.center();
        let scale = h.powf(1.0 + alpha + beta);
        let mut g = SegGrid {
            seg,
            left,
            right,
            nodes: Vec::with_capacity(n),
            wq: Vec::with_capacity(n),
            tilde: Vec::with_capacity(n),
            mass: Vec::with_capacity(n),
            density: Vec::with_capacity(n),
        };
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            let x = c + h * t;
            let tl = tilde_fn(x);
            let wq = scale * w;
            g.nodes.push(x);
            g.wq.push(wq);
            g.tilde.push(tl);
            g.mass.push(wq * tl);
            g.density.push(tl * g.edge_weight_at(x, h, *t, alpha, beta));
        }
        g
    }

    fn edge_weight_at(&self, _x: f64, h: f64, t: f64, alpha: f64, beta: f64) -> f64 {
        (h * (1.0 - t)).max(1e-300).powf(alpha) * (h * (1.0 + t)).max(1e-300).powf(beta)
    }

    /// Exact integral over this segment of ln|x-y| * w(y) dy.
    pub fn log_edge_integral(&self, x: f64) -> f64 {
        let (a, b) = (self.seg.lo, self.seg.hi);
        match (self.left, self.right) {
            (EdgeType::Soft, EdgeType::Soft) => log_segment_integral(x, a, b),
            (EdgeType::Hard, EdgeType::Soft) => log_inv_sqrt_left(x, a, b),
            (EdgeType::Soft, EdgeType::Hard) => {
                // mirror image: y -> a+b-y maps the weight to the left case
                log_inv_sqrt_left(a + b - x, a, b)
            }
            (EdgeType::Hard, EdgeType::Hard) => {
                let c = 0.5 * (a + b);
                let r = 0.5 * (b - a);
                if x >= a && x <= b {
                    std::f64::consts::PI * (r / 2.0).ln()
                } else {
                    let d = (x - c).abs();
                    std::f64::consts::PI * ((d + (d * d - r * r).sqrt()) / 2.0).ln()
                }
            }
        }
    }
}

/// int_a^b ln|x-t| dt, exact.
pub fn log_segment_integral(x: f64, a: f64, b: f64) -> f64 {
    let f = |t: f64| {
        let d = x - t;
        if d == 0.0 {
            -t
        } else {
            -d * d.abs().ln() - t
        }
    };
    f(b) - f(a)
}

/// int_a^b ln|x-y| (y-a)^(-1/2) dy, exact.
fn log_inv_sqrt_left(x: f64, a: f64, b: f64) -> f64 {
    let s_max = (b - a).sqrt();
    if x >= a {
        let c = (x - a).sqrt();
        let t1 = if (c - s_max).abs() < 1e-300 {
            0.0
        } else {
            -(c - s_max) * (c - s_max).abs().ln()
        };
        let t2 = (c + s_max) * (c + s_max).ln();
        2.0 * (t1 + t2 - 2.0 * s_max)
    } else {
        let c = (a - x).sqrt();
        let v = s_max * (s_max * s_max + c * c).ln() - 2.0 * s_max
            + 2.0 * c * (s_max / c).atan();
        2.0 * v
    }
}

/// A positive measure resolved on per-segment Gaussian grids.
#[derive(Debug, Clone)]
pub struct GridMeasure {
    pub segments: Vec<SegGrid>,
}

impl GridMeasure {
    /// Build from the smooth density part rho~ (full density = rho~ * w).
    pub fn from_tilde_density<F: Fn(f64) -> f64>(
        segs: &[(Segment, EdgeType, EdgeType)],
        n: usize,
        tilde: F,
    ) -> GridMeasure {
        GridMeasure {
            segments: segs
                .iter()
                .map(|&(seg, lt, rt)| SegGrid::build(seg, lt, rt, n, &tilde))
                .collect(),
        }
    }

    /// Build from a plain density on soft-edged segments.
    pub fn from_density<F: Fn(f64) -> f64>(segs: &[Segment], n: usize, f: F) -> GridMeasure {
        let trip: Vec<(Segment, EdgeType, EdgeType)> = segs
            .iter()
            .map(|&s| (s, EdgeType::Soft, EdgeType::Soft))
            .collect();
        GridMeasure::from_tilde_density(&trip, n, f)
    }

    /// Normalized Lebesgue measure with prescribed per-segment masses.
    pub fn uniform(segs: &[Segment], masses: &[f64], n: usize) -> GridMeasure {
        let mut gm = GridMeasure::from_density(segs, n, |_| 1.0);
        for (g, &m) in gm.segments.iter_mut().zip(masses) {
            let scale = m / g.seg.len();
            for v in g.mass.iter_mut() {
                *v *= scale;
            }
            for v in g.tilde.iter_mut() {
                *v *= scale;
            }
            for v in g.density.iter_mut() {
                *v *= scale;
            }
        }
        gm
    }

    pub fn total_mass(&self) -> f64 {
        self.segments.iter().map(|s| s.mass_total()).sum()
    }

    pub fn segment_masses(&self) -> Vec<f64> {
        self.segments.iter().map(|s| s.mass_total()).collect()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.segments
            .iter()
            .flat_map(|s| s.nodes.iter().zip(&s.mass))
            .map(|(&x, &m)| m * f(x))
            .sum()
    }

    pub fn integrate_c<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.segments
            .iter()
            .flat_map(|s| s.nodes.iter().zip(&s.mass))
            .map(|(&x, &m)| m * f(x))
            .sum()
    }

    pub fn moment(&self, k: u32) -> f64 {
        self.integrate(|x| x.powi(k as i32))
    }

    /// Minimal distance from z to any node, with the local node spacing.
    fn node_resolution(&self, z: Complex64) -> (f64, f64) {
        let mut best = f64::INFINITY;
        let mut spacing = f64::INFINITY;
        for s in &self.segments {
            for (i, &x) in s.nodes.iter().enumerate() {
                let d = (z - x).norm();
                if d < best {
                    best = d;
                    let left = if i > 0 {
                        s.nodes[i] - s.nodes[i - 1]
                    } else {
                        f64::INFINITY
                    };
                    let right = if i + 1 < s.nodes.len() {
                        s.nodes[i + 1] - s.nodes[i]
                    } else {
                        f64::INFINITY
                    };
                    spacing = left.min(right);
                    if !spacing.is_finite() {
                        spacing = s.seg.len() / s.nodes.len() as f64;
                    }
                }
            }
        }
        (best, spacing)
    }

    /// Stieltjes transform int dmu(xi)/(z - xi) by node quadrature.
    /// Refuses points within node resolution of the support.
    pub fn stieltjes(&self, z: Complex64) -> Result<Complex64> {
        let (d, spacing) = self.node_resolution(z);
        if d < 2.0 * spacing {
            return Err(Error::TooCloseToSupport(format!(
                "point {z} at distance {d:.3e} from nodes (local spacing {spacing:.3e})"
            )));
        }
        Ok(self.stieltjes_unchecked(z))
    }

    pub fn stieltjes_unchecked(&self, z: Complex64) -> Complex64 {
        self.segments
            .iter()
            .flat_map(|s| s.nodes.iter().zip(&s.mass))
            .map(|(&x, &m)| m / (z - x))
            .sum()
    }

    /// Classical particle locations: smallest x with CDF(x) >= i/N, i=1..N.
    pub fn quantiles(&self, n: usize) -> Vec<f64> {
        let total = self.total_mass();
        let mut pts = Vec::with_capacity(n);
        let mut xs: Vec<(f64, f64)> = self
            .segments
            .iter()
            .flat_map(|s| s.nodes.iter().zip(&s.mass).map(|(&x, &m)| (x, m)))
            .collect();
        xs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut acc = 0.0;
        let mut j = 0usize;
        for i in 1..=n {
            let target = total * i as f64 / n as f64;
            while j < xs.len() && acc + xs[j].1 < target {
                acc += xs[j].1;
                j += 1;
            }
            if j >= xs.len() {
                pts.push(xs.last().unwrap().0);
            } else {
                let need = target - acc;
                let frac = (need / xs[j].1).clamp(0.0, 1.0);
                let x_lo = if j == 0 { xs[0].0 } else { xs[j - 1].0 };
                pts.push(x_lo + frac * (xs[j].0 - x_lo));
            }
        }
        pts
    }

    /// Log potential U(x) = int ln|x-y| dmu(y), with singularity subtraction
    /// on the segment containing x. `tilde_x` supplies the smooth density
    /// part at x when x sits in the support (defaults to nearest-node value).
    pub fn log_potential(&self, x: f64, tilde_x: Option<f64>) -> f64 {
        let mut u = 0.0;
        for s in &self.segments {
            let inside = x >= s.seg.lo - 1e-12 && x <= s.seg.hi + 1e-12;
            if !inside {
                for (&y, &m) in s.nodes.iter().zip(&s.mass) {
                    u += m * (x - y).abs().max(1e-300).ln();
                }
            } else {
                let tl = tilde_x.unwrap_or_else(|| {
                    // nearest node's tilde value
                    let mut best = (f64::INFINITY, 0.0);
                    for (&y, &t) in s.nodes.iter().zip(&s.tilde) {
                        let d = (x - y).abs();
                        if d < best.0 {
                            best = (d, t);
                        }
                    }
                    best.1
                });
                for ((&y, &wq), &t) in s.nodes.iter().zip(&s.wq).zip(&s.tilde) {
                    let d = (x - y).abs();
                    if d < 1e-14 {
                        continue;
                    }
                    u += wq * (t - tl) * d.ln();
                }
                u += tl * s.log_edge_integral(x);
            }
        }
        u
    }
}

/// Energy functional E[mu] = -int T/r! dmu^r - (beta/2) intint ln|x-y| dmu dmu.
pub fn energy(mu: &GridMeasure, t: &RBodyPotential, beta: f64) -> Result<f64> {
    let mass = mu.total_mass();
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::Config(format!(
            "energy needs a probability measure, mass = {mass}"
        )));
    }
    let r = t.r();
    let r_fact: f64 = (1..=r).map(|k| k as f64).product();
    let mut t_part = 0.0;
    if t.is_separable() {
        for term in t.terms() {
            let mut prod = term.c;
            for p in &term.factors {
                prod *= mu.integrate(|x| p.eval(x));
            }
            t_part += prod;
        }
    } else {
        for sa in &mu.segments {
            for (i, &x) in sa.nodes.iter().enumerate() {
                let mx = sa.mass[i];
                for sb in &mu.segments {
                    for (j, &y) in sb.nodes.iter().enumerate() {
                        t_part += mx * sb.mass[j] * t.eval_real(&[x, y]);
                    }
                }
            }
        }
    }
    let mut coulomb = 0.0;
    for s in &mu.segments {
        for ((&x, &m), &tl) in s.nodes.iter().zip(&s.mass).zip(&s.tilde) {
            coulomb += m * mu.log_potential(x, Some(tl));
        }
    }
    Ok(-t_part / r_fact - 0.5 * beta * coulomb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::potential::SepTerm;
    use approx::assert_relative_eq;

    fn semicircle(n: usize) -> GridMeasure {
        let r2 = 2f64.sqrt();
        GridMeasure::from_density(&[Segment { lo: -r2, hi: r2 }], n, |x| {
            (2.0 - x * x).max(0.0).sqrt() / std::f64::consts::PI
        })
    }

    #[test]
    fn semicircle_mass_and_moment() {
        let mu = semicircle(200);
        assert_relative_eq!(mu.total_mass(), 1.0, epsilon = 1e-8);
        assert_relative_eq!(mu.moment(2), 0.5, epsilon = 1e-8);
    }

    #[test]
    fn stieltjes_semicircle_closed_form() {
        // W(x) = x - sqrt(x^2-2); at x = 2: 2 - sqrt(2)
        let mu = semicircle(400);
        let w = mu.stieltjes(Complex64::new(2.0, 0.0)).unwrap();
        assert_relative_eq!(w.re, 2.0 - 2f64.sqrt(), epsilon = 1e-6);
        assert!(w.im.abs() < 1e-12);
    }

    #[test]
    fn stieltjes_far_field_decay() {
        let mu = semicircle(64);
        let w = mu.stieltjes(Complex64::new(1e6, 0.0)).unwrap();
        assert_relative_eq!(w.re, 1e-6, max_relative = 1e-12);
    }

    #[test]
    fn stieltjes_refuses_near_nodes() {
        let mu = semicircle(64);
        assert!(mu.stieltjes(Complex64::new(0.1, 0.0)).is_err());
    }

    #[test]
    fn quantiles_uniform() {
        let mu = GridMeasure::uniform(&[Segment { lo: 0.0, hi: 1.0 }], &[1.0], 400);
        let q = mu.quantiles(4);
        for (got, want) in q.iter().zip([0.25, 0.5, 0.75, 1.0]) {
            assert!((got - want).abs() < 5e-3, "{got} vs {want}");
        }
        for w in q.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn weighted_log_integrals_match_adaptive_quadrature() {
        // oracle: adaptive Simpson on the substituted smooth integrand
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
            let h = (b - a) / n as f64;
            let mut s = f(a) + f(b);
            for i in 1..n {
                let x = a + i as f64 * h;
                s += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        }
        let (a, b) = (0.5, 2.5);
        for &x in &[0.9, 1.7, 0.2, 3.0, 0.5000001] {
            // left inverse sqrt: y = a + s^2
            let f = |s: f64| 2.0 * (x - a - s * s).abs().max(1e-300).ln();
            let oracle = simpson(&f, 0.0, (b - a).sqrt(), 20000);
            let got = log_inv_sqrt_left(x, a, b);
            assert!((got - oracle).abs() < 2e-5, "x={x}: {got} vs {oracle}");
        }
    }

    #[test]
    fn arcsine_log_potential_constant() {
        let s = SegGrid::build(
            Segment { lo: -1.0, hi: 1.0 },
            EdgeType::Hard,
            EdgeType::Hard,
            64,
            |_| 1.0 / std::f64::consts::PI,
        );
        let gm = GridMeasure { segments: vec![s] };
        assert_relative_eq!(gm.total_mass(), 1.0, epsilon = 1e-12);
        // log potential of the arcsine law = ln(1/2) everywhere on [-1,1]
        for &x in &[0.0, 0.4, -0.7] {
            let u = gm.log_potential(x, Some(1.0 / std::f64::consts::PI));
            assert_relative_eq!(u, (0.5f64).ln(), epsilon = 1e-10);
        }
    }

    #[test]
    fn energy_uniform_no_potential() {
        // E = -(beta/2) intint ln|x-y| over [0,1]^2 = (beta/2)(3/2) = 3 beta/4
        let beta = 1.7;
        let mu = GridMeasure::uniform(&[Segment { lo: 0.0, hi: 1.0 }], &[1.0], 300);
        let t = RBodyPotential::zero(2);
        let e = energy(&mu, &t, beta).unwrap();
        assert_relative_eq!(e, 0.75 * beta, epsilon = 1e-7);
    }

    #[test]
    fn energy_gaussian_equilibrium_value() {
        // beta=2, r=1, T=-x^2, mu = semicircle: E = 3/4 + ln(2)/2
        let mu = semicircle(300);
        let t = RBodyPotential::from_terms(
            1,
            vec![SepTerm {
                c: -1.0,
                factors: vec![Poly::new(vec![0.0, 0.0, 1.0])],
            }],
        )
        .unwrap();
        let e = energy(&mu, &t, 2.0).unwrap();
        assert_relative_eq!(e, 0.75 + 0.5 * 2f64.ln(), epsilon = 1e-7);
    }
}
