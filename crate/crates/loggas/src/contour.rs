//! Nested Bernstein-ellipse contour families around segment unions,
//! spectrally accurate trapezoid contour integration, and Cauchy
//! reconstruction of analytic function samples.

use crate::domain::Segment;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One closed analytic contour (Bernstein ellipse) around a segment.
#[derive(Debug, Clone)]
pub struct Contour {
    pub center: f64,
    pub half: f64,
    pub rho: f64,
    /// Node positions z(t_j).
    pub nodes: Vec<Complex64>,
    /// z'(t_j) * dt / (2 i pi): contour integrals are sum f_j * w_j.
    pub w: Vec<Complex64>,
}

impl Contour {
    fn build(seg: Segment, rho: f64, n: usize) -> Contour {
        let c = seg.center();
        let h = seg.half();
        let mut nodes = Vec::with_capacity(n);
        let mut w = Vec::with_capacity(n);
        let dt = 2.0 * std::f64::consts::PI / n as f64;
        for j in 0..n {
            let t = dt * j as f64;
            let e = Complex64::new(0.0, t).exp() * rho;
            let z = c + h * (e + 1.0 / e) / 2.0;
            let dz = Complex64::new(0.0, 1.0) * h * (e - 1.0 / e) / 2.0;
            nodes.push(z);
            w.push(dz * dt / (2.0 * std::f64::consts::PI * Complex64::new(0.0, 1.0)));
        }
        Contour {
            center: c,
            half: h,
            rho,
            nodes,
            w,
        }
    }

    /// Elliptic radius of z relative to this contour's segment:
    /// < rho means strictly inside the ellipse.
    pub fn elliptic_radius(&self, z: Complex64) -> f64 {
        let u = (z - self.center) / self.half;
        // inverse Joukowski: pick the root with |.| >= 1
        let s = (u * u - 1.0).sqrt();
        let r1 = (u + s).norm();
        let r2 = (u - s).norm();
        r1.max(r2)
    }
}

/// Numeric parameters for contour construction.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ContourParams {
    /// Nodes per contour.
    pub n_nodes: usize,
    /// Number of nested levels to preallocate.
    pub n_levels: usize,
    /// Per-level increment of the Bernstein parameter (default 0.25).
    pub rho_step: f64,
    /// Cap on |Im z| from the potential's analyticity strip.
    pub imag_margin: f64,
}

impl Default for ContourParams {
    fn default() -> Self {
        ContourParams {
            n_nodes: 256,
            n_levels: 8,
            rho_step: 0.25,
            imag_margin: f64::INFINITY,
        }
    }
}

/// Nested contours around every segment: levels[i][h] surrounds segment h,
/// level i+1 strictly exterior to level i, all pairwise disjoint.
#[derive(Debug, Clone)]
pub struct ContourFamily {
    pub segments: Vec<Segment>,
    pub levels: Vec<Vec<Contour>>,
    pub params: ContourParams,
}

impl ContourFamily {
    pub fn build(segments: &[Segment], params: ContourParams) -> Result<ContourFamily> {
        if segments.is_empty() {
            return Err(Error::Domain("no segments for contour family".into()));
        }
        // Maximal rho so that adjacent ellipses stay disjoint and inside the
        // analyticity strip.
        let mut rho_max = f64::INFINITY;
        for (k, s) in segments.iter().enumerate() {
            // strip constraint: vertical semi-axis h (rho - 1/rho)/2 < margin
            if params.imag_margin.is_finite() {
                let m = params.imag_margin / s.half();
                // solve (rho - 1/rho)/2 = m -> rho = m + sqrt(m^2+1)
                rho_max = rho_max.min(m + (m * m + 1.0).sqrt());
            }
            if k + 1 < segments.len() {
                let gap = segments[k + 1].lo - s.hi;
                // horizontal overhang of each ellipse: h[(rho+1/rho)/2 - 1];
                // keep the two overhangs below 80% of the gap.
                for (hh, frac) in [(s.half(), 0.4), (segments[k + 1].half(), 0.4)] {
                    let m = frac * gap / hh + 1.0;
                    rho_max = rho_max.min(m + (m * m - 1.0).max(0.0).sqrt());
                }
            }
        }
        let steps = params.n_levels as f64 + 1.0;
        let step = params.rho_step.min((rho_max - 1.0) / steps * 0.95);
        if step < 1e-3 {
            return Err(Error::Domain(format!(
                "cannot fit {} nested contour levels: feasible rho range [1, {rho_max:.4}] too thin",
                params.n_levels
            )));
        }
        let mut levels = Vec::with_capacity(params.n_levels);
        for i in 0..params.n_levels {
            let rho = 1.0 + step * (i as f64 + 1.0);
            levels.push(
                segments
                    .iter()
                    .map(|&s| Contour::build(s, rho, params.n_nodes))
                    .collect(),
            );
        }
        Ok(ContourFamily {
            segments: segments.to_vec(),
            levels,
            params,
        })
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn n_segments(&self) -> usize {
        self.segments.len()
    }

    /// Total node count of one level.
    pub fn n_nodes(&self) -> usize {
        self.params.n_nodes * self.segments.len()
    }

    /// Flattened nodes of a level (segments concatenated).
    pub fn nodes(&self, level: usize) -> impl Iterator<Item = Complex64> + '_ {
        self.levels[level].iter().flat_map(|c| c.nodes.iter().copied())
    }

    pub fn node_vec(&self, level: usize) -> Vec<Complex64> {
        self.nodes(level).collect()
    }

    /// Flattened weights of a level.
    pub fn weights(&self, level: usize) -> impl Iterator<Item = Complex64> + '_ {
        self.levels[level].iter().flat_map(|c| c.w.iter().copied())
    }

    pub fn weight_vec(&self, level: usize) -> Vec<Complex64> {
        self.weights(level).collect()
    }

    /// Segment index of the flattened node position j.
    pub fn segment_of_node(&self, j: usize) -> usize {
        j / self.params.n_nodes
    }

    /// Contour integral over all segments of one level, from node values.
    pub fn integrate(&self, level: usize, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.n_nodes());
        values
            .iter()
            .zip(self.weights(level))
            .map(|(f, w)| f * w)
            .sum()
    }

    /// Contour integral over segment h only.
    pub fn integrate_segment(&self, level: usize, h: usize, values: &[Complex64]) -> Complex64 {
        let n = self.params.n_nodes;
        values[h * n..(h + 1) * n]
            .iter()
            .zip(self.levels[level][h].w.iter())
            .map(|(f, w)| f * w)
            .sum()
    }

    /// True if z lies strictly outside every ellipse of the level.
    pub fn is_exterior(&self, level: usize, z: Complex64) -> bool {
        self.levels[level]
            .iter()
            .all(|c| c.elliptic_radius(z) > c.rho * (1.0 + 1e-12))
    }

    /// Cauchy reconstruction at an exterior point of a function analytic
    /// outside the level's contours and decaying at infinity:
    /// f(z) = (1/2 i pi) oint f(xi)/(z - xi) dxi.
    pub fn cauchy_exterior(&self, level: usize, values: &[Complex64], z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, (xi, w)) in values
            .iter()
            .zip(self.nodes(level).zip(self.weights(level)))
        {
            acc += f * w / (z - xi);
        }
        acc
    }

    /// Cauchy evaluation at a point inside the contours for a function
    /// analytic inside: f(z) = (1/2 i pi) oint f(xi)/(xi - z) dxi.
    pub fn cauchy_interior(&self, level: usize, values: &[Complex64], z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, (xi, w)) in values
            .iter()
            .zip(self.nodes(level).zip(self.weights(level)))
        {
            acc += f * w / (xi - z);
        }
        acc
    }

    /// Sample a closure on all nodes of a level.
    pub fn sample<F: FnMut(Complex64) -> Complex64>(&self, level: usize, mut f: F) -> Vec<Complex64> {
        self.nodes(level).map(|z| f(z)).collect()
    }

    /// Max |values| over the level (the Gamma sup-norm of the sample).
    pub fn sup_norm(values: &[Complex64]) -> f64 {
        values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}
