//! Analytic r-body interactions: separable polynomial sums and the
//! preset two-body kernels (sinh, O(n) log-sum, q-deformed product).
//!
//! Presets store the analytic remainder of the total kernels of the
//! literature: the Coulomb log is already carried by the Vandermonde
//! factor of the particle law, so e.g. the sinh preset is
//! c*ln(sinh(u)/u) with u = (x-y)/2, holomorphic in a strip around the
//! real axis.

use crate::error::{Error, Result};
use crate::poly::Poly;
use num_complex::Complex64;

/// One separable term c * prod_j p_j(x_j).
#[derive(Debug, Clone)]
pub struct SepTerm {
    pub c: f64,
    pub factors: Vec<Poly>,
}

/// Symmetric analytic two-body kernels.
#[derive(Debug, Clone)]
pub enum PairKernel {
    /// c * ln(sinh(u)/u), u = (x-y)/2.
    Sinh { c: f64 },
    /// -c * ln(x+y) on domains with x+y > 0.
    LogSum { c: f64 },
    /// c * [ 2 ln(sinh(v)/v) + sum_{k=1}^{kmax} ln(1 + q^{2k} - 2 q^k cosh(2v)) ],
    /// v = (x-y)/4 — the analytic remainder of the q-Pochhammer pair product.
    QProd { c: f64, q: f64, kmax: usize },
}

/// Symmetric analytic r-body interaction.
#[derive(Debug, Clone)]
pub struct RBodyPotential {
    r: usize,
    terms: Vec<SepTerm>,
    kernels: Vec<PairKernel>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    heap_perm(&mut idx, n, &mut out);
    out
}

fn heap_perm(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(idx.clone());
        return;
    }
    for i in 0..k {
        heap_perm(idx, k - 1, out);
        if k % 2 == 0 {
            idx.swap(i, k - 1);
        } else {
            idx.swap(0, k - 1);
        }
    }
}

impl RBodyPotential {
    /// Build from raw separable terms; each term is symmetrized by
    /// averaging over all r! orderings of its factors.
    pub fn from_terms(r: usize, raw: Vec<SepTerm>) -> Result<Self> {
        if r < 1 {
            return Err(Error::Config("interaction arity r must be >= 1".into()));
        }
        if r > 5 {
            return Err(Error::CostGuard(format!(
                "r = {r}: symmetrization and partition sums are guarded for r >= 6"
            )));
        }
        let perms = permutations(r);
        let mut terms = Vec::new();
        for t in raw {
            if t.factors.len() != r {
                return Err(Error::Config(format!(
                    "term has {} factors, expected r = {}",
                    t.factors.len(),
                    r
                )));
            }
            let cc = t.c / perms.len() as f64;
            for p in &perms {
                terms.push(SepTerm {
                    c: cc,
                    factors: p.iter().map(|&j| t.factors[j].clone()).collect(),
                });
            }
        }
        Ok(RBodyPotential {
            r,
            terms,
            kernels: Vec::new(),
        })
    }

    /// Zero interaction of the given arity.
    pub fn zero(r: usize) -> Self {
        RBodyPotential {
            r,
            terms: Vec::new(),
            kernels: Vec::new(),
        }
    }

    pub fn with_kernel(mut self, k: PairKernel) -> Result<Self> {
        if self.r != 2 {
            return Err(Error::Config(
                "preset pair kernels require arity r = 2".into(),
            ));
        }
        self.kernels.push(k);
        Ok(self)
    }

    /// Add an already-symmetric one-body potential t1 acting as
    /// (r-1)! * sum_j t1(x_j); used by the interpolation to hat models.
    pub fn add_one_body(&mut self, t1: &Poly) {
        let fact_rm1: f64 = (1..self.r).map(|k| k as f64).product::<f64>().max(1.0);
        for slot in 0..self.r {
            let mut factors = vec![Poly::one(); self.r];
            factors[slot] = t1.clone();
            self.terms.push(SepTerm {
                c: fact_rm1,
                factors,
            });
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &[SepTerm] {
        &self.terms
    }

    pub fn kernels(&self) -> &[PairKernel] {
        &self.kernels
    }

    pub fn is_separable(&self) -> bool {
        self.kernels.is_empty()
    }

    /// Largest |Im z| the contours may reach while staying in the
    /// analyticity neighbourhood (infinite for polynomial interactions).
    pub fn imag_margin(&self) -> f64 {
        let mut m = f64::INFINITY;
        for k in &self.kernels {
            let this = match k {
                // u = (x-y)/2, need |Im u| < pi
                PairKernel::Sinh { .. } => 0.9 * std::f64::consts::PI,
                PairKernel::LogSum { .. } => f64::INFINITY,
                PairKernel::QProd { q, .. } => {
                    // zeros of the k-th factor at 2v = ±k ln q + 2 pi i m
                    0.2 * std::f64::consts::PI.min(q.abs().ln().abs())
                }
            };
            m = m.min(this);
        }
        m
    }

    fn check_points(&self, pts: &[Complex64]) -> Result<()> {
        if pts.len() != self.r {
            return Err(Error::Config(format!(
                "expected {} evaluation points, got {}",
                self.r,
                pts.len()
            )));
        }
        for k in &self.kernels {
            let (x, y) = (pts[0], pts[1]);
            match k {
                PairKernel::Sinh { .. } => {
                    let u = (x - y) / 2.0;
                    if u.im.abs() >= std::f64::consts::PI {
                        return Err(Error::OutsideAnalyticity(format!(
                            "sinh kernel needs |Im (x-y)/2| < pi, got {}",
                            u.im
                        )));
                    }
                }
                PairKernel::LogSum { .. } => {
                    if (x + y).re <= 0.0 {
                        return Err(Error::OutsideAnalyticity(
                            "O(n) kernel needs Re(x+y) > 0".into(),
                        ));
                    }
                }
                PairKernel::QProd { q, .. } => {
                    let u = x - y;
                    let lim = q.abs().ln().abs();
                    if u.re.abs() >= lim || u.im.abs() >= std::f64::consts::PI {
                        return Err(Error::OutsideAnalyticity(format!(
                            "q-kernel needs |Re(x-y)| < |ln q| = {lim} and |Im(x-y)| < pi"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// T(pts). Errors when a point leaves the declared neighbourhood.
    pub fn eval(&self, pts: &[Complex64]) -> Result<Complex64> {
        self.check_points(pts)?;
        Ok(self.eval_unchecked(pts))
    }

    pub fn eval_unchecked(&self, pts: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut prod = Complex64::new(t.c, 0.0);
            for (p, &z) in t.factors.iter().zip(pts) {
                prod *= p.eval_c(z);
            }
            acc += prod;
        }
        for k in &self.kernels {
            acc += kernel_eval(k, pts[0], pts[1]);
        }
        acc
    }

    /// d/dx1 T(pts).
    pub fn d1(&self, pts: &[Complex64]) -> Result<Complex64> {
        self.check_points(pts)?;
        Ok(self.d1_unchecked(pts))
    }

    pub fn d1_unchecked(&self, pts: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut prod = Complex64::new(t.c, 0.0);
            prod *= t.factors[0].derivative().eval_c(pts[0]);
            for (p, &z) in t.factors.iter().zip(pts).skip(1) {
                prod *= p.eval_c(z);
            }
            acc += prod;
        }
        for k in &self.kernels {
            acc += kernel_d1(k, pts[0], pts[1]);
        }
        acc
    }

    /// Fast real-argument evaluation for the Monte Carlo sampler.
    pub fn eval_real(&self, pts: &[f64]) -> f64 {
        let mut acc = 0.0;
        for t in &self.terms {
            let mut prod = t.c;
            for (p, &x) in t.factors.iter().zip(pts) {
                prod *= p.eval(x);
            }
            acc += prod;
        }
        if !self.kernels.is_empty() {
            let x = Complex64::new(pts[0], 0.0);
            let y = Complex64::new(pts[1], 0.0);
            for k in &self.kernels {
                acc += kernel_eval(k, x, y).re;
            }
        }
        acc
    }
}

/// ln(sinh(u)/u), stable near u = 0 via the even Taylor series.
fn ln_sinhc(u: Complex64) -> Complex64 {
    if u.norm() < 1e-2 {
        let u2 = u * u;
        // log(sinh u / u) = u^2/6 - u^4/180 + u^6/2835 - ...
        u2 * (1.0 / 6.0 + u2 * (-1.0 / 180.0 + u2 * (1.0 / 2835.0)))
    } else {
        (u.sinh() / u).ln()
    }
}

/// d/du ln(sinh(u)/u) = coth(u) - 1/u, stable near u = 0.
fn d_ln_sinhc(u: Complex64) -> Complex64 {
    if u.norm() < 1e-2 {
        // u/3 - u^3/45 + 2u^5/945
        let u2 = u * u;
        u * (1.0 / 3.0 + u2 * (-1.0 / 45.0 + u2 * (2.0 / 945.0)))
    } else {
        u.cosh() / u.sinh() - 1.0 / u
    }
}

fn kernel_eval(k: &PairKernel, x: Complex64, y: Complex64) -> Complex64 {
    match k {
        PairKernel::Sinh { c } => *c * ln_sinhc((x - y) / 2.0),
        PairKernel::LogSum { c } => -*c * (x + y).ln(),
        PairKernel::QProd { c, q, kmax } => {
            let v = (x - y) / 4.0;
            let mut acc = 2.0 * ln_sinhc(v);
            let u = x - y;
            let mut qk = *q;
            for _ in 1..=*kmax {
                let factor = 1.0 + qk * qk - 2.0 * qk * u.cosh();
                acc += factor.ln();
                qk *= q;
            }
            *c * acc
        }
    }
}

fn kernel_d1(k: &PairKernel, x: Complex64, y: Complex64) -> Complex64 {
    match k {
        PairKernel::Sinh { c } => *c * d_ln_sinhc((x - y) / 2.0) * 0.5,
        PairKernel::LogSum { c } => -*c / (x + y),
        PairKernel::QProd { c, q, kmax } => {
            let v = (x - y) / 4.0;
            let mut acc = 2.0 * d_ln_sinhc(v) * 0.25;
            let u = x - y;
            let mut qk = *q;
            for _ in 1..=*kmax {
                let factor = 1.0 + qk * qk - 2.0 * qk * u.cosh();
                acc += -2.0 * qk * u.sinh() / factor;
                qk *= q;
            }
            *c * acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn one_body_quadratic() {
        // r = 1, T = -x^2, T(3) = -9
        let t = RBodyPotential::from_terms(
            1,
            vec![SepTerm {
                c: -1.0,
                factors: vec![Poly::new(vec![0.0, 0.0, 1.0])],
            }],
        )
        .unwrap();
        assert_eq!(t.eval(&[c(3.0)]).unwrap(), c(-9.0));
        assert_eq!(t.d1(&[c(3.0)]).unwrap(), c(-6.0));
    }

    #[test]
    fn symmetrization_makes_terms_symmetric() {
        // r = 2, T built from c*x (only first slot): symmetrized to c(x+y)/2
        let t = RBodyPotential::from_terms(
            2,
            vec![SepTerm {
                c: 2.0,
                factors: vec![Poly::new(vec![0.0, 1.0]), Poly::one()],
            }],
        )
        .unwrap();
        let a = t.eval(&[c(1.3), c(-0.4)]).unwrap();
        let b = t.eval(&[c(-0.4), c(1.3)]).unwrap();
        assert!((a - b).norm() < 1e-15);
        assert!((a - c(0.9)).norm() < 1e-14);
    }

    #[test]
    fn permutation_symmetry_r3_random_complex() {
        let t = RBodyPotential::from_terms(
            3,
            vec![SepTerm {
                c: 0.7,
                factors: vec![
                    Poly::new(vec![0.0, 1.0]),
                    Poly::new(vec![0.0, 0.0, 1.0]),
                    Poly::new(vec![1.0, 1.0]),
                ],
            }],
        )
        .unwrap();
        let pts = [
            Complex64::new(0.3, 0.2),
            Complex64::new(-1.1, 0.5),
            Complex64::new(0.9, -0.7),
        ];
        let base = t.eval(&pts).unwrap();
        for p in permutations(3) {
            let permuted: Vec<Complex64> = p.iter().map(|&i| pts[i]).collect();
            assert!((t.eval(&permuted).unwrap() - base).norm() < 1e-13);
        }
    }

    #[test]
    fn sinh_kernel_matches_series_oracle() {
        // Independent oracle: high-order Taylor series of ln(sinh u / u)
        // from the product formula sinh(u)/u = prod_k (1 + u^2/(pi k)^2).
        let t = RBodyPotential::zero(2)
            .with_kernel(PairKernel::Sinh { c: 2.0 })
            .unwrap();
        let x = Complex64::new(0.31, 0.12);
        let y = Complex64::new(-0.22, -0.05);
        let u = (x - y) / 2.0;
        let mut oracle = Complex64::new(0.0, 0.0);
        for k in 1..200000 {
            let pk = std::f64::consts::PI * k as f64;
            oracle += (1.0 + u * u / (pk * pk)).ln();
        }
        let got = t.eval(&[x, y]).unwrap();
        assert!(
            (got - 2.0 * oracle).norm() < 1e-12,
            "got {got}, oracle {}",
            2.0 * oracle
        );
    }

    #[test]
    fn sinh_kernel_rejects_outside_strip() {
        let t = RBodyPotential::zero(2)
            .with_kernel(PairKernel::Sinh { c: 1.0 })
            .unwrap();
        let bad = t.eval(&[Complex64::new(0.0, 4.0), Complex64::new(0.0, -4.0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn d1_matches_finite_difference() {
        let t = RBodyPotential::zero(2)
            .with_kernel(PairKernel::QProd {
                c: 0.8,
                q: 0.3,
                kmax: 60,
            })
            .unwrap();
        let x = Complex64::new(0.21, 0.03);
        let y = Complex64::new(-0.33, -0.02);
        let h = 1e-6;
        let fd = (t.eval(&[x + h, y]).unwrap() - t.eval(&[x - h, y]).unwrap()) / (2.0 * h);
        let an = t.d1(&[x, y]).unwrap();
        assert!((fd - an).norm() < 1e-8, "fd {fd} vs {an}");
    }
}
