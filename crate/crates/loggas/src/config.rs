//! Model configuration: JSON schema and validated construction.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::potential::{PairKernel, RBodyPotential, SepTerm};
use serde::{Deserialize, Serialize};

/// Numeric knobs (all user-overridable).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Numerics {
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_cheb")]
    pub cheb_degree: usize,
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
}

fn default_nodes() -> usize {
    256
}
fn default_cheb() -> usize {
    128
}
fn default_quad_tol() -> f64 {
    1e-10
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            nodes: default_nodes(),
            cheb_degree: default_cheb(),
            quad_tol: default_quad_tol(),
        }
    }
}

/// One separable polynomial term, either monomial powers or explicit
/// per-slot polynomial coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub powers: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    /// Extra separable terms on top of a preset kernel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_terms: Option<Vec<TermSpec>>,
    /// N-dependent corrections T^[p] are out of scope; any content here is
    /// rejected at parse time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_corrections: Option<serde_json::Value>,
}

/// On-disk model configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigFile {
    pub beta: f64,
    pub r: usize,
    pub segments: Vec<(f64, f64)>,
    pub potential: PotentialSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filling: Option<Vec<f64>>,
    #[serde(default)]
    pub numerics: Option<Numerics>,
}

/// Validated in-memory model.
#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub beta: f64,
    pub n: usize,
    pub domain: Domain,
    pub potential: RBodyPotential,
    pub filling: Option<Vec<f64>>,
    pub numerics: Numerics,
}

fn terms_from_specs(r: usize, specs: &[TermSpec]) -> Result<Vec<SepTerm>> {
    let mut out = Vec::new();
    for ts in specs {
        let factors: Vec<Poly> = match (&ts.powers, &ts.polys) {
            (Some(p), None) => {
                if p.len() != r {
                    return Err(Error::Config(format!(
                        "term powers length {} != r = {r}",
                        p.len()
                    )));
                }
                p.iter()
                    .map(|&k| {
                        let mut c = vec![0.0; k as usize + 1];
                        c[k as usize] = 1.0;
                        Poly::new(c)
                    })
                    .collect()
            }
            (None, Some(ps)) => {
                if ps.len() != r {
                    return Err(Error::Config(format!(
                        "term polys length {} != r = {r}",
                        ps.len()
                    )));
                }
                ps.iter().map(|c| Poly::new(c.clone())).collect()
            }
            _ => {
                return Err(Error::Config(
                    "each term needs exactly one of `powers` or `polys`".into(),
                ))
            }
        };
        out.push(SepTerm { c: ts.c, factors });
    }
    Ok(out)
}

impl ModelConfig {
    pub fn from_file(path: &std::path::Path, n: usize) -> Result<ModelConfig> {
        let text = std::fs::read_to_string(path)?;
        let cf: ConfigFile = serde_json::from_str(&text)?;
        ModelConfig::from_config_file(&cf, n)
    }

    pub fn from_config_file(cf: &ConfigFile, n: usize) -> Result<ModelConfig> {
        if cf.beta <= 0.0 {
            return Err(Error::Config(format!("beta must be > 0, got {}", cf.beta)));
        }
        if cf.potential.n_corrections.is_some() {
            return Err(Error::Config(
                "N-dependent potential corrections T^[p] (p >= 1) are not supported".into(),
            ));
        }
        let domain = Domain::build(&cf.segments)?;
        let r = cf.r;
        let potential = match cf.potential.kind.as_str() {
            "polynomial_sum" => {
                let specs = cf
                    .potential
                    .terms
                    .as_deref()
                    .ok_or_else(|| Error::Config("polynomial_sum needs `terms`".into()))?;
                RBodyPotential::from_terms(r, terms_from_specs(r, specs)?)?
            }
            "sinh" | "onmodel" | "qdeformed" => {
                let coeff = cf.potential.coeff.unwrap_or(cf.beta);
                let kernel = match cf.potential.kind.as_str() {
                    "sinh" => PairKernel::Sinh { c: coeff },
                    "onmodel" => PairKernel::LogSum {
                        c: coeff * cf.potential.n.unwrap_or(1.0),
                    },
                    _ => PairKernel::QProd {
                        c: coeff,
                        q: cf
                            .potential
                            .q
                            .ok_or_else(|| Error::Config("qdeformed needs `q`".into()))?,
                        kmax: cf.potential.kmax.unwrap_or(40),
                    },
                };
                let extra = match cf.potential.extra_terms.as_deref() {
                    Some(specs) => terms_from_specs(r, specs)?,
                    None => Vec::new(),
                };
                RBodyPotential::from_terms(r, extra)?.with_kernel(kernel)?
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown potential type `{other}` (known: polynomial_sum, sinh, onmodel, qdeformed)"
                )))
            }
        };
        if let PairTest::Bad(msg) = check_onmodel_domain(&potential, &domain) {
            return Err(Error::Config(msg));
        }
        let filling = match &cf.filling {
            None => None,
            Some(eps) => {
                if eps.len() != domain.n_segments() {
                    return Err(Error::Config(format!(
                        "filling has {} entries for {} segments",
                        eps.len(),
                        domain.n_segments()
                    )));
                }
                if eps.iter().any(|&e| e < 0.0) {
                    return Err(Error::Config("filling fractions must be >= 0".into()));
                }
                let s: f64 = eps.iter().sum();
                if (s - 1.0).abs() > 1e-12 {
                    return Err(Error::Config(format!(
                        "filling fractions sum to {s}, expected 1 within 1e-12"
                    )));
                }
                Some(eps.clone())
            }
        };
        Ok(ModelConfig {
            beta: cf.beta,
            n,
            domain,
            potential,
            filling,
            numerics: cf.numerics.clone().unwrap_or_default(),
        })
    }

    /// Integer particle counts per segment: round(N eps_h) with
    /// largest-remainder correction so they sum to N.
    pub fn particle_counts(&self, eps: &[f64]) -> Vec<usize> {
        let n = self.n;
        let mut counts: Vec<usize> = eps.iter().map(|&e| (n as f64 * e).floor() as usize).collect();
        let mut rem: Vec<(f64, usize)> = eps
            .iter()
            .enumerate()
            .map(|(h, &e)| (n as f64 * e - (n as f64 * e).floor(), h))
            .collect();
        rem.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let deficit = n - counts.iter().sum::<usize>();
        for k in 0..deficit {
            counts[rem[k % rem.len()].1] += 1;
        }
        counts
    }
}

enum PairTest {
    Ok,
    Bad(String),
}

fn check_onmodel_domain(t: &RBodyPotential, d: &Domain) -> PairTest {
    for k in t.kernels() {
        if let PairKernel::LogSum { .. } = k {
            if d.segments[0].lo <= 0.0 {
                return PairTest::Bad(
                    "onmodel kernel needs a domain contained in (0, inf)".into(),
                );
            }
        }
    }
    PairTest::Ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_json() -> &'static str {
        r#"{
            "beta": 2.0, "r": 1, "segments": [[-3.0, 3.0]],
            "potential": {"type": "polynomial_sum", "terms": [{"c": -1.0, "powers": [2]}]},
            "numerics": {"nodes": 128, "cheb_degree": 64, "quad_tol": 1e-10}
        }"#
    }

    #[test]
    fn parses_gaussian_config() {
        let cf: ConfigFile = serde_json::from_str(gaussian_json()).unwrap();
        let mc = ModelConfig::from_config_file(&cf, 50).unwrap();
        assert_eq!(mc.domain.n_segments(), 1);
        assert_eq!(mc.potential.r(), 1);
        let v = mc
            .potential
            .eval(&[num_complex::Complex64::new(3.0, 0.0)])
            .unwrap();
        assert_eq!(v.re, -9.0);
    }

    #[test]
    fn rejects_n_corrections() {
        let text = r#"{
            "beta": 2.0, "r": 1, "segments": [[-3.0, 3.0]],
            "potential": {"type": "polynomial_sum", "terms": [{"c": -1.0, "powers": [2]}],
                          "n_corrections": [{"p": 1}]}
        }"#;
        let cf: ConfigFile = serde_json::from_str(text).unwrap();
        assert!(ModelConfig::from_config_file(&cf, 10).is_err());
    }

    #[test]
    fn rejects_bad_filling() {
        let text = r#"{
            "beta": 1.0, "r": 1, "segments": [[0.0, 1.0], [2.0, 3.0]],
            "potential": {"type": "polynomial_sum", "terms": [{"c": -1.0, "powers": [2]}]},
            "filling": [0.6, 0.5]
        }"#;
        let cf: ConfigFile = serde_json::from_str(text).unwrap();
        assert!(ModelConfig::from_config_file(&cf, 10).is_err());
    }

    #[test]
    fn particle_counts_largest_remainder() {
        let cf: ConfigFile = serde_json::from_str(gaussian_json()).unwrap();
        let mut mc = ModelConfig::from_config_file(&cf, 7).unwrap();
        mc.n = 7;
        let counts = mc.particle_counts(&[0.5, 0.5]);
        assert_eq!(counts.iter().sum::<usize>(), 7);
        assert!(counts[0] == 4 || counts[1] == 4);
    }
}
