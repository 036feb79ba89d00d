//! Real integration domains: ordered unions of disjoint closed segments.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A closed real segment [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn half(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Disjoint union of g+1 compact segments, ordered increasingly.
/// Endpoints of the domain are hard-edge candidates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub segments: Vec<Segment>,
}

impl Domain {
    /// Validate and sort raw intervals into a Domain.
    pub fn build(intervals: &[(f64, f64)]) -> Result<Domain> {
        if intervals.is_empty() {
            return Err(Error::Domain("no intervals given".into()));
        }
        let mut segs: Vec<(usize, Segment)> = intervals
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| (i, Segment { lo, hi }))
            .collect();
        for (i, s) in &segs {
            if !s.lo.is_finite() || !s.hi.is_finite() {
                return Err(Error::Domain(format!(
                    "interval {i} has non-finite endpoint ({}, {})",
                    s.lo, s.hi
                )));
            }
            if s.hi <= s.lo {
                return Err(Error::Domain(format!(
                    "interval {i} has non-positive length ({}, {})",
                    s.lo, s.hi
                )));
            }
        }
        segs.sort_by(|a, b| a.1.lo.partial_cmp(&b.1.lo).unwrap());
        for w in segs.windows(2) {
            let (i, a) = w[0];
            let (j, b) = w[1];
            if b.lo <= a.hi {
                return Err(Error::Domain(format!(
                    "overlap between intervals {i} and {j}: [{}, {}] and [{}, {}]",
                    a.lo, a.hi, b.lo, b.hi
                )));
            }
        }
        Ok(Domain {
            segments: segs.into_iter().map(|(_, s)| s).collect(),
        })
    }

    /// Number of gaps g (segments = g+1).
    pub fn genus(&self) -> usize {
        self.segments.len() - 1
    }

    pub fn n_segments(&self) -> usize {
        self.segments.len()
    }

    /// All 2(g+1) endpoints in increasing order.
    pub fn endpoints(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 * self.segments.len());
        for s in &self.segments {
            v.push(s.lo);
            v.push(s.hi);
        }
        v
    }

    pub fn contains(&self, x: f64) -> bool {
        self.segments.iter().any(|s| s.contains(x))
    }

    /// Index of the segment containing x, if any.
    pub fn segment_of(&self, x: f64) -> Option<usize> {
        self.segments.iter().position(|s| s.contains(x))
    }

    /// Distance from a real point to the domain.
    pub fn distance(&self, x: f64) -> f64 {
        self.segments
            .iter()
            .map(|s| {
                if s.contains(x) {
                    0.0
                } else {
                    (x - s.lo).abs().min((x - s.hi).abs())
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.len()).sum()
    }
}
