//! Graded polynomial rings, finitely presented graded modules and their
//! exact degreewise evaluation.
//!
//! Degree convention: cohomological degrees are negative (a polynomial
//! generator of cohomological degree 2 sits in degree -2). Suspension
//! raises degree, so `(Sigma^k M)_n = M_{n-k}`.

mod module;
mod morphism;
mod ring;
mod scalars;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use module::{
    free_combination, free_degree, DegreePiece, ModuleTwist, PresentedModule, WindowModule,
};
pub use morphism::ModuleMorphism;
pub use ring::{format_poly, GradedRing, RingMap};
pub use scalars::{extend_scalars, restrict_scalars, verify_basis_certificate, VerifiedBasis};

/// Finite closed degree interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub const DEFAULT: Window = Window { lo: -40, hi: 8 };

    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Parse(format!("empty window {lo}:{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Degrees in ascending order.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("window `{s}` is not of the form LO:HI")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("window bound `{t}` is not an integer")))
        };
        Window::new(parse(lo)?, parse(hi)?)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

pub fn evaluate(m: &PresentedModule, window: Window) -> WindowModule {
    m.evaluate(window)
}

pub fn hilbert_function(m: &PresentedModule, window: Window) -> BTreeMap<i64, usize> {
    m.hilbert_function(window)
}

/// `degree,dim` rows in ascending degree, with a header line.
pub fn hilbert_csv(hf: &BTreeMap<i64, usize>) -> String {
    let mut out = String::from("degree,dim\n");
    for (n, d) in hf {
        out.push_str(&format!("{n},{d}\n"));
    }
    out
}

/// `[{"degree": n, "dim": d}, ...]` in ascending degree.
pub fn hilbert_json(hf: &BTreeMap<i64, usize>) -> serde_json::Value {
    hf.iter()
        .map(|(n, d)| serde_json::json!({ "degree": n, "dim": d }))
        .collect()
}

/// Serializes a Hilbert function with [`hilbert_json`].
pub fn serialize_hilbert<S: serde::Serializer>(
    hf: &BTreeMap<i64, usize>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    hilbert_json(hf).serialize(serializer)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionStatus {
    TorsionCertifiedOnWindow,
    NotTorsion,
    Inconclusive,
}

/// Window-sound torsion test.
///
/// Certified when the module vanishes on a band at the bottom of the
/// window that lies below every generator and is longer than the largest
/// ring-generator degree: no monomial path from a generator can step over
/// such a band, so everything below it vanishes too. Not torsion when some
/// ring generator acts injectively along a nonzero chain that reaches the
/// bottom of the window.
pub fn is_torsion_on_window(m: &PresentedModule, window: Window) -> TorsionStatus {
    let ring = m.ring();
    let step = ring.max_generator_degree();
    let lowest_gen = m.gen_degrees().iter().copied().min();
    let Some(lowest_gen) = lowest_gen else {
        return TorsionStatus::TorsionCertifiedOnWindow;
    };
    let band_top = window.lo + step;
    let band_zero = (window.lo..=band_top.min(window.hi)).all(|n| m.dim(n) == 0);
    if band_zero && band_top <= window.hi && window.lo <= lowest_gen {
        let annihilated = (0..m.ngens()).all(|i| {
            (0..ring.nvars()).all(|v| {
                let d = ring.degrees()[v];
                let g = m.gen_degrees()[i];
                let mut k = 1;
                while window.contains(g + k * d) {
                    let x = crate::poly::free_basis(
                        m.ngens(),
                        ring.nvars(),
                        i,
                        ring.var(v).pow(k as u32),
                    );
                    if m.is_zero_element(&x, g + k * d).unwrap_or(false) {
                        return true;
                    }
                    k += 1;
                }
                false
            })
        });
        if annihilated || ring.nvars() == 0 {
            return TorsionStatus::TorsionCertifiedOnWindow;
        }
    }
    for v in 0..ring.nvars() {
        let d = ring.degrees()[v];
        for start in window.degrees().rev() {
            if m.dim(start) == 0 || start + d < window.lo {
                continue;
            }
            // Injective along the chain down to the window edge.
            let mut n = start;
            let mut ok = true;
            while n + d >= window.lo {
                let mat = m.generator_matrix(v, n);
                if mat.rank() < m.dim(n) || m.dim(n) == 0 {
                    ok = false;
                    break;
                }
                n += d;
            }
            if ok && m.dim(n) > 0 {
                return TorsionStatus::NotTorsion;
            }
        }
    }
    TorsionStatus::Inconclusive
}
