use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, Matrix, Q};
use crate::poly::{Monomial, Poly};

/// Polynomial ring over `Q` on generators of even negative degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedRing {
    name: String,
    labels: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedRing {
    pub fn new(name: impl Into<String>, generators: Vec<(String, i64)>) -> Result<Self> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        for (label, deg) in &generators {
            if label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("bad generator label `{label}`")));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::InvalidRing(format!("duplicate generator `{label}`")));
            }
            if *deg >= 0 || deg % 2 != 0 {
                return Err(Error::InvalidRing(format!(
                    "generator `{label}` has degree {deg}; degrees must be even and negative"
                )));
            }
        }
        let (labels, degrees) = generators.into_iter().unzip();
        Ok(GradedRing {
            name,
            labels,
            degrees,
        })
    }

    /// The ground field `Q`, concentrated in degree 0.
    pub fn rationals() -> Self {
        GradedRing {
            name: "Q".into(),
            labels: Vec::new(),
            degrees: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn generators(&self) -> Vec<(String, i64)> {
        self.labels
            .iter()
            .cloned()
            .zip(self.degrees.iter().copied())
            .collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(i, self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    /// Largest absolute generator degree (0 for `Q`).
    pub fn max_generator_degree(&self) -> i64 {
        self.degrees.iter().map(|d| d.abs()).max().unwrap_or(0)
    }

    /// All monomials of degree `n`, in increasing exponent order.
    pub fn monomials(&self, n: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(0, n, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, v: usize, remaining: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == self.nvars() {
            if remaining == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let d = self.degrees[v];
        let mut k = 0u32;
        loop {
            let rest = remaining - k as i64 * d;
            if rest > 0 {
                break;
            }
            exps[v] = k;
            self.enumerate(v + 1, rest, exps, out);
            k += 1;
        }
        exps[v] = 0;
    }

    pub fn dim(&self, n: i64) -> usize {
        self.monomials(n).len()
    }

    /// Degree of a homogeneous polynomial; `None` for zero.
    pub fn degree_of(&self, p: &Poly) -> Result<Option<i64>> {
        self.check_arity(p)?;
        p.homogeneous_degree(&self.degrees).map_err(|_| {
            Error::Inhomogeneous(format!(
                "{} is not homogeneous in {}",
                self.format(p),
                self.name
            ))
        })
    }

    pub fn check_arity(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::RingMismatch {
                expected: format!("{} ({} generators)", self.name, self.nvars()),
                found: format!("polynomial in {} variables", p.nvars()),
            });
        }
        Ok(())
    }

    /// Coordinates of a polynomial of degree `n` in the monomial basis.
    pub fn coords(&self, p: &Poly, n: i64) -> Vec<Q> {
        self.monomials(n).iter().map(|m| p.coeff(m)).collect()
    }

    pub fn from_coords(&self, coords: &[Q], n: i64) -> Poly {
        Poly::from_terms(
            self.nvars(),
            self.monomials(n).into_iter().zip(coords.iter().cloned()),
        )
    }

    pub fn format(&self, p: &Poly) -> String {
        format_poly(p, &self.labels)
    }

    pub fn describe(&self) -> String {
        if self.labels.is_empty() {
            return self.name.clone();
        }
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|(l, d)| format!("{l}:{d}"))
            .collect();
        format!("{} = Q[{}]", self.name, gens.join(", "))
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub fn format_poly(p: &Poly, labels: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let mono: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        labels[v].clone()
                    } else {
                        format!("{}^{e}", labels[v])
                    }
                })
                .collect();
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&fmt_q(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&fmt_q(&abs));
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

/// Graded ring homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(
        source: Arc<GradedRing>,
        target: Arc<GradedRing>,
        images: Vec<Poly>,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::InvalidRing(format!(
                "{} images for {} generators of {}",
                images.len(),
                source.nvars(),
                source.name()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            let deg = target.degree_of(img)?;
            if let Some(d) = deg {
                if d != source.degrees()[i] {
                    return Err(Error::InvalidRing(format!(
                        "image of {} has degree {d}, expected {}",
                        source.labels()[i],
                        source.degrees()[i]
                    )));
                }
            }
        }
        Ok(RingMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(ring: Arc<GradedRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        RingMap {
            source: ring.clone(),
            target: ring,
            images,
        }
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute(&self.images, self.target.nvars())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && (0..self.source.nvars()).all(|i| self.images[i] == self.source.var(i))
    }

    /// The degree-`n` piece `R_n -> S_n` in monomial bases.
    pub fn matrix(&self, n: i64) -> Matrix {
        let cols: Vec<Vec<Q>> = self
            .source
            .monomials(n)
            .into_iter()
            .map(|m| self.target.coords(&self.apply(&Poly::term(Q::one(), m)), n))
            .collect();
        Matrix::from_cols(&cols, self.target.dim(n))
    }

    pub fn describe(&self) -> Vec<String> {
        (0..self.source.nvars())
            .map(|i| {
                format!(
                    "{} ↦ {}",
                    self.source.labels()[i],
                    self.target.format(&self.images[i])
                )
            })
            .collect()
    }
}
