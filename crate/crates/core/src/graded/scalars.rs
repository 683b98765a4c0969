use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::poly::{FreeElement, Poly};

use super::module::PresentedModule;
use super::ring::RingMap;
use super::Window;

/// `S (x)_R M`: same generators, relations pushed through the ring map.
pub fn extend_scalars(theta: &RingMap, m: &PresentedModule) -> Result<PresentedModule> {
    if m.ring().as_ref() != theta.source().as_ref() {
        return Err(Error::RingMismatch {
            expected: theta.source().name().into(),
            found: m.ring().name().into(),
        });
    }
    if m.twist().is_some() {
        return Err(Error::Structural(
            "extend_scalars takes an untwisted module; use theta_lower_star for group actions"
                .into(),
        ));
    }
    let relations = m
        .relations()
        .iter()
        .map(|rel| push_free(theta, rel))
        .collect();
    PresentedModule::new(theta.target().clone(), m.gen_degrees().to_vec(), relations)
}

pub(crate) fn push_free(theta: &RingMap, x: &FreeElement) -> FreeElement {
    x.iter().map(|p| theta.apply(p)).collect()
}

/// A homogeneous basis of `S` as a free `R`-module, certified degreewise.
pub struct VerifiedBasis {
    map: RingMap,
    basis: Vec<Poly>,
    degrees: Vec<i64>,
    window: Window,
    inverses: Mutex<BTreeMap<i64, Arc<Option<Matrix>>>>,
}

impl fmt::Debug for VerifiedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let target = self.map.target();
        f.debug_struct("VerifiedBasis")
            .field(
                "basis",
                &self
                    .basis
                    .iter()
                    .map(|p| target.format(p))
                    .collect::<Vec<_>>(),
            )
            .field("degrees", &self.degrees)
            .field("window", &self.window)
            .finish()
    }
}

/// Checks that `(+_i Sigma^{e_i} R) -> S`, `e_i |-> basis_i`, is bijective in
/// every degree of the window, scanning from the top degree down.
pub fn verify_basis_certificate(
    theta: &RingMap,
    basis: Vec<Poly>,
    window: Window,
) -> Result<VerifiedBasis> {
    let target = theta.target();
    let mut degrees = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        match target.degree_of(b)? {
            Some(d) => degrees.push(d),
            None => return Err(Error::InvalidRing(format!("basis element {i} is zero"))),
        }
    }
    if basis.is_empty() {
        return Err(Error::InvalidRing("empty basis".into()));
    }
    let span = degrees.iter().max().unwrap() - degrees.iter().min().unwrap();
    if window.len() <= 2 * span {
        return Err(Error::WindowTooSmall(format!(
            "window {window} has length {} but the basis degrees span {span}",
            window.len()
        )));
    }
    let vb = VerifiedBasis {
        map: theta.clone(),
        basis,
        degrees,
        window,
        inverses: Mutex::new(BTreeMap::new()),
    };
    for n in window.degrees().rev() {
        let mat = vb.degree_matrix(n);
        let rank = mat.rank();
        if mat.rows() != mat.cols() || rank != mat.rows() {
            let reason = if rank < mat.rows() {
                format!(
                    "not surjective: dim S_{n} = {} but the image has rank {rank}",
                    mat.rows()
                )
            } else {
                format!(
                    "not injective: {} free generators map onto dim S_{n} = {}",
                    mat.cols(),
                    mat.rows()
                )
            };
            return Err(Error::BasisCertificate { degree: n, reason });
        }
    }
    Ok(vb)
}

impl VerifiedBasis {
    pub fn map(&self) -> &RingMap {
        &self.map
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Columns indexed by pairs `(i, r)` with `r` a monomial of `R_{n - e_i}`.
    fn degree_matrix(&self, n: i64) -> Matrix {
        let (src, dst) = (self.map.source(), self.map.target());
        let mut cols = Vec::new();
        for (i, s) in self.basis.iter().enumerate() {
            for r in src.monomials(n - self.degrees[i]) {
                let img = &self.map.apply(&Poly::term(Q::from_integer(1.into()), r)) * s;
                cols.push(dst.coords(&img, n));
            }
        }
        Matrix::from_cols(&cols, dst.dim(n))
    }

    fn inverse_at(&self, n: i64) -> Arc<Option<Matrix>> {
        if let Some(inv) = self.inverses.lock().expect("lock").get(&n) {
            return inv.clone();
        }
        let inv = Arc::new(self.degree_matrix(n).inverse());
        self.inverses
            .lock()
            .expect("lock")
            .entry(n)
            .or_insert(inv)
            .clone()
    }

    /// Coefficients `r_i` in `R` with `p = sum_i theta(r_i) s_i`.
    pub fn rewrite(&self, p: &Poly) -> Result<Vec<Poly>> {
        let (src, dst) = (self.map.source(), self.map.target());
        let Some(n) = dst.degree_of(p)? else {
            return Ok(vec![src.zero(); self.len()]);
        };
        let inv = self.inverse_at(n);
        let inv = inv.as_ref().as_ref().ok_or_else(|| {
            Error::Structural(format!(
                "basis does not give a bijection in degree {n}; cannot rewrite"
            ))
        })?;
        let coords = inv.mul_vec(&dst.coords(p, n));
        let mut out = Vec::with_capacity(self.len());
        let mut k = 0;
        for e in &self.degrees {
            let monos = src.monomials(n - e);
            let c = &coords[k..k + monos.len()];
            out.push(Poly::from_terms(
                src.nvars(),
                monos.into_iter().zip(c.iter().cloned()),
            ));
            k += c.len();
        }
        Ok(out)
    }

    /// Rewrites a free `S`-element on `ng` generators into the free
    /// `R`-module on pairs `(j, i)`, at index `j * nb + i`.
    pub fn rewrite_free(&self, x: &FreeElement) -> Result<FreeElement> {
        let nb = self.len();
        let mut out = Vec::with_capacity(x.len() * nb);
        for p in x {
            out.extend(self.rewrite(p)?);
        }
        Ok(out)
    }

    /// Coefficients of `1` in the basis.
    pub fn unit_coords(&self) -> Vec<Poly> {
        self.rewrite(&self.map.target().one())
            .expect("degree 0 is certified")
    }

    /// `c[i][j][k]` with `s_i s_j = sum_k c[i][j][k] s_k`.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<Poly>>>> {
        self.basis
            .iter()
            .map(|a| self.basis.iter().map(|b| self.rewrite(&(a * b))).collect())
            .collect()
    }

    /// Exact associativity of the structure constants.
    pub fn check_associativity(&self) -> Result<()> {
        let c = self.structure_constants()?;
        let nb = self.len();
        let src = self.map.source();
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    for m in 0..nb {
                        let mut left = src.zero();
                        let mut right = src.zero();
                        for l in 0..nb {
                            left = &left + &(&c[i][j][l] * &c[l][k][m]);
                            right = &right + &(&c[j][k][l] * &c[i][l][m]);
                        }
                        if left != right {
                            return Err(Error::InvariantViolation(format!(
                                "structure constants not associative at ({i}, {j}, {k}) component {m}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> Vec<String> {
        let dst = self.map.target();
        self.basis
            .iter()
            .zip(&self.degrees)
            .map(|(b, d)| format!("{} (degree {d})", dst.format(b)))
            .collect()
    }
}

/// `theta^* N`: the `S`-module `N` regarded as an `R`-module.
///
/// Generator `(j, i)` stands for `s_i n_j` and sits at index `j * nb + i`
/// in degree `g_j + e_i`; relations are the rewritten `s_i rho` for every
/// relation `rho` of `N`. Any group action on `N` is dropped here.
pub fn restrict_scalars(vb: &VerifiedBasis, n: &PresentedModule) -> Result<PresentedModule> {
    let theta = vb.map();
    if n.ring().as_ref() != theta.target().as_ref() {
        return Err(Error::RingMismatch {
            expected: theta.target().name().into(),
            found: n.ring().name().into(),
        });
    }
    let nb = vb.len();
    let mut degrees = Vec::with_capacity(n.ngens() * nb);
    for g in n.gen_degrees() {
        for e in vb.degrees() {
            degrees.push(g + e);
        }
    }
    let mut relations = Vec::new();
    for rel in n.relations() {
        for s in vb.basis() {
            let moved: FreeElement = rel.iter().map(|p| s * p).collect();
            relations.push(vb.rewrite_free(&moved)?);
        }
    }
    PresentedModule::new(theta.source().clone(), degrees, relations)
}
