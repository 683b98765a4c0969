use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::poly::{free_add, free_scale, FreeElement, Poly};

use super::module::PresentedModule;

/// Homogeneous module map of degree `t`, given by generator images in the
/// free module on the target generators. Composition is substitution.
#[derive(Clone)]
pub struct ModuleMorphism {
    source: PresentedModule,
    target: PresentedModule,
    degree: i64,
    images: Vec<FreeElement>,
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMorphism")
            .field("source_gens", &self.source.ngens())
            .field("target_gens", &self.target.ngens())
            .field("degree", &self.degree)
            .finish()
    }
}

impl ModuleMorphism {
    /// Checks homogeneity of the images and that relations map to zero.
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        degree: i64,
        images: Vec<FreeElement>,
    ) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch {
                expected: source.ring().name().into(),
                found: target.ring().name().into(),
            });
        }
        if images.len() != source.ngens() {
            return Err(Error::InvalidModule(format!(
                "{} images for {} generators",
                images.len(),
                source.ngens()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.len() != target.ngens() {
                return Err(Error::InvalidModule(format!(
                    "image {i} has the wrong length"
                )));
            }
            if let Some(d) = target.degree_of(img)? {
                if d != source.gen_degrees()[i] + degree {
                    return Err(Error::Inhomogeneous(format!(
                        "image of generator {i} lies in degree {d}, expected {}",
                        source.gen_degrees()[i] + degree
                    )));
                }
            }
        }
        let m = ModuleMorphism {
            source,
            target,
            degree,
            images,
        };
        for (k, rel) in m.source.relations().iter().enumerate() {
            let img = m.apply(rel);
            let n = m.source.relation_degrees()[k] + degree;
            if !m.target.is_zero_element(&img, n)? {
                return Err(Error::InvalidModule(format!(
                    "relation {k} does not map to zero"
                )));
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: PresentedModule,
        target: PresentedModule,
        degree: i64,
        images: Vec<FreeElement>,
    ) -> Self {
        ModuleMorphism {
            source,
            target,
            degree,
            images,
        }
    }

    pub fn identity(m: &PresentedModule) -> Self {
        let images = (0..m.ngens()).map(|i| m.generator(i)).collect();
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            degree: 0,
            images,
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn images(&self) -> &[FreeElement] {
        &self.images
    }

    /// Image of a free element on the source generators.
    pub fn apply(&self, x: &FreeElement) -> FreeElement {
        let mut out = self.target.free_zero();
        for (p, img) in x.iter().zip(&self.images) {
            if !p.is_zero() {
                out = free_add(&out, &free_scale(img, p));
            }
        }
        out
    }

    /// `self . first`.
    pub fn compose(&self, first: &ModuleMorphism) -> Result<ModuleMorphism> {
        if first.target.gen_degrees() != self.source.gen_degrees()
            || first.target.ring() != self.source.ring()
        {
            return Err(Error::Structural(
                "composing morphisms whose modules do not match".into(),
            ));
        }
        let images = first.images.iter().map(|x| self.apply(x)).collect();
        Ok(ModuleMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            degree: first.degree + self.degree,
            images,
        })
    }

    pub fn scale(&self, c: &Q) -> ModuleMorphism {
        let p = Poly::constant(c.clone(), self.source.ring().nvars());
        let images = self.images.iter().map(|x| free_scale(x, &p)).collect();
        ModuleMorphism {
            images,
            ..self.clone()
        }
    }

    /// Degree-`n` matrix `source_n -> target_{n + t}` in quotient bases.
    pub fn matrix_at(&self, n: i64) -> Matrix {
        let d = self.source.dim(n);
        let rows = self.target.dim(n + self.degree);
        let cols: Vec<Vec<Q>> = (0..d)
            .map(|j| {
                let x = self.source.basis_element(n, j);
                self.target
                    .coords(&self.apply(&x), n + self.degree)
                    .expect("homogeneous image")
            })
            .collect();
        Matrix::from_cols(&cols, rows)
    }

    /// Concatenated quotient coordinates of the generator images.
    pub fn image_coords(&self) -> Result<Vec<Q>> {
        let mut out = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            let n = self.source.gen_degrees()[i] + self.degree;
            out.extend(self.target.coords(img, n)?);
        }
        Ok(out)
    }

    /// Exact equality of the induced maps, checked on generators.
    pub fn agrees_with(&self, other: &ModuleMorphism) -> Result<bool> {
        if self.degree != other.degree || self.images.len() != other.images.len() {
            return Ok(false);
        }
        Ok(self.image_coords()? == other.image_coords()?)
    }

    /// First generator where the map fails to commute with the group.
    pub fn equivariance_defect(&self) -> Result<Option<(usize, usize)>> {
        let (Some(gs), Some(gt)) = (self.source.group(), self.target.group()) else {
            return Ok(None);
        };
        if gs != gt {
            return Err(Error::GroupMismatch(
                "source and target carry different groups".into(),
            ));
        }
        for a in gs.elements() {
            for i in 0..self.source.ngens() {
                let n = self.source.gen_degrees()[i] + self.degree;
                let lhs = self.target.act(a, &self.images[i]);
                let rhs = self.apply(&self.source.act(a, &self.source.generator(i)));
                let diff: FreeElement = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                if !self.target.is_zero_element(&diff, n)? {
                    return Ok(Some((a, i)));
                }
            }
        }
        Ok(None)
    }
}
