//! The five functors between graded modules over `R` and `S` along a ring
//! map `theta_e: R -> S` with `S` free over `R`, together with their units,
//! counits and the small-object comparisons.
//!
//! Generator layouts (`nb` basis elements, `ng` generators of the input):
//! restriction has `(j, i)` at `j * nb + i` standing for `s_i n_j`;
//! coextension and `D (x)_S N` have `(i, j)` at `i * ng + j` standing for
//! `s_i^* (x) m_j`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{
    restrict_scalars, ModuleMorphism, ModuleTwist, PresentedModule, RingMap, VerifiedBasis, Window,
};
use crate::groups::{Character, FiniteGroup};
use crate::linalg::{fmt_q, Matrix, Q};
use crate::poly::{free_basis, FreeElement, Poly};
use crate::twisted::{twisted_hom, RingAction, ShiftCharacter};

use super::dualizing::{dualizing_module, Comparison, DualizingModule};

#[derive(Clone, Debug, Serialize)]
pub struct DegreeComparison {
    pub degree: i64,
    pub left_dim: usize,
    pub right_dim: usize,
    pub determinant: String,
}

/// Degreewise comparison of two constructions through explicit matrices.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonCheck {
    pub name: String,
    pub degrees: Vec<DegreeComparison>,
    pub pass: bool,
    pub first_failure: Option<i64>,
    pub note: Option<String>,
}

impl ComparisonCheck {
    pub fn from_matrices(
        name: impl Into<String>,
        mats: impl IntoIterator<Item = (i64, Matrix)>,
    ) -> Self {
        let degrees: Vec<DegreeComparison> = mats
            .into_iter()
            .map(|(degree, m)| {
                let det = if m.rows() == m.cols() {
                    m.determinant()
                } else {
                    Q::zero()
                };
                DegreeComparison {
                    degree,
                    left_dim: m.cols(),
                    right_dim: m.rows(),
                    determinant: fmt_q(&det),
                }
            })
            .collect();
        let first_failure = degrees
            .iter()
            .find(|d| d.left_dim != d.right_dim || (d.determinant == "0" && d.left_dim > 0))
            .map(|d| d.degree);
        ComparisonCheck {
            name: name.into(),
            degrees,
            pass: first_failure.is_none(),
            first_failure,
            note: None,
        }
    }

    pub fn failed(name: impl Into<String>, note: String) -> Self {
        ComparisonCheck {
            name: name.into(),
            degrees: Vec::new(),
            pass: false,
            first_failure: None,
            note: Some(note),
        }
    }
}

/// Certified data for the connected part of a change of groups, with a
/// finite group `B` acting compatibly on both rings.
#[derive(Debug)]
pub struct Connected {
    vb: Arc<VerifiedBasis>,
    group: Arc<FiniteGroup>,
    r_action: RingAction,
    s_action: RingAction,
    shift: ShiftCharacter,
    dualizing: DualizingModule,
    comparison: Comparison,
    iota: Vec<Poly>,
    /// `sigma_rw[i][l]` with `sigma_i = sum_l theta(sigma_rw[i][l]) s_l`.
    sigma_rw: Vec<Vec<Poly>>,
}

impl Connected {
    /// Errors when the dualizing comparison does not validate on the window.
    pub fn new(
        vb: Arc<VerifiedBasis>,
        r_action: RingAction,
        s_action: RingAction,
        shift: ShiftCharacter,
        window: Window,
    ) -> Result<Self> {
        let theta = vb.map();
        if r_action.ring().as_ref() != theta.source().as_ref()
            || s_action.ring().as_ref() != theta.target().as_ref()
        {
            return Err(Error::RingMismatch {
                expected: format!("{} -> {}", theta.source().name(), theta.target().name()),
                found: format!("{} -> {}", r_action.ring().name(), s_action.ring().name()),
            });
        }
        if r_action.group() != s_action.group() {
            return Err(Error::GroupMismatch(
                "ring actions by different groups".into(),
            ));
        }
        let dualizing = dualizing_module(&vb, Some((&s_action, &r_action)), &shift, window)?;
        let comparison = dualizing.comparison()?.clone();
        let iota = vb.unit_coords();
        let sigma_rw = comparison
            .sigma
            .iter()
            .map(|s| vb.rewrite(s))
            .collect::<Result<_>>()?;
        Ok(Connected {
            group: r_action.group().clone(),
            vb,
            r_action,
            s_action,
            shift,
            dualizing,
            comparison,
            iota,
            sigma_rw,
        })
    }

    /// No group: trivial actions of the trivial group.
    pub fn untwisted(vb: Arc<VerifiedBasis>, shift: i64, window: Window) -> Result<Self> {
        let g = Arc::new(FiniteGroup::trivial());
        let r = RingAction::trivial(g.clone(), vb.map().source().clone());
        let s = RingAction::trivial(g.clone(), vb.map().target().clone());
        let sc = ShiftCharacter {
            shift,
            character: Character::trivial(g),
        };
        Connected::new(vb, r, s, sc, window)
    }

    pub fn basis(&self) -> &Arc<VerifiedBasis> {
        &self.vb
    }

    pub fn map(&self) -> &RingMap {
        self.vb.map()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn r_action(&self) -> &RingAction {
        &self.r_action
    }

    pub fn s_action(&self) -> &RingAction {
        &self.s_action
    }

    pub fn shift(&self) -> &ShiftCharacter {
        &self.shift
    }

    pub fn dualizing(&self) -> &DualizingModule {
        &self.dualizing
    }

    pub fn comparison(&self) -> &Comparison {
        &self.comparison
    }

    fn nb(&self) -> usize {
        self.vb.len()
    }

    fn twist_on<'a>(
        &self,
        m: &'a PresentedModule,
        action: &RingAction,
    ) -> Result<Option<&'a ModuleTwist>> {
        match m.twist() {
            None => Ok(None),
            Some(t) if &t.action == action => Ok(Some(t)),
            Some(_) => Err(Error::Compatibility(
                "module's ring action does not match the change-of-rings data".into(),
            )),
        }
    }

    fn check_ring(&self, m: &PresentedModule, on_source: bool) -> Result<()> {
        let expected = if on_source {
            self.map().source()
        } else {
            self.map().target()
        };
        if m.ring() != expected {
            return Err(Error::RingMismatch {
                expected: expected.name().into(),
                found: m.ring().name().into(),
            });
        }
        Ok(())
    }

    fn push(&self, x: &FreeElement) -> FreeElement {
        push_through(self.map(), x)
    }

    /// `theta_* M = S (x)_R M`, with diagonal group action.
    pub fn extend(&self, m: &PresentedModule) -> Result<PresentedModule> {
        self.twist_on(m, &self.r_action)?;
        extend_twisted(self.map(), &self.s_action, m)
    }

    pub fn extend_map(
        &self,
        f: &ModuleMorphism,
        src: &PresentedModule,
        dst: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let images = f.images().iter().map(|x| self.push(x)).collect();
        ModuleMorphism::new(src.clone(), dst.clone(), f.degree(), images)
    }

    /// `theta^* N`: `N` as an `R`-module, `b . (s_i n_j) = (b s_i)(b n_j)`.
    pub fn restrict(&self, n: &PresentedModule) -> Result<PresentedModule> {
        self.twist_on(n, &self.s_action)?;
        restrict_twisted_scalars(&self.vb, &self.r_action, n)
    }

    pub fn restrict_map(
        &self,
        f: &ModuleMorphism,
        src: &PresentedModule,
        dst: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let mut images = Vec::with_capacity(src.ngens());
        for img in f.images() {
            for s in self.vb.basis() {
                let moved: FreeElement = img.iter().map(|p| s * p).collect();
                images.push(self.vb.rewrite_free(&moved)?);
            }
        }
        ModuleMorphism::new(src.clone(), dst.clone(), f.degree(), images)
    }

    /// `theta_! M = Hom_R(S, M)`, computed as `D (x)_R M`.
    pub fn coextend(&self, m: &PresentedModule) -> Result<PresentedModule> {
        self.check_ring(m, true)?;
        let twist = self.twist_on(m, &self.r_action)?;
        let d = &self.dualizing.underlying;
        let s = self.map().target();
        let nv = s.nvars();
        let (nb, ng) = (self.nb(), m.ngens());
        let total = nb * ng;
        let mut degrees = Vec::with_capacity(total);
        for e in d.gen_degrees() {
            for g in m.gen_degrees() {
                degrees.push(e + g);
            }
        }
        let mut relations = Vec::new();
        for rel in m.relations() {
            for i in 0..nb {
                let mut row = vec![Poly::zero(nv); total];
                for (j, p) in rel.iter().enumerate() {
                    row[i * ng + j] = self.map().apply(p);
                }
                relations.push(row);
            }
        }
        for rel in d.relations() {
            for j in 0..ng {
                let mut row = vec![Poly::zero(nv); total];
                for (l, p) in rel.iter().enumerate() {
                    row[l * ng + j] = p.clone();
                }
                relations.push(row);
            }
        }
        let out = PresentedModule::new(s.clone(), degrees, relations)?;
        let Some(t) = twist else { return Ok(out) };
        let dt = d.twist().expect("dualizing module carries the group");
        let ga = self
            .group
            .elements()
            .map(|b| {
                (0..total)
                    .map(|idx| {
                        let (i, j) = (idx / ng, idx % ng);
                        let mut img = vec![Poly::zero(nv); total];
                        for (l, dp) in dt.gen_action[b][i].iter().enumerate() {
                            if dp.is_zero() {
                                continue;
                            }
                            for (k, mp) in t.gen_action[b][j].iter().enumerate() {
                                if !mp.is_zero() {
                                    img[l * ng + k] =
                                        &img[l * ng + k] + &(dp * &self.map().apply(mp));
                                }
                            }
                        }
                        img
                    })
                    .collect()
            })
            .collect();
        out.with_twist(self.s_action.clone(), ga)
    }

    pub fn coextend_map(
        &self,
        f: &ModuleMorphism,
        src: &PresentedModule,
        dst: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nv = self.map().target().nvars();
        let (ng, ng2) = (f.source().ngens(), f.target().ngens());
        let images = (0..self.nb() * ng)
            .map(|idx| {
                let (i, j) = (idx / ng, idx % ng);
                let mut img = vec![Poly::zero(nv); self.nb() * ng2];
                for (k, p) in f.images()[j].iter().enumerate() {
                    img[i * ng2 + k] = self.map().apply(p);
                }
                img
            })
            .collect();
        ModuleMorphism::new(src.clone(), dst.clone(), f.degree(), images)
    }

    fn shifted(&self, n: &PresentedModule, k: i64) -> Result<PresentedModule> {
        self.check_ring(n, false)?;
        self.twist_on(n, &self.s_action)?;
        let out = n.shift(k);
        match n.twist() {
            Some(_) => out.twist_by_character(&self.shift.character),
            None => Ok(out),
        }
    }

    /// `theta^dagger N = D (x)_S N`, through `D = Sigma^shift (chi (x) S)`.
    pub fn dagger(&self, n: &PresentedModule) -> Result<PresentedModule> {
        self.restrict(&self.shifted(n, self.shift.shift)?)
    }

    /// `theta^! N = Hom_S(D, N)`, through `D = Sigma^shift (chi (x) S)`.
    pub fn shriek(&self, n: &PresentedModule) -> Result<PresentedModule> {
        self.restrict(&self.shifted(n, -self.shift.shift)?)
    }

    /// Shifts and twists commute with the images, so both outer functors
    /// act on maps as restriction does.
    pub fn dagger_map(
        &self,
        f: &ModuleMorphism,
        src: &PresentedModule,
        dst: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        self.restrict_map(f, src, dst)
    }

    pub fn shriek_map(
        &self,
        f: &ModuleMorphism,
        src: &PresentedModule,
        dst: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        self.restrict_map(f, src, dst)
    }

    /// `D (x)_S N` presented over `S`, before restriction to `R`.
    pub fn dualizing_tensor(&self, n: &PresentedModule) -> Result<PresentedModule> {
        self.check_ring(n, false)?;
        let twist = self.twist_on(n, &self.s_action)?;
        let d = &self.dualizing.underlying;
        let nv = self.map().target().nvars();
        let (nb, ng) = (self.nb(), n.ngens());
        let total = nb * ng;
        let mut degrees = Vec::with_capacity(total);
        for e in d.gen_degrees() {
            for g in n.gen_degrees() {
                degrees.push(e + g);
            }
        }
        let mut relations = Vec::new();
        for rel in n.relations() {
            for i in 0..nb {
                let mut row = vec![Poly::zero(nv); total];
                for (j, p) in rel.iter().enumerate() {
                    row[i * ng + j] = p.clone();
                }
                relations.push(row);
            }
        }
        for rel in d.relations() {
            for j in 0..ng {
                let mut row = vec![Poly::zero(nv); total];
                for (l, p) in rel.iter().enumerate() {
                    row[l * ng + j] = p.clone();
                }
                relations.push(row);
            }
        }
        let out = PresentedModule::new(self.map().target().clone(), degrees, relations)?;
        let Some(t) = twist else { return Ok(out) };
        let dt = d.twist().expect("dualizing module carries the group");
        let ga = self
            .group
            .elements()
            .map(|b| {
                (0..total)
                    .map(|idx| {
                        let (i, j) = (idx / ng, idx % ng);
                        let mut img = vec![Poly::zero(nv); total];
                        for (l, dp) in dt.gen_action[b][i].iter().enumerate() {
                            for (k, np) in t.gen_action[b][j].iter().enumerate() {
                                if !dp.is_zero() && !np.is_zero() {
                                    img[l * ng + k] = &img[l * ng + k] + &(dp * np);
                                }
                            }
                        }
                        img
                    })
                    .collect()
            })
            .collect();
        out.with_twist(self.s_action.clone(), ga)
    }

    /// `D (x)_S N -> Sigma^shift (chi (x) N)`, `s_i^* (x) n_j |-> sigma_i n_j`.
    pub fn dagger_comparison(&self, n: &PresentedModule) -> Result<ModuleMorphism> {
        let src = self.dualizing_tensor(n)?;
        let dst = self.shifted(n, self.shift.shift)?;
        let ng = n.ngens();
        let nv = self.map().target().nvars();
        let images = (0..src.ngens())
            .map(|idx| free_basis(ng, nv, idx % ng, self.comparison.sigma[idx / ng].clone()))
            .collect();
        ModuleMorphism::new(src, dst, 0, images)
    }

    /// Checks both routes to `theta^dagger N` agree: the comparison map is
    /// well defined, equivariant and invertible in every window degree.
    pub fn check_dagger(&self, n: &PresentedModule, window: Window) -> ComparisonCheck {
        let name = "theta_dagger: D (x)_S N vs shift";
        let f = match self.dagger_comparison(n) {
            Ok(f) => f,
            Err(e) => return ComparisonCheck::failed(name, e.to_string()),
        };
        match f.equivariance_defect() {
            Ok(None) => {}
            Ok(Some((a, i))) => {
                return ComparisonCheck::failed(
                    name,
                    format!("not equivariant: element {a} on generator {i}"),
                )
            }
            Err(e) => return ComparisonCheck::failed(name, e.to_string()),
        }
        ComparisonCheck::from_matrices(name, window.degrees().map(|d| (d, f.matrix_at(d))))
    }

    /// `Hom_S(D, N)_t -> N_{t + shift}`, `phi |-> phi(u)`, on every degree
    /// `t` whose Hom system fits in the window.
    pub fn check_shriek(&self, n: &PresentedModule, window: Window) -> ComparisonCheck {
        let name = "theta_shriek_upper: Hom_S(D, N) vs shift";
        let d = self.dualizing.underlying.untwisted();
        let nn = n.untwisted();
        let u = &self.comparison.generator;
        let mut mats = Vec::new();
        let mut skipped = 0;
        for t in window.degrees() {
            let hom = match twisted_hom(&d, &nn, t, window) {
                Ok(h) => h,
                Err(Error::WindowTooSmall(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return ComparisonCheck::failed(name, e.to_string()),
            };
            let target = t + self.shift.shift;
            let cols: Vec<Vec<Q>> = hom
                .basis()
                .iter()
                .map(|phi| nn.coords(&phi.apply(u), target).expect("homogeneous"))
                .collect();
            mats.push((t, Matrix::from_cols(&cols, nn.dim(target))));
        }
        let mut check = ComparisonCheck::from_matrices(name, mats);
        if skipped > 0 {
            check.note = Some(format!(
                "{skipped} degrees need generators outside the window"
            ));
        }
        check
    }

    /// `(D (x)_R M)_n -> +_l M_{n + e_l}`, evaluating `s_i^* (x) m_j` on the
    /// basis of `S`: the direct model of `Hom_R(S, M)`.
    pub fn check_coextension(&self, m: &PresentedModule, window: Window) -> ComparisonCheck {
        let name = "theta_shriek_lower: D (x)_R M vs Hom_R(S, M)";
        let coext = match self.coextend(&m.untwisted()) {
            Ok(c) => c,
            Err(e) => return ComparisonCheck::failed(name, e.to_string()),
        };
        let (nb, ng) = (self.nb(), m.ngens());
        let mut mats = Vec::new();
        for n in window.degrees() {
            let rows: usize = self.vb.degrees().iter().map(|e| m.dim(n + e)).sum();
            let res = coext.descend_map(n, rows, |g, mono| {
                let (i, j) = (g / ng, g % ng);
                let sigma = Poly::term(Q::one(), mono.clone());
                let mut out = Vec::with_capacity(rows);
                for l in 0..nb {
                    let r = &self
                        .vb
                        .rewrite(&(&self.vb.basis()[l] * &sigma))
                        .expect("certified")[i];
                    let x = free_basis(ng, m.ring().nvars(), j, r.clone());
                    out.extend(m.coords(&x, n + self.vb.degrees()[l]).expect("homogeneous"));
                }
                out
            });
            match res {
                Ok(mat) => mats.push((n, mat)),
                Err(e) => return ComparisonCheck::failed(name, e.to_string()),
            }
        }
        ComparisonCheck::from_matrices(name, mats)
    }

    /// `(S (x)_R M)_n -> +_i M_{n - e_i}`, `sigma (x) m_j |-> (s_i^* |-> s_i^*(sigma) m_j)`:
    /// the direct model of `Hom_R(D, M)`.
    pub fn check_extension(&self, m: &PresentedModule, window: Window) -> ComparisonCheck {
        let name = "theta_lower_star: S (x)_R M vs Hom_R(D, M)";
        let ext = match self.extend(&m.untwisted()) {
            Ok(c) => c,
            Err(e) => return ComparisonCheck::failed(name, e.to_string()),
        };
        let (nb, ng) = (self.nb(), m.ngens());
        let mut mats = Vec::new();
        for n in window.degrees() {
            let rows: usize = self.vb.degrees().iter().map(|e| m.dim(n - e)).sum();
            let res = ext.descend_map(n, rows, |j, mono| {
                let sigma = Poly::term(Q::one(), mono.clone());
                let rw = self.vb.rewrite(&sigma).expect("certified");
                let mut out = Vec::with_capacity(rows);
                for i in 0..nb {
                    let x = free_basis(ng, m.ring().nvars(), j, rw[i].clone());
                    out.extend(m.coords(&x, n - self.vb.degrees()[i]).expect("homogeneous"));
                }
                out
            });
            match res {
                Ok(mat) => mats.push((n, mat)),
                Err(e) => return ComparisonCheck::failed(name, e.to_string()),
            }
        }
        ComparisonCheck::from_matrices(name, mats)
    }

    // Units and counits. Each takes the modules it maps between, already
    // constructed, so that composites can share them.

    /// `N -> theta_* theta^dagger N`, `n_j |-> sum_i s_i (x) s_i^* n_j`.
    pub fn dagger_unit(
        &self,
        n: &PresentedModule,
        tdn: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let nv = self.map().target().nvars();
        let images = (0..n.ngens())
            .map(|j| {
                let mut img = vec![Poly::zero(nv); tdn.ngens()];
                for l in 0..nb {
                    let mut acc = Poly::zero(nv);
                    for i in 0..nb {
                        acc =
                            &acc + &(&self.vb.basis()[i] * &self.map().apply(&self.sigma_rw[i][l]));
                    }
                    img[j * nb + l] = acc;
                }
                img
            })
            .collect();
        ModuleMorphism::new(n.clone(), tdn.clone(), 0, images)
    }

    /// `theta^dagger theta_* M -> M`, `s_i u (x) m_j |-> u(s_i) m_j`.
    pub fn dagger_counit(
        &self,
        m: &PresentedModule,
        dtm: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let nv = m.ring().nvars();
        let images = (0..dtm.ngens())
            .map(|idx| {
                free_basis(
                    m.ngens(),
                    nv,
                    idx / nb,
                    self.comparison.u_values[idx % nb].clone(),
                )
            })
            .collect();
        ModuleMorphism::new(dtm.clone(), m.clone(), 0, images)
    }

    /// `M -> theta^* theta_* M`, `m_j |-> 1 (x) m_j`.
    pub fn extension_unit(
        &self,
        m: &PresentedModule,
        rtm: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let nv = m.ring().nvars();
        let images = (0..m.ngens())
            .map(|j| {
                let mut img = vec![Poly::zero(nv); rtm.ngens()];
                for i in 0..nb {
                    img[j * nb + i] = self.iota[i].clone();
                }
                img
            })
            .collect();
        ModuleMorphism::new(m.clone(), rtm.clone(), 0, images)
    }

    /// `theta_* theta^* N -> N`, `s_i n_j |-> s_i n_j`.
    pub fn extension_counit(
        &self,
        n: &PresentedModule,
        trn: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let nv = n.ring().nvars();
        let images = (0..trn.ngens())
            .map(|idx| free_basis(n.ngens(), nv, idx / nb, self.vb.basis()[idx % nb].clone()))
            .collect();
        ModuleMorphism::new(trn.clone(), n.clone(), 0, images)
    }

    /// `N -> theta_! theta^* N`, `n_j |-> sum_i s_i^* (x) s_i n_j`.
    pub fn restriction_unit(
        &self,
        n: &PresentedModule,
        crn: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let ng = n.ngens();
        let nv = n.ring().nvars();
        let images = (0..ng)
            .map(|j| {
                let mut img = vec![Poly::zero(nv); crn.ngens()];
                for i in 0..nb {
                    img[i * (ng * nb) + j * nb + i] = Poly::one(nv);
                }
                img
            })
            .collect();
        ModuleMorphism::new(n.clone(), crn.clone(), 0, images)
    }

    /// `theta^* theta_! M -> M`, `s_l (s_i^* (x) m_j) |-> s_i^*(s_l) m_j`.
    pub fn restriction_counit(
        &self,
        m: &PresentedModule,
        rcm: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let ng = m.ngens();
        let nv = m.ring().nvars();
        let images = (0..rcm.ngens())
            .map(|idx| {
                let (ij, l) = (idx / nb, idx % nb);
                let (i, j) = (ij / ng, ij % ng);
                let c = if i == l {
                    Poly::one(nv)
                } else {
                    Poly::zero(nv)
                };
                free_basis(ng, nv, j, c)
            })
            .collect();
        ModuleMorphism::new(rcm.clone(), m.clone(), 0, images)
    }

    /// `M -> theta^! theta_! M`, `m_j |-> (phi: u |-> u (x) m_j)`.
    pub fn coextension_unit(
        &self,
        m: &PresentedModule,
        scm: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let ng = m.ngens();
        let nv = m.ring().nvars();
        let images = (0..ng)
            .map(|j| {
                let mut img = vec![Poly::zero(nv); scm.ngens()];
                for i in 0..nb {
                    for l in 0..nb {
                        img[(i * ng + j) * nb + l] = &self.comparison.u_values[i] * &self.iota[l];
                    }
                }
                img
            })
            .collect();
        ModuleMorphism::new(m.clone(), scm.clone(), 0, images)
    }

    /// `theta_! theta^! N -> N`, `s_i^* (x) phi |-> phi(s_i^*) = sigma_i phi(u)`.
    pub fn coextension_counit(
        &self,
        n: &PresentedModule,
        csn: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        let nb = self.nb();
        let ng = n.ngens();
        let nv = n.ring().nvars();
        let images = (0..csn.ngens())
            .map(|idx| {
                let (i, jl) = (idx / (ng * nb), idx % (ng * nb));
                let (j, l) = (jl / nb, jl % nb);
                free_basis(ng, nv, j, &self.vb.basis()[l] * &self.comparison.sigma[i])
            })
            .collect();
        ModuleMorphism::new(csn.clone(), n.clone(), 0, images)
    }
}

fn push_through(theta: &RingMap, x: &FreeElement) -> FreeElement {
    x.iter().map(|p| theta.apply(p)).collect()
}

/// `S (x)_R M` with `b . (s (x) m) = (b s) (x) (i(b) m)` when `M` carries
/// an action of `B` through `i`; `s_action` is the action of `B` on `S`.
pub fn extend_twisted(
    theta: &RingMap,
    s_action: &RingAction,
    m: &PresentedModule,
) -> Result<PresentedModule> {
    if m.ring() != theta.source() {
        return Err(Error::RingMismatch {
            expected: theta.source().name().into(),
            found: m.ring().name().into(),
        });
    }
    let relations = m
        .relations()
        .iter()
        .map(|r| push_through(theta, r))
        .collect();
    let out = PresentedModule::new(theta.target().clone(), m.gen_degrees().to_vec(), relations)?;
    match m.twist() {
        None => Ok(out),
        Some(t) => {
            if t.action.group() != s_action.group() {
                return Err(Error::GroupMismatch(
                    "module and target ring are acted on by different groups".into(),
                ));
            }
            let ga = t
                .gen_action
                .iter()
                .map(|imgs| imgs.iter().map(|x| push_through(theta, x)).collect())
                .collect();
            out.with_twist(s_action.clone(), ga)
        }
    }
}

/// `N` regarded as an `R`-module on generators `s_i n_j`; a group action on
/// `N` becomes `b . (s_i n_j) = (b s_i)(b n_j)` over `r_action`.
pub fn restrict_twisted_scalars(
    vb: &VerifiedBasis,
    r_action: &RingAction,
    n: &PresentedModule,
) -> Result<PresentedModule> {
    let out = restrict_scalars(vb, n)?;
    let Some(t) = n.twist() else { return Ok(out) };
    if t.action.group() != r_action.group() {
        return Err(Error::GroupMismatch(
            "module and source ring are acted on by different groups".into(),
        ));
    }
    let group = r_action.group().clone();
    let mut ga = Vec::with_capacity(group.order());
    for b in group.elements() {
        let mut imgs = Vec::with_capacity(out.ngens());
        for j in 0..n.ngens() {
            for s in vb.basis() {
                let bs = t.action.apply(b, s);
                let moved: FreeElement = t.gen_action[b][j].iter().map(|p| &bs * p).collect();
                imgs.push(vb.rewrite_free(&moved)?);
            }
        }
        ga.push(imgs);
    }
    out.with_twist(r_action.clone(), ga)
}
