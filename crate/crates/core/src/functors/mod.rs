//! Functors as values, adjunctions with explicit units and counits, the
//! five-term adjoint string and the correspondence tables.

pub mod connected;
mod correspondence;
mod dualizing;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{ModuleMorphism, PresentedModule, VerifiedBasis, Window};
use crate::groups::GroupHom;
use crate::linalg::Q;
use crate::poly::{free_basis, Poly};
use crate::twisted::{induce_twisted, restrict_twisted, ChangeData, RingAction};

pub use connected::{
    extend_twisted, restrict_twisted_scalars, ComparisonCheck, Connected, DegreeComparison,
};
pub use correspondence::{correspondence, CorrespondenceTable, Model};
pub use dualizing::{
    dualizing_module, dualizing_presentation, Comparison, DualizingModule, DualizingSummary,
};

/// Which module category a functor starts or lands in: `R[A]`, `R[B]`
/// (the intermediate category) or `S[B]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Middle,
    Target,
}

type ApplyFn = dyn Fn(&PresentedModule) -> Result<PresentedModule> + Send + Sync;
type MapFn = dyn Fn(&ModuleMorphism, &PresentedModule, &PresentedModule) -> Result<ModuleMorphism>
    + Send
    + Sync;
type UnitFn = dyn Fn(&PresentedModule, &PresentedModule, &PresentedModule) -> Result<ModuleMorphism>
    + Send
    + Sync;

/// A functor between module categories: a name plus closures over its
/// certificates, acting on objects and on morphisms.
#[derive(Clone)]
pub struct Functor {
    name: String,
    from: Side,
    to: Side,
    apply: Arc<ApplyFn>,
    map: Arc<MapFn>,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Functor({}: {:?} -> {:?})",
            self.name, self.from, self.to
        )
    }
}

impl Functor {
    pub fn new(
        name: impl Into<String>,
        from: Side,
        to: Side,
        apply: impl Fn(&PresentedModule) -> Result<PresentedModule> + Send + Sync + 'static,
        map: impl Fn(&ModuleMorphism, &PresentedModule, &PresentedModule) -> Result<ModuleMorphism>
            + Send
            + Sync
            + 'static,
    ) -> Self {
        Functor {
            name: name.into(),
            from,
            to,
            apply: Arc::new(apply),
            map: Arc::new(map),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn from(&self) -> Side {
        self.from
    }

    pub fn to(&self) -> Side {
        self.to
    }

    pub fn apply(&self, m: &PresentedModule) -> Result<PresentedModule> {
        (self.apply)(m)
    }

    /// `F(f)`, given the already computed `F(source)` and `F(target)`.
    pub fn map_with(
        &self,
        f: &ModuleMorphism,
        src: &PresentedModule,
        dst: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        (self.map)(f, src, dst)
    }

    pub fn apply_morphism(&self, f: &ModuleMorphism) -> Result<ModuleMorphism> {
        let src = self.apply(f.source())?;
        let dst = self.apply(f.target())?;
        self.map_with(f, &src, &dst)
    }

    /// `next . self`.
    pub fn then(&self, next: &Functor, name: impl Into<String>) -> Functor {
        let (f, g) = (self.clone(), next.clone());
        let (f2, g2) = (self.clone(), next.clone());
        Functor::new(
            name,
            self.from,
            next.to,
            move |m| g.apply(&f.apply(m)?),
            move |phi, src, dst| {
                let mid = f2.apply_morphism(phi)?;
                g2.map_with(&mid, src, dst)
            },
        )
    }
}

/// `L -| R` with unit `X -> R L X` and counit `L R Y -> Y`.
#[derive(Clone)]
pub struct Adjunction {
    name: String,
    left: Functor,
    right: Functor,
    unit: Arc<UnitFn>,
    counit: Arc<UnitFn>,
}

impl fmt::Debug for Adjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Adjunction({} ⊣ {})", self.left.name, self.right.name)
    }
}

impl Adjunction {
    /// `unit(x, L x, R L x)` and `counit(y, R y, L R y)`.
    pub fn new(
        name: impl Into<String>,
        left: Functor,
        right: Functor,
        unit: impl Fn(&PresentedModule, &PresentedModule, &PresentedModule) -> Result<ModuleMorphism>
            + Send
            + Sync
            + 'static,
        counit: impl Fn(&PresentedModule, &PresentedModule, &PresentedModule) -> Result<ModuleMorphism>
            + Send
            + Sync
            + 'static,
    ) -> Self {
        Adjunction {
            name: name.into(),
            left,
            right,
            unit: Arc::new(unit),
            counit: Arc::new(counit),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left(&self) -> &Functor {
        &self.left
    }

    pub fn right(&self) -> &Functor {
        &self.right
    }

    pub fn unit_with(
        &self,
        x: &PresentedModule,
        lx: &PresentedModule,
        rlx: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        (self.unit)(x, lx, rlx)
    }

    pub fn counit_with(
        &self,
        y: &PresentedModule,
        ry: &PresentedModule,
        lry: &PresentedModule,
    ) -> Result<ModuleMorphism> {
        (self.counit)(y, ry, lry)
    }

    pub fn unit_at(&self, x: &PresentedModule) -> Result<ModuleMorphism> {
        let lx = self.left.apply(x)?;
        let rlx = self.right.apply(&lx)?;
        self.unit_with(x, &lx, &rlx)
    }

    pub fn counit_at(&self, y: &PresentedModule) -> Result<ModuleMorphism> {
        let ry = self.right.apply(y)?;
        let lry = self.left.apply(&ry)?;
        self.counit_with(y, &ry, &lry)
    }

    /// `L2 L1 -| R1 R2` from `L1 -| R1` (inner) and `L2 -| R2` (outer):
    /// unit `R1(eta2_{L1 X}) . eta1_X`, counit `eps2_Y . L2(eps1_{R2 Y})`.
    /// `left` and `right` must be the composites `L2 L1` and `R1 R2`.
    pub fn compose(
        inner: &Adjunction,
        outer: &Adjunction,
        name: impl Into<String>,
        left: Functor,
        right: Functor,
    ) -> Adjunction {
        let (i1, o1) = (inner.clone(), outer.clone());
        let (i2, o2) = (inner.clone(), outer.clone());
        Adjunction::new(
            name,
            left,
            right,
            move |x, lx, rlx| {
                let l1x = i1.left.apply(x)?;
                let r1l1x = i1.right.apply(&l1x)?;
                let eta1 = i1.unit_with(x, &l1x, &r1l1x)?;
                let r2lx = o1.right.apply(lx)?;
                let eta2 = o1.unit_with(&l1x, lx, &r2lx)?;
                let r1eta2 = i1.right.map_with(&eta2, &r1l1x, rlx)?;
                r1eta2.compose(&eta1)
            },
            move |y, ry, lry| {
                let r2y = o2.right.apply(y)?;
                let l2r2y = o2.left.apply(&r2y)?;
                let eps2 = o2.counit_with(y, &r2y, &l2r2y)?;
                let l1ry = i2.left.apply(ry)?;
                let eps1 = i2.counit_with(&r2y, ry, &l1ry)?;
                let l2eps1 = o2.left.map_with(&eps1, lry, &l2r2y)?;
                eps2.compose(&l2eps1)
            },
        )
    }

    /// Same functors with the unit multiplied by `factor`: a negative
    /// control for the triangle identities.
    pub fn with_scaled_unit(&self, factor: Q) -> Adjunction {
        let inner = self.clone();
        let counit = self.counit.clone();
        Adjunction {
            name: format!("{} (unit scaled by {factor})", self.name),
            left: self.left.clone(),
            right: self.right.clone(),
            unit: Arc::new(move |x, lx, rlx| Ok(inner.unit_with(x, lx, rlx)?.scale(&factor))),
            counit,
        }
    }
}

/// Names of the five functors in adjoint order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StringFunctor {
    ThetaDagger,
    ThetaLowerStar,
    ThetaUpperStar,
    ThetaShriekLower,
    ThetaShriekUpper,
}

impl StringFunctor {
    pub const ALL: [StringFunctor; 5] = [
        StringFunctor::ThetaDagger,
        StringFunctor::ThetaLowerStar,
        StringFunctor::ThetaUpperStar,
        StringFunctor::ThetaShriekLower,
        StringFunctor::ThetaShriekUpper,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            StringFunctor::ThetaDagger => "θ^†",
            StringFunctor::ThetaLowerStar => "θ_*",
            StringFunctor::ThetaUpperStar => "θ^*",
            StringFunctor::ThetaShriekLower => "θ_!",
            StringFunctor::ThetaShriekUpper => "θ^!",
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            StringFunctor::ThetaDagger => "theta_dagger",
            StringFunctor::ThetaLowerStar => "theta_lower_star",
            StringFunctor::ThetaUpperStar => "theta_upper_star",
            StringFunctor::ThetaShriekLower => "theta_shriek_lower",
            StringFunctor::ThetaShriekUpper => "theta_shriek_upper",
        }
    }

    pub fn index(self) -> usize {
        StringFunctor::ALL
            .iter()
            .position(|&f| f == self)
            .expect("listed")
    }

    pub fn parse(s: &str) -> Option<StringFunctor> {
        StringFunctor::ALL
            .into_iter()
            .find(|f| f.cli_name() == s || f.symbol() == s)
    }

    /// Category of the input: functors alternate between `S[B]` and `R[A]`.
    pub fn domain(self) -> Side {
        if self.index() % 2 == 0 {
            Side::Target
        } else {
            Side::Source
        }
    }
}

impl fmt::Display for StringFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `theta^dagger -| theta_* -| theta^* -| theta_! -| theta^!` for one
/// change of groups, with the four adjacent adjunctions.
pub struct AdjointString {
    change: ChangeData,
    connected: Arc<Connected>,
    functors: Vec<Functor>,
    pairs: Vec<Adjunction>,
    building_blocks: Vec<Adjunction>,
}

impl fmt::Debug for AdjointString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdjointString")
            .field("functors", &self.functors)
            .finish()
    }
}

fn induction_functor(name: &str, h: &GroupHom, a_action: &RingAction) -> Functor {
    let (h1, a1) = (h.clone(), a_action.clone());
    let a2 = a_action.clone();
    Functor::new(
        name,
        Side::Middle,
        Side::Source,
        move |n| induce_twisted(&h1, &a1, n),
        move |f, src, dst| {
            let (ng, ng2) = (f.source().ngens(), f.target().ngens());
            let nv = src.ring().nvars();
            let images = (0..src.ngens())
                .map(|idx| {
                    let (a, j) = (idx / ng, idx % ng);
                    let mut img = vec![Poly::zero(nv); dst.ngens()];
                    for (k, p) in f.images()[j].iter().enumerate() {
                        img[a * ng2 + k] = a2.apply(a, p);
                    }
                    img
                })
                .collect();
            ModuleMorphism::new(src.clone(), dst.clone(), f.degree(), images)
        },
    )
}

fn restriction_functor(h: &GroupHom) -> Functor {
    let h1 = h.clone();
    Functor::new(
        "ī^*",
        Side::Source,
        Side::Middle,
        move |m| restrict_twisted(&h1, m),
        |f, src, dst| {
            ModuleMorphism::new(src.clone(), dst.clone(), f.degree(), f.images().to_vec())
        },
    )
}

impl AdjointString {
    pub fn new(change: &ChangeData, vb: Arc<VerifiedBasis>, window: Window) -> Result<Self> {
        if vb.map().source() != change.ring_map.source()
            || vb.map().target() != change.ring_map.target()
        {
            return Err(Error::Structural(
                "basis certificate is for a different ring map".into(),
            ));
        }
        if vb.map().images() != change.ring_map.images() {
            return Err(Error::Structural(
                "basis certificate is for a different ring map".into(),
            ));
        }
        let connected = Arc::new(Connected::new(
            vb,
            change.restricted_action(),
            change.target_twist.action.clone(),
            change.shift.clone(),
            window,
        )?);
        Self::from_connected(change, connected)
    }

    /// Reuses an already validated connected part.
    pub fn from_connected(change: &ChangeData, connected: Arc<Connected>) -> Result<Self> {
        let h = change.group_hom.clone();
        let a_action = change.source_twist.action.clone();
        let b_group = h.source().clone();

        let ind = induction_functor("ī_*", &h, &a_action);
        let coind = induction_functor("ī_!", &h, &a_action);
        let resg = restriction_functor(&h);

        let c = connected.clone();
        let (c1, c2) = (c.clone(), c.clone());
        let t = Functor::new(
            "θ_e_*",
            Side::Middle,
            Side::Target,
            move |m| c1.extend(m),
            move |f, s, d| c2.extend_map(f, s, d),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let res = Functor::new(
            "θ_e^*",
            Side::Target,
            Side::Middle,
            move |m| c1.restrict(m),
            move |f, s, d| c2.restrict_map(f, s, d),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let coext = Functor::new(
            "θ_e_!",
            Side::Middle,
            Side::Target,
            move |m| c1.coextend(m),
            move |f, s, d| c2.coextend_map(f, s, d),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let dag = Functor::new(
            "θ_e^†",
            Side::Target,
            Side::Middle,
            move |m| c1.dagger(m),
            move |f, s, d| c2.dagger_map(f, s, d),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let shriek = Functor::new(
            "θ_e^!",
            Side::Target,
            Side::Middle,
            move |m| c1.shriek(m),
            move |f, s, d| c2.shriek_map(f, s, d),
        );

        let ind_resg = {
            let ident = h.target().identity();
            Adjunction::new(
                "ī_* ⊣ ī^*",
                ind.clone(),
                resg.clone(),
                move |x, _lx, rlx| {
                    let ng = x.ngens();
                    let nv = x.ring().nvars();
                    let images = (0..ng)
                        .map(|j| free_basis(rlx.ngens(), nv, ident * ng + j, Poly::one(nv)))
                        .collect();
                    ModuleMorphism::new(x.clone(), rlx.clone(), 0, images)
                },
                move |y, _ry, lry| {
                    let ng = y.ngens();
                    let twist = y
                        .twist()
                        .ok_or_else(|| Error::Structural("module without group action".into()))?;
                    let images = (0..lry.ngens())
                        .map(|idx| twist.gen_action[idx / ng][idx % ng].clone())
                        .collect();
                    ModuleMorphism::new(lry.clone(), y.clone(), 0, images)
                },
            )
        };
        let resg_coind = {
            let (h1, a1) = (h.clone(), a_action.clone());
            let h2 = h.clone();
            let order_b = b_group.order();
            Adjunction::new(
                "ī^* ⊣ ī_!",
                resg.clone(),
                coind.clone(),
                move |x, _lx, rlx| {
                    let a_group = h1.target();
                    let ng = x.ngens();
                    let nv = x.ring().nvars();
                    let twist = x
                        .twist()
                        .ok_or_else(|| Error::Structural("module without group action".into()))?;
                    let scale = Poly::constant(Q::new(1.into(), (order_b as i64).into()), nv);
                    let images = (0..ng)
                        .map(|j| {
                            let mut img = vec![Poly::zero(nv); rlx.ngens()];
                            for a in a_group.elements() {
                                let p = &twist.gen_action[a_group.inverse(a)][j];
                                for (k, c) in p.iter().enumerate() {
                                    img[a * ng + k] =
                                        &img[a * ng + k] + &(&a1.apply(a, c) * &scale);
                                }
                            }
                            img
                        })
                        .collect();
                    ModuleMorphism::new(x.clone(), rlx.clone(), 0, images)
                },
                move |y, _ry, lry| {
                    let ng = y.ngens();
                    let nv = y.ring().nvars();
                    let twist = y
                        .twist()
                        .ok_or_else(|| Error::Structural("module without group action".into()))?;
                    let images = (0..lry.ngens())
                        .map(|idx| {
                            let (a, j) = (idx / ng, idx % ng);
                            let mut img = vec![Poly::zero(nv); ng];
                            for b in h2.fiber(a) {
                                for (k, c) in twist.gen_action[b][j].iter().enumerate() {
                                    img[k] = &img[k] + c;
                                }
                            }
                            img
                        })
                        .collect();
                    ModuleMorphism::new(lry.clone(), y.clone(), 0, images)
                },
            )
        };
        let (c1, c2) = (c.clone(), c.clone());
        let dag_t = Adjunction::new(
            "θ_e^† ⊣ θ_e_*",
            dag.clone(),
            t.clone(),
            move |x, _lx, rlx| c1.dagger_unit(x, rlx),
            move |y, _ry, lry| c2.dagger_counit(y, lry),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let t_res = Adjunction::new(
            "θ_e_* ⊣ θ_e^*",
            t.clone(),
            res.clone(),
            move |x, _lx, rlx| c1.extension_unit(x, rlx),
            move |y, _ry, lry| c2.extension_counit(y, lry),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let res_coext = Adjunction::new(
            "θ_e^* ⊣ θ_e_!",
            res.clone(),
            coext.clone(),
            move |x, _lx, rlx| c1.restriction_unit(x, rlx),
            move |y, _ry, lry| c2.restriction_counit(y, lry),
        );
        let (c1, c2) = (c.clone(), c.clone());
        let coext_shriek = Adjunction::new(
            "θ_e_! ⊣ θ_e^!",
            coext.clone(),
            shriek.clone(),
            move |x, _lx, rlx| c1.coextension_unit(x, rlx),
            move |y, _ry, lry| c2.coextension_counit(y, lry),
        );

        use StringFunctor::*;
        let functors = vec![
            dag.then(&ind, ThetaDagger.symbol()),
            resg.then(&t, ThetaLowerStar.symbol()),
            res.then(&coind, ThetaUpperStar.symbol()),
            resg.then(&coext, ThetaShriekLower.symbol()),
            shriek.then(&coind, ThetaShriekUpper.symbol()),
        ];
        let pair_name =
            |k: usize| format!("{} ⊣ {}", StringFunctor::ALL[k], StringFunctor::ALL[k + 1]);
        let pairs = vec![
            Adjunction::compose(
                &dag_t,
                &ind_resg,
                pair_name(0),
                functors[0].clone(),
                functors[1].clone(),
            ),
            Adjunction::compose(
                &resg_coind,
                &t_res,
                pair_name(1),
                functors[1].clone(),
                functors[2].clone(),
            ),
            Adjunction::compose(
                &res_coext,
                &ind_resg,
                pair_name(2),
                functors[2].clone(),
                functors[3].clone(),
            ),
            Adjunction::compose(
                &resg_coind,
                &coext_shriek,
                pair_name(3),
                functors[3].clone(),
                functors[4].clone(),
            ),
        ];
        let building_blocks = vec![ind_resg, resg_coind, dag_t, t_res, res_coext, coext_shriek];
        Ok(AdjointString {
            change: change.clone(),
            connected,
            functors,
            pairs,
            building_blocks,
        })
    }

    pub fn change(&self) -> &ChangeData {
        &self.change
    }

    pub fn connected(&self) -> &Arc<Connected> {
        &self.connected
    }

    pub fn functor(&self, f: StringFunctor) -> &Functor {
        &self.functors[f.index()]
    }

    pub fn functors(&self) -> &[Functor] {
        &self.functors
    }

    /// The adjunction `F -| G` with `F` the given functor, for the first
    /// four functors.
    pub fn pair(&self, left: StringFunctor) -> Option<&Adjunction> {
        self.pairs.get(left.index())
    }

    pub fn pairs(&self) -> &[Adjunction] {
        &self.pairs
    }

    /// Group-level and connected adjunctions the string is built from.
    pub fn building_blocks(&self) -> &[Adjunction] {
        &self.building_blocks
    }
}

/// `(theta^dagger, theta_*, theta^*)`: induction after the shifted twist,
/// extension with diagonal action, coinduction after restriction.
pub fn assemble_general_triple(
    change: &ChangeData,
    vb: Arc<VerifiedBasis>,
    window: Window,
) -> Result<[Functor; 3]> {
    let s = AdjointString::new(change, vb, window)?;
    Ok([
        s.functor(StringFunctor::ThetaDagger).clone(),
        s.functor(StringFunctor::ThetaLowerStar).clone(),
        s.functor(StringFunctor::ThetaUpperStar).clone(),
    ])
}

/// `theta_!` without group actions: `D (x)_R M`.
pub fn theta_shriek_lower(
    vb: Arc<VerifiedBasis>,
    m: &PresentedModule,
    window: Window,
) -> Result<PresentedModule> {
    let shift = natural_shift(&vb);
    Connected::untwisted(vb, shift, window)?.coextend(m)
}

/// `theta^dagger` without group actions: `Sigma^shift N` over `R`.
pub fn theta_dagger_conn(
    vb: Arc<VerifiedBasis>,
    n: &PresentedModule,
    window: Window,
) -> Result<PresentedModule> {
    let shift = natural_shift(&vb);
    Connected::untwisted(vb, shift, window)?.dagger(n)
}

/// `theta^!` without group actions: `Sigma^{-shift} N` over `R`.
pub fn theta_shriek_upper(
    vb: Arc<VerifiedBasis>,
    n: &PresentedModule,
    window: Window,
) -> Result<PresentedModule> {
    let shift = natural_shift(&vb);
    Connected::untwisted(vb, shift, window)?.shriek(n)
}

/// Top degree of `Hom_R(S, R)`: the largest `-e_i`. When `D` is a shifted
/// copy of `S` its generator sits there.
pub fn natural_shift(vb: &VerifiedBasis) -> i64 {
    vb.degrees().iter().map(|e| -e).max().unwrap_or(0)
}
