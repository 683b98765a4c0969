//! Twisted group rings `R[A]`, semilinear modules and change of groups
//! with coefficients.
//!
//! A module over `R[A]` is a [`PresentedModule`] carrying a [`ModuleTwist`]
//! whose ring action is an action of `A` on `R`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedRing, ModuleMorphism, PresentedModule, RingMap, VerifiedBasis, Window};
use crate::groups::{
    coinduce_group_module, induce_group_module, Character, FiniteGroup, GroupAlgebraModule,
    GroupHom,
};
use crate::linalg::{Matrix, Q};
use crate::poly::{free_basis, Poly};

/// Action of a finite group on a graded ring by graded automorphisms,
/// specified by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAction {
    group: Arc<FiniteGroup>,
    ring: Arc<GradedRing>,
    images: Vec<Vec<Poly>>,
}

impl RingAction {
    pub fn new(
        group: Arc<FiniteGroup>,
        ring: Arc<GradedRing>,
        images: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::InvalidRing(format!(
                "ring action given for {} elements",
                images.len()
            )));
        }
        for (a, imgs) in images.iter().enumerate() {
            if imgs.len() != ring.nvars() {
                return Err(Error::InvalidRing(format!(
                    "{} moves {} generators",
                    group.name(a),
                    imgs.len()
                )));
            }
            for (v, img) in imgs.iter().enumerate() {
                if ring.degree_of(img)?.is_some_and(|d| d != ring.degrees()[v]) || img.is_zero() {
                    return Err(Error::InvalidRing(format!(
                        "{} sends {} to {}, which is not of degree {}",
                        group.name(a),
                        ring.labels()[v],
                        ring.format(img),
                        ring.degrees()[v]
                    )));
                }
            }
        }
        let action = RingAction {
            group,
            ring,
            images,
        };
        let g = &action.group;
        for v in 0..action.ring.nvars() {
            let x = action.ring.var(v);
            if action.apply(g.identity(), &x) != x {
                return Err(Error::InvalidRing("identity acts non-trivially".into()));
            }
            for a in g.elements() {
                for b in g.elements() {
                    if action.apply(a, &action.apply(b, &x)) != action.apply(g.mul(a, b), &x) {
                        return Err(Error::InvalidRing(format!(
                            "action on {} violates the group law at ({}, {})",
                            action.ring.labels()[v],
                            g.name(a),
                            g.name(b)
                        )));
                    }
                }
            }
        }
        Ok(action)
    }

    pub fn trivial(group: Arc<FiniteGroup>, ring: Arc<GradedRing>) -> Self {
        let ident: Vec<Poly> = (0..ring.nvars()).map(|v| ring.var(v)).collect();
        RingAction {
            images: vec![ident; group.order()],
            group,
            ring,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn images(&self) -> &[Vec<Poly>] {
        &self.images
    }

    pub fn apply(&self, a: usize, p: &Poly) -> Poly {
        p.substitute(&self.images[a], self.ring.nvars())
    }

    /// Action of the source group through a homomorphism into this group.
    pub fn pullback(&self, h: &GroupHom) -> RingAction {
        let images = h
            .source()
            .elements()
            .map(|b| self.images[h.apply(b)].clone())
            .collect();
        RingAction {
            group: h.source().clone(),
            ring: self.ring.clone(),
            images,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.images
            .iter()
            .all(|imgs| imgs.iter().enumerate().all(|(v, p)| *p == self.ring.var(v)))
    }

    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        for a in self.group.elements() {
            for v in 0..self.ring.nvars() {
                let x = self.ring.var(v);
                if self.images[a][v] != x {
                    out.push(format!(
                        "{}: {} ↦ {}",
                        self.group.name(a),
                        self.ring.labels()[v],
                        self.ring.format(&self.images[a][v])
                    ));
                }
            }
        }
        out
    }
}

/// `R[A]`: a graded ring with a finite group acting on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedRing {
    pub base: Arc<GradedRing>,
    pub group: Arc<FiniteGroup>,
    pub action: RingAction,
}

impl TwistedRing {
    pub fn new(action: RingAction) -> Self {
        TwistedRing {
            base: action.ring().clone(),
            group: action.group().clone(),
            action,
        }
    }

    /// The rank-one free module `R[A]`: generators `e_a` in degree 0 permuted
    /// by left multiplication.
    pub fn free_rank_one(&self) -> PresentedModule {
        let n = self.group.order();
        let nv = self.base.nvars();
        let gen_action = self
            .group
            .elements()
            .map(|g| {
                (0..n)
                    .map(|a| free_basis(n, nv, self.group.mul(g, a), Poly::one(nv)))
                    .collect()
            })
            .collect();
        PresentedModule::free(self.base.clone(), vec![0; n])
            .with_twist(self.action.clone(), gen_action)
            .expect("regular module is a valid twisted module")
    }
}

/// Degree shift and orientation character of the tangent representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCharacter {
    pub shift: i64,
    pub character: Character,
}

/// `theta = (theta_e, i)`: a ring map `R -> S` and a group map `B -> A`
/// with compatible actions, plus the tangent data.
#[derive(Clone, Debug)]
pub struct ChangeData {
    pub ring_map: RingMap,
    pub group_hom: GroupHom,
    pub source_twist: TwistedRing,
    pub target_twist: TwistedRing,
    pub shift: ShiftCharacter,
}

impl ChangeData {
    pub fn new(
        ring_map: RingMap,
        group_hom: GroupHom,
        source_twist: TwistedRing,
        target_twist: TwistedRing,
        shift: ShiftCharacter,
    ) -> Result<Self> {
        if source_twist.base.as_ref() != ring_map.source().as_ref() {
            return Err(Error::RingMismatch {
                expected: ring_map.source().name().into(),
                found: source_twist.base.name().into(),
            });
        }
        if target_twist.base.as_ref() != ring_map.target().as_ref() {
            return Err(Error::RingMismatch {
                expected: ring_map.target().name().into(),
                found: target_twist.base.name().into(),
            });
        }
        if group_hom.source().as_ref() != target_twist.group.as_ref() {
            return Err(Error::GroupMismatch(
                "group map source is not the target-side group".into(),
            ));
        }
        if group_hom.target().as_ref() != source_twist.group.as_ref() {
            return Err(Error::GroupMismatch(
                "group map target is not the source-side group".into(),
            ));
        }
        if shift.character.group().as_ref() != target_twist.group.as_ref() {
            return Err(Error::GroupMismatch(
                "orientation character lives on the wrong group".into(),
            ));
        }
        let cd = ChangeData {
            ring_map,
            group_hom,
            source_twist,
            target_twist,
            shift,
        };
        cd.check_compatibility()?;
        Ok(cd)
    }

    /// `theta_e(i(b) . r) = b . theta_e(r)` on every generator `r` of `R`.
    pub fn check_compatibility(&self) -> Result<()> {
        let r = self.ring_map.source();
        let b_group = &self.target_twist.group;
        for b in b_group.elements() {
            let a = self.group_hom.apply(b);
            for v in 0..r.nvars() {
                let x = r.var(v);
                let lhs = self.ring_map.apply(&self.source_twist.action.apply(a, &x));
                let rhs = self.target_twist.action.apply(b, &self.ring_map.apply(&x));
                if lhs != rhs {
                    let s = self.ring_map.target();
                    return Err(Error::Compatibility(format!(
                        "theta({} . {}) = {} but {} . theta({}) = {}",
                        self.source_twist.group.name(a),
                        r.labels()[v],
                        s.format(&lhs),
                        b_group.name(b),
                        r.labels()[v],
                        s.format(&rhs)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The target-side group acting on `R` through the group map.
    pub fn restricted_action(&self) -> RingAction {
        self.source_twist.action.pullback(&self.group_hom)
    }
}

/// Basis of homogeneous module maps of one degree.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub degree: i64,
    /// Columns: concatenated image coordinates of the basis maps.
    coords: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.coords.cols()
    }

    pub fn basis(&self) -> Vec<ModuleMorphism> {
        (0..self.dim())
            .map(|j| self.morphism_from_coords(&self.coords.col(j)))
            .collect()
    }

    fn morphism_from_coords(&self, v: &[Q]) -> ModuleMorphism {
        let mut images = Vec::new();
        let mut k = 0;
        for &g in self.source.gen_degrees() {
            let n = g + self.degree;
            let d = self.target.dim(n);
            images.push(self.target.lift(&v[k..k + d], n));
            k += d;
        }
        ModuleMorphism::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            images,
        )
    }

    /// Coordinates of a map in this basis, or `None` if it is not in the span.
    pub fn coords_of(&self, f: &ModuleMorphism) -> Result<Option<Vec<Q>>> {
        if f.degree() != self.degree {
            return Ok(None);
        }
        let v = f.image_coords()?;
        if self.dim() == 0 {
            return Ok(if v.iter().all(Zero::is_zero) {
                Some(Vec::new())
            } else {
                None
            });
        }
        Ok(self.coords.solve(&v))
    }
}

/// Degree-`t` maps `M1 -> M2`: the solution space of the relation system,
/// cut down to `A`-equivariant maps by the averaging idempotent
/// `(a . phi)(x) = a . phi(a^{-1} x)` when both modules carry an action.
pub fn twisted_hom(
    m1: &PresentedModule,
    m2: &PresentedModule,
    t: i64,
    window: Window,
) -> Result<HomSpace> {
    if m1.ring() != m2.ring() {
        return Err(Error::RingMismatch {
            expected: m1.ring().name().into(),
            found: m2.ring().name().into(),
        });
    }
    for &g in m1.gen_degrees() {
        if !window.contains(g + t) {
            return Err(Error::WindowTooSmall(format!(
                "generator in degree {g} needs degree {} inside window {window}",
                g + t
            )));
        }
    }
    for &r in m1.relation_degrees() {
        if !window.contains(r + t) {
            return Err(Error::WindowTooSmall(format!(
                "relation in degree {r} needs degree {} inside window {window}",
                r + t
            )));
        }
    }
    let ring = m1.ring().clone();
    let block: Vec<usize> = m1.gen_degrees().iter().map(|g| m2.dim(g + t)).collect();
    let offsets: Vec<usize> = block
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let unknowns: usize = block.iter().sum();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (k, rel) in m1.relations().iter().enumerate() {
        let target_deg = m1.relation_degrees()[k] + t;
        let mut sys = Matrix::zeros(m2.dim(target_deg), unknowns);
        for (i, p) in rel.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let deg = m1.relation_degrees()[k] - m1.gen_degrees()[i];
            let mul = m2.mul_matrix(p, deg, m1.gen_degrees()[i] + t);
            for r in 0..mul.rows() {
                for c in 0..mul.cols() {
                    sys[(r, offsets[i] + c)] += mul[(r, c)].clone();
                }
            }
        }
        for r in 0..sys.rows() {
            rows.push(sys.row(r).to_vec());
        }
    }
    let system = Matrix::from_rows(rows, unknowns);
    let mut coords = system.kernel();
    let groups = (m1.group(), m2.group());
    if let (Some(g1), Some(g2)) = groups {
        if g1 != g2 {
            return Err(Error::GroupMismatch(
                "modules carry different groups".into(),
            ));
        }
        let group = g1.clone();
        let mut avg = Matrix::zeros(unknowns, coords.cols());
        for a in group.elements() {
            let ainv = group.inverse(a);
            for j in 0..coords.cols() {
                let phi = coords.col(j);
                for i in 0..m1.ngens() {
                    let n = m1.gen_degrees()[i] + t;
                    let x = m1.act(ainv, &m1.generator(i));
                    let mut val = vec![Q::zero(); m2.dim(n)];
                    for (l, p) in x.iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        let deg = m1.gen_degrees()[i] - m1.gen_degrees()[l];
                        let mul = m2.mul_matrix(p, deg, m1.gen_degrees()[l] + t);
                        let part = mul.mul_vec(&phi[offsets[l]..offsets[l] + block[l]]);
                        for (v, w) in val.iter_mut().zip(part) {
                            *v += w;
                        }
                    }
                    let moved = m2.group_matrix(a, n).mul_vec(&val);
                    for (r, w) in moved.into_iter().enumerate() {
                        avg[(offsets[i] + r, j)] += w;
                    }
                }
            }
        }
        let scale = Q::new(1.into(), (group.order() as i64).into());
        coords = avg.scale(&scale).column_space();
    } else if groups.0.is_some() != groups.1.is_some() {
        return Err(Error::Structural(
            "one module carries a group action and the other does not".into(),
        ));
    }
    let _ = ring;
    Ok(HomSpace {
        source: m1.clone(),
        target: m2.clone(),
        degree: t,
        coords,
    })
}

fn check_twisted_input(h: &GroupHom, a_action: &RingAction, n: &PresentedModule) -> Result<()> {
    if a_action.group().as_ref() != h.target().as_ref() {
        return Err(Error::GroupMismatch(
            "ring action is not by the target group".into(),
        ));
    }
    let twist = n.twist().ok_or_else(|| {
        Error::Structural("change of groups needs a module with a group action".into())
    })?;
    if twist.action != a_action.pullback(h) {
        return Err(Error::Compatibility(
            "module's ring action is not the restriction of the target-group action".into(),
        ));
    }
    Ok(())
}

/// `R A (x)_{R B} N`, presented on generators `(a, j)` at index `a * ng + j`.
///
/// `R` acts by `r . (a (x) n) = a (x) (a^{-1} r) n` and `A` by left
/// multiplication on the first factor. Relations are the images of the
/// relations of `N` in every coset slot and the balancing relations
/// `a i(b) (x) n_j = a (x) b n_j`.
pub fn induce_twisted(
    h: &GroupHom,
    a_action: &RingAction,
    n: &PresentedModule,
) -> Result<PresentedModule> {
    check_twisted_input(h, a_action, n)?;
    let a_group = h.target().clone();
    let b_group = h.source().clone();
    let twist = n.twist().expect("checked");
    let ring = n.ring().clone();
    let nv = ring.nvars();
    let ng = n.ngens();
    let total = a_group.order() * ng;
    let mut degrees = Vec::with_capacity(total);
    for _ in a_group.elements() {
        degrees.extend_from_slice(n.gen_degrees());
    }
    let mut relations = Vec::new();
    for a in a_group.elements() {
        for rel in n.relations() {
            let mut row = vec![Poly::zero(nv); total];
            for (j, p) in rel.iter().enumerate() {
                row[a * ng + j] = a_action.apply(a, p);
            }
            relations.push(row);
        }
        for b in b_group.elements() {
            let ab = a_group.mul(a, h.apply(b));
            for j in 0..ng {
                let mut row = vec![Poly::zero(nv); total];
                row[ab * ng + j] = &row[ab * ng + j] + &Poly::one(nv);
                for (k, p) in twist.gen_action[b][j].iter().enumerate() {
                    row[a * ng + k] = &row[a * ng + k] - &a_action.apply(a, p);
                }
                relations.push(row);
            }
        }
    }
    let gen_action = a_group
        .elements()
        .map(|g| {
            (0..total)
                .map(|idx| {
                    let (a, j) = (idx / ng, idx % ng);
                    free_basis(total, nv, a_group.mul(g, a) * ng + j, Poly::one(nv))
                })
                .collect()
        })
        .collect();
    PresentedModule::new(ring, degrees, relations)?.with_twist(a_action.clone(), gen_action)
}

/// `Hom_{R B}(R A, N)`, presented through the norm isomorphism with the
/// induced module: `Nm(a (x) n)(x) = sum_{i(b) = x a} b n`. The identification
/// is checked degreewise by [`verify_coinduction_lemma`].
pub fn coinduce_twisted(
    h: &GroupHom,
    a_action: &RingAction,
    n: &PresentedModule,
) -> Result<PresentedModule> {
    induce_twisted(h, a_action, n)
}

/// `i^*`: pull the ring and module actions back along the group map.
pub fn restrict_twisted(h: &GroupHom, m: &PresentedModule) -> Result<PresentedModule> {
    let twist = m.twist().ok_or_else(|| {
        Error::Structural("restriction needs a module with a group action".into())
    })?;
    if twist.action.group().as_ref() != h.target().as_ref() {
        return Err(Error::GroupMismatch(
            "module is not acted on by the target group".into(),
        ));
    }
    let action = twist.action.pullback(h);
    let gen_action = h
        .source()
        .elements()
        .map(|b| twist.gen_action[h.apply(b)].clone())
        .collect();
    m.untwisted().with_twist(action, gen_action)
}

/// Outcome of one degree of a windowed lemma check.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaDegree {
    pub degree: i64,
    pub presented_dim: usize,
    pub group_dim: usize,
    pub determinant: String,
    pub equivariant: bool,
    pub ring_linear: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub degrees: Vec<LemmaDegree>,
    pub pass: bool,
    pub first_failure: Option<i64>,
}

impl LemmaCheck {
    fn finish(name: &str, degrees: Vec<LemmaDegree>) -> Self {
        let first_failure = degrees
            .iter()
            .find(|d| {
                d.presented_dim != d.group_dim
                    || d.determinant == "0"
                    || !d.equivariant
                    || !d.ring_linear
            })
            .map(|d| d.degree);
        LemmaCheck {
            name: name.into(),
            degrees,
            pass: first_failure.is_none(),
            first_failure,
        }
    }
}

/// Coordinates in `N_n` of `p . e_j` for a monomial multiplier given as a
/// polynomial.
fn element_coords(n: &PresentedModule, p: &Poly, j: usize, deg: i64) -> Vec<Q> {
    let x = free_basis(n.ngens(), n.ring().nvars(), j, p.clone());
    n.coords(&x, deg).expect("homogeneous")
}

fn group_module_at(n: &PresentedModule, deg: i64) -> GroupAlgebraModule {
    n.group_module_at(deg).expect("twisted module")
}

/// Degreewise check that the presented `R A (x)_{R B} N` agrees with the
/// group-algebra induction `Q A (x)_{Q B} N_n`: equal dimensions, invertible
/// canonical map, `A`-equivariance.
pub fn verify_induction_lemma(
    h: &GroupHom,
    a_action: &RingAction,
    n: &PresentedModule,
    window: Window,
) -> Result<LemmaCheck> {
    let ind = induce_twisted(h, a_action, n)?;
    let a_group = h.target().clone();
    let ng = n.ngens();
    let mut out = Vec::new();
    for deg in window.degrees() {
        let nb = group_module_at(n, deg);
        let grp = induce_group_module(h, &nb)?;
        // m . (a, j)  |->  a (x) (a^{-1} m) n_j
        let map = ind.descend_map(deg, grp.module.dim(), |g, m| {
            let (a, j) = (g / ng, g % ng);
            let mono = Poly::term(Q::one(), m.clone());
            let moved = a_action.apply(a_group.inverse(a), &mono);
            grp.class_of(a, &element_coords(n, &moved, j, deg))
        })?;
        let square = map.rows() == map.cols();
        let det = if square { map.determinant() } else { Q::zero() };
        let equivariant = a_group
            .elements()
            .all(|a| map.mul(&ind.group_matrix(a, deg)) == grp.module.action(a).mul(&map));
        out.push(LemmaDegree {
            degree: deg,
            presented_dim: ind.dim(deg),
            group_dim: grp.module.dim(),
            determinant: crate::linalg::fmt_q(&det),
            equivariant,
            ring_linear: true,
        });
    }
    Ok(LemmaCheck::finish("induction", out))
}

/// The norm map `Nm_n` from the degree-`n` piece of the presented
/// coinduction to the kernel model `Hom_{Q B}(Q A, N_n)`.
pub fn norm_matrix(
    h: &GroupHom,
    a_action: &RingAction,
    n: &PresentedModule,
    coind: &PresentedModule,
    deg: i64,
) -> Result<(Matrix, crate::groups::CoinducedModule)> {
    let a_group = h.target().clone();
    let ng = n.ngens();
    let nb = group_module_at(n, deg);
    let grp = coinduce_group_module(h, &nb)?;
    let dim = grp.module.dim();
    let map = coind.descend_map(deg, dim, |g, m| {
        let (a, j) = (g / ng, g % ng);
        let mono = Poly::term(Q::one(), m.clone());
        let v = element_coords(n, &a_action.apply(a_group.inverse(a), &mono), j, deg);
        let values: Vec<Vec<Q>> = a_group
            .elements()
            .map(|x| {
                let mut acc = vec![Q::zero(); nb.dim()];
                for b in h.fiber(a_group.mul(x, a)) {
                    for (s, t) in acc.iter_mut().zip(nb.action(b).mul_vec(&v)) {
                        *s += t;
                    }
                }
                acc
            })
            .collect();
        grp.coords_of(&values)
            .expect("norm lands in the coinduced module")
    })?;
    Ok((map, grp))
}

/// Degreewise check that the presented coinduction agrees with the kernel
/// model `Hom_{Q B}(Q A, N_n)` through the norm map, which must be invertible,
/// `A`-equivariant, and intertwine the ring action `(r f)(x) = (x r) f(x)`.
pub fn verify_coinduction_lemma(
    h: &GroupHom,
    a_action: &RingAction,
    n: &PresentedModule,
    window: Window,
) -> Result<LemmaCheck> {
    let coind = coinduce_twisted(h, a_action, n)?;
    let a_group = h.target().clone();
    let ring = n.ring().clone();
    let mut out = Vec::new();
    let mut maps: BTreeMap<i64, (Matrix, crate::groups::CoinducedModule)> = BTreeMap::new();
    for deg in window.degrees() {
        maps.insert(deg, norm_matrix(h, a_action, n, &coind, deg)?);
    }
    for deg in window.degrees() {
        let (map, grp) = &maps[&deg];
        let square = map.rows() == map.cols();
        let det = if square { map.determinant() } else { Q::zero() };
        let equivariant = a_group
            .elements()
            .all(|a| map.mul(&coind.group_matrix(a, deg)) == grp.module.action(a).mul(map));
        let mut ring_linear = true;
        for v in 0..ring.nvars() {
            let d = ring.degrees()[v];
            let Some((map2, grp2)) = maps.get(&(deg + d)) else {
                continue;
            };
            let lhs = map2.mul(&coind.generator_matrix(v, deg));
            // (x . f)(y) = (y . x) f(y), computed on the kernel model.
            let cols: Vec<Vec<Q>> = (0..grp.module.dim())
                .map(|c| {
                    let e = crate::linalg::unit_vec(grp.module.dim(), c);
                    let values: Vec<Vec<Q>> = a_group
                        .elements()
                        .map(|y| {
                            let yx = a_action.apply(y, &ring.var(v));
                            n.mul_matrix(&yx, d, deg).mul_vec(&grp.value_at(&e, y))
                        })
                        .collect();
                    grp2.coords_of(&values).unwrap_or_default()
                })
                .collect();
            let rhs_ok = cols.iter().all(|c| c.len() == grp2.module.dim());
            if !rhs_ok || lhs != Matrix::from_cols(&cols, grp2.module.dim()).mul(map) {
                ring_linear = false;
            }
        }
        out.push(LemmaDegree {
            degree: deg,
            presented_dim: coind.dim(deg),
            group_dim: grp.module.dim(),
            determinant: crate::linalg::fmt_q(&det),
            equivariant,
            ring_linear,
        });
    }
    Ok(LemmaCheck::finish("coinduction", out))
}

/// `theta_*`: extension of scalars with the diagonal target-group action.
pub fn theta_lower_star(theta: &ChangeData, m: &PresentedModule) -> Result<PresentedModule> {
    let restricted = restrict_twisted(&theta.group_hom, m)?;
    crate::functors::connected::extend_twisted(
        &theta.ring_map,
        &theta.target_twist.action,
        &restricted,
    )
}

/// `theta^* = i_! theta_e^*`.
pub fn theta_upper_star(
    theta: &ChangeData,
    vb: Option<&VerifiedBasis>,
    n: &PresentedModule,
) -> Result<PresentedModule> {
    let vb = vb.ok_or_else(|| {
        Error::MissingCertificate(format!(
            "theta^* needs a verified basis of {} over {}",
            theta.ring_map.target().name(),
            theta.ring_map.source().name()
        ))
    })?;
    let res =
        crate::functors::connected::restrict_twisted_scalars(vb, &theta.restricted_action(), n)?;
    coinduce_twisted(&theta.group_hom, &theta.source_twist.action, &res)
}

/// `theta^dagger = i_* theta_e^dagger`, with `theta_e^dagger` the shift and
/// character twist followed by restriction of scalars.
pub fn theta_dagger(
    theta: &ChangeData,
    vb: Option<&VerifiedBasis>,
    n: &PresentedModule,
) -> Result<PresentedModule> {
    let vb = vb.ok_or_else(|| {
        Error::MissingCertificate(format!(
            "theta^dagger needs a verified basis of {} over {}",
            theta.ring_map.target().name(),
            theta.ring_map.source().name()
        ))
    })?;
    let shifted = n
        .shift(theta.shift.shift)
        .twist_by_character(&theta.shift.character)?;
    let res = crate::functors::connected::restrict_twisted_scalars(
        vb,
        &theta.restricted_action(),
        &shifted,
    )?;
    induce_twisted(&theta.group_hom, &theta.source_twist.action, &res)
}

/// Used by tests and reports: `1/|B|` as an exact rational.
pub fn inverse_order(g: &FiniteGroup) -> Q {
    Q::new(1.into(), (g.order() as i64).into())
}
