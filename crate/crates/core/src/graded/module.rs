use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{Character, FiniteGroup, GroupAlgebraModule};
use crate::linalg::{unit_vec, Matrix, QuotientReducer, Q};
use crate::poly::{free_add, free_zero, FreeElement, Monomial, Poly};
use crate::twisted::RingAction;

use super::ring::GradedRing;
use super::Window;

/// Semilinear group action on a presented module: `a . (p e_i) = (a . p) (a . e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleTwist {
    pub action: RingAction,
    /// `gen_action[a][i]` is the image of generator `i` under element `a`.
    pub gen_action: Vec<Vec<FreeElement>>,
}

/// One graded piece of a presented module.
#[derive(Debug)]
pub struct DegreePiece {
    pub degree: i64,
    free_basis: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
    reducer: QuotientReducer,
}

impl DegreePiece {
    pub fn dim(&self) -> usize {
        self.reducer.dim()
    }

    pub fn ambient(&self) -> usize {
        self.free_basis.len()
    }

    pub fn reducer(&self) -> &QuotientReducer {
        &self.reducer
    }

    pub fn free_basis(&self) -> &[(usize, Monomial)] {
        &self.free_basis
    }

    pub fn position(&self, gen: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(gen, m.clone())).copied()
    }
}

/// Finitely presented graded module `(+_i Sigma^{g_i} R) / relations`,
/// optionally with a semilinear finite-group action.
///
/// Every graded piece is computed exactly on demand and memoised.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Arc<GradedRing>,
    gen_degrees: Vec<i64>,
    relations: Vec<FreeElement>,
    relation_degrees: Vec<i64>,
    twist: Option<ModuleTwist>,
    cache: Arc<Mutex<BTreeMap<i64, Arc<DegreePiece>>>>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.gen_degrees == other.gen_degrees
            && self.relations == other.relations
            && self.twist == other.twist
    }
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedModule")
            .field("ring", &self.ring.name())
            .field("gen_degrees", &self.gen_degrees)
            .field("relations", &self.relations.len())
            .field("twisted", &self.twist.is_some())
            .finish()
    }
}

impl PresentedModule {
    pub fn new(
        ring: Arc<GradedRing>,
        gen_degrees: Vec<i64>,
        relations: Vec<FreeElement>,
    ) -> Result<Self> {
        let mut kept = Vec::new();
        let mut relation_degrees = Vec::new();
        for (k, rel) in relations.into_iter().enumerate() {
            if rel.len() != gen_degrees.len() {
                return Err(Error::InvalidModule(format!(
                    "relation {k} has {} entries for {} generators",
                    rel.len(),
                    gen_degrees.len()
                )));
            }
            match free_degree(&ring, &gen_degrees, &rel)
                .map_err(|e| Error::Inhomogeneous(format!("relation {k}: {e}")))?
            {
                Some(d) => {
                    kept.push(rel);
                    relation_degrees.push(d);
                }
                None => {}
            }
        }
        Ok(PresentedModule {
            ring,
            gen_degrees,
            relations: kept,
            relation_degrees,
            twist: None,
            cache: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    pub fn free(ring: Arc<GradedRing>, gen_degrees: Vec<i64>) -> Self {
        PresentedModule::new(ring, gen_degrees, Vec::new()).expect("free module")
    }

    pub fn zero(ring: Arc<GradedRing>) -> Self {
        PresentedModule::free(ring, Vec::new())
    }

    /// Attaches a group action, checking it exactly on generators and
    /// relations: identity acts trivially, the group law holds, and every
    /// relation is carried into the relation submodule.
    pub fn with_twist(
        mut self,
        action: RingAction,
        gen_action: Vec<Vec<FreeElement>>,
    ) -> Result<Self> {
        if action.ring().as_ref() != self.ring.as_ref() {
            return Err(Error::RingMismatch {
                expected: self.ring.name().into(),
                found: action.ring().name().into(),
            });
        }
        let group = action.group().clone();
        if gen_action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "group action given for {} of {} elements",
                gen_action.len(),
                group.order()
            )));
        }
        let ngens = self.ngens();
        for (a, images) in gen_action.iter().enumerate() {
            if images.len() != ngens {
                return Err(Error::InvalidModule(format!(
                    "element {} acts on {} of {ngens} generators",
                    group.name(a),
                    images.len()
                )));
            }
            for (i, img) in images.iter().enumerate() {
                if img.len() != ngens {
                    return Err(Error::InvalidModule(format!(
                        "image of generator {i} has wrong length"
                    )));
                }
                if let Some(d) = free_degree(&self.ring, &self.gen_degrees, img)? {
                    if d != self.gen_degrees[i] {
                        return Err(Error::InvalidModule(format!(
                            "{} maps generator {i} (degree {}) to degree {d}",
                            group.name(a),
                            self.gen_degrees[i]
                        )));
                    }
                }
            }
        }
        self.twist = Some(ModuleTwist { action, gen_action });
        self.check_twist()?;
        Ok(self)
    }

    /// Group action fixing every generator.
    pub fn with_trivial_twist(self, action: RingAction) -> Result<Self> {
        let n = self.ngens();
        let nv = self.ring.nvars();
        let ident: Vec<FreeElement> = (0..n)
            .map(|i| crate::poly::free_basis(n, nv, i, Poly::one(nv)))
            .collect();
        let gen_action = vec![ident; action.group().order()];
        self.with_twist(action, gen_action)
    }

    fn check_twist(&self) -> Result<()> {
        let twist = self.twist.as_ref().expect("twist present");
        let group = twist.action.group().clone();
        let n = self.ngens();
        for i in 0..n {
            let g = self.gen_degrees[i];
            let ei = self.generator(i);
            let id_img = self.act(group.identity(), &ei);
            if !self.is_zero_element(&sub(&id_img, &ei), g)? {
                return Err(Error::InvalidModule(format!(
                    "identity moves generator {i}"
                )));
            }
            for a in group.elements() {
                for b in group.elements() {
                    let lhs = self.act(a, &self.act(b, &ei));
                    let rhs = self.act(group.mul(a, b), &ei);
                    if !self.is_zero_element(&sub(&lhs, &rhs), g)? {
                        return Err(Error::InvalidModule(format!(
                            "action on generator {i} violates the group law at ({}, {})",
                            group.name(a),
                            group.name(b)
                        )));
                    }
                }
            }
        }
        for (k, rel) in self.relations.iter().enumerate() {
            for a in group.elements() {
                let moved = self.act(a, rel);
                if !self.is_zero_element(&moved, self.relation_degrees[k])? {
                    return Err(Error::InvalidModule(format!(
                        "{} does not preserve relation {k}",
                        group.name(a)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[i64] {
        &self.relation_degrees
    }

    pub fn twist(&self) -> Option<&ModuleTwist> {
        self.twist.as_ref()
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        self.twist.as_ref().map(|t| t.action.group())
    }

    pub fn generator(&self, i: usize) -> FreeElement {
        let nv = self.ring.nvars();
        crate::poly::free_basis(self.ngens(), nv, i, Poly::one(nv))
    }

    pub fn free_zero(&self) -> FreeElement {
        free_zero(self.ngens(), self.ring.nvars())
    }

    /// Degree of a homogeneous free element; `None` for zero.
    pub fn degree_of(&self, x: &FreeElement) -> Result<Option<i64>> {
        free_degree(&self.ring, &self.gen_degrees, x)
    }

    /// `a . x` for `x` in the free module on the generators.
    pub fn act(&self, a: usize, x: &FreeElement) -> FreeElement {
        let twist = self.twist.as_ref().expect("act on an untwisted module");
        let mut out = self.free_zero();
        for (i, p) in x.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let moved = twist.action.apply(a, p);
            for (j, q) in twist.gen_action[a][i].iter().enumerate() {
                if !q.is_zero() {
                    out[j] = &out[j] + &(&moved * q);
                }
            }
        }
        out
    }

    pub fn piece(&self, n: i64) -> Arc<DegreePiece> {
        if let Some(p) = self.cache.lock().expect("cache lock").get(&n) {
            return p.clone();
        }
        let piece = Arc::new(self.compute_piece(n));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(n)
            .or_insert(piece)
            .clone()
    }

    fn compute_piece(&self, n: i64) -> DegreePiece {
        let mut free_basis = Vec::new();
        for (i, &g) in self.gen_degrees.iter().enumerate() {
            for m in self.ring.monomials(n - g) {
                free_basis.push((i, m));
            }
        }
        let index: BTreeMap<(usize, Monomial), usize> = free_basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, key)| (key, k))
            .collect();
        let ambient = free_basis.len();
        let mut rows = Vec::new();
        if ambient > 0 {
            for (k, rel) in self.relations.iter().enumerate() {
                for m in self.ring.monomials(n - self.relation_degrees[k]) {
                    let mut row = vec![Q::zero(); ambient];
                    for (i, p) in rel.iter().enumerate() {
                        for (pm, c) in p.terms() {
                            let pos = index[&(i, pm.mul(&m))];
                            row[pos] += c;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        DegreePiece {
            degree: n,
            free_basis,
            index,
            reducer: QuotientReducer::new(ambient, &rows),
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.piece(n).dim()
    }

    /// Ambient coordinates of a free element known to lie in degree `n`.
    pub fn free_vector(&self, x: &FreeElement, n: i64) -> Result<Vec<Q>> {
        let piece = self.piece(n);
        let mut v = vec![Q::zero(); piece.ambient()];
        for (i, p) in x.iter().enumerate() {
            for (m, c) in p.terms() {
                let pos = piece.position(i, m).ok_or_else(|| {
                    Error::Inhomogeneous(format!(
                        "term of generator {i} does not lie in degree {n}"
                    ))
                })?;
                v[pos] += c;
            }
        }
        Ok(v)
    }

    /// Coordinates of the class of `x` in the degree-`n` quotient basis.
    pub fn coords(&self, x: &FreeElement, n: i64) -> Result<Vec<Q>> {
        let v = self.free_vector(x, n)?;
        Ok(self.piece(n).reducer.coords(&v))
    }

    pub fn is_zero_element(&self, x: &FreeElement, n: i64) -> Result<bool> {
        Ok(self.coords(x, n)?.iter().all(Zero::is_zero))
    }

    /// Free element representing the quotient coordinates `coords` in degree `n`.
    pub fn lift(&self, coords: &[Q], n: i64) -> FreeElement {
        let piece = self.piece(n);
        let mut out = self.free_zero();
        for (x, &b) in coords.iter().zip(piece.reducer.basis()) {
            if x.is_zero() {
                continue;
            }
            let (i, m) = &piece.free_basis[b];
            out[*i].add_term(m.clone(), x.clone());
        }
        out
    }

    pub fn basis_element(&self, n: i64, j: usize) -> FreeElement {
        let d = self.dim(n);
        self.lift(&unit_vec(d, j), n)
    }

    /// Matrix on the degree-`n` quotient basis of a linear map given on the
    /// free basis `(generator, monomial)`; fails if some relation is not
    /// sent to zero.
    pub fn descend_map(
        &self,
        n: i64,
        rows: usize,
        image: impl Fn(usize, &Monomial) -> Vec<Q>,
    ) -> Result<Matrix> {
        let piece = self.piece(n);
        let ambient: Vec<Vec<Q>> = piece.free_basis.iter().map(|(g, m)| image(*g, m)).collect();
        let amb = Matrix::from_cols(&ambient, rows);
        let rel = piece.reducer.relation_rows();
        for r in 0..rel.rows() {
            if !amb.mul_vec(rel.row(r)).iter().all(Zero::is_zero) {
                return Err(Error::InvariantViolation(format!(
                    "map does not kill the relations in degree {n}"
                )));
            }
        }
        Ok(amb.select_cols(piece.reducer.basis()))
    }

    /// Multiplication by a homogeneous ring element, `M_n -> M_{n + deg p}`.
    pub fn mul_matrix(&self, p: &Poly, deg: i64, n: i64) -> Matrix {
        let src = self.piece(n);
        let dst = self.piece(n + deg);
        let cols: Vec<Vec<Q>> = src
            .reducer
            .basis()
            .iter()
            .map(|&b| {
                let (i, m) = &src.free_basis[b];
                let mut v = vec![Q::zero(); dst.ambient()];
                for (pm, c) in p.terms() {
                    let pos = dst
                        .position(*i, &pm.mul(m))
                        .expect("homogeneous multiplier");
                    v[pos] += c;
                }
                dst.reducer.coords(&v)
            })
            .collect();
        Matrix::from_cols(&cols, dst.dim())
    }

    /// Action of ring generator `v` on the degree-`n` piece.
    pub fn generator_matrix(&self, v: usize, n: i64) -> Matrix {
        self.mul_matrix(&self.ring.var(v), self.ring.degrees()[v], n)
    }

    /// Action of a group element on the degree-`n` piece.
    pub fn group_matrix(&self, a: usize, n: i64) -> Matrix {
        let piece = self.piece(n);
        let cols: Vec<Vec<Q>> = piece
            .reducer
            .basis()
            .iter()
            .map(|&b| {
                let (i, m) = &piece.free_basis[b];
                let mut x = self.free_zero();
                x[*i] = Poly::term(Q::one(), m.clone());
                let moved = self.act(a, &x);
                self.coords(&moved, n)
                    .expect("group action preserves degree")
            })
            .collect();
        Matrix::from_cols(&cols, piece.dim())
    }

    /// The degree-`n` piece as a representation of the acting group.
    pub fn group_module_at(&self, n: i64) -> Option<GroupAlgebraModule> {
        let group = self.group()?.clone();
        let d = self.dim(n);
        let action = group.elements().map(|a| self.group_matrix(a, n)).collect();
        Some(
            GroupAlgebraModule::new(group, d, action)
                .expect("validated twist gives a representation"),
        )
    }

    /// `Sigma^k`: every generator degree raised by `k`.
    pub fn shift(&self, k: i64) -> PresentedModule {
        PresentedModule {
            ring: self.ring.clone(),
            gen_degrees: self.gen_degrees.iter().map(|g| g + k).collect(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.iter().map(|r| r + k).collect(),
            twist: self.twist.clone(),
            cache: Arc::new(Mutex::new(BTreeMap::new())),
        }
    }

    /// Tensor with a sign character of the acting group.
    pub fn twist_by_character(&self, chi: &Character) -> Result<PresentedModule> {
        let twist = self.twist.as_ref().ok_or_else(|| {
            Error::Structural("character twist of a module without group action".into())
        })?;
        if chi.group().as_ref() != twist.action.group().as_ref() {
            return Err(Error::GroupMismatch(
                "character and module act through different groups".into(),
            ));
        }
        let gen_action = twist
            .gen_action
            .iter()
            .enumerate()
            .map(|(a, imgs)| {
                let s = Poly::constant(chi.value_q(a), self.ring.nvars());
                imgs.iter()
                    .map(|x| crate::poly::free_scale(x, &s))
                    .collect()
            })
            .collect();
        let mut out = self.clone();
        out.cache = Arc::new(Mutex::new(BTreeMap::new()));
        out.twist = Some(ModuleTwist {
            action: twist.action.clone(),
            gen_action,
        });
        Ok(out)
    }

    /// Drops the group action.
    pub fn untwisted(&self) -> PresentedModule {
        let mut out = self.clone();
        out.twist = None;
        out
    }

    pub fn hilbert_function(&self, window: Window) -> BTreeMap<i64, usize> {
        window.degrees().map(|n| (n, self.dim(n))).collect()
    }

    pub fn evaluate(&self, window: Window) -> WindowModule {
        let dims = self.hilbert_function(window);
        let gen_maps = (0..self.ring.nvars())
            .map(|v| {
                let d = self.ring.degrees()[v];
                window
                    .degrees()
                    .filter(|n| window.contains(n + d))
                    .map(|n| (n, self.generator_matrix(v, n)))
                    .collect()
            })
            .collect();
        let group_maps = self.group().map(|g| {
            g.elements()
                .map(|a| {
                    window
                        .degrees()
                        .map(|n| (n, self.group_matrix(a, n)))
                        .collect()
                })
                .collect()
        });
        WindowModule {
            ring: self.ring.clone(),
            window,
            dims,
            gen_maps,
            group: self.group().cloned(),
            group_maps,
        }
    }
}

fn sub(a: &FreeElement, b: &FreeElement) -> FreeElement {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Degree of a free element given generator degrees.
pub fn free_degree(ring: &GradedRing, gen_degrees: &[i64], x: &FreeElement) -> Result<Option<i64>> {
    let mut deg = None;
    for (i, p) in x.iter().enumerate() {
        if let Some(d) = ring.degree_of(p)? {
            let total = d + gen_degrees[i];
            match deg {
                None => deg = Some(total),
                Some(prev) if prev != total => {
                    return Err(Error::Inhomogeneous(format!(
                        "entries land in degrees {prev} and {total}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(deg)
}

/// Sum of free elements with polynomial coefficients, `sum_k p_k x_k`.
pub fn free_combination(len: usize, nvars: usize, terms: &[(Poly, FreeElement)]) -> FreeElement {
    let mut out = free_zero(len, nvars);
    for (p, x) in terms {
        if p.is_zero() {
            continue;
        }
        out = free_add(&out, &crate::poly::free_scale(x, p));
    }
    out
}

/// Graded pieces of a module on a finite window, with ring and group actions.
#[derive(Clone, Debug)]
pub struct WindowModule {
    pub ring: Arc<GradedRing>,
    pub window: Window,
    pub dims: BTreeMap<i64, usize>,
    /// `gen_maps[v][n]`: ring generator `v` from degree `n` to `n + deg v`.
    pub gen_maps: Vec<BTreeMap<i64, Matrix>>,
    pub group: Option<Arc<FiniteGroup>>,
    pub group_maps: Option<Vec<BTreeMap<i64, Matrix>>>,
}

impl WindowModule {
    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Checks commutation of ring generators, the group law, and
    /// semilinearity wherever the window allows.
    pub fn validate(&self, action: Option<&RingAction>) -> Result<()> {
        let degs = self.ring.degrees();
        for (v, mv) in self.gen_maps.iter().enumerate() {
            for (w, mw) in self.gen_maps.iter().enumerate().skip(v + 1) {
                for (&n, a) in mv {
                    let (Some(b2), Some(b1)) = (mw.get(&(n + degs[v])), mw.get(&n)) else {
                        continue;
                    };
                    let Some(a2) = mv.get(&(n + degs[w])) else {
                        continue;
                    };
                    if b2.mul(a) != a2.mul(b1) {
                        return Err(Error::InvariantViolation(format!(
                            "generators {v} and {w} do not commute at degree {n}"
                        )));
                    }
                }
            }
        }
        if let (Some(group), Some(gm)) = (&self.group, &self.group_maps) {
            for n in self.window.degrees() {
                for a in group.elements() {
                    if gm[a][&n].inverse().is_none() {
                        return Err(Error::InvariantViolation(format!(
                            "{} not invertible at {n}",
                            group.name(a)
                        )));
                    }
                    for b in group.elements() {
                        if gm[a][&n].mul(&gm[b][&n]) != gm[group.mul(a, b)][&n] {
                            return Err(Error::InvariantViolation(format!(
                                "group law fails at degree {n}"
                            )));
                        }
                    }
                }
            }
            if let Some(action) = action {
                // a (x m) = (a . x) (a m) for linear generator images.
                for a in group.elements() {
                    for (v, mv) in self.gen_maps.iter().enumerate() {
                        let img = action.apply(a, &self.ring.var(v));
                        for (&n, xm) in mv {
                            let target = n + degs[v];
                            let lhs = gm[a][&target].mul(xm);
                            let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                            let mut linear = true;
                            for (m, c) in img.terms() {
                                match m.0.iter().position(|&e| e == 1) {
                                    Some(w) if m.0.iter().sum::<u32>() == 1 => {
                                        rhs = rhs.add(&self.gen_maps[w][&n].scale(c));
                                    }
                                    _ => linear = false,
                                }
                            }
                            if linear && lhs != rhs.mul(&gm[a][&n]) {
                                return Err(Error::InvariantViolation(format!(
                                    "action of {} is not semilinear at degree {n}",
                                    group.name(a)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
