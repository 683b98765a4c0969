//! Finite groups as multiplication tables, rational group-algebra modules,
//! and induction, restriction and coinduction along arbitrary homomorphisms.
//!
//! Matrices act on column vectors: `action(a) * v` is `a . v`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, QuotientReducer, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    element_names: Vec<String>,
}

impl FiniteGroup {
    /// Validates the table exhaustively: closure, two-sided identity,
    /// inverses and associativity (a full triple loop).
    pub fn new(
        mult: Vec<Vec<usize>>,
        identity: usize,
        element_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let order = mult.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if identity >= order {
            return Err(Error::InvalidGroup(format!(
                "identity index {identity} out of range"
            )));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::InvalidGroup(format!(
                    "entry {bad} in row {i} out of range"
                )));
            }
        }
        for a in 0..order {
            if mult[identity][a] != a || mult[a][identity] != a {
                return Err(Error::InvalidGroup(format!(
                    "element {identity} is not a two-sided identity at {a}"
                )));
            }
            let left = (0..order).any(|b| mult[b][a] == identity);
            let right = (0..order).any(|b| mult[a][b] == identity);
            if !left || !right {
                return Err(Error::InvalidGroup(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let element_names = match element_names {
            Some(names) if names.len() == order => names,
            Some(names) => {
                return Err(Error::InvalidGroup(format!(
                    "{} names for {order} elements",
                    names.len()
                )));
            }
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        let distinct: BTreeSet<&String> = element_names.iter().collect();
        if distinct.len() != order {
            return Err(Error::InvalidGroup("element names are not distinct".into()));
        }
        Ok(FiniteGroup {
            order,
            mult,
            identity,
            element_names,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::new(vec![vec![0]], 0, Some(vec!["e".into()])).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        FiniteGroup::new(mult, 0, Some(names)).expect("cyclic group")
    }

    /// Cyclic group of order 2 with elements `e` and `w`.
    pub fn weyl_c2() -> Self {
        FiniteGroup::new(
            vec![vec![0, 1], vec![1, 0]],
            0,
            Some(vec!["e".into(), "w".into()]),
        )
        .expect("C2")
    }

    /// Group of permutations given in one-line notation; composition is
    /// `(s t)(i) = s(t(i))`.
    pub fn from_permutations(perms: &[Vec<usize>], names: Vec<String>) -> Result<Self> {
        let index = |p: &Vec<usize>| perms.iter().position(|x| x == p);
        let n = perms.len();
        let mut mult = vec![vec![0; n]; n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let comp: Vec<usize> = pb.iter().map(|&i| pa[i]).collect();
                mult[a][b] = index(&comp)
                    .ok_or_else(|| Error::InvalidGroup("permutation set not closed".into()))?;
            }
        }
        let id: Vec<usize> = (0..perms[0].len()).collect();
        let identity =
            index(&id).ok_or_else(|| Error::InvalidGroup("missing identity permutation".into()))?;
        FiniteGroup::new(mult, identity, Some(names))
    }

    /// S3 with elements `e, (12), (13), (23), (123), (132)`.
    pub fn symmetric3() -> Self {
        let perms = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        FiniteGroup::from_permutations(&perms, names).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mult[a][b] == self.identity)
            .expect("validated inverse")
    }

    pub fn name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![self.identity];
        for a in self.elements() {
            if !sub.contains(&a) {
                gens.push(a);
                sub = self.generated_subgroup(&gens);
            }
        }
        gens
    }
}

/// Homomorphism of finite groups; need not be injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::NotHomomorphism(format!("image {bad} out of range")));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotHomomorphism(format!(
                        "h({}{}) != h({})h({})",
                        source.name(x),
                        source.name(y),
                        source.name(x),
                        source.name(y)
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        GroupHom {
            source: group.clone(),
            target: group,
            map,
        }
    }

    /// The homomorphism sending everything to the identity.
    pub fn to_trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let map = vec![target.identity(); source.order()];
        GroupHom {
            source,
            target,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<usize> = self.map.iter().copied().collect();
        distinct.len() == self.map.len()
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source
            .elements()
            .filter(|&x| self.map[x] == self.target.identity())
            .collect()
    }

    /// Elements `b` of the source with `h(b) = a`.
    pub fn fiber(&self, a: usize) -> Vec<usize> {
        self.source
            .elements()
            .filter(|&b| self.map[b] == a)
            .collect()
    }
}

/// Homomorphism to `{+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: Arc<FiniteGroup>,
    values: Vec<i8>,
}

impl Character {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<i8>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "character has {} values",
                values.len()
            )));
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidGroup(
                "character values must be +1 or -1".into(),
            ));
        }
        if values[group.identity()] != 1 {
            return Err(Error::InvalidGroup(
                "character is not +1 at the identity".into(),
            ));
        }
        for x in group.elements() {
            for y in group.elements() {
                if values[group.mul(x, y)] != values[x] * values[y] {
                    return Err(Error::InvalidGroup(format!(
                        "character is not multiplicative at ({}, {})",
                        group.name(x),
                        group.name(y)
                    )));
                }
            }
        }
        Ok(Character { group, values })
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let values = vec![1; group.order()];
        Character { group, values }
    }

    /// Some non-trivial sign character, if the group has one.
    ///
    /// Its kernel is an index-2 subgroup containing all squares and
    /// commutators, built greedily so the choice is deterministic.
    pub fn first_sign(group: Arc<FiniteGroup>) -> Option<Self> {
        let mut gens = Vec::new();
        for x in group.elements() {
            gens.push(group.mul(x, x));
            for y in group.elements() {
                let comm = group.mul(
                    group.mul(x, y),
                    group.mul(group.inverse(x), group.inverse(y)),
                );
                gens.push(comm);
            }
        }
        let mut kernel = group.generated_subgroup(&gens);
        let outside = group.elements().find(|x| !kernel.contains(x))?;
        for g in group.elements() {
            if kernel.contains(&g) {
                continue;
            }
            let mut trial: Vec<usize> = kernel.clone();
            trial.push(g);
            let bigger = group.generated_subgroup(&trial);
            if !bigger.contains(&outside) {
                kernel = bigger;
            }
        }
        let values = group
            .elements()
            .map(|x| if kernel.contains(&x) { 1 } else { -1 })
            .collect();
        Character::new(group, values).ok()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, x: usize) -> i8 {
        self.values[x]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value_q(&self, x: usize) -> Q {
        q(self.values[x] as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }

    /// Pullback along a homomorphism into this character's group.
    pub fn pullback(&self, h: &GroupHom) -> Character {
        let values = h
            .source()
            .elements()
            .map(|b| self.values[h.apply(b)])
            .collect();
        Character {
            group: h.source().clone(),
            values,
        }
    }
}

/// Finite-dimensional rational representation of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraModule {
    group: Arc<FiniteGroup>,
    dim: usize,
    action: Vec<Matrix>,
}

impl GroupAlgebraModule {
    pub fn new(group: Arc<FiniteGroup>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for order {}",
                action.len(),
                group.order()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule(format!(
                "action matrices must be {dim}x{dim}"
            )));
        }
        if !action[group.identity()].is_identity() {
            return Err(Error::InvalidModule(
                "identity does not act as the identity matrix".into(),
            ));
        }
        for x in group.elements() {
            for y in group.elements() {
                if action[x].mul(&action[y]) != action[group.mul(x, y)] {
                    return Err(Error::InvalidModule(format!(
                        "action({})action({}) != action({}{})",
                        group.name(x),
                        group.name(y),
                        group.name(x),
                        group.name(y)
                    )));
                }
            }
        }
        Ok(GroupAlgebraModule { group, dim, action })
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let action = vec![Matrix::identity(dim); group.order()];
        GroupAlgebraModule { group, dim, action }
    }

    pub fn from_character(chi: &Character) -> Self {
        let action = chi
            .group()
            .elements()
            .map(|x| Matrix::from_rows(vec![vec![chi.value_q(x)]], 1))
            .collect();
        GroupAlgebraModule {
            group: chi.group().clone(),
            dim: 1,
            action,
        }
    }

    /// The left regular module QA with basis the group elements.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = group
            .elements()
            .map(|a| {
                let mut m = Matrix::zeros(n, n);
                for x in group.elements() {
                    m[(group.mul(a, x), x)] = Q::one();
                }
                m
            })
            .collect();
        GroupAlgebraModule {
            group,
            dim: n,
            action,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: usize) -> &Matrix {
        &self.action[a]
    }

    pub fn direct_sum(&self, other: &GroupAlgebraModule) -> Result<GroupAlgebraModule> {
        same_group(&self.group, &other.group)?;
        let d = self.dim + other.dim;
        let action = self
            .group
            .elements()
            .map(|a| {
                let mut m = Matrix::zeros(d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m[(r, c)] = self.action[a][(r, c)].clone();
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m[(self.dim + r, self.dim + c)] = other.action[a][(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        Ok(GroupAlgebraModule {
            group: self.group.clone(),
            dim: d,
            action,
        })
    }

    /// Averaging idempotent `(1/|A|) sum_a action(a)`.
    pub fn averaging_idempotent(&self) -> Matrix {
        let mut sum = Matrix::zeros(self.dim, self.dim);
        for a in self.group.elements() {
            sum = sum.add(&self.action[a]);
        }
        sum.scale(&Q::new(1.into(), (self.group.order() as i64).into()))
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!(
            "groups of order {} and {} differ",
            a.order(),
            b.order()
        )))
    }
}

pub fn restrict_group_module(h: &GroupHom, m: &GroupAlgebraModule) -> Result<GroupAlgebraModule> {
    same_group(h.target(), &m.group)?;
    let action = h
        .source()
        .elements()
        .map(|b| m.action[h.apply(b)].clone())
        .collect();
    Ok(GroupAlgebraModule {
        group: h.source().clone(),
        dim: m.dim,
        action,
    })
}

/// `QA (x)_{QB} N` realised as a quotient of `Q^{|A| dim N}`; the ambient
/// coordinate `(a, k)` sits at `a * dim N + k`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: GroupAlgebraModule,
    reducer: QuotientReducer,
    source_dim: usize,
}

impl InducedModule {
    /// Coordinates of `a (x) v`.
    pub fn class_of(&self, a: usize, v: &[Q]) -> Vec<Q> {
        let mut amb = vec![Q::zero(); self.reducer.ambient()];
        for (k, x) in v.iter().enumerate() {
            amb[a * self.source_dim + k] = x.clone();
        }
        self.reducer.coords(&amb)
    }

    /// The ambient pair `(a, k)` lifting each quotient basis vector.
    pub fn basis_pairs(&self) -> Vec<(usize, usize)> {
        self.reducer
            .basis()
            .iter()
            .map(|&i| (i / self.source_dim, i % self.source_dim))
            .collect()
    }
}

pub fn induce_group_module(h: &GroupHom, n: &GroupAlgebraModule) -> Result<InducedModule> {
    same_group(h.source(), &n.group)?;
    let a_group = h.target();
    let d = n.dim;
    let ambient = a_group.order() * d;
    let mut relations = Vec::new();
    for a in a_group.elements() {
        for b in h.source().elements() {
            let ahb = a_group.mul(a, h.apply(b));
            for k in 0..d {
                // a h(b) (x) e_k - a (x) b e_k
                let mut row = vec![Q::zero(); ambient];
                row[ahb * d + k] += Q::one();
                for l in 0..d {
                    row[a * d + l] -= n.action[b][(l, k)].clone();
                }
                relations.push(row);
            }
        }
    }
    let reducer = QuotientReducer::new(ambient, &relations);
    let pairs: Vec<usize> = reducer.basis().to_vec();
    let dim = pairs.len();
    let action = a_group
        .elements()
        .map(|g| {
            let cols: Vec<Vec<Q>> = pairs
                .iter()
                .map(|&p| {
                    let (a, k) = (p / d, p % d);
                    let mut amb = vec![Q::zero(); ambient];
                    amb[a_group.mul(g, a) * d + k] = Q::one();
                    reducer.coords(&amb)
                })
                .collect();
            Matrix::from_cols(&cols, dim)
        })
        .collect();
    let module = GroupAlgebraModule {
        group: a_group.clone(),
        dim,
        action,
    };
    Ok(InducedModule {
        module,
        reducer,
        source_dim: d,
    })
}

/// `Hom_{QB}(QA, N)` as the kernel of the equivariance system; a map `f`
/// is stored as the concatenation of the values `f(a)` for `a` in `A`.
#[derive(Clone, Debug)]
pub struct CoinducedModule {
    pub module: GroupAlgebraModule,
    basis: Matrix,
    source_dim: usize,
}

impl CoinducedModule {
    /// Value `f(x)` of the map with the given coordinates.
    pub fn value_at(&self, coords: &[Q], x: usize) -> Vec<Q> {
        let full = self.basis.mul_vec(coords);
        full[x * self.source_dim..(x + 1) * self.source_dim].to_vec()
    }

    /// Coordinates of the map given by its values on every group element.
    pub fn coords_of(&self, values: &[Vec<Q>]) -> Option<Vec<Q>> {
        let full: Vec<Q> = values.iter().flatten().cloned().collect();
        self.basis.solve(&full)
    }
}

pub fn coinduce_group_module(h: &GroupHom, n: &GroupAlgebraModule) -> Result<CoinducedModule> {
    same_group(h.source(), &n.group)?;
    let a_group = h.target();
    let d = n.dim;
    let unknowns = a_group.order() * d;
    let mut rows = Vec::new();
    for b in h.source().generators_or_all() {
        for a in a_group.elements() {
            let hba = a_group.mul(h.apply(b), a);
            // f(h(b) a) - b f(a) = 0
            for r in 0..d {
                let mut row = vec![Q::zero(); unknowns];
                row[hba * d + r] += Q::one();
                for k in 0..d {
                    row[a * d + k] -= n.action[b][(r, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows, unknowns)
    };
    let basis = system.kernel();
    let dim = basis.cols();
    let action = a_group
        .elements()
        .map(|g| {
            // (g f)(x) = f(x g)
            let cols: Vec<Vec<Q>> = (0..dim)
                .map(|j| {
                    let f = basis.col(j);
                    let moved: Vec<Q> = a_group
                        .elements()
                        .flat_map(|x| {
                            let xg = a_group.mul(x, g);
                            f[xg * d..(xg + 1) * d].to_vec()
                        })
                        .collect();
                    basis
                        .solve(&moved)
                        .expect("coinduced module is closed under the action")
                })
                .collect();
            Matrix::from_cols(&cols, dim)
        })
        .collect();
    let module = GroupAlgebraModule {
        group: a_group.clone(),
        dim,
        action,
    };
    Ok(CoinducedModule {
        module,
        basis,
        source_dim: d,
    })
}

impl FiniteGroup {
    fn generators_or_all(&self) -> Vec<usize> {
        let g = self.generators();
        if g.is_empty() {
            vec![self.identity]
        } else {
            g
        }
    }
}

/// Invariant subspace, as the image of the averaging idempotent; columns
/// of the returned matrix form a basis.
pub fn invariants(m: &GroupAlgebraModule) -> Matrix {
    m.averaging_idempotent().column_space()
}

/// Coinvariants `M / span{m - a m}` with the projection onto them.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    reducer: QuotientReducer,
}

impl Coinvariants {
    pub fn dim(&self) -> usize {
        self.reducer.dim()
    }

    pub fn project(&self, v: &[Q]) -> Vec<Q> {
        self.reducer.coords(v)
    }

    pub fn projection_matrix(&self) -> Matrix {
        let n = self.reducer.ambient();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|i| self.project(&crate::linalg::unit_vec(n, i)))
            .collect();
        Matrix::from_cols(&cols, self.dim())
    }
}

pub fn coinvariants(m: &GroupAlgebraModule) -> Coinvariants {
    let mut rows = Vec::new();
    for a in m.group.elements() {
        let diff = Matrix::identity(m.dim).sub(&m.action[a]);
        for c in 0..m.dim {
            rows.push(diff.col(c));
        }
    }
    Coinvariants {
        reducer: QuotientReducer::new(m.dim, &rows),
    }
}

pub fn twist_by_character(chi: &Character, m: &GroupAlgebraModule) -> Result<GroupAlgebraModule> {
    same_group(chi.group(), &m.group)?;
    let action = m
        .group
        .elements()
        .map(|a| m.action[a].scale(&chi.value_q(a)))
        .collect();
    Ok(GroupAlgebraModule {
        group: m.group.clone(),
        dim: m.dim,
        action,
    })
}

/// Basis of the intertwiners `X: M1 -> M2` (`X M1(a) = M2(a) X`).
pub fn intertwiners(m1: &GroupAlgebraModule, m2: &GroupAlgebraModule) -> Result<Vec<Matrix>> {
    same_group(&m1.group, &m2.group)?;
    let (d1, d2) = (m1.dim, m2.dim);
    let unknowns = d1 * d2;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for a in m1.group.generators_or_all() {
        let (a1, a2) = (&m1.action[a], &m2.action[a]);
        for r in 0..d2 {
            for c in 0..d1 {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..d1 {
                    row[r * d1 + k] += a1[(k, c)].clone();
                }
                for k in 0..d2 {
                    row[k * d1 + c] -= a2[(r, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(rows, unknowns).kernel();
    Ok((0..kernel.cols())
        .map(|j| {
            let v = kernel.col(j);
            Matrix::from_rows(v.chunks(d1).map(|c| c.to_vec()).collect(), d1)
        })
        .collect())
}

/// Coordinates of `x` in an intertwiner basis.
pub fn intertwiner_coords(basis: &[Matrix], x: &Matrix) -> Option<Vec<Q>> {
    let n = x.rows() * x.cols();
    let flat = |m: &Matrix| -> Vec<Q> { (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect() };
    let cols: Vec<Vec<Q>> = basis.iter().map(flat).collect();
    if cols.is_empty() {
        return if x.is_zero() { Some(Vec::new()) } else { None };
    }
    Matrix::from_cols(&cols, n).solve(&flat(x))
}

/// An invertible intertwiner, if the modules are isomorphic.
///
/// Tries basis elements, then generic integer combinations; a nonzero
/// determinant polynomial cannot vanish on all of the probe points.
pub fn find_isomorphism(
    m1: &GroupAlgebraModule,
    m2: &GroupAlgebraModule,
) -> Result<Option<Matrix>> {
    if m1.dim != m2.dim {
        return Ok(None);
    }
    if m1.dim == 0 {
        return Ok(Some(Matrix::zeros(0, 0)));
    }
    let basis = intertwiners(m1, m2)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for x in &basis {
        if !x.determinant().is_zero() {
            return Ok(Some(x.clone()));
        }
    }
    // Integer combinations from a range larger than the determinant degree
    // are invertible with high probability when any invertible one exists.
    let range = 4 * m1.dim as u64 + 7;
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..64 {
        let mut x = Matrix::zeros(m1.dim, m1.dim);
        for b in &basis {
            state = state
                .wrapping_mul(6_364_136_223_846_793_005)
                .wrapping_add(1_442_695_040_888_963_407);
            let c = (state >> 33) % range;
            x = x.add(&b.scale(&q(c as i64 - (range / 2) as i64)));
        }
        if !x.determinant().is_zero() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Unit `N -> res ind N`, `n |-> 1 (x) n`.
pub fn induction_unit(h: &GroupHom, ind: &InducedModule, n: &GroupAlgebraModule) -> Matrix {
    let e = h.target().identity();
    let cols: Vec<Vec<Q>> = (0..n.dim)
        .map(|k| ind.class_of(e, &crate::linalg::unit_vec(n.dim, k)))
        .collect();
    Matrix::from_cols(&cols, ind.module.dim)
}

/// Counit `ind res M -> M`, `a (x) m |-> a m`.
pub fn induction_counit(ind_res: &InducedModule, m: &GroupAlgebraModule) -> Matrix {
    let cols: Vec<Vec<Q>> = ind_res
        .basis_pairs()
        .iter()
        .map(|&(a, k)| m.action[a].col(k))
        .collect();
    Matrix::from_cols(&cols, m.dim)
}

/// `ind(phi)` for an equivariant `phi: N -> N'` (matrix `dim N' x dim N`).
pub fn induce_morphism(src: &InducedModule, dst: &InducedModule, phi: &Matrix) -> Matrix {
    let cols: Vec<Vec<Q>> = src
        .basis_pairs()
        .iter()
        .map(|&(a, k)| dst.class_of(a, &phi.col(k)))
        .collect();
    Matrix::from_cols(&cols, dst.module.dim)
}

/// Unit `M -> coind res M`, `m |-> (x |-> x m)`.
pub fn coinduction_unit(coind_res: &CoinducedModule, m: &GroupAlgebraModule) -> Matrix {
    let group = m.group.clone();
    let cols: Vec<Vec<Q>> = (0..m.dim)
        .map(|k| {
            let values: Vec<Vec<Q>> = group.elements().map(|x| m.action[x].col(k)).collect();
            coind_res
                .coords_of(&values)
                .expect("x |-> x m is equivariant")
        })
        .collect();
    Matrix::from_cols(&cols, coind_res.module.dim)
}

/// Counit `res coind N -> N`, `f |-> f(1)`.
pub fn coinduction_counit(
    coind: &CoinducedModule,
    n: &GroupAlgebraModule,
    identity: usize,
) -> Matrix {
    let cols: Vec<Vec<Q>> = (0..coind.module.dim)
        .map(|j| coind.value_at(&crate::linalg::unit_vec(coind.module.dim, j), identity))
        .collect();
    Matrix::from_cols(&cols, n.dim)
}

/// `coind(phi)`: post-composition with `phi`.
pub fn coinduce_morphism(
    src: &CoinducedModule,
    dst: &CoinducedModule,
    phi: &Matrix,
    order: usize,
) -> Matrix {
    let cols: Vec<Vec<Q>> = (0..src.module.dim)
        .map(|j| {
            let e = crate::linalg::unit_vec(src.module.dim, j);
            let values: Vec<Vec<Q>> = (0..order)
                .map(|x| phi.mul_vec(&src.value_at(&e, x)))
                .collect();
            dst.coords_of(&values)
                .expect("post-composition stays equivariant")
        })
        .collect();
    Matrix::from_cols(&cols, dst.module.dim)
}
