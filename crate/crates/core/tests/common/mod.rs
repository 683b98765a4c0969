#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use adjstring::graded::{GradedRing, PresentedModule, RingMap};
use adjstring::linalg::{q, Matrix, Q};
use adjstring::poly::{FreeElement, Monomial, Poly};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// Exponent vectors of total degree `n` for generators of degrees `degs`.
pub fn monomials(degs: &[i64], n: i64) -> Vec<Vec<u32>> {
    let Some((&d, rest)) = degs.split_first() else {
        return if n == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = Vec::new();
    let mut e = 0u32;
    while i64::from(e) * d >= n {
        for mut tail in monomials(rest, n - i64::from(e) * d) {
            tail.insert(0, e);
            out.push(tail);
        }
        e += 1;
    }
    out
}

pub fn ring_dim(degs: &[i64], n: i64) -> usize {
    monomials(degs, n).len()
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Raw description of a module: generator degrees and relations, each
/// relation a list of `(generator, exponents, coefficient)` terms.
#[derive(Clone, Debug)]
pub struct Spec {
    pub degs: Vec<i64>,
    pub gens: Vec<i64>,
    pub rels: Vec<(i64, Vec<(usize, Vec<u32>, i64)>)>,
}

/// Generator degrees, then relations as (offset below the top generator,
/// coefficient pool).
pub type RawSpec = (Vec<i64>, Vec<(i64, Vec<i64>)>);

pub fn raw_spec() -> impl Strategy<Value = RawSpec> {
    (
        prop::collection::vec(-4i64..=0, 1..=2),
        prop::collection::vec((0i64..4, prop::collection::vec(-3i64..=3, 12)), 0..=2),
    )
}

pub fn spec_from_raw(degs: &[i64], raw: &RawSpec) -> Spec {
    let (gens, rels) = raw;
    let top = *gens.iter().max().expect("a generator");
    let mut out = Vec::new();
    for (j, pool) in rels {
        let rdeg = top - 2 * j;
        let mut terms = Vec::new();
        let mut k = 0;
        for (i, g) in gens.iter().enumerate() {
            for m in monomials(degs, rdeg - g) {
                let c = pool[k % pool.len()];
                k += 1;
                if c != 0 {
                    terms.push((i, m, c));
                }
            }
        }
        if !terms.is_empty() {
            out.push((rdeg, terms));
        }
    }
    Spec {
        degs: degs.to_vec(),
        gens: gens.clone(),
        rels: out,
    }
}

/// `count` specs drawn deterministically from [`raw_spec`].
pub fn random_specs(degs: &[i64], count: usize, runner: &mut TestRunner) -> Vec<Spec> {
    let strategy = raw_spec();
    (0..count)
        .map(|_| {
            let raw = strategy.new_tree(runner).expect("value tree").current();
            spec_from_raw(degs, &raw)
        })
        .collect()
}

pub fn build(spec: &Spec, ring: &Arc<GradedRing>) -> PresentedModule {
    let nv = ring.nvars();
    let rels: Vec<FreeElement> = spec
        .rels
        .iter()
        .map(|(_, terms)| {
            let mut x = vec![Poly::zero(nv); spec.gens.len()];
            for (i, m, c) in terms {
                x[*i] = &x[*i] + &Poly::term(q(*c), Monomial(m.clone()));
            }
            x
        })
        .collect();
    PresentedModule::new(ring.clone(), spec.gens.clone(), rels).expect("homogeneous spec")
}

/// Basis `(generator, exponents)` of the free module in degree `n`.
fn free_basis(spec: &Spec, n: i64) -> Vec<(usize, Vec<u32>)> {
    spec.gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            monomials(&spec.degs, n - g)
                .into_iter()
                .map(move |m| (i, m))
        })
        .collect()
}

/// Spanning set of the relation submodule in degree `n`, as sparse vectors
/// over [`free_basis`].
fn relation_span(spec: &Spec, n: i64) -> Vec<Vec<((usize, Vec<u32>), i64)>> {
    let mut out = Vec::new();
    for (rdeg, terms) in &spec.rels {
        for mult in monomials(&spec.degs, n - rdeg) {
            out.push(
                terms
                    .iter()
                    .map(|(i, m, c)| ((*i, add_exps(m, &mult)), *c))
                    .collect(),
            );
        }
    }
    out
}

fn rank_of(rows: Vec<Vec<Q>>, cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    Matrix::from_rows(rows, cols).rank()
}

/// `dim M_n` by counting: free basis size minus the rank of the relations.
pub fn quotient_dim(spec: &Spec, n: i64) -> usize {
    let basis = free_basis(spec, n);
    let index: HashMap<_, _> = basis.iter().cloned().zip(0..).collect();
    let rows = relation_span(spec, n)
        .into_iter()
        .map(|v| {
            let mut row = vec![q(0); basis.len()];
            for (key, c) in v {
                row[index[&key]] += q(c);
            }
            row
        })
        .collect();
    basis.len() - rank_of(rows, basis.len())
}

/// `dim (S ⊗_R M)_n` as the cokernel of
/// `⊕ S ⊗ R ⊗ F  ⇉  ⊕_k S_k ⊗ F_{n-k}` together with `S ⊗ K`.
pub fn coequalizer_dim(theta: &RingMap, spec: &Spec, n: i64) -> usize {
    let s_degs = theta.target().degrees().to_vec();
    let top = *spec.gens.iter().max().expect("a generator");
    let ks: Vec<i64> = (n - top..=0).collect();
    let mut index: HashMap<(Vec<u32>, usize, Vec<u32>), usize> = HashMap::new();
    for &k in &ks {
        for s in monomials(&s_degs, k) {
            for (i, m) in free_basis(spec, n - k) {
                let len = index.len();
                index.entry((s.clone(), i, m)).or_insert(len);
            }
        }
    }
    let cols = index.len();
    let mut rows = Vec::new();
    for &k in &ks {
        let s_monos = monomials(&s_degs, k);
        for kappa in relation_span(spec, n - k) {
            for s in &s_monos {
                let mut row = vec![q(0); cols];
                for ((i, m), c) in &kappa {
                    row[index[&(s.clone(), *i, m.clone())]] += q(*c);
                }
                rows.push(row);
            }
        }
        for (v, &dv) in spec.degs.iter().enumerate() {
            let image = &theta.images()[v];
            for s in &s_monos {
                let shifted = Poly::term(q(1), Monomial(s.clone()));
                let prod = image * &shifted;
                for (i, m) in free_basis(spec, n - k - dv) {
                    let mut row = vec![q(0); cols];
                    for (mono, c) in prod.terms() {
                        row[index[&(mono.0.clone(), i, m.clone())]] += c.clone();
                    }
                    let mut xm = m.clone();
                    xm[v] += 1;
                    row[index[&(s.clone(), i, xm)]] -= q(1);
                    rows.push(row);
                }
            }
        }
    }
    cols - rank_of(rows, cols)
}
