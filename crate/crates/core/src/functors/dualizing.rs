use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{PresentedModule, VerifiedBasis, Window};
use crate::groups::Character;
use crate::linalg::{Matrix, Q};
use crate::poly::{free_scale, FreeElement, Poly};
use crate::twisted::{RingAction, ShiftCharacter};

/// Validated identification `D = Sigma^shift (chi (x) S)`, determined by
/// a generator `u` of `D` in degree `shift`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub shift: i64,
    pub character: Option<Character>,
    /// `u` on the dual basis generators.
    pub generator: FreeElement,
    /// `u(s_i)` in `R`.
    pub u_values: Vec<Poly>,
    /// `sigma_i` in `S` with `s_i^* = sigma_i u`.
    pub sigma: Vec<Poly>,
    /// Degree `n` matrices `S_{n - shift} -> D_n`, `sigma |-> sigma u`.
    pub isos: BTreeMap<i64, Matrix>,
}

/// `D = Hom_R(S, R)` as an `S`-module on the dual basis, with the
/// comparison to a shifted copy of `S`.
#[derive(Clone, Debug)]
pub struct DualizingModule {
    pub underlying: PresentedModule,
    pub comparison: std::result::Result<Comparison, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualizingSummary {
    #[serde(serialize_with = "crate::graded::serialize_hilbert")]
    pub hilbert: BTreeMap<i64, usize>,
    pub generator_degree: Option<i64>,
    pub generator_sign: Option<Vec<i8>>,
    pub relations: Vec<String>,
    pub comparison: String,
}

impl DualizingModule {
    pub fn comparison(&self) -> Result<&Comparison> {
        self.comparison
            .as_ref()
            .map_err(|e| Error::InvariantViolation(format!("dualizing comparison: {e}")))
    }

    pub fn summary(&self, window: Window) -> DualizingSummary {
        let m = &self.underlying;
        let ring = m.ring();
        let relations = m
            .relations()
            .iter()
            .map(|rel| {
                rel.iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(i, p)| format!("({})*g{i}", ring.format(p)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        let (generator_degree, generator_sign, comparison) = match &self.comparison {
            Ok(c) => {
                let signs = m.group().map(|g| {
                    g.elements()
                        .map(|a| {
                            let mat = m.group_matrix(a, c.shift);
                            if mat[(0, 0)] == -Q::one() {
                                -1
                            } else {
                                1
                            }
                        })
                        .collect()
                });
                (Some(c.shift), signs, "validated".to_string())
            }
            Err(e) => (None, None, format!("failed: {e}")),
        };
        DualizingSummary {
            hilbert: m.hilbert_function(window),
            generator_degree,
            generator_sign,
            relations,
            comparison,
        }
    }
}

/// Builds `Hom_R(S, R)` on generators `s_i^*` of degree `-e_i`.
///
/// For every ring generator `x` of `S`, `x . s_i^* = sum_l c_{l,x,i} s_l^*`
/// where `s_l x = sum_m c_{l,x,m} s_m`, since `(x f)(t) = f(t x)`. With a
/// group acting on both rings, `(b f)(t) = b . f(b^{-1} t)`.
pub fn dualizing_presentation(
    vb: &VerifiedBasis,
    actions: Option<(&RingAction, &RingAction)>,
) -> Result<PresentedModule> {
    let theta = vb.map();
    let s = theta.target().clone();
    let nb = vb.len();
    let nv = s.nvars();
    let degrees: Vec<i64> = vb.degrees().iter().map(|e| -e).collect();
    let mut relations = Vec::new();
    for v in 0..nv {
        let x = s.var(v);
        let products: Vec<Vec<Poly>> = vb
            .basis()
            .iter()
            .map(|sl| vb.rewrite(&(sl * &x)))
            .collect::<Result<_>>()?;
        for i in 0..nb {
            let mut row = vec![Poly::zero(nv); nb];
            row[i] = x.clone();
            for (l, prod) in products.iter().enumerate() {
                row[l] = &row[l] - &theta.apply(&prod[i]);
            }
            relations.push(row);
        }
    }
    let d = PresentedModule::new(s.clone(), degrees, relations)?;
    let Some((s_action, r_action)) = actions else {
        return Ok(d);
    };
    let group = s_action.group().clone();
    let mut gen_action = Vec::with_capacity(group.order());
    for b in group.elements() {
        let binv = group.inverse(b);
        let moved: Vec<Vec<Poly>> = vb
            .basis()
            .iter()
            .map(|sl| vb.rewrite(&s_action.apply(binv, sl)))
            .collect::<Result<_>>()?;
        let imgs = (0..nb)
            .map(|i| {
                (0..nb)
                    .map(|l| theta.apply(&r_action.apply(b, &moved[l][i])))
                    .collect()
            })
            .collect();
        gen_action.push(imgs);
    }
    d.with_twist(s_action.clone(), gen_action)
}

/// Constructs `D_{R,S}` and validates its comparison with
/// `Sigma^shift (chi (x) S)` on the window.
pub fn dualizing_module(
    vb: &VerifiedBasis,
    actions: Option<(&RingAction, &RingAction)>,
    expected: &ShiftCharacter,
    window: Window,
) -> Result<DualizingModule> {
    let underlying = dualizing_presentation(vb, actions)?;
    let comparison = compare(vb, &underlying, expected, window);
    Ok(DualizingModule {
        underlying,
        comparison,
    })
}

fn compare(
    vb: &VerifiedBasis,
    d: &PresentedModule,
    expected: &ShiftCharacter,
    window: Window,
) -> std::result::Result<Comparison, String> {
    let s = vb.map().target().clone();
    let r = vb.map().source().clone();
    let nb = vb.len();
    let shift = expected.shift;
    // As an R-module D is free on the s_i^*.
    for n in window.degrees() {
        let expect: usize = vb.degrees().iter().map(|e| r.dim(n + e)).sum();
        if d.dim(n) != expect {
            return Err(format!(
                "dim D_{n} = {} but Hom_R(S, R)_{n} has dimension {expect}",
                d.dim(n)
            ));
        }
    }
    if d.dim(shift) != 1 {
        return Err(format!(
            "D has dimension {} in degree {shift}, expected a single generator",
            d.dim(shift)
        ));
    }
    let u = d.basis_element(shift, 0);
    let character = match d.group() {
        Some(g) => {
            if expected.character.group() != g {
                return Err("character is not on the acting group".into());
            }
            for b in g.elements() {
                let moved = d.group_matrix(b, shift)[(0, 0)].clone();
                if moved != expected.character.value_q(b) {
                    return Err(format!(
                        "{} acts on the generator by {}, expected {}",
                        g.name(b),
                        moved,
                        expected.character.value(b)
                    ));
                }
            }
            Some(expected.character.clone())
        }
        None => None,
    };
    let u_values: Vec<Poly> = vb
        .basis()
        .iter()
        .map(|sl| {
            let mut acc = r.zero();
            for (i, tau) in u.iter().enumerate() {
                if !tau.is_zero() {
                    acc = &acc + &vb.rewrite(&(sl * tau)).expect("certified")[i];
                }
            }
            acc
        })
        .collect();
    let times_u = |n: i64| -> Matrix {
        let cols: Vec<Vec<Q>> = s
            .monomials(n - shift)
            .into_iter()
            .map(|m| {
                d.coords(&free_scale(&u, &Poly::term(Q::one(), m)), n)
                    .expect("homogeneous")
            })
            .collect();
        Matrix::from_cols(&cols, d.dim(n))
    };
    let mut sigma = Vec::with_capacity(nb);
    for i in 0..nb {
        let n = -vb.degrees()[i];
        let mat = times_u(n);
        let target = d.coords(&d.generator(i), n).expect("generator");
        let sol = mat
            .solve(&target)
            .ok_or_else(|| format!("s_{i}^* is not a multiple of the generator"))?;
        sigma.push(s.from_coords(&sol, n - shift));
    }
    for l in 0..nb {
        for i in 0..nb {
            let mut acc = r.zero();
            let coeffs = vb
                .rewrite(&(&vb.basis()[l] * &sigma[i]))
                .map_err(|e| e.to_string())?;
            for (m, c) in coeffs.iter().enumerate() {
                acc = &acc + &(c * &u_values[m]);
            }
            let expect = if i == l { r.one() } else { r.zero() };
            if acc != expect {
                return Err(format!("(sigma_{i} u)(s_{l}) = {}", r.format(&acc)));
            }
        }
    }
    let mut isos = BTreeMap::new();
    for n in window.degrees() {
        let mat = times_u(n);
        if mat.rows() != mat.cols() || mat.determinant().is_zero() {
            return Err(format!(
                "multiplication by the generator is not bijective onto degree {n}"
            ));
        }
        isos.insert(n, mat);
    }
    Ok(Comparison {
        shift,
        character,
        generator: u,
        u_values,
        sigma,
        isos,
    })
}
