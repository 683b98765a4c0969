//! Verification harness: hom spaces, adjunction bijections and triangle
//! identities, the comparison suites, the worked example and negative
//! controls. Every report is deterministic.

use std::fmt::Write as _;

use num_traits::Zero;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::functors::{
    correspondence, AdjointString, Adjunction, ComparisonCheck, Model, Side, StringFunctor,
};
use crate::graded::{hilbert_json, ModuleMorphism, PresentedModule, Window};
use crate::groups::{coinduce_group_module, find_isomorphism, induce_group_module, Character};
use crate::linalg::{fmt_q, q, Matrix, Q};
use crate::schema::EntryFile;
use crate::twisted::{
    twisted_hom, verify_coinduction_lemma, verify_induction_lemma, ChangeData, HomSpace,
    LemmaCheck, RingAction, TwistedRing,
};

/// Degree-`t` module maps `m -> n`, equivariant when both carry an action.
pub fn hom_space(
    m: &PresentedModule,
    n: &PresentedModule,
    t: i64,
    window: Window,
) -> Result<HomSpace> {
    twisted_hom(m, n, t, window)
}

/// A named module in one of the three categories.
#[derive(Clone, Debug)]
pub struct TestModule {
    pub label: String,
    pub side: Side,
    pub module: PresentedModule,
}

fn side_action(change: &ChangeData, side: Side) -> RingAction {
    match side {
        Side::Source => change.source_twist.action.clone(),
        Side::Middle => change.restricted_action(),
        Side::Target => change.target_twist.action.clone(),
    }
}

/// Free rank one, one principal torsion quotient and one character-twisted
/// torsion module.
pub fn test_modules(change: &ChangeData, side: Side) -> Result<Vec<TestModule>> {
    let action = side_action(change, side);
    let ring = action.ring().clone();
    let group = action.group().clone();
    let nv = ring.nvars();
    let power = if side == Side::Target { 4 } else { 2 };
    let regular = TwistedRing::new(action.clone()).free_rank_one();
    let group_label = if group.is_trivial() {
        String::new()
    } else {
        format!("[order {} group]", group.order())
    };
    let mut out = vec![TestModule {
        label: format!("{}{group_label} free", ring.name()),
        side,
        module: regular,
    }];
    let torsion = if nv == 0 {
        PresentedModule::free(ring.clone(), vec![0])
    } else {
        PresentedModule::new(ring.clone(), vec![0], vec![vec![ring.var(0).pow(power)]])?
    }
    .with_trivial_twist(action.clone())?;
    let torsion_label = if nv == 0 {
        "Q trivial".to_string()
    } else {
        format!("{}/({}^{power})", ring.name(), ring.labels()[0])
    };
    out.push(TestModule {
        label: torsion_label,
        side,
        module: torsion,
    });
    let killed = (0..nv).map(|v| vec![ring.var(v)]).collect();
    let base = PresentedModule::new(ring.clone(), vec![0], killed)?.with_trivial_twist(action)?;
    let (chi, chi_label) = match Character::first_sign(group.clone()) {
        Some(c) => (c, "sign"),
        None => (Character::trivial(group), "trivial"),
    };
    let twisted = base.twist_by_character(&chi)?;
    let gens = if nv == 0 {
        "Q".to_string()
    } else {
        format!("{}/({})", ring.name(), ring.labels().join(", "))
    };
    out.push(TestModule {
        label: format!("{chi_label} ⊗ {gens}"),
        side,
        module: twisted,
    });
    Ok(out)
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(fmt_q).collect())
        .collect()
}

/// The natural bijection `Hom(L N, M)_t -> Hom(N, R M)_t`, `f |-> R(f) . eta_N`,
/// and its inverse `g |-> eps_M . L(g)`.
#[derive(Clone, Debug, Serialize)]
pub struct HomBijection {
    pub left_module: String,
    pub right_module: String,
    pub degree: i64,
    pub hom_left_dim: usize,
    pub hom_right_dim: usize,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub inverse_ok: bool,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleCheck {
    pub module: String,
    pub identity: String,
    pub pass: bool,
    pub first_failure: Option<i64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub pair: String,
    pub bijections: Vec<HomBijection>,
    pub triangles: Vec<TriangleCheck>,
    pub pass: bool,
}

impl PairReport {
    /// Bijections between nonzero hom spaces.
    pub fn nontrivial_bijections(&self) -> usize {
        self.bijections
            .iter()
            .filter(|b| b.hom_left_dim > 0)
            .count()
    }

    /// One line naming the first failure, if any.
    pub fn diagnostic(&self) -> Option<String> {
        if let Some(t) = self.triangles.iter().find(|t| !t.pass) {
            return Some(match (&t.error, t.first_failure) {
                (Some(e), _) => format!("{} on {}: {e}", t.identity, t.module),
                (None, Some(d)) => format!(
                    "{} on {} is not the identity in degree {d}",
                    t.identity, t.module
                ),
                (None, None) => format!("{} on {} failed", t.identity, t.module),
            });
        }
        self.bijections
            .iter()
            .find(|b| !b.pass)
            .map(|b| match &b.error {
                Some(e) => format!(
                    "hom bijection ({}, {}) in degree {}: {e}",
                    b.left_module, b.right_module, b.degree
                ),
                None => format!(
                    "hom bijection ({}, {}) in degree {}: dims {} vs {}, det {}, inverse {}",
                    b.left_module,
                    b.right_module,
                    b.degree,
                    b.hom_left_dim,
                    b.hom_right_dim,
                    b.determinant,
                    b.inverse_ok
                ),
            })
    }
}

fn first_non_identity(f: &ModuleMorphism, window: Window) -> Option<i64> {
    window.degrees().find(|&n| !f.matrix_at(n).is_identity())
}

/// `L N`, `R L N`, `L R L N` and the unit at `N`.
struct LeftData {
    ln: PresentedModule,
    rln: PresentedModule,
    lrln: PresentedModule,
    eta: ModuleMorphism,
}

impl LeftData {
    fn new(adj: &Adjunction, n: &PresentedModule) -> Result<Self> {
        let (l, r) = (adj.left(), adj.right());
        let ln = l.apply(n)?;
        let rln = r.apply(&ln)?;
        let lrln = l.apply(&rln)?;
        let eta = adj.unit_with(n, &ln, &rln)?;
        Ok(LeftData { ln, rln, lrln, eta })
    }

    /// First degree where `eps_{LN} . L(eta_N)` is not the identity.
    fn triangle(&self, adj: &Adjunction, window: Window) -> Result<Option<i64>> {
        let l_eta = adj.left().map_with(&self.eta, &self.ln, &self.lrln)?;
        let eps = adj.counit_with(&self.ln, &self.rln, &self.lrln)?;
        Ok(first_non_identity(&eps.compose(&l_eta)?, window))
    }
}

/// `R M`, `L R M`, `R L R M` and the counit at `M`.
struct RightData {
    rm: PresentedModule,
    lrm: PresentedModule,
    rlrm: PresentedModule,
    eps: ModuleMorphism,
}

impl RightData {
    fn new(adj: &Adjunction, m: &PresentedModule) -> Result<Self> {
        let (l, r) = (adj.left(), adj.right());
        let rm = r.apply(m)?;
        let lrm = l.apply(&rm)?;
        let rlrm = r.apply(&lrm)?;
        let eps = adj.counit_with(m, &rm, &lrm)?;
        Ok(RightData { rm, lrm, rlrm, eps })
    }

    /// First degree where `R(eps_M) . eta_{RM}` is not the identity.
    fn triangle(&self, adj: &Adjunction, window: Window) -> Result<Option<i64>> {
        let r_eps = adj.right().map_with(&self.eps, &self.rlrm, &self.rm)?;
        let eta = adj.unit_with(&self.rm, &self.lrm, &self.rlrm)?;
        Ok(first_non_identity(&r_eps.compose(&eta)?, window))
    }
}

/// Hom degrees at which the bijection is checked; degree 0 is the statement
/// itself, the others catch functors that shift all generators.
pub const HOM_DEGREES: std::ops::RangeInclusive<i64> = -6..=6;

fn bijection(
    adj: &Adjunction,
    (n, nd): (&PresentedModule, &LeftData),
    (m, md): (&PresentedModule, &RightData),
    t: i64,
    window: Window,
) -> Result<HomBijection> {
    let (l, r) = (adj.left(), adj.right());
    let h1 = hom_space(&nd.ln, m, t, window)?;
    let h2 = hom_space(n, &md.rm, t, window)?;
    let not_in_span = || Error::InvariantViolation("image not in the hom space".into());
    let mut phi_cols = Vec::new();
    for f in h1.basis() {
        let g = r.map_with(&f, &nd.rln, &md.rm)?.compose(&nd.eta)?;
        phi_cols.push(h2.coords_of(&g)?.ok_or_else(not_in_span)?);
    }
    let mut psi_cols = Vec::new();
    for g in h2.basis() {
        let f = md.eps.compose(&l.map_with(&g, &nd.ln, &md.lrm)?)?;
        psi_cols.push(h1.coords_of(&f)?.ok_or_else(not_in_span)?);
    }
    let phi = Matrix::from_cols(&phi_cols, h2.dim());
    let psi = Matrix::from_cols(&psi_cols, h1.dim());
    let square = h1.dim() == h2.dim();
    let det = if square { phi.determinant() } else { Q::zero() };
    let inverse_ok = square && psi.mul(&phi).is_identity() && phi.mul(&psi).is_identity();
    let nonsingular = h1.dim() == 0 || !det.is_zero();
    Ok(HomBijection {
        left_module: String::new(),
        right_module: String::new(),
        degree: t,
        hom_left_dim: h1.dim(),
        hom_right_dim: h2.dim(),
        matrix: matrix_strings(&phi),
        determinant: fmt_q(&det),
        inverse_ok,
        pass: square && nonsingular && inverse_ok,
        error: None,
    })
}

fn failed_bijection(n: &str, m: &str, t: i64, e: &Error) -> HomBijection {
    HomBijection {
        left_module: n.into(),
        right_module: m.into(),
        degree: t,
        hom_left_dim: 0,
        hom_right_dim: 0,
        matrix: Vec::new(),
        determinant: "0".into(),
        inverse_ok: false,
        pass: false,
        error: Some(e.to_string()),
    }
}

fn triangle_check(module: &str, identity: &str, res: Result<Option<i64>>) -> TriangleCheck {
    let (first_failure, error) = match res {
        Ok(f) => (f, None),
        Err(e) => (None, Some(e.to_string())),
    };
    TriangleCheck {
        module: module.into(),
        identity: identity.into(),
        pass: first_failure.is_none() && error.is_none(),
        first_failure,
        error,
    }
}

/// Hom-set bijection for every pair of test modules in each of
/// [`HOM_DEGREES`], and both triangle identities degreewise on the window.
pub fn check_adjoint_pair(
    adj: &Adjunction,
    lefts: &[TestModule],
    rights: &[TestModule],
    window: Window,
) -> PairReport {
    const LEFT: &str = "(εL)∘(Lη)";
    const RIGHT: &str = "(Rε)∘(ηR)";
    let mut triangles = Vec::new();
    let mut left_data = Vec::new();
    for n in lefts {
        let data = LeftData::new(adj, &n.module);
        let res = match &data {
            Ok(d) => d.triangle(adj, window),
            Err(e) => Err(Error::Structural(e.to_string())),
        };
        triangles.push(triangle_check(&n.label, LEFT, res));
        left_data.push(data);
    }
    let mut right_data = Vec::new();
    for m in rights {
        let data = RightData::new(adj, &m.module);
        let res = match &data {
            Ok(d) => d.triangle(adj, window),
            Err(e) => Err(Error::Structural(e.to_string())),
        };
        triangles.push(triangle_check(&m.label, RIGHT, res));
        right_data.push(data);
    }
    let mut bijections = Vec::new();
    for (n, nd) in lefts.iter().zip(&left_data) {
        for (m, md) in rights.iter().zip(&right_data) {
            for t in HOM_DEGREES {
                let b = match (nd, md) {
                    (Ok(nd), Ok(md)) => bijection(adj, (&n.module, nd), (&m.module, md), t, window)
                        .map(|mut b| {
                            b.left_module = n.label.clone();
                            b.right_module = m.label.clone();
                            b
                        })
                        .unwrap_or_else(|e| failed_bijection(&n.label, &m.label, t, &e)),
                    (Err(e), _) | (_, Err(e)) => failed_bijection(&n.label, &m.label, t, e),
                };
                bijections.push(b);
            }
        }
    }
    let pass = triangles.iter().all(|t| t.pass) && bijections.iter().all(|b| b.pass);
    PairReport {
        pair: adj.name().to_string(),
        bijections,
        triangles,
        pass,
    }
}

/// One line of a report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub entry: String,
    pub name: String,
    pub pass: bool,
    pub diagnostic: Option<String>,
    pub detail: Value,
}

impl CheckOutcome {
    fn new(
        suite: &str,
        entry: &str,
        name: impl Into<String>,
        pass: bool,
        diagnostic: Option<String>,
        detail: Value,
    ) -> Self {
        CheckOutcome {
            suite: suite.into(),
            entry: entry.into(),
            name: name.into(),
            pass,
            diagnostic,
            detail,
        }
    }

    fn error(suite: &str, entry: &str, name: impl Into<String>, e: &Error) -> Self {
        CheckOutcome::new(suite, entry, name, false, Some(e.to_string()), Value::Null)
    }

    fn from_comparison(suite: &str, entry: &str, module: &str, c: &ComparisonCheck) -> Self {
        let diagnostic = if c.pass {
            c.note.clone()
        } else {
            Some(match (c.first_failure, &c.note) {
                (Some(d), _) => format!("comparison map not invertible in degree {d}"),
                (None, Some(n)) => n.clone(),
                (None, None) => "comparison failed".into(),
            })
        };
        let detail = serde_json::to_value(c).unwrap_or(Value::Null);
        CheckOutcome::new(
            suite,
            entry,
            format!("{} on {module}", c.name),
            c.pass,
            diagnostic,
            detail,
        )
    }

    fn from_lemma(suite: &str, entry: &str, module: &str, c: &LemmaCheck) -> Self {
        let diagnostic = c
            .first_failure
            .map(|d| format!("lemma fails in degree {d}"));
        let detail = serde_json::to_value(c).unwrap_or(Value::Null);
        CheckOutcome::new(
            suite,
            entry,
            format!("{} lemma on {module}", c.name),
            c.pass,
            diagnostic,
            detail,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub window: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(title: impl Into<String>, window: Window) -> Self {
        Report {
            title: title.into(),
            window: window.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "window": self.window,
            "pass": self.pass(),
            "checks": self.checks,
        })
    }

    /// Fixed-width table, one row per check.
    pub fn table(&self) -> String {
        let w_suite = self
            .checks
            .iter()
            .map(|c| c.suite.chars().count())
            .max()
            .unwrap_or(5)
            .max(5);
        let w_entry = self
            .checks
            .iter()
            .map(|c| c.entry.chars().count())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{} (window {})", self.title, self.window);
        let _ = writeln!(
            out,
            "{:<w_suite$}  {:<w_entry$}  result  check",
            "suite", "entry"
        );
        for c in &self.checks {
            let _ = write!(
                out,
                "{:<w_suite$}  {:<w_entry$}  {:<6}  {}",
                c.suite,
                c.entry,
                if c.pass { "pass" } else { "FAIL" },
                c.name
            );
            if let Some(d) = &c.diagnostic {
                let _ = write!(out, " [{d}]");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} failed: {}",
            self.checks.len(),
            failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn pair_outcome(suite: &str, entry: &str, report: &PairReport) -> CheckOutcome {
    let detail = serde_json::to_value(report).unwrap_or(Value::Null);
    CheckOutcome::new(
        suite,
        entry,
        report.pair.clone(),
        report.pass,
        report.diagnostic(),
        detail,
    )
}

/// The four adjacent adjunctions of the string, or only the one whose left
/// member is `only`.
pub fn adjunction_suite(
    entry: &CatalogEntry,
    string: &AdjointString,
    only: Option<StringFunctor>,
    window: Window,
) -> Result<Vec<PairReport>> {
    let mut out = Vec::new();
    for (k, adj) in string.pairs().iter().enumerate() {
        let left = StringFunctor::ALL[k];
        if only.is_some_and(|f| f != left) {
            continue;
        }
        let lefts = test_modules(&entry.change, left.domain())?;
        let rights = test_modules(&entry.change, StringFunctor::ALL[k + 1].domain())?;
        out.push(check_adjoint_pair(adj, &lefts, &rights, window));
    }
    Ok(out)
}

/// Both small-object equivalences and both routes to the outer functors,
/// plus the dualizing comparison itself.
pub fn smallness_suite(entry: &CatalogEntry, window: Window) -> Result<Vec<CheckOutcome>> {
    let suite = "smallness";
    let conn = &entry.connected;
    let summary = conn.dualizing().summary(window);
    let mut out = vec![CheckOutcome::new(
        suite,
        &entry.name,
        "dualizing comparison D ≅ Σ^shift(character ⊗ S)",
        conn.dualizing().comparison().is_ok(),
        conn.dualizing().comparison().err().map(|e| e.to_string()),
        serde_json::to_value(&summary).unwrap_or(Value::Null),
    )];
    for m in test_modules(&entry.change, Side::Middle)? {
        out.push(CheckOutcome::from_comparison(
            suite,
            &entry.name,
            &m.label,
            &conn.check_coextension(&m.module, window),
        ));
        out.push(CheckOutcome::from_comparison(
            suite,
            &entry.name,
            &m.label,
            &conn.check_extension(&m.module, window),
        ));
    }
    for n in test_modules(&entry.change, Side::Target)? {
        out.push(CheckOutcome::from_comparison(
            suite,
            &entry.name,
            &n.label,
            &conn.check_dagger(&n.module, window),
        ));
        out.push(CheckOutcome::from_comparison(
            suite,
            &entry.name,
            &n.label,
            &conn.check_shriek(&n.module, window),
        ));
    }
    Ok(out)
}

/// Presented induction and coinduction against the group-algebra models,
/// on the intermediate test modules and the restrictions of the target ones.
pub fn twisted_lemma_suite(entry: &CatalogEntry, window: Window) -> Result<Vec<CheckOutcome>> {
    let suite = "twisted";
    let c = &entry.change;
    let mut modules = test_modules(c, Side::Middle)?;
    for n in test_modules(c, Side::Target)? {
        let restricted = entry.connected.restrict(&n.module)?;
        modules.push(TestModule {
            label: format!("θ_e^*({})", n.label),
            side: Side::Middle,
            module: restricted,
        });
    }
    let mut out = Vec::new();
    for m in &modules {
        let a = &c.source_twist.action;
        match verify_induction_lemma(&c.group_hom, a, &m.module, window) {
            Ok(l) => out.push(CheckOutcome::from_lemma(suite, &entry.name, &m.label, &l)),
            Err(e) => out.push(CheckOutcome::error(
                suite,
                &entry.name,
                format!("induction lemma on {}", m.label),
                &e,
            )),
        }
        match verify_coinduction_lemma(&c.group_hom, a, &m.module, window) {
            Ok(l) => out.push(CheckOutcome::from_lemma(suite, &entry.name, &m.label, &l)),
            Err(e) => out.push(CheckOutcome::error(
                suite,
                &entry.name,
                format!("coinduction lemma on {}", m.label),
                &e,
            )),
        }
    }
    Ok(out)
}

/// `ī_* -| ī^* -| ī_!` on the group level, and for injective `ī` an explicit
/// isomorphism `ī_* N ≅ ī_! N` between the quotient and function models.
pub fn finite_group_suite(
    entry: &CatalogEntry,
    string: &AdjointString,
    window: Window,
) -> Result<Vec<CheckOutcome>> {
    let suite = "finite-group";
    let c = &entry.change;
    let middle = test_modules(c, Side::Middle)?;
    let source = test_modules(c, Side::Source)?;
    let blocks = string.building_blocks();
    let mut out = vec![
        pair_outcome(
            suite,
            &entry.name,
            &check_adjoint_pair(&blocks[0], &middle, &source, window),
        ),
        pair_outcome(
            suite,
            &entry.name,
            &check_adjoint_pair(&blocks[1], &source, &middle, window),
        ),
    ];
    let h = &c.group_hom;
    for n in &middle {
        let mut degrees = Vec::new();
        let mut pass = true;
        let mut diagnostic = None;
        for deg in window.degrees() {
            let Some(nb) = n.module.group_module_at(deg) else {
                continue;
            };
            if nb.dim() == 0 {
                continue;
            }
            let ind = induce_group_module(h, &nb)?;
            let coind = coinduce_group_module(h, &nb)?;
            let iso = if h.is_injective() {
                find_isomorphism(&ind.module, &coind.module)?
            } else {
                None
            };
            if h.is_injective() && iso.is_none() && diagnostic.is_none() {
                pass = false;
                diagnostic = Some(format!("no isomorphism ī_* ≅ ī_! in degree {deg}"));
            }
            degrees.push(json!({
                "degree": deg,
                "n_dim": nb.dim(),
                "induced_dim": ind.module.dim(),
                "coinduced_dim": coind.module.dim(),
                "isomorphism": iso.as_ref().map(matrix_strings),
            }));
        }
        let name = if h.is_injective() {
            format!("ī_* ≅ ī_! on {}", n.label)
        } else {
            format!("ī_*, ī_! dimensions on {} (ī not injective)", n.label)
        };
        out.push(CheckOutcome::new(
            suite,
            &entry.name,
            name,
            pass,
            diagnostic,
            Value::Array(degrees),
        ));
    }
    Ok(out)
}

/// Both tables, as data, with their slices checked against the pair reports.
pub fn correspondence_suite(entry: &str, pairs: &[PairReport]) -> Vec<CheckOutcome> {
    let suite = "correspondence";
    let em = correspondence(Model::EilenbergMoore);
    let k2 = correspondence(Model::KoszulII);
    let mut out = vec![CheckOutcome::new(
        suite,
        entry,
        "EilenbergMoore and KoszulII tables differ",
        em != k2,
        None,
        json!({ "EilenbergMoore": em, "KoszulII": k2 }),
    )];
    for table in [em, k2] {
        let mut pass = table.is_consecutive();
        let mut diagnostic = (!pass).then(|| "slice is not consecutive in the string".to_string());
        for left in table.pair_lefts() {
            match pairs.get(left.index()) {
                Some(p) if p.pass => {}
                Some(p) => {
                    pass = false;
                    diagnostic.get_or_insert_with(|| {
                        format!("{}: {}", p.pair, p.diagnostic().unwrap_or_default())
                    });
                }
                None => {
                    pass = false;
                    diagnostic
                        .get_or_insert_with(|| format!("pair starting at {left} was not checked"));
                }
            }
        }
        let slice: Vec<String> = table
            .slice()
            .iter()
            .map(|f| f.symbol().to_string())
            .collect();
        out.push(CheckOutcome::new(
            suite,
            entry,
            format!(
                "{} slice {} is an adjoint triple",
                table.model,
                slice.join(" ⊣ ")
            ),
            pass,
            diagnostic,
            serde_json::to_value(&table).unwrap_or(Value::Null),
        ));
    }
    out
}

/// All suites for one entry. With `only`, just that adjacent pair.
pub fn check_entry(entry: &CatalogEntry, only: Option<StringFunctor>, window: Window) -> Report {
    let mut report = Report::new(format!("checks for {}", entry.name), window);
    let string = match entry.adjoint_string() {
        Ok(s) => s,
        Err(e) => {
            report.checks.push(CheckOutcome::error(
                "adjunction",
                &entry.name,
                "assemble adjoint string",
                &e,
            ));
            return report;
        }
    };
    let pairs = match adjunction_suite(entry, &string, only, window) {
        Ok(p) => p,
        Err(e) => {
            report.checks.push(CheckOutcome::error(
                "adjunction",
                &entry.name,
                "adjoint string",
                &e,
            ));
            return report;
        }
    };
    report.checks.extend(
        pairs
            .iter()
            .map(|p| pair_outcome("adjunction", &entry.name, p)),
    );
    if only.is_some() {
        return report;
    }
    let mut push = |suite: &str, r: Result<Vec<CheckOutcome>>| match r {
        Ok(v) => report.checks.extend(v),
        Err(e) => report
            .checks
            .push(CheckOutcome::error(suite, &entry.name, "suite setup", &e)),
    };
    push("smallness", smallness_suite(entry, window));
    push("twisted", twisted_lemma_suite(entry, window));
    push("finite-group", finite_group_suite(entry, &string, window));
    report
        .checks
        .extend(correspondence_suite(&entry.name, &pairs));
    report
}

/// Every built-in entry.
pub fn check_all(window: Window) -> Result<Report> {
    let mut report = Report::new("checks for all catalog entries", window);
    for name in catalog::NAMES {
        let entry = catalog::load_entry(name)?;
        report.extend(check_entry(&entry, None, window));
    }
    Ok(report)
}

/// Window of the worked example.
pub const EXAMPLE_WINDOW: Window = Window { lo: -40, hi: 4 };

fn trace(m: &PresentedModule, a: usize, n: i64) -> i64 {
    let mat = m.group_matrix(a, n);
    let t: Q = (0..mat.rows()).map(|i| mat[(i, i)].clone()).sum();
    t.to_integer().try_into().expect("small trace")
}

/// `SO(3) ⊃ O(2)`: the dualizing module is `c^{-1} Q[c] ≅ Σ²(Q̃ ⊗ Q[c])`,
/// `θ_* = Q[c] ⊗_{Q[d]} -`, `θ^† = Σ²(Q̃ ⊗ -)_W` and `θ^* = (-)^W`, each
/// compared degreewise with independent counts from the input.
pub fn reproduce_paper_example(window: Window) -> Result<Report> {
    let suite = "example";
    let entry = catalog::load_entry("so3_o2")?;
    let name = entry.name.clone();
    let mut report = Report::new("SO(3) ⊃ O(2)", window);
    let w = entry
        .change
        .target_twist
        .group
        .element("w")
        .ok_or_else(|| Error::Structural("no element w".into()))?;

    // (a) the dualizing module
    let dual = entry.connected.dualizing();
    let d = &dual.underlying;
    let mut bad = None;
    for n in window.degrees() {
        let expected = usize::from(n <= 2 && n % 2 == 0);
        if d.dim(n) != expected && bad.is_none() {
            bad = Some(format!("dim D_{n} = {}, expected {expected}", d.dim(n)));
        }
    }
    let top = d.group_matrix(w, 2);
    let sign_ok = top.rows() == 1 && top[(0, 0)] == q(-1);
    if !sign_ok && bad.is_none() {
        bad = Some("W does not act by -1 on the degree 2 generator".into());
    }
    if let Err(e) = dual.comparison() {
        bad.get_or_insert_with(|| e.to_string());
    }
    report.checks.push(CheckOutcome::new(
        suite,
        &name,
        "D = Hom_{Q[d]}(Q[c], Q[d]) ≅ c⁻¹·Q[c] ≅ Σ²(Q̃ ⊗ Q[c])",
        bad.is_none(),
        bad,
        serde_json::to_value(dual.summary(window)).unwrap_or(Value::Null),
    ));

    let triple =
        crate::functors::assemble_general_triple(&entry.change, entry.verified.clone(), window)?;
    let [dagger, lower, upper] = &triple;
    let r = entry.source_ring().clone();
    let s = entry.target_ring().clone();
    let ra = entry.change.source_twist.action.clone();
    let sa = entry.change.target_twist.action.clone();
    let dv = r.var(0);
    let cv = s.var(0);
    let mut sources = vec![
        ("Q[d]", TwistedRing::new(ra.clone()).free_rank_one()),
        (
            "Q[d]/(d)",
            PresentedModule::new(r.clone(), vec![0], vec![vec![dv.clone()]])?
                .with_trivial_twist(ra.clone())?,
        ),
        (
            "Q[d]/(d^2)",
            PresentedModule::new(r.clone(), vec![0], vec![vec![dv.pow(2)]])?
                .with_trivial_twist(ra.clone())?,
        ),
    ];
    sources.push((
        "Σ^-2 Q[d]/(d^3) ⊕ Q[d]/(d)",
        PresentedModule::new(
            r.clone(),
            vec![-2, 0],
            vec![vec![dv.pow(3), r.zero()], vec![r.zero(), dv.clone()]],
        )?
        .with_trivial_twist(ra)?,
    ));
    let sign =
        Character::first_sign(entry.change.target_twist.group.clone()).expect("W has a sign");
    let c_torsion = PresentedModule::new(s.clone(), vec![0], vec![vec![cv.clone()]])?
        .with_trivial_twist(sa.clone())?;
    let targets = vec![
        ("Q[c][W]", TwistedRing::new(sa.clone()).free_rank_one()),
        (
            "Q[c]",
            PresentedModule::free(s.clone(), vec![0]).with_trivial_twist(sa.clone())?,
        ),
        (
            "Q[c]/(c^4)",
            PresentedModule::new(s.clone(), vec![0], vec![vec![cv.pow(4)]])?
                .with_trivial_twist(sa.clone())?,
        ),
        ("Q̃ ⊗ Q[c]/(c)", c_torsion.twist_by_character(&sign)?),
        ("Q[c]/(c)", c_torsion),
    ];

    // (b) θ_*: (Q[c] ⊗ M)_n = M_n ⊕ c M_{n+2}, with w = +1 and -1 on the summands.
    for (label, m) in &sources {
        let out = lower.apply(m)?;
        let first = window.degrees().find(|&n| {
            let (a, b) = (m.dim(n) as i64, m.dim(n + 2) as i64);
            out.dim(n) as i64 != a + b || trace(&out, w, n) != a - b
        });
        report.checks.push(CheckOutcome::new(
            suite,
            &name,
            format!("θ_*({label}) = Q[c] ⊗_{{Q[d]}} {label}"),
            first.is_none(),
            first.map(|n| format!("dimension or W-trace differs in degree {n}")),
            json!({ "hilbert": hilbert_json(&out.hilbert_function(window)) }),
        ));
    }
    // (c) θ^†: Σ² of the sign-isotypic part; (d) θ^*: the invariant part.
    for (label, n_mod) in &targets {
        let dag = dagger.apply(n_mod)?;
        let first = window.degrees().find(|&n| {
            let (d2, t2) = (n_mod.dim(n - 2) as i64, trace(n_mod, w, n - 2));
            dag.dim(n) as i64 != (d2 - t2) / 2
        });
        report.checks.push(CheckOutcome::new(
            suite,
            &name,
            format!("θ^†({label}) = Σ²(Q̃ ⊗ {label})_W"),
            first.is_none(),
            first.map(|n| format!("dimension differs in degree {n}")),
            json!({ "hilbert": hilbert_json(&dag.hilbert_function(window)) }),
        ));
        let up = upper.apply(n_mod)?;
        let first = window.degrees().find(|&n| {
            let (d0, t0) = (n_mod.dim(n) as i64, trace(n_mod, w, n));
            up.dim(n) as i64 != (d0 + t0) / 2
        });
        report.checks.push(CheckOutcome::new(
            suite,
            &name,
            format!("θ^*({label}) = ({label})^W"),
            first.is_none(),
            first.map(|n| format!("dimension differs in degree {n}")),
            json!({ "hilbert": hilbert_json(&up.hilbert_function(window)) }),
        ));
    }
    // The sign c-torsion module in degree 0 goes to Q in degree 2.
    let sign_mod = &targets[3].1;
    let dag = dagger.apply(sign_mod)?;
    let hf = dag.hilbert_function(window);
    let ok = hf.iter().all(|(&n, &d)| d == usize::from(n == 2));
    report.checks.push(CheckOutcome::new(
        suite,
        &name,
        "θ^†(Q̃ ⊗ Q[c]/(c)) = Q in degree 2",
        ok,
        (!ok).then(|| format!("Hilbert function {hf:?}")),
        json!({ "hilbert": hilbert_json(&hf) }),
    ));
    Ok(report)
}

/// A corrupted input and whether the harness rejected it.
#[derive(Clone, Debug, Serialize)]
pub struct ControlOutcome {
    pub name: String,
    pub rejected: bool,
    pub diagnostic: String,
}

fn control_from_load(name: &str, file: EntryFile) -> ControlOutcome {
    match CatalogEntry::from_file(file) {
        Ok(_) => ControlOutcome {
            name: name.into(),
            rejected: false,
            diagnostic: "accepted".into(),
        },
        Err(e) => ControlOutcome {
            name: name.into(),
            rejected: true,
            diagnostic: e.to_string(),
        },
    }
}

fn builtin_file(name: &str) -> Result<EntryFile> {
    Ok(serde_json::from_value(catalog::builtin_json(name)?)?)
}

/// Corrupted inputs that every check must reject with a precise message.
pub fn negative_controls(window: Window) -> Result<Vec<ControlOutcome>> {
    let mut out = Vec::new();
    let entry = catalog::load_entry("so3_o2")?;
    let string = entry.adjoint_string()?;

    let corrupted = string
        .pair(StringFunctor::ThetaLowerStar)
        .expect("pair")
        .with_scaled_unit(q(2));
    let lefts = test_modules(&entry.change, Side::Source)?;
    let rights = test_modules(&entry.change, Side::Target)?;
    let report = check_adjoint_pair(&corrupted, &lefts[1..2], &rights[1..2], window);
    out.push(ControlOutcome {
        name: "unit of θ_* ⊣ θ^* scaled by 2".into(),
        rejected: !report.pass,
        diagnostic: report.diagnostic().unwrap_or_else(|| "passed".into()),
    });

    let mut f = builtin_file("so3_o2")?;
    f.shift = 3;
    out.push(control_from_load("so3_o2 with shift 3", f));

    let mut f = builtin_file("so3_o2")?;
    f.character.clear();
    out.push(control_from_load("so3_o2 with trivial character", f));

    let mut f = builtin_file("so3_o2")?;
    f.dims = (4, 2);
    f.shift = 2;
    f.basis.truncate(1);
    out.push(control_from_load("so3_o2 with basis {1}", f));

    let mut f = builtin_file("so3_o2")?;
    f.target_action.clear();
    out.push(control_from_load(
        "so3_o2 with W acting trivially on Q[c]",
        f,
    ));

    let mut f = builtin_file("s3_c2")?;
    f.group_hom.insert("g".into(), "(123)".into());
    out.push(control_from_load(
        "s3_c2 with an element of order 2 sent to a 3-cycle",
        f,
    ));

    let s = entry.target_ring().clone();
    let sa = entry.change.target_twist.action.clone();
    let nv = s.nvars();
    let doubled = vec![
        vec![vec![crate::poly::Poly::one(nv)]],
        vec![vec![crate::poly::Poly::constant(q(2), nv)]],
    ];
    let res = PresentedModule::free(s.clone(), vec![0]).with_twist(sa.clone(), doubled);
    out.push(ControlOutcome {
        name: "w acting by 2 on a generator".into(),
        rejected: res.is_err(),
        diagnostic: res
            .err()
            .map(|e| e.to_string())
            .unwrap_or_else(|| "accepted".into()),
    });

    let bad_shift = crate::functors::Connected::untwisted(entry.verified.clone(), 0, window);
    out.push(ControlOutcome {
        name: "dualizing comparison with shift 0".into(),
        rejected: bad_shift.is_err(),
        diagnostic: bad_shift
            .err()
            .map(|e| e.to_string())
            .unwrap_or_else(|| "accepted".into()),
    });
    Ok(out)
}
