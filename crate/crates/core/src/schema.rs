//! JSON encodings of polynomials, modules and catalog entries.
//!
//! A polynomial is a list of terms `[[num, den], {label: exponent}]`;
//! numerators and denominators may be integers or decimal strings.
//! A module is
//! `{"ring": NAME, "generators": [degrees], "relations": [[poly per generator]],
//!   "group_action": {element: [[poly per generator] per generator]}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::{GradedRing, PresentedModule};
use crate::groups::FiniteGroup;
use crate::linalg::Q;
use crate::poly::{FreeElement, Monomial, Poly};
use crate::twisted::RingAction;

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn coeff_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let den = parse_int(&pair[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Q::new(parse_int(&pair[0])?, den))
        }
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').expect("checked");
            coeff_from_json(&json!([n, d]))
        }
        Value::Number(_) | Value::String(_) => Ok(Q::from_integer(parse_int(v)?)),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

pub fn coeff_to_json(c: &Q) -> Value {
    json!([int_json(c.numer()), int_json(c.denom())])
}

pub fn poly_from_json(v: &Value, ring: &GradedRing) -> Result<Poly> {
    let terms = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("polynomial must be a list of terms, found {v}")))?;
    let mut p = Poly::zero(ring.nvars());
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            Error::Parse(format!("term must be [coefficient, monomial], found {t}"))
        })?;
        let c = coeff_from_json(&pair[0])?;
        let mono = pair[1].as_object().ok_or_else(|| {
            Error::Parse(format!("monomial must be an object, found {}", pair[1]))
        })?;
        let mut exps = vec![0u32; ring.nvars()];
        for (label, e) in mono {
            let v = ring.index_of(label).ok_or_else(|| {
                Error::Parse(format!("unknown generator `{label}` of {}", ring.name()))
            })?;
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| Error::Parse(format!("bad exponent {e} for `{label}`")))?;
            exps[v] += e;
        }
        p.add_term(Monomial(exps), c);
    }
    Ok(p)
}

pub fn poly_to_json(p: &Poly, ring: &GradedRing) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mono: serde_json::Map<String, Value> =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| (ring.labels()[v].clone(), json!(e)))
                        .collect();
                json!([coeff_to_json(c), mono])
            })
            .collect(),
    )
}

fn free_from_json(v: &Value, ring: &GradedRing, ngens: usize) -> Result<FreeElement> {
    let row = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a list of polynomials, found {v}")))?;
    if row.len() != ngens {
        return Err(Error::Parse(format!(
            "row has {} entries for {ngens} generators",
            row.len()
        )));
    }
    row.iter().map(|p| poly_from_json(p, ring)).collect()
}

fn free_to_json(x: &FreeElement, ring: &GradedRing) -> Value {
    Value::Array(x.iter().map(|p| poly_to_json(p, ring)).collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: String,
    pub generators: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_action: Option<BTreeMap<String, Vec<Value>>>,
}

/// Reads a module over `ring`. With `action`, the module gets a group
/// action: explicit generator images for every non-identity element, or the
/// trivial action on generators when `group_action` is absent.
pub fn module_from_json(
    text: &str,
    ring: &Arc<GradedRing>,
    action: Option<&RingAction>,
) -> Result<PresentedModule> {
    let file: ModuleFile = serde_json::from_str(text)?;
    if file.ring != ring.name() {
        return Err(Error::Parse(format!(
            "module is over `{}` but this input must be over `{}`",
            file.ring,
            ring.name()
        )));
    }
    let ng = file.generators.len();
    let relations = file
        .relations
        .iter()
        .map(|r| free_from_json(r, ring, ng))
        .collect::<Result<_>>()?;
    let m = PresentedModule::new(ring.clone(), file.generators.clone(), relations)?;
    let Some(action) = action else {
        if file.group_action.is_some() {
            return Err(Error::Parse(
                "group_action given but no group acts on this side".into(),
            ));
        }
        return Ok(m);
    };
    let group = action.group();
    let Some(ga) = file.group_action else {
        return m.with_trivial_twist(action.clone());
    };
    let mut gen_action = Vec::with_capacity(group.order());
    for a in group.elements() {
        let name = group.name(a);
        match ga.get(name) {
            Some(rows) => {
                if rows.len() != ng {
                    return Err(Error::Parse(format!(
                        "action of `{name}` lists {} images for {ng} generators",
                        rows.len()
                    )));
                }
                gen_action.push(
                    rows.iter()
                        .map(|r| free_from_json(r, ring, ng))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            None if a == group.identity() => {
                gen_action.push((0..ng).map(|i| m.generator(i)).collect())
            }
            None => {
                return Err(Error::Parse(format!(
                    "group_action has no entry for element `{name}`"
                )))
            }
        }
    }
    for key in ga.keys() {
        if group.element(key).is_none() {
            return Err(Error::Parse(format!("unknown group element `{key}`")));
        }
    }
    m.with_twist(action.clone(), gen_action)
}

pub fn module_to_json(m: &PresentedModule) -> Value {
    let ring = m.ring();
    let mut out = json!({
        "ring": ring.name(),
        "generators": m.gen_degrees(),
        "relations": m.relations().iter().map(|r| free_to_json(r, ring)).collect::<Vec<_>>(),
    });
    if let Some(t) = m.twist() {
        let g = t.action.group();
        let ga: serde_json::Map<String, Value> = g
            .elements()
            .map(|a| {
                (
                    g.name(a).to_string(),
                    Value::Array(
                        t.gen_action[a]
                            .iter()
                            .map(|x| free_to_json(x, ring))
                            .collect(),
                    ),
                )
            })
            .collect();
        out["group_action"] = Value::Object(ga);
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RingJson {
    pub name: String,
    pub generators: Vec<(String, i64)>,
}

impl RingJson {
    pub fn from_ring(r: &GradedRing) -> Self {
        RingJson {
            name: r.name().into(),
            generators: r.generators(),
        }
    }

    pub fn build(&self) -> Result<GradedRing> {
        GradedRing::new(self.name.clone(), self.generators.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupJson {
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `ab`.
    pub table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            elements: g.element_names().to_vec(),
            table: g.table().to_vec(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let identity = (0..self.table.len())
            .find(|&e| self.table[e].iter().enumerate().all(|(a, &x)| x == a))
            .ok_or_else(|| {
                Error::InvalidGroup("no identity row in the multiplication table".into())
            })?;
        FiniteGroup::new(self.table.clone(), identity, Some(self.elements.clone()))
    }
}

/// Ring action as generator images per element; omitted elements and
/// generators act trivially.
pub type ActionJson = BTreeMap<String, BTreeMap<String, Value>>;

pub fn action_from_json(
    v: &ActionJson,
    group: &Arc<FiniteGroup>,
    ring: &Arc<GradedRing>,
) -> Result<RingAction> {
    for key in v.keys() {
        if group.element(key).is_none() {
            return Err(Error::Parse(format!(
                "unknown group element `{key}` in ring action"
            )));
        }
    }
    let mut images = Vec::with_capacity(group.order());
    for a in group.elements() {
        let mut imgs: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        if let Some(map) = v.get(group.name(a)) {
            for (label, p) in map {
                let i = ring.index_of(label).ok_or_else(|| {
                    Error::Parse(format!("unknown generator `{label}` of {}", ring.name()))
                })?;
                imgs[i] = poly_from_json(p, ring)?;
            }
        }
        images.push(imgs);
    }
    RingAction::new(group.clone(), ring.clone(), images)
}

pub fn action_to_json(action: &RingAction) -> ActionJson {
    let (g, ring) = (action.group(), action.ring());
    let mut out = ActionJson::new();
    for a in g.elements() {
        let mut map = BTreeMap::new();
        for (i, p) in action.images()[a].iter().enumerate() {
            if *p != ring.var(i) {
                map.insert(ring.labels()[i].clone(), poly_to_json(p, ring));
            }
        }
        if !map.is_empty() {
            out.insert(g.name(a).to_string(), map);
        }
    }
    out
}

/// A catalog entry as stored in a file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryFile {
    pub name: String,
    /// `(dim G, dim H)`.
    pub dims: (i64, i64),
    pub source_ring: RingJson,
    pub target_ring: RingJson,
    /// Image of each source generator.
    pub ring_map: BTreeMap<String, Value>,
    pub source_group: GroupJson,
    pub target_group: GroupJson,
    /// Image in the source-side group of each target-side group element.
    pub group_hom: BTreeMap<String, String>,
    #[serde(default)]
    pub source_action: ActionJson,
    #[serde(default)]
    pub target_action: ActionJson,
    pub basis: Vec<Value>,
    pub shift: i64,
    /// Values of the orientation character; omitted elements are `+1`.
    #[serde(default)]
    pub character: BTreeMap<String, i8>,
    #[serde(default)]
    pub notes: Vec<String>,
}
