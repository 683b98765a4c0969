//! Built-in group pairs with their rings, maps, actions, basis certificates
//! and tangent data.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functors::{AdjointString, Connected};
use crate::graded::{verify_basis_certificate, GradedRing, RingMap, VerifiedBasis, Window};
use crate::groups::{Character, FiniteGroup, GroupHom};
use crate::poly::Poly;
use crate::schema::{action_from_json, poly_from_json, EntryFile, GroupJson, RingJson};
use crate::twisted::{ChangeData, ShiftCharacter, TwistedRing};

/// A validated entry: compatibility, basis certificate, shift and the
/// dualizing comparison all pass on the default window.
pub struct CatalogEntry {
    pub name: String,
    pub dims: (i64, i64),
    pub change: ChangeData,
    pub basis: Vec<Poly>,
    pub verified: Arc<VerifiedBasis>,
    pub connected: Arc<Connected>,
    pub notes: Vec<String>,
    file: EntryFile,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .finish()
    }
}

impl CatalogEntry {
    pub fn from_file(file: EntryFile) -> Result<Self> {
        let r = Arc::new(file.source_ring.build()?);
        let s = Arc::new(file.target_ring.build()?);
        let images = r
            .labels()
            .iter()
            .map(|l| {
                let v = file
                    .ring_map
                    .get(l)
                    .ok_or_else(|| Error::Parse(format!("ring_map has no image for `{l}`")))?;
                poly_from_json(v, &s)
            })
            .collect::<Result<Vec<_>>>()?;
        for key in file.ring_map.keys() {
            if r.index_of(key).is_none() {
                return Err(Error::Parse(format!(
                    "ring_map names unknown generator `{key}`"
                )));
            }
        }
        let ring_map = RingMap::new(r.clone(), s.clone(), images)?;
        let a = Arc::new(file.source_group.build()?);
        let b = Arc::new(file.target_group.build()?);
        let map = b
            .elements()
            .map(|x| {
                let img = file.group_hom.get(b.name(x)).ok_or_else(|| {
                    Error::Parse(format!("group_hom has no image for `{}`", b.name(x)))
                })?;
                a.element(img).ok_or_else(|| {
                    Error::Parse(format!("group_hom image `{img}` is not an element"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let group_hom = GroupHom::new(b.clone(), a.clone(), map)?;
        let source_twist = TwistedRing::new(action_from_json(&file.source_action, &a, &r)?);
        let target_twist = TwistedRing::new(action_from_json(&file.target_action, &b, &s)?);
        for key in file.character.keys() {
            if b.element(key).is_none() {
                return Err(Error::Parse(format!(
                    "character names unknown element `{key}`"
                )));
            }
        }
        let values = b
            .elements()
            .map(|x| file.character.get(b.name(x)).copied().unwrap_or(1))
            .collect();
        let character = Character::new(b.clone(), values)?;
        let shift = ShiftCharacter {
            shift: file.shift,
            character,
        };
        let change = ChangeData::new(
            ring_map.clone(),
            group_hom,
            source_twist,
            target_twist,
            shift,
        )?;
        let (dim_g, dim_h) = file.dims;
        if file.shift != dim_g - dim_h {
            return Err(Error::InvariantViolation(format!(
                "shift {} differs from dim G - dim H = {dim_g} - {dim_h}",
                file.shift
            )));
        }
        if change.group_hom.is_injective() && file.shift < 0 {
            return Err(Error::InvariantViolation(
                "negative shift for a subgroup".into(),
            ));
        }
        let basis = file
            .basis
            .iter()
            .map(|v| poly_from_json(v, &s))
            .collect::<Result<Vec<_>>>()?;
        let vb = Arc::new(verify_basis_certificate(
            &ring_map,
            basis.clone(),
            Window::DEFAULT,
        )?);
        vb.check_associativity()?;
        let connected = Arc::new(Connected::new(
            vb.clone(),
            change.restricted_action(),
            change.target_twist.action.clone(),
            change.shift.clone(),
            Window::DEFAULT,
        )?);
        Ok(CatalogEntry {
            name: file.name.clone(),
            dims: file.dims,
            change,
            basis,
            verified: vb,
            connected,
            notes: file.notes.clone(),
            file,
        })
    }

    pub fn file(&self) -> &EntryFile {
        &self.file
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.file).expect("entry serializes")
    }

    pub fn source_ring(&self) -> &Arc<GradedRing> {
        self.change.ring_map.source()
    }

    pub fn target_ring(&self) -> &Arc<GradedRing> {
        self.change.ring_map.target()
    }

    pub fn adjoint_string(&self) -> Result<AdjointString> {
        AdjointString::from_connected(&self.change, self.connected.clone())
    }

    /// Human-readable dump.
    pub fn describe(&self) -> String {
        let c = &self.change;
        let mut out = String::new();
        out.push_str(&format!("entry: {}\n", self.name));
        out.push_str(&format!(
            "dims: dim G = {}, dim H = {}\n",
            self.dims.0, self.dims.1
        ));
        out.push_str(&format!(
            "source ring: {}\n",
            c.ring_map.source().describe()
        ));
        out.push_str(&format!(
            "target ring: {}\n",
            c.ring_map.target().describe()
        ));
        for line in c.ring_map.describe() {
            out.push_str(&format!("ring map: {line}\n"));
        }
        let group_line =
            |g: &FiniteGroup| format!("{} ({})", g.order(), g.element_names().join(", "));
        out.push_str(&format!(
            "source group: order {}\n",
            group_line(c.source_twist.group.as_ref())
        ));
        out.push_str(&format!(
            "target group: order {}\n",
            group_line(c.target_twist.group.as_ref())
        ));
        let hom: Vec<String> = c
            .group_hom
            .source()
            .elements()
            .map(|x| {
                format!(
                    "{} ↦ {}",
                    c.group_hom.source().name(x),
                    c.group_hom.target().name(c.group_hom.apply(x))
                )
            })
            .collect();
        out.push_str(&format!("group map: {}\n", hom.join(", ")));
        for line in c.source_twist.action.describe() {
            out.push_str(&format!("source action: {line}\n"));
        }
        for line in c.target_twist.action.describe() {
            out.push_str(&format!("target action: {line}\n"));
        }
        out.push_str(&format!("basis: {}\n", self.verified.describe().join(", ")));
        let chi: Vec<String> = c
            .target_twist
            .group
            .elements()
            .map(|x| {
                format!(
                    "{}: {:+}",
                    c.target_twist.group.name(x),
                    c.shift.character.value(x)
                )
            })
            .collect();
        out.push_str(&format!(
            "shift: {}\ncharacter: {}\n",
            c.shift.shift,
            chi.join(", ")
        ));
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn poly(terms: &[(i64, &[(&str, u32)])]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(c, mono)| {
                let m: serde_json::Map<String, Value> = mono
                    .iter()
                    .map(|(l, e)| (l.to_string(), json!(e)))
                    .collect();
                json!([[c, 1], m])
            })
            .collect(),
    )
}

fn one() -> Value {
    poly(&[(1, &[])])
}

fn ring(name: &str, gens: &[(&str, i64)]) -> RingJson {
    RingJson {
        name: name.into(),
        generators: gens.iter().map(|(l, d)| (l.to_string(), *d)).collect(),
    }
}

fn action(element: &str, images: &[(&str, Value)]) -> BTreeMap<String, BTreeMap<String, Value>> {
    let inner = images
        .iter()
        .map(|(l, v)| (l.to_string(), v.clone()))
        .collect();
    BTreeMap::from([(element.to_string(), inner)])
}

fn hom(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Names of the built-in entries.
pub const NAMES: [&str; 6] = [
    "so3_o2",
    "so3_so2",
    "su2_t",
    "g_g",
    "s3_c2",
    "s3_quotient_c2",
];

pub fn names() -> Vec<&'static str> {
    NAMES.to_vec()
}

fn builtin_file(name: &str) -> Option<EntryFile> {
    let trivial = GroupJson::from_group(&FiniteGroup::trivial());
    let weyl = GroupJson::from_group(&FiniteGroup::weyl_c2());
    let c2 = GroupJson::from_group(&FiniteGroup::cyclic(2));
    let s3 = GroupJson::from_group(&FiniteGroup::symmetric3());
    let qd = ring("Q[d]", &[("d", -4)]);
    let qc = ring("Q[c]", &[("c", -2)]);
    let q = ring("Q", &[]);
    let neg_c = poly(&[(-1, &[("c", 1)])]);
    let c = poly(&[(1, &[("c", 1)])]);
    let file = match name {
        "so3_o2" => EntryFile {
            name: name.into(),
            dims: (3, 1),
            source_ring: qd,
            target_ring: qc,
            ring_map: BTreeMap::from([("d".to_string(), poly(&[(1, &[("c", 2)])]))]),
            source_group: trivial,
            target_group: weyl,
            group_hom: hom(&[("e", "e"), ("w", "e")]),
            source_action: BTreeMap::new(),
            target_action: action("w", &[("c", neg_c)]),
            basis: vec![one(), c],
            shift: 2,
            character: BTreeMap::from([("w".to_string(), -1)]),
            notes: strings(&[
                "H*(BSO(3)) = Q[d], H*(BSO(2)) = Q[c], d ↦ c^2",
                "component group of O(2) is the Weyl group W = C2, acting by c ↦ -c",
                "W acts on the tangent line of SO(3)/O(2) by the sign",
            ]),
        },
        "so3_so2" => EntryFile {
            name: name.into(),
            dims: (3, 1),
            source_ring: qd,
            target_ring: qc,
            ring_map: BTreeMap::from([("d".to_string(), poly(&[(1, &[("c", 2)])]))]),
            source_group: trivial.clone(),
            target_group: trivial,
            group_hom: hom(&[("e", "e")]),
            source_action: BTreeMap::new(),
            target_action: BTreeMap::new(),
            basis: vec![one(), c],
            shift: 2,
            character: BTreeMap::new(),
            notes: strings(&["connected pair SO(2) in SO(3)"]),
        },
        "su2_t" => EntryFile {
            name: name.into(),
            dims: (3, 1),
            source_ring: ring("Q[c2]", &[("c2", -4)]),
            target_ring: ring("Q[x]", &[("x", -2)]),
            ring_map: BTreeMap::from([("c2".to_string(), poly(&[(1, &[("x", 2)])]))]),
            source_group: trivial,
            target_group: weyl,
            group_hom: hom(&[("e", "e"), ("w", "e")]),
            source_action: BTreeMap::new(),
            target_action: action("w", &[("x", poly(&[(-1, &[("x", 1)])]))]),
            basis: vec![one(), poly(&[(1, &[("x", 1)])])],
            shift: 2,
            character: BTreeMap::from([("w".to_string(), -1)]),
            notes: strings(&[
                "maximal torus T of SU(2) together with its Weyl group: the subgroup is the normalizer N(T), \
                 whose component group W = C2 acts on H*(BT) = Q[x] by x ↦ -x",
                "c2 ↦ x^2",
            ]),
        },
        "g_g" => EntryFile {
            name: name.into(),
            dims: (1, 1),
            source_ring: qc.clone(),
            target_ring: qc,
            ring_map: BTreeMap::from([("c".to_string(), c.clone())]),
            source_group: weyl.clone(),
            target_group: weyl,
            group_hom: hom(&[("e", "e"), ("w", "w")]),
            source_action: action("w", &[("c", neg_c.clone())]),
            target_action: action("w", &[("c", neg_c)]),
            basis: vec![one()],
            shift: 0,
            character: BTreeMap::new(),
            notes: strings(&["H = G = O(2): every functor in the string is the identity"]),
        },
        "s3_c2" => EntryFile {
            name: name.into(),
            dims: (0, 0),
            source_ring: q.clone(),
            target_ring: q,
            ring_map: BTreeMap::new(),
            source_group: s3,
            target_group: c2,
            group_hom: hom(&[("e", "e"), ("g", "(12)")]),
            source_action: BTreeMap::new(),
            target_action: BTreeMap::new(),
            basis: vec![one()],
            shift: 0,
            character: BTreeMap::new(),
            notes: strings(&["finite pair: C2 generated by a transposition inside S3"]),
        },
        "s3_quotient_c2" => EntryFile {
            name: name.into(),
            dims: (0, 0),
            source_ring: q.clone(),
            target_ring: q,
            ring_map: BTreeMap::new(),
            source_group: c2,
            target_group: s3,
            group_hom: hom(&[
                ("e", "e"),
                ("(12)", "g"),
                ("(13)", "g"),
                ("(23)", "g"),
                ("(123)", "e"),
                ("(132)", "e"),
            ]),
            source_action: BTreeMap::new(),
            target_action: BTreeMap::new(),
            basis: vec![one()],
            shift: 0,
            character: BTreeMap::new(),
            notes: strings(&["finite groups along the sign map S3 -> C2, which is not injective"]),
        },
        _ => return None,
    };
    Some(file)
}

pub fn load_entry(name: &str) -> Result<CatalogEntry> {
    let file = builtin_file(name).ok_or_else(|| Error::UnknownEntry {
        name: name.into(),
        available: NAMES.join(", "),
    })?;
    CatalogEntry::from_file(file)
}

pub fn entry_from_json(text: &str) -> Result<CatalogEntry> {
    let file: EntryFile = serde_json::from_str(text)?;
    CatalogEntry::from_file(file)
}

pub fn load_entry_file(path: &Path) -> Result<CatalogEntry> {
    entry_from_json(&std::fs::read_to_string(path)?)
}

/// The raw file of a built-in entry, before validation.
pub fn builtin_json(name: &str) -> Result<Value> {
    let file = builtin_file(name).ok_or_else(|| Error::UnknownEntry {
        name: name.into(),
        available: NAMES.join(", "),
    })?;
    Ok(serde_json::to_value(file)?)
}
