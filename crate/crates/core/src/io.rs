//! JSON forms of index categories and diagrams.
//!
//! An index is either a reference string or an inline category:
//!
//! - `fskel:N`: `F≤N`
//! - `gstar:N,Q`: `G*` over `F≤N` with tuples of length at most `Q`
//! - `gstar-smash:N,Q`: its full subcategory on tuples whose smash is at most `N`
//! - `simplex:D,Q`: tuples over pointed `Δᵒᵖ` on `[0..D]`
//! - `delta:D`: pointed `Δᵒᵖ` on `[0..D]`
//! - `walking-arrow`, `walking-iso`, `terminal`
//!
//! A set-valued diagram lists the cardinalities of its nonbase parts in
//! object order and, in morphism order, the image of `1..=dom` for every
//! morphism. A category-valued diagram lists categories and functor tables.
//! `{"index": ..., "representable": "(2)"}` is shorthand for a representable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{CategoryJson, FinCategory, FunctorTable, ObjId};
use crate::diagram::{CatDiagram, SetDiagram};
use crate::error::{Error, Result};
use crate::fixtures::{named_category, representable};
use crate::pointed::{PointedFinSet, PointedMap};
use crate::skeletal::{pointed_delta_op, Fskel, ObjectTuple};
use crate::tuple::{simplex_tuple_category, Gstar, TupleCategory};

/// A resolved index category, keeping whatever structure names its objects.
pub enum Index {
    Fskel(Fskel),
    Gstar(Gstar),
    Tuples(TupleCategory),
    Plain(Arc<FinCategory>),
}

fn numbers(s: &str, count: usize, what: &str) -> Result<Vec<usize>> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad {what} parameters {s:?}")))?;
    if parts.len() != count {
        return Err(Error::Parse(format!("{what} takes {count} parameter(s), got {s:?}")));
    }
    Ok(parts)
}

impl Index {
    pub fn parse(reference: &str) -> Result<Self> {
        let (kind, args) = reference.split_once(':').unwrap_or((reference, ""));
        match kind {
            "fskel" => Ok(Index::Fskel(Fskel::new(numbers(args, 1, kind)?[0])?)),
            "gstar" => {
                let p = numbers(args, 2, kind)?;
                Ok(Index::Gstar(Gstar::over(Fskel::new(p[0])?, p[1])?))
            }
            "gstar-smash" => {
                let p = numbers(args, 2, kind)?;
                Ok(Index::Gstar(Gstar::collapsible(Fskel::new(p[0])?, p[1])?))
            }
            "simplex" => {
                let p = numbers(args, 2, kind)?;
                Ok(Index::Tuples(simplex_tuple_category(p[0], p[1])?))
            }
            "delta" => Ok(Index::Plain(Arc::new(pointed_delta_op(numbers(args, 1, kind)?[0])?))),
            _ => named_category(reference)
                .map(|c| Index::Plain(Arc::new(c)))
                .ok_or_else(|| Error::Parse(format!("unknown index {reference:?}"))),
        }
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        match self {
            Index::Fskel(f) => f.category(),
            Index::Gstar(g) => g.category(),
            Index::Tuples(t) => t.category(),
            Index::Plain(c) => c,
        }
    }

    /// Resolves `"<2>"`, `"2"`, `"(1,2)"`, `"*"` or an object name.
    pub fn object(&self, name: &str) -> Result<ObjId> {
        let tuple = || name.parse::<ObjectTuple>();
        match self {
            Index::Fskel(f) => match tuple()? {
                ObjectTuple::Tuple(e) if e.len() == 1 => f.object(e[0]),
                ObjectTuple::Basepoint => f.object(0),
                _ => Err(Error::Parse(format!("{name:?} is not an object of F"))),
            },
            Index::Gstar(g) => g.tuples().object_id(&tuple()?),
            Index::Tuples(t) => t.object_id(&tuple()?),
            Index::Plain(c) => c
                .object_by_name(name)
                .ok_or_else(|| Error::Parse(format!("no object named {name:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexJson {
    Ref(String),
    Inline(CategoryJson),
}

impl IndexJson {
    pub fn resolve(&self) -> Result<Index> {
        match self {
            IndexJson::Ref(r) => Index::parse(r),
            IndexJson::Inline(c) => Ok(Index::Plain(Arc::new(FinCategory::from_json(c)?))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    #[default]
    Set,
    Cat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub index: IndexJson,
    #[serde(default)]
    pub kind: DiagramKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_objects: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_morphisms: Option<serde_json::Value>,
}

/// A diagram read from JSON, with its resolved index.
pub enum LoadedDiagram {
    Set(Index, SetDiagram),
    Cat(Index, CatDiagram),
}

fn field<T: serde::de::DeserializeOwned>(v: &Option<serde_json::Value>, name: &str) -> Result<T> {
    let v = v
        .as_ref()
        .ok_or_else(|| Error::Malformed(format!("diagram is missing {name:?}")))?;
    Ok(serde_json::from_value(v.clone())?)
}

impl DiagramJson {
    pub fn load(&self) -> Result<LoadedDiagram> {
        let index = self.index.resolve()?;
        let c = index.category().clone();
        if let Some(name) = &self.representable {
            if self.kind != DiagramKind::Set {
                return Err(Error::Malformed("representables are set-valued".into()));
            }
            let d = representable(&c, index.object(name)?)?;
            return Ok(LoadedDiagram::Set(index, d));
        }
        match self.kind {
            DiagramKind::Set => {
                let sizes: Vec<usize> = field(&self.on_objects, "on_objects")?;
                let images: Vec<Vec<usize>> = field(&self.on_morphisms, "on_morphisms")?;
                if sizes.len() != c.num_objects() || images.len() != c.num_morphisms() {
                    return Err(Error::Malformed(format!(
                        "expected {} objects and {} morphisms, got {} and {}",
                        c.num_objects(),
                        c.num_morphisms(),
                        sizes.len(),
                        images.len()
                    )));
                }
                let maps = c
                    .morphism_ids()
                    .zip(images)
                    .map(|(m, v)| {
                        PointedMap::new(sizes[c.dom(m)], sizes[c.cod(m)], v)
                            .map_err(|e| Error::Malformed(format!("morphism {}: {e}", c.morphism_name(m))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let d = SetDiagram::new(c, sizes.into_iter().map(PointedFinSet::new).collect(), maps)?;
                Ok(LoadedDiagram::Set(index, d))
            }
            DiagramKind::Cat => {
                let cats: Vec<CategoryJson> = field(&self.on_objects, "on_objects")?;
                let tables: Vec<FunctorTable> = field(&self.on_morphisms, "on_morphisms")?;
                let cats = cats
                    .iter()
                    .map(|j| FinCategory::from_json(j).map(Arc::new))
                    .collect::<Result<Vec<_>>>()?;
                let d = CatDiagram::new(c, cats, tables)?;
                Ok(LoadedDiagram::Cat(index, d))
            }
        }
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// The explicit JSON form of a set-valued diagram over a referenced index.
pub fn set_diagram_json(index: &str, d: &SetDiagram) -> DiagramJson {
    let c = d.index();
    let sizes: Vec<usize> = c.objects().map(|a| d.size_at(a)).collect();
    let images: Vec<Vec<usize>> = c.morphism_ids().map(|m| d.map(m).values().to_vec()).collect();
    DiagramJson {
        index: IndexJson::Ref(index.to_string()),
        kind: DiagramKind::Set,
        representable: None,
        on_objects: Some(serde_json::to_value(sizes).unwrap()),
        on_morphisms: Some(serde_json::to_value(images).unwrap()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_references_resolve() {
        assert_eq!(Index::parse("fskel:2").unwrap().category().num_objects(), 3);
        assert_eq!(Index::parse("gstar:2,1").unwrap().category().num_objects(), 4);
        assert_eq!(Index::parse("walking-iso").unwrap().category().num_morphisms(), 4);
        assert!(Index::parse("fskel:9").is_err());
        assert!(Index::parse("nonsense").is_err());
    }

    #[test]
    fn explicit_round_trip() {
        let fs = Fskel::new(2).unwrap();
        let x = crate::fixtures::monoid_gamma_set(&fs, 2).unwrap();
        let json = set_diagram_json("fskel:2", &x);
        let text = serde_json::to_string(&json).unwrap();
        let back: DiagramJson = serde_json::from_str(&text).unwrap();
        match back.load().unwrap() {
            LoadedDiagram::Set(_, y) => assert_eq!(x, y),
            LoadedDiagram::Cat(..) => panic!("kind changed"),
        }
    }

    #[test]
    fn representable_shorthand() {
        let json: DiagramJson = serde_json::from_str(r#"{"index": "fskel:2", "representable": "<1>"}"#).unwrap();
        let LoadedDiagram::Set(_, d) = json.load().unwrap() else {
            panic!()
        };
        assert_eq!(d.size_at(2), 2);
    }
}
