//! Mass-assignment files.
//!
//! ```json
//! {"n": 2, "model": "dsm", "masses": [{"expr": "t1", "mass": 0.6}, {"expr": "t1|t2", "mass": 0.4}]}
//! ```
//!
//! `dsm` files may put mass on any element of `D^Θ`; `dst` files assume
//! exclusive atoms, so every expression must evaluate to a union of atoms.

use std::fs;
use std::path::{Path, PathBuf};

use dsmt_core::{atom_mask, canonicalize, to_dnf, AtomSet, ClassicalBba, Frame, GeneralizedBba, VennMask};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Dsm,
    Dst,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassFile {
    pub n: usize,
    pub model: Model,
    pub masses: Vec<MassEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntry {
    pub expr: String,
    pub mass: f64,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: malformed mass file: {source}")]
    Malformed { origin: String, source: serde_json::Error },
    #[error("{origin}: entry {index} ({expr:?}): {source}")]
    Expr { origin: String, index: usize, expr: String, source: Box<dsmt_core::Error> },
    #[error("{origin}: entry {index} ({expr:?}) is not a union of atoms, which the dst model requires")]
    ModelViolation { origin: String, index: usize, expr: String },
    #[error("{origin}: {source}")]
    Invalid { origin: String, source: Box<dsmt_core::Error> },
    #[error("{origin}: frame has {found} atoms, expected {expected}")]
    FrameMismatch { origin: String, found: usize, expected: usize },
}

impl LoadError {
    pub fn is_io(&self) -> bool {
        matches!(self, LoadError::Io { .. })
    }
}

/// A validated assignment in the model its file declared.
#[derive(Debug, Clone, PartialEq)]
pub enum Bba {
    Dsm(GeneralizedBba),
    Dst(ClassicalBba),
}

impl Bba {
    pub fn frame(&self) -> Frame {
        match self {
            Bba::Dsm(m) => m.frame(),
            Bba::Dst(m) => m.frame(),
        }
    }

    pub fn model(&self) -> Model {
        match self {
            Bba::Dsm(_) => Model::Dsm,
            Bba::Dst(_) => Model::Dst,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub bba: Bba,
    /// Non-fatal findings, e.g. equivalent expressions merged.
    pub warnings: Vec<String>,
}

/// Atom subset of a mask that is a union of atoms, `None` otherwise.
pub fn atom_union(mask: &VennMask) -> Option<AtomSet> {
    let dnf = to_dnf(mask).ok()?;
    let mut set = AtomSet::EMPTY;
    for term in dnf.members() {
        if term.len() != 1 {
            return None;
        }
        set = AtomSet(set.bits() | term.bits());
    }
    Some(set)
}

/// Mask of a union of atoms.
pub fn union_mask(set: AtomSet, frame: Frame) -> VennMask {
    set.atoms().fold(VennMask::zero(frame), |acc, a| {
        acc.union(&atom_mask(a, frame).expect("atom inside frame")).expect("same frame")
    })
}

pub fn load_bba(path: &Path, expected: Option<Frame>) -> Result<Loaded, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_owned(), source })?;
    parse_bba(&text, &path.display().to_string(), expected)
}

/// Parses and validates file contents; `origin` names the source in errors.
pub fn parse_bba(text: &str, origin: &str, expected: Option<Frame>) -> Result<Loaded, LoadError> {
    let file: MassFile = serde_json::from_str(text)
        .map_err(|source| LoadError::Malformed { origin: origin.into(), source })?;
    let frame = Frame::new(file.n)
        .map_err(|source| LoadError::Invalid { origin: origin.into(), source: Box::new(source) })?;
    if let Some(expected) = expected {
        if expected != frame {
            return Err(LoadError::FrameMismatch {
                origin: origin.into(),
                found: file.n,
                expected: expected.n() as usize,
            });
        }
    }

    let mut warnings = Vec::new();
    // Entries keyed by mask; first spelling kept for messages.
    let mut merged: Vec<(VennMask, f64, usize)> = Vec::new();
    for (index, entry) in file.masses.iter().enumerate() {
        let canon = canonicalize(&entry.expr, frame).map_err(|source| LoadError::Expr {
            origin: origin.into(),
            index,
            expr: entry.expr.clone(),
            source: Box::new(source),
        })?;
        if !entry.mass.is_finite() || !(0.0..=1.0).contains(&entry.mass) {
            return Err(LoadError::Expr {
                origin: origin.into(),
                index,
                expr: entry.expr.clone(),
                source: Box::new(dsmt_core::Error::InvalidMass { mass: entry.mass }),
            });
        }
        if file.model == Model::Dst && atom_union(&canon.mask).is_none() {
            return Err(LoadError::ModelViolation { origin: origin.into(), index, expr: entry.expr.clone() });
        }
        match merged.iter_mut().find(|(m, _, _)| *m == canon.mask) {
            Some((_, mass, first)) => {
                warnings.push(format!(
                    "{origin}: entry {index} ({:?}) is equivalent to entry {first} ({:?}); masses added",
                    entry.expr, file.masses[*first].expr
                ));
                *mass += entry.mass;
            }
            None => merged.push((canon.mask, entry.mass, index)),
        }
    }

    let invalid = |source| LoadError::Invalid { origin: origin.into(), source: Box::new(source) };
    let bba = match file.model {
        Model::Dsm => {
            Bba::Dsm(GeneralizedBba::new(frame, merged.into_iter().map(|(m, w, _)| (m, w))).map_err(invalid)?)
        }
        Model::Dst => Bba::Dst(
            ClassicalBba::new(
                frame,
                merged.into_iter().map(|(m, w, _)| (atom_union(&m).expect("checked above"), w)),
            )
            .map_err(invalid)?,
        ),
    };
    Ok(Loaded { bba, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Loaded, LoadError> {
        parse_bba(text, "test", None)
    }

    #[test]
    fn dsm_file() {
        let l =
            load(r#"{"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.6},{"expr":"t1|t2","mass":0.4}]}"#)
                .unwrap();
        match l.bba {
            Bba::Dsm(m) => assert_eq!(m.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(l.warnings.is_empty());
    }

    #[test]
    fn deficit_is_named() {
        let err =
            load(r#"{"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.6},{"expr":"t2","mass":0.3}]}"#)
                .unwrap_err();
        assert!(err.to_string().contains("deficit 0.1"), "{err}");
    }

    #[test]
    fn dst_rejects_intersections() {
        let err = load(r#"{"n":2,"model":"dst","masses":[{"expr":"t1&t2","mass":1.0}]}"#).unwrap_err();
        assert!(matches!(err, LoadError::ModelViolation { index: 0, .. }));
        // Unions written any way are fine.
        let ok = load(r#"{"n":3,"model":"dst","masses":[{"expr":"(t1|t2)|(t1&t3)","mass":1.0}]}"#).unwrap();
        match ok.bba {
            Bba::Dst(m) => assert_eq!(m.mass(AtomSet(0b011)), 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_merge_with_warning() {
        let l = load(
            r#"{"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.25},{"expr":"t1&(t1|t2)","mass":0.25},{"expr":"t2","mass":0.5}]}"#,
        )
        .unwrap();
        assert_eq!(l.warnings.len(), 1);
        match l.bba {
            Bba::Dsm(m) => {
                let t1 = atom_mask(1, Frame::new(2).unwrap()).unwrap();
                assert_eq!(m.mass(&t1), 0.5);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(load("{"), Err(LoadError::Malformed { .. })));
        assert!(matches!(load(r#"{"n":2,"model":"bayes","masses":[]}"#), Err(LoadError::Malformed { .. })));
        assert!(matches!(
            load(r#"{"n":2,"model":"dsm","masses":[{"expr":"t3","mass":1.0}]}"#),
            Err(LoadError::Expr { source, .. }) if matches!(*source, dsmt_core::Error::Parse(_))
        ));
        assert!(matches!(
            load(r#"{"n":2,"model":"dsm","masses":[{"expr":"t1","mass":-1.0}]}"#),
            Err(LoadError::Expr { source, .. }) if matches!(*source, dsmt_core::Error::InvalidMass { .. })
        ));
        assert!(matches!(
            load(r#"{"n":2,"model":"dsm","masses":[{"expr":"0","mass":1.0}]}"#),
            Err(LoadError::Invalid { source, .. }) if matches!(*source, dsmt_core::Error::EmptySetMass { .. })
        ));
        let frame3 = Frame::new(3).unwrap();
        assert!(matches!(
            parse_bba(r#"{"n":2,"model":"dsm","masses":[{"expr":"t1","mass":1.0}]}"#, "x", Some(frame3)),
            Err(LoadError::FrameMismatch { found: 2, expected: 3, .. })
        ));
    }

    #[test]
    fn unions() {
        let f = Frame::new(3).unwrap();
        let m = union_mask(AtomSet(0b101), f);
        assert_eq!(atom_union(&m), Some(AtomSet(0b101)));
        assert_eq!(atom_union(&VennMask::zero(f)), Some(AtomSet::EMPTY));
        assert_eq!(atom_union(&canonicalize("t1&t2", f).unwrap().mask), None);
    }
}
