//! Hyper-powerset machinery for evidential reasoning over non-exclusive frames.
//!
//! Every proposition built from the atoms `t1..tn` with `∪` and `∩` is stored as
//! a [`VennMask`]: one bit per region of the n-set Venn diagram. Over masks the
//! crate provides
//!
//! - [`venn`]: frames, regions and their labels, and the mask algebra,
//! - [`lattice`]: generation of the whole hyper-powerset in canonical order and
//!   conversion between masks and minimal DNF ([`Antichain`]),
//! - [`expr`]: a small parser for `&`/`|` set expressions,
//! - [`fusion`]: the DSm conjunctive rule, Dempster's rule and the weighted
//!   conflict-redistribution family (Yager, Smets),
//! - [`oracles`]: brute-force and closed-form Dedekind counts, and memory reports.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod expr;
pub mod fusion;
pub mod lattice;
pub mod oracles;
pub mod venn;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use expr::{canonicalize, equivalent, eval_mask, parse, Canonical, Expr};
pub use fusion::{
    conjunctive_consensus, dempster_combine, dempster_weights, dsm_bel_pl, dsm_combine, dsm_fuse_many,
    dst_bel_pl, weighted_redistribution, BelPl, ClassicalBba, FusionOutcome, GeneralizedBba,
    RedistributionWeights,
};
pub use lattice::{
    dual, from_antichain, generate, generate_stream, known_cardinality, render_expr, to_dnf, Antichain,
    HyperPowerset,
};
pub use venn::{
    atom_mask, basis_order, combine_masks, is_isotone, mask_relations, region_label, AtomSet, BasisOrder,
    Frame, MaskOp, MaskRelations, RegionIndex, VennMask,
};
