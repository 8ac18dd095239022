//! Strongly, weakly and chord separated set-systems on `2^[n]` together with
//! their geometric models: rhombus tilings and combined tilings on the zonogon
//! `Z(n,2)`, and cubillages (fine zonotopal tilings) on the zonotope `Z(n,3)`.
//!
//! The crate provides
//!
//! * the three pairwise separation relations and collection-level predicates
//!   ([`sep`]), with greedy completion and purity/rank verification;
//! * rhombus tilings, hexagonal flips, dual paths and inversion sets
//!   ([`tiling`]);
//! * combined tilings ("combies") and quasi-combies with the four rewriting
//!   operations and exact-cover construction from a weakly separated
//!   collection ([`combi`]);
//! * cubillages on `Z(n,3)`, pies, contraction/expansion, s-membranes and
//!   their distributive lattice, and membrane-to-cubillage filling
//!   ([`cubillage`], [`membrane`]);
//! * the fragmentation of a cubillage, w-membranes, tetrahedral/octahedral
//!   flips, escorts and fine membranes ([`fragment`]);
//! * the polynomial-time extension of a maximal weakly separated collection
//!   to a maximal chord separated one ([`wextend`]);
//! * plain-text file formats and SVG rendering ([`fileio`], [`svg`]).
//!
//! All geometry is exact: rational coordinates plus a symbolic infinitesimal
//! for the perturbed projection, so every predicate is error-free.

pub mod combi;
pub mod cubillage;
pub mod error;
pub mod fileio;
pub mod fragment;
pub mod geom;
pub mod ground;
pub mod membrane;
pub mod sep;
pub mod svg;
pub mod tiling;
pub mod wextend;

pub use error::{Error, Result, Violation};
pub use ground::{Collection, Ground, Subset};
pub use sep::SepKind;
