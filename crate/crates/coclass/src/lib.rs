//! Finite nilpotent semigroups of coclass 0, 1, and 2.
//!
//! A finite semigroup `S` is nilpotent when some power ideal `S^{c+1}` is a
//! single element (the zero); the least such `c` is its class and
//! `|S| - 1 - c` its coclass. This crate classifies the nilpotent semigroups
//! of coclass at most 2 and makes the classification executable:
//!
//! - [`tables`]: multiplication tables with validation, power ideals,
//!   layers, class/coclass, minimal generating sets, and duals;
//! - [`canon`]: canonical keys deciding isomorphism and anti-isomorphism;
//! - [`families`]: the classified presentation families and their
//!   realization as certified tables;
//! - [`bruteforce`]: an independent exhaustive enumerator for small orders;
//! - [`counting`]: exact closed-form counts and the published reference
//!   numbers for orders 3 to 13;
//! - [`verify`]: the cross-check harness tying the above together.
//!
//! ```
//! use coclass::canon::{dedup, CountMode};
//!
//! let list = coclass::families::coclass1_list(8).unwrap();
//! let tables: Vec<_> = list.iter().map(|p| p.realize().unwrap()).collect();
//! assert_eq!(dedup(&tables, CountMode::UpToAntiIso).unwrap().len(), 12);
//! ```

pub mod bruteforce;
pub mod canon;
pub mod counting;
pub mod families;
pub mod tables;
pub mod verify;

pub use canon::{are_equivalent, canonical_key, is_self_dual, CanonError, CanonicalKey, CountMode};
pub use families::{FamilyError, FamilyTag, Presentation, Relation, Word};
pub use tables::{ClassInfo, Element, ElementSet, MulTable, TableError};
