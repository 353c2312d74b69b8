//! Lie poset algebras of types B, C and D.
//!
//! Build a signed poset, read off its relation graph, realize the algebra as
//! matrices and compute its index, Frobenius and contact status two ways:
//! from the graph and from exact or sampled linear algebra.
//!
//! ```
//! use lieposet::report::{analyze, Settings};
//! use lieposet::{Family, SignedPoset};
//!
//! // solid path 1 - 2 - 3
//! let p = SignedPoset::from_generators(Family::C, 3, &[(-1, 2), (-2, 3)]).unwrap();
//! let r = analyze(&p, &Settings::default()).unwrap();
//! assert_eq!((r.dim, r.index, r.contact), (5, 1, Some(true)));
//! ```

pub mod algebra;
pub mod cli;
pub mod enumerate;
pub mod exactla;
pub mod invariants;
pub mod lemmas;
pub mod poset;
pub mod relgraph;
pub mod report;

pub use exactla::{ExactMatrix, Field, Scalar, DEFAULT_PRIME};
pub use poset::{Family, PosetError, SignedPoset};
pub use relgraph::{Edge, EdgeKind, RelationGraph};
