//! Exact tree-diagram arithmetic for Thompson's group F.
//!
//! Given a non-trivial element `f` and a target abelianization image, the
//! [`synthesis`] module builds a partner `g` by tree surgery together with a
//! [`certify::Certificate`] showing that `<f, g>` contains the derived
//! subgroup `[F, F]`. The certificate is checked by [`certify`], which never
//! looks at how `g` was produced.

pub mod words;
pub mod element;
pub mod dynamics;
pub mod lattice;
pub mod certify;
pub mod synthesis;
pub mod cli;
