//! The user guide, one module per book chapter.
//!
//! The chapters live under `book/` for mdbook; including them here makes
//! rustdoc render them on docs pages and, more importantly, makes `cargo
//! test --doc` execute every Rust code block, so the guide cannot drift
//! from the API.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[doc = include_str!("../../../book/src/elliptic.md")]
pub mod elliptic_layer {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod domain_families {}

#[doc = include_str!("../../../book/src/levi.md")]
pub mod levi_forms {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod command_line {}
