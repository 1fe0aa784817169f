//! The book chapters, embedded so their code snippets run as doc-tests.
//!
//! `cargo test --doc` compiles every fenced Rust block in `book/src/*.md`
//! against the public API; `mdbook build book` renders the same files.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/annulus-norm.md")]
pub mod annulus_norm {}

#[doc = include_str!("../../../book/src/bessel-toolkit.md")]
pub mod bessel_toolkit {}

#[doc = include_str!("../../../book/src/root-finding.md")]
pub mod root_finding {}

#[doc = include_str!("../../../book/src/extremizer.md")]
pub mod extremizer {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}

#[doc = include_str!("../../../book/src/sweeps-and-figures.md")]
pub mod sweeps_and_figures {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
