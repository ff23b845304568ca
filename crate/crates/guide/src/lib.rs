// mdbook cannot run the Rust snippets of a book against a local crate, so
// every chapter is pulled in as the docs of an empty module here and
// `cargo test --doc -p zslab-guide` runs them. One module per chapter keeps
// the failing chapter visible in test names.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/sumsets.md")]
pub mod sumsets {}
#[doc = include_str!("../../../book/src/constants.md")]
pub mod constants {}
#[doc = include_str!("../../../book/src/structure.md")]
pub mod structure {}
#[doc = include_str!("../../../book/src/extremal.md")]
pub mod extremal {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
