// mdbook cannot run snippets that depend on external crates, so each
// chapter is included as the docs of an empty module and `cargo test --doc`
// runs its code blocks against the real crate. One module per chapter keeps
// failures traceable to a file.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/representations.md")]
pub mod representations {}
#[doc = include_str!("src/denumerants.md")]
pub mod denumerants {}
#[doc = include_str!("src/difference-formula.md")]
pub mod difference_formula {}
#[doc = include_str!("src/estimates.md")]
pub mod estimates {}
#[doc = include_str!("src/lagrange.md")]
pub mod lagrange {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
