//! The chapters of the guide in `book/`, compiled so their listings run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}

#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}

#[doc = include_str!("../../../book/src/kernels.md")]
pub mod kernels {}

#[doc = include_str!("../../../book/src/fibring.md")]
pub mod fibring {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
