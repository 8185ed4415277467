//! Runs every code block in the guide under `book/` as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cavity.md")]
pub mod cavity {}
#[doc = include_str!("../../../book/src/sphere.md")]
pub mod sphere {}
#[doc = include_str!("../../../book/src/rod.md")]
pub mod rod {}
#[doc = include_str!("../../../book/src/swap.md")]
pub mod swap {}
#[doc = include_str!("../../../book/src/environment.md")]
pub mod environment {}
#[doc = include_str!("../../../book/src/scenarios.md")]
pub mod scenarios {}
