//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms except to read its inputs.

#![allow(dead_code)]

pub mod gf;
pub mod groups;
pub mod sylow;
