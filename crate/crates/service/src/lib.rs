//! HTTP JSON facade and command-line front end for `geo-reverse-core`.

pub mod api;
pub mod cli;
