//! Command line front end and HTTP session service for `ndkernel`.

pub mod service;
