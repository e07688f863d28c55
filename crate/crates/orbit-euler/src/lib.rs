//! Exact-arithmetic toolkit for Euler characteristics of orbit
//! categories and subgroup posets of finite groups, with independent
//! counters for p-singular elements and mechanical verification of
//! the Frobenius / Brown / Steinberg / Solomon circle of theorems and
//! their q-polynomial shadows.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod euler;
pub mod field;
pub mod group;
pub mod lattice;
pub mod lie;
pub mod marks;
pub mod qpoly;
pub mod verdict;

pub use error::{Error, Result};
