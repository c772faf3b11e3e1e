//! Mendeleev city: a periodic table laid out by the Madelung `[n+l, n]`
//! filling order and addressed by quartets `(n, l, j, m)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`quartet`] exact quartet arithmetic, Madelung ordering and the closed
//!   form atomic number `Z(n, l, j, m)` together with its inverse;
//! * [`table`] rows, columns, families, blocks and series;
//! * [`navigation`] ladder-operator moves and shortest paths between cells;
//! * [`aufbau`] idealized ground-state configurations;
//! * [`registry`] element names, observation status and property datasets;
//! * [`fit`] least-squares fits of properties over an operator basis;
//! * [`cli`] the `mendeleev` command-line front end.

pub mod aufbau;
pub mod cli;
pub mod error;
pub mod fit;
pub mod half;
pub mod navigation;
pub mod quartet;
pub mod registry;
pub mod report;
pub mod table;

pub use error::{Error, Result};
pub use quartet::{quartet_of, z_of, MadelungKey, Quartet};
