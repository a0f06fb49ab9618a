//! Fixture files for q-expansions and text/CSV/JSON rendering of results.

mod fixture;
mod render;
pub mod tables;

pub use fixture::{emit_fixture, parse_fixture, Fixture, FixtureError, FixtureRow, LineError, BUNDLED_FCHI};
pub use render::{emit, Cell, Column, Format, Table};
pub use tables::GenBernoulliMethod;
