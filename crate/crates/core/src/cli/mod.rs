//! Instance files, the fixture catalog, report rendering and the command
//! surface of the `natfull` binary.

pub mod app;
pub mod fixtures;
pub mod instance;
pub mod render;

pub use app::run;
pub use instance::{load, Instance, InstanceFile};
