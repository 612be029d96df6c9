pub mod catalog;
pub mod classify;
mod clock;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod graph;
pub mod map;
pub mod render;
pub mod verify;

pub use error::{Error, Result};
