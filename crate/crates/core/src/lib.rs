//! Exact grossone arithmetic, a nonarchimedean-style metric on bi-infinite
//! sequences, and one-dimensional cellular automata over eventually periodic
//! configurations.
//!
//! ```
//! use grossca::config::Configuration;
//! use grossca::metric::distance;
//!
//! let x: Configuration = "left=1 core=- offset=0 right=1".parse().unwrap();
//! let y: Configuration = "left=0 core=111 offset=-2 right=1".parse().unwrap();
//! assert_eq!(distance(&x, &y).unwrap().to_string(), "2^-(①+3)");
//! ```

pub mod ca;
pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod grossnum;
pub mod metric;
pub mod verify;

pub use ca::{LocalRule, SpacetimeGrid};
pub use config::{Alphabet, Configuration, Symbol};
pub use error::{Error, Result};
pub use grossnum::{GrossLinear, GrossQuantity};
pub use metric::{ExtendedIndex, Meet};
