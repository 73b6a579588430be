pub mod algebra;
pub mod element;
pub mod error;
pub mod generators;
pub mod normalform;
pub mod random;
pub mod subgroups;
pub mod words;

pub use element::{compose, equal_in_v, multiply, PartialIso, Table};
pub use error::{Error, ParseError, Result};
pub use generators::{GenWord, Generator, Symbol};
pub use words::{Letter, MaximalPrefixCode, PrefixCode, Word};
