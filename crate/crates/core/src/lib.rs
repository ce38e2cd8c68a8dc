pub mod bounds;
pub mod codifferent;
pub mod embeddings;
pub mod error;
pub mod indecomposable;
pub mod interval;
pub mod lemmas;
pub mod order;
pub mod verify;

pub use error::{Error, Result};
pub use order::{CharPoly, Family, OrderElement, OrderParams};
