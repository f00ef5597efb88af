pub mod airy;
pub mod bessel_oracle;
pub mod closed;
pub mod dd;
pub mod error;
pub mod expansion;
pub mod lemma_lab;
pub mod liouville;
pub mod optim;
pub mod series;
pub mod zero_engine;

pub use dd::Dd;
pub use error::{Error, Result};
