//! Jacobi diagrams with leg labels in `{1±,..,g±}`, their quotient modules
//! modulo AS, IHX and self-loop relations, and the maps between strata.

pub mod canon;
pub mod diagram;
pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod gf2;
pub mod label;
pub mod maps;
pub mod necklace;
pub mod relations;
pub mod snf;
pub mod spine;
pub mod sum;
pub mod weight;

pub use diagram::{Builder, Diagram, Stats};
pub use dsl::{parse, parse_genus};
pub use error::{JdError, Result};
pub use label::{Label, Sign};
pub use sum::DiagramSum;
