pub mod af;
pub mod error;
pub mod formula;
pub mod framework;
pub mod vaf;
pub mod saf;
pub mod svaf;
pub mod frontend;

pub use af::{Enumerator, Extension, Semantics, Strategy};
pub use error::{Error, Result};
pub use formula::{parse_formula, Formula};
pub use framework::{Argument, ArgumentId, AttackStatus, Framework, ValueName};
pub use saf::{Principle, PrincipleSet};
pub use vaf::{ClassificationReport, Status, ValueOrder};
