pub mod cli;
pub mod error;
pub mod gfield;
pub mod lowdeg;
pub mod oracle;
pub mod rootcount;
pub mod semimat;
pub mod skewpoly;

pub use error::{Error, Result};
pub use gfield::{ArithOp, FieldElement, FieldOptions, FieldSpec};
pub use lowdeg::{Classification, Deg2State, Deg3State};
pub use oracle::{Crosscheck, SplitSearch, SweepMode, SweepPlan, SweepSummary};
pub use rootcount::{FullKernel, RootCountReport};
pub use semimat::{CharPoly, EigenProfile, SqMatrix};
pub use skewpoly::LinearizedPoly;
