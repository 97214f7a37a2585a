pub mod error;
pub mod gca;
pub mod laurent;
pub mod sl2;
pub mod sl3;
pub mod typec;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{arith, ArithOp, LaurentPoly, Mono, MonomialOrder, VarTable};
