pub mod eval;
pub mod factor;
pub mod field;
pub mod multipoly;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod solve;

pub use field::{rat, ratio, Field, Rational};
pub use multipoly::MultiPoly;
pub use numfield::{NfElem, NumberField};
pub use poly::{Poly, UniPoly};
pub use ratfunc::RatFunc;
pub use roots::{AlgebraicNumber, NumberJson};
pub use eval::{eval_interval, Budget, Evaluation, Interval};
