pub mod corpus;
pub mod interp;
pub mod numeric;
pub mod poly;
pub mod positivity;
pub mod prover;
pub mod trs;
