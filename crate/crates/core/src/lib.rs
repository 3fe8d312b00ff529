pub mod error;
pub mod groebner;
pub mod lelong;
pub mod linalg;
pub mod monomial;
pub mod newton;
pub mod noether;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod univariate;
pub mod bezout;
pub mod report;
pub mod resultant;
pub mod roots;
