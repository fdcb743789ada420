pub mod dickson;
pub mod error;
pub mod exactla;
pub mod gf;
pub mod groupact;
pub mod hirokado;
pub mod k3;
pub mod monomial;
pub mod multilinear;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use exactla::{kernel_basis, kron, rref_rank, MatFp, Rref};
pub use gf::{Fp, Fq2, GaloisField, Gf};
pub use monomial::MultiIndex;
pub use multilinear::{GammaElem, LambdaIndex, SymPoly};
pub use poly::SparsePoly;
pub use report::{Check, Format, Report};
