pub mod error;
pub mod fd;
pub mod green;
pub mod hp;
pub mod kernels;
pub mod quadrature;
pub mod surface;
pub mod zerohunt;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/precision.md")]
    mod precision {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/zerohunt.md")]
    mod zerohunt {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
}
