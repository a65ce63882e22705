//! Exact tropical differential algebra over `Q[[t]]`.
//!
//! The crate covers the pipeline from differential polynomials with
//! power-series coefficients to their tropical shadows:
//!
//! * [`series`]: truncated power series with exact rational coefficients;
//! * [`diffalg`]: differential polynomials, the derivation and evaluation;
//! * [`tropical`]: eventually periodic supports, `Val_S`, tropicalisation and
//!   tropical solutions;
//! * [`initial`]: `S`-initial parts and the lifting construction;
//! * [`solver`]: bounded enumeration of tropical solutions, the basis
//!   checker and the three-set comparator;
//! * [`analysis`]: band matrices over `Q[s]`, Bergman-fan membership,
//!   `supp_min`, the `q_ab` coverage audit and the Denef–Lipshitz series;
//! * [`parse`] and [`cli`]: the text front end.
//!
//! ```
//! use tropdiff::parse::{parse_natset, parse_poly};
//! use tropdiff::initial::initial_part;
//!
//! let p = parse_poly("t*x(1,1) + t^2*x(1,3) + t^3", 32).unwrap();
//! let s = parse_natset("{2,3}").unwrap();
//! assert_eq!(initial_part(&p, &[s]).unwrap().to_string(), "x(1,1) + x(1,3)");
//! ```

pub mod analysis;
pub mod cli;
pub mod diffalg;
pub mod error;
pub mod initial;
pub mod parse;
pub mod series;
pub mod solver;
pub mod tropical;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/differential.md")]
    mod differential {}
    #[doc = include_str!("../../../book/src/tropical.md")]
    mod tropical {}
    #[doc = include_str!("../../../book/src/initial.md")]
    mod initial {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/linear.md")]
    mod linear {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
