//! Exact computations for right-angled Artin groups, their Artin kernels and
//! finite covers.
//!
//! - [`linalg`]: sparse exact linear algebra over `Q` and `F_p`, Smith normal form over `Z`.
//! - [`complex`]: finite simplicial complexes, links, reduced and integral homology.
//! - [`raag`]: Salvetti complexes, finite quotients and the Betti numbers of their covers.
//! - [`kernels`]: characters `φ: A_L → Z`, finiteness of `ker φ` and its Betti numbers.
//! - [`fibring`]: when `A_L` fibres with kernel of type `FP_n`.
//!
//! ```
//! use agrarian::complex::standard;
//! use agrarian::raag::{dfg_betti_raag, Raag};
//! use agrarian::FieldSpec;
//!
//! let a = Raag::new(standard::flag_rp2()).unwrap();
//! assert_eq!(dfg_betti_raag(&a, FieldSpec::F2, 3), 1);
//! assert_eq!(dfg_betti_raag(&a, FieldSpec::Q, 3), 0);
//! ```

pub mod complex;
pub mod fibring;
pub mod kernels;
pub mod linalg;
pub mod raag;

pub use complex::{ChainVector, HomologyProfile, OrderedSimplex, SimplicialComplex};
pub use fibring::{CoefficientRing, FibringReport};
pub use kernels::Character;
pub use linalg::{ExactMatrix, FieldSpec, IntMatrix, Scalar, SmithForm};
pub use raag::{FiniteQuotient, Raag};
