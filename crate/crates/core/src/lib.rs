pub mod classdims;
pub mod coideal;
pub mod descriptor;
pub mod error;
pub mod exact;
pub mod hopf;
pub mod linalg;
pub mod models;
pub mod poly;
pub mod reproduce;
pub mod rmatrix;
pub mod series;

pub use error::{FqgError, Result};
pub use exact::{CycNum, ExactError, Rational};
pub use hopf::{AlgElement, AlgSignature, AxiomReport, Functional, HaarReport, HopfData, TensorElem};
pub use linalg::{ExactMatrix, LinalgError, LinearSolution, Subspace};
pub use models::{function_algebra, group_algebra, kac_paljutkin, sekine, sekine_with_report, FiniteGroupTable};
pub use classdims::{ClassDimMultiset, WalkReport};
pub use coideal::{Coideal, Integral};
pub use rmatrix::{RCandidate, RReport};
pub use series::{Chain, NamedCoideal, SeriesReport};
