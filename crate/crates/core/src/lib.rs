//! Graded Betti numbers of homogeneous ideals and their products with
//! powers of the maximal ideal, in exact rational arithmetic.

pub mod asymptotics;
pub mod betti;
pub mod corpus;
pub mod error;
pub mod field;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod monomial_ideal;
pub mod par;
pub mod polynomial;
pub mod quotient;
pub mod upper_koszul;

pub use asymptotics::{
    conjecture_check, is_componentwise_linear, pattern_shift_check, stabilization_index,
    strand_degree_check, strand_report, tor_exactness_check, AnalysisOptions, ConjectureReport,
    PowerLadder, StabilizationVerdict, StrandReport,
};
pub use betti::{BettiTable, HilbertSlice, Strand};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use ideal::{DegreeComponentBasis, GradedIdeal};
pub use koszul::{
    betti_table, betti_table_direct, hilbert_w, initial_degree, truncation_component, BettiOptions,
};
pub use linalg::RationalMatrix;
pub use monomial::Monomial;
pub use monomial_ideal::{
    construct_order_o1, find_linear_quotients_power, has_linear_quotients, lambda_invariant,
    minimal_generators, power_product, GeneratorOrder, LambdaProfile, MonomialIdeal,
};
pub use par::ExecMode;
pub use polynomial::Polynomial;
pub use upper_koszul::betti_table_monomial;
