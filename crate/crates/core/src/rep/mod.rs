//! Rational representation theory of finite groups: character tables, the
//! simple components of Q[Γ], good primes and rank vectors.

pub mod algebra;
pub mod character;
pub mod components;
pub mod good_primes;
pub mod rank;
pub mod registry;

pub use components::{AlgebraComponent, Decomposition};
pub use good_primes::{good_primes, PrimeReport, Verdict};
pub use rank::{rank_u, RankSpec};
