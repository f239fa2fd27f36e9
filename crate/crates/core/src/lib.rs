//! Finitely generated convex subsets of free semimodules over semirings,
//! the weak distributive law of the powerset monad over the semimodule
//! monad, the composite convex-powerset monad, and a decision procedure for
//! equality of terms in the theory presenting it.

pub mod composite;
pub mod convex;
pub mod distlaw;
pub mod error;
pub mod exactlp;
pub mod freemod;
pub mod interval;
pub mod json;
pub mod random;
pub mod report;
pub mod semiring;
pub mod symbol;
pub mod terms;

pub use composite::{
    alpha, kleisli_bottom, kleisli_compose, kleisli_identity, kleisli_join, pc_map, pc_mult, pc_unit,
    ConvexFamilyWeighting, KleisliArrow,
};
pub use convex::{cs_equal, hull_canonicalize, ConvexSet};
pub use distlaw::laws::{check_naturality, check_weak_law, LawConfig};
pub use distlaw::pentagon::{check_pentagon, pentagon_free, pentagon_interval};
pub use distlaw::relation::{appendix_a_delta, barr_extend, check_appendix_a, trivial_e_extend, Relation};
pub use distlaw::{
    choice_set, delta_bruteforce, delta_hull, delta_witness_check, MembershipWeighting, SetWeighting,
};
pub use error::{Error, Result};
pub use exactlp::FeasibilitySystem;
pub use interval::Interval;
pub use freemod::{fs_add, fs_map, fs_mult, fs_scale, fs_unit, fs_zero, FinSupp, FinSupp2};
pub use report::{Expectation, LawReport, Outcome};
pub use semiring::{arith, check_property, rat, refinement_witness, Op, Property, Scalar, Semiring};
pub use terms::{eval, parse, render_interval, render_polygon, term_equal, term_from_set, Term};
pub use symbol::{symset, Symbol, SymbolSet};
