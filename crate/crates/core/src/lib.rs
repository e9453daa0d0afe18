//! Power-law bounded (PLB) graphs: random generators, fitting of the PLB
//! constants, greedy approximations with their closed-form guarantees, exact
//! oracles for small instances, and the gadget embeddings behind the
//! hardness-of-approximation factors.
//!
//! ```
//! use plbkit::generators::gen_chung_lu;
//! use plbkit::{fit_plb, guarantee_bundle, power_law_weights};
//!
//! let g = gen_chung_lu(&power_law_weights(2000, 3.0, 2.0).unwrap(), 7);
//! let fit = fit_plb(&g, 2.5, 0.0).unwrap();
//! let bounds = guarantee_bundle(fit.c1_fit, 2.5, 0.0).unwrap();
//! assert!(bounds.greedy_ds_ratio > 1.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN
pub mod bounds;
mod dsu;
pub mod embed;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod plb;
pub mod report;
pub mod solvers;
pub mod weights;

pub use bounds::{guarantee_bundle, hardness_factor, BoundValues, GraphMode, HardProblem};
pub use embed::{embed, embed_multigraph, embed_simple, reduction_opt, EmbedResult};
pub use error::{Error, Result};
pub use exact::{exact, ExactResult};
pub use generators::SamplerPath;
pub use graph::{bucket_of, DegreeBuckets, Graph};
pub use harness::{ratio_study, run_experiment, ExperimentReport, Family, Model};
pub use plb::{check_plb, fit_plb, PlbParams, PlbReport, Property};
pub use report::SCHEMA_VERSION;
pub use solvers::{validate_solution, Problem, SolveResult};
pub use weights::{power_law_weights, WeightSequence};
