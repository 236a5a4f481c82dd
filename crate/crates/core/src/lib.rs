//! Exact piecewise-linear maps of the unit interval and finite-depth models of
//! their inverse limits.
//!
//! Everything is computed with arbitrary-precision rationals; there is no
//! floating point anywhere in this crate.
//!
//! - [`plmap`]: PL self-maps of `[0,1]`, composition, fixed points, images, preimages.
//! - [`dynamics`]: iteration and exhaustive backward branching.
//! - [`inverse_limit`]: threads, induced maps, the shift, fixed threads.
//! - [`certify`]: pair certificates and sequence reports.
//! - [`format`]: the `plmap v1` and `threads v1` text formats.

pub mod certify;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod interval_set;
pub mod inverse_limit;
pub mod plmap;
pub mod rational;

pub use certify::{
    certify_pair, certify_sequence, default_slope_bound, CertifyOptions, DepthReport, DepthReports,
    PairCertificate, SequenceReport, StageRecord, Verdict,
};
pub use dynamics::{backward_branches, iterate, orbit, BranchOptions, BranchTree, IntervalBranch};
pub use error::{Error, Result};
pub use format::{emit_plmap, emit_threads, parse_plmap, parse_threads, FormatError, ThreadDump};
pub use interval_set::{separation, Interval, IntervalSet, Separation};
pub use inverse_limit::{
    fixed_thread_separation, fixed_threads, fixed_threads_from, induce, make_thread, mouron_check,
    shift, thread_metric, truncate, unshift, FixedThreadSet, InducedMap, MouronCheck, Thread,
    ThreadSeparation,
};
pub use plmap::{
    commutator_defect, compose, compose_within, fixed_points, image, is_surjective, point_preimage,
    preimage, slope_profile, sup_dist, Distance, PlMap, SlopeProfile, Surjectivity,
};
pub use rational::{format_rational, parse_rational, ratio, Rational, UnitRational};
