//! Predicted shapes and the verification suites built on them.

mod cases;
mod random;
mod shape;
mod suite;

pub use cases::{
    verify_appendix, verify_case, AppendixCheck, BettiEntry, BettiMode, Verdict, VerifyReport,
};
pub use random::{
    agreement_suite, edge_identity_suite, instance_rng, join_identity_suite, oracle_suite,
    random_graph, random_host, theorem_suite, valid_steps, PropertyResult,
};
pub use shape::{betti_of_shape, expected_shape, shape_suspend, CorollaryFamily, WedgeShape};
pub use suite::{
    appendix_lines, certificate_lines, corollary_lines, oracle_lines, property_results,
    recursion_lines, relaxed_ladder_lines, run_suite, seam_patch, SuiteConfig, SuiteLine,
    SuiteReport, DEFAULT_SEED, ORACLE_CERTIFICATES,
};

/// Maps over `items` on the rayon pool when the `parallel` feature is on;
/// results keep the input order either way.
pub(crate) fn par_map<T: Send, R: Send>(items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}
