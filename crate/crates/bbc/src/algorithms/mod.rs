//! Constructive colouring algorithms with verified spans, and a
//! dispatcher that returns the best verified result.

mod double_spaced;
mod forest_partition;
mod interval_bipartite;
mod sparse_peel;

pub use double_spaced::double_spaced_colouring;
pub use forest_partition::{colour_forest_partition, partition_into_forests, ForestPartition};
pub use interval_bipartite::colour_interval_bipartite;
pub use sparse_peel::{colour_sparse_peel, SparsityParameters, DEFAULT_MAD_CHECK_THRESHOLD};

use crate::colouring::Colouring;
use crate::instance::BackboneInstance;
use crate::mad::Ratio;
use thiserror::Error;

/// One row of the run report: what ran, what it produced, and the span
/// guarantee it certifies for the instance class.
#[derive(Clone, Debug)]
pub struct AlgorithmReport {
    pub algorithm: &'static str,
    pub n: usize,
    pub omega: usize,
    pub span: u32,
    pub bound: u32,
    pub certified: bool,
    pub millis: u128,
}

impl AlgorithmReport {
    pub fn csv_header() -> &'static str {
        "instance,algorithm,n,omega,span,bound,certified,millis"
    }

    pub fn csv_row(&self, instance_id: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            instance_id,
            self.algorithm,
            self.n,
            self.omega,
            self.span,
            self.bound,
            self.certified,
            self.millis
        )
    }
}

#[derive(Debug, Error, Clone)]
pub enum AlgorithmError {
    /// A precondition does not hold; the condition names which one.
    #[error("{algorithm}: precondition rejected: {condition}")]
    Rejected {
        algorithm: &'static str,
        condition: String,
    },
    /// The peeling got stuck on a residual graph larger than the sparsity
    /// hypothesis allows: the caller's bound on Mad(H) is wrong. The
    /// residual subgraph is carried as a witness for inspection.
    #[error(
        "sparse: degree peeling stuck on {} vertices (limit {limit}); the backbone violates Mad <= {d} (residual average degree {residual_av})",
        residual.len()
    )]
    MadHypothesisViolated {
        residual: Vec<usize>,
        residual_av: Ratio,
        d: Ratio,
        limit: usize,
    },
    /// The forest-partition walk deadlocked even after repair and bounded
    /// backtracking; the dispatcher should fall back.
    #[error("c4free: class assignment deadlocked at bag {bag} on vertex {vertex}")]
    PartitionDeadlock { bag: usize, vertex: usize },
    /// A constructed colouring failed its own verification. Indicates a
    /// bug in the construction; never returned silently as a result.
    #[error("{algorithm}: internal error: {detail}")]
    Internal {
        algorithm: &'static str,
        detail: String,
    },
}

/// One dispatcher attempt: either a success report or the reason the
/// algorithm did not produce a colouring.
#[derive(Clone, Debug)]
pub struct Attempt {
    pub algorithm: &'static str,
    pub outcome: AttemptOutcome,
}

#[derive(Clone, Debug)]
pub enum AttemptOutcome {
    Success(AlgorithmReport),
    Rejected(String),
    Failed(String),
}

impl Attempt {
    pub fn csv_row(&self, instance_id: &str) -> String {
        match &self.outcome {
            AttemptOutcome::Success(r) => r.csv_row(instance_id),
            AttemptOutcome::Rejected(why) => {
                format!("{instance_id},{},,,,,rejected: {why},", self.algorithm)
            }
            AttemptOutcome::Failed(why) => {
                format!("{instance_id},{},,,,,failed: {why},", self.algorithm)
            }
        }
    }
}

fn record(
    attempts: &mut Vec<Attempt>,
    results: &mut Vec<(Colouring, AlgorithmReport)>,
    algorithm: &'static str,
    res: Result<(Colouring, AlgorithmReport), AlgorithmError>,
) {
    match res {
        Ok(ok) => {
            attempts.push(Attempt {
                algorithm,
                outcome: AttemptOutcome::Success(ok.1.clone()),
            });
            results.push(ok);
        }
        Err(AlgorithmError::Rejected { condition, .. }) => attempts.push(Attempt {
            algorithm,
            outcome: AttemptOutcome::Rejected(condition),
        }),
        Err(e) => attempts.push(Attempt {
            algorithm,
            outcome: AttemptOutcome::Failed(e.to_string()),
        }),
    }
}

/// Runs every algorithm whose preconditions hold (always including the
/// gap-spread fallback) and returns the verified colouring with the
/// smallest span, together with the full attempt log.
///
/// When no Mad bound is supplied for the sparse algorithm, it is computed
/// exactly for hosts with at most `DEFAULT_MAD_CHECK_THRESHOLD` vertices
/// and the algorithm is skipped above that size.
pub fn best_colouring(
    inst: &BackboneInstance,
    d: Option<Ratio>,
) -> Result<(Colouring, AlgorithmReport, Vec<Attempt>), AlgorithmError> {
    let mut attempts: Vec<Attempt> = Vec::new();
    let mut results: Vec<(Colouring, AlgorithmReport)> = Vec::new();

    record(
        &mut attempts,
        &mut results,
        "double",
        double_spaced_colouring(inst),
    );
    if inst.q == 2 {
        record(
            &mut attempts,
            &mut results,
            "interval2",
            colour_interval_bipartite(inst),
        );
        let d_sparse = if inst.backbone_is_edgeless() {
            // ignored by the algorithm: edgeless backbones short-circuit
            Some(Ratio::from_int(1))
        } else if d.is_some() {
            d
        } else if inst.host.vertex_count() <= DEFAULT_MAD_CHECK_THRESHOLD {
            Some(crate::mad::exact_mad(&inst.backbone_graph()).value)
        } else {
            None
        };
        match d_sparse {
            Some(d) => record(
                &mut attempts,
                &mut results,
                "sparse",
                colour_sparse_peel(inst, d),
            ),
            None => attempts.push(Attempt {
                algorithm: "sparse",
                outcome: AttemptOutcome::Rejected(
                    "no Mad bound supplied and the host is too large to compute one".into(),
                ),
            }),
        }
        record(
            &mut attempts,
            &mut results,
            "c4free",
            colour_forest_partition(inst),
        );
    }

    let winner = results
        .into_iter()
        .min_by_key(|(_, r)| r.span)
        .ok_or_else(|| {
            // double_spaced applies to every chordal host, so reaching here
            // means its own rejection is the reason
            match &attempts[0].outcome {
                AttemptOutcome::Rejected(c) => AlgorithmError::Rejected {
                    algorithm: "best",
                    condition: c.clone(),
                },
                other => AlgorithmError::Internal {
                    algorithm: "best",
                    detail: format!("no candidate succeeded: {other:?}"),
                },
            }
        })?;
    Ok((winner.0, winner.1, attempts))
}
