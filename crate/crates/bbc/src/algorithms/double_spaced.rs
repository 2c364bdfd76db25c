//! The universal fallback: spread a proper clique-number colouring so
//! consecutive classes sit q apart.

use super::{AlgorithmError, AlgorithmReport};
use crate::chordal::{check_peo, greedy_omega_colouring, mcs_ordering};
use crate::colouring::{verify_backbone_colouring, Colouring};
use crate::instance::BackboneInstance;
use std::time::Instant;

const ALG: &str = "double";

/// `g(v) = q*f(v) - q + 1` over the greedy clique-number colouring `f`.
/// Valid for any backbone of a chordal host; span is exactly
/// `q*omega - q + 1`.
pub fn double_spaced_colouring(
    inst: &BackboneInstance,
) -> Result<(Colouring, AlgorithmReport), AlgorithmError> {
    let start = Instant::now();
    let g = &inst.host;
    let ord = mcs_ordering(g);
    if let Err(e) = check_peo(g, &ord) {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("host is not chordal ({e})"),
        });
    }
    let f = greedy_omega_colouring(g, &ord).expect("ordering just validated");
    let omega = f.span();
    let q = inst.q;
    if q as u64 * omega as u64 >= u32::MAX as u64 {
        return Err(AlgorithmError::Rejected {
            algorithm: ALG,
            condition: format!("gap {q} with clique number {omega} overflows the colour range"),
        });
    }
    let mut spread = vec![0u32; g.vertex_count() + 1];
    for (v, c) in f.iter() {
        spread[v] = q * c - q + 1;
    }
    let col = Colouring::from_assignment(spread).expect("total");
    let bound = if omega == 0 { 0 } else { q * omega - q + 1 };
    let report = verify_backbone_colouring(inst, &col).expect("colouring is total");
    if !report.valid {
        return Err(AlgorithmError::Internal {
            algorithm: ALG,
            detail: format!("verifier rejected the output: {:?}", report.violations),
        });
    }
    debug_assert_eq!(report.span, bound);
    Ok((
        col,
        AlgorithmReport {
            algorithm: ALG,
            n: g.vertex_count(),
            omega: omega as usize,
            span: report.span,
            bound,
            certified: true,
            millis: start.elapsed().as_millis(),
        },
    ))
}
