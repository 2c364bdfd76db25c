//! Colourings and the verifiers that gate every algorithm output.

use crate::instance::BackboneInstance;
use thiserror::Error;

/// A total assignment of positive colours to the vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colours: Vec<u32>, // index 0 unused
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("vertex {0} has no colour")]
    Partial(usize),
    #[error("assignment covers {0} vertices, instance has {1}")]
    WrongLength(usize, usize),
    #[error("vertex {vertex} has colour {colour}, outside 1..={k}")]
    ColourOutOfRange { vertex: usize, colour: u32, k: u32 },
}

impl Colouring {
    /// `assignment[v]` is the colour of vertex `v`; `assignment[0]` is
    /// ignored. Every other entry must be positive.
    pub fn from_assignment(assignment: Vec<u32>) -> Result<Self, ColouringError> {
        for (v, &c) in assignment.iter().enumerate().skip(1) {
            if c == 0 {
                return Err(ColouringError::Partial(v));
            }
        }
        Ok(Colouring { colours: assignment })
    }

    pub fn vertex_count(&self) -> usize {
        self.colours.len().saturating_sub(1)
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    /// Largest colour in use.
    pub fn span(&self) -> u32 {
        self.colours.iter().skip(1).copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.colours.iter().copied().enumerate().skip(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Equal colours across a host edge.
    Proper,
    /// `|c(u)-c(v)| < q` across a backbone edge.
    BackboneGap,
    /// `|c(u)-c(v)|` outside `[q, k-q]` across a backbone edge.
    CircularGap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub edge: (usize, usize),
    pub kind: ViolationKind,
}

/// Machine-checkable certificate for a colouring against an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub span: u32,
    pub violations: Vec<Violation>,
}

fn check_total(inst: &BackboneInstance, col: &Colouring) -> Result<(), ColouringError> {
    let n = inst.host.vertex_count();
    if col.vertex_count() != n {
        return Err(ColouringError::WrongLength(col.vertex_count(), n));
    }
    for (v, c) in col.iter() {
        if c == 0 {
            return Err(ColouringError::Partial(v));
        }
    }
    Ok(())
}

/// Checks that `col` is a proper colouring of the host with
/// `|c(u)-c(v)| >= q` on every backbone edge. A partial colouring is an
/// error, never a silent pass.
pub fn verify_backbone_colouring(
    inst: &BackboneInstance,
    col: &Colouring,
) -> Result<VerificationReport, ColouringError> {
    check_total(inst, col)?;
    let q = inst.q;
    let mut violations = Vec::new();
    for &(u, v) in inst.host.edges() {
        let (cu, cv) = (col.colour(u), col.colour(v));
        if cu == cv {
            violations.push(Violation {
                edge: (u, v),
                kind: ViolationKind::Proper,
            });
        }
    }
    for &(u, v) in inst.backbone_edges() {
        let gap = col.colour(u).abs_diff(col.colour(v));
        if gap < q {
            violations.push(Violation {
                edge: (u, v),
                kind: ViolationKind::BackboneGap,
            });
        }
    }
    Ok(VerificationReport {
        valid: violations.is_empty(),
        span: col.span(),
        violations,
    })
}

/// Circular variant: colours live in `1..=k` and backbone gaps must satisfy
/// `q <= |c(u)-c(v)| <= k-q`.
pub fn verify_circular_colouring(
    inst: &BackboneInstance,
    col: &Colouring,
    k: u32,
) -> Result<VerificationReport, ColouringError> {
    check_total(inst, col)?;
    for (v, c) in col.iter() {
        if c > k {
            return Err(ColouringError::ColourOutOfRange {
                vertex: v,
                colour: c,
                k,
            });
        }
    }
    let q = inst.q;
    let mut violations = Vec::new();
    for &(u, v) in inst.host.edges() {
        if col.colour(u) == col.colour(v) {
            violations.push(Violation {
                edge: (u, v),
                kind: ViolationKind::Proper,
            });
        }
    }
    for &(u, v) in inst.backbone_edges() {
        let gap = col.colour(u).abs_diff(col.colour(v));
        if gap < q || gap + q > k {
            violations.push(Violation {
                edge: (u, v),
                kind: ViolationKind::CircularGap,
            });
        }
    }
    Ok(VerificationReport {
        valid: violations.is_empty(),
        span: col.span(),
        violations,
    })
}
