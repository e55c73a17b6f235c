//! Tensor-product embedding of local operators into the whole space.

use crate::error::{Error, Result};
use crate::layout::SystemLayout;
use crate::linalg::{ComplexMatrix, C64, ZERO};

/// Basis-index offsets contributed by each joint configuration of `systems`,
/// enumerated with `systems[0]` as the most significant digit.
pub(crate) fn offsets(layout: &SystemLayout, systems: &[usize]) -> Vec<usize> {
    let strides = layout.strides();
    let mut out = vec![0usize];
    for &s in systems {
        let d = layout.dim(s);
        let mut next = Vec::with_capacity(out.len() * d);
        for &base in &out {
            for digit in 0..d {
                next.push(base + digit * strides[s]);
            }
        }
        out = next;
    }
    out
}

fn check_embedding(op: &ComplexMatrix, targets: &[usize], layout: &SystemLayout) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("at least one target is required".into()));
    }
    layout.check_targets(targets)?;
    let expected = layout.subset_dim(targets);
    if op.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: op.dim(),
        });
    }
    Ok(())
}

/// Embeds `op` acting on `targets` (in the given order) as a whole-space
/// operator that is the identity on every other subsystem.
pub fn tensor_embed(op: &ComplexMatrix, targets: &[usize], layout: &SystemLayout) -> Result<ComplexMatrix> {
    check_embedding(op, targets, layout)?;
    let total = layout.total_dim();
    let local = offsets(layout, targets);
    let rest = offsets(layout, &layout.complement(targets));
    let mut out = ComplexMatrix::zeros(total);
    for &r in &rest {
        for (a, &ta) in local.iter().enumerate() {
            for (b, &tb) in local.iter().enumerate() {
                let v = op.get(a, b);
                if v != ZERO {
                    out.set(r + ta, r + tb, v);
                }
            }
        }
    }
    Ok(out)
}

/// Applies `op` on `targets` directly to a state vector, without forming the
/// embedded matrix.
pub fn apply_local(op: &ComplexMatrix, targets: &[usize], layout: &SystemLayout, state: &mut [C64]) -> Result<()> {
    check_embedding(op, targets, layout)?;
    if state.len() != layout.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: layout.total_dim(),
            found: state.len(),
        });
    }
    let local = offsets(layout, targets);
    let rest = offsets(layout, &layout.complement(targets));
    let mut gathered = vec![ZERO; local.len()];
    for &r in &rest {
        for (g, &t) in gathered.iter_mut().zip(&local) {
            *g = state[r + t];
        }
        let updated = op.apply_unchecked(&gathered);
        for (u, &t) in updated.into_iter().zip(&local) {
            state[r + t] = u;
        }
    }
    Ok(())
}
