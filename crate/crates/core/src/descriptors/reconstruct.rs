//! Schrödinger-side quantities rebuilt from descriptors alone: reduced
//! densities, expectation values and the global unitary up to phase.
//!
//! Matrix units of a qubit are generated from its components with
//! `|0><0| = (1+z)/2`, `|1><1| = (1−z)/2`, `|1><0| = x(1+z)/2`,
//! `|0><1| = x(1−z)/2`; qudit descriptors carry their matrix units directly.
//! Units on several subsystems are products of per-subsystem units.

use super::{ComponentLabel, Descriptor, DescriptorFrame};
use crate::error::{Error, Result};
use crate::functional::{pauli_apply, ComponentMap};
use crate::linalg::{inner, ComplexMatrix, C64, ZERO};
use crate::pauli::PauliSum;
use crate::tolerance;

/// Evolved matrix units of one descriptor, indexed `[row][col]` for `|row><col|`.
fn evolved_units(d: &Descriptor) -> Vec<Vec<ComplexMatrix>> {
    if let (Some(x), Some(z)) = (d.x(), d.z()) {
        let n = x.dim();
        let id = ComplexMatrix::identity(n);
        let p0 = (&id + z).scale(C64::new(0.5, 0.0));
        let p1 = (&id - z).scale(C64::new(0.5, 0.0));
        let u10 = x.matmul_unchecked(&p0);
        let u01 = x.matmul_unchecked(&p1);
        vec![vec![p0, u01], vec![u10, p1]]
    } else {
        let k = d.local_dim();
        (0..k)
            .map(|row| {
                (0..k)
                    .map(|col| {
                        d.component(ComponentLabel::Unit { row, col })
                            .expect("qudit descriptors carry every matrix unit")
                            .clone()
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_subset(frame: &DescriptorFrame, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    frame.layout.check_targets(subset)
}

/// Mixed-radix digits of `index` over `dims`, most significant first.
fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

/// Reduced density matrix of `subset` (basis ordered by `subset`).
///
/// `<i|ρ|j> = <0| f_ij(q(t)) |0>` where `f_ij` generates `|j><i|` on the subset.
pub fn reconstruct_density(frame: &DescriptorFrame, subset: &[usize]) -> Result<ComplexMatrix> {
    check_subset(frame, subset)?;
    let units: Vec<Vec<Vec<ComplexMatrix>>> = subset.iter().map(|&s| evolved_units(&frame.descriptors[s])).collect();
    let dims: Vec<usize> = subset.iter().map(|&s| frame.layout.dim(s)).collect();
    let k: usize = dims.iter().product();
    let mut rho = ComplexMatrix::zeros(k);
    for i in 0..k {
        let di = digits(i, &dims);
        for j in 0..k {
            let dj = digits(j, &dims);
            let mut w = frame.reference.clone();
            for (pos, per_system) in units.iter().enumerate().rev() {
                w = per_system[dj[pos]][di[pos]].apply_unchecked(&w);
            }
            rho.set(i, j, inner(&frame.reference, &w));
        }
    }
    Ok(rho)
}

/// `<0| f(q(t)) |0>` for a Hermitian Pauli sum over all subsystems.
///
/// Letters other than `I` are only allowed on qubit subsystems.
pub fn expectation(frame: &DescriptorFrame, observable: &PauliSum) -> Result<f64> {
    let deviation = observable.hermiticity_deviation();
    if deviation > tolerance::HERMITICITY {
        return Err(Error::NotHermitian { deviation });
    }
    let slots = frame.descriptors.iter().map(|d| d.qubit_components()).collect();
    let map = ComponentMap::with_dim(frame.layout.total_dim(), slots)?;
    let w = pauli_apply(observable, &map, &frame.reference)?;
    Ok(inner(&frame.reference, &w).re)
}

/// Expectation of a sum whose slots refer to `subset`.
pub fn expectation_on(frame: &DescriptorFrame, observable: &PauliSum, subset: &[usize]) -> Result<f64> {
    check_subset(frame, subset)?;
    let lifted = observable.lifted(frame.layout.len(), subset)?;
    expectation(frame, &lifted)
}

/// Recovers the cumulative unitary, up to a global phase, from the evolved
/// matrix units `U†|j><i|U` generated by all descriptors jointly.
///
/// Entry `(ℓ, k)` of `U†|j><i|U` is `u*_{jℓ} u_{ik}`. With `ℓ = 0` and a pivot
/// row `j` of column 0 this gives `u*_{j0} u_{ik}` for all `i, k`. Row 0 is
/// the pivot when `|u_00| ≥ 1e-6`; otherwise the row with the largest
/// `|u_{j0}|` is used. The result is normalized so that the first entry of
/// column 0 with modulus above the pivot threshold is real and positive.
pub fn recover_unitary(frame: &DescriptorFrame) -> Result<ComplexMatrix> {
    let units: Vec<Vec<Vec<ComplexMatrix>>> = frame.descriptors.iter().map(evolved_units).collect();
    let dims = frame.layout.dims().to_vec();
    let total = frame.layout.total_dim();

    // Row 0 of Π_s units_s[j_s][i_s].
    let row0 = |j: usize, i: usize| -> Vec<C64> {
        let (dj, di) = (digits(j, &dims), digits(i, &dims));
        let mut v = vec![ZERO; total];
        v[0] = C64::new(1.0, 0.0);
        for (s, per_system) in units.iter().enumerate() {
            v = per_system[dj[s]][di[s]].left_apply_unchecked(&v);
        }
        v
    };

    let pivot_sq = tolerance::PIVOT * tolerance::PIVOT;
    let mut pivot = 0;
    let mut weight = row0(0, 0)[0].re;
    if weight < pivot_sq {
        for j in 1..total {
            let w = row0(j, j)[0].re;
            if w > weight {
                weight = w;
                pivot = j;
            }
        }
        if weight < pivot_sq {
            return Err(Error::DegeneratePivot {
                largest: weight.max(0.0).sqrt(),
            });
        }
    }

    let scale = 1.0 / weight.sqrt();
    let mut u = ComplexMatrix::zeros(total);
    for i in 0..total {
        for (k, v) in row0(pivot, i).into_iter().enumerate() {
            u.set(i, k, v * scale);
        }
    }

    let anchor = (0..total)
        .map(|r| u.get(r, 0))
        .find(|c| c.norm() > tolerance::PIVOT)
        .ok_or(Error::DegeneratePivot { largest: 0.0 })?;
    Ok(u.scale(anchor.conj() / anchor.norm()))
}
