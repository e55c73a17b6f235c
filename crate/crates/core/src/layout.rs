use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the total Hilbert-space dimension (12 qubits).
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Ordered tensor factorization of the whole system.
///
/// Subsystem 0 is the most significant factor of the computational basis
/// index, so `|i_0 i_1 ... i_{n-1}>` has index `((i_0 d_1 + i_1) d_2 + ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SystemLayout {
    dims: Vec<usize>,
    total_dim: usize,
}

impl SystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(dims, DEFAULT_MAX_DIM)
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyLayout);
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidSubsystemDim(d));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        if total > cap {
            return Err(Error::LayoutTooLarge { total, cap });
        }
        Ok(Self { dims, total_dim: total })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, system: usize) -> usize {
        self.dims[system]
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn is_qubit(&self, system: usize) -> bool {
        self.dims[system] == 2
    }

    pub fn all_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Index stride of each subsystem in the computational basis.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    /// Per-subsystem digits of a basis index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            out[i] = index % self.dims[i];
            index /= self.dims[i];
        }
        out
    }

    /// Checks that `targets` are distinct and in range.
    pub fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (k, &t) in targets.iter().enumerate() {
            if t >= self.dims.len() {
                return Err(Error::TargetOutOfRange {
                    target: t,
                    len: self.dims.len(),
                });
            }
            if targets[..k].contains(&t) {
                return Err(Error::DuplicateTarget(t));
            }
        }
        Ok(())
    }

    /// Product of the dimensions of `targets`.
    pub fn subset_dim(&self, targets: &[usize]) -> usize {
        targets.iter().map(|&t| self.dims[t]).product()
    }

    /// Subsystems not in `targets`, in ascending order.
    pub fn complement(&self, targets: &[usize]) -> Vec<usize> {
        (0..self.dims.len()).filter(|i| !targets.contains(i)).collect()
    }
}

impl TryFrom<Vec<usize>> for SystemLayout {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<SystemLayout> for Vec<usize> {
    fn from(l: SystemLayout) -> Self {
        l.dims
    }
}
