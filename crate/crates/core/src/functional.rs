//! Evaluation of Pauli-sum recipes on descriptor components.
//!
//! A [`PauliSum`] is read as a polynomial in per-qubit components: letter `X`
//! on slot `k` becomes the slot's `x` component, `Z` its `z` component, `Y`
//! the product `i x z`, and `I` the identity. Evaluated on the initial
//! embeddings the recipe reproduces the materialized operator; evaluated on
//! evolved components it yields the evolved operator.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, I};
use crate::pauli::{Pauli, PauliSum};

/// The `(x, z)` components standing for one qubit.
#[derive(Debug, Clone, Copy)]
pub struct QubitComponents<'a> {
    pub x: &'a ComplexMatrix,
    pub z: &'a ComplexMatrix,
}

/// Component supply for every slot of a Pauli sum. Slots that only ever
/// carry `I` may be left empty.
#[derive(Debug, Clone)]
pub struct ComponentMap<'a> {
    dim: usize,
    slots: Vec<Option<QubitComponents<'a>>>,
}

impl<'a> ComponentMap<'a> {
    /// Builds a map whose dimension is taken from the supplied components.
    pub fn new(slots: Vec<Option<QubitComponents<'a>>>) -> Result<Self> {
        let dim = slots
            .iter()
            .flatten()
            .map(|c| c.x.dim())
            .next()
            .ok_or_else(|| Error::InvalidArgument("component map has no components".into()))?;
        Self::with_dim(dim, slots)
    }

    pub fn with_dim(dim: usize, slots: Vec<Option<QubitComponents<'a>>>) -> Result<Self> {
        for c in slots.iter().flatten() {
            for m in [c.x, c.z] {
                if m.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: m.dim(),
                    });
                }
            }
        }
        Ok(Self { dim, slots })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    fn slot(&self, slot: usize, letter: Pauli) -> Result<QubitComponents<'a>> {
        self.slots
            .get(slot)
            .copied()
            .flatten()
            .ok_or(Error::MissingComponent {
                slot,
                letter: letter.to_char(),
            })
    }

    fn check_len(&self, f: &PauliSum) -> Result<()> {
        if f.n_qubits() != self.slots.len() {
            return Err(Error::WordLength {
                expected: self.slots.len(),
                found: f.n_qubits(),
            });
        }
        Ok(())
    }
}

/// `Σ c_w Π_k m(letter_k)` with letters rebuilt from the mapped components.
pub fn pauli_eval(f: &PauliSum, map: &ComponentMap<'_>) -> Result<ComplexMatrix> {
    map.check_len(f)?;
    // Y letters are shared across terms, so build each slot's i·x·z once.
    let mut ys: Vec<Option<ComplexMatrix>> = vec![None; map.len()];
    let mut out = ComplexMatrix::zeros(map.dim);
    for term in f.terms() {
        let mut product: Option<ComplexMatrix> = None;
        for (slot, &letter) in term.word.letters().iter().enumerate() {
            if letter == Pauli::I {
                continue;
            }
            let comps = map.slot(slot, letter)?;
            let factor: &ComplexMatrix = match letter {
                Pauli::X => comps.x,
                Pauli::Z => comps.z,
                Pauli::Y => ys[slot].get_or_insert_with(|| comps.x.matmul_unchecked(comps.z).scale(I)),
                Pauli::I => unreachable!(),
            };
            product = Some(match product {
                None => factor.clone(),
                Some(p) => p.matmul_unchecked(factor),
            });
        }
        match product {
            Some(p) => out.add_scaled(term.coeff, &p)?,
            None => {
                for d in 0..map.dim {
                    let v = out.get(d, d) + term.coeff;
                    out.set(d, d, v);
                }
            }
        }
    }
    Ok(out)
}

/// `pauli_eval(f, map) v` without forming the operator.
pub fn pauli_apply(f: &PauliSum, map: &ComponentMap<'_>, v: &[C64]) -> Result<Vec<C64>> {
    map.check_len(f)?;
    if v.len() != map.dim {
        return Err(Error::DimensionMismatch {
            expected: map.dim,
            found: v.len(),
        });
    }
    let mut out = vec![C64::new(0.0, 0.0); map.dim];
    for term in f.terms() {
        let mut w = v.to_vec();
        // rightmost factor acts first
        for (slot, &letter) in term.word.letters().iter().enumerate().rev() {
            if letter == Pauli::I {
                continue;
            }
            let comps = map.slot(slot, letter)?;
            w = match letter {
                Pauli::X => comps.x.apply_unchecked(&w),
                Pauli::Z => comps.z.apply_unchecked(&w),
                Pauli::Y => comps
                    .x
                    .apply_unchecked(&comps.z.apply_unchecked(&w))
                    .into_iter()
                    .map(|c| c * I)
                    .collect(),
                Pauli::I => unreachable!(),
            };
        }
        for (o, c) in out.iter_mut().zip(w) {
            *o += term.coeff * c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::tensor_embed;
    use crate::gates::{gate, standard};
    use crate::layout::SystemLayout;
    use crate::pauli::{pauli_decompose, PauliWord};

    fn initial(n: usize) -> Vec<(ComplexMatrix, ComplexMatrix)> {
        let layout = SystemLayout::qubits(n).unwrap();
        (0..n)
            .map(|q| {
                (
                    tensor_embed(&standard::x(), &[q], &layout).unwrap(),
                    tensor_embed(&standard::z(), &[q], &layout).unwrap(),
                )
            })
            .collect()
    }

    fn map(comps: &[(ComplexMatrix, ComplexMatrix)]) -> ComponentMap<'_> {
        ComponentMap::new(comps.iter().map(|(x, z)| Some(QubitComponents { x, z })).collect()).unwrap()
    }

    #[test]
    fn z_on_qubit_zero_at_initial_time() {
        let comps = initial(2);
        let f = PauliSum::from_word(C64::new(1.0, 0.0), "ZI".parse().unwrap());
        let layout = SystemLayout::qubits(2).unwrap();
        assert_eq!(
            pauli_eval(&f, &map(&comps)).unwrap(),
            tensor_embed(&standard::z(), &[0], &layout).unwrap()
        );
    }

    #[test]
    fn hadamard_recipe_reproduces_embedded_gate() {
        let comps = initial(2);
        let layout = SystemLayout::qubits(2).unwrap();
        let h = gate("H", &[]).unwrap();
        let f = pauli_decompose(&h, 1).unwrap().lifted(2, &[0]).unwrap();
        let m = pauli_eval(&f, &map(&comps)).unwrap();
        let expected = tensor_embed(&h, &[0], &layout).unwrap();
        assert!(m.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn y_is_generated_from_x_and_z() {
        let comps = initial(1);
        let f = PauliSum::from_word(C64::new(1.0, 0.0), PauliWord::single(1, 0, Pauli::Y));
        assert_eq!(pauli_eval(&f, &map(&comps)).unwrap(), standard::y());
    }

    #[test]
    fn materialization_agrees_for_random_sums() {
        let comps = initial(3);
        let f: PauliSum = "0.3-1i*XYZ;2+0i*IIY;-0.5+0.5i*ZZI;1.25+0i*III".parse().unwrap();
        let m = pauli_eval(&f, &map(&comps)).unwrap();
        assert!(m.max_abs_diff(&f.materialize()).unwrap() < 1e-14);
        let v: Vec<C64> = (0..8).map(|k| C64::new(k as f64, 1.0)).collect();
        let applied = pauli_apply(&f, &map(&comps), &v).unwrap();
        let expected = m.apply(&v).unwrap();
        for (a, b) in applied.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn missing_component_and_dim_mismatch() {
        let comps = initial(2);
        let slots = vec![
            Some(QubitComponents {
                x: &comps[0].0,
                z: &comps[0].1,
            }),
            None,
        ];
        let m = ComponentMap::new(slots).unwrap();
        let f: PauliSum = "ZX".parse().unwrap();
        assert_eq!(
            pauli_eval(&f, &m).unwrap_err(),
            Error::MissingComponent { slot: 1, letter: 'X' }
        );
        let ok: PauliSum = "ZI".parse().unwrap();
        assert!(pauli_eval(&ok, &m).is_ok());

        let small = standard::x();
        let bad = vec![
            Some(QubitComponents {
                x: &comps[0].0,
                z: &comps[0].1,
            }),
            Some(QubitComponents { x: &small, z: &small }),
        ];
        assert!(matches!(ComponentMap::new(bad), Err(Error::DimensionMismatch { .. })));
    }
}
