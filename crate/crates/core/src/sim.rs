//! Execution engines.
//!
//! [`run_basis`] pushes a whole batch of classical inputs through a
//! NOT/CNOT/Toffoli circuit at once: each wire holds one bit per test vector,
//! packed 64 to a word, so a gate is a handful of word-wide boolean ops.
//! [`run_state`] is a dense state-vector simulator for circuits containing
//! controlled-V rotations.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::SimError;

/// Per-wire bitvectors: bit `j` of wire `w` is the value of `w` in test vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisBatch {
    len: usize,
    wires: Vec<Vec<u64>>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BasisBatch {
    /// All-zero batch of `len` vectors over `wire_count` wires.
    pub fn zeros(wire_count: usize, len: usize) -> Self {
        BasisBatch {
            len,
            wires: vec![vec![0; words_for(len)]; wire_count],
        }
    }

    /// Every one of the `2^wire_count` assignments; vector `j` sets wire `w`
    /// to bit `w` of `j`.
    pub fn all_assignments(wire_count: usize) -> Self {
        assert!(wire_count < 32, "2^{wire_count} vectors is too many");
        let mut batch = BasisBatch::zeros(wire_count, 1 << wire_count);
        for w in 0..wire_count {
            batch.fill_index_bit(w, w as u32, 0);
        }
        batch
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn wire_count(&self) -> usize {
        self.wires.len()
    }

    pub fn wire(&self, w: usize) -> &[u64] {
        &self.wires[w]
    }

    pub fn bit(&self, wire: usize, vector: usize) -> bool {
        assert!(vector < self.len);
        (self.wires[wire][vector / 64] >> (vector % 64)) & 1 == 1
    }

    pub fn set_bit(&mut self, wire: usize, vector: usize, value: bool) {
        assert!(vector < self.len);
        let word = &mut self.wires[wire][vector / 64];
        let mask = 1u64 << (vector % 64);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// Fills `wire` with bit `bit` of the vector index, for indices
    /// `start..start + len`. `start` must be a multiple of 64.
    pub(crate) fn fill_index_bit(&mut self, wire: usize, bit: u32, start: usize) {
        debug_assert_eq!(start % 64, 0);
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        for (k, word) in self.wires[wire].iter_mut().enumerate() {
            *word = if bit < 6 {
                PATTERNS[bit as usize]
            } else if ((start / 64 + k) >> (bit - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
        }
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            for wire in &mut self.wires {
                if let Some(last) = wire.last_mut() {
                    *last &= mask;
                }
            }
        }
    }

    /// Splits into consecutive sub-batches of at most `words` 64-bit words each.
    pub fn split(&self, words: usize) -> Vec<BasisBatch> {
        assert!(words > 0);
        let total = words_for(self.len);
        (0..total)
            .step_by(words)
            .map(|start| {
                let end = (start + words).min(total);
                BasisBatch {
                    len: (end * 64).min(self.len) - start * 64,
                    wires: self.wires.iter().map(|w| w[start..end].to_vec()).collect(),
                }
            })
            .collect()
    }

    /// Inverse of [`split`](Self::split).
    pub fn concat(parts: &[BasisBatch]) -> BasisBatch {
        let wire_count = parts.first().map_or(0, BasisBatch::wire_count);
        let mut out = BasisBatch {
            len: 0,
            wires: vec![Vec::new(); wire_count],
        };
        for (i, part) in parts.iter().enumerate() {
            assert!(
                i + 1 == parts.len() || part.len % 64 == 0,
                "only the final part may be ragged"
            );
            out.len += part.len;
            for (dst, src) in out.wires.iter_mut().zip(&part.wires) {
                dst.extend_from_slice(src);
            }
        }
        out
    }
}

/// Runs a classical circuit over every vector of `batch`.
// target and control words live in the same table, hence the index loops
#[allow(clippy::needless_range_loop)]
pub fn run_basis(circuit: &Circuit, batch: &BasisBatch) -> Result<BasisBatch, SimError> {
    if batch.wire_count() != circuit.wire_count() {
        return Err(SimError::WireCountMismatch {
            batch: batch.wire_count(),
            circuit: circuit.wire_count(),
        });
    }
    if let Some(g) = circuit.gates().find(|g| g.is_rotation()) {
        return Err(SimError::NonClassicalGate(*g));
    }
    let mut out = batch.clone();
    let words = words_for(batch.len);
    for gate in circuit.gates() {
        let w = &mut out.wires;
        match *gate {
            Gate::Not(t) => w[t.0].iter_mut().for_each(|x| *x = !*x),
            Gate::CNot(c, t) => {
                for k in 0..words {
                    w[t.0][k] ^= w[c.0][k];
                }
            }
            Gate::Toffoli(c1, c2, t) => {
                for k in 0..words {
                    w[t.0][k] ^= w[c1.0][k] & w[c2.0][k];
                }
            }
            Gate::CV(..) | Gate::CVDagger(..) => unreachable!(),
        }
    }
    out.mask_tail();
    Ok(out)
}

/// Default cap on the number of wires the dense engine accepts.
pub const DEFAULT_MAX_STATE_WIRES: usize = 20;

/// Dense amplitudes over `2^k` basis states. Wire `w` is bit `w` of the index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    wires: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|index>`.
    pub fn basis(wires: usize, index: usize) -> Result<Self, SimError> {
        if wires > DEFAULT_MAX_STATE_WIRES {
            return Err(SimError::TooManyWires {
                wires,
                cap: DEFAULT_MAX_STATE_WIRES,
            });
        }
        assert!(index < 1 << wires, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << wires];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { wires, amplitudes })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        assert!(amplitudes.len().is_power_of_two());
        StateVector {
            wires: amplitudes.len().trailing_zeros() as usize,
            amplitudes,
        }
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Index and amplitude of the largest-magnitude entry.
    pub fn dominant(&self) -> (usize, Complex64) {
        self.amplitudes
            .iter()
            .copied()
            .enumerate()
            .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
            .expect("state has at least one amplitude")
    }

    fn apply_controlled(&mut self, controls: u64, target: usize, m: [[Complex64; 2]; 2]) {
        let tbit = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & tbit != 0 || (i as u64) & controls != controls {
                continue;
            }
            let j = i | tbit;
            let (x0, x1) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = m[0][0] * x0 + m[0][1] * x1;
            self.amplitudes[j] = m[1][0] * x0 + m[1][1] * x1;
        }
    }

    pub fn apply(&mut self, gate: &Gate) {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let x = [[zero, one], [one, zero]];
        let bit = |w: crate::circuit::WireId| 1u64 << w.0;
        match *gate {
            Gate::Not(t) => self.apply_controlled(0, t.0, x),
            Gate::CNot(c, t) => self.apply_controlled(bit(c), t.0, x),
            Gate::Toffoli(c1, c2, t) => self.apply_controlled(bit(c1) | bit(c2), t.0, x),
            Gate::CV(c, t) => self.apply_controlled(bit(c), t.0, sqrt_not()),
            Gate::CVDagger(c, t) => self.apply_controlled(bit(c), t.0, sqrt_not_dagger()),
        }
    }
}

/// `V = ((1+i)/2, (1-i)/2; (1-i)/2, (1+i)/2)`, so that `V * V = X`.
pub fn sqrt_not() -> [[Complex64; 2]; 2] {
    let p = Complex64::new(0.5, 0.5);
    let q = Complex64::new(0.5, -0.5);
    [[p, q], [q, p]]
}

pub fn sqrt_not_dagger() -> [[Complex64; 2]; 2] {
    let [[p, q], [r, s]] = sqrt_not();
    [[p.conj(), r.conj()], [q.conj(), s.conj()]]
}

pub const NORM_TOLERANCE: f64 = 1e-12;

/// Applies every gate of `circuit` to `state`.
pub fn run_state(circuit: &Circuit, state: &StateVector) -> Result<StateVector, SimError> {
    if circuit.wire_count() > DEFAULT_MAX_STATE_WIRES {
        return Err(SimError::TooManyWires {
            wires: circuit.wire_count(),
            cap: DEFAULT_MAX_STATE_WIRES,
        });
    }
    if state.wires != circuit.wire_count() {
        return Err(SimError::WireCountMismatch {
            batch: state.wires,
            circuit: circuit.wire_count(),
        });
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(SimError::UnnormalizedInput(norm));
    }
    let mut out = state.clone();
    for gate in circuit.gates() {
        out.apply(gate);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    fn circuit(wires: usize, moments: &[&[Gate]]) -> Circuit {
        moments.iter().fold(Circuit::empty(wires).unwrap(), |c, m| {
            c.append_moment(m.to_vec()).unwrap()
        })
    }

    fn enumerate(wires: usize) -> BasisBatch {
        let mut b = BasisBatch::zeros(wires, 1 << wires);
        for w in 0..wires {
            b.fill_index_bit(w, w as u32, 0);
        }
        b
    }

    #[test]
    fn identity_leaves_batch() {
        let b = enumerate(3);
        let out = run_basis(&Circuit::empty(3).unwrap(), &b).unwrap();
        assert_eq!(out, b);
    }

    #[test]
    fn toffoli_truth_table() {
        let out = run_basis(&circuit(3, &[&[Gate::toffoli(0, 1, 2)]]), &enumerate(3)).unwrap();
        for j in 0..8 {
            let (a, b, t) = (j & 1 != 0, j & 2 != 0, j & 4 != 0);
            assert_eq!(out.bit(2, j), t ^ (a & b));
            assert_eq!(out.bit(0, j), a);
            assert_eq!(out.bit(1, j), b);
        }
    }

    #[test]
    fn rotations_rejected_by_basis_engine() {
        let c = circuit(2, &[&[Gate::cv(0, 1)]]);
        assert!(matches!(
            run_basis(&c, &BasisBatch::zeros(2, 4)),
            Err(SimError::NonClassicalGate(_))
        ));
    }

    #[test]
    fn not_keeps_tail_clear() {
        let c = circuit(1, &[&[Gate::not(0)]]);
        let out = run_basis(&c, &BasisBatch::zeros(1, 5)).unwrap();
        assert_eq!(out.wire(0), &[0b11111]);
    }

    #[test]
    fn index_bit_patterns() {
        let mut b = BasisBatch::zeros(1, 300);
        for bit in 0..9 {
            b.fill_index_bit(0, bit, 0);
            for j in 0..300 {
                assert_eq!(b.bit(0, j), (j >> bit) & 1 == 1, "bit {bit} vector {j}");
            }
        }
    }

    #[test]
    fn split_concat_round_trip() {
        let b = enumerate(9);
        for words in [1, 3, 8, 100] {
            let parts = b.split(words);
            assert_eq!(BasisBatch::concat(&parts), b);
        }
    }

    #[test]
    fn cv_squared_is_cnot() {
        let c = circuit(2, &[&[Gate::cv(0, 1)], &[Gate::cv(0, 1)]]);
        let out = run_state(&c, &StateVector::basis(2, 0b01).unwrap()).unwrap();
        let (idx, amp) = out.dominant();
        assert_eq!(idx, 0b11);
        assert!((amp - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cv_then_inverse_is_identity() {
        let c = circuit(2, &[&[Gate::cv(0, 1)], &[Gate::cv_dagger(0, 1)]]);
        for idx in 0..4 {
            let input = StateVector::basis(2, idx).unwrap();
            let out = run_state(&c, &input).unwrap();
            for (x, y) in out.amplitudes().iter().zip(input.amplitudes()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn single_cv_preserves_norm() {
        let c = circuit(2, &[&[Gate::cv(0, 1)]]);
        let out = run_state(&c, &StateVector::basis(2, 0b01).unwrap()).unwrap();
        assert!((out.norm() - 1.0).abs() < NORM_TOLERANCE);
        assert!((out.amplitudes()[0b01] - Complex64::new(0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn state_engine_rejects_bad_inputs() {
        let big = Circuit::empty(DEFAULT_MAX_STATE_WIRES + 1).unwrap();
        let s = StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 2]);
        assert!(matches!(
            run_state(&big, &s),
            Err(SimError::TooManyWires { .. })
        ));
        let c = Circuit::empty(1).unwrap();
        assert!(matches!(
            run_state(&c, &s),
            Err(SimError::UnnormalizedInput(_))
        ));
    }
}
