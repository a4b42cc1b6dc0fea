//! Slice validation, resource accounting and greedy rescheduling.
//!
//! Depth follows the adder literature's convention: a slice counts toward
//! depth only if it contains something other than negations. Slices are
//! classified by their most expensive gate (Toffoli, then controlled
//! rotation, then CNOT), so a slice mixing a Toffoli with CNOTs and
//! negations is a Toffoli slice.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, Moment, WireAction, WireRole};

/// Kind of a single moment under the depth convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceClass {
    Toffoli,
    Rotation,
    Cnot,
    NegationOnly,
}

impl SliceClass {
    pub fn of(moment: &Moment) -> SliceClass {
        if moment.iter().any(Gate::is_toffoli) {
            SliceClass::Toffoli
        } else if moment.iter().any(Gate::is_rotation) {
            SliceClass::Rotation
        } else if moment.iter().any(|g| matches!(g, Gate::CNot(..))) {
            SliceClass::Cnot
        } else {
            SliceClass::NegationOnly
        }
    }

    /// Single-letter tag used in diagrams.
    pub fn tag(self) -> char {
        match self {
            SliceClass::Toffoli => 'T',
            SliceClass::Rotation => 'R',
            SliceClass::Cnot => 'C',
            SliceClass::NegationOnly => 'N',
        }
    }
}

/// Gate and slice counts of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResourceReport {
    pub toffoli_count: usize,
    pub cnot_count: usize,
    pub not_count: usize,
    /// Controlled-V and controlled-V† gates together.
    pub cv_count: usize,
    pub toffoli_slices: usize,
    pub cnot_slices: usize,
    pub rotation_slices: usize,
    pub negation_only_slices: usize,
    /// Slices containing at least one non-negation gate.
    pub paper_depth: usize,
    pub moments: usize,
    pub wires: usize,
    pub inputs: usize,
    pub outputs: usize,
    pub ancillae: usize,
}

impl ResourceReport {
    /// CNOTs plus controlled rotations.
    pub fn two_qubit_count(&self) -> usize {
        self.cnot_count + self.cv_count
    }

    /// Flat `key value` lines in a fixed order.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.entries() {
            writeln!(out, "{k} {v}").unwrap();
        }
        out
    }

    pub fn entries(&self) -> [(&'static str, usize); 14] {
        [
            ("toffoli", self.toffoli_count),
            ("cnot", self.cnot_count),
            ("not", self.not_count),
            ("cv", self.cv_count),
            ("toffoli_slices", self.toffoli_slices),
            ("cnot_slices", self.cnot_slices),
            ("rotation_slices", self.rotation_slices),
            ("negation_only_slices", self.negation_only_slices),
            ("depth", self.paper_depth),
            ("moments", self.moments),
            ("wires", self.wires),
            ("inputs", self.inputs),
            ("outputs", self.outputs),
            ("ancillae", self.ancillae),
        ]
    }
}

/// Counts gates and classifies slices. Never modifies the circuit.
pub fn report(circuit: &Circuit) -> ResourceReport {
    let mut r = ResourceReport {
        moments: circuit.depth(),
        wires: circuit.wire_count(),
        ..Default::default()
    };
    for gate in circuit.gates() {
        match gate {
            Gate::Not(_) => r.not_count += 1,
            Gate::CNot(..) => r.cnot_count += 1,
            Gate::Toffoli(..) => r.toffoli_count += 1,
            Gate::CV(..) | Gate::CVDagger(..) => r.cv_count += 1,
        }
    }
    for moment in circuit.moments() {
        match SliceClass::of(moment) {
            SliceClass::Toffoli => r.toffoli_slices += 1,
            SliceClass::Rotation => r.rotation_slices += 1,
            SliceClass::Cnot => r.cnot_slices += 1,
            SliceClass::NegationOnly => r.negation_only_slices += 1,
        }
    }
    r.paper_depth = r.toffoli_slices + r.rotation_slices + r.cnot_slices;
    for role in circuit.roles().keys() {
        match role {
            WireRole::InputA(_) | WireRole::InputB(_) | WireRole::IncomingCarry => r.inputs += 1,
            WireRole::OutputZ => r.outputs += 1,
            WireRole::Ancilla => r.ancillae += 1,
        }
    }
    r
}

/// Which gate pairs the scheduler may reorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CommutationPolicy {
    /// Only wire-disjoint gates are reordered.
    #[default]
    Disjoint,
    /// Also reorders gates that agree, on every shared wire, on whether
    /// they use it as a control or as a target.
    DiagonalAware,
}

/// Whether the policy allows `g` and `h` to be swapped.
///
/// Controls are diagonal in the computational basis and every target in this
/// gate set (X, V, V†) is diagonal in the Hadamard basis, so two gates that
/// use each shared wire the same way are simultaneously diagonal there.
pub fn commutes(g: &Gate, h: &Gate, policy: CommutationPolicy) -> bool {
    let shared: Vec<_> = g.wires().into_iter().filter(|w| h.touches(*w)).collect();
    if shared.is_empty() {
        return true;
    }
    match policy {
        CommutationPolicy::Disjoint => false,
        CommutationPolicy::DiagonalAware => shared.iter().all(|&w| {
            matches!(
                (g.action_on(w), h.action_on(w)),
                (Some(WireAction::Control), Some(WireAction::Control))
                    | (Some(WireAction::Target), Some(WireAction::Target))
            )
        }),
    }
}

/// Greedy as-soon-as-possible placement of `gates` (taken in order).
///
/// Each gate goes into the earliest moment that comes after every earlier
/// gate it does not commute with and whose wires are still free.
pub fn schedule_gates(wire_count: usize, gates: &[Gate], policy: CommutationPolicy) -> Vec<Moment> {
    let mut moments: Vec<Vec<Gate>> = Vec::new();
    let mut busy: Vec<Vec<bool>> = Vec::new();
    // per wire: (moment, gate) for every placed gate touching it
    let mut on_wire: Vec<Vec<(usize, Gate)>> = vec![Vec::new(); wire_count];

    for gate in gates {
        let wires = gate.wires();
        let earliest = wires
            .iter()
            .flat_map(|w| on_wire[w.0].iter())
            .filter(|(_, h)| !commutes(gate, h, policy))
            .map(|(m, _)| m + 1)
            .max()
            .unwrap_or(0);
        let slot = (earliest..moments.len())
            .find(|&m| wires.iter().all(|w| !busy[m][w.0]))
            .unwrap_or_else(|| {
                moments.push(Vec::new());
                busy.push(vec![false; wire_count]);
                moments.len() - 1
            });
        moments[slot].push(*gate);
        for w in &wires {
            busy[slot][w.0] = true;
            on_wire[w.0].push((slot, *gate));
        }
    }
    moments.into_iter().map(Moment::new).collect()
}

/// Re-packs the circuit's gates into moments under `policy`.
pub fn reschedule(circuit: &Circuit, policy: CommutationPolicy) -> Circuit {
    let gates: Vec<Gate> = circuit.gates().copied().collect();
    let moments = schedule_gates(circuit.wire_count(), &gates, policy);
    circuit
        .with_moments(moments)
        .expect("scheduler emits disjoint, non-empty moments")
}

/// Copy of the circuit with one gate per moment, in execution order.
pub fn serialize(circuit: &Circuit) -> Circuit {
    let moments = circuit.gates().map(|g| Moment::new(vec![*g])).collect();
    circuit
        .with_moments(moments)
        .expect("single-gate moments are valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    EmptyMoment,
    Overlap { wire: usize },
    OutOfRange { wire: usize },
    DuplicateOperand,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub moment: usize,
    pub gate: Option<Gate>,
    pub kind: ViolationKind,
}

/// Every structural violation in a raw moment list.
pub fn validate_moments(wire_count: usize, moments: &[Moment]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (idx, moment) in moments.iter().enumerate() {
        if moment.is_empty() {
            out.push(Violation {
                moment: idx,
                gate: None,
                kind: ViolationKind::EmptyMoment,
            });
        }
        let mut used = vec![false; wire_count];
        for gate in moment.iter() {
            let wires = gate.wires();
            if (0..wires.len()).any(|i| wires[i + 1..].contains(&wires[i])) {
                out.push(Violation {
                    moment: idx,
                    gate: Some(*gate),
                    kind: ViolationKind::DuplicateOperand,
                });
            }
            for w in wires {
                if w.0 >= wire_count {
                    out.push(Violation {
                        moment: idx,
                        gate: Some(*gate),
                        kind: ViolationKind::OutOfRange { wire: w.0 },
                    });
                } else if used[w.0] {
                    out.push(Violation {
                        moment: idx,
                        gate: Some(*gate),
                        kind: ViolationKind::Overlap { wire: w.0 },
                    });
                } else {
                    used[w.0] = true;
                }
            }
        }
    }
    out
}

pub fn validate(circuit: &Circuit) -> Result<(), Vec<Violation>> {
    let v = validate_moments(circuit.wire_count(), circuit.moments());
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build, Function, VariantSpec};

    #[test]
    fn empty_circuit_reports_zero() {
        let r = report(&Circuit::empty(3).unwrap());
        assert_eq!(r.paper_depth, 0);
        assert_eq!(r.toffoli_count + r.cnot_count + r.not_count + r.cv_count, 0);
    }

    #[test]
    fn adder_n6_report() {
        let r = report(&build(&VariantSpec::new(Function::Add, 6)).unwrap());
        assert_eq!(r.paper_depth, 16);
        assert_eq!(r.toffoli_slices, 11);
        assert_eq!(r.cnot_slices, 5);
        assert_eq!((r.inputs, r.outputs, r.ancillae), (12, 1, 1));
    }

    #[test]
    fn high_bit_n6_report() {
        let r = report(&build(&VariantSpec::new(Function::HighBitOnly, 6)).unwrap());
        assert_eq!(r.paper_depth, 15);
        assert_eq!(r.toffoli_slices, 11);
        assert_eq!(r.cnot_slices, 4);
    }

    #[test]
    fn negation_slices_do_not_count() {
        let c = Circuit::empty(2)
            .unwrap()
            .append_moment(vec![Gate::not(0)])
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 1)])
            .unwrap();
        let r = report(&c);
        assert_eq!(r.negation_only_slices, 1);
        assert_eq!(r.paper_depth, 1);
        assert_eq!(r.moments, 2);
    }

    #[test]
    fn disjoint_cnots_merge() {
        let c = Circuit::empty(4)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 1)])
            .unwrap()
            .append_moment(vec![Gate::cnot(2, 3)])
            .unwrap();
        let r = reschedule(&c, CommutationPolicy::Disjoint);
        assert_eq!(r.depth(), 1);
        assert_eq!(
            r.moments()[0].gates,
            vec![Gate::cnot(0, 1), Gate::cnot(2, 3)]
        );
    }

    #[test]
    fn commutation_rules() {
        use CommutationPolicy::*;
        // shared control
        assert!(commutes(
            &Gate::cnot(0, 1),
            &Gate::cnot(0, 2),
            DiagonalAware
        ));
        assert!(!commutes(&Gate::cnot(0, 1), &Gate::cnot(0, 2), Disjoint));
        // shared target
        assert!(commutes(
            &Gate::toffoli(0, 1, 2),
            &Gate::cnot(3, 2),
            DiagonalAware
        ));
        assert!(commutes(
            &Gate::cv(0, 2),
            &Gate::cv_dagger(1, 2),
            DiagonalAware
        ));
        // control of one is target of the other
        assert!(!commutes(
            &Gate::cnot(0, 1),
            &Gate::cnot(1, 2),
            DiagonalAware
        ));
        assert!(!commutes(
            &Gate::toffoli(0, 1, 2),
            &Gate::cnot(3, 0),
            DiagonalAware
        ));
        assert!(!commutes(&Gate::not(0), &Gate::cnot(0, 1), DiagonalAware));
        assert!(commutes(&Gate::not(1), &Gate::cnot(0, 1), DiagonalAware));
    }

    #[test]
    fn validate_reports_overlap_and_range() {
        let bad = vec![Moment::new(vec![Gate::cnot(0, 1), Gate::not(1)])];
        let v = validate_moments(2, &bad);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].moment, 0);
        assert_eq!(v[0].kind, ViolationKind::Overlap { wire: 1 });

        let bad = vec![
            Moment::new(vec![Gate::not(0)]),
            Moment::new(vec![Gate::not(9)]),
        ];
        let v = validate_moments(8, &bad);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].moment, 1);
        assert_eq!(v[0].kind, ViolationKind::OutOfRange { wire: 9 });
    }

    #[test]
    fn serialize_then_reschedule_recovers_depth() {
        let c = build(&VariantSpec::new(Function::Add, 6)).unwrap();
        let s = serialize(&c);
        assert_eq!(s.depth(), c.gate_count());
        let r = reschedule(&s, CommutationPolicy::Disjoint);
        assert!(report(&r).paper_depth <= 16);
    }
}
