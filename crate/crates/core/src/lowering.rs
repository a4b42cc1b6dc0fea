//! Toffoli lowering to controlled square-root-of-NOT rotations.
//!
//! `Toffoli(a, b, t)` becomes `CV(b,t) CNOT(a,b) CV†(b,t) CNOT(a,b) CV(a,t)`:
//! the target picks up `V` for each of `b`, `a` that is set and `V†` for
//! `a ^ b`, which nets to `V^2 = X` exactly when both controls are set.
//! The expanded circuit is then rescheduled with the diagonal-aware
//! commutation rules so that rotations from neighbouring Toffolis overlap.
//!
//! The network has some slack the pairwise rules cannot see: the controls
//! may trade places, `CV(b,t)` commutes with the `CNOT CV† CNOT` block as a
//! whole, and `CV(a,t)` commutes with everything else in the network. Each
//! Toffoli is emitted in whichever of these equivalent forms gives the
//! shallowest schedule, found by deterministic hill climbing.
//!
//! Neighbouring networks often leave two identical CNOTs that meet once the
//! gates between them are commuted aside; those pairs cancel. This is what
//! brings the adder to depth `6n - 2`. The number of cancelled gates is
//! reported so the gate accounting stays exact.

use crate::circuit::{Circuit, Gate};
use crate::circuit::{Moment, WireId};
use crate::error::LoweringError;
use crate::schedule::{commutes, report, schedule_gates, CommutationPolicy, SliceClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoweringResult {
    /// Contains only NOT, CNOT, CV and CV†.
    pub circuit: Circuit,
    pub original_toffoli_count: usize,
    pub original_cnot_count: usize,
    /// CNOTs removed in cancelling pairs.
    pub cancelled_cnots: usize,
    /// Depth of the rescheduled lowered circuit.
    pub lowered_depth: usize,
}

impl LoweringResult {
    pub fn two_qubit_count(&self) -> usize {
        report(&self.circuit).two_qubit_count()
    }
}

/// The five two-qubit gates realizing one Toffoli.
pub fn lower_toffoli(gate: &Gate) -> Result<[Gate; 5], LoweringError> {
    match *gate {
        Gate::Toffoli(a, b, t) => Ok([
            Gate::CV(b, t),
            Gate::CNot(a, b),
            Gate::CVDagger(b, t),
            Gate::CNot(a, b),
            Gate::CV(a, t),
        ]),
        other => Err(LoweringError::NotAToffoli(other)),
    }
}

/// Number of equivalent five-gate forms tried per Toffoli.
const FORMS: usize = 20;

/// Form 0 is the standard network; the rest permute it without changing
/// the unitary.
fn network(a: WireId, b: WireId, t: WireId, form: usize) -> [Gate; 5] {
    let (a, b) = if form / 10 == 1 { (b, a) } else { (a, b) };
    let late_b = (form / 5) % 2 == 1;
    let a_slot = 4 - form % 5;
    let mut rest = vec![Gate::CNot(a, b), Gate::CVDagger(b, t), Gate::CNot(a, b)];
    if late_b {
        rest.push(Gate::CV(b, t));
    } else {
        rest.insert(0, Gate::CV(b, t));
    }
    rest.insert(a_slot, Gate::CV(a, t));
    [rest[0], rest[1], rest[2], rest[3], rest[4]]
}

enum Item {
    Plain(Gate),
    Lowered(WireId, WireId, WireId),
}

fn expand(items: &[Item], forms: &[usize]) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(items.len() * 3);
    let mut k = 0;
    for item in items {
        match *item {
            Item::Plain(g) => gates.push(g),
            Item::Lowered(a, b, t) => {
                gates.extend(network(a, b, t, forms[k]));
                k += 1;
            }
        }
    }
    gates
}

/// Drops pairs of identical CNOTs that can be commuted next to each other.
fn cancel_pairs(gates: Vec<Gate>) -> Vec<Gate> {
    let mut alive = vec![true; gates.len()];
    for j in 0..gates.len() {
        let Gate::CNot(..) = gates[j] else { continue };
        for i in (0..j).rev() {
            if !alive[i] || !gates[i].wires().iter().any(|w| gates[j].touches(*w)) {
                continue;
            }
            if gates[i] == gates[j] {
                alive[i] = false;
                alive[j] = false;
            } else if commutes(&gates[i], &gates[j], CommutationPolicy::DiagonalAware) {
                continue;
            }
            break;
        }
    }
    gates
        .into_iter()
        .zip(alive)
        .filter_map(|(g, keep)| keep.then_some(g))
        .collect()
}

fn depth_of(moments: &[Moment]) -> usize {
    moments
        .iter()
        .filter(|m| SliceClass::of(m) != SliceClass::NegationOnly)
        .count()
}

/// Expands every Toffoli in place and reschedules the result.
pub fn lower_circuit(circuit: &Circuit) -> Result<LoweringResult, LoweringError> {
    if circuit.gates().any(Gate::is_rotation) {
        return Err(LoweringError::AlreadyLowered);
    }
    let items: Vec<Item> = circuit
        .gates()
        .map(|g| match *g {
            Gate::Toffoli(a, b, t) => Item::Lowered(a, b, t),
            other => Item::Plain(other),
        })
        .collect();
    let toffolis = items
        .iter()
        .filter(|i| matches!(i, Item::Lowered(..)))
        .count();
    let wires = circuit.wire_count();
    let run = |forms: &[usize]| {
        schedule_gates(
            wires,
            &cancel_pairs(expand(&items, forms)),
            CommutationPolicy::DiagonalAware,
        )
    };

    let mut forms = vec![0; toffolis];
    let mut best = run(&forms);
    let mut improved = true;
    while improved {
        improved = false;
        for k in 0..toffolis {
            for form in 0..FORMS {
                if form == forms[k] {
                    continue;
                }
                let mut trial = forms.clone();
                trial[k] = form;
                let moments = run(&trial);
                let better = (depth_of(&moments), moments.len()) < (depth_of(&best), best.len());
                if better {
                    forms = trial;
                    best = moments;
                    improved = true;
                }
            }
        }
    }

    let lowered = circuit
        .with_moments(best)
        .expect("scheduler emits valid moments");
    let before = report(circuit);
    let after = report(&lowered);
    Ok(LoweringResult {
        lowered_depth: after.paper_depth,
        cancelled_cnots: before.cnot_count + 5 * before.toffoli_count - after.two_qubit_count(),
        circuit: lowered,
        original_toffoli_count: before.toffoli_count,
        original_cnot_count: before.cnot_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build, Function, VariantSpec};

    #[test]
    fn non_toffoli_rejected() {
        assert!(matches!(
            lower_toffoli(&Gate::cnot(0, 1)),
            Err(LoweringError::NotAToffoli(_))
        ));
    }

    #[test]
    fn single_toffoli_depth_five() {
        for wires in 3..6 {
            let c = Circuit::empty(wires)
                .unwrap()
                .append_moment(vec![Gate::toffoli(0, 1, 2)])
                .unwrap();
            assert_eq!(lower_circuit(&c).unwrap().lowered_depth, 5);
        }
    }

    #[test]
    fn every_form_is_a_toffoli() {
        use crate::sim::{run_state, StateVector};
        let (a, b, t) = (WireId(0), WireId(1), WireId(2));
        let reference = Circuit::empty(3)
            .unwrap()
            .append_moment(vec![Gate::Toffoli(a, b, t)])
            .unwrap();
        assert_eq!(
            network(a, b, t, 0),
            lower_toffoli(&Gate::Toffoli(a, b, t)).unwrap()
        );
        for form in 0..FORMS {
            let moments = network(a, b, t, form).map(|g| Moment::new(vec![g]));
            let c = reference.with_moments(moments.to_vec()).unwrap();
            for input in 0..8 {
                let want = run_state(&reference, &StateVector::basis(3, input).unwrap()).unwrap();
                let got = run_state(&c, &StateVector::basis(3, input).unwrap()).unwrap();
                for (x, y) in want.amplitudes().iter().zip(got.amplitudes()) {
                    assert!((x - y).norm() < 1e-12, "form {form} input {input}");
                }
            }
        }
    }

    #[test]
    fn lowering_twice_rejected() {
        let c = build(&VariantSpec::new(Function::Add, 4)).unwrap();
        let once = lower_circuit(&c).unwrap();
        assert_eq!(
            lower_circuit(&once.circuit),
            Err(LoweringError::AlreadyLowered)
        );
    }

    #[test]
    fn gate_accounting() {
        let c = build(&VariantSpec::new(Function::Add, 6)).unwrap();
        let r = lower_circuit(&c).unwrap();
        let after = report(&r.circuit);
        assert_eq!(after.toffoli_count, 0);
        assert_eq!(
            after.two_qubit_count() + r.cancelled_cnots,
            r.original_cnot_count + 5 * r.original_toffoli_count
        );
        assert_eq!(r.cancelled_cnots % 2, 0);
    }
}
