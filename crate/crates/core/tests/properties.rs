use proptest::prelude::*;

use ripple_adder::schedule::{schedule_gates, serialize};
use ripple_adder::text::{parse, render};
use ripple_adder::*;

fn gate_strategy(wires: usize, rotations: bool) -> impl Strategy<Value = Gate> {
    let kinds: usize = if rotations { 5 } else { 3 };
    let operands =
        proptest::sample::subsequence((0..wires).collect::<Vec<_>>(), 3.min(wires)).prop_shuffle();
    (0..kinds, operands).prop_filter_map("needs enough wires", |(kind, w)| {
        match (kind, w.as_slice()) {
            (0, [t, ..]) => Some(Gate::not(*t)),
            (1, [c, t, ..]) => Some(Gate::cnot(*c, *t)),
            (2, [c1, c2, t]) => Some(Gate::toffoli(*c1, *c2, *t)),
            (3, [c, t, ..]) => Some(Gate::cv(*c, *t)),
            (4, [c, t, ..]) => Some(Gate::cv_dagger(*c, *t)),
            _ => None,
        }
    })
}

fn circuit_strategy(rotations: bool) -> impl Strategy<Value = Circuit> {
    (1usize..8)
        .prop_flat_map(move |wires| {
            (
                Just(wires),
                proptest::collection::vec(gate_strategy(wires, rotations), 0..40),
                proptest::collection::vec(any::<bool>(), wires),
            )
        })
        .prop_map(|(wires, gates, labelled)| {
            let moments = schedule_gates(wires, &gates, CommutationPolicy::Disjoint);
            let mut c = Circuit::empty(wires)
                .unwrap()
                .with_moments(moments)
                .unwrap();
            for (w, on) in labelled.into_iter().enumerate() {
                if on {
                    c = c.with_label(WireId(w), &format!("q{w}")).unwrap();
                }
            }
            if wires >= 2 {
                c = c
                    .with_role(WireRole::InputA(0), WireId(0))
                    .unwrap()
                    .with_role(WireRole::InputB(0), WireId(wires - 1))
                    .unwrap();
            }
            c
        })
}

fn outputs(circuit: &Circuit) -> BasisBatch {
    run_basis(circuit, &BasisBatch::all_assignments(circuit.wire_count())).unwrap()
}

proptest! {
    #[test]
    fn text_round_trip(c in circuit_strategy(true)) {
        let text = render(&c);
        prop_assert!(text.ends_with('\n'));
        prop_assert!(text.lines().all(|l| !l.ends_with(' ')));
        prop_assert_eq!(parse(&text).unwrap(), c);
    }

    #[test]
    fn inverse_cancels(c in circuit_strategy(false)) {
        let both = c.concatenate(&c.invert()).unwrap();
        prop_assert_eq!(outputs(&both), BasisBatch::all_assignments(c.wire_count()));
    }

    #[test]
    fn reschedule_preserves_behavior(c in circuit_strategy(false), aware in any::<bool>()) {
        let policy = if aware { CommutationPolicy::DiagonalAware } else { CommutationPolicy::Disjoint };
        let flat = serialize(&c);
        let r = reschedule(&flat, policy);
        prop_assert!(r.depth() <= flat.depth());
        prop_assert_eq!(outputs(&r), outputs(&c));
        prop_assert_eq!(report(&r).toffoli_count, report(&c).toffoli_count);
    }

    #[test]
    fn rotation_reschedule_preserves_state(c in circuit_strategy(true), input in 0usize..128) {
        let w = c.wire_count();
        let input = input % (1 << w);
        let r = reschedule(&serialize(&c), CommutationPolicy::DiagonalAware);
        let a = run_state(&c, &StateVector::basis(w, input).unwrap()).unwrap();
        let b = run_state(&r, &StateVector::basis(w, input).unwrap()).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn random_sampling_agrees_with_exhaustive(
        n in 1usize..6,
        f in 0usize..5,
        ic in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let spec = VariantSpec::new(Function::ALL[f], n).with_incoming_carry(ic);
        prop_assume!(spec.check().is_ok());
        let sampled = verify_random(&spec, 64, seed).unwrap();
        prop_assert!(sampled.passed());
        prop_assert_eq!(sampled.inputs_checked, 64);
    }
}

#[test]
fn adders_round_trip_and_invert() {
    for spec in ripple_adder::oracle::sweep_specs(6) {
        let c = build(&spec).unwrap();
        assert_eq!(parse(&render(&c)).unwrap(), c, "{spec}");
        let both = c.concatenate(&c.invert()).unwrap();
        assert_eq!(
            outputs(&both),
            BasisBatch::all_assignments(c.wire_count()),
            "{spec}"
        );
    }
}

#[test]
fn serialized_adder_reschedules_to_sixteen() {
    let c = build(&VariantSpec::new(Function::Add, 6)).unwrap();
    let flat = serialize(&c);
    assert_eq!(flat.depth(), c.gate_count());
    let again = reschedule(&flat, CommutationPolicy::Disjoint);
    assert!(report(&again).paper_depth <= 16);
    assert_eq!(outputs(&again), outputs(&c));
}

#[test]
fn reschedule_reaches_fixed_point() {
    for f in Function::ALL {
        let c = build(&VariantSpec::new(f, 5)).unwrap();
        let once = reschedule(&c, CommutationPolicy::Disjoint);
        let twice = reschedule(&once, CommutationPolicy::Disjoint);
        assert_eq!(twice, once, "{f}");
        assert_eq!(once.depth(), c.depth(), "{f}");
        assert_eq!(report(&once), report(&c), "{f}");
    }
}

#[test]
fn every_single_gate_deletion_is_caught() {
    let spec = VariantSpec::new(Function::Add, 4);
    let adder = build(&spec).unwrap();
    for (m, moment) in adder.moments().iter().enumerate() {
        for g in 0..moment.len() {
            let mutant = adder.without_gate(m, g).unwrap();
            let r = check_exhaustive(&mutant, &spec).unwrap();
            assert!(!r.passed(), "deleting gate {g} of moment {m}");
        }
    }
}
