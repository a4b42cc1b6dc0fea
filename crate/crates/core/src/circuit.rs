//! Gates, moments and circuits.
//!
//! A [`Circuit`] is an immutable value: an ordered list of [`Moment`]s over a
//! fixed number of wires, together with a map assigning arithmetic roles
//! (`a_i`, `b_i`, ancilla, output, incoming carry) to wires. Every circuit
//! handed out by this module has been checked: operands are in range, each
//! gate's operands are distinct, the gates of a moment touch pairwise-disjoint
//! wires, and no moment is empty.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::CircuitError;

/// Index of a wire in a circuit's wire list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WireId(pub usize);

impl WireId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for WireId {
    fn from(index: usize) -> Self {
        WireId(index)
    }
}

impl fmt::Display for WireId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One reversible primitive.
///
/// `CV` is the controlled square root of NOT, `CVDagger` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Not(WireId),
    CNot(WireId, WireId),
    Toffoli(WireId, WireId, WireId),
    CV(WireId, WireId),
    CVDagger(WireId, WireId),
}

/// How a gate touches one of its wires.
///
/// Controls are diagonal in the computational basis. Every target in this
/// gate set (X, V, V†) is diagonal in the Hadamard basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireAction {
    Control,
    Target,
}

impl Gate {
    pub fn not(t: usize) -> Gate {
        Gate::Not(WireId(t))
    }

    pub fn cnot(c: usize, t: usize) -> Gate {
        Gate::CNot(WireId(c), WireId(t))
    }

    pub fn toffoli(c1: usize, c2: usize, t: usize) -> Gate {
        Gate::Toffoli(WireId(c1), WireId(c2), WireId(t))
    }

    pub fn cv(c: usize, t: usize) -> Gate {
        Gate::CV(WireId(c), WireId(t))
    }

    pub fn cv_dagger(c: usize, t: usize) -> Gate {
        Gate::CVDagger(WireId(c), WireId(t))
    }

    /// Operands in declaration order, target last.
    pub fn wires(&self) -> Vec<WireId> {
        match *self {
            Gate::Not(t) => vec![t],
            Gate::CNot(c, t) | Gate::CV(c, t) | Gate::CVDagger(c, t) => vec![c, t],
            Gate::Toffoli(c1, c2, t) => vec![c1, c2, t],
        }
    }

    pub fn controls(&self) -> Vec<WireId> {
        match *self {
            Gate::Not(_) => vec![],
            Gate::CNot(c, _) | Gate::CV(c, _) | Gate::CVDagger(c, _) => vec![c],
            Gate::Toffoli(c1, c2, _) => vec![c1, c2],
        }
    }

    pub fn target(&self) -> WireId {
        match *self {
            Gate::Not(t)
            | Gate::CNot(_, t)
            | Gate::Toffoli(_, _, t)
            | Gate::CV(_, t)
            | Gate::CVDagger(_, t) => t,
        }
    }

    /// The role this gate plays on `wire`, or `None` if it does not touch it.
    pub fn action_on(&self, wire: WireId) -> Option<WireAction> {
        if self.target() == wire {
            Some(WireAction::Target)
        } else if self.controls().contains(&wire) {
            Some(WireAction::Control)
        } else {
            None
        }
    }

    pub fn touches(&self, wire: WireId) -> bool {
        self.wires().contains(&wire)
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::CV(c, t) => Gate::CVDagger(c, t),
            Gate::CVDagger(c, t) => Gate::CV(c, t),
            other => other,
        }
    }

    pub fn is_toffoli(&self) -> bool {
        matches!(self, Gate::Toffoli(..))
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, Gate::CV(..) | Gate::CVDagger(..))
    }

    pub fn is_classical(&self) -> bool {
        !self.is_rotation()
    }

    /// Number of wires the gate acts on.
    pub fn arity(&self) -> usize {
        match self {
            Gate::Not(_) => 1,
            Gate::CNot(..) | Gate::CV(..) | Gate::CVDagger(..) => 2,
            Gate::Toffoli(..) => 3,
        }
    }

    fn has_distinct_operands(&self) -> bool {
        let w = self.wires();
        (0..w.len()).all(|i| (i + 1..w.len()).all(|j| w[i] != w[j]))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Not(t) => write!(f, "not {t}"),
            Gate::CNot(c, t) => write!(f, "cnot {c} {t}"),
            Gate::Toffoli(c1, c2, t) => write!(f, "ccnot {c1} {c2} {t}"),
            Gate::CV(c, t) => write!(f, "cv {c} {t}"),
            Gate::CVDagger(c, t) => write!(f, "cvdg {c} {t}"),
        }
    }
}

/// Gates executed in one time-slice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Moment {
    pub gates: Vec<Gate>,
}

impl Moment {
    pub fn new(gates: Vec<Gate>) -> Self {
        Moment { gates }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Gate> {
        self.gates.iter()
    }

    pub fn inverse(&self) -> Moment {
        Moment::new(self.gates.iter().map(Gate::inverse).collect())
    }
}

impl FromIterator<Gate> for Moment {
    fn from_iter<I: IntoIterator<Item = Gate>>(iter: I) -> Self {
        Moment::new(iter.into_iter().collect())
    }
}

/// Arithmetic meaning of a wire. Bit positions count from 0 = lowest order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WireRole {
    InputA(usize),
    InputB(usize),
    Ancilla,
    OutputZ,
    IncomingCarry,
}

impl WireRole {
    /// Name used by the text format and diagrams: `a3`, `b0`, `anc`, `z`, `carry_in`.
    pub fn name(&self) -> String {
        match self {
            WireRole::InputA(i) => format!("a{i}"),
            WireRole::InputB(i) => format!("b{i}"),
            WireRole::Ancilla => "anc".to_string(),
            WireRole::OutputZ => "z".to_string(),
            WireRole::IncomingCarry => "carry_in".to_string(),
        }
    }

    pub fn parse(name: &str) -> Option<WireRole> {
        match name {
            "anc" => Some(WireRole::Ancilla),
            "z" => Some(WireRole::OutputZ),
            "carry_in" => Some(WireRole::IncomingCarry),
            _ => {
                let (kind, digits) = name.split_at(1.min(name.len()));
                if digits.is_empty()
                    || !digits.bytes().all(|b| b.is_ascii_digit())
                    || (digits.len() > 1 && digits.starts_with('0'))
                {
                    return None;
                }
                let i = digits.parse().ok()?;
                match kind {
                    "a" => Some(WireRole::InputA(i)),
                    "b" => Some(WireRole::InputB(i)),
                    _ => None,
                }
            }
        }
    }
}

impl fmt::Display for WireRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A checked, immutable reversible circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    wire_count: usize,
    roles: BTreeMap<WireRole, WireId>,
    labels: Vec<Option<String>>,
    moments: Vec<Moment>,
}

impl Circuit {
    /// An empty circuit on `wire_count` wires with no roles.
    pub fn empty(wire_count: usize) -> Result<Circuit, CircuitError> {
        if wire_count == 0 {
            return Err(CircuitError::NoWires);
        }
        Ok(Circuit {
            wire_count,
            roles: BTreeMap::new(),
            labels: vec![None; wire_count],
            moments: Vec::new(),
        })
    }

    /// Builds a circuit from its parts, checking every invariant.
    pub fn from_parts(
        wire_count: usize,
        roles: BTreeMap<WireRole, WireId>,
        labels: Vec<Option<String>>,
        moments: Vec<Moment>,
    ) -> Result<Circuit, CircuitError> {
        let mut circuit = Circuit::empty(wire_count)?;
        if labels.len() != wire_count {
            return Err(CircuitError::ShapeMismatch(format!(
                "{} labels for {} wires",
                labels.len(),
                wire_count
            )));
        }
        circuit.labels = labels;
        for (role, wire) in roles {
            circuit.assign_role(role, wire)?;
        }
        for moment in moments {
            circuit.push_moment(moment)?;
        }
        Ok(circuit)
    }

    pub fn wire_count(&self) -> usize {
        self.wire_count
    }

    pub fn moments(&self) -> &[Moment] {
        &self.moments
    }

    pub fn roles(&self) -> &BTreeMap<WireRole, WireId> {
        &self.roles
    }

    pub fn wire_of(&self, role: WireRole) -> Option<WireId> {
        self.roles.get(&role).copied()
    }

    pub fn role_of(&self, wire: WireId) -> Option<WireRole> {
        self.roles
            .iter()
            .find_map(|(role, w)| (*w == wire).then_some(*role))
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Display name of a wire: its label, else its role name, else `w<idx>`.
    pub fn wire_name(&self, wire: WireId) -> String {
        if let Some(Some(label)) = self.labels.get(wire.0) {
            return label.clone();
        }
        match self.role_of(wire) {
            Some(role) => role.name(),
            None => format!("w{}", wire.0),
        }
    }

    /// Gates in execution order (moment by moment, in-moment order preserved).
    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.moments.iter().flat_map(|m| m.gates.iter())
    }

    pub fn gate_count(&self) -> usize {
        self.moments.iter().map(Moment::len).sum()
    }

    pub fn depth(&self) -> usize {
        self.moments.len()
    }

    pub fn is_classical(&self) -> bool {
        self.gates().all(Gate::is_classical)
    }

    /// Returns a new circuit with one more moment.
    pub fn append_moment(&self, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        let mut next = self.clone();
        next.push_moment(Moment::new(gates))?;
        Ok(next)
    }

    /// Returns a copy carrying `role` on `wire`.
    pub fn with_role(&self, role: WireRole, wire: WireId) -> Result<Circuit, CircuitError> {
        let mut next = self.clone();
        next.assign_role(role, wire)?;
        Ok(next)
    }

    /// Returns a copy with a display label on `wire`.
    pub fn with_label(&self, wire: WireId, label: &str) -> Result<Circuit, CircuitError> {
        if wire.0 >= self.wire_count {
            return Err(CircuitError::WireOutOfRange {
                wire: wire.0,
                wire_count: self.wire_count,
            });
        }
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(CircuitError::InvalidLabel(label.to_string()));
        }
        let mut next = self.clone();
        next.labels[wire.0] = Some(label.to_string());
        Ok(next)
    }

    /// Same wires and roles, different moments.
    pub fn with_moments(&self, moments: Vec<Moment>) -> Result<Circuit, CircuitError> {
        let mut next = Circuit {
            moments: Vec::with_capacity(moments.len()),
            ..self.clone()
        };
        for moment in moments {
            next.push_moment(moment)?;
        }
        Ok(next)
    }

    /// The inverse circuit: moments reversed, CV and CV† exchanged.
    pub fn invert(&self) -> Circuit {
        Circuit {
            moments: self.moments.iter().rev().map(Moment::inverse).collect(),
            ..self.clone()
        }
    }

    /// `self` followed by `second`. Role maps must agree wherever both define
    /// a role or use a wire; the result carries the union.
    pub fn concatenate(&self, second: &Circuit) -> Result<Circuit, CircuitError> {
        if self.wire_count != second.wire_count {
            return Err(CircuitError::ShapeMismatch(format!(
                "cannot concatenate a {}-wire circuit with a {}-wire circuit",
                self.wire_count, second.wire_count
            )));
        }
        let mut out = self.clone();
        for (role, wire) in &second.roles {
            match out.roles.get(role) {
                Some(w) if w == wire => {}
                Some(w) => {
                    return Err(CircuitError::ShapeMismatch(format!(
                        "role {role} is wire {w} in the first circuit but wire {wire} in the second"
                    )))
                }
                None => out.assign_role(*role, *wire).map_err(|_| {
                    CircuitError::ShapeMismatch(format!(
                        "wire {wire} carries different roles in the two circuits"
                    ))
                })?,
            }
        }
        for (mine, theirs) in out.labels.iter_mut().zip(&second.labels) {
            if mine.is_none() {
                mine.clone_from(theirs);
            }
        }
        out.moments.extend(second.moments.iter().cloned());
        Ok(out)
    }

    /// Copy with the gate at (`moment`, `index`) deleted; a moment left empty
    /// is dropped. Used for mutation testing.
    pub fn without_gate(&self, moment: usize, index: usize) -> Option<Circuit> {
        let m = self.moments.get(moment)?;
        if index >= m.len() {
            return None;
        }
        let mut next = self.clone();
        next.moments[moment].gates.remove(index);
        if next.moments[moment].is_empty() {
            next.moments.remove(moment);
        }
        Some(next)
    }

    pub(crate) fn assign_role(&mut self, role: WireRole, wire: WireId) -> Result<(), CircuitError> {
        if wire.0 >= self.wire_count {
            return Err(CircuitError::WireOutOfRange {
                wire: wire.0,
                wire_count: self.wire_count,
            });
        }
        if self.roles.contains_key(&role) {
            return Err(CircuitError::DuplicateRole(role.name()));
        }
        if let Some(existing) = self.role_of(wire) {
            return Err(CircuitError::WireAlreadyAssigned {
                wire: wire.0,
                role: existing.name(),
            });
        }
        self.roles.insert(role, wire);
        Ok(())
    }

    pub(crate) fn push_moment(&mut self, moment: Moment) -> Result<(), CircuitError> {
        check_moment(self.wire_count, &moment)?;
        self.moments.push(moment);
        Ok(())
    }
}

/// Checks a single moment against the circuit invariants.
pub fn check_moment(wire_count: usize, moment: &Moment) -> Result<(), CircuitError> {
    if moment.is_empty() {
        return Err(CircuitError::EmptyMoment);
    }
    let mut used = vec![false; wire_count];
    for gate in &moment.gates {
        if !gate.has_distinct_operands() {
            return Err(CircuitError::DuplicateOperand(*gate));
        }
        for w in gate.wires() {
            if w.0 >= wire_count {
                return Err(CircuitError::WireOutOfRange {
                    wire: w.0,
                    wire_count,
                });
            }
            if used[w.0] {
                return Err(CircuitError::Overlap { wire: w.0 });
            }
            used[w.0] = true;
        }
    }
    Ok(())
}

/// Mutable helper the builders use to assemble a circuit moment by moment.
#[derive(Debug)]
pub(crate) struct CircuitBuilder {
    circuit: Circuit,
}

impl CircuitBuilder {
    pub fn new(wire_count: usize) -> Self {
        CircuitBuilder {
            circuit: Circuit::empty(wire_count).expect("builders never request zero wires"),
        }
    }

    pub fn role(&mut self, role: WireRole, wire: usize) -> &mut Self {
        self.circuit
            .assign_role(role, WireId(wire))
            .expect("builder role layout is injective");
        self
    }

    /// Appends a moment; empty gate lists are skipped.
    pub fn slice(&mut self, gates: Vec<Gate>) -> &mut Self {
        if !gates.is_empty() {
            self.circuit
                .push_moment(Moment::new(gates))
                .expect("builder slices are wire-disjoint");
        }
        self
    }

    pub fn finish(self) -> Circuit {
        self.circuit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_disjoint_moment() {
        let c = Circuit::empty(3)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 1), Gate::not(2)])
            .unwrap();
        assert_eq!(c.depth(), 1);
        assert_eq!(c.gate_count(), 2);
    }

    #[test]
    fn append_overlapping_moment_fails() {
        let err = Circuit::empty(4)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 1), Gate::toffoli(1, 2, 3)])
            .unwrap_err();
        assert_eq!(err, CircuitError::Overlap { wire: 1 });
    }

    #[test]
    fn append_empty_moment_fails() {
        let err = Circuit::empty(3)
            .unwrap()
            .append_moment(vec![])
            .unwrap_err();
        assert_eq!(err, CircuitError::EmptyMoment);
    }

    #[test]
    fn append_out_of_range_fails() {
        let err = Circuit::empty(2)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 2)])
            .unwrap_err();
        assert!(matches!(err, CircuitError::WireOutOfRange { wire: 2, .. }));
    }

    #[test]
    fn duplicate_operand_rejected() {
        let err = Circuit::empty(3)
            .unwrap()
            .append_moment(vec![Gate::toffoli(0, 0, 1)])
            .unwrap_err();
        assert!(matches!(err, CircuitError::DuplicateOperand(_)));
    }

    #[test]
    fn append_leaves_original_untouched() {
        let c = Circuit::empty(2).unwrap();
        let d = c.append_moment(vec![Gate::not(0)]).unwrap();
        assert_eq!(c.depth(), 0);
        assert_eq!(d.depth(), 1);
    }

    #[test]
    fn invert_reverses_and_swaps_rotations() {
        let c = Circuit::empty(3)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 1)])
            .unwrap()
            .append_moment(vec![Gate::toffoli(0, 1, 2)])
            .unwrap();
        let inv = c.invert();
        assert_eq!(inv.moments()[0].gates, vec![Gate::toffoli(0, 1, 2)]);
        assert_eq!(inv.moments()[1].gates, vec![Gate::cnot(0, 1)]);

        let r = Circuit::empty(2)
            .unwrap()
            .append_moment(vec![Gate::cv(0, 1)])
            .unwrap();
        assert_eq!(r.invert().moments()[0].gates, vec![Gate::cv_dagger(0, 1)]);
        assert_eq!(r.invert().invert(), r);
    }

    #[test]
    fn concatenate_checks_shape() {
        let six = Circuit::empty(6).unwrap();
        let seven = Circuit::empty(7).unwrap();
        assert!(matches!(
            six.concatenate(&seven),
            Err(CircuitError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn concatenate_with_empty_is_identity() {
        let c = Circuit::empty(3)
            .unwrap()
            .with_role(WireRole::InputA(0), WireId(1))
            .unwrap()
            .append_moment(vec![Gate::cnot(1, 2)])
            .unwrap();
        let e = Circuit::empty(3).unwrap();
        assert_eq!(e.concatenate(&c).unwrap(), c);
        assert_eq!(c.concatenate(&e).unwrap(), c);
    }

    #[test]
    fn concatenate_rejects_conflicting_roles() {
        let x = Circuit::empty(2)
            .unwrap()
            .with_role(WireRole::OutputZ, WireId(0))
            .unwrap();
        let y = Circuit::empty(2)
            .unwrap()
            .with_role(WireRole::OutputZ, WireId(1))
            .unwrap();
        assert!(x.concatenate(&y).is_err());
        let w = Circuit::empty(2)
            .unwrap()
            .with_role(WireRole::Ancilla, WireId(0))
            .unwrap();
        assert!(x.concatenate(&w).is_err());
    }

    #[test]
    fn roles_are_injective() {
        let c = Circuit::empty(2)
            .unwrap()
            .with_role(WireRole::Ancilla, WireId(0))
            .unwrap();
        assert!(c.with_role(WireRole::Ancilla, WireId(1)).is_err());
        assert!(c.with_role(WireRole::OutputZ, WireId(0)).is_err());
    }

    #[test]
    fn role_names_round_trip() {
        for role in [
            WireRole::InputA(0),
            WireRole::InputB(17),
            WireRole::Ancilla,
            WireRole::OutputZ,
            WireRole::IncomingCarry,
        ] {
            assert_eq!(WireRole::parse(&role.name()), Some(role));
        }
        assert_eq!(WireRole::parse("a"), None);
        assert_eq!(WireRole::parse("a01"), None);
        assert_eq!(WireRole::parse("c3"), None);
    }

    #[test]
    fn without_gate_drops_emptied_moment() {
        let c = Circuit::empty(2)
            .unwrap()
            .append_moment(vec![Gate::not(0)])
            .unwrap()
            .append_moment(vec![Gate::not(0), Gate::not(1)])
            .unwrap();
        assert_eq!(c.without_gate(0, 0).unwrap().depth(), 1);
        assert_eq!(c.without_gate(1, 1).unwrap().gate_count(), 2);
        assert!(c.without_gate(2, 0).is_none());
    }
}
