//! Construction of the majority/unmajority gates and of every adder variant.
//!
//! Two styles are available. `Simple` strings MAJ and UMA gates together one
//! gate per moment. `Optimized` emits the hand-scheduled time-slices of the
//! one-ancilla adder: all first MAJ CNOTs in one slice, the Toffoli/CNOT
//! swaps that let neighbouring MAJ (and UMA) gates overlap, the low carry
//! computed by a single Toffoli into the ancilla, and the high carry written
//! straight into the output wire.
//!
//! Wire layouts (top to bottom):
//!
//! * simple, and optimized with incoming carry: `c0, b0, a0, b1, a1, ..., [z]`
//! * optimized without incoming carry: `b0, a0, anc, b1, a1, ..., [z]`
//!
//! where `c0` is the ancilla or the incoming-carry wire.

use std::fmt;

use crate::circuit::{Circuit, CircuitBuilder, Gate, WireId, WireRole};
use crate::error::BuildError;

/// Arithmetic function computed by a variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Function {
    /// `b := a + b`, high bit xored into `z`.
    Add,
    /// `b := a + b mod 2^n`, no high bit.
    AddMod2n,
    /// `z ^= carry(a + b)`, `b` restored.
    HighBitOnly,
    /// `z ^= [a < b]` (with incoming carry `y`: `z ^= [a < b + y]`).
    Compare,
    /// `b := a - b mod 2^n`.
    Subtract,
}

impl Function {
    pub const ALL: [Function; 5] = [
        Function::Add,
        Function::AddMod2n,
        Function::HighBitOnly,
        Function::Compare,
        Function::Subtract,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Add => "add",
            Function::AddMod2n => "add-mod",
            Function::HighBitOnly => "high-bit",
            Function::Compare => "compare",
            Function::Subtract => "subtract",
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Whether the variant owns an `OutputZ` wire.
    pub fn has_output(self) -> bool {
        matches!(
            self,
            Function::Add | Function::HighBitOnly | Function::Compare
        )
    }

    /// Whether the `b` register is overwritten with a result.
    pub fn writes_b(self) -> bool {
        matches!(
            self,
            Function::Add | Function::AddMod2n | Function::Subtract
        )
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    Simple,
    Optimized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UmaStyle {
    TwoCnot,
    ThreeCnot,
}

/// Which circuit to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VariantSpec {
    pub function: Function,
    pub n: usize,
    pub incoming_carry: bool,
    pub style: Style,
}

impl VariantSpec {
    /// Optimized style, no incoming carry.
    pub fn new(function: Function, n: usize) -> Self {
        VariantSpec {
            function,
            n,
            incoming_carry: false,
            style: Style::Optimized,
        }
    }

    pub fn with_incoming_carry(mut self, incoming_carry: bool) -> Self {
        self.incoming_carry = incoming_carry;
        self
    }

    pub fn with_style(mut self, style: Style) -> Self {
        self.style = style;
        self
    }

    /// Smallest width the optimized slicing exists for. The modular variants
    /// run the optimized adder on `n - 1` bits.
    pub fn min_optimized_width(&self) -> usize {
        match self.function {
            Function::AddMod2n | Function::Subtract => 3,
            _ => 2,
        }
    }

    /// Style actually emitted by [`build`]: optimized requests below
    /// [`min_optimized_width`](Self::min_optimized_width) fall back to simple.
    pub fn effective_style(&self) -> Style {
        match self.style {
            Style::Optimized if self.n < self.min_optimized_width() => Style::Simple,
            s => s,
        }
    }

    pub fn has_ancilla(&self) -> bool {
        !self.incoming_carry
    }

    pub fn has_output(&self) -> bool {
        self.function.has_output()
    }

    /// Number of classical input bits swept by an exhaustive check:
    /// `a`, `b`, the initial `z` value and the incoming carry when present.
    /// Variants without an output wire still reserve the `z` bit so the
    /// packing is identical across variants.
    pub fn input_bits(&self) -> u32 {
        (2 * self.n + 1 + usize::from(self.incoming_carry)) as u32
    }

    pub fn check(&self) -> Result<(), BuildError> {
        if self.n == 0 {
            return Err(BuildError::UnsupportedWidth {
                n: 0,
                reason: "inputs need at least one bit",
            });
        }
        if self.function == Function::Subtract && self.incoming_carry {
            return Err(BuildError::UnsupportedCombination(
                "subtraction with an incoming carry is not defined",
            ));
        }
        Ok(())
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={}{}{}",
            self.function,
            self.n,
            if self.incoming_carry {
                " incoming-carry"
            } else {
                ""
            },
            match self.effective_style() {
                Style::Simple => " simple",
                Style::Optimized => "",
            }
        )
    }
}

fn distinct(c: WireId, b: WireId, a: WireId) -> Result<(), BuildError> {
    if c == b || b == a || a == c {
        Err(BuildError::DuplicateWire)
    } else {
        Ok(())
    }
}

/// In-place majority on `(c, b, a)`: leaves `c ^ a`, `b ^ a` and
/// `MAJ(a, b, c)` on the three wires.
pub fn maj_sequence(c: WireId, b: WireId, a: WireId) -> Result<Vec<Gate>, BuildError> {
    distinct(c, b, a)?;
    Ok(vec![
        Gate::CNot(a, b),
        Gate::CNot(a, c),
        Gate::Toffoli(c, b, a),
    ])
}

/// Unmajority-and-add: after [`maj_sequence`] on the same wires, restores `c`
/// and `a` and leaves the sum bit `a ^ b ^ c` on `b`.
pub fn uma_sequence(
    c: WireId,
    b: WireId,
    a: WireId,
    style: UmaStyle,
) -> Result<Vec<Gate>, BuildError> {
    distinct(c, b, a)?;
    Ok(match style {
        UmaStyle::TwoCnot => vec![Gate::Toffoli(c, b, a), Gate::CNot(a, c), Gate::CNot(c, b)],
        UmaStyle::ThreeCnot => vec![
            Gate::Not(b),
            Gate::CNot(c, b),
            Gate::Toffoli(c, b, a),
            Gate::Not(b),
            Gate::CNot(a, c),
            Gate::CNot(a, b),
        ],
    })
}

/// Wire assignment shared by all builders.
#[derive(Debug, Clone)]
struct Layout {
    a: Vec<usize>,
    b: Vec<usize>,
    /// Ancilla or incoming-carry wire.
    carry: usize,
    z: Option<usize>,
    wire_count: usize,
}

impl Layout {
    fn new(spec: &VariantSpec, style: Style) -> Layout {
        let n = spec.n;
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        let carry;
        if style == Style::Optimized && !spec.incoming_carry {
            b.push(0);
            a.push(1);
            carry = 2;
        } else {
            carry = 0;
            b.push(1);
            a.push(2);
        }
        for i in 1..n {
            b.push(1 + 2 * i);
            a.push(2 + 2 * i);
        }
        let z = spec.has_output().then_some(2 * n + 1);
        Layout {
            a,
            b,
            carry,
            z,
            wire_count: 2 * n + 1 + usize::from(z.is_some()),
        }
    }

    fn builder(&self, spec: &VariantSpec) -> CircuitBuilder {
        let mut builder = CircuitBuilder::new(self.wire_count);
        for i in 0..spec.n {
            builder.role(WireRole::InputA(i), self.a[i]);
            builder.role(WireRole::InputB(i), self.b[i]);
        }
        let carry_role = if spec.incoming_carry {
            WireRole::IncomingCarry
        } else {
            WireRole::Ancilla
        };
        builder.role(carry_role, self.carry);
        if let Some(z) = self.z {
            builder.role(WireRole::OutputZ, z);
        }
        builder
    }

    fn negate_a(&self) -> Vec<Gate> {
        self.a.iter().map(|&w| Gate::not(w)).collect()
    }

    fn negate_b(&self) -> Vec<Gate> {
        self.b.iter().map(|&w| Gate::not(w)).collect()
    }
}

/// Builds the circuit described by `spec`.
pub fn build(spec: &VariantSpec) -> Result<Circuit, BuildError> {
    spec.check()?;
    let style = spec.effective_style();
    let layout = Layout::new(spec, style);
    let mut builder = layout.builder(spec);
    let n = spec.n;
    let ic = spec.incoming_carry;

    let slices = match style {
        Style::Optimized => {
            let chain = |m: usize, out: usize| Chain {
                layout: &layout,
                m,
                out,
                incoming_carry: ic,
            };
            match spec.function {
                Function::Add => chain(n, layout.z.unwrap()).full_adder(),
                Function::AddMod2n => mod_adder(&layout, &chain(n - 1, layout.b[n - 1])),
                Function::HighBitOnly => chain(n, layout.z.unwrap()).high_bit(),
                Function::Compare => {
                    wrap_complement(&layout, chain(n, layout.z.unwrap()).high_bit(), false)
                }
                Function::Subtract => wrap_complement(
                    &layout,
                    mod_adder(&layout, &chain(n - 1, layout.b[n - 1])),
                    true,
                ),
            }
        }
        Style::Simple => {
            let simple = |m: usize, out: usize| SimpleChain {
                layout: &layout,
                m,
                out,
                incoming_carry: ic,
            };
            let serial = |gates: Vec<Gate>| gates.into_iter().map(|g| vec![g]).collect::<Vec<_>>();
            match spec.function {
                Function::Add => serial(simple(n, layout.z.unwrap()).adder()),
                Function::AddMod2n => serial(simple_mod_adder(&layout, n, ic)),
                Function::HighBitOnly => serial(simple(n, layout.z.unwrap()).high_bit()),
                Function::Compare => wrap_complement(
                    &layout,
                    serial(simple(n, layout.z.unwrap()).high_bit()),
                    false,
                ),
                Function::Subtract => {
                    wrap_complement(&layout, serial(simple_mod_adder(&layout, n, ic)), true)
                }
            }
        }
    };
    for slice in slices {
        builder.slice(slice);
    }
    Ok(builder.finish())
}

/// Complement `a` before, and `a` (plus `b` when `also_b`) after.
fn wrap_complement(layout: &Layout, inner: Vec<Vec<Gate>>, also_b: bool) -> Vec<Vec<Gate>> {
    let mut slices = Vec::with_capacity(inner.len() + 2);
    slices.push(layout.negate_a());
    slices.extend(inner);
    let mut tail = layout.negate_a();
    if also_b {
        tail.extend(layout.negate_b());
    }
    slices.push(tail);
    slices
}

/// The optimized adder on the low `n - 1` bits with `b_{n-1}` as its output,
/// and `b_{n-1} ^= a_{n-1}` riding in the final slice.
fn mod_adder(layout: &Layout, low: &Chain<'_>) -> Vec<Vec<Gate>> {
    let top = layout.a.len() - 1;
    let mut slices = low.full_adder();
    slices
        .last_mut()
        .expect("adder has slices")
        .push(Gate::cnot(layout.a[top], layout.b[top]));
    slices
}

/// Time-sliced ripple over bits `0..m` writing the high carry into `out`.
///
/// Positions are numbered by bit. Without incoming carry the low carry is
/// produced by one Toffoli into the ancilla and the MAJ ripple starts at
/// position 1; with incoming carry it starts at position 0 with the
/// carry-in wire as its first carry.
struct Chain<'a> {
    layout: &'a Layout,
    m: usize,
    out: usize,
    incoming_carry: bool,
}

impl Chain<'_> {
    /// First position handled by a MAJ gate.
    fn lo(&self) -> usize {
        usize::from(!self.incoming_carry)
    }

    fn a(&self, i: usize) -> usize {
        self.layout.a[i]
    }

    fn b(&self, i: usize) -> usize {
        self.layout.b[i]
    }

    /// Wire holding the carry into position `j`.
    fn carry_wire(&self, j: usize) -> usize {
        if j == self.lo() {
            self.layout.carry
        } else {
            self.a(j - 1)
        }
    }

    /// The second CNOT of the MAJ gate at position `j`.
    fn ac(&self, j: usize) -> Gate {
        Gate::cnot(self.a(j), self.carry_wire(j))
    }

    /// The Toffoli of the MAJ gate at position `j`.
    fn tof(&self, j: usize) -> Gate {
        Gate::toffoli(self.carry_wire(j), self.b(j), self.a(j))
    }

    /// Carry into bit 1 computed directly from `a0 b0` (no incoming carry).
    fn low_toffoli(&self) -> Option<Gate> {
        (!self.incoming_carry).then(|| Gate::toffoli(self.a(0), self.b(0), self.layout.carry))
    }

    /// CNOT sharing the slice of the compute Toffoli at position `k - 2`:
    /// the MAJ CNOT of position `k`, or the copy of `a_{m-1}` into the output.
    fn companion(&self, k: usize) -> Option<Gate> {
        if k < self.m {
            Some(self.ac(k))
        } else if k == self.m {
            Some(self.out_copy())
        } else {
            None
        }
    }

    fn out_copy(&self) -> Gate {
        Gate::cnot(self.a(self.m - 1), self.out)
    }

    fn out_toffoli(&self) -> Gate {
        Gate::toffoli(self.carry_wire(self.m - 1), self.b(self.m - 1), self.out)
    }

    /// Slices up to (excluding) the central Toffoli.
    fn compute(&self) -> Vec<Vec<Gate>> {
        let (lo, m) = (self.lo(), self.m);
        let mut slices = Vec::new();
        slices.push((lo..m).map(|i| Gate::cnot(self.a(i), self.b(i))).collect());
        slices.push(vec![self.ac(lo)]);
        slices.push(
            self.low_toffoli()
                .into_iter()
                .chain(self.companion(lo + 1))
                .collect(),
        );
        for j in lo..m - 1 {
            slices.push(
                std::iter::once(self.tof(j))
                    .chain(self.companion(j + 2))
                    .collect(),
            );
        }
        slices
    }

    fn full_adder(&self) -> Vec<Vec<Gate>> {
        let (lo, m) = (self.lo(), self.m);
        let mut slices = self.compute();

        let mut middle = vec![self.out_toffoli()];
        middle.extend((lo..m - 1).map(|i| Gate::not(self.b(i))));
        slices.push(middle);
        slices.push(
            (lo..m)
                .map(|i| Gate::cnot(self.carry_wire(i), self.b(i)))
                .collect(),
        );
        for j in (lo..m - 1).rev() {
            let mut slice = vec![self.tof(j)];
            if j + 2 < m {
                slice.push(self.ac(j + 2));
                slice.push(Gate::not(self.b(j + 1)));
            }
            slices.push(slice);
        }
        let mut pre = self.low_toffoli().into_iter().collect::<Vec<_>>();
        if lo + 1 < m {
            pre.push(self.ac(lo + 1));
            pre.push(Gate::not(self.b(lo)));
        }
        slices.push(pre);
        slices.push(vec![self.ac(lo)]);
        slices.push((0..m).map(|i| Gate::cnot(self.a(i), self.b(i))).collect());
        slices
    }

    /// Compute half, central Toffoli, then the compute half undone except
    /// for the copy of `a_{m-1}` into the output.
    fn high_bit(&self) -> Vec<Vec<Gate>> {
        let compute = self.compute();
        let keep = self.out_copy();
        let mut slices = compute.clone();
        slices.push(vec![self.out_toffoli()]);
        for slice in compute.into_iter().rev() {
            let undo: Vec<Gate> = slice
                .iter()
                .rev()
                .filter(|g| **g != keep)
                .map(Gate::inverse)
                .collect();
            slices.push(undo);
        }
        slices
    }
}

/// MAJ chain, copy of the top carry, UMA chain; one gate at a time.
struct SimpleChain<'a> {
    layout: &'a Layout,
    m: usize,
    out: usize,
    incoming_carry: bool,
}

impl SimpleChain<'_> {
    fn carry_wire(&self, i: usize) -> WireId {
        WireId(if i == 0 {
            self.layout.carry
        } else {
            self.layout.a[i - 1]
        })
    }

    fn maj(&self, i: usize) -> Vec<Gate> {
        maj_sequence(
            self.carry_wire(i),
            WireId(self.layout.b[i]),
            WireId(self.layout.a[i]),
        )
        .expect("layout wires are distinct")
    }

    fn uma(&self, i: usize) -> Vec<Gate> {
        uma_sequence(
            self.carry_wire(i),
            WireId(self.layout.b[i]),
            WireId(self.layout.a[i]),
            UmaStyle::TwoCnot,
        )
        .expect("layout wires are distinct")
    }

    /// Copy of the top carry; omitted when it would copy a zero ancilla.
    fn copy(&self) -> Option<Gate> {
        if self.m == 0 && !self.incoming_carry {
            None
        } else {
            Some(Gate::CNot(self.carry_wire(self.m), WireId(self.out)))
        }
    }

    fn adder(&self) -> Vec<Gate> {
        let mut gates: Vec<Gate> = (0..self.m).flat_map(|i| self.maj(i)).collect();
        gates.extend(self.copy());
        gates.extend((0..self.m).rev().flat_map(|i| self.uma(i)));
        gates
    }

    fn high_bit(&self) -> Vec<Gate> {
        let majs: Vec<Gate> = (0..self.m).flat_map(|i| self.maj(i)).collect();
        let mut gates = majs.clone();
        gates.extend(self.copy());
        gates.extend(majs.iter().rev().map(Gate::inverse));
        gates
    }
}

fn simple_mod_adder(layout: &Layout, n: usize, incoming_carry: bool) -> Vec<Gate> {
    let low = SimpleChain {
        layout,
        m: n - 1,
        out: layout.b[n - 1],
        incoming_carry,
    };
    let mut gates = low.adder();
    gates.push(Gate::cnot(layout.a[n - 1], layout.b[n - 1]));
    gates
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(i: usize) -> WireId {
        WireId(i)
    }

    /// Applies classical gates to a bit vector.
    fn apply(gates: &[Gate], bits: &mut [bool]) {
        for g in gates {
            match *g {
                Gate::Not(t) => bits[t.0] ^= true,
                Gate::CNot(c, t) => bits[t.0] ^= bits[c.0],
                Gate::Toffoli(c1, c2, t) => bits[t.0] ^= bits[c1.0] & bits[c2.0],
                _ => panic!("classical gates only"),
            }
        }
    }

    fn maj(a: bool, b: bool, c: bool) -> bool {
        (a & b) ^ (a & c) ^ (b & c)
    }

    #[test]
    fn maj_truth_table() {
        let gates = maj_sequence(w(0), w(1), w(2)).unwrap();
        for x in 0..8u8 {
            let (c, b, a) = (x & 1 != 0, x & 2 != 0, x & 4 != 0);
            let mut bits = [c, b, a];
            apply(&gates, &mut bits);
            assert_eq!(
                bits,
                [c ^ a, b ^ a, maj(a, b, c)],
                "input c={c} b={b} a={a}"
            );
        }
    }

    #[test]
    fn maj_examples() {
        let gates = maj_sequence(w(0), w(1), w(2)).unwrap();
        let mut bits = [false; 3];
        apply(&gates, &mut bits);
        assert_eq!(bits, [false; 3]);
        let mut bits = [true, false, true];
        apply(&gates, &mut bits);
        assert_eq!(bits, [false, true, true]);
    }

    #[test]
    fn maj_then_uma_adds() {
        for style in [UmaStyle::TwoCnot, UmaStyle::ThreeCnot] {
            let mut gates = maj_sequence(w(0), w(1), w(2)).unwrap();
            gates.extend(uma_sequence(w(0), w(1), w(2), style).unwrap());
            for x in 0..8u8 {
                let (c, b, a) = (x & 1 != 0, x & 2 != 0, x & 4 != 0);
                let mut bits = [c, b, a];
                apply(&gates, &mut bits);
                assert_eq!(bits, [c, a ^ b ^ c, a]);
            }
        }
        let mut gates = maj_sequence(w(0), w(1), w(2)).unwrap();
        gates.extend(uma_sequence(w(0), w(1), w(2), UmaStyle::ThreeCnot).unwrap());
        let mut bits = [false, true, true];
        apply(&gates, &mut bits);
        assert_eq!(bits, [false, false, true]);
    }

    #[test]
    fn uma_styles_agree_on_all_inputs() {
        let two = uma_sequence(w(0), w(1), w(2), UmaStyle::TwoCnot).unwrap();
        let three = uma_sequence(w(0), w(1), w(2), UmaStyle::ThreeCnot).unwrap();
        for x in 0..8u8 {
            let start = [x & 1 != 0, x & 2 != 0, x & 4 != 0];
            let (mut p, mut q) = (start, start);
            apply(&two, &mut p);
            apply(&three, &mut q);
            assert_eq!(p, q);
        }
    }

    #[test]
    fn uma_gate_mix() {
        let two = uma_sequence(w(0), w(1), w(2), UmaStyle::TwoCnot).unwrap();
        let three = uma_sequence(w(0), w(1), w(2), UmaStyle::ThreeCnot).unwrap();
        let count = |g: &[Gate], f: fn(&Gate) -> bool| g.iter().filter(|x| f(x)).count();
        assert_eq!(count(&two, Gate::is_toffoli), 1);
        assert_eq!(count(&two, |g| matches!(g, Gate::CNot(..))), 2);
        assert_eq!(count(&three, Gate::is_toffoli), 1);
        assert_eq!(count(&three, |g| matches!(g, Gate::CNot(..))), 3);
        assert_eq!(count(&three, |g| matches!(g, Gate::Not(..))), 2);
    }

    #[test]
    fn duplicate_wires_rejected() {
        assert_eq!(
            maj_sequence(w(0), w(0), w(1)),
            Err(BuildError::DuplicateWire)
        );
        assert_eq!(
            uma_sequence(w(0), w(1), w(1), UmaStyle::TwoCnot),
            Err(BuildError::DuplicateWire)
        );
    }

    #[test]
    fn zero_width_rejected() {
        assert!(matches!(
            build(&VariantSpec::new(Function::Add, 0)),
            Err(BuildError::UnsupportedWidth { .. })
        ));
    }

    #[test]
    fn subtract_with_carry_rejected() {
        let spec = VariantSpec::new(Function::Subtract, 4).with_incoming_carry(true);
        assert!(matches!(
            build(&spec),
            Err(BuildError::UnsupportedCombination(_))
        ));
    }

    #[test]
    fn narrow_optimized_falls_back() {
        assert_eq!(
            VariantSpec::new(Function::Add, 1).effective_style(),
            Style::Simple
        );
        assert_eq!(
            VariantSpec::new(Function::Add, 2).effective_style(),
            Style::Optimized
        );
        assert_eq!(
            VariantSpec::new(Function::AddMod2n, 2).effective_style(),
            Style::Simple
        );
        assert_eq!(
            VariantSpec::new(Function::Subtract, 3).effective_style(),
            Style::Optimized
        );
    }

    #[test]
    fn optimized_layout_puts_ancilla_third() {
        let c = build(&VariantSpec::new(Function::Add, 6)).unwrap();
        assert_eq!(c.wire_of(WireRole::Ancilla), Some(WireId(2)));
        assert_eq!(c.wire_count(), 14);
        let s = build(&VariantSpec::new(Function::Add, 6).with_style(Style::Simple)).unwrap();
        assert_eq!(s.wire_of(WireRole::Ancilla), Some(WireId(0)));
    }

    #[test]
    fn roles_match_variant_shape() {
        for f in Function::ALL {
            for ic in [false, true] {
                let spec = VariantSpec::new(f, 5).with_incoming_carry(ic);
                let Ok(c) = build(&spec) else { continue };
                assert_eq!(c.wire_of(WireRole::Ancilla).is_some(), !ic);
                assert_eq!(c.wire_of(WireRole::IncomingCarry).is_some(), ic);
                assert_eq!(c.wire_of(WireRole::OutputZ).is_some(), f.has_output());
                assert_eq!(c.roles().len(), c.wire_count());
            }
        }
    }

    #[test]
    fn optimized_add_n6_counts() {
        let c = build(&VariantSpec::new(Function::Add, 6)).unwrap();
        let count = |f: fn(&Gate) -> bool| c.gates().filter(|g| f(g)).count();
        assert_eq!(count(Gate::is_toffoli), 11);
        assert_eq!(count(|g| matches!(g, Gate::CNot(..))), 27);
        assert_eq!(count(|g| matches!(g, Gate::Not(..))), 8);
        assert_eq!(c.depth(), 16);
    }
}
