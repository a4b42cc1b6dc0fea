//! Classical reference semantics and the exhaustive/sampled checkers.
//!
//! The reference adder follows the carry-string recurrence: `c_0` is the
//! incoming carry (zero when there is none), `c_{i+1} = MAJ(a_i, b_i, c_i)`,
//! `s_i = a_i ^ b_i ^ c_i` and the high bit is `c_n`.
//!
//! Exhaustive sweeps pack test vector `j` as: bits `[0, n)` = `a`,
//! `[n, 2n)` = `b`, bit `2n` = initial `z`, bit `2n + 1` = incoming carry
//! `y` (only when the variant has one). The ancilla starts at zero.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::builders::{build, Function, Style, VariantSpec};
use crate::circuit::{Circuit, WireRole};
use crate::error::OracleError;
use crate::sim::{run_basis, BasisBatch};

/// Widest operand the oracle handles (`a + b + y` must fit in a `u128`).
pub const MAX_ORACLE_WIDTH: usize = 127;

/// Exhaustive sweeps are limited to `2^DEFAULT_BUDGET_BITS` inputs.
pub const DEFAULT_BUDGET_BITS: u32 = 22;

/// Vectors per parallel work unit in exhaustive sweeps.
const CHUNK_WORDS: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OracleInput {
    pub n: usize,
    pub a: u128,
    pub b: u128,
    pub z: bool,
    pub y: bool,
}

impl OracleInput {
    pub fn new(n: usize, a: u128, b: u128) -> Self {
        OracleInput {
            n,
            a,
            b,
            z: false,
            y: false,
        }
    }

    pub fn with_z(mut self, z: bool) -> Self {
        self.z = z;
        self
    }

    pub fn with_carry(mut self, y: bool) -> Self {
        self.y = y;
        self
    }

    fn unpack(spec: &VariantSpec, index: u64) -> Self {
        let n = spec.n;
        let mask = (1u64 << n) - 1;
        OracleInput {
            n,
            a: (index & mask) as u128,
            b: ((index >> n) & mask) as u128,
            z: (index >> (2 * n)) & 1 == 1,
            y: spec.incoming_carry && (index >> (2 * n + 1)) & 1 == 1,
        }
    }
}

/// Expected final value of every role-tagged wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleExpectation {
    pub n: usize,
    /// Final contents of the `a` register, bit `i` on `InputA(i)`.
    pub a: u128,
    /// Final contents of the `b` register.
    pub b: u128,
    /// `None` when the variant has no output wire.
    pub z: Option<bool>,
    pub ancilla: bool,
    pub carry_in: bool,
}

impl OracleExpectation {
    pub fn value(&self, role: WireRole) -> Option<bool> {
        match role {
            WireRole::InputA(i) => (i < self.n).then(|| (self.a >> i) & 1 == 1),
            WireRole::InputB(i) => (i < self.n).then(|| (self.b >> i) & 1 == 1),
            WireRole::OutputZ => self.z,
            WireRole::Ancilla => Some(self.ancilla),
            WireRole::IncomingCarry => Some(self.carry_in),
        }
    }
}

/// `c_0 ..= c_n` for `a + b` with incoming carry `y`.
pub fn carry_string(n: usize, a: u128, b: u128, y: bool) -> Vec<bool> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(y);
    for i in 0..n {
        let (ai, bi, ci) = ((a >> i) & 1 == 1, (b >> i) & 1 == 1, c[i]);
        c.push((ai & bi) ^ (ai & ci) ^ (bi & ci));
    }
    c
}

/// Sum bits `s_0 ..= s_n` packed into an integer.
pub fn ripple_sum(n: usize, a: u128, b: u128, y: bool) -> u128 {
    let c = carry_string(n, a, b, y);
    let mut s = 0u128;
    for (i, &carry) in c.iter().take(n).enumerate() {
        let bit = ((a >> i) & 1 == 1) ^ ((b >> i) & 1 == 1) ^ carry;
        s |= u128::from(bit) << i;
    }
    s | (u128::from(c[n]) << n)
}

/// Expected outputs of `spec` on `input`.
pub fn expected(spec: &VariantSpec, input: &OracleInput) -> Result<OracleExpectation, OracleError> {
    let n = spec.n;
    if n == 0 || n > MAX_ORACLE_WIDTH {
        return Err(OracleError::RangeError(format!(
            "width {n} outside 1..={MAX_ORACLE_WIDTH}"
        )));
    }
    if input.n != n {
        return Err(OracleError::RangeError(format!(
            "input width {} does not match variant width {n}",
            input.n
        )));
    }
    let limit = 1u128 << n;
    if input.a >= limit || input.b >= limit {
        return Err(OracleError::RangeError(format!(
            "operands must be below 2^{n}"
        )));
    }
    if input.y && !spec.incoming_carry {
        return Err(OracleError::RangeError(
            "incoming carry set on a variant without one".into(),
        ));
    }
    let mask = limit - 1;
    let (a, b, z, y) = (input.a, input.b, input.z, input.y);
    let sum = ripple_sum(n, a, b, y);
    let high = (sum >> n) & 1 == 1;

    let (b_out, z_out) = match spec.function {
        Function::Add => (sum & mask, Some(z ^ high)),
        Function::AddMod2n => (sum & mask, None),
        Function::HighBitOnly => (b, Some(z ^ high)),
        Function::Compare => (b, Some(z ^ (a < b + u128::from(y)))),
        Function::Subtract => (a.wrapping_sub(b) & mask, None),
    };
    Ok(OracleExpectation {
        n,
        a,
        b: b_out,
        z: z_out,
        ancilla: false,
        carry_in: y,
    })
}

/// One wire that disagreed with the oracle on one input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mismatch {
    pub input: OracleInput,
    pub role: WireRole,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub spec: VariantSpec,
    pub mode: VerifyMode,
    pub inputs_checked: u64,
    /// Sorted by input, then role.
    pub mismatches: Vec<Mismatch>,
    pub elapsed: Duration,
}

/// Equality ignores `elapsed`.
impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.mode == other.mode
            && self.inputs_checked == other.inputs_checked
            && self.mismatches == other.mismatches
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// `key value` lines followed by up to `max_listed` mismatch lines.
    /// Timing is left out so the output is reproducible.
    pub fn to_kv(&self, max_listed: usize) -> String {
        let s = &self.spec;
        let mut out = String::new();
        writeln!(out, "variant {}", s.function).unwrap();
        writeln!(out, "n {}", s.n).unwrap();
        writeln!(out, "incoming_carry {}", u8::from(s.incoming_carry)).unwrap();
        match self.mode {
            VerifyMode::Exhaustive => writeln!(out, "mode exhaustive").unwrap(),
            VerifyMode::Random { samples, seed } => {
                writeln!(out, "mode random").unwrap();
                writeln!(out, "samples {samples}").unwrap();
                writeln!(out, "seed {seed}").unwrap();
            }
        }
        writeln!(out, "inputs_checked {}", self.inputs_checked).unwrap();
        writeln!(out, "mismatches {}", self.mismatches.len()).unwrap();
        writeln!(
            out,
            "result {}",
            if self.passed() { "pass" } else { "fail" }
        )
        .unwrap();
        for m in self.mismatches.iter().take(max_listed) {
            writeln!(
                out,
                "mismatch a={} b={} z={} y={} wire={} expected={} actual={}",
                m.input.a,
                m.input.b,
                u8::from(m.input.z),
                u8::from(m.input.y),
                m.role,
                u8::from(m.expected),
                u8::from(m.actual)
            )
            .unwrap();
        }
        out
    }
}

/// Wires the checker drives and reads, resolved from the circuit's roles.
struct Harness {
    roles: Vec<(WireRole, usize)>,
    wire_count: usize,
}

impl Harness {
    fn new(circuit: &Circuit, spec: &VariantSpec) -> Result<Harness, OracleError> {
        let mut needed: Vec<WireRole> = (0..spec.n)
            .flat_map(|i| [WireRole::InputA(i), WireRole::InputB(i)])
            .collect();
        if spec.has_output() {
            needed.push(WireRole::OutputZ);
        }
        if spec.incoming_carry {
            needed.push(WireRole::IncomingCarry);
        }
        let mut roles = Vec::with_capacity(needed.len() + 1);
        for role in needed {
            let wire = circuit
                .wire_of(role)
                .ok_or_else(|| OracleError::MissingRole(role.name()))?;
            roles.push((role, wire.0));
        }
        if let Some(w) = circuit.wire_of(WireRole::Ancilla) {
            roles.push((WireRole::Ancilla, w.0));
        }
        Ok(Harness {
            roles,
            wire_count: circuit.wire_count(),
        })
    }

    /// Runs `inputs` through the circuit and collects disagreements.
    fn check(
        &self,
        circuit: &Circuit,
        spec: &VariantSpec,
        inputs: &[OracleInput],
        batch: BasisBatch,
    ) -> Result<Vec<Mismatch>, OracleError> {
        let out = run_basis(circuit, &batch)?;
        let mut want = BasisBatch::zeros(self.wire_count, inputs.len());
        for (j, input) in inputs.iter().enumerate() {
            let e = expected(spec, input)?;
            for &(role, wire) in &self.roles {
                want.set_bit(wire, j, e.value(role).expect("harness roles are defined"));
            }
        }
        let mut mismatches = Vec::new();
        for &(role, wire) in &self.roles {
            for (k, (x, y)) in out.wire(wire).iter().zip(want.wire(wire)).enumerate() {
                let mut diff = x ^ y;
                while diff != 0 {
                    let j = k * 64 + diff.trailing_zeros() as usize;
                    diff &= diff - 1;
                    mismatches.push(Mismatch {
                        input: inputs[j],
                        role,
                        expected: want.bit(wire, j),
                        actual: out.bit(wire, j),
                    });
                }
            }
        }
        Ok(mismatches)
    }

    fn load(&self, inputs: &[OracleInput]) -> BasisBatch {
        let mut batch = BasisBatch::zeros(self.wire_count, inputs.len());
        for (j, input) in inputs.iter().enumerate() {
            for &(role, wire) in &self.roles {
                let bit = match role {
                    WireRole::InputA(i) => (input.a >> i) & 1 == 1,
                    WireRole::InputB(i) => (input.b >> i) & 1 == 1,
                    WireRole::OutputZ => input.z,
                    WireRole::IncomingCarry => input.y,
                    WireRole::Ancilla => false,
                };
                batch.set_bit(wire, j, bit);
            }
        }
        batch
    }
}

/// Builds `spec` and checks it on every input.
pub fn verify_exhaustive(spec: &VariantSpec) -> Result<VerificationReport, OracleError> {
    let circuit = build(spec)?;
    check_exhaustive(&circuit, spec)
}

/// Checks an arbitrary circuit against the oracle for `spec` on every input.
pub fn check_exhaustive(
    circuit: &Circuit,
    spec: &VariantSpec,
) -> Result<VerificationReport, OracleError> {
    check_exhaustive_with_budget(circuit, spec, DEFAULT_BUDGET_BITS)
}

pub fn check_exhaustive_with_budget(
    circuit: &Circuit,
    spec: &VariantSpec,
    budget_bits: u32,
) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    spec.check()?;
    let bits = spec.input_bits();
    if bits > budget_bits || bits > 40 {
        return Err(OracleError::BudgetExceeded {
            bits,
            budget: budget_bits,
        });
    }
    let harness = Harness::new(circuit, spec)?;
    let total = 1u64 << bits;
    let chunk = (CHUNK_WORDS * 64) as u64;

    let mut mismatches: Vec<Mismatch> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let first = c * chunk;
            let len = chunk.min(total - first) as usize;
            let inputs: Vec<OracleInput> = (first..first + len as u64)
                .map(|idx| OracleInput::unpack(spec, idx))
                .collect();
            let mut batch = BasisBatch::zeros(harness.wire_count, len);
            let n = spec.n;
            for &(role, wire) in &harness.roles {
                let bit = match role {
                    WireRole::InputA(i) => i,
                    WireRole::InputB(i) => n + i,
                    WireRole::OutputZ => 2 * n,
                    WireRole::IncomingCarry => 2 * n + 1,
                    WireRole::Ancilla => continue,
                };
                batch.fill_index_bit(wire, bit as u32, first as usize);
            }
            harness.check(circuit, spec, &inputs, batch)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    mismatches.sort();

    Ok(VerificationReport {
        spec: *spec,
        mode: VerifyMode::Exhaustive,
        inputs_checked: total,
        mismatches,
        elapsed: start.elapsed(),
    })
}

/// Builds `spec` and checks it on `samples` seeded random inputs.
pub fn verify_random(
    spec: &VariantSpec,
    samples: u64,
    seed: u64,
) -> Result<VerificationReport, OracleError> {
    let circuit = build(spec)?;
    check_random(&circuit, spec, samples, seed)
}

pub fn check_random(
    circuit: &Circuit,
    spec: &VariantSpec,
    samples: u64,
    seed: u64,
) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    spec.check()?;
    if samples == 0 {
        return Err(OracleError::NoSamples);
    }
    if spec.n > MAX_ORACLE_WIDTH {
        return Err(OracleError::RangeError(format!(
            "width {} exceeds {MAX_ORACLE_WIDTH}",
            spec.n
        )));
    }
    let harness = Harness::new(circuit, spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (1u128 << spec.n) - 1;
    let inputs: Vec<OracleInput> = (0..samples)
        .map(|_| OracleInput {
            n: spec.n,
            a: rng.random::<u128>() & mask,
            b: rng.random::<u128>() & mask,
            z: rng.random(),
            y: spec.incoming_carry && rng.random(),
        })
        .collect();

    let mut mismatches = Vec::new();
    for part in inputs.chunks(CHUNK_WORDS * 64) {
        let batch = harness.load(part);
        mismatches.extend(harness.check(circuit, spec, part, batch)?);
    }
    mismatches.sort();
    mismatches.dedup();

    Ok(VerificationReport {
        spec: *spec,
        mode: VerifyMode::Random { samples, seed },
        inputs_checked: samples,
        mismatches,
        elapsed: start.elapsed(),
    })
}

/// Every spec covered by the exhaustive sweep for widths `1..=max_n`:
/// each function with and without incoming carry, in both styles.
pub fn sweep_specs(max_n: usize) -> Vec<VariantSpec> {
    let mut specs = Vec::new();
    for f in Function::ALL {
        for ic in [false, true] {
            for style in [Style::Simple, Style::Optimized] {
                for n in 1..=max_n {
                    let spec = VariantSpec::new(f, n)
                        .with_incoming_carry(ic)
                        .with_style(style);
                    if spec.check().is_ok() {
                        specs.push(spec);
                    }
                }
            }
        }
    }
    specs
}
