//! Closed-form resource counts per variant, checked against built circuits.

use std::fmt::Write as _;

use crate::builders::{build, Function, VariantSpec};
use crate::schedule::report;

/// `coef * n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Linear {
    pub coef: i64,
    pub offset: i64,
}

impl Linear {
    const fn new(coef: i64, offset: i64) -> Self {
        Linear { coef, offset }
    }

    pub fn at(self, n: usize) -> i64 {
        self.coef * n as i64 + self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub inputs: i64,
    pub outputs: i64,
    pub ancillae: i64,
    pub toffoli: i64,
    pub cnot: i64,
    pub depth: i64,
    pub toffoli_slices: i64,
    pub cnot_slices: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub name: &'static str,
    /// `None` for reference rows with no construction here.
    pub function: Option<Function>,
    pub incoming_carry: bool,
    pub inputs: Linear,
    pub outputs: Linear,
    pub ancillae: Linear,
    pub toffoli: Linear,
    pub cnot: Linear,
    pub depth: Linear,
    pub toffoli_slices: Linear,
    pub cnot_slices: Linear,
}

impl TableRow {
    pub fn formula(&self, n: usize) -> Counts {
        Counts {
            inputs: self.inputs.at(n),
            outputs: self.outputs.at(n),
            ancillae: self.ancillae.at(n),
            toffoli: self.toffoli.at(n),
            cnot: self.cnot.at(n),
            depth: self.depth.at(n),
            toffoli_slices: self.toffoli_slices.at(n),
            cnot_slices: self.cnot_slices.at(n),
        }
    }

    /// Counts of a freshly built optimized circuit, if this row has one.
    pub fn measure(&self, n: usize) -> Option<Counts> {
        let spec = VariantSpec::new(self.function?, n).with_incoming_carry(self.incoming_carry);
        let r = report(&build(&spec).ok()?);
        Some(Counts {
            inputs: r.inputs as i64,
            outputs: r.outputs as i64,
            ancillae: r.ancillae as i64,
            toffoli: r.toffoli_count as i64,
            cnot: r.cnot_count as i64,
            depth: r.paper_depth as i64,
            toffoli_slices: r.toffoli_slices as i64,
            cnot_slices: r.cnot_slices as i64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceTable {
    pub rows: Vec<TableRow>,
}

/// Smallest width the formulas are stated for.
pub const MIN_TABLE_WIDTH: usize = 3;

#[allow(clippy::too_many_arguments)]
const fn row(
    name: &'static str,
    function: Option<Function>,
    incoming_carry: bool,
    bits: (Linear, Linear, Linear),
    toffoli: Linear,
    cnot: Linear,
    depth: Linear,
    cnot_slices: Linear,
    toffoli_slices: Linear,
) -> TableRow {
    TableRow {
        name,
        function,
        incoming_carry,
        inputs: bits.0,
        outputs: bits.1,
        ancillae: bits.2,
        toffoli,
        cnot,
        depth,
        toffoli_slices,
        cnot_slices,
    }
}

impl Default for ReferenceTable {
    #[rustfmt::skip]
    fn default() -> Self {
        let l = Linear::new;
        let plain = (l(2, 0), l(0, 1), l(0, 1));
        let carry = (l(2, 1), l(0, 1), l(0, 0));
        let plain_mod = (l(2, 0), l(0, 0), l(0, 1));
        let carry_mod = (l(2, 1), l(0, 0), l(0, 0));
        let vbe_bits = (l(2, 0), l(0, 1), l(1, 0));
        let add = Some(Function::Add);
        let add_mod = Some(Function::AddMod2n);
        let cmp = Some(Function::Compare);
        // name, function, ic, bits, toffoli, cnot, depth, cnot slices, toffoli slices
        ReferenceTable {
            rows: vec![
                row("add", add, false, plain, l(2, -1), l(5, -3), l(2, 4), l(0, 5), l(2, -1)),
                row("add", add, true, carry, l(2, -1), l(5, 1), l(2, 6), l(0, 7), l(2, -1)),
                row("add-mod", add_mod, false, plain_mod, l(2, -3), l(5, -7), l(2, 2), l(0, 5), l(2, -3)),
                row("add-mod", add_mod, true, carry_mod, l(2, -3), l(5, -3), l(2, 4), l(0, 7), l(2, -3)),
                row("compare", cmp, false, plain, l(2, -1), l(4, -3), l(2, 3), l(0, 4), l(2, -1)),
                row("compare", cmp, true, carry, l(2, -1), l(4, 1), l(2, 5), l(0, 6), l(2, -1)),
                row("vbe", None, false, vbe_bits, l(4, -2), l(4, -2), l(6, -2), l(3, -1), l(3, -1)),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowResult {
    pub row: TableRow,
    pub formula: Counts,
    pub measured: Option<Counts>,
}

impl RowResult {
    /// Reference-only rows always pass.
    pub fn matches(&self) -> bool {
        self.measured.is_none_or(|m| m == self.formula)
    }
}

impl ReferenceTable {
    pub fn evaluate(&self, n: usize) -> Vec<RowResult> {
        self.rows
            .iter()
            .map(|row| RowResult {
                formula: row.formula(n),
                measured: row.measure(n),
                row: row.clone(),
            })
            .collect()
    }
}

/// Fixed-width listing of evaluated rows.
pub fn render_table(n: usize, results: &[RowResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {n}");
    let _ = writeln!(
        out,
        "{:<8} {:<2} {:>4} {:>3} {:>3}  {:>17}  {:>17}  {:>10}  status",
        "function", "ic", "in", "out", "anc", "formula t/c/d", "measured t/c/d", "slices t+c"
    );
    for r in results {
        let f = r.formula;
        let triple = |c: Counts| format!("{} {} {}", c.toffoli, c.cnot, c.depth);
        let measured = r.measured.map_or_else(|| "-".to_string(), triple);
        let status = match (&r.measured, r.matches()) {
            (None, _) => "reference",
            (Some(_), true) => "ok",
            (Some(_), false) => "MISMATCH",
        };
        let _ = writeln!(
            out,
            "{:<8} {:<2} {:>4} {:>3} {:>3}  {:>17}  {:>17}  {:>10}  {status}",
            r.row.name,
            if r.row.incoming_carry { "Y" } else { "N" },
            f.inputs,
            f.outputs,
            f.ancillae,
            triple(f),
            measured,
            format!("{}+{}", f.toffoli_slices, f.cnot_slices),
        );
    }
    out
}
