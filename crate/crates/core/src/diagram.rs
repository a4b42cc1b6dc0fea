//! ASCII circuit diagrams.
//!
//! One rail per wire, with a spacer row between rails for the vertical
//! connectors. Each moment is a column group headed by its slice class
//! (`T`, `R`, `C`, `N`); gates whose vertical spans would overlap are split
//! into sub-columns of the same group. Controls are `*`, CNOT and NOT
//! targets `X`, CV targets `v` and CV† targets `V`.

use crate::circuit::{Circuit, Gate, Moment};
use crate::schedule::SliceClass;

fn symbol(gate: &Gate) -> char {
    match gate {
        Gate::Not(_) | Gate::CNot(..) | Gate::Toffoli(..) => 'X',
        Gate::CV(..) => 'v',
        Gate::CVDagger(..) => 'V',
    }
}

fn span(gate: &Gate) -> (usize, usize) {
    let w = gate.wires();
    let lo = w.iter().map(|w| w.0).min().unwrap_or(0);
    let hi = w.iter().map(|w| w.0).max().unwrap_or(0);
    (lo, hi)
}

/// Packs a moment's gates into sub-columns with disjoint spans.
fn sub_columns(moment: &Moment) -> Vec<Vec<Gate>> {
    let mut cols: Vec<Vec<Gate>> = Vec::new();
    for gate in moment.iter() {
        let (lo, hi) = span(gate);
        let free = cols.iter().position(|col| {
            col.iter().all(|g| {
                let (l, h) = span(g);
                hi < l || h < lo
            })
        });
        match free {
            Some(i) => cols[i].push(*gate),
            None => cols.push(vec![*gate]),
        }
    }
    cols
}

pub fn diagram(circuit: &Circuit) -> String {
    let wires = circuit.wire_count();
    let names: Vec<String> = (0..wires).map(|w| circuit.wire_name(w.into())).collect();
    let width = names.iter().map(String::len).max().unwrap_or(0);

    // rows[2w] is wire w, rows[2w+1] the spacer below it
    let row_count = 2 * wires - 1;
    let mut rows: Vec<String> = (0..row_count)
        .map(|r| {
            if r % 2 == 0 {
                format!("{:<width$} -", names[r / 2])
            } else {
                " ".repeat(width + 2)
            }
        })
        .collect();
    let mut header = " ".repeat(width + 2);

    for moment in circuit.moments() {
        let tag = SliceClass::of(moment).tag();
        for (k, col) in sub_columns(moment).iter().enumerate() {
            let mut cells = vec![None; row_count];
            for gate in col {
                let (lo, hi) = span(gate);
                cells[2 * lo..=2 * hi].fill(Some('|'));
                for c in gate.controls() {
                    cells[2 * c.0] = Some('*');
                }
                cells[2 * gate.target().0] = Some(symbol(gate));
            }
            for (r, row) in rows.iter_mut().enumerate() {
                let rail = if r % 2 == 0 { '-' } else { ' ' };
                row.push(cells[r].unwrap_or(rail));
                row.push(rail);
            }
            header.push(if k == 0 { tag } else { ' ' });
            header.push(' ');
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(if r % 2 == 0 { '-' } else { ' ' });
        }
        header.push(' ');
    }

    let mut out = String::new();
    if !circuit.moments().is_empty() {
        out.push_str(header.trim_end());
        out.push('\n');
    }
    for row in rows {
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Slice tags from the header row, one per moment.
pub fn group_tags(rendered: &str) -> Vec<char> {
    match rendered.lines().next() {
        Some(h) if !h.contains('-') => h.chars().filter(|c| !c.is_whitespace()).collect(),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build, Function, VariantSpec};

    #[test]
    fn single_cnot() {
        let c = Circuit::empty(2)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 1)])
            .unwrap();
        assert_eq!(diagram(&c), "    C\nw0 -*--\n    |\nw1 -X--\n");
    }

    #[test]
    fn crossing_and_sub_columns() {
        let c = Circuit::empty(4)
            .unwrap()
            .append_moment(vec![Gate::cnot(0, 2), Gate::cv(1, 3)])
            .unwrap();
        let d = diagram(&c);
        assert_eq!(
            d,
            "    R\nw0 -*----\n    |\nw1 -|-*--\n    | |\nw2 -X-|--\n      |\nw3 ---v--\n"
        );
    }

    #[test]
    fn empty_circuit_is_rails() {
        let c = Circuit::empty(2).unwrap();
        assert_eq!(diagram(&c), "w0 -\n\nw1 -\n");
    }

    #[test]
    fn adder_groups_match_depth() {
        let c = build(&VariantSpec::new(Function::Add, 6)).unwrap();
        let d = diagram(&c);
        let tags = group_tags(&d);
        assert_eq!(tags.len(), c.depth());
        assert_eq!(tags.iter().filter(|&&t| t != 'N').count(), 16);
        assert_eq!(diagram(&c), d);
    }
}
