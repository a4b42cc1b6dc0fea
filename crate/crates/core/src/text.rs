//! Line-based circuit text format.
//!
//! ```text
//! wires 4
//! label 3 scratch
//! role a0 0
//! role b0 1
//! ccnot 0 1 2
//! not 3
//! --
//! cnot 0 1
//! ```
//!
//! The header line comes first, then `label` lines, then `role` lines
//! (both ordered by wire index when rendered), then the gates. A `--` line
//! separates moments. Fields are separated by exactly one space, indices are
//! plain decimal, there is no trailing whitespace and the document ends with
//! a newline. Anything else is rejected with the offending line number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::circuit::{check_moment, Circuit, Gate, Moment, WireId, WireRole};
use crate::error::{CircuitError, ParseError};

pub fn render(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "wires {}", circuit.wire_count());
    for (i, label) in circuit.labels().iter().enumerate() {
        if let Some(label) = label {
            let _ = writeln!(out, "label {i} {label}");
        }
    }
    let mut roles: Vec<(WireId, WireRole)> =
        circuit.roles().iter().map(|(r, w)| (*w, *r)).collect();
    roles.sort();
    for (wire, role) in roles {
        let _ = writeln!(out, "role {role} {wire}");
    }
    for (i, moment) in circuit.moments().iter().enumerate() {
        if i > 0 {
            out.push_str("--\n");
        }
        for gate in moment.iter() {
            let _ = writeln!(out, "{gate}");
        }
    }
    out
}

#[derive(PartialEq, PartialOrd)]
enum Section {
    Labels,
    Roles,
    Gates,
}

fn index(field: &str, line: usize) -> Result<usize, ParseError> {
    let plain = !field.is_empty()
        && field.bytes().all(|b| b.is_ascii_digit())
        && (field == "0" || !field.starts_with('0'));
    if !plain {
        return Err(ParseError::new(line, format!("bad index `{field}`")));
    }
    field
        .parse()
        .map_err(|_| ParseError::new(line, format!("index `{field}` too large")))
}

fn gate(fields: &[&str], line: usize) -> Result<Gate, ParseError> {
    let idx = |k: usize| index(fields[k], line).map(WireId);
    let arity = match fields[0] {
        "not" => 1,
        "cnot" | "cv" | "cvdg" => 2,
        "ccnot" => 3,
        other => return Err(ParseError::new(line, format!("unknown gate `{other}`"))),
    };
    if fields.len() != arity + 1 {
        return Err(ParseError::new(
            line,
            format!("`{}` takes {arity} operand(s)", fields[0]),
        ));
    }
    Ok(match fields[0] {
        "not" => Gate::Not(idx(1)?),
        "cnot" => Gate::CNot(idx(1)?, idx(2)?),
        "cv" => Gate::CV(idx(1)?, idx(2)?),
        "cvdg" => Gate::CVDagger(idx(1)?, idx(2)?),
        _ => Gate::Toffoli(idx(1)?, idx(2)?, idx(3)?),
    })
}

fn moment_error(err: CircuitError, line: usize) -> ParseError {
    ParseError::new(line, err.to_string())
}

pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    if text.is_empty() {
        return Err(ParseError::new(1, "empty document"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        let last = text.lines().count();
        return Err(ParseError::new(last, "missing final newline"));
    };
    let lines: Vec<&str> = body.split('\n').collect();

    for (i, l) in lines.iter().enumerate() {
        if l.is_empty() {
            return Err(ParseError::new(i + 1, "blank line"));
        }
        if l.starts_with(' ') || l.ends_with(' ') || l.contains("  ") || l.contains(['\t', '\r']) {
            return Err(ParseError::new(
                i + 1,
                "fields must be separated by single spaces",
            ));
        }
    }

    let header: Vec<&str> = lines[0].split(' ').collect();
    let wire_count = match header.as_slice() {
        ["wires", k] => index(k, 1)?,
        _ => return Err(ParseError::new(1, "expected `wires <K>`")),
    };
    if wire_count == 0 {
        return Err(ParseError::new(1, "a circuit needs at least one wire"));
    }

    let mut labels = vec![None; wire_count];
    let mut roles = BTreeMap::new();
    let mut role_wires = vec![false; wire_count];
    let mut moments: Vec<(usize, Moment)> = Vec::new();
    let mut current = Moment::default();
    let mut current_start = 0;
    let mut section = Section::Labels;

    for (i, l) in lines.iter().enumerate().skip(1) {
        let n = i + 1;
        let fields: Vec<&str> = l.split(' ').collect();
        let wire_at = |k: usize| -> Result<usize, ParseError> {
            let w = index(fields[k], n)?;
            if w >= wire_count {
                return Err(ParseError::new(n, format!("wire {w} out of range")));
            }
            Ok(w)
        };
        match fields[0] {
            "label" => {
                if section > Section::Labels {
                    return Err(ParseError::new(n, "labels must precede roles and gates"));
                }
                if fields.len() != 3 {
                    return Err(ParseError::new(n, "expected `label <idx> <name>`"));
                }
                let w = wire_at(1)?;
                if labels[w].replace(fields[2].to_string()).is_some() {
                    return Err(ParseError::new(n, format!("wire {w} labelled twice")));
                }
            }
            "role" => {
                if section > Section::Roles {
                    return Err(ParseError::new(n, "roles must precede gates"));
                }
                section = Section::Roles;
                if fields.len() != 3 {
                    return Err(ParseError::new(n, "expected `role <name> <idx>`"));
                }
                let role = WireRole::parse(fields[1])
                    .ok_or_else(|| ParseError::new(n, format!("unknown role `{}`", fields[1])))?;
                let w = wire_at(2)?;
                if roles.insert(role, WireId(w)).is_some() {
                    return Err(ParseError::new(n, format!("duplicate role {role}")));
                }
                if std::mem::replace(&mut role_wires[w], true) {
                    return Err(ParseError::new(n, format!("wire {w} already has a role")));
                }
            }
            "--" => {
                if fields.len() != 1 {
                    return Err(ParseError::new(n, "separator takes no fields"));
                }
                if current.is_empty() {
                    return Err(ParseError::new(n, "empty moment"));
                }
                section = Section::Gates;
                moments.push((current_start, std::mem::take(&mut current)));
            }
            _ => {
                section = Section::Gates;
                let g = gate(&fields, n)?;
                if current.is_empty() {
                    current_start = n;
                }
                current.gates.push(g);
                check_moment(wire_count, &current).map_err(|e| moment_error(e, n))?;
            }
        }
    }
    if current.is_empty() {
        if !moments.is_empty() {
            return Err(ParseError::new(lines.len(), "empty moment"));
        }
    } else {
        moments.push((current_start, current));
    }

    let mut circuit = Circuit::empty(wire_count).expect("wire count checked above");
    for (w, label) in labels.into_iter().enumerate() {
        if let Some(label) = label {
            circuit = circuit
                .with_label(WireId(w), &label)
                .map_err(|e| ParseError::new(1, e.to_string()))?;
        }
    }
    for (role, wire) in roles {
        circuit = circuit
            .with_role(role, wire)
            .map_err(|e| ParseError::new(1, e.to_string()))?;
    }
    let starts: Vec<usize> = moments.iter().map(|(s, _)| *s).collect();
    circuit
        .with_moments(moments.into_iter().map(|(_, m)| m).collect())
        .map_err(|e| moment_error(e, starts.first().copied().unwrap_or(1)))
}
