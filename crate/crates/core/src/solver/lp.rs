use std::collections::HashSet;
use std::fmt::Write;

use super::model::{IlpModel, VarKind};
use crate::model::Sense;
use crate::num::Weight;

/// Maps ids to names accepted by LP readers: only `[A-Za-z0-9_]`, never
/// starting with a digit or with `e`/`E` followed by a digit, unique.
fn sanitise(ids: impl Iterator<Item = String>) -> Vec<String> {
    let mut used = HashSet::new();
    ids.map(|id| {
        let mut name: String = id
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let mut chars = name.chars();
        let first = chars.next();
        let second = chars.next();
        let needs_prefix = match first {
            None => true,
            Some(c) if c.is_ascii_digit() => true,
            Some('e' | 'E') => second.is_some_and(|c| c.is_ascii_digit()),
            _ => false,
        };
        if needs_prefix {
            name.insert_str(0, "v_");
        }
        let base = name.clone();
        let mut k = 1;
        while !used.insert(name.clone()) {
            name = format!("{base}_{k}");
            k += 1;
        }
        name
    })
    .collect()
}

fn write_terms<W: Weight>(out: &mut String, terms: &[(usize, W)], names: &[String]) {
    if terms.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (k, &(v, c)) in terms.iter().enumerate() {
        let sign = if c < W::zero() { "-" } else { "+" };
        let magnitude = c.to_i128().map(i128::unsigned_abs).unwrap_or_default();
        if k == 0 && sign == "+" {
            let _ = write!(out, " {magnitude} {}", names[v]);
        } else {
            let _ = write!(out, " {sign} {magnitude} {}", names[v]);
        }
    }
}

/// Renders the model in CPLEX LP format. The objective offset, which LP
/// files cannot carry, is written as a comment.
pub fn export_lp<W: Weight>(model: &IlpModel<W>) -> String {
    let names = sanitise(model.vars().iter().map(|v| v.name.clone()));
    let mut out = String::new();
    out.push_str("\\ collective decision model\n");
    if !model.offset().is_zero() {
        let _ = writeln!(out, "\\ objective offset: {}", model.offset());
    }
    out.push_str("Maximize\n obj:");
    write_terms(&mut out, model.objective(), &names);
    out.push_str("\nSubject To\n");
    for (r, row) in model.rows().iter().enumerate() {
        let _ = write!(out, " c{}:", r + 1);
        write_terms(&mut out, &row.terms, &names);
        let sense = match row.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {sense} {}", row.rhs);
    }
    let general: Vec<usize> = model
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, v)| matches!(v.kind, VarKind::Integer { .. }))
        .map(|(k, _)| k)
        .collect();
    let binary: Vec<usize> = model
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.kind == VarKind::Binary)
        .map(|(k, _)| k)
        .collect();
    out.push_str("Bounds\n");
    for &k in &general {
        let (lo, hi) = model.vars()[k].kind.bounds();
        let _ = writeln!(out, " {lo} <= {} <= {hi}", names[k]);
    }
    if !binary.is_empty() {
        out.push_str("Binary\n");
        for &k in &binary {
            let _ = writeln!(out, " {}", names[k]);
        }
    }
    if !general.is_empty() {
        out.push_str("General\n");
        for &k in &general {
            let _ = writeln!(out, " {}", names[k]);
        }
    }
    out.push_str("End\n");
    out
}
