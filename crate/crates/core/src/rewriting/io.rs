//! JSON and DOT serialization for presentations and coherence cells.

use super::{CoherenceCell, GenWord, Presentation2, RewriteError, Step};
use crate::SCHEMA_VERSION;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt::Write as _;

pub fn presentation_to_json(p: &Presentation2) -> Value {
    let rules: Vec<Value> = p
        .rules()
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "lhs": names(p, &r.lhs),
                "rhs": names(p, &r.rhs),
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "generators": p.generators().to_vec(),
        "rules": rules,
    })
}

pub fn presentation_from_json(v: &Value) -> Result<Presentation2, RewriteError> {
    let generators: Vec<String> = as_array(v, "generators")?
        .iter()
        .map(|g| {
            g.as_str()
                .map(str::to_string)
                .ok_or_else(|| RewriteError::BadFile("generator must be a string".into()))
        })
        .collect::<Result<_, _>>()?;
    let index: HashMap<&str, u32> = generators
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_str(), k as u32))
        .collect();
    let mut pairs = Vec::new();
    for r in as_array(v, "rules")? {
        let lhs = read_word(r.get("lhs"), &index)?;
        let rhs = read_word(r.get("rhs"), &index)?;
        pairs.push((lhs, rhs));
    }
    Presentation2::new(generators, pairs)
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, RewriteError> {
    v.get(field)
        .and_then(|x| x.as_array())
        .ok_or_else(|| RewriteError::BadFile(format!("missing `{field}` array")))
}

fn read_word(v: Option<&Value>, index: &HashMap<&str, u32>) -> Result<GenWord, RewriteError> {
    let arr = v
        .and_then(|x| x.as_array())
        .ok_or_else(|| RewriteError::BadFile("rule side must be an array".into()))?;
    arr.iter()
        .map(|g| {
            let s = g
                .as_str()
                .ok_or_else(|| RewriteError::BadFile("generator must be a string".into()))?;
            index
                .get(s)
                .copied()
                .ok_or_else(|| RewriteError::BadFile(format!("unknown generator `{s}`")))
        })
        .collect()
}

fn names(p: &Presentation2, w: &[u32]) -> Vec<String> {
    w.iter().map(|&g| p.generator_name(g).to_string()).collect()
}

fn step_json(s: &Step) -> Value {
    json!({ "rule": s.rule, "position": s.position() })
}

/// Cells as JSON, with optional per-cell extras merged in (used to annotate
/// highest-weight provenance).
pub fn cells_to_json(
    p: &Presentation2,
    cells: &[CoherenceCell],
    extras: Option<&[Value]>,
) -> Value {
    let out: Vec<Value> = cells
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut v = json!({
                "source": names(p, &c.branching.source(p)),
                "left": step_json(&c.branching.left),
                "right": step_json(&c.branching.right),
                "left_completion": c.left_completion.steps.iter().map(step_json).collect::<Vec<_>>(),
                "right_completion": c.right_completion.steps.iter().map(step_json).collect::<Vec<_>>(),
                "normal_form": names(p, &c.endpoint(p)),
            });
            if let Some(extra) = extras.and_then(|e| e.get(k)) {
                if let (Some(obj), Some(add)) = (v.as_object_mut(), extra.as_object()) {
                    for (key, val) in add {
                        obj.insert(key.clone(), val.clone());
                    }
                }
            }
            v
        })
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "cells": out })
}

/// Confluence diagram of one cell: two directed chains sharing endpoints.
pub fn cell_to_dot(p: &Presentation2, c: &CoherenceCell) -> String {
    let mut s = String::from("digraph cell {\n  rankdir=LR;\n");
    let mut emit_chain = |first: &Step, path: &super::RewritePath, side: &str| {
        let mut prev = p.display_word(&first.source(p));
        let mut next = p.display_word(&first.target(p));
        let _ = writeln!(
            s,
            "  \"{prev}\" -> \"{next}\" [label=\"r{} @{} ({side})\"];",
            first.rule,
            first.position()
        );
        prev = next;
        for step in &path.steps {
            next = p.display_word(&step.target(p));
            let _ = writeln!(
                s,
                "  \"{prev}\" -> \"{next}\" [label=\"r{} @{} ({side})\"];",
                step.rule,
                step.position()
            );
            prev = next;
        }
    };
    emit_chain(&c.branching.left, &c.left_completion, "L");
    emit_chain(&c.branching.right, &c.right_completion, "R");
    s.push_str("}\n");
    s
}
