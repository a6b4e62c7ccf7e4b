//! Frame dumps and the JSON substitution schema.
//!
//! A frame dump is `worlds: N` followed by one `u -> v` line per related
//! pair in lexicographic order. Model dumps append one valuation line per
//! world, in world order, naming the variables true there:
//! `world: {x,y}` for countermodels, `cluster: {p1,p3}` for characteristic
//! models. A countermodel ends with `refuted: w`.

use pretab_core::finitary::CharModel;
use pretab_core::kripke::CounterModel;
use pretab_core::{parse, Frame, FrameModel, ParseError, Substitution};
use serde_json::{Map, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

pub fn write_frame(frame: &Frame) -> String {
    let mut out = format!("worlds: {}\n", frame.size());
    for (u, v) in frame.pairs() {
        let _ = writeln!(out, "{u} -> {v}");
    }
    out
}

fn valuation_lines(out: &mut String, label: &str, sets: impl Iterator<Item = BTreeSet<String>>) {
    for set in sets {
        let names: Vec<String> = set.into_iter().collect();
        let _ = writeln!(out, "{label}: {{{}}}", names.join(","));
    }
}

fn true_vars(model: &FrameModel, w: usize) -> BTreeSet<String> {
    model
        .valuation()
        .iter()
        .filter(|(_, set)| set.contains(w))
        .map(|(name, _)| name.clone())
        .collect()
}

pub fn write_countermodel(cm: &CounterModel) -> String {
    let mut out = write_frame(cm.model.frame());
    valuation_lines(
        &mut out,
        "world",
        cm.model.frame().worlds().map(|w| true_vars(&cm.model, w)),
    );
    let _ = writeln!(out, "refuted: {}", cm.world);
    out
}

pub fn write_char_model(model: &CharModel) -> String {
    let mut out = write_frame(model.frame());
    valuation_lines(
        &mut out,
        "cluster",
        model.clusters().iter().map(|c| {
            model
                .true_vars(c.id)
                .into_iter()
                .map(String::from)
                .collect()
        }),
    );
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameParseError {
    #[error("line {0}: expected `worlds: N`")]
    Header(usize),
    #[error("line {0}: expected `u -> v` with worlds below the declared count")]
    Pair(usize),
    #[error("relation is not a preorder")]
    NotPreorder,
}

/// Reads the frame part of a dump; valuation lines are skipped.
pub fn read_frame(text: &str) -> Result<Frame, FrameParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (i, header) = lines.next().ok_or(FrameParseError::Header(1))?;
    let size: usize = header
        .trim()
        .strip_prefix("worlds:")
        .and_then(|n| n.trim().parse().ok())
        .ok_or(FrameParseError::Header(i + 1))?;
    let mut pairs = Vec::new();
    for (i, line) in lines {
        let Some((u, v)) = line.split_once("->") else {
            continue;
        };
        let parse = |s: &str| s.trim().parse::<usize>().ok().filter(|&w| w < size);
        match (parse(u), parse(v)) {
            (Some(u), Some(v)) => pairs.push((u, v)),
            _ => return Err(FrameParseError::Pair(i + 1)),
        }
    }
    Frame::from_pairs(size, &pairs).map_err(|_| FrameParseError::NotPreorder)
}

/// `{"x": "formula", ...}` with the canonical printer.
pub fn substitution_json(sigma: &Substitution) -> Value {
    Value::Object(
        sigma
            .iter()
            .map(|(x, f)| (x.clone(), Value::String(f.to_string())))
            .collect::<Map<_, _>>(),
    )
}

#[derive(Debug, Error)]
pub enum SubstitutionJsonError {
    #[error("expected an object of variable to formula strings, or a unify report")]
    Shape,
    #[error("binding for `{var}`: {source}")]
    Formula {
        var: String,
        #[source]
        source: ParseError,
    },
}

/// Accepts a bare substitution object, an array whose first element is one,
/// or a unify report (its first unifier).
pub fn read_substitution(value: &Value) -> Result<Substitution, SubstitutionJsonError> {
    let object = match value {
        Value::Object(map) if map.contains_key("unifiers") => map["unifiers"]
            .as_array()
            .and_then(|a| a.first())
            .and_then(Value::as_object)
            .ok_or(SubstitutionJsonError::Shape)?,
        Value::Object(map) => map,
        Value::Array(items) => items
            .first()
            .and_then(Value::as_object)
            .ok_or(SubstitutionJsonError::Shape)?,
        _ => return Err(SubstitutionJsonError::Shape),
    };
    let mut sigma = Substitution::new();
    for (var, text) in object {
        let text = text.as_str().ok_or(SubstitutionJsonError::Shape)?;
        let f = parse(text).map_err(|source| SubstitutionJsonError::Formula {
            var: var.clone(),
            source,
        })?;
        sigma.insert(var.clone(), f);
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pretab_core::kripke::make_frame;
    use pretab_core::Logic;

    #[test]
    fn frame_round_trip() {
        for logic in Logic::ALL {
            let f = make_frame(logic, 3).unwrap();
            let text = write_frame(&f);
            assert!(text.starts_with("worlds: "));
            assert_eq!(read_frame(&text).unwrap(), f);
        }
    }

    #[test]
    fn frame_errors() {
        assert_eq!(read_frame("nodes 3"), Err(FrameParseError::Header(1)));
        assert_eq!(
            read_frame("worlds: 2\n0 -> 5\n"),
            Err(FrameParseError::Pair(2))
        );
        assert_eq!(
            read_frame("worlds: 2\n0 -> 1\n"),
            Err(FrameParseError::NotPreorder)
        );
    }

    #[test]
    fn substitution_round_trip() {
        let mut s = Substitution::new();
        s.insert("x", parse("[]y -> y & <>~z").unwrap());
        s.insert("y", parse("true").unwrap());
        let json = substitution_json(&s);
        assert_eq!(read_substitution(&json).unwrap(), s);
        let report = serde_json::json!({ "unifiable": true, "unifiers": [json.clone()] });
        assert_eq!(read_substitution(&report).unwrap(), s);
        assert!(read_substitution(&serde_json::json!(3)).is_err());
    }
}
