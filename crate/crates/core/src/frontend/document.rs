//! The line-based `.arg` framework format.
//!
//! ```text
//! # comment
//! value prog
//! value trad
//! fact F
//! order trad > prog
//! arg na_p value=prog claim="~a"
//! att na_p a_t
//! natt a_t cl_1
//! ```
//!
//! Declarations may appear in any order: values and facts are read first,
//! then arguments, then order lines and attack statuses.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::formula::parse_formula;
use crate::framework::{Argument, AttackStatus, Framework, ValueName};

fn doc_err(line: usize, message: impl Into<String>) -> Error {
    Error::Document {
        line,
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '\''))
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                return None;
            }
            let (keyword, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
            Some(Line {
                number: i + 1,
                keyword,
                rest: rest.trim(),
            })
        })
        .collect()
}

fn names<'a>(line: &Line<'a>, expected: usize) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = line.rest.split_whitespace().collect();
    if parts.len() != expected {
        return Err(doc_err(
            line.number,
            format!("`{}` takes {expected} name(s), found {}", line.keyword, parts.len()),
        ));
    }
    for p in &parts {
        if !is_name(p) {
            return Err(doc_err(line.number, format!("`{p}` is not a valid name")));
        }
    }
    Ok(parts)
}

/// Splits `value=V claim="..."` into key/value pairs.
fn attributes(line: &Line<'_>, mut s: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    loop {
        s = s.trim_start();
        if s.is_empty() {
            return Ok(out);
        }
        let Some(eq) = s.find('=') else {
            return Err(doc_err(line.number, format!("expected key=value, found `{s}`")));
        };
        let key = s[..eq].trim().to_string();
        s = &s[eq + 1..];
        let value = if let Some(quoted) = s.strip_prefix('"') {
            let Some(end) = quoted.find('"') else {
                return Err(doc_err(line.number, "unterminated quoted string"));
            };
            let v = quoted[..end].to_string();
            s = &quoted[end + 1..];
            v
        } else {
            let end = s.find(char::is_whitespace).unwrap_or(s.len());
            let v = s[..end].to_string();
            s = &s[end..];
            v
        };
        out.push((key, value));
    }
}

pub fn parse_document(text: &str) -> Result<Framework> {
    let lines = lines(text);
    let mut fw = Framework::new();
    let at = |n: usize| move |e: Error| doc_err(n, e.to_string());

    for line in &lines {
        match line.keyword {
            "value" => {
                let parts: Vec<&str> = line.rest.split_whitespace().collect();
                if parts.is_empty() {
                    return Err(doc_err(line.number, "`value` needs at least one name"));
                }
                for p in parts {
                    if !is_name(p) {
                        return Err(doc_err(line.number, format!("`{p}` is not a valid name")));
                    }
                    fw.declare_value(p).map_err(at(line.number))?;
                }
            }
            "fact" => {
                let n = names(line, 1)?;
                fw.set_fact(n[0]).map_err(at(line.number))?;
            }
            "arg" | "att" | "natt" | "order" => {}
            other => return Err(doc_err(line.number, format!("unknown directive `{other}`"))),
        }
    }

    let mut arg_lines = Vec::new();
    for line in lines.iter().filter(|l| l.keyword == "arg") {
        let (id, rest) = line
            .rest
            .split_once(char::is_whitespace)
            .unwrap_or((line.rest, ""));
        if !is_name(id) {
            return Err(doc_err(line.number, format!("`{id}` is not a valid argument id")));
        }
        let mut arg = Argument::new(id);
        for (key, value) in attributes(line, rest)? {
            match key.as_str() {
                "value" if arg.value.is_none() => arg.value = Some(ValueName(value)),
                "claim" if arg.claim.is_none() => {
                    let f = parse_formula(&value)
                        .map_err(|e| doc_err(line.number, format!("claim of `{id}`: {e}")))?;
                    arg.claim = Some(f);
                }
                "value" | "claim" => return Err(doc_err(line.number, format!("`{key}` given twice"))),
                other => return Err(doc_err(line.number, format!("unknown attribute `{other}`"))),
            }
        }
        fw.add_argument(arg).map_err(at(line.number))?;
        arg_lines.push(line.number);
    }

    for line in &lines {
        match line.keyword {
            "order" => {
                let chain: Vec<ValueName> = line.rest.split('>').map(|s| ValueName::from(s.trim())).collect();
                if chain.len() < 2 || chain.iter().any(|v| v.0.is_empty()) {
                    return Err(doc_err(line.number, "`order` needs at least two values separated by `>`"));
                }
                fw.add_order_chain(chain).map_err(at(line.number))?;
            }
            "att" | "natt" => {
                let n = names(line, 2)?;
                let a = fw.index_of(n[0]).map_err(at(line.number))?;
                let b = fw.index_of(n[1]).map_err(at(line.number))?;
                let status = if line.keyword == "att" {
                    AttackStatus::Present
                } else {
                    AttackStatus::Absent
                };
                let current = fw.status(a, b);
                if current != AttackStatus::Unknown && current != status {
                    return Err(doc_err(
                        line.number,
                        format!("`{} {}` is declared both as an attack and as a non-attack", n[0], n[1]),
                    ));
                }
                fw.set_status(a, b, status);
            }
            _ => {}
        }
    }
    if let Err(e) = fw.check_labelling() {
        // Point at the first argument that lacks a label the others carry.
        let valued = fw.arguments().iter().any(|a| a.value.is_some());
        let claimed = fw.arguments().iter().any(|a| a.claim.is_some());
        let culprit = fw
            .arguments()
            .iter()
            .position(|a| (valued && a.value.is_none()) || (claimed && a.claim.is_none()))
            .unwrap_or(0);
        return Err(doc_err(arg_lines[culprit], e.to_string()));
    }
    Ok(fw)
}

pub fn serialize_document(fw: &Framework) -> String {
    let mut out = String::new();
    for v in fw.values() {
        writeln!(out, "value {v}").unwrap();
    }
    if let Some(f) = fw.fact() {
        writeln!(out, "fact {f}").unwrap();
    }
    for chain in fw.order_chains() {
        let names: Vec<&str> = chain.iter().map(|v| v.as_str()).collect();
        writeln!(out, "order {}", names.join(" > ")).unwrap();
    }
    for a in fw.arguments() {
        write!(out, "arg {}", a.id).unwrap();
        if let Some(v) = &a.value {
            write!(out, " value={v}").unwrap();
        }
        if let Some(c) = &a.claim {
            write!(out, " claim=\"{c}\"").unwrap();
        }
        out.push('\n');
    }
    for ((a, b), s) in fw.statuses() {
        let kw = match s {
            AttackStatus::Present => "att",
            AttackStatus::Absent => "natt",
            AttackStatus::Unknown => continue,
        };
        writeln!(out, "{kw} {} {}", fw.id(a), fw.id(b)).unwrap();
    }
    out
}
