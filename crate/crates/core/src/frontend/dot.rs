//! Graphviz export.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::framework::{AttackStatus, Framework};
use crate::saf::Constraint;

/// Fill colours assigned to values in declaration order, then the fact.
pub const PALETTE: [&str; 8] = [
    "#a6cee3", "#fdbf6f", "#b2df8a", "#fb9a99", "#cab2d6", "#ffff99", "#8dd3c7", "#d9d9d9",
];

#[derive(Clone, Debug)]
pub struct DotOptions<'a> {
    pub name: String,
    pub show_claims: bool,
    pub show_values: bool,
    /// Open constraints whose positive literals are drawn dashed.
    pub constraints: &'a [Constraint],
}

impl Default for DotOptions<'_> {
    fn default() -> Self {
        DotOptions {
            name: "framework".to_string(),
            show_claims: true,
            show_values: true,
            constraints: &[],
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn colour_of(fw: &Framework, value: &str) -> Option<&'static str> {
    let pos = fw
        .values()
        .iter()
        .position(|v| v.as_str() == value)
        .or_else(|| fw.fact().filter(|f| f.as_str() == value).map(|_| fw.values().len()))?;
    Some(PALETTE[pos % PALETTE.len()])
}

pub fn export_dot(fw: &Framework, options: &DotOptions<'_>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&options.name)).unwrap();
    writeln!(out, "  node [shape=ellipse, style=filled, fillcolor=white];").unwrap();
    for (i, a) in fw.arguments().iter().enumerate() {
        let mut label = a.id.0.clone();
        if options.show_claims {
            if let Some(c) = fw.claim_of(i) {
                write!(label, "\n{c}").unwrap();
            }
        }
        if options.show_values {
            if let Some(v) = fw.value_of(i) {
                write!(label, "\n[{v}]").unwrap();
            }
        }
        write!(out, "  {} [label={}", quote(a.id.as_str()), quote(&label)).unwrap();
        if let Some(colour) = fw.value_of(i).and_then(|v| colour_of(fw, v.as_str())) {
            write!(out, ", fillcolor={}", quote(colour)).unwrap();
        }
        out.push_str("];\n");
    }
    for (a, b) in fw.present_attacks() {
        writeln!(out, "  {} -> {};", quote(fw.id(a).as_str()), quote(fw.id(b).as_str())).unwrap();
    }
    let mut dashed = BTreeSet::new();
    for c in options.constraints {
        for lit in c.literals.iter().filter(|l| l.status == AttackStatus::Present) {
            let Ok(a) = fw.index_of(lit.attacker.as_str()) else { continue };
            for t in &lit.targets {
                if let Ok(b) = fw.index_of(t.as_str()) {
                    if fw.status(a, b) == AttackStatus::Unknown {
                        dashed.insert((a, b));
                    }
                }
            }
        }
    }
    for (a, b) in dashed {
        writeln!(
            out,
            "  {} -> {} [style=dashed];",
            quote(fw.id(a).as_str()),
            quote(fw.id(b).as_str())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_document;

    fn vaf2() -> Framework {
        parse_document(
            "value K\nvalue U\narg e1 value=K\narg e2 value=K\narg j1 value=U\narg j2 value=U\n\
             att e1 j1\natt j1 e1\natt e2 j1\natt j2 e2\n",
        )
        .unwrap()
    }

    #[test]
    fn coloured_nodes_and_solid_edges() {
        let dot = export_dot(&vaf2(), &DotOptions::default());
        assert_eq!(dot.matches(" [label=").count(), 4);
        let colours: BTreeSet<&str> = PALETTE.iter().copied().filter(|c| dot.contains(c)).collect();
        assert_eq!(colours.len(), 2);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(!dot.contains("dashed"));
    }

    #[test]
    fn empty_framework_is_a_digraph() {
        let dot = export_dot(&Framework::new(), &DotOptions::default());
        assert!(dot.starts_with("digraph \"framework\" {"));
        assert!(dot.trim_end().ends_with('}'));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn absent_edges_omitted_and_output_deterministic() {
        let fw = parse_document("arg a\narg b\natt a b\nnatt b a\n").unwrap();
        let dot = export_dot(&fw, &DotOptions::default());
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(dot, export_dot(&fw.clone(), &DotOptions::default()));
    }

    #[test]
    fn labels_are_escaped() {
        let fw = parse_document("value V\narg a value=V claim=\"a -> b\"\n").unwrap();
        let dot = export_dot(&fw, &DotOptions::default());
        assert!(dot.contains("label=\"a\\na -> b\\n[V]\""), "{dot}");
    }
}
