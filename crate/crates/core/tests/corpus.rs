mod common;

use argsem::af::{oracle, Enumerator, Semantics};
use argsem::frontend::{export_dot, parse_document, serialize_document, DotOptions};
use argsem::saf::PrincipleSet;
use argsem::vaf::{self, classify_by_enumeration, classify_by_enumeration_with, classify_by_paths, DEFAULT_VALUE_CAP};
use argsem::{svaf, Framework};
use common::*;

const NAMES: [&str; 6] = ["ex1", "ex2", "vaf2", "dilemma1", "dilemma2", "svx"];
const SEMANTICS: [Semantics; 3] = [Semantics::Admissible, Semantics::Preferred, Semantics::Stable];

/// The graphs the semantics run on: the framework itself, or its defeat
/// graph under every order.
fn graphs(fw: &Framework) -> Vec<Framework> {
    if fw.is_value_labelled() {
        vaf::enumerate_orders(fw)
            .iter()
            .map(|o| vaf::defeat_graph(fw, o).unwrap())
            .collect()
    } else {
        vec![fw.clone()]
    }
}

#[test]
fn search_agrees_with_the_oracle_on_the_corpus() {
    for name in NAMES {
        for g in graphs(&corpus(name)) {
            for s in SEMANTICS {
                let fast = Enumerator::default().extensions(&g, s).unwrap();
                assert_eq!(fast, oracle::extensions(&g, s).unwrap(), "{name} {s}");
                assert_eq!(fast, Enumerator::sequential().extensions(&g, s).unwrap(), "{name} {s}");
            }
        }
    }
}

#[test]
fn classification_methods_agree() {
    for name in ["vaf2", "dilemma1", "dilemma2"] {
        let fw = corpus(name);
        let enumerated = classify_by_enumeration(&fw).unwrap();
        let sequential = classify_by_enumeration_with(&fw, &Enumerator::sequential(), DEFAULT_VALUE_CAP).unwrap();
        assert_eq!(enumerated, sequential, "{name}");
        if name != "vaf2" {
            assert!(enumerated.same_statuses(&classify_by_paths(&fw).unwrap()), "{name}");
        }
    }
}

#[test]
fn documents_round_trip() {
    for name in NAMES {
        let fw = corpus(name);
        assert_eq!(parse_document(&serialize_document(&fw)).unwrap(), fw, "{name}");
    }
}

#[test]
fn svx_document_matches_the_example() {
    let fw = corpus("svx");
    assert_eq!(fw.len(), 7);
    assert_eq!(fw.present_attacks().count(), 8);
    assert!(svaf::validate(&fw).is_empty());
    assert_eq!(svaf::find_one(&fw, "b & d", "trad").unwrap().as_str(), "bandd_t");
}

#[test]
fn vaf2_dot_has_two_colours() {
    let dot = export_dot(&corpus("vaf2"), &DotOptions::default());
    let nodes: Vec<&str> = dot.lines().filter(|l| l.contains("[label=")).collect();
    assert_eq!(nodes.len(), 4);
    let colours: std::collections::BTreeSet<&str> = nodes
        .iter()
        .map(|l| l.split("fillcolor=").nth(1).unwrap())
        .collect();
    assert_eq!(colours.len(), 2);
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -> ")).collect();
    assert_eq!(edges.len(), 4);
    assert!(edges.iter().all(|e| !e.contains("dashed")));
}

#[test]
fn svx_dot_shows_the_open_constraint() {
    let closed = svaf::close_logically(&corpus("svx")).unwrap();
    let (fw, trace) = svaf::apply_principles(&closed, &PrincipleSet::map()).unwrap();
    let c_prog = svaf::find_one(&fw, "c", "prog").unwrap();
    let dot = export_dot(
        &fw,
        &DotOptions {
            constraints: &trace.constraints,
            ..DotOptions::default()
        },
    );
    let dashed: Vec<&str> = dot.lines().filter(|l| l.contains("dashed")).collect();
    assert_eq!(dashed.len(), 1);
    assert!(dashed[0].contains(&format!("-> \"{c_prog}\"")));
    // Asserted non-attacks are not drawn.
    assert!(!dot.contains("\"a_t\" -> \"cl_1\""));
}
