//! Shared fixtures and a small bitmask reference implementation that does
//! not go through the library's own search or defeat code.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use argsem::frontend::parse_document;
use argsem::{Argument, AttackStatus, Extension, Formula, Framework, ValueOrder};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn corpus(name: &str) -> Framework {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpus/{name}.arg"));
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_document(&text).unwrap()
}

pub fn ext(ids: &[&str]) -> Extension {
    Extension::from_ids(ids)
}

pub fn ids(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Attack relation as `att[a] & (1 << b)`.
pub struct Graph {
    pub n: usize,
    pub att: Vec<u32>,
}

impl Graph {
    pub fn from_framework(fw: &Framework) -> Graph {
        let n = fw.len();
        let mut att = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if fw.status(a, b) == AttackStatus::Present {
                    att[a] |= 1 << b;
                }
            }
        }
        Graph { n, att }
    }

    /// Keeps attacks whose target's value is not ranked above the attacker's.
    pub fn defeats(fw: &Framework, order: &ValueOrder) -> Graph {
        let mut rank: Vec<String> = Vec::new();
        if let Some(f) = order.fact() {
            rank.push(f.0.clone());
        }
        rank.extend(order.ranking().iter().map(|v| v.0.clone()));
        let pos = |i: usize| {
            let v = fw.value_of(i).unwrap();
            rank.iter().position(|r| *r == v.0).unwrap()
        };
        let mut g = Graph::from_framework(fw);
        for a in 0..g.n {
            for b in 0..g.n {
                if g.att[a] >> b & 1 == 1 && pos(b) < pos(a) {
                    g.att[a] &= !(1 << b);
                }
            }
        }
        g
    }

    fn attacks_set(&self, s: u32, x: usize) -> bool {
        (0..self.n).any(|a| s >> a & 1 == 1 && self.att[a] >> x & 1 == 1)
    }

    fn conflict_free(&self, s: u32) -> bool {
        (0..self.n).all(|a| s >> a & 1 == 0 || self.att[a] & s == 0)
    }

    fn defended(&self, s: u32, x: usize) -> bool {
        (0..self.n)
            .filter(|&b| self.att[b] >> x & 1 == 1)
            .all(|b| self.attacks_set(s, b))
    }

    pub fn admissible(&self, s: u32) -> bool {
        self.conflict_free(s) && (0..self.n).all(|x| s >> x & 1 == 0 || self.defended(s, x))
    }

    pub fn stable(&self, s: u32) -> bool {
        self.conflict_free(s) && (0..self.n).all(|x| s >> x & 1 == 1 || self.attacks_set(s, x))
    }

    pub fn preferred_masks(&self) -> Vec<u32> {
        let adm: Vec<u32> = (0u32..1 << self.n).filter(|&s| self.admissible(s)).collect();
        adm.iter()
            .copied()
            .filter(|&s| !adm.iter().any(|&t| t != s && t & s == s))
            .collect()
    }

    pub fn stable_masks(&self) -> Vec<u32> {
        (0u32..1 << self.n).filter(|&s| self.stable(s)).collect()
    }
}

pub fn masks_to_sets(fw: &Framework, masks: &[u32]) -> BTreeSet<BTreeSet<String>> {
    masks
        .iter()
        .map(|&m| (0..fw.len()).filter(|i| m >> i & 1 == 1).map(|i| fw.id(i).0.clone()).collect())
        .collect()
}

pub fn exts_to_sets(exts: &[Extension]) -> BTreeSet<BTreeSet<String>> {
    exts.iter().map(|e| e.iter().map(|i| i.0.clone()).collect()).collect()
}

pub fn random_af(rng: &mut ChaCha8Rng, max_n: usize) -> Framework {
    let n = rng.random_range(1..=max_n);
    let density = rng.random_range(0.05..0.45);
    let mut fw = Framework::new();
    for i in 0..n {
        fw.add_argument(Argument::new(format!("x{i}"))).unwrap();
    }
    for a in 0..n {
        for b in 0..n {
            if rng.random_bool(density) {
                fw.set_status(a, b, AttackStatus::Present);
            }
        }
    }
    fw
}

pub fn value_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("v{i}")).collect()
}

pub fn label_values(rng: &mut ChaCha8Rng, fw: &Framework, k: usize) -> Framework {
    let mut out = Framework::new();
    for v in value_names(k) {
        out.declare_value(v).unwrap();
    }
    for a in fw.arguments() {
        let mut arg = a.clone();
        arg.value = Some(format!("v{}", rng.random_range(0..k)).as_str().into());
        out.add_argument(arg).unwrap();
    }
    for ((a, b), s) in fw.statuses() {
        out.set_status(a, b, s);
    }
    out
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    const ATOMS: [&str; 3] = ["p", "q", "r"];
    if depth == 0 || rng.random_bool(0.35) {
        return Formula::atom(ATOMS[rng.random_range(0..ATOMS.len())]);
    }
    let l = random_formula(rng, depth - 1);
    match rng.random_range(0..4) {
        0 => Formula::not(l),
        1 => Formula::and(l, random_formula(rng, depth - 1)),
        2 => Formula::or(l, random_formula(rng, depth - 1)),
        _ => Formula::implies(l, random_formula(rng, depth - 1)),
    }
}

/// Claims on every argument, optionally values too, with random present and
/// absent edges.
pub fn random_claimed(rng: &mut ChaCha8Rng, n: usize, values: usize) -> Framework {
    let mut fw = Framework::new();
    for v in value_names(values) {
        fw.declare_value(v).unwrap();
    }
    for i in 0..n {
        let mut arg = Argument::new(format!("x{i}")).with_claim(random_formula(rng, 2));
        if values > 0 {
            arg = arg.with_value(format!("v{}", rng.random_range(0..values)));
        }
        fw.add_argument(arg).unwrap();
    }
    randomise_edges(rng, &mut fw);
    fw
}

pub fn randomise_edges(rng: &mut ChaCha8Rng, fw: &mut Framework) {
    let n = fw.len();
    for a in 0..n {
        for b in 0..n {
            let roll: f64 = rng.random();
            if roll < 0.15 {
                fw.set_status(a, b, AttackStatus::Present);
            } else if roll < 0.2 {
                fw.set_status(a, b, AttackStatus::Absent);
            }
        }
    }
}

/// Every ranking of `values`, generated here rather than by the library.
pub fn all_rankings(values: &[String]) -> Vec<Vec<String>> {
    if values.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, v) in values.iter().enumerate() {
        let mut rest = values.to_vec();
        rest.remove(i);
        for mut tail in all_rankings(&rest) {
            tail.insert(0, v.clone());
            out.push(tail);
        }
    }
    out
}
