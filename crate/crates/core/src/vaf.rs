//! Value-based frameworks: defeat under a value ordering, per-order Dung
//! semantics, chain extraction and the two classification methods (full
//! order enumeration and the five-path rule for two-valued frameworks).

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::af::{self, Enumerator, Extension, Semantics, Strategy};
use crate::error::{Error, Result};
use crate::framework::{ArgumentId, Framework, ValueName};

pub const DEFAULT_VALUE_CAP: usize = 8;

/// A strict preference between two values.
pub trait Preference {
    /// True when `a` is strictly preferred over `b`.
    fn prefers(&self, a: &ValueName, b: &ValueName) -> bool;
}

/// A strict total order over the ordinary values, most preferred first, with
/// an optional fact tier above everything.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueOrder {
    ranking: Vec<ValueName>,
    fact: Option<ValueName>,
}

impl ValueOrder {
    pub fn new<S: AsRef<str>>(ranking: &[S]) -> Self {
        ValueOrder {
            ranking: ranking.iter().map(|s| ValueName::from(s.as_ref())).collect(),
            fact: None,
        }
    }

    pub fn with_fact(mut self, fact: impl Into<String>) -> Self {
        self.fact = Some(ValueName(fact.into()));
        self
    }

    /// Parses `"D>C"` against the values declared in `fw`. The fact tier may
    /// be written first or left out; it is always placed on top.
    pub fn parse(text: &str, fw: &Framework) -> Result<ValueOrder> {
        let mut names: Vec<ValueName> = text
            .split('>')
            .map(|s| ValueName::from(s.trim()))
            .collect();
        if names.iter().any(|n| n.0.is_empty()) {
            return Err(Error::InvalidOrder(format!("empty value name in `{text}`")));
        }
        if let Some(fact) = fw.fact() {
            if let Some(pos) = names.iter().position(|n| n == fact) {
                if pos != 0 {
                    return Err(Error::InvalidOrder(format!(
                        "fact tier `{fact}` must rank above every value"
                    )));
                }
                names.remove(0);
            }
        }
        for n in &names {
            if !fw.values().contains(n) {
                return Err(Error::InvalidOrder(format!("`{n}` is not a declared value")));
            }
        }
        let distinct: BTreeSet<&ValueName> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::InvalidOrder(format!("`{text}` repeats a value")));
        }
        if names.len() != fw.values().len() {
            let missing: Vec<String> = fw
                .values()
                .iter()
                .filter(|v| !names.contains(v))
                .map(|v| v.0.clone())
                .collect();
            return Err(Error::InvalidOrder(format!(
                "`{text}` does not rank {}",
                missing.join(", ")
            )));
        }
        Ok(ValueOrder {
            ranking: names,
            fact: fw.fact().cloned(),
        })
    }

    pub fn ranking(&self) -> &[ValueName] {
        &self.ranking
    }

    pub fn fact(&self) -> Option<&ValueName> {
        self.fact.as_ref()
    }

    /// 0 is the top. Values outside the order rank below everything.
    fn rank(&self, v: &ValueName) -> usize {
        if self.fact.as_ref() == Some(v) {
            return 0;
        }
        match self.ranking.iter().position(|r| r == v) {
            Some(p) => p + 1,
            None => usize::MAX,
        }
    }

    /// The most preferred ordinary value.
    pub fn top(&self) -> Option<&ValueName> {
        self.ranking.first()
    }
}

impl Preference for ValueOrder {
    fn prefers(&self, a: &ValueName, b: &ValueName) -> bool {
        a != b && self.rank(a) < self.rank(b)
    }
}

impl fmt::Display for ValueOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.fact.iter().chain(self.ranking.iter()) {
            if !first {
                f.write_str(">")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for ValueOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The relation generated by a document's `order` lines: the transitive
/// closure of the listed chains. It need not be total.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreferenceRelation {
    pairs: BTreeSet<(ValueName, ValueName)>,
}

impl PreferenceRelation {
    pub fn from_chains(chains: &[Vec<ValueName>]) -> Self {
        let mut pairs = BTreeSet::new();
        for chain in chains {
            for (i, a) in chain.iter().enumerate() {
                for b in &chain[i + 1..] {
                    pairs.insert((a.clone(), b.clone()));
                }
            }
        }
        loop {
            let extra: Vec<(ValueName, ValueName)> = pairs
                .iter()
                .flat_map(|(a, b)| {
                    pairs
                        .iter()
                        .filter(move |(c, _)| c == b)
                        .map(move |(_, d)| (a.clone(), d.clone()))
                })
                .filter(|p| !pairs.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            pairs.extend(extra);
        }
        PreferenceRelation { pairs }
    }

    pub fn pairs(&self) -> &BTreeSet<(ValueName, ValueName)> {
        &self.pairs
    }

    /// Irreflexivity and asymmetry failures, one message each.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (a, b) in &self.pairs {
            if a == b {
                out.push(format!("irreflexivity: `{a}` is preferred over itself"));
            } else if a < b && self.pairs.contains(&(b.clone(), a.clone())) {
                out.push(format!("asymmetry: `{a}` and `{b}` are each preferred over the other"));
            }
        }
        out
    }

    /// The equivalent total order, when the relation ranks every ordinary
    /// value of `fw` against every other.
    pub fn as_total_order(&self, fw: &Framework) -> Option<ValueOrder> {
        if !self.problems().is_empty() {
            return None;
        }
        let mut ranking: Vec<ValueName> = fw.values().to_vec();
        for (i, a) in ranking.iter().enumerate() {
            for b in &ranking[i + 1..] {
                if !self.prefers(a, b) && !self.prefers(b, a) {
                    return None;
                }
            }
        }
        ranking.sort_by(|a, b| {
            if self.prefers(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        Some(ValueOrder {
            ranking,
            fact: fw.fact().cloned(),
        })
    }
}

impl Preference for PreferenceRelation {
    fn prefers(&self, a: &ValueName, b: &ValueName) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }
}

/// Index-level defeat test; the framework must be value-labelled.
pub(crate) fn defeats_idx(fw: &Framework, order: &impl Preference, a: usize, b: usize) -> bool {
    fw.is_attack(a, b) && {
        let (va, vb) = (fw.value_of(a).unwrap(), fw.value_of(b).unwrap());
        !order.prefers(vb, va)
    }
}

/// `a` attacks `b` and the value of `b` is not preferred over the value of `a`.
pub fn defeats(fw: &Framework, order: &impl Preference, a: &str, b: &str) -> Result<bool> {
    fw.require_values()?;
    let (a, b) = (fw.index_of(a)?, fw.index_of(b)?);
    Ok(defeats_idx(fw, order, a, b))
}

/// Same arguments, with exactly the defeats as `Present` attacks.
pub fn defeat_graph(fw: &Framework, order: &impl Preference) -> Result<Framework> {
    fw.require_values()?;
    let mut out = fw.without_attacks();
    for (a, b) in fw.present_attacks() {
        if defeats_idx(fw, order, a, b) {
            out.set_status(a, b, crate::framework::AttackStatus::Present);
        }
    }
    Ok(out)
}

pub fn vaf_extensions(
    fw: &Framework,
    order: &impl Preference,
    semantics: Semantics,
    enumerator: &Enumerator,
) -> Result<Vec<Extension>> {
    enumerator.extensions(&defeat_graph(fw, order)?, semantics)
}

pub fn vaf_preferred_extensions(fw: &Framework, order: &impl Preference) -> Result<Vec<Extension>> {
    vaf_extensions(fw, order, Semantics::Preferred, &Enumerator::default())
}

pub fn vaf_stable_extensions(fw: &Framework, order: &impl Preference) -> Result<Vec<Extension>> {
    vaf_extensions(fw, order, Semantics::Stable, &Enumerator::default())
}

/// Every total order of the ordinary values, in lexicographic order of the
/// sorted value names, each with the fact tier pinned on top.
pub fn enumerate_orders(fw: &Framework) -> Vec<ValueOrder> {
    let mut names: Vec<ValueName> = fw.values().to_vec();
    names.sort();
    let mut out = Vec::new();
    loop {
        out.push(ValueOrder {
            ranking: names.clone(),
            fact: fw.fact().cloned(),
        });
        if !next_permutation(&mut names) {
            break;
        }
    }
    out
}

fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witnesses", rename_all = "lowercase")]
pub enum Status {
    Objective,
    Subjective(Vec<ValueOrder>),
    Indefensible,
}

impl Status {
    fn from_witnesses(witnesses: Vec<ValueOrder>, total: usize) -> Status {
        if witnesses.is_empty() {
            Status::Indefensible
        } else if witnesses.len() == total {
            Status::Objective
        } else {
            Status::Subjective(witnesses)
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Objective => "objective",
            Status::Subjective(_) => "subjective",
            Status::Indefensible => "indefensible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    fn of_position(pos: usize) -> Parity {
        if pos % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub value: ValueName,
    pub members: Vec<ArgumentId>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members concatenated, e.g. `gfb`; ids longer than one character are
    /// joined with spaces.
    pub fn compact(&self) -> String {
        if self.members.iter().all(|m| m.0.chars().count() == 1) {
            self.members.iter().map(|m| m.0.as_str()).collect()
        } else {
            self.members
                .iter()
                .map(|m| m.0.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPosition {
    pub chain: usize,
    /// 1-based.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAnalysis {
    pub chains: Vec<Chain>,
    /// Index-level chains, parallel to `chains`.
    pub(crate) members: Vec<Vec<usize>>,
    /// Per argument, every chain it belongs to.
    pub positions: Vec<Vec<ChainPosition>>,
    pub parity: Vec<Parity>,
}

impl ChainAnalysis {
    pub fn chain_strings(&self) -> BTreeSet<String> {
        self.chains.iter().map(Chain::compact).collect()
    }
}

/// Splits the framework into chains: same-valued attack paths that stop at
/// the first member with an attacker outside the chain.
///
/// A member that ends a chain because of a second same-valued attacker hands
/// over to its same-valued victims, which open new chains. A member that ends
/// a chain only because of an attacker of another value opens a new chain
/// itself. Anything left uncovered (same-valued cycles) is started from its
/// lowest index.
pub fn extract_chains(fw: &Framework) -> Result<ChainAnalysis> {
    fw.require_values()?;
    let n = fw.len();
    let same = |a: usize, b: usize| fw.value_of(a) == fw.value_of(b);
    let attackers: Vec<Vec<usize>> = (0..n)
        .map(|x| fw.attackers_of(x).into_iter().filter(|&a| a != x).collect())
        .collect();
    let same_attackers: Vec<Vec<usize>> = (0..n)
        .map(|x| attackers[x].iter().copied().filter(|&a| same(a, x)).collect())
        .collect();
    let same_victims: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            fw.victims_of(x)
                .into_iter()
                .filter(|&v| v != x && same(x, v))
                .collect()
        })
        .collect();

    let mut queue: VecDeque<usize> = (0..n).filter(|&x| same_attackers[x].is_empty()).collect();
    let mut started: HashSet<usize> = HashSet::new();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut seen_chains: HashSet<Vec<usize>> = HashSet::new();
    let mut covered = vec![false; n];

    let mut emit = |chain: Vec<usize>, covered: &mut Vec<bool>| {
        if seen_chains.insert(chain.clone()) {
            for &m in &chain {
                covered[m] = true;
            }
            chains.push(chain);
        }
    };

    loop {
        while let Some(start) = queue.pop_front() {
            if !started.insert(start) {
                continue;
            }
            let mut stack = vec![vec![start]];
            while let Some(chain) = stack.pop() {
                let last = *chain.last().unwrap();
                let next: Vec<usize> = same_victims[last]
                    .iter()
                    .copied()
                    .filter(|v| !chain.contains(v))
                    .collect();
                if next.is_empty() {
                    emit(chain, &mut covered);
                    continue;
                }
                let mut extensions = Vec::new();
                for v in next {
                    let hit_by_member = attackers[v]
                        .iter()
                        .any(|a| *a != last && chain.contains(a));
                    if hit_by_member {
                        emit(chain.clone(), &mut covered);
                        queue.push_back(v);
                    } else if attackers[v] == [last] {
                        let mut longer = chain.clone();
                        longer.push(v);
                        extensions.push(longer);
                    } else {
                        let mut ended = chain.clone();
                        ended.push(v);
                        emit(ended, &mut covered);
                        if same_attackers[v].len() >= 2 {
                            queue.extend(same_victims[v].iter().copied());
                        } else if !same_victims[v].is_empty() {
                            queue.push_back(v);
                        }
                    }
                }
                // Reversed so that chains come out depth-first in victim order.
                stack.extend(extensions.into_iter().rev());
            }
        }
        match (0..n).find(|&x| !covered[x] && !started.contains(&x)) {
            Some(x) => queue.push_back(x),
            None => match (0..n).find(|&x| !covered[x]) {
                // Started but never emitted cannot happen: every start emits.
                Some(x) => unreachable!("argument {x} started without a chain"),
                None => break,
            },
        }
    }

    let mut positions = vec![Vec::new(); n];
    for (c, chain) in chains.iter().enumerate() {
        for (p, &m) in chain.iter().enumerate() {
            positions[m].push(ChainPosition {
                chain: c,
                position: p + 1,
            });
        }
    }
    let parity = positions
        .iter()
        .map(|ps| {
            if ps.iter().any(|p| p.position % 2 == 0) {
                Parity::Even
            } else {
                Parity::Odd
            }
        })
        .collect();
    let named = chains
        .iter()
        .map(|c| Chain {
            value: fw.value_of(c[0]).unwrap().clone(),
            members: fw.ids_of(c.iter().copied()),
        })
        .collect();
    Ok(ChainAnalysis {
        chains: named,
        members: chains,
        positions,
        parity,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumerate,
    Paths,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArgumentClassification {
    pub id: ArgumentId,
    pub value: ValueName,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<u8>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<ChainPosition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caoc: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aaoc: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub method: Method,
    pub orders: Vec<ValueOrder>,
    pub arguments: Vec<ArgumentClassification>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<Chain>,
}

impl ClassificationReport {
    pub fn get(&self, id: &str) -> Option<&ArgumentClassification> {
        self.arguments.iter().find(|a| a.id.0 == id)
    }

    fn collect(&self, pred: impl Fn(&Status) -> bool) -> BTreeSet<ArgumentId> {
        self.arguments
            .iter()
            .filter(|a| pred(&a.status))
            .map(|a| a.id.clone())
            .collect()
    }

    pub fn objective(&self) -> BTreeSet<ArgumentId> {
        self.collect(|s| *s == Status::Objective)
    }

    pub fn indefensible(&self) -> BTreeSet<ArgumentId> {
        self.collect(|s| *s == Status::Indefensible)
    }

    /// Arguments acceptable under exactly the orders in `witnesses`.
    pub fn subjective_exactly(&self, witnesses: &[ValueOrder]) -> BTreeSet<ArgumentId> {
        self.collect(|s| matches!(s, Status::Subjective(w) if w.as_slice() == witnesses))
    }

    /// Subjective arguments grouped by their witness sets.
    pub fn subjective_groups(&self) -> BTreeMap<Vec<ValueOrder>, BTreeSet<ArgumentId>> {
        let mut out: BTreeMap<Vec<ValueOrder>, BTreeSet<ArgumentId>> = BTreeMap::new();
        for a in &self.arguments {
            if let Status::Subjective(w) = &a.status {
                out.entry(w.clone()).or_default().insert(a.id.clone());
            }
        }
        out
    }

    /// Same statuses for every argument, ignoring method-specific fields.
    pub fn same_statuses(&self, other: &ClassificationReport) -> bool {
        self.arguments.len() == other.arguments.len()
            && self
                .arguments
                .iter()
                .zip(&other.arguments)
                .all(|(a, b)| a.id == b.id && a.status == b.status)
    }
}

/// Preferred-extension membership under one order, per argument index.
pub(crate) fn acceptable_under(
    fw: &Framework,
    order: &ValueOrder,
    enumerator: &Enumerator,
) -> Result<Vec<bool>> {
    let graph = defeat_graph(fw, order)?;
    let masks = enumerator.checked_masks(&graph)?;
    let union = enumerator
        .mask_extensions(&masks, Semantics::Preferred)
        .into_iter()
        .fold(0u64, |acc, s| acc | s);
    Ok((0..fw.len()).map(|i| union >> i & 1 == 1).collect())
}

fn check_value_cap(fw: &Framework, cap: usize) -> Result<()> {
    if fw.values().len() > cap {
        return Err(Error::CapExceeded {
            what: "value count",
            size: fw.values().len(),
            cap,
        });
    }
    Ok(())
}

pub fn classify_by_enumeration(fw: &Framework) -> Result<ClassificationReport> {
    classify_by_enumeration_with(fw, &Enumerator::default(), DEFAULT_VALUE_CAP)
}

/// Objective when credulously accepted under every order, indefensible when
/// under none, subjective otherwise with the accepting orders as witnesses.
pub fn classify_by_enumeration_with(
    fw: &Framework,
    enumerator: &Enumerator,
    value_cap: usize,
) -> Result<ClassificationReport> {
    fw.require_values()?;
    check_value_cap(fw, value_cap)?;
    enumerator.checked_masks(fw)?;
    let orders = enumerate_orders(fw);
    let per_order = per_order_acceptance(fw, &orders, enumerator)?;
    let arguments = (0..fw.len())
        .map(|i| {
            let witnesses: Vec<ValueOrder> = orders
                .iter()
                .zip(&per_order)
                .filter(|(_, acc)| acc[i])
                .map(|(o, _)| o.clone())
                .collect();
            ArgumentClassification {
                id: fw.id(i).clone(),
                value: fw.value_of(i).unwrap().clone(),
                status: Status::from_witnesses(witnesses, orders.len()),
                path: None,
                chains: Vec::new(),
                parity: None,
                caoc: None,
                aaoc: None,
            }
        })
        .collect();
    Ok(ClassificationReport {
        method: Method::Enumerate,
        orders,
        arguments,
        chains: Vec::new(),
    })
}

fn per_order_acceptance(
    fw: &Framework,
    orders: &[ValueOrder],
    enumerator: &Enumerator,
) -> Result<Vec<Vec<bool>>> {
    match enumerator.strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if orders.len() > 1 => {
            use rayon::prelude::*;
            orders
                .par_iter()
                .map(|o| acceptable_under(fw, o, enumerator))
                .collect()
        }
        _ => orders
            .iter()
            .map(|o| acceptable_under(fw, o, enumerator))
            .collect(),
    }
}

/// The chain-based reading of a two-valued framework.
///
/// An attack counts as coming from an odd chain when the attacker's parity is
/// odd. For an argument at position `k` of chain `C`, CAOC holds when one of
/// the first `k` members of `C` has an odd attacker outside `C`; AAOC holds
/// when the argument itself has one. Fact-valued arguments rank above both
/// values: their attacks from ordinary arguments are ignored, even fact
/// attackers never matter, and odd fact attackers of ordinary arguments are
/// outside what the rule covers.
pub fn classify_by_paths(fw: &Framework) -> Result<ClassificationReport> {
    fw.require_values()?;
    if fw.values().len() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "path classification needs exactly two ordinary values, found {}",
            fw.values().len()
        )));
    }
    if let Some(x) = (0..fw.len()).find(|&x| fw.is_attack(x, x)) {
        return Err(Error::UnsupportedShape(format!(
            "`{}` attacks itself",
            fw.id(x)
        )));
    }
    if let Some(cycle) = monochromatic_cycle(fw) {
        return Err(Error::UnsupportedShape(format!(
            "same-valued attack cycle through `{}`",
            fw.id(cycle)
        )));
    }
    let analysis = extract_chains(fw)?;
    let orders = enumerate_orders(fw);
    let is_fact = |i: usize| fw.is_fact(fw.value_of(i).unwrap());
    let parity = &analysis.parity;

    // Attackers that take part in the path rule.
    let counted = |target: usize, attacker: usize| -> Result<bool> {
        match (is_fact(attacker), is_fact(target)) {
            (false, true) => Ok(false),
            (true, false) if parity[attacker] == Parity::Odd => Err(Error::UnsupportedShape(format!(
                "fact `{}` is odd and attacks `{}`",
                fw.id(attacker),
                fw.id(target)
            ))),
            (true, false) => Ok(false),
            _ => Ok(true),
        }
    };
    let odd_outside = |x: usize, chain: &[usize]| -> Result<bool> {
        for a in fw.attackers_of(x) {
            if !chain.contains(&a) && counted(x, a)? && parity[a] == Parity::Odd {
                return Ok(true);
            }
        }
        Ok(false)
    };

    let mut arguments = Vec::with_capacity(fw.len());
    for x in 0..fw.len() {
        let px = parity[x];
        let mut any_caoc = false;
        let mut any_clean = false;
        let mut any_aaoc = false;
        for pos in analysis.positions[x]
            .iter()
            .filter(|p| Parity::of_position(p.position) == px)
        {
            let chain = &analysis.members[pos.chain];
            let mut caoc = false;
            for &m in &chain[..pos.position] {
                caoc |= odd_outside(m, chain)?;
            }
            let aaoc = odd_outside(x, chain)?;
            any_caoc |= caoc;
            any_clean |= !caoc;
            any_aaoc |= caoc && aaoc;
        }
        let path: u8 = match px {
            Parity::Odd if !any_caoc => 1,
            Parity::Odd => 2,
            Parity::Even if any_clean => 5,
            Parity::Even if any_aaoc => 4,
            Parity::Even => 3,
        };
        if is_fact(x) && path != 1 && path != 5 {
            return Err(Error::UnsupportedShape(format!(
                "fact `{}` is attacked by an odd chain",
                fw.id(x)
            )));
        }
        let own = fw.value_of(x).unwrap();
        let status = match path {
            1 => Status::Objective,
            2 => Status::Subjective(orders.iter().filter(|o| o.top() == Some(own)).cloned().collect()),
            3 => Status::Subjective(orders.iter().filter(|o| o.top() != Some(own)).cloned().collect()),
            _ => Status::Indefensible,
        };
        arguments.push(ArgumentClassification {
            id: fw.id(x).clone(),
            value: own.clone(),
            status,
            path: Some(path),
            chains: analysis.positions[x].clone(),
            parity: Some(px),
            caoc: Some(any_caoc),
            aaoc: Some(any_aaoc),
        });
    }
    Ok(ClassificationReport {
        method: Method::Paths,
        orders,
        arguments,
        chains: analysis.chains,
    })
}

/// Some argument on a cycle of Present attacks between arguments that all
/// share a value, if any.
fn monochromatic_cycle(fw: &Framework) -> Option<usize> {
    let n = fw.len();
    // Iterative three-colour DFS restricted to same-valued edges.
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            let victims = fw.victims_of(x);
            let mut pushed = false;
            while *next < victims.len() {
                let v = victims[*next];
                *next += 1;
                if v == x || fw.value_of(v) != fw.value_of(x) {
                    continue;
                }
                match state[v] {
                    1 => return Some(v),
                    0 => {
                        state[v] = 1;
                        stack.push((v, 0));
                        pushed = true;
                        break;
                    }
                    _ => {}
                }
            }
            if !pushed {
                state[x] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// The preferred extension of a framework whose attacks form one simple
/// cycle through arguments of exactly two values, read off the chains: odd
/// members of chains preceded by an even chain, odd members of chains of the
/// preferred value, and even members of the remaining chains.
pub fn dichromatic_cycle_preferred(fw: &Framework, order: &ValueOrder) -> Result<Extension> {
    fw.require_values()?;
    let cycle = simple_cycle(fw)?;
    let n = cycle.len();
    let val = |i: usize| fw.value_of(cycle[i]).unwrap();
    let distinct: BTreeSet<&ValueName> = (0..n).map(val).collect();
    if distinct.len() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "cycle carries {} values, expected 2",
            distinct.len()
        )));
    }
    // Rotate so that position 0 opens a chain.
    let shift = (0..n).find(|&i| val(i) != val((i + n - 1) % n)).unwrap();
    let order_of = |i: usize| cycle[(i + shift) % n];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let x = order_of(i);
        match chains.last_mut() {
            Some(c) if fw.value_of(*c.last().unwrap()) == fw.value_of(x) => c.push(x),
            _ => chains.push(vec![x]),
        }
    }
    let mut members = BTreeSet::new();
    for (k, chain) in chains.iter().enumerate() {
        let before = &chains[(k + chains.len() - 1) % chains.len()];
        let chain_value = fw.value_of(chain[0]).unwrap();
        let pick = if before.len().is_multiple_of(2) || order.top() == Some(chain_value) {
            Parity::Odd
        } else {
            Parity::Even
        };
        for (p, &m) in chain.iter().enumerate() {
            if Parity::of_position(p + 1) == pick {
                members.insert(fw.id(m).clone());
            }
        }
    }
    Ok(Extension(members))
}

/// The arguments in attack order, starting from index 0, if every argument
/// has exactly one attacker and one victim and all lie on one cycle.
fn simple_cycle(fw: &Framework) -> Result<Vec<usize>> {
    let n = fw.len();
    let shape = |msg: String| Error::UnsupportedShape(msg);
    if n < 2 {
        return Err(shape("a cycle needs at least two arguments".into()));
    }
    for x in 0..n {
        let (ins, outs) = (fw.attackers_of(x).len(), fw.victims_of(x).len());
        if ins != 1 || outs != 1 {
            return Err(shape(format!(
                "`{}` has {ins} attackers and {outs} victims; a simple cycle needs one of each",
                fw.id(x)
            )));
        }
    }
    let mut cycle = vec![0usize];
    let mut x = fw.victims_of(0)[0];
    while x != 0 {
        if cycle.len() >= n {
            break;
        }
        cycle.push(x);
        x = fw.victims_of(x)[0];
    }
    if cycle.len() != n || x != 0 {
        return Err(shape("attacks form more than one cycle".into()));
    }
    Ok(cycle)
}

/// Credulous acceptance on the raw graph, for cross-checks with single-valued
/// frameworks.
pub fn credulous(fw: &Framework) -> Result<BTreeSet<ArgumentId>> {
    af::credulously_accepted(fw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Argument;

    pub(crate) fn valued(values: &[&str], args: &[(&str, &str)], attacks: &[(&str, &str)]) -> Framework {
        let mut fw = Framework::new();
        for v in values {
            fw.declare_value(*v).unwrap();
        }
        for (id, v) in args {
            fw.add_argument(Argument::new(*id).with_value(*v)).unwrap();
        }
        for (a, b) in attacks {
            fw.attack(a, b).unwrap();
        }
        fw
    }

    fn vaf2() -> Framework {
        valued(
            &["K", "U"],
            &[("e1", "K"), ("e2", "K"), ("j1", "U"), ("j2", "U")],
            &[("e1", "j1"), ("j1", "e1"), ("e2", "j1"), ("j2", "e2")],
        )
    }

    fn dil1() -> Framework {
        valued(
            &["C", "D"],
            &[("a", "D"), ("b", "C"), ("c", "D"), ("d", "D"), ("e", "C"), ("f", "C"), ("g", "C")],
            &[
                ("a", "b"),
                ("b", "a"),
                ("c", "a"),
                ("d", "c"),
                ("e", "d"),
                ("b", "e"),
                ("f", "b"),
                ("g", "f"),
            ],
        )
    }

    fn ids(xs: &[&str]) -> BTreeSet<ArgumentId> {
        xs.iter().map(|s| ArgumentId::from(*s)).collect()
    }

    #[test]
    fn vaf2_defeats() {
        let fw = vaf2();
        let uk = ValueOrder::new(&["U", "K"]);
        let ku = ValueOrder::new(&["K", "U"]);
        assert!(defeats(&fw, &uk, "j2", "e2").unwrap());
        assert!(!defeats(&fw, &ku, "j2", "e2").unwrap());
        assert!(defeats(&fw, &ku, "e2", "j1").unwrap());
    }

    #[test]
    fn vaf2_defeat_graphs() {
        let fw = vaf2();
        let edges = |o: &ValueOrder| -> BTreeSet<(String, String)> {
            let g = defeat_graph(&fw, o).unwrap();
            g.present_attacks()
                .map(|(a, b)| (g.id(a).0.clone(), g.id(b).0.clone()))
                .collect()
        };
        let s = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(
            edges(&ValueOrder::new(&["K", "U"])),
            [s("e1", "j1"), s("e2", "j1")].into_iter().collect()
        );
        assert_eq!(
            edges(&ValueOrder::new(&["U", "K"])),
            [s("j1", "e1"), s("j2", "e2")].into_iter().collect()
        );
    }

    #[test]
    fn vaf2_extensions_and_classification() {
        let fw = vaf2();
        assert_eq!(
            vaf_preferred_extensions(&fw, &ValueOrder::new(&["U", "K"])).unwrap(),
            vec![Extension::from_ids(&["j1", "j2"])]
        );
        assert_eq!(
            vaf_preferred_extensions(&fw, &ValueOrder::new(&["K", "U"])).unwrap(),
            vec![Extension::from_ids(&["e1", "e2", "j2"])]
        );
        let report = classify_by_enumeration(&fw).unwrap();
        assert_eq!(report.objective(), ids(&["j2"]));
        assert!(report.indefensible().is_empty());
    }

    #[test]
    fn order_parsing() {
        let mut fw = dil1();
        assert_eq!(ValueOrder::parse("D>C", &fw).unwrap(), ValueOrder::new(&["D", "C"]));
        assert!(ValueOrder::parse("D", &fw).is_err());
        assert!(ValueOrder::parse("D>D", &fw).is_err());
        assert!(ValueOrder::parse("D>X", &fw).is_err());
        fw.set_fact("F").unwrap();
        let o = ValueOrder::parse("F > C > D", &fw).unwrap();
        assert_eq!(o.to_string(), "F>C>D");
        assert_eq!(ValueOrder::parse("C>D", &fw).unwrap(), o);
        assert!(ValueOrder::parse("C>F>D", &fw).is_err());
    }

    #[test]
    fn orders_are_enumerated_lexicographically() {
        let fw = dil1();
        let labels: Vec<String> = enumerate_orders(&fw).iter().map(|o| o.to_string()).collect();
        assert_eq!(labels, ["C>D", "D>C"]);
        let mut with_fact = dil1();
        with_fact.set_fact("F").unwrap();
        let labels: Vec<String> = enumerate_orders(&with_fact).iter().map(|o| o.to_string()).collect();
        assert_eq!(labels, ["F>C>D", "F>D>C"]);
        let single = valued(&["V"], &[("x", "V")], &[]);
        assert_eq!(enumerate_orders(&single).len(), 1);
        let three = valued(&["c", "a", "b"], &[], &[]);
        let labels: Vec<String> = enumerate_orders(&three).iter().map(|o| o.to_string()).collect();
        assert_eq!(labels, ["a>b>c", "a>c>b", "b>a>c", "b>c>a", "c>a>b", "c>b>a"]);
    }

    #[test]
    fn fact_tier_beats_everything_but_facts() {
        let mut fw = valued(&["C", "D"], &[], &[]);
        fw.set_fact("F").unwrap();
        for (id, v) in [("p", "F"), ("q", "F"), ("a", "D")] {
            fw.add_argument(Argument::new(id).with_value(v)).unwrap();
        }
        fw.attack("q", "p").unwrap();
        fw.attack("a", "p").unwrap();
        fw.attack("p", "a").unwrap();
        for o in enumerate_orders(&fw) {
            assert!(defeats(&fw, &o, "q", "p").unwrap());
            assert!(defeats(&fw, &o, "p", "a").unwrap());
            assert!(!defeats(&fw, &o, "a", "p").unwrap());
        }
    }

    fn dil2() -> Framework {
        let mut fw = dil1();
        fw.set_fact("F").unwrap();
        for (id, v) in [
            ("h", "D"),
            ("i", "D"),
            ("j", "D"),
            ("k", "D"),
            ("l", "D"),
            ("m", "C"),
            ("n", "D"),
            ("o", "C"),
            ("p", "F"),
            ("q", "F"),
        ] {
            fw.add_argument(Argument::new(id).with_value(v)).unwrap();
        }
        for (a, b) in [
            ("h", "c"),
            ("i", "h"),
            ("j", "a"),
            ("k", "b"),
            ("l", "j"),
            ("l", "k"),
            ("m", "l"),
            ("n", "j"),
            ("o", "j"),
            ("p", "a"),
            ("p", "b"),
            ("q", "p"),
        ] {
            fw.attack(a, b).unwrap();
        }
        fw
    }

    #[test]
    fn dil2_chains_and_paths() {
        let fw = dil2();
        let analysis = extract_chains(&fw).unwrap();
        let expected: BTreeSet<String> = ["dc", "gfb", "ihc", "lj", "lk", "m", "nj", "o", "qp", "a", "be"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(analysis.chain_strings(), expected);
        let c = fw.index_of("c").unwrap();
        assert_eq!(analysis.parity[c], Parity::Even);
        let report = classify_by_paths(&fw).unwrap();
        assert_eq!(report.get("j").unwrap().path, Some(4));
        assert_eq!(report.get("k").unwrap().path, Some(3));
        assert_eq!(report.get("l").unwrap().path, Some(2));
        let enumerated = classify_by_enumeration(&fw).unwrap();
        assert!(enumerated.same_statuses(&report));
        assert_eq!(enumerated.objective(), ids(&["d", "g", "i", "m", "n", "o", "q"]));
        assert_eq!(enumerated.indefensible(), ids(&["c", "f", "h", "j", "p"]));
    }

    #[test]
    fn dil1_chains() {
        let analysis = extract_chains(&dil1()).unwrap();
        let expected: BTreeSet<String> = ["gfb", "be", "dca"].iter().map(|s| s.to_string()).collect();
        assert_eq!(analysis.chain_strings(), expected);
    }

    #[test]
    fn isolated_argument_is_an_odd_singleton() {
        let fw = valued(&["V", "W"], &[("x", "V")], &[]);
        let analysis = extract_chains(&fw).unwrap();
        assert_eq!(analysis.chains.len(), 1);
        assert_eq!(analysis.parity[0], Parity::Odd);
        let report = classify_by_paths(&fw).unwrap();
        assert_eq!(report.arguments[0].path, Some(1));
    }

    #[test]
    fn dil1_paths() {
        let report = classify_by_paths(&dil1()).unwrap();
        let path = |id: &str| report.get(id).unwrap().path.unwrap();
        assert_eq!(path("g"), 1);
        assert_eq!(path("f"), 5);
        assert_eq!(path("a"), 2);
        assert_eq!(path("e"), 3);
        assert_eq!(path("d"), 1);
        assert_eq!(path("c"), 5);
        assert_eq!(path("b"), 2);
    }

    #[test]
    fn dil1_methods_agree() {
        let fw = dil1();
        let a = classify_by_enumeration(&fw).unwrap();
        let b = classify_by_paths(&fw).unwrap();
        assert!(a.same_statuses(&b));
        assert_eq!(a.objective(), ids(&["d", "g"]));
        assert_eq!(a.indefensible(), ids(&["c", "f"]));
        let cd = ValueOrder::new(&["C", "D"]);
        let dc = ValueOrder::new(&["D", "C"]);
        assert_eq!(a.subjective_exactly(&[cd]), ids(&["b"]));
        assert_eq!(a.subjective_exactly(&[dc]), ids(&["a", "e"]));
    }

    #[test]
    fn path_method_rejects_other_shapes() {
        let one = valued(&["V"], &[("x", "V")], &[]);
        assert!(matches!(classify_by_paths(&one), Err(Error::UnsupportedShape(_))));
        let mono = valued(&["V", "W"], &[("x", "V"), ("y", "V")], &[("x", "y"), ("y", "x")]);
        assert!(matches!(classify_by_paths(&mono), Err(Error::UnsupportedShape(_))));
        let selfish = valued(&["V", "W"], &[("x", "V")], &[("x", "x")]);
        assert!(matches!(classify_by_paths(&selfish), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn cycle_rule_on_the_dilemma_cycle() {
        let fw = valued(
            &["C", "D"],
            &[("a", "D"), ("b", "C"), ("c", "D"), ("d", "D"), ("e", "C")],
            &[("a", "b"), ("b", "e"), ("e", "d"), ("d", "c"), ("c", "a")],
        );
        for (order, expected) in [(["D", "C"], ["a", "d", "e"]), (["C", "D"], ["a", "b", "d"])] {
            let o = ValueOrder::new(&order);
            let got = dichromatic_cycle_preferred(&fw, &o).unwrap();
            assert_eq!(got, Extension::from_ids(&expected));
            assert_eq!(vaf_preferred_extensions(&fw, &o).unwrap(), vec![got]);
        }
    }

    #[test]
    fn cycle_rule_on_a_two_cycle() {
        let fw = valued(&["V1", "V2"], &[("x", "V1"), ("y", "V2")], &[("x", "y"), ("y", "x")]);
        let got = dichromatic_cycle_preferred(&fw, &ValueOrder::new(&["V1", "V2"])).unwrap();
        assert_eq!(got, Extension::from_ids(&["x"]));
    }

    #[test]
    fn cycle_rule_rejects_non_cycles() {
        assert!(matches!(
            dichromatic_cycle_preferred(&dil1(), &ValueOrder::new(&["C", "D"])),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn declared_relations() {
        let v = |s: &str| ValueName::from(s);
        let rel = PreferenceRelation::from_chains(&[vec![v("a"), v("b")], vec![v("b"), v("c")]]);
        assert!(rel.prefers(&v("a"), &v("c")));
        assert!(rel.problems().is_empty());
        let bad = PreferenceRelation::from_chains(&[vec![v("C"), v("C")]]);
        assert!(bad.problems()[0].starts_with("irreflexivity"));
        let cyc = PreferenceRelation::from_chains(&[vec![v("a"), v("b"), v("a")]]);
        assert!(cyc.problems().iter().any(|p| p.starts_with("asymmetry")));
        let fw = valued(&["c", "a", "b"], &[], &[]);
        assert_eq!(rel.as_total_order(&fw).unwrap().to_string(), "a>b>c");
    }
}
