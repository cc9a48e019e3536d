//! Dung semantics over the `Present` part of a framework's attack relation.
//!
//! Sets are bitmasks over argument indices, so the enumerator handles at most
//! 63 arguments; the configurable cap defaults to 22.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{ArgumentId, Framework};

pub const DEFAULT_ARGUMENT_CAP: usize = 22;
const HARD_ARGUMENT_CAP: usize = 63;
/// Arguments decided before the search is split into independent tasks.
const SPLIT_DEPTH: usize = 10;

/// A set of arguments returned by one of the semantics.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Extension(pub BTreeSet<ArgumentId>);

impl Extension {
    pub fn from_ids<S: AsRef<str>>(ids: &[S]) -> Self {
        Extension(ids.iter().map(|s| ArgumentId::from(s.as_ref())).collect())
    }

    pub fn members(&self) -> &BTreeSet<ArgumentId> {
        &self.0
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(&ArgumentId::from(id))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArgumentId> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// Sorts by size, largest first, then by the sorted id lists.
pub fn sort_extensions(exts: &mut [Extension]) {
    exts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.0.iter().cmp(b.0.iter())));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Admissible,
    Preferred,
    Stable,
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "admissible" => Ok(Semantics::Admissible),
            "preferred" => Ok(Semantics::Preferred),
            "stable" => Ok(Semantics::Stable),
            other => Err(format!(
                "unknown semantics `{other}` (expected preferred, stable or admissible)"
            )),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Admissible => "admissible",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        })
    }
}

/// How subset enumeration is scheduled. `Parallel` degrades to sequential
/// when the crate is built without the `parallel` feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_arguments: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_arguments: DEFAULT_ARGUMENT_CAP,
        }
    }
}

/// Attack relation as per-argument bitmasks.
#[derive(Clone, Debug)]
pub(crate) struct AttackMasks {
    pub n: usize,
    /// `out[i]`: arguments attacked by `i`.
    pub out: Vec<u64>,
    /// `inc[i]`: arguments attacking `i`.
    pub inc: Vec<u64>,
}

impl AttackMasks {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![0u64; n];
        let mut inc = vec![0u64; n];
        for (a, b) in edges {
            out[a] |= 1 << b;
            inc[b] |= 1 << a;
        }
        AttackMasks { n, out, inc }
    }

    pub fn of(fw: &Framework) -> Self {
        Self::from_edges(fw.len(), fw.present_attacks())
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn union(table: &[u64], set: u64) -> u64 {
        let mut acc = 0;
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc |= table[i];
            rest &= rest - 1;
        }
        acc
    }

    pub fn attacked_by(&self, set: u64) -> u64 {
        Self::union(&self.out, set)
    }

    pub fn attackers_of(&self, set: u64) -> u64 {
        Self::union(&self.inc, set)
    }

    pub fn admissible(&self, set: u64) -> bool {
        let out = self.attacked_by(set);
        out & set == 0 && self.attackers_of(set) & !out == 0
    }

    pub fn stable(&self, set: u64) -> bool {
        let out = self.attacked_by(set);
        out & set == 0 && (out | set) == self.full()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Enumerator {
    pub limits: Limits,
    pub strategy: Strategy,
}

impl Enumerator {
    pub fn new(limits: Limits, strategy: Strategy) -> Self {
        Enumerator { limits, strategy }
    }

    pub fn sequential() -> Self {
        Enumerator {
            strategy: Strategy::Sequential,
            ..Self::default()
        }
    }

    pub fn extensions(&self, fw: &Framework, semantics: Semantics) -> Result<Vec<Extension>> {
        let masks = self.checked_masks(fw)?;
        let sets = self.mask_extensions(&masks, semantics);
        Ok(to_extensions(fw, &sets))
    }

    pub fn preferred(&self, fw: &Framework) -> Result<Vec<Extension>> {
        self.extensions(fw, Semantics::Preferred)
    }

    pub fn stable(&self, fw: &Framework) -> Result<Vec<Extension>> {
        self.extensions(fw, Semantics::Stable)
    }

    pub fn admissible(&self, fw: &Framework) -> Result<Vec<Extension>> {
        self.extensions(fw, Semantics::Admissible)
    }

    pub(crate) fn checked_masks(&self, fw: &Framework) -> Result<AttackMasks> {
        let cap = self.limits.max_arguments.min(HARD_ARGUMENT_CAP);
        if fw.len() > cap {
            return Err(Error::CapExceeded {
                what: "argument count",
                size: fw.len(),
                cap,
            });
        }
        Ok(AttackMasks::of(fw))
    }

    /// Extensions as masks, in an unspecified but deterministic order.
    pub(crate) fn mask_extensions(&self, masks: &AttackMasks, semantics: Semantics) -> Vec<u64> {
        match semantics {
            Semantics::Admissible => self.search(masks, Accept::Admissible),
            Semantics::Stable => self.search(masks, Accept::Stable),
            Semantics::Preferred => maximal(self.search(masks, Accept::Admissible)),
        }
    }

    fn search(&self, masks: &AttackMasks, accept: Accept) -> Vec<u64> {
        match self.strategy {
            #[cfg(feature = "parallel")]
            Strategy::Parallel if masks.n > SPLIT_DEPTH => parallel_search(masks, accept),
            _ => {
                let mut found = Vec::new();
                dfs(masks, accept, 0, 0, &mut found);
                found
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Accept {
    Admissible,
    Stable,
}

impl Accept {
    fn holds(self, masks: &AttackMasks, set: u64) -> bool {
        match self {
            Accept::Admissible => masks.admissible(set),
            Accept::Stable => masks.stable(set),
        }
    }
}

/// Visits every conflict-free set that agrees with `set` on the arguments
/// below `i`, pruning as soon as a conflict appears.
fn dfs(masks: &AttackMasks, accept: Accept, i: usize, set: u64, found: &mut Vec<u64>) {
    if i == masks.n {
        if accept.holds(masks, set) {
            found.push(set);
        }
        return;
    }
    dfs(masks, accept, i + 1, set, found);
    let bit = 1u64 << i;
    let clash = masks.out[i] & (set | bit) != 0 || masks.inc[i] & set != 0;
    if !clash {
        dfs(masks, accept, i + 1, set | bit, found);
    }
}

#[cfg(feature = "parallel")]
fn parallel_search(masks: &AttackMasks, accept: Accept) -> Vec<u64> {
    use rayon::prelude::*;

    let mut prefixes = vec![0u64];
    for i in 0..SPLIT_DEPTH {
        let bit = 1u64 << i;
        let mut next = Vec::with_capacity(prefixes.len() * 2);
        for &set in &prefixes {
            next.push(set);
            if masks.out[i] & (set | bit) == 0 && masks.inc[i] & set == 0 {
                next.push(set | bit);
            }
        }
        prefixes = next;
    }
    prefixes
        .par_iter()
        .map(|&prefix| {
            let mut found = Vec::new();
            dfs(masks, accept, SPLIT_DEPTH, prefix, &mut found);
            found
        })
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// The inclusion-maximal members of `sets`.
pub(crate) fn maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept
}

pub(crate) fn mask_to_extension(fw: &Framework, set: u64) -> Extension {
    Extension(
        (0..fw.len())
            .filter(|i| set >> i & 1 == 1)
            .map(|i| fw.id(i).clone())
            .collect(),
    )
}

fn to_extensions(fw: &Framework, sets: &[u64]) -> Vec<Extension> {
    let mut exts: Vec<Extension> = sets.iter().map(|&s| mask_to_extension(fw, s)).collect();
    sort_extensions(&mut exts);
    exts
}

fn resolve_set<S: AsRef<str>>(fw: &Framework, s: &[S]) -> Result<Vec<usize>> {
    fw.resolve(s)
}

pub fn is_conflict_free<S: AsRef<str>>(fw: &Framework, s: &[S]) -> Result<bool> {
    let set = resolve_set(fw, s)?;
    Ok(set.iter().all(|&a| set.iter().all(|&b| !fw.is_attack(a, b))))
}

/// Every attacker of `a` is attacked by some member of `s`.
pub fn is_acceptable<S: AsRef<str>>(fw: &Framework, a: &str, s: &[S]) -> Result<bool> {
    let a = fw.index_of(a)?;
    let set = resolve_set(fw, s)?;
    Ok(fw
        .attackers_of(a)
        .into_iter()
        .all(|b| set.iter().any(|&d| fw.is_attack(d, b))))
}

pub fn is_admissible<S: AsRef<str>>(fw: &Framework, s: &[S]) -> Result<bool> {
    if !is_conflict_free(fw, s)? {
        return Ok(false);
    }
    for a in s {
        if !is_acceptable(fw, a.as_ref(), s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_stable<S: AsRef<str>>(fw: &Framework, s: &[S]) -> Result<bool> {
    if !is_conflict_free(fw, s)? {
        return Ok(false);
    }
    let set = resolve_set(fw, s)?;
    Ok((0..fw.len())
        .filter(|i| !set.contains(i))
        .all(|b| set.iter().any(|&a| fw.is_attack(a, b))))
}

pub fn preferred_extensions(fw: &Framework) -> Result<Vec<Extension>> {
    Enumerator::default().preferred(fw)
}

pub fn stable_extensions(fw: &Framework) -> Result<Vec<Extension>> {
    Enumerator::default().stable(fw)
}

pub fn admissible_sets(fw: &Framework) -> Result<Vec<Extension>> {
    Enumerator::default().admissible(fw)
}

/// Arguments that belong to at least one preferred extension.
pub fn credulously_accepted(fw: &Framework) -> Result<BTreeSet<ArgumentId>> {
    Ok(preferred_extensions(fw)?
        .into_iter()
        .flat_map(|e| e.0.into_iter())
        .collect())
}

/// Brute-force reference semantics: scans every subset and evaluates the
/// set-level definitions directly, without the bitmask search.
pub mod oracle {
    use super::*;

    pub const ORACLE_CAP: usize = 18;

    fn subsets(fw: &Framework) -> Result<Vec<Vec<&str>>> {
        if fw.len() > ORACLE_CAP {
            return Err(Error::CapExceeded {
                what: "oracle argument count",
                size: fw.len(),
                cap: ORACLE_CAP,
            });
        }
        let n = fw.len();
        Ok((0u64..1 << n)
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| fw.id(i).as_str())
                    .collect()
            })
            .collect())
    }

    fn collect(sets: Vec<Vec<&str>>) -> Vec<Extension> {
        let mut exts: Vec<Extension> = sets.iter().map(|s| Extension::from_ids(s)).collect();
        sort_extensions(&mut exts);
        exts
    }

    pub fn admissible(fw: &Framework) -> Result<Vec<Extension>> {
        let mut out = Vec::new();
        for s in subsets(fw)? {
            if is_admissible(fw, &s)? {
                out.push(s);
            }
        }
        Ok(collect(out))
    }

    pub fn preferred(fw: &Framework) -> Result<Vec<Extension>> {
        let adm = admissible(fw)?;
        let max: Vec<Extension> = adm
            .iter()
            .filter(|a| !adm.iter().any(|b| b.len() > a.len() && a.is_subset(b)))
            .cloned()
            .collect();
        Ok(max)
    }

    pub fn stable(fw: &Framework) -> Result<Vec<Extension>> {
        let mut out = Vec::new();
        for s in subsets(fw)? {
            if is_stable(fw, &s)? {
                out.push(s);
            }
        }
        Ok(collect(out))
    }

    pub fn extensions(fw: &Framework, semantics: Semantics) -> Result<Vec<Extension>> {
        match semantics {
            Semantics::Admissible => admissible(fw),
            Semantics::Preferred => preferred(fw),
            Semantics::Stable => stable(fw),
        }
    }
}
