//! Semi-abstract value-based frameworks: every argument carries a claim and a
//! value. Closure is per value, principles keep the target value fixed, and
//! consequence is stated in terms of defeat under a value ordering.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::{subformula_closure, Formula};
use crate::framework::{Argument, ArgumentId, Framework, ValueName};
use crate::saf::{self, claimants, consequence_idx, ClassMode, ClosureTrace, CollectionVerdict, PrincipleSet};
use crate::vaf::{defeats_idx, enumerate_orders, Preference, PreferenceRelation, ValueOrder};

/// Every labelling and ordering problem, itemised. An empty list means the
/// framework is a well-formed SVAF.
pub fn validate(fw: &Framework) -> Vec<Error> {
    let mut out = Vec::new();
    for a in fw.arguments() {
        if a.claim.is_none() {
            out.push(Error::MissingClaim(a.id.0.clone()));
        }
        if a.value.is_none() {
            out.push(Error::MissingValue(a.id.0.clone()));
        }
    }
    out.extend(validate_order_chains(fw.order_chains()));
    out
}

/// Checks declared preference chains for irreflexivity and asymmetry of
/// their transitive closure.
pub fn validate_order_chains(chains: &[Vec<ValueName>]) -> Vec<Error> {
    PreferenceRelation::from_chains(chains)
        .problems()
        .into_iter()
        .map(Error::InvalidOrder)
        .collect()
}

fn claims_of_value(fw: &Framework, v: &ValueName) -> BTreeSet<Formula> {
    fw.arguments()
        .iter()
        .filter(|a| a.value.as_ref() == Some(v))
        .filter_map(|a| a.claim.clone())
        .collect()
}

fn tiers(fw: &Framework) -> Vec<ValueName> {
    fw.values().iter().cloned().chain(fw.fact().cloned()).collect()
}

/// Subformulae that no argument of the same value claims, per value.
pub fn missing_by_value(fw: &Framework) -> Vec<(ValueName, BTreeSet<Formula>)> {
    tiers(fw)
        .into_iter()
        .map(|v| {
            let present = claims_of_value(fw, &v);
            let missing = subformula_closure(present.iter())
                .into_iter()
                .filter(|f| !present.contains(f))
                .collect();
            (v, missing)
        })
        .collect()
}

pub fn is_value_closed(fw: &Framework) -> bool {
    missing_by_value(fw).iter().all(|(_, m)| m.is_empty())
}

/// Adds a fresh `cl_<n>` argument for each missing (claim, value) pair,
/// values in declaration order and formulas in formula order.
pub fn close_logically(fw: &Framework) -> Result<Framework> {
    require_labels(fw)?;
    let mut out = fw.clone();
    let mut counter = 0;
    for (v, missing) in missing_by_value(fw) {
        for f in missing {
            let id = out.fresh_id(&mut counter);
            out.add_argument(Argument {
                id,
                claim: Some(f),
                value: Some(v.clone()),
            })?;
        }
    }
    Ok(out)
}

fn require_labels(fw: &Framework) -> Result<()> {
    fw.require_claims()?;
    fw.require_values()
}

/// The value-aware principle fixpoint over all claims of the framework.
pub fn apply_principles(fw: &Framework, ps: &PrincipleSet) -> Result<(Framework, ClosureTrace)> {
    require_labels(fw)?;
    if !is_value_closed(fw) {
        log::warn!("applying attack principles to a framework that is not closed per value");
    }
    Ok(saf::run_principles(fw, ps, &saf::claims(fw), ClassMode::ClaimValue))
}

pub fn defeats(fw: &Framework, order: &impl Preference, a: &str, b: &str) -> Result<bool> {
    require_labels(fw)?;
    Ok(defeats_idx(fw, order, fw.index_of(a)?, fw.index_of(b)?))
}

/// Every defeater of `goal` under `order` also defeats some premise.
pub fn subjective_consequence<S: AsRef<str>>(
    fw: &Framework,
    order: &impl Preference,
    premises: &[S],
    goal: &str,
) -> Result<bool> {
    consequence_sets(fw, order, premises, &[goal])
}

/// Subjective consequence under every enumerated total order.
pub fn objective_consequence<S: AsRef<str>>(fw: &Framework, premises: &[S], goal: &str) -> Result<bool> {
    objective_consequence_sets(fw, premises, &[goal])
}

/// The orders under which the subjective consequence holds.
pub fn witness_orders<S: AsRef<str>>(fw: &Framework, premises: &[S], goal: &str) -> Result<Vec<ValueOrder>> {
    let mut out = Vec::new();
    for o in enumerate_orders(fw) {
        if subjective_consequence(fw, &o, premises, goal)? {
            out.push(o);
        }
    }
    Ok(out)
}

/// Everything defeated by some defeater of `goal`. The goal belongs to its
/// own base whenever it is defeated at all.
pub fn consequence_base(fw: &Framework, order: &impl Preference, goal: &str) -> Result<BTreeSet<ArgumentId>> {
    require_labels(fw)?;
    let g = fw.index_of(goal)?;
    let n = fw.len();
    Ok((0..n)
        .filter(|&d| defeats_idx(fw, order, d, g))
        .flat_map(|d| (0..n).filter(move |&x| defeats_idx(fw, order, d, x)))
        .map(|x| fw.id(x).clone())
        .collect())
}

/// Every argument defeating all of `delta` under `order` defeats some
/// member of `gamma`.
pub fn consequence_sets<S: AsRef<str>, T: AsRef<str>>(
    fw: &Framework,
    order: &impl Preference,
    gamma: &[S],
    delta: &[T],
) -> Result<bool> {
    require_labels(fw)?;
    let g = fw.resolve(gamma)?;
    let d = fw.resolve(delta)?;
    Ok(consequence_idx(fw, &g, &d, |a, b| defeats_idx(fw, order, a, b)))
}

/// Some enumerated order makes the set consequence hold.
pub fn subjective_consequence_sets<S: AsRef<str>, T: AsRef<str>>(
    fw: &Framework,
    gamma: &[S],
    delta: &[T],
) -> Result<bool> {
    for o in enumerate_orders(fw) {
        if consequence_sets(fw, &o, gamma, delta)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn objective_consequence_sets<S: AsRef<str>, T: AsRef<str>>(
    fw: &Framework,
    gamma: &[S],
    delta: &[T],
) -> Result<bool> {
    for o in enumerate_orders(fw) {
        if !consequence_sets(fw, &o, gamma, delta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    /// Some order per framework.
    Subjective,
    /// Every order in every framework.
    Objective,
}

/// The claim-level set consequence in every framework of the collection,
/// with the order quantifier applied inside each framework.
pub fn consequence_over_collection(
    fws: &[Framework],
    quantifier: Quantifier,
    gamma: &[Formula],
    delta: &[Formula],
) -> Result<CollectionVerdict> {
    if fws.is_empty() {
        log::warn!("consequence over an empty collection holds vacuously");
        return Ok(CollectionVerdict {
            holds: true,
            vacuous: true,
        });
    }
    let mut holds = true;
    for fw in fws {
        require_labels(fw)?;
        let g = claimants(fw, gamma)?;
        let d = claimants(fw, delta)?;
        let under = |o: &ValueOrder| consequence_idx(fw, &g, &d, |a, b| defeats_idx(fw, o, a, b));
        let orders = enumerate_orders(fw);
        holds &= match quantifier {
            Quantifier::Subjective => orders.iter().any(under),
            Quantifier::Objective => orders.iter().all(under),
        };
    }
    Ok(CollectionVerdict { holds, vacuous: false })
}

/// Ids of the arguments with claim `claim` and value `value`.
pub fn find(fw: &Framework, claim: &Formula, value: &str) -> Vec<ArgumentId> {
    fw.arguments()
        .iter()
        .filter(|a| a.claim.as_ref() == Some(claim) && a.value.as_ref().is_some_and(|v| v.0 == value))
        .map(|a| a.id.clone())
        .collect()
}

/// The id of the single argument with this claim and value.
pub fn find_one(fw: &Framework, claim: &str, value: &str) -> Result<ArgumentId> {
    let f: Formula = claim.parse()?;
    let mut found = find(fw, &f, value);
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::ClaimNotFound(format!("({f}, {value})"))),
        _ => Err(Error::DuplicateArgument(format!("({f}, {value})"))),
    }
}
