//! The single container shared by all four framework flavours: arguments with
//! optional claims and values, and a three-valued attack relation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ArgumentId(pub String);

impl ArgumentId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ArgumentId {
    fn from(s: &str) -> Self {
        ArgumentId(s.to_string())
    }
}

impl AsRef<str> for ArgumentId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ValueName(pub String);

impl ValueName {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ValueName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ValueName {
    fn from(s: &str) -> Self {
        ValueName(s.to_string())
    }
}

/// Status of an ordered pair of arguments. `Unknown` is the default for any
/// pair that was neither asserted nor derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackStatus {
    Present,
    Absent,
    Unknown,
}

impl AttackStatus {
    pub fn opposite(self) -> AttackStatus {
        match self {
            AttackStatus::Present => AttackStatus::Absent,
            AttackStatus::Absent => AttackStatus::Present,
            AttackStatus::Unknown => AttackStatus::Unknown,
        }
    }
}

impl fmt::Display for AttackStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackStatus::Present => "present",
            AttackStatus::Absent => "absent",
            AttackStatus::Unknown => "unknown",
        })
    }
}

/// An ordered pair `attacker -> target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub attacker: ArgumentId,
    pub target: ArgumentId,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.attacker, self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Argument {
    pub id: ArgumentId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<Formula>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueName>,
}

impl Argument {
    pub fn new(id: impl Into<String>) -> Self {
        Argument {
            id: ArgumentId(id.into()),
            claim: None,
            value: None,
        }
    }

    pub fn with_claim(mut self, claim: Formula) -> Self {
        self.claim = Some(claim);
        self
    }

    pub fn with_value(mut self, value: impl Into<String>) -> Self {
        self.value = Some(ValueName(value.into()));
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Framework {
    arguments: Vec<Argument>,
    index: HashMap<ArgumentId, usize>,
    /// Only `Present` and `Absent` entries are stored.
    attacks: BTreeMap<(usize, usize), AttackStatus>,
    values: Vec<ValueName>,
    fact: Option<ValueName>,
    /// Preference chains as declared, most preferred first.
    order: Vec<Vec<ValueName>>,
}

impl Framework {
    pub fn new() -> Self {
        Self::default()
    }

    /// Plain attack graph from string pairs, declaring arguments on first use
    /// in the order given by `args`.
    pub fn from_attacks(args: &[&str], attacks: &[(&str, &str)]) -> Result<Self> {
        let mut fw = Framework::new();
        for a in args {
            fw.add_argument(Argument::new(*a))?;
        }
        for (x, y) in attacks {
            fw.attack(x, y)?;
        }
        Ok(fw)
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn argument(&self, i: usize) -> &Argument {
        &self.arguments[i]
    }

    pub fn id(&self, i: usize) -> &ArgumentId {
        &self.arguments[i].id
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(&ArgumentId::from(id))
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(&ArgumentId::from(id))
            .copied()
            .ok_or_else(|| Error::UnknownArgument(id.to_string()))
    }

    pub fn resolve<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn declare_value(&mut self, name: impl Into<String>) -> Result<()> {
        let name = ValueName(name.into());
        if self.values.contains(&name) || self.fact.as_ref() == Some(&name) {
            return Err(Error::DuplicateValue(name.0));
        }
        self.values.push(name);
        Ok(())
    }

    /// Designates the fact tier. Its name must not clash with an ordinary value.
    pub fn set_fact(&mut self, name: impl Into<String>) -> Result<()> {
        let name = ValueName(name.into());
        if self.values.contains(&name) {
            return Err(Error::DuplicateValue(name.0));
        }
        if let Some(existing) = &self.fact {
            if existing != &name {
                return Err(Error::DuplicateValue(format!(
                    "second fact tier `{name}` (already `{existing}`)"
                )));
            }
        }
        self.fact = Some(name);
        Ok(())
    }

    /// Ordinary (non-fact) values in declaration order.
    pub fn values(&self) -> &[ValueName] {
        &self.values
    }

    pub fn fact(&self) -> Option<&ValueName> {
        self.fact.as_ref()
    }

    pub fn is_declared_value(&self, v: &ValueName) -> bool {
        self.values.contains(v) || self.fact.as_ref() == Some(v)
    }

    pub fn is_fact(&self, v: &ValueName) -> bool {
        self.fact.as_ref() == Some(v)
    }

    pub fn order_chains(&self) -> &[Vec<ValueName>] {
        &self.order
    }

    pub fn add_order_chain(&mut self, chain: Vec<ValueName>) -> Result<()> {
        for v in &chain {
            if !self.is_declared_value(v) {
                return Err(Error::UndeclaredValue(v.0.clone()));
            }
        }
        self.order.push(chain);
        Ok(())
    }

    pub fn add_argument(&mut self, arg: Argument) -> Result<usize> {
        if self.index.contains_key(&arg.id) {
            return Err(Error::DuplicateArgument(arg.id.0));
        }
        if let Some(v) = &arg.value {
            if !self.is_declared_value(v) {
                return Err(Error::UndeclaredValue(v.0.clone()));
            }
        }
        let i = self.arguments.len();
        self.index.insert(arg.id.clone(), i);
        self.arguments.push(arg);
        Ok(i)
    }

    /// An id not yet in use, of the form `cl_<n>`.
    pub fn fresh_id(&self, counter: &mut usize) -> ArgumentId {
        loop {
            *counter += 1;
            let candidate = ArgumentId(format!("cl_{counter}"));
            if !self.index.contains_key(&candidate) {
                return candidate;
            }
        }
    }

    pub fn status(&self, attacker: usize, target: usize) -> AttackStatus {
        self.attacks
            .get(&(attacker, target))
            .copied()
            .unwrap_or(AttackStatus::Unknown)
    }

    pub fn set_status(&mut self, attacker: usize, target: usize, status: AttackStatus) {
        assert!(attacker < self.len() && target < self.len());
        match status {
            AttackStatus::Unknown => {
                self.attacks.remove(&(attacker, target));
            }
            s => {
                self.attacks.insert((attacker, target), s);
            }
        }
    }

    /// Asserts `attacker -> target` as `Present`.
    pub fn attack(&mut self, attacker: &str, target: &str) -> Result<()> {
        let (a, b) = (self.index_of(attacker)?, self.index_of(target)?);
        self.set_status(a, b, AttackStatus::Present);
        Ok(())
    }

    pub fn is_attack(&self, attacker: usize, target: usize) -> bool {
        self.status(attacker, target) == AttackStatus::Present
    }

    /// All stored (non-`Unknown`) statuses in index order.
    pub fn statuses(&self) -> impl Iterator<Item = ((usize, usize), AttackStatus)> + '_ {
        self.attacks.iter().map(|(k, v)| (*k, *v))
    }

    pub fn present_attacks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.attacks
            .iter()
            .filter(|(_, s)| **s == AttackStatus::Present)
            .map(|(k, _)| *k)
    }

    pub fn attackers_of(&self, target: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.is_attack(a, target)).collect()
    }

    pub fn victims_of(&self, attacker: usize) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.is_attack(attacker, t)).collect()
    }

    pub fn edge(&self, attacker: usize, target: usize) -> Edge {
        Edge {
            attacker: self.id(attacker).clone(),
            target: self.id(target).clone(),
        }
    }

    pub fn value_of(&self, i: usize) -> Option<&ValueName> {
        self.arguments[i].value.as_ref()
    }

    pub fn claim_of(&self, i: usize) -> Option<&Formula> {
        self.arguments[i].claim.as_ref()
    }

    /// True when the framework is non-empty and every argument is valued.
    pub fn is_value_labelled(&self) -> bool {
        !self.is_empty() && self.arguments.iter().all(|a| a.value.is_some())
    }

    pub fn is_claim_labelled(&self) -> bool {
        !self.is_empty() && self.arguments.iter().all(|a| a.claim.is_some())
    }

    /// Rejects frameworks where only some arguments carry a value (or a claim).
    pub fn check_labelling(&self) -> Result<()> {
        let valued = self.arguments.iter().filter(|a| a.value.is_some()).count();
        if valued != 0 && valued != self.len() {
            let missing = self.arguments.iter().find(|a| a.value.is_none()).unwrap();
            return Err(Error::MixedLabelling(format!(
                "some arguments carry values but `{}` does not",
                missing.id
            )));
        }
        let claimed = self.arguments.iter().filter(|a| a.claim.is_some()).count();
        if claimed != 0 && claimed != self.len() {
            let missing = self.arguments.iter().find(|a| a.claim.is_none()).unwrap();
            return Err(Error::MixedLabelling(format!(
                "some arguments carry claims but `{}` does not",
                missing.id
            )));
        }
        Ok(())
    }

    pub fn require_values(&self) -> Result<()> {
        match self.arguments.iter().find(|a| a.value.is_none()) {
            Some(a) => Err(Error::MissingValue(a.id.0.clone())),
            None => Ok(()),
        }
    }

    pub fn require_claims(&self) -> Result<()> {
        match self.arguments.iter().find(|a| a.claim.is_none()) {
            Some(a) => Err(Error::MissingClaim(a.id.0.clone())),
            None => Ok(()),
        }
    }

    /// Same arguments and claims with the value labelling removed.
    pub fn without_values(&self) -> Framework {
        let mut fw = self.clone();
        for a in &mut fw.arguments {
            a.value = None;
        }
        fw.values.clear();
        fw.fact = None;
        fw.order.clear();
        fw
    }

    /// Copy with the same arguments and labels and no attack information.
    pub fn without_attacks(&self) -> Framework {
        let mut fw = self.clone();
        fw.attacks.clear();
        fw
    }

    /// The restriction to `keep` (by index), preserving declaration order.
    pub fn restrict(&self, keep: &[usize]) -> Framework {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut fw = Framework {
            values: self.values.clone(),
            fact: self.fact.clone(),
            order: self.order.clone(),
            ..Framework::default()
        };
        let mut remap = HashMap::new();
        for &i in &sorted {
            let j = fw.add_argument(self.arguments[i].clone()).expect("restricting a valid framework");
            remap.insert(i, j);
        }
        for ((a, b), s) in self.statuses() {
            if let (Some(&x), Some(&y)) = (remap.get(&a), remap.get(&b)) {
                fw.set_status(x, y, s);
            }
        }
        fw
    }

    pub fn restrict_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Framework> {
        Ok(self.restrict(&self.resolve(ids)?))
    }

    pub fn ids_of(&self, indices: impl IntoIterator<Item = usize>) -> Vec<ArgumentId> {
        indices.into_iter().map(|i| self.id(i).clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_default_to_unknown() {
        let mut fw = Framework::from_attacks(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(fw.status(0, 1), AttackStatus::Present);
        assert_eq!(fw.status(1, 0), AttackStatus::Unknown);
        fw.set_status(1, 0, AttackStatus::Absent);
        assert_eq!(fw.status(1, 0), AttackStatus::Absent);
        fw.set_status(1, 0, AttackStatus::Unknown);
        assert_eq!(fw.statuses().count(), 1);
    }

    #[test]
    fn rejects_duplicates_and_undeclared_values() {
        let mut fw = Framework::new();
        fw.add_argument(Argument::new("a")).unwrap();
        assert_eq!(
            fw.add_argument(Argument::new("a")),
            Err(Error::DuplicateArgument("a".into()))
        );
        assert_eq!(
            fw.add_argument(Argument::new("b").with_value("V")),
            Err(Error::UndeclaredValue("V".into()))
        );
        assert!(fw.attack("a", "zz").is_err());
    }

    #[test]
    fn mixed_labelling_is_rejected() {
        let mut fw = Framework::new();
        fw.declare_value("V").unwrap();
        fw.add_argument(Argument::new("a").with_value("V")).unwrap();
        fw.add_argument(Argument::new("b")).unwrap();
        assert!(matches!(fw.check_labelling(), Err(Error::MixedLabelling(_))));
    }

    #[test]
    fn self_attacks_are_allowed() {
        let fw = Framework::from_attacks(&["a"], &[("a", "a")]).unwrap();
        assert!(fw.is_attack(0, 0));
    }

    #[test]
    fn restrict_keeps_internal_edges() {
        let fw = Framework::from_attacks(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let sub = fw.restrict_ids(&["c", "a"]).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.id(0).as_str(), "a");
        assert!(sub.is_attack(1, 0));
        assert_eq!(sub.present_attacks().count(), 1);
    }

    #[test]
    fn fresh_ids_skip_collisions() {
        let fw = Framework::from_attacks(&["cl_1", "x"], &[]).unwrap();
        let mut n = 0;
        assert_eq!(fw.fresh_id(&mut n).as_str(), "cl_2");
    }
}
