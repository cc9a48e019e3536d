//! Semi-abstract frameworks: arguments carry formula claims, attacks are
//! three-valued, and attack principles make implicit attacks (and non-attacks)
//! explicit.
//!
//! The principle engine groups targets into classes. Without values a class
//! is every argument with a given claim; with values it is every argument
//! with a given claim and value, and every rule keeps the target value fixed.
//! A class counts as attacked by `f` when some member is, as not attacked
//! when every member is established as not attacked, and as unknown
//! otherwise. A conclusion about a class is written to all of its members.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{subformula_closure, Formula};
use crate::framework::{Argument, ArgumentId, AttackStatus, Framework, ValueName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Principle {
    AAnd,
    AOr,
    AImp,
    BImp,
    BNot,
    CAnd,
    COr,
    CImp,
    CNot,
}

impl Principle {
    pub const ALL: [Principle; 9] = [
        Principle::AAnd,
        Principle::AOr,
        Principle::AImp,
        Principle::BImp,
        Principle::BNot,
        Principle::CAnd,
        Principle::COr,
        Principle::CImp,
        Principle::CNot,
    ];

    /// The order in which one pass of the fixpoint visits the rules.
    const PASS_ORDER: [Principle; 9] = [
        Principle::AAnd,
        Principle::AOr,
        Principle::AImp,
        Principle::BNot,
        Principle::COr,
        Principle::CAnd,
        Principle::CImp,
        Principle::BImp,
        Principle::CNot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Principle::AAnd => "A.and",
            Principle::AOr => "A.or",
            Principle::AImp => "A.imp",
            Principle::BImp => "B.imp",
            Principle::BNot => "B.not",
            Principle::CAnd => "C.and",
            Principle::COr => "C.or",
            Principle::CImp => "C.imp",
            Principle::CNot => "C.not",
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Principle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Principle {
    type Err = Error;

    /// Accepts `A.and`, `A&`, `A∧` and the like, case-insensitively in the
    /// connective part.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut chars = t.chars();
        let family = chars.next().map(|c| c.to_ascii_uppercase());
        let rest = chars.as_str().trim_start_matches('.').to_ascii_lowercase();
        let conn = match rest.as_str() {
            "and" | "&" | "∧" => 0,
            "or" | "|" | "∨" => 1,
            "imp" | "->" | "⊃" => 2,
            "not" | "~" | "¬" => 3,
            _ => return Err(Error::InvalidPrinciple(s.to_string())),
        };
        match (family, conn) {
            (Some('A'), 0) => Ok(Principle::AAnd),
            (Some('A'), 1) => Ok(Principle::AOr),
            (Some('A'), 2) => Ok(Principle::AImp),
            (Some('B'), 2) => Ok(Principle::BImp),
            (Some('B'), 3) => Ok(Principle::BNot),
            (Some('C'), 0) => Ok(Principle::CAnd),
            (Some('C'), 1) => Ok(Principle::COr),
            (Some('C'), 2) => Ok(Principle::CImp),
            (Some('C'), 3) => Ok(Principle::CNot),
            _ => Err(Error::InvalidPrinciple(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PrincipleSet(BTreeSet<Principle>);

impl PrincipleSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(ps: impl IntoIterator<Item = Principle>) -> Self {
        PrincipleSet(ps.into_iter().collect())
    }

    pub fn cap() -> Self {
        use Principle::*;
        Self::new([AAnd, AOr, BImp, BNot, CAnd, COr, CImp, CNot])
    }

    pub fn map() -> Self {
        use Principle::*;
        Self::new([AAnd, AOr, BNot, CAnd, CImp])
    }

    pub fn contains(&self, p: Principle) -> bool {
        self.0.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = Principle> + '_ {
        self.0.iter().copied()
    }
}

impl FromStr for PrincipleSet {
    type Err = Error;

    /// `MAP`, `CAP`, or a comma-separated list of principle names.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "MAP" | "map" => Ok(Self::map()),
            "CAP" | "cap" => Ok(Self::cap()),
            "" => Ok(Self::empty()),
            list => list
                .split(',')
                .map(str::parse)
                .collect::<Result<BTreeSet<_>>>()
                .map(PrincipleSet),
        }
    }
}

/// `attacker` against the class of targets with the given claim (and value).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    pub attacker: ArgumentId,
    pub claim: Formula,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueName>,
    pub targets: Vec<ArgumentId>,
    pub status: AttackStatus,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.status {
            AttackStatus::Present => "->",
            AttackStatus::Absent => "-/->",
            AttackStatus::Unknown => "?->",
        };
        let targets: Vec<&str> = self.targets.iter().map(|t| t.as_str()).collect();
        write!(f, "{} {arrow} {}", self.attacker, targets.join("|"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub pass: usize,
    pub principle: Principle,
    pub attacker: ArgumentId,
    pub target: ArgumentId,
    pub status: AttackStatus,
    pub premises: Vec<Literal>,
}

impl Derivation {
    pub fn edge(&self) -> (&str, &str) {
        (self.attacker.as_str(), self.target.as_str())
    }
}

/// A disjunction of literals none of which is settled yet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub pass: usize,
    pub principle: Principle,
    pub premises: Vec<Literal>,
    pub literals: Vec<Literal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pass: usize,
    pub principle: Principle,
    pub attacker: ArgumentId,
    pub target: ArgumentId,
    pub established: AttackStatus,
    pub derived: AttackStatus,
    pub premises: Vec<Literal>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureTrace {
    pub passes: usize,
    pub derived: Vec<Derivation>,
    pub constraints: Vec<Constraint>,
    pub violations: Vec<Violation>,
}

impl ClosureTrace {
    /// Derived edges with their new status, as id pairs.
    pub fn derived_edges(&self) -> BTreeSet<(String, String, AttackStatus)> {
        self.derived
            .iter()
            .map(|d| (d.attacker.0.clone(), d.target.0.clone(), d.status))
            .collect()
    }
}

/// Whether rule instances keep target values fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ClassMode {
    Claim,
    ClaimValue,
}

#[derive(Clone, Debug)]
struct Class {
    claim: Formula,
    value: Option<ValueName>,
    members: Vec<usize>,
    /// Class of each immediate subformula under the same value.
    left: Option<usize>,
    right: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Lit {
    attacker: usize,
    class: usize,
    present: bool,
}

#[derive(Clone, Debug)]
struct Pending {
    principle: Principle,
    premises: Vec<Literal>,
    literals: Vec<Lit>,
}

struct Engine<'p> {
    fw: Framework,
    ps: &'p PrincipleSet,
    classes: Vec<Class>,
    attackers: Vec<usize>,
    pass: usize,
    trace: ClosureTrace,
    open: Vec<Pending>,
    seen_constraints: HashSet<(Principle, Vec<Lit>)>,
    seen_violations: HashSet<(Principle, usize, usize, AttackStatus)>,
}

impl<'p> Engine<'p> {
    fn new(fw: &Framework, ps: &'p PrincipleSet, gamma: &BTreeSet<Formula>, mode: ClassMode) -> Self {
        let closure = subformula_closure(gamma.iter());
        let mut index: HashMap<(Formula, Option<ValueName>), usize> = HashMap::new();
        let mut classes: Vec<Class> = Vec::new();
        for (i, arg) in fw.arguments().iter().enumerate() {
            let Some(claim) = &arg.claim else { continue };
            if !closure.contains(claim) {
                continue;
            }
            let value = match mode {
                ClassMode::Claim => None,
                ClassMode::ClaimValue => arg.value.clone(),
            };
            let key = (claim.clone(), value.clone());
            let k = *index.entry(key).or_insert_with(|| {
                classes.push(Class {
                    claim: claim.clone(),
                    value,
                    members: Vec::new(),
                    left: None,
                    right: None,
                });
                classes.len() - 1
            });
            classes[k].members.push(i);
        }
        for c in &mut classes {
            let lookup = |f: &Formula| index.get(&(f.clone(), c.value.clone())).copied();
            match &c.claim {
                Formula::Atom(_) => {}
                Formula::Not(a) => c.left = lookup(a),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    c.left = lookup(a);
                    c.right = lookup(b);
                }
            }
        }
        let attackers = (0..fw.len())
            .filter(|&i| fw.claim_of(i).is_some_and(|c| closure.contains(c)))
            .collect();
        Engine {
            fw: fw.clone(),
            ps,
            classes,
            attackers,
            pass: 0,
            trace: ClosureTrace::default(),
            open: Vec::new(),
            seen_constraints: HashSet::new(),
            seen_violations: HashSet::new(),
        }
    }

    fn status(&self, f: usize, k: usize) -> AttackStatus {
        let mut all_absent = true;
        for &m in &self.classes[k].members {
            match self.fw.status(f, m) {
                AttackStatus::Present => return AttackStatus::Present,
                AttackStatus::Absent => {}
                AttackStatus::Unknown => all_absent = false,
            }
        }
        if all_absent {
            AttackStatus::Absent
        } else {
            AttackStatus::Unknown
        }
    }

    fn literal(&self, f: usize, k: usize, status: AttackStatus) -> Literal {
        let c = &self.classes[k];
        Literal {
            attacker: self.fw.id(f).clone(),
            claim: c.claim.clone(),
            value: c.value.clone(),
            targets: self.fw.ids_of(c.members.iter().copied()),
            status,
        }
    }

    fn lit_literal(&self, l: Lit) -> Literal {
        let status = if l.present {
            AttackStatus::Present
        } else {
            AttackStatus::Absent
        };
        self.literal(l.attacker, l.class, status)
    }

    fn premise(&self, f: usize, ks: &[(usize, AttackStatus)]) -> Vec<Literal> {
        ks.iter().map(|&(k, s)| self.literal(f, k, s)).collect()
    }

    /// Writes `status` to every member edge of class `k`. Returns whether
    /// anything changed.
    fn conclude(&mut self, p: Principle, f: usize, k: usize, status: AttackStatus, premises: &[Literal]) -> bool {
        let mut changed = false;
        for m in self.classes[k].members.clone() {
            match self.fw.status(f, m) {
                AttackStatus::Unknown => {
                    self.fw.set_status(f, m, status);
                    self.trace.derived.push(Derivation {
                        pass: self.pass,
                        principle: p,
                        attacker: self.fw.id(f).clone(),
                        target: self.fw.id(m).clone(),
                        status,
                        premises: premises.to_vec(),
                    });
                    changed = true;
                }
                s if s == status => {}
                established => {
                    if self.seen_violations.insert((p, f, m, status)) {
                        self.trace.violations.push(Violation {
                            pass: self.pass,
                            principle: p,
                            attacker: self.fw.id(f).clone(),
                            target: self.fw.id(m).clone(),
                            established,
                            derived: status,
                            premises: premises.to_vec(),
                        });
                    }
                }
            }
        }
        changed
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        match self.status(l.attacker, l.class) {
            AttackStatus::Present => Some(l.present),
            AttackStatus::Absent => Some(!l.present),
            AttackStatus::Unknown => None,
        }
    }

    /// Settles a disjunction as far as current statuses allow: satisfied
    /// ones vanish, a single remaining literal is promoted, none remaining is
    /// a violation. Returns `Some(pending)` if it stays open.
    fn settle(&mut self, pending: Pending, changed: &mut bool) -> Option<Pending> {
        let mut refuted = Vec::new();
        let mut live = Vec::new();
        for &l in &pending.literals {
            match self.lit_value(l) {
                Some(true) => return None,
                Some(false) => refuted.push(l),
                None => live.push(l),
            }
        }
        let mut premises = pending.premises.clone();
        premises.extend(refuted.iter().map(|&l| {
            let mut lit = self.lit_literal(l);
            lit.status = lit.status.opposite();
            lit
        }));
        match live.len() {
            0 => {
                // Every disjunct is refuted: report against the first one.
                let l = pending.literals[0];
                let status = if l.present {
                    AttackStatus::Present
                } else {
                    AttackStatus::Absent
                };
                *changed |= self.conclude(pending.principle, l.attacker, l.class, status, &premises);
                None
            }
            1 => {
                let l = live[0];
                let status = if l.present {
                    AttackStatus::Present
                } else {
                    AttackStatus::Absent
                };
                *changed |= self.conclude(pending.principle, l.attacker, l.class, status, &premises);
                None
            }
            _ => Some(Pending {
                literals: live,
                ..pending
            }),
        }
    }

    fn disjunction(&mut self, p: Principle, premises: Vec<Literal>, literals: Vec<Lit>, changed: &mut bool) {
        if !self.seen_constraints.insert((p, literals.clone())) {
            return;
        }
        let pending = Pending {
            principle: p,
            premises,
            literals,
        };
        if let Some(open) = self.settle(pending, changed) {
            self.open.push(open);
        }
    }

    fn run_rule(&mut self, p: Principle) -> bool {
        use AttackStatus::{Absent, Present};
        let mut changed = false;
        for fi in 0..self.attackers.len() {
            let f = self.attackers[fi];
            for k in 0..self.classes.len() {
                let (claim_kind, l, r) = {
                    let c = &self.classes[k];
                    (kind(&c.claim), c.left, c.right)
                };
                match (p, claim_kind) {
                    (Principle::AAnd, Kind::And) => {
                        let (Some(a), Some(b)) = (l, r) else { continue };
                        if self.status(f, a) == Present && self.status(f, b) == Present && self.status(f, k) != Present {
                            let pr = self.premise(f, &[(a, Present), (b, Present)]);
                            changed |= self.conclude(p, f, k, Present, &pr);
                        }
                    }
                    (Principle::COr, Kind::Or) => {
                        let (Some(a), Some(b)) = (l, r) else { continue };
                        if self.status(f, a) == Present && self.status(f, b) == Present && self.status(f, k) != Present {
                            let pr = self.premise(f, &[(a, Present), (b, Present)]);
                            changed |= self.conclude(p, f, k, Present, &pr);
                        }
                    }
                    (Principle::AOr, Kind::Or) => {
                        let (Some(a), Some(b)) = (l, r) else { continue };
                        if self.status(f, k) == Present {
                            let pr = self.premise(f, &[(k, Present)]);
                            changed |= self.conclude(p, f, a, Present, &pr);
                            changed |= self.conclude(p, f, b, Present, &pr);
                        }
                    }
                    (Principle::AImp, Kind::Implies) => {
                        let Some(b) = r else { continue };
                        if self.status(f, k) == Present {
                            let pr = self.premise(f, &[(k, Present)]);
                            changed |= self.conclude(p, f, b, Present, &pr);
                        }
                    }
                    (Principle::BNot, Kind::Not) => {
                        let Some(a) = l else { continue };
                        // F -> A excludes F -> ~A, and so F -> ~A excludes F -> A.
                        if self.status(f, a) == Present {
                            let pr = self.premise(f, &[(a, Present)]);
                            changed |= self.conclude(p, f, k, Absent, &pr);
                        }
                        if self.status(f, k) == Present {
                            let pr = self.premise(f, &[(k, Present)]);
                            changed |= self.conclude(p, f, a, Absent, &pr);
                        }
                    }
                    (Principle::CAnd, Kind::And) => {
                        let (Some(a), Some(b)) = (l, r) else { continue };
                        if self.status(f, k) == Present {
                            let pr = self.premise(f, &[(k, Present)]);
                            let lits = vec![
                                Lit { attacker: f, class: a, present: true },
                                Lit { attacker: f, class: b, present: true },
                            ];
                            self.disjunction(p, pr, lits, &mut changed);
                        }
                    }
                    (Principle::CImp, Kind::Implies) => {
                        let (Some(a), Some(b)) = (l, r) else { continue };
                        if self.status(f, k) == Present {
                            let pr = self.premise(f, &[(k, Present)]);
                            let lits = vec![
                                Lit { attacker: f, class: a, present: false },
                                Lit { attacker: f, class: b, present: true },
                            ];
                            self.disjunction(p, pr, lits, &mut changed);
                        }
                    }
                    (Principle::BImp, Kind::Implies) => {
                        let (Some(a), Some(b)) = (l, r) else { continue };
                        if self.status(f, a) == Absent && self.status(f, b) == Present && self.status(f, k) != Present {
                            let pr = self.premise(f, &[(a, Absent), (b, Present)]);
                            changed |= self.conclude(p, f, k, Present, &pr);
                        }
                    }
                    (Principle::CNot, Kind::Not) => {
                        let Some(a) = l else { continue };
                        if self.status(f, a) == Absent && self.status(f, k) != Present {
                            let pr = self.premise(f, &[(a, Absent)]);
                            changed |= self.conclude(p, f, k, Present, &pr);
                        }
                    }
                    _ => {}
                }
            }
        }
        changed
    }

    fn run(mut self) -> (Framework, ClosureTrace) {
        loop {
            self.pass += 1;
            let mut changed = false;
            for p in Principle::PASS_ORDER {
                if self.ps.contains(p) {
                    changed |= self.run_rule(p);
                }
            }
            let open = std::mem::take(&mut self.open);
            for pending in open {
                if let Some(still) = self.settle(pending, &mut changed) {
                    self.open.push(still);
                }
            }
            if !changed {
                break;
            }
        }
        self.trace.passes = self.pass;
        let open = std::mem::take(&mut self.open);
        self.trace.constraints = open
            .into_iter()
            .map(|p| Constraint {
                pass: self.pass,
                principle: p.principle,
                premises: p.premises.clone(),
                literals: p.literals.iter().map(|&l| self.lit_literal(l)).collect(),
            })
            .collect();
        (self.fw, self.trace)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Atom,
    Not,
    And,
    Or,
    Implies,
}

fn kind(f: &Formula) -> Kind {
    match f {
        Formula::Atom(_) => Kind::Atom,
        Formula::Not(_) => Kind::Not,
        Formula::And(..) => Kind::And,
        Formula::Or(..) => Kind::Or,
        Formula::Implies(..) => Kind::Implies,
    }
}

pub(crate) fn run_principles(
    fw: &Framework,
    ps: &PrincipleSet,
    gamma: &BTreeSet<Formula>,
    mode: ClassMode,
) -> (Framework, ClosureTrace) {
    Engine::new(fw, ps, gamma, mode).run()
}

/// All claims occurring in the framework.
pub fn claims(fw: &Framework) -> BTreeSet<Formula> {
    fw.arguments().iter().filter_map(|a| a.claim.clone()).collect()
}

/// Whether every subformula of every formula in `gamma` is some argument's
/// claim, with the missing subformulae.
pub fn is_logically_closed(fw: &Framework, gamma: &BTreeSet<Formula>) -> Result<(bool, BTreeSet<Formula>)> {
    fw.require_claims()?;
    let present = claims(fw);
    let missing: BTreeSet<Formula> = subformula_closure(gamma.iter())
        .into_iter()
        .filter(|f| !present.contains(f))
        .collect();
    Ok((missing.is_empty(), missing))
}

/// Adds one argument `cl_<n>` per missing subformula, in formula order.
/// Value-labelled frameworks need the value-local closure instead.
pub fn close_logically(fw: &Framework, gamma: &BTreeSet<Formula>) -> Result<Framework> {
    let (_, missing) = is_logically_closed(fw, gamma)?;
    if fw.arguments().iter().any(|a| a.value.is_some()) {
        return Err(Error::MixedLabelling(
            "plain closure would add unvalued arguments to a value-labelled framework".into(),
        ));
    }
    let mut out = fw.clone();
    let mut counter = 0;
    for f in missing {
        let id = out.fresh_id(&mut counter);
        out.add_argument(Argument {
            id,
            claim: Some(f),
            value: None,
        })?;
    }
    Ok(out)
}

/// Least fixpoint of the enabled principles, relativised to `gamma`.
pub fn apply_principles(
    fw: &Framework,
    ps: &PrincipleSet,
    gamma: &BTreeSet<Formula>,
) -> Result<(Framework, ClosureTrace)> {
    fw.require_claims()?;
    Ok(run_principles(fw, ps, gamma, ClassMode::Claim))
}

/// Every argument that attacks `goal` also attacks one of `premises`.
pub fn argumentative_consequence<S: AsRef<str>>(fw: &Framework, premises: &[S], goal: &str) -> Result<bool> {
    let goal = fw.index_of(goal)?;
    let premises = fw.resolve(premises)?;
    Ok(consequence_idx(fw, &premises, &[goal], |a, b| fw.is_attack(a, b)))
}

/// Every argument attacking all of `delta` attacks some member of `gamma`.
pub fn consequence_sets<S: AsRef<str>, T: AsRef<str>>(fw: &Framework, gamma: &[S], delta: &[T]) -> Result<bool> {
    let gamma = fw.resolve(gamma)?;
    let delta = fw.resolve(delta)?;
    Ok(consequence_idx(fw, &gamma, &delta, |a, b| fw.is_attack(a, b)))
}

pub(crate) fn consequence_idx(
    fw: &Framework,
    gamma: &[usize],
    delta: &[usize],
    hits: impl Fn(usize, usize) -> bool,
) -> bool {
    (0..fw.len())
        .filter(|&x| delta.iter().all(|&d| hits(x, d)))
        .all(|x| gamma.iter().any(|&g| hits(x, g)))
}

/// Indices of the arguments claiming one of `formulas`; each formula must
/// be claimed at least once.
pub(crate) fn claimants(fw: &Framework, formulas: &[Formula]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for f in formulas {
        let found: Vec<usize> = (0..fw.len()).filter(|&i| fw.claim_of(i) == Some(f)).collect();
        if found.is_empty() {
            return Err(Error::ClaimNotFound(f.to_string()));
        }
        out.extend(found);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CollectionVerdict {
    pub holds: bool,
    /// The collection was empty, so `holds` is vacuous.
    pub vacuous: bool,
}

/// Claim-level consequence in every framework of the collection: in each,
/// every argument attacking all arguments that claim a formula of `delta`
/// attacks some argument claiming a formula of `gamma`.
pub fn consequence_sets_over_collection(
    fws: &[Framework],
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
        let g = claimants(fw, gamma)?;
        let d = claimants(fw, delta)?;
        holds &= consequence_idx(fw, &g, &d, |a, b| fw.is_attack(a, b));
    }
    Ok(CollectionVerdict { holds, vacuous: false })
}

/// Claim-level consequence of `goal` from `premises` in every framework:
/// each argument claiming `goal` must be a consequence of the arguments
/// claiming the premises.
pub fn consequence_over_collection(
    fws: &[Framework],
    premises: &[Formula],
    goal: &Formula,
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
        let p = if premises.is_empty() {
            Vec::new()
        } else {
            claimants(fw, premises)?
        };
        for g in claimants(fw, std::slice::from_ref(goal))? {
            holds &= consequence_idx(fw, &p, &[g], |a, b| fw.is_attack(a, b));
        }
    }
    Ok(CollectionVerdict { holds, vacuous: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn claimed(args: &[(&str, &str)], attacks: &[(&str, &str)]) -> Framework {
        let mut fw = Framework::new();
        for (id, c) in args {
            fw.add_argument(Argument::new(*id).with_claim(parse_formula(c).unwrap()))
                .unwrap();
        }
        for (a, b) in attacks {
            fw.attack(a, b).unwrap();
        }
        fw
    }

    fn fset(xs: &[&str]) -> BTreeSet<Formula> {
        xs.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    fn svx_flat() -> Framework {
        claimed(
            &[
                ("na_p", "~a"),
                ("aorb_p", "a | b"),
                ("bimpc_p", "b -> c"),
                ("a_t", "a"),
                ("bandd_t", "b & d"),
                ("b_t", "b"),
                ("d_t", "d"),
            ],
            &[
                ("na_p", "a_t"),
                ("a_t", "na_p"),
                ("na_p", "aorb_p"),
                ("aorb_p", "na_p"),
                ("aorb_p", "d_t"),
                ("bandd_t", "bimpc_p"),
                ("bimpc_p", "b_t"),
                ("bimpc_p", "d_t"),
            ],
        )
    }

    #[test]
    fn principle_names() {
        assert_eq!("A.and".parse::<Principle>().unwrap(), Principle::AAnd);
        assert_eq!("C->".parse::<Principle>().unwrap(), Principle::CImp);
        assert_eq!("B¬".parse::<Principle>().unwrap(), Principle::BNot);
        assert!("A.not".parse::<Principle>().is_err());
        assert!("B.and".parse::<Principle>().is_err());
        let set: PrincipleSet = "A.and, C.imp".parse().unwrap();
        assert_eq!(set, PrincipleSet::new([Principle::AAnd, Principle::CImp]));
        assert_eq!(PrincipleSet::cap().iter().count(), 8);
        assert!(!PrincipleSet::cap().contains(Principle::AImp));
        assert_eq!(PrincipleSet::map().iter().count(), 5);
    }

    #[test]
    fn closure_reports_missing_subformulae() {
        let fw = claimed(&[("x", "a"), ("y", "a | b")], &[]);
        let (closed, missing) = is_logically_closed(&fw, &claims(&fw)).unwrap();
        assert!(!closed);
        assert_eq!(missing, fset(&["b"]));
        let closed = close_logically(&fw, &claims(&fw)).unwrap();
        assert_eq!(closed.len(), 3);
        assert_eq!(closed.id(2).as_str(), "cl_1");
        assert_eq!(closed.claim_of(2), Some(&parse_formula("b").unwrap()));
        assert_eq!(close_logically(&closed, &claims(&closed)).unwrap(), closed);
    }

    #[test]
    fn closure_of_nested_implication() {
        let fw = claimed(&[("x", "a -> b & c")], &[]);
        let (_, missing) = is_logically_closed(&fw, &claims(&fw)).unwrap();
        assert_eq!(missing, fset(&["b & c", "a", "b", "c"]));
        let fw = claimed(&[("x", "b -> c"), ("y", "b"), ("z", "c")], &[]);
        assert!(is_logically_closed(&fw, &claims(&fw)).unwrap().0);
    }

    #[test]
    fn flat_svx_conjunction_and_disjunction_rules() {
        let fw = svx_flat();
        let closed = close_logically(&fw, &claims(&fw)).unwrap();
        let (_, trace) = apply_principles(&closed, &PrincipleSet::map(), &claims(&closed)).unwrap();
        let edges = trace.derived_edges();
        let has = |a: &str, b: &str, s| edges.contains(&(a.to_string(), b.to_string(), s));
        assert!(has("bimpc_p", "bandd_t", AttackStatus::Present));
        // Without values the only argument claiming `b` is b_t.
        assert!(has("na_p", "b_t", AttackStatus::Present));
        assert!(has("a_t", "a_t", AttackStatus::Absent));
        assert!(trace.violations.is_empty());
    }

    #[test]
    fn negation_rule_from_a_negated_target() {
        let fw = claimed(&[("x", "a"), ("y", "~a")], &[("x", "y")]);
        let (out, trace) = apply_principles(&fw, &PrincipleSet::new([Principle::BNot]), &claims(&fw)).unwrap();
        assert_eq!(out.status(0, 0), AttackStatus::Absent);
        assert_eq!(trace.derived.len(), 1);
        assert_eq!(trace.derived[0].principle, Principle::BNot);
    }

    #[test]
    fn relativisation_blocks_rules_outside_gamma() {
        let fw = claimed(&[("f", "z"), ("x", "a"), ("y", "b"), ("xy", "a & b")], &[("f", "x"), ("f", "y")]);
        let (_, trace) = apply_principles(&fw, &PrincipleSet::map(), &fset(&["z", "a", "b"])).unwrap();
        assert!(trace.derived.is_empty());
        let (_, trace) = apply_principles(&fw, &PrincipleSet::map(), &claims(&fw)).unwrap();
        assert_eq!(trace.derived.len(), 1);
    }

    #[test]
    fn disjunctive_rules_become_constraints_then_propagate() {
        let mut fw = claimed(&[("f", "z"), ("x", "a"), ("y", "b"), ("xy", "a & b")], &[("f", "xy")]);
        let (_, trace) = apply_principles(&fw, &PrincipleSet::new([Principle::CAnd]), &claims(&fw)).unwrap();
        assert_eq!(trace.constraints.len(), 1);
        assert_eq!(trace.constraints[0].literals.len(), 2);
        fw.set_status(0, 1, AttackStatus::Absent);
        let (out, trace) = apply_principles(&fw, &PrincipleSet::new([Principle::CAnd]), &claims(&fw)).unwrap();
        assert!(trace.constraints.is_empty());
        assert_eq!(out.status(0, 2), AttackStatus::Present);
    }

    #[test]
    fn implication_rules() {
        let fw = claimed(&[("f", "z"), ("x", "a"), ("y", "b"), ("i", "a -> b")], &[("f", "y")]);
        let ps = PrincipleSet::new([Principle::BImp]);
        // Unknown is not read as a non-attack.
        let (_, trace) = apply_principles(&fw, &ps, &claims(&fw)).unwrap();
        assert!(trace.derived.is_empty());
        let mut fw2 = fw.clone();
        fw2.set_status(0, 1, AttackStatus::Absent);
        let (out, _) = apply_principles(&fw2, &ps, &claims(&fw2)).unwrap();
        assert_eq!(out.status(0, 3), AttackStatus::Present);
        let mut fw3 = fw.without_attacks();
        fw3.set_status(0, 3, AttackStatus::Present);
        let (out, _) = apply_principles(&fw3, &PrincipleSet::new([Principle::AImp]), &claims(&fw3)).unwrap();
        assert_eq!(out.status(0, 2), AttackStatus::Present);
    }

    #[test]
    fn conflicts_become_violations() {
        let mut fw = claimed(&[("f", "z"), ("x", "a"), ("nx", "~a")], &[("f", "x"), ("f", "nx")]);
        fw.set_status(0, 0, AttackStatus::Absent);
        let (out, trace) = apply_principles(&fw, &PrincipleSet::new([Principle::BNot]), &claims(&fw)).unwrap();
        assert_eq!(trace.violations.len(), 2);
        assert!(out.is_attack(0, 1) && out.is_attack(0, 2));
    }

    #[test]
    fn negation_completion() {
        let mut fw = claimed(&[("f", "z"), ("x", "a"), ("nx", "~a")], &[]);
        fw.set_status(0, 1, AttackStatus::Absent);
        let (out, _) = apply_principles(&fw, &PrincipleSet::new([Principle::CNot]), &claims(&fw)).unwrap();
        assert_eq!(out.status(0, 2), AttackStatus::Present);
    }

    #[test]
    fn consequence_basics() {
        let chain = claimed(&[("x", "a"), ("y", "b")], &[("x", "y")]);
        assert!(argumentative_consequence::<&str>(&chain, &[], "x").unwrap());
        assert!(argumentative_consequence(&chain, &["y"], "y").unwrap());
        assert!(!argumentative_consequence::<&str>(&chain, &[], "y").unwrap());
        assert!(consequence_sets(&chain, &["x"], &["y"]).unwrap() == chain.is_attack(0, 0));
        let burger = claimed(
            &[("f", "f"), ("a1", "p"), ("a2", "q"), ("u", "u"), ("v", "v")],
            &[("u", "f"), ("u", "a1"), ("v", "f"), ("v", "a2")],
        );
        assert!(argumentative_consequence(&burger, &["a1", "a2"], "f").unwrap());
        assert!(!argumentative_consequence(&burger, &["a1"], "f").unwrap());
    }

    #[test]
    fn empty_delta_needs_every_argument_to_hit_gamma() {
        let ids = ["x", "y", "z"];
        let args: Vec<(&str, &str)> = ids.iter().map(|i| (*i, "a")).collect();
        let all: Vec<(&str, &str)> = ids.iter().flat_map(|a| ids.iter().map(move |b| (*a, *b))).collect();
        let complete = claimed(&args, &all);
        assert!(consequence_sets::<&str, &str>(&complete, &ids, &[]).unwrap());
        let sparse = claimed(&args, &[("x", "y")]);
        assert!(!consequence_sets::<&str, &str>(&sparse, &ids, &[]).unwrap());
    }

    #[test]
    fn collections_conjoin() {
        let good = claimed(&[("x", "a"), ("y", "b")], &[("x", "y"), ("x", "x")]);
        let bad = claimed(&[("x", "a"), ("y", "b")], &[("x", "y")]);
        let a = parse_formula("a").unwrap();
        let b = parse_formula("b").unwrap();
        let single = consequence_over_collection(std::slice::from_ref(&good), std::slice::from_ref(&a), &b).unwrap();
        assert_eq!(single.holds, argumentative_consequence(&good, &["x"], "y").unwrap());
        let both = consequence_over_collection(&[good, bad], std::slice::from_ref(&a), &b).unwrap();
        assert!(!both.holds);
        let empty = consequence_over_collection(&[], &[a], &b).unwrap();
        assert!(empty.holds && empty.vacuous);
    }
}
