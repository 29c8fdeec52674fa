//! Abstract syntax of domain descriptions: signatures, literals, conditions
//! and the five proposition forms, plus structural validation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;

/// A natural-number time point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimePoint(pub u32);

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Variables start with an uppercase ASCII letter; everything else is an
/// object constant.
pub fn is_variable_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fluent or action symbol applied to argument terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(name: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { name: name.into(), args }
    }

    /// Zero-arity atom.
    pub fn constant(name: impl Into<String>) -> Self {
        Atom { name: name.into(), args: Vec::new() }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter(|t| t.is_var()).map(|t| t.name())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FluentLiteral {
    pub atom: Atom,
    pub positive: bool,
}

impl FluentLiteral {
    pub fn pos(atom: Atom) -> Self {
        FluentLiteral { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        FluentLiteral { atom, positive: false }
    }
}

/// Flips the polarity of a literal.
pub fn negate(l: &FluentLiteral) -> FluentLiteral {
    FluentLiteral { atom: l.atom.clone(), positive: !l.positive }
}

impl fmt::Display for FluentLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("neg ")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A set of fluent literals plus disequality side-conditions. The empty
/// condition always holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Condition {
    pub literals: Vec<FluentLiteral>,
    pub disequalities: Vec<(Term, Term)>,
}

impl Condition {
    /// Builds a condition, dropping repeated literals and disequalities
    /// while preserving first-occurrence order.
    pub fn new(literals: Vec<FluentLiteral>, disequalities: Vec<(Term, Term)>) -> Self {
        let mut lits = Vec::with_capacity(literals.len());
        for l in literals {
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        let mut diseqs = Vec::with_capacity(disequalities.len());
        for d in disequalities {
            if !diseqs.contains(&d) {
                diseqs.push(d);
            }
        }
        Condition { literals: lits, disequalities: diseqs }
    }

    pub fn always() -> Self {
        Condition::default()
    }

    pub fn of(literals: Vec<FluentLiteral>) -> Self {
        Condition::new(literals, Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty() && self.disequalities.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EffectKind {
    Initiates,
    Terminates,
}

impl EffectKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EffectKind::Initiates => "initiates",
            EffectKind::Terminates => "terminates",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Proposition {
    /// `L holds-at T`
    Holds { literal: FluentLiteral, time: TimePoint },
    /// `A happens-at T`
    Happens { action: Atom, time: TimePoint },
    /// `A initiates F when C` / `A terminates F when C`
    Causes { action: Atom, kind: EffectKind, fluent: Atom, condition: Condition },
    /// `L whenever C`; a `None` head is a denial (`false whenever C`).
    Whenever { head: Option<FluentLiteral>, condition: Condition },
    /// `A needs C`
    Needs { action: Atom, condition: Condition },
}

impl Proposition {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Proposition::Holds { .. } => "t-proposition",
            Proposition::Happens { .. } => "h-proposition",
            Proposition::Causes { .. } => "c-proposition",
            Proposition::Whenever { .. } => "r-proposition",
            Proposition::Needs { .. } => "p-proposition",
        }
    }

    /// Fluent atoms referenced anywhere in the statement.
    pub fn fluent_atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        match self {
            Proposition::Holds { literal, .. } => out.push(&literal.atom),
            Proposition::Happens { .. } => {}
            Proposition::Causes { fluent, condition, .. } => {
                out.push(fluent);
                out.extend(condition.literals.iter().map(|l| &l.atom));
            }
            Proposition::Whenever { head, condition } => {
                if let Some(h) = head {
                    out.push(&h.atom);
                }
                out.extend(condition.literals.iter().map(|l| &l.atom));
            }
            Proposition::Needs { condition, .. } => {
                out.extend(condition.literals.iter().map(|l| &l.atom));
            }
        }
        out
    }

    pub fn action_atom(&self) -> Option<&Atom> {
        match self {
            Proposition::Happens { action, .. }
            | Proposition::Causes { action, .. }
            | Proposition::Needs { action, .. } => Some(action),
            _ => None,
        }
    }

    pub fn condition(&self) -> Option<&Condition> {
        match self {
            Proposition::Causes { condition, .. }
            | Proposition::Whenever { condition, .. }
            | Proposition::Needs { condition, .. } => Some(condition),
            _ => None,
        }
    }

    pub fn time(&self) -> Option<TimePoint> {
        match self {
            Proposition::Holds { time, .. } | Proposition::Happens { time, .. } => Some(*time),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FluentDecl {
    pub name: String,
    pub args: Vec<String>,
    pub constant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionDecl {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    /// Sort name to its ordered object constants.
    pub sorts: IndexMap<String, Vec<String>>,
    pub fluents: Vec<FluentDecl>,
    pub actions: Vec<ActionDecl>,
}

impl Signature {
    pub fn fluent(&self, name: &str) -> Option<&FluentDecl> {
        self.fluents.iter().find(|f| f.name == name)
    }

    pub fn action(&self, name: &str) -> Option<&ActionDecl> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn sort(&self, name: &str) -> Option<&[String]> {
        self.sorts.get(name).map(|v| v.as_slice())
    }

    pub fn is_constant_fluent(&self, name: &str) -> bool {
        self.fluent(name).is_some_and(|f| f.constant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DomainDescription {
    pub signature: Signature,
    pub propositions: Vec<Proposition>,
}

impl DomainDescription {
    pub fn new(signature: Signature, propositions: Vec<Proposition>) -> Self {
        DomainDescription { signature, propositions }
    }

    /// Largest time point mentioned by any t- or h-proposition.
    pub fn max_time(&self) -> TimePoint {
        self.propositions.iter().filter_map(|p| p.time()).max().unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// Where a diagnostic points. The parser turns these into source spans.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Location {
    Signature(String),
    Proposition(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    DuplicateName,
    UnknownSort,
    EmptySort,
    BadConstantName,
    UnknownSymbol,
    Arity,
    SortMismatch,
    NonGround,
    UnboundVariable,
    ConstantEffect,
    ContradictoryCondition,
    DuplicateProposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub severity: Severity,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    fn error(kind: DiagnosticKind, location: Location, message: String) -> Self {
        Diagnostic { kind, severity: Severity::Error, location, message }
    }

    fn warning(kind: DiagnosticKind, location: Location, message: String) -> Self {
        Diagnostic { kind, severity: Severity::Warning, location, message }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {}", self.message)
    }
}

/// Checks every structural invariant of a domain. An empty result means the
/// domain is well formed; warnings do not make it invalid.
pub fn validate(domain: &DomainDescription) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    validate_signature(&domain.signature, &mut diags);
    let mut seen: HashMap<&Proposition, usize> = HashMap::new();
    for (idx, prop) in domain.propositions.iter().enumerate() {
        validate_proposition(&domain.signature, idx, prop, &mut diags);
        if let Some(first) = seen.get(prop) {
            diags.push(Diagnostic::warning(
                DiagnosticKind::DuplicateProposition,
                Location::Proposition(idx),
                format!("statement repeats statement #{first}"),
            ));
        } else {
            seen.insert(prop, idx);
        }
    }
    diags
}

fn validate_signature(sig: &Signature, diags: &mut Vec<Diagnostic>) {
    let mut names: BTreeMap<String, &'static str> = BTreeMap::new();
    let mut claim = |name: &str, what: &'static str, diags: &mut Vec<Diagnostic>| {
        if let Some(prev) = names.get(name) {
            diags.push(Diagnostic::error(
                DiagnosticKind::DuplicateName,
                Location::Signature(name.to_string()),
                format!("{what} `{name}` clashes with {prev} of the same name"),
            ));
        }
        names.entry(name.to_string()).or_insert(what);
    };
    for (sort, members) in &sig.sorts {
        claim(sort, "sort", diags);
        if members.is_empty() {
            diags.push(Diagnostic::error(
                DiagnosticKind::EmptySort,
                Location::Signature(sort.clone()),
                format!("sort `{sort}` has no object constants"),
            ));
        }
        for m in members {
            if m.is_empty() || is_variable_name(m) {
                diags.push(Diagnostic::error(
                    DiagnosticKind::BadConstantName,
                    Location::Signature(sort.clone()),
                    format!("object constant `{m}` of sort `{sort}` must not start uppercase"),
                ));
            }
        }
    }
    for f in &sig.fluents {
        claim(&f.name, "fluent", diags);
        check_arg_sorts(sig, &f.name, &f.args, diags);
    }
    for a in &sig.actions {
        claim(&a.name, "action", diags);
        check_arg_sorts(sig, &a.name, &a.args, diags);
    }
}

fn check_arg_sorts(sig: &Signature, owner: &str, args: &[String], diags: &mut Vec<Diagnostic>) {
    for s in args {
        if !sig.sorts.contains_key(s) {
            diags.push(Diagnostic::error(
                DiagnosticKind::UnknownSort,
                Location::Signature(owner.to_string()),
                format!("`{owner}` uses undeclared sort `{s}`"),
            ));
        }
    }
}

/// Collects variable sorts from an atom whose argument sorts are `sorts`.
fn bind_atom(
    sig: &Signature,
    atom: &Atom,
    sorts: &[String],
    loc: &Location,
    vars: &mut BTreeMap<String, String>,
    diags: &mut Vec<Diagnostic>,
) {
    for (term, sort) in atom.args.iter().zip(sorts) {
        match term {
            Term::Var(v) => match vars.get(v) {
                Some(prev) if prev != sort => diags.push(Diagnostic::error(
                    DiagnosticKind::SortMismatch,
                    loc.clone(),
                    format!("variable `{v}` used both as `{prev}` and as `{sort}`"),
                )),
                Some(_) => {}
                None => {
                    vars.insert(v.clone(), sort.clone());
                }
            },
            Term::Const(c) => {
                if let Some(members) = sig.sort(sort) {
                    if !members.contains(c) {
                        diags.push(Diagnostic::error(
                            DiagnosticKind::SortMismatch,
                            loc.clone(),
                            format!("`{c}` is not an object of sort `{sort}` in `{atom}`"),
                        ));
                    }
                }
            }
        }
    }
}

fn check_fluent(
    sig: &Signature,
    atom: &Atom,
    loc: &Location,
    vars: &mut BTreeMap<String, String>,
    diags: &mut Vec<Diagnostic>,
) -> Option<bool> {
    let Some(decl) = sig.fluent(&atom.name) else {
        diags.push(Diagnostic::error(
            DiagnosticKind::UnknownSymbol,
            loc.clone(),
            format!("undeclared fluent `{}`", atom.name),
        ));
        return None;
    };
    if decl.args.len() != atom.args.len() {
        diags.push(Diagnostic::error(
            DiagnosticKind::Arity,
            loc.clone(),
            format!(
                "fluent `{}` expects {} argument(s), found {}",
                atom.name,
                decl.args.len(),
                atom.args.len()
            ),
        ));
        return None;
    }
    bind_atom(sig, atom, &decl.args, loc, vars, diags);
    Some(decl.constant)
}

fn check_action(
    sig: &Signature,
    atom: &Atom,
    loc: &Location,
    vars: &mut BTreeMap<String, String>,
    diags: &mut Vec<Diagnostic>,
) {
    let Some(decl) = sig.action(&atom.name) else {
        diags.push(Diagnostic::error(
            DiagnosticKind::UnknownSymbol,
            loc.clone(),
            format!("undeclared action `{}`", atom.name),
        ));
        return;
    };
    if decl.args.len() != atom.args.len() {
        diags.push(Diagnostic::error(
            DiagnosticKind::Arity,
            loc.clone(),
            format!(
                "action `{}` expects {} argument(s), found {}",
                atom.name,
                decl.args.len(),
                atom.args.len()
            ),
        ));
        return;
    }
    bind_atom(sig, atom, &decl.args, loc, vars, diags);
}

/// Returns `Some(is_all_constant)` for a condition; `None` if some literal
/// did not resolve.
fn check_condition(
    sig: &Signature,
    cond: &Condition,
    loc: &Location,
    vars: &mut BTreeMap<String, String>,
    diags: &mut Vec<Diagnostic>,
) -> Option<bool> {
    let mut all_constant = true;
    let mut ok = true;
    for l in &cond.literals {
        match check_fluent(sig, &l.atom, loc, vars, diags) {
            Some(c) => all_constant &= c,
            None => ok = false,
        }
    }
    let atoms: BTreeSet<(&Atom, bool)> = cond.literals.iter().map(|l| (&l.atom, l.positive)).collect();
    for l in &cond.literals {
        if l.positive && atoms.contains(&(&l.atom, false)) {
            diags.push(Diagnostic::warning(
                DiagnosticKind::ContradictoryCondition,
                loc.clone(),
                format!("condition contains both `{}` and its negation; it can never hold", l.atom),
            ));
        }
    }
    ok.then_some(all_constant)
}

fn check_disequalities(
    sig: &Signature,
    cond: &Condition,
    loc: &Location,
    vars: &BTreeMap<String, String>,
    diags: &mut Vec<Diagnostic>,
) {
    let known_constant = |c: &str| sig.sorts.values().any(|m| m.iter().any(|x| x == c));
    for (a, b) in &cond.disequalities {
        for t in [a, b] {
            match t {
                Term::Var(v) if !vars.contains_key(v) => diags.push(Diagnostic::error(
                    DiagnosticKind::UnboundVariable,
                    loc.clone(),
                    format!("variable `{v}` occurs only in a disequality"),
                )),
                Term::Const(c) if !known_constant(c) => diags.push(Diagnostic::error(
                    DiagnosticKind::UnknownSymbol,
                    loc.clone(),
                    format!("undeclared object constant `{c}`"),
                )),
                _ => {}
            }
        }
    }
}

fn validate_proposition(sig: &Signature, idx: usize, prop: &Proposition, diags: &mut Vec<Diagnostic>) {
    let loc = Location::Proposition(idx);
    let mut vars = BTreeMap::new();
    match prop {
        Proposition::Holds { literal, .. } => {
            check_fluent(sig, &literal.atom, &loc, &mut vars, diags);
            if !literal.atom.is_ground() {
                diags.push(Diagnostic::error(
                    DiagnosticKind::NonGround,
                    loc,
                    format!("observation `{}` must be ground", literal.atom),
                ));
            }
        }
        Proposition::Happens { action, .. } => {
            check_action(sig, action, &loc, &mut vars, diags);
            if !action.is_ground() {
                diags.push(Diagnostic::error(
                    DiagnosticKind::NonGround,
                    loc,
                    format!("occurrence `{action}` must be ground"),
                ));
            }
        }
        Proposition::Causes { action, fluent, condition, .. } => {
            check_action(sig, action, &loc, &mut vars, diags);
            if check_fluent(sig, fluent, &loc, &mut vars, diags) == Some(true) {
                diags.push(Diagnostic::error(
                    DiagnosticKind::ConstantEffect,
                    loc.clone(),
                    format!("constant fluent `{}` cannot be an action effect", fluent.name),
                ));
            }
            check_condition(sig, condition, &loc, &mut vars, diags);
            check_disequalities(sig, condition, &loc, &vars, diags);
        }
        Proposition::Whenever { head, condition } => {
            let head_constant = head
                .as_ref()
                .and_then(|h| check_fluent(sig, &h.atom, &loc, &mut vars, diags));
            let body_constant = check_condition(sig, condition, &loc, &mut vars, diags);
            if head_constant == Some(true) && body_constant == Some(false) {
                diags.push(Diagnostic::error(
                    DiagnosticKind::ConstantEffect,
                    loc.clone(),
                    "a constant fluent can only be derived from constant fluents".to_string(),
                ));
            }
            check_disequalities(sig, condition, &loc, &vars, diags);
        }
        Proposition::Needs { action, condition } => {
            check_action(sig, action, &loc, &mut vars, diags);
            check_condition(sig, condition, &loc, &mut vars, diags);
            check_disequalities(sig, condition, &loc, &vars, diags);
        }
    }
}

/// Variable sorts of a statement, in order of first occurrence. Assumes the
/// statement validates.
pub fn variable_sorts(sig: &Signature, prop: &Proposition) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut push = |atom: &Atom, sorts: &[String]| {
        for (t, s) in atom.args.iter().zip(sorts) {
            if let Term::Var(v) = t {
                if !out.iter().any(|(n, _)| n == v) {
                    out.push((v.clone(), s.clone()));
                }
            }
        }
    };
    if let Some(a) = prop.action_atom() {
        if let Some(d) = sig.action(&a.name) {
            push(a, &d.args);
        }
    }
    for atom in prop.fluent_atoms() {
        if let Some(d) = sig.fluent(&atom.name) {
            push(atom, &d.args);
        }
    }
    out
}
