//! Text syntax for domain (`.e`) and query (`.q`) files.
//!
//! The grammar is documented in `docs/grammar.md`. Parsing runs in two
//! passes: statements are first read into a raw form with spans, then
//! resolved against the declarations (which may appear anywhere in the
//! file) and validated.

mod lexer;
mod print;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::query::{Mode, Query};
use crate::syntax::{
    is_variable_name, validate, ActionDecl, Atom, Condition, Diagnostic, DiagnosticKind, DomainDescription,
    EffectKind, FluentDecl, FluentLiteral, Location, Proposition, Signature, Term, TimePoint,
};

pub use print::{pretty_print, print_condition, print_proposition};

use lexer::{Lexer, Tok, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    pub file: u32,
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub column: u32,
}

impl SourceSpan {
    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan { end: other.end.max(self.end), ..self }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnknownIdentifier,
    Arity,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}", line = span.line, column = span.column)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: SourceSpan, message: String) -> Self {
        ParseError { kind, span, message }
    }
}

/// A located diagnostic produced while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatedDiagnostic {
    pub diagnostic: Diagnostic,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedUnit {
    pub domain: DomainDescription,
    /// Span of each proposition, by index.
    pub spans: Vec<SourceSpan>,
    /// Non-fatal diagnostics (duplicate statements, unsatisfiable conditions).
    pub warnings: Vec<LocatedDiagnostic>,
}

#[derive(Debug, Clone)]
struct RawAtom {
    name: String,
    name_span: SourceSpan,
    args: Vec<(String, SourceSpan)>,
    span: SourceSpan,
}

#[derive(Debug, Clone)]
struct RawLit {
    positive: bool,
    atom: RawAtom,
}

#[derive(Debug, Clone)]
enum RawCondItem {
    Lit(RawLit),
    Diseq(String, String, SourceSpan),
}

#[derive(Debug, Clone)]
enum RawStmt {
    Sort { name: String, members: Vec<String> },
    Fluent { constant: bool, name: String, args: Vec<String> },
    Action { name: String, args: Vec<String> },
    Holds { lit: RawLit, time: u32 },
    Happens { action: RawAtom, time: u32 },
    Causes { action: RawAtom, kind: EffectKind, fluent: RawAtom, cond: Vec<RawCondItem> },
    Whenever { head: Option<RawLit>, cond: Vec<RawCondItem> },
    Needs { action: RawAtom, cond: Vec<RawCondItem> },
}

struct TokenStream {
    toks: Vec<Token>,
    pos: usize,
}

impl TokenStream {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::new(
            ParseErrorKind::Syntax,
            self.span(),
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, ParseError> {
        if *self.peek() == tok {
            Ok(self.next().span)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.next().span;
                Ok((s, sp))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("a time point")),
        }
    }

    fn atom(&mut self) -> Result<RawAtom, ParseError> {
        let (name, name_span) = self.ident()?;
        let mut args = Vec::new();
        let mut span = name_span;
        if *self.peek() == Tok::LParen {
            self.next();
            if *self.peek() != Tok::RParen {
                loop {
                    args.push(self.ident()?);
                    if *self.peek() == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
            span = span.join(self.expect(Tok::RParen)?);
        }
        Ok(RawAtom { name, name_span, args, span })
    }

    fn literal(&mut self) -> Result<RawLit, ParseError> {
        let positive = if *self.peek() == Tok::Neg {
            self.next();
            false
        } else {
            true
        };
        Ok(RawLit { positive, atom: self.atom()? })
    }

    fn condition(&mut self) -> Result<Vec<RawCondItem>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        if *self.peek() != Tok::RBrace {
            loop {
                if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::NotEq {
                    let (a, sa) = self.ident()?;
                    self.next();
                    let (b, sb) = self.ident()?;
                    items.push(RawCondItem::Diseq(a, b, sa.join(sb)));
                } else {
                    items.push(RawCondItem::Lit(self.literal()?));
                }
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(items)
    }

    fn sort_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::LParen {
            self.next();
            if *self.peek() != Tok::RParen {
                loop {
                    out.push(self.ident()?.0);
                    if *self.peek() == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<RawStmt, ParseError> {
        // Declarations are recognised by a leading keyword followed by a name.
        let next_is_name = matches!(self.peek_at(1), Tok::Ident(_));
        if self.is_keyword("sort") && next_is_name {
            self.next();
            let (name, _) = self.ident()?;
            self.expect(Tok::Colon)?;
            let mut members = vec![self.ident()?.0];
            while *self.peek() == Tok::Comma {
                self.next();
                members.push(self.ident()?.0);
            }
            return Ok(RawStmt::Sort { name, members });
        }
        if self.is_keyword("constant") && *self.peek_at(1) == Tok::Ident("fluent".into()) {
            self.next();
            self.next();
            let (name, _) = self.ident()?;
            let args = self.sort_list()?;
            return Ok(RawStmt::Fluent { constant: true, name, args });
        }
        if self.is_keyword("fluent") && next_is_name {
            self.next();
            let (name, _) = self.ident()?;
            let args = self.sort_list()?;
            return Ok(RawStmt::Fluent { constant: false, name, args });
        }
        if self.is_keyword("action") && next_is_name {
            self.next();
            let (name, _) = self.ident()?;
            let args = self.sort_list()?;
            return Ok(RawStmt::Action { name, args });
        }
        if self.is_keyword("false") && self.peek_at(1) == &Tok::Ident("whenever".into()) {
            self.next();
            self.next();
            let cond = self.condition()?;
            return Ok(RawStmt::Whenever { head: None, cond });
        }
        let lit = self.literal()?;
        match self.peek().clone() {
            Tok::HoldsAt => {
                self.next();
                let time = self.number()?;
                Ok(RawStmt::Holds { lit, time })
            }
            Tok::HappensAt => {
                let action = self.positive(lit, "an action")?;
                self.next();
                let time = self.number()?;
                Ok(RawStmt::Happens { action, time })
            }
            Tok::Ident(kw) if kw == "whenever" => {
                self.next();
                let cond = self.condition()?;
                Ok(RawStmt::Whenever { head: Some(lit), cond })
            }
            Tok::Ident(kw) if kw == "initiates" || kw == "terminates" => {
                let action = self.positive(lit, "an action")?;
                self.next();
                let kind = if kw == "initiates" { EffectKind::Initiates } else { EffectKind::Terminates };
                let fluent = self.atom()?;
                let cond = if self.is_keyword("when") {
                    self.next();
                    self.condition()?
                } else {
                    Vec::new()
                };
                Ok(RawStmt::Causes { action, kind, fluent, cond })
            }
            Tok::Ident(kw) if kw == "needs" => {
                let action = self.positive(lit, "an action")?;
                self.next();
                let cond = self.condition()?;
                Ok(RawStmt::Needs { action, cond })
            }
            _ => Err(self.unexpected("`holds-at`, `happens-at`, `initiates`, `terminates`, `whenever` or `needs`")),
        }
    }

    fn positive(&self, lit: RawLit, what: &str) -> Result<RawAtom, ParseError> {
        if lit.positive {
            Ok(lit.atom)
        } else {
            Err(ParseError::new(
                ParseErrorKind::Syntax,
                lit.atom.span,
                format!("expected {what}, found a negated literal"),
            ))
        }
    }
}

fn tokenize(text: &str, file: u32) -> Result<TokenStream, ParseError> {
    Ok(TokenStream { toks: Lexer::new(text, file).tokenize()?, pos: 0 })
}

/// Accumulates one or more source texts into a single domain.
#[derive(Debug, Default)]
pub struct DomainParser {
    stmts: Vec<(RawStmt, SourceSpan)>,
}

impl DomainParser {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads the statements of one source text; `file` tags its spans.
    pub fn add_source(&mut self, text: &str, file: u32) -> Result<&mut Self, ParseError> {
        let mut ts = tokenize(text, file)?;
        while *ts.peek() != Tok::Eof {
            let start = ts.span();
            let stmt = ts.statement()?;
            ts.expect(Tok::Dot)?;
            self.stmts.push((stmt, start.join(ts.prev_span())));
        }
        Ok(self)
    }

    pub fn finish(self) -> Result<ParsedUnit, ParseError> {
        let mut sig = Signature::default();
        let mut decl_spans: BTreeMap<String, SourceSpan> = BTreeMap::new();
        for (stmt, span) in &self.stmts {
            match stmt {
                RawStmt::Sort { name, members } => {
                    if sig.sorts.contains_key(name) {
                        return Err(ParseError::new(
                            ParseErrorKind::Invalid,
                            *span,
                            format!("sort `{name}` is declared twice"),
                        ));
                    }
                    sig.sorts.insert(name.clone(), members.clone());
                }
                RawStmt::Fluent { constant, name, args } => {
                    sig.fluents.push(FluentDecl { name: name.clone(), args: args.clone(), constant: *constant })
                }
                RawStmt::Action { name, args } => {
                    sig.actions.push(ActionDecl { name: name.clone(), args: args.clone() })
                }
                _ => continue,
            }
            let name = match stmt {
                RawStmt::Sort { name, .. } | RawStmt::Fluent { name, .. } | RawStmt::Action { name, .. } => name,
                _ => unreachable!(),
            };
            decl_spans.entry(name.clone()).or_insert(*span);
        }

        let resolver = Resolver { sig: &sig };
        let mut props = Vec::new();
        let mut spans = Vec::new();
        let mut typing = Vec::new();
        for (stmt, span) in &self.stmts {
            let mut typed = Vec::new();
            let prop = match stmt {
                RawStmt::Sort { .. } | RawStmt::Fluent { .. } | RawStmt::Action { .. } => continue,
                RawStmt::Holds { lit, time } => Proposition::Holds {
                    literal: resolver.literal(lit)?,
                    time: TimePoint(*time),
                },
                RawStmt::Happens { action, time } => Proposition::Happens {
                    action: resolver.action(action)?,
                    time: TimePoint(*time),
                },
                RawStmt::Causes { action, kind, fluent, cond } => Proposition::Causes {
                    action: resolver.action(action)?,
                    kind: *kind,
                    fluent: resolver.fluent(fluent)?,
                    condition: resolver.condition(cond, &mut typed)?,
                },
                RawStmt::Whenever { head, cond } => Proposition::Whenever {
                    head: head.as_ref().map(|h| resolver.literal(h)).transpose()?,
                    condition: resolver.condition(cond, &mut typed)?,
                },
                RawStmt::Needs { action, cond } => Proposition::Needs {
                    action: resolver.action(action)?,
                    condition: resolver.condition(cond, &mut typed)?,
                },
            };
            props.push(prop);
            spans.push(*span);
            typing.push(typed);
        }

        let domain = DomainDescription::new(sig, props);
        let locate = |loc: &Location| match loc {
            Location::Proposition(i) => spans[*i],
            Location::Signature(name) => decl_spans.get(name).copied().unwrap_or_default(),
        };
        let diags = validate(&domain);
        let first_error = diags.iter().filter(|d| d.is_error()).min_by_key(|d| locate(&d.location).start);
        if let Some(d) = first_error {
            let kind = match d.kind {
                DiagnosticKind::Arity => ParseErrorKind::Arity,
                DiagnosticKind::UnknownSymbol | DiagnosticKind::UnknownSort => ParseErrorKind::UnknownIdentifier,
                _ => ParseErrorKind::Invalid,
            };
            return Err(ParseError::new(kind, locate(&d.location), d.message.clone()));
        }
        // Inline typing atoms must agree with the sorts inferred from the
        // declarations.
        for (i, typed) in typing.iter().enumerate() {
            let inferred = crate::syntax::variable_sorts(&domain.signature, &domain.propositions[i]);
            for (var, sort, span) in typed {
                match inferred.iter().find(|(v, _)| v == var) {
                    Some((_, s)) if s == sort => {}
                    Some((_, s)) => {
                        return Err(ParseError::new(
                            ParseErrorKind::Invalid,
                            *span,
                            format!("typing atom says `{var}` is a `{sort}` but it is used as a `{s}`"),
                        ))
                    }
                    None => {
                        return Err(ParseError::new(
                            ParseErrorKind::Invalid,
                            *span,
                            format!("variable `{var}` occurs only in a typing atom"),
                        ))
                    }
                }
            }
        }
        let warnings = diags
            .into_iter()
            .map(|d| {
                let span = locate(&d.location);
                LocatedDiagnostic { diagnostic: d, span }
            })
            .collect();
        Ok(ParsedUnit { domain, spans, warnings })
    }
}

struct Resolver<'a> {
    sig: &'a Signature,
}

impl Resolver<'_> {
    fn terms(&self, atom: &RawAtom) -> Vec<Term> {
        atom.args
            .iter()
            .map(|(a, _)| if is_variable_name(a) { Term::Var(a.clone()) } else { Term::Const(a.clone()) })
            .collect()
    }

    fn check_arity(&self, atom: &RawAtom, expected: usize, what: &str) -> Result<(), ParseError> {
        if atom.args.len() != expected {
            return Err(ParseError::new(
                ParseErrorKind::Arity,
                atom.span,
                format!("{what} `{}` expects {expected} argument(s), found {}", atom.name, atom.args.len()),
            ));
        }
        self.check_constants(atom)
    }

    fn check_constants(&self, atom: &RawAtom) -> Result<(), ParseError> {
        for (a, sp) in &atom.args {
            if !is_variable_name(a) && !self.sig.sorts.values().any(|m| m.contains(a)) {
                return Err(ParseError::new(
                    ParseErrorKind::UnknownIdentifier,
                    *sp,
                    format!("undeclared object constant `{a}`"),
                ));
            }
        }
        Ok(())
    }

    fn fluent(&self, atom: &RawAtom) -> Result<Atom, ParseError> {
        let Some(decl) = self.sig.fluent(&atom.name) else {
            return Err(ParseError::new(
                ParseErrorKind::UnknownIdentifier,
                atom.name_span,
                format!("undeclared fluent `{}`", atom.name),
            ));
        };
        self.check_arity(atom, decl.args.len(), "fluent")?;
        Ok(Atom::new(atom.name.clone(), self.terms(atom)))
    }

    fn action(&self, atom: &RawAtom) -> Result<Atom, ParseError> {
        let Some(decl) = self.sig.action(&atom.name) else {
            return Err(ParseError::new(
                ParseErrorKind::UnknownIdentifier,
                atom.name_span,
                format!("undeclared action `{}`", atom.name),
            ));
        };
        self.check_arity(atom, decl.args.len(), "action")?;
        Ok(Atom::new(atom.name.clone(), self.terms(atom)))
    }

    fn literal(&self, lit: &RawLit) -> Result<FluentLiteral, ParseError> {
        Ok(FluentLiteral { atom: self.fluent(&lit.atom)?, positive: lit.positive })
    }

    fn condition(
        &self,
        items: &[RawCondItem],
        typed: &mut Vec<(String, String, SourceSpan)>,
    ) -> Result<Condition, ParseError> {
        let mut lits = Vec::new();
        let mut diseqs = Vec::new();
        for item in items {
            match item {
                RawCondItem::Lit(l) => {
                    let is_typing = l.positive
                        && self.sig.fluent(&l.atom.name).is_none()
                        && self.sig.sorts.contains_key(&l.atom.name)
                        && l.atom.args.len() == 1;
                    if is_typing {
                        let (arg, sp) = &l.atom.args[0];
                        if is_variable_name(arg) {
                            typed.push((arg.clone(), l.atom.name.clone(), *sp));
                        } else if !self.sig.sorts[&l.atom.name].contains(arg) {
                            return Err(ParseError::new(
                                ParseErrorKind::Invalid,
                                l.atom.span,
                                format!("`{arg}` is not an object of sort `{}`", l.atom.name),
                            ));
                        }
                    } else {
                        lits.push(self.literal(l)?);
                    }
                }
                RawCondItem::Diseq(a, b, sp) => {
                    let term = |s: &String| {
                        if is_variable_name(s) {
                            Term::Var(s.clone())
                        } else {
                            Term::Const(s.clone())
                        }
                    };
                    for s in [a, b] {
                        if !is_variable_name(s) && !self.sig.sorts.values().any(|m| m.contains(s)) {
                            return Err(ParseError::new(
                                ParseErrorKind::UnknownIdentifier,
                                *sp,
                                format!("undeclared object constant `{s}`"),
                            ));
                        }
                    }
                    diseqs.push((term(a), term(b)));
                }
            }
        }
        Ok(Condition::new(lits, diseqs))
    }
}

/// Parses a complete domain file.
pub fn parse_domain(text: &str) -> Result<ParsedUnit, ParseError> {
    let mut p = DomainParser::new();
    p.add_source(text, 0)?;
    p.finish()
}

/// Parses several sources (e.g. a domain and a scenario) as one domain.
pub fn parse_domain_sources(texts: &[&str]) -> Result<ParsedUnit, ParseError> {
    let mut p = DomainParser::new();
    for (i, t) in texts.iter().enumerate() {
        p.add_source(t, i as u32)?;
    }
    p.finish()
}

fn ground_literal(sig: &Signature, lit: &RawLit) -> Result<FluentLiteral, ParseError> {
    let l = Resolver { sig }.literal(lit)?;
    if let Some((a, sp)) = lit.atom.args.iter().find(|(a, _)| is_variable_name(a)) {
        return Err(ParseError::new(
            ParseErrorKind::Invalid,
            *sp,
            format!("query literals must be ground, found variable `{a}`"),
        ));
    }
    let probe = Proposition::Holds { literal: l.clone(), time: TimePoint(0) };
    let dom = DomainDescription::new(sig.clone(), vec![probe]);
    if let Some(d) = validate(&dom).into_iter().find(|d| d.is_error()) {
        return Err(ParseError::new(ParseErrorKind::Invalid, lit.atom.span, d.message));
    }
    Ok(l)
}

fn goal_list(ts: &mut TokenStream, sig: &Signature, close: Option<Tok>) -> Result<Vec<(FluentLiteral, TimePoint)>, ParseError> {
    let mut goals = Vec::new();
    let at_end = |ts: &TokenStream| match &close {
        Some(t) => ts.peek() == t,
        None => *ts.peek() == Tok::Eof,
    };
    if at_end(ts) {
        return Ok(goals);
    }
    loop {
        let lit = ts.literal()?;
        ts.expect(Tok::HoldsAt)?;
        let time = ts.number()?;
        goals.push((ground_literal(sig, &lit)?, TimePoint(time)));
        if *ts.peek() == Tok::Comma {
            ts.next();
        } else {
            break;
        }
    }
    Ok(goals)
}

/// Parses a query: `credulous|skeptical { L holds-at T, ... } [horizon N] [.]`
pub fn parse_query(text: &str, sig: &Signature) -> Result<Query, ParseError> {
    let mut ts = tokenize(text, 0)?;
    let mode = match ts.peek() {
        Tok::Ident(s) if s == "credulous" => Mode::Credulous,
        Tok::Ident(s) if s == "skeptical" => Mode::Skeptical,
        _ => return Err(ts.unexpected("`credulous` or `skeptical`")),
    };
    ts.next();
    ts.expect(Tok::LBrace)?;
    let goals = goal_list(&mut ts, sig, Some(Tok::RBrace))?;
    ts.expect(Tok::RBrace)?;
    let mut horizon = None;
    if ts.is_keyword("horizon") {
        ts.next();
        horizon = Some(TimePoint(ts.number()?));
    }
    if *ts.peek() == Tok::Dot {
        ts.next();
    }
    if *ts.peek() != Tok::Eof {
        return Err(ts.unexpected("end of query"));
    }
    let q = Query { mode, goals, horizon };
    if let (Some(h), Some(late)) = (horizon, q.goals.iter().map(|g| g.1).max()) {
        if late > h {
            return Err(ParseError::new(
                ParseErrorKind::Invalid,
                SourceSpan { end: text.len(), ..Default::default() },
                format!("goal at time {late} lies beyond horizon {h}"),
            ));
        }
    }
    Ok(q)
}

/// Parses a bare comma-separated goal list such as `Light holds-at 4`.
pub fn parse_goals(text: &str, sig: &Signature) -> Result<Vec<(FluentLiteral, TimePoint)>, ParseError> {
    let mut ts = tokenize(text, 0)?;
    let goals = goal_list(&mut ts, sig, None)?;
    if *ts.peek() == Tok::Dot {
        ts.next();
    }
    if *ts.peek() != Tok::Eof {
        return Err(ts.unexpected("end of goal list"));
    }
    Ok(goals)
}

#[cfg(test)]
mod tests;
