//! Upper bounds on part multiplicities, and congruence filters on parts.
//!
//! Bounds are inclusive: `Bound::Finite(c)` admits a part at most `c` times,
//! and `Finite(0)` forbids it. Rules written in the strict convention
//! ("multiplicity less than s") convert through [`Bound::from_strict`].
//!
//! The text form used by the CLI is a comma-separated list of clauses:
//!
//! | clause          | meaning                                          |
//! |-----------------|--------------------------------------------------|
//! | `all:3`         | every part at most 3 times                       |
//! | `odd:inf`       | odd parts unbounded                              |
//! | `even:1`        | even parts at most once                          |
//! | `5:2`           | part 5 at most twice                             |
//! | `default:inf`   | fallback for parts not otherwise covered         |
//! | `phi:2*i+1`     | part `i` at most `2i+1` times                    |
//!
//! A trailing `s` on a numeric value marks a strict bound (`all:4s` is
//! `all:3`). Lookup order is: explicit part, parity, `phi`, then
//! `all`/`default`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Inclusive multiplicity cap for one part size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(u32),
    Unbounded,
}

impl Bound {
    /// Converts a strict bound `s` (multiplicity `< s`) to the inclusive cap `s - 1`.
    /// A strict bound of 0 admits nothing, which is represented as `Finite(0)`
    /// as well; callers that need to reject it do so themselves.
    pub fn from_strict(s: u32) -> Bound {
        Bound::Finite(s.saturating_sub(1))
    }

    pub fn allows(self, multiplicity: u32) -> bool {
        match self {
            Bound::Finite(c) => multiplicity <= c,
            Bound::Unbounded => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(c) => Some(c),
            Bound::Unbounded => None,
        }
    }

    /// Largest multiplicity usable when `budget` copies would fit.
    pub fn cap(self, budget: u32) -> u32 {
        match self {
            Bound::Finite(c) => c.min(budget),
            Bound::Unbounded => budget,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(c) => write!(f, "{c}"),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

/// Integer arithmetic expression in the part size `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var,
    Const(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Floor division; division by zero evaluates to 0.
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, i: i64) -> i64 {
        match self {
            Expr::Var => i,
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.eval(i).saturating_add(b.eval(i)),
            Expr::Sub(a, b) => a.eval(i).saturating_sub(b.eval(i)),
            Expr::Mul(a, b) => a.eval(i).saturating_mul(b.eval(i)),
            Expr::Div(a, b) => {
                let d = b.eval(i);
                if d == 0 {
                    0
                } else {
                    a.eval(i).div_euclid(d)
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var => f.write_str("i"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

impl FromStr for Expr {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = ExprParser {
            tokens: &tokens,
            pos: 0,
        };
        let e = parser.sum()?;
        if parser.pos != tokens.len() {
            return Err(format!("unexpected {:?}", tokens[parser.pos]));
        }
        Ok(e)
    }
}

struct ExprParser<'a> {
    tokens: &'a [char],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn sum(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.atom()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.atom()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> std::result::Result<Expr, String> {
        match self.peek() {
            Some('i') => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text: String = self.tokens[start..self.pos].iter().collect();
                text.parse().map(Expr::Const).map_err(|e| e.to_string())
            }
            Some(c) => Err(format!("unexpected {c:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

#[derive(Clone)]
enum BoundFn {
    Expr(Expr),
    Native(Arc<dyn Fn(u32) -> Bound + Send + Sync>, String),
}

impl fmt::Debug for BoundFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFn::Expr(e) => write!(f, "Expr({e})"),
            BoundFn::Native(_, label) => write!(f, "Native({label})"),
        }
    }
}

/// Per-part inclusive multiplicity caps.
#[derive(Debug, Clone)]
pub struct BoundSequence {
    default: Bound,
    odd: Option<Bound>,
    even: Option<Bound>,
    parts: BTreeMap<u32, Bound>,
    func: Option<BoundFn>,
}

impl BoundSequence {
    pub fn unbounded() -> Self {
        Self::constant(Bound::Unbounded)
    }

    pub fn constant(bound: Bound) -> Self {
        Self {
            default: bound,
            odd: None,
            even: None,
            parts: BTreeMap::new(),
            func: None,
        }
    }

    /// Even parts capped at `even`, odd parts unbounded.
    pub fn evens_only(even: Bound) -> Self {
        Self::odds_evens(Bound::Unbounded, even)
    }

    pub fn odds_evens(odd: Bound, even: Bound) -> Self {
        Self {
            odd: Some(odd),
            even: Some(even),
            ..Self::unbounded()
        }
    }

    pub fn explicit<I>(parts: I, default: Bound) -> Self
    where
        I: IntoIterator<Item = (u32, Bound)>,
    {
        Self {
            parts: parts.into_iter().collect(),
            ..Self::constant(default)
        }
    }

    /// Part `i` at most `expr(i)` times; negative values forbid the part.
    pub fn function(expr: Expr) -> Self {
        Self {
            func: Some(BoundFn::Expr(expr)),
            ..Self::unbounded()
        }
    }

    /// Rule backed by an arbitrary closure; `label` is used for display.
    pub fn from_fn<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(u32) -> Bound + Send + Sync + 'static,
    {
        Self {
            func: Some(BoundFn::Native(Arc::new(f), label.into())),
            ..Self::unbounded()
        }
    }

    /// Overrides the cap for one part size.
    pub fn with_part(mut self, part: u32, bound: Bound) -> Self {
        self.parts.insert(part, bound);
        self
    }

    pub fn bound(&self, part: u32) -> Bound {
        if let Some(&b) = self.parts.get(&part) {
            return b;
        }
        let parity = if part % 2 == 1 { self.odd } else { self.even };
        if let Some(b) = parity {
            return b;
        }
        match &self.func {
            Some(BoundFn::Expr(e)) => {
                Bound::Finite(e.eval(i64::from(part)).clamp(0, i64::from(u32::MAX)) as u32)
            }
            Some(BoundFn::Native(f, _)) => f(part),
            None => self.default,
        }
    }

    /// Part sizes up to `cutoff` with a finite cap, paired with that cap.
    pub fn support(&self, cutoff: u32) -> Vec<(u32, u32)> {
        (1..=cutoff)
            .filter_map(|i| self.bound(i).finite().map(|c| (i, c)))
            .collect()
    }

    pub fn admits(&self, p: &Partition) -> bool {
        self.first_violation(p).is_none()
    }

    /// First `(part, multiplicity, cap)` exceeding its cap, largest part first.
    pub fn first_violation(&self, p: &Partition) -> Option<(u32, u32, u32)> {
        p.multiplicities()
            .into_iter()
            .find_map(|(part, m)| match self.bound(part) {
                Bound::Finite(c) if m > c => Some((part, m, c)),
                _ => None,
            })
    }

    pub fn check(&self, p: &Partition) -> Result<()> {
        match self.first_violation(p) {
            Some((part, multiplicity, bound)) => Err(Error::BoundViolation {
                part,
                multiplicity,
                bound,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for BoundSequence {
    /// Canonical clause list in the DSL.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut clauses = Vec::new();
        match &self.func {
            Some(BoundFn::Expr(e)) => clauses.push(format!("phi:{e}")),
            Some(BoundFn::Native(_, label)) => clauses.push(format!("fn:{label}")),
            None => clauses.push(format!("all:{}", self.default)),
        }
        if let Some(b) = self.odd {
            clauses.push(format!("odd:{b}"));
        }
        if let Some(b) = self.even {
            clauses.push(format!("even:{b}"));
        }
        for (part, b) in &self.parts {
            clauses.push(format!("{part}:{b}"));
        }
        f.write_str(&clauses.join(","))
    }
}

fn parse_bound_value(v: &str) -> std::result::Result<Bound, String> {
    let v = v.trim();
    if v == "inf" || v == "∞" {
        return Ok(Bound::Unbounded);
    }
    if let Some(strict) = v.strip_suffix('s') {
        let s: u32 = strict
            .parse()
            .map_err(|_| format!("bad strict bound {v:?}"))?;
        if s == 0 {
            return Err("strict bound 0 admits no partition at all".into());
        }
        return Ok(Bound::from_strict(s));
    }
    v.parse()
        .map(Bound::Finite)
        .map_err(|_| format!("bad bound {v:?}"))
}

impl FromStr for BoundSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: String| Error::BoundSyntax {
            input: s.to_string(),
            reason,
        };
        let mut seq = BoundSequence::unbounded();
        if s.trim().is_empty() {
            return Ok(seq);
        }
        for clause in s.split(',') {
            let (key, value) = clause
                .split_once(':')
                .ok_or_else(|| syntax(format!("clause {clause:?} has no ':'")))?;
            let key = key.trim();
            if key == "phi" {
                let e: Expr = value.parse().map_err(syntax)?;
                seq.func = Some(BoundFn::Expr(e));
                continue;
            }
            let bound = parse_bound_value(value).map_err(syntax)?;
            match key {
                "all" | "default" => seq.default = bound,
                "odd" => seq.odd = Some(bound),
                "even" => seq.even = Some(bound),
                other => {
                    let part: u32 = other
                        .parse()
                        .ok()
                        .filter(|&p| p > 0)
                        .ok_or_else(|| syntax(format!("unknown key {other:?}")))?;
                    seq.parts.insert(part, bound);
                }
            }
        }
        Ok(seq)
    }
}

/// Restriction of parts to one residue class, with the optional side
/// conditions used by the generalized four-parameter identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceFilter {
    modulus: u32,
    residue: u32,
    /// Only partitions of even length.
    pub even_length: bool,
    /// The part equal to the residue appears at most once.
    pub residue_part_once: bool,
}

impl CongruenceFilter {
    pub fn new(modulus: u32, residue: u32) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::BadResidue { residue, modulus });
        }
        Ok(Self {
            modulus,
            residue,
            even_length: false,
            residue_part_once: false,
        })
    }

    /// The side conditions that apply when the residue is nonzero.
    pub fn with_corrections(mut self) -> Self {
        if self.residue != 0 {
            self.even_length = true;
            self.residue_part_once = true;
        }
        self
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn allows_part(&self, part: u32) -> bool {
        part % self.modulus == self.residue
    }

    /// Conditions that can only be checked on a complete partition.
    pub fn accepts_complete(&self, p: &Partition) -> bool {
        if self.even_length && p.len() % 2 == 1 {
            return false;
        }
        if self.residue_part_once && self.residue > 0 && p.multiplicity(self.residue) > 1 {
            return false;
        }
        true
    }

    pub fn accepts(&self, p: &Partition) -> bool {
        p.parts().iter().all(|&x| self.allows_part(x)) && self.accepts_complete(p)
    }
}

impl fmt::Display for CongruenceFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod:{},res:{}", self.modulus, self.residue)?;
        if self.even_length {
            f.write_str(",even-length")?;
        }
        if self.residue_part_once {
            f.write_str(",first-once")?;
        }
        Ok(())
    }
}

impl FromStr for CongruenceFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: String| Error::FilterSyntax {
            input: s.to_string(),
            reason,
        };
        let (mut modulus, mut residue) = (None, None);
        let (mut even_length, mut once) = (false, false);
        for clause in s.split(',').map(str::trim) {
            match clause.split_once(':') {
                Some(("mod", v)) => {
                    modulus = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| syntax(format!("bad modulus {v:?}")))?,
                    )
                }
                Some(("res", v)) => {
                    residue = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| syntax(format!("bad residue {v:?}")))?,
                    )
                }
                None if clause == "even-length" => even_length = true,
                None if clause == "first-once" => once = true,
                _ => return Err(syntax(format!("unknown clause {clause:?}"))),
            }
        }
        let modulus = modulus.ok_or_else(|| syntax("missing mod:".into()))?;
        let mut filter = CongruenceFilter::new(modulus, residue.unwrap_or(0))?;
        filter.even_length = even_length;
        filter.residue_part_once = once;
        Ok(filter)
    }
}
