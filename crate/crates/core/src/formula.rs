//! Signatures, formulas over Σ = {∧, ∨, →, ¬, ∘}, the text grammar, schema
//! matching and subformula closure.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An operator symbol with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSym {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("operator {0:?} declared twice")]
    Duplicate(String),
}

/// Ordered list of operator symbols. Multialgebra tables are indexed by the
/// position of an operator in this list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<OpSym>", into = "Vec<OpSym>")]
pub struct Signature {
    ops: Vec<OpSym>,
}

impl Signature {
    pub fn new(ops: Vec<OpSym>) -> Result<Self, SignatureError> {
        let mut seen = HashSet::new();
        for op in &ops {
            if !seen.insert(op.name.as_str()) {
                return Err(SignatureError::Duplicate(op.name.clone()));
            }
        }
        Ok(Signature { ops })
    }

    /// Σ = {∧, ∨, → (binary), ¬, ∘ (unary)}, in that order.
    pub fn sigma() -> Self {
        let op = |name: &str, arity| OpSym {
            name: name.into(),
            arity,
        };
        Signature {
            ops: vec![
                op("and", 2),
                op("or", 2),
                op("imp", 2),
                op("neg", 1),
                op("con", 1),
            ],
        }
    }

    /// Σ_BA: the positive connectives plus the constants 0 and 1.
    pub fn boolean() -> Self {
        let op = |name: &str, arity| OpSym {
            name: name.into(),
            arity,
        };
        Signature {
            ops: vec![
                op("and", 2),
                op("or", 2),
                op("imp", 2),
                op("zero", 0),
                op("one", 0),
            ],
        }
    }

    pub fn ops(&self) -> &[OpSym] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }
}

impl TryFrom<Vec<OpSym>> for Signature {
    type Error = SignatureError;
    fn try_from(ops: Vec<OpSym>) -> Result<Self, Self::Error> {
        Signature::new(ops)
    }
}

impl From<Signature> for Vec<OpSym> {
    fn from(s: Signature) -> Self {
        s.ops
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnOp {
    Neg,
    Con,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    And,
    Or,
    Imp,
}

impl UnOp {
    /// Position in [`Signature::sigma`].
    pub fn index(self) -> usize {
        match self {
            UnOp::Neg => 3,
            UnOp::Con => 4,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            UnOp::Neg => "~",
            UnOp::Con => "@",
        }
    }
}

impl BinOp {
    /// Position in [`Signature::sigma`].
    pub fn index(self) -> usize {
        match self {
            BinOp::And => 0,
            BinOp::Or => 1,
            BinOp::Imp => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "->",
        }
    }

    fn prec(self) -> u8 {
        match self {
            BinOp::Imp => 1,
            BinOp::Or => 2,
            BinOp::And => 3,
        }
    }
}

/// Formula tree. Subtrees are shared, so cloning is cheap.
///
/// Variables starting with an uppercase letter are schema metavariables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    Unary(UnOp, Arc<Formula>),
    Binary(BinOp, Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Unary(UnOp::Neg, Arc::new(a))
    }

    pub fn con(a: Formula) -> Formula {
        Formula::Unary(UnOp::Con, Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::And, Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::Or, Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Binary(BinOp::Imp, Arc::new(a), Arc::new(b))
    }

    /// `a ↔ b`, stored as `(a → b) ∧ (b → a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        Parser::new(text).parse_all()
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) => vec![],
            Formula::Unary(_, a) => vec![a],
            Formula::Binary(_, a, b) => vec![a, b],
        }
    }

    /// Position of the main connective in [`Signature::sigma`].
    pub fn op_index(&self) -> Option<usize> {
        match self {
            Formula::Var(_) => None,
            Formula::Unary(op, _) => Some(op.index()),
            Formula::Binary(op, _, _) => Some(op.index()),
        }
    }

    pub fn is_metavariable(&self) -> bool {
        matches!(self, Formula::Var(n) if n.starts_with(|c: char| c.is_ascii_uppercase()))
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<Arc<str>> {
        let mut out: Vec<Arc<str>> = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Formula::Var(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Formula::Unary(_, a) => a.collect_vars(out),
            Formula::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Replace variables by formulas; unmapped variables stay as they are.
    pub fn substitute(&self, sub: &Substitution) -> Formula {
        match self {
            Formula::Var(n) => sub.get(n.as_ref()).cloned().unwrap_or_else(|| self.clone()),
            Formula::Unary(op, a) => Formula::Unary(*op, Arc::new(a.substitute(sub))),
            Formula::Binary(op, a, b) => Formula::Binary(
                *op,
                Arc::new(a.substitute(sub)),
                Arc::new(b.substitute(sub)),
            ),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Var(_) | Formula::Unary(..) => 4,
            Formula::Binary(op, ..) => op.prec(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, x: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        }
        match self {
            Formula::Var(n) => write!(f, "{n}"),
            Formula::Unary(op, a) => {
                f.write_str(op.symbol())?;
                wrap(f, a, matches!(**a, Formula::Binary(..)))
            }
            Formula::Binary(op, a, b) => {
                let p = op.prec();
                // & and | associate to the left, -> to the right
                let (lp, rp) = if *op == BinOp::Imp {
                    (a.prec() <= p, b.prec() < p)
                } else {
                    (a.prec() < p, b.prec() <= p)
                };
                wrap(f, a, lp)?;
                write!(f, " {} ", op.symbol())?;
                wrap(f, b, rp)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown operator symbol {symbol:?} at byte {offset}")]
    UnknownSymbol { offset: usize, symbol: String },
    #[error("unexpected {found} at byte {offset}, expected {expected}")]
    Unexpected {
        offset: usize,
        found: String,
        expected: &'static str,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnknownSymbol { offset, .. } | ParseError::Unexpected { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Neg,
    Con,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Ident(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::End => f.write_str("end of input"),
            t => {
                let s = match t {
                    Tok::Neg => "~",
                    Tok::Con => "@",
                    Tok::And => "&",
                    Tok::Or => "|",
                    Tok::Imp => "->",
                    Tok::Iff => "<->",
                    Tok::LParen => "(",
                    _ => ")",
                };
                write!(f, "{s:?}")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(usize, Tok)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            peeked: None,
        }
    }

    fn lex(&mut self) -> Result<(usize, Tok), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((start, Tok::End));
        };
        let (tok, len) = match c {
            '~' => (Tok::Neg, 1),
            '@' => (Tok::Con, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if rest.starts_with("->") => (Tok::Imp, 2),
            '<' if rest.starts_with("<->") => (Tok::Iff, 3),
            c if c.is_ascii_alphabetic() => {
                let len = rest
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .unwrap_or(rest.len());
                let ident = &rest[..len];
                // object variables are lowercase-only, metavariables start uppercase
                if c.is_ascii_lowercase() && ident.chars().any(|ch| ch.is_ascii_uppercase()) {
                    return Err(ParseError::Unexpected {
                        offset: start,
                        found: format!("identifier {ident:?}"),
                        expected: "a variable matching [a-z][a-z0-9_]*",
                    });
                }
                (Tok::Ident(ident.to_string()), len)
            }
            c => {
                let len = rest
                    .find(|ch: char| {
                        ch.is_whitespace() || ch.is_ascii_alphanumeric() || "()".contains(ch)
                    })
                    .unwrap_or(rest.len())
                    .max(c.len_utf8());
                return Err(ParseError::UnknownSymbol {
                    offset: start,
                    symbol: rest[..len].to_string(),
                });
            }
        };
        self.pos += len;
        Ok((start, tok))
    }

    fn peek(&mut self) -> Result<&(usize, Tok), ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    fn eat(&mut self, t: Tok) -> Result<bool, ParseError> {
        if self.peek()?.1 == t {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn parse_all(&mut self) -> Result<Formula, ParseError> {
        let f = self.iff()?;
        let (offset, tok) = self.next()?;
        if tok != Tok::End {
            return Err(ParseError::Unexpected {
                offset,
                found: tok.to_string(),
                expected: "an operator or end of input",
            });
        }
        Ok(f)
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(Tok::Iff)? {
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(Tok::Imp)? {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(Tok::Or)? {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(Tok::And)? {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let (offset, tok) = self.next()?;
        match tok {
            Tok::Neg => Ok(Formula::neg(self.unary()?)),
            Tok::Con => Ok(Formula::con(self.unary()?)),
            Tok::Ident(name) => Ok(Formula::var(&name)),
            Tok::LParen => {
                let inner = self.iff()?;
                let (offset, tok) = self.next()?;
                if tok != Tok::RParen {
                    return Err(ParseError::Unexpected {
                        offset,
                        found: tok.to_string(),
                        expected: "\")\"",
                    });
                }
                Ok(inner)
            }
            tok => Err(ParseError::Unexpected {
                offset,
                found: tok.to_string(),
                expected: "a formula",
            }),
        }
    }
}

/// Metavariable (or variable) name to formula.
pub type Substitution = BTreeMap<String, Formula>;

/// A formula read as a schema: its metavariables range over all formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Schema(pub Formula);

impl Schema {
    pub fn parse(text: &str) -> Result<Schema, ParseError> {
        Formula::parse(text).map(Schema)
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn metavariables(&self) -> Vec<Arc<str>> {
        self.0
            .variables()
            .into_iter()
            .filter(|v| v.starts_with(|c: char| c.is_ascii_uppercase()))
            .collect()
    }

    pub fn instantiate(&self, sub: &Substitution) -> Formula {
        self.0.substitute(sub)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The unique σ with σ(schema) = candidate, if any. Object variables in the
/// schema only match themselves.
pub fn match_schema(schema: &Schema, candidate: &Formula) -> Option<Substitution> {
    fn go(s: &Formula, c: &Formula, sub: &mut Substitution) -> bool {
        match (s, c) {
            (Formula::Var(n), _) if s.is_metavariable() => match sub.get(n.as_ref()) {
                Some(bound) => bound == c,
                None => {
                    sub.insert(n.to_string(), c.clone());
                    true
                }
            },
            (Formula::Var(a), Formula::Var(b)) => a == b,
            (Formula::Unary(o1, a), Formula::Unary(o2, b)) => o1 == o2 && go(a, b, sub),
            (Formula::Binary(o1, a1, b1), Formula::Binary(o2, a2, b2)) => {
                o1 == o2 && go(a1, a2, sub) && go(b1, b2, sub)
            }
            _ => false,
        }
    }
    let mut sub = Substitution::new();
    go(&schema.0, candidate, &mut sub).then_some(sub)
}

/// Every subformula of the inputs exactly once, children before parents.
pub fn subformula_closure<'a, I>(formulas: I) -> Vec<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    fn visit(f: &Formula, seen: &mut HashSet<Formula>, out: &mut Vec<Formula>) {
        if seen.contains(f) {
            return;
        }
        for c in f.children() {
            visit(c, seen, out);
        }
        seen.insert(f.clone());
        out.push(f.clone());
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in formulas {
        visit(f, &mut seen, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn parses_bc1_instance() {
        let f = p("@p -> (p -> (~p -> q))");
        let expected = Formula::imp(
            Formula::con(Formula::var("p")),
            Formula::imp(
                Formula::var("p"),
                Formula::imp(Formula::neg(Formula::var("p")), Formula::var("q")),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence() {
        assert_eq!(
            p("p & q | r"),
            Formula::or(Formula::and(p("p"), p("q")), p("r"))
        );
        assert_eq!(
            p("p | q & r"),
            Formula::or(p("p"), Formula::and(p("q"), p("r")))
        );
        assert_eq!(
            p("p -> q -> r"),
            Formula::imp(p("p"), Formula::imp(p("q"), p("r")))
        );
        assert_eq!(p("~p & q"), Formula::and(Formula::neg(p("p")), p("q")));
        assert_eq!(p("p | q -> r & s"), Formula::imp(p("p | q"), p("r & s")));
    }

    #[test]
    fn iff_is_desugared() {
        assert_eq!(p("p <-> q"), p("(p -> q) & (q -> p)"));
    }

    #[test]
    fn printing_is_minimal() {
        for s in [
            "p",
            "~@p",
            "@(p & q)",
            "p & q | r",
            "(p -> q) -> r",
            "p -> q -> r",
            "p & (q & r)",
            "(p | q) & r",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let e = Formula::parse("p & ! q").unwrap_err();
        assert!(
            matches!(e, ParseError::UnknownSymbol { offset: 4, .. }),
            "{e}"
        );
        let e = Formula::parse("(p & q").unwrap_err();
        assert_eq!(e.offset(), 6);
        let e = Formula::parse("p q").unwrap_err();
        assert_eq!(e.offset(), 2);
        let e = Formula::parse("").unwrap_err();
        assert_eq!(e.offset(), 0);
        assert!(Formula::parse("p - q").is_err());
        assert!(Formula::parse("pQ").is_err());
    }

    #[test]
    fn closure_examples() {
        let names = |fs: Vec<Formula>| fs.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        assert_eq!(
            names(subformula_closure(&[p("p | ~p")])),
            ["p", "~p", "p | ~p"]
        );
        assert_eq!(names(subformula_closure(&[p("p"), p("p")])), ["p"]);
        assert_eq!(
            names(subformula_closure(&[p("@p -> q")])),
            ["p", "@p", "q", "@p -> q"]
        );
    }

    #[test]
    fn schema_matching() {
        let ax1 = Schema::parse("A -> (B -> A)").unwrap();
        let sub = match_schema(&ax1, &p("p -> (q -> p)")).unwrap();
        assert_eq!(sub["A"], p("p"));
        assert_eq!(sub["B"], p("q"));
        assert!(match_schema(&ax1, &p("p -> q")).is_none());
        assert!(match_schema(&ax1, &p("p -> (q -> r)")).is_none());

        let ax10 = Schema::parse("A | ~A").unwrap();
        let sub = match_schema(&ax10, &p("(p & q) | ~(p & q)")).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!(sub["A"], p("p & q"));
        assert!(match_schema(&ax10, &p("(p & q) | ~(q & p)")).is_none());
    }

    #[test]
    fn signatures() {
        let s = Signature::sigma();
        assert_eq!(s.len(), 5);
        assert_eq!(s.position("neg"), Some(UnOp::Neg.index()));
        assert_eq!(s.position("imp"), Some(BinOp::Imp.index()));
        assert!(Signature::sigma().ops().iter().all(|o| o.arity > 0));
        let dup = vec![
            OpSym {
                name: "f".into(),
                arity: 1,
            },
            OpSym {
                name: "f".into(),
                arity: 2,
            },
        ];
        assert!(Signature::new(dup).is_err());
    }
}
