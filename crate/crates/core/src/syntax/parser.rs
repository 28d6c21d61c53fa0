//! Parser for the ASCII input notation.
//!
//! ```text
//! formula ::= "_|_" | ident | ident "(" terms ")" | term "=" term
//!           | "(" formula (binop formula)* ")" | "neg" formula
//!           | ("forall" | "exists" | "exists1") var "." formula
//! term    ::= ident | ident "(" terms ")" | "extension" var "." formula
//! binop   ::= "v" | "&" | "->" | "<->"
//! ```
//!
//! Chains of connectives group to the right. A chain is also accepted
//! without the enclosing parentheses at the outermost level.

use super::ast::{Formula, Term};
use super::lexer::{tokenize, Token, TokenKind};
use super::SyntaxError;
use crate::environment::signature::{Signature, SymbolKind, ELEM, EQUALS};

/// Tokenizes and parses a complete formula.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(&tokens, sig, text.len());
    let f = p.chain()?;
    p.finish()?;
    Ok(f)
}

/// Tokenizes and parses a complete term.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(&tokens, sig, text.len());
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Binop {
    And,
    Or,
    Imp,
    Iff,
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    sig: &'a Signature,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], sig: &'a Signature, end: usize) -> Self {
        Parser {
            tokens,
            pos: 0,
            sig,
            end,
        }
    }

    fn peek(&self) -> Option<&'a TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, k: usize) -> Option<&'a TokenKind> {
        self.tokens.get(self.pos + k).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn error(&self, expected: &str) -> SyntaxError {
        let found = match self.peek() {
            Some(k) => describe(k),
            None => "end of input".to_string(),
        };
        SyntaxError::Parse {
            offset: self.offset(),
            expected: expected.to_string(),
            found,
        }
    }

    fn bump(&mut self) -> Option<&'a TokenKind> {
        let k = self.peek();
        self.pos += 1;
        k
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<&'a str, SyntaxError> {
        match self.peek() {
            Some(TokenKind::Ident(name)) => {
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.error(what)),
        }
    }

    fn binop(&self) -> Option<Binop> {
        match self.peek()? {
            TokenKind::And => Some(Binop::And),
            TokenKind::Imp => Some(Binop::Imp),
            TokenKind::Iff => Some(Binop::Iff),
            TokenKind::Ident(v) if v == "v" => Some(Binop::Or),
            _ => None,
        }
    }

    /// `formula (binop formula)*`, grouped to the right.
    fn chain(&mut self) -> Result<Formula, SyntaxError> {
        let mut operands = vec![self.formula()?];
        let mut ops = Vec::new();
        while let Some(op) = self.binop() {
            self.pos += 1;
            ops.push(op);
            operands.push(self.formula()?);
        }
        let mut acc = operands.pop().expect("at least one operand");
        while let Some(op) = ops.pop() {
            let lhs = operands.pop().expect("one operand per operator");
            acc = match op {
                Binop::And => Formula::and(lhs, acc),
                Binop::Or => Formula::or(lhs, acc),
                Binop::Imp => Formula::imp(lhs, acc),
                Binop::Iff => Formula::iff(lhs, acc),
            };
        }
        Ok(acc)
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(TokenKind::Bottom) => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(TokenKind::Neg) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(TokenKind::Forall) | Some(TokenKind::Exists) | Some(TokenKind::Exists1) => {
                let q = self.bump().cloned();
                let x = self.ident("bound variable")?.to_string();
                self.expect(&TokenKind::Dot, "'.' after bound variable")?;
                let body = Box::new(self.formula()?);
                Ok(match q {
                    Some(TokenKind::Forall) => Formula::Forall(x, body),
                    Some(TokenKind::Exists) => Formula::Exists(x, body),
                    _ => Formula::Unique(x, body),
                })
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let f = self.chain()?;
                self.expect(&TokenKind::RParen, "')' (unbalanced parenthesis)")?;
                Ok(f)
            }
            Some(TokenKind::Ident(name)) => self.atom(name),
            Some(TokenKind::Extension) => self.equation(),
            _ => Err(self.error("formula")),
        }
    }

    fn atom(&mut self, name: &'a str) -> Result<Formula, SyntaxError> {
        let applied = self.peek_at(1) == Some(&TokenKind::LParen);
        match self.sig.kind_of(name) {
            Some(SymbolKind::Predicate) if name != EQUALS => {
                let offset = self.offset();
                self.pos += 1;
                let args = if applied {
                    self.pos += 1;
                    self.arguments()?
                } else {
                    Vec::new()
                };
                let arity = self.sig.predicate(name).map_or(0, |p| p.arity);
                if args.len() != arity {
                    return Err(SyntaxError::Arity {
                        symbol: name.to_string(),
                        expected: arity,
                        found: args.len(),
                        offset,
                    });
                }
                if name == ELEM {
                    let mut it = args.into_iter();
                    let l = it.next().expect("arity checked");
                    let r = it.next().expect("arity checked");
                    Ok(Formula::Mem(l, r))
                } else {
                    Ok(Formula::Pred(name.to_string(), args))
                }
            }
            None if !applied && self.peek_at(1) != Some(&TokenKind::Equals) => {
                self.pos += 1;
                Ok(Formula::Sov(name.to_string()))
            }
            None if applied => Err(SyntaxError::Undeclared {
                symbol: name.to_string(),
                offset: self.offset(),
            }),
            _ => self.equation(),
        }
    }

    fn equation(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.term()?;
        self.expect(&TokenKind::Equals, "'='")?;
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    /// Comma-separated terms after an opening parenthesis, up to and including `)`.
    fn arguments(&mut self) -> Result<Vec<Term>, SyntaxError> {
        let mut args = vec![self.term()?];
        while self.peek() == Some(&TokenKind::Comma) {
            self.pos += 1;
            args.push(self.term()?);
        }
        self.expect(&TokenKind::RParen, "',' or ')' (unbalanced parenthesis)")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Some(TokenKind::Extension) => {
                self.pos += 1;
                let x = self.ident("bound variable")?.to_string();
                self.expect(&TokenKind::Dot, "'.' after bound variable")?;
                Ok(Term::Ext(x, Box::new(self.formula()?)))
            }
            Some(TokenKind::Ident(name)) => {
                let offset = self.offset();
                self.pos += 1;
                let applied = self.peek() == Some(&TokenKind::LParen);
                match self.sig.kind_of(name) {
                    Some(SymbolKind::Function) => {
                        let arity = self.sig.function(name).map_or(0, |f| f.arity);
                        let args = if applied {
                            self.pos += 1;
                            self.arguments()?
                        } else {
                            Vec::new()
                        };
                        if args.len() != arity {
                            return Err(SyntaxError::Arity {
                                symbol: name.to_string(),
                                expected: arity,
                                found: args.len(),
                                offset,
                            });
                        }
                        Ok(Term::App(name.to_string(), args))
                    }
                    Some(SymbolKind::Predicate) => Err(SyntaxError::Parse {
                        offset,
                        expected: "term".to_string(),
                        found: format!("predicate '{name}'"),
                    }),
                    _ if applied => Err(SyntaxError::Undeclared {
                        symbol: name.to_string(),
                        offset,
                    }),
                    Some(SymbolKind::Constant) => Ok(Term::Const(name.to_string())),
                    _ => Ok(Term::Var(name.to_string())),
                }
            }
            _ => Err(self.error("term")),
        }
    }
}

fn describe(k: &TokenKind) -> String {
    match k {
        TokenKind::Ident(s) => format!("'{s}'"),
        TokenKind::LParen => "'('".into(),
        TokenKind::RParen => "')'".into(),
        TokenKind::Comma => "','".into(),
        TokenKind::Dot => "'.'".into(),
        TokenKind::Equals => "'='".into(),
        TokenKind::And => "'&'".into(),
        TokenKind::Imp => "'->'".into(),
        TokenKind::Iff => "'<->'".into(),
        TokenKind::Bottom => "'_|_'".into(),
        TokenKind::Neg => "'neg'".into(),
        TokenKind::Forall => "'forall'".into(),
        TokenKind::Exists => "'exists'".into(),
        TokenKind::Exists1 => "'exists1'".into(),
        TokenKind::Extension => "'extension'".into(),
    }
}
