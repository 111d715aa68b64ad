use std::f64::consts::{E, PI};

use super::lexer::{Token, TokenKind};
use super::{BinOp, Expr, Func};
use crate::error::{Error, ParseError, Result};

/// Parses a token stream produced by [`tokenize`](super::tokenize).
///
/// `source_len` is used to report end-of-input positions.
pub fn parse_tokens(tokens: &[Token], source_len: usize) -> Result<Expr> {
    if tokens.is_empty() {
        return Err(ParseError {
            message: "empty expression".into(),
            position: 0,
            expected: "an expression".into(),
        }
        .into());
    }
    let mut p = Parser { tokens, pos: 0, end: source_len };
    let expr = p.expr()?;
    if let Some(tok) = p.peek() {
        return Err(p.error(tok.position, &format!("unexpected `{}`", tok.text), "operator or end of input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn peek_op(&self, ops: &[&str]) -> Option<&'a str> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Operator && ops.contains(&t.text.as_str()) => Some(&t.text),
            _ => None,
        }
    }

    fn error(&self, position: usize, message: &str, expected: &str) -> Error {
        ParseError { message: message.into(), position, expected: expected.into() }.into()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op) = self.peek_op(&["+", "-"]) {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if op == "+" { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(op) = self.peek_op(&["*", "/"]) {
            self.pos += 1;
            let rhs = self.factor()?;
            let op = if op == "*" { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek_op(&["-"]).is_some() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op(&["^"]).is_some() {
            self.pos += 1;
            let exponent = self.factor()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.next() else {
            return Err(self.error(self.end, "unexpected end of input", "number, identifier or `(`"));
        };
        match tok.kind {
            TokenKind::Number => {
                let value: f64 = tok.text.parse().map_err(|_| {
                    self.error(tok.position, &format!("malformed number `{}`", tok.text), "a decimal literal")
                })?;
                if !value.is_finite() {
                    return Err(self.error(tok.position, "number literal overflows", "a finite literal"));
                }
                Ok(Expr::Const(value))
            }
            TokenKind::Identifier => {
                let is_call = matches!(self.peek(), Some(t) if t.kind == TokenKind::LParen);
                if is_call {
                    let func = Func::from_name(&tok.text).ok_or_else(|| Error::UnknownFunction {
                        name: tok.text.clone(),
                        position: tok.position,
                    })?;
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                match tok.text.as_str() {
                    "t" => Ok(Expr::Var),
                    "e" => Ok(Expr::Const(E)),
                    "pi" => Ok(Expr::Const(PI)),
                    _ => Err(Error::UnknownIdentifier { name: tok.text.clone(), position: tok.position }),
                }
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            _ => Err(self.error(tok.position, &format!("unexpected `{}`", tok.text), "number, identifier or `(`")),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some(t) if t.kind == TokenKind::RParen => Ok(()),
            Some(t) => Err(self.error(t.position, &format!("unexpected `{}`", t.text), "`)`")),
            None => Err(self.error(self.end, "unexpected end of input", "`)`")),
        }
    }
}
