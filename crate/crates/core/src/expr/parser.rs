//! Recursive-descent parser with the precedence ladder
//! power > unary minus > multiplication/division > addition/subtraction.
//! Power is right-associative, the rest are left-associative.

use super::lexer::{tokenize, Token, TokenKind};
use super::{BinOp, ExprAst, Func, Node, ParseError, Var};

pub fn parse(source: &str) -> Result<ExprAst, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError::new(0, "empty expression".to_string()));
    }
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        source_len: source.len(),
    };
    let ast = parser.expression()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError::new(
            tok.position,
            format!("unexpected '{}'", tok.lexeme),
        ));
    }
    Ok(ast)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    source_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn end_position(&self) -> usize {
        self.source_len
    }

    fn peek_operator(&self, ops: &[&str]) -> Option<(String, usize)> {
        let tok = self.peek()?;
        if tok.kind == TokenKind::Operator && ops.contains(&tok.lexeme.as_str()) {
            Some((tok.lexeme.clone(), tok.position))
        } else {
            None
        }
    }

    // expression := term (('+' | '-') term)*
    fn expression(&mut self) -> Result<ExprAst, ParseError> {
        let mut left = self.term()?;
        while let Some((op, pos)) = self.peek_operator(&["+", "-"]) {
            self.advance();
            let right = self.term()?;
            let bin = if op == "+" { BinOp::Add } else { BinOp::Sub };
            left = ExprAst::new(Node::Binary(bin, Box::new(left), Box::new(right)), pos);
        }
        Ok(left)
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut left = self.unary()?;
        while let Some((op, pos)) = self.peek_operator(&["*", "/"]) {
            self.advance();
            let right = self.unary()?;
            let bin = if op == "*" { BinOp::Mul } else { BinOp::Div };
            left = ExprAst::new(Node::Binary(bin, Box::new(left), Box::new(right)), pos);
        }
        Ok(left)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if let Some((_, pos)) = self.peek_operator(&["-"]) {
            self.advance();
            let operand = self.unary()?;
            return Ok(ExprAst::new(Node::Neg(Box::new(operand)), pos));
        }
        self.power()
    }

    // power := primary ('^' unary)?   -- right-associative, binds above unary minus
    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.primary()?;
        if let Some((_, pos)) = self.peek_operator(&["^"]) {
            self.advance();
            let exponent = self.unary()?;
            return Ok(ExprAst::new(
                Node::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)),
                pos,
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExprAst, ParseError> {
        let tok = match self.advance() {
            Some(tok) => tok,
            None => {
                return Err(ParseError::new(
                    self.end_position(),
                    "unexpected end of expression".to_string(),
                ))
            }
        };
        match tok.kind {
            TokenKind::Number => {
                let value: f64 = tok.lexeme.parse().map_err(|_| {
                    ParseError::new(tok.position, format!("invalid number '{}'", tok.lexeme))
                })?;
                Ok(ExprAst::new(Node::Constant(value), tok.position))
            }
            TokenKind::Identifier => self.identifier(tok),
            TokenKind::Paren if tok.lexeme == "(" => {
                let inner = self.expression()?;
                self.expect_close_paren(tok.position)?;
                Ok(inner)
            }
            _ => Err(ParseError::new(
                tok.position,
                format!("unexpected '{}'", tok.lexeme),
            )),
        }
    }

    fn identifier(&mut self, tok: Token) -> Result<ExprAst, ParseError> {
        match tok.lexeme.as_str() {
            "t" => return Ok(ExprAst::new(Node::Variable(Var::T), tok.position)),
            "u" => return Ok(ExprAst::new(Node::Variable(Var::U), tok.position)),
            "pi" => {
                return Ok(ExprAst::new(
                    Node::Constant(std::f64::consts::PI),
                    tok.position,
                ))
            }
            "e" => {
                return Ok(ExprAst::new(
                    Node::Constant(std::f64::consts::E),
                    tok.position,
                ))
            }
            _ => {}
        }
        let func = Func::from_name(&tok.lexeme).ok_or_else(|| {
            ParseError::new(tok.position, format!("unknown identifier '{}'", tok.lexeme))
        })?;
        match self.peek() {
            Some(open) if open.kind == TokenKind::Paren && open.lexeme == "(" => {
                let open_pos = open.position;
                self.advance();
                let arg = self.expression()?;
                self.expect_close_paren(open_pos)?;
                Ok(ExprAst::new(
                    Node::Call(func, Box::new(arg)),
                    tok.position,
                ))
            }
            Some(other) => Err(ParseError::new(
                other.position,
                format!("expected '(' after function '{}'", tok.lexeme),
            )),
            None => Err(ParseError::new(
                self.end_position(),
                format!("expected '(' after function '{}'", tok.lexeme),
            )),
        }
    }

    fn expect_close_paren(&mut self, open_pos: usize) -> Result<(), ParseError> {
        match self.advance() {
            Some(tok) if tok.kind == TokenKind::Paren && tok.lexeme == ")" => Ok(()),
            Some(tok) => Err(ParseError::new(
                tok.position,
                format!("expected ')', found '{}'", tok.lexeme),
            )),
            None => Err(ParseError::new(
                self.end_position(),
                format!("unbalanced '(' opened at byte {open_pos}"),
            )),
        }
    }
}
