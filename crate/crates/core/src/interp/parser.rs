//! Recursive-descent parser for a small JavaScript-like subset.

use thiserror::Error;

use super::ast::{Cond, Expr, Method, Program, Stmt, StmtKind};
use crate::ops::Rel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const PUNCTS: [&str; 20] = [
    "===", "!==", "==", "!=", ">=", "<=", "&&", "||", "(", ")", "{", "}", ";", "+", "?", ":", ".", ",", "<",
    ">",
];

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| ParseError { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut bump = |n: usize, i: &mut usize| {
            for _ in 0..n {
                if chars[*i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                *i += 1;
            }
        };
        if c.is_whitespace() {
            bump(1, &mut i);
        } else if chars[i..].starts_with(&['/', '/']) {
            while i < chars.len() && chars[i] != '\n' {
                bump(1, &mut i);
            }
        } else if chars[i..].starts_with(&['/', '*']) {
            bump(2, &mut i);
            while i < chars.len() && !chars[i..].starts_with(&['*', '/']) {
                bump(1, &mut i);
            }
            if i >= chars.len() {
                return Err(err(tl, tc, "unterminated comment".into()));
            }
            bump(2, &mut i);
        } else if c == '\'' || c == '"' {
            bump(1, &mut i);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(err(tl, tc, "unterminated string literal".into())),
                    Some(&q) if q == c => break,
                    Some('\\') => {
                        let esc = *chars.get(i + 1).ok_or_else(|| err(tl, tc, "bad escape".into()))?;
                        s.push(match esc {
                            'n' => '\n',
                            't' => '\t',
                            other => other,
                        });
                        bump(2, &mut i);
                    }
                    Some(&ch) => {
                        s.push(ch);
                        bump(1, &mut i);
                    }
                }
            }
            bump(1, &mut i);
            out.push(Token { tok: Tok::Str(s), line: tl, col: tc });
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(chars[i].to_digit(10).unwrap() as i64))
                    .ok_or_else(|| err(tl, tc, "integer literal too large".into()))?;
                bump(1, &mut i);
            }
            out.push(Token { tok: Tok::Int(n), line: tl, col: tc });
        } else if c.is_alphabetic() || c == '_' || c == '$' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$') {
                s.push(chars[i]);
                bump(1, &mut i);
            }
            out.push(Token { tok: Tok::Ident(s), line: tl, col: tc });
        } else if c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            bump(1, &mut i);
            let mut n: i64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                n = n.saturating_mul(10).saturating_add(chars[i].to_digit(10).unwrap() as i64);
                bump(1, &mut i);
            }
            out.push(Token { tok: Tok::Int(-n), line: tl, col: tc });
        } else if c == '!' && chars.get(i + 1) != Some(&'=') {
            bump(1, &mut i);
            out.push(Token { tok: Tok::Punct("!"), line: tl, col: tc });
        } else if let Some(p) = PUNCTS.iter().find(|p| chars[i..].starts_with(&p.chars().collect::<Vec<_>>())) {
            bump(p.len(), &mut i);
            out.push(Token { tok: Tok::Punct(p), line: tl, col: tc });
        } else if c == '=' {
            bump(1, &mut i);
            out.push(Token { tok: Tok::Punct("="), line: tl, col: tc });
        } else {
            return Err(err(tl, tc, format!("unexpected character {c:?}")));
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scopes: Vec<Vec<String>>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn prev_line(&self) -> usize {
        self.toks[self.pos.saturating_sub(1)].line
    }

    fn fail<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError { line, col, msg: msg.into() })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn is(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.is(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> PResult<()> {
        if self.eat(p) {
            Ok(())
        } else {
            self.fail(format!("expected '{p}', found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.pos += 1;
                Ok(s)
            }
            t => self.fail(format!("expected identifier, found {}", describe(&t))),
        }
    }

    fn declared(&self, name: &str) -> bool {
        self.scopes.iter().any(|s| s.iter().any(|n| n == name))
    }

    fn program(&mut self) -> PResult<Program> {
        let mut body = Vec::new();
        while *self.peek() != Tok::Eof {
            body.push(self.stmt()?);
        }
        Ok(Program { body })
    }

    fn block(&mut self) -> PResult<Vec<Stmt>> {
        self.scopes.push(Vec::new());
        let out = if self.eat("{") {
            let mut out = Vec::new();
            while !self.is("}") {
                if *self.peek() == Tok::Eof {
                    return self.fail("expected '}' before end of input");
                }
                out.push(self.stmt()?);
            }
            self.pos += 1;
            out
        } else {
            vec![self.stmt()?]
        };
        self.scopes.pop();
        Ok(out)
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let (line, _) = self.here();
        let kind = if self.is_kw("let") || self.is_kw("var") || self.is_kw("const") {
            self.pos += 1;
            let name = self.ident()?;
            self.expect("=")?;
            let e = self.str_expr()?;
            self.expect(";")?;
            self.scopes.last_mut().unwrap().push(name.clone());
            StmtKind::Let(name, e)
        } else if self.is_kw("if") {
            self.pos += 1;
            self.expect("(")?;
            let c = self.cond()?;
            self.expect(")")?;
            let then = self.block()?;
            let els = if self.is_kw("else") {
                self.pos += 1;
                Some(self.block()?)
            } else {
                None
            };
            StmtKind::If(c, then, els)
        } else if self.is_kw("while") {
            self.pos += 1;
            self.expect("(")?;
            let c = self.cond()?;
            self.expect(")")?;
            StmtKind::While(c, self.block()?)
        } else if self.is_kw("return") {
            self.pos += 1;
            let e = self.str_expr()?;
            self.expect(";")?;
            StmtKind::Return(e)
        } else if self.is("{") {
            StmtKind::Block(self.block()?)
        } else {
            let name = self.ident()?;
            if !self.declared(&name) {
                return Err(ParseError { line, col: self.toks[self.pos - 1].col, msg: format!("assignment to undeclared variable '{name}'") });
            }
            self.expect("=")?;
            let e = self.str_expr()?;
            self.expect(";")?;
            StmtKind::Assign(name, e)
        };
        Ok(Stmt { line, end_line: self.prev_line(), kind })
    }

    /// A condition: `!c`, `e.indexOf(e) rel k`, or a string expression.
    fn cond(&mut self) -> PResult<Cond> {
        if self.eat("!") {
            return Ok(Cond::Not(Box::new(self.cond_atom()?)));
        }
        let e = self.concat()?;
        self.cond_tail(e)
    }

    fn cond_atom(&mut self) -> PResult<Cond> {
        if self.eat("!") {
            return Ok(Cond::Not(Box::new(self.cond_atom()?)));
        }
        if self.is("(") {
            let save = self.pos;
            self.pos += 1;
            let c = self.cond()?;
            if self.eat(")") && !self.is(".") && !self.is("+") {
                return Ok(c);
            }
            self.pos = save;
        }
        let e = self.postfix()?;
        self.cond_tail(e)
    }

    fn cond_tail(&mut self, e: Expr) -> PResult<Cond> {
        let rel = match self.peek() {
            Tok::Punct("==") | Tok::Punct("===") => Some(Rel::Eq),
            Tok::Punct("!=") | Tok::Punct("!==") => Some(Rel::Ne),
            Tok::Punct("<") => Some(Rel::Lt),
            Tok::Punct("<=") => Some(Rel::Le),
            Tok::Punct(">") => Some(Rel::Gt),
            Tok::Punct(">=") => Some(Rel::Ge),
            _ => None,
        };
        let Some(rel) = rel else {
            if e.is_int() {
                return self.fail("integer used as a condition; compare it with a literal");
            }
            return Ok(Cond::Truthy(e));
        };
        self.pos += 1;
        let Expr::Call(hay, Method::IndexOf, mut args) = e else {
            return self.fail("only indexOf results can be compared");
        };
        let k = match self.next() {
            Tok::Int(k) => k,
            t => {
                self.pos -= 1;
                return self.fail(format!("expected integer literal, found {}", describe(&t)));
            }
        };
        Ok(Cond::Cmp { hay: *hay, needle: args.remove(0), rel, k })
    }

    /// An expression that must produce a string.
    fn str_expr(&mut self) -> PResult<Expr> {
        let e = self.expr()?;
        if e.is_int() {
            return self.fail("expected a string expression, found an integer");
        }
        Ok(e)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let head = if self.is("!") { None } else { Some(self.concat()?) };
        let is_cond = head.is_none() || matches!(self.peek(), Tok::Punct("==" | "===" | "!=" | "!==" | "<" | "<=" | ">" | ">="));
        if !is_cond && !self.is("?") {
            return Ok(head.unwrap());
        }
        let c = match head {
            Some(e) if !is_cond => Cond::Truthy(e),
            _ => {
                self.pos = start;
                self.cond()?
            }
        };
        if !self.eat("?") {
            return self.fail("condition used as a value; expected '?'");
        }
        let a = self.str_expr()?;
        self.expect(":")?;
        let b = self.str_expr()?;
        Ok(Expr::Ternary(Box::new(c), Box::new(a), Box::new(b)))
    }

    fn concat(&mut self) -> PResult<Expr> {
        let mut e = self.postfix()?;
        while self.eat("+") {
            let r = self.postfix()?;
            if e.is_int() || r.is_int() {
                return self.fail("'+' applies to strings only");
            }
            e = Expr::Concat(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        while self.eat(".") {
            let name = self.ident()?;
            let method = match name.as_str() {
                "charAt" => Method::CharAt,
                "indexOf" => Method::IndexOf,
                "substring" | "substr" | "slice" => Method::Substring,
                "replace" => Method::Replace,
                other => return self.fail(format!("unsupported method '{other}'")),
            };
            if e.is_int() {
                return self.fail(format!("'{}' called on an integer", method.name()));
            }
            self.expect("(")?;
            let mut args = Vec::new();
            if !self.is(")") {
                loop {
                    args.push(self.expr()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect(")")?;
            let kinds: Vec<bool> = args.iter().map(Expr::is_int).collect();
            let expected: &[bool] = match method {
                Method::CharAt | Method::Substring => &[true],
                Method::IndexOf => &[false],
                Method::Replace => &[false, false],
            };
            if kinds != expected {
                return self.fail(format!(
                    "'{}' expects {} argument(s) of kind [{}]",
                    method.name(),
                    expected.len(),
                    expected.iter().map(|&i| if i { "int" } else { "string" }).collect::<Vec<_>>().join(", ")
                ));
            }
            e = Expr::Call(Box::new(e), method, args);
        }
        Ok(e)
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.next() {
            Tok::Str(s) => Ok(Expr::Str(s.chars().collect())),
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Ident(s) if s == "unknown" => {
                self.expect("(")?;
                self.expect(")")?;
                Ok(Expr::Unknown)
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                if !self.declared(&s) {
                    self.pos -= 1;
                    return self.fail(format!("use of undeclared variable '{s}'"));
                }
                Ok(Expr::Var(s))
            }
            Tok::Punct("(") => {
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            t => {
                self.pos -= 1;
                self.fail(format!("expected expression, found {}", describe(&t)))
            }
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "let" | "var" | "const" | "if" | "else" | "while" | "return" | "unknown")
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Str(s) => format!("string {s:?}"),
        Tok::Int(n) => format!("integer {n}"),
        Tok::Punct(p) => format!("'{p}'"),
        Tok::Eof => "end of input".into(),
    }
}

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let toks = lex(src)?;
    Parser { toks, pos: 0, scopes: vec![Vec::new()] }.program()
}
