//! Line-oriented scenario syntax.
//!
//! ```text
//! # comment
//! instance quantum
//! let p = proj(ketNE)
//! query born(ket0, andthen(p, proj(ket1))) precision 4
//! ```
//!
//! Expressions are identifiers, real numbers (`0.5`, `-1e-3`, `1/3`) and
//! calls `f(a, b, ...)`. The bodies of `matrix(...)` and `ket(...)` are raw
//! matrix literals (`rows cols` then `a+bi` entries for `matrix`, entries
//! only for `ket`).

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Ident {
        name: String,
        pos: Pos,
    },
    Number {
        value: f64,
        pos: Pos,
    },
    Call {
        name: String,
        args: Vec<Expr>,
        pos: Pos,
    },
    Literal {
        ctor: String,
        text: String,
        pos: Pos,
    },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Ident { pos, .. }
            | Expr::Number { pos, .. }
            | Expr::Call { pos, .. }
            | Expr::Literal { pos, .. } => *pos,
        }
    }

    /// Visits every identifier and call name with its position.
    pub fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        if let Expr::Call { args, .. } = self {
            for a in args {
                a.walk(f);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Instance {
        name: String,
        pos: Pos,
    },
    Let {
        name: String,
        expr: Expr,
        pos: Pos,
    },
    Query {
        expr: Expr,
        precision: Option<usize>,
        pos: Pos,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

type PResult<T> = Result<T, SyntaxError>;

const RAW_LITERALS: [&str; 2] = ["matrix", "ket"];

pub fn parse_statements(text: &str) -> PResult<Vec<Statement>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(content, line);
        cur.skip_ws();
        let kw_pos = cur.pos();
        let keyword = cur
            .ident()
            .ok_or_else(|| cur.error("expected `instance`, `let` or `query`"))?;
        let stmt = match keyword.as_str() {
            "instance" => {
                cur.skip_ws();
                let pos = cur.pos();
                let name = cur
                    .ident()
                    .ok_or_else(|| cur.error("expected an instance name"))?;
                Statement::Instance { name, pos }
            }
            "let" => {
                cur.skip_ws();
                let pos = cur.pos();
                let name = cur
                    .ident()
                    .ok_or_else(|| cur.error("expected a name after `let`"))?;
                cur.expect('=')?;
                let expr = cur.expr()?;
                Statement::Let { name, expr, pos }
            }
            "query" => {
                let expr = cur.expr()?;
                cur.skip_ws();
                let precision = if cur.peek().is_some() {
                    let save = cur.pos();
                    match cur.ident().as_deref() {
                        Some("precision") => {
                            cur.skip_ws();
                            let digits = cur
                                .integer()
                                .ok_or_else(|| cur.error("expected a digit count"))?;
                            Some(digits)
                        }
                        _ => {
                            return Err(SyntaxError {
                                pos: save,
                                message: "unexpected text after query".into(),
                            })
                        }
                    }
                } else {
                    None
                };
                Statement::Query {
                    expr,
                    precision,
                    pos: kw_pos,
                }
            }
            other => {
                return Err(SyntaxError {
                    pos: kw_pos,
                    message: format!("unknown statement `{other}`"),
                })
            }
        };
        cur.skip_ws();
        if cur.peek().is_some() {
            return Err(cur.error("unexpected trailing text"));
        }
        out.push(stmt);
    }
    Ok(out)
}

struct Cursor {
    chars: Vec<char>,
    at: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            at: 0,
            line,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.at + 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.at;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.at += 1;
        }
        Some(self.chars[start..self.at].iter().collect())
    }

    fn integer(&mut self) -> Option<usize> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        self.chars[start..self.at]
            .iter()
            .collect::<String>()
            .parse()
            .ok()
    }

    fn real(&mut self) -> PResult<f64> {
        let start = self.at;
        if matches!(self.peek(), Some('+' | '-')) {
            self.at += 1;
        }
        while let Some(c) = self.peek() {
            let prev = self.chars[self.at - usize::from(self.at > start)];
            let sign_in_exponent =
                matches!(c, '+' | '-') && matches!(prev, 'e' | 'E') && self.at > start;
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || sign_in_exponent {
                self.at += 1;
            } else {
                break;
            }
        }
        let text: String = self.chars[start..self.at].iter().collect();
        text.parse::<f64>().map_err(|_| SyntaxError {
            pos: Pos {
                line: self.line,
                col: start + 1,
            },
            message: format!("bad number `{text}`"),
        })
    }

    fn number(&mut self) -> PResult<f64> {
        let num = self.real()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.at += 1;
            self.skip_ws();
            let den = self.real()?;
            if den == 0.0 {
                return Err(self.error("division by zero"));
            }
            return Ok(num / den);
        }
        Ok(num)
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let pos = self.pos();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || matches!(c, '.' | '-' | '+') => {
                let value = self.number()?;
                Ok(Expr::Number { value, pos })
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.ident().expect("starts with a letter");
                self.skip_ws();
                if self.peek() != Some('(') {
                    return Ok(Expr::Ident { name, pos });
                }
                self.at += 1;
                if RAW_LITERALS.contains(&name.as_str()) {
                    let start = self.at;
                    while self.peek().is_some_and(|c| c != ')') {
                        self.at += 1;
                    }
                    if self.peek() != Some(')') {
                        return Err(self.error(format!("unterminated `{name}(` literal")));
                    }
                    let text = self.chars[start..self.at].iter().collect();
                    self.at += 1;
                    return Ok(Expr::Literal {
                        ctor: name,
                        text,
                        pos,
                    });
                }
                let mut args = Vec::new();
                self.skip_ws();
                if self.peek() == Some(')') {
                    self.at += 1;
                    return Ok(Expr::Call { name, args, pos });
                }
                loop {
                    args.push(self.expr()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => self.at += 1,
                        Some(')') => {
                            self.at += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `)`")),
                    }
                }
                Ok(Expr::Call { name, args, pos })
            }
            _ => Err(self.error("expected an expression")),
        }
    }
}
