//! Text grammar for [`BundleExpr`].
//!
//! ```text
//! expr  := atom ( "+" atom )*
//! atom  := "O" [ "(" int ")" ]
//!        | "Omega1" [ "(" int ")" ] | "T" [ "(" int ")" ]
//!        | "Twist(" expr "," int ")"
//!        | "Sym" n "(" expr ")" | "Dual(" expr ")" | "Det(" expr ")"
//!        | "(" expr ")" | name
//! ```
//!
//! `name` refers to a binding supplied by the caller (for example `W`).

use std::collections::HashMap;

use super::{BundleExpr, SheafError};

pub fn parse_bundle(text: &str) -> Result<BundleExpr, SheafError> {
    parse_bundle_with(text, &HashMap::new())
}

pub fn parse_bundle_with(
    text: &str,
    bindings: &HashMap<String, BundleExpr>,
) -> Result<BundleExpr, SheafError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        bindings,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    e.validate()?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    bindings: &'a HashMap<String, BundleExpr>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> SheafError {
        SheafError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), SheafError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn int(&mut self) -> Result<i64, SheafError> {
        self.skip_ws();
        let rest = self.rest();
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            if c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')) {
                len = i + c.len_utf8();
            } else {
                break;
            }
        }
        let lit = &rest[..len];
        let v = lit.parse().map_err(|_| self.error("expected integer"))?;
        self.pos += len;
        Ok(v)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        let name = rest[..len].to_string();
        self.pos += len;
        name
    }

    fn expr(&mut self) -> Result<BundleExpr, SheafError> {
        let first = self.atom()?;
        let mut parts = vec![first];
        while self.eat("+") {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            BundleExpr::DirectSum(parts)
        })
    }

    fn optional_degree(&mut self) -> Result<Option<i64>, SheafError> {
        if self.eat("(") {
            let k = self.int()?;
            self.expect(")")?;
            Ok(Some(k))
        } else {
            Ok(None)
        }
    }

    fn wrapped(&mut self) -> Result<Box<BundleExpr>, SheafError> {
        self.expect("(")?;
        let e = self.expr()?;
        self.expect(")")?;
        Ok(Box::new(e))
    }

    fn atom(&mut self) -> Result<BundleExpr, SheafError> {
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        let start = self.pos;
        let name = self.ident();
        match name.as_str() {
            "" => Err(self.error("expected bundle")),
            "O" => Ok(BundleExpr::Line(self.optional_degree()?.unwrap_or(0))),
            "Omega1" => Ok(match self.optional_degree()? {
                Some(k) => BundleExpr::Cotangent.twist(k),
                None => BundleExpr::Cotangent,
            }),
            "T" => Ok(match self.optional_degree()? {
                Some(k) => BundleExpr::Tangent.twist(k),
                None => BundleExpr::Tangent,
            }),
            "Twist" => {
                self.expect("(")?;
                let e = self.expr()?;
                self.expect(",")?;
                let k = self.int()?;
                self.expect(")")?;
                Ok(BundleExpr::TwistBy(Box::new(e), k))
            }
            "Dual" => Ok(BundleExpr::Dual(self.wrapped()?)),
            "Det" => Ok(BundleExpr::Det(self.wrapped()?)),
            s if s.starts_with("Sym") && s.len() > 3 && s[3..].bytes().all(|b| b.is_ascii_digit()) => {
                let n = s[3..].parse().map_err(|_| self.error("bad symmetric power"))?;
                Ok(BundleExpr::Sym(self.wrapped()?, n))
            }
            other => match self.bindings.get(other) {
                Some(e) => Ok(e.clone()),
                None => {
                    self.pos = start;
                    Err(self.error(&format!("unknown name `{other}`")))
                }
            },
        }
    }
}
