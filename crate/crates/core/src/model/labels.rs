use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::model::LiquidError;

pub type LabelMap = BTreeMap<String, String>;

/// Node/cluster selection expression: conjunctions and disjunctions of
/// label equality and set-membership terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelExpr {
    True,
    Eq(String, String),
    In(String, Vec<String>),
    And(Vec<LabelExpr>),
    Or(Vec<LabelExpr>),
}

impl LabelExpr {
    pub fn eval(&self, labels: &LabelMap) -> bool {
        match self {
            LabelExpr::True => true,
            LabelExpr::Eq(k, v) => labels.get(k) == Some(v),
            LabelExpr::In(k, vs) => labels.get(k).is_some_and(|v| vs.contains(v)),
            LabelExpr::And(terms) => terms.iter().all(|t| t.eval(labels)),
            LabelExpr::Or(terms) => terms.iter().any(|t| t.eval(labels)),
        }
    }

    pub fn and(self, other: LabelExpr) -> LabelExpr {
        match (self, other) {
            (LabelExpr::True, e) | (e, LabelExpr::True) => e,
            (a, b) => LabelExpr::And(vec![a, b]),
        }
    }

    /// Parses expressions like `region=eu`, `region in (eu, us)`,
    /// `a=b && (c=d || e=f)`, or `true`.
    pub fn parse(input: &str) -> Result<LabelExpr, LiquidError> {
        let tokens = tokenize(input)?;
        let mut parser = Parser { tokens, pos: 0 };
        let expr = parser.parse_or()?;
        if parser.pos != parser.tokens.len() {
            return Err(LiquidError::InvalidSelector(format!(
                "{input}: trailing tokens after expression"
            )));
        }
        Ok(expr)
    }
}

impl fmt::Display for LabelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelExpr::True => write!(f, "true"),
            LabelExpr::Eq(k, v) => write!(f, "{k}={v}"),
            LabelExpr::In(k, vs) => write!(f, "{k} in ({})", vs.join(", ")),
            LabelExpr::And(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| format!("({t})")).collect();
                write!(f, "{}", parts.join(" && "))
            }
            LabelExpr::Or(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| format!("({t})")).collect();
                write!(f, "{}", parts.join(" || "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Eq,
    And,
    Or,
    LParen,
    RParen,
    Comma,
    In,
}

fn tokenize(input: &str) -> Result<Vec<Token>, LiquidError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '=' => {
                chars.next();
                // tolerate '=='
                if chars.peek() == Some(&'=') {
                    chars.next();
                }
                out.push(Token::Eq);
            }
            '&' => {
                chars.next();
                if chars.next() != Some('&') {
                    return Err(LiquidError::InvalidSelector(format!(
                        "{input}: expected '&&'"
                    )));
                }
                out.push(Token::And);
            }
            '|' => {
                chars.next();
                if chars.next() != Some('|') {
                    return Err(LiquidError::InvalidSelector(format!(
                        "{input}: expected '||'"
                    )));
                }
                out.push(Token::Or);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            _ if c.is_alphanumeric() || "._-/\"".contains(c) => {
                let mut word = String::new();
                let quoted = c == '"';
                if quoted {
                    chars.next();
                    for q in chars.by_ref() {
                        if q == '"' {
                            break;
                        }
                        word.push(q);
                    }
                } else {
                    while let Some(&c) = chars.peek() {
                        if c.is_alphanumeric() || "._-/".contains(c) {
                            word.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                }
                if !quoted && word == "in" {
                    out.push(Token::In);
                } else {
                    out.push(Token::Word(word));
                }
            }
            _ => {
                return Err(LiquidError::InvalidSelector(format!(
                    "{input}: unexpected character '{c}'"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_or(&mut self) -> Result<LabelExpr, LiquidError> {
        let mut terms = vec![self.parse_and()?];
        while self.peek() == Some(&Token::Or) {
            self.bump();
            terms.push(self.parse_and()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            LabelExpr::Or(terms)
        })
    }

    fn parse_and(&mut self) -> Result<LabelExpr, LiquidError> {
        let mut terms = vec![self.parse_factor()?];
        while self.peek() == Some(&Token::And) {
            self.bump();
            terms.push(self.parse_factor()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            LabelExpr::And(terms)
        })
    }

    fn parse_factor(&mut self) -> Result<LabelExpr, LiquidError> {
        match self.bump() {
            Some(Token::LParen) => {
                let inner = self.parse_or()?;
                if self.bump() != Some(Token::RParen) {
                    return Err(LiquidError::InvalidSelector("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(Token::Word(key)) if key == "true" => Ok(LabelExpr::True),
            Some(Token::Word(key)) => match self.bump() {
                Some(Token::Eq) => match self.bump() {
                    Some(Token::Word(value)) => Ok(LabelExpr::Eq(key, value)),
                    _ => Err(LiquidError::InvalidSelector(format!(
                        "expected value after '{key}='"
                    ))),
                },
                Some(Token::In) => {
                    if self.bump() != Some(Token::LParen) {
                        return Err(LiquidError::InvalidSelector("expected '(' after 'in'".into()));
                    }
                    let mut values = Vec::new();
                    loop {
                        match self.bump() {
                            Some(Token::Word(v)) => values.push(v),
                            Some(Token::RParen) if values.is_empty() => break,
                            other => {
                                return Err(LiquidError::InvalidSelector(format!(
                                    "unexpected token in value list: {other:?}"
                                )))
                            }
                        }
                        match self.bump() {
                            Some(Token::Comma) => continue,
                            Some(Token::RParen) => break,
                            other => {
                                return Err(LiquidError::InvalidSelector(format!(
                                    "expected ',' or ')' in value list, got {other:?}"
                                )))
                            }
                        }
                    }
                    Ok(LabelExpr::In(key, values))
                }
                other => Err(LiquidError::InvalidSelector(format!(
                    "expected '=' or 'in' after '{key}', got {other:?}"
                ))),
            },
            other => Err(LiquidError::InvalidSelector(format!(
                "unexpected token {other:?}"
            ))),
        }
    }
}

/// True iff every (key, value) pair in `selector` is present in `labels`.
pub fn selector_matches(selector: &LabelMap, labels: &LabelMap) -> bool {
    selector.iter().all(|(k, v)| labels.get(k) == Some(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(pairs: &[(&str, &str)]) -> LabelMap {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn parse_eq() {
        let e = LabelExpr::parse("region=eu").unwrap();
        assert!(e.eval(&labels(&[("region", "eu")])));
        assert!(!e.eval(&labels(&[("region", "us")])));
        assert!(!e.eval(&labels(&[])));
    }

    #[test]
    fn parse_in_and_nesting() {
        let e = LabelExpr::parse("region in (eu, us) && (tier=edge || tier=cloud)").unwrap();
        assert!(e.eval(&labels(&[("region", "us"), ("tier", "edge")])));
        assert!(!e.eval(&labels(&[("region", "ap"), ("tier", "edge")])));
        assert!(!e.eval(&labels(&[("region", "eu"), ("tier", "core")])));
    }

    #[test]
    fn parse_quoted_and_double_eq() {
        let e = LabelExpr::parse("region == \"eu\"").unwrap();
        assert!(e.eval(&labels(&[("region", "eu")])));
    }

    #[test]
    fn parse_errors() {
        assert!(LabelExpr::parse("region=").is_err());
        assert!(LabelExpr::parse("region in eu").is_err());
        assert!(LabelExpr::parse("a=b &&").is_err());
        assert!(LabelExpr::parse("a=b c=d").is_err());
    }

    #[test]
    fn true_matches_everything() {
        let e = LabelExpr::parse("true").unwrap();
        assert!(e.eval(&labels(&[])));
    }
}
