use super::{BinOp, Term, TermError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Zero,
    One,
    Var(usize),
    Tilde,
    LParen,
    RParen,
    Op(BinOp),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: &str| TermError::Syntax {
        position,
        message: message.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0' => {
                out.push((start, Tok::Zero));
                i += 1;
            }
            b'1' => {
                out.push((start, Tok::One));
                i += 1;
            }
            b'~' => {
                out.push((start, Tok::Tilde));
                i += 1;
            }
            b'(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            b'+' => {
                out.push((start, Tok::Op(BinOp::OPlus)));
                i += 1;
            }
            b'.' => {
                out.push((start, Tok::Op(BinOp::OTimes)));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((start, Tok::Op(BinOp::Implies)));
                    i += 2;
                } else {
                    out.push((start, Tok::Op(BinOp::TruncSub)));
                    i += 1;
                }
            }
            b'/' => {
                if bytes.get(i + 1) == Some(&b'\\') {
                    out.push((start, Tok::Op(BinOp::Meet)));
                    i += 2;
                } else {
                    return Err(err(start, "expected '/\\'"));
                }
            }
            b'\\' => {
                if bytes.get(i + 1) == Some(&b'/') {
                    out.push((start, Tok::Op(BinOp::Join)));
                    i += 2;
                } else {
                    return Err(err(start, "expected '\\/'"));
                }
            }
            b'x' | b'X' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(err(start, "variable needs a positive index"));
                }
                let index: usize = text[digits_start..i]
                    .parse()
                    .map_err(|_| err(start, "variable index too large"))?;
                if index == 0 {
                    return Err(err(start, "variable indices start at 1"));
                }
                out.push((start, Tok::Var(index)));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(start, &format!("unexpected character '{}'", ch)));
            }
        }
    }
    Ok(out)
}

// -> binds loosest, . tightest among the binary connectives
fn precedence(op: BinOp) -> u8 {
    match op {
        BinOp::Implies => 0,
        BinOp::Join => 1,
        BinOp::Meet => 2,
        BinOp::TruncSub => 3,
        BinOp::OPlus => 4,
        BinOp::OTimes => 5,
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    arity: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error(&self, message: &str) -> TermError {
        TermError::Syntax {
            position: self.offset(),
            message: message.to_string(),
        }
    }

    fn binary(&mut self, min_prec: u8) -> Result<Term, TermError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(op)) = self.peek() {
            let op = *op;
            let p = precedence(op);
            if p < min_prec {
                break;
            }
            self.pos += 1;
            let rhs = self.binary(p + 1)?;
            lhs = Term::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term, TermError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Term::neg(self.unary()?))
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::zero())
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(Term::one())
            }
            Some(Tok::Var(i)) => {
                if i > self.arity {
                    return Err(TermError::VariableOutOfRange {
                        index: i,
                        arity: self.arity,
                    });
                }
                self.pos += 1;
                Ok(Term::var(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.binary(0)?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(t)
                    }
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(_) => Err(TermError::Syntax {
                position: offset,
                message: "expected a term".into(),
            }),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a term in the variables `x1..x{arity}`.
pub fn parse_term(text: &str, arity: usize) -> Result<Term, TermError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        arity,
    };
    let t = p.binary(0)?;
    if p.pos != toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}
